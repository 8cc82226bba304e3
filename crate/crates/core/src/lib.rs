//! Exact computations for the S^3_w Sasaki join `M *_l S^3_w`.
//!
//! Every scalar is an exact rational; real roots are certified by Sturm
//! sequences and reported either as exact rationals or isolating intervals.

pub mod admissible;
pub mod arith;
pub mod catalog;
pub mod error;

pub use error::{Error, Result};
pub mod ints;
pub mod join;
pub mod se;
pub mod topology;

/// Order-preserving map, parallel when the `parallel` feature is on.
pub(crate) fn par_map<T, U, F>(xs: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        xs.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        xs.iter().map(f).collect()
    }
}
