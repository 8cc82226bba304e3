use num_traits::{One, Signed, Zero};

use super::poly::IntPoly;
use super::{sign, Poly, Rat};
use crate::error::{invalid, Result};

/// Sturm chain of the square-free part of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<Poly>,
    ints: Vec<IntPoly>,
}

/// Positive multiple with coprime integer coefficients; keeps the sign pattern.
fn shrink(p: &Poly) -> Poly {
    let q = p.primitive();
    if p.leading().is_negative() {
        -&q
    } else {
        q
    }
}

impl SturmSequence {
    pub fn new(p: &Poly) -> Result<Self> {
        if p.is_zero() {
            return invalid("indeterminate root count: zero polynomial");
        }
        let p0 = shrink(&p.square_free());
        let mut chain = vec![p0.clone()];
        if p0.degree() == Some(0) {
            return Ok(Self::with_ints(chain));
        }
        let mut a = p0;
        let mut b = shrink(&a.derivative());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            chain.push(b.clone());
            a = b;
            b = shrink(&-&r);
        }
        Ok(Self::with_ints(chain))
    }

    fn with_ints(chain: Vec<Poly>) -> Self {
        let ints = chain.iter().map(IntPoly::new).collect();
        SturmSequence { chain, ints }
    }

    /// Sign of the base polynomial at `x`.
    pub fn sign_at(&self, x: &Rat) -> i8 {
        self.ints[0].sign_at(x)
    }

    /// The square-free polynomial the chain starts from.
    pub fn base(&self) -> &Poly {
        &self.chain[0]
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut n = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
        n
    }

    pub fn variations_at(&self, x: &Rat) -> usize {
        Self::variations(self.ints.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| sign(&p.leading())))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let s = sign(&p.leading());
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Rat, hi: &Rat) -> usize {
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &Poly, lo: &Rat, hi: &Rat) -> Result<usize> {
    if lo >= hi {
        return invalid("sturm_count needs lo < hi");
    }
    Ok(SturmSequence::new(p)?.count(lo, hi))
}

/// `1 + max |a_i / a_n|`; every real root lies strictly inside `(-B, B)`.
pub fn cauchy_bound(p: &Poly) -> Rat {
    let lead = p.leading().abs();
    if lead.is_zero() {
        return Rat::one();
    }
    let n = p.degree().unwrap_or(0);
    let m = p.coeffs()[..n].iter().map(|c| c.abs() / &lead).max().unwrap_or_else(Rat::zero);
    m + Rat::one()
}
