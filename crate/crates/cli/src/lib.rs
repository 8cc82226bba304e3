//! The `sjoin` command line: argument parsing, verb dispatch and output.

pub mod render;
pub mod store;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use sasaki_join::admissible::{
    check_positivity, csc_polynomial, csc_rays, extremal_polynomial, is_gorenstein, ke_check, lift_profile, scal_profile,
};
use sasaki_join::arith::{fmt_rat, int, parse_rat, Rat};
use sasaki_join::catalog::{catalog_brieskorn_kp, catalog_brieskorn_pq, catalog_ypq, CatalogRecord};
use sasaki_join::join::{
    admissible_params, c1_contact, fano_index_quotient, is_smooth, kahler_class, quotient_data, regular_reeb_check, relative_fano,
    smoothness_gcd, validate_join, JoinSpec, Pair, ReebLattice, SasakiSeed,
};
use sasaki_join::se::{enumerate_quasiregular_se, se_polynomial, se_ray, SeSearchRecord};
use sasaki_join::topology::topology_summary;
use sasaki_join::Error;
use serde::Serialize;
use serde_json::{json, Map, Value};

use render::{render, Format, Records};
use store::{load_catalog, persist_catalog, Header};

pub const DEFAULT_PRECISION: &str = "1/1000000000000";

pub const SE_COLUMNS: &[&str] = &["k", "w", "v", "l", "smooth", "fano_index", "order"];
pub const RAY_COLUMNS: &[&str] = &["b", "v", "quasi_regular", "positive"];
pub const CATALOG_COLUMNS: &[&str] = &[
    "family",
    "params",
    "l",
    "w",
    "smooth",
    "gorenstein",
    "base_fano_index",
    "se_claim",
    "se_b",
    "topology.simply_connected",
    "topology.pi2_rank",
    "topology.h4_torsion_order",
    "topology.cohomology_ring",
    "topology.spin",
    "topology.stability_flags.k_semistable",
    "topology.stability_flags.T_equivariant_K_stable",
];

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Validation(String),
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Validation(m) | CliError::Internal(m) => m,
        }
    }

    pub(crate) fn internal(e: impl std::fmt::Display) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => CliError::Internal(e.to_string()),
            Error::Validation(_) | Error::Overflow(_) => CliError::Validation(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Exit code plus the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "sjoin", version, about = "Exact invariants, CSC and SE rays of S^3_w Sasaki joins")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Width for irrational root certificates, e.g. 1/1000000.
    #[arg(long, global = true, env = "SJOIN_PRECISION", default_value = DEFAULT_PRECISION)]
    precision: String,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Smoothness, quotient data, Kähler class and Fano data of a join.
    Info {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, value_parser = parse_pair)]
        l: Pair,
        #[arg(long, value_parser = parse_pair)]
        w: Pair,
        #[arg(long, value_parser = parse_pair)]
        v: Option<Pair>,
    },
    /// The CSC polynomial f(b) and its rays.
    Csc {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, value_parser = parse_pair)]
        l: Pair,
        #[arg(long, value_parser = parse_pair)]
        w: Pair,
    },
    /// The SE ray of the w-cone.
    Se {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, value_parser = parse_pair)]
        w: Pair,
    },
    /// Extremal polynomial, scalar curvature and positivity along a ray.
    Extremal {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, value_parser = parse_pair)]
        l: Pair,
        #[arg(long, value_parser = parse_pair)]
        w: Pair,
        #[arg(long, value_parser = parse_pair)]
        v: Pair,
    },
    /// Enumerate quasi-regular SE joins with k = p/q, p, q <= height.
    SearchSe {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        height: Option<u64>,
        /// Write a catalog file instead of printing records.
        #[arg(long, conflicts_with = "load")]
        out: Option<PathBuf>,
        /// Read and validate a catalog file.
        #[arg(long)]
        load: Option<PathBuf>,
    },
    /// Sweep the Y^{p,q} or Brieskorn families.
    Catalog {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// ypq: largest p; brieskorn-kp: largest p.
        #[arg(long)]
        max_p: Option<u64>,
        /// brieskorn-pq: largest p and q.
        #[arg(long)]
        max_pq: Option<u64>,
        /// brieskorn-kp: largest k.
        #[arg(long)]
        max_k: Option<u64>,
        /// Largest w0 for the Brieskorn families.
        #[arg(long)]
        max_w: Option<u64>,
        /// brieskorn-kp: l used when the base index is not positive.
        #[arg(long, value_parser = parse_pair)]
        l: Option<Pair>,
        #[arg(long, conflicts_with = "load")]
        out: Option<PathBuf>,
        #[arg(long)]
        load: Option<PathBuf>,
    },
    /// π₂, H⁴ torsion, cohomology ring and stability flags of a join.
    Topology {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, value_parser = parse_pair)]
        l: Pair,
        #[arg(long, value_parser = parse_pair)]
        w: Pair,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Ypq,
    #[value(alias = "brieskorn_pq")]
    BrieskornPq,
    #[value(alias = "brieskorn_kp")]
    BrieskornKp,
}

#[derive(Args, Debug)]
struct SeedArgs {
    /// JSON seed file (keys d_N, A_N, fano_index, order, pi2_rank, b3_zero,
    /// simply_connected, sphere_dim, label).
    #[arg(long, conflicts_with_all = ["d", "a", "index", "order", "sphere"])]
    seed_file: Option<PathBuf>,
    /// Round sphere seed S^{2r+1}, given as its dimension (3, 5, 7, ...).
    #[arg(long, conflicts_with_all = ["d", "a", "index", "order"])]
    sphere: Option<u32>,
    /// Complex dimension of the base quotient.
    #[arg(long)]
    d: Option<u32>,
    /// Transverse scalar curvature constant A_N (defaults to the index).
    #[arg(long = "A", id = "a")]
    a: Option<String>,
    /// Fano index I_N of a KE base.
    #[arg(long)]
    index: Option<u64>,
    /// Orbifold order of the base.
    #[arg(long)]
    order: Option<u64>,
}

impl SeedArgs {
    fn build(&self) -> CliResult<SasakiSeed> {
        if let Some(path) = &self.seed_file {
            let text = fs::read_to_string(path).map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
            let seed: SasakiSeed =
                serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("{}: bad seed: {e}", path.display())))?;
            seed.validate()?;
            return Ok(seed);
        }
        if let Some(n) = self.sphere {
            if n < 3 || n % 2 == 0 {
                return Err(CliError::Validation(format!("--sphere needs an odd dimension >= 3, got {n}")));
            }
            return Ok(SasakiSeed::sphere((n - 1) / 2));
        }
        let Some(d) = self.d else {
            return Err(CliError::Validation("a seed is required: --seed-file, --sphere or --d".into()));
        };
        let a = match (&self.a, self.index) {
            (Some(s), _) => Some(parse_rat(s)?),
            (None, Some(i)) => Some(int(i as i64)),
            (None, None) => None,
        };
        let seed = SasakiSeed {
            d,
            a,
            fano_index: self.index,
            order: self.order.unwrap_or(1),
            pi2_rank: None,
            b3_zero: None,
            simply_connected: None,
            sphere_dim: None,
            label: String::new(),
        };
        seed.validate()?;
        Ok(seed)
    }
}

fn parse_pair(s: &str) -> Result<Pair, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected a pair like 21,5, got '{s}'"))?;
    let a = a.trim().parse::<u64>().map_err(|e| format!("'{a}': {e}"))?;
    let b = b.trim().parse::<u64>().map_err(|e| format!("'{b}': {e}"))?;
    Ok((a, b))
}

fn to_value<T: Serialize>(x: &T) -> CliResult<Value> {
    serde_json::to_value(x).map_err(CliError::internal)
}

/// `v` in the orientation of the validated join.
fn oriented_v(j: &JoinSpec, v: Pair) -> CliResult<ReebLattice> {
    let v = if j.perp_applied { (v.1, v.0) } else { v };
    Ok(ReebLattice::new(v.0, v.1)?)
}

struct Rendered {
    json: Value,
    rows: Option<(Vec<Value>, &'static [&'static str])>,
    warnings: Vec<String>,
}

impl Rendered {
    fn one(json: Value) -> Self {
        Rendered { json, rows: None, warnings: Vec::new() }
    }

    fn many(rows: Vec<Value>, columns: &'static [&'static str]) -> Self {
        Rendered { json: Value::Null, rows: Some((rows, columns)), warnings: Vec::new() }
    }
}

/// Runs `sjoin` on `args` (without the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("sjoin")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: 0, stdout: text, stderr: String::new() },
                _ => Outcome { code: 1, stdout: String::new(), stderr: text },
            };
        }
    };
    match dispatch(&cli) {
        Ok(r) => {
            let stdout = match &r.rows {
                Some((rows, columns)) => render(Records::Many { rows, columns }, cli.format),
                None => render(Records::One(&r.json), cli.format),
            };
            let stderr = r.warnings.iter().map(|w| format!("{w}\n")).collect();
            Outcome { code: 0, stdout, stderr }
        }
        Err(e) => Outcome { code: e.code(), stdout: String::new(), stderr: format!("error: {}\n", e.message()) },
    }
}

fn precision(cli: &Cli) -> CliResult<Rat> {
    let p = parse_rat(&cli.precision)?;
    if !p.is_positive() {
        return Err(CliError::Validation(format!("precision must be positive, got {}", cli.precision)));
    }
    Ok(p)
}

fn dispatch(cli: &Cli) -> CliResult<Rendered> {
    let eps = precision(cli)?;
    match &cli.verb {
        Verb::Info { seed, l, w, v } => info(&seed.build()?, *l, *w, *v),
        Verb::Csc { seed, l, w } => csc(&seed.build()?, *l, *w, &eps),
        Verb::Se { seed, w } => se(&seed.build()?, *w, &eps),
        Verb::Extremal { seed, l, w, v } => extremal(&seed.build()?, *l, *w, *v),
        Verb::SearchSe { seed, height, out, load } => search_se(seed, *height, out.as_ref(), load.as_ref()),
        Verb::Catalog { family, max_p, max_pq, max_k, max_w, l, out, load } => {
            let params = CatalogParams { family: *family, max_p: *max_p, max_pq: *max_pq, max_k: *max_k, max_w: *max_w, l: *l };
            catalog(&params, out.as_ref(), load.as_ref())
        }
        Verb::Topology { seed, l, w } => {
            let seed = seed.build()?;
            let j = validate_join(&seed, *l, *w)?;
            Ok(Rendered::one(to_value(&topology_summary(&seed, &j)?)?))
        }
    }
}

#[derive(Serialize)]
struct InfoOut {
    seed: SasakiSeed,
    l: Pair,
    w: Pair,
    perp_applied: bool,
    smooth: bool,
    smoothness_gcd: String,
    c1: Option<i64>,
    gorenstein: Option<bool>,
    relative_fano_l: Option<Pair>,
    regular_reeb: sasaki_join::join::RegularReeb,
    v: Option<ReebLattice>,
    quotient: Option<sasaki_join::join::QuotientData>,
    kahler_class: Option<sasaki_join::join::ClassCoefficients>,
    admissible: Option<sasaki_join::join::AdmissibleParams>,
    fano_index_quotient: Option<u64>,
}

fn info(seed: &SasakiSeed, l: Pair, w: Pair, v: Option<Pair>) -> CliResult<Rendered> {
    let j = validate_join(seed, l, w)?;
    let v = v.map(|v| oriented_v(&j, v)).transpose()?;
    let c1 = seed.fano_index.map(|_| c1_contact(seed, &j)).transpose()?;
    let quotient = v.map(|v| quotient_data(seed, &j, &v)).transpose()?;
    let ray = v.filter(|_| quotient.is_some_and(|q| !q.reducible));
    let gorenstein = c1.map(|c| c == 0);
    let out = InfoOut {
        seed: seed.clone(),
        l: j.l(),
        w: j.w(),
        perp_applied: j.perp_applied,
        smooth: is_smooth(seed, &j),
        smoothness_gcd: smoothness_gcd(seed.order, j.l(), j.w()).to_string(),
        c1,
        gorenstein,
        relative_fano_l: seed.fano_index.map(|_| relative_fano(seed, j.w()).map(|r| r.l())).transpose()?,
        regular_reeb: regular_reeb_check(seed, &j),
        v,
        quotient,
        kahler_class: ray.map(|v| kahler_class(seed, &j, &v)).transpose()?,
        admissible: ray.filter(|_| seed.a.is_some()).map(|v| admissible_params(seed, &j, &v)).transpose()?,
        fano_index_quotient: ray.filter(|_| gorenstein == Some(true)).map(|v| fano_index_quotient(seed, &j, &v)).transpose()?,
    };
    Ok(Rendered::one(to_value(&out)?))
}

fn csc(seed: &SasakiSeed, l: Pair, w: Pair, eps: &Rat) -> CliResult<Rendered> {
    let j = validate_join(seed, l, w)?;
    let f = csc_polynomial(seed, &j)?;
    let rays = csc_rays(seed, &j, eps)?;
    let rows: Vec<Value> = rays.iter().map(to_value).collect::<CliResult<_>>()?;
    let json = json!({ "f": f.to_string(), "f_coeffs": to_value(&f)?, "rays": rows });
    Ok(Rendered { json, rows: None, warnings: Vec::new() }.with_rows(rows, RAY_COLUMNS))
}

impl Rendered {
    /// Keeps the full object for JSON and `rows` for CSV and tables.
    fn with_rows(self, rows: Vec<Value>, columns: &'static [&'static str]) -> Self {
        Rendered { rows: Some((rows, columns)), ..self }
    }
}

#[derive(Serialize)]
struct SeOut {
    k: sasaki_join::arith::RayCertificate,
    b: sasaki_join::arith::RayCertificate,
    v: Option<ReebLattice>,
    quasi_regular: bool,
    #[serde(rename = "P_w")]
    p_w: String,
    l: Option<Pair>,
    ke: Option<bool>,
    fano_index_quotient: Option<u64>,
}

fn se(seed: &SasakiSeed, w: Pair, eps: &Rat) -> CliResult<Rendered> {
    let w = if w.0 < w.1 { (w.1, w.0) } else { w };
    let ray = se_ray(seed.d, w, eps)?;
    let mut out = SeOut {
        k: ray.k,
        b: ray.b,
        v: ray.v,
        quasi_regular: ray.quasi_regular,
        p_w: se_polynomial(seed.d, w)?.to_string(),
        l: None,
        ke: None,
        fano_index_quotient: None,
    };
    if seed.fano_index.is_some() {
        let j = relative_fano(seed, w)?;
        out.l = Some(j.l());
        if let Some(v) = ray.v {
            out.ke = Some(ke_check(seed, &j, &v)?);
            out.fano_index_quotient = Some(fano_index_quotient(seed, &j, &v)?);
        }
    }
    Ok(Rendered::one(to_value(&out)?))
}

fn extremal(seed: &SasakiSeed, l: Pair, w: Pair, v: Pair) -> CliResult<Rendered> {
    let j = validate_join(seed, l, w)?;
    let v = oriented_v(&j, v)?;
    let q = quotient_data(seed, &j, &v)?;
    let p = admissible_params(seed, &j, &v)?;
    let sol = extremal_polynomial(&p)?;
    let scal = scal_profile(&p, &sol)?;
    let lift = lift_profile(&p, &sol, &v, q.m);
    let json = json!({
        "params": to_value(&p)?,
        "F": sol.f.to_string(),
        "F_coeffs": to_value(&sol.f)?,
        "alpha": fmt_rat(&sol.alpha),
        "beta": fmt_rat(&sol.beta),
        "scal": scal.to_string(),
        "csc": sol.alpha == int(0),
        "positive": check_positivity(&sol),
        "gorenstein": is_gorenstein(seed, &j),
        "lift": to_value(&lift)?,
    });
    Ok(Rendered::one(json))
}

fn seed_params(seed: &SasakiSeed, height: u64) -> CliResult<Map<String, Value>> {
    let mut m = Map::new();
    m.insert("height".into(), json!(height));
    m.insert("seed".into(), to_value(seed)?);
    Ok(m)
}

fn seed_d(h: &Header) -> CliResult<u32> {
    h.params
        .get("seed")
        .and_then(|s| s.get("d_N"))
        .and_then(Value::as_u64)
        .and_then(|d| u32::try_from(d).ok())
        .ok_or_else(|| CliError::Validation("catalog header lacks seed.d_N".into()))
}

fn search_se(seed_args: &SeedArgs, height: Option<u64>, out: Option<&PathBuf>, load: Option<&PathBuf>) -> CliResult<Rendered> {
    if let Some(path) = load {
        let mut expected = Map::new();
        if let Some(h) = height {
            expected.insert("height".into(), json!(h));
        }
        if seed_args.seed_file.is_some() || seed_args.sphere.is_some() || seed_args.d.is_some() {
            expected.insert("seed".into(), to_value(&seed_args.build()?)?);
        }
        let loaded = load_catalog::<SeSearchRecord, _>(path, "se_search", &expected, |h, r: &SeSearchRecord| {
            r.check(seed_d(h)?).map_err(CliError::from)
        })?;
        let rows = loaded.records.iter().map(to_value).collect::<CliResult<_>>()?;
        return Ok(Rendered { warnings: loaded.warnings, ..Rendered::many(rows, SE_COLUMNS) });
    }
    let seed = seed_args.build()?;
    let height = height.unwrap_or(10);
    let records = enumerate_quasiregular_se(&seed, height)?;
    if let Some(path) = out {
        persist_catalog(path, &Header::new("se_search", seed_params(&seed, height)?), &records)?;
        return Ok(Rendered::one(json!({ "path": path.display().to_string(), "records": records.len() })));
    }
    let rows = records.iter().map(to_value).collect::<CliResult<_>>()?;
    Ok(Rendered::many(rows, SE_COLUMNS))
}

struct CatalogParams {
    family: FamilyArg,
    max_p: Option<u64>,
    max_pq: Option<u64>,
    max_k: Option<u64>,
    max_w: Option<u64>,
    l: Option<Pair>,
}

impl CatalogParams {
    fn resolved(&self) -> Map<String, Value> {
        let mut m = Map::new();
        match self.family {
            FamilyArg::Ypq => {
                m.insert("family".into(), json!("ypq"));
                m.insert("max_p".into(), json!(self.max_p.unwrap_or(20)));
            }
            FamilyArg::BrieskornPq => {
                m.insert("family".into(), json!("brieskorn_pq"));
                m.insert("max_pq".into(), json!(self.max_pq.unwrap_or(6)));
                m.insert("max_w".into(), json!(self.max_w.unwrap_or(6)));
            }
            FamilyArg::BrieskornKp => {
                m.insert("family".into(), json!("brieskorn_kp"));
                m.insert("max_k".into(), json!(self.max_k.unwrap_or(6)));
                m.insert("max_p".into(), json!(self.max_p.unwrap_or(8)));
                m.insert("max_w".into(), json!(self.max_w.unwrap_or(5)));
                m.insert("l".into(), json!(self.l.unwrap_or((1, 1))));
            }
        }
        m
    }

    /// Only the parameters given on the command line.
    fn requested(&self) -> Map<String, Value> {
        let all = self.resolved();
        let given = [
            ("family", true),
            ("max_p", self.max_p.is_some()),
            ("max_pq", self.max_pq.is_some()),
            ("max_k", self.max_k.is_some()),
            ("max_w", self.max_w.is_some()),
            ("l", self.l.is_some()),
        ];
        all.into_iter().filter(|(k, _)| given.iter().any(|(g, on)| g == k && *on)).collect()
    }
}

fn catalog(params: &CatalogParams, out: Option<&PathBuf>, load: Option<&PathBuf>) -> CliResult<Rendered> {
    if let Some(path) = load {
        let loaded = load_catalog::<CatalogRecord, _>(path, "catalog", &params.requested(), |_, r: &CatalogRecord| {
            r.check().map_err(CliError::from)
        })?;
        let rows = loaded.records.iter().map(to_value).collect::<CliResult<_>>()?;
        return Ok(Rendered { warnings: loaded.warnings, ..Rendered::many(rows, CATALOG_COLUMNS) });
    }
    let p = params.resolved();
    let n = |k: &str| p.get(k).and_then(Value::as_u64).unwrap_or(0);
    let records = match params.family {
        FamilyArg::Ypq => catalog_ypq(n("max_p"))?,
        FamilyArg::BrieskornPq => catalog_brieskorn_pq(n("max_pq"), n("max_w"))?,
        FamilyArg::BrieskornKp => catalog_brieskorn_kp(n("max_k"), n("max_p"), n("max_w"), params.l.unwrap_or((1, 1)))?,
    };
    if let Some(path) = out {
        persist_catalog(path, &Header::new("catalog", p), &records)?;
        return Ok(Rendered::one(json!({ "path": path.display().to_string(), "records": records.len() })));
    }
    let rows = records.iter().map(to_value).collect::<CliResult<_>>()?;
    Ok(Rendered::many(rows, CATALOG_COLUMNS))
}
