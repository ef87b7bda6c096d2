//! Certified numeric checks of the analytic bounds on `f(n)`.
//!
//! Every inequality is evaluated with [`ErrReal`] enclosures. A comparison is
//! `certified` when the enclosures are disjoint in the right order,
//! `violated` when they are disjoint in the wrong order, and otherwise the
//! precision is doubled (up to [`BoundsConfig::max_precision_bits`]) before
//! giving up with [`BoundsError::UndecidedAtPrecision`].

pub mod ball;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use ball::{BallError, Certainty, Dyadic, ErrReal, Mag};

use crate::length::FTable;

pub const DEFAULT_PRECISION_BITS: u32 = 200;
pub const MAX_PRECISION_BITS: u32 = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{inequality} at {point} still undecided at {bits} bits")]
    UndecidedAtPrecision {
        inequality: String,
        point: String,
        bits: u32,
    },
    #[error("invalid arguments: {0}")]
    InvalidArgs(String),
    #[error(transparent)]
    Arithmetic(#[from] BallError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundsConfig {
    pub precision_bits: u32,
    pub max_precision_bits: u32,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        BoundsConfig {
            precision_bits: DEFAULT_PRECISION_BITS,
            max_precision_bits: MAX_PRECISION_BITS,
        }
    }
}

impl BoundsConfig {
    pub fn with_precision(bits: u32) -> Self {
        BoundsConfig {
            precision_bits: bits,
            max_precision_bits: MAX_PRECISION_BITS.max(bits),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Certified,
    Undecided,
    Violated,
}

#[derive(Debug, Clone)]
pub struct BoundEntry {
    pub inequality: &'static str,
    pub point: String,
    pub status: Status,
    /// `ln(rhs) - ln(lhs)` for inequalities, `ln(lhs) - ln(rhs)` for
    /// identities; `None` when a side is not certainly positive.
    pub margin: Option<ErrReal>,
    pub precision_bits: u32,
}

impl Serialize for BoundEntry {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BoundEntry", 5)?;
        st.serialize_field("inequality", self.inequality)?;
        st.serialize_field("point", &self.point)?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("margin", &self.margin.as_ref().map(Enclosure::of))?;
        st.serialize_field("precision_bits", &self.precision_bits)?;
        st.end()
    }
}

/// Printable form of an enclosure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enclosure {
    pub mid: String,
    pub rad: String,
}

impl Enclosure {
    pub fn of(x: &ErrReal) -> Self {
        Enclosure {
            mid: x.mid().to_sci(25),
            rad: if x.is_exact() {
                "0".into()
            } else {
                x.rad().to_dyadic().to_sci(3)
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub check: &'static str,
    pub range: String,
    pub status: Status,
    pub certified: usize,
    pub undecided: usize,
    pub violated: usize,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    fn new(check: &'static str, range: String, entries: Vec<BoundEntry>) -> Self {
        let count = |s: Status| entries.iter().filter(|e| e.status == s).count();
        let (certified, undecided, violated) = (
            count(Status::Certified),
            count(Status::Undecided),
            count(Status::Violated),
        );
        let status = if violated > 0 {
            Status::Violated
        } else if undecided > 0 {
            Status::Undecided
        } else {
            Status::Certified
        };
        BoundReport {
            check,
            range,
            status,
            certified,
            undecided,
            violated,
            entries,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Certified
    }
}

/// Exact rational grid coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        let g = num.gcd(&den);
        let sign = if den < 0 { -1 } else { 1 };
        Some(Rational {
            num: sign * num / g,
            den: sign * den / g,
        })
    }

    pub fn integer(v: i64) -> Self {
        Rational { num: v, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn to_ball(&self, prec: u32) -> Result<ErrReal, BallError> {
        ErrReal::from_ratio(self.num, self.den, prec)
    }

    pub fn is_positive(&self) -> bool {
        self.num > 0
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            return write!(f, "{}", self.num);
        }
        // terminating decimal when the denominator divides a power of ten
        let mut pow = 1i128;
        for k in 1..=18u32 {
            pow *= 10;
            if pow % self.den as i128 == 0 {
                let scaled = (self.num as i128 * (pow / self.den as i128)).unsigned_abs();
                let sign = if self.num < 0 { "-" } else { "" };
                let digits = format!("{:0>width$}", scaled, width = k as usize + 1);
                let (int, frac) = digits.split_at(digits.len() - k as usize);
                return write!(f, "{sign}{int}.{}", frac.trim_end_matches('0'));
            }
        }
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rational {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BoundsError::InvalidArgs(format!("`{s}` is not a number"));
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            return Rational::new(p, q).ok_or_else(bad);
        }
        let (num, den) = ball::parse_decimal(s).ok_or_else(bad)?;
        let num: i64 = num.try_into().map_err(|_| bad())?;
        let den: i64 = den.try_into().map_err(|_| bad())?;
        Rational::new(num, den).ok_or_else(bad)
    }
}

const MAX_GRID_POINTS: usize = 1_000_000;

/// Parses `start:step:end` (inclusive) or a comma-separated list.
pub fn parse_grid(s: &str) -> Result<Vec<Rational>, BoundsError> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() == 1 {
        return s.split(',').map(str::parse).collect();
    }
    let [start, step, end] = parts[..] else {
        return Err(BoundsError::InvalidArgs(format!(
            "grid `{s}` is not start:step:end"
        )));
    };
    let (start, step, end): (Rational, Rational, Rational) =
        (start.parse()?, step.parse()?, end.parse()?);
    if !step.is_positive() {
        return Err(BoundsError::InvalidArgs(
            "grid step must be positive".into(),
        ));
    }
    let den = start.den.lcm(&step.den).lcm(&end.den);
    let (a, d, b) = (
        start.num * (den / start.den),
        step.num * (den / step.den),
        end.num * (den / end.den),
    );
    if b < a {
        return Ok(Vec::new());
    }
    let count = ((b - a) / d + 1) as usize;
    if count > MAX_GRID_POINTS {
        return Err(BoundsError::InvalidArgs(format!("grid has {count} points")));
    }
    Ok((0..count as i64)
        .map(|i| Rational::new(a + i * d, den).expect("nonzero denominator"))
        .collect())
}

/// `x` as an exact ball.
fn int(v: i64, prec: u32) -> ErrReal {
    ErrReal::from_i64(v, prec)
}

fn check_positive(x: &ErrReal, what: &str) -> Result<(), BoundsError> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(BoundsError::Domain(format!(
            "{what} needs a positive argument, got {x}"
        )))
    }
}

/// `S(x) = sqrt(2 pi x) (x/e)^x`.
pub fn stirling_s(x: &ErrReal) -> Result<ErrReal, BoundsError> {
    check_positive(x, "S(x)")?;
    Ok(ln_stirling(x)?.exp()?)
}

/// `ln S(x) = ln(2 pi x)/2 + x (ln x - 1)`.
fn ln_stirling(x: &ErrReal) -> Result<ErrReal, BallError> {
    let prec = x.prec();
    let lnx = x.ln()?;
    let two_pi = ball::pi(prec).mul_2exp(1);
    let half = two_pi.ln()?.add(&lnx).mul_2exp(-1);
    Ok(half.add(&x.mul(&lnx.sub(&ErrReal::one(prec)))))
}

/// `4^x`, exact when `2x` is an integer of moderate size.
pub fn pow4(x: &ErrReal) -> Result<ErrReal, BallError> {
    let prec = x.prec();
    if x.is_exact() {
        if let Some(k) = x.mul_2exp(1).mid().to_i64().filter(|k| k.abs() < 1 << 40) {
            return Ok(ErrReal::from_dyadic(Dyadic::new(BigInt::from(1), k), prec));
        }
    }
    x.mul(&ball::ln2(prec)).mul_2exp(1).exp()
}

/// `g_alpha(x) = 4^x x^(alpha - lg(x)/4)`.
pub fn g_alpha(x: &ErrReal, alpha: &ErrReal) -> Result<ErrReal, BoundsError> {
    check_positive(x, "g_alpha(x)")?;
    let prec = x.prec().max(alpha.prec());
    let lnx = x.ln()?;
    let lgx = lnx.div(&ball::ln2(prec))?;
    let exponent = alpha.sub(&lgx.mul_2exp(-2)).mul(&lnx);
    Ok(pow4(x)?.mul(&exponent.exp()?))
}

fn lg_pi(prec: u32) -> Result<ErrReal, BallError> {
    ball::pi(prec).lg()
}

/// `lg(beta) + 1/4 - lg(pi)/2`.
pub fn alpha_from_beta(beta: &ErrReal) -> Result<ErrReal, BallError> {
    let prec = beta.prec();
    let quarter = ErrReal::one(prec).mul_2exp(-2);
    Ok(beta.lg()?.add(&quarter).sub(&lg_pi(prec)?.mul_2exp(-1)))
}

/// `5/4 - lg(pi)/2`, the exponent of the lower bound.
pub fn alpha_low(prec: u32) -> Result<ErrReal, BallError> {
    alpha_from_beta(&int(2, prec))
}

/// `lg 5 - 3/4 - lg(pi)/2`, the exponent of the upper bound.
pub fn alpha_high(prec: u32) -> Result<ErrReal, BallError> {
    alpha_from_beta(&ErrReal::from_ratio(5, 2, prec)?)
}

/// Named exponent for [`check_lemma_ga`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alpha {
    Low,
    High,
    Value(Rational),
}

impl Alpha {
    pub fn eval(&self, prec: u32) -> Result<ErrReal, BallError> {
        match self {
            Alpha::Low => alpha_low(prec),
            Alpha::High => alpha_high(prec),
            Alpha::Value(r) => r.to_ball(prec),
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Low => f.write_str("alpha_low"),
            Alpha::High => f.write_str("alpha_high"),
            Alpha::Value(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Clone, Copy)]
enum Relation {
    Le,
    Eq,
}

/// Absolute radius below which an identity counts as tight: `2^-100 < 1e-30`.
const IDENTITY_RADIUS_LOG2: i64 = -100;

fn classify(lhs: &ErrReal, rhs: &ErrReal, rel: Relation) -> Status {
    match rel {
        Relation::Le => match lhs.certify_le(rhs) {
            Certainty::True => Status::Certified,
            Certainty::False => Status::Violated,
            Certainty::Unknown => Status::Undecided,
        },
        Relation::Eq => {
            if !lhs.overlaps(rhs) {
                return Status::Violated;
            }
            let tight = Mag::pow2(IDENTITY_RADIUS_LOG2).to_dyadic();
            if lhs.rad().to_dyadic() <= tight && rhs.rad().to_dyadic() <= tight {
                Status::Certified
            } else {
                Status::Undecided
            }
        }
    }
}

fn margin(lhs: &ErrReal, rhs: &ErrReal, rel: Relation) -> Option<ErrReal> {
    let (small, big) = match rel {
        Relation::Le => (lhs, rhs),
        Relation::Eq => (rhs, lhs),
    };
    Some(big.ln().ok()?.sub(&small.ln().ok()?))
}

/// Evaluates `lhs REL rhs`, doubling precision while undecided.
fn decide<F>(
    cfg: &BoundsConfig,
    inequality: &'static str,
    point: String,
    rel: Relation,
    eval: F,
) -> Result<BoundEntry, BoundsError>
where
    F: Fn(u32) -> Result<(ErrReal, ErrReal), BoundsError>,
{
    let mut prec = cfg.precision_bits;
    loop {
        let (lhs, rhs) = eval(prec)?;
        let status = classify(&lhs, &rhs, rel);
        if status != Status::Undecided {
            return Ok(BoundEntry {
                inequality,
                point,
                status,
                margin: margin(&lhs, &rhs, rel),
                precision_bits: prec,
            });
        }
        if prec >= cfg.max_precision_bits {
            return Err(BoundsError::UndecidedAtPrecision {
                inequality: inequality.to_string(),
                point,
                bits: prec,
            });
        }
        prec = prec.saturating_mul(2).min(cfg.max_precision_bits);
    }
}

fn flatten(
    per_point: Vec<Result<Vec<BoundEntry>, BoundsError>>,
) -> Result<Vec<BoundEntry>, BoundsError> {
    let mut out = Vec::new();
    for r in per_point {
        out.extend(r?);
    }
    Ok(out)
}

/// `e^(1/(12n+1)) S(n) <= n! <= e^(1/(12n)) S(n)` for `1 <= n <= max_n`.
pub fn check_stirling_sandwich(max_n: u64, cfg: &BoundsConfig) -> Result<BoundReport, BoundsError> {
    let per_n = (1..=max_n)
        .into_par_iter()
        .map(|n| {
            let fact = crate::length::factorial(n);
            let lower = decide(cfg, "stirling.lower", n.to_string(), Relation::Le, |p| {
                let s = stirling_s(&int(n as i64, p))?;
                let c = ErrReal::from_ratio(1, 12 * n as i64 + 1, p)?.exp()?;
                Ok((c.mul(&s), ErrReal::from_biguint(&fact, p)))
            })?;
            let upper = decide(cfg, "stirling.upper", n.to_string(), Relation::Le, |p| {
                let s = stirling_s(&int(n as i64, p))?;
                let c = ErrReal::from_ratio(1, 12 * n as i64, p)?.exp()?;
                Ok((ErrReal::from_biguint(&fact, p), c.mul(&s)))
            })?;
            Ok(vec![lower, upper])
        })
        .collect();
    Ok(BoundReport::new(
        "stirling_sandwich",
        format!("1..={max_n}"),
        flatten(per_n)?,
    ))
}

fn grid_range(grid: &[Rational]) -> String {
    match (grid.first(), grid.last()) {
        (Some(a), Some(b)) => format!("{a}..={b} ({} points)", grid.len()),
        _ => "empty".into(),
    }
}

/// `S(x+1/2)^2 <= S(x) S(x+1) <= e^(1/(2x)) S(x+1/2)^2` at each grid point.
pub fn check_lemma_sa(grid: &[Rational], cfg: &BoundsConfig) -> Result<BoundReport, BoundsError> {
    if let Some(x) = grid.iter().find(|x| x.num < x.den) {
        return Err(BoundsError::Domain(format!("grid point {x} is below 1")));
    }
    let per_point = grid
        .par_iter()
        .map(|x| {
            let parts = |p: u32| -> Result<(ErrReal, ErrReal, ErrReal), BoundsError> {
                let xb = x.to_ball(p)?;
                let half = ErrReal::one(p).mul_2exp(-1);
                let mid = stirling_s(&xb.add(&half))?.square();
                let prod = stirling_s(&xb)?.mul(&stirling_s(&xb.add(&ErrReal::one(p)))?);
                let c = ErrReal::one(p).div(&xb.mul_2exp(1))?.exp()?;
                Ok((mid, prod, c))
            };
            let lower = decide(cfg, "lemma_sa.lower", x.to_string(), Relation::Le, |p| {
                let (mid, prod, _) = parts(p)?;
                Ok((mid, prod))
            })?;
            let upper = decide(cfg, "lemma_sa.upper", x.to_string(), Relation::Le, |p| {
                let (mid, prod, c) = parts(p)?;
                Ok((prod, c.mul(&mid)))
            })?;
            Ok(vec![lower, upper])
        })
        .collect();
    Ok(BoundReport::new(
        "lemma_sa",
        grid_range(grid),
        flatten(per_point)?,
    ))
}

/// `e^(-1/(2 sqrt x)) (5/2) g(x+1/2) <= g(x) + g(x+1) <= e^(1/(2 sqrt x)) (5/2) g(x+1/2)`
/// at each grid point; every point must satisfy `x >= 4^alpha`.
pub fn check_lemma_ga(
    grid: &[Rational],
    alpha: Alpha,
    cfg: &BoundsConfig,
) -> Result<BoundReport, BoundsError> {
    let a = alpha.eval(cfg.precision_bits)?;
    if !a.is_positive() {
        return Err(BoundsError::Domain(format!(
            "alpha = {alpha} must be positive"
        )));
    }
    let threshold = pow4(&a)?;
    for x in grid {
        if threshold.certify_le(&x.to_ball(cfg.precision_bits)?) != Certainty::True {
            return Err(BoundsError::Domain(format!(
                "grid point {x} is not at least 4^alpha = {}",
                threshold.mid().to_sci(6)
            )));
        }
    }
    let per_point = grid
        .par_iter()
        .map(|x| {
            let parts = |p: u32| -> Result<(ErrReal, ErrReal, ErrReal), BoundsError> {
                let a = alpha.eval(p)?;
                let xb = x.to_ball(p)?;
                let half = ErrReal::one(p).mul_2exp(-1);
                let sum = g_alpha(&xb, &a)?.add(&g_alpha(&xb.add(&ErrReal::one(p)), &a)?);
                let mid = g_alpha(&xb.add(&half), &a)?.mul(&ErrReal::from_ratio(5, 2, p)?);
                let t = ErrReal::one(p).div(&xb.sqrt()?.mul_2exp(1))?;
                Ok((sum, mid, t))
            };
            let lower = decide(cfg, "lemma_ga.lower", x.to_string(), Relation::Le, |p| {
                let (sum, mid, t) = parts(p)?;
                Ok((t.neg().exp()?.mul(&mid), sum))
            })?;
            let upper = decide(cfg, "lemma_ga.upper", x.to_string(), Relation::Le, |p| {
                let (sum, mid, t) = parts(p)?;
                Ok((sum, t.exp()?.mul(&mid)))
            })?;
            Ok(vec![lower, upper])
        })
        .collect();
    Ok(BoundReport::new(
        "lemma_ga",
        format!("{} alpha={alpha}", grid_range(grid)),
        flatten(per_point)?,
    ))
}

/// `beta S(2x) / S(x)^2 g_alpha(x) = g_alpha(2x)` with
/// `alpha = lg(beta) + 1/4 - lg(pi)/2`, checked as an identity of
/// enclosures with radii below `1e-30`.
pub fn check_lemma_gas(
    grid: &[Rational],
    beta: Rational,
    cfg: &BoundsConfig,
) -> Result<BoundReport, BoundsError> {
    if !beta.is_positive() {
        return Err(BoundsError::Domain(format!(
            "beta = {beta} must be positive"
        )));
    }
    if let Some(x) = grid.iter().find(|x| !x.is_positive()) {
        return Err(BoundsError::Domain(format!(
            "grid point {x} is not positive"
        )));
    }
    let per_point = grid
        .par_iter()
        .map(|x| {
            let e = decide(
                cfg,
                "lemma_gas.identity",
                x.to_string(),
                Relation::Eq,
                |p| {
                    let b = beta.to_ball(p)?;
                    let a = alpha_from_beta(&b)?;
                    let xb = x.to_ball(p)?;
                    let x2 = xb.mul_2exp(1);
                    let ratio = stirling_s(&x2)?.div(&stirling_s(&xb)?.square())?;
                    let lhs = b.mul(&ratio).mul(&g_alpha(&xb, &a)?);
                    Ok((lhs, g_alpha(&x2, &a)?))
                },
            )?;
            Ok(vec![e])
        })
        .collect();
    Ok(BoundReport::new(
        "lemma_gas",
        format!("{} beta={beta}", grid_range(grid)),
        flatten(per_point)?,
    ))
}

/// `0.195 g_low(n) <= f(n) <= g_high(n) / 4` for `1 <= n <= max_n`, and
/// `f(n) <= g_low(n) / 4` when `n` is a power of two (including `n = 1`).
pub fn check_fn_bounds(max_n: u64, cfg: &BoundsConfig) -> Result<BoundReport, BoundsError> {
    if max_n == 0 {
        return Ok(BoundReport::new("fn_bounds", "empty".into(), Vec::new()));
    }
    let table = FTable::new(max_n).map_err(|e| BoundsError::InvalidArgs(e.to_string()))?;
    let per_n = (1..=max_n)
        .into_par_iter()
        .map(|n| {
            let fnv = table.get(n);
            let point = n.to_string();
            let mut out = Vec::with_capacity(3);
            out.push(decide(cfg, "fn.lower", point.clone(), Relation::Le, |p| {
                let g = g_alpha(&int(n as i64, p), &alpha_low(p)?)?;
                let c = ErrReal::from_ratio(195, 1000, p)?;
                Ok((c.mul(&g), ErrReal::from_biguint(fnv, p)))
            })?);
            out.push(decide(cfg, "fn.upper", point.clone(), Relation::Le, |p| {
                let g = g_alpha(&int(n as i64, p), &alpha_high(p)?)?;
                Ok((ErrReal::from_biguint(fnv, p), g.mul_2exp(-2)))
            })?);
            if n.is_power_of_two() {
                out.push(decide(cfg, "fn.pow2_upper", point, Relation::Le, |p| {
                    let g = g_alpha(&int(n as i64, p), &alpha_low(p)?)?;
                    Ok((ErrReal::from_biguint(fnv, p), g.mul_2exp(-2)))
                })?);
            }
            Ok(out)
        })
        .collect();
    Ok(BoundReport::new(
        "fn_bounds",
        format!("1..={max_n}"),
        flatten(per_n)?,
    ))
}

pub const MAX_ESTIMATE_M: u32 = 10;

#[derive(Debug, Clone, Serialize)]
pub struct EstimateRow {
    pub m: u32,
    pub n: u64,
    #[serde(with = "crate::bigser")]
    pub f: num_bigint::BigUint,
    pub estimate: Enclosure,
    pub ratio: Enclosure,
    pub ln_ratio: f64,
    /// `|ln ratio|` fell compared with the previous row.
    pub anomalous: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EstimateReport {
    pub m_max: u32,
    pub rows: Vec<EstimateRow>,
    pub anomalies: usize,
}

/// `4^(2^m) e^-1 pi^((1-m)/2) 2^(-(m^2 - 5m + 6)/4)`.
pub fn power_of_two_estimate(m: u32, prec: u32) -> Result<ErrReal, BallError> {
    let m = m as i64;
    let n = ErrReal::from_i64(1 << m, prec);
    let pi_part = ball::pi(prec)
        .ln()?
        .mul(&ErrReal::from_ratio(1 - m, 2, prec)?);
    let two_part = ball::ln2(prec).mul(&ErrReal::from_ratio(-(m * m - 5 * m + 6), 4, prec)?);
    let rest = pi_part.add(&two_part).sub(&ErrReal::one(prec)).exp()?;
    Ok(pow4(&n)?.mul(&rest))
}

/// Compares exact `f(2^m)` with [`power_of_two_estimate`] for
/// `1 <= m <= m_max`.
pub fn estimate_power_of_two(
    m_max: u32,
    cfg: &BoundsConfig,
) -> Result<EstimateReport, BoundsError> {
    if m_max > MAX_ESTIMATE_M {
        return Err(BoundsError::InvalidArgs(format!(
            "m_max = {m_max} exceeds {MAX_ESTIMATE_M}"
        )));
    }
    let prec = cfg.precision_bits;
    let table = FTable::new(1u64 << m_max).map_err(|e| BoundsError::InvalidArgs(e.to_string()))?;
    let mut rows: Vec<EstimateRow> = Vec::with_capacity(m_max as usize);
    for m in 1..=m_max {
        let n = 1u64 << m;
        let f = table.get(n).clone();
        let est = power_of_two_estimate(m, prec)?;
        let fb = ErrReal::from_biguint(&f, prec);
        let ratio = fb.div(&est)?;
        let ln_ratio = fb.ln()?.sub(&est.ln()?).to_f64();
        let anomalous = rows
            .last()
            .is_some_and(|prev| ln_ratio.abs() < prev.ln_ratio.abs());
        rows.push(EstimateRow {
            m,
            n,
            f,
            estimate: Enclosure::of(&est),
            ratio: Enclosure::of(&ratio),
            ln_ratio,
            anomalous,
        });
    }
    let anomalies = rows.iter().filter(|r| r.anomalous).count();
    Ok(EstimateReport {
        m_max,
        rows,
        anomalies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = DEFAULT_PRECISION_BITS;

    fn cfg() -> BoundsConfig {
        BoundsConfig::default()
    }

    fn near(x: &ErrReal, want: f64, rel: f64) {
        let got = x.to_f64();
        assert!(((got - want) / want).abs() < rel, "{got} vs {want}");
    }

    #[test]
    fn stirling_values() {
        near(&stirling_s(&int(1, P)).unwrap(), 0.922137, 1e-6);
        let s10 = stirling_s(&int(10, P)).unwrap();
        near(&s10, 3598695.6187, 1e-10);
        let ratio = ErrReal::from_i64(3628800, P).div(&s10).unwrap();
        let cap = ErrReal::from_ratio(1, 120, P).unwrap().exp().unwrap();
        assert_eq!(ErrReal::one(P).certify_le(&ratio), Certainty::True);
        assert_eq!(ratio.certify_le(&cap), Certainty::True);
        assert!(stirling_s(&int(0, P)).is_err());
    }

    #[test]
    fn g_alpha_exact_cases() {
        let g = g_alpha(&int(1, P), &int(0, P)).unwrap();
        assert!(g.is_exact());
        assert_eq!(g.to_f64(), 4.0);
        let g = g_alpha(&int(4, P), &int(0, P)).unwrap();
        near(&g, 128.0, 1e-40);
        let g = g_alpha(&int(2, P), &alpha_low(P).unwrap()).unwrap();
        near(&g, 18.05407, 1e-6);
    }

    #[test]
    fn alpha_constants() {
        near(&alpha_low(P).unwrap(), 0.42425, 1e-4);
        near(&alpha_high(P).unwrap(), 0.74618, 1e-4);
        near(&pow4(&alpha_low(P).unwrap()).unwrap(), 1.8006, 1e-4);
        near(&pow4(&alpha_high(P).unwrap()).unwrap(), 2.8135, 1e-4);
    }

    #[test]
    fn grid_parsing() {
        let g = parse_grid("1:0.25:2").unwrap();
        let s: Vec<String> = g.iter().map(|r| r.to_string()).collect();
        assert_eq!(s, ["1", "1.25", "1.5", "1.75", "2"]);
        assert_eq!(parse_grid("1:0.25:100").unwrap().len(), 397);
        assert_eq!(
            parse_grid("1/2,3").unwrap(),
            vec![Rational::new(1, 2).unwrap(), Rational::integer(3)]
        );
        assert!(parse_grid("1:0:3").is_err());
        assert!(parse_grid("a").is_err());
        assert_eq!(Rational::new(1, 3).unwrap().to_string(), "1/3");
        assert_eq!(Rational::new(-1, 20).unwrap().to_string(), "-0.05");
    }

    #[test]
    fn stirling_sandwich_small() {
        assert!(check_stirling_sandwich(0, &cfg())
            .unwrap()
            .entries
            .is_empty());
        let r = check_stirling_sandwich(20, &cfg()).unwrap();
        assert!(r.passed());
        assert_eq!(r.certified, 40);
    }

    #[test]
    fn fn_bounds_n1_is_tight() {
        let r = check_fn_bounds(1, &cfg()).unwrap();
        assert!(r.passed());
        let upper = r
            .entries
            .iter()
            .find(|e| e.inequality == "fn.upper")
            .unwrap();
        let m = upper.margin.as_ref().unwrap();
        assert!(m.is_exact() && m.mid().is_zero());
        assert_eq!(r.entries.len(), 3);
    }

    #[test]
    fn lemma_ga_domain() {
        let grid = [Rational::integer(1)];
        let e = check_lemma_ga(&grid, Alpha::Value(Rational::integer(1)), &cfg()).unwrap_err();
        assert!(matches!(e, BoundsError::Domain(_)));
        let r = check_lemma_ga(&[Rational::integer(2)], Alpha::Low, &cfg()).unwrap();
        assert!(r.passed());
        let r = check_lemma_ga(&[Rational::integer(4)], Alpha::High, &cfg()).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn lemma_gas_identity() {
        for (x, beta) in [("1", "2"), ("3", "5/2"), ("1/2", "1")] {
            let r = check_lemma_gas(&[x.parse().unwrap()], beta.parse().unwrap(), &cfg()).unwrap();
            assert!(r.passed(), "x={x} beta={beta}");
        }
    }

    #[test]
    fn estimate_first_rows() {
        let r = estimate_power_of_two(2, &cfg()).unwrap();
        assert_eq!(r.rows.len(), 2);
        assert!((r.rows[0].ln_ratio.exp() - 0.961058).abs() < 1e-6);
        assert!((r.rows[1].ln_ratio.exp() - 0.903380).abs() < 1e-6);
        assert!(estimate_power_of_two(0, &cfg()).unwrap().rows.is_empty());
        assert!(estimate_power_of_two(11, &cfg()).is_err());
    }
}
