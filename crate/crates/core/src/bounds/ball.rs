//! Midpoint-radius ("ball") arithmetic over arbitrary-precision dyadics.
//!
//! An [`ErrReal`] stands for every real in `[mid - rad, mid + rad]`. The
//! midpoint is a dyadic `man * 2^exp` with an arbitrary-precision mantissa,
//! rounded to the working precision after each operation; the radius is a
//! short dyadic upper bound. Every operation returns a ball that contains the
//! exact result for all inputs drawn from the argument balls: rounding errors
//! and truncated series tails are added to the radius, never dropped.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BallError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by a ball that contains zero")]
    DivisionByZero,
    #[error("argument too wide or too large for {0} at this precision")]
    LossOfPrecision(&'static str),
}

/// Exact dyadic rational `man * 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Self {
        Dyadic { man, exp }
    }

    pub fn zero() -> Self {
        Dyadic {
            man: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    fn neg(&self) -> Dyadic {
        Dyadic {
            man: -&self.man,
            exp: self.exp,
        }
    }

    /// Mantissas rescaled to the smaller exponent.
    fn aligned(&self, o: &Dyadic) -> (BigInt, BigInt, i64) {
        let e = self.exp.min(o.exp);
        (
            &self.man << (self.exp - e) as usize,
            &o.man << (o.exp - e) as usize,
            e,
        )
    }

    fn add(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (a, b, e) = self.aligned(o);
        Dyadic { man: a + b, exp: e }
    }

    fn sub(&self, o: &Dyadic) -> Dyadic {
        self.add(&o.neg())
    }

    /// Exponent `t` with `|self| < 2^t`; `i64::MIN` for zero.
    fn top(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.man.bits() as i64
        }
    }

    /// The value as an `i64` when it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_zero() {
            return Some(0);
        }
        if self.exp >= 0 {
            if self.exp >= 64 {
                return None;
            }
            return (&self.man << self.exp as usize).to_i64();
        }
        let s = (-self.exp) as usize;
        let q = &self.man >> s;
        if (&q << s) == self.man {
            q.to_i64()
        } else {
            None
        }
    }

    /// Approximate `log2 |self|`; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.man.bits();
        let shift = bits.saturating_sub(60);
        let top = (self.man.magnitude() >> shift).to_f64().expect("fits");
        top.log2() + shift as f64 + self.exp as f64
    }

    /// Nearest `f64`, saturating to infinity.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits();
        let shift = bits.saturating_sub(60);
        let top = (&self.man >> shift).to_f64().expect("fits");
        let e = self.exp + shift as i64;
        top * 2f64.powi(e.clamp(-2000, 2000) as i32)
    }

    /// Scientific notation with `digits` significant digits, truncated.
    pub fn to_sci(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let digits = digits.max(1);
        let sign = if self.man.is_negative() { "-" } else { "" };
        let mag = self.man.magnitude();
        let mut e10 = (self.log2_abs() * std::f64::consts::LOG10_2).floor() as i64;
        loop {
            // floor(|self| * 10^(digits - 1 - e10))
            let scale = digits as i64 - 1 - e10;
            let mut num = mag.clone();
            let mut den = BigUint::one();
            if scale >= 0 {
                num *= BigUint::from(10u32).pow(scale as u32);
            } else {
                den *= BigUint::from(10u32).pow((-scale) as u32);
            }
            if self.exp >= 0 {
                num <<= self.exp as usize;
            } else {
                den <<= (-self.exp) as usize;
            }
            let q = (num / den).to_string();
            if q.len() > digits {
                e10 += 1;
                continue;
            }
            if q.len() < digits {
                e10 -= 1;
                continue;
            }
            let (head, tail) = q.split_at(1);
            return if tail.is_empty() {
                format!("{sign}{head}e{e10}")
            } else {
                format!("{sign}{head}.{tail}e{e10}")
            };
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

const MAG_BITS: u32 = 32;

/// Short nonnegative dyadic `man * 2^exp` used as an upper bound for radii.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mag {
    man: u64,
    exp: i64,
}

// `add` and `mul` round up, so they are kept apart from `std::ops`.
#[allow(clippy::should_implement_trait)]
impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };

    pub fn is_zero(self) -> bool {
        self.man == 0
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Mag {
        Mag { man: 1, exp: e }
    }

    fn normalize(man: u128, exp: i64, up: bool) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        let bits = 128 - man.leading_zeros();
        if bits <= MAG_BITS {
            return Mag {
                man: man as u64,
                exp,
            };
        }
        let shift = bits - MAG_BITS;
        let mut m = man >> shift;
        let mut e = exp + shift as i64;
        if up && (m << shift) != man {
            m += 1;
            if m >> MAG_BITS != 0 {
                m >>= 1;
                e += 1;
            }
        }
        Mag {
            man: m as u64,
            exp: e,
        }
    }

    /// Upper bound of `|m| * 2^exp`.
    fn from_big_up(m: &BigUint, exp: i64) -> Mag {
        let bits = m.bits();
        if bits <= MAG_BITS as u64 {
            return Mag::normalize(m.to_u128().expect("small"), exp, true);
        }
        let shift = bits - MAG_BITS as u64;
        let top = (m >> shift).to_u128().expect("small");
        let exact = (BigUint::from(top) << shift) == *m;
        Mag::normalize(top + (!exact) as u128, exp + shift as i64, true)
    }

    /// Lower bound of `|m| * 2^exp`.
    fn from_big_down(m: &BigUint, exp: i64) -> Mag {
        let bits = m.bits();
        let shift = bits.saturating_sub(MAG_BITS as u64);
        let top = (m >> shift).to_u128().expect("small");
        Mag::normalize(top, exp + shift as i64, false)
    }

    pub fn add(self, o: Mag) -> Mag {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exp >= o.exp {
            (self, o)
        } else {
            (o, self)
        };
        let d = hi.exp - lo.exp;
        if d >= 64 {
            // lo < 2^(lo.exp + 32) <= 2^(hi.exp - 32): less than one unit of hi
            return Mag::normalize(hi.man as u128 + 1, hi.exp, true);
        }
        Mag::normalize(((hi.man as u128) << d) + lo.man as u128, lo.exp, true)
    }

    pub fn mul(self, o: Mag) -> Mag {
        if self.is_zero() || o.is_zero() {
            return Mag::ZERO;
        }
        Mag::normalize(self.man as u128 * o.man as u128, self.exp + o.exp, true)
    }

    /// Upper bound of `self / o`; `o` must be nonzero.
    fn div(self, o: Mag) -> Mag {
        debug_assert!(!o.is_zero());
        if self.is_zero() {
            return Mag::ZERO;
        }
        let q = ((self.man as u128) << 64) / o.man as u128 + 1;
        Mag::normalize(q, self.exp - o.exp - 64, true)
    }

    /// Lower bound of `self - o`, or `None` when that is not positive.
    fn sub_lower(self, o: Mag) -> Option<Mag> {
        if o.is_zero() {
            return (!self.is_zero()).then_some(self);
        }
        if self.is_zero() {
            return None;
        }
        let d = self.exp - o.exp;
        if d >= 64 {
            return (self.man > 1).then(|| Mag {
                man: self.man - 1,
                exp: self.exp,
            });
        }
        if d <= -64 {
            return None;
        }
        let e = self.exp.min(o.exp);
        let a = (self.man as u128) << (self.exp - e);
        let b = (o.man as u128) << (o.exp - e);
        (a > b).then(|| Mag::normalize(a - b, e, false))
    }

    fn mul_2exp(self, k: i64) -> Mag {
        if self.is_zero() {
            self
        } else {
            Mag {
                man: self.man,
                exp: self.exp + k,
            }
        }
    }

    /// `self < 2^e`.
    fn below_pow2(self, e: i64) -> bool {
        if self.is_zero() {
            return true;
        }
        let room = e - self.exp;
        if room >= 64 {
            return true;
        }
        room > 0 && self.man < (1u64 << room)
    }

    pub fn to_dyadic(self) -> Dyadic {
        Dyadic::new(BigInt::from(self.man), self.exp)
    }

    pub fn log2(self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            (self.man as f64).log2() + self.exp as f64
        }
    }
}

/// Result of a certified comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certainty {
    True,
    False,
    Unknown,
}

/// A real number known to lie in `[mid - rad, mid + rad]`.
#[derive(Clone, Debug)]
pub struct ErrReal {
    mid: Dyadic,
    rad: Mag,
    prec: u32,
}

impl ErrReal {
    fn rounded(mid: Dyadic, rad: Mag, prec: u32) -> ErrReal {
        let bits = mid.man.bits();
        if bits <= prec as u64 {
            return ErrReal { mid, rad, prec };
        }
        let shift = bits - prec as u64;
        let man = &mid.man >> shift;
        let exp = mid.exp + shift as i64;
        let exact = (&man << shift) == mid.man;
        let rad = if exact { rad } else { rad.add(Mag::pow2(exp)) };
        ErrReal {
            mid: Dyadic { man, exp },
            rad,
            prec,
        }
    }

    pub fn from_dyadic(mid: Dyadic, prec: u32) -> ErrReal {
        ErrReal {
            mid,
            rad: Mag::ZERO,
            prec,
        }
    }

    /// Exact integer (not rounded, whatever its size).
    pub fn from_bigint(v: BigInt, prec: u32) -> ErrReal {
        ErrReal::from_dyadic(Dyadic::new(v, 0), prec)
    }

    pub fn from_biguint(v: &BigUint, prec: u32) -> ErrReal {
        ErrReal::from_bigint(BigInt::from(v.clone()), prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> ErrReal {
        ErrReal::from_bigint(BigInt::from(v), prec)
    }

    pub fn zero(prec: u32) -> ErrReal {
        ErrReal::from_i64(0, prec)
    }

    pub fn one(prec: u32) -> ErrReal {
        ErrReal::from_i64(1, prec)
    }

    pub fn from_ratio(num: i64, den: i64, prec: u32) -> Result<ErrReal, BallError> {
        ErrReal::from_i64(num, prec).div(&ErrReal::from_i64(den, prec))
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn with_prec(&self, prec: u32) -> ErrReal {
        ErrReal::rounded(self.mid.clone(), self.rad, prec)
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn lower(&self) -> Dyadic {
        self.mid.sub(&self.rad.to_dyadic())
    }

    pub fn upper(&self) -> Dyadic {
        self.mid.add(&self.rad.to_dyadic())
    }

    /// Upper bound on `|x|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        Mag::from_big_up(self.mid.man.magnitude(), self.mid.exp).add(self.rad)
    }

    pub fn is_positive(&self) -> bool {
        self.lower() > Dyadic::zero()
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        self.lower() <= *x && *x <= self.upper()
    }

    pub fn overlaps(&self, o: &ErrReal) -> bool {
        self.lower() <= o.upper() && o.lower() <= self.upper()
    }

    /// `log2(rad / |mid|)`, the number of correct leading bits negated.
    pub fn rel_radius_log2(&self) -> f64 {
        self.rad.log2() - self.mid.log2_abs()
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// Certifies `self <= o`: `True` when every point of `self` is at most
    /// every point of `o`, `False` when every point exceeds, else `Unknown`.
    pub fn certify_le(&self, o: &ErrReal) -> Certainty {
        if self.upper() <= o.lower() {
            Certainty::True
        } else if self.lower() > o.upper() {
            Certainty::False
        } else {
            Certainty::Unknown
        }
    }

    pub fn neg(&self) -> ErrReal {
        ErrReal {
            mid: self.mid.neg(),
            rad: self.rad,
            prec: self.prec,
        }
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_2exp(&self, k: i64) -> ErrReal {
        ErrReal {
            mid: Dyadic::new(self.mid.man.clone(), self.mid.exp + k),
            rad: self.rad.mul_2exp(k),
            prec: self.prec,
        }
    }

    pub fn add(&self, o: &ErrReal) -> ErrReal {
        let prec = self.prec.max(o.prec);
        let mut rad = self.rad.add(o.rad);
        let (ta, tb) = (self.mid.top(), o.mid.top());
        let window = prec as i64 + 64;
        // an operand far below the other's precision only widens the radius
        let mid = if !self.mid.is_zero() && !o.mid.is_zero() && tb < ta - window {
            rad = rad.add(Mag::from_big_up(o.mid.man.magnitude(), o.mid.exp));
            self.mid.clone()
        } else if !self.mid.is_zero() && !o.mid.is_zero() && ta < tb - window {
            rad = rad.add(Mag::from_big_up(self.mid.man.magnitude(), self.mid.exp));
            o.mid.clone()
        } else {
            self.mid.add(&o.mid)
        };
        ErrReal::rounded(mid, rad, prec)
    }

    pub fn sub(&self, o: &ErrReal) -> ErrReal {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &ErrReal) -> ErrReal {
        let prec = self.prec.max(o.prec);
        let mid = Dyadic::new(&self.mid.man * &o.mid.man, self.mid.exp + o.mid.exp);
        let a = Mag::from_big_up(self.mid.man.magnitude(), self.mid.exp);
        let b = Mag::from_big_up(o.mid.man.magnitude(), o.mid.exp);
        let rad = a.mul(o.rad).add(b.mul(self.rad)).add(self.rad.mul(o.rad));
        ErrReal::rounded(mid, rad, prec)
    }

    pub fn div(&self, o: &ErrReal) -> Result<ErrReal, BallError> {
        let prec = self.prec.max(o.prec);
        let den_low = Mag::from_big_down(o.mid.man.magnitude(), o.mid.exp)
            .sub_lower(o.rad)
            .ok_or(BallError::DivisionByZero)?;
        let (a, b) = (&self.mid.man, &o.mid.man);
        let s = (prec as i64 + 8 + b.bits() as i64 - a.bits() as i64).max(0) as usize;
        let (q, r) = (a << s).div_rem(b);
        let exp = self.mid.exp - s as i64 - o.mid.exp;
        let mut rad = if r.is_zero() {
            Mag::ZERO
        } else {
            Mag::pow2(exp)
        };
        if !(self.rad.is_zero() && o.rad.is_zero()) {
            let q_up = Mag::from_big_up(&(q.magnitude() + 1u32), exp);
            rad = rad.add(self.rad.add(q_up.mul(o.rad)).div(den_low));
        }
        Ok(ErrReal::rounded(Dyadic::new(q, exp), rad, prec))
    }

    pub fn square(&self) -> ErrReal {
        self.mul(self)
    }

    /// `e^x`.
    pub fn exp(&self) -> Result<ErrReal, BallError> {
        let prec = self.prec;
        if self.mid.is_zero() && self.is_exact() {
            return Ok(ErrReal::one(prec));
        }
        let approx = self.mid.to_f64();
        if !approx.is_finite() || approx.abs() > 1e12 || self.rad.log2() > 8.0 {
            return Err(BallError::LossOfPrecision("exp"));
        }
        let k = (approx / std::f64::consts::LN_2).round() as i64;
        let k_bits = 64 - k.unsigned_abs().leading_zeros();
        let wp = prec + 40 + k_bits;
        let x = self.with_prec(wp);
        let t = x.sub(&ln2(wp).mul(&ErrReal::from_i64(k, wp)));
        // halve until |r| <= 1/4, plus a few extra halvings for speed
        let t_log = t.abs_upper().log2();
        let s = ((wp as f64).sqrt() / 2.0).max(t_log.ceil() + 2.0).max(0.0) as i64;
        let wp2 = wp + s as u32;
        let r = t.with_prec(wp2).mul_2exp(-s);
        let mut sum = ErrReal::one(wp2);
        let mut term = ErrReal::one(wp2);
        let mut i = 1i64;
        loop {
            term = term.mul(&r).div(&ErrReal::from_i64(i, wp2))?;
            sum = sum.add(&term);
            // remaining tail <= |term| * sum_j (|r|/(i+1))^j <= |term| since |r| <= 1/4
            if term.abs_upper().below_pow2(-(wp2 as i64) - 4) {
                break;
            }
            i += 1;
            if i > 100_000 {
                return Err(BallError::LossOfPrecision("exp"));
            }
        }
        sum.rad = sum.rad.add(term.abs_upper());
        for _ in 0..s {
            sum = sum.square();
        }
        Ok(sum.mul_2exp(k).with_prec(prec))
    }

    /// Natural logarithm; the ball must lie in `(0, inf)`.
    pub fn ln(&self) -> Result<ErrReal, BallError> {
        let prec = self.prec;
        if !self.is_positive() {
            return Err(BallError::Domain(
                "logarithm of a ball not contained in (0, inf)".into(),
            ));
        }
        let k = self.mid.log2_abs().round() as i64;
        let wp = prec + 40;
        let y = self.with_prec(wp).mul_2exp(-k);
        let one = ErrReal::one(wp);
        let z = y.sub(&one).div(&y.add(&one))?;
        let half = atanh_series(&z, wp)?;
        let mut out = half.mul_2exp(1);
        if k != 0 {
            out = out.add(&ln2(wp).mul(&ErrReal::from_i64(k, wp)));
        }
        Ok(out.with_prec(prec))
    }

    /// `self^y` for a positive base.
    pub fn pow(&self, y: &ErrReal) -> Result<ErrReal, BallError> {
        self.ln()?.mul(y).exp()
    }

    pub fn sqrt(&self) -> Result<ErrReal, BallError> {
        self.ln()?.mul_2exp(-1).exp()
    }

    /// `log2(x)`.
    pub fn lg(&self) -> Result<ErrReal, BallError> {
        self.ln()?.div(&ln2(self.prec))
    }
}

impl fmt::Display for ErrReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = if self.rad.is_zero() {
            "0".to_string()
        } else {
            self.rad.to_dyadic().to_sci(3)
        };
        write!(f, "[{} +/- {}]", self.mid.to_sci(20), r)
    }
}

/// `sum_{i>=0} z^(2i+1) / (2i+1)`, i.e. `atanh(z)`, for `|z|^2 <= 1/2`.
fn atanh_series(z: &ErrReal, wp: u32) -> Result<ErrReal, BallError> {
    odd_power_series(z, wp, false)
}

/// `atan(z)` for `|z|^2 <= 1/2`.
fn atan_series(z: &ErrReal, wp: u32) -> Result<ErrReal, BallError> {
    odd_power_series(z, wp, true)
}

fn odd_power_series(z: &ErrReal, wp: u32, alternate: bool) -> Result<ErrReal, BallError> {
    let z = z.with_prec(wp);
    let z2 = z.square();
    if !z2.abs_upper().below_pow2(-1) && !(z2.abs_upper() == Mag::pow2(-1)) {
        return Err(BallError::LossOfPrecision("series argument"));
    }
    let mut sum = ErrReal::zero(wp);
    let mut pow = z.clone();
    let mut i = 0i64;
    loop {
        let term = pow.div(&ErrReal::from_i64(2 * i + 1, wp))?;
        sum = if alternate && i % 2 == 1 {
            sum.sub(&term)
        } else {
            sum.add(&term)
        };
        pow = pow.mul(&z2);
        // tail <= |pow| / (1 - |z|^2) <= 2 |pow|
        if pow.abs_upper().below_pow2(-(wp as i64) - 4) {
            break;
        }
        i += 1;
        if i > 1_000_000 {
            return Err(BallError::LossOfPrecision("series"));
        }
    }
    sum.rad = sum.rad.add(pow.abs_upper().mul_2exp(1));
    Ok(sum)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Constant {
    Ln2,
    Pi,
}

fn cached(c: Constant, prec: u32, compute: impl FnOnce() -> ErrReal) -> ErrReal {
    static CACHE: OnceLock<Mutex<HashMap<(Constant, u32), ErrReal>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("constant cache").get(&(c, prec)) {
        return v.clone();
    }
    let v = compute();
    cache
        .lock()
        .expect("constant cache")
        .insert((c, prec), v.clone());
    v
}

/// `ln 2 = 2 atanh(1/3)`.
pub fn ln2(prec: u32) -> ErrReal {
    cached(Constant::Ln2, prec, || {
        let wp = prec + 32;
        let third = ErrReal::from_ratio(1, 3, wp).expect("nonzero");
        atanh_series(&third, wp)
            .expect("converges")
            .mul_2exp(1)
            .with_prec(prec)
    })
}

/// `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(prec: u32) -> ErrReal {
    cached(Constant::Pi, prec, || {
        let wp = prec + 32;
        let a =
            atan_series(&ErrReal::from_ratio(1, 5, wp).expect("nonzero"), wp).expect("converges");
        let b =
            atan_series(&ErrReal::from_ratio(1, 239, wp).expect("nonzero"), wp).expect("converges");
        a.mul_2exp(4).sub(&b.mul_2exp(2)).with_prec(prec)
    })
}

/// Euler's number.
pub fn e(prec: u32) -> ErrReal {
    ErrReal::one(prec).exp().expect("e^1")
}

/// Parses a decimal such as `0.195` or `-12.5` into an exact fraction
/// `(numerator, denominator)`.
pub fn parse_decimal(s: &str) -> Option<(BigInt, BigInt)> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let mut num: BigInt = digits.parse().ok()?;
    if neg {
        num = -num;
    }
    let den = BigInt::from(10u32).pow(frac.len() as u32);
    Some((num, den))
}

pub fn from_decimal(s: &str, prec: u32) -> Result<ErrReal, BallError> {
    let (num, den) =
        parse_decimal(s).ok_or_else(|| BallError::Domain(format!("`{s}` is not a decimal")))?;
    ErrReal::from_bigint(num, prec).div(&ErrReal::from_bigint(den, prec))
}
