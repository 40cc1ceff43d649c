//! Binary fixed-point reals: a big-integer mantissa scaled by `2^-bits`.
//!
//! Every primitive operation is exact except for one final truncation, so a
//! result carries at most one unit in the last place (ulp) of error per
//! operation. Callers account for ulps explicitly.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numtheory::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Real {
    mant: BigInt,
    bits: u32,
}

impl Real {
    pub fn zero(bits: u32) -> Self {
        Real { mant: BigInt::zero(), bits }
    }

    pub fn from_int<T: Into<BigInt>>(v: T, bits: u32) -> Self {
        Real { mant: v.into() << bits, bits }
    }

    /// `num / den`, truncated toward zero.
    pub fn from_ratio(num: &BigInt, den: &BigInt, bits: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Real { mant: (num << bits) / den, bits }
    }

    pub fn from_rational(q: &Rational, bits: u32) -> Self {
        Self::from_ratio(q.numer(), q.denom(), bits)
    }

    /// `2^-e` exactly (zero if it falls below the last place).
    pub fn pow2_neg(e: u32, bits: u32) -> Self {
        if e > bits {
            return Self::zero(bits);
        }
        Real { mant: BigInt::one() << (bits - e), bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    /// Re-express at another precision (truncating when precision drops).
    pub fn with_bits(&self, bits: u32) -> Self {
        let mant = match bits.cmp(&self.bits) {
            Ordering::Equal => self.mant.clone(),
            Ordering::Greater => &self.mant << (bits - self.bits),
            Ordering::Less => shr_trunc(&self.mant, self.bits - bits),
        };
        Real { mant, bits }
    }

    pub fn abs(&self) -> Self {
        Real { mant: self.mant.abs(), bits: self.bits }
    }

    pub fn mul_int<T: Into<BigInt>>(&self, v: T) -> Self {
        Real { mant: &self.mant * v.into(), bits: self.bits }
    }

    pub fn div_int<T: Into<BigInt>>(&self, v: T) -> Self {
        Real { mant: &self.mant / v.into(), bits: self.bits }
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        Real { mant: &self.mant * q.numer() / q.denom(), bits: self.bits }
    }

    pub fn div(&self, other: &Real) -> Self {
        assert_eq!(self.bits, other.bits, "precision mismatch");
        assert!(!other.mant.is_zero(), "division by zero");
        Real { mant: (&self.mant << self.bits) / &other.mant, bits: self.bits }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Real::from_int(1, self.bits);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `log2 |x|` rounded up, or `None` for zero. Good enough for sizing guard bits.
    pub fn magnitude_bits(&self) -> Option<i64> {
        if self.mant.is_zero() {
            None
        } else {
            Some(self.mant.bits() as i64 - self.bits as i64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        // Scale by the top bits only so large precisions do not overflow.
        let nb = self.mant.bits() as i64;
        let drop = (nb - 64).max(0);
        let top = shr_trunc(&self.mant, drop as u32).to_f64().unwrap_or(0.0);
        top * 2f64.powi((drop - self.bits as i64) as i32)
    }

    /// Decimal rendering with exactly `digits` digits after the point,
    /// rounded half away from zero.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let scaled = &self.mant.abs() * scale;
        let denom = BigInt::one() << self.bits;
        let (q, r) = scaled.div_rem(&denom);
        let q = if (r << 1) >= denom { q + 1 } else { q };
        let mut s = q.to_string();
        if s.len() <= digits {
            s = "0".repeat(digits + 1 - s.len()) + &s;
        }
        let split = s.len() - digits;
        let mut out = String::new();
        if self.mant.sign() == Sign::Minus && q_nonzero(&s) {
            out.push('-');
        }
        out.push_str(&s[..split]);
        if digits > 0 {
            out.push('.');
            out.push_str(&s[split..]);
        }
        out
    }

    /// Short scientific rendering (for residuals and diagnostics).
    pub fn to_sci_string(&self) -> String {
        if self.mant.is_zero() {
            return "0".to_string();
        }
        format!("{:.3e}", self.to_f64())
    }

    /// `|self| < 2^-e`.
    pub fn abs_below_pow2(&self, e: u32) -> bool {
        self.abs() < Real::pow2_neg(e, self.bits).max_nonzero()
    }

    fn max_nonzero(self) -> Self {
        if self.mant.is_zero() {
            Real { mant: BigInt::one(), bits: self.bits }
        } else {
            self
        }
    }
}

fn q_nonzero(s: &str) -> bool {
    s.bytes().any(|b| b != b'0')
}

/// Arithmetic right shift rounding toward zero.
fn shr_trunc(v: &BigInt, by: u32) -> BigInt {
    if v.is_negative() {
        -((-v) >> by)
    } else {
        v >> by
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.bits == other.bits {
            self.mant.cmp(&other.mant)
        } else {
            let b = self.bits.max(other.bits);
            self.with_bits(b).mant.cmp(&other.with_bits(b).mant)
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.bits as f64 * std::f64::consts::LOG10_2).floor() as usize;
        f.write_str(&self.to_decimal_string(digits))
    }
}

impl<'a> Add<&'a Real> for &'a Real {
    type Output = Real;
    fn add(self, rhs: &'a Real) -> Real {
        assert_eq!(self.bits, rhs.bits, "precision mismatch");
        Real { mant: &self.mant + &rhs.mant, bits: self.bits }
    }
}

impl<'a> Sub<&'a Real> for &'a Real {
    type Output = Real;
    fn sub(self, rhs: &'a Real) -> Real {
        assert_eq!(self.bits, rhs.bits, "precision mismatch");
        Real { mant: &self.mant - &rhs.mant, bits: self.bits }
    }
}

impl<'a> Mul<&'a Real> for &'a Real {
    type Output = Real;
    fn mul(self, rhs: &'a Real) -> Real {
        assert_eq!(self.bits, rhs.bits, "precision mismatch");
        Real { mant: shr_trunc(&(&self.mant * &rhs.mant), self.bits), bits: self.bits }
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { mant: -self.mant, bits: self.bits }
    }
}

impl Add for Real {
    type Output = Real;
    fn add(self, rhs: Real) -> Real {
        &self + &rhs
    }
}

impl Sub for Real {
    type Output = Real;
    fn sub(self, rhs: Real) -> Real {
        &self - &rhs
    }
}

impl Mul for Real {
    type Output = Real;
    fn mul(self, rhs: Real) -> Real {
        &self * &rhs
    }
}

const GUARD: u32 = 32;

/// `atan(1/x)` by its alternating Taylor series.
fn atan_inv(x: u64, bits: u32) -> BigInt {
    let one = BigInt::one() << bits;
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = &one / &x;
    let mut sum = power.clone();
    let mut k = 1u64;
    loop {
        power = &power / &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / (2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

static PI_CACHE: OnceLock<Mutex<HashMap<u32, Real>>> = OnceLock::new();

/// π to `bits` fractional bits (Machin's formula), error below one ulp.
pub fn pi(bits: u32) -> Real {
    let cache = PI_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("pi cache poisoned").get(&bits) {
        return v.clone();
    }
    let w = bits + GUARD;
    let mant = (atan_inv(5, w) * 16) - (atan_inv(239, w) * 4);
    let v = Real { mant, bits: w }.with_bits(bits);
    cache.lock().expect("pi cache poisoned").insert(bits, v.clone());
    v
}

/// `(cos(πp/q), sin(πp/q))` with error below one ulp each.
pub fn cos_sin_pi(p: i64, q: u64, bits: u32) -> (Real, Real) {
    assert!(q > 0);
    let q_i = q as i64;
    let g = p.gcd(&q_i);
    let (mut p, q) = (p / g, q_i / g);
    p = p.rem_euclid(2 * q);
    // Exact values where cheap; they also pin the signs of zeros.
    match (p, q) {
        (0, _) => return (Real::from_int(1, bits), Real::zero(bits)),
        (1, 1) => return (Real::from_int(-1, bits), Real::zero(bits)),
        (1, 2) => return (Real::zero(bits), Real::from_int(1, bits)),
        (3, 2) => return (Real::zero(bits), Real::from_int(-1, bits)),
        _ => {}
    }
    if p > q {
        p -= 2 * q;
    }
    let w = bits + GUARD;
    let theta = pi(w).mul_int(p).div_int(q);
    let theta2 = &theta * &theta;
    let mut cos = Real::from_int(1, w);
    let mut sin = theta.clone();
    let mut term_c = Real::from_int(1, w);
    let mut term_s = theta;
    let mut k: u64 = 1;
    loop {
        term_c = (&term_c * &theta2).div_int(-(((2 * k - 1) * (2 * k)) as i64));
        term_s = (&term_s * &theta2).div_int(-(((2 * k) * (2 * k + 1)) as i64));
        if term_c.is_zero() && term_s.is_zero() {
            break;
        }
        cos = &cos + &term_c;
        sin = &sin + &term_s;
        k += 1;
    }
    (cos.with_bits(bits), sin.with_bits(bits))
}

type RootTable = Arc<Vec<(Real, Real)>>;
static ROOT_CACHE: OnceLock<Mutex<HashMap<(u32, u32), RootTable>>> = OnceLock::new();

/// `(cos(2πj/N), sin(2πj/N))` for `j = 0..N`, cached per `(N, bits)`.
pub fn roots_of_unity(n: u32, bits: u32) -> RootTable {
    let cache = ROOT_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("root cache poisoned").get(&(n, bits)) {
        return t.clone();
    }
    let table: Vec<(Real, Real)> = (0..n).map(|j| cos_sin_pi(2 * j as i64, n as u64, bits)).collect();
    let table = Arc::new(table);
    cache.lock().expect("root cache poisoned").insert((n, bits), table.clone());
    table
}
