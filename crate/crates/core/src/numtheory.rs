//! Exact integer-sequence and combinatorial primitives.
//!
//! Bernoulli numbers follow the `B_1 = +1/2` convention, which is what the
//! Akiyama–Tanigawa tableau produces. Every formula downstream consumes only
//! even indices, where both conventions agree.

use std::collections::HashMap;
use std::sync::{Mutex, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclofield::AlgebraicPiMultiple;
use crate::error::{Error, Result};

/// Exact fraction of arbitrary-precision integers, always in lowest terms.
pub type Rational = BigRational;

pub(crate) fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn rat_int<T: Into<BigInt>>(n: T) -> Rational {
    Rational::from_integer(n.into())
}

/// `2^e` for any integer exponent, as an exact rational.
pub(crate) fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// `base^e` for an integer base and exponent (negative exponents invert).
pub(crate) fn pow_int(base: i64, e: i64) -> Rational {
    let p = num_traits::pow(BigInt::from(base), e.unsigned_abs() as usize);
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

static BERNOULLI: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// Akiyama–Tanigawa tableau for `B_0..=B_max`.
fn akiyama_tanigawa(max: usize) -> Vec<Rational> {
    let mut row: Vec<Rational> = Vec::with_capacity(max + 1);
    let mut out = Vec::with_capacity(max + 1);
    for m in 0..=max {
        row.push(rat(1, m as i64 + 1));
        for j in (1..=m).rev() {
            let diff = &row[j - 1] - &row[j];
            row[j - 1] = diff * rat_int(j as i64);
        }
        out.push(row[0].clone());
    }
    out
}

/// The k-th Bernoulli number with `B_1 = +1/2`.
pub fn bernoulli(k: u32) -> Rational {
    let k = k as usize;
    if let Some(b) = BERNOULLI.read().expect("bernoulli cache poisoned").get(k) {
        return b.clone();
    }
    let mut cache = BERNOULLI.write().expect("bernoulli cache poisoned");
    if cache.len() <= k {
        // The tableau is quadratic, so grow geometrically.
        let target = (k + 1).max(2 * cache.len()).max(32);
        *cache = akiyama_tanigawa(target);
    }
    cache[k].clone()
}

static EULER: Mutex<Vec<BigInt>> = Mutex::new(Vec::new());

/// Taylor coefficients of `sech x = 1/cosh x`, scaled by `k!`.
fn sech_coefficients(max_even: usize) -> Vec<BigInt> {
    // Reciprocal of the even series cosh(x) = sum x^{2j}/(2j)!, in powers of x^2.
    let terms = max_even / 2 + 1;
    let cosh: Vec<Rational> = (0..terms).map(|j| Rational::new(BigInt::one(), factorial(2 * j as u32))).collect();
    let mut inv: Vec<Rational> = Vec::with_capacity(terms);
    inv.push(Rational::one());
    for n in 1..terms {
        let mut acc = Rational::zero();
        for j in 1..=n {
            acc += &cosh[j] * &inv[n - j];
        }
        inv.push(-acc);
    }
    inv.into_iter()
        .enumerate()
        .map(|(j, c)| {
            let scaled = c * Rational::from_integer(factorial(2 * j as u32));
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        })
        .collect()
}

/// Euler number `E_k` (Taylor coefficients of sech). Only even indices are supported.
pub fn euler_number(k: u32) -> Result<BigInt> {
    if k % 2 == 1 {
        return Err(Error::OddEulerIndex(k));
    }
    let idx = (k / 2) as usize;
    let mut cache = EULER.lock().expect("euler cache poisoned");
    if cache.len() <= idx {
        let target = (idx + 1).max(2 * cache.len()).max(16);
        *cache = sech_coefficients(2 * (target - 1));
    }
    Ok(cache[idx].clone())
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

static CYCLOTOMIC: RwLock<Option<HashMap<u32, Vec<BigInt>>>> = RwLock::new(None);

/// Coefficients (lowest degree first) of the N-th cyclotomic polynomial.
///
/// Computed by dividing `x^N - 1` by every `Φ_d` with `d | N`, `d < N`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(map) = CYCLOTOMIC.read().expect("cyclotomic cache poisoned").as_ref() {
        if let Some(p) = map.get(&n) {
            return p.clone();
        }
    }
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let divisor = cyclotomic_polynomial(d);
            poly = div_exact_monic(&poly, &divisor);
        }
    }
    CYCLOTOMIC.write().expect("cyclotomic cache poisoned").get_or_insert_with(HashMap::new).insert(n, poly.clone());
    poly
}

/// Exact division of integer polynomials by a monic divisor.
fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// Euler's totient.
pub fn totient(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// `ζ(2l) / π^{2l} = (-1)^{l+1} B_{2l} 2^{2l} / (2 (2l)!)`.
pub fn zeta_even_coefficient(l: u32) -> Rational {
    assert!(l >= 1, "zeta_even needs l >= 1");
    let b = bernoulli(2 * l);
    let c = b * pow2(2 * l as i64) / Rational::from_integer(factorial(2 * l) * 2);
    if l % 2 == 1 {
        c
    } else {
        -c
    }
}

/// `ζ(2l)` as a rational multiple of `π^{2l}`.
pub fn zeta_even(l: u32) -> AlgebraicPiMultiple {
    AlgebraicPiMultiple::rational(zeta_even_coefficient(l), 2 * l)
}

/// `η(2l)/π^{2l}` where `η(s) = ζ(s)(1 - 2^{1-s})` is the alternating zeta.
pub(crate) fn eta_even_coefficient(l: u32) -> Rational {
    zeta_even_coefficient(l) * (Rational::one() - pow2(1 - 2 * l as i64))
}
