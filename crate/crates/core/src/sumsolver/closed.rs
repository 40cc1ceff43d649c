//! Tabulated closed forms for the moduli 2, 3, 4 and 6.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{SumKind, SumQuery};
use crate::cyclofield::{AlgebraicPiMultiple, CycloElement, Trig};
use crate::fourierpolys::{eval_normalized, s_poly};
use crate::numtheory::{bernoulli, binomial, euler_number, factorial, pow2, pow_int, rat, Rational};

/// Exact value of a normalized query when `(k, l)` is one of the tabulated
/// families, otherwise `None`.
pub fn closed_form(q: &SumQuery) -> Option<AlgebraicPiMultiple> {
    let n = q.n();
    let even = n.is_multiple_of(2);
    let value = match (q.kind(), q.k(), q.l()) {
        (SumKind::S, 2, 1) => AlgebraicPiMultiple::rational(s_mod2(n), n),
        (SumKind::Shat, 2, 1) => AlgebraicPiMultiple::rational(shat_mod2(n), n),
        (SumKind::S, 4, 1) => AlgebraicPiMultiple::rational(euler_display(n), n),
        (SumKind::S, 3, 1) if even => AlgebraicPiMultiple::rational(s_mod3_even(n), n),
        (SumKind::S, 3, 1) => s3_odd(n),
        (SumKind::S, 6, 1) if even => AlgebraicPiMultiple::rational(s_mod6_even(n), n),
        _ => return None,
    };
    Some(value)
}

/// `S(n,2,1)/π^n`: `(2^{2L}-1)(-1)^{L+1} B_{2L}/(2L)!` for `n = 2L`, zero for odd `n`.
pub(crate) fn s_mod2(n: u32) -> Rational {
    if n % 2 == 1 {
        return Rational::zero();
    }
    let l = n / 2;
    let c = (pow2(n as i64) - Rational::one()) * bernoulli(n) / Rational::from_integer(factorial(n));
    if l % 2 == 1 {
        c
    } else {
        -c
    }
}

/// `Ŝ(n,2,1)/π^n`. Zero for even `n`; for odd `n = 2m+1` it is twice the
/// Dirichlet beta value, read off `DS(n, π/2) = -β(n)`.
pub(crate) fn shat_mod2(n: u32) -> Rational {
    if n.is_multiple_of(2) {
        return Rational::zero();
    }
    let m = (n - 1) / 2;
    -eval_normalized(&s_poly(m), &rat(1, 2)) * rat(2, 1)
}

/// Euler's table for `S(n,4,1)/π^n`: Bernoulli numbers for even `n`,
/// `(-1)^l E_{2l}/(2^{2l+2}(2l)!)` for `n = 2l+1`.
pub(crate) fn euler_display(n: u32) -> Rational {
    if n.is_multiple_of(2) {
        let l = n / 2;
        let c = (pow2(n as i64) - Rational::one()) * bernoulli(n) / Rational::from_integer(factorial(n) * 2);
        if l % 2 == 1 {
            c
        } else {
            -c
        }
    } else {
        let l = (n - 1) / 2;
        let e = euler_number(2 * l).expect("even index");
        let den = num_traits::pow(BigInt::from(2), 2 * l as usize + 2) * factorial(2 * l);
        let c = Rational::new(e, den);
        if l.is_multiple_of(2) {
            c
        } else {
            -c
        }
    }
}

/// `S(2L,3,1)/π^{2L} = (2/3)^{2L}(-1)^{L+1}(3^{2L}-1)B_{2L}/(2(2L)!)`.
fn s_mod3_even(n: u32) -> Rational {
    let l = n / 2;
    let c = pow_int(2, n as i64) * pow_int(3, -(n as i64)) * (pow_int(3, n as i64) - Rational::one()) * bernoulli(n)
        / Rational::from_integer(factorial(n) * 2);
    if l % 2 == 1 {
        c
    } else {
        -c
    }
}

/// `S(2L,6,1)/π^{2L} = (2^{2L}-1)(1-3^{-2L})(-1)^{L+1}B_{2L}/(2(2L)!)`.
fn s_mod6_even(n: u32) -> Rational {
    let l = n / 2;
    let c = (pow2(n as i64) - Rational::one()) * (Rational::one() - pow_int(3, -(n as i64))) * bernoulli(n)
        / Rational::from_integer(factorial(n) * 2);
    if l % 2 == 1 {
        c
    } else {
        -c
    }
}

/// `S(2m+1,3,1)` from
/// `2(2m+1)!/π^{2m+1} · S = (-1)^{m+1} (4√3/3) Σ_j C(2m+1,2j+1) B_{2(m-j)}(2^{2(m-j)-1}-1)/3^{2j+1}`.
pub fn s3_odd(n: u32) -> AlgebraicPiMultiple {
    assert!(n % 2 == 1 && n >= 3, "S(2m+1,3,1) needs m >= 1");
    let m = (n - 1) / 2;
    let mut sum = Rational::zero();
    for j in 0..=m {
        let b = bernoulli(2 * (m - j)) * (pow2(2 * (m - j) as i64 - 1) - Rational::one());
        sum += Rational::from_integer(binomial(n as u64, 2 * j as u64 + 1)) * b * pow_int(3, -(2 * j as i64 + 1));
    }
    let mut c = sum * rat(4, 3) / Rational::from_integer(factorial(n) * 2);
    if m.is_multiple_of(2) {
        c = -c;
    }
    // √3 = 2cos(π/6)
    let sqrt3 = CycloElement::trig(Trig::Cos, 1, 6).scale(&rat(2, 1));
    AlgebraicPiMultiple::new(sqrt3.scale(&c), n)
}
