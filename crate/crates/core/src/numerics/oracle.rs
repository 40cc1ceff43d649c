//! Independent numerical evaluation of the lattice sums and Hurwitz zeta
//! values. Nothing here touches the exact solver: Bernoulli numbers for the
//! Euler–Maclaurin tail come from their own recurrence, and the alternating
//! Hurwitz zeta uses Cohen–Villegas–Zagier acceleration instead of the
//! progression splitting used by [`numeric_eval`].

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::real::Real;
use crate::numtheory::Rational;
use crate::sumsolver::{SumKind, SumQuery};

/// Working precision budget for an oracle evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    working_bits: u32,
    target_bits: u32,
    margin_bits: u32,
}

impl PrecisionContext {
    pub const MIN_MARGIN: u32 = 16;

    /// Aim for an absolute error below `2^-target`, working at `target + margin` bits.
    pub fn new(target_bits: u32, margin_bits: u32) -> Self {
        let margin_bits = margin_bits.max(Self::MIN_MARGIN);
        PrecisionContext { working_bits: target_bits + margin_bits, target_bits, margin_bits }
    }

    /// Context whose working precision is `working_bits` with a 32-bit margin.
    pub fn with_working_bits(working_bits: u32) -> Self {
        let margin = 32.min(working_bits / 2).max(Self::MIN_MARGIN);
        Self::new(working_bits.saturating_sub(margin).max(1), margin)
    }

    pub fn working_bits(&self) -> u32 {
        self.working_bits
    }

    pub fn target_bits(&self) -> u32 {
        self.target_bits
    }

    pub fn margin_bits(&self) -> u32 {
        self.margin_bits
    }
}

/// A value together with a rigorous bound on its absolute error.
#[derive(Clone, Debug)]
pub struct Estimate {
    pub value: Real,
    pub error_bound: Real,
}

impl Estimate {
    fn combine(terms: &[(i64, Estimate)]) -> Estimate {
        let bits = terms[0].1.value.bits();
        let mut value = Real::zero(bits);
        let mut err = Real::zero(bits);
        for (c, e) in terms {
            value = &value + &e.value.mul_int(*c);
            err = &err + &e.error_bound.mul_int(c.abs());
        }
        Estimate { value, error_bound: err }
    }
}

static ORACLE_BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// `B_{2r}` from `Σ_{j≤m} C(m+1, j) B_j = 0`; separate from the tableau in `numtheory`.
fn oracle_bernoulli_even(r: usize) -> Rational {
    let idx = 2 * r;
    let mut b = ORACLE_BERNOULLI.lock().expect("oracle bernoulli poisoned");
    if b.is_empty() {
        b.push(Rational::one());
    }
    while b.len() <= idx {
        let m = b.len();
        let mut acc = Rational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * bj;
            binom = binom * (m + 1 - j) / (j + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b[idx].clone()
}

fn default_cutoff(n: u32, ctx: &PrecisionContext) -> u64 {
    (ctx.working_bits() as u64 / 3 + n as u64).max(24)
}

/// `Σ_{j≥0} 1/(jk+l)^n`: `cutoff` direct terms plus an Euler–Maclaurin tail.
pub fn progression_sum(n: u32, k: u64, l: u64, ctx: &PrecisionContext, cutoff: Option<u64>) -> Estimate {
    assert!(n >= 2 && k >= 1 && l >= 1, "progression sum needs n >= 2 and positive k, l");
    let w = ctx.working_bits();
    let big_j = cutoff.unwrap_or_else(|| default_cutoff(n, ctx));
    let one = BigInt::one();

    let mut value = Real::zero(w);
    for j in 0..big_j {
        let d = num_traits::pow(BigInt::from(k * j + l), n as usize);
        value = &value + &Real::from_ratio(&one, &d, w);
    }

    let x = BigInt::from(k * big_j + l);
    let kb = BigInt::from(k);
    let xn = num_traits::pow(x.clone(), n as usize);
    // ∫_J^∞ (kt+l)^{-n} dt + f(J)/2
    value = &value + &Real::from_ratio(&x, &(&xn * &kb * (n - 1)), w);
    value = &value + &Real::from_ratio(&one, &(&xn * 2), w);
    let mut ops: u64 = big_j + 2;

    // Correction terms B_{2r}/(2r)! (n)_{2r-1} k^{2r-1} X^{-n-2r+1}.
    let tiny = Real::pow2_neg(w + 4, w + 8);
    let mut rising = BigInt::from(n); // (n)_{2r-1}
    let mut fact = BigInt::from(2); // (2r)!
    let mut kpow = kb.clone(); // k^{2r-1}
    let mut xpow = &xn * &x; // X^{n+2r-1}
    let x2 = &x * &x;
    let mut prev_mag: Option<Real> = None;
    let mut r = 1usize;
    let bound = loop {
        let b = oracle_bernoulli_even(r);
        let num = b.numer() * &rising * &kpow;
        let den = b.denom() * &fact * &xpow;
        let term = Real::from_ratio(&num, &den, w + 8);
        let mag = term.abs();
        if mag < tiny {
            // Completely monotone summand: the remainder is bounded by the
            // first omitted correction term.
            break mag.mul_int(2).with_bits(w) + Real::pow2_neg(w, w);
        }
        if let Some(p) = &prev_mag {
            assert!(mag < *p, "Euler–Maclaurin terms stopped decreasing; raise the cutoff");
        }
        value = &value + &term.with_bits(w);
        ops += 1;
        prev_mag = Some(mag);
        let a = 2 * r as u64;
        rising = rising * (n as u64 + a - 1) * (n as u64 + a);
        fact = fact * (a + 1) * (a + 2);
        kpow = kpow * k * k;
        xpow = &xpow * &x2;
        r += 1;
    };
    let rounding = Real::pow2_neg(w, w).mul_int(ops + 1);
    Estimate { value, error_bound: &bound + &rounding }
}

/// Direct evaluation of `S(n,k,l)` or `Ŝ(n,k,l)` from the defining two-sided sum.
///
/// The `j ≥ 0` and `j < 0` halves are one-sided progression sums; for the
/// alternating kind each half splits again by the parity of `j`.
pub fn numeric_eval_estimate(q: &SumQuery, ctx: &PrecisionContext, cutoff: Option<u64>) -> Estimate {
    let (n, k, l) = (q.n(), q.k(), q.l());
    let sign_n: i64 = if n % 2 == 0 { 1 } else { -1 };
    match q.kind() {
        SumKind::S => Estimate::combine(&[
            (1, progression_sum(n, k, l, ctx, cutoff)),
            (sign_n, progression_sum(n, k, k - l, ctx, cutoff)),
        ]),
        SumKind::Shat => Estimate::combine(&[
            (1, progression_sum(n, 2 * k, l, ctx, cutoff)),
            (-1, progression_sum(n, 2 * k, k + l, ctx, cutoff)),
            (-sign_n, progression_sum(n, 2 * k, k - l, ctx, cutoff)),
            (sign_n, progression_sum(n, 2 * k, 2 * k - l, ctx, cutoff)),
        ]),
    }
}

/// Value of the lattice sum with error below `2^-target`.
pub fn numeric_eval(q: &SumQuery, ctx: &PrecisionContext) -> Real {
    numeric_eval_estimate(q, ctx, None).value
}

fn check_unit_interval(x: &Rational) {
    assert!(x.is_positive() && *x <= Rational::one(), "Hurwitz argument must lie in (0, 1]");
}

/// `ζ(n, x) = Σ_{j≥0} (j+x)^{-n}` for rational `x ∈ (0, 1]`.
pub fn hurwitz_direct(n: u32, x: &Rational, ctx: &PrecisionContext) -> Real {
    check_unit_interval(x);
    let p: u64 = x.numer().try_into().expect("small numerator");
    let q: u64 = x.denom().try_into().expect("small denominator");
    let s = progression_sum(n, q, p, ctx, None);
    s.value.mul_int(num_traits::pow(BigInt::from(q), n as usize))
}

/// `ζ̂(n, x) = Σ_{j≥0} (-1)^j (j+x)^{-n}` by Cohen–Villegas–Zagier acceleration.
pub fn alternating_hurwitz(n: u32, x: &Rational, ctx: &PrecisionContext) -> Real {
    check_unit_interval(x);
    let w = ctx.working_bits();
    // Error ≤ 2 a_0 / 5.828^m; a_0 = x^{-n} ≤ q^n.
    let a0_bits = (x.denom().bits() as u32) * n;
    let m = ((w + a0_bits + 4) as f64 / 5.828f64.log2()).ceil() as i64 + 1;
    // d = ((3+√8)^m + (3-√8)^m)/2 = T_m(3), an integer.
    let (mut t0, mut t1) = (BigInt::one(), BigInt::from(3));
    for _ in 1..m {
        let t2 = &t1 * 6 - &t0;
        t0 = std::mem::replace(&mut t1, t2);
    }
    let d = t1;
    let mut b = Rational::from_integer(BigInt::from(-1));
    let mut c = Rational::from_integer(-d.clone());
    let (p, q) = (x.numer().clone(), x.denom().clone());
    let qn = num_traits::pow(q.clone(), n as usize);
    let mut s = Real::zero(w);
    for k in 0..m {
        c = &b - &c;
        // a_k = q^n / (kq + p)^n
        let den = num_traits::pow(&q * k + &p, n as usize);
        s = &s + &Real::from_ratio(&(c.numer() * &qn), &(c.denom() * den * &d), w);
        let num = Rational::from_integer(BigInt::from((k + m) * (k - m) * 2));
        let dd = Rational::from_integer(BigInt::from((2 * k + 1) * (k + 1)));
        b = b * num / dd;
    }
    s
}

/// Residual of the multiplication theorem, for both the plain and the
/// alternating Hurwitz zeta; returns the larger magnitude.
pub fn multiplication_theorem_check(n: u32, x: &Rational, ctx: &PrecisionContext) -> Real {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let lo = hurwitz_direct(n, &(x * &half), ctx);
    let hi = hurwitz_direct(n, &((x + Rational::one()) * &half), ctx);
    let scale = BigInt::one() << n;
    let plain = &hurwitz_direct(n, x, ctx) - &(&lo + &hi).div_int(scale.clone());
    let alt = &alternating_hurwitz(n, x, ctx) - &(&lo - &hi).div_int(scale);
    plain.abs().max(alt.abs())
}

/// Residual of `k^n S(n,k,l) = ζ(n,l/k) + (-1)^n ζ(n,1-l/k)` and its
/// alternating analogue, evaluated with independent routines on each side.
pub fn hurwitz_combination_residual(q: &SumQuery, ctx: &PrecisionContext) -> Real {
    let (n, k, l) = (q.n(), q.k(), q.l());
    let x = Rational::new(BigInt::from(l), BigInt::from(k));
    let y = Rational::one() - &x;
    let lhs = numeric_eval(q, ctx).mul_int(num_traits::pow(BigInt::from(k), n as usize));
    let rhs = match q.kind() {
        SumKind::S => {
            let a = hurwitz_direct(n, &x, ctx);
            let b = hurwitz_direct(n, &y, ctx);
            if n % 2 == 0 {
                &a + &b
            } else {
                &a - &b
            }
        }
        SumKind::Shat => {
            let a = alternating_hurwitz(n, &x, ctx);
            let b = alternating_hurwitz(n, &y, ctx);
            if n % 2 == 0 {
                &a - &b
            } else {
                &a + &b
            }
        }
    };
    (&lhs - &rhs).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::rat;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(160, 32)
    }

    fn digits(r: &Real, d: usize) -> String {
        r.to_decimal_string(d)
    }

    #[test]
    fn context_invariants() {
        let c = PrecisionContext::new(100, 4);
        assert_eq!(c.margin_bits(), 16);
        assert!(c.working_bits() >= c.target_bits() + c.margin_bits());
        let d = PrecisionContext::with_working_bits(192);
        assert_eq!(d.working_bits(), 192);
        assert_eq!(d.target_bits(), 160);
    }

    #[test]
    fn sum_examples() {
        let c = ctx();
        let s = numeric_eval(&SumQuery::new(SumKind::S, 2, 4, 1).unwrap(), &c);
        assert_eq!(digits(&s, 18), "1.233700550136169827");
        let s = numeric_eval(&SumQuery::new(SumKind::S, 2, 8, 1).unwrap(), &c);
        assert_eq!(digits(&s, 10), "1.0530292875");
        let s = numeric_eval(&SumQuery::new(SumKind::Shat, 3, 4, 1).unwrap(), &c);
        assert_eq!(digits(&s, 10), "1.0277225859");
    }

    #[test]
    fn hurwitz_examples() {
        let c = ctx();
        assert_eq!(digits(&hurwitz_direct(2, &rat(1, 1), &c), 10), "1.6449340668");
        assert_eq!(digits(&hurwitz_direct(2, &rat(1, 2), &c), 10), "4.9348022005");
        assert_eq!(digits(&hurwitz_direct(4, &rat(1, 1), &c), 10), "1.0823232337");
        // ζ̂(2, 1) = η(2) = π²/12
        assert_eq!(digits(&alternating_hurwitz(2, &rat(1, 1), &c), 12), "0.822467033424");
    }

    #[test]
    fn multiplication_theorem_residuals() {
        let c = PrecisionContext::new(192, 32);
        let tol = Real::from_ratio(&BigInt::one(), &num_traits::pow(BigInt::from(10), 30), 224);
        for (n, x) in [(2, rat(1, 1)), (3, rat(1, 3)), (5, rat(2, 5))] {
            let r = multiplication_theorem_check(n, &x, &c);
            assert!(r < tol, "n={n} x={x} residual {}", r.to_sci_string());
        }
    }

    #[test]
    fn tail_bound_is_sound() {
        let c = ctx();
        let q = SumQuery::new(SumKind::S, 3, 5, 2).unwrap();
        for j in [30u64, 60] {
            let a = numeric_eval_estimate(&q, &c, Some(j));
            let b = numeric_eval_estimate(&q, &c, Some(2 * j));
            let diff = (&a.value - &b.value).abs();
            assert!(diff <= &a.error_bound + &b.error_bound);
        }
    }

    #[test]
    fn oracle_bernoulli_matches_known_values() {
        assert_eq!(oracle_bernoulli_even(1), rat(1, 6));
        assert_eq!(oracle_bernoulli_even(6), rat(-691, 2730));
    }
}
