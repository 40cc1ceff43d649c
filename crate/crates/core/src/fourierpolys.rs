//! Polynomials whose Fourier coefficients are `(-1)^n / n^s`, and the closed
//! forms of the alternating cosine/sine Dirichlet series they yield.
//!
//! Everything is kept in the normalized variable `t = x/π`:
//!
//! * `C_m(t) = c_m(πt) / π^{2m+2}` with `F_n^c(c_m) = (-1)^n / n^{2m+2}`,
//! * `S_m(t) = s_m(πt) / π^{2m+1}` with `F_n^s(s_m) = (-1)^n / n^{2m+1}`,
//!
//! so every coefficient and every value at a rational `t` is rational.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cyclofield::{superscript, AlgebraicPiMultiple};
use crate::error::{Error, Result};
use crate::numtheory::{bernoulli, binomial, factorial, pow2, rat_int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolyKind {
    /// Cosine family `C_m`, degree `2m+2`.
    C,
    /// Sine family `S_m`, degree `2m+1`.
    S,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FourierKind {
    Sin,
    Cos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedPolynomial {
    kind: PolyKind,
    index: u32,
    /// Coefficients of `t^0, t^1, …`.
    coeffs: Vec<Rational>,
}

impl NormalizedPolynomial {
    pub fn kind(&self) -> PolyKind {
        self.kind
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The power of π divided out: `2m+2` for `C_m`, `2m+1` for `S_m`.
    pub fn pi_normalization(&self) -> u32 {
        match self.kind {
            PolyKind::C => 2 * self.index + 2,
            PolyKind::S => 2 * self.index + 1,
        }
    }

    /// Exact `∫_{-1}^{1} P(t) dt`.
    pub fn integrate_symmetric(&self) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(d, _)| d % 2 == 0)
            .map(|(d, c)| c * Rational::new(BigInt::from(2), BigInt::from(d + 1)))
            .sum()
    }
}

/// `(2^{2j-1} - 1) B_{2j}`, the weight shared by both families.
fn weight(j: u32) -> Rational {
    (pow2(2 * j as i64 - 1) - Rational::one()) * bernoulli(2 * j)
}

/// Coefficients of `C_m(t) = c_m(πt)/π^{2m+2}`.
pub fn c_poly(m: u32) -> NormalizedPolynomial {
    let mut coeffs = vec![Rational::zero(); 2 * m as usize + 3];
    let lead = Rational::new(if m.is_multiple_of(2) { -BigInt::one() } else { BigInt::one() }, factorial(2 * m + 2));
    for j in 0..=m {
        let c = Rational::from_integer(binomial(2 * m as u64 + 2, 2 * j as u64)) * weight(j);
        coeffs[(2 * (m - j) + 2) as usize] = &lead * c;
    }
    NormalizedPolynomial { kind: PolyKind::C, index: m, coeffs }
}

/// Coefficients of `S_m(t) = s_m(πt)/π^{2m+1}`.
pub fn s_poly(m: u32) -> NormalizedPolynomial {
    let mut coeffs = vec![Rational::zero(); 2 * m as usize + 2];
    let lead = Rational::new(if m.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() }, factorial(2 * m + 1));
    for j in 0..=m {
        let c = Rational::from_integer(binomial(2 * m as u64 + 1, 2 * j as u64)) * weight(j);
        coeffs[(2 * (m - j) + 1) as usize] = &lead * c;
    }
    NormalizedPolynomial { kind: PolyKind::S, index: m, coeffs }
}

/// Exact Horner evaluation.
pub fn eval_normalized(p: &NormalizedPolynomial, t: &Rational) -> Rational {
    p.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
}

/// A finite rational combination of powers of π, keyed by exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PiPolynomial {
    terms: BTreeMap<u32, Rational>,
}

impl PiPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coefficient(&self, exponent: u32) -> Rational {
        self.terms.get(&exponent).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exponent: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    /// Nonzero terms, lowest exponent first.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn scaled_shifted(&self, c: &Rational, shift: u32) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(e + shift, v * c);
        }
        out
    }

    fn add(&mut self, other: &Self) {
        for (e, v) in &other.terms {
            self.add_term(*e, v.clone());
        }
    }
}

impl fmt::Display for PiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let sep = match (i, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let a = c.abs();
            match e {
                0 => write!(f, "{sep}{a}")?,
                1 => write!(f, "{sep}{a}·π")?,
                _ => write!(f, "{sep}{a}·π{}", superscript(*e))?,
            }
        }
        Ok(())
    }
}

/// `(1/π) ∫_{-π}^{π} x^power · trig(nx) dx` as an exact polynomial in π.
///
/// Integration by parts twice gives, with `b_m` for `x^{2m+1} sin` and
/// `a_m` for `x^{2m} cos`,
///
/// ```text
/// b_m = 2(-1)^{n+1} π^{2m} / n - (2m+1)(2m)/n² · b_{m-1},   b_0 = 2(-1)^{n+1}/n
/// a_m = (-1)^n 4m π^{2m-2} / n² - 2m(2m-1)/n² · a_{m-1},    a_0 = 0
/// ```
pub fn monomial_fourier(kind: FourierKind, power: u32, n: u32) -> Result<PiPolynomial> {
    if n == 0 {
        return Err(Error::OutOfRange("monomial transform needs n >= 1".into()));
    }
    let sign_n = if n.is_multiple_of(2) { 1 } else { -1 };
    let n2 = rat_int(n as i64 * n as i64);
    match kind {
        FourierKind::Sin => {
            if power.is_multiple_of(2) {
                return Err(Error::Parity(format!("sine transform of even power x^{power}")));
            }
            let top = (power - 1) / 2;
            let mut b = PiPolynomial::zero();
            b.add_term(0, Rational::new(BigInt::from(-2 * sign_n), BigInt::from(n)));
            for m in 1..=top {
                let factor = -rat_int(((2 * m + 1) * (2 * m)) as i64) / &n2;
                let mut next = b.scaled_shifted(&factor, 0);
                next.add_term(2 * m, Rational::new(BigInt::from(-2 * sign_n), BigInt::from(n)));
                b = next;
            }
            Ok(b)
        }
        FourierKind::Cos => {
            if power % 2 == 1 {
                return Err(Error::Parity(format!("cosine transform of odd power x^{power}")));
            }
            let top = power / 2;
            let mut a = PiPolynomial::zero();
            for m in 1..=top {
                let factor = -rat_int(((2 * m) * (2 * m - 1)) as i64) / &n2;
                let mut next = a.scaled_shifted(&factor, 0);
                next.add_term(2 * m - 2, rat_int(sign_n * 4 * m as i64) / &n2);
                a = next;
            }
            Ok(a)
        }
    }
}

/// Exact n-th sine (for `S_m`) or cosine (for `C_m`) Fourier coefficient of
/// the denormalized polynomial, assembled from monomial transforms.
///
/// All positive powers of π must cancel; the surviving constant is returned.
pub fn exact_fourier_coefficient(p: &NormalizedPolynomial, n: u32) -> Result<Rational> {
    let kind = match p.kind {
        PolyKind::C => FourierKind::Cos,
        PolyKind::S => FourierKind::Sin,
    };
    let norm = p.pi_normalization();
    let mut total = PiPolynomial::zero();
    for (d, c) in p.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // Denormalized term: c π^{norm-d} x^d.
        let part = monomial_fourier(kind, d as u32, n)?;
        total.add(&part.scaled_shifted(c, norm - d as u32));
    }
    if let Some((e, _)) = total.terms().find(|(e, _)| *e != 0) {
        return Err(Error::NonCancellation { exponent: e });
    }
    Ok(total.coefficient(0))
}

/// `F_0^c(c_m) = π^{2m+2} (-1)^m B_{2m+2} 2(2^{2m+1}-1)/(2m+2)!`.
pub fn mean_value_c(m: u32) -> AlgebraicPiMultiple {
    AlgebraicPiMultiple::rational(mean_value_c_coefficient(m), 2 * m + 2)
}

pub(crate) fn mean_value_c_coefficient(m: u32) -> Rational {
    let c = bernoulli(2 * m + 2) * rat_int(2) * (pow2(2 * m as i64 + 1) - Rational::one())
        / Rational::from_integer(factorial(2 * m + 2));
    if m.is_multiple_of(2) {
        c
    } else {
        -c
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DirichletKind {
    /// `DC(s, x) = Σ_{j≥1} (-1)^j cos(jx) / j^s`
    DC,
    /// `DS(s, x) = Σ_{j≥1} (-1)^j sin(jx) / j^s`
    DS,
}

/// Closed form of `DC(order, πt)` (even order ≥ 2) or `DS(order, πt)`
/// (odd order ≥ 3) for `|t| ≤ 1`.
pub fn dirichlet_closed_form(kind: DirichletKind, order: u32, t: &Rational) -> Result<AlgebraicPiMultiple> {
    if t.abs() > Rational::one() {
        return Err(Error::OutOfRange(format!("|t| = {} exceeds 1", t.abs())));
    }
    match kind {
        DirichletKind::DC if order >= 2 && order.is_multiple_of(2) => {
            let m = (order - 2) / 2;
            let v = eval_normalized(&c_poly(m), t) - mean_value_c_coefficient(m) / rat_int(2);
            Ok(AlgebraicPiMultiple::rational(v, order))
        }
        DirichletKind::DS if order >= 3 && order % 2 == 1 => {
            let m = (order - 1) / 2;
            Ok(AlgebraicPiMultiple::rational(eval_normalized(&s_poly(m), t), order))
        }
        _ => Err(Error::UnsupportedOrder { order }),
    }
}

impl fmt::Display for NormalizedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Pull out the common denominator: (Σ a_d t^d)/D with integer a_d.
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let mut first = true;
        let mut body = String::new();
        let mut terms = 0;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            terms += 1;
            let a = (c * Rational::from_integer(den.clone())).to_integer();
            let sep = match (first, a.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            let a = a.abs();
            let var = match d {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t{}", superscript(d as u32)),
            };
            let lead = if a.is_one() && d > 0 { String::new() } else { a.to_string() };
            body.push_str(&format!("{sep}{lead}{var}"));
        }
        if terms == 0 {
            return f.write_str("0");
        }
        if den.is_one() {
            f.write_str(&body)
        } else if terms == 1 {
            write!(f, "{body}/{den}")
        } else {
            write!(f, "({body})/{den}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{rat, zeta_even_coefficient};

    #[test]
    fn low_order_polynomials() {
        let c0 = c_poly(0);
        assert_eq!(c0.coeffs(), &[rat(0, 1), rat(0, 1), rat(1, 4)]);
        assert_eq!(c0.to_string(), "t²/4");
        let s0 = s_poly(0);
        assert_eq!(s0.coeffs(), &[rat(0, 1), rat(-1, 2)]);
        assert_eq!(s0.to_string(), "-t/2");
        let s1 = s_poly(1);
        assert_eq!(s1.coeffs(), &[rat(0, 1), rat(-1, 12), rat(0, 1), rat(1, 12)]);
        assert_eq!(s1.to_string(), "(t³ - t)/12");
        // Σ(-1)^n cos(nx)/n⁴ = x²π²/24 - x⁴/48 - 7π⁴/720
        assert_eq!(c_poly(1).coeffs(), &[rat(0, 1), rat(0, 1), rat(1, 24), rat(0, 1), rat(-1, 48)]);
    }

    #[test]
    fn shape_invariants() {
        for m in 0..=20 {
            let c = c_poly(m);
            assert_eq!(c.degree(), 2 * m as usize + 2);
            assert!(c.coeffs()[0].is_zero() && c.coeffs()[1].is_zero());
            assert!(c.coeffs().iter().skip(1).step_by(2).all(Zero::is_zero));
            let s = s_poly(m);
            assert_eq!(s.degree(), 2 * m as usize + 1);
            assert!(s.coeffs().iter().step_by(2).all(Zero::is_zero));
            assert!(!c.coeffs().last().unwrap().is_zero());
            assert!(!s.coeffs().last().unwrap().is_zero());
        }
    }

    #[test]
    fn evaluations() {
        assert_eq!(eval_normalized(&s_poly(0), &rat(1, 2)), rat(-1, 4));
        assert_eq!(eval_normalized(&s_poly(1), &rat(1, 2)), rat(-1, 32));
        assert_eq!(eval_normalized(&c_poly(0), &rat(1, 1)), rat(1, 4));
    }

    #[test]
    fn monomial_transforms() {
        for n in 1..6 {
            let b0 = monomial_fourier(FourierKind::Sin, 1, n).unwrap();
            let expected = if n % 2 == 1 { rat(2, n as i64) } else { rat(-2, n as i64) };
            assert_eq!(b0.coefficient(0), expected);
            assert!(monomial_fourier(FourierKind::Cos, 0, n).unwrap().is_zero());
        }
        let b1 = monomial_fourier(FourierKind::Sin, 3, 1).unwrap();
        assert_eq!(b1.coefficient(2), rat(2, 1));
        assert_eq!(b1.coefficient(0), rat(-12, 1));
        assert_eq!(b1.to_string(), "2·π² - 12");
        // x² cosine coefficients: 4(-1)^n / n²
        let a1 = monomial_fourier(FourierKind::Cos, 2, 3).unwrap();
        assert_eq!(a1.coefficient(0), rat(-4, 9));
        assert!(matches!(monomial_fourier(FourierKind::Sin, 2, 1), Err(Error::Parity(_))));
        assert!(matches!(monomial_fourier(FourierKind::Cos, 3, 1), Err(Error::Parity(_))));
    }

    /// Iterated forms of the recursions:
    /// `F_n^s(x^{2m+1}) = (-1)^{n+1} 2(2m+1)!/n^{2m+1} Σ_k (-1)^k π^{2(m-k)} n^{2(m-k)}/(2m+1-2k)!`
    /// `F_n^c(x^{2m}) = (-1)^n 2(2m)!/n^{2m} Σ_{k<m} (-1)^k π^{2(m-1-k)} n^{2(m-1-k)}/(2m-1-2k)!`
    fn iterated(kind: FourierKind, m: u32, n: u32) -> PiPolynomial {
        let mut out = PiPolynomial::zero();
        let nn = n as i64;
        let (deg, top, sign) = match kind {
            FourierKind::Sin => (2 * m + 1, m + 1, if n.is_multiple_of(2) { -1 } else { 1 }),
            FourierKind::Cos => (2 * m, m, if n.is_multiple_of(2) { 1 } else { -1 }),
        };
        for k in 0..top {
            let e = match kind {
                FourierKind::Sin => 2 * (m - k),
                FourierKind::Cos => 2 * (m - 1 - k),
            };
            let c = Rational::from_integer(factorial(deg) * 2 * sign * if k % 2 == 0 { 1 } else { -1 })
                * crate::numtheory::pow_int(nn, e as i64 - deg as i64)
                / Rational::from_integer(factorial(e + 1));
            out.add_term(e, c);
        }
        out
    }

    #[test]
    fn recursions_match_iterated_forms() {
        for m in 0..=8 {
            for n in 1..=12 {
                assert_eq!(monomial_fourier(FourierKind::Sin, 2 * m + 1, n).unwrap(), iterated(FourierKind::Sin, m, n));
                assert_eq!(monomial_fourier(FourierKind::Cos, 2 * m, n).unwrap(), iterated(FourierKind::Cos, m, n));
            }
        }
        // x⁴ against cos(x): -8π² + 48
        let a2 = monomial_fourier(FourierKind::Cos, 4, 1).unwrap();
        assert_eq!((a2.coefficient(2), a2.coefficient(0)), (rat(-8, 1), rat(48, 1)));
    }

    #[test]
    fn fourier_coefficients_exact() {
        for m in 0..=8u32 {
            for n in 1..=12u32 {
                let sign = if n % 2 == 0 { 1 } else { -1 };
                let s = exact_fourier_coefficient(&s_poly(m), n).unwrap();
                assert_eq!(s, rat(sign, 1) * crate::numtheory::pow_int(n as i64, -(2 * m as i64 + 1)));
                let c = exact_fourier_coefficient(&c_poly(m), n).unwrap();
                assert_eq!(c, rat(sign, 1) * crate::numtheory::pow_int(n as i64, -(2 * m as i64 + 2)));
            }
        }
    }

    #[test]
    fn exact_coefficients_small() {
        for n in 1..=12u32 {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(exact_fourier_coefficient(&s_poly(0), n).unwrap(), rat(sign, n as i64));
        }
    }

    #[test]
    fn non_cancellation_is_reported() {
        let mut bad = s_poly(2);
        bad.coeffs[1] += rat(1, 1000);
        assert!(matches!(exact_fourier_coefficient(&bad, 3), Err(Error::NonCancellation { exponent: 4 })));
    }

    #[test]
    fn mean_values() {
        assert_eq!(mean_value_c(0).as_rational(), Some(rat(1, 6)));
        assert_eq!(mean_value_c(1).as_rational(), Some(rat(7, 360)));
        for m in 0..=10 {
            let two_eta = zeta_even_coefficient(m + 1) * rat(2, 1) * (Rational::one() - pow2(-(2 * m as i64) - 1));
            assert_eq!(mean_value_c_coefficient(m), two_eta);
            // Third route: integrate C_m exactly over [-1, 1].
            assert_eq!(c_poly(m).integrate_symmetric(), two_eta);
        }
    }

    #[test]
    fn dirichlet_examples() {
        let dc = dirichlet_closed_form(DirichletKind::DC, 2, &rat(0, 1)).unwrap();
        assert_eq!(dc.as_rational(), Some(rat(-1, 12)));
        assert_eq!(dc.pi_exponent(), 2);
        let ds = dirichlet_closed_form(DirichletKind::DS, 3, &rat(1, 2)).unwrap();
        assert_eq!(ds.as_rational(), Some(rat(-1, 32)));
        let ds0 = dirichlet_closed_form(DirichletKind::DS, 3, &rat(0, 1)).unwrap();
        assert!(ds0.is_zero());
        assert_eq!(dirichlet_closed_form(DirichletKind::DC, 3, &rat(0, 1)), Err(Error::UnsupportedOrder { order: 3 }));
        assert_eq!(dirichlet_closed_form(DirichletKind::DS, 1, &rat(0, 1)), Err(Error::UnsupportedOrder { order: 1 }));
        assert!(dirichlet_closed_form(DirichletKind::DS, 3, &rat(3, 2)).is_err());
    }
}
