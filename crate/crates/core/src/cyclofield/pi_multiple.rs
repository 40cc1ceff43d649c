use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::real::{pi, Real};
use crate::numtheory::Rational;

use super::element::{CycloElement, Trig};

/// `coeff · π^pi_exponent` with `coeff` a real cyclotomic number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicPiMultiple {
    pi_exponent: u32,
    coeff: CycloElement,
}

impl AlgebraicPiMultiple {
    pub fn new(coeff: CycloElement, pi_exponent: u32) -> Self {
        AlgebraicPiMultiple { pi_exponent, coeff }
    }

    pub fn rational(q: Rational, pi_exponent: u32) -> Self {
        Self::new(CycloElement::from_rational(&q, 1), pi_exponent)
    }

    pub fn zero(pi_exponent: u32) -> Self {
        Self::new(CycloElement::zero(1), pi_exponent)
    }

    pub fn pi_exponent(&self) -> u32 {
        self.pi_exponent
    }

    pub fn coeff(&self) -> &CycloElement {
        &self.coeff
    }

    pub fn conductor(&self) -> u32 {
        self.coeff.conductor()
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.coeff.as_rational()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(self.coeff.scale(q), self.pi_exponent)
    }

    pub fn mul_coeff(&self, c: &CycloElement) -> Self {
        Self::new(&self.coeff * c, self.pi_exponent)
    }

    /// Sum of two values with the same power of π (lifting conductors as needed).
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.pi_exponent != other.pi_exponent && !self.is_zero() && !other.is_zero() {
            return Err(Error::Internal(format!("adding pi^{} to pi^{}", self.pi_exponent, other.pi_exponent)));
        }
        let e = if self.is_zero() { other.pi_exponent } else { self.pi_exponent };
        Ok(Self::new(&self.coeff + &other.coeff, e))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.coeff, self.pi_exponent)
    }

    /// Decimal value to `bits` binary places.
    pub fn decimal(&self, bits: u32) -> Result<Real> {
        let pi_bits = 2 * (self.pi_exponent + 1);
        let w = bits + pi_bits + self.coeff.coefficient_bound_bits() + 16;
        let c = self.coeff.embed_decimal(w + self.coeff.coefficient_bound_bits())?;
        let c = c.with_bits(w);
        let p = pi(w + 8 * (self.pi_exponent + 1)).pow(self.pi_exponent).with_bits(w);
        Ok((&c * &p).with_bits(bits))
    }

    /// Write the coefficient as `a + b√d` with `d ∈ {1, 2, 3}` (d = 1 means
    /// rational, b = 0), when it has that form.
    pub fn quadratic_form(&self) -> Option<(Rational, Rational, u32)> {
        if let Some(q) = self.as_rational() {
            return Some((q, Rational::zero(), 1));
        }
        for (d, root) in [(2u32, sqrt_element(2)), (3, sqrt_element(3))] {
            let (x, s) = CycloElement::unify(&self.coeff, &root);
            let xv = x.coeffs();
            let sv = s.coeffs();
            let Some(i) = (1..sv.len()).find(|&i| !sv[i].is_zero()) else {
                continue;
            };
            let b = &xv[i] / &sv[i];
            let a = &xv[0] - &b * &sv[0];
            let candidate = &CycloElement::from_rational(&a, 1) + &root.scale(&b);
            if candidate == self.coeff {
                return Some((a, b, d));
            }
        }
        None
    }

    /// Human-readable radical rendering, e.g. `π²·(1+√2/2)/16`.
    pub fn radical(&self) -> Option<String> {
        let (a, b, d) = self.quadratic_form()?;
        let pi = pi_power(self.pi_exponent);
        if b.is_zero() {
            return Some(render_term(&a, "", &pi));
        }
        let root = format!("√{d}");
        if a.is_zero() {
            return Some(render_term(&b, &root, &pi));
        }
        let ratio = &b / &a;
        let inner = format!("1{}{}", if ratio.is_negative() { "-" } else { "+" }, render_term(&ratio.abs(), &root, ""));
        let sign = if a.is_negative() { "-" } else { "" };
        let p = a.numer().abs();
        let q = a.denom();
        let lead = if p.is_one() { String::new() } else { p.to_string() };
        let sep = if pi.is_empty() { "" } else { "·" };
        let tail = if q.is_one() { String::new() } else { format!("/{q}") };
        Some(format!("{sign}{lead}{pi}{sep}({inner}){tail}"))
    }
}

/// `√d` as a cyclotomic element for d in {2, 3}.
fn sqrt_element(d: u32) -> CycloElement {
    let two = Rational::from_integer(2.into());
    match d {
        2 => CycloElement::trig(Trig::Cos, 1, 4).scale(&two),
        3 => CycloElement::trig(Trig::Cos, 1, 6).scale(&two),
        _ => unreachable!("only square roots of 2 and 3 are rendered"),
    }
}

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

pub(crate) fn superscript(e: u32) -> String {
    e.to_string().chars().map(|c| SUPERSCRIPTS[c.to_digit(10).unwrap() as usize]).collect()
}

fn pi_power(e: u32) -> String {
    match e {
        0 => String::new(),
        1 => "π".to_string(),
        _ => format!("π{}", superscript(e)),
    }
}

/// `p·root·pi/q` in compact form (`3√2π³/128`, `-π²/12`).
fn render_term(c: &Rational, root: &str, pi: &str) -> String {
    if c.is_zero() {
        return "0".to_string();
    }
    let sign = if c.is_negative() { "-" } else { "" };
    let p = c.numer().abs();
    let q = c.denom();
    let body = format!("{root}{pi}");
    let lead = if p.is_one() && !body.is_empty() { String::new() } else { p.to_string() };
    let tail = if q.is_one() { String::new() } else { format!("/{q}") };
    format!("{sign}{lead}{body}{tail}")
}

impl AlgebraicPiMultiple {
    /// Coefficient-vector rendering in powers of `z = ζ_N`, always available.
    pub fn canonical(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        if self.as_rational().is_some() {
            if let Some(r) = self.radical() {
                return r;
            }
        }
        match self.pi_exponent {
            0 => self.coeff.to_string(),
            e => format!("{}·{}", pi_power(e), self.coeff),
        }
    }
}

impl fmt::Display for AlgebraicPiMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.radical() {
            Some(r) => f.write_str(&r),
            None => f.write_str(&self.canonical()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::rat;

    fn sqrt2() -> CycloElement {
        sqrt_element(2)
    }

    #[test]
    fn radical_rendering() {
        let one = CycloElement::one(8);
        let x = &one.scale(&rat(1, 16)) + &sqrt2().scale(&rat(1, 32));
        assert_eq!(AlgebraicPiMultiple::new(x, 2).radical().unwrap(), "π²·(1+√2/2)/16");
        let y = &one.scale(&rat(5, 1536)) - &sqrt2().scale(&rat(5 * 57, 1536 * 16));
        assert_eq!(AlgebraicPiMultiple::new(y, 5).radical().unwrap(), "5π⁵·(1-57√2/16)/1536");
        let z = sqrt2().scale(&rat(3, 128));
        assert_eq!(AlgebraicPiMultiple::new(z, 3).radical().unwrap(), "3√2π³/128");
        assert_eq!(AlgebraicPiMultiple::rational(rat(4, 27), 2).to_string(), "4π²/27");
        assert_eq!(AlgebraicPiMultiple::rational(rat(-1, 12), 2).to_string(), "-π²/12");
        assert_eq!(AlgebraicPiMultiple::rational(rat(2, 1), 2).to_string(), "2π²");
        assert_eq!(AlgebraicPiMultiple::zero(3).to_string(), "0");
        let s3 = sqrt_element(3).scale(&rat(4, 243));
        assert_eq!(AlgebraicPiMultiple::new(s3, 3).radical().unwrap(), "4√3π³/243");
    }

    #[test]
    fn non_quadratic_has_no_radical() {
        let c = CycloElement::trig(Trig::Cos, 1, 5);
        assert!(AlgebraicPiMultiple::new(c, 2).radical().is_none());
    }

    #[test]
    fn decimal_of_pi_multiple() {
        let x = &CycloElement::one(8).scale(&rat(1, 16)) + &sqrt2().scale(&rat(1, 32));
        let v = AlgebraicPiMultiple::new(x.clone(), 0).decimal(128).unwrap();
        assert_eq!(v.to_decimal_string(8), "0.10669417");
        let s = AlgebraicPiMultiple::new(x, 2).decimal(128).unwrap();
        assert_eq!(s.to_decimal_string(10), "1.0530292875");
    }
}
