use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::real::{roots_of_unity, Real};
use crate::numtheory::{cyclotomic_polynomial, lcm, Rational};

/// The field `Q(ζ_N)` presented as `Q[x]/Φ_N(x)`.
#[derive(Debug)]
pub(crate) struct Field {
    conductor: u32,
    /// Monic `Φ_N`, lowest degree first.
    modulus: Vec<BigInt>,
}

impl Field {
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Reduce an integer polynomial modulo `Φ_N` (monic, so it stays integral).
    fn reduce(&self, mut poly: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree();
        for i in (d..poly.len()).rev() {
            if poly[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[i]);
            for (j, m) in self.modulus[..d].iter().enumerate() {
                if !m.is_zero() {
                    poly[i - d + j] -= &c * m;
                }
            }
        }
        poly.resize(d, BigInt::zero());
        poly
    }
}

static FIELDS: OnceLock<RwLock<HashMap<u32, Arc<Field>>>> = OnceLock::new();

pub(crate) fn field(conductor: u32) -> Arc<Field> {
    assert!(conductor >= 1, "conductor must be positive");
    let fields = FIELDS.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(f) = fields.read().expect("field cache poisoned").get(&conductor) {
        return f.clone();
    }
    let f = Arc::new(Field { conductor, modulus: cyclotomic_polynomial(conductor) });
    fields.write().expect("field cache poisoned").entry(conductor).or_insert(f).clone()
}

/// An element of `Q(ζ_N)`: `(Σ num_j ζ_N^j) / den` with `j < φ(N)`.
///
/// Stored canonically: `den > 0` and `gcd(den, num_0, …) = 1`, so equal
/// numbers at equal conductors have identical representations.
#[derive(Clone)]
pub struct CycloElement {
    field: Arc<Field>,
    num: Vec<BigInt>,
    den: BigInt,
}

/// Which trigonometric function [`CycloElement::trig`] builds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Trig {
    Cos,
    Sin,
}

impl CycloElement {
    fn from_parts(field: Arc<Field>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut e = CycloElement { field, num, den };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
        } else if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn zero(conductor: u32) -> Self {
        let field = field(conductor);
        let num = vec![BigInt::zero(); field.degree()];
        CycloElement { field, num, den: BigInt::one() }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(&Rational::one(), conductor)
    }

    /// The constant `q` as an element of `Q(ζ_N)`.
    pub fn from_rational(q: &Rational, conductor: u32) -> Self {
        let mut e = Self::zero(conductor);
        e.num[0] = q.numer().clone();
        e.den = q.denom().clone();
        e.normalize();
        e
    }

    /// `ζ_N^e` for any integer exponent.
    pub fn root_power(e: i64, conductor: u32) -> Self {
        let field = field(conductor);
        let e = e.rem_euclid(conductor as i64) as usize;
        let mut poly = vec![BigInt::zero(); (e + 1).max(field.degree())];
        poly[e] = BigInt::one();
        let num = field.reduce(poly);
        CycloElement { field, num, den: BigInt::one() }
    }

    /// `cos(jπ/k)` or `sin(jπ/k)` at conductor `lcm(2k, 4)`.
    pub fn trig(kind: Trig, j: i64, k: u32) -> Self {
        Self::trig_in(kind, j, k, lcm(2 * k, 4))
    }

    /// `cos(jπ/k)` or `sin(jπ/k)` built directly at `conductor`, which must
    /// be a multiple of `lcm(2k, 4)`.
    pub fn trig_in(kind: Trig, j: i64, k: u32, conductor: u32) -> Self {
        assert!(k >= 1);
        assert_eq!(conductor % lcm(2 * k, 4), 0, "conductor too small for trig element");
        let step = (conductor / (2 * k)) as i64;
        let z = Self::root_power(j * step, conductor);
        let zi = Self::root_power(-j * step, conductor);
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        match kind {
            Trig::Cos => (&z + &zi).scale(&half),
            Trig::Sin => {
                // 1/(2i) = -ζ_4 / 2 with ζ_4 = ζ_N^{N/4}.
                let i = Self::root_power((conductor / 4) as i64, conductor);
                (&(&z - &zi) * &i).scale(&-half)
            }
        }
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    /// Degree of the field, `φ(N)`.
    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// Canonical rational coefficients of `1, ζ_N, …, ζ_N^{φ(N)-1}`.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num.iter().map(|c| Rational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// `Some(q)` when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::from_parts(self.field.clone(), num, &self.den * q.denom())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.conductor() != other.conductor() {
            return Err(Error::ConductorMismatch { left: self.conductor(), right: other.conductor() });
        }
        Ok(())
    }

    fn add_same(&self, other: &Self, negate: bool) -> Self {
        let (num, den) = if self.den == other.den {
            let num = self.num.iter().zip(&other.num).map(|(a, b)| if negate { a - b } else { a + b }).collect();
            (num, self.den.clone())
        } else {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let l = a * &other.den;
                    let r = b * &self.den;
                    if negate {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect();
            (num, &self.den * &other.den)
        };
        Self::from_parts(self.field.clone(), num, den)
    }

    fn mul_same(&self, other: &Self) -> Self {
        let d = self.degree();
        let mut prod = vec![BigInt::zero(); (2 * d).saturating_sub(1).max(1)];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let num = self.field.reduce(prod);
        Self::from_parts(self.field.clone(), num, &self.den * &other.den)
    }

    /// Field addition; both operands must share a conductor.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_same(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_same(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_same(other))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_N`.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&q.recip(), self.conductor()));
        }
        let to_q = |v: &[BigInt]| -> Vec<Rational> { v.iter().map(|c| Rational::from_integer(c.clone())).collect() };
        let mut r0 = to_q(&self.field.modulus);
        let mut r1 = trim(to_q(&self.num));
        let mut s0: Vec<Rational> = vec![];
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant because Φ_N is irreducible.
        if r0.len() != 1 {
            return Err(Error::Internal("cyclotomic modulus has a nontrivial factor".into()));
        }
        let c = r0[0].clone();
        // s0 * num ≡ c (mod Φ), so 1/(num/den) = s0 * den / c.
        let factor = Rational::from_integer(self.den.clone()) / c;
        let coeffs: Vec<Rational> = s0.iter().map(|x| x * &factor).collect();
        Ok(Self::from_rationals(&coeffs, self.conductor()))
    }

    /// Build from (not necessarily reduced) rational polynomial coefficients.
    pub fn from_rationals(coeffs: &[Rational], conductor: u32) -> Self {
        let field = field(conductor);
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let poly: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .chain(std::iter::repeat(BigInt::zero()))
            .take(coeffs.len().max(field.degree()))
            .collect();
        let num = field.reduce(poly);
        Self::from_parts(field, num, den)
    }

    /// The same number represented in `Q(ζ_M)` via `ζ_N = ζ_M^{M/N}`.
    pub fn lift_conductor(&self, target: u32) -> Result<Self> {
        let n = self.conductor();
        if !target.is_multiple_of(n) {
            return Err(Error::ConductorNotDivisor { from: n, to: target });
        }
        if target == n {
            return Ok(self.clone());
        }
        let step = (target / n) as usize;
        let field = field(target);
        let len = ((self.degree().saturating_sub(1)) * step + 1).max(field.degree());
        let mut poly = vec![BigInt::zero(); len];
        for (j, c) in self.num.iter().enumerate() {
            poly[j * step] = c.clone();
        }
        let num = field.reduce(poly);
        Ok(Self::from_parts(field, num, self.den.clone()))
    }

    /// Lift both operands to `lcm` of their conductors.
    pub fn unify(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor() == b.conductor() {
            return (a.clone(), b.clone());
        }
        let m = lcm(a.conductor(), b.conductor());
        (a.lift_conductor(m).expect("lcm is a multiple"), b.lift_conductor(m).expect("lcm is a multiple"))
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conjugate(&self) -> Self {
        let n = self.conductor() as usize;
        let mut poly = vec![BigInt::zero(); n.max(self.degree())];
        for (j, c) in self.num.iter().enumerate() {
            poly[(n - j) % n] += c;
        }
        let num = self.field.reduce(poly);
        Self::from_parts(self.field.clone(), num, self.den.clone())
    }

    /// `Σ |num_j| / den` as an upper bound on `|x|` under any embedding.
    pub(crate) fn coefficient_bound_bits(&self) -> u32 {
        let sum: BigInt = self.num.iter().map(|c| c.abs()).sum();
        let q: BigInt = sum / &self.den + 1;
        q.bits() as u32
    }

    /// Real and imaginary parts under `ζ_N ↦ exp(2πi/N)`, each with error
    /// below `2^-bits`.
    pub(crate) fn embed_complex(&self, bits: u32) -> (Real, Real) {
        let n = self.conductor();
        let guard = self.coefficient_bound_bits() + (self.degree() as u32).next_power_of_two().trailing_zeros() + 8;
        let w = bits + guard;
        let table = roots_of_unity(n, w);
        let mut re = BigInt::zero();
        let mut im = BigInt::zero();
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            re += c * table[j].0.mantissa();
            im += c * table[j].1.mantissa();
        }
        let den = &self.den << w;
        let re = Real::from_ratio(&re, &den, bits);
        let im = Real::from_ratio(&im, &den, bits);
        (re, im)
    }

    /// Decimal value of a real element to `bits` binary places.
    pub fn embed_decimal(&self, bits: u32) -> Result<Real> {
        let (re, im) = self.embed_complex(bits + 8);
        if !im.abs_below_pow2(bits.saturating_sub(8)) {
            return Err(Error::NotReal(im.to_sci_string()));
        }
        Ok(re.with_bits(bits))
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    if rem.len() < b.len() {
        return (vec![], trim(rem));
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            rem[i + j] -= &c * bc;
        }
        quot[i] = c;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

impl PartialEq for CycloElement {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor() == other.conductor() {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = Self::unify(self, other);
            a.den == b.den && a.num == b.num
        }
    }
}

impl Eq for CycloElement {}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElement(N={}, {})", self.conductor(), self)
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        f.write_str("(")?;
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match j {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "z")?,
                1 => write!(f, "{a}*z")?,
                _ if a.is_one() => write!(f, "z^{j}")?,
                _ => write!(f, "{a}*z^{j}")?,
            }
        }
        f.write_str(")")?;
        if !self.den.is_one() {
            write!(f, "/{}", self.den)?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a CycloElement> for &'a CycloElement {
    type Output = CycloElement;
    fn add(self, rhs: &'a CycloElement) -> CycloElement {
        let (a, b) = CycloElement::unify(self, rhs);
        a.add_same(&b, false)
    }
}

impl<'a> Sub<&'a CycloElement> for &'a CycloElement {
    type Output = CycloElement;
    fn sub(self, rhs: &'a CycloElement) -> CycloElement {
        let (a, b) = CycloElement::unify(self, rhs);
        a.add_same(&b, true)
    }
}

impl<'a> Mul<&'a CycloElement> for &'a CycloElement {
    type Output = CycloElement;
    fn mul(self, rhs: &'a CycloElement) -> CycloElement {
        if self.conductor() == rhs.conductor() {
            return self.mul_same(rhs);
        }
        let (a, b) = CycloElement::unify(self, rhs);
        a.mul_same(&b)
    }
}

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        CycloElement { field: self.field.clone(), num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        -&self
    }
}
