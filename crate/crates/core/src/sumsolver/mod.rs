//! Exact evaluation of the lattice sums
//! `S(n,k,l) = Σ_{j∈ℤ} (jk+l)^{-n}` and `Ŝ(n,k,l) = Σ_{j∈ℤ} (-1)^j (jk+l)^{-n}`.

mod closed;
mod system;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::cyclofield::AlgebraicPiMultiple;
use crate::error::{Error, Result};
use crate::numtheory::{gcd, pow_int, Rational};

pub use closed::{closed_form, s3_odd};
pub use system::{build_system, numeric_residuals, system_conductor, Case, Equation, LinearSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SumKind {
    /// `S`, the plain sum.
    S,
    /// `Ŝ`, the alternating sum.
    Shat,
}

impl fmt::Display for SumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SumKind::S => "S",
            SumKind::Shat => "Shat",
        })
    }
}

impl FromStr for SumKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" | "s" => Ok(SumKind::S),
            "Shat" | "shat" | "Ŝ" => Ok(SumKind::Shat),
            _ => Err(Error::InvalidQuery(format!("unknown sum kind {s:?}"))),
        }
    }
}

/// Largest modulus accepted; keeps conductors within `u32`.
pub const MAX_MODULUS: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SumQuery {
    kind: SumKind,
    n: u32,
    k: u64,
    l: u64,
}

impl SumQuery {
    pub fn new(kind: SumKind, n: u32, k: u64, l: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidQuery(format!("exponent n = {n} must be at least 2")));
        }
        if !(2..=MAX_MODULUS).contains(&k) {
            return Err(Error::InvalidQuery(format!("modulus k = {k} must lie in 2..={MAX_MODULUS}")));
        }
        if l == 0 || l >= k {
            return Err(Error::InvalidQuery(format!("residue l = {l} must lie in 1..={}", k - 1)));
        }
        Ok(SumQuery { kind, n, k, l })
    }

    pub fn kind(&self) -> SumKind {
        self.kind
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn l(&self) -> u64 {
        self.l
    }
}

impl fmt::Display for SumQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{},{})", self.kind, self.n, self.k, self.l)
    }
}

/// Reduce to `l ≤ k/2` by reflection and, for plain sums, divide out
/// `d = gcd(k, l)`. Returns the reduced query, the reflection sign and the
/// scale `d^{-n}`, so that `value(q) = sign · scale · value(reduced)`.
pub fn normalize(q: &SumQuery) -> (SumQuery, i32, Rational) {
    let (mut k, mut l, n) = (q.k, q.l, q.n);
    let mut sign = 1;
    if 2 * l > k {
        l = k - l;
        let odd = match q.kind {
            SumKind::S => n % 2 == 1,
            SumKind::Shat => n % 2 == 0,
        };
        if odd {
            sign = -1;
        }
    }
    let mut scale = Rational::one();
    if q.kind == SumKind::S {
        let d = gcd(k, l);
        if d > 1 {
            k /= d;
            l /= d;
            scale = pow_int(d as i64, -(n as i64));
        }
    }
    (SumQuery { kind: q.kind, n, k, l }, sign, scale)
}

/// How a family's values were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    System(Case),
    /// Split from the half modulus, `S(n,2k,l) = (S(n,k,l) + Ŝ(n,k,l))/2`.
    EvenReduction,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::ClosedForm => f.write_str("closed form"),
            Provenance::System(c) => write!(f, "linear system, {c}"),
            Provenance::EvenReduction => f.write_str("even-modulus reduction"),
        }
    }
}

/// All residues `1..=k/2` of one `(kind, n, k)`.
#[derive(Clone, Debug)]
pub struct SolvedFamily {
    pub kind: SumKind,
    pub n: u32,
    pub k: u64,
    pub values: BTreeMap<u64, AlgebraicPiMultiple>,
    pub provenance: Provenance,
}

impl SolvedFamily {
    /// Value at any residue `1 ≤ l < k`, using the reflection law.
    pub fn value(&self, l: u64) -> Option<AlgebraicPiMultiple> {
        if l == 0 || l >= self.k {
            return None;
        }
        if 2 * l <= self.k {
            return self.values.get(&l).cloned();
        }
        let v = self.values.get(&(self.k - l))?;
        let flip = match self.kind {
            SumKind::S => self.n % 2 == 1,
            SumKind::Shat => self.n.is_multiple_of(2),
        };
        Some(if flip { v.neg() } else { v.clone() })
    }
}

type FamilyKey = (SumKind, u32, u64);

/// Evaluation strategy plus a family cache shared by concurrent callers.
pub struct Evaluator {
    closed_forms: bool,
    cache: RwLock<HashMap<FamilyKey, Arc<SolvedFamily>>>,
}

impl Default for Evaluator {
    fn default() -> Self {
        Self::new()
    }
}

impl Evaluator {
    pub fn new() -> Self {
        Evaluator { closed_forms: true, cache: RwLock::new(HashMap::new()) }
    }

    /// An evaluator that ignores the tabulated closed forms except at modulus 2,
    /// so every other value comes from a linear system or the even-modulus
    /// reduction. Used to cross-check the tables.
    pub fn systems_only() -> Self {
        Evaluator { closed_forms: false, cache: RwLock::new(HashMap::new()) }
    }

    pub fn evaluate(&self, q: &SumQuery) -> Result<AlgebraicPiMultiple> {
        let (r, sign, scale) = normalize(q);
        let v = self.reduced_value(&r)?;
        let v = if scale.is_one() { v } else { v.scale(&scale) };
        Ok(if sign < 0 { v.neg() } else { v })
    }

    fn reduced_value(&self, q: &SumQuery) -> Result<AlgebraicPiMultiple> {
        if self.closed_forms || q.k == 2 {
            if let Some(v) = closed_form(q) {
                return Ok(v);
            }
        }
        match q.kind {
            SumKind::S if q.k.is_multiple_of(2) => self.even_reduction(q.n, q.k, q.l),
            SumKind::Shat if 2 * q.l == q.k => {
                let base = SumQuery::new(SumKind::Shat, q.n, 2, 1)?;
                let v = closed_form(&base).expect("modulus 2 is tabulated");
                Ok(v.scale(&pow_int((q.k / 2) as i64, -(q.n as i64))))
            }
            _ => {
                let fam = self.system_family(q.kind, q.n, q.k)?;
                fam.values
                    .get(&q.l)
                    .cloned()
                    .ok_or_else(|| Error::Internal(format!("residue missing from solved family for {q}")))
            }
        }
    }

    /// `S(n, k, l)` for even `k` from `S(n,k/2,l)` and `Ŝ(n,k/2,l)`.
    pub fn even_reduction(&self, n: u32, k: u64, l: u64) -> Result<AlgebraicPiMultiple> {
        if !k.is_multiple_of(2) || k < 4 || l == 0 || 2 * l >= k || gcd(k, l) != 1 {
            return Err(Error::InvalidQuery(format!(
                "even reduction needs even k >= 4 and odd l < k/2, got k = {k}, l = {l}"
            )));
        }
        let half = k / 2;
        let s = self.evaluate(&SumQuery::new(SumKind::S, n, half, l)?)?;
        let shat = self.evaluate(&SumQuery::new(SumKind::Shat, n, half, l)?)?;
        Ok(s.checked_add(&shat)?.scale(&Rational::new(BigInt::one(), BigInt::from(2))))
    }

    fn system_family(&self, kind: SumKind, n: u32, k: u64) -> Result<Arc<SolvedFamily>> {
        let key = (kind, n, k);
        if let Some(f) = self.cache.read().expect("family cache poisoned").get(&key) {
            return Ok(f.clone());
        }
        let sys = build_system(kind, n, k, self)?;
        let case = sys.case;
        let (values, sys) = system::solve_system(sys)?;
        let mut map: BTreeMap<u64, AlgebraicPiMultiple> = sys.unknowns.iter().copied().zip(values).collect();
        if kind == SumKind::Shat && k.is_multiple_of(2) {
            let central = SumQuery::new(kind, n, k, k / 2)?;
            map.insert(k / 2, self.reduced_value(&central)?);
        }
        let fam = Arc::new(SolvedFamily { kind, n, k, values: map, provenance: Provenance::System(case) });
        self.cache.write().expect("family cache poisoned").insert(key, fam.clone());
        Ok(fam)
    }

    /// Every residue `1..=k/2` of `(kind, n, k)`.
    pub fn solve_family(&self, kind: SumKind, n: u32, k: u64) -> Result<SolvedFamily> {
        SumQuery::new(kind, n, k, 1)?;
        if k == 2 {
            let q = SumQuery::new(kind, n, 2, 1)?;
            let v = closed_form(&q).expect("modulus 2 is tabulated");
            return Ok(SolvedFamily {
                kind,
                n,
                k,
                values: BTreeMap::from([(1, v)]),
                provenance: Provenance::ClosedForm,
            });
        }
        if kind == SumKind::Shat || k % 2 == 1 {
            return Ok((*self.system_family(kind, n, k)?).clone());
        }
        let values = (1..=k / 2)
            .map(|l| Ok((l, self.evaluate(&SumQuery::new(kind, n, k, l)?)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(SolvedFamily { kind, n, k, values, provenance: Provenance::EvenReduction })
    }

    /// `ζ(n,p) + (-1)^n ζ(n,1-p)` (plain) or `ζ̂(n,p) - (-1)^n ζ̂(n,1-p)`
    /// (alternating) for rational `0 < p < 1`.
    pub fn hurwitz_combination(&self, n: u32, p: &Rational, alternating: bool) -> Result<AlgebraicPiMultiple> {
        if !p.is_positive() || *p >= Rational::one() {
            return Err(Error::OutOfRange(format!("p = {p} must lie strictly between 0 and 1")));
        }
        let (a, b) = (p.numer(), p.denom());
        debug_assert!(a.gcd(b).is_one());
        let to_u64 = |x: &BigInt| -> Result<u64> {
            u64::try_from(x).map_err(|_| Error::OutOfRange(format!("{x} is too large")))
        };
        let (l, k) = (to_u64(a)?, to_u64(b)?);
        let kind = if alternating { SumKind::Shat } else { SumKind::S };
        let v = self.evaluate(&SumQuery::new(kind, n, k, l)?)?;
        Ok(v.scale(&pow_int(k as i64, n as i64)))
    }
}

fn global() -> &'static Evaluator {
    static EVAL: OnceLock<Evaluator> = OnceLock::new();
    EVAL.get_or_init(Evaluator::new)
}

/// Exact value of a lattice sum as an algebraic multiple of `π^n`.
pub fn evaluate(q: &SumQuery) -> Result<AlgebraicPiMultiple> {
    global().evaluate(q)
}

pub fn solve_family(kind: SumKind, n: u32, k: u64) -> Result<SolvedFamily> {
    global().solve_family(kind, n, k)
}

pub fn even_reduction(n: u32, k: u64, l: u64) -> Result<AlgebraicPiMultiple> {
    global().even_reduction(n, k, l)
}

pub fn hurwitz_combination(n: u32, p: &Rational, alternating: bool) -> Result<AlgebraicPiMultiple> {
    global().hurwitz_combination(n, p, alternating)
}
