//! The six Fourier-node linear systems and their exact solution.
//!
//! Grouping `Σ_{j≥1} (-1)^j trig(jaπ/K)/j^s` by `j mod K` collapses it to a
//! finite combination of the unknown lattice sums; `a` runs over odd or even
//! nodes so the trigonometric factor is constant along each residue class.
//! Every equation is divided by `π^s`, leaving rational right-hand sides.

use std::fmt;

use log::{debug, warn};
use num_traits::{One, Zero};

use super::{Evaluator, SumKind, SumQuery};
use crate::cyclofield::{solve_linear_system, AlgebraicPiMultiple, CycloElement, CycloMatrix, Trig};
use crate::error::{Error, Result};
use crate::fourierpolys::{c_poly, eval_normalized, s_poly};
use crate::numerics::real::{pi, Real};
use crate::numerics::{numeric_eval, PrecisionContext};
use crate::numtheory::{eta_even_coefficient, lcm, pow_int, rat, zeta_even_coefficient, Rational};

/// Which of the six parity cases a system belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    /// even n, odd k, plain sums (cosine nodes `(2l-1)/k`)
    I,
    /// even n, even k, alternating sums
    II,
    /// even n, odd k, alternating sums (cosine nodes `2l/k`)
    III,
    /// odd n, odd k, plain sums (sine nodes `(2l-1)/k`)
    IV,
    /// odd n, even k, alternating sums
    V,
    /// odd n, odd k, alternating sums (sine nodes `2l/k`)
    VI,
}

impl Case {
    pub fn select(kind: SumKind, n: u32, k: u64) -> Option<Case> {
        let case = match (n.is_multiple_of(2), k.is_multiple_of(2), kind) {
            (true, false, SumKind::S) => Case::I,
            (true, true, SumKind::Shat) => Case::II,
            (true, false, SumKind::Shat) => Case::III,
            (false, false, SumKind::S) => Case::IV,
            (false, true, SumKind::Shat) => Case::V,
            (false, false, SumKind::Shat) => Case::VI,
            (_, true, SumKind::S) => return None,
        };
        Some(case)
    }

    fn trig(self) -> Trig {
        match self {
            Case::I | Case::II | Case::III => Trig::Cos,
            Case::IV | Case::V | Case::VI => Trig::Sin,
        }
    }

    fn even_nodes(self) -> bool {
        matches!(self, Case::III | Case::VI)
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Case::I => "i",
            Case::II => "ii",
            Case::III => "iii",
            Case::IV => "iv",
            Case::V => "v",
            Case::VI => "vi",
        };
        write!(f, "case {s}")
    }
}

/// Where one equation came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equation {
    /// Fourier identity evaluated at `t = a/k`.
    Node { a: u64 },
    /// `Σ_{j=1}^{⌊k/2⌋} S(n,k,j) = (1 - k^{-n}) ζ(n)`.
    Closure,
}

#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub case: Case,
    pub n: u32,
    pub k: u64,
    pub matrix: CycloMatrix,
    pub rhs: Vec<AlgebraicPiMultiple>,
    /// Residues of the unknowns, in column order.
    pub unknowns: Vec<u64>,
    pub equations: Vec<Equation>,
}

impl LinearSystem {
    pub fn kind(&self) -> SumKind {
        match self.case {
            Case::I | Case::IV => SumKind::S,
            _ => SumKind::Shat,
        }
    }

    fn retain_rows(&mut self, keep: &[bool]) -> Result<()> {
        let cols = self.matrix.cols();
        let mut entries = Vec::new();
        let mut rhs = Vec::new();
        let mut equations = Vec::new();
        for (r, _) in keep.iter().enumerate().filter(|(_, k)| **k) {
            entries.extend_from_slice(self.matrix.row(r));
            rhs.push(self.rhs[r].clone());
            equations.push(self.equations[r]);
        }
        self.matrix = CycloMatrix::new(rhs.len(), cols, self.matrix.conductor(), entries)?;
        self.rhs = rhs;
        self.equations = equations;
        Ok(())
    }
}

/// Conductor shared by every entry of a system with modulus `k`.
pub fn system_conductor(k: u64) -> u32 {
    lcm(2 * k as u32, 4)
}

/// Candidate equations for the family `(kind, n, k)` over the full node range.
///
/// `k` must be at least 3; `S` families need odd `k`.
pub fn build_system(kind: SumKind, n: u32, k: u64, eval: &Evaluator) -> Result<LinearSystem> {
    if n < 2 || k < 3 {
        return Err(Error::InvalidQuery(format!("no linear system for n = {n}, k = {k}")));
    }
    let case = Case::select(kind, n, k)
        .ok_or_else(|| Error::InvalidQuery(format!("plain sums with even modulus {k} use the splitting recursion")))?;
    let i = k / 2;
    let conductor = system_conductor(k);
    let unknowns: Vec<u64> = match case {
        Case::II | Case::V => (1..i).collect(),
        _ => (1..=i).collect(),
    };
    let nodes: Vec<u64> = (1..=i).map(|l| if case.even_nodes() { 2 * l } else { 2 * l - 1 }).collect();

    let neg_s = -(n as i64);
    let k_pow = pow_int(k as i64, neg_s);
    let (poly, shift) = if n.is_multiple_of(2) {
        let m = (n - 2) / 2;
        let eta = eta_even_coefficient(n / 2);
        let shift = match case {
            Case::I => &eta + zeta_even_coefficient(n / 2) * &k_pow,
            _ => &eta * (Rational::one() - &k_pow),
        };
        (c_poly(m), shift)
    } else {
        (s_poly((n - 1) / 2), Rational::zero())
    };
    let beta = if case == Case::V {
        let q = SumQuery::new(SumKind::S, n, 4, 1)?;
        let v = eval.evaluate(&q)?;
        Some(v.as_rational().ok_or_else(|| Error::Internal("S(n,4,1) is not rational".into()))?)
    } else {
        None
    };

    let mut entries = Vec::new();
    let mut rhs = Vec::new();
    let mut equations = Vec::new();
    for (idx, &a) in nodes.iter().enumerate() {
        for &j in &unknowns {
            let t = CycloElement::trig_in(case.trig(), (j * a) as i64, k as u32, conductor);
            entries.push(if j % 2 == 0 { t } else { -t });
        }
        let t = Rational::new((a as i64).into(), (k as i64).into());
        let mut value = eval_normalized(&poly, &t) - &shift;
        if let Some(b) = &beta {
            // Central residue i contributes (-1)^{i+l+1} i^{-n} S(n,4,1).
            let l = idx as u64 + 1;
            let sign = if (i + l + 1).is_multiple_of(2) { 1 } else { -1 };
            value -= b * pow_int(i as i64, neg_s) * rat(sign, 1);
        }
        rhs.push(AlgebraicPiMultiple::rational(value, n));
        equations.push(Equation::Node { a });
    }
    if case == Case::I {
        for _ in &unknowns {
            entries.push(CycloElement::one(conductor));
        }
        let value = zeta_even_coefficient(n / 2) * (Rational::one() - k_pow);
        rhs.push(AlgebraicPiMultiple::rational(value, n));
        equations.push(Equation::Closure);
    }
    let matrix = CycloMatrix::new(rhs.len(), unknowns.len(), conductor, entries)?;
    Ok(LinearSystem { case, n, k, matrix, rhs, unknowns, equations })
}

/// Tolerance of the numeric screen applied to every candidate equation.
const PRECHECK_BITS: u32 = 128;

fn precheck_tolerance() -> Real {
    // 10^-25
    Real::from_rational(&Rational::new(1.into(), num_traits::pow(10.into(), 25)), PRECHECK_BITS)
}

/// Residual of each equation with the unknowns replaced by oracle values.
pub fn numeric_residuals(sys: &LinearSystem) -> Result<Vec<Real>> {
    let bits = PRECHECK_BITS;
    let ctx = PrecisionContext::with_working_bits(bits + 32);
    let pin = pi(bits + 32).pow(sys.n);
    let values: Vec<Real> = sys
        .unknowns
        .iter()
        .map(|&j| {
            let q = SumQuery::new(sys.kind(), sys.n, sys.k, j)?;
            Ok(numeric_eval(&q, &ctx).div(&pin).with_bits(bits))
        })
        .collect::<Result<_>>()?;
    (0..sys.matrix.rows())
        .map(|r| {
            let mut acc = Real::zero(bits);
            for (c, v) in values.iter().enumerate() {
                acc = &acc + &(&sys.matrix.get(r, c).embed_decimal(bits)? * v);
            }
            let rhs = sys.rhs[r].coeff().embed_decimal(bits)?;
            Ok((&acc - &rhs).abs())
        })
        .collect()
}

/// Drop candidate equations that fail the numeric screen, then solve exactly.
pub(crate) fn solve_system(mut sys: LinearSystem) -> Result<(Vec<AlgebraicPiMultiple>, LinearSystem)> {
    let tol = precheck_tolerance();
    let residuals = numeric_residuals(&sys)?;
    let keep: Vec<bool> = residuals.iter().map(|r| *r < tol).collect();
    for (r, ok) in keep.iter().enumerate() {
        if !ok {
            warn!(
                "{} n={} k={}: dropping equation {:?}, numeric residual {}",
                sys.case,
                sys.n,
                sys.k,
                sys.equations[r],
                residuals[r].to_sci_string()
            );
        }
    }
    if keep.iter().any(|k| !k) {
        sys.retain_rows(&keep)?;
    }
    debug!(
        "{} n={} k={}: solving {}x{} system at conductor {}",
        sys.case,
        sys.n,
        sys.k,
        sys.matrix.rows(),
        sys.matrix.cols(),
        sys.matrix.conductor()
    );
    let b: Vec<CycloElement> = sys.rhs.iter().map(|v| v.coeff().clone()).collect();
    let x = solve_linear_system(&sys.matrix, &b).map_err(|e| match e {
        Error::Singular { column } => {
            Error::Internal(format!("{} n={} k={}: system singular at column {column}", sys.case, sys.n, sys.k))
        }
        other => other,
    })?;
    let values = x.into_iter().map(|c| AlgebraicPiMultiple::new(c, sys.n)).collect();
    Ok((values, sys))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_selection() {
        assert_eq!(Case::select(SumKind::S, 2, 5), Some(Case::I));
        assert_eq!(Case::select(SumKind::Shat, 2, 4), Some(Case::II));
        assert_eq!(Case::select(SumKind::Shat, 4, 3), Some(Case::III));
        assert_eq!(Case::select(SumKind::S, 3, 7), Some(Case::IV));
        assert_eq!(Case::select(SumKind::Shat, 3, 4), Some(Case::V));
        assert_eq!(Case::select(SumKind::Shat, 5, 9), Some(Case::VI));
        assert_eq!(Case::select(SumKind::S, 2, 8), None);
    }

    #[test]
    fn shapes() {
        let eval = Evaluator::new();
        let s = build_system(SumKind::S, 4, 3, &eval).unwrap();
        assert_eq!((s.matrix.rows(), s.matrix.cols()), (2, 1));
        assert_eq!(s.equations, vec![Equation::Node { a: 1 }, Equation::Closure]);
        let s = build_system(SumKind::Shat, 2, 4, &eval).unwrap();
        assert_eq!((s.matrix.rows(), s.matrix.cols()), (2, 1));
        assert_eq!(s.matrix.conductor(), 8);
        let s = build_system(SumKind::Shat, 3, 9, &eval).unwrap();
        assert_eq!((s.matrix.rows(), s.matrix.cols()), (4, 4));
        assert_eq!(s.matrix.conductor(), 36);
        assert!(build_system(SumKind::S, 2, 8, &eval).is_err());
    }

    #[test]
    fn every_candidate_passes_the_screen() {
        let eval = Evaluator::new();
        let tol = precheck_tolerance();
        for (kind, n, k) in [
            (SumKind::S, 2, 5),
            (SumKind::S, 3, 7),
            (SumKind::Shat, 2, 6),
            (SumKind::Shat, 4, 5),
            (SumKind::Shat, 3, 8),
            (SumKind::Shat, 5, 3),
        ] {
            let sys = build_system(kind, n, k, &eval).unwrap();
            for r in numeric_residuals(&sys).unwrap() {
                assert!(r < tol, "{kind:?} n={n} k={k}: residual {r}");
            }
        }
    }

    #[test]
    fn modulus_three_source_identity() {
        // One node, one unknown: the n = 4, k = 3 equation pins S(4,3,1).
        let eval = Evaluator::new();
        let sys = build_system(SumKind::S, 4, 3, &eval).unwrap();
        let (x, _) = solve_system(sys).unwrap();
        assert_eq!(x[0].as_rational(), Some(rat(8, 729)));
    }
}
