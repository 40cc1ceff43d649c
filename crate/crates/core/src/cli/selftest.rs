use std::collections::BTreeMap;
use std::io::{self, Write};
use std::time::Instant;

use rayon::prelude::*;

use crate::cyclofield::{node_matrix, AlgebraicPiMultiple, Trig};
use crate::fourierpolys::{c_poly, exact_fourier_coefficient, mean_value_c, s_poly};
use crate::numerics::{multiplication_theorem_check, numeric_eval, PrecisionContext};
use crate::numtheory::{pow2, pow_int, zeta_even_coefficient, Rational};
use crate::sumsolver::{evaluate, Evaluator, SumKind, SumQuery};
use crate::Result;

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub max_n: u32,
    pub max_k: u64,
    pub prec: u32,
    pub inject_fault: bool,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig { max_n: 6, max_k: 12, prec: 192, inject_fault: false }
    }
}

impl SelftestConfig {
    /// The perturbed query used by the negative control.
    fn fault_target() -> SumQuery {
        SumQuery::new(SumKind::S, 2, 5, 1).expect("valid query")
    }

    fn value(&self, q: &SumQuery) -> Result<AlgebraicPiMultiple> {
        let v = evaluate(q)?;
        if self.inject_fault && *q == Self::fault_target() {
            let bump = AlgebraicPiMultiple::rational(pow_int(10, -12), q.n());
            return v.checked_add(&bump);
        }
        Ok(v)
    }

    fn grid(&self) -> Vec<SumQuery> {
        let mut out = Vec::new();
        for n in 2..=self.max_n {
            for k in 2..=self.max_k {
                for l in 1..k {
                    for kind in [SumKind::S, SumKind::Shat] {
                        out.push(SumQuery::new(kind, n, k, l).expect("grid query is valid"));
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
    pub seconds: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checks > 0
    }
}

#[derive(Clone, Debug)]
pub struct SelftestReport {
    pub results: Vec<CheckResult>,
    /// Oracle sweep outcome per `(n, k)`.
    pub oracle_matrix: BTreeMap<(u32, u64), bool>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(CheckResult::passed)
    }

    pub fn write(&self, out: &mut impl Write) -> io::Result<()> {
        for r in &self.results {
            let status = if r.passed() { "PASS" } else { "FAIL" };
            writeln!(out, "{status}  {:<24} {:>6} checks  {:>7.2}s", r.name, r.checks, r.seconds)?;
            for f in r.failures.iter().take(8) {
                writeln!(out, "      {f}")?;
            }
            if r.failures.len() > 8 {
                writeln!(out, "      ... {} more", r.failures.len() - 8)?;
            }
        }
        if let (Some(&(_, _)), Some(&(max_n, max_k))) =
            (self.oracle_matrix.keys().next(), self.oracle_matrix.keys().last())
        {
            writeln!(out, "\noracle sweep by (n, k):")?;
            write!(out, "  n\\k")?;
            for k in 2..=max_k {
                write!(out, "{k:>4}")?;
            }
            writeln!(out)?;
            for n in 2..=max_n {
                write!(out, "  {n:>3}")?;
                for k in 2..=max_k {
                    let cell = match self.oracle_matrix.get(&(n, k)) {
                        Some(true) => "ok",
                        Some(false) => "XX",
                        None => "--",
                    };
                    write!(out, "{cell:>4}")?;
                }
                writeln!(out)?;
            }
        }
        let verdict = if self.all_passed() { "all checks passed" } else { "FAILURES present" };
        writeln!(out, "\n{verdict}")
    }
}

fn timed(name: &'static str, f: impl FnOnce() -> (usize, Vec<String>)) -> CheckResult {
    let start = Instant::now();
    let (checks, failures) = f();
    CheckResult { name, checks, failures, seconds: start.elapsed().as_secs_f64() }
}

fn collect(results: Vec<std::result::Result<(), String>>) -> (usize, Vec<String>) {
    let n = results.len();
    (n, results.into_iter().filter_map(|r| r.err()).collect())
}

fn flip(kind: SumKind, n: u32) -> bool {
    match kind {
        SumKind::S => n % 2 == 1,
        SumKind::Shat => n.is_multiple_of(2),
    }
}

pub fn fourier_checks() -> (usize, Vec<String>) {
    let mut results = Vec::new();
    for m in 0..=8u32 {
        for n in 1..=12u32 {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            for (p, e) in [(s_poly(m), 2 * m + 1), (c_poly(m), 2 * m + 2)] {
                let expected = Rational::from_integer(sign.into()) * pow_int(n as i64, -(e as i64));
                results.push(match exact_fourier_coefficient(&p, n) {
                    Ok(v) if v == expected => Ok(()),
                    Ok(v) => Err(format!("F_{n} of {:?}_{m}: got {v}, expected {expected}", p.kind())),
                    Err(err) => Err(format!("F_{n} of {:?}_{m}: {err}", p.kind())),
                });
            }
        }
    }
    for m in 0..=10u32 {
        let expected = zeta_even_coefficient(m + 1)
            * Rational::from_integer(2.into())
            * (Rational::from_integer(1.into()) - pow2(-(2 * m as i64) - 1));
        results.push(if mean_value_c(m).as_rational() == Some(expected) {
            Ok(())
        } else {
            Err(format!("mean value of C_{m} disagrees with 2ζ(2m+2)(1-2^(-2m-1))"))
        });
    }
    collect(results)
}

pub fn determinant_checks(max: u32) -> (usize, Vec<String>) {
    let mut jobs = Vec::new();
    for n in 2..=max {
        jobs.push((Trig::Cos, false, n));
        jobs.push((Trig::Sin, false, n));
        if n % 2 == 1 {
            jobs.push((Trig::Cos, true, n));
            jobs.push((Trig::Sin, true, n));
        }
    }
    let results = jobs
        .into_par_iter()
        .map(|(kind, even, n)| {
            let name = format!("{}{}_{n}", if kind == Trig::Cos { "C" } else { "S" }, if even { "*" } else { "" });
            match node_matrix(kind, even, n).and_then(|m| m.determinant()) {
                Ok(d) if !d.is_zero() => Ok(()),
                Ok(_) => Err(format!("det {name} = 0")),
                Err(e) => Err(format!("det {name}: {e}")),
            }
        })
        .collect();
    collect(results)
}

fn reflection_checks(cfg: &SelftestConfig) -> (usize, Vec<String>) {
    let results = cfg
        .grid()
        .par_iter()
        .filter(|q| 2 * q.l() < q.k())
        .map(|q| {
            let r = SumQuery::new(q.kind(), q.n(), q.k(), q.k() - q.l()).expect("valid");
            let (a, b) = (cfg.value(q).map_err(|e| e.to_string())?, cfg.value(&r).map_err(|e| e.to_string())?);
            let b = if flip(q.kind(), q.n()) { b.neg() } else { b };
            if a == b {
                Ok(())
            } else {
                Err(format!("reflection fails for {q}"))
            }
        })
        .collect();
    collect(results)
}

fn splitting_checks(cfg: &SelftestConfig) -> (usize, Vec<String>) {
    let results = cfg
        .grid()
        .par_iter()
        .map(|q| -> std::result::Result<(), String> {
            let (n, k, l) = (q.n(), q.k(), q.l());
            let err = |e: crate::Error| e.to_string();
            let a = cfg.value(&SumQuery::new(SumKind::S, n, 2 * k, l).map_err(err)?).map_err(err)?;
            let b = cfg.value(&SumQuery::new(SumKind::S, n, 2 * k, k - l).map_err(err)?).map_err(err)?;
            let b = if n % 2 == 1 { b.neg() } else { b };
            // S(n,k,l) = S(n,2k,l) + (-1)^n S(n,2k,k-l);  Ŝ(n,k,l) = S(n,2k,l) - (-1)^n S(n,2k,k-l)
            let expected = match q.kind() {
                SumKind::S => a.checked_add(&b),
                SumKind::Shat => a.checked_sub(&b),
            }
            .map_err(err)?;
            if cfg.value(q).map_err(err)? == expected {
                Ok(())
            } else {
                Err(format!("splitting fails for {q}"))
            }
        })
        .collect();
    collect(results)
}

fn table_checks(cfg: &SelftestConfig) -> (usize, Vec<String>) {
    let systems = Evaluator::systems_only();
    let mut queries = Vec::new();
    for n in 2..=cfg.max_n.max(11) {
        queries.push(SumQuery::new(SumKind::S, n, 3, 1).expect("valid"));
        queries.push(SumQuery::new(SumKind::S, n, 4, 1).expect("valid"));
        if n % 2 == 0 {
            queries.push(SumQuery::new(SumKind::S, n, 6, 1).expect("valid"));
        }
    }
    let results = queries
        .iter()
        .map(|q| match (systems.evaluate(q), cfg.value(q)) {
            (Ok(a), Ok(b)) if a == b => Ok(()),
            (Ok(a), Ok(b)) => Err(format!("{q}: system gives {a}, table gives {b}")),
            (Err(e), _) | (_, Err(e)) => Err(format!("{q}: {e}")),
        })
        .collect();
    collect(results)
}

fn oracle_checks(cfg: &SelftestConfig) -> (usize, Vec<String>, BTreeMap<(u32, u64), bool>) {
    let ctx = PrecisionContext::with_working_bits(cfg.prec);
    let tol_bits = cfg.prec - 64;
    let outcomes: Vec<(SumQuery, std::result::Result<(), String>)> = cfg
        .grid()
        .par_iter()
        .map(|q| {
            let r = cfg.value(q).and_then(|v| v.decimal(cfg.prec)).map_err(|e| format!("{q}: {e}")).and_then(|exact| {
                let diff = (&exact - &numeric_eval(q, &ctx)).abs();
                if diff.abs_below_pow2(tol_bits) {
                    Ok(())
                } else {
                    Err(format!("{q}: residual {} exceeds 2^-{tol_bits}", diff.to_sci_string()))
                }
            });
            (*q, r)
        })
        .collect();
    let mut matrix = BTreeMap::new();
    for (q, r) in &outcomes {
        let cell = matrix.entry((q.n(), q.k())).or_insert(true);
        *cell &= r.is_ok();
    }
    let (n, f) = collect(outcomes.into_iter().map(|(_, r)| r).collect());
    (n, f, matrix)
}

fn multiplication_checks(cfg: &SelftestConfig) -> (usize, Vec<String>) {
    let ctx = PrecisionContext::with_working_bits(cfg.prec);
    let tol_bits = cfg.prec - 32;
    let mut points = Vec::new();
    for n in 2..=cfg.max_n {
        for b in 1..=cfg.max_k as i64 {
            for a in 1..=b {
                if num_integer::gcd(a, b) == 1 {
                    points.push((n, Rational::new(a.into(), b.into())));
                }
            }
        }
    }
    let results = points
        .par_iter()
        .map(|(n, x)| {
            let r = multiplication_theorem_check(*n, x, &ctx);
            if r.abs_below_pow2(tol_bits) {
                Ok(())
            } else {
                Err(format!("duplication residual at n={n}, x={x}: {}", r.to_sci_string()))
            }
        })
        .collect();
    collect(results)
}

/// Run every sweep.
pub fn run_selftest(cfg: &SelftestConfig) -> SelftestReport {
    let mut results = vec![
        timed("fourier-exact", fourier_checks),
        timed("node-determinants", || determinant_checks((2 * cfg.max_k as u32 + 1).max(3))),
        timed("reflection", || reflection_checks(cfg)),
        timed("splitting", || splitting_checks(cfg)),
        timed("closed-form-tables", || table_checks(cfg)),
    ];
    let start = Instant::now();
    let (checks, failures, matrix) = oracle_checks(cfg);
    results.push(CheckResult { name: "oracle-sweep", checks, failures, seconds: start.elapsed().as_secs_f64() });
    results.push(timed("multiplication-theorem", || multiplication_checks(cfg)));
    SelftestReport { results, oracle_matrix: matrix }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(fault: bool) -> SelftestConfig {
        SelftestConfig { max_n: 3, max_k: 6, prec: 128, inject_fault: fault }
    }

    #[test]
    fn small_run_passes() {
        let report = run_selftest(&small(false));
        assert!(report.all_passed(), "{:?}", report.results);
        let mut buf = Vec::new();
        report.write(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("all checks passed"));
    }

    #[test]
    fn injected_fault_is_reported() {
        let report = run_selftest(&small(true));
        assert!(!report.all_passed());
        let failed: Vec<_> = report.results.iter().filter(|r| !r.passed()).map(|r| r.name).collect();
        assert!(failed.contains(&"reflection"));
        assert!(failed.contains(&"oracle-sweep"));
        assert!(!report.oracle_matrix[&(2, 5)]);
    }
}
