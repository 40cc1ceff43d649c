//! Acceptance sweeps. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line, followed by detail lines.

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use zetakit::cyclofield::node_matrix;
use zetakit::fourierpolys::{
    c_poly, dirichlet_closed_form, exact_fourier_coefficient, mean_value_c, s_poly, DirichletKind,
};
use zetakit::numerics::real::cos_sin_pi;
use zetakit::numerics::{hurwitz_combination_residual, multiplication_theorem_check, numeric_eval};
use zetakit::numtheory::{bernoulli, binomial, euler_number, factorial};
use zetakit::sumsolver::Evaluator;
use zetakit::{evaluate, AlgebraicPiMultiple, CycloElement, PrecisionContext, Rational, Real, SumKind, SumQuery, Trig};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn ri<T: Into<BigInt>>(n: T) -> Rational {
    Rational::from_integer(n.into())
}

fn rpow(base: i64, e: i64) -> Rational {
    let p = ri(BigInt::from(base).pow(e.unsigned_abs() as u32));
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

fn sign(odd: bool) -> Rational {
    if odd {
        ri(-1)
    } else {
        ri(1)
    }
}

fn q(kind: SumKind, n: u32, k: u64, l: u64) -> SumQuery {
    SumQuery::new(kind, n, k, l).expect("valid query")
}

fn sqrt2() -> CycloElement {
    CycloElement::trig(Trig::Cos, 1, 4).scale(&ri(2))
}

/// `π^n · c · (a + b√2)`
fn quad(n: u32, c: Rational, a: Rational, b: Rational) -> AlgebraicPiMultiple {
    let one = CycloElement::one(8);
    let v = &one.scale(&a) + &sqrt2().scale(&b);
    AlgebraicPiMultiple::new(v.scale(&c), n)
}

fn oracle_gap(query: &SumQuery, v: &AlgebraicPiMultiple, bits: u32) -> Real {
    let ctx = PrecisionContext::with_working_bits(bits);
    let exact = v.decimal(bits).expect("embedding");
    (&exact - &numeric_eval(query, &ctx)).abs()
}

struct Outcome {
    pass: bool,
    /// A FAIL that was analysed and is expected; does not fail the run.
    expected_failure: bool,
    details: Vec<String>,
}

impl Outcome {
    fn from_failures(checks: usize, failures: Vec<String>) -> Self {
        let mut details = vec![format!("{checks} checks, {} failures", failures.len())];
        details.extend(failures.iter().take(10).cloned());
        Outcome { pass: failures.is_empty() && checks > 0, expected_failure: false, details }
    }
}

// 1. Published values for the modulus-8 and alternating modulus-4 sums.
fn published_values() -> Outcome {
    let cases: Vec<(SumQuery, AlgebraicPiMultiple)> = vec![
        (q(SumKind::S, 2, 8, 1), quad(2, r(1, 16), ri(1), r(1, 2))),
        (q(SumKind::S, 2, 8, 3), quad(2, r(1, 16), ri(1), r(-1, 2))),
        (q(SumKind::S, 4, 8, 1), quad(4, r(1, 192), ri(1), r(11, 16))),
        (q(SumKind::S, 3, 8, 1), quad(3, r(1, 32), ri(1), r(-3, 4))),
        (q(SumKind::S, 3, 8, 3), quad(3, r(1, 32), ri(1), r(3, 4))),
        (q(SumKind::S, 5, 8, 1), quad(5, r(5, 1536), ri(1), r(-57, 16))),
        (q(SumKind::Shat, 2, 4, 1), quad(2, r(1, 16), ri(0), ri(1))),
        (q(SumKind::Shat, 3, 4, 1), quad(3, r(3, 128), ri(0), ri(1))),
    ];
    // The published odd-order modulus-8 values cannot hold: S(3,8,1) and
    // S(5,8,1) come out negative although the j = 0 term 1 dominates, and
    // S(3,8,3) comes out near 2 although its largest term is 1/27.
    // Replacements are pinned below and checked against the oracle.
    let errata: BTreeSet<String> = ["S(3,8,1)", "S(3,8,3)", "S(5,8,1)"].iter().map(|s| s.to_string()).collect();
    let corrected = [
        (q(SumKind::S, 3, 8, 1), quad(3, r(1, 64), ri(1), r(3, 4))),
        (q(SumKind::S, 3, 8, 3), quad(3, r(1, 64), ri(-1), r(3, 4))),
        (q(SumKind::S, 5, 8, 1), quad(5, r(5, 3072), ri(1), r(57, 80))),
        (q(SumKind::S, 5, 8, 3), quad(5, r(5, 3072), ri(-1), r(57, 80))),
    ];

    let mut details = Vec::new();
    let mut mismatched = BTreeSet::new();
    for (query, published) in &cases {
        let got = evaluate(query).expect("evaluate");
        if &got == published {
            details.push(format!("{query}: exact match {got}"));
        } else {
            let pd = published.decimal(64).map(|d| d.to_decimal_string(10)).unwrap_or_default();
            details.push(format!(
                "{query}: published {published} ≈ {pd}, computed {got} ≈ {}",
                got.decimal(64).unwrap().to_decimal_string(10)
            ));
            mismatched.insert(query.to_string());
        }
    }
    let mut corrections_hold = true;
    for (query, value) in &corrected {
        let got = evaluate(query).expect("evaluate");
        let gap = oracle_gap(query, value, 192);
        let ok = &got == value && gap.abs_below_pow2(100);
        corrections_hold &= ok;
        details.push(format!(
            "{query}: corrected value {value} {} (oracle gap {})",
            if ok { "confirmed" } else { "NOT confirmed" },
            gap.to_sci_string()
        ));
    }
    let pass = mismatched.is_empty();
    let expected_failure = !pass && mismatched == errata && corrections_hold;
    if expected_failure {
        details
            .push("mismatches are exactly the three published odd-order values; see the corrected values above".into());
    }
    Outcome { pass, expected_failure, details }
}

// 2. S(n,4,1) against Euler's display for n = 2..11.
fn euler_family() -> Outcome {
    let mut failures = Vec::new();
    for n in 2..=11u32 {
        let expected = if n % 2 == 0 {
            // (1 - 2^-n) ζ(n), ζ(2l) = (-1)^{l+1} B_{2l} 2^{2l-1} π^{2l} / (2l)!
            let l = n / 2;
            let zeta = sign(l % 2 == 0) * bernoulli(n) * rpow(2, n as i64 - 1) / ri(factorial(n));
            (ri(1) - rpow(2, -(n as i64))) * zeta
        } else {
            // β(2k+1) = (-1)^k E_{2k} π^{2k+1} / (4^{k+1} (2k)!)
            let k = (n - 1) / 2;
            let e = euler_number(2 * k).expect("euler number");
            sign(k % 2 == 1) * ri(e) / (rpow(4, k as i64 + 1) * ri(factorial(2 * k)))
        };
        let got = evaluate(&q(SumKind::S, n, 4, 1)).expect("evaluate");
        if got != AlgebraicPiMultiple::rational(expected.clone(), n) {
            failures.push(format!("S({n},4,1) = {got}, display gives {expected}·π^{n}"));
        }
    }
    Outcome::from_failures(10, failures)
}

// 3. Exact Fourier coefficients of the normalized polynomials.
fn fourier_exact() -> Outcome {
    let mut failures = Vec::new();
    let mut checks = 0;
    for m in 0..=8u32 {
        for n in 1..=12u32 {
            let s = sign(n % 2 == 1);
            for (p, e) in [(s_poly(m), 2 * m + 1), (c_poly(m), 2 * m + 2)] {
                checks += 1;
                let expected = &s * rpow(n as i64, -(e as i64));
                match exact_fourier_coefficient(&p, n) {
                    Ok(v) if v == expected => {}
                    Ok(v) => failures.push(format!("{:?}_{m}, n={n}: {v} != {expected}", p.kind())),
                    Err(err) => failures.push(format!("{:?}_{m}, n={n}: {err}", p.kind())),
                }
            }
        }
    }
    for m in 0..=10u32 {
        checks += 1;
        let l = m + 1;
        let zeta = sign(l % 2 == 0) * bernoulli(2 * l) * rpow(2, 2 * l as i64 - 1) / ri(factorial(2 * l));
        let expected = ri(2) * zeta * (ri(1) - rpow(2, -(2 * m as i64) - 1));
        let got = mean_value_c(m);
        if got != AlgebraicPiMultiple::rational(expected.clone(), 2 * m + 2) {
            failures.push(format!("mean of C_{m}: {got} != {expected}·π^{}", 2 * m + 2));
        }
    }
    Outcome::from_failures(checks, failures)
}

// 4. Node matrices are nonsingular.
fn node_determinants() -> Outcome {
    let mut jobs = Vec::new();
    for n in 2..=25u32 {
        jobs.push((Trig::Cos, false, n));
        jobs.push((Trig::Sin, false, n));
        if n % 2 == 1 {
            jobs.push((Trig::Cos, true, n));
            jobs.push((Trig::Sin, true, n));
        }
    }
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(kind, even, n)| match node_matrix(kind, even, n).and_then(|m| m.determinant()) {
            Ok(d) if !d.is_zero() => None,
            Ok(_) => Some(format!("{kind:?} even={even} n={n}: determinant 0")),
            Err(e) => Some(format!("{kind:?} even={even} n={n}: {e}")),
        })
        .collect();
    Outcome::from_failures(jobs.len(), failures)
}

fn grid(max_n: u32) -> Vec<SumQuery> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for k in 2..=12u64 {
            for l in 1..k {
                out.push(q(SumKind::S, n, k, l));
                out.push(q(SumKind::Shat, n, k, l));
            }
        }
    }
    out
}

// 5. Exact values against the numeric oracle, 10^-30 at 192 bits.
fn oracle_sweep() -> Outcome {
    // 2^-100 < 10^-30
    let queries = grid(6);
    let failures: Vec<String> = queries
        .par_iter()
        .filter_map(|query| {
            let v = match evaluate(query) {
                Ok(v) => v,
                Err(e) => return Some(format!("{query}: {e}")),
            };
            let gap = oracle_gap(query, &v, 192);
            (!gap.abs_below_pow2(100)).then(|| format!("{query}: gap {}", gap.to_sci_string()))
        })
        .collect();
    Outcome::from_failures(queries.len(), failures)
}

fn s3_display(m: u32) -> AlgebraicPiMultiple {
    // 2(2m+1)!/π^{2m+1} · S(2m+1,3,1)
    //   = (-1)^{m+1} (4√3/3) Σ_j C(2m+1,2j+1) B_{2(m-j)} (2^{2(m-j)-1} - 1) / 3^{2j+1}
    let n = 2 * m + 1;
    let mut sum = Rational::zero();
    for j in 0..=m {
        let i = 2 * (m - j);
        sum += ri(binomial(n as u64, 2 * j as u64 + 1)) * bernoulli(i) * (rpow(2, i as i64 - 1) - ri(1))
            / rpow(3, 2 * j as i64 + 1);
    }
    let c = sign(m.is_multiple_of(2)) * r(4, 3) * sum / (ri(factorial(n)) * ri(2));
    let sqrt3 = CycloElement::trig(Trig::Cos, 1, 6).scale(&ri(2));
    AlgebraicPiMultiple::new(sqrt3.scale(&c), n)
}

// 6. Exact identities plus Hurwitz residuals.
fn identity_suite() -> Outcome {
    let mut failures = Vec::new();
    let mut checks = 0;

    let queries = grid(6);
    let results: Vec<Option<String>> = queries
        .par_iter()
        .flat_map_iter(|query| {
            let (n, k, l) = (query.n(), query.k(), query.l());
            let v = |kind, k, l| evaluate(&q(kind, n, k, l)).expect("evaluate");
            let here = v(query.kind(), k, l);
            // reflection
            let flip = match query.kind() {
                SumKind::S => n % 2 == 1,
                SumKind::Shat => n % 2 == 0,
            };
            let mirror = v(query.kind(), k, k - l);
            let mirror = if flip { mirror.neg() } else { mirror };
            let refl = (here != mirror).then(|| format!("reflection fails at {query}"));
            // splitting into residues mod 2k
            let a = v(SumKind::S, 2 * k, l);
            let b = v(SumKind::S, 2 * k, k - l);
            let b = if n % 2 == 1 { b.neg() } else { b };
            let split = match query.kind() {
                SumKind::S => a.checked_add(&b),
                SumKind::Shat => a.checked_sub(&b),
            }
            .expect("same exponent");
            let split = (here != split).then(|| format!("splitting fails at {query}"));
            [refl, split]
        })
        .collect();
    checks += results.len();
    failures.extend(results.into_iter().flatten());

    for m in 0..=15u32 {
        checks += 2;
        let mut lhs1 = Rational::zero();
        let mut lhs2 = Rational::zero();
        for j in 0..=m {
            let base =
                ri(binomial(2 * m as u64 + 2, 2 * j as u64)) * bernoulli(2 * j) * (rpow(2, 2 * j as i64 - 1) - ri(1));
            lhs1 += &base * rpow(9, -((m - j) as i64 + 1));
            lhs2 += &base * rpow(2, 2 * j as i64);
        }
        let b = bernoulli(2 * m + 2);
        let rhs1 = -&b * (rpow(4, m as i64) - ri(1) + rpow(4, m as i64) * rpow(3, -(2 * m as i64 + 1)));
        let rhs2 = -&b * (rpow(2, 2 * m as i64 + 1) - ri(1)) * (rpow(2, 2 * m as i64 + 2) - ri(1));
        if lhs1 != rhs1 {
            failures.push(format!("ninths identity fails at m={m}"));
        }
        if lhs2 != rhs2 {
            failures.push(format!("powers-of-four identity fails at m={m}"));
        }
    }

    let systems = Evaluator::systems_only();
    for m in 1..=6u32 {
        checks += 1;
        let query = q(SumKind::S, 2 * m + 1, 3, 1);
        match systems.evaluate(&query) {
            Ok(v) if v == s3_display(m) => {}
            Ok(v) => failures.push(format!("{query}: system gives {v}, display gives {}", s3_display(m))),
            Err(e) => failures.push(format!("{query}: {e}")),
        }
    }

    let ctx = PrecisionContext::new(192, 32);
    let mut points = Vec::new();
    for n in 2..=6u32 {
        for b in 2..=12i64 {
            for a in 1..b {
                if num_integer::gcd(a, b) == 1 {
                    points.push((n, r(a, b)));
                }
            }
        }
    }
    let hz: Vec<String> = points
        .par_iter()
        .filter_map(|(n, x)| {
            let res = multiplication_theorem_check(*n, x, &ctx);
            (!res.abs_below_pow2(160)).then(|| format!("multiplication theorem n={n} x={x}: {}", res.to_sci_string()))
        })
        .collect();
    let combos: Vec<String> = queries
        .par_iter()
        .filter_map(|query| {
            let res = hurwitz_combination_residual(query, &ctx);
            (!res.abs_below_pow2(160)).then(|| format!("Hurwitz combination {query}: {}", res.to_sci_string()))
        })
        .collect();
    checks += points.len() + queries.len();
    failures.extend(hz);
    failures.extend(combos);
    Outcome::from_failures(checks, failures)
}

/// `(Σ_{j≤J} (-1)^j cos(jπt)/j^s` or the sine analogue, at `bits` fractional bits.
fn partial_sum(kind: DirichletKind, s: u32, t: &Rational, sums: &HashMap<(u32, u64), Vec<Real>>, bits: u32) -> Real {
    let (p, qd) = (t.numer().try_into().unwrap_or(0i64), t.denom().try_into().unwrap_or(1u64));
    let period = 2 * qd;
    let by_residue = &sums[&(s, period)];
    let mut total = Real::zero(bits);
    for (res, a) in by_residue.iter().enumerate() {
        // (-1)^j e^{ijπt} = e^{ijπ(t+1)}
        let (c, sn) = cos_sin_pi(res as i64 * (p + qd as i64), qd, bits);
        let w = match kind {
            DirichletKind::DC => c,
            DirichletKind::DS => sn,
        };
        total = &total + &(&w * a);
    }
    total
}

fn residue_sums(s: u32, period: u64, terms: u64, bits: u32) -> Vec<Real> {
    let mut out = vec![Real::zero(bits); period as usize];
    let one = Real::from_int(1, bits);
    for j in 1..=terms {
        let slot = &mut out[(j % period) as usize];
        *slot = &*slot + &one.div_int(BigInt::from(j).pow(s));
    }
    out
}

// 7. Dirichlet closed forms against 10^6-term partial sums.
fn dirichlet_partial_sums() -> Outcome {
    const TERMS: u64 = 1_000_000;
    const BITS: u32 = 128;
    let pairs: Vec<(DirichletKind, u32, Rational)> = vec![
        (DirichletKind::DS, 3, r(1, 2)),
        (DirichletKind::DC, 2, r(0, 1)),
        (DirichletKind::DC, 2, r(1, 2)),
        (DirichletKind::DC, 2, r(1, 3)),
        (DirichletKind::DC, 2, r(1, 1)),
        (DirichletKind::DC, 2, r(-2, 3)),
        (DirichletKind::DC, 4, r(1, 4)),
        (DirichletKind::DC, 4, r(1, 6)),
        (DirichletKind::DC, 4, r(3, 4)),
        (DirichletKind::DC, 6, r(1, 3)),
        (DirichletKind::DC, 6, r(1, 5)),
        (DirichletKind::DC, 8, r(2, 5)),
        (DirichletKind::DS, 3, r(1, 3)),
        (DirichletKind::DS, 3, r(1, 4)),
        (DirichletKind::DS, 3, r(-1, 6)),
        (DirichletKind::DS, 5, r(1, 2)),
        (DirichletKind::DS, 5, r(2, 3)),
        (DirichletKind::DS, 5, r(1, 5)),
        (DirichletKind::DS, 7, r(3, 4)),
        (DirichletKind::DS, 7, r(1, 6)),
    ];
    let mut details = Vec::new();
    let mut failures = Vec::new();

    let pi3 = AlgebraicPiMultiple::rational(r(-1, 32), 3);
    let pi2 = AlgebraicPiMultiple::rational(r(-1, 12), 2);
    if dirichlet_closed_form(DirichletKind::DS, 3, &r(1, 2)).ok() != Some(pi3) {
        failures.push("DS(3, 1/2) != -π³/32".into());
    }
    if dirichlet_closed_form(DirichletKind::DC, 2, &r(0, 1)).ok() != Some(pi2) {
        failures.push("DC(2, 0) != -π²/12".into());
    }

    let keys: BTreeSet<(u32, u64)> =
        pairs.iter().map(|(_, s, t)| (*s, 2 * u64::try_from(t.denom()).unwrap())).collect();
    let sums: HashMap<(u32, u64), Vec<Real>> =
        keys.into_par_iter().map(|(s, period)| ((s, period), residue_sums(s, period, TERMS, BITS))).collect();

    for (kind, s, t) in &pairs {
        let exact = dirichlet_closed_form(*kind, *s, t).expect("closed form").decimal(BITS).unwrap();
        let partial = partial_sum(*kind, *s, t, &sums, BITS);
        let gap = (&exact - &partial).abs().to_f64();
        // Abel summation: partial sums of e^{ijπ(t+1)} are bounded by
        // 1/|cos(πt/2)|; at t = ±1 the cosine series has positive terms.
        let tf = t.numer().to_string().parse::<f64>().unwrap() / t.denom().to_string().parse::<f64>().unwrap();
        let half = (std::f64::consts::PI * tf / 2.0).cos().abs();
        let jf = TERMS as f64;
        let tail = if half < 1e-12 {
            1.0 / ((*s as f64 - 1.0) * jf.powi(*s as i32 - 1))
        } else {
            2.0 / (half * (jf + 1.0).powi(*s as i32))
        };
        let bound = tail + 1e-30;
        let line = format!("{kind:?}({s}, {t}): |closed - partial| = {gap:.3e}, bound {bound:.3e}");
        if gap < bound {
            details.push(line);
        } else {
            failures.push(line);
        }
    }
    let mut out = Outcome::from_failures(pairs.len() + 2, failures);
    out.details.extend(details);
    out
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 7] = [
        ("published modulus-8 and alternating modulus-4 values, exact", published_values),
        ("S(n,4,1) equals Euler's display for n = 2..11, exact", euler_family),
        ("exact Fourier coefficients, m <= 8, n <= 12; mean values m <= 10", fourier_exact),
        ("node determinants nonzero for n in 2..25", node_determinants),
        ("oracle sweep n 2..6, k 2..12, gap < 1e-30 at 192 bits", oracle_sweep),
        ("reflection, splitting, Bernoulli and Hurwitz identities", identity_suite),
        ("Dirichlet closed forms vs 1e6-term partial sums", dirichlet_partial_sums),
    ];
    let mut unexpected = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        let status = match (out.pass, out.expected_failure) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known erratum in published values)",
            (false, false) => "FAIL",
        };
        println!("[{}] criterion {}: {name} ({secs:.1}s)", status, i + 1);
        for d in &out.details {
            println!("    {d}");
        }
        if !out.pass && !out.expected_failure {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        println!("acceptance: no unexpected failures");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    }
}
