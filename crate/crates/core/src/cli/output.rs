use std::io::{self, Write};

use serde::Serialize;

use super::{Common, Format};
use crate::cyclofield::AlgebraicPiMultiple;
use crate::fourierpolys::{NormalizedPolynomial, PolyKind};
use crate::numerics::{alternating_hurwitz, hurwitz_direct, numeric_eval, PrecisionContext, Real};
use crate::numtheory::Rational;
use crate::sumsolver::SumQuery;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QueryEcho {
    pub kind: String,
    pub n: u32,
    pub k: u64,
    pub l: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactBlock {
    pub pi_exponent: u32,
    pub conductor: u32,
    /// Coefficients of `1, z, z², …` with `z = exp(2πi/conductor)`, as `p/q`.
    pub coeffs: Vec<String>,
    pub radical: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutputRecord {
    pub query: QueryEcho,
    pub exact: Option<ExactBlock>,
    pub decimal: String,
    pub verified: Option<bool>,
    pub residual: Option<String>,
    #[serde(skip)]
    label: String,
    #[serde(skip)]
    rendered: Option<String>,
}

/// Digits after the decimal point printed at `prec` bits.
pub fn decimal_digits(prec: u32) -> usize {
    ((prec.saturating_sub(8)) as f64 * std::f64::consts::LOG10_2).floor() as usize
}

fn ratio_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn exact_block(v: &AlgebraicPiMultiple, radical: bool) -> ExactBlock {
    ExactBlock {
        pi_exponent: v.pi_exponent(),
        conductor: v.conductor(),
        coeffs: v.coeff().coeffs().iter().map(ratio_string).collect(),
        radical: if radical { v.radical() } else { None },
    }
}

impl OutputRecord {
    fn build(
        query: QueryEcho,
        label: String,
        value: &AlgebraicPiMultiple,
        numeric: impl FnOnce(&PrecisionContext) -> Real,
        opts: &Common,
    ) -> Result<Self> {
        let prec = opts.prec;
        let digits = decimal_digits(prec);
        let ctx = PrecisionContext::with_working_bits(prec);
        if opts.numeric_only {
            let v = numeric(&ctx);
            return Ok(OutputRecord {
                query,
                exact: None,
                decimal: v.to_decimal_string(digits),
                verified: None,
                residual: None,
                label,
                rendered: None,
            });
        }
        let exact = value.decimal(prec + 16)?;
        let (verified, residual) = if opts.verify {
            let diff = (&exact.with_bits(prec) - &numeric(&ctx)).abs();
            (Some(diff.abs_below_pow2(prec - 64)), Some(diff.to_sci_string()))
        } else {
            (None, None)
        };
        let rendered = if opts.radical { value.to_string() } else { value.canonical() };
        Ok(OutputRecord {
            query,
            exact: Some(exact_block(value, opts.radical)),
            decimal: exact.to_decimal_string(digits),
            verified,
            residual,
            label,
            rendered: Some(rendered),
        })
    }

    pub(super) fn for_sum(q: &SumQuery, value: &AlgebraicPiMultiple, opts: &Common) -> Result<Self> {
        let echo = QueryEcho { kind: q.kind().to_string(), n: q.n(), k: q.k(), l: q.l() };
        Self::build(echo, q.to_string(), value, |ctx| numeric_eval(q, ctx), opts)
    }

    pub(super) fn for_hurwitz(
        n: u32,
        p: &Rational,
        alternating: bool,
        value: &AlgebraicPiMultiple,
        opts: &Common,
    ) -> Result<Self> {
        let l: u64 = p.numer().try_into().unwrap_or(0);
        let k: u64 = p.denom().try_into().unwrap_or(0);
        let kind = if alternating { "hurwitz_alternating" } else { "hurwitz" };
        let echo = QueryEcho { kind: kind.to_string(), n, k, l };
        let q = Rational::from_integer(1.into()) - p;
        let label = if alternating {
            format!("ζ̂({n},{p}) {} ζ̂({n},{q})", if n.is_multiple_of(2) { "-" } else { "+" })
        } else {
            format!("ζ({n},{p}) {} ζ({n},{q})", if n.is_multiple_of(2) { "+" } else { "-" })
        };
        let numeric = |ctx: &PrecisionContext| {
            let (a, b) = if alternating {
                (alternating_hurwitz(n, p, ctx), alternating_hurwitz(n, &q, ctx))
            } else {
                (hurwitz_direct(n, p, ctx), hurwitz_direct(n, &q, ctx))
            };
            // plain: a + (-1)^n b, alternating: a - (-1)^n b
            if n.is_multiple_of(2) != alternating {
                &a + &b
            } else {
                &a - &b
            }
        };
        Self::build(echo, label, value, numeric, opts)
    }

    pub fn write(&self, out: &mut impl Write, format: Format) -> io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer(&mut *out, self).map_err(io::Error::other)?;
                writeln!(out)
            }
            Format::Text => {
                match &self.rendered {
                    Some(r) => writeln!(out, "{} = {}", self.label, r)?,
                    None => writeln!(out, "{}", self.label)?,
                }
                if let Some(e) = &self.exact {
                    writeln!(out, "  conductor {}, pi exponent {}", e.conductor, e.pi_exponent)?;
                }
                writeln!(out, "  ≈ {}", self.decimal)?;
                if let (Some(v), Some(r)) = (self.verified, &self.residual) {
                    let status = if v { "verified" } else { "VERIFICATION FAILED" };
                    writeln!(out, "  {status}, residual {r}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Serialize)]
struct PolyEval {
    t: String,
    value: String,
}

#[derive(Serialize)]
struct PolyRecord {
    kind: &'static str,
    m: u32,
    coeffs: Vec<String>,
    polynomial: String,
    eval: Option<PolyEval>,
}

pub(super) fn write_poly(
    out: &mut impl Write,
    p: &NormalizedPolynomial,
    value: Option<&(Rational, Rational)>,
    format: Format,
) -> io::Result<()> {
    let name = match p.kind() {
        PolyKind::C => "C",
        PolyKind::S => "S",
    };
    match format {
        Format::Json => {
            let rec = PolyRecord {
                kind: if p.kind() == PolyKind::C { "c" } else { "s" },
                m: p.index(),
                coeffs: p.coeffs().iter().map(ratio_string).collect(),
                polynomial: p.to_string(),
                eval: value.map(|(v, t)| PolyEval { t: ratio_string(t), value: ratio_string(v) }),
            };
            serde_json::to_writer(&mut *out, &rec).map_err(io::Error::other)?;
            writeln!(out)
        }
        Format::Text => {
            writeln!(out, "{name}_{}(t) = {}", p.index(), p)?;
            if let Some((v, t)) = value {
                writeln!(out, "{name}_{}({t}) = {v}", p.index())?;
            }
            Ok(())
        }
    }
}
