use super::oracle::PrecisionContext;
use super::real::{pi, roots_of_unity, Real};
use crate::fourierpolys::{FourierKind, NormalizedPolynomial};
use crate::numtheory::Rational;

const LEVELS: u32 = 12;

/// `(1/π) ∫_{-π}^{π} p(x) trig(nx) dx` for the denormalized polynomial `p`,
/// by Romberg extrapolation of the trapezoid rule in `t = x/π`.
///
/// The integrand is entire, so extrapolating `LEVELS` times from `2^LEVELS`
/// panels is far below 128-bit accuracy for modest `n`. `n = 0` with
/// [`FourierKind::Cos`] gives the mean mode `F_0^c`.
pub fn quadrature_fourier(p: &NormalizedPolynomial, kind: FourierKind, n: u32, ctx: &PrecisionContext) -> Real {
    let w = ctx.working_bits() + 32;
    let panels: u32 = 1 << LEVELS;
    let half = panels / 2;
    let roots = roots_of_unity(panels, w);
    let coeffs: Vec<Real> = p.coeffs().iter().map(|c| Real::from_rational(c, w)).collect();

    // Node i sits at t = (i - half)/half; the angle nπt is 2π·n(i-half)/panels.
    let f = |i: u32| -> Real {
        let t = Real::from_rational(&Rational::new((i as i64 - half as i64).into(), (half as i64).into()), w);
        let value = coeffs.iter().rev().fold(Real::zero(w), |acc, c| &(&acc * &t) + c);
        let idx = (n as i64 * (i as i64 - half as i64)).rem_euclid(panels as i64) as usize;
        let (c, s) = &roots[idx];
        match kind {
            FourierKind::Cos => &value * c,
            FourierKind::Sin => &value * s,
        }
    };

    let values: Vec<Real> = (0..=panels).map(f).collect();
    let mut table: Vec<Real> = Vec::with_capacity(LEVELS as usize + 1);
    for level in 0..=LEVELS {
        let stride = (panels >> level) as usize;
        let mut sum = Real::zero(w);
        for (idx, v) in values.iter().enumerate().step_by(stride) {
            if idx == 0 || idx == panels as usize {
                sum = &sum + &v.div_int(2);
            } else {
                sum = &sum + v;
            }
        }
        // h = 2 / 2^level
        let mut row = vec![sum.mul_int(2).div_int(1u64 << level)];
        let mut factor = 1u64;
        for j in 1..=level as usize {
            factor *= 4;
            let prev = &table[j - 1];
            let cur = &row[j - 1];
            row.push((cur - prev).div_int(factor - 1) + cur.clone());
        }
        table = row;
    }
    let integral = table.pop().expect("Romberg table is never empty");
    let scale = pi(w).pow(p.pi_normalization());
    (&integral * &scale).with_bits(ctx.working_bits())
}
