//! Polynomial zeros by Aberth–Ehrlich simultaneous iteration, and simple
//! statistics of zero sets relative to a boundary curve.

use crate::basis::MonicPolynomial;
use crate::error::{Error, Result};
use crate::geometry::BoundaryCurve;
use crate::mpnum::{Complex, Context, Real};

pub const MAX_SWEEPS: usize = 500;

#[derive(Clone, Debug)]
pub struct ZeroSet {
    pub degree: usize,
    /// Zeros with multiplicity.
    pub zeros: Vec<Complex>,
    /// `|p(z_j)|` per zero.
    pub residuals: Vec<Real>,
}

impl ZeroSet {
    pub fn sum(&self, ctx: &Context) -> Complex {
        self.zeros.iter().fold(Complex::zero(ctx), |acc, z| acc + z)
    }

    pub fn product(&self, ctx: &Context) -> Complex {
        self.zeros.iter().fold(Complex::one(ctx), |acc, z| acc * z)
    }
}

/// All zeros of a monic polynomial.
///
/// Exact zero trailing coefficients are factored out first, so a factor
/// `z^l` yields exactly `l` zeros at the origin. The rest is found with
/// Aberth–Ehrlich iteration from a circle of radius `1 + max |a_k|`; a zero
/// stops moving once its correction is below `10^(10-P)` times that radius
/// or its residual is at the rounding level of the evaluation. Clusters
/// closer than `10^(-P/4)` (relative) are collapsed to their centroid.
pub fn polynomial_zeros(ctx: &Context, poly: &MonicPolynomial) -> Result<ZeroSet> {
    let n = poly.degree();
    if n == 0 {
        return Err(Error::InvalidParameter("zeros of a constant polynomial".into()));
    }
    let lower = poly.lower_coeffs();
    let origin = lower.iter().take_while(|a| a.is_zero()).count();
    let reduced = MonicPolynomial::new(lower[origin..].to_vec());
    let mut zeros = vec![Complex::zero(ctx); origin];
    if reduced.degree() > 0 {
        zeros.extend(aberth(ctx, &reduced)?);
    }
    let residuals = zeros.iter().map(|z| poly.eval(z).abs()).collect();
    Ok(ZeroSet { degree: n, zeros, residuals })
}

fn aberth(ctx: &Context, poly: &MonicPolynomial) -> Result<Vec<Complex>> {
    let n = poly.degree();
    let coeff_abs: Vec<Real> = poly.lower_coeffs().iter().map(Complex::abs).collect();
    let radius = coeff_abs.iter().fold(ctx.zero(), |m, a| m.max(a.clone())) + &ctx.one();
    let step_tol = &radius * &ctx.tol(10);
    // rounding level of Horner evaluation, relative to sum |a_k| |z|^k
    let resid_scale = ctx.tol(3) * (n as i32 + 1);

    // Start points on a circle, offset so that no start sits on a symmetry axis.
    let two_pi = ctx.two_pi();
    let offset = ctx.parse("0.4")?;
    let mut z: Vec<Complex> = (0..n)
        .map(|k| {
            let theta = &two_pi * &(ctx.int(k as i64) + &offset) / &ctx.int(n as i64);
            Complex::from_polar(&radius, &theta)
        })
        .collect();
    let mut done = vec![false; n];

    for _ in 0..MAX_SWEEPS {
        let mut all_done = true;
        for j in 0..n {
            if done[j] {
                continue;
            }
            let (p, dp) = poly.eval_with_derivative(&z[j]);
            let mag = z[j].abs();
            let bound = magnitude_bound(ctx, &coeff_abs, &mag);
            if p.abs() <= &resid_scale * &bound {
                done[j] = true;
                continue;
            }
            if dp.is_zero() {
                // nudge off a critical point
                z[j] = &z[j] + &Complex::new(&radius * &ctx.tol(ctx.digits() as i32 / 2), ctx.zero());
                all_done = false;
                continue;
            }
            let newton = &p / &dp;
            let mut repulsion = Complex::zero(ctx);
            for k in 0..n {
                if k != j {
                    let d = &z[j] - &z[k];
                    if !d.is_zero() {
                        repulsion += &d.recip();
                    }
                }
            }
            let denom = Complex::one(ctx) - &newton * &repulsion;
            let step = if denom.is_zero() { newton } else { &newton / &denom };
            if step.abs() <= step_tol {
                done[j] = true;
            } else {
                all_done = false;
            }
            z[j] = &z[j] - &step;
        }
        if all_done {
            return Ok(collapse_clusters(ctx, z));
        }
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

fn magnitude_bound(ctx: &Context, coeff_abs: &[Real], r: &Real) -> Real {
    // sum_k |a_k| r^k with the implicit leading 1
    let mut acc = ctx.one();
    for a in coeff_abs.iter().rev() {
        acc = acc * r + a;
    }
    acc
}

fn collapse_clusters(ctx: &Context, zeros: Vec<Complex>) -> Vec<Complex> {
    let tol = ctx.pow10(-(ctx.digits() as i32) / 4);
    let n = zeros.len();
    let mut cluster: Vec<usize> = (0..n).collect();
    // union-find by repeated relabelling; n is small
    for i in 0..n {
        for j in i + 1..n {
            let scale = ctx.one().max(zeros[i].abs());
            if (&zeros[i] - &zeros[j]).abs() <= &tol * &scale {
                let (a, b) = (cluster[i], cluster[j]);
                if a != b {
                    for c in cluster.iter_mut() {
                        if *c == b {
                            *c = a;
                        }
                    }
                }
            }
        }
    }
    let mut out = zeros.clone();
    for label in 0..n {
        let members: Vec<usize> = (0..n).filter(|&i| cluster[i] == label).collect();
        if members.len() > 1 {
            let sum = members.iter().fold(Complex::zero(ctx), |acc, &i| acc + &zeros[i]);
            let centroid = &sum / &ctx.int(members.len() as i64);
            for &i in &members {
                out[i] = centroid.clone();
            }
        }
    }
    out
}

/// Empirical interior-mass statistics of a zero set.
#[derive(Clone, Debug)]
pub struct ZeroSummary {
    /// `(s, fraction of zeros with dist(z, curve) >= (1 - s) * diameter / 2)`.
    pub interior_fractions: Vec<(f64, f64)>,
    /// Smallest distance of any zero to the sampled curve.
    pub min_distance: f64,
    /// Diameter of the sampled curve.
    pub diameter: f64,
}

pub const SUMMARY_SHRINK_FACTORS: [f64; 3] = [0.5, 0.75, 0.9];
const SUMMARY_SAMPLES: usize = 4096;

/// Distances to the curve are measured against a 4096-segment polyline in
/// double precision; these are plotting diagnostics, not solver inputs.
pub fn zero_measure_summary(zs: &ZeroSet, curve: &BoundaryCurve) -> ZeroSummary {
    let poly = curve.sample_f64(SUMMARY_SAMPLES);
    let mut diameter: f64 = 0.0;
    for (i, a) in poly.iter().enumerate() {
        for b in &poly[i + 1..] {
            diameter = diameter.max(((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt());
        }
    }
    let dists: Vec<f64> = zs.zeros.iter().map(|z| polyline_distance(&poly, z.to_f64_pair())).collect();
    let count = dists.len().max(1) as f64;
    let interior_fractions = SUMMARY_SHRINK_FACTORS
        .iter()
        .map(|&s| {
            let cut = (1.0 - s) * diameter / 2.0;
            (s, dists.iter().filter(|&&d| d >= cut).count() as f64 / count)
        })
        .collect();
    let min_distance = dists.iter().copied().fold(f64::INFINITY, f64::min);
    ZeroSummary { interior_fractions, min_distance, diameter }
}

/// Fraction of zeros within `eps` of the curve or of any of `extra` points.
pub fn fraction_near(zs: &ZeroSet, curve: &BoundaryCurve, eps: f64, extra: &[(f64, f64)]) -> f64 {
    let poly = curve.sample_f64(SUMMARY_SAMPLES);
    let near = zs
        .zeros
        .iter()
        .filter(|z| {
            let p = z.to_f64_pair();
            polyline_distance(&poly, p) <= eps || extra.iter().any(|q| ((p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)).sqrt() <= eps)
        })
        .count();
    near as f64 / zs.zeros.len().max(1) as f64
}

fn polyline_distance(poly: &[(f64, f64)], p: (f64, f64)) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| segment_distance(poly[i], poly[(i + 1) % n], p))
        .fold(f64::INFINITY, f64::min)
}

fn segment_distance(a: (f64, f64), b: (f64, f64), p: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let s = if len2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0) };
    let (qx, qy) = (a.0 + s * dx, a.1 + s * dy);
    ((p.0 - qx).powi(2) + (p.1 - qy).powi(2)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::new(60).unwrap()
    }

    fn sorted_by_re(zs: &ZeroSet) -> Vec<(f64, f64)> {
        let mut v: Vec<(f64, f64)> = zs.zeros.iter().map(Complex::to_f64_pair).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn double_roots_of_lemniscate_square() {
        let ctx = ctx();
        let p = MonicPolynomial::from_real(vec![ctx.int(-1), ctx.int(0)]).pow(2, &ctx);
        let zs = polynomial_zeros(&ctx, &p).unwrap();
        let v = sorted_by_re(&zs);
        assert_eq!(v.len(), 4);
        for (z, e) in v.iter().zip([-1.0, -1.0, 1.0, 1.0]) {
            assert!((z.0 - e).abs() < 1e-14 && z.1.abs() < 1e-14, "{z:?}");
        }
    }

    #[test]
    fn cubic_from_closed_form() {
        let ctx = ctx();
        // z (z^2 - 6/5); oracle: quadratic formula gives +-sqrt(6/5)
        let p = MonicPolynomial::from_real(vec![ctx.int(0), -ctx.ratio(6, 5), ctx.int(0)]);
        let zs = polynomial_zeros(&ctx, &p).unwrap();
        let root = ctx.ratio(6, 5).sqrt();
        let mut hits = [false; 3];
        for z in &zs.zeros {
            if z.abs() <= ctx.tol(10) {
                hits[0] = true;
            } else if (&z.re - &root).abs() <= ctx.tol(10) && z.im.abs() <= ctx.tol(10) {
                hits[1] = true;
            } else if (&z.re + &root).abs() <= ctx.tol(10) && z.im.abs() <= ctx.tol(10) {
                hits[2] = true;
            }
        }
        assert_eq!(hits, [true; 3]);
    }

    #[test]
    fn pure_power_has_all_zeros_at_origin() {
        let ctx = ctx();
        let p = MonicPolynomial::monomial(&ctx, 7);
        let zs = polynomial_zeros(&ctx, &p).unwrap();
        assert_eq!(zs.zeros.len(), 7);
        assert!(zs.zeros.iter().all(Complex::is_zero));
    }

    #[test]
    fn vieta_on_complex_coefficients() {
        let ctx = ctx();
        let coeffs = vec![
            Complex::new(ctx.ratio(1, 3), ctx.int(2)),
            Complex::new(ctx.int(-1), ctx.ratio(1, 7)),
            Complex::new(ctx.int(0), ctx.int(-3)),
            Complex::new(ctx.ratio(5, 2), ctx.int(1)),
        ];
        let p = MonicPolynomial::new(coeffs.clone());
        let zs = polynomial_zeros(&ctx, &p).unwrap();
        let tol = ctx.tol(6) * (ctx.one() + coeffs[3].abs());
        assert!((zs.sum(&ctx) + &coeffs[3]).abs() <= tol);
        assert!((zs.product(&ctx) - &coeffs[0]).abs() <= ctx.tol(6) * (ctx.one() + coeffs[0].abs()));
        let mag: Real = coeffs.iter().fold(ctx.one(), |a, c| a + c.abs());
        for r in &zs.residuals {
            assert!(*r <= ctx.tol(6) * &mag);
        }
    }

    #[test]
    fn constant_rejected() {
        let ctx = ctx();
        assert!(polynomial_zeros(&ctx, &MonicPolynomial::monomial(&ctx, 0)).is_err());
    }

    #[test]
    fn summary_on_unit_circle() {
        let ctx = Context::new(30).unwrap();
        let circle = BoundaryCurve::lune(&ctx, ctx.int(1), ctx.int(1)).unwrap();
        let zs = polynomial_zeros(&ctx, &MonicPolynomial::monomial(&ctx, 3)).unwrap();
        let s = zero_measure_summary(&zs, &circle);
        assert!((s.min_distance - 1.0).abs() < 1e-5);
        assert!(s.interior_fractions.iter().all(|&(_, f)| f == 1.0));
        assert!((s.diameter - 2.0).abs() < 1e-5);
    }

    #[test]
    fn summary_on_lemniscate_zeros_on_curve() {
        let ctx = Context::new(30).unwrap();
        let lem = BoundaryCurve::power_lemniscate(&ctx, 2, ctx.int(1)).unwrap();
        // 0 and +-sqrt(2) lie on |z^2 - 1| = 1
        let p = MonicPolynomial::from_real(vec![ctx.int(0), ctx.int(-2), ctx.int(0)]);
        let zs = polynomial_zeros(&ctx, &p).unwrap();
        let s = zero_measure_summary(&zs, &lem);
        assert!(s.min_distance < 1e-6);
        assert_eq!(fraction_near(&zs, &lem, 1e-6, &[]), 1.0);
    }
}
