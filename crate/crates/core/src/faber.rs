//! Monic Faber polynomials from the Laurent expansion of the inverse
//! exterior map `Psi(w) = c w + b_0 + b_1/w + b_2/w^2 + ...`, and the
//! coefficient distance between Faber and Chebyshev polynomials on level
//! curves.

use crate::basis::MonicPolynomial;
use crate::chebyshev::{chebyshev, ChebyshevOptions};
use crate::error::{Error, Result};
use crate::geometry::{BoundaryCurve, CurveFamily};
use crate::mpnum::{Complex, Context, Real};

#[derive(Clone, Debug)]
pub struct LaurentMap {
    /// Leading coefficient `c = Cap(E)`.
    pub capacity: Real,
    /// `b[k]` multiplies `w^{-k}` (`b[0]` is the constant term).
    pub b: Vec<Complex>,
}

impl LaurentMap {
    pub fn order(&self) -> usize {
        self.b.len() - 1
    }
}

/// `binom(a, j)` for real `a`.
fn binomial(ctx: &Context, a: &Real, j: usize) -> Real {
    let mut c = ctx.one();
    for i in 1..=j {
        c = c * (a - &ctx.int(i as i64 - 1)) / ctx.int(i as i64);
    }
    c
}

/// Laurent coefficients up to `w^{-order}` of the inverse exterior map of
/// `curve` (including its level `r`).
///
/// Supported: hypocycloids, power lemniscates `|z^m - 1| = r^m` and the
/// lune with `alpha = 1/2`.
pub fn laurent_of(curve: &BoundaryCurve, order: usize) -> Result<LaurentMap> {
    let ctx = curve.context();
    let mut b = vec![Complex::zero(ctx); order + 1];
    let r = match curve.family() {
        CurveFamily::Hypocycloid { m, r } => {
            // Psi(w) = w + w^{-(m-1)}/(m-1)
            if m - 1 <= order {
                b[m - 1] = Complex::from_real(ctx.ratio(1, (*m - 1) as i64));
            }
            r
        }
        CurveFamily::PowerLemniscate { m, r } => {
            // Psi(w) = (w^m + 1)^{1/m} = sum_j binom(1/m, j) w^{1 - m j}
            let a = ctx.ratio(1, *m as i64);
            let mut j = 1;
            while m * j - 1 <= order {
                b[m * j - 1] = Complex::from_real(binomial(ctx, &a, j));
                j += 1;
            }
            r
        }
        CurveFamily::Lune { alpha, r } if *alpha == ctx.ratio(1, 2) => {
            // Psi(w) = (w + sqrt(w^2 - 1))/2 = w + sum_j (-1)^j binom(1/2, j) w^{1-2j} / 2
            let half = ctx.ratio(1, 2);
            let mut j = 1;
            while 2 * j - 1 <= order {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                b[2 * j - 1] = Complex::from_real(binomial(ctx, &half, j) * sign / ctx.int(2));
                j += 1;
            }
            r
        }
        _ => return Err(Error::UnsupportedFamily(curve.label().to_string())),
    };
    // The level-r map is w -> Psi(r w): c = r, b_k -> b_k r^{-k}.
    for (k, bk) in b.iter_mut().enumerate().skip(1) {
        *bk = bk.scale(&r.powi(-(k as i32)));
    }
    Ok(LaurentMap { capacity: r.clone(), b })
}

/// `F_0..F_N` by `F_{n+1} = z F_n - sum_{j=0}^{n} b~_j F_{n-j} - n b~_n`
/// with `b~_j = c^j b_j`.
pub fn faber_polynomials(ctx: &Context, map: &LaurentMap, degree: usize) -> Result<Vec<MonicPolynomial>> {
    if degree > map.order() {
        return Err(Error::TruncationInsufficient { have: map.order(), need: degree });
    }
    let bt: Vec<Complex> = map.b.iter().enumerate().map(|(j, b)| b.scale(&map.capacity.powi(j as i32))).collect();
    // full coefficient vectors, index = power
    let mut fs: Vec<Vec<Complex>> = vec![vec![Complex::one(ctx)]];
    for n in 0..degree {
        let mut next = vec![Complex::zero(ctx); n + 2];
        for (k, a) in fs[n].iter().enumerate() {
            next[k + 1] += a;
        }
        for j in 0..=n {
            if bt[j].is_zero() {
                continue;
            }
            for (k, a) in fs[n - j].iter().enumerate() {
                next[k] -= &(&bt[j] * a);
            }
        }
        let konst = bt[n].scale(&ctx.int(n as i64));
        next[0] -= &konst;
        fs.push(next);
    }
    Ok(fs
        .into_iter()
        .map(|mut c| {
            c.pop();
            MonicPolynomial::new(c)
        })
        .collect())
}

/// `max_k |a_k(P) - a_k(Q)|`, missing coefficients read as zero.
pub fn coeff_inf_distance(ctx: &Context, p: &MonicPolynomial, q: &MonicPolynomial) -> Real {
    let top = p.degree().max(q.degree());
    (0..=top).fold(ctx.zero(), |m, k| m.max((p.coeff(ctx, k) - q.coeff(ctx, k)).abs()))
}

/// Families with explicit exterior maps used in the Faber comparison.
#[derive(Clone, Debug, PartialEq)]
pub enum SweepFamily {
    /// `|z^2 - 1| = r^2`.
    Lemniscate,
    Hypocycloid(usize),
    /// Lune with `alpha = 1/2`.
    LuneHalf,
}

impl SweepFamily {
    pub fn level_curve(&self, ctx: &Context, r: Real) -> Result<BoundaryCurve> {
        match self {
            SweepFamily::Lemniscate => BoundaryCurve::power_lemniscate(ctx, 2, r),
            SweepFamily::Hypocycloid(m) => BoundaryCurve::hypocycloid(ctx, *m, r),
            SweepFamily::LuneHalf => BoundaryCurve::lune(ctx, ctx.ratio(1, 2), r),
        }
    }

    pub fn name(&self) -> String {
        match self {
            SweepFamily::Lemniscate => "lemniscate".into(),
            SweepFamily::Hypocycloid(m) => format!("hypocycloid-{m}"),
            SweepFamily::LuneHalf => "lune-1/2".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepPoint {
    pub r: Real,
    pub distance: Result<Real, String>,
    /// Distance below the solver threshold: only an upper bound.
    pub censored: bool,
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub family: SweepFamily,
    pub degree: usize,
    pub points: Vec<SweepPoint>,
    /// Least-squares slope of `log distance` against `log r`.
    pub slope: Option<f64>,
}

/// `n` points `lo (hi/lo)^{i/(n-1)}`.
pub fn log_spaced(ctx: &Context, lo: &Real, hi: &Real, n: usize) -> Vec<Real> {
    if n == 1 {
        return vec![lo.clone()];
    }
    let ratio = (hi / lo).ln();
    (0..n).map(|i| lo * (&ratio * ctx.ratio(i as i64, (n - 1) as i64)).exp()).collect()
}

/// Monic Faber polynomial `F_N` of the base set (`r = 1`) of `family`.
pub fn faber_reference(ctx: &Context, family: &SweepFamily, degree: usize) -> Result<MonicPolynomial> {
    let base = family.level_curve(ctx, ctx.one())?;
    Ok(faber_polynomials(ctx, &laurent_of(&base, degree)?, degree)?.pop().expect("degree + 1 polynomials"))
}

/// One sweep point: `||F_N - T_N^{E_r}||_inf` with `faber = F_N`.
pub fn sweep_point(ctx: &Context, family: &SweepFamily, faber: &MonicPolynomial, r: &Real, opts: &ChebyshevOptions) -> SweepPoint {
    let distance = family
        .level_curve(ctx, r.clone())
        .and_then(|curve| chebyshev(&curve, faber.degree(), opts))
        .map(|rec| coeff_inf_distance(ctx, &rec.polynomial, faber))
        .map_err(|e| e.to_string());
    let censored = distance.as_ref().is_ok_and(|d| *d < opts.threshold);
    SweepPoint { r: r.clone(), distance, censored }
}

/// Distance `||F_N^E - T_N^{E_r}||_inf` along `r_grid`.
pub fn faber_connection_sweep(ctx: &Context, family: &SweepFamily, degree: usize, r_grid: &[Real], opts: &ChebyshevOptions) -> Result<SweepResult> {
    check_levels(r_grid)?;
    let faber = faber_reference(ctx, family, degree)?;
    let points: Vec<SweepPoint> = r_grid.iter().map(|r| sweep_point(ctx, family, &faber, r, opts)).collect();
    let slope = fit_slope(&points);
    Ok(SweepResult { family: family.clone(), degree, points, slope })
}

pub fn check_levels(r_grid: &[Real]) -> Result<()> {
    if r_grid.is_empty() || r_grid.iter().any(|r| *r <= 1) {
        return Err(Error::InvalidParameter("sweep levels must exceed 1".into()));
    }
    Ok(())
}

/// Least-squares slope of `log distance` against `log r` over the
/// uncensored, successful points.
pub fn fit_slope(points: &[SweepPoint]) -> Option<f64> {
    let xy: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| !p.censored)
        .filter_map(|p| p.distance.as_ref().ok().map(|d| (p.r.to_f64(), d.to_f64())))
        .collect();
    loglog_slope(&xy)
}

/// Least-squares slope of log y against log x. Pairs with nonpositive or
/// nonfinite entries are dropped; `None` when fewer than two remain.
pub fn loglog_slope(xy: &[(f64, f64)]) -> Option<f64> {
    let xy: Vec<(f64, f64)> = xy.iter().map(|&(x, y)| (x.ln(), y.ln())).filter(|(x, y)| x.is_finite() && y.is_finite()).collect();
    if xy.len() < 2 {
        return None;
    }
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::new(60).unwrap()
    }

    #[test]
    fn lemniscate_coefficients() {
        let ctx = ctx();
        let l = BoundaryCurve::power_lemniscate(&ctx, 2, ctx.one()).unwrap();
        let map = laurent_of(&l, 5).unwrap();
        // oracle: w (1 + w^-2)^{1/2} = w + w^-1/2 - w^-3/8 + w^-5/16
        assert_eq!(map.b[1], Complex::from_real(ctx.ratio(1, 2)));
        assert!(map.b[2].is_zero());
        assert_eq!(map.b[3], Complex::from_real(-ctx.ratio(1, 8)));
        assert_eq!(map.b[5], Complex::from_real(ctx.ratio(1, 16)));
        assert_eq!(map.capacity, ctx.one());
    }

    #[test]
    fn hypocycloid_coefficients() {
        let ctx = ctx();
        let h = BoundaryCurve::hypocycloid(&ctx, 5, ctx.one()).unwrap();
        let map = laurent_of(&h, 8).unwrap();
        for (k, b) in map.b.iter().enumerate() {
            if k == 4 {
                assert_eq!(*b, Complex::from_real(ctx.ratio(1, 4)));
            } else {
                assert!(b.is_zero());
            }
        }
    }

    #[test]
    fn unsupported_family() {
        let ctx = ctx();
        let sq = BoundaryCurve::polygon(&ctx, 4).unwrap();
        assert!(matches!(laurent_of(&sq, 4), Err(Error::UnsupportedFamily(_))));
        let c = BoundaryCurve::lune(&ctx, ctx.ratio(3, 2), ctx.one()).unwrap();
        assert!(laurent_of(&c, 4).is_err());
    }

    #[test]
    fn lemniscate_faber_closed_forms() {
        let ctx = ctx();
        let l = BoundaryCurve::power_lemniscate(&ctx, 2, ctx.one()).unwrap();
        let fs = faber_polynomials(&ctx, &laurent_of(&l, 4).unwrap(), 4).unwrap();
        let f3 = MonicPolynomial::from_real(vec![ctx.zero(), -ctx.ratio(3, 2), ctx.zero()]);
        assert_eq!(fs[3], f3);
        let f4 = MonicPolynomial::from_real(vec![ctx.int(-1), ctx.zero()]).pow(2, &ctx);
        assert!(coeff_inf_distance(&ctx, &fs[4], &f4).is_zero());
        assert_eq!(fs[0].degree(), 0);
        assert_eq!(fs[1], MonicPolynomial::monomial(&ctx, 1));
    }

    #[test]
    fn level_curves_share_faber_polynomials() {
        let ctx = ctx();
        let a = laurent_of(&BoundaryCurve::power_lemniscate(&ctx, 2, ctx.one()).unwrap(), 7).unwrap();
        let b = laurent_of(&BoundaryCurve::power_lemniscate(&ctx, 2, ctx.int(3)).unwrap(), 7).unwrap();
        let fa = faber_polynomials(&ctx, &a, 7).unwrap();
        let fb = faber_polynomials(&ctx, &b, 7).unwrap();
        assert!(coeff_inf_distance(&ctx, &fa[7], &fb[7]) <= ctx.tol(8));
    }

    #[test]
    fn truncation_checked() {
        let ctx = ctx();
        let l = BoundaryCurve::power_lemniscate(&ctx, 2, ctx.one()).unwrap();
        assert!(matches!(
            faber_polynomials(&ctx, &laurent_of(&l, 3).unwrap(), 5),
            Err(Error::TruncationInsufficient { have: 3, need: 5 })
        ));
    }

    #[test]
    fn distance_examples() {
        let ctx = ctx();
        let p = MonicPolynomial::from_real(vec![ctx.zero(), -ctx.ratio(6, 5), ctx.zero()]);
        let q = MonicPolynomial::from_real(vec![ctx.zero(), -ctx.ratio(3, 2), ctx.zero()]);
        assert!(coeff_inf_distance(&ctx, &p, &p).is_zero());
        assert!((coeff_inf_distance(&ctx, &p, &q) - ctx.ratio(3, 10)).abs() <= ctx.tol(2));
        let z2 = MonicPolynomial::monomial(&ctx, 2);
        let z2m1 = MonicPolynomial::from_real(vec![ctx.int(-1), ctx.zero()]);
        assert_eq!(coeff_inf_distance(&ctx, &z2, &z2m1), ctx.one());
    }

    #[test]
    fn log_spacing_endpoints() {
        let ctx = Context::new(30).unwrap();
        let g = log_spaced(&ctx, &ctx.ratio(3, 2), &ctx.int(4), 8);
        assert_eq!(g.len(), 8);
        assert!((&g[0] - &ctx.ratio(3, 2)).abs() <= ctx.tol(3));
        assert!((&g[7] - &ctx.int(4)).abs() <= ctx.tol(3));
    }

    #[test]
    fn slope_of_exact_power_law() {
        let ctx = Context::new(30).unwrap();
        let pts: Vec<SweepPoint> = [2, 3, 5]
            .iter()
            .map(|&r| SweepPoint { r: ctx.int(r), distance: Ok(ctx.int(r).powi(-4)), censored: false })
            .collect();
        assert!((fit_slope(&pts).unwrap() + 4.0).abs() < 1e-12);
    }

    #[test]
    fn loglog_drops_nonpositive() {
        let xy = [(5.0, 3.0 / 5f64.sqrt()), (10.0, 3.0 / 10f64.sqrt()), (25.0, 0.0), (40.0, 3.0 / 40f64.sqrt())];
        assert!((loglog_slope(&xy).unwrap() + 0.5).abs() < 1e-12);
        assert_eq!(loglog_slope(&[(2.0, 1.0), (2.0, 3.0)]), None);
    }
}
