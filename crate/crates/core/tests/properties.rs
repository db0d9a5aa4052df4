use complex_chebyshev::basis::{build_basis, CurveProblem, MonicPolynomial, SymmetryMode};
use complex_chebyshev::chebyshev::{chebyshev, ChebyshevOptions};
use complex_chebyshev::geometry::BoundaryCurve;
use complex_chebyshev::mpnum::{lu_solve, Matrix};
use complex_chebyshev::remez::{assemble_a, assemble_cf, exchange_step, global_max_search, initialize_reference, trial_coefficients};
use complex_chebyshev::remez::search::SearchOptions;
use complex_chebyshev::zeros::polynomial_zeros;
use complex_chebyshev::{Complex, Context, Real};
use proptest::prelude::*;

fn ctx() -> Context {
    Context::new(40).unwrap()
}

fn dist(a: &Complex, b: &Complex) -> Real {
    (a - b).abs()
}

fn curves(ctx: &Context) -> Vec<BoundaryCurve> {
    vec![
        BoundaryCurve::polygon(ctx, 3).unwrap(),
        BoundaryCurve::polygon(ctx, 5).unwrap(),
        BoundaryCurve::hypocycloid(ctx, 4, ctx.one()).unwrap(),
        BoundaryCurve::hypocycloid(ctx, 5, ctx.ratio(3, 2)).unwrap(),
        BoundaryCurve::lune(ctx, ctx.ratio(1, 2), ctx.one()).unwrap(),
        BoundaryCurve::lune(ctx, ctx.ratio(3, 2), ctx.int(2)).unwrap(),
        BoundaryCurve::power_lemniscate(ctx, 2, ctx.ratio(3, 2)).unwrap(),
        BoundaryCurve::power_lemniscate(ctx, 3, ctx.one()).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rotation_symmetry(t in 0.0f64..1.0) {
        let ctx = ctx();
        let t = ctx.from_f64(t);
        for c in curves(&ctx) {
            let m = c.rotation_order();
            let rot = Complex::cis(&(ctx.two_pi() / ctx.int(m as i64)));
            let shifted = c.eval(&(&t + &ctx.ratio(1, m as i64)).fract_positive());
            prop_assert!(dist(&shifted, &(&rot * &c.eval(&t))) <= ctx.tol(8), "{}", c.label());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn defining_equation_residuals(t in 0.0f64..1.0, ri in 0usize..3) {
        let ctx = ctx();
        let t = ctx.from_f64(t);
        let r = [ctx.one(), ctx.ratio(3, 2), ctx.int(3)][ri].clone();
        // |z^m - 1| = r^m
        for m in 2..=4usize {
            let c = BoundaryCurve::power_lemniscate(&ctx, m, r.clone()).unwrap();
            let z = c.eval(&t);
            let v = (z.powi(m as i64) - Complex::one(&ctx)).abs();
            prop_assert!((v - r.powi(m as i32)).abs() <= ctx.tol(8));
        }
        // hypocycloid: w + w^{1-m}/(m-1) has w = r e^{2 pi i t}; recover w from the Laurent map by Newton
        let m = 4usize;
        let c = BoundaryCurve::hypocycloid(&ctx, m, r.clone()).unwrap();
        let z = c.eval(&t);
        let mut w = Complex::from_polar(&r, &(ctx.two_pi() * &t)).scale(&ctx.ratio(101, 100));
        for _ in 0..60 {
            let g = &w + &w.powi(1 - m as i64).scale(&ctx.ratio(1, m as i64 - 1)) - &z;
            let dg = Complex::one(&ctx) - w.powi(-(m as i64));
            w = &w - &(&g * &dg.recip());
        }
        prop_assert!((w.abs() - &r).abs() <= ctx.tol(8));
    }

    #[test]
    fn polynomial_lemniscate_residual(t in 0.0f64..1.0) {
        let ctx = Context::new(30).unwrap();
        let coeffs = vec![ctx.one(), ctx.one(), ctx.zero(), ctx.one()].into_iter().map(Complex::from_real).collect();
        let rho = ctx.int(2);
        let c = BoundaryCurve::polynomial_lemniscate(&ctx, coeffs, rho.clone(), None).unwrap();
        let z = c.eval(&ctx.from_f64(t));
        let p = &(&z.powi(3) + &z) + &Complex::one(&ctx);
        prop_assert!((p.abs() - rho).abs() <= ctx.tol(8));
    }

    #[test]
    fn lu_residual(seed in proptest::collection::vec(-1.0f64..1.0, 64), n in 1usize..=8) {
        let ctx = ctx();
        let rows: Vec<Vec<Real>> = (0..n)
            .map(|i| (0..n).map(|j| ctx.from_f64(seed[i * 8 + j] + if i == j { 3.0 } else { 0.0 })).collect())
            .collect();
        let a = Matrix::from_rows(rows).unwrap();
        let b: Vec<Real> = (0..n).map(|i| ctx.from_f64(seed[(i * 7 + 3) % 64])).collect();
        let x = lu_solve(&ctx, &a, &b).unwrap();
        let ax = a.mul_vec(&x).unwrap();
        for (u, v) in ax.iter().zip(&b) {
            prop_assert!((u - v).abs() <= ctx.tol(8));
        }
    }

    #[test]
    fn vieta_identities(re in proptest::collection::vec(-2.0f64..2.0, 1..9), im in proptest::collection::vec(-2.0f64..2.0, 8)) {
        let ctx = ctx();
        let coeffs: Vec<Complex> = re.iter().zip(&im).map(|(a, b)| Complex::new(ctx.from_f64(*a), ctx.from_f64(*b))).collect();
        let n = coeffs.len();
        let p = MonicPolynomial::new(coeffs.clone());
        let zs = polynomial_zeros(&ctx, &p).unwrap();
        prop_assert_eq!(zs.zeros.len(), n);
        let top = &coeffs[n - 1];
        let tol = ctx.tol(6) * (ctx.one() + top.abs());
        prop_assert!(dist(&zs.sum(&ctx), &(-top.clone())) <= tol);
        let sign = if n % 2 == 0 { ctx.one() } else { -ctx.one() };
        prop_assert!(dist(&zs.product(&ctx), &coeffs[0].scale(&sign)) <= ctx.tol(6) * (ctx.one() + coeffs[0].abs()));
    }
}

#[test]
fn polygon_side_lengths() {
    let ctx = ctx();
    for m in 3..=8usize {
        let c = BoundaryCurve::polygon(&ctx, m).unwrap();
        let side = (ctx.pi() / ctx.int(m as i64)).sin() * 2;
        for k in 0..m {
            let a = c.eval(&ctx.ratio(k as i64, m as i64));
            let b = c.eval(&ctx.ratio(((k + 1) % m) as i64, m as i64));
            assert!((dist(&a, &b) - &side).abs() <= ctx.tol(8));
        }
    }
}

#[test]
fn capacity_scaling() {
    let ctx = ctx();
    let r = ctx.ratio(7, 3);
    let h1 = BoundaryCurve::hypocycloid(&ctx, 5, ctx.one()).unwrap();
    let hr = BoundaryCurve::hypocycloid(&ctx, 5, r.clone()).unwrap();
    assert_eq!(*hr.capacity(), &r * h1.capacity());
    let c1 = BoundaryCurve::lune(&ctx, ctx.ratio(3, 2), ctx.one()).unwrap();
    let cr = BoundaryCurve::lune(&ctx, ctx.ratio(3, 2), r.clone()).unwrap();
    assert_eq!(*cr.capacity(), &r * c1.capacity());
}

/// Runs the exchange by hand and checks the dual invariants after every step.
fn check_iteration_invariants(curve: &BoundaryCurve, degree: usize, mode: SymmetryMode) {
    let ctx = curve.context();
    let threshold = ctx.pow10(-10);
    let spec = build_basis(curve, degree, mode).unwrap();
    let problem = CurveProblem { curve, spec: &spec };
    let opts = SearchOptions::for_threshold(ctx, &threshold, spec.n_basis());
    let mut state = initialize_reference(&problem).unwrap();
    let mut hs: Vec<Real> = Vec::new();
    let mut uppers: Vec<Real> = Vec::new();
    for _ in 0..200 {
        let sum = state.r.iter().fold(ctx.zero(), |a, r| a + r);
        assert!((sum - ctx.one()).abs() <= ctx.tol(8));
        assert!(state.r.iter().all(|r| *r >= -ctx.tol(8)));
        let a = assemble_a(&problem, &state.t, &state.alpha);
        let ar = a.mul_vec(&state.r).unwrap();
        for (k, v) in ar.iter().enumerate() {
            let target = if k == 0 { ctx.one() } else { ctx.zero() };
            assert!((v - &target).abs() <= ctx.tol(8));
        }
        let (h, lambda) = trial_coefficients(&problem, &state).unwrap();
        let cf = assemble_cf(&problem, &state.t, &state.alpha);
        let dual = cf.iter().zip(&state.r).fold(ctx.zero(), |a, (c, r)| a + c * r);
        assert!((&h - &dual).abs() <= ctx.tol(6) * h.abs().max(ctx.one()));
        if let Some(prev) = hs.last() {
            assert!(h >= prev - &ctx.tol(8), "h decreased");
        }
        let ext = global_max_search(&problem, &lambda, &opts);
        hs.push(h.clone());
        uppers.push(ext.value.clone());
        if &ext.value - &h < &threshold * &h {
            break;
        }
        state = exchange_step(&problem, &state, &ext.x, &ext.theta).unwrap();
    }
    let hmax = hs.iter().cloned().fold(ctx.zero(), Real::max);
    let umin = uppers.iter().cloned().fold(uppers[0].clone(), Real::min);
    assert!(hmax <= &umin + &ctx.tol(8), "sandwich");
}

#[test]
fn remez_iteration_invariants() {
    let ctx = Context::new(30).unwrap();
    check_iteration_invariants(&BoundaryCurve::polygon(&ctx, 3).unwrap(), 7, SymmetryMode::Full);
    check_iteration_invariants(&BoundaryCurve::lune(&ctx, ctx.ratio(3, 2), ctx.one()).unwrap(), 5, SymmetryMode::ConjugationOnly);
    check_iteration_invariants(&BoundaryCurve::power_lemniscate(&ctx, 2, ctx.one()).unwrap(), 3, SymmetryMode::None);
}

#[test]
fn reduced_and_unreduced_bases_agree() {
    let ctx = Context::new(40).unwrap();
    let threshold = ctx.pow10(-10);
    for (curve, n) in [
        (BoundaryCurve::polygon(&ctx, 4).unwrap(), 6),
        (BoundaryCurve::lune(&ctx, ctx.ratio(1, 2), ctx.one()).unwrap(), 5),
        (BoundaryCurve::hypocycloid(&ctx, 3, ctx.one()).unwrap(), 5),
    ] {
        let full = chebyshev(&curve, n, &ChebyshevOptions::new(threshold.clone())).unwrap();
        let plain = chebyshev(&curve, n, &ChebyshevOptions::new(threshold.clone()).symmetry(SymmetryMode::None)).unwrap();
        assert!((&full.sup_norm - &plain.sup_norm).abs() <= &threshold * 10 * &full.sup_norm);
        // the unreduced optimum is not strongly unique: a gap of eps fixes coefficients to O(sqrt eps)
        let tol = threshold.sqrt() * 10 * &full.sup_norm;
        for k in 0..n {
            assert!(dist(&full.polynomial.coeff(&ctx, k), &plain.polynomial.coeff(&ctx, k)) <= tol, "{} a_{k}", curve.label());
        }
    }
}

#[test]
fn zero_orbits_and_origin() {
    let ctx = Context::new(40).unwrap();
    let opts = ChebyshevOptions::new(ctx.pow10(-10));
    for (m, n) in [(3usize, 8usize), (4, 9), (5, 7)] {
        let curve = BoundaryCurve::polygon(&ctx, m).unwrap();
        let rec = chebyshev(&curve, n, &opts).unwrap();
        let zs = polynomial_zeros(&ctx, &rec.polynomial).unwrap();
        let l = n % m;
        let at_origin = zs.zeros.iter().filter(|z| z.abs() <= ctx.tol(6)).count();
        assert_eq!(at_origin, l, "m={m} n={n}");
        let rot = Complex::cis(&(ctx.two_pi() / ctx.int(m as i64)));
        for z in &zs.zeros {
            let w = &rot * z;
            let near = zs.zeros.iter().map(|u| dist(u, &w)).fold(ctx.int(10), Real::min);
            assert!(near <= ctx.pow10(-6));
        }
    }
}
