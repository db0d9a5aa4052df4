//! Chebyshev polynomials of a curve and their Widom factors
//! `W_N = ||T_N||_E / Cap(E)^N`.

use crate::basis::{assemble_polynomial, build_basis, CurveProblem, MonicPolynomial, SymmetryMode};
use crate::error::Result;
use crate::geometry::BoundaryCurve;
use crate::mpnum::{Context, Real};
use crate::remez::search::{global_max_search, SearchOptions};
use crate::remez::{solve, SolveOptions};

#[derive(Clone, Debug)]
pub struct ChebyshevRecord {
    pub label: String,
    pub degree: usize,
    pub polynomial: MonicPolynomial,
    pub sup_norm: Real,
    pub capacity: Real,
    pub widom: Real,
    pub rel_error: Real,
    pub lower_bound: Real,
    pub iterations: usize,
    pub digits: u32,
    pub threshold: Real,
}

#[derive(Clone, Debug)]
pub struct ChebyshevOptions {
    pub threshold: Real,
    pub symmetry: SymmetryMode,
    pub max_iter: usize,
    pub grid: Option<usize>,
}

impl ChebyshevOptions {
    pub fn new(threshold: Real) -> Self {
        ChebyshevOptions { threshold, symmetry: SymmetryMode::Full, max_iter: crate::remez::DEFAULT_MAX_ITER, grid: None }
    }

    pub fn symmetry(mut self, mode: SymmetryMode) -> Self {
        self.symmetry = mode;
        self
    }
}

/// Computes `T_N` on `curve` by best approximation of `gamma^N`.
///
/// The sup norm is the solver's final upper bound, i.e. the searched maximum
/// of `|T_N(gamma(t))|`.
pub fn chebyshev(curve: &BoundaryCurve, degree: usize, opts: &ChebyshevOptions) -> Result<ChebyshevRecord> {
    let ctx = curve.context();
    let spec = build_basis(curve, degree, opts.symmetry)?;
    let problem = CurveProblem { curve, spec: &spec };
    let solve_opts = SolveOptions { threshold: opts.threshold.clone(), max_iter: opts.max_iter, grid: opts.grid };
    let result = solve(&problem, &solve_opts)?;
    let polynomial = assemble_polynomial(ctx, &spec, &result.lambda)?;
    let capacity = curve.capacity().clone();
    let widom = &result.upper_bound / capacity.powi(degree as i32);
    Ok(ChebyshevRecord {
        label: curve.label().to_string(),
        degree,
        polynomial,
        sup_norm: result.upper_bound,
        capacity,
        widom,
        rel_error: result.rel_error,
        lower_bound: result.lower_bound,
        iterations: result.iterations,
        digits: ctx.digits(),
        threshold: opts.threshold.clone(),
    })
}

/// One record per degree, in input order. A failing degree does not stop
/// the others.
pub fn widom_table(curve: &BoundaryCurve, degrees: &[usize], opts: &ChebyshevOptions) -> Vec<Result<ChebyshevRecord>> {
    degrees.iter().map(|&n| chebyshev(curve, n, opts)).collect()
}

/// `max_t |poly(gamma(t))|` by an independent grid-and-refine search.
pub fn sup_norm(ctx: &Context, poly: &MonicPolynomial, curve: &BoundaryCurve) -> Real {
    let opts = SearchOptions::fine(ctx);
    global_max_search(ctx, |t| poly.eval(&curve.eval(t)), curve.singular_params(), &opts).value
}
