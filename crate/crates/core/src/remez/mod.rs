//! Generalized Remez exchange for complex best approximation over a real
//! linear space.
//!
//! The dual problem maximizes `L(f) = sum r_j Re(e^{-i alpha_j} f(t_j))`
//! over references `(t_j, alpha_j, r_j)`, `j = 0..=n`, subject to
//! `A(t, alpha) r = e_1` and `r >= 0`. Here row 0 of `A` is all ones and row
//! `k` holds `Re(e^{-i alpha_j} phi_k(t_j))`. Each iteration recovers trial
//! coefficients from `A^T [h; lambda] = c_f`, finds the extremum of
//! `f - phi` and swaps it into the reference with a simplex-style ratio
//! test. `h` increases monotonically and `h <= ||f - phi*|| <= ||f - phi||`.

pub mod search;

use crate::error::{Error, Result};
use crate::mpnum::{Complex, Context, LuDecomposition, Matrix, Real};
use search::{grid_nodes, refine_from_grid, Extremum, SearchOptions};

pub const DEFAULT_MAX_ITER: usize = 500;
/// Iterations tolerated with `h <= 0` before giving up.
pub const NONPOSITIVE_PATIENCE: usize = 20;
const INIT_RETRIES: usize = 10;

/// Target function and basis values at one parameter.
#[derive(Clone, Debug)]
pub struct Sample {
    pub f: Complex,
    pub phi: Vec<Complex>,
}

/// A best-approximation problem on the parameter interval `[0, 1]`.
pub trait Problem {
    fn context(&self) -> &Context;
    /// Number of real basis functions `n`.
    fn dim(&self) -> usize;
    fn eval(&self, t: &Real) -> Sample;
    /// Parameters where the curve is not smooth.
    fn singular_params(&self) -> &[Real] {
        &[]
    }
}

/// Dual variables of the current linear functional.
#[derive(Clone, Debug)]
pub struct ReferenceState {
    pub t: Vec<Real>,
    pub alpha: Vec<Real>,
    pub r: Vec<Real>,
}

#[derive(Clone, Debug)]
pub struct IterationRecord {
    pub lower: Real,
    pub upper: Real,
    /// Largest over smallest LU pivot of `A`.
    pub pivot_ratio: f64,
}

#[derive(Clone, Debug)]
pub struct RemezResult {
    pub lambda: Vec<Real>,
    pub lower_bound: Real,
    pub upper_bound: Real,
    pub rel_error: Real,
    pub iterations: usize,
    pub final_state: ReferenceState,
    pub trace: Vec<IterationRecord>,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub threshold: Real,
    pub max_iter: usize,
    /// Overrides the default search grid size.
    pub grid: Option<usize>,
}

impl SolveOptions {
    pub fn new(threshold: Real) -> Self {
        SolveOptions { threshold, max_iter: DEFAULT_MAX_ITER, grid: None }
    }
}

/// `A(t, alpha)`: a row of ones over rows `Re(e^{-i alpha_j} phi_k(t_j))`.
pub fn assemble_a<P: Problem + ?Sized>(problem: &P, t: &[Real], alpha: &[Real]) -> Matrix {
    let samples: Vec<Sample> = t.iter().map(|tj| problem.eval(tj)).collect();
    assemble_a_from_samples(problem.context(), &samples, alpha)
}

fn assemble_a_from_samples(ctx: &Context, samples: &[Sample], alpha: &[Real]) -> Matrix {
    let cols = samples.len();
    let n = cols - 1;
    let mut a = Matrix::zeros(ctx, n + 1, cols);
    for (j, (s, aj)) in samples.iter().zip(alpha).enumerate() {
        a[(0, j)] = ctx.one();
        let rot = Complex::cis(&(-aj));
        for k in 0..n {
            a[(k + 1, j)] = rotated_re(&rot, &s.phi[k]);
        }
    }
    a
}

/// `Re(rot * z)`.
fn rotated_re(rot: &Complex, z: &Complex) -> Real {
    &rot.re * &z.re - &rot.im * &z.im
}

/// `c_f(t, alpha)_j = Re(e^{-i alpha_j} f(t_j))`.
pub fn assemble_cf<P: Problem + ?Sized>(problem: &P, t: &[Real], alpha: &[Real]) -> Vec<Real> {
    t.iter().zip(alpha).map(|(tj, aj)| rotated_re(&Complex::cis(&(-aj)), &problem.eval(tj).f)).collect()
}

fn sub_pi_mod_two_pi(ctx: &Context, a: &Real) -> Real {
    let pi = ctx.pi();
    if *a >= pi {
        a - &pi
    } else {
        a + &pi
    }
}

fn e1(ctx: &Context, n: usize) -> Vec<Real> {
    let mut v = vec![ctx.zero(); n];
    v[0] = ctx.one();
    v
}

/// Deterministic admissible starting reference.
///
/// Nodes sit at `(j + 1/2)/(n + 1)` (shifted by `1/(4(n+1))` off singular
/// parameters), angles are aligned with `arg f`, and every angle whose weight
/// comes out negative is turned by `pi`, which maps the weights to
/// `|r| / sum |r|`. A singular matrix triggers up to ten retries. Retry `k`
/// moves node `j` by `frac(k (j + 1) g) / (2(n + 1))` and turns its angle by
/// `2 pi frac(k (j + 1) g)` (`g` the golden ratio), which breaks both the
/// equispacing and the phase alignment.
pub fn initialize_reference<P: Problem + ?Sized>(problem: &P) -> Result<ReferenceState> {
    let ctx = problem.context();
    let m = problem.dim() + 1;
    let golden = (ctx.int(5).sqrt() - ctx.one()) / ctx.int(2);
    let collide = ctx.tol(ctx.digits() as i32 / 2);
    for attempt in 0..=INIT_RETRIES {
        let offsets: Vec<Real> = (0..m).map(|j| (&golden * (attempt * (j + 1)) as i32).fract_positive()).collect();
        let t: Vec<Real> = (0..m)
            .map(|j| {
                let base = (ctx.int(2 * j as i64 + 1) / ctx.int(2 * m as i64) + &offsets[j] / ctx.int(2 * m as i64)).fract_positive();
                let hits = problem.singular_params().iter().any(|s| (&base - s).abs() <= collide);
                if hits {
                    (base + ctx.one() / ctx.int(4 * m as i64)).fract_positive()
                } else {
                    base
                }
            })
            .collect();
        let samples: Vec<Sample> = t.iter().map(|tj| problem.eval(tj)).collect();
        let mut alpha: Vec<Real> = samples
            .iter()
            .zip(&offsets)
            .map(|(s, o)| {
                let a = if s.f.is_zero() { ctx.zero() } else { s.f.arg_positive() };
                (a / ctx.two_pi() + o).fract_positive() * ctx.two_pi()
            })
            .collect();
        let a = assemble_a_from_samples(ctx, &samples, &alpha);
        let Ok(lu) = a.lu(ctx) else { continue };
        let r = lu.solve(&e1(ctx, m))?;
        for (aj, rj) in alpha.iter_mut().zip(&r) {
            if rj.is_sign_negative() {
                *aj = sub_pi_mod_two_pi(ctx, aj);
            }
        }
        let a = assemble_a_from_samples(ctx, &samples, &alpha);
        let Ok(lu) = a.lu(ctx) else { continue };
        let mut r = lu.solve(&e1(ctx, m))?;
        clamp_weights(ctx, &mut r);
        return Ok(ReferenceState { t, alpha, r });
    }
    Err(Error::InitFailure { retries: INIT_RETRIES })
}

fn clamp_weights(ctx: &Context, r: &mut [Real]) {
    let floor = -ctx.tol(8);
    for rj in r.iter_mut() {
        if rj.is_sign_negative() && *rj >= floor {
            *rj = ctx.zero();
        }
    }
}

/// Solves `A^T [h; lambda] = c_f`.
pub fn trial_coefficients<P: Problem + ?Sized>(problem: &P, state: &ReferenceState) -> Result<(Real, Vec<Real>)> {
    let ctx = problem.context();
    let a = assemble_a(problem, &state.t, &state.alpha);
    let lu = a.lu(ctx)?;
    let cf = assemble_cf(problem, &state.t, &state.alpha);
    split_h_lambda(lu.solve_transposed(&cf)?)
}

fn split_h_lambda(mut v: Vec<Real>) -> Result<(Real, Vec<Real>)> {
    let h = v.remove(0);
    Ok((h, v))
}

/// Error `f - sum lambda_k phi_k` of a sample.
pub fn error_of(sample: &Sample, lambda: &[Real]) -> Complex {
    let mut e = sample.f.clone();
    for (p, l) in sample.phi.iter().zip(lambda) {
        e -= &p.scale(l);
    }
    e
}

/// Locates `x`, `theta` with `f(x) - phi(x) = e^{i theta} ||f - phi||`.
pub fn global_max_search<P: Problem + ?Sized>(problem: &P, lambda: &[Real], opts: &SearchOptions) -> Extremum {
    let ctx = problem.context();
    search::global_max_search(ctx, |t| error_of(&problem.eval(t), lambda), problem.singular_params(), opts)
}

/// Swaps `(x, theta)` into the reference.
///
/// `d` solves `A d = [1, Re(e^{-i theta} phi_k(x))]`; the leaving index is
/// `argmin { r_k / d_k : d_k > 0 }` (smallest index on ties).
pub fn exchange_step<P: Problem + ?Sized>(problem: &P, state: &ReferenceState, x: &Real, theta: &Real) -> Result<ReferenceState> {
    let ctx = problem.context();
    let a = assemble_a(problem, &state.t, &state.alpha);
    let lu = a.lu(ctx)?;
    exchange_with(ctx, &lu, problem, state, x, theta)
}

fn exchange_with<P: Problem + ?Sized>(
    ctx: &Context,
    lu: &LuDecomposition,
    problem: &P,
    state: &ReferenceState,
    x: &Real,
    theta: &Real,
) -> Result<ReferenceState> {
    let sample = problem.eval(x);
    let rot = Complex::cis(&(-theta));
    let mut v = Vec::with_capacity(state.t.len());
    v.push(ctx.one());
    v.extend(sample.phi.iter().map(|p| rotated_re(&rot, p)));
    let d = lu.solve(&v)?;

    let mut leave: Option<(usize, Real)> = None;
    for (k, dk) in d.iter().enumerate() {
        if *dk > 0 {
            let ratio = &state.r[k] / dk;
            if leave.as_ref().is_none_or(|(_, best)| ratio < *best) {
                leave = Some((k, ratio));
            }
        }
    }
    let (rho, delta) = leave.ok_or(Error::ExchangeFailure)?;

    let mut next = state.clone();
    for j in 0..next.r.len() {
        if j != rho {
            next.r[j] = &state.r[j] - &(&delta * &d[j]);
        }
    }
    next.r[rho] = delta;
    next.t[rho] = x.clone();
    next.alpha[rho] = theta.clone();
    clamp_weights(ctx, &mut next.r);
    Ok(next)
}

/// Precomputed samples on the search grid, reused across iterations.
struct GridCache {
    nodes: Vec<Real>,
    samples: Vec<Sample>,
}

impl GridCache {
    fn new<P: Problem + ?Sized>(problem: &P, grid: usize) -> Self {
        let nodes = grid_nodes(problem.context(), grid, problem.singular_params());
        let samples = nodes.iter().map(|t| problem.eval(t)).collect();
        GridCache { nodes, samples }
    }

    fn search<P: Problem + ?Sized>(&self, problem: &P, lambda: &[Real], bracket_tol: &Real) -> Extremum {
        let values: Vec<Real> = self.samples.iter().map(|s| error_of(s, lambda).norm_sqr()).collect();
        let err = |t: &Real| error_of(&problem.eval(t), lambda);
        refine_from_grid(problem.context(), &err, &self.nodes, &values, problem.singular_params(), bracket_tol)
    }
}

/// Runs the exchange until `upper - h < threshold * h`.
///
/// While `h <= 0` the absolute test `upper - h < threshold * upper` is used
/// instead. An exactly representable `f` (`upper` at rounding level) stops
/// immediately with zero relative error.
pub fn solve<P: Problem + ?Sized>(problem: &P, opts: &SolveOptions) -> Result<RemezResult> {
    let ctx = problem.context();
    if !(opts.threshold > 0) {
        return Err(Error::InvalidParameter("threshold must be positive".into()));
    }
    if opts.max_iter == 0 {
        return Err(Error::InvalidParameter("max_iter must be at least 1".into()));
    }
    let search_opts = SearchOptions::for_threshold(ctx, &opts.threshold, problem.dim()).with_grid(opts.grid);
    let cache = GridCache::new(problem, search_opts.grid);
    let mut state = initialize_reference(problem)?;
    let mut trace = Vec::new();
    let mut nonpositive = 0;
    let mut best: Option<RemezResult> = None;

    for iter in 1..=opts.max_iter {
        let samples: Vec<Sample> = state.t.iter().map(|tj| problem.eval(tj)).collect();
        let a = assemble_a_from_samples(ctx, &samples, &state.alpha);
        let lu = a.lu(ctx)?;
        let cf: Vec<Real> = samples.iter().zip(&state.alpha).map(|(s, aj)| rotated_re(&Complex::cis(&(-aj)), &s.f)).collect();
        let (h, lambda) = split_h_lambda(lu.solve_transposed(&cf)?)?;
        let ext = cache.search(problem, &lambda, &search_opts.bracket_tol);
        let upper = ext.value.clone();
        trace.push(IterationRecord { lower: h.clone(), upper: upper.clone(), pivot_ratio: lu.pivot_ratio().to_f64() });

        let scale = ctx.one().max(samples.iter().fold(ctx.zero(), |m, s| m.max(s.f.abs())));
        let representable = upper <= &scale * &ctx.tol(8);
        let rel_error = if h > 0 { (&upper - &h) / &h } else if upper.is_zero() { ctx.zero() } else { (&upper - &h) / &upper };
        let result = RemezResult {
            lambda,
            lower_bound: h.clone(),
            upper_bound: upper.clone(),
            rel_error: if representable { ctx.zero() } else { rel_error.clone() },
            iterations: iter,
            final_state: state.clone(),
            trace: Vec::new(),
        };
        let converged = representable || rel_error < opts.threshold;
        if converged {
            return Ok(RemezResult { trace, ..result });
        }
        if h > 0 {
            nonpositive = 0;
        } else {
            nonpositive += 1;
            if nonpositive > NONPOSITIVE_PATIENCE {
                return Err(Error::NonpositiveLowerBound { iterations: nonpositive });
            }
        }
        if best.as_ref().is_none_or(|b| result.rel_error < b.rel_error || b.lower_bound <= 0) {
            best = Some(result);
        }
        state = exchange_with(ctx, &lu, problem, &state, &ext.x, &ext.theta)?;
    }
    let mut best = best.expect("at least one iteration ran");
    best.trace = trace;
    Err(Error::MaxIterations(Box::new(best)))
}
