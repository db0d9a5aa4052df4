//! Global maximization of `|err(t)|` over the closed parameter interval.
//!
//! A uniform grid locates candidate peaks; each grid-local maximizer is then
//! refined by golden-section search on the bracket formed by its neighbours.
//! Singular parameters (corners, cusps) are avoided by the grid and
//! evaluated directly as extra candidates.

use crate::mpnum::{Complex, Context, Real};

pub const DEFAULT_GRID: usize = 4096;
pub const DEFAULT_REFINE_DIGITS: u32 = 30;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Number of uniform grid nodes on `[0, 1)`.
    pub grid: usize,
    /// Golden-section refinement stops once the bracket is this narrow.
    pub bracket_tol: Real,
}

impl SearchOptions {
    /// Grid of `max(4096, 64 n_basis)` nodes; brackets shrink to
    /// `max(threshold^2, 10^(-2 d), 10^(5-P))` with `d` refinement digits.
    pub fn for_threshold(ctx: &Context, threshold: &Real, n_basis: usize) -> Self {
        SearchOptions {
            grid: DEFAULT_GRID.max(64 * n_basis),
            bracket_tol: bracket_tol(ctx, threshold, DEFAULT_REFINE_DIGITS),
        }
    }

    pub fn with_grid(mut self, grid: Option<usize>) -> Self {
        if let Some(g) = grid {
            self.grid = g.max(8);
        }
        self
    }

    /// Options for a plain sup-norm evaluation at working precision.
    pub fn fine(ctx: &Context) -> Self {
        SearchOptions { grid: DEFAULT_GRID, bracket_tol: ctx.tol(5).max(ctx.pow10(-2 * DEFAULT_REFINE_DIGITS as i32)) }
    }
}

pub fn bracket_tol(ctx: &Context, threshold: &Real, refine_digits: u32) -> Real {
    threshold.square().max(ctx.pow10(-2 * refine_digits as i32)).max(ctx.tol(5))
}

/// Location and size of the largest `|err|`.
#[derive(Clone, Debug)]
pub struct Extremum {
    pub x: Real,
    /// `arg err(x)` in `[0, 2 pi)`.
    pub theta: Real,
    pub value: Real,
}

/// Grid nodes `(i + 1/2) / G`, nudged by a quarter step off singular parameters.
pub fn grid_nodes(ctx: &Context, grid: usize, singular: &[Real]) -> Vec<Real> {
    let g = ctx.int(grid as i64);
    let near = ctx.tol(ctx.digits() as i32 / 2);
    (0..grid)
        .map(|i| {
            let t = (ctx.int(2 * i as i64 + 1)) / (&g * 2);
            if singular.iter().any(|s| periodic_distance(&t, s) <= near) {
                t + (ctx.one() / (&g * 4))
            } else {
                t
            }
        })
        .collect()
}

fn periodic_distance(a: &Real, b: &Real) -> Real {
    let d = (a - b).fract_positive();
    let other = Real(rug::Float::with_val(d.prec(), 1)) - &d;
    d.min(other)
}

/// Maximizes `|err(t)|` on `[0, 1)`; ties resolve to the smallest `t`.
pub fn global_max_search<F>(ctx: &Context, err: F, singular: &[Real], opts: &SearchOptions) -> Extremum
where
    F: Fn(&Real) -> Complex,
{
    let nodes = grid_nodes(ctx, opts.grid, singular);
    let values: Vec<Real> = nodes.iter().map(|t| err(t).norm_sqr()).collect();
    refine_from_grid(ctx, &err, &nodes, &values, singular, &opts.bracket_tol)
}

/// Refinement stage for callers that evaluate the grid themselves.
///
/// `values` holds `|err|^2` at `nodes`.
pub fn refine_from_grid<F>(ctx: &Context, err: &F, nodes: &[Real], values: &[Real], singular: &[Real], bracket_tol: &Real) -> Extremum
where
    F: Fn(&Real) -> Complex,
{
    let g = nodes.len();
    let sq = |t: &Real| err(&t.fract_positive()).norm_sqr();
    let mut candidates: Vec<(Real, Real)> = Vec::new();

    for i in 0..g {
        let prev = &values[(i + g - 1) % g];
        let next = &values[(i + 1) % g];
        let v = &values[i];
        if v < prev || v < next || (v == prev && v == next) {
            continue;
        }
        let half = ctx.one() / ctx.int(g as i64);
        let lo = &nodes[i] - &half;
        let hi = &nodes[i] + &half;
        let (x, fx) = golden_max(ctx, &sq, lo, hi, bracket_tol);
        if fx > *v {
            candidates.push((x.fract_positive(), fx));
        } else {
            candidates.push((nodes[i].clone(), v.clone()));
        }
    }
    for s in singular {
        let t = s.fract_positive();
        let v = sq(&t);
        candidates.push((t, v));
    }
    if candidates.is_empty() {
        // constant modulus: first node
        candidates.push((nodes[0].clone(), values[0].clone()));
    }

    let mut best = 0;
    for k in 1..candidates.len() {
        let (ref x, ref v) = candidates[k];
        let (ref bx, ref bv) = candidates[best];
        if v > bv || (v == bv && x < bx) {
            best = k;
        }
    }
    let (x, v) = candidates.swap_remove(best);
    let e = err(&x);
    let theta = if e.is_zero() { ctx.zero() } else { e.arg_positive() };
    Extremum { x, theta, value: v.sqrt() }
}

/// Golden-section maximization of `f` on `[lo, hi]`; returns the best
/// evaluated point.
pub fn golden_max<F>(ctx: &Context, f: &F, mut lo: Real, mut hi: Real, tol: &Real) -> (Real, Real)
where
    F: Fn(&Real) -> Real,
{
    let ratio = (ctx.int(5).sqrt() - ctx.one()) / ctx.int(2);
    let mut c = &hi - &(&ratio * &(&hi - &lo));
    let mut d = &lo + &(&ratio * &(&hi - &lo));
    let mut fc = f(&c);
    let mut fd = f(&d);
    while (&hi - &lo) > *tol {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = &hi - &(&ratio * &(&hi - &lo));
            fc = f(&c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = &lo + &(&ratio * &(&hi - &lo));
            fd = f(&d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::new(40).unwrap()
    }

    fn circle(ctx: &Context, t: &Real) -> Complex {
        Complex::cis(&(ctx.two_pi() * t))
    }

    #[test]
    fn z_squared_minus_one_on_circle() {
        let ctx = ctx();
        let opts = SearchOptions::for_threshold(&ctx, &ctx.pow10(-10), 1);
        let e = global_max_search(&ctx, |t| circle(&ctx, t).square() - &ctx.one(), &[], &opts);
        assert!((&e.value - &ctx.int(2)).abs() <= ctx.pow10(-18));
        assert!((&e.x - &ctx.ratio(1, 4)).abs() <= ctx.pow10(-9));
        assert!((&e.theta - &ctx.pi()).abs() <= ctx.pow10(-9));
    }

    #[test]
    fn constant_error_returns_first_node() {
        let ctx = ctx();
        let opts = SearchOptions { grid: 64, bracket_tol: ctx.pow10(-20) };
        let c = Complex::new(ctx.int(3), ctx.int(-4));
        let e = global_max_search(&ctx, |_| c.clone(), &[], &opts);
        assert_eq!(e.value, ctx.int(5));
        assert_eq!(e.x, ctx.ratio(1, 128));
    }

    #[test]
    fn kink_at_singular_parameter_is_found() {
        let ctx = ctx();
        // |t - 1/3| tent with the peak exactly at a declared singular point
        let s = ctx.ratio(1, 3);
        let f = |t: &Real| Complex::from_real(ctx.one() - (t - &s).abs());
        let opts = SearchOptions { grid: 30, bracket_tol: ctx.pow10(-20) };
        let e = global_max_search(&ctx, f, std::slice::from_ref(&s), &opts);
        assert_eq!(e.x, s);
        assert_eq!(e.value, ctx.one());
    }

    #[test]
    fn grid_avoids_singular_points() {
        let ctx = ctx();
        let s = vec![ctx.ratio(1, 8)];
        let nodes = grid_nodes(&ctx, 4, &s);
        assert!(nodes.iter().all(|t| *t != s[0]));
        assert_eq!(nodes[0], ctx.ratio(1, 8) + ctx.ratio(1, 16));
    }

    #[test]
    fn golden_on_parabola() {
        let ctx = ctx();
        let peak = ctx.ratio(2, 7);
        let f = |t: &Real| -(t - &peak).square();
        let (x, _) = golden_max(&ctx, &f, ctx.zero(), ctx.one(), &ctx.pow10(-25));
        assert!((x - peak).abs() <= ctx.pow10(-19));
    }
}
