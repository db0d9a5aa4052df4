//! Parametrized boundary curves `gamma: [0, 1] -> C` of the compact sets
//! studied here, with their logarithmic capacities and symmetry data.
//!
//! Level curves `{ |Phi| = r }` are parametrized through the inverse exterior
//! map as `gamma(t) = Psi(r e^{2 pi i t})`, which makes rotation symmetry act
//! as a parameter shift by `1/m`.

use crate::basis::MonicPolynomial;
use crate::error::{Error, Result};
use crate::mpnum::{Complex, Context, Real};
use crate::remez::search::{global_max_search, SearchOptions};
use crate::zeros::polynomial_zeros;

/// Continuation nodes per sweep of `arg P` through `2 pi`.
pub const LEMNISCATE_NODES_PER_BRANCH: usize = 720;
const NEWTON_STEPS: usize = 50;

#[derive(Clone, Debug)]
pub enum CurveFamily {
    Polygon { m: usize },
    Hypocycloid { m: usize, r: Real },
    Lune { alpha: Real, r: Real },
    PowerLemniscate { m: usize, r: Real },
    PolynomialLemniscate { coeffs: Vec<Complex>, rho: Real },
}

#[derive(Clone, Debug)]
enum Shape {
    Polygon { vertices: Vec<Complex> },
    Hypocycloid { m: usize, r: Real },
    Lune { alpha: Real, r: Real },
    PowerLemniscate { m: usize, r: Real },
    Lemniscate(PolyLemniscate),
}

#[derive(Clone, Debug)]
struct PolyLemniscate {
    coeffs: Vec<Complex>,
    rho: Real,
    /// Continuous traversal: node `j` solves `P(z) = rho e^{2 pi i j / 720}`.
    nodes: Vec<Complex>,
}

/// Closed boundary curve of a compact set `E`.
#[derive(Clone, Debug)]
pub struct BoundaryCurve {
    ctx: Context,
    family: CurveFamily,
    shape: Shape,
    capacity: Real,
    rotation_order: usize,
    conjugation_symmetric: bool,
    singular_params: Vec<Real>,
    label: String,
}

impl BoundaryCurve {
    /// Regular `m`-gon with vertices at the `m`-th roots of unity, uniform
    /// speed on each edge and vertex `k` at `t = k/m`.
    pub fn polygon(ctx: &Context, m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidParameter(format!("polygon needs m >= 3, got {m}")));
        }
        let two_pi = ctx.two_pi();
        let vertices: Vec<Complex> = (0..m).map(|k| Complex::cis(&(&two_pi * ctx.ratio(k as i64, m as i64)))).collect();
        let mi = ctx.int(m as i64);
        let side = (ctx.pi() / &mi).sin() * 2;
        let inv_m = ctx.one() / &mi;
        // Gamma(1/m) side / (2^{1+2/m} sqrt(pi) Gamma(1/2 + 1/m))
        let num = inv_m.gamma() * &side;
        let den = ctx.int(2).powr(&(ctx.one() + &inv_m * 2)) * ctx.pi().sqrt() * (ctx.ratio(1, 2) + &inv_m).gamma();
        Ok(BoundaryCurve {
            ctx: *ctx,
            family: CurveFamily::Polygon { m },
            shape: Shape::Polygon { vertices },
            capacity: num / den,
            rotation_order: m,
            conjugation_symmetric: true,
            singular_params: (0..m).map(|k| ctx.ratio(k as i64, m as i64)).collect(),
            label: format!("polygon(m={m})"),
        })
    }

    /// Level curve `r` of the `m`-cusped hypocycloid,
    /// `gamma(t) = u + u^{-(m-1)}/(m-1)` with `u = r e^{2 pi i t}`.
    pub fn hypocycloid(ctx: &Context, m: usize, r: Real) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidParameter(format!("hypocycloid needs m >= 3, got {m}")));
        }
        if r < 1 {
            return Err(Error::InvalidParameter(format!("hypocycloid level r = {} < 1 self-intersects", r.to_f64())));
        }
        let singular = if r == 1 { (0..m).map(|k| ctx.ratio(k as i64, m as i64)).collect() } else { Vec::new() };
        Ok(BoundaryCurve {
            ctx: *ctx,
            family: CurveFamily::Hypocycloid { m, r: r.clone() },
            shape: Shape::Hypocycloid { m, r: r.clone() },
            capacity: r.clone(),
            rotation_order: m,
            conjugation_symmetric: true,
            singular_params: singular,
            label: format!("hypocycloid(m={m},r={})", short(&r)),
        })
    }

    /// Level curve `r` of the circular lune with vertices `+-alpha`,
    /// `gamma = alpha (1 + u^alpha) / (1 - u^alpha)`, `u = (w-1)/(w+1)`,
    /// `w = r e^{2 pi i t}` (principal power).
    pub fn lune(ctx: &Context, alpha: Real, r: Real) -> Result<Self> {
        if !(alpha > 0 && alpha <= 2) {
            return Err(Error::InvalidParameter(format!("lune alpha = {} outside (0, 2]", alpha.to_f64())));
        }
        if r < 1 {
            return Err(Error::InvalidParameter(format!("lune level r = {} < 1", r.to_f64())));
        }
        let singular = if r == 1 { vec![ctx.zero(), ctx.ratio(1, 2)] } else { Vec::new() };
        Ok(BoundaryCurve {
            ctx: *ctx,
            family: CurveFamily::Lune { alpha: alpha.clone(), r: r.clone() },
            shape: Shape::Lune { alpha: alpha.clone(), r: r.clone() },
            capacity: r.clone(),
            rotation_order: 2,
            conjugation_symmetric: true,
            singular_params: singular,
            label: format!("lune(alpha={},r={})", short(&alpha), short(&r)),
        })
    }

    /// `{ |z^m - 1| = r^m }` traversed as `gamma(t) = w (1 + w^{-m})^{1/m}`,
    /// `w = r e^{2 pi i t}`. At `r = 1` the curve passes through the origin
    /// at `t = (k + 1/2)/m`.
    pub fn power_lemniscate(ctx: &Context, m: usize, r: Real) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!("power lemniscate needs m >= 2, got {m}")));
        }
        if r < 1 {
            return Err(Error::InvalidParameter(format!("lemniscate level r = {} < 1 has {m} components", r.to_f64())));
        }
        let singular = if r == 1 { (0..m).map(|k| ctx.ratio(2 * k as i64 + 1, 2 * m as i64)).collect() } else { Vec::new() };
        Ok(BoundaryCurve {
            ctx: *ctx,
            family: CurveFamily::PowerLemniscate { m, r: r.clone() },
            shape: Shape::PowerLemniscate { m, r: r.clone() },
            capacity: r.clone(),
            rotation_order: m,
            conjugation_symmetric: true,
            singular_params: singular,
            label: format!("power-lemniscate(m={m},r={})", short(&r)),
        })
    }

    /// Level set `{ |P(z)| = rho }` of `P = a_0 + ... + a_d z^d`
    /// (`coeffs[k] = a_k`), traced by continuation of the roots of
    /// `P(z) = rho e^{i theta}`.
    ///
    /// `rho` must exceed every critical value `|P(z)|, P'(z) = 0`, so that
    /// the level set is a single Jordan curve. `critical_bound` overrides the
    /// computed maximum critical value.
    pub fn polynomial_lemniscate(ctx: &Context, coeffs: Vec<Complex>, rho: Real, critical_bound: Option<Real>) -> Result<Self> {
        let d = coeffs.len().saturating_sub(1);
        if d == 0 || coeffs[d].is_zero() {
            return Err(Error::InvalidParameter("lemniscate polynomial must have degree >= 1 with nonzero leading coefficient".into()));
        }
        let lead = coeffs[d].clone();
        let crit = match critical_bound {
            Some(b) => b,
            None => max_critical_value(ctx, &coeffs)?,
        };
        if rho <= crit {
            return Err(Error::Precondition(format!(
                "level {} does not exceed the largest critical value {}",
                rho.to_f64(),
                crit.to_f64()
            )));
        }
        let nodes = trace_lemniscate(ctx, &coeffs, &rho)?;

        let nonzero: Vec<usize> = (0..=d).filter(|&k| !coeffs[k].is_zero()).collect();
        let rotation_order = nonzero.iter().fold(0, |g, &k| gcd(g, d - k)).max(1);
        let rotation_order = if rotation_order == 0 { 1 } else { rotation_order };
        let conjugation_symmetric = coeffs.iter().all(|a| a.im.is_zero());
        let capacity = (&rho / lead.abs()).powr(&(ctx.one() / ctx.int(d as i64)));
        let label = format!("lemniscate(deg={d},rho={})", short(&rho));
        Ok(BoundaryCurve {
            ctx: *ctx,
            family: CurveFamily::PolynomialLemniscate { coeffs: coeffs.clone(), rho: rho.clone() },
            shape: Shape::Lemniscate(PolyLemniscate { coeffs, rho, nodes }),
            capacity,
            rotation_order,
            conjugation_symmetric,
            singular_params: Vec::new(),
            label,
        })
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn family(&self) -> &CurveFamily {
        &self.family
    }

    pub fn capacity(&self) -> &Real {
        &self.capacity
    }

    pub fn rotation_order(&self) -> usize {
        self.rotation_order
    }

    pub fn conjugation_symmetric(&self) -> bool {
        self.conjugation_symmetric
    }

    pub fn singular_params(&self) -> &[Real] {
        &self.singular_params
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `gamma(t)`; `t` is taken modulo 1.
    pub fn eval(&self, t: &Real) -> Complex {
        let ctx = &self.ctx;
        let t = t.fract_positive();
        match &self.shape {
            Shape::Polygon { vertices } => {
                let m = vertices.len();
                let mt = &t * m as i32;
                let k = (mt.floor().to_f64() as usize).min(m - 1);
                let s = mt - ctx.int(k as i64);
                let a = &vertices[k];
                let b = &vertices[(k + 1) % m];
                a + &(b - a).scale(&s)
            }
            Shape::Hypocycloid { m, r } => {
                let theta = ctx.two_pi() * &t;
                let u = Complex::from_polar(r, &theta);
                let k = (*m - 1) as i32;
                let tail = Complex::from_polar(&r.powi(-k), &(-(theta * k))) / ctx.int(k as i64);
                u + tail
            }
            Shape::Lune { alpha, r } => {
                if *r == 1 && t == ctx.ratio(1, 2) {
                    return Complex::from_real(-alpha);
                }
                let w = Complex::from_polar(r, &(ctx.two_pi() * &t));
                let one = Complex::one(ctx);
                let u = (&w - &one) / (&w + &one);
                let v = u.powr(alpha);
                ((&one + &v) / (&one - &v)).scale(alpha)
            }
            Shape::PowerLemniscate { m, r } => {
                let w = Complex::from_polar(r, &(ctx.two_pi() * &t));
                let inv = w.powi(-(*m as i64));
                let root = (Complex::one(ctx) + inv).powr(&ctx.ratio(1, *m as i64));
                w * root
            }
            Shape::Lemniscate(lem) => lem.eval(ctx, &t),
        }
    }

    /// Point `e^{2 pi i k/m} (1 + r^m e^{i theta})^{1/m}` on arc `k` of a
    /// power lemniscate (principal root).
    pub fn arc_point(&self, k: usize, theta: &Real) -> Result<Complex> {
        match &self.shape {
            Shape::PowerLemniscate { m, r } => {
                let ctx = &self.ctx;
                let inner = Complex::one(ctx) + Complex::from_polar(&r.powi(*m as i32), theta);
                let rot = Complex::cis(&(ctx.two_pi() * ctx.ratio(k as i64, *m as i64)));
                Ok(rot * inner.powr(&ctx.ratio(1, *m as i64)))
            }
            _ => Err(Error::UnsupportedFamily(self.label.clone())),
        }
    }

    /// `max_t |gamma(t)|`.
    pub fn max_modulus(&self) -> Real {
        let opts = SearchOptions::fine(&self.ctx);
        global_max_search(&self.ctx, |t| self.eval(t), &self.singular_params, &opts).value
    }

    /// `n` samples at `t = i/n` in double precision.
    pub fn sample_f64(&self, n: usize) -> Vec<(f64, f64)> {
        (0..n).map(|i| self.eval(&self.ctx.ratio(i as i64, n as i64)).to_f64_pair()).collect()
    }

    /// Evaluates the defining polynomial of a lemniscate family.
    pub fn defining_polynomial_value(&self, z: &Complex) -> Option<Complex> {
        match &self.shape {
            Shape::PowerLemniscate { m, .. } => Some(z.powi(*m as i64) - &self.ctx.one()),
            Shape::Lemniscate(lem) => Some(eval_full(&lem.coeffs, z)),
            _ => None,
        }
    }
}

impl PolyLemniscate {
    fn eval(&self, ctx: &Context, t: &Real) -> Complex {
        let total = self.nodes.len();
        let pos = t * total as i32;
        let j = (pos.floor().to_f64() as usize).min(total - 1);
        let frac = pos - ctx.int(j as i64);
        let a = &self.nodes[j];
        let b = &self.nodes[(j + 1) % total];
        let start = a + &(b - a).scale(&frac);
        let theta = ctx.two_pi() * t * (total / LEMNISCATE_NODES_PER_BRANCH) as i32;
        let target = Complex::from_polar(&self.rho, &theta);
        newton_level_point(ctx, &self.coeffs, &target, start).unwrap_or_else(|z| z)
    }
}

fn short(x: &Real) -> String {
    let v = x.to_f64();
    format!("{}", (v * 1e6).round() / 1e6)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn eval_full(coeffs: &[Complex], z: &Complex) -> Complex {
    let mut acc = coeffs[coeffs.len() - 1].clone();
    for a in coeffs[..coeffs.len() - 1].iter().rev() {
        acc = &acc * z + a;
    }
    acc
}

fn derivative(ctx: &Context, coeffs: &[Complex]) -> Vec<Complex> {
    coeffs.iter().enumerate().skip(1).map(|(k, a)| a.scale(&ctx.int(k as i64))).collect()
}

/// Monic normalization of a full coefficient vector.
fn to_monic(coeffs: &[Complex]) -> MonicPolynomial {
    let d = coeffs.len() - 1;
    let lead = &coeffs[d];
    MonicPolynomial::new(coeffs[..d].iter().map(|a| a / lead).collect())
}

/// Largest `|P(zeta)|` over the critical points `P'(zeta) = 0`.
pub fn max_critical_value(ctx: &Context, coeffs: &[Complex]) -> Result<Real> {
    if coeffs.len() <= 2 {
        return Ok(ctx.zero());
    }
    let dp = derivative(ctx, coeffs);
    let crit = polynomial_zeros(ctx, &to_monic(&dp))?;
    Ok(crit.zeros.iter().fold(ctx.zero(), |m, z| m.max(eval_full(coeffs, z).abs())))
}

/// Newton for `P(z) = target`; `Err` carries the last iterate on failure.
fn newton_level_point(ctx: &Context, coeffs: &[Complex], target: &Complex, mut z: Complex) -> std::result::Result<Complex, Complex> {
    let dp = derivative(ctx, coeffs);
    let tol = ctx.tol(5);
    for _ in 0..NEWTON_STEPS {
        let f = eval_full(coeffs, &z) - target;
        let df = eval_full(&dp, &z);
        if df.is_zero() {
            return Err(z);
        }
        let step = &f / &df;
        z = &z - &step;
        if step.abs() <= &tol * &(ctx.one() + z.abs()) {
            return Ok(z);
        }
    }
    Err(z)
}

fn trace_lemniscate(ctx: &Context, coeffs: &[Complex], rho: &Real) -> Result<Vec<Complex>> {
    let d = coeffs.len() - 1;
    let mut shifted = coeffs.to_vec();
    shifted[0] = &shifted[0] - rho;
    let roots = polynomial_zeros(ctx, &to_monic(&shifted))?;
    // deterministic start: largest real part, then largest imaginary part
    let mut start = roots.zeros[0].clone();
    for z in &roots.zeros[1..] {
        if z.re > start.re || (z.re == start.re && z.im > start.im) {
            start = z.clone();
        }
    }
    let dp = derivative(ctx, coeffs);
    let total = LEMNISCATE_NODES_PER_BRANCH * d;
    let step = ctx.two_pi() / ctx.int(LEMNISCATE_NODES_PER_BRANCH as i64);
    let mut nodes = Vec::with_capacity(total);
    nodes.push(start);
    for j in 1..=total {
        let prev = &nodes[j - 1];
        // tangent predictor: P'(z) dz = i P(z) dtheta
        let slope = (eval_full(coeffs, prev).mul_i()) / eval_full(&dp, prev);
        let guess = prev + &slope.scale(&step);
        let theta = &step * j as i32;
        let target = Complex::from_polar(rho, &theta);
        let z = newton_level_point(ctx, coeffs, &target, guess).map_err(|_| Error::ContinuationFailure { theta: theta.to_f64() })?;
        if j < total {
            nodes.push(z);
        } else if (&z - &nodes[0]).abs() > ctx.tol(ctx.digits() as i32 / 2) * (ctx.one() + nodes[0].abs()) {
            // did not close up: the level set is not a single Jordan curve
            return Err(Error::ContinuationFailure { theta: theta.to_f64() });
        }
    }
    Ok(nodes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::new(50).unwrap()
    }

    fn close(a: &Complex, b: &Complex, tol: &Real) -> bool {
        (a - b).abs() <= *tol
    }

    #[test]
    fn polygon_vertex_and_capacity() {
        let ctx = ctx();
        let sq = BoundaryCurve::polygon(&ctx, 4).unwrap();
        assert!(close(&sq.eval(&ctx.zero()), &Complex::one(&ctx), &ctx.tol(5)));
        assert_eq!(sq.singular_params().len(), 4);
        // Gamma(1/6)/(2^{4/3} sqrt(pi) Gamma(2/3)) with unit side
        let hex = BoundaryCurve::polygon(&ctx, 6).unwrap();
        let expected = ctx.ratio(1, 6).gamma() / (ctx.int(2).powr(&ctx.ratio(4, 3)) * ctx.pi().sqrt() * ctx.ratio(2, 3).gamma());
        assert!((hex.capacity() - &expected).abs() <= ctx.tol(5));
        assert!((hex.capacity().to_f64() - 0.920_371_4).abs() < 1e-6);
        assert!(BoundaryCurve::polygon(&ctx, 2).is_err());
    }

    #[test]
    fn hexagon_capacity_consistent_with_table() {
        let ctx = ctx();
        let hex = BoundaryCurve::polygon(&ctx, 6).unwrap();
        let w5 = hex.capacity().powi(-5);
        assert!((w5.to_f64() - 1.514_204_35).abs() < 5e-9);
    }

    #[test]
    fn hypocycloid_points() {
        let ctx = ctx();
        let h6 = BoundaryCurve::hypocycloid(&ctx, 6, ctx.one()).unwrap();
        assert!(close(&h6.eval(&ctx.zero()), &Complex::from_real(ctx.ratio(6, 5)), &ctx.tol(5)));
        let h3 = BoundaryCurve::hypocycloid(&ctx, 3, ctx.one()).unwrap();
        assert_eq!(*h3.capacity(), ctx.one());
        let h5 = BoundaryCurve::hypocycloid(&ctx, 5, ctx.int(2)).unwrap();
        assert!(close(&h5.eval(&ctx.zero()), &Complex::from_real(ctx.parse("2.015625").unwrap()), &ctx.tol(5)));
        assert!(h5.singular_params().is_empty());
        assert!(BoundaryCurve::hypocycloid(&ctx, 5, ctx.ratio(1, 2)).is_err());
    }

    #[test]
    fn lune_points() {
        let ctx = ctx();
        let half = BoundaryCurve::lune(&ctx, ctx.ratio(1, 2), ctx.one()).unwrap();
        assert!(close(&half.eval(&ctx.zero()), &Complex::from_real(ctx.ratio(1, 2)), &ctx.tol(5)));
        // approach the far vertex from both sides
        let c = BoundaryCurve::lune(&ctx, ctx.ratio(3, 2), ctx.one()).unwrap();
        let eps = ctx.pow10(-20);
        let target = Complex::from_real(-ctx.ratio(3, 2));
        for t in [ctx.ratio(1, 2) - &eps, ctx.ratio(1, 2) + &eps] {
            assert!(close(&c.eval(&t), &target, &ctx.pow10(-10)));
        }
        assert!(close(&c.eval(&ctx.ratio(1, 2)), &target, &ctx.tol(5)));
        // alpha = 1 is the unit circle
        let circle = BoundaryCurve::lune(&ctx, ctx.one(), ctx.one()).unwrap();
        for k in 0..7 {
            let z = circle.eval(&ctx.ratio(2 * k + 1, 14));
            assert!((z.abs() - ctx.one()).abs() <= ctx.tol(5));
        }
        assert!(BoundaryCurve::lune(&ctx, ctx.ratio(5, 2), ctx.one()).is_err());
        assert!(BoundaryCurve::lune(&ctx, ctx.zero(), ctx.one()).is_err());
    }

    #[test]
    fn power_lemniscate_points() {
        let ctx = ctx();
        let l = BoundaryCurve::power_lemniscate(&ctx, 2, ctx.one()).unwrap();
        let sqrt2 = Complex::from_real(ctx.int(2).sqrt());
        assert!(close(&l.eval(&ctx.zero()), &sqrt2, &ctx.tol(5)));
        assert!(close(&l.arc_point(0, &ctx.zero()).unwrap(), &sqrt2, &ctx.tol(5)));
        assert_eq!(*l.capacity(), ctx.one());
        let l2 = BoundaryCurve::power_lemniscate(&ctx, 2, ctx.int(2)).unwrap();
        let i_sqrt3 = Complex::new(ctx.zero(), ctx.int(3).sqrt());
        assert!(close(&l2.arc_point(0, &ctx.pi()).unwrap(), &i_sqrt3, &ctx.tol(5)));
        assert!(close(&l2.eval(&ctx.ratio(1, 4)), &i_sqrt3, &ctx.tol(5)));
        assert!(BoundaryCurve::power_lemniscate(&ctx, 2, ctx.ratio(1, 2)).is_err());
    }

    #[test]
    fn polynomial_lemniscate_capacity_and_residual() {
        let ctx = ctx();
        let p = vec![Complex::one(&ctx), Complex::one(&ctx), Complex::zero(&ctx), Complex::one(&ctx)];
        let a = BoundaryCurve::polynomial_lemniscate(&ctx, p, ctx.int(2), None).unwrap();
        let expected = ctx.int(2).powr(&ctx.ratio(1, 3));
        assert!((a.capacity() - &expected).abs() <= ctx.tol(5));
        assert_eq!(a.rotation_order(), 1);
        assert!(a.conjugation_symmetric());
        for k in 0..37 {
            let z = a.eval(&ctx.ratio(2 * k + 1, 74));
            let v = a.defining_polynomial_value(&z).unwrap();
            assert!((v.abs() - ctx.int(2)).abs() <= ctx.tol(8));
        }
    }

    #[test]
    fn polynomial_lemniscate_below_critical_rejected() {
        let ctx = ctx();
        // z^3 + z + 1 has critical values of modulus sqrt(31/27) ~ 1.0715
        let p = vec![Complex::one(&ctx), Complex::one(&ctx), Complex::zero(&ctx), Complex::one(&ctx)];
        let crit = max_critical_value(&ctx, &p).unwrap();
        assert!((crit - ctx.ratio(31, 27).sqrt()).abs() <= ctx.tol(8));
        assert!(matches!(
            BoundaryCurve::polynomial_lemniscate(&ctx, p, ctx.one(), None),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn max_modulus_examples() {
        let ctx = Context::new(30).unwrap();
        let h6 = BoundaryCurve::hypocycloid(&ctx, 6, ctx.one()).unwrap();
        assert!((h6.max_modulus() - ctx.ratio(6, 5)).abs() <= ctx.pow10(-20));
        let sq = BoundaryCurve::polygon(&ctx, 4).unwrap();
        assert!((sq.max_modulus() - ctx.one()).abs() <= ctx.pow10(-20));
        let interval = BoundaryCurve::lune(&ctx, ctx.int(2), ctx.one()).unwrap();
        assert!((interval.max_modulus() - ctx.int(2)).abs() <= ctx.pow10(-20));
    }
}
