//! Real-linear monomial bases for the Chebyshev problem and monic
//! polynomials assembled from solved coefficients.
//!
//! For a set invariant under rotation by `2 pi / m`, the Chebyshev polynomial
//! of degree `N = n m + l` has the form `z^l Q(z^m)`, so only the exponents
//! `l, m + l, ..., (n - 1) m + l` need to be approximated. For sets symmetric
//! under conjugation all coefficients are real and the `i z^k` companions
//! can be dropped.

use crate::error::{Error, Result};
use crate::geometry::BoundaryCurve;
use crate::mpnum::{Complex, Context, Real};
use crate::remez::{Problem, Sample};

/// Which symmetries of the curve the basis may exploit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SymmetryMode {
    /// Rotation and conjugation symmetry, whenever the curve metadata permits.
    #[default]
    Full,
    /// Only conjugation symmetry: all exponents `0..N`, real coefficients
    /// when the curve is conjugation-symmetric.
    ConjugationOnly,
    /// No reduction: all exponents with `i z^k` companions.
    None,
}

impl SymmetryMode {
    pub fn from_flag(use_symmetry: bool) -> Self {
        if use_symmetry {
            SymmetryMode::Full
        } else {
            SymmetryMode::ConjugationOnly
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSpec {
    pub degree: usize,
    /// Powers of `z` spanned, increasing.
    pub exponents: Vec<usize>,
    /// Whether `i z^k` companions follow the plain powers.
    pub complex_parts: bool,
    /// Rotation order used for the reduction (1 when not applied).
    pub rotation_order: usize,
    pub residue: usize,
}

impl BasisSpec {
    pub fn n_basis(&self) -> usize {
        self.exponents.len() * if self.complex_parts { 2 } else { 1 }
    }

    fn step(&self) -> usize {
        self.rotation_order.max(1)
    }

    /// Evaluates `f(z) = z^N` and all basis functions at the point `z`.
    pub fn eval_at(&self, z: &Complex) -> Sample {
        let k = self.exponents.len();
        let mut phi = Vec::with_capacity(self.n_basis());
        let f = if k == 0 {
            z.powi(self.degree as i64)
        } else {
            let stride = z.powi(self.step() as i64);
            let mut p = z.powi(self.exponents[0] as i64);
            for _ in 0..k {
                let next = &p * &stride;
                phi.push(p);
                p = next;
            }
            p
        };
        if self.complex_parts {
            for j in 0..k {
                let c = phi[j].mul_i();
                phi.push(c);
            }
        }
        Sample { f, phi }
    }
}

/// Builds the basis for degree `degree` on `curve`.
pub fn build_basis(curve: &BoundaryCurve, degree: usize, mode: SymmetryMode) -> Result<BasisSpec> {
    if degree == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    let (exponents, complex_parts, rotation_order, residue) = match mode {
        SymmetryMode::Full if curve.rotation_order() > 1 => {
            let m = curve.rotation_order();
            let (n, l) = (degree / m, degree % m);
            ((0..n).map(|k| k * m + l).collect(), !curve.conjugation_symmetric(), m, l)
        }
        SymmetryMode::Full | SymmetryMode::ConjugationOnly => ((0..degree).collect(), !curve.conjugation_symmetric(), 1, 0),
        SymmetryMode::None => ((0..degree).collect(), true, 1, 0),
    };
    Ok(BasisSpec { degree, exponents, complex_parts, rotation_order, residue })
}

/// Monic polynomial `z^N + a_{N-1} z^{N-1} + ... + a_0`.
///
/// The leading coefficient is implicit and never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct MonicPolynomial {
    coeffs: Vec<Complex>,
}

impl MonicPolynomial {
    /// From the lower coefficients `a_0..a_{N-1}`; the degree is their count.
    pub fn new(coeffs: Vec<Complex>) -> Self {
        MonicPolynomial { coeffs }
    }

    /// `z^degree`.
    pub fn monomial(ctx: &Context, degree: usize) -> Self {
        MonicPolynomial { coeffs: vec![Complex::zero(ctx); degree] }
    }

    /// From real lower coefficients `a_0..a_{N-1}`.
    pub fn from_real(coeffs: Vec<Real>) -> Self {
        MonicPolynomial { coeffs: coeffs.into_iter().map(Complex::from_real).collect() }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Lower coefficients `a_0..a_{N-1}`.
    pub fn lower_coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, including the implicit leading one and zeros
    /// above the degree.
    pub fn coeff(&self, ctx: &Context, k: usize) -> Complex {
        match k.cmp(&self.degree()) {
            std::cmp::Ordering::Less => self.coeffs[k].clone(),
            std::cmp::Ordering::Equal => Complex::one(ctx),
            std::cmp::Ordering::Greater => Complex::zero(ctx),
        }
    }

    /// All coefficients `a_0..a_N` with `a_N = 1`.
    pub fn full_coeffs(&self, ctx: &Context) -> Vec<Complex> {
        let mut v = self.coeffs.clone();
        v.push(Complex::one(ctx));
        v
    }

    pub fn eval(&self, z: &Complex) -> Complex {
        let mut acc = z.clone();
        let n = self.degree();
        if n == 0 {
            return Complex::from_real(Real(rug::Float::with_val(z.prec(), 1)));
        }
        acc += &self.coeffs[n - 1];
        for a in self.coeffs[..n - 1].iter().rev() {
            acc = &acc * z;
            acc += a;
        }
        acc
    }

    /// Value and derivative by Horner's scheme.
    pub fn eval_with_derivative(&self, z: &Complex) -> (Complex, Complex) {
        let one = Complex::from_real(Real(rug::Float::with_val(z.prec(), 1)));
        let mut p = one;
        let mut dp = Complex::from_real(Real(rug::Float::new(z.prec())));
        for a in self.coeffs.iter().rev() {
            dp = &dp * z + &p;
            p = &p * z + a;
        }
        (p, dp)
    }

    pub fn mul(&self, other: &MonicPolynomial, ctx: &Context) -> MonicPolynomial {
        let a = self.full_coeffs(ctx);
        let b = other.full_coeffs(ctx);
        let mut c = vec![Complex::zero(ctx); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                c[i + j] += &(x * y);
            }
        }
        c.pop();
        MonicPolynomial { coeffs: c }
    }

    pub fn pow(&self, e: usize, ctx: &Context) -> MonicPolynomial {
        let mut acc = MonicPolynomial::monomial(ctx, 0);
        for _ in 0..e {
            acc = acc.mul(self, ctx);
        }
        acc
    }

    /// Largest `|Im a_k|`.
    pub fn max_imag(&self, ctx: &Context) -> Real {
        self.coeffs.iter().fold(ctx.zero(), |m, a| m.max(a.im.abs()))
    }
}

/// Maps solved real coefficients back to `z^N - sum (lambda_k + i lambda_{K+k}) z^{e_k}`.
pub fn assemble_polynomial(ctx: &Context, spec: &BasisSpec, lambda: &[Real]) -> Result<MonicPolynomial> {
    if lambda.len() != spec.n_basis() {
        return Err(Error::DimensionMismatch(format!("{} coefficients for a basis of size {}", lambda.len(), spec.n_basis())));
    }
    let k = spec.exponents.len();
    let mut coeffs = vec![Complex::zero(ctx); spec.degree];
    for (j, &e) in spec.exponents.iter().enumerate() {
        let im = if spec.complex_parts { -&lambda[j + k] } else { ctx.zero() };
        coeffs[e] = Complex::new(-&lambda[j], im);
    }
    Ok(MonicPolynomial::new(coeffs))
}

/// A curve paired with a basis: the approximation problem `f = gamma^N`.
pub struct CurveProblem<'a> {
    pub curve: &'a BoundaryCurve,
    pub spec: &'a BasisSpec,
}

impl Problem for CurveProblem<'_> {
    fn context(&self) -> &Context {
        self.curve.context()
    }

    fn dim(&self) -> usize {
        self.spec.n_basis()
    }

    fn eval(&self, t: &Real) -> Sample {
        self.spec.eval_at(&self.curve.eval(t))
    }

    fn singular_params(&self) -> &[Real] {
        self.curve.singular_params()
    }
}
