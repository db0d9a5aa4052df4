use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use super::real::{Context, Real};

/// Extended-precision complex number in rectangular form.
///
/// Modulus and argument are always derived from `re`/`im`.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn zero(ctx: &Context) -> Self {
        Complex { re: ctx.zero(), im: ctx.zero() }
    }

    pub fn one(ctx: &Context) -> Self {
        Complex { re: ctx.one(), im: ctx.zero() }
    }

    pub fn i(ctx: &Context) -> Self {
        Complex { re: ctx.zero(), im: ctx.one() }
    }

    pub fn from_real(re: Real) -> Self {
        let im = Real(rug::Float::new(re.prec()));
        Complex { re, im }
    }

    /// `e^{i theta}`.
    pub fn cis(theta: &Real) -> Self {
        let (s, c) = theta.sin_cos();
        Complex { re: c, im: s }
    }

    pub fn from_polar(modulus: &Real, theta: &Real) -> Self {
        Complex::cis(theta).scale(modulus)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Complex {
        Complex { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Real {
        self.re.square() + self.im.square()
    }

    pub fn abs(&self) -> Real {
        self.re.hypot(&self.im)
    }

    /// Principal argument in `(-pi, pi]`.
    pub fn arg(&self) -> Real {
        self.im.atan2(&self.re)
    }

    /// Argument normalized into `[0, 2pi)`.
    pub fn arg_positive(&self) -> Real {
        let a = self.arg();
        if a.is_sign_negative() {
            let two_pi = two_pi(self.prec());
            a + two_pi
        } else {
            a
        }
    }

    pub fn scale(&self, s: &Real) -> Complex {
        Complex { re: &self.re * s, im: &self.im * s }
    }

    pub fn mul_i(&self) -> Complex {
        Complex { re: -&self.im, im: self.re.clone() }
    }

    pub fn recip(&self) -> Complex {
        let n = self.norm_sqr();
        Complex { re: &self.re / &n, im: -(&self.im / &n) }
    }

    pub fn square(&self) -> Complex {
        self * self
    }

    /// Integer power by repeated squaring; negative exponents invert.
    pub fn powi(&self, e: i64) -> Complex {
        if e < 0 {
            return self.recip().powi(-e);
        }
        let mut base = self.clone();
        let mut acc = Complex::from_real(Real(rug::Float::with_val(self.prec(), 1)));
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn exp(&self) -> Complex {
        Complex::from_polar(&self.re.exp(), &self.im)
    }

    /// Principal logarithm, imaginary part in `(-pi, pi]`.
    pub fn ln(&self) -> Complex {
        Complex { re: self.abs().ln(), im: self.arg() }
    }

    /// Principal power `exp(e * Log z)`; `0^e = 0` for `e > 0`.
    pub fn powr(&self, e: &Real) -> Complex {
        if self.is_zero() {
            return self.clone();
        }
        let modulus = self.abs().powr(e);
        let theta = self.arg() * e;
        Complex::from_polar(&modulus, &theta)
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Complex {
        if self.is_zero() {
            return self.clone();
        }
        let r = self.abs();
        // re >= 0 branch; stable formulas avoid cancellation
        let t = ((&r + self.re.abs()) / 2).sqrt();
        if !self.re.is_sign_negative() {
            let im = &self.im / (&t * 2);
            Complex { re: t, im }
        } else {
            let re = self.im.abs() / (&t * 2);
            let im = if self.im.is_sign_negative() { -t } else { t };
            Complex { re, im }
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

fn two_pi(prec: u32) -> Real {
    Real(rug::Float::with_val(prec, rug::float::Constant::Pi) * 2u32)
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(20);
        write!(f, "({} {}{}i)", self.re.to_sci_string(sig), if self.im.is_sign_negative() { "" } else { "+" }, self.im.to_sci_string(sig))
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -self.re, im: -self.im }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -&self.re, im: -&self.im }
    }
}

impl Add<&Complex> for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub<&Complex> for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul<&Complex> for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Complex { re, im }
    }
}

impl Div<&Complex> for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Complex) -> Complex {
        let n = rhs.norm_sqr();
        let re = (&self.re * &rhs.re + &self.im * &rhs.im) / &n;
        let im = (&self.im * &rhs.re - &self.re * &rhs.im) / &n;
        Complex { re, im }
    }
}

impl Mul<&Real> for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Real) -> Complex {
        self.scale(rhs)
    }
}

impl Div<&Real> for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Real) -> Complex {
        Complex { re: &self.re / rhs, im: &self.im / rhs }
    }
}

impl Add<&Real> for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Real) -> Complex {
        Complex { re: &self.re + rhs, im: self.im.clone() }
    }
}

impl Sub<&Real> for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Real) -> Complex {
        Complex { re: &self.re - rhs, im: self.im.clone() }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident, $rhs:ty) => {
        impl $trait<$rhs> for Complex {
            type Output = Complex;
            fn $method(self, rhs: $rhs) -> Complex {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&$rhs> for Complex {
            type Output = Complex;
            fn $method(self, rhs: &$rhs) -> Complex {
                (&self).$method(rhs)
            }
        }
        impl $trait<$rhs> for &Complex {
            type Output = Complex;
            fn $method(self, rhs: $rhs) -> Complex {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add, Complex);
forward_owned!(Sub, sub, Complex);
forward_owned!(Mul, mul, Complex);
forward_owned!(Div, div, Complex);
forward_owned!(Mul, mul, Real);
forward_owned!(Div, div, Real);
forward_owned!(Add, add, Real);
forward_owned!(Sub, sub, Real);

impl AddAssign<&Complex> for Complex {
    fn add_assign(&mut self, rhs: &Complex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Complex> for Complex {
    fn sub_assign(&mut self, rhs: &Complex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Complex> for Complex {
    fn mul_assign(&mut self, rhs: &Complex) {
        *self = &*self * rhs;
    }
}
