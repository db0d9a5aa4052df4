use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::{Constant, Round};
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

/// Smallest number of decimal digits a context may carry.
pub const MIN_DIGITS: u32 = 15;
/// Default working precision in decimal digits.
pub const DEFAULT_DIGITS: u32 = 60;

const GUARD_BITS: u32 = 16;

/// A fixed numeric precision shared by every value of one computation.
///
/// The context is `Copy` and never mutated; values created through it carry
/// the corresponding binary precision and binary operations keep the larger
/// of their operands' precisions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Context {
    digits: u32,
    bits: u32,
}

impl Context {
    pub fn new(digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::InsufficientPrecision { digits, min: MIN_DIGITS });
        }
        let bits = (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS;
        Ok(Context { digits, bits })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn zero(&self) -> Real {
        Real(Float::new(self.bits))
    }

    pub fn one(&self) -> Real {
        self.int(1)
    }

    pub fn int(&self, v: i64) -> Real {
        Real(Float::with_val(self.bits, v))
    }

    pub fn ratio(&self, num: i64, den: i64) -> Real {
        Real(Float::with_val(self.bits, num) / den)
    }

    /// Converts an `f64` exactly (binary fractions such as `0.1` are kept as
    /// stored, not as their decimal intent; use [`Context::parse`] for that).
    pub fn from_f64(&self, v: f64) -> Real {
        Real(Float::with_val(self.bits, v))
    }

    pub fn parse(&self, s: &str) -> Result<Real> {
        let parsed = Float::parse(s.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        Ok(Real(Float::with_val(self.bits, parsed)))
    }

    pub fn pi(&self) -> Real {
        Real(Float::with_val(self.bits, Constant::Pi))
    }

    pub fn two_pi(&self) -> Real {
        Real(Float::with_val(self.bits, Constant::Pi) * 2u32)
    }

    /// `10^(k - digits)`, the scale used for precision-relative tolerances.
    pub fn tol(&self, k: i32) -> Real {
        self.pow10(k - self.digits as i32)
    }

    pub fn pow10(&self, e: i32) -> Real {
        Real(Float::with_val(self.bits, 10u32).pow(e))
    }
}

/// Extended-precision real number backed by an MPFR float.
#[derive(Clone, Debug)]
pub struct Real(pub(crate) Float);

impl Real {
    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn inner(&self) -> &Float {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_sign_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn abs(&self) -> Real {
        Real(self.0.clone().abs())
    }

    pub fn sqrt(&self) -> Real {
        Real(self.0.clone().sqrt())
    }

    pub fn square(&self) -> Real {
        Real(self.0.clone().square())
    }

    pub fn exp(&self) -> Real {
        Real(self.0.clone().exp())
    }

    pub fn ln(&self) -> Real {
        Real(self.0.clone().ln())
    }

    pub fn sin(&self) -> Real {
        Real(self.0.clone().sin())
    }

    pub fn cos(&self) -> Real {
        Real(self.0.clone().cos())
    }

    pub fn sin_cos(&self) -> (Real, Real) {
        let (s, c) = self.0.clone().sin_cos(Float::new(self.prec()));
        (Real(s), Real(c))
    }

    pub fn atan2(&self, x: &Real) -> Real {
        Real(self.0.clone().atan2(&x.0))
    }

    pub fn gamma(&self) -> Real {
        Real(self.0.clone().gamma())
    }

    pub fn powi(&self, e: i32) -> Real {
        Real(self.0.clone().pow(e))
    }

    pub fn powr(&self, e: &Real) -> Real {
        Real(self.0.clone().pow(&e.0))
    }

    pub fn floor(&self) -> Real {
        Real(self.0.clone().floor())
    }

    pub fn hypot(&self, other: &Real) -> Real {
        Real(self.0.clone().hypot(&other.0))
    }

    /// Fractional part in `[0, 1)`.
    pub fn fract_positive(&self) -> Real {
        let f = self.floor();
        let mut r = self - &f;
        if r.0 >= 1 {
            r.0 -= 1;
        }
        r
    }

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Real) -> Real {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Scientific notation with `sig` significant digits, e.g. `1.25e-3`.
    ///
    /// The output depends only on the value and `sig`, so it is stable
    /// across runs and platforms.
    pub fn to_sci_string(&self, sig: usize) -> String {
        if self.0.is_zero() {
            return format!("0.{}e0", "0".repeat(sig.saturating_sub(1)));
        }
        // value = 0.digits * 10^exp
        let (neg, digits, exp) = self.0.to_sign_string_exp_round(10, Some(sig.max(1)), Round::Nearest);
        let exp = exp.expect("finite") - 1;
        let (head, tail) = digits.split_at(1);
        let sign = if neg { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(20);
        f.write_str(&self.to_sci_string(sig))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl PartialEq<i32> for Real {
    fn eq(&self, other: &i32) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<i32> for Real {
    fn partial_cmp(&self, other: &i32) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0.clone())
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident, $op:tt) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                let prec = self.prec().max(rhs.prec());
                Real(Float::with_val(prec, &self.0 $op &rhs.0))
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self $op &rhs
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                &self $op rhs
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                &self $op &rhs
            }
        }
        impl $trait<i32> for &Real {
            type Output = Real;
            fn $method(self, rhs: i32) -> Real {
                Real(Float::with_val(self.prec(), &self.0 $op rhs))
            }
        }
        impl $trait<i32> for Real {
            type Output = Real;
            fn $method(self, rhs: i32) -> Real {
                &self $op rhs
            }
        }
        impl $assign_trait<&Real> for Real {
            fn $assign_method(&mut self, rhs: &Real) {
                if rhs.prec() > self.prec() {
                    self.0.set_prec(rhs.prec());
                }
                $assign_trait::$assign_method(&mut self.0, &rhs.0);
            }
        }
        impl $assign_trait<Real> for Real {
            fn $assign_method(&mut self, rhs: Real) {
                $assign_trait::$assign_method(self, &rhs);
            }
        }
        impl $assign_trait<i32> for Real {
            fn $assign_method(&mut self, rhs: i32) {
                $assign_trait::$assign_method(&mut self.0, rhs);
            }
        }
    };
}

real_binop!(Add, add, AddAssign, add_assign, +);
real_binop!(Sub, sub, SubAssign, sub_assign, -);
real_binop!(Mul, mul, MulAssign, mul_assign, *);
real_binop!(Div, div, DivAssign, div_assign, /);
