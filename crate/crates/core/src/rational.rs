//! Exact rational numbers backed by arbitrary-precision integers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Reduced fraction `numerator / denominator` with `denominator >= 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(BigRational);

/// How [`Rational::to_decimal`] disposes of the digits it drops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecimalRounding {
    Truncate,
    /// Round to nearest; exact ties go toward zero.
    HalfTowardZero,
    /// Round to nearest; exact ties go away from zero.
    HalfAwayFromZero,
}

impl Rational {
    /// Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Rational) -> Option<Rational> {
        if rhs.is_zero() {
            None
        } else {
            Some(Rational(&self.0 / &rhs.0))
        }
    }

    /// Nearest double; saturates to a signed infinity when the magnitude
    /// exceeds the `f64` range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        match self.0.to_f64() {
            Some(v) if v.is_finite() && v != 0.0 => v,
            _ => {
                let l = self.ln_abs();
                let mag = l.exp();
                if self.signum() < 0 {
                    -mag
                } else {
                    mag
                }
            }
        }
    }

    /// Natural log of `|self|`, accurate for values far outside the
    /// `f64` range. Returns `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        ln_abs_int(self.0.numer()) - ln_abs_int(self.0.denom())
    }

    /// Fixed-point decimal string with exactly `places` fractional digits.
    pub fn to_decimal(&self, places: usize, mode: DecimalRounding) -> String {
        let scale = BigInt::from(10u32).pow(places as u32);
        let scaled = self.0.numer().abs() * &scale;
        let den = self.0.denom();
        let (mut q, rem) = scaled.div_rem(den);
        let twice = &rem * 2u32;
        let round_up = match mode {
            DecimalRounding::Truncate => false,
            DecimalRounding::HalfTowardZero => twice > *den,
            DecimalRounding::HalfAwayFromZero => twice >= *den && !rem.is_zero(),
        };
        if round_up {
            q += 1u32;
        }
        let digits = q.to_string();
        let (int_part, frac_part) = if places == 0 {
            (digits, String::new())
        } else if digits.len() > places {
            let split = digits.len() - places;
            (digits[..split].to_string(), digits[split..].to_string())
        } else {
            ("0".to_string(), format!("{digits:0>places$}"))
        };
        let sign = if self.signum() < 0 && !q.is_zero() { "-" } else { "" };
        if places == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }
}

fn ln_abs_int(x: &BigInt) -> f64 {
    let mag = x.magnitude();
    let bits = mag.bits();
    let shift = bits.saturating_sub(64);
    let top = (mag >> shift).to_f64().expect("64-bit value fits in f64");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rational({self})")
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division by zero panics, as for the integer types; see `checked_div`.
forward_binop!(Div, div);
