//! Exact rational scalars.
//!
//! Every structure constant that the engine touches is rational, so all
//! identity checks are exact equalities. Numerator and denominator are
//! `i128` and every operation is overflow-checked; an overflow is a bug in
//! the caller's data scale, not a rounding event, and panics.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar(Ratio<i128>);

impl Scalar {
    pub const ZERO: Scalar = Scalar(Ratio::new_raw(0, 1));
    pub const ONE: Scalar = Scalar(Ratio::new_raw(1, 1));
    pub const MINUS_ONE: Scalar = Scalar(Ratio::new_raw(-1, 1));

    /// Builds `num/den` in lowest terms. Panics on a zero denominator.
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(Ratio::new(num, den))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(Ratio::from_integer(n as i128))
    }

    /// `(-1)^exponent`.
    pub fn sign(exponent: i64) -> Self {
        if exponent.rem_euclid(2) == 0 {
            Scalar::ONE
        } else {
            Scalar::MINUS_ONE
        }
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Scalar(self.0.recip())
    }

    pub fn gcd_int(a: i128, b: i128) -> i128 {
        a.gcd(&b)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseScalarError(pub String);

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseScalarError(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            Some((p, q)) => {
                let p: i128 = p.trim().parse().map_err(|_| bad())?;
                let q: i128 = q.trim().parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(bad());
                }
                Ok(Scalar::new(p, q))
            }
            None => Ok(Scalar(Ratio::from_integer(t.parse().map_err(|_| bad())?))),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<i32> for Scalar {
    fn from(n: i32) -> Self {
        Scalar::from_int(n as i64)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar(self.0.checked_add(&rhs.0).expect("scalar overflow in add"))
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar(self.0.checked_sub(&rhs.0).expect("scalar overflow in sub"))
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        // sign flips are by far the most common product
        if rhs.0 == Ratio::new_raw(1, 1) {
            return self;
        }
        if rhs.0 == Ratio::new_raw(-1, 1) {
            return -self;
        }
        Scalar(self.0.checked_mul(&rhs.0).expect("scalar overflow in mul"))
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        Scalar(self.0.checked_div(&rhs.0).expect("scalar overflow in div"))
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = *self + rhs;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self = *self - rhs;
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        *self = *self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::ZERO, |a, b| a + b)
    }
}
