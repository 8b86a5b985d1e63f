//! Exact arithmetic in `ℚ(√d)`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `x + y√d` with rational `x`, `y` and a fixed integer `d`.
///
/// Values combined in one computation must share `d`. When `d = 1` the
/// irrational part is folded into `x`, so `y` stays zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExtScalar {
    x: BigRational,
    y: BigRational,
    d: BigInt,
}

impl QuadExtScalar {
    pub fn new(x: BigRational, y: BigRational, d: BigInt) -> Self {
        let mut s = QuadExtScalar { x, y, d };
        s.normalize();
        s
    }

    pub fn rational(x: BigRational, d: &BigInt) -> Self {
        QuadExtScalar {
            x,
            y: BigRational::zero(),
            d: d.clone(),
        }
    }

    pub fn from_integer(n: i64, d: &BigInt) -> Self {
        Self::rational(BigRational::from_integer(n.into()), d)
    }

    fn normalize(&mut self) {
        if self.d.is_one() && !self.y.is_zero() {
            self.x = &self.x + &self.y;
            self.y = BigRational::zero();
        }
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    /// `x² - d y²`; zero only for zero when `d` is not a square.
    pub fn norm(&self) -> BigRational {
        &self.x * &self.x - BigRational::from_integer(self.d.clone()) * &self.y * &self.y
    }

    pub fn conjugate(&self) -> Self {
        QuadExtScalar {
            x: self.x.clone(),
            y: -&self.y,
            d: self.d.clone(),
        }
    }

    /// `None` when dividing by zero.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let n = other.norm();
        if n.is_zero() {
            return None;
        }
        let num = self * &other.conjugate();
        Some(QuadExtScalar::new(num.x / &n, num.y / &n, self.d.clone()))
    }

    /// Approximate number of decimal digits in the largest numerator or
    /// denominator.
    pub fn digits(&self) -> u64 {
        [
            self.x.numer(),
            self.x.denom(),
            self.y.numer(),
            self.y.denom(),
        ]
        .iter()
        .map(|v| v.bits())
        .max()
        .map_or(0, |bits| {
            (bits as f64 * std::f64::consts::LOG10_2).ceil() as u64
        })
    }

    fn check_context(&self, other: &Self) {
        assert_eq!(
            self.d, other.d,
            "mixing values from different quadratic fields"
        );
    }
}

// Ratio's own Hash expands a continued fraction, which is slow and deeply
// recursive on large values. Reduced fractions are canonical anyway.
impl Hash for QuadExtScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for v in [
            self.x.numer(),
            self.x.denom(),
            self.y.numer(),
            self.y.denom(),
            &self.d,
        ] {
            v.hash(state);
        }
    }
}

impl Add for &QuadExtScalar {
    type Output = QuadExtScalar;

    fn add(self, rhs: &QuadExtScalar) -> QuadExtScalar {
        self.check_context(rhs);
        QuadExtScalar::new(&self.x + &rhs.x, &self.y + &rhs.y, self.d.clone())
    }
}

impl Sub for &QuadExtScalar {
    type Output = QuadExtScalar;

    fn sub(self, rhs: &QuadExtScalar) -> QuadExtScalar {
        self.check_context(rhs);
        QuadExtScalar::new(&self.x - &rhs.x, &self.y - &rhs.y, self.d.clone())
    }
}

impl Mul for &QuadExtScalar {
    type Output = QuadExtScalar;

    fn mul(self, rhs: &QuadExtScalar) -> QuadExtScalar {
        self.check_context(rhs);
        let d = BigRational::from_integer(self.d.clone());
        let x = &self.x * &rhs.x + d * &self.y * &rhs.y;
        let y = &self.x * &rhs.y + &self.y * &rhs.x;
        QuadExtScalar::new(x, y, self.d.clone())
    }
}

impl Neg for &QuadExtScalar {
    type Output = QuadExtScalar;

    fn neg(self) -> QuadExtScalar {
        QuadExtScalar {
            x: -&self.x,
            y: -&self.y,
            d: self.d.clone(),
        }
    }
}

impl fmt::Display for QuadExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", self.x);
        }
        let sign = if self.y.is_negative() { "-" } else { "+" };
        let abs = self.y.abs();
        let coeff = if abs.is_one() {
            String::new()
        } else {
            format!("{abs}*")
        };
        if self.x.is_zero() {
            let lead = if self.y.is_negative() { "-" } else { "" };
            write!(f, "{lead}{coeff}sqrt({})", self.d)
        } else {
            write!(f, "{} {sign} {coeff}sqrt({})", self.x, self.d)
        }
    }
}
