//! Exact scalars: big rationals and elements of the quadratic fields ℚ(√d).

use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rational_from_int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `a + b·√d` with rational `a`, `b`.
///
/// The radicand is kept square-free. A perfect-square radicand collapses the
/// value to a plain rational (`b = 0`), and every value with `b = 0` carries
/// `d = 1`, so two numbers are equal exactly when their components are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadraticNumber {
    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        let (square, free) = split_square(d);
        let b = b * rational_from_int(square);
        QuadraticNumber { a, b, d: free }.normalized()
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadraticNumber {
            a,
            b: Rational::zero(),
            d: 1,
        }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Self::from_rational(rational_from_int(v))
    }

    /// The rational part `a`.
    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    /// The coefficient `b` of `√d`.
    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    /// Square-free radicand; `1` for rational values.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    /// The Galois conjugate `a − b√d`.
    pub fn conjugate(&self) -> Self {
        QuadraticNumber {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// `a² − d·b²`, the field norm.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * rational_from_int(self.d)
    }

    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = self.norm();
        let conj = self.conjugate();
        Some(QuadraticNumber {
            a: conj.a / &norm,
            b: conj.b / &norm,
            d: self.d,
        })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    pub fn to_f64(&self) -> f64 {
        let a = rational_to_f64(&self.a);
        if self.b.is_zero() {
            return a;
        }
        a + rational_to_f64(&self.b) * Float::sqrt(self.d as f64)
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() || self.d == 1 {
            self.a += core::mem::replace(&mut self.b, Rational::zero());
            self.d = 1;
        } else if self.d == 0 {
            self.b = Rational::zero();
            self.d = 1;
        }
        self
    }

    fn common_radicand(&self, other: &Self) -> u64 {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.d,
            (_, true) => self.d,
            _ => {
                assert_eq!(
                    self.d, other.d,
                    "quadratic numbers over different fields cannot be combined"
                );
                self.d
            }
        }
    }
}

/// Splits `d = s²·f` with `f` square-free, returning `(s, f)`.
fn split_square(d: u64) -> (u64, u64) {
    if d == 0 {
        return (0, 0);
    }
    let mut square = 1u64;
    let mut free = d;
    let mut p = 2u64;
    while p.saturating_mul(p) <= free {
        while free % (p * p) == 0 {
            free /= p * p;
            square *= p;
        }
        p += 1;
    }
    (square, free)
}

impl Zero for QuadraticNumber {
    fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadraticNumber {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

impl<'a> Add<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;

    fn add(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let d = self.common_radicand(rhs);
        QuadraticNumber {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            d,
        }
        .normalized()
    }
}

impl<'a> Sub<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;

    fn sub(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;

    fn mul(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let d = self.common_radicand(rhs);
        let rd = rational_from_int(d);
        QuadraticNumber {
            a: &self.a * &rhs.a + &self.b * &rhs.b * rd,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        }
        .normalized()
    }
}

impl<'a> Div<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let inv = rhs.checked_inv().expect("division by zero quadratic number");
        self * &inv
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;

    fn neg(self) -> QuadraticNumber {
        QuadraticNumber {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;

    fn neg(self) -> QuadraticNumber {
        -&self
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        let mag = self.b.abs();
        let surd = if mag.is_one() {
            alloc::format!("√{}", self.d)
        } else {
            alloc::format!("{mag}·√{}", self.d)
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{surd}")
            } else {
                write!(f, "{surd}")
            }
        } else {
            write!(f, "{} {sign} {surd}", self.a)
        }
    }
}

/// Decimal rendering used in error payloads.
pub(crate) fn display_string(q: &QuadraticNumber) -> String {
    q.to_string()
}
