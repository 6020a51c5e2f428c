//! The scalar field Q[sqrt(2)].
//!
//! Every amplitude of the Hadamard walk is a product of coin entries
//! `+-1/sqrt(2)`, so it lives in the quadratic extension Q[sqrt(2)].
//! [`Qr2`] stores the rational part and the coefficient of sqrt(2) as
//! arbitrary-precision rationals, which makes all arithmetic in this
//! crate exact: equality is structural, and there is no tolerance
//! anywhere in the test suites.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;

/// An element `a + b*sqrt(2)` of Q[sqrt(2)], with `a`, `b` exact rationals.
///
/// `num_rational::BigRational` keeps both components in lowest terms with a
/// positive denominator, so equality of values is equality of
/// representations. Nonzero elements are invertible: `a^2 - 2 b^2` vanishes
/// over Q only at zero, because sqrt(2) is irrational.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Qr2 {
    rat: BigRational,
    rad: BigRational,
}

impl Qr2 {
    pub fn new(rat: BigRational, rad: BigRational) -> Self {
        Qr2 { rat, rad }
    }

    pub fn zero() -> Self {
        Qr2::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Qr2::new(BigRational::one(), BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Qr2::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// Rational `n/d`. Panics if `d == 0`; intended for literals.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        Qr2::new(
            BigRational::new(BigInt::from(n), BigInt::from(d)),
            BigRational::zero(),
        )
    }

    /// `(n/d) * sqrt(2)`. Panics if `d == 0`; intended for literals.
    pub fn radical_ratio(n: i64, d: i64) -> Self {
        Qr2::new(
            BigRational::zero(),
            BigRational::new(BigInt::from(n), BigInt::from(d)),
        )
    }

    pub fn sqrt2() -> Self {
        Qr2::radical_ratio(1, 1)
    }

    /// `1/sqrt(2)`, i.e. `sqrt(2)/2`: the magnitude of every Hadamard entry.
    pub fn inv_sqrt2() -> Self {
        Qr2::radical_ratio(1, 2)
    }

    pub fn from_rational(rat: BigRational) -> Self {
        Qr2::new(rat, BigRational::zero())
    }

    pub fn rat_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn rad_part(&self) -> &BigRational {
        &self.rad
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.rad.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.rad.is_zero()
    }

    /// The value as a plain rational, if the sqrt(2) coefficient vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.rad.is_zero().then_some(&self.rat)
    }

    /// Galois conjugate `a - b*sqrt(2)` (sends sqrt(2) to -sqrt(2)).
    ///
    /// This is *not* the complex conjugate: all values here are real, and the
    /// trace inner product on matrices uses the identity conjugation.
    pub fn conjugate(&self) -> Self {
        Qr2::new(self.rat.clone(), -self.rad.clone())
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Exact inverse via `1/(a + b*sqrt(2)) = (a - b*sqrt(2))/(a^2 - 2 b^2)`.
    pub fn inverse(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = &self.rat * &self.rat - BigRational::from_integer(BigInt::from(2)) * &self.rad * &self.rad;
        Ok(Qr2::new(&self.rat / &norm, -&self.rad / &norm))
    }

    pub fn checked_div(&self, rhs: &Qr2) -> Result<Self, Error> {
        Ok(self * &rhs.inverse()?)
    }

    /// Sign of the real number `a + b*sqrt(2)`.
    pub fn sign(&self) -> Ordering {
        match (self.rat.cmp(&BigRational::zero()), self.rad.cmp(&BigRational::zero())) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            // Opposite signs: compare a^2 with 2 b^2; the larger magnitude wins.
            (rat_sign, _) => {
                let a2 = &self.rat * &self.rat;
                let b2_twice = BigRational::from_integer(BigInt::from(2)) * &self.rad * &self.rad;
                match a2.cmp(&b2_twice) {
                    Ordering::Greater => rat_sign,
                    Ordering::Less => rat_sign.reverse(),
                    Ordering::Equal => Ordering::Equal, // unreachable for nonzero parts
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }
}

impl fmt::Debug for Qr2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Exact string form used in all JSON/CSV output: `a/b` when the sqrt(2)
/// coefficient vanishes, `a/b + c/d*sqrt(2)` otherwise. Parses back with
/// [`FromStr`] to the identical value.
impl fmt::Display for Qr2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rad.is_zero() {
            write!(f, "{}", self.rat)
        } else {
            write!(f, "{} + {}*sqrt(2)", self.rat, self.rad)
        }
    }
}

impl FromStr for Qr2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let err = || Error::ParseScalar(s.to_string());
        let s = s.trim();
        match s.strip_suffix("*sqrt(2)") {
            None => {
                let rat = BigRational::from_str(s).map_err(|_| err())?;
                Ok(Qr2::from_rational(rat))
            }
            Some(head) => {
                let (rat_str, rad_str) = head.rsplit_once(" + ").ok_or_else(err)?;
                let rat = BigRational::from_str(rat_str.trim()).map_err(|_| err())?;
                let rad = BigRational::from_str(rad_str.trim()).map_err(|_| err())?;
                Ok(Qr2::new(rat, rad))
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Qr2 {
            type Output = Qr2;
            fn $method(self, rhs: Qr2) -> Qr2 {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Qr2> for Qr2 {
            type Output = Qr2;
            fn $method(self, rhs: &Qr2) -> Qr2 {
                (&self).$method(rhs)
            }
        }
        impl $trait<Qr2> for &Qr2 {
            type Output = Qr2;
            fn $method(self, rhs: Qr2) -> Qr2 {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&Qr2> for &Qr2 {
    type Output = Qr2;
    fn add(self, rhs: &Qr2) -> Qr2 {
        Qr2::new(&self.rat + &rhs.rat, &self.rad + &rhs.rad)
    }
}
forward_binop!(Add, add);

impl Sub<&Qr2> for &Qr2 {
    type Output = Qr2;
    fn sub(self, rhs: &Qr2) -> Qr2 {
        Qr2::new(&self.rat - &rhs.rat, &self.rad - &rhs.rad)
    }
}
forward_binop!(Sub, sub);

impl Mul<&Qr2> for &Qr2 {
    type Output = Qr2;
    fn mul(self, rhs: &Qr2) -> Qr2 {
        // (a + b r)(c + d r) = ac + 2bd + (ad + bc) r, with r^2 = 2.
        let two = BigRational::from_integer(BigInt::from(2));
        Qr2::new(
            &self.rat * &rhs.rat + two * &self.rad * &rhs.rad,
            &self.rat * &rhs.rad + &self.rad * &rhs.rat,
        )
    }
}
forward_binop!(Mul, mul);

/// Exact field division. Panics on a zero divisor; use
/// [`Qr2::checked_div`] where the divisor is not known to be nonzero.
impl Div<&Qr2> for &Qr2 {
    type Output = Qr2;
    fn div(self, rhs: &Qr2) -> Qr2 {
        self.checked_div(rhs).expect("Qr2 division by zero")
    }
}
forward_binop!(Div, div);

impl Neg for &Qr2 {
    type Output = Qr2;
    fn neg(self) -> Qr2 {
        Qr2::new(-self.rat.clone(), -self.rad.clone())
    }
}

impl Neg for Qr2 {
    type Output = Qr2;
    fn neg(self) -> Qr2 {
        Qr2::new(-self.rat, -self.rad)
    }
}

impl AddAssign<&Qr2> for Qr2 {
    fn add_assign(&mut self, rhs: &Qr2) {
        self.rat += &rhs.rat;
        self.rad += &rhs.rad;
    }
}

impl AddAssign for Qr2 {
    fn add_assign(&mut self, rhs: Qr2) {
        *self += &rhs;
    }
}

impl SubAssign<&Qr2> for Qr2 {
    fn sub_assign(&mut self, rhs: &Qr2) {
        self.rat -= &rhs.rat;
        self.rad -= &rhs.rad;
    }
}

impl MulAssign<&Qr2> for Qr2 {
    fn mul_assign(&mut self, rhs: &Qr2) {
        *self = &*self * rhs;
    }
}

impl Sum for Qr2 {
    fn sum<I: Iterator<Item = Qr2>>(iter: I) -> Qr2 {
        iter.fold(Qr2::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

/// A complex number with [`Qr2`] real and imaginary parts.
///
/// Just enough structure for qubit states: the symmetric initial state
/// `[1/sqrt(2), i/sqrt(2)]` is exactly representable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplexQr2 {
    pub re: Qr2,
    pub im: Qr2,
}

impl ComplexQr2 {
    pub fn new(re: Qr2, im: Qr2) -> Self {
        ComplexQr2 { re, im }
    }

    pub fn zero() -> Self {
        ComplexQr2::new(Qr2::zero(), Qr2::zero())
    }

    pub fn real(re: Qr2) -> Self {
        ComplexQr2::new(re, Qr2::zero())
    }

    pub fn conj(&self) -> Self {
        ComplexQr2::new(self.re.clone(), -&self.im)
    }

    /// `|z|^2 = re^2 + im^2`, a real element of Q[sqrt(2)].
    pub fn norm_sqr(&self) -> Qr2 {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, c: &Qr2) -> Self {
        ComplexQr2::new(c * &self.re, c * &self.im)
    }
}

impl Add<&ComplexQr2> for &ComplexQr2 {
    type Output = ComplexQr2;
    fn add(self, rhs: &ComplexQr2) -> ComplexQr2 {
        ComplexQr2::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Mul<&ComplexQr2> for &ComplexQr2 {
    type Output = ComplexQr2;
    fn mul(self, rhs: &ComplexQr2) -> ComplexQr2 {
        ComplexQr2::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}
