//! Exact scalars: arbitrary-precision rationals and Gaussian rationals `a + b·i`.
//!
//! Every coefficient in the engine lives in `Q(i)`. Values are kept in
//! canonical form at all times (reduced fractions with positive denominator),
//! so structural equality is value equality.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::traits::{One, Zero};
use num::{BigInt, BigRational, Signed, ToPrimitive};

use crate::error::ScalarError;

/// Arbitrary-precision rational, canonical by construction.
pub type Rational = BigRational;

/// Builds the rational `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"` into a canonical rational.
pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let s = s.trim();
    let bad = || ScalarError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// Exact complex rational `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

pub type Gq = GaussianRational;

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(rat(re, 1), rat(im, 1))
    }

    pub fn real(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(rat(num, den))
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2 = z·conj(z)`, always real.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.checked_inv()?)
    }

    pub fn checked_inv(&self) -> Result<Self, ScalarError> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn pow(&self, exp: i32) -> Result<Self, ScalarError> {
        let base = if exp < 0 { self.checked_inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Multiplication by `i`, cheaper than a full product.
    pub fn mul_i(&self) -> Self {
        Self::new(-self.im.clone(), self.re.clone())
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Parses a real and an imaginary rational string.
    pub fn parse_parts(re: &str, im: &str) -> Result<Self, ScalarError> {
        Ok(Self::new(parse_rational(re)?, parse_rational(im)?))
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_ints(v, 0)
    }
}

impl From<Rational> for GaussianRational {
    fn from(v: Rational) -> Self {
        Self::real(v)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

/// Panics on division by zero; use [`GaussianRational::checked_div`] for a `Result`.
impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

/// Renders `3/8`, `-41/64i`, `65/64-41/64i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}i", self.re, sign, self.im.abs())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(re: (i64, i64), im: (i64, i64)) -> Gq {
        Gq::new(rat(re.0, re.1), rat(im.0, im.1))
    }

    #[test]
    fn modulus_identity() {
        let a = q((1, 2), (1, 1));
        let b = q((1, 2), (-1, 1));
        assert_eq!(&a * &b, Gq::ratio(5, 4));
    }

    #[test]
    fn i_squared() {
        assert_eq!(&Gq::i() * &Gq::i(), Gq::from(-1));
        assert_eq!(Gq::i().mul_i(), Gq::from(-1));
    }

    #[test]
    fn additive_inverse() {
        assert!((Gq::ratio(3, 8) + Gq::ratio(-3, 8)).is_zero());
    }

    #[test]
    fn division() {
        let two_i = Gq::from_ints(0, 2);
        assert_eq!(Gq::one().checked_div(&two_i).unwrap(), q((0, 1), (-1, 2)));
        let minus_6i = Gq::from_ints(0, -6);
        assert_eq!(
            minus_6i.checked_div(&Gq::from(16)).unwrap(),
            q((0, 1), (-3, 8))
        );
        assert_eq!(
            Gq::one().checked_div(&Gq::zero()),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn conjugation() {
        assert_eq!(Gq::from_ints(1, 2).conj(), Gq::from_ints(1, -2));
        assert_eq!(Gq::ratio(5, 4).conj(), Gq::ratio(5, 4));
        assert_eq!((&Gq::i() * &Gq::i()).conj(), Gq::from(-1));
    }

    #[test]
    fn display_and_parse() {
        let z = Gq::parse_parts("65/64", "-41/64").unwrap();
        assert_eq!(z.to_string(), "65/64-41/64i");
        assert_eq!(Gq::parse_parts("0", "-41/64").unwrap().to_string(), "-41/64i");
        assert_eq!(parse_rational("6/-16").unwrap(), rat(-3, 8));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    fn arb_gq() -> impl Strategy<Value = Gq> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20)
            .prop_map(|(a, b, c, d)| Gq::new(rat(a, b), rat(c, d)))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_gq(), b in arb_gq(), c in arb_gq()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            if !b.is_zero() {
                prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
            }
            prop_assert!((&a * &a.conj()).is_real());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!(a.conj().conj(), a.clone());
        }

        #[test]
        fn canonical_representation(n in -100i64..100, d in 1i64..50, k in 1i64..7) {
            let x = Gq::ratio(n, d);
            let y = Gq::ratio(n * k, d * k);
            prop_assert_eq!(format!("{:?}", x), format!("{:?}", y));
        }
    }
}
