//! Exact rational scalars.
//!
//! [`Rational`] wraps an arbitrary-precision fraction that is always kept in
//! lowest terms with a positive denominator. There is deliberately no
//! conversion from floating point.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::Error;

/// An exact fraction `numerator / denominator` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numerator / denominator`, reduced, with the sign on the numerator.
    pub fn new(numerator: i64, denominator: i64) -> Result<Self, Error> {
        Self::from_bigints(BigInt::from(numerator), BigInt::from(denominator))
    }

    pub fn from_bigints(numerator: BigInt, denominator: BigInt) -> Result<Self, Error> {
        if denominator.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numerator, denominator)))
    }

    pub fn from_integer(value: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    /// Nearest `f64` to the exact value.
    pub fn to_f64(&self) -> f64 {
        // num-rational rounds correctly, including for huge numerators and
        // denominators that do not fit in an f64 on their own.
        self.0.to_f64().unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    /// Multiply by a machine integer without building an intermediate `Rational`.
    pub fn mul_int(&self, k: i64) -> Self {
        Rational(&self.0 * BigInt::from(k))
    }
}

impl fmt::Display for Rational {
    /// Always `p/q`, including integers (`3/1`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let well_formed = |t: &str| {
            let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !well_formed(num) || !well_formed(den) {
            return Err(bad());
        }
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        Rational::from_bigints(num, den)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Rational", 2)?;
        st.serialize_field("exact", &self.to_string())?;
        st.serialize_field("float", &self.to_f64())?;
        st.end()
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
// Division by zero panics, as for the primitive integer types.
binop!(Div, div);

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

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

/// `Σ_j row[j] · x[j]` for an integer row and rational vector.
pub(crate) fn int_dot(row: &[u32], x: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (&d, xj) in row.iter().zip(x) {
        if d != 0 && !xj.is_zero() {
            acc += &xj.mul_int(d as i64);
        }
    }
    acc
}

/// Exact inner product of two rational vectors.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn construction_canonicalizes() {
        assert_eq!(r(2, 4).to_string(), "1/2");
        assert_eq!(r(3, -6).to_string(), "-1/2");
        assert_eq!(r(0, 7).to_string(), "0/1");
        assert!(matches!(Rational::new(1, 0), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn float_rendering() {
        assert_eq!(r(1, 2).to_f64(), 0.5);
        assert_eq!(r(4, 3).to_f64(), 4.0 / 3.0);
        assert_eq!(r(-4, 3).to_f64(), -4.0 / 3.0);
    }

    #[test]
    fn huge_values_still_round() {
        let big: Rational = "100000000000000000000000000000000000000000000000000000000000/3"
            .parse()
            .unwrap();
        let x = big.to_f64();
        assert!((x / 3.333333333333333e58 - 1.0).abs() < 1e-15);
        let tiny = big.recip().unwrap();
        assert!((tiny.to_f64() * 3.333333333333333e58 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn parse_forms() {
        assert_eq!("1/4".parse::<Rational>().unwrap(), r(1, 4));
        assert_eq!("-6/4".parse::<Rational>().unwrap(), r(-3, 2));
        assert_eq!("7".parse::<Rational>().unwrap(), r(7, 1));
        for bad in ["", "/", "1/", "1/0", "a/b", "1//2", "--1", "1.5"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn serializes_exact_and_float() {
        let json = serde_json::to_string(&r(3, 4)).unwrap();
        assert_eq!(json, r#"{"exact":"3/4","float":0.75}"#);
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| r(n, d))
    }

    fn is_canonical(x: &Rational) -> bool {
        let g = x.numerator().gcd(x.denominator());
        x.denominator().is_positive()
            && g.is_one()
            && (!x.is_zero() || x.denominator().is_one())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a - &a, Rational::zero());
            if let Some(inv) = a.recip() {
                prop_assert_eq!(&a * &inv, Rational::one());
                prop_assert_eq!(&(&b / &a) * &a, b.clone());
            }
            for x in [&a + &b, &a - &c, &a * &b, -&c, a.abs()] {
                prop_assert!(is_canonical(&x));
            }
            if !b.is_zero() {
                prop_assert!(is_canonical(&(&a / &b)));
            }
        }

        #[test]
        fn ordering_matches_cross_multiplication(a in arb_rational(), b in arb_rational()) {
            let lhs = a.numerator() * b.denominator();
            let rhs = b.numerator() * a.denominator();
            prop_assert_eq!(a.cmp(&b), lhs.cmp(&rhs));
        }

        #[test]
        fn display_parse_roundtrip(a in arb_rational()) {
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
        }
    }
}
