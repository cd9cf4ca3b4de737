//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! `Rat` is `num_rational::BigRational`, which keeps every value reduced
//! with a positive denominator, so structural equality is mathematical
//! equality. `GaussRat` is a complex number with `Rat` components; it is
//! the coefficient field for every polynomial in this crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// Exact rational scalar, always reduced, denominator always positive.
pub type Rat = BigRational;

/// `n/d` as a `Rat`. Panics on `d == 0`; test and fixture helper.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a `Rat`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Renders `p/q`, or just `p` when the denominator is one.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"` or `"p/q"` with an optional leading sign on `p`.
///
/// The denominator must be a positive integer; whitespace and any other
/// shape are rejected so that wire inputs stay canonical.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let parse_int = |t: &str, what: &str| -> Result<BigInt, String> {
        if t.is_empty() || t.chars().any(|c| c.is_whitespace()) {
            return Err(format!("invalid {what} in rational literal {s:?}"));
        }
        t.parse::<BigInt>()
            .map_err(|_| format!("invalid {what} in rational literal {s:?}"))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s, "numerator")?)),
        Some((num, den)) => {
            let n = parse_int(num, "numerator")?;
            let d = parse_int(den, "denominator")?;
            if d <= BigInt::zero() {
                return Err(format!("denominator must be positive in {s:?}"));
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// Gaussian rational: an element of Q(i), stored as exact real and
/// imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat::default()
    }

    pub fn one() -> Self {
        GaussRat::from_rat(Rat::one())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat::new(Rat::zero(), Rat::one())
    }

    pub fn from_rat(re: Rat) -> Self {
        GaussRat { re, im: Rat::zero() }
    }

    /// `n/d` as a real Gaussian rational; test and fixture helper.
    pub fn from_frac(n: i64, d: i64) -> Self {
        GaussRat::from_rat(rat(n, d))
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::from_rat(rat_int(n))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus |z|^2 = re^2 + im^2, an exact rational.
    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Panics on zero; callers guard.
    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "inverse of zero Gaussian rational");
        GaussRat::new(&self.re / &n, -&self.im / &n)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GaussRat::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: GaussRat) -> GaussRat {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -&self
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, rhs: &GaussRat) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussRat> for GaussRat {
    fn mul_assign(&mut self, rhs: &GaussRat) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", rat_to_string(&self.re));
        }
        if self.re.is_zero() {
            if self.im.is_one() {
                return write!(f, "i");
            }
            if self.im == -Rat::one() {
                return write!(f, "-i");
            }
            return write!(f, "{}i", rat_to_string(&self.im));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        let abs_im = self.im.abs();
        if abs_im.is_one() {
            write!(f, "{}{}i", rat_to_string(&self.re), sign)
        } else {
            write!(f, "{}{}{}i", rat_to_string(&self.re), sign, rat_to_string(&abs_im))
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for GaussRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("GaussRat", 2)?;
        st.serialize_field("re", &rat_to_string(&self.re))?;
        st.serialize_field("im", &rat_to_string(&self.im))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for GaussRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Wire {
            re: String,
            im: String,
        }
        let w = Wire::deserialize(deserializer)?;
        let re = parse_rat(&w.re).map_err(D::Error::custom)?;
        let im = parse_rat(&w.im).map_err(D::Error::custom)?;
        Ok(GaussRat::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals_round_trip() {
        for s in ["0", "7", "-3", "1/2", "-22/7", "355/113"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        // non-canonical input parses but re-renders reduced
        assert_eq!(rat_to_string(&parse_rat("4/6").unwrap()), "2/3");
        assert_eq!(rat_to_string(&parse_rat("-4/2").unwrap()), "-2");
    }

    #[test]
    fn rational_literal_rejects_junk() {
        for s in ["", "1/0", "1/-2", "a", "1/ 2", " 1", "1.5", "2/3/4"] {
            assert!(parse_rat(s).is_err(), "expected parse failure for {s:?}");
        }
    }

    #[test]
    fn gauss_arithmetic() {
        let z = GaussRat::new(rat(1, 2), rat(3, 1));
        let w = GaussRat::new(rat(-2, 1), rat(1, 4));
        assert_eq!(&z + &w, GaussRat::new(rat(-3, 2), rat(13, 4)));
        // (1/2 + 3i)(-2 + i/4) = -1 - 3/4 + i(1/8 - 6)
        assert_eq!(&z * &w, GaussRat::new(rat(-7, 4), rat(-47, 8)));
        assert_eq!(&z * &z.conj(), GaussRat::from_rat(z.norm_sqr()));
    }

    #[test]
    fn inverse_and_powers() {
        let z = GaussRat::new(rat(3, 5), rat(-4, 5));
        assert_eq!(&z * &z.inv(), GaussRat::one());
        assert_eq!(z.pow(0), GaussRat::one());
        assert_eq!(z.pow(3), &(&z * &z) * &z);
        assert_eq!(GaussRat::i().pow(4), GaussRat::one());
    }

    #[test]
    fn conjugation_is_an_involution() {
        let z = GaussRat::new(rat(5, 7), rat(-2, 9));
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussRat::zero().to_string(), "0");
        assert_eq!(GaussRat::i().to_string(), "i");
        assert_eq!(GaussRat::new(rat(1, 2), rat(-3, 4)).to_string(), "1/2-3/4i");
        assert_eq!(GaussRat::new(rat(0, 1), rat(-1, 1)).to_string(), "-i");
    }

    #[test]
    fn json_wire_format() {
        let z = GaussRat::new(rat(1, 2), rat(-3, 4));
        let j = serde_json::to_string(&z).unwrap();
        assert_eq!(j, r#"{"re":"1/2","im":"-3/4"}"#);
        let back: GaussRat = serde_json::from_str(&j).unwrap();
        assert_eq!(back, z);
        // unknown fields are schema violations
        assert!(serde_json::from_str::<GaussRat>(r#"{"re":"1","im":"0","x":"1"}"#).is_err());
    }
}
