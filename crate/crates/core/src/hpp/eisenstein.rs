//! `a + bω` with `ω = e^(iπ/3)` a primitive sixth root of unity, so
//! `ω² = ω − 1`, `conj(ω) = 1 − ω` and `|a + bω|² = a² + ab + b²`.
//!
//! Generic over the coefficient ring: [`EisInt`] uses integers and
//! [`EisRational`] is the fraction field `Q(ω)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::{parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Eisenstein<T> {
    pub a: T,
    pub b: T,
}

pub type EisInt = Eisenstein<BigInt>;
pub type EisRational = Eisenstein<Rational>;

impl<T> Eisenstein<T> {
    pub fn new(a: T, b: T) -> Self {
        Eisenstein { a, b }
    }
}

impl<
        T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
    > Eisenstein<T>
{
    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero())
    }

    pub fn omega() -> Self {
        Self::new(T::zero(), T::one())
    }

    pub fn from_real(a: T) -> Self {
        Self::new(a, T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a.clone() + self.b.clone(), -self.b.clone())
    }

    pub fn norm(&self) -> T {
        self.a.clone() * self.a.clone()
            + self.a.clone() * self.b.clone()
            + self.b.clone() * self.b.clone()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl<'a, T: Clone + Add<Output = T>> Add<&'a Eisenstein<T>> for &'a Eisenstein<T> {
    type Output = Eisenstein<T>;
    fn add(self, o: &Eisenstein<T>) -> Eisenstein<T> {
        Eisenstein::new(self.a.clone() + o.a.clone(), self.b.clone() + o.b.clone())
    }
}

impl<'a, T: Clone + Sub<Output = T>> Sub<&'a Eisenstein<T>> for &'a Eisenstein<T> {
    type Output = Eisenstein<T>;
    fn sub(self, o: &Eisenstein<T>) -> Eisenstein<T> {
        Eisenstein::new(self.a.clone() - o.a.clone(), self.b.clone() - o.b.clone())
    }
}

impl<'a, T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T>> Mul<&'a Eisenstein<T>>
    for &'a Eisenstein<T>
{
    type Output = Eisenstein<T>;
    /// `(a + bω)(c + dω) = (ac − bd) + (ad + bc + bd)ω`.
    fn mul(self, o: &Eisenstein<T>) -> Eisenstein<T> {
        let bd = self.b.clone() * o.b.clone();
        Eisenstein::new(
            self.a.clone() * o.a.clone() - bd.clone(),
            self.a.clone() * o.b.clone() + self.b.clone() * o.a.clone() + bd,
        )
    }
}

impl<T: Clone + Neg<Output = T>> Neg for &Eisenstein<T> {
    type Output = Eisenstein<T>;
    fn neg(self) -> Eisenstein<T> {
        Eisenstein::new(-self.a.clone(), -self.b.clone())
    }
}

impl EisRational {
    pub fn from_int(z: &EisInt) -> Self {
        Eisenstein::new(
            Rational::from_integer(z.a.clone()),
            Rational::from_integer(z.b.clone()),
        )
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(Eisenstein::new(c.a / &n, c.b / &n))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self * &o.inv()?)
    }

    /// The value as a rational when the `ω` part (imaginary part `b√3/2`) vanishes.
    pub fn as_real(&self) -> Option<Rational> {
        self.b.is_zero().then(|| self.a.clone())
    }
}

impl<T: fmt::Display + Zero> fmt::Display for Eisenstein<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}w", self.b)
        } else {
            let b = self.b.to_string();
            let sep = if b.starts_with('-') { "" } else { "+" };
            write!(f, "{}{sep}{b}w", self.a)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse Eisenstein number `{0}`")]
pub struct ParseEisError(pub String);

/// Sum of signed terms `r` and `rw` with rational `r` (empty means 1).
fn parse_sum(s: &str) -> Option<EisRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let mut out = EisRational::zero();
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut pieces = Vec::new();
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' {
            pieces.push(&s[start..i]);
            start = i;
        }
    }
    pieces.push(&s[start..]);
    for piece in pieces {
        let piece = piece.strip_prefix('+').unwrap_or(piece);
        if let Some(coef) = piece.strip_suffix('w') {
            let c = match coef {
                "" => Rational::one(),
                "-" => -Rational::one(),
                _ => parse_rational(coef).ok()?,
            };
            out.b += c;
        } else {
            out.a += parse_rational(piece).ok()?;
        }
    }
    Some(out)
}

/// `num` or `num/den`, where each side is a sum like `2-3w`; a plain
/// rational `3/2` also parses.
impl FromStr for EisRational {
    type Err = ParseEisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseEisError(s.to_string());
        if let Some(x) = parse_sum(s) {
            return Ok(x);
        }
        let (num, den) = s.split_once('/').ok_or_else(err)?;
        let num = parse_sum(num).ok_or_else(err)?;
        let den = parse_sum(den).ok_or_else(err)?;
        num.div(&den).ok_or_else(err)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn e(a: i64, b: i64) -> EisRational {
        Eisenstein::new(int(a), int(b))
    }

    #[test]
    fn omega_relations() {
        let w = EisRational::omega();
        assert_eq!(&w * &w, &w - &EisRational::one());
        assert_eq!(w.pow(6), EisRational::one());
        assert_eq!(w.pow(3), -&EisRational::one());
        assert_eq!(w.conj(), e(1, -1));
        assert_eq!(&w * &w.conj(), EisRational::one());
        for k in 0..6 {
            assert_eq!(w.pow(k).norm(), int(1));
        }
    }

    #[test]
    fn norm_and_inverse() {
        assert_eq!(e(2, 3).norm(), int(19));
        let z = e(2, -1);
        assert_eq!(&z * &z.inv().unwrap(), EisRational::one());
        assert_eq!(EisRational::zero().inv(), None);
        let zi = EisInt::new(2.into(), 3.into());
        assert_eq!(EisRational::from_int(&zi).norm(), int(19));
    }

    #[test]
    fn parsing() {
        assert_eq!("1".parse::<EisRational>().unwrap(), e(1, 0));
        assert_eq!("-w".parse::<EisRational>().unwrap(), e(0, -1));
        assert_eq!("2-3w".parse::<EisRational>().unwrap(), e(2, -3));
        assert_eq!(
            "3/2".parse::<EisRational>().unwrap(),
            Eisenstein::new(ratio(3, 2), int(0))
        );
        assert_eq!(
            "1+w/1-w".parse::<EisRational>().unwrap(),
            e(1, 1).div(&e(1, -1)).unwrap()
        );
        assert_eq!(
            "-1/2w".parse::<EisRational>().unwrap(),
            Eisenstein::new(int(0), ratio(-1, 2))
        );
        assert!("1+x".parse::<EisRational>().is_err());
        assert!("1/0".parse::<EisRational>().is_err());
        assert_eq!(
            e(2, -3).to_string().parse::<EisRational>().unwrap(),
            e(2, -3)
        );
    }
}
