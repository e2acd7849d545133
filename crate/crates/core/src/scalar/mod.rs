//! Exact coefficients: rationals and rational functions in one formal
//! parameter `q`.
//!
//! A [`Scalar`] is stored in a canonical form, so equality is structural:
//! plain rationals are kept as such, and everything else as
//! `q^shift * num(q) / den(q)` where neither polynomial is divisible by `q`,
//! `gcd(num, den) = 1` and `den` is monic.

mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use poly::Poly;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rat(BigRational),
    Frac { shift: i64, num: Poly, den: Poly },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Rat(BigRational::zero()))
    }

    pub fn one() -> Self {
        Scalar(Repr::Rat(BigRational::one()))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(Repr::Rat(BigRational::from_integer(BigInt::from(n))))
    }

    /// `n / d`; panics when `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar(Repr::Rat(BigRational::new(BigInt::from(n), BigInt::from(d))))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar(Repr::Rat(r))
    }

    /// The monomial `q^k`.
    pub fn q_pow(k: i64) -> Self {
        if k == 0 {
            return Self::one();
        }
        Scalar(Repr::Frac {
            shift: k,
            num: Poly::one(),
            den: Poly::one(),
        })
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Rat(r) if r.is_one())
    }

    /// True when the value does not depend on `q`.
    pub fn is_rational(&self) -> bool {
        matches!(self.0, Repr::Rat(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rat(r) => Some(r),
            Repr::Frac { .. } => None,
        }
    }

    /// Builds the canonical form of `q^shift * num / den`.
    fn normalize(mut shift: i64, mut num: Poly, mut den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let k = num.low_order();
        num.shift_down(k);
        shift += k as i64;
        let k = den.low_order();
        den.shift_down(k);
        shift -= k as i64;
        if den.degree() != Some(0) {
            let g = Poly::gcd(&num, &den);
            if !g.is_one() {
                num = num.div_rem(&g).0;
                den = den.div_rem(&g).0;
            }
        }
        if let Some(l) = den.lead().filter(|l| !l.is_one()).cloned() {
            let inv = l.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if shift == 0 && num.degree() == Some(0) && den.degree() == Some(0) {
            return Scalar(Repr::Rat(num.coeffs()[0].clone()));
        }
        Scalar(Repr::Frac { shift, num, den })
    }

    /// View as `(shift, num, den)` regardless of representation.
    fn parts(&self) -> (i64, Poly, Poly) {
        match &self.0 {
            Repr::Rat(r) => (0, Poly::constant(r.clone()), Poly::one()),
            Repr::Frac { shift, num, den } => (*shift, num.clone(), den.clone()),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (&self.0, &other.0) {
            (Repr::Rat(a), Repr::Rat(b)) => Scalar(Repr::Rat(a + b)),
            _ if self.is_zero() => other.clone(),
            _ if other.is_zero() => self.clone(),
            _ => {
                let (s1, n1, d1) = self.parts();
                let (s2, n2, d2) = other.parts();
                let s = s1.min(s2);
                let a = n1.shift_up((s1 - s) as usize);
                let b = n2.shift_up((s2 - s) as usize);
                if d1 == d2 {
                    Self::normalize(s, a.add(&b), d1)
                } else {
                    Self::normalize(s, a.mul(&d2).add(&b.mul(&d1)), d1.mul(&d2))
                }
            }
        }
    }

    pub fn neg(&self) -> Scalar {
        match &self.0 {
            Repr::Rat(a) => Scalar(Repr::Rat(-a)),
            Repr::Frac { shift, num, den } => Scalar(Repr::Frac {
                shift: *shift,
                num: num.neg(),
                den: den.clone(),
            }),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (&self.0, &other.0) {
            (Repr::Rat(a), Repr::Rat(b)) => Scalar(Repr::Rat(a * b)),
            (Repr::Rat(a), Repr::Frac { shift, num, den })
            | (Repr::Frac { shift, num, den }, Repr::Rat(a)) => {
                if a.is_zero() {
                    Self::zero()
                } else {
                    Scalar(Repr::Frac {
                        shift: *shift,
                        num: num.scale(a),
                        den: den.clone(),
                    })
                }
            }
            (
                Repr::Frac { shift: s1, num: n1, den: d1 },
                Repr::Frac { shift: s2, num: n2, den: d2 },
            ) => {
                if d1.is_one() && d2.is_one() {
                    Self::normalize(s1 + s2, n1.mul(n2), Poly::one())
                } else {
                    Self::normalize(s1 + s2, n1.mul(n2), d1.mul(d2))
                }
            }
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match &self.0 {
            Repr::Rat(a) if a.is_zero() => Err(Error::DivisionByZero),
            Repr::Rat(a) => Ok(Scalar(Repr::Rat(a.recip()))),
            Repr::Frac { shift, num, den } => Ok(Self::normalize(-shift, den.clone(), num.clone())),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power (negative exponents invert).
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Exact value at `q = q0`.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational> {
        match &self.0 {
            Repr::Rat(a) => Ok(a.clone()),
            Repr::Frac { shift, num, den } => {
                let pole = || Error::EvaluationPole { at: q0.to_string() };
                let d = den.eval(q0);
                if d.is_zero() || (q0.is_zero() && *shift < 0) {
                    return Err(pole());
                }
                let n = num.eval(q0);
                let qs = if *shift >= 0 {
                    num_traits::pow(q0.clone(), *shift as usize)
                } else {
                    num_traits::pow(q0.recip(), shift.unsigned_abs() as usize)
                };
                Ok(qs * n / d)
            }
        }
    }

    /// Parses the coefficient grammar with `q` allowed.
    pub fn parse(src: &str) -> Result<Scalar> {
        crate::grammar::parse_scalar(src, true)
    }

    /// Parses a `q`-free expression to its exact rational value.
    pub fn parse_constant(src: &str) -> Result<BigRational> {
        let v = crate::grammar::parse_scalar(src, false)?;
        Ok(v.as_rational().cloned().expect("q-free expressions are rational"))
    }

    /// Laurent part `(shift, coeffs)` when the denominator is trivial.
    fn laurent(&self) -> Option<(i64, Vec<BigRational>)> {
        match &self.0 {
            Repr::Rat(r) => Some((0, vec![r.clone()])),
            Repr::Frac { shift, num, den } if den.is_one() => Some((*shift, num.coeffs().to_vec())),
            _ => None,
        }
    }

    /// Number of monomials when written as a Laurent polynomial.
    fn term_count(&self) -> usize {
        match self.laurent() {
            Some((_, cs)) => cs.iter().filter(|c| !c.is_zero()).count(),
            None => 2,
        }
    }

    /// True when the printed form needs parentheses to act as a factor.
    pub fn needs_parens(&self) -> bool {
        if self.term_count() > 1 {
            return true;
        }
        matches!(&self.0, Repr::Frac { den, .. } if !den.is_one())
    }
}

fn fmt_laurent(f: &mut fmt::Formatter<'_>, shift: i64, coeffs: &[BigRational]) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let e = shift + i as i64;
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        if e == 0 {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "q^{e}")?;
        } else {
            write!(f, "{mag}*q^{e}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Scalar {
    /// Prints in the coefficient grammar, so the output parses back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((shift, cs)) = self.laurent() {
            return fmt_laurent(f, shift, &cs);
        }
        let Repr::Frac { shift, num, den } = &self.0 else { unreachable!() };
        let (ns, ds) = if *shift >= 0 { (*shift, 0) } else { (0, -shift) };
        let num_terms = num.coeffs().iter().filter(|c| !c.is_zero()).count();
        let den_terms = den.coeffs().iter().filter(|c| !c.is_zero()).count();
        let paren = |f: &mut fmt::Formatter<'_>, n: usize, s: i64, p: &Poly| -> fmt::Result {
            if n > 1 {
                write!(f, "(")?;
                fmt_laurent(f, s, p.coeffs())?;
                write!(f, ")")
            } else {
                fmt_laurent(f, s, p.coeffs())
            }
        };
        paren(f, num_terms, ns, num)?;
        write!(f, "/")?;
        // a monic denominator free of q factors has at least two terms here
        paren(f, den_terms, ds, den)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

/// Total order on canonical forms; only used to make collections
/// deterministic, it carries no algebraic meaning.
impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Rat(a), Repr::Rat(b)) => a.cmp(b),
            (Repr::Rat(_), _) => Ordering::Less,
            (_, Repr::Rat(_)) => Ordering::Greater,
            (
                Repr::Frac { shift: s1, num: n1, den: d1 },
                Repr::Frac { shift: s2, num: n2, den: d2 },
            ) => (s1, n1, d1).cmp(&(s2, n2, d2)),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                Scalar::$m(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(src: &str) -> Scalar {
        Scalar::parse(src).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn inverse_pair() {
        assert_eq!(Scalar::q().mul(&Scalar::q_pow(-1)), Scalar::one());
    }

    #[test]
    fn halves() {
        assert_eq!(Scalar::ratio(1, 2).add(&Scalar::ratio(1, 2)), Scalar::one());
    }

    #[test]
    fn cancels_common_factor() {
        let a = s("q^2-1");
        let b = s("q-1").inv().unwrap();
        assert_eq!(a.mul(&b), s("q+1"));
    }

    #[test]
    fn inverse_of_zero() {
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(Scalar::q_pow(2).eval(&r(-1, 1)).unwrap(), r(1, 1));
        let f = s("q+1").div(&s("q-1")).unwrap();
        assert_eq!(f.eval(&r(2, 1)).unwrap(), r(3, 1));
        let pole = s("q-1").inv().unwrap();
        assert!(matches!(pole.eval(&r(1, 1)), Err(Error::EvaluationPole { .. })));
        assert!(matches!(Scalar::q_pow(-1).eval(&r(0, 1)), Err(Error::EvaluationPole { .. })));
    }

    #[test]
    fn canonical_form_strips_q_powers() {
        // (q^3 + q^2) / q^4 = q^-2 (q + 1)
        let a = s("q^3+q^2").mul(&Scalar::q_pow(-4));
        assert_eq!(a, s("q^-1+q^-2"));
        assert_eq!(s("2*q/(2*q)"), Scalar::one());
        assert!(s("q*q^-1").is_rational());
    }

    #[test]
    fn display_round_trips() {
        for src in ["0", "-1/2", "q^-1", "3*q^2 - 1/2*q^1 + 7", "(q^2-1)/(q^3+2)", "1/(q-1)", "q/(2*q^2+1)"] {
            let a = s(src);
            let printed = a.to_string();
            assert_eq!(s(&printed), a, "{src} printed as {printed}");
        }
        assert_eq!(Scalar::q().to_string(), "q^1");
        assert_eq!(Scalar::q_pow(-1).to_string(), "q^-1");
    }
}
