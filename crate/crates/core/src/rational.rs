//! Exact rationals with an `i64` fast path and a big-integer fallback.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// A reduced fraction with positive denominator.
///
/// Values whose numerator and denominator fit in `i64` (excluding `i64::MIN`)
/// are always stored in the small form, so derived equality is exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64, i64),
    Big(Box<(BigInt, BigInt)>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            core::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd_u128(a.unsigned_abs() as u128, b.unsigned_abs() as u128) as i64
}

fn fits(v: i128) -> Option<i64> {
    if v > i64::MIN as i128 && v <= i64::MAX as i128 {
        Some(v as i64)
    } else {
        None
    }
}

impl Rational {
    pub const ZERO: Rational = Rational(Repr::Small(0, 1));
    pub const ONE: Rational = Rational(Repr::Small(1, 1));

    pub fn from_int(n: i64) -> Self {
        if n == i64::MIN {
            return Self::from_big(BigInt::from(n), BigInt::one());
        }
        Rational(Repr::Small(n, 1))
    }

    /// `n / d`; panics if `d == 0`.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self::from_i128(n as i128, d as i128)
    }

    fn from_i128(mut n: i128, mut d: i128) -> Self {
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (fits(n), fits(d)) {
            (Some(a), Some(b)) => Rational(Repr::Small(a, b)),
            _ => Self::from_reduced_big(BigInt::from(n), BigInt::from(d)),
        }
    }

    /// Builds a fraction from arbitrary integers; panics if `d` is zero.
    pub fn from_big(n: BigInt, d: BigInt) -> Self {
        assert!(!d.is_zero(), "zero denominator");
        let (mut n, mut d) = if d.is_negative() { (-n, -d) } else { (n, d) };
        let g = n.gcd(&d);
        if !g.is_one() {
            n /= &g;
            d /= &g;
        }
        Self::from_reduced_big(n, d)
    }

    fn from_reduced_big(n: BigInt, d: BigInt) -> Self {
        if let (Some(a), Some(b)) = (n.to_i64(), d.to_i64()) {
            if a != i64::MIN && b != i64::MIN {
                return Rational(Repr::Small(a, b));
            }
        }
        Rational(Repr::Big(Box::new((n, d))))
    }

    fn to_big(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (b.0.clone(), b.1.clone()),
        }
    }

    pub fn numer(&self) -> BigInt {
        self.to_big().0
    }

    pub fn denom(&self) -> BigInt {
        self.to_big().1
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.1.is_one(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(b) => match b.0.sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }

    pub fn add(&self, o: &Rational) -> Rational {
        match (&self.0, &o.0) {
            (Repr::Small(0, _), _) => o.clone(),
            (_, Repr::Small(0, _)) => self.clone(),
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if b == d {
                    Self::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    Self::from_i128(
                        *a as i128 * *d as i128 + *c as i128 * *b as i128,
                        *b as i128 * *d as i128,
                    )
                }
            }
            _ => {
                let (a, b) = self.to_big();
                let (c, d) = o.to_big();
                Self::from_big(a * &d + c * &b, b * d)
            }
        }
    }

    pub fn sub(&self, o: &Rational) -> Rational {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-n, *d)),
            Repr::Big(b) => Rational(Repr::Big(Box::new((-b.0.clone(), b.1.clone())))),
        }
    }

    pub fn mul(&self, o: &Rational) -> Rational {
        match (&self.0, &o.0) {
            (Repr::Small(0, _), _) | (_, Repr::Small(0, _)) => Rational::ZERO,
            (Repr::Small(1, 1), _) => o.clone(),
            (_, Repr::Small(1, 1)) => self.clone(),
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let g1 = gcd_i64(*a, *d);
                let g2 = gcd_i64(*c, *b);
                let n = (*a / g1) as i128 * (*c / g2) as i128;
                let den = (*b / g2) as i128 * (*d / g1) as i128;
                match (fits(n), fits(den)) {
                    (Some(x), Some(y)) => Rational(Repr::Small(x, y)),
                    _ => Self::from_reduced_big(BigInt::from(n), BigInt::from(den)),
                }
            }
            _ => {
                let (a, b) = self.to_big();
                let (c, d) = o.to_big();
                Self::from_big(a * c, b * d)
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Rational> {
        match &self.0 {
            Repr::Small(0, _) => None,
            Repr::Small(n, d) => {
                if *n < 0 {
                    Some(Rational(Repr::Small(-d, -n)))
                } else {
                    Some(Rational(Repr::Small(*d, *n)))
                }
            }
            Repr::Big(b) => Some(Self::from_big(b.1.clone(), b.0.clone())),
        }
    }

    pub fn div(&self, o: &Rational) -> Option<Rational> {
        o.inv().map(|i| self.mul(&i))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl Ord for Rational {
    fn cmp(&self, o: &Self) -> Ordering {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => {
                let (a, b) = self.to_big();
                let (c, d) = o.to_big();
                (a * d).cmp(&(c * b))
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.1.is_one() => write!(f, "{}", b.0),
            Repr::Big(b) => write!(f, "{}/{}", b.0, b.1),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p`, `p/q` and surrounding whitespace.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(String::from("invalid rational: ") + s);
        let int = |t: &str| -> Result<BigInt, Error> {
            let t = t.trim();
            let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            BigInt::from_str(t).map_err(|_| bad())
        };
        match s.split_once('/') {
            None => Ok(Rational::from_big(int(s)?, BigInt::one())),
            Some((p, q)) => {
                let d = int(q)?;
                if d.is_zero() {
                    return Err(Error::Parse(String::from("zero denominator: ") + s));
                }
                Ok(Rational::from_big(int(p)?, d))
            }
        }
    }
}

impl Rational {
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arith() {
        let a = Rational::new(3, 2);
        let b = Rational::new(1, 2);
        assert_eq!(a.add(&b), Rational::from_int(2));
        assert_eq!(a.mul(&b), Rational::new(3, 4));
        assert_eq!(a.sub(&a), Rational::ZERO);
        assert_eq!(Rational::new(-2, -4), Rational::new(1, 2));
        assert_eq!(Rational::new(2, -4).to_string(), "-1/2");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from_int(i64::MAX);
        let sq = big.mul(&big);
        assert!(matches!(sq.0, Repr::Big(_)));
        let back = sq.div(&big).unwrap();
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(..)));
        let min = Rational::from_int(i64::MIN);
        assert_eq!(min.neg().neg(), min);
        assert_eq!(min.add(&Rational::ONE).sub(&Rational::ONE), min);
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "-7", "3/4", "-12/5", "123456789012345678901234567891/7"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("6/4".parse::<Rational>().unwrap().to_string(), "3/2");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
    }
}
