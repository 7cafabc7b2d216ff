//! Exact arithmetic in `Q[x]/(m(x))` and the Hecke parameter `q`.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
pub use crate::rational::Rational;

/// Residue class in `Q[x]/(m)`: coefficients, constant first, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar(SmallVec<[Rational; 2]>);

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar(SmallVec::new())
    }

    pub fn from_rational(r: Rational) -> Scalar {
        let mut s = Scalar(SmallVec::new());
        if !r.is_zero() {
            s.0.push(r);
        }
        s
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rational(Rational::from_int(n))
    }

    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Trimmed coefficient list.
    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    /// Coefficients padded to length `deg`.
    pub fn padded(&self, deg: usize) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.0.iter().cloned().collect();
        v.resize(deg.max(v.len()), Rational::ZERO);
        v
    }

    /// The constant coefficient when the residue is a rational number.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.0.len() {
            0 => Some(Rational::ZERO),
            1 => Some(self.0[0].clone()),
            _ => None,
        }
    }

    fn trim(mut self) -> Scalar {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let n = self.0.len().max(o.0.len());
        let mut out = SmallVec::with_capacity(n);
        for k in 0..n {
            out.push(match (self.0.get(k), o.0.get(k)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Scalar(out).trim()
    }

    pub fn neg(&self) -> Scalar {
        Scalar(self.0.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar(self.0.iter().map(|c| c.mul(r)).collect())
    }

    /// Comma-separated coefficients, constant first; `0` for zero.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        parts.join(",")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", poly_display(&self.0))
    }
}

/// Human-readable polynomial in `x`.
pub fn poly_display(c: &[Rational]) -> String {
    let mut terms = Vec::new();
    for (k, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let coef = if k > 0 && a.is_one() {
            String::new()
        } else if k > 0 && *a == Rational::from_int(-1) {
            "-".into()
        } else {
            a.to_string()
        };
        terms.push(match k {
            0 => coef,
            1 => coef + "x",
            _ => coef + "x^" + &k.to_string(),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

/// Parses comma-separated rational coefficients, constant first.
pub fn parse_poly(s: &str) -> Result<Vec<Rational>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty coefficient list".into()));
    }
    s.split(',').map(|t| t.parse()).collect()
}

fn ptrim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn pmul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = alloc::vec![Rational::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    ptrim(out)
}

fn psub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let z = Rational::ZERO;
    ptrim((0..n).map(|k| a.get(k).unwrap_or(&z).sub(b.get(k).unwrap_or(&z))).collect())
}

/// Quotient and remainder; `b` must be nonzero.
fn pdivrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = ptrim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("nonzero leading coefficient");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut quo = alloc::vec![Rational::ZERO; r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let c = r[r.len() - 1].mul(&lead_inv);
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = r[k + j].sub(&c.mul(bj));
        }
        quo[k] = c;
        r = ptrim(r);
    }
    (ptrim(quo), r)
}

fn monic(p: Vec<Rational>) -> Vec<Rational> {
    let inv = p.last().and_then(|c| c.inv()).expect("nonzero polynomial");
    p.iter().map(|c| c.mul(&inv)).collect()
}

/// The ring `Q[x]/(m)` for a monic `m` of degree at least one.
#[derive(Clone)]
pub struct Field(Arc<Vec<Rational>>);

impl PartialEq for Field {
    fn eq(&self, o: &Field) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0 == o.0
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({})", poly_display(&self.0))
    }
}

impl Field {
    pub fn new(min_poly: &[Rational]) -> Result<Field> {
        let m = ptrim(min_poly.to_vec());
        if m.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree at least 1".into()));
        }
        if !m[m.len() - 1].is_one() {
            return Err(Error::InvalidField(
                String::from("modulus is not monic: ") + &poly_display(&m),
            ));
        }
        Ok(Field(Arc::new(m)))
    }

    /// `Q` presented as `Q[x]/(x)`.
    pub fn rationals() -> Field {
        Field(Arc::new(alloc::vec![Rational::ZERO, Rational::ONE]))
    }

    pub fn min_poly(&self) -> &[Rational] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    /// Reduces an arbitrary polynomial modulo `m`.
    pub fn reduce(&self, c: &[Rational]) -> Scalar {
        let m = &self.0;
        let d = self.degree();
        let mut r = ptrim(c.to_vec());
        while r.len() > d {
            let top = r.len() - 1;
            let c = r[top].clone();
            for j in 0..d {
                r[top - d + j] = r[top - d + j].sub(&c.mul(&m[j]));
            }
            r.pop();
            r = ptrim(r);
        }
        Scalar(r.into_iter().collect())
    }

    /// The class of `x`.
    pub fn generator(&self) -> Scalar {
        self.reduce(&[Rational::ZERO, Rational::ONE])
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        if a.is_zero() || b.is_zero() {
            return Scalar::zero();
        }
        if a.0.len() == 1 {
            return b.scale(&a.0[0]);
        }
        if b.0.len() == 1 {
            return a.scale(&b.0[0]);
        }
        self.reduce(&pmul(&a.0, &b.0))
    }

    /// `acc - a * b`.
    pub fn sub_mul(&self, acc: &Scalar, a: &Scalar, b: &Scalar) -> Scalar {
        if a.is_zero() || b.is_zero() {
            return acc.clone();
        }
        if acc.0.len() <= 1 && a.0.len() == 1 && b.0.len() == 1 {
            let p = a.0[0].mul(&b.0[0]);
            return match acc.0.first() {
                Some(c) => Scalar::from_rational(c.sub(&p)),
                None => Scalar::from_rational(p.neg()),
            };
        }
        acc.sub(&self.mul(a, b))
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if a.0.len() == 1 {
            return Ok(Scalar::from_rational(a.0[0].inv().expect("nonzero")));
        }
        let (mut r0, mut r1) = (self.0.to_vec(), a.0.to_vec());
        let (mut s0, mut s1) = (Vec::new(), alloc::vec![Rational::ONE]);
        while !r1.is_empty() {
            let (qt, r) = pdivrem(&r0, &r1);
            let s = psub(&s0, &pmul(&qt, &s1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
        }
        if r0.len() > 1 {
            return Err(Error::ZeroDivisor { factor: poly_display(&monic(r0)) });
        }
        let g = r0[0].inv().expect("nonzero gcd");
        Ok(self.reduce(&s0).scale(&g))
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^e`; negative exponents invert.
    pub fn pow(&self, a: &Scalar, e: i64) -> Result<Scalar> {
        let mut base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut k = e.unsigned_abs();
        let mut out = Scalar::one();
        while k > 0 {
            if k & 1 == 1 {
                out = self.mul(&out, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        Ok(out)
    }

    /// Parses the comma-separated coefficient encoding.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        Ok(self.reduce(&parse_poly(s)?))
    }
}

/// A field together with the Hecke parameter `q`.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldSpec {
    field: Field,
    q: Scalar,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} with q = {}", self.field, self.q)
    }
}

pub fn field_make(min_poly: &[Rational], q_poly: &[Rational]) -> Result<FieldSpec> {
    let field = Field::new(min_poly)?;
    let q = field.reduce(q_poly);
    Ok(FieldSpec { field, q })
}

impl FieldSpec {
    pub fn new(field: Field, q: Scalar) -> FieldSpec {
        let q = field.reduce(q.coeffs());
        FieldSpec { field, q }
    }

    /// `Q` with an integer parameter.
    pub fn rational(q: i64) -> FieldSpec {
        FieldSpec::new(Field::rationals(), Scalar::from_int(q))
    }

    /// `Q(i)` with `q = i`.
    pub fn gaussian() -> FieldSpec {
        let one = Rational::ONE;
        field_make(&[one.clone(), Rational::ZERO, one.clone()], &[Rational::ZERO, one])
            .expect("valid modulus")
    }

    /// `Q(ω)` with `q = ω` a primitive cube root of unity.
    pub fn cube_root() -> FieldSpec {
        let one = Rational::ONE;
        field_make(&[one.clone(), one.clone(), one.clone()], &[Rational::ZERO, one])
            .expect("valid modulus")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn with_q(&self, q: Scalar) -> FieldSpec {
        FieldSpec::new(self.field.clone(), q)
    }

    /// Same field with parameter `q⁻¹`.
    pub fn inverse_parameter(&self) -> Result<FieldSpec> {
        if self.q.is_zero() {
            return Err(Error::ParameterZero("q has no inverse".into()));
        }
        Ok(self.with_q(self.field.inv(&self.q)?))
    }

    pub fn require_nonzero_q(&self, what: &str) -> Result<()> {
        if self.q.is_zero() {
            Err(Error::ParameterZero(what.to_string()))
        } else {
            Ok(())
        }
    }

    /// `1 + q + ... + q^{n-1}`.
    pub fn q_integer(&self, n: usize) -> Scalar {
        let mut acc = Scalar::zero();
        let mut p = Scalar::one();
        for _ in 0..n {
            acc = acc.add(&p);
            p = self.field.mul(&p, &self.q);
        }
        acc
    }

    pub fn q_pow(&self, e: i64) -> Result<Scalar> {
        self.field.pow(&self.q, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn field_make_examples() {
        let f = field_make(&[r(-2), r(1)], &[r(2)]).unwrap();
        assert_eq!(f.q(), &Scalar::from_int(2));
        let g = FieldSpec::gaussian();
        assert_eq!(g.field().mul(g.q(), g.q()), Scalar::from_int(-1));
        let c = FieldSpec::cube_root();
        assert!(c.q_integer(3).is_zero());
        assert!(matches!(field_make(&[r(1), r(2)], &[r(1)]), Err(Error::InvalidField(_))));
        assert!(matches!(field_make(&[r(3)], &[r(1)]), Err(Error::InvalidField(_))));
    }

    #[test]
    fn arithmetic_examples() {
        let q = FieldSpec::rational(2);
        let a = Scalar::from_rational(Rational::new(3, 2));
        let b = Scalar::from_rational(Rational::new(1, 2));
        assert_eq!(a.add(&b), Scalar::from_int(2));
        let c = FieldSpec::cube_root();
        let x = c.field().generator();
        let inv = c.field().inv(&x).unwrap();
        assert_eq!(inv, c.field().reduce(&[r(-1), r(-1)]));
        assert_eq!(q.q_integer(3), Scalar::from_int(7));
        assert_eq!(FieldSpec::rational(1).q_integer(5), Scalar::from_int(5));
        assert!(FieldSpec::rational(1).q_integer(0).is_zero());
    }

    #[test]
    fn zero_divisor_names_factor() {
        // x^2 - 1 = (x - 1)(x + 1)
        let f = Field::new(&[r(-1), r(0), r(1)]).unwrap();
        let a = f.reduce(&[r(-1), r(1)]);
        match f.inv(&a) {
            Err(Error::ZeroDivisor { factor }) => assert_eq!(factor, "x - 1"),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(f.inv(&Scalar::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn text_roundtrip() {
        let g = FieldSpec::gaussian();
        let s = g.field().reduce(&[Rational::new(1, 2), r(-3)]);
        assert_eq!(s.to_text(), "1/2,-3");
        assert_eq!(g.field().parse_scalar(&s.to_text()).unwrap(), s);
        assert_eq!(Scalar::zero().to_text(), "0");
        assert_eq!(poly_display(&[r(1), r(0), r(1)]), "x^2 + 1");
        assert_eq!(parse_poly("1,0,1").unwrap(), vec![r(1), r(0), r(1)]);
    }
}
