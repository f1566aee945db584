//! Exact coefficient fields: `ℚ`, `ℚ(√a)` and `F_p`, with an optional
//! p-adic valuation on `ℚ`, residue maps and the automorphisms needed by
//! twisted groupoid rings.

pub mod linalg;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ext::Ext;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars from different fields: {0} and {1}")]
    DescriptorMismatch(String, String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is a perfect square, so Q(sqrt {0}) is not a field")]
    PerfectSquare(i64),
    #[error("valuation {0} is not supported on {1}")]
    ValuationUnsupported(String, String),
    #[error("residue undefined: {0} has negative value")]
    NegativeValue(String),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("automorphism {0:?} not defined on {1}")]
    Automorphism(FieldAutomorphism, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Rationals,
    /// `ℚ(√a)` for a non-square integer `a`.
    Quadratic(i64),
    /// `F_p`.
    Prime(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Trivial,
    PAdic(u64),
}

/// A coefficient field together with the valuation `w` used for bound
/// patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub kind: FieldKind,
    pub valuation: Valuation,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn is_square(a: i64) -> bool {
    if a < 0 {
        return false;
    }
    let r = (a as f64).sqrt() as i64;
    (r.saturating_sub(1)..=r + 1).any(|s| s >= 0 && s * s == a)
}

/// An element of one of the supported fields, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    /// `re + im·√radicand`.
    Quadratic {
        re: BigRational,
        im: BigRational,
        radicand: i64,
    },
    /// Representative in `[0, modulus)`.
    Modular { value: u64, modulus: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldAutomorphism {
    Identity,
    /// `√a ↦ −√a` on `ℚ(√a)`.
    Conjugation,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("reduced below p")
}

/// Exponent of `p` in a nonzero integer.
fn p_exponent(x: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut k = 0;
    while !x.is_zero() && (&x % &p).is_zero() {
        x /= &p;
        k += 1;
    }
    k
}

impl FieldDescriptor {
    pub fn new(kind: FieldKind, valuation: Valuation) -> Result<Self, ScalarError> {
        match kind {
            FieldKind::Prime(p) if !is_prime(p) => return Err(ScalarError::NotPrime(p)),
            FieldKind::Quadratic(a) if a == 0 || is_square(a) => {
                return Err(ScalarError::PerfectSquare(a))
            }
            _ => {}
        }
        if let Valuation::PAdic(p) = valuation {
            if !is_prime(p) {
                return Err(ScalarError::NotPrime(p));
            }
            if kind != FieldKind::Rationals {
                return Err(ScalarError::ValuationUnsupported(
                    format!("{p}-adic"),
                    Self::kind_name(kind),
                ));
            }
        }
        Ok(FieldDescriptor { kind, valuation })
    }

    pub fn rationals() -> Self {
        FieldDescriptor { kind: FieldKind::Rationals, valuation: Valuation::Trivial }
    }

    pub fn padic(p: u64) -> Self {
        Self::new(FieldKind::Rationals, Valuation::PAdic(p)).expect("p must be prime")
    }

    pub fn quadratic(a: i64) -> Self {
        Self::new(FieldKind::Quadratic(a), Valuation::Trivial).expect("a must be a non-square")
    }

    pub fn prime(p: u64) -> Self {
        Self::new(FieldKind::Prime(p), Valuation::Trivial).expect("p must be prime")
    }

    fn kind_name(kind: FieldKind) -> String {
        match kind {
            FieldKind::Rationals => "Q".into(),
            FieldKind::Quadratic(a) => format!("Q(sqrt {a})"),
            FieldKind::Prime(p) => format!("F_{p}"),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self.kind {
            FieldKind::Prime(p) => p,
            _ => 0,
        }
    }

    /// Dimension over the prime field (`ℚ` or `F_p`).
    pub fn degree(&self) -> usize {
        match self.kind {
            FieldKind::Quadratic(_) => 2,
            _ => 1,
        }
    }

    pub fn is_trivially_valued(&self) -> bool {
        self.valuation == Valuation::Trivial
    }

    pub fn prime_subfield(&self) -> FieldDescriptor {
        match self.kind {
            FieldKind::Prime(_) => *self,
            _ => FieldDescriptor::rationals(),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_rational(rat(n))
    }

    pub fn from_rational(&self, q: BigRational) -> Scalar {
        match self.kind {
            FieldKind::Rationals => Scalar::Rational(q),
            FieldKind::Quadratic(a) => Scalar::Quadratic { re: q, im: BigRational::zero(), radicand: a },
            FieldKind::Prime(p) => {
                let num = bigint_mod(q.numer(), p);
                let den = bigint_mod(q.denom(), p);
                // a rational whose denominator vanishes mod p has no image; callers
                // only pass integers or p-free denominators here
                assert!(den != 0, "denominator divisible by {p}");
                let value = ((num as u128 * mod_pow(den, p - 2, p) as u128) % p as u128) as u64;
                Scalar::Modular { value, modulus: p }
            }
        }
    }

    /// `√a`, only for quadratic extensions.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self.kind {
            FieldKind::Quadratic(a) => Some(Scalar::Quadratic {
                re: BigRational::zero(),
                im: BigRational::one(),
                radicand: a,
            }),
            _ => None,
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        match (self.kind, x) {
            (FieldKind::Rationals, Scalar::Rational(_)) => true,
            (FieldKind::Quadratic(a), Scalar::Quadratic { radicand, .. }) => a == *radicand,
            (FieldKind::Prime(p), Scalar::Modular { modulus, .. }) => p == *modulus,
            _ => false,
        }
    }

    /// `w(x)`; `w(0) = +inf`.
    pub fn valuate(&self, x: &Scalar) -> Ext {
        if x.is_zero() {
            return Ext::PosInf;
        }
        match (self.valuation, x) {
            (Valuation::Trivial, _) => Ext::ZERO,
            (Valuation::PAdic(p), Scalar::Rational(q)) => {
                Ext::Fin(p_exponent(q.numer(), p) - p_exponent(q.denom(), p))
            }
            (Valuation::PAdic(_), other) => panic!("p-adic valuation on non-rational {other}"),
        }
    }

    /// The uniformizer `π` (`p` for a p-adic valuation, `1` when trivial).
    pub fn uniformizer(&self) -> Scalar {
        match self.valuation {
            Valuation::PAdic(p) => self.from_int(p as i64),
            Valuation::Trivial => self.one(),
        }
    }

    /// `π^m` for any integer `m`.
    pub fn pi_pow(&self, m: i64) -> Scalar {
        match self.valuation {
            Valuation::Trivial => self.one(),
            Valuation::PAdic(p) => {
                let pk = BigInt::from(p).pow(m.unsigned_abs() as u32);
                let q = if m >= 0 {
                    BigRational::from_integer(pk)
                } else {
                    BigRational::new(BigInt::one(), pk)
                };
                Scalar::Rational(q)
            }
        }
    }

    /// Field of the residue map: `F_p` for a p-adic valuation, the field
    /// itself when trivial.
    pub fn residue_field(&self) -> FieldDescriptor {
        match self.valuation {
            Valuation::PAdic(p) => FieldDescriptor::prime(p),
            Valuation::Trivial => *self,
        }
    }

    /// Residue class of an element of the valuation ring.
    pub fn residue(&self, x: &Scalar) -> Result<Scalar, ScalarError> {
        match self.valuation {
            Valuation::Trivial => Ok(x.clone()),
            Valuation::PAdic(p) => {
                let v = self.valuate(x);
                if v < Ext::ZERO {
                    return Err(ScalarError::NegativeValue(x.to_string()));
                }
                let q = x.as_rational().expect("p-adic fields are rational");
                if v > Ext::ZERO {
                    return Ok(Scalar::Modular { value: 0, modulus: p });
                }
                Ok(FieldDescriptor::prime(p).from_rational(q.clone()))
            }
        }
    }

    /// `residue(c·π^{-w(c)})`, the normalized residue of a nonzero scalar.
    pub fn leading_residue(&self, x: &Scalar) -> Result<Scalar, ScalarError> {
        match self.valuate(x) {
            Ext::Fin(m) => self.residue(&(x.clone() * self.pi_pow(-m))),
            _ => Err(ScalarError::DivisionByZero),
        }
    }

    pub fn apply(&self, sigma: FieldAutomorphism, x: &Scalar) -> Result<Scalar, ScalarError> {
        match (sigma, x) {
            (FieldAutomorphism::Identity, _) => Ok(x.clone()),
            (FieldAutomorphism::Conjugation, Scalar::Quadratic { re, im, radicand }) => Ok(Scalar::Quadratic {
                re: re.clone(),
                im: -im.clone(),
                radicand: *radicand,
            }),
            (FieldAutomorphism::Conjugation, _) => Err(ScalarError::Automorphism(sigma, Self::kind_name(self.kind))),
        }
    }

    pub fn automorphism_defined(&self, sigma: FieldAutomorphism) -> bool {
        sigma == FieldAutomorphism::Identity || matches!(self.kind, FieldKind::Quadratic(_))
    }

    /// Coordinates over the prime subfield, in the basis `1` (resp. `1, √a`).
    pub fn coords(&self, x: &Scalar) -> Vec<Scalar> {
        let base = self.prime_subfield();
        match x {
            Scalar::Quadratic { re, im, .. } => vec![base.from_rational(re.clone()), base.from_rational(im.clone())],
            other => vec![other.clone()],
        }
    }

    pub fn from_coords(&self, c: &[Scalar]) -> Scalar {
        match self.kind {
            FieldKind::Quadratic(a) => Scalar::Quadratic {
                re: c[0].as_rational().expect("rational coordinate").clone(),
                im: c[1].as_rational().expect("rational coordinate").clone(),
                radicand: a,
            },
            _ => c[0].clone(),
        }
    }

    /// Image of a prime-subfield element.
    pub fn embed(&self, x: &Scalar) -> Scalar {
        match (self.kind, x) {
            (FieldKind::Quadratic(a), Scalar::Rational(q)) => Scalar::Quadratic {
                re: q.clone(),
                im: BigRational::zero(),
                radicand: a,
            },
            _ => x.clone(),
        }
    }

    /// Basis of the field over its prime subfield.
    pub fn basis(&self) -> Vec<Scalar> {
        match self.sqrt() {
            Some(s) => vec![self.one(), s],
            None => vec![self.one()],
        }
    }

    /// A random element with `w = 0` (any nonzero element when trivially
    /// valued). Small numerators and denominators keep products cheap.
    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let x = self.random_element(rng);
            if !x.is_zero() && self.valuate(&x) == Ext::ZERO {
                return x;
            }
        }
    }

    /// A random element of `w`-value exactly `m`.
    pub fn random_with_value<R: Rng + ?Sized>(&self, rng: &mut R, m: i64) -> Scalar {
        self.random_unit(rng) * self.pi_pow(m)
    }

    /// A random element, zero with small probability.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        let small = |rng: &mut R| {
            let n: i64 = rng.gen_range(-12..=12);
            let d: i64 = rng.gen_range(1..=9);
            BigRational::new(BigInt::from(n), BigInt::from(d))
        };
        match self.kind {
            FieldKind::Rationals => Scalar::Rational(small(rng)),
            FieldKind::Quadratic(a) => Scalar::Quadratic { re: small(rng), im: small(rng), radicand: a },
            FieldKind::Prime(p) => Scalar::Modular { value: rng.gen_range(0..p), modulus: p },
        }
    }

    /// Parses `"3/4"`, `"-5"`, `"1+2*sqrt"`, `"sqrt"`, `"1/2 - sqrt/3"`.
    /// Prime-field literals are reduced mod `p`.
    pub fn parse(&self, s: &str) -> Result<Scalar, ScalarError> {
        let err = || ScalarError::Parse(s.to_string());
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let text = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(&text).to_string();
        if text.is_empty() {
            return Err(err());
        }
        let mut acc = self.zero();
        let mut start = 0;
        let bytes = text.as_bytes();
        for i in 1..=bytes.len() {
            let boundary = i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' && bytes[i - 1] != b'*');
            if boundary {
                acc = acc + self.parse_term(&text[start..i]).ok_or_else(err)?;
                start = i;
            }
        }
        Ok(acc)
    }

    fn parse_term(&self, term: &str) -> Option<Scalar> {
        let (neg, body) = match term.as_bytes().first()? {
            b'+' => (false, &term[1..]),
            b'-' => (true, &term[1..]),
            _ => (false, term),
        };
        let mut value = self.one();
        let mut have = false;
        // factors joined by '*'; a trailing "/d" divides
        for factor in body.split('*') {
            let (num, den) = match factor.split_once('/') {
                Some((n, d)) => (n, Some(d)),
                None => (factor, None),
            };
            let mut f = if num == "sqrt" {
                self.sqrt()?
            } else {
                let n: BigInt = num.parse().ok()?;
                self.from_rational(BigRational::from_integer(n))
            };
            if let Some(d) = den {
                let d: BigInt = d.parse().ok()?;
                let d = self.from_rational(BigRational::from_integer(d));
                f = f.checked_div(&d).ok()?;
            }
            value = value * f;
            have = true;
        }
        have.then(|| if neg { -value } else { value })
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Self::kind_name(self.kind))?;
        if let Valuation::PAdic(p) = self.valuation {
            write!(f, " with {p}-adic valuation")?;
        }
        Ok(())
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Quadratic { re, im, .. } => re.is_zero() && im.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Quadratic { re, im, .. } => re.is_one() && im.is_zero(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    fn descriptor_name(&self) -> String {
        match self {
            Scalar::Rational(_) => "Q".into(),
            Scalar::Quadratic { radicand, .. } => format!("Q(sqrt {radicand})"),
            Scalar::Modular { modulus, .. } => format!("F_{modulus}"),
        }
    }

    fn mismatch(&self, other: &Scalar) -> ScalarError {
        ScalarError::DescriptorMismatch(self.descriptor_name(), other.descriptor_name())
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Quadratic { re: a, im: b, radicand: d }, Scalar::Quadratic { re: c, im: e, radicand: d2 }) if d == d2 => {
                Ok(Scalar::Quadratic { re: a + c, im: b + e, radicand: *d })
            }
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) if p == q => {
                Ok(Scalar::Modular { value: ((*a as u128 + *b as u128) % *p as u128) as u64, modulus: *p })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&-other.clone())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Quadratic { re: a, im: b, radicand: d }, Scalar::Quadratic { re: c, im: e, radicand: d2 }) if d == d2 => {
                Ok(Scalar::Quadratic {
                    re: a * c + b * e * rat(*d),
                    im: a * e + b * c,
                    radicand: *d,
                })
            }
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) if p == q => {
                Ok(Scalar::Modular { value: ((*a as u128 * *b as u128) % *p as u128) as u64, modulus: *p })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Quadratic { re, im, radicand } => {
                let norm = re * re - im * im * rat(*radicand);
                Scalar::Quadratic { re: re / &norm, im: -(im / &norm), radicand: *radicand }
            }
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: mod_pow(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_mul(&other.inv()?)
    }
}

impl Add for Scalar {
    type Output = Scalar;

    /// Panics on mismatched fields; use [`Scalar::checked_add`] at API edges.
    fn add(self, rhs: Scalar) -> Scalar {
        self.checked_add(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for Scalar {
    type Output = Scalar;

    fn sub(self, rhs: Scalar) -> Scalar {
        self.checked_sub(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for Scalar {
    type Output = Scalar;

    fn mul(self, rhs: Scalar) -> Scalar {
        self.checked_mul(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Quadratic { re, im, radicand } => Scalar::Quadratic { re: -re, im: -im, radicand },
            Scalar::Modular { value, modulus } => Scalar::Modular { value: (modulus - value) % modulus, modulus },
        }
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => fmt_rational(q, f),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
            Scalar::Quadratic { re, im, .. } => {
                if im.is_zero() {
                    return fmt_rational(re, f);
                }
                if !re.is_zero() {
                    fmt_rational(re, f)?;
                    f.write_str(if im.is_negative() { "-" } else { "+" })?;
                } else if im.is_negative() {
                    f.write_str("-")?;
                }
                let a = im.abs();
                if a.is_one() {
                    f.write_str("sqrt")
                } else if a.is_integer() {
                    write!(f, "{}*sqrt", a.numer())
                } else {
                    write!(f, "{}*sqrt/{}", a.numer(), a.denom())
                }
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn arithmetic_examples() {
        let q = FieldDescriptor::rationals();
        let a = q.parse("2/3").unwrap() + q.parse("1/6").unwrap();
        assert_eq!(a, q.parse("5/6").unwrap());

        let k = FieldDescriptor::quadratic(2);
        let x = k.parse("1+sqrt").unwrap() * k.parse("1-sqrt").unwrap();
        assert_eq!(x, k.from_int(-1));

        let f5 = FieldDescriptor::prime(5);
        assert_eq!(f5.from_int(3) * f5.from_int(4), f5.from_int(2));
        assert_eq!(f5.parse("-5").unwrap(), f5.zero());
        assert_eq!(f5.from_int(3).inv().unwrap(), f5.from_int(2));
    }

    #[test]
    fn errors() {
        let q = FieldDescriptor::rationals();
        assert_eq!(q.zero().inv(), Err(ScalarError::DivisionByZero));
        let f5 = FieldDescriptor::prime(5);
        assert!(matches!(q.one().checked_add(&f5.one()), Err(ScalarError::DescriptorMismatch(..))));
        assert_eq!(FieldDescriptor::new(FieldKind::Prime(6), Valuation::Trivial), Err(ScalarError::NotPrime(6)));
        assert_eq!(FieldDescriptor::new(FieldKind::Quadratic(4), Valuation::Trivial), Err(ScalarError::PerfectSquare(4)));
        assert!(matches!(
            FieldDescriptor::new(FieldKind::Quadratic(2), Valuation::PAdic(5)),
            Err(ScalarError::ValuationUnsupported(..))
        ));
        assert!(q.parse("1/").is_err());
        assert!(q.parse("sqrt").is_err());
    }

    #[test]
    fn valuations_and_residues() {
        let q5 = FieldDescriptor::padic(5);
        assert_eq!(q5.valuate(&q5.parse("25/3").unwrap()), Ext::Fin(2));
        assert_eq!(q5.valuate(&q5.zero()), Ext::PosInf);
        assert_eq!(q5.valuate(&q5.parse("3/10").unwrap()), Ext::Fin(-1));
        let k = FieldDescriptor::quadratic(2);
        assert_eq!(k.valuate(&k.parse("7+sqrt").unwrap()), Ext::ZERO);

        let f5 = FieldDescriptor::prime(5);
        assert_eq!(q5.residue(&q5.parse("7/3").unwrap()).unwrap(), f5.from_int(4));
        assert_eq!(q5.residue(&q5.from_int(10)).unwrap(), f5.zero());
        assert!(matches!(q5.residue(&q5.parse("1/5").unwrap()), Err(ScalarError::NegativeValue(_))));
        let q = FieldDescriptor::rationals();
        let x = q.parse("-7/9").unwrap();
        assert_eq!(q.residue(&x).unwrap(), x);
    }

    #[test]
    fn conjugation() {
        let k = FieldDescriptor::quadratic(2);
        let x = k.parse("1+sqrt").unwrap();
        assert_eq!(k.apply(FieldAutomorphism::Conjugation, &x).unwrap(), k.parse("1-sqrt").unwrap());
        assert_eq!(k.apply(FieldAutomorphism::Identity, &x).unwrap(), x);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let y = k.random_element(&mut rng);
            let twice = k
                .apply(FieldAutomorphism::Conjugation, &k.apply(FieldAutomorphism::Conjugation, &y).unwrap())
                .unwrap();
            assert_eq!(twice, y);
        }
        let q = FieldDescriptor::rationals();
        assert!(q.apply(FieldAutomorphism::Conjugation, &q.one()).is_err());
    }

    #[test]
    fn display_round_trips() {
        let k = FieldDescriptor::quadratic(3);
        for s in ["1+2*sqrt", "-sqrt", "1/2-sqrt", "3*sqrt/4", "-5/7"] {
            let x = k.parse(s).unwrap();
            assert_eq!(k.parse(&x.to_string()).unwrap(), x, "{s}");
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let k = FieldDescriptor::quadratic(-1);
        let x = k.parse("2/3-4*sqrt").unwrap();
        assert_eq!(k.from_coords(&k.coords(&x)), x);
    }
}
