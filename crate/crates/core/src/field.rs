//! Exact arithmetic for the supported fields with involution.
//!
//! Four kinds of field are representable:
//!
//! | text         | field                    | involution            |
//! |--------------|--------------------------|-----------------------|
//! | `Fp:<p>`     | `F_p`                    | identity              |
//! | `Fp2:<p>`    | `F_p[u]/(u^2 - s)`       | Frobenius `u -> -u`   |
//! | `Q`          | rationals                | identity              |
//! | `Qsqrt:<d>`  | `Q(r)`, `r^2 = d`        | `r -> -r`             |
//!
//! `p` is an odd prime below `2^31` and `s` is the smallest positive
//! quadratic non-residue mod `p`. Finite-field products go through `u128`
//! so no intermediate value can overflow.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

/// Largest supported characteristic (exclusive bound on `p`, also on `|d|`).
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("{0} exceeds the supported bound 2^31")]
    TooLarge(i128),
    #[error("{0} is not a valid radicand (need squarefree d with d != 0, 1)")]
    InvalidRadicand(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch {
        expected: FieldSpec,
        found: FieldSpec,
    },
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

impl FieldError {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        FieldError::Parse {
            position,
            message: message.into(),
        }
    }
}

/// The kind of a field together with its defining parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime { p: u64 },
    PrimeSquare { p: u64, s: u64 },
    Rationals,
    QuadraticNumber { d: i64 },
}

/// A validated field with its canonical involution.
///
/// Construct with [`FieldSpec::prime`], [`FieldSpec::prime_square`],
/// [`FieldSpec::rationals`], [`FieldSpec::quadratic`] or by parsing the text
/// form (`"Fp:7"`, `"Fp2:3"`, `"Q"`, `"Qsqrt:-1"`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    kind: FieldKind,
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut q = 3;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 2;
    }
    true
}

fn is_squarefree(n: u64) -> bool {
    let mut n = n;
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            n /= q;
            if n.is_multiple_of(q) {
                return false;
            }
        }
        q += 1;
    }
    true
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn smallest_non_residue(p: u64) -> u64 {
    (2..p)
        .find(|&a| pow_mod(a, (p - 1) / 2, p) == p - 1)
        .expect("every odd prime has a quadratic non-residue")
}

fn check_prime(p: u64) -> Result<(), FieldError> {
    if p == 2 {
        return Err(FieldError::CharacteristicTwo);
    }
    if p >= MAX_MODULUS {
        return Err(FieldError::TooLarge(p as i128));
    }
    if !is_odd_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    Ok(())
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        check_prime(p)?;
        Ok(FieldSpec {
            kind: FieldKind::Prime { p },
        })
    }

    /// `F_{p^2}` built as `F_p[u]/(u^2 - s)` with `s` the smallest non-residue.
    pub fn prime_square(p: u64) -> Result<Self, FieldError> {
        check_prime(p)?;
        Ok(FieldSpec {
            kind: FieldKind::PrimeSquare {
                p,
                s: smallest_non_residue(p),
            },
        })
    }

    pub fn rationals() -> Self {
        FieldSpec {
            kind: FieldKind::Rationals,
        }
    }

    pub fn quadratic(d: i64) -> Result<Self, FieldError> {
        if d.unsigned_abs() >= MAX_MODULUS {
            return Err(FieldError::TooLarge(d as i128));
        }
        if d == 0 || d == 1 || !is_squarefree(d.unsigned_abs()) {
            return Err(FieldError::InvalidRadicand(d));
        }
        Ok(FieldSpec {
            kind: FieldKind::QuadraticNumber { d },
        })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// 0 for the characteristic-zero fields.
    pub fn characteristic(&self) -> u64 {
        match self.kind {
            FieldKind::Prime { p } | FieldKind::PrimeSquare { p, .. } => p,
            _ => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic() != 0
    }

    /// Number of elements, for finite fields.
    pub fn order(&self) -> Option<u64> {
        match self.kind {
            FieldKind::Prime { p } => Some(p),
            FieldKind::PrimeSquare { p, .. } => Some(p * p),
            _ => None,
        }
    }

    pub fn has_nontrivial_involution(&self) -> bool {
        matches!(
            self.kind,
            FieldKind::PrimeSquare { .. } | FieldKind::QuadraticNumber { .. }
        )
    }

    /// The fixed subfield as a field of its own (`F_p` for `F_{p^2}`, `Q` for `Q(r)`).
    pub fn fixed_field(&self) -> FieldSpec {
        match self.kind {
            FieldKind::PrimeSquare { p, .. } => FieldSpec {
                kind: FieldKind::Prime { p },
            },
            FieldKind::QuadraticNumber { .. } => FieldSpec::rationals(),
            _ => *self,
        }
    }

    fn wrap(&self, value: Value) -> FieldElement {
        FieldElement {
            field: *self,
            value,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match self.kind {
            FieldKind::Prime { p } => self.wrap(Value::Residue(n.rem_euclid(p as i64) as u64)),
            FieldKind::PrimeSquare { p, .. } => {
                self.wrap(Value::Pair(n.rem_euclid(p as i64) as u64, 0))
            }
            FieldKind::Rationals => self.wrap(Value::Rational(BigRational::from_integer(n.into()))),
            FieldKind::QuadraticNumber { .. } => self.wrap(Value::RationalPair(
                BigRational::from_integer(n.into()),
                BigRational::zero(),
            )),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        self.from_rational(&BigRational::from_integer(n.clone()))
            .expect("integers have unit denominator")
    }

    /// Image of a rational number; fails in characteristic p when the
    /// denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement, FieldError> {
        self.from_rational_pair(q, &BigRational::zero())
    }

    /// `a + b*g` where `g` is `u` or `r`; `b` must be zero for the
    /// fields with identity involution.
    pub fn from_rational_pair(
        &self,
        a: &BigRational,
        b: &BigRational,
    ) -> Result<FieldElement, FieldError> {
        match self.kind {
            FieldKind::Prime { p } => {
                debug_assert!(b.is_zero());
                Ok(self.wrap(Value::Residue(reduce_rational(a, p)?)))
            }
            FieldKind::PrimeSquare { p, .. } => {
                Ok(self.wrap(Value::Pair(reduce_rational(a, p)?, reduce_rational(b, p)?)))
            }
            FieldKind::Rationals => {
                debug_assert!(b.is_zero());
                Ok(self.wrap(Value::Rational(a.clone())))
            }
            FieldKind::QuadraticNumber { .. } => {
                Ok(self.wrap(Value::RationalPair(a.clone(), b.clone())))
            }
        }
    }

    /// `a + b*u` for the finite fields; `b` is ignored over `F_p`.
    pub fn from_residues(&self, a: u64, b: u64) -> FieldElement {
        match self.kind {
            FieldKind::Prime { p } => self.wrap(Value::Residue(a % p)),
            FieldKind::PrimeSquare { p, .. } => self.wrap(Value::Pair(a % p, b % p)),
            _ => panic!("from_residues called on characteristic-zero field {self}"),
        }
    }

    /// The canonical element moved by the involution: `u` for `F_{p^2}`,
    /// `r` for `Q(r)`, `None` when the involution is the identity.
    pub fn involution_witness(&self) -> Option<FieldElement> {
        match self.kind {
            FieldKind::PrimeSquare { .. } => Some(self.wrap(Value::Pair(0, 1))),
            FieldKind::QuadraticNumber { .. } => {
                Some(self.wrap(Value::RationalPair(BigRational::zero(), BigRational::one())))
            }
            _ => None,
        }
    }

    /// Element number `index` in the canonical enumeration `a + b*p`.
    pub fn element_at(&self, index: u64) -> FieldElement {
        match self.kind {
            FieldKind::Prime { p } => {
                assert!(index < p);
                self.wrap(Value::Residue(index))
            }
            FieldKind::PrimeSquare { p, .. } => {
                assert!(index < p * p);
                self.wrap(Value::Pair(index % p, index / p))
            }
            _ => panic!("element_at called on infinite field {self}"),
        }
    }

    /// All elements of a finite field in canonical order.
    pub fn elements(&self) -> Option<Vec<FieldElement>> {
        self.order()
            .map(|q| (0..q).map(|i| self.element_at(i)).collect())
    }

    /// Random element: uniform for finite fields, small-height components
    /// in `[-height, height]` otherwise.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> FieldElement {
        match self.kind {
            FieldKind::Prime { p } => self.wrap(Value::Residue(rng.gen_range(0..p))),
            FieldKind::PrimeSquare { p, .. } => {
                self.wrap(Value::Pair(rng.gen_range(0..p), rng.gen_range(0..p)))
            }
            FieldKind::Rationals => self.wrap(Value::Rational(small_rational(rng, height))),
            FieldKind::QuadraticNumber { .. } => self.wrap(Value::RationalPair(
                small_rational(rng, height),
                small_rational(rng, height),
            )),
        }
    }

    /// Random element of the fixed subfield, embedded in this field.
    pub fn sample_fixed<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> FieldElement {
        let x = self.sample(rng, height);
        match x.value {
            Value::Pair(a, _) => self.wrap(Value::Pair(a, 0)),
            Value::RationalPair(a, _) => self.wrap(Value::RationalPair(a, BigRational::zero())),
            _ => x,
        }
    }

    /// Parses an element literal; see [`parse_element`].
    pub fn parse(&self, text: &str) -> Result<FieldElement, FieldError> {
        parse_element(*self, text)
    }
}

fn small_rational<R: Rng + ?Sized>(rng: &mut R, height: i64) -> BigRational {
    let num = rng.gen_range(-height..=height);
    let den = rng.gen_range(1..=height.max(1));
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn reduce_int(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

fn reduce_rational(q: &BigRational, p: u64) -> Result<u64, FieldError> {
    let den = reduce_int(q.denom(), p);
    if den == 0 {
        return Err(FieldError::DivisionByZero);
    }
    let num = reduce_int(q.numer(), p);
    Ok(mul_mod(num, pow_mod(den, p - 2, p), p))
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Prime { p } => write!(f, "Fp:{p}"),
            FieldKind::PrimeSquare { p, .. } => write!(f, "Fp2:{p}"),
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::QuadraticNumber { d } => write!(f, "Qsqrt:{d}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::rationals());
        }
        let (head, arg) = s
            .split_once(':')
            .ok_or_else(|| FieldError::parse(0, format!("unknown field spec `{s}`")))?;
        let arg_pos = head.len() + 1;
        let bad_arg = |_| FieldError::parse(arg_pos, format!("bad field parameter `{arg}`"));
        match head {
            "Fp" => FieldSpec::prime(arg.parse().map_err(bad_arg)?),
            "Fp2" => FieldSpec::prime_square(arg.parse().map_err(bad_arg)?),
            "Qsqrt" => FieldSpec::quadratic(arg.parse().map_err(bad_arg)?),
            _ => Err(FieldError::parse(0, format!("unknown field kind `{head}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Value {
    Residue(u64),
    Pair(u64, u64),
    Rational(BigRational),
    RationalPair(BigRational, BigRational),
}

/// An element of a [`FieldSpec`], always in canonical form.
///
/// The arithmetic operators panic if the operands belong to different
/// fields; public entry points that accept elements from callers check
/// membership first and report [`FieldError::FieldMismatch`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FieldSpec,
    value: Value,
}

impl FieldElement {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ensure_in(&self, field: FieldSpec) -> Result<(), FieldError> {
        if self.field == field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch {
                expected: field,
                found: self.field,
            })
        }
    }

    /// `(a, b)` for `a + b*u`; `b = 0` over `F_p`. `None` in characteristic zero.
    pub fn residues(&self) -> Option<(u64, u64)> {
        match self.value {
            Value::Residue(a) => Some((a, 0)),
            Value::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// `(a, b)` for `a + b*r`; `b = 0` over `Q`. `None` for finite fields.
    pub fn rationals(&self) -> Option<(BigRational, BigRational)> {
        match &self.value {
            Value::Rational(a) => Some((a.clone(), BigRational::zero())),
            Value::RationalPair(a, b) => Some((a.clone(), b.clone())),
            _ => None,
        }
    }

    /// Index in the canonical enumeration of a finite field.
    pub fn index(&self) -> Option<u64> {
        match self.value {
            Value::Residue(a) => Some(a),
            Value::Pair(a, b) => Some(a + b * self.field.characteristic()),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Residue(a) => *a == 0,
            Value::Pair(a, b) => *a == 0 && *b == 0,
            Value::Rational(a) => a.is_zero(),
            Value::RationalPair(a, b) => a.is_zero() && b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    /// The involution.
    pub fn conj(&self) -> FieldElement {
        let value = match &self.value {
            Value::Pair(a, b) => {
                let p = self.field.characteristic();
                Value::Pair(*a, (p - b) % p)
            }
            Value::RationalPair(a, b) => Value::RationalPair(a.clone(), -b),
            v => v.clone(),
        };
        FieldElement {
            field: self.field,
            value,
        }
    }

    /// Whether the element lies in the fixed subfield.
    pub fn is_fixed(&self) -> bool {
        match &self.value {
            Value::Pair(_, b) => *b == 0,
            Value::RationalPair(_, b) => b.is_zero(),
            _ => true,
        }
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let value = match &self.value {
            Value::Residue(a) => {
                let p = self.field.characteristic();
                Value::Residue(pow_mod(*a, p - 2, p))
            }
            Value::Pair(a, b) => {
                let FieldKind::PrimeSquare { p, s } = self.field.kind else {
                    unreachable!()
                };
                // (a + bu)^-1 = (a - bu) / (a^2 - s b^2)
                let bb = mul_mod(mul_mod(*b, *b, p), s, p);
                let n = (mul_mod(*a, *a, p) + p - bb) % p;
                let n_inv = pow_mod(n, p - 2, p);
                Value::Pair(mul_mod(*a, n_inv, p), mul_mod((p - b) % p, n_inv, p))
            }
            Value::Rational(a) => Value::Rational(a.recip()),
            Value::RationalPair(a, b) => {
                let FieldKind::QuadraticNumber { d } = self.field.kind else {
                    unreachable!()
                };
                let n = a * a - b * b * BigRational::from_integer(BigInt::from(d));
                Value::RationalPair(a / &n, -(b / &n))
            }
        };
        Ok(FieldElement {
            field: self.field,
            value,
        })
    }

    pub fn checked_div(&self, rhs: &FieldElement) -> Result<FieldElement, FieldError> {
        rhs.ensure_in(self.field)?;
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    fn same_field(&self, rhs: &FieldElement) {
        assert!(
            self.field == rhs.field,
            "field mismatch: {} vs {}",
            self.field,
            rhs.field
        );
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.same_field(rhs);
        let value = match (&self.value, &rhs.value) {
            (Value::Residue(a), Value::Residue(b)) => {
                Value::Residue((a + b) % self.field.characteristic())
            }
            (Value::Pair(a, b), Value::Pair(c, d)) => {
                let p = self.field.characteristic();
                Value::Pair((a + c) % p, (b + d) % p)
            }
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a + b),
            (Value::RationalPair(a, b), Value::RationalPair(c, d)) => {
                Value::RationalPair(a + c, b + d)
            }
            _ => unreachable!("representation does not match field"),
        };
        FieldElement {
            field: self.field,
            value,
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        let value = match &self.value {
            Value::Residue(a) => {
                let p = self.field.characteristic();
                Value::Residue((p - a) % p)
            }
            Value::Pair(a, b) => {
                let p = self.field.characteristic();
                Value::Pair((p - a) % p, (p - b) % p)
            }
            Value::Rational(a) => Value::Rational(-a),
            Value::RationalPair(a, b) => Value::RationalPair(-a, -b),
        };
        FieldElement {
            field: self.field,
            value,
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.same_field(rhs);
        let value = match (&self.value, &rhs.value) {
            (Value::Residue(a), Value::Residue(b)) => {
                Value::Residue(mul_mod(*a, *b, self.field.characteristic()))
            }
            (Value::Pair(a, b), Value::Pair(c, d)) => {
                let FieldKind::PrimeSquare { p, s } = self.field.kind else {
                    unreachable!()
                };
                // (a + bu)(c + du) = (ac + s bd) + (ad + bc)u
                let re = (mul_mod(*a, *c, p) + mul_mod(mul_mod(*b, *d, p), s, p)) % p;
                let im = (mul_mod(*a, *d, p) + mul_mod(*b, *c, p)) % p;
                Value::Pair(re, im)
            }
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a * b),
            (Value::RationalPair(a, b), Value::RationalPair(c, d)) => {
                let FieldKind::QuadraticNumber { d: radicand } = self.field.kind else {
                    unreachable!()
                };
                let r = BigRational::from_integer(BigInt::from(radicand));
                Value::RationalPair(a * c + b * d * r, a * d + b * c)
            }
            _ => unreachable!("representation does not match field"),
        };
        FieldElement {
            field: self.field,
            value,
        }
    }
}

impl Div for &FieldElement {
    type Output = FieldElement;

    /// Panics on division by zero; see [`FieldElement::checked_div`].
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.same_field(rhs);
        self * &rhs.inv().expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        -&self
    }
}

fn write_component(f: &mut fmt::Formatter<'_>, a: &BigRational) -> fmt::Result {
    if a.is_integer() {
        write!(f, "{}", a.numer())
    } else {
        write!(f, "{}/{}", a.numer(), a.denom())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Residue(a) => write!(f, "{a}"),
            Value::Pair(a, b) => match (a, b) {
                (a, 0) => write!(f, "{a}"),
                (0, b) => write!(f, "{b}*u"),
                (a, b) => write!(f, "{a}+{b}*u"),
            },
            Value::Rational(a) => write_component(f, a),
            Value::RationalPair(a, b) => {
                if b.is_zero() {
                    return write_component(f, a);
                }
                if !a.is_zero() {
                    write_component(f, a)?;
                    if b.is_positive() {
                        write!(f, "+")?;
                    }
                }
                write_component(f, b)?;
                write!(f, "*r")
            }
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field)
    }
}

/// Parses an element literal over `field`.
///
/// Accepted: a sum of terms separated by `+` or `-`, where each term is an
/// optionally signed coefficient (`7`, `-3/6`), optionally followed by
/// `*u` (over `Fp2`) or `*r` (over `Qsqrt`), or a bare generator. Whitespace
/// is ignored. Positions in errors are byte offsets into `text`.
pub fn parse_element(field: FieldSpec, text: &str) -> Result<FieldElement, FieldError> {
    let generator = match field.kind {
        FieldKind::PrimeSquare { .. } => Some('u'),
        FieldKind::QuadraticNumber { .. } => Some('r'),
        _ => None,
    };
    let tokens: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    if tokens.is_empty() {
        return Err(FieldError::parse(0, "empty element"));
    }
    let end = text.len();
    let mut pos = 0;
    let mut real = BigRational::zero();
    let mut imag = BigRational::zero();
    let mut first = true;

    while pos < tokens.len() {
        let mut negative = false;
        if !first {
            match tokens[pos].1 {
                '+' => {}
                '-' => negative = true,
                c => {
                    return Err(FieldError::parse(
                        tokens[pos].0,
                        format!("expected `+` or `-`, found `{c}`"),
                    ))
                }
            }
            pos += 1;
        }
        first = false;
        // optional sign of the term itself
        while pos < tokens.len() && (tokens[pos].1 == '-' || tokens[pos].1 == '+') {
            negative ^= tokens[pos].1 == '-';
            pos += 1;
        }
        let at = tokens.get(pos).map_or(end, |t| t.0);
        let mut coeff = BigRational::one();
        let mut has_number = false;
        if pos < tokens.len() && tokens[pos].1.is_ascii_digit() {
            let (num, next) = read_integer(&tokens, pos);
            pos = next;
            coeff = BigRational::from_integer(num);
            has_number = true;
            if pos < tokens.len() && tokens[pos].1 == '/' {
                let slash = tokens[pos].0;
                pos += 1;
                if pos >= tokens.len() || !tokens[pos].1.is_ascii_digit() {
                    return Err(FieldError::parse(
                        tokens.get(pos).map_or(end, |t| t.0),
                        "expected denominator",
                    ));
                }
                let (den, next) = read_integer(&tokens, pos);
                pos = next;
                if den.is_zero() {
                    return Err(FieldError::parse(slash, "zero denominator"));
                }
                coeff /= BigRational::from_integer(den);
            }
        }
        let mut is_generator = false;
        if has_number && pos < tokens.len() && tokens[pos].1 == '*' {
            pos += 1;
            match tokens.get(pos) {
                Some(&(_, c)) if Some(c) == generator => {
                    pos += 1;
                    is_generator = true;
                }
                Some(&(i, c)) => {
                    return Err(FieldError::parse(i, format!("unexpected `{c}` after `*`")))
                }
                None => return Err(FieldError::parse(end, "expected generator after `*`")),
            }
        } else if !has_number {
            match tokens.get(pos) {
                Some(&(_, c)) if Some(c) == generator => {
                    pos += 1;
                    is_generator = true;
                }
                Some(&(i, c)) => return Err(FieldError::parse(i, format!("unexpected `{c}`"))),
                None => return Err(FieldError::parse(at, "expected a term")),
            }
        }
        if negative {
            coeff = -coeff;
        }
        if is_generator {
            imag += coeff;
        } else {
            real += coeff;
        }
    }

    field.from_rational_pair(&real, &imag).map_err(|e| match e {
        FieldError::DivisionByZero => {
            FieldError::parse(0, format!("denominator vanishes in {field}"))
        }
        e => e,
    })
}

fn read_integer(tokens: &[(usize, char)], mut pos: usize) -> (BigInt, usize) {
    let mut digits = String::new();
    while pos < tokens.len() && tokens[pos].1.is_ascii_digit() {
        digits.push(tokens[pos].1);
        pos += 1;
    }
    (digits.parse().expect("ascii digits"), pos)
}

/// Exact square root of a rational number, if it is a perfect square.
pub(crate) fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = integer_sqrt(q.numer())?;
    let d = integer_sqrt(q.denom())?;
    Some(BigRational::new(n, d))
}

pub(crate) fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}
