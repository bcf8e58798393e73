//! The norm map, norm equations, and constructions of isotropic vectors.
//!
//! Two constructive routes are implemented:
//!
//! * nontrivial involution: diagonalize to `diag(l_1, .., l_n)`, solve
//!   `x * conj(x) = -l_2 / l_1`, and return `x e_1 + e_2`;
//! * identity involution over `F_p`, `n >= 3`: diagonalize and find a zero
//!   of the ternary quadric `l_1 x^2 + l_2 y^2 + l_3 = 0` by intersecting the
//!   value sets of `l_1 x^2` and `-l_3 - l_2 y^2`.
//!
//! [`cw_solve`] is an exhaustive projective search for zeros of a homogeneous
//! polynomial over a finite field, used to cross-check the constructions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

use crate::field::{
    integer_sqrt, mul_mod, pow_mod, rational_sqrt, FieldElement, FieldError, FieldKind, FieldSpec,
};
use crate::forms::{FormError, HermitianForm};
use crate::linalg::{format_vector, is_zero_vector};

/// Default candidate budget for searches over infinite fields.
pub const DEFAULT_SEARCH_BOUND: u64 = 10_000;
/// Default cap on `q^n` for [`cw_solve`].
pub const DEFAULT_CW_BOUND: u64 = 10_000_000;
/// Largest `p` for which discrete logs in `F_p^*` use a full table.
const DLOG_TABLE_LIMIT: u64 = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsotropyError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("{0}")]
    NormNotRepresented(String),
    #[error("{0}")]
    PreconditionViolated(String),
    #[error("dimension {found} is below the required {required}")]
    DimensionTooSmall { required: usize, found: usize },
    #[error("{field}: {reason}")]
    UnsupportedField {
        field: FieldSpec,
        reason: &'static str,
    },
    #[error("search space {size} exceeds bound {bound}")]
    SearchSpaceTooLarge { size: String, bound: u64 },
    #[error("exhaustive search found no nontrivial zero")]
    NoSolutionFound,
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("vector {0} is not a nonzero isotropic vector")]
    InvalidWitness(String),
}

impl IsotropyError {
    /// Variant name, as printed by the command-line front end.
    pub fn name(&self) -> &'static str {
        match self {
            IsotropyError::Form(_) => "FormError",
            IsotropyError::Field(_) => "FieldError",
            IsotropyError::NormNotRepresented(_) => "NormNotRepresented",
            IsotropyError::PreconditionViolated(_) => "PreconditionViolated",
            IsotropyError::DimensionTooSmall { .. } => "DimensionTooSmall",
            IsotropyError::UnsupportedField { .. } => "UnsupportedField",
            IsotropyError::SearchSpaceTooLarge { .. } => "SearchSpaceTooLarge",
            IsotropyError::NoSolutionFound => "NoSolutionFound",
            IsotropyError::InvalidPolynomial(_) => "InvalidPolynomial",
            IsotropyError::InvalidWitness(_) => "InvalidWitness",
        }
    }
}

/// `x * conj(x)`.
pub fn norm(x: &FieldElement) -> FieldElement {
    x * &x.conj()
}

/// Solves `x * conj(x) = c` for `c` nonzero in the fixed field.
///
/// * `F_{p^2}`: `g^{p+1}` generates `F_p^*` for a generator `g`, so a discrete
///   log of `c` to that base gives `x = g^k`.
/// * `F_p`: square root by Tonelli-Shanks.
/// * `Q`: exact rational square root.
/// * `Q(r)`: search over `a = x/M, b = y/M` with at most `bound` pairs; a miss
///   only means none was found within the bound.
pub fn norm_solve(
    field: FieldSpec,
    c: &FieldElement,
    bound: u64,
) -> Result<FieldElement, IsotropyError> {
    c.ensure_in(field)?;
    if c.is_zero() {
        return Err(IsotropyError::PreconditionViolated(
            "norm target must be nonzero".into(),
        ));
    }
    if !c.is_fixed() {
        return Err(IsotropyError::PreconditionViolated(format!(
            "norm target {c} is not fixed by the involution"
        )));
    }
    let x = match field.kind() {
        FieldKind::Prime { p } => {
            let (a, _) = c.residues().expect("finite field");
            let root = sqrt_mod(a, p).ok_or_else(|| {
                IsotropyError::NormNotRepresented(format!("{a} is not a square mod {p}"))
            })?;
            field.from_residues(root, 0)
        }
        FieldKind::PrimeSquare { p, .. } => {
            let (a, _) = c.residues().expect("finite field");
            let g = multiplicative_generator(field);
            let h = norm(&g).residues().expect("finite field").0;
            let k = discrete_log(h, a, p).expect("the norm of a generator generates F_p^*");
            g.pow(k)
        }
        FieldKind::Rationals => {
            let (a, _) = c.rationals().expect("rational field");
            let root = rational_sqrt(&a).ok_or_else(|| {
                IsotropyError::NormNotRepresented(format!("{a} is not a square in Q"))
            })?;
            field.from_rational(&root)?
        }
        FieldKind::QuadraticNumber { d } => {
            let (a, _) = c.rationals().expect("rational field");
            quadratic_norm_search(field, d, &a, bound)?
        }
    };
    debug_assert_eq!(norm(&x), *c);
    Ok(x)
}

fn quadratic_norm_search(
    field: FieldSpec,
    d: i64,
    target: &BigRational,
    bound: u64,
) -> Result<FieldElement, IsotropyError> {
    let not_found = || {
        IsotropyError::NormNotRepresented(format!(
            "no x in {field} with x*conj(x) = {target} within search bound {bound}"
        ))
    };
    if d < 0 && target.is_negative() {
        return Err(IsotropyError::NormNotRepresented(format!(
            "{target} is negative and norms from {field} are positive"
        )));
    }
    // a = x/M, b = y/M with M = m * den: x^2 - d y^2 = num * den * m^2
    let num = target.numer().clone();
    let den = target.denom().clone();
    let d_big = BigInt::from(d);
    let mut tried = 0u64;
    let mut height = 1i64;
    while tried < bound {
        for m in 1..=height {
            for y in 0..=height {
                if m.max(y) != height {
                    continue;
                }
                if tried >= bound {
                    return Err(not_found());
                }
                tried += 1;
                let m_big = BigInt::from(m);
                let y_big = BigInt::from(y);
                let t = &num * &den * &m_big * &m_big + &d_big * &y_big * &y_big;
                if let Some(x) = integer_sqrt(&t) {
                    let scale = &m_big * &den;
                    let a = BigRational::new(x, scale.clone());
                    let b = BigRational::new(y_big, scale);
                    return Ok(field.from_rational_pair(&a, &b)?);
                }
            }
        }
        height += 1;
    }
    Err(not_found())
}

/// Square root mod an odd prime (Tonelli-Shanks); the smaller of the two roots.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let root = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        let mut q = p - 1;
        let mut s = 0;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
        let mut m = s;
        let mut c = pow_mod(z, q, p);
        let mut t = pow_mod(a, q, p);
        let mut r = pow_mod(a, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mul_mod(t2, t2, p);
                i += 1;
            }
            let b = pow_mod(c, 1 << (m - i - 1), p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        r
    };
    debug_assert_eq!(mul_mod(root, root, p), a);
    Some(root.min(p - root))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest generator of the unit group of a finite field in the canonical enumeration.
pub fn multiplicative_generator(field: FieldSpec) -> FieldElement {
    let p = field.characteristic();
    let q = field.order().expect("finite field");
    let order = q - 1;
    let mut primes = prime_factors(p - 1);
    if q != p {
        primes.extend(prime_factors(p + 1));
        primes.sort_unstable();
        primes.dedup();
    }
    (1..q)
        .map(|i| field.element_at(i))
        .find(|g| primes.iter().all(|l| !g.pow(order / l).is_one()))
        .expect("finite fields have cyclic unit groups")
}

/// `k` with `base^k = target` in `F_p^*`, or `None` if `target` is not a power.
fn discrete_log(base: u64, target: u64, p: u64) -> Option<u64> {
    if p <= DLOG_TABLE_LIMIT {
        let mut table = vec![u64::MAX; p as usize];
        let mut cur = 1;
        for k in 0..p - 1 {
            if table[cur as usize] == u64::MAX {
                table[cur as usize] = k;
            }
            cur = mul_mod(cur, base, p);
        }
        let k = table[target as usize];
        return (k != u64::MAX).then_some(k);
    }
    // baby-step giant-step beyond the table limit
    let m = ((p - 1) as f64).sqrt().ceil() as u64;
    let mut baby = HashMap::with_capacity(m as usize);
    let mut cur = 1;
    for j in 0..m {
        baby.entry(cur).or_insert(j);
        cur = mul_mod(cur, base, p);
    }
    let giant = pow_mod(pow_mod(base, m, p), p - 2, p);
    let mut gamma = target;
    for i in 0..m {
        if let Some(&j) = baby.get(&gamma) {
            return Some(i * m + j);
        }
        gamma = mul_mod(gamma, giant, p);
    }
    None
}

/// How an isotropic vector was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    RadicalVector,
    NormEquation,
    DiagonalQuadric,
    BruteForce,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Construction::RadicalVector => "RadicalVector",
            Construction::NormEquation => "NormEquation",
            Construction::DiagonalQuadric => "DiagonalQuadric",
            Construction::BruteForce => "BruteForce",
        };
        f.write_str(s)
    }
}

/// A nonzero isotropic vector, checked against its form at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyWitness {
    vector: Vec<FieldElement>,
    construction: Construction,
}

impl IsotropyWitness {
    pub fn new(
        form: &HermitianForm,
        vector: Vec<FieldElement>,
        construction: Construction,
    ) -> Result<Self, IsotropyError> {
        if is_zero_vector(&vector) || !form.is_isotropic(&vector)? {
            return Err(IsotropyError::InvalidWitness(format_vector(&vector)));
        }
        Ok(IsotropyWitness {
            vector,
            construction,
        })
    }

    pub fn vector(&self) -> &[FieldElement] {
        &self.vector
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }
}

fn require_dim(form: &HermitianForm, required: usize) -> Result<(), IsotropyError> {
    if form.dim() < required {
        return Err(IsotropyError::DimensionTooSmall {
            required,
            found: form.dim(),
        });
    }
    Ok(())
}

/// Isotropic vector from a norm equation on the first two diagonal entries.
///
/// Works for any involution whose norm equation `x * conj(x) = -l_2/l_1` is
/// solvable; with the identity involution this is a square-root test.
pub fn isotropic_via_norm(
    form: &HermitianForm,
    bound: u64,
) -> Result<IsotropyWitness, IsotropyError> {
    require_dim(form, 2)?;
    let diag = form.diagonalize();
    if let Some(i) = diag.diagonal.iter().position(FieldElement::is_zero) {
        return IsotropyWitness::new(form, diag.column(i), Construction::RadicalVector);
    }
    let target = -(&diag.diagonal[1] / &diag.diagonal[0]);
    let x = norm_solve(form.field(), &target, bound)?;
    let v: Vec<FieldElement> = diag
        .column(0)
        .iter()
        .zip(diag.column(1))
        .map(|(b1, b2)| &(&x * b1) + &b2)
        .collect();
    IsotropyWitness::new(form, v, Construction::NormEquation)
}

/// Isotropic vector of a symmetric form over `F_p` in dimension at least 3.
pub fn isotropic_symmetric(form: &HermitianForm) -> Result<IsotropyWitness, IsotropyError> {
    let field = form.field();
    let FieldKind::Prime { p } = field.kind() else {
        return Err(IsotropyError::UnsupportedField {
            field,
            reason:
                "the diagonal-quadric construction needs a prime field with identity involution",
        });
    };
    require_dim(form, 3)?;
    let diag = form.diagonalize();
    if let Some(i) = diag.diagonal.iter().position(FieldElement::is_zero) {
        return IsotropyWitness::new(form, diag.column(i), Construction::RadicalVector);
    }
    let l: Vec<u64> = diag.diagonal[..3]
        .iter()
        .map(|x| x.residues().expect("finite field").0)
        .collect();
    // first x for every value of l_1 x^2
    let mut by_value = vec![None; p as usize];
    for x in 0..p {
        let val = mul_mod(l[0], mul_mod(x, x, p), p);
        by_value[val as usize].get_or_insert(x);
    }
    let neg_l3 = (p - l[2]) % p;
    let (x, y) = (0..p)
        .find_map(|y| {
            let val = (neg_l3 + p - mul_mod(l[1], mul_mod(y, y, p), p)) % p;
            by_value[val as usize].map(|x| (x, y))
        })
        .expect("two sets of (p+1)/2 residues always meet");
    let coeffs = [
        field.from_residues(x, 0),
        field.from_residues(y, 0),
        field.one(),
    ];
    let n = form.dim();
    let v: Vec<FieldElement> = (0..n)
        .map(|i| {
            (0..3).fold(field.zero(), |acc, k| {
                &acc + &(&coeffs[k] * &diag.basis_change[(i, k)])
            })
        })
        .collect();
    IsotropyWitness::new(form, v, Construction::DiagonalQuadric)
}

/// Outcome of [`isotropic_any`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsotropyOutcome {
    Found(IsotropyWitness),
    /// `exhaustive` is true when the answer is definite (the form is
    /// anisotropic), false when only a bounded search was exhausted.
    NotFound {
        exhaustive: bool,
    },
}

/// Dispatches to the right construction for the form's field and dimension.
pub fn isotropic_any(form: &HermitianForm, bound: u64) -> Result<IsotropyOutcome, IsotropyError> {
    let field = form.field();
    let n = form.dim();
    if n == 0 {
        return Ok(IsotropyOutcome::NotFound { exhaustive: true });
    }
    let radical = form.radical();
    if radical.dim() > 0 {
        let v = radical.basis().column(0);
        return IsotropyWitness::new(form, v, Construction::RadicalVector)
            .map(IsotropyOutcome::Found);
    }
    if n == 1 {
        // nondegenerate line: (cv, cv) = c conj(c) h != 0
        return Ok(IsotropyOutcome::NotFound { exhaustive: true });
    }
    if field.has_nontrivial_involution() {
        match isotropic_via_norm(form, bound) {
            Ok(w) => return Ok(IsotropyOutcome::Found(w)),
            Err(IsotropyError::NormNotRepresented(_)) if !field.is_finite() => {}
            Err(e) => return Err(e),
        }
    } else if n == 2 {
        // a nondegenerate binary form is isotropic iff -l_2/l_1 is a square
        return match isotropic_via_norm(form, bound) {
            Ok(w) => Ok(IsotropyOutcome::Found(w)),
            Err(IsotropyError::NormNotRepresented(_)) => {
                Ok(IsotropyOutcome::NotFound { exhaustive: true })
            }
            Err(e) => Err(e),
        };
    } else if field.is_finite() {
        return isotropic_symmetric(form).map(IsotropyOutcome::Found);
    }
    Ok(match brute_force_isotropic(form, bound)? {
        Some(v) => IsotropyOutcome::Found(IsotropyWitness::new(form, v, Construction::BruteForce)?),
        None => IsotropyOutcome::NotFound {
            exhaustive: field.is_finite() && projective_count(field, n).is_some_and(|c| c <= bound),
        },
    })
}

fn projective_count(field: FieldSpec, n: usize) -> Option<u64> {
    let q = field.order()?;
    let total = q.checked_pow(n as u32)?;
    Some((total - 1) / (q - 1))
}

/// Searches for an isotropic vector among at most `bound` candidates.
///
/// Finite fields: projective representatives in canonical order. Otherwise
/// integer coordinate vectors (components `a + b*r` with integer `a, b`) by
/// increasing height; scaling makes this no loss of generality.
pub fn brute_force_isotropic(
    form: &HermitianForm,
    bound: u64,
) -> Result<Option<Vec<FieldElement>>, IsotropyError> {
    let field = form.field();
    let n = form.dim();
    if field.is_finite() {
        let mut found = None;
        for_each_projective(field, n, bound, |v| {
            if form.pair(v, v).is_zero() {
                found = Some(v.to_vec());
                true
            } else {
                false
            }
        });
        return Ok(found);
    }
    let per_coord = if field.has_nontrivial_involution() {
        2
    } else {
        1
    };
    let digits = n * per_coord;
    let mut tried = 0u64;
    for height in 1i64.. {
        let mut tuple = vec![-height; digits];
        loop {
            if tuple.iter().any(|x| x.abs() == height) {
                if tried >= bound {
                    return Ok(None);
                }
                tried += 1;
                let v: Vec<FieldElement> = tuple
                    .chunks(per_coord)
                    .map(|c| {
                        let a = BigRational::from_integer(c[0].into());
                        let b = BigRational::from_integer(c.get(1).copied().unwrap_or(0).into());
                        field.from_rational_pair(&a, &b).expect("integers")
                    })
                    .collect();
                if form.pair(&v, &v).is_zero() {
                    return Ok(Some(v));
                }
            }
            // odometer over [-height, height]^digits
            let mut i = 0;
            while i < digits && tuple[i] == height {
                tuple[i] = -height;
                i += 1;
            }
            if i == digits {
                break;
            }
            tuple[i] += 1;
        }
    }
    unreachable!()
}

/// Calls `visit` on projective representatives of `F_q^n` (first nonzero
/// coordinate equal to 1) until it returns true or `limit` vectors were seen.
/// Returns the number of vectors visited.
fn for_each_projective<F>(field: FieldSpec, n: usize, limit: u64, mut visit: F) -> u64
where
    F: FnMut(&[FieldElement]) -> bool,
{
    let q = field.order().expect("finite field");
    let mut seen = 0;
    for lead in 0..n {
        let tail = n - lead - 1;
        let mut idx = vec![0u64; tail];
        let mut v = vec![field.zero(); n];
        v[lead] = field.one();
        loop {
            if seen >= limit {
                return seen;
            }
            seen += 1;
            if visit(&v) {
                return seen;
            }
            let mut i = 0;
            while i < tail && idx[i] == q - 1 {
                idx[i] = 0;
                v[lead + 1 + i] = field.zero();
                i += 1;
            }
            if i == tail {
                break;
            }
            idx[i] += 1;
            v[lead + 1 + i] = field.element_at(idx[i]);
        }
    }
    seen
}

/// A homogeneous polynomial with nonzero coefficients and distinct exponent
/// vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousPoly {
    field: FieldSpec,
    n_vars: usize,
    degree: u32,
    monomials: Vec<(FieldElement, Vec<u32>)>,
}

impl HomogeneousPoly {
    /// Combines repeated exponent vectors and drops zero coefficients.
    pub fn new(
        field: FieldSpec,
        n_vars: usize,
        degree: u32,
        terms: Vec<(FieldElement, Vec<u32>)>,
    ) -> Result<Self, IsotropyError> {
        let mut merged: BTreeMap<Vec<u32>, FieldElement> = BTreeMap::new();
        for (coeff, exps) in terms {
            coeff.ensure_in(field)?;
            if exps.len() != n_vars {
                return Err(IsotropyError::InvalidPolynomial(format!(
                    "monomial has {} exponents, expected {n_vars}",
                    exps.len()
                )));
            }
            let total: u32 = exps.iter().sum();
            if total != degree {
                return Err(IsotropyError::InvalidPolynomial(format!(
                    "monomial of degree {total} in a polynomial of degree {degree}"
                )));
            }
            let slot = merged.entry(exps).or_insert_with(|| field.zero());
            *slot = &*slot + &coeff;
        }
        // lexicographically descending, so x1^d comes first
        let monomials = merged
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (c, e))
            .collect();
        Ok(HomogeneousPoly {
            field,
            n_vars,
            degree,
            monomials,
        })
    }

    /// `sum c_i x_i^2`.
    pub fn diagonal_quadric(
        field: FieldSpec,
        coeffs: &[FieldElement],
    ) -> Result<Self, IsotropyError> {
        let n = coeffs.len();
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut e = vec![0; n];
                e[i] = 2;
                (c.clone(), e)
            })
            .collect();
        HomogeneousPoly::new(field, n, 2, terms)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn monomials(&self) -> &[(FieldElement, Vec<u32>)] {
        &self.monomials
    }

    pub fn evaluate(&self, v: &[FieldElement]) -> Result<FieldElement, IsotropyError> {
        if v.len() != self.n_vars {
            return Err(IsotropyError::InvalidPolynomial(format!(
                "point has {} coordinates, expected {}",
                v.len(),
                self.n_vars
            )));
        }
        for x in v {
            x.ensure_in(self.field)?;
        }
        Ok(self.eval_unchecked(v))
    }

    fn eval_unchecked(&self, v: &[FieldElement]) -> FieldElement {
        self.monomials
            .iter()
            .fold(self.field.zero(), |acc, (c, e)| {
                let term = e
                    .iter()
                    .zip(v)
                    .filter(|(k, _)| **k > 0)
                    .fold(c.clone(), |t, (k, x)| &t * &x.pow(*k as u64));
                &acc + &term
            })
    }
}

/// Exhaustive search for a nontrivial zero of `f` over a finite field.
///
/// Fails with [`IsotropyError::SearchSpaceTooLarge`] when `q^n > bound`.
/// When `degree < n_vars` a zero always exists over a finite field.
pub fn cw_solve(f: &HomogeneousPoly, bound: u64) -> Result<Vec<FieldElement>, IsotropyError> {
    let field = f.field;
    let q = field.order().ok_or(IsotropyError::UnsupportedField {
        field,
        reason: "exhaustive search needs a finite field",
    })?;
    let size = q.checked_pow(f.n_vars as u32);
    if size.is_none_or(|s| s > bound) {
        return Err(IsotropyError::SearchSpaceTooLarge {
            size: format!("{q}^{}", f.n_vars),
            bound,
        });
    }
    let mut found = None;
    for_each_projective(field, f.n_vars, u64::MAX, |v| {
        if f.eval_unchecked(v).is_zero() {
            found = Some(v.to_vec());
            true
        } else {
            false
        }
    });
    found.ok_or(IsotropyError::NoSolutionFound)
}

impl fmt::Display for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .monomials
            .iter()
            .map(|(c, e)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| **k > 0)
                    .map(|(i, k)| {
                        if *k == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{k}", i + 1)
                        }
                    })
                    .collect();
                format!("({c})*{}", vars.join("*"))
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}
