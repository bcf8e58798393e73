//! Finite matrix groups acting on `k^n`.
//!
//! Averaging over the group gives invariant Hermitian forms and equivariant
//! projectors. The projector route splits every invariant subspace off with an
//! invariant complement whenever `|G|` is invertible in `k`; the
//! orthogonal-complement route does not, because an averaged form can have an
//! isotropic line `W` with `W ⊆ W^⊥`. [`counterexample_report`] exhibits both
//! facts side by side.

use std::collections::{HashSet, VecDeque};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldSpec};
use crate::forms::{FormError, HermitianForm};
use crate::isotropy::{isotropic_any, IsotropyError, IsotropyOutcome, IsotropyWitness};
use crate::linalg::{dim_mismatch, LinalgError, Matrix, Subspace};

/// Default cap on the number of group elements produced by closure.
pub const DEFAULT_GROUP_CAP: usize = 10_000;
/// Default number of probes per subspace in [`decompose`].
pub const DEFAULT_PROBES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MaschkeError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Isotropy(#[from] IsotropyError),
    #[error("generator {0} is singular")]
    SingularGenerator(usize),
    #[error("group closure exceeded {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("characteristic {characteristic} divides the group order {order}")]
    CharacteristicDividesOrder { characteristic: u64, order: usize },
    #[error("subspace is not invariant under the group")]
    NotInvariant,
    #[error("averaged form has no isotropic vector{0}")]
    NoIsotropicVector(&'static str),
}

impl From<FieldError> for MaschkeError {
    fn from(e: FieldError) -> Self {
        MaschkeError::Linalg(e.into())
    }
}

impl MaschkeError {
    pub fn name(&self) -> &'static str {
        match self {
            MaschkeError::Linalg(_) => "LinalgError",
            MaschkeError::Form(_) => "FormError",
            MaschkeError::Isotropy(e) => e.name(),
            MaschkeError::SingularGenerator(_) => "SingularGenerator",
            MaschkeError::GroupTooLarge { .. } => "GroupTooLarge",
            MaschkeError::CharacteristicDividesOrder { .. } => "CharacteristicDividesOrder",
            MaschkeError::NotInvariant => "NotInvariant",
            MaschkeError::NoIsotropicVector(_) => "NoIsotropicVector",
        }
    }
}

/// A finite matrix group given by generators, with its full element list.
#[derive(Clone, Debug)]
pub struct Representation {
    field: FieldSpec,
    dim: usize,
    generators: Vec<Matrix>,
    elements: Vec<Matrix>,
    inverses: Vec<Matrix>,
}

impl Representation {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    /// Group elements in breadth-first discovery order, identity first.
    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Whether `|G|` is invertible in the field.
    pub fn order_is_invertible(&self) -> bool {
        let p = self.field.characteristic();
        p == 0 || !(self.order() as u64).is_multiple_of(p)
    }

    fn check_maschke(&self) -> Result<(), MaschkeError> {
        if self.order_is_invertible() {
            Ok(())
        } else {
            Err(MaschkeError::CharacteristicDividesOrder {
                characteristic: self.field.characteristic(),
                order: self.order(),
            })
        }
    }

    fn check_subspace(&self, w: &Subspace) -> Result<(), MaschkeError> {
        Ok(w.check_compatible(self.field, self.dim)?)
    }

    /// `sum_g g A g^-1`, which commutes with every group element.
    pub fn average_conjugate(&self, a: &Matrix) -> Result<Matrix, MaschkeError> {
        let mut acc = Matrix::zeros(self.field, self.dim, self.dim);
        for (g, g_inv) in self.elements.iter().zip(&self.inverses) {
            acc = acc.add(&g.mul(a)?.mul(g_inv)?)?;
        }
        Ok(acc)
    }

    fn order_inverse(&self) -> FieldElement {
        self.field
            .from_i64(self.order() as i64)
            .inv()
            .expect("checked by check_maschke")
    }
}

/// Breadth-first closure of `generators` under multiplication.
pub fn close_group(
    field: FieldSpec,
    dim: usize,
    generators: Vec<Matrix>,
    cap: usize,
) -> Result<Representation, MaschkeError> {
    for (i, g) in generators.iter().enumerate() {
        if g.field() != field {
            return Err(FieldError::FieldMismatch {
                expected: field,
                found: g.field(),
            }
            .into());
        }
        if g.rows() != dim || g.cols() != dim {
            return Err(dim_mismatch(
                format!("{dim}x{dim} generator"),
                format!("{}x{}", g.rows(), g.cols()),
            )
            .into());
        }
        if g.determinant()?.is_zero() {
            return Err(MaschkeError::SingularGenerator(i));
        }
    }
    let identity = Matrix::identity(field, dim);
    let mut elements = vec![identity.clone()];
    let mut seen: HashSet<Matrix> = HashSet::from([identity]);
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(idx) = queue.pop_front() {
        for g in &generators {
            let next = elements[idx].mul(g)?;
            if seen.contains(&next) {
                continue;
            }
            if elements.len() >= cap {
                return Err(MaschkeError::GroupTooLarge { cap });
            }
            seen.insert(next.clone());
            elements.push(next);
            queue.push_back(elements.len() - 1);
        }
    }
    let inverses = elements
        .iter()
        .map(|g| g.inverse())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Representation {
        field,
        dim,
        generators,
        elements,
        inverses,
    })
}

/// `sum_g g^T H conj(g)`, invariant under every group element.
///
/// Nothing forces the result to be nondegenerate or anisotropic.
pub fn average_form(
    rep: &Representation,
    seed: &HermitianForm,
) -> Result<HermitianForm, MaschkeError> {
    if seed.field() != rep.field {
        return Err(FieldError::FieldMismatch {
            expected: rep.field,
            found: seed.field(),
        }
        .into());
    }
    if seed.dim() != rep.dim {
        return Err(dim_mismatch(rep.dim, seed.dim()).into());
    }
    let mut acc = Matrix::zeros(rep.field, rep.dim, rep.dim);
    for g in &rep.elements {
        acc = acc.add(&seed.congruent_gram(g)?)?;
    }
    let averaged = HermitianForm::new(acc)?;
    debug_assert!(is_invariant_form(rep, &averaged).unwrap_or(false));
    Ok(averaged)
}

/// Whether `g^T H conj(g) = H` for every generator.
pub fn is_invariant_form(rep: &Representation, form: &HermitianForm) -> Result<bool, MaschkeError> {
    for g in &rep.generators {
        if form.congruent_gram(g)? != *form.gram() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `g w ∈ W` for every generator `g` and basis vector `w`.
pub fn is_invariant_subspace(rep: &Representation, w: &Subspace) -> Result<bool, MaschkeError> {
    rep.check_subspace(w)?;
    for g in &rep.generators {
        let image = g.mul(w.basis())?;
        if !w.contains_subspace(&Subspace::column_space(&image))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An equivariant projector onto `W` and its kernel.
#[derive(Clone, Debug)]
pub struct EquivariantSplit {
    pub projector: Matrix,
    pub complement: Subspace,
}

/// Averages a coordinate projector onto `W` over the group.
///
/// `W`'s basis is extended by standard vectors to a basis `P` of `k^n`; the
/// starting projector keeps the first `dim W` coordinates in that basis. The
/// average `|G|^-1 sum_g g pi_0 g^-1` is idempotent, commutes with `G`, and
/// still has image `W`, so its kernel is an invariant complement.
pub fn equivariant_projector(
    rep: &Representation,
    w: &Subspace,
) -> Result<EquivariantSplit, MaschkeError> {
    rep.check_maschke()?;
    if !is_invariant_subspace(rep, w)? {
        return Err(MaschkeError::NotInvariant);
    }
    let k = rep.field;
    let n = rep.dim;
    let p = w.extend_to_full_basis();
    let keep: Vec<FieldElement> = (0..n)
        .map(|i| if i < w.dim() { k.one() } else { k.zero() })
        .collect();
    let pi0 = p.mul(&Matrix::diagonal(k, &keep))?.mul(&p.inverse()?)?;
    let projector = rep.average_conjugate(&pi0)?.scale(&rep.order_inverse());
    let complement = Subspace::from_kernel(&projector);
    Ok(EquivariantSplit {
        projector,
        complement,
    })
}

/// Splits `k^n` into invariant summands.
///
/// For each summand `S` the search tries, in order: orbit spans and orbit
/// sums of the basis vectors of `S`; then, with random vectors and random
/// probe matrices `A`, orbit spans of random vectors in `S` and kernels and
/// images of `T - c` on `S`, where `T = pi_S (sum_g g A g^-1) pi_S` commutes
/// with `G`. Summands where `probes` random attempts find nothing are kept
/// whole, so irreducibility of the output is not certified.
pub fn decompose(
    rep: &Representation,
    probes: usize,
    seed: u64,
) -> Result<Vec<Subspace>, MaschkeError> {
    rep.check_maschke()?;
    let k = rep.field;
    let n = rep.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut work = vec![(Subspace::full(k, n), Matrix::identity(k, n))];
    let mut done = Vec::new();
    while let Some((s, pi_s)) = work.pop() {
        if s.dim() <= 1 {
            done.push(s);
            continue;
        }
        match find_invariant_subspace(rep, &s, &pi_s, probes, &mut rng)? {
            Some(u) => {
                // pi_U pi_S projects onto U and kills ker(pi_S); the
                // remainder pi_S - pi_U pi_S projects onto (1 - pi_U) S
                let pi_u = equivariant_projector(rep, &u)?.projector.mul(&pi_s)?;
                let pi_rest = pi_s.sub(&pi_u)?;
                let rest = Subspace::column_space(&pi_rest.mul(s.basis())?);
                debug_assert_eq!(u.dim() + rest.dim(), s.dim());
                work.push((rest, pi_rest));
                work.push((u, pi_u));
            }
            None => done.push(s),
        }
    }
    Ok(done)
}

fn is_proper(candidate: &Subspace, s: &Subspace) -> bool {
    candidate.dim() > 0 && candidate.dim() < s.dim()
}

fn accept(
    rep: &Representation,
    candidate: Subspace,
    s: &Subspace,
) -> Result<Option<Subspace>, MaschkeError> {
    if is_proper(&candidate, s) && is_invariant_subspace(rep, &candidate)? {
        Ok(Some(candidate))
    } else {
        Ok(None)
    }
}

fn orbit_span(rep: &Representation, v: &[FieldElement]) -> Result<Subspace, MaschkeError> {
    let images = rep
        .elements
        .iter()
        .map(|g| g.mul_vec(v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Subspace::span(rep.field, rep.dim, &images)?)
}

fn orbit_sum(rep: &Representation, v: &[FieldElement]) -> Result<Vec<FieldElement>, MaschkeError> {
    let mut acc = vec![rep.field.zero(); rep.dim];
    for g in &rep.elements {
        let gv = g.mul_vec(v)?;
        acc = acc.iter().zip(&gv).map(|(a, b)| a + b).collect();
    }
    Ok(acc)
}

fn find_invariant_subspace(
    rep: &Representation,
    s: &Subspace,
    pi_s: &Matrix,
    probes: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Option<Subspace>, MaschkeError> {
    let k = rep.field;
    for v in s.basis_vectors() {
        if let Some(u) = accept(rep, orbit_span(rep, &v)?, s)? {
            return Ok(Some(u));
        }
        let sum = orbit_sum(rep, &v)?;
        if let Some(u) = accept(rep, Subspace::span(k, rep.dim, &[sum])?, s)? {
            return Ok(Some(u));
        }
    }
    let height = 4;
    for _ in 0..probes {
        let coeffs: Vec<FieldElement> = (0..s.dim()).map(|_| k.sample(rng, height)).collect();
        let v = s.basis().mul_vec(&coeffs)?;
        if let Some(u) = accept(rep, orbit_span(rep, &v)?, s)? {
            return Ok(Some(u));
        }

        let mut a = Matrix::zeros(k, rep.dim, rep.dim);
        for i in 0..rep.dim {
            for j in 0..rep.dim {
                a[(i, j)] = k.sample(rng, height);
            }
        }
        let t = pi_s.mul(&rep.average_conjugate(&a)?)?.mul(pi_s)?;
        let ts = t.mul(s.basis())?;
        if let Some(u) = accept(rep, Subspace::column_space(&ts), s)? {
            return Ok(Some(u));
        }
        for c in eigenvalue_candidates(k, &ts, s, rng) {
            let shifted = ts.sub(&s.basis().scale(&c))?;
            let kernel = shifted.kernel();
            let candidate = Subspace::column_space(&s.basis().mul(&kernel)?);
            if let Some(u) = accept(rep, candidate, s)? {
                return Ok(Some(u));
            }
        }
    }
    Ok(None)
}

/// Scalars `c` to try in `ker(T - c)` on `S`: every element of a small finite
/// field, otherwise the diagonal of `T` in `S`-coordinates plus a few samples.
fn eigenvalue_candidates(
    k: FieldSpec,
    ts: &Matrix,
    s: &Subspace,
    rng: &mut ChaCha8Rng,
) -> Vec<FieldElement> {
    const ENUMERATION_LIMIT: u64 = 256;
    if let Some(q) = k.order().filter(|&q| q <= ENUMERATION_LIMIT) {
        return (0..q).map(|i| k.element_at(i)).collect();
    }
    let mut out: Vec<FieldElement> = Vec::new();
    if let Ok(coords) = solve_in_basis(s, ts) {
        for i in 0..s.dim() {
            out.push(coords[(i, i)].clone());
        }
    }
    out.extend((0..4).map(|_| k.sample(rng, 3)));
    out
}

/// `X` with `S X = M`, for `M` whose columns lie in `S`.
fn solve_in_basis(s: &Subspace, m: &Matrix) -> Result<Matrix, MaschkeError> {
    let aug = s.basis().hstack(m)?;
    let (r, _) = aug.rref();
    let d = s.dim();
    let mut x = Matrix::zeros(s.field(), d, m.cols());
    for i in 0..d {
        for j in 0..m.cols() {
            x[(i, j)] = r[(i, d + j)].clone();
        }
    }
    Ok(x)
}

/// The orthogonal-complement strategy failing next to the averaging one.
#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub field: FieldSpec,
    pub group_order: usize,
    /// The averaged, group-invariant form.
    pub form: HermitianForm,
    pub witness: IsotropyWitness,
    /// The line spanned by the witness.
    pub w_subspace: Subspace,
    pub w_perp: Subspace,
    /// `W ⊆ W^⊥`.
    pub contains: bool,
    /// Rank of the form restricted to `W`.
    pub restriction_rank: usize,
    /// Invariant complement of `W` from the averaged projector.
    pub maschke_complement: Subspace,
    pub projector: Matrix,
    /// `W + complement = k^n` and `W ∩ complement = 0`.
    pub direct_sum: bool,
}

/// Averages `seed`, finds an isotropic vector `v` of the result, and reports
/// on `W = span{v}`: its orthogonal complement contains it, while the
/// averaged projector still provides an invariant complement.
pub fn counterexample_report(
    rep: &Representation,
    seed: &HermitianForm,
    bound: u64,
) -> Result<CounterexampleReport, MaschkeError> {
    let form = average_form(rep, seed)?;
    let witness = match isotropic_any(&form, bound)? {
        IsotropyOutcome::Found(w) => w,
        IsotropyOutcome::NotFound { exhaustive: true } => {
            return Err(MaschkeError::NoIsotropicVector(
                " (the form is anisotropic)",
            ))
        }
        IsotropyOutcome::NotFound { exhaustive: false } => {
            return Err(MaschkeError::NoIsotropicVector(" within the search bound"))
        }
    };
    let w = Subspace::span(rep.field, rep.dim, &[witness.vector().to_vec()])?;
    let w_perp = form.orthogonal_complement(&w)?;
    let contains = w_perp.contains_subspace(&w)?;
    let restriction_rank = form.restrict(&w)?.gram().rank();
    let split = equivariant_projector(rep, &w)?;
    let direct_sum = w.is_complement_of(&split.complement)?;
    Ok(CounterexampleReport {
        field: rep.field,
        group_order: rep.order(),
        form,
        witness,
        w_subspace: w,
        w_perp,
        contains,
        restriction_rank,
        maschke_complement: split.complement,
        projector: split.projector,
        direct_sum,
    })
}

/// The regular representation of the cyclic group of order `n` (cyclic
/// shift of coordinates).
pub fn cyclic_regular(
    field: FieldSpec,
    n: usize,
    cap: usize,
) -> Result<Representation, MaschkeError> {
    let mut shift = Matrix::zeros(field, n, n);
    for i in 0..n {
        shift[((i + 1) % n, i)] = field.one();
    }
    close_group(field, n, vec![shift], cap)
}
