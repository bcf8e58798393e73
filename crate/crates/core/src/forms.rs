//! Hermitian forms given by Gram matrices.
//!
//! The pairing is linear in the first argument:
//! `(v, w) = sum_ij v_i * conj(w_j) * H[i][j]`, so `(v, c*w) = conj(c) (v, w)`.
//! With the identity involution this is an ordinary symmetric bilinear form.

use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldSpec};
use crate::linalg::{dim_mismatch, is_zero_vector, LinalgError, Matrix, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("gram matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("gram matrix is not conjugate-symmetric at ({row}, {col})")]
    NotHermitian { row: usize, col: usize },
}

impl From<FieldError> for FormError {
    fn from(e: FieldError) -> Self {
        FormError::Linalg(e.into())
    }
}

/// A Hermitian form on `k^n`, stored as its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianForm {
    gram: Matrix,
}

impl HermitianForm {
    /// Checks `gram[j][i] == conj(gram[i][j])` for every entry.
    pub fn new(gram: Matrix) -> Result<Self, FormError> {
        if !gram.is_square() {
            return Err(FormError::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        for i in 0..gram.rows() {
            for j in i..gram.cols() {
                if gram[(j, i)] != gram[(i, j)].conj() {
                    return Err(FormError::NotHermitian { row: i, col: j });
                }
            }
        }
        Ok(HermitianForm { gram })
    }

    pub fn diagonal(field: FieldSpec, entries: &[FieldElement]) -> Result<Self, FormError> {
        for x in entries {
            x.ensure_in(field)?;
        }
        HermitianForm::new(Matrix::diagonal(field, entries))
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        HermitianForm {
            gram: Matrix::zeros(field, n, n),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.gram.field()
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn is_zero(&self) -> bool {
        self.gram.is_zero()
    }

    fn check_vector(&self, v: &[FieldElement]) -> Result<(), FormError> {
        if v.len() != self.dim() {
            return Err(dim_mismatch(self.dim(), v.len()).into());
        }
        for x in v {
            x.ensure_in(self.field())?;
        }
        Ok(())
    }

    /// `(v, w)`.
    pub fn evaluate(
        &self,
        v: &[FieldElement],
        w: &[FieldElement],
    ) -> Result<FieldElement, FormError> {
        self.check_vector(v)?;
        self.check_vector(w)?;
        Ok(self.pair(v, w))
    }

    pub(crate) fn pair(&self, v: &[FieldElement], w: &[FieldElement]) -> FieldElement {
        let k = self.field();
        let w_bar: Vec<FieldElement> = w.iter().map(FieldElement::conj).collect();
        let mut acc = k.zero();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let row = self.gram.row(i);
            let inner = row
                .iter()
                .zip(&w_bar)
                .fold(k.zero(), |s, (h, wj)| &s + &(h * wj));
            acc = &acc + &(vi * &inner);
        }
        acc
    }

    pub fn is_isotropic(&self, v: &[FieldElement]) -> Result<bool, FormError> {
        Ok(self.evaluate(v, v)?.is_zero())
    }

    /// `{v : (v, w) = 0 for all w}`, the kernel of `H^T`.
    pub fn radical(&self) -> Subspace {
        Subspace::from_kernel(&self.gram.transpose())
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim()
    }

    /// `{v : (v, w_j) = 0}` for every basis vector `w_j` of `w`.
    pub fn orthogonal_complement(&self, w: &Subspace) -> Result<Subspace, FormError> {
        w.check_compatible(self.field(), self.dim())?;
        // row j of (H * conj(W))^T holds the coefficients of v -> (v, w_j)
        let constraints = self.gram.mul(&w.basis().conj())?.transpose();
        Ok(Subspace::from_kernel(&constraints))
    }

    /// Gram matrix of the form on `w` in the basis of `w`: `W^T H conj(W)`.
    pub fn restrict(&self, w: &Subspace) -> Result<HermitianForm, FormError> {
        w.check_compatible(self.field(), self.dim())?;
        Ok(HermitianForm {
            gram: self.congruent_gram(w.basis())?,
        })
    }

    /// `B^T H conj(B)`: entry `(a, b)` is `(col_a, col_b)`.
    pub fn congruent_gram(&self, b: &Matrix) -> Result<Matrix, FormError> {
        Ok(b.transpose().mul(&self.gram)?.mul(&b.conj())?)
    }

    /// A vector with nonzero self-pairing, or `None` for the zero form.
    ///
    /// If some diagonal entry is nonzero the first such `e_i` is returned.
    /// Otherwise take the first `a = H[i][j] != 0` with `i < j`; then
    /// `(e_i + t e_j, e_i + t e_j) = conj(t) a + t conj(a)`, which is nonzero for
    /// `t = 1` unless `a + conj(a) = 0`. In that case the involution is not the
    /// identity (odd characteristic) and `t` is the canonical element `g` with
    /// `g != conj(g)`, giving `a (conj(g) - g) != 0`.
    pub fn non_isotropic_vector(&self) -> Option<Vec<FieldElement>> {
        let k = self.field();
        let n = self.dim();
        let unit = |i: usize| {
            let mut v = vec![k.zero(); n];
            v[i] = k.one();
            v
        };
        if let Some(i) = (0..n).find(|&i| !self.gram[(i, i)].is_zero()) {
            return Some(unit(i));
        }
        let (i, j) = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !self.gram[(i, j)].is_zero())?;
        let a = &self.gram[(i, j)];
        let t = if !(a + &a.conj()).is_zero() {
            k.one()
        } else {
            k.involution_witness()
                .expect("a + conj(a) = 0 with a != 0 forces a nontrivial involution")
        };
        let mut v = unit(i);
        v[j] = t;
        debug_assert!(!self.pair(&v, &v).is_zero());
        Some(v)
    }

    /// Orthogonal basis by repeated splitting `V = <e> + <e>^perp`.
    ///
    /// Each step picks `e` with `(e, e) != 0` inside the current complement
    /// and replaces every spanning vector `v` by `v - ((v, e)/(e, e)) e`. When
    /// the form vanishes on what is left, the remaining basis is emitted with
    /// zero diagonal entries.
    pub fn diagonalize(&self) -> Diagonalization {
        let k = self.field();
        let n = self.dim();
        let mut found: Vec<Vec<FieldElement>> = Vec::with_capacity(n);
        let mut diagonal = Vec::with_capacity(n);
        let mut rest = Matrix::identity(k, n);

        while rest.cols() > 0 {
            let sub = HermitianForm {
                gram: self.congruent_gram(&rest).expect("shapes agree"),
            };
            let Some(coeffs) = sub.non_isotropic_vector() else {
                for col in rest.columns() {
                    found.push(col);
                    diagonal.push(k.zero());
                }
                break;
            };
            let e = rest.mul_vec(&coeffs).expect("shapes agree");
            let ee = self.pair(&e, &e);
            let ee_inv = ee.inv().expect("non-isotropic");
            let projected: Vec<Vec<FieldElement>> = rest
                .columns()
                .into_iter()
                .map(|v| {
                    let c = &self.pair(&v, &e) * &ee_inv;
                    v.iter().zip(&e).map(|(vi, ei)| vi - &(&c * ei)).collect()
                })
                .collect();
            let projected = Matrix::from_columns(k, n, &projected).expect("shapes agree");
            rest = Subspace::column_space(&projected).basis().clone();
            found.push(e);
            diagonal.push(ee);
        }

        Diagonalization {
            basis_change: Matrix::from_columns(k, n, &found).expect("shapes agree"),
            diagonal,
        }
    }
}

/// Result of [`HermitianForm::diagonalize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonalization {
    /// Columns are the new basis `e_1..e_n`.
    pub basis_change: Matrix,
    /// `(e_i, e_i)` in discovery order; each lies in the fixed field.
    pub diagonal: Vec<FieldElement>,
}

impl Diagonalization {
    /// Recomputes `B^T H conj(B)` and checks it against the stored diagonal,
    /// invertibility of `B` and fixedness of the entries.
    pub fn verify(&self, form: &HermitianForm) -> Result<bool, FormError> {
        let congruent = form.congruent_gram(&self.basis_change)?;
        let expected = Matrix::diagonal(form.field(), &self.diagonal);
        Ok(congruent == expected
            && !self.basis_change.determinant()?.is_zero()
            && self.diagonal.iter().all(FieldElement::is_fixed))
    }

    pub fn column(&self, i: usize) -> Vec<FieldElement> {
        self.basis_change.column(i)
    }
}

/// Whether `v` is nonzero and isotropic for `form`.
pub fn is_isotropic_witness(form: &HermitianForm, v: &[FieldElement]) -> Result<bool, FormError> {
    Ok(!is_zero_vector(v) && form.is_isotropic(v)?)
}
