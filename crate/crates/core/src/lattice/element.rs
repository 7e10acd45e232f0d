use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::numberfield::{Embedding, QuadFieldElem};
use crate::quadform::QuadraticForm;

/// An element of `PO_f(K) = O_f(K) / {+-1}`.
///
/// The stored matrix is a canonical representative: for a form of signature
/// `(n, 1)` it is the one preserving the time orientation (it maps the cone
/// of a fixed timelike vector to itself). Otherwise the first nonzero entry
/// in row-major order is made positive. Equality is structural on that
/// representative.
#[derive(Clone, Debug)]
pub struct GroupElement {
    matrix: Matrix,
    form: Arc<QuadraticForm>,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
            && (Arc::ptr_eq(&self.form, &other.form) || self.form == other.form)
    }
}

impl Eq for GroupElement {}

/// First entry `(row, col)` where `M^T G M` and `G` differ, or `None` when
/// `M` preserves the form.
pub fn orthogonality_defect(form: &QuadraticForm, m: &Matrix) -> Result<Option<(usize, usize)>> {
    let pulled_back = m.transpose().checked_mul(form.gram())?.checked_mul(m)?;
    let defect = pulled_back
        .entries()
        .find(|&(i, j, x)| x != form.gram().get(i, j))
        .map(|(i, j, _)| (i, j));
    Ok(defect)
}

fn normalize(form: &QuadraticForm, m: Matrix) -> Matrix {
    let flip = match form.timelike_vector() {
        Some(t) => {
            let image = m.mul_vec(t).expect("matrix matches the form");
            let ip = form.inner(t, &image).expect("vectors match the form");
            ip.sign_at(Embedding::Identity) == Ordering::Greater
        }
        None => m
            .entries()
            .find(|(_, _, x)| !x.is_zero())
            .is_some_and(|(_, _, x)| x.is_negative_at(Embedding::Identity)),
    };
    if flip {
        m.neg()
    } else {
        m
    }
}

impl GroupElement {
    /// Checks `M^T G M = G` exactly and normalizes the sign.
    pub fn from_matrix(form: Arc<QuadraticForm>, m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if m.rows() != form.dim() {
            return Err(Error::DimMismatch {
                expected: form.dim(),
                found: m.rows(),
            });
        }
        let m = m.lift_to(form.field()).ok_or(Error::FieldMismatch {
            left: form.field(),
            right: m.field(),
        })?;
        if let Some((row, col)) = orthogonality_defect(&form, &m)? {
            return Err(Error::NotFOrthogonal { row, col });
        }
        Ok(Self::from_trusted(form, m))
    }

    /// For matrices already known to preserve the form.
    pub(crate) fn from_trusted(form: Arc<QuadraticForm>, m: Matrix) -> Self {
        debug_assert_eq!(orthogonality_defect(&form, &m), Ok(None));
        let matrix = normalize(&form, m);
        GroupElement { matrix, form }
    }

    pub fn identity(form: Arc<QuadraticForm>) -> Self {
        let m = Matrix::identity(form.field(), form.dim());
        GroupElement { matrix: m, form }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn form(&self) -> &Arc<QuadraticForm> {
        &self.form
    }

    /// Determinant of the canonical representative, `+1` or `-1`.
    pub fn det(&self) -> QuadFieldElem {
        self.matrix.det().expect("square matrix")
    }

    /// Trace of the canonical representative; in `PO` only `+-trace` is
    /// meaningful.
    pub fn trace(&self) -> QuadFieldElem {
        self.matrix.trace()
    }

    fn check_form(&self, other: &GroupElement) -> Result<()> {
        if Arc::ptr_eq(&self.form, &other.form) || self.form == other.form {
            Ok(())
        } else {
            Err(Error::FormMismatch)
        }
    }

    /// The product `self * other`.
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check_form(other)?;
        let m = self.matrix.checked_mul(&other.matrix)?;
        Ok(Self::from_trusted(self.form.clone(), m))
    }

    /// `G^-1 M^T G`.
    pub fn inverse(&self) -> GroupElement {
        let m = &(self.form.gram_inverse() * &self.matrix.transpose()) * self.form.gram();
        Self::from_trusted(self.form.clone(), m)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// `M^2 = Id` for the canonical representative.
    pub fn is_involution(&self) -> bool {
        (&self.matrix * &self.matrix).is_identity()
    }

    /// Involution with determinant `-1`.
    pub fn is_reflection(&self) -> bool {
        self.is_involution() && self.det() == self.form.field().from_int(-1)
    }

    pub fn apply(&self, v: &[QuadFieldElem]) -> Result<Vec<QuadFieldElem>> {
        self.matrix.mul_vec(v)
    }
}
