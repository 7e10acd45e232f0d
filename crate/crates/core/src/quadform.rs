//! Nonsingular quadratic forms over `K` as exact Gram matrices.
//!
//! Signatures come from an exact congruence diagonalization `P^T F P = D`
//! computed once at construction. Because `P` has entries in `K`, the
//! signs of the diagonal at each real embedding give the signature there.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::numberfield::{Embedding, FieldDescriptor, QuadFieldElem};
use crate::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub positives: usize,
    pub negatives: usize,
    pub zeros: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.positives + self.negatives + self.zeros
    }

    /// Signature `(n, 1)`.
    pub fn is_lorentzian(&self) -> bool {
        self.zeros == 0 && self.negatives == 1 && self.positives >= 1
    }

    pub fn is_positive_definite(&self) -> bool {
        self.zeros == 0 && self.negatives == 0
    }

    /// Signature of the negated form.
    pub fn swapped(&self) -> Signature {
        Signature {
            positives: self.negatives,
            negatives: self.positives,
            zeros: self.zeros,
        }
    }
}

/// Result of a symmetric congruence reduction: `basis^T * A * basis` is
/// diagonal with entries `pivots`.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub pivots: Vec<QuadFieldElem>,
    pub basis: Matrix,
}

impl Diagonalization {
    pub fn signature_at(&self, e: Embedding) -> Signature {
        let mut sig = Signature {
            positives: 0,
            negatives: 0,
            zeros: 0,
        };
        for p in &self.pivots {
            match p.sign_at(e) {
                Ordering::Greater => sig.positives += 1,
                Ordering::Less => sig.negatives += 1,
                Ordering::Equal => sig.zeros += 1,
            }
        }
        sig
    }
}

/// Applies `E^T A E` with `E = I + factor * e_source e_target^T`, i.e. adds
/// `factor` times row/column `source` to row/column `target`, and records
/// the column operation in `basis`.
fn add_multiple(
    a: &mut Matrix,
    basis: &mut Matrix,
    target: usize,
    source: usize,
    factor: &QuadFieldElem,
) {
    let n = a.rows();
    for j in 0..n {
        let v = a.get(target, j) + &(factor * a.get(source, j));
        a.set(target, j, v);
    }
    for i in 0..n {
        let v = a.get(i, target) + &(factor * a.get(i, source));
        a.set(i, target, v);
    }
    for i in 0..n {
        let v = basis.get(i, target) + &(factor * basis.get(i, source));
        basis.set(i, target, v);
    }
}

fn swap_index(a: &mut Matrix, basis: &mut Matrix, i: usize, j: usize) {
    a.swap_rows(i, j);
    a.swap_cols(i, j);
    basis.swap_cols(i, j);
}

/// Exact congruence diagonalization of a symmetric matrix with symmetric
/// pivoting. When every remaining diagonal entry vanishes but some
/// off-diagonal `a_ij` does not, adding row/column `j` to `i` produces the
/// pivot `2 a_ij`. A trailing zero block contributes zero pivots.
pub fn diagonalize(gram: &Matrix) -> Diagonalization {
    let n = gram.rows();
    let field = gram.field();
    let mut a = gram.clone();
    let mut basis = Matrix::identity(field, n);
    let one = field.one();
    let mut pivots = Vec::with_capacity(n);

    for k in 0..n {
        if let Some(p) = (k..n).find(|&i| !a.get(i, i).is_zero()) {
            swap_index(&mut a, &mut basis, k, p);
        } else if let Some((i, j)) = (k..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a.get(i, j).is_zero())
        {
            add_multiple(&mut a, &mut basis, i, j, &one);
            swap_index(&mut a, &mut basis, k, i);
        } else {
            pivots.extend((k..n).map(|_| field.zero()));
            break;
        }
        let pivot = a.get(k, k).clone();
        let pivot_inv = pivot.inv().expect("pivot is nonzero");
        for r in k + 1..n {
            if a.get(r, k).is_zero() {
                continue;
            }
            let factor = -(a.get(r, k) * &pivot_inv);
            add_multiple(&mut a, &mut basis, r, k, &factor);
        }
        pivots.push(pivot);
    }
    Diagonalization { pivots, basis }
}

/// A nonsingular quadratic form on `K^(n+1)`, `n >= 2`.
#[derive(Clone, Debug)]
pub struct QuadraticForm {
    gram: Matrix,
    diagonal: Diagonalization,
    gram_inverse: Matrix,
    timelike: Option<Vec<QuadFieldElem>>,
}

impl PartialEq for QuadraticForm {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}

impl Eq for QuadraticForm {}

impl core::hash::Hash for QuadraticForm {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.gram.hash(state);
    }
}

impl QuadraticForm {
    /// Validates shape, symmetry and nonsingularity of `gram`.
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if gram.rows() < 3 {
            return Err(Error::DimTooSmall { dim: gram.rows() });
        }
        if let Some((row, col)) = gram.first_asymmetry() {
            return Err(Error::NotSymmetric { row, col });
        }
        let diagonal = diagonalize(&gram);
        if diagonal.pivots.iter().any(QuadFieldElem::is_zero) {
            return Err(Error::SingularForm);
        }
        let gram_inverse = gram.inverse().ok_or(Error::SingularForm)?;
        let timelike = if diagonal.signature_at(Embedding::Identity).is_lorentzian() {
            diagonal
                .pivots
                .iter()
                .position(|p| p.is_negative_at(Embedding::Identity))
                .map(|j| diagonal.basis.column(j))
        } else {
            None
        };
        Ok(QuadraticForm {
            gram,
            diagonal,
            gram_inverse,
            timelike,
        })
    }

    pub fn from_diagonal(field: FieldDescriptor, coeffs: &[QuadFieldElem]) -> Result<Self> {
        if coeffs.len() < 3 {
            return Err(Error::DimTooSmall { dim: coeffs.len() });
        }
        if let Some(index) = coeffs.iter().position(QuadFieldElem::is_zero) {
            return Err(Error::ZeroCoefficient { index });
        }
        Self::new(Matrix::diagonal(field, coeffs)?)
    }

    /// The standard Lorentzian form `-x_0^2 + x_1^2 + ... + x_n^2`.
    pub fn standard(field: FieldDescriptor, n: usize) -> Result<Self> {
        let coeffs: Vec<_> = (0..=n)
            .map(|i| {
                if i == 0 {
                    field.from_int(-1)
                } else {
                    field.one()
                }
            })
            .collect();
        Self::from_diagonal(field, &coeffs)
    }

    pub fn field(&self) -> FieldDescriptor {
        self.gram.field()
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &Matrix {
        &self.gram_inverse
    }

    pub fn diagonalization(&self) -> &Diagonalization {
        &self.diagonal
    }

    /// A vector with `f(t) < 0` at the identity embedding, present when the
    /// form has signature `(n, 1)` there.
    pub fn timelike_vector(&self) -> Option<&[QuadFieldElem]> {
        self.timelike.as_deref()
    }

    fn check_vector(&self, x: &[QuadFieldElem]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        if let Some(bad) = x.iter().find(|v| v.field() != self.field()) {
            return Err(Error::FieldMismatch {
                left: self.field(),
                right: bad.field(),
            });
        }
        Ok(())
    }

    /// Bilinear form `x^T G y`.
    pub fn inner(&self, x: &[QuadFieldElem], y: &[QuadFieldElem]) -> Result<QuadFieldElem> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        let gy = self.gram.mul_vec(y)?;
        Ok(x.iter()
            .zip(&gy)
            .fold(self.field().zero(), |acc, (a, b)| acc + a * b))
    }

    /// `f(x) = x^T G x`.
    pub fn evaluate(&self, x: &[QuadFieldElem]) -> Result<QuadFieldElem> {
        self.inner(x, x)
    }

    /// The form with every coefficient replaced by its Galois conjugate.
    pub fn conjugate_form(&self) -> Result<QuadraticForm> {
        if !self.field().is_quadratic() {
            return Err(Error::NoConjugateForQ);
        }
        QuadraticForm::new(self.gram.conjugate())
    }

    pub fn signature_at(&self, e: Embedding) -> Signature {
        self.diagonal.signature_at(e)
    }

    pub fn is_admissible_pair(&self) -> AdmissibilityCertificate {
        let mut profile = BTreeMap::new();
        let mut failing = None;
        for &e in self.field().embeddings() {
            let sig = self.signature_at(e);
            let ok = match e {
                Embedding::Identity => sig.is_lorentzian(),
                Embedding::Conjugate => sig.is_positive_definite(),
            };
            if !ok && failing.is_none() {
                failing = Some(e);
            }
            profile.insert(e, sig);
        }
        AdmissibilityCertificate {
            verdict: if failing.is_none() {
                Verdict::Certified
            } else {
                Verdict::Refuted
            },
            signature_profile: profile,
            failing_embedding: failing,
        }
    }

    pub fn determinant(&self) -> QuadFieldElem {
        self.gram.det().expect("gram matrix is square")
    }

    pub fn discriminant_class(&self) -> SquareClass {
        SquareClass::new(self.determinant()).expect("nonsingular form")
    }

    /// The form `lambda * f`.
    pub fn scaled(&self, lambda: &QuadFieldElem) -> Result<QuadraticForm> {
        if lambda.field() != self.field() {
            return Err(Error::FieldMismatch {
                left: self.field(),
                right: lambda.field(),
            });
        }
        QuadraticForm::new(self.gram.scale(lambda))
    }

    /// The congruent form with Gram matrix `P^T G P`.
    pub fn transformed(&self, p: &Matrix) -> Result<QuadraticForm> {
        let g = p.transpose().checked_mul(&self.gram)?.checked_mul(p)?;
        QuadraticForm::new(g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityCertificate {
    pub verdict: Verdict,
    pub signature_profile: BTreeMap<Embedding, Signature>,
    /// First embedding whose signature is wrong, identity checked first.
    pub failing_embedding: Option<Embedding>,
}

/// A class in `K* / (K*)^2`.
#[derive(Clone, Debug)]
pub struct SquareClass {
    representative: QuadFieldElem,
}

impl SquareClass {
    /// `None` for zero.
    pub fn new(representative: QuadFieldElem) -> Option<Self> {
        if representative.is_zero() {
            None
        } else {
            Some(SquareClass { representative })
        }
    }

    pub fn representative(&self) -> &QuadFieldElem {
        &self.representative
    }

    /// True when the ratio of representatives is a square in `K`.
    pub fn is_same_class(&self, other: &SquareClass) -> Result<bool> {
        let ratio = self.representative.checked_div(&other.representative)?;
        Ok(ratio.is_square().is_some())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimilarityVerdict {
    NonSimilar,
    Inconclusive,
}

impl SimilarityVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            SimilarityVerdict::NonSimilar => "NON_SIMILAR",
            SimilarityVerdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// The obstruction that fired.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimilarityWitness {
    Dimension {
        first: usize,
        second: usize,
    },
    /// No multiplier sign at `embedding` maps one signature onto the other.
    Signature {
        embedding: Embedding,
        first: Signature,
        second: Signature,
    },
    /// In even dimension `det f2 / det f1` must be a square; it is not.
    Discriminant {
        ratio: QuadFieldElem,
    },
}

impl SimilarityWitness {
    pub fn kind(&self) -> &'static str {
        match self {
            SimilarityWitness::Dimension { .. } => "DIMENSION",
            SimilarityWitness::Signature { .. } => "SIGNATURE",
            SimilarityWitness::Discriminant { .. } => "DISCRIMINANT",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityCertificate {
    pub verdict: SimilarityVerdict,
    pub witness: Option<SimilarityWitness>,
    /// Admissible multiplier signs `(+1 / -1)` at each embedding.
    pub multiplier_signs: BTreeMap<Embedding, Vec<i8>>,
    /// In odd dimension the square class of any multiplier, `det f2 / det f1`.
    pub multiplier_class: Option<QuadFieldElem>,
}

/// Sound but incomplete test for `f2 ~ lambda f1`. Never claims similarity:
/// the verdict is `NonSimilar` with a witness, or `Inconclusive`.
pub fn similarity_obstruction(
    f1: &QuadraticForm,
    f2: &QuadraticForm,
) -> Result<SimilarityCertificate> {
    if f1.field() != f2.field() {
        return Err(Error::FieldMismatch {
            left: f1.field(),
            right: f2.field(),
        });
    }
    let mut cert = SimilarityCertificate {
        verdict: SimilarityVerdict::NonSimilar,
        witness: None,
        multiplier_signs: BTreeMap::new(),
        multiplier_class: None,
    };
    if f1.dim() != f2.dim() {
        cert.witness = Some(SimilarityWitness::Dimension {
            first: f1.dim(),
            second: f2.dim(),
        });
        return Ok(cert);
    }

    // A positive multiplier at e keeps the signature, a negative one swaps it.
    for &e in f1.field().embeddings() {
        let (s1, s2) = (f1.signature_at(e), f2.signature_at(e));
        let signs: Vec<i8> = [(1i8, s1), (-1i8, s1.swapped())]
            .into_iter()
            .filter(|(_, s)| *s == s2)
            .map(|(eps, _)| eps)
            .collect();
        if signs.is_empty() {
            cert.witness = Some(SimilarityWitness::Signature {
                embedding: e,
                first: s1,
                second: s2,
            });
            return Ok(cert);
        }
        cert.multiplier_signs.insert(e, signs);
    }

    // det(lambda f1) = lambda^dim det(f1)
    let ratio = f2.determinant().checked_div(&f1.determinant())?;
    if f1.dim().is_multiple_of(2) {
        if ratio.is_square().is_none() {
            cert.witness = Some(SimilarityWitness::Discriminant { ratio });
            return Ok(cert);
        }
    } else {
        cert.multiplier_class = Some(ratio);
    }

    cert.verdict = SimilarityVerdict::Inconclusive;
    Ok(cert)
}
