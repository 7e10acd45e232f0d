use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::Result;
use crate::matrix::Matrix;
use crate::numberfield::{FieldDescriptor, QuadFieldElem, Rational};
use crate::quadform::{
    similarity_obstruction, AdmissibilityCertificate, QuadraticForm, SimilarityCertificate,
    SimilarityVerdict,
};
use crate::Verdict;

use super::{orthogonality_defect, GeneratorSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailingGenerator {
    pub label: String,
    /// First entry of `M^T F M - F` that is nonzero; `None` when the
    /// generator cannot be compared with `F` at all (wrong size or field).
    pub entry: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QACertificate {
    pub verdict: Verdict,
    pub admissibility: AdmissibilityCertificate,
    pub failing_generator: Option<FailingGenerator>,
}

/// Certifies that `gens` generate a subgroup of `PO_f(K)` for an admissible
/// pair `(K, f)`, which makes the generated group quasi-arithmetic (the
/// finite-index subgroup being the group itself).
///
/// `f` need not be the generators' own ambient form: every generator matrix
/// is checked against `f` directly.
pub fn certify_quasi_arithmetic(f: &QuadraticForm, gens: &GeneratorSet) -> QACertificate {
    certify_matrices(
        f,
        gens.iter().map(|g| (g.label.as_str(), g.element.matrix())),
    )
}

/// [`certify_quasi_arithmetic`] for labeled matrices that are not known to
/// preserve any form.
pub fn certify_matrices<'a, I>(f: &QuadraticForm, gens: I) -> QACertificate
where
    I: IntoIterator<Item = (&'a str, &'a Matrix)>,
{
    let admissibility = f.is_admissible_pair();
    if !admissibility.verdict.is_certified() {
        return QACertificate {
            verdict: Verdict::Refuted,
            admissibility,
            failing_generator: None,
        };
    }
    for (label, m) in gens {
        let entry = if !m.is_square() || m.rows() != f.dim() {
            Some(None)
        } else {
            match m.lift_to(f.field()) {
                None => Some(None),
                Some(m) => orthogonality_defect(f, &m).ok().and_then(|d| d.map(Some)),
            }
        };
        if let Some(entry) = entry {
            return QACertificate {
                verdict: Verdict::Refuted,
                admissibility,
                failing_generator: Some(FailingGenerator {
                    label: String::from(label),
                    entry,
                }),
            };
        }
    }
    QACertificate {
        verdict: Verdict::Certified,
        admissibility,
        failing_generator: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityReport {
    /// Least common denominator of all entries written in `ring_basis`.
    pub common_denominator: BigInt,
    pub is_integral: bool,
    pub ring_basis: String,
}

/// Integral basis of `O_K`, as text.
pub fn ring_of_integers_basis(field: FieldDescriptor) -> String {
    match field.d() {
        None => String::from("{1}"),
        Some(d) if d % 4 == 1 => format!("{{1, (1+sqrt({d}))/2}}"),
        Some(d) => format!("{{1, sqrt({d})}}"),
    }
}

/// Coordinates of `x` in the integral basis of `O_K`.
pub fn integral_coordinates(x: &QuadFieldElem) -> (Rational, Rational) {
    match x.field().d() {
        // a + b sqrt(d) = (a - b) + 2b * (1 + sqrt(d))/2
        Some(d) if d % 4 == 1 => (x.a() - x.b(), x.b() + x.b()),
        _ => (x.a().clone(), x.b().clone()),
    }
}

/// Descriptive report: `is_integral` means every generator lies in
/// `PO_f(O_K)`. A denominator does not by itself rule out arithmeticity.
pub fn integrality_report(gens: &GeneratorSet) -> IntegralityReport {
    let field = gens.form().field();
    let mut lcm = BigInt::one();
    for g in gens {
        for (_, _, x) in g.element.matrix().entries() {
            let (c0, c1) = integral_coordinates(x);
            lcm = lcm.lcm(c0.denom()).lcm(c1.denom());
        }
    }
    IntegralityReport {
        is_integral: lcm.is_one(),
        common_denominator: lcm,
        ring_basis: ring_of_integers_basis(field),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GpsVerdict {
    /// The forms are not similar, so no single admissible pair can contain
    /// conjugates of both arithmetic pieces.
    Incompatible,
    Inconclusive,
}

impl GpsVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            GpsVerdict::Incompatible => "GPS_INCOMPATIBLE",
            GpsVerdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GpsReport {
    pub verdict: GpsVerdict,
    pub similarity: SimilarityCertificate,
    pub statement: &'static str,
}

const INCOMPATIBLE_STATEMENT: &str = "f1 and f2 are not similar over K; a lattice glued from \
arithmetic pieces defined by f1 and f2 cannot lie in PO_f'(K) for any single admissible pair \
(K, f'), since that would force PO_f1(K) and PO_f2(K) to be K-isomorphic";

const INCONCLUSIVE_STATEMENT: &str = "no similarity obstruction found; the implemented necessary \
conditions (dimension, signatures, discriminant) are all compatible with f2 ~ lambda f1";

/// Non-quasi-arithmeticity test for a hybrid of two arithmetic pieces,
/// driven by [`similarity_obstruction`].
pub fn gps_incompatibility(f1: &QuadraticForm, f2: &QuadraticForm) -> Result<GpsReport> {
    let similarity = similarity_obstruction(f1, f2)?;
    let (verdict, statement) = match similarity.verdict {
        SimilarityVerdict::NonSimilar => (GpsVerdict::Incompatible, INCOMPATIBLE_STATEMENT),
        SimilarityVerdict::Inconclusive => (GpsVerdict::Inconclusive, INCONCLUSIVE_STATEMENT),
    };
    Ok(GpsReport {
        verdict,
        similarity,
        statement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::GroupElement;
    use crate::matrix::Matrix;
    use alloc::sync::Arc;
    use alloc::vec::Vec;

    fn elems(field: FieldDescriptor, xs: &[&str]) -> Vec<QuadFieldElem> {
        xs.iter()
            .map(|s| QuadFieldElem::parse_in(field, s).unwrap())
            .collect()
    }

    #[test]
    fn integrality_of_coordinate_reflection() {
        let q = FieldDescriptor::RATIONALS;
        let f = Arc::new(QuadraticForm::standard(q, 2).unwrap());
        let r = GroupElement::from_matrix(
            f,
            Matrix::diagonal(q, &elems(q, &["1", "-1", "1"])).unwrap(),
        )
        .unwrap();
        let report = integrality_report(&GeneratorSet::from_pairs([("r", r)]).unwrap());
        assert!(report.is_integral);
        assert_eq!(report.common_denominator, BigInt::one());
        assert_eq!(report.ring_basis, "{1}");
    }

    #[test]
    fn coordinates_in_ring_basis() {
        let q5 = FieldDescriptor::quadratic(5).unwrap();
        let golden = QuadFieldElem::parse_in(q5, "1/2+1/2*sqrt(5)").unwrap();
        let (c0, c1) = integral_coordinates(&golden);
        assert_eq!(
            (c0, c1),
            (Rational::from_integer(0.into()), Rational::one())
        );
        assert_eq!(ring_of_integers_basis(q5), "{1, (1+sqrt(5))/2}");

        let q2 = FieldDescriptor::quadratic(2).unwrap();
        let half = QuadFieldElem::parse_in(q2, "1/2+sqrt(2)").unwrap();
        let (c0, _) = integral_coordinates(&half);
        assert_eq!(c0.denom(), &BigInt::from(2));
        assert_eq!(ring_of_integers_basis(q2), "{1, sqrt(2)}");
        assert_eq!(
            ring_of_integers_basis(FieldDescriptor::quadratic(3).unwrap()),
            "{1, sqrt(3)}"
        );
    }

    #[test]
    fn golden_ratio_boost_is_integral() {
        // x^2 + y^2 - phi z^2 style check: a matrix with entries in O_K, d = 5
        let q5 = FieldDescriptor::quadratic(5).unwrap();
        let f = Arc::new(
            QuadraticForm::from_diagonal(q5, &elems(q5, &["-1/2-1/2*sqrt(5)", "1", "1"])).unwrap(),
        );
        let swap = Matrix::from_rows(
            q5,
            [["1", "0", "0"], ["0", "0", "1"], ["0", "1", "0"]]
                .iter()
                .map(|r| elems(q5, r))
                .collect(),
        )
        .unwrap();
        let g = GroupElement::from_matrix(f, swap).unwrap();
        let report = integrality_report(&GeneratorSet::from_pairs([("s", g)]).unwrap());
        assert!(report.is_integral);
    }

    #[test]
    fn gps_examples() {
        let q2 = FieldDescriptor::quadratic(2).unwrap();
        let f1 =
            QuadraticForm::from_diagonal(q2, &elems(q2, &["-sqrt(2)", "1", "1", "1"])).unwrap();
        let f2 =
            QuadraticForm::from_diagonal(q2, &elems(q2, &["-sqrt(2)", "1", "1", "3"])).unwrap();
        assert_eq!(
            gps_incompatibility(&f1, &f2).unwrap().verdict,
            GpsVerdict::Incompatible
        );
        let f3 = f1.scaled(&q2.from_int(3)).unwrap();
        assert_eq!(
            gps_incompatibility(&f1, &f3).unwrap().verdict,
            GpsVerdict::Inconclusive
        );
        let f5 = QuadraticForm::standard(q2, 4).unwrap();
        assert_eq!(
            gps_incompatibility(&f1, &f5).unwrap().verdict,
            GpsVerdict::Incompatible
        );
    }
}
