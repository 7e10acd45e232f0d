//! Projective Lorentz model over a form of signature `(n, 1)`.
//!
//! Points are `K`-rational vectors with `f(x) < 0` up to scale, hyperplanes
//! are orthogonal complements of vectors with `f(v) > 0`. Distances are
//! reported as an exact `cosh^2` together with a certified enclosure.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::interval::{arccosh_sqrt_enclosure, Interval};
use crate::lattice::GroupElement;
use crate::matrix::Matrix;
use crate::numberfield::{Embedding, QuadFieldElem, Rational};
use crate::quadform::QuadraticForm;

fn ensure_lorentzian(form: &QuadraticForm) -> Result<()> {
    if form.timelike_vector().is_some() {
        Ok(())
    } else {
        Err(Error::NotLorentzian)
    }
}

fn same_form(a: &Arc<QuadraticForm>, b: &Arc<QuadraticForm>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::FormMismatch)
    }
}

/// Bilinear form `x^T G y` of `form`.
pub fn lorentz_inner(
    form: &QuadraticForm,
    x: &[QuadFieldElem],
    y: &[QuadFieldElem],
) -> Result<QuadFieldElem> {
    form.inner(x, y)
}

/// A point of hyperbolic space, represented by any `x` with `f(x) < 0`.
#[derive(Clone, Debug)]
pub struct ModelPoint {
    coords: Vec<QuadFieldElem>,
    form: Arc<QuadraticForm>,
    norm: QuadFieldElem,
}

impl ModelPoint {
    pub fn new(form: Arc<QuadraticForm>, coords: Vec<QuadFieldElem>) -> Result<Self> {
        ensure_lorentzian(&form)?;
        let norm = form.evaluate(&coords)?;
        if !norm.is_negative_at(Embedding::Identity) {
            return Err(Error::PointNotInModel);
        }
        Ok(ModelPoint { coords, form, norm })
    }

    pub fn coords(&self) -> &[QuadFieldElem] {
        &self.coords
    }

    pub fn form(&self) -> &Arc<QuadraticForm> {
        &self.form
    }
}

/// The hyperplane `<v>^perp` for a normal with `f(v) > 0`.
#[derive(Clone, Debug)]
pub struct Hyperplane {
    normal: Vec<QuadFieldElem>,
    form: Arc<QuadraticForm>,
    norm: QuadFieldElem,
}

impl Hyperplane {
    pub fn new(form: Arc<QuadraticForm>, normal: Vec<QuadFieldElem>) -> Result<Self> {
        ensure_lorentzian(&form)?;
        let norm = form.evaluate(&normal)?;
        if !norm.is_positive_at(Embedding::Identity) {
            return Err(Error::NotSpacelike);
        }
        Ok(Hyperplane { normal, form, norm })
    }

    pub fn normal(&self) -> &[QuadFieldElem] {
        &self.normal
    }

    pub fn form(&self) -> &Arc<QuadraticForm> {
        &self.form
    }

    /// `f(v)`.
    pub fn normal_norm(&self) -> &QuadFieldElem {
        &self.norm
    }

    /// Reflection `x -> x - 2 (x, v) / f(v) * v`, as the matrix
    /// `Id - 2 v (v^T G) / f(v)`. It is an involution of determinant `-1`
    /// fixing the hyperplane pointwise.
    pub fn reflection(&self) -> GroupElement {
        let field = self.form.field();
        let n = self.form.dim();
        let gv = self
            .form
            .gram()
            .mul_vec(&self.normal)
            .expect("normal has the form's dimension");
        let coeff = field.from_int(-2) * self.norm.inv().expect("f(v) > 0");
        let mut m = Matrix::identity(field, n);
        for i in 0..n {
            let vi = &self.normal[i] * &coeff;
            for (j, gvj) in gv.iter().enumerate() {
                let entry = m.get(i, j) + &(&vi * gvj);
                m.set(i, j, entry);
            }
        }
        GroupElement::from_trusted(self.form.clone(), m)
    }
}

/// Relative position of two hyperplanes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HyperplanePair {
    Intersecting,
    /// Asymptotic: they meet only at the ideal boundary.
    Tangent,
    /// Disjoint with a common perpendicular.
    Ultraparallel,
}

impl HyperplanePair {
    pub fn as_str(self) -> &'static str {
        match self {
            HyperplanePair::Intersecting => "INTERSECTING",
            HyperplanePair::Tangent => "TANGENT",
            HyperplanePair::Ultraparallel => "ULTRAPARALLEL",
        }
    }
}

/// `(v0, v1)^2 - f(v0) f(v1)`; its sign classifies the pair.
pub fn pair_discriminant(h0: &Hyperplane, h1: &Hyperplane) -> Result<QuadFieldElem> {
    same_form(&h0.form, &h1.form)?;
    let ip = h0.form.inner(&h0.normal, &h1.normal)?;
    Ok(ip.square() - &h0.norm * &h1.norm)
}

pub fn classify_hyperplane_pair(h0: &Hyperplane, h1: &Hyperplane) -> Result<HyperplanePair> {
    Ok(
        match pair_discriminant(h0, h1)?.sign_at(Embedding::Identity) {
            Ordering::Less => HyperplanePair::Intersecting,
            Ordering::Equal => HyperplanePair::Tangent,
            Ordering::Greater => HyperplanePair::Ultraparallel,
        },
    )
}

/// Exact `cosh^2` of a distance plus a certified enclosure of the distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedDistance {
    pub cosh_sq: QuadFieldElem,
    pub distance: Interval,
    pub precision_bits: u32,
}

impl CertifiedDistance {
    fn from_cosh_sq(cosh_sq: QuadFieldElem, precision_bits: u32) -> Result<Self> {
        if precision_bits < 8 {
            return Err(Error::InvalidPrecision {
                bits: precision_bits,
            });
        }
        let distance = arccosh_sqrt_enclosure(&cosh_sq, precision_bits);
        Ok(CertifiedDistance {
            cosh_sq,
            distance,
            precision_bits,
        })
    }

    /// Twice the distance: the length bound for the closed geodesic that
    /// doubles the common perpendicular.
    pub fn doubled(&self) -> Interval {
        self.distance.scale(&Rational::from_integer(2.into()))
    }
}

/// `cosh^2 d(x, y) = (x, y)^2 / (f(x) f(y))`.
pub fn point_distance(
    x: &ModelPoint,
    y: &ModelPoint,
    precision_bits: u32,
) -> Result<CertifiedDistance> {
    same_form(&x.form, &y.form)?;
    let ip = x.form.inner(&x.coords, &y.coords)?;
    let cosh_sq = ip.square().checked_div(&(&x.norm * &y.norm))?;
    CertifiedDistance::from_cosh_sq(cosh_sq, precision_bits)
}

/// Length of the common perpendicular of two ultraparallel hyperplanes,
/// `cosh^2 = (v0, v1)^2 / (f(v0) f(v1))`.
pub fn hyperplane_distance(
    h0: &Hyperplane,
    h1: &Hyperplane,
    precision_bits: u32,
) -> Result<CertifiedDistance> {
    if classify_hyperplane_pair(h0, h1)? != HyperplanePair::Ultraparallel {
        return Err(Error::NotUltraparallel);
    }
    let ip = h0.form.inner(&h0.normal, &h1.normal)?;
    let cosh_sq = ip.square().checked_div(&(&h0.norm * &h1.norm))?;
    CertifiedDistance::from_cosh_sq(cosh_sq, precision_bits)
}

/// Reflection in `h`.
pub fn reflection_matrix(h: &Hyperplane) -> GroupElement {
    h.reflection()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::FieldDescriptor;
    use alloc::vec;

    fn f2() -> Arc<QuadraticForm> {
        Arc::new(QuadraticForm::standard(FieldDescriptor::RATIONALS, 2).unwrap())
    }

    fn v(xs: &[&str]) -> Vec<QuadFieldElem> {
        xs.iter()
            .map(|s| QuadFieldElem::parse_in(FieldDescriptor::RATIONALS, s).unwrap())
            .collect()
    }

    fn rat(n: i64, d: i64) -> QuadFieldElem {
        QuadFieldElem::from_rational(
            FieldDescriptor::RATIONALS,
            Rational::new(n.into(), d.into()),
        )
    }

    fn plane(xs: &[&str]) -> Hyperplane {
        Hyperplane::new(f2(), v(xs)).unwrap()
    }

    #[test]
    fn inner_product_examples() {
        let f = f2();
        assert!(
            lorentz_inner(&f, &v(&["1", "0", "0"]), &v(&["0", "1", "0"]))
                .unwrap()
                .is_zero()
        );
        assert_eq!(
            lorentz_inner(&f, &v(&["1", "0", "0"]), &v(&["1", "0", "0"])).unwrap(),
            rat(-1, 1)
        );
        assert_eq!(
            lorentz_inner(&f, &v(&["1", "0", "0"]), &v(&["5/4", "3/4", "0"])).unwrap(),
            rat(-5, 4)
        );
    }

    #[test]
    fn point_distance_examples() {
        let f = f2();
        let x = ModelPoint::new(f.clone(), v(&["1", "0", "0"])).unwrap();
        let y = ModelPoint::new(f.clone(), v(&["5/4", "3/4", "0"])).unwrap();
        let d = point_distance(&x, &y, 128).unwrap();
        assert_eq!(d.cosh_sq, rat(25, 16));
        assert_eq!(point_distance(&y, &x, 128).unwrap(), d);
        let same = point_distance(&x, &x, 64).unwrap();
        assert_eq!(same.cosh_sq, rat(1, 1));
        assert!(same.distance.contains_zero());
        // projective: scaling a representative changes nothing
        let y2 = ModelPoint::new(f, v(&["5", "3", "0"])).unwrap();
        assert_eq!(point_distance(&x, &y2, 128).unwrap(), d);
    }

    #[test]
    fn point_outside_model_rejected() {
        assert_eq!(
            ModelPoint::new(f2(), v(&["0", "1", "0"])).unwrap_err(),
            Error::PointNotInModel
        );
        assert_eq!(
            ModelPoint::new(f2(), v(&["1", "1", "0"])).unwrap_err(),
            Error::PointNotInModel
        );
    }

    #[test]
    fn hyperplane_requires_spacelike_normal() {
        assert_eq!(
            Hyperplane::new(f2(), v(&["1", "0", "0"])).unwrap_err(),
            Error::NotSpacelike
        );
        assert_eq!(
            Hyperplane::new(f2(), v(&["0", "0", "0"])).unwrap_err(),
            Error::NotSpacelike
        );
        let q = FieldDescriptor::RATIONALS;
        let definite =
            Arc::new(QuadraticForm::from_diagonal(q, &[q.one(), q.one(), q.one()]).unwrap());
        assert_eq!(
            Hyperplane::new(definite, v(&["1", "0", "0"])).unwrap_err(),
            Error::NotLorentzian
        );
    }

    #[test]
    fn classification_examples() {
        let h0 = plane(&["0", "1", "0"]);
        assert_eq!(
            classify_hyperplane_pair(&h0, &plane(&["0", "0", "1"])).unwrap(),
            HyperplanePair::Intersecting
        );
        assert_eq!(
            classify_hyperplane_pair(&h0, &plane(&["1", "2", "0"])).unwrap(),
            HyperplanePair::Ultraparallel
        );
        assert_eq!(
            classify_hyperplane_pair(&h0, &plane(&["1", "1", "1"])).unwrap(),
            HyperplanePair::Tangent
        );
        assert_eq!(
            pair_discriminant(&h0, &plane(&["1", "2", "0"])).unwrap(),
            rat(1, 1)
        );
    }

    #[test]
    fn form_mismatch_detected() {
        let q = FieldDescriptor::RATIONALS;
        let other =
            Arc::new(QuadraticForm::from_diagonal(q, &[q.from_int(-2), q.one(), q.one()]).unwrap());
        let h0 = plane(&["0", "1", "0"]);
        let h1 = Hyperplane::new(other, v(&["0", "0", "1"])).unwrap();
        assert_eq!(classify_hyperplane_pair(&h0, &h1), Err(Error::FormMismatch));
    }

    #[test]
    fn hyperplane_distance_examples() {
        let h0 = plane(&["0", "1", "0"]);
        let h1 = plane(&["1", "2", "0"]);
        let d = hyperplane_distance(&h0, &h1, 128).unwrap();
        assert_eq!(d.cosh_sq, rat(4, 3));
        let scaled = plane(&["-3/7", "-6/7", "0"]);
        assert_eq!(
            hyperplane_distance(&h0, &scaled, 128).unwrap().cosh_sq,
            rat(4, 3)
        );
        assert_eq!(
            hyperplane_distance(&h0, &plane(&["1", "1", "1"]), 128),
            Err(Error::NotUltraparallel)
        );
        assert_eq!(
            hyperplane_distance(&h0, &plane(&["0", "0", "1"]), 128),
            Err(Error::NotUltraparallel)
        );
        assert_eq!(
            hyperplane_distance(&h0, &h1, 4),
            Err(Error::InvalidPrecision { bits: 4 })
        );
    }

    #[test]
    fn reflection_examples() {
        let f = FieldDescriptor::RATIONALS;
        let r = plane(&["0", "1", "0"]).reflection();
        let expected = Matrix::diagonal(f, &[f.one(), f.from_int(-1), f.one()]).unwrap();
        assert_eq!(r.matrix(), &expected);

        let r = plane(&["0", "1", "1"]).reflection();
        let expected = Matrix::from_rows(
            f,
            vec![
                v(&["1", "0", "0"]),
                v(&["0", "0", "-1"]),
                v(&["0", "-1", "0"]),
            ],
        )
        .unwrap();
        assert_eq!(r.matrix(), &expected);
        assert_eq!(r.det(), f.from_int(-1));
    }

    #[test]
    fn reflection_negates_normal() {
        let h = plane(&["1/2", "2", "-1/3"]);
        let r = h.reflection();
        let image = r.matrix().mul_vec(h.normal()).unwrap();
        let negated: Vec<_> = h.normal().iter().map(|x| -x).collect();
        assert_eq!(image, negated);
    }
}
