#![allow(dead_code)]

use std::sync::Arc;

use lorentzkit_core::{
    lorentz::Hyperplane, Embedding, FieldDescriptor, GroupElement, Matrix, QuadFieldElem,
    QuadraticForm, Rational,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q2() -> FieldDescriptor {
    FieldDescriptor::quadratic(2).unwrap()
}

pub fn rational(rng: &mut impl Rng, max_num: i64, max_den: i64) -> Rational {
    Rational::new(
        rng.gen_range(-max_num..=max_num).into(),
        rng.gen_range(1..=max_den).into(),
    )
}

pub fn element(
    rng: &mut impl Rng,
    field: FieldDescriptor,
    max_num: i64,
    max_den: i64,
) -> QuadFieldElem {
    let a = rational(rng, max_num, max_den);
    let b = if field.is_quadratic() {
        rational(rng, max_num, max_den)
    } else {
        Rational::from_integer(0.into())
    };
    QuadFieldElem::new(field, a, b).unwrap()
}

pub fn nonzero_element(rng: &mut impl Rng, field: FieldDescriptor) -> QuadFieldElem {
    loop {
        let x = element(rng, field, 9, 6);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn vector(rng: &mut impl Rng, field: FieldDescriptor, n: usize) -> Vec<QuadFieldElem> {
    (0..n).map(|_| element(rng, field, 5, 3)).collect()
}

pub fn invertible_matrix(rng: &mut impl Rng, field: FieldDescriptor, n: usize) -> Matrix {
    loop {
        let rows = (0..n).map(|_| vector(rng, field, n)).collect();
        let m = Matrix::from_rows(field, rows).unwrap();
        if !m.det().unwrap().is_zero() {
            return m;
        }
    }
}

pub fn admissible_form(field: FieldDescriptor, dim: usize) -> Arc<QuadraticForm> {
    let mut coeffs = vec![field.one(); dim];
    coeffs[0] = match field.sqrt_d() {
        Some(s) => -s,
        None => field.from_int(-1),
    };
    Arc::new(QuadraticForm::from_diagonal(field, &coeffs).unwrap())
}

/// Rejection sampling of a `K`-rational normal with `f(v) > 0`.
pub fn spacelike_vector(rng: &mut impl Rng, form: &QuadraticForm) -> Vec<QuadFieldElem> {
    loop {
        let v = vector(rng, form.field(), form.dim());
        if form
            .evaluate(&v)
            .unwrap()
            .is_positive_at(Embedding::Identity)
        {
            return v;
        }
    }
}

pub fn random_reflection(rng: &mut impl Rng, form: &Arc<QuadraticForm>) -> GroupElement {
    let v = spacelike_vector(rng, form);
    Hyperplane::new(form.clone(), v).unwrap().reflection()
}

/// Product of 1..=3 random reflections.
pub fn random_word(rng: &mut impl Rng, form: &Arc<QuadraticForm>) -> GroupElement {
    let len = rng.gen_range(1..=3);
    let mut g = random_reflection(rng, form);
    for _ in 1..len {
        g = g.compose(&random_reflection(rng, form)).unwrap();
    }
    g
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap()
}
