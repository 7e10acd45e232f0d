use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::quadform::QuadraticForm;

use super::GroupElement;

/// Side reflections `I_j` accepted by [`assemble_inbred_generators`]; the
/// glued building block has between two and four boundary walls.
pub const MAX_SIDE_REFLECTIONS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub element: GroupElement,
}

/// A nonempty labeled list of elements over one ambient form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    generators: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new(generators: Vec<Generator>) -> Result<Self> {
        let first = generators.first().ok_or(Error::EmptyGeneratorSet)?;
        let form = first.element.form().clone();
        if generators
            .iter()
            .any(|g| !Arc::ptr_eq(g.element.form(), &form) && **g.element.form() != *form)
        {
            return Err(Error::FormMismatch);
        }
        Ok(GeneratorSet { generators })
    }

    pub fn from_pairs<I, S>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, GroupElement)>,
        S: Into<String>,
    {
        Self::new(
            pairs
                .into_iter()
                .map(|(label, element)| Generator {
                    label: label.into(),
                    element,
                })
                .collect(),
        )
    }

    pub fn form(&self) -> &Arc<QuadraticForm> {
        self.generators[0].element.form()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Generator> {
        self.generators.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.generators.iter().map(|g| g.label.as_str())
    }

    pub fn elements(&self) -> impl Iterator<Item = &GroupElement> {
        self.generators.iter().map(|g| &g.element)
    }
}

impl<'a> IntoIterator for &'a GeneratorSet {
    type Item = &'a Generator;
    type IntoIter = core::slice::Iter<'a, Generator>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

/// Generators of the group obtained by doubling a piece along its boundary:
/// every `g` of `gamma1`, its conjugate `I_0^-1 g I_0`, and the gluing
/// maps `I_j^-1 I_0` for each side reflection.
pub fn assemble_inbred_generators(
    gamma1: &GeneratorSet,
    i0: &GroupElement,
    side_reflections: &[GroupElement],
) -> Result<GeneratorSet> {
    if side_reflections.len() > MAX_SIDE_REFLECTIONS {
        return Err(Error::TooManySideReflections {
            count: side_reflections.len(),
        });
    }
    let form = gamma1.form();
    let same = |g: &GroupElement| Arc::ptr_eq(g.form(), form) || **g.form() == **form;
    if !same(i0) || !side_reflections.iter().all(same) {
        return Err(Error::FormMismatch);
    }
    if !i0.is_reflection() {
        return Err(Error::NotAReflection {
            label: String::from("I0"),
        });
    }
    if let Some(j) = side_reflections.iter().position(|r| !r.is_reflection()) {
        return Err(Error::NotAReflection {
            label: format!("I{}", j + 1),
        });
    }

    let i0_inv = i0.inverse();
    let mut out = Vec::with_capacity(2 * gamma1.len() + side_reflections.len());
    out.extend(gamma1.iter().cloned());
    for g in gamma1 {
        out.push(Generator {
            label: format!("I0^-1*{}*I0", g.label),
            element: i0_inv.compose(&g.element)?.compose(i0)?,
        });
    }
    for (j, ij) in side_reflections.iter().enumerate() {
        out.push(Generator {
            label: format!("I{}^-1*I0", j + 1),
            element: ij.inverse().compose(i0)?,
        });
    }
    GeneratorSet::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::Hyperplane;
    use crate::numberfield::{FieldDescriptor, QuadFieldElem};
    use alloc::vec;

    fn setup() -> (Arc<QuadraticForm>, GroupElement, GroupElement, GroupElement) {
        let q = FieldDescriptor::RATIONALS;
        let f = Arc::new(QuadraticForm::standard(q, 2).unwrap());
        let v = |xs: [i64; 3]| {
            xs.iter()
                .map(|&x| q.from_int(x))
                .collect::<Vec<QuadFieldElem>>()
        };
        let r0 = Hyperplane::new(f.clone(), v([0, 1, 0]))
            .unwrap()
            .reflection();
        let r1 = Hyperplane::new(f.clone(), v([1, 2, 0]))
            .unwrap()
            .reflection();
        let r2 = Hyperplane::new(f.clone(), v([1, 0, 3]))
            .unwrap()
            .reflection();
        (f, r0, r1, r2)
    }

    #[test]
    fn conjugates_and_gluing_maps() {
        let (_, r0, r1, r2) = setup();
        let g = r1.compose(&r2).unwrap();
        let gamma1 = GeneratorSet::from_pairs([("g", g.clone())]).unwrap();
        let out = assemble_inbred_generators(&gamma1, &r0, &[]).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(
            out.iter().nth(1).unwrap().element,
            r0.compose(&g).unwrap().compose(&r0).unwrap()
        );
        let labels: Vec<_> = out.labels().collect();
        assert_eq!(labels, ["g", "I0^-1*g*I0"]);

        let out = assemble_inbred_generators(&gamma1, &r0, &[r1.clone(), r2.clone()]).unwrap();
        let labels: Vec<_> = out.labels().collect();
        assert_eq!(labels, ["g", "I0^-1*g*I0", "I1^-1*I0", "I2^-1*I0"]);
        for gen in out.iter().skip(2) {
            assert_eq!(gen.element.det(), FieldDescriptor::RATIONALS.one());
        }
    }

    #[test]
    fn rejects_non_reflections() {
        let (f, r0, r1, r2) = setup();
        let rot = r1.compose(&r2).unwrap();
        let gamma1 = GeneratorSet::from_pairs([("id", GroupElement::identity(f))]).unwrap();
        assert_eq!(
            assemble_inbred_generators(&gamma1, &rot, &[]),
            Err(Error::NotAReflection { label: "I0".into() })
        );
        assert_eq!(
            assemble_inbred_generators(&gamma1, &r0, &[r1.clone(), rot]),
            Err(Error::NotAReflection { label: "I2".into() })
        );
        assert_eq!(
            assemble_inbred_generators(&gamma1, &r0, &vec![r1; 4]),
            Err(Error::TooManySideReflections { count: 4 })
        );
    }

    #[test]
    fn rejects_foreign_forms() {
        let (_, r0, _, _) = setup();
        let q = FieldDescriptor::RATIONALS;
        let other =
            Arc::new(QuadraticForm::from_diagonal(q, &[q.from_int(-3), q.one(), q.one()]).unwrap());
        let gamma1 = GeneratorSet::from_pairs([("id", GroupElement::identity(other))]).unwrap();
        assert_eq!(
            assemble_inbred_generators(&gamma1, &r0, &[]),
            Err(Error::FormMismatch)
        );
    }

    #[test]
    fn empty_set_rejected() {
        assert_eq!(GeneratorSet::new(Vec::new()), Err(Error::EmptyGeneratorSet));
    }
}
