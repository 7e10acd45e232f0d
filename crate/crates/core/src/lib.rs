//! Exact arithmetic for hyperbolic lattices built from quadratic forms.
//!
//! Everything here works over `Q` or a real quadratic field `Q(sqrt d)`:
//! admissibility of field-form pairs, Lorentzian geometry with
//! `K`-rational hyperplanes, reflection matrices, generator assembly for
//! glued manifolds, quasi-arithmeticity certificates and similarity
//! obstructions between forms. Real numbers only ever appear as certified
//! rational enclosures.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod error;
pub mod interval;
pub mod lattice;
pub mod lorentz;
pub mod matrix;
pub mod numberfield;
pub mod quadform;

pub use error::{Error, Result};
pub use interval::Interval;
pub use lattice::{
    assemble_inbred_generators, certify_quasi_arithmetic, gps_incompatibility, integrality_report,
    trace_field_probe, GeneratorSet, GpsReport, GpsVerdict, GroupElement, IntegralityReport,
    QACertificate, TraceProbe, TraceVerdict,
};
pub use lorentz::{CertifiedDistance, Hyperplane, HyperplanePair, ModelPoint};
pub use matrix::Matrix;
pub use numberfield::{Embedding, FieldDescriptor, QuadFieldElem, Rational};
pub use quadform::{
    AdmissibilityCertificate, QuadraticForm, Signature, SimilarityCertificate, SimilarityVerdict,
    SimilarityWitness, SquareClass,
};

/// Two-valued verdict shared by the admissibility and quasi-arithmeticity
/// certificates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Certified,
    Refuted,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Certified => "CERTIFIED",
            Verdict::Refuted => "REFUTED",
        }
    }

    pub fn is_certified(self) -> bool {
        self == Verdict::Certified
    }
}

/// Default working precision (bits) for certified enclosures.
pub const DEFAULT_PRECISION_BITS: u32 = 128;
