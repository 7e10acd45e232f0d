//! Subgroups of `PO_f(K)`: elements, generator sets, the inbreeding
//! generator assembly and the certificates built on top of them.

mod certify;
mod element;
mod generators;
mod trace;

pub use certify::{
    certify_matrices, certify_quasi_arithmetic, gps_incompatibility, integral_coordinates,
    integrality_report, ring_of_integers_basis, FailingGenerator, GpsReport, GpsVerdict,
    IntegralityReport, QACertificate,
};
pub use element::{orthogonality_defect, GroupElement};
pub use generators::{assemble_inbred_generators, Generator, GeneratorSet, MAX_SIDE_REFLECTIONS};
pub use trace::{trace_field_probe, TraceProbe, TraceVerdict, DEFAULT_WORD_CAP};
