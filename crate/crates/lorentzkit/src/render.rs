//! JSON renderings of library values. Objects are `serde_json::Map`, which
//! keeps keys sorted, so rendering is deterministic.

use std::collections::BTreeMap;

use lorentzkit_core::lattice::{IntegralityReport, QACertificate};
use lorentzkit_core::{
    AdmissibilityCertificate, CertifiedDistance, Embedding, FieldDescriptor, GeneratorSet,
    GpsReport, Interval, Matrix, QuadFieldElem, QuadraticForm, Signature, SimilarityCertificate,
    SimilarityWitness, TraceProbe,
};
use serde_json::{json, Map, Value};

/// Significant digits printed for an enclosure computed at `bits` of
/// precision: the digits it resolves less a margin of 8, so 30 at 128 bits.
pub fn decimal_digits(bits: u32) -> usize {
    let resolved = bits as usize * 30103 / 100_000;
    resolved.saturating_sub(8).max(6)
}

pub fn elem(x: &QuadFieldElem) -> Value {
    Value::String(x.to_string())
}

pub fn vector(xs: &[QuadFieldElem]) -> Value {
    Value::Array(xs.iter().map(elem).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.row(i))).collect())
}

pub fn field(f: FieldDescriptor) -> Value {
    json!({ "d": f.d() })
}

pub fn form(f: &QuadraticForm) -> Value {
    json!({
        "dim": f.dim(),
        "field": field(f.field()),
        "gram": matrix(f.gram()),
    })
}

pub fn signature(s: &Signature) -> Value {
    json!({
        "negatives": s.negatives,
        "positives": s.positives,
        "zeros": s.zeros,
    })
}

pub fn by_embedding<T>(map: &BTreeMap<Embedding, T>, f: impl Fn(&T) -> Value) -> Value {
    Value::Object(
        map.iter()
            .map(|(e, v)| (e.as_str().to_string(), f(v)))
            .collect::<Map<_, _>>(),
    )
}

pub fn interval(iv: &Interval, digits: usize) -> Value {
    let (lo, hi) = iv.to_decimal(digits);
    json!({ "lo": lo, "hi": hi })
}

pub fn distance(d: &CertifiedDistance) -> Value {
    json!({
        "cosh_sq": elem(&d.cosh_sq),
        "distance": interval(&d.distance, decimal_digits(d.precision_bits)),
        "precision_bits": d.precision_bits,
    })
}

pub fn admissibility(c: &AdmissibilityCertificate) -> Value {
    json!({
        "failing_embedding": c.failing_embedding.map(|e| e.as_str()),
        "signature_profile": by_embedding(&c.signature_profile, signature),
        "verdict": c.verdict.as_str(),
    })
}

fn witness(w: &SimilarityWitness) -> Value {
    let mut out = match w {
        SimilarityWitness::Dimension { first, second } => json!({
            "first": first,
            "second": second,
        }),
        SimilarityWitness::Signature {
            embedding,
            first,
            second,
        } => json!({
            "embedding": embedding.as_str(),
            "first": signature(first),
            "second": signature(second),
        }),
        SimilarityWitness::Discriminant { ratio } => json!({ "ratio": elem(ratio) }),
    };
    out["kind"] = Value::from(w.kind());
    out
}

pub fn similarity(c: &SimilarityCertificate) -> Value {
    json!({
        "multiplier_class": c.multiplier_class.as_ref().map(elem),
        "multiplier_signs": by_embedding(&c.multiplier_signs, |s| json!(s)),
        "verdict": c.verdict.as_str(),
        "witness": c.witness.as_ref().map(witness),
    })
}

pub fn gps(r: &GpsReport) -> Value {
    json!({
        "similarity": similarity(&r.similarity),
        "statement": r.statement,
        "verdict": r.verdict.as_str(),
    })
}

pub fn quasi_arithmetic(c: &QACertificate) -> Value {
    json!({
        "admissibility": admissibility(&c.admissibility),
        "failing_generator": c.failing_generator.as_ref().map(|g| json!({
            "entry": g.entry.map(|(i, j)| json!([i, j])),
            "label": g.label,
        })),
        "verdict": c.verdict.as_str(),
    })
}

pub fn integrality(r: &IntegralityReport) -> Value {
    json!({
        "common_denominator": r.common_denominator.to_string(),
        "is_integral": r.is_integral,
        "ring_basis": r.ring_basis,
    })
}

pub fn trace_probe(p: &TraceProbe, max_word_length: usize) -> Value {
    json!({
        "max_word_length": max_word_length,
        "traces": vector(&p.traces),
        "verdict": p.verdict.as_str(),
        "witness_word": p.witness_word,
        "words_enumerated": p.words_enumerated,
    })
}

/// A generator set in its input schema, so it can be fed back in.
pub fn generator_set(gens: &GeneratorSet) -> Value {
    json!({
        "form": form(gens.form()),
        "generators": gens.iter().map(|g| json!({
            "label": g.label,
            "matrix": matrix(g.element.matrix()),
        })).collect::<Vec<_>>(),
    })
}
