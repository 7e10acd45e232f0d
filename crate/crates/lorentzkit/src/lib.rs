//! JSON front end for `lorentzkit-core`.
//!
//! [`run`] takes a subcommand and the raw bytes of its JSON input and
//! returns an exit code together with the JSON document to print. The
//! binary is a thin wrapper around it.
//!
//! Exit codes: 0 certified or holds, 1 refuted or does not hold,
//! 2 inconclusive, 3 input or schema error.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use lorentzkit_core::lattice::{certify_matrices, DEFAULT_WORD_CAP};
use lorentzkit_core::lorentz::{
    classify_hyperplane_pair, hyperplane_distance, pair_discriminant, point_distance,
};
use lorentzkit_core::{
    assemble_inbred_generators, gps_incompatibility, integrality_report, trace_field_probe, Error,
    GpsVerdict, GroupElement, Hyperplane, ModelPoint, QuadraticForm, SimilarityVerdict,
    TraceVerdict, Verdict, DEFAULT_PRECISION_BITS,
};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub mod render;
pub mod schema;

pub use schema::CliError;
use schema::{
    parse_document, parse_embedding, parse_form, parse_generator_set, parse_raw_generators,
    parse_usize, parse_vector, require, Parsed,
};

pub const EXIT_CERTIFIED: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT_ERROR: i32 = 3;

/// Accepted range for `--precision-bits`.
pub const PRECISION_RANGE: std::ops::RangeInclusive<u32> = 8..=4096;

/// Default word length for `trace-probe` when the input does not set one.
pub const DEFAULT_MAX_WORD_LENGTH: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    CheckAdmissible,
    Signature,
    ConjugateForm,
    Evaluate,
    ClassifyPair,
    Distance,
    Reflect,
    Assemble,
    CertifyQa,
    Integrality,
    TraceProbe,
    Nonsimilar,
    GpsCheck,
}

impl Command {
    pub const ALL: [Command; 13] = [
        Command::CheckAdmissible,
        Command::Signature,
        Command::ConjugateForm,
        Command::Evaluate,
        Command::ClassifyPair,
        Command::Distance,
        Command::Reflect,
        Command::Assemble,
        Command::CertifyQa,
        Command::Integrality,
        Command::TraceProbe,
        Command::Nonsimilar,
        Command::GpsCheck,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::CheckAdmissible => "check-admissible",
            Command::Signature => "signature",
            Command::ConjugateForm => "conjugate-form",
            Command::Evaluate => "evaluate",
            Command::ClassifyPair => "classify-pair",
            Command::Distance => "distance",
            Command::Reflect => "reflect",
            Command::Assemble => "assemble",
            Command::CertifyQa => "certify-qa",
            Command::Integrality => "integrality",
            Command::TraceProbe => "trace-probe",
            Command::Nonsimilar => "nonsimilar",
            Command::GpsCheck => "gps-check",
        }
    }

    pub fn names() -> impl Iterator<Item = &'static str> {
        Command::ALL.iter().map(|c| c.as_str())
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| {
                CliError::new(
                    "UNKNOWN_SUBCOMMAND",
                    format!("unknown subcommand {s:?}"),
                    "subcommand",
                )
            })
    }
}

#[derive(Clone, Debug)]
pub struct Request {
    pub command: Command,
    pub input: Vec<u8>,
    pub precision_bits: u32,
    pub word_cap: usize,
}

impl Request {
    pub fn new(command: Command, input: impl Into<Vec<u8>>) -> Self {
        Request {
            command,
            input: input.into(),
            precision_bits: DEFAULT_PRECISION_BITS,
            word_cap: DEFAULT_WORD_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub document: Value,
}

impl Outcome {
    /// Pretty-printed document with a trailing newline.
    pub fn to_bytes(&self) -> Vec<u8> {
        render_document(&self.document)
    }
}

pub fn render_document(doc: &Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(doc).expect("values always serialize");
    out.push(b'\n');
    out
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn error_document(command: Option<Command>, input: &[u8], err: &CliError) -> Value {
    json!({
        "command": command.map(|c| c.as_str()),
        "error": {
            "code": err.code,
            "field": err.field,
            "message": err.message,
        },
        "input_sha256": sha256_hex(input),
    })
}

pub fn run(req: &Request) -> Outcome {
    let result = if PRECISION_RANGE.contains(&req.precision_bits) {
        parse_document(&req.input).and_then(|doc| dispatch(req, &doc))
    } else {
        Err(CliError::new(
            "INVALID_PRECISION",
            format!(
                "precision must lie in {}..={} bits, got {}",
                PRECISION_RANGE.start(),
                PRECISION_RANGE.end(),
                req.precision_bits
            ),
            "precision_bits",
        ))
    };
    match result {
        Ok((exit_code, body)) => {
            let mut doc = match body {
                Value::Object(map) => map,
                other => {
                    let mut m = Map::new();
                    m.insert("result".into(), other);
                    m
                }
            };
            doc.insert("command".into(), req.command.as_str().into());
            doc.insert("input_sha256".into(), sha256_hex(&req.input).into());
            Outcome {
                exit_code,
                document: Value::Object(doc),
            }
        }
        Err(err) => Outcome {
            exit_code: EXIT_INPUT_ERROR,
            document: error_document(Some(req.command), &req.input, &err),
        },
    }
}

type Answer = Parsed<(i32, Value)>;

fn verdict_exit(v: Verdict) -> i32 {
    match v {
        Verdict::Certified => EXIT_CERTIFIED,
        Verdict::Refuted => EXIT_REFUTED,
    }
}

fn dispatch(req: &Request, doc: &Value) -> Answer {
    match req.command {
        Command::CheckAdmissible => check_admissible(doc),
        Command::Signature => signature(doc),
        Command::ConjugateForm => conjugate_form(doc),
        Command::Evaluate => evaluate(doc),
        Command::ClassifyPair => classify_pair(doc),
        Command::Distance => distance(doc, req.precision_bits),
        Command::Reflect => reflect(doc),
        Command::Assemble => assemble(doc),
        Command::CertifyQa => certify_qa(doc),
        Command::Integrality => integrality(doc),
        Command::TraceProbe => trace_probe(doc, req.word_cap),
        Command::Nonsimilar => nonsimilar(doc),
        Command::GpsCheck => gps_check(doc),
    }
}

fn form_of(doc: &Value) -> Parsed<Arc<QuadraticForm>> {
    parse_form(require(doc, "form", "")?, "form")
}

fn vector_of(
    doc: &Value,
    form: &QuadraticForm,
    key: &str,
) -> Parsed<Vec<lorentzkit_core::QuadFieldElem>> {
    parse_vector(require(doc, key, "")?, form.field(), form.dim(), key)
}

fn hyperplane_of(doc: &Value, form: &Arc<QuadraticForm>, key: &str) -> Parsed<Hyperplane> {
    let v = vector_of(doc, form, key)?;
    Hyperplane::new(form.clone(), v).map_err(|e| CliError::core(&e, key))
}

fn point_of(doc: &Value, form: &Arc<QuadraticForm>, key: &str) -> Parsed<ModelPoint> {
    let v = vector_of(doc, form, key)?;
    ModelPoint::new(form.clone(), v).map_err(|e| CliError::core(&e, key))
}

fn check_admissible(doc: &Value) -> Answer {
    let cert = form_of(doc)?.is_admissible_pair();
    Ok((verdict_exit(cert.verdict), render::admissibility(&cert)))
}

fn signature(doc: &Value) -> Answer {
    let form = form_of(doc)?;
    let body = match doc.get("embedding") {
        Some(e) => {
            let e = parse_embedding(e, form.field(), "embedding")?;
            json!({
                "embedding": e.as_str(),
                "signature": render::signature(&form.signature_at(e)),
            })
        }
        None => {
            let profile = form
                .field()
                .embeddings()
                .iter()
                .map(|&e| (e, form.signature_at(e)))
                .collect();
            json!({ "signatures": render::by_embedding(&profile, render::signature) })
        }
    };
    Ok((EXIT_CERTIFIED, body))
}

fn conjugate_form(doc: &Value) -> Answer {
    let form = form_of(doc)?;
    let conj = form
        .conjugate_form()
        .map_err(|e| CliError::core(&e, "form.field"))?;
    Ok((EXIT_CERTIFIED, json!({ "form": render::form(&conj) })))
}

fn evaluate(doc: &Value) -> Answer {
    let form = form_of(doc)?;
    let v = vector_of(doc, &form, "vector")?;
    let value = form
        .evaluate(&v)
        .map_err(|e| CliError::core(&e, "vector"))?;
    let signs: Map<String, Value> = form
        .field()
        .embeddings()
        .iter()
        .map(|&e| (e.as_str().to_string(), Value::from(value.sign_at(e) as i8)))
        .collect();
    Ok((
        EXIT_CERTIFIED,
        json!({ "sign": signs, "value": render::elem(&value) }),
    ))
}

fn classify_pair(doc: &Value) -> Answer {
    let form = form_of(doc)?;
    let h0 = hyperplane_of(doc, &form, "v0")?;
    let h1 = hyperplane_of(doc, &form, "v1")?;
    let class = classify_hyperplane_pair(&h0, &h1).map_err(|e| CliError::core(&e, "v1"))?;
    let disc = pair_discriminant(&h0, &h1).map_err(|e| CliError::core(&e, "v1"))?;
    Ok((
        EXIT_CERTIFIED,
        json!({
            "classification": class.as_str(),
            "discriminant": render::elem(&disc),
        }),
    ))
}

fn distance(doc: &Value, bits: u32) -> Answer {
    let form = form_of(doc)?;
    if doc.get("x").is_some() || doc.get("y").is_some() {
        let x = point_of(doc, &form, "x")?;
        let y = point_of(doc, &form, "y")?;
        let d = point_distance(&x, &y, bits).map_err(|e| CliError::core(&e, "y"))?;
        return Ok((EXIT_CERTIFIED, render::distance(&d)));
    }
    let h0 = hyperplane_of(doc, &form, "v0")?;
    let h1 = hyperplane_of(doc, &form, "v1")?;
    let d = hyperplane_distance(&h0, &h1, bits).map_err(|e| CliError::core(&e, "v1"))?;
    let mut body = render::distance(&d);
    body["systole_bound"] = render::interval(&d.doubled(), render::decimal_digits(bits));
    Ok((EXIT_CERTIFIED, body))
}

fn reflect(doc: &Value) -> Answer {
    let form = form_of(doc)?;
    let h = hyperplane_of(doc, &form, "normal")?;
    let r = h.reflection();
    Ok((
        EXIT_CERTIFIED,
        json!({
            "det": render::elem(&r.det()),
            "matrix": render::matrix(r.matrix()),
            "normal_norm": render::elem(h.normal_norm()),
        }),
    ))
}

/// `{"normal": [...]}` (its reflection) or `{"matrix": [[...]]}`.
fn reflection_of(v: &Value, form: &Arc<QuadraticForm>, path: &str) -> Parsed<GroupElement> {
    if let Some(normal) = v.get("normal") {
        let npath = schema::join(path, "normal");
        let n = parse_vector(normal, form.field(), form.dim(), &npath)?;
        let h = Hyperplane::new(form.clone(), n).map_err(|e| CliError::core(&e, npath))?;
        return Ok(h.reflection());
    }
    let mpath = schema::join(path, "matrix");
    let m = schema::parse_matrix(require(v, "matrix", path)?, form.field(), &mpath)?;
    GroupElement::from_matrix(form.clone(), m).map_err(|e| CliError::core(&e, mpath))
}

fn assemble(doc: &Value) -> Answer {
    let form = form_of(doc)?;
    let raw = parse_raw_generators(require(doc, "gamma1", "")?, form.field(), "gamma1")?;
    let gamma1 = schema::to_generator_set(&form, raw, "gamma1")?;
    let i0 = reflection_of(require(doc, "i0", "")?, &form, "i0")?;
    let sides = match doc.get("side_reflections") {
        None => Vec::new(),
        Some(v) => {
            let items = v.as_array().ok_or_else(|| {
                CliError::new("TYPE_ERROR", "expected an array", "side_reflections")
            })?;
            items
                .iter()
                .enumerate()
                .map(|(j, s)| reflection_of(s, &form, &format!("side_reflections[{j}]")))
                .collect::<Parsed<Vec<_>>>()?
        }
    };
    let gens = assemble_inbred_generators(&gamma1, &i0, &sides).map_err(|e| {
        let field = match &e {
            Error::NotAReflection { label } if label == "I0" => "i0".to_string(),
            Error::NotAReflection { label } => {
                let j: usize = label[1..].parse().unwrap_or(1);
                format!("side_reflections[{}]", j - 1)
            }
            _ => "side_reflections".to_string(),
        };
        CliError::core(&e, field)
    })?;
    Ok((EXIT_CERTIFIED, render::generator_set(&gens)))
}

fn certify_qa(doc: &Value) -> Answer {
    let form = form_of(doc)?;
    let raw = parse_raw_generators(require(doc, "generators", "")?, form.field(), "generators")?;
    // Matrices are checked here rather than at parse time, so a generator
    // that does not preserve the form is a refutation, not a schema error.
    let cert = certify_matrices(&form, raw.iter().map(|g| (g.label.as_str(), &g.matrix)));
    Ok((verdict_exit(cert.verdict), render::quasi_arithmetic(&cert)))
}

fn integrality(doc: &Value) -> Answer {
    let report = integrality_report(&parse_generator_set(doc)?);
    let exit = if report.is_integral {
        EXIT_CERTIFIED
    } else {
        EXIT_REFUTED
    };
    Ok((exit, render::integrality(&report)))
}

fn trace_probe(doc: &Value, word_cap: usize) -> Answer {
    let gens = parse_generator_set(doc)?;
    let max_len = match doc.get("max_word_length") {
        Some(v) => parse_usize(v, "max_word_length")?,
        None => DEFAULT_MAX_WORD_LENGTH,
    };
    let probe = trace_field_probe(&gens, max_len, word_cap)
        .map_err(|e| CliError::core(&e, "max_word_length"))?;
    let exit = match probe.verdict {
        TraceVerdict::GeneratesK => EXIT_CERTIFIED,
        TraceVerdict::ProperSubfieldSoFar => EXIT_INCONCLUSIVE,
    };
    Ok((exit, render::trace_probe(&probe, max_len)))
}

fn form_pair(doc: &Value) -> Parsed<(Arc<QuadraticForm>, Arc<QuadraticForm>)> {
    let f1 = parse_form(require(doc, "f1", "")?, "f1")?;
    let f2 = parse_form(require(doc, "f2", "")?, "f2")?;
    if f1.field() != f2.field() {
        return Err(CliError::core(
            &Error::FieldMismatch {
                left: f1.field(),
                right: f2.field(),
            },
            "f2.field",
        ));
    }
    Ok((f1, f2))
}

fn nonsimilar(doc: &Value) -> Answer {
    let (f1, f2) = form_pair(doc)?;
    let cert = lorentzkit_core::quadform::similarity_obstruction(&f1, &f2)
        .map_err(|e| CliError::core(&e, "f2"))?;
    let exit = match cert.verdict {
        SimilarityVerdict::NonSimilar => EXIT_CERTIFIED,
        SimilarityVerdict::Inconclusive => EXIT_INCONCLUSIVE,
    };
    Ok((exit, render::similarity(&cert)))
}

fn gps_check(doc: &Value) -> Answer {
    let (f1, f2) = form_pair(doc)?;
    let report = gps_incompatibility(&f1, &f2).map_err(|e| CliError::core(&e, "f2"))?;
    let exit = match report.verdict {
        GpsVerdict::Incompatible => EXIT_CERTIFIED,
        GpsVerdict::Inconclusive => EXIT_INCONCLUSIVE,
    };
    Ok((exit, render::gps(&report)))
}

/// Parses `LORENTZKIT_WORD_CAP`; `None` means unset.
pub fn word_cap_from_env(value: Option<&str>) -> Result<usize, CliError> {
    match value {
        None => Ok(DEFAULT_WORD_CAP),
        Some(s) => s
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| {
                CliError::new(
                    "INVALID_WORD_CAP",
                    format!("expected a positive integer, got {s:?}"),
                    "LORENTZKIT_WORD_CAP",
                )
            }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_names_round_trip() {
        for c in Command::ALL {
            assert_eq!(c.as_str().parse::<Command>().unwrap(), c);
        }
        assert_eq!(
            "nope".parse::<Command>().unwrap_err().code,
            "UNKNOWN_SUBCOMMAND"
        );
    }

    #[test]
    fn word_cap_parsing() {
        assert_eq!(word_cap_from_env(None).unwrap(), DEFAULT_WORD_CAP);
        assert_eq!(word_cap_from_env(Some(" 250 ")).unwrap(), 250);
        assert!(word_cap_from_env(Some("0")).is_err());
        assert!(word_cap_from_env(Some("-3")).is_err());
    }

    #[test]
    fn default_precision_prints_thirty_digits() {
        assert_eq!(render::decimal_digits(DEFAULT_PRECISION_BITS), 30);
        assert!(render::decimal_digits(256) > 30);
        assert_eq!(render::decimal_digits(8), 6);
    }

    #[test]
    fn error_paths_name_the_offending_entry() {
        let run_err = |sub: Command, input: &str| {
            let out = run(&Request::new(sub, input.as_bytes()));
            assert_eq!(out.exit_code, EXIT_INPUT_ERROR);
            out.document["error"]["field"].as_str().unwrap().to_string()
        };
        assert_eq!(
            run_err(
                Command::Signature,
                r#"{"form":{"gram":[["1","0","0"],["0","1","5"],["0","0","-1"]]}}"#
            ),
            "form.gram[1][2]"
        );
        assert_eq!(
            run_err(
                Command::Evaluate,
                r#"{"form":{"diag":["-1","1","1"]},"vector":["1","x","0"]}"#
            ),
            "vector[1]"
        );
        assert_eq!(
            run_err(
                Command::Signature,
                r#"{"form":{"diag":["-1","1","1"]},"embedding":7}"#
            ),
            "embedding"
        );
        assert_eq!(run_err(Command::Signature, "[1, 2]"), "$");
        let precise = run(&Request {
            precision_bits: 5000,
            ..Request::new(Command::Signature, r#"{"form":{"diag":["-1","1","1"]}}"#)
        });
        assert_eq!(precise.document["error"]["field"], "precision_bits");
    }

    #[test]
    fn integer_entries_are_accepted() {
        let out = run(&Request::new(
            Command::CheckAdmissible,
            r#"{"form":{"field":{"d":null},"gram":[[-1,0,0],[0,1,0],[0,0,1]]}}"#,
        ));
        assert_eq!(out.exit_code, EXIT_CERTIFIED);
    }
}
