//! JSON input schemas. Every parse error carries the path of the first
//! offending field, e.g. `form.gram[1][2]`.

use std::fmt;
use std::sync::Arc;

use lorentzkit_core::numberfield::LooseElem;
use lorentzkit_core::{
    Embedding, Error, FieldDescriptor, GeneratorSet, GroupElement, Matrix, QuadFieldElem,
    QuadraticForm,
};
use serde_json::Value;

/// A rejected input: upper-case `code`, human-readable `message` and the
/// JSON path of the offending `field`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: String,
    pub message: String,
    pub field: String,
}

impl CliError {
    pub fn new(code: &str, message: impl Into<String>, field: impl Into<String>) -> Self {
        CliError {
            code: code.to_string(),
            message: message.into(),
            field: field.into(),
        }
    }

    pub fn core(err: &Error, field: impl Into<String>) -> Self {
        CliError::new(err.code(), err.to_string(), field)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.code, self.field, self.message)
    }
}

impl std::error::Error for CliError {}

pub type Parsed<T> = Result<T, CliError>;

pub fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn index(path: &str, i: usize) -> String {
    format!("{path}[{i}]")
}

fn type_error(path: &str, expected: &str) -> CliError {
    CliError::new("TYPE_ERROR", format!("expected {expected}"), path)
}

pub fn parse_document(bytes: &[u8]) -> Parsed<Value> {
    let v: Value = serde_json::from_slice(bytes)
        .map_err(|e| CliError::new("INVALID_JSON", e.to_string(), "$"))?;
    if !v.is_object() {
        return Err(type_error("$", "a JSON object"));
    }
    Ok(v)
}

pub fn require<'a>(obj: &'a Value, key: &str, path: &str) -> Parsed<&'a Value> {
    obj.get(key).ok_or_else(|| {
        CliError::new(
            "MISSING_FIELD",
            format!("missing key \"{key}\""),
            join(path, key),
        )
    })
}

fn as_array<'a>(v: &'a Value, path: &str) -> Parsed<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| type_error(path, "an array"))
}

pub fn parse_str<'a>(v: &'a Value, path: &str) -> Parsed<&'a str> {
    v.as_str().ok_or_else(|| type_error(path, "a string"))
}

pub fn parse_usize(v: &Value, path: &str) -> Parsed<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| type_error(path, "a non-negative integer"))
}

/// `{"d": 2}`, `{"d": null}` or `null`.
pub fn parse_field(v: &Value, path: &str) -> Parsed<FieldDescriptor> {
    let d = match v {
        Value::Null => return Ok(FieldDescriptor::RATIONALS),
        Value::Object(_) => v.get("d").unwrap_or(&Value::Null),
        _ => return Err(type_error(path, "a field object")),
    };
    let dpath = join(path, "d");
    match d {
        Value::Null => Ok(FieldDescriptor::RATIONALS),
        Value::Number(n) => {
            let d = n.as_i64().ok_or_else(|| type_error(&dpath, "an integer"))?;
            FieldDescriptor::quadratic(d).map_err(|e| CliError::core(&e, dpath))
        }
        _ => Err(type_error(&dpath, "an integer or null")),
    }
}

fn parse_loose(v: &Value, path: &str) -> Parsed<LooseElem> {
    match v {
        Value::String(s) => LooseElem::parse(s).map_err(|e| CliError::core(&e, path)),
        Value::Number(n) => {
            let k = n
                .as_i64()
                .ok_or_else(|| type_error(path, "an integer or element string"))?;
            LooseElem::parse(&k.to_string()).map_err(|e| CliError::core(&e, path))
        }
        _ => Err(type_error(path, "an element string")),
    }
}

fn place(x: LooseElem, field: FieldDescriptor, path: &str) -> Parsed<QuadFieldElem> {
    x.into_field(field).map_err(|e| CliError::core(&e, path))
}

pub fn parse_elem(v: &Value, field: FieldDescriptor, path: &str) -> Parsed<QuadFieldElem> {
    place(parse_loose(v, path)?, field, path)
}

pub fn parse_vector(
    v: &Value,
    field: FieldDescriptor,
    dim: usize,
    path: &str,
) -> Parsed<Vec<QuadFieldElem>> {
    let items = as_array(v, path)?;
    if items.len() != dim {
        return Err(CliError::core(
            &Error::DimMismatch {
                expected: dim,
                found: items.len(),
            },
            path,
        ));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, x)| parse_elem(x, field, &index(path, i)))
        .collect()
}

/// Loose entries of a rectangular array of arrays, with their paths.
fn loose_rows(v: &Value, path: &str) -> Parsed<Vec<Vec<(String, LooseElem)>>> {
    let rows = as_array(v, path)?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let rpath = index(path, i);
        let items = as_array(row, &rpath)?;
        if i > 0 && items.len() != out.first().map_or(0, |r: &Vec<_>| r.len()) {
            return Err(CliError::new(
                "RAGGED_MATRIX",
                "rows have different lengths",
                rpath,
            ));
        }
        let mut entries = Vec::with_capacity(items.len());
        for (j, x) in items.iter().enumerate() {
            let epath = index(&rpath, j);
            entries.push((epath.clone(), parse_loose(x, &epath)?));
        }
        out.push(entries);
    }
    if out.is_empty() || out[0].is_empty() {
        return Err(CliError::new("EMPTY_MATRIX", "matrix has no entries", path));
    }
    Ok(out)
}

fn placed_matrix(
    rows: Vec<Vec<(String, LooseElem)>>,
    field: FieldDescriptor,
    path: &str,
) -> Parsed<Matrix> {
    let mut data = Vec::with_capacity(rows.len());
    for row in rows {
        data.push(
            row.into_iter()
                .map(|(p, x)| place(x, field, &p))
                .collect::<Parsed<Vec<_>>>()?,
        );
    }
    Matrix::from_rows(field, data).map_err(|e| CliError::core(&e, path))
}

pub fn parse_matrix(v: &Value, field: FieldDescriptor, path: &str) -> Parsed<Matrix> {
    placed_matrix(loose_rows(v, path)?, field, path)
}

/// The radicand used by the entries, if any; two different radicands are a
/// field mismatch reported at the first entry using the second one.
fn infer_field<'a, I>(entries: I) -> Parsed<FieldDescriptor>
where
    I: IntoIterator<Item = (&'a str, &'a LooseElem)>,
{
    let mut field = FieldDescriptor::RATIONALS;
    for (path, x) in entries {
        if let Some(d) = x.d {
            let here =
                FieldDescriptor::quadratic(d as i64).map_err(|e| CliError::core(&e, path))?;
            if field.is_quadratic() && field != here {
                return Err(CliError::core(
                    &Error::FieldMismatch {
                        left: field,
                        right: here,
                    },
                    path,
                ));
            }
            field = here;
        }
    }
    Ok(field)
}

/// A form object: `{"field", "dim", "gram"}` or the shortcut `{"diag"}`.
/// Without `field` the field is inferred from the `sqrt(d)` radicands.
pub fn parse_form(v: &Value, path: &str) -> Parsed<Arc<QuadraticForm>> {
    if !v.is_object() {
        return Err(type_error(path, "a form object"));
    }
    let declared = match v.get("field") {
        Some(f) => Some(parse_field(f, &join(path, "field"))?),
        None => None,
    };
    let form = if let Some(diag) = v.get("diag") {
        let dpath = join(path, "diag");
        let items = as_array(diag, &dpath)?;
        let loose = items
            .iter()
            .enumerate()
            .map(|(i, x)| Ok((index(&dpath, i), parse_loose(x, &index(&dpath, i))?)))
            .collect::<Parsed<Vec<_>>>()?;
        let field = match declared {
            Some(f) => f,
            None => infer_field(loose.iter().map(|(p, x)| (p.as_str(), x)))?,
        };
        let coeffs = loose
            .into_iter()
            .map(|(p, x)| place(x, field, &p))
            .collect::<Parsed<Vec<_>>>()?;
        QuadraticForm::from_diagonal(field, &coeffs).map_err(|e| match e {
            Error::ZeroCoefficient { index: i } => CliError::core(&e, index(&dpath, i)),
            _ => CliError::core(&e, dpath.clone()),
        })?
    } else {
        let gpath = join(path, "gram");
        let rows = loose_rows(require(v, "gram", path)?, &gpath)?;
        let field = match declared {
            Some(f) => f,
            None => infer_field(rows.iter().flatten().map(|(p, x)| (p.as_str(), x)))?,
        };
        let gram = placed_matrix(rows, field, &gpath)?;
        QuadraticForm::new(gram).map_err(|e| match e {
            Error::NotSymmetric { row, col } => CliError::core(&e, index(&index(&gpath, row), col)),
            _ => CliError::core(&e, gpath.clone()),
        })?
    };
    if let Some(dim) = v.get("dim") {
        let dpath = join(path, "dim");
        let dim = parse_usize(dim, &dpath)?;
        if dim != form.dim() {
            return Err(CliError::core(
                &Error::DimMismatch {
                    expected: dim,
                    found: form.dim(),
                },
                dpath,
            ));
        }
    }
    Ok(Arc::new(form))
}

pub fn parse_embedding(v: &Value, field: FieldDescriptor, path: &str) -> Parsed<Embedding> {
    let e: Embedding = parse_str(v, path)?
        .parse()
        .map_err(|e: Error| CliError::core(&e, path))?;
    if e == Embedding::Conjugate && !field.is_quadratic() {
        return Err(CliError::core(&Error::NoConjugateForQ, path));
    }
    Ok(e)
}

/// A labeled matrix `{"label", "matrix"}`, unchecked.
pub struct RawGenerator {
    pub label: String,
    pub matrix: Matrix,
    pub path: String,
}

fn parse_raw_generator(v: &Value, field: FieldDescriptor, path: &str) -> Parsed<RawGenerator> {
    let label = parse_str(require(v, "label", path)?, &join(path, "label"))?.to_string();
    let mpath = join(path, "matrix");
    let matrix = parse_matrix(require(v, "matrix", path)?, field, &mpath)?;
    Ok(RawGenerator {
        label,
        matrix,
        path: mpath,
    })
}

pub fn parse_raw_generators(
    v: &Value,
    field: FieldDescriptor,
    path: &str,
) -> Parsed<Vec<RawGenerator>> {
    let items = as_array(v, path)?;
    if items.is_empty() {
        return Err(CliError::core(&Error::EmptyGeneratorSet, path));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, g)| parse_raw_generator(g, field, &index(path, i)))
        .collect()
}

pub(crate) fn to_element(form: &Arc<QuadraticForm>, raw: RawGenerator) -> Parsed<GroupElement> {
    GroupElement::from_matrix(form.clone(), raw.matrix).map_err(|e| CliError::core(&e, raw.path))
}

pub fn to_generator_set(
    form: &Arc<QuadraticForm>,
    raw: Vec<RawGenerator>,
    path: &str,
) -> Parsed<GeneratorSet> {
    let mut pairs = Vec::with_capacity(raw.len());
    for g in raw {
        let label = g.label.clone();
        pairs.push((label, to_element(form, g)?));
    }
    GeneratorSet::from_pairs(pairs).map_err(|e| CliError::core(&e, path))
}

/// `{"form", "generators": [{"label", "matrix"}, ...]}`.
pub fn parse_generator_set(doc: &Value) -> Parsed<GeneratorSet> {
    let form = parse_form(require(doc, "form", "")?, "form")?;
    let raw = parse_raw_generators(require(doc, "generators", "")?, form.field(), "generators")?;
    to_generator_set(&form, raw, "generators")
}
