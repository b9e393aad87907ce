//! JSON documents describing sequences, complexes and exact sequences.
//!
//! Every document is an object with a `kind` field:
//!
//! ```json
//! {"kind": "sequence", "prefix": ["1", "-1/2"], "period": 2, "tail_polys": [["1"], ["0", "1"]]}
//! {"kind": "complex_h", "hranks": {"prefix": [], "period": 2, "tail_polys": [["1"], ["0"]]}}
//! {"kind": "complex_m", "ring": "Z", "dims": [1, 1], "prefix_diffs": [[["2"]]], "tail": null}
//! {"kind": "bounded", "ring": "Z", "dims": [1], "prefix_diffs": [], "fg_projective": true}
//! {"kind": "ses", "a": {...}, "b": {...}, "c": {...}, "maps": null}
//! ```
//!
//! Rationals are strings `p` or `p/q`; plain JSON integers are accepted on
//! input. Polynomial coefficients run from the constant term upwards.
//! Matrices are arrays of rows; their shapes are implied by `dims`.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::chainmap::ChainMap;
use crate::complex::{ComplexDesc, HDescComplex, MDescComplex, Ring};
use crate::error::{Error, Result};
use crate::kzero::BoundedComplex;
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::seq::QPSeq;
use crate::ses::SesDesc;

/// Serde adapter writing rationals as canonical strings and reading
/// either strings or JSON integers.
pub mod rational_str {
    use serde::{de, Deserializer, Serializer};

    use crate::rational::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = Rational;
            fn expecting(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.write_str("a rational as a string `p` or `p/q`, or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
                parse_rational(v).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
                Ok(crate::rational::int(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
                Ok(Rational::from_integer(v.into()))
            }
        }
        d.deserialize_any(V)
    }
}

/// A rational in its text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Q(#[serde(with = "rational_str")] pub Rational);

pub type MatrixDoc = Vec<Vec<Q>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceDoc {
    pub prefix: Vec<Q>,
    pub period: usize,
    pub tail_polys: Vec<Vec<Q>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexHDoc {
    hranks: SequenceDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailDoc {
    pub period: usize,
    /// Ranks of `C_{m+1}, ..., C_{m+p}`.
    pub dims: Vec<usize>,
    /// `d_{m+1}, ..., d_{m+p}`.
    pub maps: Vec<MatrixDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexMDoc {
    ring: Ring,
    dims: Vec<usize>,
    prefix_diffs: Vec<MatrixDoc>,
    #[serde(default)]
    tail: Option<TailDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundedDoc {
    ring: Ring,
    dims: Vec<usize>,
    prefix_diffs: Vec<MatrixDoc>,
    fg_projective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    prefix: Vec<MatrixDoc>,
    #[serde(default)]
    tail: Option<Vec<MatrixDoc>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SesMapsDoc {
    f: MapDoc,
    g: MapDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SesDoc {
    #[serde(default)]
    kind: Option<String>,
    a: Value,
    b: Value,
    c: Value,
    #[serde(default)]
    maps: Option<SesMapsDoc>,
}

/// A parsed and validated document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Sequence(QPSeq),
    Complex(ComplexDesc),
    Ses(Box<SesDesc>),
    Bounded(BoundedComplex),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Sequence(_) => "sequence",
            Document::Complex(ComplexDesc::H(_)) => "complex_h",
            Document::Complex(ComplexDesc::M(_)) => "complex_m",
            Document::Ses(_) => "ses",
            Document::Bounded(_) => "bounded",
        }
    }
}

fn join(base: &str, rest: &str) -> String {
    match (base.is_empty(), rest.is_empty() || rest == ".") {
        (true, _) => rest.to_string(),
        (false, true) => base.to_string(),
        (false, false) if rest.starts_with('[') => format!("{base}{rest}"),
        (false, false) => format!("{base}.{rest}"),
    }
}

fn invalid(path: &str, message: impl Into<String>) -> Error {
    Error::Document {
        path: if path.is_empty() {
            ".".into()
        } else {
            path.into()
        },
        message: message.into(),
    }
}

fn typed<T: DeserializeOwned>(v: Value, path: &str) -> Result<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let inner = e.path().to_string();
        invalid(&join(path, &inner), e.into_inner().to_string())
    })
}

/// Parses and validates a document.
pub fn parse_document(text: &str) -> Result<Document> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    document_from_value(v, "")
}

fn document_from_value(v: Value, path: &str) -> Result<Document> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| invalid(path, "missing string field `kind`"))?
        .to_string();
    let mut body = v;
    match kind.as_str() {
        "ses" => {}
        "sequence" | "complex_h" | "complex_m" | "bounded" => {
            if let Value::Object(map) = &mut body {
                map.remove("kind");
            }
        }
        other => return Err(invalid(
            &join(path, "kind"),
            format!(
                "unknown kind `{other}`; expected sequence, complex_h, complex_m, ses or bounded"
            ),
        )),
    }
    match kind.as_str() {
        "sequence" => Ok(Document::Sequence(sequence_from_doc(
            typed(body, path)?,
            path,
        )?)),
        "complex_h" => {
            let d: ComplexHDoc = typed(body, path)?;
            let p = join(path, "hranks");
            let seq = sequence_from_doc(d.hranks, &p)?;
            let h = HDescComplex::new(seq).map_err(|e| invalid(&p, e.to_string()))?;
            Ok(Document::Complex(ComplexDesc::H(h)))
        }
        "complex_m" => {
            let d: ComplexMDoc = typed(body, path)?;
            Ok(Document::Complex(ComplexDesc::M(mdesc_from_doc(d, path)?)))
        }
        "bounded" => {
            let d: BoundedDoc = typed(body, path)?;
            let m = mdesc_from_doc(
                ComplexMDoc {
                    ring: d.ring,
                    dims: d.dims,
                    prefix_diffs: d.prefix_diffs,
                    tail: None,
                },
                path,
            )?;
            let b = BoundedComplex::new(m, d.fg_projective)
                .map_err(|e| invalid(path, e.to_string()))?;
            Ok(Document::Bounded(b))
        }
        _ => {
            let d: SesDoc = typed(body, path)?;
            let part = |v: Value, name: &str| -> Result<ComplexDesc> {
                let p = join(path, name);
                match document_from_value(v, &p)? {
                    Document::Complex(c) => Ok(c),
                    other => Err(invalid(
                        &p,
                        format!("expected a complex, found `{}`", other.kind()),
                    )),
                }
            };
            let (a, b, c) = (part(d.a, "a")?, part(d.b, "b")?, part(d.c, "c")?);
            match d.maps {
                None => Ok(Document::Ses(Box::new(SesDesc::claimed(a, b, c)))),
                Some(maps) => {
                    let need_m = |c: ComplexDesc, name: &str| match c {
                        ComplexDesc::M(m) => Ok(m),
                        ComplexDesc::H(_) => Err(invalid(
                            &join(path, name),
                            "explicit maps need matrix-described complexes",
                        )),
                    };
                    let (a, b, c) = (need_m(a, "a")?, need_m(b, "b")?, need_m(c, "c")?);
                    let mp = join(path, "maps");
                    let f = map_from_doc(maps.f, &a, &b, &join(&mp, "f"))?;
                    let g = map_from_doc(maps.g, &b, &c, &join(&mp, "g"))?;
                    let s = SesDesc::with_maps(f, g).map_err(|e| invalid(&mp, e.to_string()))?;
                    Ok(Document::Ses(Box::new(s)))
                }
            }
        }
    }
}

fn sequence_from_doc(d: SequenceDoc, path: &str) -> Result<QPSeq> {
    let tail = d
        .tail_polys
        .into_iter()
        .map(|c| Poly::new(c.into_iter().map(|q| q.0).collect()))
        .collect();
    QPSeq::new(d.prefix.into_iter().map(|q| q.0).collect(), d.period, tail)
        .map_err(|e| invalid(&join(path, "tail_polys"), e.to_string()))
}

fn matrix_from_doc(rows: MatrixDoc, shape: (usize, usize), path: &str) -> Result<Matrix> {
    let (r, c) = shape;
    if rows.len() != r {
        return Err(invalid(
            path,
            format!("expected {r} rows, found {}", rows.len()),
        ));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != c {
            return Err(invalid(
                &format!("{path}[{i}]"),
                format!("expected {c} entries, found {}", row.len()),
            ));
        }
    }
    Ok(Matrix::from_rows(
        rows.into_iter()
            .map(|r| r.into_iter().map(|q| q.0).collect())
            .collect(),
        c,
    )
    .expect("row lengths checked"))
}

fn mdesc_from_doc(d: ComplexMDoc, path: &str) -> Result<MDescComplex> {
    if d.dims.is_empty() {
        return Err(invalid(
            &join(path, "dims"),
            "at least the rank of C_0 is required",
        ));
    }
    let m = d.dims.len() - 1;
    if d.prefix_diffs.len() != m {
        return Err(invalid(
            &join(path, "prefix_diffs"),
            format!(
                "{} ranks need {m} differentials, found {}",
                d.dims.len(),
                d.prefix_diffs.len()
            ),
        ));
    }
    let diffs = d
        .prefix_diffs
        .into_iter()
        .enumerate()
        .map(|(i, rows)| {
            let n = i + 1;
            matrix_from_doc(
                rows,
                (d.dims[n - 1], d.dims[n]),
                &format!("{}[{i}]", join(path, "prefix_diffs")),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let tail = match d.tail {
        None => None,
        Some(t) => {
            let tp = join(path, "tail");
            if t.period == 0 {
                return Err(invalid(&join(&tp, "period"), "period must be at least 1"));
            }
            if t.dims.len() != t.period || t.maps.len() != t.period {
                return Err(invalid(
                    &tp,
                    format!("period {} needs {0} dims and {0} maps", t.period),
                ));
            }
            if t.dims[t.period - 1] != d.dims[m] {
                return Err(invalid(
                    &join(&tp, "dims"),
                    format!(
                        "last tail rank {} must equal the rank {} of C_m",
                        t.dims[t.period - 1],
                        d.dims[m]
                    ),
                ));
            }
            let mut below = d.dims[m];
            let mut maps = Vec::with_capacity(t.period);
            for (r, rows) in t.maps.into_iter().enumerate() {
                maps.push(matrix_from_doc(
                    rows,
                    (below, t.dims[r]),
                    &format!("{}[{r}]", join(&tp, "maps")),
                )?);
                below = t.dims[r];
            }
            Some(maps)
        }
    };
    MDescComplex::new(d.ring, d.dims, diffs, tail).map_err(|e| invalid(path, e.to_string()))
}

fn map_from_doc(d: MapDoc, a: &MDescComplex, b: &MDescComplex, path: &str) -> Result<ChainMap> {
    if d.prefix.is_empty() {
        return Err(invalid(
            &join(path, "prefix"),
            "the degree 0 component is required",
        ));
    }
    let m = d.prefix.len() - 1;
    let shape = |n: usize| (b.dim(n), a.dim(n));
    let prefix = d
        .prefix
        .into_iter()
        .enumerate()
        .map(|(n, rows)| matrix_from_doc(rows, shape(n), &format!("{}[{n}]", join(path, "prefix"))))
        .collect::<Result<Vec<_>>>()?;
    let tail = d
        .tail
        .map(|t| {
            t.into_iter()
                .enumerate()
                .map(|(r, rows)| {
                    matrix_from_doc(
                        rows,
                        shape(m + 1 + r),
                        &format!("{}[{r}]", join(path, "tail")),
                    )
                })
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    ChainMap::new(a.clone(), b.clone(), prefix, tail).map_err(|e| invalid(path, e.to_string()))
}

fn qs(v: &[Rational]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

fn matrix_doc(m: &Matrix) -> MatrixDoc {
    m.to_rows().iter().map(|r| qs(r)).collect()
}

pub fn sequence_doc(s: &QPSeq) -> SequenceDoc {
    SequenceDoc {
        prefix: qs(s.prefix()),
        period: s.period(),
        tail_polys: s.tail_polys().iter().map(|p| qs(p.coeffs())).collect(),
    }
}

fn mdesc_doc(c: &MDescComplex) -> ComplexMDoc {
    let m = c.stable_start();
    ComplexMDoc {
        ring: c.ring(),
        dims: c.prefix_dims().to_vec(),
        prefix_diffs: c.prefix_diffs().iter().map(matrix_doc).collect(),
        tail: c.period().map(|p| TailDoc {
            period: p,
            dims: (1..=p).map(|j| c.dim(m + j)).collect(),
            maps: c.tail_maps().iter().map(matrix_doc).collect(),
        }),
    }
}

fn with_kind(kind: &str, v: Value) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("kind".into(), Value::String(kind.into()));
    if let Value::Object(map) = v {
        out.extend(map);
    }
    Value::Object(out)
}

fn complex_value(c: &ComplexDesc) -> Value {
    match c {
        ComplexDesc::H(h) => with_kind(
            "complex_h",
            serde_json::to_value(ComplexHDoc {
                hranks: sequence_doc(h.hranks()),
            })
            .expect("serializable"),
        ),
        ComplexDesc::M(m) => with_kind(
            "complex_m",
            serde_json::to_value(mdesc_doc(m)).expect("serializable"),
        ),
    }
}

fn map_doc(f: &ChainMap) -> MapDoc {
    MapDoc {
        prefix: f.prefix_maps().iter().map(matrix_doc).collect(),
        tail: f
            .period()
            .map(|_| f.tail_maps().iter().map(matrix_doc).collect()),
    }
}

/// The JSON value of a document; [`parse_document`] inverts it.
pub fn document_value(d: &Document) -> Value {
    match d {
        Document::Sequence(s) => with_kind(
            "sequence",
            serde_json::to_value(sequence_doc(s)).expect("serializable"),
        ),
        Document::Complex(c) => complex_value(c),
        Document::Bounded(b) => {
            let m = mdesc_doc(b.complex());
            with_kind(
                "bounded",
                serde_json::to_value(BoundedDoc {
                    ring: m.ring,
                    dims: m.dims,
                    prefix_diffs: m.prefix_diffs,
                    fg_projective: b.fg_projective(),
                })
                .expect("serializable"),
            )
        }
        Document::Ses(s) => {
            let doc = SesDoc {
                kind: Some("ses".into()),
                a: complex_value(s.a()),
                b: complex_value(s.b()),
                c: complex_value(s.c()),
                maps: s.maps().map(|m| SesMapsDoc {
                    f: map_doc(&m.f),
                    g: map_doc(&m.g),
                }),
            };
            serde_json::to_value(doc).expect("serializable")
        }
    }
}

/// Pretty-printed JSON text of a document.
pub fn to_json(d: &Document) -> String {
    serde_json::to_string_pretty(&document_value(d)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn sequence_round_trip() {
        let text = r#"{"kind":"sequence","prefix":["1","-1/2", 3],"period":2,"tail_polys":[["1"],["0","2/4"]]}"#;
        let d = parse_document(text).unwrap();
        let Document::Sequence(s) = &d else { panic!() };
        assert_eq!(s.eval(1), frac(-1, 2));
        assert_eq!(s.eval(2), int(3));
        assert_eq!(s.eval(6), frac(1, 2));
        assert_eq!(parse_document(&to_json(&d)).unwrap(), d);
    }

    #[test]
    fn complex_round_trip() {
        let text = r#"{"kind":"complex_m","ring":"Z","dims":[1,1],"prefix_diffs":[[["2"]]],
                       "tail":{"period":2,"dims":[0,1],"maps":[[[]],[]]}}"#;
        let d = parse_document(text).unwrap();
        assert_eq!(parse_document(&to_json(&d)).unwrap(), d);
    }

    #[test]
    fn errors_carry_paths() {
        let bad_entry = r#"{"kind":"complex_m","ring":"Z","dims":[1,1],"prefix_diffs":[[["x"]]]}"#;
        match parse_document(bad_entry) {
            Err(Error::Document { path, .. }) => assert_eq!(path, "prefix_diffs[0][0][0]"),
            other => panic!("{other:?}"),
        }
        let bad_shape = r#"{"kind":"complex_m","ring":"Q","dims":[1,2],"prefix_diffs":[[["1"]]]}"#;
        match parse_document(bad_shape) {
            Err(Error::Document { path, .. }) => assert_eq!(path, "prefix_diffs[0][0]"),
            other => panic!("{other:?}"),
        }
        let nested = r#"{"kind":"ses","a":{"kind":"complex_h","hranks":{"prefix":["-1"],"period":1,"tail_polys":[["0"]]}},
                          "b":{"kind":"complex_h","hranks":{"prefix":[],"period":1,"tail_polys":[["0"]]}},
                          "c":{"kind":"complex_h","hranks":{"prefix":[],"period":1,"tail_polys":[["0"]]}}}"#;
        match parse_document(nested) {
            Err(Error::Document { path, .. }) => assert_eq!(path, "a.hranks"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_document("{"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_document(r#"{"kind":"nope"}"#),
            Err(Error::Document { .. })
        ));
    }
}
