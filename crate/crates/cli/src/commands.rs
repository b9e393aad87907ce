//! One function per subcommand, each turning a parsed document into a
//! [`Report`].

use std::path::Path;

use abelchi_core::complex::{chi_a, classify_complex, hc_seq, ComplexDesc};
use abelchi_core::document::{parse_document, sequence_doc, Document};
use abelchi_core::kzero::{xi, xi_chi_check};
use abelchi_core::rational::{format_rational, to_f64};
use abelchi_core::seq::{abel_limit, classify_seq};
use abelchi_core::ses::{
    additivity_check, chi_bar_identity_check, delta_seq, is_admissible, is_weakly_admissible,
    SesDesc,
};
use abelchi_core::summation::holder_limit_qp;
use abelchi_core::{Error, QPSeq};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::report::{classification_value, limit_value, ratfun_value, Report};

/// Highest Hölder order tried before giving up.
pub const HOLDER_MAX_ORDER: usize = 3;
/// Agreement required between the Hölder estimate and the exact limit.
pub const HOLDER_AGREEMENT: f64 = 1e-4;

pub fn load(path: &Path) -> Result<Document, CliError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: name.clone(),
        source,
    })?;
    parse_document(&text).map_err(|e| CliError::core(&name, e))
}

fn mismatch(input: &str, wanted: &str, doc: &Document) -> CliError {
    CliError::core(
        input,
        Error::VariantMismatch(format!("expected {wanted}, found `{}`", doc.kind())),
    )
}

fn as_complex(input: &str, doc: Document) -> Result<ComplexDesc, CliError> {
    match doc {
        Document::Complex(c) => Ok(c),
        Document::Bounded(b) => Ok(ComplexDesc::M(b.complex().clone())),
        other => Err(mismatch(input, "a complex", &other)),
    }
}

/// Sequences are taken as they are; complexes contribute their signed
/// homology ranks.
fn as_sequence(input: &str, doc: Document) -> Result<QPSeq, CliError> {
    match doc {
        Document::Sequence(s) => Ok(s),
        other => Ok(hc_seq(&as_complex(input, other)?)),
    }
}

fn as_ses(input: &str, doc: Document) -> Result<SesDesc, CliError> {
    match doc {
        Document::Ses(s) => Ok(*s),
        other => Err(mismatch(input, "a short exact sequence", &other)),
    }
}

fn seq_value(s: &QPSeq) -> Value {
    serde_json::to_value(sequence_doc(s)).expect("plain data")
}

fn terms_value(s: &QPSeq, n: usize) -> Value {
    Value::from(s.terms(n).iter().map(format_rational).collect::<Vec<_>>())
}

pub fn chi(input: &str, doc: Document) -> Result<Report, CliError> {
    let c = as_complex(input, doc)?;
    let class = classify_complex(&c).map_err(|e| CliError::core(input, e))?;
    let mut r = Report::new("chi", Some(input));
    r.value("chi_A", limit_value(&chi_a(&c)))
        .value("generating_function", ratfun_value(&hc_seq(&c).genfun()))
        .value("class", class.class.to_string());
    Ok(r)
}

pub fn classify(input: &str, doc: Document) -> Result<Report, CliError> {
    let s = as_sequence(input, doc)?;
    let c = classify_seq(&s).map_err(|e| CliError::core(input, e))?;
    let mut r = Report::new("classify", Some(input));
    r.value("class", c.class.to_string())
        .value("predicates", classification_value(&c))
        .value("abel_limit", limit_value(&abel_limit(&s)));
    Ok(r)
}

pub fn genfun(input: &str, doc: Document) -> Result<Report, CliError> {
    let s = as_sequence(input, doc)?;
    let f = s.genfun();
    let mut r = Report::new("genfun", Some(input));
    r.value("generating_function", ratfun_value(&f))
        .value("pole_order_at_one", f.pole_order_at_one())
        .value("radius_ge_one", f.radius_ge_one().root_free);
    Ok(r)
}

pub fn delta(input: &str, doc: Document, terms: usize) -> Result<Report, CliError> {
    let s = as_ses(input, doc)?;
    let err = |e| CliError::core(input, e);
    let d = delta_seq(&s).map_err(err)?;
    let ranks = d.ranks();
    let mut r = Report::new("delta", Some(input));
    r.value("delta", seq_value(&d.seq))
        .value("connecting_ranks", terms_value(&ranks, terms))
        .value("vanishes", ranks.same_values(&QPSeq::zero()))
        .value("weakly_admissible", is_weakly_admissible(&s).map_err(err)?)
        .value("admissible", is_admissible(&s).map_err(err)?);
    if s.maps().is_some() {
        r.verdict("connecting ranks match the maps", true, None);
    }
    r.verdict(
        "generating-function identity",
        chi_bar_identity_check(&s).map_err(err)?,
        None,
    );
    Ok(r)
}

pub fn admissible(input: &str, doc: Document) -> Result<Report, CliError> {
    let s = as_ses(input, doc)?;
    let err = |e| CliError::core(input, e);
    let weak = is_weakly_admissible(&s).map_err(err)?;
    let strong = is_admissible(&s).map_err(err)?;
    let mut r = Report::new("admissible", Some(input));
    r.value("weakly_admissible", weak)
        .value("admissible", strong);
    r.verdict("admissible", strong, None);
    Ok(r)
}

pub fn additivity(input: &str, doc: Document) -> Result<Report, CliError> {
    let s = as_ses(input, doc)?;
    let a = additivity_check(&s).map_err(|e| CliError::core(input, e))?;
    let mut r = Report::new("additivity", Some(input));
    r.value("chi_A(A)", format_rational(&a.chi_a))
        .value("chi_A(B)", format_rational(&a.chi_b))
        .value("chi_A(C)", format_rational(&a.chi_c))
        .value("alternating_sum", format_rational(&a.alternating_sum));
    r.verdict("chi_A(A) - chi_A(B) + chi_A(C) = 0", a.holds, None);
    Ok(r)
}

pub fn xi_cmd(input: &str, doc: Document) -> Result<Report, CliError> {
    let b = match doc {
        Document::Bounded(b) => b,
        other => return Err(mismatch(input, "a bounded complex", &other)),
    };
    let x = xi(&b);
    let check = xi_chi_check(&b);
    let mut r = Report::new("xi", Some(input));
    r.value("xi_stable_start", x.stable_start())
        .value("xi_period", x.period().unwrap_or(0))
        .value("chi_A(Xi C)", limit_value(&check.chi_a))
        .value("homological_chi", check.chi_hom)
        .value("classical_chi", check.classical_chi);
    r.verdict("chi_A(Xi C) = chi(C)/2", check.holds, None);
    Ok(r)
}

pub fn oracle(input: &str, doc: Document, terms: usize) -> Result<Report, CliError> {
    let s = as_sequence(input, doc)?;
    let coeffs = s
        .genfun()
        .series_coeffs(terms)
        .map_err(|e| CliError::core(input, e))?;
    let values = s.terms(terms);
    let table: Vec<Value> = coeffs
        .iter()
        .zip(&values)
        .enumerate()
        .map(|(n, (c, v))| json!([n, format_rational(c), format_rational(v)]))
        .collect();
    let mismatches = coeffs.iter().zip(&values).filter(|(c, v)| c != v).count();
    let mut r = Report::new("oracle", Some(input));
    r.value("columns", json!(["n", "coefficient", "term"]))
        .value("table", table);
    r.verdict(
        "series coefficients equal terms",
        mismatches == 0,
        (mismatches > 0).then(|| format!("{mismatches} of {terms} differ")),
    );
    Ok(r)
}

pub fn holder(input: &str, doc: Document, tol: f64, horizon: usize) -> Result<Report, CliError> {
    let s = as_sequence(input, doc)?;
    let exact = abel_limit(&s);
    let est = holder_limit_qp(&s, HOLDER_MAX_ORDER, tol, horizon)
        .map_err(|e| CliError::core(input, e))?;
    let mut r = Report::new("holder", Some(input));
    r.value("abel_limit", limit_value(&exact))
        .value("holder_order", est.order)
        .value("holder_value", format!("{:.9}", est.value));
    let (pass, detail) = match exact.finite() {
        Some(v) => {
            let diff = (est.value - to_f64(v)).abs();
            (
                diff <= HOLDER_AGREEMENT,
                Some(format!("difference {diff:.3e}")),
            )
        }
        None => (false, Some("the exact Abel limit is infinite".into())),
    };
    r.verdict("Hölder value agrees with the Abel limit", pass, detail);
    Ok(r)
}
