//! Named verification suites for `abelchi verify`.
//!
//! Randomized suites use fixed seeds, so every run checks the same cases.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use abelchi_core::complex::{
    chi_a, classify_complex, rank_identity_check, theorem_rc_equals_hc, Ring,
};
use abelchi_core::document::Document;
use abelchi_core::gen::{
    random_chain_map, random_mdesc, random_qpseq, random_rational, random_structured,
};
use abelchi_core::kzero::{iota_composite, xi_chi_check, BoundedComplex};
use abelchi_core::rational::{format_rational, frac};
use abelchi_core::seq::{abel_limit, classify_seq};
use abelchi_core::ses::{
    additivity_check, chi_bar_identity_check, delta_ranks_linear, delta_seq, is_admissible,
    make_cone_ses, make_split_ses, SesDesc,
};
use abelchi_core::{ExtLimit, GrowthClass, MDescComplex, QPSeq};
use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::commands::load;
use crate::error::CliError;
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    PaperExamples,
    Additivity,
    RankIdentity,
    XiHalf,
    Translativity,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::PaperExamples => "paper-examples",
            Suite::Additivity => "additivity",
            Suite::RankIdentity => "rank-identity",
            Suite::XiHalf => "xi-half",
            Suite::Translativity => "translativity",
        }
    }
}

pub const FIXTURES_ENV: &str = "ABELCHI_FIXTURES";
pub const MANIFEST: &str = "expected.json";

/// `$ABELCHI_FIXTURES`, else `fixtures/paper` under the working directory,
/// else the copy shipped with the sources.
pub fn fixtures_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(FIXTURES_ENV) {
        return PathBuf::from(dir);
    }
    let local = PathBuf::from("fixtures/paper");
    if local.join(MANIFEST).is_file() {
        return local;
    }
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/paper")
}

pub fn run(suite: Suite) -> Result<Report, CliError> {
    let mut r = Report::new("verify", Some(suite.name()));
    match suite {
        Suite::PaperExamples => worked_examples(&mut r, &fixtures_dir())?,
        Suite::Additivity => additivity(&mut r),
        Suite::RankIdentity => rank_identity(&mut r),
        Suite::XiHalf => xi_half(&mut r),
        Suite::Translativity => translativity(&mut r),
    }
    Ok(r)
}

/// Expected values for one fixture. Absent fields are not checked.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub chi: Option<String>,
    pub abel_limit: Option<String>,
    pub class: Option<GrowthClass>,
    pub controlled_growth: Option<bool>,
    pub controlled_absolute_growth: Option<bool>,
    pub coefficients: Option<Vec<String>>,
    pub delta_vanishes: Option<bool>,
    pub admissible: Option<bool>,
    pub additive: Option<bool>,
    pub xi_chi: Option<String>,
}

fn compare<T: PartialEq + std::fmt::Debug>(
    what: &str,
    want: &Option<T>,
    got: impl FnOnce() -> T,
    out: &mut Vec<String>,
) {
    if let Some(w) = want {
        let g = got();
        if &g != w {
            out.push(format!("{what}: expected {w:?}, got {g:?}"));
        }
    }
}

/// Mismatches between a document and its expectation.
pub fn check_fixture(doc: &Document, e: &Expectation) -> Result<Vec<String>, abelchi_core::Error> {
    let mut bad = Vec::new();
    let seq = match doc {
        Document::Sequence(s) => Some(s.clone()),
        Document::Complex(c) => Some(abelchi_core::complex::hc_seq(c)),
        _ => None,
    };
    if let Some(s) = &seq {
        let c = classify_seq(s)?;
        compare(
            "abel_limit",
            &e.abel_limit,
            || abel_limit(s).to_string(),
            &mut bad,
        );
        compare("class", &e.class, || c.class, &mut bad);
        compare(
            "controlled_growth",
            &e.controlled_growth,
            || c.controlled_growth,
            &mut bad,
        );
        compare(
            "controlled_absolute_growth",
            &e.controlled_absolute_growth,
            || c.controlled_absolute_growth,
            &mut bad,
        );
        if let Some(want) = &e.coefficients {
            let got: Vec<String> = s
                .genfun()
                .series_coeffs(want.len())?
                .iter()
                .map(format_rational)
                .collect();
            compare("coefficients", &e.coefficients, || got, &mut bad);
        }
    }
    if let Document::Complex(c) = doc {
        compare("chi", &e.chi, || chi_a(c).to_string(), &mut bad);
        compare(
            "class",
            &e.class,
            || {
                classify_complex(c)
                    .map(|k| k.class)
                    .unwrap_or(GrowthClass::RadiusLtOne)
            },
            &mut bad,
        );
    }
    if let Document::Ses(s) = doc {
        if e.delta_vanishes.is_some() {
            let vanishes = delta_seq(s)?.ranks().same_values(&QPSeq::zero());
            compare("delta_vanishes", &e.delta_vanishes, || vanishes, &mut bad);
        }
        if e.admissible.is_some() {
            let a = is_admissible(s)?;
            compare("admissible", &e.admissible, || a, &mut bad);
        }
        if e.additive.is_some() {
            let h = additivity_check(s)?.holds;
            compare("additive", &e.additive, || h, &mut bad);
        }
    }
    if let Document::Bounded(b) = doc {
        compare(
            "xi_chi",
            &e.xi_chi,
            || xi_chi_check(b).chi_a.to_string(),
            &mut bad,
        );
    }
    Ok(bad)
}

fn worked_examples(r: &mut Report, dir: &Path) -> Result<(), CliError> {
    let manifest_path = dir.join(MANIFEST);
    let text = std::fs::read_to_string(&manifest_path).map_err(|source| CliError::Io {
        path: manifest_path.display().to_string(),
        source,
    })?;
    let manifest: BTreeMap<String, Expectation> = serde_json::from_str(&text).map_err(|e| {
        CliError::core(
            &manifest_path.display().to_string(),
            abelchi_core::Error::Parse(e.to_string()),
        )
    })?;
    r.value("fixtures", manifest.len());
    for (name, expect) in &manifest {
        let doc = load(&dir.join(name))?;
        let bad = check_fixture(&doc, expect).map_err(|e| CliError::core(name, e))?;
        r.verdict(
            name,
            bad.is_empty(),
            (!bad.is_empty()).then(|| bad.join("; ")),
        );
    }
    Ok(())
}

/// Runs `cases` checks, recording the count and the first failure.
fn tally(
    r: &mut Report,
    name: &str,
    cases: usize,
    mut check: impl FnMut(usize) -> Result<(), String>,
) {
    let mut first = None;
    let mut failed = 0;
    for i in 0..cases {
        if let Err(why) = check(i) {
            failed += 1;
            first.get_or_insert(format!("case {i}: {why}"));
        }
    }
    r.value(name, format!("{}/{cases}", cases - failed));
    r.verdict(name, failed == 0, first);
}

fn generated_ses(rng: &mut ChaCha8Rng, i: usize) -> Result<SesDesc, String> {
    let period = rng.random_bool(0.8).then(|| rng.random_range(1..=3));
    let m = rng.random_range(0..=5);
    let a = random_structured(rng, Ring::Rationals, m, period, 3);
    let b = random_structured(rng, Ring::Rationals, m, period, 3);
    if i.is_multiple_of(2) {
        make_split_ses(&a.complex.into(), &b.complex.into()).map_err(|e| e.to_string())
    } else {
        let f = random_chain_map(rng, &a, &b).map_err(|e| e.to_string())?;
        make_cone_ses(&f).map_err(|e| e.to_string())
    }
}

fn additivity(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xadd);
    let seqs: Vec<Result<SesDesc, String>> = (0..60).map(|i| generated_ses(&mut rng, i)).collect();
    tally(
        r,
        "connecting ranks match linear algebra",
        seqs.len(),
        |i| {
            let s = seqs[i].as_ref().map_err(Clone::clone)?;
            let ranks = delta_seq(s).map_err(|e| e.to_string())?.ranks();
            let linear = delta_ranks_linear(s.maps().ok_or("no maps")?, 16);
            match linear
                .iter()
                .enumerate()
                .find(|(n, &v)| ranks.eval(*n) != frac(v as i64, 1))
            {
                Some((n, _)) => Err(format!("degree {n}")),
                None => Ok(()),
            }
        },
    );
    tally(r, "generating-function identity", seqs.len(), |i| {
        let s = seqs[i].as_ref().map_err(Clone::clone)?;
        match chi_bar_identity_check(s) {
            Ok(true) => Ok(()),
            Ok(false) => Err("identity fails".into()),
            Err(e) => Err(e.to_string()),
        }
    });
    tally(r, "additivity", seqs.len(), |i| {
        let s = seqs[i].as_ref().map_err(Clone::clone)?;
        let a = additivity_check(s).map_err(|e| e.to_string())?;
        a.holds
            .then_some(())
            .ok_or_else(|| format!("alternating sum {}", format_rational(&a.alternating_sum)))
    });
}

fn rank_identity(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4a4b);
    let complexes: Vec<_> = (0..100)
        .map(|i| {
            let ring = if i % 2 == 0 {
                Ring::Integers
            } else {
                Ring::Rationals
            };
            random_mdesc(&mut rng, ring, 6, 6, 4)
        })
        .collect();
    tally(r, "rank identity", complexes.len(), |i| {
        let c = &complexes[i].complex;
        let upto = c.stable_start() + 2 * c.period().unwrap_or(0) + 2;
        rank_identity_check(c, upto)
            .then_some(())
            .ok_or_else(|| "ranks do not add up".into())
    });
    tally(
        r,
        "homology ranks equal the construction",
        complexes.len(),
        |i| {
            let s = &complexes[i];
            s.complex
                .homology_ranks()
                .same_values(&s.hranks())
                .then_some(())
                .ok_or_else(|| "homology differs".into())
        },
    );
    tally(r, "Abel limits of H and R agree", complexes.len(), |i| {
        let t = theorem_rc_equals_hc(&complexes[i].complex);
        (t.holds || !t.bc_controlled)
            .then_some(())
            .ok_or_else(|| format!("{t:?}"))
    });
}

fn xi_half(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e);
    let complexes: Vec<_> = (0..100)
        .map(|_| {
            let len = rng.random_range(0..=6);
            random_structured(&mut rng, Ring::Integers, len, None, 5).complex
        })
        .collect();
    tally(r, "chi_A(Xi C) = chi(C)/2", complexes.len(), |i| {
        let b = BoundedComplex::new(complexes[i].clone(), true).map_err(|e| e.to_string())?;
        let x = xi_chi_check(&b);
        x.holds.then_some(()).ok_or_else(|| format!("{x:?}"))
    });
    let unit = BoundedComplex::new(MDescComplex::free_in_degree(Ring::Integers, 1, 0), true)
        .expect("free module");
    let value = xi_chi_check(&unit).chi_a;
    r.value("chi_A(Xi R)", value.to_string());
    r.verdict(
        "chi_A(Xi R) = 1/2",
        value == ExtLimit::Finite(frac(1, 2)),
        None,
    );
    tally(r, "iota(t) = t/2", 21, |i| {
        let t = i as i64 - 10;
        (iota_composite(t) == frac(t, 2))
            .then_some(())
            .ok_or_else(|| format!("t = {t}"))
    });
}

fn translativity(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a);
    let cases: Vec<_> = (0..200)
        .map(|i| {
            let s = random_qpseq(&mut rng, 6, 5, if i % 3 == 0 { 2 } else { 0 });
            let t = random_qpseq(&mut rng, 6, 5, 0);
            let (a0, c) = (
                random_rational(&mut rng, 50, 7),
                random_rational(&mut rng, 9, 5),
            );
            (s, t, a0, c, rng.random_range(0..12usize))
        })
        .collect();
    tally(
        r,
        "shifts and single-term changes keep the Abel limit",
        cases.len(),
        |i| {
            let (s, _, a0, _, n) = &cases[i];
            let base = abel_limit(s);
            for (name, v) in [
                ("shift_left", s.shift_left()),
                ("insert_front", s.insert_front(a0.clone())),
                ("modify", s.modify(*n, a0.clone())),
            ] {
                let got = abel_limit(&v);
                if got != base {
                    return Err(format!("{name}: {base} became {got}"));
                }
            }
            Ok(())
        },
    );
    tally(r, "linearity", cases.len(), |i| {
        let (s, t, _, c, _) = &cases[i];
        match (abel_limit(s), abel_limit(t)) {
            (ExtLimit::Finite(x), ExtLimit::Finite(y)) => {
                let got = abel_limit(&s.add(&t.scale(c)));
                let want = ExtLimit::Finite(x + c * y);
                (got == want)
                    .then_some(())
                    .ok_or_else(|| format!("{got} vs {want}"))
            }
            _ => Ok(()),
        }
    });
    tally(r, "classification hierarchy", cases.len(), |i| {
        let c = classify_seq(&cases[i].0).map_err(|e| e.to_string())?;
        (!c.controlled_absolute_growth || c.controlled_growth)
            .then_some(())
            .ok_or_else(|| format!("{c:?}"))
    });
}
