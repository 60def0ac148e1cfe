//! Bundled example corpus: fixture inputs with expected canonical
//! outputs and the norm/fiberedness metadata needed to exercise both
//! theorems. Entries run independently, so the corpus command may
//! evaluate them in parallel; rows keep the bundled order either way.

use std::collections::BTreeMap;

use serde::Deserialize;

use retor_core::topology::diagnostics;
use retor_core::torsion::{all_selections_torsion, wada_torsion, TuraevOutcome};

use crate::commands::{run_mapping_torus, Overrides, DEFAULT_SEARCH_BOUND};
use crate::report::{laurent_map, MonicJson};
use crate::schema::{parse_input, ComplexFile, MonodromyFile, ProblemFile};
use crate::CliError;

pub const ENTRIES: &[(&str, &str)] = &[
    (
        "trefoil_trivial",
        include_str!("../corpus/trefoil_trivial.json"),
    ),
    ("trefoil_sl2z", include_str!("../corpus/trefoil_sl2z.json")),
    (
        "figure8_trivial",
        include_str!("../corpus/figure8_trivial.json"),
    ),
    (
        "figure8_riley_f7",
        include_str!("../corpus/figure8_riley_f7.json"),
    ),
    (
        "knot5_2_trivial",
        include_str!("../corpus/knot5_2_trivial.json"),
    ),
    (
        "mt_trefoil_trivial",
        include_str!("../corpus/mt_trefoil_trivial.json"),
    ),
    (
        "mt_rank2_twisted",
        include_str!("../corpus/mt_rank2_twisted.json"),
    ),
    (
        "complex_contractible",
        include_str!("../corpus/complex_contractible.json"),
    ),
    (
        "complex_laurent",
        include_str!("../corpus/complex_laurent.json"),
    ),
];

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedFixture {
    pub status: String,
    #[serde(default)]
    pub numerator: Option<BTreeMap<i64, String>>,
    #[serde(default)]
    pub denominator: Option<BTreeMap<i64, String>>,
    #[serde(default)]
    pub degree: Option<i64>,
    #[serde(default)]
    pub monic: Option<MonicJson>,
    #[serde(default)]
    pub norm_lower_bound: Option<i64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    #[serde(default)]
    pub fibered: bool,
    #[serde(default)]
    pub known_norm: Option<i64>,
    #[serde(default)]
    pub problem: Option<ProblemFile>,
    #[serde(default)]
    pub mapping_torus: Option<MonodromyFile>,
    #[serde(default)]
    pub complex: Option<ComplexFile>,
    pub expected: ExpectedFixture,
}

impl CorpusEntry {
    pub fn kind(&self) -> &'static str {
        if self.problem.is_some() {
            "problem"
        } else if self.mapping_torus.is_some() {
            "torus"
        } else {
            "complex"
        }
    }
}

pub fn load_entries() -> Result<Vec<CorpusEntry>, CliError> {
    ENTRIES
        .iter()
        .map(|(name, text)| {
            let entry: CorpusEntry = parse_input(text)
                .map_err(|e| CliError::internal(format!("bundled corpus {name}: {e}")))?;
            if entry.name != *name {
                return Err(CliError::internal(format!(
                    "bundled corpus {name}: entry names itself {:?}",
                    entry.name
                )));
            }
            let payloads = usize::from(entry.problem.is_some())
                + usize::from(entry.mapping_torus.is_some())
                + usize::from(entry.complex.is_some());
            if payloads != 1 {
                return Err(CliError::internal(format!(
                    "bundled corpus {name}: expected exactly one payload, found {payloads}"
                )));
            }
            Ok(entry)
        })
        .collect()
}

/// One table row plus its verdict.
#[derive(Debug, Clone)]
pub struct CorpusRow {
    pub name: String,
    pub kind: &'static str,
    pub k: usize,
    pub degree: Option<i64>,
    pub monic: Option<MonicJson>,
    pub bound: Option<i64>,
    pub norm: Option<i64>,
    pub failures: Vec<String>,
}

#[allow(clippy::too_many_arguments)]
fn check_fixture(
    expected: &ExpectedFixture,
    status: &str,
    numerator: Option<&BTreeMap<i64, String>>,
    denominator: Option<&BTreeMap<i64, String>>,
    degree: Option<i64>,
    monic: Option<MonicJson>,
    bound: Option<i64>,
    failures: &mut Vec<String>,
) {
    if expected.status != status {
        failures.push(format!(
            "fixture status: expected {:?}, got {:?}",
            expected.status, status
        ));
        return;
    }
    if let Some(e) = &expected.numerator {
        if numerator != Some(e) {
            failures.push("fixture numerator mismatch".to_string());
        }
    }
    if let Some(e) = &expected.denominator {
        if denominator != Some(e) {
            failures.push("fixture denominator mismatch".to_string());
        }
    }
    if expected.degree.is_some() && expected.degree != degree {
        failures.push(format!(
            "fixture degree: expected {:?}, got {:?}",
            expected.degree, degree
        ));
    }
    if expected.monic.is_some() && expected.monic != monic {
        failures.push(format!(
            "fixture monicity: expected {:?}, got {:?}",
            expected.monic, monic
        ));
    }
    if expected.norm_lower_bound.is_some() && expected.norm_lower_bound != bound {
        failures.push(format!(
            "fixture norm bound: expected {:?}, got {:?}",
            expected.norm_lower_bound, bound
        ));
    }
}

/// Theorem checks shared by presentation and mapping-torus entries:
/// the bound never exceeds a recorded norm, and fibered entries have
/// nonzero monic torsion of the exact degree.
fn check_theorems(
    entry: &CorpusEntry,
    k: usize,
    is_zero: bool,
    degree: Option<i64>,
    monic: Option<MonicJson>,
    bound: Option<i64>,
    failures: &mut Vec<String>,
) {
    if let (Some(norm), Some(b)) = (entry.known_norm, bound) {
        if b > norm {
            failures.push(format!(
                "norm bound {b} exceeds recorded Thurston norm {norm}"
            ));
        }
    }
    if entry.fibered {
        if is_zero {
            failures.push("fibered entry has zero torsion".to_string());
        }
        if monic == Some(MonicJson::NotMonic) {
            failures.push("fibered entry has non-monic torsion".to_string());
        }
        if let (Some(norm), Some(d)) = (entry.known_norm, degree) {
            let expected = k as i64 * norm;
            if d != expected {
                failures.push(format!(
                    "fibered entry degree {d} != k*norm = {expected}"
                ));
            }
        }
    }
}

pub fn run_entry(entry: &CorpusEntry) -> CorpusRow {
    let mut failures = Vec::new();
    let mut row = CorpusRow {
        name: entry.name.clone(),
        kind: entry.kind(),
        k: 1,
        degree: None,
        monic: None,
        bound: None,
        norm: entry.known_norm,
        failures: Vec::new(),
    };

    let result = (|| -> Result<(), CliError> {
        if let Some(problem) = &entry.problem {
            let twist = problem.build()?;
            let value = wada_torsion(&twist)?;
            let report = diagnostics(value, DEFAULT_SEARCH_BOUND, entry.known_norm);
            row.k = twist.k();
            row.degree = report.degree;
            row.monic = Some(report.monic.into());
            row.bound = report.norm_lower_bound;
            check_fixture(
                &entry.expected,
                if report.torsion.is_zero() { "zero" } else { "value" },
                (!report.torsion.is_zero())
                    .then(|| laurent_map(report.torsion.value().numerator()))
                    .as_ref(),
                (!report.torsion.is_zero())
                    .then(|| laurent_map(report.torsion.value().denominator()))
                    .as_ref(),
                row.degree,
                row.monic,
                row.bound,
                &mut failures,
            );
            check_theorems(
                entry,
                row.k,
                report.torsion.is_zero(),
                row.degree,
                row.monic,
                row.bound,
                &mut failures,
            );
        } else if let Some(file) = &entry.mapping_torus {
            let json = run_mapping_torus(file, &Overrides::default())?;
            let wada = json
                .wada
                .as_ref()
                .ok_or_else(|| CliError::internal("corpus torus entry must run wada"))?;
            row.k = wada.k;
            row.degree = wada.degree;
            row.monic = Some(wada.monic);
            row.bound = wada.norm_lower_bound;
            if json.agreement != Some(true) {
                failures.push("engines disagree on the mapping torus".to_string());
            }
            check_fixture(
                &entry.expected,
                &wada.torsion.status,
                wada.torsion.numerator.as_ref(),
                wada.torsion.denominator.as_ref(),
                row.degree,
                row.monic,
                row.bound,
                &mut failures,
            );
            check_theorems(
                entry,
                row.k,
                wada.torsion.status == "zero",
                row.degree,
                row.monic,
                row.bound,
                &mut failures,
            );
        } else if let Some(file) = &entry.complex {
            let (complex, _) = file.build()?;
            let sweep = all_selections_torsion(&complex, true);
            if sweep.agreement == Some(false) {
                failures.push("selections disagree beyond sign".to_string());
            }
            match &sweep.outcome {
                TuraevOutcome::Value(value) => {
                    row.degree = value.degree();
                    check_fixture(
                        &entry.expected,
                        "value",
                        Some(&laurent_map(value.numerator())),
                        Some(&laurent_map(value.denominator())),
                        row.degree,
                        None,
                        None,
                        &mut failures,
                    );
                }
                TuraevOutcome::Zero => {
                    check_fixture(
                        &entry.expected,
                        "zero",
                        None,
                        None,
                        None,
                        None,
                        None,
                        &mut failures,
                    );
                }
                TuraevOutcome::SelectionFailed { reason } => {
                    failures.push(format!("sweep ended in selection failure: {reason}"));
                }
            }
        }
        Ok(())
    })();
    if let Err(e) = result {
        failures.push(e.to_string());
    }

    row.failures = failures;
    row
}

/// Run (a filtered slice of) the corpus. Rows come back in bundled
/// order regardless of evaluation order.
pub fn run_corpus(filter: Option<&str>, fibered_only: bool) -> Result<Vec<CorpusRow>, CliError> {
    let entries: Vec<CorpusEntry> = load_entries()?
        .into_iter()
        .filter(|e| filter.is_none_or(|f| e.name.contains(f)))
        .filter(|e| !fibered_only || e.fibered)
        .collect();
    Ok(evaluate(&entries))
}

#[cfg(feature = "parallel")]
fn evaluate(entries: &[CorpusEntry]) -> Vec<CorpusRow> {
    use rayon::prelude::*;
    entries.par_iter().map(run_entry).collect()
}

#[cfg(not(feature = "parallel"))]
fn evaluate(entries: &[CorpusEntry]) -> Vec<CorpusRow> {
    entries.iter().map(run_entry).collect()
}

fn cell<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

fn monic_cell(m: &Option<MonicJson>) -> &'static str {
    match m {
        None => "-",
        Some(MonicJson::Monic) => "monic",
        Some(MonicJson::NotMonic) => "not-monic",
        Some(MonicJson::Unknown) => "unknown",
    }
}

/// Fixed-width table, one row per entry, deterministic bytes.
pub fn render_table(rows: &[CorpusRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<22} {:<8} {:>2} {:>7} {:<10} {:>6} {:>5}  {}\n",
        "name", "kind", "k", "degree", "monic", "bound", "norm", "verdict"
    ));
    for row in rows {
        let verdict = if row.failures.is_empty() {
            "ok".to_string()
        } else {
            format!("FAIL: {}", row.failures.join("; "))
        };
        let k = if row.kind == "complex" {
            "-".to_string()
        } else {
            row.k.to_string()
        };
        out.push_str(&format!(
            "{:<22} {:<8} {:>2} {:>7} {:<10} {:>6} {:>5}  {}\n",
            row.name,
            row.kind,
            k,
            cell(&row.degree),
            monic_cell(&row.monic),
            cell(&row.bound),
            cell(&row.norm),
            verdict
        ));
    }
    let failed = rows.iter().filter(|r| !r.failures.is_empty()).count();
    out.push_str(&format!("{} entries, {} failed\n", rows.len(), failed));
    out
}
