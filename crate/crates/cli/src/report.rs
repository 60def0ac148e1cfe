//! Output formats. Every report is a plain serde struct with sorted
//! maps and fixed field order, so serialization is byte-deterministic;
//! Laurent values always leave in the canonical exponent→coefficient
//! map form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use retor_core::algebra::LaurentPolynomial;
use retor_core::rep::{TwistData, UnitSpec};
use retor_core::topology::{
    DiagnosticsReport, FiberedVerdict, Monicity, ObstructionReason,
};
use retor_core::torsion::{
    Selection, SelectionSweep, TorsionValue, TuraevOutcome, ZeroReason,
};

pub fn laurent_map(p: &LaurentPolynomial) -> BTreeMap<i64, String> {
    p.to_map_literal()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnitsJson {
    PlusMinusOne,
    GeneratedBy(Vec<String>),
    Unknown,
}

impl From<&UnitSpec> for UnitsJson {
    fn from(spec: &UnitSpec) -> Self {
        match spec {
            UnitSpec::PlusMinusOne => UnitsJson::PlusMinusOne,
            UnitSpec::GeneratedBy(gens) => {
                UnitsJson::GeneratedBy(gens.iter().map(|c| c.to_literal()).collect())
            }
            UnitSpec::Unknown => UnitsJson::Unknown,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonicJson {
    Monic,
    NotMonic,
    Unknown,
}

impl From<Monicity> for MonicJson {
    fn from(m: Monicity) -> Self {
        match m {
            Monicity::Monic => MonicJson::Monic,
            Monicity::NotMonic => MonicJson::NotMonic,
            Monicity::Unknown => MonicJson::Unknown,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum FiberedJson {
    NoObstruction,
    Obstructed {
        reason: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expected: Option<i64>,
    },
}

impl From<FiberedVerdict> for FiberedJson {
    fn from(v: FiberedVerdict) -> Self {
        match v {
            FiberedVerdict::NoObstruction => FiberedJson::NoObstruction,
            FiberedVerdict::Obstructed(reason) => match reason {
                ObstructionReason::ZeroTorsion => FiberedJson::Obstructed {
                    reason: "zero-torsion".to_string(),
                    degree: None,
                    expected: None,
                },
                ObstructionReason::NonMonic => FiberedJson::Obstructed {
                    reason: "non-monic".to_string(),
                    degree: None,
                    expected: None,
                },
                ObstructionReason::DegreeMismatch { degree, expected } => {
                    FiberedJson::Obstructed {
                        reason: "degree-mismatch".to_string(),
                        degree: Some(degree),
                        expected: Some(expected),
                    }
                }
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionJson {
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numerator: Option<BTreeMap<i64, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator: Option<BTreeMap<i64, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chosen_column: Option<usize>,
    pub units: UnitsJson,
}

impl From<&TorsionValue> for TorsionJson {
    fn from(v: &TorsionValue) -> Self {
        if v.is_zero() {
            TorsionJson {
                status: "zero".to_string(),
                zero_reason: v.zero_reason().map(|r| {
                    match r {
                        ZeroReason::NonAcyclic => "non-acyclic",
                        ZeroReason::VanishingNumerator => "vanishing-numerator",
                    }
                    .to_string()
                }),
                numerator: None,
                denominator: None,
                chosen_column: v.chosen_column(),
                units: v.units().into(),
            }
        } else {
            TorsionJson {
                status: "value".to_string(),
                zero_reason: None,
                numerator: Some(laurent_map(v.value().numerator())),
                denominator: Some(laurent_map(v.value().denominator())),
                chosen_column: v.chosen_column(),
                units: v.units().into(),
            }
        }
    }
}

/// Full diagnostics for one torsion computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosticsJson {
    pub domain: String,
    pub k: usize,
    pub phi_primitive: bool,
    pub torsion: TorsionJson,
    pub degree: Option<i64>,
    pub monic: MonicJson,
    pub norm_lower_bound: Option<i64>,
    pub fibered: FiberedJson,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

pub fn diagnostics_json(report: &DiagnosticsReport, twist: &TwistData) -> DiagnosticsJson {
    let mut warnings = Vec::new();
    if !twist.phi_primitive() {
        warnings.push(
            "phi is not primitive: the norm and fiberedness statements assume a primitive class"
                .to_string(),
        );
    }
    DiagnosticsJson {
        domain: twist.domain().to_string(),
        k: twist.k(),
        phi_primitive: twist.phi_primitive(),
        torsion: (&report.torsion).into(),
        degree: report.degree,
        monic: report.monic.into(),
        norm_lower_bound: report.norm_lower_bound,
        fibered: report.fibered.into(),
        warnings,
    }
}

/// Mapping-torus report: constructed presentation, per-engine
/// diagnostics, and cross-engine agreement when both ran.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingTorusJson {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    pub phi: BTreeMap<String, i64>,
    pub fiber_norm: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wada: Option<DiagnosticsJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibered_formula: Option<DiagnosticsJson>,
    pub agreement: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionJson {
    pub rows3: Vec<usize>,
    pub cols1: Vec<usize>,
}

impl From<&Selection> for SelectionJson {
    fn from(s: &Selection) -> Self {
        SelectionJson {
            rows3: s.rows3().to_vec(),
            cols1: s.cols1().to_vec(),
        }
    }
}

/// Turaev command report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuraevJson {
    pub domain: String,
    pub dimensions: [usize; 4],
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numerator: Option<BTreeMap<i64, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator: Option<BTreeMap<i64, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selection: Option<SelectionJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selections_enumerated: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub all_agree_up_to_sign: Option<bool>,
}

pub fn turaev_outcome_fields(
    json: &mut TuraevJson,
    outcome: &TuraevOutcome,
) {
    match outcome {
        TuraevOutcome::Value(value) => {
            json.outcome = "value".to_string();
            json.numerator = Some(laurent_map(value.numerator()));
            json.denominator = Some(laurent_map(value.denominator()));
        }
        TuraevOutcome::Zero => {
            json.outcome = "zero".to_string();
            json.reason = Some("not acyclic".to_string());
        }
        TuraevOutcome::SelectionFailed { reason } => {
            json.outcome = "selection-failed".to_string();
            json.reason = Some(reason.clone());
        }
    }
}

pub fn sweep_json(sweep: &SelectionSweep, domain: String, dims: [usize; 4]) -> TuraevJson {
    let mut json = TuraevJson {
        domain,
        dimensions: dims,
        outcome: String::new(),
        numerator: None,
        denominator: None,
        reason: None,
        selection: sweep.selection.as_ref().map(SelectionJson::from),
        selections_enumerated: Some(sweep.enumerated),
        all_agree_up_to_sign: sweep.agreement,
    };
    turaev_outcome_fields(&mut json, &sweep.outcome);
    if sweep.selection.is_none() && sweep.outcome == TuraevOutcome::Zero {
        json.reason = Some("not acyclic: no selection with det A3, det A1 != 0".to_string());
    }
    json
}

/// Serialize any report deterministically: pretty JSON, sorted maps,
/// trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports always serialize");
    text.push('\n');
    text
}
