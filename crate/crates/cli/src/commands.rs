//! The four command bodies, free of terminal concerns so tests can
//! call them directly.

use std::collections::BTreeMap;

use retor_core::algebra::ScalarMatrix;
use retor_core::rep::TwistData;
use retor_core::topology::{
    diagnostics, fibered_torsion_formula, mapping_torus_presentation, torsion_values_agree,
};
use retor_core::torsion::{all_selections_torsion, turaev_torsion, wada_torsion};

use crate::report::{
    diagnostics_json, sweep_json, turaev_outcome_fields, DiagnosticsJson, MappingTorusJson,
    SelectionJson, TuraevJson,
};
use crate::schema::{ComplexFile, EngineChoice, MonodromyFile, OptionsSection, ProblemFile};
use crate::CliError;

pub const DEFAULT_SEARCH_BOUND: u32 = 6;

/// Values from command-line flags; they win over the file's options.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub search_bound: Option<u32>,
    pub known_norm: Option<i64>,
    pub engine: Option<EngineChoice>,
    pub verify_selections: bool,
}

fn search_bound(overrides: &Overrides, options: &OptionsSection) -> u32 {
    overrides
        .search_bound
        .or(options.search_bound)
        .unwrap_or(DEFAULT_SEARCH_BOUND)
}

fn known_norm(overrides: &Overrides, options: &OptionsSection) -> Option<i64> {
    overrides.known_norm.or(options.known_norm)
}

pub fn run_torsion(file: &ProblemFile, overrides: &Overrides) -> Result<DiagnosticsJson, CliError> {
    let twist = file.build()?;
    let bound = search_bound(overrides, &file.options);
    let norm = known_norm(overrides, &file.options);
    let value = wada_torsion(&twist)?;
    let report = diagnostics(value, bound, norm);
    Ok(diagnostics_json(&report, &twist))
}

pub fn run_mapping_torus(
    file: &MonodromyFile,
    overrides: &Overrides,
) -> Result<MappingTorusJson, CliError> {
    let (monodromy, alpha) = file.build()?;
    let bound = search_bound(overrides, &file.options);
    // The mapping torus is fibered with fiber norm n - 1; that is the
    // default reference norm for the degree check.
    let norm = known_norm(overrides, &file.options).or(Some(monodromy.fiber_norm()));
    let engine = overrides
        .engine
        .or(file.options.engine)
        .unwrap_or(EngineChoice::Both);

    let (pres, phi) = mapping_torus_presentation(&monodromy);
    let images: Vec<ScalarMatrix> = match alpha {
        Some(images) => images,
        None => {
            let domain = retor_core::algebra::CoefficientDomain::Integers;
            (0..pres.generator_count())
                .map(|_| ScalarMatrix::identity(domain, 1))
                .collect()
        }
    };
    let twist = TwistData::new(pres, phi, images)?;

    let wada_arm = if matches!(engine, EngineChoice::Wada | EngineChoice::Both) {
        let value = wada_torsion(&twist)?;
        Some((value.clone(), diagnostics(value, bound, norm)))
    } else {
        None
    };
    let fibered_arm = if matches!(engine, EngineChoice::Fibered | EngineChoice::Both) {
        let images: Vec<ScalarMatrix> = (0..twist.presentation().generator_count())
            .map(|g| twist.image(g).clone())
            .collect();
        let value = fibered_torsion_formula(&monodromy, images)?;
        Some((value.clone(), diagnostics(value, bound, norm)))
    } else {
        None
    };

    let agreement = match (&wada_arm, &fibered_arm) {
        (Some((w, _)), Some((f, _))) => Some(torsion_values_agree(w, f, bound)),
        _ => None,
    };

    let names = twist.presentation().generator_names().to_vec();
    let relators = twist
        .presentation()
        .relators()
        .iter()
        .map(|r| r.to_text(&names))
        .collect();
    let phi_map: BTreeMap<String, i64> = names
        .iter()
        .cloned()
        .zip(twist.phi().iter().copied())
        .collect();

    Ok(MappingTorusJson {
        generators: names,
        relators,
        phi: phi_map,
        fiber_norm: monodromy.fiber_norm(),
        wada: wada_arm.map(|(_, report)| diagnostics_json(&report, &twist)),
        fibered_formula: fibered_arm.map(|(_, report)| diagnostics_json(&report, &twist)),
        agreement,
    })
}

pub fn run_turaev(file: &ComplexFile, overrides: &Overrides) -> Result<TuraevJson, CliError> {
    let (complex, selection) = file.build()?;
    let dims = [complex.n3(), complex.n2(), complex.n1(), complex.n0()];
    let domain = complex.domain().to_string();
    match selection {
        Some(sel) => {
            let outcome = turaev_torsion(&complex, &sel)?;
            let mut json = TuraevJson {
                domain,
                dimensions: dims,
                outcome: String::new(),
                numerator: None,
                denominator: None,
                reason: None,
                selection: Some(SelectionJson::from(&sel)),
                selections_enumerated: None,
                all_agree_up_to_sign: None,
            };
            turaev_outcome_fields(&mut json, &outcome);
            Ok(json)
        }
        None => {
            let verify = overrides.verify_selections
                || file.options.verify_selections.unwrap_or(false);
            let sweep = all_selections_torsion(&complex, verify);
            Ok(sweep_json(&sweep, domain, dims))
        }
    }
}
