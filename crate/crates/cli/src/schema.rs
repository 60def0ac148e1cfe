//! Input file formats. One self-describing JSON shape per command;
//! Laurent entries are accepted both as exponent→coefficient maps and
//! as strings like "t^-1 + 2 - t^3". Conversion into core objects
//! happens here so every command sees validated domain types.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use retor_core::algebra::{CoefficientDomain, ExactMatrix, LaurentPolynomial, ScalarMatrix};
use retor_core::group::GroupPresentation;
use retor_core::rep::TwistData;
use retor_core::topology::MonodromyData;
use retor_core::torsion::{BasedChainComplex, Selection};

use crate::CliError;

/// Coefficient ring tag: "integers", "rationals", or {"prime_field": p}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingTag {
    Named(String),
    PrimeField { prime_field: u64 },
}

impl Default for RingTag {
    fn default() -> Self {
        RingTag::Named("integers".to_string())
    }
}

impl RingTag {
    pub fn to_domain(&self) -> Result<CoefficientDomain, CliError> {
        let domain = match self {
            RingTag::Named(name) => match name.as_str() {
                "integers" => CoefficientDomain::Integers,
                "rationals" => CoefficientDomain::Rationals,
                other => {
                    return Err(CliError::schema(format!(
                        "ring: unknown tag {other:?} (expected \"integers\", \"rationals\", or {{\"prime_field\": p}})"
                    )))
                }
            },
            RingTag::PrimeField { prime_field } => CoefficientDomain::PrimeField(*prime_field),
        };
        domain.validate().map_err(CliError::Input)?;
        Ok(domain)
    }
}

/// A scalar entry: bare integer or ring literal string like "2/3".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarLiteral {
    Int(i64),
    Text(String),
}

impl ScalarLiteral {
    fn parse(&self, domain: CoefficientDomain, at: &str) -> Result<retor_core::algebra::Coeff, CliError> {
        match self {
            ScalarLiteral::Int(n) => Ok(domain.from_i64(*n)),
            ScalarLiteral::Text(text) => domain
                .parse_scalar(text)
                .map_err(|e| CliError::schema(format!("{at}: {e}"))),
        }
    }
}

/// A Laurent polynomial entry: exponent→coefficient map or term string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LaurentLiteral {
    Map(BTreeMap<i64, ScalarLiteral>),
    Text(String),
}

impl LaurentLiteral {
    pub fn parse(&self, domain: CoefficientDomain, at: &str) -> Result<LaurentPolynomial, CliError> {
        match self {
            LaurentLiteral::Map(map) => {
                let mut terms = BTreeMap::new();
                for (&exponent, literal) in map {
                    let c = literal.parse(domain, &format!("{at}[t^{exponent}]"))?;
                    if !c.is_zero() {
                        terms.insert(exponent, c);
                    }
                }
                Ok(LaurentPolynomial::from_map(domain, terms))
            }
            LaurentLiteral::Text(text) => LaurentPolynomial::parse(domain, text)
                .map_err(|e| CliError::schema(format!("{at}: {e}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationSection {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationSection {
    #[serde(default)]
    pub ring: RingTag,
    pub k: usize,
    pub images: BTreeMap<String, Vec<Vec<ScalarLiteral>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EngineChoice {
    Wada,
    Fibered,
    Both,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OptionsSection {
    pub search_bound: Option<u32>,
    pub known_norm: Option<i64>,
    pub engine: Option<EngineChoice>,
    pub verify_selections: Option<bool>,
}

/// Problem file for `torsion`: presentation + phi + representation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub presentation: PresentationSection,
    pub phi: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<RepresentationSection>,
    #[serde(default)]
    pub options: OptionsSection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonodromySection {
    pub generators: Vec<String>,
    pub images: Vec<String>,
    #[serde(default = "default_circle_generator")]
    pub circle_generator: String,
}

fn default_circle_generator() -> String {
    "mu".to_string()
}

/// Input for `mapping-torus`: the automorphism plus a representation of
/// the mapping-torus group (fiber generators and the circle generator).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonodromyFile {
    pub monodromy: MonodromySection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<RepresentationSection>,
    #[serde(default)]
    pub options: OptionsSection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSection {
    #[serde(default = "default_complex_ring")]
    pub ring: RingTag,
    /// [n3, n2, n1, n0]; explicit because empty matrix rows carry no
    /// column information in JSON.
    pub dimensions: [usize; 4],
    pub b3: Vec<Vec<LaurentLiteral>>,
    pub b2: Vec<Vec<LaurentLiteral>>,
    pub b1: Vec<Vec<LaurentLiteral>>,
}

fn default_complex_ring() -> RingTag {
    RingTag::Named("rationals".to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectionSection {
    pub rows3: Vec<usize>,
    pub cols1: Vec<usize>,
}

/// Input for `turaev`: a based 4-term complex, optionally with an
/// explicit selection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub complex: ComplexSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selection: Option<SelectionSection>,
    #[serde(default)]
    pub options: OptionsSection,
}

fn build_presentation(section: &PresentationSection) -> Result<GroupPresentation, CliError> {
    GroupPresentation::parse(section.generators.clone(), &section.relators)
        .map_err(|e| CliError::schema(format!("presentation: {e}")))
}

fn phi_vector(
    phi: &BTreeMap<String, i64>,
    generators: &[String],
) -> Result<Vec<i64>, CliError> {
    for name in phi.keys() {
        if !generators.contains(name) {
            return Err(CliError::schema(format!(
                "phi: {name:?} is not a generator"
            )));
        }
    }
    generators
        .iter()
        .map(|name| {
            phi.get(name).copied().ok_or_else(|| {
                CliError::schema(format!("phi: missing value for generator {name:?}"))
            })
        })
        .collect()
}

fn build_images(
    section: &RepresentationSection,
    generators: &[String],
) -> Result<(CoefficientDomain, Vec<ScalarMatrix>), CliError> {
    let domain = section.ring.to_domain()?;
    for name in section.images.keys() {
        if !generators.contains(name) {
            return Err(CliError::schema(format!(
                "representation.images: {name:?} is not a generator"
            )));
        }
    }
    let mut images = Vec::with_capacity(generators.len());
    for name in generators {
        let rows = section.images.get(name).ok_or_else(|| {
            CliError::schema(format!(
                "representation.images: missing matrix for generator {name:?}"
            ))
        })?;
        if rows.len() != section.k || rows.iter().any(|r| r.len() != section.k) {
            return Err(CliError::schema(format!(
                "representation.images.{name}: expected a {k}x{k} matrix",
                k = section.k
            )));
        }
        let mut parsed = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, entry) in row.iter().enumerate() {
                out.push(entry.parse(domain, &format!("representation.images.{name}[{i}][{j}]"))?);
            }
            parsed.push(out);
        }
        images.push(ScalarMatrix::from_rows(domain, parsed).map_err(CliError::Input)?);
    }
    Ok((domain, images))
}

impl ProblemFile {
    /// Validate and assemble the twist data this file describes.
    pub fn build(&self) -> Result<TwistData, CliError> {
        let pres = build_presentation(&self.presentation)?;
        let phi = phi_vector(&self.phi, pres.generator_names())?;
        match &self.representation {
            None => TwistData::trivial(pres, phi).map_err(CliError::from),
            Some(section) => {
                let (_, images) = build_images(section, &self.presentation.generators)?;
                TwistData::new(pres, phi, images).map_err(CliError::from)
            }
        }
    }
}

impl MonodromyFile {
    /// Validate the automorphism and assemble the representation images
    /// in presentation order (fiber generators, then the circle one).
    pub fn build(&self) -> Result<(MonodromyData, Option<Vec<ScalarMatrix>>), CliError> {
        let names = self.monodromy.generators.clone();
        if self.monodromy.images.len() != names.len() {
            return Err(CliError::schema(format!(
                "monodromy: {} generators but {} images",
                names.len(),
                self.monodromy.images.len()
            )));
        }
        let images = self
            .monodromy
            .images
            .iter()
            .map(|text| {
                retor_core::group::FreeWord::parse(text, &names)
                    .map_err(|e| CliError::schema(format!("monodromy.images: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let data = MonodromyData::new(names, images, self.monodromy.circle_generator.clone())
            .map_err(CliError::from)?;
        let alpha = match &self.representation {
            None => None,
            Some(section) => {
                let mut all_names = self.monodromy.generators.clone();
                all_names.push(self.monodromy.circle_generator.clone());
                let (_, images) = build_images(section, &all_names)?;
                Some(images)
            }
        };
        Ok((data, alpha))
    }
}

impl ComplexFile {
    pub fn build(&self) -> Result<(BasedChainComplex, Option<Selection>), CliError> {
        let domain = self.complex.ring.to_domain()?;
        let [n3, n2, n1, n0] = self.complex.dimensions;
        let b3 = parse_matrix(domain, &self.complex.b3, n2, n3, "complex.b3")?;
        let b2 = parse_matrix(domain, &self.complex.b2, n1, n2, "complex.b2")?;
        let b1 = parse_matrix(domain, &self.complex.b1, n0, n1, "complex.b1")?;
        let complex = BasedChainComplex::new(b3, b2, b1).map_err(CliError::from)?;
        let selection = match &self.selection {
            None => None,
            Some(s) => Some(
                Selection::new(&complex, s.rows3.clone(), s.cols1.clone())
                    .map_err(CliError::from)?,
            ),
        };
        Ok((complex, selection))
    }
}

fn parse_matrix(
    domain: CoefficientDomain,
    rows: &[Vec<LaurentLiteral>],
    expect_rows: usize,
    expect_cols: usize,
    at: &str,
) -> Result<ExactMatrix, CliError> {
    if rows.len() != expect_rows || rows.iter().any(|r| r.len() != expect_cols) {
        return Err(CliError::schema(format!(
            "{at}: expected a {expect_rows}x{expect_cols} matrix"
        )));
    }
    let mut parsed = Vec::with_capacity(expect_rows);
    for (i, row) in rows.iter().enumerate() {
        let mut out = Vec::with_capacity(expect_cols);
        for (j, entry) in row.iter().enumerate() {
            out.push(entry.parse(domain, &format!("{at}[{i}][{j}]"))?);
        }
        parsed.push(out);
    }
    if expect_rows == 0 || expect_cols == 0 {
        return Ok(ExactMatrix::zero(domain, expect_rows, expect_cols));
    }
    Ok(ExactMatrix::from_rows(domain, parsed))
}

/// Parse a JSON input file, mapping serde errors (with their line and
/// column pointers) into the schema error class.
pub fn parse_input<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::schema(format!("input: {e}")))
}
