//! Diagnostics drawn from the two theorems this library turns into
//! checks.
//!
//! For a 3-manifold pair with twisted torsion τ and representation
//! dimension k: deg(τ) ≤ k·‖φ‖_T always (so ceil(deg/k) is a certified
//! lower bound for the Thurston norm), and a fibered pair has monic τ
//! with deg(τ) = k·‖φ‖_T exactly. The obstruction logic applies the
//! second statement contrapositively; "no obstruction" never asserts
//! fiberedness.
//!
//! Mapping tori of free-group automorphisms are the constructive test
//! bed: they are fibered by construction, their presentations have
//! deficiency 1, and a closed determinant formula computes their
//! torsion independently of the Wada engine.

use crate::algebra::{ExactMatrix, LaurentPolynomial, ScalarMatrix};
use crate::group::{fox_derivative, FreeWord, GroupPresentation};
use crate::rep::{TwistData, UnitSpec};
use crate::torsion::TorsionValue;
use crate::{Error, Result};

/// Verdict on whether some representative of the torsion value is a
/// quotient of polynomials with ±1 outer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monicity {
    Monic,
    NotMonic,
    /// The outer coefficients could only be fixed by a unit outside the
    /// bounded search (or the unit group is unknown).
    Unknown,
}

/// Decide monicity under the value's unit ambiguity ±u·t^m.
///
/// A single unit scales both outer coefficients of the numerator, so
/// monicity forces leading = ±trailing in both parts; that test is
/// decisive regardless of the unit spec. What remains is membership of
/// the trailing coefficients in the unit group, searched up to
/// `search_bound`; an inconclusive search degrades to `Unknown`, never
/// to a wrong verdict.
pub fn monicity_verdict(v: &TorsionValue, search_bound: u32) -> Monicity {
    if v.is_zero() {
        return Monicity::NotMonic;
    }
    let num = v.value().numerator();
    let den = v.value().denominator();
    let (a, b) = (
        num.trailing_coefficient().unwrap(),
        num.leading_coefficient().unwrap(),
    );
    let (c, d) = (
        den.trailing_coefficient().unwrap(),
        den.leading_coefficient().unwrap(),
    );
    if (*b != *a && *b != a.neg()) || (*d != *c && *d != c.neg()) {
        return Monicity::NotMonic;
    }
    if a.is_plus_minus_one() && c.is_plus_minus_one() {
        return Monicity::Monic;
    }
    match v.units() {
        UnitSpec::PlusMinusOne => Monicity::NotMonic,
        UnitSpec::Unknown => Monicity::Unknown,
        UnitSpec::GeneratedBy(_) => {
            if v.units().allows(a, search_bound) && v.units().allows(c, search_bound) {
                Monicity::Monic
            } else {
                Monicity::Unknown
            }
        }
    }
}

/// Certified lower bound for the Thurston norm: ceil(deg(τ)/k), or
/// `None` when τ = 0 (the degree inequality has no content then).
pub fn norm_lower_bound(v: &TorsionValue) -> Option<i64> {
    let degree = v.degree()?;
    let k = v.k() as i64;
    Some(degree.div_euclid(k) + i64::from(degree.rem_euclid(k) != 0))
}

/// Why fiberedness is obstructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObstructionReason {
    /// τ = 0, but fibered pairs have monic (hence nonzero) torsion.
    ZeroTorsion,
    /// τ is decisively not monic.
    NonMonic,
    /// deg(τ) differs from k·‖φ‖_T for the supplied norm.
    DegreeMismatch { degree: i64, expected: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberedVerdict {
    Obstructed(ObstructionReason),
    /// The checks passed. This does NOT assert the pair is fibered.
    NoObstruction,
}

/// Contrapositive fiberedness test. `known_norm`, when supplied, adds
/// the degree criterion deg(τ) = k·‖φ‖_T.
pub fn fibered_obstruction(
    v: &TorsionValue,
    search_bound: u32,
    known_norm: Option<i64>,
) -> FiberedVerdict {
    if v.is_zero() {
        return FiberedVerdict::Obstructed(ObstructionReason::ZeroTorsion);
    }
    if monicity_verdict(v, search_bound) == Monicity::NotMonic {
        return FiberedVerdict::Obstructed(ObstructionReason::NonMonic);
    }
    if let Some(norm) = known_norm {
        let degree = v.degree().expect("nonzero value has a degree");
        let expected = v.k() as i64 * norm;
        if degree != expected {
            return FiberedVerdict::Obstructed(ObstructionReason::DegreeMismatch {
                degree,
                expected,
            });
        }
    }
    FiberedVerdict::NoObstruction
}

/// Everything the theorems say about one torsion value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagnosticsReport {
    pub torsion: TorsionValue,
    pub degree: Option<i64>,
    pub monic: Monicity,
    pub norm_lower_bound: Option<i64>,
    pub fibered: FiberedVerdict,
}

pub fn diagnostics(
    torsion: TorsionValue,
    search_bound: u32,
    known_norm: Option<i64>,
) -> DiagnosticsReport {
    DiagnosticsReport {
        degree: torsion.degree(),
        monic: monicity_verdict(&torsion, search_bound),
        norm_lower_bound: norm_lower_bound(&torsion),
        fibered: fibered_obstruction(&torsion, search_bound, known_norm),
        torsion,
    }
}

/// Do two torsion values agree up to the allowed indeterminacy ±u·t^m?
///
/// Both are canonical, so they can only differ by a constant scaling of
/// the numerator; that constant must be an allowed unit (searched up to
/// `search_bound`). Two zeros agree; `a`'s unit spec arbitrates.
pub fn torsion_values_agree(a: &TorsionValue, b: &TorsionValue, search_bound: u32) -> bool {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return true,
        (true, false) | (false, true) => return false,
        _ => {}
    }
    if a.value().denominator() != b.value().denominator() {
        return false;
    }
    match a
        .value()
        .numerator()
        .monomial_quotient(b.value().numerator())
    {
        Some((0, ratio)) => a.units().allows(&ratio, search_bound),
        _ => false,
    }
}

/// A free-group automorphism presented by generator images, defining
/// the mapping torus (Σ×[0,2])/(x,0)∼(f(x),2) of a once-punctured-ish
/// fiber with free π₁ of rank n ≥ 2. The fiber norm is χ_− = n − 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyData {
    names: Vec<String>,
    images: Vec<FreeWord>,
    mu_name: String,
}

impl MonodromyData {
    pub fn new(names: Vec<String>, images: Vec<FreeWord>, mu_name: String) -> Result<Self> {
        let n = names.len();
        if n < 2 {
            return Err(Error::RankTooSmall { rank: n });
        }
        if images.len() != n {
            return Err(Error::ImageCountMismatch {
                got: images.len(),
                expected: n,
            });
        }
        // Reuse presentation validation for name hygiene (μ included).
        let mut all_names = names.clone();
        all_names.push(mu_name.clone());
        GroupPresentation::new(all_names, vec![])?;
        for img in &images {
            if let Some(max) = img.max_generator() {
                if max >= n {
                    return Err(Error::GeneratorIndexOutOfRange {
                        index: max,
                        count: n,
                    });
                }
            }
        }
        let det = abelianized_determinant(&images, n);
        if det != 1 && det != -1 {
            return Err(Error::NotAutomorphism { det });
        }
        Ok(MonodromyData {
            names,
            images,
            mu_name,
        })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// χ_− of the fiber: a compact surface with boundary and free π₁
    /// of rank n has χ = 1 − n.
    pub fn fiber_norm(&self) -> i64 {
        self.names.len() as i64 - 1
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn mu_name(&self) -> &str {
        &self.mu_name
    }

    pub fn image(&self, i: usize) -> &FreeWord {
        &self.images[i]
    }
}

/// Integer determinant of the abelianization of f (exponent-sum
/// matrix). Necessary for f to be an automorphism; ±1 is required.
fn abelianized_determinant(images: &[FreeWord], n: usize) -> i64 {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| images[i].exponent_sum(j)).collect())
        .collect();
    // Fraction-free elimination keeps everything integral.
    let mut det_num: i64 = 1;
    let mut det_den: i64 = 1;
    for k in 0..n {
        let Some(pivot) = (k..n).find(|&r| m[r][k] != 0) else {
            return 0;
        };
        if pivot != k {
            m.swap(pivot, k);
            det_num = -det_num;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = m[k][k] * m[i][j] - m[i][k] * m[k][j];
            }
            m[i][k] = 0;
        }
        det_num *= m[k][k];
        if k + 1 < n {
            let p = m[k][k];
            det_den *= p.pow((n - k - 1) as u32);
        }
    }
    det_num / det_den
}

/// Present the mapping torus: generators x_1…x_n, μ; relators
/// μ x_i μ^{-1} f(x_i)^{-1}; φ(x_i) = 0, φ(μ) = 1. Always has
/// deficiency 1.
pub fn mapping_torus_presentation(m: &MonodromyData) -> (GroupPresentation, Vec<i64>) {
    let n = m.rank();
    let mu = n;
    let mut names = m.names.to_vec();
    names.push(m.mu_name.clone());
    let relators: Vec<FreeWord> = (0..n)
        .map(|i| {
            let conj = FreeWord::from_letters([(mu, 1), (i, 1), (mu, -1)]);
            conj.mul(&m.images[i].inverse())
        })
        .collect();
    let pres = GroupPresentation::new(names, relators)
        .expect("validated by MonodromyData construction");
    let mut phi = vec![0i64; n];
    phi.push(1);
    (pres, phi)
}

/// Torsion of the mapping torus by the closed formula
/// det(t·Dμ − J) / det(t·α(μ) − I), where Dμ is block-diagonal α(μ)
/// and J is the Fox Jacobian of f pushed through α (constant blocks:
/// φ vanishes on the fiber).
///
/// `images` are the α-images of x_1…x_n and μ, in that order; they are
/// validated against the mapping-torus presentation first.
pub fn fibered_torsion_formula(
    m: &MonodromyData,
    images: Vec<ScalarMatrix>,
) -> Result<TorsionValue> {
    let (pres, phi) = mapping_torus_presentation(m);
    let twist = TwistData::new(pres, phi, images)?;
    let n = m.rank();
    let k = twist.k();
    let domain = twist.domain();

    let grid: Vec<Vec<_>> = (0..n)
        .map(|i| (0..n).map(|j| fox_derivative(&m.images[i], j)).collect())
        .collect();
    let jacobian = twist.matrix_tensor_apply(&grid);

    let alpha_mu = twist.image(n);
    let d_mu = ExactMatrix::from_fn(domain, n * k, n * k, |i, j| {
        if i / k == j / k {
            LaurentPolynomial::monomial(domain, 1, alpha_mu.get(i % k, j % k).clone())
        } else {
            LaurentPolynomial::zero(domain)
        }
    });
    let numerator = d_mu.sub(&jacobian).det_exact()?;

    let denominator = alpha_mu
        .to_laurent(1)
        .sub(&ExactMatrix::identity(domain, k))
        .det_exact()?;

    TorsionValue::from_fraction(
        &numerator,
        &denominator,
        twist.determinant_image_spec(0),
        k,
        None,
    )
}
