//! The two torsion engines.
//!
//! Wada's route: a deficiency-1 presentation yields a Fox matrix; after
//! tensoring, delete the lowest column whose (x_j − 1) determinant is
//! nonzero and divide. Turaev's route: a user-supplied based 4-term
//! chain complex and a row/column selection yield the alternating
//! product det(A3)^{-1}·det(A2)·det(A1)^{-1}.
//!
//! Torsion of a non-acyclic complex is 0 by convention. The value 0 has
//! two distinct causes (no valid column/selection at all, or vanishing
//! numerator) and reports keep them apart.

use std::fmt;

use crate::algebra::{
    normalize_value, CoefficientDomain, ExactMatrix, LaurentPolynomial, RationalFunctionValue,
};
use crate::group::fox_derivative;
use crate::rep::{TwistData, UnitSpec};
use crate::{par, Error, Result};

/// Why a torsion value is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroReason {
    /// Every candidate denominator vanished: the complex is not acyclic
    /// and the computation never produced a fraction.
    NonAcyclic,
    /// A valid denominator exists but the numerator determinant is 0
    /// (the complex fails acyclicity one step higher).
    VanishingNumerator,
}

/// A torsion value together with its indeterminacy data.
///
/// Nonzero values are canonical: the underlying fraction is reduced and
/// pinned (see `normalize_value`), and the numerator's leading
/// coefficient is sign-normalized using the ± ambiguity. For
/// plus-minus-one unit specs the representation is therefore a complete
/// invariant: two torsion values are equal up to ±t^k iff the structs
/// are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionValue {
    value: RationalFunctionValue,
    zero_reason: Option<ZeroReason>,
    units: UnitSpec,
    k: usize,
    chosen_column: Option<usize>,
}

impl TorsionValue {
    /// Canonicalize num/den into a torsion value. A zero numerator
    /// records `VanishingNumerator`.
    pub fn from_fraction(
        num: &LaurentPolynomial,
        den: &LaurentPolynomial,
        units: UnitSpec,
        k: usize,
        chosen_column: Option<usize>,
    ) -> Result<Self> {
        let mut value = normalize_value(num, den)?;
        if let Some(lead) = value.numerator().leading_coefficient() {
            if lead.is_negative_for_normalization() {
                value = value.negate_numerator();
            }
        }
        let zero_reason = value.is_zero().then_some(ZeroReason::VanishingNumerator);
        Ok(TorsionValue {
            value,
            zero_reason,
            units,
            k,
            chosen_column,
        })
    }

    /// The zero value recording that no denominator candidate worked.
    pub fn non_acyclic(domain: CoefficientDomain, units: UnitSpec, k: usize) -> Self {
        TorsionValue {
            value: RationalFunctionValue::zero(domain),
            zero_reason: Some(ZeroReason::NonAcyclic),
            units,
            k,
            chosen_column: None,
        }
    }

    pub fn value(&self) -> &RationalFunctionValue {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn zero_reason(&self) -> Option<ZeroReason> {
        self.zero_reason
    }

    pub fn units(&self) -> &UnitSpec {
        &self.units
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn chosen_column(&self) -> Option<usize> {
        self.chosen_column
    }

    /// Span degree of the value; `None` when zero.
    pub fn degree(&self) -> Option<i64> {
        self.value.degree()
    }
}

impl fmt::Display for TorsionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.zero_reason {
            Some(ZeroReason::NonAcyclic) => write!(f, "0 (non-acyclic)"),
            Some(ZeroReason::VanishingNumerator) => write!(f, "0 (vanishing numerator)"),
            None => write!(f, "{}", self.value),
        }
    }
}

/// Wada's invariant of a deficiency-1 presentation under the given
/// twist. Deletes the lowest block column j with
/// d_j = det(tensor(x_j − 1)) ≠ 0 from the tensored Fox matrix and
/// returns det/d_j in canonical form.
pub fn wada_torsion(twist: &TwistData) -> Result<TorsionValue> {
    wada_with(twist, true)
}

/// Same computation forced onto the sequential determinant schedule,
/// for benchmarking against the parallel default.
pub fn wada_torsion_sequential(twist: &TwistData) -> Result<TorsionValue> {
    wada_with(twist, false)
}

fn wada_with(twist: &TwistData, parallel: bool) -> Result<TorsionValue> {
    let pres = twist.presentation();
    let g = pres.generator_count();
    check_deficiency_one(twist)?;
    let units = twist.determinant_image_spec(0);

    let denominators: Vec<LaurentPolynomial> =
        par::map_indexed(g, parallel, |j| twist.generator_minus_one_det(j));
    let Some(column) = denominators.iter().position(|d| !d.is_zero()) else {
        return Ok(TorsionValue::non_acyclic(
            twist.domain(),
            units,
            twist.k(),
        ));
    };

    let numerator = wada_numerator(twist, column, parallel)?;
    TorsionValue::from_fraction(
        &numerator,
        &denominators[column],
        units,
        twist.k(),
        Some(column),
    )
}

/// The torsion fraction for one specific deleted column, or `None` when
/// that column's denominator vanishes. Exists so column-independence
/// can be tested; `wada_torsion` always picks the lowest valid column.
pub fn wada_torsion_for_column(twist: &TwistData, column: usize) -> Result<Option<TorsionValue>> {
    check_deficiency_one(twist)?;
    assert!(column < twist.presentation().generator_count());
    let den = twist.generator_minus_one_det(column);
    if den.is_zero() {
        return Ok(None);
    }
    let num = wada_numerator(twist, column, true)?;
    let units = twist.determinant_image_spec(0);
    Ok(Some(TorsionValue::from_fraction(
        &num,
        &den,
        units,
        twist.k(),
        Some(column),
    )?))
}

fn check_deficiency_one(twist: &TwistData) -> Result<()> {
    let pres = twist.presentation();
    let g = pres.generator_count();
    let r = pres.relators().len();
    if g < 2 || r + 1 != g {
        return Err(Error::WrongDeficiency {
            generators: g,
            relators: r,
        });
    }
    Ok(())
}

fn wada_numerator(
    twist: &TwistData,
    column: usize,
    parallel: bool,
) -> Result<LaurentPolynomial> {
    let pres = twist.presentation();
    let g = pres.generator_count();
    let grid: Vec<Vec<_>> = pres
        .relators()
        .iter()
        .map(|r| {
            (0..g)
                .filter(|&j| j != column)
                .map(|j| fox_derivative(r, j))
                .collect()
        })
        .collect();
    let tensored = twist.matrix_tensor_apply(&grid);
    if parallel {
        tensored.det_exact()
    } else {
        tensored.det_exact_sequential()
    }
}

/// A based 4-term chain complex 0 → C3 → C2 → C1 → C0 → 0 given by its
/// boundary matrices. Construction checks that consecutive boundaries
/// compose to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedChainComplex {
    b3: ExactMatrix, // n2 × n3
    b2: ExactMatrix, // n1 × n2
    b1: ExactMatrix, // n0 × n1
}

impl BasedChainComplex {
    pub fn new(b3: ExactMatrix, b2: ExactMatrix, b1: ExactMatrix) -> Result<Self> {
        if b3.domain() != b2.domain() || b2.domain() != b1.domain() {
            return Err(Error::DimensionMismatch {
                detail: "boundary matrices use different coefficient domains".to_string(),
            });
        }
        if b2.cols() != b3.rows() {
            return Err(Error::DimensionMismatch {
                detail: format!(
                    "B2 has {} columns but B3 has {} rows",
                    b2.cols(),
                    b3.rows()
                ),
            });
        }
        if b1.cols() != b2.rows() {
            return Err(Error::DimensionMismatch {
                detail: format!(
                    "B1 has {} columns but B2 has {} rows",
                    b1.cols(),
                    b2.rows()
                ),
            });
        }
        check_composition_zero(&b2, &b3, "B2*B3")?;
        check_composition_zero(&b1, &b2, "B1*B2")?;
        Ok(BasedChainComplex { b3, b2, b1 })
    }

    pub fn n3(&self) -> usize {
        self.b3.cols()
    }

    pub fn n2(&self) -> usize {
        self.b3.rows()
    }

    pub fn n1(&self) -> usize {
        self.b2.rows()
    }

    pub fn n0(&self) -> usize {
        self.b1.rows()
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.b3.domain()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n3() as i64 - self.n2() as i64 + self.n1() as i64 - self.n0() as i64
    }
}

fn check_composition_zero(left: &ExactMatrix, right: &ExactMatrix, label: &str) -> Result<()> {
    let product = left.mul(right);
    for i in 0..product.rows() {
        for j in 0..product.cols() {
            if !product.get(i, j).is_zero() {
                return Err(Error::CompositionFailure {
                    product: label.to_string(),
                    row: i,
                    col: j,
                    entry: product.get(i, j).to_string(),
                });
            }
        }
    }
    Ok(())
}

/// A choice of n3 rows of B3 and n0 columns of B1 (0-based, strictly
/// increasing). Valid only when the leftover block A2 of B2 is square,
/// i.e. n2 − n3 = n1 − n0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    rows3: Vec<usize>,
    cols1: Vec<usize>,
}

impl Selection {
    pub fn new(complex: &BasedChainComplex, rows3: Vec<usize>, cols1: Vec<usize>) -> Result<Self> {
        check_index_subset(&rows3, complex.n3(), complex.n2(), "rows3", "B3 rows")?;
        check_index_subset(&cols1, complex.n0(), complex.n1(), "cols1", "B1 columns")?;
        if complex.n2() - complex.n3() != complex.n1() - complex.n0() {
            return Err(Error::InvalidSelection {
                detail: format!(
                    "A2 would be {}x{}, not square",
                    complex.n1() - complex.n0(),
                    complex.n2() - complex.n3()
                ),
            });
        }
        Ok(Selection { rows3, cols1 })
    }

    pub fn rows3(&self) -> &[usize] {
        &self.rows3
    }

    pub fn cols1(&self) -> &[usize] {
        &self.cols1
    }
}

fn check_index_subset(
    indices: &[usize],
    expected_len: usize,
    bound: usize,
    name: &str,
    of: &str,
) -> Result<()> {
    if indices.len() != expected_len {
        return Err(Error::InvalidSelection {
            detail: format!("{name} picks {} of {of}, expected {expected_len}", indices.len()),
        });
    }
    for pair in indices.windows(2) {
        if pair[0] >= pair[1] {
            return Err(Error::InvalidSelection {
                detail: format!("{name} must be strictly increasing"),
            });
        }
    }
    if let Some(&last) = indices.last() {
        if last >= bound {
            return Err(Error::InvalidSelection {
                detail: format!("{name} index {last} out of range (< {bound})"),
            });
        }
    }
    Ok(())
}

/// Result of applying the deletion formula for one selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TuraevOutcome {
    /// Nonzero torsion det(A3)^{-1}·det(A2)·det(A1)^{-1}, reduced. The
    /// sign is the raw one from this selection: based-complex torsion
    /// is defined up to sign only, and callers compare accordingly.
    Value(RationalFunctionValue),
    /// The selection was valid (det A3, det A1 ≠ 0) but det A2 = 0: the
    /// complex is not acyclic and its torsion is 0.
    Zero,
    /// det A3 = 0 or det A1 = 0; the theorem's hypothesis fails for
    /// this selection and another one may be tried.
    SelectionFailed { reason: String },
}

/// Apply the deletion formula: A3 = the selected rows of B3, A1 = the
/// selected columns of B1, and A2 = B2 minus the rows matching cols1
/// and the columns matching rows3. Degenerate 0×0 determinants are 1,
/// covering the n3 = 0 and n0 = 0 boundary cases.
pub fn turaev_torsion(complex: &BasedChainComplex, sel: &Selection) -> Result<TuraevOutcome> {
    let a3 = complex.b3.select_rows(&sel.rows3);
    let a1 = complex.b1.select_columns(&sel.cols1);
    let a2 = complex.b2.delete_rows(&sel.cols1).delete_columns(&sel.rows3);
    let det3 = a3.det_exact()?;
    if det3.is_zero() {
        return Ok(TuraevOutcome::SelectionFailed {
            reason: "det A3 = 0".to_string(),
        });
    }
    let det1 = a1.det_exact()?;
    if det1.is_zero() {
        return Ok(TuraevOutcome::SelectionFailed {
            reason: "det A1 = 0".to_string(),
        });
    }
    let det2 = a2.det_exact()?;
    if det2.is_zero() {
        return Ok(TuraevOutcome::Zero);
    }
    Ok(TuraevOutcome::Value(normalize_value(
        &det2,
        &det3.mul(&det1),
    )?))
}

/// Outcome of sweeping every selection of a complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionSweep {
    /// First (lexicographic) non-failing outcome; `Zero` when every
    /// selection failed or none exists (non-acyclic convention).
    pub outcome: TuraevOutcome,
    /// The selection behind `outcome`, when one succeeded.
    pub selection: Option<Selection>,
    /// How many candidate selections the complex admits.
    pub enumerated: usize,
    /// With verification on: whether every succeeding selection agreed
    /// up to sign (vacuously true for at most one success). `None` when
    /// verification was off.
    pub agreement: Option<bool>,
}

/// Try selections in lexicographic order (rows3 major, cols1 minor) and
/// return the first that does not fail. With `verify` set, evaluate all
/// selections and record whether the successes agree up to sign.
pub fn all_selections_torsion(complex: &BasedChainComplex, verify: bool) -> SelectionSweep {
    let selections = enumerate_selections(complex);
    let enumerated = selections.len();

    if !verify {
        let hit = par::find_map_first(selections, true, |sel| {
            match turaev_torsion(complex, &sel).expect("selection enumerated as valid") {
                TuraevOutcome::SelectionFailed { .. } => None,
                outcome => Some((outcome, sel)),
            }
        });
        return match hit {
            Some((outcome, selection)) => SelectionSweep {
                outcome,
                selection: Some(selection),
                enumerated,
                agreement: None,
            },
            None => SelectionSweep {
                outcome: TuraevOutcome::Zero,
                selection: None,
                enumerated,
                agreement: None,
            },
        };
    }

    let outcomes: Vec<TuraevOutcome> = par::map_indexed(selections.len(), true, |i| {
        turaev_torsion(complex, &selections[i]).expect("selection enumerated as valid")
    });
    let mut first: Option<(TuraevOutcome, Selection)> = None;
    let mut agreement = true;
    for (sel, outcome) in selections.into_iter().zip(outcomes) {
        if matches!(outcome, TuraevOutcome::SelectionFailed { .. }) {
            continue;
        }
        if let Some((reference, _)) = &first {
            if !outcomes_agree_up_to_sign(reference, &outcome) {
                agreement = false;
            }
        } else {
            first = Some((outcome, sel));
        }
    }
    match first {
        Some((outcome, selection)) => SelectionSweep {
            outcome,
            selection: Some(selection),
            enumerated,
            agreement: Some(agreement),
        },
        None => SelectionSweep {
            outcome: TuraevOutcome::Zero,
            selection: None,
            enumerated,
            agreement: Some(true),
        },
    }
}

fn outcomes_agree_up_to_sign(a: &TuraevOutcome, b: &TuraevOutcome) -> bool {
    match (a, b) {
        (TuraevOutcome::Zero, TuraevOutcome::Zero) => true,
        (TuraevOutcome::Value(v), TuraevOutcome::Value(w)) => {
            v == w || *v == w.negate_numerator()
        }
        _ => false,
    }
}

fn enumerate_selections(complex: &BasedChainComplex) -> Vec<Selection> {
    let (n3, n2, n1, n0) = (complex.n3(), complex.n2(), complex.n1(), complex.n0());
    if n3 > n2 || n0 > n1 || n2 - n3 != n1 - n0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for rows3 in combinations(n2, n3) {
        for cols1 in combinations(n1, n0) {
            out.push(Selection {
                rows3: rows3.clone(),
                cols1,
            });
        }
    }
    out
}

/// All strictly increasing k-subsets of 0..n in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // Advance the rightmost index that can still move.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < n - (k - i) {
                break;
            }
        }
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupPresentation;

    const Z: CoefficientDomain = CoefficientDomain::Integers;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn p(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(Z, terms)
    }

    fn trefoil_trivial() -> TwistData {
        let pres = GroupPresentation::parse(
            names(&["x", "y"]),
            &["x y x y^-1 x^-1 y^-1".to_string()],
        )
        .unwrap();
        TwistData::trivial(pres, vec![1, 1]).unwrap()
    }

    #[test]
    fn wada_trefoil_trivial() {
        let v = wada_torsion(&trefoil_trivial()).unwrap();
        assert_eq!(v.value().numerator(), &p(&[(0, 1), (1, -1), (2, 1)]));
        assert_eq!(v.value().denominator(), &p(&[(0, -1), (1, 1)]));
        assert_eq!(v.degree(), Some(1));
        assert_eq!(v.chosen_column(), Some(0));
        assert_eq!(v.units(), &UnitSpec::PlusMinusOne);
        assert_eq!(v.k(), 1);
        assert!(v.zero_reason().is_none());
    }

    #[test]
    fn wada_figure_eight_trivial() {
        // Standard 2-bridge presentation: r = Ω x Ω^{-1} y^{-1} with
        // Ω = x y^{-1} x^{-1} y.
        let pres = GroupPresentation::parse(
            names(&["x", "y"]),
            &["x y^-1 x^-1 y x y^-1 x y x^-1 y^-1".to_string()],
        )
        .unwrap();
        let twist = TwistData::trivial(pres, vec![1, 1]).unwrap();
        let v = wada_torsion(&twist).unwrap();
        assert_eq!(v.value().numerator(), &p(&[(0, 1), (1, -3), (2, 1)]));
        assert_eq!(v.value().denominator(), &p(&[(0, -1), (1, 1)]));
    }

    #[test]
    fn wada_wrong_deficiency() {
        let free = GroupPresentation::new(names(&["x", "y"]), vec![]).unwrap();
        let twist = TwistData::trivial(free, vec![1, 0]).unwrap();
        assert_eq!(
            wada_torsion(&twist),
            Err(Error::WrongDeficiency {
                generators: 2,
                relators: 0
            })
        );
    }

    #[test]
    fn wada_non_acyclic_when_all_denominators_vanish() {
        // φ = 0 with the trivial rep sends every x_j − 1 to 0.
        let pres = GroupPresentation::parse(
            names(&["x", "y"]),
            &["x y x y^-1 x^-1 y^-1".to_string()],
        )
        .unwrap();
        let twist = TwistData::trivial(pres, vec![0, 0]).unwrap();
        let v = wada_torsion(&twist).unwrap();
        assert!(v.is_zero());
        assert_eq!(v.zero_reason(), Some(ZeroReason::NonAcyclic));
        assert_eq!(v.chosen_column(), None);
        assert_eq!(v.degree(), None);
    }

    #[test]
    fn wada_vanishing_numerator() {
        // Two commuting relators; with φ supported on y only, the Fox
        // row of the z-relator tensors to zero while d_y = t − 1 ≠ 0.
        let pres = GroupPresentation::parse(
            names(&["x", "y", "z"]),
            &[
                "x y x^-1 y^-1".to_string(),
                "x z x^-1 z^-1".to_string(),
            ],
        )
        .unwrap();
        let twist = TwistData::trivial(pres, vec![0, 1, 0]).unwrap();
        let v = wada_torsion(&twist).unwrap();
        assert!(v.is_zero());
        assert_eq!(v.zero_reason(), Some(ZeroReason::VanishingNumerator));
        assert_eq!(v.chosen_column(), Some(1));
    }

    #[test]
    fn wada_column_choices_agree() {
        let twist = trefoil_trivial();
        let v0 = wada_torsion_for_column(&twist, 0).unwrap().unwrap();
        let v1 = wada_torsion_for_column(&twist, 1).unwrap().unwrap();
        // Canonical form plus sign pinning make the agreement exact.
        assert_eq!(v0.value(), v1.value());
    }

    #[test]
    fn torsion_value_sign_pinning() {
        let v = TorsionValue::from_fraction(
            &p(&[(0, 1), (1, -1), (2, 1)]).neg(),
            &p(&[(0, -1), (1, 1)]),
            UnitSpec::PlusMinusOne,
            1,
            None,
        )
        .unwrap();
        assert_eq!(v.value().numerator(), &p(&[(0, 1), (1, -1), (2, 1)]));
    }

    fn two_step_complex(a: i64, b: i64) -> BasedChainComplex {
        // 0 → Q → Q² → Q → 0, B3 = (a, 0)^T, B2 = (0, b).
        let b3 = ExactMatrix::from_rows(Z, vec![vec![p(&[(0, a)])], vec![p(&[])]]);
        let b2 = ExactMatrix::from_rows(Z, vec![vec![p(&[]), p(&[(0, b)])]]);
        let b1 = ExactMatrix::zero(Z, 0, 1);
        BasedChainComplex::new(b3, b2, b1).unwrap()
    }

    #[test]
    fn turaev_contractible_example() {
        let c = two_step_complex(1, 1);
        let sel = Selection::new(&c, vec![0], vec![]).unwrap();
        assert_eq!(
            turaev_torsion(&c, &sel).unwrap(),
            TuraevOutcome::Value(RationalFunctionValue::one(Z))
        );
    }

    #[test]
    fn turaev_scaled_example_gives_b_over_a() {
        let c = two_step_complex(2, 3);
        let sel = Selection::new(&c, vec![0], vec![]).unwrap();
        let TuraevOutcome::Value(v) = turaev_torsion(&c, &sel).unwrap() else {
            panic!("expected a value");
        };
        // 3/2 with the denominator content folded into the numerator.
        assert_eq!(
            v.numerator(),
            &LaurentPolynomial::constant(Z, Z.from_i64(3).div(&Z.from_i64(2)).unwrap())
        );
        assert_eq!(v.denominator(), &LaurentPolynomial::one(Z));
    }

    #[test]
    fn turaev_selection_failure() {
        // B3 = (0, 1)^T: picking row 0 makes det A3 = 0.
        let b3 = ExactMatrix::from_rows(Z, vec![vec![p(&[])], vec![p(&[(0, 1)])]]);
        let b2 = ExactMatrix::from_rows(Z, vec![vec![p(&[(0, 5)]), p(&[])]]);
        let b1 = ExactMatrix::zero(Z, 0, 1);
        let c = BasedChainComplex::new(b3, b2, b1).unwrap();
        let bad = Selection::new(&c, vec![0], vec![]).unwrap();
        assert!(matches!(
            turaev_torsion(&c, &bad).unwrap(),
            TuraevOutcome::SelectionFailed { .. }
        ));
        let good = Selection::new(&c, vec![1], vec![]).unwrap();
        assert!(matches!(
            turaev_torsion(&c, &good).unwrap(),
            TuraevOutcome::Value(_)
        ));
    }

    #[test]
    fn complex_construction_rejects_bad_composition() {
        let b3 = ExactMatrix::from_rows(Z, vec![vec![p(&[(0, 1)])], vec![p(&[])]]);
        let b2 = ExactMatrix::from_rows(Z, vec![vec![p(&[(0, 1)]), p(&[])]]);
        let b1 = ExactMatrix::zero(Z, 0, 1);
        assert!(matches!(
            BasedChainComplex::new(b3, b2, b1),
            Err(Error::CompositionFailure {
                row: 0,
                col: 0,
                ..
            })
        ));
    }

    #[test]
    fn selection_validation() {
        let c = two_step_complex(1, 1);
        assert!(matches!(
            Selection::new(&c, vec![0, 1], vec![]),
            Err(Error::InvalidSelection { .. })
        ));
        assert!(matches!(
            Selection::new(&c, vec![5], vec![]),
            Err(Error::InvalidSelection { .. })
        ));
        assert!(matches!(
            Selection::new(&c, vec![0], vec![0]),
            Err(Error::InvalidSelection { .. })
        ));
    }

    #[test]
    fn sweep_finds_first_valid_selection() {
        // B3 = (0, 1)^T forces the sweep past the failing selection.
        let b3 = ExactMatrix::from_rows(Z, vec![vec![p(&[])], vec![p(&[(0, 1)])]]);
        let b2 = ExactMatrix::from_rows(Z, vec![vec![p(&[(0, -7)]), p(&[])]]);
        let b1 = ExactMatrix::zero(Z, 0, 1);
        let c = BasedChainComplex::new(b3, b2, b1).unwrap();
        let sweep = all_selections_torsion(&c, true);
        assert_eq!(sweep.enumerated, 2);
        assert_eq!(
            sweep.selection.as_ref().map(Selection::rows3),
            Some(&[1usize][..])
        );
        assert_eq!(sweep.agreement, Some(true));
        let TuraevOutcome::Value(v) = sweep.outcome else {
            panic!("expected value");
        };
        assert_eq!(v.numerator(), &p(&[(0, -7)]));
    }

    #[test]
    fn sweep_non_acyclic_complex() {
        // n2 = 1, everything else 0: homology is Q in degree 2.
        let b3 = ExactMatrix::zero(Z, 1, 0);
        let b2 = ExactMatrix::zero(Z, 0, 1);
        let b1 = ExactMatrix::zero(Z, 0, 0);
        let c = BasedChainComplex::new(b3, b2, b1).unwrap();
        assert_eq!(c.euler_characteristic(), -1);
        let sweep = all_selections_torsion(&c, false);
        assert_eq!(sweep.outcome, TuraevOutcome::Zero);
        assert_eq!(sweep.enumerated, 0);
        assert!(sweep.selection.is_none());
    }

    #[test]
    fn sweep_detects_acyclicity_failure_via_a2() {
        // Valid selections exist but det A2 = 0: torsion is 0.
        // Shapes: n3 = 0, n2 = 1, n1 = 1, n0 = 0, B2 = (0).
        let b3 = ExactMatrix::zero(Z, 1, 0);
        let b2 = ExactMatrix::zero(Z, 1, 1);
        let b1 = ExactMatrix::zero(Z, 0, 1);
        let c = BasedChainComplex::new(b3, b2, b1).unwrap();
        let sweep = all_selections_torsion(&c, false);
        assert_eq!(sweep.outcome, TuraevOutcome::Zero);
        assert!(sweep.selection.is_some());
    }

    #[test]
    fn combination_enumeration_is_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3), Vec::<Vec<usize>>::new());
    }
}
