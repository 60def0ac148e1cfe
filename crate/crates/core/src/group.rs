//! Free groups, finite presentations, integral group rings, and the
//! Fox free differential calculus.
//!
//! Words are stored freely reduced as (generator index, ±1) letters.
//! All Fox-calculus identities hold on the nose for reduced words
//! because the derivative only looks at letters and prefixes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::{Error, Result};

/// A freely reduced word in a free group.
///
/// Invariant: no adjacent letters cancel (same generator, opposite
/// exponents). The identity is the empty word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FreeWord {
    letters: Vec<(usize, i8)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(index: usize) -> Self {
        FreeWord {
            letters: vec![(index, 1)],
        }
    }

    /// Build from raw letters, reducing cancellations.
    pub fn from_letters<I: IntoIterator<Item = (usize, i8)>>(letters: I) -> Self {
        let mut reduced: Vec<(usize, i8)> = Vec::new();
        for (g, e) in letters {
            assert!(e == 1 || e == -1, "letter exponents are ±1");
            if let Some(&(top_g, top_e)) = reduced.last() {
                if top_g == g && top_e == -e {
                    reduced.pop();
                    continue;
                }
            }
            reduced.push((g, e));
        }
        FreeWord { letters: reduced }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// Signed exponent sum of the given generator.
    pub fn exponent_sum(&self, index: usize) -> i64 {
        self.letters
            .iter()
            .filter(|&&(g, _)| g == index)
            .map(|&(_, e)| e as i64)
            .sum()
    }

    /// Weight under a homomorphism to Z given by generator values.
    pub fn phi_weight(&self, phi: &[i64]) -> i64 {
        self.letters
            .iter()
            .map(|&(g, e)| phi[g] * e as i64)
            .sum()
    }

    /// Largest generator index mentioned, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|&(g, _)| g).max()
    }

    /// Parse whitespace-separated tokens `name` or `name^k` against the
    /// given generator list; exponents expand to ±1 letters.
    pub fn parse(text: &str, names: &[String]) -> Result<Self> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                Some((name, exp_text)) => {
                    let exp: i64 = exp_text.parse().map_err(|_| Error::InvalidWordToken {
                        token: token.to_string(),
                    })?;
                    (name, exp)
                }
                None => (token, 1),
            };
            if exp == 0 || exp.unsigned_abs() > 10_000 {
                return Err(Error::InvalidWordToken {
                    token: token.to_string(),
                });
            }
            let index = names.iter().position(|n| n == name).ok_or_else(|| {
                Error::UnknownGenerator {
                    name: name.to_string(),
                }
            })?;
            let sign = if exp > 0 { 1i8 } else { -1 };
            for _ in 0..exp.unsigned_abs() {
                letters.push((index, sign));
            }
        }
        Ok(Self::from_letters(letters))
    }

    /// Render with the given names, run-length compressed: `x y^-2 x`.
    pub fn to_text(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return String::new();
        }
        let mut out = String::new();
        let mut run: Option<(usize, i64)> = None;
        let flush = |out: &mut String, run: Option<(usize, i64)>| {
            if let Some((g, total)) = run {
                if !out.is_empty() {
                    out.push(' ');
                }
                if total == 1 {
                    let _ = write!(out, "{}", names[g]);
                } else {
                    let _ = write!(out, "{}^{}", names[g], total);
                }
            }
        };
        for &(g, e) in &self.letters {
            match run {
                Some((rg, total)) if rg == g && (total > 0) == (e > 0) => {
                    run = Some((rg, total + e as i64));
                }
                _ => {
                    flush(&mut out, run.take());
                    run = Some((g, e as i64));
                }
            }
        }
        flush(&mut out, run);
        out
    }
}

fn valid_generator_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A finite group presentation ⟨generators | relators⟩.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    generator_names: Vec<String>,
    relators: Vec<FreeWord>,
}

impl GroupPresentation {
    pub fn new(generator_names: Vec<String>, relators: Vec<FreeWord>) -> Result<Self> {
        for (i, name) in generator_names.iter().enumerate() {
            if !valid_generator_name(name) {
                return Err(Error::InvalidGeneratorName { name: name.clone() });
            }
            if generator_names[..i].contains(name) {
                return Err(Error::DuplicateGenerator { name: name.clone() });
            }
        }
        let count = generator_names.len();
        for r in &relators {
            if let Some(max) = r.max_generator() {
                if max >= count {
                    return Err(Error::GeneratorIndexOutOfRange { index: max, count });
                }
            }
        }
        Ok(GroupPresentation {
            generator_names,
            relators,
        })
    }

    /// Parse generator names plus relator words in token syntax.
    pub fn parse(generator_names: Vec<String>, relator_texts: &[String]) -> Result<Self> {
        let mut relators = Vec::with_capacity(relator_texts.len());
        for text in relator_texts {
            relators.push(FreeWord::parse(text, &generator_names)?);
        }
        Self::new(generator_names, relators)
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    /// Generators minus relators.
    pub fn deficiency(&self) -> i64 {
        self.generator_names.len() as i64 - self.relators.len() as i64
    }

    pub fn parse_word(&self, text: &str) -> Result<FreeWord> {
        FreeWord::parse(text, &self.generator_names)
    }
}

/// An element of the integral group ring Z[F] of a free group: a finite
/// formal sum of words with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<FreeWord, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement::default()
    }

    pub fn one() -> Self {
        Self::from_word(FreeWord::identity())
    }

    pub fn from_word(w: FreeWord) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, 1);
        GroupRingElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn add_term(&mut self, w: FreeWord, c: i64) {
        if c == 0 {
            return;
        }
        let total = self.terms.remove(&w).unwrap_or(0) + c;
        if total != 0 {
            self.terms.insert(w, total);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupRingElement {
            terms: self.terms.iter().map(|(w, &c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = GroupRingElement::zero();
        for (w1, &c1) in &self.terms {
            for (w2, &c2) in &other.terms {
                out.add_term(w1.mul(w2), c1 * c2);
            }
        }
        out
    }

    /// w − 1 as a ring element.
    pub fn word_minus_one(w: &FreeWord) -> Self {
        let mut out = Self::from_word(w.clone());
        out.add_term(FreeWord::identity(), -1);
        out
    }
}

/// Fox free derivative ∂w/∂x_j, defined letterwise:
/// ∂x_j/∂x_j = 1, ∂x_j^{-1}/∂x_j = −x_j^{-1}, other letters give 0,
/// and ∂(uv)/∂x_j = ∂u/∂x_j + u·∂v/∂x_j. Scanning letters with a
/// running prefix implements exactly that product rule.
pub fn fox_derivative(w: &FreeWord, j: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = FreeWord::identity();
    for &(g, e) in w.letters() {
        if g == j {
            if e == 1 {
                out.add_term(prefix.clone(), 1);
            } else {
                out.add_term(prefix.mul(&FreeWord::from_letters([(j, -1)])), -1);
            }
        }
        prefix = prefix.mul(&FreeWord::from_letters([(g, e)]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn word(text: &str) -> FreeWord {
        FreeWord::parse(text, &names(&["x", "y", "z", "w"])).unwrap()
    }

    #[test]
    fn free_reduction() {
        assert_eq!(word("x y y^-1 x"), word("x^2"));
        assert_eq!(word("x x^-1"), FreeWord::identity());
        assert_eq!(word("x y^-1 y x^-1"), FreeWord::identity());
        // Reduction cascades through the seam of a product.
        assert_eq!(word("x y").mul(&word("y^-1 x^-1")), FreeWord::identity());
    }

    #[test]
    fn inverse_law() {
        let w = word("x y^-2 z x");
        assert!(w.mul(&w.inverse()).is_identity());
        assert!(w.inverse().mul(&w).is_identity());
        assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn exponent_sums_and_weights() {
        let w = word("x y x y^-1 x^-1 y^-1");
        assert_eq!(w.exponent_sum(0), 1);
        assert_eq!(w.exponent_sum(1), -1);
        assert_eq!(w.phi_weight(&[1, 1, 0, 0]), 0);
        assert_eq!(w.phi_weight(&[2, 0, 0, 0]), 2);
    }

    #[test]
    fn parse_rejects_garbage() {
        let ns = names(&["x", "y"]);
        assert_eq!(
            FreeWord::parse("x q", &ns),
            Err(Error::UnknownGenerator {
                name: "q".to_string()
            })
        );
        assert!(matches!(
            FreeWord::parse("x^z", &ns),
            Err(Error::InvalidWordToken { .. })
        ));
        assert!(matches!(
            FreeWord::parse("x^0", &ns),
            Err(Error::InvalidWordToken { .. })
        ));
        assert_eq!(FreeWord::parse("", &ns).unwrap(), FreeWord::identity());
    }

    #[test]
    fn text_round_trip() {
        let ns = names(&["x", "y", "z", "w"]);
        for text in ["x^2 y^-3 x", "x", "y^-1", "x y z w^-1", ""] {
            let w = FreeWord::parse(text, &ns).unwrap();
            assert_eq!(FreeWord::parse(&w.to_text(&ns), &ns).unwrap(), w);
        }
        assert_eq!(word("x x x").to_text(&names(&["x"])), "x^3");
    }

    #[test]
    fn presentation_validation() {
        assert!(GroupPresentation::parse(
            names(&["x", "y"]),
            &["x y x y^-1 x^-1 y^-1".to_string()]
        )
        .is_ok());
        assert_eq!(
            GroupPresentation::new(names(&["x", "x"]), vec![]),
            Err(Error::DuplicateGenerator {
                name: "x".to_string()
            })
        );
        assert!(matches!(
            GroupPresentation::new(names(&["2bad"]), vec![]),
            Err(Error::InvalidGeneratorName { .. })
        ));
        assert_eq!(
            GroupPresentation::new(names(&["x"]), vec![FreeWord::generator(3)]),
            Err(Error::GeneratorIndexOutOfRange { index: 3, count: 1 })
        );
        let p = GroupPresentation::parse(
            names(&["x", "y"]),
            &["x y x y^-1 x^-1 y^-1".to_string()],
        )
        .unwrap();
        assert_eq!(p.deficiency(), 1);
    }

    #[test]
    fn group_ring_arithmetic() {
        let x = GroupRingElement::from_word(word("x"));
        let y = GroupRingElement::from_word(word("y"));
        // (x + y)(x - y) = x^2 + yx - xy - y^2 in the noncommutative ring.
        let prod = x.add(&y).mul(&x.sub(&y));
        let mut expected = GroupRingElement::zero();
        expected.add_term(word("x^2"), 1);
        expected.add_term(word("y x"), 1);
        expected.add_term(word("x y"), -1);
        expected.add_term(word("y^2"), -1);
        assert_eq!(prod, expected);
        // Cancelling sums vanish.
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn fox_derivative_of_letters() {
        assert_eq!(fox_derivative(&word("x"), 0), GroupRingElement::one());
        assert!(fox_derivative(&word("x"), 1).is_zero());
        let mut expected = GroupRingElement::zero();
        expected.add_term(word("x^-1"), -1);
        assert_eq!(fox_derivative(&word("x^-1"), 0), expected);
    }

    #[test]
    fn fox_derivative_trefoil_relator() {
        // ∂(xyxy^-1x^-1y^-1)/∂x = 1 + xy − xyxy^-1x^-1.
        let d = fox_derivative(&word("x y x y^-1 x^-1 y^-1"), 0);
        let mut expected = GroupRingElement::zero();
        expected.add_term(FreeWord::identity(), 1);
        expected.add_term(word("x y"), 1);
        expected.add_term(word("x y x y^-1 x^-1"), -1);
        assert_eq!(d, expected);
    }

    #[test]
    fn fox_product_rule() {
        let u = word("x y^-1 x");
        let v = word("y x^-2 y");
        let uv = u.mul(&v);
        for j in 0..2 {
            let lhs = fox_derivative(&uv, j);
            let rhs = fox_derivative(&u, j).add(
                &GroupRingElement::from_word(u.clone()).mul(&fox_derivative(&v, j)),
            );
            assert_eq!(lhs, rhs, "generator {j}");
        }
    }

    #[test]
    fn fox_fundamental_formula_hand_case() {
        // Σ_j (∂w/∂x_j)(x_j − 1) = w − 1.
        let w = word("x y x y^-1 x^-1 y^-1");
        let mut sum = GroupRingElement::zero();
        for j in 0..2 {
            let xj_minus_one = GroupRingElement::word_minus_one(&FreeWord::generator(j));
            sum = sum.add(&fox_derivative(&w, j).mul(&xj_minus_one));
        }
        assert_eq!(sum, GroupRingElement::word_minus_one(&w));
    }
}
