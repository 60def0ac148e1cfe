//! Laurent polynomials with exact coefficients.
//!
//! Terms are a sorted map exponent → nonzero coefficient; the zero
//! polynomial has an empty map. Degree is the span of the support
//! (highest minus lowest exponent), which is what torsion degree
//! bounds consume: it is invariant under multiplication by any unit
//! c·t^k.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::domain::{Coeff, CoefficientDomain};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    domain: CoefficientDomain,
    terms: BTreeMap<i64, Coeff>,
}

impl LaurentPolynomial {
    pub fn zero(domain: CoefficientDomain) -> Self {
        LaurentPolynomial {
            domain,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(domain: CoefficientDomain) -> Self {
        Self::monomial(domain, 0, domain.one())
    }

    pub fn constant(domain: CoefficientDomain, c: Coeff) -> Self {
        Self::monomial(domain, 0, c)
    }

    pub fn monomial(domain: CoefficientDomain, exponent: i64, coeff: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponent, coeff);
        }
        LaurentPolynomial { domain, terms }
    }

    /// Build from an exponent → coefficient map, dropping zero entries.
    pub fn from_map(domain: CoefficientDomain, map: BTreeMap<i64, Coeff>) -> Self {
        let terms = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        LaurentPolynomial { domain, terms }
    }

    /// Convenience for integer-coefficient literals in tests:
    /// `from_terms(d, &[(0, 1), (1, -1)])` is `1 - t`.
    pub fn from_terms(domain: CoefficientDomain, terms: &[(i64, i64)]) -> Self {
        let mut map = BTreeMap::new();
        for &(e, c) in terms {
            let coeff = domain.from_i64(c);
            let entry = map.remove(&e).map_or(coeff.clone(), |old: Coeff| old.add(&coeff));
            if !entry.is_zero() {
                map.insert(e, entry);
            }
        }
        LaurentPolynomial { domain, terms: map }
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Coeff)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coefficient(&self, exponent: i64) -> Coeff {
        self.terms
            .get(&exponent)
            .cloned()
            .unwrap_or_else(|| self.domain.zero())
    }

    pub fn lowest_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn highest_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Span degree: highest minus lowest exponent; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        Some(self.highest_exponent()? - self.lowest_exponent()?)
    }

    /// Coefficient at the highest exponent.
    pub fn leading_coefficient(&self) -> Option<&Coeff> {
        self.terms.values().next_back()
    }

    /// Coefficient at the lowest exponent.
    pub fn trailing_coefficient(&self) -> Option<&Coeff> {
        self.terms.values().next()
    }

    /// Both outer coefficients are ±1 (monic in the two-sided sense).
    pub fn has_plus_minus_one_ends(&self) -> bool {
        match (self.trailing_coefficient(), self.leading_coefficient()) {
            (Some(a), Some(b)) => a.is_plus_minus_one() && b.is_plus_minus_one(),
            _ => false,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.domain, other.domain, "mixed domains");
        let mut terms = self.terms.clone();
        for (&e, c) in &other.terms {
            let sum = terms.remove(&e).map_or(c.clone(), |old| old.add(c));
            if !sum.is_zero() {
                terms.insert(e, sum);
            }
        }
        LaurentPolynomial {
            domain: self.domain,
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial {
            domain: self.domain,
            terms: self.terms.iter().map(|(&e, c)| (e, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.domain, other.domain, "mixed domains");
        let mut terms: BTreeMap<i64, Coeff> = BTreeMap::new();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                let e = e1 + e2;
                let prod = c1.mul(c2);
                let sum = match terms.remove(&e) {
                    Some(old) => old.add(&prod),
                    None => prod,
                };
                if !sum.is_zero() {
                    terms.insert(e, sum);
                }
            }
        }
        LaurentPolynomial {
            domain: self.domain,
            terms,
        }
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPolynomial {
            domain: self.domain,
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(self.domain);
        }
        LaurentPolynomial {
            domain: self.domain,
            terms: self.terms.iter().map(|(&e, a)| (e, a.mul(c))).collect(),
        }
    }

    /// If this is a single term c·t^k, return (k, c).
    pub fn as_single_term(&self) -> Option<(i64, Coeff)> {
        if self.terms.len() == 1 {
            let (&e, c) = self.terms.iter().next().unwrap();
            Some((e, c.clone()))
        } else {
            None
        }
    }

    /// If `self = c·t^k · other` for a nonzero scalar c, return (k, c).
    /// Both-zero returns (0, 1); exactly one zero returns `None`.
    pub fn monomial_quotient(&self, other: &Self) -> Option<(i64, Coeff)> {
        assert_eq!(self.domain, other.domain, "mixed domains");
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Some((0, self.domain.one())),
            (true, false) | (false, true) => return None,
            _ => {}
        }
        let k = self.lowest_exponent().unwrap() - other.lowest_exponent().unwrap();
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let ratio = self
            .trailing_coefficient()
            .unwrap()
            .div(other.trailing_coefficient().unwrap())
            .ok()?;
        for ((&e1, c1), (&e2, c2)) in self.terms.iter().zip(other.terms.iter()) {
            if e1 != e2 + k || *c1 != c2.mul(&ratio) {
                return None;
            }
        }
        Some((k, ratio))
    }

    /// Dense ordinary-polynomial coefficients after shifting the lowest
    /// exponent to 0. Empty for the zero polynomial.
    fn dense_shifted(&self) -> Vec<Coeff> {
        match (self.lowest_exponent(), self.highest_exponent()) {
            (Some(lo), Some(hi)) => (0..=(hi - lo))
                .map(|i| self.coefficient(lo + i))
                .collect(),
            _ => Vec::new(),
        }
    }

    fn from_dense(domain: CoefficientDomain, shift: i64, dense: &[Coeff]) -> Self {
        let mut terms = BTreeMap::new();
        for (i, c) in dense.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(shift + i as i64, c.clone());
            }
        }
        LaurentPolynomial { domain, terms }
    }

    /// Exact division: `Some(q)` with `self = q · other` when the
    /// remainder vanishes, else `None`. Coefficient division happens in
    /// the quotient field, so this works for all domains.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.domain, other.domain, "mixed domains");
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.domain));
        }
        let shift = self.lowest_exponent().unwrap() - other.lowest_exponent().unwrap();
        let mut rem = self.dense_shifted();
        let div = other.dense_shifted();
        if rem.len() < div.len() {
            return None;
        }
        let lead_inv = div.last().unwrap().inv().ok()?;
        let mut quot = vec![self.domain.zero(); rem.len() - div.len() + 1];
        for qi in (0..quot.len()).rev() {
            let c = rem[qi + div.len() - 1].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[qi] = c.clone();
            for (di, d) in div.iter().enumerate() {
                rem[qi + di] = rem[qi + di].sub(&c.mul(d));
            }
        }
        if rem.iter().all(Coeff::is_zero) {
            Some(Self::from_dense(self.domain, shift, &quot))
        } else {
            None
        }
    }

    /// Monic gcd over the quotient field, computed on ordinary
    /// polynomials after shifting lowest exponents to 0 (units of the
    /// Laurent ring are exactly the monomials, so this loses nothing).
    /// Result has lowest exponent 0 and leading coefficient 1; gcd of
    /// two zeros is zero.
    pub fn monic_gcd(&self, other: &Self) -> Self {
        assert_eq!(self.domain, other.domain, "mixed domains");
        let normalize = |p: &Self| -> Self {
            if p.is_zero() {
                return Self::zero(p.domain);
            }
            let shifted = p.shift(-p.lowest_exponent().unwrap());
            let lead_inv = shifted.leading_coefficient().unwrap().inv().unwrap();
            shifted.scale(&lead_inv)
        };
        let mut a = normalize(self);
        let mut b = normalize(other);
        while !b.is_zero() {
            let r = a.poly_rem(&b);
            a = b;
            b = normalize(&r);
        }
        normalize(&a)
    }

    /// Remainder of ordinary-polynomial division (inputs assumed to have
    /// lowest exponent ≥ 0 conceptually; works on shifted dense forms).
    fn poly_rem(&self, other: &Self) -> Self {
        debug_assert!(!other.is_zero());
        if self.is_zero() {
            return Self::zero(self.domain);
        }
        let mut rem = self.dense_shifted();
        let div = other.dense_shifted();
        if rem.len() < div.len() {
            return self.clone();
        }
        let lead_inv = div.last().unwrap().inv().unwrap();
        for qi in (0..=(rem.len() - div.len())).rev() {
            let c = rem[qi + div.len() - 1].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (di, d) in div.iter().enumerate() {
                rem[qi + di] = rem[qi + di].sub(&c.mul(d));
            }
        }
        Self::from_dense(self.domain, 0, &rem)
    }

    /// Content of a rational-coefficient polynomial: the positive
    /// rational c with `self = c · primitive` where `primitive` has
    /// coprime integer coefficients. `None` for zero or prime fields.
    pub fn rational_content(&self) -> Option<BigRational> {
        if self.is_zero() {
            return None;
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            let q = c.as_rational()?;
            num_gcd = num_gcd.gcd(q.numer());
            den_lcm = den_lcm.lcm(q.denom());
        }
        Some(BigRational::new(num_gcd.abs(), den_lcm))
    }

    /// Parse either grammar the corpus uses: a sum of signed terms like
    /// `t^-1 + 2 - t^3` or `3*t^2 - 1/2`. The variable must be `t`.
    pub fn parse(domain: CoefficientDomain, text: &str) -> Result<Self> {
        let err = |reason: &str| Error::InvalidLaurent {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(err("empty literal"));
        }
        // Split into signed term strings at '+'/'-' that start a term
        // (not part of an exponent like t^-1 or a leading sign).
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut prev_meaningful = ' ';
        for ch in trimmed.chars() {
            if (ch == '+' || ch == '-')
                && prev_meaningful != '^'
                && prev_meaningful != '/'
                && !current.trim().is_empty()
            {
                pieces.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if ch == '-' && current.trim().is_empty() && prev_meaningful != '^' {
                negative = !negative;
            } else if ch == '+' && current.trim().is_empty() && prev_meaningful != '^' {
                // leading plus: ignore
            } else {
                current.push(ch);
            }
            if !ch.is_whitespace() {
                prev_meaningful = ch;
            }
        }
        if current.trim().is_empty() {
            return Err(err("dangling sign"));
        }
        pieces.push((negative, current));

        let mut result = Self::zero(domain);
        for (neg, piece) in pieces {
            let piece = piece.trim();
            let (coeff_text, exponent) = match piece.find('t') {
                Some(pos) => {
                    let before = piece[..pos].trim().trim_end_matches('*').trim();
                    let after = piece[pos + 1..].trim();
                    let exp: i64 = if after.is_empty() {
                        1
                    } else {
                        let stripped = after
                            .strip_prefix('^')
                            .ok_or_else(|| err("expected '^' after t"))?;
                        stripped
                            .trim()
                            .parse()
                            .map_err(|_| err("bad exponent"))?
                    };
                    (before, exp)
                }
                None => (piece, 0),
            };
            let mut coeff = if coeff_text.is_empty() {
                domain.one()
            } else {
                domain.parse_scalar(coeff_text)?
            };
            if neg {
                coeff = coeff.neg();
            }
            result = result.add(&Self::monomial(domain, exponent, coeff));
        }
        Ok(result)
    }

    /// Exponent → coefficient-literal map, the canonical serialized form.
    pub fn to_map_literal(&self) -> BTreeMap<i64, String> {
        self.terms
            .iter()
            .map(|(&e, c)| (e, c.to_literal()))
            .collect()
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Human-readable sum in increasing exponent order, e.g.
    /// `t^-1 + 2 - t^3`. Round-trips through `parse`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_for_normalization();
            let mag = if neg { c.neg() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_part = if mag.is_one() && e != 0 {
                None
            } else {
                Some(mag.to_literal())
            };
            let var_part = match e {
                0 => None,
                1 => Some("t".to_string()),
                _ => Some(format!("t^{e}")),
            };
            match (coeff_part, var_part) {
                (Some(c), Some(v)) => write!(f, "{c}*{v}")?,
                (Some(c), None) => write!(f, "{c}")?,
                (None, Some(v)) => write!(f, "{v}")?,
                (None, None) => unreachable!(),
            }
        }
        Ok(())
    }
}
