//! Canonical representatives for values in the fraction field of the
//! Laurent ring.
//!
//! Torsion values are only defined up to a unit c·t^k, so equality
//! testing and serialization need one distinguished representative per
//! coset. `normalize_value` computes it: cancel the gcd over the
//! quotient field, shift both parts to lowest exponent 0, then pin the
//! denominator's scalar freedom. The pinning rule makes the output
//! bitwise-identical under multiplying both inputs by a common a·t^m.

use std::fmt;

use num_traits::Signed;

use super::domain::{Coeff, CoefficientDomain};
use super::laurent::LaurentPolynomial;
use crate::{Error, Result};

/// A reduced fraction of Laurent polynomials in canonical form.
///
/// Invariants: numerator and denominator are coprime over the quotient
/// field; both have lowest exponent 0 (numerator zero is represented as
/// 0/1); the denominator is pinned: integer-primitive with positive
/// leading coefficient over the integers/rationals, monic over a prime
/// field. The numerator's overall sign is NOT pinned here: torsion
/// carries a ± ambiguity and its canonicalization happens downstream.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionValue {
    numerator: LaurentPolynomial,
    denominator: LaurentPolynomial,
}

impl RationalFunctionValue {
    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentPolynomial {
        &self.denominator
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.numerator.domain()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn one(domain: CoefficientDomain) -> Self {
        RationalFunctionValue {
            numerator: LaurentPolynomial::one(domain),
            denominator: LaurentPolynomial::one(domain),
        }
    }

    pub fn zero(domain: CoefficientDomain) -> Self {
        RationalFunctionValue {
            numerator: LaurentPolynomial::zero(domain),
            denominator: LaurentPolynomial::one(domain),
        }
    }

    /// Flip the numerator's sign. The result is still canonical; this
    /// spends the ± part of the torsion indeterminacy.
    pub fn negate_numerator(&self) -> Self {
        RationalFunctionValue {
            numerator: self.numerator.neg(),
            denominator: self.denominator.clone(),
        }
    }

    /// Scale the numerator by a nonzero constant (for unit-coset
    /// searches); the result keeps the denominator pinned.
    pub fn scale_numerator(&self, c: &Coeff) -> Self {
        assert!(!c.is_zero());
        RationalFunctionValue {
            numerator: self.numerator.scale(c),
            denominator: self.denominator.clone(),
        }
    }

    /// Degree as a rational function: span(numerator) − span(denominator);
    /// `None` for the zero value.
    pub fn degree(&self) -> Option<i64> {
        Some(self.numerator.degree()? - self.denominator.degree().unwrap())
    }
}

impl fmt::Display for RationalFunctionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == LaurentPolynomial::one(self.domain()) {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

/// Degree of p/q in canonical form; `None` when the value is zero.
pub fn degree_rational(v: &RationalFunctionValue) -> Option<i64> {
    v.degree()
}

/// Canonicalize the fraction p/q. Errors when q is zero.
///
/// Multiplying both arguments by a common nonzero monomial a·t^m yields
/// a bitwise-identical result, so the output is a complete invariant of
/// the fraction up to that scaling.
pub fn normalize_value(
    p: &LaurentPolynomial,
    q: &LaurentPolynomial,
) -> Result<RationalFunctionValue> {
    assert_eq!(p.domain(), q.domain(), "mixed domains");
    let domain = p.domain();
    if q.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if p.is_zero() {
        return Ok(RationalFunctionValue::zero(domain));
    }

    let g = p.monic_gcd(q);
    let p = p.exact_div(&g).expect("gcd divides");
    let q = q.exact_div(&g).expect("gcd divides");
    let p = p.shift(-p.lowest_exponent().unwrap());
    let q = q.shift(-q.lowest_exponent().unwrap());

    match domain {
        CoefficientDomain::PrimeField(_) => {
            let lead_inv = q.leading_coefficient().unwrap().inv().unwrap();
            Ok(RationalFunctionValue {
                numerator: p.scale(&lead_inv),
                denominator: q.scale(&lead_inv),
            })
        }
        CoefficientDomain::Integers | CoefficientDomain::Rationals => {
            // Divide by the signed content of q: the denominator becomes
            // integer-primitive with positive leading coefficient.
            let mut divisor = q.rational_content().unwrap();
            if q.leading_coefficient()
                .unwrap()
                .as_rational()
                .unwrap()
                .is_negative()
            {
                divisor = -divisor;
            }
            let scale = Coeff::Rat(divisor.recip());
            Ok(RationalFunctionValue {
                numerator: p.scale(&scale),
                denominator: q.scale(&scale),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: CoefficientDomain = CoefficientDomain::Integers;
    const Q: CoefficientDomain = CoefficientDomain::Rationals;

    fn p(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(Z, terms)
    }

    #[test]
    fn unit_monomial_fraction_collapses_to_one() {
        // (t^3 - t^2)/(t^2 - t) = t, a unit, canonical value 1.
        let v = normalize_value(&p(&[(2, -1), (3, 1)]), &p(&[(1, -1), (2, 1)])).unwrap();
        assert_eq!(v, RationalFunctionValue::one(Z));
        assert_eq!(v.degree(), Some(0));
    }

    #[test]
    fn zero_numerator() {
        let v = normalize_value(&p(&[]), &p(&[(0, 5), (2, 1)])).unwrap();
        assert!(v.is_zero());
        assert_eq!(v.denominator(), &LaurentPolynomial::one(Z));
        assert_eq!(v.degree(), None);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            normalize_value(&p(&[(0, 1)]), &p(&[])),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn trefoil_shape_fraction() {
        // (t^2 - t + 1)/(t - 1) is already canonical: coprime, lowest
        // exponents 0, denominator primitive with positive leading
        // coefficient.
        let num = p(&[(0, 1), (1, -1), (2, 1)]);
        let den = p(&[(0, -1), (1, 1)]);
        let v = normalize_value(&num, &den).unwrap();
        assert_eq!(v.numerator(), &num);
        assert_eq!(v.denominator(), &den);
        assert_eq!(v.degree(), Some(1));
    }

    #[test]
    fn common_monomial_scaling_is_invisible() {
        let num = p(&[(0, 1), (1, -1), (2, 1)]);
        let den = p(&[(0, -1), (1, 1)]);
        let v = normalize_value(&num, &den).unwrap();
        for (shift, scalar) in [(3i64, 2i64), (-5, -7), (0, -1), (11, 1)] {
            let c = Z.from_i64(scalar);
            let w = normalize_value(&num.shift(shift).scale(&c), &den.shift(shift).scale(&c))
                .unwrap();
            assert_eq!(v, w, "shift {shift}, scalar {scalar}");
        }
    }

    #[test]
    fn gcd_cancellation() {
        // (t^2-1)/(t^2-2t+1) = (t+1)/(t-1).
        let v = normalize_value(&p(&[(0, -1), (2, 1)]), &p(&[(0, 1), (1, -2), (2, 1)])).unwrap();
        assert_eq!(v.numerator(), &p(&[(0, 1), (1, 1)]));
        assert_eq!(v.denominator(), &p(&[(0, -1), (1, 1)]));
    }

    #[test]
    fn denominator_pinning_over_rationals() {
        // (1/2) / (2t - 3): denominator content 1, leading positive, so
        // only the numerator carries the rational scalar.
        let q = CoefficientDomain::Rationals;
        let half = LaurentPolynomial::constant(q, q.parse_scalar("1/2").unwrap());
        let den = LaurentPolynomial::from_terms(Q, &[(0, -3), (1, 2)]);
        let v = normalize_value(&half, &den).unwrap();
        assert_eq!(v.denominator(), &den);
        assert_eq!(v.numerator(), &half);
        // Negative leading coefficient gets flipped into the numerator.
        let v2 = normalize_value(&half, &den.neg()).unwrap();
        assert_eq!(v2.denominator(), &den);
        assert_eq!(v2.numerator(), &half.neg());
        // Non-primitive denominator is divided down.
        let v3 = normalize_value(&half.scale(&q.from_i64(4)), &den.scale(&q.from_i64(2))).unwrap();
        assert_eq!(v3.denominator(), &den);
        assert_eq!(v3.numerator(), &LaurentPolynomial::one(q));
    }

    #[test]
    fn denominator_pinning_prime_field() {
        let f7 = CoefficientDomain::PrimeField(7);
        let num = LaurentPolynomial::from_terms(f7, &[(0, 1), (1, 1)]);
        let den = LaurentPolynomial::from_terms(f7, &[(0, 1), (1, 3)]);
        let v = normalize_value(&num, &den).unwrap();
        // Denominator made monic: leading coefficient 1.
        assert!(v.denominator().leading_coefficient().unwrap().is_one());
        // 3^{-1} = 5 mod 7, so denominator is 5 + t, numerator 5 + 5t.
        assert_eq!(
            v.denominator(),
            &LaurentPolynomial::from_terms(f7, &[(0, 5), (1, 1)])
        );
        assert_eq!(
            v.numerator(),
            &LaurentPolynomial::from_terms(f7, &[(0, 5), (1, 5)])
        );
    }

    #[test]
    fn degree_is_numerator_minus_denominator_span() {
        let v = normalize_value(&p(&[(0, 1), (4, 1)]), &p(&[(0, 1), (1, 1)])).unwrap();
        assert_eq!(degree_rational(&v), Some(3));
        let w = normalize_value(&p(&[(0, 1)]), &p(&[(0, 1), (2, 1)])).unwrap();
        assert_eq!(degree_rational(&w), Some(-2));
    }
}
