//! Coefficient domains and their scalars.
//!
//! The domain is a runtime tag because the CLI picks the ring from input
//! data. `Integers` is carried as a tag for validation and formatting,
//! but its scalars live in the rational quotient field: torsion is a
//! rational function, so intermediate arithmetic needs division anyway
//! and exactness is what matters.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Coefficient ring for a whole computation. Mixing domains is a bug;
/// operations that would mix them panic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientDomain {
    Integers,
    Rationals,
    /// Prime field with the given (checked-prime) modulus.
    PrimeField(u64),
}

impl CoefficientDomain {
    /// Validate the tag: `PrimeField(p)` requires `p` prime.
    pub fn validate(self) -> Result<()> {
        if let CoefficientDomain::PrimeField(p) = self {
            if !is_prime_u64(p) {
                return Err(Error::NotPrime { p });
            }
        }
        Ok(())
    }

    pub fn zero(self) -> Coeff {
        match self {
            CoefficientDomain::Integers | CoefficientDomain::Rationals => {
                Coeff::Rat(BigRational::zero())
            }
            CoefficientDomain::PrimeField(p) => Coeff::Mod {
                residue: 0,
                modulus: p,
            },
        }
    }

    pub fn one(self) -> Coeff {
        match self {
            CoefficientDomain::Integers | CoefficientDomain::Rationals => {
                Coeff::Rat(BigRational::one())
            }
            CoefficientDomain::PrimeField(p) => Coeff::Mod {
                residue: 1 % p,
                modulus: p,
            },
        }
    }

    pub fn from_i64(self, n: i64) -> Coeff {
        match self {
            CoefficientDomain::Integers | CoefficientDomain::Rationals => {
                Coeff::Rat(BigRational::from_integer(BigInt::from(n)))
            }
            CoefficientDomain::PrimeField(p) => Coeff::Mod {
                residue: (n as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    /// Parse a scalar literal in this domain.
    ///
    /// `Integers`: an optionally signed decimal integer. `Rationals`:
    /// the same, or `a/b` with nonzero `b`. `PrimeField(p)`: a decimal
    /// integer reduced mod `p` (signs allowed).
    pub fn parse_scalar(self, text: &str) -> Result<Coeff> {
        let bad = || Error::InvalidScalar {
            text: text.to_string(),
            domain: format!("{self:?}"),
        };
        let text = text.trim();
        match self {
            CoefficientDomain::Integers => {
                let n: BigInt = text.parse().map_err(|_| bad())?;
                Ok(Coeff::Rat(BigRational::from_integer(n)))
            }
            CoefficientDomain::Rationals => {
                if let Some((num, den)) = text.split_once('/') {
                    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
                    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
                    if den.is_zero() {
                        return Err(Error::ZeroDenominator);
                    }
                    Ok(Coeff::Rat(BigRational::new(num, den)))
                } else {
                    let n: BigInt = text.parse().map_err(|_| bad())?;
                    Ok(Coeff::Rat(BigRational::from_integer(n)))
                }
            }
            CoefficientDomain::PrimeField(p) => {
                let n: BigInt = text.parse().map_err(|_| bad())?;
                let p_big = BigInt::from(p);
                let r = ((n % &p_big) + &p_big) % &p_big;
                let (_, digits) = r.to_u64_digits();
                Ok(Coeff::Mod {
                    residue: digits.first().copied().unwrap_or(0),
                    modulus: p,
                })
            }
        }
    }
}

impl fmt::Display for CoefficientDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientDomain::Integers => write!(f, "integers"),
            CoefficientDomain::Rationals => write!(f, "rationals"),
            CoefficientDomain::PrimeField(p) => write!(f, "prime-field({p})"),
        }
    }
}

/// A scalar in one of the supported domains.
///
/// Invariant: `Mod` residues satisfy `residue < modulus`. Rationals are
/// kept reduced by `BigRational` itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rat(BigRational),
    Mod { residue: u64, modulus: u64 },
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rat(q) => q.is_zero(),
            Coeff::Mod { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rat(q) => q.is_one(),
            Coeff::Mod { residue, modulus } => *residue == 1 % *modulus,
        }
    }

    /// True for an integer rational or any residue.
    pub fn is_integral(&self) -> bool {
        match self {
            Coeff::Rat(q) => q.is_integer(),
            Coeff::Mod { .. } => true,
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a + b),
            (
                Coeff::Mod {
                    residue: a,
                    modulus: p,
                },
                Coeff::Mod {
                    residue: b,
                    modulus: q,
                },
            ) => {
                assert_eq!(p, q, "mixed moduli");
                Coeff::Mod {
                    residue: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => panic!("mixed coefficient domains"),
        }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Rat(a) => Coeff::Rat(-a),
            Coeff::Mod { residue, modulus } => Coeff::Mod {
                residue: if *residue == 0 { 0 } else { modulus - residue },
                modulus: *modulus,
            },
        }
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a * b),
            (
                Coeff::Mod {
                    residue: a,
                    modulus: p,
                },
                Coeff::Mod {
                    residue: b,
                    modulus: q,
                },
            ) => {
                assert_eq!(p, q, "mixed moduli");
                Coeff::Mod {
                    residue: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => panic!("mixed coefficient domains"),
        }
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn inv(&self) -> Result<Coeff> {
        match self {
            Coeff::Rat(a) => {
                if a.is_zero() {
                    Err(Error::ZeroDenominator)
                } else {
                    Ok(Coeff::Rat(a.recip()))
                }
            }
            Coeff::Mod { residue, modulus } => {
                if *residue == 0 {
                    Err(Error::ZeroDenominator)
                } else {
                    Ok(Coeff::Mod {
                        residue: pow_mod(*residue, *modulus - 2, *modulus),
                        modulus: *modulus,
                    })
                }
            }
        }
    }

    /// Exact division; errors on zero divisor.
    pub fn div(&self, other: &Coeff) -> Result<Coeff> {
        Ok(self.mul(&other.inv()?))
    }

    /// Is this scalar `1` or `-1` in its domain? (`-1` means `p-1` mod `p`.)
    pub fn is_plus_minus_one(&self) -> bool {
        if self.is_one() {
            return true;
        }
        self.neg().is_one()
    }

    /// Sign information used for canonical normalization. For rationals
    /// this is the usual sign. For residues, "negative" means the
    /// representative lies in the upper half `(p/2, p)`, so negating
    /// maps it into `[0, p/2]`; this gives every nonzero pair `{c, -c}`
    /// a canonical representative.
    pub fn is_negative_for_normalization(&self) -> bool {
        match self {
            Coeff::Rat(q) => q.is_negative(),
            Coeff::Mod { residue, modulus } => *residue > modulus / 2,
        }
    }

    /// The rational payload, if this is a `Rat`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coeff::Rat(q) => Some(q),
            Coeff::Mod { .. } => None,
        }
    }

    /// Render in the domain's input syntax: `a/b` or integer for
    /// rationals, the canonical residue for prime fields.
    pub fn to_literal(&self) -> String {
        match self {
            Coeff::Rat(q) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Coeff::Mod { residue, .. } => residue.to_string(),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin for u64: the witness set
/// {2,3,5,7,11,13,17,19,23,29,31,37} decides primality for all u64.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
