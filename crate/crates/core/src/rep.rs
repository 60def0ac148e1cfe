//! The twisting data: a homomorphism φ to Z and a matrix representation
//! α, validated against a presentation, plus the tensor map sending a
//! group-ring element to a Laurent-polynomial matrix via
//! g ↦ α(g)·t^{φ(g)}.

use crate::algebra::{Coeff, CoefficientDomain, ExactMatrix, LaurentPolynomial, ScalarMatrix};
use crate::group::{FreeWord, GroupPresentation, GroupRingElement};
use crate::{par, Error, Result};

/// What is known about the group of determinants of representation
/// images: the unit ambiguity of a torsion value is ±u·t^k with u drawn
/// from this group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnitSpec {
    /// Every image determinant is ±1 (always true for trivial and
    /// SL-valued representations).
    PlusMinusOne,
    /// The determinant group is generated by these values (±1 is
    /// implicitly adjoined everywhere it is consumed).
    GeneratedBy(Vec<Coeff>),
    /// Nothing usable is known.
    Unknown,
}

impl UnitSpec {
    /// All unit values reachable as products of the generators and
    /// their inverses with word length at most `search_bound`. For
    /// `PlusMinusOne` this is just {1, -1}; for `Unknown`, empty.
    pub fn reachable_units(&self, domain: CoefficientDomain, search_bound: u32) -> Vec<Coeff> {
        let one = domain.one();
        match self {
            UnitSpec::PlusMinusOne => vec![one.clone(), one.neg()],
            UnitSpec::Unknown => Vec::new(),
            UnitSpec::GeneratedBy(gens) => {
                let mut steps: Vec<Coeff> = Vec::new();
                for g in gens {
                    steps.push(g.clone());
                    if let Ok(inv) = g.inv() {
                        steps.push(inv);
                    }
                }
                let mut seen = vec![one.clone(), one.neg()];
                let mut frontier = vec![one];
                for _ in 0..search_bound {
                    let mut next = Vec::new();
                    for u in &frontier {
                        for s in &steps {
                            let v = u.mul(s);
                            if !seen.contains(&v) {
                                seen.push(v.neg());
                                seen.push(v.clone());
                                next.push(v);
                            }
                        }
                    }
                    if next.is_empty() {
                        break;
                    }
                    frontier = next;
                }
                seen
            }
        }
    }

    /// Is `c` equal to ±u for a unit u reachable within the bound?
    /// ±1 is always allowed; beyond that, `Unknown` accepts nothing
    /// (callers decide how to degrade).
    pub fn allows(&self, c: &Coeff, search_bound: u32) -> bool {
        if c.is_plus_minus_one() {
            return true;
        }
        if c.is_zero() {
            return false;
        }
        match self {
            UnitSpec::PlusMinusOne | UnitSpec::Unknown => false,
            UnitSpec::GeneratedBy(_) => {
                let domain = match c {
                    Coeff::Rat(_) => CoefficientDomain::Rationals,
                    Coeff::Mod { modulus, .. } => CoefficientDomain::PrimeField(*modulus),
                };
                self.reachable_units(domain, search_bound).contains(c)
            }
        }
    }
}

/// Validated twisting data: φ values per generator, α images per
/// generator, and everything derived from them. Immutable once built;
/// the constructor performs all validation.
#[derive(Debug, Clone)]
pub struct TwistData {
    presentation: GroupPresentation,
    phi: Vec<i64>,
    images: Vec<ScalarMatrix>,
    inverses: Vec<ScalarMatrix>,
    k: usize,
    domain: CoefficientDomain,
    primitive: bool,
}

/// Check that φ kills every relator. Returns whether φ is primitive
/// (gcd of values is 1); non-primitive is advisory, not an error.
pub fn validate_phi(pres: &GroupPresentation, phi: &[i64]) -> Result<bool> {
    if phi.len() != pres.generator_count() {
        return Err(Error::PhiLengthMismatch {
            got: phi.len(),
            expected: pres.generator_count(),
        });
    }
    for (index, r) in pres.relators().iter().enumerate() {
        let sum = r.phi_weight(phi);
        if sum != 0 {
            return Err(Error::PhiNotHomomorphism {
                index,
                relator: r.to_text(pres.generator_names()),
                sum,
            });
        }
    }
    let gcd = phi.iter().fold(0u64, |acc, &v| {
        num_integer::gcd(acc, v.unsigned_abs())
    });
    Ok(gcd == 1)
}

/// Check that the images define a representation: correct shapes, unit
/// determinants, and every relator mapping to the identity. Returns the
/// cached inverses.
pub fn validate_representation(
    pres: &GroupPresentation,
    images: &[ScalarMatrix],
) -> Result<Vec<ScalarMatrix>> {
    if images.len() != pres.generator_count() {
        return Err(Error::ImageCountMismatch {
            got: images.len(),
            expected: pres.generator_count(),
        });
    }
    let k = images.first().map_or(1, ScalarMatrix::size);
    let domain = images
        .first()
        .map_or(CoefficientDomain::Integers, ScalarMatrix::domain);
    let names = pres.generator_names();
    let mut inverses = Vec::with_capacity(images.len());
    for (i, m) in images.iter().enumerate() {
        if m.size() != k {
            return Err(Error::ImageDimensionMismatch {
                name: names[i].clone(),
                rows: m.size(),
                cols: m.size(),
                k,
            });
        }
        if m.domain() != domain {
            return Err(Error::DimensionMismatch {
                detail: format!(
                    "image of `{}` uses domain {}, expected {domain}",
                    names[i],
                    m.domain()
                ),
            });
        }
        let det = m.det();
        // GL(k, R): the determinant must be a unit of the chosen ring,
        // which over the integers means ±1 and over a field nonzero.
        let invertible = match domain {
            CoefficientDomain::Integers => det.is_plus_minus_one(),
            _ => !det.is_zero(),
        };
        if !invertible {
            return Err(Error::NonInvertibleImage {
                name: names[i].clone(),
                domain: domain.to_string(),
                det: det.to_literal(),
            });
        }
        inverses.push(m.inverse().expect("unit determinant"));
    }
    for (index, r) in pres.relators().iter().enumerate() {
        let mut acc = ScalarMatrix::identity(domain, k);
        for &(g, e) in r.letters() {
            let factor = if e == 1 { &images[g] } else { &inverses[g] };
            acc = acc.mul(factor);
        }
        if !acc.is_identity() {
            return Err(Error::RelatorImageNotIdentity {
                index,
                relator: r.to_text(names),
            });
        }
    }
    Ok(inverses)
}

impl TwistData {
    /// Validate and assemble. The domain and dimension come from the
    /// images; an empty generator list degenerates to k = 1 over the
    /// integers.
    pub fn new(
        presentation: GroupPresentation,
        phi: Vec<i64>,
        images: Vec<ScalarMatrix>,
    ) -> Result<Self> {
        let domain = images
            .first()
            .map_or(CoefficientDomain::Integers, ScalarMatrix::domain);
        domain.validate()?;
        let primitive = validate_phi(&presentation, &phi)?;
        let inverses = validate_representation(&presentation, &images)?;
        let k = images.first().map_or(1, ScalarMatrix::size);
        Ok(TwistData {
            presentation,
            phi,
            images,
            inverses,
            k,
            domain,
            primitive,
        })
    }

    /// The trivial rank-1 representation over the integers with the
    /// given φ.
    pub fn trivial(presentation: GroupPresentation, phi: Vec<i64>) -> Result<Self> {
        let images = (0..presentation.generator_count())
            .map(|_| ScalarMatrix::identity(CoefficientDomain::Integers, 1))
            .collect();
        Self::new(presentation, phi, images)
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn phi(&self) -> &[i64] {
        &self.phi
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    /// Whether gcd of the φ values is 1. Advisory: the torsion
    /// computation is indifferent, but the theorems are stated for
    /// primitive classes.
    pub fn phi_primitive(&self) -> bool {
        self.primitive
    }

    pub fn image(&self, generator: usize) -> &ScalarMatrix {
        &self.images[generator]
    }

    pub fn image_of_word(&self, w: &FreeWord) -> ScalarMatrix {
        let mut acc = ScalarMatrix::identity(self.domain, self.k);
        for &(g, e) in w.letters() {
            let factor = if e == 1 { &self.images[g] } else { &self.inverses[g] };
            acc = acc.mul(factor);
        }
        acc
    }

    /// Apply the tensor representation entrywise:
    /// Σ c·w ↦ Σ c·α(w)·t^{φ(w)}, a k×k Laurent matrix.
    pub fn tensor_apply(&self, elt: &GroupRingElement) -> ExactMatrix {
        let mut acc = ExactMatrix::zero(self.domain, self.k, self.k);
        for (w, c) in elt.terms() {
            let img = self.image_of_word(w);
            let exponent = w.phi_weight(&self.phi);
            let scalar = self.domain.from_i64(c);
            let term = ExactMatrix::from_fn(self.domain, self.k, self.k, |i, j| {
                LaurentPolynomial::monomial(self.domain, exponent, scalar.mul(img.get(i, j)))
            });
            acc = acc.add(&term);
        }
        acc
    }

    /// Apply the tensor representation to every entry of an r×s
    /// group-ring matrix, producing the rk×sk block matrix. Blocks are
    /// independent, so they evaluate in parallel when available.
    pub fn matrix_tensor_apply(&self, grid: &[Vec<GroupRingElement>]) -> ExactMatrix {
        let r = grid.len();
        let s = grid.first().map_or(0, Vec::len);
        for row in grid {
            assert_eq!(row.len(), s, "ragged group-ring matrix");
        }
        let blocks = par::map_indexed(r * s, true, |idx| {
            self.tensor_apply(&grid[idx / s][idx % s])
        });
        let k = self.k;
        ExactMatrix::from_fn(self.domain, r * k, s * k, |i, j| {
            blocks[(i / k) * s + (j / k)].get(i % k, j % k).clone()
        })
    }

    /// det(tensor_apply(x_j − 1)), the Wada denominator candidate for
    /// generator j.
    pub fn generator_minus_one_det(&self, j: usize) -> LaurentPolynomial {
        let elt = GroupRingElement::word_minus_one(&FreeWord::generator(j));
        self.tensor_apply(&elt)
            .det_exact()
            .expect("square by construction")
    }

    /// Describe the determinant image of the representation: ±1 when
    /// every generator image has determinant ±1, otherwise the list of
    /// generator determinants. `_search_bound` is reserved for
    /// membership testing, which happens at the monicity verdict.
    pub fn determinant_image_spec(&self, _search_bound: u32) -> UnitSpec {
        let mut gens: Vec<Coeff> = Vec::new();
        for m in &self.images {
            let det = m.det();
            if !det.is_plus_minus_one() && !gens.contains(&det) {
                gens.push(det);
            }
        }
        if gens.is_empty() {
            UnitSpec::PlusMinusOne
        } else {
            UnitSpec::GeneratedBy(gens)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: CoefficientDomain = CoefficientDomain::Integers;
    const Q: CoefficientDomain = CoefficientDomain::Rationals;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn trefoil() -> GroupPresentation {
        GroupPresentation::parse(names(&["x", "y"]), &["x y x y^-1 x^-1 y^-1".to_string()])
            .unwrap()
    }

    fn sl2z_images() -> Vec<ScalarMatrix> {
        let x = ScalarMatrix::from_rows(
            Z,
            vec![
                vec![Z.from_i64(1), Z.from_i64(1)],
                vec![Z.from_i64(0), Z.from_i64(1)],
            ],
        )
        .unwrap();
        let y = ScalarMatrix::from_rows(
            Z,
            vec![
                vec![Z.from_i64(1), Z.from_i64(0)],
                vec![Z.from_i64(-1), Z.from_i64(1)],
            ],
        )
        .unwrap();
        vec![x, y]
    }

    #[test]
    fn phi_validation_cases() {
        let p = trefoil();
        assert_eq!(validate_phi(&p, &[1, 1]), Ok(true));
        assert_eq!(validate_phi(&p, &[2, 2]), Ok(false));
        assert!(matches!(
            validate_phi(&p, &[1, 2]),
            Err(Error::PhiNotHomomorphism { sum: -1, .. })
        ));
        assert!(matches!(
            validate_phi(&p, &[1]),
            Err(Error::PhiLengthMismatch { .. })
        ));
    }

    #[test]
    fn representation_validation_cases() {
        let p = trefoil();
        assert!(validate_representation(&p, &sl2z_images()).is_ok());
        // y ↦ identity breaks the relator.
        let broken = vec![sl2z_images().remove(0), ScalarMatrix::identity(Z, 2)];
        assert!(matches!(
            validate_representation(&p, &broken),
            Err(Error::RelatorImageNotIdentity { index: 0, .. })
        ));
        // Non-unit determinant over the integers.
        let doubled = vec![
            ScalarMatrix::from_rows(Z, vec![vec![Z.from_i64(2)]]).unwrap(),
            ScalarMatrix::from_rows(Z, vec![vec![Z.from_i64(2)]]).unwrap(),
        ];
        let free = GroupPresentation::new(names(&["x", "y"]), vec![]).unwrap();
        assert!(matches!(
            validate_representation(&free, &doubled),
            Err(Error::NonInvertibleImage { .. })
        ));
        // The same matrices are fine over the rationals.
        let rational = vec![
            ScalarMatrix::from_rows(Q, vec![vec![Q.from_i64(2)]]).unwrap(),
            ScalarMatrix::from_rows(Q, vec![vec![Q.from_i64(2)]]).unwrap(),
        ];
        assert!(validate_representation(&free, &rational).is_ok());
    }

    #[test]
    fn cyclic_rotation_does_not_change_validity() {
        let p = trefoil();
        let r = &p.relators()[0];
        let letters = r.letters().to_vec();
        for rot in 0..letters.len() {
            let mut rotated = letters[rot..].to_vec();
            rotated.extend_from_slice(&letters[..rot]);
            let rp = GroupPresentation::new(
                names(&["x", "y"]),
                vec![FreeWord::from_letters(rotated)],
            )
            .unwrap();
            assert!(validate_representation(&rp, &sl2z_images()).is_ok(), "rotation {rot}");
            assert_eq!(validate_phi(&rp, &[1, 1]), Ok(true), "rotation {rot}");
        }
    }

    #[test]
    fn tensor_apply_rank_one() {
        let p = trefoil();
        let twist = TwistData::trivial(p.clone(), vec![1, 1]).unwrap();
        let x = GroupRingElement::from_word(p.parse_word("x").unwrap());
        let tx = twist.tensor_apply(&x);
        assert_eq!(tx.get(0, 0), &LaurentPolynomial::from_terms(Z, &[(1, 1)]));
        let one_minus_x = GroupRingElement::one().sub(&x);
        let t1mx = twist.tensor_apply(&one_minus_x);
        assert_eq!(
            t1mx.get(0, 0),
            &LaurentPolynomial::from_terms(Z, &[(0, 1), (1, -1)])
        );
    }

    #[test]
    fn tensor_apply_rank_two() {
        let p = trefoil();
        let twist = TwistData::new(p.clone(), vec![1, 1], sl2z_images()).unwrap();
        let x = GroupRingElement::from_word(p.parse_word("x").unwrap());
        let tx = twist.tensor_apply(&x);
        // α(x)·t = [[t, t], [0, t]].
        let t = LaurentPolynomial::from_terms(Z, &[(1, 1)]);
        assert_eq!(tx.get(0, 0), &t);
        assert_eq!(tx.get(0, 1), &t);
        assert!(tx.get(1, 0).is_zero());
        assert_eq!(tx.get(1, 1), &t);
    }

    #[test]
    fn tensor_apply_is_multiplicative() {
        let p = trefoil();
        let twist = TwistData::new(p.clone(), vec![1, 1], sl2z_images()).unwrap();
        let a = GroupRingElement::from_word(p.parse_word("x y^-1").unwrap())
            .add(&GroupRingElement::one());
        let b = GroupRingElement::from_word(p.parse_word("y x").unwrap())
            .sub(&GroupRingElement::from_word(p.parse_word("x^-1").unwrap()));
        assert_eq!(
            twist.tensor_apply(&a.mul(&b)),
            twist.tensor_apply(&a).mul(&twist.tensor_apply(&b))
        );
        assert_eq!(
            twist.tensor_apply(&a.add(&b)),
            twist.tensor_apply(&a).add(&twist.tensor_apply(&b))
        );
    }

    #[test]
    fn tensored_generator_determinant() {
        let p = trefoil();
        let twist = TwistData::new(p.clone(), vec![1, 1], sl2z_images()).unwrap();
        for (j, name) in ["x", "y"].iter().enumerate() {
            let g = GroupRingElement::from_word(p.parse_word(name).unwrap());
            let det = twist.tensor_apply(&g).det_exact().unwrap();
            // det(α(g))·t^{k·φ(g)} with det 1, k = 2, φ = 1.
            assert_eq!(det, LaurentPolynomial::from_terms(Z, &[(2, 1)]), "generator {j}");
        }
    }

    #[test]
    fn matrix_tensor_apply_blocks() {
        let p = trefoil();
        let twist = TwistData::new(p.clone(), vec![1, 1], sl2z_images()).unwrap();
        let x = GroupRingElement::from_word(p.parse_word("x").unwrap());
        let grid = vec![
            vec![GroupRingElement::one(), x.clone()],
            vec![GroupRingElement::zero(), GroupRingElement::one()],
        ];
        let big = twist.matrix_tensor_apply(&grid);
        assert_eq!((big.rows(), big.cols()), (4, 4));
        assert_eq!(big.get(0, 0), &LaurentPolynomial::one(Z));
        assert_eq!(big.get(0, 2), &LaurentPolynomial::from_terms(Z, &[(1, 1)]));
        assert!(big.get(2, 0).is_zero());
        assert_eq!(big.get(3, 3), &LaurentPolynomial::one(Z));
    }

    #[test]
    fn wada_denominator_candidates() {
        let p = trefoil();
        let twist = TwistData::trivial(p, vec![1, 1]).unwrap();
        // x − 1 ↦ t − 1 for both generators.
        for j in 0..2 {
            assert_eq!(
                twist.generator_minus_one_det(j),
                LaurentPolynomial::from_terms(Z, &[(0, -1), (1, 1)])
            );
        }
    }

    #[test]
    fn unit_spec_detection() {
        let p = trefoil();
        let sl2 = TwistData::new(p.clone(), vec![1, 1], sl2z_images()).unwrap();
        assert_eq!(sl2.determinant_image_spec(6), UnitSpec::PlusMinusOne);
        let trivial = TwistData::trivial(p, vec![1, 1]).unwrap();
        assert_eq!(trivial.determinant_image_spec(6), UnitSpec::PlusMinusOne);

        let free = GroupPresentation::new(vec!["x".to_string()], vec![]).unwrap();
        let three = TwistData::new(
            free,
            vec![1],
            vec![ScalarMatrix::from_rows(Q, vec![vec![Q.from_i64(3)]]).unwrap()],
        )
        .unwrap();
        assert_eq!(
            three.determinant_image_spec(6),
            UnitSpec::GeneratedBy(vec![Q.from_i64(3)])
        );
    }

    #[test]
    fn unit_spec_search() {
        let spec = UnitSpec::GeneratedBy(vec![Q.from_i64(3)]);
        assert!(spec.allows(&Q.from_i64(9), 6));
        assert!(spec.allows(&Q.parse_scalar("-1/3").unwrap(), 6));
        assert!(spec.allows(&Q.from_i64(-1), 6));
        assert!(!spec.allows(&Q.from_i64(2), 6));
        // 3^7 is out of reach at bound 6.
        assert!(!spec.allows(&Q.from_i64(2187), 6));
        assert!(spec.allows(&Q.from_i64(2187), 7));
        assert!(UnitSpec::PlusMinusOne.allows(&Q.from_i64(-1), 0));
        assert!(!UnitSpec::PlusMinusOne.allows(&Q.from_i64(3), 10));
        assert!(UnitSpec::Unknown.allows(&Q.from_i64(1), 10));
        assert!(!UnitSpec::Unknown.allows(&Q.from_i64(3), 10));
    }
}
