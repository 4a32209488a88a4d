//! Hamiltonians H = H₋ + H₀ + H₊ on a reflection-symmetric lattice.
//!
//! H₋ and H₊ are even self-adjoint elements of the two half-algebras.
//! The cross-plane part is a sum over subsets 𝔍 of minus-side indices,
//!
//!   H₀ = Σ_𝔍 J_𝔍 · i^{σ(𝔍)} · C_𝔍 ϑ(C_𝔍),   σ(𝔍) = |𝔍| mod 2,
//!
//! with C_𝔍 the canonically ordered product of the subset's Majoranas and
//! J_𝔍 real. Each summand is self-adjoint and reflection-symmetric. The
//! trace functional is reflection-positive on the even half-algebras
//! whenever the coupling signs satisfy: all σ=1 couplings share one sign
//! (either sign), and all σ=0 couplings are ≤ 0. [`classify_couplings`]
//! checks exactly that condition; it is sufficient, not necessary.

use num_complex::Complex64;
use serde::Serialize;

use crate::clifford::{CliffordElement, MonomialIndex, Parity};
use crate::error::{Error, Result};
use crate::geometry::{ReflectionGeometry, Side};

const SELF_ADJOINT_TOL: f64 = 1e-12;

/// One cross-plane interaction term: the subset 𝔍 ⊂ Λ₋ and its real
/// coupling J.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossTerm {
    pub subset: MonomialIndex,
    pub coupling: f64,
}

impl CrossTerm {
    pub fn new(subset: MonomialIndex, coupling: f64) -> Self {
        CrossTerm { subset, coupling }
    }
}

/// σ(𝔍) = |𝔍| mod 2.
pub fn sigma(subset: &MonomialIndex) -> u8 {
    (subset.degree() % 2) as u8
}

/// The H₊ specification: a mirror image of H₋ or an explicit element.
#[derive(Clone, Debug)]
pub enum HPlus {
    Mirror,
    Explicit(CliffordElement),
}

/// Full Hamiltonian specification; `beta` multiplies H when assembled.
#[derive(Clone, Debug)]
pub struct HamiltonianSpec {
    pub geometry: ReflectionGeometry,
    pub h_minus: CliffordElement,
    pub cross: Vec<CrossTerm>,
    pub h_plus: HPlus,
    pub beta: f64,
}

impl HamiltonianSpec {
    pub fn new(
        geometry: ReflectionGeometry,
        h_minus: CliffordElement,
        cross: Vec<CrossTerm>,
        h_plus: HPlus,
        beta: f64,
    ) -> Result<Self> {
        let spec = HamiltonianSpec { geometry, h_minus, cross, h_plus, beta };
        spec.validate()?;
        Ok(spec)
    }

    /// Mirror-symmetric spec with only cross terms (H₋ = H₊ = 0).
    pub fn cross_only(geometry: ReflectionGeometry, cross: Vec<CrossTerm>, beta: f64) -> Result<Self> {
        let h_minus = CliffordElement::zero(geometry.num_majoranas())?;
        Self::new(geometry, h_minus, cross, HPlus::Mirror, beta)
    }

    /// Checks all structural invariants, collecting every violation.
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        self.geometry.ensure_valid()?;
        let n = self.geometry.num_majoranas();

        if !self.beta.is_finite() || self.beta <= 0.0 {
            problems.push(format!("beta must be a positive finite number, got {}", self.beta));
        }

        check_half(&self.geometry, &self.h_minus, Side::Minus, "h_minus", &mut problems);
        if let HPlus::Explicit(h_plus) = &self.h_plus {
            check_half(&self.geometry, h_plus, Side::Plus, "h_plus", &mut problems);
        }

        let mut seen: Vec<MonomialIndex> = Vec::new();
        for (k, term) in self.cross.iter().enumerate() {
            if term.subset.is_identity() {
                problems.push(format!("cross term #{k} has an empty subset"));
            }
            if !term.coupling.is_finite() {
                problems.push(format!("cross term #{k} has non-finite coupling {}", term.coupling));
            }
            if let Some(max) = term.subset.max_index() {
                if max as usize > n {
                    problems.push(format!(
                        "cross term #{k} touches index {max}, beyond the {n} Majoranas"
                    ));
                } else if term
                    .subset
                    .indices()
                    .iter()
                    .any(|&i| self.geometry.side_of_index(i) != Side::Minus)
                {
                    problems.push(format!(
                        "cross term #{k} subset {} is not contained in the minus side",
                        term.subset
                    ));
                }
            }
            if seen.contains(&term.subset) {
                problems.push(format!("cross term #{k} duplicates subset {}", term.subset));
            }
            seen.push(term.subset);
        }

        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidHamiltonian(
                problems.iter().map(|p| format!("  - {p}")).collect::<Vec<_>>().join("\n"),
            ))
        }
    }

    /// H₊ as an element: ϑ(H₋) in the mirror case.
    pub fn h_plus_element(&self) -> Result<CliffordElement> {
        match &self.h_plus {
            HPlus::Mirror => self.h_minus.reflect(&self.geometry),
            HPlus::Explicit(e) => Ok(e.clone()),
        }
    }

    /// The cross-plane part H₀ = Σ J i^σ C ϑ(C), unscaled by beta. The
    /// result is verified self-adjoint and reflection-symmetric before
    /// being returned.
    pub fn build_h0(&self) -> Result<CliffordElement> {
        let n = self.geometry.num_majoranas();
        let mut h0 = CliffordElement::zero(n)?;
        for term in &self.cross {
            let c = CliffordElement::monomial(n, term.subset)?;
            let theta_c = c.reflect(&self.geometry)?;
            let phase = match sigma(&term.subset) {
                0 => Complex64::new(1.0, 0.0),
                _ => Complex64::new(0.0, 1.0),
            };
            let summand = c.mul(&theta_c)?.scale(phase * term.coupling);
            h0 = h0.add(&summand)?;
        }
        let scale = h0.max_abs_coefficient().max(1.0);
        let adj_residual = h0.self_adjointness_residual();
        let refl_residual = h0.max_coeff_distance(&h0.reflect(&self.geometry)?)?;
        if adj_residual > SELF_ADJOINT_TOL * scale || refl_residual > SELF_ADJOINT_TOL * scale {
            return Err(Error::Numerical(format!(
                "H0 construction lost symmetry: adjoint residual {adj_residual:.3e}, \
                 reflection residual {refl_residual:.3e}"
            )));
        }
        Ok(h0)
    }

    /// beta · (H₋ + H₀ + H₊); self-adjoint within 1e−12.
    pub fn assemble(&self) -> Result<CliffordElement> {
        self.validate()?;
        let h = self
            .h_minus
            .add(&self.build_h0()?)?
            .add(&self.h_plus_element()?)?
            .scale(Complex64::new(self.beta, 0.0));
        let residual = h.self_adjointness_residual();
        let tol = SELF_ADJOINT_TOL * h.max_abs_coefficient().max(1.0);
        if residual > tol {
            return Err(Error::NotSelfAdjoint { residual, tolerance: tol });
        }
        Ok(h)
    }
}

fn check_half(
    g: &ReflectionGeometry,
    h: &CliffordElement,
    side: Side,
    name: &str,
    problems: &mut Vec<String>,
) {
    if h.num_generators() != g.num_majoranas() {
        problems.push(format!(
            "{name} is over {} generators, geometry has {}",
            h.num_generators(),
            g.num_majoranas()
        ));
        return;
    }
    if h.parity() != Parity::Even {
        problems.push(format!("{name} is not even"));
    }
    let tol = SELF_ADJOINT_TOL * h.max_abs_coefficient().max(1.0);
    if h.self_adjointness_residual() > tol {
        problems.push(format!("{name} is not self-adjoint"));
    }
    match h.supported_on(g, side) {
        Ok(true) => {}
        Ok(false) => problems.push(format!("{name} is not supported on the {side} side")),
        Err(e) => problems.push(format!("{name}: {e}")),
    }
}

/// Verdict of the coupling-sign condition.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum CouplingClassification {
    Certified,
    Violated { reasons: Vec<String> },
}

impl CouplingClassification {
    pub fn is_certified(&self) -> bool {
        matches!(self, CouplingClassification::Certified)
    }
}

/// Checks the sign restrictions on the cross couplings: σ=0 terms must
/// have J ≤ 0, σ=1 terms must all share one sign (fixed by the first
/// nonzero σ=1 coupling in input order). Zero couplings are compatible
/// with either family. The verdict is invariant under permutations of
/// the list and positive rescaling of all couplings.
pub fn classify_couplings(cross: &[CrossTerm]) -> CouplingClassification {
    let mut reasons = Vec::new();
    let mut odd_family_sign: Option<(f64, MonomialIndex)> = None;
    for term in cross {
        if sigma(&term.subset) == 1 {
            if term.coupling != 0.0 && odd_family_sign.is_none() {
                odd_family_sign = Some((term.coupling.signum(), term.subset));
            }
        }
    }
    for term in cross {
        match sigma(&term.subset) {
            0 => {
                if term.coupling > 0.0 {
                    reasons.push(format!(
                        "term {}: positive coupling {} with sigma=0 (requires J <= 0)",
                        term.subset, term.coupling
                    ));
                }
            }
            _ => {
                if let Some((sign, anchor)) = odd_family_sign {
                    if term.coupling != 0.0 && term.coupling.signum() != sign {
                        reasons.push(format!(
                            "term {}: coupling {} conflicts with the sigma=1 family sign {} set by term {}",
                            term.subset, term.coupling, sign, anchor
                        ));
                    }
                }
            }
        }
    }
    if reasons.is_empty() {
        CouplingClassification::Certified
    } else {
        CouplingClassification::Violated { reasons }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::Representation;

    fn geom2() -> ReflectionGeometry {
        ReflectionGeometry::chain(1, 1).unwrap()
    }

    fn term(indices: &[u32], j: f64) -> CrossTerm {
        CrossTerm::new(MonomialIndex::from_indices(indices).unwrap(), j)
    }

    #[test]
    fn sigma_is_cardinality_parity() {
        assert_eq!(sigma(&MonomialIndex::from_indices(&[1]).unwrap()), 1);
        assert_eq!(sigma(&MonomialIndex::from_indices(&[1, 3]).unwrap()), 0);
        assert_eq!(sigma(&MonomialIndex::from_indices(&[1, 2, 5]).unwrap()), 1);
    }

    #[test]
    fn h0_of_single_odd_term() {
        // J = −1 on 𝔍 = {1} with ϑ: 1↔2 gives −i c1c2.
        let spec = HamiltonianSpec::cross_only(geom2(), vec![term(&[1], -1.0)], 1.0).unwrap();
        let h0 = spec.build_h0().unwrap();
        let expected = CliffordElement::from_terms(
            2,
            [(MonomialIndex::from_indices(&[1, 2]).unwrap(), Complex64::new(0.0, -1.0))],
        )
        .unwrap();
        assert_eq!(h0, expected);
    }

    #[test]
    fn h0_of_empty_cross_list() {
        let spec = HamiltonianSpec::cross_only(geom2(), vec![], 1.0).unwrap();
        assert!(spec.build_h0().unwrap().is_zero());
    }

    #[test]
    fn h0_even_subset_sign_matches_dense_oracle() {
        // 𝔍 = {1,3}, J = −2, index pairing (1,2),(3,4):
        // C = c1c3, ϑC = c2c4, C·ϑC = c1c3c2c4 = −c1c2c3c4.
        let g = ReflectionGeometry::from_pairs(&[(1, 2), (3, 4)], 1).unwrap();
        let spec = HamiltonianSpec::cross_only(g, vec![term(&[1, 3], -2.0)], 1.0).unwrap();
        let h0 = spec.build_h0().unwrap();
        let expected = CliffordElement::from_terms(
            4,
            [(MonomialIndex::from_indices(&[1, 2, 3, 4]).unwrap(), Complex64::new(2.0, 0.0))],
        )
        .unwrap();
        assert_eq!(h0, expected);

        let rep = Representation::new(2).unwrap();
        let m = rep.to_matrix(&h0).unwrap();
        assert!((&m - m.adjoint()).norm() < 1e-12);
    }

    #[test]
    fn assemble_counterexample_model() {
        let spec = HamiltonianSpec::cross_only(geom2(), vec![term(&[1], -1.0)], 1.0).unwrap();
        let h = spec.assemble().unwrap();
        let expected = CliffordElement::from_terms(
            2,
            [(MonomialIndex::from_indices(&[1, 2]).unwrap(), Complex64::new(0.0, -1.0))],
        )
        .unwrap();
        assert_eq!(h, expected);
    }

    #[test]
    fn assemble_applies_beta_and_mirror() {
        // H₋ = −i c1c2 on the minus side of a 2-site-per-side chain.
        let g = ReflectionGeometry::chain(2, 1).unwrap();
        let h_minus = CliffordElement::from_terms(
            4,
            [(MonomialIndex::from_indices(&[1, 2]).unwrap(), Complex64::new(0.0, -1.0))],
        )
        .unwrap();
        let spec = HamiltonianSpec::new(g.clone(), h_minus.clone(), vec![], HPlus::Mirror, 2.0).unwrap();
        let h = spec.assemble().unwrap();
        let mirrored = h_minus.reflect(&g).unwrap();
        let expected = h_minus.add(&mirrored).unwrap().scale(Complex64::new(2.0, 0.0));
        assert_eq!(h, expected);
        // the mirror image lands on plus-side indices {3,4}
        assert!(mirrored.coefficient(&MonomialIndex::from_indices(&[3, 4]).unwrap()).norm() > 0.0);
    }

    #[test]
    fn assemble_of_all_zero_parts() {
        let spec = HamiltonianSpec::cross_only(geom2(), vec![], 1.0).unwrap();
        assert!(spec.assemble().unwrap().is_zero());
    }

    #[test]
    fn validation_rejects_bad_specs() {
        let g = ReflectionGeometry::chain(2, 1).unwrap();
        // odd h_minus
        let odd = CliffordElement::generator(4, 1).unwrap();
        assert!(HamiltonianSpec::new(g.clone(), odd, vec![], HPlus::Mirror, 1.0).is_err());
        // cross subset on the plus side
        assert!(HamiltonianSpec::cross_only(g.clone(), vec![term(&[3], -1.0)], 1.0).is_err());
        // duplicate subsets are rejected, not merged
        assert!(HamiltonianSpec::cross_only(
            g.clone(),
            vec![term(&[1], -1.0), term(&[1], -0.5)],
            1.0
        )
        .is_err());
        // non-positive beta
        assert!(HamiltonianSpec::cross_only(g, vec![term(&[1], -1.0)], 0.0).is_err());
    }

    #[test]
    fn per_term_adjoint_sign_identity() {
        // (C ϑC)* = (−1)^{|𝔍|} C ϑC, checked symbolically per subset.
        let g = ReflectionGeometry::chain(2, 2).unwrap();
        let n = g.num_majoranas();
        for subset in [&[1u32][..], &[1, 2], &[1, 3], &[1, 2, 3], &[1, 2, 3, 4]] {
            let m = MonomialIndex::from_indices(subset).unwrap();
            let c = CliffordElement::monomial(n, m).unwrap();
            let prod = c.mul(&c.reflect(&g).unwrap()).unwrap();
            let sign = if subset.len() % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(prod.adjoint(), prod.scale(Complex64::new(sign, 0.0)));
        }
    }

    #[test]
    fn classification_examples() {
        assert!(classify_couplings(&[term(&[1], -1.0)]).is_certified());

        match classify_couplings(&[term(&[1], 1.0), term(&[3], -1.0)]) {
            CouplingClassification::Violated { reasons } => {
                assert_eq!(reasons.len(), 1);
                assert!(reasons[0].contains("sigma=1 family"));
            }
            other => panic!("expected violation, got {other:?}"),
        }

        match classify_couplings(&[term(&[1, 3], 0.5)]) {
            CouplingClassification::Violated { reasons } => {
                assert!(reasons[0].contains("sigma=0"));
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn classification_invariances() {
        let base = vec![term(&[1], -1.0), term(&[2], -0.25), term(&[1, 2], -0.5)];
        assert!(classify_couplings(&base).is_certified());

        // permutation invariance of the verdict
        let mut permuted = base.clone();
        permuted.reverse();
        assert_eq!(classify_couplings(&permuted), classify_couplings(&base));

        // positive rescaling invariance
        let scaled: Vec<CrossTerm> =
            base.iter().map(|t| CrossTerm::new(t.subset, 3.5 * t.coupling)).collect();
        assert_eq!(classify_couplings(&scaled), classify_couplings(&base));

        // both signs of a pure sigma=1 family certify
        assert!(classify_couplings(&[term(&[1], 1.0), term(&[2], 0.5)]).is_certified());

        // zero couplings are signless
        assert!(classify_couplings(&[term(&[1], 0.0), term(&[2], -1.0)]).is_certified());
        assert!(classify_couplings(&[term(&[1], 0.0), term(&[2], 1.0)]).is_certified());
    }
}
