//! Property tests for the algebraic identities the engine relies on.
//!
//! Elements with Gaussian-integer coefficients make most identities hold
//! exactly in floating point (products and sign flips of small integers
//! are exact), so those are asserted with equality; representation-level
//! checks use relative tolerances.

use num_complex::Complex64;
use proptest::prelude::*;

use majorana_rp::clifford::{CliffordElement, MonomialIndex};
use majorana_rp::dense::Representation;
use majorana_rp::geometry::{ReflectionGeometry, Side};
use majorana_rp::gibbs::{rp_functional, RpContext};
use majorana_rp::hamiltonian::{classify_couplings, CrossTerm, HamiltonianSpec};

const N_GENS: usize = 6;

fn geometry6() -> ReflectionGeometry {
    ReflectionGeometry::chain(3, 1).unwrap()
}

/// Elements over 6 generators with small Gaussian-integer coefficients.
fn arb_element() -> impl Strategy<Value = CliffordElement> {
    let mask = (1u64 << N_GENS) - 1;
    proptest::collection::vec((0..=mask, -4i32..=4i32, -4i32..=4i32), 1..6).prop_map(|terms| {
        CliffordElement::from_terms(
            N_GENS,
            terms.into_iter().map(|(bits, re, im)| {
                (MonomialIndex::from_bits(bits), Complex64::new(re as f64, im as f64))
            }),
        )
        .expect("bits within range")
    })
}

/// Elements supported on one side of the 3+3 chain (indices 1..3 or 4..6).
fn arb_one_sided(side: Side) -> impl Strategy<Value = CliffordElement> {
    let shift = match side {
        Side::Minus => 0,
        Side::Plus => 3,
    };
    proptest::collection::vec((0u64..8, -4i32..=4i32, -4i32..=4i32), 1..5).prop_map(move |terms| {
        CliffordElement::from_terms(
            N_GENS,
            terms.into_iter().map(|(bits, re, im)| {
                (MonomialIndex::from_bits(bits << shift), Complex64::new(re as f64, im as f64))
            }),
        )
        .expect("bits within range")
    })
}

fn arb_cross_terms() -> impl Strategy<Value = Vec<CrossTerm>> {
    proptest::collection::vec((1u64..8, -2.0f64..2.0), 1..4).prop_map(|terms| {
        let mut out: Vec<CrossTerm> = Vec::new();
        for (bits, j) in terms {
            let subset = MonomialIndex::from_bits(bits);
            if out.iter().all(|t| t.subset != subset) {
                out.push(CrossTerm::new(subset, j));
            }
        }
        out
    })
}

#[test]
fn anticommutation_is_exhaustive_up_to_twelve_generators() {
    for n in [2usize, 4, 6, 8, 10, 12] {
        let id = CliffordElement::identity(n).unwrap();
        let zero = CliffordElement::zero(n).unwrap();
        for i in 1..=n as u32 {
            for j in 1..=n as u32 {
                let ci = CliffordElement::generator(n, i).unwrap();
                let cj = CliffordElement::generator(n, j).unwrap();
                let anti = ci.mul(&cj).unwrap().add(&cj.mul(&ci).unwrap()).unwrap();
                if i == j {
                    assert_eq!(anti, id.scale(Complex64::new(2.0, 0.0)));
                } else {
                    assert_eq!(anti, zero);
                }
            }
        }
    }
}

#[test]
fn monomial_matrix_traces_vanish_up_to_ten_generators() {
    for n_modes in 1..=5usize {
        let rep = Representation::new(n_modes).unwrap();
        for bits in 1..(1u64 << (2 * n_modes)) {
            let m = MonomialIndex::from_bits(bits);
            let tr = rep.monomial_matrix(&m).trace();
            assert_eq!(tr, Complex64::new(0.0, 0.0), "monomial {m} at N={n_modes}");
        }
    }
}

proptest! {
    #[test]
    fn multiplication_is_associative(a in arb_element(), b in arb_element(), c in arb_element()) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn adjoint_is_an_antihomomorphic_involution(a in arb_element(), b in arb_element()) {
        prop_assert_eq!(a.adjoint().adjoint(), a.clone());
        let lhs = a.mul(&b).unwrap().adjoint();
        let rhs = b.adjoint().mul(&a.adjoint()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reflection_is_an_antilinear_homomorphic_involution(a in arb_element(), b in arb_element()) {
        let g = geometry6();
        prop_assert_eq!(a.reflect(&g).unwrap().reflect(&g).unwrap(), a.clone());
        let lhs = a.mul(&b).unwrap().reflect(&g).unwrap();
        let rhs = a.reflect(&g).unwrap().mul(&b.reflect(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reflection_commutes_with_adjoint(a in arb_element()) {
        let g = geometry6();
        prop_assert_eq!(
            a.reflect(&g).unwrap().adjoint(),
            a.adjoint().reflect(&g).unwrap()
        );
    }

    #[test]
    fn reflected_trace_is_conjugated(a in arb_element()) {
        let g = geometry6();
        prop_assert_eq!(a.reflect(&g).unwrap().trace(), a.trace().conj());
    }

    #[test]
    fn scalars_embed_as_identity_terms(re in -4i32..=4, im in -4i32..=4, a in arb_element()) {
        // no separate scalar type: scalar multiplication is multiplication
        // by an identity-supported element
        let z = Complex64::new(re as f64, im as f64);
        let s = CliffordElement::scalar(N_GENS, z).unwrap();
        prop_assert_eq!(s.mul(&a).unwrap(), a.scale(z));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dense_representation_is_multiplicative(a in arb_element(), b in arb_element()) {
        let rep = Representation::new(N_GENS / 2).unwrap();
        let lhs = rep.to_matrix(&a.mul(&b).unwrap()).unwrap();
        let rhs = rep.to_matrix(&a).unwrap() * rep.to_matrix(&b).unwrap();
        let scale = rhs.norm().max(1.0);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * scale);
    }

    #[test]
    fn expansion_round_trips(a in arb_element()) {
        let rep = Representation::new(N_GENS / 2).unwrap();
        let back = rep.from_matrix(&rep.to_matrix(&a).unwrap()).unwrap();
        prop_assert!(back.max_coeff_distance(&a).unwrap() <= 1e-12 * a.max_abs_coefficient().max(1.0));
    }

    #[test]
    fn one_sided_trace_identity_at_zero_hamiltonian(
        a in arb_one_sided(Side::Minus),
        b in arb_one_sided(Side::Plus),
    ) {
        // Tr(A ϑ(A)) = 2^N |a_0|² for A supported on one side.
        let g = geometry6();
        let h = CliffordElement::zero(N_GENS).unwrap();
        for e in [&a, &b] {
            let value = rp_functional(e, e, &h, &g).unwrap();
            let a0 = e.coefficient(&MonomialIndex::identity());
            let expected = Complex64::new(8.0 * a0.norm_sqr(), 0.0);
            prop_assert!((value - expected).norm() <= 1e-12 * expected.norm().max(1.0));
        }
    }

    #[test]
    fn h0_is_self_adjoint_and_reflection_symmetric(cross in arb_cross_terms()) {
        let g = geometry6();
        let spec = HamiltonianSpec::cross_only(g.clone(), cross, 1.0).unwrap();
        let h0 = spec.build_h0().unwrap();
        // exact symbolically
        prop_assert_eq!(h0.adjoint(), h0.clone());
        prop_assert_eq!(h0.reflect(&g).unwrap(), h0.clone());
        // and within 1e-12 as matrices
        let rep = Representation::new(N_GENS / 2).unwrap();
        let m = rep.to_matrix(&h0).unwrap();
        let scale = m.norm().max(1.0);
        prop_assert!((&m - m.adjoint()).norm() <= 1e-12 * scale);
        prop_assert!((&m - rep.reflect_matrix(&m, &g).unwrap()).norm() <= 1e-12 * scale);
    }

    #[test]
    fn classification_is_invariant_under_permutation_and_scaling(
        cross in arb_cross_terms(),
        scale in 0.01f64..100.0,
        rotation in 0usize..6,
    ) {
        let base = classify_couplings(&cross).is_certified();
        let mut rotated = cross.clone();
        rotated.rotate_left(rotation % cross.len().max(1));
        prop_assert_eq!(classify_couplings(&rotated).is_certified(), base);
        let scaled: Vec<CrossTerm> = cross
            .iter()
            .map(|t| CrossTerm::new(t.subset, t.coupling * scale))
            .collect();
        prop_assert_eq!(classify_couplings(&scaled).is_certified(), base);
    }

    #[test]
    fn functional_is_sesquilinear(
        a in arb_one_sided(Side::Minus),
        b in arb_one_sided(Side::Minus),
        re in -2i32..=2,
        im in -2i32..=2,
    ) {
        // linear in the first slot, anti-linear in the second
        let g = geometry6();
        let spec = HamiltonianSpec::cross_only(
            g.clone(),
            vec![CrossTerm::new(MonomialIndex::from_indices(&[1]).unwrap(), -0.7)],
            1.0,
        )
        .unwrap();
        let ctx = RpContext::new(&spec).unwrap();
        let lambda = Complex64::new(re as f64, im as f64);

        let scaled_first = ctx.functional(&a.scale(lambda), &b).unwrap();
        let scaled_second = ctx.functional(&a, &b.scale(lambda)).unwrap();
        let base = ctx.functional(&a, &b).unwrap();
        let tol = 1e-11 * base.norm().max(1.0) * lambda.norm().max(1.0);
        prop_assert!((scaled_first - lambda * base).norm() <= tol);
        prop_assert!((scaled_second - lambda.conj() * base).norm() <= tol);
    }
}
