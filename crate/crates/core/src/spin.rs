//! Spin operators from four Majoranas per site.
//!
//! Each site carries (b^x, b^y, b^z, c); the operators σ^α = i b^α c are
//! even, self-adjoint, square to the identity, and operators on distinct
//! sites commute. They become the Pauli matrices after projection to the
//! chiral sector where every γ⁵ = b^x b^y b^z c has eigenvalue +1; the
//! projector Π_j (I + γ_j⁵)/2 has rank 2^{#sites}.
//!
//! Spin interactions across a reflected bond expand into σ=0 cross
//! terms on the pair {b^α, c}: the Ising bond carries coupling −1 on the
//! z channel, the rotator −1 on x and z, and the Heisenberg bond flips
//! the y channel to +1 — which is exactly what breaks the coupling-sign
//! condition for the Heisenberg interaction.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Deserialize;

use crate::clifford::CliffordElement;
use crate::dense::{DenseOperator, Representation};
use crate::error::{Error, Result};
use crate::geometry::{ReflectionGeometry, Side};
use crate::hamiltonian::CrossTerm;
use crate::clifford::MonomialIndex;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Global Majorana indices of one site's four flavors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpinSite {
    pub site: u32,
    pub b_x: u32,
    pub b_y: u32,
    pub b_z: u32,
    pub c: u32,
}

impl SpinSite {
    fn b(&self, axis: Axis) -> u32 {
        match axis {
            Axis::X => self.b_x,
            Axis::Y => self.b_y,
            Axis::Z => self.b_z,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// The four Dirac labels {0, x, y, z}; label 0 is the c flavor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiracAxis {
    Zero,
    X,
    Y,
    Z,
}

/// Per-site flavor indices; requires a 4-flavor geometry with the flavor
/// order (b^x, b^y, b^z, c).
pub fn spin_sites(g: &ReflectionGeometry) -> Result<Vec<SpinSite>> {
    if g.flavors() != 4 {
        return Err(Error::WrongFlavorCount(g.flavors()));
    }
    let mut out = Vec::with_capacity(g.sites().len());
    for &site in g.sites() {
        out.push(SpinSite {
            site,
            b_x: g.index_of(site, 0).expect("validated geometry"),
            b_y: g.index_of(site, 1).expect("validated geometry"),
            b_z: g.index_of(site, 2).expect("validated geometry"),
            c: g.index_of(site, 3).expect("validated geometry"),
        });
    }
    Ok(out)
}

pub fn spin_site(g: &ReflectionGeometry, site: u32) -> Result<SpinSite> {
    spin_sites(g)?
        .into_iter()
        .find(|s| s.site == site)
        .ok_or_else(|| Error::InvalidGeometry(format!("  - no site {site} in the geometry")))
}

/// σ^α = i b^α c.
pub fn pauli(g: &ReflectionGeometry, site: &SpinSite, axis: Axis) -> Result<CliffordElement> {
    let n = g.num_majoranas();
    let b = CliffordElement::generator(n, site.b(axis))?;
    let c = CliffordElement::generator(n, site.c)?;
    Ok(b.mul(&c)?.scale(I))
}

/// γ⁵ = b^x b^y b^z c; self-adjoint, squares to I, commutes with every σ.
pub fn gamma5(g: &ReflectionGeometry, site: &SpinSite) -> Result<CliffordElement> {
    let n = g.num_majoranas();
    let mut out = CliffordElement::generator(n, site.b_x)?;
    for idx in [site.b_y, site.b_z, site.c] {
        out = out.mul(&CliffordElement::generator(n, idx)?)?;
    }
    Ok(out)
}

/// The rotation generator Σ^{αβ} = −(i/2)[γ^α, γ^β]; the (0,α) planes
/// give the σ^α used by the model builders, the (α,β) planes with
/// α,β ≠ 0 give the alternative representation acting identically on
/// both chiral copies.
pub fn rotation_generator(
    g: &ReflectionGeometry,
    site: &SpinSite,
    alpha: DiracAxis,
    beta: DiracAxis,
) -> Result<CliffordElement> {
    let n = g.num_majoranas();
    let gamma = |a: DiracAxis| -> Result<CliffordElement> {
        let idx = match a {
            DiracAxis::Zero => site.c,
            DiracAxis::X => site.b_x,
            DiracAxis::Y => site.b_y,
            DiracAxis::Z => site.b_z,
        };
        CliffordElement::generator(n, idx)
    };
    let ga = gamma(alpha)?;
    let gb = gamma(beta)?;
    let comm = ga.mul(&gb)?.sub(&gb.mul(&ga)?)?;
    Ok(comm.scale(-I * Complex64::new(0.5, 0.0)))
}

/// Π_j (I + γ_j⁵)/2 as a dense matrix; an orthogonal projector of rank
/// 2^{#sites}.
pub fn chiral_projector(
    g: &ReflectionGeometry,
    rep: &Representation,
    sites: &[SpinSite],
) -> Result<DenseOperator> {
    let n = g.num_majoranas();
    let half = Complex64::new(0.5, 0.0);
    let mut p = Representation::dense_identity(rep.dim());
    for site in sites {
        let factor = CliffordElement::identity(n)?.add(&gamma5(g, site)?)?.scale(half);
        p = p * rep.to_matrix(&factor)?;
    }
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinModelKind {
    Ising,
    Rotator,
    Heisenberg,
}

/// Cross terms of one spin bond across the reflection. The bond must be
/// a reflected pair (either order); subsets are the minus-side site's
/// {b^α, c} indices, so every term has σ = 0.
pub fn build_spin_model(
    g: &ReflectionGeometry,
    kind: SpinModelKind,
    bond: (u32, u32),
) -> Result<Vec<CrossTerm>> {
    let (a, b) = bond;
    let (minus_site, plus_site) = match (g.side_of_site(a), g.side_of_site(b)) {
        (Some(Side::Minus), Some(Side::Plus)) => (a, b),
        (Some(Side::Plus), Some(Side::Minus)) => (b, a),
        _ => return Err(Error::NonCrossingBond(a, b)),
    };
    if g.theta_site(minus_site) != Some(plus_site) {
        return Err(Error::NonCrossingBond(a, b));
    }
    let site = spin_site(g, minus_site)?;
    let channel = |axis: Axis, coupling: f64| -> Result<CrossTerm> {
        let subset = MonomialIndex::from_indices(&[site.b(axis), site.c])?;
        Ok(CrossTerm::new(subset, coupling))
    };
    Ok(match kind {
        SpinModelKind::Ising => vec![channel(Axis::Z, -1.0)?],
        SpinModelKind::Rotator => vec![channel(Axis::X, -1.0)?, channel(Axis::Z, -1.0)?],
        SpinModelKind::Heisenberg => vec![
            channel(Axis::X, -1.0)?,
            channel(Axis::Y, 1.0)?,
            channel(Axis::Z, -1.0)?,
        ],
    })
}

/// Compresses an operator that commutes with every γ_j⁵ to the chiral
/// sector: returns V* A V over a deterministic orthonormal basis V of the
/// projector's range (dimension 2^{#sites}).
pub fn projected_matrix(
    g: &ReflectionGeometry,
    rep: &Representation,
    a: &CliffordElement,
    sites: &[SpinSite],
) -> Result<DenseOperator> {
    let scale = a.max_abs_coefficient().max(1.0);
    for site in sites {
        let g5 = gamma5(g, site)?;
        let residual = a.mul(&g5)?.sub(&g5.mul(a)?)?.max_abs_coefficient();
        if residual > 1e-12 * scale {
            return Err(Error::ChiralSectorViolation(residual));
        }
    }
    let p = chiral_projector(g, rep, sites)?;
    let v = range_basis(&p, 1usize << sites.len())?;
    let a_mat = rep.to_matrix(a)?;
    Ok(v.adjoint() * a_mat * v)
}

/// Orthonormal basis of a projector's range by modified Gram-Schmidt over
/// its columns, in column order.
fn range_basis(p: &DenseOperator, expected_rank: usize) -> Result<DenseOperator> {
    let dim = p.nrows();
    let mut basis: Vec<DVector<Complex64>> = Vec::with_capacity(expected_rank);
    for col in 0..dim {
        let mut v: DVector<Complex64> = p.column(col).into_owned();
        for b in &basis {
            let overlap = b.dotc(&v);
            v -= b * overlap;
        }
        let norm = v.norm();
        if norm > 1e-8 {
            basis.push(v / Complex64::new(norm, 0.0));
        }
    }
    if basis.len() != expected_rank {
        return Err(Error::Numerical(format!(
            "chiral range has rank {}, expected {expected_rank}",
            basis.len()
        )));
    }
    let mut out = DenseOperator::from_element(dim, expected_rank, Complex64::new(0.0, 0.0));
    for (k, b) in basis.iter().enumerate() {
        out.set_column(k, b);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::classify_couplings;

    fn two_site_geometry() -> ReflectionGeometry {
        ReflectionGeometry::chain(1, 4).unwrap()
    }

    #[test]
    fn flavor_assignment() {
        let g = two_site_geometry();
        let sites = spin_sites(&g).unwrap();
        assert_eq!(sites.len(), 2);
        assert_eq!(
            sites[0],
            SpinSite { site: 1, b_x: 1, b_y: 2, b_z: 3, c: 4 }
        );
        assert_eq!(
            sites[1],
            SpinSite { site: 2, b_x: 5, b_y: 6, b_z: 7, c: 8 }
        );

        let g2 = ReflectionGeometry::chain(1, 2).unwrap();
        assert!(matches!(spin_sites(&g2), Err(Error::WrongFlavorCount(2))));
    }

    #[test]
    fn pauli_operators_square_to_identity() {
        let g = two_site_geometry();
        let site = spin_site(&g, 1).unwrap();
        let id = CliffordElement::identity(8).unwrap();
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            let s = pauli(&g, &site, axis).unwrap();
            assert_eq!(s.mul(&s).unwrap(), id);
            assert_eq!(s.adjoint(), s);
        }
    }

    #[test]
    fn distinct_sites_commute() {
        let g = two_site_geometry();
        let sites = spin_sites(&g).unwrap();
        for a in [Axis::X, Axis::Y, Axis::Z] {
            for b in [Axis::X, Axis::Y, Axis::Z] {
                let sa = pauli(&g, &sites[0], a).unwrap();
                let sb = pauli(&g, &sites[1], b).unwrap();
                assert_eq!(sa.mul(&sb).unwrap(), sb.mul(&sa).unwrap());
            }
        }
    }

    #[test]
    fn reality_pattern_of_the_representation() {
        // σ^x and σ^z entrywise real, σ^y purely imaginary.
        let g = two_site_geometry();
        let rep = Representation::new(4).unwrap();
        for site in spin_sites(&g).unwrap() {
            for (axis, real) in [(Axis::X, true), (Axis::Y, false), (Axis::Z, true)] {
                let m = rep.to_matrix(&pauli(&g, &site, axis).unwrap()).unwrap();
                for z in m.iter() {
                    if real {
                        assert_eq!(z.im, 0.0);
                    } else {
                        assert_eq!(z.re, 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn gamma5_properties() {
        let g = two_site_geometry();
        let sites = spin_sites(&g).unwrap();
        let id = CliffordElement::identity(8).unwrap();
        for site in &sites {
            let g5 = gamma5(&g, site).unwrap();
            assert_eq!(g5.mul(&g5).unwrap(), id);
            assert_eq!(g5.adjoint(), g5);
            for other in &sites {
                for axis in [Axis::X, Axis::Y, Axis::Z] {
                    let s = pauli(&g, other, axis).unwrap();
                    assert_eq!(g5.mul(&s).unwrap(), s.mul(&g5).unwrap());
                }
            }
        }
    }

    #[test]
    fn projector_rank_is_two_per_site() {
        let g = two_site_geometry();
        let rep = Representation::new(4).unwrap();
        let sites = spin_sites(&g).unwrap();
        let p = chiral_projector(&g, &rep, &sites).unwrap();
        // rank = trace for an orthogonal projector
        assert!((p.trace() - Complex64::new(4.0, 0.0)).norm() < 1e-12);
        assert!((&p * &p - &p).norm() < 1e-12);
    }

    #[test]
    fn projected_paulis_satisfy_the_pauli_algebra() {
        let g = two_site_geometry();
        let rep = Representation::new(4).unwrap();
        let sites = spin_sites(&g).unwrap();
        let site = &sites[0];

        let project =
            |e: &CliffordElement| projected_matrix(&g, &rep, e, &sites).unwrap();
        let sx = project(&pauli(&g, site, Axis::X).unwrap());
        let sy = project(&pauli(&g, site, Axis::Y).unwrap());
        let sz = project(&pauli(&g, site, Axis::Z).unwrap());
        let id = Representation::dense_identity(4);

        assert!((&sx * &sx - &id).norm() < 1e-12);
        assert!((&sx * &sy - sz.map(|z| z * I)).norm() < 1e-12);
        assert!((&sy * &sz - sx.map(|z| z * I)).norm() < 1e-12);
        assert!((&sz * &sx - sy.map(|z| z * I)).norm() < 1e-12);

        let projected_id = project(&CliffordElement::identity(8).unwrap());
        assert!((projected_id - id).norm() < 1e-12);
    }

    #[test]
    fn spin_models_classify_as_expected() {
        let g = two_site_geometry();
        let ising = build_spin_model(&g, SpinModelKind::Ising, (1, 2)).unwrap();
        assert!(classify_couplings(&ising).is_certified());
        assert_eq!(ising.len(), 1);
        assert!(ising.iter().all(|t| t.subset.degree() == 2));

        let rotator = build_spin_model(&g, SpinModelKind::Rotator, (1, 2)).unwrap();
        assert!(classify_couplings(&rotator).is_certified());
        assert_eq!(rotator.len(), 2);

        let heis = build_spin_model(&g, SpinModelKind::Heisenberg, (2, 1)).unwrap();
        assert!(!classify_couplings(&heis).is_certified());
        assert_eq!(heis.len(), 3);
    }

    #[test]
    fn non_crossing_bond_is_rejected() {
        let g = ReflectionGeometry::chain(2, 4).unwrap();
        // sites 1 and 2 are both on the minus side
        assert!(matches!(
            build_spin_model(&g, SpinModelKind::Ising, (1, 2)),
            Err(Error::NonCrossingBond(1, 2))
        ));
        // sites 1 and 3 cross but are not reflection partners
        assert!(matches!(
            build_spin_model(&g, SpinModelKind::Ising, (1, 3)),
            Err(Error::NonCrossingBond(1, 3))
        ));
    }

    #[test]
    fn rotation_generators() {
        let g = two_site_geometry();
        let site = spin_site(&g, 1).unwrap();
        // the (0, α) planes reproduce the σ's
        for axis in [(DiracAxis::X, Axis::X), (DiracAxis::Y, Axis::Y), (DiracAxis::Z, Axis::Z)] {
            let sigma = rotation_generator(&g, &site, DiracAxis::Zero, axis.0).unwrap();
            assert_eq!(sigma, pauli(&g, &site, axis.1).unwrap());
        }
        // alternative generators square to I and are self-adjoint
        let alt = rotation_generator(&g, &site, DiracAxis::Y, DiracAxis::Z).unwrap();
        assert_eq!(alt.mul(&alt).unwrap(), CliffordElement::identity(8).unwrap());
        assert_eq!(alt.adjoint(), alt);
    }

    #[test]
    fn projection_rejects_sector_breaking_operators() {
        let g = two_site_geometry();
        let rep = Representation::new(4).unwrap();
        let sites = spin_sites(&g).unwrap();
        let odd = CliffordElement::generator(8, 1).unwrap();
        assert!(matches!(
            projected_matrix(&g, &rep, &odd, &sites),
            Err(Error::ChiralSectorViolation(_))
        ));
    }
}
