//! Gibbs trace functionals and reflection-positivity certification.
//!
//! The central object is the sesquilinear functional
//!
//!   ⟨A, B⟩ = Tr(A ϑ(B) e^{−H}),
//!
//! linear in A and anti-linear in B. For A in an even half-algebra,
//! H = H₋ + H₀ + ϑ(H₋) with admissible cross couplings, the diagonal is
//! nonnegative; the same holds for the swapped functional
//! Tr(ϑ(A) A e^{−H}). Certification builds the Gram matrix of the
//! functional over the even monomial basis of one side and checks it is
//! positive semidefinite up to an eigendecomposition tolerance. When the
//! spectrum goes negative, the most negative eigenvector is returned as
//! an explicit witness element with ⟨A, A⟩ < 0.
//!
//! The quotient by the functional's null space is never constructed:
//! semi-norms are reported as computed.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::clifford::{CliffordElement, MonomialIndex};
use crate::dense::{DenseOperator, Representation};
use crate::error::{Error, Result};
use crate::geometry::{ReflectionGeometry, Side};
use crate::hamiltonian::{classify_couplings, CouplingClassification, HamiltonianSpec};
use crate::linalg::{exp_hermitian, hermitian_eigen, hermiticity_residual};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest one-sided Majorana count for which a Gram matrix is assembled
/// (basis size 2^{m−1}, cost O(4^m) functional evaluations).
pub const GRAM_SIDE_CAP: usize = 8;

/// Default PSD tolerance: min eigenvalue ≥ −tol · max(1, max eigenvalue).
pub const PSD_TOL: f64 = 1e-10;

/// Which sesquilinear form a Gram matrix represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Functional {
    /// ⟨A, B⟩ = Tr(A ϑ(B) e^{−H})
    Direct,
    /// ⟨A, B⟩' = Tr(ϑ(A) B e^{−H})
    Swapped,
}

/// e^{−H} computed by eigendecomposition of the Hermitian representation
/// of H; rejects inputs whose matrix is not self-adjoint within 1e−10
/// (relative). The backward error of the result is that of the
/// eigendecomposition, ~machine epsilon times the dimension.
pub fn gibbs_weight(h: &CliffordElement, rep: &Representation) -> Result<DenseOperator> {
    let m = rep.to_matrix(h)?;
    let tolerance = 1e-10 * m.norm().max(1.0);
    let residual = hermiticity_residual(&m);
    if residual > tolerance {
        return Err(Error::NotSelfAdjoint { residual, tolerance });
    }
    Ok(exp_hermitian(&m.map(|z| -z)))
}

/// All even-degree monomials over one side's indices (including the
/// identity), in graded lexicographic order; 2^{m−1} entries for m
/// Majoranas on that side.
pub fn even_basis(g: &ReflectionGeometry, side: Side) -> Vec<MonomialIndex> {
    let indices = g.side_indices(side);
    let m = indices.len();
    let mut basis = Vec::with_capacity(1usize << m.saturating_sub(1));
    for mask in 0..(1u64 << m) {
        if mask.count_ones() % 2 != 0 {
            continue;
        }
        let mut bits = 0u64;
        for (pos, &idx) in indices.iter().enumerate() {
            if mask >> pos & 1 == 1 {
                bits |= 1u64 << (idx - 1);
            }
        }
        basis.push(MonomialIndex::from_bits(bits));
    }
    basis.sort_by_key(|m| (m.degree(), m.indices()));
    basis
}

/// Gram matrix of a sesquilinear functional over an even monomial basis.
pub struct Gram {
    pub basis: Vec<MonomialIndex>,
    pub matrix: DMatrix<Complex64>,
}

/// Reusable evaluation context: fixes the geometry, the representation,
/// the assembled Hamiltonian, and e^{−H}.
pub struct RpContext {
    geometry: ReflectionGeometry,
    rep: Representation,
    hamiltonian: CliffordElement,
    weight: DenseOperator,
}

fn trace_of_product(a: &DenseOperator, b: &DenseOperator) -> Complex64 {
    let mut acc = ZERO;
    for r in 0..a.nrows() {
        for c in 0..a.ncols() {
            acc += a[(r, c)] * b[(c, r)];
        }
    }
    acc
}

impl RpContext {
    pub fn new(spec: &HamiltonianSpec) -> Result<Self> {
        Self::from_hamiltonian(&spec.assemble()?, &spec.geometry)
    }

    /// Context for an arbitrary self-adjoint element; used for reflected
    /// or asymmetric Hamiltonians.
    pub fn from_hamiltonian(h: &CliffordElement, g: &ReflectionGeometry) -> Result<Self> {
        g.ensure_valid()?;
        let rep = Representation::new(g.num_modes())?;
        let weight = gibbs_weight(h, &rep)?;
        Ok(RpContext {
            geometry: g.clone(),
            rep,
            hamiltonian: h.clone(),
            weight,
        })
    }

    pub fn geometry(&self) -> &ReflectionGeometry {
        &self.geometry
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    pub fn hamiltonian(&self) -> &CliffordElement {
        &self.hamiltonian
    }

    pub fn weight(&self) -> &DenseOperator {
        &self.weight
    }

    /// Tr(e^{−H}), the partition function.
    pub fn partition_function(&self) -> f64 {
        self.weight.trace().re
    }

    /// ⟨A, B⟩ = Tr(A ϑ(B) e^{−H}).
    pub fn functional(&self, a: &CliffordElement, b: &CliffordElement) -> Result<Complex64> {
        let a_mat = self.rep.to_matrix(a)?;
        let tb_mat = self.rep.to_matrix(&b.reflect(&self.geometry)?)?;
        Ok(trace_of_product(&a_mat, &(tb_mat * &self.weight)))
    }

    /// ⟨A, B⟩' = Tr(ϑ(A) B e^{−H}).
    pub fn swapped_functional(&self, a: &CliffordElement, b: &CliffordElement) -> Result<Complex64> {
        let ta_mat = self.rep.to_matrix(&a.reflect(&self.geometry)?)?;
        let b_mat = self.rep.to_matrix(b)?;
        Ok(trace_of_product(&ta_mat, &(b_mat * &self.weight)))
    }

    /// Diagonal value re⟨A, A⟩, clamped at zero for use as a squared
    /// semi-norm; errors if it is genuinely negative.
    pub fn norm_squared(&self, a: &CliffordElement) -> Result<f64> {
        let v = self.functional(a, a)?;
        let scale = self.partition_function().abs().max(1.0);
        if v.re < -1e-9 * scale {
            return Err(Error::Numerical(format!(
                "diagonal RP value {:.6e} is negative; the norm is undefined",
                v.re
            )));
        }
        Ok(v.re.max(0.0))
    }

    /// Gram matrix G[p][q] of the chosen functional over the even basis
    /// of one side. Entries are evaluated through the signed-permutation
    /// structure of the basis monomials with a fixed reduction order, so
    /// the result is deterministic.
    pub fn gram(&self, side: Side, variant: Functional) -> Result<Gram> {
        let side_majoranas = self.geometry.side_indices(side).len();
        if side_majoranas > GRAM_SIDE_CAP {
            return Err(Error::GramTooLarge { majoranas: side_majoranas, cap: GRAM_SIDE_CAP });
        }
        let basis = even_basis(&self.geometry, side);
        let l = basis.len();
        let mut matrix = DMatrix::from_element(l, l, ZERO);
        match variant {
            Functional::Direct => {
                for (q, mq) in basis.iter().enumerate() {
                    let (image, sign) = mq.reflect(&self.geometry);
                    let right = self.rep.action(&image).left_apply(&self.weight);
                    for (p, mp) in basis.iter().enumerate() {
                        matrix[(p, q)] = self.rep.action(mp).trace_prod(&right) * sign as f64;
                    }
                }
            }
            Functional::Swapped => {
                for (q, mq) in basis.iter().enumerate() {
                    let right = self.rep.action(mq).left_apply(&self.weight);
                    for (p, mp) in basis.iter().enumerate() {
                        let (image, sign) = mp.reflect(&self.geometry);
                        matrix[(p, q)] = self.rep.action(&image).trace_prod(&right) * sign as f64;
                    }
                }
            }
        }
        Ok(Gram { basis, matrix })
    }
}

/// Tr(A ϑ(B) e^{−H}); convenience wrapper building a fresh context.
pub fn rp_functional(
    a: &CliffordElement,
    b: &CliffordElement,
    h: &CliffordElement,
    g: &ReflectionGeometry,
) -> Result<Complex64> {
    RpContext::from_hamiltonian(h, g)?.functional(a, b)
}

/// Tr(ϑ(A) B e^{−H}); the swapped functional.
pub fn rp_functional_prime(
    a: &CliffordElement,
    b: &CliffordElement,
    h: &CliffordElement,
    g: &ReflectionGeometry,
) -> Result<Complex64> {
    RpContext::from_hamiltonian(h, g)?.swapped_functional(a, b)
}

/// Gram matrix of the direct functional for an assembled Hamiltonian.
pub fn gram_matrix(h: &CliffordElement, g: &ReflectionGeometry, side: Side) -> Result<Gram> {
    RpContext::from_hamiltonian(h, g)?.gram(side, Functional::Direct)
}

/// Positivity verdict of a Gram spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RpVerdict {
    Positive,
    Indefinite,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessTerm {
    pub indices: Vec<u32>,
    pub re: f64,
    pub im: f64,
}

/// Serialized witness: an even one-sided element with ⟨A, A⟩ < 0,
/// normalized so that its largest coefficient is 1.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub terms: Vec<WitnessTerm>,
    pub rp_value_re: f64,
    pub rp_value_im: f64,
}

/// Certification result: Gram spectrum summary, coupling classification,
/// verdict, and the witness on failure.
#[derive(Clone, Debug, Serialize)]
pub struct RpReport {
    pub gram_dim: usize,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    pub hermiticity_residual: f64,
    pub classification: CouplingClassification,
    pub verdict: RpVerdict,
    pub witness: Option<WitnessReport>,
}

/// [`RpReport`] plus the data behind it.
pub struct Certification {
    pub report: RpReport,
    /// Ascending Gram eigenvalues.
    pub spectrum: Vec<f64>,
    pub basis: Vec<MonomialIndex>,
    pub witness_element: Option<CliffordElement>,
}

impl Certification {
    /// One `index,eigenvalue` line per Gram eigenvalue.
    pub fn spectrum_csv(&self) -> String {
        let mut out = String::from("index,eigenvalue\n");
        for (k, v) in self.spectrum.iter().enumerate() {
            out.push_str(&format!("{k},{v:.17e}\n"));
        }
        out
    }
}

/// Runs the coupling classification and the minus-side Gram positivity
/// check for a spec; classification failures are report data, not errors.
pub fn certify_rp(spec: &HamiltonianSpec) -> Result<Certification> {
    certify_rp_with_tol(spec, PSD_TOL)
}

pub fn certify_rp_with_tol(spec: &HamiltonianSpec, tol: f64) -> Result<Certification> {
    spec.validate()?;
    let classification = classify_couplings(&spec.cross);
    let ctx = RpContext::new(spec)?;
    let gram = ctx.gram(Side::Minus, Functional::Direct)?;

    let residual = hermiticity_residual(&gram.matrix);
    let (vals, vecs) = hermitian_eigen(&gram.matrix);
    let mut spectrum: Vec<f64> = vals.iter().copied().collect();
    spectrum.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    let min_eig = spectrum[0];
    let max_eig = *spectrum.last().expect("nonempty spectrum");

    let positive = min_eig >= -tol * max_eig.max(1.0);
    let (witness, witness_element) = if positive {
        (None, None)
    } else {
        let argmin = (0..vals.len())
            .min_by(|&a, &b| vals[a].partial_cmp(&vals[b]).expect("finite"))
            .expect("nonempty");
        let column = vecs.column(argmin);
        // normalize so the largest coefficient is exactly 1
        let mut best = 0usize;
        for k in 0..column.len() {
            if column[k].norm() > column[best].norm() {
                best = k;
            }
        }
        let pivot = column[best];
        let terms: Vec<(MonomialIndex, Complex64)> = gram
            .basis
            .iter()
            .zip(column.iter())
            .map(|(m, c)| (*m, c / pivot))
            .collect();
        let element = CliffordElement::from_terms(spec.geometry.num_majoranas(), terms)?
            .prune(1e-14);
        let value = ctx.functional(&element, &element)?;
        let report = WitnessReport {
            terms: element
                .terms()
                .map(|(m, c)| WitnessTerm { indices: m.indices(), re: c.re, im: c.im })
                .collect(),
            rp_value_re: value.re,
            rp_value_im: value.im,
        };
        (Some(report), Some(element))
    };

    Ok(Certification {
        report: RpReport {
            gram_dim: gram.basis.len(),
            min_eigenvalue: min_eig,
            max_eigenvalue: max_eig,
            hermiticity_residual: residual,
            classification,
            verdict: if positive { RpVerdict::Positive } else { RpVerdict::Indefinite },
            witness,
        },
        spectrum,
        basis: gram.basis,
        witness_element,
    })
}

/// One evaluated inequality: left side, right side, slack = rhs − lhs.
#[derive(Clone, Debug, Serialize)]
pub struct BoundSlack {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

/// Reflection-bound residuals for a (possibly asymmetric) Hamiltonian.
#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    /// Tr(e^{−H}) ≤ Tr(e^{−H_sym−})^{1/2} Tr(e^{−H_sym+})^{1/2}.
    pub partition: BoundSlack,
    /// |⟨A, B⟩| ≤ ‖A‖₋ ‖B‖₊ for the supplied pairs of even minus-side
    /// elements.
    pub pairs: Vec<BoundSlack>,
    pub min_slack: f64,
}

/// Evaluates the reflection bounds for H = H₋ + H₀ + H₊ with independent
/// halves. The two comparison Hamiltonians symmetrize each half:
/// H_sym− = H₋ + H₀ + ϑ(H₋) and H_sym+ = ϑ(H₊) + H₀ + H₊. Requires
/// admissible cross couplings, which make both symmetrized functionals
/// positive on the diagonal.
pub fn check_bounds(
    spec: &HamiltonianSpec,
    pairs: &[(CliffordElement, CliffordElement)],
) -> Result<BoundsReport> {
    spec.validate()?;
    if !classify_couplings(&spec.cross).is_certified() {
        return Err(Error::InvalidHamiltonian(
            "reflection bounds require admissible cross couplings".into(),
        ));
    }
    let g = &spec.geometry;
    let beta = Complex64::new(spec.beta, 0.0);
    let h_minus = &spec.h_minus;
    let h_plus = spec.h_plus_element()?;
    let h0 = spec.build_h0()?;

    let full = h_minus.add(&h0)?.add(&h_plus)?.scale(beta);
    let sym_minus = h_minus.add(&h0)?.add(&h_minus.reflect(g)?)?.scale(beta);
    let sym_plus = h_plus.reflect(g)?.add(&h0)?.add(&h_plus)?.scale(beta);

    let ctx = RpContext::from_hamiltonian(&full, g)?;
    let ctx_minus = RpContext::from_hamiltonian(&sym_minus, g)?;
    let ctx_plus = RpContext::from_hamiltonian(&sym_plus, g)?;

    let z = ctx.partition_function();
    let z_minus = ctx_minus.partition_function();
    let z_plus = ctx_plus.partition_function();
    let partition_rhs = z_minus.max(0.0).sqrt() * z_plus.max(0.0).sqrt();
    let partition = BoundSlack { lhs: z, rhs: partition_rhs, slack: partition_rhs - z };

    let mut out_pairs = Vec::with_capacity(pairs.len());
    let mut min_slack = partition.slack;
    for (a, b) in pairs {
        let lhs = ctx.functional(a, b)?.norm();
        let rhs = ctx_minus.norm_squared(a)?.sqrt() * ctx_plus.norm_squared(b)?.sqrt();
        let slack = rhs - lhs;
        min_slack = min_slack.min(slack);
        out_pairs.push(BoundSlack { lhs, rhs, slack });
    }

    Ok(BoundsReport { partition, pairs: out_pairs, min_slack })
}

/// Residuals of the Schwarz inequality and the anti-unitarity identities
/// of the RP inner product for a mirror-symmetric admissible spec.
#[derive(Clone, Debug, Serialize)]
pub struct SchwarzReport {
    /// max over samples of |⟨A, B⟩| − ‖A‖ ‖B‖ (≤ 0 up to tolerance).
    pub max_schwarz_excess: f64,
    /// max |⟨A, B⟩ − ⟨ϑ(B), ϑ(A)⟩|.
    pub max_reflection_symmetry_residual: f64,
    /// max |‖ϑ(A)‖ − ‖A‖|.
    pub max_norm_residual: f64,
}

pub fn schwarz_and_antiunitarity_check(
    spec: &HamiltonianSpec,
    samples: &[(CliffordElement, CliffordElement)],
) -> Result<SchwarzReport> {
    spec.validate()?;
    if !classify_couplings(&spec.cross).is_certified() {
        return Err(Error::InvalidHamiltonian(
            "the Schwarz check requires admissible cross couplings".into(),
        ));
    }
    let h = spec.assemble()?;
    let reflected = h.reflect(&spec.geometry)?;
    let scale = h.max_abs_coefficient().max(1.0);
    if h.max_coeff_distance(&reflected)? > 1e-10 * scale {
        return Err(Error::InvalidHamiltonian(
            "the Schwarz check requires a mirror-symmetric Hamiltonian".into(),
        ));
    }
    let ctx = RpContext::from_hamiltonian(&h, &spec.geometry)?;

    let mut schwarz: f64 = f64::NEG_INFINITY;
    let mut symmetry: f64 = 0.0;
    let mut norms: f64 = 0.0;
    for (a, b) in samples {
        let ab = ctx.functional(a, b)?;
        let na = ctx.norm_squared(a)?.sqrt();
        let nb = ctx.norm_squared(b)?.sqrt();
        schwarz = schwarz.max(ab.norm() - na * nb);

        let ta = a.reflect(&spec.geometry)?;
        let tb = b.reflect(&spec.geometry)?;
        symmetry = symmetry.max((ab - ctx.functional(&tb, &ta)?).norm());
        norms = norms.max((ctx.norm_squared(&ta)?.sqrt() - na).abs());
    }
    Ok(SchwarzReport {
        max_schwarz_excess: schwarz,
        max_reflection_symmetry_residual: symmetry,
        max_norm_residual: norms,
    })
}
