//! Lie-product approximants of e^{−H} and the combinatorial expansion
//! behind the positivity proof.
//!
//! The k-th approximant splits the Gibbs weight into k slices,
//!
//!   (e^{−H})_k = ((I − H₀/k) e^{−H₋/k} e^{−H₊/k})^k,
//!
//! which is norm-convergent with error O(1/k). Expanding the product
//! gives L^k sequences (ℓ₁, …, ℓ_k) over the cross-term labels (label 0
//! is the empty set with −J_∅ := k), each contributing
//!
//!   i^{Σσ} · 𝔠 · Y,   𝔠 = k^{−k} Π (−J_{ℓᵢ}),
//!
//! with Y the interleaved product of interaction pairs and exponential
//! slices. A sequence survives the trace unless its total Majorana count
//! is even; every kept Y factorizes as i^{−Σσ} D ϑ(D) with D even and
//! minus-supported, and kept coefficients are nonnegative under the
//! admissible coupling signs. All of that is checkable here at small
//! sizes, against both the dense matrices and the symbolic algebra.

use num_complex::Complex64;

use crate::clifford::{CliffordElement, MonomialIndex, Parity};
use crate::dense::{DenseOperator, Representation};
use crate::error::{Error, Result};
use crate::geometry::Side;
use crate::hamiltonian::{sigma, HamiltonianSpec};
use crate::linalg::{exp_hermitian, matrix_power, operator_norm};

const EXPANSION_GUARD: u128 = 1_000_000;

/// i^p for p taken mod 4.
fn i_power(p: i64) -> Complex64 {
    match p.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// The three β-scaled pieces of H as dense matrices, plus the slice
/// exponentials.
struct SliceFactors {
    /// I − βH₀/k
    affine: DenseOperator,
    /// e^{−βH₋/k}
    exp_minus: DenseOperator,
    /// e^{−βH₊/k}
    exp_plus: DenseOperator,
}

fn slice_factors(spec: &HamiltonianSpec, rep: &Representation, k: u32) -> Result<SliceFactors> {
    let dim = rep.dim();
    let step = spec.beta / k as f64;
    let h0 = rep.to_matrix(&spec.build_h0()?)?;
    let affine = Representation::dense_identity(dim) - h0.map(|z| z * step);
    let exp_minus = exp_hermitian(&rep.to_matrix(&spec.h_minus)?.map(|z| -z * step));
    let exp_plus = exp_hermitian(&rep.to_matrix(&spec.h_plus_element()?)?.map(|z| -z * step));
    Ok(SliceFactors { affine, exp_minus, exp_plus })
}

/// The k-th Lie-product approximant of e^{−βH} as a dense matrix.
pub fn lie_product_approx(
    spec: &HamiltonianSpec,
    rep: &Representation,
    k: u32,
) -> Result<DenseOperator> {
    if k == 0 {
        return Err(Error::ZeroTrotterSteps);
    }
    let f = slice_factors(spec, rep, k)?;
    let factor = f.affine * f.exp_minus * f.exp_plus;
    Ok(matrix_power(&factor, k))
}

/// One term of the L^k expansion of the k-th approximant.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionTerm {
    /// Sequence (ℓ₁, …, ℓ_k) over 0..L; label 0 is the empty set.
    pub labels: Vec<usize>,
    /// 𝔠 = k^{−k} Π (−βJ_{ℓᵢ}), with −βJ_∅ = k.
    pub coefficient: f64,
    /// Σ σ(𝔍_{ℓᵢ}) mod 4.
    pub phase_power: u8,
}

/// Majorana counts n(𝔍_ℓ) per label; entry 0 is the empty set.
pub fn subset_sizes(spec: &HamiltonianSpec) -> Vec<u32> {
    let mut sizes = vec![0u32];
    sizes.extend(spec.cross.iter().map(|t| t.subset.degree()));
    sizes
}

/// Enumerates all L^k expansion terms, guarded at 10^6 sequences. The
/// couplings entering the coefficients are β-scaled, matching
/// [`lie_product_approx`].
pub fn enumerate_expansion(spec: &HamiltonianSpec, k: u32) -> Result<Vec<ExpansionTerm>> {
    if k == 0 {
        return Err(Error::ZeroTrotterSteps);
    }
    let l = spec.cross.len() + 1;
    let total = (l as u128).checked_pow(k).ok_or(Error::ExpansionGuard {
        terms: u128::MAX,
        cap: EXPANSION_GUARD,
    })?;
    if total > EXPANSION_GUARD {
        return Err(Error::ExpansionGuard { terms: total, cap: EXPANSION_GUARD });
    }

    // −J per label, with the empty-set convention −J_0 = k.
    let neg_j: Vec<f64> = std::iter::once(k as f64)
        .chain(spec.cross.iter().map(|t| -spec.beta * t.coupling))
        .collect();
    let sigmas: Vec<u8> = std::iter::once(0u8)
        .chain(spec.cross.iter().map(|t| sigma(&t.subset)))
        .collect();
    let norm = (k as f64).powi(-(k as i32));

    let mut terms = Vec::with_capacity(total as usize);
    let mut labels = vec![0usize; k as usize];
    loop {
        let coefficient = norm * labels.iter().map(|&l| neg_j[l]).product::<f64>();
        let phase_power = labels.iter().map(|&l| sigmas[l] as u32).sum::<u32>() % 4;
        terms.push(ExpansionTerm { labels: labels.clone(), coefficient, phase_power: phase_power as u8 });

        // mixed-radix increment
        let mut pos = labels.len();
        loop {
            if pos == 0 {
                return Ok(terms);
            }
            pos -= 1;
            labels[pos] += 1;
            if labels[pos] < l {
                break;
            }
            labels[pos] = 0;
        }
    }
}

/// True when the sequence survives the trace: the total Majorana count
/// Σ n(𝔍_{ℓᵢ}) is even. For kept sequences Σσ is even as well.
pub fn parity_filter(term: &ExpansionTerm, sizes: &[u32]) -> bool {
    let total: u32 = term.labels.iter().map(|&l| sizes[l]).sum();
    total % 2 == 0
}

/// The interleaved product Y = Π_i [C_{ℓᵢ} ϑ(C_{ℓᵢ}) e^{−H₋/k} e^{−H₊/k}]
/// as a dense matrix (interaction pairs carry no coupling or phase here).
pub fn y_matrix(
    term: &ExpansionTerm,
    spec: &HamiltonianSpec,
    rep: &Representation,
) -> Result<DenseOperator> {
    let k = term.labels.len() as u32;
    let f = slice_factors(spec, rep, k)?;
    let n = spec.geometry.num_majoranas();

    let mut pair_mats: Vec<DenseOperator> = Vec::with_capacity(spec.cross.len() + 1);
    pair_mats.push(Representation::dense_identity(rep.dim()));
    for t in &spec.cross {
        let c = CliffordElement::monomial(n, t.subset)?;
        let pair = c.mul(&c.reflect(&spec.geometry)?)?;
        pair_mats.push(rep.to_matrix(&pair)?);
    }

    let slice_tail = &f.exp_minus * &f.exp_plus;
    let mut y = Representation::dense_identity(rep.dim());
    for &label in &term.labels {
        y = y * &pair_mats[label] * &slice_tail;
    }
    Ok(y)
}

/// Σ i^{Σσ} 𝔠 Y over the full enumeration; equals the k-th approximant.
pub fn reconstruct_expansion(
    spec: &HamiltonianSpec,
    rep: &Representation,
    k: u32,
) -> Result<DenseOperator> {
    let terms = enumerate_expansion(spec, k)?;
    let mut sum = DenseOperator::from_element(rep.dim(), rep.dim(), Complex64::new(0.0, 0.0));
    for term in &terms {
        let y = y_matrix(term, spec, rep)?;
        sum += y.map(|z| z * i_power(term.phase_power as i64) * term.coefficient);
    }
    Ok(sum)
}

/// Factorizes a kept sequence's product as Y = i^{−Σσ} D ϑ(D), returning
/// the even minus-supported element D = C_{ℓ₁} e^{−H₋/k} ⋯ C_{ℓ_k} e^{−H₋/k}
/// and the phase i^{−Σσ}. Errors on sequences dropped by the parity
/// filter, where the identity is undefined.
pub fn factorize_y(
    term: &ExpansionTerm,
    spec: &HamiltonianSpec,
    rep: &Representation,
) -> Result<(CliffordElement, Complex64)> {
    let sizes = subset_sizes(spec);
    if !parity_filter(term, &sizes) {
        return Err(Error::TermNotKept);
    }
    let k = term.labels.len() as u32;
    let n = spec.geometry.num_majoranas();
    let step = spec.beta / k as f64;

    // e^{−βH₋/k} as a symbolic element; its support is known a priori to
    // be the even minus-side monomials.
    let exp_minus_dense = exp_hermitian(&rep.to_matrix(&spec.h_minus)?.map(|z| -z * step));
    let minus_support: Vec<MonomialIndex> = crate::gibbs::even_basis(&spec.geometry, Side::Minus);
    let exp_minus = rep.from_matrix_supported(&exp_minus_dense, &minus_support)?;

    let mut d = CliffordElement::identity(n)?;
    for &label in &term.labels {
        if label > 0 {
            let c = CliffordElement::monomial(n, spec.cross[label - 1].subset)?;
            d = d.mul(&c)?;
        }
        d = d.mul(&exp_minus)?;
    }
    debug_assert_eq!(d.parity(), Parity::Even);
    debug_assert!(d.supported_on(&spec.geometry, Side::Minus)?);
    Ok((d, i_power(-(term.phase_power as i64))))
}

/// Minus-sign count mod 2 of the permutation that moves every minus-side
/// Majorana of an interleaved product to the left:
/// (½(Σn)² − ½Σn²) mod 2. The total Σn must be even. The closed form is
/// cross-checked against the quarter-power identity
/// (−1)^count = i^{−Σ(n mod 2)} before returning.
pub fn count_minus_signs(n_list: &[u64]) -> Result<u8> {
    let total: u64 = n_list.iter().sum();
    if total % 2 != 0 {
        return Err(Error::OddMajoranaTotal(total));
    }
    let sum_sq: u64 = n_list.iter().map(|&n| n * n).sum();
    let count = (total * total - sum_sq) / 2;

    // n² mod 4 = n mod 2 makes the count reduce to the σ sum:
    // 2·count ≡ −Σ(n mod 2) mod 4, i.e. (−1)^count = i^{−Σσ}.
    let sigma_sum: u64 = n_list.iter().map(|&n| n % 2).sum();
    debug_assert_eq!(
        (2 * count) % 4,
        (4 - (sigma_sum % 4) as i64).rem_euclid(4) as u64 % 4,
        "minus-sign count disagrees with the phase identity"
    );
    // the 2𝔑² shift never changes the parity
    debug_assert_eq!(count % 2, (sum_sq / 2) % 2);

    Ok((count % 2) as u8)
}

/// One row of a convergence study.
#[derive(Clone, Debug)]
pub struct ConvergenceRow {
    pub k: u32,
    /// ‖(e^{−H})_k − e^{−H}‖ in operator norm.
    pub error: f64,
    /// previous error / this error; None on the first row.
    pub ratio: Option<f64>,
}

/// Operator-norm errors of the approximants against the exact Gibbs
/// weight over a step schedule. On a doubling schedule the ratios settle
/// near 2 (first-order convergence) once k is past ~16.
pub fn convergence_table(
    spec: &HamiltonianSpec,
    rep: &Representation,
    ks: &[u32],
) -> Result<Vec<ConvergenceRow>> {
    let exact = exp_hermitian(&rep.to_matrix(&spec.assemble()?)?.map(|z| -z));
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(ks.len());
    for &k in ks {
        let approx = lie_product_approx(spec, rep, k)?;
        let error = operator_norm(&(&approx - &exact));
        let ratio = rows.last().map(|prev: &ConvergenceRow| prev.error / error);
        rows.push(ConvergenceRow { k, error, ratio });
    }
    Ok(rows)
}

/// CSV rendering of a convergence table: `k,error,ratio`.
pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("k,error,ratio\n");
    for row in rows {
        match row.ratio {
            Some(r) => out.push_str(&format!("{},{:.17e},{:.6}\n", row.k, row.error, r)),
            None => out.push_str(&format!("{},{:.17e},\n", row.k, row.error)),
        }
    }
    out
}
