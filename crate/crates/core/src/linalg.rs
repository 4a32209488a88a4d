//! Small dense linear-algebra kernels shared by the Gibbs and Trotter
//! machinery: Hermitian eigendecomposition, the Hermitian matrix
//! exponential, and the operator norm via the Hermitian embedding
//! [[0, M], [M*, 0]], whose spectrum is ± the singular values of M.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::dense::DenseOperator;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Frobenius norm of M − M*.
pub fn hermiticity_residual(m: &DenseOperator) -> f64 {
    (m - m.adjoint()).norm()
}

/// Eigendecomposition of the Hermitian part (M + M*)/2; returns real
/// eigenvalues and the unitary of eigenvectors, in the solver's order.
pub fn hermitian_eigen(m: &DenseOperator) -> (DVector<f64>, DenseOperator) {
    let h = (m + m.adjoint()).map(|z| z * 0.5);
    let se = SymmetricEigen::new(h);
    (se.eigenvalues, se.eigenvectors)
}

/// e^M for Hermitian M, via spectral calculus V e^Λ V*.
pub fn exp_hermitian(m: &DenseOperator) -> DenseOperator {
    let (vals, vecs) = hermitian_eigen(m);
    apply_spectral(&vals, &vecs, f64::exp)
}

/// V f(Λ) V* from an eigendecomposition.
pub fn apply_spectral(
    vals: &DVector<f64>,
    vecs: &DenseOperator,
    f: impl Fn(f64) -> f64,
) -> DenseOperator {
    let d = DMatrix::from_diagonal(&vals.map(|x| Complex64::new(f(x), 0.0)));
    vecs * d * vecs.adjoint()
}

/// Largest singular value, computed as the largest |eigenvalue| of the
/// Hermitian embedding.
pub fn operator_norm(m: &DenseOperator) -> f64 {
    let n = m.nrows();
    let mut emb = DMatrix::from_element(2 * n, 2 * n, ZERO);
    for r in 0..n {
        for c in 0..m.ncols() {
            emb[(r, n + c)] = m[(r, c)];
            emb[(n + c, r)] = m[(r, c)].conj();
        }
    }
    let se = SymmetricEigen::new(emb);
    se.eigenvalues.iter().fold(0.0f64, |acc, &x| acc.max(x.abs()))
}

/// M^k by binary exponentiation, k >= 1.
pub fn matrix_power(m: &DenseOperator, k: u32) -> DenseOperator {
    assert!(k >= 1, "matrix_power needs k >= 1");
    let mut result: Option<DenseOperator> = None;
    let mut base = m.clone();
    let mut exp = k;
    loop {
        if exp & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => r * &base,
            });
        }
        exp >>= 1;
        if exp == 0 {
            break;
        }
        base = &base * &base;
    }
    result.expect("k >= 1")
}
