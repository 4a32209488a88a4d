//! Dense 2^N-dimensional representation of the 2N Majoranas.
//!
//! The Hilbert space basis is the set of fermionic occupation states,
//! enumerated by binary counting: basis state `s` occupies mode j iff bit
//! j of `s` is set. Creation operators act by exterior multiplication
//! with the usual occupation-count sign string, and
//!
//!   c_{2j−1} = a_j + a_j*,   c_{2j} = i (a_j − a_j*),
//!
//! so odd-indexed Majorana matrices are entrywise real and even-indexed
//! ones purely imaginary.
//!
//! Every Majorana (and hence every monomial) is a signed permutation of
//! the basis: one nonzero entry per column, drawn from {±1, ±i}. The
//! module keeps that structure as [`MonomialAction`] and uses it for
//! exact O(dim) monomial algebra, materializing dense matrices only at
//! the public boundary.

use std::io::{self, Write};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::clifford::{CliffordElement, MonomialIndex};
use crate::error::{Error, Result};
use crate::geometry::ReflectionGeometry;
use crate::MODE_CAP;

pub type DenseOperator = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A signed permutation of the occupation basis: `M e_s = phase[s] e_{target[s]}`.
///
/// Majorana monomials in the standard representation all have this form,
/// with phases in {±1, ±i}; composing and tracing them is exact.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialAction {
    target: Vec<u32>,
    phase: Vec<Complex64>,
}

impl MonomialAction {
    fn identity(dim: usize) -> Self {
        MonomialAction {
            target: (0..dim as u32).collect(),
            phase: vec![ONE; dim],
        }
    }

    /// self ∘ inner: apply `inner` first.
    fn compose(&self, inner: &MonomialAction) -> Self {
        let dim = self.target.len();
        let mut target = vec![0u32; dim];
        let mut phase = vec![ZERO; dim];
        for s in 0..dim {
            let t = inner.target[s] as usize;
            target[s] = self.target[t];
            phase[s] = inner.phase[s] * self.phase[t];
        }
        MonomialAction { target, phase }
    }

    pub fn dim(&self) -> usize {
        self.target.len()
    }

    /// Dense matrix of the action.
    pub fn to_dense(&self) -> DenseOperator {
        let dim = self.dim();
        let mut m = DMatrix::from_element(dim, dim, ZERO);
        for s in 0..dim {
            m[(self.target[s] as usize, s)] = self.phase[s];
        }
        m
    }

    /// Matrix product self · m, computed as a phased row permutation.
    pub fn left_apply(&self, m: &DenseOperator) -> DenseOperator {
        let dim = self.dim();
        assert_eq!(m.nrows(), dim);
        let mut out = DMatrix::from_element(dim, m.ncols(), ZERO);
        for s in 0..dim {
            let t = self.target[s] as usize;
            for col in 0..m.ncols() {
                out[(t, col)] = self.phase[s] * m[(s, col)];
            }
        }
        out
    }

    /// Tr(self · m) in O(dim).
    pub fn trace_prod(&self, m: &DenseOperator) -> Complex64 {
        let mut acc = ZERO;
        for s in 0..self.dim() {
            acc += self.phase[s] * m[(s, self.target[s] as usize)];
        }
        acc
    }

    /// Accumulate `coeff · self` into a dense matrix.
    fn accumulate(&self, coeff: Complex64, out: &mut DenseOperator) {
        for s in 0..self.dim() {
            out[(self.target[s] as usize, s)] += coeff * self.phase[s];
        }
    }

    /// Coefficient pairing 2^{−N} Tr(M* A) against a dense matrix, where
    /// M is this action: only dim entries of A contribute.
    fn expansion_coefficient(&self, m: &DenseOperator) -> Complex64 {
        let mut acc = ZERO;
        for s in 0..self.dim() {
            acc += self.phase[s].conj() * m[(self.target[s] as usize, s)];
        }
        acc / self.dim() as f64
    }
}

/// The standard representation for N fermionic modes (2N Majoranas) on a
/// 2^N-dimensional space.
#[derive(Debug)]
pub struct Representation {
    n_modes: usize,
    dim: usize,
    majoranas: Vec<MonomialAction>,
}

impl Representation {
    pub fn new(n_modes: usize) -> Result<Self> {
        Self::with_cap(n_modes, MODE_CAP)
    }

    /// As [`Representation::new`] with an explicit mode cap; the error
    /// message carries the dense-storage estimate so oversized requests
    /// fail loudly before any allocation.
    pub fn with_cap(n_modes: usize, cap: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::InvalidGeneratorCount(0));
        }
        if n_modes > cap {
            let mib = dense_memory_estimate(n_modes) / (1024 * 1024);
            return Err(Error::RepresentationTooLarge { n_modes, cap, mib });
        }
        let dim = 1usize << n_modes;
        let mut majoranas = Vec::with_capacity(2 * n_modes);
        for mode in 0..n_modes {
            let below = (1u32 << mode) - 1;
            let mut odd = MonomialAction::identity(dim);
            let mut even = MonomialAction::identity(dim);
            for s in 0..dim {
                let sign = if ((s as u32) & below).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                let t = (s ^ (1 << mode)) as u32;
                let occupied = s >> mode & 1 == 1;
                odd.target[s] = t;
                odd.phase[s] = Complex64::new(sign, 0.0);
                even.target[s] = t;
                even.phase[s] = Complex64::new(0.0, if occupied { sign } else { -sign });
            }
            majoranas.push(odd);
            majoranas.push(even);
        }
        Ok(Representation { n_modes, dim, majoranas })
    }

    /// Representation inferred from a matrix dimension, which must be a
    /// power of two.
    pub fn for_dim(dim: usize) -> Result<Self> {
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::DimensionNotPowerOfTwo(dim));
        }
        Self::new(dim.trailing_zeros() as usize)
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn num_generators(&self) -> usize {
        2 * self.n_modes
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn dense_identity(dim: usize) -> DenseOperator {
        DMatrix::from_diagonal_element(dim, dim, ONE)
    }

    /// The signed-permutation action of c_index (1-based).
    pub fn majorana(&self, index: u32) -> &MonomialAction {
        &self.majoranas[(index - 1) as usize]
    }

    /// Dense matrix of c_index.
    pub fn majorana_dense(&self, index: u32) -> DenseOperator {
        self.majorana(index).to_dense()
    }

    /// The signed-permutation action of a canonical monomial.
    pub fn action(&self, m: &MonomialIndex) -> MonomialAction {
        // M = c_{i1}···c_{ik} applied right to left: fold as act ∘ c_i.
        let mut act = MonomialAction::identity(self.dim);
        for i in m.indices() {
            act = act.compose(self.majorana(i));
        }
        act
    }

    pub fn monomial_matrix(&self, m: &MonomialIndex) -> DenseOperator {
        self.action(m).to_dense()
    }

    fn check_element(&self, a: &CliffordElement) -> Result<()> {
        if a.num_generators() != self.num_generators() {
            return Err(Error::GeneratorMismatch {
                left: a.num_generators(),
                right: self.num_generators(),
            });
        }
        Ok(())
    }

    /// Linear extension of the monomial representation: Σ a_β ρ(M_β).
    pub fn to_matrix(&self, a: &CliffordElement) -> Result<DenseOperator> {
        self.check_element(a)?;
        let mut out = DMatrix::from_element(self.dim, self.dim, ZERO);
        for (m, c) in a.terms() {
            self.action(m).accumulate(*c, &mut out);
        }
        Ok(out)
    }

    /// Expands a dense operator over the full monomial basis using
    /// a_β = 2^{−N} Tr(M_β* A), then prunes at 1e−14 of the largest
    /// coefficient. Full expansion is limited to 2N ≤ 16 generators; use
    /// [`Representation::from_matrix_supported`] above that.
    pub fn from_matrix(&self, m: &DenseOperator) -> Result<CliffordElement> {
        if self.num_generators() > 16 {
            return Err(Error::ExpansionTooLarge { generators: self.num_generators() });
        }
        let all: Vec<MonomialIndex> = (0..1u64 << self.num_generators())
            .map(MonomialIndex::from_bits)
            .collect();
        self.from_matrix_supported(m, &all)
    }

    /// Coefficient expansion restricted to a caller-supplied monomial
    /// support list.
    pub fn from_matrix_supported(
        &self,
        m: &DenseOperator,
        support: &[MonomialIndex],
    ) -> Result<CliffordElement> {
        if m.nrows() != self.dim || m.ncols() != self.dim {
            return Err(Error::DimensionMismatch { found: m.nrows(), expected: self.dim });
        }
        let mut terms = Vec::with_capacity(support.len());
        for idx in support {
            let coeff = self.action(idx).expansion_coefficient(m);
            if coeff != ZERO {
                terms.push((*idx, coeff));
            }
        }
        Ok(CliffordElement::from_terms(self.num_generators(), terms)?.prune(1e-14))
    }

    /// ϑ on dense operators, computed algebraically as
    /// to_matrix ∘ reflect ∘ from_matrix; anti-linear by construction.
    pub fn reflect_matrix(&self, m: &DenseOperator, g: &ReflectionGeometry) -> Result<DenseOperator> {
        if g.num_majoranas() != self.num_generators() {
            return Err(Error::GeometryMismatch {
                element: self.num_generators(),
                geometry: g.num_majoranas(),
            });
        }
        let element = self.from_matrix(m)?;
        self.to_matrix(&element.reflect(g)?)
    }
}

/// Bytes needed to hold the 2N dense Majorana matrices for N modes.
pub fn dense_memory_estimate(n_modes: usize) -> u64 {
    let dim = 1u64 << n_modes.min(62);
    2 * n_modes as u64 * dim * dim * 16
}

/// The 2N dense Majorana matrices for N modes.
pub fn build_majoranas(n_modes: usize) -> Result<Vec<DenseOperator>> {
    let rep = Representation::new(n_modes)?;
    Ok((1..=2 * n_modes as u32).map(|i| rep.majorana_dense(i)).collect())
}

/// Expands a dense operator whose dimension determines N; errors when the
/// dimension is not a power of two.
pub fn expand_matrix(m: &DenseOperator) -> Result<CliffordElement> {
    let rep = Representation::for_dim(m.nrows())?;
    rep.from_matrix(m)
}

/// Debug dump: row-major `re,im` pairs, one row per line.
pub fn write_matrix_csv<W: Write>(m: &DenseOperator, mut w: W) -> io::Result<()> {
    for r in 0..m.nrows() {
        let mut row = Vec::with_capacity(2 * m.ncols());
        for c in 0..m.ncols() {
            let z = m[(r, c)];
            row.push(format!("{:.17e},{:.17e}", z.re, z.im));
        }
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}
