//! Symbolic Clifford algebra over 2N Majorana generators.
//!
//! Elements are sparse complex combinations of canonically ordered
//! monomials c_{i1} c_{i2} ⋯ c_{ik} with i1 < i2 < ⋯ < ik, stored as
//! bitsets over the global indices 1..=2N. The generator relations
//!
//!   {c_i, c_j} = 2 δ_ij,   c_i* = c_i,
//!
//! reduce every product to ± a canonical monomial; the sign is a parity
//! of adjacent transpositions counted exactly in integer arithmetic, so
//! all purely symbolic computations are exact.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{ReflectionGeometry, Side};

/// Degree parity of an element's monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// Which half-algebra an element's non-identity monomials live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupportSide {
    Minus,
    Plus,
    Both,
    Scalar,
}

/// A canonically ordered Majorana monomial, stored as a bitset: bit i−1
/// set means generator c_i occurs. The empty set is the identity I.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct MonomialIndex {
    bits: u64,
}

impl MonomialIndex {
    pub const MAX_GENERATORS: usize = 64;

    pub fn identity() -> Self {
        MonomialIndex { bits: 0 }
    }

    /// Monomial from 1-based generator indices; order does not matter but
    /// duplicates are rejected (a repeated generator is not a monomial).
    pub fn from_indices(indices: &[u32]) -> Result<Self> {
        let mut bits = 0u64;
        for &i in indices {
            if i == 0 || i as usize > Self::MAX_GENERATORS {
                return Err(Error::IndexOutOfRange { index: i, max: Self::MAX_GENERATORS });
            }
            let bit = 1u64 << (i - 1);
            if bits & bit != 0 {
                return Err(Error::DuplicateIndex(i));
            }
            bits |= bit;
        }
        Ok(MonomialIndex { bits })
    }

    pub fn from_bits(bits: u64) -> Self {
        MonomialIndex { bits }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn degree(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, index: u32) -> bool {
        index >= 1 && index as usize <= Self::MAX_GENERATORS && self.bits >> (index - 1) & 1 == 1
    }

    /// Ascending 1-based generator indices.
    pub fn indices(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        let mut bits = self.bits;
        while bits != 0 {
            let i = bits.trailing_zeros();
            out.push(i + 1);
            bits &= bits - 1;
        }
        out
    }

    pub fn max_index(&self) -> Option<u32> {
        if self.bits == 0 {
            None
        } else {
            Some(64 - self.bits.leading_zeros())
        }
    }

    /// Canonical product M_a · M_b → (M_c, sign): repeated generators
    /// cancel pairwise (c_i² = I) and the sign is (−1) to the number of
    /// index pairs (i ∈ a, j ∈ b) with i > j, i.e. the adjacent
    /// transpositions needed to sort the concatenation.
    pub fn product(&self, other: &MonomialIndex) -> (MonomialIndex, i32) {
        let mut swaps = 0u32;
        let mut a = self.bits >> 1;
        while a != 0 {
            swaps += (a & other.bits).count_ones();
            a >>= 1;
        }
        let sign = if swaps % 2 == 0 { 1 } else { -1 };
        (MonomialIndex { bits: self.bits ^ other.bits }, sign)
    }

    /// Sign picked up by reversing the factor order: (−1)^{k(k−1)/2}.
    pub fn reversal_sign(&self) -> i32 {
        let k = self.degree() as u64;
        if (k * k.saturating_sub(1) / 2) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Image under the reflection's index map, re-canonicalized: returns
    /// the image monomial and the sorting sign of the mapped index
    /// sequence.
    pub fn reflect(&self, g: &ReflectionGeometry) -> (MonomialIndex, i32) {
        let mapped: Vec<u32> = self.indices().iter().map(|&i| g.theta_index(i)).collect();
        let mut inversions = 0u32;
        let mut bits = 0u64;
        for (a, &x) in mapped.iter().enumerate() {
            for &y in &mapped[a + 1..] {
                if x > y {
                    inversions += 1;
                }
            }
            debug_assert!(bits >> (x - 1) & 1 == 0, "reflection must be injective");
            bits |= 1u64 << (x - 1);
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        (MonomialIndex { bits }, sign)
    }
}

impl fmt::Display for MonomialIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "I");
        }
        for i in self.indices() {
            write!(f, "c{i}")?;
        }
        Ok(())
    }
}

/// Sparse element A = Σ_β a_β M_β of the Clifford algebra over a fixed
/// number of generators. Exact zeros are never stored; numerically
/// sourced elements are pruned by the caller (see
/// [`CliffordElement::prune`]).
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordElement {
    num_generators: usize,
    terms: BTreeMap<MonomialIndex, Complex64>,
}

fn check_generator_count(n: usize) -> Result<()> {
    if n == 0 || n % 2 != 0 || n > MonomialIndex::MAX_GENERATORS {
        return Err(Error::InvalidGeneratorCount(n));
    }
    Ok(())
}

impl CliffordElement {
    pub fn zero(num_generators: usize) -> Result<Self> {
        check_generator_count(num_generators)?;
        Ok(CliffordElement { num_generators, terms: BTreeMap::new() })
    }

    pub fn identity(num_generators: usize) -> Result<Self> {
        Self::scalar(num_generators, Complex64::new(1.0, 0.0))
    }

    pub fn scalar(num_generators: usize, value: Complex64) -> Result<Self> {
        let mut e = Self::zero(num_generators)?;
        e.add_term(MonomialIndex::identity(), value);
        Ok(e)
    }

    /// The generator c_index as an element.
    pub fn generator(num_generators: usize, index: u32) -> Result<Self> {
        check_generator_count(num_generators)?;
        if index == 0 || index as usize > num_generators {
            return Err(Error::IndexOutOfRange { index, max: num_generators });
        }
        let mut e = Self::zero(num_generators)?;
        e.add_term(MonomialIndex::from_indices(&[index])?, Complex64::new(1.0, 0.0));
        Ok(e)
    }

    /// The canonical monomial M_β with coefficient 1.
    pub fn monomial(num_generators: usize, index: MonomialIndex) -> Result<Self> {
        check_generator_count(num_generators)?;
        Self::check_monomial(num_generators, &index)?;
        let mut e = Self::zero(num_generators)?;
        e.add_term(index, Complex64::new(1.0, 0.0));
        Ok(e)
    }

    pub fn from_terms<I>(num_generators: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MonomialIndex, Complex64)>,
    {
        let mut e = Self::zero(num_generators)?;
        for (m, c) in terms {
            Self::check_monomial(num_generators, &m)?;
            e.add_term(m, c);
        }
        Ok(e)
    }

    fn check_monomial(num_generators: usize, m: &MonomialIndex) -> Result<()> {
        if let Some(max) = m.max_index() {
            if max as usize > num_generators {
                return Err(Error::IndexOutOfRange { index: max, max: num_generators });
            }
        }
        Ok(())
    }

    fn add_term(&mut self, m: MonomialIndex, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let entry = self.terms.entry(m).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if *entry == Complex64::new(0.0, 0.0) {
            self.terms.remove(&m);
        }
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    /// Number of fermionic modes N = (generator count)/2.
    pub fn num_modes(&self) -> usize {
        self.num_generators / 2
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonomialIndex, &Complex64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &MonomialIndex) -> Complex64 {
        self.terms.get(m).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn check_same(&self, other: &CliffordElement) -> Result<()> {
        if self.num_generators != other.num_generators {
            return Err(Error::GeneratorMismatch {
                left: self.num_generators,
                right: other.num_generators,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &CliffordElement) -> Result<CliffordElement> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &CliffordElement) -> Result<CliffordElement> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> CliffordElement {
        let mut out = CliffordElement { num_generators: self.num_generators, terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            out.add_term(*m, c * factor);
        }
        out
    }

    /// Bilinear product: distributes [`MonomialIndex::product`] over all
    /// term pairs, accumulating signed coefficients. Exact zeros drop out.
    pub fn mul(&self, other: &CliffordElement) -> Result<CliffordElement> {
        self.check_same(other)?;
        let mut out = CliffordElement { num_generators: self.num_generators, terms: BTreeMap::new() };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let (m, sign) = ma.product(mb);
                out.add_term(m, ca * cb * sign as f64);
            }
        }
        Ok(out)
    }

    /// A* : reverses each monomial (the generators are self-adjoint, so a
    /// degree-k monomial picks up (−1)^{k(k−1)/2}) and conjugates
    /// coefficients.
    pub fn adjoint(&self) -> CliffordElement {
        let mut out = CliffordElement { num_generators: self.num_generators, terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            out.add_term(*m, c.conj() * m.reversal_sign() as f64);
        }
        out
    }

    /// Trace in the 2^N-dimensional representation: every non-identity
    /// monomial is traceless, so Tr A = 2^N a_∅.
    pub fn trace(&self) -> Complex64 {
        self.coefficient(&MonomialIndex::identity()) * 2f64.powi(self.num_modes() as i32)
    }

    /// The reflection ϑ as an anti-linear algebra map: every monomial's
    /// indices pass through the geometry's index involution, the image is
    /// re-canonicalized with its sorting sign, and coefficients are
    /// conjugated. ϑ∘ϑ = id.
    pub fn reflect(&self, g: &ReflectionGeometry) -> Result<CliffordElement> {
        if self.num_generators != g.num_majoranas() {
            return Err(Error::GeometryMismatch {
                element: self.num_generators,
                geometry: g.num_majoranas(),
            });
        }
        let mut out = CliffordElement { num_generators: self.num_generators, terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            let (image, sign) = m.reflect(g);
            out.add_term(image, c.conj() * sign as f64);
        }
        Ok(out)
    }

    /// Degree-parity classification over all stored monomials; the zero
    /// element counts as even.
    pub fn parity(&self) -> Parity {
        let mut even = false;
        let mut odd = false;
        for m in self.terms.keys() {
            if m.degree() % 2 == 0 {
                even = true;
            } else {
                odd = true;
            }
        }
        match (even, odd) {
            (true, true) => Parity::Mixed,
            (false, true) => Parity::Odd,
            _ => Parity::Even,
        }
    }

    /// Reports which half-algebra the non-identity monomials live in.
    pub fn support_side(&self, g: &ReflectionGeometry) -> Result<SupportSide> {
        if self.num_generators != g.num_majoranas() {
            return Err(Error::GeometryMismatch {
                element: self.num_generators,
                geometry: g.num_majoranas(),
            });
        }
        let mut minus = false;
        let mut plus = false;
        for m in self.terms.keys() {
            for i in m.indices() {
                match g.side_of_index(i) {
                    Side::Minus => minus = true,
                    Side::Plus => plus = true,
                }
            }
        }
        Ok(match (minus, plus) {
            (false, false) => SupportSide::Scalar,
            (true, false) => SupportSide::Minus,
            (false, true) => SupportSide::Plus,
            (true, true) => SupportSide::Both,
        })
    }

    /// True when every monomial uses only indices from `side`.
    pub fn supported_on(&self, g: &ReflectionGeometry, side: Side) -> Result<bool> {
        let s = self.support_side(g)?;
        Ok(match (s, side) {
            (SupportSide::Scalar, _) => true,
            (SupportSide::Minus, Side::Minus) => true,
            (SupportSide::Plus, Side::Plus) => true,
            _ => false,
        })
    }

    /// Drops coefficients below `rel_tol · max_β |a_β|`; used after
    /// numerically sourced expansions to keep the term map sparse.
    pub fn prune(&self, rel_tol: f64) -> CliffordElement {
        let cutoff = rel_tol * self.max_abs_coefficient();
        let terms = self
            .terms
            .iter()
            .filter(|(_, c)| c.norm() >= cutoff && c.norm() > 0.0)
            .map(|(m, c)| (*m, *c))
            .collect();
        CliffordElement { num_generators: self.num_generators, terms }
    }

    /// Largest coefficient magnitude of the difference, without building it.
    pub fn max_coeff_distance(&self, other: &CliffordElement) -> Result<f64> {
        self.check_same(other)?;
        let mut worst: f64 = 0.0;
        for (m, c) in &self.terms {
            worst = worst.max((c - other.coefficient(m)).norm());
        }
        for (m, c) in &other.terms {
            if !self.terms.contains_key(m) {
                worst = worst.max(c.norm());
            }
        }
        Ok(worst)
    }

    pub fn approx_eq(&self, other: &CliffordElement, tol: f64) -> bool {
        match self.max_coeff_distance(other) {
            Ok(d) => d <= tol,
            Err(_) => false,
        }
    }

    /// Residual of self-adjointness, max_β |a_β − (A*)_β|.
    pub fn self_adjointness_residual(&self) -> f64 {
        self.max_coeff_distance(&self.adjoint()).expect("same generator count")
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{m}")?;
        }
        Ok(())
    }
}
