use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("generator count mismatch: {left} vs {right}")]
    GeneratorMismatch { left: usize, right: usize },

    #[error("generator count must be a positive even number <= 64, got {0}")]
    InvalidGeneratorCount(usize),

    #[error("generator index {index} out of range 1..={max}")]
    IndexOutOfRange { index: u32, max: usize },

    #[error("duplicate generator index {0} in monomial")]
    DuplicateIndex(u32),

    #[error("element over {element} generators does not match geometry with {geometry} Majoranas")]
    GeometryMismatch { element: usize, geometry: usize },

    #[error("invalid reflection geometry:\n{0}")]
    InvalidGeometry(String),

    #[error(
        "{n_modes} fermion modes exceeds the representation cap of {cap} \
         (dense Majorana matrices would need ~{mib} MiB)"
    )]
    RepresentationTooLarge { n_modes: usize, cap: usize, mib: u64 },

    #[error("matrix dimension {0} is not a power of two")]
    DimensionNotPowerOfTwo(usize),

    #[error("matrix dimension {found} does not match representation dimension {expected}")]
    DimensionMismatch { found: usize, expected: usize },

    #[error(
        "full coefficient expansion over {generators} generators exceeds the limit of 16; \
         supply an explicit monomial support list"
    )]
    ExpansionTooLarge { generators: usize },

    #[error("invalid hamiltonian:\n{0}")]
    InvalidHamiltonian(String),

    #[error("operator is not self-adjoint: residual {residual:.3e} exceeds {tolerance:.3e}")]
    NotSelfAdjoint { residual: f64, tolerance: f64 },

    #[error("gram matrix over {majoranas} one-sided Majoranas exceeds the cap of {cap}")]
    GramTooLarge { majoranas: usize, cap: usize },

    #[error("trotter step count must be at least 1")]
    ZeroTrotterSteps,

    #[error("expansion would enumerate {terms} sequences, above the guard of {cap}")]
    ExpansionGuard { terms: u128, cap: u128 },

    #[error("expansion sequence was dropped by the parity filter; no factorization exists")]
    TermNotKept,

    #[error("odd total Majorana count {0}: the minus-sign count is undefined")]
    OddMajoranaTotal(u64),

    #[error("spin construction requires 4 flavors per site, geometry has {0}")]
    WrongFlavorCount(u32),

    #[error("bond ({0}, {1}) does not cross the reflection")]
    NonCrossingBond(u32, u32),

    #[error("operator does not preserve the chiral sector: commutator residual {0:.3e}")]
    ChiralSectorViolation(f64),

    #[error("invalid model config:\n{0}")]
    InvalidConfig(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}
