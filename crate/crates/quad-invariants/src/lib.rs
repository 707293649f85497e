//! SL_g congruence invariants of tuples of symmetric matrices: invariant
//! dimensions by the Lie-algebra kernel method, the generators Θ, Υ and Ξ,
//! the map ȷ to Plücker coordinates for g = 2, relations, Hilbert series,
//! the tact-invariant and the b_0 solution counts.

mod b0;
mod hilbert;
mod jmap;
mod lie;
mod sym;
mod theta;

pub use b0::{b0_count, b0_count_g2, b0_count_g3, b0_count_g3_brute, B0Report};
pub use hilbert::{hilbert_closed, HilbertSeries, HilbertVariant};
pub use jmap::{
    cyclic_relation, format_theta_monomial, jmath, plucker_relation, plucker_span_dimension,
    plucker_y, xi_lift, xi_target, CyclicCheck, PluckerCheck, ThetaPoly,
};
pub use lie::{
    derive_monomial, derive_poly, invariant_dimension, is_lie_invariant, slice_degree, t_vars,
    torus_slice, InvariantBasis, DEFAULT_SLICE_CAP,
};
pub use sym::{congruence_act, congruence_substitute, random_jacobian_rank, random_point};
pub use theta::{
    binary_discriminant, delta3_2_3, generic_t, multidegrees, pencil_thetas, point_from_matrices,
    separating_f0, tact_invariant, theta, theta_count, upsilon,
};

/// A prime above 2^30 for randomized rank certificates.
pub const RANK_PRIME: u64 = 2_147_483_647;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadError {
    #[error("g·s must be an integer (g = {g}, s = {s2}/2)")]
    HalfIntegerInvalid { g: usize, s2: u32 },
    #[error("torus slice has {size} monomials, above the cap {cap}")]
    ResourceBound { size: usize, cap: usize },
    #[error("multidegree {0:?} does not sum to g")]
    BadMultidegree(Vec<usize>),
    #[error("levels {0:?} must be strictly increasing, one per upper entry")]
    BadLevels(Vec<usize>),
    #[error("only g = 2 is supported here, got g = {0}")]
    WrongG(usize),
    #[error("bad indices: {0}")]
    BadIndices(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("no closed form for r = {0}")]
    UnsupportedR(usize),
    #[error("q = {0} must be a prime not dividing 6 (and at most 1000 for g = 3)")]
    BadField(u64),
    #[error("matrix sizes do not match")]
    SizeMismatch,
    #[error("size {0} is outside the supported range")]
    SizeTooLarge(usize),
    #[error(transparent)]
    Poly(#[from] multipoly::PolyError),
    #[error(transparent)]
    Linalg(#[from] exact_linalg::LinalgError),
}
