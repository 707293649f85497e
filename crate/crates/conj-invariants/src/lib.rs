//! Invariants of tuples of g x g matrices under simultaneous conjugation:
//! trace words, the wedge-commutant determinant Φ_q, the adjugate-product
//! map π_n from symmetric tuples, cyclic products and randomized
//! transcendence-degree certificates.

mod cyclic;
mod endo;
mod rank;

pub use cyclic::{cyclic_matrix_product, y_invariant};
pub use endo::{
    conj_act, cycle_permutation, disc0, generic_endos, phi_q, phi_q_witness, pi_n, random_diagonal,
    root_of_unity_diagonal, trace_word, WordInvariant,
};
pub use rank::{pulled_back_words, trace_words, words, JetRing, RankClaim, RankKind};

pub use exact_linalg::jacobian_rank;

/// A prime comfortably larger than any polynomial degree used here.
pub const RANK_PRIME: u64 = 2_147_483_647;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConjError {
    #[error("conjugating matrix is singular")]
    Singular,
    #[error("invalid word: {0}")]
    BadWord(String),
    #[error("exterior power {q} requires 1 <= q <= {g} - 1")]
    BadQ { q: usize, g: usize },
    #[error("matrices in a tuple must share one size")]
    SizeMismatch,
    #[error("invalid level cycle: {0}")]
    BadCycle(String),
    #[error("no suitable root of unity in F_{0}")]
    NoRootOfUnity(u64),
    #[error("invalid field size {0}")]
    BadField(u64),
    #[error(transparent)]
    Poly(#[from] multipoly::PolyError),
    #[error(transparent)]
    Linalg(#[from] exact_linalg::LinalgError),
}
