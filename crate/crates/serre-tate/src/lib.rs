//! Truncated p-adic Serre-Tate expansions: the matrix series Ψ, its Frobenius
//! twists, the expansions of the basic forms, the comparison maps ♦, ♠, ♣
//! and ♥, and the mod p identities for cyclic products.

mod checks;
mod comparison;
mod series;

pub use checks::{
    bracket_sum_check, cyclic_expansion_check, key_identity_check, route_check,
    CyclicExpansionCheck, NonzeroStatus,
};
pub use comparison::{
    check_spade_club, club, diamond_realize, heart_diamond, heart_spade, hecke_act, hecke_images,
    spade, SpadeClubCheck, SPADE_MAX_DEGREE,
};
pub use series::{
    expansion_basic, log1p_series, phi_twist, phi_twist_poly, psi, psi_phi_direct, psi_rational,
    psi_scalar_at_zero, BasicKind, ExpansionParams, ExpansionSeries, SeriesMatrix,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SerreTateError {
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("level {needed} exceeds the level budget {budget}")]
    LevelOverflow { needed: u16, budget: u16 },
    #[error("index must be at least 1")]
    BadIndex,
    #[error("polynomial uses a variable outside the slots: {0}")]
    SlotMismatch(String),
    #[error("coefficient {0} is not p-integral")]
    NotIntegral(String),
    #[error("degree bound {0} exceeds the cap for rational expansions")]
    DegreeTooLarge(u32),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("invalid level cycle: {0}")]
    BadCycle(String),
    #[error(transparent)]
    Poly(#[from] multipoly::PolyError),
    #[error(transparent)]
    Delta(#[from] delta_calculus::DeltaError),
}
