//! The weight ring Z[φ], the canonical p-derivation and its Frobenius lift on
//! δ-polynomial rings, the δ-bracket and δ-homogeneous decomposition.

mod delta;
mod homog;
mod weight;

pub use delta::{
    canonical_delta, canonical_delta_rational, cp_poly, delta_bracket, delta_bracket_padic,
    delta_via_lift, frobenius_lift, is_p_integral, reduce_poly,
};
pub use homog::{
    delta_homog_decompose, delta_var_in_phi_coords, from_phi_coords, in_s_n, phi_weight,
    to_phi_coords,
};
pub use weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeltaError {
    #[error("not enough p-adic precision left to apply δ")]
    PrecisionExhausted,
    #[error("division by p is not exact")]
    NotDivisible,
    #[error("cannot parse weight {0:?}")]
    Parse(String),
    #[error("variable {0} is not allowed here")]
    UnsupportedVariable(String),
    #[error(transparent)]
    Arith(#[from] exact_arith::ArithError),
    #[error(transparent)]
    Poly(#[from] multipoly::PolyError),
}
