//! Differentiable loops and their tangent prolongations.
//!
//! A small catalog of loops on ℝᵈ charts ([`catalog::SmoothLoop`]) is
//! differentiated with forward-mode dual numbers ([`dual`]) to produce the
//! two Jacobian families `P(ξ,η)` and `Q(ξ,η)` at the identity, the
//! prolonged operations on tangent-bundle points ([`tangent`]), and sampled
//! residual audits of which weak properties survive prolongation
//! ([`checks`]). Dense linear algebra lives in [`mat`].

pub mod catalog;
pub mod checks;
pub mod dual;
pub mod mat;
pub mod tangent;

pub use catalog::SmoothLoop;
pub use checks::{
    base_property_residual, condition_residual, inverse_derivative_residuals,
    tangent_property_residual, transfer_suite, ResidualStat, SmoothCondition,
    TangentPropertyReport,
};
pub use dual::{Dual, Scalar};
pub use mat::{Mat, MatError};
pub use tangent::{
    classical_group_mul, cocycle_p, cocycle_q, jacobian, jacobian_fd, prolong_ldiv, prolong_mul,
    prolong_rdiv, tangent_identity, TangentPoint,
};
