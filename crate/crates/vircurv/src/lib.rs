//! Exact-arithmetic connection and curvature calculus for trigonometric
//! vector fields on the circle.
//!
//! The objects live on the mean-zero part of the algebra of vector
//! fields `f(t) d/dt` with trigonometric-polynomial coefficients,
//! equipped with a two-parameter central extension and the invariant
//! metric its diagonal weights define. On top of that sit the
//! canonical covariant derivative of the quotient by rotations, the
//! per-mode rotation `J`, the modified connection adapted to `J`, its
//! curvature over the complexified basis, and a regularized Ricci
//! trace with explicit telescoping bookkeeping.
//!
//! Every quantity is a rational number computed exactly; every closed
//! form has an independently assembled counterpart so the two can be
//! compared coefficient by coefficient. The [`verify`] module bundles
//! those comparisons into named suites, and [`report`] renders results
//! deterministically as text, JSON, or CSV.

pub mod complex_structure;
pub mod connection;
pub mod curvature;
pub mod error;
pub mod parse;
pub mod report;
pub mod scalar;
pub mod trig;
pub mod verify;
pub mod virasoro;

pub use complex_structure::{
    hs_partial_sum, nabla_j, nabla_j_closed, nabla_tilde, nabla_tilde_closed, nijenhuis, q_closed,
    q_tensor, tilde_metric_defect, torsion_tilde,
};
pub use connection::{
    lambda, metric_defect, nabla, nabla_closed, torsion, u_closed, u_oracle, SignConvention,
};
pub use curvature::{
    complex_bracket, complex_bracket_central, curvature, from_complex, nabla_tilde_complex,
    ricci_closed_form, ricci_coefficient, ricci_coefficient_from_curvature, ricci_partial,
    ricci_regularized, ricci_report, to_complex, ComplexField, RicciCutoff, RicciReport,
};
pub use error::Error;
pub use parse::{parse_field, FieldParseError};
pub use report::{
    render_complex_field, render_field, render_ricci, render_scalar, render_verification, Format,
    SCHEMA_VERSION,
};
pub use scalar::{ComplexScalar, Scalar, ScalarParseError};
pub use trig::{bracket_table, BasisLabel, TrigField};
pub use verify::{run_verify, CheckResult, Counterexample, Suite, VerificationReport};
pub use virasoro::{
    cocycle, cocycle_on_basis, inner_product, inner_product_diagonal, jacobi_defect,
    virasoro_bracket, CentralParams, VirasoroElement,
};
