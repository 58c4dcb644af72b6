//! Numerical Riemann tensor, curvature operator on 2-forms and its
//! decomposition into scalar, trace-free Ricci and Weyl parts.

pub mod forms;
pub mod jet;
pub mod operator;
pub mod tensor;

pub use forms::{hodge, projector, Coframe, Mat6, TwoFormBasis};
pub use operator::{
    conformal_rescale_scalar, curvature_operator, decompose, effective_step, evaluate,
    evaluate_full, CurvatureDecomposition, PointCurvature,
};
pub use tensor::{christoffel, riemann, riemann_with_metric, Christoffel, LocalGeometry, RiemannTensor};
