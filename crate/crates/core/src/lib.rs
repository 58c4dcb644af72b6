pub mod bianchi;
pub mod chart;
pub mod curvature;
pub mod error;
pub mod functionals;
pub mod gluing;
pub mod quadrature;
pub mod schottky;
pub mod selftest;
pub mod topology;
pub mod zoo;

pub use chart::{ChartMetric, Mat4, Orientation, Point, ScalarFn, SingularLocus};
pub use curvature::{CurvatureDecomposition, RiemannTensor};
pub use error::{Error, Result};
pub use quadrature::QuadratureScheme;
pub use zoo::{ExactRecord, Patch, ZooEntry};
