//! Exact verification laboratory for noise-type Boolean algebras of
//! σ-fields realized on finite product probability spaces.
//!
//! A model is a finite list of independent cells, each with a rational
//! outcome distribution. The Boolean algebra `B` is the power set of the
//! cells, `F_x` is the σ-field generated by the coordinates in `x`, and
//! `Q_x` is conditional expectation given `F_x`. Every projection, inner
//! product and spectral mass is computed exactly over the rationals through
//! an unnormalized Walsh basis, with an independent naive oracle for the
//! projections.
//!
//! Modules:
//! - [`boolalg`]: finite power-set algebras, subalgebras, filters, Stone duality
//! - [`model`]: cells, the product space, Walsh basis, projections `Q_x`
//! - [`chaos`]: first chaos space, classification, atomless defect
//! - [`spectrum`]: spectral atoms, `S_x`, `Σ_x`, spectral measures, filters
//! - [`regopen`]: regular open subsets of `[0,1]` and of finite spaces
//! - [`geometry`]: sample-point homomorphisms and spectral-set maps
//! - [`harness`]: JSON configuration, verification suites, reports

pub mod boolalg;
pub mod chaos;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod linalg;
pub mod model;
pub mod partition;
pub mod random;
pub mod regopen;
pub mod scalar;
pub mod spectrum;

pub use boolalg::{BoolElem, FinitePowerAlgebra, Filter, Subalgebra};
pub use error::{Error, Result};
pub use model::{Cell, FloatModel, Model, NoiseModel, RandomVariable, WalshCoeffs};
pub use partition::Partition;
pub use regopen::{PointSet, RegOpen};
pub use scalar::{parse_rational, Rational, Scalar};
