//! Configuration loading, the verification suite and its reports.

mod config;
mod report;
mod suite;
mod table;

pub use config::{load_model_config, Backend, CellConfig, EmbeddingConfig, Experiment, Fraction, ModelConfig};
pub use report::{CheckResult, Report, Status};
pub use suite::{random_boundary_case, run_verification_suite, Selection, SuiteOptions, FLOAT_POINT_CAP};
pub use table::{emit_spectrum_report, SpectrumRow, SpectrumTable, DECIMAL_DIGITS};
