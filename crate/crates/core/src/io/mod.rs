//! Text formats: polynomial expressions, problem files, parametrization
//! files and grid samples.

pub mod expr;
pub mod files;
pub mod sample;

pub use expr::{parse_poly, parse_scalar, Expr, Symbols};
pub use files::{affine_text, ParamFile, Problem, ProblemFile};
pub use sample::{grid_values, sample_grid, SampleRow};
