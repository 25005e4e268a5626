//! Standard-library companion to `pardfs-core`: graph generators, file
//! formats, a rayon-backed executor, run reports, the scaling suite and
//! randomized oracle drivers. The `pardfs` binary wraps all of it.

pub mod checks;
pub mod exec;
pub mod gen;
pub mod io;
pub mod run;
pub mod scaling;

pub use exec::RayonExecutor;
pub use gen::{generate, GenKind, GenParams};
pub use run::{dfs_forest, run_and_report, verify_forest, Mode, RunReport, VerifyLevel};
