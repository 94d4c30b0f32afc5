//! Scene files, geometric queries and a product-engine benchmark on top of
//! the `cga` kernel.

pub mod bench;
pub mod error;
pub mod format;
pub mod query;
pub mod scene;

pub use error::{CliError, Code, Diagnostic};
pub use query::{run_query, Output, DEFAULT_EPS};
pub use scene::{parse_scene, Entity, Scene};
