//! Teichmüller and Thurston metrics on the flat torus and the once-punctured
//! torus.
//!
//! Both models reduce the supremum over simple closed curves to a search
//! over rational slopes, organized by the Farey tree in [`farey`] and
//! maximized by [`supratio::maximize`].

pub mod cli;
pub mod error;
pub mod exec;
pub mod farey;
pub mod forms;
pub mod ptorus;
pub mod supratio;
pub mod torus;

pub use error::{Error, Result};
pub use exec::Execution;
pub use farey::{FareyNode, Slope};
pub use supratio::{SupQuery, SupRatioResult};
