pub mod analyze;
pub mod budget;
pub mod diophantine;
pub mod error;
pub mod graphcore;
pub mod sintring;
pub mod synthesis;
pub mod unitgraph;

pub use error::{Error, Result};
