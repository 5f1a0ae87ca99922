pub mod algebra;
pub mod constructions;
pub mod dulac;
pub mod error;
pub mod io;
pub mod par;
pub mod polar;
pub mod roots;
pub mod topology;

pub use error::{Error, Result};
