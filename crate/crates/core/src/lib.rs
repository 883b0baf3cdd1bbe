pub mod bits;
pub mod cayley;
pub mod classify;
pub mod cyclotomic;
pub mod designs;
pub mod drg;
pub mod error;
pub mod fourier;
pub mod graph;
pub mod group;
pub mod schur;
pub mod structure;

pub use error::{Error, Result};
