pub mod cli;
pub mod corpus;
pub mod count;
pub mod error;
pub mod ffield;
pub mod gammatriple;
pub mod hypersum;
pub mod oracle;
pub mod selftest;
pub mod toric;
pub mod zlinalg;

pub use error::{Error, Result};
