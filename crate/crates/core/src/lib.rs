pub mod bijections;
pub mod error;
pub mod oracle;
pub mod perm;
pub mod series;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
