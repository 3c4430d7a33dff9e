//! Bijections between involution classes, Dyck words and code words.

mod ops;

pub mod codes;
pub mod phi;
pub mod psi;
pub mod theta;

pub use codes::{
    code_123_213, code_213, code_3412, decode_123_213, decode_213, decode_3412, AbLetter, AbWord, CompositionCode,
};
pub use phi::{parent_dyck, parent_involution, phi, phi_inv, DyckWord, Step};
pub use psi::{psi, psi_inv};
pub use theta::{theta_2134, theta_2134_inv};
