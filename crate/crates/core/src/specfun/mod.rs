//! Special functions used by the closed-form energy and potential formulas.
//!
//! All routines are pure, take real arguments, and reject NaN/∞ up front.

mod elliptic;
mod gamma;
mod hyp2f1;

pub use elliptic::elliptic_e;
pub use gamma::{digamma, gamma, ln_gamma, rgamma};
pub use hyp2f1::hyp2f1;
