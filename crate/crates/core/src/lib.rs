//! Which quartics `x^4 + a x^3 + b x^2 + a q x + q^2` are Weil polynomials of
//! abelian surfaces over `F_q`, and which of those isogeny classes contain
//! the Jacobian of a genus-2 curve.
//!
//! [`classify`] is the decision procedure; [`oracle`] checks it against an
//! exhaustive census of genus-2 curves over small fields.

pub mod classify;
pub mod cli;
pub mod gf;
pub mod numth;
pub mod oracle;
pub mod weil;
