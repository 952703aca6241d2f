//! A numerical laboratory for fixed-energy (k = 1) partial-wave scattering
//! off compactly supported radial potentials: phase shifts, the
//! l-independent transformation-operator kernel obtained from a Volterra
//! equation in logarithmic coordinates, and the analytic functionals and
//! bounds that underpin uniqueness of the inverse problem.

pub mod error;
pub mod ode;
pub mod potential;
pub mod quad;
pub mod radial;
pub mod specfun;

pub use error::{Error, Result};
