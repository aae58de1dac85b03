//! Numerical models of the Riemann zeros: special functions, the zeta engine,
//! counting formulas, Dirac/xp spectra, the Landau model, the Moebius-mirror
//! transfer matrices and the Perron residue expansions of M_z and M.

pub mod error;
pub mod specfun;

pub use error::{Error, Result};
pub use specfun::ComplexValue;
pub mod roots;
pub mod zeta;
pub mod counting;
pub mod dirac;
pub mod landau;
pub mod mertens;
pub mod mirror;
pub mod cli;
