//! An LCF-style prover for classical first-order logic in which theorems,
//! inference rules and tactics come in simultaneous, mutually recursive
//! bundles, plus a translator from goto programs to object and functional
//! form.

pub mod kernel;
pub mod logic;
pub mod session;
pub mod simul_defs;
pub mod tactics;
pub mod translate;
