//! Holed surface-code lattices: stabilizer algebra, exact spectra, the
//! effective pseudo-spin chain and its gates, interference readout and
//! thermal error estimates.

pub mod cli;
pub mod config;
pub mod decoherence;
pub mod effective;
pub mod experiments;
pub mod lattice;
pub mod measure;
pub mod pauli;
pub mod spectra;
