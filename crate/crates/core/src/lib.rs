//! Ancilla-assisted erasure of a qubit memory.
//!
//! A memory qubit, a thermal two-level reservoir and a pure ancilla (the
//! reservoir's angular momentum) interact through a fixed permutation
//! unitary built from four CNOTs. The memory always ends in its ground
//! state. The heat it releases does not depend on the reservoir
//! temperature, so above a limit temperature the memory-side Landauer bound
//! `Q_M ≤ -k_B T ΔS` fails.
//!
//! * [`linalg`]: dense complex matrices, partial traces, Jacobi eigenvalues
//! * [`states`]: Bloch states, Gibbs states, preselection, product states
//! * [`channel`]: the erasure unitary, its CNOT circuit, closed-form outputs
//! * [`thermo`]: entropy, heat, limit temperature, Landauer verdicts
//! * [`optics`]: the polarization/path realization with PBSs and HWPs
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod channel;
pub mod error;
pub mod linalg;
pub mod optics;
pub mod states;
pub mod thermo;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, ComplexScalar, HermitianSpectrum};
pub use states::{BlochVector, EnergyLevels, ThermalSpec};
pub use thermo::{ErasureReport, LandauerVerdict, LimitTemperature};
