//! The erasure unitary on memory ⊗ reservoir energy ⊗ ancilla.
//!
//! On basis bits `(m, e, a)` the channel acts as the GF(2)-linear map
//! `(m, e, a) ↦ (a, m⊕e, e⊕a)`: the pure ancilla bit is moved into the memory
//! while the memory and energy bits are folded into the reservoir. Four
//! CNOTs realize it exactly.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{dagger, matmul, partial_trace, ComplexMatrix};
use crate::states::{reservoir, thermal_probs, BlochVector, ThermalSpec, COMPOSITE_DIMS};

/// Column → row map of the erasure unitary in the basis
/// `|g;g,l₀⟩, |g;g,l₁⟩, |g;e,l₀⟩, |g;e,l₁⟩, |e;g,l₀⟩, |e;g,l₁⟩, |e;e,l₀⟩, |e;e,l₁⟩`.
pub const ERASURE_PERMUTATION: [usize; 8] = [0, 5, 3, 6, 2, 7, 1, 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    Memory,
    Energy,
    Ancilla,
}

impl Subsystem {
    /// Bit weight in the composite basis index `4m + 2e + a`.
    pub fn mask(self) -> usize {
        match self {
            Subsystem::Memory => 0b100,
            Subsystem::Energy => 0b010,
            Subsystem::Ancilla => 0b001,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CnotGate {
    control: Subsystem,
    target: Subsystem,
}

impl CnotGate {
    pub fn new(control: Subsystem, target: Subsystem) -> Result<Self> {
        if control == target {
            return Err(Error::SameControlTarget);
        }
        Ok(CnotGate { control, target })
    }

    pub fn control(&self) -> Subsystem {
        self.control
    }

    pub fn target(&self) -> Subsystem {
        self.target
    }

    pub fn map_index(&self, index: usize) -> usize {
        if index & self.control.mask() != 0 {
            index ^ self.target.mask()
        } else {
            index
        }
    }

    pub fn permutation(&self) -> [usize; 8] {
        core::array::from_fn(|i| self.map_index(i))
    }
}

pub fn cnot_unitary(gate: &CnotGate) -> ComplexMatrix {
    ComplexMatrix::permutation(&gate.permutation()).expect("CNOT is a permutation")
}

/// The fixed erasure unitary, kept both as an exact {0,1} matrix and as its
/// column → row permutation.
#[derive(Debug, Clone, PartialEq)]
pub struct ErasureUnitary {
    permutation: [usize; 8],
    matrix: ComplexMatrix,
}

impl ErasureUnitary {
    pub fn canonical() -> Self {
        Self::from_permutation(ERASURE_PERMUTATION).expect("canonical map is a permutation")
    }

    /// Any 8-state permutation. Used to build deliberately wrong channels
    /// for negative controls.
    pub fn from_permutation(permutation: [usize; 8]) -> Result<Self> {
        let matrix = ComplexMatrix::permutation(&permutation)?;
        Ok(ErasureUnitary {
            permutation,
            matrix,
        })
    }

    pub fn permutation(&self) -> &[usize; 8] {
        &self.permutation
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn is_canonical(&self) -> bool {
        self.permutation == ERASURE_PERMUTATION
    }

    pub fn map_index(&self, index: usize) -> usize {
        self.permutation[index]
    }

    pub fn inverse_permutation(&self) -> [usize; 8] {
        let mut inv = [0; 8];
        for (col, &row) in self.permutation.iter().enumerate() {
            inv[row] = col;
        }
        inv
    }

    /// `U ρ U†`, evaluated by relabeling entries so no rounding occurs.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.dim() != 8 {
            return Err(Error::DimensionMismatch {
                expected: 8,
                found: rho.dim(),
            });
        }
        rho.check_density()?;
        let inv = self.inverse_permutation();
        ComplexMatrix::from_fn(8, |r, c| rho.get(inv[r], inv[c]))
    }
}

pub fn build_erasure_unitary() -> ErasureUnitary {
    ErasureUnitary::canonical()
}

/// `(m, e, a) ↦ (a, m⊕e, e⊕a)` on a composite basis index.
pub fn erasure_bit_map(index: usize) -> usize {
    let m = (index >> 2) & 1;
    let e = (index >> 1) & 1;
    let a = index & 1;
    (a << 2) | ((m ^ e) << 1) | (e ^ a)
}

/// The four CNOTs in time order: E→A, M→E, E→M, A→M.
pub fn build_circuit() -> Vec<CnotGate> {
    use Subsystem::*;
    [
        (Energy, Ancilla),
        (Memory, Energy),
        (Energy, Memory),
        (Ancilla, Memory),
    ]
    .into_iter()
    .map(|(c, t)| CnotGate::new(c, t).expect("distinct wires"))
    .collect()
}

/// Ordered product of the gate matrices, last gate leftmost.
pub fn circuit_unitary(gates: &[CnotGate]) -> ComplexMatrix {
    gates.iter().fold(ComplexMatrix::identity(8), |acc, g| {
        matmul(&cnot_unitary(g), &acc).expect("8x8 operands")
    })
}

pub fn circuit_permutation(gates: &[CnotGate]) -> [usize; 8] {
    core::array::from_fn(|i| gates.iter().fold(i, |idx, g| g.map_index(idx)))
}

/// `U ρ U†` with the canonical erasure unitary.
pub fn apply_channel(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    build_erasure_unitary().apply(rho)
}

/// `U ρ U†` by explicit dense products; a second route next to
/// [`ErasureUnitary::apply`].
pub fn apply_channel_dense(u: &ErasureUnitary, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    rho.check_density()?;
    matmul(&matmul(u.matrix(), rho)?, &dagger(u.matrix()))
}

/// Final reservoir state written out entry by entry: populations
/// `(1±r_z)p/2`, energy coherences `(r_x ∓ i r_y)p/2`, with the `p_g` terms
/// on the `l₀` block and the `p_e` terms on the `l₁` block.
pub fn reservoir_final_closed_form(b: &BlochVector, spec: &ThermalSpec) -> ComplexMatrix {
    use reservoir::*;
    let (pg, pe) = thermal_probs(spec);
    let (x, y, z) = (b.x(), b.y(), b.z());
    let coherence = Complex64::new(x, -y) * 0.5;
    let mut entries = vec![Complex64::new(0.0, 0.0); 16];
    let mut set = |r: usize, c: usize, v: Complex64| entries[r * 4 + c] = v;

    set(G_L0, G_L0, Complex64::new((1.0 + z) * pg / 2.0, 0.0));
    set(E_L1, E_L1, Complex64::new((1.0 + z) * pe / 2.0, 0.0));
    set(E_L0, E_L0, Complex64::new((1.0 - z) * pg / 2.0, 0.0));
    set(G_L1, G_L1, Complex64::new((1.0 - z) * pe / 2.0, 0.0));

    set(G_L0, E_L0, coherence * pg);
    set(E_L1, G_L1, coherence * pe);
    set(E_L0, G_L0, coherence.conj() * pg);
    set(G_L1, E_L1, coherence.conj() * pe);

    ComplexMatrix::new(4, entries).expect("finite inputs")
}

/// `|g⟩⟨g| ⊗ ρ_R^(f)`.
pub fn final_state_closed_form(b: &BlochVector, spec: &ThermalSpec) -> ComplexMatrix {
    crate::linalg::kron(
        &ComplexMatrix::projector(2, 0),
        &reservoir_final_closed_form(b, spec),
    )
}

pub fn memory_marginal(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    partial_trace(rho, &COMPOSITE_DIMS, &[0])
}

pub fn reservoir_marginal(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    partial_trace(rho, &COMPOSITE_DIMS, &[1, 2])
}

/// Fidelity `⟨g|ρ|g⟩` of a memory state with the erased state.
pub fn ground_fidelity(memory: &ComplexMatrix) -> f64 {
    memory.get(0, 0).re
}
