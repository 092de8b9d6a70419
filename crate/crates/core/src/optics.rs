//! Linear-optical version of the erasure channel.
//!
//! The memory is a photon's polarization (`H ↔ g`, `V ↔ e`) and the
//! reservoir is which of four paths it travels:
//!
//! | path | reservoir |
//! |------|-----------|
//! | 1    | (g, l₀)   |
//! | 2    | (e, l₀)   |
//! | 3    | (g, l₁)   |
//! | 4    | (e, l₁)   |
//!
//! Mode index is `4·pol + (path - 1)` with `H = 0`, `V = 1`. Beam splitters
//! and wave plates carry no phases, so every element and every circuit is
//! an exact permutation of the eight modes.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::channel::ErasureUnitary;
use crate::error::{Error, Result};
use crate::linalg::{conjugate, kron, matmul, partial_trace, ComplexMatrix};
use crate::states::{qubit_from_bloch, thermal_probs, BlochVector, ThermalSpec};

pub const MODE_DIMS: [usize; 2] = [2, 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    H,
    V,
}

impl Polarization {
    fn bit(self) -> usize {
        match self {
            Polarization::H => 0,
            Polarization::V => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(u8);

impl Path {
    pub fn new(path: u8) -> Result<Self> {
        if !(1..=4).contains(&path) {
            return Err(Error::InvalidPath { path });
        }
        Ok(Path(path))
    }

    pub fn number(self) -> u8 {
        self.0
    }

    fn offset(self) -> usize {
        usize::from(self.0 - 1)
    }
}

pub fn mode_index(pol: Polarization, path: Path) -> usize {
    4 * pol.bit() + path.offset()
}

pub fn mode_of_index(index: usize) -> (Polarization, Path) {
    let pol = if index & 0b100 == 0 {
        Polarization::H
    } else {
        Polarization::V
    };
    (pol, Path((index & 0b11) as u8 + 1))
}

/// Ket label such as `|V,3⟩`.
pub fn mode_label(index: usize) -> String {
    let (pol, path) = mode_of_index(index);
    alloc::format!("|{:?},{}⟩", pol, path.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpticalElement {
    /// Transmits H in place; V on path `a` leaves on `b` and vice versa.
    Pbs(Path, Path),
    /// Swaps H and V on one path.
    Hwp(Path),
}

impl OpticalElement {
    pub fn pbs(a: u8, b: u8) -> Result<Self> {
        let (a, b) = (Path::new(a)?, Path::new(b)?);
        if a == b {
            return Err(Error::SamePaths);
        }
        Ok(OpticalElement::Pbs(a, b))
    }

    pub fn hwp(a: u8) -> Result<Self> {
        Ok(OpticalElement::Hwp(Path::new(a)?))
    }

    pub fn map_index(&self, index: usize) -> usize {
        let (pol, path) = mode_of_index(index);
        match (*self, pol) {
            (OpticalElement::Pbs(a, b), Polarization::V) if path == a => mode_index(pol, b),
            (OpticalElement::Pbs(a, b), Polarization::V) if path == b => mode_index(pol, a),
            (OpticalElement::Hwp(a), Polarization::H) if path == a => {
                mode_index(Polarization::V, a)
            }
            (OpticalElement::Hwp(a), Polarization::V) if path == a => {
                mode_index(Polarization::H, a)
            }
            _ => index,
        }
    }

    pub fn permutation(&self) -> [usize; 8] {
        core::array::from_fn(|i| self.map_index(i))
    }

    pub fn unitary(&self) -> ComplexMatrix {
        ComplexMatrix::permutation(&self.permutation()).expect("optical elements permute modes")
    }
}

impl fmt::Display for OpticalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpticalElement::Pbs(a, b) => write!(f, "PBS({},{})", a.0, b.0),
            OpticalElement::Hwp(a) => write!(f, "HWP({})", a.0),
        }
    }
}

pub fn pbs_unitary(a: u8, b: u8) -> Result<ComplexMatrix> {
    Ok(OpticalElement::pbs(a, b)?.unitary())
}

pub fn hwp_unitary(a: u8) -> Result<ComplexMatrix> {
    Ok(OpticalElement::hwp(a)?.unitary())
}

/// Three PBSs and three HWPs in propagation order.
pub fn default_erasure_circuit() -> Vec<OpticalElement> {
    use OpticalElement::*;
    let p = |n| Path::new(n).expect("valid path");
    alloc::vec![
        Pbs(p(1), p(2)),
        Hwp(p(2)),
        Pbs(p(2), p(4)),
        Hwp(p(4)),
        Pbs(p(1), p(3)),
        Hwp(p(3)),
    ]
}

/// Product of the element unitaries, first element applied first.
pub fn compose(elements: &[OpticalElement]) -> Result<ComplexMatrix> {
    if elements.is_empty() {
        return Err(Error::EmptyCircuit);
    }
    elements
        .iter()
        .try_fold(ComplexMatrix::identity(8), |acc, e| {
            matmul(&e.unitary(), &acc)
        })
}

pub fn compose_permutation(elements: &[OpticalElement]) -> [usize; 8] {
    core::array::from_fn(|i| elements.iter().fold(i, |idx, e| e.map_index(idx)))
}

/// Input path weights, `p₂ = e^{-βΔ} p₁` when thermal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathDistribution {
    p1: f64,
    p2: f64,
}

impl PathDistribution {
    pub fn new(p1: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p1) {
            return Err(Error::InvalidDistribution { p1 });
        }
        Ok(PathDistribution { p1, p2: 1.0 - p1 })
    }

    pub fn thermal(spec: &ThermalSpec) -> Self {
        let (pg, pe) = thermal_probs(spec);
        PathDistribution { p1: pg, p2: pe }
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    /// `p₁|1⟩⟨1| + p₂|2⟩⟨2|`.
    pub fn path_state(&self) -> ComplexMatrix {
        ComplexMatrix::diag(&[self.p1, self.p2, 0.0, 0.0])
    }
}

/// Sends `ρ_pol ⊗ ρ_path` through the default circuit.
pub fn simulate(pol: &BlochVector, dist: &PathDistribution) -> ComplexMatrix {
    let input = kron(&qubit_from_bloch(pol), &dist.path_state());
    let circuit = compose(&default_erasure_circuit()).expect("non-empty circuit");
    conjugate(&circuit, &input).expect("8x8 operands")
}

pub fn polarization_marginal(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    partial_trace(rho, &MODE_DIMS, &[0])
}

pub fn path_marginal(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    partial_trace(rho, &MODE_DIMS, &[1])
}

/// Output path state written out entry by entry.
pub fn path_final_closed_form(pol: &BlochVector, dist: &PathDistribution) -> ComplexMatrix {
    let (p1, p2) = (dist.p1, dist.p2);
    let (x, y, z) = (pol.x(), pol.y(), pol.z());
    let coherence = Complex64::new(x, -y) * 0.5;
    let mut entries = alloc::vec![Complex64::new(0.0, 0.0); 16];
    let mut set = |r: usize, c: usize, v: Complex64| entries[(r - 1) * 4 + (c - 1)] = v;

    set(1, 1, Complex64::new((1.0 + z) * p1 / 2.0, 0.0));
    set(4, 4, Complex64::new((1.0 + z) * p2 / 2.0, 0.0));
    set(2, 2, Complex64::new((1.0 - z) * p1 / 2.0, 0.0));
    set(3, 3, Complex64::new((1.0 - z) * p2 / 2.0, 0.0));
    set(1, 2, coherence * p1);
    set(4, 3, coherence * p2);
    set(2, 1, coherence.conj() * p1);
    set(3, 4, coherence.conj() * p2);

    ComplexMatrix::new(4, entries).expect("finite inputs")
}

/// Reservoir basis index carried by a path offset: the energy and ancilla
/// bits trade places.
pub fn reservoir_index_of_path(offset: usize) -> usize {
    ((offset & 1) << 1) | (offset >> 1)
}

/// Rewrites a 4×4 path-space matrix in the reservoir basis.
pub fn path_to_reservoir(path: &ComplexMatrix) -> Result<ComplexMatrix> {
    if path.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: path.dim(),
        });
    }
    let back: [usize; 4] = core::array::from_fn(reservoir_index_of_path);
    ComplexMatrix::from_fn(4, |r, c| {
        let pr = back.iter().position(|&x| x == r).unwrap();
        let pc = back.iter().position(|&x| x == c).unwrap();
        path.get(pr, pc)
    })
}

/// Composite basis index `4m + 2e + a` → optical mode `(pol = m, path = 1 + e + 2a)`.
pub fn optical_index_of_composite(index: usize) -> usize {
    let m = (index >> 2) & 1;
    let e = (index >> 1) & 1;
    let a = index & 1;
    4 * m + e + 2 * a
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingMismatch {
    /// Composite basis index of the input.
    pub input: usize,
    /// Channel output, mapped to its optical mode.
    pub expected_mode: usize,
    pub optical_mode: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingCheck {
    pub equivalent: bool,
    pub mismatches: Vec<EncodingMismatch>,
}

/// Compares a channel with an optical circuit on the physical inputs
/// (ancilla in `l₀`, i.e. paths 1 and 2).
pub fn check_encoding(unitary: &ErasureUnitary, elements: &[OpticalElement]) -> EncodingCheck {
    let optical = compose_permutation(elements);
    let mismatches: Vec<EncodingMismatch> = (0..8)
        .filter(|i| i & 1 == 0)
        .filter_map(|input| {
            let expected_mode = optical_index_of_composite(unitary.map_index(input));
            let optical_mode = optical[optical_index_of_composite(input)];
            (expected_mode != optical_mode).then_some(EncodingMismatch {
                input,
                expected_mode,
                optical_mode,
            })
        })
        .collect();
    EncodingCheck {
        equivalent: mismatches.is_empty(),
        mismatches,
    }
}

pub fn verify_encoding_equivalence() -> EncodingCheck {
    check_encoding(&ErasureUnitary::canonical(), &default_erasure_circuit())
}

/// Basis change `V_iso` taking composite states to optical modes.
pub fn encoding_isometry() -> ComplexMatrix {
    let perm: [usize; 8] = core::array::from_fn(optical_index_of_composite);
    ComplexMatrix::permutation(&perm).expect("relabeling is a permutation")
}
