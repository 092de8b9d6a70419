//! Initial states: the Bloch-parametrized memory qubit, the reservoir's
//! Gibbs state and its angular-momentum preselection, and the composite
//! product state.
//!
//! Basis conventions used everywhere in the crate:
//!
//! * memory: `(|g⟩, |e⟩)` with `σ_z|g⟩ = +|g⟩`, so `r_z = +1` is the ground state;
//! * reservoir: `((g,l₀), (g,l₁), (e,l₀), (e,l₁))`, i.e. energy ⊗ ancilla;
//! * composite: memory ⊗ reservoir energy ⊗ ancilla, index `4m + 2e + a`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix};

/// Subsystem dimensions of the composite space, most significant first.
pub const COMPOSITE_DIMS: [usize; 3] = [2, 2, 2];

pub const BLOCH_TOL: f64 = 1e-12;

/// Natural units: energies in units of the gap, `k_B = 1`.
pub const NATURAL_BOLTZMANN: f64 = 1.0;
/// Exact SI value of the Boltzmann constant in J/K.
pub const SI_BOLTZMANN: f64 = 1.380649e-23;

pub mod reservoir {
    //! Indices of the four reservoir basis states.
    pub const G_L0: usize = 0;
    pub const G_L1: usize = 1;
    pub const E_L0: usize = 2;
    pub const E_L1: usize = 3;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    x: f64,
    y: f64,
    z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let b = BlochVector { x, y, z };
        let norm = b.norm();
        if !norm.is_finite() || norm > 1.0 + BLOCH_TOL {
            return Err(Error::UnphysicalBloch { norm });
        }
        Ok(b)
    }

    /// Polar angle `theta` from `+z`, azimuth `phi` from `+x`.
    pub fn from_spherical(r: f64, theta: f64, phi: f64) -> Result<Self> {
        let st = libm::sin(theta);
        Self::new(
            r * st * libm::cos(phi),
            r * st * libm::sin(phi),
            r * libm::cos(theta),
        )
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
    }

    /// Length `r`, clamped to 1 to absorb the admitted tolerance.
    pub fn radius(&self) -> f64 {
        self.norm().min(1.0)
    }
}

/// `(I + r·σ)/2` in the `(|g⟩, |e⟩)` basis.
pub fn qubit_from_bloch(b: &BlochVector) -> ComplexMatrix {
    let off = Complex64::new(b.x / 2.0, -b.y / 2.0);
    ComplexMatrix::new(
        2,
        alloc::vec![
            Complex64::new((1.0 + b.z) / 2.0, 0.0),
            off,
            off.conj(),
            Complex64::new((1.0 - b.z) / 2.0, 0.0),
        ],
    )
    .expect("finite Bloch components")
}

/// `r_μ = Tr(ρ σ_μ)`.
pub fn bloch_from_qubit(rho: &ComplexMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: rho.dim(),
        });
    }
    rho.check_density()?;
    let lower = rho.get(1, 0);
    BlochVector::new(
        2.0 * lower.re,
        2.0 * lower.im,
        (rho.get(0, 0) - rho.get(1, 1)).re,
    )
}

/// Thermal configuration of the reservoir's energy degree of freedom.
///
/// `beta` is the inverse temperature in inverse energy units; `f64::INFINITY`
/// stands for `T = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalSpec {
    beta: f64,
    delta: f64,
    k_b: f64,
}

impl ThermalSpec {
    /// Natural units (`k_B = 1`).
    pub fn from_beta(beta: f64, delta: f64) -> Result<Self> {
        Self::from_beta_with_boltzmann(beta, delta, NATURAL_BOLTZMANN)
    }

    pub fn from_beta_with_boltzmann(beta: f64, delta: f64, k_b: f64) -> Result<Self> {
        if beta.is_nan() || beta < 0.0 {
            return Err(Error::NegativeBeta { beta });
        }
        check_gap(delta)?;
        check_boltzmann(k_b)?;
        Ok(ThermalSpec { beta, delta, k_b })
    }

    /// `T = 0` maps to `beta = ∞`, `T = ∞` to `beta = 0`.
    pub fn from_temperature(temperature: f64, delta: f64, k_b: f64) -> Result<Self> {
        if temperature.is_nan() || temperature < 0.0 {
            return Err(Error::NegativeTemperature { temperature });
        }
        check_boltzmann(k_b)?;
        let beta = if temperature == 0.0 {
            f64::INFINITY
        } else {
            1.0 / (k_b * temperature)
        };
        Self::from_beta_with_boltzmann(beta, delta, k_b)
    }

    pub fn zero_temperature(delta: f64) -> Result<Self> {
        Self::from_beta(f64::INFINITY, delta)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn boltzmann(&self) -> f64 {
        self.k_b
    }

    pub fn temperature(&self) -> f64 {
        if self.beta == 0.0 {
            f64::INFINITY
        } else {
            1.0 / (self.k_b * self.beta)
        }
    }

    pub fn probs(&self) -> (f64, f64) {
        thermal_probs(self)
    }
}

fn check_gap(delta: f64) -> Result<()> {
    if !delta.is_finite() || delta <= 0.0 {
        return Err(Error::InvalidGap { delta });
    }
    Ok(())
}

fn check_boltzmann(k_b: f64) -> Result<()> {
    if !k_b.is_finite() || k_b <= 0.0 {
        return Err(Error::InvalidBoltzmann { k_b });
    }
    Ok(())
}

/// Free-Hamiltonian parameters: memory ground energy `E`, reservoir ground
/// energy `ε` and the shared gap `Δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevels {
    pub memory_ground: f64,
    pub reservoir_ground: f64,
    pub gap: f64,
}

impl EnergyLevels {
    pub fn new(memory_ground: f64, reservoir_ground: f64, gap: f64) -> Result<Self> {
        check_gap(gap)?;
        Self::checked(memory_ground, reservoir_ground, gap)
    }

    /// Zero offsets.
    pub fn with_gap(gap: f64) -> Result<Self> {
        Self::new(0.0, 0.0, gap)
    }

    /// Levels with `Δ = 0`. Only meaningful for consistency checks: every
    /// operator commutes with a Hamiltonian proportional to the identity.
    pub fn degenerate(memory_ground: f64, reservoir_ground: f64) -> Result<Self> {
        Self::checked(memory_ground, reservoir_ground, 0.0)
    }

    fn checked(memory_ground: f64, reservoir_ground: f64, gap: f64) -> Result<Self> {
        if !memory_ground.is_finite() || !reservoir_ground.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(EnergyLevels {
            memory_ground,
            reservoir_ground,
            gap,
        })
    }
}

/// Boltzmann occupations `(p_g, p_e)` with `p_e = e^{-βΔ} p_g`, `p_g + p_e = 1`.
pub fn thermal_probs(spec: &ThermalSpec) -> (f64, f64) {
    let w = libm::exp(-spec.beta * spec.delta);
    (1.0 / (1.0 + w), w / (1.0 + w))
}

/// `diag(p_g/2, p_g/2, p_e/2, p_e/2)`: each energy level is twofold
/// degenerate in the angular momentum.
pub fn gibbs_four_level(spec: &ThermalSpec) -> ComplexMatrix {
    let (pg, pe) = thermal_probs(spec);
    ComplexMatrix::diag(&[pg / 2.0, pg / 2.0, pe / 2.0, pe / 2.0])
}

/// Projects a reservoir state onto the `l₀` subspace and renormalizes.
pub fn preselect_l0(gamma: &ComplexMatrix) -> Result<ComplexMatrix> {
    if gamma.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: gamma.dim(),
        });
    }
    gamma.check_density()?;
    let l0 = [reservoir::G_L0, reservoir::E_L0];
    let weight: f64 = l0.iter().map(|&i| gamma.get(i, i).re).sum();
    if weight <= f64::EPSILON {
        return Err(Error::PreselectionImpossible);
    }
    ComplexMatrix::from_fn(4, |r, c| {
        if l0.contains(&r) && l0.contains(&c) {
            gamma.get(r, c) / weight
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `p_g|g,l₀⟩⟨g,l₀| + p_e|e,l₀⟩⟨e,l₀|`.
pub fn preselected_reservoir(spec: &ThermalSpec) -> ComplexMatrix {
    preselect_l0(&gibbs_four_level(spec)).expect("Gibbs state always has l0 weight")
}

/// `ρ_M ⊗ ρ_R` in the (memory, energy, ancilla) ordering.
pub fn composite_initial(b: &BlochVector, spec: &ThermalSpec) -> ComplexMatrix {
    kron(&qubit_from_bloch(b), &preselected_reservoir(spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::partial_trace;

    const LN2: f64 = core::f64::consts::LN_2;

    fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
        a.max_abs_diff(b).unwrap() < tol
    }

    #[test]
    fn bloch_poles_and_center() {
        let g = qubit_from_bloch(&BlochVector::new(0.0, 0.0, 1.0).unwrap());
        assert_eq!(g, ComplexMatrix::projector(2, 0));
        let mixed = qubit_from_bloch(&BlochVector::new(0.0, 0.0, 0.0).unwrap());
        assert_eq!(mixed, ComplexMatrix::diag(&[0.5, 0.5]));
        let plus = qubit_from_bloch(&BlochVector::new(1.0, 0.0, 0.0).unwrap());
        assert_eq!(
            plus,
            ComplexMatrix::from_real(2, &[0.5, 0.5, 0.5, 0.5]).unwrap()
        );
    }

    #[test]
    fn unphysical_bloch_rejected() {
        assert!(matches!(
            BlochVector::new(0.8, 0.8, 0.0),
            Err(Error::UnphysicalBloch { .. })
        ));
        assert!(BlochVector::new(1.0 + 1e-13, 0.0, 0.0).is_ok());
        assert!(BlochVector::new(f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn bloch_from_qubit_examples() {
        let b = bloch_from_qubit(&ComplexMatrix::diag(&[0.5, 0.5])).unwrap();
        assert_eq!((b.x(), b.y(), b.z()), (0.0, 0.0, 0.0));
        let b = bloch_from_qubit(&ComplexMatrix::projector(2, 0)).unwrap();
        assert_eq!((b.x(), b.y(), b.z()), (0.0, 0.0, 1.0));
        // [[1/2, (1-i)/4], [(1+i)/4, 1/2]] → (1/2, 1/2, 0)
        let rho = ComplexMatrix::new(
            2,
            alloc::vec![
                Complex64::new(0.5, 0.0),
                Complex64::new(0.25, -0.25),
                Complex64::new(0.25, 0.25),
                Complex64::new(0.5, 0.0),
            ],
        )
        .unwrap();
        let b = bloch_from_qubit(&rho).unwrap();
        assert!((b.x() - 0.5).abs() < 1e-15);
        assert!((b.y() - 0.5).abs() < 1e-15);
        assert!(b.z().abs() < 1e-15);
    }

    #[test]
    fn bloch_from_qubit_rejects_invalid() {
        assert!(bloch_from_qubit(&ComplexMatrix::diag(&[0.5, 0.6])).is_err());
        assert!(bloch_from_qubit(&ComplexMatrix::identity(4).scale(0.25)).is_err());
    }

    #[test]
    fn thermal_probs_examples() {
        assert_eq!(
            thermal_probs(&ThermalSpec::from_beta(0.0, 1.0).unwrap()),
            (0.5, 0.5)
        );
        let (pg, pe) = thermal_probs(&ThermalSpec::from_beta(LN2, 1.0).unwrap());
        assert!((pg - 2.0 / 3.0).abs() < 1e-15 && (pe - 1.0 / 3.0).abs() < 1e-15);
        // beta·delta = ln 2 with a non-unit gap
        let (pg, _) = thermal_probs(&ThermalSpec::from_beta(LN2 / 4.0, 4.0).unwrap());
        assert!((pg - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(
            thermal_probs(&ThermalSpec::zero_temperature(1.0).unwrap()),
            (1.0, 0.0)
        );
    }

    #[test]
    fn thermal_spec_validation() {
        assert!(matches!(
            ThermalSpec::from_beta(-1.0, 1.0),
            Err(Error::NegativeBeta { .. })
        ));
        assert!(matches!(
            ThermalSpec::from_beta(1.0, 0.0),
            Err(Error::InvalidGap { .. })
        ));
        assert!(matches!(
            ThermalSpec::from_temperature(-3.0, 1.0, 1.0),
            Err(Error::NegativeTemperature { .. })
        ));
        let t0 = ThermalSpec::from_temperature(0.0, 1.0, 1.0).unwrap();
        assert_eq!(t0.beta(), f64::INFINITY);
        assert_eq!(t0.temperature(), 0.0);
        assert_eq!(
            ThermalSpec::from_beta(0.0, 1.0).unwrap().temperature(),
            f64::INFINITY
        );
        let si = ThermalSpec::from_temperature(300.0, 1.986e-22, SI_BOLTZMANN).unwrap();
        assert!((si.temperature() - 300.0).abs() < 1e-9);
    }

    #[test]
    fn gibbs_examples() {
        assert_eq!(
            gibbs_four_level(&ThermalSpec::from_beta(0.0, 1.0).unwrap()),
            ComplexMatrix::identity(4).scale(0.25)
        );
        assert_eq!(
            gibbs_four_level(&ThermalSpec::zero_temperature(1.0).unwrap()),
            ComplexMatrix::diag(&[0.5, 0.5, 0.0, 0.0])
        );
        let g = gibbs_four_level(&ThermalSpec::from_beta(LN2, 1.0).unwrap());
        assert!(close(
            &g,
            &ComplexMatrix::diag(&[1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0]),
            1e-15
        ));
    }

    #[test]
    fn preselection_examples() {
        let p = preselect_l0(&gibbs_four_level(
            &ThermalSpec::from_beta(0.0, 1.0).unwrap(),
        ))
        .unwrap();
        assert_eq!(p, ComplexMatrix::diag(&[0.5, 0.0, 0.5, 0.0]));
        let p = preselect_l0(&gibbs_four_level(
            &ThermalSpec::from_beta(LN2, 1.0).unwrap(),
        ))
        .unwrap();
        assert!(close(
            &p,
            &ComplexMatrix::diag(&[2.0 / 3.0, 0.0, 1.0 / 3.0, 0.0]),
            1e-15
        ));
        assert!(close(&preselect_l0(&p).unwrap(), &p, 1e-15));
    }

    #[test]
    fn preselection_impossible_without_l0_weight() {
        let only_l1 = ComplexMatrix::diag(&[0.0, 0.5, 0.0, 0.5]);
        assert_eq!(
            preselect_l0(&only_l1).unwrap_err(),
            Error::PreselectionImpossible
        );
    }

    #[test]
    fn composite_examples() {
        let ground = composite_initial(
            &BlochVector::new(0.0, 0.0, 1.0).unwrap(),
            &ThermalSpec::zero_temperature(1.0).unwrap(),
        );
        assert_eq!(ground, ComplexMatrix::projector(8, 0));

        let mixed = composite_initial(
            &BlochVector::new(0.0, 0.0, 0.0).unwrap(),
            &ThermalSpec::from_beta(0.0, 1.0).unwrap(),
        );
        assert_eq!(
            mixed,
            ComplexMatrix::diag(&[0.25, 0.0, 0.25, 0.0, 0.25, 0.0, 0.25, 0.0])
        );
    }

    #[test]
    fn composite_marginals_and_purity() {
        let b = BlochVector::new(0.3, -0.2, 0.5).unwrap();
        let spec = ThermalSpec::from_beta(0.7, 1.0).unwrap();
        let rho = composite_initial(&b, &spec);
        rho.check_density().unwrap();
        let mem = partial_trace(&rho, &COMPOSITE_DIMS, &[0]).unwrap();
        assert!(close(&mem, &qubit_from_bloch(&b), 1e-12));
        let res = partial_trace(&rho, &COMPOSITE_DIMS, &[1, 2]).unwrap();
        assert!(close(&res, &preselected_reservoir(&spec), 1e-12));
        let expected = qubit_from_bloch(&b).purity() * preselected_reservoir(&spec).purity();
        assert!((rho.purity() - expected).abs() < 1e-14);
    }

    #[test]
    fn degenerate_levels_only_via_dedicated_constructor() {
        assert!(EnergyLevels::new(0.0, 0.0, 0.0).is_err());
        assert_eq!(EnergyLevels::degenerate(1.0, 2.0).unwrap().gap, 0.0);
    }
}
