//! Entropy, heat and the Landauer test for the erasure channel.
//!
//! Every reported quantity has a closed form in the Bloch components and the
//! Boltzmann weights, and a second route through the propagated density
//! matrices (spectral entropy, traces against the free Hamiltonians).
//! [`analyze`] evaluates both and records how far apart they are.

use core::f64::consts::LN_2;

use crate::channel::{apply_channel, memory_marginal, reservoir_marginal, ErasureUnitary};
use crate::error::{Error, Result};
use crate::linalg::{
    commutator, frobenius_norm, hermitian_eigenvalues, kron, matmul, ComplexMatrix,
};
use crate::states::{
    composite_initial, preselected_reservoir, qubit_from_bloch, thermal_probs, BlochVector,
    EnergyLevels, ThermalSpec,
};

/// Agreement required between the closed-form and trace/spectral routes.
pub const ROUTE_TOL: f64 = 1e-10;

/// Free Hamiltonians of memory, reservoir and the non-interacting composite.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSet {
    pub memory: ComplexMatrix,
    pub reservoir: ComplexMatrix,
    pub total: ComplexMatrix,
    pub levels: EnergyLevels,
}

impl HamiltonianSet {
    pub fn new(levels: EnergyLevels) -> Self {
        let (e, eps, gap) = (levels.memory_ground, levels.reservoir_ground, levels.gap);
        let memory = ComplexMatrix::diag(&[e, e + gap]);
        let reservoir = ComplexMatrix::diag(&[eps, eps, eps + gap, eps + gap]);
        let total = &kron(&memory, &ComplexMatrix::identity(4))
            + &kron(&ComplexMatrix::identity(2), &reservoir);
        HamiltonianSet {
            memory,
            reservoir,
            total,
            levels,
        }
    }
}

/// `S(ρ) = -Tr ρ ln ρ` in nats.
///
/// Eigenvalues in `[-1e-10, 0]` are treated as exact zeros.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    rho.check_density()?;
    let spectrum = hermitian_eigenvalues(rho)?;
    Ok(spectrum
        .eigenvalues
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * libm::log(l))
        .sum())
}

/// Entropy of the initial memory state from the Bloch length alone:
/// `ln2 - r ln(1+r) - (1-r) ln(1-r²)/2`, which is 0 at `r = 1`.
pub fn entropy_decrease(b: &BlochVector) -> f64 {
    let r = b.radius();
    if r >= 1.0 {
        return 0.0;
    }
    let value = LN_2 - r * libm::log1p(r) - 0.5 * (1.0 - r) * libm::log1p(-r * r);
    value.max(0.0)
}

/// Same quantity through the spectrum of `(I + r·σ)/2`.
pub fn entropy_decrease_spectral(b: &BlochVector) -> Result<f64> {
    von_neumann_entropy(&qubit_from_bloch(b))
}

/// `Q_M = -(Δ/2)(1 - r_z)`; no temperature dependence.
pub fn heat_memory(b: &BlochVector, levels: &EnergyLevels) -> f64 {
    -(levels.gap / 2.0) * (1.0 - b.z())
}

/// `Q_R = (Δ/2)(1 - r_z)(p_g - p_e)`.
pub fn heat_reservoir(b: &BlochVector, spec: &ThermalSpec, levels: &EnergyLevels) -> f64 {
    let (pg, pe) = thermal_probs(spec);
    (levels.gap / 2.0) * (1.0 - b.z()) * (pg - pe)
}

/// `Tr[(ρ_f - ρ_i) H]`.
pub fn heat_from_states(
    initial: &ComplexMatrix,
    fin: &ComplexMatrix,
    hamiltonian: &ComplexMatrix,
) -> Result<f64> {
    Ok(matmul(&(fin - initial), hamiltonian)?.trace().re)
}

/// `Tr[ρ H]` for a composite state.
pub fn internal_energy(rho: &ComplexMatrix, h: &HamiltonianSet) -> Result<f64> {
    rho.check_density()?;
    Ok(matmul(rho, &h.total)?.trace().re)
}

/// Energy carried off by the photon pair of the `|e;e,l₀⟩ → |g;g,l₁⟩`
/// branch: `-(Q_M + Q_R) = Δ(1 - r_z)p_e`.
pub fn photon_energy(b: &BlochVector, spec: &ThermalSpec, levels: &EnergyLevels) -> f64 {
    let (_, pe) = thermal_probs(spec);
    levels.gap * (1.0 - b.z()) * pe
}

/// Frobenius norm of `[U, H]`.
pub fn commutator_norm(u: &ErasureUnitary, h: &HamiltonianSet) -> f64 {
    frobenius_norm(&commutator(u.matrix(), &h.total).expect("8x8 operands"))
}

/// Temperature above which the memory-side Landauer bound fails.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitTemperature {
    Finite(f64),
    /// Pure input with `Q_M < 0`: no entropy is erased, so no finite
    /// temperature makes the heat fall short of the bound.
    Infinite,
    /// Pure ground-state input: `Q_M = 0` and `ΔS = 0`.
    Undefined,
}

impl LimitTemperature {
    pub fn finite(&self) -> Option<f64> {
        match self {
            LimitTemperature::Finite(t) => Some(*t),
            _ => None,
        }
    }
}

/// `T_l = Δ(1 - r_z) / (k_B [ln4 - r ln(1+r)² - (1-r) ln(1-r²)])`.
pub fn limit_temperature(
    b: &BlochVector,
    levels: &EnergyLevels,
    k_b: f64,
) -> Result<LimitTemperature> {
    if !k_b.is_finite() || k_b <= 0.0 {
        return Err(Error::InvalidBoltzmann { k_b });
    }
    if entropy_decrease(b) > 0.0 {
        let r = b.radius();
        let denominator = 2.0 * LN_2 - 2.0 * r * libm::log1p(r) - (1.0 - r) * libm::log1p(-r * r);
        return Ok(LimitTemperature::Finite(
            levels.gap * (1.0 - b.z()) / (k_b * denominator),
        ));
    }
    if heat_memory(b, levels) < 0.0 {
        Ok(LimitTemperature::Infinite)
    } else {
        Ok(LimitTemperature::Undefined)
    }
}

/// `-Q_M / (k_B ΔS)`, or `None` when `ΔS = 0`.
pub fn limit_temperature_ratio(b: &BlochVector, levels: &EnergyLevels, k_b: f64) -> Option<f64> {
    let ds = entropy_decrease(b);
    (ds > 0.0).then(|| -heat_memory(b, levels) / (k_b * ds))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandauerVerdict {
    /// `Q_M > -k_B T ΔS`.
    pub violated: bool,
    /// `Q_M + k_B T ΔS`; positive means violation. Infinite when `T = ∞`
    /// and `ΔS > 0`.
    pub margin: f64,
}

/// Memory-side Landauer test `Q_M ≤ -k_B T ΔS`, evaluated directly.
pub fn landauer_check(
    q_m: f64,
    temperature: f64,
    delta_s: f64,
    k_b: f64,
) -> Result<LandauerVerdict> {
    if temperature.is_nan() || temperature < 0.0 {
        return Err(Error::NegativeTemperature { temperature });
    }
    if delta_s.is_nan() || delta_s < 0.0 {
        return Err(Error::NegativeEntropy { delta_s });
    }
    let bound = if delta_s == 0.0 {
        0.0
    } else {
        k_b * temperature * delta_s
    };
    let margin = q_m + bound;
    Ok(LandauerVerdict {
        violated: margin > 0.0,
        margin,
    })
}

/// All thermodynamic outputs of one erasure run.
#[derive(Debug, Clone, PartialEq)]
pub struct ErasureReport {
    pub bloch: BlochVector,
    pub thermal: ThermalSpec,
    pub levels: EnergyLevels,
    pub p_g: f64,
    pub p_e: f64,
    /// Entropy removed from the memory, nats.
    pub delta_s: f64,
    pub q_m: f64,
    pub q_r: f64,
    /// Heat released to the environment, `-Q_M`. Always `≥ Q_R`: the
    /// reservoir does not absorb the photon-pair energy.
    pub q_e: f64,
    pub photon_energy: f64,
    pub u_initial: f64,
    pub u_final: f64,
    pub t_limit: LimitTemperature,
    pub temperature: f64,
    pub landauer: LandauerVerdict,
    /// Largest disagreement between the closed-form and density-matrix
    /// routes, with energies in units of `Δ` and temperatures in `Δ/k_B`.
    pub route_deviation: f64,
}

pub fn analyze(
    b: &BlochVector,
    spec: &ThermalSpec,
    levels: &EnergyLevels,
) -> Result<ErasureReport> {
    let gap = levels.gap;
    if (spec.delta() - gap).abs() > 1e-12 * gap.max(spec.delta()) {
        return Err(Error::GapMismatch {
            thermal: spec.delta(),
            levels: gap,
        });
    }
    let k_b = spec.boltzmann();
    let hams = HamiltonianSet::new(*levels);
    let (p_g, p_e) = thermal_probs(spec);

    let initial = composite_initial(b, spec);
    let fin = apply_channel(&initial)?;
    let mem_i = memory_marginal(&initial)?;
    let mem_f = memory_marginal(&fin)?;
    let res_i = preselected_reservoir(spec);
    let res_f = reservoir_marginal(&fin)?;

    let delta_s = entropy_decrease(b);
    let delta_s_spectral = von_neumann_entropy(&mem_i)? - von_neumann_entropy(&mem_f)?;

    let q_m = heat_memory(b, levels);
    let q_r = heat_reservoir(b, spec, levels);
    let q_m_trace = heat_from_states(&mem_i, &mem_f, &hams.memory)?;
    let q_r_trace = heat_from_states(&res_i, &res_f, &hams.reservoir)?;

    let u_initial = internal_energy(&initial, &hams)?;
    let u_final = internal_energy(&fin, &hams)?;
    let photon = photon_energy(b, spec, levels);

    let t_limit = limit_temperature(b, levels, k_b)?;
    let t_unit = gap / k_b;
    let mut deviations = [
        (delta_s - delta_s_spectral).abs(),
        (q_m - q_m_trace).abs() / gap,
        (q_r - q_r_trace).abs() / gap,
        (photon - (u_initial - u_final)).abs() / gap,
        (photon + q_m + q_r).abs() / gap,
        0.0,
    ];
    if let (Some(t), Some(ratio)) = (t_limit.finite(), limit_temperature_ratio(b, levels, k_b)) {
        deviations[5] = (t - ratio).abs() / t_unit;
    }

    let temperature = spec.temperature();
    let landauer = landauer_check(q_m, temperature, delta_s, k_b)?;

    Ok(ErasureReport {
        bloch: *b,
        thermal: *spec,
        levels: *levels,
        p_g,
        p_e,
        delta_s,
        q_m,
        q_r,
        q_e: -q_m,
        photon_energy: photon,
        u_initial,
        u_final,
        t_limit,
        temperature,
        landauer,
        route_deviation: deviations.iter().copied().fold(0.0, f64::max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::build_erasure_unitary;

    fn bloch(x: f64, y: f64, z: f64) -> BlochVector {
        BlochVector::new(x, y, z).unwrap()
    }

    fn unit() -> EnergyLevels {
        EnergyLevels::with_gap(1.0).unwrap()
    }

    /// Binary entropy in nats, written independently of the library.
    fn binary_entropy(p: f64) -> f64 {
        let term = |q: f64| if q > 0.0 { -q * q.ln() } else { 0.0 };
        term(p) + term(1.0 - p)
    }

    #[test]
    fn entropy_examples() {
        assert!(
            von_neumann_entropy(&ComplexMatrix::projector(2, 0))
                .unwrap()
                .abs()
                < 1e-15
        );
        let s = von_neumann_entropy(&ComplexMatrix::diag(&[0.5, 0.5])).unwrap();
        assert!((s - LN_2).abs() < 1e-14);
        let s = von_neumann_entropy(&ComplexMatrix::identity(8).scale(0.125)).unwrap();
        assert!((s - 8f64.ln()).abs() < 1e-14);
        assert!(von_neumann_entropy(&ComplexMatrix::diag(&[0.5, 0.6])).is_err());
    }

    #[test]
    fn entropy_decrease_examples() {
        assert!((entropy_decrease(&bloch(0.0, 0.0, 0.0)) - LN_2).abs() < 1e-15);
        assert_eq!(entropy_decrease(&bloch(0.0, 0.0, 1.0)), 0.0);
        let expected = binary_entropy(0.75);
        assert!((expected - 0.562335).abs() < 1e-6);
        assert!((entropy_decrease(&bloch(0.0, 0.0, 0.5)) - expected).abs() < 1e-14);
        assert!((entropy_decrease(&bloch(0.3, 0.4, 0.0)) - expected).abs() < 1e-14);
    }

    #[test]
    fn heat_memory_examples() {
        assert_eq!(heat_memory(&bloch(0.0, 0.0, 1.0), &unit()), 0.0);
        assert_eq!(heat_memory(&bloch(0.0, 0.0, 0.0), &unit()), -0.5);
        assert_eq!(heat_memory(&bloch(0.0, 0.0, -1.0), &unit()), -1.0);
    }

    #[test]
    fn heat_reservoir_examples() {
        let b = bloch(0.0, 0.0, 0.0);
        let t0 = ThermalSpec::zero_temperature(1.0).unwrap();
        assert_eq!(heat_reservoir(&b, &t0, &unit()), -heat_memory(&b, &unit()));
        let hot = ThermalSpec::from_beta(0.0, 1.0).unwrap();
        assert_eq!(heat_reservoir(&b, &hot, &unit()), 0.0);
        let s = ThermalSpec::from_beta(LN_2, 1.0).unwrap();
        assert!((heat_reservoir(&b, &s, &unit()) - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn internal_energy_examples() {
        let levels = EnergyLevels::new(5.0, 3.0, 1.0).unwrap();
        let h = HamiltonianSet::new(levels);
        let u = internal_energy(&ComplexMatrix::projector(8, 0), &h).unwrap();
        assert!((u - 8.0).abs() < 1e-14);
        let u = internal_energy(&ComplexMatrix::projector(8, 6), &h).unwrap();
        assert!((u - 10.0).abs() < 1e-14);
    }

    #[test]
    fn energy_deficit_is_photon_energy() {
        let b = bloch(0.2, -0.1, -0.6);
        let s = ThermalSpec::from_beta(0.8, 1.0).unwrap();
        let h = HamiltonianSet::new(unit());
        let initial = composite_initial(&b, &s);
        let deficit = internal_energy(&initial, &h).unwrap()
            - internal_energy(&apply_channel(&initial).unwrap(), &h).unwrap();
        let (_, pe) = thermal_probs(&s);
        // the |e;e,l0⟩ → |g;g,l1⟩ branch fires with probability p_e(1 - r_z)/2 and sheds 2Δ
        let branch = pe * (1.0 - b.z()) / 2.0 * 2.0;
        assert!((deficit - branch).abs() < 1e-14);
        assert!((photon_energy(&b, &s, &unit()) - branch).abs() < 1e-15);
    }

    /// Brute force: `UH - HU` has entry `U_ij (H_j - H_i)`, so its squared
    /// norm is the sum of squared energy changes over the permutation moves.
    fn commutator_norm_oracle(gap: f64) -> f64 {
        let energy = |i: usize| gap * (((i >> 2) & 1) + ((i >> 1) & 1)) as f64;
        let perm = crate::channel::ERASURE_PERMUTATION;
        (0..8)
            .map(|col| (energy(col) - energy(perm[col])).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    #[test]
    fn commutator_examples() {
        let u = build_erasure_unitary();
        let norm = commutator_norm(&u, &HamiltonianSet::new(unit()));
        assert!(norm > 0.0);
        assert!((norm - commutator_norm_oracle(1.0)).abs() < 1e-14);
        assert!((norm - 8f64.sqrt()).abs() < 1e-14);

        let degenerate = HamiltonianSet::new(EnergyLevels::degenerate(2.0, -1.0).unwrap());
        assert_eq!(commutator_norm(&u, &degenerate), 0.0);

        let offset = HamiltonianSet::new(EnergyLevels::new(5.0, 3.0, 2.5).unwrap());
        assert!((commutator_norm(&u, &offset) - commutator_norm_oracle(2.5)).abs() < 1e-13);
    }

    #[test]
    fn limit_temperature_examples() {
        let t = limit_temperature(&bloch(0.0, 0.0, 0.0), &unit(), 1.0).unwrap();
        let expected = 1.0 / 4f64.ln();
        assert!((t.finite().unwrap() - expected).abs() < 1e-15);
        assert!((expected - 0.72135).abs() < 1e-5);

        let t = limit_temperature(&bloch(0.0, 0.0, 0.5), &unit(), 1.0).unwrap();
        let oracle = (1.0 - 0.5) / (2.0 * binary_entropy(0.75));
        assert!((t.finite().unwrap() - oracle).abs() < 1e-12);
        assert!((oracle - 0.44457).abs() < 1e-5);

        let levels = EnergyLevels::with_gap(1.986e-22).unwrap();
        let t = limit_temperature(&bloch(0.0, 0.0, 0.0), &levels, crate::states::SI_BOLTZMANN)
            .unwrap()
            .finite()
            .unwrap();
        assert!((t - 10.376).abs() < 1e-3, "{t}");

        assert!(matches!(
            limit_temperature(&bloch(0.0, 0.0, 0.0), &unit(), 0.0),
            Err(Error::InvalidBoltzmann { .. })
        ));
    }

    #[test]
    fn limit_temperature_for_pure_states() {
        assert_eq!(
            limit_temperature(&bloch(1.0, 0.0, 0.0), &unit(), 1.0).unwrap(),
            LimitTemperature::Infinite
        );
        assert_eq!(
            limit_temperature(&bloch(0.0, 0.0, 1.0), &unit(), 1.0).unwrap(),
            LimitTemperature::Undefined
        );
    }

    #[test]
    fn landauer_examples() {
        let t_l = 1.0 / 4f64.ln();
        let v = landauer_check(-0.5, 0.0, LN_2, 1.0).unwrap();
        assert!(!v.violated);

        let v = landauer_check(-0.5, 2.0 * t_l, LN_2, 1.0).unwrap();
        assert!(v.violated);
        assert!((v.margin - 0.5).abs() < 1e-15);

        let v = landauer_check(-0.5, t_l, LN_2, 1.0).unwrap();
        assert!(v.margin.abs() < 1e-12);

        let v = landauer_check(-0.5, f64::INFINITY, LN_2, 1.0).unwrap();
        assert!(v.violated && v.margin == f64::INFINITY);
        let v = landauer_check(-0.5, f64::INFINITY, 0.0, 1.0).unwrap();
        assert!(!v.violated && v.margin == -0.5);

        assert!(matches!(
            landauer_check(-0.5, -1.0, LN_2, 1.0),
            Err(Error::NegativeTemperature { .. })
        ));
    }

    #[test]
    fn analyze_classical_bit_at_infinite_temperature() {
        let s = ThermalSpec::from_beta(0.0, 1.0).unwrap();
        let r = analyze(&bloch(0.0, 0.0, 0.0), &s, &unit()).unwrap();
        assert!((r.delta_s - LN_2).abs() < 1e-15);
        assert_eq!(r.q_m, -0.5);
        assert_eq!(r.q_r, 0.0);
        assert_eq!(r.q_e, 0.5);
        assert!((r.photon_energy - 0.5).abs() < 1e-15);
        assert!((r.t_limit.finite().unwrap() - 1.0 / 4f64.ln()).abs() < 1e-15);
        assert_eq!(r.temperature, f64::INFINITY);
        assert!(r.landauer.violated);
        assert!(r.route_deviation < ROUTE_TOL);
    }

    #[test]
    fn analyze_ground_state_memory() {
        let s = ThermalSpec::from_beta(0.2, 1.0).unwrap();
        let r = analyze(&bloch(0.0, 0.0, 1.0), &s, &unit()).unwrap();
        assert_eq!((r.q_m, r.q_r, r.photon_energy), (0.0, 0.0, 0.0));
        assert_eq!(r.delta_s, 0.0);
        assert_eq!(r.t_limit, LimitTemperature::Undefined);
        assert!(!r.landauer.violated);
    }

    #[test]
    fn analyze_pure_equatorial_state_never_violates() {
        for beta in [0.0, 0.01, 1.0, f64::INFINITY] {
            let s = ThermalSpec::from_beta(beta, 1.0).unwrap();
            let r = analyze(&bloch(1.0, 0.0, 0.0), &s, &unit()).unwrap();
            assert_eq!(r.delta_s, 0.0);
            assert_eq!(r.q_m, -0.5);
            assert_eq!(r.t_limit, LimitTemperature::Infinite);
            assert!(!r.landauer.violated, "beta {beta}");
        }
    }

    #[test]
    fn analyze_rejects_gap_mismatch() {
        let s = ThermalSpec::from_beta(1.0, 2.0).unwrap();
        assert!(matches!(
            analyze(&bloch(0.0, 0.0, 0.0), &s, &unit()),
            Err(Error::GapMismatch { .. })
        ));
    }

    #[test]
    fn heats_do_not_depend_on_offsets() {
        let b = bloch(0.1, 0.4, -0.3);
        let s = ThermalSpec::from_beta(0.9, 1.0).unwrap();
        let plain = analyze(&b, &s, &unit()).unwrap();
        let shifted = analyze(&b, &s, &EnergyLevels::new(5.0, 3.0, 1.0).unwrap()).unwrap();
        assert!((plain.q_m - shifted.q_m).abs() < 1e-15);
        assert!((plain.q_r - shifted.q_r).abs() < 1e-15);
        assert!(
            ((plain.u_initial - plain.u_final) - (shifted.u_initial - shifted.u_final)).abs()
                < 1e-13
        );
        assert!(shifted.route_deviation < ROUTE_TOL);
    }
}
