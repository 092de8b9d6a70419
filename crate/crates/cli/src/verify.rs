//! Self-verification suite.

use erasure_core::channel::{
    apply_channel_dense, build_circuit, circuit_unitary, final_state_closed_form, ground_fidelity,
    memory_marginal, reservoir_marginal, ErasureUnitary,
};
use erasure_core::linalg::{dagger, frobenius_distance, matmul, ComplexMatrix};
use erasure_core::optics::{
    check_encoding, compose, default_erasure_circuit, mode_index, Path, Polarization,
};
use erasure_core::states::{
    composite_initial, preselected_reservoir, qubit_from_bloch, BlochVector, EnergyLevels,
    ThermalSpec,
};
use erasure_core::thermo::{
    commutator_norm, heat_from_states, von_neumann_entropy, HamiltonianSet,
};
use erasure_core::ComplexScalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::erase::SCHEMA_VERSION;
use crate::number::tagged;

/// Inverse temperatures, in units of `1/Δ`, used for the random draws.
pub const BETA_GRID: [f64; 5] = [0.0, 0.1, 1.0, 10.0, f64::INFINITY];

/// The erasure unitary as printed, row by row.
pub const PRINTED_ERASURE_MATRIX: [[u8; 8]; 8] = [
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1],
    [0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0],
];

const STATE_TOL: f64 = 1e-12;
const ENTROPY_TOL: f64 = 1e-10;

pub fn printed_erasure_matrix() -> ComplexMatrix {
    ComplexMatrix::from_fn(8, |r, c| {
        ComplexScalar::new(f64::from(PRINTED_ERASURE_MATRIX[r][c]), 0.0)
    })
    .expect("finite entries")
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub draws: usize,
    pub seed: u64,
    /// Gap for the commutator check; `0` exercises the degenerate case.
    pub delta: f64,
    pub unitary: ErasureUnitary,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            draws: 1000,
            seed: 0,
            delta: 1.0,
            unitary: ErasureUnitary::canonical(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    /// Worst deviation seen, where the check has one.
    #[serde(with = "tagged")]
    pub max_error: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub schema_version: u32,
    pub passed: bool,
    pub draws: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub failures: Vec<String>,
}

impl VerifySummary {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check(name: &str, ok: bool, max_error: f64, detail: String) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        status: if ok { Status::Pass } else { Status::Fail },
        max_error,
        detail,
    }
}

/// Random Bloch vectors (uniform direction, uniform radius) paired with
/// inverse temperatures cycled from [`BETA_GRID`].
pub fn random_draws(n: usize, seed: u64, delta: f64) -> Vec<(BlochVector, ThermalSpec)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let r: f64 = rng.gen_range(0.0..=1.0);
            let cos_theta: f64 = rng.gen_range(-1.0..=1.0);
            let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let b = BlochVector::from_spherical(r, cos_theta.acos(), phi).expect("radius <= 1");
            let beta = BETA_GRID[i % BETA_GRID.len()] / delta;
            (b, ThermalSpec::from_beta(beta, delta).expect("valid beta"))
        })
        .collect()
}

struct Propagated {
    initial: ComplexMatrix,
    fin: ComplexMatrix,
}

pub fn run_verify(cfg: &VerifyConfig) -> VerifySummary {
    // thermal checks need a non-degenerate gap even when the commutator runs at Δ = 0
    let thermal_delta = if cfg.delta > 0.0 { cfg.delta } else { 1.0 };
    let levels = EnergyLevels::with_gap(thermal_delta).expect("positive gap");
    let hams = HamiltonianSet::new(levels);
    let u = &cfg.unitary;
    let draws = random_draws(cfg.draws, cfg.seed, thermal_delta);
    let propagated: Vec<Result<Propagated, String>> = draws
        .iter()
        .map(|(b, spec)| {
            let initial = composite_initial(b, spec);
            apply_channel_dense(u, &initial)
                .map(|fin| Propagated { initial, fin })
                .map_err(|e| e.to_string())
        })
        .collect();
    let first_error = propagated.iter().find_map(|p| p.as_ref().err().cloned());
    let ok: Vec<(&Propagated, &(BlochVector, ThermalSpec))> = propagated
        .iter()
        .zip(&draws)
        .filter_map(|(p, d)| p.as_ref().ok().map(|p| (p, d)))
        .collect();

    let mut checks = Vec::new();

    let identity = ComplexMatrix::identity(8);
    let uu = matmul(u.matrix(), &dagger(u.matrix())).expect("8x8");
    let err = uu.max_abs_diff(&identity).expect("8x8");
    checks.push(check(
        "unitarity",
        err == 0.0,
        err,
        "U U^dagger = I entrywise".into(),
    ));

    let printed = printed_erasure_matrix();
    let err = frobenius_distance(u.matrix(), &printed).expect("8x8");
    checks.push(check(
        "permutation_identity",
        err == 0.0,
        err,
        format!(
            "permutation {:?} against the printed matrix",
            u.permutation()
        ),
    ));

    let product = circuit_unitary(&build_circuit());
    let err = frobenius_distance(&product, u.matrix()).expect("8x8");
    checks.push(check(
        "cnot_product",
        err == 0.0,
        err,
        "E->A, M->E, E->M, A->M product against U".into(),
    ));

    let mut oracle_err = 0.0f64;
    let mut fidelity_err = 0.0f64;
    for &(p, (b, spec)) in &ok {
        let closed = final_state_closed_form(b, spec);
        oracle_err = oracle_err.max(closed.max_abs_diff(&p.fin).expect("8x8"));
        let mem = memory_marginal(&p.fin).expect("8x8");
        fidelity_err = fidelity_err.max(1.0 - ground_fidelity(&mem));
    }
    let all_ran = first_error.is_none();
    let failure_note = |what: &str| match &first_error {
        Some(e) => format!("{what}; propagation failed: {e}"),
        None => what.to_string(),
    };
    checks.push(check(
        "closed_form_oracle",
        all_ran && oracle_err < STATE_TOL,
        oracle_err,
        failure_note(&format!("{} draws, elementwise", draws.len())),
    ));
    checks.push(check(
        "erasure_totality",
        all_ran && fidelity_err <= STATE_TOL,
        fidelity_err,
        failure_note("1 - <g|rho_M|g> after the channel"),
    ));

    let mut entropy_err = 0.0f64;
    let mut entropy_fail = None;
    for &(p, (b, spec)) in &ok {
        let result = (|| -> erasure_core::Result<f64> {
            let conserved = (von_neumann_entropy(&p.initial)? - von_neumann_entropy(&p.fin)?).abs();
            let s_m = von_neumann_entropy(&qubit_from_bloch(b))?;
            let s_r = von_neumann_entropy(&preselected_reservoir(spec))?;
            let s_rf = von_neumann_entropy(&reservoir_marginal(&p.fin)?)?;
            Ok(conserved.max((s_rf - s_m - s_r).abs()))
        })();
        match result {
            Ok(e) => entropy_err = entropy_err.max(e),
            Err(e) => entropy_fail = Some(e.to_string()),
        }
    }
    checks.push(check(
        "entropy_conservation",
        all_ran && entropy_fail.is_none() && entropy_err < ENTROPY_TOL,
        entropy_err,
        entropy_fail.unwrap_or_else(|| failure_note("S(total) conserved, S(R) gains S(M)")),
    ));

    let heat = |initial: &ComplexMatrix, fin: &ComplexMatrix, h: &ComplexMatrix, res: bool| {
        let (i, f) = if res {
            (reservoir_marginal(initial), reservoir_marginal(fin))
        } else {
            (memory_marginal(initial), memory_marginal(fin))
        };
        heat_from_states(&i.expect("8x8"), &f.expect("8x8"), h).expect("matching dims")
    };
    let mut spread = 0.0f64;
    let mut qm_error = None;
    for (b, _) in draws.iter().take(200) {
        let q: Result<Vec<f64>, String> = BETA_GRID
            .iter()
            .map(|beta| {
                let spec = ThermalSpec::from_beta(beta / thermal_delta, thermal_delta)
                    .map_err(|e| e.to_string())?;
                let initial = composite_initial(b, &spec);
                let fin = apply_channel_dense(u, &initial).map_err(|e| e.to_string())?;
                Ok(heat(&initial, &fin, &hams.memory, false))
            })
            .collect();
        match q {
            Ok(q) => {
                let max = q.iter().cloned().fold(f64::MIN, f64::max);
                let min = q.iter().cloned().fold(f64::MAX, f64::min);
                spread = spread.max((max - min) / thermal_delta);
            }
            Err(e) => qm_error = Some(e),
        }
    }
    checks.push(check(
        "qm_temperature_independence",
        qm_error.is_none() && spread < STATE_TOL,
        spread,
        qm_error.unwrap_or_else(|| "spread of Q_M over the beta grid, 200 states".into()),
    ));

    let mut worst_qr = 0.0f64;
    for &(p, _) in &ok {
        let q_r = heat(&p.initial, &p.fin, &hams.reservoir, true) / thermal_delta;
        worst_qr = worst_qr.max(-q_r);
    }
    checks.push(check(
        "qr_sign",
        all_ran && worst_qr <= STATE_TOL,
        worst_qr.max(0.0),
        failure_note("Q_R >= 0"),
    ));

    let mut worst_u = 0.0f64;
    for &(p, (_, spec)) in &ok {
        if spec.beta() == f64::INFINITY {
            let energy = |rho: &ComplexMatrix| matmul(rho, &hams.total).expect("8x8").trace().re;
            worst_u = worst_u.max((energy(&p.initial) - energy(&p.fin)).abs() / thermal_delta);
        }
    }
    checks.push(check(
        "zero_temperature_energy_conservation",
        all_ran && worst_u < STATE_TOL,
        worst_u,
        failure_note("U_initial = U_final at beta = infinity"),
    ));

    if cfg.delta == 0.0 {
        let degenerate = HamiltonianSet::new(EnergyLevels::degenerate(0.0, 0.0).expect("finite"));
        let norm = commutator_norm(u, &degenerate);
        checks.push(CheckResult {
            name: "commutator".into(),
            status: Status::Skipped,
            max_error: norm,
            detail: format!("degenerate gap: ||[U, H]|| = {norm}"),
        });
    } else {
        let norm = commutator_norm(u, &hams);
        checks.push(check(
            "commutator",
            norm > 0.0,
            norm,
            format!("||[U, H]|| = {norm}"),
        ));
    }

    checks.push(optics_check());

    let encoding = check_encoding(u, &default_erasure_circuit());
    checks.push(check(
        "encoding_equivalence",
        encoding.equivalent,
        encoding.mismatches.len() as f64,
        if encoding.equivalent {
            "optical circuit reproduces the channel on l0 inputs".into()
        } else {
            format!(
                "mismatched inputs: {:?}",
                encoding
                    .mismatches
                    .iter()
                    .map(|m| m.input)
                    .collect::<Vec<_>>()
            )
        },
    ));

    let failures: Vec<String> = checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| c.name.clone())
        .collect();
    VerifySummary {
        schema_version: SCHEMA_VERSION,
        passed: failures.is_empty(),
        draws: cfg.draws,
        seed: cfg.seed,
        checks,
        failures,
    }
}

fn optics_check() -> CheckResult {
    use Polarization::{H, V};
    let mode = |pol, path| mode_index(pol, Path::new(path).expect("path in 1..=4"));
    let expected = [
        (mode(H, 1), mode(H, 1)),
        (mode(H, 2), mode(H, 4)),
        (mode(V, 1), mode(H, 2)),
        (mode(V, 2), mode(H, 3)),
    ];
    let u = compose(&default_erasure_circuit()).expect("non-empty circuit");
    let one = ComplexScalar::new(1.0, 0.0);
    let wrong = expected
        .iter()
        .filter(|&&(input, output)| u.get(output, input) != one)
        .count();
    check(
        "optics_transformations",
        u.is_exact_permutation() && wrong == 0,
        wrong as f64,
        "|H,1>->|H,1>, |H,2>->|H,4>, |V,1>->|H,2>, |V,2>->|H,3>".into(),
    )
}
