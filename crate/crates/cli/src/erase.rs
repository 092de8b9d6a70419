//! Single erasure run.

use erasure_core::states::{
    BlochVector, EnergyLevels, ThermalSpec, NATURAL_BOLTZMANN, SI_BOLTZMANN,
};
use erasure_core::thermo::{analyze, ErasureReport, LimitTemperature};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::number::{self, exact, exact_opt, exact_seq, tagged};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum Units {
    /// `k_B = 1`; energies in arbitrary units.
    #[serde(rename = "natural")]
    #[value(name = "natural")]
    Natural,
    /// Energies in joules, temperatures in kelvin.
    #[serde(rename = "SI")]
    #[value(name = "SI", alias = "si")]
    Si,
}

impl Units {
    pub fn label(self) -> &'static str {
        match self {
            Units::Natural => "natural",
            Units::Si => "SI",
        }
    }

    pub fn boltzmann(self) -> f64 {
        match self {
            Units::Natural => NATURAL_BOLTZMANN,
            Units::Si => SI_BOLTZMANN,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThermalInput {
    Beta(f64),
    Temperature(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub bloch: [f64; 3],
    pub thermal: ThermalInput,
    pub delta: f64,
    pub units: Units,
    pub memory_ground: f64,
    pub reservoir_ground: f64,
}

impl RunConfig {
    pub fn natural(bloch: [f64; 3], thermal: ThermalInput, delta: f64) -> Self {
        RunConfig {
            bloch,
            thermal,
            delta,
            units: Units::Natural,
            memory_ground: 0.0,
            reservoir_ground: 0.0,
        }
    }

    fn inputs(&self) -> RunInputs {
        let (beta, temperature) = match self.thermal {
            ThermalInput::Beta(b) => (Some(b), None),
            ThermalInput::Temperature(t) => (None, Some(t)),
        };
        RunInputs {
            bloch: self.bloch.to_vec(),
            beta,
            temperature,
            delta: self.delta,
            units: self.units,
            k_b: self.units.boltzmann(),
            memory_ground: self.memory_ground,
            reservoir_ground: self.reservoir_ground,
        }
    }
}

/// The inputs as echoed in a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunInputs {
    #[serde(with = "exact_seq")]
    pub bloch: Vec<f64>,
    #[serde(with = "exact_opt")]
    pub beta: Option<f64>,
    #[serde(with = "exact_opt")]
    pub temperature: Option<f64>,
    #[serde(with = "exact")]
    pub delta: f64,
    pub units: Units,
    #[serde(rename = "k_B", with = "exact")]
    pub k_b: f64,
    #[serde(with = "exact")]
    pub memory_ground: f64,
    #[serde(with = "exact")]
    pub reservoir_ground: f64,
}

impl TryFrom<&RunInputs> for RunConfig {
    type Error = CliError;

    fn try_from(i: &RunInputs) -> CliResult<Self> {
        let bloch: [f64; 3] = i
            .bloch
            .as_slice()
            .try_into()
            .map_err(|_| CliError::Input("bloch needs three components".into()))?;
        let thermal = match (i.beta, i.temperature) {
            (Some(b), None) => ThermalInput::Beta(b),
            (None, Some(t)) => ThermalInput::Temperature(t),
            _ => {
                return Err(CliError::Input(
                    "give exactly one of beta and temperature".into(),
                ))
            }
        };
        Ok(RunConfig {
            bloch,
            thermal,
            delta: i.delta,
            units: i.units,
            memory_ground: i.memory_ground,
            reservoir_ground: i.reservoir_ground,
        })
    }
}

/// Serialized form of an erasure run. Energies are in the units of
/// `delta`, temperatures in `delta / k_B`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErasureJson {
    pub schema_version: u32,
    pub inputs: RunInputs,
    #[serde(with = "tagged")]
    pub beta: f64,
    #[serde(rename = "T", with = "tagged")]
    pub temperature: f64,
    #[serde(with = "tagged")]
    pub p_g: f64,
    #[serde(with = "tagged")]
    pub p_e: f64,
    #[serde(rename = "delta_S", with = "tagged")]
    pub delta_s: f64,
    #[serde(rename = "Q_M", with = "tagged")]
    pub q_m: f64,
    #[serde(rename = "Q_R", with = "tagged")]
    pub q_r: f64,
    #[serde(rename = "Q_E", with = "tagged")]
    pub q_e: f64,
    #[serde(with = "tagged")]
    pub photon_energy: f64,
    #[serde(rename = "U_initial", with = "tagged")]
    pub u_initial: f64,
    #[serde(rename = "U_final", with = "tagged")]
    pub u_final: f64,
    /// `"infinite"` for pure states other than the ground state,
    /// `"undefined"` for the ground state.
    #[serde(rename = "T_limit", with = "tagged")]
    pub t_limit: f64,
    pub landauer_violated: bool,
    #[serde(with = "tagged")]
    pub landauer_margin: f64,
    #[serde(with = "tagged")]
    pub route_deviation: f64,
}

pub fn limit_as_f64(t: LimitTemperature) -> f64 {
    match t {
        LimitTemperature::Finite(t) => t,
        LimitTemperature::Infinite => f64::INFINITY,
        LimitTemperature::Undefined => f64::NAN,
    }
}

/// Validates a configuration and runs the analysis.
pub fn analyze_config(cfg: &RunConfig) -> CliResult<ErasureReport> {
    let [x, y, z] = cfg.bloch;
    let bloch = BlochVector::new(x, y, z)?;
    let k_b = cfg.units.boltzmann();
    let spec = match cfg.thermal {
        ThermalInput::Beta(beta) => ThermalSpec::from_beta_with_boltzmann(beta, cfg.delta, k_b)?,
        ThermalInput::Temperature(t) => ThermalSpec::from_temperature(t, cfg.delta, k_b)?,
    };
    let levels = EnergyLevels::new(cfg.memory_ground, cfg.reservoir_ground, cfg.delta)?;
    Ok(analyze(&bloch, &spec, &levels)?)
}

pub fn run_erase(cfg: &RunConfig) -> CliResult<ErasureJson> {
    let r = analyze_config(cfg)?;
    Ok(ErasureJson {
        schema_version: SCHEMA_VERSION,
        inputs: cfg.inputs(),
        beta: r.thermal.beta(),
        temperature: r.temperature,
        p_g: r.p_g,
        p_e: r.p_e,
        delta_s: r.delta_s,
        q_m: r.q_m,
        q_r: r.q_r,
        q_e: r.q_e,
        photon_energy: r.photon_energy,
        u_initial: r.u_initial,
        u_final: r.u_final,
        t_limit: limit_as_f64(r.t_limit),
        landauer_violated: r.landauer.violated,
        landauer_margin: r.landauer.margin,
        route_deviation: r.route_deviation,
    })
}

impl ErasureJson {
    /// Scalar outputs in emission order, for CSV and text.
    pub fn fields(&self) -> Vec<(&'static str, String)> {
        let f = number::format;
        vec![
            ("r_x", f(self.inputs.bloch[0])),
            ("r_y", f(self.inputs.bloch[1])),
            ("r_z", f(self.inputs.bloch[2])),
            ("delta", f(self.inputs.delta)),
            ("units", self.inputs.units.label().to_string()),
            ("k_B", f(self.inputs.k_b)),
            ("beta", f(self.beta)),
            ("T", f(self.temperature)),
            ("p_g", f(self.p_g)),
            ("p_e", f(self.p_e)),
            ("delta_S", f(self.delta_s)),
            ("Q_M", f(self.q_m)),
            ("Q_R", f(self.q_r)),
            ("Q_E", f(self.q_e)),
            ("photon_energy", f(self.photon_energy)),
            ("U_initial", f(self.u_initial)),
            ("U_final", f(self.u_final)),
            ("T_limit", f(self.t_limit)),
            ("landauer_violated", self.landauer_violated.to_string()),
            ("landauer_margin", f(self.landauer_margin)),
            ("route_deviation", f(self.route_deviation)),
        ]
    }
}
