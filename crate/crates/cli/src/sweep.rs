//! Fixed-radius sweep over the Bloch sphere.

use std::f64::consts::{PI, TAU};
use std::io::Write;

use erasure_core::states::{BlochVector, EnergyLevels, ThermalSpec};
use erasure_core::thermo::{entropy_decrease, heat_memory, heat_reservoir, limit_temperature};
use rayon::prelude::*;

use crate::erase::limit_as_f64;
use crate::error::{CliError, CliResult};
use crate::number::format;

pub const CSV_HEADER: [&str; 9] = [
    "theta",
    "phi",
    "r_x",
    "r_y",
    "r_z",
    "delta_S_nats",
    "Q_M",
    "Q_R",
    "T_limit",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub r: f64,
    pub n_theta: usize,
    pub n_phi: usize,
    /// Inverse temperature used for the `Q_R` column, in units of `1/Δ`.
    pub beta: f64,
    pub delta: f64,
}

impl SweepConfig {
    pub fn new(r: f64, n_theta: usize, n_phi: usize) -> Self {
        SweepConfig {
            r,
            n_theta,
            n_phi,
            beta: f64::INFINITY,
            delta: 1.0,
        }
    }

    fn validate(&self) -> CliResult<()> {
        if !(0.0..=1.0).contains(&self.r) {
            return Err(CliError::Input(format!("radius {} outside [0, 1]", self.r)));
        }
        if self.n_theta < 2 || self.n_phi < 2 {
            return Err(CliError::Input(format!(
                "grid {}x{} is too small; both sizes must be at least 2",
                self.n_theta, self.n_phi
            )));
        }
        Ok(())
    }

    /// Polar angles run pole to pole inclusive; azimuths cover `[0, 2π)`.
    pub fn angles(&self, index: usize) -> (f64, f64) {
        let (i, j) = (index / self.n_phi, index % self.n_phi);
        let theta = PI * i as f64 / (self.n_theta - 1) as f64;
        let phi = TAU * j as f64 / self.n_phi as f64;
        (theta, phi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub theta: f64,
    pub phi: f64,
    pub r_x: f64,
    pub r_y: f64,
    pub r_z: f64,
    pub delta_s: f64,
    pub q_m: f64,
    pub q_r: f64,
    /// In units of `Δ/k_B`.
    pub t_limit: f64,
}

impl SweepRow {
    pub fn values(&self) -> [f64; 9] {
        [
            self.theta,
            self.phi,
            self.r_x,
            self.r_y,
            self.r_z,
            self.delta_s,
            self.q_m,
            self.q_r,
            self.t_limit,
        ]
    }
}

/// Evaluates the grid in parallel; rows come back theta-major.
pub fn sweep(cfg: &SweepConfig) -> CliResult<Vec<SweepRow>> {
    cfg.validate()?;
    let spec = ThermalSpec::from_beta(cfg.beta, cfg.delta)?;
    let levels = EnergyLevels::with_gap(cfg.delta)?;
    (0..cfg.n_theta * cfg.n_phi)
        .into_par_iter()
        .map(|index| {
            let (theta, phi) = cfg.angles(index);
            let b = BlochVector::from_spherical(cfg.r, theta, phi)?;
            let t_limit = limit_as_f64(limit_temperature(&b, &levels, 1.0)?) / cfg.delta;
            Ok(SweepRow {
                theta,
                phi,
                r_x: b.x(),
                r_y: b.y(),
                r_z: b.z(),
                delta_s: entropy_decrease(&b),
                q_m: heat_memory(&b, &levels),
                q_r: heat_reservoir(&b, &spec, &levels),
                t_limit,
            })
        })
        .collect()
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.values().map(format))?;
    }
    w.flush()?;
    Ok(())
}
