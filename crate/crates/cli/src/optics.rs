//! Optical simulation runs.

use erasure_core::channel::ground_fidelity;
use erasure_core::linalg::ComplexMatrix;
use erasure_core::optics::{
    default_erasure_circuit, mode_label, path_marginal, polarization_marginal, simulate,
    verify_encoding_equivalence, PathDistribution,
};
use erasure_core::states::BlochVector;
use erasure_core::ComplexScalar;
use serde::{Deserialize, Serialize};

use crate::erase::SCHEMA_VERSION;
use crate::error::CliResult;
use crate::number::{self, exact, round_sig, tagged};

/// Dense complex matrix as separate real and imaginary row arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&ComplexMatrix> for MatrixJson {
    fn from(m: &ComplexMatrix) -> Self {
        let rows = |part: fn(ComplexScalar) -> f64| {
            (0..m.dim())
                .map(|r| {
                    (0..m.dim())
                        .map(|c| round_sig(part(m.get(r, c))) + 0.0)
                        .collect()
                })
                .collect()
        };
        MatrixJson {
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpticsInputs {
    pub pol: Vec<f64>,
    #[serde(with = "exact")]
    pub p1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpticsJson {
    pub schema_version: u32,
    pub inputs: OpticsInputs,
    pub circuit: Vec<String>,
    /// Mode labels in matrix index order.
    pub basis: Vec<String>,
    pub final_state: MatrixJson,
    /// `⟨H|ρ_pol|H⟩` after the circuit.
    #[serde(with = "tagged")]
    pub polarization_fidelity_h: f64,
    pub path_marginal: MatrixJson,
    pub encoding_equivalent: bool,
}

pub fn run_optics(pol: [f64; 3], p1: f64) -> CliResult<OpticsJson> {
    let b = BlochVector::new(pol[0], pol[1], pol[2])?;
    let dist = PathDistribution::new(p1)?;
    let fin = simulate(&b, &dist);
    Ok(OpticsJson {
        schema_version: SCHEMA_VERSION,
        inputs: OpticsInputs {
            pol: pol.to_vec(),
            p1,
        },
        circuit: default_erasure_circuit()
            .iter()
            .map(|e| e.to_string())
            .collect(),
        basis: (0..8).map(mode_label).collect(),
        final_state: (&fin).into(),
        polarization_fidelity_h: ground_fidelity(&polarization_marginal(&fin)?),
        path_marginal: (&path_marginal(&fin)?).into(),
        encoding_equivalent: verify_encoding_equivalence().equivalent,
    })
}

impl OpticsJson {
    pub fn to_text(&self) -> String {
        let mut s = format!("circuit: {}\n", self.circuit.join(" -> "));
        s += "final state populations:\n";
        for (i, label) in self.basis.iter().enumerate() {
            let p = self.final_state.re[i][i];
            if p != 0.0 {
                s += &format!("  {label}  {}\n", number::format(p));
            }
        }
        s += &format!(
            "polarization fidelity with H: {}\n",
            number::format(self.polarization_fidelity_h)
        );
        s += "path marginal (real part):\n";
        for row in &self.path_marginal.re {
            let cells: Vec<String> = row.iter().map(|x| number::format(*x)).collect();
            s += &format!("  {}\n", cells.join("  "));
        }
        s += &format!("encoding equivalent: {}\n", self.encoding_equivalent);
        s
    }
}
