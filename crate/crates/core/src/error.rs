use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    DimensionMismatch { expected: usize, found: usize },
    NotSquare { len: usize },
    NonFinite,
    NotHermitian { deviation: f64 },
    InvalidTrace { trace: f64 },
    NegativeEigenvalue { value: f64 },
    InvalidSubsystems,
    UnphysicalBloch { norm: f64 },
    NegativeBeta { beta: f64 },
    NegativeTemperature { temperature: f64 },
    NegativeEntropy { delta_s: f64 },
    InvalidGap { delta: f64 },
    InvalidBoltzmann { k_b: f64 },
    GapMismatch { thermal: f64, levels: f64 },
    PreselectionImpossible,
    SameControlTarget,
    NotAPermutation,
    InvalidPath { path: u8 },
    SamePaths,
    InvalidDistribution { p1: f64 },
    EmptyCircuit,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotSquare { len } => write!(f, "{len} entries do not form a square matrix"),
            Error::NonFinite => write!(f, "matrix entry is NaN or infinite"),
            Error::NotHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (max deviation {deviation:e})")
            }
            Error::InvalidTrace { trace } => write!(f, "density matrix trace is {trace}, not 1"),
            Error::NegativeEigenvalue { value } => {
                write!(f, "density matrix has negative eigenvalue {value:e}")
            }
            Error::InvalidSubsystems => write!(f, "inconsistent subsystem dimensions or indices"),
            Error::UnphysicalBloch { norm } => {
                write!(f, "unphysical Bloch vector: |r| = {norm} exceeds 1")
            }
            Error::NegativeBeta { beta } => {
                write!(
                    f,
                    "negative inverse temperature {beta} (population inversion unsupported)"
                )
            }
            Error::NegativeTemperature { temperature } => {
                write!(f, "negative temperature {temperature}")
            }
            Error::NegativeEntropy { delta_s } => write!(f, "negative entropy decrease {delta_s}"),
            Error::InvalidGap { delta } => {
                write!(f, "energy gap must be positive and finite, got {delta}")
            }
            Error::InvalidBoltzmann { k_b } => {
                write!(
                    f,
                    "Boltzmann constant must be positive and finite, got {k_b}"
                )
            }
            Error::GapMismatch { thermal, levels } => write!(
                f,
                "reservoir gap {thermal} does not match the Hamiltonian gap {levels}"
            ),
            Error::PreselectionImpossible => {
                write!(f, "preselection impossible: state has no weight on l0")
            }
            Error::SameControlTarget => write!(f, "CNOT control and target must differ"),
            Error::NotAPermutation => write!(f, "map is not a permutation of the 8 basis states"),
            Error::InvalidPath { path } => write!(f, "optical path {path} outside 1..=4"),
            Error::SamePaths => write!(f, "beam splitter must couple two distinct paths"),
            Error::InvalidDistribution { p1 } => {
                write!(f, "path probability p1 = {p1} outside [0, 1]")
            }
            Error::EmptyCircuit => write!(f, "optical circuit has no elements"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
