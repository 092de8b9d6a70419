//! Energy-scale conversions with the exact SI defining constants.

use erasure_core::states::SI_BOLTZMANN;

pub const PLANCK: f64 = 6.626_070_15e-34;
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum EnergyUnit {
    #[value(name = "J")]
    Joule,
    #[value(name = "eV")]
    ElectronVolt,
    /// Wavenumber, `E = h c ν̃`.
    #[value(name = "cm-1")]
    Wavenumber,
    /// Temperature equivalent, `E = k_B T`.
    #[value(name = "K")]
    Kelvin,
    /// Frequency, `E = h ν`.
    #[value(name = "Hz")]
    Hertz,
}

impl EnergyUnit {
    pub fn joules(self) -> f64 {
        match self {
            EnergyUnit::Joule => 1.0,
            EnergyUnit::ElectronVolt => ELEMENTARY_CHARGE,
            EnergyUnit::Wavenumber => PLANCK * SPEED_OF_LIGHT * 100.0,
            EnergyUnit::Kelvin => SI_BOLTZMANN,
            EnergyUnit::Hertz => PLANCK,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            EnergyUnit::Joule => "J",
            EnergyUnit::ElectronVolt => "eV",
            EnergyUnit::Wavenumber => "cm-1",
            EnergyUnit::Kelvin => "K",
            EnergyUnit::Hertz => "Hz",
        }
    }
}

pub fn convert(value: f64, from: EnergyUnit, to: EnergyUnit) -> f64 {
    if from == to {
        return value;
    }
    value * from.joules() / to.joules()
}
