//! Run configuration, read from a TOML file. Every section is optional and
//! falls back to the library defaults.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use vdw_core::action::{PathConfig, DEFAULT_DT};
use vdw_core::crossover::RegimeConstants;
use vdw_core::kernels::{ProfileFamily, ProfileSpec, SmearingProfile};
use vdw_core::quadrature::QuadratureSettings;
use vdw_core::spectral::BasisConfig;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub format: OutputFormat,
    pub path: Option<PathBuf>,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { format: OutputFormat::Csv, path: None }
    }
}

/// Path-sampling parameters; `dt` is the step on the rescaled horizon τ/α².
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PathSection {
    pub tau: f64,
    pub alpha: f64,
    pub dt: f64,
    pub paths: usize,
    pub seed: u64,
    pub lag_cutoff: Option<f64>,
}

impl Default for PathSection {
    fn default() -> Self {
        Self { tau: 1.0, alpha: 0.2, dt: DEFAULT_DT, paths: 2000, seed: 1, lag_cutoff: None }
    }
}

impl PathSection {
    pub fn config(&self) -> PathConfig {
        PathConfig { lag_cutoff: self.lag_cutoff, ..PathConfig::new(self.tau, self.alpha, self.dt, self.paths, self.seed) }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Name of the smearing profile used by every profile-dependent command.
    pub profile: String,
    pub profiles: Vec<ProfileSpec>,
    pub basis: BasisConfig,
    pub quadrature: QuadratureSettings,
    pub regime: RegimeConstants,
    pub path: PathSection,
    pub output: OutputSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            profile: "default".into(),
            profiles: Vec::new(),
            basis: BasisConfig::default(),
            quadrature: QuadratureSettings::default(),
            regime: RegimeConstants::default(),
            path: PathSection::default(),
            output: OutputSection::default(),
        }
    }
}

/// Profiles available without configuration.
fn builtin_profiles() -> Vec<ProfileSpec> {
    vec![
        ProfileSpec { name: "default".into(), family: ProfileFamily::Bump, scale: 1.0 },
        ProfileSpec { name: "gaussian".into(), family: ProfileFamily::Gaussian, scale: 0.5 },
    ]
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let config: Self = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.basis.validate()?;
        self.quadrature.validate()?;
        self.regime.validate()?;
        self.selected_profile()?;
        Ok(())
    }

    /// User profiles shadow built-ins of the same name.
    pub fn profile_by_name(&self, name: &str) -> Result<SmearingProfile, CliError> {
        let spec = self
            .profiles
            .iter()
            .rev()
            .chain(builtin_profiles().iter())
            .find(|p| p.name == name)
            .cloned()
            .ok_or_else(|| CliError::Config(format!("profile '{name}' is not defined")))?;
        Ok(SmearingProfile::new(&spec)?)
    }

    pub fn selected_profile(&self) -> Result<SmearingProfile, CliError> {
        self.profile_by_name(&self.profile)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        let c = RunConfig::from_toml("").unwrap();
        assert_eq!(c, RunConfig::default());
        assert_eq!(c.selected_profile().unwrap().scale(), 1.0);
    }

    #[test]
    fn sections_are_read() {
        let text = r#"
            profile = "wide"

            [[profiles]]
            name = "wide"
            family = "gaussian"
            scale = 0.8

            [basis]
            size = 40

            [regime]
            e_he = -2.903724
            e2r_table = [[1.0, -1.0], [2.0, -1.1]]

            [path]
            alpha = 0.3
            paths = 10

            [output]
            format = "json"
        "#;
        let c = RunConfig::from_toml(text).unwrap();
        assert_eq!(c.basis.size, 40);
        assert_eq!(c.basis.length_scale, 1.0);
        assert_eq!(c.regime.e2r_table.as_ref().unwrap().len(), 2);
        assert_eq!(c.path.config().alpha, 0.3);
        assert_eq!(c.path.config().dt, DEFAULT_DT);
        assert_eq!(c.output.format, OutputFormat::Json);
        let p = c.selected_profile().unwrap();
        assert_eq!((p.family(), p.scale()), (ProfileFamily::Gaussian, 0.8));
    }

    #[test]
    fn unknown_profile_is_a_config_error() {
        let err = RunConfig::from_toml("profile = \"missing\"").unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn typos_are_rejected() {
        assert!(RunConfig::from_toml("[basis]\nsise = 3").is_err());
        assert!(RunConfig::from_toml("[output]\nformat = \"xml\"").is_err());
    }
}
