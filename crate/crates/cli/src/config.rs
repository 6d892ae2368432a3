//! Run configuration: defaults, an optional JSON config file, then flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use lambdakit::{Error, FrobeniusField, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Svg,
}

/// Values a config file may set. Every field is optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub p: Option<u32>,
    pub ext_degree: Option<usize>,
    pub ext_modulus: Option<Vec<u32>>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub p: u32,
    pub ext_degree: usize,
    pub ext_modulus: Option<Vec<u32>>,
    pub format: Format,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { p: 2, ext_degree: 1, ext_modulus: None, format: Format::Json, output: None, threads: None }
    }
}

/// Flag values; `None` means "not given on the command line".
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub p: Option<u32>,
    pub ext_degree: Option<usize>,
    pub ext_modulus: Option<Vec<u32>>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn resolve(file: Option<&ConfigFile>, flags: &Overrides) -> Result<Self> {
        let d = RunConfig::default();
        let f = file.cloned().unwrap_or_default();
        let cfg = RunConfig {
            p: flags.p.or(f.p).unwrap_or(d.p),
            ext_degree: flags.ext_degree.or(f.ext_degree).unwrap_or(d.ext_degree),
            ext_modulus: flags.ext_modulus.clone().or(f.ext_modulus),
            format: flags.format.or(f.format).unwrap_or(d.format),
            output: flags.output.clone().or(f.output),
            threads: flags.threads.or(f.threads),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !lambdakit::field::is_prime(self.p) {
            return Err(Error::Invalid(format!("p = {} is not prime", self.p)));
        }
        if self.ext_degree == 0 {
            return Err(Error::Invalid("extension degree must be positive".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::Invalid("parallelism width must be positive".into()));
        }
        Ok(())
    }

    pub fn field(&self) -> Result<FrobeniusField> {
        if self.ext_degree == 1 && self.ext_modulus.is_none() {
            FrobeniusField::prime(self.p)
        } else {
            FrobeniusField::new(self.p, self.ext_degree, self.ext_modulus.as_deref())
        }
    }
}

/// Hex SHA-256 of the canonical JSON of the config and command parameters.
pub fn config_hash(config: &RunConfig, command: &str, params: &serde_json::Value) -> String {
    let doc = serde_json::json!({ "command": command, "config": config, "params": params });
    let digest = Sha256::digest(serde_json::to_vec(&doc).expect("config serializes"));
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_beat_file_beat_defaults() {
        let file = ConfigFile { p: Some(3), threads: Some(2), ..Default::default() };
        let flags = Overrides { p: Some(5), ..Default::default() };
        let cfg = RunConfig::resolve(Some(&file), &flags).unwrap();
        assert_eq!((cfg.p, cfg.threads, cfg.format), (5, Some(2), Format::Json));
        assert!(RunConfig::resolve(None, &Overrides { p: Some(4), ..Default::default() }).is_err());
    }

    #[test]
    fn hash_ignores_output_path() {
        let a = RunConfig::default();
        let b = RunConfig { output: Some("x.json".into()), threads: Some(4), ..RunConfig::default() };
        let params = serde_json::json!({ "l": 1 });
        assert_eq!(config_hash(&a, "ext chart", &params), config_hash(&b, "ext chart", &params));
        assert_ne!(config_hash(&a, "ext chart", &params), config_hash(&a, "ext verify", &params));
    }
}
