use std::path::{Path, PathBuf};

use serde::Deserialize;

use undulator_core::fields::Harmonic;
use undulator_core::{Complex64, FieldModel, HelixParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Spectrum,
    Power,
    Spin,
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Field block. Fourier rows are `[n, re c1, im c1, re c2, im c2]`.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldSpec {
    Helical {
        #[serde(default)]
        beta_perp: Option<f64>,
        #[serde(default)]
        h0: Option<f64>,
    },
    Planar {
        h0: f64,
    },
    FourierSeries {
        harmonics: Vec<[f64; 5]>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ThetaGrid {
    /// Midpoints of `count` equal cells on `(0, pi)`.
    Count(usize),
    List(Vec<f64>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum HarmonicRange {
    List(Vec<i64>),
    Span { from: i64, to: i64 },
}

fn default_samples() -> usize {
    256
}

fn default_n_range() -> HarmonicRange {
    HarmonicRange::Span { from: 1, to: 5 }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub mode: Option<Mode>,
    pub field: FieldSpec,
    pub gamma: f64,
    #[serde(default)]
    pub chi: f64,
    #[serde(default = "default_n_range")]
    pub n_range: HarmonicRange,
    #[serde(default)]
    pub theta_grid: Option<ThetaGrid>,
    #[serde(default)]
    pub phi: f64,
    #[serde(default = "default_samples")]
    pub n_samples: usize,
    #[serde(default)]
    pub boson: bool,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub alpha_fs: Option<f64>,
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn bad(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self, mode: Mode) -> Result<(), ConfigError> {
        if !(self.gamma > 1.0) || !self.gamma.is_finite() {
            return Err(bad(format!("gamma must exceed 1, got {}", self.gamma)));
        }
        if !(self.chi >= 0.0) || !self.chi.is_finite() {
            return Err(bad(format!("chi must be >= 0, got {}", self.chi)));
        }
        if self.n_samples < 64 || !self.n_samples.is_power_of_two() {
            return Err(bad(format!("n_samples must be a power of two >= 64, got {}", self.n_samples)));
        }
        if let Some(a) = self.alpha_fs {
            if !(a > 0.0) {
                return Err(bad(format!("alpha_fs must be positive, got {a}")));
            }
        }
        let harmonics = self.harmonics()?;
        if mode == Mode::Spectrum {
            if harmonics.is_empty() {
                return Err(bad("n_range is empty"));
            }
            if self.thetas()?.is_empty() {
                return Err(bad("theta_grid must be nonempty in spectrum mode"));
            }
        }
        if self.boson && !matches!(self.field, FieldSpec::Helical { .. }) {
            return Err(bad("--boson is only defined for the helical field"));
        }
        if mode == Mode::Spin && !matches!(self.field, FieldSpec::Helical { .. }) {
            return Err(bad("spin mode needs a helical field"));
        }
        self.field_model()?;
        Ok(())
    }

    pub fn harmonics(&self) -> Result<Vec<i64>, ConfigError> {
        let v = match &self.n_range {
            HarmonicRange::List(v) => v.clone(),
            HarmonicRange::Span { from, to } => (*from..=*to).collect(),
        };
        if let Some(n) = v.iter().find(|&&n| n < 1) {
            return Err(bad(format!("harmonics must be >= 1, got {n}")));
        }
        Ok(v)
    }

    pub fn thetas(&self) -> Result<Vec<f64>, ConfigError> {
        let pi = std::f64::consts::PI;
        let v = match &self.theta_grid {
            None => Vec::new(),
            Some(ThetaGrid::Count(c)) => (0..*c).map(|k| pi * (k as f64 + 0.5) / *c as f64).collect(),
            Some(ThetaGrid::List(v)) => v.clone(),
        };
        if let Some(t) = v.iter().find(|&&t| !(t > 0.0 && t < pi)) {
            return Err(bad(format!("theta must lie in (0, pi), got {t}")));
        }
        Ok(v)
    }

    fn helical_h0(&self) -> Result<f64, ConfigError> {
        match self.field {
            FieldSpec::Helical { beta_perp: Some(b), h0: None } => {
                if !(b >= 0.0) {
                    return Err(bad(format!("beta_perp must be >= 0, got {b}")));
                }
                Ok(b * self.gamma)
            }
            FieldSpec::Helical { beta_perp: None, h0: Some(h) } => Ok(h),
            FieldSpec::Helical { .. } => Err(bad("helical field needs exactly one of beta_perp, h0")),
            _ => Err(bad("not a helical field")),
        }
    }

    pub fn field_model(&self) -> Result<FieldModel, ConfigError> {
        match &self.field {
            FieldSpec::Helical { .. } => Ok(FieldModel::helical(self.helical_h0()?)),
            FieldSpec::Planar { h0 } => Ok(FieldModel::planar(*h0)),
            FieldSpec::FourierSeries { harmonics } => {
                let mut rows = Vec::with_capacity(harmonics.len());
                for r in harmonics {
                    if r[0] < 1.0 || r[0].fract() != 0.0 {
                        return Err(bad(format!("harmonic index must be a positive integer, got {}", r[0])));
                    }
                    rows.push(Harmonic {
                        n: r[0] as u32,
                        c1: Complex64::new(r[1], r[2]),
                        c2: Complex64::new(r[3], r[4]),
                    });
                }
                FieldModel::fourier(&rows).map_err(|e| bad(e.to_string()))
            }
        }
    }

    pub fn helix(&self) -> Result<HelixParams, ConfigError> {
        HelixParams::from_field(self.helical_h0()?, self.gamma, self.chi).map_err(|e| bad(e.to_string()))
    }

    pub fn format_for(&self, output: Option<&Path>) -> Format {
        if let Some(f) = self.format {
            return f;
        }
        match output.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> RunConfig {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn minimal_helical() {
        let c = parse(r#"{"field": {"kind": "helical", "beta_perp": 0.05}, "gamma": 2.0, "theta_grid": 4}"#);
        c.validate(Mode::Spectrum).unwrap();
        assert_eq!(c.harmonics().unwrap(), vec![1, 2, 3, 4, 5]);
        let t = c.thetas().unwrap();
        assert_eq!(t.len(), 4);
        assert!((t[0] - std::f64::consts::PI / 8.0).abs() < 1e-15);
        assert_eq!(c.field_model().unwrap().amplitude_h0, 0.1);
    }

    #[test]
    fn fourier_rows_and_lists() {
        let c = parse(
            r#"{"field": {"kind": "fourier_series", "harmonics": [[1, 0.1, 0, 0, 0.05], [3, 0, 0.01, 0, 0]]},
                "gamma": 3.0, "n_range": [1, 3], "theta_grid": [0.1, 0.2], "format": "json"}"#,
        );
        c.validate(Mode::Spectrum).unwrap();
        assert_eq!(c.field_model().unwrap().band_limit(), 3);
        assert_eq!(c.format_for(None), Format::Json);
    }

    #[test]
    fn rejects_bad_values() {
        let base = r#"{"field": {"kind": "helical", "beta_perp": 0.05}, "gamma": GAMMA, "chi": CHI, "theta_grid": TH}"#;
        let make = |g: &str, c: &str, t: &str| parse(&base.replace("GAMMA", g).replace("CHI", c).replace("TH", t));
        assert!(make("1.0", "0", "3").validate(Mode::Power).is_err());
        assert!(make("2.0", "-1e-5", "3").validate(Mode::Power).is_err());
        assert!(make("2.0", "0", "0").validate(Mode::Spectrum).is_err());
        assert!(make("2.0", "0", "[3.5]").validate(Mode::Spectrum).is_err());
        assert!(make("2.0", "0", "0").validate(Mode::Power).is_ok());
        assert!(serde_json::from_str::<RunConfig>(r#"{"field": {"kind": "helical"}, "gamma": 2, "bogus": 1}"#).is_err());
        let both = parse(r#"{"field": {"kind": "helical", "beta_perp": 0.05, "h0": 0.1}, "gamma": 2.0}"#);
        assert!(both.validate(Mode::Power).is_err());
        let planar = parse(r#"{"field": {"kind": "planar", "h0": 0.1}, "gamma": 2.0, "boson": true}"#);
        assert!(planar.validate(Mode::Power).is_err());
    }

    #[test]
    fn format_from_extension() {
        let c = parse(r#"{"field": {"kind": "planar", "h0": 0.1}, "gamma": 2.0}"#);
        assert_eq!(c.format_for(Some(Path::new("a.JSON"))), Format::Json);
        assert_eq!(c.format_for(Some(Path::new("a.csv"))), Format::Csv);
    }
}
