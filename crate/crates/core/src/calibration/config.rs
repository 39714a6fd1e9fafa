use serde::{Deserialize, Serialize};

use crate::calibration::LossKind;
use crate::error::{Error, Result};
use crate::rankers::{IterOptions, DEFAULT_MAX_ITER, DEFAULT_TOL};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Optimizer {
    #[default]
    Ga,
    De,
}

impl Optimizer {
    pub fn name(self) -> &'static str {
        match self {
            Optimizer::Ga => "ga",
            Optimizer::De => "de",
        }
    }
}

impl std::str::FromStr for Optimizer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ga" => Ok(Optimizer::Ga),
            "de" => Ok(Optimizer::De),
            other => Err(Error::InvalidParameter(format!(
                "unknown optimizer `{other}`"
            ))),
        }
    }
}

/// Evolutionary search settings. Parsed from a flat `key = value` file.
///
/// | key | default |
/// |---|---|
/// | `population` | 50 |
/// | `generations` | 100 (evaluated populations, including the initial one) |
/// | `tournament_size` | 3 |
/// | `crossover_rate` | 0.9 (uniform crossover, GA) |
/// | `mutation_sigma` | 0.1 (Gaussian, GA) |
/// | `mutation_rate` | `1 / genes` when unset |
/// | `elitism` | 1 |
/// | `target_loss` | unset; stop early once the best loss drops below it |
/// | `loss` | `neg_spearman` (`l1`, `l2`) |
/// | `optimizer` | `ga` (`de`) |
/// | `seed` | 0 |
/// | `tol`, `max_iter` | 1e-9, 1000 (ranking fixed point) |
/// | `de_f`, `de_cr` | 0.7, 0.9 |
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CalibrationConfig {
    pub population: usize,
    pub generations: usize,
    pub tournament_size: usize,
    pub crossover_rate: f64,
    pub mutation_sigma: f64,
    pub mutation_rate: Option<f64>,
    pub elitism: usize,
    pub target_loss: Option<f64>,
    pub loss: LossKind,
    pub optimizer: Optimizer,
    pub seed: u64,
    pub tol: f64,
    pub max_iter: usize,
    pub de_f: f64,
    pub de_cr: f64,
}

impl Default for CalibrationConfig {
    fn default() -> Self {
        Self {
            population: 50,
            generations: 100,
            tournament_size: 3,
            crossover_rate: 0.9,
            mutation_sigma: 0.1,
            mutation_rate: None,
            elitism: 1,
            target_loss: None,
            loss: LossKind::NegSpearman,
            optimizer: Optimizer::Ga,
            seed: 0,
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            de_f: 0.7,
            de_cr: 0.9,
        }
    }
}

/// Population and generation budget used for each bootstrap refit.
pub const BOOTSTRAP_POPULATION: usize = 24;
pub const BOOTSTRAP_GENERATIONS: usize = 40;

impl CalibrationConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self =
            toml::from_str(text).map_err(|e| Error::InvalidParameter(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        let min_pop = 4;
        if self.population < min_pop {
            return bad(format!("population must be at least {min_pop}"));
        }
        if self.generations == 0 {
            return bad("generations must be at least 1".into());
        }
        if self.tournament_size == 0 || self.tournament_size > self.population {
            return bad("tournament_size must lie in 1..=population".into());
        }
        if self.elitism >= self.population {
            return bad("elitism must be smaller than the population".into());
        }
        for (name, v) in [
            ("crossover_rate", self.crossover_rate),
            ("de_cr", self.de_cr),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return bad(format!("{name} must lie in [0, 1]"));
            }
        }
        if let Some(r) = self.mutation_rate {
            if !(0.0..=1.0).contains(&r) {
                return bad("mutation_rate must lie in [0, 1]".into());
            }
        }
        if !(self.mutation_sigma >= 0.0) || !(self.de_f > 0.0 && self.de_f <= 2.0) {
            return bad("mutation_sigma must be >= 0 and de_f in (0, 2]".into());
        }
        if !(self.tol > 0.0) || self.max_iter == 0 {
            return bad("tol must be positive and max_iter at least 1".into());
        }
        if let Some(t) = self.target_loss {
            if !(t >= 0.0) {
                return bad("target_loss must be non-negative".into());
            }
        }
        Ok(())
    }

    pub fn iter_options(&self) -> IterOptions<f64> {
        IterOptions::new(self.tol, self.max_iter)
    }

    /// Budget used for bootstrap refits.
    pub fn reduced(&self) -> Self {
        Self {
            population: BOOTSTRAP_POPULATION,
            generations: BOOTSTRAP_GENERATIONS,
            tournament_size: self.tournament_size.min(BOOTSTRAP_POPULATION),
            elitism: self.elitism.min(BOOTSTRAP_POPULATION - 1),
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_key_value_file() {
        let cfg = CalibrationConfig::from_toml_str(
            "population = 30\ngenerations = 12\nloss = \"l2\"\noptimizer = \"de\"\nseed = 9\ntarget_loss = 0.01\n",
        )
        .unwrap();
        assert_eq!(cfg.population, 30);
        assert_eq!(cfg.generations, 12);
        assert_eq!(cfg.loss, LossKind::L2);
        assert_eq!(cfg.optimizer, Optimizer::De);
        assert_eq!(cfg.target_loss, Some(0.01));
        assert_eq!(cfg.tournament_size, 3);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(CalibrationConfig::from_toml_str("popsize = 3").is_err());
        assert!(CalibrationConfig::from_toml_str("population = 3").is_err());
        assert!(CalibrationConfig::from_toml_str("generations = 0").is_err());
        assert!(CalibrationConfig::from_toml_str("crossover_rate = 1.5").is_err());
    }
}
