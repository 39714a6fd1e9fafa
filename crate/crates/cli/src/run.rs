//! Per-invocation bookkeeping: input digests, outputs, run manifest.

use std::path::{Path, PathBuf};
use std::time::Instant;

use hnr_core::calibration::{CalibrationConfig, LossKind, Optimizer};
use hnr_core::graph::{assign_groups_default, io, AttributeMatrix, GroupAssignment, LabelSet};
use hnr_core::{Error, WeightedDigraph64};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::args::{Cli, DataArgs, LossArg, OptimizerArg};
use crate::error::CliError;

#[derive(Debug, Serialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

impl FileDigest {
    fn of(path: &Path, bytes: &[u8]) -> Self {
        Self {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
            bytes: bytes.len() as u64,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunManifest<'a> {
    pub command: &'a str,
    pub tool_version: &'a str,
    pub seed: u64,
    pub threads: Option<usize>,
    pub config: &'a serde_json::Map<String, serde_json::Value>,
    pub inputs: &'a [FileDigest],
    pub outputs: &'a [FileDigest],
    pub duration_seconds: f64,
}

pub struct Run {
    pub command: &'static str,
    pub seed: u64,
    seed_given: bool,
    threads: Option<usize>,
    out_dir: PathBuf,
    quiet: bool,
    started: Instant,
    config: serde_json::Map<String, serde_json::Value>,
    inputs: Vec<FileDigest>,
    outputs: Vec<FileDigest>,
}

impl Run {
    pub fn new(command: &'static str, cli: &Cli) -> Self {
        Self {
            command,
            seed: cli.seed.unwrap_or(0),
            seed_given: cli.seed.is_some(),
            threads: cli.threads,
            out_dir: cli.out_dir.clone(),
            quiet: cli.quiet,
            started: Instant::now(),
            config: serde_json::Map::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn info(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("{}", msg.as_ref());
        }
    }

    /// Records a resolved setting for the manifest.
    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("settings serialize to JSON");
        self.config.insert(key.to_string(), v);
    }

    /// Reads an input file whole and records its digest.
    pub fn read(&mut self, path: &Path) -> Result<Vec<u8>, CliError> {
        let bytes = std::fs::read(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        self.inputs.push(FileDigest::of(path, &bytes));
        Ok(bytes)
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> Result<PathBuf, CliError> {
        let path = self.out_dir.join(name);
        std::fs::write(&path, bytes).map_err(|source| CliError::Output {
            path: path.display().to_string(),
            source,
        })?;
        self.outputs.push(FileDigest::of(&path, bytes));
        self.info(format!("wrote {}", path.display()));
        Ok(path)
    }

    /// Writes `<stem>.manifest.json` next to the outputs.
    pub fn finish(self, stem: &str) -> Result<(), CliError> {
        let manifest = RunManifest {
            command: self.command,
            tool_version: env!("CARGO_PKG_VERSION"),
            seed: self.seed,
            threads: self.threads,
            config: &self.config,
            inputs: &self.inputs,
            outputs: &self.outputs,
            duration_seconds: self.started.elapsed().as_secs_f64(),
        };
        let mut text = serde_json::to_string_pretty(&manifest).map_err(Error::from)?;
        text.push('\n');
        let path = self.out_dir.join(format!("{stem}.manifest.json"));
        std::fs::write(&path, text).map_err(|source| CliError::Output {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn graph(&mut self, path: &Path) -> Result<WeightedDigraph64, CliError> {
        let bytes = self.read(path)?;
        Ok(io::read_edges(
            bytes.as_slice(),
            &path.display().to_string(),
        )?)
    }

    pub fn attributes(
        &mut self,
        path: &Path,
        graph: &WeightedDigraph64,
    ) -> Result<AttributeMatrix<f64>, CliError> {
        let bytes = self.read(path)?;
        Ok(io::read_attributes(
            bytes.as_slice(),
            &path.display().to_string(),
            graph,
        )?)
    }

    pub fn labels(&mut self, path: &Path, graph: &WeightedDigraph64) -> Result<LabelSet, CliError> {
        let bytes = self.read(path)?;
        Ok(io::read_labels(
            bytes.as_slice(),
            &path.display().to_string(),
            graph,
        )?)
    }

    /// `auto` or a group CSV.
    pub fn groups(
        &mut self,
        spec: &str,
        levels: usize,
        graph: &WeightedDigraph64,
    ) -> Result<GroupAssignment, CliError> {
        if spec == "auto" {
            if levels == 0 {
                return Err(CliError::Usage("--levels must be at least 1".into()));
            }
            Ok(assign_groups_default(graph, levels)?)
        } else {
            let path = Path::new(spec);
            let bytes = self.read(path)?;
            Ok(io::read_groups(bytes.as_slice(), spec, graph)?)
        }
    }

    /// Config file, then command-line overrides, then the global seed.
    pub fn calibration_config(&mut self, data: &DataArgs) -> Result<CalibrationConfig, CliError> {
        let mut config = match &data.config {
            Some(path) => {
                let bytes = self.read(path)?;
                let text = String::from_utf8(bytes).map_err(|_| {
                    CliError::Usage(format!("{}: config is not UTF-8", path.display()))
                })?;
                CalibrationConfig::from_toml_str(&text)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
            }
            None => CalibrationConfig::default(),
        };
        if let Some(o) = data.optimizer {
            config.optimizer = match o {
                OptimizerArg::Ga => Optimizer::Ga,
                OptimizerArg::De => Optimizer::De,
            };
        }
        if let Some(l) = data.loss {
            config.loss = match l {
                LossArg::L1 => LossKind::L1,
                LossArg::L2 => LossKind::L2,
                LossArg::NegSpearman => LossKind::NegSpearman,
            };
        }
        if let Some(p) = data.population {
            config.population = p;
        }
        if let Some(g) = data.generations {
            config.generations = g;
        }
        if self.seed_given {
            config.seed = self.seed;
        } else {
            self.seed = config.seed;
        }
        config
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        self.set("calibration", &config);
        Ok(config)
    }
}
