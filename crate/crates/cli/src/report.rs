//! Run reports and output files.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::config::ScenarioConfig;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Metric {
    Number(f64),
    Count(u64),
    Text(String),
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Metric::Number(x) => write!(f, "{}", sections::probes::fmt_f64(*x)),
            Metric::Count(n) => write!(f, "{n}"),
            Metric::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub config_hash: String,
    pub seed: u64,
    pub wall_time_s: f64,
    pub outputs: Vec<PathBuf>,
    pub metrics: BTreeMap<String, Metric>,
    #[serde(skip)]
    started: Option<Instant>,
    #[serde(skip)]
    dir: PathBuf,
}

impl RunReport {
    pub fn new(command: &str, cfg: &ScenarioConfig, dir: &Path) -> Self {
        Self {
            command: command.to_string(),
            config_hash: cfg.hash(),
            seed: cfg.seed(),
            wall_time_s: 0.0,
            outputs: Vec::new(),
            metrics: BTreeMap::new(),
            started: Some(Instant::now()),
            dir: dir.to_path_buf(),
        }
    }

    pub fn number(&mut self, key: &str, v: f64) {
        self.metrics.insert(key.to_string(), Metric::Number(v));
    }

    pub fn count(&mut self, key: &str, n: usize) {
        self.metrics.insert(key.to_string(), Metric::Count(n as u64));
    }

    pub fn text(&mut self, key: &str, s: impl Into<String>) {
        self.metrics.insert(key.to_string(), Metric::Text(s.into()));
    }

    /// Writes `contents` to `name` under the output directory.
    pub fn write(&mut self, name: &str, contents: &str) -> std::io::Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let path = self.dir.join(name);
        std::fs::write(&path, contents)?;
        self.outputs.push(path);
        Ok(())
    }

    /// Stamps the wall time, writes `report.json` and prints the summary.
    pub fn finish(mut self) -> std::io::Result<()> {
        self.wall_time_s = self.started.take().map_or(0.0, |t| t.elapsed().as_secs_f64());
        let json = serde_json::to_string_pretty(&self).expect("report serializes");
        self.write("report.json", &json)?;
        let mut o = std::io::stdout().lock();
        let _ = writeln!(o, "{} [config {}] seed {}", self.command, &self.config_hash[..12], self.seed);
        for (k, v) in &self.metrics {
            let _ = writeln!(o, "  {k}: {v}");
        }
        for p in &self.outputs {
            let _ = writeln!(o, "  wrote {}", p.display());
        }
        Ok(())
    }
}
