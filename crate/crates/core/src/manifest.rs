//! Line-oriented `key value` record of one command run.

use std::fmt;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunManifest {
    pub subcommand: String,
    pub params: Vec<(String, String)>,
    pub seed: Option<u64>,
    pub artifacts: Vec<String>,
    pub checks: Vec<(String, bool)>,
}

impl RunManifest {
    pub fn new(subcommand: &str) -> Self {
        RunManifest { subcommand: subcommand.to_string(), ..Default::default() }
    }

    pub fn param(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn artifact(&mut self, path: impl Into<String>) -> &mut Self {
        self.artifacts.push(path.into());
        self
    }

    pub fn check(&mut self, name: &str, pass: bool) -> &mut Self {
        self.checks.push((name.to_string(), pass));
        self
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

impl fmt::Display for RunManifest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "subcommand {}", self.subcommand)?;
        for (k, v) in &self.params {
            writeln!(f, "param.{k} {v}")?;
        }
        if let Some(seed) = self.seed {
            writeln!(f, "seed {seed}")?;
        }
        for a in &self.artifacts {
            writeln!(f, "artifact {a}")?;
        }
        for (name, ok) in &self.checks {
            writeln!(f, "check.{name} {}", if *ok { "PASS" } else { "FAIL" })?;
        }
        writeln!(f, "status {}", if self.all_passed() { "PASS" } else { "FAIL" })
    }
}
