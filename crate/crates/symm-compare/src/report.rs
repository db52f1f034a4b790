//! Structured verification reports: one record per executed check, the
//! computed constants, solver traces, and provenance. Serialization is
//! deterministic field-for-field; the timestamp is the only run-dependent
//! entry.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Error;
use crate::rearrange::RadialProfile;

/// A single checked inequality or identity.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// Signed margin; the check's inequality holds when `margin >= -tolerance`.
    pub margin: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolverTrace {
    pub stage: String,
    pub iterations: usize,
    pub residual: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub config_hash: String,
    pub mesh_nodes: usize,
    pub mesh_cells: usize,
    pub edge_length: f64,
    pub ladder_size: usize,
    /// Seconds since the Unix epoch at report creation; the only field that
    /// varies between identical runs.
    pub timestamp: u64,
}

/// Outcome of one scenario run at one resolution.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub scenario: String,
    pub theorem: String,
    pub checks: Vec<CheckRecord>,
    pub constants: BTreeMap<String, f64>,
    pub solver: Vec<SolverTrace>,
    pub provenance: Provenance,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(scenario: &str, theorem: &str, provenance: Provenance) -> Self {
        Self {
            scenario: scenario.to_string(),
            theorem: theorem.to_string(),
            checks: Vec::new(),
            constants: BTreeMap::new(),
            solver: Vec::new(),
            provenance,
            pass: true,
        }
    }

    /// Record a check with the uniform rule `pass = margin >= -tolerance`.
    pub fn check(&mut self, name: &str, margin: f64, tolerance: f64) {
        self.push_check(name, margin, tolerance, margin >= -tolerance);
    }

    /// Record a check that needs a strictly positive margin.
    pub fn check_positive(&mut self, name: &str, margin: f64) {
        self.push_check(name, margin, 0.0, margin > 0.0);
    }

    fn push_check(&mut self, name: &str, margin: f64, tolerance: f64, pass: bool) {
        debug_assert!(
            self.checks.iter().all(|c| c.name != name),
            "duplicate check {name}"
        );
        self.checks.push(CheckRecord {
            name: name.to_string(),
            margin,
            tolerance,
            pass,
        });
        self.pass &= pass;
    }

    pub fn constant(&mut self, name: &str, value: f64) {
        self.constants.insert(name.to_string(), value);
    }

    pub fn trace(&mut self, stage: &str, iterations: usize, residual: f64, converged: bool) {
        self.solver.push(SolverTrace {
            stage: stage.to_string(),
            iterations,
            residual,
            converged,
        });
    }

    pub fn find_check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Radial profile bundle exported next to a report.
#[derive(Debug, Clone)]
pub struct ProfileBundle {
    pub u_star: RadialProfile,
    pub v: RadialProfile,
    pub lambda_hat: RadialProfile,
    pub a_hat: RadialProfile,
    pub f_hat: RadialProfile,
}

impl ProfileBundle {
    /// CSV with columns `r,u_star,v,lambda_hat,a_hat,f_hat` on the uniform
    /// radial grid.
    pub fn to_csv(&self) -> String {
        let pts = crate::radial::RADIAL_POINTS;
        let u = self.u_star.resample(pts);
        let mut out = String::from("r,u_star,v,lambda_hat,a_hat,f_hat\n");
        for &r in u.grid() {
            out.push_str(&format!(
                "{r},{},{},{},{},{}\n",
                self.u_star.eval(r),
                self.v.eval(r),
                self.lambda_hat.eval(r),
                self.a_hat.eval(r),
                self.f_hat.eval(r)
            ));
        }
        out
    }

    /// Plot-data CSV of the dominance margin along the radius.
    pub fn margins_csv(&self) -> String {
        let pts = crate::radial::RADIAL_POINTS;
        let u = self.u_star.resample(pts);
        let mut out = String::from("r,v_minus_u_star\n");
        for &r in u.grid() {
            out.push_str(&format!("{r},{}\n", self.v.eval(r) - self.u_star.eval(r)));
        }
        out
    }
}

/// Write a report and its profile CSVs under `dir` with the given stem.
pub fn export(
    report: &VerificationReport,
    profiles: Option<&ProfileBundle>,
    dir: &std::path::Path,
    stem: &str,
) -> Result<Vec<std::path::PathBuf>, Error> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let json_path = dir.join(format!("{stem}.report.json"));
    std::fs::write(&json_path, report.to_json())?;
    written.push(json_path);
    if let Some(p) = profiles {
        let csv_path = dir.join(format!("{stem}.profiles.csv"));
        std::fs::write(&csv_path, p.to_csv())?;
        written.push(csv_path);
        let margins_path = dir.join(format!("{stem}.margins.csv"));
        std::fs::write(&margins_path, p.margins_csv())?;
        written.push(margins_path);
    }
    Ok(written)
}

pub fn config_hash(text: &str) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let digest = hasher.finalize();
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

pub fn now_timestamp() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}
