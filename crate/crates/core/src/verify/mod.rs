//! Reproducible verification suites and their reports.

mod battery;
mod suites;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::modcat::CoverStrategy;

pub use battery::{builder_algebras, functor_battery, probe_battery, BatterySpec, NamedFunctor, Probe};

/// Suite names accepted by [`run_suite`], in report order.
pub const SUITES: [&str; 5] = [
    "suite_defect",
    "suite_w",
    "suite_gar",
    "suite_transpose",
    "suite_classical_ar",
];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub algebras: Vec<Arc<Algebra>>,
    /// Extra named probes; each joins the battery of its algebra.
    pub extra_probes: Vec<Probe>,
    pub battery: BatterySpec,
    /// Candidate budget for the stable isomorphism search.
    pub budget: usize,
    pub seed: u64,
    /// Pad every presentation with `id_Λ` and every cover with a zero generator.
    pub padded: bool,
    /// Keep only checks whose id starts with this prefix.
    pub only: Option<String>,
}

impl SuiteConfig {
    pub fn new(algebras: Vec<Arc<Algebra>>) -> Self {
        SuiteConfig {
            algebras,
            extra_probes: Vec::new(),
            battery: BatterySpec::Full,
            budget: 256,
            seed: 0,
            padded: false,
            only: None,
        }
    }

    pub(crate) fn strategy(&self) -> CoverStrategy {
        if self.padded {
            CoverStrategy::Padded
        } else {
            CoverStrategy::Auto
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub inputs: Vec<String>,
    pub relation: String,
    pub observed: Value,
    pub status: Status,
    /// A command rerunning just this check; set unless it passed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repro: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraInfo {
    pub name: String,
    pub p: u64,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub algebras: Vec<AlgebraInfo>,
    pub seed: u64,
    pub budget: usize,
    pub battery: BatterySpec,
    pub padded: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub environment: Environment,
    /// Sorted by id.
    pub checks: Vec<Check>,
}

impl Report {
    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }
}

/// Label used in check ids; distinguishes equally named algebras over
/// different fields.
pub(crate) fn algebra_label(alg: &Algebra) -> String {
    format!("{}@F{}", alg.name(), alg.field().p())
}

/// Runs one suite by name, with or without the `suite_` prefix.
pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<Report> {
    let full = if name.starts_with("suite_") {
        name.to_string()
    } else {
        format!("suite_{name}")
    };
    if !SUITES.contains(&full.as_str()) {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    if config.algebras.is_empty() {
        return Err(Error::Parse("no algebra configured".into()));
    }
    let mut checks = Vec::new();
    for alg in &config.algebras {
        let ctx = suites::Context::new(&full, alg, config);
        checks.extend(match full.as_str() {
            "suite_defect" => suites::suite_defect(&ctx),
            "suite_w" => suites::suite_w(&ctx),
            "suite_gar" => suites::suite_gar(&ctx),
            "suite_transpose" => suites::suite_transpose(&ctx),
            _ => suites::suite_classical_ar(&ctx),
        });
    }
    if let Some(prefix) = &config.only {
        checks.retain(|c| c.id.starts_with(prefix.as_str()));
    }
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(Report {
        suite: full,
        environment: Environment {
            algebras: config
                .algebras
                .iter()
                .map(|a| AlgebraInfo {
                    name: a.name().to_string(),
                    p: a.field().p(),
                    sha256: a.fingerprint(),
                })
                .collect(),
            seed: config.seed,
            budget: config.budget,
            battery: config.battery,
            padded: config.padded,
        },
        checks,
    })
}

pub fn suite_defect(config: &SuiteConfig) -> Result<Report> {
    run_suite("suite_defect", config)
}

pub fn suite_w(config: &SuiteConfig) -> Result<Report> {
    run_suite("suite_w", config)
}

pub fn suite_gar(config: &SuiteConfig) -> Result<Report> {
    run_suite("suite_gar", config)
}

pub fn suite_transpose(config: &SuiteConfig) -> Result<Report> {
    run_suite("suite_transpose", config)
}

pub fn suite_classical_ar(config: &SuiteConfig) -> Result<Report> {
    run_suite("suite_classical_ar", config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{path_algebra_an, truncated_poly};

    fn config() -> SuiteConfig {
        SuiteConfig::new(vec![
            truncated_poly(2, 2).unwrap(),
            truncated_poly(3, 3).unwrap(),
            path_algebra_an(2, 2).unwrap(),
        ])
    }

    #[test]
    fn suites_pass_on_small_algebras() {
        let cfg = config();
        for name in SUITES {
            let r = run_suite(name, &cfg).unwrap();
            let failed: Vec<_> = r.checks.iter().filter(|c| c.status == Status::Fail).collect();
            assert!(failed.is_empty(), "{name}: {failed:#?}");
            assert!(!r.checks.is_empty());
        }
    }

    #[test]
    fn only_and_unknown() {
        let mut cfg = config();
        cfg.only = Some("k2x2@F2/yoneda/".into());
        let r = run_suite("defect", &cfg).unwrap();
        assert!(!r.checks.is_empty());
        assert!(r.checks.iter().all(|c| c.id.starts_with("k2x2@F2/yoneda/")));
        assert!(matches!(run_suite("nope", &cfg), Err(Error::UnknownSuite(_))));
    }
}
