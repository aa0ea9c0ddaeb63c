//! Scenario files: one JSON document per run.
//!
//! ```json
//! {
//!   "scenario": { "type": "gaussian", "p1_db": 5, "p2_db": 5, "p3_db": 5, "gamma2": 1, "eta2": 10 },
//!   "grid": { "axis_points": 201 }
//! }
//! ```
//!
//! Powers are in dB. Unknown fields anywhere are rejected.

use std::path::Path;

use cmacr::binary::BinaryScenario;
use cmacr::cmacr::GaussianScenario;
use cmacr::cognitive::CogScenario;
use cmacr::gf2::{RelayDecoder, SimConfig, DEFAULT_CAP};
use cmacr::numerics::db_to_linear;
use cmacr::{BoundaryConfig, LinkCapacity, SearchConfig};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Scenario {
    Gaussian {
        p1_db: f64,
        p2_db: f64,
        p3_db: f64,
        gamma2: f64,
        eta2: f64,
    },
    Cognitive {
        p1_db: f64,
        p2_db: f64,
        p3_db: f64,
        /// Relay's own rate.
        #[serde(default)]
        r3: f64,
        /// Source-to-relay link capacities in bits; absent means unlimited.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c1: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c2: Option<f64>,
    },
    Binary {
        eps1: f64,
        eps2: f64,
        eps3: f64,
    },
}

impl Scenario {
    pub fn kind(&self) -> &'static str {
        match self {
            Scenario::Gaussian { .. } => "gaussian",
            Scenario::Cognitive { .. } => "cognitive",
            Scenario::Binary { .. } => "binary",
        }
    }

    fn mismatch(&self, want: &str) -> CliError {
        CliError::input(format!("this command needs a {want} scenario, got {}", self.kind()))
    }

    pub fn gaussian(&self) -> Result<GaussianScenario, CliError> {
        match *self {
            Scenario::Gaussian { p1_db, p2_db, p3_db, gamma2, eta2 } => Ok(GaussianScenario::new(
                db_to_linear(p1_db),
                db_to_linear(p2_db),
                db_to_linear(p3_db),
                gamma2,
                eta2,
            )?),
            _ => Err(self.mismatch("gaussian")),
        }
    }

    /// Powers, `r3` and the two link capacities.
    pub fn cognitive(&self) -> Result<(CogScenario, f64, LinkCapacity, LinkCapacity), CliError> {
        match *self {
            Scenario::Cognitive { p1_db, p2_db, p3_db, r3, c1, c2 } => {
                let link = |c: Option<f64>| c.map_or(LinkCapacity::Infinite, LinkCapacity::Finite);
                Ok((
                    CogScenario::new(db_to_linear(p1_db), db_to_linear(p2_db), db_to_linear(p3_db))?,
                    r3,
                    link(c1),
                    link(c2),
                ))
            }
            _ => Err(self.mismatch("cognitive")),
        }
    }

    pub fn binary(&self) -> Result<BinaryScenario, CliError> {
        match *self {
            Scenario::Binary { eps1, eps2, eps3 } => Ok(BinaryScenario::new(eps1, eps2, eps3)?),
            _ => Err(self.mismatch("binary")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSettings {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis_points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchConfig>,
}

impl GridSettings {
    pub fn boundary_config(&self) -> BoundaryConfig {
        let d = BoundaryConfig::default();
        BoundaryConfig {
            axis_points: self.axis_points.unwrap_or(d.axis_points),
            search: self.search,
            ..d
        }
    }

    pub fn search(&self) -> SearchConfig {
        self.search.unwrap_or_default()
    }
}

/// Which relay decoder(s) a simulation runs. `both` runs the two on the same
/// seeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecoderChoice {
    Xor,
    Joint,
    Both,
}

impl DecoderChoice {
    pub fn decoders(self) -> Vec<RelayDecoder> {
        match self {
            DecoderChoice::Xor => vec![RelayDecoder::Xor],
            DecoderChoice::Joint => vec![RelayDecoder::Joint],
            DecoderChoice::Both => vec![RelayDecoder::Xor, RelayDecoder::Joint],
        }
    }
}

fn default_cap() -> usize {
    DEFAULT_CAP
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimSettings {
    pub n: usize,
    pub k1: usize,
    pub k2: usize,
    pub num_blocks: usize,
    pub trials: u64,
    pub seed: u64,
    pub relay_decoder: DecoderChoice,
    #[serde(default = "default_cap")]
    pub cap: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub scenario: Scenario,
    #[serde(default)]
    pub grid: GridSettings,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sim: Option<SimSettings>,
}

impl ScenarioFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::input(format!("scenario file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// One-line JSON echo for CSV comments.
    pub fn echo(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }

    /// Simulation configs, one per requested decoder.
    pub fn sim_configs(&self) -> Result<Vec<SimConfig>, CliError> {
        let sim = self
            .sim
            .ok_or_else(|| CliError::input("scenario file has no \"sim\" section"))?;
        let scenario = self.scenario.binary()?;
        Ok(sim
            .relay_decoder
            .decoders()
            .into_iter()
            .map(|relay_decoder| SimConfig {
                scenario,
                n: sim.n,
                k1: sim.k1,
                k2: sim.k2,
                num_blocks: sim.num_blocks,
                trials: sim.trials,
                master_seed: sim.seed,
                relay_decoder,
                cap: sim.cap,
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        let g = ScenarioFile::from_json(
            r#"{"scenario": {"type": "gaussian", "p1_db": 5, "p2_db": 5, "p3_db": 5, "gamma2": 1, "eta2": 10}}"#,
        )
        .unwrap();
        assert!((g.scenario.gaussian().unwrap().p1 - 10f64.sqrt()).abs() < 1e-12);
        let c = ScenarioFile::from_json(
            r#"{"scenario": {"type": "cognitive", "p1_db": 3, "p2_db": 3, "p3_db": -6, "c1": 0.5}}"#,
        )
        .unwrap();
        let (_, r3, c1, c2) = c.scenario.cognitive().unwrap();
        assert_eq!((r3, c1, c2), (0.0, LinkCapacity::Finite(0.5), LinkCapacity::Infinite));
        let b = ScenarioFile::from_json(
            r#"{"scenario": {"type": "binary", "eps1": 0.05, "eps2": 0.05, "eps3": 0.2},
                "sim": {"n": 24, "k1": 6, "k2": 6, "num_blocks": 4, "trials": 10, "seed": 1, "relay_decoder": "both"}}"#,
        )
        .unwrap();
        let cfgs = b.sim_configs().unwrap();
        assert_eq!(cfgs.len(), 2);
        assert_eq!(cfgs[0].cap, DEFAULT_CAP);
    }

    #[test]
    fn rejects_unknown_fields() {
        for text in [
            r#"{"scenario": {"type": "binary", "eps1": 0, "eps2": 0, "eps3": 0, "eps4": 0}}"#,
            r#"{"scenario": {"type": "binary", "eps1": 0, "eps2": 0, "eps3": 0}, "extra": 1}"#,
            r#"{"scenario": {"type": "binary", "eps1": 0, "eps2": 0, "eps3": 0}, "grid": {"points": 3}}"#,
            r#"{"scenario": {"type": "triangle"}}"#,
        ] {
            assert_eq!(ScenarioFile::from_json(text).unwrap_err().code, 2, "{text}");
        }
    }

    #[test]
    fn kind_mismatch_is_an_input_error() {
        let b = ScenarioFile::from_json(r#"{"scenario": {"type": "binary", "eps1": 0, "eps2": 0, "eps3": 0}}"#)
            .unwrap();
        assert_eq!(b.scenario.gaussian().unwrap_err().code, 2);
        assert_eq!(b.sim_configs().unwrap_err().code, 2);
    }
}
