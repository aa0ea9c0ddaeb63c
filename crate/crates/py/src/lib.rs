//! Python bindings. Regions come back as lists of `(r1, r2)` tuples, scalar
//! bundles as dicts, and library errors as `ValueError`.

use std::collections::BTreeMap;

use cmacr::binary::{
    binary_capacity_constraints, binary_df_constraints, brute_force_channel_oracle, BinaryConstraints,
    BinaryScenario,
};
use cmacr::cmacr::{cf_boundary, df_boundary, equal_rates, outer_boundary, GaussianScenario};
use cmacr::cognitive::{full_cognitive_boundary, partial_cognitive_boundary, CogScenario};
use cmacr::gf2::{run_sim, RelayDecoder, SimConfig, SimReport};
use cmacr::{BoundaryConfig, RegionBoundary, SearchConfig};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn py_err(e: cmacr::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn points(b: RegionBoundary) -> Vec<(f64, f64)> {
    b.points
}

fn axis(points: usize) -> BoundaryConfig {
    BoundaryConfig {
        axis_points: points,
        ..BoundaryConfig::default()
    }
}

pub fn constraints_map(c: &BinaryConstraints) -> BTreeMap<&'static str, f64> {
    let mut m = BTreeMap::from([("r1", c.r1), ("r2", c.r2), ("sum", c.sum)]);
    if let Some(r) = c.relay_sum {
        m.insert("relay_sum", r);
    }
    m
}

pub fn parse_decoder(name: &str) -> Result<RelayDecoder, String> {
    match name {
        "xor" => Ok(RelayDecoder::Xor),
        "joint" => Ok(RelayDecoder::Joint),
        other => Err(format!("relay_decoder must be \"xor\" or \"joint\", got {other:?}")),
    }
}

pub fn report_map(r: &SimReport) -> BTreeMap<&'static str, f64> {
    BTreeMap::from([
        ("relay_error_rate", r.relay_error_rate),
        ("rx1_error_rate", r.rx1_error_rate),
        ("rx2_error_rate", r.rx2_error_rate),
        ("end_to_end_error_rate", r.end_to_end_error_rate),
        ("failed_trials", r.failed_trials as f64),
        ("trials", r.trials as f64),
    ])
}

#[pymodule]
pub mod cmacr_py {
    use super::*;

    #[pymodule_export]
    const VERSION: &str = cmacr::VERSION;

    /// Binary entropy in bits.
    #[pyfunction]
    fn hb(p: f64) -> PyResult<f64> {
        cmacr::numerics::hb(p).map_err(py_err)
    }

    #[pyfunction]
    fn db_to_linear(db: f64) -> f64 {
        cmacr::numerics::db_to_linear(db)
    }

    #[pyfunction]
    fn binary_capacity(eps1: f64, eps2: f64, eps3: f64) -> PyResult<BTreeMap<&'static str, f64>> {
        let b = BinaryScenario::new(eps1, eps2, eps3).map_err(py_err)?;
        Ok(constraints_map(&binary_capacity_constraints(&b).map_err(py_err)?))
    }

    #[pyfunction]
    fn binary_df(eps1: f64, eps2: f64, eps3: f64) -> PyResult<BTreeMap<&'static str, f64>> {
        let b = BinaryScenario::new(eps1, eps2, eps3).map_err(py_err)?;
        Ok(constraints_map(&binary_df_constraints(&b).map_err(py_err)?))
    }

    /// Grid maxima of the mutual informations behind the binary constraints.
    #[pyfunction]
    #[pyo3(signature = (eps1, eps2, eps3, grid_n = 201))]
    fn binary_oracle(eps1: f64, eps2: f64, eps3: f64, grid_n: usize) -> PyResult<BTreeMap<&'static str, f64>> {
        let b = BinaryScenario::new(eps1, eps2, eps3).map_err(py_err)?;
        let o = brute_force_channel_oracle(&b, grid_n).map_err(py_err)?;
        Ok(BTreeMap::from([
            ("relay_r1", o.relay_r1.value),
            ("relay_r2", o.relay_r2.value),
            ("rx1", o.rx1.value),
            ("rx2", o.rx2.value),
        ]))
    }

    /// Gaussian cMACr region: `kind` is "df", "cf" or "outer"; powers linear.
    #[pyfunction]
    #[pyo3(signature = (kind, p1, p2, p3, gamma2, eta2, axis_points = 201))]
    fn gaussian_region(
        kind: &str,
        p1: f64,
        p2: f64,
        p3: f64,
        gamma2: f64,
        eta2: f64,
        axis_points: usize,
    ) -> PyResult<Vec<(f64, f64)>> {
        let s = GaussianScenario::new(p1, p2, p3, gamma2, eta2).map_err(py_err)?;
        let cfg = axis(axis_points);
        let b = match kind {
            "df" => df_boundary(&s, &cfg),
            "cf" => cf_boundary(&s, &cfg),
            "outer" => outer_boundary(&s, &cfg),
            other => return Err(PyValueError::new_err(format!("unknown region kind {other:?}"))),
        };
        Ok(points(b.map_err(py_err)?))
    }

    /// Cognitive-relay region at fixed `r3`: `full` or partial cognition.
    #[pyfunction]
    #[pyo3(signature = (p1, p2, p3, r3 = 0.0, full = true, axis_points = 201))]
    fn cognitive_region(
        p1: f64,
        p2: f64,
        p3: f64,
        r3: f64,
        full: bool,
        axis_points: usize,
    ) -> PyResult<Vec<(f64, f64)>> {
        let s = CogScenario::new(p1, p2, p3).map_err(py_err)?;
        let cfg = axis(axis_points);
        let b = if full {
            full_cognitive_boundary(&s, r3, &cfg)
        } else {
            partial_cognitive_boundary(&s, r3, &cfg)
        };
        Ok(points(b.map_err(py_err)?))
    }

    /// Equal rates of the lattice, DF, CF schemes and the upper bound at
    /// `P1 = P2 = P3 = p` (linear).
    #[pyfunction]
    fn symmetric_rates(p: f64, gamma2: f64, eta2: f64) -> PyResult<BTreeMap<&'static str, f64>> {
        let r = equal_rates(p, gamma2, eta2, &SearchConfig::default()).map_err(py_err)?;
        Ok(BTreeMap::from([("lattice", r.lattice), ("df", r.df), ("cf", r.cf), ("upper", r.upper)]))
    }

    #[pyfunction]
    #[pyo3(signature = (eps1, eps2, eps3, n, k1, k2, num_blocks, trials, seed, relay_decoder = "xor", cap = cmacr::gf2::DEFAULT_CAP))]
    #[allow(clippy::too_many_arguments)]
    fn simulate(
        py: Python<'_>,
        eps1: f64,
        eps2: f64,
        eps3: f64,
        n: usize,
        k1: usize,
        k2: usize,
        num_blocks: usize,
        trials: u64,
        seed: u64,
        relay_decoder: &str,
        cap: usize,
    ) -> PyResult<BTreeMap<&'static str, f64>> {
        let cfg = SimConfig {
            scenario: BinaryScenario::new(eps1, eps2, eps3).map_err(py_err)?,
            n,
            k1,
            k2,
            num_blocks,
            trials,
            master_seed: seed,
            relay_decoder: parse_decoder(relay_decoder).map_err(PyValueError::new_err)?,
            cap,
        };
        let r = py.detach(|| run_sim(&cfg)).map_err(py_err)?;
        Ok(report_map(&r))
    }

    /// CSV text of every curve of a figure, keyed by curve name.
    #[pyfunction]
    fn figure(py: Python<'_>, id: u32) -> PyResult<BTreeMap<String, String>> {
        let curves = py.detach(|| cmacr::figures::figure(id)).map_err(py_err)?;
        Ok(curves.into_iter().map(|c| (c.name, c.table.to_csv_string())).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constraint_keys() {
        let b = BinaryScenario::new(0.0, 0.0, 0.0).unwrap();
        let m = constraints_map(&binary_df_constraints(&b).unwrap());
        assert_eq!(m.keys().copied().collect::<Vec<_>>(), ["r1", "r2", "relay_sum", "sum"]);
        assert!(m.values().all(|&v| v == 1.0));
        assert!(!constraints_map(&binary_capacity_constraints(&b).unwrap()).contains_key("relay_sum"));
    }

    #[test]
    fn decoder_names() {
        assert_eq!(parse_decoder("xor"), Ok(RelayDecoder::Xor));
        assert_eq!(parse_decoder("joint"), Ok(RelayDecoder::Joint));
        assert!(parse_decoder("XOR").is_err());
    }
}
