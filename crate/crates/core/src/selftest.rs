//! Built-in consistency checks: closed forms against brute force, the
//! optimizer against a dense grid, and region containments.

use std::time::{Duration, Instant};

use crate::binary::{binary_capacity_constraints, brute_force_channel_oracle, BinaryScenario};
use crate::cmacr::{lattice_equal_rate, symmetric_upper_bound, GaussianScenario};
use crate::cognitive::{full_cognitive_boundary, partial_cognitive_boundary, CogScenario};
use crate::error::Result;
use crate::figures::{figure5_boundaries, figure6_rates};
use crate::gf2::{run_sim, RelayDecoder, SimConfig, DEFAULT_CAP};
use crate::numerics::{db_to_linear, half_log2, quarter_log2, SearchConfig};
use crate::region::BoundaryConfig;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SelftestOptions {
    /// Added to `Hb` in the closed-form binary constraints. Nonzero values
    /// exist to prove the suite can fail.
    pub hb_perturbation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> CheckResult {
    let start = Instant::now();
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    CheckResult {
        name,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

fn binary_oracle(opts: SelftestOptions) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for (e1, e2, e3) in [(0.11, 0.11, 0.02), (0.05, 0.2, 0.3), (0.0, 0.5, 0.25)] {
        let b = BinaryScenario::new(e1, e2, e3)?;
        let c = binary_capacity_constraints(&b)?;
        let d = opts.hb_perturbation;
        let o = brute_force_channel_oracle(&b, 201)?;
        worst = worst
            .max((o.relay_r1.value - (c.r1 - d)).abs())
            .max((o.relay_r2.value - (c.r2 - d)).abs())
            .max((o.sum_rate() - (c.sum - d)).abs());
    }
    Ok((worst <= 1e-6, format!("max |oracle - closed form| = {worst:.3e}")))
}

/// Dense `n x n` grid over `(alpha, alpha3)` of the symmetric upper bound.
fn dense_upper(p: f64, g2: f64, e2: f64, n: usize) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for i in 0..n {
        let a = i as f64 / (n - 1) as f64;
        for j in 0..n {
            let a3 = j as f64 / (n - 1) as f64;
            let x = a * a3;
            let relay_arg = 1.0 + g2 * p * (1.0 - 2.0 * x) / (1.0 - x);
            if !(relay_arg > 0.0) {
                continue;
            }
            let v = half_log2(relay_arg)
                .min(half_log2(1.0 + p + e2 * p * (1.0 - a3)))
                .min(quarter_log2(1.0 + p * (1.0 + e2 + 2.0 * (e2 * x).sqrt())));
            best = best.max(v);
        }
    }
    best.max(0.0)
}

fn optimizer_vs_grid() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for (p, g2, e2) in [(10.0, 0.1, 10.0), (3.0, 2.0, 0.5)] {
        let s = GaussianScenario::symmetric(p, g2, e2)?;
        let opt = symmetric_upper_bound(&s, &SearchConfig::default())?.rate;
        let grid = dense_upper(p, g2, e2, 501);
        // the optimizer may beat the grid, never lose to it by much
        worst = worst.max(grid - opt);
    }
    Ok((worst <= 1e-4, format!("grid - optimizer <= {worst:.3e}")))
}

fn containment() -> Result<(bool, String)> {
    let [df, cf, outer] = figure5_boundaries(1.0)?;
    let df_gap = outer.max_shortfall(&df);
    let cf_gap = outer.max_shortfall(&cf);
    let p = db_to_linear(3.0);
    let s = CogScenario::new(p, p, p)?;
    let cfg = BoundaryConfig::default();
    let full = full_cognitive_boundary(&s, 0.0, &cfg)?;
    let partial = partial_cognitive_boundary(&s, 0.0, &cfg.on_axis(full.r1_max().unwrap_or(0.0)))?;
    let cog_gap = full.max_shortfall(&partial);
    let lat_gap = figure6_rates()?
        .iter()
        .map(|(_, r)| r.lattice - r.upper)
        .fold(f64::NEG_INFINITY, f64::max);
    let ok = df_gap <= 1e-9 && cf_gap <= 1e-9 && cog_gap <= 1e-9 && lat_gap <= 1e-9;
    Ok((
        ok,
        format!(
            "DF over outer {df_gap:.2e}, CF over outer {cf_gap:.2e}, partial over full {cog_gap:.2e}, lattice over upper {lat_gap:.2e}"
        ),
    ))
}

fn lattice_spot() -> Result<(bool, String)> {
    let r = lattice_equal_rate(&GaussianScenario::symmetric(10.0, 0.1, 10.0)?)?;
    let expect = 0.5 * 1.5f64.log2();
    Ok(((r - expect).abs() < 1e-12, format!("lattice rate at P = 10: {r}")))
}

fn noiseless_sim() -> Result<(bool, String)> {
    let mut errors = 0;
    for (n, k1, k2, mode) in [
        (8, 2, 1, RelayDecoder::Xor),
        (16, 4, 4, RelayDecoder::Joint),
        (24, 6, 3, RelayDecoder::Xor),
    ] {
        let r = run_sim(&SimConfig {
            scenario: BinaryScenario::new(0.0, 0.0, 0.0)?,
            n,
            k1,
            k2,
            num_blocks: 3,
            trials: 50,
            master_seed: 1,
            relay_decoder: mode,
            cap: DEFAULT_CAP,
        })?;
        errors += r.relay_errors + r.rx1_errors + r.rx2_errors;
    }
    Ok((errors == 0, format!("{errors} errors over noiseless runs")))
}

/// Runs every check in a fixed order.
pub fn run_selftest(opts: SelftestOptions) -> Vec<CheckResult> {
    vec![
        check("binary closed form vs brute force", || binary_oracle(opts)),
        check("optimizer vs dense grid", optimizer_vs_grid),
        check("region containments", containment),
        check("lattice rate spot value", lattice_spot),
        check("noiseless simulation", noiseless_sim),
    ]
}
