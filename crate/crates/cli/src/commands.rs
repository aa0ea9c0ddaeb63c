use std::fmt;
use std::path::{Path, PathBuf};

use cmacr::binary::{binary_capacity_constraints, binary_df_constraints, BinaryConstraints};
use cmacr::cmacr::{
    cf_boundary, df_boundary, lattice_equal_rate, outer_boundary, symmetric_cf_rate, symmetric_df_rate,
    symmetric_upper_bound, GaussianScenario,
};
use cmacr::cognitive::{finite_capacity_boundary, full_cognitive_boundary, partial_cognitive_boundary};
use cmacr::figures::{boundary_table, figure, Curve};
use cmacr::gf2::{run_sim, SimReport};
use cmacr::numerics::db_to_linear;
use cmacr::selftest::{run_selftest, CheckResult, SelftestOptions};
use cmacr::table::CsvTable;
use cmacr::{RegionBoundary, SearchConfig};

use crate::scenario::ScenarioFile;
use crate::{CliError, EXIT_INFEASIBLE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum RegionKind {
    CognitiveFull,
    CognitivePartial,
    CognitiveLinks,
    Df,
    Cf,
    Outer,
    Binary,
    BinaryDf,
}

impl fmt::Display for RegionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use clap::ValueEnum;
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

fn constraint_table(c: &BinaryConstraints, comments: &[String]) -> Result<CsvTable, CliError> {
    let mut t = CsvTable::new(["constraint", "bound"]);
    for line in comments {
        t = t.comment(line.clone());
    }
    let mut rows = vec![("r1", c.r1), ("r2", c.r2), ("r1+r2", c.sum)];
    if let Some(r) = c.relay_sum {
        rows.push(("r1+r2 (relay)", r));
    }
    for (name, v) in rows {
        t.push_row(vec![name.into(), v.to_string()])?;
    }
    Ok(t)
}

fn nonempty(b: RegionBoundary) -> Result<RegionBoundary, CliError> {
    if b.empty {
        Err(CliError::new(EXIT_INFEASIBLE, format!("{} region is empty for this scenario", b.label)))
    } else {
        Ok(b)
    }
}

/// Boundary (or constraint list, for binary kinds) of one region.
pub fn cmd_region(kind: RegionKind, file: &ScenarioFile) -> Result<CsvTable, CliError> {
    let cfg = file.grid.boundary_config();
    let s = &file.scenario;
    let what = match kind {
        RegionKind::CognitiveFull => "full-cognition relay region",
        RegionKind::CognitivePartial => "partial-cognition relay region",
        RegionKind::CognitiveLinks => "cognitive relay region with finite source-relay links",
        RegionKind::Df => "decode-and-forward region",
        RegionKind::Cf => "compress-and-forward region",
        RegionKind::Outer => "outer bound",
        RegionKind::Binary => "binary capacity region",
        RegionKind::BinaryDf => "binary decode-and-forward region",
    };
    let comments = [format!("region {kind}: {what}"), format!("scenario: {}", file.echo())];
    Ok(match kind {
        RegionKind::Binary => constraint_table(&binary_capacity_constraints(&s.binary()?)?, &comments)?,
        RegionKind::BinaryDf => constraint_table(&binary_df_constraints(&s.binary()?)?, &comments)?,
        _ => {
            let b = match kind {
                RegionKind::CognitiveFull => {
                    let (c, r3, ..) = s.cognitive()?;
                    full_cognitive_boundary(&c, r3, &cfg)?
                }
                RegionKind::CognitivePartial => {
                    let (c, r3, ..) = s.cognitive()?;
                    partial_cognitive_boundary(&c, r3, &cfg)?
                }
                RegionKind::CognitiveLinks => {
                    let (c, r3, c1, c2) = s.cognitive()?;
                    finite_capacity_boundary(&c, c1, c2, r3, &cfg)?
                }
                RegionKind::Df => df_boundary(&s.gaussian()?, &cfg)?,
                RegionKind::Cf => cf_boundary(&s.gaussian()?, &cfg)?,
                RegionKind::Outer => outer_boundary(&s.gaussian()?, &cfg)?,
                RegionKind::Binary | RegionKind::BinaryDf => unreachable!(),
            };
            boundary_table(&nonempty(b)?, &comments)?
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum RateScheme {
    Df,
    Cf,
    Lattice,
    Upper,
}

/// Parses `start:stop:step` or a single value (all in dB).
pub fn parse_db_range(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::input(format!("bad dB range {text:?}; expected START:STOP:STEP or a single value"));
    let parts: Vec<f64> = text
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let (start, stop, step) = match parts[..] {
        [v] => (v, v, 1.0),
        [a, b, c] => (a, b, c),
        _ => return Err(bad()),
    };
    if !(start.is_finite() && stop.is_finite() && step > 0.0 && step.is_finite() && stop >= start) {
        return Err(bad());
    }
    // tolerate rounding in (stop - start) / step
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 100_000 {
        return Err(CliError::input(format!("dB range {text:?} has {count} points (limit 100000)")));
    }
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

/// Equal rate `R1 = R2` of one scheme over a power sweep.
pub fn cmd_rate(
    scheme: RateScheme,
    p_db: &[f64],
    gamma2: f64,
    eta2: f64,
    search: &SearchConfig,
) -> Result<CsvTable, CliError> {
    if p_db.is_empty() {
        return Err(CliError::input("empty power sweep"));
    }
    let what = match scheme {
        RateScheme::Df => "decode-and-forward",
        RateScheme::Cf => "compress-and-forward",
        RateScheme::Lattice => "nested lattice codes, relay decodes the modulo sum",
        RateScheme::Upper => "outer bound",
    };
    let mut t = CsvTable::new(["p_db", "p", "rate"])
        .comment(format!("equal rate R1 = R2, {what}"))
        .comment(format!("P1 = P2 = P3 = P, gamma^2 = {gamma2}, eta^2 = {eta2}"));
    for &db in p_db {
        let p = db_to_linear(db);
        let s = GaussianScenario::symmetric(p, gamma2, eta2)?;
        let rate = match scheme {
            RateScheme::Df => symmetric_df_rate(&s, search)?.rate,
            RateScheme::Cf => symmetric_cf_rate(&s, search)?.0,
            RateScheme::Lattice => lattice_equal_rate(&s)?,
            RateScheme::Upper => symmetric_upper_bound(&s, search)?.rate,
        };
        t.push_numbers(&[db, p, rate])?;
    }
    Ok(t)
}

/// Computes figure `id` and, when `out_dir` is given, writes `<name>.csv` per
/// curve. Returns the curves and the written paths.
pub fn cmd_figure(id: u32, out_dir: Option<&Path>) -> Result<(Vec<Curve>, Vec<PathBuf>), CliError> {
    let curves = figure(id)?;
    let mut paths = Vec::new();
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        for c in &curves {
            let path = dir.join(format!("{}.csv", c.name));
            std::fs::write(&path, c.table.to_csv_string()).map_err(|e| CliError::io(&path, e))?;
            paths.push(path);
        }
    }
    Ok((curves, paths))
}

/// Simulation output: the reports plus their JSON and CSV renderings.
#[derive(Debug, Clone, PartialEq)]
pub struct SimOutput {
    pub reports: Vec<SimReport>,
    /// A single object for one decoder, an array for `both`.
    pub json: String,
    pub csv: String,
}

impl SimOutput {
    /// One human-readable line per report.
    pub fn summary(&self) -> Vec<String> {
        self.reports
            .iter()
            .map(|r| {
                format!(
                    "{}: relay {:.6}  rx1 {:.6}  rx2 {:.6}  end-to-end {:.6}  ({} trials x {} blocks, seed {})",
                    r.config.relay_decoder,
                    r.relay_error_rate,
                    r.rx1_error_rate,
                    r.rx2_error_rate,
                    r.end_to_end_error_rate,
                    r.trials,
                    r.blocks,
                    r.seed
                )
            })
            .collect()
    }
}

pub fn cmd_sim(file: &ScenarioFile) -> Result<SimOutput, CliError> {
    let configs = file.sim_configs()?;
    for c in &configs {
        c.validate()?;
    }
    let reports = configs.iter().map(run_sim).collect::<Result<Vec<_>, _>>()?;
    let json = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0])
    } else {
        serde_json::to_string_pretty(&reports)
    }
    .expect("plain data")
        + "\n";
    let mut t = CsvTable::new(SimReport::CSV_HEADER)
        .comment("Monte Carlo block error rates, linear codes over GF(2) with block-Markov relaying")
        .comment(format!("scenario: {}", file.echo()));
    for r in &reports {
        t.push_row(r.csv_record())?;
    }
    Ok(SimOutput {
        reports,
        json,
        csv: t.to_csv_string(),
    })
}

/// Runs the built-in checks; the bool is true when all passed.
pub fn cmd_selftest(opts: SelftestOptions) -> (bool, Vec<CheckResult>) {
    let results = run_selftest(opts);
    (results.iter().all(|c| c.passed), results)
}
