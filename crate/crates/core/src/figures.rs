//! Data behind the four published plots, one [`CsvTable`] per curve.
//!
//! | id | content |
//! |----|---------|
//! | 3 | cognitive-relay regions (full, partial) at `P1 = P2 = 3 dB`, `P3 in {-6, 3} dB`, plus the relay-free MAC |
//! | 4 | largest unobtrusive relay rate vs `P3` (-10..20 dB) at `R1 = R2 in {0.3, 0.55}`, `P1 = P2 = 3 dB` |
//! | 5 | DF, CF and outer bound at `P = 5 dB`, `eta^2 = 10`, `gamma^2 in {1, 5}` |
//! | 6 | equal rates (lattice, DF, CF, upper bound) vs `P` (-10..40 dB), `gamma^2 = 0.1`, `eta^2 = 10` |

use crate::cmacr::{
    cf_boundary, df_and_outer_boundaries, equal_rates, EqualRates, GaussianScenario,
};
use crate::cognitive::{
    full_cognitive_boundary, mac_boundary, max_unobtrusive_r3, partial_cognitive_boundary,
    CogScenario, Cognition,
};
use crate::error::{Error, Result};
use crate::numerics::{db_to_linear, SearchConfig};
use crate::region::{BoundaryConfig, RegionBoundary};
use crate::table::CsvTable;

/// One plotted curve; `name` is a file stem.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub name: String,
    pub table: CsvTable,
}

pub const FIGURE_IDS: [u32; 4] = [3, 4, 5, 6];

/// All curves of figure `id`.
pub fn figure(id: u32) -> Result<Vec<Curve>> {
    match id {
        3 => figure3(),
        4 => figure4(),
        5 => figure5(),
        6 => figure6(),
        _ => Err(Error::Config(format!(
            "unknown figure id {id}; expected one of {FIGURE_IDS:?}"
        ))),
    }
}

/// Two-column `r1,r2` table of a boundary.
pub fn boundary_table(b: &RegionBoundary, comments: &[String]) -> Result<CsvTable> {
    let mut t = CsvTable::new(["r1", "r2"]).comment(format!("curve: {}", b.label));
    for c in comments {
        t = t.comment(c.clone());
    }
    t = t.comment(format!("r3 = {}", b.r3));
    for &(r1, r2) in &b.points {
        t.push_numbers(&[r1, r2])?;
    }
    Ok(t)
}

fn db_name(db: f64) -> String {
    if db < 0.0 {
        format!("m{}dB", -db)
    } else {
        format!("{db}dB")
    }
}

pub fn figure3() -> Result<Vec<Curve>> {
    let p = db_to_linear(3.0);
    let cfg = BoundaryConfig::default();
    let mut out = Vec::new();
    for p3_db in [-6.0, 3.0] {
        let s = CogScenario::new(p, p, db_to_linear(p3_db))?;
        let params = vec![
            "figure 3: Gaussian MAC with a cognitive relay, R3 = 0".to_string(),
            format!("P1 = P2 = 3 dB, P3 = {p3_db} dB"),
        ];
        for (mode, b) in [
            ("full", full_cognitive_boundary(&s, 0.0, &cfg)?),
            ("partial", partial_cognitive_boundary(&s, 0.0, &cfg)?),
        ] {
            out.push(Curve {
                name: format!("fig3_{mode}_p3_{}", db_name(p3_db)),
                table: boundary_table(&b, &params)?,
            });
        }
    }
    let s = CogScenario::new(p, p, 0.0)?;
    out.push(Curve {
        name: "fig3_no_relay".into(),
        table: boundary_table(
            &mac_boundary(&s, &cfg)?,
            &["figure 3: relay-free MAC reference".into(), "P1 = P2 = 3 dB".into()],
        )?,
    });
    Ok(out)
}

/// `P3` sweep of figure 4 in dB.
pub fn figure4_p3_db() -> Vec<f64> {
    (-10..=20).map(f64::from).collect()
}

pub fn figure4() -> Result<Vec<Curve>> {
    let p = db_to_linear(3.0);
    let search = SearchConfig::default();
    let mut out = Vec::new();
    for (mode, tag) in [(Cognition::Full, "full"), (Cognition::Partial, "partial")] {
        for rate in [0.3, 0.55] {
            let mut t = CsvTable::new(["p3_db", "p3", "r3"])
                .comment(format!(
                    "figure 4: largest relay rate leaving R1 = R2 = {rate} achievable, {tag} cognition"
                ))
                .comment("P1 = P2 = 3 dB");
            for p3_db in figure4_p3_db() {
                let p3 = db_to_linear(p3_db);
                let s = CogScenario::new(p, p, p3)?;
                let r3 = max_unobtrusive_r3(&s, rate, rate, mode, &search)?;
                t.push_numbers(&[p3_db, p3, r3])?;
            }
            out.push(Curve {
                name: format!("fig4_{tag}_r{rate}"),
                table: t,
            });
        }
    }
    Ok(out)
}

/// Boundaries of figure 5 for one `gamma^2`, on the outer bound's axis:
/// `[DF, CF, outer]`.
pub fn figure5_boundaries(gamma2: f64) -> Result<[RegionBoundary; 3]> {
    let p = db_to_linear(5.0);
    let s = GaussianScenario::new(p, p, p, gamma2, 10.0)?;
    let (df, outer) = df_and_outer_boundaries(&s, &BoundaryConfig::default())?;
    let axis = outer
        .r1_max()
        .ok_or_else(|| Error::Infeasible("empty outer bound".into()))?;
    let cf = cf_boundary(&s, &BoundaryConfig::default().on_axis(axis))?;
    Ok([df, cf, outer])
}

pub fn figure5() -> Result<Vec<Curve>> {
    let mut out = Vec::new();
    for gamma2 in [1.0, 5.0] {
        let params = vec![
            "figure 5: Gaussian cMACr, DF and CF regions with the outer bound".to_string(),
            format!("P1 = P2 = P3 = 5 dB, eta^2 = 10, gamma^2 = {gamma2}"),
        ];
        let [df, cf, outer] = figure5_boundaries(gamma2)?;
        for (tag, b) in [("df", df), ("cf", cf), ("outer", outer)] {
            out.push(Curve {
                name: format!("fig5_{tag}_gamma2_{gamma2}"),
                table: boundary_table(&b, &params)?,
            });
        }
    }
    Ok(out)
}

/// Power sweep of figure 6 in dB (1 dB steps).
pub fn figure6_p_db() -> Vec<f64> {
    (-10..=40).map(f64::from).collect()
}

/// Equal rates of every scheme at each point of [`figure6_p_db`].
pub fn figure6_rates() -> Result<Vec<(f64, EqualRates)>> {
    let search = SearchConfig::default();
    figure6_p_db()
        .into_iter()
        .map(|db| Ok((db, equal_rates(db_to_linear(db), 0.1, 10.0, &search)?)))
        .collect()
}

pub fn figure6() -> Result<Vec<Curve>> {
    let rates = figure6_rates()?;
    type Scheme = (&'static str, &'static str, fn(&EqualRates) -> f64);
    let schemes: [Scheme; 4] = [
        ("lattice", "nested lattice codes, relay decodes the modulo sum", |r| r.lattice),
        ("df", "decode-and-forward", |r| r.df),
        ("cf", "compress-and-forward", |r| r.cf),
        ("upper", "outer bound", |r| r.upper),
    ];
    let mut out = Vec::new();
    for (tag, what, get) in schemes {
        let mut t = CsvTable::new(["p_db", "p", "rate"])
            .comment(format!("figure 6: equal rate R1 = R2, {what}"))
            .comment("P1 = P2 = P3 = P, gamma^2 = 0.1, eta^2 = 10");
        for (db, r) in &rates {
            t.push_numbers(&[*db, r.p, get(r)])?;
        }
        out.push(Curve {
            name: format!("fig6_{tag}"),
            table: t,
        });
    }
    Ok(out)
}
