//! Acceptance criteria, one line each: `criterion N: PASS|FAIL (time) detail`.
//! Exits non-zero if any criterion fails.

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cmacr::binary::{
    binary_capacity_constraints, binary_df_constraints, brute_force_channel_oracle, contains, BinaryScenario,
};
use cmacr::cmacr::{lattice_equal_rate, symmetric_df_rate, symmetric_upper_bound, GaussianScenario};
use cmacr::cognitive::{
    finite_capacity_boundary, full_cognitive_boundary, mac_boundary, max_unobtrusive_r3,
    partial_cognitive_boundary, CogScenario, Cognition,
};
use cmacr::figures::{figure5_boundaries, figure6_rates};
use cmacr::gf2::{derive_seed, run_sim, RelayDecoder, SimConfig, DEFAULT_CAP};
use cmacr::numerics::{db_to_linear, half_log2, quarter_log2};
use cmacr::{BoundaryConfig, LinkCapacity, SearchConfig};
use cmacr_cli::{cmd_figure, cmd_sim, ScenarioFile};

type Outcome = Result<String, String>;

/// Deterministic uniform draws in `[0, 1)`.
struct Uniform {
    seed: u64,
    next: u64,
}

impl Uniform {
    fn new(seed: u64) -> Self {
        Self { seed, next: 0 }
    }

    fn draw(&mut self) -> f64 {
        self.next += 1;
        (derive_seed(self.seed, self.next) >> 11) as f64 / (1u64 << 53) as f64
    }

    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.draw()
    }

    fn int(&mut self, lo: usize, hi: usize) -> usize {
        lo + ((hi - lo + 1) as f64 * self.draw()) as usize
    }
}

fn within(elapsed: Duration, limit_s: f64) -> Result<(), String> {
    if elapsed.as_secs_f64() < limit_s {
        Ok(())
    } else {
        Err(format!("took {:.1} s, limit {limit_s} s", elapsed.as_secs_f64()))
    }
}

fn binary_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = Uniform::new(1);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let b = BinaryScenario::new(rng.range(0.0, 0.5), rng.range(0.0, 0.5), rng.range(0.0, 0.5)).unwrap();
        let c = binary_capacity_constraints(&b).unwrap();
        let o = brute_force_channel_oracle(&b, 1001).unwrap();
        worst = worst
            .max((o.relay_r1.value - c.r1).abs())
            .max((o.relay_r2.value - c.r2).abs())
            .max((o.sum_rate() - c.sum).abs());
    }
    within(start.elapsed(), 30.0)?;
    let detail = format!("20 scenarios, grid 1001, max |oracle - closed form| = {worst:.2e}");
    if worst <= 1e-6 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn df_witness() -> Outcome {
    let b = BinaryScenario::new(0.05, 0.05, 0.2).unwrap();
    let cap = binary_capacity_constraints(&b).unwrap();
    let df = binary_df_constraints(&b).unwrap();
    if !contains(&cap, 0.25, 0.25) || contains(&df, 0.25, 0.25) {
        return Err("(0.25, 0.25) is not a DF-suboptimality witness".into());
    }
    let mut rng = Uniform::new(2);
    for i in 0..20 {
        let e1 = rng.range(0.0, 0.5);
        let e2 = rng.range(0.0, 0.5);
        let e3 = rng.range(0.0, e1.min(e2));
        let b = BinaryScenario::new(e1, e2, e3).unwrap();
        if !binary_capacity_constraints(&b)
            .unwrap()
            .same_region(&binary_df_constraints(&b).unwrap())
        {
            return Err(format!("scenario {i} ({e1}, {e2}, {e3}): DF region differs from capacity"));
        }
    }
    Ok(format!(
        "(0.25, 0.25): capacity sum {:.4} >= 0.5, DF relay sum {:.4} < 0.5; 20 scenarios with eps3 <= min(eps1, eps2) coincide",
        cap.sum,
        df.relay_sum.unwrap()
    ))
}

fn scenario_file(name: &str) -> ScenarioFile {
    ScenarioFile::load(&Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)).unwrap()
}

fn xor_vs_joint() -> Outcome {
    let start = Instant::now();
    let out = cmd_sim(&scenario_file("binary_xor_vs_joint.json")).map_err(|e| e.to_string())?;
    within(start.elapsed(), 120.0)?;
    let rate = |d: RelayDecoder| {
        out.reports
            .iter()
            .find(|r| r.config.relay_decoder == d)
            .map(|r| r.relay_error_rate)
            .unwrap()
    };
    let (xor, joint) = (rate(RelayDecoder::Xor), rate(RelayDecoder::Joint));
    let detail = format!("relay error rate xor {xor:.4} vs joint {joint:.4} (n = 24, k = 6, 2000 trials)");
    if xor <= 0.5 * joint {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn noiseless_and_monotone() -> Outcome {
    let mut rng = Uniform::new(4);
    let clean = BinaryScenario::new(0.0, 0.0, 0.0).unwrap();
    for i in 0..100 {
        let n = rng.int(2, 40);
        let k1 = rng.int(1, (n - 1).min(DEFAULT_CAP));
        let k2 = rng.int(1, (n - k1).min(DEFAULT_CAP));
        let cfg = SimConfig {
            scenario: clean,
            n,
            k1,
            k2,
            num_blocks: rng.int(2, 5),
            trials: 20,
            master_seed: rng.int(0, 1 << 30) as u64,
            relay_decoder: if rng.draw() < 0.5 { RelayDecoder::Xor } else { RelayDecoder::Joint },
            cap: DEFAULT_CAP,
        };
        if k1 + k2 > DEFAULT_CAP + 4 {
            continue;
        }
        let r = run_sim(&cfg).map_err(|e| format!("config {i}: {e}"))?;
        let rates = [r.relay_error_rate, r.rx1_error_rate, r.rx2_error_rate, r.end_to_end_error_rate];
        if rates.iter().any(|&x| x != 0.0) {
            return Err(format!("config {i} {cfg:?}: nonzero rates {rates:?}"));
        }
    }
    // one-sided two-proportion z-test on per-trial failures
    let noisy = BinaryScenario::new(0.05, 0.05, 0.2).unwrap();
    let run = |n: usize| {
        let k = n / 8;
        run_sim(&SimConfig {
            scenario: noisy,
            n,
            k1: k,
            k2: k,
            num_blocks: 4,
            trials: 5000,
            master_seed: 2024,
            relay_decoder: RelayDecoder::Xor,
            cap: DEFAULT_CAP,
        })
        .unwrap()
        .end_to_end_error_rate
    };
    let (short, long) = (run(8), run(24));
    let pooled = (short + long) / 2.0;
    let z = (short - long) / (pooled * (1.0 - pooled) * (2.0 / 5000.0)).sqrt();
    let detail = format!(
        "100 noiseless configs error-free; end-to-end error n = 8: {short:.4}, n = 24: {long:.4}, z = {z:.1}"
    );
    if z > 1.645 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn gaussian_containment() -> Outcome {
    let start = Instant::now();
    let [df1, cf1, outer1] = figure5_boundaries(1.0).map_err(|e| e.to_string())?;
    let [df5, cf5, outer5] = figure5_boundaries(5.0).map_err(|e| e.to_string())?;
    within(start.elapsed(), 60.0)?;
    let contain = [
        outer1.max_shortfall(&df1),
        outer1.max_shortfall(&cf1),
        outer5.max_shortfall(&df5),
        outer5.max_shortfall(&cf5),
    ];
    let worst = contain.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let cf_gain = df1.max_shortfall(&cf1);
    let df_margin = df5.max_shortfall(&cf5);
    let detail = format!(
        "{} R1 samples; worst excess over outer {worst:.2e}; CF over DF at gamma^2 = 1: up to {cf_gain:.4}; at gamma^2 = 5: {df_margin:.4}",
        outer1.points.len()
    );
    if outer1.points.len() == 201 && worst <= 1e-9 && cf_gain > 0.0 && df_margin <= 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fig6_crossover() -> Outcome {
    let start = Instant::now();
    let rates = figure6_rates().map_err(|e| e.to_string())?;
    within(start.elapsed(), 60.0)?;
    let over = rates
        .iter()
        .map(|(_, r)| r.lattice - r.upper)
        .fold(f64::NEG_INFINITY, f64::max);
    let at = |db: f64| rates.iter().find(|(d, _)| *d == db).map(|(_, r)| *r).unwrap();
    let (hi, lo) = (at(30.0), at(0.0));
    let detail = format!(
        "lattice - upper <= {over:.2e}; 30 dB: lattice {:.4} vs DF {:.4}, CF {:.4}; 0 dB: lattice {:.4} vs DF {:.4}, CF {:.4}",
        hi.lattice, hi.df, hi.cf, lo.lattice, lo.df, lo.cf
    );
    if over <= 1e-9 && hi.lattice > hi.df.max(hi.cf) && lo.df.max(lo.cf) > lo.lattice {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn multiplexing_gain() -> Outcome {
    let p = db_to_linear(60.0);
    let s = GaussianScenario::symmetric(p, 0.1, 10.0).unwrap();
    let df = symmetric_df_rate(&s, &SearchConfig::default()).unwrap().rate;
    let lattice = lattice_equal_rate(&s).unwrap();
    let norm = half_log2(p);
    let (rd, rl) = (df / norm, lattice / norm);
    let detail = format!(
        "P = 60 dB: DF/(1/2 log2 P) = {rd:.4} (capped by (1/4) log2(1 + 2 gamma^2 P) = {:.4}), lattice/(1/2 log2 P) = {rl:.4}; target [0.45, 0.55]",
        quarter_log2(1.0 + 0.2 * p) / norm
    );
    if (0.45..=0.55).contains(&rd) && (0.45..=0.55).contains(&rl) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Upper-bound objective written out independently of the library.
fn upper_objective(p: f64, g2: f64, e2: f64, a: f64, a3: f64) -> f64 {
    let x = a * a3;
    let relay = 1.0 + g2 * p * (1.0 - 2.0 * x) / (1.0 - x);
    if relay <= 0.0 || relay.is_nan() {
        return f64::NEG_INFINITY;
    }
    let t1 = 0.5 * relay.log2();
    let t2 = 0.5 * (1.0 + p + e2 * p * (1.0 - a3)).log2();
    let t3 = 0.25 * (1.0 + p * (1.0 + e2 + 2.0 * (e2 * x).sqrt())).log2();
    t1.min(t2).min(t3)
}

fn optimizer_soundness() -> Outcome {
    let start = Instant::now();
    let mut rng = Uniform::new(8);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let p = db_to_linear(rng.range(-10.0, 40.0));
        let g2 = 10f64.powf(rng.range(-2.0, 1.0));
        let e2 = 10f64.powf(rng.range(-1.0, 1.5));
        let opt = symmetric_upper_bound(&GaussianScenario::symmetric(p, g2, e2).unwrap(), &SearchConfig::default())
            .unwrap()
            .rate;
        let mut grid = 0.0f64;
        for i in 0..1000 {
            for j in 0..1000 {
                grid = grid.max(upper_objective(p, g2, e2, i as f64 / 999.0, j as f64 / 999.0));
            }
        }
        worst = worst.max((opt - grid).abs());
    }
    within(start.elapsed(), 120.0)?;
    let detail = format!("10 triples, max |optimizer - 10^6-point grid| = {worst:.2e}");
    if worst <= 1e-4 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn cognitive_degeneracies() -> Outcome {
    let p = db_to_linear(3.0);
    let cfg = BoundaryConfig::default();
    let no_relay = CogScenario::new(p, p, 0.0).unwrap();
    let mac = mac_boundary(&no_relay, &cfg).unwrap();
    let finite = LinkCapacity::Finite(0.4);
    let collapsed = [
        full_cognitive_boundary(&no_relay, 0.0, &cfg).unwrap(),
        partial_cognitive_boundary(&no_relay, 0.0, &cfg).unwrap(),
        finite_capacity_boundary(&no_relay, finite, finite, 0.0, &cfg).unwrap(),
    ];
    let mut worst = 0.0f64;
    for b in &collapsed {
        if b.points.len() != mac.points.len() {
            return Err(format!("{}: {} samples vs MAC {}", b.label, b.points.len(), mac.points.len()));
        }
        for (x, y) in b.points.iter().zip(&mac.points) {
            worst = worst.max((x.0 - y.0).abs()).max((x.1 - y.1).abs());
        }
    }
    let mut partial_excess = f64::NEG_INFINITY;
    for p3_db in [-6.0, 3.0] {
        let s = CogScenario::new(p, p, db_to_linear(p3_db)).unwrap();
        let full = full_cognitive_boundary(&s, 0.0, &cfg).unwrap();
        let partial = partial_cognitive_boundary(&s, 0.0, &cfg.on_axis(full.r1_max().unwrap())).unwrap();
        partial_excess = partial_excess.max(full.max_shortfall(&partial));
    }
    let s = CogScenario::new(p, p, db_to_linear(3.0)).unwrap();
    let search = SearchConfig::default();
    let mut increases = 0;
    for mode in [Cognition::Full, Cognition::Partial] {
        let sweep: Vec<f64> = (0..20)
            .map(|i| {
                let r = 0.55 * i as f64 / 19.0;
                max_unobtrusive_r3(&s, r, r, mode, &search).unwrap()
            })
            .collect();
        increases += sweep.windows(2).filter(|w| w[1] > w[0]).count();
    }
    let detail = format!(
        "P3 = 0 deviation from MAC {worst:.1e}; partial over full {partial_excess:.1e}; {increases} increases in the R3 sweeps"
    );
    if worst <= 1e-12 && partial_excess <= 1e-9 && increases == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn determinism() -> Outcome {
    for id in [3, 4, 5, 6] {
        let csv = |_: ()| {
            cmd_figure(id, None)
                .unwrap()
                .0
                .iter()
                .map(|c| c.table.to_csv_string())
                .collect::<Vec<_>>()
        };
        if csv(()) != csv(()) {
            return Err(format!("figure {id} differs between runs"));
        }
    }
    let file = scenario_file("binary_xor_vs_joint.json");
    let (a, b) = (cmd_sim(&file).unwrap(), cmd_sim(&file).unwrap());
    if a.json != b.json || a.csv != b.csv {
        return Err("simulation output differs between runs".into());
    }
    Ok("figures 3-6 and the xor/joint simulation are byte-identical across runs".into())
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("binary closed form vs brute force", binary_oracle),
        ("DF-suboptimality witness", df_witness),
        ("xor vs joint relay decoding", xor_vs_joint),
        ("noiseless exactness and blocklength monotonicity", noiseless_and_monotone),
        ("Gaussian containment", gaussian_containment),
        ("equal-rate crossover", fig6_crossover),
        ("multiplexing gain", multiplexing_gain),
        ("optimizer soundness", optimizer_soundness),
        ("cognitive degeneracies", cognitive_degeneracies),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2}: {tag} ({t:.1} s) {name}: {detail}", i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
