//! Monte Carlo simulation of block-Markov XOR relaying over the binary cMACr.
//!
//! Per trial, with `k1 >= k2`, `pad(u2) = u2 << (k1 - k2)` and `G'` the last
//! `k2` rows of `G`:
//!
//! * block `b = 1..B`: source 1 sends `u1_b G`, source 2 sends `pad(u2_b) G`;
//! * the relay decodes `u3_b = u1_b ^ pad(u2_b)` from `Y3` and sends
//!   `x3_{b+1} = u3_b G3` (`x3_1 = 0`);
//! * receiver 1 decodes `u1_1` point-to-point in block 1; afterwards it
//!   cancels `est(u1_{b-1}) G3` and jointly decodes `(u1_b, u2_{b-1})` with
//!   codes `(G, G3')`. Receiver 2 mirrors this with `(G', G3)`.
//!
//! In [`RelayDecoder::Joint`] mode source 2 instead uses an independent
//! generator `G2`, and the relay jointly decodes `(u1_b, u2_b)` before
//! forwarding their padded XOR. Messages and channel noise are drawn from the
//! same streams in both modes.
//!
//! Generators are i.i.d. uniform conditioned on every decoder's stacked
//! generator having full row rank (so noiseless runs are exact): `G` alone,
//! then `G3` with `[G; G3']` and `[G'; G3]`, then in joint mode `G2` with
//! `[G; G2]` and `[G2; G3]`. Each is redrawn from the codebook stream until
//! its conditions hold, so `G` and `G3` coincide across modes.
//!
//! Seed schedule: `trial_seed = derive_seed(master_seed, trial)`; role streams
//! are `derive_seed(trial_seed, r)` for `r = 1` (codebook: `G`, `G3`, then
//! `G2`), `2` (messages), `3..=5` (noise on links 3, 1, 2), each feeding a
//! ChaCha8 generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    bsc_noise, independent, mask, nearest, nearest_pair, random_code_from, LinearCode, DEFAULT_CAP,
    JOINT_EXTRA, MAX_N,
};
use crate::binary::BinaryScenario;
use crate::error::{Error, Result};

/// Relay decoding strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelayDecoder {
    /// Decode only the XOR of the messages (structured code).
    Xor,
    /// Decode both messages (independent codes), then forward their XOR.
    Joint,
}

impl std::fmt::Display for RelayDecoder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RelayDecoder::Xor => "xor",
            RelayDecoder::Joint => "joint",
        })
    }
}

fn default_cap() -> usize {
    DEFAULT_CAP
}

/// Simulation parameters. Rates are `k1 / n` and `k2 / n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub scenario: BinaryScenario,
    pub n: usize,
    pub k1: usize,
    pub k2: usize,
    pub num_blocks: usize,
    pub trials: u64,
    pub master_seed: u64,
    pub relay_decoder: RelayDecoder,
    /// Message-bit limit for single-message ML decoding; joint decoding is
    /// allowed `cap + 4` bits.
    #[serde(default = "default_cap")]
    pub cap: usize,
}

impl SimConfig {
    /// Checks dimensions and brute-force caps. Cap violations are reported as
    /// [`Error::CapExceeded`].
    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        if self.n == 0 || self.n > MAX_N {
            return Err(Error::Config(format!("n = {} not in 1..={MAX_N}", self.n)));
        }
        if self.k1 == 0 || self.k2 == 0 {
            return Err(Error::Config("k1 and k2 must be at least 1".into()));
        }
        let (hi, lo) = (self.k1.max(self.k2), self.k1.min(self.k2));
        if hi + lo > self.n {
            return Err(Error::Config(format!(
                "k1 + k2 = {} exceeds n = {}",
                hi + lo,
                self.n
            )));
        }
        if self.num_blocks < 2 {
            return Err(Error::Config(format!("num_blocks = {} < 2", self.num_blocks)));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be positive".into()));
        }
        if hi > self.cap {
            return Err(Error::CapExceeded {
                needed: hi,
                cap: self.cap,
            });
        }
        if hi + lo > self.cap + JOINT_EXTRA {
            return Err(Error::CapExceeded {
                needed: hi + lo,
                cap: self.cap + JOINT_EXTRA,
            });
        }
        Ok(())
    }

    /// Same configuration with the two source/receiver pairs exchanged.
    fn swapped(&self) -> Self {
        Self {
            scenario: self.scenario.mirrored(),
            k1: self.k2,
            k2: self.k1,
            ..self.clone()
        }
    }
}

/// Aggregated error statistics.
///
/// Per-block rates divide by `trials * blocks`. A receiver errs in block `b`
/// if either message it decodes in that block is wrong; the other source's
/// last message is never decoded. A trial fails end to end if any block at
/// either receiver errs, so `end_to_end_error_rate >= max(rx1, rx2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub relay_error_rate: f64,
    pub rx1_error_rate: f64,
    pub rx2_error_rate: f64,
    pub end_to_end_error_rate: f64,
    pub relay_errors: u64,
    pub rx1_errors: u64,
    pub rx2_errors: u64,
    pub failed_trials: u64,
    pub trials: u64,
    pub blocks: usize,
    pub seed: u64,
    pub config: SimConfig,
}

impl SimReport {
    pub const CSV_HEADER: [&'static str; 15] = [
        "relay_decoder",
        "eps1",
        "eps2",
        "eps3",
        "n",
        "k1",
        "k2",
        "blocks",
        "trials",
        "seed",
        "relay_error_rate",
        "rx1_error_rate",
        "rx2_error_rate",
        "end_to_end_error_rate",
        "failed_trials",
    ];

    /// Values in [`Self::CSV_HEADER`] order.
    pub fn csv_record(&self) -> Vec<String> {
        let c = &self.config;
        vec![
            c.relay_decoder.to_string(),
            c.scenario.eps1.value().to_string(),
            c.scenario.eps2.value().to_string(),
            c.scenario.eps3.value().to_string(),
            c.n.to_string(),
            c.k1.to_string(),
            c.k2.to_string(),
            self.blocks.to_string(),
            self.trials.to_string(),
            self.seed.to_string(),
            self.relay_error_rate.to_string(),
            self.rx1_error_rate.to_string(),
            self.rx2_error_rate.to_string(),
            self.end_to_end_error_rate.to_string(),
            self.failed_trials.to_string(),
        ]
    }
}

/// SplitMix64 child seed of `parent` for index `index`.
pub fn derive_seed(parent: u64, index: u64) -> u64 {
    let mut z = parent.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Default, Clone, Copy)]
struct Counts {
    relay: u64,
    rx1: u64,
    rx2: u64,
    failed: u64,
}

impl std::ops::Add for Counts {
    type Output = Counts;
    fn add(self, o: Counts) -> Counts {
        Counts {
            relay: self.relay + o.relay,
            rx1: self.rx1 + o.rx1,
            rx2: self.rx2 + o.rx2,
            failed: self.failed + o.failed,
        }
    }
}

fn stream(trial_seed: u64, role: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(trial_seed, role))
}

/// One trial with `k1 >= k2`.
fn run_trial(cfg: &SimConfig, trial: u64) -> Counts {
    let (n, k1, k2, blocks) = (cfg.n, cfg.k1, cfg.k2, cfg.num_blocks);
    let shift = k1 - k2;
    let ts = derive_seed(cfg.master_seed, trial);
    let mut code_rng = stream(ts, 1);
    let mut msg_rng = stream(ts, 2);
    let mut z3_rng = stream(ts, 3);
    let mut z1_rng = stream(ts, 4);
    let mut z2_rng = stream(ts, 5);
    let (e1, e2, e3) = (
        cfg.scenario.eps1.value(),
        cfg.scenario.eps2.value(),
        cfg.scenario.eps3.value(),
    );

    let mut draw = |k: usize, ok: &dyn Fn(&LinearCode) -> bool| loop {
        let c = random_code_from(k, n, &mut code_rng).expect("validated dimensions");
        if ok(&c) {
            break c;
        }
    };
    let g = draw(k1, &|g| independent(&[g.rows()]));
    let g_tail = g.tail(k2).expect("k2 <= k1");
    let g3 = draw(k1, &|g3| {
        independent(&[g.rows(), &g3.rows()[k1 - k2..]]) && independent(&[g_tail.rows(), g3.rows()])
    });
    let joint = cfg.relay_decoder == RelayDecoder::Joint;
    // Source 2's code: G' (padded rows of G) or an independent G2.
    let c2 = if joint {
        draw(k2, &|g2| {
            independent(&[g.rows(), g2.rows()]) && independent(&[g2.rows(), g3.rows()])
        })
    } else {
        g_tail
    };
    let book_g = g.codebook();
    let book_g3 = g3.codebook();
    let book_g3_tail = g3.tail(k2).expect("k2 <= k1").codebook();
    let book_c2 = c2.codebook();

    let u1: Vec<u64> = (0..blocks).map(|_| msg_rng.random::<u64>() & mask(k1)).collect();
    let u2: Vec<u64> = (0..blocks).map(|_| msg_rng.random::<u64>() & mask(k2)).collect();

    let mut c = Counts::default();
    let mut failed = false;
    let mut relay_prev: Option<u64> = None;
    let mut u1_hat_prev = 0u64;
    let mut u2_hat_prev = 0u64;
    for b in 0..blocks {
        let x1 = book_g[u1[b] as usize];
        let x2 = book_c2[u2[b] as usize];
        let x3 = relay_prev.map_or(0, |u3| book_g3[u3 as usize]);

        let y3 = x1 ^ x2 ^ bsc_noise(n, e3, &mut z3_rng);
        let u3_true = u1[b] ^ (u2[b] << shift);
        let u3_hat = if joint {
            let (a, bb) = nearest_pair(&book_g, &book_c2, y3);
            a ^ (bb << shift)
        } else {
            nearest(&book_g, y3)
        };
        if u3_hat != u3_true {
            c.relay += 1;
        }

        let y1 = x1 ^ x3 ^ bsc_noise(n, e1, &mut z1_rng);
        let y2 = x2 ^ x3 ^ bsc_noise(n, e2, &mut z2_rng);
        let (rx1_bad, rx2_bad, u1_hat, u2_hat) = if b == 0 {
            let u1_hat = nearest(&book_g, y1);
            let u2_hat = nearest(&book_c2, y2);
            (u1_hat != u1[0], u2_hat != u2[0], u1_hat, u2_hat)
        } else {
            let r1 = y1 ^ book_g3[u1_hat_prev as usize];
            let (u1_hat, u2_old) = nearest_pair(&book_g, &book_g3_tail, r1);
            let r2 = y2 ^ book_g3[(u2_hat_prev << shift) as usize];
            let (u2_hat, u1_old) = nearest_pair(&book_c2, &book_g3, r2);
            (
                u1_hat != u1[b] || u2_old != u2[b - 1],
                u2_hat != u2[b] || u1_old != u1[b - 1],
                u1_hat,
                u2_hat,
            )
        };
        c.rx1 += rx1_bad as u64;
        c.rx2 += rx2_bad as u64;
        failed |= rx1_bad || rx2_bad;
        u1_hat_prev = u1_hat;
        u2_hat_prev = u2_hat;
        relay_prev = Some(u3_hat);
    }
    c.failed = failed as u64;
    c
}

/// Runs `cfg.trials` independent trials in parallel. Bit-identical for equal
/// configurations. If `k1 < k2` the roles are exchanged internally and the
/// report is expressed in the caller's labeling.
pub fn run_sim(cfg: &SimConfig) -> Result<SimReport> {
    cfg.validate()?;
    let swap = cfg.k1 < cfg.k2;
    let inner = if swap { cfg.swapped() } else { cfg.clone() };
    let c = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(&inner, t))
        .reduce(Counts::default, |a, b| a + b);
    let (rx1, rx2) = if swap { (c.rx2, c.rx1) } else { (c.rx1, c.rx2) };
    let per_block = (cfg.trials * cfg.num_blocks as u64) as f64;
    Ok(SimReport {
        relay_error_rate: c.relay as f64 / per_block,
        rx1_error_rate: rx1 as f64 / per_block,
        rx2_error_rate: rx2 as f64 / per_block,
        end_to_end_error_rate: c.failed as f64 / cfg.trials as f64,
        relay_errors: c.relay,
        rx1_errors: rx1,
        rx2_errors: rx2,
        failed_trials: c.failed,
        trials: cfg.trials,
        blocks: cfg.num_blocks,
        seed: cfg.master_seed,
        config: cfg.clone(),
    })
}
