//! Shared numerical primitives.
//!
//! All rates are in bits per channel use: every logarithm in this crate is
//! base 2. Closed-form rate expressions are evaluated unclamped (a term such
//! as `0.5 * log2(0.5 + x)` may be negative) and only clamped to zero where a
//! rate is reported.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A rate in bits per channel use.
pub type Bits = f64;

/// A probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Probability(f64);

impl Probability {
    pub fn new(p: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&p) {
            Ok(Self(p))
        } else {
            Err(Error::Domain {
                what: "probability",
                value: p,
                expected: "0 <= p <= 1",
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Probability {
    type Error = Error;

    fn try_from(p: f64) -> Result<Self> {
        Self::new(p)
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

/// Capacity of an orthogonal link, with an exact "unlimited" sentinel.
///
/// `Infinite` maps to `f64::INFINITY`, so `min(x, bound + Infinite)` collapses
/// to `x` exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkCapacity {
    Finite(Bits),
    Infinite,
}

impl LinkCapacity {
    pub fn bits(self) -> Bits {
        match self {
            LinkCapacity::Finite(c) => c,
            LinkCapacity::Infinite => f64::INFINITY,
        }
    }

    pub(crate) fn validate(self, what: &'static str) -> Result<()> {
        match self {
            LinkCapacity::Finite(c) if !(c >= 0.0 && c.is_finite()) => Err(Error::Domain {
                what,
                value: c,
                expected: "finite and >= 0",
            }),
            _ => Ok(()),
        }
    }
}

fn plogp(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

/// Binary entropy `Hb(p) = -p log2 p - (1-p) log2 (1-p)`, with `0 log 0 = 0`.
///
/// The two terms are summed smaller-argument first so that `Hb(p)` and
/// `Hb(1 - p)` agree bit for bit whenever `1 - (1 - p) == p`.
pub fn binary_entropy(p: Probability) -> Bits {
    let p = p.value();
    let q = 1.0 - p;
    let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
    plogp(lo) + plogp(hi)
}

/// [`binary_entropy`] on a raw `f64`, rejecting values outside `[0, 1]`.
pub fn hb(p: f64) -> Result<Bits> {
    Probability::new(p).map(binary_entropy)
}

/// `0.5 * log2(x)` without clamping. Negative or zero arguments give `NaN`
/// or `-inf`; callers decide what that means.
#[inline]
pub fn half_log2(x: f64) -> f64 {
    0.5 * x.log2()
}

/// `0.25 * log2(x)`, the per-user share of a two-user sum-rate term.
#[inline]
pub fn quarter_log2(x: f64) -> f64 {
    0.25 * x.log2()
}

/// Capacity of a unit-noise real AWGN channel, `0.5 * log2(1 + snr)`.
pub fn awgn_capacity(snr: f64) -> Result<Bits> {
    if snr >= 0.0 {
        Ok(half_log2(1.0 + snr))
    } else {
        Err(Error::Domain {
            what: "snr",
            value: snr,
            expected: "snr >= 0",
        })
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Clamp a formula value to a reportable rate.
#[inline]
pub fn clamp_rate(r: f64) -> Bits {
    if r > 0.0 {
        r
    } else {
        0.0
    }
}

/// Grid-search settings for the deterministic optimizers.
///
/// A coarse grid of `grid_n` points per axis over `[0, 1]` is followed by
/// `refine_rounds` local rounds. Each round samples `refine_n` points per axis
/// on a window of half-width `h` around the incumbent, then divides `h` by
/// `shrink`. The first window's half-width is the coarse grid step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    pub grid_n: usize,
    pub refine_rounds: usize,
    pub refine_n: usize,
    pub shrink: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            grid_n: 64,
            refine_rounds: 4,
            refine_n: 9,
            shrink: 4.0,
        }
    }
}

impl SearchConfig {
    pub fn with_grid(grid_n: usize, refine_rounds: usize) -> Self {
        Self {
            grid_n,
            refine_rounds,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_n < 2 {
            return Err(Error::Config(format!("grid_n = {} < 2", self.grid_n)));
        }
        if self.refine_rounds > 0 && self.refine_n < 2 {
            return Err(Error::Config(format!("refine_n = {} < 2", self.refine_n)));
        }
        if !(self.shrink > 1.0) {
            return Err(Error::Config(format!("shrink = {} <= 1", self.shrink)));
        }
        Ok(())
    }

    /// Coarser default for 4-parameter sweeps: 17 points per axis and three
    /// refinement rounds of 5 points per axis.
    pub fn sweep_4d() -> Self {
        Self {
            grid_n: 17,
            refine_rounds: 3,
            refine_n: 5,
            shrink: 4.0,
        }
    }

    fn coarse_step(&self) -> f64 {
        1.0 / (self.grid_n - 1) as f64
    }
}

/// Best point found by a grid search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum<const D: usize> {
    pub point: [f64; D],
    pub value: f64,
}

struct Incumbent<const D: usize>(Option<Maximum<D>>);

impl<const D: usize> Incumbent<D> {
    // strict improvement only, so the earliest maximizer in scan order wins
    fn offer(&mut self, point: [f64; D], value: f64) {
        if value.is_nan() {
            return;
        }
        match &self.0 {
            Some(m) if value <= m.value => {}
            _ => self.0 = Some(Maximum { point, value }),
        }
    }
}

/// Calls `visit` on every point of a `points^D` lattice. Coordinates come from
/// `coord(axis, index)`.
fn for_each_lattice_point<const D: usize>(
    points: usize,
    coord: impl Fn(usize, usize) -> f64,
    mut visit: impl FnMut([f64; D]),
) {
    let mut idx = [0usize; D];
    loop {
        let mut x = [0.0; D];
        for (d, xi) in x.iter_mut().enumerate() {
            *xi = coord(d, idx[d]);
        }
        visit(x);
        // odometer increment, last axis fastest
        let mut d = D;
        loop {
            if d == 0 {
                return;
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < points {
                break;
            }
            idx[d] = 0;
        }
    }
}

/// All points of the coarse `grid_n^D` lattice on the unit box, last axis
/// varying fastest.
pub fn coarse_lattice<const D: usize>(grid_n: usize) -> Vec<[f64; D]> {
    let step = 1.0 / (grid_n.max(2) - 1) as f64;
    let mut out = Vec::with_capacity(grid_n.pow(D as u32));
    for_each_lattice_point::<D>(
        grid_n,
        |_, i| if i + 1 == grid_n { 1.0 } else { i as f64 * step },
        |x| out.push(x),
    );
    out
}

/// Deterministic coarse-to-fine grid maximization over a feasible subset of
/// the unit box `[0, 1]^D`.
///
/// `seeds` are evaluated before the coarse grid and compete with it for the
/// incumbent. Returns `None` if no feasible point gives a non-NaN value.
pub fn maximize_in_box<const D: usize>(
    f: impl Fn(&[f64; D]) -> f64,
    feasible: impl Fn(&[f64; D]) -> bool,
    cfg: &SearchConfig,
    seeds: &[[f64; D]],
) -> Option<Maximum<D>> {
    let mut best = Incumbent(None);
    for s in seeds {
        if feasible(s) {
            best.offer(*s, f(s));
        }
    }
    let step = cfg.coarse_step();
    for_each_lattice_point::<D>(
        cfg.grid_n,
        |_, i| if i + 1 == cfg.grid_n { 1.0 } else { i as f64 * step },
        |x| {
            if feasible(&x) {
                best.offer(x, f(&x));
            }
        },
    );
    refine(best, f, feasible, cfg, step)
}

/// Runs only the local refinement rounds starting from `start`.
pub fn refine_from<const D: usize>(
    start: Maximum<D>,
    f: impl Fn(&[f64; D]) -> f64,
    feasible: impl Fn(&[f64; D]) -> bool,
    cfg: &SearchConfig,
) -> Maximum<D> {
    refine(Incumbent(Some(start)), f, feasible, cfg, cfg.coarse_step())
        .expect("incumbent present")
}

/// Re-centerings allowed per refinement round when the incumbent lands on the
/// edge of the search window (ridge following).
const MAX_RECENTER: usize = 16;

fn refine<const D: usize>(
    mut best: Incumbent<D>,
    f: impl Fn(&[f64; D]) -> f64,
    feasible: impl Fn(&[f64; D]) -> bool,
    cfg: &SearchConfig,
    mut half_width: f64,
) -> Option<Maximum<D>> {
    for _ in 0..cfg.refine_rounds {
        for _ in 0..=MAX_RECENTER {
            let center = best.0.map(|m| m.point)?;
            let span = 2.0 * half_width / (cfg.refine_n - 1) as f64;
            for_each_lattice_point::<D>(
                cfg.refine_n,
                |d, i| (center[d] - half_width + i as f64 * span).clamp(0.0, 1.0),
                |x| {
                    if feasible(&x) {
                        best.offer(x, f(&x));
                    }
                },
            );
            let moved_to_edge = best.0.is_some_and(|m| {
                m.point
                    .iter()
                    .zip(&center)
                    .any(|(p, c)| (p - c).abs() >= half_width * (1.0 - 1e-9))
            });
            if !moved_to_edge {
                break;
            }
        }
        half_width /= cfg.shrink;
    }
    best.0
}

const SIMPLEX_SLACK: f64 = 1e-12;

/// `a, b >= 0` and `a + b <= 1` (up to rounding slack).
pub fn in_simplex(x: &[f64; 2]) -> bool {
    x[0] >= 0.0 && x[1] >= 0.0 && x[0] + x[1] <= 1.0 + SIMPLEX_SLACK
}

/// Maximizes `f(a, b)` over `a, b >= 0`, `a + b <= 1`.
pub fn maximize_on_simplex(f: impl Fn(f64, f64) -> f64, cfg: &SearchConfig) -> Option<Maximum<2>> {
    maximize_in_box(|x| f(x[0], x[1]), in_simplex, cfg, &[])
}

/// Maximizes `f(a, b)` over the unit square.
pub fn maximize_on_square(f: impl Fn(f64, f64) -> f64, cfg: &SearchConfig) -> Option<Maximum<2>> {
    maximize_in_box(|x| f(x[0], x[1]), |_| true, cfg, &[])
}

/// Maximizes `f(t)` over `t` in `[0, 1]`.
pub fn maximize_on_interval(f: impl Fn(f64) -> f64, cfg: &SearchConfig) -> Option<Maximum<1>> {
    maximize_in_box(|x| f(x[0]), |_| true, cfg, &[])
}

/// Upper-right frontier of a union of "down-closed" points.
///
/// Each input `(r1, r2)` stands for the rectangle `[0, r1] x [0, r2]`. For every
/// `r1` on `axis`, the output carries the largest `r2` over input points whose
/// first coordinate is at least `r1`; axis values beyond every input point are
/// omitted. The result is non-increasing in `r1` and clamped at zero.
pub fn pareto_frontier(points: &[(Bits, Bits)], axis: &[Bits]) -> Result<Vec<(Bits, Bits)>> {
    if points.is_empty() {
        return Err(Error::EmptyInput("pareto_frontier needs at least one point"));
    }
    let mut sorted: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|(a, b)| !a.is_nan() && !b.is_nan())
        .collect();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    // suffix maxima of r2
    let mut suffix = vec![f64::NEG_INFINITY; sorted.len() + 1];
    for i in (0..sorted.len()).rev() {
        suffix[i] = suffix[i + 1].max(sorted[i].1);
    }
    Ok(axis
        .iter()
        .filter_map(|&r1| {
            let i = sorted.partition_point(|p| p.0.partial_cmp(&r1) == Some(Ordering::Less));
            (i < sorted.len()).then(|| (r1, clamp_rate(suffix[i])))
        })
        .collect())
}

/// `n` uniformly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n)
            .map(|i| {
                if i + 1 == n {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}
