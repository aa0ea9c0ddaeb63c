//! Two-user region boundaries built as unions of pentagons.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::numerics::{
    clamp_rate, coarse_lattice, linspace, pareto_frontier, refine_from, Bits,
    Maximum, SearchConfig,
};

/// `{R1 <= r1_max, R2 <= r2_max, R1 + R2 <= sum_max}` in the non-negative
/// quadrant. A rectangle is a pentagon with `sum_max = inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pentagon {
    pub r1_max: Bits,
    pub r2_max: Bits,
    pub sum_max: Bits,
}

impl Pentagon {
    pub fn rectangle(r1_max: Bits, r2_max: Bits) -> Self {
        Self {
            r1_max,
            r2_max,
            sum_max: f64::INFINITY,
        }
    }

    /// Largest `R2` admissible together with `r1`, if any.
    pub fn r2_at(&self, r1: Bits) -> Option<Bits> {
        if !(r1 >= 0.0 && r1 <= self.r1_max) {
            return None;
        }
        let r2 = self.r2_max.min(self.sum_max - r1);
        (r2 >= 0.0).then_some(r2)
    }

    /// Largest `R1` with some admissible `R2 >= 0`.
    pub fn r1_extent(&self) -> Bits {
        if self.r2_max < 0.0 {
            return f64::NEG_INFINITY;
        }
        self.r1_max.min(self.sum_max)
    }

    pub fn contains(&self, r1: Bits, r2: Bits) -> bool {
        r1 >= 0.0 && r2 >= 0.0 && r1 <= self.r1_max && r2 <= self.r2_max && r1 + r2 <= self.sum_max
    }
}

/// Sampled upper-right boundary of an `(R1, R2)` region at a fixed `R3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionBoundary {
    pub label: String,
    pub r3: Bits,
    /// `(R1, R2)` samples with `R1` increasing and `R2` non-increasing.
    pub points: Vec<(Bits, Bits)>,
    /// Set when no parameter choice supports the requested `R3`.
    pub empty: bool,
}

impl RegionBoundary {
    pub(crate) fn empty(label: impl Into<String>, r3: Bits) -> Self {
        Self {
            label: label.into(),
            r3,
            points: Vec::new(),
            empty: true,
        }
    }

    pub fn r1_max(&self) -> Option<Bits> {
        self.points.last().map(|p| p.0)
    }

    /// `R2` sampled at exactly `r1` (same axis value, compared bitwise).
    pub fn r2_at(&self, r1: Bits) -> Option<Bits> {
        self.points
            .binary_search_by(|p| p.0.total_cmp(&r1))
            .ok()
            .map(|i| self.points[i].1)
    }

    /// True if, at every `R1` sampled by `other`, `self` is sampled too and
    /// reaches at least `other`'s `R2` minus `tol`.
    pub fn dominates(&self, other: &RegionBoundary, tol: f64) -> bool {
        other
            .points
            .iter()
            .all(|&(r1, r2)| self.r2_at(r1).is_some_and(|mine| mine >= r2 - tol))
    }

    /// Largest shortfall of `self` below `other` over `other`'s samples;
    /// `inf` if `self` misses a sampled `R1`.
    pub fn max_shortfall(&self, other: &RegionBoundary) -> f64 {
        other
            .points
            .iter()
            .map(|&(r1, r2)| match self.r2_at(r1) {
                Some(mine) => r2 - mine,
                None => f64::INFINITY,
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Sampling of the `R1` axis for boundary sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BoundaryConfig {
    /// Number of `R1` samples.
    pub axis_points: usize,
    /// Right end of the `R1` axis. `None` uses the region's own largest `R1`;
    /// a shared value lets several regions be compared sample by sample.
    pub axis_max: Option<Bits>,
    /// Parameter search. `None` picks [`SearchConfig::default`] for sweeps of
    /// up to three parameters and [`SearchConfig::sweep_4d`] for four.
    pub search: Option<SearchConfig>,
}

impl Default for BoundaryConfig {
    fn default() -> Self {
        Self {
            axis_points: 201,
            axis_max: None,
            search: None,
        }
    }
}

impl BoundaryConfig {
    pub fn with_search(search: SearchConfig) -> Self {
        Self {
            search: Some(search),
            ..Self::default()
        }
    }

    /// Search used for a sweep over `dims` parameters.
    pub fn search_for(&self, dims: usize) -> SearchConfig {
        self.search.unwrap_or(if dims >= 4 {
            SearchConfig::sweep_4d()
        } else {
            SearchConfig::default()
        })
    }

    pub fn validate(&self) -> crate::Result<()> {
        if self.axis_points < 2 {
            return Err(crate::Error::Config(format!(
                "axis_points = {} < 2",
                self.axis_points
            )));
        }
        if let Some(m) = self.axis_max {
            if !(m.is_finite() && m >= 0.0) {
                return Err(crate::Error::Domain {
                    what: "axis_max",
                    value: m,
                    expected: "finite and >= 0",
                });
            }
        }
        self.search.map_or(Ok(()), |s| s.validate())
    }

    pub fn on_axis(mut self, axis_max: Bits) -> Self {
        self.axis_max = Some(axis_max);
        self
    }
}

/// Result of a frontier sweep: the boundary plus the maximizing parameters at
/// each raw axis sample (before monotone clean-up).
pub(crate) struct Frontier<const D: usize> {
    pub boundary: RegionBoundary,
    pub argmax: Vec<Option<[f64; D]>>,
}

/// Union-of-pentagons frontier over a `D`-dimensional parameter box.
///
/// For every axis value `r1`, maximizes `min(r2_max, sum_max - r1)` over the
/// parameters whose pentagon admits `r1`: coarse lattice first (evaluated once
/// and shared by all samples), then local refinement per sample. Each entry
/// of `seeds` adds one starting point per sample. The raw samples are finally
/// passed through [`pareto_frontier`], which makes the result non-increasing.
pub(crate) fn sweep_frontier<const D: usize, P, F>(
    label: impl Into<String>,
    r3: Bits,
    pentagon: P,
    feasible: F,
    cfg: &BoundaryConfig,
    seeds: &[&[Option<[f64; D]>]],
) -> Frontier<D>
where
    P: Fn(&[f64; D]) -> Option<Pentagon> + Sync,
    F: Fn(&[f64; D]) -> bool + Sync,
{
    let label = label.into();
    let search = cfg.search_for(D);
    let coarse: Vec<([f64; D], Pentagon)> = coarse_lattice::<D>(search.grid_n)
        .into_iter()
        .filter(|x| feasible(x))
        .filter_map(|x| pentagon(&x).map(|p| (x, p)))
        .collect();

    let widest = coarse
        .iter()
        .map(|(x, p)| (*x, p.r1_extent()))
        .filter(|(_, e)| *e >= 0.0)
        .fold(None::<([f64; D], f64)>, |acc, (x, e)| match acc {
            Some((_, best)) if e <= best => acc,
            _ => Some((x, e)),
        });
    let Some((widest_x, widest_e)) = widest else {
        return Frontier {
            boundary: RegionBoundary::empty(label, r3),
            argmax: Vec::new(),
        };
    };
    let r1_extent = |x: &[f64; D]| pentagon(x).map_or(f64::NEG_INFINITY, |p| p.r1_extent());
    let widest = refine_from(
        Maximum {
            point: widest_x,
            value: widest_e,
        },
        r1_extent,
        &feasible,
        &search,
    );

    let axis = linspace(0.0, cfg.axis_max.unwrap_or(widest.value), cfg.axis_points);
    let samples: Vec<Option<([f64; D], f64)>> = axis
        .par_iter()
        .enumerate()
        .map(|(i, &r1)| {
            let value = |x: &[f64; D]| {
                pentagon(x)
                    .and_then(|p| p.r2_at(r1))
                    .unwrap_or(f64::NEG_INFINITY)
            };
            let mut start: Option<Maximum<D>> = None;
            let mut offer = |point: [f64; D], v: f64| {
                if v > start.map_or(f64::NEG_INFINITY, |m| m.value) {
                    start = Some(Maximum { point, value: v });
                }
            };
            for seed in seeds.iter().filter_map(|s| s.get(i).copied().flatten()) {
                if feasible(&seed) {
                    offer(seed, value(&seed));
                }
            }
            offer(widest.point, value(&widest.point));
            for (x, p) in &coarse {
                if let Some(v) = p.r2_at(r1) {
                    offer(*x, v);
                }
            }
            let start = start?;
            let best = refine_from(start, value, &feasible, &search);
            Some((best.point, best.value))
        })
        .collect();

    let raw: Vec<(Bits, Bits)> = axis
        .iter()
        .zip(&samples)
        .filter_map(|(&r1, s)| s.map(|(_, v)| (r1, v)))
        .collect();
    let argmax = samples.iter().map(|s| s.map(|(x, _)| x)).collect();
    let points = if raw.is_empty() {
        Vec::new()
    } else {
        pareto_frontier(&raw, &axis).expect("non-empty")
    };
    Frontier {
        boundary: RegionBoundary {
            label,
            r3,
            empty: points.is_empty(),
            points: points.into_iter().map(|(a, b)| (a, clamp_rate(b))).collect(),
        },
        argmax,
    }
}
