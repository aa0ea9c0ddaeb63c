//! Gaussian MAC with a cognitive relay.
//!
//! One receiver observes `Y = X1 + X2 + X3 + Z` with unit-variance noise. The
//! relay (input `X3`) knows both source messages (full cognition), only the
//! first one (partial cognition), or learns them over orthogonal links of
//! finite capacity. The relay may also carry a private message at rate `R3`.
//!
//! Bounds are returned unclamped, exactly as the closed forms evaluate. The
//! boundary sweeps and [`max_unobtrusive_r3`] clamp at the reporting edge.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{
    clamp_rate, half_log2, in_simplex, maximize_in_box, maximize_on_interval,
    maximize_on_simplex, Bits, LinkCapacity, SearchConfig,
};
use crate::region::{sweep_frontier, BoundaryConfig, Pentagon, RegionBoundary};

/// Average power constraints of the three transmitters (linear scale).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CogScenario {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

impl CogScenario {
    pub fn new(p1: f64, p2: f64, p3: f64) -> Result<Self> {
        let s = Self { p1, p2, p3 };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        for (what, v) in [("P1", self.p1), ("P2", self.p2), ("P3", self.p3)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::Domain {
                    what,
                    value: v,
                    expected: "finite and >= 0",
                });
            }
        }
        Ok(())
    }

    /// The relay-free two-user MAC pentagon.
    pub fn mac_pentagon(&self) -> Pentagon {
        Pentagon {
            r1_max: half_log2(1.0 + self.p1),
            r2_max: half_log2(1.0 + self.p2),
            sum_max: half_log2(1.0 + self.p1 + self.p2),
        }
    }
}

/// Fractions of relay power spent cooperating with source 1 (`a3p`) and
/// source 2 (`a3pp`); the rest carries the relay's own message.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelaySplit {
    pub a3p: f64,
    pub a3pp: f64,
}

impl RelaySplit {
    pub fn new(a3p: f64, a3pp: f64) -> Result<Self> {
        if in_simplex(&[a3p, a3pp]) && a3p <= 1.0 && a3pp <= 1.0 {
            Ok(Self { a3p, a3pp })
        } else {
            Err(Error::InvalidSplit { a3p, a3pp })
        }
    }

    /// Power fraction left for the private relay message.
    pub fn private(&self) -> f64 {
        (1.0 - self.a3p - self.a3pp).max(0.0)
    }
}

/// Right-hand sides of the full-cognition capacity region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FullCognitiveBounds {
    pub r3: Bits,
    pub r1_r3: Bits,
    pub r2_r3: Bits,
    pub r1_r2_r3: Bits,
}

impl FullCognitiveBounds {
    /// The `(R1, R2)` section at a fixed `r3`, if `r3` itself is admissible.
    pub fn section(&self, r3: Bits) -> Option<Pentagon> {
        (r3 <= self.r3).then_some(Pentagon {
            r1_max: self.r1_r3 - r3,
            r2_max: self.r2_r3 - r3,
            sum_max: self.r1_r2_r3 - r3,
        })
    }

    /// Largest `R3` compatible with committed `(r1, r2)`.
    pub fn r3_headroom(&self, r1: Bits, r2: Bits) -> Bits {
        self.r3
            .min(self.r1_r3 - r1)
            .min(self.r2_r3 - r2)
            .min(self.r1_r2_r3 - r1 - r2)
    }
}

pub fn full_cognitive_bounds(s: &CogScenario, split: RelaySplit) -> Result<FullCognitiveBounds> {
    s.validate()?;
    let split = RelaySplit::new(split.a3p, split.a3pp)?;
    Ok(full_bounds_unchecked(s, split))
}

fn full_bounds_unchecked(s: &CogScenario, split: RelaySplit) -> FullCognitiveBounds {
    let RelaySplit { a3p, a3pp } = split;
    let coh1 = 2.0 * (a3p * s.p1 * s.p3).sqrt();
    let coh2 = 2.0 * (a3pp * s.p2 * s.p3).sqrt();
    FullCognitiveBounds {
        r3: half_log2(1.0 + split.private() * s.p3),
        r1_r3: half_log2(1.0 + s.p1 + (1.0 - a3pp) * s.p3 + coh1),
        r2_r3: half_log2(1.0 + s.p2 + (1.0 - a3p) * s.p3 + coh2),
        r1_r2_r3: half_log2(1.0 + s.p1 + s.p2 + s.p3 + coh1 + coh2),
    }
}

/// Right-hand sides of the partial-cognition capacity region (relay informed
/// of message 1 only). `rho` is the correlation between `X1` and `X3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartialCognitiveBounds {
    pub r2: Bits,
    pub r3: Bits,
    pub r1_r3: Bits,
    pub r2_r3: Bits,
    pub r1_r2_r3: Bits,
}

impl PartialCognitiveBounds {
    pub fn section(&self, r3: Bits) -> Option<Pentagon> {
        (r3 <= self.r3).then(|| Pentagon {
            r1_max: self.r1_r3 - r3,
            r2_max: self.r2.min(self.r2_r3 - r3),
            sum_max: self.r1_r2_r3 - r3,
        })
    }

    pub fn r3_headroom(&self, r1: Bits, r2: Bits) -> Bits {
        self.r3
            .min(self.r1_r3 - r1)
            .min(self.r2_r3 - r2)
            .min(self.r1_r2_r3 - r1 - r2)
    }
}

pub fn partial_cognitive_bounds(s: &CogScenario, rho: f64) -> Result<PartialCognitiveBounds> {
    s.validate()?;
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::Domain {
            what: "rho",
            value: rho,
            expected: "0 <= rho <= 1",
        });
    }
    Ok(partial_bounds_unchecked(s, rho))
}

fn partial_bounds_unchecked(s: &CogScenario, rho: f64) -> PartialCognitiveBounds {
    let coh = 2.0 * rho * (s.p1 * s.p3).sqrt();
    let private = (1.0 - rho * rho) * s.p3;
    PartialCognitiveBounds {
        r2: half_log2(1.0 + s.p2),
        r3: half_log2(1.0 + private),
        r1_r3: half_log2(1.0 + s.p1 + s.p3 + coh),
        r2_r3: half_log2(1.0 + s.p2 + private),
        r1_r2_r3: half_log2(1.0 + s.p1 + s.p2 + s.p3 + coh),
    }
}

/// The seven bounds of the finite-capacity-link region, evaluated with
/// jointly Gaussian inputs
/// `Xj = sqrt(aj Pj) Uj + sqrt((1 - aj) Pj) Sj` (j = 1, 2) and
/// `X3 = sqrt(a3' P3) U1 + sqrt(a3'' P3) U2 + sqrt(a3bar P3) S3`.
///
/// This is an achievable region with Gaussian inputs; optimality of Gaussian
/// inputs for the link-limited channel is not established.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiniteCapacityBounds {
    pub r1: Bits,
    pub r2: Bits,
    pub r3: Bits,
    pub r1_r2: Bits,
    pub r1_r3: Bits,
    pub r2_r3: Bits,
    pub r1_r2_r3: Bits,
}

impl FiniteCapacityBounds {
    pub fn section(&self, r3: Bits) -> Option<Pentagon> {
        (r3 <= self.r3).then(|| Pentagon {
            r1_max: self.r1.min(self.r1_r3 - r3),
            r2_max: self.r2.min(self.r2_r3 - r3),
            sum_max: self.r1_r2.min(self.r1_r2_r3 - r3),
        })
    }
}

pub const FINITE_CAPACITY_LABEL: &str = "achievable with Gaussian inputs";

pub fn finite_capacity_bounds(
    s: &CogScenario,
    c1: LinkCapacity,
    c2: LinkCapacity,
    split: RelaySplit,
    a1: f64,
    a2: f64,
) -> Result<FiniteCapacityBounds> {
    s.validate()?;
    c1.validate("C1")?;
    c2.validate("C2")?;
    let split = RelaySplit::new(split.a3p, split.a3pp)?;
    for (what, v) in [("alpha1", a1), ("alpha2", a2)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Domain {
                what,
                value: v,
                expected: "0 <= alpha <= 1",
            });
        }
    }
    Ok(finite_bounds_unchecked(s, c1.bits(), c2.bits(), split, a1, a2))
}

fn finite_bounds_unchecked(
    s: &CogScenario,
    c1: f64,
    c2: f64,
    split: RelaySplit,
    a1: f64,
    a2: f64,
) -> FiniteCapacityBounds {
    // private (non-cooperative) powers
    let q1 = (1.0 - a1) * s.p1;
    let q2 = (1.0 - a2) * s.p2;
    let q3 = split.private() * s.p3;
    // coherent amplitudes along U1 and U2
    let g1 = (a1 * s.p1).sqrt() + (split.a3p * s.p3).sqrt();
    let g2 = (a2 * s.p2).sqrt() + (split.a3pp * s.p3).sqrt();

    let total = half_log2(1.0 + s.p1 + s.p2 + s.p3
        + 2.0 * (a1 * s.p1 * split.a3p * s.p3).sqrt()
        + 2.0 * (a2 * s.p2 * split.a3pp * s.p3).sqrt());

    FiniteCapacityBounds {
        r1: half_log2(1.0 + q1) + c1,
        r2: half_log2(1.0 + q2) + c2,
        r3: half_log2(1.0 + q3),
        r1_r2: half_log2(1.0 + q1 + q2) + c1 + c2,
        r1_r3: (half_log2(1.0 + q1 + q3) + c1).min(half_log2(1.0 + g1 * g1 + q1 + q3)),
        r2_r3: (half_log2(1.0 + q2 + q3) + c2).min(half_log2(1.0 + g2 * g2 + q2 + q3)),
        r1_r2_r3: (half_log2(1.0 + q1 + q2 + q3) + c1 + c2)
            .min(half_log2(1.0 + g2 * g2 + q1 + q2 + q3) + c1)
            .min(half_log2(1.0 + g1 * g1 + q1 + q2 + q3) + c2)
            .min(total),
    }
}

/// Constraint set of the MAC with a cognitive relay over orthogonal channels
/// of capacities `C1`, `C2`, `C3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalPolytope {
    pub r3: Bits,
    pub r1_r2: Bits,
    pub r2_r3: Bits,
    pub r1_r2_r3: Bits,
}

impl OrthogonalPolytope {
    pub fn contains(&self, r1: Bits, r2: Bits, r3: Bits) -> bool {
        r1 >= 0.0
            && r2 >= 0.0
            && r3 >= 0.0
            && r3 <= self.r3
            && r1 + r2 <= self.r1_r2
            && r2 + r3 <= self.r2_r3
            && r1 + r2 + r3 <= self.r1_r2_r3
    }
}

pub fn orthogonal_polytope(c1: Bits, c2: Bits, c3: Bits) -> Result<OrthogonalPolytope> {
    for (what, v) in [("C1", c1), ("C2", c2), ("C3", c3)] {
        if !(v >= 0.0) {
            return Err(Error::Domain {
                what,
                value: v,
                expected: ">= 0",
            });
        }
    }
    Ok(OrthogonalPolytope {
        r3: c3,
        r1_r2: c1 + c2,
        r2_r3: c2 + c3,
        r1_r2_r3: c1 + c2 + c3,
    })
}

fn check_r3(r3: Bits) -> Result<()> {
    if r3 >= 0.0 && r3.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "R3",
            value: r3,
            expected: "finite and >= 0",
        })
    }
}

/// Boundary of the full-cognition region at fixed `r3`.
///
/// At `r3 = 0` only splits with `a3' + a3'' = 1` are swept (giving the relay's
/// whole power to cooperation is optimal when it has no message of its own);
/// otherwise the whole simplex is swept.
pub fn full_cognitive_boundary(s: &CogScenario, r3: Bits, cfg: &BoundaryConfig) -> Result<RegionBoundary> {
    s.validate()?;
    check_r3(r3)?;
    cfg.validate()?;
    let label = "full cognition";
    let b = if r3 == 0.0 {
        sweep_frontier::<1, _, _>(
            label,
            r3,
            |x| full_bounds_unchecked(s, RelaySplit { a3p: x[0], a3pp: 1.0 - x[0] }).section(r3),
            |_| true,
            cfg,
            &[],
        )
        .boundary
    } else {
        sweep_frontier::<2, _, _>(
            label,
            r3,
            |x| full_bounds_unchecked(s, RelaySplit { a3p: x[0], a3pp: x[1] }).section(r3),
            in_simplex,
            cfg,
            &[],
        )
        .boundary
    };
    Ok(b)
}

/// Boundary of the partial-cognition region at fixed `r3` (union over `rho`;
/// `rho = 1` alone at `r3 = 0`).
pub fn partial_cognitive_boundary(
    s: &CogScenario,
    r3: Bits,
    cfg: &BoundaryConfig,
) -> Result<RegionBoundary> {
    s.validate()?;
    check_r3(r3)?;
    cfg.validate()?;
    let label = "partial cognition";
    let f = if r3 == 0.0 {
        sweep_frontier::<1, _, _>(
            label,
            r3,
            |_| partial_bounds_unchecked(s, 1.0).section(r3),
            |_| true,
            cfg,
            &[],
        )
    } else {
        sweep_frontier::<1, _, _>(
            label,
            r3,
            |x| partial_bounds_unchecked(s, x[0]).section(r3),
            |_| true,
            cfg,
            &[],
        )
    };
    Ok(f.boundary)
}

/// Boundary of the finite-capacity-link region at fixed `r3`, swept over the
/// relay split and the source correlation fractions `(a1, a2)`.
pub fn finite_capacity_boundary(
    s: &CogScenario,
    c1: LinkCapacity,
    c2: LinkCapacity,
    r3: Bits,
    cfg: &BoundaryConfig,
) -> Result<RegionBoundary> {
    s.validate()?;
    c1.validate("C1")?;
    c2.validate("C2")?;
    check_r3(r3)?;
    cfg.validate()?;
    let (c1, c2) = (c1.bits(), c2.bits());
    let f = sweep_frontier::<4, _, _>(
        FINITE_CAPACITY_LABEL,
        r3,
        |x| {
            finite_bounds_unchecked(s, c1, c2, RelaySplit { a3p: x[2], a3pp: x[3] }, x[0], x[1])
                .section(r3)
        },
        |x| in_simplex(&[x[2], x[3]]),
        cfg,
        &[],
    );
    Ok(f.boundary)
}

/// The relay-free MAC pentagon sampled like the other boundaries.
pub fn mac_boundary(s: &CogScenario, cfg: &BoundaryConfig) -> Result<RegionBoundary> {
    s.validate()?;
    let mac = s.mac_pentagon();
    Ok(sweep_frontier::<1, _, _>("no relay", 0.0, |_| Some(mac), |_| true, cfg, &[]).boundary)
}

/// Which cognition model [`max_unobtrusive_r3`] optimizes over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cognition {
    Full,
    Partial,
}

/// Largest relay rate `R3` such that `(r1, r2, R3)` stays in the capacity
/// region, for primary rates `(r1, r2)` chosen inside the relay-free MAC.
pub fn max_unobtrusive_r3(
    s: &CogScenario,
    r1: Bits,
    r2: Bits,
    mode: Cognition,
    search: &SearchConfig,
) -> Result<Bits> {
    s.validate()?;
    search.validate()?;
    const SLACK: f64 = 1e-12;
    let mac = s.mac_pentagon();
    let inside = r1 >= 0.0
        && r2 >= 0.0
        && r1 <= mac.r1_max + SLACK
        && r2 <= mac.r2_max + SLACK
        && r1 + r2 <= mac.sum_max + SLACK;
    if !inside {
        return Err(Error::Infeasible(format!(
            "(R1, R2) = ({r1}, {r2}) is outside the relay-free MAC region"
        )));
    }
    let best = match mode {
        Cognition::Full => maximize_on_simplex(
            |a, b| full_bounds_unchecked(s, RelaySplit { a3p: a, a3pp: b }).r3_headroom(r1, r2),
            search,
        )
        .map(|m| m.value),
        Cognition::Partial => {
            maximize_on_interval(|rho| partial_bounds_unchecked(s, rho).r3_headroom(r1, r2), search)
                .map(|m| m.value)
        }
    };
    Ok(clamp_rate(best.unwrap_or(0.0)))
}

/// Best split for [`max_unobtrusive_r3`] in full mode, for reporting.
pub fn best_unobtrusive_split(
    s: &CogScenario,
    r1: Bits,
    r2: Bits,
    search: &SearchConfig,
) -> Option<(RelaySplit, Bits)> {
    maximize_in_box(
        |x| full_bounds_unchecked(s, RelaySplit { a3p: x[0], a3pp: x[1] }).r3_headroom(r1, r2),
        in_simplex,
        search,
        &[],
    )
    .map(|m| {
        (
            RelaySplit {
                a3p: m.point[0],
                a3pp: m.point[1],
            },
            clamp_rate(m.value),
        )
    })
}
