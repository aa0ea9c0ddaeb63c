//! Gaussian compound MAC with a relay, without cross-reception:
//!
//! ```text
//! Y1 = X1 + eta X3 + Z1
//! Y2 = X2 + eta X3 + Z2
//! Y3 = gamma (X1 + X2) + Z3
//! ```
//!
//! Both receivers want both source messages; the relay has no message of its
//! own (`R3 = 0` throughout). Provides the decode-and-forward (DF) region, the
//! outer bound, the compress-and-forward (CF) region, and the equal-rate
//! quantities for the symmetric channel `P1 = P2 = P3 = P`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{
    clamp_rate, half_log2, in_simplex, maximize_in_box, maximize_on_interval, quarter_log2, Bits,
    SearchConfig,
};
use crate::region::{sweep_frontier, BoundaryConfig, Pentagon, RegionBoundary};

/// Powers and channel gains of the Gaussian cMACr.
///
/// `gamma2` is the squared source-to-relay gain, `eta2` the squared
/// relay-to-receiver gain. `eta2 = inf` models an unlimited relay link; it
/// requires `p3 > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianScenario {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub gamma2: f64,
    pub eta2: f64,
}

impl GaussianScenario {
    pub fn new(p1: f64, p2: f64, p3: f64, gamma2: f64, eta2: f64) -> Result<Self> {
        let s = Self {
            p1,
            p2,
            p3,
            gamma2,
            eta2,
        };
        s.validate()?;
        Ok(s)
    }

    /// `P1 = P2 = P3 = p`.
    pub fn symmetric(p: f64, gamma2: f64, eta2: f64) -> Result<Self> {
        Self::new(p, p, p, gamma2, eta2)
    }

    pub fn validate(&self) -> Result<()> {
        for (what, v) in [
            ("P1", self.p1),
            ("P2", self.p2),
            ("P3", self.p3),
            ("gamma^2", self.gamma2),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::Domain {
                    what,
                    value: v,
                    expected: "finite and >= 0",
                });
            }
        }
        if !(self.eta2 >= 0.0) {
            return Err(Error::Domain {
                what: "eta^2",
                value: self.eta2,
                expected: ">= 0",
            });
        }
        if self.eta2.is_infinite() && self.p3 == 0.0 {
            return Err(Error::Config("eta^2 = inf needs P3 > 0".into()));
        }
        Ok(())
    }

    pub fn is_symmetric(&self) -> bool {
        self.p1 == self.p2 && self.p2 == self.p3
    }

    fn require_symmetric(&self) -> Result<f64> {
        self.validate()?;
        if self.is_symmetric() {
            Ok(self.p1)
        } else {
            Err(Error::Config(format!(
                "equal-rate quantities need P1 = P2 = P3, got ({}, {}, {})",
                self.p1, self.p2, self.p3
            )))
        }
    }

    /// `eta^2 * P3` with the unlimited-link sentinel kept exact.
    fn relay_snr(&self) -> f64 {
        if self.eta2.is_infinite() {
            f64::INFINITY
        } else {
            self.eta2 * self.p3
        }
    }
}

/// DF parameters: source correlation fractions `a1, a2` and the relay's
/// cooperation split `(a3p, a3pp)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DfSplit {
    pub a1: f64,
    pub a2: f64,
    pub a3p: f64,
    pub a3pp: f64,
}

impl DfSplit {
    pub fn new(a1: f64, a2: f64, a3p: f64, a3pp: f64) -> Result<Self> {
        for (what, v) in [("alpha1", a1), ("alpha2", a2), ("alpha3'", a3p), ("alpha3''", a3pp)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Domain {
                    what,
                    value: v,
                    expected: "0 <= alpha <= 1",
                });
            }
        }
        if !in_simplex(&[a3p, a3pp]) {
            return Err(Error::InvalidSplit { a3p, a3pp });
        }
        Ok(Self { a1, a2, a3p, a3pp })
    }

    fn from_point(x: &[f64; 4]) -> Self {
        Self {
            a1: x[0],
            a2: x[1],
            a3p: x[2],
            a3pp: x[3],
        }
    }
}

fn df_feasible(x: &[f64; 4]) -> bool {
    in_simplex(&[x[2], x[3]])
}

/// Terms of the DF region. In each array the first entry is the
/// relay-decoding constraint and the others are receiver-decoding
/// constraints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DfBounds {
    pub r1: [Bits; 2],
    pub r2: [Bits; 2],
    pub sum: [Bits; 3],
}

impl DfBounds {
    pub fn r1_bound(&self) -> Bits {
        self.r1[0].min(self.r1[1])
    }

    pub fn r2_bound(&self) -> Bits {
        self.r2[0].min(self.r2[1])
    }

    pub fn sum_bound(&self) -> Bits {
        self.sum[0].min(self.sum[1]).min(self.sum[2])
    }

    /// The DF pentagon.
    pub fn pentagon(&self) -> Pentagon {
        Pentagon {
            r1_max: self.r1_bound(),
            r2_max: self.r2_bound(),
            sum_max: self.sum_bound(),
        }
    }

    /// The outer-bound pentagon: identical except that the relay's sum-rate
    /// decoding term is dropped.
    pub fn outer_pentagon(&self) -> Pentagon {
        Pentagon {
            r1_max: self.r1_bound(),
            r2_max: self.r2_bound(),
            sum_max: self.sum[1].min(self.sum[2]),
        }
    }
}

/// Evaluates the DF region terms for one parameter choice.
///
/// The single-user relay terms contain `a1 a3' / (1 - a2 a3'')` and its mirror
/// image; a vanishing denominator is reported as [`Error::Singularity`].
pub fn df_bounds(s: &GaussianScenario, d: DfSplit) -> Result<DfBounds> {
    s.validate()?;
    let d = DfSplit::new(d.a1, d.a2, d.a3p, d.a3pp)?;
    df_bounds_unchecked(s, &d)
}

fn df_bounds_unchecked(s: &GaussianScenario, d: &DfSplit) -> Result<DfBounds> {
    let den1 = 1.0 - d.a2 * d.a3pp;
    let den2 = 1.0 - d.a1 * d.a3p;
    if den1 == 0.0 {
        return Err(Error::Singularity("1 - alpha2 alpha3'' = 0"));
    }
    if den2 == 0.0 {
        return Err(Error::Singularity("1 - alpha1 alpha3' = 0"));
    }
    let (g2, e2) = (s.gamma2, s.eta2);
    let eta = e2.sqrt();
    let relay_rx = |p: f64, share: f64| {
        if share == 0.0 {
            p
        } else if s.eta2.is_infinite() {
            f64::INFINITY
        } else {
            e2 * s.p3 * share + p
        }
    };

    let r1_relay = half_log2(1.0 + g2 * s.p1 * (1.0 - d.a1 * d.a3p / den1));
    let r2_relay = half_log2(1.0 + g2 * s.p2 * (1.0 - d.a2 * d.a3pp / den2));
    let r1_rx = half_log2(1.0 + relay_rx(s.p1, 1.0 - d.a3pp));
    let r2_rx = half_log2(1.0 + relay_rx(s.p2, 1.0 - d.a3p));

    let p12 = s.p1 + s.p2;
    let sum_relay = if p12 == 0.0 {
        0.0
    } else {
        let coh = (d.a1 * d.a3p * s.p1).sqrt() + (d.a2 * d.a3pp * s.p2).sqrt();
        half_log2(1.0 + g2 * p12 * (1.0 - coh * coh / p12))
    };
    // Receiver j sees its own source and the relay; the relay's coherent part
    // along source j adds 2 eta sqrt(aj a3(j) Pj P3).
    let sum_rx = |p: f64, a: f64, share: f64| {
        if s.eta2.is_infinite() {
            f64::INFINITY
        } else {
            half_log2(1.0 + p + e2 * s.p3 + 2.0 * eta * (a * share * p * s.p3).sqrt())
        }
    };
    Ok(DfBounds {
        r1: [r1_relay, r1_rx],
        r2: [r2_relay, r2_rx],
        sum: [
            sum_relay,
            sum_rx(s.p1, d.a1, d.a3p),
            sum_rx(s.p2, d.a2, d.a3pp),
        ],
    })
}

fn df_section(s: &GaussianScenario, x: &[f64; 4], outer: bool) -> Option<Pentagon> {
    let b = df_bounds_unchecked(s, &DfSplit::from_point(x)).ok()?;
    Some(if outer { b.outer_pentagon() } else { b.pentagon() })
}


/// DF achievable region boundary (union over all `DfSplit`).
pub fn df_boundary(s: &GaussianScenario, cfg: &BoundaryConfig) -> Result<RegionBoundary> {
    s.validate()?;
    cfg.validate()?;
    Ok(df_frontier(s, cfg).boundary)
}

fn df_frontier(s: &GaussianScenario, cfg: &BoundaryConfig) -> crate::region::Frontier<4> {
    sweep_frontier::<4, _, _>("DF", 0.0, |x| df_section(s, x, false), df_feasible, cfg, &[])
}

/// Outer bound boundary.
///
/// Each outer pentagon contains the DF pentagon with the same parameters, so
/// the search at each `R1` sample is seeded with the DF maximizer. This makes
/// `outer >= DF` hold sample by sample on a shared axis, not just up to search
/// error.
pub fn outer_boundary(s: &GaussianScenario, cfg: &BoundaryConfig) -> Result<RegionBoundary> {
    Ok(df_and_outer_boundaries(s, cfg)?.1)
}

/// DF and outer boundaries sampled on one `R1` axis (the outer bound's own
/// extent unless `cfg.axis_max` is set). Cheaper than two separate calls.
pub fn df_and_outer_boundaries(
    s: &GaussianScenario,
    cfg: &BoundaryConfig,
) -> Result<(RegionBoundary, RegionBoundary)> {
    s.validate()?;
    cfg.validate()?;
    let axis_max = match cfg.axis_max {
        Some(m) => Some(m),
        None => sweep_frontier::<4, _, _>(
            "outer bound",
            0.0,
            |x| df_section(s, x, true),
            df_feasible,
            &BoundaryConfig {
                axis_points: 2,
                ..*cfg
            },
            &[],
        )
        .boundary
        .r1_max(),
    };
    let Some(axis_max) = axis_max else {
        return Ok((
            RegionBoundary::empty("DF", 0.0),
            RegionBoundary::empty("outer bound", 0.0),
        ));
    };
    let shared = cfg.on_axis(axis_max);
    let outer_from = |seeds: &[&[Option<[f64; 4]>]]| {
        sweep_frontier::<4, _, _>("outer bound", 0.0, |x| df_section(s, x, true), df_feasible, &shared, seeds)
    };
    // Near-singular splits are where the two regions meet when the relay link
    // is strong, and the coarse lattice misses them. A second DF pass started
    // from the outer maximizers finds them; the final outer pass is seeded
    // from that DF pass, so each outer sample starts at its DF value.
    let df0 = df_frontier(s, &shared);
    let outer0 = outer_from(&[&df0.argmax]);
    let df = sweep_frontier::<4, _, _>(
        "DF",
        0.0,
        |x| df_section(s, x, false),
        df_feasible,
        &shared,
        &[&df0.argmax, &outer0.argmax],
    );
    let outer = outer_from(&[&df.argmax, &outer0.argmax]);
    Ok((df.boundary, outer.boundary))
}

/// How the CF quantization noise numerator treats the `a1 P1 a2 P2` product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantNoiseForm {
    /// `1 + gamma^2 (a1 P1 a2 P2 + a1 P1 + a2 P2) + min(a1 P1, a2 P2)`.
    #[default]
    Verbatim,
    /// Same without the `a1 P1 a2 P2` product, for sensitivity studies.
    WithoutProduct,
}

/// Quantization noise variance `N_q` of the Gaussian CF scheme.
pub fn quantization_noise(s: &GaussianScenario, a1: f64, a2: f64, form: QuantNoiseForm) -> Result<f64> {
    let denom = s.relay_snr();
    if denom == 0.0 {
        return Err(Error::DivisionByZero("eta^2 P3 = 0 in the CF quantization noise"));
    }
    let (x1, x2) = (a1 * s.p1, a2 * s.p2);
    let product = match form {
        QuantNoiseForm::Verbatim => x1 * x2,
        QuantNoiseForm::WithoutProduct => 0.0,
    };
    Ok((1.0 + s.gamma2 * (product + x1 + x2) + x1.min(x2)) / denom)
}

/// CF rate pair for source power fractions `(a1, a2)`.
pub fn cf_rates(s: &GaussianScenario, a1: f64, a2: f64) -> Result<(Bits, Bits)> {
    cf_rates_with(s, a1, a2, QuantNoiseForm::Verbatim)
}

pub fn cf_rates_with(
    s: &GaussianScenario,
    a1: f64,
    a2: f64,
    form: QuantNoiseForm,
) -> Result<(Bits, Bits)> {
    s.validate()?;
    for (what, v) in [("alpha1", a1), ("alpha2", a2)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Domain {
                what,
                value: v,
                expected: "0 <= alpha <= 1",
            });
        }
    }
    let nq = quantization_noise(s, a1, a2, form)?;
    Ok(cf_from_noise(s, a1, a2, nq))
}

fn cf_from_noise(s: &GaussianScenario, a1: f64, a2: f64, nq: f64) -> (Bits, Bits) {
    (
        half_log2(1.0 + s.gamma2 * a1 * s.p1 / (1.0 + nq)),
        half_log2(1.0 + s.gamma2 * a2 * s.p2 / (1.0 + nq)),
    )
}

/// CF region boundary (union of rectangles over `(a1, a2)`).
///
/// With `eta^2 P3 = 0` the relay is useless and the region is `{(0, 0)}`.
pub fn cf_boundary(s: &GaussianScenario, cfg: &BoundaryConfig) -> Result<RegionBoundary> {
    cf_boundary_with(s, cfg, QuantNoiseForm::Verbatim)
}

pub fn cf_boundary_with(
    s: &GaussianScenario,
    cfg: &BoundaryConfig,
    form: QuantNoiseForm,
) -> Result<RegionBoundary> {
    s.validate()?;
    cfg.validate()?;
    if s.relay_snr() == 0.0 {
        return Ok(sweep_frontier::<1, _, _>(
            "CF",
            0.0,
            |_| Some(Pentagon::rectangle(0.0, 0.0)),
            |_| true,
            cfg,
            &[],
        )
        .boundary);
    }
    Ok(sweep_frontier::<2, _, _>(
        "CF",
        0.0,
        |x| {
            let nq = quantization_noise(s, x[0], x[1], form).ok()?;
            let (r1, r2) = cf_from_noise(s, x[0], x[1], nq);
            Some(Pentagon::rectangle(r1, r2))
        },
        |_| true,
        cfg,
        &[],
    )
    .boundary)
}

/// Terms of the symmetric outer bound at `x = alpha * alpha3` (plus `alpha3`
/// for the receiver term), in order: relay, receiver, receiver sum (halved).
///
/// Parameter points where a log argument is not positive yield `-inf`, so they
/// never win a maximization.
fn symmetric_terms(p: f64, g2: f64, e2: f64, alpha: f64, alpha3: f64) -> [f64; 3] {
    let x = alpha * alpha3;
    let g2p = g2 * p;
    let relay_arg = if g2p == 0.0 {
        1.0
    } else {
        1.0 + g2p * (1.0 - 2.0 * x) / (1.0 - x)
    };
    [
        log_or_neg_inf(relay_arg, half_log2),
        half_log2(1.0 + p + e2 * p * (1.0 - alpha3)),
        quarter_log2(1.0 + p * (1.0 + e2 + 2.0 * e2.sqrt() * x.sqrt())),
    ]
}

fn symmetric_df_extra(p: f64, g2: f64, alpha: f64, alpha3: f64) -> f64 {
    let g2p = g2 * p;
    let arg = if g2p == 0.0 {
        1.0
    } else {
        1.0 + 2.0 * g2p * (1.0 - 2.0 * alpha * alpha3)
    };
    log_or_neg_inf(arg, quarter_log2)
}

fn log_or_neg_inf(arg: f64, f: fn(f64) -> f64) -> f64 {
    if arg > 0.0 {
        f(arg)
    } else {
        f64::NEG_INFINITY
    }
}

/// Equal-rate optimum with the maximizing `(alpha, alpha3)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EqualRate {
    pub rate: Bits,
    pub alpha: f64,
    pub alpha3: f64,
}

fn symmetric_df_search(p: f64, g2: f64, e2: f64, search: &SearchConfig) -> Option<crate::numerics::Maximum<2>> {
    maximize_in_box(
        |x| {
            let [t1, t2, t3] = symmetric_terms(p, g2, e2, x[0], x[1]);
            t1.min(t2).min(t3).min(symmetric_df_extra(p, g2, x[0], x[1]))
        },
        |_| true,
        search,
        &[],
    )
}

/// Upper bound on the equal rate `R1 = R2` of the symmetric channel:
/// max over `(alpha, alpha3)` in the unit square of the three-term minimum.
///
/// The search is seeded with the DF maximizer, whose objective is pointwise
/// smaller, so `symmetric_df_rate <= symmetric_upper_bound` holds exactly.
pub fn symmetric_upper_bound(s: &GaussianScenario, search: &SearchConfig) -> Result<EqualRate> {
    let p = s.require_symmetric()?;
    search.validate()?;
    let (g2, e2) = (s.gamma2, s.eta2);
    let seed = symmetric_df_search(p, g2, e2, search).map(|m| m.point);
    let m = maximize_in_box(
        |x| {
            let [t1, t2, t3] = symmetric_terms(p, g2, e2, x[0], x[1]);
            t1.min(t2).min(t3)
        },
        |_| true,
        search,
        seed.as_slice(),
    );
    Ok(equal_rate(m))
}

/// Equal rate achievable with DF: the upper bound's minimum plus the relay
/// sum-rate term `(1/4) log2(1 + 2 gamma^2 P (1 - 2 alpha alpha3))`.
pub fn symmetric_df_rate(s: &GaussianScenario, search: &SearchConfig) -> Result<EqualRate> {
    let p = s.require_symmetric()?;
    search.validate()?;
    Ok(equal_rate(symmetric_df_search(p, s.gamma2, s.eta2, search)))
}

fn equal_rate(m: Option<crate::numerics::Maximum<2>>) -> EqualRate {
    match m {
        Some(m) => EqualRate {
            rate: clamp_rate(m.value),
            alpha: m.point[0],
            alpha3: m.point[1],
        },
        None => EqualRate {
            rate: 0.0,
            alpha: 0.0,
            alpha3: 0.0,
        },
    }
}

/// Equal rate achievable with CF (`a1 = a2 = alpha`, maximized over alpha).
/// Returns the rate and the maximizing alpha.
pub fn symmetric_cf_rate(s: &GaussianScenario, search: &SearchConfig) -> Result<(Bits, f64)> {
    symmetric_cf_rate_with(s, search, QuantNoiseForm::Verbatim)
}

pub fn symmetric_cf_rate_with(
    s: &GaussianScenario,
    search: &SearchConfig,
    form: QuantNoiseForm,
) -> Result<(Bits, f64)> {
    let p = s.require_symmetric()?;
    search.validate()?;
    if p == 0.0 {
        return Ok((0.0, 0.0));
    }
    if s.relay_snr() == 0.0 {
        return Err(Error::DivisionByZero("eta^2 P3 = 0 in the CF quantization noise"));
    }
    let m = maximize_on_interval(
        |a| {
            let nq = quantization_noise(s, a, a, form).expect("relay SNR checked");
            let (r1, r2) = cf_from_noise(s, a, a, nq);
            r1.min(r2)
        },
        search,
    );
    Ok(m.map_or((0.0, 0.0), |m| (clamp_rate(m.value), m.point[0])))
}

/// Equal rate of the nested-lattice scheme where the relay decodes the
/// modulo sum of the two lattice codewords:
/// `max(0, min{ (1/2) log2(1/2 + gamma^2 P), (1/2) log2(1 + P min(1, eta^2)),
/// (1/4) log2(1 + P (1 + eta^2)) })`.
pub fn lattice_equal_rate(s: &GaussianScenario) -> Result<Bits> {
    let p = s.require_symmetric()?;
    let (g2, e2) = (s.gamma2, s.eta2);
    let relay = log_or_neg_inf(0.5 + g2 * p, half_log2);
    let receiver = half_log2(1.0 + p * e2.min(1.0));
    let broadcast = quarter_log2(1.0 + p * (1.0 + e2));
    Ok(clamp_rate(relay.min(receiver).min(broadcast)))
}

/// Equal rate from each scheme at one power.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EqualRates {
    pub p: f64,
    pub upper: Bits,
    pub df: Bits,
    pub cf: Bits,
    pub lattice: Bits,
}

pub fn equal_rates(p: f64, gamma2: f64, eta2: f64, search: &SearchConfig) -> Result<EqualRates> {
    let s = GaussianScenario::symmetric(p, gamma2, eta2)?;
    Ok(EqualRates {
        p,
        upper: symmetric_upper_bound(&s, search)?.rate,
        df: symmetric_df_rate(&s, search)?.rate,
        cf: symmetric_cf_rate(&s, search)?.0,
        lattice: lattice_equal_rate(&s)?,
    })
}
