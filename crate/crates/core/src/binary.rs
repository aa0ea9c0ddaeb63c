//! Binary symmetric cMACr:
//!
//! ```text
//! Y1 = X1 ^ X3 ^ Z1,  Y2 = X2 ^ X3 ^ Z2,  Y3 = X1 ^ X2 ^ Z3
//! ```
//!
//! with independent `Zi ~ Bernoulli(eps_i)` and no relay message. The capacity
//! region (reached by letting the relay decode only the XOR of the messages)
//! and the smaller region of classic decode-and-forward, which additionally
//! caps the sum rate at the relay's MAC capacity `1 - Hb(eps3)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{binary_entropy, linspace, Bits, Probability};

/// Crossover probabilities of the three binary symmetric links, each in
/// `[0, 0.5]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinaryScenario {
    pub eps1: Probability,
    pub eps2: Probability,
    pub eps3: Probability,
}

impl BinaryScenario {
    pub fn new(eps1: f64, eps2: f64, eps3: f64) -> Result<Self> {
        let s = Self {
            eps1: Probability::new(eps1)?,
            eps2: Probability::new(eps2)?,
            eps3: Probability::new(eps3)?,
        };
        s.validate()?;
        Ok(s)
    }

    /// A crossover above 1/2 is a relabeled channel and is rejected.
    pub fn validate(&self) -> Result<()> {
        for (what, e) in [("eps1", self.eps1), ("eps2", self.eps2), ("eps3", self.eps3)] {
            if e.value() > 0.5 {
                return Err(Error::Domain {
                    what,
                    value: e.value(),
                    expected: "0 <= eps <= 0.5",
                });
            }
        }
        Ok(())
    }

    /// Swaps the roles of the two source/receiver pairs.
    pub fn mirrored(&self) -> Self {
        Self {
            eps1: self.eps2,
            eps2: self.eps1,
            eps3: self.eps3,
        }
    }
}

fn bsc_capacity(e: Probability) -> Bits {
    1.0 - binary_entropy(e)
}

/// `{R1 <= r1, R2 <= r2, R1 + R2 <= sum}` plus, for DF, `R1 + R2 <= relay_sum`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinaryConstraints {
    pub r1: Bits,
    pub r2: Bits,
    pub sum: Bits,
    pub relay_sum: Option<Bits>,
}

impl BinaryConstraints {
    /// Effective sum-rate limit.
    pub fn sum_limit(&self) -> Bits {
        self.relay_sum.map_or(self.sum, |r| self.sum.min(r))
    }

    /// True when both constraint sets admit exactly the same rate pairs.
    pub fn same_region(&self, other: &BinaryConstraints) -> bool {
        self.r1 == other.r1 && self.r2 == other.r2 && self.sum_limit() == other.sum_limit()
    }

    /// `(R1, R2)` samples of the region's upper-right boundary.
    pub fn boundary(&self, points: usize) -> Vec<(Bits, Bits)> {
        let r1_end = self.r1.min(self.sum_limit()).max(0.0);
        linspace(0.0, r1_end, points)
            .into_iter()
            .map(|r1| (r1, self.r2.min(self.sum_limit() - r1).max(0.0)))
            .collect()
    }
}

/// Capacity region of the binary symmetric cMACr.
pub fn binary_capacity_constraints(b: &BinaryScenario) -> Result<BinaryConstraints> {
    b.validate()?;
    let relay = bsc_capacity(b.eps3);
    Ok(BinaryConstraints {
        r1: relay,
        r2: relay,
        sum: bsc_capacity(b.eps1).min(bsc_capacity(b.eps2)),
        relay_sum: None,
    })
}

/// Decode-and-forward region: the capacity constraints plus the relay's sum
/// rate `R1 + R2 <= 1 - Hb(eps3)`.
pub fn binary_df_constraints(b: &BinaryScenario) -> Result<BinaryConstraints> {
    let mut c = binary_capacity_constraints(b)?;
    c.relay_sum = Some(bsc_capacity(b.eps3));
    Ok(c)
}

/// Exact constraint check.
pub fn contains(c: &BinaryConstraints, r1: Bits, r2: Bits) -> bool {
    r1 >= 0.0
        && r2 >= 0.0
        && r1 <= c.r1
        && r2 <= c.r2
        && r1 + r2 <= c.sum
        && c.relay_sum.is_none_or(|r| r1 + r2 <= r)
}

/// Grid maximum of one mutual-information term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleMax {
    pub value: Bits,
    /// Bernoulli parameters of the inputs that were varied, at the maximum.
    pub argmax: Vec<f64>,
}

/// Exhaustive-search maxima of the mutual informations that bound the binary
/// region, over independent Bernoulli inputs on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub grid_n: usize,
    /// `max I(X1; Y3 | X2, X3)` over `(p1, p2)`.
    pub relay_r1: OracleMax,
    /// `max I(X2; Y3 | X1, X3)` over `(p2, p1)`.
    pub relay_r2: OracleMax,
    /// `max I(X1, X3; Y1)` over `(p1, p3)`.
    pub rx1: OracleMax,
    /// `max I(X2, X3; Y2)` over `(p2, p3)`.
    pub rx2: OracleMax,
}

impl OracleReport {
    pub fn sum_rate(&self) -> Bits {
        self.rx1.value.min(self.rx2.value)
    }

    pub fn grid_step(&self) -> f64 {
        1.0 / (self.grid_n - 1) as f64
    }
}

/// Mutual information `I(X; Y)` in bits for input pmf `px` and channel rows
/// `w[x][y]`.
fn mutual_information(px: &[f64], w: &[[f64; 2]]) -> f64 {
    let mut py = [0.0; 2];
    for (p, row) in px.iter().zip(w) {
        py[0] += p * row[0];
        py[1] += p * row[1];
    }
    let mut mi = 0.0;
    for (p, row) in px.iter().zip(w) {
        for y in 0..2 {
            let joint = p * row[y];
            if joint > 0.0 {
                mi += joint * (row[y] / py[y]).log2();
            }
        }
    }
    mi
}

fn bsc_row(input: u8, eps: f64) -> [f64; 2] {
    if input == 0 {
        [1.0 - eps, eps]
    } else {
        [eps, 1.0 - eps]
    }
}

fn bern(p: f64) -> [f64; 2] {
    [1.0 - p, p]
}

/// `I(Xa; Y3 | Xb, X3)` where `Y3 = Xa ^ Xb ^ Z3`; `X3` does not reach `Y3`,
/// so conditioning on it is a no-op for independent inputs.
fn relay_term(pa: f64, pb: f64, eps3: f64) -> f64 {
    let a = bern(pa);
    let b = bern(pb);
    (0..2u8)
        .map(|xb| {
            let w = [bsc_row(xb, eps3), bsc_row(1 ^ xb, eps3)];
            b[xb as usize] * mutual_information(&a, &w)
        })
        .sum()
}

/// `I(Xa, X3; Ya)` where `Ya = Xa ^ X3 ^ Za`.
fn receiver_term(pa: f64, p3: f64, eps: f64) -> f64 {
    let a = bern(pa);
    let r = bern(p3);
    let mut px = [0.0; 4];
    let mut w = [[0.0; 2]; 4];
    for xa in 0..2u8 {
        for x3 in 0..2u8 {
            let i = (2 * xa + x3) as usize;
            px[i] = a[xa as usize] * r[x3 as usize];
            w[i] = bsc_row(xa ^ x3, eps);
        }
    }
    mutual_information(&px, &w)
}

fn grid_max(grid: &[f64], f: impl Fn(f64, f64) -> f64) -> OracleMax {
    let mut best = OracleMax {
        value: f64::NEG_INFINITY,
        argmax: vec![0.0, 0.0],
    };
    for &x in grid {
        for &y in grid {
            let v = f(x, y);
            if v > best.value {
                best.value = v;
                best.argmax = vec![x, y];
            }
        }
    }
    best
}

/// Brute-force check of the closed-form constraints: maximizes each
/// constraint's mutual information directly from the channel law over a
/// `grid_n x grid_n` grid of input Bernoulli parameters.
pub fn brute_force_channel_oracle(b: &BinaryScenario, grid_n: usize) -> Result<OracleReport> {
    b.validate()?;
    if grid_n < 2 {
        return Err(Error::Config(format!("oracle grid_n = {grid_n} < 2")));
    }
    let grid = linspace(0.0, 1.0, grid_n);
    let (e1, e2, e3) = (b.eps1.value(), b.eps2.value(), b.eps3.value());
    Ok(OracleReport {
        grid_n,
        relay_r1: grid_max(&grid, |p1, p2| relay_term(p1, p2, e3)),
        relay_r2: grid_max(&grid, |p2, p1| relay_term(p2, p1, e3)),
        rx1: grid_max(&grid, |p1, p3| receiver_term(p1, p3, e1)),
        rx2: grid_max(&grid, |p2, p3| receiver_term(p2, p3, e2)),
    })
}
