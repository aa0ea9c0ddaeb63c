//! GF(2) linear block codes with exhaustive maximum-likelihood decoding.
//!
//! Words of length `n <= 64` are packed into a `u64`: bit `i` is coordinate
//! `i`. A `k`-bit message is a `u64` whose bit `j` selects generator row `j`,
//! so `msg * G` is the XOR of the selected rows.

mod sim;

pub use sim::{derive_seed, run_sim, RelayDecoder, SimConfig, SimReport};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Probability;

/// Largest supported block length.
pub const MAX_N: usize = 64;

/// Default limit on message bits enumerated by [`ml_decode`].
pub const DEFAULT_CAP: usize = 16;

/// Extra message bits allowed to [`joint_ml_decode`] on top of the cap.
pub const JOINT_EXTRA: usize = 4;

/// Mask with the low `bits` bits set.
pub fn mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Hamming distance between two packed words.
pub fn hamming(a: u64, b: u64) -> u32 {
    (a ^ b).count_ones()
}

/// Binary linear code given by a `k x n` generator matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearCode {
    k: usize,
    n: usize,
    rows: Vec<u64>,
}

impl LinearCode {
    /// Builds a code from packed generator rows. `k = 0` is the trivial code
    /// whose only codeword is zero.
    pub fn from_rows(n: usize, rows: Vec<u64>) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::Dimension(format!("block length n = {n} not in 1..={MAX_N}")));
        }
        if rows.len() > n {
            return Err(Error::Dimension(format!("k = {} exceeds n = {n}", rows.len())));
        }
        if let Some(r) = rows.iter().find(|&&r| r & !mask(n) != 0) {
            return Err(Error::Dimension(format!("row {r:#x} is wider than n = {n}")));
        }
        Ok(Self {
            k: rows.len(),
            n,
            rows,
        })
    }

    /// `k x k` identity generator.
    pub fn identity(k: usize) -> Result<Self> {
        Self::from_rows(k, (0..k).map(|j| 1u64 << j).collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Generator bit at row `i`, column `j`.
    pub fn bit(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// Code spanned by the last `count` rows.
    pub fn tail(&self, count: usize) -> Result<Self> {
        if count > self.k {
            return Err(Error::Dimension(format!("tail of {count} rows from k = {}", self.k)));
        }
        Self::from_rows(self.n, self.rows[self.k - count..].to_vec())
    }

    /// `msg * G` over GF(2).
    pub fn encode(&self, msg: u64) -> Result<u64> {
        if msg & !mask(self.k) != 0 {
            return Err(Error::Dimension(format!(
                "message {msg:#x} has bits beyond k = {}",
                self.k
            )));
        }
        Ok(self.encode_unchecked(msg))
    }

    pub(crate) fn encode_unchecked(&self, mut msg: u64) -> u64 {
        let mut word = 0;
        while msg != 0 {
            word ^= self.rows[msg.trailing_zeros() as usize];
            msg &= msg - 1;
        }
        word
    }

    /// All `2^k` codewords indexed by message. The caller bounds `k`.
    pub(crate) fn codebook(&self) -> Vec<u64> {
        let mut table = vec![0u64; 1usize << self.k];
        for m in 1..table.len() {
            table[m] = table[m & (m - 1)] ^ self.rows[m.trailing_zeros() as usize];
        }
        table
    }
}

/// `k x n` generator with i.i.d. uniform entries drawn from `seed`.
pub fn random_code(k: usize, n: usize, seed: u64) -> Result<LinearCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_code_from(k, n, &mut rng)
}

/// As [`random_code`], drawing from an existing stream.
pub fn random_code_from(k: usize, n: usize, rng: &mut impl Rng) -> Result<LinearCode> {
    if k == 0 || k > n {
        return Err(Error::Dimension(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    if n > MAX_N {
        return Err(Error::Dimension(format!("block length n = {n} > {MAX_N}")));
    }
    let rows = (0..k).map(|_| rng.random::<u64>() & mask(n)).collect();
    LinearCode::from_rows(n, rows)
}

/// Passes an `n`-bit word through a BSC: each bit flips independently when
/// a uniform draw falls below `eps`.
pub fn bsc(word: u64, n: usize, eps: Probability, rng: &mut impl Rng) -> Result<u64> {
    if eps.value() > 0.5 {
        return Err(Error::Domain {
            what: "eps",
            value: eps.value(),
            expected: "0 <= eps <= 0.5",
        });
    }
    if n > MAX_N {
        return Err(Error::Dimension(format!("block length n = {n} > {MAX_N}")));
    }
    Ok(word ^ bsc_noise(n, eps.value(), rng))
}

pub(crate) fn bsc_noise(n: usize, eps: f64, rng: &mut impl Rng) -> u64 {
    let mut z = 0;
    for i in 0..n {
        if rng.random::<f64>() < eps {
            z |= 1u64 << i;
        }
    }
    z
}

/// Rank over GF(2) of the packed rows.
pub fn rank(rows: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::with_capacity(rows.len());
    for &r in rows {
        let mut v = r;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// True if the rows of `parts`, stacked, are linearly independent.
pub fn independent(parts: &[&[u64]]) -> bool {
    let rows: Vec<u64> = parts.iter().flat_map(|p| p.iter().copied()).collect();
    rank(&rows) == rows.len()
}

fn check_cap(needed: usize, cap: usize) -> Result<()> {
    if needed > cap {
        Err(Error::CapExceeded { needed, cap })
    } else {
        Ok(())
    }
}

/// Minimum-distance decoding by enumeration of all `2^k` messages; ties go to
/// the smallest message. Errors if `k > cap`.
pub fn ml_decode(code: &LinearCode, received: u64, cap: usize) -> Result<u64> {
    check_cap(code.k, cap)?;
    Ok(nearest(&code.codebook(), received))
}

pub(crate) fn nearest(book: &[u64], received: u64) -> u64 {
    let mut best = (u32::MAX, 0u64);
    for (m, &c) in book.iter().enumerate() {
        let d = hamming(c, received);
        if d < best.0 {
            best = (d, m as u64);
            if d == 0 {
                break;
            }
        }
    }
    best.1
}

/// Joint minimum-distance decoding of `received ~ a*GA ^ b*GB`; ties go to
/// the smallest `(a, b)` in lexicographic order. Errors if
/// `kA + kB > cap + JOINT_EXTRA`.
pub fn joint_ml_decode(
    code_a: &LinearCode,
    code_b: &LinearCode,
    received: u64,
    cap: usize,
) -> Result<(u64, u64)> {
    if code_a.n != code_b.n {
        return Err(Error::Dimension(format!(
            "block lengths differ: {} vs {}",
            code_a.n, code_b.n
        )));
    }
    check_cap(code_a.k + code_b.k, cap + JOINT_EXTRA)?;
    Ok(nearest_pair(&code_a.codebook(), &code_b.codebook(), received))
}

pub(crate) fn nearest_pair(book_a: &[u64], book_b: &[u64], received: u64) -> (u64, u64) {
    let mut best = (u32::MAX, 0u64, 0u64);
    for (a, &ca) in book_a.iter().enumerate() {
        let r = received ^ ca;
        for (b, &cb) in book_b.iter().enumerate() {
            let d = hamming(r, cb);
            if d < best.0 {
                best = (d, a as u64, b as u64);
                if d == 0 {
                    return (best.1, best.2);
                }
            }
        }
    }
    (best.1, best.2)
}
