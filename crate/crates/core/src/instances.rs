//! Reproducible random instance stream.
//!
//! Benchmarks and stress tests need identical instances across runs,
//! machines and reimplementations, so randomness comes from a fully
//! specified linear congruential generator rather than a library RNG:
//!
//! ```text
//! state <- state * 6364136223846793005 + 1442695040888963407   (mod 2^64)
//! u     <- (state >> 11) / 2^53                                 in [0, 1)
//! ```
//!
//! The generator is stepped before each output. Instances of order `m` draw,
//! in this order: for each `k = 0..=n` the superdiagonal magnitude then its
//! sign, then the subdiagonal sequence the same way, then each diagonal
//! value. Off-diagonal magnitudes are uniform in `[0.5, 2]` with a fair
//! sign; diagonal values are uniform in `[-4, 4]`.

use crate::model::JacobiCoefficients;

const LCG_MUL: u64 = 6364136223846793005;
const LCG_ADD: u64 = 1442695040888963407;

/// Per-stream seed for size `m`, trial `t` under a base seed, so trials can
/// be generated independently in any order:
/// `seed XOR m * 0x517CC1B727220A95 XOR t * 0x2545F4914F6CDD1D`.
pub fn stream_seed(seed: u64, m: usize, t: usize) -> u64 {
    seed ^ (m as u64).wrapping_mul(0x517CC1B727220A95) ^ (t as u64).wrapping_mul(0x2545F4914F6CDD1D)
}

#[derive(Debug, Clone)]
pub struct InstanceRng {
    state: u64,
}

impl InstanceRng {
    pub fn new(seed: u64) -> Self {
        InstanceRng { state: seed }
    }

    /// Next uniform draw in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.state = self.state.wrapping_mul(LCG_MUL).wrapping_add(LCG_ADD);
        (self.state >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Magnitude uniform in `[lo, hi]` with an independent fair sign.
    pub fn signed_magnitude(&mut self, lo: f64, hi: f64) -> f64 {
        let magnitude = self.in_range(lo, hi);
        if self.uniform() < 0.5 {
            -magnitude
        } else {
            magnitude
        }
    }

    /// One random instance of matrix order `m >= 2` from the documented
    /// draw sequence.
    pub fn instance(&mut self, m: usize) -> JacobiCoefficients {
        assert!(m >= 2, "instance order below 2");
        let n = m - 2;
        let a: Vec<f64> = (0..=n).map(|_| self.signed_magnitude(0.5, 2.0)).collect();
        let c: Vec<f64> = (0..=n).map(|_| self.signed_magnitude(0.5, 2.0)).collect();
        let b: Vec<f64> = (0..=n + 1).map(|_| self.in_range(-4.0, 4.0)).collect();
        JacobiCoefficients::new(n, &a, &b, &c).expect("draws are nonzero and finite")
    }
}
