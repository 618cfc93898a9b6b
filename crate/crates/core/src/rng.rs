//! Deterministic 64-bit generator used for every random draw in the crate.
//!
//! All experiments are keyed by explicit seeds so that reports are
//! byte-identical across runs and platforms.  The generator is SplitMix64:
//! a 64-bit counter advanced by the golden-ratio increment, finalized by a
//! mix-and-multiply avalanche.  No external RNG crate is involved, so the
//! stream is pinned by the constants below.

/// SplitMix64 stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer: one avalanche pass over a 64-bit word.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix64(self.state)
    }

    /// Uniform draw in `0..bound` by rejection, so the distribution is exact
    /// and the stream consumption is reproducible for a fixed bound.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = (u64::MAX / bound) * bound;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// Signed draw in `-half..=half`.
    pub fn next_signed(&mut self, half: u64) -> i64 {
        self.next_below(2 * half + 1) as i64 - half as i64
    }
}

/// FNV-1a over a byte string; used to derive per-item seeds from labels.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xCBF2_9CE4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    h
}

/// Seed for trial `trial` of the work item named `label` under `master`.
pub fn derive_seed(master: u64, label: &str, trial: u64) -> u64 {
    mix64(master ^ fnv1a(label.as_bytes()) ^ (trial.wrapping_add(1)).wrapping_mul(GAMMA))
}
