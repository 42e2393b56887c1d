//! Deterministic pseudo-random numbers for instance generation.
//!
//! Benchmark corpora must be reproducible across platforms and
//! languages, so generation uses a fixed, fully specified generator
//! rather than an ecosystem RNG: SplitMix64. The state advances by the
//! 64-bit golden-ratio constant `0x9e3779b97f4a7c15` and each output is
//! the finalizer
//! `z ^= z >> 30; z *= 0xbf58476d1ce4e5b9; z ^= z >> 27;
//!  z *= 0x94d049bb133111eb; z ^= z >> 31`
//! applied to the new state, all in wrapping 64-bit arithmetic.

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform-enough draw from `0..bound` by reduction; `bound` must be
    /// nonzero. The modulo bias is irrelevant at instance-generation
    /// scale and keeps the generator trivially portable.
    pub fn below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        (self.next_u64() % bound as u64) as usize
    }

    /// Bernoulli draw with the given probability, using the top 53 bits.
    pub fn chance(&mut self, probability: f64) -> bool {
        ((self.next_u64() >> 11) as f64) < probability * (1u64 << 53) as f64
    }

    /// `count` distinct values from `0..universe`, by a partial
    /// Fisher-Yates shuffle over the index range, in draw order.
    pub fn distinct(&mut self, universe: usize, count: usize) -> Vec<usize> {
        assert!(count <= universe);
        let mut cells: Vec<usize> = (0..universe).collect();
        for k in 0..count {
            let pick = k + self.below(universe - k);
            cells.swap(k, pick);
        }
        cells.truncate(count);
        cells
    }
}
