//! Counter-based deterministic uniforms.
//!
//! All randomness in this crate is derived by avalanche-mixing a 64-bit seed
//! with stream tags and counters. There is no sequential generator state, so
//! any value can be recomputed in isolation: the weight at a point, the
//! uniform of an unordered vertex pair, the seed of a trial. This is what
//! makes lazy edge revelation consistent with full graph generation, and what
//! couples edge sets monotonically across percolation parameters that share a
//! seed.
//!
//! Transcendental-free integer mixing keeps the values bit-identical across
//! platforms.

/// Stream tag for per-point weight uniforms.
pub const STREAM_WEIGHTS: u64 = 0x77_u64; // 'w'
/// Stream tag for per-pair edge uniforms.
pub const STREAM_EDGES: u64 = 0x65_u64; // 'e'
/// Stream tag for per-trial seed derivation.
pub const STREAM_TRIALS: u64 = 0x74_u64; // 't'
/// Stream tag for auxiliary position sampling (pair placement, sources).
pub const STREAM_POSITIONS: u64 = 0x70_u64; // 'p'

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
const COMB_A: u64 = 0xBF58_476D_1CE4_E5B9;
const COMB_B: u64 = 0x94D0_49BB_1331_11EB;

/// SplitMix64 finalizer: a full-avalanche 64-bit permutation.
#[inline(always)]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(COMB_A);
    z = (z ^ (z >> 27)).wrapping_mul(COMB_B);
    z ^ (z >> 31)
}

/// Mix a seed with one counter word.
#[inline(always)]
pub fn mix2(seed: u64, a: u64) -> u64 {
    mix64(mix64(seed.wrapping_add(GOLDEN)) ^ a.wrapping_mul(COMB_A))
}

/// Mix a seed with two counter words (order-sensitive).
#[inline(always)]
pub fn mix3(seed: u64, a: u64, b: u64) -> u64 {
    mix64(mix2(seed, a) ^ b.wrapping_mul(COMB_B))
}

/// Map a mixed 64-bit word to a uniform in the open interval (0,1).
///
/// Uses the top 52 bits offset by half an ulp; both the offset sum and the
/// final product are exact, so 0 and 1 are unreachable and inverse-transform
/// sampling never produces infinities.
#[inline(always)]
pub fn to_unit_open(h: u64) -> f64 {
    ((h >> 12) as f64 + 0.5) * (1.0 / 4_503_599_627_370_496.0)
}

/// Uniform in (0,1) for a (seed, stream, counter) triple.
#[inline(always)]
pub fn uniform(seed: u64, stream: u64, counter: u64) -> f64 {
    to_unit_open(mix2(seed ^ stream, counter))
}

/// Derive the seed of an independent trial from a master seed.
#[inline(always)]
pub fn trial_seed(master_seed: u64, trial: u64) -> u64 {
    mix2(master_seed ^ STREAM_TRIALS, trial)
}

/// Stateless per-unordered-pair uniform source.
///
/// The uniform of the pair `{i, j}` depends only on (seed, min, max), so it
/// is symmetric in its arguments, independent of revelation order, and
/// identical between lazy and full graph construction. Distinct pairs
/// collide on their 64-bit mix with probability ~2^-64 per pair; uniforms
/// are then truncated to 53 bits.
#[derive(Debug, Clone, Copy)]
pub struct PairUniformSource {
    base: u64,
}

impl PairUniformSource {
    pub fn new(seed: u64) -> Self {
        PairUniformSource {
            base: mix64(seed ^ STREAM_EDGES),
        }
    }

    /// Raw mixed word for the unordered pair.
    #[inline(always)]
    pub fn raw(&self, i: u64, j: u64) -> u64 {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        mix3(self.base, lo, hi)
    }

    /// Uniform in (0,1) for the unordered pair.
    #[inline(always)]
    pub fn uniform(&self, i: u64, j: u64) -> f64 {
        to_unit_open(self.raw(i, j))
    }
}

/// Hash a lattice coordinate vector into a stable 64-bit key.
///
/// Used for infinite-lattice sampling (origin degree experiments) where
/// points have no box index. Coordinates are folded in order, prefixed by
/// the dimension so vectors of different lengths cannot alias.
pub fn coord_key(coords: &[i64]) -> u64 {
    let mut h = mix64(coords.len() as u64 ^ GOLDEN);
    for &c in coords {
        h = mix2(h, c as u64);
    }
    h
}
