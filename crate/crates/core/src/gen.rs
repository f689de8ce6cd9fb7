//! Seeded generators for random streams and test instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::streams::{Permutation, Stream, Tail};

/// Shape of randomly drawn streams.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StreamShape {
    pub max_prefix: usize,
    pub max_period: usize,
    /// Values are uniform in `[-amplitude, amplitude]`.
    pub amplitude: f64,
}

impl Default for StreamShape {
    fn default() -> Self {
        StreamShape {
            max_prefix: 12,
            max_period: 4,
            amplitude: 5.0,
        }
    }
}

/// Sub-seed for trial `index` of a run seeded with `seed` (SplitMix64 finalizer).
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index.wrapping_mul(0xBF58_476D_1CE4_E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(sub_seed(seed, index))
}

pub fn random_stream<R: Rng + ?Sized>(rng: &mut R, shape: &StreamShape) -> Stream {
    let a = shape.amplitude;
    let n = rng.random_range(0..=shape.max_prefix);
    let prefix: Vec<f64> = (0..n).map(|_| rng.random_range(-a..=a)).collect();
    let period = rng.random_range(1..=shape.max_period.max(1));
    let tail = if period == 1 {
        Tail::Constant(rng.random_range(-a..=a))
    } else {
        Tail::Periodic((0..period).map(|_| rng.random_range(-a..=a)).collect())
    };
    Stream::new(prefix, tail).expect("generated values are finite")
}

/// A stream with every value in `[0, amplitude]`.
pub fn random_nonnegative<R: Rng + ?Sized>(rng: &mut R, shape: &StreamShape) -> Stream {
    let half = shape.amplitude / 2.0;
    random_stream(rng, &StreamShape { amplitude: half, ..*shape }).translate(half)
}

/// Uniformly random permutation of `0..m`.
pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Permutation {
    let mut images: Vec<usize> = (0..m).collect();
    for i in (1..m).rev() {
        let j = rng.random_range(0..=i);
        images.swap(i, j);
    }
    Permutation::from_images(images).expect("shuffle is a bijection")
}
