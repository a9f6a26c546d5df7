//! Seeded random streams.
//!
//! Every stochastic ingredient of a run (bath couplings, central-bath
//! couplings, initial bath state) draws from its own ChaCha8 stream, a
//! counter-based generator whose output is identical on every platform.
//! A single master seed is expanded into per-purpose sub-seeds with a
//! SplitMix64 mix, so fixing the master seed fixes the whole experiment
//! while each ingredient stays independently reproducible.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// The independent random streams a master seed is split into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedStream {
    /// Intra-bath coupling table Ω.
    BathCouplings,
    /// Central-bath coupling table Δ.
    CentralCouplings,
    /// Random superposition used as the initial bath state.
    BathState,
}

impl SeedStream {
    fn tag(self) -> u64 {
        match self {
            SeedStream::BathCouplings => 1,
            SeedStream::CentralCouplings => 2,
            SeedStream::BathState => 3,
        }
    }
}

/// SplitMix64 finalizer; also the mix used by `sub_seed`.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Expand a master seed into the sub-seed for one stream.
///
/// `sub_seed(s, t) = splitmix64(s XOR splitmix64(tag(t)))`; documented so the
/// split can be reproduced outside this crate.
pub fn sub_seed(master: u64, stream: SeedStream) -> u64 {
    splitmix64(master ^ splitmix64(stream.tag()))
}

/// A deterministic generator for the given 64-bit seed.
pub fn stream_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One sample of the rotation-invariant complex normal distribution
/// (independent standard-normal real and imaginary parts).
pub fn standard_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}
