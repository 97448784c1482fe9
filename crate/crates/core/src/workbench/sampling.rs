//! Seeded λ sampling. Each claim draws from its own ChaCha stream, so adding
//! or removing a claim leaves the samples of the others unchanged.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlinalg::GaussianRational;
use crate::liealg::DualFunctional;

pub const DEFAULT_SEED: u64 = 7;

/// Coordinates are drawn uniformly from this range.
pub const COORD_RANGE: std::ops::RangeInclusive<i64> = -3..=3;

fn stream_id(name: &str) -> u64 {
    // FNV-1a; stable across platforms and releases.
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

pub fn rng_for(seed: u64, stream: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_id(stream));
    rng
}

pub fn random_lambda<R: Rng>(rng: &mut R, dim: usize) -> DualFunctional {
    DualFunctional::new(
        (0..dim)
            .map(|_| GaussianRational::from_int(rng.gen_range(COORD_RANGE)))
            .collect(),
    )
}

/// `count` λ with integer coordinates in [−3, 3]; zero vectors are redrawn
/// when `nonzero` is set.
pub fn sample_lambdas(seed: u64, stream: &str, dim: usize, count: usize, nonzero: bool) -> Vec<DualFunctional> {
    let mut rng = rng_for(seed, stream);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let l = random_lambda(&mut rng, dim);
        if nonzero && l.is_zero() {
            continue;
        }
        out.push(l);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_in_range() {
        let a = sample_lambdas(7, "x", 3, 30, true);
        let b = sample_lambdas(7, "x", 3, 30, true);
        assert_eq!(a, b);
        assert_ne!(a, sample_lambdas(7, "y", 3, 30, true));
        assert_ne!(a, sample_lambdas(8, "x", 3, 30, true));
        for l in &a {
            assert!(!l.is_zero());
            for c in &l.coords {
                assert!(c.is_real());
                let v: i64 = c.to_string().parse().unwrap();
                assert!(COORD_RANGE.contains(&v));
            }
        }
    }
}
