//! Seeded randomness. Every random choice in the crate is drawn from a
//! generator built here from an explicit caller seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::PrimeField;

pub type LabRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> LabRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent seed for sub-stream `stream` (splitmix64 mix).
pub fn sub_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(stream.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn random_element<R: Rng + ?Sized>(field: PrimeField, rng: &mut R) -> u64 {
    rng.gen_range(0..field.modulus())
}

pub fn random_nonzero<R: Rng + ?Sized>(field: PrimeField, rng: &mut R) -> u64 {
    rng.gen_range(1..field.modulus())
}

pub fn random_vector<R: Rng + ?Sized>(field: PrimeField, n: usize, rng: &mut R) -> Vec<u64> {
    (0..n).map(|_| random_element(field, rng)).collect()
}
