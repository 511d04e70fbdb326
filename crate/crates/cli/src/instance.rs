//! Seeded random instances.
//!
//! Each pair is drawn from a ChaCha8 stream (`rand_chacha`) whose 64-bit seed
//! is a SplitMix64 mix of the run seed, both sizes, the repetition index and
//! the alphabet size, so an instance depends on nothing else.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const PRNG_DESCRIPTION: &str =
    "ChaCha8 (rand_chacha 0.3), seeded by SplitMix64 over (seed, size_a, size_b, rep, alphabet)";

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

pub fn instance_seed(seed: u64, size_a: usize, size_b: usize, rep: usize, alphabet: usize) -> u64 {
    [size_a as u64, size_b as u64, rep as u64, alphabet as u64]
        .into_iter()
        .fold(splitmix64(seed), |acc, v| splitmix64(acc ^ v))
}

/// Symbol for letter index `x`: lowercase letters while the alphabet fits,
/// raw octets otherwise.
fn symbol(x: usize, alphabet: usize) -> u8 {
    if alphabet <= 26 {
        b'a' + x as u8
    } else {
        x as u8
    }
}

pub fn random_sequence(rng: &mut ChaCha8Rng, len: usize, alphabet: usize) -> Vec<u8> {
    (0..len)
        .map(|_| symbol(rng.gen_range(0..alphabet), alphabet))
        .collect()
}

/// The pair of strings for one benchmark cell and repetition.
pub fn generate_pair(
    seed: u64,
    size_a: usize,
    size_b: usize,
    rep: usize,
    alphabet: usize,
) -> (Vec<u8>, Vec<u8>) {
    assert!((2..=256).contains(&alphabet));
    let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(seed, size_a, size_b, rep, alphabet));
    let a = random_sequence(&mut rng, size_a, alphabet);
    let b = random_sequence(&mut rng, size_b, alphabet);
    (a, b)
}
