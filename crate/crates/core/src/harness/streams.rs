use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random stream of trial `trial`: the ChaCha8 key is expanded from
/// `master_seed` and the trial index selects the 64-bit stream id.
pub fn trial_stream(master_seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial);
    rng
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Child master seed for a sub-experiment labelled `tag`.
pub fn derive_seed(master_seed: u64, tag: u64) -> u64 {
    splitmix64(master_seed ^ splitmix64(tag))
}
