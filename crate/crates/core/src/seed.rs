//! Counter-style seed derivation so any sample regenerates from its
//! coordinates alone, without replaying an RNG stream.

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Collapse a list of coordinate words into one RNG seed.
pub(crate) fn mix(parts: &[u64]) -> u64 {
    let mut acc = 0x5114_95b1_7c0f_fee7u64;
    for &p in parts {
        acc = splitmix64(acc ^ p);
    }
    acc
}
