//! Sub-seed derivation.
//!
//! Every seeded stage of the pipeline draws its own seed from the single
//! user-supplied master seed and a stable stage label, so adding or removing
//! a stage never shifts the randomness of the others.

/// Derive a per-stage seed from the master seed and a stage label.
///
/// Uses FNV-1a over the label bytes followed by a splitmix64 finalizer;
/// stable across platforms and releases.
pub fn derive_seed(master: u64, label: &str) -> u64 {
    const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut hash = FNV_OFFSET;
    for byte in label.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(FNV_PRIME);
    }
    splitmix64(master ^ hash)
}

/// Derive a per-index seed (e.g. one RNG stream per tree).
pub fn derive_indexed_seed(master: u64, label: &str, index: u64) -> u64 {
    splitmix64(derive_seed(master, label) ^ splitmix64(index.wrapping_add(0x9e37_79b9_7f4a_7c15)))
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}
