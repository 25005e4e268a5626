//! Stateless hashing for random-access coin flips.

#[inline]
pub(crate) fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive an independent seed for a labelled sub-task.
#[inline]
pub(crate) fn derive_seed(seed: u64, label: u64) -> u64 {
    mix64(seed ^ mix64(label.wrapping_add(0x5851_f42d_4c95_7f2d)))
}

/// Fair coin for `(vertex, level)` under `seed`; `true` is heads.
#[inline]
pub(crate) fn coin(seed: u64, vertex: u32, level: u32) -> bool {
    mix64(seed ^ ((vertex as u64) << 8 | level as u64).wrapping_mul(0xd6e8_feb8_6659_fd93)) & 1 == 1
}
