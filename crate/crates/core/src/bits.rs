//! Small helpers for vertex / qubit subsets stored as `u32` masks.

/// A subset of `{0, .., 31}` stored as a bitmask.
pub type VertexSet = u32;

/// Mask with the lowest `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> VertexSet {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Iterates the set bits of `mask` in increasing order.
pub fn iter_bits(mut mask: VertexSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

pub fn mask_from_indices<I: IntoIterator<Item = usize>>(indices: I) -> VertexSet {
    indices.into_iter().fold(0, |m, i| m | (1 << i))
}

/// Maps the bits of `value` that lie in `subset` onto consecutive low bits
/// (the `k`-th smallest element of `subset` becomes bit `k`).
#[inline]
pub fn compress(value: u64, subset: u64) -> u64 {
    let mut out = 0u64;
    let mut s = subset;
    let mut k = 0;
    while s != 0 {
        let b = s.trailing_zeros();
        out |= ((value >> b) & 1) << k;
        k += 1;
        s &= s - 1;
    }
    out
}

/// Inverse of [`compress`]: spreads the low bits of `value` onto the positions of `subset`.
#[inline]
pub fn expand(value: u64, subset: u64) -> u64 {
    let mut out = 0u64;
    let mut s = subset;
    let mut k = 0;
    while s != 0 {
        let b = s.trailing_zeros();
        out |= ((value >> k) & 1) << b;
        k += 1;
        s &= s - 1;
    }
    out
}

/// All `k`-subsets of `{0..n}` as masks, in lexicographic (Gosper) order.
pub fn k_subsets(n: usize, k: usize) -> Vec<VertexSet> {
    assert!(n <= 31, "k_subsets supports n <= 31");
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut s: u64 = (1 << k) - 1;
    let limit = 1u64 << n;
    while s < limit {
        out.push(s as VertexSet);
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    out
}
