//! Helpers for `u64` subset masks. Ground sets handled this way never exceed
//! 64 elements; constructors enforce that bound.

/// Mask with the lowest `n` bits set.
pub fn full(n: usize) -> u64 {
    assert!(n <= 64, "mask width {n} exceeds 64");
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn bit(i: usize) -> u64 {
    1u64 << i
}

pub fn contains(mask: u64, i: usize) -> bool {
    mask >> i & 1 == 1
}

/// Indices of set bits, ascending.
pub fn ones(mut mask: u64) -> impl Iterator<Item = usize> {
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

pub fn from_iter<I: IntoIterator<Item = usize>>(items: I) -> u64 {
    items.into_iter().fold(0, |m, i| m | bit(i))
}

pub fn count(mask: u64) -> usize {
    mask.count_ones() as usize
}

/// All submasks of `mask`, including `0` and `mask` itself.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}
