//! Mixed-radix indexing of joint tuples.
//!
//! Joint inputs and joint outputs are flattened with the first player as the most
//! significant digit, so `(x, y)` over sizes `(|X|, |Y|)` maps to `x * |Y| + y`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Product of the sizes, or `None` on overflow.
pub fn product(sizes: &[usize]) -> Option<usize> {
    sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s))
}

pub(crate) fn product_u128(sizes: &[usize]) -> u128 {
    sizes
        .iter()
        .fold(1u128, |acc, &s| acc.saturating_mul(s as u128))
}

/// Flatten `tuple` against `sizes`, checking every digit.
pub fn encode(sizes: &[usize], tuple: &[usize]) -> Result<usize> {
    if tuple.len() != sizes.len() {
        return Err(Error::TupleLength {
            expected: sizes.len(),
            found: tuple.len(),
        });
    }
    let mut idx = 0usize;
    for (player, (&v, &s)) in tuple.iter().zip(sizes).enumerate() {
        if v >= s {
            return Err(Error::OutOfRange {
                player,
                value: v,
                size: s,
            });
        }
        idx = idx * s + v;
    }
    Ok(idx)
}

/// Inverse of [`encode`]; `out` must have one slot per player.
pub fn decode_into(sizes: &[usize], mut idx: usize, out: &mut [usize]) {
    debug_assert_eq!(sizes.len(), out.len());
    for (slot, &s) in out.iter_mut().zip(sizes).rev() {
        *slot = idx % s;
        idx /= s;
    }
}

pub fn decode(sizes: &[usize], idx: usize) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    decode_into(sizes, idx, &mut out);
    out
}
