//! Depth-wise dynamic programming for truncated nested sums.

use num_rational::BigRational;
use num_traits::One;

use super::composition::{Composition, IndexSpace, SeriesKind};
use crate::scalar::Field;

/// Truncated sums `Σ_{i_1 < … < i_r} Π w(i_j)^{-k_j}` over the first `c`
/// indices of `space`, for each count `c` in `checkpoints` (ascending).
/// Runs in `O(r · max(checkpoints))` field operations.
pub fn nested_checkpoints<F: Field>(
    parts: &[u32],
    space: IndexSpace,
    checkpoints: &[u64],
    unit: &F,
) -> Vec<F> {
    debug_assert!(checkpoints.windows(2).all(|w| w[0] <= w[1]));
    let r = parts.len();
    let last = checkpoints.last().copied().unwrap_or(0);
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut next_cp = checkpoints.iter().peekable();
    // s[j] = sum over increasing j-tuples among the indices seen so far
    let mut s: Vec<F> = vec![F::zero(); r + 1];
    s[0] = unit.clone();
    while next_cp.peek() == Some(&&0) {
        out.push(s[r].clone());
        next_cp.next();
    }
    let max_k = parts.iter().copied().max().unwrap_or(0) as usize;
    let mut inv_pows: Vec<F> = vec![F::zero(); max_k + 1];
    for count in 1..=last {
        let idx = space.start + count - 1;
        let w = space.parity.weight(idx);
        let inv = unit.clone() / F::from_i64_exact(w as i64);
        inv_pows[0] = unit.clone();
        for k in 1..=max_k {
            inv_pows[k] = inv_pows[k - 1].clone() * inv.clone();
        }
        for j in (1..=r).rev() {
            let add = s[j - 1].clone() * inv_pows[parts[j - 1] as usize].clone();
            s[j] = s[j].clone() + add;
        }
        while next_cp.peek() == Some(&&count) {
            out.push(s[r].clone());
            next_cp.next();
        }
    }
    out
}

/// Exact partial sum over `1 ≤ n_1 < … < n_r ≤ N` (zeta) or over odd
/// integers up to `2N - 1` (t-values).
pub fn mzv_truncated(c: &Composition, n: u64, kind: SeriesKind) -> BigRational {
    let space = IndexSpace::full(kind.parity());
    nested_checkpoints(c.parts(), space, &[n], &BigRational::one())
        .pop()
        .expect("one checkpoint")
}
