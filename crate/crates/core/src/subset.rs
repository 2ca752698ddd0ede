//! Subset-sum (zeta) and inclusion-exclusion (Möbius) transforms over the
//! lattice of subsets of `{1..k}`, indexed by bitmask. Each runs in `k` passes
//! of `2^(k-1)` field operations.

use crate::field::{Field, FieldElement};

/// In place: `xs[m] <- sum_{s subset of m} xs[s]`.
pub fn zeta(field: &Field, xs: &mut [FieldElement]) {
    debug_assert!(xs.len().is_power_of_two());
    let n = xs.len();
    let mut bit = 1;
    while bit < n {
        for m in 0..n {
            if m & bit != 0 {
                xs[m] = field.add(xs[m], xs[m ^ bit]);
            }
        }
        bit <<= 1;
    }
}

/// In place inverse of [`zeta`].
pub fn moebius(field: &Field, xs: &mut [FieldElement]) {
    debug_assert!(xs.len().is_power_of_two());
    let n = xs.len();
    let mut bit = 1;
    while bit < n {
        for m in 0..n {
            if m & bit != 0 {
                xs[m] = field.sub(xs[m], xs[m ^ bit]);
            }
        }
        bit <<= 1;
    }
}
