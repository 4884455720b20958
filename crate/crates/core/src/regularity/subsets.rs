//! Subsets of small index sets as bitmasks, in lexicographic order of their sorted
//! element sequences.

use num_bigint::BigUint;

/// All nonempty subsets of `0..n` with at least `min_size` elements, lexicographically
/// ordered.
pub fn lex_subsets(n: usize, min_size: usize) -> Vec<u64> {
    assert!(n < 64, "at most 63 elements");
    let mut out = Vec::new();
    fn go(start: usize, n: usize, mask: u64, size: usize, min: usize, out: &mut Vec<u64>) {
        for i in start..n {
            let m = mask | 1 << i;
            // can the remaining elements still reach `min`?
            if size + 1 + (n - i - 1) < min {
                break;
            }
            if size + 1 >= min {
                out.push(m);
            }
            go(i + 1, n, m, size + 1, min, out);
        }
    }
    go(0, n, 0, 0, min_size, &mut out);
    out
}

/// `Σ_{s ≥ max(min_size, 1)} C(n, s)`, the length of [`lex_subsets`].
pub fn admissible_subset_count(n: usize, min_size: usize) -> BigUint {
    let mut total = BigUint::from(0u32);
    let mut c = BigUint::from(1u32);
    for s in 0..=n {
        if s >= min_size.max(1) {
            total += &c;
        }
        c = c * (n - s) / (s + 1);
    }
    total
}

pub(crate) fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}
