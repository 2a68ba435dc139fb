//! Deterministic subset enumeration: by size, then lexicographically.

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // rightmost position that can still advance
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Subsets of `0..n` with sizes in `lo..=hi`, ordered by size then lexicographically.
pub fn subsets_by_size(n: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    (lo..=hi.min(n)).flat_map(|k| combinations(n, k)).collect()
}

/// Bitmask of an index set.
pub fn mask_of(indices: &[usize]) -> u64 {
    indices.iter().fold(0u64, |m, &i| m | (1u64 << i))
}

/// Indices set in a mask, ascending.
pub fn indices_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask & (1u64 << i) != 0).collect()
}
