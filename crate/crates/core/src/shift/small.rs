//! Small nonnegative matrices on machine words, used inside the searches.

pub type Small = Vec<Vec<u64>>;

pub fn dims(a: &Small) -> (usize, usize) {
    (a.len(), a.first().map_or(0, Vec::len))
}

pub fn mul(a: &Small, b: &Small) -> Small {
    let (n, k) = dims(a);
    let m = dims(b).1;
    let mut out = vec![vec![0u64; m]; n];
    for i in 0..n {
        for l in 0..k {
            let x = a[i][l];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * b[l][j];
            }
        }
    }
    out
}

pub fn identity(n: usize) -> Small {
    (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
}

pub fn max_entry(a: &Small) -> u64 {
    a.iter().flatten().copied().max().unwrap_or(0)
}

pub fn trace(a: &Small) -> u64 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

pub fn has_zero_row_or_col(a: &Small) -> bool {
    let (r, c) = dims(a);
    (0..r).any(|i| a[i].iter().all(|&x| x == 0)) || (0..c).any(|j| (0..r).all(|i| a[i][j] == 0))
}

/// `P·a·P⁻¹` for the permutation sending `i` to `p[i]`: entry `(p[i], p[j]) = a[i][j]`.
pub fn conjugate(a: &Small, p: &[usize]) -> Small {
    let n = a.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[p[i]][p[j]] = a[i][j];
        }
    }
    out
}

pub fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// Permutation matrix with entry `(p[j], j) = 1`.
pub fn perm_matrix(p: &[usize]) -> Small {
    let n = p.len();
    let mut out = vec![vec![0; n]; n];
    for (j, &i) in p.iter().enumerate() {
        out[i][j] = 1;
    }
    out
}

/// Lexicographically least conjugate, with a permutation `p` such that
/// `conjugate(a, p)` is that form. Deterministic: the first minimizing permutation wins.
pub fn canonical(a: &Small) -> (Small, Vec<usize>) {
    let n = a.len();
    let mut best: Option<(Small, Vec<usize>)> = None;
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        let c = conjugate(a, &p);
        if best.as_ref().map_or(true, |(b, _)| c < *b) {
            best = Some((c, p.clone()));
        }
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    best.unwrap_or_else(|| (Vec::new(), Vec::new()))
}

/// A permutation `p` with `conjugate(a, p) == b`, if the two are conjugate.
pub fn conjugating_perm(a: &Small, b: &Small) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let (ca, pa) = canonical(a);
    let (cb, pb) = canonical(b);
    if ca != cb {
        return None;
    }
    // conj(a, pa) = conj(b, pb) ⇒ b = conj(a, pb⁻¹ ∘ pa)
    let inv_b = invert(&pb);
    Some(pa.iter().map(|&k| inv_b[k]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms_detect_conjugacy() {
        let a = vec![vec![1, 1], vec![1, 0]];
        let b = vec![vec![0, 1], vec![1, 1]];
        assert_eq!(canonical(&a).0, canonical(&b).0);
        let p = conjugating_perm(&a, &b).unwrap();
        assert_eq!(conjugate(&a, &p), b);
        assert!(conjugating_perm(&a, &vec![vec![2, 0], vec![0, 0]]).is_none());
    }

    #[test]
    fn conjugate_matches_products() {
        let a = vec![vec![1, 2, 0], vec![0, 0, 3], vec![4, 0, 0]];
        let p = vec![2, 0, 1];
        let pm = perm_matrix(&p);
        let pinv = perm_matrix(&invert(&p));
        assert_eq!(conjugate(&a, &p), mul(&mul(&pm, &a), &pinv));
    }
}
