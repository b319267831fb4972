//! Parameter families for exhaustive and sampled suites.

use crate::raw::gcd;

/// Residues coprime to n; `[0]` for n = 1.
pub fn units(n: usize) -> Vec<usize> {
    (1..n.max(2))
        .filter(|&u| gcd(u, n) == 1)
        .map(|u| u % n)
        .collect()
}

/// Nonempty subsets of `items` with at most k elements, lexicographic.
pub fn subsets_up_to(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == k {
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Every (n, Γ) with n ≤ max_n and Γ a set of at most k units.
pub fn modular_presets(max_n: usize, k: usize) -> Vec<(usize, Vec<usize>)> {
    (1..=max_n)
        .flat_map(|n| subsets_up_to(&units(n), k).into_iter().map(move |g| (n, g)))
        .collect()
}
