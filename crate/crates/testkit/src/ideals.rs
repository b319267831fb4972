use crate::raw::RawSemiring;

fn members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

fn is_ideal(t: &RawSemiring, mask: u64) -> bool {
    let n = t.n();
    let has = |x: usize| mask >> x & 1 == 1;
    if !has(0) {
        return false;
    }
    let m = members(mask, n);
    m.iter().all(|&a| m.iter().all(|&b| has(t.add[a][b])))
        && m.iter().all(|&a| {
            t.tern.iter().all(|tg| {
                (0..n).all(|b| {
                    (0..n).all(|c| has(tg[a][b][c]) && has(tg[b][a][c]) && has(tg[b][c][a]))
                })
            })
        })
}

/// Every Γ-ideal, found by testing all subsets of the carrier. Sorted by
/// size, then lexicographically on members.
pub fn naive_ideals(t: &RawSemiring) -> Vec<Vec<usize>> {
    let n = t.n();
    assert!(n <= 20, "powerset too large");
    let mut out: Vec<Vec<usize>> = (0u64..1 << n)
        .filter(|&mask| is_ideal(t, mask))
        .map(|mask| members(mask, n))
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Proper, and a ternary product lands inside only if a factor does.
pub fn naive_is_prime(t: &RawSemiring, ideal: &[usize]) -> bool {
    let n = t.n();
    let has = |x: usize| ideal.contains(&x);
    if ideal.len() == n {
        return false;
    }
    t.tern.iter().all(|tg| {
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| !has(tg[a][b][c]) || has(a) || has(b) || has(c)))
        })
    })
}

pub fn naive_spectrum(t: &RawSemiring) -> Vec<Vec<usize>> {
    naive_ideals(t)
        .into_iter()
        .filter(|i| naive_is_prime(t, i))
        .collect()
}
