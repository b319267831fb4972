use crate::raw::gcd;

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors (ascending, each dividing the next, 1s dropped) of a
/// finite abelian group given by its full element list and an addition.
///
/// Uses |G[p^k]| = ∏ p^min(k, e_i): the count of elements killed by p^k
/// determines how many cyclic p-parts have exponent at least k.
pub fn invariant_factors_from_elements<E>(
    elements: &[E],
    zero: &E,
    add: impl Fn(&E, &E) -> E,
) -> Vec<u64>
where
    E: PartialEq + Clone,
{
    let times = |x: &E, k: usize| {
        let mut acc = zero.clone();
        for _ in 0..k {
            acc = add(&acc, x);
        }
        acc
    };
    let order = |x: &E| {
        let mut k = 1;
        let mut y = x.clone();
        while y != *zero {
            y = add(&y, x);
            k += 1;
        }
        k
    };
    let exponent = elements.iter().map(order).fold(1, |a, b| a / gcd(a, b) * b);
    let mut factors: Vec<u64> = Vec::new();
    for p in prime_factors(exponent) {
        let mut counts = vec![1usize];
        let mut pk = 1;
        while exponent % (pk * p) == 0 {
            pk *= p;
            counts.push(elements.iter().filter(|x| times(x, pk) == *zero).count());
        }
        // at_least[k-1] = number of cyclic factors with p-exponent ≥ k
        let at_least: Vec<usize> = counts
            .windows(2)
            .map(|w| {
                let mut r = w[1] / w[0];
                let mut e = 0;
                while r > 1 {
                    r /= p;
                    e += 1;
                }
                e
            })
            .collect();
        let slots = at_least.first().copied().unwrap_or(0);
        if factors.len() < slots {
            let pad = slots - factors.len();
            factors.splice(0..0, std::iter::repeat_n(1, pad));
        }
        // The j-th largest factor gets p^(number of k with at_least ≥ j).
        let len = factors.len();
        for j in 1..=slots {
            let e = at_least.iter().filter(|&&c| c >= j).count() as u32;
            factors[len - j] *= (p as u64).pow(e);
        }
    }
    factors.retain(|&f| f > 1);
    factors
}
