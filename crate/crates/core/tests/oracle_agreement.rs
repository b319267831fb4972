//! The engine against the brute-force oracles of the testkit.

mod common;

use common::{raw, raw_module};
use gammaspec_core::{
    build_modular_module, enumerate_ideals, generated_mult_system, is_prime, tensor_product,
    tor1_cyclic, verify_axioms, Caps, FractionClasses, GammaModule, MultiplicativeSystem,
    SpectrumSpace, TernarySemiring,
};
use gammaspec_testkit::{
    divisors, naive_axiom_failures, naive_fraction_classes, naive_ideals, naive_is_prime,
    naive_spectrum, naive_tensor_invariants, naive_tor1_cyclic, subsets_up_to, units,
};

fn presets(max_n: usize, max_gamma: usize) -> Vec<TernarySemiring> {
    (1..=max_n)
        .flat_map(|n| {
            subsets_up_to(&units(n), max_gamma)
                .into_iter()
                .map(move |g| TernarySemiring::modular(n, &g).unwrap())
        })
        .collect()
}

#[test]
fn ideals_and_primes_match_the_powerset_search() {
    for t in presets(12, 2) {
        let r = raw(&t);
        let ideals = enumerate_ideals(&t, &Caps::default()).unwrap();
        let mut ours: Vec<Vec<usize>> = ideals.iter().map(|i| i.members().to_vec()).collect();
        ours.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        assert_eq!(ours, naive_ideals(&r), "{:?}", t.modular_preset());
        for i in &ideals {
            assert_eq!(
                is_prime(&t, i).is_prime(),
                naive_is_prime(&r, &i.members().to_vec())
            );
        }
        let spec = SpectrumSpace::new(&t, &Caps::default()).unwrap();
        let mut primes: Vec<Vec<usize>> =
            spec.primes().iter().map(|p| p.members().to_vec()).collect();
        primes.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        assert_eq!(primes, naive_spectrum(&r));
    }
}

#[test]
fn tables_that_are_not_modular_agree_too() {
    // The Boolean-like semiring on {0,1} with 1+1 = 1.
    let add = vec![vec![0, 1], vec![1, 1]];
    let tern = vec![vec![
        vec![vec![0, 0], vec![0, 0]],
        vec![vec![0, 0], vec![0, 1]],
    ]];
    let t = TernarySemiring::from_tables(&add, &tern, vec!["g".into()], None, &Caps::default())
        .unwrap();
    assert!(verify_axioms(&t).passed());
    assert!(naive_axiom_failures(&raw(&t)).is_empty());
    let spec = SpectrumSpace::new(&t, &Caps::default()).unwrap();
    assert_eq!(spec.len(), naive_spectrum(&raw(&t)).len());
}

#[test]
fn axiom_verdicts_match_the_naive_checker() {
    for t in presets(8, 2) {
        assert!(verify_axioms(&t).passed());
        assert!(naive_axiom_failures(&raw(&t)).is_empty());
    }
    let t = TernarySemiring::modular(6, &[1]).unwrap();
    for (a, b, c, v) in [(1, 1, 1, 2), (0, 3, 2, 1), (2, 3, 4, 5), (5, 5, 5, 0)] {
        let bad = t.with_ternary_entry(a, b, c, 0, v).unwrap();
        let report = verify_axioms(&bad);
        assert!(!report.passed());
        assert!(!naive_axiom_failures(&raw(&bad)).is_empty());
    }
}

fn systems(t: &TernarySemiring) -> Vec<MultiplicativeSystem> {
    let mut out: Vec<MultiplicativeSystem> = Vec::new();
    let spec = SpectrumSpace::new(t, &Caps::default()).unwrap();
    for p in spec.primes() {
        out.push(MultiplicativeSystem::complement_of_prime(t, p).unwrap());
    }
    for a in 1..t.size() {
        if let Ok(s) = generated_mult_system(t, &[a]) {
            out.push(s);
        }
    }
    out
}

#[test]
fn fraction_classes_match_floyd_warshall_closure() {
    for t in presets(12, 2) {
        let cube = t.ternary_tables();
        let mut modules = vec![GammaModule::regular(&t)];
        let n = t.size();
        modules.extend(
            divisors(n)
                .into_iter()
                .filter(|&d| d < n && d > 1)
                .map(|d| build_modular_module(&t, d).unwrap()),
        );
        for s in systems(&t) {
            for m in &modules {
                let ours = FractionClasses::build(m, &s, &Caps::default()).unwrap();
                let theirs = naive_fraction_classes(&cube, &raw_module(m), &s.to_vec());
                assert_eq!(
                    ours.len(),
                    theirs,
                    "{:?} module of size {} at {:?}",
                    t.modular_preset(),
                    m.size(),
                    s.to_vec()
                );
            }
        }
    }
}

#[test]
fn tensor_products_match_balanced_map_counts() {
    for (n, gamma) in [
        (12, vec![1, 5]),
        (8, vec![1, 3]),
        (9, vec![1]),
        (6, vec![5]),
    ] {
        let t = TernarySemiring::modular(n, &gamma).unwrap();
        let mut modules = vec![GammaModule::zero(&t)];
        modules.extend(
            divisors(n)
                .into_iter()
                .skip(1)
                .map(|d| build_modular_module(&t, d).unwrap()),
        );
        for a in &modules {
            for b in &modules {
                if a.size() * b.size() > 64 {
                    continue;
                }
                let tp = tensor_product(a, b).unwrap();
                let oracle = naive_tensor_invariants(&raw_module(a), &raw_module(b));
                assert_eq!(
                    tp.invariant_factors(),
                    oracle.as_slice(),
                    "n={n} |M|={} |N|={}",
                    a.size(),
                    b.size()
                );
            }
        }
    }
}

#[test]
fn tor_matches_explicit_kernels() {
    for n in [2, 4, 6, 8, 9, 12] {
        for gamma in subsets_up_to(&units(n), 1) {
            let t = TernarySemiring::modular(n, &gamma).unwrap();
            for d in divisors(n) {
                let nm = build_modular_module(&t, d).unwrap();
                for m in divisors(n) {
                    let ours = tor1_cyclic(&t, m, &nm).unwrap();
                    let theirs = naive_tor1_cyclic(n, &gamma, m, &raw_module(&nm));
                    assert_eq!(
                        ours.invariant_factors, theirs,
                        "n={n} Γ={gamma:?} M=ℤ/{m} N=ℤ/{d}"
                    );
                }
            }
        }
    }
}
