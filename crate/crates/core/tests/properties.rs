//! Invariants of the engine as property tests.

mod common;

use common::raw;
use gammaspec_core::{
    build_modular_module, cech_complex, induced_map_between, tensor_product, tor1_cyclic,
    verify_axioms, verify_axioms_limited, verify_homomorphism, Caps, ElementSet, FractionSheaf,
    GammaModule, SpectrumSpace, TGHomomorphism, TernarySemiring,
};
use gammaspec_testkit::{divisors, naive_axiom_failures, subsets_up_to, units};
use proptest::prelude::*;

/// (n, Γ) with n ≤ max_n and Γ a nonempty set of at most three units.
fn modular_preset(max_n: usize) -> impl Strategy<Value = (usize, Vec<usize>)> {
    (1..=max_n).prop_flat_map(|n| {
        let choices = subsets_up_to(&units(n), 3);
        (Just(n), 0..choices.len()).prop_map(move |(n, i)| (n, choices[i].clone()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn single_mutations_are_caught_with_replayable_witnesses(
        (n, gamma) in modular_preset(16),
        a in any::<prop::sample::Index>(),
        b in any::<prop::sample::Index>(),
        c in any::<prop::sample::Index>(),
        g in any::<prop::sample::Index>(),
        shift in 1usize..16,
    ) {
        prop_assume!(n > 1);
        let t = TernarySemiring::modular(n, &gamma).unwrap();
        let (a, b, c, g) = (a.index(n), b.index(n), c.index(n), g.index(gamma.len()));
        let value = (t.tern(a, b, c, g) + shift % (n - 1) + 1) % n;
        let bad = t.with_ternary_entry(a, b, c, g, value).unwrap();
        let report = verify_axioms_limited(&bad, 1);
        if report.passed() {
            prop_assert!(naive_axiom_failures(&raw(&bad)).is_empty(), "false pass");
        }
        prop_assert!(!report.passed());
        let full = verify_axioms(&bad);
        prop_assert!(full.violations.iter().all(|v| v.replays(&bad)));
        prop_assert!(full.violations.iter().any(|v| v.gammas.contains(&g)));
    }

    #[test]
    fn gamma_inverses_act_as_the_identity((n, gamma) in modular_preset(16)) {
        let t = TernarySemiring::modular(n, &gamma).unwrap();
        for s in 0..n {
            if let Some((sbar, g)) = t.find_gamma_inverse(s) {
                prop_assert!((0..n).all(|x| t.tern(s, sbar, x, g) == x));
            }
            if let Some(sbar) = t.is_strictly_gamma_invertible(s) {
                prop_assert!(t.find_gamma_inverse(s).is_some());
                prop_assert!((0..gamma.len()).all(|g| t.is_gamma_inverse_pair(s, sbar, g)));
            }
        }
    }

    #[test]
    fn tensor_is_symmetric((n, gamma) in modular_preset(12), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let t = TernarySemiring::modular(n, &gamma).unwrap();
        let ds = divisors(n);
        let m = build_modular_module(&t, ds[i.index(ds.len())]).unwrap();
        let k = build_modular_module(&t, ds[j.index(ds.len())]).unwrap();
        let mk = tensor_product(&m, &k).unwrap();
        let km = tensor_product(&k, &m).unwrap();
        prop_assert_eq!(mk.invariant_factors(), km.invariant_factors());
    }

    #[test]
    fn homomorphisms_compose_and_pull_back_contravariantly(
        n in 1usize..=12,
        picks in any::<(prop::sample::Index, prop::sample::Index, prop::sample::Index, prop::sample::Index)>(),
    ) {
        // ℤ/n → ℤ/m → ℤ/l by a ↦ k·a, with k³ ≡ k so products are respected.
        let ds = divisors(n);
        let m = ds[picks.0.index(ds.len())];
        let dm = divisors(m);
        let l = dm[picks.1.index(dm.len())];
        let idem = |q: usize| -> Vec<usize> { (0..q).filter(|&k| k * k * k % q == k % q).collect() };
        let (ks, kt) = (idem(m), idem(l));
        let (k1, k2) = (ks[picks.2.index(ks.len())], kt[picks.3.index(kt.len())]);
        let (a, b, c) = (
            TernarySemiring::modular(n, &[1 % n]).unwrap(),
            TernarySemiring::modular(m, &[1 % m]).unwrap(),
            TernarySemiring::modular(l, &[1 % l]).unwrap(),
        );
        let f = TGHomomorphism::modular_scaling(&a, &b, k1).unwrap();
        let g = TGHomomorphism::modular_scaling(&b, &c, k2).unwrap();
        prop_assert!(verify_homomorphism(&f).passed());
        prop_assert!(verify_homomorphism(&g).passed());
        let gf = f.then(&g).unwrap();
        prop_assert!(verify_homomorphism(&gf).passed());
        let caps = Caps::default();
        let (sa, sb, sc) = (
            SpectrumSpace::new(&a, &caps).unwrap(),
            SpectrumSpace::new(&b, &caps).unwrap(),
            SpectrumSpace::new(&c, &caps).unwrap(),
        );
        // A preimage need not be proper or prime when k is not 1; then the
        // induced map is undefined and there is nothing to compare.
        if let (Ok(fs), Ok(gs), Ok(gfs)) = (
            induced_map_between(&f, &sa, &sb),
            induced_map_between(&g, &sb, &sc),
            induced_map_between(&gf, &sa, &sc),
        ) {
            prop_assert_eq!(gfs.map, fs.after(&gs).map);
            prop_assert!(fs.continuous && gs.continuous && gfs.continuous);
        }
    }
}

#[test]
fn free_modules_have_no_tor() {
    for n in 1..=16 {
        for gamma in subsets_up_to(&units(n), 2) {
            let t = TernarySemiring::modular(n, &gamma).unwrap();
            for d in divisors(n) {
                let nm = build_modular_module(&t, d).unwrap();
                let tor = tor1_cyclic(&t, n, &nm).unwrap();
                assert!(tor.is_trivial(), "n={n} Γ={gamma:?} N=ℤ/{d}");
            }
            let zero = GammaModule::zero(&t);
            for m in divisors(n) {
                assert!(tor1_cyclic(&t, m, &zero).unwrap().is_trivial());
            }
        }
    }
}

#[test]
fn zariski_identities_hold_for_small_presets() {
    for n in 1..=12 {
        for gamma in subsets_up_to(&units(n), 2) {
            let t = TernarySemiring::modular(n, &gamma).unwrap();
            let spec = SpectrumSpace::new(&t, &Caps::default()).unwrap();
            let report = spec.verify_zariski_axioms(7);
            assert!(
                report.passed(),
                "n={n} Γ={gamma:?}: {:?}",
                report.violations
            );
        }
    }
}

#[test]
fn restriction_is_functorial_on_z12() {
    let t = TernarySemiring::modular(12, &[1, 5]).unwrap();
    let spec = SpectrumSpace::new(&t, &Caps::default()).unwrap();
    let sheaf = FractionSheaf::structure(&spec, &Caps::default()).unwrap();
    let whole = spec.whole();
    let opens: Vec<ElementSet> = (0..spec.closed_sets().len())
        .map(|i| spec.closed_sets()[i].complement())
        .collect();
    for u in &opens {
        for v in opens.iter().filter(|v| v.is_subset(u)) {
            for w in opens.iter().filter(|w| w.is_subset(v)) {
                let uv = sheaf.restriction_map(u, v).unwrap();
                let vw = sheaf.restriction_map(v, w).unwrap();
                let uw = sheaf.restriction_map(u, w).unwrap();
                let composed: Vec<usize> = uv.iter().map(|&i| vw[i]).collect();
                assert_eq!(composed, uw);
            }
        }
        let id = sheaf.restriction_map(u, u).unwrap();
        assert!(id.iter().enumerate().all(|(i, &j)| i == j));
    }
    assert!(opens.contains(&whole));
}

#[test]
fn coboundaries_square_to_zero_on_z30() {
    let caps = Caps {
        enumeration: 30,
        ..Caps::default()
    };
    let t = TernarySemiring::modular(30, &[1, 7]).unwrap();
    let spec = SpectrumSpace::new(&t, &caps).unwrap();
    let sheaf = FractionSheaf::structure(&spec, &caps).unwrap();
    let c = cech_complex(&sheaf, &[6, 10, 15]).unwrap();
    assert!(c.d_squared_vanishes().unwrap());
}
