//! The ten acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so every line is printed even when a
//! criterion fails; the process exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use gammaspec_core::ideal::witnesses_non_primality;
use gammaspec_core::{
    build_modular_module, cech_complex, ideal_closure_of, induced_map_between, is_prime,
    localize_at_prime, tensor_product, tor1_cyclic, verify_axioms, verify_axioms_limited,
    verify_homomorphism, Caps, ElementSet, Error, FractionSheaf, GammaModule, PrimeCheck,
    SpectrumSpace, TGHomomorphism, TernarySemiring,
};
use gammaspec_testkit::{
    divisors, modular_presets, naive_axiom_failures, naive_tensor_invariants, subsets_up_to, units,
    RawModule, RawSemiring,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn z12() -> TernarySemiring {
    TernarySemiring::modular(12, &[1, 5]).unwrap()
}

fn raw(t: &TernarySemiring) -> RawSemiring {
    RawSemiring {
        add: t.add_table(),
        tern: t.ternary_tables(),
    }
}

fn raw_module(m: &GammaModule) -> RawModule {
    let t = m.parent();
    let (n, s) = (t.size(), m.size());
    RawModule {
        add: (0..s)
            .map(|x| (0..s).map(|y| m.add(x, y)).collect())
            .collect(),
        act: (0..t.gamma_count())
            .map(|g| {
                (0..n)
                    .map(|a| {
                        (0..s)
                            .map(|x| (0..n).map(|b| m.act(a, x, b, g)).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect(),
    }
}

fn binary(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_gammaspec"))
        .args(args)
        .env_remove("GAMMASPEC_THREADS")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn spectrum_golden() -> Verdict {
    let start = Instant::now();
    let spec = SpectrumSpace::new(&z12(), &Caps::default()).unwrap();
    let elapsed = start.elapsed();
    let primes: BTreeSet<Vec<usize>> = spec.primes().iter().map(|p| p.members().to_vec()).collect();
    let want: BTreeSet<Vec<usize>> = [vec![0, 2, 4, 6, 8, 10], vec![0, 3, 6, 9]].into();
    // Closed sets as sets of prime member lists: ∅, {P₂}, {P₃}, {P₂, P₃}.
    let closed: BTreeSet<BTreeSet<Vec<usize>>> = spec
        .closed_sets()
        .iter()
        .map(|c| {
            c.iter()
                .map(|i| spec.primes()[i].members().to_vec())
                .collect()
        })
        .collect();
    let p2 = vec![0, 2, 4, 6, 8, 10];
    let p3 = vec![0, 3, 6, 9];
    let want_closed: BTreeSet<BTreeSet<Vec<usize>>> = [
        BTreeSet::new(),
        [p2.clone()].into(),
        [p3.clone()].into(),
        [p2, p3].into(),
    ]
    .into();
    let ok = primes == want
        && spec.len() == 2
        && closed == want_closed
        && spec.closed_sets().len() == 4
        && spec.is_t0()
        && spec.is_discrete()
        && elapsed < Duration::from_secs(1);
    verdict(
        ok,
        format!(
            "primes {primes:?}, {} closed sets, T0 {}, discrete {}, {elapsed:.2?}",
            spec.closed_sets().len(),
            spec.is_t0(),
            spec.is_discrete()
        ),
    )
}

/// (a, b, c, γ value)
type Witness = (usize, usize, usize, usize);

fn non_primeness_witnesses() -> Verdict {
    let t = z12();
    // (ideal generators, reference witness (a, b, c, γ-value))
    let cases: [(&[usize], Witness); 3] = [
        (&[0], (2, 2, 3, 1)),
        (&[6], (2, 3, 1, 1)),
        (&[4], (2, 2, 1, 1)),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (gens, (a, b, c, gv)) in cases {
        let ideal = ideal_closure_of(&t, gens);
        let g = t.gamma_index(&gv.to_string()).unwrap();
        let check = is_prime(&t, &ideal);
        let reference = witnesses_non_primality(&t, &ideal, a, b, c, g);
        let ours = match check {
            PrimeCheck::Violated { a, b, c, gamma } => {
                witnesses_non_primality(&t, &ideal, a, b, c, gamma).then_some((a, b, c, gamma))
            }
            _ => None,
        };
        ok &= reference && ours.is_some();
        notes.push(format!(
            "{}: reference replays {reference}, ours {:?}",
            ideal.label(&t),
            ours
        ));
    }
    verdict(ok, notes.join("; "))
}

const SLICE: [(usize, [usize; 12]); 6] = [
    (0, [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    (1, [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]),
    (2, [0, 2, 4, 6, 8, 10, 0, 2, 4, 6, 8, 10]),
    (3, [0, 3, 6, 9, 0, 3, 6, 9, 0, 3, 6, 9]),
    (4, [0, 4, 8, 0, 4, 8, 0, 4, 8, 0, 4, 8]),
    (6, [0, 6, 0, 6, 0, 6, 0, 6, 0, 6, 0, 6]),
];

fn table_reproduction() -> Verdict {
    let preset = r#"{"kind":"modular","n":12,"gamma":[1,5]}"#;
    let (code, out) = binary(&[
        "--preset", preset, "table", "--gamma", "1", "--c", "1", "--format", "text",
    ]);
    let text = String::from_utf8(out).unwrap();
    let rows: Vec<Vec<usize>> = text
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect())
        .collect();
    let mut matched = 0;
    for (a, want) in SLICE {
        if let Some(row) = rows.iter().find(|r| r[0] == a) {
            matched += row[1..].iter().zip(want).filter(|(x, y)| **x == *y).count();
        }
    }
    verdict(
        code == 0 && matched == 72,
        format!("{matched} of 72 entries match"),
    )
}

fn tor_golden() -> Verdict {
    let start = Instant::now();
    let t = TernarySemiring::modular(4, &[1]).unwrap();
    let z2 = build_modular_module(&t, 2).unwrap();
    let a = tor1_cyclic(&t, 2, &z2).unwrap();
    let b = tor1_cyclic(&t, 4, &z2).unwrap();
    let elapsed = start.elapsed();
    verdict(
        a.invariant_factors == [2] && b.is_trivial() && elapsed < Duration::from_secs(5),
        format!(
            "Tor1(Z/2, Z/2) = {:?}, Tor1(Z/4, Z/2) = {:?}, {elapsed:.2?}",
            a.invariant_factors, b.invariant_factors
        ),
    )
}

/// Least element for each distinct nonempty basic open.
fn basic_opens(spec: &SpectrumSpace) -> Vec<(usize, ElementSet)> {
    let mut out: Vec<(usize, ElementSet)> = Vec::new();
    for a in 0..spec.parent().size() {
        let d = spec.basic_open(a);
        if !d.is_empty() && out.iter().all(|(_, e)| *e != d) {
            out.push((a, d));
        }
    }
    out
}

fn affine_acyclicity() -> Verdict {
    let start = Instant::now();
    let caps = Caps {
        enumeration: 30,
        ..Caps::default()
    };
    let mut semirings = vec![z12()];
    let thirty = units(30);
    for g in subsets_up_to(&thirty, 4) {
        semirings.push(TernarySemiring::modular(30, &g).unwrap());
    }
    let (mut covers, mut vanish, mut undefined, mut nonzero) = (0usize, 0usize, 0usize, 0usize);
    let mut first_undefined = None;
    for t in &semirings {
        let spec = SpectrumSpace::new(t, &caps).unwrap();
        let sheaf = FractionSheaf::associated(&spec, &GammaModule::regular(t), &caps).unwrap();
        let opens = basic_opens(&spec);
        let idx: Vec<usize> = (0..opens.len()).collect();
        for choice in subsets_up_to(&idx, 4) {
            let union = choice
                .iter()
                .fold(ElementSet::empty(spec.len()), |acc, &i| {
                    acc.union(&opens[i].1)
                });
            if !union.is_full() {
                continue;
            }
            covers += 1;
            let cover: Vec<usize> = choice.iter().map(|&i| opens[i].0).collect();
            let report = cech_complex(&sheaf, &cover).unwrap().report().unwrap();
            let higher = &report.h[1..];
            if higher
                .iter()
                .any(|h| h.invariant_factors.as_ref().is_some_and(|f| !f.is_empty()))
            {
                nonzero += 1;
                eprintln!(
                    "nonzero higher cohomology for {:?}, cover {cover:?}:\n{}",
                    t.modular_preset(),
                    serde_json::to_string_pretty(&report).unwrap()
                );
            } else if report.higher_vanish() {
                vanish += 1;
            } else {
                undefined += 1;
                if first_undefined.is_none() {
                    let why = higher
                        .iter()
                        .find_map(|h| h.undefined.clone())
                        .unwrap_or_default();
                    let p = t.modular_preset().unwrap();
                    first_undefined =
                        Some(format!("Z/{} Γ={:?} cover {cover:?}: {why}", p.n, p.gamma));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        nonzero == 0 && undefined == 0 && elapsed < Duration::from_secs(60),
        format!(
            "{} semirings, {covers} covers: {vanish} with Hi = 0 for i >= 1, {nonzero} nonzero, \
             {undefined} undefined (cochains not groups; first: {}), {elapsed:.1?}",
            semirings.len(),
            first_undefined.unwrap_or_else(|| "none".into())
        ),
    )
}

fn axiom_suite() -> Verdict {
    let presets = modular_presets(16, 3);
    let mut failed_presets = Vec::new();
    for (n, g) in &presets {
        let t = TernarySemiring::modular(*n, g).unwrap();
        if !verify_axioms_limited(&t, 1).passed() {
            failed_presets.push((*n, g.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a5e);
    let (mut caught, mut false_passes, mut unreplayable) = (0, 0, 0);
    let candidates: Vec<&(usize, Vec<usize>)> = presets.iter().filter(|(n, _)| *n > 1).collect();
    for _ in 0..1000 {
        let (n, g) = candidates[rng.random_range(0..candidates.len())];
        let t = TernarySemiring::modular(*n, g).unwrap();
        let (a, b, c) = (
            rng.random_range(0..*n),
            rng.random_range(0..*n),
            rng.random_range(0..*n),
        );
        let gi = rng.random_range(0..g.len());
        let value = (t.tern(a, b, c, gi) + rng.random_range(1..*n)) % n;
        let bad = t.with_ternary_entry(a, b, c, gi, value).unwrap();
        let report = verify_axioms(&bad);
        if report.passed() {
            false_passes += 1;
            if naive_axiom_failures(&raw(&bad)).is_empty() {
                eprintln!("mutation ({a},{b},{c},γ{gi}) of {n} {g:?} is a genuine semiring");
            }
        } else if report.violations.iter().all(|v| v.replays(&bad)) {
            caught += 1;
        } else {
            unreplayable += 1;
        }
    }
    verdict(
        failed_presets.is_empty() && caught == 1000,
        format!(
            "{} presets verified ({} failed); mutations: {caught}/1000 caught with replayable witnesses, \
             {false_passes} false passes, {unreplayable} unreplayable",
            presets.len(),
            failed_presets.len()
        ),
    )
}

fn zariski_and_functoriality() -> Verdict {
    let mut zariski_fail = Vec::new();
    let presets = modular_presets(12, 3);
    for (n, g) in &presets {
        let t = TernarySemiring::modular(*n, g).unwrap();
        let spec = SpectrumSpace::new(&t, &Caps::default()).unwrap();
        if !spec.verify_zariski_axioms(0).passed() {
            zariski_fail.push((*n, g.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xf00d);
    let (mut checked, mut skipped, mut mismatched) = (0, 0, 0);
    let cubes = |q: usize| -> Vec<usize> { (0..q).filter(|&k| k * k * k % q == k % q).collect() };
    let residues = |g: &[usize], q: usize| -> Vec<usize> {
        let set: BTreeSet<usize> = g.iter().map(|x| x % q).collect();
        set.into_iter().collect()
    };
    let caps = Caps::default();
    while checked < 100 && skipped < 10_000 {
        let n = rng.random_range(1..=12usize);
        let ds = divisors(n);
        let m = ds[rng.random_range(0..ds.len())];
        let dm = divisors(m);
        let l = dm[rng.random_range(0..dm.len())];
        let choices = subsets_up_to(&units(n), 2);
        let ga = choices[rng.random_range(0..choices.len())].clone();
        let (gb, gc) = (residues(&ga, m), residues(&ga, l));
        let (ka, kb) = (cubes(m), cubes(l));
        let (k1, k2) = (
            ka[rng.random_range(0..ka.len())],
            kb[rng.random_range(0..kb.len())],
        );
        let a = TernarySemiring::modular(n, &ga).unwrap();
        let b = TernarySemiring::modular(m, &gb).unwrap();
        let c = TernarySemiring::modular(l, &gc).unwrap();
        let f = TGHomomorphism::modular_scaling(&a, &b, k1).unwrap();
        let g = TGHomomorphism::modular_scaling(&b, &c, k2).unwrap();
        if !verify_homomorphism(&f).passed() || !verify_homomorphism(&g).passed() {
            skipped += 1;
            continue;
        }
        let gf = f.then(&g).unwrap();
        let (sa, sb, sc) = (
            SpectrumSpace::new(&a, &caps).unwrap(),
            SpectrumSpace::new(&b, &caps).unwrap(),
            SpectrumSpace::new(&c, &caps).unwrap(),
        );
        match (
            induced_map_between(&f, &sa, &sb),
            induced_map_between(&g, &sb, &sc),
            induced_map_between(&gf, &sa, &sc),
        ) {
            (Ok(fs), Ok(gs), Ok(gfs)) => {
                checked += 1;
                if gfs.map != fs.after(&gs).map || !gfs.continuous {
                    mismatched += 1;
                }
            }
            (Err(Error::PreimageNotProper { .. }), _, _)
            | (_, Err(Error::PreimageNotProper { .. }), _)
            | (_, _, Err(Error::PreimageNotProper { .. })) => skipped += 1,
            _ => {
                checked += 1;
                mismatched += 1;
            }
        }
    }
    verdict(
        zariski_fail.is_empty() && checked == 100 && mismatched == 0,
        format!(
            "Zariski identities on {} presets ({} failed); {checked} homomorphism pairs, \
             {mismatched} with (g∘f)* ≠ f*∘g* ({skipped} draws skipped: non-proper preimage)",
            presets.len(),
            zariski_fail.len()
        ),
    )
}

fn localization_consistency() -> Verdict {
    let caps = Caps::default();
    let (mut total, mut dependent, mut unit_failures, mut closure_needed) = (0, 0, 0, 0);
    let mut first_unit_failure = None;
    for (n, g) in modular_presets(12, 3) {
        let t = TernarySemiring::modular(n, &g).unwrap();
        let spec = SpectrumSpace::new(&t, &caps).unwrap();
        for p in spec.primes() {
            total += 1;
            match localize_at_prime(&t, p, &caps) {
                Err(Error::RepresentativeDependent { .. }) => dependent += 1,
                Err(e) => panic!("localizing {n} {g:?} at {:?}: {e}", p.members().to_vec()),
                Ok(l) => {
                    if !l.fractions().raw_relation_transitive() {
                        closure_needed += 1;
                    }
                    let units = l.local_unit_gammas();
                    if let Some(i) = units.iter().position(Option::is_none) {
                        unit_failures += 1;
                        if first_unit_failure.is_none() {
                            let s = l.fractions().system()[i];
                            first_unit_failure =
                                Some(format!("n={n} Γ={g:?} at {}: {s}/{s}", p.label(&t)));
                        }
                    }
                }
            }
        }
    }
    verdict(
        dependent == 0 && unit_failures == 0,
        format!(
            "{total} prime localizations: {dependent} representative-dependent, \
             {unit_failures} with some s/s not a local unit (first: {}), \
             {closure_needed} needed closure beyond the raw relation",
            first_unit_failure.unwrap_or_else(|| "none".into())
        ),
    )
}

fn oracle_equivalence() -> Verdict {
    let (mut pairs, mut mismatches) = (0, 0);
    for (n, g) in modular_presets(16, 2) {
        let t = TernarySemiring::modular(n, &g).unwrap();
        let ds: Vec<usize> = divisors(n).into_iter().skip(1).collect();
        let mut modules = vec![GammaModule::zero(&t)];
        modules.extend(ds.iter().map(|&d| build_modular_module(&t, d).unwrap()));
        for (i, &a) in ds.iter().enumerate() {
            for &b in &ds[i..] {
                if a * b <= 16 {
                    let ma = build_modular_module(&t, a).unwrap();
                    modules.push(
                        ma.direct_sum(&build_modular_module(&t, b).unwrap())
                            .unwrap(),
                    );
                }
            }
        }
        let raws: Vec<RawModule> = modules.iter().map(raw_module).collect();
        for (x, mx) in modules.iter().enumerate() {
            for (y, my) in modules.iter().enumerate() {
                if mx.size() * my.size() > 64 {
                    continue;
                }
                pairs += 1;
                let ours = tensor_product(mx, my).unwrap();
                let theirs = naive_tensor_invariants(&raws[x], &raws[y]);
                if ours.invariant_factors() != theirs.as_slice() {
                    mismatches += 1;
                    eprintln!(
                        "mismatch over ℤ/{n} Γ={g:?}: |M|={} |N|={}: {:?} vs {theirs:?}",
                        mx.size(),
                        my.size(),
                        ours.invariant_factors()
                    );
                }
            }
        }
    }
    verdict(
        mismatches == 0 && pairs > 0,
        format!("{pairs} module pairs, {mismatches} mismatches"),
    )
}

fn determinism() -> Verdict {
    let z30 = r#"{"kind":"modular","n":30,"gamma":[1,7,11]}"#;
    let runs: [&[&str]; 3] = [
        &["paper-check"],
        &["--preset", z30, "--cap-carrier", "30", "spectrum"],
        &[
            "--preset",
            z30,
            "--cap-carrier",
            "30",
            "cech",
            "--cover",
            "6,10,15",
        ],
    ];
    let mut identical = true;
    let mut notes = Vec::new();
    for args in runs {
        let mut outputs = Vec::new();
        for threads in ["1", "8", "1", "8"] {
            let mut full = vec!["--threads", threads];
            full.extend_from_slice(args);
            outputs.push(binary(&full));
        }
        let same = outputs.windows(2).all(|w| w[0] == w[1]) && !outputs[0].1.is_empty();
        identical &= same;
        notes.push(format!(
            "{}: {}",
            args.last().unwrap(),
            if same { "identical" } else { "differs" }
        ));
    }
    verdict(identical, notes.join(", "))
}

fn main() {
    type Check = fn() -> Verdict;
    let criteria: [(&str, Check); 10] = [
        ("spectrum golden test", spectrum_golden),
        ("non-primeness witnesses", non_primeness_witnesses),
        ("table reproduction", table_reproduction),
        ("Tor golden test", tor_golden),
        ("affine acyclicity at desk scale", affine_acyclicity),
        ("axiom suite", axiom_suite),
        ("Zariski and functoriality", zariski_and_functoriality),
        ("localization consistency", localization_consistency),
        ("oracle equivalence", oracle_equivalence),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = check();
        if !v.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {} [{:.1?}]",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail,
            start.elapsed()
        );
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
