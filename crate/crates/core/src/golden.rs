//! The reference suite: concrete claims about ℤ/12 with Γ = {1, 5} and about
//! ℤ/2 as a module over ℤ/4, each decided by direct computation.

use serde::Serialize;

use crate::axioms::verify_axioms;
use crate::cech::cech_complex;
use crate::error::{Error, Result};
use crate::ideal::{
    enumerate_ideals, ideal_closure_of, is_prime, witnesses_non_primality, GammaIdeal, PrimeCheck,
};
use crate::localization::{localize_at_prime, MultiplicativeSystem};
use crate::module::{build_modular_module, GammaModule};
use crate::semiring::{Caps, TernarySemiring};
use crate::set::ElementSet;
use crate::sheaf::FractionSheaf;
use crate::spectrum::SpectrumSpace;
use crate::tensor::{flatness_probe, tensor_product, tor1_cyclic, tor1_cyclic_two_generators};

/// Rows a ∈ {0,1,2,3,4,6} of {a b 1}_1 on ℤ/12, columns b = 0..11.
pub const SLICE_ROWS: [usize; 6] = [0, 1, 2, 3, 4, 6];
pub const SLICE_TABLE: [[usize; 12]; 6] = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
    [0, 2, 4, 6, 8, 10, 0, 2, 4, 6, 8, 10],
    [0, 3, 6, 9, 0, 3, 6, 9, 0, 3, 6, 9],
    [0, 4, 8, 0, 4, 8, 0, 4, 8, 0, 4, 8],
    [0, 6, 0, 6, 0, 6, 0, 6, 0, 6, 0, 6],
];

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GoldenReport {
    pub claims: Vec<Claim>,
    pub passed: usize,
    pub failed: usize,
}

impl GoldenReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

struct Suite {
    claims: Vec<Claim>,
}

impl Suite {
    fn check(
        &mut self,
        id: &'static str,
        statement: &'static str,
        outcome: Result<(bool, String)>,
    ) {
        let (pass, detail) = match outcome {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        self.claims.push(Claim {
            id,
            statement,
            pass,
            detail,
        });
    }
}

fn set(n: usize, members: &[usize]) -> ElementSet {
    ElementSet::from_members(n, members.iter().copied())
}

fn gamma_one(t: &TernarySemiring) -> Result<usize> {
    t.gamma_index("1")
        .ok_or_else(|| Error::InvalidInput("no gamma named \"1\"".into()))
}

fn ideal(t: &TernarySemiring, members: &[usize]) -> Result<GammaIdeal> {
    if let Some(&x) = members.iter().find(|&&x| x >= t.size()) {
        return Err(Error::OutOfRange {
            what: "ideal member".into(),
            value: x,
            bound: t.size(),
        });
    }
    GammaIdeal::from_members(t, set(t.size(), members))
}

fn require_twelve(t: &TernarySemiring) -> Result<()> {
    if t.size() != 12 {
        return Err(Error::InvalidInput(format!(
            "claim concerns ℤ/12, carrier has {} elements",
            t.size()
        )));
    }
    Ok(())
}

/// Runs every claim; the semiring is the one the ℤ/12 claims are about.
pub fn golden_suite(t: &TernarySemiring, caps: &Caps) -> GoldenReport {
    let mut s = Suite { claims: Vec::new() };
    let n = t.size();
    let spectrum = SpectrumSpace::new(t, caps);

    s.check(
        "axioms",
        "the semiring satisfies every axiom",
        Ok({
            let r = verify_axioms(t);
            (r.passed(), format!("{} violations", r.violations.len()))
        }),
    );

    s.check(
        "slice-table",
        "{a b 1}_1 matches the 72 reference entries for rows 0, 1, 2, 3, 4, 6",
        (|| {
            let g = gamma_one(t)?;
            if n != 12 {
                return Ok((false, format!("carrier has {n} elements")));
            }
            let mismatches: Vec<String> = SLICE_ROWS
                .iter()
                .zip(SLICE_TABLE.iter())
                .flat_map(|(&a, row)| {
                    row.iter()
                        .enumerate()
                        .filter(move |&(b, &want)| t.tern(a, b, 1, g) != want)
                        .map(move |(b, &want)| {
                            format!("({a},{b}): {} != {want}", t.tern(a, b, 1, g))
                        })
                })
                .collect();
            Ok((
                mismatches.is_empty(),
                format!("{} of 72 entries differ {mismatches:?}", mismatches.len()),
            ))
        })(),
    );

    s.check(
        "principal-ideals",
        "(2) = {0,2,4,6,8,10} and (4) = {0,4,8}",
        (|| {
            require_twelve(t)?;
            let two = ideal_closure_of(t, &[2]);
            let four = ideal_closure_of(t, &[4]);
            Ok((
                two.members().to_vec() == [0, 2, 4, 6, 8, 10]
                    && four.members().to_vec() == [0, 4, 8],
                format!(
                    "(2) = {:?}, (4) = {:?}",
                    two.members().to_vec(),
                    four.members().to_vec()
                ),
            ))
        })(),
    );

    s.check(
        "proper-ideals",
        "the proper ideals are exactly {0}, (6), (4), (3), (2)",
        (|| {
            require_twelve(t)?;
            let ideals = enumerate_ideals(t, caps)?;
            let proper: Vec<Vec<usize>> = ideals
                .iter()
                .filter(|i| i.is_proper())
                .map(|i| i.members().to_vec())
                .collect();
            let want: Vec<Vec<usize>> = vec![
                vec![0],
                vec![0, 6],
                vec![0, 4, 8],
                vec![0, 3, 6, 9],
                vec![0, 2, 4, 6, 8, 10],
            ];
            Ok((proper == want, format!("{proper:?}")))
        })(),
    );

    let witness_claim =
        |members: &[usize], (a, b, c): (usize, usize, usize)| -> Result<(bool, String)> {
            let g = gamma_one(t)?;
            let i = ideal(t, members)?;
            let check = is_prime(t, &i);
            let valid = witnesses_non_primality(t, &i, a, b, c, g);
            Ok((
                matches!(check, PrimeCheck::Violated { .. }) && valid,
                format!("search found {check:?}; reference witness ({a},{b},{c},1) valid: {valid}"),
            ))
        };
    s.check(
        "zero-not-prime",
        "{0} is not prime: {2,2,3}_1 = 0",
        witness_claim(&[0], (2, 2, 3)),
    );
    s.check(
        "six-not-prime",
        "(6) is not prime: {2,3,1}_1 = 6",
        witness_claim(&[0, 6], (2, 3, 1)),
    );
    s.check(
        "four-not-prime",
        "(4) is not prime: {2,2,1}_1 = 4",
        witness_claim(&[0, 4, 8], (2, 2, 1)),
    );

    s.check(
        "two-three-prime",
        "(2) and (3) are prime",
        (|| {
            let two = is_prime(t, &ideal(t, &[0, 2, 4, 6, 8, 10])?);
            let three = is_prime(t, &ideal(t, &[0, 3, 6, 9])?);
            Ok((
                two.is_prime() && three.is_prime(),
                format!("(2): {two:?}, (3): {three:?}"),
            ))
        })(),
    );

    let spec = || -> Result<&SpectrumSpace> {
        require_twelve(t)?;
        spectrum.as_ref().map_err(Clone::clone)
    };
    s.check(
        "spectrum",
        "the spectrum is {(2), (3)}",
        (|| {
            let mut primes: Vec<Vec<usize>> = spec()?
                .primes()
                .iter()
                .map(|p| p.members().to_vec())
                .collect();
            primes.sort();
            Ok((
                primes == [vec![0, 2, 4, 6, 8, 10], vec![0, 3, 6, 9]],
                format!("{primes:?}"),
            ))
        })(),
    );

    s.check(
        "closed-sets",
        "the closed sets are the empty set, {P2}, {P3} and {P2, P3}",
        (|| {
            let sp = spec()?;
            let names = prime_names(t, sp);
            let closed: Vec<Vec<String>> = sp
                .closed_sets()
                .iter()
                .map(|c| c.iter().map(|p| names[p].clone()).collect())
                .collect();
            let mut sorted: Vec<Vec<String>> = closed
                .iter()
                .map(|c| {
                    let mut c = c.clone();
                    c.sort();
                    c
                })
                .collect();
            sorted.sort();
            let want: Vec<Vec<String>> = vec![
                vec![],
                vec!["(2)".into()],
                vec!["(2)".into(), "(3)".into()],
                vec!["(3)".into()],
            ];
            Ok((sorted == want, format!("{closed:?}")))
        })(),
    );

    s.check(
        "discrete-t0",
        "the topology is discrete and T0",
        (|| {
            let sp = spec()?;
            Ok((
                sp.is_discrete() && sp.is_t0(),
                format!("discrete {}, T0 {}", sp.is_discrete(), sp.is_t0()),
            ))
        })(),
    );

    s.check(
        "basic-opens",
        "D(3) = {P2} and D(2) = {P3}",
        (|| {
            let sp = spec()?;
            let names = prime_names(t, sp);
            let d3: Vec<String> = sp.basic_open(3).iter().map(|p| names[p].clone()).collect();
            let d2: Vec<String> = sp.basic_open(2).iter().map(|p| names[p].clone()).collect();
            Ok((
                d3 == ["(2)"] && d2 == ["(3)"],
                format!("D(3) = {d3:?}, D(2) = {d2:?}"),
            ))
        })(),
    );

    s.check(
        "inclusion-diagram",
        "the proper ideals are ordered by (4) < (2), (6) < (2), (6) < (3), {0} < (4), {0} < (6)",
        (|| {
            let sp = spec()?;
            let label = |i: usize| sp.ideals()[i].members().to_vec();
            let mut edges: Vec<(Vec<usize>, Vec<usize>)> = sp
                .hasse_edges(false)
                .into_iter()
                .map(|(i, j)| (label(i), label(j)))
                .collect();
            edges.sort();
            let mut want = vec![
                (vec![0, 4, 8], vec![0, 2, 4, 6, 8, 10]),
                (vec![0, 6], vec![0, 2, 4, 6, 8, 10]),
                (vec![0, 6], vec![0, 3, 6, 9]),
                (vec![0], vec![0, 4, 8]),
                (vec![0], vec![0, 6]),
            ];
            want.sort();
            Ok((edges == want, format!("{edges:?}")))
        })(),
    );

    s.check(
        "localize-at-two",
        "localizing at (2) uses S = {1,3,5,7,9,11}",
        (|| {
            let p = ideal(t, &[0, 2, 4, 6, 8, 10])?;
            let sys = MultiplicativeSystem::complement_of_prime(t, &p)?;
            let loc = localize_at_prime(t, &p, caps)?;
            Ok((
                sys.to_vec() == [1, 3, 5, 7, 9, 11],
                format!("S = {:?}, {} classes", sys.to_vec(), loc.num_classes()),
            ))
        })(),
    );

    s.check(
        "localize-at-four-rejected",
        "localizing at (4) is refused because (4) is not prime",
        (|| {
            let p = ideal(t, &[0, 4, 8])?;
            Ok(match localize_at_prime(t, &p, caps) {
                Err(Error::NotPrime { .. }) => (true, "refused as not prime".into()),
                other => (false, format!("{:?}", other.map(|l| l.num_classes()))),
            })
        })(),
    );

    s.check(
        "cech-two-three",
        "for M = T and the cover D(2), D(3), every higher Čech group vanishes",
        (|| {
            let sheaf = FractionSheaf::associated(spec()?, &GammaModule::regular(t), caps)?;
            let r = cech_complex(&sheaf, &[2, 3])?.report()?;
            Ok((
                r.higher_vanish(),
                serde_json::to_string(&r.h).unwrap_or_default(),
            ))
        })(),
    );

    let z4 = TernarySemiring::modular(4, &[1]);
    let z4 = || -> Result<TernarySemiring> { z4.clone() };
    s.check(
        "z4-action-vanishes",
        "over ℤ/4, the action {2, x, 1} on ℤ/2 is identically zero",
        (|| {
            let t4 = z4()?;
            let m = build_modular_module(&t4, 2)?;
            let zero = (0..2).all(|x| {
                (0..t4.gamma_count()).all(|g| m.act(2, x, 1, g) == 0 && m.act(2, 1, x, g) == 0)
            });
            Ok((zero, format!("{{2,1,1}} = {}", m.act(2, 1, 1, 0))))
        })(),
    );

    s.check(
        "z4-two-tensor-one",
        "2⊗1 is zero in ℤ/4 ⊗ ℤ/2 while 1⊗1 is not",
        (|| {
            let t4 = z4()?;
            let m = build_modular_module(&t4, 2)?;
            let tp = tensor_product(&GammaModule::regular(&t4), &m)?;
            let zero = tp.normal_form(&vec![0; tp.num_generators()])?;
            let two = tp.pair_normal_form(2, 1)? == zero;
            let one = tp.pair_normal_form(1, 1)? == zero;
            Ok((two && !one, format!("2⊗1 zero: {two}, 1⊗1 zero: {one}")))
        })(),
    );

    s.check(
        "z4-tor-z2-z2",
        "Tor1(ℤ/2, ℤ/2) over ℤ/4 is ℤ/2",
        (|| {
            let t4 = z4()?;
            let r = tor1_cyclic(&t4, 2, &build_modular_module(&t4, 2)?)?;
            Ok((
                r.invariant_factors == [2],
                format!("{:?}", r.invariant_factors),
            ))
        })(),
    );

    s.check(
        "z4-tor-free",
        "Tor1(ℤ/4, ℤ/2) over ℤ/4 vanishes",
        (|| {
            let t4 = z4()?;
            let r = tor1_cyclic(&t4, 4, &build_modular_module(&t4, 2)?)?;
            Ok((r.is_trivial(), format!("{:?}", r.invariant_factors)))
        })(),
    );

    s.check(
        "z4-tor-presentations-agree",
        "a second presentation through ℤ/4 ⊕ ℤ/4 gives the same Tor1(ℤ/2, ℤ/2)",
        (|| {
            let t4 = z4()?;
            let m = build_modular_module(&t4, 2)?;
            let a = tor1_cyclic(&t4, 2, &m)?;
            let b = tor1_cyclic_two_generators(&t4, 2, &m)?;
            Ok((
                a.invariant_factors == b.invariant_factors,
                format!("{:?} vs {:?}", a.invariant_factors, b.invariant_factors),
            ))
        })(),
    );

    s.check(
        "z4-not-flat",
        "ℤ/2 is not flat over ℤ/4, witnessed by m = 2",
        (|| {
            let t4 = z4()?;
            let r = flatness_probe(&t4, &build_modular_module(&t4, 2)?)?;
            Ok((
                !r.flat && r.witness == Some(2),
                format!("flat {}, witness {:?}", r.flat, r.witness),
            ))
        })(),
    );

    let passed = s.claims.iter().filter(|c| c.pass).count();
    let failed = s.claims.len() - passed;
    GoldenReport {
        claims: s.claims,
        passed,
        failed,
    }
}

/// "(2)"-style labels of the primes, by prime index.
fn prime_names(t: &TernarySemiring, sp: &SpectrumSpace) -> Vec<String> {
    sp.primes().iter().map(|p| p.label(t)).collect()
}
