//! S⁻¹T for finite multiplicative systems.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::Serialize;

use crate::axioms::{Axiom, AxiomReport, Violation};
use crate::error::{Error, Result};
use crate::fractions::FractionClasses;
use crate::hom::{verify_homomorphism, TGHomomorphism};
use crate::ideal::{is_prime, GammaIdeal, PrimeCheck};
use crate::semiring::{Caps, TernarySemiring};
use crate::set::ElementSet;

/// A 0-avoiding subset closed under every triadic product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicativeSystem {
    members: ElementSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SystemCheck {
    Valid,
    ContainsZero,
    /// Least (a, b, c, γ) whose product escapes the set.
    NotClosed {
        a: usize,
        b: usize,
        c: usize,
        gamma: usize,
    },
}

pub fn is_multiplicative_system(t: &TernarySemiring, set: &ElementSet) -> SystemCheck {
    if set.contains(0) {
        return SystemCheck::ContainsZero;
    }
    for a in set.iter() {
        for b in set.iter() {
            for c in set.iter() {
                for g in 0..t.gamma_count() {
                    if !set.contains(t.tern(a, b, c, g)) {
                        return SystemCheck::NotClosed { a, b, c, gamma: g };
                    }
                }
            }
        }
    }
    SystemCheck::Valid
}

impl MultiplicativeSystem {
    pub fn new(t: &TernarySemiring, members: ElementSet) -> Result<Self> {
        if members.universe() != t.size() {
            return Err(Error::DimensionMismatch {
                what: "system universe".into(),
                expected: t.size(),
                found: members.universe(),
            });
        }
        match is_multiplicative_system(t, &members) {
            SystemCheck::Valid => Ok(MultiplicativeSystem { members }),
            other => Err(Error::NotMultiplicative(format!("{members:?} ({other:?})"))),
        }
    }

    /// T ∖ P for a prime P.
    pub fn complement_of_prime(t: &TernarySemiring, prime: &GammaIdeal) -> Result<Self> {
        match is_prime(t, prime) {
            PrimeCheck::Prime => Self::new(t, prime.members().complement()),
            _ => Err(Error::NotPrime {
                members: prime.members().to_vec(),
            }),
        }
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members.to_vec()
    }

    pub fn contains(&self, s: usize) -> bool {
        self.members.contains(s)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Least superset of `seed` closed under triadic products.
pub fn generated_mult_system(t: &TernarySemiring, seed: &[usize]) -> Result<MultiplicativeSystem> {
    for &s in seed {
        t.check_element("seed element", s)?;
    }
    let degenerate = || Error::DegenerateSystem {
        seed: seed.to_vec(),
    };
    let mut members = ElementSet::from_members(t.size(), seed.iter().copied());
    loop {
        let current = members.to_vec();
        let mut grew = false;
        for &a in &current {
            for &b in &current {
                for &c in &current {
                    for g in 0..t.gamma_count() {
                        grew |= members.insert(t.tern(a, b, c, g));
                    }
                }
            }
        }
        if members.contains(0) {
            return Err(degenerate());
        }
        if !grew {
            return Ok(MultiplicativeSystem { members });
        }
    }
}

/// The quotient of T × S with its operations.
#[derive(Debug)]
pub struct LocalizedSemiring {
    source: TernarySemiring,
    system: MultiplicativeSystem,
    fractions: FractionClasses,
    addition: std::result::Result<Vec<u32>, String>,
    canonical: Vec<usize>,
    tern_table: OnceLock<Vec<u32>>,
}

/// Builds S⁻¹T; fails if the fraction product depends on representatives.
pub fn localize(
    t: &TernarySemiring,
    system: &MultiplicativeSystem,
    caps: &Caps,
) -> Result<LocalizedSemiring> {
    let fractions = FractionClasses::build(t, system, caps)?;
    check_product(t, &fractions)?;
    let addition = fractions.addition(t);
    let sys = fractions.system();
    let s0 = sys[0];
    let den = t.tern(s0, s0, s0, 0);
    let canonical = (0..t.size())
        .map(|a| {
            fractions
                .class_of(t.tern(a, s0, s0, 0), den)
                .expect("system is closed")
        })
        .collect();
    Ok(LocalizedSemiring {
        source: t.clone(),
        system: system.clone(),
        fractions,
        addition,
        canonical,
        tern_table: OnceLock::new(),
    })
}

pub fn localize_at_prime(
    t: &TernarySemiring,
    prime: &GammaIdeal,
    caps: &Caps,
) -> Result<LocalizedSemiring> {
    localize(
        t,
        &MultiplicativeSystem::complement_of_prime(t, prime)?,
        caps,
    )
}

/// T_a, the localization at the system generated by a.
pub fn localize_at_element(
    t: &TernarySemiring,
    a: usize,
    caps: &Caps,
) -> Result<LocalizedSemiring> {
    localize(t, &generated_mult_system(t, &[a])?, caps)
}

/// Slot-by-slot representative independence of
/// (x/s, y/t, z/v) ↦ {xyz}_λ / {stv}_λ.
fn check_product(t: &TernarySemiring, fractions: &FractionClasses) -> Result<()> {
    let n = t.size();
    let sys = fractions.system();
    for lambda in 0..t.gamma_count() {
        for slot in 0..3 {
            let place = |x: usize, p: usize, q: usize| -> usize {
                match slot {
                    0 => t.tern(x, p, q, lambda),
                    1 => t.tern(p, x, q, lambda),
                    _ => t.tern(p, q, x, lambda),
                }
            };
            let numer: BTreeSet<Vec<usize>> = (0..n)
                .flat_map(|p| (0..n).map(move |q| (p, q)))
                .map(|(p, q)| (0..n).map(|x| place(x, p, q)).collect())
                .collect();
            let denom: BTreeSet<Vec<usize>> = sys
                .iter()
                .flat_map(|&p| sys.iter().map(move |&q| (p, q)))
                .map(|(p, q)| sys.iter().map(|&s| place(s, p, q)).collect())
                .collect();
            let numer: Vec<Vec<usize>> = numer.into_iter().collect();
            let denom: Vec<Vec<usize>> = denom.into_iter().collect();
            if let Some(detail) = fractions.profile_violation(&numer, &denom) {
                return Err(Error::RepresentativeDependent {
                    operation: "ternary product",
                    detail: format!("slot {slot}, gamma {lambda}: {detail}"),
                });
            }
        }
    }
    Ok(())
}

impl LocalizedSemiring {
    pub fn source(&self) -> &TernarySemiring {
        &self.source
    }

    pub fn system(&self) -> &MultiplicativeSystem {
        &self.system
    }

    pub fn fractions(&self) -> &FractionClasses {
        &self.fractions
    }

    pub fn num_classes(&self) -> usize {
        self.fractions.len()
    }

    pub fn class_of(&self, x: usize, s: usize) -> Option<usize> {
        self.fractions.class_of(x, s)
    }

    pub fn canonical_map(&self) -> &[usize] {
        &self.canonical
    }

    pub fn addition_supported(&self) -> bool {
        self.addition.is_ok()
    }

    /// Why the fraction sum is unavailable, when it is.
    pub fn addition_failure(&self) -> Option<&str> {
        self.addition.as_ref().err().map(String::as_str)
    }

    pub fn add(&self, i: usize, j: usize) -> Option<usize> {
        let c = self.num_classes();
        self.addition
            .as_ref()
            .ok()
            .map(|tab| tab[i * c + j] as usize)
    }

    /// Class product through representatives.
    pub fn tern(&self, i: usize, j: usize, k: usize, g: usize) -> usize {
        let c = self.num_classes();
        let table = self.tern_table.get_or_init(|| {
            let t = &self.source;
            let gc = t.gamma_count();
            let mut out = vec![0u32; gc * c * c * c];
            for lambda in 0..gc {
                for a in 0..c {
                    let (x, s) = self.fractions.representative(a);
                    for b in 0..c {
                        let (y, u) = self.fractions.representative(b);
                        for d in 0..c {
                            let (z, v) = self.fractions.representative(d);
                            let cls = self
                                .fractions
                                .class_of(t.tern(x, y, z, lambda), t.tern(s, u, v, lambda))
                                .expect("system is closed");
                            out[((lambda * c + a) * c + b) * c + d] = cls as u32;
                        }
                    }
                }
            }
            out
        });
        table[((g * c + i) * c + j) * c + k] as usize
    }

    /// For each s in the system (ascending), the least γ with
    /// {s/s, s/s, X}_γ = X for every class X.
    pub fn local_unit_gammas(&self) -> Vec<Option<usize>> {
        let t = &self.source;
        self.fractions
            .system()
            .iter()
            .map(|&s| {
                let unit = self.class_of(s, s).expect("s is a denominator");
                (0..t.gamma_count())
                    .find(|&g| (0..self.num_classes()).all(|x| self.tern(unit, unit, x, g) == x))
            })
            .collect()
    }

    /// The localization as a semiring, when the sum is well defined.
    pub fn to_semiring(&self) -> Option<TernarySemiring> {
        let tab = self.addition.as_ref().ok()?;
        let c = self.num_classes();
        let gc = self.source.gamma_count();
        let add: Vec<Vec<usize>> = (0..c)
            .map(|i| (0..c).map(|j| tab[i * c + j] as usize).collect())
            .collect();
        let tern: Vec<Vec<Vec<Vec<usize>>>> = (0..gc)
            .map(|g| {
                (0..c)
                    .map(|i| {
                        (0..c)
                            .map(|j| (0..c).map(|k| self.tern(i, j, k, g)).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let names = (0..c)
            .map(|i| {
                let (x, s) = self.fractions.representative(i);
                format!(
                    "{}/{}",
                    self.source.element_name(x),
                    self.source.element_name(s)
                )
            })
            .collect();
        TernarySemiring::from_tables(
            &add,
            &tern,
            self.source.gamma_names().to_vec(),
            Some(names),
            &Caps::unlimited(),
        )
        .ok()
    }

    /// Checks that a ↦ a/1-style canonical classes preserve 0, the ternary
    /// product and, when defined, the sum.
    pub fn verify_canonical_map(&self) -> AxiomReport {
        let t = &self.source;
        let n = t.size();
        let phi = &self.canonical;
        let mut found = Vec::new();
        if phi[0] != 0 {
            found.push(Violation::new(Axiom::ZeroPreserved, vec![], vec![]));
        }
        if self.addition_supported() {
            for a in 0..n {
                for b in 0..n {
                    if Some(phi[t.add(a, b)]) != self.add(phi[a], phi[b]) {
                        found.push(Violation::new(Axiom::Additive, vec![a, b], vec![]));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for g in 0..t.gamma_count() {
                        if phi[t.tern(a, b, c, g)] != self.tern(phi[a], phi[b], phi[c], g) {
                            found.push(Violation::new(
                                Axiom::TernaryCompatible,
                                vec![a, b, c],
                                vec![g],
                            ));
                        }
                    }
                }
            }
        }
        AxiomReport::from_violations(found, 100)
    }

    pub fn report(&self) -> LocalizationReport {
        LocalizationReport {
            system: self.system.to_vec(),
            num_classes: self.num_classes(),
            classes: self
                .fractions
                .classes()
                .iter()
                .map(|m| m.iter().map(|&(x, s)| [x, s]).collect())
                .collect(),
            canonical_map: self.canonical.clone(),
            raw_relation_transitive: self.fractions.raw_relation_transitive(),
            closure_added_pairs: self.fractions.closure_added(),
            addition_supported: self.addition_supported(),
            addition_failure: self.addition_failure().map(str::to_string),
            local_unit_gammas: self.local_unit_gammas(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalizationReport {
    pub system: Vec<usize>,
    pub num_classes: usize,
    pub classes: Vec<Vec<[usize; 2]>>,
    pub canonical_map: Vec<usize>,
    pub raw_relation_transitive: bool,
    pub closure_added_pairs: usize,
    pub addition_supported: bool,
    pub addition_failure: Option<String>,
    pub local_unit_gammas: Vec<Option<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UniversalVerdict {
    /// Exactly one homomorphism factors f.
    Unique,
    /// Zero or several factorizations.
    NotUnique,
    /// Some f(s) is not Γ-invertible in the target.
    Precondition,
}

#[derive(Clone, Debug, Serialize)]
pub struct UniversalPropertyReport {
    pub verdict: UniversalVerdict,
    /// The first s whose image has no Γ-inverse.
    pub non_invertible: Option<usize>,
    /// Homomorphisms S⁻¹T → R found by exhaustive search.
    pub homomorphisms: usize,
    pub factorizations: usize,
    /// Whether the sum on S⁻¹T took part in the homomorphism conditions.
    pub additive: bool,
}

/// Enumerates every homomorphism S⁻¹T → R and counts those composing with
/// the canonical map to `f`.
pub fn check_universal_property(
    loc: &LocalizedSemiring,
    f: &TGHomomorphism<'_>,
) -> Result<UniversalPropertyReport> {
    if f.source() != loc.source() {
        return Err(Error::ParentMismatch);
    }
    let report = verify_homomorphism(f);
    if !report.passed() {
        return Err(Error::NotHomomorphism(format!(
            "{:?}",
            report.violations[0]
        )));
    }
    let r = f.target();
    let additive = loc.addition_supported();
    if let Some(&s) = loc
        .system()
        .to_vec()
        .iter()
        .find(|&&s| r.find_gamma_inverse(f.apply(s)).is_none())
    {
        return Ok(UniversalPropertyReport {
            verdict: UniversalVerdict::Precondition,
            non_invertible: Some(s),
            homomorphisms: 0,
            factorizations: 0,
            additive,
        });
    }
    let mut homomorphisms = 0;
    let mut factorizations = 0;
    let gc = loc.source().gamma_count();
    let rg = r.gamma_count();
    for code in 0..rg.pow(gc as u32) {
        let gamma_map: Vec<usize> = (0..gc).map(|i| code / rg.pow(i as u32) % rg).collect();
        let mut search = HomSearch {
            loc,
            r,
            gamma_map: &gamma_map,
            assign: vec![None; loc.num_classes()],
            assigned: Vec::new(),
        };
        search.run(&mut |h| {
            homomorphisms += 1;
            let factors = gamma_map == f.gamma_map()
                && (0..loc.source().size()).all(|a| h[loc.canonical_map()[a]] == f.apply(a));
            if factors {
                factorizations += 1;
            }
        });
    }
    Ok(UniversalPropertyReport {
        verdict: if factorizations == 1 {
            UniversalVerdict::Unique
        } else {
            UniversalVerdict::NotUnique
        },
        non_invertible: None,
        homomorphisms,
        factorizations,
        additive,
    })
}

/// Backtracking over class images with forward propagation of the product
/// and sum constraints.
struct HomSearch<'a> {
    loc: &'a LocalizedSemiring,
    r: &'a TernarySemiring,
    gamma_map: &'a [usize],
    assign: Vec<Option<usize>>,
    assigned: Vec<usize>,
}

impl HomSearch<'_> {
    fn run(&mut self, visit: &mut dyn FnMut(&[usize])) {
        let mark = self.assigned.len();
        if self.set(0, 0) {
            self.descend(visit);
        }
        self.undo(mark);
    }

    fn descend(&mut self, visit: &mut dyn FnMut(&[usize])) {
        match self.assign.iter().position(Option::is_none) {
            None => {
                let h: Vec<usize> = self.assign.iter().map(|v| v.unwrap()).collect();
                visit(&h);
            }
            Some(c) => {
                for v in 0..self.r.size() {
                    let mark = self.assigned.len();
                    if self.set(c, v) {
                        self.descend(visit);
                    }
                    self.undo(mark);
                }
            }
        }
    }

    fn undo(&mut self, mark: usize) {
        for c in self.assigned.drain(mark..) {
            self.assign[c] = None;
        }
    }

    /// Assigns and propagates; false on contradiction. Callers undo.
    fn set(&mut self, c: usize, v: usize) -> bool {
        let mut queue = vec![(c, v)];
        while let Some((c, v)) = queue.pop() {
            match self.assign[c] {
                Some(w) if w == v => continue,
                Some(_) => return false,
                None => {}
            }
            self.assign[c] = Some(v);
            self.assigned.push(c);
            let snapshot = self.assigned.clone();
            for &i in &snapshot {
                if let Some(sum) = self.loc.add(c, i) {
                    queue.push((sum, self.r.add(v, self.assign[i].unwrap())));
                }
                for &j in &snapshot {
                    for g in 0..self.gamma_map.len() {
                        let rg = self.gamma_map[g];
                        let (vi, vj) = (self.assign[i].unwrap(), self.assign[j].unwrap());
                        queue.push((self.loc.tern(c, i, j, g), self.r.tern(v, vi, vj, rg)));
                        queue.push((self.loc.tern(i, c, j, g), self.r.tern(vi, v, vj, rg)));
                        queue.push((self.loc.tern(i, j, c, g), self.r.tern(vi, vj, v, rg)));
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::ideal_closure_of;

    fn z12() -> TernarySemiring {
        TernarySemiring::modular(12, &[1, 5]).unwrap()
    }

    #[test]
    fn system_checks() {
        let t = z12();
        assert_eq!(
            is_multiplicative_system(&t, &ElementSet::from_members(12, [1, 5])),
            SystemCheck::Valid
        );
        assert_eq!(
            is_multiplicative_system(&t, &ElementSet::from_members(12, [1, 3, 5, 7, 9, 11])),
            SystemCheck::Valid
        );
        assert_eq!(
            is_multiplicative_system(&t, &ElementSet::from_members(12, [0, 1])),
            SystemCheck::ContainsZero
        );
        assert!(matches!(
            is_multiplicative_system(&t, &ElementSet::from_members(12, [5])),
            SystemCheck::NotClosed {
                a: 5,
                b: 5,
                c: 5,
                gamma: 1
            }
        ));
    }

    #[test]
    fn generated_systems() {
        let t = z12();
        assert_eq!(
            generated_mult_system(&t, &[5]).unwrap().to_vec(),
            vec![1, 5]
        );
        assert_eq!(
            generated_mult_system(&t, &[2]).unwrap().to_vec(),
            vec![2, 4, 8]
        );
        assert!(matches!(
            generated_mult_system(&t, &[6]),
            Err(Error::DegenerateSystem { .. })
        ));
    }

    #[test]
    fn prime_complements() {
        let t = z12();
        let p2 = ideal_closure_of(&t, &[2]);
        let p3 = ideal_closure_of(&t, &[3]);
        assert_eq!(
            MultiplicativeSystem::complement_of_prime(&t, &p2)
                .unwrap()
                .to_vec(),
            vec![1, 3, 5, 7, 9, 11]
        );
        assert_eq!(
            MultiplicativeSystem::complement_of_prime(&t, &p3)
                .unwrap()
                .to_vec(),
            vec![1, 2, 4, 5, 7, 8, 10, 11]
        );
        assert!(matches!(
            localize_at_prime(&t, &ideal_closure_of(&t, &[4]), &Caps::default()),
            Err(Error::NotPrime { .. })
        ));
    }

    #[test]
    fn stalk_at_two_is_z4() {
        let t = z12();
        let loc = localize_at_prime(&t, &ideal_closure_of(&t, &[2]), &Caps::default()).unwrap();
        assert_eq!(loc.num_classes(), 4);
        assert!(loc.addition_supported());
        assert!(loc.verify_canonical_map().passed());
        assert!(loc.local_unit_gammas().iter().all(Option::is_some));
        let r = loc.to_semiring().unwrap();
        assert!(crate::axioms::verify_axioms(&r).passed());
    }

    #[test]
    fn zero_fractions_are_equivalent() {
        let t = z12();
        let loc = localize_at_element(&t, 2, &Caps::default()).unwrap();
        for s in [2, 4, 8] {
            assert_eq!(loc.class_of(0, s), Some(0));
        }
    }

    #[test]
    fn universal_property_over_z2() {
        let t = z12();
        let loc = localize(
            &t,
            &generated_mult_system(&t, &[5]).unwrap(),
            &Caps::default(),
        )
        .unwrap();
        let r = TernarySemiring::modular(2, &[1]).unwrap();
        let f = TGHomomorphism::modular_scaling(&t, &r, 1).unwrap();
        let rep = check_universal_property(&loc, &f).unwrap();
        assert_eq!(rep.verdict, UniversalVerdict::Unique);
        assert!(!rep.additive);

        // 5/1 and 1/1 coincide, so no map out of S⁻¹T can restrict to the identity.
        let rep = check_universal_property(&loc, &TGHomomorphism::identity(&t)).unwrap();
        assert_eq!(rep.factorizations, 0);
        assert_eq!(rep.verdict, UniversalVerdict::NotUnique);
    }

    #[test]
    fn precondition_is_reported() {
        let t = z12();
        let loc = localize_at_element(&t, 2, &Caps::default()).unwrap();
        let id = TGHomomorphism::identity(&t);
        let rep = check_universal_property(&loc, &id).unwrap();
        assert_eq!(rep.verdict, UniversalVerdict::Precondition);
        assert_eq!(rep.non_invertible, Some(2));
    }
}
