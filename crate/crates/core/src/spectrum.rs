use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::axioms::{Axiom, AxiomReport, Violation};
use crate::error::{Error, Result};
use crate::hom::TGHomomorphism;
use crate::ideal::{enumerate_ideals, ideal_sum, is_prime, GammaIdeal};
use crate::semiring::{Caps, TernarySemiring};
use crate::set::ElementSet;

/// Families of at most this many ideals are tested exhaustively.
const EXHAUSTIVE_FAMILY_IDEALS: usize = 12;
const SAMPLED_FAMILIES: usize = 1000;

/// Prime Γ-ideals of a semiring with the closed sets of the Zariski topology.
/// Closed and open sets are sets of prime indices.
#[derive(Clone, Debug)]
pub struct SpectrumSpace {
    parent: TernarySemiring,
    ideals: Vec<GammaIdeal>,
    primes: Vec<GammaIdeal>,
    closed_sets: Vec<ElementSet>,
}

impl SpectrumSpace {
    pub fn new(t: &TernarySemiring, caps: &Caps) -> Result<Self> {
        let ideals = enumerate_ideals(t, caps)?;
        let primes: Vec<GammaIdeal> = ideals
            .iter()
            .filter(|i| is_prime(t, i).is_prime())
            .cloned()
            .collect();
        let mut s = SpectrumSpace {
            parent: t.clone(),
            ideals,
            primes,
            closed_sets: Vec::new(),
        };
        s.closed_sets = s.close_lattice();
        Ok(s)
    }

    fn close_lattice(&self) -> Vec<ElementSet> {
        let mut all: BTreeSet<ElementSet> =
            self.ideals.iter().map(|i| self.vanishing_set(i)).collect();
        loop {
            let current: Vec<ElementSet> = all.iter().cloned().collect();
            let before = all.len();
            for (i, a) in current.iter().enumerate() {
                for b in &current[i + 1..] {
                    all.insert(a.union(b));
                    all.insert(a.intersection(b));
                }
            }
            if all.len() == before {
                break;
            }
        }
        all.into_iter().collect()
    }

    pub fn parent(&self) -> &TernarySemiring {
        &self.parent
    }

    /// Every Γ-ideal, including the whole semiring, in canonical order.
    pub fn ideals(&self) -> &[GammaIdeal] {
        &self.ideals
    }

    pub fn primes(&self) -> &[GammaIdeal] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn closed_sets(&self) -> &[ElementSet] {
        &self.closed_sets
    }

    pub fn prime_index(&self, members: &ElementSet) -> Option<usize> {
        self.primes.iter().position(|p| p.members() == members)
    }

    pub fn whole(&self) -> ElementSet {
        ElementSet::full(self.primes.len())
    }

    /// V(I): primes containing I.
    pub fn vanishing_set(&self, ideal: &GammaIdeal) -> ElementSet {
        ElementSet::from_members(
            self.primes.len(),
            self.primes
                .iter()
                .enumerate()
                .filter(|(_, p)| ideal.is_subset(p))
                .map(|(i, _)| i),
        )
    }

    /// D(a): primes not containing a.
    pub fn basic_open(&self, a: usize) -> ElementSet {
        ElementSet::from_members(
            self.primes.len(),
            self.primes
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.contains(a))
                .map(|(i, _)| i),
        )
    }

    pub fn is_closed(&self, set: &ElementSet) -> bool {
        self.closed_sets.binary_search(set).is_ok()
    }

    pub fn is_open(&self, set: &ElementSet) -> bool {
        self.is_closed(&set.complement())
    }

    /// Elements a, in ascending order, whose basic opens are added while
    /// they still enlarge the covered part of `open`.
    pub fn basis_decomposition(&self, open: &ElementSet) -> Option<Vec<usize>> {
        let mut covered = ElementSet::empty(self.primes.len());
        let mut used = Vec::new();
        for a in 0..self.parent.size() {
            if covered == *open {
                break;
            }
            let d = self.basic_open(a);
            if d.is_subset(open) && !d.is_subset(&covered) {
                covered = covered.union(&d);
                used.push(a);
            }
        }
        (covered == *open).then_some(used)
    }

    pub fn is_t0(&self) -> bool {
        self.t0_violation().is_none()
    }

    fn t0_violation(&self) -> Option<(usize, usize)> {
        let opens: Vec<ElementSet> = (0..self.parent.size())
            .map(|a| self.basic_open(a))
            .collect();
        for p in 0..self.primes.len() {
            for q in p + 1..self.primes.len() {
                if !opens.iter().any(|d| d.contains(p) != d.contains(q)) {
                    return Some((p, q));
                }
            }
        }
        None
    }

    /// Every subset of primes is closed.
    pub fn is_discrete(&self) -> bool {
        (0..self.primes.len())
            .all(|p| self.is_closed(&ElementSet::from_members(self.primes.len(), [p])))
    }

    /// Checks V(0) = Spec, V(T) = ∅, V(I∩J) = V(I) ∪ V(J) for all pairs,
    /// V(ΣI) = ∩V(I) over families, and T₀ separation.
    pub fn verify_zariski_axioms(&self, seed: u64) -> AxiomReport {
        let t = &self.parent;
        let k = self.ideals.len();
        let all = self.whole();
        let mut found = Vec::new();
        let zero = &self.ideals[0];
        if self.vanishing_set(zero) != all {
            found.push(Violation::new(Axiom::VanishingOfZero, vec![], vec![]));
        }
        let whole = &self.ideals[k - 1];
        if !self.vanishing_set(whole).is_empty() {
            found.push(Violation::new(Axiom::VanishingOfWhole, vec![], vec![]));
        }
        let v: Vec<ElementSet> = self.ideals.iter().map(|i| self.vanishing_set(i)).collect();
        for i in 0..k {
            for j in i..k {
                let meet = self.ideals[i].intersection(&self.ideals[j]);
                if self.vanishing_set(&meet) != v[i].union(&v[j]) {
                    found.push(Violation::new(
                        Axiom::IntersectionToUnion,
                        vec![i, j],
                        vec![],
                    ));
                }
            }
        }
        let check_family = |family: &[usize], found: &mut Vec<Violation>| {
            let members: Vec<&GammaIdeal> = family.iter().map(|&i| &self.ideals[i]).collect();
            let sum = ideal_sum(t, &members);
            let meet = family
                .iter()
                .fold(all.clone(), |acc, &i| acc.intersection(&v[i]));
            if self.vanishing_set(&sum) != meet {
                found.push(Violation::new(
                    Axiom::SumToIntersection,
                    family.to_vec(),
                    vec![],
                ));
            }
        };
        if k <= EXHAUSTIVE_FAMILY_IDEALS {
            for mask in 0u32..(1 << k) {
                let family: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
                check_family(&family, &mut found);
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..SAMPLED_FAMILIES {
                let family: Vec<usize> = (0..k).filter(|_| rng.random_bool(0.5)).collect();
                check_family(&family, &mut found);
            }
        }
        if let Some((p, q)) = self.t0_violation() {
            found.push(Violation::new(Axiom::T0Separation, vec![p, q], vec![]));
        }
        AxiomReport::from_violations(found, usize::MAX)
    }

    /// Covering pairs (smaller, larger) of the ideal lattice, as ideal indices.
    pub fn hasse_edges(&self, include_whole: bool) -> Vec<(usize, usize)> {
        let nodes: Vec<usize> = (0..self.ideals.len())
            .filter(|&i| include_whole || self.ideals[i].is_proper())
            .collect();
        let mut edges = Vec::new();
        for &i in &nodes {
            for &j in &nodes {
                if i == j || !self.ideals[i].is_subset(&self.ideals[j]) {
                    continue;
                }
                let covered = nodes.iter().any(|&k| {
                    k != i
                        && k != j
                        && self.ideals[i].is_subset(&self.ideals[k])
                        && self.ideals[k].is_subset(&self.ideals[j])
                });
                if !covered {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    /// Hasse diagram of the ideal lattice in DOT, primes drawn bold.
    pub fn hasse_dot(&self, include_whole: bool) -> String {
        let t = &self.parent;
        let nodes: Vec<usize> = (0..self.ideals.len())
            .filter(|&i| include_whole || self.ideals[i].is_proper())
            .collect();
        let mut out = String::from("digraph ideals {\n  rankdir=BT;\n  node [shape=box];\n");
        for &i in &nodes {
            let ideal = &self.ideals[i];
            let label = ideal.label(t);
            if let Some(p) = self.prime_index(ideal.members()) {
                let _ = writeln!(
                    out,
                    "  I{i} [label=\"P{p} = {label}\", style=bold, color=red];"
                );
            } else {
                let _ = writeln!(out, "  I{i} [label=\"{label}\"];");
            }
        }
        for (i, j) in self.hasse_edges(include_whole) {
            let _ = writeln!(out, "  I{i} -> I{j} [dir=none];");
        }
        out.push_str("}\n");
        out
    }

    pub fn report(&self) -> SpectrumReport {
        let t = &self.parent;
        SpectrumReport {
            primes: self
                .primes
                .iter()
                .map(|p| PrimeEntry {
                    label: p.label(t),
                    members: p.members().to_vec(),
                    generators: p.generators().map(|g| g.to_vec()).unwrap_or_default(),
                })
                .collect(),
            ideals: self.ideals.iter().map(|i| i.members().to_vec()).collect(),
            closed_sets: self.closed_sets.iter().map(|c| c.to_vec()).collect(),
            t0: self.is_t0(),
            discrete: self.is_discrete(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeEntry {
    pub label: String,
    pub members: Vec<usize>,
    pub generators: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub primes: Vec<PrimeEntry>,
    pub ideals: Vec<Vec<usize>>,
    pub closed_sets: Vec<Vec<usize>>,
    pub t0: bool,
    pub discrete: bool,
}

/// f* : Spec(target) → Spec(source), P' ↦ f⁻¹(P').
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumMap {
    /// Indexed by target prime; values are source prime indices.
    pub map: Vec<usize>,
    pub continuous: bool,
}

impl SpectrumMap {
    /// `self ∘ other` as maps of prime indices.
    pub fn after(&self, other: &SpectrumMap) -> SpectrumMap {
        SpectrumMap {
            map: other.map.iter().map(|&q| self.map[q]).collect(),
            continuous: self.continuous && other.continuous,
        }
    }
}

pub fn induced_spectrum_map(f: &TGHomomorphism<'_>, caps: &Caps) -> Result<SpectrumMap> {
    let source = SpectrumSpace::new(f.source(), caps)?;
    let target = SpectrumSpace::new(f.target(), caps)?;
    induced_map_between(f, &source, &target)
}

pub fn induced_map_between(
    f: &TGHomomorphism<'_>,
    source: &SpectrumSpace,
    target: &SpectrumSpace,
) -> Result<SpectrumMap> {
    let s = f.source();
    let mut map = Vec::with_capacity(target.len());
    for (qi, q) in target.primes().iter().enumerate() {
        let pre =
            ElementSet::from_members(s.size(), (0..s.size()).filter(|&a| q.contains(f.apply(a))));
        if pre.is_full() {
            return Err(Error::PreimageNotProper { target_prime: qi });
        }
        match source.prime_index(&pre) {
            Some(p) => map.push(p),
            None => return Err(Error::PreimageNotPrime { target_prime: qi }),
        }
    }
    let continuous = source.closed_sets().iter().all(|c| {
        let pulled = ElementSet::from_members(
            target.len(),
            (0..target.len()).filter(|&q| c.contains(map[q])),
        );
        target.is_closed(&pulled)
    });
    Ok(SpectrumMap { map, continuous })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z12() -> TernarySemiring {
        TernarySemiring::modular(12, &[1, 5]).unwrap()
    }

    #[test]
    fn z12_spectrum() {
        let s = SpectrumSpace::new(&z12(), &Caps::default()).unwrap();
        let primes: Vec<Vec<usize>> = s.primes().iter().map(|p| p.members().to_vec()).collect();
        assert_eq!(primes, vec![vec![0, 3, 6, 9], vec![0, 2, 4, 6, 8, 10]]);
        let closed: Vec<Vec<usize>> = s.closed_sets().iter().map(|c| c.to_vec()).collect();
        assert_eq!(closed, vec![vec![], vec![0], vec![1], vec![0, 1]]);
        assert!(s.is_t0());
        assert!(s.is_discrete());
        assert!(s.verify_zariski_axioms(0).passed());
        // P₂ has index 1, P₃ index 0.
        assert_eq!(s.basic_open(3).to_vec(), vec![1]);
        assert_eq!(s.basic_open(2).to_vec(), vec![0]);
        assert_eq!(s.basic_open(0).to_vec(), Vec::<usize>::new());
        assert_eq!(s.basis_decomposition(&s.whole()), Some(vec![1]));
    }

    #[test]
    fn z2_spectrum_is_zero_ideal() {
        let t = TernarySemiring::modular(2, &[1]).unwrap();
        let s = SpectrumSpace::new(&t, &Caps::default()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.primes()[0].members().to_vec(), vec![0]);
    }

    #[test]
    fn hasse_diagram_of_z12() {
        let s = SpectrumSpace::new(&z12(), &Caps::default()).unwrap();
        let dot = s.hasse_dot(false);
        assert!(dot.contains("P1 = (2)"));
        assert!(dot.contains("P0 = (3)"));
        assert_eq!(dot.matches("->").count(), 5);
    }

    #[test]
    fn reduction_pulls_primes_back() {
        let a = TernarySemiring::modular(12, &[1]).unwrap();
        let b = TernarySemiring::modular(6, &[1]).unwrap();
        let f = TGHomomorphism::modular_scaling(&a, &b, 1).unwrap();
        let m = induced_spectrum_map(&f, &Caps::default()).unwrap();
        assert!(m.continuous);
        assert_eq!(m.map.len(), 2);
        let id = induced_spectrum_map(&TGHomomorphism::identity(&a), &Caps::default()).unwrap();
        assert_eq!(id.map, vec![0, 1]);
    }

    #[test]
    fn zero_map_is_rejected() {
        let a = TernarySemiring::modular(6, &[1]).unwrap();
        let f = TGHomomorphism::new(&a, &a, vec![0], vec![0; 6]).unwrap();
        assert!(matches!(
            induced_spectrum_map(&f, &Caps::default()),
            Err(Error::PreimageNotProper { .. })
        ));
    }
}
