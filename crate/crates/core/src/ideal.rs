use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semiring::{Caps, TernarySemiring};
use crate::set::ElementSet;

/// An additive submonoid absorbing ternary products in every slot.
#[derive(Clone, Debug, Serialize)]
pub struct GammaIdeal {
    members: ElementSet,
    generators: Option<ElementSet>,
}

impl PartialEq for GammaIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for GammaIdeal {}

impl Ord for GammaIdeal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members.cmp(&other.members)
    }
}

impl PartialOrd for GammaIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl GammaIdeal {
    /// Wraps `members` after checking the ideal laws exhaustively.
    pub fn from_members(t: &TernarySemiring, members: ElementSet) -> Result<Self> {
        if members.universe() != t.size() {
            return Err(Error::DimensionMismatch {
                what: "ideal universe".into(),
                expected: t.size(),
                found: members.universe(),
            });
        }
        if let Some(w) = ideal_violation(t, &members) {
            return Err(Error::InvalidStructure(format!("not a Γ-ideal: {w}")));
        }
        Ok(GammaIdeal {
            members,
            generators: None,
        })
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn generators(&self) -> Option<&ElementSet> {
        self.generators.as_ref()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_proper(&self) -> bool {
        !self.members.is_full()
    }

    pub fn is_subset(&self, other: &GammaIdeal) -> bool {
        self.members.is_subset(&other.members)
    }

    /// I ∩ J; intersections of ideals are ideals.
    pub fn intersection(&self, other: &GammaIdeal) -> GammaIdeal {
        GammaIdeal {
            members: self.members.intersection(&other.members),
            generators: None,
        }
    }

    /// Generator notation: `{0}`, `(2)`, `(2, 3)`.
    pub fn label(&self, t: &TernarySemiring) -> String {
        match &self.generators {
            Some(g) if g.is_empty() => "{0}".to_string(),
            Some(g) => {
                let names: Vec<String> = g.iter().map(|a| t.element_name(a)).collect();
                format!("({})", names.join(", "))
            }
            None => format!("{:?}", self.members),
        }
    }

    pub(crate) fn with_generators(mut self, t: &TernarySemiring) -> Self {
        self.generators = Some(greedy_generators(t, &self.members));
        self
    }
}

/// Smallest Γ-ideal containing `seed`.
pub fn ideal_closure(t: &TernarySemiring, seed: &ElementSet) -> GammaIdeal {
    GammaIdeal {
        members: close(t, seed.iter()),
        generators: Some(seed.clone()).map(|mut s| {
            s.remove(0);
            s
        }),
    }
}

pub fn ideal_closure_of(t: &TernarySemiring, seed: &[usize]) -> GammaIdeal {
    ideal_closure(t, &ElementSet::from_members(t.size(), seed.iter().copied()))
}

/// I + J, read as the closure of I ∪ J.
pub fn ideal_sum(t: &TernarySemiring, ideals: &[&GammaIdeal]) -> GammaIdeal {
    let seed = ideals
        .iter()
        .fold(ElementSet::empty(t.size()), |acc, i| acc.union(i.members()));
    GammaIdeal {
        members: close(t, seed.iter()),
        generators: None,
    }
}

fn close(t: &TernarySemiring, seed: impl Iterator<Item = usize>) -> ElementSet {
    let n = t.size();
    let mut members = ElementSet::empty(n);
    let mut queue = VecDeque::new();
    let push = |x: usize, members: &mut ElementSet, queue: &mut VecDeque<usize>| {
        if members.insert(x) {
            queue.push_back(x);
        }
    };
    push(0, &mut members, &mut queue);
    for s in seed {
        push(s, &mut members, &mut queue);
    }
    while let Some(x) = queue.pop_front() {
        let current: Vec<usize> = members.iter().collect();
        for y in current {
            push(t.add(x, y), &mut members, &mut queue);
        }
        for b in 0..n {
            for c in 0..n {
                for g in 0..t.gamma_count() {
                    push(t.tern(x, b, c, g), &mut members, &mut queue);
                    push(t.tern(b, x, c, g), &mut members, &mut queue);
                    push(t.tern(b, c, x, g), &mut members, &mut queue);
                }
            }
        }
    }
    members
}

fn greedy_generators(t: &TernarySemiring, members: &ElementSet) -> ElementSet {
    let mut gens = ElementSet::empty(t.size());
    let mut span = close(t, std::iter::empty());
    for a in members.iter() {
        if !span.contains(a) {
            gens.insert(a);
            span = close(t, gens.iter());
        }
    }
    gens
}

/// Describes the first failure of the ideal laws, if any.
pub fn ideal_violation(t: &TernarySemiring, set: &ElementSet) -> Option<String> {
    let n = t.size();
    if !set.contains(0) {
        return Some("0 is missing".into());
    }
    for a in set.iter() {
        for b in set.iter() {
            if !set.contains(t.add(a, b)) {
                return Some(format!("{a} + {b} escapes"));
            }
        }
        for b in 0..n {
            for c in 0..n {
                for g in 0..t.gamma_count() {
                    for (p, q, r) in [(a, b, c), (b, a, c), (b, c, a)] {
                        if !set.contains(t.tern(p, q, r, g)) {
                            return Some(format!("{{{p} {q} {r}}}_{g} escapes"));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Every Γ-ideal of `t` (including `t` itself) in canonical order, found as
/// joins of principal closures until no new ideal appears.
pub fn enumerate_ideals(t: &TernarySemiring, caps: &Caps) -> Result<Vec<GammaIdeal>> {
    let n = t.size();
    if n > caps.enumeration {
        return Err(Error::CapExceeded {
            what: "carrier size for ideal enumeration",
            value: n,
            cap: caps.enumeration,
        });
    }
    let mut seen: BTreeSet<ElementSet> = BTreeSet::new();
    let mut list: Vec<ElementSet> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let admit = |s: ElementSet,
                 seen: &mut BTreeSet<ElementSet>,
                 list: &mut Vec<ElementSet>,
                 queue: &mut VecDeque<usize>|
     -> Result<()> {
        if seen.insert(s.clone()) {
            list.push(s);
            queue.push_back(list.len() - 1);
            if list.len() > caps.ideals {
                return Err(Error::CapExceeded {
                    what: "number of ideals",
                    value: list.len(),
                    cap: caps.ideals,
                });
            }
        }
        Ok(())
    };
    admit(
        close(t, std::iter::empty()),
        &mut seen,
        &mut list,
        &mut queue,
    )?;
    for a in 0..n {
        admit(
            close(t, std::iter::once(a)),
            &mut seen,
            &mut list,
            &mut queue,
        )?;
    }
    while let Some(i) = queue.pop_front() {
        let mut j = 0;
        while j < list.len() {
            if !list[i].is_subset(&list[j]) && !list[j].is_subset(&list[i]) {
                let join = close(t, list[i].union(&list[j]).iter());
                admit(join, &mut seen, &mut list, &mut queue)?;
            }
            j += 1;
        }
    }
    let mut ideals: Vec<GammaIdeal> = seen
        .into_iter()
        .map(|members| {
            GammaIdeal {
                members,
                generators: None,
            }
            .with_generators(t)
        })
        .collect();
    ideals.sort();
    Ok(ideals)
}

/// Outcome of a primality test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PrimeCheck {
    Prime,
    /// The ideal is all of T.
    NotProper,
    /// {abc}_γ lands in the ideal although none of a, b, c does.
    Violated {
        a: usize,
        b: usize,
        c: usize,
        gamma: usize,
    },
}

impl PrimeCheck {
    pub fn is_prime(&self) -> bool {
        matches!(self, PrimeCheck::Prime)
    }
}

/// Decides primality; on failure returns the lexicographically least
/// violating (a, b, c, γ).
pub fn is_prime(t: &TernarySemiring, ideal: &GammaIdeal) -> PrimeCheck {
    if !ideal.is_proper() {
        return PrimeCheck::NotProper;
    }
    let n = t.size();
    let outside: Vec<usize> = (0..n).filter(|&a| !ideal.contains(a)).collect();
    for &a in &outside {
        for &b in &outside {
            for &c in &outside {
                for g in 0..t.gamma_count() {
                    if ideal.contains(t.tern(a, b, c, g)) {
                        return PrimeCheck::Violated { a, b, c, gamma: g };
                    }
                }
            }
        }
    }
    PrimeCheck::Prime
}

/// Replays a primality witness: the product lies in the ideal, no factor does.
pub fn witnesses_non_primality(
    t: &TernarySemiring,
    ideal: &GammaIdeal,
    a: usize,
    b: usize,
    c: usize,
    gamma: usize,
) -> bool {
    ideal.contains(t.tern(a, b, c, gamma))
        && !ideal.contains(a)
        && !ideal.contains(b)
        && !ideal.contains(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z12() -> TernarySemiring {
        TernarySemiring::modular(12, &[1, 5]).unwrap()
    }

    #[test]
    fn principal_closures_in_z12() {
        let t = z12();
        assert_eq!(
            ideal_closure_of(&t, &[2]).members().to_vec(),
            vec![0, 2, 4, 6, 8, 10]
        );
        assert_eq!(ideal_closure_of(&t, &[4]).members().to_vec(), vec![0, 4, 8]);
        assert_eq!(ideal_closure_of(&t, &[]).members().to_vec(), vec![0]);
        assert_eq!(
            ideal_closure_of(&t, &[4, 6]).members().to_vec(),
            vec![0, 2, 4, 6, 8, 10]
        );
    }

    #[test]
    fn z12_ideals_are_the_divisor_subgroups() {
        let t = z12();
        let ideals = enumerate_ideals(&t, &Caps::default()).unwrap();
        let got: Vec<Vec<usize>> = ideals.iter().map(|i| i.members().to_vec()).collect();
        assert_eq!(
            got,
            vec![
                vec![0],
                vec![0, 6],
                vec![0, 4, 8],
                vec![0, 3, 6, 9],
                vec![0, 2, 4, 6, 8, 10],
                (0..12).collect::<Vec<_>>(),
            ]
        );
        assert_eq!(ideals[2].label(&t), "(4)");
        assert_eq!(ideals[0].label(&t), "{0}");
    }

    #[test]
    fn z2_has_two_ideals() {
        let t = TernarySemiring::modular(2, &[1]).unwrap();
        assert_eq!(enumerate_ideals(&t, &Caps::default()).unwrap().len(), 2);
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let t = TernarySemiring::modular(20, &[1]).unwrap();
        assert!(matches!(
            enumerate_ideals(&t, &Caps::default()),
            Err(Error::CapExceeded { cap: 16, .. })
        ));
    }

    #[test]
    fn primality_in_z12() {
        let t = z12();
        let p2 = ideal_closure_of(&t, &[2]);
        assert_eq!(is_prime(&t, &p2), PrimeCheck::Prime);
        assert!(is_prime(&t, &ideal_closure_of(&t, &[3])).is_prime());

        let zero = ideal_closure_of(&t, &[]);
        let six = ideal_closure_of(&t, &[6]);
        let four = ideal_closure_of(&t, &[4]);
        for (ideal, reference) in [(&zero, (2, 2, 3)), (&six, (2, 3, 1)), (&four, (2, 2, 1))] {
            match is_prime(&t, ideal) {
                PrimeCheck::Violated { a, b, c, gamma } => {
                    assert!(witnesses_non_primality(&t, ideal, a, b, c, gamma));
                }
                other => panic!("expected a violation, got {other:?}"),
            }
            assert!(witnesses_non_primality(
                &t,
                ideal,
                reference.0,
                reference.1,
                reference.2,
                0
            ));
        }
        assert_eq!(
            is_prime(&t, &zero),
            PrimeCheck::Violated {
                a: 1,
                b: 2,
                c: 6,
                gamma: 0
            }
        );
        assert_eq!(
            is_prime(&t, &ideal_closure_of(&t, &[1])),
            PrimeCheck::NotProper
        );
    }

    #[test]
    fn from_members_rejects_non_ideals() {
        let t = z12();
        assert!(GammaIdeal::from_members(&t, ElementSet::from_members(12, [0, 5])).is_err());
        assert!(GammaIdeal::from_members(&t, ElementSet::from_members(12, [0, 6])).is_ok());
    }
}
