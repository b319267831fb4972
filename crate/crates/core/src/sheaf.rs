//! The structure sheaf of a spectrum and the sheaf M̃ of a module, with
//! sections computed as compatible families of germs.
//!
//! A section over an open U assigns to each prime Q in U a class in the
//! stalk at Q, and must be locally a single fraction: every Q has a basic
//! open D(c) ∋ Q inside U and a pair x/b with b outside every prime of D(c)
//! whose germs agree with the section throughout D(c).

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fractions::{FractionClasses, Numerators};
use crate::localization::{generated_mult_system, MultiplicativeSystem};
use crate::module::GammaModule;
use crate::semiring::{Caps, TernarySemiring};
use crate::set::ElementSet;
use crate::spectrum::SpectrumSpace;

/// Restriction maps of two section spaces onto their overlap.
type OverlapRestrictions = (Vec<usize>, Vec<usize>);

#[derive(Clone, Debug)]
enum Source {
    Structure(TernarySemiring),
    Module(GammaModule),
}

impl Source {
    fn numerators(&self) -> &dyn Numerators {
        match self {
            Source::Structure(t) => t,
            Source::Module(m) => m,
        }
    }
}

#[derive(Debug)]
pub struct Stalk {
    fractions: FractionClasses,
    addition: std::result::Result<Vec<u32>, String>,
}

impl Stalk {
    pub fn fractions(&self) -> &FractionClasses {
        &self.fractions
    }

    pub fn len(&self) -> usize {
        self.fractions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fractions.is_empty()
    }

    pub fn add(&self, i: usize, j: usize) -> Option<usize> {
        let c = self.len();
        self.addition.as_ref().ok().map(|t| t[i * c + j] as usize)
    }

    pub fn addition_failure(&self) -> Option<&str> {
        self.addition.as_ref().err().map(String::as_str)
    }
}

/// Why a germ family is a section near one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub prime: usize,
    /// c with the prime in D(c) ⊆ U.
    pub neighborhood: usize,
    pub numerator: usize,
    pub denominator: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionFamily {
    /// Stalk class at each prime of the open set, ascending by prime.
    pub values: Vec<usize>,
    pub certificates: Vec<Certificate>,
}

/// All sections over one open set.
#[derive(Debug)]
pub struct SectionSpace {
    open: ElementSet,
    primes: Vec<usize>,
    sections: Vec<SectionFamily>,
    index: HashMap<Vec<usize>, usize>,
    addition: std::result::Result<Vec<u32>, String>,
}

impl SectionSpace {
    pub fn open(&self) -> &ElementSet {
        &self.open
    }

    pub fn primes(&self) -> &[usize] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.sections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sections.is_empty()
    }

    pub fn sections(&self) -> &[SectionFamily] {
        &self.sections
    }

    pub fn index_of(&self, values: &[usize]) -> Option<usize> {
        self.index.get(values).copied()
    }

    /// Pointwise sum, when every stalk involved has one and sections are
    /// closed under it.
    pub fn add(&self, i: usize, j: usize) -> Option<usize> {
        let k = self.len();
        self.addition.as_ref().ok().map(|t| t[i * k + j] as usize)
    }

    pub fn addition_failure(&self) -> Option<&str> {
        self.addition.as_ref().err().map(String::as_str)
    }

    pub fn is_group_complete(&self) -> bool {
        let k = self.len();
        self.addition.is_ok() && (0..k).all(|i| (0..k).any(|j| self.add(i, j) == Some(0)))
    }

    pub fn report(&self) -> SectionsReport {
        SectionsReport {
            open: self.open.to_vec(),
            count: self.len(),
            group_complete: self.is_group_complete(),
            addition_failure: self.addition_failure().map(str::to_string),
            sections: self.sections.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SectionsReport {
    pub open: Vec<usize>,
    pub count: usize,
    pub group_complete: bool,
    pub addition_failure: Option<String>,
    pub sections: Vec<SectionFamily>,
}

/// Families of germs given by one fraction on one basic open.
#[derive(Debug)]
struct LocalBlock {
    element: usize,
    open: ElementSet,
    primes: Vec<usize>,
    /// Distinct germ families with the least fraction producing each.
    families: Vec<(Vec<usize>, usize, usize)>,
}

#[derive(Debug)]
pub struct FractionSheaf {
    spectrum: SpectrumSpace,
    source: Source,
    stalks: Vec<Stalk>,
    blocks: Vec<LocalBlock>,
    caps: Caps,
    cache: Mutex<HashMap<ElementSet, Arc<SectionSpace>>>,
}

impl FractionSheaf {
    /// The structure sheaf O on Spec(T).
    pub fn structure(spectrum: &SpectrumSpace, caps: &Caps) -> Result<Self> {
        Self::build(spectrum, Source::Structure(spectrum.parent().clone()), caps)
    }

    /// The sheaf M̃ on Spec(T).
    pub fn associated(spectrum: &SpectrumSpace, module: &GammaModule, caps: &Caps) -> Result<Self> {
        if module.parent() != spectrum.parent() {
            return Err(Error::ParentMismatch);
        }
        Self::build(spectrum, Source::Module(module.clone()), caps)
    }

    fn build(spectrum: &SpectrumSpace, source: Source, caps: &Caps) -> Result<Self> {
        let t = spectrum.parent();
        let d = source.numerators();
        let stalks = spectrum
            .primes()
            .iter()
            .map(|p| {
                let sys = MultiplicativeSystem::complement_of_prime(t, p)?;
                let fractions = FractionClasses::build(d, &sys, caps)?;
                let addition = fractions.addition(d);
                Ok(Stalk {
                    fractions,
                    addition,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut blocks: Vec<LocalBlock> = Vec::new();
        for c in 0..t.size() {
            let open = spectrum.basic_open(c);
            if open.is_empty() || blocks.iter().any(|b| b.open == open) {
                continue;
            }
            let primes = open.to_vec();
            let denominators: Vec<usize> = (0..t.size())
                .filter(|&b| primes.iter().all(|&q| stalks[q].fractions.in_system(b)))
                .collect();
            let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
            let mut families = Vec::new();
            for x in 0..d.count() {
                for &b in &denominators {
                    let values: Vec<usize> = primes
                        .iter()
                        .map(|&q| stalks[q].fractions.class_of(x, b).expect("b avoids q"))
                        .collect();
                    if seen.insert(values.clone(), ()).is_none() {
                        families.push((values, x, b));
                    }
                }
            }
            blocks.push(LocalBlock {
                element: c,
                open,
                primes,
                families,
            });
        }
        Ok(FractionSheaf {
            spectrum: spectrum.clone(),
            source,
            stalks,
            blocks,
            caps: *caps,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn spectrum(&self) -> &SpectrumSpace {
        &self.spectrum
    }

    pub fn stalk(&self, prime: usize) -> &Stalk {
        &self.stalks[prime]
    }

    pub fn stalks(&self) -> &[Stalk] {
        &self.stalks
    }

    pub fn is_structure_sheaf(&self) -> bool {
        matches!(self.source, Source::Structure(_))
    }

    fn check_open(&self, open: &ElementSet) -> Result<()> {
        if open.universe() != self.spectrum.len() || !self.spectrum.is_open(open) {
            return Err(Error::NotOpen(format!("{:?}", open.to_vec())));
        }
        Ok(())
    }

    /// O(U) or M̃(U), cached per open set.
    pub fn sections(&self, open: &ElementSet) -> Result<Arc<SectionSpace>> {
        self.check_open(open)?;
        if let Some(s) = self.cache.lock().unwrap().get(open) {
            return Ok(Arc::clone(s));
        }
        let space = Arc::new(self.compute_sections(open)?);
        self.cache
            .lock()
            .unwrap()
            .insert(open.clone(), Arc::clone(&space));
        Ok(space)
    }

    fn compute_sections(&self, open: &ElementSet) -> Result<SectionSpace> {
        let primes = open.to_vec();
        let inside: Vec<&LocalBlock> = self
            .blocks
            .iter()
            .filter(|b| b.open.is_subset(open))
            .collect();
        let mut candidates: Vec<Vec<usize>> = primes
            .iter()
            .map(|&p| {
                let mut vals: Vec<usize> = inside
                    .iter()
                    .filter(|b| b.open.contains(p))
                    .flat_map(|b| {
                        let pos = b.primes.iter().position(|&q| q == p).unwrap();
                        b.families.iter().map(move |f| f.0[pos])
                    })
                    .collect();
                vals.sort_unstable();
                vals.dedup();
                vals
            })
            .collect();
        candidates.iter_mut().for_each(|c| c.shrink_to_fit());
        let total = candidates
            .iter()
            .try_fold(1usize, |acc, c| acc.checked_mul(c.len()))
            .unwrap_or(usize::MAX);
        if total > self.caps.section_candidates {
            return Err(Error::CapExceeded {
                what: "candidate section families",
                value: total,
                cap: self.caps.section_candidates,
            });
        }
        let block_index: Vec<HashMap<&[usize], (usize, usize)>> = inside
            .iter()
            .map(|b| {
                b.families
                    .iter()
                    .map(|(v, x, s)| (v.as_slice(), (*x, *s)))
                    .collect()
            })
            .collect();
        let mut sections = Vec::new();
        let mut choice = vec![0usize; primes.len()];
        'outer: loop {
            if candidates.iter().all(|c| !c.is_empty()) {
                let values: Vec<usize> =
                    choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
                if let Some(certs) = self.certify(&primes, &values, &inside, &block_index) {
                    sections.push(SectionFamily {
                        values,
                        certificates: certs,
                    });
                }
            } else {
                break;
            }
            for k in (0..choice.len()).rev() {
                choice[k] += 1;
                if choice[k] < candidates[k].len() {
                    continue 'outer;
                }
                choice[k] = 0;
            }
            break;
        }
        sections.sort_by(|a, b| a.values.cmp(&b.values));
        let index: HashMap<Vec<usize>, usize> = sections
            .iter()
            .enumerate()
            .map(|(i, s)| (s.values.clone(), i))
            .collect();
        let addition = self.section_addition(&primes, &sections, &index);
        Ok(SectionSpace {
            open: open.clone(),
            primes,
            sections,
            index,
            addition,
        })
    }

    fn certify(
        &self,
        primes: &[usize],
        values: &[usize],
        inside: &[&LocalBlock],
        block_index: &[HashMap<&[usize], (usize, usize)>],
    ) -> Option<Vec<Certificate>> {
        let mut certs: Vec<Option<Certificate>> = vec![None; primes.len()];
        for (b, idx) in inside.iter().zip(block_index) {
            if certs.iter().all(Option::is_some) {
                break;
            }
            let restricted: Vec<usize> = b
                .primes
                .iter()
                .map(|q| values[primes.iter().position(|p| p == q).unwrap()])
                .collect();
            if let Some(&(x, s)) = idx.get(restricted.as_slice()) {
                for &q in &b.primes {
                    let k = primes.iter().position(|&p| p == q).unwrap();
                    if certs[k].is_none() {
                        certs[k] = Some(Certificate {
                            prime: q,
                            neighborhood: b.element,
                            numerator: x,
                            denominator: s,
                        });
                    }
                }
            }
        }
        certs.into_iter().collect()
    }

    fn section_addition(
        &self,
        primes: &[usize],
        sections: &[SectionFamily],
        index: &HashMap<Vec<usize>, usize>,
    ) -> std::result::Result<Vec<u32>, String> {
        for &p in primes {
            if let Some(why) = self.stalks[p].addition_failure() {
                return Err(format!("stalk at prime {p} has no addition: {why}"));
            }
        }
        let k = sections.len();
        let mut table = Vec::with_capacity(k * k);
        for a in sections {
            for b in sections {
                let sum: Vec<usize> = primes
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| self.stalks[p].add(a.values[i], b.values[i]).unwrap())
                    .collect();
                match index.get(&sum) {
                    Some(&s) => table.push(s as u32),
                    None => return Err("sections are not closed under the pointwise sum".into()),
                }
            }
        }
        Ok(table)
    }

    /// Least c with prime ∈ D(c) ⊆ within.
    fn basic_neighborhood(&self, prime: usize, within: &ElementSet) -> Option<usize> {
        self.blocks
            .iter()
            .filter(|b| b.open.contains(prime) && b.open.is_subset(within))
            .map(|b| b.element)
            .min()
    }

    /// Restriction of a section over `from` to the open `to` ⊆ `from`, with
    /// certificates moved to basic neighborhoods inside `to`.
    pub fn restrict(
        &self,
        from: &ElementSet,
        section: usize,
        to: &ElementSet,
    ) -> Result<SectionFamily> {
        self.check_open(to)?;
        if !to.is_subset(from) {
            return Err(Error::NotContained {
                inner: to.to_vec(),
                outer: from.to_vec(),
            });
        }
        let space = self.sections(from)?;
        let s = &space.sections[section];
        let mut values = Vec::new();
        let mut certificates = Vec::new();
        for (k, &p) in space.primes.iter().enumerate() {
            if !to.contains(p) {
                continue;
            }
            values.push(s.values[k]);
            let cert = &s.certificates[k];
            let within = to.intersection(&self.spectrum.basic_open(cert.neighborhood));
            let c = self.basic_neighborhood(p, &within).ok_or_else(|| {
                Error::InvalidStructure(format!(
                    "no basic neighborhood of prime {p} inside {:?}",
                    within.to_vec()
                ))
            })?;
            certificates.push(Certificate {
                neighborhood: c,
                ..cert.clone()
            });
        }
        Ok(SectionFamily {
            values,
            certificates,
        })
    }

    /// Index map sections(from) → sections(to).
    pub fn restriction_map(&self, from: &ElementSet, to: &ElementSet) -> Result<Vec<usize>> {
        self.check_open(to)?;
        if !to.is_subset(from) {
            return Err(Error::NotContained {
                inner: to.to_vec(),
                outer: from.to_vec(),
            });
        }
        let src = self.sections(from)?;
        let dst = self.sections(to)?;
        let keep: Vec<usize> = src
            .primes
            .iter()
            .enumerate()
            .filter(|(_, p)| to.contains(**p))
            .map(|(k, _)| k)
            .collect();
        src.sections
            .iter()
            .map(|s| {
                let v: Vec<usize> = keep.iter().map(|&k| s.values[k]).collect();
                dst.index_of(&v).ok_or_else(|| {
                    Error::InvalidStructure(format!(
                        "restriction of {:?} is not a section over {:?}",
                        s.values,
                        to.to_vec()
                    ))
                })
            })
            .collect()
    }

    /// Locality and gluing for one open cover of `open`.
    pub fn verify_sheaf_axioms(
        &self,
        open: &ElementSet,
        cover: &[ElementSet],
    ) -> Result<SheafAxiomReport> {
        self.check_open(open)?;
        let mut union = ElementSet::empty(self.spectrum.len());
        for u in cover {
            self.check_open(u)?;
            if !u.is_subset(open) {
                return Err(Error::NotContained {
                    inner: u.to_vec(),
                    outer: open.to_vec(),
                });
            }
            union = union.union(u);
        }
        if union != *open {
            return Err(Error::NonCovering {
                uncovered: open.intersection(&union.complement()).to_vec(),
            });
        }
        let k = cover.len();
        let global = self.sections(open)?;
        let to_parts: Vec<Vec<usize>> = cover
            .iter()
            .map(|u| self.restriction_map(open, u))
            .collect::<Result<_>>()?;
        let mut by_restrictions: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for s in 0..global.len() {
            by_restrictions
                .entry(to_parts.iter().map(|m| m[s]).collect())
                .or_default()
                .push(s);
        }
        let locality_violations: Vec<Vec<usize>> = by_restrictions
            .values()
            .filter(|v| v.len() > 1)
            .cloned()
            .collect();
        let parts: Vec<Arc<SectionSpace>> = cover
            .iter()
            .map(|u| self.sections(u))
            .collect::<Result<_>>()?;
        // overlap[i][j]: restriction maps from U_i and U_j to U_i ∩ U_j.
        let mut overlap = vec![vec![None; k]; k];
        for i in 0..k {
            for j in i + 1..k {
                let w = cover[i].intersection(&cover[j]);
                overlap[i][j] = Some((
                    self.restriction_map(&cover[i], &w)?,
                    self.restriction_map(&cover[j], &w)?,
                ));
            }
        }
        let mut compatible = 0usize;
        let mut glued = 0usize;
        let mut failures = Vec::new();
        let mut pick = vec![0usize; k];
        let mut budget = self.caps.section_candidates;
        fn walk(
            depth: usize,
            pick: &mut Vec<usize>,
            parts: &[Arc<SectionSpace>],
            overlap: &[Vec<Option<OverlapRestrictions>>],
            visit: &mut dyn FnMut(&[usize]) -> bool,
            budget: &mut usize,
        ) -> bool {
            if depth == parts.len() {
                return visit(pick);
            }
            for s in 0..parts[depth].len() {
                if *budget == 0 {
                    return false;
                }
                *budget -= 1;
                let ok = (0..depth).all(|i| {
                    let (ri, rj) = overlap[i][depth].as_ref().unwrap();
                    ri[pick[i]] == rj[s]
                });
                if ok {
                    pick[depth] = s;
                    if !walk(depth + 1, pick, parts, overlap, visit, budget) {
                        return false;
                    }
                }
            }
            true
        }
        let finished = walk(
            0,
            &mut pick,
            &parts,
            &overlap,
            &mut |family| {
                compatible += 1;
                match by_restrictions.get(family).map(Vec::len) {
                    Some(1) => glued += 1,
                    _ => {
                        if failures.len() < 16 {
                            failures.push(family.to_vec());
                        }
                    }
                }
                true
            },
            &mut budget,
        );
        if !finished {
            return Err(Error::CapExceeded {
                what: "compatible families",
                value: self.caps.section_candidates.saturating_add(1),
                cap: self.caps.section_candidates,
            });
        }
        Ok(SheafAxiomReport {
            open: open.to_vec(),
            cover: cover.iter().map(ElementSet::to_vec).collect(),
            sections: global.len(),
            compatible_families: compatible,
            glued_uniquely: glued,
            locality_violations,
            gluing_failures: failures,
        })
    }

    /// Smallest open set containing the prime.
    pub fn minimal_neighborhood(&self, prime: usize) -> ElementSet {
        self.blocks
            .iter()
            .filter(|b| b.open.contains(prime))
            .fold(self.spectrum.whole(), |acc, b| acc.intersection(&b.open))
    }

    /// Germs at a prime: evaluation of sections over its minimal
    /// neighborhood against the stalk built directly by localization.
    pub fn stalk_identification(&self, prime: usize) -> Result<StalkIdentification> {
        let u = self.minimal_neighborhood(prime);
        let space = self.sections(&u)?;
        let k = space.primes.iter().position(|&p| p == prime).unwrap();
        let mut hit = vec![0usize; self.stalks[prime].len()];
        for s in &space.sections {
            hit[s.values[k]] += 1;
        }
        Ok(StalkIdentification {
            prime,
            neighborhood: u.to_vec(),
            sections: space.len(),
            stalk_classes: hit.len(),
            injective: hit.iter().all(|&h| h <= 1),
            surjective: hit.iter().all(|&h| h >= 1),
        })
    }

    /// Compares the algebraic localization at a (T_a or M_a) with the
    /// sections over D(a).
    pub fn compare_basic_sections(&self, a: usize) -> Result<BasicSectionsComparison> {
        let t = self.spectrum.parent();
        t.check_element("element", a)?;
        let open = self.spectrum.basic_open(a);
        let space = self.sections(&open)?;
        let sys = match generated_mult_system(t, &[a]) {
            Ok(s) => s,
            Err(Error::DegenerateSystem { .. }) => {
                return Ok(BasicSectionsComparison {
                    element: a,
                    open: open.to_vec(),
                    degenerate: true,
                    localized_classes: 1,
                    sections: space.len(),
                    map: vec![0],
                    well_defined: true,
                    injective: true,
                    surjective: space.len() == 1,
                });
            }
            Err(e) => return Err(e),
        };
        let d = self.source.numerators();
        let local = FractionClasses::build(d, &sys, &self.caps)?;
        let germs = |x: usize, s: usize| -> Vec<usize> {
            space
                .primes
                .iter()
                .map(|&q| self.stalks[q].fractions.class_of(x, s).expect("s avoids q"))
                .collect()
        };
        let mut well_defined = true;
        let mut map = Vec::with_capacity(local.len());
        for members in local.classes() {
            let (x0, s0) = members[0];
            let g0 = germs(x0, s0);
            if members[1..].iter().any(|&(x, s)| germs(x, s) != g0) {
                well_defined = false;
            }
            map.push(space.index_of(&g0).ok_or_else(|| {
                Error::InvalidStructure(format!("germs of {x0}/{s0} do not form a section"))
            })?);
        }
        let mut hit = vec![0usize; space.len()];
        for &m in &map {
            hit[m] += 1;
        }
        Ok(BasicSectionsComparison {
            element: a,
            open: open.to_vec(),
            degenerate: false,
            localized_classes: local.len(),
            sections: space.len(),
            map,
            well_defined,
            injective: hit.iter().all(|&h| h <= 1),
            surjective: hit.iter().all(|&h| h >= 1),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SheafAxiomReport {
    pub open: Vec<usize>,
    pub cover: Vec<Vec<usize>>,
    pub sections: usize,
    pub compatible_families: usize,
    pub glued_uniquely: usize,
    /// Groups of distinct sections with identical restrictions.
    pub locality_violations: Vec<Vec<usize>>,
    /// Compatible families that glue to zero or several sections.
    pub gluing_failures: Vec<Vec<usize>>,
}

impl SheafAxiomReport {
    pub fn holds(&self) -> bool {
        self.locality_violations.is_empty() && self.gluing_failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StalkIdentification {
    pub prime: usize,
    pub neighborhood: Vec<usize>,
    pub sections: usize,
    pub stalk_classes: usize,
    pub injective: bool,
    pub surjective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasicSectionsComparison {
    pub element: usize,
    pub open: Vec<usize>,
    /// The system generated by the element reaches 0, so D(a) is empty.
    pub degenerate: bool,
    pub localized_classes: usize,
    pub sections: usize,
    /// Class of the localization ↦ section index.
    pub map: Vec<usize>,
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
}

impl BasicSectionsComparison {
    pub fn is_isomorphism(&self) -> bool {
        self.well_defined && self.injective && self.surjective
    }
}
