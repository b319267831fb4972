//! Čech complexes of a fraction sheaf for a cover by basic opens, and their
//! cohomology computed over ℤ.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::intlin::{subquotient, FiniteAbelianGroup};
use crate::set::ElementSet;
use crate::sheaf::{FractionSheaf, SectionSpace};

#[derive(Debug)]
struct Cochains {
    groups: Vec<FiniteAbelianGroup>,
    offsets: Vec<usize>,
    dim: usize,
    relations: Vec<Vec<i128>>,
}

impl Cochains {
    /// Normal form of a coordinate vector, one element index per simplex.
    fn normalize(&self, v: &[i128]) -> Result<Vec<usize>> {
        self.groups
            .iter()
            .zip(&self.offsets)
            .map(|(g, &o)| g.element(&v[o..o + g.rank()]))
            .collect()
    }
}

/// C⁰ → C¹ → … for a cover U_i = D(aᵢ), with alternating-sum coboundaries.
#[derive(Debug)]
pub struct CechComplex {
    cover: Vec<usize>,
    opens: Vec<ElementSet>,
    simplices: Vec<Vec<Vec<usize>>>,
    spaces: Vec<Vec<Arc<SectionSpace>>>,
    cochains: Vec<std::result::Result<Cochains, String>>,
    /// d^p as integer rows: one per generator of C^p.
    coboundary: Vec<Option<Vec<Vec<i128>>>>,
    compatible_families: usize,
    global_sections: usize,
}

fn subsets(k: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            go(i + 1, k, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, size, &mut Vec::new(), &mut out);
    out
}

fn section_group(space: &SectionSpace) -> std::result::Result<FiniteAbelianGroup, String> {
    if let Some(why) = space.addition_failure() {
        return Err(format!("sections over {:?}: {why}", space.open().to_vec()));
    }
    if !space.is_group_complete() {
        return Err(format!(
            "sections over {:?} are not group-complete",
            space.open().to_vec()
        ));
    }
    FiniteAbelianGroup::from_table(space.len(), |i, j| space.add(i, j).unwrap())
        .map_err(|e| e.to_string())
}

/// Builds the Čech complex for the cover by D(a) over the given elements.
pub fn cech_complex(sheaf: &FractionSheaf, cover: &[usize]) -> Result<CechComplex> {
    let spec = sheaf.spectrum();
    let t = spec.parent();
    for &a in cover {
        t.check_element("cover element", a)?;
    }
    let opens: Vec<ElementSet> = cover.iter().map(|&a| spec.basic_open(a)).collect();
    let union = opens
        .iter()
        .fold(ElementSet::empty(spec.len()), |acc, u| acc.union(u));
    if !union.is_full() {
        return Err(Error::NonCovering {
            uncovered: union.complement().to_vec(),
        });
    }
    let k = cover.len();
    let simplices: Vec<Vec<Vec<usize>>> = (1..=k).map(|size| subsets(k, size)).collect();
    let spaces: Vec<Vec<Arc<SectionSpace>>> = simplices
        .iter()
        .map(|deg| {
            deg.iter()
                .map(|simplex| {
                    let v = simplex
                        .iter()
                        .fold(spec.whole(), |acc, &i| acc.intersection(&opens[i]));
                    sheaf.sections(&v)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let cochains: Vec<std::result::Result<Cochains, String>> = spaces
        .iter()
        .map(|deg| {
            let groups = deg
                .iter()
                .map(|s| section_group(s))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let mut offsets = Vec::with_capacity(groups.len());
            let mut dim = 0;
            for g in &groups {
                offsets.push(dim);
                dim += g.rank();
            }
            let mut relations = Vec::with_capacity(dim);
            for (g, &o) in groups.iter().zip(&offsets) {
                for rel in g.relations() {
                    let mut row = vec![0i128; dim];
                    row[o..o + g.rank()].copy_from_slice(rel);
                    relations.push(row);
                }
            }
            Ok(Cochains {
                groups,
                offsets,
                dim,
                relations,
            })
        })
        .collect();
    let mut coboundary = Vec::with_capacity(k);
    for p in 0..k {
        let d = match (&cochains[p], cochains.get(p + 1)) {
            (Ok(src), Some(Ok(dst))) => {
                Some(coboundary_rows(sheaf, &simplices, &spaces, p, src, dst)?)
            }
            (Ok(src), None) => Some(vec![Vec::new(); src.dim]),
            _ => None,
        };
        coboundary.push(d);
    }
    let whole = spec.whole();
    let axioms = sheaf.verify_sheaf_axioms(&whole, &opens)?;
    Ok(CechComplex {
        cover: cover.to_vec(),
        opens,
        simplices,
        spaces,
        cochains,
        coboundary,
        compatible_families: axioms.compatible_families,
        global_sections: axioms.sections,
    })
}

fn coboundary_rows(
    sheaf: &FractionSheaf,
    simplices: &[Vec<Vec<usize>>],
    spaces: &[Vec<Arc<SectionSpace>>],
    p: usize,
    src: &Cochains,
    dst: &Cochains,
) -> Result<Vec<Vec<i128>>> {
    let mut rows = vec![vec![0i128; dst.dim]; src.dim];
    for (ji, target) in simplices[p + 1].iter().enumerate() {
        let w = spaces[p + 1][ji].open().clone();
        let tg = &dst.groups[ji];
        for pos in 0..target.len() {
            let face: Vec<usize> = target
                .iter()
                .enumerate()
                .filter(|&(q, _)| q != pos)
                .map(|(_, &i)| i)
                .collect();
            let ii = simplices[p].iter().position(|s| *s == face).unwrap();
            let from = spaces[p][ii].open().clone();
            let res = sheaf.restriction_map(&from, &w)?;
            let sg = &src.groups[ii];
            // Restriction must respect the sum.
            let sp = &spaces[p][ii];
            let tp = &spaces[p + 1][ji];
            for x in 0..sp.len() {
                for y in 0..sp.len() {
                    if res[sp.add(x, y).unwrap()] != tp.add(res[x], res[y]).unwrap() {
                        return Err(Error::NotHomomorphism(format!(
                            "restriction {:?} -> {:?} is not additive",
                            from.to_vec(),
                            w.to_vec()
                        )));
                    }
                }
            }
            let sign: i128 = if pos % 2 == 0 { 1 } else { -1 };
            for (r, &g) in sg.generators().iter().enumerate() {
                let image = tg.coords(res[g]);
                let row = &mut rows[src.offsets[ii] + r];
                for (c, &v) in image.iter().enumerate() {
                    row[dst.offsets[ji] + c] += sign * v;
                }
            }
        }
    }
    Ok(rows)
}

impl CechComplex {
    pub fn cover(&self) -> &[usize] {
        &self.cover
    }

    pub fn opens(&self) -> &[ElementSet] {
        &self.opens
    }

    /// Number of cochain degrees (the cover size).
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Why C^p is not an abelian group, if it is not.
    pub fn cochain_failure(&self, p: usize) -> Option<&str> {
        self.cochains
            .get(p)
            .and_then(|c| c.as_ref().err())
            .map(String::as_str)
    }

    /// d^{p+1} ∘ d^p = 0 wherever both maps exist.
    pub fn d_squared_vanishes(&self) -> Result<bool> {
        for p in 0..self.len().saturating_sub(2) {
            let (Some(d0), Some(d1), Ok(c2)) = (
                &self.coboundary[p],
                &self.coboundary[p + 1],
                &self.cochains[p + 2],
            ) else {
                continue;
            };
            for row in d0 {
                let mut v = vec![0i128; c2.dim];
                for (j, &x) in row.iter().enumerate() {
                    if x != 0 {
                        for (c, &y) in d1[j].iter().enumerate() {
                            v[c] += x * y;
                        }
                    }
                }
                if c2.normalize(&v)?.iter().any(|&e| e != 0) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Invariant factors of H^p, or why it is undefined.
    pub fn cohomology(&self, p: usize) -> std::result::Result<Vec<u64>, String> {
        if p >= self.len() {
            return Ok(Vec::new());
        }
        let here = self.cochains[p]
            .as_ref()
            .map_err(|e| format!("C^{p} is not a group: {e}"))?;
        if here.dim == 0 {
            return Ok(Vec::new());
        }
        let outgoing = if p + 1 < self.len() {
            let next = self.cochains[p + 1]
                .as_ref()
                .map_err(|e| format!("C^{} is not a group: {e}", p + 1))?;
            Some((
                self.coboundary[p].as_deref().unwrap(),
                next.relations.as_slice(),
                next.dim,
            ))
        } else {
            None
        };
        let incoming: &[Vec<i128>] = if p > 0 {
            self.cochains[p - 1]
                .as_ref()
                .map_err(|e| format!("C^{} is not a group: {e}", p - 1))?;
            self.coboundary[p - 1].as_deref().unwrap()
        } else {
            &[]
        };
        subquotient(here.dim, &here.relations, outgoing, incoming).map_err(|e| e.to_string())
    }

    pub fn report(&self) -> Result<CohomologyReport> {
        let h = (0..self.len())
            .map(|p| match self.cohomology(p) {
                Ok(f) => DegreeCohomology {
                    degree: p,
                    order: Some(
                        f.iter()
                            .map(|&d| if d == 0 { 0 } else { d })
                            .product::<u64>(),
                    ),
                    invariant_factors: Some(f),
                    undefined: None,
                },
                Err(why) => DegreeCohomology {
                    degree: p,
                    invariant_factors: None,
                    order: None,
                    undefined: Some(why),
                },
            })
            .collect();
        let cochains = self
            .simplices
            .iter()
            .enumerate()
            .map(|(p, deg)| CochainDegree {
                degree: p,
                simplices: deg
                    .iter()
                    .zip(&self.spaces[p])
                    .map(|(s, sp)| SimplexEntry {
                        indices: s.clone(),
                        open: sp.open().to_vec(),
                        sections: sp.len(),
                    })
                    .collect(),
                group_failure: self.cochain_failure(p).map(str::to_string),
            })
            .collect();
        Ok(CohomologyReport {
            cover: self.cover.clone(),
            h,
            h0_equalizer: self.compatible_families,
            global_sections: self.global_sections,
            d_squared_zero: self.d_squared_vanishes()?,
            cochains,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeCohomology {
    pub degree: usize,
    /// Entries > 1 are cyclic orders; 0 marks a free summand.
    pub invariant_factors: Option<Vec<u64>>,
    pub order: Option<u64>,
    pub undefined: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplexEntry {
    pub indices: Vec<usize>,
    pub open: Vec<usize>,
    pub sections: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CochainDegree {
    pub degree: usize,
    pub simplices: Vec<SimplexEntry>,
    pub group_failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub cover: Vec<usize>,
    pub h: Vec<DegreeCohomology>,
    /// Compatible families on the cover, i.e. H⁰ as a set.
    pub h0_equalizer: usize,
    pub global_sections: usize,
    pub d_squared_zero: bool,
    pub cochains: Vec<CochainDegree>,
}

impl CohomologyReport {
    /// Hⁱ is defined and zero for every i ≥ 1.
    pub fn higher_vanish(&self) -> bool {
        self.h
            .iter()
            .skip(1)
            .all(|d| d.invariant_factors.as_ref().is_some_and(Vec::is_empty))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{build_modular_module, GammaModule};
    use crate::semiring::{Caps, TernarySemiring};
    use crate::spectrum::SpectrumSpace;

    #[test]
    fn regular_module_on_z12_cover_two_three() {
        let t = TernarySemiring::modular(12, &[1, 5]).unwrap();
        let spec = SpectrumSpace::new(&t, &Caps::default()).unwrap();
        let sheaf =
            FractionSheaf::associated(&spec, &GammaModule::regular(&t), &Caps::default()).unwrap();
        let c = cech_complex(&sheaf, &[2, 3]).unwrap();
        let r = c.report().unwrap();
        assert!(r.higher_vanish());
        assert_eq!(r.h0_equalizer, r.global_sections);
        assert!(r.d_squared_zero);
    }

    #[test]
    fn additive_sheaf_has_acyclic_overlapping_cover() {
        let t = TernarySemiring::modular(6, &[1]).unwrap();
        let spec = SpectrumSpace::new(&t, &Caps::default()).unwrap();
        let sheaf = FractionSheaf::structure(&spec, &Caps::default()).unwrap();
        let c = cech_complex(&sheaf, &[1, 2, 3]).unwrap();
        let r = c.report().unwrap();
        assert!(r.d_squared_zero);
        assert_eq!(r.h[0].order, Some(6));
        assert!(r.higher_vanish(), "{:?}", r.h);
    }

    #[test]
    fn module_sheaf_on_z30() {
        let caps = Caps {
            enumeration: 30,
            ..Caps::default()
        };
        let t = TernarySemiring::modular(30, &[1]).unwrap();
        let spec = SpectrumSpace::new(&t, &caps).unwrap();
        let m = build_modular_module(&t, 10).unwrap();
        let sheaf = FractionSheaf::associated(&spec, &m, &caps).unwrap();
        let r = cech_complex(&sheaf, &[2, 3, 5, 1])
            .unwrap()
            .report()
            .unwrap();
        assert_eq!(r.h[0].order, Some(10));
        assert!(r.higher_vanish(), "{:?}", r.h);
    }

    #[test]
    fn non_covering_is_rejected() {
        let t = TernarySemiring::modular(12, &[1, 5]).unwrap();
        let spec = SpectrumSpace::new(&t, &Caps::default()).unwrap();
        let sheaf = FractionSheaf::structure(&spec, &Caps::default()).unwrap();
        assert!(matches!(
            cech_complex(&sheaf, &[2]),
            Err(Error::NonCovering { .. })
        ));
    }
}
