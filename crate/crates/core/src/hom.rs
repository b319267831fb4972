use crate::axioms::{scan_rows, Axiom, AxiomReport, Violation};
use crate::error::{Error, Result};
use crate::semiring::TernarySemiring;

/// A map of carriers together with a map of parameter sets.
#[derive(Clone, Debug)]
pub struct TGHomomorphism<'a> {
    source: &'a TernarySemiring,
    target: &'a TernarySemiring,
    gamma_map: Vec<usize>,
    element_map: Vec<usize>,
}

impl<'a> TGHomomorphism<'a> {
    pub fn new(
        source: &'a TernarySemiring,
        target: &'a TernarySemiring,
        gamma_map: Vec<usize>,
        element_map: Vec<usize>,
    ) -> Result<Self> {
        if gamma_map.len() != source.gamma_count() {
            return Err(Error::DimensionMismatch {
                what: "gamma_map".into(),
                expected: source.gamma_count(),
                found: gamma_map.len(),
            });
        }
        if element_map.len() != source.size() {
            return Err(Error::DimensionMismatch {
                what: "element_map".into(),
                expected: source.size(),
                found: element_map.len(),
            });
        }
        if let Some(&g) = gamma_map.iter().find(|&&g| g >= target.gamma_count()) {
            return Err(Error::OutOfRange {
                what: "gamma_map entry".into(),
                value: g,
                bound: target.gamma_count(),
            });
        }
        if let Some(&x) = element_map.iter().find(|&&x| x >= target.size()) {
            return Err(Error::OutOfRange {
                what: "element_map entry".into(),
                value: x,
                bound: target.size(),
            });
        }
        Ok(TGHomomorphism {
            source,
            target,
            gamma_map,
            element_map,
        })
    }

    pub fn identity(t: &'a TernarySemiring) -> Self {
        TGHomomorphism {
            source: t,
            target: t,
            gamma_map: (0..t.gamma_count()).collect(),
            element_map: (0..t.size()).collect(),
        }
    }

    /// a ↦ k·a mod m between modular semirings, with γ matched by residue
    /// (source γ value reduced mod m must name a target γ).
    pub fn modular_scaling(
        source: &'a TernarySemiring,
        target: &'a TernarySemiring,
        k: usize,
    ) -> Result<Self> {
        let (sp, tp) = match (source.modular_preset(), target.modular_preset()) {
            (Some(s), Some(t)) => (s, t),
            _ => return Err(Error::NotModular),
        };
        let m = tp.n;
        let element_map = (0..sp.n).map(|a| k * a % m).collect();
        let mut gamma_map = Vec::with_capacity(sp.gamma.len());
        for &g in &sp.gamma {
            let r = g % m;
            match tp.gamma.iter().position(|&h| h == r) {
                Some(i) => gamma_map.push(i),
                None => {
                    return Err(Error::InvalidInput(format!(
                        "gamma {g} reduces to {r}, which is not a target gamma"
                    )))
                }
            }
        }
        Self::new(source, target, gamma_map, element_map)
    }

    pub fn source(&self) -> &'a TernarySemiring {
        self.source
    }

    pub fn target(&self) -> &'a TernarySemiring {
        self.target
    }

    pub fn gamma_map(&self) -> &[usize] {
        &self.gamma_map
    }

    pub fn element_map(&self) -> &[usize] {
        &self.element_map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.element_map[a]
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &TGHomomorphism<'a>) -> Result<TGHomomorphism<'a>> {
        if !std::ptr::eq(self.target, g.source) && self.target != g.source {
            return Err(Error::ParentMismatch);
        }
        Ok(TGHomomorphism {
            source: self.source,
            target: g.target,
            gamma_map: self.gamma_map.iter().map(|&x| g.gamma_map[x]).collect(),
            element_map: self.element_map.iter().map(|&x| g.element_map[x]).collect(),
        })
    }
}

/// Exhaustive check of zero preservation, additivity and ternary compatibility.
pub fn verify_homomorphism(f: &TGHomomorphism<'_>) -> AxiomReport {
    verify_homomorphism_limited(f, 100)
}

pub fn verify_homomorphism_limited(f: &TGHomomorphism<'_>, limit: usize) -> AxiomReport {
    let limit = limit.max(1);
    let s = f.source;
    let t = f.target;
    let n = s.size();
    let mut found = Vec::new();
    if f.apply(0) != 0 {
        found.push(Violation::new(Axiom::ZeroPreserved, vec![], vec![]));
    }
    found.extend(scan_rows(n, limit, |a, out| {
        for b in 0..n {
            if out.len() >= limit {
                return;
            }
            if f.apply(s.add(a, b)) != t.add(f.apply(a), f.apply(b)) {
                out.push(Violation::new(Axiom::Additive, vec![a, b], vec![]));
            }
        }
    }));
    if found.len() < limit {
        found.extend(scan_rows(n, limit, |a, out| {
            for b in 0..n {
                for c in 0..n {
                    for g in 0..s.gamma_count() {
                        if out.len() >= limit {
                            return;
                        }
                        let lhs = f.apply(s.tern(a, b, c, g));
                        let rhs = t.tern(f.apply(a), f.apply(b), f.apply(c), f.gamma_map[g]);
                        if lhs != rhs {
                            out.push(Violation::new(
                                Axiom::TernaryCompatible,
                                vec![a, b, c],
                                vec![g],
                            ));
                        }
                    }
                }
            }
        }));
    }
    AxiomReport::from_violations(found, limit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_verifies() {
        let t = TernarySemiring::modular(12, &[1, 5]).unwrap();
        assert!(verify_homomorphism(&TGHomomorphism::identity(&t)).passed());
    }

    #[test]
    fn reduction_mod_six_verifies() {
        let s = TernarySemiring::modular(12, &[1]).unwrap();
        let t = TernarySemiring::modular(6, &[1]).unwrap();
        let f = TGHomomorphism::modular_scaling(&s, &t, 1).unwrap();
        assert_eq!(f.apply(7), 1);
        assert!(verify_homomorphism(&f).passed());
    }

    #[test]
    fn shift_by_one_fails_on_zero() {
        let t = TernarySemiring::modular(12, &[1, 5]).unwrap();
        let f = TGHomomorphism::new(&t, &t, vec![0, 1], (0..12).map(|a| (a + 1) % 12).collect())
            .unwrap();
        let report = verify_homomorphism(&f);
        assert!(!report.passed());
        assert_eq!(report.violations[0].axiom, Axiom::ZeroPreserved);
    }

    #[test]
    fn composition_of_reductions() {
        let a = TernarySemiring::modular(12, &[1, 5]).unwrap();
        let b = TernarySemiring::modular(6, &[1, 5]).unwrap();
        let c = TernarySemiring::modular(2, &[1]).unwrap();
        let f = TGHomomorphism::modular_scaling(&a, &b, 1).unwrap();
        let g = TGHomomorphism::modular_scaling(&b, &c, 1).unwrap();
        let gf = f.then(&g).unwrap();
        assert!(verify_homomorphism(&gf).passed());
        assert_eq!(gf.gamma_map(), &[0, 0]);
    }

    #[test]
    fn rejects_bad_maps() {
        let t = TernarySemiring::modular(4, &[1]).unwrap();
        assert!(TGHomomorphism::new(&t, &t, vec![1], vec![0, 1, 2, 3]).is_err());
        assert!(TGHomomorphism::new(&t, &t, vec![0], vec![0, 1, 2]).is_err());
        assert!(TGHomomorphism::new(&t, &t, vec![0], vec![0, 1, 2, 4]).is_err());
    }
}
