//! Finite commutative ternary Γ-semirings stored as fully materialized tables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Construction limits. Every downstream algorithm is exhaustive, so the
/// defaults keep worst cases within desk-scale runtimes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest accepted carrier.
    pub carrier: usize,
    /// Largest accepted |Γ|.
    pub gamma: usize,
    /// Largest carrier for which ideals are enumerated.
    pub enumeration: usize,
    /// Largest number of ideals an enumeration may produce.
    pub ideals: usize,
    /// Largest number of classes in a single stalk.
    pub stalk_classes: usize,
    /// Largest number of candidate families inspected when enumerating sections.
    pub section_candidates: usize,
    /// How many violations a verification report keeps.
    pub violations: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            carrier: 32,
            gamma: 8,
            enumeration: 16,
            ideals: 4096,
            stalk_classes: 4096,
            section_candidates: 1 << 20,
            violations: 100,
        }
    }
}

impl Caps {
    pub fn unlimited() -> Self {
        Caps {
            carrier: usize::MAX,
            gamma: usize::MAX,
            enumeration: usize::MAX,
            ideals: usize::MAX,
            stalk_classes: usize::MAX,
            section_candidates: usize::MAX,
            violations: usize::MAX,
        }
    }
}

/// ℤ/nℤ with {abc}_γ = γ·a·b·c mod n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularPreset {
    pub n: usize,
    pub gamma: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernarySemiring {
    n: usize,
    element_names: Option<Vec<String>>,
    gamma_names: Vec<String>,
    add: Vec<u32>,
    tern: Vec<u32>,
    modular: Option<ModularPreset>,
}

impl TernarySemiring {
    /// ℤ/nℤ with the usual addition and one ternary operation γ·a·b·c per residue γ.
    pub fn modular(n: usize, gamma: &[usize]) -> Result<Self> {
        Self::modular_with_caps(n, gamma, &Caps::default())
    }

    pub fn modular_with_caps(n: usize, gamma: &[usize], caps: &Caps) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if gamma.is_empty() {
            return Err(Error::EmptyGamma);
        }
        check_caps(n, gamma.len(), caps)?;
        for &g in gamma {
            if g >= n {
                return Err(Error::OutOfRange {
                    what: "gamma residue".into(),
                    value: g,
                    bound: n,
                });
            }
        }
        let gamma_names: Vec<String> = gamma.iter().map(|g| g.to_string()).collect();
        check_unique(&gamma_names)?;

        let mut add = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = ((a + b) % n) as u32;
            }
        }
        let mut tern = vec![0u32; gamma.len() * n * n * n];
        for (gi, &g) in gamma.iter().enumerate() {
            for a in 0..n {
                for b in 0..n {
                    let gab = g * a % n * b % n;
                    for c in 0..n {
                        tern[((gi * n + a) * n + b) * n + c] = (gab * c % n) as u32;
                    }
                }
            }
        }
        Ok(TernarySemiring {
            n,
            element_names: None,
            gamma_names,
            add,
            tern,
            modular: Some(ModularPreset {
                n,
                gamma: gamma.to_vec(),
            }),
        })
    }

    /// Stores the given tables verbatim. Axioms are not checked here so that
    /// counterexample structures stay representable; see [`crate::verify_axioms`].
    pub fn from_tables(
        add_table: &[Vec<usize>],
        ternary_tables: &[Vec<Vec<Vec<usize>>>],
        gamma_names: Vec<String>,
        element_names: Option<Vec<String>>,
        caps: &Caps,
    ) -> Result<Self> {
        let n = add_table.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if ternary_tables.is_empty() {
            return Err(Error::EmptyGamma);
        }
        if gamma_names.len() != ternary_tables.len() {
            return Err(Error::DimensionMismatch {
                what: "gamma_names".into(),
                expected: ternary_tables.len(),
                found: gamma_names.len(),
            });
        }
        check_unique(&gamma_names)?;
        check_caps(n, ternary_tables.len(), caps)?;
        if let Some(names) = &element_names {
            if names.len() != n {
                return Err(Error::DimensionMismatch {
                    what: "element_names".into(),
                    expected: n,
                    found: names.len(),
                });
            }
        }

        let entry = |what: String, v: usize| -> Result<u32> {
            if v >= n {
                Err(Error::OutOfRange {
                    what,
                    value: v,
                    bound: n,
                })
            } else {
                Ok(v as u32)
            }
        };
        let dim = |what: String, found: usize| -> Result<()> {
            if found != n {
                Err(Error::DimensionMismatch {
                    what,
                    expected: n,
                    found,
                })
            } else {
                Ok(())
            }
        };

        let mut add = Vec::with_capacity(n * n);
        for (a, row) in add_table.iter().enumerate() {
            dim(format!("add[{a}]"), row.len())?;
            for (b, &v) in row.iter().enumerate() {
                add.push(entry(format!("add[{a}][{b}]"), v)?);
            }
        }
        let mut tern = Vec::with_capacity(ternary_tables.len() * n * n * n);
        for (g, table) in ternary_tables.iter().enumerate() {
            dim(format!("ternary[{g}]"), table.len())?;
            for (a, plane) in table.iter().enumerate() {
                dim(format!("ternary[{g}][{a}]"), plane.len())?;
                for (b, row) in plane.iter().enumerate() {
                    dim(format!("ternary[{g}][{a}][{b}]"), row.len())?;
                    for (c, &v) in row.iter().enumerate() {
                        tern.push(entry(format!("ternary[{g}][{a}][{b}][{c}]"), v)?);
                    }
                }
            }
        }
        Ok(TernarySemiring {
            n,
            element_names,
            gamma_names,
            add,
            tern,
            modular: None,
        })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn gamma_count(&self) -> usize {
        self.gamma_names.len()
    }

    pub fn gamma_names(&self) -> &[String] {
        &self.gamma_names
    }

    pub fn gamma_index(&self, name: &str) -> Option<usize> {
        self.gamma_names.iter().position(|g| g == name)
    }

    pub fn element_name(&self, a: usize) -> String {
        match &self.element_names {
            Some(names) => names[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn element_names(&self) -> Option<&[String]> {
        self.element_names.as_deref()
    }

    pub fn modular_preset(&self) -> Option<&ModularPreset> {
        self.modular.as_ref()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    /// Unchecked table lookup of {abc}_g; panics on out-of-range indices.
    #[inline]
    pub fn tern(&self, a: usize, b: usize, c: usize, g: usize) -> usize {
        let n = self.n;
        self.tern[((g * n + a) * n + b) * n + c] as usize
    }

    /// Checked {abc}_γ.
    pub fn ternary_product(&self, a: usize, b: usize, c: usize, gamma: usize) -> Result<usize> {
        for (what, v) in [("a", a), ("b", b), ("c", c)] {
            self.check_element(what, v)?;
        }
        if gamma >= self.gamma_count() {
            return Err(Error::OutOfRange {
                what: "gamma index".into(),
                value: gamma,
                bound: self.gamma_count(),
            });
        }
        Ok(self.tern(a, b, c, gamma))
    }

    pub fn check_element(&self, what: &str, a: usize) -> Result<()> {
        if a >= self.n {
            Err(Error::OutOfRange {
                what: what.to_string(),
                value: a,
                bound: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Additive inverse, if one exists.
    pub fn neg(&self, a: usize) -> Option<usize> {
        (0..self.n).find(|&b| self.add(a, b) == 0)
    }

    pub fn is_group_complete(&self) -> bool {
        (0..self.n).all(|a| self.neg(a).is_some())
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.add(a, b)).collect())
            .collect()
    }

    pub fn ternary_tables(&self) -> Vec<Vec<Vec<Vec<usize>>>> {
        let n = self.n;
        (0..self.gamma_count())
            .map(|g| {
                (0..n)
                    .map(|a| {
                        (0..n)
                            .map(|b| (0..n).map(|c| self.tern(a, b, c, g)).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// Copy with a single ternary entry overwritten. The modular tag is dropped.
    pub fn with_ternary_entry(
        &self,
        a: usize,
        b: usize,
        c: usize,
        g: usize,
        value: usize,
    ) -> Result<Self> {
        self.ternary_product(a, b, c, g)?;
        self.check_element("value", value)?;
        let mut out = self.clone();
        let n = self.n;
        out.tern[((g * n + a) * n + b) * n + c] = value as u32;
        out.modular = None;
        Ok(out)
    }

    /// Does x ↦ {s, s̄, x}_γ fix every element?
    pub fn is_gamma_inverse_pair(&self, s: usize, sbar: usize, gamma: usize) -> bool {
        (0..self.n).all(|x| self.tern(s, sbar, x, gamma) == x)
    }

    /// Relaxed invertibility: least s̄, then least γ, with {s, s̄, x}_γ = x for all x.
    pub fn find_gamma_inverse(&self, s: usize) -> Option<(usize, usize)> {
        if s >= self.n {
            return None;
        }
        (0..self.n)
            .flat_map(|sbar| (0..self.gamma_count()).map(move |g| (sbar, g)))
            .find(|&(sbar, g)| self.is_gamma_inverse_pair(s, sbar, g))
    }

    /// Literal invertibility: a single s̄ with {s, s̄, x}_γ = x for all x and all γ.
    pub fn is_strictly_gamma_invertible(&self, s: usize) -> Option<usize> {
        if s >= self.n {
            return None;
        }
        (0..self.n)
            .find(|&sbar| (0..self.gamma_count()).all(|g| self.is_gamma_inverse_pair(s, sbar, g)))
    }

    /// The slice a, b ↦ {a b c}_γ as rows.
    pub fn slice(&self, gamma: usize, c: usize) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.tern(a, b, c, gamma)).collect())
            .collect()
    }
}

fn check_caps(n: usize, gammas: usize, caps: &Caps) -> Result<()> {
    if n > caps.carrier {
        return Err(Error::CapExceeded {
            what: "carrier size",
            value: n,
            cap: caps.carrier,
        });
    }
    if gammas > caps.gamma {
        return Err(Error::CapExceeded {
            what: "gamma count",
            value: gammas,
            cap: caps.gamma,
        });
    }
    Ok(())
}

fn check_unique(names: &[String]) -> Result<()> {
    for (i, a) in names.iter().enumerate() {
        if names[..i].contains(a) {
            return Err(Error::DuplicateGamma(a.clone()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z12() -> TernarySemiring {
        TernarySemiring::modular(12, &[1, 5]).unwrap()
    }

    #[test]
    fn modular_entries_from_the_interaction_slice() {
        let t = z12();
        assert_eq!(t.tern(2, 2, 1, 0), 4);
        assert_eq!(t.tern(3, 4, 1, 0), 0);
        assert_eq!(t.ternary_product(2, 3, 1, 0).unwrap(), 6);
        assert_eq!(t.ternary_product(2, 2, 3, 0).unwrap(), 0);
        assert_eq!(t.tern(1, 1, 1, 1), 5);
    }

    #[test]
    fn zero_absorbs_in_the_middle() {
        for n in 1..=9 {
            let g: Vec<usize> = (0..n).collect();
            let t = TernarySemiring::modular(n, &g[..g.len().min(8)]).unwrap();
            for a in 0..n {
                for b in 0..n {
                    for gi in 0..t.gamma_count() {
                        assert_eq!(t.tern(a, 0, b, gi), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn modular_rejects_bad_input() {
        assert_eq!(TernarySemiring::modular(0, &[1]), Err(Error::EmptyCarrier));
        assert_eq!(TernarySemiring::modular(4, &[]), Err(Error::EmptyGamma));
        assert!(matches!(
            TernarySemiring::modular(4, &[4]),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            TernarySemiring::modular(4, &[1, 1]),
            Err(Error::DuplicateGamma(_))
        ));
        assert!(matches!(
            TernarySemiring::modular(33, &[1]),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn tables_round_trip() {
        let t = z12();
        let back = TernarySemiring::from_tables(
            &t.add_table(),
            &t.ternary_tables(),
            t.gamma_names().to_vec(),
            None,
            &Caps::default(),
        )
        .unwrap();
        assert_eq!(back.add_table(), t.add_table());
        assert_eq!(back.ternary_tables(), t.ternary_tables());
    }

    #[test]
    fn explicit_z2_matches_preset() {
        let add = vec![vec![0, 1], vec![1, 0]];
        let tern = vec![vec![
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![0, 0], vec![0, 1]],
        ]];
        let t = TernarySemiring::from_tables(&add, &tern, vec!["1".into()], None, &Caps::default())
            .unwrap();
        let p = TernarySemiring::modular(2, &[1]).unwrap();
        assert_eq!(t.add_table(), p.add_table());
        assert_eq!(t.ternary_tables(), p.ternary_tables());
    }

    #[test]
    fn from_tables_rejects_malformed() {
        let add = vec![vec![0, 1], vec![1]];
        let tern = vec![vec![
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![0, 0], vec![0, 1]],
        ]];
        assert!(matches!(
            TernarySemiring::from_tables(&add, &tern, vec!["1".into()], None, &Caps::default()),
            Err(Error::DimensionMismatch { .. })
        ));
        let add = vec![vec![0, 1], vec![1, 2]];
        assert!(matches!(
            TernarySemiring::from_tables(&add, &tern, vec!["1".into()], None, &Caps::default()),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn gamma_inverse_search_order() {
        let t = z12();
        // ascending s̄ first: s̄ = 1 with γ = 5 already works since 5·1·5 ≡ 1
        assert_eq!(t.find_gamma_inverse(5), Some((1, 1)));
        assert!(t.is_gamma_inverse_pair(5, 5, 0));
        assert_eq!(t.find_gamma_inverse(2), None);
        assert_eq!(t.is_strictly_gamma_invertible(5), None);
        let z2 = TernarySemiring::modular(2, &[1]).unwrap();
        assert_eq!(z2.find_gamma_inverse(1), Some((1, 0)));
        assert_eq!(z2.is_strictly_gamma_invertible(1), Some(1));
    }
}
