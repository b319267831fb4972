//! S⁻¹M for a Γ-module M, using the same cubic-scaling classes as S⁻¹T.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fractions::FractionClasses;
use crate::localization::{generated_mult_system, MultiplicativeSystem};
use crate::module::GammaModule;
use crate::semiring::Caps;

/// Classes of M × S with the T-action {a, x/s, b}_γ = {a x b}_γ / s.
#[derive(Debug)]
pub struct LocalizedModule {
    source: GammaModule,
    system: MultiplicativeSystem,
    fractions: FractionClasses,
    addition: std::result::Result<Vec<u32>, String>,
}

pub fn localize_module(
    m: &GammaModule,
    system: &MultiplicativeSystem,
    caps: &Caps,
) -> Result<LocalizedModule> {
    let fractions = FractionClasses::build(m, system, caps)?;
    let t = m.parent();
    let (n, size) = (t.size(), m.size());
    let numer: BTreeSet<Vec<usize>> = (0..t.gamma_count())
        .flat_map(|g| (0..n).flat_map(move |a| (0..n).map(move |b| (a, b, g))))
        .map(|(a, b, g)| (0..size).map(|x| m.act(a, x, b, g)).collect())
        .collect();
    let numer: Vec<Vec<usize>> = numer.into_iter().collect();
    let identity = vec![fractions.system().to_vec()];
    if let Some(detail) = fractions.profile_violation(&numer, &identity) {
        return Err(Error::RepresentativeDependent {
            operation: "module action",
            detail,
        });
    }
    let addition = fractions.addition(m);
    Ok(LocalizedModule {
        source: m.clone(),
        system: system.clone(),
        fractions,
        addition,
    })
}

/// M_a, the module of sections over D(a) computed algebraically.
pub fn associated_sheaf_sections(
    m: &GammaModule,
    a: usize,
    caps: &Caps,
) -> Result<LocalizedModule> {
    localize_module(m, &generated_mult_system(m.parent(), &[a])?, caps)
}

impl LocalizedModule {
    pub fn source(&self) -> &GammaModule {
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

    pub fn addition_supported(&self) -> bool {
        self.addition.is_ok()
    }

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

    pub fn act(&self, a: usize, i: usize, b: usize, g: usize) -> usize {
        let (x, s) = self.fractions.representative(i);
        self.class_of(self.source.act(a, x, b, g), s)
            .expect("s is a denominator")
    }

    /// x ↦ x/s₀ for the least s₀ in the system.
    pub fn canonical_map(&self) -> Vec<usize> {
        let s0 = self.fractions.system()[0];
        (0..self.source.size())
            .map(|x| self.class_of(x, s0).expect("s0 is a denominator"))
            .collect()
    }

    /// The localization as a T-module, when the sum is well defined.
    pub fn to_module(&self) -> Result<GammaModule> {
        let tab = self.addition.as_ref().map_err(|e| {
            Error::InvalidStructure(format!("localized module has no addition: {e}"))
        })?;
        let c = self.num_classes();
        GammaModule::from_fn(
            self.source.parent(),
            c,
            |i, j| tab[i * c + j] as usize,
            |a, i, b, g| self.act(a, i, b, g),
        )
    }

    pub fn report(&self) -> LocalizedModuleReport {
        LocalizedModuleReport {
            system: self.system.to_vec(),
            num_classes: self.num_classes(),
            classes: self
                .fractions
                .classes()
                .iter()
                .map(|m| m.iter().map(|&(x, s)| [x, s]).collect())
                .collect(),
            raw_relation_transitive: self.fractions.raw_relation_transitive(),
            closure_added_pairs: self.fractions.closure_added(),
            addition_supported: self.addition_supported(),
            addition_failure: self.addition_failure().map(str::to_string),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalizedModuleReport {
    pub system: Vec<usize>,
    pub num_classes: usize,
    pub classes: Vec<Vec<[usize; 2]>>,
    pub raw_relation_transitive: bool,
    pub closure_added_pairs: usize,
    pub addition_supported: bool,
    pub addition_failure: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localization::localize;
    use crate::module::build_modular_module;
    use crate::semiring::TernarySemiring;

    #[test]
    fn regular_module_matches_semiring_localization() {
        let t = TernarySemiring::modular(12, &[1, 5]).unwrap();
        let m = GammaModule::regular(&t);
        for seed in [1, 2, 3, 5] {
            let s = generated_mult_system(&t, &[seed]).unwrap();
            let lm = localize_module(&m, &s, &Caps::default()).unwrap();
            let lt = localize(&t, &s, &Caps::default()).unwrap();
            assert_eq!(lm.num_classes(), lt.num_classes());
            assert_eq!(lm.addition_supported(), lt.addition_supported());
        }
    }

    #[test]
    fn quotient_module_at_two() {
        let t = TernarySemiring::modular(12, &[1, 5]).unwrap();
        let m = build_modular_module(&t, 4).unwrap();
        let lm = associated_sheaf_sections(&m, 3, &Caps::default()).unwrap();
        assert!(lm.addition_supported());
        let module = lm.to_module().unwrap();
        assert!(module.verify().passed());
        assert_eq!(module.size(), 4);
        // 3 is invertible mod 4, so nothing collapses.
        let phi = lm.canonical_map();
        let distinct: BTreeSet<usize> = phi.iter().copied().collect();
        assert_eq!(distinct.len(), 4);
    }

    #[test]
    fn localizing_away_from_the_support_kills_it() {
        let t = TernarySemiring::modular(12, &[1, 5]).unwrap();
        let m = build_modular_module(&t, 4).unwrap();
        let lm = associated_sheaf_sections(&m, 2, &Caps::default()).unwrap();
        assert_eq!(lm.num_classes(), 1);
    }
}
