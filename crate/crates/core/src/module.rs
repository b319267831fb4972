//! Finite Γ-modules: additive monoids with a two-sided triadic T-action.

use serde::Serialize;

use crate::axioms::{scan_rows, Axiom, AxiomReport, Violation};
use crate::error::{Error, Result};
use crate::semiring::TernarySemiring;
use crate::set::ElementSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaModule {
    parent: TernarySemiring,
    m: usize,
    add: Vec<u32>,
    /// Indexed `((g * n + a) * m + x) * n + b` for {a x b}_g.
    action: Vec<u32>,
    group_complete: bool,
}

impl GammaModule {
    /// Builds a module from an addition and an action function. Axioms are
    /// not checked here; see [`GammaModule::verify`].
    pub fn from_fn(
        parent: &TernarySemiring,
        m: usize,
        add: impl Fn(usize, usize) -> usize,
        act: impl Fn(usize, usize, usize, usize) -> usize,
    ) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptyCarrier);
        }
        let n = parent.size();
        let gc = parent.gamma_count();
        let mut add_t = Vec::with_capacity(m * m);
        for x in 0..m {
            for y in 0..m {
                add_t.push(checked(add(x, y), m, "module addition")?);
            }
        }
        let mut action = Vec::with_capacity(gc * n * m * n);
        for g in 0..gc {
            for a in 0..n {
                for x in 0..m {
                    for b in 0..n {
                        action.push(checked(act(a, x, b, g), m, "module action")?);
                    }
                }
            }
        }
        let mut out = GammaModule {
            parent: parent.clone(),
            m,
            add: add_t,
            action,
            group_complete: false,
        };
        out.group_complete = (0..m).all(|x| out.neg(x).is_some());
        Ok(out)
    }

    /// `add[x][y]` and `action[g][a][x][b]`.
    pub fn from_tables(
        parent: &TernarySemiring,
        add: &[Vec<usize>],
        action: &[Vec<Vec<Vec<usize>>>],
    ) -> Result<Self> {
        let m = add.len();
        let n = parent.size();
        for row in add {
            expect_len("module addition row", m, row.len())?;
        }
        expect_len("module action gammas", parent.gamma_count(), action.len())?;
        for per_g in action {
            expect_len("module action rows", n, per_g.len())?;
            for per_a in per_g {
                expect_len("module action columns", m, per_a.len())?;
                for per_x in per_a {
                    expect_len("module action depth", n, per_x.len())?;
                }
            }
        }
        Self::from_fn(parent, m, |x, y| add[x][y], |a, x, b, g| action[g][a][x][b])
    }

    /// The semiring acting on itself.
    pub fn regular(t: &TernarySemiring) -> Self {
        Self::from_fn(
            t,
            t.size(),
            |x, y| t.add(x, y),
            |a, x, b, g| t.tern(a, x, b, g),
        )
        .expect("semiring tables are in range")
    }

    pub fn zero(t: &TernarySemiring) -> Self {
        Self::from_fn(t, 1, |_, _| 0, |_, _, _, _| 0).expect("one-point module")
    }

    pub fn parent(&self) -> &TernarySemiring {
        &self.parent
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn is_group_complete(&self) -> bool {
        self.group_complete
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.m + y] as usize
    }

    /// {a x b}_g.
    #[inline]
    pub fn act(&self, a: usize, x: usize, b: usize, g: usize) -> usize {
        let n = self.parent.size();
        self.action[((g * n + a) * self.m + x) * n + b] as usize
    }

    pub fn neg(&self, x: usize) -> Option<usize> {
        (0..self.m).find(|&y| self.add(x, y) == 0)
    }

    /// Additive order of `x`.
    pub fn order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut acc = x;
        while acc != 0 {
            acc = self.add(acc, x);
            k += 1;
            if k > self.m {
                return 0;
            }
        }
        k
    }

    /// Carrier pairs (x, y) encoded as `x * other.size() + y`.
    pub fn direct_sum(&self, other: &GammaModule) -> Result<GammaModule> {
        if self.parent != other.parent {
            return Err(Error::ParentMismatch);
        }
        let k = other.m;
        Self::from_fn(
            &self.parent,
            self.m * k,
            |p, q| self.add(p / k, q / k) * k + other.add(p % k, q % k),
            |a, p, b, g| self.act(a, p / k, b, g) * k + other.act(a, p % k, b, g),
        )
    }

    /// The submodule on `members`, relabelled in ascending order, together
    /// with its embedding into `self`.
    pub fn submodule(&self, members: &ElementSet) -> Result<(GammaModule, Vec<usize>)> {
        let embed = members.to_vec();
        if embed.first() != Some(&0) {
            return Err(Error::InvalidStructure("submodule must contain 0".into()));
        }
        let mut index = vec![usize::MAX; self.m];
        for (i, &x) in embed.iter().enumerate() {
            index[x] = i;
        }
        let lookup = |x: usize| -> usize { index[x] };
        for &x in &embed {
            for &y in &embed {
                if !members.contains(self.add(x, y)) {
                    return Err(Error::InvalidStructure(format!(
                        "{x} + {y} leaves the submodule"
                    )));
                }
            }
        }
        let n = self.parent.size();
        for &x in &embed {
            for a in 0..n {
                for b in 0..n {
                    for g in 0..self.parent.gamma_count() {
                        if !members.contains(self.act(a, x, b, g)) {
                            return Err(Error::InvalidStructure(format!(
                                "{{{a} {x} {b}}}_{g} leaves the submodule"
                            )));
                        }
                    }
                }
            }
        }
        let sub = Self::from_fn(
            &self.parent,
            embed.len(),
            |i, j| lookup(self.add(embed[i], embed[j])),
            |a, i, b, g| lookup(self.act(a, embed[i], b, g)),
        )?;
        Ok((sub, embed))
    }

    /// Exhaustive module axioms: additive monoid, distributivity in each slot,
    /// zero absorption, symmetry {a x b} = {b x a}, and
    /// {a {b x c}_γ d}_δ = {{a b c}_γ x d}_δ.
    pub fn verify(&self) -> AxiomReport {
        self.verify_limited(100)
    }

    pub fn verify_limited(&self, limit: usize) -> AxiomReport {
        let limit = limit.max(1);
        let t = &self.parent;
        let n = t.size();
        let m = self.m;
        let gc = t.gamma_count();
        let mut found = Vec::new();
        found.extend(scan_rows(m, limit, |x, out| {
            if self.add(x, 0) != x || self.add(0, x) != x {
                out.push(Violation::new(Axiom::AdditiveIdentity, vec![x], vec![]));
            }
            for y in 0..m {
                if self.add(x, y) != self.add(y, x) {
                    out.push(Violation::new(
                        Axiom::AdditiveCommutativity,
                        vec![x, y],
                        vec![],
                    ));
                }
                for z in 0..m {
                    if out.len() >= limit {
                        return;
                    }
                    if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
                        out.push(Violation::new(
                            Axiom::AdditiveAssociativity,
                            vec![x, y, z],
                            vec![],
                        ));
                    }
                }
            }
        }));
        if found.len() < limit {
            found.extend(scan_rows(n, limit, |a, out| {
                for x in 0..m {
                    for b in 0..n {
                        for g in 0..gc {
                            if out.len() >= limit {
                                return;
                            }
                            let v = self.act(a, x, b, g);
                            if self.act(a, 0, b, g) != 0
                                || self.act(0, x, b, g) != 0
                                || self.act(a, x, 0, g) != 0
                            {
                                out.push(Violation::new(
                                    Axiom::ZeroAbsorption,
                                    vec![a, x, b],
                                    vec![g],
                                ));
                            }
                            if v != self.act(b, x, a, g) {
                                out.push(Violation::new(
                                    Axiom::ActionSymmetry,
                                    vec![a, x, b],
                                    vec![g],
                                ));
                            }
                            for a2 in 0..n {
                                if self.act(t.add(a, a2), x, b, g)
                                    != self.add(v, self.act(a2, x, b, g))
                                {
                                    out.push(Violation::new(
                                        Axiom::DistributiveFirst,
                                        vec![a, a2, x, b],
                                        vec![g],
                                    ));
                                }
                            }
                            for x2 in 0..m {
                                if self.act(a, self.add(x, x2), b, g)
                                    != self.add(v, self.act(a, x2, b, g))
                                {
                                    out.push(Violation::new(
                                        Axiom::DistributiveSecond,
                                        vec![a, x, x2, b],
                                        vec![g],
                                    ));
                                }
                            }
                        }
                    }
                }
            }));
        }
        if found.len() < limit {
            found.extend(scan_rows(n, limit, |a, out| {
                for b in 0..n {
                    for c in 0..n {
                        for d in 0..n {
                            for x in 0..m {
                                for g in 0..gc {
                                    for h in 0..gc {
                                        if out.len() >= limit {
                                            return;
                                        }
                                        let lhs = self.act(a, self.act(b, x, c, g), d, h);
                                        let rhs = self.act(t.tern(a, b, c, g), x, d, h);
                                        if lhs != rhs {
                                            out.push(Violation::new(
                                                Axiom::ActionAssociativity,
                                                vec![a, b, c, d, x],
                                                vec![g, h],
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }));
        }
        AxiomReport::from_violations(found, limit)
    }

    pub fn summary(&self) -> ModuleSummary {
        ModuleSummary {
            size: self.m,
            group_complete: self.group_complete,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleSummary {
    pub size: usize,
    pub group_complete: bool,
}

/// ℤ/m over a modular ℤ/n, acting by {a x b}_γ = γ·a·x·b mod m.
pub fn build_modular_module(t: &TernarySemiring, m: usize) -> Result<GammaModule> {
    let preset = t.modular_preset().ok_or(Error::NotModular)?;
    if m == 0 || preset.n % m != 0 {
        return Err(Error::NotDivisor { m, n: preset.n });
    }
    let gammas = preset.gamma.clone();
    GammaModule::from_fn(
        t,
        m,
        |x, y| (x + y) % m,
        |a, x, b, g| ((gammas[g] % m) * (a % m) % m * x % m * (b % m)) % m,
    )
}

fn checked(v: usize, bound: usize, what: &str) -> Result<u32> {
    if v >= bound {
        return Err(Error::OutOfRange {
            what: what.into(),
            value: v,
            bound,
        });
    }
    Ok(v as u32)
}

fn expect_len(what: &str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch {
            what: what.into(),
            expected,
            found,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_module_of_z4() {
        let t = TernarySemiring::modular(4, &[1]).unwrap();
        let m = build_modular_module(&t, 2).unwrap();
        assert!(m.verify().passed());
        assert!(m.is_group_complete());
        for x in 0..2 {
            assert_eq!(m.act(2, x, 1, 0), 0);
            assert_eq!(m.act(1, x, 2, 0), 0);
        }
        assert_eq!(m.act(1, 1, 1, 0), 1);
    }

    #[test]
    fn regular_module_matches_the_semiring() {
        let t = TernarySemiring::modular(12, &[1, 5]).unwrap();
        let m = build_modular_module(&t, 12).unwrap();
        assert_eq!(m, GammaModule::regular(&t));
        assert!(m.verify().passed());
    }

    #[test]
    fn divisibility_is_required() {
        let t = TernarySemiring::modular(12, &[1]).unwrap();
        assert!(matches!(
            build_modular_module(&t, 5),
            Err(Error::NotDivisor { m: 5, n: 12 })
        ));
    }

    #[test]
    fn sums_and_submodules() {
        let t = TernarySemiring::modular(4, &[1]).unwrap();
        let a = build_modular_module(&t, 2).unwrap();
        let b = build_modular_module(&t, 4).unwrap();
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(s.size(), 8);
        assert!(s.verify().passed());
        let (sub, embed) = b.submodule(&ElementSet::from_members(4, [0, 2])).unwrap();
        assert_eq!(embed, vec![0, 2]);
        assert_eq!(sub.size(), 2);
        assert!(sub.verify().passed());
        assert!(b.submodule(&ElementSet::from_members(4, [0, 1])).is_err());
    }

    #[test]
    fn broken_action_is_reported() {
        let t = TernarySemiring::modular(4, &[1]).unwrap();
        let m =
            GammaModule::from_fn(&t, 2, |x, y| (x + y) % 2, |a, x, _, _| (a * x + 1) % 2).unwrap();
        assert!(!m.verify().passed());
    }
}
