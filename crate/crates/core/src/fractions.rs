//! Quotients of numerators × S by the cubic-scaling relation, shared by
//! semiring and module localization.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::localization::MultiplicativeSystem;
use crate::module::GammaModule;
use crate::semiring::{Caps, TernarySemiring};

/// Pair spaces above this size are refused; the raw relation is stored as a
/// dense bit matrix.
const MAX_PAIRS: usize = 1 << 13;

/// Anything carrying a two-sided triadic T-action with the acted-on element
/// in the middle slot.
pub trait Numerators: Sync {
    fn parent(&self) -> &TernarySemiring;
    fn count(&self) -> usize;
    /// {a x b}_g.
    fn act(&self, a: usize, x: usize, b: usize, g: usize) -> usize;
    fn plus(&self, x: usize, y: usize) -> usize;
}

impl Numerators for TernarySemiring {
    fn parent(&self) -> &TernarySemiring {
        self
    }
    fn count(&self) -> usize {
        self.size()
    }
    fn act(&self, a: usize, x: usize, b: usize, g: usize) -> usize {
        self.tern(a, x, b, g)
    }
    fn plus(&self, x: usize, y: usize) -> usize {
        self.add(x, y)
    }
}

impl Numerators for GammaModule {
    fn parent(&self) -> &TernarySemiring {
        GammaModule::parent(self)
    }
    fn count(&self) -> usize {
        self.size()
    }
    fn act(&self, a: usize, x: usize, b: usize, g: usize) -> usize {
        GammaModule::act(self, a, x, b, g)
    }
    fn plus(&self, x: usize, y: usize) -> usize {
        self.add(x, y)
    }
}

/// Equivalence classes of pairs (x, s) with s in the system.
///
/// Classes are numbered by their least pair in (x, s) order, so class 0 is
/// always the class of (0, s).
#[derive(Clone, Debug)]
pub struct FractionClasses {
    numerators: usize,
    system: Vec<usize>,
    position: Vec<Option<usize>>,
    class_of: Vec<u32>,
    classes: Vec<Vec<(usize, usize)>>,
    closure_added: usize,
}

impl FractionClasses {
    pub fn build<D: Numerators + ?Sized>(
        d: &D,
        system: &MultiplicativeSystem,
        caps: &Caps,
    ) -> Result<Self> {
        let t = d.parent();
        let sys = system.to_vec();
        if sys.is_empty() {
            return Err(Error::InvalidInput("multiplicative system is empty".into()));
        }
        let nn = d.count();
        let ns = sys.len();
        let p = nn * ns;
        if p > MAX_PAIRS {
            return Err(Error::CapExceeded {
                what: "fraction pairs",
                value: p,
                cap: MAX_PAIRS,
            });
        }
        let gc = t.gamma_count();
        let cubes: Vec<Vec<usize>> = sys
            .iter()
            .map(|&s| {
                let set: BTreeSet<usize> = (0..gc).map(|g| t.tern(s, s, s, g)).collect();
                set.into_iter().collect()
            })
            .collect();

        // Row (x, s) of the raw relation is owned by the worker for s.
        let rows: Vec<Vec<FixedBitSet>> = (0..ns)
            .into_par_iter()
            .map(|si| {
                let mut rows = vec![FixedBitSet::with_capacity(p); nn];
                let mut left: Vec<Vec<usize>> = vec![Vec::new(); nn * ns];
                let mut bucket: Vec<Vec<usize>> = vec![Vec::new(); nn];
                for &u in &sys {
                    for delta in 0..gc {
                        // left[x][w]: values {u, x, {www}_γ}_δ over γ.
                        for x in 0..nn {
                            for w in 0..ns {
                                let vals = &mut left[x * ns + w];
                                vals.clear();
                                vals.extend(cubes[w].iter().map(|&c| d.act(u, x, c, delta)));
                                vals.sort_unstable();
                                vals.dedup();
                            }
                        }
                        for ti in 0..ns {
                            bucket.iter_mut().for_each(Vec::clear);
                            for x in 0..nn {
                                for &v in &left[x * ns + ti] {
                                    bucket[v].push(x);
                                }
                            }
                            for y in 0..nn {
                                for &v in &left[y * ns + si] {
                                    for &x in &bucket[v] {
                                        rows[x].insert(y * ns + ti);
                                    }
                                }
                            }
                        }
                    }
                }
                rows
            })
            .collect();
        let raw = |a: usize, b: usize| -> bool {
            let (x, si) = (a / ns, a % ns);
            rows[si][x].contains(b)
        };

        let mut uf = UnionFind::<usize>::new(p);
        for (si, per_s) in rows.iter().enumerate() {
            for (x, row) in per_s.iter().enumerate() {
                for b in row.ones() {
                    uf.union(x * ns + si, b);
                }
            }
        }
        let mut root_class = vec![u32::MAX; p];
        let mut class_of = vec![0u32; p];
        let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
        for a in 0..p {
            let r = uf.find(a);
            if root_class[r] == u32::MAX {
                root_class[r] = classes.len() as u32;
                classes.push(Vec::new());
            }
            let c = root_class[r];
            class_of[a] = c;
            classes[c as usize].push((a / ns, sys[a % ns]));
        }
        if classes.len() > caps.stalk_classes {
            return Err(Error::CapExceeded {
                what: "classes in a localization",
                value: classes.len(),
                cap: caps.stalk_classes,
            });
        }
        let mut position = vec![None; t.size()];
        for (i, &s) in sys.iter().enumerate() {
            position[s] = Some(i);
        }
        let mut closure_added = 0;
        for members in &classes {
            let idx: Vec<usize> = members
                .iter()
                .map(|&(x, s)| x * ns + position[s].unwrap())
                .collect();
            for &a in &idx {
                for &b in &idx {
                    if !raw(a, b) {
                        closure_added += 1;
                    }
                }
            }
        }
        Ok(FractionClasses {
            numerators: nn,
            system: sys,
            position,
            class_of,
            classes,
            closure_added,
        })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn numerators(&self) -> usize {
        self.numerators
    }

    pub fn system(&self) -> &[usize] {
        &self.system
    }

    pub fn in_system(&self, s: usize) -> bool {
        self.position.get(s).is_some_and(|p| p.is_some())
    }

    /// Class of x/s; `None` when s is not a denominator.
    pub fn class_of(&self, x: usize, s: usize) -> Option<usize> {
        let si = (*self.position.get(s)?)?;
        Some(self.class_of[x * self.system.len() + si] as usize)
    }

    pub fn classes(&self) -> &[Vec<(usize, usize)>] {
        &self.classes
    }

    /// Least pair of class `c`.
    pub fn representative(&self, c: usize) -> (usize, usize) {
        self.classes[c][0]
    }

    /// Was the raw cubic-scaling relation already transitive?
    pub fn raw_relation_transitive(&self) -> bool {
        self.closure_added == 0
    }

    /// Ordered pairs the transitive closure added to the raw relation.
    pub fn closure_added(&self) -> usize {
        self.closure_added
    }

    /// a/s + b/t := ({{ttt} a {sss}} + {{sss} b {sss}}) / {s t s}, all at γ₀.
    ///
    /// Under cubic scaling a pair x/s behaves like x·s⁻³, and this is the
    /// sum of those values written with ternary products only.
    pub fn raw_sum<D: Numerators + ?Sized>(
        d: &D,
        (x, s): (usize, usize),
        (y, t): (usize, usize),
    ) -> (usize, usize) {
        let tt = d.parent();
        let s3 = tt.tern(s, s, s, 0);
        let t3 = tt.tern(t, t, t, 0);
        (
            d.plus(d.act(t3, x, s3, 0), d.act(s3, y, s3, 0)),
            tt.tern(s, t, s, 0),
        )
    }

    /// The class addition table when the fraction sum is independent of
    /// representatives and makes the classes a commutative monoid with
    /// class 0 as identity; otherwise the reason it is not.
    pub fn addition<D: Numerators + ?Sized>(&self, d: &D) -> std::result::Result<Vec<u32>, String> {
        let c = self.len();
        let mut table = vec![u32::MAX; c * c];
        for i in 0..c {
            for j in 0..c {
                let (num, den) = Self::raw_sum(d, self.representative(i), self.representative(j));
                match self.class_of(num, den) {
                    Some(k) => table[i * c + j] = k as u32,
                    None => return Err(format!("denominator {den} of a sum leaves the system")),
                }
            }
        }
        let pairs: Vec<(usize, usize, usize)> = self
            .classes
            .iter()
            .enumerate()
            .flat_map(|(k, m)| m.iter().map(move |&(x, s)| (k, x, s)))
            .collect();
        let bad = pairs.par_iter().find_first(|&&(ki, x, s)| {
            pairs.iter().any(|&(kj, y, t)| {
                let (num, den) = Self::raw_sum(d, (x, s), (y, t));
                self.class_of(num, den) != Some(table[ki * c + kj] as usize)
            })
        });
        if let Some(&(ki, x, s)) = bad {
            return Err(format!(
                "sum with {x}/{s} depends on the representative of class {ki}"
            ));
        }
        for i in 0..c {
            if table[i] as usize != i || table[i * c] as usize != i {
                return Err(format!("class 0 is not an additive identity for class {i}"));
            }
            for j in 0..c {
                if table[i * c + j] != table[j * c + i] {
                    return Err(format!(
                        "addition of classes {i} and {j} is not commutative"
                    ));
                }
                for k in 0..c {
                    let l = table[table[i * c + j] as usize * c + k];
                    let r = table[i * c + table[j * c + k] as usize];
                    if l != r {
                        return Err(format!(
                            "addition of classes {i}, {j}, {k} is not associative"
                        ));
                    }
                }
            }
        }
        Ok(table)
    }

    /// Checks that (x, s) ↦ class(f(x), g(s)) is constant on every class for
    /// each profile pair; `None` when it always is, else a description.
    pub(crate) fn profile_violation(
        &self,
        numer: &[Vec<usize>],
        denom: &[Vec<usize>],
    ) -> Option<String> {
        for f in numer {
            for g in denom {
                for (k, members) in self.classes.iter().enumerate() {
                    let (x0, s0) = members[0];
                    let want = self.class_of(f[x0], g[self.position[s0].unwrap()]);
                    for &(x, s) in &members[1..] {
                        let got = self.class_of(f[x], g[self.position[s].unwrap()]);
                        if got != want || got.is_none() {
                            return Some(format!(
                                "class {k}: {x0}/{s0} and {x}/{s} have products in different classes"
                            ));
                        }
                    }
                }
            }
        }
        None
    }

    /// Least witness (u, γ, δ, η) for a raw relation between x/s and y/t.
    pub fn raw_witness<D: Numerators + ?Sized>(
        &self,
        d: &D,
        (x, s): (usize, usize),
        (y, t): (usize, usize),
    ) -> Option<(usize, usize, usize, usize)> {
        let tt = d.parent();
        let gc = tt.gamma_count();
        for &u in &self.system {
            for g in 0..gc {
                for delta in 0..gc {
                    for eta in 0..gc {
                        if d.act(u, x, tt.tern(t, t, t, g), delta)
                            == d.act(u, y, tt.tern(s, s, s, eta), delta)
                        {
                            return Some((u, g, delta, eta));
                        }
                    }
                }
            }
        }
        None
    }
}
