//! Ternary Γ-tensor products of finite modules as finitely presented abelian
//! groups, Tor₁ for cyclic modules, and a flatness probe.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::intlin::{subquotient, AbGroupPresentation, FiniteAbelianGroup, HermiteBasis};
use crate::module::GammaModule;
use crate::semiring::TernarySemiring;
use crate::set::ElementSet;

fn lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// M ⊗_Γ N on generators m⊗n (index m·|N| + n).
#[derive(Clone, Debug)]
pub struct TensorProduct {
    left: GammaModule,
    right: GammaModule,
    relations_count: usize,
    basis: HermiteBasis,
    invariant_factors: Vec<u64>,
}

/// Sparse integer row, sorted by column, zero entries dropped.
type SparseRow = Vec<(usize, i128)>;

fn sparse(entries: &[(usize, i128)]) -> SparseRow {
    let mut acc: Vec<(usize, i128)> = entries.to_vec();
    acc.sort_unstable_by_key(|e| e.0);
    let mut out: SparseRow = Vec::with_capacity(acc.len());
    for (c, v) in acc {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

/// Distributivity in both slots, triadic balancing
/// {t m u}_γ ⊗ n = m ⊗ {t n u}_γ, and zero absorption, over all parameters.
fn tensor_relations(left: &GammaModule, right: &GammaModule) -> Vec<SparseRow> {
    let (a, b) = (left.size(), right.size());
    let t = left.parent();
    let g = |m: usize, n: usize| m * b + n;
    let mut rows: HashSet<SparseRow> = HashSet::new();
    let mut push = |r: SparseRow| {
        if !r.is_empty() {
            rows.insert(r);
        }
    };
    for m in 0..a {
        for m2 in 0..a {
            for n in 0..b {
                push(sparse(&[
                    (g(left.add(m, m2), n), 1),
                    (g(m, n), -1),
                    (g(m2, n), -1),
                ]));
            }
        }
    }
    for m in 0..a {
        for n in 0..b {
            for n2 in 0..b {
                push(sparse(&[
                    (g(m, right.add(n, n2)), 1),
                    (g(m, n), -1),
                    (g(m, n2), -1),
                ]));
            }
        }
    }
    for m in 0..a {
        push(sparse(&[(g(m, 0), 1)]));
    }
    for n in 0..b {
        push(sparse(&[(g(0, n), 1)]));
    }
    for m in 0..a {
        for n in 0..b {
            let mut seen = HashSet::new();
            for gamma in 0..t.gamma_count() {
                for x in 0..t.size() {
                    for y in 0..t.size() {
                        let l = left.act(x, m, y, gamma);
                        let r = right.act(x, n, y, gamma);
                        if seen.insert((l, r)) {
                            push(sparse(&[(g(l, n), 1), (g(m, r), -1)]));
                        }
                    }
                }
            }
        }
    }
    let mut rows: Vec<SparseRow> = rows.into_iter().collect();
    rows.sort_unstable_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    rows
}

pub fn tensor_product(left: &GammaModule, right: &GammaModule) -> Result<TensorProduct> {
    if left.parent() != right.parent() {
        return Err(Error::ParentMismatch);
    }
    for (name, m) in [("left factor", left), ("right factor", right)] {
        if !m.is_group_complete() {
            return Err(Error::NotGroupComplete(name.into()));
        }
    }
    let dim = left.size() * right.size();
    // E·(m⊗n) = (E·m)⊗n = 0⊗n follows from the relations when E kills M,
    // so E·ℤ^dim lies in the relation lattice.
    let exponent = (0..left.size()).fold(1u64, |e, m| lcm(e, left.order(m) as u64));
    let relations = tensor_relations(left, right);
    let mut basis = HermiteBasis::with_modulus(dim, exponent);
    for r in &relations {
        let mut v = vec![0i128; dim];
        for &(c, x) in r {
            v[c] = x;
        }
        basis.insert(v)?;
    }
    let presentation = AbGroupPresentation {
        num_generators: dim,
        relations: basis.rows().to_vec(),
        generator_labels: Vec::new(),
    };
    let invariant_factors = presentation.invariant_factors()?;
    if invariant_factors.contains(&0) {
        return Err(Error::InvalidStructure(
            "tensor presentation is not finite".into(),
        ));
    }
    Ok(TensorProduct {
        left: left.clone(),
        right: right.clone(),
        relations_count: relations.len(),
        basis,
        invariant_factors,
    })
}

impl TensorProduct {
    pub fn left(&self) -> &GammaModule {
        &self.left
    }

    pub fn right(&self) -> &GammaModule {
        &self.right
    }

    pub fn num_generators(&self) -> usize {
        self.left.size() * self.right.size()
    }

    pub fn generator(&self, m: usize, n: usize) -> usize {
        m * self.right.size() + n
    }

    /// Distinct relations instantiated before reduction.
    pub fn relations_count(&self) -> usize {
        self.relations_count
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    /// An equivalent presentation whose relations are the reduced basis of
    /// the relation lattice.
    pub fn presentation(&self) -> AbGroupPresentation {
        AbGroupPresentation {
            num_generators: self.num_generators(),
            relations: self.basis.rows().to_vec(),
            generator_labels: (0..self.left.size())
                .flat_map(|m| (0..self.right.size()).map(move |n| format!("{m}⊗{n}")))
                .collect(),
        }
    }

    /// Canonical coordinates of an integer combination of generators.
    pub fn normal_form(&self, v: &[i128]) -> Result<Vec<i128>> {
        self.basis.reduce(v)
    }

    /// Canonical coordinates of m⊗n.
    pub fn pair_normal_form(&self, m: usize, n: usize) -> Result<Vec<i128>> {
        let mut v = vec![0i128; self.num_generators()];
        v[self.generator(m, n)] = 1;
        self.normal_form(&v)
    }

    pub fn relation_rows(&self) -> &[Vec<i128>] {
        self.basis.rows()
    }

    /// Every element, reached from 0 by adding pure tensors.
    pub fn elements(&self) -> Result<TensorElements> {
        let (a, b) = (self.left.size(), self.right.size());
        let dim = self.num_generators();
        let mut pair_vec = Vec::with_capacity(a * b);
        for m in 0..a {
            for n in 0..b {
                pair_vec.push(self.pair_normal_form(m, n)?);
            }
        }
        let zero = self.normal_form(&vec![0; dim])?;
        let mut vectors = vec![zero.clone()];
        let mut index = HashMap::from([(zero, 0usize)]);
        let mut path = vec![None];
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (p, pv) in pair_vec.iter().enumerate() {
                let sum: Vec<i128> = vectors[e].iter().zip(pv).map(|(x, y)| x + y).collect();
                let sum = self.normal_form(&sum)?;
                if !index.contains_key(&sum) {
                    index.insert(sum.clone(), vectors.len());
                    path.push(Some((e, p)));
                    queue.push_back(vectors.len());
                    vectors.push(sum);
                }
            }
        }
        if vectors.len() as u64 != self.order() {
            return Err(Error::InvalidStructure(format!(
                "enumerated {} elements but the invariant factors give {}",
                vectors.len(),
                self.order()
            )));
        }
        let pair = pair_vec.iter().map(|v| index[v]).collect();
        Ok(TensorElements {
            vectors,
            index,
            pair,
            path,
        })
    }

    /// The tensor product as a T-module acting on the left factor, with the
    /// element of each pure tensor.
    pub fn to_module(&self) -> Result<(GammaModule, TensorElements)> {
        let els = self.elements()?;
        let b = self.right.size();
        let module = GammaModule::from_fn(
            self.left.parent(),
            els.len(),
            |x, y| els.add(self, x, y).expect("normal forms are closed"),
            |s, x, u, g| {
                let mut acc = 0;
                for p in els.expansion(x) {
                    let (m, n) = (p / b, p % b);
                    let q = self.generator(self.left.act(s, m, u, g), n);
                    acc = els
                        .add(self, acc, els.pair[q])
                        .expect("normal forms are closed");
                }
                acc
            },
        )?;
        Ok((module, els))
    }

    pub fn report(&self) -> TensorReport {
        TensorReport {
            generators: self.num_generators(),
            relations_count: self.relations_count,
            invariant_factors: self.invariant_factors.clone(),
            order: self.order(),
        }
    }
}

/// Elements of a tensor product as canonical coordinate vectors.
#[derive(Clone, Debug)]
pub struct TensorElements {
    vectors: Vec<Vec<i128>>,
    index: HashMap<Vec<i128>, usize>,
    /// Element of each pure tensor, by generator index.
    pair: Vec<usize>,
    /// How each element was first reached: (previous element, generator).
    path: Vec<Option<(usize, usize)>>,
}

impl TensorElements {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn of_pair(&self, generator: usize) -> usize {
        self.pair[generator]
    }

    pub fn vector(&self, e: usize) -> &[i128] {
        &self.vectors[e]
    }

    pub fn add(&self, tp: &TensorProduct, x: usize, y: usize) -> Result<usize> {
        let sum: Vec<i128> = self.vectors[x]
            .iter()
            .zip(&self.vectors[y])
            .map(|(a, b)| a + b)
            .collect();
        let sum = tp.normal_form(&sum)?;
        Ok(self.index[&sum])
    }

    /// Generators whose pure tensors sum to the element.
    pub fn expansion(&self, mut e: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while let Some((prev, p)) = self.path[e] {
            out.push(p);
            e = prev;
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorReport {
    pub generators: usize,
    pub relations_count: usize,
    pub invariant_factors: Vec<u64>,
    pub order: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BilinearReport {
    pub tensor_order: usize,
    /// Induced homomorphism: tensor element ↦ element of P.
    pub induced: Vec<usize>,
    /// Every (element, pure tensor) step replays h(e + m⊗n) = h(e) + β(m, n).
    pub replayed: bool,
    /// Homomorphisms M⊗N → P extending β among all candidates, when the
    /// candidate space was small enough to enumerate.
    pub extensions: Option<usize>,
}

impl BilinearReport {
    pub fn unique(&self) -> bool {
        self.replayed && self.extensions == Some(1)
    }
}

/// Above this many candidate homomorphisms the uniqueness count is skipped.
const HOM_CANDIDATES: usize = 1 << 20;

/// Checks that β: M × N → P (P's addition only) is balanced and
/// distributive, then builds and replays the induced homomorphism.
pub fn check_bilinear_universal_property(
    tp: &TensorProduct,
    p: &GammaModule,
    beta: impl Fn(usize, usize) -> usize,
) -> Result<BilinearReport> {
    let (m_mod, n_mod) = (&tp.left, &tp.right);
    let (a, b) = (m_mod.size(), n_mod.size());
    let t = m_mod.parent();
    for m in 0..a {
        for n in 0..b {
            if beta(m, n) >= p.size() {
                return Err(Error::OutOfRange {
                    what: "bilinear map value".into(),
                    value: beta(m, n),
                    bound: p.size(),
                });
            }
        }
    }
    for m in 0..a {
        for n in 0..b {
            for m2 in 0..a {
                if beta(m_mod.add(m, m2), n) != p.add(beta(m, n), beta(m2, n)) {
                    return Err(Error::NotBalanced(format!(
                        "left distributivity at ({m} + {m2}, {n})"
                    )));
                }
            }
            for n2 in 0..b {
                if beta(m, n_mod.add(n, n2)) != p.add(beta(m, n), beta(m, n2)) {
                    return Err(Error::NotBalanced(format!(
                        "right distributivity at ({m}, {n} + {n2})"
                    )));
                }
            }
            for g in 0..t.gamma_count() {
                for x in 0..t.size() {
                    for y in 0..t.size() {
                        if beta(m_mod.act(x, m, y, g), n) != beta(m, n_mod.act(x, n, y, g)) {
                            return Err(Error::NotBalanced(format!(
                                "balancing at m = {m}, n = {n}, t = {x}, u = {y}, gamma {g}"
                            )));
                        }
                    }
                }
            }
        }
    }
    let els = tp.elements()?;
    let mut induced = vec![usize::MAX; els.len()];
    induced[0] = 0;
    for e in 1..els.len() {
        let (prev, q) = els.path[e].unwrap();
        induced[e] = p.add(induced[prev], beta(q / b, q % b));
    }
    let mut replayed = true;
    'outer: for e in 0..els.len() {
        for q in 0..a * b {
            let f = els.add(tp, e, els.pair[q])?;
            if induced[f] != p.add(induced[e], beta(q / b, q % b)) {
                replayed = false;
                break 'outer;
            }
        }
    }
    let group = FiniteAbelianGroup::from_table(els.len(), |x, y| els.add(tp, x, y).unwrap())?;
    let candidates = (0..group.rank()).try_fold(1usize, |acc, _| acc.checked_mul(p.size()));
    let extensions = match candidates {
        Some(c) if c <= HOM_CANDIDATES => {
            Some(count_extensions(&group, p, &els, |q| beta(q / b, q % b)))
        }
        _ => None,
    };
    Ok(BilinearReport {
        tensor_order: els.len(),
        induced,
        replayed,
        extensions,
    })
}

/// Homomorphisms G → P (by generator images satisfying the triangular
/// relations) that send every pure tensor q to target(q).
fn count_extensions(
    group: &FiniteAbelianGroup,
    p: &GammaModule,
    els: &TensorElements,
    target: impl Fn(usize) -> usize,
) -> usize {
    let r = group.rank();
    let times = |k: i128, x: usize| -> usize {
        let k = k.rem_euclid(p.order(x) as i128) as usize;
        (0..k).fold(0, |acc, _| p.add(acc, x))
    };
    let mut images = vec![0usize; r];
    let mut count = 0;
    loop {
        let respects = group.relations().iter().all(|rel| {
            rel.iter()
                .zip(&images)
                .fold(0, |acc, (&k, &x)| p.add(acc, times(k, x)))
                == 0
        });
        if respects {
            let h = |e: usize| -> usize {
                group
                    .coords(e)
                    .iter()
                    .zip(&images)
                    .fold(0, |acc, (&k, &x)| p.add(acc, times(k, x)))
            };
            if (0..els.pair.len()).all(|q| h(els.pair[q]) == target(q)) {
                count += 1;
            }
        }
        let mut k = 0;
        loop {
            if k == r {
                return count;
            }
            images[k] += 1;
            if images[k] < p.size() {
                break;
            }
            images[k] = 0;
            k += 1;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TorReport {
    /// Human-readable description of 0 → K → F → M → 0.
    pub presentation: String,
    pub presentation_relative: bool,
    pub kernel_size: usize,
    pub free_size: usize,
    pub invariant_factors: Vec<u64>,
}

impl TorReport {
    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

/// ker(K ⊗ N → F ⊗ N) for K ⊆ F given by the embedding.
pub fn tor1_from_presentation(
    free: &GammaModule,
    kernel: &GammaModule,
    embed: &[usize],
    n: &GammaModule,
    description: String,
) -> Result<TorReport> {
    let kn = tensor_product(kernel, n)?;
    let fnn = tensor_product(free, n)?;
    let b = n.size();
    let images: Vec<Vec<i128>> = (0..kernel.size())
        .flat_map(|k| (0..b).map(move |y| (k, y)))
        .map(|(k, y)| fnn.pair_normal_form(embed[k], y))
        .collect::<Result<_>>()?;
    let invariant_factors = subquotient(
        kn.num_generators(),
        kn.relation_rows(),
        Some((&images, fnn.relation_rows(), fnn.num_generators())),
        &[],
    )?;
    Ok(TorReport {
        presentation: description,
        presentation_relative: true,
        kernel_size: kernel.size(),
        free_size: free.size(),
        invariant_factors,
    })
}

fn modular_n(t: &TernarySemiring) -> Result<usize> {
    Ok(t.modular_preset().ok_or(Error::NotModular)?.n)
}

/// Tor₁(ℤ/m, N) from 0 → (m) → T → ℤ/m → 0.
pub fn tor1_cyclic(t: &TernarySemiring, m: usize, n: &GammaModule) -> Result<TorReport> {
    let size = modular_n(t)?;
    if m == 0 || size % m != 0 {
        return Err(Error::NotDivisor { m, n: size });
    }
    let free = GammaModule::regular(t);
    let k = ElementSet::from_members(size, (0..size).filter(|x| x % m == 0));
    let (kernel, embed) = free.submodule(&k)?;
    tor1_from_presentation(
        &free,
        &kernel,
        &embed,
        n,
        format!("0 -> ({m}) -> T -> Z/{m} -> 0"),
    )
}

/// Tor₁(ℤ/m, N) from T ⊕ T → ℤ/m, (x, y) ↦ x + y mod m, a presentation
/// with a redundant generator.
pub fn tor1_cyclic_two_generators(
    t: &TernarySemiring,
    m: usize,
    n: &GammaModule,
) -> Result<TorReport> {
    let size = modular_n(t)?;
    if m == 0 || size % m != 0 {
        return Err(Error::NotDivisor { m, n: size });
    }
    let reg = GammaModule::regular(t);
    let free = reg.direct_sum(&reg)?;
    let k = ElementSet::from_members(
        size * size,
        (0..size * size).filter(|p| (p / size + p % size) % m == 0),
    );
    let (kernel, embed) = free.submodule(&k)?;
    tor1_from_presentation(
        &free,
        &kernel,
        &embed,
        n,
        format!("0 -> K -> T+T -> Z/{m} -> 0"),
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatnessEntry {
    pub m: usize,
    pub invariant_factors: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatnessReport {
    pub probes: Vec<FlatnessEntry>,
    pub flat: bool,
    pub witness: Option<usize>,
}

/// Tor₁(ℤ/m, N) for every divisor m of n, ascending.
pub fn flatness_probe(t: &TernarySemiring, n: &GammaModule) -> Result<FlatnessReport> {
    let size = modular_n(t)?;
    let mut probes = Vec::new();
    let mut witness = None;
    for m in (1..=size).filter(|m| size % m == 0) {
        let r = tor1_cyclic(t, m, n)?;
        if witness.is_none() && !r.is_trivial() {
            witness = Some(m);
        }
        probes.push(FlatnessEntry {
            m,
            invariant_factors: r.invariant_factors,
        });
    }
    Ok(FlatnessReport {
        probes,
        flat: witness.is_none(),
        witness,
    })
}
