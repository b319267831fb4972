use std::collections::{HashSet, VecDeque};

use crate::abelian::invariant_factors_from_elements;
use crate::raw::{RawModule, RawSemiring};

/// All balanced maps f : M × N → ℤ/E, i.e. maps additive in each slot with
/// f({t m u}_γ, n) = f(m, {t n u}_γ).
struct BalancedMaps {
    /// Variable of pair (m, n), stored at m·|N| + n.
    var_of: Vec<usize>,
    /// One value per variable for each map found.
    maps: Vec<Vec<u64>>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn balanced_maps(m: &RawModule, n: &RawModule, modulus: u64) -> BalancedMaps {
    let (sm, sn) = (m.size(), n.size());
    let pair = |x: usize, y: usize| x * sn + y;
    let p = sm * sn;

    // Congruence closure of the balancing equalities; zero pairs join (0, 0).
    let mut parent: Vec<usize> = (0..p).collect();
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };
    for x in 0..sm {
        union(&mut parent, pair(x, 0), 0);
    }
    for y in 0..sn {
        union(&mut parent, pair(0, y), 0);
    }
    for (mg, ng) in m.act.iter().zip(&n.act) {
        for (ma, na) in mg.iter().zip(ng) {
            for x in 0..sm {
                for y in 0..sn {
                    for b in 0..ma[x].len() {
                        union(&mut parent, pair(ma[x][b], y), pair(x, na[y][b]));
                    }
                }
            }
        }
    }
    let mut var_of = vec![0; p];
    let mut roots = Vec::new();
    for i in 0..p {
        let r = find(&mut parent, i);
        let v = match roots.iter().position(|&q| q == r) {
            Some(v) => v,
            None => {
                roots.push(r);
                roots.len() - 1
            }
        };
        var_of[i] = v;
    }
    let vars = roots.len();

    // Additivity: v[a] = v[b] + v[c].
    let mut eqs: HashSet<[usize; 3]> = HashSet::new();
    for x in 0..sm {
        for x2 in 0..sm {
            for y in 0..sn {
                eqs.insert([
                    var_of[pair(m.add[x][x2], y)],
                    var_of[pair(x, y)],
                    var_of[pair(x2, y)],
                ]);
            }
        }
    }
    for x in 0..sm {
        for y in 0..sn {
            for y2 in 0..sn {
                eqs.insert([
                    var_of[pair(x, n.add[y][y2])],
                    var_of[pair(x, y)],
                    var_of[pair(x, y2)],
                ]);
            }
        }
    }
    let mut eqs: Vec<[usize; 3]> = eqs.into_iter().collect();
    eqs.sort_unstable();
    let mut touching = vec![Vec::new(); vars];
    for (i, e) in eqs.iter().enumerate() {
        for &v in e {
            if !touching[v].contains(&i) {
                touching[v].push(i);
            }
        }
    }

    let mut search = Search {
        eqs: &eqs,
        touching: &touching,
        modulus,
        value: vec![None; vars],
        trail: Vec::new(),
        found: Vec::new(),
    };
    if search.assign(0, 0) {
        search.descend();
    }
    BalancedMaps {
        var_of,
        maps: search.found,
    }
}

struct Search<'a> {
    eqs: &'a [[usize; 3]],
    touching: &'a [Vec<usize>],
    modulus: u64,
    value: Vec<Option<u64>>,
    trail: Vec<usize>,
    found: Vec<Vec<u64>>,
}

impl Search<'_> {
    /// Sets a variable and propagates; false on contradiction.
    fn assign(&mut self, var: usize, val: u64) -> bool {
        let e = self.modulus;
        let mut queue = VecDeque::from([(var, val)]);
        while let Some((v, x)) = queue.pop_front() {
            match self.value[v] {
                Some(old) if old == x => continue,
                Some(_) => return false,
                None => {
                    self.value[v] = Some(x);
                    self.trail.push(v);
                }
            }
            for &i in &self.touching[v] {
                // Σ coef·v ≡ 0 with coefficients +1, −1, −1 merged per variable.
                let [a, b, c] = self.eqs[i];
                let mut terms: Vec<(usize, u64)> = Vec::with_capacity(3);
                for (w, coef) in [(a, 1), (b, e - 1), (c, e - 1)] {
                    match terms.iter_mut().find(|(u, _)| *u == w) {
                        Some(t) => t.1 = (t.1 + coef) % e,
                        None => terms.push((w, coef % e)),
                    }
                }
                let mut known = 0u64;
                let mut unknown = Vec::new();
                for &(w, coef) in &terms {
                    if coef == 0 {
                        continue;
                    }
                    match self.value[w] {
                        Some(y) => known = (known + coef * y) % e,
                        None => unknown.push((w, coef)),
                    }
                }
                match unknown.as_slice() {
                    [] if known != 0 => return false,
                    [(w, 1)] => queue.push_back((*w, (e - known) % e)),
                    [(w, c)] if *c == e - 1 => queue.push_back((*w, known)),
                    _ => {}
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            self.value[v] = None;
        }
    }

    fn descend(&mut self) {
        let Some(var) = self.value.iter().position(Option::is_none) else {
            if self.consistent() {
                self.found
                    .push(self.value.iter().map(|v| v.unwrap()).collect());
            }
            return;
        };
        for val in 0..self.modulus {
            let mark = self.trail.len();
            if self.assign(var, val) {
                self.descend();
            }
            self.undo_to(mark);
        }
    }

    fn consistent(&self) -> bool {
        let e = self.modulus;
        let v = |i: usize| self.value[i].unwrap();
        self.eqs.iter().all(|&[a, b, c]| v(a) == (v(b) + v(c)) % e)
    }
}

fn add_mod(modulus: u64) -> impl Fn(&Vec<u64>, &Vec<u64>) -> Vec<u64> {
    move |x, y| x.iter().zip(y).map(|(a, b)| (a + b) % modulus).collect()
}

/// Invariant factors of M ⊗_Γ N.
///
/// The group of balanced maps into ℤ/E, with E the exponent of M, is the
/// dual of M ⊗ N and so has the same invariant factors.
pub fn naive_tensor_invariants(m: &RawModule, n: &RawModule) -> Vec<u64> {
    let e = m.exponent() as u64;
    let maps = balanced_maps(m, n, e).maps;
    let zero = vec![0; maps[0].len()];
    invariant_factors_from_elements(&maps, &zero, add_mod(e))
}

/// Invariant factors of ker(K ⊗ N → T ⊗ N), for T = ℤ/n with the modular
/// Γ and K the multiples of m in T.
///
/// Both tensor products are realized as evaluation vectors against all
/// their balanced maps into ℤ/E (E the exponent of N), which separates
/// points. The kernel is read off the subgroup generated by the graph of
/// the induced map.
pub fn naive_tor1_cyclic(n: usize, gamma: &[usize], m: usize, nmod: &RawModule) -> Vec<u64> {
    assert!(m > 0 && n.is_multiple_of(m));
    let t = RawSemiring::modular(n, gamma);
    let tt = RawModule::regular(&t);
    let kmembers: Vec<usize> = (0..n).filter(|x| x % m == 0).collect();
    let k = tt.restrict(&kmembers);
    let e = nmod.exponent() as u64;
    let on_k = balanced_maps(&k, nmod, e);
    let on_t = balanced_maps(&tt, nmod, e);
    let sn = nmod.size();
    let eval = |bm: &BalancedMaps, x: usize, y: usize| -> Vec<u64> {
        let v = bm.var_of[x * sn + y];
        bm.maps.iter().map(|f| f[v]).collect()
    };
    let lk = on_k.maps.len();
    let gens: Vec<Vec<u64>> = (0..kmembers.len())
        .flat_map(|ki| (0..sn).map(move |y| (ki, y)))
        .map(|(ki, y)| {
            let mut g = eval(&on_k, ki, y);
            g.extend(eval(&on_t, kmembers[ki], y));
            g
        })
        .collect();
    let add = add_mod(e);
    let zero = vec![0u64; gens[0].len()];
    let mut seen: HashSet<Vec<u64>> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero.clone()]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = add(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let kernel: Vec<Vec<u64>> = seen
        .into_iter()
        .filter(|x| x[lk..].iter().all(|&v| v == 0))
        .collect();
    invariant_factors_from_elements(&kernel, &zero, add)
}
