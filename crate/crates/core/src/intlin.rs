//! Integer lattices, Hermite and Smith normal forms, and finite abelian
//! groups given by presentations or Cayley tables.

use serde::Serialize;

use crate::error::{Error, Result};

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

/// `a + k·b` entrywise.
fn axpy(a: &mut [i128], k: i128, b: &[i128]) -> Result<()> {
    if k == 0 {
        return Ok(());
    }
    for (x, &y) in a.iter_mut().zip(b) {
        if y != 0 {
            *x = add(*x, mul(k, y)?)?;
        }
    }
    Ok(())
}

/// (g, x, y) with g = gcd(a, b) ≥ 0 and a·x + b·y = g.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// A sublattice of ℤ^dim kept in row echelon form with positive pivots.
/// With a modulus E the lattice contains E·ℤ^dim and entries stay in 0..E.
#[derive(Clone, Debug)]
pub struct HermiteBasis {
    dim: usize,
    rows: Vec<Vec<i128>>,
    pivots: Vec<usize>,
    modulus: Option<i128>,
}

impl HermiteBasis {
    pub fn new(dim: usize) -> Self {
        HermiteBasis {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            modulus: None,
        }
    }

    /// The lattice generated by E·ℤ^dim, ready to absorb further rows.
    pub fn with_modulus(dim: usize, modulus: u64) -> Self {
        let e = modulus.max(1) as i128;
        HermiteBasis {
            dim,
            rows: (0..dim)
                .map(|i| {
                    let mut r = vec![0; dim];
                    r[i] = e;
                    r
                })
                .collect(),
            pivots: (0..dim).collect(),
            modulus: Some(e),
        }
    }

    pub fn from_rows(dim: usize, rows: &[Vec<i128>]) -> Result<Self> {
        let mut b = Self::new(dim);
        for r in rows {
            b.insert(r.clone())?;
        }
        Ok(b)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i128>] {
        &self.rows
    }

    fn fold(&self, v: &mut [i128]) {
        if let Some(e) = self.modulus {
            for x in v.iter_mut() {
                *x = x.rem_euclid(e);
            }
        }
    }

    /// Adds `v` to the generating set.
    pub fn insert(&mut self, mut v: Vec<i128>) -> Result<()> {
        debug_assert_eq!(v.len(), self.dim);
        self.fold(&mut v);
        let mut i = 0;
        loop {
            let Some(c) = v.iter().position(|&x| x != 0) else {
                return Ok(());
            };
            while i < self.rows.len() && self.pivots[i] < c {
                i += 1;
            }
            if i == self.rows.len() || self.pivots[i] > c {
                if v[c] < 0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
                self.rows.insert(i, v);
                self.pivots.insert(i, c);
                self.reduce_above(i)?;
                return Ok(());
            }
            let b = &self.rows[i];
            let (p, q) = (b[c], v[c]);
            if q % p == 0 {
                let k = q / p;
                let b = b.clone();
                axpy(&mut v, -k, &b)?;
                self.fold(&mut v);
                continue;
            }
            let (g, x, y) = ext_gcd(p, q);
            let mut nb = vec![0i128; self.dim];
            axpy(&mut nb, x, b)?;
            axpy(&mut nb, y, &v)?;
            let mut nv = vec![0i128; self.dim];
            axpy(&mut nv, q / g, b)?;
            axpy(&mut nv, -(p / g), &v)?;
            self.fold(&mut nb);
            self.fold(&mut nv);
            if nb[c] == 0 {
                // Folding turned the new pivot into E; restore it.
                nb[c] = g;
            }
            self.rows[i] = nb;
            self.reduce_above(i)?;
            v = nv;
        }
    }

    /// Reduces entries above pivot `i` into 0..pivot.
    fn reduce_above(&mut self, i: usize) -> Result<()> {
        let c = self.pivots[i];
        let p = self.rows[i][c];
        let pivot_row = self.rows[i].clone();
        for j in 0..i {
            let k = self.rows[j][c].div_euclid(p);
            if k != 0 {
                axpy(&mut self.rows[j], -k, &pivot_row)?;
                let mut r = std::mem::take(&mut self.rows[j]);
                self.fold(&mut r);
                self.rows[j] = r;
            }
        }
        Ok(())
    }

    /// Canonical representative of v modulo the lattice: pivot coordinates
    /// land in 0..pivot.
    pub fn reduce(&self, v: &[i128]) -> Result<Vec<i128>> {
        let mut v = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let k = v[c].div_euclid(row[c]);
            axpy(&mut v, -k, row)?;
        }
        Ok(v)
    }

    pub fn contains(&self, v: &[i128]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|&x| x == 0))
    }

    /// Integer coefficients expressing v in the basis rows, if v lies in
    /// the lattice.
    pub fn coordinates(&self, v: &[i128]) -> Result<Option<Vec<i128>>> {
        let mut v = v.to_vec();
        let mut out = vec![0i128; self.rows.len()];
        for (k, (row, &c)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if v[c] % row[c] != 0 {
                return Ok(None);
            }
            let q = v[c] / row[c];
            out[k] = q;
            axpy(&mut v, -q, row)?;
        }
        Ok(v.iter().all(|&x| x == 0).then_some(out))
    }
}

/// Nonzero Smith invariants d₁ | d₂ | … of an integer matrix.
pub fn smith_invariants(rows: &[Vec<i128>], cols: usize) -> Result<Vec<i128>> {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .cloned()
        .collect();
    let m = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..m {
                let q = a[i][t].div_euclid(p);
                if q != 0 {
                    let pr = a[t].clone();
                    axpy(&mut a[i], -q, &pr)?;
                }
                if a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(p);
                if q != 0 {
                    for row in a.iter_mut() {
                        let v = row[t];
                        row[j] = add(row[j], mul(-q, v)?)?;
                    }
                }
                if a[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // Enforce divisibility by folding an offending row in.
                let bad = (t + 1..m).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
                match bad {
                    Some(i) => {
                        let r = a[i].clone();
                        axpy(&mut a[t], 1, &r)?;
                    }
                    None => break,
                }
            }
            // Move the smallest remaining entry of row/column t to the pivot.
            let mut best = (t, t);
            for i in t..m {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    Ok(diag)
}

/// Invariant factors of ℤ^dim / rowspan(relations): entries > 1 in
/// divisibility order, then one 0 per free summand.
pub fn invariant_factors(relations: &[Vec<i128>], dim: usize) -> Result<Vec<u64>> {
    let basis = HermiteBasis::from_rows(dim, relations)?;
    factors_of_basis(&basis)
}

fn factors_of_basis(basis: &HermiteBasis) -> Result<Vec<u64>> {
    let diag = smith_invariants(basis.rows(), basis.dim())?;
    let mut out: Vec<u64> = diag.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect();
    out.extend(std::iter::repeat_n(0, basis.dim() - diag.len()));
    Ok(out)
}

/// Basis of the left kernel {x : x·A = 0} of an integer matrix.
pub fn left_kernel(rows: &[Vec<i128>], cols: usize) -> Result<Vec<Vec<i128>>> {
    let m = rows.len();
    let aug: Vec<Vec<i128>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..m).map(|j| i128::from(i == j)));
            v
        })
        .collect();
    let basis = HermiteBasis::from_rows(cols + m, &aug)?;
    Ok(basis
        .rows()
        .iter()
        .filter(|r| r[..cols].iter().all(|&x| x == 0))
        .map(|r| r[cols..].to_vec())
        .collect())
}

/// ℤ^g / rowspan(relations), with optional generator labels.
#[derive(Clone, Debug, Serialize)]
pub struct AbGroupPresentation {
    pub num_generators: usize,
    pub relations: Vec<Vec<i128>>,
    pub generator_labels: Vec<String>,
}

impl AbGroupPresentation {
    pub fn invariant_factors(&self) -> Result<Vec<u64>> {
        invariant_factors(&self.relations, self.num_generators)
    }

    pub fn is_finite(&self) -> Result<bool> {
        Ok(!self.invariant_factors()?.contains(&0))
    }
}

/// Images of our generators, target relations, target dimension.
pub type OutgoingMap<'a> = (&'a [Vec<i128>], &'a [Vec<i128>], usize);

/// Homology of ℤ^dim/R at the middle of `incoming → · → outgoing`.
///
/// `incoming` lists images of the previous generators (rows in ℤ^dim);
/// `outgoing` is `(images of our generators, target relations, target dim)`
/// or `None` for the zero map.
pub fn subquotient(
    dim: usize,
    relations: &[Vec<i128>],
    outgoing: Option<OutgoingMap<'_>>,
    incoming: &[Vec<i128>],
) -> Result<Vec<u64>> {
    let kernel_gens: Vec<Vec<i128>> = match outgoing {
        None => (0..dim)
            .map(|i| {
                let mut v = vec![0; dim];
                v[i] = 1;
                v
            })
            .collect(),
        Some((images, target_rel, target_dim)) => {
            let mut stacked: Vec<Vec<i128>> = images.to_vec();
            stacked.extend(target_rel.iter().cloned());
            left_kernel(&stacked, target_dim)?
                .into_iter()
                .map(|x| x[..dim].to_vec())
                .collect()
        }
    };
    let mut kernel = HermiteBasis::from_rows(dim, &kernel_gens)?;
    for r in relations {
        kernel.insert(r.clone())?;
    }
    let k = kernel.rank();
    let mut denom = HermiteBasis::new(k);
    for r in relations.iter().chain(incoming) {
        let coords = kernel.coordinates(r)?.ok_or_else(|| {
            Error::InvalidStructure("incoming image does not lie in the kernel".into())
        })?;
        denom.insert(coords)?;
    }
    factors_of_basis(&denom)
}

/// A finite abelian group recovered from its addition table by a chain of
/// cyclic extensions: every element is Σ cᵢ·gᵢ with 0 ≤ cᵢ < mᵢ uniquely.
#[derive(Clone, Debug)]
pub struct FiniteAbelianGroup {
    generators: Vec<usize>,
    indices: Vec<u64>,
    relations: Vec<Vec<i128>>,
    coords: Vec<Vec<i128>>,
    by_coords: std::collections::HashMap<Vec<i128>, usize>,
}

impl FiniteAbelianGroup {
    /// `add` must be a group law on 0..size with identity 0.
    pub fn from_table(size: usize, add: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut coords: Vec<Option<Vec<i128>>> = vec![None; size];
        coords[0] = Some(Vec::new());
        let mut members = vec![0usize];
        let mut generators = Vec::new();
        let mut indices = Vec::new();
        let mut relations: Vec<Vec<i128>> = Vec::new();
        while members.len() < size {
            let g = (0..size).find(|&x| coords[x].is_none()).unwrap();
            let r = generators.len();
            // Smallest m with m·g already inside.
            let mut mult = vec![0usize, g];
            while coords[*mult.last().unwrap()].is_none() {
                let next = add(*mult.last().unwrap(), g);
                mult.push(next);
                if mult.len() > size + 1 {
                    return Err(Error::InvalidStructure("table is not a group".into()));
                }
            }
            let m = mult.len() - 1;
            let landing = coords[mult[m]].clone().unwrap();
            let mut rel: Vec<i128> = landing.iter().map(|&c| -c).collect();
            rel.resize(r, 0);
            rel.push(m as i128);
            for c in coords.iter_mut().flatten() {
                c.push(0);
            }
            let base: Vec<usize> = members.clone();
            for (j, &step) in mult.iter().enumerate().take(m).skip(1) {
                for &h in &base {
                    let x = add(h, step);
                    if coords[x].is_some() {
                        return Err(Error::InvalidStructure("table is not a group".into()));
                    }
                    let mut c = coords[h].clone().unwrap();
                    c[r] = j as i128;
                    coords[x] = Some(c);
                    members.push(x);
                }
            }
            generators.push(g);
            indices.push(m as u64);
            relations.push(rel);
        }
        let r = generators.len();
        for rel in relations.iter_mut() {
            rel.resize(r, 0);
        }
        let coords: Vec<Vec<i128>> = coords.into_iter().map(|c| c.unwrap()).collect();
        let by_coords = coords
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        Ok(FiniteAbelianGroup {
            generators,
            indices,
            relations,
            coords,
            by_coords,
        })
    }

    pub fn order(&self) -> usize {
        self.coords.len()
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    /// Triangular relations: row i says mᵢ·gᵢ equals its expansion in the
    /// earlier generators.
    pub fn relations(&self) -> &[Vec<i128>] {
        &self.relations
    }

    pub fn coords(&self, x: usize) -> &[i128] {
        &self.coords[x]
    }

    /// Element with the given coordinates, after normalizing them.
    pub fn element(&self, v: &[i128]) -> Result<usize> {
        let mut v = v.to_vec();
        for i in (0..v.len()).rev() {
            let m = self.indices[i] as i128;
            let q = v[i].div_euclid(m);
            if q != 0 {
                axpy(&mut v, -q, &self.relations[i])?;
            }
        }
        Ok(self.by_coords[&v])
    }

    pub fn invariant_factors(&self) -> Result<Vec<u64>> {
        invariant_factors(&self.relations, self.rank())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_small_matrices() {
        assert_eq!(
            smith_invariants(&[vec![2, 4], vec![6, 8]], 2).unwrap(),
            vec![2, 4]
        );
        assert_eq!(
            smith_invariants(&[vec![4, 0], vec![0, 6]], 2).unwrap(),
            vec![2, 12]
        );
        assert_eq!(
            invariant_factors(&[vec![2, 0, 0]], 3).unwrap(),
            vec![2, 0, 0]
        );
        assert_eq!(invariant_factors(&[vec![1, 1]], 2).unwrap(), vec![0]);
    }

    #[test]
    fn hermite_reduction_is_canonical() {
        let b = HermiteBasis::from_rows(2, &[vec![4, 0], vec![0, 6], vec![2, 3]]).unwrap();
        let r1 = b.reduce(&[1, 1]).unwrap();
        let r2 = b.reduce(&[3, 4]).unwrap();
        assert_eq!(r1, r2);
        assert!(b.contains(&[2, 3]).unwrap());
        assert!(!b.contains(&[1, 0]).unwrap());
        assert_eq!(b.coordinates(&[2, 3]).unwrap().map(|c| c.len()), Some(2));
    }

    #[test]
    fn modulus_keeps_the_same_lattice() {
        let mut a = HermiteBasis::with_modulus(2, 12);
        a.insert(vec![3, 5]).unwrap();
        let b = HermiteBasis::from_rows(2, &[vec![12, 0], vec![0, 12], vec![3, 5]]).unwrap();
        for v in [[3, 5], [1, 0], [0, 4], [9, 3]] {
            assert_eq!(a.contains(&v).unwrap(), b.contains(&v).unwrap());
        }
    }

    #[test]
    fn kernel_of_a_map() {
        let k = left_kernel(&[vec![2], vec![4]], 1).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0] * 2 + k[0][1] * 4, 0);
    }

    #[test]
    fn cayley_table_decomposition() {
        // ℤ/2 × ℤ/4 encoded as x = 4a + b.
        let g = FiniteAbelianGroup::from_table(8, |x, y| {
            ((x / 4 + y / 4) % 2) * 4 + (x % 4 + y % 4) % 4
        })
        .unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.invariant_factors().unwrap(), vec![2, 4]);
        for x in 0..8 {
            assert_eq!(g.element(g.coords(x)).unwrap(), x);
        }
        let z12 = FiniteAbelianGroup::from_table(12, |x, y| (x + y) % 12).unwrap();
        assert_eq!(z12.invariant_factors().unwrap(), vec![12]);
    }

    #[test]
    fn homology_of_multiplication_by_two() {
        // ℤ/4 --(×2)--> ℤ/4: kernel {0, 2} ≅ ℤ/2.
        let rel = vec![vec![4]];
        let out = vec![vec![2]];
        assert_eq!(
            subquotient(1, &rel, Some((&out, &rel, 1)), &[]).unwrap(),
            vec![2]
        );
        // Quotienting by the image of ×2 from the left as well kills it.
        assert_eq!(
            subquotient(1, &rel, Some((&out, &rel, 1)), &[vec![2]]).unwrap(),
            Vec::<u64>::new()
        );
    }
}
