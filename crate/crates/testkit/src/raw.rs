/// A ternary Γ-semiring as plain tables: `add[a][b]`, `tern[g][a][b][c]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawSemiring {
    pub add: Vec<Vec<usize>>,
    pub tern: Vec<Vec<Vec<Vec<usize>>>>,
}

impl RawSemiring {
    pub fn modular(n: usize, gamma: &[usize]) -> Self {
        let add = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let tern = gamma
            .iter()
            .map(|&g| {
                (0..n)
                    .map(|a| {
                        (0..n)
                            .map(|b| (0..n).map(|c| g * a * b * c % n).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        RawSemiring { add, tern }
    }

    pub fn n(&self) -> usize {
        self.add.len()
    }

    pub fn gammas(&self) -> usize {
        self.tern.len()
    }
}

/// A Γ-module as plain tables: `add[x][y]`, `act[g][a][x][b]` for {a x b}_g.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawModule {
    pub add: Vec<Vec<usize>>,
    pub act: Vec<Vec<Vec<Vec<usize>>>>,
}

impl RawModule {
    /// ℤ/m over ℤ/n acting by γ·a·x·b mod m.
    pub fn modular(n: usize, gamma: &[usize], m: usize) -> Self {
        let add = (0..m)
            .map(|x| (0..m).map(|y| (x + y) % m).collect())
            .collect();
        let act = gamma
            .iter()
            .map(|&g| {
                (0..n)
                    .map(|a| {
                        (0..m)
                            .map(|x| (0..n).map(|b| g * a * x * b % m).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        RawModule { add, act }
    }

    /// The semiring acting on itself.
    pub fn regular(t: &RawSemiring) -> Self {
        RawModule {
            add: t.add.clone(),
            act: t.tern.clone(),
        }
    }

    /// The submodule on `members` (ascending), relabelled 0..len.
    pub fn restrict(&self, members: &[usize]) -> Self {
        let pos = |v: usize| members.iter().position(|&m| m == v).expect("closed subset");
        let add = members
            .iter()
            .map(|&x| members.iter().map(|&y| pos(self.add[x][y])).collect())
            .collect();
        let act = self
            .act
            .iter()
            .map(|per_g| {
                per_g
                    .iter()
                    .map(|per_a| {
                        members
                            .iter()
                            .map(|&x| per_a[x].iter().map(|&v| pos(v)).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        RawModule { add, act }
    }

    pub fn size(&self) -> usize {
        self.add.len()
    }

    /// Smallest k > 0 with k·x = 0 for every x, when the module is a group.
    pub fn exponent(&self) -> usize {
        let order = |x: usize| {
            let (mut k, mut y) = (1, x);
            while y != 0 {
                y = self.add[y][x];
                k += 1;
                assert!(k <= self.size() + 1, "not a group");
            }
            k
        };
        (0..self.size())
            .map(order)
            .fold(1, |a, b| a / gcd(a, b) * b)
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
