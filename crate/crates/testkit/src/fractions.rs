use crate::raw::RawModule;

/// Number of classes of M × S under the transitive closure of
/// (x, s) ~ (y, t) iff {u, x, {ttt}_γ}_δ = {u, y, {sss}_η}_δ for some
/// u ∈ S and γ, δ, η. The semiring case is `RawModule::regular`.
///
/// The closure is Floyd-Warshall on a dense boolean matrix.
pub fn naive_fraction_classes(
    cube: &[Vec<Vec<Vec<usize>>>],
    m: &RawModule,
    system: &[usize],
) -> usize {
    let gs = cube.len();
    let nm = m.size();
    let pairs: Vec<(usize, usize)> = (0..nm)
        .flat_map(|x| system.iter().map(move |&s| (x, s)))
        .collect();
    let p = pairs.len();
    let cubes = |s: usize| (0..gs).map(move |g| cube[g][s][s][s]);
    let related = |(x, s): (usize, usize), (y, t): (usize, usize)| {
        system.iter().any(|&u| {
            (0..gs).any(|d| {
                cubes(t).any(|tc| cubes(s).any(|sc| m.act[d][u][x][tc] == m.act[d][u][y][sc]))
            })
        })
    };
    let mut r = vec![vec![false; p]; p];
    for i in 0..p {
        for j in 0..p {
            r[i][j] = i == j || related(pairs[i], pairs[j]) || related(pairs[j], pairs[i]);
        }
    }
    for k in 0..p {
        for i in 0..p {
            if r[i][k] {
                for j in 0..p {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    (0..p).filter(|&i| (0..i).all(|j| !r[i][j])).count()
}
