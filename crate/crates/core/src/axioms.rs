//! Exhaustive axiom verification with replayable witnesses.

use rayon::prelude::*;
use serde::Serialize;

use crate::semiring::TernarySemiring;

/// Identifies the law a witness violates. Variant order is the canonical
/// report order and also the order in which checks run (cheap scans first).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    /// `[a]`: a + 0 ≠ a or 0 + a ≠ a.
    AdditiveIdentity,
    /// `[a, b]`
    AdditiveCommutativity,
    /// `[a, b, c]`
    AdditiveAssociativity,
    /// `[a, b]`, `[γ]`: {a 0 b}_γ ≠ 0.
    ZeroAbsorption,
    /// `[a, b, c]`, `[γ]`: {abc}_γ ≠ {bac}_γ.
    SwapFirstSecond,
    /// `[a, b, c]`, `[γ]`: {abc}_γ ≠ {acb}_γ.
    SwapSecondThird,
    /// `[a, b, c]`, `[γ]`: {abc}_γ ≠ {cba}_γ.
    SwapFirstThird,
    /// `[a, b, c]`, `[γ]`: {abc}_γ ≠ {bca}_γ.
    RotateLeft,
    /// `[a, b, c]`, `[γ]`: {abc}_γ ≠ {cab}_γ.
    RotateRight,
    /// `[a, a', b, c]`, `[γ]`
    DistributiveFirst,
    /// `[a, b, b', c]`, `[γ]`
    DistributiveSecond,
    /// `[a, b, c, c']`, `[γ]`
    DistributiveThird,
    /// `[a, b, c, d, e]`, `[γ, δ]`: {ab{cde}_γ}_δ ≠ {{abc}_γ de}_δ.
    TernaryAssociativity,
    /// Module laws; `[a, x, b]`, `[γ]`: {a x b}_γ ≠ {b x a}_γ.
    ActionSymmetry,
    /// `[a, b, c, d, x]`, `[γ, δ]`: {a {b x c}_γ d}_δ ≠ {{abc}_γ x d}_δ.
    ActionAssociativity,
    /// Homomorphism sends 0 elsewhere; no witness elements.
    ZeroPreserved,
    /// `[a, b]`: f(a + b) ≠ f(a) + f(b).
    Additive,
    /// `[a, b, c]`, `[γ]`: f({abc}_γ) ≠ {f(a) f(b) f(c)}_{γ'}.
    TernaryCompatible,
    /// Spectrum axioms; `elements` carry ideal indices.
    VanishingOfZero,
    VanishingOfWhole,
    IntersectionToUnion,
    SumToIntersection,
    /// `[p, q]` prime indices not separated by any basic open.
    T0Separation,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub elements: Vec<usize>,
    pub gammas: Vec<usize>,
}

impl Violation {
    pub fn new(axiom: Axiom, elements: Vec<usize>, gammas: Vec<usize>) -> Self {
        Violation {
            axiom,
            elements,
            gammas,
        }
    }

    /// Re-evaluates a semiring-axiom witness against `t`; true when the
    /// violation is reproduced. Witnesses of other kinds never replay here.
    pub fn replays(&self, t: &TernarySemiring) -> bool {
        let n = t.size();
        let gc = t.gamma_count();
        if self.elements.iter().any(|&x| x >= n) || self.gammas.iter().any(|&g| g >= gc) {
            return false;
        }
        let e = &self.elements;
        let g = &self.gammas;
        match self.axiom {
            Axiom::AdditiveIdentity => t.add(e[0], 0) != e[0] || t.add(0, e[0]) != e[0],
            Axiom::AdditiveCommutativity => t.add(e[0], e[1]) != t.add(e[1], e[0]),
            Axiom::AdditiveAssociativity => {
                t.add(t.add(e[0], e[1]), e[2]) != t.add(e[0], t.add(e[1], e[2]))
            }
            Axiom::ZeroAbsorption => t.tern(e[0], 0, e[1], g[0]) != 0,
            Axiom::SwapFirstSecond
            | Axiom::SwapSecondThird
            | Axiom::SwapFirstThird
            | Axiom::RotateLeft
            | Axiom::RotateRight => {
                let [p, q, r] = permuted(self.axiom, e[0], e[1], e[2]);
                t.tern(e[0], e[1], e[2], g[0]) != t.tern(p, q, r, g[0])
            }
            Axiom::DistributiveFirst => {
                t.tern(t.add(e[0], e[1]), e[2], e[3], g[0])
                    != t.add(
                        t.tern(e[0], e[2], e[3], g[0]),
                        t.tern(e[1], e[2], e[3], g[0]),
                    )
            }
            Axiom::DistributiveSecond => {
                t.tern(e[0], t.add(e[1], e[2]), e[3], g[0])
                    != t.add(
                        t.tern(e[0], e[1], e[3], g[0]),
                        t.tern(e[0], e[2], e[3], g[0]),
                    )
            }
            Axiom::DistributiveThird => {
                t.tern(e[0], e[1], t.add(e[2], e[3]), g[0])
                    != t.add(
                        t.tern(e[0], e[1], e[2], g[0]),
                        t.tern(e[0], e[1], e[3], g[0]),
                    )
            }
            Axiom::TernaryAssociativity => {
                t.tern(e[0], e[1], t.tern(e[2], e[3], e[4], g[0]), g[1])
                    != t.tern(t.tern(e[0], e[1], e[2], g[0]), e[3], e[4], g[1])
            }
            _ => false,
        }
    }
}

fn permuted(axiom: Axiom, a: usize, b: usize, c: usize) -> [usize; 3] {
    match axiom {
        Axiom::SwapFirstSecond => [b, a, c],
        Axiom::SwapSecondThird => [a, c, b],
        Axiom::SwapFirstThird => [c, b, a],
        Axiom::RotateLeft => [b, c, a],
        Axiom::RotateRight => [c, a, b],
        _ => [a, b, c],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub verdict: Verdict,
    pub violations: Vec<Violation>,
    /// True when the violation limit was reached and scanning stopped.
    pub truncated: bool,
}

impl AxiomReport {
    pub fn from_violations(mut violations: Vec<Violation>, limit: usize) -> Self {
        violations.sort();
        let truncated = violations.len() >= limit && limit > 0;
        violations.truncate(limit);
        let verdict = if violations.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        AxiomReport {
            verdict,
            violations,
            truncated,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Runs `row` for every leading index in parallel; each call pushes at most
/// `limit` violations in lexicographic order. Results are concatenated in
/// leading-index order, so the outcome is independent of scheduling.
pub(crate) fn scan_rows<F>(rows: usize, limit: usize, row: F) -> Vec<Violation>
where
    F: Fn(usize, &mut Vec<Violation>) + Sync,
{
    let chunks: Vec<Vec<Violation>> = (0..rows)
        .into_par_iter()
        .map(|a| {
            let mut out = Vec::new();
            row(a, &mut out);
            out.truncate(limit);
            out
        })
        .collect();
    let mut all: Vec<Violation> = chunks.into_iter().flatten().collect();
    all.truncate(limit);
    all
}

/// Exhaustively checks every defining law over the whole carrier and Γ.
/// All six permutations are checked for commutativity, although only the
/// two transpositions {bac} and {acb} are part of the definition.
pub fn verify_axioms(t: &TernarySemiring) -> AxiomReport {
    verify_axioms_limited(t, 100)
}

pub fn verify_axioms_limited(t: &TernarySemiring, limit: usize) -> AxiomReport {
    let limit = limit.max(1);
    let n = t.size();
    let gc = t.gamma_count();
    let mut found: Vec<Violation> = Vec::new();

    let checks: [&(dyn Fn() -> Vec<Violation> + Sync); 7] = [
        &|| {
            scan_rows(n, limit, |a, out| {
                if t.add(a, 0) != a || t.add(0, a) != a {
                    out.push(Violation::new(Axiom::AdditiveIdentity, vec![a], vec![]));
                }
            })
        },
        &|| {
            scan_rows(n, limit, |a, out| {
                for b in 0..n {
                    if out.len() >= limit {
                        return;
                    }
                    if t.add(a, b) != t.add(b, a) {
                        out.push(Violation::new(
                            Axiom::AdditiveCommutativity,
                            vec![a, b],
                            vec![],
                        ));
                    }
                }
            })
        },
        &|| {
            scan_rows(n, limit, |a, out| {
                for b in 0..n {
                    let ab = t.add(a, b);
                    for c in 0..n {
                        if out.len() >= limit {
                            return;
                        }
                        if t.add(ab, c) != t.add(a, t.add(b, c)) {
                            out.push(Violation::new(
                                Axiom::AdditiveAssociativity,
                                vec![a, b, c],
                                vec![],
                            ));
                        }
                    }
                }
            })
        },
        &|| {
            scan_rows(n, limit, |a, out| {
                for b in 0..n {
                    for g in 0..gc {
                        if out.len() >= limit {
                            return;
                        }
                        if t.tern(a, 0, b, g) != 0 {
                            out.push(Violation::new(Axiom::ZeroAbsorption, vec![a, b], vec![g]));
                        }
                    }
                }
            })
        },
        &|| {
            let perms = [
                Axiom::SwapFirstSecond,
                Axiom::SwapSecondThird,
                Axiom::SwapFirstThird,
                Axiom::RotateLeft,
                Axiom::RotateRight,
            ];
            let mut all = Vec::new();
            for axiom in perms {
                all.extend(scan_rows(n, limit, |a, out| {
                    for b in 0..n {
                        for c in 0..n {
                            for g in 0..gc {
                                if out.len() >= limit {
                                    return;
                                }
                                let [p, q, r] = permuted(axiom, a, b, c);
                                if t.tern(a, b, c, g) != t.tern(p, q, r, g) {
                                    out.push(Violation::new(axiom, vec![a, b, c], vec![g]));
                                }
                            }
                        }
                    }
                }));
            }
            all
        },
        &|| {
            let mut all = Vec::new();
            for axiom in [
                Axiom::DistributiveFirst,
                Axiom::DistributiveSecond,
                Axiom::DistributiveThird,
            ] {
                all.extend(scan_rows(n, limit, |x0, out| {
                    for x1 in 0..n {
                        for x2 in 0..n {
                            for x3 in 0..n {
                                for g in 0..gc {
                                    if out.len() >= limit {
                                        return;
                                    }
                                    let (lhs, rhs) = match axiom {
                                        Axiom::DistributiveFirst => (
                                            t.tern(t.add(x0, x1), x2, x3, g),
                                            t.add(t.tern(x0, x2, x3, g), t.tern(x1, x2, x3, g)),
                                        ),
                                        Axiom::DistributiveSecond => (
                                            t.tern(x0, t.add(x1, x2), x3, g),
                                            t.add(t.tern(x0, x1, x3, g), t.tern(x0, x2, x3, g)),
                                        ),
                                        _ => (
                                            t.tern(x0, x1, t.add(x2, x3), g),
                                            t.add(t.tern(x0, x1, x2, g), t.tern(x0, x1, x3, g)),
                                        ),
                                    };
                                    if lhs != rhs {
                                        out.push(Violation::new(
                                            axiom,
                                            vec![x0, x1, x2, x3],
                                            vec![g],
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }));
            }
            all
        },
        &|| {
            scan_rows(n, limit, |a, out| {
                for b in 0..n {
                    for c in 0..n {
                        for d in 0..n {
                            for e in 0..n {
                                for g in 0..gc {
                                    let inner = t.tern(c, d, e, g);
                                    let left = t.tern(a, b, c, g);
                                    for h in 0..gc {
                                        if t.tern(a, b, inner, h) != t.tern(left, d, e, h) {
                                            out.push(Violation::new(
                                                Axiom::TernaryAssociativity,
                                                vec![a, b, c, d, e],
                                                vec![g, h],
                                            ));
                                            if out.len() >= limit {
                                                return;
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            })
        },
    ];

    for check in checks {
        let mut batch = check();
        batch.sort();
        found.extend(batch);
        if found.len() >= limit {
            break;
        }
    }
    AxiomReport::from_violations(found, limit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z12_passes() {
        let t = TernarySemiring::modular(12, &[1, 5]).unwrap();
        assert!(verify_axioms(&t).passed());
    }

    #[test]
    fn absorption_violation_is_reported_and_replays() {
        let t = TernarySemiring::modular(3, &[1]).unwrap();
        let bad = t.with_ternary_entry(1, 0, 1, 0, 1).unwrap();
        let report = verify_axioms(&bad);
        assert!(!report.passed());
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == Axiom::ZeroAbsorption && v.elements == vec![1, 1]));
        assert!(report.violations.iter().all(|v| v.replays(&bad)));
    }

    #[test]
    fn non_commutative_addition_is_caught() {
        let t = TernarySemiring::modular(3, &[1]).unwrap();
        let mut add = t.add_table();
        add[1][2] = 1;
        let bad = TernarySemiring::from_tables(
            &add,
            &t.ternary_tables(),
            t.gamma_names().to_vec(),
            None,
            &Default::default(),
        )
        .unwrap();
        let report = verify_axioms(&bad);
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == Axiom::AdditiveCommutativity));
        assert!(report.violations.iter().all(|v| v.replays(&bad)));
    }

    #[test]
    fn limit_keeps_canonical_prefix() {
        let t = TernarySemiring::modular(6, &[1]).unwrap();
        let bad = t.with_ternary_entry(2, 3, 4, 0, 5).unwrap();
        let full = verify_axioms_limited(&bad, usize::MAX);
        let short = verify_axioms_limited(&bad, 3);
        assert_eq!(short.violations[..], full.violations[..3]);
        assert!(short.truncated);
    }
}
