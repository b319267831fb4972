use crate::raw::RawSemiring;

/// Names of the axioms that fail, each checked by the plainest loop nest.
pub fn naive_axiom_failures(t: &RawSemiring) -> Vec<&'static str> {
    let n = t.n();
    let gs = t.gammas();
    let add = |a: usize, b: usize| t.add[a][b];
    let tr = |a: usize, b: usize, c: usize, g: usize| t.tern[g][a][b][c];
    let mut out = Vec::new();
    let elems = || 0..n;

    if !elems().all(|a| elems().all(|b| add(a, b) == add(b, a))) {
        out.push("add-commutative");
    }
    if !elems().all(|a| elems().all(|b| elems().all(|c| add(add(a, b), c) == add(a, add(b, c))))) {
        out.push("add-associative");
    }
    if !elems().all(|a| add(a, 0) == a) {
        out.push("add-identity");
    }
    let distributive = (0..gs).all(|g| {
        elems().all(|a| {
            elems().all(|b| {
                elems().all(|c| {
                    elems().all(|d| {
                        tr(add(a, d), b, c, g) == add(tr(a, b, c, g), tr(d, b, c, g))
                            && tr(a, add(b, d), c, g) == add(tr(a, b, c, g), tr(a, d, c, g))
                            && tr(a, b, add(c, d), g) == add(tr(a, b, c, g), tr(a, b, d, g))
                    })
                })
            })
        })
    });
    if !distributive {
        out.push("distributive");
    }
    let associative = (0..gs).all(|g| {
        (0..gs).all(|h| {
            elems().all(|a| {
                elems().all(|b| {
                    elems().all(|c| {
                        elems().all(|d| {
                            elems()
                                .all(|e| tr(a, b, tr(c, d, e, g), h) == tr(tr(a, b, c, g), d, e, h))
                        })
                    })
                })
            })
        })
    });
    if !associative {
        out.push("ternary-associative");
    }
    if !(0..gs).all(|g| elems().all(|a| elems().all(|b| tr(a, 0, b, g) == 0))) {
        out.push("zero-absorbing");
    }
    let symmetric = (0..gs).all(|g| {
        elems().all(|a| {
            elems().all(|b| {
                elems().all(|c| {
                    let v = tr(a, b, c, g);
                    v == tr(b, a, c, g) && v == tr(a, c, b, g)
                })
            })
        })
    });
    if !symmetric {
        out.push("commutative");
    }
    out
}
