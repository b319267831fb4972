//! Plain-text renderings.

use std::fmt::Write;

use gammaspec_core::{AxiomReport, CohomologyReport, GoldenReport, SpectrumSpace};

pub fn axiom_report(r: &AxiomReport) -> String {
    let mut s = String::new();
    if r.passed() {
        s.push_str("pass\n");
        return s;
    }
    let more = if r.truncated { "+" } else { "" };
    let _ = writeln!(s, "fail: {}{more} violations", r.violations.len());
    for v in &r.violations {
        let _ = writeln!(
            s,
            "{:?}  elements {:?}  gammas {:?}",
            v.axiom, v.elements, v.gammas
        );
    }
    s
}

pub fn spectrum(spec: &SpectrumSpace) -> String {
    let t = spec.parent();
    let mut s = String::new();
    let _ = writeln!(s, "{} ideals, {} primes", spec.ideals().len(), spec.len());
    for (i, p) in spec.primes().iter().enumerate() {
        let _ = writeln!(s, "P{i} = {} = {:?}", p.label(t), p.members().to_vec());
    }
    let _ = writeln!(s, "closed sets:");
    for c in spec.closed_sets() {
        let _ = writeln!(s, "  {:?}", c.to_vec());
    }
    let _ = writeln!(s, "T0: {}  discrete: {}", spec.is_t0(), spec.is_discrete());
    s
}

/// Grid with a header row of b values and one row per a.
pub fn slice(gamma: &str, c: usize, rows: &[Vec<usize>]) -> String {
    let n = rows.len();
    let width = (n.max(2) - 1).to_string().len().max(1);
    let corner = format!("{{a b {c}}}_{gamma}");
    let lead = corner.len();
    let mut s = String::new();
    let _ = write!(s, "{corner:<lead$}");
    for b in 0..n {
        let _ = write!(s, " {b:>width$}");
    }
    s.push('\n');
    for (a, row) in rows.iter().enumerate() {
        let _ = write!(s, "{a:<lead$}");
        for v in row {
            let _ = write!(s, " {v:>width$}");
        }
        s.push('\n');
    }
    s
}

/// ℤ/e₁ ⊕ ℤ/e₂ ⊕ …, or 0.
pub fn group(factors: &[u64]) -> String {
    if factors.is_empty() {
        return "0".into();
    }
    factors
        .iter()
        .map(|f| {
            if *f == 0 {
                "Z".into()
            } else {
                format!("Z/{f}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn cohomology(r: &CohomologyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "cover {:?}", r.cover);
    for h in &r.h {
        match (&h.invariant_factors, &h.undefined) {
            (Some(f), _) => {
                let _ = writeln!(s, "H^{} = {}", h.degree, group(f));
            }
            (None, Some(why)) => {
                let _ = writeln!(s, "H^{} undefined: {why}", h.degree);
            }
            (None, None) => {
                let _ = writeln!(s, "H^{} undefined", h.degree);
            }
        }
    }
    let _ = writeln!(
        s,
        "equalizer {}  global sections {}  d∘d = 0: {}",
        r.h0_equalizer, r.global_sections, r.d_squared_zero
    );
    s
}

pub fn claims(r: &GoldenReport) -> String {
    let mut s = String::new();
    for c in &r.claims {
        let mark = if c.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{mark} {:<28} {}", c.id, c.statement);
        if !c.pass {
            let _ = writeln!(s, "     {}", c.detail);
        }
    }
    let _ = writeln!(s, "{} passed, {} failed", r.passed, r.failed);
    s
}
