use std::io::Read;

use gammaspec_core::{
    build_modular_module, cech_complex, flatness_probe, generated_mult_system, golden_suite,
    localize, localize_module, parse_semiring, tensor_product, tor1_cyclic,
    tor1_cyclic_two_generators, verify_axioms_limited, AxiomReport, Caps, Error, FlatnessReport,
    FractionSheaf, GammaModule, MultiplicativeSystem, SectionFamily, SpectrumReport, SpectrumSpace,
    TernarySemiring, TorReport,
};
use serde::Serialize;

use crate::args::{Cli, Command, Format, SystemArg};
use crate::{text, Failure, Outcome};

const DEFAULT_CHECK_PRESET: &str = r#"{"kind":"modular","n":12,"gamma":[1,5]}"#;

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let caps = caps(cli);
    let t = load(cli, &caps)?;
    match &cli.command {
        Command::Verify { limit } => verify(cli, &t, *limit),
        Command::Spectrum => spectrum(cli, &t, &caps),
        Command::Table { gamma, c } => table(cli, &t, gamma, *c),
        Command::Localize { system, module } => localize_cmd(cli, &t, &caps, system, module),
        Command::Sections { element, module } => sections(cli, &t, &caps, *element, module),
        Command::Cech { cover, module } => cech(cli, &t, &caps, cover, module),
        Command::Tensor { m1, m2 } => tensor(cli, &t, m1, m2),
        Command::Tor {
            m1,
            m2,
            second_presentation,
            flatness,
        } => tor(cli, &t, *m1, m2, *second_presentation, *flatness),
        Command::PaperCheck => reference_claims(cli, &t, &caps),
    }
}

fn caps(cli: &Cli) -> Caps {
    let mut caps = Caps::default();
    if let Some(c) = cli.cap_carrier {
        caps.carrier = c;
        caps.enumeration = c;
    }
    if let Some(i) = cli.cap_ideals {
        caps.ideals = i;
    }
    caps
}

fn load(cli: &Cli, caps: &Caps) -> Result<TernarySemiring, Failure> {
    let json = match (&cli.source.input, &cli.source.preset) {
        (Some(path), _) if path.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::malformed(format!("cannot read standard input: {e}")))?;
            s
        }
        (Some(path), _) => std::fs::read_to_string(path)
            .map_err(|e| Failure::malformed(format!("cannot read {}: {e}", path.display())))?,
        (None, Some(preset)) => preset.clone(),
        (None, None) if matches!(cli.command, Command::PaperCheck) => {
            DEFAULT_CHECK_PRESET.to_string()
        }
        (None, None) => return Err(Failure::usage("one of --input or --preset is required")),
    };
    Ok(parse_semiring(&json, caps)?)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn unsupported(cli: &Cli, command: &str) -> Failure {
    Failure::usage(format!(
        "{command} does not support --format {}",
        match cli.format {
            Format::Json => "json",
            Format::Dot => "dot",
            Format::Text => "text",
        }
    ))
}

/// `regular`, `zero`, or m for ℤ/m over a modular ℤ/n with m | n.
fn module(t: &TernarySemiring, spec: &str) -> Result<GammaModule, Failure> {
    match spec {
        "regular" => Ok(GammaModule::regular(t)),
        "zero" => Ok(GammaModule::zero(t)),
        _ => {
            let m: usize = spec.parse().map_err(|_| {
                Failure::usage(format!(
                    "module must be `regular`, `zero` or a divisor of n, got {spec:?}"
                ))
            })?;
            build_modular_module(t, m).map_err(|e| Failure::usage(e.to_string()))
        }
    }
}

fn verify(cli: &Cli, t: &TernarySemiring, limit: usize) -> Result<Outcome, Failure> {
    let report = verify_axioms_limited(t, limit);
    let body = match cli.format {
        Format::Json => json(&report),
        Format::Text => text::axiom_report(&report),
        Format::Dot => return Err(unsupported(cli, "verify")),
    };
    Ok(Outcome {
        body,
        violations: !report.passed(),
    })
}

#[derive(Serialize)]
struct BasicOpen {
    element: usize,
    primes: Vec<usize>,
}

#[derive(Serialize)]
struct SpectrumOutput {
    #[serde(flatten)]
    spectrum: SpectrumReport,
    basic_opens: Vec<BasicOpen>,
    zariski: AxiomReport,
}

fn spectrum(cli: &Cli, t: &TernarySemiring, caps: &Caps) -> Result<Outcome, Failure> {
    let spec = SpectrumSpace::new(t, caps)?;
    let zariski = spec.verify_zariski_axioms(cli.seed);
    let violations = !zariski.passed();
    let body = match cli.format {
        Format::Json => json(&SpectrumOutput {
            spectrum: spec.report(),
            basic_opens: (0..t.size())
                .map(|a| BasicOpen {
                    element: a,
                    primes: spec.basic_open(a).to_vec(),
                })
                .collect(),
            zariski,
        }),
        Format::Dot => spec.hasse_dot(true),
        Format::Text => text::spectrum(&spec),
    };
    Ok(Outcome { body, violations })
}

#[derive(Serialize)]
struct TableOutput {
    gamma: String,
    c: usize,
    rows: Vec<Vec<usize>>,
}

fn table(cli: &Cli, t: &TernarySemiring, gamma: &str, c: usize) -> Result<Outcome, Failure> {
    let g = t.gamma_index(gamma).ok_or_else(|| {
        Failure::usage(format!(
            "unknown gamma {gamma:?}; known: {}",
            t.gamma_names().join(", ")
        ))
    })?;
    if c >= t.size() {
        return Err(Failure::usage(format!(
            "c = {c} is outside the carrier 0..{}",
            t.size()
        )));
    }
    let rows = t.slice(g, c);
    let body = match cli.format {
        Format::Json => json(&TableOutput {
            gamma: gamma.to_string(),
            c,
            rows,
        }),
        Format::Text => text::slice(gamma, c, &rows),
        Format::Dot => return Err(unsupported(cli, "table")),
    };
    Ok(Outcome {
        body,
        violations: false,
    })
}

fn system(
    t: &TernarySemiring,
    caps: &Caps,
    arg: &SystemArg,
) -> Result<MultiplicativeSystem, Failure> {
    if let Some(gens) = &arg.generators {
        return Ok(generated_mult_system(t, gens)?);
    }
    if let Some(a) = arg.element {
        return Ok(generated_mult_system(t, &[a])?);
    }
    let i = arg.prime.expect("clap requires one system argument");
    let spec = SpectrumSpace::new(t, caps)?;
    let p = spec.primes().get(i).ok_or_else(|| {
        Failure::usage(format!(
            "prime index {i} out of range; the spectrum has {} primes",
            spec.len()
        ))
    })?;
    Ok(MultiplicativeSystem::complement_of_prime(t, p)?)
}

#[derive(Serialize)]
#[serde(tag = "target", rename_all = "lowercase")]
enum LocalizeOutput<S, M> {
    Semiring(S),
    Module(M),
}

fn localize_cmd(
    cli: &Cli,
    t: &TernarySemiring,
    caps: &Caps,
    arg: &SystemArg,
    module_spec: &Option<String>,
) -> Result<Outcome, Failure> {
    if cli.format != Format::Json {
        return Err(unsupported(cli, "localize"));
    }
    let sys = system(t, caps, arg)?;
    let out = match module_spec {
        None => LocalizeOutput::Semiring(localize(t, &sys, caps)?.report()),
        Some(spec) => {
            LocalizeOutput::Module(localize_module(&module(t, spec)?, &sys, caps)?.report())
        }
    };
    Ok(Outcome {
        body: json(&out),
        violations: false,
    })
}

fn sheaf(
    t: &TernarySemiring,
    caps: &Caps,
    module_spec: &Option<String>,
) -> Result<FractionSheaf, Failure> {
    let spec = SpectrumSpace::new(t, caps)?;
    Ok(match module_spec {
        None => FractionSheaf::structure(&spec, caps)?,
        Some(m) => FractionSheaf::associated(&spec, &module(t, m)?, caps)?,
    })
}

#[derive(Serialize)]
struct SectionsOutput {
    element: usize,
    open: Vec<usize>,
    num_sections: usize,
    basic_iso: bool,
    degenerate: bool,
    localized_classes: usize,
    map: Vec<usize>,
    well_defined: bool,
    injective: bool,
    surjective: bool,
    group_complete: bool,
    addition_failure: Option<String>,
    sections: Vec<SectionFamily>,
}

fn sections(
    cli: &Cli,
    t: &TernarySemiring,
    caps: &Caps,
    a: usize,
    module_spec: &Option<String>,
) -> Result<Outcome, Failure> {
    if cli.format != Format::Json {
        return Err(unsupported(cli, "sections"));
    }
    t.check_element("element", a)
        .map_err(|e| Failure::usage(e.to_string()))?;
    let sheaf = sheaf(t, caps, module_spec)?;
    let cmp = sheaf.compare_basic_sections(a)?;
    let space = sheaf.sections(&sheaf.spectrum().basic_open(a))?;
    let basic_iso = cmp.is_isomorphism();
    let out = SectionsOutput {
        element: a,
        open: cmp.open,
        num_sections: space.len(),
        basic_iso,
        degenerate: cmp.degenerate,
        localized_classes: cmp.localized_classes,
        map: cmp.map,
        well_defined: cmp.well_defined,
        injective: cmp.injective,
        surjective: cmp.surjective,
        group_complete: space.is_group_complete(),
        addition_failure: space.addition_failure().map(str::to_string),
        sections: space.sections().to_vec(),
    };
    Ok(Outcome {
        body: json(&out),
        violations: !basic_iso,
    })
}

fn cech(
    cli: &Cli,
    t: &TernarySemiring,
    caps: &Caps,
    cover: &[usize],
    module_spec: &Option<String>,
) -> Result<Outcome, Failure> {
    if let Some(&a) = cover.iter().find(|&&a| a >= t.size()) {
        return Err(Failure::usage(format!(
            "cover element {a} is outside the carrier"
        )));
    }
    let sheaf = sheaf(t, caps, module_spec)?;
    let complex = match cech_complex(&sheaf, cover) {
        Err(e @ Error::NonCovering { .. }) => return Err(Failure::usage(e.to_string())),
        other => other?,
    };
    let report = complex.report()?;
    let violations = !report.higher_vanish();
    let body = match cli.format {
        Format::Json => json(&report),
        Format::Text => text::cohomology(&report),
        Format::Dot => return Err(unsupported(cli, "cech")),
    };
    Ok(Outcome { body, violations })
}

fn tensor(cli: &Cli, t: &TernarySemiring, m1: &str, m2: &str) -> Result<Outcome, Failure> {
    let tp = tensor_product(&module(t, m1)?, &module(t, m2)?)?;
    let report = tp.report();
    let body = match cli.format {
        Format::Json => json(&report),
        Format::Text => format!("{}\n", text::group(&report.invariant_factors)),
        Format::Dot => return Err(unsupported(cli, "tensor")),
    };
    Ok(Outcome {
        body,
        violations: false,
    })
}

#[derive(Serialize)]
struct TorOutput {
    m1: usize,
    #[serde(flatten)]
    tor: TorReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    second_presentation: Option<TorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    presentations_agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    flatness: Option<FlatnessReport>,
}

fn tor(
    cli: &Cli,
    t: &TernarySemiring,
    m1: usize,
    m2: &str,
    second: bool,
    flatness: bool,
) -> Result<Outcome, Failure> {
    let n = module(t, m2)?;
    let usage = |e: Error| match e {
        Error::NotDivisor { .. } | Error::NotModular => Failure::usage(e.to_string()),
        e => e.into(),
    };
    let tor = tor1_cyclic(t, m1, &n).map_err(usage)?;
    let second_presentation = if second {
        Some(tor1_cyclic_two_generators(t, m1, &n).map_err(usage)?)
    } else {
        None
    };
    let presentations_agree = second_presentation
        .as_ref()
        .map(|s| s.invariant_factors == tor.invariant_factors);
    let flatness = if flatness {
        Some(flatness_probe(t, &n).map_err(usage)?)
    } else {
        None
    };
    let violations = presentations_agree == Some(false);
    let body = match cli.format {
        Format::Json => json(&TorOutput {
            m1,
            tor,
            second_presentation,
            presentations_agree,
            flatness,
        }),
        Format::Text => format!("{}\n", text::group(&tor.invariant_factors)),
        Format::Dot => return Err(unsupported(cli, "tor")),
    };
    Ok(Outcome { body, violations })
}

fn reference_claims(cli: &Cli, t: &TernarySemiring, caps: &Caps) -> Result<Outcome, Failure> {
    let report = golden_suite(t, caps);
    let body = match cli.format {
        Format::Json => json(&report),
        Format::Text => text::claims(&report),
        Format::Dot => return Err(unsupported(cli, "paper-check")),
    };
    Ok(Outcome {
        body,
        violations: !report.all_pass(),
    })
}
