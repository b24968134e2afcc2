//! `trispec` command-line front end.
//!
//! Exit codes: 0 when every verdict passes, 1 when a mathematical verdict
//! fails, 2 for usage and input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use trispec::corpus::{builtin, builtin_corpus, Backend};
use trispec::ideal::enumerate_triideals;
use trispec::io::{read_triring, TriringFile};
use trispec::localization::{localize_at_even, localize_at_odd, localize_at_prime, LocalizationReport};
use trispec::prime::{is_prime_by_definition, parity_of, PrimeParity};
use trispec::quotient::quotient;
use trispec::radical::radical;
use trispec::sheaf::{verify_sheaf_axioms_with, StructurePresheaf, DEFAULT_MAX_COVER_SIZE};
use trispec::spectrum::{basic_opens, closed_sets, open_sets, specialization_dot, specialization_order, trispectrum};
use trispec::validate::{validate_triring, Status};
use trispec::verify::verify_all;
use trispec::{Error, FiniteTriring, IndexSet, Triideal};

#[derive(Parser)]
#[command(name = "trispec", version, about = "Finite triring spectra, localizations and structure sheaves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Builtin triring such as `TE(4,4)`, `TQ-modp(3)` or `TQ-rational`.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
    /// Triring description file.
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Selector {
    /// Index of an odd point of the trispectrum.
    #[arg(long, value_name = "N")]
    at_prime: Option<usize>,
    /// Even element index.
    #[arg(long, value_name = "X")]
    at_even: Option<usize>,
    /// Odd element index.
    #[arg(long, value_name = "X")]
    at_odd: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the triring axioms.
    Validate(Common),
    /// List the points of the trispectrum.
    Spec(Common),
    /// Closed sets, open sets, basic opens and the specialization order.
    Topology(Common),
    /// Enumerate triideals with primality and radicals.
    Ideals(Common),
    /// Localize at an odd prime, an even element or an odd element.
    Localize {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        at: Selector,
    },
    /// Quotient by the triideal with the given enumeration index.
    Quotient {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "N")]
        ideal: usize,
    },
    /// Check the sheaf axioms on every basic open and irredundant cover.
    SheafCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_COVER_SIZE)]
        max_cover_size: usize,
    },
    /// Run every verification section.
    VerifyAll {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_COVER_SIZE)]
        max_cover_size: usize,
    },
    /// Builtin corpus.
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// List the builtin trirings and their expected facts.
    List {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

enum Failure {
    Verdict(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Trinilpotent { .. }
            | Error::EmptyOddIntersection { .. }
            | Error::EvenPrimeLocalization
            | Error::IllDefined { .. }
            | Error::NotInverted { .. } => Failure::Verdict(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verdict(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn load(input: &Input) -> Result<Backend, Failure> {
    match (&input.builtin, &input.file) {
        (Some(name), _) => Ok(builtin(name)?),
        (None, Some(path)) => read_triring(path).map(Backend::Finite).map_err(|e| match Failure::from(e) {
            Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
            f => f,
        }),
        (None, None) => Err(Failure::Input("no input given".into())),
    }
}

/// A finite triring that passes the axioms.
fn load_finite(input: &Input) -> Result<FiniteTriring, Failure> {
    let r = load(input)?.finite()?.clone();
    let rep = validate_triring(&r);
    if let Some(f) = rep.failures().next() {
        return Err(Error::AxiomFailure { id: f.id.clone(), witness: f.witness.clone() }.into());
    }
    Ok(r)
}

fn formats(format: Format, allowed: &[Format], command: &str) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::Input(format!("{command} does not support this output format")))
    }
}

fn emit_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

fn run(command: Command) -> Outcome {
    use Format::*;
    match command {
        Command::Validate(c) => {
            formats(c.format, &[Json, Text], "validate")?;
            let rep = load(&c.input)?.validate();
            match c.format {
                Json => emit_json(&rep),
                _ => print!("{rep}"),
            }
            Ok(rep.passed())
        }
        Command::Spec(c) => spec(c),
        Command::Topology(c) => topology(c),
        Command::Ideals(c) => ideals(c),
        Command::Localize { common, at } => localize(common, at),
        Command::Quotient { common, ideal } => quotient_cmd(common, ideal),
        Command::SheafCheck { common, max_cover_size } => {
            formats(common.format, &[Json, Text], "sheaf-check")?;
            let r = load_finite(&common.input)?;
            let ps = StructurePresheaf::new(&r)?;
            let rep = verify_sheaf_axioms_with(&ps, max_cover_size)?;
            match common.format {
                Json => emit_json(&rep),
                _ => {
                    for open in &rep.basic_opens {
                        for c in &open.covers {
                            let cover: Vec<String> = c.cover.iter().map(|g| g.to_string()).collect();
                            let verdict = if c.identity_axiom && c.gluing_axiom { "PASS" } else { "FAIL" };
                            println!(
                                "{verdict} D({}) cover [{}] identity {} gluing {}",
                                open.generator,
                                cover.join(", "),
                                c.identity_axiom,
                                c.gluing_axiom
                            );
                            if let Some(ce) = &c.counterexample {
                                println!("  counterexample: {}", serde_json::to_string(ce).expect("serializes"));
                            }
                        }
                    }
                }
            }
            Ok(rep.passed)
        }
        Command::VerifyAll { common, max_cover_size } => {
            formats(common.format, &[Json, Text], "verify-all")?;
            let r = load_finite(&common.input)?;
            let rep = verify_all(&r, max_cover_size)?;
            match common.format {
                Json => emit_json(&rep),
                _ => {
                    for s in &rep.sections {
                        let tag = match s.status {
                            Status::Pass => "PASS",
                            Status::Fail => "FAIL",
                            Status::Skipped => "SKIP",
                        };
                        let n: usize = s.checks.iter().map(|c| c.checked).sum();
                        println!("{tag} {} ({n} instances)", s.name);
                        for c in s.checks.iter().filter(|c| !c.passed) {
                            println!("  {}: {}", c.law, c.witness.as_deref().unwrap_or(""));
                        }
                    }
                }
            }
            Ok(rep.passed)
        }
        Command::Corpus(CorpusCommand::List { format }) => {
            formats(format, &[Json, Text], "corpus list")?;
            let corpus = builtin_corpus();
            match format {
                Json => emit_json(&corpus),
                _ => {
                    for e in &corpus {
                        match &e.expected {
                            Some(x) => println!(
                                "{}: {} triideals, {} even and {} odd points, trinilradical {}",
                                e.name, x.triideals, x.even_points, x.odd_points, x.trinilradical
                            ),
                            None => println!("{}: element backend only", e.name),
                        }
                    }
                }
            }
            Ok(true)
        }
    }
}

#[derive(Serialize)]
struct PointOut {
    label: String,
    parity: PrimeParity,
    ideal: Triideal,
}

fn points(r: &FiniteTriring) -> Vec<PointOut> {
    let spec = trispectrum(r);
    (0..spec.len())
        .map(|k| PointOut { label: spec.label(k), parity: spec.points[k].parity, ideal: spec.points[k].ideal.clone() })
        .collect()
}

fn spec(c: Common) -> Outcome {
    let r = load_finite(&c.input)?;
    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct SpecOut {
        ring: String,
        even_points: usize,
        odd_points: usize,
        points: Vec<PointOut>,
    }
    let pts = points(&r);
    match c.format {
        Format::Json => emit_json(&SpecOut {
            ring: r.name().into(),
            even_points: pts.iter().filter(|p| p.parity == PrimeParity::Even).count(),
            odd_points: pts.iter().filter(|p| p.parity == PrimeParity::Odd).count(),
            points: pts,
        }),
        Format::Dot => print!("{}", specialization_dot(&r, &trispectrum(&r))),
        Format::Text => {
            for p in &pts {
                println!("{} {}", p.label, p.ideal);
            }
        }
    }
    Ok(true)
}

fn topology(c: Common) -> Outcome {
    let r = load_finite(&c.input)?;
    let spec = trispectrum(&r);
    let labels = |s: &IndexSet| s.iter().map(|k| spec.label(k)).collect::<Vec<_>>();
    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct Basic {
        generator: String,
        points: Vec<String>,
    }
    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct TopologyOut {
        ring: String,
        points: Vec<PointOut>,
        closed_sets: Vec<Vec<String>>,
        open_sets: Vec<Vec<String>>,
        basic_opens: Vec<Basic>,
        specialization: Vec<(String, String)>,
    }
    let out = TopologyOut {
        ring: r.name().into(),
        points: points(&r),
        closed_sets: closed_sets(&r, &spec).iter().map(|s| labels(&s.points)).collect(),
        open_sets: open_sets(&r, &spec).iter().map(labels).collect(),
        basic_opens: basic_opens(&r, &spec)
            .iter()
            .map(|b| Basic { generator: b.generator.to_string(), points: labels(&b.points) })
            .collect(),
        specialization: specialization_order(&spec).into_iter().map(|(a, b)| (spec.label(a), spec.label(b))).collect(),
    };
    match c.format {
        Format::Json => emit_json(&out),
        Format::Dot => print!("{}", specialization_dot(&r, &spec)),
        Format::Text => {
            for s in &out.closed_sets {
                println!("closed {{{}}}", s.join(", "));
            }
            for b in &out.basic_opens {
                println!("D({}) = {{{}}}", b.generator, b.points.join(", "));
            }
        }
    }
    Ok(true)
}

fn ideals(c: Common) -> Outcome {
    formats(c.format, &[Format::Json, Format::Text], "ideals")?;
    let r = load_finite(&c.input)?;
    #[derive(Serialize)]
    struct IdealOut {
        index: usize,
        ideal: Triideal,
        prime: bool,
        parity: PrimeParity,
        radical: Triideal,
    }
    let out = enumerate_triideals(&r)
        .into_iter()
        .enumerate()
        .map(|(index, i)| {
            Ok(IdealOut {
                index,
                prime: is_prime_by_definition(&r, &i).prime,
                parity: parity_of(&r, &i),
                radical: radical(&r, &i)?,
                ideal: i,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    match c.format {
        Format::Json => emit_json(&out),
        _ => {
            for i in &out {
                let prime = if i.prime { " prime" } else { "" };
                println!("{} {}{prime}, radical {}", i.index, i.ideal, i.radical);
            }
        }
    }
    Ok(true)
}

fn localize(c: Common, at: Selector) -> Outcome {
    formats(c.format, &[Format::Json, Format::Text], "localize")?;
    let r = load_finite(&c.input)?;
    let spec = trispectrum(&r);
    let in_range = |x: usize, n: usize, what: &str| {
        if x < n {
            Ok(x)
        } else {
            Err(Failure::Input(format!("{what} {x} is out of range (0..{n})")))
        }
    };
    let loc = match (at.at_prime, at.at_even, at.at_odd) {
        (Some(k), _, _) => localize_at_prime(&r, &spec.points[in_range(k, spec.len(), "point")?].ideal)?,
        (_, Some(x), _) => localize_at_even(&r, &spec, in_range(x, r.even_size(), "even element")?)?,
        (_, _, Some(x)) => localize_at_odd(&r, in_range(x, r.odd_size(), "odd element")?)?,
        _ => return Err(Failure::Input("no localization selector".into())),
    };
    let rep: LocalizationReport = loc.report();
    match c.format {
        Format::Json => emit_json(&rep),
        _ => println!(
            "{} classes ({} even, {} odd), canonical map bijective: {}",
            rep.class_count, rep.even_classes, rep.odd_classes, rep.canonical_hom_bijective
        ),
    }
    Ok(true)
}

fn quotient_cmd(c: Common, index: usize) -> Outcome {
    formats(c.format, &[Format::Json, Format::Text], "quotient")?;
    let r = load_finite(&c.input)?;
    let all = enumerate_triideals(&r);
    let i = all
        .get(index)
        .ok_or_else(|| Failure::Input(format!("triideal {index} is out of range (0..{})", all.len())))?;
    let (q, _) = quotient(&r, i)?;
    let valid = validate_triring(&q).passed();
    #[derive(Serialize)]
    struct QuotientOut {
        ideal: Triideal,
        size: usize,
        valid: bool,
        triring: TriringFile,
    }
    match c.format {
        Format::Json => emit_json(&QuotientOut { ideal: i.clone(), size: q.size(), valid, triring: TriringFile::from_triring(&q) }),
        _ => println!("{}: {} elements ({} even, {} odd), valid: {valid}", q.name(), q.size(), q.even_size(), q.odd_size()),
    }
    Ok(valid)
}
