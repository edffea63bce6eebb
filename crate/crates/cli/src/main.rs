use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crosscut::arrangement::{Arrangement, ArrangementSpec, Chamber, ChamberSet};
use crosscut::catalog::{self, CatalogObject};
use crosscut::congruence::Congruence;
use crosscut::json::{ComplexJson, LabellingJson, PosetJson};
use crosscut::sb::{search_sb, SbOptions, SbVariant};
use crosscut::suite::{self, PropertyReport, RunOptions, Verdict};
use crosscut::theorems as th;
use crosscut::{doubling, Error, FinitePoset, Lattice};

#[derive(Parser)]
#[command(name = "crosscut", version, about = "Exact checks for finite lattices and hyperplane arrangements")]
struct Cli {
    /// Cap the worker pool used by parallel sweeps.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test lattice properties of a poset.
    Check {
        /// Poset JSON file, or `catalog:NAME[:N]`.
        subject: String,
        #[arg(long, value_enum, default_value_t = CheckProperty::All)]
        property: CheckProperty,
    },
    /// Möbius function values.
    Mobius {
        subject: String,
        #[arg(long, value_parser = parse_pair)]
        interval: Option<(String, String)>,
    },
    /// Crosscut complex of an open interval.
    Crosscut {
        subject: String,
        #[arg(long, value_parser = parse_pair)]
        interval: (String, String),
    },
    /// Quotient by the congruence generated by one pair.
    Quotient {
        subject: String,
        #[arg(long, value_parser = parse_pair)]
        collapse: (String, String),
    },
    /// Double a lattice at an order-convex subset.
    Double {
        subject: String,
        #[arg(long, value_delimiter = ',')]
        subset: Vec<String>,
    },
    /// Chambers of an arrangement.
    Chambers {
        /// Arrangement JSON file, or `catalog:NAME[:N]`.
        arrangement: String,
        /// `auto` or a sign vector such as `+-+`.
        #[arg(long, default_value = "auto")]
        base: String,
        /// Include the chamber poset at the base chamber.
        #[arg(long)]
        poset: bool,
    },
    /// Bineighborliness at a base chamber.
    Bineighborly {
        arrangement: String,
        #[arg(long, default_value = "auto")]
        base: String,
    },
    /// Emit a catalog object as JSON.
    Catalog {
        name: String,
        param: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for an SB- or SB′-labelling.
    SbSearch {
        subject: String,
        #[arg(long, value_enum, default_value_t = Variant::Sb)]
        variant: Variant,
        #[arg(long)]
        max_labels: usize,
        #[arg(long, default_value_t = SbOptions::default().node_limit)]
        node_limit: u64,
    },
    /// Run a named verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include per-check wall-clock timings (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckProperty {
    All,
    Lattice,
    CrosscutSimplicial,
    MeetSd,
    JoinSd,
    Sd,
    CongruenceNormal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Sb,
    SbPrime,
}

/// A failure that ends the run with exit code 2.
struct Failure {
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { kind: e.kind(), message: e.to_string() }
    }
}

type Outcome = Result<(Value, bool), Failure>;

fn parse_pair(s: &str) -> Result<(String, String), String> {
    match s.split_once(',') {
        Some((a, b)) if !a.is_empty() && !b.is_empty() => Ok((a.trim().to_string(), b.trim().to_string())),
        _ => Err(format!("expected two names separated by a comma, got {s:?}")),
    }
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure { kind: "io", message: format!("{path}: {e}") })
}

fn catalog_ref(subject: &str) -> Result<Option<CatalogObject>, Failure> {
    let Some(rest) = subject.strip_prefix("catalog:") else {
        return Ok(None);
    };
    let (name, param) = match rest.split_once(':') {
        Some((n, p)) => {
            let p =
                p.parse().map_err(|_| Failure { kind: "usage", message: format!("bad parameter in {subject:?}") })?;
            (n, Some(p))
        }
        None => (rest, None),
    };
    Ok(Some(catalog::named(name, param)?))
}

fn load_poset(subject: &str) -> Result<FinitePoset, Failure> {
    match catalog_ref(subject)? {
        Some(CatalogObject::Lattice(l)) => Ok(l.into_poset()),
        Some(CatalogObject::Arrangement(_)) => {
            Err(Failure { kind: "usage", message: format!("{subject} is an arrangement, not a poset") })
        }
        None => Ok(crosscut::json::parse_poset(&read(subject)?)?),
    }
}

fn load_lattice(subject: &str) -> Result<Lattice, Failure> {
    Ok(Lattice::new(load_poset(subject)?)?)
}

fn load_arrangement(subject: &str) -> Result<Arrangement, Failure> {
    match catalog_ref(subject)? {
        Some(CatalogObject::Arrangement(a)) => Ok(a),
        Some(CatalogObject::Lattice(_)) => {
            Err(Failure { kind: "usage", message: format!("{subject} is a lattice, not an arrangement") })
        }
        None => {
            let spec: ArrangementSpec =
                serde_json::from_str(&read(subject)?).map_err(|e| Failure::from(Error::Parse(e.to_string())))?;
            Ok(Arrangement::from_spec(&spec)?)
        }
    }
}

fn base_chamber(arr: &Arrangement, cs: &ChamberSet, base: &str) -> Result<usize, Failure> {
    let chamber = if base == "auto" { arr.initial_chamber() } else { base.parse::<Chamber>()? };
    Ok(cs.index_of(&chamber)?)
}

fn report(subject: &str, property: &str, witness: Option<Value>, verdict_if_fail: Verdict) -> PropertyReport {
    PropertyReport {
        subject: subject.to_string(),
        property: property.to_string(),
        expected: Verdict::Holds,
        verdict: if witness.is_some() { verdict_if_fail } else { Verdict::Holds },
        witness,
        timing_ms: None,
    }
}

fn check(subject: &str, property: CheckProperty) -> Outcome {
    let poset = load_poset(subject)?;
    let wanted: Vec<CheckProperty> = match property {
        CheckProperty::All => vec![
            CheckProperty::Lattice,
            CheckProperty::CrosscutSimplicial,
            CheckProperty::MeetSd,
            CheckProperty::JoinSd,
            CheckProperty::Sd,
            CheckProperty::CongruenceNormal,
        ],
        p => vec![p],
    };
    let lattice = Lattice::new(poset);
    let mut reports = Vec::new();
    for p in wanted {
        let name = p.to_possible_value().expect("no skipped variants").get_name().to_string();
        let l = match (&lattice, p) {
            (Err(e), CheckProperty::Lattice) => {
                reports.push(report(
                    subject,
                    &name,
                    Some(json!({"error": e.kind(), "message": e.to_string()})),
                    Verdict::Fails,
                ));
                continue;
            }
            (Err(_), _) => {
                reports.push(report(subject, &name, Some(json!({"error": "not a lattice"})), Verdict::Unverified));
                continue;
            }
            (Ok(l), _) => l,
        };
        let witness = match p {
            CheckProperty::All | CheckProperty::Lattice => None,
            CheckProperty::CrosscutSimplicial => th::crosscut_simplicial(l),
            CheckProperty::MeetSd => th::meet_semidistributive(l),
            CheckProperty::JoinSd => th::join_semidistributive(l),
            CheckProperty::Sd => th::semidistributive(l),
            CheckProperty::CongruenceNormal => th::congruence_normal(l),
        };
        reports.push(report(subject, &name, witness, Verdict::Fails));
    }
    let ok = reports.iter().all(|r| r.verdict == Verdict::Holds);
    Ok((json!({"subject": subject, "reports": reports}), ok))
}

fn mobius(subject: &str, interval: Option<(String, String)>) -> Outcome {
    let poset = load_poset(subject)?;
    if let Some((x, y)) = interval {
        let (xi, yi) = (poset.index_of(&x)?, poset.index_of(&y)?);
        let value = poset.mobius(xi, yi)?;
        return Ok((json!({"subject": subject, "interval": [x, y], "mobius": value}), true));
    }
    let table: Vec<Value> = poset
        .mobius_table()
        .into_iter()
        .map(|(x, y, m)| json!({"x": poset.name(x), "y": poset.name(y), "mobius": m}))
        .collect();
    Ok((json!({"subject": subject, "mobius": table}), true))
}

fn crosscut_cmd(subject: &str, (x, y): (String, String)) -> Outcome {
    let l = load_lattice(subject)?;
    let (xi, yi) = (l.index_of(&x)?, l.index_of(&y)?);
    let complex = l.crosscut_complex(xi, yi)?;
    Ok((
        json!({
            "subject": subject,
            "interval": [x, y],
            "complex": ComplexJson::from_complex(&complex),
            "reduced_euler": complex.reduced_euler(),
            "mobius": l.mobius(xi, yi)?,
        }),
        true,
    ))
}

fn quotient(subject: &str, (x, y): (String, String)) -> Outcome {
    let l = load_lattice(subject)?;
    let theta = Congruence::principal(&l, l.index_of(&x)?, l.index_of(&y)?);
    let (q, _) = theta.quotient(&l)?;
    Ok((serde_json::to_value(PosetJson::from_poset(&q)).expect("plain data"), true))
}

fn double(subject: &str, subset: &[String]) -> Outcome {
    let l = load_lattice(subject)?;
    let ids = subset.iter().map(|s| l.index_of(s)).collect::<crosscut::Result<Vec<_>>>()?;
    let d = doubling::double(&l, &ids)?;
    Ok((serde_json::to_value(PosetJson::from_poset(d.lattice())).expect("plain data"), true))
}

fn chambers(subject: &str, base: &str, with_poset: bool) -> Outcome {
    let arr = load_arrangement(subject)?;
    let cs = arr.chambers()?;
    let b = base_chamber(&arr, &cs, base)?;
    let mut out = json!({
        "subject": subject,
        "hyperplanes": arr.labels(),
        "base": cs.chamber(b).to_string(),
        "chambers": cs.chambers().iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    if with_poset {
        out["poset"] = serde_json::to_value(PosetJson::from_poset(&cs.poset(b)?)).expect("plain data");
    }
    Ok((out, true))
}

fn bineighborly(subject: &str, base: &str) -> Outcome {
    let arr = load_arrangement(subject)?;
    let cs = arr.chambers()?;
    let b = base_chamber(&arr, &cs, base)?;
    let r =
        report(subject, &format!("bineighborly(base={})", cs.chamber(b)), th::bineighborly_at(&cs, b), Verdict::Fails);
    let ok = r.verdict == Verdict::Holds;
    let mut value = serde_json::to_value(r).expect("plain data");
    let all: Vec<_> = cs.bineighborly_violations(b).iter().map(|v| cs.name_violation(v)).collect();
    value["violations"] = serde_json::to_value(all).expect("plain data");
    Ok((value, ok))
}

fn catalog_cmd(name: &str, param: Option<usize>, out: Option<PathBuf>) -> Outcome {
    let value = match catalog::named(name, param)? {
        CatalogObject::Lattice(l) => serde_json::to_value(PosetJson::from_poset(&l)),
        CatalogObject::Arrangement(a) => serde_json::to_value(a.to_spec()),
    }
    .expect("plain data");
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&value).expect("plain data");
        fs::write(&path, text + "\n")
            .map_err(|e| Failure { kind: "io", message: format!("{}: {e}", path.display()) })?;
        return Ok((json!({"written": path.display().to_string()}), true));
    }
    Ok((value, true))
}

fn sb_search(subject: &str, variant: Variant, max_labels: usize, node_limit: u64) -> Outcome {
    let l = load_lattice(subject)?;
    let v = match variant {
        Variant::Sb => SbVariant::Sb,
        Variant::SbPrime => SbVariant::SbPrime,
    };
    let options = SbOptions { node_limit, ..SbOptions::default() };
    let found = search_sb(&l, max_labels, v, options)?;
    let value = json!({
        "subject": subject,
        "max_labels": max_labels,
        "found": found.is_some(),
        "labelling": found.as_ref().map(|lab| LabellingJson::from_labelling(&l, lab)),
    });
    Ok((value, found.is_some()))
}

fn verify(name: &str, seed: u64, timings: bool) -> Outcome {
    let report = suite::run_suite(name, &RunOptions { seed, timings })?;
    let ok = report.all_match();
    Ok((serde_json::to_value(report).expect("plain data"), ok))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Check { subject, property } => check(&subject, property),
        Command::Mobius { subject, interval } => mobius(&subject, interval),
        Command::Crosscut { subject, interval } => crosscut_cmd(&subject, interval),
        Command::Quotient { subject, collapse } => quotient(&subject, collapse),
        Command::Double { subject, subset } => double(&subject, &subset),
        Command::Chambers { arrangement, base, poset } => chambers(&arrangement, &base, poset),
        Command::Bineighborly { arrangement, base } => bineighborly(&arrangement, &base),
        Command::Catalog { name, param, out } => catalog_cmd(&name, param, out),
        Command::SbSearch { subject, variant, max_labels, node_limit } => {
            sb_search(&subject, variant, max_labels, node_limit)
        }
        Command::Verify { suite, seed, timings } => verify(&suite, seed, timings),
    }
}

fn emit_error(kind: &str, message: &str) -> ExitCode {
    println!("{}", json!({"error": {"kind": kind, "message": message}}));
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => return emit_error("usage", e.to_string().trim()),
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            return emit_error("usage", &e.to_string());
        }
    }
    match run(cli) {
        Ok((value, ok)) => {
            println!("{}", serde_json::to_string_pretty(&value).expect("plain data"));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => emit_error(f.kind, &f.message),
    }
}
