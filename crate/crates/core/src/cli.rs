//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification or consistency check failed,
//! 2 bad invocation. Errors are printed to stderr as one JSON line.

use std::collections::BTreeSet;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::charcalc::{character, weyl_dimension};
use crate::constructions::{
    lemma_a1_sequence, verify_prv_chain, w0_antifixed_weight, ConstructionTrace, Derivation,
};
use crate::error::{Error, Result};
use crate::perfectmonoid::{
    bounded_perfect_closure, classify, enumerate_perfect, verify_theorem_a, MonoidSpec,
    PerfectDescriptor, WeightBox, DEFAULT_BOX,
};
use crate::rootdata::{LatticeSpec, RootDatum, Weight};
use crate::tensor::{prv_component, tensor_decompose, x_support};
use crate::weyl::WeylWord;

#[derive(Parser, Debug)]
#[command(
    name = "weightlab",
    version,
    about = "Weights, tensor products and perfect submonoids of dominant weights"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct Common {
    /// Cartan type, e.g. A2, D4, A1xB2
    #[arg(long = "type")]
    cartan_type: Option<String>,
    /// `sc`, `adjoint` or a JSON lattice object
    #[arg(long, default_value = "sc")]
    lattice: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct MonoidArgs {
    #[command(flatten)]
    common: Common,
    /// Generators separated by ';', coordinates by ',' or '|'
    #[arg(long, default_value = "")]
    generators: String,
    /// JSON monoid spec file, instead of --type/--lattice/--generators
    #[arg(long)]
    spec: Option<String>,
    #[arg(long = "box", default_value_t = DEFAULT_BOX)]
    bound: i64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose L(lhs) ⊗ L(rhs)
    Decompose {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
    /// Dominant weight multiplicities of L(weight)
    Character {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Box-truncated perfect closure of the generators
    Closure(MonoidArgs),
    /// Symbolic descriptor of the perfect closure
    Classify(MonoidArgs),
    /// Perfect submonoids with the given component support
    Enumerate {
        #[command(flatten)]
        common: Common,
        /// `all` or a list of 1-based factors such as `1,2`
        #[arg(long, default_value = "all")]
        support: String,
    },
    /// Compare the box closure with the predicted member set
    Verify(MonoidArgs),
    /// PRV-chain construction of a w0-antifixed weight
    Construct {
        #[command(flatten)]
        common: Common,
        /// Starting weight ω (defaults to ρ)
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
        /// Run the single-factor sequence for this 1-based factor
        #[arg(long)]
        factor: Option<usize>,
        /// Weight μ whose shifts μ + step are tracked
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
    },
    /// Random check that PRV components are summands
    PrvCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Largest coordinate of the random weights
        #[arg(long = "box", default_value_t = DEFAULT_BOX)]
        bound: i64,
    },
}

/// Parses `1,0|2` style weights.
pub fn parse_weight(text: &str) -> Result<Weight> {
    let parts: Vec<&str> = text.split([',', '|']).map(str::trim).collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::Usage(format!("malformed weight {text:?}")));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<i64>()
                .map_err(|_| Error::Usage(format!("malformed coordinate {p:?} in {text:?}")))
        })
        .collect::<Result<Vec<_>>>()
        .map(Weight::new)
}

/// Parses `;`-separated weights; the empty string is the empty list.
pub fn parse_weight_list(text: &str) -> Result<Vec<Weight>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse_weight)
        .collect()
}

fn datum(common: &Common) -> Result<RootDatum> {
    let t = common
        .cartan_type
        .as_deref()
        .ok_or_else(|| Error::Usage("--type is required".into()))?;
    let lattice: LatticeSpec = common.lattice.parse()?;
    RootDatum::new(t, lattice)
}

fn weight_for(d: &RootDatum, text: &str) -> Result<Weight> {
    let w = parse_weight(text)?;
    d.check_weight(&w)?;
    Ok(w)
}

fn lattice_name(l: &LatticeSpec) -> String {
    match l {
        LatticeSpec::SimplyConnected => "sc".into(),
        LatticeSpec::Adjoint => "adjoint".into(),
        other => serde_json::to_string(other).expect("lattice serializes"),
    }
}

fn monoid_spec(args: &MonoidArgs) -> Result<MonoidSpec> {
    match &args.spec {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Usage(format!("cannot read {path}: {e}")))?;
            MonoidSpec::from_json(&text)
        }
        None => {
            let d = datum(&args.common)?;
            let gens = parse_weight_list(&args.generators)?;
            for g in &gens {
                d.check_weight(g)?;
            }
            MonoidSpec::new(d, gens)
        }
    }
}

fn weight_box(bound: i64) -> Result<WeightBox> {
    if bound < 0 {
        return Err(Error::Usage(format!("box bound {bound} is negative")));
    }
    Ok(WeightBox::new(bound))
}

/// Output of one verb: the payload, its text rendering and the exit code.
struct Report {
    json: String,
    text: String,
    status: i32,
}

impl Report {
    fn ok(value: impl Serialize, text: String) -> Report {
        Report {
            json: serde_json::to_string(&value).expect("serializable"),
            text,
            status: 0,
        }
    }
}

fn header(pairs: &[(&str, String)]) -> String {
    let body: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("# {}\n", body.join(" "))
}

/// Left-aligned columns separated by two spaces.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<w$}", w = widths[c]))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn weight_lines(ws: &BTreeSet<Weight>) -> String {
    ws.iter().map(|w| format!("{w}\n")).collect()
}

fn descriptor_rows(ds: &[PerfectDescriptor]) -> String {
    let mut rows = vec![vec![
        "support".into(),
        "order".into(),
        "cocenter_subgroup".into(),
    ]];
    for d in ds {
        rows.push(vec![
            format!("{:?}", d.support),
            d.cocenter_subgroup.order().to_string(),
            format!("{:?}", d.cocenter_subgroup.elements()),
        ]);
    }
    table(&rows)
}

fn monoid_header(spec: &MonoidSpec, bx: Option<WeightBox>) -> Vec<(&'static str, String)> {
    let mut h = vec![
        ("type", spec.datum.cartan_type().to_string()),
        ("lattice", lattice_name(spec.datum.lattice())),
        (
            "generators",
            spec.generators
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(";"),
        ),
    ];
    if let Some(b) = bx {
        h.push(("box", b.bound.to_string()));
    }
    h
}

fn trace_text(trace: &ConstructionTrace) -> String {
    let mut rows = vec![vec!["#".into(), "weight".into(), "derivation".into()]];
    for (i, s) in trace.steps.iter().enumerate() {
        let how = match &s.derivation {
            Derivation::Generator => "generator".to_string(),
            Derivation::Sum { left, right } => format!("sum {left} {right}"),
            Derivation::Prv { left, word, right } => {
                format!("prv {left} {:?} {right}", word.letters())
            }
        };
        rows.push(vec![i.to_string(), s.weight.to_string(), how]);
    }
    table(&rows)
}

fn execute(cmd: Command) -> Result<(Report, Format)> {
    match cmd {
        Command::Decompose { common, lhs, rhs } => {
            let d = datum(&common)?;
            let (a, b) = (weight_for(&d, &lhs)?, weight_for(&d, &rhs)?);
            let dec = tensor_decompose(&d, &a, &b)?;
            let mut rows = vec![vec!["weight".into(), "mult".into(), "dim".into()]];
            for (nu, m) in dec.summands.iter() {
                rows.push(vec![
                    nu.to_string(),
                    m.to_string(),
                    weyl_dimension(&d, nu)?.to_string(),
                ]);
            }
            let text = header(&[
                ("type", d.cartan_type().to_string()),
                ("lhs", a.to_string()),
                ("rhs", b.to_string()),
            ]) + &table(&rows);
            Ok((Report::ok(&dec, text), common.format))
        }
        Command::Character { common, weight } => {
            let d = datum(&common)?;
            let lam = weight_for(&d, &weight)?;
            let ch = character(&d, &lam)?;
            let mut rows = vec![vec!["weight".into(), "mult".into()]];
            rows.extend(ch.iter().map(|(w, m)| vec![w.to_string(), m.to_string()]));
            let text = header(&[
                ("type", d.cartan_type().to_string()),
                ("weight", lam.to_string()),
                ("dim", weyl_dimension(&d, &lam)?.to_string()),
            ]) + &table(&rows);
            Ok((Report::ok(&ch, text), common.format))
        }
        Command::Closure(args) => {
            let spec = monoid_spec(&args)?;
            let bx = weight_box(args.bound)?;
            let members = bounded_perfect_closure(&spec, bx)?;
            let text = header(&monoid_header(&spec, Some(bx))) + &weight_lines(&members);
            let value = json!({ "box": bx.bound, "members": members });
            Ok((Report::ok(value, text), args.common.format))
        }
        Command::Classify(args) => {
            let spec = monoid_spec(&args)?;
            let desc = classify(&spec);
            let text =
                header(&monoid_header(&spec, None)) + &descriptor_rows(std::slice::from_ref(&desc));
            Ok((Report::ok(&desc, text), args.common.format))
        }
        Command::Enumerate { common, support } => {
            let d = datum(&common)?;
            let support: BTreeSet<usize> = match support.trim() {
                "all" => (1..=d.factor_count()).collect(),
                "" | "none" => BTreeSet::new(),
                list => list
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Usage(format!("bad factor index {s:?}")))
                    })
                    .collect::<Result<_>>()?,
            };
            let ds = enumerate_perfect(&d, &support)?;
            let text = header(&[
                ("type", d.cartan_type().to_string()),
                ("lattice", lattice_name(d.lattice())),
                ("support", format!("{support:?}")),
                ("count", ds.len().to_string()),
            ]) + &descriptor_rows(&ds);
            Ok((Report::ok(&ds, text), common.format))
        }
        Command::Verify(args) => {
            let spec = monoid_spec(&args)?;
            let bx = weight_box(args.bound)?;
            let report = verify_theorem_a(&spec, bx)?;
            let mut text = header(&monoid_header(&spec, Some(bx)));
            text += &format!(
                "equal: {}\nmissing_from_prediction: {}\nunreached_in_box: {}\n",
                report.equal,
                report.missing_from_prediction.len(),
                report.unreached_in_box.len()
            );
            let status = if report.sound() { 0 } else { 1 };
            let mut r = Report::ok(&report, text);
            r.status = status;
            Ok((r, args.common.format))
        }
        Command::Construct {
            common,
            weight,
            factor,
            mu,
        } => {
            let d = datum(&common)?;
            let omega = match weight {
                Some(w) => weight_for(&d, &w)?,
                None => d.weyl_vector().clone(),
            };
            let trace = match (factor, mu) {
                (Some(_), Some(_)) => {
                    return Err(Error::Usage("--factor and --mu are exclusive".into()))
                }
                (Some(k), None) => lemma_a1_sequence(&d, k, &omega)?,
                (None, mu) => {
                    let mu = match mu {
                        Some(m) => weight_for(&d, &m)?,
                        None => Weight::zero(d.rank()),
                    };
                    w0_antifixed_weight(&d, &omega, &mu)?
                }
            };
            let verified = verify_prv_chain(&d, &trace)?;
            let text = header(&[
                ("type", d.cartan_type().to_string()),
                ("omega", omega.to_string()),
                ("final", trace.final_weight.to_string()),
                ("verified", verified.to_string()),
            ]) + &trace_text(&trace);
            let mut r = Report::ok(&trace, text);
            r.status = if verified { 0 } else { 1 };
            Ok((r, common.format))
        }
        Command::PrvCheck {
            common,
            seed,
            count,
            bound,
        } => {
            let d = datum(&common)?;
            if bound < 0 {
                return Err(Error::Usage(format!("box bound {bound} is negative")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut failures = Vec::new();
            let random_weight = |rng: &mut ChaCha8Rng| {
                Weight::new((0..d.rank()).map(|_| rng.gen_range(0..=bound)).collect())
            };
            for _ in 0..count {
                let a = random_weight(&mut rng);
                let b = random_weight(&mut rng);
                let len = rng.gen_range(0..=2 * d.positive_roots().len());
                let word = WeylWord::new((0..len).map(|_| rng.gen_range(1..=d.rank())).collect());
                let nu = prv_component(&d, &a, &b, &word)?;
                if !x_support(&d, &a, &b)?.contains(&nu) {
                    failures.push(json!({ "lhs": a, "rhs": b, "word": word, "component": nu }));
                }
            }
            let text = header(&[
                ("type", d.cartan_type().to_string()),
                ("seed", seed.to_string()),
                ("count", count.to_string()),
                ("box", bound.to_string()),
            ]) + &format!("failures: {}\n", failures.len());
            let status = if failures.is_empty() { 0 } else { 1 };
            let value = json!({ "seed": seed, "count": count, "box": bound, "failures": failures });
            let mut r = Report::ok(value, text);
            r.status = status;
            Ok((r, common.format))
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => 1,
        _ => 2,
    }
}

fn report_error(err: &mut dyn Write, kind: &str, message: &str) {
    let line = json!({ "error": kind, "message": message });
    let _ = writeln!(err, "{line}");
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    report_error(err, "usage", "a subcommand is required; see --help");
                    2
                }
                _ => {
                    let rendered = e.render().to_string();
                    let message: Vec<&str> = rendered
                        .lines()
                        .map(str::trim)
                        .filter(|l| {
                            !l.is_empty()
                                && !l.starts_with("Usage:")
                                && !l.starts_with("For more information")
                        })
                        .collect();
                    report_error(
                        err,
                        "usage",
                        message.join(" ").trim_start_matches("error: "),
                    );
                    2
                }
            };
        }
    };
    match execute(cli.command) {
        Ok((report, format)) => {
            let body = match format {
                Format::Json => format!("{}\n", report.json),
                Format::Text => report.text,
            };
            let _ = out.write_all(body.as_bytes());
            report.status
        }
        Err(e) => {
            report_error(err, e.kind(), &e.to_string());
            exit_code(&e)
        }
    }
}
