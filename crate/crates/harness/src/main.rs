//! The `domcheck` command line: classification, topologies, relations,
//! theorem suites, symbolic model queries, map checks, fuzzing, and DOT
//! export for finite posets.
//!
//! Exit codes: 0 on success, 1 when an assertion failed, 2 on input or usage
//! errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use domcheck::doc::PosetDocument;
use domcheck::emit::{emit_poset, emit_report, emit_topology, input_digest, EmitFormat};
use domcheck::suite::{run_suite, Defect, SuiteSpec};
use domcheck::parse_poset_text;
use domcheck_core::maps::{check_map, directions};
use domcheck_core::models::ModelRelation;
use domcheck_core::relations::{aux_relation, RelationKind};
use domcheck_core::topology::{generate_topology, TopologyKind};

#[derive(Parser)]
#[command(name = "domcheck", version, about = "Order-theoretic structure checks on finite posets and symbolic dcpos")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Suppress informational output, keep outcomes and exit codes
    #[arg(long, global = true, default_value_t = false)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl From<Format> for EmitFormat {
    fn from(f: Format) -> EmitFormat {
        match f {
            Format::Text => EmitFormat::Text,
            Format::Json => EmitFormat::Json,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TopologyArg {
    Upper,
    Scott,
    StrongScott,
    Lower,
    Lawson,
    StrongLawson,
}

impl From<TopologyArg> for TopologyKind {
    fn from(k: TopologyArg) -> TopologyKind {
        match k {
            TopologyArg::Upper => TopologyKind::Upper,
            TopologyArg::Scott => TopologyKind::Scott,
            TopologyArg::StrongScott => TopologyKind::StrongScott,
            TopologyArg::Lower => TopologyKind::Lower,
            TopologyArg::Lawson => TopologyKind::Lawson,
            TopologyArg::StrongLawson => TopologyKind::StrongLawson,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RelationArg {
    WayBelow,
    StrongWayBelow,
    Prec,
    Triangle,
    WayBelowLocal,
}

impl From<RelationArg> for RelationKind {
    fn from(k: RelationArg) -> RelationKind {
        match k {
            RelationArg::WayBelow => RelationKind::WayBelow,
            RelationArg::StrongWayBelow => RelationKind::StrongWayBelow,
            RelationArg::Prec => RelationKind::Prec,
            RelationArg::Triangle => RelationKind::Triangle,
            RelationArg::WayBelowLocal => RelationKind::WayBelowLocal,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelRelationArg {
    WayBelow,
    StrongWayBelow,
    Prec,
}

impl From<ModelRelationArg> for ModelRelation {
    fn from(k: ModelRelationArg) -> ModelRelation {
        match k {
            ModelRelationArg::WayBelow => ModelRelation::WayBelow,
            ModelRelationArg::StrongWayBelow => ModelRelation::StrongWayBelow,
            ModelRelationArg::Prec => ModelRelation::Prec,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DefectArg {
    Transitivity,
    Antisymmetry,
    Reflexivity,
}

impl From<DefectArg> for Defect {
    fn from(d: DefectArg) -> Defect {
        match d {
            DefectArg::Transitivity => Defect::Transitivity,
            DefectArg::Antisymmetry => Defect::Antisymmetry,
            DefectArg::Reflexivity => Defect::Reflexivity,
        }
    }
}

#[derive(Args)]
struct ModelQuery {
    /// Built-in model name
    name: String,

    /// Enumeration bound for the query window
    #[arg(long, default_value_t = 40)]
    bound: u64,

    /// Classify the model
    #[arg(long, conflicts_with = "relation")]
    classify: bool,

    /// Decide one relation: KIND X Y
    #[arg(long, num_args = 3, value_names = ["KIND", "X", "Y"])]
    relation: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every poset in a document
    Classify { file: PathBuf },

    /// Generate one of the six topologies of the document's first poset
    Topology {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: TopologyArg,
        /// List every open set
        #[arg(long, default_value_t = false)]
        list_opens: bool,
    },

    /// Compute an auxiliary relation on the document's first poset
    Relations {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: RelationArg,
    },

    /// Run the theorem suite on every poset in a document
    Theorems { file: PathBuf },

    /// Query a built-in symbolic model
    Model(ModelQuery),

    /// Check a named map declared in a document
    Map {
        file: PathBuf,
        #[arg(long)]
        name: String,
    },

    /// Generate posets and run the invariant suite on each
    Fuzz {
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sweep all labeled posets instead of sampling
        #[arg(long, default_value_t = false)]
        exhaustive: bool,
        /// Corrupt each generated relation to exercise the validation path
        #[arg(long, value_enum, hide = true)]
        inject_defect: Option<DefectArg>,
    },

    /// Emit a document's first poset as a DOT diagram
    Dot { file: PathBuf },
}

enum CliError {
    Input(String),
    AssertionFailed,
}

fn read_document(path: &PathBuf) -> Result<(PosetDocument, String), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let doc = parse_poset_text(&text).map_err(|e| CliError::Input(e.to_string()))?;
    Ok((doc, input_digest(text.as_bytes())))
}

fn primary<'d>(
    doc: &'d PosetDocument,
    path: &std::path::Path,
) -> Result<&'d domcheck::doc::NamedPoset, CliError> {
    doc.primary()
        .ok_or_else(|| CliError::Input(format!("{}: no poset declared", path.display())))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let format: EmitFormat = cli.format.into();
    let quiet = cli.quiet;
    let finish_report = |report: domcheck::RunReport| -> Result<(), CliError> {
        if !quiet {
            print!(
                "{}",
                emit_report(&report, format).map_err(|e| CliError::Input(e.to_string()))?
            );
        }
        if report.failed() {
            Err(CliError::AssertionFailed)
        } else {
            Ok(())
        }
    };

    match cli.command {
        Command::Classify { file } => {
            let (doc, digest) = read_document(&file)?;
            let report = run_suite(&SuiteSpec::DocumentClassify(doc), digest)
                .map_err(|e| CliError::Input(e.to_string()))?;
            finish_report(report)
        }
        Command::Theorems { file } => {
            let (doc, digest) = read_document(&file)?;
            let report = run_suite(&SuiteSpec::DocumentTheorems(doc), digest)
                .map_err(|e| CliError::Input(e.to_string()))?;
            finish_report(report)
        }
        Command::Topology {
            file,
            kind,
            list_opens,
        } => {
            let (doc, _) = read_document(&file)?;
            let named = primary(&doc, &file)?;
            let topology = generate_topology(&named.poset, kind.into());
            if quiet {
                return Ok(());
            }
            if list_opens || format == EmitFormat::Json {
                print!(
                    "{}",
                    emit_topology(&topology, format).map_err(|e| CliError::Input(e.to_string()))?
                );
            } else {
                println!(
                    "topology {} on `{}`: {} opens over {} points",
                    topology.kind().label(),
                    named.name,
                    topology.opens().len(),
                    topology.carrier_size()
                );
            }
            Ok(())
        }
        Command::Relations { file, kind } => {
            let (doc, _) = read_document(&file)?;
            let named = primary(&doc, &file)?;
            let relation = aux_relation(&named.poset, kind.into())
                .map_err(|e| CliError::Input(e.to_string()))?;
            if quiet {
                return Ok(());
            }
            let poset = &named.poset;
            let mut pairs: Vec<(String, String)> = Vec::new();
            for x in poset.elements() {
                for y in poset.elements() {
                    if relation.holds(x, y) {
                        pairs.push((poset.name(x).to_string(), poset.name(y).to_string()));
                    }
                }
            }
            match format {
                EmitFormat::Json => {
                    let value = serde_json::json!({
                        "poset": named.name,
                        "kind": relation.kind().label(),
                        "pairs": pairs,
                    });
                    println!("{}", serde_json::to_string_pretty(&value).expect("static json"));
                }
                _ => {
                    println!(
                        "relation {} on `{}`: {} pairs",
                        relation.kind().label(),
                        named.name,
                        pairs.len()
                    );
                    for (x, y) in pairs {
                        println!("{x} {y}");
                    }
                }
            }
            Ok(())
        }
        Command::Model(query) => {
            let digest = input_digest(
                format!("{}:{}:{:?}:{}", query.name, query.bound, query.relation, query.classify)
                    .as_bytes(),
            );
            let spec = if let Some(args) = &query.relation {
                let kind = match args[0].as_str() {
                    "way-below" => ModelRelation::WayBelow,
                    "strong-way-below" => ModelRelation::StrongWayBelow,
                    "prec" => ModelRelation::Prec,
                    other => {
                        return Err(CliError::Input(format!(
                            "unknown model relation `{other}` (expected way-below, strong-way-below, prec)"
                        )))
                    }
                };
                SuiteSpec::ModelRelation {
                    name: query.name.clone(),
                    kind,
                    x: args[1].clone(),
                    y: args[2].clone(),
                    bound: query.bound,
                }
            } else {
                // --classify is the default action
                SuiteSpec::ModelClassify {
                    name: query.name.clone(),
                    bound: query.bound,
                }
            };
            let report = run_suite(&spec, digest).map_err(|e| CliError::Input(e.to_string()))?;
            finish_report(report)
        }
        Command::Map { file, name } => {
            let (doc, _) = read_document(&file)?;
            let named = doc
                .map(&name)
                .ok_or_else(|| CliError::Input(format!("no map named `{name}` in {}", file.display())))?;
            let report = check_map(&named.map);
            let dirs = directions(&named.map);
            if !quiet {
                match format {
                    EmitFormat::Json => {
                        let value = serde_json::json!({
                            "map": name,
                            "source": named.source,
                            "target": named.target,
                            "monotone": report.monotone,
                            "scott_continuous": report.scott_continuous,
                            "strong_scott_continuous": report.strong_scott_continuous,
                            "base_to_topology": report.base_to_topology,
                            "base_to_base": report.base_to_base,
                            "upset_equation": report.upset_equation,
                            "preserves_finite_sups": report.preserves_finite_sups,
                            "counterexample": report.counterexample.as_ref().map(|w| {
                                serde_json::json!({
                                    "directed": w.directed.render(&named.map.source),
                                    "x": named.map.source.name(w.x),
                                })
                            }),
                            "implications_hold": dirs.implications_hold(),
                        });
                        println!("{}", serde_json::to_string_pretty(&value).expect("static json"));
                    }
                    _ => {
                        println!("map `{name}`: {} -> {}", named.source, named.target);
                        println!("monotone                 {}", report.monotone);
                        println!("scott-continuous         {}", report.scott_continuous);
                        println!("strong-scott-continuous  {}", report.strong_scott_continuous);
                        println!("base-to-topology         {}", report.base_to_topology);
                        println!("base-to-base             {}", report.base_to_base);
                        println!("upset-equation           {}", report.upset_equation);
                        match report.preserves_finite_sups {
                            Some(v) => println!("preserves-finite-sups    {v}"),
                            None => println!("preserves-finite-sups    n/a"),
                        }
                        if let Some(w) = &report.counterexample {
                            println!(
                                "counterexample           D={} x={}",
                                w.directed.render(&named.map.source),
                                named.map.source.name(w.x)
                            );
                        }
                        println!("implications-hold        {}", dirs.implications_hold());
                    }
                }
            }
            if dirs.implications_hold() {
                Ok(())
            } else {
                Err(CliError::AssertionFailed)
            }
        }
        Command::Fuzz {
            n,
            count,
            seed,
            exhaustive,
            inject_defect,
        } => {
            let digest = input_digest(format!("fuzz:{n}:{count}:{seed}:{exhaustive}").as_bytes());
            let report = run_suite(
                &SuiteSpec::Fuzz {
                    n,
                    count,
                    seed,
                    exhaustive,
                    inject: inject_defect.map(Into::into),
                },
                digest,
            )
            .map_err(|e| CliError::Input(e.to_string()))?;
            finish_report(report)
        }
        Command::Dot { file } => {
            let (doc, _) = read_document(&file)?;
            let named = primary(&doc, &file)?;
            print!(
                "{}",
                emit_poset(&named.name, &named.poset, EmitFormat::Dot)
                    .map_err(|e| CliError::Input(e.to_string()))?
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::AssertionFailed) => ExitCode::from(1),
        Err(CliError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
