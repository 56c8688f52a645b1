use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use log::info;
use ndfluents::config::{Config, Settings};
use ndfluents::core::axiom::{axioms_from_graph, axioms_to_graph};
use ndfluents::core::baseline::size_report;
use ndfluents::core::population::{self, DEFAULT_BASE};
use ndfluents::core::query::evaluate;
use ndfluents::core::reasoner::{report, validate};
use ndfluents::core::{AnnotatedStatement, Axiom, Graph, Iri, Reasoner, Violation};
use ndfluents::ingest;
use ndfluents::rdf::{self, Format};
use serde_json::json;

/// Contextual statements with NdFluents: ontology generation,
/// contextualization, reasoning, validation and queries.
#[derive(Debug, Parser)]
#[command(name = "ndfluents", version)]
struct Cli {
    /// TOML run configuration; flags override its keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    overrides: Overrides,
    /// More log output on standard error (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Overrides {
    /// contexts-in-context, multi-context-part or combined-extent.
    #[arg(long, global = true)]
    model: Option<String>,
    /// Nesting order for contexts-in-context, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    order: Option<Vec<String>>,
    /// suffix or hash.
    #[arg(long, global = true)]
    minting: Option<String>,
    #[arg(long, global = true)]
    separator: Option<String>,
    /// related or keep.
    #[arg(long, global = true)]
    predicates: Option<String>,
    #[arg(long, global = true)]
    no_datatype_axioms: bool,
    #[arg(long, global = true)]
    no_restriction_axioms: bool,
    #[arg(long, global = true)]
    no_same_extent: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write one Turtle file per ontology module.
    GenOntology {
        #[arg(short, long)]
        out_dir: PathBuf,
        /// Also write `predicates.ttl` for the predicates these statements use.
        #[arg(long)]
        statements: Option<PathBuf>,
        #[arg(long)]
        bundles: Option<PathBuf>,
    },
    /// Turn a population estimate CSV into annotated statements.
    IngestCsv {
        input: PathBuf,
        #[arg(long, default_value = DEFAULT_BASE)]
        base: String,
        /// Statement CSV; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write N-Quads here instead, with `--bundles` for the bundle file.
        #[arg(long, requires = "bundles")]
        nquads: Option<PathBuf>,
        #[arg(long)]
        bundles: Option<PathBuf>,
        /// Context descriptions (interval and source graphs).
        #[arg(long)]
        descriptions: Option<PathBuf>,
    },
    /// Rewrite annotated statements onto contextual parts.
    Contextualize {
        /// Statement CSV, or N-Quads with `--bundles`.
        input: PathBuf,
        #[arg(long)]
        bundles: Option<PathBuf>,
        /// Graphs merged into the output, such as context descriptions.
        #[arg(long)]
        descriptions: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        format: Option<Format>,
        /// Also write the matching ontology as Turtle.
        #[arg(long)]
        ontology: Option<PathBuf>,
    },
    /// Read annotated statements back from a contextual graph.
    Decontextualize {
        input: PathBuf,
        #[arg(long)]
        format: Option<Format>,
        /// Statement CSV, or N-Quads (`.nq`) with `--bundles`.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        bundles: Option<PathBuf>,
        /// Keep statements with one of these contexts.
        #[arg(long)]
        context: Vec<String>,
    },
    /// Check a contextual graph; exits with 1 when violations are found.
    Validate {
        input: PathBuf,
        #[arg(long)]
        format: Option<Format>,
        /// Ontology files; the generated modules are used when absent.
        #[arg(long)]
        ontology: Vec<PathBuf>,
        /// Machine-readable JSON report.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Saturate a graph and write the derived triples.
    Reason {
        input: PathBuf,
        #[arg(long)]
        format: Option<Format>,
        #[arg(long)]
        ontology: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        output_format: Option<Format>,
    },
    /// Evaluate a pattern file and print CSV.
    Query {
        input: PathBuf,
        query: PathBuf,
        #[arg(long)]
        format: Option<Format>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Triple counts of every encoding of a statement set, as CSV.
    Stats {
        input: PathBuf,
        #[arg(long)]
        bundles: Option<PathBuf>,
    },
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading standard input")?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_output(path: Option<&Path>, data: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, data).with_context(|| format!("cannot write {}", p.display())),
        None => io::stdout()
            .write_all(data)
            .context("writing standard output"),
    }
}

fn format_of(path: &Path, explicit: Option<Format>) -> Result<Format> {
    explicit.or_else(|| Format::from_path(path)).ok_or_else(|| {
        anyhow!(
            "cannot tell the RDF format of {}; pass --format",
            path.display()
        )
    })
}

fn load_graph(path: &Path, format: Option<Format>) -> Result<Graph> {
    let text = read_input(path)?;
    let graphs = rdf::parse(&text, format_of(path, format)?, None)
        .with_context(|| format!("parsing {}", path.display()))?;
    let mut out = Graph::new();
    for g in &graphs {
        out.extend_from(g);
    }
    info!("read {} triples from {}", out.len(), path.display());
    Ok(out)
}

fn render(graph: &Graph, format: Format, settings: &Settings) -> String {
    match format {
        Format::NTriples => rdf::write_ntriples(graph),
        Format::NQuads => rdf::write_nquads(std::slice::from_ref(graph)),
        Format::Turtle => rdf::write_turtle(graph, &settings.prefixes()),
    }
}

fn load_statements(
    path: &Path,
    bundles: Option<&Path>,
    settings: &Settings,
) -> Result<Vec<AnnotatedStatement>> {
    let text = read_input(path)?;
    let statements = match Format::from_path(path) {
        Some(Format::NQuads) => {
            let bundle_path = bundles.ok_or_else(|| anyhow!("N-Quads input needs --bundles"))?;
            let graphs =
                rdf::parse_nquads(&text).with_context(|| format!("parsing {}", path.display()))?;
            let b = match Format::from_path(bundle_path) {
                Some(Format::Turtle) => {
                    let g = load_graph(bundle_path, None)?;
                    ingest::bundles_from_graph(&g, &settings.registry)
                }
                _ => ingest::read_bundles_csv(read_input(bundle_path)?.as_bytes())
                    .with_context(|| format!("reading {}", bundle_path.display()))?,
            };
            ingest::statements_from_quads(&graphs, &b)?
        }
        Some(_) => bail!(
            "{} is RDF; annotated statements come as CSV or N-Quads",
            path.display()
        ),
        None => ingest::read_statements(text.as_bytes())
            .with_context(|| format!("reading {}", path.display()))?,
    };
    info!("read {} annotated statements", statements.len());
    Ok(statements)
}

fn write_statements(
    output: Option<&Path>,
    bundles: Option<&Path>,
    statements: &[AnnotatedStatement],
) -> Result<()> {
    match output.and_then(Format::from_path) {
        Some(Format::NQuads) => {
            let bundle_path = bundles.ok_or_else(|| anyhow!("N-Quads output needs --bundles"))?;
            let (graphs, b) = ingest::statements_to_quads(statements);
            write_output(output, rdf::write_nquads(&graphs).as_bytes())?;
            let mut buf = Vec::new();
            ingest::write_bundles_csv(&mut buf, &b)?;
            write_output(Some(bundle_path), &buf)
        }
        Some(_) => bail!("annotated statements are written as CSV or N-Quads"),
        None => {
            let mut buf = Vec::new();
            ingest::write_statements(&mut buf, statements)?;
            write_output(output, &buf)
        }
    }
}

fn load_axioms(paths: &[PathBuf], settings: &Settings) -> Result<Vec<Axiom>> {
    if paths.is_empty() {
        return Ok(settings
            .contextualizer()
            .ontology_modules(settings.ontology)
            .into_iter()
            .flat_map(|m| m.axioms)
            .collect());
    }
    let mut out = Vec::new();
    for p in paths {
        let g = load_graph(p, None)?;
        out.extend(
            axioms_from_graph(&g)
                .with_context(|| format!("reading axioms from {}", p.display()))?,
        );
    }
    Ok(out)
}

fn settings(cli: &Cli) -> Result<Settings> {
    let mut config = match &cli.config {
        Some(p) => Config::from_toml(&read_input(p)?)
            .with_context(|| format!("reading {}", p.display()))?,
        None => Config::default(),
    };
    let o = &cli.overrides;
    if o.model.is_some() {
        config.model = o.model.clone();
    }
    if o.order.is_some() {
        config.order = o.order.clone();
    }
    if o.minting.is_some() {
        config.minting = o.minting.clone();
    }
    if o.separator.is_some() {
        config.separator = o.separator.clone();
    }
    if o.predicates.is_some() {
        config.predicates = o.predicates.clone();
    }
    if o.no_datatype_axioms {
        config.datatype_axioms = Some(false);
    }
    if o.no_restriction_axioms {
        config.restriction_axioms = Some(false);
    }
    if o.no_same_extent {
        config.same_extent = Some(false);
    }
    Ok(config.settings()?)
}

fn violations_json(violations: &[Violation]) -> serde_json::Value {
    let items: Vec<_> = violations
        .iter()
        .map(|v| {
            json!({
                "kind": v.kind.as_str(),
                "resources": v.resources.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                "detail": v.detail,
                "triggers": v.triggers.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "count": violations.len(), "violations": items })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let settings = settings(&cli)?;
    match cli.command {
        Command::GenOntology {
            out_dir,
            statements,
            bundles,
        } => {
            fs::create_dir_all(&out_dir)
                .with_context(|| format!("cannot create {}", out_dir.display()))?;
            let c = settings.contextualizer();
            let prefixes = settings.prefixes();
            let mut modules: Vec<(String, Vec<Axiom>)> = c
                .ontology_modules(settings.ontology)
                .into_iter()
                .map(|m| (m.name, m.axioms))
                .collect();
            if let Some(p) = statements {
                let st = load_statements(&p, bundles.as_deref(), &settings)?;
                modules.push(("predicates".into(), c.predicate_axioms(&st)?));
            }
            for (name, axioms) in modules {
                let path = out_dir.join(format!("{name}.ttl"));
                let text = rdf::write_turtle(&axioms_to_graph(&axioms), &prefixes);
                write_output(Some(&path), text.as_bytes())?;
                info!("{}: {} axioms", path.display(), axioms.len());
            }
        }
        Command::IngestCsv {
            input,
            base,
            output,
            nquads,
            bundles,
            descriptions,
        } => {
            let rows = ingest::read_population(read_input(&input)?.as_bytes())
                .with_context(|| format!("reading {}", input.display()))?;
            let data = population::build(&rows, &base)?;
            let bare: Vec<_> = data
                .statements
                .iter()
                .map(AnnotatedStatement::without_descriptions)
                .collect();
            match nquads {
                Some(nq) => write_statements(Some(&nq), bundles.as_deref(), &bare)?,
                None => write_statements(output.as_deref(), None, &bare)?,
            }
            if let Some(d) = descriptions {
                let f = format_of(&d, None).unwrap_or(Format::NTriples);
                write_output(
                    Some(&d),
                    render(&data.descriptions, f, &settings).as_bytes(),
                )?;
            }
            info!("{} estimates ingested", rows.len());
        }
        Command::Contextualize {
            input,
            bundles,
            descriptions,
            output,
            format,
            ontology,
        } => {
            let st = load_statements(&input, bundles.as_deref(), &settings)?;
            let c = settings.contextualizer();
            let mut g = c.contextualize(&st)?;
            for d in &descriptions {
                g.extend_from(&load_graph(d, None)?);
            }
            let f = format
                .or_else(|| output.as_deref().and_then(Format::from_path))
                .unwrap_or(Format::NTriples);
            write_output(output.as_deref(), render(&g, f, &settings).as_bytes())?;
            if let Some(p) = ontology {
                let axioms = c.ontology(settings.ontology, &st)?;
                let text = rdf::write_turtle(&axioms_to_graph(&axioms), &settings.prefixes());
                write_output(Some(&p), text.as_bytes())?;
            }
            info!("{} statements, {} triples", st.len(), g.len());
        }
        Command::Decontextualize {
            input,
            format,
            output,
            bundles,
            context,
        } => {
            let g = load_graph(&input, format)?;
            let selection = if context.is_empty() {
                None
            } else {
                Some(
                    context
                        .iter()
                        .map(|c| Iri::new(c.as_str()).with_context(|| format!("--context {c}")))
                        .collect::<Result<_>>()?,
                )
            };
            let st = settings
                .contextualizer()
                .decontextualize(&g, selection.as_ref())?;
            write_statements(output.as_deref(), bundles.as_deref(), &st)?;
        }
        Command::Validate {
            input,
            format,
            ontology,
            report: report_path,
        } => {
            let g = load_graph(&input, format)?;
            let axioms = load_axioms(&ontology, &settings)?;
            let violations = validate(&g, &axioms, &settings.registry, settings.validation);
            print!("{}", report(&violations));
            if let Some(p) = report_path {
                let text = serde_json::to_string_pretty(&violations_json(&violations))?;
                write_output(Some(&p), format!("{text}\n").as_bytes())?;
            }
            if !violations.is_empty() {
                eprintln!("{} violation(s)", violations.len());
                return Ok(ExitCode::from(1));
            }
        }
        Command::Reason {
            input,
            format,
            ontology,
            output,
            output_format,
        } => {
            let g = load_graph(&input, format)?;
            let axioms = load_axioms(&ontology, &settings)?;
            let result = Reasoner::new(settings.registry.vocab(), &axioms).saturate(&g);
            for (a, b) in result.same_as() {
                eprintln!("sameAs {a} {b}");
            }
            eprint!("{}", report(&result.violations));
            let f = output_format
                .or_else(|| output.as_deref().and_then(Format::from_path))
                .unwrap_or(Format::NTriples);
            write_output(
                output.as_deref(),
                render(&result.derived, f, &settings).as_bytes(),
            )?;
            info!("{} derived triples", result.derived.len());
        }
        Command::Query {
            input,
            query,
            format,
            output,
        } => {
            let g = load_graph(&input, format)?;
            let pattern = ndfluents::parse_query(&read_input(&query)?)
                .with_context(|| format!("parsing {}", query.display()))?;
            let table = evaluate(&g, &pattern, &settings.registry)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row.iter().map(|c| c.text()))?;
            }
            write_output(output.as_deref(), &w.into_inner()?)?;
        }
        Command::Stats { input, bundles } => {
            let st = load_statements(&input, bundles.as_deref(), &settings)?;
            let rows = size_report(&st, &settings.registry, &settings.minting)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["pattern", "model", "triples"])?;
            for r in rows {
                w.write_record([r.pattern, r.model.unwrap_or(""), &r.triples.to_string()])?;
            }
            write_output(None, &w.into_inner()?)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .target(env_logger::Target::Stderr)
        .init();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
