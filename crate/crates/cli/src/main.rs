use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use hypercol::acceptance;
use hypercol::colouring::{chi_strong, chi_strong_auto, chi_t_ell, colourable, ChiMethod, ChiResult, StrongCheck};
use hypercol::generators::{
    complete_uniform, construction_42, kernel_augmented, random_t_intersecting, sunflower_gen, DEFAULT_VERTEX_CAP,
};
use hypercol::hypergraph::{find_sunflower, max_matching_at_least};
use hypercol::procedures::{
    theorem41_colouring, theorem44_colouring, trace_main_loop, validate_trace, BromeliadChoice, Thm41Outcome,
    Thm44Outcome, TraceParams, TraceTermination,
};
use hypercol::structure::{find_bromeliad, find_first_bromeliad, is_k_split_degenerate, regions};
use hypercol::{is_c_strong, Colouring, Hypergraph, VertexSet};

#[derive(Parser)]
#[command(name = "hypercol", version, about = "Exact c-strong hypergraph colouring toolkit")]
struct Cli {
    /// Hypergraph JSON to read (default: standard input).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Where to write results (default: standard output).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for link and suite parallelism; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Refuse input hypergraphs with more vertices than this.
    #[arg(long, global = true, default_value_t = 256)]
    max_vertices: usize,
    /// Refuse input hypergraphs with more edges than this.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_edges: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a hypergraph.
    #[command(subcommand)]
    Gen(Gen),
    /// Exact χ(H, c).
    Chi {
        #[arg(long)]
        c: usize,
        #[arg(long, value_enum, default_value_t = Method::Search)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Give up (exit 1) if more colours than this would be needed.
        #[arg(long)]
        max_colours: Option<usize>,
    },
    /// Exact χ(H, t, ℓ): the worst ℓ-strong chromatic number of a t-set link.
    ChiLink {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check a colouring; exit 1 and report the first failing edge if it is not c-strong.
    Check {
        #[arg(long)]
        c: usize,
        #[arg(long)]
        colouring: PathBuf,
    },
    /// Search for a structure; exit 1 when there is none.
    #[command(subcommand)]
    Find(Find),
    /// Region partition of an edge sequence.
    Regions {
        #[arg(long, value_delimiter = ',')]
        edges: Vec<usize>,
    },
    /// Is the edge sequence k-split-degenerate? Exit 1 if not.
    SplitCheck {
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',')]
        edges: Vec<usize>,
    },
    /// Run a constructive colouring procedure; exit 1 when it does not apply.
    Colour(ColourArgs),
    /// Run the main pruning loop, one JSON line per step and one for the outcome.
    Trace(TraceArgs),
    /// Run the acceptance suite; exit 1 if any criterion fails.
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyFormat::Table)]
        format: VerifyFormat,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// All k-subsets of n vertices.
    Complete { n: usize, k: usize },
    /// The extremal construction with parameters t, ℓ, K.
    C42 {
        t: usize,
        l: usize,
        k: usize,
        #[arg(long = "cap", default_value_t = DEFAULT_VERTEX_CAP)]
        cap: usize,
    },
    /// A graph (JSON file) with t−1 shared vertices added to every edge.
    KernelAug { graph: PathBuf, t: usize },
    /// A sunflower with p petals, kernel size ks and petal size ps.
    Sunflower { p: usize, ks: usize, ps: usize },
    /// A seeded t-intersecting hypergraph with m edges on n vertices.
    Random {
        n: usize,
        m: usize,
        t: usize,
        #[arg(default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Find {
    /// A sunflower with p petals and kernel of at most max_kernel vertices.
    Sunflower {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        max_kernel: usize,
    },
    /// The ≺-minimal b-bromeliad (or, with --first, the first one found).
    Bromeliad {
        #[arg(long)]
        b: usize,
        #[arg(long)]
        first: bool,
        /// Restrict the search to these edge indices.
        #[arg(long, value_delimiter = ',')]
        edges: Option<Vec<usize>>,
    },
    /// Whether there are p pairwise-disjoint edges.
    Matching {
        #[arg(long)]
        p: usize,
    },
}

#[derive(Args)]
struct ColourArgs {
    #[arg(long, value_enum)]
    method: ColourMethod,
    /// c for thm41.
    #[arg(long)]
    c: Option<usize>,
    /// t for thm44.
    #[arg(long)]
    t: Option<usize>,
    /// ℓ for thm44.
    #[arg(long)]
    l: Option<usize>,
}

#[derive(Args)]
struct TraceArgs {
    #[arg(long)]
    t: usize,
    #[arg(long)]
    l: usize,
    #[arg(long)]
    p: usize,
    /// Strictly decreasing χ_0,χ_1,..
    #[arg(long, value_delimiter = ',', required = true)]
    thresholds: Vec<usize>,
    #[arg(long, default_value_t = 32)]
    step_cap: usize,
    #[arg(long, value_enum, default_value_t = Choice::Minimal)]
    choice: Choice,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Search,
    Auto,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColourMethod {
    Thm41,
    Thm44,
}

#[derive(Clone, Copy, ValueEnum)]
enum Choice {
    Minimal,
    First,
}

/// Exit status of a command that ran to completion.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Yes,
    No,
}

struct Out {
    text: String,
}

impl Out {
    fn json(&mut self, value: &impl Serialize) -> Result<()> {
        self.text.push_str(&serde_json::to_string(value)?);
        self.text.push('\n');
        Ok(())
    }

    fn line(&mut self, line: &str) {
        self.text.push_str(line);
        self.text.push('\n');
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out { text: String::new() };
    let result = run(&cli, &mut out).and_then(|verdict| {
        write_output(cli.output.as_deref(), &out.text)?;
        Ok(verdict)
    });
    match result {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("hypercol: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::from(2)
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn read_text(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display())),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("cannot read standard input")?;
            Ok(s)
        }
    }
}

fn parse_hypergraph(text: &str, what: &str) -> Result<Hypergraph> {
    serde_json::from_str(text).with_context(|| format!("{what} is not valid hypergraph JSON"))
}

fn load_input(cli: &Cli) -> Result<Hypergraph> {
    let what = cli.input.as_ref().map_or("standard input".to_string(), |p| p.display().to_string());
    let h = parse_hypergraph(&read_text(cli.input.as_deref())?, &what)?;
    if h.n() > cli.max_vertices {
        bail!("{} vertices exceed --max-vertices {}", h.n(), cli.max_vertices);
    }
    if h.num_edges() > cli.max_edges {
        bail!("{} edges exceed --max-edges {}", h.num_edges(), cli.max_edges);
    }
    Ok(h)
}

fn edge_sequence(h: &Hypergraph, indices: &[usize]) -> Result<Vec<VertexSet>> {
    indices
        .iter()
        .map(|&i| h.edge(i).cloned().with_context(|| format!("edge index {i} out of range (hypergraph has {} edges)", h.num_edges())))
        .collect()
}

fn verdict(found: bool) -> Verdict {
    if found {
        Verdict::Yes
    } else {
        Verdict::No
    }
}

fn run(cli: &Cli, out: &mut Out) -> Result<Verdict> {
    if cli.jobs == 0 {
        bail!("--jobs must be at least 1");
    }
    // Only fails if a pool already exists, which cannot happen here.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();

    match &cli.command {
        Command::Gen(gen) => {
            let h = generate(gen)?;
            out.json(&h)?;
            Ok(Verdict::Yes)
        }
        Command::Chi { c, method, format, max_colours } => {
            let h = load_input(cli)?;
            let result = match (method, max_colours) {
                (_, Some(cap)) => match (0..=(*cap).min(h.n())).find_map(|k| colourable(&h, *c, k).map(|w| (k, w))) {
                    Some((chi, witness)) => ChiResult { chi, witness, method: ChiMethod::Search },
                    None => {
                        out.json(&json!({ "chi_exceeds": cap }))?;
                        return Ok(Verdict::No);
                    }
                },
                (Method::Search, None) => chi_strong(&h, *c),
                (Method::Auto, None) => chi_strong_auto(&h, *c),
            };
            if *format == Format::Tsv {
                out.line("chi\tmethod\tcolours");
                let method = serde_json::to_value(result.method)?;
                let colours = result.witness.colours().iter().map(usize::to_string).collect::<Vec<_>>().join(",");
                out.line(&format!("{}\t{}\t{colours}", result.chi, method.as_str().unwrap_or_default()));
            } else {
                out.json(&result)?;
            }
            Ok(Verdict::Yes)
        }
        Command::ChiLink { t, l, format } => {
            let h = load_input(cli)?;
            let lc = chi_t_ell(&h, *t, *l);
            if *format == Format::Tsv {
                out.line("value\targmax\targmax_chi");
                let argmax = lc.argmax.as_ref().map_or("-".to_string(), VertexSet::to_string);
                out.line(&format!("{}\t{argmax}\t{}", lc.value, lc.argmax_chi));
            } else {
                out.json(&lc)?;
            }
            Ok(Verdict::Yes)
        }
        Command::Check { c, colouring } => {
            let h = load_input(cli)?;
            let text = read_text(Some(colouring))?;
            let col: Colouring = serde_json::from_str(&text)
                .with_context(|| format!("{} is not valid colouring JSON", colouring.display()))?;
            match is_c_strong(&h, &col, *c)? {
                StrongCheck::Strong(cert) => {
                    out.json(&json!({ "strong": true, "certificate": cert }))?;
                    Ok(Verdict::Yes)
                }
                StrongCheck::Fails(f) => {
                    eprintln!("edge {} {} sees {} of the {} required colours", f.index, f.edge, f.seen, f.required);
                    out.json(&json!({ "strong": false, "failing_edge": f }))?;
                    Ok(Verdict::No)
                }
            }
        }
        Command::Find(find) => {
            let h = load_input(cli)?;
            let found = match find {
                Find::Sunflower { p, max_kernel } => find_sunflower(&h, *p, *max_kernel).map(serde_json::to_value).transpose()?,
                Find::Bromeliad { b, first, edges } => {
                    let indices: Vec<usize> = edges.clone().unwrap_or_else(|| (0..h.num_edges()).collect());
                    let pool = edge_sequence(&h, &indices)?;
                    let search = if *first { find_first_bromeliad } else { find_bromeliad };
                    match search(&h, &pool, *b, None) {
                        Some(mut f) => {
                            f.pool_indices = f.pool_indices.iter().map(|&i| indices[i]).collect();
                            Some(serde_json::to_value(f)?)
                        }
                        None => None,
                    }
                }
                Find::Matching { p } => {
                    let yes = max_matching_at_least(&h, *p);
                    out.json(&json!({ "found": yes, "p": p }))?;
                    return Ok(verdict(yes));
                }
            };
            match &found {
                Some(v) => out.json(v)?,
                None => out.json(&json!({ "found": false }))?,
            }
            Ok(verdict(found.is_some()))
        }
        Command::Regions { edges } => {
            let h = load_input(cli)?;
            let seq = edge_sequence(&h, edges)?;
            out.json(&regions(&h, &seq)?)?;
            Ok(Verdict::Yes)
        }
        Command::SplitCheck { k, edges } => {
            let h = load_input(cli)?;
            let seq = edge_sequence(&h, edges)?;
            match is_k_split_degenerate(&h, &seq, *k) {
                Ok(()) => {
                    out.json(&json!({ "split_degenerate": true, "k": k }))?;
                    Ok(Verdict::Yes)
                }
                Err(failure) => {
                    out.json(&json!({ "split_degenerate": false, "k": k, "failure": failure }))?;
                    Ok(Verdict::No)
                }
            }
        }
        Command::Colour(args) => colour(cli, args, out),
        Command::Trace(args) => trace(cli, args, out),
        Command::Verify { format } => {
            let reports = acceptance::run_all_with_jobs(cli.jobs);
            match format {
                VerifyFormat::Table => out.text.push_str(&acceptance::render(&reports)),
                VerifyFormat::Json => out.json(&reports)?,
            }
            Ok(verdict(reports.iter().all(|r| r.passed)))
        }
    }
}

fn generate(gen: &Gen) -> Result<Hypergraph> {
    Ok(match gen {
        Gen::Complete { n, k } => complete_uniform(*n, *k)?,
        Gen::C42 { t, l, k, cap } => construction_42(*t, *l, *k, *cap)?.0,
        Gen::KernelAug { graph, t } => {
            let g = parse_hypergraph(&read_text(Some(graph))?, &graph.display().to_string())?;
            kernel_augmented(&g, *t)?
        }
        Gen::Sunflower { p, ks, ps } => sunflower_gen(*p, *ks, *ps)?,
        Gen::Random { n, m, t, seed } => random_t_intersecting(*n, *m, *t, *seed)?,
    })
}

fn colour(cli: &Cli, args: &ColourArgs, out: &mut Out) -> Result<Verdict> {
    let h = load_input(cli)?;
    let (applied, outcome): (Option<Colouring>, Value) = match args.method {
        ColourMethod::Thm41 => {
            let c = args.c.context("--method thm41 needs --c")?;
            let outcome = theorem41_colouring(&h, c)?;
            let col = match &outcome {
                Thm41Outcome::Applied { certificate, .. } => Some(certificate.colouring.clone()),
                Thm41Outcome::NotApplicable { .. } => None,
            };
            (col, serde_json::to_value(outcome)?)
        }
        ColourMethod::Thm44 => {
            let t = args.t.context("--method thm44 needs --t")?;
            let l = args.l.context("--method thm44 needs --l")?;
            let outcome = theorem44_colouring(&h, t, l)?;
            let col = match &outcome {
                Thm44Outcome::Applied { certificate, .. } => Some(certificate.colouring.clone()),
                Thm44Outcome::NotApplicable => None,
            };
            (col, serde_json::to_value(outcome)?)
        }
    };
    out.json(&json!({ "colouring": applied, "certificate": outcome }))?;
    Ok(verdict(applied.is_some()))
}

fn trace(cli: &Cli, args: &TraceArgs, out: &mut Out) -> Result<Verdict> {
    let h = load_input(cli)?;
    let params = TraceParams {
        t: args.t,
        ell: args.l,
        p: args.p,
        thresholds: args.thresholds.clone(),
        step_cap: args.step_cap,
        choice: match args.choice {
            Choice::Minimal => BromeliadChoice::Minimal,
            Choice::First => BromeliadChoice::First,
        },
    };
    let record = trace_main_loop(&h, &params)?;
    for step in &record.steps {
        out.json(step)?;
    }
    let validation = validate_trace(&h, &record);
    let contradiction = matches!(&record.termination, TraceTermination::Completed { diagonal: Some(_) });
    out.json(&json!({
        "b": record.b,
        "k": record.k,
        "matching_free": record.matching_free,
        "termination": record.termination,
        "diagonal_reached": contradiction,
        "valid": validation.is_ok(),
        "validation_error": validation.as_ref().err(),
    }))?;
    Ok(verdict(validation.is_ok()))
}
