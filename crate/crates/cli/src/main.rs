use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::ToPrimitive;

use graph_algebra::harness::{self, TheoremReport};
use graph_algebra::{
    blowup, blowup_density_curve, box_product, canonical, even_expansion, hom_density, inj_density, limit_inj_blowup,
    loose_expansion, parse_rational, DensityValue, Graph, SubdivisionScheme, DEFAULT_BLOWUP_CAP, DEFAULT_BUDGET,
};

/// Exact densities, constructions and identity checks for graph algebras.
///
/// GRAPH arguments accept the text form `graph{r=2;n=3;l=;e=(0 1)(1 2)}`, a
/// path to a file containing it, or a shorthand: Kn, Cn, Pk (k edges), In.
#[derive(Parser)]
#[command(name = "galg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact density of one graph in another.
    Density {
        #[arg(value_enum)]
        kind: DensityKind,
        f: String,
        h: String,
        /// Largest blow-up factor for `curve`.
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        /// Cap on the largest blow-up order for `curve`.
        #[arg(long, default_value_t = DEFAULT_BLOWUP_CAP)]
        cap: usize,
    },
    /// Build a graph and print it in text form.
    Construct {
        #[command(subcommand)]
        kind: Construction,
    },
    /// Run a scripted identity check; exits non-zero if any step fails.
    Verify {
        #[arg(value_enum)]
        theorem: Theorem,
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// Canonical form and automorphism count.
    Canon { graph: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum DensityKind {
    Inj,
    Hom,
    Limit,
    Curve,
}

#[derive(Subcommand)]
enum Construction {
    Blowup {
        graph: String,
        #[arg(long)]
        m: usize,
    },
    /// SCHEME is a scheme file or one of blowup:M, path:K, triangle,
    /// parallel, crossing, loose:R, even:R, mixed:R:M.
    Subdivide {
        graph: String,
        #[arg(long)]
        scheme: String,
    },
    Box { g: String, f: String },
    Loose {
        graph: String,
        #[arg(long)]
        r: usize,
    },
    Even {
        graph: String,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    Tensor,
    Gensub,
    Box,
    Hyper,
    Goodman,
    Forcingpair,
    M5,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Args)]
struct VerifyOpts {
    #[arg(long)]
    graph: Option<String>,
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Comma-separated sample points, e.g. `1/4,1/2`.
    #[arg(long)]
    p: Option<String>,
    /// Number of layers for `tensor`.
    #[arg(long, default_value_t = 2)]
    s: usize,
    /// Path length for `forcingpair`.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Uniformity for `hyper`.
    #[arg(long, default_value_t = 3)]
    r: usize,
    /// Copies of each endpoint for `hyper`.
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn shorthand(s: &str) -> Option<Graph> {
    let (head, n) = s.split_at(1);
    let n: usize = n.parse().ok()?;
    match head {
        "K" => Some(Graph::complete(2, n)),
        "C" if n >= 3 => Some(Graph::cycle(n)),
        "P" => Some(Graph::path(n)),
        "I" => Some(Graph::independent(2, n, 0)),
        _ => None,
    }
}

fn read_graph(arg: &str) -> Result<Graph> {
    let arg = arg.trim();
    if arg.starts_with("graph{") {
        return Ok(arg.parse()?);
    }
    if let Some(g) = shorthand(arg) {
        return Ok(g);
    }
    let text = std::fs::read_to_string(arg).with_context(|| format!("reading graph file {}", arg))?;
    Ok(text.parse()?)
}

fn read_scheme(arg: &str) -> Result<SubdivisionScheme> {
    if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).with_context(|| format!("reading scheme file {}", arg))?;
        return Ok(text.parse()?);
    }
    let parts: Vec<&str> = arg.split(':').collect();
    let num = |i: usize| -> Result<usize> {
        parts.get(i).with_context(|| format!("scheme {} needs a parameter", arg))?.parse().context("scheme parameter")
    };
    Ok(match parts[0] {
        "blowup" => SubdivisionScheme::blowup(num(1)?)?,
        "path" => SubdivisionScheme::path(num(1)?)?,
        "triangle" => SubdivisionScheme::triangle()?,
        "parallel" => SubdivisionScheme::parallel()?,
        "crossing" => SubdivisionScheme::crossing()?,
        "loose" => SubdivisionScheme::loose(num(1)?)?,
        "even" => SubdivisionScheme::even(num(1)?)?,
        "mixed" => SubdivisionScheme::mixed(num(1)?, num(2)?)?,
        _ => bail!("unknown scheme {:?} and no such file", arg),
    })
}

fn samples(p: &Option<String>) -> Result<Vec<BigRational>> {
    match p {
        None => Ok(harness::default_samples()),
        Some(list) => Ok(list.split(',').map(|x| parse_rational(x.trim())).collect::<Result<_, _>>()?),
    }
}

fn show(d: &DensityValue) -> String {
    format!("{} ≈ {:.12}", d, d.value().to_f64().unwrap_or(f64::NAN))
}

fn verify(theorem: Theorem, o: &VerifyOpts) -> Result<TheoremReport> {
    let graph = || -> Result<Graph> { read_graph(o.graph.as_deref().context("--graph is required")?) };
    Ok(match theorem {
        Theorem::Tensor => harness::verify_tensor_power(&graph()?, o.s, o.budget)?,
        Theorem::Gensub => {
            let scheme = read_scheme(o.scheme.as_deref().context("--scheme is required")?)?;
            harness::verify_gensubdivision(&scheme, &graph()?, &samples(&o.p)?, o.budget)?
        }
        Theorem::Box => harness::verify_box(&graph()?, &samples(&o.p)?, o.budget)?,
        Theorem::Hyper => harness::verify_hypergraph(&graph()?, o.r, o.m, o.budget)?,
        Theorem::Goodman => harness::verify_goodman_lift(&samples(&o.p)?)?,
        Theorem::Forcingpair => harness::verify_forcing_pair_operator(o.k, o.budget)?,
        Theorem::M5 => harness::verify_m5(o.budget)?,
    })
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Density { kind, f, h, n_max, cap } => {
            let (f, h) = (read_graph(&f)?, read_graph(&h)?);
            match kind {
                DensityKind::Inj => println!("{}", show(&inj_density(&f, &h)?)),
                DensityKind::Hom => println!("{}", show(&hom_density(&f, &h)?)),
                DensityKind::Limit => println!("{}", show(&limit_inj_blowup(&f, &h)?)),
                DensityKind::Curve => {
                    for (n, d) in blowup_density_curve(&f, &h, n_max, cap)?.iter().enumerate() {
                        println!("{}\t{}", n + 1, show(d));
                    }
                }
            }
        }
        Command::Construct { kind } => {
            let g = match kind {
                Construction::Blowup { graph, m } => blowup(&read_graph(&graph)?, m)?,
                Construction::Subdivide { graph, scheme } => read_scheme(&scheme)?.subdivide(&read_graph(&graph)?)?,
                Construction::Box { g, f } => box_product(&read_graph(&g)?, &read_graph(&f)?)?,
                Construction::Loose { graph, r } => loose_expansion(&read_graph(&graph)?, r)?,
                Construction::Even { graph, r } => even_expansion(&read_graph(&graph)?, r)?,
            };
            println!("{}", g);
        }
        Command::Verify { theorem, opts } => {
            let report = verify(theorem, &opts)?;
            match opts.format {
                Format::Text => print!("{}", report.render_text()),
                Format::Machine => print!("{}", report.render_machine()),
            }
            return Ok(report.passed());
        }
        Command::Canon { graph } => {
            let c = canonical(&read_graph(&graph)?);
            println!("{}", c.form);
            println!("automorphisms\t{}", c.automorphisms);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
