use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use complexon::cut::{d_cut, d_cut_d, delta_cut, CutMode, DeltaOptions, MultiArray, RegularityOptions};
use complexon::homomorphism::{t_hom, t_hom_complexon, t_ind_complexon, t_ind_finite, DensityMethod};
use complexon::rational::{format_rational, parse_rational};
use complexon::sampling::{sample_complex, sample_hypergraph};
use complexon::{Complexon, SimplicialComplex, StepComplexon};
use complexon_harness::experiments::{self, EXPERIMENTS};
use complexon_harness::models::parse_model;
use complexon_harness::{ExperimentConfig, Report};

#[derive(Parser)]
#[command(name = "complexon", version, about = "Complexons, densities, cut distances and verification runs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Comma-separated weights, e.g. `1/2,1/4`.
    #[arg(long, global = true)]
    alphas: Option<String>,
    #[arg(long, global = true)]
    dmax: Option<usize>,
    #[arg(long, global = true, conflicts_with = "heuristic")]
    exact: bool,
    #[arg(long, global = true)]
    heuristic: bool,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print a zoo or file complexon in the text format.
    Model { spec: String },
    /// Sample K(n, W), or H(n, W) with --hyper.
    Sample {
        n: usize,
        model: String,
        #[arg(long)]
        hyper: bool,
    },
    /// Homomorphism density of a pattern complex in a complex or complexon.
    Density {
        /// Pattern complex file.
        pattern: PathBuf,
        /// Complex file or model spec.
        target: String,
        #[arg(long)]
        induced: bool,
        /// Monte Carlo samples instead of exact integration.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Cut norm of an array file, or of the difference of two models.
    Cutnorm {
        #[arg(long, conflicts_with_all = ["first", "second"])]
        array: Option<PathBuf>,
        first: Option<String>,
        second: Option<String>,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long)]
        upper: bool,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
    },
    /// Labeled distance and unlabeled upper/lower bounds between two models.
    Cutdist {
        first: String,
        second: String,
        #[arg(long, default_value_t = 1)]
        blowup: usize,
        #[arg(long, default_value_t = 64)]
        grid: usize,
    },
    /// Greedy weak regularity partition of a model.
    Regularize {
        model: String,
        #[arg(long, default_value_t = 8)]
        blocks: usize,
        #[arg(long, default_value_t = 0.0)]
        epsilon: f64,
    },
    /// Run a verification experiment.
    Verify {
        experiment: Option<String>,
        #[arg(long)]
        list: bool,
        /// JSON config; flags given on the command line override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Hypergraph experiments: `equivalence` or `ul`.
    Hyper {
        which: String,
        #[command(flatten)]
        overrides: Overrides,
    },
}

#[derive(Args)]
struct Overrides {
    /// Comma-separated sizes.
    #[arg(long)]
    n_grid: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    quick: bool,
}

fn cut_mode(g: &Global, upper: bool, restarts: usize) -> CutMode {
    let seed = g.seed.unwrap_or(1);
    if upper {
        CutMode::Upper
    } else if g.heuristic {
        CutMode::Heuristic { restarts, seed }
    } else if g.exact {
        CutMode::Exact
    } else {
        CutMode::Auto
    }
}

fn emit(g: &Global, text: &str) -> Result<()> {
    match &g.out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn dmax(g: &Global) -> usize {
    g.dmax.unwrap_or(2)
}

fn alphas(g: &Global) -> Result<complexon::WeightSequence> {
    let mut c = ExperimentConfig::default();
    if let Some(a) = &g.alphas {
        c.alphas = a.split(',').map(|s| s.trim().to_string()).collect();
    }
    c.weights()
}

/// Parses `shape n1 n2 ...` followed by row-major entries.
fn parse_array(text: &str) -> Result<MultiArray> {
    let mut tokens = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .flat_map(str::split_whitespace);
    if tokens.next() != Some("shape") {
        bail!("array file must start with `shape n1 n2 ...`");
    }
    let rest: Vec<&str> = tokens.collect();
    let split = rest.iter().position(|t| *t == "data").ok_or_else(|| anyhow!("missing `data` keyword"))?;
    let shape = rest[..split].iter().map(|t| t.parse::<usize>().context("shape")).collect::<Result<Vec<_>>>()?;
    let values = &rest[split + 1..];
    match values.iter().map(|t| parse_rational(t)).collect::<complexon::Result<Vec<_>>>() {
        Ok(exact) => Ok(MultiArray::from_rational(shape, exact)?),
        Err(_) => Ok(MultiArray::from_f64(
            shape,
            values.iter().map(|t| t.parse::<f64>().context("entry")).collect::<Result<Vec<_>>>()?,
        )?),
    }
}

fn value_text(value: f64, exact: &Option<complexon::Rational>) -> String {
    match exact {
        Some(r) => format!("{} ({value})", format_rational(r)),
        None => format!("{value}"),
    }
}

fn experiment_config(name: &str, g: &Global, file: Option<&PathBuf>, o: &Overrides) -> Result<ExperimentConfig> {
    let e = experiments::find(name).ok_or_else(|| anyhow!("unknown experiment `{name}`; try `verify --list`"))?;
    let mut c = match file {
        Some(p) => serde_json::from_str(&read(p)?).with_context(|| format!("parsing {}", p.display()))?,
        None if o.quick => (e.quick)(),
        None => (e.defaults)(),
    };
    c.experiment = name.to_string();
    if let Some(s) = g.seed {
        c.seed = s;
    }
    if let Some(t) = g.trials {
        c.trials = t;
    }
    if let Some(a) = &g.alphas {
        c.alphas = a.split(',').map(|s| s.trim().to_string()).collect();
    }
    if let Some(d) = g.dmax {
        c.dmax = d;
    }
    if g.exact {
        c.exact = true;
    }
    if g.heuristic {
        c.exact = false;
    }
    if let Some(n) = &o.n_grid {
        c.n_grid = n.split(',').map(|s| s.trim().parse().context("n-grid")).collect::<Result<_>>()?;
    }
    if let Some(s) = o.samples {
        c.samples = s;
    }
    if let Some(m) = &o.model {
        c.model = Some(m.clone());
    }
    c.validate()?;
    Ok(c)
}

/// Runs, writes the report and returns whether every checked row passed.
fn verify(g: &Global, config: &ExperimentConfig) -> Result<bool> {
    let report: Report = experiments::run(config)?;
    let text = match g.format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    };
    emit(g, &text)?;
    let a = report.aggregate();
    eprintln!(
        "{}: {} checked, {} pass, {} vacuous-pass, {} fail (config {})",
        report.experiment, a.checked, a.passed, a.vacuous, a.failed, report.config_hash
    );
    Ok(report.all_pass())
}

fn run(cli: Cli) -> Result<bool> {
    let g = &cli.global;
    match &cli.command {
        Command::Model { spec } => emit(g, &parse_model(spec, dmax(g))?.to_text()?)?,
        Command::Sample { n, model, hyper } => {
            let w = parse_model(model, dmax(g))?;
            let seed = g.seed.unwrap_or(1);
            let rec = if *hyper {
                sample_hypergraph(*n, &w, seed)?
            } else {
                sample_complex(*n, &w, seed)?
            };
            emit(g, &rec.to_text())?;
        }
        Command::Density {
            pattern,
            target,
            induced,
            samples,
        } => {
            let f = SimplicialComplex::from_text(&read(pattern)?)?;
            let path = PathBuf::from(target);
            let finite = if path.is_file() {
                SimplicialComplex::from_text(&read(&path)?).ok()
            } else {
                None
            };
            let r = match finite {
                Some(k) if *induced => t_ind_finite(&f, &k)?,
                Some(k) => t_hom(&f, &k)?,
                None => {
                    let w = parse_model(target, dmax(g))?;
                    let method = match samples {
                        Some(s) => DensityMethod::MonteCarlo {
                            samples: *s,
                            seed: g.seed.unwrap_or(1),
                        },
                        None => DensityMethod::default(),
                    };
                    if *induced {
                        t_ind_complexon(&f, &w, method)?
                    } else {
                        t_hom_complexon(&f, &w, method)?
                    }
                }
            };
            let se = r.std_error.map(|s| format!(" se {s}")).unwrap_or_default();
            emit(g, &format!("{} method {}{se}\n", value_text(r.value, &r.exact), r.method.name()))?;
        }
        Command::Cutnorm {
            array,
            first,
            second,
            dim,
            upper,
            restarts,
        } => {
            let mode = cut_mode(g, *upper, *restarts);
            let v = match (array, first, second) {
                (Some(p), _, _) => {
                    let a = parse_array(&read(p)?)?;
                    match mode {
                        CutMode::Exact => a.cut_norm_exact()?,
                        CutMode::Heuristic { restarts, seed } => a.cut_norm_heuristic(restarts, seed),
                        CutMode::Upper => a.cut_norm_upper_bound(),
                        CutMode::Auto => a.cut_norm_exact().unwrap_or_else(|_| a.cut_norm_upper_bound()),
                    }
                }
                (None, Some(a), Some(b)) => {
                    let (a, b) = (parse_model(a, dmax(g))?, parse_model(b, dmax(g))?);
                    d_cut_d(&a.to_step(64)?, &b.to_step(64)?, *dim, mode)?
                }
                _ => bail!("give --array FILE or two models"),
            };
            emit(g, &format!("{} {:?} certificate {:?}\n", value_text(v.value, &v.exact), v.kind, v.certificate))?;
        }
        Command::Cutdist {
            first,
            second,
            blowup,
            grid,
        } => {
            let a: Complexon = parse_model(first, dmax(g))?;
            let b: Complexon = parse_model(second, dmax(g))?;
            let (sa, sb): (StepComplexon, StepComplexon) = (a.to_step(*grid)?, b.to_step(*grid)?);
            let w = alphas(g)?;
            let mode = cut_mode(g, false, 10);
            let labeled = d_cut(&sa, &sb, &w, mode)?;
            let opts = DeltaOptions {
                blowup: *blowup,
                mode,
                seed: g.seed.unwrap_or(1),
                ..Default::default()
            };
            let delta = delta_cut(&sa, &sb, &w, &opts)?;
            emit(
                g,
                &format!(
                    "labeled {} {:?}\nunlabeled upper {} {:?}\nunlabeled lower {}\npermutation {:?} exhaustive {}\n",
                    value_text(labeled.value, &labeled.exact),
                    labeled.kind,
                    value_text(delta.upper.value, &delta.upper.exact),
                    delta.upper.kind,
                    delta.lower,
                    delta.permutation,
                    delta.exhaustive
                ),
            )?;
        }
        Command::Regularize { model, blocks, epsilon } => {
            let w = parse_model(model, dmax(g))?;
            let opts = RegularityOptions {
                max_blocks: *blocks,
                epsilon: *epsilon,
                dim: w_dim(&w, g),
                seed: g.seed.unwrap_or(0),
                ..Default::default()
            };
            let r = complexon::cut::weak_regularity_partition(&w, &opts)?;
            let classes: Vec<String> = r
                .partition
                .classes()
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|(a, b)| format!("[{}, {})", format_rational(a), format_rational(b)))
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            emit(
                g,
                &format!(
                    "classes {}\n{}\nmeasured {:?}\nbound {}\nrounds {}\n",
                    classes.len(),
                    classes.join("\n"),
                    r.measured,
                    r.bound,
                    r.rounds
                ),
            )?;
        }
        Command::Verify {
            experiment,
            list,
            config,
            overrides,
        } => {
            if *list {
                let mut text = String::new();
                for e in EXPERIMENTS {
                    let c = e.criterion.map(|c| format!(" [criterion {c}]")).unwrap_or_default();
                    text.push_str(&format!("{:24} {}{c}\n", e.name, e.summary));
                }
                emit(g, &text)?;
                return Ok(true);
            }
            let name = match (experiment, config) {
                (Some(n), _) => n.clone(),
                (None, Some(p)) => {
                    let c: ExperimentConfig = serde_json::from_str(&read(p)?)?;
                    c.experiment
                }
                (None, None) => bail!("name an experiment or pass --list"),
            };
            let c = experiment_config(&name, g, config.as_ref(), overrides)?;
            return verify(g, &c);
        }
        Command::Hyper { which, overrides } => {
            let name = match which.as_str() {
                "equivalence" => "hypergraph-equivalence",
                "ul" => "ul-convergence",
                other => bail!("unknown hypergraph experiment `{other}`; use `equivalence` or `ul`"),
            };
            let c = experiment_config(name, g, None, overrides)?;
            return verify(g, &c);
        }
    }
    Ok(true)
}

fn w_dim(w: &Complexon, g: &Global) -> usize {
    use complexon::Kernel;
    g.dmax.unwrap_or(w.max_dim()).max(1)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
