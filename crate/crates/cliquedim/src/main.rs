use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use cliquedim::corpus;
use cliquedim::format::{self, EdgeList};
use cliquedim::mc::{self, McSettings};
use cliquedim::verify::{self, CheckLine};
use cliquedim_core::boosting::{self, BoostConfig, PatternSampler};
use cliquedim_core::clique::{self, find_balanced_point, tree_from_clique, Clique};
use cliquedim_core::dimension;
use cliquedim_core::fractional::omega_star;
use cliquedim_core::rational;
use cliquedim_core::{ConceptClass, ContradictionGraph, Error, Family, Limits};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "cliquedim",
    version,
    about = "Clique dimensions of finite concept classes"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Dataset length.
    #[arg(long, global = true)]
    m: Option<usize>,
    /// Search horizon; defaults to 3 for LP-backed commands and 4 otherwise.
    #[arg(long = "m-max", global = true)]
    m_max: Option<usize>,
    #[arg(long, global = true, default_value_t = 1_000_000)]
    vertex_cap: usize,
    #[arg(long, global = true, default_value_t = 20)]
    pattern_cap: usize,
    #[arg(long, global = true, default_value_t = 100_000_000)]
    node_budget: u64,
    /// Accepted for compatibility; every command already runs on one thread.
    #[arg(long, global = true)]
    single_worker: bool,
    #[arg(long, global = true)]
    verbose: bool,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Input {
    /// Class file; standard input when omitted.
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a class: full, singleton, thresholds, parities, disjoint_pairs, paper_example_sec6, random.
    Gen {
        family: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
    /// Edge list of the contradiction graph.
    Graph(Input),
    /// Clique number.
    Omega(Input),
    /// Fractional clique number; `--out` receives the duality certificate.
    OmegaStar(Input),
    /// Littlestone dimension; `--out` receives the witness tree.
    Ld(Input),
    /// VC dimension.
    Vc(Input),
    /// Clique dimension.
    Cd(Input),
    /// Fractional clique dimension.
    CdStar(Input),
    /// Balanced point of a clique (default: a maximum clique).
    Balanced {
        #[command(flatten)]
        input: Input,
        /// Comma-separated vertex indices.
        #[arg(long)]
        clique: Option<String>,
    },
    /// Shattered mistake tree built from a clique (default: a maximum clique).
    TreeFromClique {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        clique: Option<String>,
    },
    /// Clique of the contradiction graph read off a mistake tree.
    CliqueFromTree {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        tree: PathBuf,
    },
    /// Monte Carlo check of the boosted consistency bound.
    Boost {
        #[command(flatten)]
        input: Input,
        /// Anchor length; default is the smallest separating one up to `--m-max`.
        #[arg(long)]
        m0: Option<usize>,
        /// Margin as `a/b`; default is epsilon / 4.
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Expert-game transcripts per dataset.
        #[arg(long, default_value_t = 0)]
        transcripts: usize,
        /// Re-check every transcript's regret in exact arithmetic.
        #[arg(long)]
        rational_shadow: bool,
    },
    /// Inequalities, duality certificates, low-error bounds and numeric checks over the corpus.
    VerifyLemmas,
    /// Polynomial and fractional dichotomies over the corpus.
    VerifyDichotomy,
    /// CSV table of omega, omega* and 2^m.
    Curves(Input),
}

/// Failures mapped to exit codes.
enum Failure {
    Usage(anyhow::Error),
    Resource(anyhow::Error),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        let core =
            e.downcast_ref::<Error>()
                .or_else(|| match e.downcast_ref::<format::FormatError>() {
                    Some(format::FormatError::Core(inner)) => Some(inner),
                    _ => None,
                });
        match core {
            Some(Error::ResourceLimit { .. }) => Failure::Resource(e),
            Some(Error::InvalidParams(_) | Error::InvalidPoint { .. } | Error::EmptyClass) => {
                Failure::Usage(e)
            }
            Some(_) => Failure::Other(e),
            None if e.downcast_ref::<format::FormatError>().is_some()
                || e.downcast_ref::<io::Error>().is_some() =>
            {
                Failure::Usage(e)
            }
            None => Failure::Other(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

impl From<format::FormatError> for Failure {
    fn from(e: format::FormatError) -> Self {
        anyhow::Error::from(e).into()
    }
}

struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn new(seed: u64) -> Self {
        Output {
            text: format!("# seed={seed}\n"),
            ok: true,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn checks(&mut self, lines: &[CheckLine]) {
        for l in lines {
            self.line(l.to_string());
        }
        self.ok &= lines.iter().all(|l| l.pass);
    }
}

fn limits(o: &Opts) -> Limits {
    Limits {
        vertex_cap: o.vertex_cap,
        pattern_cap: o.pattern_cap,
        node_budget: o.node_budget,
    }
}

fn read_text(path: Option<&Path>) -> anyhow::Result<String> {
    match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .context("reading standard input")?;
            Ok(s)
        }
    }
}

fn read_class(input: &Input) -> anyhow::Result<ConceptClass> {
    Ok(format::parse_class(&read_text(input.input.as_deref())?)?)
}

fn require_m(o: &Opts) -> anyhow::Result<usize> {
    match o.m {
        Some(m) if m >= 1 => Ok(m),
        Some(_) => Err(Error::InvalidParams("--m must be at least 1".into()).into()),
        None => Err(Error::InvalidParams("this command needs --m".into()).into()),
    }
}

fn parse_members(spec: &str) -> anyhow::Result<Vec<usize>> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| anyhow!(Error::InvalidParams(format!("bad vertex index `{s}`"))))
        })
        .collect()
}

fn family(name: &str, n: usize, k: usize, seed: u64) -> anyhow::Result<Family> {
    Ok(match name {
        "full" => Family::Full { n },
        "singleton" => Family::Singleton { n },
        "thresholds" => Family::Thresholds { n },
        "parities" => Family::Parities { n },
        "disjoint_pairs" => Family::DisjointPairs { n },
        "paper_example_sec6" => Family::PaperExample,
        "random" => Family::Random { seed, n, k },
        other => bail!(Error::InvalidParams(format!("unknown family `{other}`"))),
    })
}

fn chosen_clique<'g>(
    g: &'g ContradictionGraph,
    spec: Option<&str>,
    budget: u64,
) -> anyhow::Result<Clique<'g>> {
    let members = match spec {
        Some(s) => parse_members(s)?,
        None => clique::max_clique(g, budget).members,
    };
    for &i in &members {
        g.vertex(i)?;
    }
    Ok(Clique::new(g, members)?)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let o = &cli.opts;
    let l = limits(o);
    let mut out = Output::new(o.seed);
    match &cli.command {
        Command::Gen { family: name, n, k } => {
            let class = family(name, *n, *k, o.seed)?.generate()?;
            out.text.push_str(&format::emit_class(&class));
        }
        Command::Graph(input) => {
            let class = read_class(input)?;
            let g = ContradictionGraph::build_with(&class, require_m(o)?, &l)?;
            out.text
                .push_str(&format::emit_edges(&EdgeList::from_graph(&g, o.verbose)));
        }
        Command::Omega(input) => {
            let class = read_class(input)?;
            let g = ContradictionGraph::build_with(&class, require_m(o)?, &l)?;
            let search = clique::max_clique(&g, o.node_budget);
            let exactness = if search.exact { "exact" } else { "lower-bound" };
            out.line(format!("omega={} {exactness}", search.members.len()));
            if o.verbose {
                for &i in &search.members {
                    out.line(format!("v {i} {}", g.vertices()[i].render()));
                }
            }
            if !search.exact {
                return Err(Failure::Resource(anyhow!(
                    "node budget of {} exhausted; clique number is at least {}",
                    o.node_budget,
                    search.members.len()
                )));
            }
        }
        Command::OmegaStar(input) => {
            let class = read_class(input)?;
            let g = ContradictionGraph::build_with(&class, require_m(o)?, &l)?;
            let cert = omega_star(&g, &l)?;
            cert.validate(&l)?;
            out.line(rational::to_fraction_string(&cert.value));
            if let Some(path) = &o.out {
                let text = format!("# seed={}\n{}", o.seed, format::emit_certificate(&cert));
                fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
                return Ok(out);
            }
            if o.verbose {
                out.text.push_str(&format::emit_certificate(&cert));
            }
        }
        Command::Ld(input) => {
            let class = read_class(input)?;
            let (d, tree) = dimension::littlestone_dimension(&class);
            out.line(format!("ld={d}"));
            if let Some(path) = &o.out {
                fs::write(path, format::emit_tree(&tree))
                    .with_context(|| format!("writing {}", path.display()))?;
                return Ok(out);
            }
            if o.verbose {
                out.text.push_str(&format::emit_tree(&tree));
            }
        }
        Command::Vc(input) => {
            let class = read_class(input)?;
            let (d, points) = dimension::vc_dimension(&class);
            out.line(format!("vc={d}"));
            if o.verbose {
                let pts: Vec<String> = points.iter().map(|p| p.0.to_string()).collect();
                out.line(format!("shattered {}", pts.join(",")));
            }
        }
        Command::Cd(input) => {
            let class = read_class(input)?;
            let v = dimension::clique_dimension(&class, o.m_max.unwrap_or(4), &l)?;
            out.line(format!("cd={v}"));
            if o.verbose {
                for (i, d) in v.decisions.iter().enumerate() {
                    out.line(format!("m={} {d:?}", i + 1));
                }
            }
        }
        Command::CdStar(input) => {
            let class = read_class(input)?;
            let v = dimension::fractional_clique_dimension(&class, o.m_max.unwrap_or(3), &l)?;
            out.line(format!("cd_star={v}"));
            if o.verbose {
                for (i, d) in v.decisions.iter().enumerate() {
                    out.line(format!("m={} {d:?}", i + 1));
                }
            }
        }
        Command::Balanced {
            input,
            clique: spec,
        } => {
            let class = read_class(input)?;
            let g = ContradictionGraph::build_with(&class, require_m(o)?, &l)?;
            let c = chosen_clique(&g, spec.as_deref(), o.node_budget)?;
            let (report, stats) = find_balanced_point(&c)?;
            out.line(format!(
                "point={} count_zero={} count_one={} threshold={} balanced={}",
                report.point.0,
                report.count_zero,
                report.count_one,
                rational::to_fraction_string(&report.threshold),
                report.is_balanced()
            ));
            out.line(format!(
                "clique_size={} example_deletions={} edge_deletions={} max_edges_per_step={} surviving_edges={} accounting={}",
                stats.clique_size,
                stats.example_deletions,
                stats.edge_deletions,
                stats.max_edges_per_step,
                stats.surviving_edges,
                stats.accounting_holds()
            ));
            out.ok = report.is_balanced() && stats.accounting_holds();
        }
        Command::TreeFromClique {
            input,
            clique: spec,
        } => {
            let class = read_class(input)?;
            let g = ContradictionGraph::build_with(&class, require_m(o)?, &l)?;
            let c = chosen_clique(&g, spec.as_deref(), o.node_budget)?;
            let tree = tree_from_clique(&c)?;
            out.line(format!("# clique_size={} depth={}", c.len(), tree.depth()));
            out.text.push_str(&format::emit_tree(&tree));
            out.ok = tree.is_shattered_by(&class);
        }
        Command::CliqueFromTree { input, tree } => {
            let class = read_class(input)?;
            let tree = format::parse_tree(&read_text(Some(tree))?)?;
            let depth = tree.depth();
            if depth == 0 {
                return Err(Failure::Usage(anyhow!("a tree of depth 0 has no clique")));
            }
            let g = ContradictionGraph::build_with(&class, depth, &l)?;
            let c = clique::clique_from_tree(&tree, &g)?;
            out.line(format!("clique_size={} m={depth}", c.len()));
            for &i in c.members() {
                out.line(format!("v {i} {}", g.vertices()[i].render()));
            }
        }
        Command::Boost {
            input,
            m0,
            gamma,
            samples,
            transcripts,
            rational_shadow,
        } => {
            let class = read_class(input)?;
            let gamma = match gamma {
                Some(s) => Some(
                    rational::parse_fraction(s)
                        .ok_or_else(|| anyhow!(Error::InvalidParams(format!("bad gamma `{s}`"))))?,
                ),
                None => None,
            };
            let settings = McSettings {
                m: o.m.unwrap_or(3),
                m0: *m0,
                m0_max: o.m_max.unwrap_or(3),
                gamma,
                samples: *samples,
                master_seed: o.seed,
                ..McSettings::default()
            };
            let report = mc::verify_sspfcd_bound(&class, &settings, &l)?;
            out.text.clear();
            out.text.push_str(&report.to_string());
            out.ok = report.passed();
            if let (Some(config), true) = (&report.config, *transcripts > 0) {
                let (lines, ok) = transcript_checks(
                    &class,
                    config,
                    &settings,
                    *transcripts,
                    *rational_shadow,
                    &l,
                )?;
                lines.iter().for_each(|s| out.line(s));
                out.ok &= ok;
            }
        }
        Command::VerifyLemmas => {
            let lines = verify::verify_lemmas(&corpus::default_corpus(), o.m_max.unwrap_or(3), &l)?;
            out.checks(&lines);
        }
        Command::VerifyDichotomy => {
            let lines =
                verify::verify_dichotomy(&corpus::default_corpus(), o.m_max.unwrap_or(3), &l)?;
            out.checks(&lines);
        }
        Command::Curves(input) => {
            let class = read_class(input)?;
            let report = dimension::dimension_report(&class, o.m_max.unwrap_or(3), &l)?;
            out.text.push_str(&format::emit_report_csv(&report));
        }
    }
    Ok(out)
}

/// Expert games on sampled instances for every dataset under test.
fn transcript_checks(
    class: &ConceptClass,
    config: &BoostConfig,
    settings: &McSettings,
    count: usize,
    exact: bool,
    l: &Limits,
) -> anyhow::Result<(Vec<String>, bool)> {
    let mu = boosting::mu_tilde(class, config.m0, l)?;
    let sampler = PatternSampler::new(&mu.distribution)?;
    let mut lines = Vec::new();
    let mut all_ok = true;
    for (index, s) in mc::datasets_under_test(class, settings, l)?
        .iter()
        .enumerate()
    {
        let mut rng = ChaCha8Rng::seed_from_u64(settings.master_seed ^ index as u64);
        let (mut regret_bad, mut implication_bad, mut good, mut shadow_bad) = (0, 0, 0, 0);
        for _ in 0..count {
            let instances = sampler.sample_many(&mut rng, config.rounds);
            let t = boosting::run_expert_game(s, &instances, config.rounds)?;
            regret_bad += usize::from(!t.regret_within_bound());
            implication_bad += usize::from(!t.weak_to_strong_holds(&config.gamma)?);
            good += usize::from(t.all_gamma_good(&config.gamma));
            if exact {
                shadow_bad += usize::from(!t.certify_exact().certified);
            }
        }
        let ok = regret_bad + implication_bad + shadow_bad == 0;
        all_ok &= ok;
        lines.push(format!(
            "T S={} transcripts={count} all_good={good} regret_violations={regret_bad} implication_violations={implication_bad}{} {}",
            s.render(),
            if exact { format!(" exact_violations={shadow_bad}") } else { String::new() },
            if ok { "PASS" } else { "FAIL" }
        ));
    }
    Ok((lines, all_ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match (&cli.opts.out, &cli.command) {
                (
                    Some(path),
                    Command::Gen { .. }
                    | Command::Graph(_)
                    | Command::Curves(_)
                    | Command::TreeFromClique { .. },
                ) => fs::write(path, &out.text),
                _ => io::stdout().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
