use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use trinets::hardness::{reduce, SetSplittingInstance};
use trinets::io::{parse_networks, parse_smallnets, serialize_network, serialize_smallnets, to_dot};
use trinets::network::{displays, tinyfy};
use trinets::oracle::enumerate_networks;
use trinets::smallnet::{extract_all, realize};
use trinets::taxa::Taxon;
use trinets::{solve, solve_binets, solve_supernetwork, solve_tiny, Network, Outcome, SmallNetSet, SolverConfig, TaxaSet};

/// Build and check binary level-1 phylogenetic networks from binets and trinets.
#[derive(Parser)]
#[command(name = "trinets", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a network displaying every binet and trinet of a small-net file.
    Solve {
        #[arg(short, long, default_value = "-")]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Use the polynomial tiny-cycle solver; rejects S1 and S2 items.
        #[arg(long)]
        tiny_only: bool,
        /// Use the polynomial binet solver; rejects trinets.
        #[arg(long, conflicts_with = "tiny_only")]
        binets_only: bool,
        #[command(flatten)]
        opts: SolveOpts,
    },
    /// Find a network displaying every network of an extended Newick file.
    Supernet {
        #[arg(short = 'n', long = "networks", default_value = "-")]
        networks: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        opts: SolveOpts,
    },
    /// List the small nets of a file that a network does not display.
    Check {
        #[arg(short = 'n', long = "network")]
        network: PathBuf,
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Write the binets and trinets displayed by the given networks.
    Extract {
        #[arg(short = 'n', long = "networks", default_value = "-")]
        networks: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Keep only small nets whose cycles have three vertices.
        #[arg(long)]
        tiny_only: bool,
        #[arg(long, conflicts_with = "tiny_only")]
        binets_only: bool,
    },
    /// Write every network on the given taxa (at most six), one per line.
    Enumerate {
        #[arg(long, value_delimiter = ',', required = true)]
        taxa: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Turn a SetSplitting instance into a trinet set.
    Reduce {
        #[arg(short = 'I', long = "instance", default_value = "-")]
        instance: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Replace every cycle with four or more vertices by a 3-cycle.
    Tinyfy {
        #[arg(short = 'n', long = "networks", default_value = "-")]
        networks: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SolveOpts {
    /// Decomposition guesses allowed per recursion step.
    #[arg(long, default_value_t = SolverConfig::default().guess_budget)]
    budget: usize,
    /// Nonzero values shuffle the order in which guesses are tried.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Try largish root cycles before tiny ones.
    #[arg(long)]
    largish_first: bool,
    /// Also write the network in Graphviz format.
    #[arg(long)]
    dot: Option<PathBuf>,
}

impl SolveOpts {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            guess_budget: self.budget,
            deterministic_seed: self.seed,
            explore_tiny_first: !self.largish_first,
        }
    }
}

#[derive(Clone, Copy)]
enum Status {
    Yes = 0,
    No = 1,
    Unknown = 2,
}

const INPUT_ERROR: u8 = 3;

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) if p != Path::new("-") => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        _ => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn read_smallnets(path: &Path) -> Result<SmallNetSet> {
    let text = read_input(path)?;
    let file = parse_smallnets(&text).with_context(|| format!("parsing {}", path.display()))?;
    for w in &file.warnings {
        eprintln!("warning: {w}");
    }
    Ok(file.set)
}

fn read_networks(path: &Path) -> Result<Vec<Network>> {
    let text = read_input(path)?;
    let nets = parse_networks(&text).with_context(|| format!("parsing {}", path.display()))?;
    if nets.is_empty() {
        bail!("{} contains no network", path.display());
    }
    Ok(nets)
}

fn report(outcome: Outcome, output: Option<&Path>, dot: Option<&Path>) -> Result<Status> {
    match outcome {
        Outcome::Solved(net) => {
            write_output(output, &format!("{}\n", serialize_network(&net)))?;
            if let Some(d) = dot {
                fs::write(d, to_dot(&net)).with_context(|| format!("writing {}", d.display()))?;
            }
            Ok(Status::Yes)
        }
        Outcome::NoSolution => {
            eprintln!("no binary level-1 network displays the input");
            Ok(Status::No)
        }
        Outcome::Unknown => {
            eprintln!("guess budget exhausted before the search finished");
            Ok(Status::Unknown)
        }
    }
}

fn run(cmd: Command) -> Result<Status> {
    match cmd {
        Command::Solve {
            input,
            output,
            tiny_only,
            binets_only,
            opts,
        } => {
            let ts = read_smallnets(&input)?;
            let outcome = if binets_only {
                match solve_binets(&ts)? {
                    Some(net) => Outcome::Solved(net),
                    None => Outcome::NoSolution,
                }
            } else if tiny_only {
                solve_tiny(&ts, &opts.config())?
            } else {
                solve(&ts, &opts.config())?
            };
            report(outcome, output.as_deref(), opts.dot.as_deref())
        }
        Command::Supernet { networks, output, opts } => {
            let nets = read_networks(&networks)?;
            let outcome = solve_supernetwork(&nets, &opts.config())?;
            report(outcome, output.as_deref(), opts.dot.as_deref())
        }
        Command::Check { network, input } => {
            if network == Path::new("-") && input == Path::new("-") {
                bail!("the network and the small nets cannot both come from standard input");
            }
            let nets = read_networks(&network)?;
            if nets.len() != 1 {
                bail!("{} holds {} networks, expected one", network.display(), nets.len());
            }
            let net = &nets[0];
            let ts = read_smallnets(&input)?;
            let mut missing = String::new();
            for sn in &ts {
                // Items on taxa the network lacks are not displayed.
                if !displays(net, &realize(sn)).unwrap_or(false) {
                    missing.push_str(&format!("{sn}\n"));
                }
            }
            let absent: Vec<&Taxon> = ts.taxa().iter().filter(|t| net.leaf_vertex(t).is_none()).collect();
            for t in &absent {
                eprintln!("taxon {t} is not a leaf of the network");
            }
            write_output(None, &missing)?;
            Ok(if missing.is_empty() && absent.is_empty() { Status::Yes } else { Status::No })
        }
        Command::Extract {
            networks,
            output,
            tiny_only,
            binets_only,
        } => {
            let nets = read_networks(&networks)?;
            let mut ts = SmallNetSet::new();
            for net in &nets {
                for t in net.taxa() {
                    ts.add_taxon(t);
                }
                if net.leaf_count() >= 2 {
                    ts.extend(extract_all(net)?.iter().cloned());
                }
            }
            if tiny_only {
                ts = ts.tiny_only();
            } else if binets_only {
                ts = ts.binets_only();
            }
            write_output(output.as_deref(), &serialize_smallnets(&ts))?;
            Ok(Status::Yes)
        }
        Command::Enumerate { taxa, output } => {
            let set = taxa
                .iter()
                .map(|t| Taxon::new(t.trim()))
                .collect::<Result<TaxaSet, _>>()?;
            if set.len() != taxa.len() {
                bail!("taxa must be distinct");
            }
            let catalog = enumerate_networks(&set)?;
            let text: String = catalog.networks().iter().map(|n| serialize_network(n) + "\n").collect();
            write_output(output.as_deref(), &text)?;
            Ok(Status::Yes)
        }
        Command::Reduce { instance, output } => {
            let inst: SetSplittingInstance = read_input(&instance)?
                .parse()
                .with_context(|| format!("parsing {}", instance.display()))?;
            write_output(output.as_deref(), &serialize_smallnets(&reduce(&inst)?))?;
            Ok(Status::Yes)
        }
        Command::Tinyfy { networks, output } => {
            let nets = read_networks(&networks)?;
            let text: String = nets.iter().map(|n| serialize_network(&tinyfy(n)) + "\n").collect();
            write_output(output.as_deref(), &text)?;
            Ok(Status::Yes)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(INPUT_ERROR),
            };
        }
    };
    match run(cli.command) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
