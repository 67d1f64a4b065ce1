//! `atlas`: enumerate graphs, sieve them, solve single games, search for
//! minimal links and check the results.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use shannon_links::atlas::{Atlas, AtlasMeta};
use shannon_links::enumerate::{connected_graphs, games_on};
use shannon_links::search::{
    derive_minimal_strong, find_minimal_strong_direct, find_minimal_weak_with, SearchMode,
    SearchOptions,
};
use shannon_links::sieve::{sieve, SieveStats};
use shannon_links::tables::{render_search_rows, render_weight_rows, search_rows, weight_rows};
use shannon_links::verify::{self, AtlasBuild, Check, Suite};
use shannon_links::{graph6, Error, Graph, LinkGame, OutcomeClass, Solver};

#[derive(Parser)]
#[command(
    name = "atlas",
    version,
    about = "Minimal links of the Shannon vertex game"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "ATLAS_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every connected graph on N vertices in graph6.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// One line per non-isomorphic terminal pair, suffixed ` s,t`.
        #[arg(long)]
        games: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the graphs that survive the sieve.
    Sieve {
        #[arg(long)]
        n: Option<usize>,
        /// graph6 input, one graph per line; defaults to all connected graphs on N vertices.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Per-condition discard counts on stderr.
        #[arg(long)]
        stats: bool,
    },
    /// Solve one game.
    Solve {
        #[arg(long)]
        g6: String,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
    /// Find every minimal weak link on N vertices.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "sieved")]
        mode: SearchMode,
        /// Directory for per-chunk results; finished chunks are reused.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Minimal strong links, derived from a weak atlas or searched directly.
    Strong {
        #[arg(long, conflicts_with_all = ["direct", "n"], required_unless_present = "direct")]
        from: Option<PathBuf>,
        #[arg(long, requires = "n")]
        direct: bool,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Summary tables over an atlas.
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        #[arg(long)]
        nmax: usize,
        /// Atlas files; several are merged.
        #[arg(long, required = true, num_args = 1..)]
        atlas: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite; exits 1 on any failed check.
    Verify {
        #[arg(long)]
        suite: Suite,
        /// Largest size covered (defaults: oracle 6, appendix 8, otherwise 9).
        #[arg(long)]
        nmax: Option<usize>,
        /// Use these atlas files instead of searching.
        #[arg(long, num_args = 1..)]
        atlas: Vec<PathBuf>,
    },
    /// Print a named link as graph6 and terminals.
    Named {
        #[arg(long)]
        name: String,
        #[arg(long, num_args = 1..)]
        atlas: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
}

enum Failure {
    Mismatch(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Integrity(_) => Failure::Mismatch(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("atlas: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("atlas: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("atlas: {msg}");
            ExitCode::from(2)
        }
    }
}

fn output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn open(path: &Path) -> std::result::Result<BufReader<File>, Failure> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_atlas(paths: &[PathBuf]) -> std::result::Result<Option<Atlas>, Failure> {
    let mut merged: Option<Atlas> = None;
    for p in paths {
        let atlas = Atlas::read(open(p)?)?;
        match &mut merged {
            Some(m) => m.merge(atlas)?,
            None => merged = Some(atlas),
        }
    }
    Ok(merged)
}

/// Adds strong links derived from the weak ones when the atlas has none.
fn with_strong(mut atlas: Atlas) -> std::result::Result<Atlas, Failure> {
    if atlas
        .records()
        .iter()
        .any(|r| r.class == OutcomeClass::Strong)
    {
        return Ok(atlas);
    }
    let weak: Vec<_> = atlas
        .records()
        .iter()
        .filter(|r| r.class == OutcomeClass::Weak)
        .cloned()
        .collect();
    let strong = derive_minimal_strong(&weak)?;
    let meta = atlas.meta.clone();
    atlas.merge(Atlas::new(meta, strong)?)?;
    Ok(atlas)
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Enumerate { n, games, out } => {
            let mut w = output(out.as_deref())?;
            for g in connected_graphs(n)?.graphs() {
                let text = graph6::encode(&g);
                if games {
                    for (_, game) in games_on(&g) {
                        writeln!(w, "{text} {},{}", game.s(), game.t())?;
                    }
                } else {
                    writeln!(w, "{text}")?;
                }
            }
            w.flush()?;
        }
        Command::Sieve { n, input, stats } => {
            let graphs: Vec<Graph> = match (&input, n) {
                (Some(path), _) => read_graphs(path)?,
                (None, Some(n)) => connected_graphs(n)?.graphs().collect(),
                (None, None) => return Err(Failure::Usage("sieve needs --n or --in".into())),
            };
            let mut counts = SieveStats::default();
            let mut w = output(None)?;
            for g in &graphs {
                let verdict = sieve(g);
                counts.record(&verdict);
                if verdict.keep {
                    writeln!(w, "{}", graph6::encode(g))?;
                }
            }
            w.flush()?;
            if stats {
                eprintln!("seen {} kept {}", counts.seen, counts.kept);
                for (condition, k) in &counts.discarded {
                    eprintln!("{condition}  {k}");
                }
            }
        }
        Command::Solve { g6, s, t } => {
            let game = LinkGame::new(graph6::decode(&g6)?, s, t)?;
            let mut solver = Solver::new();
            let class = solver.outcome(&game);
            let minimal = solver.is_minimal_as(&game, class);
            println!("class {class}");
            println!("minimal {minimal}");
            let pivots = match class {
                OutcomeClass::Weak => solver.pivots(&game)?,
                _ => Vec::new(),
            };
            let list: Vec<String> = pivots.iter().map(ToString::to_string).collect();
            println!("pivots {}", list.join(" "));
        }
        Command::Search {
            n,
            mode,
            checkpoint,
            out,
        } => {
            let options = SearchOptions {
                checkpoint,
                ..SearchOptions::default()
            };
            let report = find_minimal_weak_with(n, mode, &options)?;
            eprintln!(
                "n={n}: {} minimal weak links; {} graphs, {} games solved, {} kept by the sieve, {} bound exception(s)",
                report.records.len(),
                report.graphs,
                report.games,
                report.sieve.kept,
                report.exceptions.len()
            );
            let atlas = Atlas::new(AtlasMeta::new(n, n, mode.to_string()), report.records)?;
            let mut w = output(Some(&out))?;
            atlas.write(&mut w)?;
            w.flush()?;
        }
        Command::Strong {
            from,
            direct,
            n,
            out,
        } => {
            let atlas = if direct {
                let n = n.expect("clap requires --n with --direct");
                let report = find_minimal_strong_direct(n)?;
                Atlas::new(AtlasMeta::new(n, n, "direct"), report.records)?
            } else {
                let path = from.expect("clap requires --from without --direct");
                let weak = Atlas::read(open(&path)?)?;
                let records: Vec<_> = weak
                    .records()
                    .iter()
                    .filter(|r| r.class == OutcomeClass::Weak)
                    .cloned()
                    .collect();
                let strong = derive_minimal_strong(&records)?;
                let meta = AtlasMeta::new(
                    weak.meta.n_min.saturating_sub(1),
                    weak.meta.n_max.saturating_sub(1),
                    "derived",
                );
                Atlas::new(meta, strong)?
            };
            eprintln!("{} minimal strong links", atlas.len());
            let mut w = output(out.as_deref())?;
            atlas.write(&mut w)?;
            w.flush()?;
        }
        Command::Tables {
            which,
            nmax,
            atlas,
            format,
        } => {
            let atlas = load_atlas(&atlas)?.expect("clap requires --atlas");
            let csv = matches!(format, Format::Csv);
            let text = match which {
                1 => render_search_rows(&search_rows(&atlas, nmax)?, csv),
                2 => render_weight_rows(&weight_rows(&atlas, OutcomeClass::Weak, nmax)?, csv),
                _ => render_weight_rows(
                    &weight_rows(&with_strong(atlas)?, OutcomeClass::Strong, nmax)?,
                    csv,
                ),
            };
            print!("{text}");
        }
        Command::Verify { suite, nmax, atlas } => {
            let checks = run_suite(suite, nmax, &atlas)?;
            for c in &checks {
                println!("{c}");
            }
            let failed = checks.iter().filter(|c| !c.passed()).count();
            println!("{} checks, {failed} failed", checks.len());
            if failed > 0 {
                return Err(Failure::Mismatch(format!(
                    "{failed} {suite} check(s) failed"
                )));
            }
        }
        Command::Named { name, atlas } => {
            let atlas = match load_atlas(&atlas)? {
                Some(a) => a,
                None => Atlas::new(AtlasMeta::new(0, 0, "none"), Vec::new())?,
            };
            let link = atlas.named(&name)?;
            let game = link.game;
            println!("{} {},{}", graph6::encode(game.graph()), game.s(), game.t());
            if link.provisional {
                eprintln!("{name}: bound by canonical order among links with the same signature");
            }
        }
    }
    Ok(())
}

fn read_graphs(path: &Path) -> std::result::Result<Vec<Graph>, Failure> {
    let mut out = Vec::new();
    for (i, line) in open(path)?.lines().enumerate() {
        let line = line?;
        let text = line.split_whitespace().next().unwrap_or("");
        if text.is_empty() {
            continue;
        }
        out.push(
            graph6::decode(text)
                .map_err(|e| Failure::Usage(format!("{}:{}: {e}", path.display(), i + 1)))?,
        );
    }
    Ok(out)
}

fn run_suite(
    suite: Suite,
    nmax: Option<usize>,
    atlas: &[PathBuf],
) -> std::result::Result<Vec<Check>, Failure> {
    Ok(match suite {
        Suite::Oracle => verify::oracle_suite(nmax.unwrap_or(6))?,
        Suite::Appendix => verify::appendix_suite(nmax.unwrap_or(8))?,
        Suite::Invariants | Suite::Tables => {
            let build = match load_atlas(atlas)? {
                Some(a) => AtlasBuild {
                    atlas: with_strong(a)?,
                    reports: Vec::new(),
                },
                None => verify::build_atlas(nmax.unwrap_or(9), SearchMode::Sieved)?,
            };
            if suite == Suite::Invariants {
                verify::invariants_suite(&build.atlas)?
            } else {
                verify::tables_suite(&build)?
            }
        }
    })
}
