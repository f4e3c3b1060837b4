use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qgame::export::{fmt_f64, write_table};
use qgame::game::{
    bell_pair_block_minimum, classical_baseline, closed_form_min_energy, parse_script, three_qubit_lambda_minimum,
    MoveOrder,
};
use qgame::haar::{haar_entropy_statistics, HaarInitial};
use qgame::hamiltonian::LocalHamiltonian;
use qgame::qudit::{
    entropy_ascent_two_qudits, ergotropy_sweep, perfect_defence_check, reconciliation_report, QuditSpec,
};
use qgame::search::fig2::defence_ansatz;
use qgame::search::{
    fig2a_rows, fig2bc_min_energies, search_max_entropy_state, AnsatzKind, StateCache, StateRecord,
    DEFAULT_RESTARTS,
};
use qgame::state::psi_plus;
use qgame::{Error, Result};

#[derive(Parser)]
#[command(name = "qgame", version, about = "Experiments for the sequential two-player unitary game")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Register sizes, e.g. `2-8` or `4,5,6`.
    #[arg(long, default_value = "2-8")]
    n: String,
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// State cache file; searched states are read from and added to it.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form responder minimum per site against M/N_B.
    Fig2a {
        /// Block sizes N_B.
        #[arg(long, default_value = "5,10,15,20")]
        nb: String,
        #[command(flatten)]
        output: Output,
    },
    /// Responder minimum per site against searched states, by M/N_B.
    Fig2b {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, default_value = "1-8")]
        nb: String,
        #[command(flatten)]
        output: Output,
    },
    /// Responder minimum per site against searched states, by N.
    Fig2c {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, default_value = "1-8")]
        nb: String,
        #[command(flatten)]
        output: Output,
    },
    /// Mean half-system entropy of Haar-random states.
    HaarStats {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Init::Zero)]
        init: Init,
        #[command(flatten)]
        output: Output,
    },
    /// Single-site vs two-site maximal energy on five-level sites.
    ErgotropySweep {
        #[arg(long, default_value_t = 25)]
        samples: usize,
        /// Write the formula reconciliation report here instead of stderr.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Entropy ascent with the two-qudit ladder and the maximally entangled defence.
    QuditLadder {
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Haar trials for the defence check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Maximal mean subsystem entropy per register size.
    AmeSearch {
        #[command(flatten)]
        search: SearchArgs,
        /// Force an ansatz instead of the default per size.
        #[arg(long)]
        ansatz: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Three-qubit superposition sweep over λ1 in [0.5, 1] against a responder with pairs.
    AppendixN3 {
        #[arg(long, default_value_t = 11)]
        samples: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Closed form against the engine on the Bell-pair construction.
    ClosedForm {
        /// Largest block size.
        #[arg(long, default_value_t = 5)]
        nb: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Plays a scripted game from a move file.
    Play {
        /// Move file.
        moves: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// The bit-flip game, exhaustively.
    ClassicalDemo {
        /// Largest register size.
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Init {
    Zero,
    Plus,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        e if e.is_guard() => 3,
        Error::InvalidParameter(_) | Error::Parse { .. } => 2,
        _ => 1,
    }
}

fn sink(output: &Output) -> Result<Box<dyn Write>> {
    Ok(match &output.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    })
}

/// `a-b` or a comma list.
fn parse_list(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidParameter(format!("expected a list like '2-8' or '4,5,6', got '{s}'"));
    if let Some((a, b)) = s.split_once('-') {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
}

fn searched_state(search: &SearchArgs, cache: &mut Option<StateCache>, n: usize, ansatz: AnsatzKind) -> Result<StateRecord> {
    match cache {
        Some(c) => c.load_or_search(n, ansatz, search.restarts, search.seed),
        None => {
            let out = search_max_entropy_state(n, ansatz, search.restarts, search.seed)?;
            Ok(StateRecord { n, ansatz, seed: search.seed, mean_entropy: out.mean_entropy, state: out.state })
        }
    }
}

fn open_cache(search: &SearchArgs) -> Result<Option<StateCache>> {
    search.cache.as_ref().map(StateCache::open).transpose()
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Fig2a { nb, output } => {
            let sizes = parse_list(&nb)?;
            if sizes.iter().any(|&v| v == 0 || v > 40) {
                return Err(Error::Guard("closed-form block sizes must lie in 1..=40".into()));
            }
            let sizes: Vec<u32> = sizes.into_iter().map(|v| v as u32).collect();
            let rows = fig2a_rows(&sizes).into_iter().map(|r| {
                vec![r.nb.to_string(), r.m.to_string(), fmt_f64(r.m_over_nb), fmt_f64(r.energy_per_site)]
            });
            write_table(sink(&output)?, "fig2a", None, &["N_B", "M", "M_over_NB", "energy_per_site"], rows)
        }
        Command::Fig2b { search, nb, output } => fig2(search, &nb, output, "fig2b"),
        Command::Fig2c { search, nb, output } => fig2(search, &nb, output, "fig2c"),
        Command::HaarStats { samples, seed, n, init, output } => {
            let initial = match init {
                Init::Zero => HaarInitial::Zero,
                Init::Plus => HaarInitial::Plus,
            };
            let r = haar_entropy_statistics(n, samples, seed, initial)?;
            eprintln!(
                "samples={} mean={:.4} std={:.4} max={:.4} pooled_mean={:.4}",
                r.samples(),
                r.mean,
                r.std,
                r.max,
                r.pooled_mean
            );
            let rows = r.entropies.iter().enumerate().map(|(i, e)| vec![i.to_string(), fmt_f64(*e)]);
            write_table(sink(&output)?, "haar-stats", Some(seed), &["sample_index", "mean_entropy"], rows)
        }
        Command::ErgotropySweep { samples, report, output } => {
            let rows = ergotropy_sweep(0.5, 0.0, 0.12, samples, 1.0, 4.0)?;
            let text = reconciliation_report(&rows);
            match report {
                Some(path) => std::fs::write(path, &text)?,
                None => eprint!("{text}"),
            }
            let cols = ["p_2", "p_1", "single_site", "oracle_two_site_per_site", "printed_formula", "branch"];
            let csv_rows = rows.iter().map(|r| {
                let branch = if r.formula.upper_selected { "p0p2>p1^2" } else { "p0p2<=p1^2" };
                vec![
                    fmt_f64(r.p2),
                    fmt_f64(r.p1),
                    fmt_f64(r.single_site),
                    fmt_f64(r.oracle_per_site),
                    fmt_f64(r.formula.selected()),
                    branch.to_string(),
                ]
            });
            write_table(sink(&output)?, "ergotropy-sweep", None, &cols, csv_rows)
        }
        Command::QuditLadder { restarts, seed, samples, output } => {
            let spec = QuditSpec::new(0.5, 0.25, 0.0, 1.0, 4.0)?;
            let ascent = entropy_ascent_two_qudits(&spec, None, restarts, seed);
            let h = LocalHamiltonian::five_level(2, 1.0, 4.0);
            let defence = perfect_defence_check(&psi_plus(5)?, &h, samples, seed)?;
            let cols = ["p_0", "p_1", "p_2", "entropy_base5", "start", "defence_trials", "defence_max_delta"];
            let row = vec![
                fmt_f64(spec.p0),
                fmt_f64(spec.p1),
                fmt_f64(spec.p2),
                fmt_f64(ascent.entropy),
                ascent.start.to_string(),
                defence.trials.to_string(),
                fmt_f64(defence.max_delta),
            ];
            write_table(sink(&output)?, "qudit-ladder", Some(seed), &cols, [row])
        }
        Command::AmeSearch { search, ansatz, output } => {
            let forced: Option<AnsatzKind> = ansatz.as_deref().map(str::parse).transpose()?;
            let ns = parse_list(&search.n)?;
            let mut cache = open_cache(&search)?;
            let mut rows = Vec::new();
            for n in ns {
                let kind = forced.unwrap_or_else(|| defence_ansatz(n));
                let r = searched_state(&search, &mut cache, n, kind)?;
                let k = (n / 2) as f64;
                rows.push(vec![
                    n.to_string(),
                    kind.to_string(),
                    fmt_f64(r.mean_entropy),
                    fmt_f64(k),
                    fmt_f64(k - r.mean_entropy),
                ]);
            }
            let cols = ["N", "ansatz", "mean_entropy", "k", "gap"];
            write_table(sink(&output)?, "ame-search", Some(search.seed), &cols, rows)
        }
        Command::AppendixN3 { samples, output } => {
            if samples < 2 {
                return Err(Error::InvalidParameter("need at least two grid points".into()));
            }
            let mut rows = Vec::new();
            for i in 0..samples {
                // λ1 is the larger weight
                let lambda = 0.5 + 0.5 * i as f64 / (samples - 1) as f64;
                let e = three_qubit_lambda_minimum(lambda)?;
                rows.push(vec![fmt_f64(lambda), fmt_f64(e), fmt_f64(-4.0 * lambda + 1.0)]);
            }
            write_table(sink(&output)?, "appendix-n3", None, &["lambda_1", "energy", "law"], rows)
        }
        Command::ClosedForm { nb, output } => {
            if nb == 0 || nb > 7 {
                return Err(Error::Guard(format!("closed-form check supports N_B in 1..=7, got {nb}")));
            }
            let mut rows = Vec::new();
            for b in 1..=nb {
                for m in 0..b {
                    if b + m > 9 {
                        continue;
                    }
                    let closed = closed_form_min_energy(b as u32, m as u32);
                    let engine = bell_pair_block_minimum(b, m)?;
                    rows.push(vec![b.to_string(), m.to_string(), fmt_f64(closed), fmt_f64(engine), fmt_f64(engine - closed)]);
                }
            }
            write_table(sink(&output)?, "closed-form", None, &["N_B", "M", "closed_form", "engine", "delta"], rows)
        }
        Command::Play { moves, output } => {
            let text = std::fs::read_to_string(&moves)?;
            let script = parse_script(&text)?;
            let record = script.play()?;
            let h = LocalHamiltonian::pauli_z(script.config.n);
            let initial = h.energy(&script.initial)?;
            let order = match script.config.order {
                MoveOrder::AFirst => "A-first",
                MoveOrder::BFirst => "B-first",
            };
            let cols = ["order", "initial_energy", "after_first", "final_energy", "final_per_site", "second_partition"];
            // partitions are printed with 1-based sites like the move file
            let partition = record
                .outcome
                .partition
                .blocks()
                .iter()
                .map(|b| b.iter().map(|s| (s + 1).to_string()).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join("|");
            let row = vec![
                order.to_string(),
                fmt_f64(initial),
                fmt_f64(record.after_first),
                fmt_f64(record.outcome.energy),
                fmt_f64(record.outcome.per_site_energy),
                partition,
            ];
            write_table(sink(&output)?, "play", None, &cols, [row])
        }
        Command::ClassicalDemo { n, output } => {
            let mut rows = Vec::new();
            for k in 1..=n {
                for order in [MoveOrder::AFirst, MoveOrder::BFirst] {
                    let r = classical_baseline(k, order)?;
                    let name = if order == MoveOrder::AFirst { "A-first" } else { "B-first" };
                    rows.push(vec![k.to_string(), name.into(), fmt_f64(r.energy), r.first_mover_powerless.to_string()]);
                }
            }
            let cols = ["N", "order", "energy", "first_mover_powerless"];
            write_table(sink(&output)?, "classical-demo", None, &cols, rows)
        }
    }
}

fn fig2(search: SearchArgs, nb: &str, output: Output, experiment: &str) -> Result<()> {
    let ns = parse_list(&search.n)?;
    let nbs = parse_list(nb)?;
    let mut cache = open_cache(&search)?;
    let rows = fig2bc_min_energies(&ns, &nbs, |n| searched_state(&search, &mut cache, n, defence_ansatz(n)))?;
    let cols = ["N", "N_B", "M", "M_over_NB", "mean_entropy", "energy", "energy_per_site"];
    let csv_rows = rows.iter().map(|r| {
        vec![
            r.n.to_string(),
            r.nb.to_string(),
            r.m.to_string(),
            fmt_f64(r.m_over_nb),
            fmt_f64(r.mean_entropy),
            fmt_f64(r.energy),
            fmt_f64(r.energy_per_site),
        ]
    });
    write_table(sink(&output)?, experiment, Some(search.seed), &cols, csv_rows)
}
