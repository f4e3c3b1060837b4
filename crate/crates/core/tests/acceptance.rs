//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;

use qgame::game::{
    bell_pair_block_minimum, best_response_energy, classical_baseline, closed_form_min_energy, play_sequential_game,
    scenarios::ghz3_bell_state, three_qubit_lambda_minimum, BlockPartition, GameConfig, MoveOrder, Objective,
    PartitionMode, Strategy,
};
use qgame::haar::{haar_entropy_statistics, HaarInitial};
use qgame::qudit::{
    default_sweep, entropy_ascent_two_qudits, max_energy_oracle, perfect_defence_check, reconciliation_report,
    single_site_max_energy, QuditSpec,
};
use qgame::rng::stream_rng;
use qgame::search::{fig2a_rows, search_max_entropy_state, AnsatzKind};
use qgame::state::{bell_state, psi_plus, PureState, State};
use qgame::{LocalHamiltonian, Register};

type Check = Result<String, String>;

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn bell_defence() -> Check {
    let h = LocalHamiltonian::pauli_z(2);
    let zero = State::from(PureState::zero(Register::qubits(2).unwrap()));
    let a_first = GameConfig::new(2, 2, 1, MoveOrder::AFirst).unwrap();
    let rec = play_sequential_game(&a_first, &zero, &h, &Strategy::Prepare(bell_state()), &Strategy::BestResponse)
        .map_err(|e| e.to_string())?;
    let b_first = GameConfig::new(2, 2, 1, MoveOrder::BFirst).unwrap();
    let rev = play_sequential_game(&b_first, &zero, &h, &Strategy::BestResponse, &Strategy::BestResponse)
        .map_err(|e| e.to_string())?;
    let e = rec.outcome.energy;
    let r = rev.outcome.energy;
    ensure(e.abs() < 1e-12 && (r - 2.0).abs() < 1e-12, format!("A first: {e:e}; A second: {r}"))
}

fn three_qubit_law() -> Check {
    let mut worst: f64 = 0.0;
    for i in 0..11 {
        let lambda = 0.5 + 0.05 * i as f64;
        let e = three_qubit_lambda_minimum(lambda).map_err(|e| e.to_string())?;
        worst = worst.max((e - (-4.0 * lambda + 1.0)).abs());
    }
    let half = three_qubit_lambda_minimum(0.5).map_err(|e| e.to_string())?;
    ensure(worst < 1e-9 && (half + 1.0).abs() < 1e-9, format!("max deviation {worst:e}; lambda=1/2 gives {half}"))
}

fn ghz_bell_scenario() -> Check {
    let state = State::from(ghz3_bell_state());
    let h = LocalHamiltonian::pauli_z(5);
    let free = best_response_energy(&state, &h, 2, Objective::Minimize, &PartitionMode::Optimize)
        .map_err(|e| e.to_string())?;
    // sites {3,4},{2,5},{1} counted from one
    let fixed = BlockPartition::new(vec![vec![2, 3], vec![1, 4], vec![0]], 5, 2).map_err(|e| e.to_string())?;
    let pinned = best_response_energy(&state, &h, 2, Objective::Minimize, &PartitionMode::Fixed(fixed))
        .map_err(|e| e.to_string())?;
    let per_site = free.per_site_energy;
    ensure(
        (per_site + 0.6).abs() < 1e-10 && pinned.energy.abs() < 1e-10,
        format!("optimized {per_site} per site via {}; fixed partition {:e}", free.partition, pinned.energy),
    )
}

fn closed_form_vs_engine() -> Check {
    let mut worst: f64 = 0.0;
    for nb in 1..=5 {
        for m in 0..nb {
            let engine = bell_pair_block_minimum(nb, m).map_err(|e| e.to_string())?;
            worst = worst.max((engine - closed_form_min_energy(nb as u32, m as u32)).abs());
        }
    }
    let mut worst_pair: f64 = 0.0;
    for n in 2..=8 {
        let per_site = bell_pair_block_minimum(n - 1, 1).map_err(|e| e.to_string())? / n as f64;
        worst_pair = worst_pair.max((per_site - (-1.0 + 2.0 / n as f64)).abs());
    }
    ensure(
        worst < 1e-9 && worst_pair < 1e-9,
        format!("max |closed - engine| {worst:e}; N_B=N-1, M=1 law max deviation {worst_pair:e}"),
    )
}

fn fig2a_curves() -> Check {
    let rows = fig2a_rows(&[5, 10, 15, 20]);
    let complete = [5u32, 10, 15, 20].iter().all(|&nb| (0..=nb).all(|m| rows.iter().any(|r| r.nb == nb && r.m == m)));
    let zero_beyond = [5u32, 10, 15, 20].iter().all(|&nb| (nb..nb + 4).all(|m| closed_form_min_energy(nb, m) == 0.0));
    let spot = closed_form_min_energy(4, 2);
    ensure(
        complete && zero_beyond && (spot + 2.5).abs() < 1e-9,
        format!("{} rows, complete={complete}, zero for M>=N_B={zero_beyond}, (4,2) -> {spot}", rows.len()),
    )
}

fn ame_search() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 2..=8 {
        let kind = if n == 4 { AnsatzKind::Symmetric4 } else { AnsatzKind::Generic };
        let s = search_max_entropy_state(n, kind, 32, 0).map_err(|e| e.to_string())?.mean_entropy;
        let k = (n / 2) as f64;
        ok &= match n {
            4 => (1.78..=1.80).contains(&s) && s < 2.0,
            7 | 8 => s <= k - 0.01,
            _ => (s - k).abs() < 1e-4,
        };
        parts.push(format!("N={n}: {s:.6}"));
    }
    ensure(ok, parts.join(", "))
}

fn haar_statistics() -> Check {
    let r = haar_entropy_statistics(4, 1000, 7, HaarInitial::Zero).map_err(|e| e.to_string())?;
    let ok = (1.30..=1.36).contains(&r.mean)
        && (0.09..=0.15).contains(&r.std)
        && (1.55..=1.75).contains(&r.max)
        && r.entropies.iter().all(|&e| e < 1.79);
    ensure(ok, format!("mean {:.4}, std {:.4}, max {:.4}", r.mean, r.std, r.max))
}

fn random_spec<R: Rng>(rng: &mut R) -> QuditSpec {
    let mut p: [f64; 3] = [rng.random_range(0.01..1.0), rng.random_range(0.01..1.0), rng.random_range(0.0..1.0)];
    p.sort_by(|a, b| b.total_cmp(a));
    let total = p[0] + 2.0 * p[1] + 2.0 * p[2];
    let e1 = rng.random_range(0.1..2.0);
    let e2 = e1 + rng.random_range(0.1..3.0);
    let (p1, p2) = (p[1] / total, p[2] / total);
    QuditSpec::new(1.0 - 2.0 * p1 - 2.0 * p2, p1, p2, e1, e2).expect("valid by construction")
}

fn ergotropy() -> Check {
    let mut rng = stream_rng(2024, 0);
    let mut mismatches = 0;
    for _ in 0..50 {
        let s = random_spec(&mut rng);
        if single_site_max_energy(&s) != max_energy_oracle(&[s]).map_err(|e| e.to_string())? {
            mismatches += 1;
        }
    }
    let rows = default_sweep().map_err(|e| e.to_string())?;
    let dominated = rows.iter().all(|r| r.oracle_per_site >= r.single_site - 1e-12);
    let head = &rows[0];
    let anchored = head.p2 == 0.0
        && (head.oracle_per_site - 2.40625).abs() < 1e-12
        && (head.single_site - 2.25).abs() < 1e-12
        && head.oracle_per_site - head.single_site >= 0.1;
    let report = reconciliation_report(&rows);
    ensure(
        mismatches == 0 && dominated && anchored && report.contains("max |delta|"),
        format!(
            "single-site mismatches {mismatches}/50; dominance {dominated}; p2=0: oracle {} vs single {}; printed formula {} (max |delta| line emitted)",
            head.oracle_per_site,
            head.single_site,
            head.formula.selected()
        ),
    )
}

fn ladder_and_defence() -> Check {
    let spec = QuditSpec::new(0.5, 0.25, 0.0, 1.0, 4.0).unwrap();
    let ascent = entropy_ascent_two_qudits(&spec, None, 8, 0);
    let h = LocalHamiltonian::five_level(2, 1.0, 4.0);
    let defence = perfect_defence_check(&psi_plus(5).unwrap(), &h, 100, 0).map_err(|e| e.to_string())?;
    ensure(
        ascent.entropy >= 0.999 && defence.max_delta < 1e-9,
        format!("base-5 entropy {:.7}; defence max |dE| {:e}", ascent.entropy, defence.max_delta),
    )
}

fn classical() -> Check {
    for n in 1..=8 {
        for (order, target) in [(MoveOrder::AFirst, -(n as f64)), (MoveOrder::BFirst, n as f64)] {
            let r = classical_baseline(n, order).map_err(|e| e.to_string())?;
            if r.energy != target || !r.first_mover_powerless {
                return Err(format!("N={n} {order:?}: {} (powerless={})", r.energy, r.first_mover_powerless));
            }
        }
    }
    Ok("second mover reaches -N / +N for N=1..8 whatever the first mover does".into())
}

fn main() -> ExitCode {
    let checks: [(&str, fn() -> Check); 10] = [
        ("bell perfect defence", bell_defence),
        ("three-qubit lambda law", three_qubit_law),
        ("GHZ3 x Bell scenario", ghz_bell_scenario),
        ("closed form vs engine", closed_form_vs_engine),
        ("closed-form curves", fig2a_curves),
        ("maximal entropy search", ame_search),
        ("Haar statistics", haar_statistics),
        ("five-level ergotropy", ergotropy),
        ("qudit ladder and defence", ladder_and_defence),
        ("classical baseline", classical),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let start = Instant::now();
        let (tag, detail) = match check() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {name}: {detail} [{:.2?}]", start.elapsed());
    }
    println!("acceptance: {} passed, {failed} failed", checks.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
