use approx::assert_abs_diff_eq;
use num_complex::Complex64 as C64;
use proptest::prelude::*;
use rand::Rng;

use qgame::game::{best_response_energy, passive_energy, Objective, PartitionMode, SpectrumTable};
use qgame::haar::{haar_entropy_statistics, sample_haar_unitary, HaarInitial};
use qgame::linalg::{unitarity_deviation, CVector};
use qgame::optimize::compass_search;
use qgame::qudit::ladder::site_entropy;
use qgame::qudit::{entropy_ascent_two_qudits, max_energy_oracle, single_site_max_energy, LadderParams, QuditSpec};
use qgame::rng::stream_rng;
use qgame::search::{mean_entropy, EntropyLossSpec};
use qgame::unitary::gates;
use qgame::{search_max_entropy_state, AnsatzKind, BlockUnitary, LocalHamiltonian, PureState, Register, State};

fn pure_from(n: usize, re_im: &[f64]) -> PureState {
    let amps = CVector::from_iterator(1 << n, re_im.chunks(2).map(|c| C64::new(c[0], c[1])));
    PureState::from_unnormalized(Register::qubits(n).unwrap(), amps).unwrap()
}

fn random_pure<R: Rng>(n: usize, rng: &mut R) -> PureState {
    let v: Vec<f64> = (0..2 << n).map(|_| rng.random_range(-1.0..1.0)).collect();
    pure_from(n, &v)
}

fn amplitudes(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0f64, 2 << n).prop_filter("nonzero", |v| v.iter().any(|x| x.abs() > 1e-3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn minimizing_is_maximizing_the_negated_hamiltonian(v in amplitudes(4), k in 1usize..=4) {
        let state = State::from(pure_from(4, &v));
        let h = LocalHamiltonian::pauli_z(4);
        let min = best_response_energy(&state, &h, k, Objective::Minimize, &PartitionMode::Optimize).unwrap();
        let max = best_response_energy(&state, &h.negated(), k, Objective::Maximize, &PartitionMode::Optimize).unwrap();
        prop_assert!((min.energy + max.energy).abs() < 1e-10);
    }

    #[test]
    fn larger_blocks_never_hurt_the_responder(v in amplitudes(4)) {
        let state = State::from(pure_from(4, &v));
        let h = LocalHamiltonian::pauli_z(4);
        let energies: Vec<f64> = (1..=4)
            .map(|k| best_response_energy(&state, &h, k, Objective::Minimize, &PartitionMode::Optimize).unwrap().energy)
            .collect();
        for w in energies.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-10, "{energies:?}");
        }
        // a pure state on the whole register can reach the ground state
        prop_assert!((energies[3] + 4.0).abs() < 1e-9);
    }

    #[test]
    fn complementary_subsets_halve_the_loss(v in amplitudes(4)) {
        let state = pure_from(4, &v);
        let halved = mean_entropy(&state, &EntropyLossSpec::new(4).unwrap()).unwrap();
        let full = mean_entropy(&state, &EntropyLossSpec::all_subsets(4).unwrap()).unwrap();
        prop_assert!((halved - full).abs() < 1e-12);
    }

    #[test]
    fn embedding_commutes_with_apply(v in amplitudes(3), seed in 0u64..1000, a in 0usize..3, b in 0usize..3) {
        prop_assume!(a != b);
        let register = Register::qubits(3).unwrap();
        let state = pure_from(3, &v);
        let u = BlockUnitary::new(vec![a, b], sample_haar_unitary(4, &mut stream_rng(seed, 0))).unwrap();
        let full = gates::embed(&register, &u).unwrap();
        prop_assert!(unitarity_deviation(&full) < 1e-12);
        let direct = state.apply(&u).unwrap();
        let via = &full * state.amplitudes();
        prop_assert!((direct.amplitudes() - via).norm() < 1e-12);
    }
}

#[test]
fn passive_energy_is_a_lower_bound_under_block_unitaries() {
    let mut rng = stream_rng(11, 0);
    let h = LocalHamiltonian::pauli_z(4);
    let block = [1usize, 3];
    let state = State::from(random_pure(4, &mut rng));
    let reduced = state.partial_trace(&block).unwrap();
    let floor = passive_energy(&reduced.eigenvalues(), &SpectrumTable::for_block(&h, &block)).unwrap();
    for _ in 0..200 {
        let u = BlockUnitary::new(block.to_vec(), sample_haar_unitary(4, &mut rng)).unwrap();
        let moved = state.apply(&u).unwrap().partial_trace(&block).unwrap();
        assert!(h.block_energy(&moved, &block) >= floor - 1e-12);
    }
}

#[test]
fn energy_is_linear_in_the_state() {
    let mut rng = stream_rng(12, 0);
    let h = LocalHamiltonian::pauli_z(3);
    let (x, y) = (random_pure(3, &mut rng).to_mixed(), random_pure(3, &mut rng).to_mixed());
    let p = 0.3;
    let mix = qgame::MixedState::new(x.register().clone(), x.matrix() * C64::from(p) + y.matrix() * C64::from(1.0 - p)).unwrap();
    let e = |m: &qgame::MixedState| h.energy(&State::from(m.clone())).unwrap();
    assert_abs_diff_eq!(e(&mix), p * e(&x) + (1.0 - p) * e(&y), epsilon = 1e-12);
}

#[test]
fn search_is_deterministic() {
    let a = search_max_entropy_state(3, AnsatzKind::Generic, 4, 5).unwrap();
    let b = search_max_entropy_state(3, AnsatzKind::Generic, 4, 5).unwrap();
    assert_eq!(a.mean_entropy, b.mean_entropy);
    assert_eq!(a.restart, b.restart);
    assert_eq!(a.state.amplitudes(), b.state.amplitudes());
}

#[test]
fn compass_search_reaches_the_same_optimum() {
    let spec = EntropyLossSpec::new(3).unwrap();
    let gradient = search_max_entropy_state(3, AnsatzKind::Generic, 4, 0).unwrap().mean_entropy;
    let mut rng = stream_rng(3, 0);
    let x0: Vec<f64> = (0..16).map(|_| rng.random_range(-1.0..1.0)).collect();
    let r = compass_search(|x| mean_entropy(&pure_from(3, x), &spec).unwrap(), x0, 0.25, 1e-7, 200_000);
    assert_abs_diff_eq!(r.value, gradient, epsilon = 1e-3);
}

#[test]
fn haar_first_entry_is_uniform_in_modulus() {
    let mut rng = stream_rng(99, 0);
    let mut xs: Vec<f64> = (0..100_000).map(|_| sample_haar_unitary(2, &mut rng)[(0, 0)].norm_sqr()).collect();
    xs.sort_by(f64::total_cmp);
    let len = xs.len() as f64;
    let ks = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| (x - i as f64 / len).abs().max(((i + 1) as f64 / len - x).abs()))
        .fold(0.0, f64::max);
    assert!(ks < 0.01, "KS statistic {ks}");
}

#[test]
fn haar_statistics_do_not_depend_on_the_initial_product_state() {
    let zero = haar_entropy_statistics(4, 1000, 7, HaarInitial::Zero).unwrap();
    let plus = haar_entropy_statistics(4, 1000, 7, HaarInitial::Plus).unwrap();
    let se = zero.standard_error().hypot(plus.standard_error());
    assert!((zero.mean - plus.mean).abs() < 3.0 * se, "{} vs {} (se {se})", zero.mean, plus.mean);
    assert_abs_diff_eq!(zero.mean, zero.pooled_mean, epsilon = 1e-12);
}

#[test]
fn oracle_dominates_single_site_moves() {
    let mut rng = stream_rng(5, 0);
    for _ in 0..50 {
        let mut p: [f64; 3] = [rng.random_range(0.01..1.0), rng.random_range(0.01..1.0), rng.random_range(0.0..1.0)];
        p.sort_by(|a, b| b.total_cmp(a));
        let total = p[0] + 2.0 * p[1] + 2.0 * p[2];
        let (p1, p2) = (p[1] / total, p[2] / total);
        let e1 = rng.random_range(0.1..2.0);
        let s = QuditSpec::new(1.0 - 2.0 * p1 - 2.0 * p2, p1, p2, e1, e1 + rng.random_range(0.1..3.0)).unwrap();
        let pair = max_energy_oracle(&[s, s]).unwrap();
        assert!(pair >= 2.0 * single_site_max_energy(&s) - 1e-12);
    }
}

#[test]
fn ladder_is_unitary_and_ascent_is_monotone() {
    let spec = QuditSpec::from_p0_p2(0.5, 0.05, 1.0, 4.0).unwrap();
    let params = LadderParams::random(&mut stream_rng(1, 0), 1.0);
    assert!(unitarity_deviation(&params.unitary()) < 1e-10);
    let e = site_entropy(&spec, &params);
    assert!((0.0..=1.0 + 1e-12).contains(&e));
    let ascent = entropy_ascent_two_qudits(&spec, Some(&params), 1, 0);
    assert!(ascent.history.windows(2).all(|w| w[1] >= w[0] - 1e-12));
    assert!(ascent.entropy <= 1.0 + 1e-12 && ascent.entropy >= e);
}
