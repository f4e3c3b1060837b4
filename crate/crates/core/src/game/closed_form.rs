//! Payoff when the first mover hands the responder a block of `nb` qubits
//! whose reduced state is uniform over `2^m` eigenvectors.

/// Minimum total energy the responder reaches on an `nb`-qubit block whose
/// reduced state has `2^m` equal eigenvalues; the `m` untouched qubits are
/// maximally mixed and contribute nothing.
///
/// The bottom `2^m` levels, ordered `-nb, -nb+2, …` with multiplicities
/// `C(nb, k)`, each receive occupation `2^-m`. For `m >= nb` the block is
/// maximally mixed and the result is 0.
pub fn closed_form_min_energy(nb: u32, m: u32) -> f64 {
    if m >= nb {
        return 0.0;
    }
    let occupied = 1u64 << m;
    let weight = 1.0 / occupied as f64;
    let mut filled = 0u64; // indices 1..=filled already assigned
    let mut binom = 1u64; // C(nb, k)
    let mut total = 0.0;
    for k in 0..=nb as u64 {
        if filled >= occupied {
            break;
        }
        let take = binom.min(occupied - filled);
        total -= (nb as f64 - 2.0 * k as f64) * take as f64 * weight;
        filled += take;
        binom = binom * (nb as u64 - k) / (k + 1);
    }
    total
}

/// [`closed_form_min_energy`] divided by the register size `nb + m`.
pub fn closed_form_per_site(nb: u32, m: u32) -> f64 {
    closed_form_min_energy(nb, m) / (nb + m) as f64
}
