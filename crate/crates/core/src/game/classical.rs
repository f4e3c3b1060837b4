//! The bit-flip version of the game: registers hold classical bits and a
//! move flips any subset of them.

use super::play::{MoveOrder, Player};
use crate::error::{Error, Result};

pub const MAX_CLASSICAL_BITS: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalOutcome {
    pub n: usize,
    pub order: MoveOrder,
    /// Energy the second mover secures against every initial register and
    /// every first move.
    pub energy: f64,
    /// True when every (initial register, first move) pair led to the same
    /// final energy.
    pub first_mover_powerless: bool,
}

/// `Σ σ^z` on bits: a 0 bit counts +1, a 1 bit counts -1.
pub fn bit_energy(n: usize, bits: u32) -> f64 {
    n as f64 - 2.0 * bits.count_ones() as f64
}

/// Exhaustively plays every initial register, every first move and every
/// second move, with the second mover optimizing.
pub fn classical_baseline(n: usize, order: MoveOrder) -> Result<ClassicalOutcome> {
    if n == 0 || n > MAX_CLASSICAL_BITS {
        return Err(Error::Guard(format!("classical baseline supports 1..={MAX_CLASSICAL_BITS} bits, got {n}")));
    }
    let second = order.second();
    let all = 1u32 << n;
    let mut outcomes: Option<(f64, f64)> = None;
    for initial in 0..all {
        for first_flip in 0..all {
            let mid = initial ^ first_flip;
            let reply = (0..all).map(|flip| bit_energy(n, mid ^ flip));
            let best = match second {
                Player::A => reply.fold(f64::NEG_INFINITY, f64::max),
                Player::B => reply.fold(f64::INFINITY, f64::min),
            };
            outcomes = Some(match outcomes {
                None => (best, best),
                Some((lo, hi)) => (lo.min(best), hi.max(best)),
            });
        }
    }
    let (lo, hi) = outcomes.expect("at least one bit");
    // the second mover's guaranteed value is its worst case
    let energy = match second {
        Player::A => lo,
        Player::B => hi,
    };
    Ok(ClassicalOutcome { n, order, energy, first_mover_powerless: lo == hi })
}
