//! Text move files for scripted games.
//!
//! ```text
//! # comment
//! sites 2
//! init zero            # or plus
//! capability A 2
//! capability B 1
//! A 1,2 bell
//! B best
//! ```
//!
//! Sites are numbered from 1. A move line is `<player> <sites> <unitary>`,
//! `<player> best`, `<player> best <partition>` (e.g. `best 2,3|1,4|5`, a
//! best response restricted to those blocks) or `<player> pass`.
//! Consecutive lines of one player form a single turn on disjoint blocks; the first player to appear moves first
//! and each player gets one turn. Unitaries are `bell`, `ghz`, `identity`,
//! `haar:<seed>` or a row-major literal such as `[0,1; 1,0]` whose entries
//! are complex numbers like `0.5-0.5i`.

use num_complex::Complex64 as C64;

use super::partition::BlockPartition;
use super::play::{play_sequential_game, GameConfig, MoveOrder, PlayRecord, Player, Strategy};
use crate::error::{Error, Result};
use crate::haar::sample_haar_unitary;
use crate::hamiltonian::LocalHamiltonian;
use crate::linalg::CMatrix;
use crate::register::Register;
use crate::rng::stream_rng;
use crate::state::{product_plus_state, PureState, State};
use crate::unitary::{gates, BlockUnitary};

#[derive(Clone, Debug)]
pub struct GameScript {
    pub config: GameConfig,
    pub initial: State,
    pub strategy_a: Strategy,
    pub strategy_b: Strategy,
}

impl GameScript {
    /// Plays the script against `Σ σ^z`.
    pub fn play(&self) -> Result<PlayRecord> {
        let h = LocalHamiltonian::pauli_z(self.config.n);
        play_sequential_game(&self.config, &self.initial, &h, &self.strategy_a, &self.strategy_b)
    }
}

enum Turn {
    Blocks(Vec<BlockUnitary>),
    Best,
    BestWithin(Vec<Vec<usize>>),
    Pass,
}

pub fn parse_script(text: &str) -> Result<GameScript> {
    let mut n = None;
    let mut plus = false;
    let mut caps: [Option<usize>; 2] = [None, None];
    let mut turns: Vec<(Player, Turn)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let err = |msg: String| Error::Parse { line: lineno, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().expect("nonempty line");
        match head {
            "sites" => {
                let v = words.next().ok_or_else(|| err("missing site count".into()))?;
                n = Some(v.parse::<usize>().map_err(|e| err(format!("site count: {e}")))?);
            }
            "init" => match words.next() {
                Some("zero") => plus = false,
                Some("plus") => plus = true,
                other => return Err(err(format!("init must be zero or plus, got {other:?}"))),
            },
            "capability" => {
                let player = parse_player(words.next().unwrap_or("")).ok_or_else(|| err("capability needs A or B".into()))?;
                let k = words
                    .next()
                    .ok_or_else(|| err("missing capability".into()))?
                    .parse::<usize>()
                    .map_err(|e| err(format!("capability: {e}")))?;
                caps[player_index(player)] = Some(k);
            }
            _ => {
                let player = parse_player(head).ok_or_else(|| err(format!("unknown directive '{head}'")))?;
                let n = n.ok_or_else(|| err("'sites' must come before moves".into()))?;
                let rest: Vec<&str> = words.collect();
                let turn = match rest.as_slice() {
                    ["best"] => Turn::Best,
                    ["best", blocks] => Turn::BestWithin(
                        blocks.split('|').map(|b| parse_sites(b, n)).collect::<std::result::Result<_, _>>().map_err(err)?,
                    ),
                    ["pass"] => Turn::Pass,
                    [] => return Err(err("missing move".into())),
                    [sites, unitary @ ..] => {
                        let sites = parse_sites(sites, n).map_err(err)?;
                        let matrix = parse_unitary(&unitary.join(" "), sites.len()).map_err(err)?;
                        Turn::Blocks(vec![BlockUnitary::new(sites, matrix).map_err(|e| err(e.to_string()))?])
                    }
                };
                match (turns.last_mut(), turn) {
                    (Some((p, Turn::Blocks(us))), Turn::Blocks(mut more)) if *p == player => us.append(&mut more),
                    (Some((p, _)), _) if *p == player => {
                        return Err(err(format!("player {player} already has a complete turn")));
                    }
                    (_, turn) => {
                        if turns.iter().any(|(p, _)| *p == player) {
                            return Err(err(format!("player {player} moves twice")));
                        }
                        turns.push((player, turn));
                    }
                }
            }
        }
    }

    let n = n.ok_or_else(|| Error::Parse { line: 0, msg: "missing 'sites' line".into() })?;
    let (Some(n_a), Some(n_b)) = (caps[0], caps[1]) else {
        return Err(Error::Parse { line: 0, msg: "both 'capability A' and 'capability B' are required".into() });
    };
    let order = match turns.first() {
        Some((Player::B, _)) => MoveOrder::BFirst,
        Some((Player::A, _)) => MoveOrder::AFirst,
        None => return Err(Error::Parse { line: 0, msg: "no moves".into() }),
    };
    let config = GameConfig::new(n, n_a, n_b, order)?;
    let register = Register::qubits(n)?;
    let initial = if plus { product_plus_state(&register)? } else { PureState::zero(register) };
    let mut strategies = [Strategy::Pass, Strategy::Pass];
    for (player, turn) in turns {
        strategies[player_index(player)] = match turn {
            Turn::Blocks(us) => Strategy::Blocks(us),
            Turn::Best => Strategy::BestResponse,
            Turn::BestWithin(blocks) => {
                let partition = BlockPartition::new(blocks, n, config.capability(player))
                    .map_err(|e| Error::IllegalMove(format!("player {player}: {e}")))?;
                Strategy::BestResponseWithin(partition)
            }
            Turn::Pass => Strategy::Pass,
        };
    }
    let [strategy_a, strategy_b] = strategies;
    Ok(GameScript { config, initial: State::from(initial), strategy_a, strategy_b })
}

fn parse_player(s: &str) -> Option<Player> {
    match s {
        "A" => Some(Player::A),
        "B" => Some(Player::B),
        _ => None,
    }
}

fn player_index(p: Player) -> usize {
    match p {
        Player::A => 0,
        Player::B => 1,
    }
}

fn parse_sites(s: &str, n: usize) -> std::result::Result<Vec<usize>, String> {
    s.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(k) if (1..=n).contains(&k) => Ok(k - 1),
            Ok(k) => Err(format!("site {k} outside 1..={n}")),
            Err(e) => Err(format!("site '{t}': {e}")),
        })
        .collect()
}

fn parse_unitary(s: &str, k: usize) -> std::result::Result<CMatrix, String> {
    let dim = 1usize << k;
    match s {
        "identity" => Ok(CMatrix::identity(dim, dim)),
        "bell" if k == 2 => Ok(gates::bell_preparation()),
        "bell" => Err(format!("bell needs 2 sites, got {k}")),
        "ghz" => gates::ghz_preparation(k).map_err(|e| e.to_string()),
        _ if s.starts_with("haar:") => {
            let seed = s[5..].parse::<u64>().map_err(|e| format!("haar seed: {e}"))?;
            Ok(sample_haar_unitary(dim, &mut stream_rng(seed, 0)))
        }
        _ if s.starts_with('[') && s.ends_with(']') => {
            let rows: Vec<Vec<C64>> = s[1..s.len() - 1]
                .split(';')
                .map(|row| row.split(',').map(parse_complex).collect())
                .collect::<std::result::Result<_, _>>()?;
            if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                return Err(format!("matrix on {k} sites must be {dim}x{dim}"));
            }
            Ok(CMatrix::from_fn(dim, dim, |i, j| rows[i][j]))
        }
        _ => Err(format!("unknown unitary '{s}'")),
    }
}

fn parse_complex(t: &str) -> std::result::Result<C64, String> {
    let t: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    // accept a bare `i` coefficient as in `-i` or `0.5+i`
    let fixed = if t.ends_with('i') && matches!(t[..t.len() - 1].chars().last(), None | Some('+') | Some('-')) {
        format!("{}1i", &t[..t.len() - 1])
    } else {
        t.clone()
    };
    fixed.parse::<C64>().map_err(|_| format!("bad matrix entry '{t}'"))
}
