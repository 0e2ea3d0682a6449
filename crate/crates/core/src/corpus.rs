//! Sample machines and seeded random generators for automata, instances
//! and machines.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automata::{Alphabet, Dfa, IntersectionInstance};
use crate::tm::{Input, InputSym, Move, OfflineNtm, TapeSym, Transition};

/// Scans right; accepts on reading a 1, sticks at the right endmarker.
pub fn contains_one() -> OfflineNtm {
    let rule = |r0, next, m0| {
        (
            (0, r0, TapeSym::Zero),
            Transition {
                next,
                write: TapeSym::Zero,
                input_move: m0,
                work_move: Move::S,
            },
        )
    };
    OfflineNtm::new(
        "contains_one",
        2,
        0,
        [1],
        [rule(InputSym::Zero, 0, Move::R), rule(InputSym::One, 1, Move::S)],
    )
    .expect("valid machine")
}

/// The same language without Stay moves. Needs two worktape cells: the
/// work head swings between them, state 0 on cell 0 and state 1 on cell 1.
pub fn contains_one_no_stay() -> OfflineNtm {
    let rule = |q, r0, next, m1| {
        (
            (q, r0, TapeSym::Zero),
            Transition {
                next,
                write: TapeSym::Zero,
                input_move: Move::R,
                work_move: m1,
            },
        )
    };
    OfflineNtm::new(
        "contains_one_ns",
        3,
        0,
        [2],
        [
            rule(0, InputSym::Zero, 1, Move::R),
            rule(1, InputSym::Zero, 0, Move::L),
            rule(0, InputSym::One, 2, Move::R),
            rule(1, InputSym::One, 2, Move::L),
        ],
    )
    .expect("valid machine")
}

/// A dense machine with `states - 1` working states in a cycle: every
/// working state may move either head anywhere and write 0 or 1, and state
/// 0 reading 1 on both tapes may accept. Exercises every head position and
/// every binary tape content.
pub fn busy(states: u32) -> OfflineNtm {
    let working = states.max(2) - 1;
    let mut rules = Vec::new();
    for q in 0..working {
        for r0 in InputSym::ALL {
            for r1 in TapeSym::ALL {
                for write in [TapeSym::Zero, TapeSym::One] {
                    for input_move in Move::ALL {
                        for work_move in Move::ALL {
                            let t = Transition {
                                next: (q + 1) % working,
                                write,
                                input_move,
                                work_move,
                            };
                            rules.push(((q, r0, r1), t));
                        }
                    }
                }
            }
        }
    }
    let accept = Transition {
        next: working,
        write: TapeSym::One,
        input_move: Move::S,
        work_move: Move::S,
    };
    rules.push(((0, InputSym::One, TapeSym::One), accept));
    OfflineNtm::new(format!("busy{}", working + 1), working + 1, 0, [working], rules).expect("valid machine")
}

/// Accepts immediately.
pub fn accept_all() -> OfflineNtm {
    OfflineNtm::new("accept_all", 1, 0, [0], []).expect("valid machine")
}

/// Parameters for random machines.
#[derive(Debug, Clone, Copy)]
pub struct MachineParams {
    pub max_states: u32,
    pub force_initial_accepting: bool,
    pub allow_stay: bool,
}

impl Default for MachineParams {
    fn default() -> Self {
        Self {
            max_states: 4,
            force_initial_accepting: false,
            allow_stay: true,
        }
    }
}

/// A random machine: every non-accepting `(q, r0, r1)` gets 0, 1 or 2
/// random transitions.
pub fn random_machine<R: Rng>(rng: &mut R, name: impl Into<String>, params: MachineParams) -> OfflineNtm {
    let states = rng.gen_range(1..=params.max_states.max(1));
    let mut accepting = Vec::new();
    if params.force_initial_accepting || (states == 1 && rng.gen_bool(0.3)) || rng.gen_bool(0.05) {
        accepting.push(0);
    }
    if states > 1 {
        accepting.push(states - 1);
        if states > 2 && rng.gen_bool(0.2) {
            accepting.push(rng.gen_range(1..states - 1));
        }
    }
    let moves: &[Move] = if params.allow_stay {
        &Move::ALL
    } else {
        &[Move::L, Move::R]
    };
    let mut rules = Vec::new();
    for q in 0..states {
        if accepting.contains(&q) {
            continue;
        }
        for r0 in InputSym::ALL {
            for r1 in TapeSym::ALL {
                let count = match rng.gen_range(0..10) {
                    0..=2 => 0,
                    3..=7 => 1,
                    _ => 2,
                };
                for _ in 0..count {
                    let write = if rng.gen_bool(0.1) {
                        TapeSym::Hash
                    } else if rng.gen_bool(0.5) {
                        TapeSym::One
                    } else {
                        TapeSym::Zero
                    };
                    rules.push((
                        (q, r0, r1),
                        Transition {
                            next: rng.gen_range(0..states),
                            write,
                            input_move: *moves.choose(rng).expect("non-empty"),
                            work_move: *moves.choose(rng).expect("non-empty"),
                        },
                    ));
                }
            }
        }
    }
    OfflineNtm::new(name, states, 0, accepting, rules).expect("generated machines are valid")
}

pub fn random_input<R: Rng>(rng: &mut R, min_len: u32, max_len: u32) -> Input {
    let len = rng.gen_range(min_len..=max_len.max(min_len));
    Input::new((0..len).map(|_| rng.gen_bool(0.5)).collect())
}

/// Alphabet `a, b, c, ..` of the given size.
pub fn letters(size: usize) -> Arc<Alphabet> {
    Arc::new(Alphabet::new((0..size).map(|i| ((b'a' + i as u8) as char).to_string())).expect("distinct letters"))
}

/// A random total DFA with `1..=max_states` states.
pub fn random_dfa<R: Rng>(rng: &mut R, alphabet: &Arc<Alphabet>, max_states: u32) -> Dfa {
    let m = rng.gen_range(1..=max_states);
    let table = (0..m as usize * alphabet.len()).map(|_| rng.gen_range(0..m)).collect();
    let finals: Vec<u32> = (0..m).filter(|_| rng.gen_bool(0.4)).collect();
    Dfa::new("random", alphabet.clone(), m, rng.gen_range(0..m), finals, table).expect("valid by construction")
}

/// A random instance of `1..=max_dfas` automata over `1..=max_alphabet`
/// letters.
pub fn random_instance<R: Rng>(
    rng: &mut R,
    max_dfas: usize,
    max_states: u32,
    max_alphabet: usize,
) -> IntersectionInstance {
    let alphabet = letters(rng.gen_range(1..=max_alphabet));
    let k = rng.gen_range(1..=max_dfas);
    let dfas = (0..k)
        .map(|i| random_dfa(rng, &alphabet, max_states).with_name(format!("d{i}")))
        .collect();
    IntersectionInstance::new(dfas).expect("shared alphabet")
}
