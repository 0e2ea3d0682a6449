use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use super::{Alphabet, AutomataError, Symbol};

pub type StateId = u32;

/// A total deterministic finite automaton over an explicit alphabet.
///
/// States are `0..num_states`. Dead states are derived: every non-final
/// state whose transitions all loop back to itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    name: String,
    alphabet: Arc<Alphabet>,
    num_states: u32,
    initial: StateId,
    finals: Vec<bool>,
    dead: Vec<bool>,
    // row-major: table[state * |alphabet| + symbol]
    table: Vec<StateId>,
}

impl Dfa {
    pub fn new(
        name: impl Into<String>,
        alphabet: Arc<Alphabet>,
        num_states: u32,
        initial: StateId,
        finals: impl IntoIterator<Item = StateId>,
        table: Vec<StateId>,
    ) -> Result<Self, AutomataError> {
        if num_states == 0 {
            return Err(AutomataError::Validation("a DFA needs at least one state".into()));
        }
        if initial >= num_states {
            return Err(AutomataError::Validation(format!(
                "initial state {initial} out of range 0..{num_states}"
            )));
        }
        let width = alphabet.len();
        if table.len() != num_states as usize * width {
            return Err(AutomataError::Validation(format!(
                "transition table has {} entries, expected {} states x {} symbols",
                table.len(),
                num_states,
                width
            )));
        }
        if let Some(bad) = table.iter().find(|&&t| t >= num_states) {
            return Err(AutomataError::Validation(format!(
                "transition target {bad} out of range 0..{num_states}"
            )));
        }
        let mut final_flags = vec![false; num_states as usize];
        for f in finals {
            if f >= num_states {
                return Err(AutomataError::Validation(format!(
                    "final state {f} out of range 0..{num_states}"
                )));
            }
            final_flags[f as usize] = true;
        }
        let dead = (0..num_states as usize)
            .map(|q| !final_flags[q] && table[q * width..(q + 1) * width].iter().all(|&t| t as usize == q))
            .collect();
        Ok(Self {
            name: name.into(),
            alphabet,
            num_states,
            initial,
            finals: final_flags,
            dead,
            table,
        })
    }

    /// Builds a DFA from a possibly partial transition map.
    ///
    /// With `strict`, every (state, symbol) pair must be present. Otherwise
    /// missing pairs are routed to one extra absorbing state numbered
    /// `num_states`, added only when something is missing.
    pub fn from_partial(
        name: impl Into<String>,
        alphabet: Arc<Alphabet>,
        num_states: u32,
        initial: StateId,
        finals: impl IntoIterator<Item = StateId>,
        transitions: &BTreeMap<(StateId, Symbol), StateId>,
        strict: bool,
    ) -> Result<Self, AutomataError> {
        let width = alphabet.len();
        for (&(q, s), &t) in transitions {
            if q >= num_states || s.index() >= width {
                return Err(AutomataError::Validation(format!(
                    "transition source {q} out of range 0..{num_states}"
                )));
            }
            if t >= num_states {
                return Err(AutomataError::Validation(format!(
                    "transition target {t} out of range 0..{num_states}"
                )));
            }
        }
        let missing = num_states as usize * width - transitions.len();
        let total = if missing > 0 { num_states + 1 } else { num_states };
        if missing > 0 && strict {
            let (q, s) = (0..num_states)
                .flat_map(|q| alphabet.symbols().map(move |s| (q, s)))
                .find(|k| !transitions.contains_key(k))
                .expect("a missing pair exists");
            return Err(AutomataError::Validation(format!(
                "transition table is not total: no transition from state {q} on '{}'",
                alphabet.token(s)
            )));
        }
        let sink = num_states;
        let mut table = vec![sink; total as usize * width];
        for (&(q, s), &t) in transitions {
            table[q as usize * width + s.index()] = t;
        }
        Self::new(name, alphabet, total, initial, finals, table)
    }

    /// The one-state automaton accepting every word.
    pub fn universal(alphabet: Arc<Alphabet>) -> Self {
        let width = alphabet.len();
        Self::new("universal", alphabet, 1, 0, [0], vec![0; width]).expect("valid by construction")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn num_states(&self) -> u32 {
        self.num_states
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q as usize]
    }

    pub fn is_dead(&self, q: StateId) -> bool {
        self.dead[q as usize]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.num_states).filter(|&q| self.finals[q as usize])
    }

    pub fn dead_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.num_states).filter(|&q| self.dead[q as usize])
    }

    #[inline]
    pub fn next(&self, q: StateId, s: Symbol) -> StateId {
        self.table[q as usize * self.alphabet.len() + s.index()]
    }

    pub fn row(&self, q: StateId) -> &[StateId] {
        let w = self.alphabet.len();
        &self.table[q as usize * w..(q as usize + 1) * w]
    }

    /// Runs the automaton from `from` over `word`.
    pub fn run_from(&self, from: StateId, word: &[Symbol]) -> Result<StateId, AutomataError> {
        word.iter().try_fold(from, |q, &s| {
            if s.index() >= self.alphabet.len() {
                Err(AutomataError::UnknownSymbol(format!("#{}", s.0)))
            } else {
                Ok(self.next(q, s))
            }
        })
    }

    pub fn accepts(&self, word: &[Symbol]) -> Result<bool, AutomataError> {
        Ok(self.is_final(self.run_from(self.initial, word)?))
    }

    /// Membership for a word given as tokens.
    pub fn accepts_tokens<S: AsRef<str>>(&self, word: &[S]) -> Result<bool, AutomataError> {
        let syms = word
            .iter()
            .map(|t| self.alphabet.symbol(t.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        self.accepts(&syms)
    }

    /// States from which some final state is reachable.
    pub fn co_reachable(&self) -> Vec<bool> {
        let n = self.num_states as usize;
        let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for q in 0..self.num_states {
            for &t in self.row(q) {
                preds[t as usize].push(q);
            }
        }
        let mut live = self.finals.clone();
        let mut queue: VecDeque<StateId> = self.finals().collect();
        while let Some(q) = queue.pop_front() {
            for &p in &preds[q as usize] {
                if !live[p as usize] {
                    live[p as usize] = true;
                    queue.push_back(p);
                }
            }
        }
        live
    }

    /// Size of a plain binary encoding: the transition table, one final
    /// flag per state and the initial state, each state id taking
    /// `ceil(log2 m)` bits.
    pub fn encoded_bits(&self) -> u64 {
        let id_bits = u64::from(bits_for(u64::from(self.num_states)));
        let m = u64::from(self.num_states);
        m * self.alphabet.len() as u64 * id_bits + m + id_bits
    }
}

/// `ceil(log2 count)`, the bits needed to number `count` values.
pub fn bits_for(count: u64) -> u32 {
    if count <= 1 {
        0
    } else {
        64 - (count - 1).leading_zeros()
    }
}
