use std::fmt;

use super::{Input, OfflineNtm, TapeSym, TmError, TmState, Transition};

/// Instantaneous description of an offline machine.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    pub state: TmState,
    /// Input head, `0..=n+1`.
    pub h0: u32,
    /// Worktape head, `0..S`.
    pub h1: u32,
    pub tape: Vec<TapeSym>,
}

impl Configuration {
    /// State `initial`, input head on the first input cell, worktape all 0.
    pub fn initial(machine: &OfflineNtm, space: u32) -> Self {
        Self {
            state: machine.initial(),
            h0: 1,
            h1: 0,
            tape: vec![TapeSym::Zero; space as usize],
        }
    }

    pub fn space(&self) -> u32 {
        self.tape.len() as u32
    }

    /// Applies one transition; `None` if a head would leave its tape.
    pub fn apply(&self, t: &Transition, input_len: u32) -> Option<Self> {
        let h0 = t.input_move.apply(self.h0, input_len + 2)?;
        let h1 = t.work_move.apply(self.h1, self.space())?;
        let mut tape = self.tape.clone();
        tape[self.h1 as usize] = t.write;
        Some(Self {
            state: t.next,
            h0,
            h1,
            tape,
        })
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{} h0={} h1={} [", self.state, self.h0, self.h1)?;
        for (i, s) in self.tape.iter().enumerate() {
            if i as u32 == self.h1 {
                write!(f, "({})", s.as_char())?;
            } else {
                write!(f, "{}", s.as_char())?;
            }
        }
        write!(f, "]")
    }
}

/// Successors of `c` in canonical transition order. Empty when `c` is
/// accepting or stuck.
pub fn step(machine: &OfflineNtm, input: &Input, c: &Configuration) -> Vec<Configuration> {
    successors(machine, input, c).map(|(_, next)| next).collect()
}

/// Successors paired with the transition producing each.
pub fn successors<'a>(
    machine: &'a OfflineNtm,
    input: &'a Input,
    c: &'a Configuration,
) -> impl Iterator<Item = (Transition, Configuration)> + 'a {
    let r0 = input.read(c.h0);
    let r1 = c.tape[c.h1 as usize];
    machine
        .transitions(c.state, r0, r1)
        .iter()
        .filter_map(move |t| c.apply(t, input.len()).map(|next| (*t, next)))
}

/// A computation: `configs[i+1]` follows from `configs[i]` by
/// `transitions[i]`, ending in an accepting configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub configs: Vec<Configuration>,
    pub transitions: Vec<Transition>,
}

impl Run {
    /// Number of machine steps.
    pub fn steps(&self) -> usize {
        self.transitions.len()
    }

    /// Re-checks every step against the transition relation.
    pub fn validate(&self, machine: &OfflineNtm, input: &Input) -> Result<(), TmError> {
        let first = self
            .configs
            .first()
            .ok_or_else(|| TmError::InvalidRun("a run needs at least one configuration".into()))?;
        if *first != Configuration::initial(machine, first.space()) {
            return Err(TmError::InvalidRun(
                "run does not start in the initial configuration".into(),
            ));
        }
        if self.configs.len() != self.transitions.len() + 1 {
            return Err(TmError::InvalidRun(
                "configuration and transition counts disagree".into(),
            ));
        }
        for (i, (pair, t)) in self.configs.windows(2).zip(&self.transitions).enumerate() {
            let ok = successors(machine, input, &pair[0]).any(|(tt, next)| tt == *t && next == pair[1]);
            if !ok {
                return Err(TmError::InvalidRun(format!("step {i} is not a machine transition")));
            }
        }
        let last = self.configs.last().expect("non-empty");
        if !machine.is_accepting(last.state) {
            return Err(TmError::InvalidRun("run does not end in an accepting state".into()));
        }
        Ok(())
    }
}

/// The finite set of configurations for a machine, input length and space
/// bound, with a dense numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfigSpace {
    pub num_states: u32,
    pub input_len: u32,
    pub space: u32,
}

impl ConfigSpace {
    pub fn new(machine: &OfflineNtm, input: &Input, space: u32) -> Self {
        Self {
            num_states: machine.num_states(),
            input_len: input.len(),
            space,
        }
    }

    /// `|Q| * (n+2) * S * 3^S`, saturating.
    pub fn count(&self) -> u128 {
        let tapes = 3u128.checked_pow(self.space).unwrap_or(u128::MAX);
        u128::from(self.num_states)
            .saturating_mul(u128::from(self.input_len) + 2)
            .saturating_mul(u128::from(self.space))
            .saturating_mul(tapes)
    }

    pub fn check_cap(&self, cap: u64) -> Result<u64, TmError> {
        let count = self.count();
        if count > u128::from(cap) {
            Err(TmError::StateSpaceTooLarge {
                count: count.to_string(),
                cap,
            })
        } else {
            Ok(count as u64)
        }
    }

    pub fn contains(&self, c: &Configuration) -> bool {
        c.state < self.num_states && c.h0 <= self.input_len + 1 && c.h1 < self.space && c.space() == self.space
    }

    pub fn index(&self, c: &Configuration) -> u64 {
        let tape = c.tape.iter().fold(0u64, |acc, s| acc * 3 + s.code());
        let head = (u64::from(c.state) * u64::from(self.input_len + 2) + u64::from(c.h0)) * u64::from(self.space)
            + u64::from(c.h1);
        head * 3u64.pow(self.space) + tape
    }

    pub fn config(&self, index: u64) -> Configuration {
        let tapes = 3u64.pow(self.space);
        let mut code = index % tapes;
        let mut tape = vec![TapeSym::Zero; self.space as usize];
        for cell in tape.iter_mut().rev() {
            *cell = TapeSym::ALL[(code % 3) as usize];
            code /= 3;
        }
        let rest = index / tapes;
        let h1 = (rest % u64::from(self.space)) as u32;
        let rest = rest / u64::from(self.space);
        let h0 = (rest % u64::from(self.input_len + 2)) as u32;
        let state = (rest / u64::from(self.input_len + 2)) as u32;
        Configuration { state, h0, h1, tape }
    }

    pub fn iter(self) -> impl Iterator<Item = Configuration> {
        (0..self.count() as u64).map(move |i| self.config(i))
    }
}
