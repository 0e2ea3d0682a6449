use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::TmError;

pub type TmState = u32;

/// What the input head can read: a bit, or one of the two endmarkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InputSym {
    Zero,
    One,
    LeftEnd,
    RightEnd,
}

impl InputSym {
    pub const ALL: [InputSym; 4] = [Self::Zero, Self::One, Self::LeftEnd, Self::RightEnd];

    /// Two-bit trace code; both endmarkers share `11`.
    pub fn code(self) -> u64 {
        match self {
            Self::Zero => 0b00,
            Self::One => 0b01,
            Self::LeftEnd | Self::RightEnd => 0b11,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Self::Zero => '0',
            Self::One => '1',
            Self::LeftEnd => '<',
            Self::RightEnd => '>',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        Some(match c {
            '0' => Self::Zero,
            '1' => Self::One,
            '<' => Self::LeftEnd,
            '>' => Self::RightEnd,
            _ => return None,
        })
    }
}

/// Worktape alphabet `{0, 1, #}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TapeSym {
    Zero,
    One,
    Hash,
}

impl TapeSym {
    pub const ALL: [TapeSym; 3] = [Self::Zero, Self::One, Self::Hash];

    pub fn code(self) -> u64 {
        self as u64
    }

    pub fn from_code(code: u64) -> Option<Self> {
        Self::ALL.get(code as usize).copied()
    }

    pub fn as_char(self) -> char {
        match self {
            Self::Zero => '0',
            Self::One => '1',
            Self::Hash => '#',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        Some(match c {
            '0' => Self::Zero,
            '1' => Self::One,
            '#' => Self::Hash,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    L,
    R,
    S,
}

impl Move {
    pub const ALL: [Move; 3] = [Self::L, Self::R, Self::S];

    pub fn code(self) -> u64 {
        self as u64
    }

    pub fn from_code(code: u64) -> Option<Self> {
        Self::ALL.get(code as usize).copied()
    }

    pub fn delta(self) -> i64 {
        match self {
            Self::L => -1,
            Self::R => 1,
            Self::S => 0,
        }
    }

    /// Applies the move to a head position, `None` when it leaves `0..len`.
    pub fn apply(self, pos: u32, len: u32) -> Option<u32> {
        let p = i64::from(pos) + self.delta();
        (0..i64::from(len)).contains(&p).then_some(p as u32)
    }

    pub fn as_char(self) -> char {
        match self {
            Self::L => 'L',
            Self::R => 'R',
            Self::S => 'S',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        Some(match c {
            'L' => Self::L,
            'R' => Self::R,
            'S' => Self::S,
            _ => return None,
        })
    }
}

/// Right-hand side of a transition. Field order gives the canonical
/// successor order `(q', w, m0, m1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub next: TmState,
    pub write: TapeSym,
    pub input_move: Move,
    pub work_move: Move,
}

/// Key of the transition relation: `(q, r0, r1)`.
pub type DeltaKey = (TmState, InputSym, TapeSym);

/// A nondeterministic offline machine: read-only input tape with
/// endmarkers, one worktape over `{0, 1, #}`. Acceptance is by reaching an
/// accepting state, which has no outgoing transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OfflineNtm {
    name: String,
    num_states: u32,
    initial: TmState,
    accepting: Vec<bool>,
    delta: BTreeMap<DeltaKey, Vec<Transition>>,
}

impl OfflineNtm {
    pub fn new(
        name: impl Into<String>,
        num_states: u32,
        initial: TmState,
        accepting: impl IntoIterator<Item = TmState>,
        rules: impl IntoIterator<Item = (DeltaKey, Transition)>,
    ) -> Result<Self, TmError> {
        if num_states == 0 {
            return Err(TmError::Validation("a machine needs at least one state".into()));
        }
        let check = |q: TmState, what: &str| {
            if q >= num_states {
                Err(TmError::Validation(format!(
                    "{what} state {q} is not declared (states 0..{num_states})"
                )))
            } else {
                Ok(())
            }
        };
        check(initial, "initial")?;
        let mut acc = vec![false; num_states as usize];
        for q in accepting {
            check(q, "accepting")?;
            acc[q as usize] = true;
        }
        let mut delta: BTreeMap<DeltaKey, Vec<Transition>> = BTreeMap::new();
        for ((q, r0, r1), t) in rules {
            check(q, "source")?;
            check(t.next, "target")?;
            if acc[q as usize] {
                return Err(TmError::Validation(format!(
                    "accepting state {q} has an outgoing transition"
                )));
            }
            delta.entry((q, r0, r1)).or_default().push(t);
        }
        for ts in delta.values_mut() {
            ts.sort();
            ts.dedup();
        }
        Ok(Self {
            name: name.into(),
            num_states,
            initial,
            accepting: acc,
            delta,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_states(&self) -> u32 {
        self.num_states
    }

    pub fn initial(&self) -> TmState {
        self.initial
    }

    pub fn is_accepting(&self, q: TmState) -> bool {
        self.accepting[q as usize]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = TmState> + '_ {
        (0..self.num_states).filter(|&q| self.accepting[q as usize])
    }

    /// Transitions for `(q, r0, r1)` in canonical order.
    pub fn transitions(&self, q: TmState, r0: InputSym, r1: TapeSym) -> &[Transition] {
        self.delta.get(&(q, r0, r1)).map_or(&[], Vec::as_slice)
    }

    pub fn rules(&self) -> impl Iterator<Item = (DeltaKey, Transition)> + '_ {
        self.delta.iter().flat_map(|(&k, ts)| ts.iter().map(move |&t| (k, t)))
    }

    pub fn num_rules(&self) -> usize {
        self.delta.values().map(Vec::len).sum()
    }

    pub fn uses_stay(&self) -> bool {
        self.rules()
            .any(|(_, t)| t.input_move == Move::S || t.work_move == Move::S)
    }

    /// Lint: true when some transition writes `#`. Delimiters are allowed
    /// freely but count against the intent of a binary worktape.
    pub fn writes_delimiter(&self) -> bool {
        self.rules().any(|(_, t)| t.write == TapeSym::Hash)
    }
}

/// A finite input word over `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Input(Vec<bool>);

impl Input {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn len(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Symbol under the input head; positions 0 and n+1 are endmarkers.
    pub fn read(&self, h0: u32) -> InputSym {
        if h0 == 0 {
            InputSym::LeftEnd
        } else if h0 as usize > self.0.len() {
            InputSym::RightEnd
        } else if self.0[h0 as usize - 1] {
            InputSym::One
        } else {
            InputSym::Zero
        }
    }
}

impl FromStr for Input {
    type Err = TmError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(TmError::InvalidInput(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}

impl fmt::Display for Input {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}
