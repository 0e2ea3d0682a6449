use std::fmt;
use std::sync::Arc;

use crate::automata::{bits_for, Alphabet, Symbol};
use crate::tm::{Configuration, Input, Move, TapeSym, Transition};

use super::ReductionError;

/// Symbols of every trace: two bits and the tuple terminator.
pub const TRACE_TOKENS: [&str; 3] = ["0", "1", "$"];
pub const BIT0: Symbol = Symbol(0);
pub const BIT1: Symbol = Symbol(1);
pub const SEP: Symbol = Symbol(2);

pub fn trace_alphabet() -> Arc<Alphabet> {
    Arc::new(Alphabet::new(TRACE_TOKENS).expect("distinct tokens"))
}

/// One field of a trace tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Q,
    H0,
    H1,
    R0,
    R1,
    M0,
    M1,
    W,
}

impl Field {
    pub fn key(self) -> &'static str {
        match self {
            Self::Q => "q",
            Self::H0 => "h0",
            Self::H1 => "h1",
            Self::R0 => "r0",
            Self::R1 => "r1",
            Self::M0 => "m0",
            Self::M1 => "m1",
            Self::W => "w",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

/// Field order and widths of a fixed-width tuple layout. Each field is
/// written most-significant bit first; each tuple ends with `$`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEncoding {
    fields: Vec<(Field, u32)>,
}

impl TraceEncoding {
    /// `(q, r0, r1, m0, m1, w)`: no head positions.
    pub fn six_tuple(num_states: u32) -> Result<Self, ReductionError> {
        Self::from_fields(vec![
            (Field::Q, bits_for(u64::from(num_states))),
            (Field::R0, 2),
            (Field::R1, 2),
            (Field::M0, 2),
            (Field::M1, 2),
            (Field::W, 2),
        ])
    }

    /// `(q, h0, h1, r0, r1, m0, m1, w)` for input length `n` and `space`
    /// worktape cells.
    pub fn eight_tuple(num_states: u32, n: u32, space: u32) -> Result<Self, ReductionError> {
        Self::from_fields(vec![
            (Field::Q, bits_for(u64::from(num_states))),
            (Field::H0, bits_for(u64::from(n) + 2)),
            (Field::H1, bits_for(u64::from(space))),
            (Field::R0, 2),
            (Field::R1, 2),
            (Field::M0, 2),
            (Field::M1, 2),
            (Field::W, 2),
        ])
    }

    pub fn from_fields(fields: Vec<(Field, u32)>) -> Result<Self, ReductionError> {
        if let Some(&(field, width)) = fields.iter().find(|(_, w)| *w > 63) {
            return Err(ReductionError::EncodingOverflow {
                field: field.key(),
                width,
            });
        }
        Ok(Self { fields })
    }

    pub fn fields(&self) -> &[(Field, u32)] {
        &self.fields
    }

    pub fn width(&self, field: Field) -> Option<u32> {
        self.fields.iter().find(|(f, _)| *f == field).map(|&(_, w)| w)
    }

    pub fn has(&self, field: Field) -> bool {
        self.width(field).is_some()
    }

    /// Bits per tuple, not counting the separator.
    pub fn tuple_bits(&self) -> u32 {
        self.fields.iter().map(|&(_, w)| w).sum()
    }

    pub fn encode(&self, tuple: &TraceTuple, out: &mut Vec<Symbol>) {
        let values = tuple.values();
        for &(field, width) in &self.fields {
            let v = values[field.slot()];
            for i in (0..width).rev() {
                out.push(if v >> i & 1 == 1 { BIT1 } else { BIT0 });
            }
        }
        out.push(SEP);
    }

    /// Splits a trace into raw tuples, checking framing only.
    pub fn decode(&self, word: &[Symbol]) -> Result<Vec<RawTuple>, ReductionError> {
        let width = self.tuple_bits() as usize;
        let mut tuples = Vec::new();
        let mut rest = word;
        while !rest.is_empty() {
            if rest.len() < width + 1 {
                return Err(ReductionError::MalformedTrace(format!(
                    "trailing {} symbols do not form a tuple",
                    rest.len()
                )));
            }
            let (bits, tail) = rest.split_at(width);
            if tail[0] != SEP {
                return Err(ReductionError::MalformedTrace(format!(
                    "tuple {} is not terminated by '$'",
                    tuples.len()
                )));
            }
            let mut raw = RawTuple::default();
            let mut pos = 0;
            for &(field, w) in &self.fields {
                let mut v = 0u64;
                for &b in &bits[pos..pos + w as usize] {
                    v = match b {
                        BIT0 => v << 1,
                        BIT1 => v << 1 | 1,
                        _ => {
                            return Err(ReductionError::MalformedTrace(format!(
                                "separator inside tuple {}",
                                tuples.len()
                            )))
                        }
                    };
                }
                raw.values[field.slot()] = v;
                pos += w as usize;
            }
            tuples.push(raw);
            rest = &tail[1..];
        }
        Ok(tuples)
    }
}

impl fmt::Display for TraceEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.fields.iter().map(|(fl, w)| format!("{}:{w}", fl.key())).collect();
        f.write_str(&parts.join(","))
    }
}

/// Field values of one decoded tuple, as raw codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RawTuple {
    values: [u64; 8],
}

impl RawTuple {
    pub fn get(&self, field: Field) -> u64 {
        self.values[field.slot()]
    }
}

/// One step claim of a trace. The six-field layout ignores `h0` and `h1`.
///
/// A tuple whose `q` is accepting closes the trace; it carries Stay moves
/// and writes back what it reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceTuple {
    pub q: u32,
    pub h0: u32,
    pub h1: u32,
    pub r0: u64,
    pub r1: TapeSym,
    pub m0: Move,
    pub m1: Move,
    pub w: TapeSym,
}

impl TraceTuple {
    /// The tuple describing `t` applied in configuration `c`.
    pub fn step(c: &Configuration, input: &Input, t: &Transition) -> Self {
        Self {
            q: c.state,
            h0: c.h0,
            h1: c.h1,
            r0: input.read(c.h0).code(),
            r1: c.tape[c.h1 as usize],
            m0: t.input_move,
            m1: t.work_move,
            w: t.write,
        }
    }

    /// The closing tuple for an accepting configuration.
    pub fn halt(c: &Configuration, input: &Input) -> Self {
        let r1 = c.tape[c.h1 as usize];
        Self {
            q: c.state,
            h0: c.h0,
            h1: c.h1,
            r0: input.read(c.h0).code(),
            r1,
            m0: Move::S,
            m1: Move::S,
            w: r1,
        }
    }

    fn values(&self) -> [u64; 8] {
        [
            u64::from(self.q),
            u64::from(self.h0),
            u64::from(self.h1),
            self.r0,
            self.r1.code(),
            self.m0.code(),
            self.m1.code(),
            self.w.code(),
        ]
    }
}
