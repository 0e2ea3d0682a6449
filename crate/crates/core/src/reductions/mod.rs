//! Compilers from "does this offline machine accept this input within
//! this space?" to DFA intersection non-emptiness.
//!
//! Both constructions read a trace: a sequence of fixed-width binary tuples
//! each closed by `$`, one tuple per configuration of a claimed run. Each
//! automaton checks one local aspect of the claim; together they accept
//! exactly the encodings of accepting runs.
//!
//! * [`compile_kozen`]: `k + 1` automata over six-field tuples. One
//!   control automaton follows the state and input head; automaton `i`
//!   holds worktape block `i` of `ceil(log2 n)` cells.
//! * [`compile_linear`]: `n + 2S + 5` automata over eight-field tuples
//!   carrying explicit head positions; apart from the control automaton,
//!   each has `O(log n)` states.

mod checker;
mod checks;
mod decode;
mod encoding;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::automata::{bits_for, AutomataError, IntersectionInstance};
use crate::tm::{Input, OfflineNtm, TmError};

use checks::{BlockCheck, CellCheck, Control, HeadCheck, RangeCheck};

pub use decode::{decode_witness, encode_run};
pub use encoding::{trace_alphabet, Field, RawTuple, TraceEncoding, TraceTuple, TRACE_TOKENS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("field {field} needs {width} bits, more than 63")]
    EncodingOverflow { field: &'static str, width: u32 },
    #[error("invalid machine: {0}")]
    InvalidMachine(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed trace: {0}")]
    MalformedTrace(String),
    #[error("invalid step: {0}")]
    InvalidStep(String),
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error(transparent)]
    Machine(#[from] TmError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    Kozen,
    Linear,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Kozen => "kozen",
            Self::Linear => "linear",
        })
    }
}

impl FromStr for Construction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "kozen" => Ok(Self::Kozen),
            "linear" => Ok(Self::Linear),
            other => Err(format!("unknown construction '{other}'")),
        }
    }
}

/// Deliberate compiler defects, for checking that verification notices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Never check `r0` against the input.
    SkipInputCheck,
    /// Never check `r1` against the stored worktape.
    SkipWorktapeCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompileOptions {
    /// Reject machines with Stay moves when false.
    pub allow_stay: bool,
    pub fault: Option<Fault>,
}

impl Default for CompileOptions {
    fn default() -> Self {
        Self {
            allow_stay: true,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub machine: String,
    pub input: String,
    pub construction: Construction,
    /// `k` for the block construction, `S` for the linear one.
    pub param: u32,
    /// Worktape cells the family checks.
    pub space: u32,
}

/// A compiled family together with what it was compiled from.
#[derive(Debug, Clone)]
pub struct CompiledFamily {
    pub instance: IntersectionInstance,
    pub encoding: TraceEncoding,
    pub provenance: Provenance,
    pub machine: OfflineNtm,
    pub input: Input,
}

impl CompiledFamily {
    pub fn space(&self) -> u32 {
        self.provenance.space
    }

    /// Reassembles a family from an instance compiled earlier, e.g. one
    /// read back from disk, checking that its size fits the construction.
    pub fn from_parts(
        instance: IntersectionInstance,
        machine: OfflineNtm,
        input: Input,
        construction: Construction,
        param: u32,
    ) -> Result<Self, ReductionError> {
        let n = input.len();
        let (encoding, space, expected) = match construction {
            Construction::Kozen => (
                TraceEncoding::six_tuple(machine.num_states())?,
                param.saturating_mul(block_len(n)),
                param as usize + 1,
            ),
            Construction::Linear => (
                TraceEncoding::eight_tuple(machine.num_states(), n, param)?,
                param,
                2 * param as usize + n as usize + 4,
            ),
        };
        if instance.len() != expected {
            return Err(ReductionError::InvalidParameter(format!(
                "{construction} family with parameter {param} on n = {n} has {expected} automata, found {}",
                instance.len()
            )));
        }
        if **instance.alphabet() != *trace_alphabet() {
            return Err(ReductionError::InvalidParameter(
                "instance is not over the trace alphabet".into(),
            ));
        }
        Ok(Self {
            instance,
            encoding,
            provenance: Provenance {
                machine: machine.name().to_string(),
                input: input.to_string(),
                construction,
                param,
                space,
            },
            machine,
            input,
        })
    }
}

/// Cells per worktape block for inputs of length `n`: `ceil(log2 n)`,
/// at least 1.
pub fn block_len(n: u32) -> u32 {
    bits_for(u64::from(n)).max(1)
}

fn validate(machine: &OfflineNtm, input: &Input, opts: &CompileOptions) -> Result<(), ReductionError> {
    if input.is_empty() {
        return Err(ReductionError::InvalidParameter(
            "input must have length at least 1".into(),
        ));
    }
    if !opts.allow_stay && machine.uses_stay() {
        return Err(ReductionError::InvalidMachine(format!(
            "machine '{}' uses Stay moves",
            machine.name()
        )));
    }
    Ok(())
}

/// `k + 1` automata over `(q, r0, r1, m0, m1, w)` tuples, checking
/// acceptance within `k * ceil(log2 n)` worktape cells.
pub fn compile_kozen(
    machine: &OfflineNtm,
    input: &Input,
    k: u32,
    opts: CompileOptions,
) -> Result<CompiledFamily, ReductionError> {
    validate(machine, input, &opts)?;
    if k == 0 {
        return Err(ReductionError::InvalidParameter(
            "block count k must be at least 1".into(),
        ));
    }
    let b = block_len(input.len());
    let space = k
        .checked_mul(b)
        .ok_or_else(|| ReductionError::InvalidParameter("k * block length overflows".into()))?;
    if b > 32 {
        return Err(ReductionError::EncodingOverflow {
            field: "block",
            width: 2 * b,
        });
    }
    let enc = TraceEncoding::six_tuple(machine.num_states())?;
    let alphabet = trace_alphabet();
    let control = Control {
        machine,
        input: Some(input),
        check_input: opts.fault != Some(Fault::SkipInputCheck),
    };
    let mut writable = [true, false, false];
    for (_, t) in machine.rules() {
        writable[t.write.code() as usize] = true;
    }
    let mut dfas = vec![checker::build("control", &control, &enc, &alphabet)];
    let blocks: Vec<_> = (0..k)
        .into_par_iter()
        .map(|i| {
            let block = BlockCheck {
                start: i * b,
                len: b,
                space,
                check_read: opts.fault != Some(Fault::SkipWorktapeCheck),
                writable,
            };
            checker::build(format!("block_{}", i + 1), &block, &enc, &alphabet)
        })
        .collect();
    dfas.extend(blocks);
    Ok(CompiledFamily {
        instance: IntersectionInstance::new(dfas)?,
        encoding: enc,
        provenance: Provenance {
            machine: machine.name().to_string(),
            input: input.to_string(),
            construction: Construction::Kozen,
            param: k,
            space,
        },
        machine: machine.clone(),
        input: input.clone(),
    })
}

/// `1 + (n+2) + S + S + 1` automata over
/// `(q, h0, h1, r0, r1, m0, m1, w)` tuples, checking acceptance within
/// `space` worktape cells. Order: control, one input-head automaton per
/// input position `0..=n+1`, one work-head automaton per cell, one content
/// automaton per cell, and the range check.
pub fn compile_linear(
    machine: &OfflineNtm,
    input: &Input,
    space: u32,
    opts: CompileOptions,
) -> Result<CompiledFamily, ReductionError> {
    validate(machine, input, &opts)?;
    if space == 0 {
        return Err(ReductionError::InvalidParameter("space must be at least 1 cell".into()));
    }
    let n = input.len();
    let enc = TraceEncoding::eight_tuple(machine.num_states(), n, space)?;
    let alphabet = trace_alphabet();
    let check_input = opts.fault != Some(Fault::SkipInputCheck);
    let check_work = opts.fault != Some(Fault::SkipWorktapeCheck);

    let control = Control {
        machine,
        input: None,
        check_input,
    };
    let mut dfas = vec![checker::build("control", &control, &enc, &alphabet)];
    let input_heads: Vec<_> = (0..n + 2)
        .into_par_iter()
        .map(|p| {
            let check = HeadCheck {
                pos: p,
                len: n + 2,
                head: Field::H0,
                mv: Field::M0,
                read: check_input.then(|| (Field::R0, input.read(p).code())),
                starts_here: p == 1,
            };
            checker::build(format!("input_head_{p}"), &check, &enc, &alphabet)
        })
        .collect();
    let work_heads: Vec<_> = (0..space)
        .into_par_iter()
        .map(|c| {
            let check = HeadCheck {
                pos: c,
                len: space,
                head: Field::H1,
                mv: Field::M1,
                read: None,
                starts_here: c == 0,
            };
            checker::build(format!("work_head_{c}"), &check, &enc, &alphabet)
        })
        .collect();
    let cells: Vec<_> = (0..space)
        .into_par_iter()
        .map(|c| {
            let check = CellCheck {
                cell: c,
                check_read: check_work,
            };
            checker::build(format!("cell_{c}"), &check, &enc, &alphabet)
        })
        .collect();
    let range = RangeCheck {
        max_h0: u64::from(n) + 1,
        max_h1: u64::from(space) - 1,
    };
    dfas.extend(input_heads);
    dfas.extend(work_heads);
    dfas.extend(cells);
    dfas.push(checker::build("range", &range, &enc, &alphabet));
    Ok(CompiledFamily {
        instance: IntersectionInstance::new(dfas)?,
        encoding: enc,
        provenance: Provenance {
            machine: machine.name().to_string(),
            input: input.to_string(),
            construction: Construction::Linear,
            param: space,
            space,
        },
        machine: machine.clone(),
        input: input.clone(),
    })
}
