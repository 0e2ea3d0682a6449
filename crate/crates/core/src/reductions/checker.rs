//! Compiles a tuple-level checker into a DFA over `{0, 1, $}`.
//!
//! A checker sees a trace one field at a time. For each field it picks how
//! much of the value it needs, and the DFA only remembers that much while
//! the bits stream past: skipping costs nothing, comparing against a
//! constant costs one flag, and only captured fields store their bits.
//! Per-position checkers therefore stay at `O(tuple width)` states.

use std::hash::Hash;
use std::sync::Arc;

use indexmap::IndexMap;

use crate::automata::{Alphabet, Dfa, StateId, Symbol};

use super::encoding::{Field, TraceEncoding, BIT0, BIT1, SEP};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Ignore the value.
    Skip,
    /// The value must equal this constant.
    Expect(u64),
    /// Record whether the value equals this constant.
    Test(u64),
    /// The value must not exceed this constant.
    AtMost(u64),
    /// Record the whole value.
    Capture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Outcome {
    Passed,
    Equal(bool),
    Value(u64),
}

pub(crate) trait TupleCheck {
    type Ctx: Clone + Eq + Hash;

    fn start(&self) -> Self::Ctx;

    /// Must depend only on `ctx` and `field`.
    fn mode(&self, ctx: &Self::Ctx, field: Field) -> Mode;

    /// `None` rejects the trace.
    fn field_done(&self, ctx: &Self::Ctx, field: Field, outcome: Outcome) -> Option<Self::Ctx>;

    /// Called on the `$` closing a tuple. `None` rejects the trace.
    fn tuple_done(&self, ctx: &Self::Ctx) -> Option<Self::Ctx>;

    /// `boundary` is true between tuples (and before the first).
    fn accepting(&self, ctx: &Self::Ctx, boundary: bool) -> bool;

    /// When true at a tuple boundary, no further symbol is allowed.
    fn closed(&self, _ctx: &Self::Ctx) -> bool {
        false
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Key<C> {
    ctx: C,
    field: u8,
    bit: u8,
    // Test: 1 once a bit differed. AtMost: 1 once strictly below.
    // Capture: bits so far.
    partial: u64,
}

/// Builds the DFA of `check`; the absorbing dead state is numbered last.
pub(crate) fn build<C: TupleCheck>(
    name: impl Into<String>,
    check: &C,
    enc: &TraceEncoding,
    alphabet: &Arc<Alphabet>,
) -> Dfa {
    let fields = enc.fields();
    let start = Key {
        ctx: check.start(),
        field: 0,
        bit: 0,
        partial: 0,
    };
    let mut ids: IndexMap<Key<C::Ctx>, ()> = IndexMap::new();
    ids.insert(start, ());
    let mut rows: Vec<[Option<usize>; 3]> = Vec::new();
    let mut i = 0;
    while i < ids.len() {
        let key = ids.get_index(i).expect("in range").0.clone();
        let mut row = [None; 3];
        for (slot, sym) in [BIT0, BIT1, SEP].into_iter().enumerate() {
            if let Some(next) = advance(check, fields, &key, sym) {
                let (j, _) = ids.insert_full(next, ());
                row[slot] = Some(j);
            }
        }
        rows.push(row);
        i += 1;
    }
    let dead = ids.len() as StateId;
    let mut table: Vec<StateId> = rows
        .iter()
        .flat_map(|r| r.iter().map(|t| t.map_or(dead, |j| j as StateId)))
        .collect();
    table.extend([dead; 3]);
    let finals = ids
        .keys()
        .enumerate()
        .filter(|(_, k)| check.accepting(&k.ctx, k.field == 0 && k.bit == 0))
        .map(|(i, _)| i as StateId);
    Dfa::new(name, alphabet.clone(), dead + 1, 0, finals, table).expect("builder emits valid tables")
}

fn advance<C: TupleCheck>(check: &C, fields: &[(Field, u32)], key: &Key<C::Ctx>, sym: Symbol) -> Option<Key<C::Ctx>> {
    let mut k = key.clone();
    if k.field == 0 && k.bit == 0 && check.closed(&k.ctx) {
        return None;
    }
    // zero-width fields complete without reading anything
    while (k.field as usize) < fields.len() && fields[k.field as usize].1 == 0 {
        let field = fields[k.field as usize].0;
        let outcome = match check.mode(&k.ctx, field) {
            Mode::Skip | Mode::AtMost(_) => Outcome::Passed,
            Mode::Expect(0) => Outcome::Value(0),
            Mode::Expect(_) => return None,
            Mode::Test(v) => Outcome::Equal(v == 0),
            Mode::Capture => Outcome::Value(0),
        };
        k.ctx = check.field_done(&k.ctx, field, outcome)?;
        k.field += 1;
    }
    if k.field as usize == fields.len() {
        if sym != SEP {
            return None;
        }
        return Some(Key {
            ctx: check.tuple_done(&k.ctx)?,
            field: 0,
            bit: 0,
            partial: 0,
        });
    }
    let b = match sym {
        BIT0 => 0u64,
        BIT1 => 1,
        _ => return None,
    };
    let (field, width) = fields[k.field as usize];
    let shift = width - 1 - u32::from(k.bit);
    match check.mode(&k.ctx, field) {
        Mode::Skip => {}
        Mode::Expect(v) => {
            if v >> shift & 1 != b {
                return None;
            }
        }
        Mode::Test(v) => {
            if v >> shift & 1 != b {
                k.partial = 1;
            }
        }
        Mode::AtMost(v) if v >> width != 0 => {}
        Mode::AtMost(v) => {
            let vb = v >> shift & 1;
            if k.partial == 0 && b > vb {
                return None;
            }
            if b < vb {
                k.partial = 1;
            }
        }
        Mode::Capture => k.partial = k.partial << 1 | b,
    }
    k.bit += 1;
    if u32::from(k.bit) == width {
        let outcome = match check.mode(&k.ctx, field) {
            Mode::Skip | Mode::AtMost(_) => Outcome::Passed,
            // out-of-range constants never match a width-bit value
            Mode::Expect(v) if v >> width != 0 => return None,
            Mode::Expect(v) => Outcome::Value(v),
            Mode::Test(v) => Outcome::Equal(k.partial == 0 && v >> width == 0),
            Mode::Capture => Outcome::Value(k.partial),
        };
        k.ctx = check.field_done(&k.ctx, field, outcome)?;
        k.field += 1;
        k.bit = 0;
        k.partial = 0;
    }
    Some(k)
}
