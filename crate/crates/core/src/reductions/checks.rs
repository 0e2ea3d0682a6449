//! The per-automaton checks emitted by the two compilers.

use crate::tm::{Input, InputSym, Move, OfflineNtm, TapeSym, TmState};

use super::checker::{Mode, Outcome, TupleCheck};
use super::encoding::Field;

const STAY: u64 = 0b10;

fn input_sym(code: u64, left_end: bool) -> Option<InputSym> {
    match code {
        0b00 => Some(InputSym::Zero),
        0b01 => Some(InputSym::One),
        0b11 if left_end => Some(InputSym::LeftEnd),
        0b11 => Some(InputSym::RightEnd),
        _ => None,
    }
}

/// Tracks the machine state and checks every tuple's `(m0, m1, w)` and
/// the next tuple's `q` against the transition relation, using the
/// claimed `r0`/`r1`. With `input` set it also follows the input head and
/// checks `r0` (six-field layout); otherwise the left endmarker is told
/// apart from the right one by testing `h0 == 0`.
pub(crate) struct Control<'a> {
    pub machine: &'a OfflineNtm,
    pub input: Option<&'a Input>,
    pub check_input: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum ControlCtx {
    Between { allowed: Vec<TmState>, h0: u32 },
    Reading(Claim),
    Halted,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Claim {
    q: TmState,
    h0: u32,
    left_end: bool,
    r0: Option<u64>,
    r1: Option<u64>,
    m0: Option<u64>,
    m1: Option<u64>,
    w: Option<u64>,
}

impl Control<'_> {
    fn matches(&self, c: &Claim, require_all: bool) -> Vec<TmState> {
        let fits = |have: Option<u64>, want: u64| have.is_none_or(|v| v == want);
        let mut next: Vec<TmState> = self
            .machine
            .rules()
            .filter(|&((q, r0, r1), t)| {
                q == c.q
                    && c.r0.is_none_or(|v| input_sym(v, c.left_end) == Some(r0))
                    && fits(c.r1, r1.code())
                    && fits(c.m0, t.input_move.code())
                    && fits(c.m1, t.work_move.code())
                    && fits(c.w, t.write.code())
            })
            .map(|(_, t)| t.next)
            .collect();
        if require_all && [c.r0, c.r1, c.m0, c.m1, c.w].iter().any(Option::is_none) {
            next.clear();
        }
        next.sort_unstable();
        next.dedup();
        next
    }

    fn halting_ok(c: &Claim) -> bool {
        c.r0.is_none_or(|v| input_sym(v, c.left_end).is_some())
            && c.r1.is_none_or(|v| v <= 2)
            && c.m0.is_none_or(|v| v == STAY)
            && c.m1.is_none_or(|v| v == STAY)
            && match (c.w, c.r1) {
                (Some(w), Some(r)) => w == r,
                _ => true,
            }
    }

    fn consistent(&self, c: &Claim) -> bool {
        if self.machine.is_accepting(c.q) {
            Self::halting_ok(c)
        } else {
            !self.matches(c, false).is_empty()
        }
    }
}

impl TupleCheck for Control<'_> {
    type Ctx = ControlCtx;

    fn start(&self) -> ControlCtx {
        ControlCtx::Between {
            allowed: vec![self.machine.initial()],
            h0: 1,
        }
    }

    fn mode(&self, ctx: &ControlCtx, field: Field) -> Mode {
        match (ctx, field) {
            (ControlCtx::Between { allowed, .. }, Field::Q) if allowed.len() == 1 => {
                Mode::Expect(u64::from(allowed[0]))
            }
            (_, Field::Q) => Mode::Capture,
            (_, Field::H0) => Mode::Test(0),
            (_, Field::H1) => Mode::Skip,
            (ControlCtx::Reading(c), Field::R0) => match self.input {
                Some(input) if self.check_input => Mode::Expect(input.read(c.h0).code()),
                _ => Mode::Capture,
            },
            _ => Mode::Capture,
        }
    }

    fn field_done(&self, ctx: &ControlCtx, field: Field, outcome: Outcome) -> Option<ControlCtx> {
        match ctx {
            ControlCtx::Between { allowed, h0 } => {
                let Outcome::Value(v) = outcome else { return None };
                let q = allowed.iter().copied().find(|&q| u64::from(q) == v)?;
                let claim = Claim {
                    q,
                    h0: *h0,
                    left_end: self.input.is_some() && *h0 == 0,
                    r0: None,
                    r1: None,
                    m0: None,
                    m1: None,
                    w: None,
                };
                self.consistent(&claim).then_some(ControlCtx::Reading(claim))
            }
            ControlCtx::Reading(c) => {
                let mut c = c.clone();
                match (field, outcome) {
                    (Field::H0, Outcome::Equal(at_zero)) => c.left_end = at_zero,
                    (Field::R0, Outcome::Value(v)) => c.r0 = Some(v),
                    (Field::R1, Outcome::Value(v)) => c.r1 = Some(v),
                    (Field::M0, Outcome::Value(v)) => c.m0 = Some(v),
                    (Field::M1, Outcome::Value(v)) => c.m1 = Some(v),
                    (Field::W, Outcome::Value(v)) => c.w = Some(v),
                    _ => {}
                }
                self.consistent(&c).then_some(ControlCtx::Reading(c))
            }
            ControlCtx::Halted => None,
        }
    }

    fn tuple_done(&self, ctx: &ControlCtx) -> Option<ControlCtx> {
        let ControlCtx::Reading(c) = ctx else { return None };
        if self.machine.is_accepting(c.q) {
            return Self::halting_ok(c).then_some(ControlCtx::Halted);
        }
        let allowed = self.matches(c, true);
        if allowed.is_empty() {
            return None;
        }
        let h0 = match self.input {
            Some(input) => Move::from_code(c.m0?)?.apply(c.h0, input.len() + 2)?,
            None => 0,
        };
        Some(ControlCtx::Between { allowed, h0 })
    }

    fn accepting(&self, ctx: &ControlCtx, _boundary: bool) -> bool {
        matches!(ctx, ControlCtx::Halted)
    }

    fn closed(&self, ctx: &ControlCtx) -> bool {
        matches!(ctx, ControlCtx::Halted)
    }
}

/// Owns one head position: when the head is here it checks the read
/// value (if any) and forces the next tuple's head field to follow the
/// move.
pub(crate) struct HeadCheck {
    pub pos: u32,
    /// Number of positions; moves leaving `0..len` reject.
    pub len: u32,
    pub head: Field,
    pub mv: Field,
    pub read: Option<(Field, u64)>,
    pub starts_here: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct HeadCtx {
    pending: Option<u32>,
    here: bool,
    mv: Option<u64>,
}

impl TupleCheck for HeadCheck {
    type Ctx = HeadCtx;

    fn start(&self) -> HeadCtx {
        HeadCtx {
            pending: self.starts_here.then_some(self.pos),
            here: false,
            mv: None,
        }
    }

    fn mode(&self, ctx: &HeadCtx, field: Field) -> Mode {
        if field == self.head {
            return ctx
                .pending
                .map_or(Mode::Test(u64::from(self.pos)), |p| Mode::Expect(u64::from(p)));
        }
        if !ctx.here {
            return Mode::Skip;
        }
        match self.read {
            Some((f, code)) if f == field => Mode::Expect(code),
            _ if field == self.mv => Mode::Capture,
            _ => Mode::Skip,
        }
    }

    fn field_done(&self, ctx: &HeadCtx, field: Field, outcome: Outcome) -> Option<HeadCtx> {
        let mut c = ctx.clone();
        if field == self.head {
            c.here = match outcome {
                Outcome::Value(v) => v == u64::from(self.pos),
                Outcome::Equal(eq) => eq,
                Outcome::Passed => false,
            };
            c.pending = None;
        } else if field == self.mv && c.here {
            if let Outcome::Value(v) = outcome {
                c.mv = Some(v);
            }
        }
        Some(c)
    }

    fn tuple_done(&self, ctx: &HeadCtx) -> Option<HeadCtx> {
        let pending = if ctx.here {
            Some(Move::from_code(ctx.mv?)?.apply(self.pos, self.len)?)
        } else {
            None
        };
        Some(HeadCtx {
            pending,
            here: false,
            mv: None,
        })
    }

    fn accepting(&self, _ctx: &HeadCtx, _boundary: bool) -> bool {
        true
    }
}

/// Stores one worktape cell: checks `r1` when `h1` is this cell and
/// takes `w` as the new content.
pub(crate) struct CellCheck {
    pub cell: u32,
    pub check_read: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct CellCtx {
    stored: u64,
    here: bool,
    w: Option<u64>,
}

impl TupleCheck for CellCheck {
    type Ctx = CellCtx;

    fn start(&self) -> CellCtx {
        CellCtx {
            stored: TapeSym::Zero.code(),
            here: false,
            w: None,
        }
    }

    fn mode(&self, ctx: &CellCtx, field: Field) -> Mode {
        match field {
            Field::H1 => Mode::Test(u64::from(self.cell)),
            Field::R1 if ctx.here && self.check_read => Mode::Expect(ctx.stored),
            Field::W if ctx.here => Mode::Capture,
            _ => Mode::Skip,
        }
    }

    fn field_done(&self, ctx: &CellCtx, field: Field, outcome: Outcome) -> Option<CellCtx> {
        let mut c = ctx.clone();
        match (field, outcome) {
            (Field::H1, Outcome::Equal(eq)) => c.here = eq,
            (Field::W, Outcome::Value(v)) if c.here => c.w = Some(v),
            _ => {}
        }
        Some(c)
    }

    fn tuple_done(&self, ctx: &CellCtx) -> Option<CellCtx> {
        let stored = if ctx.here {
            TapeSym::from_code(ctx.w?)?.code()
        } else {
            ctx.stored
        };
        Some(CellCtx {
            stored,
            here: false,
            w: None,
        })
    }

    fn accepting(&self, _ctx: &CellCtx, _boundary: bool) -> bool {
        true
    }
}

/// Rejects tuples claiming a head position beyond either tape.
pub(crate) struct RangeCheck {
    pub max_h0: u64,
    pub max_h1: u64,
}

impl TupleCheck for RangeCheck {
    type Ctx = ();

    fn start(&self) {}

    fn mode(&self, _ctx: &(), field: Field) -> Mode {
        match field {
            Field::H0 => Mode::AtMost(self.max_h0),
            Field::H1 => Mode::AtMost(self.max_h1),
            _ => Mode::Skip,
        }
    }

    fn field_done(&self, _ctx: &(), _field: Field, _outcome: Outcome) -> Option<()> {
        Some(())
    }

    fn tuple_done(&self, _ctx: &()) -> Option<()> {
        Some(())
    }

    fn accepting(&self, _ctx: &(), _boundary: bool) -> bool {
        true
    }
}

/// Stores one block of worktape cells and follows the worktape head by
/// integrating `m1`. Checks `r1` and applies `w` while the head is inside
/// the block; a head move off either end of the worktape rejects.
///
/// Only symbols in `writable` may be stored, so a machine that never
/// writes `#` gets `2^len` block contents rather than `3^len`.
pub(crate) struct BlockCheck {
    pub start: u32,
    pub len: u32,
    pub space: u32,
    pub check_read: bool,
    pub writable: [bool; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct BlockCtx {
    // two bits per cell, cell 0 lowest
    cells: u64,
    h1: u32,
    m1: Option<u64>,
    w: Option<u64>,
}

impl BlockCheck {
    fn offset(&self, h1: u32) -> Option<u32> {
        (self.start..self.start + self.len)
            .contains(&h1)
            .then(|| h1 - self.start)
    }
}

impl TupleCheck for BlockCheck {
    type Ctx = BlockCtx;

    fn start(&self) -> BlockCtx {
        BlockCtx {
            cells: 0,
            h1: 0,
            m1: None,
            w: None,
        }
    }

    fn mode(&self, ctx: &BlockCtx, field: Field) -> Mode {
        let inside = self.offset(ctx.h1);
        match (field, inside) {
            (Field::R1, Some(off)) if self.check_read => Mode::Expect(ctx.cells >> (2 * off) & 0b11),
            (Field::M1, _) => Mode::Capture,
            (Field::W, Some(_)) => Mode::Capture,
            _ => Mode::Skip,
        }
    }

    fn field_done(&self, ctx: &BlockCtx, field: Field, outcome: Outcome) -> Option<BlockCtx> {
        let mut c = ctx.clone();
        match (field, outcome) {
            (Field::M1, Outcome::Value(v)) => c.m1 = Some(v),
            (Field::W, Outcome::Value(v)) => c.w = Some(v),
            _ => {}
        }
        Some(c)
    }

    fn tuple_done(&self, ctx: &BlockCtx) -> Option<BlockCtx> {
        let mut cells = ctx.cells;
        if let Some(off) = self.offset(ctx.h1) {
            let w = TapeSym::from_code(ctx.w?)?.code();
            if !self.writable[w as usize] {
                return None;
            }
            cells = cells & !(0b11 << (2 * off)) | w << (2 * off);
        }
        let h1 = Move::from_code(ctx.m1?)?.apply(ctx.h1, self.space)?;
        Some(BlockCtx {
            cells,
            h1,
            m1: None,
            w: None,
        })
    }

    fn accepting(&self, _ctx: &BlockCtx, _boundary: bool) -> bool {
        true
    }
}
