use crate::automata::{Symbol, Witness};
use crate::tm::{Configuration, Move, Run, TapeSym, Transition};

use super::encoding::{Field, TraceTuple};
use super::{CompiledFamily, ReductionError};

/// The trace a family accepts for `run`.
pub fn encode_run(family: &CompiledFamily, run: &Run) -> Vec<Symbol> {
    let mut out = Vec::new();
    for (c, t) in run.configs.iter().zip(&run.transitions) {
        family.encoding.encode(&TraceTuple::step(c, &family.input, t), &mut out);
    }
    if let Some(last) = run.configs.last() {
        family.encoding.encode(&TraceTuple::halt(last, &family.input), &mut out);
    }
    out
}

/// Parses a witness of a compiled family back into the machine run it
/// encodes, re-checking every step against the transition relation.
pub fn decode_witness(family: &CompiledFamily, witness: &Witness) -> Result<Run, ReductionError> {
    let tuples = family.encoding.decode(&witness.symbols)?;
    if tuples.is_empty() {
        return Err(ReductionError::MalformedTrace("empty trace".into()));
    }
    let machine = &family.machine;
    let input = &family.input;
    let enc = &family.encoding;
    let mut current = Configuration::initial(machine, family.space());
    let mut run = Run {
        configs: vec![current.clone()],
        transitions: Vec::new(),
    };
    for (i, raw) in tuples.iter().enumerate() {
        let bad = |what: String| ReductionError::InvalidStep(format!("tuple {i}: {what}"));
        let r1 = current.tape[current.h1 as usize];
        let expected = [
            (Field::Q, u64::from(current.state)),
            (Field::H0, u64::from(current.h0)),
            (Field::H1, u64::from(current.h1)),
            (Field::R0, input.read(current.h0).code()),
            (Field::R1, r1.code()),
        ];
        for (field, want) in expected {
            if enc.has(field) && raw.get(field) != want {
                return Err(bad(format!("{} is {}, expected {want}", field.key(), raw.get(field))));
            }
        }
        let malformed =
            |f: Field| ReductionError::MalformedTrace(format!("tuple {i}: invalid {} code {}", f.key(), raw.get(f)));
        let m0 = Move::from_code(raw.get(Field::M0)).ok_or_else(|| malformed(Field::M0))?;
        let m1 = Move::from_code(raw.get(Field::M1)).ok_or_else(|| malformed(Field::M1))?;
        let w = TapeSym::from_code(raw.get(Field::W)).ok_or_else(|| malformed(Field::W))?;
        let last = i + 1 == tuples.len();

        if machine.is_accepting(current.state) {
            if !last {
                return Err(bad("trace continues after an accepting state".into()));
            }
            if m0 != Move::S || m1 != Move::S || w != r1 {
                return Err(bad("closing tuple must stay and rewrite the read symbol".into()));
            }
            return Ok(run);
        }
        if last {
            return Err(bad(format!("trace ends in non-accepting state {}", current.state)));
        }
        let next = tuples[i + 1].get(Field::Q);
        let t = Transition {
            next: u32::try_from(next).map_err(|_| bad(format!("state {next} out of range")))?,
            write: w,
            input_move: m0,
            work_move: m1,
        };
        if !machine
            .transitions(current.state, input.read(current.h0), r1)
            .contains(&t)
        {
            return Err(bad(format!("{t:?} is not a transition of {}", current)));
        }
        current = current
            .apply(&t, input.len())
            .ok_or_else(|| bad("head leaves its tape".into()))?;
        run.configs.push(current.clone());
        run.transitions.push(t);
    }
    unreachable!("the last tuple always returns")
}
