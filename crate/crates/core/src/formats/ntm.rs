use std::fmt::Write;
use std::path::Path;

use crate::tm::{InputSym, Move, OfflineNtm, TapeSym, Transition};

use super::{parse_num, quote_name, read_file, tokenize, FormatError};

/// Parses a `.ntm` file:
///
/// ```text
/// ntm contains_one
/// states 2
/// initial 0
/// accept 1
/// delta 0 0 0 -> 0 0 R S
/// delta 0 1 0 -> 1 0 S S
/// ```
///
/// `r0` is one of `0 1 < >`, `r1` and `w` one of `0 1 #`, moves one of
/// `L R S`. Since `#` is a tape symbol, only whole lines starting with `#`
/// are comments.
pub fn parse_ntm(text: &str) -> Result<OfflineNtm, FormatError> {
    let mut name = None;
    let mut states = None;
    let mut initial = None;
    let mut accept: Option<Vec<u32>> = None;
    let mut rules = Vec::new();

    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if line.trim_start().starts_with('#') {
            continue;
        }
        let tokens = tokenize(line, lineno, false)?;
        let Some((head, args)) = tokens.split_first() else {
            continue;
        };
        let once = |seen: bool| {
            if seen {
                Err(FormatError::parse(lineno, format!("duplicate '{}' line", head.text)))
            } else {
                Ok(())
            }
        };
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(FormatError::parse(
                    lineno,
                    format!("'{}' takes {n} argument(s), found {}", head.text, args.len()),
                ))
            }
        };
        match head.text.as_str() {
            "ntm" => {
                once(name.is_some())?;
                arity(1)?;
                name = Some(args[0].text.clone());
            }
            "states" => {
                once(states.is_some())?;
                arity(1)?;
                states = Some(parse_num::<u32>(&args[0], lineno, "a state count")?);
            }
            "initial" => {
                once(initial.is_some())?;
                arity(1)?;
                initial = Some(parse_num::<u32>(&args[0], lineno, "a state")?);
            }
            "accept" => {
                once(accept.is_some())?;
                let ids = args
                    .iter()
                    .map(|t| parse_num::<u32>(t, lineno, "a state"))
                    .collect::<Result<_, _>>()?;
                accept = Some(ids);
            }
            "delta" => {
                arity(8)?;
                if args[3].text != "->" || args[3].quoted {
                    return Err(FormatError::parse(lineno, "expected '->' after the read symbols"));
                }
                let one_char = |i: usize, what: &str| {
                    let mut cs = args[i].text.chars();
                    match (cs.next(), cs.next()) {
                        (Some(c), None) => Ok(c),
                        _ => Err(FormatError::parse(lineno, format!("bad {what} '{}'", args[i].text))),
                    }
                };
                let q = parse_num(&args[0], lineno, "a state")?;
                let r0 = InputSym::from_char(one_char(1, "input symbol")?)
                    .ok_or_else(|| FormatError::parse(lineno, format!("bad input symbol '{}'", args[1].text)))?;
                let tape = |i: usize| {
                    TapeSym::from_char(one_char(i, "tape symbol")?)
                        .ok_or_else(|| FormatError::parse(lineno, format!("bad tape symbol '{}'", args[i].text)))
                };
                let mv = |i: usize| {
                    Move::from_char(one_char(i, "move")?)
                        .ok_or_else(|| FormatError::parse(lineno, format!("unknown move '{}'", args[i].text)))
                };
                let t = Transition {
                    next: parse_num(&args[4], lineno, "a state")?,
                    write: tape(5)?,
                    input_move: mv(6)?,
                    work_move: mv(7)?,
                };
                rules.push(((q, r0, tape(2)?), t));
            }
            other => return Err(FormatError::parse(lineno, format!("unknown keyword '{other}'"))),
        }
    }
    let missing = |what: &str| FormatError::Validation(format!("missing '{what}' line"));
    OfflineNtm::new(
        name.ok_or_else(|| missing("ntm"))?,
        states.ok_or_else(|| missing("states"))?,
        initial.ok_or_else(|| missing("initial"))?,
        accept.unwrap_or_default(),
        rules,
    )
    .map_err(|e| FormatError::Validation(e.to_string()))
}

/// Canonical text, transitions in key order.
pub fn emit_ntm(m: &OfflineNtm) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ntm {}", quote_name(m.name()));
    let _ = writeln!(out, "states {}", m.num_states());
    let _ = writeln!(out, "initial {}", m.initial());
    out.push_str("accept");
    for q in m.accepting_states() {
        let _ = write!(out, " {q}");
    }
    out.push('\n');
    for ((q, r0, r1), t) in m.rules() {
        let _ = writeln!(
            out,
            "delta {q} {} {} -> {} {} {} {}",
            r0.as_char(),
            r1.as_char(),
            t.next,
            t.write.as_char(),
            t.input_move.as_char(),
            t.work_move.as_char()
        );
    }
    out
}

pub fn load_ntm(path: &Path) -> Result<OfflineNtm, FormatError> {
    parse_ntm(&read_file(path)?).map_err(|e| e.in_file(path))
}
