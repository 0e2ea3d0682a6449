use std::collections::BTreeMap;
use std::fmt::Write;
use std::sync::Arc;

use crate::automata::{Alphabet, Dfa};

use super::{parse_num, quote_name, quote_symbol, tokenize, FormatError, Token};

/// Parses a `.dfa` file:
///
/// ```text
/// dfa parity
/// alphabet a b
/// states 2
/// initial 0
/// final 0
/// trans 0 a 1   # one line per (state, symbol)
/// ```
///
/// Symbols longer than one character must be quoted. Without `strict`,
/// missing transitions go to an added dead state.
pub fn parse_dfa(text: &str, strict: bool) -> Result<Dfa, FormatError> {
    let mut name = None;
    let mut alphabet: Option<Arc<Alphabet>> = None;
    let mut states = None;
    let mut initial = None;
    let mut finals: Option<Vec<u32>> = None;
    let mut trans: Vec<(usize, u32, String, u32)> = Vec::new();

    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let tokens = tokenize(line, lineno, true)?;
        let Some((head, args)) = tokens.split_first() else {
            continue;
        };
        if head.quoted {
            return Err(FormatError::parse(lineno, "a line must start with a keyword"));
        }
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
            "dfa" => {
                once(name.is_some())?;
                arity(1)?;
                name = Some(args[0].text.clone());
            }
            "alphabet" => {
                once(alphabet.is_some())?;
                if args.is_empty() {
                    return Err(FormatError::parse(lineno, "alphabet needs at least one symbol"));
                }
                let tokens = args
                    .iter()
                    .map(|t| symbol_token(t, lineno))
                    .collect::<Result<Vec<_>, _>>()?;
                let a = Alphabet::new(tokens).map_err(|e| FormatError::parse(lineno, e.to_string()))?;
                alphabet = Some(Arc::new(a));
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
            "final" => {
                once(finals.is_some())?;
                let ids = args
                    .iter()
                    .map(|t| parse_num::<u32>(t, lineno, "a state"))
                    .collect::<Result<Vec<_>, _>>()?;
                finals = Some(ids);
            }
            "trans" => {
                arity(3)?;
                let src = parse_num(&args[0], lineno, "a state")?;
                let sym = symbol_token(&args[1], lineno)?;
                let dst = parse_num(&args[2], lineno, "a state")?;
                trans.push((lineno, src, sym, dst));
            }
            other => return Err(FormatError::parse(lineno, format!("unknown keyword '{other}'"))),
        }
    }

    let missing = |what: &str| FormatError::Validation(format!("missing '{what}' line"));
    let name = name.ok_or_else(|| missing("dfa"))?;
    let alphabet = alphabet.ok_or_else(|| missing("alphabet"))?;
    let states = states.ok_or_else(|| missing("states"))?;
    let initial = initial.ok_or_else(|| missing("initial"))?;

    let mut map = BTreeMap::new();
    for (lineno, src, sym, dst) in trans {
        let s = alphabet
            .symbol(&sym)
            .map_err(|_| FormatError::parse(lineno, format!("symbol '{sym}' is not in the alphabet")))?;
        if map.insert((src, s), dst).is_some() {
            return Err(FormatError::parse(
                lineno,
                format!("second transition from state {src} on '{sym}'"),
            ));
        }
    }
    let finals = finals.unwrap_or_default();
    let mut seen = vec![];
    for &f in &finals {
        if seen.contains(&f) {
            return Err(FormatError::Validation(format!("final state {f} listed twice")));
        }
        seen.push(f);
    }
    if initial >= states {
        return Err(FormatError::Validation(format!(
            "initial state {initial} is not declared (states 0..{states})"
        )));
    }
    Dfa::from_partial(name, alphabet, states, initial, finals, &map, strict)
        .map_err(|e| FormatError::Validation(e.to_string()))
}

fn symbol_token(tok: &Token, lineno: usize) -> Result<String, FormatError> {
    if !tok.quoted && tok.text.chars().count() != 1 {
        return Err(FormatError::parse(
            lineno,
            format!("multi-character symbol '{}' must be quoted", tok.text),
        ));
    }
    Ok(tok.text.clone())
}

fn emit_header(dfa: &Dfa, states: u32, out: &mut String) {
    let a = dfa.alphabet();
    let _ = writeln!(out, "dfa {}", quote_name(dfa.name()));
    let tokens: Vec<String> = a.tokens().map(quote_symbol).collect();
    let _ = writeln!(out, "alphabet {}", tokens.join(" "));
    let _ = writeln!(out, "states {states}");
    let _ = writeln!(out, "initial {}", dfa.initial());
    out.push_str("final");
    for f in dfa.finals() {
        let _ = write!(out, " {f}");
    }
    out.push('\n');
}

/// Canonical text: every transition, ordered by state then symbol.
pub fn emit_dfa(dfa: &Dfa) -> String {
    let mut out = String::new();
    emit_header(dfa, dfa.num_states(), &mut out);
    emit_rows(dfa, dfa.num_states(), &mut out);
    out
}

/// Like [`emit_dfa`], but when the last state is a dead state that other
/// states lead to, it is left implicit and its incoming transitions are
/// omitted. Parsing without `strict` gives back the same automaton.
pub fn emit_dfa_compact(dfa: &Dfa) -> String {
    let last = dfa.num_states() - 1;
    let used = (0..last).any(|q| dfa.row(q).contains(&last));
    if dfa.num_states() < 2 || !dfa.is_dead(last) || dfa.initial() == last || !used {
        return emit_dfa(dfa);
    }
    let mut out = String::new();
    emit_header(dfa, last, &mut out);
    emit_rows(dfa, last, &mut out);
    out
}

fn emit_rows(dfa: &Dfa, states: u32, out: &mut String) {
    let a = dfa.alphabet();
    for q in 0..states {
        for s in a.symbols() {
            let t = dfa.next(q, s);
            if t < states {
                let _ = writeln!(out, "trans {q} {} {t}", quote_symbol(a.token(s)));
            }
        }
    }
}
