//! Breadth-first search for a shortest word in the intersection.
//!
//! Both strategies dequeue states in breadth-first order and expand
//! symbols in alphabet order, so the first final state dequeued is reached
//! by the length-lexicographically least accepted word. They return the
//! same witness on every instance.

use std::collections::VecDeque;
use std::str::FromStr;

use indexmap::IndexSet;

use super::{product, AutomataError, IntersectionInstance, ProductOptions, StateId, Symbol, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Build the full product automaton, then search it.
    Materialized,
    /// Explore product tuples lazily from the initial tuple.
    #[default]
    OnTheFly,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "materialized" => Ok(Self::Materialized),
            "on-the-fly" | "on_the_fly" | "otf" => Ok(Self::OnTheFly),
            other => Err(format!("unknown strategy '{other}'")),
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Materialized => "materialized",
            Self::OnTheFly => "on_the_fly",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub strategy: Strategy,
    /// Materialized product cap; ignored on the fly.
    pub cap: u64,
    /// Only words of at most this length are considered.
    pub step_cap: Option<u64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            strategy: Strategy::OnTheFly,
            cap: super::DEFAULT_PRODUCT_CAP,
            step_cap: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub witness: Option<Witness>,
    /// Distinct product states discovered by the search.
    pub states_explored: u64,
}

pub fn solve(instance: &IntersectionInstance, config: &SolverConfig) -> Result<Solution, AutomataError> {
    match config.strategy {
        Strategy::Materialized => {
            let opts = ProductOptions {
                cap: config.cap,
                prune_unreachable: false,
            };
            let p = product(instance, opts)?;
            let single = IntersectionInstance::new(vec![p])?;
            Ok(search(&single, config.step_cap, false))
        }
        Strategy::OnTheFly => Ok(search(instance, config.step_cap, true)),
    }
}

/// Shortest witness of a non-empty intersection, or `None` if empty.
pub fn intersect_nonempty(
    instance: &IntersectionInstance,
    strategy: Strategy,
) -> Result<Option<Witness>, AutomataError> {
    let config = SolverConfig {
        strategy,
        ..Default::default()
    };
    Ok(solve(instance, &config)?.witness)
}

/// Search restricted to words of length at most `step_cap`: the
/// deterministic counterpart of guessing a path while a step counter stays
/// under the bound.
pub fn bounded_search(instance: &IntersectionInstance, step_cap: u64) -> Option<Witness> {
    search(instance, Some(step_cap), true).witness
}

fn search(instance: &IntersectionInstance, step_cap: Option<u64>, prune: bool) -> Solution {
    let dfas = instance.dfas();
    // tuples with a component that can never become final are skipped;
    // they cannot lie on a path to a product final state
    let live: Vec<Vec<bool>> = if prune {
        dfas.iter().map(|d| d.co_reachable()).collect()
    } else {
        Vec::new()
    };
    let alive = |t: &[StateId]| !prune || t.iter().zip(&live).all(|(&q, l)| l[q as usize]);
    let is_final = |t: &[StateId]| t.iter().zip(dfas).all(|(&q, d)| d.is_final(q));

    let initial: Box<[StateId]> = dfas.iter().map(|d| d.initial()).collect();
    if !alive(&initial) {
        return Solution {
            witness: None,
            states_explored: 1,
        };
    }
    let mut visited: IndexSet<Box<[StateId]>> = IndexSet::new();
    // (parent index, symbol) for every visited tuple but the first
    let mut parent: Vec<(u32, Symbol)> = vec![(u32::MAX, Symbol(0))];
    let mut depth: Vec<u64> = vec![0];
    visited.insert(initial);
    let mut queue = VecDeque::from([0usize]);
    let mut succ = vec![0 as StateId; dfas.len()];

    while let Some(i) = queue.pop_front() {
        let current = visited.get_index(i).expect("queued index is visited");
        if is_final(current) {
            let mut symbols = Vec::new();
            let mut at = i;
            while at != 0 {
                let (p, s) = parent[at];
                symbols.push(s);
                at = p as usize;
            }
            symbols.reverse();
            return Solution {
                witness: Some(Witness { symbols }),
                states_explored: visited.len() as u64,
            };
        }
        if step_cap.is_some_and(|cap| depth[i] >= cap) {
            continue;
        }
        for s in instance.alphabet().symbols() {
            let current = visited.get_index(i).expect("queued index is visited");
            for ((n, &q), d) in succ.iter_mut().zip(current.iter()).zip(dfas) {
                *n = d.next(q, s);
            }
            if !alive(&succ) || visited.contains(succ.as_slice()) {
                continue;
            }
            let (j, _) = visited.insert_full(succ.clone().into_boxed_slice());
            parent.push((i as u32, s));
            depth.push(depth[i] + 1);
            queue.push_back(j);
        }
    }
    Solution {
        witness: None,
        states_explored: visited.len() as u64,
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::automata::{Alphabet, Dfa};

    fn unary() -> Arc<Alphabet> {
        Arc::new(Alphabet::from_chars("a").unwrap())
    }

    fn modulo(m: u32, residue: u32) -> Dfa {
        let table = (0..m).map(|q| (q + 1) % m).collect();
        Dfa::new(format!("mod{m}"), unary(), m, 0, [residue], table).unwrap()
    }

    fn both(inst: &IntersectionInstance) -> Option<Witness> {
        let a = intersect_nonempty(inst, Strategy::Materialized).unwrap();
        let b = intersect_nonempty(inst, Strategy::OnTheFly).unwrap();
        assert_eq!(a, b);
        a
    }

    /// Smallest n ≤ limit with a^n in every language, by direct membership.
    fn brute_force_unary(inst: &IntersectionInstance, limit: usize) -> Option<usize> {
        (0..=limit).find(|&n| inst.accepts(&vec![Symbol(0); n]).unwrap())
    }

    #[test]
    fn empty_word_witness() {
        let ab = Arc::new(Alphabet::from_chars("01").unwrap());
        // accepts only ε: state 0 final, everything goes to sink 1
        let eps = Dfa::new("eps", ab, 2, 0, [0], vec![1, 1, 1, 1]).unwrap();
        let inst = IntersectionInstance::new(vec![eps.clone(), eps]).unwrap();
        assert_eq!(both(&inst), Some(Witness { symbols: vec![] }));
    }

    #[test]
    fn odd_and_multiple_of_three() {
        let inst = IntersectionInstance::new(vec![modulo(2, 1), modulo(3, 0)]).unwrap();
        assert_eq!(brute_force_unary(&inst, 6), Some(3));
        let w = both(&inst).unwrap();
        assert_eq!(w.render(inst.alphabet()), "aaa");
    }

    #[test]
    fn contradictory_constraints_are_empty() {
        let ab = Arc::new(Alphabet::from_chars("01").unwrap());
        let has_one = Dfa::new("has1", ab.clone(), 2, 0, [1], vec![0, 1, 1, 1]).unwrap();
        let no_one = Dfa::new("no1", ab, 2, 0, [0], vec![0, 1, 1, 1]).unwrap();
        let inst = IntersectionInstance::new(vec![has_one, no_one]).unwrap();
        assert_eq!(both(&inst), None);
    }

    #[test]
    fn ties_break_by_alphabet_order() {
        let ab = Arc::new(Alphabet::from_chars("ba").unwrap());
        // any word of length 2
        let len2 = Dfa::new("len2", ab, 4, 0, [2], vec![1, 1, 2, 2, 3, 3, 3, 3]).unwrap();
        let inst = IntersectionInstance::new(vec![len2]).unwrap();
        assert_eq!(both(&inst).unwrap().render(inst.alphabet()), "bb");
    }

    #[test]
    fn bounded_search_respects_cap() {
        let inst = IntersectionInstance::new(vec![modulo(2, 1), modulo(3, 0)]).unwrap();
        assert_eq!(bounded_search(&inst, 2), None);
        assert_eq!(bounded_search(&inst, 3).unwrap().len(), 3);
        assert_eq!(bounded_search(&inst, 6), both(&inst));
    }

    #[test]
    fn zero_cap_only_checks_initials() {
        let inst = IntersectionInstance::new(vec![modulo(2, 0), modulo(3, 0)]).unwrap();
        assert_eq!(bounded_search(&inst, 0), Some(Witness { symbols: vec![] }));
        let inst = IntersectionInstance::new(vec![modulo(2, 0), modulo(3, 1)]).unwrap();
        assert_eq!(bounded_search(&inst, 0), None);
    }

    #[test]
    fn on_the_fly_counts_reachable_tuples_only() {
        // witness at length lcm - 1 = 34, so every one of the 35 tuples is seen
        let inst = IntersectionInstance::new(vec![modulo(5, 4), modulo(7, 6)]).unwrap();
        let sol = solve(&inst, &SolverConfig::default()).unwrap();
        assert_eq!(sol.witness.unwrap().len(), 34);
        assert_eq!(sol.states_explored, 35);
    }

    #[test]
    fn materialized_cap_errors() {
        let inst = IntersectionInstance::new(vec![modulo(5, 4), modulo(7, 6)]).unwrap();
        let cfg = SolverConfig {
            strategy: Strategy::Materialized,
            cap: 10,
            step_cap: None,
        };
        assert!(matches!(solve(&inst, &cfg), Err(AutomataError::SizeOverflow { .. })));
    }
}
