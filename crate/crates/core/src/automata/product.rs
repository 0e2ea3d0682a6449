use std::collections::HashMap;
use std::collections::VecDeque;

use super::{AutomataError, Dfa, IntersectionInstance, StateId};

/// Default limit on materialized product size.
pub const DEFAULT_PRODUCT_CAP: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductOptions {
    pub cap: u64,
    /// Keep only states reachable from the initial tuple, renumbered in
    /// breadth-first discovery order.
    pub prune_unreachable: bool,
}

impl Default for ProductOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_PRODUCT_CAP,
            prune_unreachable: false,
        }
    }
}

/// Cartesian product of all members.
///
/// Without pruning, tuple `(q_1, .., q_k)` gets the mixed-radix id with
/// `q_1` as the most significant digit.
pub fn product(instance: &IntersectionInstance, opts: ProductOptions) -> Result<Dfa, AutomataError> {
    let size = instance.product_size();
    match size {
        Some(s) if s <= u128::from(opts.cap) => {}
        _ => {
            return Err(AutomataError::SizeOverflow {
                states: size.map_or_else(|| "more than 2^128".to_string(), |s| s.to_string()),
                cap: opts.cap,
            })
        }
    }
    let name = instance.dfas().iter().map(Dfa::name).collect::<Vec<_>>().join("*");
    if opts.prune_unreachable {
        reachable_product(instance, name)
    } else {
        full_product(instance, name)
    }
}

fn full_product(instance: &IntersectionInstance, name: String) -> Result<Dfa, AutomataError> {
    let dfas = instance.dfas();
    let sigma = instance.alphabet().len();
    let radix: Vec<u64> = dfas.iter().map(|d| u64::from(d.num_states())).collect();
    let total: u64 = radix.iter().product();
    // weight of each digit; the first automaton is most significant
    let mut weight = vec![1u64; radix.len()];
    for i in (0..radix.len().saturating_sub(1)).rev() {
        weight[i] = weight[i + 1] * radix[i + 1];
    }
    let encode = |digits: &[StateId]| -> StateId {
        digits.iter().zip(&weight).map(|(&d, &w)| u64::from(d) * w).sum::<u64>() as StateId
    };

    let mut table = Vec::with_capacity(total as usize * sigma);
    let mut finals = Vec::new();
    let mut digits = vec![0 as StateId; dfas.len()];
    let mut next = vec![0 as StateId; dfas.len()];
    for id in 0..total {
        if digits.iter().zip(dfas).all(|(&q, d)| d.is_final(q)) {
            finals.push(id as StateId);
        }
        for s in instance.alphabet().symbols() {
            for ((n, &q), d) in next.iter_mut().zip(&digits).zip(dfas) {
                *n = d.next(q, s);
            }
            table.push(encode(&next));
        }
        // increment the mixed-radix counter
        for i in (0..digits.len()).rev() {
            digits[i] += 1;
            if u64::from(digits[i]) < radix[i] {
                break;
            }
            digits[i] = 0;
        }
    }
    let initial: Vec<StateId> = dfas.iter().map(Dfa::initial).collect();
    Dfa::new(
        name,
        instance.alphabet().clone(),
        total as u32,
        encode(&initial),
        finals,
        table,
    )
}

fn reachable_product(instance: &IntersectionInstance, name: String) -> Result<Dfa, AutomataError> {
    let dfas = instance.dfas();
    let initial: Vec<StateId> = dfas.iter().map(Dfa::initial).collect();
    let mut ids: HashMap<Vec<StateId>, StateId> = HashMap::new();
    let mut order: Vec<Vec<StateId>> = Vec::new();
    let mut queue = VecDeque::new();
    ids.insert(initial.clone(), 0);
    order.push(initial);
    queue.push_back(0usize);
    let mut table = Vec::new();
    while let Some(i) = queue.pop_front() {
        for s in instance.alphabet().symbols() {
            let succ: Vec<StateId> = order[i].iter().zip(dfas).map(|(&q, d)| d.next(q, s)).collect();
            let next_id = ids.len() as StateId;
            let id = *ids.entry(succ.clone()).or_insert_with(|| {
                order.push(succ);
                queue.push_back(next_id as usize);
                next_id
            });
            table.push(id);
        }
    }
    let finals = order
        .iter()
        .enumerate()
        .filter(|(_, t)| t.iter().zip(dfas).all(|(&q, d)| d.is_final(q)))
        .map(|(i, _)| i as StateId);
    Dfa::new(name, instance.alphabet().clone(), order.len() as u32, 0, finals, table)
}
