use std::collections::{HashMap, HashSet, VecDeque};

use super::{successors, ConfigSpace, Configuration, Input, OfflineNtm, Run, TmError, Transition};

/// Default limit on the size of a configuration graph.
pub const DEFAULT_CONFIG_CAP: u64 = 10_000_000;

/// Ground truth: does some run on `input` within `space` worktape cells
/// reach an accepting state?
pub fn oracle_accepts(machine: &OfflineNtm, input: &Input, space: u32, cap: u64) -> Result<bool, TmError> {
    Ok(oracle_run(machine, input, space, cap)?.is_some())
}

/// A shortest accepting run found by breadth-first search over the
/// configuration graph, exploring successors in canonical order.
pub fn oracle_run(machine: &OfflineNtm, input: &Input, space: u32, cap: u64) -> Result<Option<Run>, TmError> {
    if space == 0 {
        return Err(TmError::InvalidSpace);
    }
    ConfigSpace::new(machine, input, space).check_cap(cap)?;
    let start = Configuration::initial(machine, space);
    let mut parent: HashMap<Configuration, Option<(Configuration, Transition)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        if machine.is_accepting(c.state) {
            let mut configs = vec![c.clone()];
            let mut transitions = Vec::new();
            let mut at = &c;
            while let Some((prev, t)) = &parent[at] {
                configs.push(prev.clone());
                transitions.push(*t);
                at = prev;
            }
            configs.reverse();
            transitions.reverse();
            return Ok(Some(Run { configs, transitions }));
        }
        for (t, next) in successors(machine, input, &c) {
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((c.clone(), t)));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

/// Every configuration reachable from `from` in at most `steps` steps.
pub fn reachable_within(
    machine: &OfflineNtm,
    input: &Input,
    from: &Configuration,
    steps: u64,
) -> HashSet<Configuration> {
    let mut seen = HashSet::from([from.clone()]);
    let mut frontier = vec![from.clone()];
    for _ in 0..steps {
        let mut next_frontier = Vec::new();
        for c in &frontier {
            for (_, next) in successors(machine, input, c) {
                if seen.insert(next.clone()) {
                    next_frontier.push(next);
                }
            }
        }
        if next_frontier.is_empty() {
            break;
        }
        frontier = next_frontier;
    }
    seen
}
