//! Divide-and-conquer reachability over the configuration graph.
//!
//! `b` is reachable from `a` within `t` steps iff some middle
//! configuration `m` is reachable from `a` within `ceil(t/2)` steps and
//! reaches `b` within `floor(t/2)`. The existential choice of `m` is made
//! deterministic by trying every configuration in index order.

use std::collections::HashMap;

use super::{successors, ConfigSpace, Configuration, Input, OfflineNtm, TmError};

/// Is `b` reachable from `a` in at most `t` steps?
///
/// Pure halving recursion: depth `ceil(log2 t)`, one middle configuration
/// held per level. Time is exponential in the depth, so this is for small
/// configuration graphs.
pub fn savitch_reach(
    machine: &OfflineNtm,
    input: &Input,
    a: &Configuration,
    b: &Configuration,
    t: u64,
    cap: u64,
) -> Result<bool, TmError> {
    let space = checked_space(machine, input, a, b, cap)?;
    let ctx = Recursion { machine, input, space };
    Ok(ctx.reach(a, b, t))
}

fn checked_space(
    machine: &OfflineNtm,
    input: &Input,
    a: &Configuration,
    b: &Configuration,
    cap: u64,
) -> Result<ConfigSpace, TmError> {
    if a.space() == 0 {
        return Err(TmError::InvalidSpace);
    }
    let space = ConfigSpace::new(machine, input, a.space());
    if !space.contains(a) || !space.contains(b) {
        return Err(TmError::InvalidRun("configuration outside the space bound".into()));
    }
    space.check_cap(cap)?;
    Ok(space)
}

struct Recursion<'a> {
    machine: &'a OfflineNtm,
    input: &'a Input,
    space: ConfigSpace,
}

impl Recursion<'_> {
    fn reach(&self, a: &Configuration, b: &Configuration, t: u64) -> bool {
        if a == b {
            return true;
        }
        match t {
            0 => false,
            1 => successors(self.machine, self.input, a).any(|(_, c)| c == *b),
            _ => {
                let (first, second) = (t.div_ceil(2), t / 2);
                (0..self.space.count() as u64).any(|i| {
                    let mid = self.space.config(i);
                    self.reach(a, &mid, first) && self.reach(&mid, b, second)
                })
            }
        }
    }
}

/// The same recursion with each level's relation tabulated once, so
/// all-pairs queries cost `O(N^3 / 64)` per distinct step budget instead
/// of exponential time. Memory is `O(N^2)` bits per level.
pub struct SavitchTable {
    space: ConfigSpace,
    words: usize,
    rows: Vec<u64>,
    t: u64,
}

/// Largest configuration graph [`SavitchTable`] will tabulate.
pub const TABLE_LIMIT: u64 = 1 << 15;

impl SavitchTable {
    pub fn build(machine: &OfflineNtm, input: &Input, space: u32, t: u64, cap: u64) -> Result<Self, TmError> {
        if space == 0 {
            return Err(TmError::InvalidSpace);
        }
        let cs = ConfigSpace::new(machine, input, space);
        let n = cs.check_cap(cap.min(TABLE_LIMIT))? as usize;
        let words = n.div_ceil(64);

        // R_1: zero or one step
        let mut one = vec![0u64; n * words];
        for i in 0..n {
            set(&mut one, words, i, i);
            let c = cs.config(i as u64);
            for (_, next) in successors(machine, input, &c) {
                set(&mut one, words, i, cs.index(&next) as usize);
            }
        }
        let mut memo: HashMap<u64, Vec<u64>> = HashMap::new();
        memo.insert(1, one);
        let rows = relation(t, n, words, &mut memo);
        Ok(Self {
            space: cs,
            words,
            rows,
            t,
        })
    }

    pub fn steps(&self) -> u64 {
        self.t
    }

    pub fn reach(&self, a: &Configuration, b: &Configuration) -> bool {
        let (i, j) = (self.space.index(a) as usize, self.space.index(b) as usize);
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }
}

fn set(rows: &mut [u64], words: usize, i: usize, j: usize) {
    rows[i * words + j / 64] |= 1 << (j % 64);
}

fn relation(t: u64, n: usize, words: usize, memo: &mut HashMap<u64, Vec<u64>>) -> Vec<u64> {
    if t == 0 {
        let mut id = vec![0u64; n * words];
        for i in 0..n {
            set(&mut id, words, i, i);
        }
        return id;
    }
    if let Some(r) = memo.get(&t) {
        return r.clone();
    }
    let first = relation(t.div_ceil(2), n, words, memo);
    let second = relation(t / 2, n, words, memo);
    let mut out = vec![0u64; n * words];
    for a in 0..n {
        let row = &first[a * words..(a + 1) * words];
        let acc = &mut out[a * words..(a + 1) * words];
        for (w, &bits) in row.iter().enumerate() {
            let mut bits = bits;
            while bits != 0 {
                let m = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                for (x, &y) in acc.iter_mut().zip(&second[m * words..(m + 1) * words]) {
                    *x |= y;
                }
            }
        }
    }
    memo.insert(t, out.clone());
    out
}

/// Acceptance decided through the halving recursion: is some accepting
/// configuration reachable from the initial one within `N` steps, `N`
/// being the number of configurations?
pub fn savitch_accepts(machine: &OfflineNtm, input: &Input, space: u32, cap: u64) -> Result<bool, TmError> {
    let cs = ConfigSpace::new(machine, input, space);
    let t = cs.check_cap(cap.min(TABLE_LIMIT))?;
    let table = SavitchTable::build(machine, input, space, t, cap)?;
    let start = Configuration::initial(machine, space);
    Ok(cs
        .iter()
        .any(|c| machine.is_accepting(c.state) && table.reach(&start, &c)))
}
