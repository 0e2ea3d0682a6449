//! Scaling measurements on the modular-counter family.

use std::sync::Arc;
use std::time::Instant;

use crate::automata::{solve, Alphabet, Dfa, IntersectionInstance, SolverConfig, Strategy};
use crate::formats::{BenchRow, Verdict};

/// The `count` smallest primes that are at least `from`.
pub fn primes_from(from: u32, count: usize) -> Vec<u32> {
    let is_prime = |p: u32| p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    (from.max(2)..).filter(|&p| is_prime(p)).take(count).collect()
}

/// `k` automata over `{a}`, automaton `i` counting modulo the `i`-th prime
/// at least `n` and accepting at count `p - 1`. The shortest common word
/// has length `prod p_i - 1`, so a search visits every product state.
pub fn modular_family(n: u32, k: usize) -> IntersectionInstance {
    let alphabet = Arc::new(Alphabet::from_chars("a").expect("one letter"));
    let dfas = primes_from(n, k)
        .into_iter()
        .map(|p| {
            let table = (0..p).map(|q| (q + 1) % p).collect();
            Dfa::new(format!("mod{p}"), alphabet.clone(), p, 0, [p - 1], table).expect("valid counter")
        })
        .collect();
    IntersectionInstance::new(dfas).expect("at least one automaton")
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub ns: Vec<u32>,
    pub ks: Vec<usize>,
    pub strategies: Vec<Strategy>,
    /// Product-size cap; larger cases become skipped rows for either
    /// strategy.
    pub cap: u64,
    pub repeats: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            ns: vec![64, 128, 256, 512],
            ks: vec![1, 2],
            strategies: vec![Strategy::OnTheFly],
            cap: crate::automata::DEFAULT_PRODUCT_CAP,
            repeats: 3,
        }
    }
}

/// One row per `(n, k, strategy)` in that nesting order. Timings are the
/// median over `repeats` runs.
pub fn run_bench(config: &BenchConfig) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for &n in &config.ns {
        for &k in &config.ks {
            if k == 0 {
                continue;
            }
            let instance = modular_family(n, k);
            for &strategy in &config.strategies {
                rows.push(measure(&instance, n, k, strategy, config));
            }
        }
    }
    rows
}

fn measure(instance: &IntersectionInstance, n: u32, k: usize, strategy: Strategy, config: &BenchConfig) -> BenchRow {
    let mut row = BenchRow {
        construction: "modular".into(),
        n,
        k_or_s: k as u32,
        strategy: strategy.to_string(),
        dfas: instance.len(),
        max_states: instance.max_states(),
        product_states_explored: None,
        time_ns: None,
        verdict: Verdict::Skipped,
    };
    if instance.product_size().is_none_or(|s| s > u128::from(config.cap)) {
        return row;
    }
    let solver = SolverConfig {
        strategy,
        cap: config.cap,
        step_cap: None,
    };
    let mut times = Vec::new();
    for _ in 0..config.repeats.max(1) {
        let start = Instant::now();
        let Ok(solution) = solve(instance, &solver) else {
            return row;
        };
        times.push(start.elapsed().as_nanos() as u64);
        row.product_states_explored = Some(solution.states_explored);
        row.verdict = if solution.witness.is_some() {
            Verdict::Nonempty
        } else {
            Verdict::Empty
        };
    }
    times.sort_unstable();
    row.time_ns = Some(times[times.len() / 2]);
    row
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let len = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / len;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / len;
    let cov: f64 = logs.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = logs.iter().map(|&(x, _)| (x - mx).powi(2)).sum();
    cov / var
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(primes_from(0, 4), [2, 3, 5, 7]);
        assert_eq!(primes_from(64, 2), [67, 71]);
    }

    #[test]
    fn family_witness_covers_the_product() {
        let inst = modular_family(5, 2);
        let w = crate::automata::intersect_nonempty(&inst, Strategy::OnTheFly)
            .unwrap()
            .unwrap();
        assert_eq!(w.len(), 5 * 7 - 1);
    }

    #[test]
    fn rows_and_skips() {
        let cfg = BenchConfig {
            ns: vec![8, 16],
            ks: vec![1, 2],
            strategies: vec![Strategy::OnTheFly, Strategy::Materialized],
            cap: 200,
            repeats: 3,
        };
        let rows = run_bench(&cfg);
        assert_eq!(rows.len(), 8);
        let skipped: Vec<_> = rows
            .iter()
            .filter(|r| r.verdict == Verdict::Skipped)
            .map(|r| (r.n, r.k_or_s))
            .collect();
        // 11 * 13 = 143 fits, 17 * 19 = 323 does not
        assert_eq!(skipped, [(16, 2), (16, 2)]);
        assert_eq!(rows[2].product_states_explored, Some(143));
        assert!(run_bench(&BenchConfig { ns: vec![], ..cfg }).is_empty());
    }

    #[test]
    fn slope() {
        let pts: Vec<_> = [1.0, 2.0, 4.0, 8.0].iter().map(|&x: &f64| (x, 3.0 * x * x)).collect();
        assert!((log_log_slope(&pts) - 2.0).abs() < 1e-9);
    }
}
