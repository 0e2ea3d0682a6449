//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dfaint::amplify::amplify;
use dfaint::automata::{intersect_nonempty, product, ProductOptions, Strategy, Symbol};
use dfaint::bench::{log_log_slope, run_bench, BenchConfig};
use dfaint::corpus::{self, MachineParams};
use dfaint::formats::{
    emit_dfa, emit_dfa_compact, emit_int, emit_ntm, load_family, parse_dfa, parse_int, parse_ntm, read_bench_csv,
    save_family, write_bench_csv, Metadata,
};
use dfaint::reductions::{compile_kozen, compile_linear, decode_witness, encode_run, CompileOptions, Construction};
use dfaint::tm::{reachable_within, savitch_reach, ConfigSpace, Configuration, SavitchTable};
use dfaint::verify::{verify, VerifyConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

fn words(alphabet: usize, len: usize) -> impl Iterator<Item = Vec<Symbol>> {
    (0..alphabet.pow(len as u32)).map(move |mut i| {
        let mut w = vec![Symbol(0); len];
        for slot in w.iter_mut().rev() {
            *slot = Symbol((i % alphabet) as u32);
            i /= alphabet;
        }
        w
    })
}

fn reduction_correctness() -> Outcome {
    let start = Instant::now();
    let config = VerifyConfig {
        cases: 60,
        seed: SEED,
        max_states: 4,
        max_input: 5,
        max_space: 3,
        ..Default::default()
    };
    let report = verify(&config);
    let elapsed = start.elapsed();
    let k = report.tally(Construction::Kozen);
    let l = report.tally(Construction::Linear);
    let accepted = report
        .cases
        .iter()
        .filter(|c| matches!(c.linear, dfaint::verify::Outcome::Agree { accepts: true }))
        .count();
    let pass =
        k.disagree == 0 && l.disagree == 0 && k.agree >= 50 && l.agree >= 50 && elapsed < Duration::from_secs(300);
    outcome(
        pass,
        format!(
            "{} machines (seed {SEED}): kozen {}/{} agree, linear {}/{} agree, {} skipped, {accepted} accepting, {:.1}s",
            report.cases.len(),
            k.agree,
            k.agree + k.disagree,
            l.agree,
            l.agree + l.disagree,
            k.skipped + l.skipped,
            elapsed.as_secs_f64()
        ),
    )
}

fn product_equivalence() -> Outcome {
    let mut rng = rng(1);
    let mut checked = 0u64;
    for i in 0..200 {
        let inst = corpus::random_instance(&mut rng, 3, 5, 3);
        let p = match product(&inst, ProductOptions::default()) {
            Ok(p) => p,
            Err(e) => return outcome(false, format!("instance {i}: {e}")),
        };
        for len in 0..=8 {
            for w in words(inst.alphabet().len(), len) {
                checked += 1;
                if p.accepts(&w).unwrap() != inst.accepts(&w).unwrap() {
                    return outcome(false, format!("instance {i} differs on a word of length {len}"));
                }
            }
        }
    }
    outcome(true, format!("200 instances, {checked} words of length <= 8"))
}

fn witness_contract() -> Outcome {
    let mut rng = rng(2);
    let (mut nonempty, mut enumerated) = (0, 0);
    for i in 0..300 {
        let inst = corpus::random_instance(&mut rng, 3, 5, 3);
        let a = intersect_nonempty(&inst, Strategy::OnTheFly).unwrap();
        let b = intersect_nonempty(&inst, Strategy::Materialized).unwrap();
        if a != b {
            return outcome(false, format!("instance {i}: strategies disagree"));
        }
        let Some(w) = a else { continue };
        nonempty += 1;
        if !inst.dfas().iter().all(|d| d.accepts(&w.symbols).unwrap()) {
            return outcome(false, format!("instance {i}: witness rejected by a member"));
        }
        if w.len() as u128 >= inst.product_size().unwrap() {
            return outcome(
                false,
                format!("instance {i}: witness length {} not below the product size", w.len()),
            );
        }
        let sigma = inst.alphabet().len();
        if (0..=w.len()).map(|l| sigma.pow(l as u32)).sum::<usize>() <= 1_000_000 {
            enumerated += 1;
            for len in 0..=w.len() {
                for shorter in words(sigma, len) {
                    if shorter == w.symbols {
                        break;
                    }
                    if inst.accepts(&shorter).unwrap() {
                        return outcome(false, format!("instance {i}: a smaller accepted word exists"));
                    }
                }
            }
        }
    }
    outcome(
        nonempty > 0 && enumerated == nonempty,
        format!("300 instances, {nonempty} witnesses, {enumerated} confirmed least by enumeration"),
    )
}

fn amplification() -> Outcome {
    let mut rng = rng(3);
    for i in 0..120 {
        let inst = corpus::random_instance(&mut rng, 6, 4, 2);
        let k = rng.gen_range(1..=3);
        let out = match amplify(&inst, k, u64::MAX) {
            Ok(o) => o,
            Err(e) => return outcome(false, format!("instance {i}: {e}")),
        };
        let bound = u64::from(inst.max_states()).pow(out.group_size as u32);
        if out.instance.len() != k || out.instance.dfas().iter().any(|d| u64::from(d.num_states()) > bound) {
            return outcome(false, format!("instance {i}: size bound {bound} or count {k} violated"));
        }
        let before = intersect_nonempty(&inst, Strategy::OnTheFly).unwrap().map(|w| w.len());
        let after = intersect_nonempty(&out.instance, Strategy::OnTheFly)
            .unwrap()
            .map(|w| w.len());
        if before != after {
            return outcome(false, format!("instance {i}: {before:?} before, {after:?} after"));
        }
    }
    outcome(
        true,
        "120 instances, verdicts and shortest lengths preserved, sizes within max^d",
    )
}

fn state_budget_growth() -> Outcome {
    let m = corpus::busy(3);
    let mut largest = Vec::new();
    for n in [8u32, 16, 32, 64] {
        let input = dfaint::tm::Input::new((0..n).map(|j| j % 2 == 1).collect());
        let f = compile_linear(&m, &input, n, CompileOptions::default()).unwrap();
        // groups 2-4: everything but the control automaton
        largest.push(f.instance.dfas()[1..].iter().map(|d| d.num_states()).max().unwrap());
    }
    let ratio = f64::from(largest[3]) / f64::from(largest[0]);
    outcome(
        ratio <= 3.0,
        format!("largest non-control automaton at n = 8, 16, 32, 64: {largest:?}, ratio {ratio:.2}"),
    )
}

fn savitch_equivalence() -> Outcome {
    let mut rng = rng(4);
    let params = MachineParams {
        max_states: 3,
        ..Default::default()
    };
    let (mut pairs, mut table_pairs) = (0u64, 0u64);
    for i in 0..10 {
        let m = corpus::random_machine(&mut rng, format!("micro{i}"), params);
        let input = corpus::random_input(&mut rng, 1, 1);
        let space = ConfigSpace::new(&m, &input, 1);
        let n = space.count() as u64;
        let configs: Vec<Configuration> = space.iter().collect();
        for t in 0..=n {
            let table = SavitchTable::build(&m, &input, 1, t, 1 << 20).unwrap();
            for a in &configs {
                let reach = reachable_within(&m, &input, a, t);
                for b in &configs {
                    let expected = reach.contains(b);
                    table_pairs += 1;
                    if table.reach(a, b) != expected {
                        return outcome(false, format!("{}: tabulated t={t} differs", m.name()));
                    }
                    if [0, 1, 2, 3, 5, 8].contains(&t) {
                        pairs += 1;
                        if savitch_reach(&m, &input, a, b, t, 1 << 20).unwrap() != expected {
                            return outcome(false, format!("{}: recursion t={t} differs", m.name()));
                        }
                    }
                }
            }
        }
    }
    outcome(
        true,
        format!(
            "10 machines, all configuration pairs: recursion at t in {{0,1,2,3,5,8}} ({pairs} checks), \
             tabulated recursion at every t <= N ({table_pairs} checks)"
        ),
    )
}

fn solver_scaling() -> Outcome {
    let start = Instant::now();
    let config = BenchConfig {
        ns: vec![64, 128, 256, 512],
        ks: vec![2],
        strategies: vec![Strategy::OnTheFly],
        repeats: 1,
        ..Default::default()
    };
    let rows = run_bench(&config);
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| Some((f64::from(r.n), r.product_states_explored? as f64)))
        .collect();
    let elapsed = start.elapsed();
    if points.len() != 4 {
        return outcome(false, "some rows were skipped");
    }
    let slope = log_log_slope(&points);
    let explored: Vec<u64> = rows.iter().filter_map(|r| r.product_states_explored).collect();
    outcome(
        (1.8..=2.2).contains(&slope) && elapsed < Duration::from_secs(60),
        format!(
            "k = 2, states explored {explored:?}, slope {slope:.3}, {:.2}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn round_trips() -> Outcome {
    let mut rng = rng(5);
    let mut count = 0;
    for i in 0..100 {
        let inst = corpus::random_instance(&mut rng, 1, 6, 3);
        let d = &inst.dfas()[0];
        if parse_dfa(&emit_dfa(d), true).ok().as_ref() != Some(d)
            || parse_dfa(&emit_dfa_compact(d), false).ok().as_ref() != Some(d)
        {
            return outcome(false, format!("dfa {i}"));
        }
        let m = corpus::random_machine(&mut rng, format!("m{i}"), MachineParams::default());
        if parse_ntm(&emit_ntm(&m)).ok().as_ref() != Some(&m) {
            return outcome(false, format!("ntm {i}"));
        }
        count += 2;
    }
    let paths = ["a.dfa", "sub dir/b.dfa", "c.dfa"];
    if parse_int(&emit_int(&paths)).unwrap() != paths {
        return outcome(false, "int");
    }

    let rows = run_bench(&BenchConfig {
        ns: vec![8, 16],
        ks: vec![1, 2],
        repeats: 1,
        ..Default::default()
    });
    let mut buf = Vec::new();
    write_bench_csv(&rows, &mut buf).unwrap();
    if read_bench_csv(buf.as_slice()).unwrap() != rows {
        return outcome(false, "benchmark csv");
    }

    let dir = tempfile::tempdir().unwrap();
    let mut traces = 0;
    for i in 0..30 {
        let m = corpus::random_machine(&mut rng, format!("t{i}"), MachineParams::default());
        let input = corpus::random_input(&mut rng, 1, 4);
        let families = [
            compile_kozen(&m, &input, 1, CompileOptions::default()).unwrap(),
            compile_linear(&m, &input, rng.gen_range(1..=3), CompileOptions::default()).unwrap(),
        ];
        for (j, f) in families.into_iter().enumerate() {
            let path = dir.path().join(format!("f{i}_{j}.int"));
            save_family(&path, &f, j == 0).unwrap();
            let back = load_family(&path, false).unwrap();
            let meta = std::fs::read_to_string(Metadata::sidecar_path(&path)).unwrap();
            if back.instance != f.instance
                || back.provenance != f.provenance
                || Metadata::parse(&meta).unwrap().emit() != meta
            {
                return outcome(false, format!("family {i}/{j}"));
            }
            if let Some(w) = intersect_nonempty(&f.instance, Strategy::OnTheFly).unwrap() {
                let run = decode_witness(&f, &w).unwrap();
                if encode_run(&f, &run) != w.symbols {
                    return outcome(false, format!("trace {i}/{j}"));
                }
                traces += 1;
            }
        }
    }
    outcome(
        traces > 0,
        format!("{count} dfa/ntm files, int, csv, 60 saved families with sidecars, {traces} decoded traces re-encoded"),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("reduction correctness", reduction_correctness),
        ("product-language equivalence", product_equivalence),
        ("witness contract", witness_contract),
        ("amplification", amplification),
        ("state-budget growth", state_budget_growth),
        ("savitch/bfs equivalence", savitch_equivalence),
        ("solver scaling shape", solver_scaling),
        ("round trips", round_trips),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!("{} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
