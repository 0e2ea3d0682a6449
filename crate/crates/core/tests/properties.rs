use dfaint::amplify::amplify;
use dfaint::automata::{
    bounded_search, intersect_nonempty, product, solve, IntersectionInstance, ProductOptions, SolverConfig, Strategy,
    Symbol, DEFAULT_PRODUCT_CAP,
};
use dfaint::corpus::{self, MachineParams};
use dfaint::formats::{emit_dfa, emit_dfa_compact, emit_ntm, parse_dfa, parse_ntm};
use dfaint::tm::{reachable_within, savitch_reach, ConfigSpace, Configuration, SavitchTable};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64, max_dfas: usize, max_states: u32, max_alphabet: usize) -> IntersectionInstance {
    corpus::random_instance(&mut ChaCha8Rng::seed_from_u64(seed), max_dfas, max_states, max_alphabet)
}

/// Every word over `0..alphabet` of length `len`, in length-lexicographic
/// order.
fn words(alphabet: usize, len: usize) -> impl Iterator<Item = Vec<Symbol>> {
    let total = alphabet.pow(len as u32);
    (0..total).map(move |mut i| {
        let mut w = vec![Symbol(0); len];
        for slot in w.iter_mut().rev() {
            *slot = Symbol((i % alphabet) as u32);
            i /= alphabet;
        }
        w
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_language_is_the_intersection(seed in any::<u64>(), prune in any::<bool>()) {
        let inst = instance(seed, 3, 5, 3);
        let p = product(&inst, ProductOptions { cap: DEFAULT_PRODUCT_CAP, prune_unreachable: prune }).unwrap();
        for len in 0..=6 {
            for w in words(inst.alphabet().len(), len) {
                prop_assert_eq!(p.accepts(&w).unwrap(), inst.accepts(&w).unwrap());
            }
        }
    }

    #[test]
    fn strategies_agree_and_witnesses_are_least(seed in any::<u64>()) {
        let inst = instance(seed, 3, 4, 2);
        let a = intersect_nonempty(&inst, Strategy::Materialized).unwrap();
        let b = intersect_nonempty(&inst, Strategy::OnTheFly).unwrap();
        prop_assert_eq!(&a, &b);
        if let Some(w) = a {
            prop_assert!(inst.accepts(&w.symbols).unwrap());
            prop_assert!((w.len() as u128) < inst.product_size().unwrap());
            // nothing shorter, nothing smaller of the same length
            for len in 0..=w.len() {
                for shorter in words(inst.alphabet().len(), len) {
                    if shorter == w.symbols {
                        break;
                    }
                    prop_assert!(!inst.accepts(&shorter).unwrap());
                }
            }
        }
    }

    #[test]
    fn bounded_search_is_monotone(seed in any::<u64>()) {
        let inst = instance(seed, 3, 4, 2);
        let full = intersect_nonempty(&inst, Strategy::OnTheFly).unwrap();
        let bound = inst.product_size().unwrap() as u64;
        let mut found = None;
        for cap in 0..=bound {
            let w = bounded_search(&inst, cap);
            if let Some(prev) = &found {
                prop_assert_eq!(w.as_ref(), Some(prev));
            }
            if w.is_some() {
                found = w;
            }
        }
        prop_assert_eq!(found, full);
    }

    #[test]
    fn step_cap_zero_checks_initials(seed in any::<u64>()) {
        let inst = instance(seed, 3, 3, 2);
        let all_initial_final = inst.dfas().iter().all(|d| d.is_final(d.initial()));
        let cfg = SolverConfig { strategy: Strategy::OnTheFly, cap: DEFAULT_PRODUCT_CAP, step_cap: Some(0) };
        prop_assert_eq!(solve(&inst, &cfg).unwrap().witness.is_some(), all_initial_final);
    }

    #[test]
    fn amplify_preserves_verdict_and_length(seed in any::<u64>(), k in 1usize..4) {
        let inst = instance(seed, 6, 4, 2);
        let out = amplify(&inst, k, DEFAULT_PRODUCT_CAP).unwrap();
        prop_assert_eq!(out.instance.len(), k);
        let bound = u64::from(inst.max_states()).pow(out.group_size as u32);
        prop_assert!(out.instance.dfas().iter().all(|d| u64::from(d.num_states()) <= bound));
        let before = intersect_nonempty(&inst, Strategy::OnTheFly).unwrap().map(|w| w.len());
        let after = intersect_nonempty(&out.instance, Strategy::OnTheFly).unwrap().map(|w| w.len());
        prop_assert_eq!(before, after);
    }

    #[test]
    fn dfa_text_round_trips(seed in any::<u64>()) {
        let inst = instance(seed, 1, 6, 3);
        let d = &inst.dfas()[0];
        prop_assert_eq!(&parse_dfa(&emit_dfa(d), true).unwrap(), d);
        prop_assert_eq!(&parse_dfa(&emit_dfa_compact(d), false).unwrap(), d);
        prop_assert_eq!(emit_dfa(&parse_dfa(&emit_dfa(d), true).unwrap()), emit_dfa(d));
    }

    #[test]
    fn ntm_text_round_trips(seed in any::<u64>()) {
        let m = corpus::random_machine(&mut ChaCha8Rng::seed_from_u64(seed), "m", MachineParams::default());
        let text = emit_ntm(&m);
        prop_assert_eq!(&parse_ntm(&text).unwrap(), &m);
        prop_assert_eq!(emit_ntm(&parse_ntm(&text).unwrap()), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn savitch_matches_bounded_bfs(seed in any::<u64>(), t in 0u64..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = MachineParams { max_states: 2, ..Default::default() };
        let m = corpus::random_machine(&mut rng, "m", params);
        let input = corpus::random_input(&mut rng, 1, 1);
        let space = ConfigSpace::new(&m, &input, 1);
        let table = SavitchTable::build(&m, &input, 1, t, 1 << 20).unwrap();
        let configs: Vec<Configuration> = space.iter().collect();
        for a in &configs {
            let reach = reachable_within(&m, &input, a, t);
            for b in &configs {
                let expected = reach.contains(b);
                prop_assert_eq!(table.reach(a, b), expected);
                if t <= 3 {
                    prop_assert_eq!(savitch_reach(&m, &input, a, b, t, 1 << 20).unwrap(), expected);
                }
            }
        }
    }
}
