//! Cross-checking both compilers against the breadth-first oracle on a
//! seeded random corpus of machines.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::automata::{intersect_nonempty, Strategy};
use crate::corpus::{random_input, random_machine, MachineParams};
use crate::reductions::{
    block_len, compile_kozen, compile_linear, decode_witness, CompileOptions, CompiledFamily, Construction, Fault,
    ReductionError,
};
use crate::tm::{oracle_accepts, Input, OfflineNtm, TmError, DEFAULT_CONFIG_CAP};

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub cases: usize,
    pub seed: u64,
    pub max_states: u32,
    pub max_input: u32,
    /// Worktape cells for the linear construction, drawn from `1..=max_space`.
    pub max_space: u32,
    pub force_initial_accepting: bool,
    pub allow_stay: bool,
    pub fault: Option<Fault>,
    /// Oracle configuration-space cap; larger cases are skipped.
    pub config_cap: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            cases: 50,
            seed: 0,
            max_states: 4,
            max_input: 5,
            max_space: 3,
            force_initial_accepting: false,
            allow_stay: true,
            fault: None,
            config_cap: DEFAULT_CONFIG_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Agree { accepts: bool },
    Disagree { oracle: bool, family: bool, detail: String },
    Skipped(String),
}

#[derive(Debug, Clone)]
pub struct CaseReport {
    pub machine: OfflineNtm,
    pub input: Input,
    /// Linear-construction space; the block construction uses `k = 1`.
    pub space: u32,
    pub kozen: Outcome,
    pub linear: Outcome,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub seed: u64,
    pub cases: Vec<CaseReport>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub agree: usize,
    pub disagree: usize,
    pub skipped: usize,
}

impl VerifyReport {
    pub fn tally(&self, construction: Construction) -> Tally {
        let mut t = Tally::default();
        for c in &self.cases {
            match self.outcome(c, construction) {
                Outcome::Agree { .. } => t.agree += 1,
                Outcome::Disagree { .. } => t.disagree += 1,
                Outcome::Skipped(_) => t.skipped += 1,
            }
        }
        t
    }

    fn outcome<'a>(&self, c: &'a CaseReport, construction: Construction) -> &'a Outcome {
        match construction {
            Construction::Kozen => &c.kozen,
            Construction::Linear => &c.linear,
        }
    }

    pub fn all_agree(&self) -> bool {
        [Construction::Kozen, Construction::Linear]
            .iter()
            .all(|&c| self.tally(c).disagree == 0)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}, {} cases", self.seed, self.cases.len())?;
        for construction in [Construction::Kozen, Construction::Linear] {
            let t = self.tally(construction);
            writeln!(
                f,
                "{construction}: {}/{} agree, {} disagree, {} skipped",
                t.agree,
                self.cases.len() - t.skipped,
                t.disagree,
                t.skipped
            )?;
        }
        for (i, c) in self.cases.iter().enumerate() {
            for construction in [Construction::Kozen, Construction::Linear] {
                if let Outcome::Disagree { oracle, family, detail } = self.outcome(c, construction) {
                    writeln!(
                        f,
                        "  case {i} {construction}: machine {} input {} space {}: oracle {oracle}, family {family} {detail}",
                        c.machine.name(),
                        c.input,
                        c.space
                    )?;
                }
            }
        }
        Ok(())
    }
}

/// Generates the corpus from `config.seed` and checks every case; cases
/// run in parallel but the report keeps generation order.
pub fn verify(config: &VerifyConfig) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let params = MachineParams {
        max_states: config.max_states,
        force_initial_accepting: config.force_initial_accepting,
        allow_stay: config.allow_stay,
    };
    let cases: Vec<_> = (0..config.cases)
        .map(|i| {
            let machine = random_machine(&mut rng, format!("m{i}"), params);
            let input = random_input(&mut rng, 1, config.max_input.max(1));
            let space = rng.gen_range(1..=config.max_space.max(1));
            (machine, input, space)
        })
        .collect();
    let opts = CompileOptions {
        allow_stay: true,
        fault: config.fault,
    };
    let cases = cases
        .into_par_iter()
        .map(|(machine, input, space)| {
            let kozen = check(&machine, &input, block_len(input.len()), config.config_cap, || {
                compile_kozen(&machine, &input, 1, opts)
            });
            let linear = check(&machine, &input, space, config.config_cap, || {
                compile_linear(&machine, &input, space, opts)
            });
            CaseReport {
                machine,
                input,
                space,
                kozen,
                linear,
            }
        })
        .collect();
    VerifyReport {
        seed: config.seed,
        cases,
    }
}

fn check(
    machine: &OfflineNtm,
    input: &Input,
    space: u32,
    cap: u64,
    compile: impl FnOnce() -> Result<CompiledFamily, ReductionError>,
) -> Outcome {
    let oracle = match oracle_accepts(machine, input, space, cap) {
        Ok(v) => v,
        Err(e @ TmError::StateSpaceTooLarge { .. }) => return Outcome::Skipped(e.to_string()),
        Err(e) => return Outcome::Skipped(format!("oracle: {e}")),
    };
    let family = match compile() {
        Ok(f) => f,
        Err(e) => return Outcome::Skipped(format!("compile: {e}")),
    };
    let witness = match intersect_nonempty(&family.instance, Strategy::OnTheFly) {
        Ok(w) => w,
        Err(e) => return Outcome::Skipped(format!("solve: {e}")),
    };
    let disagree = |detail: String| Outcome::Disagree {
        oracle,
        family: witness.is_some(),
        detail,
    };
    match (&witness, oracle) {
        (Some(w), true) => match decode_witness(&family, w).and_then(|run| {
            run.validate(machine, input).map_err(ReductionError::from)?;
            Ok(run)
        }) {
            Ok(_) => Outcome::Agree { accepts: true },
            Err(e) => disagree(format!("(witness does not decode: {e})")),
        },
        (None, false) => Outcome::Agree { accepts: false },
        _ => disagree(String::new()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_corpus_agrees_and_is_deterministic() {
        let cfg = VerifyConfig {
            cases: 12,
            seed: 3,
            ..Default::default()
        };
        let a = verify(&cfg);
        assert!(a.all_agree(), "{a}");
        let b = verify(&cfg);
        assert_eq!(a.to_string(), b.to_string());
        assert!(a.to_string().starts_with("seed 3, 12 cases"));
    }

    #[test]
    fn initially_accepting_machines_are_all_nonempty() {
        let cfg = VerifyConfig {
            cases: 10,
            max_states: 1,
            force_initial_accepting: true,
            ..Default::default()
        };
        let r = verify(&cfg);
        for c in &r.cases {
            assert_eq!(c.kozen, Outcome::Agree { accepts: true });
            assert_eq!(c.linear, Outcome::Agree { accepts: true });
        }
    }
}
