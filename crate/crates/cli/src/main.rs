use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use dfaint::amplify::amplify;
use dfaint::automata::{solve, SolverConfig, Strategy, DEFAULT_PRODUCT_CAP};
use dfaint::bench::{run_bench, BenchConfig};
use dfaint::formats::{self, Metadata};
use dfaint::reductions::{compile_kozen, compile_linear, decode_witness, CompileOptions, CompiledFamily, Fault};
use dfaint::tm::{oracle_run, savitch_accepts, Input, OfflineNtm, Run, DEFAULT_CONFIG_CAP};
use dfaint::verify::{verify, VerifyConfig};

/// DFA intersection non-emptiness: solve instances, compile space-bounded
/// machines into instances, and cross-check the two.
#[derive(Parser)]
#[command(name = "dfaint", version)]
struct Cli {
    /// Reject `.dfa` files with missing transitions instead of adding a dead state.
    #[arg(long, global = true)]
    strict: bool,
    /// Seed for generated corpora.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Size cap: product states for solving and benchmarks, configurations
    /// for simulation and verification.
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Output path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether an `.int` instance has a common word.
    Solve {
        instance: PathBuf,
        #[arg(long, default_value = "on-the-fly")]
        strategy: Strategy,
        /// Only look for words of at most this length.
        #[arg(long)]
        step_cap: Option<u64>,
    },
    /// Compile a machine and input into k + 1 automata over block-stored worktapes.
    CompileKozen {
        #[command(flatten)]
        target: Target,
        #[arg(short, long)]
        k: u32,
    },
    /// Compile a machine and input into automata with explicit head positions.
    CompileLinear {
        #[command(flatten)]
        target: Target,
        /// Worktape cells.
        #[arg(short = 'S', long)]
        space: u32,
    },
    /// Collapse an instance to k automata by grouped products.
    Amplify {
        instance: PathBuf,
        #[arg(short, long)]
        k: usize,
    },
    /// Breadth-first search of a machine's configuration graph.
    Simulate {
        #[command(flatten)]
        run: MachineRun,
    },
    /// Divide-and-conquer reachability from the initial configuration.
    Savitch {
        #[command(flatten)]
        run: MachineRun,
    },
    /// Check both compilers against the simulator on random machines.
    Verify {
        #[arg(long, default_value_t = 50)]
        cases: usize,
        #[arg(long, default_value_t = 4)]
        max_states: u32,
        #[arg(long, default_value_t = 5)]
        max_input: u32,
        #[arg(long, default_value_t = 3)]
        max_space: u32,
        /// Make state 0 accepting in every generated machine.
        #[arg(long)]
        initial_accepting: bool,
        /// Deliberately break the compilers.
        #[arg(long)]
        fault: Option<FaultArg>,
    },
    /// Time the solver on the modular-counter family and write CSV.
    Bench {
        /// Smallest n; n doubles up to --n-max.
        #[arg(long, default_value_t = 64)]
        n_min: u32,
        #[arg(long, default_value_t = 512)]
        n_max: u32,
        #[arg(long, default_value_t = 1)]
        k_min: usize,
        #[arg(long, default_value_t = 2)]
        k_max: usize,
        #[arg(long, value_delimiter = ',', default_value = "on-the-fly")]
        strategy: Vec<Strategy>,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
}

#[derive(Args)]
struct Target {
    machine: PathBuf,
    #[arg(short, long)]
    input: Input,
    /// Write transitions into the dead state implicitly.
    #[arg(long)]
    compact: bool,
    /// Reject machines that use Stay moves.
    #[arg(long)]
    no_stay: bool,
}

#[derive(Args)]
struct MachineRun {
    machine: PathBuf,
    #[arg(short, long)]
    input: Input,
    #[arg(short = 'S', long)]
    space: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    SkipInput,
    SkipWorktape,
}

impl From<FaultArg> for Fault {
    fn from(f: FaultArg) -> Self {
        match f {
            FaultArg::SkipInput => Fault::SkipInputCheck,
            FaultArg::SkipWorktape => Fault::SkipWorktapeCheck,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Solve {
            instance,
            strategy,
            step_cap,
        } => cmd_solve(&cli, instance, *strategy, *step_cap),
        Command::CompileKozen { target, k } => {
            let (machine, opts) = load_target(target)?;
            let family = compile_kozen(&machine, &target.input, *k, opts)?;
            write_family(&cli, &family, target.compact)
        }
        Command::CompileLinear { target, space } => {
            let (machine, opts) = load_target(target)?;
            let family = compile_linear(&machine, &target.input, *space, opts)?;
            write_family(&cli, &family, target.compact)
        }
        Command::Amplify { instance, k } => {
            let out = require_out(&cli)?;
            let inst = formats::load_instance(instance, cli.strict)?;
            let amplified = amplify(&inst, *k, cli.cap.unwrap_or(DEFAULT_PRODUCT_CAP))?;
            formats::save_instance(out, &amplified.instance, false)?;
            println!(
                "{} automata -> {} (group size {}, padding {})",
                inst.len(),
                amplified.instance.len(),
                amplified.group_size,
                amplified.padding
            );
            for d in amplified.instance.dfas() {
                println!("  {}: {} states", d.name(), d.num_states());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate { run } => {
            let machine = formats::load_ntm(&run.machine)?;
            let cap = cli.cap.unwrap_or(DEFAULT_CONFIG_CAP);
            match oracle_run(&machine, &run.input, run.space, cap)? {
                Some(r) => {
                    println!("ACCEPT in {} steps", r.steps());
                    print_run(&r);
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("REJECT");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Savitch { run } => {
            let machine = formats::load_ntm(&run.machine)?;
            let cap = cli.cap.unwrap_or(DEFAULT_CONFIG_CAP);
            if savitch_accepts(&machine, &run.input, run.space, cap)? {
                println!("ACCEPT");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("REJECT");
                Ok(ExitCode::from(1))
            }
        }
        Command::Verify {
            cases,
            max_states,
            max_input,
            max_space,
            initial_accepting,
            fault,
        } => {
            let config = VerifyConfig {
                cases: *cases,
                seed: cli.seed,
                max_states: *max_states,
                max_input: *max_input,
                max_space: *max_space,
                force_initial_accepting: *initial_accepting,
                allow_stay: true,
                fault: fault.map(Fault::from),
                config_cap: cli.cap.unwrap_or(DEFAULT_CONFIG_CAP),
            };
            let report = verify(&config);
            let text = report.to_string();
            print!("{text}");
            if let Some(out) = &cli.out {
                std::fs::write(out, &text).with_context(|| format!("writing {}", out.display()))?;
            }
            Ok(if report.all_agree() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Bench {
            n_min,
            n_max,
            k_min,
            k_max,
            strategy,
            repeats,
        } => {
            let ns = std::iter::successors(Some(*n_min), |&n| n.checked_mul(2))
                .take_while(|&n| n <= *n_max && n > 0)
                .collect();
            let config = BenchConfig {
                ns,
                ks: (*k_min..=*k_max).collect(),
                strategies: strategy.clone(),
                cap: cli.cap.unwrap_or(DEFAULT_PRODUCT_CAP),
                repeats: *repeats,
            };
            let rows = run_bench(&config);
            match &cli.out {
                Some(p) => {
                    let f = File::create(p).with_context(|| format!("creating {}", p.display()))?;
                    formats::write_bench_csv(&rows, f)?;
                }
                None => formats::write_bench_csv(&rows, io::stdout().lock())?,
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cmd_solve(cli: &Cli, path: &Path, strategy: Strategy, step_cap: Option<u64>) -> Result<ExitCode> {
    let family: Option<CompiledFamily> = if Metadata::sidecar_path(path).exists() {
        Some(formats::load_family(path, cli.strict)?)
    } else {
        None
    };
    let instance = match &family {
        Some(f) => f.instance.clone(),
        None => formats::load_instance(path, cli.strict)?,
    };
    let config = SolverConfig {
        strategy,
        cap: cli.cap.unwrap_or(DEFAULT_PRODUCT_CAP),
        step_cap,
    };
    let solution = solve(&instance, &config)?;
    let Some(witness) = solution.witness else {
        match step_cap {
            Some(c) => println!("EMPTY (no word of length <= {c})"),
            None => println!("EMPTY"),
        }
        println!("states explored: {}", solution.states_explored);
        return Ok(ExitCode::from(1));
    };
    println!("NONEMPTY");
    println!("witness: {}", witness.render(instance.alphabet()));
    println!("length: {}", witness.len());
    println!("states explored: {}", solution.states_explored);
    if let Some(f) = &family {
        let run = decode_witness(f, &witness).context("decoding the witness")?;
        println!(
            "run of {} on {} in {} cells, {} steps:",
            f.machine.name(),
            f.input,
            f.space(),
            run.steps()
        );
        print_run(&run);
    }
    Ok(ExitCode::SUCCESS)
}

fn load_target(target: &Target) -> Result<(OfflineNtm, CompileOptions)> {
    let machine = formats::load_ntm(&target.machine)?;
    let opts = CompileOptions {
        allow_stay: !target.no_stay,
        fault: None,
    };
    Ok((machine, opts))
}

/// The `--out` path, with its directory created.
fn require_out(cli: &Cli) -> Result<&Path> {
    let Some(p) = &cli.out else {
        bail!("--out <path.int> is required")
    };
    if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    Ok(p)
}

fn write_family(cli: &Cli, family: &CompiledFamily, compact: bool) -> Result<ExitCode> {
    let out = require_out(cli)?;
    formats::save_family(out, family, compact)?;
    let states: u64 = family.instance.total_states();
    let mut stdout = io::stdout().lock();
    writeln!(
        stdout,
        "{} automata, {} states in total, largest {}, space {} cells, tuple layout {}",
        family.instance.len(),
        states,
        family.instance.max_states(),
        family.space(),
        family.encoding
    )?;
    writeln!(stdout, "wrote {}", out.display())?;
    Ok(ExitCode::SUCCESS)
}

fn print_run(run: &Run) {
    for (i, c) in run.configs.iter().enumerate() {
        println!("  {i:>4}  {c}");
    }
}
