//! `epicausal`: model checking, translation and batch property checks for
//! epistemic causal models and causal teams.

mod error;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use epicausal::generate::{compliant_valuations, GeneratorConfig};
use epicausal::harness::{
    generate_formula_text, generate_model_text, run_equiv, EquivConfig, Which,
};
use epicausal::modelfile::{load_model, parse_functions, read_file};
use epicausal::pakc::{causes_formula, parse, DEFAULT_CAP};
use epicausal::reduction::{reduce, tr1, tr2};
use epicausal::semantics::{eval_at, eval_traced, valid_on_model};
use epicausal::team::{
    check_global_equivalence, check_local_equivalence, e_translate, parse_cod, team_eval,
    tr_star_translate, tr_translate, DEFAULT_OR_CAP,
};
use epicausal::{EpistemicCausalModel, InterventionAssignment, PointedModel, Signature, Team};

use error::CliError;

#[derive(Parser)]
#[command(name = "epicausal", version, about = "Epistemic causal model checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Tr1,
    Tr2,
    Reduce,
    CodE,
    CodTr,
    CodTrstar,
}

#[derive(Clone, Copy, ValueEnum)]
enum Language {
    Pakc,
    Cod,
}

#[derive(Clone, Copy, ValueEnum)]
enum Compare {
    Global,
    Local,
}

#[derive(clap::Args)]
struct Caps {
    /// Largest expansion of a derived formula or translation.
    #[arg(long, env = "EPICAUSAL_CAP", default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Largest team on which a split disjunction is evaluated.
    #[arg(long, env = "EPICAUSAL_OR_CAP", default_value_t = DEFAULT_OR_CAP)]
    or_cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula at the actual valuation of a model file.
    Check {
        model: PathBuf,
        formula: String,
        /// Check validity at every member of the team instead.
        #[arg(long)]
        all_points: bool,
        /// Print the evaluation tree.
        #[arg(long)]
        trace: bool,
    },
    /// Print the team of a model after an intervention such as "B:=1, C:=0".
    Intervene { model: PathBuf, assignment: String },
    /// Translate a formula.
    Translate {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Model file supplying the signature.
        #[arg(long)]
        model: PathBuf,
        formula: String,
        #[command(flatten)]
        caps: Caps,
    },
    /// Print direct causal dependencies and a topological order.
    Deps {
        model: PathBuf,
        /// Cross-check every pair against the causal-effect formula.
        #[arg(long)]
        verify_syntactic: bool,
        #[command(flatten)]
        caps: Caps,
    },
    /// Evaluate a causal team formula on the team of a model file.
    TeamCheck {
        file: PathBuf,
        formula: String,
        /// Accept an empty team.
        #[arg(long)]
        allow_empty: bool,
        /// Also evaluate a translation on the corresponding epistemic model.
        #[arg(long, value_enum)]
        compare: Option<Compare>,
        #[command(flatten)]
        caps: Caps,
    },
    /// Run a seeded batch of property checks.
    Equiv {
        #[arg(long)]
        which: Which,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        max_vars: Option<usize>,
        #[arg(long)]
        max_range: Option<usize>,
        #[arg(long)]
        max_team: Option<usize>,
        #[arg(long)]
        depth: Option<usize>,
        /// Axiom instances per schema and model.
        #[arg(long)]
        instances: Option<usize>,
        #[command(flatten)]
        caps: Caps,
    },
    /// Print a random model file, or a random formula over a model.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_vars: usize,
        #[arg(long, default_value_t = 2)]
        max_range: usize,
        #[arg(long, default_value_t = 4)]
        max_team: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Print a formula of this language instead of a model.
        #[arg(long, value_enum)]
        formula: Option<Language>,
        /// Signature for `--formula`.
        #[arg(long, requires = "formula")]
        model: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Check {
            model,
            formula,
            all_points,
            trace,
        } => check(&model, &formula, all_points, trace),
        Command::Intervene { model, assignment } => intervene(&model, &assignment),
        Command::Translate {
            mode,
            model,
            formula,
            caps,
        } => translate(mode, &model, &formula, &caps),
        Command::Deps {
            model,
            verify_syntactic,
            caps,
        } => deps(&model, verify_syntactic, &caps),
        Command::TeamCheck {
            file,
            formula,
            allow_empty,
            compare,
            caps,
        } => team_check(&file, &formula, allow_empty, compare, &caps),
        Command::Equiv {
            which,
            seed,
            count,
            jobs,
            max_vars,
            max_range,
            max_team,
            depth,
            instances,
            caps,
        } => {
            let mut cfg = EquivConfig::new(which);
            cfg.seed = seed;
            cfg.jobs = jobs;
            cfg.cap = caps.cap;
            cfg.or_cap = caps.or_cap;
            let g = &mut cfg.generator;
            for (slot, value) in [
                (&mut cfg.count, count),
                (&mut g.max_vars, max_vars),
                (&mut g.max_range, max_range),
                (&mut g.max_team, max_team),
                (&mut g.max_depth, depth),
                (&mut cfg.instances, instances),
            ] {
                if let Some(v) = value {
                    if v == 0 {
                        return Err(CliError::Usage("bounds must be positive".into()));
                    }
                    *slot = v;
                }
            }
            let summary = run_equiv(&cfg);
            print!("{summary}");
            Ok(if summary.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(error::FAILED_CHECK)
            })
        }
        Command::Gen {
            seed,
            max_vars,
            max_range,
            max_team,
            depth,
            formula,
            model,
        } => {
            if max_vars == 0 || max_range == 0 || max_team == 0 {
                return Err(CliError::Usage("bounds must be positive".into()));
            }
            let g = GeneratorConfig {
                max_vars,
                max_range,
                max_team,
                max_depth: depth,
                ..GeneratorConfig::default()
            };
            match formula {
                None => println!("{}", generate_model_text(seed, &g)),
                Some(lang) => {
                    let path =
                        model.ok_or_else(|| CliError::Usage("--formula needs --model".into()))?;
                    let functions = parse_functions(&read_file(&path)?)?;
                    let cod = matches!(lang, Language::Cod);
                    println!(
                        "{}",
                        generate_formula_text(seed, functions.signature(), &g, cod)
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_bool(b: bool) {
    println!("{b}");
}

fn check(path: &Path, text: &str, all_points: bool, trace: bool) -> Result<ExitCode, CliError> {
    let doc = load_model(path)?;
    let model = doc.epistemic_model()?;
    let f = parse(text, model.signature())?;
    let sig = model.signature();
    let pointings: Vec<PointedModel> = if all_points {
        PointedModel::pointings(&model).collect()
    } else {
        vec![doc.pointed_model()?]
    };
    if trace {
        for p in &pointings {
            if all_points {
                println!("at {}", p.actual().display(sig));
            }
            let (_, lines) = eval_traced(p, &f)?;
            for line in lines {
                println!("{line}");
            }
        }
    }
    let verdict = if all_points {
        valid_on_model(&model, &f)?
    } else {
        eval_at(&model, pointings[0].actual(), &f)
    };
    print_bool(verdict);
    Ok(ExitCode::SUCCESS)
}

fn parse_assignment(sig: &Signature, text: &str) -> Result<InterventionAssignment, CliError> {
    let text = text.trim().trim_start_matches('[').trim_end_matches(']');
    let mut pairs = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once(":=")
            .ok_or_else(|| CliError::Formula(format!("expected `X:=v`, found `{part}`")))?;
        pairs.push((name.trim(), value.trim()));
    }
    InterventionAssignment::from_names(sig, pairs).map_err(|e| CliError::Formula(e.to_string()))
}

fn intervene(path: &Path, text: &str) -> Result<ExitCode, CliError> {
    let model = load_model(path)?.epistemic_model()?;
    let a = parse_assignment(model.signature(), text)?;
    let after = model.intervene_team(&a)?;
    println!("{}", after.team().display(model.signature()));
    Ok(ExitCode::SUCCESS)
}

fn translate(mode: Mode, path: &Path, text: &str, caps: &Caps) -> Result<ExitCode, CliError> {
    let functions = parse_functions(&read_file(path)?)?;
    let sig = functions.signature();
    let out = match mode {
        Mode::Tr1 | Mode::Tr2 | Mode::Reduce => {
            let f = parse(text, sig)?;
            match mode {
                Mode::Tr1 => tr1(&f),
                Mode::Tr2 => tr2(&f)?,
                _ => reduce(&f),
            }
        }
        Mode::CodE | Mode::CodTr | Mode::CodTrstar => {
            let f = parse_cod(text, sig)?;
            match mode {
                Mode::CodE => {
                    f.validate(sig)?;
                    e_translate(&f, sig)?
                }
                Mode::CodTr => tr_translate(&f, sig, caps.cap)?,
                _ => tr_star_translate(&f, sig, caps.cap)?,
            }
        }
    };
    println!("{}", out.display(sig));
    Ok(ExitCode::SUCCESS)
}

fn deps(path: &Path, verify: bool, caps: &Caps) -> Result<ExitCode, CliError> {
    let functions = parse_functions(&read_file(path)?)?;
    let sig = functions.signature();
    let edges = functions.edges();
    if edges.is_empty() {
        println!("edges: none");
    } else {
        println!("edges:");
        for (x, v) in &edges {
            println!("  {} -> {}", sig.name(*x), sig.name(*v));
        }
    }
    let order = functions
        .topological_order()
        .map_err(|_| CliError::from(functions.non_recursive_error()))?;
    let names: Vec<&str> = order.iter().map(|&v| sig.name(v)).collect();
    println!("order: {}", names.join(", "));
    if !verify {
        return Ok(ExitCode::SUCCESS);
    }
    let model = EpistemicCausalModel::new(
        functions.clone(),
        Team::new(compliant_valuations(&functions)),
    )?;
    let mut agree = true;
    for x in sig.vars() {
        for z in sig.vars().filter(|&z| z != x) {
            let f = causes_formula(sig, x, z, caps.cap)?;
            let syntactic = valid_on_model(&model, &f)?;
            let parent = sig.is_endogenous(z) && functions.parents(z)?.contains(&x);
            agree &= syntactic == parent;
            println!(
                "  {} ~> {}: formula {syntactic}, parent {parent}",
                sig.name(x),
                sig.name(z)
            );
        }
    }
    println!("{}", if agree { "agree" } else { "disagree" });
    Ok(if agree {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(error::FAILED_CHECK)
    })
}

fn team_check(
    path: &Path,
    text: &str,
    allow_empty: bool,
    compare: Option<Compare>,
    caps: &Caps,
) -> Result<ExitCode, CliError> {
    let doc = load_model(path)?;
    let t = doc.causal_team()?;
    if t.team().is_empty() && !allow_empty {
        return Err(CliError::from(epicausal::CausalError::EmptyTeam));
    }
    let f = parse_cod(text, t.signature())?;
    let verdict = team_eval(&t, &f, caps.or_cap)?;
    print_bool(verdict);
    match compare {
        None => {}
        Some(Compare::Global) => {
            let r = check_global_equivalence(&t, &f, caps.cap, caps.or_cap)?;
            println!("translation valid: {}", r.model_verdict);
            println!("{}", if r.agrees() { "agree" } else { "disagree" });
            if !r.agrees() {
                return Ok(ExitCode::from(error::FAILED_CHECK));
            }
        }
        Some(Compare::Local) => {
            let r = check_local_equivalence(&t, &f, caps.cap, caps.or_cap)?;
            for (s, v) in &r.pointings {
                println!("  at {}: {v}", s.display(t.signature()));
            }
            println!("{}", if r.agrees() { "agree" } else { "disagree" });
            if !r.agrees() {
                return Ok(ExitCode::from(error::FAILED_CHECK));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
