//! `omegatile`: command-line front end for the tiling and machine toolkit.
//!
//! Exit codes: 0 witness-yes (or success), 1 certified-no, 2 unknown,
//! 3 budget exhausted, 4 usage or input error, 5 reduction disagreement.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use omegatile::acceptance::{
    bounded_run_search, emptiness_at_depth, evaluate_acceptance, AcceptanceCondition,
    ConditionKind, Mode, RunEvidence, SearchConfig, DEFAULT_NODE_BUDGET,
};
use omegatile::encodings::{decode_run, encode_run, row_major_decode, row_major_stream};
use omegatile::fidelity::{verify_batch, verify_reduction, Budgets, Case};
use omegatile::formats::{
    parse_encoding, parse_machine, parse_picture, parse_run, parse_tiling, write_encoding,
    write_machine, write_picture, write_run, write_tiling, EncodingStream, TilingFile,
};
use omegatile::grid::{determinism_conflict, validate_run, PictureWindow, State, TilingSystem};
use omegatile::reductions::{compile_h, compile_k, lift_word, shuffle_machines, CompiledSystem};
use omegatile::sweep::Exec;
use omegatile::turing::{render_cells, tm_run_bounded, TraceEnd, TuringMachine};
use omegatile::verdict::{BoundedVerdict, Category};
use omegatile::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXIT_USAGE: u8 = 4;
const EXIT_DISAGREE: u8 = 5;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "omegatile",
    version,
    about = "Bounded verdicts for tiling systems and omega-word machines"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Node budget for searches and trace expansion (default: $OMEGATILE_BUDGET, else built in).
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Clone, Copy, ValueEnum)]
enum CondArg {
    A,
    E,
    Buchi,
    Muller,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Global,
    Diagonal,
}

#[derive(clap::Args)]
struct ConditionArgs {
    #[arg(long, value_enum, default_value_t = CondArg::Buchi)]
    condition: CondArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Global)]
    mode: ModeArg,
    /// Accepting states, space separated; defaults to the file's `accepting:` line.
    #[arg(long)]
    accepting: Option<String>,
    /// One Muller table member, space separated state names; repeatable.
    #[arg(long = "table")]
    table: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a machine into the tiling system K(M).
    CompileK {
        machine: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Compile a machine into H(M), the union of K(M) with the first-row complement system.
    CompileH {
        machine: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build the shuffle machine running one machine on odd and one on even positions.
    Theta {
        left: PathBuf,
        right: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Search for the best run of a tiling system on a window.
    SearchRun {
        tiling: PathBuf,
        /// Picture file; alternatively give --word and --depth.
        picture: Option<PathBuf>,
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
        #[command(flatten)]
        cond: ConditionArgs,
    },
    /// Validate a given run and read off the acceptance condition.
    CheckRun {
        tiling: PathBuf,
        picture: PathBuf,
        run: PathBuf,
        #[command(flatten)]
        cond: ConditionArgs,
    },
    /// Look for any locally consistent depth-n corner of any picture.
    Emptiness {
        tiling: PathBuf,
        #[arg(long)]
        depth: usize,
    },
    /// Compare direct simulation with the compiled system K(M).
    VerifyReduction {
        machine: PathBuf,
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        depth: usize,
        /// Check this many random words instead of --word.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Longest sampled word.
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Write the row-major stream of a picture, or the code of a run with --run.
    Encode {
        tiling: PathBuf,
        picture: PathBuf,
        #[arg(long)]
        run: Option<PathBuf>,
    },
    /// Read an encoding stream back.
    Decode { stream: PathBuf },
    /// Summarize a machine, tiling system or encoding file.
    Show {
        file: PathBuf,
        /// For machines: list the bounded traces on this word.
        #[arg(long)]
        word: Option<String>,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
}

#[derive(Clone, Copy)]
struct Env {
    budget: u64,
    format: Format,
}

/// What a command produced: output text and an exit code.
struct Done {
    text: String,
    code: u8,
}

enum Failure {
    Lib(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Run = Result<Done, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn machine(path: &Path) -> Result<TuringMachine, Failure> {
    Ok(parse_machine(&read(path)?)?)
}

fn tiling(path: &Path) -> Result<TilingFile, Failure> {
    Ok(parse_tiling(&read(path)?)?)
}

fn emit(out: Option<&Path>, text: String) -> Run {
    match out {
        Some(p) => {
            std::fs::write(p, &text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            Ok(Done {
                text: String::new(),
                code: 0,
            })
        }
        None => Ok(Done { text, code: 0 }),
    }
}

fn compiled_file(c: CompiledSystem) -> String {
    write_tiling(&TilingFile {
        system: c.system,
        accepting: Some(c.accepting),
        provenance: Some(c.provenance),
    })
}

fn budget(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("OMEGATILE_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("OMEGATILE_BUDGET: not a number: {v:?}"))),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

fn states(ts: &TilingSystem, names: &str) -> Result<BTreeSet<State>, Failure> {
    names
        .split_whitespace()
        .map(|q| {
            ts.state(q)
                .ok_or_else(|| Failure::Usage(format!("unknown state {q:?}")))
        })
        .collect()
}

fn condition(args: &ConditionArgs, file: &TilingFile) -> Result<AcceptanceCondition, Failure> {
    let ts = &file.system;
    let f = || -> Result<BTreeSet<State>, Failure> {
        match (&args.accepting, &file.accepting) {
            (Some(names), _) => states(ts, names),
            (None, Some(acc)) => Ok(acc.clone()),
            (None, None) => Err(Failure::Usage(
                "no accepting states: pass --accepting".into(),
            )),
        }
    };
    let kind = match args.condition {
        CondArg::A => ConditionKind::A(f()?),
        CondArg::E => ConditionKind::E(f()?),
        CondArg::Buchi => ConditionKind::Buchi(f()?),
        CondArg::Muller => {
            if args.table.is_empty() {
                return Err(Failure::Usage(
                    "muller condition needs at least one --table".into(),
                ));
            }
            ConditionKind::Muller(
                args.table
                    .iter()
                    .map(|t| states(ts, t))
                    .collect::<Result<_, _>>()?,
            )
        }
    };
    let mode = match args.mode {
        ModeArg::Global => Mode::Global,
        ModeArg::Diagonal => Mode::Diagonal,
    };
    Ok(AcceptanceCondition::new(kind, mode))
}

fn letters_of(ts: &TilingSystem, word: &str) -> Result<Vec<omegatile::grid::Letter>, Failure> {
    let sigma = ts.alphabet();
    let tokens: Vec<String> = if word.contains(char::is_whitespace) {
        word.split_whitespace().map(str::to_string).collect()
    } else {
        word.chars().map(String::from).collect()
    };
    tokens
        .iter()
        .map(|t| {
            sigma
                .letter(t)
                .filter(|l| !l.is_border())
                .ok_or_else(|| Failure::Usage(format!("unknown letter {t:?}")))
        })
        .collect()
}

fn window(
    ts: &TilingSystem,
    picture: Option<&Path>,
    word: Option<&str>,
    depth: Option<usize>,
) -> Result<PictureWindow, Failure> {
    match (picture, word, depth) {
        (Some(p), None, d) => {
            let w = parse_picture(&read(p)?, ts.alphabet())?;
            if d.is_some() && w.depth() != d {
                return Err(Failure::Usage("--depth does not match the picture".into()));
            }
            Ok(w)
        }
        (None, Some(word), Some(d)) => {
            let mut letters = letters_of(ts, word)?;
            letters.resize(
                letters.len().max(d),
                omegatile::reductions::filler(ts.alphabet()),
            );
            Ok(lift_word(ts.alphabet(), &letters, d)?)
        }
        _ => Err(Failure::Usage(
            "give a picture file, or --word together with --depth".into(),
        )),
    }
}

fn verdict_text(v: &BoundedVerdict<RunEvidence>, ts: &TilingSystem, format: Format) -> String {
    let ev = &v.evidence;
    let mut s = String::new();
    match format {
        Format::Records => {
            let _ = writeln!(
                s,
                "outcome={} category={} accepting={} scope={} muller_exact={:?} notes={:?}",
                v.outcome,
                v.category(),
                ev.accepting,
                ev.scope_cells,
                ev.muller_exact,
                v.notes.join("; ")
            );
        }
        Format::Text => {
            let _ = writeln!(s, "verdict: {}", v.outcome);
            let _ = writeln!(s, "accepting cells: {} of {}", ev.accepting, ev.scope_cells);
            for n in &v.notes {
                let _ = writeln!(s, "note: {n}");
            }
            if let Some(w) = &ev.witness {
                s.push_str(&write_run(&w.run, ts));
            }
        }
    }
    s
}

fn search_run(
    env: Env,
    tiling_path: &Path,
    picture: Option<&Path>,
    word: Option<&str>,
    depth: Option<usize>,
    args: &ConditionArgs,
) -> Run {
    let file = tiling(tiling_path)?;
    let cond = condition(args, &file)?;
    let p = window(&file.system, picture, word, depth)?;
    let v = bounded_run_search(&file.system, &p, &cond, SearchConfig { budget: env.budget })?;
    Ok(Done {
        text: verdict_text(&v, &file.system, env.format),
        code: v.category().exit_code() as u8,
    })
}

fn check_run(
    format: Format,
    tiling_path: &Path,
    picture: &Path,
    run: &Path,
    args: &ConditionArgs,
) -> Run {
    let file = tiling(tiling_path)?;
    let ts = &file.system;
    let cond = condition(args, &file)?;
    let p = parse_picture(&read(picture)?, ts.alphabet())?;
    let r = parse_run(&read(run)?, ts)?;
    if !validate_run(ts, &p, &r)? {
        let text = match format {
            Format::Text => "verdict: certified-no\nnote: not a valid run on the picture\n".into(),
            Format::Records => "outcome=certified-no category=certified-no valid=false\n".into(),
        };
        return Ok(Done {
            text,
            code: Category::CertifiedNo.exit_code() as u8,
        });
    }
    let v = evaluate_acceptance(&r, &cond, &p)?;
    let mut text = verdict_text(&v, ts, format);
    if format == Format::Text {
        // the run was given, not found; do not echo it back
        text = text
            .lines()
            .take_while(|l| !l.starts_with("run "))
            .map(|l| format!("{l}\n"))
            .collect();
    }
    Ok(Done {
        text,
        code: v.category().exit_code() as u8,
    })
}

fn emptiness(budget: u64, format: Format, tiling_path: &Path, depth: usize) -> Run {
    let file = tiling(tiling_path)?;
    let ts = &file.system;
    let v = emptiness_at_depth(ts, depth, SearchConfig { budget })?;
    let mut s = String::new();
    match format {
        Format::Records => {
            let _ = writeln!(
                s,
                "outcome={} category={} depth={depth} notes={:?}",
                v.outcome,
                v.category(),
                v.notes.join("; ")
            );
        }
        Format::Text => {
            let _ = writeln!(s, "verdict: {}", v.outcome);
            for n in &v.notes {
                let _ = writeln!(s, "note: {n}");
            }
            if let Some(w) = &v.evidence {
                s.push_str(&write_picture(&w.picture, ts.alphabet()));
                s.push_str(&write_run(&w.run, ts));
            }
        }
    }
    Ok(Done {
        text: s,
        code: v.category().exit_code() as u8,
    })
}

fn verify(
    env: Env,
    path: &Path,
    word: Option<&str>,
    depth: usize,
    samples: Option<usize>,
    seed: u64,
    max_len: usize,
) -> Run {
    let (budget, format) = (env.budget, env.format);
    let m = machine(path)?;
    let budgets = Budgets {
        search: budget,
        traces: budget as usize,
    };
    let render = |r: &omegatile::fidelity::FidelityReport| match format {
        Format::Text => r.to_text(),
        Format::Records => format!("{}\n", r.to_record()),
    };
    match (word, samples) {
        (Some(w), None) => {
            let r = verify_reduction(&m, &m.word(w)?, depth, budgets)?;
            let code = if r.agreement {
                r.compiled.exit_code() as u8
            } else {
                EXIT_DISAGREE
            };
            Ok(Done {
                text: render(&r),
                code,
            })
        }
        (None, Some(n)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let input = m.input();
            let cases: Vec<Case> = (0..n)
                .map(|_| {
                    let len = rng.gen_range(0..=max_len);
                    let word = (0..len)
                        .map(|_| input[rng.gen_range(0..input.len())])
                        .collect();
                    Case {
                        machine: &m,
                        word,
                        depth,
                    }
                })
                .collect();
            let mut text = String::new();
            let mut agreed = 0;
            for r in verify_batch(&cases, budgets, Exec::default()) {
                let r = r?;
                agreed += usize::from(r.agreement);
                text.push_str(&render(&r));
                if format == Format::Text {
                    text.push('\n');
                }
            }
            let _ = writeln!(text, "agreement: {agreed}/{n}");
            Ok(Done {
                text,
                code: if agreed == n { 0 } else { EXIT_DISAGREE },
            })
        }
        _ => Err(Failure::Usage(
            "give exactly one of --word and --samples".into(),
        )),
    }
}

fn encode(tiling_path: &Path, picture: &Path, run: Option<&Path>) -> Run {
    let ts = tiling(tiling_path)?.system;
    let p = parse_picture(&read(picture)?, ts.alphabet())?;
    let depth = p
        .depth()
        .ok_or_else(|| Failure::Usage("encodings need an omega-prefix picture".into()))?;
    let stream = match run {
        None => EncodingStream::Pbar {
            alphabet: ts.alphabet().clone(),
            depth,
            letters: row_major_stream(&p)?,
        },
        Some(r) => {
            let run = parse_run(&read(r)?, &ts)?;
            if !validate_run(&ts, &p, &run)? {
                return Err(Failure::Usage("not a valid run on the picture".into()));
            }
            EncodingStream::Rhobar {
                states: ts.state_names().to_vec(),
                depth,
                code: encode_run(&run, ts.num_states(), None)?,
            }
        }
    };
    Ok(Done {
        text: write_encoding(&stream),
        code: 0,
    })
}

fn decode(path: &Path) -> Run {
    let text = match parse_encoding(&read(path)?)? {
        EncodingStream::Pbar {
            alphabet,
            depth,
            letters,
        } => write_picture(&row_major_decode(&letters, depth)?, &alphabet),
        EncodingStream::Rhobar {
            states,
            depth,
            code,
        } => {
            let mut s = format!("cells {depth}\n");
            for ((i, j), q) in decode_run(&code, states.len())? {
                let _ = writeln!(s, "{i} {j} {}", states[q.0 as usize]);
            }
            s
        }
    };
    Ok(Done { text, code: 0 })
}

fn show(budget: u64, path: &Path, word: Option<&str>, depth: usize) -> Run {
    let text = read(path)?;
    let head = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with("//"))
        .unwrap_or_default();
    let mut s = String::new();
    match head {
        "turing-machine v1" => {
            let m = parse_machine(&text)?;
            let acc: Vec<&str> = m
                .accepting()
                .iter()
                .map(|&q| m.states()[q].as_str())
                .collect();
            let _ = writeln!(
                s,
                "machine {}: {} states, {} transitions",
                m.name,
                m.states().len(),
                m.transition_count()
            );
            let _ = writeln!(s, "accepting: {}", acc.join(" "));
            if let Some(w) = word {
                let ids = m.word(w)?;
                for (k, t) in tm_run_bounded(&m, &ids, depth, budget as usize)?
                    .iter()
                    .enumerate()
                {
                    let end = match t.end {
                        TraceEnd::Completed => "completed",
                        TraceEnd::Halted => "halted",
                        TraceEnd::PrefixExhausted => "prefix exhausted",
                    };
                    let _ = writeln!(
                        s,
                        "trace {k} ({end}, all accepting: {}):",
                        t.all_accepting()
                    );
                    for c in &t.steps {
                        let _ = writeln!(s, "  {}", render_cells(&m, &c.render(&ids, depth + 1)));
                    }
                }
            } else {
                s.push_str(&write_machine(&m));
            }
        }
        "tiling-system v1" => {
            let f = parse_tiling(&text)?;
            let ts = &f.system;
            let _ = writeln!(
                s,
                "tiling system: {} states, {} letters, {} tiles",
                ts.num_states(),
                ts.alphabet().len(),
                ts.tiles().len()
            );
            if let Some(p) = &f.provenance {
                let _ = writeln!(s, "provenance: {p}");
            }
            match determinism_conflict(ts) {
                None => {
                    let _ = writeln!(s, "deterministic: yes");
                }
                Some((t1, t2)) => {
                    let _ = writeln!(
                        s,
                        "deterministic: no, [{}] vs [{}]",
                        ts.display_tile(&t1),
                        ts.display_tile(&t2)
                    );
                }
            }
        }
        "encoding v1" => {
            return decode(path);
        }
        other => {
            return Err(Failure::Usage(format!(
                "unrecognized file header {other:?}"
            )))
        }
    }
    Ok(Done { text: s, code: 0 })
}

fn dispatch(cli: Cli) -> Run {
    let budget = budget(cli.budget)?;
    let format = cli.format;
    let env = Env { budget, format };
    match cli.command {
        Command::CompileK { machine: m, out } => {
            emit(out.as_deref(), compiled_file(compile_k(&machine(&m)?)))
        }
        Command::CompileH { machine: m, out } => {
            emit(out.as_deref(), compiled_file(compile_h(&machine(&m)?)))
        }
        Command::Theta { left, right, out } => {
            let t = shuffle_machines(&machine(&left)?, &machine(&right)?)?;
            emit(out.as_deref(), write_machine(&t))
        }
        Command::SearchRun {
            tiling,
            picture,
            word,
            depth,
            cond,
        } => search_run(
            env,
            &tiling,
            picture.as_deref(),
            word.as_deref(),
            depth,
            &cond,
        ),
        Command::CheckRun {
            tiling,
            picture,
            run,
            cond,
        } => check_run(format, &tiling, &picture, &run, &cond),
        Command::Emptiness { tiling, depth } => emptiness(budget, format, &tiling, depth),
        Command::VerifyReduction {
            machine,
            word,
            depth,
            samples,
            seed,
            max_len,
        } => verify(
            env,
            &machine,
            word.as_deref(),
            depth,
            samples,
            seed,
            max_len,
        ),
        Command::Encode {
            tiling,
            picture,
            run,
        } => encode(&tiling, &picture, run.as_deref()),
        Command::Decode { stream } => decode(&stream),
        Command::Show { file, word, depth } => show(budget, &file, word.as_deref(), depth),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(Done { text, code }) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(Failure::Lib(e @ Error::Budget { .. })) => {
            eprintln!("omegatile: {e}");
            ExitCode::from(EXIT_BUDGET)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("omegatile: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("omegatile: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
