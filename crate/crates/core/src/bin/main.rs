use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use monadic_kripke::enumeration::{enumerate_frames, EnumerationConfig, Filter};
use monadic_kripke::frames::{Frame, FrameFile, FrameKind, KripkeFrame};
use monadic_kripke::functors::{sigma, skeleton};
use monadic_kripke::morphisms::{enumerate_morphisms, FrameMap, MapFile};
use monadic_kripke::semantics::{countermodel, Countermodel, ValidityOptions};
use monadic_kripke::syntax::{godel_translate, parse, print, star_translate, Language};
use monadic_kripke::workbench::{
    experiment_ids, load_frame, load_frame_raw, parse_for, run_experiment, write_frame_file, ExperimentReport,
    WorkbenchError,
};

#[derive(Parser)]
#[command(name = "monadic-kripke", version, about = "Finite frames for monadic intuitionistic and monadic S4 logic")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a frame file and list every violated condition.
    CheckFrame { frame: PathBuf },
    /// Decide whether a frame validates a formula; print a countermodel if not.
    ValidateFormula {
        frame: PathBuf,
        formula: String,
        /// Maximum number of distinct letters.
        #[arg(long, default_value_t = 3)]
        letter_cap: usize,
        /// Lift the 6-point and letter caps.
        #[arg(long)]
        allow_large: bool,
    },
    /// Goedel-translate an intuitionistic formula.
    Translate {
        formula: String,
        /// Print the one-variable first-order reading instead.
        #[arg(long)]
        star: bool,
    },
    /// Skeleton of an MS4-frame file.
    Skeleton { frame: PathBuf },
    /// The MS4-frame built from an intuitionistic frame file.
    Sigma { frame: PathBuf },
    /// All morphisms between two frames of the same kind.
    Morphisms {
        source: PathBuf,
        target: PathBuf,
        /// Only onto maps.
        #[arg(long)]
        onto: bool,
    },
    /// Frames up to isomorphism, one JSON object per line.
    Enumerate {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[arg(long = "filter", value_parser = parse_filter)]
        filters: Vec<Filter>,
    },
    /// Run a named experiment, or `all`.
    Experiment {
        id: String,
        #[arg(long)]
        bound: Option<usize>,
        /// Second bound, for experiments over pairs of frame families.
        #[arg(long)]
        target_bound: Option<usize>,
    },
    /// Close both relations of a frame file reflexively and transitively.
    Saturate {
        frame: PathBuf,
        /// Write here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Int,
    Ms4,
}

impl From<KindArg> for FrameKind {
    fn from(k: KindArg) -> FrameKind {
        match k {
            KindArg::Int => FrameKind::Int,
            KindArg::Ms4 => FrameKind::Ms4,
        }
    }
}

fn parse_filter(s: &str) -> Result<Filter, String> {
    s.parse()
}

enum Failure {
    Check,
    Input(String),
}

impl<E: Into<WorkbenchError>> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::Input(e.into().to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::CheckFrame { frame } => check_frame(&frame, json),
        Command::ValidateFormula {
            frame,
            formula,
            letter_cap,
            allow_large,
        } => validate_formula(&frame, &formula, letter_cap, allow_large, json),
        Command::Translate { formula, star } => {
            let phi = parse(&formula, Language::Intuitionistic).map_err(WorkbenchError::from)?;
            let out = if star {
                star_translate(&phi).map_err(WorkbenchError::from)?
            } else {
                print(&godel_translate(&phi).map_err(WorkbenchError::from)?)
            };
            if json {
                println!("{}", json!({ "input": print(&phi), "output": out }));
            } else {
                println!("{out}");
            }
            Ok(())
        }
        Command::Skeleton { frame } => {
            let Frame::Ms4(g) = load_frame(&frame)? else {
                return Err(Failure::Input(format!("{}: skeleton needs an ms4 frame", frame.display())));
            };
            let (skel, pi) = skeleton(&g);
            let file = FrameFile::from_frame(&skel);
            if json {
                let classes: Vec<usize> = (0..g.len()).map(|x| pi.class_of(x)).collect();
                println!("{}", json!({ "frame": file, "class_of": classes }));
            } else {
                println!("{}", serde_json::to_string_pretty(&file).expect("serializes"));
            }
            Ok(())
        }
        Command::Sigma { frame } => {
            let Frame::Int(f) = load_frame(&frame)? else {
                return Err(Failure::Input(format!("{}: sigma needs an int frame", frame.display())));
            };
            print_frame(&FrameFile::from_frame(&sigma(&f)), json);
            Ok(())
        }
        Command::Morphisms { source, target, onto } => morphisms(&source, &target, onto, json),
        Command::Enumerate { kind, bound, filters } => {
            let mut cfg = EnumerationConfig::new(kind.into(), bound);
            cfg.filters.extend(filters);
            for frame in enumerate_frames(&cfg)? {
                println!("{}", serde_json::to_string(&FrameFile::from_any(&frame)).expect("serializes"));
            }
            Ok(())
        }
        Command::Experiment { id, bound, target_bound } => {
            let ids: Vec<String> = if id == "all" {
                experiment_ids().map(String::from).collect()
            } else {
                vec![id]
            };
            let mut passed = true;
            for id in ids {
                let report = run_experiment(&id, bound, target_bound)?;
                passed &= report.passed();
                print_report(&report, json);
            }
            passed.then_some(()).ok_or(Failure::Check)
        }
        Command::Saturate { frame, output } => {
            let file = load_frame_raw(&frame)?.saturated()?;
            match output {
                Some(path) => write_frame_file(&file, path)?,
                None => print_frame(&file, json),
            }
            Ok(())
        }
    }
}

fn print_frame(file: &FrameFile, json: bool) {
    if json {
        println!("{}", serde_json::to_string(file).expect("serializes"));
    } else {
        println!("{}", serde_json::to_string_pretty(file).expect("serializes"));
    }
}

fn print_report(report: &ExperimentReport, json: bool) {
    if json {
        println!("{}", serde_json::to_string(report).expect("serializes"));
        return;
    }
    let status = if report.passed() { "PASS" } else { "FAIL" };
    println!(
        "{status} {} ({} instances, {} ms): {}",
        report.id, report.instances, report.millis, report.anchor
    );
    for failure in &report.failures {
        println!("  {failure}");
    }
}

fn check_frame(path: &Path, json: bool) -> Outcome {
    let report = load_frame_raw(path)?.validate()?;
    if json {
        let violations: Vec<_> = report
            .violations
            .iter()
            .map(|v| json!({ "condition": v.condition.describe(), "witness": v.witness }))
            .collect();
        println!("{}", json!({ "valid": report.is_valid(), "violations": violations }));
    } else if report.is_valid() {
        println!("valid");
    } else {
        println!("{report}");
    }
    report.is_valid().then_some(()).ok_or(Failure::Check)
}

fn validate_formula(path: &Path, text: &str, letter_cap: usize, allow_large: bool, json: bool) -> Outcome {
    let frame = load_frame(path)?;
    let phi = parse_for(frame.kind(), text)?;
    let options = if allow_large {
        ValidityOptions::unbounded()
    } else {
        ValidityOptions {
            letter_cap,
            ..ValidityOptions::default()
        }
    };
    let found: Option<Countermodel> = match &frame {
        Frame::Int(f) => countermodel(f, &phi, options),
        Frame::Ms4(g) => countermodel(g, &phi, options),
    }
    .map_err(WorkbenchError::from)?;
    match (&found, json) {
        (None, true) => println!("{}", json!({ "valid": true, "formula": print(&phi) })),
        (None, false) => println!("valid"),
        (Some(cm), true) => println!("{}", json!({ "valid": false, "countermodel": cm.to_json() })),
        (Some(cm), false) => {
            let names = frame.names();
            println!("not valid: fails at {} under", names[cm.point]);
            for (letter, set) in cm.valuation.iter() {
                let members: Vec<&str> = set.iter().map(|x| names[x].as_str()).collect();
                println!("  {letter} = {{{}}}", members.join(", "));
            }
        }
    }
    found.is_none().then_some(()).ok_or(Failure::Check)
}

fn morphisms(source: &Path, target: &Path, onto: bool, json: bool) -> Outcome {
    let (a, b) = (load_frame(source)?, load_frame(target)?);
    let maps: Vec<FrameMap> = match (&a, &b) {
        (Frame::Int(x), Frame::Int(y)) => enumerate_morphisms(x, y)?,
        (Frame::Ms4(x), Frame::Ms4(y)) => enumerate_morphisms(x, y)?,
        _ => return Err(Failure::Input("source and target frames differ in kind".into())),
    };
    let (sname, tname) = (source.display().to_string(), target.display().to_string());
    for f in maps.iter().filter(|f| !onto || f.is_onto()) {
        if json {
            println!("{}", serde_json::to_string(&MapFile::new(&sname, &tname, f)).expect("serializes"));
        } else {
            let pairs: Vec<String> = (0..f.source_len())
                .map(|x| format!("{} -> {}", a.names()[x], b.names()[f.apply(x)]))
                .collect();
            println!("{}{}", pairs.join(", "), if f.is_onto() { "  (onto)" } else { "" });
        }
    }
    Ok(())
}
