//! Command-line surface over triple systems, digraphs and the extension
//! solver.
//!
//! Exit codes: 0 success / positive decision, 1 negative decision
//! (class fails, unextendable, vortex found), 2 usage or input error,
//! 3 inconclusive (decision limit reached).

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cc_systems::axioms::{
    check_axiom4, check_axiom5, check_axiom5prime, check_gpr, classify, AxiomViolation,
};
use cc_systems::enumeration::census_with_jobs;
use cc_systems::reduction::{decide_completion_with, digraph_to_partial, lift_tournament_with};
use cc_systems::solver::{
    encode, export_dimacs, extend_with, EncodeOptions, SolveResult, SolverConfig, Target,
};
use cc_systems::system::{parse_system, serialize_system};
use cc_systems::tournament::{find_vortices, Digraph, Vortex, VortexKind};
use cc_systems::Error;

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ccsys",
    version,
    about = "CC-systems and chirotopes: axiom checking, tournament analysis, extension solving"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Cc,
    PreCc,
    Chirotope,
}

impl ClassArg {
    fn label(self) -> &'static str {
        match self {
            ClassArg::Cc => "cc",
            ClassArg::PreCc => "pre-cc",
            ClassArg::Chirotope => "chirotope",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    PreCc,
    Cc,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Target {
        match t {
            TargetArg::PreCc => Target::PreCc,
            TargetArg::Cc => Target::Cc,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    JsonLines,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a complete triple system against the axioms.
    Check {
        /// Triple-system file, `-` for standard input.
        path: String,
        /// Class whose membership decides the exit code.
        #[arg(long, value_enum, default_value_t = ClassArg::Cc)]
        class: ClassArg,
        /// Also print every axiom violation.
        #[arg(long)]
        witnesses: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Decide whether a partial triple system extends to the target class.
    Extend {
        /// Triple-system file, `-` for standard input.
        path: String,
        #[arg(long, value_enum, default_value_t = TargetArg::PreCc)]
        target: TargetArg,
        /// Write the witness system here on success.
        #[arg(long)]
        out: Option<String>,
        /// Write the DIMACS encoding here instead of solving.
        #[arg(long)]
        emit_cnf: Option<String>,
        /// Abort with an inconclusive verdict after this many decisions.
        #[arg(long)]
        max_decisions: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Operations on digraph/tournament files.
    Digraph {
        #[command(subcommand)]
        command: DigraphCommand,
    },
    /// Classify every complete system on n points and print the tallies.
    Census {
        /// Ground set size, 3 ≤ n ≤ 6.
        n: usize,
        /// Worker threads for the enumeration.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum DigraphCommand {
    /// List every vortex; exit 1 if any exists.
    Vortices {
        path: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Decide completability to a vortex-free tournament.
    Complete {
        path: String,
        #[arg(long)]
        max_decisions: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Lift a vortex-free tournament to a CC-system on one more point.
    Lift {
        path: String,
        /// Output file for the lifted system (default: standard output).
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        max_decisions: Option<u64>,
    },
    /// Embed the digraph as an apex-shaped partial triple system.
    ToTriples {
        path: String,
        /// Output file for the apex system (default: standard output).
        #[arg(long)]
        out: Option<String>,
    },
}

fn read_input(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        fs::read_to_string(path)
    }
}

fn write_output(path: Option<&str>, content: &str) -> std::io::Result<()> {
    match path {
        Some("-") | None => {
            print!("{content}");
            Ok(())
        }
        Some(p) => fs::write(p, content),
    }
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT)
}

fn json_witness(v: &AxiomViolation) -> String {
    let points: Vec<String> = v.witness.iter().map(|p| p.to_string()).collect();
    format!(
        "{{\"axiom\":\"{:?}\",\"witness\":[{}]}}",
        v.axiom,
        points.join(",")
    )
}

fn cmd_check(path: &str, class: ClassArg, witnesses: bool, format: Format) -> ExitCode {
    let text = match read_input(path) {
        Ok(t) => t,
        Err(e) => return input_error(format_args!("{path}: {e}")),
    };
    let system = match parse_system(&text) {
        Ok(s) => s,
        Err(e) => return input_error(e),
    };
    let report = match classify(&system) {
        Ok(r) => r,
        Err(e) => return input_error(e),
    };
    let holds = match class {
        ClassArg::Cc => report.is_cc,
        ClassArg::PreCc => report.is_pre_cc,
        ClassArg::Chirotope => report.is_chirotope,
    };
    let violations: Vec<AxiomViolation> = if witnesses {
        let mut all = Vec::new();
        all.extend(check_axiom4(&system).unwrap());
        all.extend(check_axiom5(&system).unwrap());
        all.extend(check_axiom5prime(&system).unwrap());
        all.extend(check_gpr(&system).unwrap());
        all
    } else {
        Vec::new()
    };
    match format {
        Format::Text => {
            println!("points {}", system.n());
            println!("interiority: {}", if report.a4_ok { "ok" } else { "violated" });
            println!("transitivity: {}", if report.a5_ok { "ok" } else { "violated" });
            println!(
                "dual-transitivity: {}",
                if report.a5p_ok { "ok" } else { "violated" }
            );
            println!(
                "grassmann-plucker: {}",
                if report.gpr_ok { "ok" } else { "violated" }
            );
            println!("pre-cc: {}", if report.is_pre_cc { "yes" } else { "no" });
            println!("cc: {}", if report.is_cc { "yes" } else { "no" });
            println!(
                "chirotope: {}",
                if report.is_chirotope { "yes" } else { "no" }
            );
            for v in &violations {
                println!("{v}");
            }
            println!(
                "class {}: {}",
                class.label(),
                if holds { "holds" } else { "fails" }
            );
        }
        Format::JsonLines => {
            println!(
                "{{\"command\":\"check\",\"points\":{},\"a4_ok\":{},\"a5_ok\":{},\"a5p_ok\":{},\"gpr_ok\":{},\"pre_cc\":{},\"cc\":{},\"chirotope\":{},\"class\":\"{}\",\"holds\":{}}}",
                system.n(),
                report.a4_ok,
                report.a5_ok,
                report.a5p_ok,
                report.gpr_ok,
                report.is_pre_cc,
                report.is_cc,
                report.is_chirotope,
                class.label(),
                holds
            );
            for v in &violations {
                println!("{}", json_witness(v));
            }
        }
    }
    ExitCode::from(if holds { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_extend(
    path: &str,
    target: Target,
    out: Option<&str>,
    emit_cnf: Option<&str>,
    max_decisions: Option<u64>,
    format: Format,
) -> ExitCode {
    let text = match read_input(path) {
        Ok(t) => t,
        Err(e) => return input_error(format_args!("{path}: {e}")),
    };
    let system = match parse_system(&text) {
        Ok(s) => s,
        Err(e) => return input_error(e),
    };
    if let Some(cnf_path) = emit_cnf {
        let formula = encode(&system, target);
        let dimacs = export_dimacs(&formula);
        if let Err(e) = write_output(Some(cnf_path), &dimacs) {
            return input_error(format_args!("{cnf_path}: {e}"));
        }
        match format {
            Format::Text => println!(
                "wrote {} variables, {} clauses",
                formula.var_count(),
                formula.clauses().len()
            ),
            Format::JsonLines => println!(
                "{{\"command\":\"extend\",\"emitted_cnf\":true,\"vars\":{},\"clauses\":{}}}",
                formula.var_count(),
                formula.clauses().len()
            ),
        }
        return ExitCode::from(EXIT_OK);
    }
    let config = SolverConfig { max_decisions };
    let outcome = extend_with(&system, target, &EncodeOptions::default(), &config);
    let stats = outcome.stats;
    let (verdict, code) = match &outcome.result {
        SolveResult::Extendable(_) => ("extendable", EXIT_OK),
        SolveResult::Unextendable => ("unextendable", EXIT_NEGATIVE),
        SolveResult::Inconclusive => ("inconclusive", EXIT_INCONCLUSIVE),
    };
    match format {
        Format::Text => {
            println!("target {target}: {verdict}");
            println!(
                "decisions {} propagations {} conflicts {}",
                stats.decisions, stats.propagations, stats.conflicts
            );
        }
        Format::JsonLines => println!(
            "{{\"command\":\"extend\",\"target\":\"{target}\",\"result\":\"{verdict}\",\"decisions\":{},\"propagations\":{},\"conflicts\":{}}}",
            stats.decisions, stats.propagations, stats.conflicts
        ),
    }
    if let SolveResult::Extendable(witness) = &outcome.result {
        if let Some(out_path) = out {
            if let Err(e) = write_output(Some(out_path), &serialize_system(&witness.extension)) {
                return input_error(format_args!("{out_path}: {e}"));
            }
        }
    }
    ExitCode::from(code)
}

fn parse_digraph_input(path: &str) -> Result<Digraph, ExitCode> {
    let text = read_input(path).map_err(|e| input_error(format_args!("{path}: {e}")))?;
    Digraph::parse(&text).map_err(input_error)
}

fn print_vortex_json(v: &Vortex) {
    let (p, q, r) = v.cycle;
    let kind = match v.kind {
        VortexKind::Dominating => "dominating",
        VortexKind::Dominated => "dominated",
    };
    println!(
        "{{\"vortex\":{{\"apex\":{},\"cycle\":[{p},{q},{r}],\"kind\":\"{kind}\"}}}}",
        v.apex
    );
}

fn cmd_digraph(command: DigraphCommand) -> ExitCode {
    match command {
        DigraphCommand::Vortices { path, format } => {
            let g = match parse_digraph_input(&path) {
                Ok(g) => g,
                Err(code) => return code,
            };
            let Some(tournament) = g.to_tournament() else {
                return input_error("vortex scan requires a complete tournament");
            };
            let vortices = find_vortices(&tournament);
            match format {
                Format::Text => {
                    for v in &vortices {
                        println!("{v}");
                    }
                    println!("vortices: {}", vortices.len());
                }
                Format::JsonLines => {
                    for v in &vortices {
                        print_vortex_json(v);
                    }
                    println!(
                        "{{\"command\":\"digraph-vortices\",\"count\":{}}}",
                        vortices.len()
                    );
                }
            }
            ExitCode::from(if vortices.is_empty() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        DigraphCommand::Complete {
            path,
            max_decisions,
            format,
        } => {
            let g = match parse_digraph_input(&path) {
                Ok(g) => g,
                Err(code) => return code,
            };
            let config = SolverConfig { max_decisions };
            match decide_completion_with(&g, &config) {
                Ok(completable) => {
                    match format {
                        Format::Text => println!(
                            "completable to a vortex-free tournament: {}",
                            if completable { "yes" } else { "no" }
                        ),
                        Format::JsonLines => println!(
                            "{{\"command\":\"digraph-complete\",\"completable\":{completable}}}"
                        ),
                    }
                    ExitCode::from(if completable { EXIT_OK } else { EXIT_NEGATIVE })
                }
                Err(Error::Inconclusive { .. }) => {
                    eprintln!("inconclusive: decision limit reached");
                    ExitCode::from(EXIT_INCONCLUSIVE)
                }
                Err(e) => input_error(e),
            }
        }
        DigraphCommand::Lift {
            path,
            out,
            max_decisions,
        } => {
            let g = match parse_digraph_input(&path) {
                Ok(g) => g,
                Err(code) => return code,
            };
            let Some(tournament) = g.to_tournament() else {
                return input_error("lift requires a complete tournament (all pairs oriented)");
            };
            let config = SolverConfig { max_decisions };
            match lift_tournament_with(&tournament, &config) {
                Ok(system) => {
                    if let Err(e) = write_output(out.as_deref(), &serialize_system(&system)) {
                        return input_error(e);
                    }
                    ExitCode::from(EXIT_OK)
                }
                Err(Error::NotVortexFree(v)) => {
                    eprintln!("not vortex-free: {v}");
                    ExitCode::from(EXIT_NEGATIVE)
                }
                Err(Error::Inconclusive { .. }) => {
                    eprintln!("inconclusive: decision limit reached");
                    ExitCode::from(EXIT_INCONCLUSIVE)
                }
                Err(e) => input_error(e),
            }
        }
        DigraphCommand::ToTriples { path, out } => {
            let g = match parse_digraph_input(&path) {
                Ok(g) => g,
                Err(code) => return code,
            };
            let instance = digraph_to_partial(&g);
            if let Err(e) = write_output(out.as_deref(), &serialize_system(&instance.system)) {
                return input_error(e);
            }
            ExitCode::from(EXIT_OK)
        }
    }
}

fn cmd_census(n: usize, jobs: usize, format: Format) -> ExitCode {
    if !(3..=6).contains(&n) {
        return input_error(format_args!("census requires 3 <= n <= 6, got {n}"));
    }
    let tally = match census_with_jobs(n, jobs) {
        Ok(t) => t,
        Err(e) => return input_error(e),
    };
    match format {
        Format::Text => {
            println!("n {}", tally.n);
            println!("total {}", tally.total);
            println!("pre-cc {}", tally.pre_cc);
            println!("cc {}", tally.cc);
            println!("chirotope {}", tally.chirotope);
        }
        Format::JsonLines => println!(
            "{{\"command\":\"census\",\"n\":{},\"total\":{},\"pre_cc\":{},\"cc\":{},\"chirotope\":{}}}",
            tally.n, tally.total, tally.pre_cc, tally.cc, tally.chirotope
        ),
    }
    if tally.identities_hold() {
        ExitCode::from(EXIT_OK)
    } else {
        eprintln!("census identity violated: pre-cc and chirotope counts must match");
        ExitCode::from(EXIT_NEGATIVE)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check {
            path,
            class,
            witnesses,
            format,
        } => cmd_check(&path, class, witnesses, format),
        Command::Extend {
            path,
            target,
            out,
            emit_cnf,
            max_decisions,
            format,
        } => cmd_extend(
            &path,
            target.into(),
            out.as_deref(),
            emit_cnf.as_deref(),
            max_decisions,
            format,
        ),
        Command::Digraph { command } => cmd_digraph(command),
        Command::Census { n, jobs, format } => cmd_census(n, jobs, format),
    }
}
