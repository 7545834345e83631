//! Command-line front end. [`run`] takes the argument list and output
//! streams so that it can be driven from tests.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::automata::Dfa;
use crate::expr::{compile_with, load_expr_file, CompileOptions, ExprError, ExprFile};
use crate::label::{
    build_iterstar, build_perm, build_shuffle, BuildOptions, Construction, DEFAULT_GRID_CAP,
};
use crate::oracle::cross_check;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONSTRUCTION: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "permshuffle",
    version,
    about = "Automata for commutative closures of shuffle expressions over group languages"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct BuildFlags {
    /// Keep the raw grid automaton
    #[arg(long)]
    no_minimize: bool,
    /// Shrink the box to the observed ray bounds when that is safe
    #[arg(long)]
    shrink_rays: bool,
    /// Refuse boxes with more points than this
    #[arg(long, default_value_t = DEFAULT_GRID_CAP)]
    grid_cap: u128,
}

impl BuildFlags {
    fn options(&self) -> BuildOptions {
        BuildOptions {
            minimize: !self.no_minimize,
            shrink_rays: self.shrink_rays,
            grid_cap: self.grid_cap,
        }
    }
}

#[derive(Args, Debug)]
struct ExprArgs {
    /// Expression file
    file: PathBuf,
    /// Override or add an atom, as NAME=path
    #[arg(long = "atom", value_parser = parse_atom)]
    atoms: Vec<(String, PathBuf)>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report whether every letter permutes the states, with letter orders
    Validate { automaton: PathBuf },
    /// Build the automaton for the commutative closure
    Perm {
        automaton: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        build: BuildFlags,
    },
    /// Build the automaton for the iterated shuffle of the commutative closure
    Iterstar {
        automaton: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        build: BuildFlags,
    },
    /// Build the automaton for the shuffle of the commutative closures
    Shuffleperm {
        #[arg(required = true)]
        automata: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        build: BuildFlags,
    },
    /// Compile an expression file
    Compile {
        #[command(flatten)]
        expr: ExprArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Use the expression-NFA engine even when the normal form exists
        #[arg(long)]
        fallback: bool,
        #[command(flatten)]
        build: BuildFlags,
    },
    /// Exit 0 if the word is accepted, 1 otherwise
    Member { automaton: PathBuf, word: String },
    /// List accepted words up to a length
    Enumerate {
        automaton: PathBuf,
        #[arg(long)]
        max_len: usize,
    },
    /// Print Graphviz DOT
    Dot { automaton: PathBuf },
    /// Compile and compare with the bounded oracle
    Verify {
        #[command(flatten)]
        expr: ExprArgs,
        #[arg(long, default_value_t = 7)]
        max_len: usize,
        #[command(flatten)]
        build: BuildFlags,
    },
    /// Print grid sizes, theoretical bounds and minimized sizes
    Stats {
        #[command(flatten)]
        expr: ExprArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        build: BuildFlags,
    },
}

fn parse_atom(s: &str) -> Result<(String, PathBuf), String> {
    let (name, path) = s.split_once('=').ok_or("expected NAME=path")?;
    if name.is_empty() || path.is_empty() {
        return Err("expected NAME=path".into());
    }
    Ok((name.to_string(), PathBuf::from(path)))
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Construction(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Construction(_) => EXIT_CONSTRUCTION,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Construction(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn construction(e: impl std::fmt::Display) -> Failure {
    Failure::Construction(e.to_string())
}

fn load(path: &Path) -> Result<Dfa, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    text.parse::<Dfa>()
        .map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_expr(args: &ExprArgs) -> Result<ExprFile, Failure> {
    load_expr_file(&args.file, &args.atoms).map_err(usage)
}

fn compile_error(e: ExprError) -> Failure {
    match e {
        ExprError::NoAtoms | ExprError::Unsupported { .. } => usage(e),
        other => construction(other),
    }
}

fn write_automaton(d: &Dfa, output: &Option<PathBuf>, out: &mut dyn Write) -> Result<(), Failure> {
    let text = d.to_text();
    match output {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(usage),
    }
}

fn stats_rows(
    rows: &[(String, Construction)],
    format: Format,
    result: &Dfa,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    match format {
        Format::Tsv => {
            writeln!(out, "construction\tgrid\tunminimized\tbound\tminimized")?;
            for (name, c) in rows {
                writeln!(
                    out,
                    "{name}\t{}\t{}\t{}\t{}",
                    c.grid_states,
                    c.unminimized_states,
                    c.bound,
                    c.dfa.minimize().state_count()
                )?;
            }
            writeln!(out, "result\t\t\t\t{}", result.minimize().state_count())
        }
        Format::Text => {
            for (name, c) in rows {
                writeln!(
                    out,
                    "{name}: grid {} unminimized {} bound {} minimized {}",
                    c.grid_states,
                    c.unminimized_states,
                    c.bound,
                    c.dfa.minimize().state_count()
                )?;
            }
            writeln!(out, "result: minimized {}", result.minimize().state_count())
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Validate { automaton } => {
            let d = load(&automaton)?;
            let r = d.validate_permutation();
            if let Some(orders) = &r.orders {
                writeln!(out, "permutation: yes").map_err(usage)?;
                let parts: Vec<String> = d
                    .alphabet()
                    .letters()
                    .iter()
                    .zip(orders)
                    .map(|(c, o)| format!("{c}={o}"))
                    .collect();
                writeln!(out, "order {}", parts.join(" ")).map_err(usage)?;
            } else {
                writeln!(out, "permutation: no").map_err(usage)?;
                if let Some((c, p, q, t)) = r.offending {
                    writeln!(out, "collision {c}: {p} -> {t} and {q} -> {t}").map_err(usage)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Perm {
            automaton,
            output,
            build,
        } => {
            let c = build_perm(&load(&automaton)?, &build.options()).map_err(construction)?;
            write_automaton(&c.dfa, &output, out)?;
            Ok(EXIT_OK)
        }
        Command::Iterstar {
            automaton,
            output,
            build,
        } => {
            let c = build_iterstar(&load(&automaton)?, &build.options()).map_err(construction)?;
            write_automaton(&c.dfa, &output, out)?;
            Ok(EXIT_OK)
        }
        Command::Shuffleperm {
            automata,
            output,
            build,
        } => {
            let ds = automata
                .iter()
                .map(|p| load(p))
                .collect::<Result<Vec<_>, _>>()?;
            let c = build_shuffle(&ds, &build.options()).map_err(construction)?;
            write_automaton(&c.dfa, &output, out)?;
            Ok(EXIT_OK)
        }
        Command::Compile {
            expr,
            output,
            fallback,
            build,
        } => {
            let f = load_expr(&expr)?;
            let opts = CompileOptions {
                build: build.options(),
                force_fallback: fallback,
            };
            let r = compile_with(&f.expr, &opts).map_err(compile_error)?;
            write_automaton(&r.dfa, &output, out)?;
            Ok(EXIT_OK)
        }
        Command::Member { automaton, word } => {
            let d = load(&automaton)?;
            let accepted = d.member(&word).map_err(usage)?;
            writeln!(out, "{}", if accepted { "accepted" } else { "rejected" }).map_err(usage)?;
            Ok(if accepted { EXIT_OK } else { EXIT_FALSE })
        }
        Command::Enumerate { automaton, max_len } => {
            let d = load(&automaton)?;
            for w in d.enumerate(max_len) {
                let text = if w.is_empty() {
                    "ε".to_string()
                } else {
                    d.alphabet().render(&w)
                };
                writeln!(out, "{text}").map_err(usage)?;
            }
            Ok(EXIT_OK)
        }
        Command::Dot { automaton } => {
            out.write_all(load(&automaton)?.to_dot().as_bytes())
                .map_err(usage)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            expr,
            max_len,
            build,
        } => {
            let f = load_expr(&expr)?;
            let opts = CompileOptions {
                build: build.options(),
                force_fallback: false,
            };
            let r = compile_with(&f.expr, &opts).map_err(compile_error)?;
            let report = cross_check(&f.expr, &r.dfa, max_len).map_err(usage)?;
            writeln!(out, "{report}").map_err(usage)?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FALSE })
        }
        Command::Stats {
            expr,
            format,
            build,
        } => {
            let f = load_expr(&expr)?;
            let opts = CompileOptions {
                build: build.options(),
                force_fallback: false,
            };
            let r = compile_with(&f.expr, &opts).map_err(compile_error)?;
            stats_rows(&r.constructions, format, &r.dfa, out).map_err(usage)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs one command. Returns the process exit code: 0 on success, 1 for a
/// negative `member` or failed `verify`, 2 for usage and input errors, 3
/// for construction errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}
