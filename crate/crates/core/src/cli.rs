//! Command-line driver. Results go to `out`, diagnostics to `err`.
//!
//! Exit codes: 0 success, 1 type error or failing check, 2 usage, I/O or
//! syntax error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::corpus::{golden_rows, parse_corpus, run_corpus};
use crate::declcheck::check_typing;
use crate::parser::{
    parse_fterm, parse_program, parse_type, render_term, render_type_with, ParseError,
};
use crate::prelude::prelude;
use crate::syntax::{KindEnv, Term, Type, TypeEnv};
use crate::systemf::{display_names, f_typecheck, render_fterm};
use crate::translate::{elaborate, from_systemf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_TYPE_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "freezeml",
    version,
    about = "FreezeML type inference and System F translation"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone, Copy)]
struct Opts {
    /// Start from an empty environment instead of the prelude.
    #[arg(long, global = true)]
    no_prelude: bool,
    /// Print types with ∀ and →.
    #[arg(long, global = true, conflicts_with = "ascii")]
    unicode: bool,
    /// Print types with `forall` and `->` (default).
    #[arg(long, global = true)]
    ascii: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Infer the principal type of a program.
    Infer {
        file: PathBuf,
        /// Also print the System F elaboration.
        #[arg(long)]
        show_elab: bool,
    },
    /// Check a program against a type; free type variables are rigid.
    Check {
        file: PathBuf,
        #[arg(long = "type", value_name = "TYPE")]
        ty: String,
    },
    /// Translate a program to System F.
    Elaborate { file: PathBuf },
    /// Translate a System F term to FreezeML.
    Import { file: PathBuf },
    /// Run the golden corpus.
    Golden {
        /// Corpus file to use instead of the bundled one.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

/// Runs the driver on `args`, which include the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut d = Driver {
        opts: cli.opts,
        out,
        err,
    };
    match cli.cmd {
        Cmd::Infer { file, show_elab } => d.infer(&file, show_elab),
        Cmd::Check { file, ty } => d.check(&file, &ty),
        Cmd::Elaborate { file } => d.elaborate(&file),
        Cmd::Import { file } => d.import(&file),
        Cmd::Golden { corpus } => d.golden(corpus.as_deref()),
    }
}

struct Driver<'a> {
    opts: Opts,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Driver<'_> {
    fn env(&self) -> TypeEnv {
        if self.opts.no_prelude {
            TypeEnv::new()
        } else {
            prelude()
        }
    }

    fn ty(&self, t: &Type) -> String {
        render_type_with(t, true, self.opts.unicode)
    }

    fn fail(&mut self, code: i32, msg: impl std::fmt::Display) -> i32 {
        let _ = writeln!(self.err, "error: {msg}");
        code
    }

    fn read(&mut self, path: &Path) -> Result<String, i32> {
        std::fs::read_to_string(path)
            .map_err(|e| self.fail(EXIT_USAGE, format!("{}: {e}", path.display())))
    }

    fn syntax(&mut self, path: &Path, e: ParseError) -> i32 {
        let span = e.span();
        self.fail(EXIT_USAGE, format!("{}:{span}: {e}", path.display()))
    }

    fn program(&mut self, path: &Path) -> Result<Term, i32> {
        let src = self.read(path)?;
        parse_program(&src).map_err(|e| self.syntax(path, e))
    }

    fn infer(&mut self, path: &Path, show_elab: bool) -> i32 {
        let m = match self.program(path) {
            Ok(m) => m,
            Err(code) => return code,
        };
        let gamma = self.env();
        match crate::infer::infer_top(&gamma, &m) {
            Ok(ty) => {
                let _ = writeln!(self.out, "{} : {}", render_term(&m), self.ty(&ty));
                if show_elab {
                    match elaborate(&KindEnv::new(), &gamma, &m) {
                        Ok((f, _)) => {
                            let _ = writeln!(
                                self.out,
                                "{}",
                                render_fterm(&display_names(&f), self.opts.unicode)
                            );
                        }
                        Err(e) => return self.fail(EXIT_TYPE_ERROR, e.readable()),
                    }
                }
                EXIT_OK
            }
            Err(e) => {
                let span = e.span;
                self.fail(EXIT_TYPE_ERROR, format!("{}:{span}: {e}", path.display()))
            }
        }
    }

    fn check(&mut self, path: &Path, ty: &str) -> i32 {
        let want = match parse_type(ty) {
            Ok(t) => t,
            Err(e) => return self.fail(EXIT_USAGE, format!("--type: {e}")),
        };
        let m = match self.program(path) {
            Ok(m) => m,
            Err(code) => return code,
        };
        let delta: KindEnv = want.ftv().into_iter().collect();
        match check_typing(&delta, &self.env(), &m, &want) {
            Ok(true) => {
                let _ = writeln!(self.out, "ok");
                EXIT_OK
            }
            Ok(false) => {
                let shown = self.ty(&want);
                self.fail(EXIT_TYPE_ERROR, format!("term does not have type {shown}"))
            }
            Err(e) => self.fail(EXIT_TYPE_ERROR, e),
        }
    }

    fn elaborate(&mut self, path: &Path) -> i32 {
        let m = match self.program(path) {
            Ok(m) => m,
            Err(code) => return code,
        };
        let gamma = self.env();
        let (f, _) = match elaborate(&KindEnv::new(), &gamma, &m) {
            Ok(r) => r,
            Err(e) => {
                let span = e.span;
                return self.fail(
                    EXIT_TYPE_ERROR,
                    format!("{}:{span}: {}", path.display(), e.readable()),
                );
            }
        };
        let f = display_names(&f);
        match f_typecheck(&KindEnv::new(), &gamma, &f) {
            Ok(ty) => {
                let _ = writeln!(
                    self.out,
                    "{} : {}",
                    render_fterm(&f, self.opts.unicode),
                    self.ty(&ty)
                );
                EXIT_OK
            }
            Err(e) => self.fail(
                EXIT_TYPE_ERROR,
                format!("elaboration does not typecheck: {e}"),
            ),
        }
    }

    fn import(&mut self, path: &Path) -> i32 {
        let src = match self.read(path) {
            Ok(s) => s,
            Err(code) => return code,
        };
        let t = match parse_fterm(&src) {
            Ok(t) => t,
            Err(e) => return self.syntax(path, e),
        };
        match from_systemf(&KindEnv::new(), &self.env(), &t) {
            Ok(m) => {
                let _ = writeln!(self.out, "{}", render_term(&m));
                EXIT_OK
            }
            Err(e) => self.fail(EXIT_TYPE_ERROR, e),
        }
    }

    fn golden(&mut self, corpus: Option<&Path>) -> i32 {
        let rows = match corpus {
            None => golden_rows(),
            Some(p) => {
                let text = match self.read(p) {
                    Ok(t) => t,
                    Err(code) => return code,
                };
                match parse_corpus(&text) {
                    Ok(r) => r,
                    Err(e) => return self.fail(EXIT_USAGE, format!("{}: {e}", p.display())),
                }
            }
        };
        let report = run_corpus(&rows, &self.env());
        for o in &report.outcomes {
            let _ = writeln!(self.out, "{}", o.summary());
        }
        let _ = writeln!(
            self.out,
            "{}/{} rows passed",
            report.passed(),
            report.outcomes.len()
        );
        if report.all_passed() {
            EXIT_OK
        } else {
            EXIT_TYPE_ERROR
        }
    }
}
