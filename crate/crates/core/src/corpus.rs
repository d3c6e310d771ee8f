//! The golden corpus of example programs and their expected verdicts.
//!
//! One row per line: `LABEL  program  ⊢  TYPE|FAIL  [where x : T; y : U]`.
//! Lines starting with `--` and blank lines are skipped. `where` entries
//! extend the prelude for that row only.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::infer::infer_top;
use crate::parser::{normalize_type, parse_program, parse_type, render_type, ParseError};
use crate::syntax::{equivalent_up_to_free_renaming, Name, Term, Type, TypeEnv};

/// The bundled corpus.
pub const GOLDEN: &str = include_str!("../corpus/golden.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expected {
    Type(Type),
    Fail,
}

#[derive(Clone, Debug)]
pub struct Row {
    pub label: String,
    pub source: String,
    pub term: Term,
    pub expected: Expected,
    pub locals: Vec<(Name, Type)>,
    pub line: usize,
}

impl Row {
    /// `base` extended with the row's local signatures.
    pub fn env(&self, base: &TypeEnv) -> TypeEnv {
        let mut g = base.clone();
        for (x, t) in &self.locals {
            g.push(x.clone(), t.clone());
        }
        g
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        #[source]
        source: ParseError,
    },
}

pub fn parse_corpus(text: &str) -> Result<Vec<Row>, CorpusError> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with("--") {
            continue;
        }
        let fmt_err = |message: &str| CorpusError::Format {
            line,
            message: message.to_string(),
        };
        let parse_err = |source| CorpusError::Parse { line, source };
        let (label, rest) = s
            .split_once(char::is_whitespace)
            .ok_or_else(|| fmt_err("missing term"))?;
        let (source, rhs) = rest.split_once('⊢').ok_or_else(|| fmt_err("missing `⊢`"))?;
        let (verdict, locals) = match rhs.split_once(" where ") {
            Some((v, w)) => (v, Some(w)),
            None => (rhs, None),
        };
        let expected = match verdict.trim() {
            "FAIL" => Expected::Fail,
            t => Expected::Type(parse_type(t).map_err(parse_err)?),
        };
        let mut sigs = Vec::new();
        for decl in locals.into_iter().flat_map(|w| w.split(';')) {
            let (x, t) = decl
                .split_once(" : ")
                .ok_or_else(|| fmt_err("bad `where` entry"))?;
            let x = x.trim();
            let x = x
                .strip_prefix('(')
                .and_then(|x| x.strip_suffix(')'))
                .unwrap_or(x);
            sigs.push((Name::from(x), parse_type(t.trim()).map_err(parse_err)?));
        }
        let source = source.trim().to_string();
        let term = parse_program(&source).map_err(parse_err)?;
        rows.push(Row {
            label: label.to_string(),
            source,
            term,
            expected,
            locals: sigs,
            line,
        });
    }
    Ok(rows)
}

pub fn golden_rows() -> Vec<Row> {
    parse_corpus(GOLDEN).expect("bundled corpus parses")
}

#[derive(Clone, Debug)]
pub struct RowOutcome {
    pub label: String,
    pub passed: bool,
    /// The inferred type, or the error message.
    pub actual: Result<Type, String>,
}

impl RowOutcome {
    /// `LABEL  PASS|FAIL  detail`.
    pub fn summary(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let detail = match &self.actual {
            Ok(t) => render_type(t, true),
            Err(e) => format!("error: {e}"),
        };
        format!("{:<7} {verdict}  {detail}", self.label)
    }
}

pub fn run_row(row: &Row, base: &TypeEnv) -> RowOutcome {
    let actual = infer_top(&row.env(base), &row.term).map_err(|e| e.to_string());
    let passed = match (&row.expected, &actual) {
        (Expected::Fail, Err(_)) => true,
        (Expected::Type(want), Ok(got)) => {
            equivalent_up_to_free_renaming(&normalize_type(got), want)
        }
        _ => false,
    };
    RowOutcome {
        label: row.label.clone(),
        passed,
        actual,
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub outcomes: Vec<RowOutcome>,
    pub elapsed: Duration,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.outcomes.iter().filter(|o| o.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

pub fn run_corpus(rows: &[Row], base: &TypeEnv) -> Report {
    let start = Instant::now();
    let outcomes = rows.iter().map(|r| run_row(r, base)).collect();
    Report {
        outcomes,
        elapsed: start.elapsed(),
    }
}
