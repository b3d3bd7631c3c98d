//! Line-oriented text formats for instances (`mssc 1`) and set-cover inputs
//! (`setcover 1`). Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use mssc_core::exact::SetCoverInstance;
use mssc_core::{Instance, RawInstance};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unexpected end of input: {0}")]
    Truncated(String),
    #[error("invalid instance: {0}")]
    Invalid(String),
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }

    /// Next meaningful line as (1-indexed line number, tokens).
    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), FormatError> {
        for (k, line) in self.inner.by_ref() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            return Ok((k + 1, line.split_whitespace().collect()));
        }
        Err(FormatError::Truncated(format!("expected {what}")))
    }

    fn finish(&mut self) -> Result<(), FormatError> {
        match self.next("") {
            Ok((line, _)) => Err(syntax(line, "trailing content")),
            Err(_) => Ok(()),
        }
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn number(line: usize, tok: &str) -> Result<usize, FormatError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected a nonnegative integer, found `{tok}`")))
}

fn expect_header(lines: &mut Lines<'_>, magic: &str) -> Result<(), FormatError> {
    let (line, toks) = lines.next("header")?;
    match toks.as_slice() {
        [m, "1"] if *m == magic => Ok(()),
        [m, v] if *m == magic => Err(syntax(line, format!("unsupported version {v}"))),
        _ => Err(syntax(line, format!("expected `{magic} 1`"))),
    }
}

/// `<keyword> <k> <k ids>`, checking the declared count.
fn counted_list(line: usize, toks: &[&str], keyword: &str) -> Result<Vec<usize>, FormatError> {
    if toks.first() != Some(&keyword) || toks.len() < 2 {
        return Err(syntax(line, format!("expected `{keyword} <k> <ids>`")));
    }
    let k = number(line, toks[1])?;
    let ids = toks[2..]
        .iter()
        .map(|t| number(line, t))
        .collect::<Result<Vec<_>, _>>()?;
    if ids.len() != k {
        return Err(syntax(line, format!("declared {k} ids, found {}", ids.len())));
    }
    Ok(ids)
}

/// Parses without semantic validation.
pub fn parse_raw_instance(text: &str) -> Result<RawInstance, FormatError> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, "mssc")?;
    let (line, toks) = lines.next("`n <int> T <int>`")?;
    let (n, horizon) = match toks.as_slice() {
        ["n", n, "T", t] => (number(line, n)?, number(line, t)?),
        _ => return Err(syntax(line, "expected `n <int> T <int>`")),
    };
    let (line, toks) = lines.next("`pi0 <ids>`")?;
    if toks.first() != Some(&"pi0") {
        return Err(syntax(line, "expected `pi0 <ids>`"));
    }
    let pi0 = toks[1..]
        .iter()
        .map(|t| number(line, t))
        .collect::<Result<Vec<_>, _>>()?;
    let mut requests = Vec::with_capacity(horizon);
    for _ in 0..horizon {
        let (line, toks) = lines.next("`req <k> <ids>`")?;
        requests.push(counted_list(line, &toks, "req")?);
    }
    lines.finish()?;
    Ok(RawInstance { n, pi0, requests })
}

pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    parse_raw_instance(text)?.into_instance().map_err(|violations| {
        let msgs: Vec<String> = violations.iter().map(ToString::to_string).collect();
        FormatError::Invalid(msgs.join("; "))
    })
}

pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::from("mssc 1\n");
    let _ = writeln!(out, "n {} T {}", inst.n(), inst.horizon());
    out.push_str("pi0");
    for e in inst.pi0().order() {
        let _ = write!(out, " {e}");
    }
    out.push('\n');
    for req in inst.requests() {
        let _ = write!(out, "req {}", req.len());
        for e in req.members() {
            let _ = write!(out, " {e}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_setcover(text: &str) -> Result<SetCoverInstance, FormatError> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, "setcover")?;
    let (line, toks) = lines.next("`elements <int> sets <int>`")?;
    let (elements, m) = match toks.as_slice() {
        ["elements", e, "sets", m] => (number(line, e)?, number(line, m)?),
        _ => return Err(syntax(line, "expected `elements <int> sets <int>`")),
    };
    let mut sets = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, toks) = lines.next("`set <k> <ids>`")?;
        sets.push(counted_list(line, &toks, "set")?);
    }
    lines.finish()?;
    SetCoverInstance::new(elements, sets).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn serialize_setcover(sc: &SetCoverInstance) -> String {
    let mut out = String::from("setcover 1\n");
    let _ = writeln!(out, "elements {} sets {}", sc.elements(), sc.sets().len());
    for set in sc.sets() {
        let _ = write!(out, "set {}", set.len());
        for e in set {
            let _ = write!(out, " {e}");
        }
        out.push('\n');
    }
    out
}
