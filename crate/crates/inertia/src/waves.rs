//! Line-oriented wave text.
//!
//! ```text
//! # comment
//! u = 0 | [0,1) [2,3) [4,inf)
//! z = 1 |
//! ```
//!
//! Each line names a signal, gives its value before the first interval and
//! lists disjoint increasing intervals over which the value is flipped.
//! Closed right ends `[a,b]` are accepted and read as `[a,b)`.

use std::fmt::Write as _;

use inertia_core::{Corpus, Signal, Time};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WaveError {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },
    #[error("invalid signal name `{0}`")]
    InvalidName(String),
    #[error("duplicate signal name `{0}`")]
    DuplicateName(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("expected `name = <0|1> | intervals`")]
    Shape,
    #[error("initial value must be 0 or 1, got `{0}`")]
    Initial(String),
    #[error("malformed interval near `{0}`")]
    Interval(String),
    #[error("bad time `{text}`: {source}")]
    Time { text: String, source: inertia_core::ParseTimeError },
    #[error(transparent)]
    Signal(#[from] inertia_core::Error),
    #[error("invalid signal name `{0}`")]
    InvalidName(String),
    #[error("duplicate signal name `{0}`")]
    DuplicateName(String),
}

/// Named signals in file order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WaveDoc {
    entries: Vec<(String, Signal)>,
}

pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl WaveDoc {
    pub fn new() -> WaveDoc {
        WaveDoc::default()
    }

    pub fn push(&mut self, name: impl Into<String>, signal: Signal) -> Result<(), WaveError> {
        let name = name.into();
        if !is_identifier(&name) {
            return Err(WaveError::InvalidName(name));
        }
        if self.get(&name).is_some() {
            return Err(WaveError::DuplicateName(name));
        }
        self.entries.push((name, signal));
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Signal> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn entries(&self) -> &[(String, Signal)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn signals(&self) -> impl Iterator<Item = &Signal> {
        self.entries.iter().map(|(_, s)| s)
    }

    pub fn to_corpus(&self) -> Corpus {
        Corpus::from_entries(self.entries.iter().cloned()).expect("names are unique")
    }
}

fn parse_time(text: &str) -> Result<Time, ParseErrorKind> {
    text.parse().map_err(|source| ParseErrorKind::Time { text: text.trim().to_string(), source })
}

fn parse_intervals(mut rest: &str) -> Result<Vec<(Time, Option<Time>)>, ParseErrorKind> {
    let mut out = Vec::new();
    loop {
        rest = rest.trim_start();
        if rest.is_empty() {
            return Ok(out);
        }
        let bad = || ParseErrorKind::Interval(rest.chars().take(16).collect());
        let body = rest.strip_prefix('[').ok_or_else(bad)?;
        let close = body.find([')', ']']).ok_or_else(bad)?;
        let (a, b) = body[..close].split_once(',').ok_or_else(bad)?;
        let start = parse_time(a)?;
        let end = match b.trim() {
            "inf" | "+inf" => None,
            b => Some(parse_time(b)?),
        };
        out.push((start, end));
        rest = &body[close + 1..];
    }
}

fn parse_line(line: &str) -> Result<(String, Signal), ParseErrorKind> {
    let (name, rhs) = line.split_once('=').ok_or(ParseErrorKind::Shape)?;
    let name = name.trim();
    if !is_identifier(name) {
        return Err(ParseErrorKind::InvalidName(name.to_string()));
    }
    let (initial, intervals) = rhs.split_once('|').ok_or(ParseErrorKind::Shape)?;
    let initial = match initial.trim() {
        "0" => false,
        "1" => true,
        other => return Err(ParseErrorKind::Initial(other.to_string())),
    };
    let signal = Signal::from_intervals(initial, &parse_intervals(intervals)?)?;
    Ok((name.to_string(), signal))
}

pub fn parse_waves(text: &str) -> Result<WaveDoc, WaveError> {
    let mut doc = WaveDoc::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fail = |kind| WaveError::Parse { line: i + 1, kind };
        let (name, signal) = parse_line(line).map_err(fail)?;
        if doc.get(&name).is_some() {
            return Err(fail(ParseErrorKind::DuplicateName(name)));
        }
        doc.entries.push((name, signal));
    }
    Ok(doc)
}

pub fn emit_waves(doc: &WaveDoc) -> String {
    let mut out = String::new();
    for (name, signal) in &doc.entries {
        writeln!(out, "{name} = {signal}").expect("writing to a String");
    }
    out
}
