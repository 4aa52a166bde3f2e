//! The `poset v1` text format.
//!
//! ```text
//! poset v1
//! # comments and blank lines are ignored
//! element p1
//! element t
//! cover p1 t        # p1 is covered by t
//! ```

use std::collections::HashSet;

use super::RootPoset;
use crate::error::{Error, Result};

pub const POSET_HEADER: &str = "poset v1";

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Strips a trailing `#` comment and surrounding whitespace.
pub(crate) fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

pub(crate) fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s
            .chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '/' | '\''))
}

pub fn parse_poset(text: &str) -> Result<RootPoset> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, content(l)))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, POSET_HEADER)) => {}
        Some((n, other)) => {
            return Err(parse_err(n, format!("expected header `{POSET_HEADER}`, found `{other}`")))
        }
        None => return Err(parse_err(1, "empty file")),
    }
    let mut ids: Vec<String> = Vec::new();
    let mut seen = HashSet::new();
    let mut covers: Vec<(String, String)> = Vec::new();
    for (n, line) in lines {
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            ["element", id] => {
                if !is_identifier(id) {
                    return Err(parse_err(n, format!("invalid identifier `{id}`")));
                }
                if !seen.insert(id.to_string()) {
                    return Err(parse_err(n, format!("duplicate element `{id}`")));
                }
                ids.push(id.to_string());
            }
            ["cover", lo, hi] => {
                for id in [lo, hi] {
                    if !seen.contains(*id) {
                        return Err(parse_err(n, format!("undeclared element `{id}`")));
                    }
                }
                if lo == hi {
                    return Err(parse_err(n, format!("`{lo}` cannot cover itself")));
                }
                covers.push((lo.to_string(), hi.to_string()));
            }
            [kw, ..] => return Err(parse_err(n, format!("unrecognised statement `{kw}`"))),
            [] => unreachable!(),
        }
    }
    if ids.is_empty() {
        return Err(parse_err(1, "no elements declared"));
    }
    RootPoset::new(&ids, &covers)
}

/// Writes the poset with its covering pairs in canonical order.
pub fn write_poset(p: &RootPoset) -> String {
    let mut out = format!("{POSET_HEADER}\n");
    for id in p.ids() {
        out.push_str(&format!("element {id}\n"));
    }
    let mut covers: Vec<(&str, &str)> =
        p.covers().iter().map(|&(a, b)| (p.id(a), p.id(b))).collect();
    covers.sort_unstable();
    for (a, b) in covers {
        out.push_str(&format!("cover {a} {b}\n"));
    }
    out
}
