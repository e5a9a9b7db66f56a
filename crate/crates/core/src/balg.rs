//! The `.balg` text format and the Płonka spec format built on it.
//!
//! ```text
//! # weak Kleene, h stands for 1/2
//! elements 0 h 1
//! meet
//! 0 h 0
//! h h h
//! 0 h 1
//! join
//! 0 h 1
//! h h h
//! 1 h 1
//! neg 1 h 0
//! zero 0
//! one 1
//! ```
//!
//! `#` starts a comment, blank lines are ignored, `elements` comes first and
//! `meet`/`join` are each followed by one row per element.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{AlgebraTable, TableError};
use crate::plonka::PlonkaSystem;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum BalgErrorKind {
    #[error("unknown element {0:?}")]
    UnknownToken(String),
    #[error("expected {expected} tokens, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("duplicate section `{0}`")]
    DuplicateSection(String),
    #[error("unknown section `{0}`")]
    UnknownSection(String),
    #[error("`elements` must come before `{0}`")]
    ElementsFirst(String),
    #[error("missing section `{0}`")]
    MissingSection(&'static str),
    #[error("table ends early: `{section}` needs {expected} rows")]
    ShortTable { section: &'static str, expected: usize },
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("cannot read {path}: {message}")]
    Include { path: String, message: String },
    #[error("in {path}: {inner}")]
    Nested { path: String, inner: Box<BalgError> },
    #[error("malformed link `{0}` (expected `x->y`)")]
    BadLink(String),
    #[error("{0}")]
    Plonka(String),
}

/// A parse error with the 1-based line it was found on (0 when the error
/// concerns the document as a whole).
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct BalgError {
    pub line: usize,
    pub kind: BalgErrorKind,
}

fn err<T>(line: usize, kind: BalgErrorKind) -> Result<T, BalgError> {
    Err(BalgError { line, kind })
}

/// Non-blank lines with comments stripped, as (line number, tokens).
fn tokenize(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let content = line.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            (!tokens.is_empty()).then_some((i + 1, tokens))
        })
        .collect()
}

struct Elements<'a> {
    names: Vec<&'a str>,
    index: HashMap<&'a str, usize>,
}

impl<'a> Elements<'a> {
    fn resolve(&self, line: usize, token: &str) -> Result<usize, BalgError> {
        self.index
            .get(token)
            .copied()
            .ok_or_else(|| BalgError { line, kind: BalgErrorKind::UnknownToken(token.into()) })
    }

    fn row(&self, line: usize, tokens: &[&str]) -> Result<Vec<usize>, BalgError> {
        if tokens.len() != self.names.len() {
            return err(line, BalgErrorKind::Arity { expected: self.names.len(), found: tokens.len() });
        }
        tokens.iter().map(|t| self.resolve(line, t)).collect()
    }
}

pub fn parse_balg(text: &str) -> Result<AlgebraTable, BalgError> {
    let lines = tokenize(text);
    let mut elements: Option<Elements> = None;
    let mut tables: HashMap<&'static str, Vec<Vec<usize>>> = HashMap::new();
    let mut neg = None;
    let mut zero = None;
    let mut one = None;
    let mut seen: HashMap<&str, usize> = HashMap::new();
    let mut cursor = lines.iter();
    while let Some((line, tokens)) = cursor.next() {
        let (line, head, rest) = (*line, tokens[0], &tokens[1..]);
        if !matches!(head, "elements" | "meet" | "join" | "neg" | "zero" | "one") {
            return err(line, BalgErrorKind::UnknownSection(head.into()));
        }
        if seen.insert(head, line).is_some() {
            return err(line, BalgErrorKind::DuplicateSection(head.into()));
        }
        if head == "elements" {
            let index: HashMap<&str, usize> = rest.iter().enumerate().map(|(i, &t)| (t, i)).collect();
            if index.len() != rest.len() {
                let dup = rest.iter().enumerate().find(|(i, t)| index[*t] != *i).map(|(_, t)| *t).unwrap_or_default();
                return err(line, BalgErrorKind::Table(TableError::DuplicateName(dup.into())));
            }
            if rest.is_empty() {
                return err(line, BalgErrorKind::Table(TableError::EmptyUniverse));
            }
            elements = Some(Elements { names: rest.to_vec(), index });
            continue;
        }
        let Some(el) = &elements else {
            return err(line, BalgErrorKind::ElementsFirst(head.into()));
        };
        let n = el.names.len();
        match head {
            "meet" | "join" => {
                let section = if head == "meet" { "meet" } else { "join" };
                if !rest.is_empty() {
                    return err(line, BalgErrorKind::Arity { expected: 0, found: rest.len() });
                }
                let mut rows = Vec::with_capacity(n);
                for _ in 0..n {
                    let Some((row_line, row)) = cursor.next() else {
                        return err(line, BalgErrorKind::ShortTable { section, expected: n });
                    };
                    rows.push(el.row(*row_line, row)?);
                }
                tables.insert(section, rows);
            }
            "neg" => neg = Some(el.row(line, rest)?),
            _ => {
                if rest.len() != 1 {
                    return err(line, BalgErrorKind::Arity { expected: 1, found: rest.len() });
                }
                let value = el.resolve(line, rest[0])?;
                if head == "zero" {
                    zero = Some(value);
                } else {
                    one = Some(value);
                }
            }
        }
    }
    let Some(el) = elements else {
        return err(0, BalgErrorKind::MissingSection("elements"));
    };
    let mut take = |section: &'static str| {
        tables.remove(section).ok_or(BalgError { line: 0, kind: BalgErrorKind::MissingSection(section) })
    };
    let (meet, join) = (take("meet")?, take("join")?);
    let at = |section: &str| seen.get(section).copied().unwrap_or(0);
    let mut alg =
        AlgebraTable::new(el.names.clone(), meet, join).map_err(|e| BalgError { line: at("meet"), kind: e.into() })?;
    if let Some(neg) = neg {
        alg = alg.with_neg(neg).map_err(|e| BalgError { line: at("neg"), kind: e.into() })?;
    }
    if let Some(z) = zero {
        alg = alg.with_zero(z).map_err(|e| BalgError { line: at("zero"), kind: e.into() })?;
    }
    if let Some(o) = one {
        alg = alg.with_one(o).map_err(|e| BalgError { line: at("one"), kind: e.into() })?;
    }
    Ok(alg)
}

pub fn print_balg(alg: &AlgebraTable) -> String {
    let n = alg.len();
    let name = |i: usize| alg.name(i);
    let mut out = String::new();
    let _ = writeln!(out, "elements {}", alg.names().join(" "));
    for (section, op) in [("meet", crate::algebra::BinOp::Meet), ("join", crate::algebra::BinOp::Join)] {
        let _ = writeln!(out, "{section}");
        for a in 0..n {
            let row: Vec<&str> = (0..n).map(|b| name(alg.op(op, a, b))).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
    }
    if let Some(neg) = alg.neg_table() {
        let row: Vec<&str> = neg.iter().map(|&b| name(b)).collect();
        let _ = writeln!(out, "neg {}", row.join(" "));
    }
    if let Some(z) = alg.zero() {
        let _ = writeln!(out, "zero {}", name(z));
    }
    if let Some(o) = alg.one() {
        let _ = writeln!(out, "one {}", name(o));
    }
    out
}

/// Parses a Płonka spec:
///
/// ```text
/// index chain2.balg
/// component i bool2.balg
/// component j one.balg
/// link i j: 0->h 1->h
/// ```
///
/// `load` maps a file reference to its `.balg` text.
pub fn parse_plonka_spec<F>(text: &str, mut load: F) -> Result<PlonkaSystem, BalgError>
where
    F: FnMut(&str) -> Result<String, String>,
{
    let mut read = |line: usize, path: &str| -> Result<AlgebraTable, BalgError> {
        let body = load(path)
            .map_err(|message| BalgError { line, kind: BalgErrorKind::Include { path: path.into(), message } })?;
        parse_balg(&body).map_err(|inner| BalgError {
            line,
            kind: BalgErrorKind::Nested { path: path.into(), inner: Box::new(inner) },
        })
    };
    let mut index: Option<AlgebraTable> = None;
    let mut components: BTreeMap<usize, AlgebraTable> = BTreeMap::new();
    let mut pending_links = Vec::new();
    for (line, tokens) in tokenize(text) {
        match tokens[0] {
            "index" => {
                if index.is_some() {
                    return err(line, BalgErrorKind::DuplicateSection("index".into()));
                }
                if tokens.len() != 2 {
                    return err(line, BalgErrorKind::Arity { expected: 2, found: tokens.len() });
                }
                index = Some(read(line, tokens[1])?);
            }
            "component" => {
                let Some(idx) = &index else {
                    return err(line, BalgErrorKind::ElementsFirst("component".into()));
                };
                if tokens.len() != 3 {
                    return err(line, BalgErrorKind::Arity { expected: 3, found: tokens.len() });
                }
                let at = idx
                    .index_of(tokens[1])
                    .ok_or_else(|| BalgError { line, kind: BalgErrorKind::UnknownToken(tokens[1].into()) })?;
                if components.contains_key(&at) {
                    return err(line, BalgErrorKind::DuplicateSection(format!("component {}", tokens[1])));
                }
                components.insert(at, read(line, tokens[2])?);
            }
            "link" => pending_links.push((line, tokens)),
            other => return err(line, BalgErrorKind::UnknownSection(other.into())),
        }
    }
    let Some(index) = index else {
        return err(0, BalgErrorKind::MissingSection("index"));
    };
    if let Some(missing) = (0..index.len()).find(|i| !components.contains_key(i)) {
        return err(0, BalgErrorKind::Plonka(format!("no component for index element {}", index.name(missing))));
    }
    let components: Vec<AlgebraTable> = components.into_values().collect();
    let mut links = BTreeMap::new();
    for (line, tokens) in pending_links {
        // `link i j: t->u ...`; the colon may be attached to `j` or stand alone.
        let mut words: Vec<&str> = Vec::new();
        for t in &tokens[1..] {
            match t.strip_suffix(':') {
                Some("") => words.push(":"),
                Some(w) => words.extend([w, ":"]),
                None => words.push(t),
            }
        }
        if words.len() < 3 || words[2] != ":" {
            return err(line, BalgErrorKind::BadLink(tokens.join(" ")));
        }
        let resolve =
            |t: &str| index.index_of(t).ok_or_else(|| BalgError { line, kind: BalgErrorKind::UnknownToken(t.into()) });
        let (i, j) = (resolve(words[0])?, resolve(words[1])?);
        let (src, dst) = (&components[i], &components[j]);
        let mut map = vec![None; src.len()];
        for pair in &words[3..] {
            let (x, y) = pair
                .split_once("->")
                .ok_or_else(|| BalgError { line, kind: BalgErrorKind::BadLink((*pair).into()) })?;
            let x = src.index_of(x).ok_or_else(|| BalgError { line, kind: BalgErrorKind::UnknownToken(x.into()) })?;
            let y = dst.index_of(y).ok_or_else(|| BalgError { line, kind: BalgErrorKind::UnknownToken(y.into()) })?;
            map[x] = Some(y);
        }
        let map: Option<Vec<usize>> = map.into_iter().collect();
        let Some(map) = map else {
            return err(line, BalgErrorKind::Arity { expected: src.len(), found: words.len() - 3 });
        };
        if links.insert((i, j), map).is_some() {
            return err(line, BalgErrorKind::DuplicateSection(format!("link {} {}", words[0], words[1])));
        }
    }
    Ok(PlonkaSystem { index, components, links })
}

/// The spec text for `system`, naming the index file and one file per
/// component. Diagonal links are omitted.
pub fn print_plonka_spec(system: &PlonkaSystem, index_file: &str, component_files: &[String]) -> String {
    let idx = &system.index;
    let mut out = format!("index {index_file}\n");
    for (i, file) in component_files.iter().enumerate() {
        let _ = writeln!(out, "component {} {file}", idx.name(i));
    }
    for (&(i, j), map) in &system.links {
        if i == j {
            continue;
        }
        let (src, dst) = (&system.components[i], &system.components[j]);
        let pairs: Vec<String> =
            map.iter().enumerate().map(|(x, &y)| format!("{}->{}", src.name(x), dst.name(y))).collect();
        let _ = writeln!(out, "link {} {}: {}", idx.name(i), idx.name(j), pairs.join(" "));
    }
    out
}
