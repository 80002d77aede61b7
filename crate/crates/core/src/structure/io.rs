//! Line-oriented structure files.
//!
//! ```text
//! # comment
//! vocab R/2 P/1
//! domain 4
//! tuple R 0 1
//! tuple P 3
//! ```
//!
//! Graphs may use `graph <n>` followed by `edge <u> <v>` lines; edges are
//! symmetrized. Comment lines of the form `# label <id> <name>` attach
//! labels to elements.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{Element, Structure, StructureError, Vocabulary};

enum Header {
    None,
    General { vocab: Vocabulary, domain: Option<usize> },
    Graph(usize),
}

fn syntax(line: usize, message: impl Into<String>) -> StructureError {
    StructureError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_num(tok: &str, line: usize) -> Result<usize, StructureError> {
    tok.parse::<usize>()
        .map_err(|_| syntax(line, format!("expected a non-negative integer, found `{tok}`")))
}

pub fn parse_structure(text: &str) -> Result<Structure, StructureError> {
    let mut header = Header::None;
    let mut tuples: Vec<(String, Vec<Element>)> = Vec::new();
    let mut edges: Vec<(Element, Element)> = Vec::new();
    let mut labels = BTreeMap::new();

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let mut toks = comment.split_whitespace();
            if toks.next() == Some("label") {
                let id = toks.next().ok_or_else(|| syntax(ln, "label without id"))?;
                let id = parse_num(id, ln)?;
                let name: Vec<&str> = toks.collect();
                if name.is_empty() {
                    return Err(syntax(ln, "label without name"));
                }
                labels.insert(id, name.join(" "));
            }
            continue;
        }
        let mut toks = line.split_whitespace();
        let keyword = toks.next().unwrap_or_default();
        let rest: Vec<&str> = toks.collect();
        match keyword {
            "vocab" => {
                if !matches!(header, Header::None) {
                    return Err(syntax(ln, "duplicate header"));
                }
                let mut syms = Vec::new();
                for tok in &rest {
                    let (name, arity) = tok
                        .split_once('/')
                        .ok_or_else(|| syntax(ln, format!("expected NAME/ARITY, found `{tok}`")))?;
                    if name.is_empty() {
                        return Err(syntax(ln, "empty symbol name"));
                    }
                    syms.push((name.to_string(), parse_num(arity, ln)?));
                }
                let vocab = Vocabulary::new(syms).map_err(|e| syntax(ln, e.to_string()))?;
                header = Header::General { vocab, domain: None };
            }
            "domain" => match &mut header {
                Header::General { domain, .. } if domain.is_none() => {
                    if rest.len() != 1 {
                        return Err(syntax(ln, "expected `domain <n>`"));
                    }
                    *domain = Some(parse_num(rest[0], ln)?);
                }
                _ => return Err(syntax(ln, "`domain` must follow a single `vocab` line")),
            },
            "tuple" => {
                if !matches!(header, Header::General { domain: Some(_), .. }) {
                    return Err(syntax(ln, "`tuple` before `vocab` and `domain`"));
                }
                let (name, ids) = rest
                    .split_first()
                    .ok_or_else(|| syntax(ln, "expected `tuple <name> <id>...`"))?;
                let ids = ids
                    .iter()
                    .map(|t| parse_num(t, ln))
                    .collect::<Result<Vec<_>, _>>()?;
                tuples.push((name.to_string(), ids));
            }
            "graph" => {
                if !matches!(header, Header::None) {
                    return Err(syntax(ln, "duplicate header"));
                }
                if rest.len() != 1 {
                    return Err(syntax(ln, "expected `graph <n>`"));
                }
                header = Header::Graph(parse_num(rest[0], ln)?);
            }
            "edge" => {
                if !matches!(header, Header::Graph(_)) {
                    return Err(syntax(ln, "`edge` outside a `graph` file"));
                }
                if rest.len() != 2 {
                    return Err(syntax(ln, "expected `edge <u> <v>`"));
                }
                edges.push((parse_num(rest[0], ln)?, parse_num(rest[1], ln)?));
            }
            other => return Err(syntax(ln, format!("unknown keyword `{other}`"))),
        }
    }

    let s = match header {
        Header::None => return Err(syntax(0, "missing `vocab` or `graph` header")),
        Header::General { domain: None, .. } => return Err(syntax(0, "missing `domain` line")),
        Header::General {
            vocab,
            domain: Some(n),
        } => Structure::new(vocab, n, tuples)?,
        Header::Graph(n) => Structure::graph(n, edges)?,
    };
    if let Some((&e, _)) = labels.iter().find(|(&e, _)| e >= s.size()) {
        return Err(StructureError::ElementOutOfRange {
            element: e,
            size: s.size(),
        });
    }
    Ok(s.with_labels(labels))
}

pub fn write_structure(s: &Structure) -> String {
    let mut out = String::new();
    if s.is_graph() {
        let _ = writeln!(out, "graph {}", s.size());
    } else {
        let _ = writeln!(out, "vocab {}", s.vocab());
        let _ = writeln!(out, "domain {}", s.size());
    }
    for (e, l) in s.labels() {
        let _ = writeln!(out, "# label {e} {l}");
    }
    if s.is_graph() {
        for (u, v) in s.edges() {
            let _ = writeln!(out, "edge {u} {v}");
        }
    } else {
        for (i, t) in s.tuples() {
            let _ = write!(out, "tuple {}", s.vocab().symbols()[i].name);
            for e in t {
                let _ = write!(out, " {e}");
            }
            out.push('\n');
        }
    }
    out
}
