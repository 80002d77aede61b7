//! First-order formulas over relational vocabularies, with a built-in
//! Gaifman-distance predicate.

mod builtins;
mod eval;
mod interpret;
mod parse;
mod transform;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use builtins::{builtin, BUILTIN_NAMES};
pub use eval::{evaluate, holds, Valuation};
pub use interpret::{interpret_k, pbar_structure, pbar_vocabulary};
pub use parse::{parse, parse_with_vocab};
pub use transform::{
    basic_local, canonical_query, is_existential_positive, quantifier_rank, relativize,
    rename_free, to_pure_fo, to_pure_fo_graph,
};

pub type Var = String;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown relation symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol `{symbol}` has arity {expected}, used with {got} arguments")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        got: usize,
    },
    #[error("unbound free variable `{0}`")]
    UnboundVariable(String),
    #[error("element {0} out of range")]
    ElementOutOfRange(usize),
    #[error("formula is not over the graph vocabulary: {0}")]
    NotGraphVocabulary(String),
    #[error("invalid parameter tuple: {0}")]
    InvalidTuple(String),
    #[error("structure is not a graph")]
    NotAGraph,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
    Atom(String, Vec<Var>),
    Equal(Var, Var),
    /// Gaifman distance at most `r`.
    DistLe(usize, Var, Var),
    True,
    False,
}

impl Formula {
    pub fn exists(v: impl Into<Var>, body: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(body))
    }

    pub fn forall(v: impl Into<Var>, body: Formula) -> Formula {
        Formula::Forall(v.into(), Box::new(body))
    }

    /// `∃v1 ... ∃vk body`.
    pub fn exists_all<I, S>(vars: I, body: Formula) -> Formula
    where
        I: IntoIterator<Item = S>,
        I::IntoIter: DoubleEndedIterator,
        S: Into<Var>,
    {
        vars.into_iter()
            .rev()
            .fold(body, |acc, v| Formula::exists(v, acc))
    }

    pub fn not(body: Formula) -> Formula {
        Formula::Not(Box::new(body))
    }

    pub fn atom<S: Into<Var>>(symbol: &str, vars: impl IntoIterator<Item = S>) -> Formula {
        Formula::Atom(symbol.to_string(), vars.into_iter().map(Into::into).collect())
    }

    pub fn edge(x: impl Into<Var>, y: impl Into<Var>) -> Formula {
        Formula::Atom(crate::structure::EDGE.to_string(), vec![x.into(), y.into()])
    }

    pub fn eq(x: impl Into<Var>, y: impl Into<Var>) -> Formula {
        Formula::Equal(x.into(), y.into())
    }

    pub fn dist_le(r: usize, x: impl Into<Var>, y: impl Into<Var>) -> Formula {
        Formula::DistLe(r, x.into(), y.into())
    }

    /// Conjunction; a single conjunct is returned as is, none gives `true`.
    pub fn and(parts: Vec<Formula>) -> Formula {
        match parts.len() {
            0 => Formula::True,
            1 => parts.into_iter().next().unwrap(),
            _ => Formula::And(parts),
        }
    }

    /// Disjunction; a single disjunct is returned as is, none gives `false`.
    pub fn or(parts: Vec<Formula>) -> Formula {
        match parts.len() {
            0 => Formula::False,
            1 => parts.into_iter().next().unwrap(),
            _ => Formula::Or(parts),
        }
    }

    /// `a → b`, written `¬a ∨ b`.
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Or(vec![Formula::not(a), b])
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<Var>) {
        let mut note = |v: &'a str, bound: &Vec<&'a str>| {
            if !bound.contains(&v) {
                out.insert(v.to_string());
            }
        };
        match self {
            Formula::Exists(v, b) | Formula::Forall(v, b) => {
                bound.push(v);
                b.collect_free(bound, out);
                bound.pop();
            }
            Formula::And(ps) | Formula::Or(ps) => {
                for p in ps {
                    p.collect_free(bound, out);
                }
            }
            Formula::Not(b) => b.collect_free(bound, out),
            Formula::Atom(_, vs) => {
                for v in vs {
                    note(v, bound);
                }
            }
            Formula::Equal(x, y) | Formula::DistLe(_, x, y) => {
                note(x, bound);
                note(y, bound);
            }
            Formula::True | Formula::False => {}
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Exists(v, _) | Formula::Forall(v, _) => {
                out.insert(v.clone());
            }
            Formula::Atom(_, vs) => out.extend(vs.iter().cloned()),
            Formula::Equal(x, y) | Formula::DistLe(_, x, y) => {
                out.insert(x.clone());
                out.insert(y.clone());
            }
            _ => {}
        });
        out
    }

    /// Relation symbols used, with the arities they are used at.
    pub fn symbols(&self) -> BTreeSet<(String, usize)> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Atom(s, vs) = f {
                out.insert((s.clone(), vs.len()));
            }
        });
        out
    }

    pub fn uses_distance(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| found |= matches!(f, Formula::DistLe(..)));
        found
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Exists(_, b) | Formula::Forall(_, b) | Formula::Not(b) => b.visit(f),
            Formula::And(ps) | Formula::Or(ps) => ps.iter().for_each(|p| p.visit(f)),
            _ => {}
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Exists(v, b) => write!(f, "(exists {v} {b})"),
            Formula::Forall(v, b) => write!(f, "(forall {v} {b})"),
            Formula::And(ps) | Formula::Or(ps) if ps.is_empty() => {
                let empty = if matches!(self, Formula::And(_)) { "true" } else { "false" };
                f.write_str(empty)
            }
            Formula::And(ps) | Formula::Or(ps) => {
                let op = if matches!(self, Formula::And(_)) { "and" } else { "or" };
                write!(f, "({op}")?;
                for p in ps {
                    write!(f, " {p}")?;
                }
                f.write_str(")")
            }
            Formula::Not(b) => write!(f, "(not {b})"),
            Formula::Atom(s, vs) => write!(f, "(rel {s} {})", vs.join(" ")),
            Formula::Equal(x, y) => write!(f, "(= {x} {y})"),
            Formula::DistLe(r, x, y) => write!(f, "(dist<= {r} {x} {y})"),
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
        }
    }
}

/// Produces variable names not in a reserved set.
#[derive(Debug, Clone)]
pub(crate) struct Fresh {
    taken: BTreeSet<Var>,
    counter: usize,
}

impl Fresh {
    pub(crate) fn new(taken: BTreeSet<Var>) -> Self {
        Fresh { taken, counter: 0 }
    }

    pub(crate) fn avoiding(formulas: &[&Formula]) -> Self {
        let mut taken = BTreeSet::new();
        for f in formulas {
            taken.extend(f.all_vars());
        }
        Fresh::new(taken)
    }

    pub(crate) fn reserve(&mut self, v: &str) {
        self.taken.insert(v.to_string());
    }

    pub(crate) fn next(&mut self, stem: &str) -> Var {
        loop {
            let v = format!("{stem}{}", self.counter);
            self.counter += 1;
            if self.taken.insert(v.clone()) {
                return v;
            }
        }
    }
}
