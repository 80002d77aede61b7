use std::collections::{BTreeMap, HashSet};

use super::{Formula, LogicError};
use crate::structure::{bfs_distances, gaifman_graph, Element, Structure};

/// Assignment of elements to free variables.
pub type Valuation = BTreeMap<String, Element>;

enum Table {
    Unary(Vec<bool>),
    Binary(Vec<bool>),
    Wide(HashSet<Vec<Element>>),
}

enum Node {
    Exists(usize, Box<Node>),
    Forall(usize, Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Not(Box<Node>),
    Rel(usize, Vec<usize>),
    Eq(usize, usize),
    Dist(usize, usize, usize),
    Const(bool),
}

struct Compiler<'s> {
    structure: &'s Structure,
    scope: Vec<(String, usize)>,
    slots: usize,
}

impl Compiler<'_> {
    fn slot(&self, v: &str) -> Result<usize, LogicError> {
        self.scope
            .iter()
            .rev()
            .find(|(name, _)| name == v)
            .map(|&(_, s)| s)
            .ok_or_else(|| LogicError::UnboundVariable(v.to_string()))
    }

    fn bind(&mut self, v: &str) -> usize {
        let s = self.slots;
        self.slots += 1;
        self.scope.push((v.to_string(), s));
        s
    }

    fn compile(&mut self, f: &Formula) -> Result<Node, LogicError> {
        Ok(match f {
            Formula::Exists(v, b) | Formula::Forall(v, b) => {
                let s = self.bind(v);
                let body = Box::new(self.compile(b)?);
                self.scope.pop();
                if matches!(f, Formula::Exists(..)) {
                    Node::Exists(s, body)
                } else {
                    Node::Forall(s, body)
                }
            }
            Formula::And(ps) => Node::And(ps.iter().map(|p| self.compile(p)).collect::<Result<_, _>>()?),
            Formula::Or(ps) => Node::Or(ps.iter().map(|p| self.compile(p)).collect::<Result<_, _>>()?),
            Formula::Not(b) => Node::Not(Box::new(self.compile(b)?)),
            Formula::Atom(name, vs) => {
                let vocab = self.structure.vocab();
                let idx = vocab
                    .index_of(name)
                    .ok_or_else(|| LogicError::UnknownSymbol(name.clone()))?;
                let arity = vocab.symbols()[idx].arity;
                if arity != vs.len() {
                    return Err(LogicError::ArityMismatch {
                        symbol: name.clone(),
                        expected: arity,
                        got: vs.len(),
                    });
                }
                Node::Rel(idx, vs.iter().map(|v| self.slot(v)).collect::<Result<_, _>>()?)
            }
            Formula::Equal(x, y) => Node::Eq(self.slot(x)?, self.slot(y)?),
            Formula::DistLe(r, x, y) => Node::Dist(*r, self.slot(x)?, self.slot(y)?),
            Formula::True => Node::Const(true),
            Formula::False => Node::Const(false),
        })
    }
}

struct Evaluator<'s> {
    n: usize,
    tables: Vec<Table>,
    adjacency: Option<Vec<Vec<Element>>>,
    structure: &'s Structure,
    /// BFS rows computed so far, `usize::MAX` for unreachable.
    dist: Vec<Option<Vec<usize>>>,
}

impl Evaluator<'_> {
    fn distance(&mut self, a: Element, b: Element) -> usize {
        if self.dist[a].is_none() {
            let structure = self.structure;
            let adj = self
                .adjacency
                .get_or_insert_with(|| gaifman_graph(structure).adjacency());
            let row = bfs_distances(adj, a)
                .into_iter()
                .map(|d| d.unwrap_or(usize::MAX))
                .collect();
            self.dist[a] = Some(row);
        }
        self.dist[a].as_ref().unwrap()[b]
    }

    fn eval(&mut self, node: &Node, env: &mut [Element]) -> bool {
        match node {
            Node::Exists(s, b) => (0..self.n).any(|e| {
                env[*s] = e;
                self.eval(b, env)
            }),
            Node::Forall(s, b) => (0..self.n).all(|e| {
                env[*s] = e;
                self.eval(b, env)
            }),
            Node::And(ps) => ps.iter().all(|p| self.eval(p, env)),
            Node::Or(ps) => ps.iter().any(|p| self.eval(p, env)),
            Node::Not(b) => !self.eval(b, env),
            Node::Rel(i, slots) => match &self.tables[*i] {
                Table::Unary(t) => t[env[slots[0]]],
                Table::Binary(t) => t[env[slots[0]] * self.n + env[slots[1]]],
                Table::Wide(t) => {
                    let tuple: Vec<Element> = slots.iter().map(|&s| env[s]).collect();
                    t.contains(&tuple)
                }
            },
            Node::Eq(x, y) => env[*x] == env[*y],
            Node::Dist(r, x, y) => {
                let (a, b) = (env[*x], env[*y]);
                a == b || (*r > 0 && self.distance(a, b) <= *r)
            }
            Node::Const(c) => *c,
        }
    }
}

fn tables(a: &Structure) -> Vec<Table> {
    let n = a.size();
    a.vocab()
        .symbols()
        .iter()
        .enumerate()
        .map(|(i, sym)| {
            let rel = a.relation(i);
            match sym.arity {
                1 => {
                    let mut t = vec![false; n];
                    for tup in rel {
                        t[tup[0]] = true;
                    }
                    Table::Unary(t)
                }
                2 => {
                    let mut t = vec![false; n * n];
                    for tup in rel {
                        t[tup[0] * n + tup[1]] = true;
                    }
                    Table::Binary(t)
                }
                _ => Table::Wide(rel.iter().cloned().collect()),
            }
        })
        .collect()
}

/// Truth of `f` in `a` under `valuation`, which must cover the free variables.
/// Quantifiers range over the whole domain; distance atoms use BFS in the
/// Gaifman graph, memoised for the duration of the call.
pub fn evaluate(f: &Formula, a: &Structure, valuation: &Valuation) -> Result<bool, LogicError> {
    let mut c = Compiler {
        structure: a,
        scope: Vec::new(),
        slots: 0,
    };
    let mut env = Vec::new();
    for v in f.free_vars() {
        let e = *valuation
            .get(&v)
            .ok_or_else(|| LogicError::UnboundVariable(v.clone()))?;
        if e >= a.size() {
            return Err(LogicError::ElementOutOfRange(e));
        }
        c.bind(&v);
        env.push(e);
    }
    let node = c.compile(f)?;
    env.resize(c.slots, 0);
    let mut ev = Evaluator {
        n: a.size(),
        tables: tables(a),
        adjacency: None,
        structure: a,
        dist: vec![None; a.size()],
    };
    Ok(ev.eval(&node, &mut env))
}

/// Truth of a sentence.
pub fn holds(f: &Formula, a: &Structure) -> Result<bool, LogicError> {
    evaluate(f, a, &Valuation::new())
}
