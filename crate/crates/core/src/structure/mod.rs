//! Finite relational structures over a declared vocabulary.
//!
//! Elements are dense ids `0..n`. Graphs are the special case of a single
//! binary symbol `E` that is irreflexive and symmetric; the flag is derived
//! from the relation contents, so any structure that happens to be a graph is
//! treated as one.

mod io;
mod iso;
mod ops;
mod partition;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use io::{parse_structure, write_structure};
pub use iso::{are_isomorphic, canonical_form, find_isomorphism};
pub use ops::{
    ball, disjoint_union, free_amalgam, gaifman_graph, induced_substructure, is_substructure,
    iterated_amalgam, quotient, Amalgam, IteratedAmalgam, Quotient, Restriction, SubstructureMode,
};
pub use partition::Partition;
pub(crate) use ops::{bfs_distances, components};

pub type Element = usize;

/// Name of the edge symbol in the graph vocabulary.
pub const EDGE: &str = "E";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("duplicate symbol `{0}` in vocabulary")]
    DuplicateSymbol(String),
    #[error("symbol `{0}` must have positive arity")]
    ZeroArity(String),
    #[error("unknown relation symbol `{0}`")]
    UnknownSymbol(String),
    #[error("tuple for `{symbol}` has {got} entries, expected {expected}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        got: usize,
    },
    #[error("element {element} out of range for domain of size {size}")]
    ElementOutOfRange { element: Element, size: usize },
    #[error("graph edge ({0}, {0}) would be a loop")]
    Loop(Element),
    #[error("vocabularies differ")]
    VocabularyMismatch,
    #[error("structure is not a graph")]
    NotAGraph,
    #[error("quotient identifies adjacent elements {0} and {1}, creating a loop")]
    LoopInQuotient(Element, Element),
    #[error("shared parts are not identical induced substructures: {0}")]
    AmalgamMismatch(String),
    #[error("{0}")]
    Invalid(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// A relation symbol with its arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

/// Ordered list of relation symbols with unique names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vocabulary {
    symbols: Vec<Symbol>,
}

impl Vocabulary {
    pub fn new<I, S>(symbols: I) -> Result<Self, StructureError>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut out: Vec<Symbol> = Vec::new();
        for (name, arity) in symbols {
            let name = name.into();
            if arity == 0 {
                return Err(StructureError::ZeroArity(name));
            }
            if out.iter().any(|s| s.name == name) {
                return Err(StructureError::DuplicateSymbol(name));
            }
            out.push(Symbol { name, arity });
        }
        Ok(Vocabulary { symbols: out })
    }

    /// The vocabulary `{E/2}`.
    pub fn graph() -> Self {
        Vocabulary {
            symbols: vec![Symbol {
                name: EDGE.to_string(),
                arity: 2,
            }],
        }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.index_of(name).map(|i| self.symbols[i].arity)
    }

    pub fn is_graph_vocabulary(&self) -> bool {
        self.symbols.len() == 1 && self.symbols[0].name == EDGE && self.symbols[0].arity == 2
    }
}

impl fmt::Display for Vocabulary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}/{}", s.name, s.arity)?;
        }
        Ok(())
    }
}

/// An immutable finite relational structure.
///
/// Relations are stored per symbol (in vocabulary order) as sorted tuple
/// sets. Optional element labels are carried as metadata only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    vocab: Arc<Vocabulary>,
    size: usize,
    relations: Vec<BTreeSet<Vec<Element>>>,
    labels: BTreeMap<Element, String>,
    graph: bool,
}

impl Structure {
    /// Builds a structure, validating every tuple against the vocabulary.
    pub fn new<I, S>(vocab: Vocabulary, size: usize, tuples: I) -> Result<Self, StructureError>
    where
        I: IntoIterator<Item = (S, Vec<Element>)>,
        S: AsRef<str>,
    {
        let mut relations = vec![BTreeSet::new(); vocab.len()];
        for (name, tuple) in tuples {
            let name = name.as_ref();
            let idx = vocab
                .index_of(name)
                .ok_or_else(|| StructureError::UnknownSymbol(name.to_string()))?;
            let arity = vocab.symbols[idx].arity;
            if tuple.len() != arity {
                return Err(StructureError::ArityMismatch {
                    symbol: name.to_string(),
                    expected: arity,
                    got: tuple.len(),
                });
            }
            if let Some(&e) = tuple.iter().find(|&&e| e >= size) {
                return Err(StructureError::ElementOutOfRange { element: e, size });
            }
            relations[idx].insert(tuple);
        }
        Ok(Self::from_parts(Arc::new(vocab), size, relations))
    }

    /// Internal constructor; tuples are assumed valid.
    pub(crate) fn from_parts(
        vocab: Arc<Vocabulary>,
        size: usize,
        relations: Vec<BTreeSet<Vec<Element>>>,
    ) -> Self {
        debug_assert_eq!(vocab.len(), relations.len());
        let graph = vocab.is_graph_vocabulary() && {
            let e = &relations[0];
            e.iter()
                .all(|t| t[0] != t[1] && e.contains(&vec![t[1], t[0]]))
        };
        Structure {
            vocab,
            size,
            relations,
            labels: BTreeMap::new(),
            graph,
        }
    }

    /// Undirected graph on `n` vertices; every edge is inserted in both
    /// directions.
    pub fn graph<I>(n: usize, edges: I) -> Result<Self, StructureError>
    where
        I: IntoIterator<Item = (Element, Element)>,
    {
        let mut e = BTreeSet::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(StructureError::ElementOutOfRange { element: x, size: n });
                }
            }
            if u == v {
                return Err(StructureError::Loop(u));
            }
            e.insert(vec![u, v]);
            e.insert(vec![v, u]);
        }
        Ok(Self::from_parts(Arc::new(Vocabulary::graph()), n, vec![e]))
    }

    pub fn empty(vocab: Vocabulary, size: usize) -> Self {
        let rel = vec![BTreeSet::new(); vocab.len()];
        Self::from_parts(Arc::new(vocab), size, rel)
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub(crate) fn vocab_arc(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.size
    }

    pub fn is_graph(&self) -> bool {
        self.graph
    }

    /// Tuple set of the `i`-th symbol.
    pub fn relation(&self, i: usize) -> &BTreeSet<Vec<Element>> {
        &self.relations[i]
    }

    pub fn relation_by_name(&self, name: &str) -> Option<&BTreeSet<Vec<Element>>> {
        self.vocab.index_of(name).map(|i| &self.relations[i])
    }

    pub(crate) fn relations(&self) -> &[BTreeSet<Vec<Element>>] {
        &self.relations
    }

    pub fn contains(&self, symbol: usize, tuple: &[Element]) -> bool {
        self.relations[symbol].contains(tuple)
    }

    /// Iterates over `(symbol index, tuple)` pairs.
    pub fn tuples(&self) -> impl Iterator<Item = (usize, &[Element])> {
        self.relations
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |t| (i, t.as_slice())))
    }

    pub fn tuple_count(&self) -> usize {
        self.relations.iter().map(BTreeSet::len).sum()
    }

    pub fn labels(&self) -> &BTreeMap<Element, String> {
        &self.labels
    }

    pub fn label(&self, e: Element) -> Option<&str> {
        self.labels.get(&e).map(String::as_str)
    }

    /// Element carrying `name` as its label.
    pub fn element_by_label(&self, name: &str) -> Option<Element> {
        self.labels
            .iter()
            .find(|(_, l)| l.as_str() == name)
            .map(|(&e, _)| e)
    }

    pub fn with_labels<I, S>(mut self, labels: I) -> Self
    where
        I: IntoIterator<Item = (Element, S)>,
        S: Into<String>,
    {
        for (e, l) in labels {
            if e < self.size {
                self.labels.insert(e, l.into());
            }
        }
        self
    }

    pub(crate) fn set_labels(&mut self, labels: BTreeMap<Element, String>) {
        self.labels = labels;
    }

    // ----- graph helpers -----

    /// Edges `(u, v)` with `u < v`. Empty for non-graphs.
    pub fn edges(&self) -> Vec<(Element, Element)> {
        if !self.graph {
            return Vec::new();
        }
        self.relations[0]
            .iter()
            .filter(|t| t[0] < t[1])
            .map(|t| (t[0], t[1]))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        if self.graph {
            self.relations[0].len() / 2
        } else {
            0
        }
    }

    pub fn has_edge(&self, u: Element, v: Element) -> bool {
        self.graph && self.relations[0].contains(&vec![u, v][..])
    }

    /// Adjacency lists of the Gaifman graph (for graphs: the graph itself),
    /// sorted ascending.
    pub fn adjacency(&self) -> Vec<Vec<Element>> {
        let mut adj = vec![BTreeSet::new(); self.size];
        for (_, t) in self.tuples() {
            for (i, &a) in t.iter().enumerate() {
                for &b in &t[i + 1..] {
                    if a != b {
                        adj[a].insert(b);
                        adj[b].insert(a);
                    }
                }
            }
        }
        adj.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    pub fn degree(&self, v: Element) -> usize {
        if self.graph {
            self.relations[0]
                .range(vec![v]..vec![v + 1])
                .count()
        } else {
            self.adjacency()[v].len()
        }
    }

    /// Graph with the extra edges added.
    pub fn with_edges<I>(&self, extra: I) -> Result<Self, StructureError>
    where
        I: IntoIterator<Item = (Element, Element)>,
    {
        if !self.graph {
            return Err(StructureError::NotAGraph);
        }
        let edges = self.edges().into_iter().chain(extra);
        Ok(Structure::graph(self.size, edges)?.with_labels(self.labels.clone()))
    }

    /// Graph with the given edges removed (vertex set unchanged).
    pub fn without_edges(&self, removed: &[(Element, Element)]) -> Result<Self, StructureError> {
        if !self.graph {
            return Err(StructureError::NotAGraph);
        }
        let gone: BTreeSet<(Element, Element)> = removed
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        let edges = self.edges().into_iter().filter(|e| !gone.contains(e));
        Ok(Structure::graph(self.size, edges)?.with_labels(self.labels.clone()))
    }

    /// Graph with one extra isolated-or-attached vertex, joined to `neighbours`.
    pub fn with_vertex(&self, neighbours: &[Element]) -> Result<Self, StructureError> {
        if !self.graph {
            return Err(StructureError::NotAGraph);
        }
        let n = self.size;
        let edges = self
            .edges()
            .into_iter()
            .chain(neighbours.iter().map(|&u| (u, n)));
        Ok(Structure::graph(n + 1, edges)?.with_labels(self.labels.clone()))
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_structure(self))
    }
}
