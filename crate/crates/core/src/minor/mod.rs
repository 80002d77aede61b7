//! Minor containment for small patterns, planarity and outerplanarity, tree
//! decompositions, and bottleneck search.

mod bottleneck;
mod decomposition;
mod search;

use std::collections::BTreeSet;
use std::str::FromStr;

use rustworkx_core::petgraph::graph::UnGraph;
use thiserror::Error;

use crate::families::{generate, Family};
use crate::structure::{components, Element, Structure};

pub use bottleneck::{find_bottleneck, find_bottleneck_with, is_r_independent, Bottleneck, DEFAULT_BOTTLENECK_CAP};
pub use decomposition::{validate_tree_decomposition, wheel_decomposition, TreeDecomposition};

use search::{branch_sets, PatternRows};

/// Default cap on branch-set search nodes.
pub const DEFAULT_MINOR_BUDGET: u64 = 100_000_000;

/// Largest pattern accepted by the branch-set search.
pub const MAX_PATTERN_SIZE: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinorError {
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("structure is not a graph")]
    NotAGraph,
    #[error("pattern has {0} vertices; at most 64 supported")]
    PatternTooLarge(usize),
    #[error("unknown pattern `{0}`: expected k4, k5, k33 or k23")]
    UnknownPattern(String),
    #[error("malformed tree decomposition: {0}")]
    MalformedDecomposition(String),
}

/// Named minor patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    K4,
    K5,
    K33,
    K23,
}

impl FromStr for Pattern {
    type Err = MinorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "k4" => Ok(Pattern::K4),
            "k5" => Ok(Pattern::K5),
            "k33" => Ok(Pattern::K33),
            "k23" => Ok(Pattern::K23),
            _ => Err(MinorError::UnknownPattern(s.to_string())),
        }
    }
}

impl Pattern {
    pub fn graph(self) -> Structure {
        let f = match self {
            Pattern::K4 => Family::Clique(4),
            Pattern::K5 => Family::Clique(5),
            Pattern::K33 => Family::Biclique(3, 3),
            Pattern::K23 => Family::Biclique(2, 3),
        };
        generate(&f).expect("fixed pattern")
    }
}

fn ensure_graph(g: &Structure) -> Result<(), MinorError> {
    if g.is_graph() || (g.vocab().is_graph_vocabulary() && g.tuple_count() == 0) {
        Ok(())
    } else {
        Err(MinorError::NotAGraph)
    }
}

fn lr_planar(adj: &[Vec<Element>]) -> bool {
    let edges: Vec<(u32, u32)> = adj
        .iter()
        .enumerate()
        .flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u as u32, v as u32)))
        .collect();
    if edges.len() < 9 {
        return true;
    }
    let g = UnGraph::<(), ()>::from_edges(&edges);
    rustworkx_core::planar::is_planar(&g)
}

fn with_apex(adj: &[Vec<Element>]) -> Vec<Vec<Element>> {
    let n = adj.len();
    let mut out: Vec<Vec<Element>> = adj.iter().map(|nb| {
        let mut nb = nb.clone();
        nb.push(n);
        nb
    }).collect();
    out.push((0..n).collect());
    out
}

/// Planarity by the left-right test; equivalent to excluding `K_5` and
/// `K_{3,3}` as minors.
pub fn is_planar(g: &Structure) -> Result<bool, MinorError> {
    ensure_graph(g)?;
    Ok(lr_planar(&g.adjacency()))
}

/// Outerplanarity, decided as planarity of the graph plus a universal vertex;
/// equivalent to excluding `K_4` and `K_{2,3}` as minors.
pub fn is_outerplanar(g: &Structure) -> Result<bool, MinorError> {
    ensure_graph(g)?;
    Ok(lr_planar(&with_apex(&g.adjacency())))
}

/// Whether `h` is a minor of `g`.
pub fn has_minor(g: &Structure, h: &Structure) -> Result<bool, MinorError> {
    has_minor_with_budget(g, h, DEFAULT_MINOR_BUDGET)
}

pub fn has_minor_with_budget(g: &Structure, h: &Structure, budget: u64) -> Result<bool, MinorError> {
    MinorSolver::new(g, h, budget, true)?.run()
}

/// Branch-set search with the degree and block reductions only, without the
/// planarity shortcuts. Slower; kept as an independent check.
pub fn has_minor_by_search(g: &Structure, h: &Structure, budget: u64) -> Result<bool, MinorError> {
    MinorSolver::new(g, h, budget, false)?.run()
}

struct MinorSolver {
    host: Vec<Vec<Element>>,
    pattern: PatternRows,
    min_degree: usize,
    connected: bool,
    biconnected: bool,
    pattern_planar: bool,
    pattern_outerplanar: bool,
    shortcuts: bool,
    budget: u64,
    used: u64,
}

impl MinorSolver {
    fn new(g: &Structure, h: &Structure, budget: u64, shortcuts: bool) -> Result<Self, MinorError> {
        ensure_graph(g)?;
        ensure_graph(h)?;
        if h.size() > MAX_PATTERN_SIZE {
            return Err(MinorError::PatternTooLarge(h.size()));
        }
        let hadj = h.adjacency();
        let pattern = PatternRows::from_adjacency(&hadj);
        Ok(MinorSolver {
            host: g.adjacency(),
            min_degree: pattern.min_degree(),
            connected: pattern.is_connected(),
            biconnected: pattern.is_biconnected(),
            pattern_planar: lr_planar(&hadj),
            pattern_outerplanar: lr_planar(&with_apex(&hadj)),
            pattern,
            shortcuts,
            budget,
            used: 0,
        })
    }

    fn run(mut self) -> Result<bool, MinorError> {
        if self.pattern.len() == 0 {
            return Ok(true);
        }
        let host = std::mem::take(&mut self.host);
        self.solve(host)
    }

    fn solve(&mut self, adj: Vec<Vec<Element>>) -> Result<bool, MinorError> {
        let adj = reduce(adj, self.min_degree);
        let n = adj.len();
        let edges = adj.iter().map(Vec::len).sum::<usize>() / 2;
        if n < self.pattern.len() || edges < self.pattern.edge_count() {
            return Ok(false);
        }
        if self.shortcuts {
            if !self.pattern_planar && lr_planar(&adj) {
                return Ok(false);
            }
            if !self.pattern_outerplanar && lr_planar(&with_apex(&adj)) {
                return Ok(false);
            }
        }
        let pieces = if self.biconnected {
            blocks(&adj)
        } else if self.connected {
            components(&adj)
        } else {
            vec![(0..n).collect()]
        };
        if pieces.len() == 1 && pieces[0].len() == n {
            let host_connected = components(&adj).len() <= 1;
            let allow_unused = !(self.connected && host_connected);
            let (found, nodes) = branch_sets(&adj, &self.pattern, allow_unused, self.budget - self.used)?;
            self.used += nodes;
            return Ok(found);
        }
        for piece in pieces {
            if piece.len() >= self.pattern.len() && self.solve(induced(&adj, &piece))? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn induced(adj: &[Vec<Element>], keep: &[Element]) -> Vec<Vec<Element>> {
    let mut id = vec![usize::MAX; adj.len()];
    for (i, &v) in keep.iter().enumerate() {
        id[v] = i;
    }
    keep.iter()
        .map(|&v| adj[v].iter().filter(|&&w| id[w] != usize::MAX).map(|&w| id[w]).collect())
        .collect()
}

/// Deletes vertices of degree below `min(δ(H), 2)` and, when `δ(H) ≥ 3`,
/// suppresses degree-2 vertices; neither step changes whether a pattern of
/// minimum degree `δ(H)` is a minor.
fn reduce(adj: Vec<Vec<Element>>, min_degree: usize) -> Vec<Vec<Element>> {
    let n = adj.len();
    let mut sets: Vec<BTreeSet<Element>> = adj.into_iter().map(|nb| nb.into_iter().collect()).collect();
    let mut alive = vec![true; n];
    let delete_below = min_degree.min(2);
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            let d = sets[v].len();
            if d < delete_below || (min_degree >= 3 && d == 2) {
                let nb: Vec<Element> = sets[v].iter().copied().collect();
                for &w in &nb {
                    sets[w].remove(&v);
                }
                if d == 2 {
                    sets[nb[0]].insert(nb[1]);
                    sets[nb[1]].insert(nb[0]);
                }
                sets[v].clear();
                alive[v] = false;
                changed = true;
            }
        }
    }
    let keep: Vec<Element> = (0..n).filter(|&v| alive[v]).collect();
    let adj: Vec<Vec<Element>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
    induced(&adj, &keep)
}

/// Vertex sets of the biconnected components (bridges included, isolated
/// vertices omitted).
fn blocks(adj: &[Vec<Element>]) -> Vec<Vec<Element>> {
    struct St<'a> {
        adj: &'a [Vec<Element>],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(Element, Element)>,
        out: Vec<Vec<Element>>,
    }
    fn dfs(s: &mut St, u: Element, parent: Option<Element>) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for i in 0..s.adj[u].len() {
            let v = s.adj[u][i];
            if s.disc[v] == 0 {
                s.stack.push((u, v));
                dfs(s, v, Some(u));
                s.low[u] = s.low[u].min(s.low[v]);
                if s.low[v] >= s.disc[u] {
                    let mut block = BTreeSet::new();
                    while let Some((a, b)) = s.stack.pop() {
                        block.insert(a);
                        block.insert(b);
                        if (a, b) == (u, v) {
                            break;
                        }
                    }
                    s.out.push(block.into_iter().collect());
                }
            } else if Some(v) != parent && s.disc[v] < s.disc[u] {
                s.stack.push((u, v));
                s.low[u] = s.low[u].min(s.disc[v]);
            }
        }
    }
    let n = adj.len();
    let mut s = St {
        adj,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..n {
        if s.disc[v] == 0 {
            dfs(&mut s, v, None);
        }
    }
    s.out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(f: Family) -> Structure {
        generate(&f).unwrap()
    }

    #[test]
    fn patterns() {
        assert_eq!("k33".parse::<Pattern>().unwrap().graph().edge_count(), 9);
        assert_eq!("k23".parse::<Pattern>().unwrap().graph().edge_count(), 6);
        assert!("k6".parse::<Pattern>().is_err());
    }

    #[test]
    fn basic_minors() {
        let k4 = Pattern::K4.graph();
        let k5 = Pattern::K5.graph();
        assert!(has_minor(&k5, &k5).unwrap());
        assert!(!has_minor(&gen(Family::Cycle(9)), &k4).unwrap());
        assert!(has_minor(&gen(Family::Wheel(5)), &k4).unwrap());
        assert!(!has_minor(&gen(Family::D(9)), &k5).unwrap());
        for search_only in [gen(Family::Wheel(5)), gen(Family::Cycle(9))] {
            assert_eq!(
                has_minor_by_search(&search_only, &k4, DEFAULT_MINOR_BUDGET).unwrap(),
                has_minor(&search_only, &k4).unwrap()
            );
        }
    }

    #[test]
    fn planarity() {
        for n in 4..=9 {
            assert!(is_planar(&gen(Family::D(n))).unwrap());
        }
        assert!(!is_planar(&Pattern::K5.graph()).unwrap());
        assert!(!is_planar(&Pattern::K33.graph()).unwrap());
        assert!(is_planar(&gen(Family::Bouquet(vec![5, 7]))).unwrap());
        assert!(is_outerplanar(&gen(Family::Cycle(8))).unwrap());
        assert!(!is_outerplanar(&gen(Family::Wheel(5))).unwrap());
        assert!(!is_outerplanar(&Pattern::K23.graph()).unwrap());
        // fan: path on 6 vertices plus an apex
        let fan = Structure::graph(7, (0..5).map(|i| (i, i + 1)).chain((0..6).map(|i| (6, i)))).unwrap();
        assert!(is_outerplanar(&fan).unwrap());
    }

    #[test]
    fn blocks_of_bowtie() {
        // two triangles sharing vertex 2, plus a pendant 5
        let adj = Structure::graph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)])
            .unwrap()
            .adjacency();
        let mut b = blocks(&adj);
        b.sort();
        assert_eq!(b, vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5]]);
    }

    #[test]
    fn reductions_keep_answers() {
        // subdividing every edge of K5 keeps a K5 minor
        let mut edges = Vec::new();
        let mut next = 5;
        for i in 0..5 {
            for j in i + 1..5 {
                edges.push((i, next));
                edges.push((next, j));
                next += 1;
            }
        }
        let sub = Structure::graph(next, edges).unwrap();
        assert!(has_minor(&sub, &Pattern::K5.graph()).unwrap());
        assert!(has_minor_by_search(&sub, &Pattern::K5.graph(), DEFAULT_MINOR_BUDGET).unwrap());
    }

    #[test]
    fn non_graph_rejected() {
        let v = crate::structure::Vocabulary::new([("R", 2)]).unwrap();
        let a = Structure::new(v, 2, [("R", vec![0, 1])]).unwrap();
        assert_eq!(is_planar(&a), Err(MinorError::NotAGraph));
    }
}
