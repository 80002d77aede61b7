use std::collections::BTreeSet;

use super::MinorError;
use crate::structure::{Element, Partition, Structure};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<BTreeSet<Element>>,
    /// Tree edges between bag indices.
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<BTreeSet<Element>>, edges: Vec<(usize, usize)>) -> Self {
        TreeDecomposition { bags, edges }
    }

    /// One bag holding the whole domain.
    pub fn trivial(a: &Structure) -> Self {
        TreeDecomposition::new(vec![a.elements().collect()], Vec::new())
    }

    /// Largest bag size minus one; `None` for no bags.
    pub fn width(&self) -> Option<usize> {
        self.bags.iter().map(|b| b.len().saturating_sub(1)).max()
    }
}

/// Checks that the bags and edges form a tree decomposition of the Gaifman
/// graph of `a`: the edges form a tree, every element and every Gaifman edge
/// lies in some bag, and the bags containing an element are connected.
///
/// Indices out of range are malformed input and reported as errors.
pub fn validate_tree_decomposition(a: &Structure, t: &TreeDecomposition) -> Result<bool, MinorError> {
    let k = t.bags.len();
    for &(x, y) in &t.edges {
        if x >= k || y >= k {
            return Err(MinorError::MalformedDecomposition(format!(
                "tree edge ({x}, {y}) with {k} bags"
            )));
        }
    }
    if let Some(e) = t.bags.iter().flatten().find(|&&e| e >= a.size()) {
        return Err(MinorError::MalformedDecomposition(format!(
            "bag element {e} outside a domain of size {}",
            a.size()
        )));
    }
    if k == 0 {
        return Ok(a.size() == 0);
    }
    // a tree: k - 1 edges, connected
    let mut p = Partition::discrete(k);
    for &(x, y) in &t.edges {
        if p.same(x, y) {
            return Ok(false);
        }
        p.union(x, y);
    }
    if t.edges.len() != k - 1 {
        return Ok(false);
    }
    let adj = a.adjacency();
    for v in a.elements() {
        let holding: Vec<usize> = (0..k).filter(|&i| t.bags[i].contains(&v)).collect();
        if holding.is_empty() {
            return Ok(false);
        }
        // connected subtree: edges inside `holding` must join it into one piece
        let mut q = Partition::discrete(k);
        for &(x, y) in &t.edges {
            if t.bags[x].contains(&v) && t.bags[y].contains(&v) {
                q.union(x, y);
            }
        }
        if holding.iter().any(|&i| !q.same(i, holding[0])) {
            return Ok(false);
        }
        for &w in &adj[v] {
            if v < w && !t.bags.iter().any(|b| b.contains(&v) && b.contains(&w)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Width-3 path decomposition of the wheel `W_n` as numbered by the family
/// generator (apex `0`, rim `1..=n` in cyclic order): the fan bags
/// `{c_0, c_i, c_{i+1}}` of the rim cycle, each with the apex added.
pub fn wheel_decomposition(n: usize) -> Result<TreeDecomposition, MinorError> {
    if n < 3 {
        return Err(MinorError::MalformedDecomposition(format!("wheel needs n >= 3, got {n}")));
    }
    let rim = |i: usize| i + 1;
    let bags: Vec<BTreeSet<Element>> = (1..n - 1)
        .map(|i| BTreeSet::from([0, rim(0), rim(i), rim(i + 1)]))
        .collect();
    let edges = (1..bags.len()).map(|i| (i - 1, i)).collect();
    Ok(TreeDecomposition::new(bags, edges))
}
