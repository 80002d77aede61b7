//! Branch-set search for a fixed small minor.

use super::MinorError;
use crate::structure::Element;

pub(crate) type Bits = u64;

/// Pattern as bitmask adjacency rows.
#[derive(Debug, Clone)]
pub(crate) struct PatternRows {
    pub rows: Vec<Bits>,
}

impl PatternRows {
    pub fn from_adjacency(adj: &[Vec<Element>]) -> Self {
        let rows = adj
            .iter()
            .map(|nb| nb.iter().fold(0, |acc, &v| acc | (1 << v)))
            .collect();
        PatternRows { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn min_degree(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).min().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return true;
        }
        let mut seen: Bits = 1;
        let mut frontier: Bits = 1;
        while frontier != 0 {
            let mut next = 0;
            for v in ones(frontier) {
                next |= self.rows[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == n
    }

    /// Connected and no cut vertex, at least 3 vertices.
    pub fn is_biconnected(&self) -> bool {
        let n = self.len();
        n >= 3
            && self.is_connected()
            && (0..n).all(|x| {
                let rows: Vec<Bits> = (0..n)
                    .filter(|&v| v != x)
                    .map(|v| squeeze(self.rows[v], x))
                    .collect();
                PatternRows { rows }.is_connected()
            })
    }
}

/// Drops bit `x`, shifting higher bits down.
fn squeeze(row: Bits, x: usize) -> Bits {
    let low = row & ((1 << x) - 1);
    let high = (row >> (x + 1)) << x;
    low | high
}

pub(crate) fn ones(mut w: Bits) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if w == 0 {
            None
        } else {
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(t)
        }
    })
}

/// Whether some bijection parts → pattern vertices maps every pattern edge
/// onto an edge of the quotient.
fn quotient_contains(quotient: &[Bits], pattern: &PatternRows, order: &[usize]) -> bool {
    fn go(i: usize, order: &[usize], q: &[Bits], p: &PatternRows, map: &mut [usize], used: &mut Bits) -> bool {
        if i == order.len() {
            return true;
        }
        let hv = order[i];
        let need = p.rows[hv].count_ones();
        for part in 0..q.len() {
            if *used & (1 << part) != 0 || q[part].count_ones() < need {
                continue;
            }
            let ok = order[..i]
                .iter()
                .all(|&hu| p.rows[hv] & (1 << hu) == 0 || q[part] & (1 << map[hu]) != 0);
            if ok {
                map[hv] = part;
                *used |= 1 << part;
                if go(i + 1, order, q, p, map, used) {
                    return true;
                }
                *used &= !(1 << part);
            }
        }
        false
    }
    let mut map = vec![0; pattern.len()];
    let mut used = 0;
    go(0, order, quotient, pattern, &mut map, &mut used)
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    order: Vec<usize>,
    /// Largest order position among each vertex's neighbours.
    last_nb: Vec<usize>,
    pattern: &'a PatternRows,
    pattern_order: Vec<usize>,
    h: usize,
    allow_unused: bool,
    part: Vec<Option<usize>>,
    members: Vec<Vec<usize>>,
    part_last: Vec<usize>,
    nodes: u64,
    budget: u64,
}

const NONE: usize = usize::MAX;

impl Search<'_> {
    fn connected(&self, p: usize) -> bool {
        let m = &self.members[p];
        let mut seen = vec![m[0]];
        let mut i = 0;
        while i < seen.len() {
            let u = seen[i];
            i += 1;
            for &w in &self.adj[u] {
                if self.part[w] == Some(p) && !seen.contains(&w) {
                    seen.push(w);
                }
            }
        }
        seen.len() == m.len()
    }

    fn leaf(&self) -> bool {
        let h = self.h;
        let mut q = vec![0 as Bits; h];
        for (u, nb) in self.adj.iter().enumerate() {
            if let Some(pu) = self.part[u] {
                for &w in nb {
                    if let Some(pw) = self.part[w] {
                        if pu != pw {
                            q[pu] |= 1 << pw;
                        }
                    }
                }
            }
        }
        quotient_contains(&q, self.pattern, &self.pattern_order)
    }

    fn go(&mut self, i: usize) -> Result<bool, MinorError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(MinorError::BudgetExceeded(self.budget));
        }
        let parts = self.members.len();
        let n = self.order.len();
        if i == n {
            return Ok(parts == self.h && self.leaf());
        }
        if !self.allow_unused && parts + (n - i) < self.h {
            return Ok(false);
        }
        let v = self.order[i];
        let mut options: Vec<usize> = (0..parts)
            .filter(|&p| self.part_last[p] >= i)
            .collect();
        if parts < self.h {
            options.push(parts);
        }
        if self.allow_unused {
            options.push(NONE);
        }
        for p in options {
            if p == NONE {
                let ok = (0..parts)
                    .filter(|&q| self.part_last[q] == i)
                    .all(|q| self.connected(q));
                if ok && self.go(i + 1)? {
                    return Ok(true);
                }
                continue;
            }
            let fresh = p == parts;
            if fresh {
                self.members.push(Vec::new());
                self.part_last.push(0);
            }
            let saved_last = self.part_last[p];
            self.members[p].push(v);
            self.part[v] = Some(p);
            self.part_last[p] = saved_last.max(self.last_nb[v]);
            // a part with no later neighbours is final and must be connected
            let ok = (0..self.members.len())
                .filter(|&q| self.part_last[q] <= i && (q == p || self.part_last[q] == i))
                .all(|q| self.connected(q));
            let found = ok && self.go(i + 1)?;
            self.part[v] = None;
            self.members[p].pop();
            self.part_last[p] = saved_last;
            if fresh {
                self.members.pop();
                self.part_last.pop();
            }
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Searches for `h` disjoint connected branch sets realising `pattern`.
///
/// With `allow_unused = false` every vertex must belong to a branch set; this
/// is complete when the host is connected, since leftover vertices can always
/// be absorbed by an adjacent branch set.
pub(crate) fn branch_sets(
    adj: &[Vec<usize>],
    pattern: &PatternRows,
    allow_unused: bool,
    budget: u64,
) -> Result<(bool, u64), MinorError> {
    let n = adj.len();
    let h = pattern.len();
    if h == 0 {
        return Ok((true, 0));
    }
    if n < h {
        return Ok((false, 0));
    }
    // BFS order from a maximum-degree vertex, component by component
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));
    for &s in &by_degree {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let start = order.len();
        order.push(s);
        let mut i = start;
        while i < order.len() {
            let u = order[i];
            i += 1;
            let mut nb = adj[u].clone();
            nb.sort_by_key(|&w| (std::cmp::Reverse(adj[w].len()), w));
            for w in nb {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let last_nb = (0..n)
        .map(|v| adj[v].iter().map(|&w| pos[w]).max().unwrap_or(0).max(pos[v]))
        .collect();
    let mut pattern_order: Vec<usize> = (0..h).collect();
    pattern_order.sort_by_key(|&v| std::cmp::Reverse(pattern.rows[v].count_ones()));
    let mut s = Search {
        adj,
        order,
        last_nb,
        pattern,
        pattern_order,
        h,
        allow_unused,
        part: vec![None; n],
        members: Vec::new(),
        part_last: Vec::new(),
        nodes: 0,
        budget,
    };
    let found = s.go(0)?;
    Ok((found, s.nodes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|i| (0..n).filter(|&j| j != i).collect()).collect()
    }

    fn cycle(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect()
    }

    #[test]
    fn pattern_properties() {
        let k4 = PatternRows::from_adjacency(&complete(4));
        assert_eq!(k4.edge_count(), 6);
        assert!(k4.is_biconnected());
        let path = PatternRows::from_adjacency(&[vec![1], vec![0, 2], vec![1]]);
        assert!(path.is_connected() && !path.is_biconnected());
        assert_eq!(squeeze(0b1011, 1), 0b101);
    }

    #[test]
    fn cycles_contract_to_triangles_only() {
        let k3 = PatternRows::from_adjacency(&complete(3));
        let k4 = PatternRows::from_adjacency(&complete(4));
        for unused in [false, true] {
            assert!(branch_sets(&cycle(7), &k3, unused, 1 << 30).unwrap().0);
            assert!(!branch_sets(&cycle(7), &k4, unused, 1 << 30).unwrap().0);
        }
    }

    #[test]
    fn budget_is_reported() {
        let k5 = PatternRows::from_adjacency(&complete(5));
        assert_eq!(
            branch_sets(&cycle(12), &k5, true, 10),
            Err(MinorError::BudgetExceeded(10))
        );
    }
}
