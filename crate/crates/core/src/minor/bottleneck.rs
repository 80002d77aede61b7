use std::collections::BTreeSet;

use super::MinorError;
use crate::structure::{bfs_distances, Element, Structure};

/// Default maximum bottleneck size.
pub const DEFAULT_BOTTLENECK_CAP: usize = 3;

/// Largest residual graph for which the maximum scattered set is computed
/// exactly.
const EXACT_LIMIT: usize = 64;

const EXACT_BUDGET: u64 = 10_000_000;

/// Disjoint `A, S` with `A` `r`-independent once `S` is removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bottleneck {
    pub scattered: BTreeSet<Element>,
    pub bottleneck: BTreeSet<Element>,
    /// Every element of `A` adjacent to every element of `S`.
    pub complete: bool,
}

/// Whether the elements of `set` are pairwise at Gaifman distance greater than
/// `r` in `a`.
pub fn is_r_independent(a: &Structure, set: &BTreeSet<Element>, r: usize) -> bool {
    let adj = a.adjacency();
    set.iter().all(|&x| {
        let d = bfs_distances(&adj, x);
        set.iter().all(|&y| y == x || d[y].is_none_or(|d| d > r))
    })
}

/// [`find_bottleneck_with`] with the default cap.
pub fn find_bottleneck(a: &Structure, r: usize, m: usize) -> Result<Option<Bottleneck>, MinorError> {
    find_bottleneck_with(a, r, m, DEFAULT_BOTTLENECK_CAP)
}

/// Tries bottlenecks `S` by increasing size up to `cap`, in lexicographic
/// order, and returns the first for which `a ∖ S` has an `r`-independent set
/// of at least `m` elements. The scattered set is found greedily, then by
/// exact maximum independent set on the `r`-th power when the residual graph
/// has at most 64 vertices.
pub fn find_bottleneck_with(a: &Structure, r: usize, m: usize, cap: usize) -> Result<Option<Bottleneck>, MinorError> {
    let n = a.size();
    let adj = a.adjacency();
    for k in 0..=cap.min(n) {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            if let Some(found) = scattered_avoiding(&adj, &combo, r, m)? {
                let bottleneck: BTreeSet<Element> = combo.iter().copied().collect();
                let complete = found
                    .iter()
                    .all(|&x| bottleneck.iter().all(|s| adj[x].binary_search(s).is_ok()));
                return Ok(Some(Bottleneck {
                    scattered: found,
                    bottleneck,
                    complete,
                }));
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    Ok(None)
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn scattered_avoiding(
    adj: &[Vec<Element>],
    removed: &[Element],
    r: usize,
    m: usize,
) -> Result<Option<BTreeSet<Element>>, MinorError> {
    let n = adj.len();
    let mut gone = vec![false; n];
    for &s in removed {
        gone[s] = true;
    }
    let keep: Vec<Element> = (0..n).filter(|&v| !gone[v]).collect();
    if keep.len() < m {
        return Ok(None);
    }
    let residual: Vec<Vec<Element>> = (0..n)
        .map(|v| {
            if gone[v] {
                Vec::new()
            } else {
                adj[v].iter().copied().filter(|&w| !gone[w]).collect()
            }
        })
        .collect();
    // conflict graph: the r-th power of the residual graph
    let conflicts: Vec<Vec<usize>> = keep
        .iter()
        .map(|&v| {
            let d = bfs_distances(&residual, v);
            keep.iter()
                .enumerate()
                .filter(|&(_, &w)| w != v && d[w].is_some_and(|d| d <= r))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let greedy = greedy_independent(&conflicts);
    let best = if greedy.len() >= m || keep.len() > EXACT_LIMIT {
        greedy
    } else {
        exact_independent(&conflicts)?
    };
    if best.len() >= m {
        Ok(Some(best.into_iter().map(|j| keep[j]).collect()))
    } else {
        Ok(None)
    }
}

/// Minimum-degree-first greedy independent set.
fn greedy_independent(conflicts: &[Vec<usize>]) -> Vec<usize> {
    let n = conflicts.len();
    let mut alive = vec![true; n];
    let mut out = Vec::new();
    loop {
        let pick = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (conflicts[v].iter().filter(|&&w| alive[w]).count(), v));
        let Some(v) = pick else { break };
        out.push(v);
        alive[v] = false;
        for &w in &conflicts[v] {
            alive[w] = false;
        }
    }
    out.sort_unstable();
    out
}

/// Maximum independent set by branch and bound over bitsets.
fn exact_independent(conflicts: &[Vec<usize>]) -> Result<Vec<usize>, MinorError> {
    let n = conflicts.len();
    debug_assert!(n <= 64);
    let rows: Vec<u64> = conflicts
        .iter()
        .map(|c| c.iter().fold(0u64, |acc, &w| acc | (1 << w)))
        .collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0u64;
    let mut nodes = 0u64;
    fn go(cand: u64, cur: u64, rows: &[u64], best: &mut u64, nodes: &mut u64) -> Result<(), MinorError> {
        *nodes += 1;
        if *nodes > EXACT_BUDGET {
            return Err(MinorError::BudgetExceeded(EXACT_BUDGET));
        }
        if cand == 0 {
            if cur.count_ones() > best.count_ones() {
                *best = cur;
            }
            return Ok(());
        }
        if cur.count_ones() + cand.count_ones() <= best.count_ones() {
            return Ok(());
        }
        // branch on a candidate of maximum degree within the candidates
        let v = (0..64)
            .filter(|&v| cand & (1 << v) != 0)
            .max_by_key(|&v| (rows[v] & cand).count_ones())
            .unwrap();
        if rows[v] & cand == 0 {
            // no conflicts left: take everything
            return go(0, cur | cand, rows, best, nodes);
        }
        go(cand & !(1 << v) & !rows[v], cur | (1 << v), rows, best, nodes)?;
        go(cand & !(1 << v), cur, rows, best, nodes)
    }
    go(all, 0, &rows, &mut best, &mut nodes)?;
    Ok((0..n).filter(|&v| best & (1 << v) != 0).collect())
}
