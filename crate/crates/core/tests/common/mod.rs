//! Independent oracles over plain adjacency matrices. Nothing here calls the
//! library's solvers.
#![allow(dead_code)]

use std::collections::BTreeMap;

use fmtlab::logic::Formula;
use rand::Rng;
use fmtlab::Structure;

pub type Matrix = Vec<Vec<bool>>;

pub fn matrix(g: &Structure) -> Matrix {
    let n = g.size();
    let mut m = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

/// Every labelled graph on `n` vertices, as edge lists.
pub fn all_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0..1u64 << pairs.len())
        .map(|mask| {
            pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect()
        })
        .collect()
}

/// Vertices in breadth-first order, so each one after the first of its
/// component has an earlier neighbour.
fn bfs_order(a: &Matrix) -> Vec<usize> {
    let mut seen = vec![false; a.len()];
    let mut order = Vec::with_capacity(a.len());
    for s in 0..a.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut i = order.len();
        order.push(s);
        while i < order.len() {
            let u = order[i];
            i += 1;
            for v in 0..a.len() {
                if a[u][v] && !seen[v] {
                    seen[v] = true;
                    order.push(v);
                }
            }
        }
    }
    order
}

/// Plain backtracking in breadth-first order, checking edges to vertices
/// already placed.
pub fn hom_exists(a: &Matrix, b: &Matrix) -> bool {
    fn go(i: usize, order: &[usize], a: &Matrix, b: &Matrix, map: &mut Vec<Option<usize>>) -> bool {
        if i == order.len() {
            return true;
        }
        let u = order[i];
        for t in 0..b.len() {
            if order[..i].iter().all(|&w| !a[u][w] || b[t][map[w].unwrap()]) {
                map[u] = Some(t);
                if go(i + 1, order, a, b, map) {
                    return true;
                }
                map[u] = None;
            }
        }
        false
    }
    if a.is_empty() {
        return true;
    }
    go(0, &bfs_order(a), a, b, &mut vec![None; a.len()])
}

/// Counts maps `a → b` preserving edges, optionally injective only.
pub fn count_homs(a: &Matrix, b: &Matrix, injective: bool) -> u64 {
    fn go(i: usize, a: &Matrix, b: &Matrix, inj: bool, map: &mut Vec<usize>) -> u64 {
        if i == a.len() {
            return 1;
        }
        let mut total = 0;
        for t in 0..b.len() {
            if inj && map.contains(&t) {
                continue;
            }
            if (0..i).all(|j| !a[i][j] || b[t][map[j]]) {
                map.push(t);
                total += go(i + 1, a, b, inj, map);
                map.pop();
            }
        }
        total
    }
    go(0, a, b, injective, &mut Vec::new())
}

/// Smallest `k` admitting a proper `k`-colouring.
pub fn chromatic_number(g: &Matrix) -> usize {
    fn colour(i: usize, g: &Matrix, k: usize, c: &mut Vec<usize>) -> bool {
        if i == g.len() {
            return true;
        }
        // symmetry: vertex i may open at most one new colour
        let used = c.iter().copied().max().map_or(0, |m| m + 1);
        for col in 0..k.min(used + 1) {
            if (0..i).all(|j| !g[i][j] || c[j] != col) {
                c.push(col);
                if colour(i + 1, g, k, c) {
                    return true;
                }
                c.pop();
            }
        }
        false
    }
    (0..=g.len()).find(|&k| colour(0, g, k, &mut Vec::new())).unwrap()
}

/// BFS distances from `s`; `usize::MAX` when unreachable.
pub fn distances(g: &Matrix, s: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; g.len()];
    d[s] = 0;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for v in 0..g.len() {
            if g[u][v] && d[v] == usize::MAX {
                d[v] = d[u] + 1;
                queue.push_back(v);
            }
        }
    }
    d
}

/// Whether some injective edge-preserving map `a → b` exists.
pub fn subgraph_of(a: &Matrix, b: &Matrix) -> bool {
    a.len() <= b.len() && count_first_injective(a, b)
}

fn count_first_injective(a: &Matrix, b: &Matrix) -> bool {
    fn go(i: usize, a: &Matrix, b: &Matrix, map: &mut Vec<usize>) -> bool {
        if i == a.len() {
            return true;
        }
        for t in 0..b.len() {
            if !map.contains(&t) && (0..i).all(|j| !a[i][j] || b[t][map[j]]) {
                map.push(t);
                if go(i + 1, a, b, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    go(0, a, b, &mut Vec::new())
}

/// Adjacency matrix of the odd wheel with apex 0 and rim `1..=n`.
pub fn wheel(n: usize) -> Matrix {
    let mut m = vec![vec![false; n + 1]; n + 1];
    for i in 0..n {
        let (u, v) = (1 + i, 1 + (i + 1) % n);
        m[0][u] = true;
        m[u][0] = true;
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

/// Gaifman adjacency: two distinct elements sharing a tuple.
pub fn gaifman(s: &Structure) -> Matrix {
    let n = s.size();
    let mut m = vec![vec![false; n]; n];
    for (_, t) in s.tuples() {
        for &x in t {
            for &y in t {
                if x != y {
                    m[x][y] = true;
                }
            }
        }
    }
    m
}

/// Direct recursive semantics: quantifiers loop over the domain, distance
/// atoms run a fresh BFS each time.
pub fn naive_eval(f: &Formula, s: &Structure, env: &mut BTreeMap<String, usize>) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Not(b) => !naive_eval(b, s, env),
        Formula::And(ps) => ps.iter().all(|p| naive_eval(p, s, env)),
        Formula::Or(ps) => ps.iter().any(|p| naive_eval(p, s, env)),
        Formula::Equal(x, y) => env[x] == env[y],
        Formula::Atom(name, args) => {
            let idx = s.vocab().index_of(name).expect("symbol in vocabulary");
            let t: Vec<usize> = args.iter().map(|v| env[v]).collect();
            s.contains(idx, &t)
        }
        Formula::DistLe(r, x, y) => distances(&gaifman(s), env[x])[env[y]] <= *r,
        Formula::Exists(v, b) | Formula::Forall(v, b) => {
            let saved = env.get(v).copied();
            let want = matches!(f, Formula::Exists(..));
            let mut result = !want;
            for e in 0..s.size() {
                env.insert(v.clone(), e);
                if naive_eval(b, s, env) == want {
                    result = want;
                    break;
                }
            }
            match saved {
                Some(e) => env.insert(v.clone(), e),
                None => env.remove(v),
            };
            result
        }
    }
}

/// Some component is a vertex adjacent to all others of the component, with
/// at least three others, each of which has exactly two further neighbours.
pub fn has_bouquet(g: &Matrix) -> bool {
    (0..g.len()).any(|x| {
        let d = distances(g, x);
        let comp: Vec<usize> = (0..g.len()).filter(|&v| v != x && d[v] != usize::MAX).collect();
        comp.len() >= 3
            && comp.iter().all(|&v| {
                let others = comp.iter().filter(|&&w| g[v][w]).count();
                g[x][v] && others == 2
            })
    })
}

/// Random formula over `symbols` (name, arity) with quantifier depth at most
/// `depth`. Free variables are drawn from `scope`; with `dist` set, distance
/// atoms of radius 1..=3 appear among the leaves.
pub fn random_formula(
    rng: &mut impl Rng,
    symbols: &[(&str, usize)],
    depth: usize,
    scope: &mut Vec<String>,
    dist: bool,
) -> Formula {
    let leaf = depth == 0 || rng.gen_bool(0.25);
    if leaf {
        if scope.is_empty() {
            return if rng.gen_bool(0.5) { Formula::True } else { Formula::False };
        }
        let pick = |rng: &mut dyn rand::RngCore, scope: &[String]| scope[rng.gen_range(0..scope.len())].clone();
        return match rng.gen_range(0..if dist { 3 } else { 2 }) {
            0 => {
                let (name, arity) = symbols[rng.gen_range(0..symbols.len())];
                Formula::Atom(name.to_string(), (0..arity).map(|_| pick(rng, scope)).collect())
            }
            1 => Formula::Equal(pick(rng, scope), pick(rng, scope)),
            _ => Formula::DistLe(rng.gen_range(1..=3), pick(rng, scope), pick(rng, scope)),
        };
    }
    match rng.gen_range(0..5) {
        0 | 1 => {
            let v = format!("v{}", scope.len());
            scope.push(v.clone());
            let body = random_formula(rng, symbols, depth - 1, scope, dist);
            scope.pop();
            if rng.gen_bool(0.5) {
                Formula::exists(v, body)
            } else {
                Formula::forall(v, body)
            }
        }
        2 => Formula::not(random_formula(rng, symbols, depth, scope, dist)),
        3 => Formula::And(vec![
            random_formula(rng, symbols, depth - 1, scope, dist),
            random_formula(rng, symbols, depth - 1, scope, dist),
        ]),
        _ => Formula::Or(vec![
            random_formula(rng, symbols, depth - 1, scope, dist),
            random_formula(rng, symbols, depth - 1, scope, dist),
        ]),
    }
}

pub fn random_matrix(rng: &mut impl Rng, n: usize, p: f64) -> Matrix {
    let mut m = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                m[i][j] = true;
                m[j][i] = true;
            }
        }
    }
    m
}

pub fn to_graph(m: &Matrix) -> Structure {
    let n = m.len();
    Structure::graph(n, (0..n).flat_map(|i| (i + 1..n).filter(move |&j| m[i][j]).map(move |j| (i, j)))).unwrap()
}
