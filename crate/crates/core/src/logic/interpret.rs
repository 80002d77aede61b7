use super::transform::{check_graph_vocabulary, to_pure_fo_graph};
use super::{Formula, LogicError};
use crate::structure::{Element, Structure, Vocabulary, EDGE};

/// `σ = {E, P_1, …, P_k, Q_1, …, Q_k}`.
pub fn pbar_vocabulary(k: usize) -> Vocabulary {
    let mut symbols = vec![(EDGE.to_string(), 2)];
    symbols.extend((1..=k).map(|i| (format!("P{i}"), 1)));
    symbols.extend((1..=k).map(|i| (format!("Q{i}"), 1)));
    Vocabulary::new(symbols).expect("distinct names")
}

/// The structure `p̄G`: edges touching some `p_i` are removed, `P_i = {p_i}`
/// and `Q_i` holds the neighbours of `p_i` in `G`.
pub fn pbar_structure(g: &Structure, pbar: &[Element]) -> Result<Structure, LogicError> {
    if !g.is_graph() {
        return Err(LogicError::NotAGraph);
    }
    for (i, &p) in pbar.iter().enumerate() {
        if p >= g.size() {
            return Err(LogicError::ElementOutOfRange(p));
        }
        if pbar[..i].contains(&p) {
            return Err(LogicError::InvalidTuple(format!("element {p} repeated")));
        }
    }
    let k = pbar.len();
    let mut tuples: Vec<(String, Vec<Element>)> = Vec::new();
    for (u, v) in g.edges() {
        if !pbar.contains(&u) && !pbar.contains(&v) {
            tuples.push((EDGE.to_string(), vec![u, v]));
            tuples.push((EDGE.to_string(), vec![v, u]));
        }
    }
    let adj = g.adjacency();
    for (i, &p) in pbar.iter().enumerate() {
        tuples.push((format!("P{}", i + 1), vec![p]));
        for &q in &adj[p] {
            tuples.push((format!("Q{}", i + 1), vec![q]));
        }
    }
    let s = Structure::new(pbar_vocabulary(k), g.size(), tuples).expect("tuples are in range");
    Ok(s.with_labels(g.labels().iter().map(|(&e, l)| (e, l.clone()))))
}

/// `φ^k`: distance atoms are expanded first, then every `E(x, y)` becomes
/// `ε(x,y) ∨ ε(y,x)` with `ε(x,y) = ⋁_i (P_i(x) ∧ Q_i(y)) ∨ E(x,y)`. Since `E`
/// stays symmetric in `p̄G`, the redundant `E(y,x)` is dropped, leaving a
/// `2k + 1`-way disjunction.
pub fn interpret_k(phi: &Formula, k: usize) -> Result<Formula, LogicError> {
    check_graph_vocabulary(phi)?;
    Ok(replace_edges(&to_pure_fo_graph(phi), k))
}

fn replace_edges(f: &Formula, k: usize) -> Formula {
    match f {
        Formula::Exists(v, b) => Formula::exists(v.clone(), replace_edges(b, k)),
        Formula::Forall(v, b) => Formula::forall(v.clone(), replace_edges(b, k)),
        Formula::And(ps) => Formula::And(ps.iter().map(|p| replace_edges(p, k)).collect()),
        Formula::Or(ps) => Formula::Or(ps.iter().map(|p| replace_edges(p, k)).collect()),
        Formula::Not(b) => Formula::not(replace_edges(b, k)),
        Formula::Atom(_, vs) => {
            let (x, y) = (&vs[0], &vs[1]);
            let mut parts = vec![Formula::edge(x.clone(), y.clone())];
            for i in 1..=k {
                let (p, q) = (format!("P{i}"), format!("Q{i}"));
                parts.push(Formula::And(vec![Formula::atom(&p, [x]), Formula::atom(&q, [y])]));
                parts.push(Formula::And(vec![Formula::atom(&p, [y]), Formula::atom(&q, [x])]));
            }
            Formula::or(parts)
        }
        other => other.clone(),
    }
}
