use super::{Formula, Fresh, LogicError, Var};
use crate::structure::{Structure, Vocabulary, EDGE};

/// Maximum quantifier nesting. A distance atom `dist(x,y) ≤ r` counts as the
/// rank of its graph expansion, `max(r - 1, 0)`.
pub fn quantifier_rank(f: &Formula) -> usize {
    match f {
        Formula::Exists(_, b) | Formula::Forall(_, b) => 1 + quantifier_rank(b),
        Formula::And(ps) | Formula::Or(ps) => ps.iter().map(quantifier_rank).max().unwrap_or(0),
        Formula::Not(b) => quantifier_rank(b),
        Formula::DistLe(r, _, _) => r.saturating_sub(1),
        Formula::Atom(..) | Formula::Equal(..) | Formula::True | Formula::False => 0,
    }
}

/// Only `∃`, `∧`, `∨`, atoms, equalities, distance atoms and constants.
/// Distance atoms qualify because their expansion is itself existential
/// positive.
pub fn is_existential_positive(f: &Formula) -> bool {
    match f {
        Formula::Exists(_, b) => is_existential_positive(b),
        Formula::And(ps) | Formula::Or(ps) => ps.iter().all(is_existential_positive),
        Formula::Forall(..) | Formula::Not(_) => false,
        Formula::Atom(..) | Formula::Equal(..) | Formula::DistLe(..) | Formula::True | Formula::False => {
            true
        }
    }
}

type Adjacency<'a> = dyn Fn(&str, &str, &mut Fresh) -> Formula + 'a;

fn expand(f: &Formula, adj: &Adjacency, fresh: &mut Fresh) -> Formula {
    match f {
        Formula::Exists(v, b) => Formula::Exists(v.clone(), Box::new(expand(b, adj, fresh))),
        Formula::Forall(v, b) => Formula::Forall(v.clone(), Box::new(expand(b, adj, fresh))),
        Formula::And(ps) => Formula::And(ps.iter().map(|p| expand(p, adj, fresh)).collect()),
        Formula::Or(ps) => Formula::Or(ps.iter().map(|p| expand(p, adj, fresh)).collect()),
        Formula::Not(b) => Formula::not(expand(b, adj, fresh)),
        Formula::DistLe(r, x, y) => distance_expansion(*r, x, y, adj, fresh),
        other => other.clone(),
    }
}

fn distance_expansion(r: usize, x: &str, y: &str, adj: &Adjacency, fresh: &mut Fresh) -> Formula {
    let step = |a: &str, b: &str, fresh: &mut Fresh| {
        Formula::Or(vec![Formula::eq(a, b), adj(a, b, fresh)])
    };
    match r {
        0 => Formula::eq(x, y),
        1 => step(x, y, fresh),
        _ => {
            let mids: Vec<Var> = (1..r).map(|_| fresh.next("m")).collect();
            let mut chain = Vec::with_capacity(r);
            let mut prev = x.to_string();
            for m in &mids {
                chain.push(step(&prev, m, fresh));
                prev = m.clone();
            }
            chain.push(step(&prev, y, fresh));
            Formula::exists_all(mids, Formula::And(chain))
        }
    }
}

/// Replaces distance atoms by first-order formulas over `vocab`: adjacency is
/// co-occurrence in a tuple of some symbol of arity at least 2, and radius `r`
/// is a chain through `r - 1` existentially quantified midpoints.
pub fn to_pure_fo(f: &Formula, vocab: &Vocabulary) -> Formula {
    let wide: Vec<(String, usize)> = vocab
        .symbols()
        .iter()
        .filter(|s| s.arity >= 2)
        .map(|s| (s.name.clone(), s.arity))
        .collect();
    let adj = move |x: &str, y: &str, fresh: &mut Fresh| {
        let mut parts = Vec::new();
        for (name, arity) in &wide {
            for i in 0..*arity {
                for j in 0..*arity {
                    if i == j {
                        continue;
                    }
                    let mut others = Vec::new();
                    let args: Vec<Var> = (0..*arity)
                        .map(|p| {
                            if p == i {
                                x.to_string()
                            } else if p == j {
                                y.to_string()
                            } else {
                                let v = fresh.next("w");
                                others.push(v.clone());
                                v
                            }
                        })
                        .collect();
                    parts.push(Formula::exists_all(others, Formula::Atom(name.clone(), args)));
                }
            }
        }
        Formula::or(parts)
    };
    let mut fresh = Fresh::avoiding(&[f]);
    expand(f, &adj, &mut fresh)
}

/// [`to_pure_fo`] for graphs, where `E` is symmetric and adjacency is the
/// single atom `E(x, y)`.
pub fn to_pure_fo_graph(f: &Formula) -> Formula {
    let adj = |x: &str, y: &str, _: &mut Fresh| Formula::edge(x, y);
    let mut fresh = Fresh::avoiding(&[f]);
    expand(f, &adj, &mut fresh)
}

/// Substitutes `to` for the free occurrences of `from`, renaming binders that
/// would capture `to`.
pub fn rename_free(f: &Formula, from: &str, to: &str) -> Formula {
    let mut fresh = Fresh::avoiding(&[f]);
    fresh.reserve(from);
    fresh.reserve(to);
    subst(f, from, to, &mut fresh)
}

fn subst(f: &Formula, from: &str, to: &str, fresh: &mut Fresh) -> Formula {
    let r = |v: &Var| if v == from { to.to_string() } else { v.clone() };
    match f {
        Formula::Exists(v, b) | Formula::Forall(v, b) => {
            let (v, b) = if v == from {
                (v.clone(), (**b).clone())
            } else if v == to && b.free_vars().contains(from) {
                let new = fresh.next(v);
                (new.clone(), subst(&subst(b, v, &new, fresh), from, to, fresh))
            } else {
                (v.clone(), subst(b, from, to, fresh))
            };
            if matches!(f, Formula::Exists(..)) {
                Formula::Exists(v, Box::new(b))
            } else {
                Formula::Forall(v, Box::new(b))
            }
        }
        Formula::And(ps) => Formula::And(ps.iter().map(|p| subst(p, from, to, fresh)).collect()),
        Formula::Or(ps) => Formula::Or(ps.iter().map(|p| subst(p, from, to, fresh)).collect()),
        Formula::Not(b) => Formula::not(subst(b, from, to, fresh)),
        Formula::Atom(s, vs) => Formula::Atom(s.clone(), vs.iter().map(r).collect()),
        Formula::Equal(x, y) => Formula::Equal(r(x), r(y)),
        Formula::DistLe(k, x, y) => Formula::DistLe(*k, r(x), r(y)),
        Formula::True | Formula::False => f.clone(),
    }
}

/// Relativisation to the `r`-ball around `center`: `∃x θ` becomes
/// `∃x (dist(center,x) ≤ r ∧ θ)` and `∀x θ` becomes `∀x (dist(center,x) ≤ r → θ)`.
/// Quantifiers that rebind `center` are renamed first.
///
/// Distance atoms inside `psi` keep their meaning in the ambient structure;
/// apply [`to_pure_fo`] beforehand to relativise them as well.
pub fn relativize(psi: &Formula, center: &str, r: usize) -> Formula {
    let mut fresh = Fresh::avoiding(&[psi]);
    fresh.reserve(center);
    rel(psi, center, r, &mut fresh)
}

fn rel(f: &Formula, c: &str, r: usize, fresh: &mut Fresh) -> Formula {
    match f {
        Formula::Exists(v, b) | Formula::Forall(v, b) => {
            let (v, b) = if v == c {
                let new = fresh.next(v);
                let renamed = subst(b, v, &new, fresh);
                (new, renamed)
            } else {
                (v.clone(), (**b).clone())
            };
            let body = rel(&b, c, r, fresh);
            let guard = Formula::dist_le(r, c, v.clone());
            if matches!(f, Formula::Exists(..)) {
                Formula::Exists(v, Box::new(Formula::And(vec![guard, body])))
            } else {
                Formula::Forall(v, Box::new(Formula::implies(guard, body)))
            }
        }
        Formula::And(ps) => Formula::And(ps.iter().map(|p| rel(p, c, r, fresh)).collect()),
        Formula::Or(ps) => Formula::Or(ps.iter().map(|p| rel(p, c, r, fresh)).collect()),
        Formula::Not(b) => Formula::not(rel(b, c, r, fresh)),
        other => other.clone(),
    }
}

/// `∃x_1 … x_n (⋀_{i<j} dist(x_i,x_j) > 2r ∧ ⋀_i ψ^{B^r(x_i)}(x_i))`.
/// `psi` has at most one free variable.
pub fn basic_local(r: usize, n: usize, psi: &Formula) -> Result<Formula, LogicError> {
    let free: Vec<Var> = psi.free_vars().into_iter().collect();
    if free.len() > 1 {
        return Err(LogicError::UnboundVariable(free[1].clone()));
    }
    let mut fresh = Fresh::avoiding(&[psi]);
    let xs: Vec<Var> = (0..n).map(|_| fresh.next("x")).collect();
    let mut parts = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            parts.push(Formula::not(Formula::dist_le(2 * r, xs[i].clone(), xs[j].clone())));
        }
    }
    for x in &xs {
        let local = match free.first() {
            Some(v) => rename_free(psi, v, x),
            None => psi.clone(),
        };
        parts.push(relativize(&local, x, r));
    }
    Ok(Formula::exists_all(xs, Formula::and(parts)))
}

/// `∃x_0 … x_{n-1} ⋀ atoms(A)`: true in `B` exactly when `A → B`.
pub fn canonical_query(a: &Structure) -> Formula {
    let var = |e: usize| format!("x{e}");
    let atoms = a
        .tuples()
        .map(|(s, t)| Formula::Atom(a.vocab().symbols()[s].name.clone(), t.iter().map(|&e| var(e)).collect()))
        .collect();
    Formula::exists_all(a.elements().map(var), Formula::and(atoms))
}

/// Whether `f` only mentions the graph symbol `E` at arity 2.
pub(crate) fn check_graph_vocabulary(f: &Formula) -> Result<(), LogicError> {
    for (name, arity) in f.symbols() {
        if name != EDGE || arity != 2 {
            return Err(LogicError::NotGraphVocabulary(format!("{name}/{arity}")));
        }
    }
    Ok(())
}
