use super::{Element, Structure};
use crate::hom::{self, Constraints};

/// Largest domain for which [`canonical_form`] enumerates permutations.
pub const CANONICAL_FORM_LIMIT: usize = 9;

/// Lexicographically least relabelled tuple list over all permutations of
/// the domain. Two structures over the same vocabulary are isomorphic iff
/// their canonical forms are equal. `None` above [`CANONICAL_FORM_LIMIT`].
pub fn canonical_form(a: &Structure) -> Option<Vec<(usize, Vec<Element>)>> {
    let n = a.size();
    if n > CANONICAL_FORM_LIMIT {
        return None;
    }
    let tuples: Vec<(usize, &[Element])> = a.tuples().collect();
    let relabel = |perm: &[Element]| {
        let mut v: Vec<(usize, Vec<Element>)> = tuples
            .iter()
            .map(|(s, t)| (*s, t.iter().map(|&e| perm[e]).collect()))
            .collect();
        v.sort_unstable();
        v
    };
    let mut perm: Vec<Element> = (0..n).collect();
    let mut best = relabel(&perm);
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let cand = relabel(&perm);
            if cand < best {
                best = cand;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Some(best)
}

/// A bijection `a → b` preserving and reflecting every relation.
pub fn find_isomorphism(a: &Structure, b: &Structure) -> Option<Vec<Element>> {
    if a.vocab() != b.vocab() || a.size() != b.size() {
        return None;
    }
    if a.relations()
        .iter()
        .zip(b.relations())
        .any(|(x, y)| x.len() != y.len())
    {
        return None;
    }
    let mut da: Vec<usize> = a.adjacency().iter().map(Vec::len).collect();
    let mut db: Vec<usize> = b.adjacency().iter().map(Vec::len).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return None;
    }
    hom::find_hom(a, b, &Constraints::embedding())
        .ok()
        .flatten()
        .map(|h| h.map().to_vec())
}

pub fn are_isomorphic(a: &Structure, b: &Structure) -> bool {
    find_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, Family};
    use crate::structure::{Structure, Vocabulary};

    #[test]
    fn canonical_form_identifies_relabellings() {
        let p1 = Structure::graph(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let p2 = Structure::graph(4, [(3, 0), (0, 2), (2, 1)]).unwrap();
        let star = Structure::graph(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(canonical_form(&p1), canonical_form(&p2));
        assert_ne!(canonical_form(&p1), canonical_form(&star));
        assert!(are_isomorphic(&p1, &p2));
        assert!(!are_isomorphic(&p1, &star));
    }

    #[test]
    fn iso_respects_direction() {
        let v = Vocabulary::new([("R", 2)]).unwrap();
        let a = Structure::new(v.clone(), 3, [("R", vec![0, 1]), ("R", vec![1, 2])]).unwrap();
        let b = Structure::new(v.clone(), 3, [("R", vec![2, 1]), ("R", vec![1, 0])]).unwrap();
        let c = Structure::new(v, 3, [("R", vec![0, 1]), ("R", vec![2, 1])]).unwrap();
        assert!(are_isomorphic(&a, &b));
        assert!(!are_isomorphic(&a, &c));
        assert_ne!(canonical_form(&a), canonical_form(&c));
    }

    #[test]
    fn limit_is_enforced() {
        let c10 = generate(&Family::Cycle(10)).unwrap();
        assert!(canonical_form(&c10).is_none());
        assert!(are_isomorphic(&c10, &c10));
    }
}
