use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{Element, Partition, Structure, StructureError};
use crate::hom::{self, Constraints, Homomorphism};

/// Gaifman graph: elements co-occurring in a tuple become adjacent.
pub fn gaifman_graph(a: &Structure) -> Structure {
    let adj = a.adjacency();
    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)));
    Structure::graph(a.size(), edges)
        .expect("adjacency is loop-free and in range")
        .with_labels(a.labels().clone())
}

/// Gaifman distances from `source` (`None` = unreachable).
pub(crate) fn bfs_distances(adj: &[Vec<Element>], source: Element) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap();
        for &v in &adj[u] {
            if dist[v].is_none() {
                dist[v] = Some(d + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Elements at Gaifman distance at most `r` from `center`.
pub fn ball(a: &Structure, center: Element, r: usize) -> Result<BTreeSet<Element>, StructureError> {
    if center >= a.size() {
        return Err(StructureError::ElementOutOfRange {
            element: center,
            size: a.size(),
        });
    }
    let dist = bfs_distances(&a.adjacency(), center);
    Ok(dist
        .iter()
        .enumerate()
        .filter(|(_, d)| matches!(d, Some(d) if *d <= r))
        .map(|(e, _)| e)
        .collect())
}

/// An induced substructure together with the map from its (re-indexed)
/// elements back to the original ones.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub structure: Structure,
    /// `elements[new] = old`, ascending.
    pub elements: Vec<Element>,
}

impl Restriction {
    /// New id of an original element, if retained.
    pub fn new_id(&self, old: Element) -> Option<Element> {
        self.elements.binary_search(&old).ok()
    }
}

/// `A[S]`: the substructure induced on `subset`, re-indexed in ascending
/// order of the original ids.
pub fn induced_substructure<I>(a: &Structure, subset: I) -> Result<Restriction, StructureError>
where
    I: IntoIterator<Item = Element>,
{
    let elements: Vec<Element> = subset.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    if let Some(&e) = elements.iter().find(|&&e| e >= a.size()) {
        return Err(StructureError::ElementOutOfRange {
            element: e,
            size: a.size(),
        });
    }
    let mut new_id = vec![usize::MAX; a.size()];
    for (i, &e) in elements.iter().enumerate() {
        new_id[e] = i;
    }
    let relations = a
        .relations()
        .iter()
        .map(|rel| {
            rel.iter()
                .filter(|t| t.iter().all(|&e| new_id[e] != usize::MAX))
                .map(|t| t.iter().map(|&e| new_id[e]).collect())
                .collect()
        })
        .collect();
    let mut s = Structure::from_parts(a.vocab_arc().clone(), elements.len(), relations);
    s.set_labels(
        a.labels()
            .iter()
            .filter(|(&e, _)| new_id[e] != usize::MAX)
            .map(|(&e, l)| (new_id[e], l.clone()))
            .collect(),
    );
    Ok(Restriction {
        structure: s,
        elements,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubstructureMode {
    /// Inclusion is a homomorphism.
    Weak,
    /// Inclusion is an embedding.
    Induced,
    /// Induced, and no tuple of the host mixes the part with its complement.
    Free,
}

fn check_inclusion(
    b: &Structure,
    a: &Structure,
    map: &[Element],
    mode: SubstructureMode,
) -> Result<bool, StructureError> {
    if map.len() != b.size() {
        return Err(StructureError::Invalid(format!(
            "inclusion map has {} entries, expected {}",
            map.len(),
            b.size()
        )));
    }
    if let Some(&e) = map.iter().find(|&&e| e >= a.size()) {
        return Err(StructureError::ElementOutOfRange {
            element: e,
            size: a.size(),
        });
    }
    let image: BTreeSet<Element> = map.iter().copied().collect();
    if image.len() != map.len() {
        return Ok(false);
    }
    let Ok(h) = Homomorphism::new(b, a, map.to_vec()) else {
        return Ok(false);
    };
    match mode {
        SubstructureMode::Weak => Ok(true),
        SubstructureMode::Induced => Ok(h.kind().embedding()),
        SubstructureMode::Free => Ok(h.kind().embedding()
            && a.tuples().all(|(_, t)| {
                let inside = t.iter().filter(|e| image.contains(e)).count();
                inside == 0 || inside == t.len()
            })),
    }
}

/// Whether `b` is a (weak / induced / free) substructure of `a`.
///
/// With `map`, the given injection is checked. Without it, an injection is
/// searched for.
pub fn is_substructure(
    b: &Structure,
    a: &Structure,
    mode: SubstructureMode,
    map: Option<&[Element]>,
) -> Result<bool, StructureError> {
    if b.vocab() != a.vocab() {
        return Err(StructureError::VocabularyMismatch);
    }
    if let Some(map) = map {
        return check_inclusion(b, a, map, mode);
    }
    if b.size() > a.size() {
        return Ok(false);
    }
    let search_err = |e: hom::SolverError| StructureError::Invalid(e.to_string());
    match mode {
        SubstructureMode::Weak => Ok(hom::find_hom(b, a, &Constraints::injective())
            .map_err(search_err)?
            .is_some()),
        SubstructureMode::Induced => Ok(hom::find_hom(b, a, &Constraints::embedding())
            .map_err(search_err)?
            .is_some()),
        SubstructureMode::Free => {
            // A free part is a union of Gaifman components of the host.
            let comps = components(&a.adjacency());
            let mut found = false;
            let target = b.size();
            let mut chosen = Vec::new();
            choose_components(&comps, 0, target, &mut chosen, &mut |sel| {
                let subset = sel.iter().flat_map(|&c| comps[c].iter().copied());
                let part = induced_substructure(a, subset)?;
                if super::are_isomorphic(&part.structure, b) {
                    found = true;
                }
                Ok(found)
            })?;
            Ok(found)
        }
    }
}

fn choose_components(
    comps: &[Vec<Element>],
    from: usize,
    remaining: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> Result<bool, StructureError>,
) -> Result<bool, StructureError> {
    if remaining == 0 {
        return visit(chosen);
    }
    for c in from..comps.len() {
        if comps[c].len() <= remaining {
            chosen.push(c);
            let stop = choose_components(comps, c + 1, remaining - comps[c].len(), chosen, visit)?;
            chosen.pop();
            if stop {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Connected components (each sorted), ordered by smallest element.
pub(crate) fn components(adj: &[Vec<Element>]) -> Vec<Vec<Element>> {
    let mut seen = vec![false; adj.len()];
    let mut out = Vec::new();
    for s in 0..adj.len() {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// `A + B`; elements of `b` are shifted by `|A|`.
pub fn disjoint_union(a: &Structure, b: &Structure) -> Result<Structure, StructureError> {
    if a.vocab() != b.vocab() {
        return Err(StructureError::VocabularyMismatch);
    }
    let shift = a.size();
    let relations = a
        .relations()
        .iter()
        .zip(b.relations())
        .map(|(ra, rb)| {
            ra.iter()
                .cloned()
                .chain(rb.iter().map(|t| t.iter().map(|&e| e + shift).collect()))
                .collect()
        })
        .collect();
    let mut s = Structure::from_parts(a.vocab_arc().clone(), a.size() + b.size(), relations);
    let mut labels = a.labels().clone();
    labels.extend(b.labels().iter().map(|(&e, l)| (e + shift, l.clone())));
    s.set_labels(labels);
    Ok(s)
}

/// A quotient structure with its projection map.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub structure: Structure,
    /// `map[a]` = class of `a`; classes numbered by smallest member.
    pub map: Vec<Element>,
}

/// `A / P`. For graphs, identifying two adjacent vertices is rejected.
pub fn quotient(a: &Structure, p: &Partition) -> Result<Quotient, StructureError> {
    if p.len() != a.size() {
        return Err(StructureError::Invalid(format!(
            "partition over {} elements, structure has {}",
            p.len(),
            a.size()
        )));
    }
    if a.is_graph() {
        if let Some((u, v)) = a.edges().into_iter().find(|&(u, v)| p.same(u, v)) {
            return Err(StructureError::LoopInQuotient(u, v));
        }
    }
    let (count, map) = p.class_indices();
    let relations = a
        .relations()
        .iter()
        .map(|rel| {
            rel.iter()
                .map(|t| t.iter().map(|&e| map[e]).collect())
                .collect()
        })
        .collect();
    let mut s = Structure::from_parts(a.vocab_arc().clone(), count, relations);
    // A class inherits the label of its smallest labelled member.
    let mut labels = BTreeMap::new();
    for (&e, l) in a.labels() {
        labels.entry(map[e]).or_insert_with(|| l.clone());
    }
    s.set_labels(labels);
    Ok(Quotient { structure: s, map })
}

/// A free amalgam with the embeddings of both factors.
#[derive(Debug, Clone)]
pub struct Amalgam {
    pub structure: Structure,
    pub left: Vec<Element>,
    pub right: Vec<Element>,
}

/// `A ⊕_S B`: glue `a` and `b` along `shared`, a list of pairs
/// `(element of a, element of b)` naming the same point of `S`.
///
/// The two induced copies of `S` must coincide under the pairing.
pub fn free_amalgam(
    a: &Structure,
    b: &Structure,
    shared: &[(Element, Element)],
) -> Result<Amalgam, StructureError> {
    if a.vocab() != b.vocab() {
        return Err(StructureError::VocabularyMismatch);
    }
    for &(x, y) in shared {
        if x >= a.size() {
            return Err(StructureError::ElementOutOfRange { element: x, size: a.size() });
        }
        if y >= b.size() {
            return Err(StructureError::ElementOutOfRange { element: y, size: b.size() });
        }
    }
    let left_set: BTreeSet<_> = shared.iter().map(|p| p.0).collect();
    let right_set: BTreeSet<_> = shared.iter().map(|p| p.1).collect();
    if left_set.len() != shared.len() || right_set.len() != shared.len() {
        return Err(StructureError::AmalgamMismatch(
            "shared identification is not a bijection".into(),
        ));
    }
    let to_b: BTreeMap<Element, Element> = shared.iter().copied().collect();
    for (i, sym) in a.vocab().symbols().iter().enumerate() {
        let from_a: BTreeSet<Vec<Element>> = a
            .relation(i)
            .iter()
            .filter(|t| t.iter().all(|e| left_set.contains(e)))
            .map(|t| t.iter().map(|e| to_b[e]).collect())
            .collect();
        let from_b: BTreeSet<Vec<Element>> = b
            .relation(i)
            .iter()
            .filter(|t| t.iter().all(|e| right_set.contains(e)))
            .cloned()
            .collect();
        if from_a != from_b {
            return Err(StructureError::AmalgamMismatch(format!(
                "relation `{}` differs on the shared part",
                sym.name
            )));
        }
    }
    let union = disjoint_union(a, b)?;
    let shift = a.size();
    let p = Partition::generated_by(union.size(), shared.iter().map(|&(x, y)| (x, y + shift)));
    let q = quotient(&union, &p)?;
    let left = q.map[..shift].to_vec();
    let right = q.map[shift..].to_vec();
    Ok(Amalgam {
        structure: q.structure,
        left,
        right,
    })
}

/// `⊕^n_S M` with the embedding of every copy.
#[derive(Debug, Clone)]
pub struct IteratedAmalgam {
    pub structure: Structure,
    /// `copies[i][m]` = image of element `m` of the `i`-th copy.
    pub copies: Vec<Vec<Element>>,
}

impl IteratedAmalgam {
    /// The map collapsing every copy back onto `M`.
    pub fn fold_map(&self) -> Vec<Element> {
        let mut out = vec![usize::MAX; self.structure.size()];
        for copy in &self.copies {
            for (m, &img) in copy.iter().enumerate() {
                out[img] = m;
            }
        }
        out
    }
}

/// `M ⊕_S M ⊕_S ⋯ ⊕_S M` (`n` copies).
pub fn iterated_amalgam(
    m: &Structure,
    shared: &[Element],
    n: usize,
) -> Result<IteratedAmalgam, StructureError> {
    if n == 0 {
        return Err(StructureError::Invalid("iterated amalgam needs n >= 1".into()));
    }
    if let Some(&e) = shared.iter().find(|&&e| e >= m.size()) {
        return Err(StructureError::ElementOutOfRange { element: e, size: m.size() });
    }
    let mut acc = m.clone();
    let mut copies: Vec<Vec<Element>> = vec![(0..m.size()).collect()];
    for _ in 1..n {
        let pairs: Vec<(Element, Element)> = shared.iter().map(|&s| (copies[0][s], s)).collect();
        let am = free_amalgam(&acc, m, &pairs)?;
        for copy in &mut copies {
            for e in copy.iter_mut() {
                *e = am.left[*e];
            }
        }
        copies.push(am.right);
        acc = am.structure;
    }
    Ok(IteratedAmalgam {
        structure: acc,
        copies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, Family};
    use crate::structure::{are_isomorphic, Vocabulary};

    fn wheel(n: usize) -> Structure {
        families::generate(&Family::Wheel(n)).unwrap()
    }

    #[test]
    fn gaifman_of_ternary_tuple_is_triangle() {
        let v = Vocabulary::new([("R", 3)]).unwrap();
        let a = Structure::new(v, 3, [("R", vec![0, 1, 2])]).unwrap();
        let g = gaifman_graph(&a);
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn gaifman_of_graph_is_itself() {
        let w = wheel(5);
        assert_eq!(gaifman_graph(&w), w);
    }

    #[test]
    fn balls() {
        let w = wheel(5);
        let apex = w.element_by_label("apex").unwrap();
        assert_eq!(ball(&w, apex, 1).unwrap().len(), 6);
        assert_eq!(ball(&w, 3, 0).unwrap(), BTreeSet::from([3]));
        assert!(ball(&w, 6, 1).is_err());
        let g9 = families::generate(&Family::G(9)).unwrap();
        let v1 = g9.element_by_label("v1").unwrap();
        let mut expect: BTreeSet<_> = (1..=9)
            .map(|i| g9.element_by_label(&format!("a{i}")).unwrap())
            .collect();
        expect.insert(v1);
        assert_eq!(ball(&g9, v1, 1).unwrap(), expect);
    }

    #[test]
    fn wheel_minus_apex_is_cycle() {
        let w = wheel(5);
        let apex = w.element_by_label("apex").unwrap();
        let rest = induced_substructure(&w, w.elements().filter(|&e| e != apex)).unwrap();
        let c5 = families::generate(&Family::Cycle(5)).unwrap();
        assert!(are_isomorphic(&rest.structure, &c5));
    }

    #[test]
    fn induced_on_d4_subset() {
        let d4 = families::generate(&Family::D(4)).unwrap();
        let id = |l: &str| d4.element_by_label(l).unwrap();
        let sub = induced_substructure(&d4, [id("v1"), id("v2"), id("a1"), id("b1")]).unwrap();
        // v1-a1, a1-b1, b1-v2 survive; v1-v2 and a1-... others absent
        let names: BTreeSet<(String, String)> = sub
            .structure
            .edges()
            .into_iter()
            .map(|(u, v)| {
                let mut p = [
                    sub.structure.label(u).unwrap().to_string(),
                    sub.structure.label(v).unwrap().to_string(),
                ];
                p.sort();
                (p[0].clone(), p[1].clone())
            })
            .collect();
        let expect: BTreeSet<(String, String)> = [("a1", "v1"), ("a1", "b1"), ("b1", "v2")]
            .iter()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect();
        assert_eq!(names, expect);
        assert!(induced_substructure(&d4, [99]).is_err());
    }

    #[test]
    fn substructure_modes_on_wheels() {
        let w = wheel(5);
        let c5 = families::generate(&Family::Cycle(5)).unwrap();
        assert!(is_substructure(&c5, &w, SubstructureMode::Induced, None).unwrap());
        assert!(!is_substructure(&c5, &w, SubstructureMode::Free, None).unwrap());
        let k3 = families::generate(&Family::Clique(3)).unwrap();
        let wk = disjoint_union(&w, &k3).unwrap();
        assert!(is_substructure(&w, &wk, SubstructureMode::Free, None).unwrap());
        let apex = w.element_by_label("apex").unwrap();
        let wc = w.with_vertex(&[apex]).unwrap();
        let inclusion: Vec<Element> = w.elements().collect();
        assert!(is_substructure(&w, &wc, SubstructureMode::Induced, Some(&inclusion)).unwrap());
        assert!(!is_substructure(&w, &wc, SubstructureMode::Free, Some(&inclusion)).unwrap());
        assert!(!is_substructure(&w, &wc, SubstructureMode::Free, None).unwrap());
    }

    #[test]
    fn quotient_rejects_loops_and_collapses_duplicates() {
        let c4 = families::generate(&Family::Cycle(4)).unwrap();
        let q = quotient(&c4, &Partition::generated_by(4, [(0, 2)])).unwrap();
        assert_eq!(q.structure.size(), 3);
        assert_eq!(q.structure.edge_count(), 2);
        assert_eq!(
            quotient(&c4, &Partition::generated_by(4, [(0, 1)])).unwrap_err(),
            StructureError::LoopInQuotient(0, 1)
        );
        let id = quotient(&c4, &Partition::discrete(4)).unwrap();
        assert_eq!(id.structure, c4);
        assert_eq!(id.map, vec![0, 1, 2, 3]);
    }

    #[test]
    fn amalgam_over_apex_builds_bouquet() {
        let w = wheel(5);
        let apex = w.element_by_label("apex").unwrap();
        let am = free_amalgam(&w, &w, &[(apex, apex)]).unwrap();
        let bouquet = families::generate(&Family::Bouquet(vec![5, 5])).unwrap();
        assert!(are_isomorphic(&am.structure, &bouquet));
        let it = iterated_amalgam(&w, &[apex], 3).unwrap();
        let b3 = families::generate(&Family::Bouquet(vec![5, 5, 5])).unwrap();
        assert!(are_isomorphic(&it.structure, &b3));
        assert_eq!(it.structure.size(), 3 * 6 - 2);
    }

    #[test]
    fn amalgam_rejects_mismatched_shared_part() {
        let w = wheel(5);
        let apex = w.element_by_label("apex").unwrap();
        // apex and a rim vertex are adjacent in w; pairing with two rim
        // vertices that are not adjacent must fail
        let rim = (0..w.size()).find(|&e| e != apex).unwrap();
        let far = (0..w.size())
            .find(|&e| e != apex && e != rim && !w.has_edge(rim, e))
            .unwrap();
        assert!(matches!(
            free_amalgam(&w, &w, &[(apex, rim), (rim, far)]),
            Err(StructureError::AmalgamMismatch(_))
        ));
        assert!(iterated_amalgam(&w, &[apex], 0).is_err());
    }
}
