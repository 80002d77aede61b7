//! Backtracking homomorphism search.
//!
//! Candidate sets are bitsets over the target domain. Variables are picked
//! most-constrained first (fewest candidates, lowest id on ties); candidates
//! are tried in ascending order. After each assignment, binary tuples are
//! forward-checked and then made arc consistent.

use std::collections::HashSet;

use super::{Constraints, Homomorphism, SolverError};
use crate::structure::{Element, Structure};

const UNASSIGNED: usize = usize::MAX;

struct BinarySym {
    /// `out[b]`: row of `{b' : (b, b') ∈ R^B}`; `inn[b]`: `{b' : (b', b) ∈ R^B}`.
    out: usize,
    inn: usize,
    /// `R^A` as a dense matrix.
    source: Vec<bool>,
}

struct Problem<'a> {
    source: &'a Structure,
    target: &'a Structure,
    cons: &'a Constraints,
    na: usize,
    nb: usize,
    words: usize,
    /// Row tables, each `nb * words` long.
    tables: Vec<Vec<u64>>,
    binary: Vec<BinarySym>,
    /// For each source element: `(table, other)` meaning
    /// `f(other) ∈ tables[table][f(a)]`.
    arcs: Vec<Vec<(usize, Element)>>,
    /// Tuples of arity ≥ 3 touching each source element.
    high: Vec<Vec<(usize, Vec<Element>)>>,
    high_target: Vec<HashSet<Vec<Element>>>,
    nodes: u64,
}

enum Flow {
    Continue,
    Stop,
}

impl<'a> Problem<'a> {
    fn new(source: &'a Structure, target: &'a Structure, cons: &'a Constraints) -> Self {
        let na = source.size();
        let nb = target.size();
        let words = nb.div_ceil(64).max(1);
        let mut tables = Vec::new();
        let mut binary = Vec::new();
        let mut arcs = vec![Vec::new(); na];
        let mut high = vec![Vec::new(); na];
        let mut high_target = vec![HashSet::new(); source.vocab().len()];

        for (s, sym) in source.vocab().symbols().iter().enumerate() {
            match sym.arity {
                2 => {
                    let mut out = vec![0u64; nb * words];
                    let mut inn = vec![0u64; nb * words];
                    for t in target.relation(s) {
                        set(&mut out[t[0] * words..(t[0] + 1) * words], t[1]);
                        set(&mut inn[t[1] * words..(t[1] + 1) * words], t[0]);
                    }
                    let (ti, to) = (tables.len(), tables.len() + 1);
                    tables.push(out);
                    tables.push(inn);
                    let mut m = vec![false; na * na];
                    for t in source.relation(s) {
                        m[t[0] * na + t[1]] = true;
                        if t[0] != t[1] {
                            arcs[t[0]].push((ti, t[1]));
                            arcs[t[1]].push((to, t[0]));
                        }
                    }
                    binary.push(BinarySym {
                        out: ti,
                        inn: to,
                        source: m,
                    });
                }
                1 => {}
                _ => {
                    for t in source.relation(s) {
                        let distinct: std::collections::BTreeSet<_> = t.iter().copied().collect();
                        for &e in &distinct {
                            high[e].push((s, t.clone()));
                        }
                    }
                    high_target[s] = target.relation(s).iter().cloned().collect();
                }
            }
        }
        for a in arcs.iter_mut() {
            a.sort_unstable();
            a.dedup();
        }
        Problem {
            source,
            target,
            cons,
            na,
            nb,
            words,
            tables,
            binary,
            arcs,
            high,
            high_target,
            nodes: 0,
        }
    }

    fn row(&self, table: usize, b: Element) -> &[u64] {
        &self.tables[table][b * self.words..(b + 1) * self.words]
    }

    fn dom<'d>(&self, doms: &'d [u64], a: Element) -> &'d [u64] {
        &doms[a * self.words..(a + 1) * self.words]
    }

    fn dom_mut<'d>(&self, doms: &'d mut [u64], a: Element) -> &'d mut [u64] {
        &mut doms[a * self.words..(a + 1) * self.words]
    }

    /// Unary, diagonal and degree filters.
    fn initial_domains(&self) -> Vec<u64> {
        let w = self.words;
        let mut doms = vec![0u64; self.na * w];
        let mut full = vec![0u64; w];
        for b in 0..self.nb {
            set(&mut full, b);
        }
        for a in 0..self.na {
            doms[a * w..(a + 1) * w].copy_from_slice(&full);
        }
        let strong = self.cons.strong;
        for (s, sym) in self.source.vocab().symbols().iter().enumerate() {
            match sym.arity {
                1 => {
                    let mut unary = vec![0u64; w];
                    for t in self.target.relation(s) {
                        set(&mut unary, t[0]);
                    }
                    for a in 0..self.na {
                        let here = self.source.contains(s, &[a]);
                        let d = self.dom_mut(&mut doms, a);
                        if here {
                            and(d, &unary);
                        } else if strong {
                            and_not(d, &unary);
                        }
                    }
                }
                2 => {
                    let mut diag = vec![0u64; w];
                    for b in 0..self.nb {
                        if self.target.contains(s, &[b, b]) {
                            set(&mut diag, b);
                        }
                    }
                    for a in 0..self.na {
                        let here = self.source.contains(s, &[a, a]);
                        let d = self.dom_mut(&mut doms, a);
                        if here {
                            and(d, &diag);
                        } else if strong {
                            and_not(d, &diag);
                        }
                    }
                }
                _ => {}
            }
        }
        if self.cons.injective {
            for bs in &self.binary {
                for (table, sel) in [(bs.out, 0usize), (bs.inn, 1usize)] {
                    let tdeg: Vec<u32> = (0..self.nb).map(|b| popcount(self.row(table, b))).collect();
                    for a in 0..self.na {
                        let sdeg = (0..self.na)
                            .filter(|&x| {
                                if sel == 0 {
                                    bs.source[a * self.na + x]
                                } else {
                                    bs.source[x * self.na + a]
                                }
                            })
                            .count() as u32;
                        let d = &mut doms[a * w..(a + 1) * w];
                        for (b, &deg) in tdeg.iter().enumerate() {
                            if deg < sdeg {
                                clear(d, b);
                            }
                        }
                    }
                }
            }
        }
        doms
    }

    /// Assigns `a ↦ b` and propagates. Returns false on a wipe-out.
    fn assign(&self, doms: &mut [u64], assigned: &mut [Element], a: Element, b: Element) -> bool {
        let w = self.words;
        {
            let d = self.dom_mut(doms, a);
            if !get(d, b) {
                return false;
            }
            d.iter_mut().for_each(|x| *x = 0);
            set(d, b);
        }
        assigned[a] = b;
        for &(table, other) in &self.arcs[a] {
            if assigned[other] == UNASSIGNED {
                let row = self.row(table, b).to_vec();
                and(&mut doms[other * w..(other + 1) * w], &row);
            }
        }
        if self.cons.strong {
            for bs in &self.binary {
                let out = self.row(bs.out, b).to_vec();
                let inn = self.row(bs.inn, b).to_vec();
                for x in 0..self.na {
                    if x == a || assigned[x] != UNASSIGNED {
                        continue;
                    }
                    let d = &mut doms[x * w..(x + 1) * w];
                    if !bs.source[a * self.na + x] {
                        and_not(d, &out);
                    }
                    if !bs.source[x * self.na + a] {
                        and_not(d, &inn);
                    }
                }
            }
        }
        if self.cons.injective {
            for x in 0..self.na {
                if x != a && assigned[x] == UNASSIGNED {
                    clear(&mut doms[x * w..(x + 1) * w], b);
                }
            }
        }
        for (s, t) in &self.high[a] {
            if t.iter().all(|&e| assigned[e] != UNASSIGNED) {
                let img: Vec<Element> = t.iter().map(|&e| assigned[e]).collect();
                if !self.high_target[*s].contains(&img) {
                    return false;
                }
            }
        }
        self.arc_consistency(doms, assigned)
    }

    fn arc_consistency(&self, doms: &mut [u64], assigned: &[Element]) -> bool {
        let w = self.words;
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..self.na {
                if assigned[x] != UNASSIGNED {
                    continue;
                }
                for &(table, y) in &self.arcs[x] {
                    if assigned[y] != UNASSIGNED {
                        continue;
                    }
                    let dy = doms[y * w..(y + 1) * w].to_vec();
                    let dx = &mut doms[x * w..(x + 1) * w];
                    let candidates: Vec<usize> = ones(dx).collect();
                    for b in candidates {
                        let row = &self.tables[table][b * w..(b + 1) * w];
                        if !intersects(row, &dy) {
                            clear(dx, b);
                            changed = true;
                        }
                    }
                    if is_zero(dx) {
                        return false;
                    }
                }
            }
        }
        (0..self.na).all(|x| !is_zero(self.dom(doms, x)))
    }

    fn full_feasible(&self, assigned: &[Element]) -> bool {
        if !self.cons.full {
            return true;
        }
        let mut hit = vec![false; self.nb];
        let mut free = 0;
        for &b in assigned {
            if b == UNASSIGNED {
                free += 1;
            } else {
                hit[b] = true;
            }
        }
        let missing = hit.iter().filter(|h| !**h).count();
        free >= missing
    }

    #[allow(clippy::ptr_arg)]
    fn search(
        &mut self,
        doms: &mut Vec<u64>,
        assigned: &mut Vec<Element>,
        visit: &mut dyn FnMut(&[Element]) -> Flow,
    ) -> Result<Flow, SolverError> {
        let next = (0..self.na)
            .filter(|&x| assigned[x] == UNASSIGNED)
            .min_by_key(|&x| (popcount(self.dom(doms, x)), x));
        let Some(a) = next else {
            let map = assigned.clone();
            let h = Homomorphism::from_trusted(self.source, self.target, map);
            if self.cons.admits(h.kind()) {
                return Ok(visit(h.map()));
            }
            return Ok(Flow::Continue);
        };
        let candidates: Vec<Element> = ones(self.dom(doms, a)).collect();
        for b in candidates {
            self.nodes += 1;
            if self.nodes > self.cons.budget {
                return Err(SolverError::BudgetExceeded(self.cons.budget));
            }
            let mut d2 = doms.clone();
            let mut as2 = assigned.clone();
            if !self.assign(&mut d2, &mut as2, a, b) || !self.full_feasible(&as2) {
                continue;
            }
            if let Flow::Stop = self.search(&mut d2, &mut as2, visit)? {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[Element]) -> Flow) -> Result<(), SolverError> {
        if self.cons.injective && self.na > self.nb {
            return Ok(());
        }
        if self.cons.full && self.na < self.nb {
            return Ok(());
        }
        if self.na > 0 && self.nb == 0 {
            return Ok(());
        }
        let mut doms = self.initial_domains();
        let mut assigned = vec![UNASSIGNED; self.na];
        for &(a, b) in &self.cons.partial {
            if !self.assign(&mut doms, &mut assigned, a, b) {
                return Ok(());
            }
        }
        if !self.full_feasible(&assigned) {
            return Ok(());
        }
        self.search(&mut doms, &mut assigned, visit).map(|_| ())
    }
}

fn validate(source: &Structure, target: &Structure, cons: &Constraints) -> Result<(), SolverError> {
    if source.vocab() != target.vocab() {
        return Err(SolverError::VocabularyMismatch);
    }
    let mut seen: std::collections::BTreeMap<Element, Element> = Default::default();
    for &(a, b) in &cons.partial {
        if a >= source.size() || b >= target.size() {
            return Err(SolverError::InconsistentPartial(format!("pair ({a}, {b}) out of range")));
        }
        if let Some(&prev) = seen.get(&a) {
            if prev != b {
                return Err(SolverError::InconsistentPartial(format!(
                    "element {a} mapped to both {prev} and {b}"
                )));
            }
        }
        seen.insert(a, b);
    }
    if cons.injective {
        let images: std::collections::BTreeSet<_> = seen.values().collect();
        if images.len() != seen.len() {
            return Err(SolverError::InconsistentPartial(
                "partial map is not injective".into(),
            ));
        }
    }
    Ok(())
}

/// First homomorphism found (deterministic), or `None` if none exists.
pub fn find_hom(
    source: &Structure,
    target: &Structure,
    cons: &Constraints,
) -> Result<Option<Homomorphism>, SolverError> {
    validate(source, target, cons)?;
    let mut found = None;
    let mut p = Problem::new(source, target, cons);
    p.run(&mut |m| {
        found = Some(m.to_vec());
        Flow::Stop
    })?;
    Ok(found.map(|m| Homomorphism::from_trusted(source, target, m)))
}

/// All homomorphisms satisfying the constraints, sorted lexicographically by
/// map.
pub fn enumerate_homs(
    source: &Structure,
    target: &Structure,
    cons: &Constraints,
) -> Result<Vec<Homomorphism>, SolverError> {
    validate(source, target, cons)?;
    let mut maps = Vec::new();
    let mut p = Problem::new(source, target, cons);
    p.run(&mut |m| {
        maps.push(m.to_vec());
        Flow::Continue
    })?;
    maps.sort();
    Ok(maps
        .into_iter()
        .map(|m| Homomorphism::from_trusted(source, target, m))
        .collect())
}

/// Number of homomorphisms satisfying the constraints.
pub fn count_homs(
    source: &Structure,
    target: &Structure,
    cons: &Constraints,
) -> Result<u64, SolverError> {
    validate(source, target, cons)?;
    let mut n = 0u64;
    let mut p = Problem::new(source, target, cons);
    p.run(&mut |_| {
        n += 1;
        Flow::Continue
    })?;
    Ok(n)
}

// ----- bitset helpers -----

fn set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn clear(bits: &mut [u64], i: usize) {
    bits[i / 64] &= !(1 << (i % 64));
}

fn get(bits: &[u64], i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

fn and(dst: &mut [u64], src: &[u64]) {
    dst.iter_mut().zip(src).for_each(|(d, s)| *d &= s);
}

fn and_not(dst: &mut [u64], src: &[u64]) {
    dst.iter_mut().zip(src).for_each(|(d, s)| *d &= !s);
}

fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

fn is_zero(a: &[u64]) -> bool {
    a.iter().all(|&x| x == 0)
}

fn popcount(a: &[u64]) -> u32 {
    a.iter().map(|x| x.count_ones()).sum()
}

fn ones(a: &[u64]) -> impl Iterator<Item = usize> + '_ {
    a.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{delta_hom, generate, Family};
    use crate::structure::Vocabulary;

    fn g(f: Family) -> Structure {
        generate(&f).unwrap()
    }

    #[test]
    fn identity_is_found() {
        let d4 = g(Family::D(4));
        let id: Vec<_> = d4.elements().collect();
        let found = find_hom(&d4, &d4, &Constraints::none().with_partial(
            id.iter().map(|&e| (e, e)).collect(),
        ))
        .unwrap()
        .unwrap();
        assert_eq!(found.map(), id.as_slice());
    }

    #[test]
    fn odd_cycles() {
        let c3 = g(Family::Cycle(3));
        let c5 = g(Family::Cycle(5));
        assert!(find_hom(&c5, &c3, &Constraints::none()).unwrap().is_some());
        assert!(find_hom(&c3, &c5, &Constraints::none()).unwrap().is_none());
    }

    #[test]
    fn k2_into_k3_count() {
        let k2 = g(Family::Clique(2));
        let k3 = g(Family::Clique(3));
        let all = enumerate_homs(&k2, &k3, &Constraints::none()).unwrap();
        assert_eq!(all.len(), 6);
        assert_eq!(count_homs(&k2, &k3, &Constraints::none()).unwrap(), 6);
        let maps: Vec<Vec<usize>> = all.iter().map(|h| h.map().to_vec()).collect();
        let mut sorted = maps.clone();
        sorted.sort();
        assert_eq!(maps, sorted);
    }

    #[test]
    fn delta_wrap_found_by_search() {
        let g8 = g(Family::G(8));
        let d4 = g(Family::D(4));
        let delta = delta_hom(8, 4).unwrap();
        let partial: Vec<_> = ["v1", "v2", "a1", "b1"]
            .iter()
            .map(|l| (g8.element_by_label(l).unwrap(), d4.element_by_label(l).unwrap()))
            .collect();
        let h = find_hom(&g8, &d4, &Constraints::none().with_partial(partial))
            .unwrap()
            .expect("wrap exists");
        assert!(Homomorphism::new(&g8, &d4, h.map().to_vec()).is_ok());
        assert!(Homomorphism::new(&g8, &d4, delta.map().to_vec()).is_ok());
    }

    #[test]
    fn every_wheel_endomorphism_is_full() {
        let w5 = g(Family::Wheel(5));
        let all = enumerate_homs(&w5, &w5, &Constraints::none()).unwrap();
        assert!(!all.is_empty());
        assert!(all.iter().all(|h| h.kind().full));
    }

    #[test]
    fn g3_into_d4_injective() {
        let g3 = g(Family::G(3));
        let d4 = g(Family::D(4));
        let all = enumerate_homs(&g3, &d4, &Constraints::none()).unwrap();
        assert!(!all.is_empty());
        assert!(all.iter().all(|h| h.kind().injective));
    }

    #[test]
    fn constraints_filter() {
        let c6 = g(Family::Cycle(6));
        let k2 = g(Family::Clique(2));
        assert_eq!(count_homs(&c6, &k2, &Constraints::none()).unwrap(), 2);
        assert_eq!(count_homs(&c6, &k2, &Constraints::full()).unwrap(), 2);
        assert_eq!(count_homs(&c6, &k2, &Constraints::injective()).unwrap(), 0);
        assert_eq!(count_homs(&k2, &c6, &Constraints::embedding()).unwrap(), 12);
        let p3 = Structure::graph(3, [(0, 1), (1, 2)]).unwrap();
        // induced paths of length 2 in C6: 6 centres, 2 orientations
        assert_eq!(count_homs(&p3, &c6, &Constraints::embedding()).unwrap(), 12);
        let k3 = g(Family::Clique(3));
        assert_eq!(count_homs(&p3, &k3, &Constraints::embedding()).unwrap(), 0);
    }

    #[test]
    fn higher_arity_and_unary() {
        let v = Vocabulary::new([("R", 3), ("P", 1)]).unwrap();
        let a = Structure::new(v.clone(), 3, [("R", vec![0, 1, 2]), ("P", vec![0])]).unwrap();
        let b = Structure::new(
            v,
            4,
            [("R", vec![3, 1, 2]), ("R", vec![0, 0, 0]), ("P", vec![3])],
        )
        .unwrap();
        let all = enumerate_homs(&a, &b, &Constraints::none()).unwrap();
        let maps: Vec<_> = all.iter().map(|h| h.map().to_vec()).collect();
        assert_eq!(maps, vec![vec![3, 1, 2]]);
    }

    #[test]
    fn errors() {
        let k2 = g(Family::Clique(2));
        let v = Vocabulary::new([("R", 2)]).unwrap();
        let other = Structure::empty(v, 2);
        assert_eq!(
            find_hom(&k2, &other, &Constraints::none()).unwrap_err(),
            SolverError::VocabularyMismatch
        );
        assert!(matches!(
            find_hom(&k2, &k2, &Constraints::none().with_partial(vec![(0, 0), (0, 1)])),
            Err(SolverError::InconsistentPartial(_))
        ));
        let w9 = g(Family::Wheel(9));
        let k3 = g(Family::Clique(3));
        assert_eq!(
            find_hom(&w9, &k3, &Constraints::none().with_budget(5)).unwrap_err(),
            SolverError::BudgetExceeded(5)
        );
    }
}
