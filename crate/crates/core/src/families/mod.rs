//! Graph families: cycles, cliques, wheels and bouquets of cycles, and the
//! double-ring gadgets `G_n`, `D_n` with their quotients `A_n`, `B_n`, `C_n`.
//!
//! Every generator labels its vertices. Wheels and bouquets use `apex` and
//! `c<i>` (or `c<k>.<i>` for the `k`-th cycle of a bouquet); the gadgets use
//! `v1`, `v2`, `a<i>`, `b<i>` with 1-based indices.

mod class_c;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::hom::Homomorphism;
use crate::structure::{quotient, Element, Partition, Quotient, Structure};

pub use class_c::{bouquet_oracle, in_class_c};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("cannot parse family `{0}`: expected one of cycle:n, clique:n, biclique:a,b, wheel:n, bouquet:n1+n2+..., gn:n, dn:n, an:n, bn:n, cn:n")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Cycle(usize),
    Clique(usize),
    Biclique(usize, usize),
    Wheel(usize),
    Bouquet(Vec<usize>),
    G(usize),
    D(usize),
    A(usize),
    B(usize),
    C(usize),
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || FamilyError::Parse(s.to_string());
        let (name, params) = s.split_once(':').ok_or_else(err)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| err());
        Ok(match name.trim() {
            "cycle" => Family::Cycle(num(params)?),
            "clique" => Family::Clique(num(params)?),
            "biclique" => {
                let (a, b) = params.split_once(',').ok_or_else(err)?;
                Family::Biclique(num(a)?, num(b)?)
            }
            "wheel" => Family::Wheel(num(params)?),
            "bouquet" => Family::Bouquet(params.split('+').map(num).collect::<Result<_, _>>()?),
            "gn" => Family::G(num(params)?),
            "dn" => Family::D(num(params)?),
            "an" => Family::A(num(params)?),
            "bn" => Family::B(num(params)?),
            "cn" => Family::C(num(params)?),
            _ => return Err(err()),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Clique(n) => write!(f, "clique:{n}"),
            Family::Biclique(a, b) => write!(f, "biclique:{a},{b}"),
            Family::Wheel(n) => write!(f, "wheel:{n}"),
            Family::Bouquet(ns) => {
                let parts: Vec<String> = ns.iter().map(usize::to_string).collect();
                write!(f, "bouquet:{}", parts.join("+"))
            }
            Family::G(n) => write!(f, "gn:{n}"),
            Family::D(n) => write!(f, "dn:{n}"),
            Family::A(n) => write!(f, "an:{n}"),
            Family::B(n) => write!(f, "bn:{n}"),
            Family::C(n) => write!(f, "cn:{n}"),
        }
    }
}

fn require(ok: bool, what: impl FnOnce() -> String) -> Result<(), FamilyError> {
    if ok {
        Ok(())
    } else {
        Err(FamilyError::OutOfRange(what()))
    }
}

pub fn generate(family: &Family) -> Result<Structure, FamilyError> {
    let g = match family {
        Family::Cycle(n) => {
            require(*n >= 3, || format!("cycle needs n >= 3, got {n}"))?;
            Structure::graph(*n, (0..*n).map(|i| (i, (i + 1) % n)))
                .expect("valid")
                .with_labels((0..*n).map(|i| (i, format!("c{i}"))))
        }
        Family::Clique(n) => {
            require(*n >= 1, || "clique needs n >= 1".into())?;
            let edges = (0..*n).flat_map(|i| (i + 1..*n).map(move |j| (i, j)));
            Structure::graph(*n, edges).expect("valid")
        }
        Family::Biclique(a, b) => {
            require(*a >= 1 && *b >= 1, || "biclique needs a, b >= 1".into())?;
            let (a, b) = (*a, *b);
            let edges = (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)));
            Structure::graph(a + b, edges)
                .expect("valid")
                .with_labels((0..a).map(|i| (i, format!("l{i}"))))
                .with_labels((0..b).map(|j| (a + j, format!("r{j}"))))
        }
        Family::Wheel(n) => {
            require(*n >= 3, || format!("wheel needs n >= 3, got {n}"))?;
            bouquet(&[*n])
        }
        Family::Bouquet(ns) => {
            require(!ns.is_empty(), || "bouquet needs at least one cycle".into())?;
            require(ns.iter().all(|&n| n >= 3), || "bouquet cycles need length >= 3".into())?;
            bouquet(ns)
        }
        Family::G(n) => {
            require(*n >= 1, || "gn needs n >= 1".into())?;
            gadget(*n, false)
        }
        Family::D(n) => {
            require(*n >= 3, || format!("dn needs n >= 3, got {n}"))?;
            gadget(*n, true)
        }
        Family::A(n) => an_quotient(*n)?.structure,
        Family::B(n) => bn_quotient(*n)?.structure,
        Family::C(n) => cn_quotient(*n)?.structure,
    };
    Ok(g)
}

/// Apex is vertex 0; cycles follow consecutively.
fn bouquet(ns: &[usize]) -> Structure {
    let total: usize = ns.iter().sum();
    let mut edges = Vec::with_capacity(2 * total);
    let mut labels = vec![(0, "apex".to_string())];
    let mut start = 1;
    for (k, &n) in ns.iter().enumerate() {
        for i in 0..n {
            let v = start + i;
            edges.push((0, v));
            edges.push((v, start + (i + 1) % n));
            let name = if ns.len() == 1 {
                format!("c{i}")
            } else {
                format!("c{k}.{i}")
            };
            labels.push((v, name));
        }
        start += n;
    }
    Structure::graph(total + 1, edges)
        .expect("valid")
        .with_labels(labels)
}

/// Vertex ids in `G_n` / `D_n`.
pub mod gadget_ids {
    use crate::structure::Element;

    pub const V1: Element = 0;
    pub const V2: Element = 1;

    /// `a_i`, 1-based.
    pub fn a(i: usize) -> Element {
        1 + i
    }

    /// `b_i`, 1-based.
    pub fn b(n: usize, i: usize) -> Element {
        1 + n + i
    }
}

fn gadget(n: usize, closed: bool) -> Structure {
    use gadget_ids::{a, b, V1, V2};
    let mut edges = Vec::new();
    for i in 1..=n {
        edges.push((V1, a(i)));
        edges.push((V2, b(n, i)));
        edges.push((a(i), b(n, i)));
    }
    for i in 1..n {
        edges.push((a(i), a(i + 1)));
        edges.push((b(n, i), b(n, i + 1)));
        edges.push((a(i + 1), b(n, i)));
    }
    if closed {
        edges.push((a(1), a(n)));
        edges.push((b(n, 1), b(n, n)));
        edges.push((a(1), b(n, n)));
    }
    let mut labels = vec![(V1, "v1".to_string()), (V2, "v2".to_string())];
    for i in 1..=n {
        labels.push((a(i), format!("a{i}")));
        labels.push((b(n, i), format!("b{i}")));
    }
    Structure::graph(2 * n + 2, edges)
        .expect("valid")
        .with_labels(labels)
}

fn gadget_quotient(n: usize, x: Element, y: Element, name: &str) -> Result<Quotient, FamilyError> {
    require(n >= 3, || format!("{name} needs n >= 3, got {n}"))?;
    let g = gadget(n, false);
    quotient(&g, &Partition::generated_by(g.size(), [(x, y)]))
        .map_err(|e| FamilyError::OutOfRange(e.to_string()))
}

/// `α_n : G_n → A_n = G_n / (a_1, a_n)`.
pub fn an_quotient(n: usize) -> Result<Quotient, FamilyError> {
    gadget_quotient(n, gadget_ids::a(1), gadget_ids::a(n), "an")
}

/// `β_n : G_n → B_n = G_n / (a_1, b_n)`.
pub fn bn_quotient(n: usize) -> Result<Quotient, FamilyError> {
    gadget_quotient(n, gadget_ids::a(1), gadget_ids::b(n, n), "bn")
}

/// `γ_n : G_n → C_n = G_n / (b_1, b_n)`.
pub fn cn_quotient(n: usize) -> Result<Quotient, FamilyError> {
    gadget_quotient(n, gadget_ids::b(n, 1), gadget_ids::b(n, n), "cn")
}

/// The wrap `δ_{n,m} : G_n → D_m`, sending `a_i ↦ a_{((i-1) mod m)+1}` and
/// likewise for `b_i`.
pub fn delta_hom(n: usize, m: usize) -> Result<Homomorphism, FamilyError> {
    use gadget_ids::{a, b, V1, V2};
    require(3 <= m && m <= n, || format!("delta needs 3 <= m <= n, got n={n}, m={m}"))?;
    let gn = gadget(n, false);
    let dm = gadget(m, true);
    let mut map = vec![0; gn.size()];
    map[V1] = V1;
    map[V2] = V2;
    for i in 1..=n {
        let j = (i - 1) % m + 1;
        map[a(i)] = a(j);
        map[b(n, i)] = b(m, j);
    }
    Homomorphism::new(&gn, &dm, map).map_err(|e| FamilyError::OutOfRange(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{are_isomorphic, is_substructure, SubstructureMode};

    #[test]
    fn parse_and_display_round_trip() {
        for s in [
            "cycle:5", "clique:4", "biclique:2,3", "wheel:9", "bouquet:6+9+10", "gn:3", "dn:9",
            "an:6", "bn:4", "cn:5",
        ] {
            let f: Family = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("wheel".parse::<Family>().is_err());
        assert!("star:3".parse::<Family>().is_err());
        assert!("bouquet:3+x".parse::<Family>().is_err());
    }

    #[test]
    fn sizes() {
        let w9 = generate(&Family::Wheel(9)).unwrap();
        assert_eq!((w9.size(), w9.edge_count()), (10, 18));
        let g9 = generate(&Family::G(9)).unwrap();
        let d9 = generate(&Family::D(9)).unwrap();
        assert_eq!(d9.size(), 20);
        assert_eq!(d9.edge_count(), g9.edge_count() + 3);
        assert_eq!(g9.edge_count(), 3 * 9 + 3 * 8);
        assert_eq!(generate(&Family::A(6)).unwrap().size(), 13);
        let b = generate(&Family::Bouquet(vec![6, 9, 10])).unwrap();
        assert_eq!((b.size(), b.edge_count()), (26, 50));
        let k23 = generate(&Family::Biclique(2, 3)).unwrap();
        assert_eq!((k23.size(), k23.edge_count()), (5, 6));
    }

    #[test]
    fn wheel_is_single_bouquet() {
        assert_eq!(
            generate(&Family::Wheel(7)).unwrap(),
            generate(&Family::Bouquet(vec![7])).unwrap()
        );
    }

    #[test]
    fn ranges() {
        assert!(generate(&Family::Cycle(2)).is_err());
        assert!(generate(&Family::Wheel(2)).is_err());
        assert!(generate(&Family::Bouquet(vec![3, 2])).is_err());
        assert!(generate(&Family::D(2)).is_err());
        assert!(generate(&Family::A(2)).is_err());
        assert!(generate(&Family::G(0)).is_err());
        assert!(delta_hom(4, 5).is_err());
        assert!(delta_hom(4, 2).is_err());
    }

    #[test]
    fn gn_is_induced_not_free_in_dn() {
        for n in 3..=7 {
            let g = generate(&Family::G(n)).unwrap();
            let d = generate(&Family::D(n)).unwrap();
            assert_eq!(g.size(), 2 * n + 2);
            let id: Vec<_> = g.elements().collect();
            assert!(is_substructure(&g, &d, SubstructureMode::Weak, Some(&id)).unwrap());
            assert!(!is_substructure(&g, &d, SubstructureMode::Induced, Some(&id)).unwrap());
        }
    }

    #[test]
    fn quotients_are_full() {
        for n in 3..=7 {
            let g = generate(&Family::G(n)).unwrap();
            for q in [an_quotient(n), bn_quotient(n), cn_quotient(n)] {
                let q = q.unwrap();
                assert_eq!(q.structure.size(), 2 * n + 1);
                let h = Homomorphism::new(&g, &q.structure, q.map.clone()).unwrap();
                assert!(h.kind().full && !h.kind().injective);
            }
        }
    }

    #[test]
    fn delta_wraps() {
        let d = delta_hom(7, 4).unwrap();
        assert_eq!(d.apply(gadget_ids::a(5)), gadget_ids::a(1));
        assert_eq!(d.apply(gadget_ids::b(7, 7)), gadget_ids::b(4, 3));
        delta_hom(8, 4).unwrap();
        // δ_{m,m} is the inclusion G_m ⊆ D_m
        let id = delta_hom(5, 5).unwrap();
        assert_eq!(id.map(), (0..12).collect::<Vec<_>>().as_slice());
        assert!(id.kind().injective);
    }

    #[test]
    fn b_and_d_triangulations_are_isomorphic_to_themselves() {
        let b4 = generate(&Family::B(4)).unwrap();
        assert!(are_isomorphic(&b4, &b4));
    }
}
