mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use fmtlab::families::{generate, in_class_c, Family};
use fmtlab::hom::find_hom;
use fmtlab::lab::{check_preservation, find_induced_dm, DmOutcome, PreservationMode};
use fmtlab::logic::{builtin, canonical_query, holds, parse};
use fmtlab::minor::{has_minor_by_search, is_outerplanar, is_planar, Pattern};
use fmtlab::structure::{disjoint_union, parse_structure, write_structure};
use fmtlab::{Constraints, Structure};

const MINOR_BUDGET: u64 = 50_000_000;

fn graph_strategy(max: usize) -> impl Strategy<Value = Structure> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            Structure::graph(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn minor(g: &Structure, p: Pattern) -> bool {
    has_minor_by_search(g, &p.graph(), MINOR_BUDGET).unwrap()
}

fn relabel(g: &Structure, perm: &[usize]) -> Structure {
    Structure::graph(g.size(), g.edges().into_iter().map(|(u, v)| (perm[u], perm[v]))).unwrap()
}

fn permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

/// A random subgraph of a disjoint union of odd wheels, at most 12 vertices.
fn class_member(rng: &mut impl Rng) -> Structure {
    let mut orders = vec![[5, 7, 9, 11][rng.gen_range(0..4)]];
    if orders[0] == 5 && rng.gen_bool(0.5) {
        orders.push(5);
    }
    let mut g = generate(&Family::Wheel(orders[0])).unwrap();
    for &n in &orders[1..] {
        g = disjoint_union(&g, &generate(&Family::Wheel(n)).unwrap()).unwrap();
    }
    if rng.gen_bool(0.6) {
        let removed: Vec<_> = g.edges().into_iter().filter(|_| rng.gen_bool(0.15)).collect();
        g = g.without_edges(&removed).unwrap();
    }
    relabel(&g, &permutation(rng, g.size()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn formula_text_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_formula(&mut rng, &[("E", 2), ("T", 3), ("P", 1)], 3, &mut Vec::new(), true);
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn structure_text_round_trips(g in graph_strategy(9)) {
        let back = parse_structure(&write_structure(&g)).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.size(), g.size());
    }

    #[test]
    fn planarity_matches_kuratowski_minors(g in graph_strategy(8)) {
        let excluded = !minor(&g, Pattern::K5) && !minor(&g, Pattern::K33);
        prop_assert_eq!(is_planar(&g).unwrap(), excluded);
    }

    #[test]
    fn outerplanarity_matches_excluded_minors(g in graph_strategy(8)) {
        let excluded = !minor(&g, Pattern::K4) && !minor(&g, Pattern::K23);
        prop_assert_eq!(is_outerplanar(&g).unwrap(), excluded);
    }

    #[test]
    fn class_membership_matches_wheel_embeddings(g in graph_strategy(7)) {
        let m = matrix(&g);
        // each component on k > 2 vertices must embed into an odd wheel with
        // at most k + 2 vertices
        let fits = (0..m.len()).all(|s| {
            let d = distances(&m, s);
            let comp: Vec<usize> = (0..m.len()).filter(|&v| d[v] != usize::MAX).collect();
            let sub: Matrix = comp.iter().map(|&u| comp.iter().map(|&v| m[u][v]).collect()).collect();
            comp[0] != s || comp.len() <= 2 || (5..=comp.len() + 2).step_by(2).any(|n| subgraph_of(&sub, &wheel(n)))
        });
        prop_assert_eq!(in_class_c(&g).unwrap(), fits);
    }

    #[test]
    fn class_members_model_bouquet_iff_a_wheel_maps_in(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = class_member(&mut rng);
        prop_assert!(in_class_c(&g).unwrap());
        let phi = builtin("phi_bouquet").unwrap();
        let hit = (5..=11).step_by(2).any(|n| {
            let w = generate(&Family::Wheel(n)).unwrap();
            if n == 5 && g.size() <= 8 {
                holds(&canonical_query(&w), &g).unwrap()
            } else {
                find_hom(&w, &g, &Constraints::none()).unwrap().is_some()
            }
        });
        prop_assert_eq!(holds(&phi, &g).unwrap(), hit);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn preservation_violations_restrict_to_prefixes(seed in any::<u64>(), cut in 1usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pool: Vec<Structure> = (0..8).map(|_| {
            let n = rng.gen_range(3..=7);
            to_graph(&random_matrix(&mut rng, n, 0.5))
        }).collect();
        let phi = builtin("phi_bouquet").unwrap();
        let full = check_preservation(&phi, &pool, PreservationMode::Hom, None).unwrap();
        let part = check_preservation(&phi, &pool[..cut], PreservationMode::Hom, None).unwrap();
        let expected: Vec<_> = full.violations.iter().copied().filter(|&(a, b)| a < cut && b < cut).collect();
        prop_assert_eq!(part.violations, expected);
        for &(a, b) in &full.violations {
            prop_assert!(full.models[a] && !full.models[b]);
            prop_assert!(hom_exists(&matrix(&pool[a]), &matrix(&pool[b])));
        }
    }

    #[test]
    fn induced_gadget_is_recovered(seed in any::<u64>(), n in 4usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = generate(&Family::D(n)).unwrap();
        // hang a random path off one vertex, then shuffle ids
        let mut g = d.clone();
        let mut last = rng.gen_range(0..d.size());
        for _ in 0..rng.gen_range(0..4) {
            g = g.with_vertex(&[last]).unwrap();
            last = g.size() - 1;
        }
        let perm = permutation(&mut rng, g.size());
        let g = relabel(&g, &perm);
        match find_induced_dm(&g).unwrap() {
            DmOutcome::Found { m, embedding } => {
                prop_assert_eq!(m, n);
                let (dm, gm) = (matrix(&d), matrix(&g));
                let mut ids = embedding.clone();
                ids.sort_unstable();
                ids.dedup();
                prop_assert_eq!(ids.len(), embedding.len());
                for x in 0..dm.len() {
                    for y in 0..dm.len() {
                        prop_assert_eq!(dm[x][y], gm[embedding[x]][embedding[y]]);
                    }
                }
            }
            other => prop_assert!(false, "expected D_{}, got {:?}", n, other),
        }
    }
}
