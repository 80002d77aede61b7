use super::{find_hom, Constraints, SolverError, DEFAULT_BUDGET};
use crate::families::{generate, Family};
use crate::structure::Structure;

/// Exact chromatic number: least `k` with a homomorphism into `K_k`.
pub fn chromatic_number(g: &Structure) -> Result<usize, SolverError> {
    chromatic_number_with_budget(g, DEFAULT_BUDGET)
}

pub fn chromatic_number_with_budget(g: &Structure, budget: u64) -> Result<usize, SolverError> {
    if !g.is_graph() {
        return Err(SolverError::NotAGraph);
    }
    if g.size() == 0 {
        return Ok(0);
    }
    for k in 1..=g.size() {
        let kk = generate(&Family::Clique(k)).expect("clique of positive order");
        if find_hom(g, &kk, &Constraints::none().with_budget(budget))?.is_some() {
            return Ok(k);
        }
    }
    unreachable!("K_n always receives a hom from an n-vertex graph")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wheels_and_cliques() {
        let w9 = generate(&Family::Wheel(9)).unwrap();
        assert_eq!(chromatic_number(&w9).unwrap(), 4);
        let (u, v) = w9.edges()[0];
        assert_eq!(chromatic_number(&w9.without_edges(&[(u, v)]).unwrap()).unwrap(), 3);
        for n in 1..=6 {
            assert_eq!(chromatic_number(&generate(&Family::Clique(n)).unwrap()).unwrap(), n);
        }
        assert_eq!(chromatic_number(&Structure::graph(3, []).unwrap()).unwrap(), 1);
        assert_eq!(chromatic_number(&Structure::graph(0, []).unwrap()).unwrap(), 0);
    }
}
