use crate::structure::{Element, Structure, StructureError};

/// Smallest wheel order generating the class.
pub const MIN_WHEEL_ORDER: usize = 5;

/// Membership in the closure of the odd wheels `W_5, W_7, ...` under
/// subgraphs and disjoint unions.
///
/// Decided per component: a connected `C` is a subgraph of some odd wheel iff
/// for some vertex `x` (the apex candidate) `C - x` is either a linear forest
/// or a whole cycle of odd length at least 5.
pub fn in_class_c(g: &Structure) -> Result<bool, StructureError> {
    if !g.is_graph() {
        return Err(StructureError::NotAGraph);
    }
    let adj = g.adjacency();
    Ok(crate::structure::components(&adj)
        .iter()
        .all(|comp| component_fits_wheel(&adj, comp)))
}

fn component_fits_wheel(adj: &[Vec<Element>], comp: &[Element]) -> bool {
    if comp.len() <= 2 {
        return true;
    }
    comp.iter().any(|&x| {
        let rest: Vec<Element> = comp.iter().copied().filter(|&v| v != x).collect();
        let mut inside = vec![false; adj.len()];
        for &v in &rest {
            inside[v] = true;
        }
        let deg = |v: Element| adj[v].iter().filter(|&&w| inside[w]).count();
        if rest.iter().any(|&v| deg(v) > 2) {
            return false;
        }
        let edges: usize = rest.iter().map(|&v| deg(v)).sum::<usize>() / 2;
        let pieces = count_pieces(adj, &rest, &inside);
        let linear_forest = edges + pieces == rest.len();
        let odd_cycle = pieces == 1
            && rest.iter().all(|&v| deg(v) == 2)
            && rest.len() % 2 == 1
            && rest.len() >= MIN_WHEEL_ORDER;
        linear_forest || odd_cycle
    })
}

fn count_pieces(adj: &[Vec<Element>], vertices: &[Element], inside: &[bool]) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut pieces = 0;
    for &s in vertices {
        if seen[s] {
            continue;
        }
        pieces += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    pieces
}

/// Whether some component of `g` is exactly a bouquet of cycles: a vertex
/// adjacent to every other vertex of the component, with the remainder
/// 2-regular. Formula-free decision of the bouquet property.
pub fn bouquet_oracle(g: &Structure) -> bool {
    let adj = g.adjacency();
    crate::structure::components(&adj).iter().any(|comp| {
        comp.len() >= 4
            && comp.iter().any(|&x| {
                adj[x].len() == comp.len() - 1
                    && comp
                        .iter()
                        .filter(|&&v| v != x)
                        .all(|&v| adj[v].len() == 3)
            })
    })
}
