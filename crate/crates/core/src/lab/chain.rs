use super::LabError;
use crate::families::{gadget_ids, generate, Family};
use crate::hom::{find_hom, Constraints, Homomorphism, SolverError, DEFAULT_BUDGET};
use crate::minor::{has_minor, Pattern};
use crate::structure::{Element, Structure};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DmOutcome {
    /// `embedding[v]` is the image of vertex `v` of `D_m` as numbered by the
    /// family generator.
    Found { m: usize, embedding: Vec<Element> },
    /// No seed satisfies the matrix of the sentence.
    NotFound,
    /// The input contains `K_4` or has a `K_5` minor.
    PreconditionFailed(String),
}

/// Whether `h` has a `K_4` subgraph.
pub(crate) fn has_k4(h: &Structure) -> Result<bool, SolverError> {
    Ok(find_hom(&Pattern::K4.graph(), h, &Constraints::none())?.is_some())
}

fn check_preconditions(h: &Structure) -> Result<Option<String>, LabError> {
    if !h.is_graph() {
        return Err(SolverError::NotAGraph.into());
    }
    if has_k4(h)? {
        return Ok(Some("contains K_4".into()));
    }
    if has_minor(h, &Pattern::K5.graph())? {
        return Ok(Some("has a K_5 minor".into()));
    }
    Ok(None)
}

/// Lexicographically smallest `(c, d)` with
/// `χ(x1, x2, a, b, c, d)`.
fn chi_step(adj: &[Vec<Element>], h: &Structure, x1: Element, x2: Element, a: Element, b: Element) -> Option<(Element, Element)> {
    adj[x1]
        .iter()
        .filter(|&&c| h.has_edge(a, c) && h.has_edge(b, c))
        .find_map(|&c| {
            adj[c]
                .iter()
                .find(|&&d| h.has_edge(b, d) && h.has_edge(d, x2))
                .map(|&d| (c, d))
        })
}

/// The matrix of the double-ring sentence at the seed `(x1, x2, y, z)`.
fn is_seed(adj: &[Vec<Element>], h: &Structure, [x1, x2, y, z]: [Element; 4]) -> bool {
    h.has_edge(x1, y)
        && h.has_edge(y, z)
        && h.has_edge(z, x2)
        && adj[x1].iter().all(|&a| {
            adj[a]
                .iter()
                .filter(|&&b| h.has_edge(b, x2))
                .all(|&b| chi_step(adj, h, x1, x2, a, b).is_some())
        })
}

/// Recovers an induced double ring `D_m` in `h` by running the chain of
/// partial homomorphisms from the double-ring sentence: the first seed
/// `(x1, x2, y, z)` satisfying its matrix starts `a_1 ↦ y, b_1 ↦ z`, and each
/// step maps `(a_{n+1}, b_{n+1})` to the smallest `χ`-witness until the pair
/// returns to `(y, z)`. The result is validated as an embedding.
pub fn find_induced_dm(h: &Structure) -> Result<DmOutcome, LabError> {
    if let Some(reason) = check_preconditions(h)? {
        return Ok(DmOutcome::PreconditionFailed(reason));
    }
    let adj = h.adjacency();
    let mut first = None;
    'search: for x1 in h.elements() {
        for &y in &adj[x1] {
            for &z in &adj[y] {
                for &x2 in &adj[z] {
                    if is_seed(&adj, h, [x1, x2, y, z]) {
                        first = Some([x1, x2, y, z]);
                        break 'search;
                    }
                }
            }
        }
    }
    let Some([x1, x2, y, z]) = first else {
        return Ok(DmOutcome::NotFound);
    };
    let limit = 2 * h.size();
    let mut rings = vec![(y, z)];
    loop {
        if rings.len() > limit {
            return Err(LabError::ChainBudget(limit));
        }
        let &(a, b) = rings.last().unwrap();
        let next = chi_step(&adj, h, x1, x2, a, b).expect("seed matrix guarantees a witness");
        if next == (y, z) {
            break;
        }
        rings.push(next);
    }
    let m = rings.len();
    let invalid = |reason: String| LabError::ChainInvalid { m, reason };
    if m < 3 {
        return Err(invalid("ring shorter than 3".into()));
    }
    let dm = generate(&Family::D(m))?;
    let mut embedding = vec![0; dm.size()];
    embedding[gadget_ids::V1] = x1;
    embedding[gadget_ids::V2] = x2;
    for (i, &(a, b)) in rings.iter().enumerate() {
        embedding[gadget_ids::a(i + 1)] = a;
        embedding[gadget_ids::b(m, i + 1)] = b;
    }
    let hom = Homomorphism::new(&dm, h, embedding).map_err(|e| invalid(e.to_string()))?;
    if !hom.kind().embedding() {
        return Err(invalid(format!("map is not an embedding: {:?}", hom.kind())));
    }
    Ok(DmOutcome::Found { m, embedding: hom.map().to_vec() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditEntry {
    pub hom_exists: bool,
    /// Some `m ≥ 4` dividing `n` with `D_m` an induced subgraph.
    pub divisor_witness: Option<usize>,
    /// Set when the candidate is not `K_4`-free and `K_5`-minor-free.
    pub precondition: Option<String>,
}

impl AuditEntry {
    /// A homomorphism exists exactly when some `D_m` with `m | n` embeds.
    pub fn consistent(&self) -> bool {
        self.precondition.is_some() || self.hom_exists == self.divisor_witness.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub n: usize,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn consistent(&self) -> bool {
        self.entries.iter().all(AuditEntry::consistent)
    }
}

/// For each candidate `H`: does `D_n → H` exist, and does `H` contain an
/// induced `D_m` with `4 ≤ m`, `m | n`? For `K_4`-free, `K_5`-minor-free
/// candidates the two must agree.
pub fn hom_image_audit(n: usize, candidates: &[Structure], budget: Option<u64>) -> Result<AuditReport, LabError> {
    let dn = generate(&Family::D(n))?;
    let budget = budget.unwrap_or(DEFAULT_BUDGET);
    let mut entries = Vec::with_capacity(candidates.len());
    for h in candidates {
        let precondition = check_preconditions(h)?;
        let hom_exists = find_hom(&dn, h, &Constraints::none().with_budget(budget))?.is_some();
        let mut divisor_witness = None;
        for m in (4..=n).filter(|m| n.is_multiple_of(*m) && 2 * m + 2 <= h.size()) {
            let dm = generate(&Family::D(m))?;
            if find_hom(&dm, h, &Constraints::embedding().with_budget(budget))?.is_some() {
                divisor_witness = Some(m);
                break;
            }
        }
        entries.push(AuditEntry { hom_exists, divisor_witness, precondition });
    }
    Ok(AuditReport { n, entries })
}
