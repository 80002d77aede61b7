use super::{parse, Formula};

pub const BUILTIN_NAMES: &[&str] = &["psi_bouquet", "phi_bouquet", "chi6", "phi_planar", "phi_hat"];

/// `ψ(x, z)`: `z` has exactly two distinct neighbours other than `x`.
fn psi(x: &str, z: &str) -> String {
    format!(
        "(exists u (exists v (and (not (= u v)) (not (= u {x})) (not (= v {x})) \
         (rel E {z} u) (rel E {z} v) \
         (forall w (or (not (rel E w {z})) (= w u) (= w v) (= w {x}))))))"
    )
}

/// `χ(x1, x2, y1, z1, y2, z2)`: one step of the double ring.
fn chi([x1, x2, y1, z1, y2, z2]: [&str; 6]) -> String {
    format!(
        "(and (rel E {x1} {y2}) (rel E {y1} {y2}) (rel E {z1} {y2}) (rel E {z1} {z2}) (rel E {y2} {z2}) (rel E {z2} {x2}))"
    )
}

fn phi_bouquet() -> String {
    format!(
        "(exists x (exists y (and (rel E x y) (forall z (or (not (and (not (= z x)) (dist<= 2 x z))) (and (rel E x z) {}))))))",
        psi("x", "z")
    )
}

fn phi_planar() -> String {
    format!(
        "(exists x1 (exists x2 (exists y (exists z (and (rel E x1 y) (rel E y z) (rel E z x2) \
         (forall a (forall b (or (not (and (rel E x1 a) (rel E a b) (rel E b x2))) \
         (exists c (exists d {}))))))))))",
        chi(["x1", "x2", "a", "b", "c", "d"])
    )
}

fn k4_pattern() -> String {
    let xs = ["x1", "x2", "x3", "x4"];
    let mut atoms = Vec::new();
    for i in xs {
        for j in xs {
            if i != j {
                atoms.push(format!("(rel E {i} {j})"));
            }
        }
    }
    format!(
        "(exists x1 (exists x2 (exists x3 (exists x4 (and {})))))",
        atoms.join(" ")
    )
}

/// Formulas by name: `psi_bouquet` (free `x`, `z`), `phi_bouquet`, `chi6`
/// (free `x1 x2 y1 z1 y2 z2`), `phi_planar` and `phi_hat`.
pub fn builtin(name: &str) -> Option<Formula> {
    let text = match name {
        "psi_bouquet" => psi("x", "z"),
        "phi_bouquet" => phi_bouquet(),
        "chi6" => chi(["x1", "x2", "y1", "z1", "y2", "z2"]),
        "phi_planar" => phi_planar(),
        "phi_hat" => format!("(or {} {})", phi_planar(), k4_pattern()),
        _ => return None,
    };
    Some(parse(&text).expect("built-in formulas parse"))
}
