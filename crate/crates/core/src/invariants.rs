//! Derived-equivalence invariants of a Brauer complex.

use serde::{Deserialize, Serialize};

use crate::ribbon::BrauerComplex;

/// The full invariant signature: edge count, sorted face perimeters, sorted
/// vertex multiplicities, genus, bipartiteness of the 1-skeleton, and the
/// center dimension of the algebra.
///
/// `center_dim` is determined by the other data (multiplicities and
/// face-bounding loops) but is carried along as a cross-check.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InvariantSignature {
    pub n: usize,
    pub perimeters: Vec<usize>,
    pub mults: Vec<u32>,
    pub genus: usize,
    pub bipartite: bool,
    pub center_dim: usize,
}

pub fn signature(b: &BrauerComplex) -> InvariantSignature {
    let c = b.complex();
    InvariantSignature {
        n: c.edge_count(),
        perimeters: c.perimeters(),
        mults: b.mult_multiset(),
        genus: c.genus(),
        bipartite: is_bipartite(b),
        center_dim: center_dim(b),
    }
}

/// Two-colorability of the 1-skeleton; a loop makes it non-bipartite.
pub fn is_bipartite(b: &BrauerComplex) -> bool {
    let c = b.complex();
    let vertices = c.vertices();
    let index = |v: usize| vertices.binary_search(&v).unwrap();
    let mut color: Vec<Option<bool>> = vec![None; vertices.len()];
    let mut stack = Vec::new();
    for &start in &vertices {
        if color[index(start)].is_some() {
            continue;
        }
        color[index(start)] = Some(false);
        stack.push(start);
        while let Some(v) = stack.pop() {
            let cv = color[index(v)].unwrap();
            for d in c.rotation(v) {
                let w = c.vertex_of(c.alpha(d));
                match color[index(w)] {
                    None => {
                        color[index(w)] = Some(!cv);
                        stack.push(w);
                    }
                    Some(cw) if cw == cv => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Center dimension of the algebra, read off the complex:
/// `1 + Σ_V (f(V) - 1) + #(face-bounding loop darts) + n`.
pub fn center_dim(b: &BrauerComplex) -> usize {
    let c = b.complex();
    let mult_excess: u32 = b.mult_map().values().map(|&m| m - 1).sum();
    let bounding_darts = (0..c.dart_count())
        .filter(|&d| c.sigma(d) == c.alpha(d))
        .count();
    1 + mult_excess as usize + bounding_darts + c.edge_count()
}

/// Lists the signature fields on which the two differ; an empty list means
/// the complexes are indistinguishable by these invariants.
pub fn compare(s1: &InvariantSignature, s2: &InvariantSignature) -> Vec<&'static str> {
    let mut fields = Vec::new();
    if s1.n != s2.n {
        fields.push("n");
    }
    if s1.perimeters != s2.perimeters {
        fields.push("perimeters");
    }
    if s1.mults != s2.mults {
        fields.push("mults");
    }
    if s1.genus != s2.genus {
        fields.push("genus");
    }
    if s1.bipartite != s2.bipartite {
        fields.push("bipartite");
    }
    if s1.center_dim != s2.center_dim {
        fields.push("center_dim");
    }
    fields
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, center_formula};
    use crate::quiver::derive_quiver;
    use crate::presets::*;

    #[test]
    fn theta_signature() {
        let s = signature(&theta());
        assert_eq!(s.n, 3);
        assert_eq!(s.perimeters, vec![6]);
        assert_eq!(s.mults, vec![1, 1]);
        assert_eq!(s.genus, 1);
        assert!(s.bipartite);
    }

    #[test]
    fn theta_loop_signature_differs_only_in_bipartiteness() {
        let s1 = signature(&theta());
        let s2 = signature(&theta_loop());
        assert_eq!(compare(&s1, &s2), vec!["bipartite"]);
        assert!(!s2.bipartite);
    }

    #[test]
    fn segment_signature() {
        let s = signature(&segment());
        assert_eq!(s.n, 1);
        assert_eq!(s.perimeters, vec![2]);
        assert_eq!(s.mults, vec![1, 1]);
        assert_eq!(s.genus, 0);
        assert!(s.bipartite);
    }

    #[test]
    fn decagon_signatures_are_indistinguishable() {
        let s1 = signature(&decagon_c1());
        let s2 = signature(&decagon_c2());
        assert!(compare(&s1, &s2).is_empty());
        assert_eq!(compare(&s1, &s1), Vec::<&str>::new());
        assert!(s1.bipartite);
        assert_eq!(s1.genus, 2);
    }

    #[test]
    fn center_dim_matches_formula() {
        for b in [
            segment(),
            segment_mult(3, 2),
            theta(),
            theta_loop(),
            one_loop(),
            star3(),
            loop_with_leaf(),
        ] {
            let table = build_algebra(&derive_quiver(&b));
            assert_eq!(center_dim(&b), center_formula(&table).dim_z);
        }
    }
}
