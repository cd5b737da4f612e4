//! Elementary tilting transformations of Brauer complexes and the two-term
//! tilting complexes that induce them.
//!
//! Every edge admits exactly one transformation, determined by its shape:
//! a leaf is shifted to the next corner of its face (type 1), a loop that
//! bounds a face hops to the next corner of its outer face (type 2), and any
//! other edge is re-attached at the face-predecessor corners of its two
//! sides (type 3). Each move is a finite splice of the rotation system: the
//! edge involution, the vertex set and all multiplicities stay fixed, only
//! `sigma` changes at the affected vertices. Face perimeters are preserved.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{build_algebra, hom_complexes, AlgebraTable, TwoTermComplex};
use crate::quiver::derive_quiver;
use crate::ribbon::{BrauerComplex, Dart, EdgeId, RibbonComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("edge {0} does not exist")]
    UnknownEdge(EdgeId),
    #[error("complex has a single edge; transformations need at least two")]
    SingleEdgeComplex,
    #[error("instance too large for the endomorphism check ({0})")]
    SizeLimitExceeded(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveKind {
    /// Type 1: shift of a leaf.
    LeafShift,
    /// Type 2: shift of a face-bounding loop.
    LoopShift,
    /// Type 3: the general shift.
    General,
}

impl MoveKind {
    pub fn type_number(self) -> u8 {
        match self {
            MoveKind::LeafShift => 1,
            MoveKind::LoopShift => 2,
            MoveKind::General => 3,
        }
    }
}

/// One applied transformation, with enough dart-level data to replay and
/// audit it. Moves are not assumed invertible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub edge: EdgeId,
    pub kind: MoveKind,
    /// Darts that changed vertex, with their old rotation predecessor.
    pub detached: Vec<(Dart, Dart)>,
    /// Same darts with the anchor dart they were inserted after.
    pub attached: Vec<(Dart, Dart)>,
}

fn check_edge(b: &BrauerComplex, a: EdgeId) -> Result<(), MoveError> {
    let c = b.complex();
    if a >= c.dart_count() || c.edge_of(a) != a {
        return Err(MoveError::UnknownEdge(a));
    }
    if c.edge_count() < 2 {
        return Err(MoveError::SingleEdgeComplex);
    }
    Ok(())
}

/// Classifies the move applicable at `a`.
pub fn classify_edge(b: &BrauerComplex, a: EdgeId) -> Result<MoveKind, MoveError> {
    check_edge(b, a)?;
    let c = b.complex();
    let x = a;
    let y = c.alpha(a);
    if c.sigma(x) == x || c.sigma(y) == y {
        Ok(MoveKind::LeafShift)
    } else if c.phi(x) == x || c.phi(y) == y {
        Ok(MoveKind::LoopShift)
    } else {
        Ok(MoveKind::General)
    }
}

fn remove_dart(sigma: &mut [Dart], d: Dart) {
    let pred = (0..sigma.len()).find(|&p| sigma[p] == d).unwrap();
    sigma[pred] = sigma[d];
    sigma[d] = d;
}

fn insert_after(sigma: &mut [Dart], anchor: Dart, d: Dart) {
    sigma[d] = sigma[anchor];
    sigma[anchor] = d;
}

#[derive(Clone, Copy)]
enum Placement {
    After(Dart),
    Before(Dart),
}

/// Applies the tilting transformation at edge `a`, returning the transformed
/// complex and a replayable description of the move.
pub fn apply_move(b: &BrauerComplex, a: EdgeId) -> Result<(BrauerComplex, Move), MoveError> {
    let kind = classify_edge(b, a)?;
    let c = b.complex();
    let mut sigma: Vec<Dart> = c.sigma_perm().to_vec();
    let placements: Vec<(Dart, Placement)> = match kind {
        MoveKind::LeafShift => {
            let (x, v) = if c.sigma(a) == a {
                (c.alpha(a), a)
            } else {
                (a, c.alpha(a))
            };
            debug_assert_eq!(c.sigma(v), v);
            let u = c.sigma(x); // next edge crossed by the face after the leaf
            let w = c.alpha(u); // corner at the far end of that edge
            vec![(x, Placement::After(w))]
        }
        MoveKind::LoopShift => {
            // x is the dart whose face the loop bounds
            let x = if c.phi(a) == a { a } else { c.alpha(a) };
            let y = c.alpha(x);
            let u = c.sigma(x); // next edge on the outer face
            let w = c.alpha(u);
            // re-attach the loop after the far corner, inner dart last
            vec![(y, Placement::After(w)), (x, Placement::After(y))]
        }
        MoveKind::General => {
            // each dart goes right before the face-predecessor dart of its
            // own old face, so the new face walk reads ..., b_i, a, a_i, ...
            let x = a;
            let y = c.alpha(a);
            let d1 = c.phi_inv(x);
            let d2 = c.phi_inv(y);
            vec![(x, Placement::Before(d1)), (y, Placement::Before(d2))]
        }
    };
    let moved: Vec<Dart> = placements.iter().map(|&(d, _)| d).collect();
    let detached: Vec<(Dart, Dart)> = moved.iter().map(|&d| (d, c.sigma_inv(d))).collect();
    for &d in &moved {
        remove_dart(&mut sigma, d);
    }
    let mut anchors = Vec::with_capacity(placements.len());
    for &(d, placement) in &placements {
        let anchor = match placement {
            Placement::After(w) => w,
            Placement::Before(t) => (0..sigma.len()).find(|&p| sigma[p] == t).unwrap(),
        };
        insert_after(&mut sigma, anchor, d);
        anchors.push(anchor);
    }
    let complex = RibbonComplex::with_labels(
        c.alpha_perm().to_vec(),
        sigma,
        c.edge_labels().clone(),
    )
    .expect("splice preserves validity");
    // Vertices are fixed: recover each new orbit's multiplicity from any
    // dart that did not move.
    let mut mult = BTreeMap::new();
    for v in complex.vertices() {
        let witness = complex
            .rotation(v)
            .into_iter()
            .find(|d| !moved.contains(d))
            .expect("every vertex keeps at least one dart");
        mult.insert(v, b.mult(c.vertex_of(witness)));
    }
    let out = BrauerComplex::new(complex, mult).expect("multiplicities follow vertices");
    let attached = moved.iter().copied().zip(anchors).collect();
    Ok((
        out,
        Move {
            edge: a,
            kind,
            detached,
            attached,
        },
    ))
}

/// The two-term tilting complex `T_a = ⊕_j T_aj` attached to edge `a`.
#[derive(Debug, Clone)]
pub struct TiltingComplexSpec {
    pub edge: EdgeId,
    /// One summand per quiver vertex, ascending; stalks away from `a`.
    pub summands: Vec<(EdgeId, TwoTermComplex)>,
}

impl TiltingComplexSpec {
    pub fn summand(&self, j: EdgeId) -> &TwoTermComplex {
        &self.summands.iter().find(|(e, _)| *e == j).unwrap().1
    }
}

/// Builds `T_a` over the algebra `table` of `b`.
///
/// The degree-0 summand at `a` receives the projectives of the rotation
/// predecessors of `a`, with the differential given by the preceding
/// arrows: `(β¹, β²)` in general, `(β, β·α)` for a face-bounding loop, and
/// a single `β` for a leaf.
pub fn build_tilting_complex(
    b: &BrauerComplex,
    table: &AlgebraTable,
    a: EdgeId,
) -> Result<TiltingComplexSpec, MoveError> {
    let kind = classify_edge(b, a)?;
    let c = b.complex();
    let arrow = |d: Dart| -> (EdgeId, crate::algebra::AlgVec) {
        let idx = table
            .path_index(d, 1)
            .expect("rotation predecessor arrow is non-formal");
        (c.edge_of(d), table.unit_vec(idx))
    };
    let t_aa = match kind {
        MoveKind::LeafShift => {
            let x = if c.sigma(a) == a { c.alpha(a) } else { a };
            let (j, beta) = arrow(c.sigma_inv(x));
            TwoTermComplex {
                neg: vec![j],
                zero: Some(a),
                diff: vec![beta],
            }
        }
        MoveKind::LoopShift => {
            let x = if c.phi(a) == a { a } else { c.alpha(a) };
            let y = c.alpha(x);
            let pred = c.sigma_inv(y);
            let (j, beta) = arrow(pred);
            let beta_alpha_idx = table
                .path_index(pred, 2)
                .expect("loop composite path exists");
            TwoTermComplex {
                neg: vec![j, j],
                zero: Some(a),
                diff: vec![beta, table.unit_vec(beta_alpha_idx)],
            }
        }
        MoveKind::General => {
            let x = a;
            let y = c.alpha(a);
            let (j1, beta1) = arrow(c.sigma_inv(x));
            let (j2, beta2) = arrow(c.sigma_inv(y));
            TwoTermComplex {
                neg: vec![j1, j2],
                zero: Some(a),
                diff: vec![beta1, beta2],
            }
        }
    };
    let summands = table
        .quiver
        .vertices
        .iter()
        .map(|&j| {
            if j == a {
                (j, t_aa.clone())
            } else {
                (j, TwoTermComplex::stalk(j))
            }
        })
        .collect();
    Ok(TiltingComplexSpec { edge: a, summands })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoReport {
    pub end_dim: usize,
    pub transformed_dim: usize,
}

impl EndoReport {
    pub fn ok(&self) -> bool {
        self.end_dim == self.transformed_dim
    }
}

/// Compares `dim End(T_a)` with the dimension of the algebra of the
/// transformed complex. Restricted to desk-scale instances.
pub fn endomorphism_check(b: &BrauerComplex, a: EdgeId) -> Result<EndoReport, MoveError> {
    let c = b.complex();
    if c.edge_count() > 6 {
        return Err(MoveError::SizeLimitExceeded(format!(
            "{} edges > 6",
            c.edge_count()
        )));
    }
    if let Some(&m) = b.mult_map().values().max() {
        if m > 2 {
            return Err(MoveError::SizeLimitExceeded(format!(
                "multiplicity {m} > 2"
            )));
        }
    }
    let table = build_algebra(&derive_quiver(b));
    let tilt = build_tilting_complex(b, &table, a)?;
    let mut end_dim = 0;
    for (_, ti) in &tilt.summands {
        for (_, tj) in &tilt.summands {
            end_dim += hom_complexes(&table, ti, tj, 0);
        }
    }
    let (moved, _) = apply_move(b, a)?;
    let moved_table = build_algebra(&derive_quiver(&moved));
    Ok(EndoReport {
        end_dim,
        transformed_dim: moved_table.dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::signature;
    use crate::presets::*;

    #[test]
    fn classification_examples() {
        let star = star3();
        for e in star.complex().edges() {
            assert_eq!(classify_edge(&star, e).unwrap(), MoveKind::LeafShift);
        }
        let ll = loop_with_leaf();
        assert_eq!(classify_edge(&ll, 0).unwrap(), MoveKind::LoopShift);
        assert_eq!(classify_edge(&ll, 2).unwrap(), MoveKind::LeafShift);
        let th = theta();
        for e in th.complex().edges() {
            assert_eq!(classify_edge(&th, e).unwrap(), MoveKind::General);
        }
        assert_eq!(
            classify_edge(&segment(), 0),
            Err(MoveError::SingleEdgeComplex)
        );
        assert_eq!(classify_edge(&theta(), 1), Err(MoveError::UnknownEdge(1)));
    }

    #[test]
    fn theta_moves_preserve_signature() {
        let b = theta();
        let s = signature(&b);
        for e in b.complex().edges() {
            let (moved, mv) = apply_move(&b, e).unwrap();
            assert_eq!(signature(&moved), s);
            assert_eq!(mv.kind, MoveKind::General);
            assert_eq!(moved.mult_multiset(), b.mult_multiset());
        }
    }

    #[test]
    fn star_leaf_shift_advances_the_leaf_to_the_next_corner() {
        // Shifting a leaf of the 3-star re-attaches it at the far end of the
        // next edge around the face, producing the 4-vertex path.
        let b = star3();
        let (moved, mv) = apply_move(&b, 0).unwrap();
        assert_eq!(mv.kind, MoveKind::LeafShift);
        assert_eq!(signature(&moved), signature(&b));
        let degrees: Vec<usize> = {
            let c = moved.complex();
            let mut d: Vec<usize> = c.vertices().iter().map(|&v| c.degree(v)).collect();
            d.sort_unstable();
            d
        };
        assert_eq!(degrees, vec![1, 1, 2, 2]);
    }

    #[test]
    fn loop_shift_preserves_signature() {
        let b = loop_with_leaf();
        let s = signature(&b);
        let (moved, mv) = apply_move(&b, 0).unwrap();
        assert_eq!(mv.kind, MoveKind::LoopShift);
        assert_eq!(signature(&moved), s);
    }

    #[test]
    fn decagon_moves_stay_isomorphic() {
        let b = decagon_c1();
        let key = b.canonical_key();
        for e in b.complex().edges() {
            let (moved, _) = apply_move(&b, e).unwrap();
            assert_eq!(moved.canonical_key(), key);
        }
    }

    #[test]
    fn tilting_complex_shapes() {
        let th = theta();
        let table = build_algebra(&derive_quiver(&th));
        let t = build_tilting_complex(&th, &table, 0).unwrap();
        let taa = t.summand(0);
        assert_eq!(taa.neg.len(), 2);
        assert_eq!(taa.zero, Some(0));

        let star = star3();
        let table = build_algebra(&derive_quiver(&star));
        let t = build_tilting_complex(&star, &table, 0).unwrap();
        assert_eq!(t.summand(0).neg.len(), 1);

        let ll = loop_with_leaf();
        let table = build_algebra(&derive_quiver(&ll));
        let t = build_tilting_complex(&ll, &table, 0).unwrap();
        let taa = t.summand(0);
        assert_eq!(taa.neg.len(), 2);
        assert_eq!(taa.neg[0], taa.neg[1]);
    }

    #[test]
    fn hom_vanishing_on_theta() {
        let b = theta();
        let table = build_algebra(&derive_quiver(&b));
        for a in b.complex().edges() {
            let t = build_tilting_complex(&b, &table, a).unwrap();
            let taa = t.summand(a);
            for (j, tj) in &t.summands {
                if *j == a {
                    continue;
                }
                for shift in [-1, 1] {
                    assert_eq!(hom_complexes(&table, taa, tj, shift), 0);
                    assert_eq!(hom_complexes(&table, tj, taa, shift), 0);
                }
            }
        }
    }

    #[test]
    fn endomorphism_check_on_fixtures() {
        for b in [theta(), star3(), loop_with_leaf()] {
            for e in b.complex().edges() {
                let report = endomorphism_check(&b, e).unwrap();
                assert!(
                    report.ok(),
                    "edge {e}: End(T) dim {} vs transformed dim {}",
                    report.end_dim,
                    report.transformed_dim
                );
            }
        }
    }

    #[test]
    fn theta_endomorphism_dims_are_eighteen() {
        let b = theta();
        for e in b.complex().edges() {
            let report = endomorphism_check(&b, e).unwrap();
            assert_eq!(report.end_dim, 18);
            assert_eq!(report.transformed_dim, 18);
        }
    }

    #[test]
    fn hom_vanishing_on_random_small_complexes() {
        use crate::ribbon::validate;
        use crate::ribbon::RibbonComplex;
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let mut tested = 0;
        while tested < 25 {
            let edges = rng.gen_range(2..=4);
            let n = 2 * edges;
            let alpha: Vec<usize> = (0..n).map(|d| d ^ 1).collect();
            let mut sigma: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = rng.gen_range(0..=i);
                sigma.swap(i, j);
            }
            if !validate(&alpha, &sigma).is_empty() {
                continue;
            }
            let b = crate::ribbon::BrauerComplex::trivial(
                RibbonComplex::new(alpha, sigma).unwrap(),
            );
            let table = build_algebra(&derive_quiver(&b));
            let edge_list = b.complex().edges();
            let a = edge_list[rng.gen_range(0..edge_list.len())];
            let tilt = build_tilting_complex(&b, &table, a).unwrap();
            for (_, ti) in &tilt.summands {
                for (_, tj) in &tilt.summands {
                    for shift in [-1, 1] {
                        assert_eq!(hom_complexes(&table, ti, tj, shift), 0);
                    }
                }
            }
            tested += 1;
        }
    }

    #[test]
    fn size_limit_is_enforced() {
        let b = segment_mult(3, 1);
        assert!(matches!(
            endomorphism_check(&b, 0),
            Err(MoveError::SizeLimitExceeded(_) | MoveError::SingleEdgeComplex)
        ));
    }
}
