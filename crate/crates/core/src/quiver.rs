//! The extended quiver of a Brauer complex.
//!
//! Arrows correspond one-to-one with darts: the arrow of dart `d` runs from
//! the edge of `d` to the edge of `sigma(d)`, i.e. it is the angle between
//! two rotation-consecutive half-edges. The arrow set carries two partitions:
//! A-cycles (vertex rotations, one per complex vertex) and G-cycles (face
//! walks, one per face). A dangling vertex of multiplicity 1 contributes a
//! formal loop: an arrow present in the extended quiver that acts as zero in
//! the algebra.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ribbon::{BrauerComplex, Dart, EdgeId, RibbonComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("edge {0} does not exist")]
    UnknownEdge(EdgeId),
    #[error("arrow partitions are not realizable by an oriented complex: {0}")]
    InconsistentPartition(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub source: EdgeId,
    pub target: EdgeId,
    pub a_cycle: usize,
    pub a_pos: usize,
    pub g_cycle: usize,
    pub g_pos: usize,
    pub formal: bool,
}

/// Quiver of the algebra, extended by formal loops, together with the
/// A-cycle/G-cycle partitions of its arrow set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedQuiver {
    /// Simple-module index set: the edges of the complex, ascending.
    pub vertices: Vec<EdgeId>,
    /// One arrow per dart, indexed by dart.
    pub arrows: Vec<Arrow>,
    /// A-cycles in rotation order, each starting at its minimal dart.
    pub a_cycles: Vec<Vec<Dart>>,
    /// G-cycles in face-walk order, each starting at its minimal dart.
    pub g_cycles: Vec<Vec<Dart>>,
    /// Multiplicity of each A-cycle (copied from the vertex).
    pub a_cycle_mult: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopClass {
    /// A loop arrow forming an entire A-cycle: the edge is a leaf.
    LeafLoop,
    /// A loop arrow forming an entire G-cycle: the edge bounds a face.
    FaceBoundingLoop,
    /// No loop arrow at this quiver vertex.
    None,
}

fn cycles_of(perm: impl Fn(Dart) -> Dart, n: usize) -> Vec<Vec<Dart>> {
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut d = perm(start);
        while d != start {
            seen[d] = true;
            cyc.push(d);
            d = perm(d);
        }
        cycles.push(cyc);
    }
    cycles
}

pub fn derive_quiver(b: &BrauerComplex) -> ExtendedQuiver {
    let c = b.complex();
    let n = c.dart_count();
    let a_cycles = cycles_of(|d| c.sigma(d), n);
    // Composable face successor of an arrow: continue through the other
    // dart of the target edge, psi = alpha ∘ sigma.
    let g_cycles = cycles_of(|d| c.alpha(c.sigma(d)), n);
    let mut a_of = vec![(0usize, 0usize); n];
    for (i, cyc) in a_cycles.iter().enumerate() {
        for (p, &d) in cyc.iter().enumerate() {
            a_of[d] = (i, p);
        }
    }
    let mut g_of = vec![(0usize, 0usize); n];
    for (i, cyc) in g_cycles.iter().enumerate() {
        for (p, &d) in cyc.iter().enumerate() {
            g_of[d] = (i, p);
        }
    }
    let a_cycle_mult: Vec<u32> = a_cycles
        .iter()
        .map(|cyc| b.mult(c.vertex_of(cyc[0])))
        .collect();
    let arrows = (0..n)
        .map(|d| {
            let (ac, ap) = a_of[d];
            let (gc, gp) = g_of[d];
            Arrow {
                source: c.edge_of(d),
                target: c.edge_of(c.sigma(d)),
                a_cycle: ac,
                a_pos: ap,
                g_cycle: gc,
                g_pos: gp,
                formal: a_cycles[ac].len() == 1 && a_cycle_mult[ac] == 1,
            }
        })
        .collect();
    ExtendedQuiver {
        vertices: c.edges(),
        arrows,
        a_cycles,
        g_cycles,
        a_cycle_mult,
    }
}

impl ExtendedQuiver {
    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    /// Next arrow along the A-cycle of `d` (the rotation successor).
    pub fn a_successor(&self, d: Dart) -> Dart {
        let a = &self.arrows[d];
        let cyc = &self.a_cycles[a.a_cycle];
        cyc[(a.a_pos + 1) % cyc.len()]
    }

    /// Length of the full A-cycle walk through `d`: multiplicity times
    /// cycle length. Paths of exactly this length are socle elements.
    pub fn walk_len(&self, d: Dart) -> usize {
        let a = &self.arrows[d];
        self.a_cycles[a.a_cycle].len() * self.a_cycle_mult[a.a_cycle] as usize
    }

    pub fn source(&self, d: Dart) -> EdgeId {
        self.arrows[d].source
    }

    pub fn target(&self, d: Dart) -> EdgeId {
        self.arrows[d].target
    }

    /// A-cycle lengths, one per complex vertex.
    pub fn a_cycle_lengths(&self) -> Vec<usize> {
        self.a_cycles.iter().map(Vec::len).collect()
    }

    /// `k + g - n` computed from the quiver side.
    pub fn euler_defect(&self) -> i64 {
        self.a_cycles.len() as i64 + self.g_cycles.len() as i64 - self.vertices.len() as i64
    }
}

pub fn loop_classification(q: &ExtendedQuiver, edge: EdgeId) -> Result<LoopClass, QuiverError> {
    if !q.vertices.contains(&edge) {
        return Err(QuiverError::UnknownEdge(edge));
    }
    for (d, a) in q.arrows.iter().enumerate() {
        if a.source == edge && a.target == edge {
            if q.a_cycles[a.a_cycle].len() == 1 {
                return Ok(LoopClass::LeafLoop);
            }
            if q.g_cycles[a.g_cycle].len() == 1 {
                return Ok(LoopClass::FaceBoundingLoop);
            }
            // A loop arrow is always a whole A-cycle or a whole G-cycle:
            // its dart either closes the rotation or meets its partner.
            unreachable!("loop arrow {d} is neither an A-cycle nor a G-cycle");
        }
    }
    Ok(LoopClass::None)
}

/// Rebuilds the Brauer complex from an extended quiver.
///
/// Inverse of [`derive_quiver`] up to isomorphism: darts are the arrows,
/// rotations come from the A-cycles and the edge involution pairs the two
/// arrows sharing a source. The G-cycle partition and formal flags of the
/// input are checked against the reconstruction.
pub fn quiver_to_complex(q: &ExtendedQuiver) -> Result<BrauerComplex, QuiverError> {
    let n = q.arrows.len();
    let mut sigma = vec![usize::MAX; n];
    for cyc in &q.a_cycles {
        for (p, &d) in cyc.iter().enumerate() {
            if d >= n || sigma[d] != usize::MAX {
                return Err(QuiverError::InconsistentPartition(
                    "A-cycles do not partition the arrows".into(),
                ));
            }
            sigma[d] = cyc[(p + 1) % cyc.len()];
        }
    }
    if sigma.iter().any(|&s| s == usize::MAX) {
        return Err(QuiverError::InconsistentPartition(
            "A-cycles do not cover the arrows".into(),
        ));
    }
    let mut by_source: BTreeMap<EdgeId, Vec<Dart>> = BTreeMap::new();
    for (d, a) in q.arrows.iter().enumerate() {
        by_source.entry(a.source).or_default().push(d);
    }
    let mut alpha = vec![usize::MAX; n];
    for (v, darts) in &by_source {
        if darts.len() != 2 {
            return Err(QuiverError::InconsistentPartition(format!(
                "vertex {v} has {} outgoing arrows, expected 2",
                darts.len()
            )));
        }
        alpha[darts[0]] = darts[1];
        alpha[darts[1]] = darts[0];
    }
    let complex = RibbonComplex::new(alpha, sigma)
        .map_err(|e| QuiverError::InconsistentPartition(format!("invalid complex: {e:?}")))?;
    let mut mult = BTreeMap::new();
    for (i, cyc) in q.a_cycles.iter().enumerate() {
        mult.insert(complex.vertex_of(cyc[0]), q.a_cycle_mult[i]);
    }
    let b = BrauerComplex::new(complex, mult)
        .map_err(|e| QuiverError::InconsistentPartition(format!("invalid multiplicities: {e:?}")))?;
    // The G-cycles of the reconstruction must match the stated ones.
    let derived = derive_quiver(&b);
    if normalize_cycles(&derived.g_cycles) != normalize_cycles(&q.g_cycles) {
        return Err(QuiverError::InconsistentPartition(
            "G-cycles disagree with the reconstructed faces".into(),
        ));
    }
    // quiver vertex names map to reconstructed edge ids through the darts
    let rename: BTreeMap<EdgeId, EdgeId> = by_source
        .iter()
        .map(|(&v, darts)| (v, b.complex().edge_of(darts[0])))
        .collect();
    for (d, (a, b_)) in q.arrows.iter().zip(derived.arrows.iter()).enumerate() {
        if a.formal != b_.formal || rename[&a.target] != b_.target {
            return Err(QuiverError::InconsistentPartition(format!(
                "arrow {d} disagrees with the reconstruction"
            )));
        }
    }
    Ok(b)
}

fn normalize_cycles(cycles: &[Vec<Dart>]) -> Vec<Vec<Dart>> {
    let mut out: Vec<Vec<Dart>> = cycles
        .iter()
        .map(|cyc| {
            let min_pos = cyc
                .iter()
                .enumerate()
                .min_by_key(|&(_, d)| d)
                .map(|(i, _)| i)
                .unwrap();
            let mut rotated = cyc[min_pos..].to_vec();
            rotated.extend_from_slice(&cyc[..min_pos]);
            rotated
        })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::*;

    #[test]
    fn theta_quiver_shape() {
        let q = derive_quiver(&theta());
        assert_eq!(q.vertices.len(), 3);
        assert_eq!(q.arrow_count(), 6);
        let mut lens = q.a_cycle_lengths();
        lens.sort_unstable();
        assert_eq!(lens, vec![3, 3]);
        assert_eq!(q.g_cycles.len(), 1);
        assert_eq!(q.g_cycles[0].len(), 6);
        assert!(q.arrows.iter().all(|a| !a.formal));
    }

    #[test]
    fn theta_loop_quiver_shape() {
        let q = derive_quiver(&theta_loop());
        let mut lens = q.a_cycle_lengths();
        lens.sort_unstable();
        assert_eq!(lens, vec![2, 4]);
        assert_eq!(q.g_cycles.len(), 1);
        assert_eq!(q.g_cycles[0].len(), 6);
    }

    #[test]
    fn segment_quiver_is_two_formal_loops() {
        let q = derive_quiver(&segment());
        assert_eq!(q.vertices.len(), 1);
        assert_eq!(q.arrow_count(), 2);
        assert_eq!(q.a_cycle_lengths(), vec![1, 1]);
        assert!(q.arrows.iter().all(|a| a.formal));
        assert!(q.arrows.iter().all(|a| a.source == a.target));
    }

    #[test]
    fn g_cycle_arrows_compose_head_to_tail() {
        for b in [theta(), theta_loop(), star3(), decagon_c1()] {
            let q = derive_quiver(&b);
            for cyc in &q.g_cycles {
                for (p, &d) in cyc.iter().enumerate() {
                    let next = cyc[(p + 1) % cyc.len()];
                    assert_eq!(q.target(d), q.source(next));
                }
            }
        }
    }

    #[test]
    fn loop_classification_examples() {
        let star = star3();
        let qs = derive_quiver(&star);
        for e in star.complex().edges() {
            assert_eq!(loop_classification(&qs, e).unwrap(), LoopClass::LeafLoop);
        }
        let lp = one_loop();
        let ql = derive_quiver(&lp);
        assert_eq!(
            loop_classification(&ql, 0).unwrap(),
            LoopClass::FaceBoundingLoop
        );
        let th = theta();
        let qt = derive_quiver(&th);
        for e in th.complex().edges() {
            assert_eq!(loop_classification(&qt, e).unwrap(), LoopClass::None);
        }
        assert!(loop_classification(&qt, 99).is_err());
    }

    #[test]
    fn vertices_have_two_incident_arrows_each_way() {
        for b in [theta(), theta_loop(), star3(), loop_with_leaf()] {
            let q = derive_quiver(&b);
            for &v in &q.vertices {
                let out = q.arrows.iter().filter(|a| a.source == v).count();
                let inc = q.arrows.iter().filter(|a| a.target == v).count();
                assert_eq!(out, 2);
                assert_eq!(inc, 2);
            }
        }
    }

    #[test]
    fn round_trip_on_fixtures() {
        for b in [theta(), theta_loop(), star3(), decagon_c1(), decagon_c2()] {
            let q = derive_quiver(&b);
            let back = quiver_to_complex(&q).unwrap();
            assert_eq!(back.canonical_key(), b.canonical_key());
        }
    }

    #[test]
    fn hand_built_theta_quiver_reconstructs_theta() {
        // Arrows 0..6 with A-cycles (0 2 4), (1 3 5) on vertices 10,20,30
        // (two triangles of arrows 10->20->30->10), one G-cycle of length 6.
        let vertices = vec![10, 20, 30];
        let srcs = [10, 10, 20, 20, 30, 30];
        let tgts = [20, 20, 30, 30, 10, 10];
        let a_cycles = vec![vec![0, 2, 4], vec![1, 3, 5]];
        let g_cycles = vec![vec![0, 3, 4, 1, 2, 5]];
        let mut arrows = Vec::new();
        for d in 0..6 {
            let (ac, ap) = if d % 2 == 0 { (0, d / 2) } else { (1, d / 2) };
            let gp = g_cycles[0].iter().position(|&x| x == d).unwrap();
            arrows.push(Arrow {
                source: srcs[d],
                target: tgts[d],
                a_cycle: ac,
                a_pos: ap,
                g_cycle: 0,
                g_pos: gp,
                formal: false,
            });
        }
        let q = ExtendedQuiver {
            vertices,
            arrows,
            a_cycles,
            g_cycles,
            a_cycle_mult: vec![1, 1],
        };
        let b = quiver_to_complex(&q).unwrap();
        assert_eq!(b.canonical_key(), theta().canonical_key());
    }

    #[test]
    fn arrow_lengths_sum_to_dart_count() {
        for b in [theta(), theta_loop(), star3(), decagon_c1()] {
            let q = derive_quiver(&b);
            let total_a: usize = q.a_cycle_lengths().iter().sum();
            let total_g: usize = q.g_cycles.iter().map(Vec::len).sum();
            assert_eq!(total_a, b.complex().dart_count());
            assert_eq!(total_g, b.complex().dart_count());
            assert_eq!(q.euler_defect(), b.complex().euler_defect());
        }
    }
}
