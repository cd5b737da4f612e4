//! Exhaustive enumeration of connected complexes up to isomorphism.
//!
//! Complexes are grown edge by edge: a new edge is spliced into every pair of
//! insertion slots (after an existing dart, or at a fresh dangling vertex) of
//! every smaller complex, deduplicating by canonical form at each size. Every
//! connected complex has a removable edge whose deletion keeps it connected
//! (a non-bridge if one exists, otherwise a leaf of the underlying tree), so
//! the augmentation reaches every isomorphism class. Deleting such an edge
//! never raises the genus, which makes the genus-0 restriction closed under
//! the same scheme.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::ribbon::{BrauerComplex, Dart, RibbonComplex};

#[derive(Clone, Copy, Debug)]
enum Slot {
    After(Dart),
    Fresh,
}

fn insert_edge(sigma: &[Dart], s1: Slot, s2: Slot) -> Vec<Dart> {
    let n = sigma.len();
    let mut out = Vec::with_capacity(n + 2);
    out.extend_from_slice(sigma);
    out.push(n); // dart n, fresh singleton by default
    out.push(n + 1);
    if let Slot::After(d) = s1 {
        out[n] = out[d];
        out[d] = n;
    }
    if let Slot::After(d) = s2 {
        out[n + 1] = out[d];
        out[d] = n + 1;
    }
    out
}

fn base_complexes() -> Vec<RibbonComplex> {
    vec![
        RibbonComplex::new(vec![1, 0], vec![0, 1]).unwrap(),
        RibbonComplex::new(vec![1, 0], vec![1, 0]).unwrap(),
    ]
}

/// All connected complexes with `1..=max_edges` edges, one representative
/// per isomorphism class. With `genus0_only`, restricts to genus 0.
pub fn connected_complexes(max_edges: usize, genus0_only: bool) -> Vec<RibbonComplex> {
    let mut all: Vec<RibbonComplex> = Vec::new();
    let mut layer: Vec<RibbonComplex> = base_complexes()
        .into_iter()
        .filter(|c| !genus0_only || c.genus() == 0)
        .collect();
    all.extend(layer.iter().cloned());
    for _ in 2..=max_edges {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for parent in &layer {
            let n = parent.dart_count();
            let mut slots: Vec<Slot> = (0..n).map(Slot::After).collect();
            slots.push(Slot::Fresh);
            for (i, &s1) in slots.iter().enumerate() {
                for &s2 in &slots[i..] {
                    if matches!((s1, s2), (Slot::Fresh, Slot::Fresh)) {
                        continue; // would add a disconnected segment
                    }
                    let sigma = insert_edge(parent.sigma_perm(), s1, s2);
                    let alpha: Vec<Dart> = (0..n + 2).map(|d| d ^ 1).collect();
                    let child = match RibbonComplex::new(alpha, sigma) {
                        Ok(c) => c,
                        Err(_) => continue,
                    };
                    if genus0_only && child.genus() != 0 {
                        continue;
                    }
                    let key = BrauerComplex::trivial(child.clone()).canonical_key();
                    if seen.insert(key) {
                        next.push(child);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// All multiplicity assignments `V -> 1..=max_mult` on `complex`, up to
/// isomorphism of the resulting Brauer complexes.
pub fn multiplicity_assignments(complex: &RibbonComplex, max_mult: u32) -> Vec<BrauerComplex> {
    let vertices = complex.vertices();
    let k = vertices.len();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut counter = vec![1u32; k];
    loop {
        let mult: BTreeMap<_, _> = vertices.iter().copied().zip(counter.iter().copied()).collect();
        let b = BrauerComplex::new(complex.clone(), mult).unwrap();
        if seen.insert(b.canonical_key()) {
            out.push(b);
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            if counter[i] < max_mult {
                counter[i] += 1;
                break;
            }
            counter[i] = 1;
            i += 1;
        }
    }
}

/// Every connected Brauer complex with at most `max_edges` edges and vertex
/// multiplicities at most `max_mult`, up to isomorphism.
pub fn all_brauer_complexes(
    max_edges: usize,
    max_mult: u32,
    genus0_only: bool,
) -> Vec<BrauerComplex> {
    let mut out = Vec::new();
    for c in connected_complexes(max_edges, genus0_only) {
        out.extend(multiplicity_assignments(&c, max_mult));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_edge_complexes_are_segment_and_loop() {
        let cs = connected_complexes(1, false);
        assert_eq!(cs.len(), 2);
    }

    #[test]
    fn two_edge_counts() {
        let cs: Vec<_> = connected_complexes(2, false)
            .into_iter()
            .filter(|c| c.edge_count() == 2)
            .collect();
        // path, loop+pendant, double edge, nested loops, crossed loops (genus 1)
        assert_eq!(cs.len(), 5);
        let planar: Vec<_> = cs.iter().filter(|c| c.genus() == 0).collect();
        assert_eq!(planar.len(), 4);
    }

    #[test]
    fn genus0_filter_agrees_with_full_enumeration() {
        let full: Vec<_> = connected_complexes(3, false)
            .into_iter()
            .filter(|c| c.genus() == 0)
            .map(|c| BrauerComplex::trivial(c).canonical_key())
            .collect();
        let restricted: Vec<_> = connected_complexes(3, true)
            .into_iter()
            .map(|c| BrauerComplex::trivial(c).canonical_key())
            .collect();
        let full: BTreeSet<_> = full.into_iter().collect();
        let restricted: BTreeSet<_> = restricted.into_iter().collect();
        assert_eq!(full, restricted);
    }

    #[test]
    fn three_edge_trees_are_path_and_star() {
        let trees: Vec<_> = connected_complexes(3, true)
            .into_iter()
            .filter(|c| c.edge_count() == 3 && c.faces().len() == 1)
            .collect();
        assert_eq!(trees.len(), 2);
    }

    #[test]
    fn multiplicity_assignments_dedup_by_symmetry() {
        // segment: swapping endpoints is an isomorphism, so (1,2) == (2,1)
        let seg = RibbonComplex::new(vec![1, 0], vec![0, 1]).unwrap();
        let ms = multiplicity_assignments(&seg, 2);
        assert_eq!(ms.len(), 3); // (1,1), (1,2), (2,2)
    }
}
