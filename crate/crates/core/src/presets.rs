//! Ready-made example complexes.

use std::collections::BTreeMap;

use crate::ribbon::{BrauerComplex, RibbonComplex};

/// Single edge joining two vertices; the smallest valid complex.
pub fn segment() -> BrauerComplex {
    BrauerComplex::trivial(RibbonComplex::new(vec![1, 0], vec![0, 1]).unwrap())
}

pub fn segment_mult(m0: u32, m1: u32) -> BrauerComplex {
    let c = RibbonComplex::new(vec![1, 0], vec![0, 1]).unwrap();
    let mut mult = BTreeMap::new();
    mult.insert(0, m0);
    mult.insert(1, m1);
    BrauerComplex::new(c, mult).unwrap()
}

/// Theta graph: two trivalent vertices joined by three parallel edges with
/// equal rotations on both sides — a torus embedding with one hexagonal
/// face; bipartite.
pub fn theta() -> BrauerComplex {
    let alpha = vec![1, 0, 3, 2, 5, 4];
    let sigma = vec![2, 3, 4, 5, 0, 1];
    BrauerComplex::trivial(RibbonComplex::new(alpha, sigma).unwrap())
}

/// Loop at a 4-valent vertex plus two parallel edges to a 2-valent vertex;
/// same invariants as [`theta`] except bipartiteness.
pub fn theta_loop() -> BrauerComplex {
    let alpha = vec![1, 0, 3, 2, 5, 4];
    let mut sigma = vec![0; 6];
    sigma[0] = 2; // vertex U: rotation (0 2 1 4)
    sigma[2] = 1;
    sigma[1] = 4;
    sigma[4] = 0;
    sigma[3] = 5; // vertex W: rotation (3 5)
    sigma[5] = 3;
    BrauerComplex::trivial(RibbonComplex::new(alpha, sigma).unwrap())
}

/// Decagon with boundary word `abcdeabcde`, same-letter sides glued
/// orientably: 2 vertices, 5 edges, 1 face, genus 2.
pub fn decagon_c1() -> BrauerComplex {
    decagon(&[0, 1, 2, 3, 4, 0, 1, 2, 3, 4])
}

/// Decagon with boundary word `abcdeadebc`: same invariants as
/// [`decagon_c1`] but a different (unreachable) complex.
pub fn decagon_c2() -> BrauerComplex {
    decagon(&[0, 1, 2, 3, 4, 0, 3, 4, 1, 2])
}

/// Polygon with sides labeled by `word` (letters as small integers, each
/// appearing exactly twice), same-letter sides glued so the result is
/// oriented. The polygon boundary becomes the face permutation.
pub fn decagon(word: &[usize]) -> BrauerComplex {
    let n = word.len();
    let mut alpha = vec![usize::MAX; n];
    for letter in 0..n / 2 {
        let occ: Vec<usize> = (0..n).filter(|&i| word[i] == letter).collect();
        assert_eq!(occ.len(), 2, "each letter must appear exactly twice");
        alpha[occ[0]] = occ[1];
        alpha[occ[1]] = occ[0];
    }
    // The face walk is the polygon boundary: phi(d) = d + 1, so
    // sigma = phi ∘ alpha.
    let sigma: Vec<usize> = (0..n).map(|d| (alpha[d] + 1) % n).collect();
    let labels = (0..n)
        .filter(|&d| d < alpha[d])
        .map(|d| {
            let name = (b'a' + (word[d] % 26) as u8) as char;
            (d.min(alpha[d]), name.to_string())
        })
        .collect();
    BrauerComplex::trivial(RibbonComplex::with_labels(alpha, sigma, labels).unwrap())
}

/// Star with `k` leaves around a single center vertex.
pub fn star(k: usize) -> BrauerComplex {
    let n = 2 * k;
    let mut alpha = vec![0; n];
    let mut sigma = vec![0; n];
    for i in 0..k {
        alpha[i] = k + i;
        alpha[k + i] = i;
        sigma[i] = (i + 1) % k;
        sigma[k + i] = k + i;
    }
    BrauerComplex::trivial(RibbonComplex::new(alpha, sigma).unwrap())
}

pub fn star3() -> BrauerComplex {
    star(3)
}

/// One loop at a single vertex: two faces of perimeter 1.
pub fn one_loop() -> BrauerComplex {
    BrauerComplex::trivial(RibbonComplex::new(vec![1, 0], vec![1, 0]).unwrap())
}

/// Loop bounding a face, plus one pendant edge at the same vertex.
pub fn loop_with_leaf() -> BrauerComplex {
    let alpha = vec![1, 0, 3, 2];
    let mut sigma = vec![0; 4];
    sigma[1] = 0; // rotation at the loop vertex: (1 0 2)
    sigma[0] = 2;
    sigma[2] = 1;
    sigma[3] = 3;
    BrauerComplex::trivial(RibbonComplex::new(alpha, sigma).unwrap())
}

/// Path on three vertices (two edges); the middle vertex carries darts 1
/// and 2.
pub fn path2() -> BrauerComplex {
    let alpha = vec![1, 0, 3, 2];
    let sigma = vec![0, 2, 1, 3];
    BrauerComplex::trivial(RibbonComplex::new(alpha, sigma).unwrap())
}

/// 3-leaf star with multiplicity 2 on the leaf carrying dart `leaf_index`.
pub fn star3_marked(leaf_index: usize) -> BrauerComplex {
    let b = star3();
    let c = b.complex().clone();
    let mut mult = b.mult_map().clone();
    mult.insert(c.vertex_of(3 + leaf_index), 2);
    BrauerComplex::new(c, mult).unwrap()
}
