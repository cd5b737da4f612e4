//! Half-edge (dart) representation of Brauer complexes.
//!
//! A ribbon complex is a pair of permutations on a finite dart set: a
//! fixed-point-free involution `alpha` pairing the two darts of every edge,
//! and a rotation `sigma` giving the counter-clockwise cyclic order of darts
//! around every vertex. Faces are the orbits of `phi = sigma ∘ alpha`
//! (apply `alpha` first); this composition order is fixed globally.
//!
//! Edges are identified by the minimal dart of their `alpha`-orbit, vertices
//! by the minimal dart of their `sigma`-orbit. Only connected complexes are
//! admitted.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of a half-edge. Darts are dense integers `0..2E`.
pub type Dart = usize;
/// An edge, named by the minimal dart of its `alpha`-orbit.
pub type EdgeId = usize;
/// A vertex, named by the minimal dart of its `sigma`-orbit.
pub type VertexId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("dart count {0} is odd")]
    OddDartCount(usize),
    #[error("alpha and sigma must both have length {expected}, got alpha {alpha}, sigma {sigma}")]
    LengthMismatch {
        expected: usize,
        alpha: usize,
        sigma: usize,
    },
    #[error("alpha fixes dart {0}")]
    FixedPointInAlpha(Dart),
    #[error("alpha is not an involution at dart {0}")]
    AlphaNotInvolution(Dart),
    #[error("sigma is not a permutation (dart {0} has two preimages or none)")]
    SigmaNotPermutation(Dart),
    #[error("alpha maps dart {0} out of range")]
    AlphaOutOfRange(Dart),
    #[error("sigma maps dart {0} out of range")]
    SigmaOutOfRange(Dart),
    #[error("complex is disconnected (dart 0 does not reach dart {0})")]
    Disconnected(Dart),
    #[error("multiplicity missing for vertex {0}")]
    MissingMultiplicity(VertexId),
    #[error("multiplicity for vertex {0} must be >= 1")]
    ZeroMultiplicity(VertexId),
    #[error("multiplicity given for {0}, which is not a vertex representative")]
    UnknownVertex(VertexId),
}

/// A face of the complex: one orbit of `phi = sigma ∘ alpha`.
///
/// The perimeter is the orbit length; an edge incident with the face on both
/// sides is counted twice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn perimeter(&self) -> usize {
        self.darts.len()
    }
}

/// Immutable oriented ribbon complex, validated and connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonComplex {
    alpha: Vec<Dart>,
    sigma: Vec<Dart>,
    sigma_inv: Vec<Dart>,
    /// Per dart: minimal dart of its sigma-orbit.
    vertex_rep: Vec<VertexId>,
    faces: Vec<Face>,
    /// Per dart: index into `faces`.
    face_of: Vec<usize>,
    edge_labels: BTreeMap<EdgeId, String>,
}

/// Checks the ribbon-complex invariants, reporting every violation.
pub fn validate(alpha: &[Dart], sigma: &[Dart]) -> Vec<StructureError> {
    let mut errors = Vec::new();
    let n = alpha.len();
    if n % 2 != 0 {
        errors.push(StructureError::OddDartCount(n));
    }
    if sigma.len() != n {
        errors.push(StructureError::LengthMismatch {
            expected: n,
            alpha: alpha.len(),
            sigma: sigma.len(),
        });
        return errors;
    }
    for d in 0..n {
        if alpha[d] >= n {
            errors.push(StructureError::AlphaOutOfRange(d));
            return errors;
        }
        if sigma[d] >= n {
            errors.push(StructureError::SigmaOutOfRange(d));
            return errors;
        }
    }
    for d in 0..n {
        if alpha[d] == d {
            errors.push(StructureError::FixedPointInAlpha(d));
        } else if alpha[alpha[d]] != d {
            errors.push(StructureError::AlphaNotInvolution(d));
        }
    }
    let mut seen = vec![false; n];
    for d in 0..n {
        if seen[sigma[d]] {
            errors.push(StructureError::SigmaNotPermutation(sigma[d]));
        }
        seen[sigma[d]] = true;
    }
    if errors.is_empty() && n > 0 {
        // Connectivity under the group generated by alpha and sigma.
        let mut reached = vec![false; n];
        let mut stack = vec![0];
        reached[0] = true;
        while let Some(d) = stack.pop() {
            for &e in &[alpha[d], sigma[d]] {
                if !reached[e] {
                    reached[e] = true;
                    stack.push(e);
                }
            }
        }
        if let Some(d) = reached.iter().position(|&r| !r) {
            errors.push(StructureError::Disconnected(d));
        }
    }
    errors
}

impl RibbonComplex {
    pub fn new(alpha: Vec<Dart>, sigma: Vec<Dart>) -> Result<Self, Vec<StructureError>> {
        Self::with_labels(alpha, sigma, BTreeMap::new())
    }

    pub fn with_labels(
        alpha: Vec<Dart>,
        sigma: Vec<Dart>,
        edge_labels: BTreeMap<EdgeId, String>,
    ) -> Result<Self, Vec<StructureError>> {
        let errors = validate(&alpha, &sigma);
        if !errors.is_empty() {
            return Err(errors);
        }
        let n = alpha.len();
        let mut sigma_inv = vec![0; n];
        for d in 0..n {
            sigma_inv[sigma[d]] = d;
        }
        let vertex_rep = orbit_reps(&sigma);
        let (faces, face_of) = face_orbits(&alpha, &sigma);
        Ok(RibbonComplex {
            alpha,
            sigma,
            sigma_inv,
            vertex_rep,
            faces,
            face_of,
            edge_labels,
        })
    }

    pub fn dart_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn edge_count(&self) -> usize {
        self.alpha.len() / 2
    }

    pub fn alpha(&self, d: Dart) -> Dart {
        self.alpha[d]
    }

    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d]
    }

    pub fn sigma_inv(&self, d: Dart) -> Dart {
        self.sigma_inv[d]
    }

    /// Face permutation `phi = sigma ∘ alpha`.
    pub fn phi(&self, d: Dart) -> Dart {
        self.sigma[self.alpha[d]]
    }

    pub fn phi_inv(&self, d: Dart) -> Dart {
        self.alpha[self.sigma_inv[d]]
    }

    pub fn alpha_perm(&self) -> &[Dart] {
        &self.alpha
    }

    pub fn sigma_perm(&self) -> &[Dart] {
        &self.sigma
    }

    /// Edge containing dart `d`.
    pub fn edge_of(&self, d: Dart) -> EdgeId {
        d.min(self.alpha[d])
    }

    /// Vertex (sigma-orbit representative) containing dart `d`.
    pub fn vertex_of(&self, d: Dart) -> VertexId {
        self.vertex_rep[d]
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        (0..self.dart_count())
            .filter(|&d| d < self.alpha[d])
            .collect()
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = (0..self.dart_count())
            .filter(|&d| self.vertex_rep[d] == d)
            .collect();
        vs.sort_unstable();
        vs
    }

    /// Darts of vertex `v` in rotation order, starting at the representative.
    pub fn rotation(&self, v: VertexId) -> Vec<Dart> {
        let mut out = vec![v];
        let mut d = self.sigma[v];
        while d != v {
            out.push(d);
            d = self.sigma[d];
        }
        out
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation(v).len()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_index_of(&self, d: Dart) -> usize {
        self.face_of[d]
    }

    pub fn perimeters(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.faces.iter().map(Face::perimeter).collect();
        p.sort_unstable();
        p
    }

    pub fn vertex_count(&self) -> usize {
        (0..self.dart_count())
            .filter(|&d| self.vertex_rep[d] == d)
            .count()
    }

    /// Euler characteristic `V - E + F` of the underlying surface.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.faces.len() as i64
    }

    /// `k + g - n`: A-cycle count plus face count minus edge count. Always
    /// even; equals `2 - 2·genus`.
    pub fn euler_defect(&self) -> i64 {
        self.euler_characteristic()
    }

    /// Topological genus of the complex, `(2 - (V - E + F)) / 2`.
    pub fn genus(&self) -> usize {
        let chi = self.euler_characteristic();
        debug_assert!(chi <= 2 && (2 - chi) % 2 == 0);
        ((2 - chi) / 2) as usize
    }

    pub fn edge_labels(&self) -> &BTreeMap<EdgeId, String> {
        &self.edge_labels
    }

    /// Relabels all darts by the permutation `perm` (old dart -> new dart).
    pub fn relabel(&self, perm: &[Dart]) -> RibbonComplex {
        let n = self.dart_count();
        assert_eq!(perm.len(), n);
        let mut alpha = vec![0; n];
        let mut sigma = vec![0; n];
        for d in 0..n {
            alpha[perm[d]] = perm[self.alpha[d]];
            sigma[perm[d]] = perm[self.sigma[d]];
        }
        let labels = self
            .edge_labels
            .iter()
            .map(|(&e, l)| {
                let d = perm[e].min(perm[self.alpha[e]]);
                (d, l.clone())
            })
            .collect();
        RibbonComplex::with_labels(alpha, sigma, labels).expect("relabeling preserves validity")
    }
}

fn orbit_reps(perm: &[Dart]) -> Vec<usize> {
    let n = perm.len();
    let mut rep = vec![usize::MAX; n];
    for start in 0..n {
        if rep[start] != usize::MAX {
            continue;
        }
        let mut orbit = vec![start];
        let mut d = perm[start];
        while d != start {
            orbit.push(d);
            d = perm[d];
        }
        let min = *orbit.iter().min().unwrap();
        for o in orbit {
            rep[o] = min;
        }
    }
    rep
}

fn face_orbits(alpha: &[Dart], sigma: &[Dart]) -> (Vec<Face>, Vec<usize>) {
    let n = alpha.len();
    let mut face_of = vec![usize::MAX; n];
    let mut faces = Vec::new();
    for start in 0..n {
        if face_of[start] != usize::MAX {
            continue;
        }
        let idx = faces.len();
        let mut darts = vec![start];
        face_of[start] = idx;
        let mut d = sigma[alpha[start]];
        while d != start {
            face_of[d] = idx;
            darts.push(d);
            d = sigma[alpha[d]];
        }
        faces.push(Face { darts });
    }
    (faces, face_of)
}

/// A ribbon complex together with a positive multiplicity per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrauerComplex {
    complex: RibbonComplex,
    mult: BTreeMap<VertexId, u32>,
}

impl BrauerComplex {
    pub fn new(
        complex: RibbonComplex,
        mult: BTreeMap<VertexId, u32>,
    ) -> Result<Self, Vec<StructureError>> {
        let mut errors = Vec::new();
        let vertices = complex.vertices();
        for &v in &vertices {
            match mult.get(&v) {
                None => errors.push(StructureError::MissingMultiplicity(v)),
                Some(0) => errors.push(StructureError::ZeroMultiplicity(v)),
                Some(_) => {}
            }
        }
        for &v in mult.keys() {
            if !vertices.contains(&v) {
                errors.push(StructureError::UnknownVertex(v));
            }
        }
        if errors.is_empty() {
            Ok(BrauerComplex { complex, mult })
        } else {
            Err(errors)
        }
    }

    /// Convenience constructor with every multiplicity equal to 1.
    pub fn trivial(complex: RibbonComplex) -> Self {
        let mult = complex.vertices().into_iter().map(|v| (v, 1)).collect();
        BrauerComplex { complex, mult }
    }

    pub fn complex(&self) -> &RibbonComplex {
        &self.complex
    }

    pub fn mult(&self, v: VertexId) -> u32 {
        self.mult[&v]
    }

    pub fn mult_map(&self) -> &BTreeMap<VertexId, u32> {
        &self.mult
    }

    pub fn mult_multiset(&self) -> Vec<u32> {
        let mut m: Vec<u32> = self.mult.values().copied().collect();
        m.sort_unstable();
        m
    }

    pub fn relabel(&self, perm: &[Dart]) -> BrauerComplex {
        let complex = self.complex.relabel(perm);
        let mut mult = BTreeMap::new();
        for (&v, &m) in &self.mult {
            mult.insert(complex.vertex_of(perm[v]), m);
        }
        BrauerComplex { complex, mult }
    }

    /// Canonical form ignoring edge labels (the default isomorphism notion).
    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_form_impl(self, false)
    }

    /// Canonical form that additionally distinguishes edge labels.
    pub fn canonical_form_labeled(&self) -> CanonicalForm {
        canonical_form_impl(self, true)
    }

    /// Shorthand for the canonical encoding bytes.
    pub fn canonical_key(&self) -> Vec<u8> {
        self.canonical_form().encoding
    }

    pub fn is_isomorphic(&self, other: &BrauerComplex) -> bool {
        self.canonical_key() == other.canonical_key()
    }

    /// Maps an edge of `self` to the corresponding edge of an isomorphic
    /// complex, matching through the canonical relabelings. Returns `None`
    /// when the complexes are not isomorphic.
    pub fn corresponding_edge(&self, other: &BrauerComplex, e: EdgeId) -> Option<EdgeId> {
        let cf_self = self.canonical_form();
        let cf_other = other.canonical_form();
        if cf_self.encoding != cf_other.encoding {
            return None;
        }
        let canon = cf_self.relabeling[e].min(cf_self.relabeling[self.complex.alpha(e)]);
        let dart = (0..other.complex.dart_count()).find(|&d| cf_other.relabeling[d] == canon)?;
        Some(other.complex.edge_of(dart))
    }
}

/// Canonical relabeling of a Brauer complex plus its byte encoding.
///
/// Two complexes are isomorphic as labeled oriented ribbon complexes
/// (orientation-preserving, multiplicity-preserving) exactly when their
/// encodings agree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    /// Dart relabeling (old dart -> canonical dart) realizing the encoding.
    pub relabeling: Vec<Dart>,
    pub encoding: Vec<u8>,
}

impl CanonicalForm {
    /// Stable 64-bit digest of the encoding (FNV-1a).
    pub fn digest(&self) -> u64 {
        fnv1a(&self.encoding)
    }
}

pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// Deterministic traversal labeling from `start`: darts are numbered in
/// first-visit order, exploring `sigma` then `alpha`. Depends only on the
/// isomorphism class and the choice of start dart.
fn bfs_labeling(c: &RibbonComplex, start: Dart) -> Vec<Dart> {
    let n = c.dart_count();
    let mut label = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    label[start] = 0;
    let mut next = 1;
    queue.push_back(start);
    while let Some(d) = queue.pop_front() {
        for &e in &[c.sigma(d), c.alpha(d)] {
            if label[e] == usize::MAX {
                label[e] = next;
                next += 1;
                queue.push_back(e);
            }
        }
    }
    debug_assert_eq!(next, n);
    label
}

fn encode(b: &BrauerComplex, label: &[Dart], with_labels: bool) -> Vec<u8> {
    let c = b.complex();
    let n = c.dart_count();
    let mut inv = vec![0; n];
    for d in 0..n {
        inv[label[d]] = d;
    }
    let mut out = Vec::with_capacity(4 * n + 8);
    for new in 0..n {
        let old = inv[new];
        out.extend_from_slice(&(label[c.sigma(old)] as u16).to_le_bytes());
        out.extend_from_slice(&(label[c.alpha(old)] as u16).to_le_bytes());
    }
    // Vertex multiplicities keyed by the minimal relabeled dart per orbit.
    let mut vert: Vec<(usize, u32)> = b
        .mult_map()
        .iter()
        .map(|(&v, &m)| {
            let min = c.rotation(v).iter().map(|&d| label[d]).min().unwrap();
            (min, m)
        })
        .collect();
    vert.sort_unstable();
    for (rep, m) in vert {
        out.extend_from_slice(&(rep as u16).to_le_bytes());
        out.extend_from_slice(&m.to_le_bytes());
    }
    if with_labels {
        let mut labels: Vec<(usize, &str)> = c
            .edge_labels()
            .iter()
            .map(|(&e, l)| {
                let min = label[e].min(label[c.alpha(e)]);
                (min, l.as_str())
            })
            .collect();
        labels.sort_unstable();
        for (e, l) in labels {
            out.extend_from_slice(&(e as u16).to_le_bytes());
            out.extend_from_slice(l.as_bytes());
            out.push(0);
        }
    }
    out
}

fn canonical_form_impl(b: &BrauerComplex, with_labels: bool) -> CanonicalForm {
    let c = b.complex();
    let n = c.dart_count();
    assert!(n > 0, "empty complex has no canonical form");
    let mut best: Option<(Vec<u8>, Vec<Dart>)> = None;
    for start in 0..n {
        let label = bfs_labeling(c, start);
        let enc = encode(b, &label, with_labels);
        match &best {
            Some((e, _)) if *e <= enc => {}
            _ => best = Some((enc, label)),
        }
    }
    let (encoding, relabeling) = best.unwrap();
    CanonicalForm {
        relabeling,
        encoding,
    }
}

#[cfg(test)]
mod tests {
    use crate::presets::*;
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn segment_is_valid() {
        assert!(validate(&[1, 0], &[0, 1]).is_empty());
    }

    #[test]
    fn alpha_fixed_point_is_reported() {
        let errors = validate(&[0, 1], &[0, 1]);
        assert!(errors.contains(&StructureError::FixedPointInAlpha(0)));
    }

    #[test]
    fn disjoint_segments_are_disconnected() {
        let errors = validate(&[1, 0, 3, 2], &[0, 1, 2, 3]);
        assert!(errors
            .iter()
            .any(|e| matches!(e, StructureError::Disconnected(_))));
    }

    #[test]
    fn theta_has_one_hexagonal_face() {
        let b = theta();
        let perims = b.complex().perimeters();
        assert_eq!(perims, vec![6]);
        assert_eq!(b.complex().genus(), 1);
        assert_eq!(b.complex().euler_defect(), 0);
    }

    #[test]
    fn segment_has_one_face_of_perimeter_two() {
        let b = segment();
        assert_eq!(b.complex().perimeters(), vec![2]);
        assert_eq!(b.complex().genus(), 0);
    }

    #[test]
    fn one_loop_has_two_unit_faces() {
        let b = one_loop();
        assert_eq!(b.complex().perimeters(), vec![1, 1]);
        assert_eq!(b.complex().genus(), 0);
    }

    #[test]
    fn decagons_have_genus_two() {
        for b in [decagon_c1(), decagon_c2()] {
            let c = b.complex();
            assert_eq!(c.vertex_count(), 2);
            assert_eq!(c.edge_count(), 5);
            assert_eq!(c.perimeters(), vec![10]);
            assert_eq!(c.genus(), 2);
        }
    }

    #[test]
    fn faces_partition_the_dart_set() {
        for b in [theta(), theta_loop(), star3(), decagon_c1()] {
            let c = b.complex();
            let total: usize = c.faces().iter().map(Face::perimeter).sum();
            assert_eq!(total, c.dart_count());
            let mut seen = vec![false; c.dart_count()];
            for f in c.faces() {
                for &d in &f.darts {
                    assert!(!seen[d]);
                    seen[d] = true;
                }
            }
        }
    }

    #[test]
    fn canonical_form_invariant_under_swap() {
        let b = segment();
        let swapped = b.relabel(&[1, 0]);
        assert_eq!(b.canonical_key(), swapped.canonical_key());
    }

    #[test]
    fn canonical_form_distinguishes_decagon_words() {
        assert_ne!(decagon_c1().canonical_key(), decagon_c2().canonical_key());
    }

    #[test]
    fn labeled_canonical_form_sees_edge_labels() {
        let plain = theta();
        let labels: BTreeMap<usize, String> =
            [(0, "a"), (2, "b"), (4, "c")].map(|(e, l)| (e, l.to_string())).into();
        // cyclically rotated labels: realized by the edge 3-cycle symmetry
        let rotated: BTreeMap<usize, String> =
            [(0, "b"), (2, "c"), (4, "a")].map(|(e, l)| (e, l.to_string())).into();
        let complex = plain.complex();
        let l1 = BrauerComplex::trivial(
            RibbonComplex::with_labels(
                complex.alpha_perm().to_vec(),
                complex.sigma_perm().to_vec(),
                labels,
            )
            .unwrap(),
        );
        let l2 = BrauerComplex::trivial(
            RibbonComplex::with_labels(
                complex.alpha_perm().to_vec(),
                complex.sigma_perm().to_vec(),
                rotated,
            )
            .unwrap(),
        );
        // label-free isomorphism is the default notion
        assert_eq!(l1.canonical_key(), l2.canonical_key());
        assert_eq!(l1.canonical_key(), plain.canonical_key());
        // the labeled variant distinguishes them from the unlabeled complex
        assert_eq!(
            l1.canonical_form_labeled().encoding,
            l2.canonical_form_labeled().encoding,
            "a cyclic label rotation is realized by the edge 3-cycle symmetry"
        );
        assert_ne!(l1.canonical_form_labeled().encoding, plain.canonical_form_labeled().encoding);
    }

    #[test]
    fn canonical_form_invariant_under_rotation_shift() {
        let b = theta();
        // cyclically shift both rotations: 0->2->4->0 and 1->3->5->1
        let perm = vec![2, 3, 4, 5, 0, 1];
        let shifted = b.relabel(&perm);
        assert_eq!(b.canonical_key(), shifted.canonical_key());
    }

    pub(crate) fn random_complex(rng: &mut impl Rng, edges: usize) -> BrauerComplex {
        loop {
            let n = 2 * edges;
            let alpha: Vec<usize> = (0..n).map(|d| d ^ 1).collect();
            let mut sigma: Vec<usize> = (0..n).collect();
            // random permutation as rotation
            for i in (1..n).rev() {
                let j = rng.gen_range(0..=i);
                sigma.swap(i, j);
            }
            if validate(&alpha, &sigma).is_empty() {
                return BrauerComplex::trivial(RibbonComplex::new(alpha, sigma).unwrap());
            }
        }
    }

    #[test]
    fn canonical_form_constant_on_relabeling_orbits() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for b in [theta(), theta_loop(), star3(), loop_with_leaf()] {
            let key = b.canonical_key();
            let n = b.complex().dart_count();
            for _ in 0..100 {
                let mut perm: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    let j = rng.gen_range(0..=i);
                    perm.swap(i, j);
                }
                assert_eq!(b.relabel(&perm).canonical_key(), key);
            }
        }
    }

    #[test]
    fn random_complexes_have_nonnegative_even_defect() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let edges = rng.gen_range(1..=6);
            let b = random_complex(&mut rng, edges);
            let c = b.complex();
            assert_eq!(c.euler_defect() % 2, 0);
            assert!(c.euler_defect() <= 2);
            let _ = c.genus(); // asserts non-negativity internally
        }
    }
}
