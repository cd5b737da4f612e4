//! Exact multiplication table of the symmetric SB-algebra of a quiver.
//!
//! The basis over the rationals consists of one idempotent per quiver
//! vertex, all proper paths along A-cycle walks, and one socle element per
//! quiver vertex. A path is a pair (starting dart, length): it walks along
//! the rotation of one complex vertex, and the full walk of length
//! `mult · degree` is the socle element of its starting edge. Products of
//! basis elements are again basis elements or zero, so the table is stored
//! index-to-index.
//!
//! Conventions fixed here once: paths compose left to right (`p · q` is
//! "p then q"), projectives are the left modules `Λe_i`, and a morphism
//! `P_i -> P_j` is right multiplication by an element of `e_i Λ e_j`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::linalg::{self, Rat};
use crate::quiver::ExtendedQuiver;
use crate::ribbon::{Dart, EdgeId};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BasisElem {
    Idem(EdgeId),
    Path { dart: Dart, len: usize },
    Socle(EdgeId),
}

/// Dense coefficient vector over the algebra basis.
pub type AlgVec = Vec<Rat>;

#[derive(Debug, Clone)]
pub struct AlgebraTable {
    pub basis: Vec<BasisElem>,
    pub dim: usize,
    pub quiver: ExtendedQuiver,
    source: Vec<EdgeId>,
    target: Vec<EdgeId>,
    table: Vec<Option<u32>>,
    idem_idx: HashMap<EdgeId, usize>,
    socle_idx: HashMap<EdgeId, usize>,
    /// Basis indices of the non-formal arrows (length-1 paths).
    pub arrow_elems: Vec<usize>,
}

impl AlgebraTable {
    pub fn product(&self, x: usize, y: usize) -> Option<usize> {
        self.table[x * self.dim + y].map(|k| k as usize)
    }

    pub fn source(&self, x: usize) -> EdgeId {
        self.source[x]
    }

    pub fn target(&self, x: usize) -> EdgeId {
        self.target[x]
    }

    pub fn idem(&self, e: EdgeId) -> usize {
        self.idem_idx[&e]
    }

    pub fn socle(&self, e: EdgeId) -> usize {
        self.socle_idx[&e]
    }

    pub fn path_index(&self, dart: Dart, len: usize) -> Option<usize> {
        self.basis
            .iter()
            .position(|b| matches!(b, BasisElem::Path { dart: d, len: l } if *d == dart && *l == len))
    }

    /// The identity element, `Σ e_i`.
    pub fn one(&self) -> AlgVec {
        let mut v = linalg::zeros(self.dim);
        for &i in self.idem_idx.values() {
            v[i] = Rat::one();
        }
        v
    }

    pub fn unit_vec(&self, i: usize) -> AlgVec {
        linalg::unit(self.dim, i)
    }

    /// Product of coefficient vectors.
    pub fn mul(&self, a: &AlgVec, b: &AlgVec) -> AlgVec {
        let mut out = linalg::zeros(self.dim);
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                if let Some(k) = self.product(i, j) {
                    out[k as usize] += ca * cb;
                }
            }
        }
        out
    }

    /// Whether `v` commutes with every idempotent and every arrow.
    pub fn is_central(&self, v: &AlgVec) -> bool {
        let mut gens: Vec<usize> = self.idem_idx.values().copied().collect();
        gens.extend_from_slice(&self.arrow_elems);
        gens.iter().all(|&g| {
            let gv = self.unit_vec(g);
            self.mul(v, &gv) == self.mul(&gv, v)
        })
    }

    /// Basis indices of `e_u Λ e_v`: morphism space `P_u -> P_v`.
    pub fn hom_basis(&self, u: EdgeId, v: EdgeId) -> Vec<usize> {
        (0..self.dim)
            .filter(|&i| self.source[i] == u && self.target[i] == v)
            .collect()
    }
}

/// Materializes the multiplication table from an extended quiver.
pub fn build_algebra(q: &ExtendedQuiver) -> AlgebraTable {
    let mut basis = Vec::new();
    let mut source = Vec::new();
    let mut target = Vec::new();
    let mut idem_idx = HashMap::new();
    let mut socle_idx = HashMap::new();
    let mut path_idx: HashMap<(Dart, usize), usize> = HashMap::new();

    for &e in &q.vertices {
        idem_idx.insert(e, basis.len());
        basis.push(BasisElem::Idem(e));
        source.push(e);
        target.push(e);
    }
    let step = |d: Dart, a: usize| -> Dart {
        let arrow = &q.arrows[d];
        let cyc = &q.a_cycles[arrow.a_cycle];
        cyc[(arrow.a_pos + a) % cyc.len()]
    };
    for d in 0..q.arrow_count() {
        if q.arrows[d].formal {
            continue;
        }
        for len in 1..q.walk_len(d) {
            path_idx.insert((d, len), basis.len());
            basis.push(BasisElem::Path { dart: d, len });
            source.push(q.source(d));
            target.push(q.source(step(d, len)));
        }
    }
    for &e in &q.vertices {
        socle_idx.insert(e, basis.len());
        basis.push(BasisElem::Socle(e));
        source.push(e);
        target.push(e);
    }

    let dim = basis.len();
    let mut table: Vec<Option<u32>> = vec![None; dim * dim];
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let prod: Option<usize> = match (x, y) {
                (BasisElem::Idem(a), BasisElem::Idem(b)) => (a == b).then_some(i),
                (BasisElem::Idem(a), _) => (*a == source[j]).then_some(j),
                (_, BasisElem::Idem(b)) => (target[i] == *b).then_some(i),
                (BasisElem::Socle(_), _) | (_, BasisElem::Socle(_)) => None,
                (
                    BasisElem::Path { dart: d1, len: l1 },
                    BasisElem::Path { dart: d2, len: l2 },
                ) => {
                    let full = q.walk_len(*d1);
                    if step(*d1, *l1) == *d2 && l1 + l2 <= full {
                        if l1 + l2 < full {
                            Some(path_idx[&(*d1, l1 + l2)])
                        } else {
                            Some(socle_idx[&q.source(*d1)])
                        }
                    } else {
                        None
                    }
                }
            };
            table[i * dim + j] = prod.map(|k| k as u32);
        }
    }

    let arrow_elems = (0..q.arrow_count())
        .filter_map(|d| path_idx.get(&(d, 1)).copied())
        .collect();

    AlgebraTable {
        basis,
        dim,
        quiver: q.clone(),
        source,
        target,
        table,
        idem_idx,
        socle_idx,
        arrow_elems,
    }
}

/// Center basis computed by brute force: solves `z·g = g·z` over the
/// rationals for all generators (idempotents and arrows) and returns a basis
/// of the solution space as coefficient vectors.
///
/// Commuting with every idempotent already forces `z` into the span of the
/// closed basis elements (equal source and target), so the elimination only
/// runs over those candidates; this is a restatement of part of the linear
/// system, not a structural shortcut.
pub fn center_oracle(a: &AlgebraTable) -> Vec<AlgVec> {
    let candidates: Vec<usize> = (0..a.dim).filter(|&i| a.source[i] == a.target[i]).collect();
    let pos: HashMap<usize, usize> = candidates.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let m = candidates.len();
    // Rows indexed by (generator, result basis element); entries in {-1,0,1}.
    let mut rows: HashMap<(usize, usize), Vec<Rat>> = HashMap::new();
    for &g in &a.arrow_elems {
        for (p, &c) in candidates.iter().enumerate() {
            if let Some(k) = a.product(c, g) {
                let row = rows
                    .entry((g, k as usize))
                    .or_insert_with(|| linalg::zeros(m));
                row[p] += Rat::one();
            }
            if let Some(k) = a.product(g, c) {
                let row = rows
                    .entry((g, k as usize))
                    .or_insert_with(|| linalg::zeros(m));
                row[p] -= Rat::one();
            }
        }
    }
    let matrix: Vec<Vec<Rat>> = rows.into_values().collect();
    let null = linalg::nullspace(matrix, m);
    null.into_iter()
        .map(|v| {
            let mut full = linalg::zeros(a.dim);
            for (p, coeff) in v.into_iter().enumerate() {
                if !coeff.is_zero() {
                    full[candidates[p]] = coeff;
                }
            }
            let _ = pos;
            full
        })
        .collect()
}

/// Symbolic center basis: the identity, the rotation-invariant cycle sums
/// `m_{i,t}`, one element per face-bounding loop arrow, and the socle.
#[derive(Debug, Clone)]
pub struct CenterBasis {
    pub one: AlgVec,
    /// `(a_cycle, t, vector)` with `1 <= t < f(c_i)`: sum of the t-th powers
    /// of all rotations of cycle `i`.
    pub m_part: Vec<(usize, usize, AlgVec)>,
    /// `(loop dart, vector)`: for each non-formal loop arrow that is not a
    /// whole A-cycle, the almost-full walk starting right after the loop.
    /// Loops that are whole A-cycles duplicate `m_{i,f-1}` and are omitted.
    pub q_part: Vec<(Dart, AlgVec)>,
    /// Socle basis indices, one per quiver vertex.
    pub s_part: Vec<usize>,
    pub dim_z: usize,
    /// Nilpotency indices of `Z/Soc Z` as predicted by the construction:
    /// the multiset of A-cycle multiplicities, ascending.
    pub nilpotency: Vec<u32>,
}

pub fn center_formula(a: &AlgebraTable) -> CenterBasis {
    let q = &a.quiver;
    let mut m_part = Vec::new();
    for (i, cyc) in q.a_cycles.iter().enumerate() {
        let l = cyc.len();
        let f = q.a_cycle_mult[i] as usize;
        for t in 1..f {
            let mut v = linalg::zeros(a.dim);
            for &d in cyc {
                let idx = a
                    .path_index(d, t * l)
                    .expect("rotation power is a basis path");
                v[idx] += Rat::one();
            }
            m_part.push((i, t, v));
        }
    }
    let mut q_part = Vec::new();
    for d in 0..q.arrow_count() {
        let arrow = &q.arrows[d];
        if arrow.formal || arrow.source != arrow.target {
            continue;
        }
        if q.a_cycles[arrow.a_cycle].len() == 1 {
            continue; // whole A-cycle: already covered by m_{i, f-1}
        }
        // Face-bounding loop: the walk of length f·l - 1 starting at the
        // arrow after the loop is central.
        let start = q.a_successor(d);
        let len = q.walk_len(d) - 1;
        let idx = a.path_index(start, len).expect("almost-full walk exists");
        let mut v = linalg::zeros(a.dim);
        v[idx] = Rat::one();
        q_part.push((d, v));
    }
    let s_part: Vec<usize> = q.vertices.iter().map(|&e| a.socle(e)).collect();
    let dim_z = 1 + m_part.len() + q_part.len() + s_part.len();
    let mut nilpotency: Vec<u32> = q.a_cycle_mult.clone();
    nilpotency.sort_unstable();
    CenterBasis {
        one: a.one(),
        m_part,
        q_part,
        s_part,
        dim_z,
        nilpotency,
    }
}

impl CenterBasis {
    pub fn vectors(&self, a: &AlgebraTable) -> Vec<AlgVec> {
        let mut out = vec![self.one.clone()];
        out.extend(self.m_part.iter().map(|(_, _, v)| v.clone()));
        out.extend(self.q_part.iter().map(|(_, v)| v.clone()));
        out.extend(self.s_part.iter().map(|&i| a.unit_vec(i)));
        out
    }
}

/// Nilpotency-index multiset of `Z/Soc Z`, computed from an explicit center
/// basis by quotienting out `Soc Z` and taking ranks of radical powers.
///
/// Multiplicity-1 cycles contribute nothing visible to `Z/Soc Z`, so the
/// multiset is padded with 1s up to the A-cycle count of the quiver.
pub fn center_nilpotency_multiset(a: &AlgebraTable, center: &[AlgVec]) -> Vec<u32> {
    let k = a.quiver.a_cycles.len();
    let one = a.one();
    // rad Z: subtract each vector's identity component.
    let e0 = a.idem(a.quiver.vertices[0]);
    let mut rad: Vec<AlgVec> = center
        .iter()
        .map(|z| {
            let mut v = z.clone();
            let lambda = v[e0].clone();
            linalg::add_assign_scaled(&mut v, &one, &-lambda);
            v
        })
        .collect();
    linalg::rref(&mut rad);
    // Soc Z: central elements annihilated by rad Z.
    let m = center.len();
    let mut rows = Vec::new();
    for n in &rad {
        for coord in 0..a.dim {
            let row: Vec<Rat> = center
                .iter()
                .map(|z| a.mul(z, n)[coord].clone())
                .collect();
            rows.push(row);
        }
    }
    let soc_coords = linalg::nullspace(rows, m); // in center coordinates
    // Work in Z-coordinates; the quotient takes the non-pivot coordinates.
    let mut soc_rows = soc_coords;
    let pivots = linalg::rref(&mut soc_rows);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..m).filter(|c| !pivot_set.contains(c)).collect();
    let project = |c: &[Rat]| -> Vec<Rat> {
        // reduce modulo Soc Z, then restrict to free coordinates
        let mut v = c.to_vec();
        for (row, &p) in soc_rows.iter().zip(&pivots) {
            let f = -v[p].clone();
            linalg::add_assign_scaled(&mut v, row, &f);
        }
        free.iter().map(|&c| v[c].clone()).collect()
    };
    let in_center = |v: &AlgVec| -> Vec<Rat> {
        linalg::express_in_span(center, v).expect("center is closed under multiplication")
    };
    let lift = |w: &[Rat]| -> AlgVec {
        // any preimage: place the free coordinates, pivots zero
        let mut c = linalg::zeros(m);
        for (i, &fc) in free.iter().enumerate() {
            c[fc] = w[i].clone();
        }
        let mut v = linalg::zeros(a.dim);
        for (coeff, z) in c.iter().zip(center) {
            linalg::add_assign_scaled(&mut v, z, coeff);
        }
        v
    };
    // radical of the quotient, then ranks of its powers
    let rad_w: Vec<Vec<Rat>> = rad.iter().map(|n| project(&in_center(n))).collect();
    let mut rad_w = rad_w;
    linalg::rref(&mut rad_w);
    let mut ranks = vec![rad_w.len()];
    let mut current = rad_w.clone();
    while !current.is_empty() {
        let mut next = Vec::new();
        for p in &current {
            for r in &rad_w {
                let prod = a.mul(&lift(p), &lift(r));
                let w = project(&in_center(&prod));
                if !linalg::is_zero_vec(&w) {
                    next.push(w);
                }
            }
        }
        linalg::rref(&mut next);
        if next.is_empty() {
            break;
        }
        ranks.push(next.len());
        current = next;
    }
    ranks.push(0);
    // ranks[t-1] - ranks[t] = #{cycles with multiplicity >= t+1}
    let mut multiset = Vec::new();
    let mut ge_next = 0; // #{f >= t+1} for the t about to be emitted
    for t in (2..=ranks.len()).rev() {
        let ge_t = ranks[t - 2] - ranks.get(t - 1).copied().unwrap_or(0);
        for _ in 0..ge_t - ge_next {
            multiset.push(t as u32);
        }
        ge_next = ge_t;
    }
    while multiset.len() < k {
        multiset.push(1);
    }
    multiset.sort_unstable();
    multiset
}

/// A complex of projectives concentrated in degrees -1 and 0: a list of
/// projectives in degree -1 and at most one projective in degree 0.
///
/// Stalk complexes occupy degree -1 with an empty degree-0 term: summands of
/// one tilting complex must keep their projective-list terms in a common
/// degree, otherwise the shifted Hom spaces fail to vanish.
#[derive(Debug, Clone)]
pub struct TwoTermComplex {
    /// Projectives in degree -1.
    pub neg: Vec<EdgeId>,
    /// The degree-0 projective, if any.
    pub zero: Option<EdgeId>,
    /// Differential components: `diff[r]` is an element of
    /// `e_{neg[r]} Λ e_{zero}` acting by right multiplication.
    pub diff: Vec<AlgVec>,
}

impl TwoTermComplex {
    pub fn stalk(j: EdgeId) -> Self {
        TwoTermComplex {
            neg: vec![j],
            zero: None,
            diff: Vec::new(),
        }
    }
}

/// Dimension of the chain-map space `Hom(X, Y[shift])` modulo homotopy in
/// the homotopy category of projectives. Shifts beyond ±1 have no overlap
/// for two-term complexes and give 0.
pub fn hom_complexes(a: &AlgebraTable, x: &TwoTermComplex, y: &TwoTermComplex, shift: i32) -> usize {
    match shift {
        0 => hom_shift0(a, x, y),
        -1 => hom_shift_minus1(a, x, y),
        1 => hom_shift_plus1(a, x, y),
        _ => 0,
    }
}

struct VarSpace {
    /// (row-projective, col-projective, basis indices) blocks
    blocks: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    total: usize,
}

impl VarSpace {
    fn new(blocks: Vec<Vec<usize>>) -> Self {
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut total = 0;
        for b in &blocks {
            offsets.push(total);
            total += b.len();
        }
        VarSpace {
            blocks,
            offsets,
            total,
        }
    }
}

fn rank_of_map<F>(a: &AlgebraTable, domain: &VarSpace, out_dim: usize, apply: F) -> usize
where
    F: Fn(usize, usize) -> Vec<Rat>,
{
    // columns = domain variables; rows = output coordinates
    let mut cols = Vec::new();
    for (bi, block) in domain.blocks.iter().enumerate() {
        for (vi, &basis_elem) in block.iter().enumerate() {
            let _ = vi;
            let col = apply(bi, basis_elem);
            debug_assert_eq!(col.len(), out_dim);
            cols.push(col);
        }
    }
    let _ = a;
    if cols.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Rat>> = (0..out_dim)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    linalg::rank(rows)
}

fn hom_shift0(a: &AlgebraTable, x: &TwoTermComplex, y: &TwoTermComplex) -> usize {
    let rx = x.neg.len();
    let sy = y.neg.len();
    // variables: f_neg[r][s] in Hom(x.neg[r], y.neg[s]);
    // f0 in Hom(x.zero, y.zero) when both degree-0 terms exist
    let mut blocks = Vec::new();
    for &u in &x.neg {
        for &v in &y.neg {
            blocks.push(a.hom_basis(u, v));
        }
    }
    let has_g = x.zero.is_some() && y.zero.is_some();
    if let (Some(xb), Some(yd)) = (x.zero, y.zero) {
        blocks.push(a.hom_basis(xb, yd));
    }
    let vars = VarSpace::new(blocks);
    // chain condition per r, in Hom(x.neg[r], y.zero):
    //   d_X[r] · f0 - Σ_s f_neg[r][s] · d_Y[s] = 0
    let mut chain_dim = vars.total;
    if y.zero.is_some() {
        let mut rows: Vec<Vec<Rat>> = vec![linalg::zeros(vars.total); rx * a.dim];
        for (bi, block) in vars.blocks.iter().enumerate() {
            for (vi, &be) in block.iter().enumerate() {
                let col = vars.offsets[bi] + vi;
                let bvec = a.unit_vec(be);
                if bi < rx * sy {
                    let r = bi / sy;
                    let s = bi % sy;
                    let contrib = a.mul(&bvec, &y.diff[s]);
                    for coord in 0..a.dim {
                        if !contrib[coord].is_zero() {
                            rows[r * a.dim + coord][col] -= contrib[coord].clone();
                        }
                    }
                } else {
                    for r in 0..rx {
                        let contrib = a.mul(&x.diff[r], &bvec);
                        for coord in 0..a.dim {
                            if !contrib[coord].is_zero() {
                                rows[r * a.dim + coord][col] += contrib[coord].clone();
                            }
                        }
                    }
                }
            }
        }
        chain_dim = linalg::nullspace(rows, vars.total).len();
    }
    // homotopies h[s] in Hom(x.zero, y.neg[s]):
    //   Δf_neg[r][s] = d_X[r] · h[s],  Δf0 = Σ_s h[s] · d_Y[s]
    let Some(xb) = x.zero else {
        return chain_dim;
    };
    let h_blocks: Vec<Vec<usize>> = y.neg.iter().map(|&v| a.hom_basis(xb, v)).collect();
    let h_vars = VarSpace::new(h_blocks);
    let boundary_rank = rank_of_map(a, &h_vars, vars.total, |s, be| {
        let bvec = a.unit_vec(be);
        let mut out = linalg::zeros(vars.total);
        for r in 0..rx {
            let img = a.mul(&x.diff[r], &bvec);
            write_block(&vars, r * sy + s, &img, a, &mut out);
        }
        if has_g {
            let img0 = a.mul(&bvec, &y.diff[s]);
            write_block(&vars, rx * sy, &img0, a, &mut out);
        }
        out
    });
    chain_dim - boundary_rank
}

/// Writes the coefficients of algebra vector `img` into the coordinates of
/// variable block `bi` (components outside the block's basis must vanish).
fn write_block(vars: &VarSpace, bi: usize, img: &AlgVec, _a: &AlgebraTable, out: &mut [Rat]) {
    for (vi, &be) in vars.blocks[bi].iter().enumerate() {
        if !img[be].is_zero() {
            out[vars.offsets[bi] + vi] += img[be].clone();
        }
    }
    debug_assert!({
        let in_block: std::collections::BTreeSet<usize> =
            vars.blocks[bi].iter().copied().collect();
        img.iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || in_block.contains(&i))
    });
}

fn hom_shift_minus1(a: &AlgebraTable, x: &TwoTermComplex, y: &TwoTermComplex) -> usize {
    // single component f[s]: X^0 -> Y[-1]^0 = y.neg[s]; conditions
    // d_X[r]·f[s] = 0 for all r, s and Σ_s f[s]·d_Y[s] = 0; no homotopies
    let Some(xb) = x.zero else {
        return 0;
    };
    let blocks: Vec<Vec<usize>> = y.neg.iter().map(|&v| a.hom_basis(xb, v)).collect();
    let vars = VarSpace::new(blocks);
    if vars.total == 0 {
        return 0;
    }
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let nrows_pre = x.neg.len() * y.neg.len() * a.dim;
    rows.resize(nrows_pre + a.dim, linalg::zeros(vars.total));
    for (s, block) in vars.blocks.iter().enumerate() {
        for (vi, &be) in block.iter().enumerate() {
            let col = vars.offsets[s] + vi;
            let bvec = a.unit_vec(be);
            for r in 0..x.neg.len() {
                let img = a.mul(&x.diff[r], &bvec);
                for coord in 0..a.dim {
                    if !img[coord].is_zero() {
                        rows[(r * y.neg.len() + s) * a.dim + coord][col] += img[coord].clone();
                    }
                }
            }
            if y.zero.is_some() {
                let img = a.mul(&bvec, &y.diff[s]);
                for coord in 0..a.dim {
                    if !img[coord].is_zero() {
                        rows[nrows_pre + coord][col] += img[coord].clone();
                    }
                }
            }
        }
    }
    linalg::nullspace(rows, vars.total).len()
}

fn hom_shift_plus1(a: &AlgebraTable, x: &TwoTermComplex, y: &TwoTermComplex) -> usize {
    // components f_neg[r]: X^{-1}[r] -> Y[1]^{-1} = y.zero, unconstrained;
    // homotopies: h0 in Hom(x.zero, y.zero) with Δf_neg[r] = d_X[r]·h0,
    // and h_neg[r][s] in Hom(x.neg[r], y.neg[s]) with Δf_neg[r] = Σ_s h·d_Y[s]
    let Some(yd) = y.zero else {
        return 0;
    };
    let blocks: Vec<Vec<usize>> = x.neg.iter().map(|&u| a.hom_basis(u, yd)).collect();
    let vars = VarSpace::new(blocks);
    if vars.total == 0 {
        return 0;
    }
    let mut h_blocks = Vec::new();
    h_blocks.push(match x.zero {
        Some(xb) => a.hom_basis(xb, yd),
        None => Vec::new(),
    });
    for &u in &x.neg {
        for &v in &y.neg {
            h_blocks.push(a.hom_basis(u, v));
        }
    }
    let h_vars = VarSpace::new(h_blocks);
    let sy = y.neg.len();
    let boundary_rank = rank_of_map(a, &h_vars, vars.total, |bi, be| {
        let bvec = a.unit_vec(be);
        let mut out = linalg::zeros(vars.total);
        if bi == 0 {
            for r in 0..x.neg.len() {
                let img = a.mul(&x.diff[r], &bvec);
                write_block(&vars, r, &img, a, &mut out);
            }
        } else {
            let r = (bi - 1) / sy;
            let s = (bi - 1) % sy;
            let img = a.mul(&bvec, &y.diff[s]);
            write_block(&vars, r, &img, a, &mut out);
        }
        out
    });
    vars.total - boundary_rank
}
