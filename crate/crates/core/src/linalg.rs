//! Exact linear algebra over the rationals.
//!
//! Small dense matrices with arbitrary-precision rational entries; enough
//! for nullspaces, ranks and change-of-basis on spaces of dimension a few
//! hundred. No tolerances anywhere.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rat = BigRational;

pub fn zeros(n: usize) -> Vec<Rat> {
    vec![Rat::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = zeros(n);
    v[i] = Rat::one();
    v
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_assign_scaled(dst: &mut [Rat], src: &[Rat], scale: &Rat) {
    if scale.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += s * scale;
        }
    }
}

/// Reduces `rows` to reduced row echelon form in place; returns the pivot
/// column of each nonzero row.
pub fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].clone().recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = -rows[i][c].clone();
                let (head, tail) = rows.split_at_mut(i.max(r));
                let (ri, rr) = if i < r {
                    (&mut head[i], &tail[0])
                } else {
                    (&mut tail[0], &head[r])
                };
                add_assign_scaled(ri, rr, &f);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.retain(|row| !is_zero_vec(row));
    pivots
}

pub fn rank(mut rows: Vec<Vec<Rat>>) -> usize {
    rref(&mut rows);
    rows.len()
}

/// Basis of `{x : M x = 0}` for the matrix given as a list of rows.
pub fn nullspace(mut rows: Vec<Vec<Rat>>, ncols: usize) -> Vec<Vec<Rat>> {
    for row in &rows {
        assert_eq!(row.len(), ncols);
    }
    let pivots = rref(&mut rows);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_set.contains(c)) {
        let mut v = zeros(ncols);
        v[free] = Rat::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Expresses `v` in the span of `basis`, if possible.
pub fn express_in_span(basis: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    let n = v.len();
    let m = basis.len();
    // augmented system: columns are basis vectors, last column is v
    let mut rows: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.contains(&m) {
        return None; // inconsistent
    }
    let mut coeffs = zeros(m);
    for (row, &p) in rows.iter().zip(&pivots) {
        coeffs[p] = row[m].clone();
    }
    Some(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn nullspace_of_singular_matrix() {
        // x + y = 0 has a one-dimensional nullspace
        let rows = vec![vec![r(1), r(1)]];
        let ns = nullspace(rows, 2);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0][0].clone() + ns[0][1].clone(), r(0));
    }

    #[test]
    fn rank_of_identity() {
        let rows = vec![vec![r(1), r(0)], vec![r(0), r(1)]];
        assert_eq!(rank(rows), 2);
    }

    #[test]
    fn express_vector() {
        let basis = vec![vec![r(1), r(1), r(0)], vec![r(0), r(1), r(1)]];
        let c = express_in_span(&basis, &[r(2), r(5), r(3)]).unwrap();
        assert_eq!(c, vec![r(2), r(3)]);
        assert!(express_in_span(&basis, &[r(1), r(0), r(0)]).is_none());
    }
}
