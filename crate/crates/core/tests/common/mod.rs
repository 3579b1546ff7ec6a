//! Oracles and lattice builders shared by the integration tests.
//!
//! The oracles use plain rational Gaussian elimination and share no code
//! with the library's integer normal forms.

#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use regconst::catalog::character_lattice;
use regconst::{GLattice, Group, IntMatrix, Limits, PermLattice, Subgroup};

pub fn rational_rows(a: &IntMatrix) -> Vec<Vec<BigRational>> {
    a.row_iter().map(|r| r.iter().map(|e| BigRational::from_integer(e.clone())).collect()).collect()
}

/// Row-reduces in place; returns the row echelon form's rank and the
/// determinant of the pivots (with sign).
fn eliminate(m: &mut [Vec<BigRational>], cols: usize) -> (usize, BigRational) {
    let mut det = BigRational::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            det = BigRational::zero();
            continue;
        };
        if p != r {
            m.swap(p, r);
            det = -det;
        }
        det *= m[r][c].clone();
        let pivot = m[r].clone();
        for row in m[r + 1..].iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot[c];
            for (x, p) in row[c..cols].iter_mut().zip(&pivot[c..cols]) {
                *x -= &f * p;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (r, det)
}

pub fn oracle_det(a: &IntMatrix) -> BigInt {
    assert!(a.is_square());
    if a.rows() == 0 {
        return BigInt::one();
    }
    let mut m = rational_rows(a);
    let (r, d) = eliminate(&mut m, a.cols());
    if r < a.rows() {
        return BigInt::zero();
    }
    assert!(d.is_integer());
    d.to_integer()
}

pub fn oracle_rank(a: &IntMatrix) -> usize {
    let mut m = rational_rows(a);
    eliminate(&mut m, a.cols()).0
}

/// `|det|`, i.e. the cokernel order of a nonsingular square matrix.
pub fn oracle_index(a: &IntMatrix) -> BigInt {
    oracle_det(a).abs()
}

/// Trivial lattice, one sign character per index-two normal subgroup,
/// permutation lattices of small index, one augmentation quotient and one
/// direct sum.
pub fn test_lattices(group: &Arc<Group>, max_index: usize, limits: &Limits) -> Vec<(String, GLattice)> {
    let mut out = vec![("Z".to_string(), GLattice::trivial(group.clone(), 1))];
    let classes = group.subgroup_classes(limits).unwrap();
    for class in &classes {
        let h = &class.representative;
        if h.index_in(group) == 2 {
            let q = group.quotient(h, limits).unwrap();
            let sign = character_lattice(Arc::new(q.group.clone()), |x| x != 0).unwrap();
            out.push((format!("sign[{}]", label(h)), GLattice::inflate(group.clone(), &q, &sign).unwrap()));
        }
    }
    let mut augmented = false;
    for class in &classes {
        let h = &class.representative;
        let index = h.index_in(group);
        if index == 1 || index > max_index {
            continue;
        }
        let p = PermLattice::new(group.clone(), std::slice::from_ref(h)).unwrap();
        out.push((format!("Z[G/{}]", label(h)), p.lattice().clone()));
        if !augmented && index > 2 {
            let norm = IntMatrix::from_rows(&[vec![1i64; index]]).unwrap();
            out.push((format!("I[G/{}]", label(h)), p.lattice().quotient(&norm).unwrap()));
            augmented = true;
        }
    }
    if out.len() >= 3 {
        let sum = out[1].1.direct_sum(&out[out.len() - 1].1).unwrap();
        out.push((format!("{}+{}", out[1].0, out[out.len() - 1].0), sum));
    }
    out
}

pub fn label(h: &Subgroup) -> String {
    format!("H{}{:?}", h.order(), &h.elements()[..h.order().min(3)])
}
