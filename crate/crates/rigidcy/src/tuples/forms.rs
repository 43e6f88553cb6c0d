//! Exterior and symmetric powers of tuples, invariant bilinear forms, and the
//! primitive part of Λ² of a symplectic tuple.

use super::{MonodromyTuple, TupleError};
use crate::exactalg::{Field, Mat};
use itertools::Itertools;

/// Symmetry type of an invariant bilinear form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    Symmetric,
    Skew,
}

/// k-th exterior power of a single matrix, in the lexicographic basis
/// e_{i_1} ∧ … ∧ e_{i_k}, i_1 < … < i_k.
fn ext_power_mat<F: Field>(m: &Mat<F>, k: usize) -> Mat<F> {
    let n = m.nrows();
    let idx: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    Mat::from_fn(idx.len(), idx.len(), |i, j| {
        m.submatrix(&idx[i], &idx[j]).det()
    })
}

/// k-th symmetric power of a single matrix, in the basis of monomials
/// e_{i_1} ⋯ e_{i_k}, i_1 ≤ … ≤ i_k.
fn sym_power_mat<F: Field>(m: &Mat<F>, k: usize) -> Mat<F> {
    let n = m.nrows();
    let idx: Vec<Vec<usize>> = (0..n).combinations_with_replacement(k).collect();
    let pos = |key: &[usize]| idx.iter().position(|v| v == key).unwrap();
    let mut out: Mat<F> = Mat::zeros(idx.len(), idx.len());
    for (j, nu) in idx.iter().enumerate() {
        // expand the image of the basis monomial: ∏_t (M e_{nu_t})
        let mut terms: Vec<(Vec<usize>, F)> = vec![(Vec::new(), F::one())];
        for &col in nu {
            let mut next = Vec::new();
            for (mono, c) in &terms {
                for i in 0..n {
                    let a = m.at(i, col);
                    if a.is_zero() {
                        continue;
                    }
                    let mut mm = mono.clone();
                    mm.push(i);
                    next.push((mm, c.mul(a)));
                }
            }
            terms = next;
        }
        for (mut mono, c) in terms {
            mono.sort_unstable();
            let i = pos(&mono);
            let e = out.at(i, j).add(&c);
            *out.at_mut(i, j) = e;
        }
    }
    out
}

/// Entrywise k-th exterior power, k ∈ {2, 3}.
pub fn ext_power<F: Field>(t: &MonodromyTuple<F>, k: usize) -> MonodromyTuple<F> {
    assert!(k == 2 || k == 3, "only Λ² and Λ³ are supported");
    t.map_entries(|m| ext_power_mat(m, k))
        .expect("exterior power preserves the product relation")
}

/// Entrywise k-th symmetric power, k ∈ {2, 3}.
pub fn sym_power<F: Field>(t: &MonodromyTuple<F>, k: usize) -> MonodromyTuple<F> {
    assert!(k == 2 || k == 3, "only Sym² and Sym³ are supported");
    t.map_entries(|m| sym_power_mat(m, k))
        .expect("symmetric power preserves the product relation")
}

/// Basis of the space of invariant bilinear forms {G : T_iᵗ G T_i = G for all
/// i}, split into symmetric and skew-symmetric parts.
pub fn invariant_bilinear_forms<F: Field>(t: &MonodromyTuple<F>) -> Vec<(Mat<F>, FormKind)> {
    let n = t.rank();
    // row-major vec(TᵗGT) = (Tᵗ ⊗ Tᵗ) vec(G)
    let mut stacked: Option<Mat<F>> = None;
    for m in t.matrices().iter().take(t.len() - 1) {
        let mt = m.transpose();
        let sys = mt.kron(&mt).sub(&Mat::identity(n * n));
        stacked = Some(match stacked {
            None => sys,
            Some(s) => s.vstack(&sys),
        });
    }
    let kernel = match stacked {
        None => return Vec::new(),
        Some(s) => s.kernel_basis(),
    };
    // the solution space is transpose-stable; split it
    let mut parts: Vec<(Mat<F>, FormKind)> = Vec::new();
    let mut rows_sym: Vec<Vec<F>> = Vec::new();
    let mut rows_skew: Vec<Vec<F>> = Vec::new();
    for v in kernel {
        let g = Mat::from_vec(n, n, v);
        let gt = g.transpose();
        for (half, kind, rows) in [
            (g.add(&gt), FormKind::Symmetric, &mut rows_sym),
            (g.sub(&gt), FormKind::Skew, &mut rows_skew),
        ] {
            if half.is_zero() {
                continue;
            }
            let mut cand = rows.clone();
            cand.push(half.vec());
            if Mat::from_rows(cand.clone()).rank() > rows.len() {
                rows.push(half.vec());
                parts.push((half, kind));
            }
        }
    }
    parts
}

/// The primitive part of Λ² of a symplectic tuple: Λ²(T) restricted to the
/// invariant complement of the line spanned by the symplectic form.
///
/// For a rank-4 symplectic tuple this is the 5-dimensional orthogonal tuple
/// realising Λ²Sp₄ = SO₅.
pub fn ext2_primitive<F: Field>(t: &MonodromyTuple<F>) -> Result<MonodromyTuple<F>, TupleError> {
    let n = t.rank();
    let skew = invariant_bilinear_forms(t)
        .into_iter()
        .find(|(g, kind)| *kind == FormKind::Skew && !g.det().is_zero())
        .map(|(g, _)| g)
        .ok_or(TupleError::NoSkewForm)?;
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let d = pairs.len();
    // the contraction Λ²V → F, e_i ∧ e_j ↦ G_{ij}, is equivariant; its kernel
    // is the invariant complement of the line spanned by the dual bivector
    let phi = Mat::from_fn(1, d, |_, j| skew.at(pairs[j].0, pairs[j].1).clone());
    let basis = phi.kernel_basis();
    debug_assert_eq!(basis.len(), d - 1);
    let p = {
        let mut m = Mat::zeros(d, d - 1);
        for (j, v) in basis.iter().enumerate() {
            for (i, c) in v.iter().enumerate() {
                *m.at_mut(i, j) = c.clone();
            }
        }
        m
    };
    let mats = t
        .matrices()
        .iter()
        .map(|m| {
            let big = ext_power_mat(m, 2);
            p.solve(&big.mul(&p)).ok_or_else(|| {
                TupleError::DegenerateInput("complement is not invariant".into())
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    MonodromyTuple::new(t.points().to_vec(), mats)
}
