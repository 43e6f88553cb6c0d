//! Convolution, middle convolution, middle tensor and middle Hadamard
//! products.
//!
//! The convolution of a tuple with λ lives on V^r and is given by the block
//! matrices
//!
//! ```text
//!          ⎛ 1                                            ⎞
//!          ⎜    ⋱                                         ⎟
//!   B_k =  ⎜ λ(T_1−1) … λ(T_{k−1}−1)  λT_k  (T_{k+1}−1) … ⎟   (k-th block row)
//!          ⎜                                 ⋱            ⎟
//!          ⎝                                            1 ⎠
//! ```
//!
//! with `B_{r+1} = (B_1 ⋯ B_r)^{-1}`. The middle convolution is the induced
//! action on the quotient of V^r by the span of the kernel blocks
//! `K_k = ker(T_k − 1)` (sitting in position k) together with the common fixed
//! space `L = ∩ ker(B_k − 1)`.

use super::{MonodromyTuple, PointLoc, RankOneTuple, TupleError};
use crate::exactalg::{CycloNum, Field, Mat};

/// The convolution of a tuple with λ before passing to the middle quotient:
/// the big tuple on V^r together with the distinguished subspaces.
#[derive(Debug, Clone)]
pub struct ConvolutionData<F: Field = CycloNum> {
    /// B_1, …, B_{r+1} acting on V^r.
    pub big: Vec<Mat<F>>,
    /// Basis vectors of each kernel block K_k ⊂ V^r, k = 1, …, r.
    pub kernel_blocks: Vec<Vec<Vec<F>>>,
    /// Basis of the fixed space L = ∩ ker(B_k − 1).
    pub fixed: Vec<Vec<F>>,
}

impl<F: Field> ConvolutionData<F> {
    /// dim(K + L) as a subspace of V^r.
    pub fn span_dim(&self) -> usize {
        let mut vs: Vec<Vec<F>> = Vec::new();
        for kb in &self.kernel_blocks {
            vs.extend(kb.iter().cloned());
        }
        vs.extend(self.fixed.iter().cloned());
        if vs.is_empty() {
            return 0;
        }
        Mat::from_rows(vs).rank()
    }

    /// Whether K + L = K ⊕ L, i.e. the dimensions add up.
    pub fn is_direct_sum(&self) -> bool {
        let k_dim: usize = self.kernel_blocks.iter().map(|b| b.len()).sum();
        self.span_dim() == k_dim + self.fixed.len()
    }
}

/// Convolution of `t` with λ: the tuple (B_1, …, B_{r+1}) on V^r plus the
/// invariant subspaces K_k and L.
pub fn convolution<F: Field>(
    t: &MonodromyTuple<F>,
    lambda: &F,
) -> Result<ConvolutionData<F>, TupleError> {
    if lambda.is_zero() {
        return Err(TupleError::DegenerateInput("lambda must be nonzero".into()));
    }
    let n = t.rank();
    let r = t.num_finite();
    if r == 0 {
        return Err(TupleError::DegenerateInput(
            "need at least one finite point".into(),
        ));
    }
    let id = Mat::identity(n);
    let mut big: Vec<Mat<F>> = Vec::with_capacity(r + 1);
    for k in 0..r {
        let mut b = Mat::identity(r * n);
        for j in 0..r {
            let block = if j < k {
                t.entry(j).sub(&id).scale(lambda)
            } else if j == k {
                t.entry(k).scale(lambda)
            } else {
                t.entry(j).sub(&id)
            };
            for bi in 0..n {
                for bj in 0..n {
                    *b.at_mut(k * n + bi, j * n + bj) = block.at(bi, bj).clone();
                }
            }
        }
        big.push(b);
    }
    let mut prod = Mat::identity(r * n);
    for b in &big {
        prod = prod.mul(b);
    }
    big.push(
        prod.inverse()
            .ok_or_else(|| TupleError::DegenerateInput("convolution not invertible".into()))?,
    );

    let kernel_blocks = (0..r)
        .map(|k| {
            t.entry(k)
                .sub(&id)
                .kernel_basis()
                .into_iter()
                .map(|v| {
                    let mut w = vec![F::zero(); r * n];
                    w[k * n..(k + 1) * n].clone_from_slice(&v);
                    w
                })
                .collect()
        })
        .collect();

    let mut stacked = big[0].sub(&Mat::identity(r * n));
    for b in &big[1..r] {
        stacked = stacked.vstack(&b.sub(&Mat::identity(r * n)));
    }
    let fixed = stacked.kernel_basis();

    Ok(ConvolutionData {
        big,
        kernel_blocks,
        fixed,
    })
}

/// A coordinate description of V^m / W for a spanned subspace W: the free
/// coordinates index the quotient basis and the reduced rows eliminate the
/// pivot coordinates.
struct Quotient<F: Field> {
    free: Vec<usize>,
    pivots: Vec<usize>,
    rows: Mat<F>,
}

impl<F: Field> Quotient<F> {
    fn new(span: Vec<Vec<F>>, dim: usize) -> Self {
        if span.is_empty() {
            return Quotient {
                free: (0..dim).collect(),
                pivots: Vec::new(),
                rows: Mat::zeros(0, dim),
            };
        }
        let (rows, pivots) = Mat::from_rows(span).rref();
        let rows = rows.submatrix(&(0..pivots.len()).collect::<Vec<_>>(), &(0..dim).collect::<Vec<_>>());
        let free = (0..dim).filter(|j| !pivots.contains(j)).collect();
        Quotient { free, pivots, rows }
    }

    fn dim(&self) -> usize {
        self.free.len()
    }

    fn project(&self, v: &[F]) -> Vec<F> {
        self.free
            .iter()
            .map(|&q| {
                let mut c = v[q].clone();
                for (row, &p) in self.pivots.iter().enumerate() {
                    c = c.sub(&v[p].mul(self.rows.at(row, q)));
                }
                c
            })
            .collect()
    }

    fn induced(&self, b: &Mat<F>) -> Mat<F> {
        let d = self.dim();
        let mut m = Mat::zeros(d, d);
        for (j, &q) in self.free.iter().enumerate() {
            let col = self.project(&b.col(q));
            for (i, c) in col.into_iter().enumerate() {
                *m.at_mut(i, j) = c;
            }
        }
        m
    }
}

/// Middle convolution MC_λ: the action induced on V^r / (K + L).
pub fn middle_convolution<F: Field>(
    t: &MonodromyTuple<F>,
    lambda: &F,
) -> Result<MonodromyTuple<F>, TupleError> {
    if t.rank() == 1 {
        let nontrivial = (0..t.num_finite())
            .filter(|&i| !t.entry(i).is_identity())
            .count();
        if nontrivial < 2 {
            return Err(TupleError::DegenerateInput(
                "rank-one input needs two nontrivial finite entries".into(),
            ));
        }
    }
    let conv = convolution(t, lambda)?;
    let n = t.rank();
    let r = t.num_finite();
    let mut span: Vec<Vec<F>> = Vec::new();
    for kb in &conv.kernel_blocks {
        span.extend(kb.iter().cloned());
    }
    span.extend(conv.fixed.iter().cloned());
    let q = Quotient::new(span, r * n);
    if q.dim() == 0 {
        return Err(TupleError::DegenerateInput(
            "middle convolution collapses to rank zero".into(),
        ));
    }
    let mut mats: Vec<Mat<F>> = (0..r).map(|k| q.induced(&conv.big[k])).collect();
    let mut prod = Mat::identity(q.dim());
    for m in &mats {
        prod = prod.mul(m);
    }
    mats.push(prod.inverse().ok_or_else(|| {
        TupleError::DegenerateInput("quotient action not invertible".into())
    })?);
    MonodromyTuple::new(t.points().to_vec(), mats)
}

/// Merges two point orders into a common linear extension, preferring the
/// first tuple's order on incomparable pairs.
fn merge_points(a: &[PointLoc], b: &[PointLoc]) -> Result<Vec<PointLoc>, TupleError> {
    let mut out: Vec<PointLoc> = Vec::new();
    let mut ia = 0;
    let mut ib = 0;
    while ia < a.len() || ib < b.len() {
        if ia < a.len() && ib < b.len() && a[ia] == b[ib] {
            out.push(a[ia].clone());
            ia += 1;
            ib += 1;
            continue;
        }
        // a[ia] can be emitted if it does not occur later in b, and vice versa
        let a_ok = ia < a.len() && !b[ib..].contains(&a[ia]);
        let b_ok = ib < b.len() && !a[ia..].contains(&b[ib]);
        if a_ok {
            // a point already emitted must not reappear
            if out.contains(&a[ia]) {
                return Err(TupleError::OrderConflict(format!(
                    "point {} ordered inconsistently",
                    a[ia]
                )));
            }
            out.push(a[ia].clone());
            ia += 1;
        } else if b_ok {
            if out.contains(&b[ib]) {
                return Err(TupleError::OrderConflict(format!(
                    "point {} ordered inconsistently",
                    b[ib]
                )));
            }
            out.push(b[ib].clone());
            ib += 1;
        } else {
            return Err(TupleError::OrderConflict(format!(
                "{} and {} appear in opposite orders",
                a[ia], b[ib]
            )));
        }
    }
    Ok(out)
}

/// Middle tensor product: Kronecker products entrywise over the merged point
/// set, with identity entries at points missing from one factor.
pub fn middle_tensor<F: Field>(
    t1: &MonodromyTuple<F>,
    t2: &MonodromyTuple<F>,
) -> Result<MonodromyTuple<F>, TupleError> {
    let points = merge_points(t1.points(), t2.points())?;
    let id1 = Mat::identity(t1.rank());
    let id2 = Mat::identity(t2.rank());
    let mats = points
        .iter()
        .map(|p| {
            let m1 = t1.entry_at(p).unwrap_or(&id1);
            let m2 = t2.entry_at(p).unwrap_or(&id2);
            m1.kron(m2)
        })
        .collect();
    MonodromyTuple::new(points, mats)
}

/// Middle tensor with a rank-one tuple of root-of-unity scalars.
pub fn middle_tensor_rank1(
    t: &MonodromyTuple<CycloNum>,
    l: &RankOneTuple,
) -> Result<MonodromyTuple<CycloNum>, TupleError> {
    middle_tensor(t, &l.to_tuple())
}

/// Middle Hadamard product MH_λ(T) = MC_λ(MT(T, Λ)) with Λ = (λ⁻¹, λ) at
/// (0, ∞). A missing point 0 is adjoined in front with an identity entry.
pub fn middle_hadamard<F: Field>(
    t: &MonodromyTuple<F>,
    lambda: &F,
) -> Result<MonodromyTuple<F>, TupleError> {
    let li = lambda
        .inv()
        .ok_or_else(|| TupleError::DegenerateInput("lambda must be nonzero".into()))?;
    let zero = PointLoc::finite(0);
    let base = if t.point_index(&zero).is_some() {
        t.clone()
    } else {
        let mut points = vec![zero.clone()];
        points.extend_from_slice(t.points());
        let mut mats = vec![Mat::identity(t.rank())];
        mats.extend_from_slice(t.matrices());
        MonodromyTuple::new(points, mats)?
    };
    let lam = MonodromyTuple::new(
        vec![zero, PointLoc::Infinity],
        vec![
            Mat::from_rows(vec![vec![li]]),
            Mat::from_rows(vec![vec![lambda.clone()]]),
        ],
    )?;
    let mt = middle_tensor(&base, &lam)?;
    middle_convolution(&mt, lambda)
}

#[cfg(test)]
mod tests {
    use super::super::testutil::{cyc, rank_one_seed};
    use super::super::tuples_equivalent;
    use super::super::Equivalence;
    use super::*;
    use crate::exactalg::CycloNum;

    fn pt(x: i64) -> PointLoc {
        PointLoc::finite(x)
    }

    /// The hypergeometric chain MH_β ∘ MH_{β⁻¹} ∘ MH_{α⁻¹} applied to (1, α, α⁻¹).
    ///
    /// The first twist must be α⁻¹ so that the entry α at 1 hits the ρ = λ⁻¹
    /// case and grows a unipotent J(2); with λ = α it would scale to α² and
    /// collide with the entry at ∞ instead.
    fn hyp_chain(alpha: &CycloNum, beta: &CycloNum) -> MonodromyTuple<CycloNum> {
        let seed = rank_one_seed(alpha);
        let s1 = middle_hadamard(&seed, &alpha.inv_c().unwrap()).unwrap();
        let s2 = middle_hadamard(&s1, &beta.inv_c().unwrap()).unwrap();
        middle_hadamard(&s2, beta).unwrap()
    }

    /// The matrices printed for the hypergeometric example, completed at ∞.
    fn hyp_printed(alpha: &CycloNum, beta: &CycloNum) -> MonodromyTuple<CycloNum> {
        let a = alpha.add_c(&alpha.inv_c().unwrap()).add_c(&cyc(-2));
        let b = beta.add_c(&beta.inv_c().unwrap()).add_c(&cyc(-2));
        let z = || cyc(0);
        let t0 = Mat::from_rows(vec![
            vec![cyc(1), cyc(1), z(), z()],
            vec![z(), cyc(1), cyc(-1), z()],
            vec![z(), z(), cyc(1), cyc(1)],
            vec![z(), z(), z(), cyc(1)],
        ]);
        let t1 = Mat::from_rows(vec![
            vec![cyc(1), z(), z(), z()],
            vec![z(), cyc(1), z(), z()],
            vec![z(), z(), cyc(1), z()],
            vec![a.mul_c(&b), a.mul_c(&b), a.add_c(&b), cyc(1)],
        ]);
        MonodromyTuple::from_finite_parts(vec![pt(0), pt(1)], vec![t0, t1]).unwrap()
    }

    #[test]
    fn convolution_of_rank_one() {
        // T = (1, α, α⁻¹) with λ = α: V^r is 2-dimensional, K comes from the
        // identity entry at 0, and L vanishes as long as α² ≠ 1.
        let alpha = CycloNum::zeta(5);
        let t = rank_one_seed(&alpha);
        let conv = convolution(&t, &alpha).unwrap();
        assert_eq!(conv.big[0].nrows(), 2);
        assert_eq!(conv.kernel_blocks[0].len(), 1);
        assert_eq!(conv.kernel_blocks[1].len(), 0);
        assert!(conv.fixed.is_empty());
        assert!(conv.is_direct_sum());
    }

    #[test]
    fn convolution_subspaces_invariant() {
        let alpha = CycloNum::zeta(8);
        let beta = CycloNum::zeta(3);
        let t = middle_hadamard(&rank_one_seed(&alpha), &alpha).unwrap();
        let conv = convolution(&t, &beta).unwrap();
        let mut span: Vec<Vec<CycloNum>> = Vec::new();
        for kb in &conv.kernel_blocks {
            span.extend(kb.iter().cloned());
        }
        span.extend(conv.fixed.iter().cloned());
        let d = Mat::from_rows(span.clone()).rank();
        for b in &conv.big {
            let mut all = span.clone();
            for v in &span {
                all.push(b.mul_vec(v));
            }
            assert_eq!(Mat::from_rows(all).rank(), d, "K + L not invariant");
        }
    }

    #[test]
    fn mc_with_one_is_identity() {
        let alpha = CycloNum::zeta(5);
        let t = middle_hadamard(&rank_one_seed(&alpha), &alpha).unwrap();
        let back = middle_convolution(&t, &cyc(1)).unwrap();
        assert_eq!(back.rank(), t.rank());
        assert_eq!(
            tuples_equivalent(&t, &back),
            Equivalence::Equivalent,
            "MC_1 must reproduce the tuple up to conjugation"
        );
    }

    #[test]
    fn mc_composition_is_multiplicative() {
        let alpha = CycloNum::zeta(5);
        let t = middle_hadamard(&rank_one_seed(&alpha), &alpha).unwrap();
        let l1 = CycloNum::zeta(3);
        let l2 = CycloNum::zeta(4);
        let step = middle_convolution(&middle_convolution(&t, &l1).unwrap(), &l2).unwrap();
        let direct = middle_convolution(&t, &l1.mul_c(&l2)).unwrap();
        assert_eq!(tuples_equivalent(&step, &direct), Equivalence::Equivalent);
    }

    #[test]
    fn hypergeometric_chain_matches_printed_matrices() {
        let alpha = CycloNum::zeta(5);
        let beta = CycloNum::zeta(3);
        let built = hyp_chain(&alpha, &beta);
        assert_eq!(built.rank(), 4);
        let printed = hyp_printed(&alpha, &beta);
        assert_eq!(tuples_equivalent(&built, &printed), Equivalence::Equivalent);
    }

    #[test]
    fn hadamard_ranks_climb_one_by_one() {
        // ranks 1 → 2 → 3 → 4 along the hypergeometric chain
        let alpha = CycloNum::zeta(7);
        let beta = CycloNum::zeta(4);
        let seed = rank_one_seed(&alpha);
        let s1 = middle_hadamard(&seed, &alpha.inv_c().unwrap()).unwrap();
        let s2 = middle_hadamard(&s1, &beta.inv_c().unwrap()).unwrap();
        let s3 = middle_hadamard(&s2, &beta).unwrap();
        assert_eq!((s1.rank(), s2.rank(), s3.rank()), (2, 3, 4));
    }

    #[test]
    fn middle_tensor_shapes_and_inverse() {
        let alpha = CycloNum::zeta(5);
        let t = middle_hadamard(&rank_one_seed(&alpha), &alpha).unwrap();
        // tensoring with a trivial rank-one tuple changes nothing
        let triv = RankOneTuple::new(
            vec![pt(0), PointLoc::Infinity],
            vec![
                crate::exactalg::RootOfUnity::one(),
                crate::exactalg::RootOfUnity::one(),
            ],
        )
        .unwrap();
        let same = middle_tensor_rank1(&t, &triv).unwrap();
        assert_eq!(tuples_equivalent(&t, &same), Equivalence::Equivalent);
        // Λ ⊗ Λ̌ is trivial
        let l = RankOneTuple::new(
            vec![pt(0), PointLoc::Infinity],
            vec![
                crate::exactalg::RootOfUnity::new(1, 5),
                crate::exactalg::RootOfUnity::new(-1, 5),
            ],
        )
        .unwrap();
        let lcheck = RankOneTuple::new(
            vec![pt(0), PointLoc::Infinity],
            vec![
                crate::exactalg::RootOfUnity::new(-1, 5),
                crate::exactalg::RootOfUnity::new(1, 5),
            ],
        )
        .unwrap();
        let prod = middle_tensor(&l.to_tuple(), &lcheck.to_tuple()).unwrap();
        assert!(prod.matrices().iter().all(Mat::is_identity));
        // rank multiplies
        let tt = middle_tensor(&t, &t).unwrap();
        assert_eq!(tt.rank(), t.rank() * t.rank());
    }

    #[test]
    fn merge_rejects_opposite_orders() {
        let a = vec![pt(0), pt(1), PointLoc::Infinity];
        let b = vec![pt(1), pt(0), PointLoc::Infinity];
        assert!(matches!(
            merge_points(&a, &b),
            Err(TupleError::OrderConflict(_))
        ));
        // first tuple's order wins on incomparable pairs
        let c = vec![pt(2), PointLoc::Infinity];
        let merged = merge_points(&a, &c).unwrap();
        assert_eq!(merged, vec![pt(0), pt(1), pt(2), PointLoc::Infinity]);
    }

    #[test]
    fn mc_dimension_formula() {
        // dim MC_λ = Σ rk(T_k − 1) − (n − rk(λ T_1 ⋯ T_r − 1)) for λ ≠ 1
        let alpha = CycloNum::zeta(8);
        let t = middle_hadamard(&rank_one_seed(&alpha), &alpha).unwrap();
        for lam in [CycloNum::zeta(3), CycloNum::zeta(4), cyc(-1)] {
            let n = t.rank();
            let id = Mat::identity(n);
            let sum: usize = (0..t.num_finite())
                .map(|k| t.entry(k).sub(&id).rank())
                .sum();
            let mut prod = Mat::identity(n);
            for k in 0..t.num_finite() {
                prod = prod.mul(t.entry(k));
            }
            let defect = n - prod.scale(&lam).sub(&id).rank();
            let mc = middle_convolution(&t, &lam).unwrap();
            assert_eq!(mc.rank(), sum - defect, "lambda = {lam}");
        }
    }
}
