//! Monodromy tuples and the Katz calculus on them.
//!
//! A tuple `(T_1, …, T_{r+1})` of invertible matrices with
//! `T_1 ⋯ T_{r+1} = 1` encodes the monodromy of a local system on the
//! punctured projective line with singularities `s_1, …, s_r, ∞`. The
//! operations of this module — (middle) convolution, middle tensor and middle
//! Hadamard products, exterior and symmetric powers — stay inside this
//! category and are the workhorses behind every rigid-tuple construction in
//! the crate.

mod convolution;
mod equiv;
mod forms;

pub use convolution::{
    convolution, middle_convolution, middle_hadamard, middle_tensor, middle_tensor_rank1,
    ConvolutionData,
};
pub use equiv::{
    is_irreducible, scott_check, sp4_rigidity_check, sp4_rigidity_data, tuples_equivalent,
    Equivalence, ScottReport, Sp4Rigidity,
};
pub use forms::{
    ext2_primitive, ext_power, invariant_bilinear_forms, sym_power, FormKind,
};

use crate::exactalg::{jordan_form, AlgError, CycloNum, Field, JordanBlocks, Mat, Rat, RootOfUnity};
use std::fmt;
use thiserror::Error;

/// Errors of the tuple calculus.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TupleError {
    /// An input violates a precondition (singular entry, product ≠ 1, …).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    /// Two point orderings admit no common linear extension.
    #[error("point orders cannot be merged: {0}")]
    OrderConflict(String),
    /// A symplectic operation was requested on a tuple without an invariant
    /// nondegenerate skew form.
    #[error("no invariant nondegenerate skew-symmetric form")]
    NoSkewForm,
    /// A rank-4 Jordan type outside the Sp₄ class table.
    #[error("Jordan class outside the rank-4 class table: {0}")]
    UnknownClass(String),
}

/// A singular point of a tuple: a finite rational position or ∞.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointLoc {
    Finite(Rat),
    Infinity,
}

impl PointLoc {
    pub fn finite(x: i64) -> Self {
        PointLoc::Finite(crate::exactalg::rat(x))
    }
}

impl fmt::Display for PointLoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointLoc::Finite(x) => write!(f, "{x}"),
            PointLoc::Infinity => write!(f, "oo"),
        }
    }
}

/// A monodromy tuple: matrices `(T_1, …, T_{r+1})` over a common field,
/// attached to pairwise distinct points with ∞ last, multiplying to the
/// identity in the listed order.
#[derive(Debug, Clone, PartialEq)]
pub struct MonodromyTuple<F: Field = CycloNum> {
    points: Vec<PointLoc>,
    matrices: Vec<Mat<F>>,
}

impl<F: Field> MonodromyTuple<F> {
    pub fn new(points: Vec<PointLoc>, matrices: Vec<Mat<F>>) -> Result<Self, TupleError> {
        if points.is_empty() || points.len() != matrices.len() {
            return Err(TupleError::DegenerateInput(
                "need equally many points and matrices".into(),
            ));
        }
        if *points.last().unwrap() != PointLoc::Infinity {
            return Err(TupleError::DegenerateInput("last point must be oo".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(TupleError::DegenerateInput(format!("repeated point {p}")));
            }
        }
        let n = matrices[0].nrows();
        let mut prod = Mat::identity(n);
        for m in &matrices {
            if !m.is_square() || m.nrows() != n {
                return Err(TupleError::DegenerateInput(
                    "entries must be square of a common size".into(),
                ));
            }
            prod = prod.mul(m);
        }
        if !prod.is_identity() {
            return Err(TupleError::DegenerateInput(
                "entries do not multiply to the identity".into(),
            ));
        }
        // invertibility is implied by the product relation
        Ok(MonodromyTuple { points, matrices })
    }

    /// Builds a tuple from its finite-point entries, completing at ∞ with the
    /// inverse of their product.
    pub fn from_finite_parts(
        finite_points: Vec<PointLoc>,
        finite_mats: Vec<Mat<F>>,
    ) -> Result<Self, TupleError> {
        if finite_points.contains(&PointLoc::Infinity) {
            return Err(TupleError::DegenerateInput(
                "finite part contains oo".into(),
            ));
        }
        if finite_mats.is_empty() {
            return Err(TupleError::DegenerateInput("empty finite part".into()));
        }
        let n = finite_mats[0].nrows();
        let mut prod = Mat::identity(n);
        for m in &finite_mats {
            prod = prod.mul(m);
        }
        let last = prod
            .inverse()
            .ok_or_else(|| TupleError::DegenerateInput("singular entry".into()))?;
        let mut points = finite_points;
        points.push(PointLoc::Infinity);
        let mut matrices = finite_mats;
        matrices.push(last);
        Self::new(points, matrices)
    }

    pub fn points(&self) -> &[PointLoc] {
        &self.points
    }

    pub fn matrices(&self) -> &[Mat<F>] {
        &self.matrices
    }

    pub fn entry(&self, i: usize) -> &Mat<F> {
        &self.matrices[i]
    }

    /// The common matrix size.
    pub fn rank(&self) -> usize {
        self.matrices[0].nrows()
    }

    /// Number of finite singular points r.
    pub fn num_finite(&self) -> usize {
        self.points.len() - 1
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point_index(&self, p: &PointLoc) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    /// Entry at a point, or `None` if the point is not singular for this tuple.
    pub fn entry_at(&self, p: &PointLoc) -> Option<&Mat<F>> {
        self.point_index(p).map(|i| &self.matrices[i])
    }

    /// Applies `f` to every entry (used for entrywise twists and powers);
    /// the caller must keep the product relation intact.
    pub(crate) fn map_entries(&self, f: impl Fn(&Mat<F>) -> Mat<F>) -> Result<Self, TupleError> {
        Self::new(self.points.clone(), self.matrices.iter().map(f).collect())
    }
}

impl MonodromyTuple<CycloNum> {
    /// Jordan data of every entry; requires all eigenvalues to be roots of
    /// unity.
    pub fn jordan_entries(&self) -> Result<Vec<JordanBlocks>, AlgError> {
        self.matrices.iter().map(jordan_form).collect()
    }
}

/// A rank-one tuple: scalars that are roots of unity, multiplying to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankOneTuple {
    points: Vec<PointLoc>,
    scalars: Vec<RootOfUnity>,
}

impl RankOneTuple {
    pub fn new(points: Vec<PointLoc>, scalars: Vec<RootOfUnity>) -> Result<Self, TupleError> {
        if points.len() != scalars.len() || points.is_empty() {
            return Err(TupleError::DegenerateInput(
                "need equally many points and scalars".into(),
            ));
        }
        let mut prod = RootOfUnity::one();
        for s in &scalars {
            prod = prod.mul(s);
        }
        if !prod.is_one() {
            return Err(TupleError::DegenerateInput(
                "scalars do not multiply to 1".into(),
            ));
        }
        if *points.last().unwrap() != PointLoc::Infinity {
            return Err(TupleError::DegenerateInput("last point must be oo".into()));
        }
        Ok(RankOneTuple { points, scalars })
    }

    pub fn points(&self) -> &[PointLoc] {
        &self.points
    }

    pub fn scalars(&self) -> &[RootOfUnity] {
        &self.scalars
    }

    /// The same tuple with 1×1 cyclotomic matrices.
    pub fn to_tuple(&self) -> MonodromyTuple<CycloNum> {
        let mats = self
            .scalars
            .iter()
            .map(|s| Mat::from_rows(vec![vec![s.to_cyclo()]]))
            .collect();
        MonodromyTuple::new(self.points.clone(), mats).expect("rank-one tuple is consistent")
    }
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;
    use crate::exactalg::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    pub fn cyc(k: i64) -> CycloNum {
        CycloNum::from_int(k)
    }

    /// Random invertible integer matrix with small entries.
    pub fn random_gln(rng: &mut ChaCha8Rng, n: usize) -> Mat<CycloNum> {
        loop {
            let m = Mat::from_fn(n, n, |_, _| cyc(rng.gen_range(-2..=2)));
            if !m.det().is_zero() {
                return m;
            }
        }
    }

    /// Random tuple with prescribed quasi-unipotent finite entries and a
    /// generically non-quasi-unipotent entry at ∞ closing the product.
    pub fn random_tuple(
        rng: &mut ChaCha8Rng,
        n: usize,
        finite: usize,
        orders: &[u32],
    ) -> MonodromyTuple<CycloNum> {
        let points = (0..finite).map(|i| PointLoc::finite(i as i64)).collect();
        let mats = (0..finite)
            .map(|_| {
                let s = random_gln(rng, n);
                let d = Mat::diag(
                    &(0..n)
                        .map(|_| {
                            let den = orders[rng.gen_range(0..orders.len())];
                            CycloNum::root_of_unity(rng.gen_range(0..den as i64), den)
                        })
                        .collect::<Vec<_>>(),
                );
                s.mul(&d).mul(&s.inverse().unwrap())
            })
            .collect();
        MonodromyTuple::from_finite_parts(points, mats).unwrap()
    }

    /// The rank-one seed (1, α, α⁻¹) at (0, 1, ∞).
    pub fn rank_one_seed(alpha: &CycloNum) -> MonodromyTuple<CycloNum> {
        let one = Mat::from_rows(vec![vec![cyc(1)]]);
        let a = Mat::from_rows(vec![vec![alpha.clone()]]);
        let ai = Mat::from_rows(vec![vec![alpha.inv_c().unwrap()]]);
        MonodromyTuple::new(
            vec![
                PointLoc::Finite(rat(0)),
                PointLoc::Finite(rat(1)),
                PointLoc::Infinity,
            ],
            vec![one, a, ai],
        )
        .unwrap()
    }
}
