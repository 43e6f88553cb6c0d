//! Equivalence of tuples, irreducibility, and the rigidity counts.

use super::{MonodromyTuple, TupleError};
use crate::exactalg::{CycloNum, Field, Mat};
use crate::numerology::{self, NumerologyError};
use std::fmt;

/// Outcome of an equivalence test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equivalence {
    /// Simultaneously conjugate (an invertible intertwiner was found).
    Equivalent,
    /// Provably not conjugate (invariants differ or no intertwiner exists).
    Distinct,
    /// Invariants agree and intertwiners exist, but none of the candidates
    /// tried was invertible.
    Inconclusive,
}

/// Decides simultaneous conjugacy. Cheap invariants (Jordan data per entry,
/// word traces up to length three) run first; if they all agree the
/// intertwiner equations S·T_i = T_i′·S are solved and the solution space is
/// searched for an invertible element.
pub fn tuples_equivalent(
    a: &MonodromyTuple<CycloNum>,
    b: &MonodromyTuple<CycloNum>,
) -> Equivalence {
    if a.points() != b.points() || a.rank() != b.rank() {
        return Equivalence::Distinct;
    }
    let n = a.rank();
    if let (Ok(ja), Ok(jb)) = (a.jordan_entries(), b.jordan_entries()) {
        if ja != jb {
            return Equivalence::Distinct;
        }
    }
    if !word_traces(a, 3)
        .into_iter()
        .eq(word_traces(b, 3))
    {
        return Equivalence::Distinct;
    }
    // vec(S T) = (I ⊗ Tᵗ) vec(S), vec(T' S) = (T' ⊗ I) vec(S)
    let id = Mat::identity(n);
    let mut stacked: Option<Mat<CycloNum>> = None;
    for i in 0..a.len() - 1 {
        let sys = id
            .kron(&a.entry(i).transpose())
            .sub(&b.entry(i).kron(&id));
        stacked = Some(match stacked {
            None => sys,
            Some(s) => s.vstack(&sys),
        });
    }
    let kernel = stacked.expect("tuple has entries").kernel_basis();
    if kernel.is_empty() {
        return Equivalence::Distinct;
    }
    for v in &kernel {
        let s = Mat::from_vec(n, n, v.clone());
        if !s.det().is_zero() {
            return Equivalence::Equivalent;
        }
    }
    // a few deterministic combinations of the first two basis vectors
    if kernel.len() >= 2 {
        for c in 1..4i64 {
            let v: Vec<CycloNum> = kernel[0]
                .iter()
                .zip(&kernel[1])
                .map(|(x, y)| x.add_c(&y.mul_c(&CycloNum::from_int(c))))
                .collect();
            if !Mat::from_vec(n, n, v).det().is_zero() {
                return Equivalence::Equivalent;
            }
        }
    }
    Equivalence::Inconclusive
}

/// Traces of all products of at most `len` entries, in a fixed word order.
fn word_traces(t: &MonodromyTuple<CycloNum>, len: usize) -> Vec<CycloNum> {
    let k = t.len();
    let mut out = Vec::new();
    let mut words: Vec<Mat<CycloNum>> = vec![Mat::identity(t.rank())];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &words {
            for i in 0..k {
                let p = w.mul(t.entry(i));
                out.push(p.trace());
                next.push(p);
            }
        }
        words = next;
    }
    out
}

/// Burnside test for absolute irreducibility: the entries generate the full
/// matrix algebra if and only if no proper nonzero subspace is invariant
/// under the tuple.
pub fn is_irreducible<F: Field>(t: &MonodromyTuple<F>) -> bool {
    let n = t.rank();
    // echelon basis of the span of all words in the entries
    let mut rows: Vec<Vec<F>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let add = |v: Vec<F>, rows: &mut Vec<Vec<F>>, pivots: &mut Vec<usize>| -> bool {
        let mut v = v;
        for (row, &p) in rows.iter().zip(pivots.iter()) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    *x = x.sub(&c.mul(y));
                }
            }
        }
        if let Some(p) = v.iter().position(|c| !c.is_zero()) {
            let inv = v[p].inv().expect("nonzero");
            for x in v.iter_mut() {
                *x = x.mul(&inv);
            }
            rows.push(v);
            pivots.push(p);
            true
        } else {
            false
        }
    };
    let mut queue: Vec<Mat<F>> = vec![Mat::identity(n)];
    add(queue[0].vec(), &mut rows, &mut pivots);
    while let Some(m) = queue.pop() {
        if rows.len() == n * n {
            return true;
        }
        for i in 0..t.len() {
            let p = m.mul(t.entry(i));
            if add(p.vec(), &mut rows, &mut pivots) {
                queue.push(p);
            }
        }
    }
    rows.len() == n * n
}

/// The two counts behind Scott's rigidity bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScottReport {
    pub rank: usize,
    /// Σ rk(T_i − 1) over all entries.
    pub sum_rank_defect: usize,
    /// The rigidity value 2n the defect sum is compared against.
    pub rigidity_bound: usize,
    /// Σ dim C_{GL_n}(T_i) over all entries.
    pub centralizer_sum: usize,
    /// (r − 1)n² + 2 — what an irreducible tuple with r finite points must
    /// stay below or at.
    pub dimension_bound: usize,
    /// (r − 1)²n² + 2 — a looser variant that also circulates; reported for
    /// comparison, not used in verdicts.
    pub variant_bound: usize,
}

impl ScottReport {
    /// Necessary condition for irreducibility with the given local data.
    pub fn passes_dimension_count(&self) -> bool {
        self.centralizer_sum <= self.dimension_bound
    }

    /// Linear rigidity is equivalent to equality in the dimension count.
    pub fn is_linearly_rigid(&self) -> bool {
        self.centralizer_sum == self.dimension_bound
    }

    /// The transvection-style bound Σ rk(T_i − 1) ≥ 2n.
    pub fn passes_rank_bound(&self) -> bool {
        self.sum_rank_defect >= self.rigidity_bound
    }
}

impl fmt::Display for ScottReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rank {}: sum rk(T_i - 1) = {} (bound {}), sum dim C(T_i) = {} (bound {}, variant {})",
            self.rank,
            self.sum_rank_defect,
            self.rigidity_bound,
            self.centralizer_sum,
            self.dimension_bound,
            self.variant_bound
        )
    }
}

/// Computes the Scott counts of a tuple.
pub fn scott_check<F: Field>(t: &MonodromyTuple<F>) -> ScottReport {
    let n = t.rank();
    let r = t.num_finite();
    let id = Mat::identity(n);
    let sum_rank_defect = t.matrices().iter().map(|m| m.sub(&id).rank()).sum();
    let centralizer_sum = t
        .matrices()
        .iter()
        .map(|m| {
            id.kron(&m.transpose())
                .sub(&m.kron(&id))
                .kernel_basis()
                .len()
        })
        .sum();
    ScottReport {
        rank: n,
        sum_rank_defect,
        rigidity_bound: 2 * n,
        centralizer_sum,
        dimension_bound: (r - 1) * n * n + 2,
        variant_bound: (r - 1) * (r - 1) * n * n + 2,
    }
}

/// The symplectic rigidity count of a rank-4 tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sp4Rigidity {
    /// codim C_{Sp₄}(T_i) per entry, in tuple order.
    pub codims: Vec<usize>,
    pub sum: usize,
    /// Σ codims = 2 · dim Sp₄ = 20.
    pub rigid: bool,
}

impl fmt::Display for Sp4Rigidity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Sp4 codims ({}), sum {}: {}",
            self.codims.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
            self.sum,
            if self.rigid { "rigid" } else { "not rigid" }
        )
    }
}

/// The symplectic rigidity count on Jordan data alone.
pub fn sp4_rigidity_data(j: &numerology::JordanData) -> Result<Sp4Rigidity, TupleError> {
    let codims = numerology::sp4_codim_profile(j).map_err(|e| match e {
        NumerologyError::UnknownClass(c) => TupleError::UnknownClass(c),
        NumerologyError::NotSymplecticClass(_) => TupleError::NoSkewForm,
        other => TupleError::DegenerateInput(other.to_string()),
    })?;
    let sum = codims.iter().sum::<usize>();
    Ok(Sp4Rigidity {
        rigid: sum == 20,
        codims,
        sum,
    })
}

/// Decides rigidity of a rank-4 symplectic quasi-unipotent tuple: the
/// codimensions of the symplectic centralizers of its entries must sum to
/// 2 · dim Sp₄ = 20. Entries whose Jordan type falls outside the rank-4
/// class table are reported as [`TupleError::UnknownClass`].
pub fn sp4_rigidity_check(t: &MonodromyTuple<CycloNum>) -> Result<Sp4Rigidity, TupleError> {
    let jd = numerology::JordanData::from_tuple(t)
        .map_err(|e| TupleError::DegenerateInput(e.to_string()))?;
    sp4_rigidity_data(&jd)
}

#[cfg(test)]
mod tests {
    use super::super::testutil::{cyc, random_gln, rank_one_seed, rng};
    use super::super::{middle_hadamard, MonodromyTuple, PointLoc};
    use super::*;
    use crate::exactalg::CycloNum;

    fn hyp() -> MonodromyTuple<CycloNum> {
        let alpha = CycloNum::zeta(5);
        let beta = CycloNum::zeta(3);
        let seed = rank_one_seed(&alpha);
        let s1 = middle_hadamard(&seed, &alpha.inv_c().unwrap()).unwrap();
        let s2 = middle_hadamard(&s1, &beta.inv_c().unwrap()).unwrap();
        middle_hadamard(&s2, &beta).unwrap()
    }

    #[test]
    fn conjugated_tuple_is_equivalent() {
        let t = hyp();
        let mut r = rng(11);
        let s = random_gln(&mut r, t.rank());
        let si = s.inverse().unwrap();
        let conj = MonodromyTuple::new(
            t.points().to_vec(),
            t.matrices().iter().map(|m| si.mul(m).mul(&s)).collect(),
        )
        .unwrap();
        assert_eq!(tuples_equivalent(&t, &conj), Equivalence::Equivalent);
    }

    #[test]
    fn different_jordan_data_is_distinct() {
        let a = rank_one_seed(&CycloNum::zeta(5));
        let b = rank_one_seed(&CycloNum::zeta(7));
        assert_eq!(tuples_equivalent(&a, &b), Equivalence::Distinct);
    }

    #[test]
    fn burnside_certificate() {
        assert!(is_irreducible(&hyp()));
        // a visibly reducible tuple: simultaneous block-diagonal matrices
        let d1 = Mat::diag(&[cyc(2), cyc(3)]);
        let d2 = Mat::diag(&[cyc(5), cyc(7)]);
        let t = MonodromyTuple::from_finite_parts(
            vec![PointLoc::finite(0), PointLoc::finite(1)],
            vec![d1, d2],
        )
        .unwrap();
        assert!(!is_irreducible(&t));
    }

    #[test]
    fn hypergeometric_scott_counts() {
        let t = hyp();
        let report = scott_check(&t);
        assert_eq!(report.sum_rank_defect, 8);
        assert_eq!(report.rigidity_bound, 8);
        assert!(report.passes_rank_bound());
        // J(4), a pseudo-reflection, and a regular semisimple element:
        // 4 + 10 + 4 = 18 = (2 - 1)·16 + 2, linearly rigid
        assert_eq!(report.centralizer_sum, 18);
        assert!(report.is_linearly_rigid());
        assert_eq!(report.variant_bound, 18);
    }

    #[test]
    fn hypergeometric_sp4_rigidity() {
        // J(4), (J(2),1,1), and a generic symplectic quadruple
        let r = sp4_rigidity_check(&hyp()).unwrap();
        assert_eq!(r.codims, vec![8, 4, 8]);
        assert_eq!(r.sum, 20);
        assert!(r.rigid);
    }

    #[test]
    fn generic_diagonal_triple_is_not_rigid() {
        let diag = |ks: [i64; 4]| {
            Mat::diag(
                &ks.iter()
                    .map(|&k| CycloNum::root_of_unity(k, 35))
                    .collect::<Vec<_>>(),
            )
        };
        let t = MonodromyTuple::new(
            vec![PointLoc::finite(0), PointLoc::finite(1), PointLoc::Infinity],
            vec![
                diag([5, -5, 7, -7]),
                diag([10, -10, 14, -14]),
                diag([-15, 15, -21, 21]),
            ],
        )
        .unwrap();
        let r = sp4_rigidity_check(&t).unwrap();
        assert_eq!(r.codims, vec![8, 8, 8]);
        assert_eq!(r.sum, 24);
        assert!(!r.rigid);
    }

    #[test]
    fn classes_outside_the_table_are_flagged() {
        // (x,-1,-1,x^-1) is symplectic but not on any row of the table
        let m1 = CycloNum::root_of_unity(1, 2);
        let e = Mat::diag(&[CycloNum::zeta(5), m1.clone(), m1, CycloNum::zeta(5).inv_c().unwrap()]);
        let t = MonodromyTuple::new(
            vec![PointLoc::finite(0), PointLoc::finite(1), PointLoc::Infinity],
            vec![e.clone(), e.inverse().unwrap(), Mat::identity(4)],
        )
        .unwrap();
        assert!(matches!(
            sp4_rigidity_check(&t),
            Err(TupleError::UnknownClass(_))
        ));
    }

    #[test]
    fn identity_tuple_fails_scott() {
        let t = MonodromyTuple::from_finite_parts(
            vec![PointLoc::finite(0), PointLoc::finite(1)],
            vec![Mat::<CycloNum>::identity(2), Mat::<CycloNum>::identity(2)],
        )
        .unwrap();
        let report = scott_check(&t);
        assert_eq!(report.sum_rank_defect, 0);
        assert!(!report.passes_rank_bound());
        assert!(!is_irreducible(&t));
    }
}
