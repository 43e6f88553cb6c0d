//! Symbolic Jordan-form bookkeeping for the Katz algorithm.
//!
//! Middle convolution and the middle Hadamard product act on explicit
//! matrices in [`crate::tuples`]; this module tracks what they do to the
//! local Jordan data alone. That is enough to predict ranks and Jordan types
//! of every construction step without building a single matrix, and it is
//! what drives the rank-4 classification: centralizer dimensions, the Λ² map
//! into SO₅, and the case enumeration with its automated rigidity verdicts.

mod cases;
mod classes;

pub use cases::{
    enumerate_sp4_cases, table1_json, table1_text, table2_json, table2_text, Agreement, Sp4Case,
    Verdict,
};
pub use classes::{centralizer_dim_gl, centralizer_dim_sp4, ext2_jordan, table1_class_name};

use crate::exactalg::{AlgError, CycloNum, RootOfUnity};
use crate::tuples::MonodromyTuple;
use classes::{normalize, rank, shifted_rank, twist, Blocks};
use std::fmt;
use thiserror::Error;

/// Errors of the Jordan-data calculus.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum NumerologyError {
    /// The transformation rules need more blocks than the rank formula
    /// allows; the input data was not consistent.
    #[error("rank formula forces a negative filler count at entry {entry}")]
    NegativeFiller { entry: usize },
    /// The entry is not the Jordan type of any element of Sp₄(ℂ).
    #[error("not a symplectic rank-4 Jordan class: {0}")]
    NotSymplecticClass(String),
    /// An eigenvalue is not a root of unity.
    #[error("eigenvalue is not a root of unity")]
    NonQuasiUnipotent,
    /// Symplectic, but outside the class table.
    #[error("Jordan class outside the rank-4 class table: {0}")]
    UnknownClass(String),
    /// Entries of different ranks, an empty tuple, and the like.
    #[error("inconsistent Jordan data: {0}")]
    Inconsistent(String),
}

/// The Jordan type of a single tuple entry: a multiset of blocks
/// `(eigenvalue, size, multiplicity)`, kept normalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanEntry {
    blocks: Blocks<RootOfUnity>,
}

impl JordanEntry {
    pub fn new(blocks: impl IntoIterator<Item = (RootOfUnity, usize, usize)>) -> Self {
        JordanEntry {
            blocks: normalize(blocks.into_iter().collect()),
        }
    }

    pub fn identity(n: usize) -> Self {
        JordanEntry::new([(RootOfUnity::one(), 1, n)])
    }

    /// From the matrix-level block list of [`crate::exactalg::jordan_form`].
    pub fn from_blocks(blocks: &[(CycloNum, usize)]) -> Result<Self, NumerologyError> {
        let mut out = Vec::new();
        for (e, j) in blocks {
            let r = e
                .as_root_of_unity()
                .ok_or(NumerologyError::NonQuasiUnipotent)?;
            out.push((r, *j, 1));
        }
        Ok(JordanEntry::new(out))
    }

    pub fn blocks(&self) -> &[(RootOfUnity, usize, usize)] {
        &self.blocks
    }

    pub fn rank(&self) -> usize {
        rank(&self.blocks)
    }

    /// rk(T − σ).
    pub fn shifted_rank(&self, sigma: &RootOfUnity) -> usize {
        shifted_rank(&self.blocks, sigma)
    }

    /// The Jordan type of λT.
    pub fn twist(&self, lambda: &RootOfUnity) -> Self {
        JordanEntry {
            blocks: twist(&self.blocks, lambda),
        }
    }
}

/// Renders as `(J(2),z5,z5^4)`: big blocks first, eigenvalue 1 written as a
/// bare J-block, multiplicity expanded.
impl fmt::Display for JordanEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<(RootOfUnity, usize)> = self
            .blocks
            .iter()
            .flat_map(|(e, j, v)| std::iter::repeat((*e, *j)).take(*v))
            .collect();
        items.sort_by_key(|&(e, j)| (std::cmp::Reverse(j), e));
        let token = |&(e, j): &(RootOfUnity, usize)| -> String {
            if j == 1 {
                format!("{e}")
            } else if e.is_one() {
                format!("J({j})")
            } else {
                format!("{e}J({j})")
            }
        };
        if items.len() == 1 {
            write!(f, "{}", token(&items[0]))
        } else {
            write!(
                f,
                "({})",
                items.iter().map(token).collect::<Vec<_>>().join(",")
            )
        }
    }
}

/// Jordan data of a whole tuple: one entry per singular point, in tuple
/// order, the entry at ∞ last. Operations that treat the 0-entry specially
/// (the middle Hadamard rules) take the first entry as the one at 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanData {
    entries: Vec<JordanEntry>,
}

impl JordanData {
    pub fn new(entries: Vec<JordanEntry>) -> Result<Self, NumerologyError> {
        if entries.len() < 2 {
            return Err(NumerologyError::Inconsistent(
                "need at least two entries".into(),
            ));
        }
        let n = entries[0].rank();
        if entries.iter().any(|e| e.rank() != n) {
            return Err(NumerologyError::Inconsistent(
                "entries of different ranks".into(),
            ));
        }
        Ok(JordanData { entries })
    }

    /// Jordan data of an explicit tuple.
    pub fn from_tuple(t: &MonodromyTuple) -> Result<Self, AlgError> {
        let mut entries = Vec::new();
        for blocks in t.jordan_entries()? {
            entries.push(JordanEntry::from_blocks(&blocks).map_err(|_| AlgError::NonQuasiUnipotent)?);
        }
        Ok(JordanData { entries })
    }

    pub fn entries(&self) -> &[JordanEntry] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries[0].rank()
    }

    /// A copy with an identity entry prepended — the tuple viewed with an
    /// extra (regular) singular point at 0, as the Hadamard rules expect
    /// when the tuple has no entry at 0 yet.
    pub fn with_identity_front(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.insert(0, JordanEntry::identity(self.rank()));
        JordanData { entries }
    }
}

impl fmt::Display for JordanData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", strs.join("; "))
    }
}

/// How one entry transforms under MC_λ.
enum Rule {
    /// All finite entries, and — after the Hadamard twist — also the 0-entry.
    Finite,
    /// The entry at ∞.
    Infinity,
}

fn mc_entry(
    entry: &JordanEntry,
    lambda: &RootOfUnity,
    rule: Rule,
    new_rank: usize,
    index: usize,
) -> Result<(JordanEntry, usize), NumerologyError> {
    let lam_inv = lambda.inv();
    let one = RootOfUnity::one();
    let mut out: Blocks<RootOfUnity> = Vec::new();
    for (rho, j, v) in entry.blocks() {
        let (e, j) = match rule {
            // ρ = 1 loses a step and lands at λ; ρ = λ⁻¹ gains one and lands
            // at 1; everything else is scaled by λ.
            Rule::Finite => {
                if rho.is_one() {
                    (*lambda, j - 1)
                } else if *rho == lam_inv {
                    (one, j + 1)
                } else {
                    (lambda.mul(rho), *j)
                }
            }
            // mirror image at ∞, with λ⁻¹ in place of λ
            Rule::Infinity => {
                if *rho == *lambda {
                    (one, j - 1)
                } else if rho.is_one() {
                    (lam_inv, j + 1)
                } else {
                    (lam_inv.mul(rho), *j)
                }
            }
        };
        out.push((e, j, *v));
    }
    let out = normalize(out);
    let used = rank(&out);
    if used > new_rank {
        return Err(NumerologyError::NegativeFiller { entry: index });
    }
    let filler = match rule {
        Rule::Finite => one,
        Rule::Infinity => lam_inv,
    };
    let k = new_rank - used;
    let mut out = out;
    out.push((filler, 1, k));
    Ok((JordanEntry::new(out), k))
}

/// Predict the Jordan data of MC_λ(T) from the Jordan data of T, together
/// with the number of rank-one filler blocks added to each entry.
///
/// For λ ≠ 1 and an irreducible tuple the new rank is
/// `Σ rk(T_i − 1) + rk(λ⁻¹T_∞ − 1) − n` (sum over the finite entries), every
/// finite entry keeps its blocks away from 1 and λ⁻¹ scaled by λ, and the
/// filler blocks are J(1) at 1 (at λ⁻¹ for the ∞-entry). MC₁ is the
/// identity.
pub fn mc_jordan(
    j: &JordanData,
    lambda: &RootOfUnity,
) -> Result<(JordanData, Vec<usize>), NumerologyError> {
    if lambda.is_one() {
        return Ok((j.clone(), vec![0; j.entries.len()]));
    }
    let n = j.rank();
    let last = j.entries.len() - 1;
    let finite_ranks: usize = j.entries[..last]
        .iter()
        .map(|e| e.shifted_rank(&RootOfUnity::one()))
        .sum();
    let total = finite_ranks + j.entries[last].shifted_rank(lambda);
    if total < n {
        return Err(NumerologyError::NegativeFiller { entry: last });
    }
    let new_rank = total - n;
    let mut entries = Vec::new();
    let mut fillers = Vec::new();
    for (i, e) in j.entries.iter().enumerate() {
        let rule = if i == last { Rule::Infinity } else { Rule::Finite };
        let (out, k) = mc_entry(e, lambda, rule, new_rank, i)?;
        entries.push(out);
        fillers.push(k);
    }
    Ok((JordanData { entries }, fillers))
}

/// Predict the Jordan data of MH_λ(T): twist the 0-entry (the first one) by
/// λ⁻¹ and the ∞-entry by λ, then convolve. The twists turn the first entry
/// into an ordinary finite entry of MC_λ, which is exactly how the special
/// 0-entry rules of the Hadamard product arise.
pub fn mh_jordan(
    j: &JordanData,
    lambda: &RootOfUnity,
) -> Result<(JordanData, Vec<usize>), NumerologyError> {
    if lambda.is_one() {
        return Ok((j.clone(), vec![0; j.entries.len()]));
    }
    let mut twisted = j.clone();
    let last = twisted.entries.len() - 1;
    twisted.entries[0] = twisted.entries[0].twist(&lambda.inv());
    twisted.entries[last] = twisted.entries[last].twist(lambda);
    mc_jordan(&twisted, lambda)
}

/// Symplectic centralizer codimensions of rank-4 Jordan data, entry by
/// entry. Rigidity in Sp₄ means these sum to 2 · dim Sp₄ = 20. Entries whose
/// class is outside the rank-4 class table are reported as such.
pub fn sp4_codim_profile(j: &JordanData) -> Result<Vec<usize>, NumerologyError> {
    j.entries
        .iter()
        .map(|e| {
            table1_class_name(e)?;
            Ok(10 - centralizer_dim_sp4(e)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuples::testutil::{rank_one_seed, rng};
    use crate::tuples::{middle_convolution, middle_hadamard};
    use rand::Rng;

    fn ru(num: i64, den: u32) -> RootOfUnity {
        RootOfUnity::new(num, den)
    }

    fn data(entries: &[&[(RootOfUnity, usize, usize)]]) -> JordanData {
        JordanData::new(
            entries
                .iter()
                .map(|b| JordanEntry::new(b.to_vec()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn blocks_away_from_the_special_eigenvalues_only_scale() {
        let z7 = ru(1, 7);
        let z3 = ru(1, 3);
        // finite entries (ζ₇, ζ₇⁻¹) and (ζ₃, ζ₃⁻¹), ∞-entry trivial
        let j = data(&[
            &[(z7, 1, 1), (z7.inv(), 1, 1)],
            &[(z3, 1, 1), (z3.inv(), 1, 1)],
            &[(RootOfUnity::one(), 1, 2)],
        ]);
        let lam = ru(1, 5);
        let (out, k) = mc_jordan(&j, &lam).unwrap();
        // new rank 2 + 2 + 2 − 2 = 4
        assert_eq!(out.rank(), 4);
        assert_eq!(k, vec![2, 2, 0]);
        assert_eq!(
            out.entries()[0],
            JordanEntry::new([
                (lam.mul(&z7), 1, 1),
                (lam.mul(&z7.inv()), 1, 1),
                (RootOfUnity::one(), 1, 2),
            ])
        );
        // ∞: two blocks λ⁻¹·1 = λ⁻¹ grown from ρ = 1 into J(2), plus fillers
        assert_eq!(
            out.entries()[2],
            JordanEntry::new([(lam.inv(), 2, 2)])
        );
    }

    #[test]
    fn inconsistent_data_reports_negative_filler() {
        let z3 = ru(1, 3);
        let m1 = RootOfUnity::minus_one();
        // finite entry with two nontrivial eigenvalues but an ∞-entry that
        // forces new rank 0
        let j = data(&[&[(z3, 1, 1), (z3.inv(), 1, 1)], &[(m1, 1, 2)]]);
        assert_eq!(
            mc_jordan(&j, &m1),
            Err(NumerologyError::NegativeFiller { entry: 0 })
        );
    }

    #[test]
    fn mc_with_lambda_one_is_the_identity() {
        let z3 = ru(1, 3);
        let j = data(&[&[(z3, 1, 1), (z3.inv(), 1, 1)], &[(RootOfUnity::one(), 1, 2)]]);
        let (out, k) = mc_jordan(&j, &RootOfUnity::one()).unwrap();
        assert_eq!(out, j);
        assert_eq!(k, vec![0, 0]);
    }

    #[test]
    fn hypergeometric_chain_climbs_rank_one_at_a_time() {
        let alpha = ru(1, 5);
        let beta = ru(1, 3);
        let one = RootOfUnity::one();
        // seed (1, α, α⁻¹) at (0, 1, ∞)
        let seed = data(&[&[(one, 1, 1)], &[(alpha, 1, 1)], &[(alpha.inv(), 1, 1)]]);
        let (s1, _) = mh_jordan(&seed, &alpha.inv()).unwrap();
        assert_eq!(
            s1,
            data(&[&[(one, 2, 1)], &[(one, 2, 1)], &[(alpha.inv(), 1, 1), (alpha, 1, 1)]])
        );
        let (s2, _) = mh_jordan(&s1, &beta.inv()).unwrap();
        assert_eq!(
            s2,
            data(&[
                &[(one, 3, 1)],
                &[(beta.inv(), 1, 1), (one, 1, 2)],
                &[(alpha, 1, 1), (alpha.inv(), 1, 1), (beta, 1, 1)],
            ])
        );
        let (s3, _) = mh_jordan(&s2, &beta).unwrap();
        assert_eq!(
            s3,
            data(&[
                &[(one, 4, 1)],
                &[(one, 2, 1), (one, 1, 2)],
                &[
                    (alpha, 1, 1),
                    (alpha.inv(), 1, 1),
                    (beta, 1, 1),
                    (beta.inv(), 1, 1),
                ],
            ])
        );
    }

    #[test]
    fn first_hadamard_step_of_the_symmetric_family() {
        // seed (1, (iy)⁻¹, iy) and λ = −iy, at y = ζ₃: the result must be
        // (J(2); (−1,1); (iy, iy⁻¹))
        let i = ru(1, 4);
        let y = ru(1, 3);
        let iy = i.mul(&y);
        let lam = iy.neg();
        let seed = data(&[
            &[(RootOfUnity::one(), 1, 1)],
            &[(iy.inv(), 1, 1)],
            &[(iy, 1, 1)],
        ]);
        let (s1, fillers) = mh_jordan(&seed, &lam).unwrap();
        assert_eq!(
            s1,
            data(&[
                &[(RootOfUnity::one(), 2, 1)],
                &[(RootOfUnity::minus_one(), 1, 1), (RootOfUnity::one(), 1, 1)],
                &[(iy, 1, 1), (i.mul(&y.inv()), 1, 1)],
            ])
        );
        assert_eq!(fillers, vec![0, 1, 1]);
    }

    #[test]
    fn convolving_back_restores_the_jordan_data() {
        let alpha = ru(1, 5);
        let beta = ru(1, 3);
        let one = RootOfUnity::one();
        let s2 = data(&[
            &[(one, 3, 1)],
            &[(beta.inv(), 1, 1), (one, 1, 2)],
            &[(alpha, 1, 1), (alpha.inv(), 1, 1), (beta, 1, 1)],
        ]);
        for lam in [ru(1, 5), ru(1, 2), ru(5, 12)] {
            let (fwd, _) = mc_jordan(&s2, &lam).unwrap();
            let (back, _) = mc_jordan(&fwd, &lam.inv()).unwrap();
            assert_eq!(back, s2, "λ = {lam}");
        }
    }

    /// The rules against the matrices: random Hadamard/convolution chains
    /// from rank-one seeds, prediction compared with the Jordan data of the
    /// explicit construction at every step.
    #[test]
    fn prediction_matches_the_explicit_construction() {
        let mut rng = rng(0x4a5b);
        let mut compared = 0;
        for _ in 0..100 {
            // rank-one seed (1, α, α⁻¹) at (0, 1, ∞), conductor ≤ 12
            let den = [3u32, 4, 5, 6, 8, 12][rng.gen_range(0..6)];
            let a = rng.gen_range(1..den) as i64;
            let mut t = rank_one_seed(&CycloNum::root_of_unity(a, den));
            for step in 0..3 {
                if t.rank() >= 4 {
                    break;
                }
                let den = [2u32, 3, 4, 6][rng.gen_range(0..4)];
                let lam = RootOfUnity::new(rng.gen_range(1..den) as i64, den);
                let jd = JordanData::from_tuple(&t).unwrap();
                let hadamard = step == 0 || rng.gen_bool(0.5);
                let (matrix, predicted) = if hadamard {
                    (middle_hadamard(&t, &lam.to_cyclo()), mh_jordan(&jd, &lam))
                } else {
                    (
                        middle_convolution(&t, &lam.to_cyclo()),
                        mc_jordan(&jd, &lam),
                    )
                };
                let next = match matrix {
                    Ok(next) => next,
                    // degenerate draw (the rank collapses); redraw λ
                    Err(_) => continue,
                };
                let (pred, _) = predicted.expect("matrix construction succeeded");
                assert_eq!(
                    JordanData::from_tuple(&next).unwrap(),
                    pred,
                    "step {step} λ = {lam}"
                );
                compared += 1;
                t = next;
            }
        }
        assert!(compared >= 150, "only {compared} comparisons ran");
    }

    #[test]
    fn from_tuple_reads_off_matrix_jordan_data() {
        let seed = rank_one_seed(&CycloNum::root_of_unity(1, 5));
        let jd = JordanData::from_tuple(&seed).unwrap();
        assert_eq!(jd.rank(), 1);
        assert_eq!(jd.entries()[1], JordanEntry::new([(ru(1, 5), 1, 1)]));
        assert_eq!(jd.entries()[2], JordanEntry::new([(ru(-1, 5), 1, 1)]));
    }
}
