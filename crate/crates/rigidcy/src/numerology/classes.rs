//! Jordan classes of Sp₄(ℂ) and their numerical invariants.
//!
//! A class is a multiset of Jordan blocks `(eigenvalue, size, multiplicity)`.
//! Everything is computed from that data alone: centralizer dimensions in
//! GL and Sp, the symplectic-validity test, and the Jordan type of the
//! primitive part of Λ² (the SO₅ image of an Sp₄ class). The computations
//! are generic over the eigenvalue representation so that the same code
//! drives both concrete root-of-unity entries and the symbolic eigenvalues
//! `±x^p y^q` (with x, y generic) used by the case enumerator.

use super::{JordanEntry, NumerologyError};
use crate::exactalg::RootOfUnity;
use std::collections::BTreeMap;
use std::fmt;

/// The eigenvalue arithmetic needed by the class-level computations.
pub(crate) trait Eig: Clone + Ord {
    fn one() -> Self;
    fn minus_one() -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn inv(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Eig for RootOfUnity {
    fn one() -> Self {
        RootOfUnity::one()
    }
    fn minus_one() -> Self {
        RootOfUnity::minus_one()
    }
    fn mul(&self, rhs: &Self) -> Self {
        RootOfUnity::mul(self, rhs)
    }
    fn inv(&self) -> Self {
        RootOfUnity::inv(self)
    }
}

/// A symbolic eigenvalue `±x^xp · y^yp` where x and y are generic: two
/// symbolic values are equal exactly when they are syntactically equal, and
/// a value with a nonzero exponent is never ±1. The case screens only ever
/// compare eigenvalues against ±1 across tuple entries, so the symbols x, y
/// can safely be shared between entries of a tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Sym {
    pub neg: bool,
    pub xp: i64,
    pub yp: i64,
}

pub(crate) fn sym(neg: bool, xp: i64, yp: i64) -> Sym {
    Sym { neg, xp, yp }
}

impl Eig for Sym {
    fn one() -> Self {
        sym(false, 0, 0)
    }
    fn minus_one() -> Self {
        sym(true, 0, 0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        sym(self.neg ^ rhs.neg, self.xp + rhs.xp, self.yp + rhs.yp)
    }
    fn inv(&self) -> Self {
        sym(self.neg, -self.xp, -self.yp)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        if self.neg {
            s.push('-');
        }
        for (v, c) in [(self.xp, 'x'), (self.yp, 'y')] {
            match v {
                0 => {}
                1 => s.push(c),
                k => s.push_str(&format!("{c}^{k}")),
            }
        }
        if self.xp == 0 && self.yp == 0 {
            s.push('1');
        }
        write!(f, "{s}")
    }
}

/// A multiset of Jordan blocks `(eigenvalue, size, multiplicity)`.
pub(crate) type Blocks<E> = Vec<(E, usize, usize)>;

/// Merge equal blocks, drop empty ones, sort canonically.
pub(crate) fn normalize<E: Eig>(blocks: Blocks<E>) -> Blocks<E> {
    let mut merged: BTreeMap<(E, usize), usize> = BTreeMap::new();
    for (e, j, v) in blocks {
        if j > 0 && v > 0 {
            *merged.entry((e, j)).or_insert(0) += v;
        }
    }
    merged.into_iter().map(|((e, j), v)| (e, j, v)).collect()
}

pub(crate) fn rank<E: Eig>(blocks: &Blocks<E>) -> usize {
    blocks.iter().map(|(_, j, v)| j * v).sum()
}

/// rk(T − σ) = n − (number of blocks with eigenvalue σ).
pub(crate) fn shifted_rank<E: Eig>(blocks: &Blocks<E>, sigma: &E) -> usize {
    rank(blocks)
        - blocks
            .iter()
            .filter(|(e, _, _)| e == sigma)
            .map(|(_, _, v)| v)
            .sum::<usize>()
}

pub(crate) fn twist<E: Eig>(blocks: &Blocks<E>, lambda: &E) -> Blocks<E> {
    normalize(
        blocks
            .iter()
            .map(|(e, j, v)| (lambda.mul(e), *j, *v))
            .collect(),
    )
}

/// dim C_{GL_n}(T) = Σ_ρ Σ_{j,j'} min(j,j') v_j v_{j'}.
pub(crate) fn centralizer_gl_blocks<E: Eig>(blocks: &Blocks<E>) -> usize {
    let mut dim = 0;
    for (e, j, v) in blocks {
        for (e2, j2, v2) in blocks {
            if e == e2 {
                dim += j.min(j2) * v * v2;
            }
        }
    }
    dim
}

/// dim C_{Sp_n}(T), or None when the class carries no invariant symplectic
/// form. The conditions are the classical ones: the block structures at ρ and
/// ρ⁻¹ must agree, and at ρ = ±1 every odd block size must occur with even
/// multiplicity. Each ±1 part contributes ½(gl-part + #odd blocks); a pair
/// {ρ, ρ⁻¹} with ρ ≠ ±1 contributes its gl-part once.
pub(crate) fn centralizer_sp_blocks<E: Eig>(blocks: &Blocks<E>) -> Option<usize> {
    let mut groups: BTreeMap<E, Vec<(usize, usize)>> = BTreeMap::new();
    for (e, j, v) in blocks {
        groups.entry(e.clone()).or_default().push((*j, *v));
    }
    let part_gl = |part: &[(usize, usize)]| -> usize {
        let mut d = 0;
        for (j, v) in part {
            for (j2, v2) in part {
                d += j.min(j2) * v * v2;
            }
        }
        d
    };
    let mut dim = 0;
    for (e, part) in &groups {
        if e.is_one() || *e == E::minus_one() {
            for (j, v) in part {
                if j % 2 == 1 && v % 2 == 1 {
                    return None;
                }
            }
            let odd: usize = part.iter().filter(|(j, _)| j % 2 == 1).map(|(_, v)| v).sum();
            dim += (part_gl(part) + odd) / 2;
        } else {
            let inv = e.inv();
            if groups.get(&inv) != Some(part) {
                return None;
            }
            // count each pair {ρ, ρ⁻¹} once
            if *e < inv {
                dim += part_gl(part);
            }
        }
    }
    Some(dim)
}

/// Jordan type of J_a ⊗ J_b at eigenvalue product (characteristic zero):
/// sizes |a−b|+1, |a−b|+3, …, a+b−1.
fn tensor_sizes(a: usize, b: usize) -> impl Iterator<Item = usize> {
    let lo = a.abs_diff(b) + 1;
    (lo..=a + b - 1).step_by(2)
}

/// Jordan type of the primitive part of Λ²T for symplectic T: the full Λ²
/// splits off the invariant-form line ⟨ω⟩ as a direct summand, so the
/// primitive part is Λ² minus one J(1) block at eigenvalue 1.
///
/// Λ² of a single block J_n is ⊕_{i=1..⌊n/2⌋} J_{2n−4i+1} at the squared
/// eigenvalue; cross terms are full tensor products.
pub(crate) fn ext2_primitive_blocks<E: Eig>(blocks: &Blocks<E>) -> Option<Blocks<E>> {
    let expanded: Vec<(E, usize)> = blocks
        .iter()
        .flat_map(|(e, j, v)| std::iter::repeat((e.clone(), *j)).take(*v))
        .collect();
    let mut out: Blocks<E> = Vec::new();
    for (i, (a, ja)) in expanded.iter().enumerate() {
        for (b, jb) in expanded.iter().skip(i + 1) {
            for s in tensor_sizes(*ja, *jb) {
                out.push((a.mul(b), s, 1));
            }
        }
        for i in 1..=ja / 2 {
            out.push((a.mul(a), 2 * ja - 4 * i + 1, 1));
        }
    }
    let mut out = normalize(out);
    let pos = out.iter().position(|(e, j, _)| e.is_one() && *j == 1)?;
    out[pos].2 -= 1;
    Some(normalize(out))
}

/// Canonical display order: big blocks first, then eigenvalues with the
/// larger symbolic exponents first and −1 before 1.
fn sym_sort_key(e: &Sym, j: usize) -> (i64, i64, i64, bool) {
    (-(j as i64), -e.xp, -e.yp, !e.neg)
}

/// Render symbolic blocks the way the classification table prints them:
/// `(J(2),J(2),1)`, `(x^2,1,1,1,x^-2)`, a single block as a bare `J(5)`.
pub(crate) fn render_sym_blocks(blocks: &Blocks<Sym>) -> String {
    let mut items: Vec<(Sym, usize)> = blocks
        .iter()
        .flat_map(|(e, j, v)| std::iter::repeat((*e, *j)).take(*v))
        .collect();
    items.sort_by_key(|(e, j)| sym_sort_key(e, *j));
    let token = |(e, j): &(Sym, usize)| -> String {
        if *j == 1 {
            format!("{e}")
        } else if e.is_one() {
            format!("J({j})")
        } else if *e == Sym::minus_one() {
            format!("-J({j})")
        } else {
            format!("{e}J({j})")
        }
    };
    if items.len() == 1 {
        token(&items[0])
    } else {
        format!("({})", items.iter().map(token).collect::<Vec<_>>().join(","))
    }
}

/// One row of the Sp₄ class table: the printed name, the symbolic block
/// structure (two sign variants when the row is a ± row), its genericity
/// conditions, and the computed invariants.
pub(crate) struct ClassRow {
    pub name: &'static str,
    pub conditions: &'static str,
    /// Distinct sign variants of the class; x ↦ −x absorbs the sign for the
    /// parametrised rows, so those carry a single variant.
    pub variants: Vec<Blocks<Sym>>,
    pub sp_dim: usize,
    pub gl_dim: usize,
    /// Λ²-primitive image (the same for both variants since Λ²(−T) = Λ²T).
    pub so5: Blocks<Sym>,
}

/// The twelve Sp₄(ℂ) quasi-unipotent class patterns of the classification
/// table, with all numerical columns recomputed from the block data.
pub(crate) fn table1_rows() -> Vec<ClassRow> {
    let one = Sym::one();
    let m1 = Sym::minus_one();
    let x = sym(false, 1, 0);
    let xi = sym(false, -1, 0);
    let y = sym(false, 0, 1);
    let yi = sym(false, 0, -1);
    let specs: Vec<(&'static str, &'static str, Vec<Blocks<Sym>>)> = vec![
        ("±(1,1,1,1)", "", vec![vec![(one, 1, 4)], vec![(m1, 1, 4)]]),
        (
            "±(J(2),1,1)",
            "",
            vec![
                vec![(one, 2, 1), (one, 1, 2)],
                vec![(m1, 2, 1), (m1, 1, 2)],
            ],
        ),
        (
            "±(J(2),J(2))",
            "",
            vec![vec![(one, 2, 2)], vec![(m1, 2, 2)]],
        ),
        ("±J(4)", "", vec![vec![(one, 4, 1)], vec![(m1, 4, 1)]]),
        ("(-1,-1,1,1)", "", vec![vec![(m1, 1, 2), (one, 1, 2)]]),
        (
            "±(-J(2),1,1)",
            "",
            vec![
                vec![(m1, 2, 1), (one, 1, 2)],
                vec![(one, 2, 1), (m1, 1, 2)],
            ],
        ),
        ("(-J(2),J(2))", "", vec![vec![(m1, 2, 1), (one, 2, 1)]]),
        (
            "(x,x,x^-1,x^-1)",
            "x^2 != 1",
            vec![vec![(x, 1, 2), (xi, 1, 2)]],
        ),
        (
            "(x,1,1,x^-1)",
            "x^2 != 1",
            vec![vec![(x, 1, 1), (one, 1, 2), (xi, 1, 1)]],
        ),
        (
            "(xJ(2),x^-1J(2))",
            "x^2 != 1",
            vec![vec![(x, 2, 1), (xi, 2, 1)]],
        ),
        (
            "(x,x^-1,J(2))",
            "x^2 != 1",
            vec![vec![(x, 1, 1), (xi, 1, 1), (one, 2, 1)]],
        ),
        (
            "(x,y,y^-1,x^-1)",
            "x^2 != 1, y^2 != 1, x != y, x != y^-1",
            vec![vec![(x, 1, 1), (y, 1, 1), (yi, 1, 1), (xi, 1, 1)]],
        ),
    ];
    specs
        .into_iter()
        .map(|(name, conditions, variants)| {
            let variants: Vec<_> = variants.into_iter().map(normalize).collect();
            let sp_dim = centralizer_sp_blocks(&variants[0])
                .unwrap_or_else(|| panic!("class {name} is not symplectic"));
            ClassRow {
                name,
                conditions,
                gl_dim: centralizer_gl_blocks(&variants[0]),
                so5: ext2_primitive_blocks(&variants[0]).unwrap(),
                sp_dim,
                variants,
            }
        })
        .collect()
}

fn entry_blocks(entry: &JordanEntry) -> Blocks<RootOfUnity> {
    entry.blocks().to_vec()
}

/// dim C_{GL₄}(T) for a concrete Jordan entry.
pub fn centralizer_dim_gl(entry: &JordanEntry) -> usize {
    centralizer_gl_blocks(&entry_blocks(entry))
}

/// dim C_{Sp₄}(T) for a concrete rank-4 Jordan entry.
pub fn centralizer_dim_sp4(entry: &JordanEntry) -> Result<usize, NumerologyError> {
    if entry.rank() != 4 {
        return Err(NumerologyError::NotSymplecticClass(format!(
            "rank {} entry {entry}",
            entry.rank()
        )));
    }
    centralizer_sp_blocks(&entry_blocks(entry))
        .ok_or_else(|| NumerologyError::NotSymplecticClass(entry.to_string()))
}

/// Jordan data of the primitive part of Λ²T — the SO₅ image of a symplectic
/// rank-4 class, per the second column of the classification table.
pub fn ext2_jordan(entry: &JordanEntry) -> Result<JordanEntry, NumerologyError> {
    if centralizer_sp_blocks(&entry_blocks(entry)).is_none() {
        return Err(NumerologyError::NotSymplecticClass(entry.to_string()));
    }
    let blocks = ext2_primitive_blocks(&entry_blocks(entry))
        .ok_or_else(|| NumerologyError::NotSymplecticClass(entry.to_string()))?;
    Ok(JordanEntry::new(blocks))
}

/// Match a concrete rank-4 entry against the class table and return the
/// printed row name. Symplectic classes that the table absorbs into the
/// parametrised rows via x ↦ −x are matched as such; the two sign-twisted
/// patterns the table does not list (−(x,1,1,x⁻¹) and −(x,x⁻¹,J(2)) shapes)
/// come back as UnknownClass.
pub fn table1_class_name(entry: &JordanEntry) -> Result<&'static str, NumerologyError> {
    centralizer_dim_sp4(entry)?;
    let b = entry_blocks(entry);
    let mut items: Vec<(RootOfUnity, usize)> = b
        .iter()
        .flat_map(|(e, j, v)| std::iter::repeat((*e, *j)).take(*v))
        .collect();
    items.sort_by_key(|&(e, j)| (std::cmp::Reverse(j), e));
    let one = RootOfUnity::one();
    let m1 = RootOfUnity::minus_one();
    let general = |e: RootOfUnity| e != one && e != m1;
    let sizes: Vec<usize> = items.iter().map(|&(_, j)| j).collect();
    let eigs: Vec<RootOfUnity> = items.iter().map(|&(e, _)| e).collect();
    let name = match sizes.as_slice() {
        [4] => Some("±J(4)"),
        [2, 2] => match (eigs[0], eigs[1]) {
            (a, b) if a == b && !general(a) => Some("±(J(2),J(2))"),
            (a, b) if (a, b) == (m1, one) || (a, b) == (one, m1) => Some("(-J(2),J(2))"),
            (a, b) if general(a) && b == a.inv() => Some("(xJ(2),x^-1J(2))"),
            _ => None,
        },
        [2, 1, 1] => {
            let (e, a, b) = (eigs[0], eigs[1], eigs[2]);
            if !general(e) && a == e && b == e {
                Some("±(J(2),1,1)")
            } else if !general(e) && a == e.neg() && b == e.neg() {
                Some("±(-J(2),1,1)")
            } else if e == one && general(a) && b == a.inv() {
                Some("(x,x^-1,J(2))")
            } else {
                None
            }
        }
        [1, 1, 1, 1] => {
            // symplectic validity (checked above) already forces the
            // eigenvalue multiset to be closed under inversion
            let mut es = eigs.clone();
            es.sort();
            let mut distinct = es.clone();
            distinct.dedup();
            let ones = es.iter().filter(|e| **e == one).count();
            match distinct.as_slice() {
                [a] if !general(*a) => Some("±(1,1,1,1)"),
                [a, b] if (*a, *b) == (one, m1) => Some("(-1,-1,1,1)"),
                [a, b] if general(*a) && *b == a.inv() => Some("(x,x,x^-1,x^-1)"),
                [_, _, _] if ones == 2 => Some("(x,1,1,x^-1)"),
                [_, _, _, _] if es.iter().all(|e| general(*e)) => Some("(x,y,y^-1,x^-1)"),
                _ => None,
            }
        }
        _ => None,
    };
    name.ok_or_else(|| NumerologyError::UnknownClass(entry.to_string()))
}
