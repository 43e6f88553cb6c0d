//! Enumeration of the rank-4 rigid cases.
//!
//! A rigid quasi-unipotent Sp₄(ℂ) tuple has local classes whose symplectic
//! centralizer codimensions sum to 2·dim Sp₄ = 20. Grouping by the
//! centralizer dimensions gives five profiles; refining by the GL₄
//! centralizer dimensions gives 24 subcases. For each subcase the enumerator
//! lists the candidate classes of the class table and decides, by counting
//! alone, whether an irreducible tuple with those local types exists and how
//! it can be constructed:
//!
//! * An irreducible rank-n tuple satisfies Σ codim_GL ≥ 2n² − 2, with
//!   equality exactly for the linearly rigid ones. A sum below 30 rules the
//!   subcase out ("dimension count"); a sum of exactly 30 makes every
//!   irreducible candidate linearly rigid, hence reachable by the Katz
//!   algorithm.
//! * Scott's bound: an irreducible tuple with ∏Tᵢ = 1 has
//!   Σ rk(Tᵢ − σᵢ) ≥ 2n for every scalar twist σ with ∏σᵢ = 1. Only
//!   σᵢ ∈ {±1} can cancel in the product, since the symbolic parameters of
//!   distinct entries are independent. A combination of candidate classes
//!   that admits a twist below 2n cannot be irreducible; if that kills every
//!   combination, the subcase is reducible ("Scott").
//! * Subcases with Σ codim_GL4 > 30 are not linearly rigid, but the
//!   5-dimensional Λ²-image can be: if a surviving combination has
//!   Σ codim_GL5 = 48 and passes the rank-5 Scott bound, the image is
//!   linearly rigid and the tuple is reached through SO₅. If instead every
//!   surviving combination fails the rank-5 counts, the image is always
//!   reducible. Anything else is left to inspection by hand.

use super::classes::{
    centralizer_gl_blocks, ext2_primitive_blocks, render_sym_blocks, shifted_rank, sym,
    table1_rows, Blocks, Eig, Sym,
};
use itertools::Itertools;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

/// Outcome of the automated screens for one subcase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Σ codim_GL4 = 30 and some candidate combination survives Scott.
    LinRigid,
    /// Σ codim_GL4 < 30: no irreducible tuple exists.
    RedDimensionCount,
    /// Every candidate combination admits a scalar twist violating Scott's
    /// bound: no irreducible tuple exists.
    RedScott,
    /// Some surviving combination has a linearly rigid Λ²-image.
    Lambda2LinRigid,
    /// Every surviving combination has a forcibly reducible Λ²-image.
    Lambda2Red,
    /// The counts are inconclusive.
    Manual,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::LinRigid => "lin. rigid",
            Verdict::RedDimensionCount => "red. (dimension count)",
            Verdict::RedScott => "red. (Scott)",
            Verdict::Lambda2LinRigid => "Λ² lin. rigid",
            Verdict::Lambda2Red => "Λ² red.",
            Verdict::Manual => "manual",
        };
        write!(f, "{s}")
    }
}

/// How the computed verdict relates to the reference annotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agreement {
    Match,
    /// The reference table leaves the subcase unannotated.
    Unannotated,
    Conflict,
}

impl fmt::Display for Agreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Agreement::Match => "match",
            Agreement::Unannotated => "unannotated",
            Agreement::Conflict => "conflict",
        };
        write!(f, "{s}")
    }
}

/// One of the 24 subcases.
#[derive(Debug, Clone)]
pub struct Sp4Case {
    /// 1-based index of the profile.
    pub case_number: usize,
    /// Symplectic centralizer dimensions, ascending.
    pub profile: Vec<usize>,
    /// GL₄ centralizer dimensions refining the profile, slot by slot.
    pub gl_dims: Vec<usize>,
    /// Candidate classes per slot, rendered.
    pub candidates: Vec<Vec<String>>,
    pub verdict: Verdict,
    /// The annotation of the reference table, "" where it has none.
    pub reference_remark: &'static str,
    pub agreement: Agreement,
}

/// One candidate class variant for a slot, with everything the screens need.
struct Candidate {
    display: String,
    blocks: Blocks<Sym>,
    image: Blocks<Sym>,
    codim5: usize,
}

/// Candidate class variants per (dim C_Sp4, dim C_GL4) cell. The central
/// classes (dim 10) are left out: an identity entry is a removable point.
fn build_cells() -> BTreeMap<(usize, usize), Vec<Candidate>> {
    let mut cells: BTreeMap<(usize, usize), Vec<Candidate>> = BTreeMap::new();
    for row in table1_rows() {
        if row.sp_dim == 10 {
            continue;
        }
        for blocks in row.variants {
            let image = ext2_primitive_blocks(&blocks).unwrap();
            cells.entry((row.sp_dim, row.gl_dim)).or_default().push(Candidate {
                display: render_sym_blocks(&blocks),
                codim5: 25 - centralizer_gl_blocks(&image),
                blocks,
                image,
            });
        }
    }
    cells
}

/// The profiles: multisets of symplectic centralizer dimensions with
/// codimensions summing to 20. Tuples need at least three singular points.
fn profiles() -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for len in 3..=5 {
        for combo in [2usize, 4, 6].into_iter().combinations_with_replacement(len) {
            if combo.iter().map(|s| 10 - s).sum::<usize>() == 20 {
                out.push(combo);
            }
        }
    }
    out
}

/// min over scalar twists σ ∈ {±1}^m with ∏σᵢ = 1 of Σ rk(Tᵢ − σᵢ).
fn scott_min(blocks: &[&Blocks<Sym>]) -> usize {
    let signs = [Sym::one(), Sym::minus_one()];
    let mut best = usize::MAX;
    for mask in 0u32..1 << blocks.len() {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let total = blocks
            .iter()
            .enumerate()
            .map(|(i, b)| shifted_rank(b, &signs[(mask >> i & 1) as usize]))
            .sum();
        best = best.min(total);
    }
    best
}

fn verdict_for(slots: &[&[Candidate]], gl: &[usize]) -> Verdict {
    let sum4: usize = gl.iter().map(|g| 16 - g).sum();
    if sum4 < 30 {
        return Verdict::RedDimensionCount;
    }
    let survivors: Vec<Vec<&Candidate>> = slots
        .iter()
        .map(|s| s.iter())
        .multi_cartesian_product()
        .filter(|combo| {
            let b: Vec<&Blocks<Sym>> = combo.iter().map(|c| &c.blocks).collect();
            scott_min(&b) >= 8
        })
        .collect();
    if survivors.is_empty() {
        return Verdict::RedScott;
    }
    if sum4 == 30 {
        return Verdict::LinRigid;
    }
    let lambda2 = |combo: &[&Candidate]| -> (usize, usize) {
        let images: Vec<&Blocks<Sym>> = combo.iter().map(|c| &c.image).collect();
        (combo.iter().map(|c| c.codim5).sum(), scott_min(&images))
    };
    if survivors.iter().any(|c| {
        let (sum5, scott5) = lambda2(c);
        sum5 == 48 && scott5 >= 10
    }) {
        return Verdict::Lambda2LinRigid;
    }
    if survivors.iter().all(|c| {
        let (sum5, scott5) = lambda2(c);
        sum5 < 48 || scott5 < 10
    }) {
        return Verdict::Lambda2Red;
    }
    Verdict::Manual
}

/// The annotations of the reference table, verbatim (including the
/// abbreviated "rig." spellings); "" where the table has none.
fn printed_remark(profile: &[usize], gl: &[usize]) -> &'static str {
    match (profile, gl) {
        ([2, 2, 6], [4, 4, 8]) => "Λ² lin. rigid",
        ([2, 2, 6], [4, 4, 10]) => "lin. rigid",
        ([2, 4, 4], [4, 6, 6]) => "",
        ([2, 4, 4], [4, 6, 8]) => "lin. rigid",
        ([2, 4, 4], [4, 8, 8]) => "red. (dimension count)",
        ([2, 6, 6, 6], [4, 8, 8, 8]) => "Λ² red.",
        ([2, 6, 6, 6], [4, 8, 8, 10]) => "Λ² red.",
        ([2, 6, 6, 6], [4, 8, 10, 10]) => "",
        ([2, 6, 6, 6], [4, 10, 10, 10]) => "red. (Scott)",
        ([4, 4, 6, 6], [6, 6, 8, 8]) => "Λ² lin. rig.",
        ([4, 4, 6, 6], [6, 6, 8, 10]) => "Λ² red.",
        ([4, 4, 6, 6], [6, 6, 10, 10]) => "",
        ([4, 4, 6, 6], [6, 8, 8, 8]) => "Λ² red.",
        ([4, 4, 6, 6], [6, 8, 8, 10]) => "",
        ([4, 4, 6, 6], [6, 8, 10, 10]) => "lin. rigid",
        ([4, 4, 6, 6], [8, 8, 8, 8]) => "Λ² red.",
        ([4, 4, 6, 6], [8, 8, 8, 10]) => "lin. rigid",
        ([4, 4, 6, 6], [8, 8, 10, 10]) => "red. (dimension count)",
        ([6, 6, 6, 6, 6], [8, 8, 8, 8, 8]) => "Λ² red.",
        ([6, 6, 6, 6, 6], [8, 8, 8, 8, 10]) => "Λ² red.",
        ([6, 6, 6, 6, 6], [8, 8, 8, 10, 10]) => "Λ² lin. rig.",
        ([6, 6, 6, 6, 6], [8, 8, 10, 10, 10]) => "red. (Scott)",
        ([6, 6, 6, 6, 6], [8, 10, 10, 10, 10]) => "red. (Scott)",
        ([6, 6, 6, 6, 6], [10, 10, 10, 10, 10]) => "lin. rig.",
        _ => unreachable!("subcase ({profile:?}, {gl:?}) not in the reference table"),
    }
}

fn agreement(verdict: Verdict, remark: &str) -> Agreement {
    if remark.is_empty() {
        return Agreement::Unannotated;
    }
    if verdict.to_string() == remark.replace("rig.", "rigid") {
        Agreement::Match
    } else {
        Agreement::Conflict
    }
}

/// All 24 subcases, profiles ascending, subcases ascending within a profile.
pub fn enumerate_sp4_cases() -> Vec<Sp4Case> {
    let cells = build_cells();
    let mut out = Vec::new();
    for (idx, profile) in profiles().into_iter().enumerate() {
        // per run of equal sp dims, the nondecreasing choices of gl dims
        let group_choices: Vec<Vec<Vec<usize>>> = profile
            .iter()
            .dedup_with_count()
            .map(|(count, sp)| {
                let opts: Vec<usize> = cells
                    .keys()
                    .filter(|(s, _)| s == sp)
                    .map(|(_, g)| *g)
                    .collect();
                opts.into_iter().combinations_with_replacement(count).collect()
            })
            .collect();
        let mut subcases: Vec<Vec<usize>> = group_choices
            .iter()
            .multi_cartesian_product()
            .map(|parts| parts.into_iter().flatten().copied().collect())
            .collect();
        subcases.sort();
        for gl in subcases {
            let slots: Vec<&[Candidate]> = profile
                .iter()
                .zip(&gl)
                .map(|(sp, g)| cells[&(*sp, *g)].as_slice())
                .collect();
            let verdict = verdict_for(&slots, &gl);
            let remark = printed_remark(&profile, &gl);
            out.push(Sp4Case {
                case_number: idx + 1,
                profile: profile.clone(),
                candidates: slots
                    .iter()
                    .map(|s| s.iter().map(|c| c.display.clone()).collect())
                    .collect(),
                gl_dims: gl,
                verdict,
                reference_remark: remark,
                agreement: agreement(verdict, remark),
            });
        }
    }
    out
}

fn dims(v: &[usize]) -> String {
    format!("({})", v.iter().map(|d| d.to_string()).join(","))
}

fn render_grid(grid: &[Vec<String>]) -> String {
    let cols = grid[0].len();
    let mut widths = vec![0usize; cols];
    for row in grid {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for (i, row) in grid.iter().enumerate() {
        let line = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .join("  ");
        out.push_str(line.trim_end());
        out.push('\n');
        if i == 0 {
            out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 2 * (cols - 1)));
            out.push('\n');
        }
    }
    out
}

/// The class table as text.
pub fn table1_text() -> String {
    let mut grid = vec![vec![
        "class".to_string(),
        "Λ²-image".to_string(),
        "dim C_Sp4".to_string(),
        "dim C_GL4".to_string(),
        "conditions".to_string(),
    ]];
    for r in table1_rows() {
        grid.push(vec![
            r.name.to_string(),
            render_sym_blocks(&r.so5),
            r.sp_dim.to_string(),
            r.gl_dim.to_string(),
            r.conditions.to_string(),
        ]);
    }
    render_grid(&grid)
}

/// The class table as JSON.
pub fn table1_json() -> Value {
    Value::Array(
        table1_rows()
            .iter()
            .map(|r| {
                json!({
                    "class": r.name,
                    "image": render_sym_blocks(&r.so5),
                    "dim_c_sp4": r.sp_dim,
                    "dim_c_gl4": r.gl_dim,
                    "conditions": r.conditions,
                })
            })
            .collect(),
    )
}

/// The case table as text.
pub fn table2_text() -> String {
    let mut grid = vec![vec![
        "case".to_string(),
        "profile".to_string(),
        "subcase".to_string(),
        "verdict".to_string(),
        "remark".to_string(),
        "agreement".to_string(),
    ]];
    for c in enumerate_sp4_cases() {
        grid.push(vec![
            format!("P{}", c.case_number),
            dims(&c.profile),
            dims(&c.gl_dims),
            c.verdict.to_string(),
            c.reference_remark.to_string(),
            c.agreement.to_string(),
        ]);
    }
    render_grid(&grid)
}

/// The case table as JSON, with the candidate classes per slot.
pub fn table2_json() -> Value {
    Value::Array(
        enumerate_sp4_cases()
            .iter()
            .map(|c| {
                json!({
                    "case": c.case_number,
                    "profile": c.profile,
                    "gl_dims": c.gl_dims,
                    "candidates": c.candidates,
                    "verdict": c.verdict.to_string(),
                    "remark": c.reference_remark,
                    "agreement": c.agreement.to_string(),
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(profile: &[usize], gl: &[usize]) -> Sp4Case {
        enumerate_sp4_cases()
            .into_iter()
            .find(|c| c.profile == profile && c.gl_dims == gl)
            .unwrap_or_else(|| panic!("no subcase ({profile:?}, {gl:?})"))
    }

    #[test]
    fn the_five_profiles_and_24_subcases() {
        assert_eq!(
            profiles(),
            vec![
                vec![2, 2, 6],
                vec![2, 4, 4],
                vec![2, 6, 6, 6],
                vec![4, 4, 6, 6],
                vec![6, 6, 6, 6, 6],
            ]
        );
        let cases = enumerate_sp4_cases();
        assert_eq!(cases.len(), 24);
        let per_profile: Vec<usize> = (1..=5)
            .map(|i| cases.iter().filter(|c| c.case_number == i).count())
            .collect();
        assert_eq!(per_profile, vec![2, 3, 4, 9, 6]);
        for c in &cases {
            assert_eq!(c.profile.iter().map(|s| 10 - s).sum::<usize>(), 20);
            assert_eq!(c.profile.len(), c.gl_dims.len());
        }
    }

    #[test]
    fn verdicts_of_the_rigid_subcases() {
        assert_eq!(case(&[2, 2, 6], &[4, 4, 10]).verdict, Verdict::LinRigid);
        assert_eq!(case(&[2, 4, 4], &[4, 6, 8]).verdict, Verdict::LinRigid);
        assert_eq!(case(&[4, 4, 6, 6], &[6, 8, 10, 10]).verdict, Verdict::LinRigid);
        assert_eq!(case(&[4, 4, 6, 6], &[8, 8, 8, 10]).verdict, Verdict::LinRigid);
        assert_eq!(
            case(&[6, 6, 6, 6, 6], &[10, 10, 10, 10, 10]).verdict,
            Verdict::LinRigid
        );
        assert_eq!(case(&[2, 2, 6], &[4, 4, 8]).verdict, Verdict::Lambda2LinRigid);
        assert_eq!(
            case(&[4, 4, 6, 6], &[6, 6, 8, 8]).verdict,
            Verdict::Lambda2LinRigid
        );
        assert_eq!(
            case(&[6, 6, 6, 6, 6], &[8, 8, 8, 10, 10]).verdict,
            Verdict::Lambda2LinRigid
        );
    }

    #[test]
    fn verdicts_of_the_reducible_subcases() {
        assert_eq!(
            case(&[2, 4, 4], &[4, 8, 8]).verdict,
            Verdict::RedDimensionCount
        );
        assert_eq!(
            case(&[4, 4, 6, 6], &[8, 8, 10, 10]).verdict,
            Verdict::RedDimensionCount
        );
        assert_eq!(case(&[2, 6, 6, 6], &[4, 10, 10, 10]).verdict, Verdict::RedScott);
        assert_eq!(
            case(&[6, 6, 6, 6, 6], &[8, 10, 10, 10, 10]).verdict,
            Verdict::RedScott
        );
        assert_eq!(
            case(&[6, 6, 6, 6, 6], &[8, 8, 10, 10, 10]).verdict,
            Verdict::RedScott
        );
        for gl in [
            vec![4, 8, 8, 8],
            vec![4, 8, 8, 10],
        ] {
            assert_eq!(case(&[2, 6, 6, 6], &gl).verdict, Verdict::Lambda2Red);
        }
        for gl in [vec![6, 8, 8, 8], vec![8, 8, 8, 8]] {
            assert_eq!(case(&[4, 4, 6, 6], &gl).verdict, Verdict::Lambda2Red);
        }
        for gl in [vec![8, 8, 8, 8, 8], vec![8, 8, 8, 8, 10]] {
            assert_eq!(case(&[6, 6, 6, 6, 6], &gl).verdict, Verdict::Lambda2Red);
        }
    }

    #[test]
    fn inconclusive_subcases_are_left_manual() {
        for (profile, gl) in [
            (vec![2, 4, 4], vec![4, 6, 6]),
            (vec![2, 6, 6, 6], vec![4, 8, 10, 10]),
            // here ((x,1,1,x^-1), (x,1,1,x^-1), (J(2),1,1), -(J(2),1,1))
            // survives the rank-4 Scott bound with minimum exactly 8, and
            // its Λ² numbers decide nothing
            (vec![4, 4, 6, 6], vec![6, 6, 10, 10]),
            (vec![4, 4, 6, 6], vec![6, 8, 8, 10]),
        ] {
            let c = case(&profile, &gl);
            assert_eq!(c.verdict, Verdict::Manual, "({profile:?}, {gl:?})");
            assert_eq!(c.agreement, Agreement::Unannotated);
        }
    }

    #[test]
    fn agreement_with_the_reference_annotations() {
        let cases = enumerate_sp4_cases();
        let tally = |a: Agreement| cases.iter().filter(|c| c.agreement == a).count();
        assert_eq!(tally(Agreement::Match), 19);
        assert_eq!(tally(Agreement::Unannotated), 4);
        assert_eq!(tally(Agreement::Conflict), 1);
        // the one conflict: the annotation claims a reducible Λ²-image, but
        // every candidate combination already fails the rank-4 Scott bound
        let conflict = cases
            .iter()
            .find(|c| c.agreement == Agreement::Conflict)
            .unwrap();
        assert_eq!(conflict.profile, vec![4, 4, 6, 6]);
        assert_eq!(conflict.gl_dims, vec![6, 6, 8, 10]);
        assert_eq!(conflict.verdict, Verdict::RedScott);
        assert_eq!(conflict.reference_remark, "Λ² red.");
    }

    #[test]
    fn candidate_lists_are_the_class_table_cells() {
        let c = case(&[2, 2, 6], &[4, 4, 8]);
        assert_eq!(
            c.candidates[0],
            vec![
                "J(4)",
                "-J(4)",
                "(-J(2),J(2))",
                "(xJ(2),x^-1J(2))",
                "(J(2),x,x^-1)",
                "(x,y,y^-1,x^-1)",
            ]
        );
        assert_eq!(c.candidates[2], vec!["(-1,-1,1,1)"]);
        let c = case(&[4, 4, 6, 6], &[6, 8, 10, 10]);
        assert_eq!(
            c.candidates[0],
            vec!["(-J(2),1,1)", "(J(2),-1,-1)", "(x,1,1,x^-1)"]
        );
        assert_eq!(
            c.candidates[1],
            vec!["(J(2),J(2))", "(-J(2),-J(2))", "(x,x,x^-1,x^-1)"]
        );
        assert_eq!(c.candidates[2], vec!["(J(2),1,1)", "(-J(2),-1,-1)"]);
    }

    #[test]
    fn scott_minimum_over_even_sign_twists() {
        // the candidate (J(4), J(4), (J(2),1,1)) of subcase (4,4,10): the
        // untwisted sum is 3 + 3 + 1 = 7 < 8, so it cannot be irreducible
        let one = Sym::one();
        let j4 = vec![(one, 4, 1)];
        let j211: Blocks<Sym> = vec![(one, 2, 1), (one, 1, 2)];
        assert_eq!(scott_min(&[&j4, &j4, &j211]), 7);
        // replacing one J(4) by −J(4) lifts the minimum to 8
        let mj4 = vec![(sym(true, 0, 0), 4, 1)];
        assert_eq!(scott_min(&[&j4, &mj4, &j211]), 8);
    }
}
