//! Local data of an operator: singular points, indicial polynomials,
//! exponents, Riemann schemes, and the positivity condition that guards the
//! middle Hadamard product.
//!
//! Exponent extraction is exact but deliberately not a general root finder.
//! Over ℚ all rational roots are found; over ℚ(a,b) the search runs over a
//! candidate set of linear forms in a and b (with quarter-integer shifts)
//! that covers everything the operator pipelines produce, plus all plain
//! rational roots, which are recovered completely by specialising the
//! parameters and verifying symbolically.

use super::dform;
use super::{DiffOp, OpError};
use crate::exactalg::{
    is_integer, qq, rational_roots, roots_from_candidates, to_i64, CycloNum, Field, ParamElem,
    Poly, Rat,
};
use std::fmt;

/// A point of P¹ at which local data is read.
#[derive(Clone, PartialEq, Debug)]
pub enum SPoint<F: Field> {
    Finite(F),
    Infinity,
}

impl<F: Field> SPoint<F> {
    pub fn finite(c: F) -> Self {
        SPoint::Finite(c)
    }

    pub fn origin() -> Self {
        SPoint::Finite(F::zero())
    }

    pub fn is_origin(&self) -> bool {
        matches!(self, SPoint::Finite(p) if p.is_zero())
    }
}

impl<F: Field> fmt::Display for SPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SPoint::Finite(p) => write!(f, "{p}"),
            SPoint::Infinity => write!(f, "∞"),
        }
    }
}

/// Deterministic exponent order: rational values numerically, then symbolic
/// values by their rendering.
pub(crate) fn exp_cmp<F: Field>(x: &F, y: &F) -> std::cmp::Ordering {
    match (x.to_rat(), y.to_rat()) {
        (Some(a), Some(b)) => a.cmp(&b),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => format!("{x}").cmp(&format!("{y}")),
    }
}

/// Exact root extraction in the subsets of a field that exponents and
/// singular points of the constructed operators live in.
pub trait ExactRoots: Field {
    /// Roots of an indicial polynomial, with multiplicity, among the
    /// searchable elements of the field.
    fn theta_roots(p: &Poly<Self>) -> Vec<(Self, usize)>;

    /// Roots of a z-polynomial (for resolving the singular locus).
    fn z_roots(p: &Poly<Self>) -> Vec<(Self, usize)>;

    /// The roots that are rational numbers. Complete over ℚ and ℚ(a,b);
    /// best-effort over cyclotomic coefficients.
    fn rational_roots_of(p: &Poly<Self>) -> Vec<(Rat, usize)>;
}

impl ExactRoots for Rat {
    fn theta_roots(p: &Poly<Rat>) -> Vec<(Rat, usize)> {
        rational_roots(p)
    }

    fn z_roots(p: &Poly<Rat>) -> Vec<(Rat, usize)> {
        rational_roots(p)
    }

    fn rational_roots_of(p: &Poly<Rat>) -> Vec<(Rat, usize)> {
        rational_roots(p)
    }
}

/// Parameter specialisations used to harvest rational root candidates. The
/// first sample where every coefficient is defined and the leading one stays
/// nonzero is used; the values are generic enough for every pipeline.
const PARAM_SAMPLES: [((i64, i64), (i64, i64)); 4] = [
    ((5, 7), (3, 11)),
    ((2, 9), (7, 13)),
    ((8, 5), (11, 3)),
    ((13, 4), (1, 6)),
];

/// Rational roots of a ℚ(a,b)-polynomial: specialise the parameters, take the
/// rational roots there, and keep those that verify symbolically.
fn param_rational_candidates(p: &Poly<ParamElem>) -> Vec<ParamElem> {
    for ((an, ad), (bn, bd)) in PARAM_SAMPLES {
        let (av, bv) = (qq(an, ad), qq(bn, bd));
        let spec: Option<Vec<Rat>> = p
            .coeffs()
            .iter()
            .map(|c| c.eval_rat(&av, &bv).ok())
            .collect();
        let Some(spec) = spec else { continue };
        let sp = Poly::new(spec);
        if sp.deg() != p.deg() {
            continue; // leading coefficient vanished at this sample
        }
        return rational_roots(&sp)
            .into_iter()
            .map(|(r, _)| ParamElem::from_rat(&r))
            .collect();
    }
    Vec::new()
}

/// Candidate exponents over ℚ(a,b): integer and quarter-integer shifts of the
/// linear forms the convolution recipes generate.
fn param_exponent_candidates() -> Vec<ParamElem> {
    let a = ParamElem::a();
    let b = ParamElem::b();
    let half = ParamElem::from_rat(&qq(1, 2));
    let mut bases = vec![ParamElem::zero()];
    for s in [
        a.clone(),
        b.clone(),
        a.add(&a),
        b.add(&b),
        a.add(&b),
        a.sub(&b),
        a.add(&b).mul(&half),
        a.sub(&b).mul(&half),
        a.mul(&half),
        b.mul(&half),
        a.add(&b).add(&a).add(&b),
        a.add(&a).sub(&b).sub(&b),
    ] {
        bases.push(s.clone());
        bases.push(s.neg());
    }
    let mut out = Vec::new();
    for base in &bases {
        for k in -40..=40i64 {
            out.push(base.add(&ParamElem::from_rat(&qq(k, 4))));
        }
    }
    out
}

impl ExactRoots for ParamElem {
    fn theta_roots(p: &Poly<ParamElem>) -> Vec<(ParamElem, usize)> {
        let mut candidates = param_exponent_candidates();
        candidates.extend(param_rational_candidates(p));
        roots_from_candidates(p, &candidates)
    }

    fn z_roots(p: &Poly<ParamElem>) -> Vec<(ParamElem, usize)> {
        roots_from_candidates(p, &param_rational_candidates(p))
    }

    fn rational_roots_of(p: &Poly<ParamElem>) -> Vec<(Rat, usize)> {
        roots_from_candidates(p, &param_rational_candidates(p))
            .into_iter()
            .filter_map(|(r, m)| r.to_rat().map(|q| (q, m)))
            .collect()
    }
}

/// Lift the rational roots of the coefficient-wise rational projection, when
/// the whole polynomial happens to have rational coefficients.
fn lifted_rational_candidates<F: Field>(p: &Poly<F>) -> Vec<F> {
    let proj: Option<Vec<Rat>> = p.coeffs().iter().map(Field::to_rat).collect();
    match proj {
        Some(cs) => rational_roots(&Poly::new(cs))
            .into_iter()
            .map(|(r, _)| F::from_rat(&r))
            .collect(),
        None => Vec::new(),
    }
}

impl ExactRoots for CycloNum {
    fn theta_roots(p: &Poly<CycloNum>) -> Vec<(CycloNum, usize)> {
        let mut found = roots_from_candidates(p, &lifted_rational_candidates(p));
        // peel remaining linear quotients directly
        let mut q = p.clone();
        for (r, m) in &found {
            for _ in 0..*m {
                q = q.div_linear_root(r).unwrap_or(q);
            }
        }
        while q.deg() == Some(1) {
            let r = q.coeff(0).div(&q.coeff(1)).unwrap().neg();
            found.push((r.clone(), 1));
            q = q.div_linear_root(&r).unwrap();
        }
        found
    }

    fn z_roots(p: &Poly<CycloNum>) -> Vec<(CycloNum, usize)> {
        Self::theta_roots(p)
    }

    fn rational_roots_of(p: &Poly<CycloNum>) -> Vec<(Rat, usize)> {
        Self::theta_roots(p)
            .into_iter()
            .filter_map(|(r, m)| r.to_rat().map(|q| (q, m)))
            .collect()
    }
}

/// The indicial polynomial of L at a point: P₀ at the origin, P_m(−ϑ) at
/// infinity, and at finite p ≠ 0 the bottom layer after recentring z ↦ z+p
/// through the ∂-presentation.
pub fn indicial_poly<F: Field>(l: &DiffOp<F>, pt: &SPoint<F>) -> Poly<F> {
    if l.is_zero() {
        return Poly::zero();
    }
    match pt {
        SPoint::Finite(p) if p.is_zero() => l.layer(0),
        SPoint::Finite(p) => {
            let shifted: Vec<Poly<F>> = dform::to_d_form(l).iter().map(|a| a.shift(p)).collect();
            dform::from_d_form(&shifted).layer(0)
        }
        SPoint::Infinity => l.layer(l.z_deg()).reflect(),
    }
}

/// The exponents of L at a point: the roots of the indicial polynomial with
/// multiplicity, sorted for deterministic output. Errors when a root lies
/// outside the searchable set.
pub fn exponents<F: ExactRoots>(l: &DiffOp<F>, pt: &SPoint<F>) -> Result<Vec<F>, OpError> {
    let ind = indicial_poly(l, pt);
    if ind.is_zero() {
        return Err(OpError::NonFuchsianPoint(format!(
            "{pt} (vanishing indicial polynomial)"
        )));
    }
    let roots = F::theta_roots(&ind);
    let found: usize = roots.iter().map(|(_, m)| m).sum();
    if found < ind.deg().unwrap_or(0) {
        return Err(OpError::IrrationalExponent(format!(
            "indicial polynomial {} at {pt} does not split over the searchable set",
            ind.display_with("theta")
        )));
    }
    let mut out = Vec::with_capacity(found);
    for (r, m) in roots {
        for _ in 0..m {
            out.push(r.clone());
        }
    }
    out.sort_by(|x, y| exp_cmp(x, y));
    Ok(out)
}

/// All singular points: the origin and infinity together with the finite
/// nonzero roots of the leading ϑ-coefficient.
pub fn singular_locus<F: ExactRoots>(l: &DiffOp<F>) -> Result<Vec<SPoint<F>>, OpError> {
    if l.is_zero() {
        return Err(OpError::Degenerate("zero operator".into()));
    }
    let an = l
        .theta_coeffs()
        .pop()
        .expect("nonzero operator has a leading coefficient");
    let roots = F::z_roots(&an);
    let found: usize = roots.iter().map(|(_, m)| m).sum();
    if found < an.deg().unwrap_or(0) {
        return Err(OpError::UnresolvedSingularPoint(format!(
            "leading coefficient {} does not split over the coefficient field",
            an.display_with("z")
        )));
    }
    let mut finite: Vec<F> = roots
        .into_iter()
        .filter(|(r, _)| !r.is_zero())
        .map(|(r, _)| r)
        .collect();
    finite.sort_by(|x, y| exp_cmp(x, y));
    let mut out = vec![SPoint::origin()];
    out.extend(finite.into_iter().map(SPoint::Finite));
    out.push(SPoint::Infinity);
    Ok(out)
}

/// Riemann scheme: per singular point the multiset of exponents.
#[derive(Clone, PartialEq, Debug)]
pub struct RiemannScheme<F: Field> {
    rows: Vec<(SPoint<F>, Vec<F>)>,
}

impl<F: Field> RiemannScheme<F> {
    pub fn new(rows: Vec<(SPoint<F>, Vec<F>)>) -> Self {
        let rows = rows
            .into_iter()
            .map(|(pt, mut exps)| {
                exps.sort_by(|x, y| exp_cmp(x, y));
                (pt, exps)
            })
            .collect();
        RiemannScheme { rows }
    }

    pub fn rows(&self) -> &[(SPoint<F>, Vec<F>)] {
        &self.rows
    }

    pub fn row(&self, pt: &SPoint<F>) -> Option<&[F]> {
        self.rows
            .iter()
            .find(|(p, _)| p == pt)
            .map(|(_, e)| e.as_slice())
    }
}

impl<F: Field> fmt::Display for RiemannScheme<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (pt, exps)) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let list = exps
                .iter()
                .map(|e| format!("{e}"))
                .collect::<Vec<_>>()
                .join(", ");
            write!(f, "{pt}: {list}")?;
        }
        Ok(())
    }
}

/// The scheme of L over its full singular locus. Every row must carry
/// deg(L) exponents; a short row means the point is not fuchsian.
pub fn riemann_scheme<F: ExactRoots>(l: &DiffOp<F>) -> Result<RiemannScheme<F>, OpError> {
    let n = l.deg();
    let mut rows = Vec::new();
    for pt in singular_locus(l)? {
        let exps = exponents(l, &pt)?;
        if exps.len() != n {
            return Err(OpError::NonFuchsianPoint(pt.to_string()));
        }
        rows.push((pt, exps));
    }
    Ok(RiemannScheme::new(rows))
}

/// Whether the indicial equation has full degree deg(L) at every point.
pub fn is_fuchsian<F: ExactRoots>(l: &DiffOp<F>) -> Result<bool, OpError> {
    let n = l.deg();
    for pt in singular_locus(l)? {
        if indicial_poly(l, &pt).deg() != Some(n) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Check a-positivity: fuchsian, no exponent in ℤ_{<0} at any finite point,
/// and no exponent in −a+ℤ_{≤0} at infinity.
pub fn check_a_positive<F: ExactRoots>(l: &DiffOp<F>, a: &F) -> Result<(), OpError> {
    let n = l.deg();
    for pt in singular_locus(l)? {
        let ind = indicial_poly(l, &pt);
        if ind.deg() != Some(n) {
            return Err(OpError::NonFuchsianPoint(pt.to_string()));
        }
        match &pt {
            SPoint::Infinity => {
                // e ∈ −a+ℤ_{≤0} exactly when e+a is a nonpositive integer,
                // i.e. when the a-shifted indicial polynomial has such a root.
                let q = ind.shift(&a.neg());
                for (r, _) in F::rational_roots_of(&q) {
                    if is_integer(&r) && to_i64(&r).is_some_and(|k| k <= 0) {
                        return Err(OpError::PositivityViolation(format!(
                            "exponent −a{:+} at ∞",
                            to_i64(&r).unwrap()
                        )));
                    }
                }
            }
            SPoint::Finite(_) => {
                for (r, _) in F::rational_roots_of(&ind) {
                    if is_integer(&r) && to_i64(&r).is_some_and(|k| k < 0) {
                        return Err(OpError::PositivityViolation(format!(
                            "exponent {r} at {pt}"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Decision form of [`check_a_positive`]; non-positivity is a `false`, any
/// structural failure still surfaces as an error.
pub fn is_a_positive<F: ExactRoots>(l: &DiffOp<F>, a: &F) -> Result<bool, OpError> {
    match check_a_positive(l, a) {
        Ok(()) => Ok(true),
        Err(OpError::PositivityViolation(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::{make_la, op_from_int_layers, twist_power};
    use crate::exactalg::rat;

    #[test]
    fn la_local_data() {
        // L_a: exponent 0 at the origin, −a at 1, a at ∞
        let a = qq(1, 3);
        let l = make_la(&a);
        let pts = singular_locus(&l).unwrap();
        assert_eq!(pts.len(), 3);
        assert_eq!(pts[1], SPoint::finite(rat(1)));
        assert_eq!(exponents(&l, &SPoint::origin()).unwrap(), vec![rat(0)]);
        assert_eq!(
            exponents(&l, &SPoint::finite(rat(1))).unwrap(),
            vec![a.neg()]
        );
        assert_eq!(exponents(&l, &SPoint::Infinity).unwrap(), vec![a.clone()]);
        assert!(is_fuchsian(&l).unwrap());
    }

    #[test]
    fn hypergeometric_scheme() {
        // ϑ² − z(ϑ+1/2)(ϑ+1/3): scheme 0:(0,0) 1:(0,1/6) ∞:(1/3,1/2)
        let l = crate::diffop::hadamard_full(&make_la(&qq(1, 2)), &qq(1, 3));
        let s = riemann_scheme(&l).unwrap();
        assert_eq!(s.row(&SPoint::origin()).unwrap(), &[rat(0), rat(0)]);
        assert_eq!(
            s.row(&SPoint::finite(rat(1))).unwrap(),
            &[rat(0), qq(1, 6)]
        );
        assert_eq!(
            s.row(&SPoint::Infinity).unwrap(),
            &[qq(1, 3), qq(1, 2)]
        );
    }

    #[test]
    fn twist_conjugates_exponents() {
        let l = crate::diffop::hadamard_full(&make_la(&qq(1, 2)), &qq(1, 3));
        let c = qq(3, 4);
        let t = twist_power(&l, &c);
        // exponents at 0 shift by +c, at ∞ by −c, finite points unchanged
        let e0: Vec<Rat> = exponents(&l, &SPoint::origin())
            .unwrap()
            .iter()
            .map(|e| e.add(&c))
            .collect();
        assert_eq!(exponents(&t, &SPoint::origin()).unwrap(), e0);
        let einf: Vec<Rat> = exponents(&l, &SPoint::Infinity)
            .unwrap()
            .iter()
            .map(|e| e.sub(&c))
            .collect();
        assert_eq!(exponents(&t, &SPoint::Infinity).unwrap(), einf);
        assert_eq!(
            exponents(&t, &SPoint::finite(rat(1))).unwrap(),
            exponents(&l, &SPoint::finite(rat(1))).unwrap()
        );
    }

    #[test]
    fn param_exponents() {
        // over ℚ(a,b): L_a at ∞ has the symbolic exponent a
        let l = make_la(&ParamElem::a());
        let e = exponents(&l, &SPoint::Infinity).unwrap();
        assert_eq!(e, vec![ParamElem::a()]);
        let e1 = exponents(&l, &SPoint::finite(ParamElem::one())).unwrap();
        assert_eq!(e1, vec![ParamElem::a().neg()]);
    }

    #[test]
    fn positivity() {
        // L_{1/2} is (1/2)-positive; L_1 has exponent −1 at z=1
        assert!(is_a_positive(&make_la(&qq(1, 2)), &qq(1, 2)).unwrap());
        let err = check_a_positive(&make_la(&rat(1)), &qq(1, 2)).unwrap_err();
        assert!(matches!(err, OpError::PositivityViolation(_)));
        // exponent −a at ∞ violates a-positivity: twist L_{1/2} so that the
        // ∞-exponent lands exactly on −a
        let a = qq(1, 3);
        let l = twist_power(&make_la(&qq(1, 2)), &qq(1, 2).add(&a));
        assert!(!is_a_positive(&l, &a).unwrap());
    }

    #[test]
    fn non_fuchsian_detected() {
        // ϑ² + z·ϑ⁰ has indicial degree 0 < 2 at ∞... build a genuinely
        // non-fuchsian example: ϑ + z (irregular at ∞)
        let l = op_from_int_layers(&[&[0, 1], &[1]]);
        assert!(!is_fuchsian(&l).unwrap());
    }

    #[test]
    fn unresolved_locus_over_q() {
        // leading coefficient 1−2z² has irrational roots
        let l = op_from_int_layers(&[&[0, 1], &[0, 0], &[0, -2]]);
        let err = singular_locus(&l).unwrap_err();
        assert!(matches!(err, OpError::UnresolvedSingularPoint(_)));
    }
}
