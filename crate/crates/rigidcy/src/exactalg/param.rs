//! The rational function field Q(a,b) of the two-parameter operator families.
//!
//! [`MPoly`] is a sparse bivariate polynomial over Q; [`ParamElem`] is a reduced
//! fraction of two of them. Gcds are computed by a primitive polynomial
//! remainder sequence in the main variable a with contents taken in Q[b], which
//! is plenty for the coefficient sizes the operator pipelines produce.

use super::field::Field;
use super::poly::Poly;
use super::rat::{rat, Rat};
use super::AlgError;
use num::{Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse polynomial in a and b over Q. Keys are (deg_a, deg_b).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    t: BTreeMap<(u32, u32), Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { t: BTreeMap::new() }
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut t = BTreeMap::new();
        if !Zero::is_zero(&r) {
            t.insert((0, 0), r);
        }
        MPoly { t }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat(n))
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn var_a() -> Self {
        Self::term(1, 0, rat(1))
    }

    pub fn var_b() -> Self {
        Self::term(0, 1, rat(1))
    }

    pub fn term(da: u32, db: u32, c: Rat) -> Self {
        let mut t = BTreeMap::new();
        if !Zero::is_zero(&c) {
            t.insert((da, db), c);
        }
        MPoly { t }
    }

    pub fn is_zero(&self) -> bool {
        self.t.is_empty()
    }

    pub fn const_val(&self) -> Option<Rat> {
        if self.t.is_empty() {
            return Some(rat(0));
        }
        if self.t.len() == 1 {
            if let Some(c) = self.t.get(&(0, 0)) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut t = self.t.clone();
        for (k, v) in &rhs.t {
            let e = t.entry(*k).or_insert_with(|| rat(0));
            *e += v;
            if Zero::is_zero(e) {
                t.remove(k);
            }
        }
        MPoly { t }
    }

    pub fn neg(&self) -> Self {
        MPoly {
            t: self.t.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut t: BTreeMap<(u32, u32), Rat> = BTreeMap::new();
        for ((a1, b1), v1) in &self.t {
            for ((a2, b2), v2) in &rhs.t {
                let k = (a1 + a2, b1 + b2);
                let e = t.entry(k).or_insert_with(|| rat(0));
                *e += v1 * v2;
            }
        }
        t.retain(|_, v| !Zero::is_zero(v));
        MPoly { t }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if Zero::is_zero(s) {
            return Self::zero();
        }
        MPoly {
            t: self.t.iter().map(|(k, v)| (*k, v * s)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute field values for a and b.
    pub fn subst<F: Field>(&self, a: &F, b: &F) -> F {
        let mut acc = F::zero();
        for ((da, db), c) in &self.t {
            let mut term = F::from_rat(c);
            for _ in 0..*da {
                term = term.mul(a);
            }
            for _ in 0..*db {
                term = term.mul(b);
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn deg_a(&self) -> u32 {
        self.t.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn deg_b(&self) -> u32 {
        self.t.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Leading term in lex order with a-major.
    fn lex_lead(&self) -> Option<((u32, u32), Rat)> {
        self.t
            .iter()
            .max_by_key(|(k, _)| **k)
            .map(|(k, v)| (*k, v.clone()))
    }

    /// Exact division; `None` if the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dk, dc) = d.lex_lead().unwrap();
        let mut f = self.clone();
        let mut q = MPoly::zero();
        while let Some((fk, fc)) = f.lex_lead() {
            if fk.0 < dk.0 || fk.1 < dk.1 {
                return None;
            }
            let t = MPoly::term(fk.0 - dk.0, fk.1 - dk.1, fc / &dc);
            q = q.add(&t);
            f = f.sub(&t.mul(d));
        }
        Some(q)
    }

    /// Coefficients as a polynomial in a over Q[b].
    fn a_coeffs(&self) -> Vec<Poly<Rat>> {
        let da = self.deg_a() as usize;
        let mut out = vec![Vec::new(); da + 1];
        for ((ea, eb), c) in &self.t {
            let v = &mut out[*ea as usize];
            if v.len() <= *eb as usize {
                v.resize(*eb as usize + 1, rat(0));
            }
            v[*eb as usize] = c.clone();
        }
        out.into_iter().map(Poly::new).collect()
    }

    fn from_a_coeffs(coeffs: &[Poly<Rat>]) -> Self {
        let mut t = BTreeMap::new();
        for (ea, p) in coeffs.iter().enumerate() {
            for (eb, c) in p.coeffs().iter().enumerate() {
                if !Zero::is_zero(c) {
                    t.insert((ea as u32, eb as u32), c.clone());
                }
            }
        }
        MPoly { t }
    }

    /// Gcd, normalised to have lex-leading coefficient 1.
    pub fn gcd(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.lex_monic();
        }
        if rhs.is_zero() {
            return self.lex_monic();
        }
        // univariate in b on both sides: one Euclid pass
        if self.deg_a() == 0 && rhs.deg_a() == 0 {
            let g = self.a_coeffs()[0].gcd(&rhs.a_coeffs()[0]);
            return MPoly::from_a_coeffs(&[g]).lex_monic();
        }
        let (fc, fp) = split_content(self);
        let (gc, gp) = split_content(rhs);
        let cont = fc.gcd(&gc);
        let prim = prs_gcd(fp, gp);
        let cont_m = MPoly::from_a_coeffs(&[cont]);
        cont_m.mul(&prim).lex_monic()
    }

    fn lex_monic(&self) -> Self {
        match self.lex_lead() {
            None => Self::zero(),
            Some((_, c)) => self.scale(&(rat(1) / c)),
        }
    }

    pub fn lcm(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        self.mul(rhs).div_exact(&self.gcd(rhs)).unwrap().lex_monic()
    }
}

/// content in Q[b] (primitive, monic-normalised) and primitive part.
fn split_content(f: &MPoly) -> (Poly<Rat>, Vec<Poly<Rat>>) {
    let coeffs = f.a_coeffs();
    let mut cont = Poly::<Rat>::zero();
    for c in &coeffs {
        cont = cont.gcd(c);
    }
    let prim: Vec<Poly<Rat>> = coeffs.iter().map(|c| c.div_exact(&cont).unwrap()).collect();
    (cont, prim)
}

/// Primitive PRS on primitive inputs, viewed in Q[b][a]. Returns the primitive
/// gcd as an MPoly.
fn prs_gcd(mut f: Vec<Poly<Rat>>, mut g: Vec<Poly<Rat>>) -> MPoly {
    loop {
        if g.iter().all(|c| c.is_zero()) {
            let (_, prim) = split_content(&MPoly::from_a_coeffs(&f));
            return MPoly::from_a_coeffs(&prim);
        }
        let r = pseudo_rem(&f, &g);
        f = g;
        g = {
            let m = MPoly::from_a_coeffs(&r);
            if m.is_zero() {
                vec![Poly::zero()]
            } else {
                let (_, prim) = split_content(&m);
                prim
            }
        };
    }
}

/// Pseudo-remainder of f by g in Q[b][a]: lead(g)^(deg f - deg g + 1) · f mod g,
/// computed without coefficient division.
fn pseudo_rem(f: &[Poly<Rat>], g: &[Poly<Rat>]) -> Vec<Poly<Rat>> {
    let deg = |v: &[Poly<Rat>]| v.iter().rposition(|c| !c.is_zero());
    let dg = deg(g).expect("pseudo_rem by zero");
    let lg = g[dg].clone();
    let mut r: Vec<Poly<Rat>> = f.to_vec();
    loop {
        let Some(dr) = deg(&r) else { return r };
        if dr < dg {
            return r;
        }
        let lr = r[dr].clone();
        // r := lg·r - lr·x^{dr-dg}·g
        for c in r.iter_mut() {
            *c = c.mul(&lg);
        }
        for j in 0..=dg {
            r[dr - dg + j] = r[dr - dg + j].sub(&lr.mul(&g[j]));
        }
        while r.len() > 1 && r.last().unwrap().is_zero() {
            r.pop();
        }
    }
}

/// Element of Q(a,b): a reduced fraction with monic (lex-leading coefficient 1)
/// denominator.
#[derive(Clone, PartialEq, Debug)]
pub struct ParamElem {
    num: MPoly,
    den: MPoly,
}

impl ParamElem {
    pub fn from_poly(num: MPoly) -> Self {
        ParamElem {
            num,
            den: MPoly::one(),
        }
    }

    pub fn from_frac(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in Q(a,b)");
        Self::reduce(num, den)
    }

    fn reduce(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return ParamElem {
                num,
                den: MPoly::one(),
            };
        }
        // constant denominator: no gcd needed
        if let Some(c) = den.const_val() {
            return ParamElem {
                num: num.scale(&(rat(1) / c)),
                den: MPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).unwrap();
        let mut den = den.div_exact(&g).unwrap();
        let (_, lc) = den.lex_lead().unwrap();
        let inv = rat(1) / lc;
        num = num.scale(&inv);
        den = den.scale(&inv);
        ParamElem { num, den }
    }

    pub fn a() -> Self {
        Self::from_poly(MPoly::var_a())
    }

    pub fn b() -> Self {
        Self::from_poly(MPoly::var_b())
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.const_val().map_or(false, |c| c == rat(1))
    }

    /// Substitute rational values; pole detection included.
    pub fn eval_rat(&self, a: &Rat, b: &Rat) -> Result<Rat, AlgError> {
        let d = self.den.subst(a, b);
        if Zero::is_zero(&d) {
            return Err(AlgError::SpecializationPole(format!(
                "denominator {} vanishes at (a,b) = ({a}, {b})",
                self.den
            )));
        }
        Ok(self.num.subst(a, b) / d)
    }

    /// Substitute values from any field.
    pub fn subst<F: Field>(&self, a: &F, b: &F) -> Result<F, AlgError> {
        let d = self.den.subst(a, b);
        match d.inv() {
            None => Err(AlgError::SpecializationPole(format!(
                "denominator {} vanishes under substitution",
                self.den
            ))),
            Some(di) => Ok(self.num.subst(a, b).mul(&di)),
        }
    }

    /// `Some((c0, ca, cb))` when the element is the affine-linear polynomial
    /// c0 + ca·a + cb·b.
    pub fn as_linear(&self) -> Option<(Rat, Rat, Rat)> {
        if !self.is_polynomial() {
            return None;
        }
        let mut c = (rat(0), rat(0), rat(0));
        for (k, v) in &self.num.t {
            match k {
                (0, 0) => c.0 = v.clone(),
                (1, 0) => c.1 = v.clone(),
                (0, 1) => c.2 = v.clone(),
                _ => return None,
            }
        }
        Some(c)
    }
}

impl Field for ParamElem {
    fn zero() -> Self {
        Self::from_poly(MPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(MPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        let num = self
            .num
            .mul(&rhs.den)
            .add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        Self::reduce(num, den)
    }
    fn neg(&self) -> Self {
        ParamElem {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        Self::reduce(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Self::reduce(self.den.clone(), self.num.clone()))
    }
    fn from_rat(r: &Rat) -> Self {
        Self::from_poly(MPoly::from_rat(r.clone()))
    }
    fn to_rat(&self) -> Option<Rat> {
        if !self.den.const_val().map_or(false, |c| c == rat(1)) {
            return None;
        }
        self.num.const_val()
    }

    // clears denominators and integer content: dividing through leaves
    // polynomial entries with overall content 1, first nonzero lex-positive
    fn content_unit(coeffs: &[Self]) -> Self {
        let nonzero: Vec<&Self> = coeffs.iter().filter(|c| !c.is_zero()).collect();
        if nonzero.is_empty() {
            return Self::one();
        }
        let mut den_lcm = MPoly::one();
        for c in &nonzero {
            den_lcm = den_lcm.lcm(&c.den);
        }
        let cleared: Vec<MPoly> = nonzero
            .iter()
            .map(|c| c.num.mul(&den_lcm.div_exact(&c.den).unwrap()))
            .collect();
        let mut g = MPoly::zero();
        for c in &cleared {
            g = g.gcd(c);
        }
        // align integer content, and sign by the lex-leading coefficient of the
        // first nonzero entry so the normalised slice leads positively
        let flat: Vec<Rat> = cleared
            .iter()
            .flat_map(|c| {
                c.div_exact(&g)
                    .unwrap()
                    .t
                    .values()
                    .cloned()
                    .collect::<Vec<_>>()
            })
            .collect();
        let ru = <Rat as Field>::content_unit(&flat).abs();
        let lead = cleared[0].div_exact(&g).unwrap();
        let (_, lc) = lead.lex_lead().unwrap();
        let sign = if lc.is_negative() { -rat(1) } else { rat(1) };
        Self::from_frac(g.scale(&(ru * sign)), den_lcm)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // descending lex, a-major
        for (k, v) in self.t.iter().rev() {
            let neg = v.is_negative();
            let mag = v.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let vars = match k {
                (0, 0) => String::new(),
                (1, 0) => "a".into(),
                (0, 1) => "b".into(),
                (ea, 0) => format!("a^{ea}"),
                (0, eb) => format!("b^{eb}"),
                (1, 1) => "a*b".into(),
                (ea, 1) => format!("a^{ea}*b"),
                (1, eb) => format!("a*b^{eb}"),
                (ea, eb) => format!("a^{ea}*b^{eb}"),
            };
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == rat(1) {
                write!(f, "{vars}")?;
            } else {
                write!(f, "{mag}*{vars}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for ParamElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        let num = format!("{}", self.num);
        let den = format!("{}", self.den);
        let wrap = |s: String| {
            if s.contains(' ') || s.starts_with('-') || s.contains('*') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(num), wrap(den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::qq;

    fn a() -> ParamElem {
        ParamElem::a()
    }
    fn b() -> ParamElem {
        ParamElem::b()
    }

    #[test]
    fn fraction_reduction() {
        // (a^2-b^2)/(a-b) = a+b
        let num = MPoly::var_a().pow(2).sub(&MPoly::var_b().pow(2));
        let den = MPoly::var_a().sub(&MPoly::var_b());
        let e = ParamElem::from_frac(num, den);
        assert!(e.is_polynomial());
        assert_eq!(e, a().add(&b()));
    }

    #[test]
    fn field_axioms_spotcheck() {
        let x = a().mul(&b()).add(&ParamElem::from_rat(&qq(1, 2)));
        let y = x.inv().unwrap();
        assert!(x.mul(&y).is_one());
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn gcd_with_content() {
        // gcd(b·(a+b)^2, b^2·(a+b)) = b·(a+b)
        let f = MPoly::var_b().mul(&MPoly::var_a().add(&MPoly::var_b()).pow(2));
        let g = MPoly::var_b().pow(2).mul(&MPoly::var_a().add(&MPoly::var_b()));
        let d = f.gcd(&g);
        assert_eq!(d, MPoly::var_b().mul(&MPoly::var_a().add(&MPoly::var_b())));
    }

    #[test]
    fn substitution_and_poles() {
        let e = a().div(&a().sub(&b())).unwrap();
        assert_eq!(e.eval_rat(&qq(3, 1), &qq(1, 1)).unwrap(), qq(3, 2));
        assert!(matches!(
            e.eval_rat(&qq(1, 1), &qq(1, 1)),
            Err(AlgError::SpecializationPole(_))
        ));
    }

    #[test]
    fn linear_extraction() {
        let e = ParamElem::from_rat(&qq(3, 4))
            .add(&a().mul(&ParamElem::from_rat(&qq(-1, 1))))
            .add(&b());
        assert_eq!(e.as_linear(), Some((qq(3, 4), qq(-1, 1), qq(1, 1))));
        assert_eq!(a().mul(&b()).as_linear(), None);
    }

    #[test]
    fn display_forms() {
        let e = a().pow(2).unwrap().sub(&b().mul(&ParamElem::from_rat(&qq(3, 2))));
        assert_eq!(format!("{e}"), "a^2 - 3/2*b");
    }
}
