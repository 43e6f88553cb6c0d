//! Dense univariate polynomials over a generic exact field.

use super::field::Field;
use super::rat::{is_integer, rat, Rat};
use num::{Signed, Zero};
use std::fmt;

/// Polynomial with coefficients `c[i]` of `x^i`; `c` never has a trailing zero,
/// and the zero polynomial is the empty vector.
#[derive(Clone, PartialEq)]
pub struct Poly<F: Field> {
    c: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut c: Vec<F>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { c: vec![F::one()] }
    }

    pub fn constant(a: F) -> Self {
        Self::new(vec![a])
    }

    pub fn x() -> Self {
        Poly {
            c: vec![F::zero(), F::one()],
        }
    }

    /// x + c
    pub fn x_plus(a: F) -> Self {
        Self::new(vec![a, F::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.c.last()
    }

    pub fn coeff(&self, i: usize) -> F {
        self.c.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.c.len().max(rhs.c.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            c: self.c.iter().map(|x| x.neg()).collect(),
        }
    }

    pub fn scale(&self, a: &F) -> Self {
        Self::new(self.c.iter().map(|x| x.mul(a)).collect())
    }

    /// Multiply by x^k.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![F::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut c = vec![F::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Self::new(c)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(a);
        }
        acc
    }

    /// Composition with x ↦ x + t (Taylor shift), via Horner on the coefficients.
    pub fn shift(&self, t: &F) -> Self {
        let mut acc = Self::zero();
        let xt = Self::x_plus(t.clone());
        for a in self.c.iter().rev() {
            acc = acc.mul(&xt).add(&Self::constant(a.clone()));
        }
        acc
    }

    /// Composition with x ↦ -x.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .map(|(i, a)| if i % 2 == 0 { a.clone() } else { a.neg() })
                .collect(),
        )
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.c[1..]
                .iter()
                .enumerate()
                .map(|(i, a)| a.mul(&F::from_int(i as i64 + 1)))
                .collect(),
        )
    }

    pub fn from_roots(roots: &[F]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, r| acc.mul(&Self::x_plus(r.neg())))
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn divrem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.deg()?;
        let lead_inv = d.leading().unwrap().inv().expect("nonzero leading coeff");
        let mut rem = self.clone();
        let mut quo = vec![F::zero(); self.c.len().saturating_sub(dd)];
        while let Some(rd) = rem.deg() {
            if rd < dd {
                break;
            }
            let q = rem.leading().unwrap().mul(&lead_inv);
            let k = rd - dd;
            quo[k] = q.clone();
            // rem -= q x^k d, done in place
            let mut c = rem.c;
            for (j, b) in d.c.iter().enumerate() {
                c[k + j] = c[k + j].sub(&q.mul(b));
            }
            rem = Self::new(c);
        }
        Some((Self::new(quo), rem))
    }

    /// Exact quotient, `None` if the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d)?;
        r.is_zero().then_some(q)
    }

    /// Divide by (x - r), `None` if r is not a root.
    pub fn div_linear_root(&self, r: &F) -> Option<Self> {
        self.div_exact(&Self::x_plus(r.neg()))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coeff")),
        }
    }

    /// Divide through by the field's content unit (coprime integers over Q,
    /// monic normalisation over function fields).
    pub fn normalize_content(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let u = F::content_unit(&self.c);
        self.scale(&u.inv().expect("content unit is nonzero"))
    }

    /// Extended Euclid: returns (g, u, v) with u·self + v·rhs = g. No
    /// normalisation is applied to g.
    pub fn egcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).unwrap();
            (r0, r1) = (r1, r);
            (s0, s1) = (s1.clone(), s0.sub(&q.mul(&s1)));
            (t0, t1) = (t1.clone(), t0.sub(&q.mul(&t1)));
        }
        (r0, s0, t0)
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).unwrap().1;
            a = b;
            // Renormalising each remainder keeps coefficient growth in check for
            // the nested fields (cyclotomics, Q(a,b)).
            b = r.normalize_content();
        }
        a.monic()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.c.iter().map(f).collect())
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let s = format!("{a}");
            // A displayed sum or difference is carried whole (in parentheses
            // once anything else is around); only a simple leading minus is
            // folded into the join.
            let composite = s.len() > 1 && s[1..].contains(['+', '-']);
            let (sign, mag) = if composite {
                ("+", s)
            } else {
                match s.strip_prefix('-') {
                    Some(rest) => ("-", rest.to_string()),
                    None => ("+", s),
                }
            };
            let mag = if composite && (i > 0 || !out.is_empty()) {
                format!("({mag})")
            } else {
                mag
            };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            let is_one = mag == "1";
            match (i, is_one) {
                (0, _) => out.push_str(&mag),
                (_, true) => {}
                (_, false) => {
                    out.push_str(&mag);
                    out.push('*');
                }
            }
            if i == 1 {
                out.push_str(var);
            } else if i > 1 {
                out.push_str(&format!("{var}^{i}"));
            }
        }
        out
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x"))
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x"))
    }
}

/// Roots of `p` among `candidates`, with multiplicities found by deflation.
/// Candidates are tried in the given order; duplicates are harmless.
pub fn roots_from_candidates<F: Field>(p: &Poly<F>, candidates: &[F]) -> Vec<(F, usize)> {
    let mut p = p.clone();
    let mut out: Vec<(F, usize)> = Vec::new();
    for r in candidates {
        if out.iter().any(|(s, _)| s == r) {
            continue;
        }
        let mut mult = 0;
        while let Some(q) = p.div_linear_root(r) {
            mult += 1;
            p = q;
        }
        if mult > 0 {
            out.push((r.clone(), mult));
        }
    }
    out
}

/// All rational roots of a rational polynomial, with multiplicity, by the
/// rational root theorem applied to the integer-normalised coefficients.
pub fn rational_roots(p: &Poly<Rat>) -> Vec<(Rat, usize)> {
    if p.is_zero() || p.deg() == Some(0) {
        return Vec::new();
    }
    let q = p.normalize_content();
    // Trailing zeros give roots at 0; the multiplicity is recovered by the
    // deflation in `roots_from_candidates`.
    let mut coeffs: Vec<Rat> = q.coeffs().to_vec();
    while coeffs.first().map_or(false, |c| Zero::is_zero(c)) {
        coeffs.remove(0);
    }
    let core = Poly::new(coeffs);
    let mut candidates = vec![rat(0)];
    if let Some(d) = core.deg() {
        if d >= 1 {
            let a0 = core.coeff(0);
            let an = core.coeff(d);
            debug_assert!(is_integer(&a0) && is_integer(&an));
            let p_divs = divisors_of_big(a0.numer());
            let q_divs = divisors_of_big(an.numer());
            for pn in &p_divs {
                for qd in &q_divs {
                    let c = Rat::new(pn.clone(), qd.clone());
                    candidates.push(c.clone());
                    candidates.push(-c);
                }
            }
        }
    }
    roots_from_candidates(p, &candidates)
}

fn divisors_of_big(n: &num::BigInt) -> Vec<num::BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![num::BigInt::from(1)];
    }
    let mut out = Vec::new();
    let mut d = num::BigInt::from(1);
    // Trial division up to |n|; constants in our indicial polynomials stay small
    // enough that this never hurts, but cap the scan to keep it honest.
    let cap = num::BigInt::from(100_000u32);
    while &d * &d <= n && d <= cap {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::qq;

    fn p(coeffs: &[i64]) -> Poly<Rat> {
        Poly::new(coeffs.iter().map(|&n| rat(n)).collect())
    }

    #[test]
    fn arithmetic_and_division() {
        let a = p(&[1, 2, 1]); // (x+1)^2
        let b = p(&[1, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q, b);
        assert!(r.is_zero());
        assert_eq!(a.div_linear_root(&rat(-1)), Some(b.clone()));
        assert_eq!(a.div_linear_root(&rat(1)), None);
        assert_eq!(a.eval(&rat(2)), rat(9));
    }

    #[test]
    fn taylor_shift() {
        // (x+3)^2 = x^2 + 6x + 9
        let a = p(&[0, 0, 1]).shift(&rat(3));
        assert_eq!(a, p(&[9, 6, 1]));
        assert_eq!(p(&[0, 1]).reflect(), p(&[0, -1]));
    }

    #[test]
    fn gcds() {
        let a = p(&[-1, 0, 1]); // x^2-1
        let b = p(&[1, 2, 1]); // (x+1)^2
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(a.gcd(&Poly::zero()), a.monic());
    }

    #[test]
    fn root_finding() {
        // (2x-1)(3x+1)(x+1)
        let f = p(&[-1, 2]).mul(&p(&[1, 3])).mul(&p(&[1, 1]));
        let mut roots = rational_roots(&f);
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(
            roots,
            vec![(rat(-1), 1), (qq(-1, 3), 1), (qq(1, 2), 1)]
        );
        // multiplicity via deflation
        let g = p(&[1, 1]).pow(3).mul(&p(&[0, 1]));
        let roots = rational_roots(&g);
        assert!(roots.contains(&(rat(0), 1)) && roots.contains(&(rat(-1), 3)));
    }

    #[test]
    fn display_round() {
        assert_eq!(p(&[-1, 0, 2]).display_with("t"), "2*t^2 - 1");
        assert_eq!(p(&[0, 1]).display_with("t"), "t");
        assert_eq!(Poly::<Rat>::zero().display_with("t"), "0");
    }
}
