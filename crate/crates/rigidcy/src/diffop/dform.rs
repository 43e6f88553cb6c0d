//! The ∂-presentation L = Σ_j A_j(z) ∂ʲ and the formal dual.
//!
//! The basis change uses the falling factorials ϑ(ϑ−1)⋯(ϑ−j+1) = zʲ∂ʲ: a
//! ϑ-layer decomposes into falling-factorial coordinates by repeated
//! synthetic division, and each zⁱ·zʲ∂ʲ lands in A_j. Coming back, a term
//! a·zᵏ∂ʲ is z^{k−j} times a falling factorial; a global left factor zᴺ
//! clears negative powers and does not change the solution space.

use super::ratfunc::RatFunc;
use super::{DiffOp, OpError};
use crate::exactalg::{binom, rat, Field, Poly};

/// Coefficients of the ∂-presentation: index j holds A_j(z).
pub type DForm<F> = Vec<Poly<F>>;

/// ϑ(ϑ−1)⋯(ϑ−j+1), the ϑ-form of zʲ∂ʲ.
fn falling<F: Field>(j: usize) -> Poly<F> {
    let mut p = Poly::one();
    for t in 0..j {
        p = p.mul(&Poly::x_plus(F::from_int(-(t as i64))));
    }
    p
}

/// Convert to the ∂-presentation. A_n is never identically zero.
pub fn to_d_form<F: Field>(l: &DiffOp<F>) -> DForm<F> {
    let n = l.deg();
    let mut a = vec![Poly::zero(); n + 1];
    for (i, p) in l.layers().iter().enumerate() {
        // falling-factorial coordinates of P_i by synthetic division at 0,1,2,…
        let mut q = p.clone();
        let mut j = 0usize;
        while !q.is_zero() {
            let (next, rem) = q
                .divrem(&Poly::x_plus(F::from_int(-(j as i64))))
                .expect("linear divisor");
            let c = rem.coeff(0);
            if !c.is_zero() {
                a[j] = a[j].add(&Poly::constant(c).shl(i + j));
            }
            q = next;
            j += 1;
        }
    }
    a
}

/// Convert back from the ∂-presentation, multiplying by the smallest power of
/// z on the left that keeps all exponents nonnegative.
pub fn from_d_form<F: Field>(a: &[Poly<F>]) -> DiffOp<F> {
    let mut deficit = 0i64;
    for (j, q) in a.iter().enumerate() {
        for k in 0..q.coeffs().len() {
            if !q.coeff(k).is_zero() {
                deficit = deficit.max(j as i64 - k as i64);
            }
        }
    }
    let mut layers: Vec<Poly<F>> = Vec::new();
    for (j, q) in a.iter().enumerate() {
        let ff = falling::<F>(j);
        for k in 0..q.coeffs().len() {
            let c = q.coeff(k);
            if c.is_zero() {
                continue;
            }
            let idx = (k as i64 - j as i64 + deficit) as usize;
            if layers.len() <= idx {
                layers.resize(idx + 1, Poly::zero());
            }
            layers[idx] = layers[idx].add(&ff.scale(&c));
        }
    }
    DiffOp::from_layers(layers)
}

/// The monic ∂-coefficients r_i = A_i/A_n of L = A_n(∂ⁿ + Σ_{i<n} r_i ∂ⁱ).
pub fn monic_d_coeffs<F: Field>(l: &DiffOp<F>) -> Result<Vec<RatFunc<F>>, OpError> {
    if l.is_zero() {
        return Err(OpError::LeadingCoefficientVanishes);
    }
    let a = to_d_form(l);
    let an = RatFunc::from_poly(a.last().expect("nonempty").clone());
    let inv = an.inv().ok_or(OpError::LeadingCoefficientVanishes)?;
    Ok(a[..a.len() - 1]
        .iter()
        .map(|q| RatFunc::from_poly(q.clone()).mul(&inv))
        .collect())
}

/// Clear denominators of a ∂-coefficient vector into z-polynomials.
fn clear_denominators<F: Field>(bs: &[RatFunc<F>]) -> Vec<Poly<F>> {
    let mut l = Poly::one();
    for b in bs {
        if b.is_zero() {
            continue;
        }
        let g = l.gcd(b.den());
        l = l.mul(&b.den().div_exact(&g).expect("gcd divides"));
    }
    bs.iter()
        .map(|b| {
            b.num()
                .mul(&l.div_exact(b.den()).expect("lcm clears the denominator"))
        })
        .collect()
}

/// The formal dual L* = ∂ⁿ + Σ_{i<n} (−1)^{n+i} ∂ⁱ ∘ r_i of the monic form,
/// returned reduced in the ϑ-presentation.
pub fn dual_op<F: Field>(l: &DiffOp<F>) -> Result<DiffOp<F>, OpError> {
    let rs = monic_d_coeffs(l)?;
    let n = rs.len();
    let mut b = vec![RatFunc::<F>::zero(); n + 1];
    b[n] = RatFunc::one();
    for (i, r) in rs.iter().enumerate() {
        let sign = if (n + i) % 2 == 1 {
            RatFunc::one().neg()
        } else {
            RatFunc::one()
        };
        // ∂ⁱ∘r = Σ_k C(i,k) r⁽ᵏ⁾ ∂^{i−k}
        let mut dk = r.clone();
        for k in 0..=i {
            let coef = RatFunc::from_rat(&binom(&rat(i as i64), k));
            b[i - k] = b[i - k].add(&sign.mul(&coef).mul(&dk));
            dk = dk.derivative();
        }
    }
    Ok(from_d_form(&clear_denominators(&b)).reduce())
}

/// Monic ∂-coefficients of the conjugate L(∂ ↦ ∂+c) of a monic operator
/// given by its lower coefficients rs (so L = ∂ⁿ + Σ rs[i] ∂ⁱ).
pub fn conj_monic_d_coeffs<F: Field>(rs: &[RatFunc<F>], c: &RatFunc<F>) -> Vec<RatFunc<F>> {
    let n = rs.len();
    // u[k] holds the ∂-coefficients of (∂+c)ᵏ
    let mut u: Vec<Vec<RatFunc<F>>> = vec![vec![RatFunc::one()]];
    for k in 0..n {
        let prev = &u[k];
        let mut next = vec![RatFunc::zero(); k + 2];
        for (j, w) in prev.iter().enumerate() {
            next[j + 1] = next[j + 1].add(w);
            next[j] = next[j].add(&w.derivative()).add(&c.mul(w));
        }
        u.push(next);
    }
    let mut out = vec![RatFunc::zero(); n];
    for j in 0..n {
        out[j] = u[n][j].clone();
        for (i, r) in rs.iter().enumerate() {
            if j <= i {
                out[j] = out[j].add(&r.mul(&u[i][j]));
            }
        }
    }
    out
}
