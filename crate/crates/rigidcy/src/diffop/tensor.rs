//! Tensor, symmetric, and exterior powers of operators.
//!
//! A degree-n operator presents a module with basis e₀,…,e_{n−1} (the classes
//! of y, ϑy, …) over the rational functions in z, with ϑe_{n−1} read off the
//! monic relation. Products y₁y₂, powers yᵏ, and ϑ-Wronskians of solutions
//! are start vectors in the tensor/Sym/Λ modules; iterating ϑ and taking the
//! first linear dependence over the rational-function field yields the
//! reduced annihilator of minimal degree.

use super::ratfunc::RatFunc;
use super::DiffOp;
use crate::exactalg::{Field, Mat, Poly};

/// ϑe_{n−1} = Σ ρ_k e_k for the module of L.
fn module_relation<F: Field>(l: &DiffOp<F>) -> Vec<RatFunc<F>> {
    let a = l.theta_coeffs();
    let an = a.last().expect("nonzero operator").clone();
    a[..a.len() - 1]
        .iter()
        .map(|ak| RatFunc::from_frac(ak.neg(), an.clone()).expect("leading coefficient nonzero"))
        .collect()
}

/// The matrix of ϑ on the basis e₀,…,e_{n−1}, columns indexed by source.
fn theta_matrix<F: Field>(l: &DiffOp<F>) -> Mat<RatFunc<F>> {
    let rho = module_relation(l);
    let n = rho.len();
    let mut m = Mat::zeros(n, n);
    for i in 0..n.saturating_sub(1) {
        *m.at_mut(i + 1, i) = RatFunc::one();
    }
    for (k, r) in rho.iter().enumerate() {
        *m.at_mut(k, n - 1) = m.at(k, n - 1).add(r);
    }
    m
}

/// One ϑ-step on a coefficient vector: z·d/dz on the coefficients plus the
/// module action.
fn theta_step<F: Field>(a: &Mat<RatFunc<F>>, v: &[RatFunc<F>]) -> Vec<RatFunc<F>> {
    let mut out = a.mul_vec(v);
    for (o, w) in out.iter_mut().zip(v) {
        *o = o.add(&w.theta_derivative());
    }
    out
}

/// Iterate ϑ from the start vector until the first linear dependence, and
/// return the reduced annihilator it encodes.
fn cyclic_annihilator<F: Field>(a: &Mat<RatFunc<F>>, start: Vec<RatFunc<F>>) -> DiffOp<F> {
    let dim = start.len();
    let mut vs: Vec<Vec<RatFunc<F>>> = vec![start];
    loop {
        let next = theta_step(a, vs.last().unwrap());
        let d = vs.len();
        let m = Mat::from_fn(dim, d, |i, j| vs[j][i].clone());
        let b = Mat::from_vec(dim, 1, next.clone());
        if let Some(x) = m.solve(&b) {
            // ϑᵈ(start) = Σ x_j ϑʲ(start)
            let mut coeffs: Vec<RatFunc<F>> = (0..d).map(|j| x.at(j, 0).neg()).collect();
            coeffs.push(RatFunc::one());
            return op_from_ratfunc_coeffs(&coeffs);
        }
        assert!(d < dim, "dependence must occur within the module rank");
        vs.push(next);
    }
}

/// Assemble Σ c_j(z) ϑʲ from rational-function coefficients: clear the
/// denominators and reduce.
fn op_from_ratfunc_coeffs<F: Field>(cs: &[RatFunc<F>]) -> DiffOp<F> {
    let mut lcm = Poly::one();
    for c in cs {
        if c.is_zero() {
            continue;
        }
        let g = lcm.gcd(c.den());
        lcm = lcm.mul(&c.den().div_exact(&g).expect("gcd divides"));
    }
    let cleared: Vec<Poly<F>> = cs
        .iter()
        .map(|c| {
            c.num()
                .mul(&lcm.div_exact(c.den()).expect("lcm clears the denominator"))
        })
        .collect();
    DiffOp::from_theta_coeffs(&cleared).reduce()
}

/// Nondecreasing index tuples of length k over 0..n (the Symᵏ basis).
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..n {
            cur.push(i);
            rec(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Strictly increasing index tuples of length k over 0..n (the Λᵏ basis).
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Sort an exterior tuple, tracking the sign; None on a repeated index.
fn ext_canon(mut t: Vec<usize>) -> Option<(Vec<usize>, bool)> {
    let mut neg = false;
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j] < t[j - 1] {
            t.swap(j, j - 1);
            neg = !neg;
            j -= 1;
        }
    }
    if t.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((t, neg))
}

fn index_of(basis: &[Vec<usize>], t: &[usize]) -> usize {
    basis.iter().position(|b| b == t).expect("canonical tuple")
}

/// The minimal operator whose solutions contain all products y₁y₂.
pub fn tensor_op<F: Field>(l1: &DiffOp<F>, l2: &DiffOp<F>) -> DiffOp<F> {
    assert!(l1.deg() >= 1 && l2.deg() >= 1, "tensor factors must be of positive degree");
    let a1 = theta_matrix(l1);
    let a2 = theta_matrix(l2);
    let (n1, n2) = (l1.deg(), l2.deg());
    let a = a1
        .kron(&Mat::identity(n2))
        .add(&Mat::identity(n1).kron(&a2));
    let mut start = vec![RatFunc::zero(); n1 * n2];
    start[0] = RatFunc::one();
    cyclic_annihilator(&a, start)
}

/// The minimal operator whose solutions contain all powers yᵏ.
pub fn sym_pow_op<F: Field>(l: &DiffOp<F>, k: usize) -> DiffOp<F> {
    assert!(l.deg() >= 1 && k >= 1, "symmetric power needs positive degree and exponent");
    let n = l.deg();
    let rho = module_relation(l);
    let basis = multisets(n, k);
    let dim = basis.len();
    let mut a: Mat<RatFunc<F>> = Mat::zeros(dim, dim);
    for (c, t) in basis.iter().enumerate() {
        for s in 0..k {
            if t[s] + 1 < n {
                let mut u = t.clone();
                u[s] += 1;
                u.sort_unstable();
                let r = index_of(&basis, &u);
                *a.at_mut(r, c) = a.at(r, c).add(&RatFunc::one());
            } else {
                for (idx, rk) in rho.iter().enumerate() {
                    if rk.is_zero() {
                        continue;
                    }
                    let mut u = t.clone();
                    u[s] = idx;
                    u.sort_unstable();
                    let r = index_of(&basis, &u);
                    *a.at_mut(r, c) = a.at(r, c).add(rk);
                }
            }
        }
    }
    let mut start = vec![RatFunc::zero(); dim];
    start[index_of(&basis, &vec![0; k])] = RatFunc::one();
    cyclic_annihilator(&a, start)
}

/// The minimal operator whose solutions contain all k-fold ϑ-Wronskians of
/// solutions of L.
pub fn ext_pow_op<F: Field>(l: &DiffOp<F>, k: usize) -> DiffOp<F> {
    let n = l.deg();
    assert!((1..=n).contains(&k), "exterior power exponent out of range");
    let rho = module_relation(l);
    let basis = subsets(n, k);
    let dim = basis.len();
    let mut a: Mat<RatFunc<F>> = Mat::zeros(dim, dim);
    for (c, t) in basis.iter().enumerate() {
        for s in 0..k {
            if t[s] + 1 < n {
                let mut u = t.clone();
                u[s] += 1;
                let Some((u, neg)) = ext_canon(u) else { continue };
                let r = index_of(&basis, &u);
                let one = if neg { RatFunc::one().neg() } else { RatFunc::one() };
                *a.at_mut(r, c) = a.at(r, c).add(&one);
            } else {
                for (idx, rk) in rho.iter().enumerate() {
                    if rk.is_zero() {
                        continue;
                    }
                    let mut u = t.clone();
                    u[s] = idx;
                    let Some((u, neg)) = ext_canon(u) else { continue };
                    let r = index_of(&basis, &u);
                    let term = if neg { rk.neg() } else { rk.clone() };
                    *a.at_mut(r, c) = a.at(r, c).add(&term);
                }
            }
        }
    }
    let mut start = vec![RatFunc::zero(); dim];
    start[index_of(&basis, &(0..k).collect::<Vec<_>>())] = RatFunc::one();
    cyclic_annihilator(&a, start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::{hadamard_full, make_la, op_from_int_layers, twist_power};
    use crate::exactalg::{qq, Rat};

    fn hyp2() -> DiffOp<Rat> {
        hadamard_full(&make_la(&qq(1, 2)), &qq(1, 3))
    }

    #[test]
    fn tensor_of_rank_ones() {
        // (1−z)^{−a} · (1−z)^{−b} spans the solutions of L_{a+b}
        let t = tensor_op(&make_la(&qq(1, 3)), &make_la(&qq(1, 5)));
        assert_eq!(t, make_la(&qq(8, 15)).reduce());
    }

    #[test]
    fn tensor_with_power_is_twist() {
        // ϑ−c annihilates z^c, so tensoring multiplies solutions by z^c
        let l = hyp2();
        let c = qq(2, 7);
        let zc = DiffOp::from_layers(vec![Poly::x_plus(c.neg())]);
        assert_eq!(tensor_op(&l, &zc), twist_power(&l, &c).reduce());
    }

    #[test]
    fn sym_square_degree() {
        let s = sym_pow_op(&hyp2(), 2);
        assert_eq!(s.deg(), 3);
        // first power is the operator itself
        assert_eq!(sym_pow_op(&hyp2(), 1), hyp2().reduce());
    }

    #[test]
    fn ext_square_of_second_order() {
        // the Wronskian of a second-order operator satisfies a first-order one
        let w = ext_pow_op(&hyp2(), 2);
        assert_eq!(w.deg(), 1);
        assert_eq!(ext_pow_op(&hyp2(), 1), hyp2().reduce());
    }

    #[test]
    fn degree_bound() {
        let l1 = op_from_int_layers(&[&[1, 3, 1], &[0, 2]]).reduce();
        let l2 = hyp2();
        let t = tensor_op(&l1, &l2);
        assert!(t.deg() <= l1.deg() * l2.deg());
        // generic product of a rank-1 and rank-2 module fills the bound
        assert_eq!(tensor_op(&make_la(&qq(1, 3)), &l2).deg(), 2);
    }

}
