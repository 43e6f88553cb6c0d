//! Jordan data of quasi-unipotent matrices.
//!
//! Monodromy matrices of geometric origin have all eigenvalues roots of unity,
//! which makes exact Jordan classification possible without any general
//! algebraic-number factorisation: the Galois norm of the characteristic
//! polynomial down to Q[x] must be a product of cyclotomic polynomials, each
//! primitive d-th root of unity is then tested directly as an eigenvalue, and
//! the block structure falls out of the rank sequence of powers of T - ρ.

use super::cyclo::{cyclotomic_poly, CycloNum};
use super::field::Field;
use super::matrix::Mat;
use super::poly::Poly;
use super::rat::Rat;
use super::AlgError;

/// Jordan blocks as (eigenvalue, size) pairs, canonically sorted.
pub type JordanBlocks = Vec<(CycloNum, usize)>;

/// Eigenvalue orders are searched up to this bound. Generously above anything
/// a rank-4 symplectic tuple with quasi-unipotent local data can produce.
const MAX_CYCLO_ORDER: u32 = 120;

/// Jordan data of a matrix all of whose eigenvalues are roots of unity.
/// Fails with `NonCyclotomicFactor` otherwise.
pub fn jordan_form(t: &Mat<CycloNum>) -> Result<JordanBlocks, AlgError> {
    assert!(t.is_square());
    let n = t.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let cp = t.char_poly();
    let cond = cp
        .coeffs()
        .iter()
        .fold(1u64, |acc, c| num::integer::lcm(acc, c.conductor() as u64)) as u32;
    // Galois norm: the product over σ ∈ Gal(Q(ζ_cond)/Q) of σ(char poly) has
    // rational coefficients and the same root-of-unity content.
    let norm: Poly<Rat> = if cond == 1 {
        cp.map(|c| c.to_rat().unwrap())
    } else {
        let mut prod: Poly<CycloNum> = Poly::one();
        for k in 1..=cond {
            if num::integer::gcd(k as u64, cond as u64) == 1 {
                prod = prod.mul(&cp.map(|c| c.galois(k)));
            }
        }
        prod.map(|c| c.to_rat().expect("Galois norm is rational"))
    };

    let mut rem = norm;
    let mut orders: Vec<u32> = Vec::new();
    for d in 1..=MAX_CYCLO_ORDER {
        if rem.deg() == Some(0) {
            break;
        }
        let phi = cyclotomic_poly(d);
        let mut divided = false;
        while let Some(q) = rem.div_exact(&phi) {
            rem = q;
            divided = true;
        }
        if divided {
            orders.push(d);
        }
    }
    if rem.deg().unwrap_or(0) > 0 {
        return Err(AlgError::NonCyclotomicFactor(rem.display_with("x")));
    }

    let mut blocks: JordanBlocks = Vec::new();
    let mut total = 0usize;
    for d in orders {
        for k in 0..d.max(1) {
            if d > 1 && (k == 0 || num::integer::gcd(k as u64, d as u64) != 1) {
                continue;
            }
            if d == 1 && k > 0 {
                continue;
            }
            let rho = CycloNum::root_of_unity(k as i64, d);
            let m = t.sub(&Mat::identity(n).scale(&rho));
            let r1 = m.rank();
            if r1 == n {
                // a Galois conjugate of a true eigenvalue, not one itself
                continue;
            }
            // rank sequence r_j = rank((T-ρ)^j); number of blocks of size j is
            // r_{j-1} - 2 r_j + r_{j+1}
            let mut ranks = vec![n, r1];
            let mut pw = m.clone();
            while ranks[ranks.len() - 1] != ranks[ranks.len() - 2] {
                pw = pw.mul(&m);
                ranks.push(pw.rank());
            }
            for j in 1..ranks.len() - 1 {
                let v = (ranks[j - 1] - ranks[j]) - (ranks[j] - ranks[j + 1]);
                for _ in 0..v {
                    blocks.push((rho.clone(), j));
                    total += j;
                }
            }
        }
    }
    if total != n {
        return Err(AlgError::NonCyclotomicFactor(
            "eigenvalue multiplicities do not fill the space".into(),
        ));
    }
    blocks.sort_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
    Ok(blocks)
}

/// Single Jordan block J(size) with the given eigenvalue.
pub fn jordan_block<F: Field>(eig: &F, size: usize) -> Mat<F> {
    let mut m = Mat::zeros(size, size);
    for i in 0..size {
        *m.at_mut(i, i) = eig.clone();
        if i + 1 < size {
            *m.at_mut(i, i + 1) = F::one();
        }
    }
    m
}

/// Block-diagonal matrix realising the given Jordan data.
pub fn jordan_matrix<F: Field>(blocks: &[(F, usize)]) -> Mat<F> {
    let n: usize = blocks.iter().map(|(_, s)| s).sum();
    let mut m = Mat::zeros(n, n);
    let mut off = 0;
    for (eig, size) in blocks {
        let b = jordan_block(eig, *size);
        for i in 0..*size {
            for j in 0..*size {
                *m.at_mut(off + i, off + j) = b.at(i, j).clone();
            }
        }
        off += size;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(k: i64) -> CycloNum {
        CycloNum::from_int(k)
    }

    #[test]
    fn rational_jordan() {
        // J(2) at 1 ⊕ J(1) at -1, hidden by conjugation
        let j = jordan_matrix(&[(c(1), 2), (c(-1), 1)]);
        let s = Mat::from_rows(vec![
            vec![c(1), c(2), c(0)],
            vec![c(1), c(1), c(1)],
            vec![c(0), c(1), c(3)],
        ]);
        let t = s.mul(&j).mul(&s.inverse().unwrap());
        let blocks = jordan_form(&t).unwrap();
        assert_eq!(blocks, vec![(c(-1), 1), (c(1), 2)]);
    }

    #[test]
    fn cyclotomic_eigenvalues() {
        let z = CycloNum::zeta(5);
        let j = jordan_matrix(&[(z.clone(), 1), (z.pow_i(-1).unwrap(), 1), (c(1), 2)]);
        let blocks = jordan_form(&j).unwrap();
        assert_eq!(blocks.len(), 3);
        assert!(blocks.contains(&(c(1), 2)));
        assert!(blocks.contains(&(z, 1)));
        // the Galois conjugates ζ_5^2, ζ_5^3 are *not* eigenvalues
        assert_eq!(blocks.iter().map(|(_, s)| s).sum::<usize>(), 4);
    }

    #[test]
    fn non_quasi_unipotent_detected() {
        let t = Mat::from_rows(vec![vec![c(2), c(0)], vec![c(0), c(1)]]);
        assert!(matches!(
            jordan_form(&t),
            Err(AlgError::NonCyclotomicFactor(_))
        ));
    }
}
