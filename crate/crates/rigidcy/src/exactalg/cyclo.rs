//! Cyclotomic numbers in power-basis representation.
//!
//! An element of Q(ζ_n) is stored as its coordinate vector in the basis
//! 1, ζ, …, ζ^{φ(n)-1} modulo the n-th cyclotomic polynomial, and every
//! constructor and arithmetic result is *canonicalised*: the conductor n is
//! minimal for the element (so rationals always sit at n = 1), and n ≢ 2 mod 4
//! (Q(ζ_{2m}) = Q(ζ_m) for odd m). With the representation canonical, equality
//! is plain structural equality.
//!
//! Minimality is restored by prime descent: for each prime p | n the fixed
//! field of K = {σ_k : k ≡ 1 mod n/p} is exactly Q(ζ_{n/p}), and K is cyclic,
//! so a single automorphism test decides whether the element drops to the
//! subfield; if it does, one small linear solve rewrites it in the ζ_{n/p}
//! power basis and the descent repeats. An element whose conductor is a proper
//! divisor f of n always descends through some maximal step because f | n/p
//! for some prime p.

use super::field::Field;
use super::poly::Poly;
use super::rat::{divisors, euler_phi, factorize, rat, Rat};
use num::Zero;
use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// Element of a cyclotomic field, canonical at its minimal conductor.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloNum {
    n: u32,
    c: Vec<Rat>,
}

thread_local! {
    static CYCLO_POLYS: RefCell<HashMap<u32, Poly<Rat>>> = RefCell::new(HashMap::new());
    // coordinates of ζ_n^k for k = 0..n, per conductor
    static ZETA_POWERS: RefCell<HashMap<u32, std::rc::Rc<Vec<Vec<Rat>>>>> =
        RefCell::new(HashMap::new());
    // generators of ker((Z/n)* -> (Z/m)*) per (n, m)
    static KERNEL_GENS: RefCell<HashMap<(u32, u32), Vec<u32>>> = RefCell::new(HashMap::new());
}

/// n-th cyclotomic polynomial, computed by dividing x^n - 1 by the proper
/// cyclotomic divisors and memoised per thread.
pub fn cyclotomic_poly(n: u32) -> Poly<Rat> {
    if let Some(p) = CYCLO_POLYS.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    let mut xn1 = vec![rat(0); n as usize + 1];
    xn1[0] = -rat(1);
    xn1[n as usize] = rat(1);
    let mut f = Poly::new(xn1);
    for d in divisors(n as u64) {
        if (d as u32) < n {
            f = f.div_exact(&cyclotomic_poly(d as u32)).unwrap();
        }
    }
    CYCLO_POLYS.with(|c| c.borrow_mut().insert(n, f.clone()));
    f
}

fn zeta_powers(n: u32) -> std::rc::Rc<Vec<Vec<Rat>>> {
    if let Some(t) = ZETA_POWERS.with(|c| c.borrow().get(&n).cloned()) {
        return t;
    }
    let phi = euler_phi(n as u64) as usize;
    let f = cyclotomic_poly(n);
    // x^phi mod Φ_n = -(lower part of Φ_n), Φ_n monic
    let xphi: Vec<Rat> = (0..phi).map(|i| -f.coeff(i)).collect();
    let mut table: Vec<Vec<Rat>> = Vec::with_capacity(n as usize);
    let mut cur = vec![rat(0); phi];
    cur[0] = rat(1);
    for _ in 0..n {
        table.push(cur.clone());
        // multiply by x and reduce
        let top = cur[phi - 1].clone();
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1].clone();
        }
        cur[0] = rat(0);
        if !Zero::is_zero(&top) {
            for i in 0..phi {
                cur[i] += &top * &xphi[i];
            }
        }
    }
    let rc = std::rc::Rc::new(table);
    ZETA_POWERS.with(|c| c.borrow_mut().insert(n, rc.clone()));
    rc
}

/// Reduce an arbitrary-length coefficient vector (a polynomial in ζ_n) to the
/// power basis of length φ(n).
fn reduce_mod(n: u32, coeffs: &[Rat]) -> Vec<Rat> {
    let phi = euler_phi(n as u64) as usize;
    let table = zeta_powers(n);
    let mut out = vec![rat(0); phi];
    for (i, c) in coeffs.iter().enumerate() {
        if Zero::is_zero(c) {
            continue;
        }
        let pw = &table[i % n as usize];
        for j in 0..phi {
            out[j] += c * &pw[j];
        }
    }
    out
}

impl CycloNum {
    fn make(n: u32, coeffs: &[Rat]) -> Self {
        let c = reduce_mod(n, coeffs);
        Self::canonicalize(n, c)
    }

    fn canonicalize(mut n: u32, mut c: Vec<Rat>) -> Self {
        loop {
            // Q(ζ_{2m}) = Q(ζ_m) for odd m: ζ_{2m} = -ζ_m^{(m+1)/2}
            if n % 4 == 2 {
                let m = n / 2;
                let mut lifted = vec![rat(0); m as usize];
                for (i, ci) in c.iter().enumerate() {
                    if Zero::is_zero(ci) {
                        continue;
                    }
                    let e = ((i as u64 * (m as u64 + 1) / 2) % m as u64) as usize;
                    if i % 2 == 0 {
                        lifted[e] += ci;
                    } else {
                        lifted[e] -= ci;
                    }
                }
                n = m;
                c = reduce_mod(n, &lifted);
                continue;
            }
            if n == 1 {
                return CycloNum { n, c };
            }
            let table = zeta_powers(n);
            let mut descended = false;
            for (p, _) in factorize(n as u64) {
                let m = n / p as u32;
                let gens = kernel_generators(n, m);
                if !gens
                    .iter()
                    .all(|&k| apply_sigma(&c, k, n, &table) == c)
                {
                    continue;
                }
                // rewrite in the ζ_m power basis: solve E·y = c
                let phi_n = c.len();
                let phi_m = euler_phi(m as u64) as usize;
                let step = (n / m) as usize;
                let e =
                    super::matrix::Mat::from_fn(phi_n, phi_m, |i, j| table[j * step][i].clone());
                let rhs = super::matrix::Mat::from_vec(phi_n, 1, c.clone());
                let y = e
                    .solve(&rhs)
                    .expect("Galois-fixed element must lie in the subfield");
                n = m;
                c = y.col(0);
                descended = true;
                break;
            }
            if !descended {
                return CycloNum { n, c };
            }
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        CycloNum { n: 1, c: vec![r] }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rat(rat(k))
    }

    /// ζ_den^num.
    pub fn root_of_unity(num: i64, den: u32) -> Self {
        assert!(den >= 1);
        let e = num.rem_euclid(den as i64) as usize;
        let mut v = vec![rat(0); den as usize];
        v[e] = rat(1);
        Self::make(den, &v)
    }

    pub fn zeta(n: u32) -> Self {
        Self::root_of_unity(1, n)
    }

    /// The imaginary unit, ζ_4.
    pub fn i() -> Self {
        Self::zeta(4)
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coords(&self) -> &[Rat] {
        &self.c
    }

    pub fn to_rat(&self) -> Option<Rat> {
        (self.n == 1).then(|| self.c[0].clone())
    }

    fn lift(&self, m: u32) -> Vec<Rat> {
        debug_assert!(m % self.n == 0);
        if m == self.n {
            return self.c.clone();
        }
        let step = (m / self.n) as usize;
        let mut v = vec![rat(0); m as usize];
        for (i, ci) in self.c.iter().enumerate() {
            v[i * step] = ci.clone();
        }
        reduce_mod(m, &v)
    }

    fn join(a: &Self, b: &Self) -> (u32, Vec<Rat>, Vec<Rat>) {
        let m = num::integer::lcm(a.n as u64, b.n as u64) as u32;
        (m, a.lift(m), b.lift(m))
    }

    pub fn add_c(&self, rhs: &Self) -> Self {
        if self.n == 1 && rhs.n == 1 {
            return Self::from_rat(&self.c[0] + &rhs.c[0]);
        }
        let (m, a, b) = Self::join(self, rhs);
        let sum: Vec<Rat> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        Self::canonicalize(m, sum)
    }

    pub fn mul_c(&self, rhs: &Self) -> Self {
        if self.n == 1 && rhs.n == 1 {
            return Self::from_rat(&self.c[0] * &rhs.c[0]);
        }
        if let Some(r) = self.to_rat() {
            if Zero::is_zero(&r) {
                return Self::from_int(0);
            }
            let c: Vec<Rat> = rhs.c.iter().map(|x| x * &r).collect();
            return CycloNum { n: rhs.n, c };
        }
        if let Some(r) = rhs.to_rat() {
            return rhs_scale(self, &r);
        }
        let (m, a, b) = Self::join(self, rhs);
        let mut prod = vec![rat(0); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if Zero::is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if Zero::is_zero(y) {
                    continue;
                }
                prod[i + j] += x * y;
            }
        }
        Self::make(m, &prod)
    }

    pub fn neg_c(&self) -> Self {
        CycloNum {
            n: self.n,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }

    pub fn inv_c(&self) -> Option<Self> {
        if self.is_zero_c() {
            return None;
        }
        if let Some(r) = self.to_rat() {
            return Some(Self::from_rat(rat(1) / r));
        }
        // invert modulo Φ_n with the extended Euclidean algorithm
        let f = cyclotomic_poly(self.n);
        let p = Poly::new(self.c.clone());
        let (g, u, _) = p.egcd(&f);
        debug_assert_eq!(g.deg(), Some(0));
        let ginv = g.coeff(0).inv().unwrap();
        let inv = u.scale(&ginv);
        Some(Self::canonicalize(self.n, reduce_mod(self.n, inv.coeffs())))
    }

    pub fn is_zero_c(&self) -> bool {
        self.c.iter().all(|x| Zero::is_zero(x))
    }

    /// Apply the Galois automorphism ζ ↦ ζ^k; requires gcd(k, n) = 1.
    pub fn galois(&self, k: u32) -> Self {
        if self.n == 1 {
            return self.clone();
        }
        assert_eq!(
            num::integer::gcd(k as u64, self.n as u64),
            1,
            "σ_{k} is not an automorphism of Q(ζ_{})",
            self.n
        );
        let table = zeta_powers(self.n);
        let out = apply_sigma(&self.c, k % self.n, self.n, &table);
        Self::canonicalize(self.n, out)
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        if self.n == 1 {
            self.clone()
        } else {
            self.galois(self.n - 1)
        }
    }

    /// The units mod n, i.e. the Galois group of Q(ζ_n).
    pub fn galois_group(&self) -> Vec<u32> {
        (1..=self.n.max(1))
            .filter(|&k| num::integer::gcd(k as u64, self.n as u64) == 1)
            .collect()
    }

    /// Is this a root of unity? All roots of unity inside Q(ζ_n) are ±ζ_n^k,
    /// so a scan against the power table decides it.
    pub fn as_root_of_unity(&self) -> Option<RootOfUnity> {
        if self.n == 1 {
            let r = &self.c[0];
            if r == &rat(1) {
                return Some(RootOfUnity::new(0, 1));
            }
            if r == &(-rat(1)) {
                return Some(RootOfUnity::new(1, 2));
            }
            return None;
        }
        let table = zeta_powers(self.n);
        for k in 0..self.n as usize {
            let pw = &table[k];
            if &self.c == pw {
                return Some(RootOfUnity::new(k as i64, self.n));
            }
            if self.c.iter().zip(pw).all(|(a, b)| *a == -b) {
                // -ζ^k is the rotation by half a turn
                return Some(
                    RootOfUnity::new(k as i64, self.n).mul(&RootOfUnity::new(1, 2)),
                );
            }
        }
        None
    }

    pub fn pow_i(&self, e: i64) -> Option<Self> {
        Field::pow(self, e)
    }
}

fn rhs_scale(x: &CycloNum, r: &Rat) -> CycloNum {
    if Zero::is_zero(r) {
        return CycloNum::from_int(0);
    }
    CycloNum {
        n: x.conductor(),
        c: x.coords().iter().map(|v| v * r).collect(),
    }
}

/// Generators of the kernel of (Z/n)* → (Z/m)* for m | n. For m = n/p the
/// kernel is cyclic, so this normally returns a single element; the fallback
/// to the full member list keeps the routine correct for any m.
fn kernel_generators(n: u32, m: u32) -> Vec<u32> {
    if let Some(g) = KERNEL_GENS.with(|c| c.borrow().get(&(n, m)).cloned()) {
        return g;
    }
    let members: Vec<u32> = (1..n / m)
        .map(|j| 1 + j * m)
        .filter(|&k| num::integer::gcd(k as u64, n as u64) == 1)
        .collect();
    let order = |k: u32| -> usize {
        let mut o = 1;
        let mut x = k as u64;
        while x != 1 {
            x = x * k as u64 % n as u64;
            o += 1;
        }
        o
    };
    let gens = match members.iter().copied().max_by_key(|&k| order(k)) {
        Some(k) if order(k) == members.len() + 1 => vec![k],
        _ => members,
    };
    KERNEL_GENS.with(|c| c.borrow_mut().insert((n, m), gens.clone()));
    gens
}

fn apply_sigma(c: &[Rat], k: u32, n: u32, table: &[Vec<Rat>]) -> Vec<Rat> {
    let phi = c.len();
    let mut out = vec![rat(0); phi];
    for (i, ci) in c.iter().enumerate() {
        if Zero::is_zero(ci) {
            continue;
        }
        let pw = &table[(i * k as usize) % n as usize];
        for j in 0..phi {
            out[j] += ci * &pw[j];
        }
    }
    out
}

impl Field for CycloNum {
    fn zero() -> Self {
        Self::from_int(0)
    }
    fn one() -> Self {
        Self::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.is_zero_c()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.add_c(rhs)
    }
    fn neg(&self) -> Self {
        self.neg_c()
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul_c(rhs)
    }
    fn inv(&self) -> Option<Self> {
        self.inv_c()
    }
    fn from_rat(r: &Rat) -> Self {
        CycloNum::from_rat(r.clone())
    }
    fn to_rat(&self) -> Option<Rat> {
        CycloNum::to_rat(self)
    }

    // rational content across all coordinates, signed by the first nonzero
    // coordinate of the first nonzero element
    fn content_unit(coeffs: &[Self]) -> Self {
        let mut flat = Vec::new();
        for x in coeffs {
            flat.extend(x.c.iter().cloned());
        }
        let u = <Rat as Field>::content_unit(&flat);
        Self::from_rat(u)
    }
}

impl PartialOrd for CycloNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Arbitrary but total: by conductor, then coordinates. Used only to make
// multisets of eigenvalues canonically sortable.
impl Ord for CycloNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.c.cmp(&other.c))
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            return write!(f, "{}", self.c[0]);
        }
        let p = Poly::new(self.c.clone());
        write!(f, "{}", p.display_with(&format!("z{}", self.n)))
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A root of unity e^{2πi·num/den}, stored as the reduced fraction of a full
/// turn with 0 ≤ num < den. Cheap exact arithmetic for rank-one tuples.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootOfUnity {
    num: u32,
    den: u32,
}

impl RootOfUnity {
    pub fn new(num: i64, den: u32) -> Self {
        assert!(den >= 1);
        let num = num.rem_euclid(den as i64) as u64;
        let g = num::integer::gcd(num, den as u64);
        RootOfUnity {
            num: (num / g) as u32,
            den: (den as u64 / g) as u32,
        }
    }

    pub fn one() -> Self {
        RootOfUnity { num: 0, den: 1 }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { num: 1, den: 2 }
    }

    pub fn is_one(&self) -> bool {
        self.den == 1
    }

    /// Multiplicative order.
    pub fn order(&self) -> u32 {
        self.den
    }

    /// Numerator of the turn fraction.
    pub fn turn_num(&self) -> u32 {
        self.num
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let den = num::integer::lcm(self.den as u64, rhs.den as u64);
        let num =
            self.num as u64 * (den / self.den as u64) + rhs.num as u64 * (den / rhs.den as u64);
        Self::new((num % den) as i64, den as u32)
    }

    pub fn inv(&self) -> Self {
        Self::new(-(self.num as i64), self.den)
    }

    pub fn pow(&self, e: i64) -> Self {
        Self::new(self.num as i64 * e, self.den)
    }

    pub fn neg(&self) -> Self {
        self.mul(&Self::minus_one())
    }

    pub fn to_cyclo(&self) -> CycloNum {
        CycloNum::root_of_unity(self.num as i64, self.den)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (_, 1) => write!(f, "1"),
            (_, 2) => write!(f, "-1"),
            (1, d) => write!(f, "z{d}"),
            (k, d) => write!(f, "z{d}^{k}"),
        }
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
