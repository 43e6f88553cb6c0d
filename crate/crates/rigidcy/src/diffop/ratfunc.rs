//! Rational functions in `z` over a coefficient field.
//!
//! These are the scalars of the ∂-presentation (monic normalisation divides
//! by the leading z-polynomial) and of the tensor/Sym/Λ module calculus,
//! where reducing ϑ-powers of a cyclic vector introduces denominators.

use crate::exactalg::{Field, Poly, Rat};
use std::fmt;

/// A reduced fraction of polynomials in `z`; the denominator is monic.
#[derive(Clone, PartialEq)]
pub struct RatFunc<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    /// Build `num/den`, reducing by the gcd; `None` when `den` is zero.
    pub fn from_frac(num: Poly<F>, den: Poly<F>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::reduced(num, den))
    }

    fn reduced(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return RatFunc {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = match g.deg() {
            Some(d) if d > 0 => (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            ),
            _ => (num, den),
        };
        // Monic denominator keeps the representation canonical, so PartialEq
        // is honest equality of rational functions.
        let lead = den.leading().expect("nonzero denominator").clone();
        let inv = lead.inv().expect("leading coefficient invertible");
        num = num.scale(&inv);
        den = den.scale(&inv);
        RatFunc { num, den }
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.deg() == Some(0)
    }

    /// d/dz via the quotient rule, reduced.
    pub fn derivative(&self) -> Self {
        let n = self.num.derivative().mul(&self.den);
        let d = self.num.mul(&self.den.derivative());
        Self::reduced(n.sub(&d), self.den.mul(&self.den))
    }

    /// z·d/dz, the ϑ-action on coefficient functions.
    pub fn theta_derivative(&self) -> Self {
        self.derivative().mul(&RatFunc::from_poly(Poly::new(vec![
            F::zero(),
            F::one(),
        ])))
    }
}

impl<F: Field> Field for RatFunc<F> {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Self::reduced(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        Self::reduced(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::reduced(self.den.clone(), self.num.clone()))
    }
    fn from_rat(r: &Rat) -> Self {
        Self::from_poly(Poly::constant(F::from_rat(r)))
    }
    fn to_rat(&self) -> Option<Rat> {
        if !self.is_polynomial() || self.num.deg().unwrap_or(0) > 0 {
            return None;
        }
        self.num.coeff(0).to_rat()
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num.display_with("z"));
        }
        write!(
            f,
            "({})/({})",
            self.num.display_with("z"),
            self.den.display_with("z")
        )
    }
}

impl<F: Field> fmt::Debug for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
