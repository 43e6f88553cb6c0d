//! Exact middle-convolution calculus for symplectically rigid rank-4 local systems
//! and the fourth-order Calabi-Yau operators attached to them.
//!
//! The crate is organised in three layers:
//!
//! * [`exactalg`] — the arithmetic substrate: big rationals, cyclotomic numbers in
//!   power-basis representation, the rational function field Q(a,b), dense
//!   polynomials and exact linear algebra over any of these.
//! * [`tuples`] and [`numerology`] — monodromy tuples as matrices and as symbolic
//!   Jordan data, middle convolution / middle tensor both ways, invariant forms,
//!   rigidity bookkeeping and the symplectic rank-4 case enumeration.
//! * [`diffop`], [`series`] and [`cyfam`] — the ϑ-ring of differential operators,
//!   Frobenius solutions with exact jet arithmetic, and the named operator
//!   families with their Calabi-Yau property checks.
//!
//! Everything is exact: there is no floating point anywhere in the crate.

pub mod diffop;
pub mod exactalg;
pub mod numerology;
pub mod tuples;
