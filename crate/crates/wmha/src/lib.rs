//! Exact-arithmetic toolkit for regular weak multiplier Hopf algebras
//! (wmHa) that possess integrals.
//!
//! Everything here is computed over the field of Gaussian rationals
//! ℚ(i) with **exact** arithmetic: there is no floating point anywhere
//! in this crate, and every comparison is an exact equality test.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`] — the base field ℚ(i);
//! * [`finvec`] — sparse finitely-supported vectors and tensors;
//! * [`solve`] — a fraction-free exact linear solver (Bareiss
//!   elimination) with rank / span utilities;
//! * [`groupoid`] — finite groupoids, constructors and validation;
//! * [`wmha`] — the structural [`wmha::Wmha`] trait together with the
//!   derived machinery (canonical maps `T1, T2, R1, R2`, the source and
//!   target maps, the canonical idempotent and its leg multipliers);
//! * [`axioms`] — the named structural-law checker producing witnessed
//!   reports;
//! * [`table`] — a fully table-backed instance, used for constructed
//!   (dual, bidual, separability-type) algebras;
//! * [`kg`] — the function algebra of a finite groupoid;
//! * [`cg`] — the convolution (groupoid) algebra of a finite groupoid;
//! * [`integrals`] — invariant functionals: recognition, enumeration,
//!   transfer between left and right, faithfulness, modular data;
//! * [`duality`] — the dual algebra spanned by `φ(·a)`, actions,
//!   pairings, dual integrals and biduality;
//! * [`sep`] — separability idempotents and the weak multiplier Hopf
//!   algebra built from one, together with its explicit dual;
//! * [`registry`] — the runtime strategy registry mapping construction
//!   kind names to builders.

pub mod axioms;
pub mod cg;
pub mod duality;
pub mod finvec;
pub mod groupoid;
pub mod integrals;
pub mod kg;
pub mod registry;
pub mod scalar;
pub mod sep;
pub mod solve;
pub mod table;
pub mod wmha;
