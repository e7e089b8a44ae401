//! Exact commutative algebra for Hilbert–Samuel computations.
//!
//! The crate is layered bottom-up: coefficient fields and monomials, sparse
//! polynomials and free-module vectors, a Buchberger engine, presented rings
//! and their ideals, Hilbert–Samuel tables, homological invariants and
//! finally the extended degrees and inequality evaluators built on top.

pub mod bounds;
pub mod closure;
pub mod degrees;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod homological;
pub mod module;
pub mod monomial;
pub mod monomial_ideal;
pub mod oracle;
pub mod par;
pub mod poly;
pub mod presentation;
pub mod reduction;
pub mod ring;

pub use error::{AlgebraError, Result};
pub use field::{Field, FieldDescriptor, PrimeField, Rationals};
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use poly::{PolyRing, Polynomial, RingRef, Term};
pub use groebner::GroebnerBasis;
pub use module::{FreeModule, VectorPolynomial};
pub use par::Execution;
pub use monomial_ideal::{HilbertSeries, MonomialIdeal};
pub use ring::{PresentedRef, PresentedRing, RingIdeal};
pub use presentation::ModulePresentation;
pub use hilbert::{GoodFiltration, HilbertCoefficients, HilbertSamuelTable, SamuelOptions};
pub use homological::{CohomologyLength, CohomologyProfile, FreeResolution, KoszulComplex};
pub use reduction::{minimal_reduction_candidate, random_superficial_reduction, ReductionOutcome};
pub use closure::{closure_filtration, monomial_integral_closure, tracking_compare, NewtonPolyhedron, TrackingReport};
pub use degrees::{hdeg, hdeg_rel, t_invariant, DegreeContext, DegreeNode, DegreeReport};
pub use bounds::{bound_suite, BoundReport, ConjectureStatus, ConjectureVerdict, InstanceFlags, SuiteOptions, Verdict};
