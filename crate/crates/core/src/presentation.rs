//! Finitely presented modules `M = F/U` over a polynomial ring.

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{preimage, GroebnerBasis};
use crate::module::{FreeModule, VectorPolynomial};
use crate::monomial::Monomial;
use crate::monomial_ideal::{hilbert_numerator, HilbertSeries};
use crate::poly::{Polynomial, RingRef, Term};
use crate::ring::{PresentedRing, RingIdeal};

type Terms<F> = Vec<Term<<F as Field>::Elem>>;

/// `M = (⊕ S(-shifts)) / U` with `U` stored as a reduced Gröbner basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulePresentation<F: Field> {
    relations: GroebnerBasis<F>,
}

/// Hilbert series of `F/U` computed from the leading terms of a basis of `U`.
pub(crate) fn series_of<F: Field>(gb: &GroebnerBasis<F>) -> HilbertSeries {
    let n = gb.ring().nvars();
    let mut acc = HilbertSeries::zero(n);
    for (c, &shift) in gb.shifts().iter().enumerate() {
        let part = HilbertSeries { low: 0, num: hilbert_numerator(&gb.leading_monomials(c), n), nvars: n };
        acc.add_shifted(&part, shift);
    }
    acc
}

/// `λ(big/small)` for submodules `small ⊆ big` of the same free module with finite-length quotient.
pub fn relative_length<F: Field>(big: &GroebnerBasis<F>, small: &GroebnerBasis<F>) -> Result<u64> {
    if !big.ring().order().is_degree_compatible() {
        return Err(AlgebraError::Precondition("length counting needs a degree-compatible order".into()));
    }
    let mut diff = series_of(small);
    let mut neg = series_of(big);
    neg.num.iter_mut().for_each(|v| *v = -*v);
    diff.add_shifted(&neg, 0);
    diff.length()
        .ok_or_else(|| AlgebraError::Precondition("quotient of submodules does not have finite length".into()))
}

impl<F: Field> ModulePresentation<F> {
    pub fn new(module: &FreeModule<F>, relations: &[VectorPolynomial<F>]) -> Result<Self> {
        Ok(ModulePresentation { relations: GroebnerBasis::submodule(module, relations)? })
    }

    pub fn from_basis(relations: GroebnerBasis<F>) -> Self {
        ModulePresentation { relations }
    }

    pub fn free(ring: &RingRef<F>, shifts: Vec<i64>) -> Self {
        ModulePresentation { relations: GroebnerBasis::from_reduced(ring, shifts, Vec::new()) }
    }

    /// The ring `R = S/𝔞` as a cyclic `S`-module.
    pub fn of_ring(r: &PresentedRing<F>) -> Self {
        ModulePresentation { relations: r.relations().clone() }
    }

    /// `R/I` as a cyclic `S`-module.
    pub fn of_quotient(i: &RingIdeal<F>) -> Self {
        ModulePresentation { relations: i.basis().clone() }
    }

    pub fn ring(&self) -> &RingRef<F> {
        self.relations.ring()
    }
    pub fn shifts(&self) -> &[i64] {
        self.relations.shifts()
    }
    pub fn rank(&self) -> usize {
        self.relations.rank()
    }
    pub fn relations(&self) -> &GroebnerBasis<F> {
        &self.relations
    }
    pub fn free_module(&self) -> FreeModule<F> {
        self.relations.module()
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        series_of(&self.relations)
    }

    /// Krull dimension; `None` for the zero module.
    pub fn dimension(&self) -> Option<usize> {
        self.hilbert_series().dimension()
    }

    /// Multiplicity with respect to the variables (0 for the zero module).
    pub fn degree(&self) -> i128 {
        self.hilbert_series().degree()
    }

    pub fn length(&self) -> Option<u64> {
        self.hilbert_series().length()
    }

    pub fn is_zero(&self) -> bool {
        (0..self.rank()).all(|c| self.relations.contains_basis_vector(c))
    }

    /// Whether every relation is homogeneous for the shifted grading.
    pub fn is_graded(&self) -> bool {
        let ctx = self.relations.ctx();
        self.relations.raw().iter().all(|v| {
            let d = ctx.term_degree(&v[0].mono, v[0].comp);
            v.iter().all(|t| ctx.term_degree(&t.mono, t.comp) == d)
        })
    }

    pub(crate) fn with_extra(&self, extra: Vec<Terms<F>>) -> Result<Self> {
        if extra.is_empty() {
            return Ok(self.clone());
        }
        let mut gens: Vec<Terms<F>> = self.relations.raw().to_vec();
        gens.extend(extra);
        Ok(ModulePresentation {
            relations: GroebnerBasis::from_raw(self.ring(), self.shifts().to_vec(), gens)?,
        })
    }

    /// Generators `g·e_c` of `I·F` for the given ideal generators.
    pub(crate) fn ideal_times_free(&self, gens: &[Polynomial<F>]) -> Vec<Terms<F>> {
        let mut out = Vec::new();
        for g in gens {
            for c in 0..self.rank() {
                let v: Terms<F> = g.terms().iter().map(|t| Term { coef: t.coef.clone(), mono: t.mono, comp: c as u32 }).collect();
                if !v.is_empty() {
                    out.push(v);
                }
            }
        }
        out
    }

    /// `M/IM`.
    pub fn modulo_ideal(&self, gens: &[Polynomial<F>]) -> Result<Self> {
        self.with_extra(self.ideal_times_free(gens))
    }

    /// `(U : 𝔪)` inside the ambient free module.
    pub fn colon_maximal(&self) -> Result<GroebnerBasis<F>> {
        colon_maximal(&self.relations)
    }

    /// The saturation `(U : 𝔪^∞)`, whose quotient by `U` is `H⁰_𝔪(M)`.
    pub fn saturation(&self) -> Result<GroebnerBasis<F>> {
        let mut cur = self.relations.clone();
        loop {
            let next = colon_maximal(&cur)?;
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `λ(H⁰_𝔪(M))`.
    pub fn h0_length(&self) -> Result<u64> {
        let sat = self.saturation()?;
        relative_length(&sat, &self.relations)
    }

    /// `M/H⁰_𝔪(M)`.
    pub fn modulo_h0(&self) -> Result<Self> {
        Ok(ModulePresentation { relations: self.saturation()? })
    }

    /// Stable text key of the presentation (for caches).
    pub fn key(&self) -> String {
        format!("{:?}|{}", self.shifts(), self.relations.to_strings().join(";"))
    }
}

fn colon_maximal<F: Field>(u: &GroebnerBasis<F>) -> Result<GroebnerBasis<F>> {
    let ring = u.ring();
    let n = ring.nvars();
    let r = u.rank();
    let shifts = u.shifts();
    let one = ring.field().one();
    let mut target = Vec::with_capacity(n * r);
    for _ in 0..n {
        target.extend_from_slice(shifts);
    }
    let cols: Vec<Terms<F>> = (0..r)
        .map(|c| {
            (0..n)
                .map(|i| Term {
                    coef: one.clone(),
                    mono: Monomial::var_power(n, i, 1),
                    comp: (i * r + c) as u32,
                })
                .collect()
        })
        .collect();
    let mut sub = Vec::with_capacity(n * u.len());
    for i in 0..n {
        for v in u.raw() {
            sub.push(v.iter().map(|t| Term { comp: t.comp + (i * r) as u32, ..t.clone() }).collect());
        }
    }
    let source: Vec<i64> = shifts.iter().map(|s| s + 1).collect();
    let raw = preimage(ring, &target, &cols, &sub, &source)?;
    // a uniform shift does not change the order, so the basis stays reduced
    Ok(GroebnerBasis::from_reduced(ring, shifts.to_vec(), raw))
}

impl<F: Field> fmt::Display for ModulePresentation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coker over {} with relations [{}]", self.free_module(), self.relations.to_strings().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::PolyRing;

    #[test]
    fn z_ring_torsion() {
        let s = PolyRing::new(PrimeField::default_field(), &["x", "y", "z"]).unwrap();
        let rels: Vec<_> = ["x*z", "y*z", "z^2"].iter().map(|t| s.parse(t).unwrap()).collect();
        let r = PresentedRing::new(&s, &rels).unwrap();
        let m = ModulePresentation::of_ring(&r);
        assert_eq!(m.dimension(), Some(2));
        assert_eq!(m.degree(), 1);
        assert_eq!(m.h0_length().unwrap(), 1);
        let bar = m.modulo_h0().unwrap();
        assert_eq!(bar.h0_length().unwrap(), 0);
        assert_eq!(bar.relations().to_strings(), vec!["z"]);
    }

    #[test]
    fn finite_length_module_is_all_torsion() {
        let s = PolyRing::new(PrimeField::default_field(), &["x", "y"]).unwrap();
        let rels: Vec<_> = ["x^2", "x*y", "y^3"].iter().map(|t| s.parse(t).unwrap()).collect();
        let m = ModulePresentation::from_basis(GroebnerBasis::ideal(&s, &rels).unwrap());
        assert_eq!(m.length(), Some(4));
        assert_eq!(m.h0_length().unwrap(), 4);
        assert!(m.modulo_h0().unwrap().is_zero());
    }
}
