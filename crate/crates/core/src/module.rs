//! Graded free modules `S^r` and their elements.

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::{same_ring, Ctx, Polynomial, RingRef, Term};

/// A free module `⊕ S(-a_c)` over a polynomial ring; `shifts[c] = a_c` is the
/// degree of the `c`-th basis vector.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeModule<F: Field> {
    ring: RingRef<F>,
    shifts: Vec<i64>,
}

/// An element of a free module: terms sorted decreasingly in the module order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorPolynomial<F: Field> {
    pub(crate) terms: Vec<Term<F::Elem>>,
}

impl<F: Field> VectorPolynomial<F> {
    pub fn zero() -> Self {
        VectorPolynomial { terms: Vec::new() }
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> &[Term<F::Elem>] {
        &self.terms
    }
    pub fn lead_term(&self) -> Option<&Term<F::Elem>> {
        self.terms.first()
    }
    pub(crate) fn from_terms(terms: Vec<Term<F::Elem>>) -> Self {
        VectorPolynomial { terms }
    }
}

impl<F: Field> FreeModule<F> {
    pub fn new(ring: &RingRef<F>, shifts: Vec<i64>) -> Self {
        FreeModule { ring: ring.clone(), shifts }
    }

    pub fn free(ring: &RingRef<F>, rank: usize) -> Self {
        Self::new(ring, vec![0; rank])
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }
    pub fn rank(&self) -> usize {
        self.shifts.len()
    }
    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub(crate) fn ctx(&self) -> Ctx<'_, F> {
        self.ring.module_ctx(&self.shifts, None)
    }

    /// The vector with the given coordinates.
    pub fn vector(&self, coords: &[Polynomial<F>]) -> Result<VectorPolynomial<F>> {
        if coords.len() != self.rank() {
            return Err(AlgebraError::Context(format!(
                "{} coordinates for a module of rank {}",
                coords.len(),
                self.rank()
            )));
        }
        let mut raw = Vec::new();
        for (c, p) in coords.iter().enumerate() {
            if !same_ring(p.ring(), &self.ring) {
                return Err(AlgebraError::Context("coordinate from another ring".into()));
            }
            raw.extend(p.terms().iter().map(|t| Term { coef: t.coef.clone(), mono: t.mono, comp: c as u32 }));
        }
        Ok(VectorPolynomial { terms: self.ctx().normalize(raw) })
    }

    /// `p * e_c`.
    pub fn basis_multiple(&self, c: usize, p: &Polynomial<F>) -> Result<VectorPolynomial<F>> {
        if c >= self.rank() {
            return Err(AlgebraError::Context(format!("component {c} out of range")));
        }
        let raw = p.terms().iter().map(|t| Term { coef: t.coef.clone(), mono: t.mono, comp: c as u32 }).collect();
        Ok(VectorPolynomial { terms: self.ctx().normalize(raw) })
    }

    pub fn basis_vector(&self, c: usize) -> Result<VectorPolynomial<F>> {
        self.basis_multiple(c, &self.ring.one())
    }

    /// Re-sort raw terms (any order) into canonical form for this module.
    pub fn from_terms(&self, terms: Vec<Term<F::Elem>>) -> Result<VectorPolynomial<F>> {
        if let Some(t) = terms.iter().find(|t| t.comp as usize >= self.rank()) {
            return Err(AlgebraError::Context(format!("component {} out of range", t.comp)));
        }
        Ok(VectorPolynomial { terms: self.ctx().normalize(terms) })
    }

    pub fn component(&self, v: &VectorPolynomial<F>, c: usize) -> Polynomial<F> {
        let terms = v
            .terms
            .iter()
            .filter(|t| t.comp as usize == c)
            .map(|t| Term { coef: t.coef.clone(), mono: t.mono, comp: 0 })
            .collect();
        self.ring.wrap(self.ring.ctx().normalize(terms))
    }

    pub fn coordinates(&self, v: &VectorPolynomial<F>) -> Vec<Polynomial<F>> {
        (0..self.rank()).map(|c| self.component(v, c)).collect()
    }

    pub fn add(&self, a: &VectorPolynomial<F>, b: &VectorPolynomial<F>) -> VectorPolynomial<F> {
        VectorPolynomial { terms: self.ctx().add(&a.terms, &b.terms) }
    }

    pub fn sub(&self, a: &VectorPolynomial<F>, b: &VectorPolynomial<F>) -> VectorPolynomial<F> {
        VectorPolynomial { terms: self.ctx().sub(&a.terms, &b.terms) }
    }

    pub fn mul(&self, p: &Polynomial<F>, v: &VectorPolynomial<F>) -> VectorPolynomial<F> {
        VectorPolynomial { terms: self.ctx().mul(p.terms(), &v.terms) }
    }

    pub fn mul_term(&self, v: &VectorPolynomial<F>, c: &F::Elem, m: &Monomial) -> VectorPolynomial<F> {
        VectorPolynomial { terms: self.ctx().mul_term(&v.terms, c, m) }
    }

    /// Whether every term has the same shifted degree.
    pub fn is_homogeneous(&self, v: &VectorPolynomial<F>) -> bool {
        let ctx = self.ctx();
        let mut degs = v.terms.iter().map(|t| ctx.term_degree(&t.mono, t.comp));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Shifted degree of the leading term.
    pub fn degree(&self, v: &VectorPolynomial<F>) -> Option<i64> {
        v.terms.first().map(|t| self.ctx().term_degree(&t.mono, t.comp))
    }

    pub fn format(&self, v: &VectorPolynomial<F>) -> String {
        let coords = self.coordinates(v);
        let parts: Vec<String> = coords.iter().map(|p| p.to_string()).collect();
        format!("[{}]", parts.join(", "))
    }
}

impl<F: Field> fmt::Display for FreeModule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.shifts.iter().map(|s| format!("S({})", -s)).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::PolyRing;

    #[test]
    fn coordinates_round_trip() {
        let r = PolyRing::new(PrimeField::default_field(), &["x", "y"]).unwrap();
        let m = FreeModule::new(&r, vec![0, 1]);
        let v = m.vector(&[r.parse("x^2").unwrap(), r.parse("y").unwrap()]).unwrap();
        assert!(m.is_homogeneous(&v));
        assert_eq!(m.degree(&v), Some(2));
        assert_eq!(m.coordinates(&v)[1], r.parse("y").unwrap());
        assert_eq!(m.format(&v), "[x^2, y]");
        let w = m.sub(&v, &v);
        assert!(w.is_zero());
        assert!(m.vector(&[r.one()]).is_err());
    }
}
