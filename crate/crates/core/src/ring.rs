//! Presented rings `R = k[x_1..x_e]/𝔞` and their ideals.
//!
//! Lengths and multiplicities are always taken at the maximal ideal generated
//! by the variables. They agree with the global vector-space counts because
//! every ideal they are asked about is first checked to be 𝔪-primary.

use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{ideal_colon, intersect_bases, ring_map_kernel, GroebnerBasis};
use crate::monomial::Monomial;
use crate::monomial_ideal::{independent_set_dimension, MonomialIdeal};
use crate::poly::{same_ring, Polynomial, RingRef};

pub type PresentedRef<F> = Arc<PresentedRing<F>>;

/// A quotient of a polynomial ring by a (possibly zero) ideal.
#[derive(Debug, Clone)]
pub struct PresentedRing<F: Field> {
    ambient: RingRef<F>,
    defining: Vec<Polynomial<F>>,
    relations: GroebnerBasis<F>,
    dim: usize,
}

impl<F: Field> PresentedRing<F> {
    pub fn new(ambient: &RingRef<F>, defining: &[Polynomial<F>]) -> Result<PresentedRef<F>> {
        let relations = GroebnerBasis::ideal(ambient, defining)?;
        if relations.is_unit() {
            return Err(AlgebraError::Domain("defining ideal is the unit ideal".into()));
        }
        let dim = independent_set_dimension(&relations.leading_monomials(0), ambient.nvars()).unwrap_or(0);
        Ok(Arc::new(PresentedRing { ambient: ambient.clone(), defining: defining.to_vec(), relations, dim }))
    }

    pub fn polynomial_ring(ambient: &RingRef<F>) -> PresentedRef<F> {
        Self::new(ambient, &[]).expect("zero ideal")
    }

    /// `R` presented as the image of `source` under `x_j ↦ images[j]` in `target/⟨relations⟩`.
    pub fn from_ring_map(
        source: &RingRef<F>,
        target: &RingRef<F>,
        relations: &[Polynomial<F>],
        images: &[Polynomial<F>],
    ) -> Result<PresentedRef<F>> {
        let kernel = ring_map_kernel(source, target, relations, images)?;
        Self::new(source, &kernel)
    }

    pub fn ambient(&self) -> &RingRef<F> {
        &self.ambient
    }
    pub fn field(&self) -> &F {
        self.ambient.field()
    }
    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }
    /// Reduced Gröbner basis of the defining ideal.
    pub fn relations(&self) -> &GroebnerBasis<F> {
        &self.relations
    }
    pub fn defining_generators(&self) -> &[Polynomial<F>] {
        &self.defining
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn is_polynomial_ring(&self) -> bool {
        self.relations.is_empty()
    }
    /// Whether all defining relations are homogeneous for the ring's grading.
    pub fn is_graded(&self) -> bool {
        self.relations.polynomials().iter().all(|p| p.is_homogeneous())
    }

    /// Same ring with another working-degree guard.
    pub fn with_max_degree(&self, max_degree: u32) -> Result<PresentedRef<F>> {
        let ambient = self.ambient.with_max_degree(max_degree);
        let defining: Vec<Polynomial<F>> = self.defining.iter().map(|p| p.reinterpret(&ambient)).collect();
        Self::new(&ambient, &defining)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial<F>> {
        self.ambient.parse(text)
    }

    pub fn ideal(self: &Arc<Self>, gens: &[Polynomial<F>]) -> Result<RingIdeal<F>> {
        RingIdeal::new(self, gens)
    }

    pub fn parse_ideal(self: &Arc<Self>, gens: &[&str]) -> Result<RingIdeal<F>> {
        let polys = gens.iter().map(|g| self.ambient.parse(g)).collect::<Result<Vec<_>>>()?;
        self.ideal(&polys)
    }

    pub fn maximal_ideal(self: &Arc<Self>) -> RingIdeal<F> {
        self.ideal(&self.ambient.vars()).expect("variables")
    }

    pub fn unit_ideal(self: &Arc<Self>) -> RingIdeal<F> {
        self.ideal(&[self.ambient.one()]).expect("unit")
    }

    pub fn zero_ideal(self: &Arc<Self>) -> RingIdeal<F> {
        self.ideal(&[]).expect("zero")
    }

    /// `R/⟨elements⟩` as a new presented ring.
    pub fn quotient(&self, elements: &[Polynomial<F>]) -> Result<PresentedRef<F>> {
        let mut gens = self.relations.polynomials();
        gens.extend_from_slice(elements);
        Self::new(&self.ambient, &gens)
    }

    /// `λ(R/I)`; a precondition error unless `I` is 𝔪-primary.
    pub fn length(&self, ideal: &RingIdeal<F>) -> Result<u64> {
        ideal.colength()
    }

    /// Jacobian ideal: the `(e-d)`-minors of the Jacobian matrix of the defining relations.
    pub fn jacobian_ideal(self: &Arc<Self>) -> Result<RingIdeal<F>> {
        let e = self.nvars();
        let c = e - self.dim;
        if c == 0 {
            return Ok(self.unit_ideal());
        }
        let rows: Vec<Vec<Polynomial<F>>> = self
            .relations
            .polynomials()
            .iter()
            .map(|h| (0..e).map(|j| h.derivative(j)).collect())
            .collect();
        let mut minors = Vec::new();
        for rs in subsets(rows.len(), c) {
            for cs in subsets(e, c) {
                let m: Vec<Vec<Polynomial<F>>> =
                    rs.iter().map(|&r| cs.iter().map(|&k| rows[r][k].clone()).collect()).collect();
                let d = determinant(&m, &self.ambient);
                if !d.is_zero() {
                    minors.push(d);
                }
            }
        }
        self.ideal(&minors)
    }
}

impl<F: Field> fmt::Display for PresentedRing<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field().descriptor(), self.ambient.names().join(","))?;
        if !self.relations.is_empty() {
            write!(f, "/({})", self.relations.to_strings().join(", "))?;
        }
        Ok(())
    }
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Determinant by cofactor expansion along the first row (small matrices only).
pub(crate) fn determinant<F: Field>(m: &[Vec<Polynomial<F>>], ring: &RingRef<F>) -> Polynomial<F> {
    match m.len() {
        0 => ring.one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = ring.zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial<F>>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][j] * &determinant(&minor, ring);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// An ideal of a presented ring, stored by representatives together with a
/// Gröbner basis of `representatives + 𝔞` in the ambient polynomial ring.
#[derive(Debug, Clone)]
pub struct RingIdeal<F: Field> {
    ring: PresentedRef<F>,
    gens: Vec<Polynomial<F>>,
    gb: GroebnerBasis<F>,
}

impl<F: Field> RingIdeal<F> {
    pub fn new(ring: &PresentedRef<F>, gens: &[Polynomial<F>]) -> Result<Self> {
        for g in gens {
            if !same_ring(g.ring(), ring.ambient()) {
                return Err(AlgebraError::Context("generator outside the ambient ring".into()));
            }
        }
        let mut all = gens.to_vec();
        all.extend(ring.relations.polynomials());
        let gb = GroebnerBasis::ideal(ring.ambient(), &all)?;
        Ok(RingIdeal { ring: ring.clone(), gens: gens.to_vec(), gb })
    }

    fn from_basis(ring: &PresentedRef<F>, gb: GroebnerBasis<F>) -> Self {
        let rels = &ring.relations;
        let gens = gb.polynomials().into_iter().filter(|p| !rels.contains(p).unwrap_or(false)).collect();
        RingIdeal { ring: ring.clone(), gens, gb }
    }

    pub fn ring(&self) -> &PresentedRef<F> {
        &self.ring
    }
    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }
    /// Gröbner basis of the ideal's preimage in the ambient ring.
    pub fn basis(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || same_ring(self.ring.ambient(), other.ring.ambient()) {
            Ok(())
        } else {
            Err(AlgebraError::Context("ideals of different rings".into()))
        }
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        self.gb.contains(f)
    }

    pub fn contains_ideal(&self, other: &RingIdeal<F>) -> Result<bool> {
        self.check(other)?;
        Ok(self.gb.contains_all(&other.gb))
    }

    /// Equality of ideals of `R` (not of representatives).
    pub fn same_ideal(&self, other: &RingIdeal<F>) -> bool {
        self.gb == other.gb
    }

    pub fn is_unit(&self) -> bool {
        self.gb.is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.gb == self.ring.relations
    }

    pub fn sum(&self, other: &RingIdeal<F>) -> Result<RingIdeal<F>> {
        self.check(other)?;
        let mut g = self.gens.clone();
        g.extend_from_slice(&other.gens);
        RingIdeal::new(&self.ring, &g)
    }

    pub fn product(&self, other: &RingIdeal<F>) -> Result<RingIdeal<F>> {
        self.check(other)?;
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                let p = self.ring.relations.normal_form(&(a * b))?;
                if !p.is_zero() {
                    g.push(p);
                }
            }
        }
        RingIdeal::new(&self.ring, &g)
    }

    /// `I^n`; the unit ideal for `n = 0`.
    pub fn power(&self, n: i64) -> Result<RingIdeal<F>> {
        if n < 0 {
            return Err(AlgebraError::Domain(format!("negative power {n}")));
        }
        let mut acc = self.ring.unit_ideal();
        for _ in 0..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn colon(&self, other: &RingIdeal<F>) -> Result<RingIdeal<F>> {
        self.check(other)?;
        let gb = ideal_colon(self.ring.ambient(), &self.gb.polynomials(), &other.gens)?;
        Ok(Self::from_basis(&self.ring, gb))
    }

    pub fn colon_element(&self, f: &Polynomial<F>) -> Result<RingIdeal<F>> {
        let gb = ideal_colon(self.ring.ambient(), &self.gb.polynomials(), std::slice::from_ref(f))?;
        Ok(Self::from_basis(&self.ring, gb))
    }

    pub fn intersect(&self, other: &RingIdeal<F>) -> Result<RingIdeal<F>> {
        self.check(other)?;
        let gb = intersect_bases(&self.gb, &other.gb)?;
        Ok(Self::from_basis(&self.ring, gb))
    }

    /// Monomial ideal of leading terms of `I + 𝔞`.
    pub fn initial_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.ring.nvars(), &self.gb.leading_monomials(0)).expect("same ring")
    }

    /// Dimension of `R/I`; `None` when `I` is the unit ideal.
    pub fn quotient_dim(&self) -> Option<usize> {
        self.initial_ideal().dimension()
    }

    /// Whether `√I` is the maximal ideal of the variables.
    ///
    /// `R/I` must be finite-dimensional, and each variable must then be
    /// nilpotent on it; a nilpotent operator on an `N`-dimensional space
    /// satisfies `x^N = 0`, so one normal form per variable decides this.
    pub fn is_m_primary(&self) -> bool {
        let n = match self.initial_ideal().colength() {
            Some(0) | None => return false,
            Some(n) => n,
        };
        let amb = self.ring.ambient();
        let e = u32::try_from(n).unwrap_or(u32::MAX);
        (0..amb.nvars()).all(|i| {
            let v = amb.monomial(amb.field().one(), Monomial::var_power(amb.nvars(), i, e.min(u16::MAX as u32)));
            self.gb.contains(&v).unwrap_or(false)
        })
    }

    /// `λ(R/I)`, only for 𝔪-primary ideals.
    pub fn colength(&self) -> Result<u64> {
        if !self.is_m_primary() {
            return Err(AlgebraError::Precondition(format!("ideal {self} is not primary to the maximal ideal")));
        }
        Ok(self.initial_ideal().colength().expect("finite"))
    }

    /// Largest total degree of a generator.
    pub fn max_generator_degree(&self) -> u32 {
        self.gens.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0)
    }

    /// Whether every generator is a monomial.
    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial() || g.is_zero())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string()).collect()
    }
}

impl<F: Field> fmt::Display for RingIdeal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}
