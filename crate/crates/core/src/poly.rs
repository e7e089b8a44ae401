//! Sparse multivariate polynomials over an exact field.
//!
//! A [`PolyRing`] bundles the coefficient field, variable names, grading
//! weights, monomial order and the working-degree guard. Polynomials keep a
//! shared handle to their ring and store their terms strictly decreasing in
//! the ring's order, so the leading term is always `terms[0]`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};

/// Default bound on the degree of any S-pair formed during a Gröbner basis run.
pub const DEFAULT_MAX_DEGREE: u32 = 60;

/// One term of a (vector) polynomial. Plain polynomials use `comp == 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term<E> {
    pub coef: E,
    pub mono: Monomial,
    pub comp: u32,
}

/// A polynomial ring `k[x_1..x_n]` with grading weights and a monomial order.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRing<F: Field> {
    field: F,
    names: Vec<String>,
    weights: Vec<u32>,
    order: MonomialOrder,
    max_degree: u32,
}

pub type RingRef<F> = Arc<PolyRing<F>>;

impl<F: Field> PolyRing<F> {
    /// Standard-graded ring with the grevlex order.
    pub fn new<S: AsRef<str>>(field: F, names: &[S]) -> Result<RingRef<F>> {
        Self::with_order(field, names, vec![1; names.len()], MonomialOrder::Grevlex)
    }

    pub fn with_order<S: AsRef<str>>(
        field: F,
        names: &[S],
        weights: Vec<u32>,
        order: MonomialOrder,
    ) -> Result<RingRef<F>> {
        if names.len() > MAX_VARS {
            return Err(AlgebraError::Context(format!(
                "{} variables requested, at most {MAX_VARS} supported",
                names.len()
            )));
        }
        if weights.len() != names.len() || weights.contains(&0) {
            return Err(AlgebraError::Context("one positive weight per variable required".into()));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(AlgebraError::Context(format!("invalid variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(AlgebraError::Context(format!("duplicate variable {n}")));
            }
        }
        // a weighted grading makes grevlex weighted too
        let order = match order {
            MonomialOrder::Grevlex if weights.iter().any(|&w| w != 1) => {
                MonomialOrder::WeightedGrevlex(weights.clone())
            }
            o => o,
        };
        order.validate(names.len())?;
        Ok(Arc::new(PolyRing { field, names, weights, order, max_degree: DEFAULT_MAX_DEGREE }))
    }

    /// Same ring with a different working-degree guard.
    pub fn with_max_degree(&self, max_degree: u32) -> RingRef<F> {
        Arc::new(PolyRing { max_degree, ..self.clone() })
    }

    /// Same variables and field, different order (used for elimination).
    pub fn reordered(&self, order: MonomialOrder) -> Result<RingRef<F>> {
        order.validate(self.nvars())?;
        Ok(Arc::new(PolyRing { order, ..self.clone() }))
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn nvars(&self) -> usize {
        self.names.len()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }
    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }
    pub fn is_standard_graded(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub(crate) fn ctx(&self) -> Ctx<'_, F> {
        Ctx { field: &self.field, order: &self.order, weights: &self.weights, shifts: &[0], split: None }
    }

    pub(crate) fn module_ctx<'a>(&'a self, shifts: &'a [i64], split: Option<u32>) -> Ctx<'a, F> {
        Ctx { field: &self.field, order: &self.order, weights: &self.weights, shifts, split }
    }

    pub fn weighted_degree(&self, m: &Monomial) -> u64 {
        m.weighted_degree(&self.weights)
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial<F> {
        Polynomial { ring: self.clone(), terms: Vec::new() }
    }

    pub fn one(self: &Arc<Self>) -> Polynomial<F> {
        self.constant(self.field.one())
    }

    pub fn constant(self: &Arc<Self>, c: F::Elem) -> Polynomial<F> {
        self.monomial(c, Monomial::one(self.nvars()))
    }

    pub fn from_i64(self: &Arc<Self>, n: i64) -> Polynomial<F> {
        self.constant(self.field.from_i64(n))
    }

    pub fn monomial(self: &Arc<Self>, c: F::Elem, mono: Monomial) -> Polynomial<F> {
        let terms = if self.field.is_zero(&c) { Vec::new() } else { vec![Term { coef: c, mono, comp: 0 }] };
        Polynomial { ring: self.clone(), terms }
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Polynomial<F> {
        self.monomial(self.field.one(), Monomial::var_power(self.nvars(), i, 1))
    }

    pub fn vars(self: &Arc<Self>) -> Vec<Polynomial<F>> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    /// Build a polynomial from arbitrary `(coef, monomial)` pairs.
    pub fn from_terms(self: &Arc<Self>, terms: Vec<(F::Elem, Monomial)>) -> Polynomial<F> {
        let raw = terms.into_iter().map(|(coef, mono)| Term { coef, mono, comp: 0 }).collect();
        Polynomial { ring: self.clone(), terms: self.ctx().normalize(raw) }
    }

    pub(crate) fn wrap(self: &Arc<Self>, terms: Vec<Term<F::Elem>>) -> Polynomial<F> {
        Polynomial { ring: self.clone(), terms }
    }

    /// Parse polynomial text such as `3*x^2*y - 1/2*z`.
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial<F>> {
        let mut p = Parser { ring: self, src: text.as_bytes(), pos: 0 };
        let f = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(f)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Term-list arithmetic under a (module) term order.
///
/// `shifts[c]` is added to the degree of every term in component `c`;
/// components below `split` (when set) dominate all others.
pub(crate) struct Ctx<'a, F: Field> {
    pub field: &'a F,
    pub order: &'a MonomialOrder,
    pub weights: &'a [u32],
    pub shifts: &'a [i64],
    pub split: Option<u32>,
}

impl<'a, F: Field> Ctx<'a, F> {
    #[inline]
    pub fn shift(&self, comp: u32) -> i64 {
        self.shifts.get(comp as usize).copied().unwrap_or(0)
    }

    /// Degree of a term including its component shift.
    #[inline]
    pub fn term_degree(&self, m: &Monomial, comp: u32) -> i64 {
        m.weighted_degree(self.weights) as i64 + self.shift(comp)
    }

    #[inline]
    pub fn cmp_mc(&self, m1: &Monomial, c1: u32, m2: &Monomial, c2: u32) -> Ordering {
        if let Some(s) = self.split {
            let (b1, b2) = (c1 < s, c2 < s);
            if b1 != b2 {
                return if b1 { Ordering::Greater } else { Ordering::Less };
            }
        }
        let o = if c1 == c2 {
            self.order.cmp(m1, m2)
        } else if self.order.is_degree_compatible() {
            let d1 = self.order.primary_degree(m1) + self.shift(c1);
            let d2 = self.order.primary_degree(m2) + self.shift(c2);
            d1.cmp(&d2).then_with(|| tiebreak(m1, m2))
        } else {
            self.order.cmp(m1, m2)
        };
        o.then_with(|| c2.cmp(&c1))
    }

    #[inline]
    pub fn cmp(&self, a: &Term<F::Elem>, b: &Term<F::Elem>) -> Ordering {
        self.cmp_mc(&a.mono, a.comp, &b.mono, b.comp)
    }

    pub fn normalize(&self, mut terms: Vec<Term<F::Elem>>) -> Vec<Term<F::Elem>> {
        terms.sort_by(|a, b| self.cmp(b, a));
        let mut out: Vec<Term<F::Elem>> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono && last.comp == t.comp => {
                    last.coef = self.field.add(&last.coef, &t.coef);
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !self.field.is_zero(&t.coef));
        out
    }

    /// `f + sign * g` by merging.
    fn merge(&self, f: &[Term<F::Elem>], g: &[Term<F::Elem>], negate_g: bool) -> Vec<Term<F::Elem>> {
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        while i < f.len() && j < g.len() {
            match self.cmp(&f[i], &g[j]) {
                Ordering::Greater => {
                    out.push(f[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_g { self.field.neg(&g[j].coef) } else { g[j].coef.clone() };
                    out.push(Term { coef: c, mono: g[j].mono, comp: g[j].comp });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_g {
                        self.field.sub(&f[i].coef, &g[j].coef)
                    } else {
                        self.field.add(&f[i].coef, &g[j].coef)
                    };
                    if !self.field.is_zero(&c) {
                        out.push(Term { coef: c, mono: f[i].mono, comp: f[i].comp });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&f[i..]);
        for t in &g[j..] {
            let c = if negate_g { self.field.neg(&t.coef) } else { t.coef.clone() };
            out.push(Term { coef: c, mono: t.mono, comp: t.comp });
        }
        out
    }

    pub fn add(&self, f: &[Term<F::Elem>], g: &[Term<F::Elem>]) -> Vec<Term<F::Elem>> {
        self.merge(f, g, false)
    }

    pub fn sub(&self, f: &[Term<F::Elem>], g: &[Term<F::Elem>]) -> Vec<Term<F::Elem>> {
        self.merge(f, g, true)
    }

    pub fn scale(&self, f: &[Term<F::Elem>], c: &F::Elem) -> Vec<Term<F::Elem>> {
        if self.field.is_zero(c) {
            return Vec::new();
        }
        f.iter()
            .map(|t| Term { coef: self.field.mul(&t.coef, c), mono: t.mono, comp: t.comp })
            .collect()
    }

    /// `c * m * f`; multiplication by a monomial preserves the order.
    pub fn mul_term(&self, f: &[Term<F::Elem>], c: &F::Elem, m: &Monomial) -> Vec<Term<F::Elem>> {
        if self.field.is_zero(c) {
            return Vec::new();
        }
        f.iter()
            .map(|t| Term { coef: self.field.mul(&t.coef, c), mono: t.mono.mul(m), comp: t.comp })
            .collect()
    }

    /// `f - c * m * g[skip..]`, merging in one pass.
    pub fn sub_mul(
        &self,
        f: &[Term<F::Elem>],
        c: &F::Elem,
        m: &Monomial,
        g: &[Term<F::Elem>],
    ) -> Vec<Term<F::Elem>> {
        let mut out = Vec::with_capacity(f.len() + g.len());
        let mut i = 0;
        for t in g {
            let mono = t.mono.mul(m);
            let coef = self.field.mul(&t.coef, c);
            while i < f.len() && self.cmp_mc(&f[i].mono, f[i].comp, &mono, t.comp) == Ordering::Greater {
                out.push(f[i].clone());
                i += 1;
            }
            if i < f.len() && f[i].mono == mono && f[i].comp == t.comp {
                let v = self.field.sub(&f[i].coef, &coef);
                if !self.field.is_zero(&v) {
                    out.push(Term { coef: v, mono, comp: t.comp });
                }
                i += 1;
            } else {
                out.push(Term { coef: self.field.neg(&coef), mono, comp: t.comp });
            }
        }
        out.extend_from_slice(&f[i..]);
        out
    }

    /// Product of a plain polynomial `p` with a (vector) polynomial `v`.
    pub fn mul(&self, p: &[Term<F::Elem>], v: &[Term<F::Elem>]) -> Vec<Term<F::Elem>> {
        if p.is_empty() || v.is_empty() {
            return Vec::new();
        }
        if p.len() == 1 {
            return self.mul_term(v, &p[0].coef, &p[0].mono);
        }
        let mut raw = Vec::with_capacity(p.len() * v.len());
        for a in p {
            for b in v {
                raw.push(Term { coef: self.field.mul(&a.coef, &b.coef), mono: a.mono.mul(&b.mono), comp: b.comp });
            }
        }
        self.normalize(raw)
    }

    pub fn make_monic(&self, f: &mut [Term<F::Elem>]) {
        if let Some(lead) = f.first() {
            if self.field.is_one(&lead.coef) {
                return;
            }
            let inv = self.field.inv(&lead.coef);
            for t in f.iter_mut() {
                t.coef = self.field.mul(&t.coef, &inv);
            }
        }
    }

    /// Highest term degree (including shifts) of a nonzero element.
    pub fn max_degree(&self, f: &[Term<F::Elem>]) -> i64 {
        f.iter().map(|t| self.term_degree(&t.mono, t.comp)).max().unwrap_or(i64::MIN)
    }
}

#[inline]
fn tiebreak(a: &Monomial, b: &Monomial) -> Ordering {
    for i in (0..a.nvars()).rev() {
        let (x, y) = (a.exponent(i), b.exponent(i));
        if x != y {
            return y.cmp(&x);
        }
    }
    Ordering::Equal
}

/// A polynomial in canonical form: terms strictly decreasing, no zero coefficients.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: RingRef<F>,
    terms: Vec<Term<F::Elem>>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_ring(&self.ring, &other.ring)
    }
}
impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> std::hash::Hash for Polynomial<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

pub(crate) fn same_ring<F: Field>(a: &RingRef<F>, b: &RingRef<F>) -> bool {
    Arc::ptr_eq(a, b) || (a.names == b.names && a.weights == b.weights && a.order == b.order && a.field == b.field)
}

impl<F: Field> Polynomial<F> {
    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }
    pub fn terms(&self) -> &[Term<F::Elem>] {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }
    pub fn lead_term(&self) -> Option<&Term<F::Elem>> {
        self.terms.first()
    }
    pub fn lead_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.mono)
    }
    pub fn lead_coef(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.coef)
    }
    /// Largest standard total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }
    /// Largest weighted degree of a term; `None` for zero.
    pub fn weighted_degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| self.ring.weighted_degree(&t.mono)).max()
    }
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|t| self.ring.weighted_degree(&t.mono));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::Context("polynomials belong to different rings".into()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.ring.wrap(self.ring.ctx().add(&self.terms, &other.terms)))
    }
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.ring.wrap(self.ring.ctx().sub(&self.terms, &other.terms)))
    }
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.ring.wrap(self.ring.ctx().mul(&self.terms, &other.terms)))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.ring.wrap(self.ring.ctx().scale(&self.terms, c))
    }

    pub fn mul_monomial(&self, c: &F::Elem, m: &Monomial) -> Self {
        self.ring.wrap(self.ring.ctx().mul_term(&self.terms, c, m))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn monic(&self) -> Self {
        let mut terms = self.terms.clone();
        self.ring.ctx().make_monic(&mut terms);
        self.ring.wrap(terms)
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let f = self.ring.field();
        let raw = self
            .terms
            .iter()
            .filter(|t| t.mono.exponent(i) > 0)
            .map(|t| {
                let e = t.mono.exponent(i);
                let mut m = t.mono;
                m.set_exponent(i, e - 1);
                Term { coef: f.mul(&t.coef, &f.from_i64(e as i64)), mono: m, comp: 0 }
            })
            .collect();
        self.ring.wrap(self.ring.ctx().normalize(raw))
    }

    /// Substitute `images[i]` for variable `i`, landing in the images' ring.
    pub fn substitute(&self, target: &RingRef<F>, images: &[Polynomial<F>]) -> Result<Polynomial<F>> {
        if images.len() != self.ring.nvars() {
            return Err(AlgebraError::Context(format!(
                "{} images for {} variables",
                images.len(),
                self.ring.nvars()
            )));
        }
        let mut acc = target.zero();
        for t in &self.terms {
            let mut prod = target.constant(t.coef.clone());
            for (i, img) in images.iter().enumerate() {
                let e = t.mono.exponent(i);
                if e > 0 {
                    prod = prod.checked_mul(&img.pow(e))?;
                }
            }
            acc = acc.checked_add(&prod)?;
        }
        Ok(acc)
    }

    /// Re-embed into `target`, mapping variable `i` to target variable `i + offset`.
    pub fn embed(&self, target: &RingRef<F>, offset: usize) -> Polynomial<F> {
        let raw = self
            .terms
            .iter()
            .map(|t| Term { coef: t.coef.clone(), mono: t.mono.embed(target.nvars(), offset), comp: 0 })
            .collect();
        target.wrap(target.ctx().normalize(raw))
    }

    /// Same terms, sorted for a ring with identical variables but another order.
    pub fn reinterpret(&self, target: &RingRef<F>) -> Polynomial<F> {
        debug_assert_eq!(target.nvars(), self.ring.nvars());
        target.wrap(target.ctx().normalize(self.terms.clone()))
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let field = self.ring.field();
        for (k, t) in self.terms.iter().enumerate() {
            let (neg, mag) = field.to_signed_string(&t.coef);
            match (k, neg) {
                (0, true) => write!(out, "-")?,
                (0, false) => {}
                (_, true) => write!(out, " - ")?,
                (_, false) => write!(out, " + ")?,
            }
            let mono = format_monomial(&self.ring.names, &t.mono);
            if mono.is_empty() {
                write!(out, "{mag}")?;
            } else if mag == "1" {
                write!(out, "{mono}")?;
            } else {
                write!(out, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

pub(crate) fn format_monomial(names: &[String], m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, name) in names.iter().enumerate() {
        match m.exponent(i) {
            0 => {}
            1 => parts.push(name.clone()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, F: Field> $tr<&'a Polynomial<F>> for &'a Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
                self.$checked(rhs).expect("polynomials from different rings")
            }
        }
        impl<F: Field> $tr<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$method(&rhs)
            }
        }
    };
}
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        let f = self.ring.field();
        self.ring.wrap(self.terms.iter().map(|t| Term { coef: f.neg(&t.coef), mono: t.mono, comp: 0 }).collect())
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

struct Parser<'r, F: Field> {
    ring: &'r RingRef<F>,
    src: &'r [u8],
    pos: usize,
}

impl<F: Field> Parser<'_, F> {
    fn error(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse { column: self.pos + 1, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial<F>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.integer()?;
            let e = u32::try_from(&n).map_err(|_| self.error("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut den = BigInt::one();
                if self.peek() == Some(b'/') {
                    let at = self.pos;
                    self.pos += 1;
                    self.skip_ws();
                    if !self.ring.field().accepts_fraction_literals() {
                        self.pos = at;
                        return Err(self.error("rational literals are only accepted over QQ"));
                    }
                    den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                }
                let c = self.ring.field().from_fraction(&num, &den)?;
                Ok(self.ring.constant(c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.ring.var_index(name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => {
                        self.pos = start;
                        Err(self.error(&format!("unknown variable {name}")))
                    }
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
