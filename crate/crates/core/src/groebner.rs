//! Buchberger's algorithm for ideals and submodules of free modules.
//!
//! Pairs are pruned with the Gebauer–Möller criteria and processed smallest
//! lcm first. Every step is deterministic, so equal inputs give bit-identical
//! bases. Module computations with a position-over-term split provide
//! syzygies, colons, intersections and preimages through [`preimage`].

use std::cmp::Ordering;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::module::{FreeModule, VectorPolynomial};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{same_ring, Ctx, PolyRing, Polynomial, RingRef, Term};

type Terms<F> = Vec<Term<<F as Field>::Elem>>;

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
}

/// Full reduction of `f` by the basis elements listed in `active`.
fn reduce<F: Field>(
    ctx: &Ctx<'_, F>,
    f: Terms<F>,
    basis: &[Terms<F>],
    masks: &[u32],
    active: &[usize],
) -> Terms<F> {
    let mut rem = Vec::new();
    let mut p = f;
    let mut start = 0;
    while start < p.len() {
        let t = &p[start];
        let tm = t.mono.support_mask();
        let hit = active.iter().copied().find(|&k| {
            let l = &basis[k][0];
            l.comp == t.comp && masks[k] & !tm == 0 && l.mono.divides(&t.mono)
        });
        match hit {
            Some(k) => {
                let q = basis[k][0].mono.divide_into(&t.mono).expect("divisor checked");
                let c = t.coef.clone();
                p = ctx.sub_mul(&p[start..], &c, &q, &basis[k]);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    rem
}

/// Reduction that also records the multipliers used: `f = Σ c·m·basis[k] + rem`.
fn reduce_tracking<F: Field>(
    ctx: &Ctx<'_, F>,
    f: Terms<F>,
    basis: &[Terms<F>],
) -> (Terms<F>, Vec<(usize, F::Elem, Monomial)>) {
    let mut rem = Vec::new();
    let mut used = Vec::new();
    let mut p = f;
    let mut start = 0;
    while start < p.len() {
        let t = &p[start];
        let hit = basis.iter().position(|g| g[0].comp == t.comp && g[0].mono.divides(&t.mono));
        match hit {
            Some(k) => {
                let q = basis[k][0].mono.divide_into(&t.mono).expect("divisor checked");
                let c = ctx.field.div(&t.coef, &basis[k][0].coef);
                p = ctx.sub_mul(&p[start..], &c, &q, &basis[k]);
                used.push((k, c, q));
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    (rem, used)
}

struct Buchberger<'c, 'a, F: Field> {
    ctx: &'c Ctx<'a, F>,
    max_degree: u32,
    product_criterion: bool,
    basis: Vec<Terms<F>>,
    masks: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<'c, 'a, F: Field> Buchberger<'c, 'a, F> {
    fn active_indices(&self) -> Vec<usize> {
        (0..self.basis.len()).filter(|&k| self.active[k]).collect()
    }

    fn lcm_degree(&self, m: &Monomial) -> u64 {
        m.weighted_degree(self.ctx.weights)
    }

    fn update(&mut self, h: Terms<F>) {
        let t = self.basis.len();
        let lh = h[0].mono;
        let ch = h[0].comp;
        let cands: Vec<(usize, Monomial, bool)> = (0..t)
            .filter(|&i| self.active[i] && self.basis[i][0].comp == ch)
            .map(|i| {
                let li = self.basis[i][0].mono;
                (i, li.lcm(&lh), self.product_criterion && li.is_coprime(&lh))
            })
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (idx, &(i, m, coprime)) in cands.iter().enumerate() {
            let dominated = cands[idx + 1..].iter().any(|(_, m2, _)| m2.divides(&m))
                || kept.iter().any(|(_, m2, _)| m2.divides(&m));
            if coprime || !dominated {
                kept.push((i, m, coprime));
            }
        }
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if p.comp != ch || !lh.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i][0].mono.lcm(&lh);
            let lj = basis[p.j][0].mono.lcm(&lh);
            li == p.lcm || lj == p.lcm
        });
        for (i, m, coprime) in kept {
            if !coprime {
                self.pairs.push(Pair { i, j: t, lcm: m, comp: ch });
            }
        }
        for k in 0..t {
            if self.active[k] && self.basis[k][0].comp == ch && lh.divides(&self.basis[k][0].mono) {
                self.active[k] = false;
            }
        }
        self.masks.push(lh.support_mask());
        self.basis.push(h);
        self.active.push(true);
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let o = self
                .ctx
                .cmp_mc(&a.lcm, a.comp, &b.lcm, b.comp)
                .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
            if o == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn insert(&mut self, f: Terms<F>) {
        let act = self.active_indices();
        let mut h = reduce(self.ctx, f, &self.basis, &self.masks, &act);
        if !h.is_empty() {
            self.ctx.make_monic(&mut h);
            self.update(h);
        }
    }

    fn run(mut self, gens: Vec<Terms<F>>) -> Result<Vec<Terms<F>>> {
        let mut input: Vec<Terms<F>> = gens.into_iter().filter(|g| !g.is_empty()).collect();
        input.sort_by(|a, b| self.ctx.cmp(&a[0], &b[0]));
        for f in input {
            self.insert(f);
        }
        while let Some(p) = self.select() {
            let d = self.lcm_degree(&p.lcm);
            if d > self.max_degree as u64 {
                return Err(AlgebraError::Resource(format!(
                    "S-pair of degree {d} exceeds the working-degree guard {}",
                    self.max_degree
                )));
            }
            let (gi, gj) = (&self.basis[p.i], &self.basis[p.j]);
            let qi = gi[0].mono.divide_into(&p.lcm).expect("lcm");
            let qj = gj[0].mono.divide_into(&p.lcm).expect("lcm");
            let one = self.ctx.field.one();
            let a = self.ctx.mul_term(gi, &one, &qi);
            let s = self.ctx.sub_mul(&a, &one, &qj, gj);
            self.insert(s);
        }
        let mut out: Vec<Terms<F>> =
            (0..self.basis.len()).filter(|&k| self.active[k]).map(|k| self.basis[k].clone()).collect();
        let masks: Vec<u32> = out.iter().map(|g| g[0].mono.support_mask()).collect();
        for k in 0..out.len() {
            let others: Vec<usize> = (0..out.len()).filter(|&o| o != k).collect();
            let g = std::mem::take(&mut out[k]);
            let lead = g[0].clone();
            let tail = reduce(self.ctx, g[1..].to_vec(), &out, &masks, &others);
            let mut full = Vec::with_capacity(tail.len() + 1);
            full.push(lead);
            full.extend(tail);
            out[k] = full;
        }
        out.sort_by(|a, b| self.ctx.cmp(&b[0], &a[0]));
        Ok(out)
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens` under `ctx`.
pub(crate) fn buchberger_raw<F: Field>(
    ctx: &Ctx<'_, F>,
    max_degree: u32,
    gens: Vec<Terms<F>>,
) -> Result<Vec<Terms<F>>> {
    let gens: Vec<Terms<F>> = gens.into_iter().map(|g| ctx.normalize(g)).collect();
    let rank_one = gens.iter().flatten().all(|t| t.comp == 0) && ctx.split.is_none();
    Buchberger {
        ctx,
        max_degree,
        product_criterion: rank_one,
        basis: Vec::new(),
        masks: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    }
    .run(gens)
}

/// A reduced Gröbner basis of an ideal (rank 1) or a submodule of `⊕ S(-shifts)`.
#[derive(Debug, Clone)]
pub struct GroebnerBasis<F: Field> {
    ring: RingRef<F>,
    shifts: Vec<i64>,
    elems: Vec<Terms<F>>,
}

impl<F: Field> PartialEq for GroebnerBasis<F> {
    fn eq(&self, other: &Self) -> bool {
        self.elems == other.elems && self.shifts == other.shifts && same_ring(&self.ring, &other.ring)
    }
}

impl<F: Field> GroebnerBasis<F> {
    /// Basis of the ideal generated by `gens` in `ring`.
    pub fn ideal(ring: &RingRef<F>, gens: &[Polynomial<F>]) -> Result<Self> {
        for g in gens {
            if !same_ring(g.ring(), ring) {
                return Err(AlgebraError::Context("generator from another ring".into()));
            }
        }
        let raw = gens.iter().map(|g| g.terms().to_vec()).collect();
        Self::from_raw(ring, vec![0], raw)
    }

    /// Basis of the submodule of `module` generated by `gens`.
    pub fn submodule(module: &FreeModule<F>, gens: &[VectorPolynomial<F>]) -> Result<Self> {
        let raw = gens.iter().map(|g| g.terms.clone()).collect();
        Self::from_raw(module.ring(), module.shifts().to_vec(), raw)
    }

    pub(crate) fn from_raw(ring: &RingRef<F>, shifts: Vec<i64>, gens: Vec<Terms<F>>) -> Result<Self> {
        let ctx = ring.module_ctx(&shifts, None);
        let elems = buchberger_raw(&ctx, ring.max_degree(), gens)?;
        Ok(GroebnerBasis { ring: ring.clone(), shifts, elems })
    }

    /// Wrap terms already known to form a reduced basis.
    pub(crate) fn from_reduced(ring: &RingRef<F>, shifts: Vec<i64>, elems: Vec<Terms<F>>) -> Self {
        GroebnerBasis { ring: ring.clone(), shifts, elems }
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }
    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }
    pub fn rank(&self) -> usize {
        self.shifts.len()
    }
    pub fn len(&self) -> usize {
        self.elems.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
    pub(crate) fn raw(&self) -> &[Terms<F>] {
        &self.elems
    }

    pub(crate) fn ctx(&self) -> Ctx<'_, F> {
        self.ring.module_ctx(&self.shifts, None)
    }

    pub fn module(&self) -> FreeModule<F> {
        FreeModule::new(&self.ring, self.shifts.clone())
    }

    /// Elements as polynomials (rank 1 only; higher components are dropped).
    pub fn polynomials(&self) -> Vec<Polynomial<F>> {
        self.elems
            .iter()
            .map(|e| self.ring.wrap(e.iter().filter(|t| t.comp == 0).cloned().collect()))
            .collect()
    }

    pub fn vectors(&self) -> Vec<VectorPolynomial<F>> {
        self.elems.iter().map(|e| VectorPolynomial::from_terms(e.clone())).collect()
    }

    /// Leading monomials of the elements in component `comp`.
    pub fn leading_monomials(&self, comp: usize) -> Vec<Monomial> {
        self.elems.iter().filter(|e| e[0].comp as usize == comp).map(|e| e[0].mono).collect()
    }

    /// Whether the basis contains a unit vector multiple, i.e. generates `e_comp`.
    pub fn contains_basis_vector(&self, comp: usize) -> bool {
        self.elems.iter().any(|e| e[0].comp as usize == comp && e[0].mono.is_one())
    }

    /// For ideals: whether the basis generates the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.contains_basis_vector(0)
    }

    pub(crate) fn reduce_terms(&self, f: Terms<F>) -> Terms<F> {
        let masks: Vec<u32> = self.elems.iter().map(|g| g[0].mono.support_mask()).collect();
        let all: Vec<usize> = (0..self.elems.len()).collect();
        reduce(&self.ctx(), f, &self.elems, &masks, &all)
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(AlgebraError::Context("polynomial from another ring".into()));
        }
        if self.rank() != 1 {
            return Err(AlgebraError::Context("polynomial reduced by a module basis".into()));
        }
        Ok(self.ring.wrap(self.reduce_terms(f.terms().to_vec())))
    }

    pub fn reduce_vector(&self, v: &VectorPolynomial<F>) -> VectorPolynomial<F> {
        VectorPolynomial::from_terms(self.reduce_terms(self.ctx().normalize(v.terms.clone())))
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_vector(&self, v: &VectorPolynomial<F>) -> bool {
        self.reduce_vector(v).is_zero()
    }

    /// Whether every element of `other` lies in the span of `self`.
    pub fn contains_all(&self, other: &GroebnerBasis<F>) -> bool {
        other.elems.iter().all(|e| self.reduce_terms(e.clone()).is_empty())
    }

    /// Shifted degree of each element's leading term.
    pub fn degrees(&self) -> Vec<i64> {
        let ctx = self.ctx();
        self.elems.iter().map(|e| ctx.term_degree(&e[0].mono, e[0].comp)).collect()
    }

    /// Schreyer syzygies: one relation per S-pair, in `⊕ S(-deg g_k)`.
    pub fn syzygies(&self) -> (FreeModule<F>, Vec<VectorPolynomial<F>>) {
        let ctx = self.ctx();
        let field = self.ring.field();
        let source = FreeModule::new(&self.ring, self.degrees());
        let sctx = source.ctx();
        let one = field.one();
        let mut out = Vec::new();
        for j in 0..self.elems.len() {
            for i in 0..j {
                let (gi, gj) = (&self.elems[i], &self.elems[j]);
                if gi[0].comp != gj[0].comp {
                    continue;
                }
                let m = gi[0].mono.lcm(&gj[0].mono);
                let qi = gi[0].mono.divide_into(&m).expect("lcm");
                let qj = gj[0].mono.divide_into(&m).expect("lcm");
                let a = ctx.mul_term(gi, &one, &qi);
                let s = ctx.sub_mul(&a, &one, &qj, gj);
                let (rem, used) = reduce_tracking(&ctx, s, &self.elems);
                debug_assert!(rem.is_empty(), "basis is not a Gröbner basis");
                let mut raw = vec![
                    Term { coef: one.clone(), mono: qi, comp: i as u32 },
                    Term { coef: field.neg(&one), mono: qj, comp: j as u32 },
                ];
                for (k, c, q) in used {
                    raw.push(Term { coef: field.neg(&c), mono: q, comp: k as u32 });
                }
                let v = sctx.normalize(raw);
                if !v.is_empty() {
                    out.push(VectorPolynomial::from_terms(v));
                }
            }
        }
        (source, out)
    }

    /// Express a vector of the free module in terms of basis elements, if it is in the span.
    pub fn lift(&self, v: &VectorPolynomial<F>) -> Option<Vec<(usize, F::Elem, Monomial)>> {
        let (rem, used) = reduce_tracking(&self.ctx(), self.ctx().normalize(v.terms.clone()), &self.elems);
        rem.is_empty().then_some(used)
    }

    pub fn to_strings(&self) -> Vec<String> {
        if self.rank() == 1 {
            self.polynomials().iter().map(|p| p.to_string()).collect()
        } else {
            let m = self.module();
            self.vectors().iter().map(|v| m.format(v)).collect()
        }
    }
}

/// The submodule `{v ∈ ⊕ S(-source_shifts) : Σ v_j cols_j ∈ ⟨sub⟩}` as a reduced basis.
///
/// `cols` and `sub` live in `⊕ S(-target_shifts)`.
pub(crate) fn preimage<F: Field>(
    ring: &RingRef<F>,
    target_shifts: &[i64],
    cols: &[Terms<F>],
    sub: &[Terms<F>],
    source_shifts: &[i64],
) -> Result<Vec<Terms<F>>> {
    let r = target_shifts.len() as u32;
    let mut shifts = target_shifts.to_vec();
    shifts.extend_from_slice(source_shifts);
    let ctx = ring.module_ctx(&shifts, Some(r));
    let one = ring.field().one();
    let mut gens: Vec<Terms<F>> = Vec::with_capacity(cols.len() + sub.len());
    for (j, c) in cols.iter().enumerate() {
        let mut v = c.clone();
        v.push(Term { coef: one.clone(), mono: Monomial::one(ring.nvars()), comp: r + j as u32 });
        gens.push(v);
    }
    gens.extend(sub.iter().cloned());
    let gb = buchberger_raw(&ctx, ring.max_degree(), gens)?;
    Ok(gb
        .into_iter()
        .filter(|g| g[0].comp >= r)
        .map(|g| g.into_iter().map(|t| Term { comp: t.comp - r, ..t }).collect())
        .collect())
}

/// Generators of all relations `Σ a_j g_j = 0`, as a reduced basis in `⊕ S(-deg g_j)`.
pub fn syzygy_module<F: Field>(
    module: &FreeModule<F>,
    gens: &[VectorPolynomial<F>],
) -> Result<(FreeModule<F>, GroebnerBasis<F>)> {
    let ctx = module.ctx();
    let degs: Vec<i64> = gens.iter().map(|g| if g.is_zero() { 0 } else { ctx.max_degree(&g.terms) }).collect();
    let cols: Vec<Terms<F>> = gens.iter().map(|g| g.terms.clone()).collect();
    let raw = preimage(module.ring(), module.shifts(), &cols, &[], &degs)?;
    let source = FreeModule::new(module.ring(), degs.clone());
    Ok((source, GroebnerBasis::from_reduced(module.ring(), degs, raw)))
}

/// Ideal colon `(I : J)` in the ring of the generators.
pub fn ideal_colon<F: Field>(
    ring: &RingRef<F>,
    i_gens: &[Polynomial<F>],
    j_gens: &[Polynomial<F>],
) -> Result<GroebnerBasis<F>> {
    let sub: Vec<Terms<F>> = i_gens.iter().map(|g| g.terms().to_vec()).collect();
    let mut acc: Option<GroebnerBasis<F>> = None;
    for g in j_gens {
        let part = preimage(ring, &[0], &[g.terms().to_vec()], &sub, &[0])?;
        let gb = GroebnerBasis::from_reduced(ring, vec![0], part);
        acc = Some(match acc {
            None => gb,
            Some(prev) => intersect_bases(&prev, &gb)?,
        });
    }
    match acc {
        Some(gb) => Ok(gb),
        None => GroebnerBasis::ideal(ring, &[ring.one()]),
    }
}

/// Intersection of two submodules of the same free module.
pub fn intersect_bases<F: Field>(a: &GroebnerBasis<F>, b: &GroebnerBasis<F>) -> Result<GroebnerBasis<F>> {
    if a.shifts != b.shifts || !same_ring(&a.ring, &b.ring) {
        return Err(AlgebraError::Context("intersection of submodules of different modules".into()));
    }
    let degs = a.degrees();
    let pre = preimage(&a.ring, &a.shifts, &a.elems, &b.elems, &degs)?;
    let ctx = a.ctx();
    let images: Vec<Terms<F>> = pre
        .iter()
        .map(|v| {
            let mut acc: Terms<F> = Vec::new();
            for t in v {
                let part = ctx.mul_term(&a.elems[t.comp as usize], &t.coef, &t.mono);
                acc = ctx.add(&acc, &part);
            }
            acc
        })
        .collect();
    GroebnerBasis::from_raw(&a.ring, a.shifts.clone(), images)
}

/// Polynomials of the ideal generated by `gens` that involve none of the first `k` variables.
pub fn eliminate<F: Field>(ring: &RingRef<F>, gens: &[Polynomial<F>], k: usize) -> Result<Vec<Polynomial<F>>> {
    let n = ring.nvars();
    if k > n {
        return Err(AlgebraError::Domain(format!("cannot eliminate {k} of {n} variables")));
    }
    let order = if k == 0 || k == n { MonomialOrder::Grevlex } else { MonomialOrder::Block(vec![k, n - k]) };
    let elim_ring = ring.reordered(order)?;
    let moved: Vec<Polynomial<F>> = gens.iter().map(|g| g.reinterpret(&elim_ring)).collect();
    let gb = GroebnerBasis::ideal(&elim_ring, &moved)?;
    Ok(gb
        .polynomials()
        .into_iter()
        .filter(|p| p.terms().iter().all(|t| (0..k).all(|i| t.mono.exponent(i) == 0)))
        .map(|p| p.reinterpret(ring))
        .collect())
}

/// Generators of the kernel of `source → target/⟨relations⟩`, `x_j ↦ images[j]`.
pub fn ring_map_kernel<F: Field>(
    source: &RingRef<F>,
    target: &RingRef<F>,
    relations: &[Polynomial<F>],
    images: &[Polynomial<F>],
) -> Result<Vec<Polynomial<F>>> {
    if images.len() != source.nvars() {
        return Err(AlgebraError::Context(format!(
            "{} images for {} source variables",
            images.len(),
            source.nvars()
        )));
    }
    if source.field() != target.field() {
        return Err(AlgebraError::Context("source and target over different fields".into()));
    }
    let (nt, ns) = (target.nvars(), source.nvars());
    let names: Vec<String> = (0..nt).map(|i| format!("_t{i}")).chain((0..ns).map(|j| format!("_s{j}"))).collect();
    let mut weights = target.weights().to_vec();
    weights.extend_from_slice(source.weights());
    let order = if nt == 0 { MonomialOrder::Grevlex } else { MonomialOrder::Block(vec![nt, ns]) };
    let big = PolyRing::with_order(target.field().clone(), &names, weights, order)?
        .with_max_degree(source.max_degree().max(target.max_degree()));
    let mut gens = Vec::new();
    for (j, img) in images.iter().enumerate() {
        if !same_ring(img.ring(), target) {
            return Err(AlgebraError::Context("image from another ring".into()));
        }
        gens.push(&big.var(nt + j) - &img.embed(&big, 0));
    }
    for r in relations {
        gens.push(r.embed(&big, 0));
    }
    let gb = GroebnerBasis::ideal(&big, &gens)?;
    let mut out = Vec::new();
    for p in gb.polynomials() {
        if p.terms().iter().all(|t| (0..nt).all(|i| t.mono.exponent(i) == 0)) {
            let terms = p.terms().iter().map(|t| (t.coef.clone(), t.mono.restrict(nt, ns))).collect();
            out.push(source.from_terms(terms));
        }
    }
    Ok(out)
}
