//! Free resolutions, Ext against the ambient polynomial ring, graded local
//! cohomology lengths through duality, depth, and Koszul homology.

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{preimage, GroebnerBasis};
use crate::monomial::Monomial;
use crate::par::Execution;
use crate::poly::{Ctx, Polynomial, RingRef, Term};
use crate::presentation::{relative_length, ModulePresentation};
use crate::ring::{subsets, PresentedRing, RingIdeal};

type Terms<F> = Vec<Term<<F as Field>::Elem>>;

/// A minimal graded free resolution `0 → F_p → ... → F_1 → F_0`.
///
/// `maps[i]` holds the columns of `d_{i+1}: F_{i+1} → F_i`, each a vector of `F_i`.
#[derive(Debug, Clone)]
pub struct FreeResolution<F: Field> {
    ring: RingRef<F>,
    shifts: Vec<Vec<i64>>,
    maps: Vec<Vec<Terms<F>>>,
}

impl<F: Field> FreeResolution<F> {
    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }
    /// Projective dimension; `None` for the zero module.
    pub fn length(&self) -> Option<usize> {
        if self.shifts[0].is_empty() {
            None
        } else {
            Some(self.maps.len())
        }
    }
    pub fn betti_numbers(&self) -> Vec<usize> {
        self.shifts.iter().map(|s| s.len()).collect()
    }
    /// Degrees of the basis elements of `F_i`.
    pub fn shifts(&self, i: usize) -> &[i64] {
        self.shifts.get(i).map(|s| s.as_slice()).unwrap_or(&[])
    }
    /// Columns of `d_i`, `i ≥ 1`.
    pub(crate) fn differential(&self, i: usize) -> &[Terms<F>] {
        if i == 0 || i > self.maps.len() {
            &[]
        } else {
            &self.maps[i - 1]
        }
    }

    /// `d_i ∘ d_{i+1} = 0` for every `i`.
    pub fn is_complex(&self) -> bool {
        for i in 1..self.maps.len() {
            let ctx = self.ring.module_ctx(&self.shifts[i - 1], None);
            let d = &self.maps[i - 1];
            for col in &self.maps[i] {
                if !apply(&ctx, d, col).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Graded Betti table entries `(i, degree, count)`.
    pub fn graded_betti(&self) -> Vec<(usize, i64, usize)> {
        let mut out = Vec::new();
        for (i, s) in self.shifts.iter().enumerate() {
            let mut degs = s.clone();
            degs.sort_unstable();
            let mut k = 0;
            while k < degs.len() {
                let d = degs[k];
                let c = degs[k..].iter().take_while(|&&x| x == d).count();
                out.push((i, d, c));
                k += c;
            }
        }
        out
    }
}

/// `Σ_j v_j · cols[j]` for a vector `v` of the source module.
fn apply<F: Field>(ctx: &Ctx<'_, F>, cols: &[Terms<F>], v: &[Term<F::Elem>]) -> Terms<F> {
    let mut acc: Terms<F> = Vec::new();
    for t in v {
        let part = ctx.mul_term(&cols[t.comp as usize], &t.coef, &t.mono);
        acc = ctx.add(&acc, &part);
    }
    acc
}

/// Minimal homogeneous generators of the submodule spanned by `gens`.
fn minimal_generators<F: Field>(ring: &RingRef<F>, shifts: &[i64], gens: &[Terms<F>]) -> Result<Vec<Terms<F>>> {
    let ctx = ring.module_ctx(shifts, None);
    let mut sorted: Vec<Terms<F>> = gens.iter().filter(|g| !g.is_empty()).map(|g| ctx.normalize(g.clone())).collect();
    sorted.sort_by(|a, b| {
        ctx.term_degree(&a[0].mono, a[0].comp)
            .cmp(&ctx.term_degree(&b[0].mono, b[0].comp))
            .then_with(|| ctx.cmp(&a[0], &b[0]))
    });
    let mut kept: Vec<Terms<F>> = Vec::new();
    let mut gb = GroebnerBasis::from_reduced(ring, shifts.to_vec(), Vec::new());
    for g in sorted {
        if gb.reduce_terms(g.clone()).is_empty() {
            continue;
        }
        let mut next: Vec<Terms<F>> = gb.raw().to_vec();
        next.push(g.clone());
        gb = GroebnerBasis::from_raw(ring, shifts.to_vec(), next)?;
        kept.push(g);
    }
    Ok(kept)
}

/// Remove unit entries of a presentation matrix, shrinking the target free module.
fn prune_units<F: Field>(ring: &RingRef<F>, shifts: &mut Vec<i64>, cols: &mut Vec<Terms<F>>) {
    let field = ring.field();
    loop {
        let found = cols.iter().enumerate().find_map(|(c, v)| v.iter().find(|t| t.mono.is_one()).map(|t| (c, t.comp, t.coef.clone())));
        let Some((c, r, u)) = found else { return };
        let pivot = cols[c].clone();
        let ctx = ring.module_ctx(shifts, None);
        let inv = field.inv(&u);
        for (k, col) in cols.iter_mut().enumerate() {
            if k == c {
                continue;
            }
            let entry: Terms<F> = col
                .iter()
                .filter(|t| t.comp == r)
                .map(|t| Term { coef: field.mul(&t.coef, &inv), mono: t.mono, comp: 0 })
                .collect();
            if entry.is_empty() {
                continue;
            }
            let entry = ring.ctx().normalize(entry);
            *col = ctx.sub(col, &ctx.mul(&entry, &pivot));
        }
        cols.remove(c);
        shifts.remove(r as usize);
        for col in cols.iter_mut() {
            debug_assert!(col.iter().all(|t| t.comp != r));
            for t in col.iter_mut() {
                if t.comp > r {
                    t.comp -= 1;
                }
            }
        }
        let ctx = ring.module_ctx(shifts, None);
        cols.retain(|v| !v.is_empty());
        for col in cols.iter_mut() {
            *col = ctx.normalize(std::mem::take(col));
        }
    }
}

fn require_graded<F: Field>(m: &ModulePresentation<F>) -> Result<()> {
    if !m.ring().is_standard_graded() || !m.ring().order().is_degree_compatible() {
        return Err(AlgebraError::Precondition(
            "resolutions need a standard-graded ring with a degree-compatible order".into(),
        ));
    }
    if !m.is_graded() {
        return Err(AlgebraError::Precondition("module presentation is not homogeneous".into()));
    }
    Ok(())
}

/// Minimal graded free resolution of a homogeneous module.
pub fn free_resolution<F: Field>(m: &ModulePresentation<F>) -> Result<FreeResolution<F>> {
    require_graded(m)?;
    let ring = m.ring().clone();
    let mut f0 = m.shifts().to_vec();
    let mut d1 = minimal_generators(&ring, &f0, m.relations().raw())?;
    prune_units(&ring, &mut f0, &mut d1);
    d1 = minimal_generators(&ring, &f0, &d1)?;
    let mut shifts = vec![f0];
    let mut maps: Vec<Vec<Terms<F>>> = Vec::new();
    let mut cols = d1;
    while !cols.is_empty() {
        let prev = shifts.last().expect("nonempty");
        let ctx = ring.module_ctx(prev, None);
        let degs: Vec<i64> = cols.iter().map(|c| ctx.term_degree(&c[0].mono, c[0].comp)).collect();
        let syz = preimage(&ring, prev, &cols, &[], &degs)?;
        let next = minimal_generators(&ring, &degs, &syz)?;
        shifts.push(degs);
        maps.push(cols);
        cols = next;
        if maps.len() > ring.nvars() + 1 {
            return Err(AlgebraError::Internal("resolution longer than the number of variables".into()));
        }
    }
    Ok(FreeResolution { ring, shifts, maps })
}

/// Row `j` of a matrix given by columns, as a vector indexed by column number.
fn row<F: Field>(cols: &[Terms<F>], j: u32) -> Terms<F> {
    let mut out = Vec::new();
    for (k, c) in cols.iter().enumerate() {
        for t in c.iter().filter(|t| t.comp == j) {
            out.push(Term { coef: t.coef.clone(), mono: t.mono, comp: k as u32 });
        }
    }
    out
}

/// `Ext^i_S(M, S)` from a minimal resolution of `M`, presented as a quotient of a free module.
pub fn ext_from_resolution<F: Field>(res: &FreeResolution<F>, i: usize) -> Result<ModulePresentation<F>> {
    let ring = &res.ring;
    let len = res.maps.len();
    if i > len || res.shifts[0].is_empty() {
        return Ok(ModulePresentation::free(ring, Vec::new()));
    }
    let dual_i: Vec<i64> = res.shifts[i].iter().map(|s| -s).collect();
    let ranks_i = dual_i.len() as u32;
    let ctx = ring.module_ctx(&dual_i, None);
    let kernel: Vec<Terms<F>> = if i == len {
        (0..ranks_i)
            .map(|c| vec![Term { coef: ring.field().one(), mono: Monomial::one(ring.nvars()), comp: c }])
            .collect()
    } else {
        let next = res.differential(i + 1);
        let dual_next: Vec<i64> = res.shifts[i + 1].iter().map(|s| -s).collect();
        let rows: Vec<Terms<F>> = (0..ranks_i).map(|j| ctx_sorted(ring, &dual_next, row::<F>(next, j))).collect();
        preimage(ring, &dual_next, &rows, &[], &dual_i)?
    };
    let kernel = minimal_generators(ring, &dual_i, &kernel)?;
    if kernel.is_empty() {
        return Ok(ModulePresentation::free(ring, Vec::new()));
    }
    let image: Vec<Terms<F>> = if i == 0 {
        Vec::new()
    } else {
        let prev = res.differential(i);
        (0..res.shifts[i - 1].len() as u32).map(|j| ctx_sorted(ring, &dual_i, row::<F>(prev, j))).filter(|v| !v.is_empty()).collect()
    };
    let gen_degs: Vec<i64> = kernel.iter().map(|k| ctx.term_degree(&k[0].mono, k[0].comp)).collect();
    let rels = preimage(ring, &dual_i, &kernel, &image, &gen_degs)?;
    Ok(ModulePresentation::from_basis(GroebnerBasis::from_reduced(ring, gen_degs, rels)))
}

fn ctx_sorted<F: Field>(ring: &RingRef<F>, shifts: &[i64], v: Terms<F>) -> Terms<F> {
    ring.module_ctx(shifts, None).normalize(v)
}

/// `Ext^i_S(M, S)`.
pub fn ext_module<F: Field>(m: &ModulePresentation<F>, i: usize) -> Result<ModulePresentation<F>> {
    ext_from_resolution(&free_resolution(m)?, i)
}

/// All `Ext^i_S(M, S)` for `i = 0..=r`, evaluated in parallel when allowed.
pub fn ext_modules<F: Field>(m: &ModulePresentation<F>, exec: Execution) -> Result<Vec<ModulePresentation<F>>> {
    let res = free_resolution(m)?;
    let r = m.ring().nvars();
    exec.map_range(r + 1, |i| ext_from_resolution(&res, i)).into_iter().collect()
}

/// Length of a graded local cohomology module, or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CohomologyLength {
    Finite(u64),
    Infinite,
}

impl CohomologyLength {
    pub fn finite(self) -> Option<u64> {
        match self {
            CohomologyLength::Finite(n) => Some(n),
            CohomologyLength::Infinite => None,
        }
    }
}

impl std::fmt::Display for CohomologyLength {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CohomologyLength::Finite(n) => write!(f, "{n}"),
            CohomologyLength::Infinite => write!(f, "infinite"),
        }
    }
}

/// Local cohomology lengths `λ(H^i_𝔪(M))` for `i = 0..=r` through `Ext^{r-i}_S(M, S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyProfile {
    pub lengths: Vec<CohomologyLength>,
    pub dim: Option<usize>,
    pub depth: Option<usize>,
    pub projective_dimension: Option<usize>,
    pub ambient_dim: usize,
}

impl CohomologyProfile {
    pub fn of<F: Field>(m: &ModulePresentation<F>, exec: Execution) -> Result<Self> {
        let res = free_resolution(m)?;
        let r = m.ring().nvars();
        let exts: Vec<Result<ModulePresentation<F>>> = exec.map_range(r + 1, |j| ext_from_resolution(&res, j));
        let mut lengths = vec![CohomologyLength::Finite(0); r + 1];
        for (j, e) in exts.into_iter().enumerate() {
            let e = e?;
            lengths[r - j] = match e.length() {
                Some(l) => CohomologyLength::Finite(l),
                None => CohomologyLength::Infinite,
            };
        }
        let pd = res.length();
        Ok(CohomologyProfile {
            lengths,
            dim: m.dimension(),
            depth: pd.map(|p| r - p),
            projective_dimension: pd,
            ambient_dim: r,
        })
    }

    pub fn length(&self, i: usize) -> CohomologyLength {
        self.lengths.get(i).copied().unwrap_or(CohomologyLength::Finite(0))
    }

    pub fn is_cm(&self) -> bool {
        match (self.depth, self.dim) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    /// Every `H^i` below the dimension has finite length.
    pub fn is_generalized_cm(&self) -> bool {
        let d = self.dim.unwrap_or(0);
        (0..d).all(|i| self.length(i).finite().is_some())
    }

    /// `Σ_{i=1}^{d-1} C(d-2, i-1) λ(H^i)`; `None` unless all terms are finite.
    pub fn t_invariant(&self) -> Option<u64> {
        let d = self.dim.unwrap_or(0);
        if d < 2 {
            return Some(0);
        }
        let mut total = 0u64;
        for i in 1..d {
            let l = self.length(i).finite()?;
            total += crate::monomial_ideal::binomial((d - 2) as i64, (i - 1) as i64) as u64 * l;
        }
        Some(total)
    }
}

/// `λ(H^i_𝔪(M))` via graded duality.
pub fn local_cohomology_length<F: Field>(m: &ModulePresentation<F>, i: usize) -> Result<CohomologyLength> {
    let r = m.ring().nvars();
    if i > r {
        return Ok(CohomologyLength::Finite(0));
    }
    let e = ext_module(m, r - i)?;
    Ok(match e.length() {
        Some(l) => CohomologyLength::Finite(l),
        None => CohomologyLength::Infinite,
    })
}

/// Depth by Auslander–Buchsbaum; `None` for the zero module.
pub fn depth<F: Field>(m: &ModulePresentation<F>) -> Result<Option<usize>> {
    let pd = free_resolution(m)?.length();
    Ok(pd.map(|p| m.ring().nvars() - p))
}

pub fn is_cm<F: Field>(m: &ModulePresentation<F>) -> Result<bool> {
    Ok(match (depth(m)?, m.dimension()) {
        (Some(a), Some(b)) => a == b,
        _ => true,
    })
}

pub fn is_generalized_cm<F: Field>(r: &PresentedRing<F>) -> Result<bool> {
    Ok(CohomologyProfile::of(&ModulePresentation::of_ring(r), Execution::default())?.is_generalized_cm())
}

/// The Koszul complex on a sequence of ring elements, over `R = S/𝔞`.
#[derive(Debug, Clone)]
pub struct KoszulComplex<F: Field> {
    ring: RingRef<F>,
    relations: Vec<Terms<F>>,
    gens: Vec<Polynomial<F>>,
    bases: Vec<Vec<Vec<usize>>>,
    /// `maps[i-1]` = columns of `∂_i: K_i → K_{i-1}`.
    maps: Vec<Vec<Terms<F>>>,
}

impl<F: Field> KoszulComplex<F> {
    pub fn new(r: &PresentedRing<F>, gens: &[Polynomial<F>]) -> Self {
        let ring = r.ambient().clone();
        let d = gens.len();
        let bases: Vec<Vec<Vec<usize>>> = (0..=d).map(|i| subsets(d, i)).collect();
        let field = ring.field();
        let mut maps = Vec::with_capacity(d);
        for i in 1..=d {
            let target = &bases[i - 1];
            let shifts = vec![0i64; target.len()];
            let ctx = ring.module_ctx(&shifts, None);
            let cols = bases[i]
                .iter()
                .map(|set| {
                    let mut raw = Vec::new();
                    for (pos, &t) in set.iter().enumerate() {
                        let rest: Vec<usize> = set.iter().copied().filter(|&s| s != t).collect();
                        let k = target.iter().position(|b| *b == rest).expect("face") as u32;
                        for term in gens[t].terms() {
                            let c = if pos % 2 == 0 { term.coef.clone() } else { field.neg(&term.coef) };
                            raw.push(Term { coef: c, mono: term.mono, comp: k });
                        }
                    }
                    ctx.normalize(raw)
                })
                .collect();
            maps.push(cols);
        }
        let relations = r.relations().raw().to_vec();
        KoszulComplex { ring, relations, gens: gens.to_vec(), bases, maps }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }
    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
    pub fn rank(&self, i: usize) -> usize {
        self.bases.get(i).map(|b| b.len()).unwrap_or(0)
    }

    /// `𝔞·K_i` generators.
    fn relation_part(&self, i: usize) -> Vec<Terms<F>> {
        let mut out = Vec::new();
        for c in 0..self.rank(i) as u32 {
            for a in &self.relations {
                out.push(a.iter().map(|t| Term { comp: c, ..t.clone() }).collect());
            }
        }
        out
    }

    /// `∂_{i} ∘ ∂_{i+1} ≡ 0` modulo the relations.
    pub fn is_complex(&self) -> Result<bool> {
        for i in 1..self.len() {
            let shifts = vec![0i64; self.rank(i - 1)];
            let ctx = self.ring.module_ctx(&shifts, None);
            let gb = GroebnerBasis::from_raw(&self.ring, shifts.clone(), self.relation_part(i - 1))?;
            for col in &self.maps[i] {
                let v = apply(&ctx, &self.maps[i - 1], col);
                if !gb.reduce_terms(v).is_empty() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `λ(H_i)` for one index.
    pub fn homology_length(&self, i: usize) -> Result<u64> {
        let d = self.len();
        let shifts = vec![0i64; self.rank(i)];
        let one = self.ring.field().one();
        let cycles = if i == 0 {
            GroebnerBasis::from_reduced(
                &self.ring,
                shifts.clone(),
                vec![vec![Term { coef: one, mono: Monomial::one(self.ring.nvars()), comp: 0 }]],
            )
        } else {
            let target = vec![0i64; self.rank(i - 1)];
            let raw = preimage(&self.ring, &target, &self.maps[i - 1], &self.relation_part(i - 1), &shifts)?;
            GroebnerBasis::from_reduced(&self.ring, shifts.clone(), raw)
        };
        let mut bgens = self.relation_part(i);
        if i < d {
            bgens.extend(self.maps[i].iter().cloned());
        }
        let boundaries = GroebnerBasis::from_raw(&self.ring, shifts, bgens)?;
        if !cycles.contains_all(&boundaries) {
            return Err(AlgebraError::Internal(format!("boundaries not inside cycles at H_{i}")));
        }
        relative_length(&cycles, &boundaries).map_err(|_| {
            AlgebraError::Internal(format!("Koszul homology H_{i} does not have finite length"))
        })
    }

    /// `(h_0, ..., h_d)`.
    pub fn homology_lengths(&self, exec: Execution) -> Result<Vec<u64>> {
        exec.map_range(self.len() + 1, |i| self.homology_length(i)).into_iter().collect()
    }
}

/// Koszul homology lengths of a parameter ideal: exactly `dim R` generators, 𝔪-primary.
pub fn koszul_homology_lengths<F: Field>(j: &RingIdeal<F>, exec: Execution) -> Result<Vec<u64>> {
    let r = j.ring();
    if j.gens().len() != r.dim() {
        return Err(AlgebraError::Domain(format!(
            "{} generators given, a parameter ideal of this ring needs {}",
            j.gens().len(),
            r.dim()
        )));
    }
    if !j.is_m_primary() {
        return Err(AlgebraError::Precondition(format!("ideal {j} is not primary to the maximal ideal")));
    }
    KoszulComplex::new(r, j.gens()).homology_lengths(exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::PolyRing;
    use crate::ring::PresentedRef;

    fn ring(names: &[&str], rels: &[&str]) -> PresentedRef<PrimeField> {
        let s = PolyRing::new(PrimeField::default_field(), names).unwrap();
        let r: Vec<_> = rels.iter().map(|t| s.parse(t).unwrap()).collect();
        PresentedRing::new(&s, &r).unwrap()
    }

    #[test]
    fn residue_field_has_koszul_resolution() {
        let r = ring(&["x", "y"], &[]);
        let k = ModulePresentation::of_quotient(&r.maximal_ideal());
        let res = free_resolution(&k).unwrap();
        assert_eq!(res.betti_numbers(), vec![1, 2, 1]);
        assert!(res.is_complex());
        let free = ModulePresentation::of_ring(&r);
        assert_eq!(free_resolution(&free).unwrap().length(), Some(0));
        assert!(ext_module(&free, 1).unwrap().is_zero());
    }

    #[test]
    fn ext_of_residue_field_in_one_variable() {
        let r = ring(&["x"], &[]);
        let k = ModulePresentation::of_quotient(&r.maximal_ideal());
        assert_eq!(ext_module(&k, 1).unwrap().length(), Some(1));
        assert!(ext_module(&k, 0).unwrap().is_zero());
    }

    #[test]
    fn z_ring_cohomology() {
        let r = ring(&["x", "y", "z"], &["x*z", "y*z", "z^2"]);
        let m = ModulePresentation::of_ring(&r);
        let res = free_resolution(&m).unwrap();
        assert_eq!(res.length(), Some(3));
        assert_eq!(ext_module(&m, 3).unwrap().length(), Some(1));
        assert!(ext_module(&m, 2).unwrap().is_zero());
        let p = CohomologyProfile::of(&m, Execution::Sequential).unwrap();
        assert_eq!(p.length(0), CohomologyLength::Finite(1));
        assert_eq!(p.length(1), CohomologyLength::Finite(0));
        assert_eq!(p.depth, Some(0));
        assert!(!p.is_cm());
        assert!(p.is_generalized_cm());
        assert_eq!(p.t_invariant(), Some(0));
    }

    #[test]
    fn unit_entries_are_pruned() {
        let s = PolyRing::new(PrimeField::default_field(), &["x", "y"]).unwrap();
        let module = crate::module::FreeModule::new(&s, vec![0, 1]);
        // e_1 = x e_0 in M, so M ≅ S/(y·x) presented with a redundant generator
        let v1 = module.vector(&[s.parse("x").unwrap(), s.parse("-1").unwrap()]).unwrap();
        let v2 = module.vector(&[s.zero(), s.parse("y").unwrap()]).unwrap();
        let m = ModulePresentation::new(&module, &[v1, v2]).unwrap();
        let res = free_resolution(&m).unwrap();
        assert_eq!(res.betti_numbers(), vec![1, 1]);
        assert_eq!(res.graded_betti(), vec![(0, 0, 1), (1, 2, 1)]);
    }

    #[test]
    fn koszul_on_z_ring() {
        let r = ring(&["x", "y", "z"], &["x*z", "y*z", "z^2"]);
        let j = r.parse_ideal(&["x", "y"]).unwrap();
        let h = koszul_homology_lengths(&j, Execution::Sequential).unwrap();
        assert_eq!(h[0], 2);
        assert_eq!(h[1] as i64 - h[2] as i64, 1);
        assert!(KoszulComplex::new(&r, j.gens()).is_complex().unwrap());
        let bad = r.parse_ideal(&["x"]).unwrap();
        assert!(matches!(koszul_homology_lengths(&bad, Execution::Sequential), Err(AlgebraError::Domain(_))));
    }

    #[test]
    fn koszul_on_regular_sequence() {
        let r = ring(&["x", "y", "z"], &[]);
        let j = r.parse_ideal(&["x^2", "y + z^2", "z^3"]).unwrap();
        let h = koszul_homology_lengths(&j, Execution::Sequential).unwrap();
        assert_eq!(h, vec![6, 0, 0, 0]);
    }
}
