//! Hilbert–Samuel functions of filtrations and extraction of their coefficients.
//!
//! For a module `M` and a filtration `A`, the table lists `λ(M/A_{n+1}M)` for
//! `n = 0, 1, ...`. The coefficients `e_0..e_d` are read off a polynomial of
//! degree `d = dim M` fitted through the tail of the table, which must also
//! reproduce a few earlier entries before it is accepted.

use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::GroebnerBasis;
use crate::par::Execution;
use crate::poly::{Polynomial, Term};
use crate::presentation::ModulePresentation;
use crate::ring::{PresentedRing, RingIdeal};

pub const DEFAULT_GUARD: usize = 3;
pub const DEFAULT_MAX_N: usize = 40;

type Component<F> = dyn Fn(u32) -> Result<Vec<Polynomial<F>>> + Send + Sync;

/// How the components `A_n` of a filtration are produced.
#[derive(Clone)]
pub enum FiltrationRule<F: Field> {
    /// `A_n = I^n`.
    Adic,
    /// `A_1..A_s` given, `A_{n+1} = I·A_n` afterwards.
    Prefix(Vec<Vec<Polynomial<F>>>),
    /// Every `A_n` computed directly by the callback.
    Direct(Arc<Component<F>>),
}

/// A decreasing multiplicative filtration over a base ideal `I`.
#[derive(Clone)]
pub struct GoodFiltration<F: Field> {
    base: Vec<Polynomial<F>>,
    rule: FiltrationRule<F>,
    label: String,
}

impl<F: Field> fmt::Debug for GoodFiltration<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GoodFiltration({})", self.label)
    }
}

impl<F: Field> GoodFiltration<F> {
    pub fn adic(base: &[Polynomial<F>]) -> Self {
        let label = format!("adic({})", join(base));
        GoodFiltration { base: base.to_vec(), rule: FiltrationRule::Adic, label }
    }

    pub fn with_prefix(base: &[Polynomial<F>], prefix: Vec<Vec<Polynomial<F>>>) -> Self {
        let label = format!("prefix{}({})", prefix.len(), join(base));
        GoodFiltration { base: base.to_vec(), rule: FiltrationRule::Prefix(prefix), label }
    }

    pub fn direct(base: &[Polynomial<F>], label: &str, component: Arc<Component<F>>) -> Self {
        GoodFiltration { base: base.to_vec(), rule: FiltrationRule::Direct(component), label: label.to_string() }
    }

    pub fn base(&self) -> &[Polynomial<F>] {
        &self.base
    }
    pub fn rule(&self) -> &FiltrationRule<F> {
        &self.rule
    }
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Generators of `A_n` (`n ≥ 1`), materialized from scratch.
    pub fn component(&self, n: u32) -> Result<Vec<Polynomial<F>>> {
        if n == 0 {
            return Ok(self.base.first().map(|p| vec![p.ring().one()]).unwrap_or_default());
        }
        match &self.rule {
            FiltrationRule::Direct(f) => f(n),
            FiltrationRule::Prefix(prefix) if (n as usize) <= prefix.len() => Ok(prefix[n as usize - 1].clone()),
            FiltrationRule::Prefix(prefix) => {
                let mut acc = prefix.last().cloned().unwrap_or_default();
                for _ in prefix.len()..n as usize {
                    acc = products(&self.base, &acc);
                }
                Ok(acc)
            }
            FiltrationRule::Adic => {
                let mut acc = self.base.clone();
                for _ in 1..n {
                    acc = products(&self.base, &acc);
                }
                Ok(acc)
            }
        }
    }
}

fn join<F: Field>(ps: &[Polynomial<F>]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

fn products<F: Field>(a: &[Polynomial<F>], b: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    let mut out: Vec<Polynomial<F>> = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            let p = x * y;
            if !p.is_zero() && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// The values `λ(M/A_{n+1}M)` for `n = 0..len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSamuelTable {
    pub lengths: Vec<u64>,
}

impl HilbertSamuelTable {
    /// Rows `(n, length, first difference)`.
    pub fn rows(&self) -> Vec<(usize, u64, i128)> {
        self.lengths
            .iter()
            .enumerate()
            .map(|(n, &v)| {
                let prev = if n == 0 { 0 } else { self.lengths[n - 1] as i128 };
                (n, v, v as i128 - prev)
            })
            .collect()
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("n\tlength\tfirst_difference\n");
        for (n, v, d) in self.rows() {
            s.push_str(&format!("{n}\t{v}\t{d}\n"));
        }
        s
    }
}

/// Coefficients of the Hilbert–Samuel polynomial
/// `P(n) = Σ (-1)^i e_i C(n+d-i, d-i)`, valid from `stabilization` on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertCoefficients {
    pub dim: usize,
    pub e: Vec<i128>,
    pub stabilization: usize,
    pub table: HilbertSamuelTable,
}

impl HilbertCoefficients {
    pub fn e0(&self) -> i128 {
        self.e[0]
    }
    pub fn e1(&self) -> i128 {
        self.e.get(1).copied().unwrap_or(0)
    }
    pub fn e2(&self) -> i128 {
        self.e.get(2).copied().unwrap_or(0)
    }
    pub fn get(&self, i: usize) -> i128 {
        self.e.get(i).copied().unwrap_or(0)
    }

    /// The polynomial's value at `n`.
    pub fn eval(&self, n: i128) -> i128 {
        let d = self.dim as i128;
        self.e
            .iter()
            .enumerate()
            .map(|(i, &ei)| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                sign * ei * gen_binomial(n + d - i as i128, self.dim - i)
            })
            .sum()
    }
}

/// `C(m, k)` for any integer `m`.
pub(crate) fn gen_binomial(m: i128, k: usize) -> i128 {
    let mut acc = 1i128;
    for i in 0..k as i128 {
        acc = acc * (m - i) / (i + 1);
    }
    acc
}

/// Fit `d`-degree coefficients through the last `d+1` values, checking `guard` earlier ones.
pub fn fit_coefficients(values: &[u64], d: usize, guard: usize) -> Option<HilbertCoefficients> {
    let n_last = values.len().checked_sub(1)?;
    let a = n_last.checked_sub(d)?;
    if a < guard {
        return None;
    }
    let mut diffs: Vec<i128> = values[a..].iter().map(|&v| v as i128).collect();
    let mut newton = Vec::with_capacity(d + 1);
    for _ in 0..=d {
        newton.push(diffs[0]);
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
    }
    let p = |n: i128| -> i128 {
        newton.iter().enumerate().map(|(k, &c)| c * gen_binomial(n - a as i128, k)).sum()
    };
    if (a - guard..a).any(|n| p(n as i128) != values[n] as i128) {
        return None;
    }
    let mut n0 = a - guard;
    while n0 > 0 && p(n0 as i128 - 1) == values[n0 - 1] as i128 {
        n0 -= 1;
    }
    let c: Vec<i128> = (0..=d)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    sign * gen_binomial(k as i128, i) * p(-1 - i as i128)
                })
                .sum()
        })
        .collect();
    let e = (0..=d).map(|i| if i % 2 == 0 { c[d - i] } else { -c[d - i] }).collect();
    Some(HilbertCoefficients { dim: d, e, stabilization: n0, table: HilbertSamuelTable { lengths: values.to_vec() } })
}

/// Coefficients from a fixed table; a stabilization error when it does not fit.
pub fn extract_coefficients(table: &HilbertSamuelTable, d: usize) -> Result<HilbertCoefficients> {
    fit_coefficients(&table.lengths, d, DEFAULT_GUARD).ok_or_else(|| {
        AlgebraError::Stabilization(format!(
            "{} table entries do not determine a degree-{d} polynomial with {DEFAULT_GUARD} guard values",
            table.lengths.len()
        ))
    })
}

/// Tuning for table computations.
#[derive(Debug, Clone, Copy)]
pub struct SamuelOptions {
    pub guard: usize,
    pub max_n: usize,
    pub exec: Execution,
}

impl Default for SamuelOptions {
    fn default() -> Self {
        SamuelOptions { guard: DEFAULT_GUARD, max_n: DEFAULT_MAX_N, exec: Execution::default() }
    }
}

/// Incremental producer of table entries.
struct TableBuilder<'a, F: Field> {
    module: &'a ModulePresentation<F>,
    filt: &'a GoodFiltration<F>,
    exec: Execution,
    current: Option<GroebnerBasis<F>>,
    values: Vec<u64>,
}

impl<'a, F: Field> TableBuilder<'a, F> {
    fn new(module: &'a ModulePresentation<F>, filt: &'a GoodFiltration<F>, exec: Execution) -> Self {
        TableBuilder { module, filt, exec, current: None, values: Vec::new() }
    }

    fn length_of(&self, w: &GroebnerBasis<F>) -> Result<u64> {
        ModulePresentation::from_basis(w.clone()).length().ok_or_else(|| {
            AlgebraError::Precondition("filtration is not primary to the maximal ideal on this module".into())
        })
    }

    /// `U + A_n F` computed directly.
    fn direct(&self, n: u32) -> Result<GroebnerBasis<F>> {
        let gens = self.filt.component(n)?;
        Ok(self.module.with_extra(self.module.ideal_times_free(&gens))?.relations().clone())
    }

    fn grow_to(&mut self, len: usize) -> Result<()> {
        if self.values.len() >= len {
            return Ok(());
        }
        if let FiltrationRule::Direct(_) = self.filt.rule() {
            let start = self.values.len();
            let fresh: Vec<Result<u64>> = self.exec.map_range(len - start, |k| {
                let w = self.direct((start + k + 1) as u32)?;
                self.length_of(&w)
            });
            for v in fresh {
                self.values.push(v?);
            }
            return Ok(());
        }
        while self.values.len() < len {
            let n = self.values.len() as u32 + 1;
            let next = match (&self.current, self.filt.rule()) {
                (None, _) => self.direct(1)?,
                (Some(_), FiltrationRule::Prefix(p)) if (n as usize) <= p.len() => self.direct(n)?,
                (Some(prev), _) => {
                    let mut gens: Vec<Vec<Term<F::Elem>>> = self.module.relations().raw().to_vec();
                    let ctx = prev.ctx();
                    for g in self.filt.base() {
                        for w in prev.raw() {
                            let v = ctx.mul(g.terms(), w);
                            if !v.is_empty() {
                                gens.push(v);
                            }
                        }
                    }
                    GroebnerBasis::from_raw(self.module.ring(), self.module.shifts().to_vec(), gens)?
                }
            };
            let len_n = self.length_of(&next)?;
            self.values.push(len_n);
            self.current = Some(next);
        }
        Ok(())
    }
}

/// The first `len` entries of the Hilbert–Samuel function of `filt` on `module`.
pub fn hs_table_module<F: Field>(
    module: &ModulePresentation<F>,
    filt: &GoodFiltration<F>,
    len: usize,
    exec: Execution,
) -> Result<HilbertSamuelTable> {
    let mut b = TableBuilder::new(module, filt, exec);
    b.grow_to(len)?;
    Ok(HilbertSamuelTable { lengths: b.values })
}

/// The first `len` entries of `n ↦ λ(R/A_{n+1})`.
pub fn hs_table<F: Field>(
    r: &PresentedRing<F>,
    filt: &GoodFiltration<F>,
    len: usize,
    exec: Execution,
) -> Result<HilbertSamuelTable> {
    hs_table_module(&ModulePresentation::of_ring(r), filt, len, exec)
}

/// Hilbert–Samuel coefficients of `filt` on `module`, extending the table until the fit verifies.
pub fn hilbert_samuel_module<F: Field>(
    module: &ModulePresentation<F>,
    filt: &GoodFiltration<F>,
    opts: SamuelOptions,
) -> Result<HilbertCoefficients> {
    let d = match module.dimension() {
        None => {
            return Ok(HilbertCoefficients {
                dim: 0,
                e: vec![0],
                stabilization: 0,
                table: HilbertSamuelTable { lengths: vec![0] },
            })
        }
        Some(d) => d,
    };
    let mut b = TableBuilder::new(module, filt, opts.exec);
    let mut len = d + opts.guard + 2;
    loop {
        b.grow_to(len)?;
        if let Some(c) = fit_coefficients(&b.values, d, opts.guard) {
            return Ok(c);
        }
        if len > opts.max_n {
            return Err(AlgebraError::Stabilization(format!(
                "no degree-{d} fit of {} within n ≤ {}",
                filt.label(),
                opts.max_n
            )));
        }
        len += 1;
    }
}

/// Hilbert–Samuel coefficients of the `I`-adic filtration of the ring.
pub fn ideal_coefficients<F: Field>(i: &RingIdeal<F>, opts: SamuelOptions) -> Result<HilbertCoefficients> {
    if !i.is_m_primary() {
        return Err(AlgebraError::Precondition(format!("ideal {i} is not primary to the maximal ideal")));
    }
    hilbert_samuel_module(&ModulePresentation::of_ring(i.ring()), &GoodFiltration::adic(i.gens()), opts)
}

/// Samuel multiplicity `e(I; M)` (equal to `λ(M)` in dimension 0).
pub fn samuel_multiplicity<F: Field>(
    module: &ModulePresentation<F>,
    gens: &[Polynomial<F>],
    opts: SamuelOptions,
) -> Result<i128> {
    if module.is_zero() {
        return Ok(0);
    }
    if let Some(l) = module.length() {
        return Ok(l as i128);
    }
    Ok(hilbert_samuel_module(module, &GoodFiltration::adic(gens), opts)?.e0())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::PolyRing;
    use crate::ring::PresentedRef;

    fn poly_ring(names: &[&str]) -> PresentedRef<PrimeField> {
        PresentedRing::polynomial_ring(&PolyRing::new(PrimeField::default_field(), names).unwrap())
    }

    #[test]
    fn fit_of_known_polynomials() {
        let vals: Vec<u64> = (0..8u64).map(|n| (n + 2) * (n + 1) / 2).collect();
        let c = fit_coefficients(&vals, 2, 3).unwrap();
        assert_eq!(c.e, vec![1, 0, 0]);
        let vals: Vec<u64> = (0..8u64).map(|n| 2 * n * n + 5 * n + 3).collect();
        let c = fit_coefficients(&vals, 2, 3).unwrap();
        assert_eq!(c.e, vec![4, 1, 0]);
        assert_eq!(c.stabilization, 0);
        for n in 0..8 {
            assert_eq!(c.eval(n as i128), vals[n] as i128);
        }
        let mut bumped = vals.clone();
        bumped[0] += 1;
        let c = fit_coefficients(&bumped, 2, 3).unwrap();
        assert_eq!(c.stabilization, 1);
        assert!(fit_coefficients(&vals[..4], 2, 3).is_none());
    }

    #[test]
    fn tables_of_simple_ideals() {
        let r = poly_ring(&["x"]);
        let t = hs_table(&r, &GoodFiltration::adic(r.maximal_ideal().gens()), 4, Execution::Sequential).unwrap();
        assert_eq!(t.lengths, vec![1, 2, 3, 4]);
        let r2 = poly_ring(&["x", "y"]);
        let m2 = r2.maximal_ideal().power(2).unwrap();
        let t = hs_table(&r2, &GoodFiltration::adic(m2.gens()), 3, Execution::Sequential).unwrap();
        assert_eq!(t.lengths, vec![3, 10, 21]);
        let c = ideal_coefficients(&m2, SamuelOptions::default()).unwrap();
        assert_eq!(c.e, vec![4, 1, 0]);
        let c = ideal_coefficients(&r2.maximal_ideal(), SamuelOptions::default()).unwrap();
        assert_eq!(c.e, vec![1, 0, 0]);
    }

    #[test]
    fn non_primary_ideal_is_rejected() {
        let r = poly_ring(&["x", "y"]);
        let i = r.parse_ideal(&["x"]).unwrap();
        assert!(matches!(ideal_coefficients(&i, SamuelOptions::default()), Err(AlgebraError::Precondition(_))));
    }

    #[test]
    fn extraction_without_enough_entries_fails() {
        let t = HilbertSamuelTable { lengths: vec![1, 3, 6] };
        assert!(matches!(extract_coefficients(&t, 2), Err(AlgebraError::Stabilization(_))));
    }
}
