//! Monomial ideals: minimal generators, Hilbert series, colength and dimension.
//!
//! Hilbert series use the standard grading (every variable of degree 1) and
//! are stored as a numerator over `(1 - t)^n`. Numerators come from the
//! pivot recursion `N(I) = N(I + p) + t^deg(p) N(I : p)`.

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;

/// Drop every generator divisible by another one; sort the rest.
pub fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut sorted: Vec<Monomial> = gens.to_vec();
    sorted.sort_by_key(|m| (m.degree(), std::cmp::Reverse(m.exponents())));
    sorted.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in sorted {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// An ideal of `k[x_1..x_n]` generated by monomials, kept minimally generated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: &[Monomial]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.nvars() != nvars) {
            return Err(AlgebraError::Context(format!("monomial in {} variables, expected {nvars}", g.nvars())));
        }
        Ok(MonomialIdeal { nvars, gens: minimalize(gens) })
    }

    /// `(x_1..x_n)^k`.
    pub fn maximal_power(nvars: usize, k: u32) -> Self {
        let mut gens = Vec::new();
        let mut exps = vec![0u32; nvars];
        fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == exps.len() {
                exps[i] = left;
                out.push(Monomial::from_exponents(exps).expect("bounded"));
                return;
            }
            for e in (0..=left).rev() {
                exps[i] = e;
                rec(i + 1, left - e, exps, out);
            }
        }
        if nvars == 0 {
            gens.push(Monomial::one(0));
        } else {
            rec(0, k, &mut exps, &mut gens);
        }
        MonomialIdeal { nvars, gens: minimalize(&gens) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }
    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }
    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut g = self.gens.clone();
        g.extend_from_slice(&other.gens);
        MonomialIdeal { nvars: self.nvars, gens: minimalize(&g) }
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.mul(b));
            }
        }
        MonomialIdeal { nvars: self.nvars, gens: minimalize(&g) }
    }

    pub fn power(&self, n: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal { nvars: self.nvars, gens: vec![Monomial::one(self.nvars)] };
        for _ in 0..n {
            acc = acc.product(self);
        }
        acc
    }

    /// `(I : m)` for a monomial `m`.
    pub fn colon(&self, m: &Monomial) -> MonomialIdeal {
        let g: Vec<Monomial> = self
            .gens
            .iter()
            .map(|g| {
                let exps: Vec<u32> =
                    (0..self.nvars).map(|i| g.exponent(i).saturating_sub(m.exponent(i))).collect();
                Monomial::from_exponents(&exps).expect("bounded")
            })
            .collect();
        MonomialIdeal { nvars: self.nvars, gens: minimalize(&g) }
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries { low: 0, num: hilbert_numerator(&self.gens, self.nvars), nvars: self.nvars }
    }

    /// Krull dimension of `S/I` from the largest set of variables containing no generator's support.
    /// `None` for the unit ideal.
    pub fn dimension(&self) -> Option<usize> {
        independent_set_dimension(&self.gens, self.nvars)
    }

    /// Number of monomials outside the ideal, `None` when infinite.
    pub fn colength(&self) -> Option<u64> {
        self.hilbert_series().length()
    }

    /// Monomials outside the ideal, `None` when there are infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let mut bound = vec![0u32; self.nvars];
        for i in 0..self.nvars {
            let pure = self
                .gens
                .iter()
                .filter(|g| g.support_mask() == 1 << i)
                .map(|g| g.exponent(i))
                .min();
            bound[i] = pure?;
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.nvars];
        loop {
            let m = Monomial::from_exponents(&exps).expect("bounded");
            if !self.contains(&m) {
                out.push(m);
            }
            let mut i = 0;
            loop {
                if i == self.nvars {
                    return Some(out);
                }
                exps[i] += 1;
                if exps[i] < bound[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|m| format!("{m:?}")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub(crate) fn independent_set_dimension(gens: &[Monomial], nvars: usize) -> Option<usize> {
    if gens.iter().any(|g| g.is_one()) {
        return None;
    }
    let supports: Vec<u32> = gens.iter().map(|g| g.support_mask()).collect();
    let mut best = 0;
    for set in 0u32..(1u32 << nvars) {
        let size = set.count_ones() as usize;
        if size > best && supports.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    Some(best)
}

fn poly_add(a: &mut Vec<i128>, b: &[i128], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (k, v) in b.iter().enumerate() {
        a[k + shift] += v;
    }
}

fn trim(mut p: Vec<i128>) -> Vec<i128> {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

/// Numerator of the Hilbert series of `S/I` over `(1-t)^n`, coefficients by degree.
pub fn hilbert_numerator(gens: &[Monomial], nvars: usize) -> Vec<i128> {
    let gens = minimalize(gens);
    trim(numerator_rec(gens, nvars))
}

fn numerator_rec(gens: Vec<Monomial>, nvars: usize) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    let mut counts = vec![0usize; nvars];
    for g in &gens {
        for (i, c) in counts.iter_mut().enumerate() {
            if g.exponent(i) > 0 {
                *c += 1;
            }
        }
    }
    let (var, &count) = counts.iter().enumerate().max_by_key(|&(i, c)| (*c, std::cmp::Reverse(i))).unwrap();
    if count <= 1 {
        // pairwise coprime generators
        let mut acc = vec![1i128];
        for g in &gens {
            let d = g.degree() as usize;
            let mut next = vec![0i128; acc.len() + d];
            for (k, v) in acc.iter().enumerate() {
                next[k] += v;
                next[k + d] -= v;
            }
            acc = next;
        }
        return acc;
    }
    let mut exps: Vec<u32> = gens.iter().map(|g| g.exponent(var)).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2];
    let pivot = Monomial::var_power(nvars, var, e);
    let mut with_p = gens.clone();
    with_p.push(pivot);
    let quotient: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut m = *g;
            m.set_exponent(var, g.exponent(var).saturating_sub(e));
            m
        })
        .collect();
    let mut acc = numerator_rec(minimalize(&with_p), nvars);
    let q = numerator_rec(minimalize(&quotient), nvars);
    poly_add(&mut acc, &q, e as usize);
    acc
}

/// Divide by `(1 - t)` when `p(1) = 0`.
fn divide_one_minus_t(p: &[i128]) -> Option<Vec<i128>> {
    if p.iter().sum::<i128>() != 0 {
        return None;
    }
    let mut q = Vec::with_capacity(p.len().saturating_sub(1));
    let mut acc = 0i128;
    for v in &p[..p.len().saturating_sub(1)] {
        acc += v;
        q.push(acc);
    }
    if q.is_empty() {
        q.push(0);
    }
    Some(q)
}

/// A Hilbert series `t^low · (Σ num_k t^k) / (1 - t)^nvars` of a graded module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    pub low: i64,
    pub num: Vec<i128>,
    pub nvars: usize,
}

impl HilbertSeries {
    pub fn zero(nvars: usize) -> Self {
        HilbertSeries { low: 0, num: vec![0], nvars }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&v| v == 0)
    }

    /// Add `t^shift · other`.
    pub fn add_shifted(&mut self, other: &HilbertSeries, shift: i64) {
        debug_assert_eq!(self.nvars, other.nvars);
        if other.is_zero() {
            return;
        }
        let olow = other.low + shift;
        if self.is_zero() {
            *self = HilbertSeries { low: olow, num: other.num.clone(), nvars: self.nvars };
            return;
        }
        if olow < self.low {
            let pad = (self.low - olow) as usize;
            let mut num = vec![0; pad];
            num.extend_from_slice(&self.num);
            self.num = num;
            self.low = olow;
        }
        poly_add(&mut self.num, &other.num, (olow - self.low) as usize);
        self.num = trim(std::mem::take(&mut self.num));
    }

    /// `(k, q)` with `num = (1-t)^k q` and `q(1) ≠ 0`; `None` for the zero series.
    fn reduced(&self) -> Option<(usize, Vec<i128>)> {
        if self.is_zero() {
            return None;
        }
        let mut q = self.num.clone();
        let mut k = 0;
        while let Some(next) = divide_one_minus_t(&q) {
            q = next;
            k += 1;
        }
        Some((k, q))
    }

    /// Krull dimension of the module; `None` for the zero module.
    pub fn dimension(&self) -> Option<usize> {
        self.reduced().map(|(k, _)| self.nvars - k)
    }

    /// Multiplicity (degree); 0 for the zero module.
    pub fn degree(&self) -> i128 {
        self.reduced().map(|(_, q)| q.iter().sum()).unwrap_or(0)
    }

    /// Total length when the module has finite length.
    pub fn length(&self) -> Option<u64> {
        match self.dimension() {
            None => Some(0),
            Some(0) => Some(self.degree() as u64),
            Some(_) => None,
        }
    }

    /// Dimension of the graded piece of degree `k`.
    pub fn value(&self, k: i64) -> i128 {
        let n = self.nvars as i64;
        let mut total = 0i128;
        for (j, c) in self.num.iter().enumerate() {
            let d = k - self.low - j as i64;
            if d < 0 || *c == 0 {
                continue;
            }
            total += c * binomial(d + n - 1, n - 1);
        }
        total
    }
}

pub(crate) fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 || n < k {
        return if k == 0 && n == -1 { 1 } else { 0 };
    }
    let mut acc = 1i128;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn colength_examples() {
        let x5 = MonomialIdeal::new(1, &[m(&[5])]).unwrap();
        assert_eq!(x5.colength(), Some(5));
        let i = MonomialIdeal::new(2, &[m(&[2, 0]), m(&[1, 1]), m(&[0, 3])]).unwrap();
        assert_eq!(i.colength(), Some(4));
        assert_eq!(i.standard_monomials().unwrap().len(), 4);
        let j = MonomialIdeal::new(2, &[m(&[1, 0])]).unwrap();
        assert_eq!(j.colength(), None);
        assert_eq!(j.dimension(), Some(1));
    }

    #[test]
    fn dimension_two_ways() {
        let i = MonomialIdeal::new(3, &[m(&[1, 0, 1]), m(&[0, 1, 1]), m(&[0, 0, 2])]).unwrap();
        assert_eq!(i.dimension(), Some(2));
        assert_eq!(i.hilbert_series().dimension(), Some(2));
        assert_eq!(i.hilbert_series().degree(), 1);
        assert_eq!(MonomialIdeal::new(3, &[]).unwrap().dimension(), Some(3));
    }

    #[test]
    fn powers_of_the_maximal_ideal() {
        let m2 = MonomialIdeal::maximal_power(2, 2);
        assert_eq!(m2.gens().len(), 3);
        for k in 0..6u32 {
            let p = m2.power(k + 1);
            let expected = ((2 * k + 2) * (2 * k + 3) / 2) as u64;
            assert_eq!(p.colength(), Some(expected));
        }
        assert_eq!(MonomialIdeal::maximal_power(3, 4), MonomialIdeal::maximal_power(3, 1).power(4));
    }

    #[test]
    fn series_values_match_counts() {
        let i = MonomialIdeal::new(3, &[m(&[2, 1, 0]), m(&[0, 2, 2]), m(&[1, 0, 3]), m(&[4, 0, 0])]).unwrap();
        let hs = i.hilbert_series();
        for d in 0..8 {
            let brute = MonomialIdeal::maximal_power(3, d).gens().iter().filter(|g| !i.contains(g)).count();
            assert_eq!(hs.value(d as i64), brute as i128, "degree {d}");
        }
    }
}
