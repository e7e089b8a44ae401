//! Brute-force cross-checks that avoid the Gröbner engine on their input.
//!
//! Membership is decided by linear algebra on a degree-truncated Macaulay
//! matrix; depth is measured by peeling off generic linear forms; Newton
//! polyhedron membership by enumerating vertices of the primal program.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::field::Field;
use crate::groebner::{ideal_colon, GroebnerBasis};
use crate::monomial::Monomial;
use crate::poly::{Polynomial, RingRef};
use crate::ring::PresentedRing;

/// All exponent vectors in `nvars` variables of total degree at most `max`.
pub fn monomials_up_to(nvars: usize, max: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fill(&mut exps, 0, max, &mut out);
    out
}

fn fill(exps: &mut [u32], at: usize, left: u32, out: &mut Vec<Monomial>) {
    if at == exps.len() {
        out.push(Monomial::from_exponents(exps).expect("bounded exponents"));
        return;
    }
    for e in 0..=left {
        exps[at] = e;
        fill(exps, at + 1, left - e, out);
    }
    exps[at] = 0;
}

/// Row echelon form keyed by leading monomial, every pivot row monic.
struct Echelon<F: Field> {
    pivots: HashMap<Monomial, Polynomial<F>>,
}

impl<F: Field> Echelon<F> {
    fn reduce(&self, v: &Polynomial<F>) -> Result<Polynomial<F>> {
        let mut v = v.clone();
        let mut idx = 0;
        while idx < v.len() {
            let t = &v.terms()[idx];
            match self.pivots.get(&t.mono) {
                Some(p) => v = v.checked_sub(&p.scale(&t.coef))?,
                None => idx += 1,
            }
        }
        Ok(v)
    }

    fn insert(&mut self, v: &Polynomial<F>) -> Result<()> {
        let v = self.reduce(v)?;
        if let Some(lead) = v.lead_monomial() {
            self.pivots.insert(lead, v.monic());
        }
        Ok(())
    }
}

/// Whether `f` is a combination `Σ h_i g_i` with every `h_i g_i` of total degree at most `degree`.
///
/// For homogeneous generators and homogeneous `f`, `degree = deg f` decides ideal membership.
pub fn macaulay_member<F: Field>(ring: &RingRef<F>, gens: &[Polynomial<F>], f: &Polynomial<F>, degree: u32) -> Result<bool> {
    let mut ech = Echelon { pivots: HashMap::new() };
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let dg = g.total_degree().unwrap_or(0);
        if dg > degree {
            continue;
        }
        for m in monomials_up_to(ring.nvars(), degree - dg) {
            ech.insert(&g.mul_monomial(&ring.field().one(), &m))?;
        }
    }
    Ok(ech.reduce(f)?.is_zero())
}

/// Depth of a standard graded `R = S/𝔞`, counted as the length of a maximal
/// regular sequence of random linear forms.
pub fn generic_depth<F: Field>(r: &PresentedRing<F>, seed: u64) -> Result<usize> {
    let s = r.ambient();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens = r.defining_generators().to_vec();
    let mut depth = 0;
    loop {
        let current = GroebnerBasis::ideal(s, &gens)?;
        if current.is_unit() || depth == s.nvars() {
            return Ok(depth);
        }
        let coefs: Vec<_> = (0..s.nvars()).map(|_| s.field().random_nonzero(&mut rng)).collect();
        let form = s.from_terms(
            coefs.into_iter().enumerate().map(|(i, c)| (c, Monomial::var_power(s.nvars(), i, 1))).collect(),
        );
        let colon = ideal_colon(s, &gens, std::slice::from_ref(&form))?;
        if !current.contains_all(&colon) {
            return Ok(depth);
        }
        gens.push(form);
        depth += 1;
    }
}

fn det(m: &[Vec<i128>]) -> i128 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|c| {
            let minor: Vec<Vec<i128>> = m[1..].iter().map(|row| [&row[..c], &row[c + 1..]].concat()).collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Whether `p` lies in `conv(gens) + ℝⁿ₊`, i.e. whether `x^p` is integral over the monomial ideal.
///
/// A nonempty program `λ ≥ 0, Σλ = 1, Σ λ_g g ≤ p` has a vertex with support `S` and `|S| - 1`
/// tight coordinates; every such square system is solved exactly by Cramer's rule.
pub fn newton_member(gens: &[Monomial], p: &[u32]) -> bool {
    let n = p.len();
    for size in 1..=(n + 1).min(gens.len()) {
        for support in subsets(gens.len(), size) {
            for tight in subsets(n, size - 1) {
                // rows: Σλ = 1, then one row per tight coordinate
                let mut a: Vec<Vec<i128>> = vec![vec![1; size]];
                let mut b: Vec<i128> = vec![1];
                for &j in &tight {
                    a.push(support.iter().map(|&g| gens[g].exponent(j) as i128).collect());
                    b.push(p[j] as i128);
                }
                let d = det(&a);
                if d == 0 {
                    continue;
                }
                // λ_i = num_i / d
                let nums: Vec<i128> = (0..size)
                    .map(|c| {
                        let swapped: Vec<Vec<i128>> =
                            a.iter().zip(&b).map(|(row, &bv)| row.iter().enumerate().map(|(k, &v)| if k == c { bv } else { v }).collect()).collect();
                        det(&swapped)
                    })
                    .collect();
                if nums.iter().any(|&x| x * d.signum() < 0) {
                    continue;
                }
                let fits = (0..n).all(|j| {
                    let lhs: i128 = support.iter().zip(&nums).map(|(&g, &x)| gens[g].exponent(j) as i128 * x).sum();
                    lhs * d.signum() <= p[j] as i128 * d.abs()
                });
                if fits {
                    return true;
                }
            }
        }
    }
    false
}
