//! Integral closures of monomial ideals through their Newton polyhedra, the
//! closure filtration, and comparisons of two filtrations over the same ideal.

use std::sync::Arc;

use num_integer::Integer;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::hilbert::{hilbert_samuel_module, GoodFiltration, HilbertCoefficients, SamuelOptions};
use crate::monomial::Monomial;
use crate::monomial_ideal::MonomialIdeal;
use crate::poly::{Polynomial, RingRef};
use crate::presentation::ModulePresentation;
use crate::ring::{subsets, PresentedRef, RingIdeal};

/// `conv(exponents) + ℝ^n_{≥0}`, stored as inequalities `w·p ≥ b` with `w ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    nvars: usize,
    inequalities: Vec<(Vec<i64>, i64)>,
    corner: Vec<u32>,
}

/// Rank of an integer matrix given by rows.
fn rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for k in 0..ncols {
                    m[i][k] = m[i][k] * a - m[r][k] * b;
                }
                let g = m[i].iter().fold(0i128, |g, &v| g.gcd(&v));
                if g > 1 {
                    m[i].iter_mut().for_each(|v| *v /= g);
                }
            }
        }
        r += 1;
    }
    r
}

fn det(m: &mut [Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    // Bareiss elimination
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else { return 0 };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Normal vector to `n-1` directions in `ℤ^n` via signed maximal minors.
fn normal(dirs: &[&Vec<i128>], n: usize) -> Vec<i128> {
    (0..n)
        .map(|k| {
            let mut minor: Vec<Vec<i128>> =
                dirs.iter().map(|d| d.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v).collect()).collect();
            let s = if k % 2 == 0 { 1 } else { -1 };
            s * det(&mut minor)
        })
        .collect()
}

impl NewtonPolyhedron {
    pub fn of(i: &MonomialIdeal) -> Result<Self> {
        let n = i.nvars();
        if i.is_zero() {
            return Err(AlgebraError::Domain("the zero ideal has no Newton polyhedron".into()));
        }
        let pts: Vec<Vec<i128>> = i.gens().iter().map(|m| (0..n).map(|k| m.exponent(k) as i128).collect()).collect();
        let corner: Vec<u32> = (0..n).map(|k| i.gens().iter().map(|m| m.exponent(k)).max().unwrap_or(0)).collect();
        let mut dirs: Vec<Vec<i128>> = Vec::new();
        for a in 0..pts.len() {
            for b in a + 1..pts.len() {
                dirs.push(pts[a].iter().zip(&pts[b]).map(|(x, y)| x - y).collect());
            }
        }
        for k in 0..n {
            let mut e = vec![0i128; n];
            e[k] = 1;
            dirs.push(e);
        }
        let mut normals: Vec<Vec<i128>> = Vec::new();
        for sel in subsets(dirs.len(), n - 1) {
            let chosen: Vec<&Vec<i128>> = sel.iter().map(|&s| &dirs[s]).collect();
            let mut w = normal(&chosen, n);
            if w.iter().all(|&v| v == 0) {
                continue;
            }
            if w.iter().any(|&v| v < 0) {
                w.iter_mut().for_each(|v| *v = -*v);
            }
            if w.iter().any(|&v| v < 0) {
                continue;
            }
            let g = w.iter().fold(0i128, |g, &v| g.gcd(&v));
            w.iter_mut().for_each(|v| *v /= g);
            if !normals.contains(&w) {
                normals.push(w);
            }
        }
        let mut inequalities = Vec::new();
        for w in normals {
            let dot = |p: &Vec<i128>| p.iter().zip(&w).map(|(a, b)| a * b).sum::<i128>();
            let b = pts.iter().map(dot).min().expect("nonempty");
            // keep facets only: the tight face must have dimension n-1
            let tight: Vec<&Vec<i128>> = pts.iter().filter(|p| dot(p) == b).collect();
            let mut face: Vec<Vec<i128>> =
                tight.iter().skip(1).map(|p| p.iter().zip(tight[0]).map(|(x, y)| x - y).collect()).collect();
            for k in 0..n {
                if w[k] == 0 {
                    let mut e = vec![0i128; n];
                    e[k] = 1;
                    face.push(e);
                }
            }
            if rank(&face) == n - 1 {
                inequalities.push((w.iter().map(|&v| v as i64).collect(), b as i64));
            }
        }
        inequalities.sort();
        Ok(NewtonPolyhedron { nvars: n, inequalities, corner })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn inequalities(&self) -> &[(Vec<i64>, i64)] {
        &self.inequalities
    }

    /// Whether `p` lies in `scale` times the polyhedron.
    pub fn contains_scaled(&self, p: &[u32], scale: u32) -> bool {
        self.inequalities
            .iter()
            .all(|(w, b)| w.iter().zip(p).map(|(a, &x)| a * x as i64).sum::<i64>() >= b * scale as i64)
    }

    pub fn contains(&self, p: &[u32]) -> bool {
        self.contains_scaled(p, 1)
    }

    /// Minimal lattice points of `scale` times the polyhedron, i.e. generators of the closure of `I^scale`.
    pub fn minimal_points(&self, scale: u32) -> Vec<Monomial> {
        let n = self.nvars;
        let bound: Vec<u32> = self.corner.iter().map(|c| c * scale).collect();
        let mut out = Vec::new();
        let mut p = vec![0u32; n];
        loop {
            if self.contains_scaled(&p, scale) {
                let minimal = (0..n).all(|k| {
                    if p[k] == 0 {
                        return true;
                    }
                    p[k] -= 1;
                    let inside = self.contains_scaled(&p, scale);
                    p[k] += 1;
                    !inside
                });
                if minimal {
                    out.push(Monomial::from_exponents(&p).expect("bounded by variable count"));
                }
            }
            let mut k = 0;
            loop {
                if k == n {
                    return out;
                }
                if p[k] < bound[k] {
                    p[k] += 1;
                    break;
                }
                p[k] = 0;
                k += 1;
            }
        }
    }
}

/// Integral closure of a monomial ideal.
pub fn integral_closure(i: &MonomialIdeal) -> Result<MonomialIdeal> {
    if i.is_zero() || i.is_unit() {
        return Ok(i.clone());
    }
    let poly = NewtonPolyhedron::of(i)?;
    MonomialIdeal::new(i.nvars(), &poly.minimal_points(1))
}

fn monomial_gens<F: Field>(i: &RingIdeal<F>) -> Result<MonomialIdeal> {
    if !i.ring().is_polynomial_ring() {
        return Err(AlgebraError::Domain("monomial closures are only computed in polynomial rings".into()));
    }
    if !i.is_monomial() {
        return Err(AlgebraError::Domain(format!("ideal {i} is not generated by monomials")));
    }
    let mons: Vec<Monomial> = i.gens().iter().filter(|g| !g.is_zero()).map(|g| g.lead_monomial().expect("nonzero")).collect();
    MonomialIdeal::new(i.ring().nvars(), &mons)
}

fn to_polys<F: Field>(ring: &RingRef<F>, mons: &[Monomial]) -> Vec<Polynomial<F>> {
    let one = ring.field().one();
    mons.iter().map(|m| ring.monomial(one.clone(), *m)).collect()
}

/// Integral closure of a monomial ideal of a polynomial ring.
pub fn monomial_integral_closure<F: Field>(i: &RingIdeal<F>) -> Result<RingIdeal<F>> {
    let closed = integral_closure(&monomial_gens(i)?)?;
    i.ring().ideal(&to_polys(i.ring().ambient(), closed.gens()))
}

/// The filtration `A_n = closure(I^n)`, each component computed from the scaled polyhedron.
pub fn closure_filtration<F: Field>(i: &RingIdeal<F>) -> Result<GoodFiltration<F>> {
    let mono = monomial_gens(i)?;
    if !i.is_m_primary() {
        return Err(AlgebraError::Precondition(format!("ideal {i} is not primary to the maximal ideal")));
    }
    let poly = Arc::new(NewtonPolyhedron::of(&mono)?);
    let ring = i.ring().ambient().clone();
    let label = format!("closure({})", i.to_strings().join(", "));
    Ok(GoodFiltration::direct(
        i.gens(),
        &label,
        Arc::new(move |n: u32| Ok(to_polys(&ring, &poly.minimal_points(n)))),
    ))
}

/// `A_n ⊆ B_n` for `n = 1..=upto`.
pub fn filtration_contained<F: Field>(
    r: &PresentedRef<F>,
    a: &GoodFiltration<F>,
    b: &GoodFiltration<F>,
    upto: u32,
) -> Result<bool> {
    for n in 1..=upto {
        let an = r.ideal(&a.component(n)?)?;
        let bn = r.ideal(&b.component(n)?)?;
        if !bn.contains_ideal(&an)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `A_m·A_n ⊆ A_{m+n}` and `A_{n+1} ⊆ A_n` whenever `m + n ≤ upto`.
pub fn is_multiplicative<F: Field>(r: &PresentedRef<F>, a: &GoodFiltration<F>, upto: u32) -> Result<bool> {
    let comps: Vec<RingIdeal<F>> = (1..=upto).map(|n| r.ideal(&a.component(n)?)).collect::<Result<_>>()?;
    for m in 1..=upto as usize {
        if m < upto as usize && !comps[m - 1].contains_ideal(&comps[m])? {
            return Ok(false);
        }
        for n in m..=upto as usize - m {
            if !comps[m + n - 1].contains_ideal(&comps[m - 1].product(&comps[n - 1])?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of comparing two filtrations `A ⊆ B` over the same base ideal.
#[derive(Debug, Clone)]
pub struct TrackingReport {
    pub lower: HilbertCoefficients,
    pub upper: HilbertCoefficients,
    pub checked_upto: u32,
    pub e0_equal: bool,
    pub e1_monotone: bool,
    /// `e_1(B) - e_1(A)`, the bound on the length of a strict chain of such filtrations.
    pub chain_bound: i128,
}

/// Coefficients of both filtrations after verifying `A_n ⊆ B_n` on the materialized range.
pub fn tracking_compare<F: Field>(
    r: &PresentedRef<F>,
    a: &GoodFiltration<F>,
    b: &GoodFiltration<F>,
    opts: SamuelOptions,
) -> Result<TrackingReport> {
    let m = ModulePresentation::of_ring(r);
    let lower = hilbert_samuel_module(&m, a, opts)?;
    let upper = hilbert_samuel_module(&m, b, opts)?;
    let upto = lower.table.lengths.len().max(upper.table.lengths.len()) as u32;
    if !filtration_contained(r, a, b, upto)? {
        return Err(AlgebraError::Precondition(format!(
            "{} is not contained in {} on n ≤ {upto}",
            a.label(),
            b.label()
        )));
    }
    Ok(TrackingReport {
        e0_equal: lower.e0() == upper.e0(),
        e1_monotone: lower.e1() <= upper.e1(),
        chain_bound: upper.e1() - lower.e1(),
        checked_upto: upto,
        lower,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::hilbert::ideal_coefficients;
    use crate::poly::PolyRing;
    use crate::ring::PresentedRing;

    fn poly_ring(names: &[&str]) -> PresentedRef<PrimeField> {
        PresentedRing::polynomial_ring(&PolyRing::new(PrimeField::default_field(), names).unwrap())
    }

    fn mono(nvars: usize, exps: &[&[u32]]) -> MonomialIdeal {
        let gens: Vec<Monomial> = exps.iter().map(|e| Monomial::from_exponents(e).unwrap()).collect();
        MonomialIdeal::new(nvars, &gens).unwrap()
    }

    #[test]
    fn closures_in_two_variables() {
        let c = integral_closure(&mono(2, &[&[3, 0], &[0, 3]])).unwrap();
        assert_eq!(c, mono(2, &[&[3, 0], &[2, 1], &[1, 2], &[0, 3]]));
        let c = integral_closure(&mono(2, &[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(c, mono(2, &[&[2, 0], &[1, 2], &[0, 3]]));
        let m3 = MonomialIdeal::maximal_power(3, 3);
        assert_eq!(integral_closure(&m3).unwrap(), m3);
    }

    #[test]
    fn polyhedron_normals_are_nonnegative() {
        let p = NewtonPolyhedron::of(&mono(3, &[&[4, 0, 0], &[0, 2, 1], &[1, 1, 1], &[0, 0, 5]])).unwrap();
        assert!(p.inequalities().iter().all(|(w, _)| w.iter().all(|&v| v >= 0)));
        assert!(p.inequalities().len() >= 3);
    }

    #[test]
    fn closure_filtration_of_cubes() {
        let r = poly_ring(&["x", "y"]);
        let i = r.parse_ideal(&["x^3", "y^3"]).unwrap();
        let bar = monomial_integral_closure(&i).unwrap();
        assert_eq!(r.length(&bar).unwrap(), 6);
        let filt = closure_filtration(&i).unwrap();
        assert!(is_multiplicative(&r, &filt, 4).unwrap());
        let adic = GoodFiltration::adic(i.gens());
        let rep = tracking_compare(&r, &adic, &filt, SamuelOptions::default()).unwrap();
        assert_eq!(rep.upper.e, vec![9, 3, 0]);
        assert_eq!(rep.lower.e, vec![9, 0, 0]);
        assert!(rep.e0_equal && rep.e1_monotone);
        assert_eq!(rep.chain_bound, 3);
        let err = tracking_compare(&r, &filt, &adic, SamuelOptions::default());
        assert!(matches!(err, Err(AlgebraError::Precondition(_))));
    }

    #[test]
    fn normal_ideal_filtration_is_adic() {
        let r = poly_ring(&["x", "y"]);
        let m2 = r.maximal_ideal().power(2).unwrap();
        let filt = closure_filtration(&m2).unwrap();
        let rep = tracking_compare(&r, &GoodFiltration::adic(m2.gens()), &filt, SamuelOptions::default()).unwrap();
        assert_eq!(rep.lower.e, rep.upper.e);
        assert_eq!(rep.lower.e, ideal_coefficients(&m2, SamuelOptions::default()).unwrap().e);
    }

    #[test]
    fn non_monomial_input_is_rejected() {
        let r = poly_ring(&["x", "y"]);
        let i = r.parse_ideal(&["x + y", "y^2"]).unwrap();
        assert!(matches!(monomial_integral_closure(&i), Err(AlgebraError::Domain(_))));
    }
}
