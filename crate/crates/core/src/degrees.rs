//! Homological degree `hdeg` and its Samuel-multiplicity variant `hdeg_I`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use crate::error::Result;
use crate::field::Field;
use crate::hilbert::{samuel_multiplicity, SamuelOptions};
use crate::homological::{ext_from_resolution, free_resolution, CohomologyProfile};
use crate::monomial_ideal::binomial;
use crate::par::Execution;
use crate::poly::Polynomial;
use crate::presentation::ModulePresentation;
use crate::ring::{PresentedRing, RingIdeal};

/// One module in the recursion: its base degree and the weighted Ext contributions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeNode {
    pub dim: Option<usize>,
    /// `deg(M)`, `e(I; M)`, or `λ(M)` for modules of finite length.
    pub base: i128,
    pub children: Vec<DegreeChild>,
    pub value: i128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeChild {
    pub ext_index: usize,
    pub weight: i128,
    pub node: DegreeNode,
}

impl DegreeNode {
    fn leaf(dim: Option<usize>, base: i128) -> Self {
        DegreeNode { dim, base, children: Vec::new(), value: base }
    }

    /// Nodes in the tree, this one included.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(|c| c.node.size()).sum::<usize>()
    }

    fn render(&self, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        let dim = self.dim.map(|d| d.to_string()).unwrap_or_else(|| "-".into());
        out.push_str(&format!("{pad}dim {dim}: base {} total {}\n", self.base, self.value));
        for c in &self.children {
            out.push_str(&format!("{pad}  Ext^{} weight {}\n", c.ext_index, c.weight));
            c.node.render(depth + 2, out);
        }
    }
}

/// `hdeg` (or `hdeg_I`) of one module, with the recursion tree that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    /// Generators of `I` for `hdeg_I`; empty for `hdeg`.
    pub relative_to: Vec<String>,
    pub root: DegreeNode,
}

impl DegreeReport {
    pub fn value(&self) -> i128 {
        self.root.value
    }
    /// `deg(M)` or `e(I; M)`.
    pub fn base(&self) -> i128 {
        self.root.base
    }
    /// Whether every Ext contribution vanished.
    pub fn is_base(&self) -> bool {
        self.root.value == self.root.base
    }
}

impl fmt::Display for DegreeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.root.render(0, &mut s);
        f.write_str(s.trim_end())
    }
}

/// A memoized evaluator of the recursion, confined to one computation.
pub struct DegreeContext<F: Field> {
    ideal: Vec<Polynomial<F>>,
    opts: SamuelOptions,
    memo: Mutex<HashMap<String, DegreeNode>>,
}

impl<F: Field> DegreeContext<F> {
    /// `hdeg`, based on the ordinary degree.
    pub fn plain(exec: Execution) -> Self {
        DegreeContext { ideal: Vec::new(), opts: SamuelOptions { exec, ..SamuelOptions::default() }, memo: Mutex::default() }
    }

    /// `hdeg_I`, based on Samuel multiplicities relative to `gens`.
    pub fn relative(gens: &[Polynomial<F>], opts: SamuelOptions) -> Self {
        DegreeContext { ideal: gens.to_vec(), opts, memo: Mutex::default() }
    }

    pub fn cached(&self) -> usize {
        self.memo.lock().expect("memo lock").len()
    }

    fn base(&self, m: &ModulePresentation<F>) -> Result<i128> {
        if self.ideal.is_empty() {
            Ok(m.degree())
        } else {
            samuel_multiplicity(m, &self.ideal, self.opts)
        }
    }

    pub fn node(&self, m: &ModulePresentation<F>) -> Result<DegreeNode> {
        let key = m.key();
        if let Some(n) = self.memo.lock().expect("memo lock").get(&key) {
            return Ok(n.clone());
        }
        let node = self.compute(m)?;
        self.memo.lock().expect("memo lock").insert(key, node.clone());
        Ok(node)
    }

    fn compute(&self, m: &ModulePresentation<F>) -> Result<DegreeNode> {
        let Some(d) = m.dimension() else { return Ok(DegreeNode::leaf(None, 0)) };
        if d == 0 {
            return Ok(DegreeNode::leaf(Some(0), m.length().unwrap_or(0) as i128));
        }
        let base = self.base(m)?;
        let r = m.ring().nvars();
        let res = free_resolution(m)?;
        let first = r + 1 - d;
        let children: Vec<Result<Option<DegreeChild>>> = self.opts.exec.map_range(d, |k| {
            let i = first + k;
            let ext = ext_from_resolution(&res, i)?;
            if ext.is_zero() {
                return Ok(None);
            }
            let weight = binomial((d - 1) as i64, (i + d - r - 1) as i64);
            Ok(Some(DegreeChild { ext_index: i, weight, node: self.node(&ext)? }))
        });
        let children: Vec<DegreeChild> = children.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
        let value = base + children.iter().map(|c| c.weight * c.node.value).sum::<i128>();
        Ok(DegreeNode { dim: Some(d), base, children, value })
    }

    pub fn report(&self, m: &ModulePresentation<F>) -> Result<DegreeReport> {
        Ok(DegreeReport {
            relative_to: self.ideal.iter().map(|g| g.to_string()).collect(),
            root: self.node(m)?,
        })
    }
}

/// `hdeg(M)`.
pub fn hdeg<F: Field>(m: &ModulePresentation<F>, exec: Execution) -> Result<DegreeReport> {
    DegreeContext::plain(exec).report(m)
}

/// `hdeg_I(M)`.
pub fn hdeg_rel<F: Field>(m: &ModulePresentation<F>, i: &RingIdeal<F>, opts: SamuelOptions) -> Result<DegreeReport> {
    if !i.is_m_primary() {
        return Err(crate::error::AlgebraError::Precondition(format!("ideal {i} is not primary to the maximal ideal")));
    }
    DegreeContext::relative(i.gens(), opts).report(m)
}

/// `T(R) = Σ_{i=1}^{d-1} C(d-2, i-1) λ(H^i_𝔪(R))`; `None` when some term is infinite.
pub fn t_invariant<F: Field>(r: &PresentedRing<F>, exec: Execution) -> Result<Option<u64>> {
    Ok(CohomologyProfile::of(&ModulePresentation::of_ring(r), exec)?.t_invariant())
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
        if r.is_empty() {
            PresentedRing::polynomial_ring(&s)
        } else {
            PresentedRing::new(&s, &r).unwrap()
        }
    }

    #[test]
    fn z_ring_has_hdeg_two() {
        let r = ring(&["x", "y", "z"], &["x*z", "y*z", "z^2"]);
        let m = ModulePresentation::of_ring(&r);
        let rep = hdeg(&m, Execution::Sequential).unwrap();
        assert_eq!(rep.base(), 1);
        assert_eq!(rep.value(), 2);
        assert_eq!(rep.root.children.len(), 1);
        assert_eq!(rep.root.children[0].ext_index, 3);
        let bar = m.modulo_h0().unwrap();
        assert_eq!(hdeg(&bar, Execution::Sequential).unwrap().value() + m.h0_length().unwrap() as i128, 2);
        assert_eq!(t_invariant(&r, Execution::Sequential).unwrap(), Some(0));
        let rel = hdeg_rel(&m, &r.maximal_ideal(), SamuelOptions::default()).unwrap();
        assert_eq!(rel.value(), 2);
    }

    #[test]
    fn cohen_macaulay_calibration() {
        let r = ring(&["x", "y", "z"], &["x*y - z^2"]);
        let rep = hdeg(&ModulePresentation::of_ring(&r), Execution::Sequential).unwrap();
        assert_eq!(rep.value(), 2);
        assert!(rep.is_base());
    }

    #[test]
    fn finite_length_is_length() {
        let r = ring(&["x", "y"], &[]);
        let i = r.parse_ideal(&["x^2", "x*y", "y^4"]).unwrap();
        let m = ModulePresentation::of_quotient(&i);
        assert_eq!(m.length(), Some(5));
        assert_eq!(hdeg(&m, Execution::Sequential).unwrap().value(), 5);
    }

    #[test]
    fn zero_module() {
        let r = ring(&["x"], &[]);
        let m = ModulePresentation::of_quotient(&r.unit_ideal());
        assert_eq!(hdeg(&m, Execution::Sequential).unwrap().value(), 0);
    }

    #[test]
    fn idealization_relative_degree() {
        let r = ring(&["x", "y", "z", "u", "v"], &["u^2", "u*v", "v^2", "y*u - x*v"]);
        let m = ModulePresentation::of_ring(&r);
        let p = CohomologyProfile::of(&m, Execution::Sequential).unwrap();
        assert_eq!(p.dim, Some(3));
        assert_eq!(p.depth, Some(2));
        assert_eq!(p.length(2), crate::homological::CohomologyLength::Infinite);
        assert!(!p.is_generalized_cm());
        assert_eq!(p.t_invariant(), None);
        for n in 1..=2 {
            let j = r.parse_ideal(&["x", "y", &format!("z^{n}")]).unwrap();
            let rep = hdeg_rel(&m, &j, SamuelOptions::default()).unwrap();
            assert_eq!(rep.base(), 2 * n);
            assert_eq!(rep.value(), 3 * n);
        }
    }
}
