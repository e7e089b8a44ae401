//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{AlgebraError, Result};

/// Hard cap on the number of ring variables (auxiliary elimination
/// variables included).
pub const MAX_VARS: usize = 16;

/// An exponent vector with a fixed variable count.
///
/// Stored inline so monomials are `Copy`; entries past `nvars` are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    nvars: u8,
    deg: u32,
}

/// Alias used where a monomial is read as a point of ℕⁿ.
pub type ExponentVector = Monomial;

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        Monomial { exps: [0; MAX_VARS], nvars: nvars as u8, deg: 0 }
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(AlgebraError::Context(format!(
                "{} variables requested, at most {MAX_VARS} supported",
                exps.len()
            )));
        }
        let mut m = Monomial::one(exps.len());
        for (i, &e) in exps.iter().enumerate() {
            let e = u16::try_from(e)
                .map_err(|_| AlgebraError::Resource(format!("exponent {e} too large")))?;
            m.exps[i] = e;
            m.deg += e as u32;
        }
        Ok(m)
    }

    /// The monomial `x_i^e` in `nvars` variables.
    pub fn var_power(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = e as u16;
        m.deg = e;
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.exps[..self.nvars()].iter().map(|&e| e as u32).collect()
    }

    /// Standard total degree.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.exps[..self.nvars()]
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] = out.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow in monomial product");
        }
        out.deg += other.deg;
        out
    }

    /// Componentwise `self <= other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    #[inline]
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut out = *other;
        for i in 0..MAX_VARS {
            out.exps[i] -= self.exps[i];
        }
        out.deg -= self.deg;
        Some(out)
    }

    /// `self / divisor`, or a domain error when the division is not exact.
    pub fn quotient(&self, divisor: &Monomial) -> Result<Monomial> {
        check_same_len(self, divisor)?;
        divisor.divide_into(self).ok_or_else(|| {
            AlgebraError::Domain(format!("{divisor:?} does not divide {self:?}"))
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        let mut deg = 0;
        for i in 0..MAX_VARS {
            out.exps[i] = out.exps[i].max(other.exps[i]);
            deg += out.exps[i] as u32;
        }
        out.deg = deg;
        out
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        let mut deg = 0;
        for i in 0..MAX_VARS {
            out.exps[i] = out.exps[i].min(other.exps[i]);
            deg += out.exps[i] as u32;
        }
        out.deg = deg;
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bit `i` is set iff variable `i` occurs.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for i in 0..self.nvars() {
            if self.exps[i] > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Re-embed into a ring with `nvars` variables, placing variable `i` at
    /// position `i + offset`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Monomial {
        let mut out = Monomial::one(nvars);
        for i in 0..self.nvars() {
            out.exps[i + offset] = self.exps[i];
        }
        out.deg = self.deg;
        out
    }

    /// Keep variables `range`, renumbered from zero.
    pub fn restrict(&self, start: usize, len: usize) -> Monomial {
        let mut out = Monomial::one(len);
        let mut deg = 0;
        for i in 0..len {
            out.exps[i] = self.exps[start + i];
            deg += out.exps[i] as u32;
        }
        out.deg = deg;
        out
    }

    pub(crate) fn set_exponent(&mut self, i: usize, e: u32) {
        self.deg = self.deg - self.exps[i] as u32 + e;
        self.exps[i] = e as u16;
    }

    /// Result of the three elementary monomial operations at once.
    pub fn monomial_ops(&self, other: &Monomial) -> Result<MonomialOps> {
        check_same_len(self, other)?;
        Ok(MonomialOps {
            divides: self.divides(other),
            quotient: self.divide_into(other),
            lcm: self.lcm(other),
        })
    }
}

/// `divides`: whether `a | b`; `quotient`: `b / a` when defined; `lcm(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOps {
    pub divides: bool,
    pub quotient: Option<Monomial>,
    pub lcm: Monomial,
}

fn check_same_len(a: &Monomial, b: &Monomial) -> Result<()> {
    if a.nvars != b.nvars {
        return Err(AlgebraError::Context(format!(
            "exponent vectors of length {} and {}",
            a.nvars, b.nvars
        )));
    }
    Ok(())
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.exps[..self.nvars()])
    }
}

/// A monomial order on exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Degree reverse lexicographic with standard degree.
    Grevlex,
    /// Lexicographic, `x_1 > x_2 > ...`.
    Lex,
    /// Weighted degree first, ties broken reverse-lexicographically.
    WeightedGrevlex(Vec<u32>),
    /// Elimination order: blocks of consecutive variables compared one after
    /// another, grevlex inside each block.
    Block(Vec<usize>),
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a.deg.cmp(&b.deg).then_with(|| revlex(a, b, 0, a.nvars())),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::WeightedGrevlex(w) => a
                .weighted_degree(w)
                .cmp(&b.weighted_degree(w))
                .then_with(|| revlex(a, b, 0, a.nvars())),
            MonomialOrder::Block(sizes) => {
                let mut start = 0;
                for &len in sizes {
                    let da: u32 = a.exps[start..start + len].iter().map(|&e| e as u32).sum();
                    let db: u32 = b.exps[start..start + len].iter().map(|&e| e as u32).sum();
                    let o = da.cmp(&db).then_with(|| revlex(a, b, start, start + len));
                    if o != Ordering::Equal {
                        return o;
                    }
                    start += len;
                }
                Ordering::Equal
            }
        }
    }

    /// Checked comparison for exponent vectors of possibly different lengths.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        check_same_len(a, b)?;
        Ok(self.cmp(a, b))
    }

    /// Whether the first comparison key is a (weighted) total degree.
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex | MonomialOrder::WeightedGrevlex(_))
    }

    /// The degree used as the primary key, for degree-compatible orders.
    #[inline]
    pub fn primary_degree(&self, m: &Monomial) -> i64 {
        match self {
            MonomialOrder::WeightedGrevlex(w) => m.weighted_degree(w) as i64,
            _ => m.deg as i64,
        }
    }

    pub fn validate(&self, nvars: usize) -> Result<()> {
        match self {
            MonomialOrder::WeightedGrevlex(w) if w.len() != nvars || w.contains(&0) => {
                Err(AlgebraError::Context("weight vector must be positive, one entry per variable".into()))
            }
            MonomialOrder::Block(sizes) if sizes.iter().sum::<usize>() != nvars => {
                Err(AlgebraError::Context("block sizes must add up to the variable count".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Reverse lexicographic tie-break on `[start, end)`: the monomial with the
/// smaller exponent in the last differing variable is larger.
#[inline]
fn revlex(a: &Monomial, b: &Monomial, start: usize, end: usize) -> Ordering {
    for i in (start..end).rev() {
        if a.exps[i] != b.exps[i] {
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn grevlex_degree_two() {
        let o = MonomialOrder::Grevlex;
        assert_eq!(o.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[0, 2])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[1, 1])), Ordering::Equal);
        // classic three-variable grevlex distinction: xz^... vs y^2
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn lex_ignores_degree() {
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 3])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::Block(vec![1, 2]);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 1, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn elementary_operations() {
        let x2y = m(&[2, 1, 0]);
        let xz = m(&[1, 0, 1]);
        assert_eq!(x2y.lcm(&xz), m(&[2, 1, 1]));
        assert_eq!(m(&[3, 2, 0]).quotient(&x2y).unwrap(), m(&[1, 1, 0]));
        assert!(matches!(xz.quotient(&x2y), Err(AlgebraError::Domain(_))));
        let ops = x2y.monomial_ops(&x2y).unwrap();
        assert!(ops.divides);
        assert!(ops.quotient.unwrap().is_one());
        assert!(matches!(m(&[1]).monomial_ops(&m(&[1, 0])), Err(AlgebraError::Context(_))));
        assert!(matches!(MonomialOrder::Grevlex.compare(&m(&[1]), &m(&[1, 0])), Err(AlgebraError::Context(_))));
    }
}
