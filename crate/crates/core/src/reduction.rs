//! Random superficial sequences and minimal-reduction candidates.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::hilbert::{ideal_coefficients, SamuelOptions};
use crate::poly::Polynomial;
use crate::ring::{PresentedRef, RingIdeal};

pub const DEFAULT_RETRY_BUDGET: u32 = 12;

/// Result of cutting a ring down by random combinations of the generators of an ideal.
#[derive(Debug, Clone)]
pub struct ReductionOutcome<F: Field> {
    pub ring: PresentedRef<F>,
    pub elements: Vec<Polynomial<F>>,
    /// `(i, e_i before, e_i after)` for every coefficient that was compared.
    pub checked: Vec<(usize, i128, i128)>,
    /// Rejected draws before acceptance.
    pub retries: u32,
}

impl<F: Field> ReductionOutcome<F> {
    /// The ideal `I·R'` in the reduced ring.
    pub fn extended_ideal(&self, i: &RingIdeal<F>) -> Result<RingIdeal<F>> {
        let gens: Vec<_> = i.gens().to_vec();
        self.ring.ideal(&gens)
    }
}

fn random_combination<F: Field>(i: &RingIdeal<F>, rng: &mut ChaCha8Rng) -> Polynomial<F> {
    let ring = i.ring().ambient();
    let field = ring.field();
    let mut acc = ring.zero();
    for g in i.gens() {
        let c = field.random_nonzero(rng);
        acc = &acc + &g.scale(&c);
    }
    acc
}

fn random_elements<F: Field>(i: &RingIdeal<F>, count: usize, rng: &mut ChaCha8Rng) -> Vec<Polynomial<F>> {
    (0..count).map(|_| random_combination(i, rng)).collect()
}

/// Cut `R` by `count` random combinations of the generators of `I`, checking that
/// `dim` drops by `count` and that `e_0..e_{d-count-1}` of `I` survive.
pub fn random_superficial_reduction<F: Field>(
    i: &RingIdeal<F>,
    count: usize,
    seed: u64,
    budget: u32,
    opts: SamuelOptions,
) -> Result<ReductionOutcome<F>> {
    let r = i.ring();
    let d = r.dim();
    if !i.is_m_primary() {
        return Err(AlgebraError::Precondition(format!("ideal {i} is not primary to the maximal ideal")));
    }
    if count > d {
        return Err(AlgebraError::Domain(format!("cannot cut a ring of dimension {d} by {count} elements")));
    }
    if count == 0 {
        return Ok(ReductionOutcome { ring: r.clone(), elements: Vec::new(), checked: Vec::new(), retries: 0 });
    }
    let before = if count < d { Some(ideal_coefficients(i, opts)?) } else { None };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..budget {
        let elements = random_elements(i, count, &mut rng);
        let reduced = r.quotient(&elements)?;
        if reduced.dim() != d - count {
            continue;
        }
        let mut checked = Vec::new();
        if let Some(before) = &before {
            let after = ideal_coefficients(&reduced.ideal(i.gens())?, opts)?;
            let keep = d - count;
            for k in 0..keep {
                checked.push((k, before.get(k), after.get(k)));
            }
            if checked.iter().any(|(_, a, b)| a != b) {
                continue;
            }
        }
        return Ok(ReductionOutcome { ring: reduced, elements, checked, retries: attempt });
    }
    Err(AlgebraError::Genericity(format!(
        "no superficial sequence of length {count} for {i} after {budget} draws"
    )))
}

/// A `dim R`-generated subideal of `I` with the same multiplicity, with the number of rejected draws.
pub fn minimal_reduction_candidate<F: Field>(
    i: &RingIdeal<F>,
    seed: u64,
    budget: u32,
    opts: SamuelOptions,
) -> Result<(RingIdeal<F>, u32)> {
    let r = i.ring();
    let d = r.dim();
    if !i.is_m_primary() {
        return Err(AlgebraError::Precondition(format!("ideal {i} is not primary to the maximal ideal")));
    }
    let target = ideal_coefficients(i, opts)?.e0();
    if i.gens().len() == d {
        return Ok((i.clone(), 0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..budget {
        let j = r.ideal(&random_elements(i, d, &mut rng))?;
        if !j.is_m_primary() {
            continue;
        }
        if ideal_coefficients(&j, opts)?.e0() == target {
            return Ok((j, attempt));
        }
    }
    Err(AlgebraError::Genericity(format!("no minimal reduction of {i} found after {budget} draws")))
}
