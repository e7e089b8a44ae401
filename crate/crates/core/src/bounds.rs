//! Inequalities and identities for Chern coefficients, evaluated on concrete
//! instances with their hypotheses checked, plus conjecture probes.

use std::collections::HashSet;
use std::fmt;

use crate::closure::{closure_filtration, monomial_integral_closure};
use crate::degrees::{hdeg, hdeg_rel};
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::hilbert::{hilbert_samuel_module, ideal_coefficients, HilbertCoefficients, SamuelOptions};
use crate::homological::{koszul_homology_lengths, CohomologyLength, CohomologyProfile};
use crate::presentation::ModulePresentation;
use crate::reduction::{minimal_reduction_candidate, random_superficial_reduction, ReductionOutcome, DEFAULT_RETRY_BUDGET};
use crate::ring::{PresentedRef, RingIdeal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    HypothesesNotMet,
    IngredientUnavailable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::HypothesesNotMet => "hypotheses-not-met",
            Verdict::IngredientUnavailable => "ingredient-unavailable",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How the left side is compared with the right side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    AtLeast,
    AtMost,
    Equal,
}

impl Relation {
    fn test(self, lhs: i128, rhs: i128) -> bool {
        match self {
            Relation::AtLeast => lhs >= rhs,
            Relation::AtMost => lhs <= rhs,
            Relation::Equal => lhs == rhs,
        }
    }
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::AtLeast => ">=",
            Relation::AtMost => "<=",
            Relation::Equal => "==",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub name: String,
    pub statement: String,
    pub hypotheses: Vec<(String, bool)>,
    pub lhs: Option<i128>,
    pub relation: Relation,
    pub rhs: Option<i128>,
    /// Intermediate quantities, exact decimal strings.
    pub values: Vec<(String, String)>,
    pub verdict: Verdict,
    pub note: Option<String>,
}

impl BoundReport {
    fn new(name: &str, statement: &str, relation: Relation) -> Self {
        BoundReport {
            name: name.into(),
            statement: statement.into(),
            hypotheses: Vec::new(),
            lhs: None,
            relation,
            rhs: None,
            values: Vec::new(),
            verdict: Verdict::IngredientUnavailable,
            note: None,
        }
    }

    fn hyp(mut self, name: &str, holds: bool) -> Self {
        self.hypotheses.push((name.into(), holds));
        self
    }

    fn val(mut self, name: &str, v: impl ToString) -> Self {
        self.values.push((name.into(), v.to_string()));
        self
    }

    fn unavailable(mut self, why: impl ToString) -> Self {
        self.verdict = Verdict::IngredientUnavailable;
        self.note = Some(why.to_string());
        self
    }

    fn decide(mut self, lhs: i128, rhs: i128) -> Self {
        self.lhs = Some(lhs);
        self.rhs = Some(rhs);
        self.verdict = if self.hypotheses.iter().any(|(_, h)| !h) {
            Verdict::HypothesesNotMet
        } else if self.relation.test(lhs, rhs) {
            Verdict::Holds
        } else {
            Verdict::Fails
        };
        self
    }
}

/// Structural flags that are declared rather than decided.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct InstanceFlags {
    pub buchsbaum: bool,
    pub domain: bool,
    pub unmixed: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub seed: u64,
    pub samuel: SamuelOptions,
    pub budget: u32,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 42, samuel: SamuelOptions::default(), budget: DEFAULT_RETRY_BUDGET }
    }
}

/// An ordering `x_1..x_d` of the generators with `((x_1..x_i) : x_{i+1}x_k) = ((x_1..x_i) : x_k)`
/// for all `i < d`, `k > i`, if one exists.
///
/// The condition at step `i` only sees the set of earlier elements, the next one and
/// the rest, so the search runs over subsets and remembers dead prefixes.
pub fn d_sequence_order<F: Field>(j: &RingIdeal<F>) -> Result<Option<Vec<usize>>> {
    let g = j.gens();
    if g.len() > 20 {
        return Err(AlgebraError::Resource(format!("{} generators is too many orderings to search", g.len())));
    }
    let mut dead = HashSet::new();
    let mut order = Vec::new();
    if extend_d_sequence(j, 0, &mut order, &mut dead)? {
        Ok(Some(order))
    } else {
        Ok(None)
    }
}

fn extend_d_sequence<F: Field>(j: &RingIdeal<F>, used: u32, order: &mut Vec<usize>, dead: &mut HashSet<u32>) -> Result<bool> {
    let g = j.gens();
    if order.len() == g.len() {
        return Ok(true);
    }
    if dead.contains(&used) {
        return Ok(false);
    }
    let r = j.ring();
    let head = r.ideal(&order.iter().map(|&a| g[a].clone()).collect::<Vec<_>>())?;
    let rest: Vec<usize> = (0..g.len()).filter(|a| used & (1 << a) == 0).collect();
    for &next in &rest {
        let mut ok = true;
        for &k in &rest {
            let prod = &g[next] * &g[k];
            if !head.colon_element(&prod)?.same_ideal(&head.colon_element(&g[k])?) {
                ok = false;
                break;
            }
        }
        if ok {
            order.push(next);
            if extend_d_sequence(j, used | (1 << next), order, dead)? {
                return Ok(true);
            }
            order.pop();
        }
    }
    dead.insert(used);
    Ok(false)
}

/// Whether some ordering of the generators is a d-sequence.
pub fn is_d_sequence<F: Field>(j: &RingIdeal<F>) -> Result<bool> {
    Ok(d_sequence_order(j)?.is_some())
}

/// Least `s` with `𝔪^s ⊆ I`.
pub fn nilpotency_index<F: Field>(i: &RingIdeal<F>) -> Result<u32> {
    let colength = i.colength()?;
    let m = i.ring().maximal_ideal();
    let mut p = i.ring().unit_ideal();
    for s in 0..=colength as u32 + 1 {
        if i.contains_ideal(&p)? {
            return Ok(s);
        }
        p = p.product(&m)?;
    }
    Err(AlgebraError::Internal("maximal ideal power never entered an m-primary ideal".into()))
}

fn text<T: ToString, E: ToString>(r: &std::result::Result<T, E>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("unavailable: {}", e.to_string()),
    }
}

/// `ē_1(I)` and `λ(R/Ī)`, only for monomial ideals of polynomial rings.
pub fn closure_data<F: Field>(i: &RingIdeal<F>, opts: SamuelOptions) -> Result<(HilbertCoefficients, u64)> {
    let filt = closure_filtration(i)?;
    let bar = monomial_integral_closure(i)?;
    let coeffs = hilbert_samuel_module(&ModulePresentation::of_ring(i.ring()), &filt, opts)?;
    Ok((coeffs, i.ring().length(&bar)?))
}

type Quantity<T> = std::result::Result<T, String>;

fn q<T>(r: Result<T>) -> Quantity<T> {
    r.map_err(|e| e.to_string())
}

fn standard_graded<F: Field>(r: &PresentedRef<F>) -> bool {
    r.is_graded() && r.ambient().is_standard_graded() && r.ambient().order().is_degree_compatible()
}

/// Every bound that can be evaluated on `(R, I)`, one report each.
pub fn bound_suite<F: Field>(i: &RingIdeal<F>, flags: InstanceFlags, opts: SuiteOptions) -> Result<Vec<BoundReport>> {
    let r = i.ring();
    if !i.is_m_primary() {
        return Err(AlgebraError::Precondition(format!("ideal {i} is not primary to the maximal ideal")));
    }
    let d = r.dim();
    let exec = opts.samuel.exec;
    let ring_module = ModulePresentation::of_ring(r);
    let coeffs = ideal_coefficients(i, opts.samuel)?;
    let (e0, e1) = (coeffs.e0(), coeffs.e1());
    let colength = i.colength()? as i128;
    let graded = standard_graded(r);
    let profile: Quantity<CohomologyProfile> = if graded {
        q(CohomologyProfile::of(&ring_module, exec))
    } else {
        Err("ring is not standard graded".into())
    };
    let cm = profile.as_ref().map(|p| p.is_cm());
    let t_inv: Quantity<u64> =
        profile.as_ref().map_err(Clone::clone).and_then(|p| p.t_invariant().ok_or_else(|| "local cohomology of infinite length".to_string()));
    let parameter = i.gens().len() == d;
    let hdeg_plain = if graded { q(hdeg(&ring_module, exec)) } else { Err("ring is not standard graded".into()) };
    let hdeg_i = if graded { q(hdeg_rel(&ring_module, i, opts.samuel)) } else { Err("ring is not standard graded".into()) };
    let mut out = Vec::new();

    // (a)
    let mut rep = BoundReport::new("northcott", "e1(I) >= e0(I) - length(R/I)", Relation::AtLeast)
        .val("e0", e0)
        .val("e1", e1)
        .val("length(R/I)", colength);
    rep = match &cm {
        Ok(c) => rep.hyp("R Cohen-Macaulay", *c).decide(e1, e0 - colength),
        Err(e) => rep.unavailable(e),
    };
    out.push(rep);

    // (b), (c) need a parameter ideal
    let koszul = if parameter { q(koszul_homology_lengths(i, exec)) } else { Err("not a parameter ideal".into()) };
    let relation = if flags.buchsbaum { Relation::Equal } else { Relation::AtLeast };
    let mut rep = BoundReport::new("generalized-cm-lower", "e1(J) >= -T(R), equality when Buchsbaum", relation)
        .hyp("J parameter ideal", parameter)
        .val("e1", e1)
        .val("T(R)", text(&t_inv));
    if flags.buchsbaum {
        rep = rep.hyp("R Buchsbaum (declared)", true);
    }
    rep = match (&profile, &t_inv) {
        (Err(e), _) => rep.unavailable(e),
        (Ok(p), _) if !p.is_generalized_cm() => rep.hyp("R generalized Cohen-Macaulay", false).unavailable("T(R) needs finite local cohomology"),
        (Ok(_), Ok(t)) => rep.hyp("R generalized Cohen-Macaulay", true).decide(e1, -(*t as i128)),
        (Ok(_), Err(e)) => rep.unavailable(e),
    };
    out.push(rep);

    let dseq = if parameter { q(is_d_sequence(i)) } else { Err("not a parameter ideal".into()) };
    let mut rep = BoundReport::new("d-sequence-e1", "e1(J) == sum_i (-1)^i i h_i(J)", Relation::Equal)
        .hyp("J parameter ideal", parameter)
        .val("e1", e1)
        .val("koszul", text(&koszul.as_ref().map(|h| format!("{h:?}"))));
    rep = match (&dseq, &koszul) {
        (Ok(ds), Ok(h)) => {
            let alt: i128 = h.iter().enumerate().skip(1).map(|(k, &v)| if k % 2 == 0 { 1 } else { -1 } * k as i128 * v as i128).sum();
            rep.hyp("J generated by a d-sequence", *ds).decide(e1, alt)
        }
        (Err(e), _) | (_, Err(e)) => rep.unavailable(e),
    };
    out.push(rep);

    // (d)
    let rep = BoundReport::new("hdeg-lower", "e1(I) >= e0(I) - hdeg_I(R)", Relation::AtLeast)
        .hyp("I primary to the maximal ideal", true)
        .val("e0", e0)
        .val("e1", e1)
        .val("hdeg_I(R)", text(&hdeg_i.as_ref().map(|h| h.value())));
    out.push(match &hdeg_i {
        Ok(h) => rep.decide(e1, e0 - h.value()),
        Err(e) => rep.unavailable(e),
    });

    // (e), (f) on a superficial reduction of length d-1
    let count = d.saturating_sub(1);
    let reduction = q(random_superficial_reduction(i, count, opts.seed, opts.budget, opts.samuel));
    let h0_of = |red: &Quantity<ReductionOutcome<F>>| -> Quantity<u64> {
        red.as_ref().map_err(Clone::clone).and_then(|red| q(ModulePresentation::of_ring(&red.ring).h0_length()))
    };
    let preserved = |red: &Quantity<ReductionOutcome<F>>| red.as_ref().map(|red| red.checked.iter().all(|(_, a, b)| a == b)).unwrap_or(false);
    let h0_reduced = h0_of(&reduction);
    let verified = preserved(&reduction);
    let h0_ring = q(ring_module.h0_length());

    // hdeg-superficial means generic hyperplane sections, i.e. superficial for m
    let hyperplanes = if i.gens() == r.maximal_ideal().gens() {
        reduction.clone()
    } else {
        q(random_superficial_reduction(&r.maximal_ideal(), count, opts.seed, opts.budget, opts.samuel))
    };
    let h0_sections = h0_of(&hyperplanes);
    let sections_verified = preserved(&hyperplanes);

    let rep = BoundReport::new("specialization-torsion", "length(H0(R/(x))) <= hdeg(R)", Relation::AtMost)
        .hyp("x generic hyperplane sections (m-coefficients preserved)", sections_verified)
        .val("reduction length", count)
        .val("length(H0(R/(x)))", text(&h0_sections))
        .val("hdeg(R)", text(&hdeg_plain.as_ref().map(|h| h.value())));
    out.push(match (&h0_sections, &hdeg_plain) {
        (Ok(h0), Ok(h)) => rep.decide(*h0 as i128, h.value()),
        (Err(e), _) | (_, Err(e)) => rep.unavailable(e),
    });

    let rep = BoundReport::new("reduction-to-dim-one", "length(H0(R/(x))) <= length(H0(R)) + T(R)", Relation::AtMost)
        .hyp("dim R >= 2", d >= 2)
        .hyp("x generic hyperplane sections (m-coefficients preserved)", sections_verified)
        .val("length(H0(R/(x)))", text(&h0_sections))
        .val("length(H0(R))", text(&h0_ring))
        .val("T(R)", text(&t_inv));
    out.push(match (&h0_sections, &h0_ring, &t_inv) {
        (Ok(a), Ok(b), Ok(t)) => rep.hyp("R generalized Cohen-Macaulay", true).decide(*a as i128, (*b + *t) as i128),
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => rep.unavailable(e),
    });

    let hdeg_i_reduced: Quantity<i128> = reduction.as_ref().map_err(Clone::clone).and_then(|red| {
        if !standard_graded(&red.ring) {
            return Err("reduction is not homogeneous".to_string());
        }
        let ext = q(red.extended_ideal(i))?;
        q(hdeg_rel(&ModulePresentation::of_ring(&red.ring), &ext, opts.samuel)).map(|h| h.value())
    });
    let rep = BoundReport::new("superficial-hdeg", "hdeg_I(R/(x)) <= hdeg_I(R)", Relation::AtMost)
        .hyp("x superficial (coefficients preserved)", verified)
        .val("hdeg_I(R/(x))", text(&hdeg_i_reduced))
        .val("hdeg_I(R)", text(&hdeg_i.as_ref().map(|h| h.value())));
    out.push(match (&hdeg_i_reduced, &hdeg_i) {
        (Ok(a), Ok(b)) => rep.decide(*a, b.value()),
        (Err(e), _) | (_, Err(e)) => rep.unavailable(e),
    });
    let rep = BoundReport::new("superficial-torsion", "length(H0(R/(x))) <= hdeg_I(R) - e0(I)", Relation::AtMost)
        .hyp("x superficial (coefficients preserved)", verified)
        .hyp("length of x below dim R", count < d)
        .val("length(H0(R/(x)))", text(&h0_reduced))
        .val("hdeg_I(R)", text(&hdeg_i.as_ref().map(|h| h.value())));
    out.push(match (&h0_reduced, &hdeg_i) {
        (Ok(a), Ok(b)) => rep.decide(*a as i128, b.value() - e0),
        (Err(e), _) | (_, Err(e)) => rep.unavailable(e),
    });

    // (g), (h) need the closure filtration
    let closure = if r.is_polynomial_ring() && i.is_monomial() {
        q(closure_data(i, opts.samuel))
    } else {
        Err("closure filtration only for monomial ideals of polynomial rings".into())
    };
    let candidate = q(minimal_reduction_candidate(i, opts.seed, opts.budget, opts.samuel));
    let e1_j: Quantity<i128> =
        candidate.as_ref().map_err(Clone::clone).and_then(|(j, _)| q(ideal_coefficients(j, opts.samuel)).map(|c| c.e1()));
    let jac = q(r.jacobian_ideal());
    let jac_colength: Quantity<u64> = jac.as_ref().map_err(Clone::clone).and_then(|l| {
        if l.is_unit() {
            Ok(0)
        } else if l.is_m_primary() {
            q(l.colength())
        } else {
            Err("Jacobian ideal is not primary to the maximal ideal".to_string())
        }
    });
    let rep = BoundReport::new("closure-upper", "bar_e1(I) - e1(J) <= (d + length(R/L) - 1) e0(I)", Relation::AtMost)
        .hyp("R normal reduced (polynomial ring)", r.is_polynomial_ring())
        .val("bar_e1", text(&closure.as_ref().map(|c| c.0.e1())))
        .val("e1(J)", text(&e1_j))
        .val("length(R/L)", text(&jac_colength))
        .val("e0", e0);
    out.push(match (&closure, &e1_j, &jac_colength) {
        (Ok((c, _)), Ok(ej), Ok(l)) => rep.decide(c.e1() - ej, (d as i128 + *l as i128 - 1) * e0),
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => rep.unavailable(e),
    });

    let rep = BoundReport::new("sally-rhs", "bar_e1(I) - e0(I) - e1(J) + length(R/bar_I) >= 0", Relation::AtLeast)
        .hyp("R regular (polynomial ring)", r.is_polynomial_ring())
        .hyp("I monomial", i.is_monomial())
        .hyp("J parameter ideal", candidate.as_ref().map(|(j, _)| j.gens().len() == d && j.is_m_primary()).unwrap_or(false))
        .val("bar_e1", text(&closure.as_ref().map(|c| c.0.e1())))
        .val("e0", e0)
        .val("e1(J)", text(&e1_j))
        .val("length(R/bar_I)", text(&closure.as_ref().map(|c| c.1)));
    out.push(match (&closure, &e1_j) {
        (Ok((c, lb)), Ok(ej)) => rep.decide(c.e1() - e0 - ej + *lb as i128, 0),
        (Err(e), _) | (_, Err(e)) => rep.unavailable(e),
    });

    // comparison of the two extended degrees
    let nil = q(nilpotency_index(i));
    let rep = BoundReport::new(
        "hdeg-comparison",
        "hdeg_I(R) <= s^d deg(R) + s^(d-1) (hdeg(R) - deg(R)), s the nilpotency index of R/I",
        Relation::AtMost,
    )
    .val("s", text(&nil))
    .val("hdeg_I(R)", text(&hdeg_i.as_ref().map(|h| h.value())))
    .val("hdeg(R)", text(&hdeg_plain.as_ref().map(|h| h.value())));
    out.push(match (&nil, &hdeg_i, &hdeg_plain) {
        (Ok(s), Ok(hi), Ok(h)) => {
            let s = *s as i128;
            let top = s.pow(d as u32) * h.base() + if d >= 1 { s.pow(d as u32 - 1) * (h.value() - h.base()) } else { 0 };
            rep.decide(hi.value(), top)
        }
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => rep.unavailable(e),
    });
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjectureStatus {
    Consistent,
    Inconsistent,
    Inapplicable,
}

impl ConjectureStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ConjectureStatus::Consistent => "consistent",
            ConjectureStatus::Inconsistent => "inconsistent",
            ConjectureStatus::Inapplicable => "inapplicable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureVerdict {
    pub id: u8,
    pub instance: String,
    pub evidence: Vec<(String, String)>,
    pub verdict: ConjectureStatus,
}

impl ConjectureVerdict {
    fn new(id: u8, instance: String) -> Self {
        ConjectureVerdict { id, instance, evidence: Vec::new(), verdict: ConjectureStatus::Inapplicable }
    }
    fn ev(mut self, k: &str, v: impl ToString) -> Self {
        self.evidence.push((k.into(), v.to_string()));
        self
    }
}

fn describe<F: Field>(i: &RingIdeal<F>) -> String {
    format!("R = S/({}), I = ({})", i.ring().defining_generators().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "), i.to_strings().join(", "))
}

/// `e_1(J) < 0` exactly when `R` is not Cohen–Macaulay, for parameter ideals of unmixed rings.
pub fn conjecture1_check<F: Field>(j: &RingIdeal<F>, flags: InstanceFlags, opts: SamuelOptions) -> Result<ConjectureVerdict> {
    let r = j.ring();
    if j.gens().len() != r.dim() || !j.is_m_primary() {
        return Err(AlgebraError::Precondition(format!("{j} is not a parameter ideal")));
    }
    let e1 = ideal_coefficients(j, opts)?.e1();
    let profile = CohomologyProfile::of(&ModulePresentation::of_ring(r), opts.exec)?;
    let cm = profile.is_cm();
    let mut v = ConjectureVerdict::new(1, describe(j))
        .ev("e1", e1)
        .ev("cohen-macaulay", cm)
        .ev("domain", flags.domain)
        .ev("unmixed", flags.unmixed);
    // an unmixed ring of positive dimension has no 𝔪-torsion
    let torsion = profile.length(0) != CohomologyLength::Finite(0);
    if (flags.domain || flags.unmixed) && r.dim() > 0 && torsion {
        return Ok(v.ev("declared flags", "contradicted by nonzero H0"));
    }
    if flags.domain || flags.unmixed {
        v.verdict = if (e1 < 0) == !cm { ConjectureStatus::Consistent } else { ConjectureStatus::Inconsistent };
    }
    Ok(v)
}

/// `ē_1(I) ≥ 0`, where the closure filtration is computable.
pub fn conjecture2_check<F: Field>(i: &RingIdeal<F>, opts: SamuelOptions) -> Result<ConjectureVerdict> {
    let mut v = ConjectureVerdict::new(2, describe(i));
    if !(i.ring().is_polynomial_ring() && i.is_monomial()) {
        return Ok(v.ev("bar_e1", "unavailable"));
    }
    let (c, _) = closure_data(i, opts)?;
    v = v.ev("bar_e1", c.e1()).ev("cohen-macaulay", true);
    v.verdict = if c.e1() >= 0 { ConjectureStatus::Consistent } else { ConjectureStatus::Inconsistent };
    Ok(v)
}

/// Lower bound `e_0 - hdeg_I(R) ≤ e_1(A)` for the adic (and closure, when computable) filtration;
/// the upper bound only where the closure coefficient is available.
pub fn conjecture3_check<F: Field>(i: &RingIdeal<F>, opts: SuiteOptions) -> Result<ConjectureVerdict> {
    let r = i.ring();
    let coeffs = ideal_coefficients(i, opts.samuel)?;
    let mut v = ConjectureVerdict::new(3, describe(i)).ev("e0", coeffs.e0()).ev("e1(I)", coeffs.e1());
    if !standard_graded(r) {
        return Ok(v.ev("lower bound", "unavailable: ring is not standard graded"));
    }
    let hi = hdeg_rel(&ModulePresentation::of_ring(r), i, opts.samuel)?.value();
    let lower = coeffs.e0() - hi;
    v = v.ev("f_l = e0 - hdeg_I", lower);
    let mut ok = coeffs.e1() >= lower;
    if r.is_polynomial_ring() && i.is_monomial() {
        let (c, _) = closure_data(i, opts.samuel)?;
        let (j, _) = minimal_reduction_candidate(i, opts.seed, opts.budget, opts.samuel)?;
        let ej = ideal_coefficients(&j, opts.samuel)?.e1();
        let upper = ej + (r.dim() as i128 - 1) * coeffs.e0();
        v = v.ev("bar_e1", c.e1()).ev("f_u = e1(J) + (d - 1) e0", upper);
        ok &= c.e1() >= lower && c.e1() <= upper && coeffs.e1() <= upper;
    } else {
        v = v.ev("f_u", "unavailable outside the monomial closure case");
    }
    v.verdict = if ok { ConjectureStatus::Consistent } else { ConjectureStatus::Inconsistent };
    Ok(v)
}

/// `e_1` of independent minimal-reduction candidates of one ideal.
#[derive(Debug, Clone)]
pub struct ReductionExperiment {
    pub trials: Vec<std::result::Result<(Vec<String>, i128, u32), String>>,
    pub distinct: Vec<i128>,
    pub failures: usize,
}

impl ReductionExperiment {
    pub fn agree(&self) -> bool {
        self.distinct.len() <= 1
    }
}

pub fn reduction_e1_experiment<F: Field>(
    i: &RingIdeal<F>,
    trials: usize,
    seed: u64,
    opts: SamuelOptions,
) -> Result<ReductionExperiment> {
    if !i.is_m_primary() {
        return Err(AlgebraError::Precondition(format!("ideal {i} is not primary to the maximal ideal")));
    }
    let results: Vec<std::result::Result<(Vec<String>, i128, u32), String>> = opts.exec.map_range(trials, |t| {
        let (j, retries) =
            minimal_reduction_candidate(i, seed.wrapping_add(t as u64), DEFAULT_RETRY_BUDGET, opts).map_err(|e| e.to_string())?;
        let e1 = ideal_coefficients(&j, opts).map_err(|e| e.to_string())?.e1();
        Ok((j.to_strings(), e1, retries))
    });
    let mut distinct: Vec<i128> = results.iter().filter_map(|r| r.as_ref().ok().map(|x| x.1)).collect();
    distinct.sort_unstable();
    distinct.dedup();
    let failures = results.iter().filter(|r| r.is_err()).count();
    Ok(ReductionExperiment { trials: results, distinct, failures })
}

/// Conjecture 4 as a verdict over one experiment.
pub fn conjecture4_check<F: Field>(i: &RingIdeal<F>, trials: usize, seed: u64, opts: SamuelOptions) -> Result<ConjectureVerdict> {
    let exp = reduction_e1_experiment(i, trials, seed, opts)?;
    let mut v = ConjectureVerdict::new(4, describe(i))
        .ev("trials", trials)
        .ev("e1 values", format!("{:?}", exp.distinct))
        .ev("genericity failures", exp.failures);
    if !exp.distinct.is_empty() {
        v.verdict = if exp.agree() { ConjectureStatus::Consistent } else { ConjectureStatus::Inconsistent };
    }
    Ok(v)
}
