//! Worked examples as ready-made rings, ideals and expected invariants.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use chernlab_core::hilbert::ideal_coefficients;
use chernlab_core::{
    hdeg, hdeg_rel, AlgebraError, CohomologyLength, CohomologyProfile, Field, InstanceFlags, ModulePresentation,
    Monomial, PolyRing, PresentedRef, PresentedRing, Result, RingIdeal, SamuelOptions,
};

use crate::dsl::{Command, FieldChoice, IdealDecl, RingDecl, SessionScript, Statement};

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    /// Stated in the literature the instance is taken from.
    Published,
    /// Worked out independently and re-derived by the engine.
    Oracle,
}

impl Origin {
    pub fn as_str(self) -> &'static str {
        match self {
            Origin::Published => "published",
            Origin::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quantity {
    /// `e_index` of the adic filtration of the named ideal.
    Coefficient { index: usize, ideal: String },
    Dimension,
    Depth,
    /// `λ(H^i_𝔪(R))`; infinite lengths never match.
    LocalCohomology(usize),
    Hdeg,
    HdegRelative(String),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Coefficient { index, ideal } => write!(f, "e{index}({ideal})"),
            Quantity::Dimension => write!(f, "dim"),
            Quantity::Depth => write!(f, "depth"),
            Quantity::LocalCohomology(i) => write!(f, "length H^{i}"),
            Quantity::Hdeg => write!(f, "hdeg"),
            Quantity::HdegRelative(i) => write!(f, "hdeg_{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Equal(i128),
    Below(i128),
}

impl Target {
    pub fn accepts(self, v: i128) -> bool {
        match self {
            Target::Equal(t) => v == t,
            Target::Below(t) => v < t,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Equal(t) => write!(f, "{t}"),
            Target::Below(t) => write!(f, "< {t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectation {
    pub quantity: Quantity,
    pub target: Target,
    pub origin: Origin,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectationCheck {
    pub expectation: Expectation,
    /// `None` for an infinite local cohomology length.
    pub computed: Option<i128>,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct NamedIdeal<F: Field> {
    pub name: String,
    pub ideal: RingIdeal<F>,
    /// Generated by a system of parameters.
    pub parameter: bool,
}

#[derive(Debug, Clone)]
pub struct LabInstance<F: Field> {
    pub name: String,
    pub ring: PresentedRef<F>,
    pub ideals: Vec<NamedIdeal<F>>,
    pub flags: InstanceFlags,
    pub generalized_cm: Option<bool>,
    pub expectations: Vec<Expectation>,
    pub expensive: bool,
    pub note: Option<String>,
}

fn expect(quantity: Quantity, target: Target, origin: Origin) -> Expectation {
    Expectation { quantity, target, origin }
}

fn coefficient(index: usize, ideal: &str) -> Quantity {
    Quantity::Coefficient { index, ideal: ideal.into() }
}

fn named<F: Field>(name: &str, ideal: RingIdeal<F>, parameter: bool) -> NamedIdeal<F> {
    NamedIdeal { name: name.into(), ideal, parameter }
}

fn presented<F: Field>(field: F, names: &[&str], rels: &[&str]) -> Result<PresentedRef<F>> {
    let s = PolyRing::new(field, names)?;
    let rels = rels.iter().map(|t| s.parse(t)).collect::<Result<Vec<_>>>()?;
    PresentedRing::new(&s, &rels)
}

impl<F: Field> LabInstance<F> {
    pub fn ideal(&self, name: &str) -> Option<&RingIdeal<F>> {
        self.ideals.iter().find(|i| i.name == name).map(|i| &i.ideal)
    }

    /// The first parameter ideal, which the bound checks run against.
    pub fn parameter_ideal(&self) -> Option<&NamedIdeal<F>> {
        self.ideals.iter().find(|i| i.parameter)
    }

    /// Recompute every expected value.
    pub fn verify(&self, opts: SamuelOptions) -> Result<Vec<ExpectationCheck>> {
        let m = ModulePresentation::of_ring(&self.ring);
        let mut profile: Option<CohomologyProfile> = None;
        let mut out = Vec::new();
        for e in &self.expectations {
            let computed = match &e.quantity {
                Quantity::Coefficient { index, ideal } => {
                    let i = self.ideal(ideal).ok_or_else(|| AlgebraError::Domain(format!("no ideal {ideal}")))?;
                    Some(ideal_coefficients(i, opts)?.get(*index))
                }
                Quantity::Dimension => Some(self.ring.dim() as i128),
                Quantity::Hdeg => Some(hdeg(&m, opts.exec)?.value()),
                Quantity::HdegRelative(ideal) => {
                    let i = self.ideal(ideal).ok_or_else(|| AlgebraError::Domain(format!("no ideal {ideal}")))?;
                    Some(hdeg_rel(&m, i, opts)?.value())
                }
                Quantity::Depth | Quantity::LocalCohomology(_) => {
                    if profile.is_none() {
                        profile = Some(CohomologyProfile::of(&m, opts.exec)?);
                    }
                    let p = profile.as_ref().expect("profile computed");
                    match e.quantity {
                        Quantity::Depth => p.depth.map(|d| d as i128),
                        Quantity::LocalCohomology(i) => match p.length(i) {
                            CohomologyLength::Finite(l) => Some(l as i128),
                            CohomologyLength::Infinite => None,
                        },
                        _ => unreachable!(),
                    }
                }
            };
            let holds = computed.is_some_and(|v| e.target.accepts(v));
            out.push(ExpectationCheck { expectation: e.clone(), computed, holds });
        }
        Ok(out)
    }

    /// A script that declares the instance and runs the standard battery on it.
    pub fn to_script(&self, field: FieldChoice) -> SessionScript {
        let s = self.ring.ambient();
        let ring = self.name.replace('-', "_");
        let weights = if s.is_standard_graded() { None } else { Some(s.weights().to_vec()) };
        let mut statements = vec![Statement::Ring(RingDecl {
            name: ring.clone(),
            vars: s.names().to_vec(),
            relations: self.ring.defining_generators().iter().map(|g| g.to_string()).collect(),
            weights,
        })];
        for i in &self.ideals {
            statements.push(Statement::Ideal(IdealDecl {
                name: i.name.clone(),
                ring: ring.clone(),
                gens: i.ideal.to_strings(),
            }));
        }
        for i in &self.ideals {
            statements.push(Statement::Command(Command::Coeffs { ring: ring.clone(), ideal: i.name.clone(), maxn: None }));
        }
        statements.push(Statement::Command(Command::Cohomology { ring: ring.clone() }));
        statements.push(Statement::Command(Command::Hdeg { ring: ring.clone(), rel: None }));
        if let Some(j) = self.parameter_ideal() {
            let (ring, ideal) = (ring.clone(), j.name.clone());
            statements.push(Statement::Command(Command::Hdeg { ring: ring.clone(), rel: Some(ideal.clone()) }));
            statements.push(Statement::Command(Command::Koszul { ring: ring.clone(), ideal: ideal.clone() }));
            statements.push(Statement::Command(Command::Bounds { ring: ring.clone(), ideal: ideal.clone(), flags: self.flags }));
            let flags = InstanceFlags { buchsbaum: false, ..self.flags };
            statements.push(Statement::Command(Command::Conjecture1 { ring, ideal, flags }));
        }
        SessionScript { field: Some(field), statements }
    }
}

/// `k[x,y,z,u,v]/(u², uv, v², yu − xv)`, the idealization of `k[x,y,z]` by a rank-one
/// module, with `J = (x, y, zⁿ)`.
pub fn build_idealization_family<F: Field>(field: F, n: u32) -> Result<LabInstance<F>> {
    if n == 0 {
        return Err(AlgebraError::Domain("the family starts at n = 1".into()));
    }
    let ring = presented(field, &["x", "y", "z", "u", "v"], &["u^2", "u*v", "v^2", "y*u - x*v"])?;
    let j = ring.parse_ideal(&["x", "y", &format!("z^{n}")])?;
    let n = n as i128;
    Ok(LabInstance {
        name: format!("idealization-{n}"),
        ideals: vec![named("J", j, true), named("m", ring.maximal_ideal(), false)],
        ring,
        flags: InstanceFlags { unmixed: true, ..InstanceFlags::default() },
        generalized_cm: Some(false),
        expectations: vec![
            expect(coefficient(1, "J"), Target::Equal(-n), Origin::Published),
            expect(coefficient(0, "J"), Target::Equal(2 * n), Origin::Oracle),
            expect(Quantity::HdegRelative("J".into()), Target::Equal(3 * n), Origin::Oracle),
            expect(Quantity::Dimension, Target::Equal(3), Origin::Oracle),
            expect(Quantity::Depth, Target::Equal(2), Origin::Oracle),
        ],
        expensive: false,
        note: None,
    })
}

/// `k[x,y,z]/(xz, yz, z²)`: a line of embedded torsion over the plane.
pub fn build_z_ring<F: Field>(field: F) -> Result<LabInstance<F>> {
    let ring = presented(field, &["x", "y", "z"], &["x*z", "y*z", "z^2"])?;
    let j = ring.parse_ideal(&["x", "y"])?;
    Ok(LabInstance {
        name: "z-ring".into(),
        ideals: vec![named("J", j, true), named("m", ring.maximal_ideal(), false)],
        ring,
        flags: InstanceFlags::default(),
        generalized_cm: Some(true),
        expectations: vec![
            expect(coefficient(1, "m"), Target::Equal(0), Origin::Published),
            expect(Quantity::LocalCohomology(0), Target::Equal(1), Origin::Oracle),
            expect(Quantity::LocalCohomology(1), Target::Equal(0), Origin::Oracle),
            expect(Quantity::Hdeg, Target::Equal(2), Origin::Oracle),
            expect(coefficient(1, "J"), Target::Equal(0), Origin::Oracle),
            expect(coefficient(2, "J"), Target::Equal(1), Origin::Oracle),
        ],
        expensive: false,
        note: Some("not unmixed, so the e1 sign conjecture does not apply".into()),
    })
}

/// `k + (x,y)k(i)[x,y]` presented as the image of `a,b,c,d ↦ x,y,sx,sy` in `k[x,y,s]/(s²+1)`.
pub fn build_buchsbaum_rc<F: Field>(field: F) -> Result<LabInstance<F>> {
    let target = PolyRing::new(field.clone(), &["x", "y", "s"])?;
    let source = PolyRing::new(field, &["a", "b", "c", "d"])?;
    let images = ["x", "y", "s*x", "s*y"].iter().map(|t| target.parse(t)).collect::<Result<Vec<_>>>()?;
    let ring = PresentedRing::from_ring_map(&source, &target, &[target.parse("s^2 + 1")?], &images)?;
    let j = ring.parse_ideal(&["a", "b"])?;
    Ok(LabInstance {
        name: "buchsbaum-rc".into(),
        ideals: vec![named("J", j, true), named("m", ring.maximal_ideal(), false)],
        ring,
        flags: InstanceFlags { buchsbaum: true, domain: true, unmixed: true },
        generalized_cm: Some(true),
        expectations: vec![
            expect(coefficient(1, "J"), Target::Equal(-1), Origin::Published),
            expect(coefficient(1, "m"), Target::Equal(0), Origin::Published),
            expect(Quantity::LocalCohomology(1), Target::Equal(1), Origin::Oracle),
        ],
        expensive: false,
        note: None,
    })
}

/// The Rees algebra `A[𝔪t]` of `A = k[x,y,z]/(x³+y³+z³)`, with a seeded random parameter ideal.
pub fn build_rees_cubic<F: Field>(field: F, seed: u64) -> Result<LabInstance<F>> {
    let target = PolyRing::new(field.clone(), &["x", "y", "z", "t"])?;
    let source = PolyRing::new(field.clone(), &["x", "y", "z", "p", "q", "r"])?;
    let images = ["x", "y", "z", "x*t", "y*t", "z*t"].iter().map(|t| target.parse(t)).collect::<Result<Vec<_>>>()?;
    let ring = PresentedRing::from_ring_map(&source, &target, &[target.parse("x^3 + y^3 + z^3")?], &images)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = source.nvars();
    let mut draw = || {
        let terms = (0..n).map(|v| (field.random_nonzero(&mut rng), Monomial::var_power(n, v, 1))).collect();
        source.from_terms(terms)
    };
    let forms: Vec<_> = (0..ring.dim()).map(|_| draw()).collect();
    let j = ring.ideal(&forms)?;
    if !j.is_m_primary() {
        return Err(AlgebraError::Genericity("random linear forms are not a system of parameters".into()));
    }
    Ok(LabInstance {
        name: "rees-cubic".into(),
        ideals: vec![named("J", j, true)],
        ring,
        flags: InstanceFlags { domain: true, unmixed: true, ..InstanceFlags::default() },
        generalized_cm: None,
        expectations: vec![
            expect(Quantity::Dimension, Target::Equal(3), Origin::Oracle),
            expect(Quantity::Depth, Target::Below(3), Origin::Published),
            expect(coefficient(1, "J"), Target::Below(0), Origin::Oracle),
        ],
        expensive: true,
        note: Some(
            "graded model of the local ring at the irrelevant ideal; the random parameters need not contain a prime superficial element"
                .into(),
        ),
    })
}

/// Names accepted by [`build_named`].
pub const INSTANCE_NAMES: [&str; 7] =
    ["idealization-1", "idealization-2", "idealization-3", "idealization-4", "z-ring", "buchsbaum-rc", "rees-cubic"];

pub fn build_named<F: Field>(field: F, name: &str, seed: u64) -> Result<LabInstance<F>> {
    if let Some(n) = name.strip_prefix("idealization-") {
        let n: u32 = n.parse().map_err(|_| AlgebraError::Domain(format!("bad family index in {name}")))?;
        return build_idealization_family(field, n);
    }
    match name {
        "z-ring" => build_z_ring(field),
        "buchsbaum-rc" => build_buchsbaum_rc(field),
        "rees-cubic" => build_rees_cubic(field, seed),
        _ => Err(AlgebraError::Domain(format!("unknown instance {name}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chernlab_core::PrimeField;

    #[test]
    fn family_starts_at_one() {
        assert!(matches!(build_idealization_family(PrimeField::default_field(), 0), Err(AlgebraError::Domain(_))));
    }

    #[test]
    fn idealization_records_dimension() {
        let inst = build_idealization_family(PrimeField::default_field(), 1).unwrap();
        assert_eq!(inst.ring.dim(), 3);
        assert!(inst.flags.unmixed && !inst.flags.domain);
    }

    #[test]
    fn z_ring_checks_out() {
        let inst = build_z_ring(PrimeField::default_field()).unwrap();
        let checks = inst.verify(SamuelOptions::default()).unwrap();
        assert_eq!(checks.len(), 6);
        assert!(checks.iter().all(|c| c.holds), "{checks:?}");
    }

    #[test]
    fn constructors_are_deterministic() {
        let a = build_buchsbaum_rc(PrimeField::default_field()).unwrap();
        let b = build_buchsbaum_rc(PrimeField::default_field()).unwrap();
        assert_eq!(a.ring.defining_generators(), b.ring.defining_generators());
        assert_eq!(a.ring.dim(), 2);
    }
}
