//! Executing a parsed script against the engine.

use std::collections::HashMap;

use chernlab_core::bounds::{conjecture1_check, conjecture2_check, conjecture3_check, d_sequence_order, reduction_e1_experiment};
use chernlab_core::hilbert::{hilbert_samuel_module, ideal_coefficients, DEFAULT_MAX_N};
use chernlab_core::homological::koszul_homology_lengths;
use chernlab_core::{
    bound_suite, closure_filtration, hdeg, hdeg_rel, monomial_integral_closure, tracking_compare, AlgebraError,
    CohomologyLength, CohomologyProfile, ConjectureStatus, ConjectureVerdict, Execution, Field, GoodFiltration,
    HilbertCoefficients, ModulePresentation, MonomialOrder, PolyRing, PresentedRef, PresentedRing, PrimeField,
    Rationals, RingIdeal, SamuelOptions, SuiteOptions,
};

use crate::dsl::{Command, FieldChoice, FiltrationSpec, RingDecl, SessionScript, Statement};
use crate::instances::{build_named, LabInstance};
use crate::report::{InstanceReport, ReportBundle, ResultEntry, Table};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRIALS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: u64,
    pub maxdeg: Option<u32>,
    /// Overrides the script's `field` line.
    pub field: Option<FieldChoice>,
    pub include_expensive: bool,
    pub exec: Execution,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: DEFAULT_SEED, maxdeg: None, field: None, include_expensive: false, exec: Execution::default() }
    }
}

/// Session outcome, ordered by severity; the worst one decides the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    Precondition,
    Resource,
    Parse,
    Internal,
    Falsified,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Internal => 1,
            Status::Parse => 2,
            Status::Precondition => 3,
            Status::Resource => 4,
            Status::Falsified => 5,
        }
    }

    pub fn of_error(e: &AlgebraError) -> Status {
        match e {
            AlgebraError::Context(_) | AlgebraError::Domain(_) | AlgebraError::Precondition(_) => Status::Precondition,
            AlgebraError::Resource(_) | AlgebraError::Stabilization(_) | AlgebraError::Genericity(_) => Status::Resource,
            AlgebraError::Parse { .. } => Status::Parse,
            AlgebraError::Internal(_) => Status::Internal,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Precondition => "precondition",
            Status::Resource => "resource",
            Status::Parse => "parse",
            Status::Internal => "internal",
            Status::Falsified => "falsification",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SessionOutcome {
    pub bundle: ReportBundle,
    pub tables: Vec<Table>,
    pub status: Status,
}

impl SessionOutcome {
    pub fn exit_code(&self) -> i32 {
        self.status.code()
    }
}

/// Run every statement of `script` in order.
pub fn run_session(script: &SessionScript, opts: &RunOptions) -> SessionOutcome {
    match opts.field.or(script.field).unwrap_or_default() {
        FieldChoice::Prime(p) => {
            let field = PrimeField::new(p).expect("field choices are validated when parsed");
            Session::new(field, opts).run(script)
        }
        FieldChoice::Rationals => Session::new(Rationals, opts).run(script),
    }
}

/// Build a lab instance, run its standard script and check its expected values.
pub fn run_demo(name: &str, opts: &RunOptions) -> Result<SessionOutcome, AlgebraError> {
    let default_field = match name {
        "buchsbaum-rc" | "rees-cubic" => FieldChoice::Rationals,
        _ => FieldChoice::default(),
    };
    if name == "rees-cubic" && !opts.include_expensive {
        return Err(AlgebraError::Precondition("rees-cubic is expensive; pass --include-expensive".into()));
    }
    match opts.field.unwrap_or(default_field) {
        FieldChoice::Prime(p) => {
            let inst = build_named(PrimeField::new(p)?, name, opts.seed)?;
            Ok(run_instance(&inst, FieldChoice::Prime(p), opts))
        }
        FieldChoice::Rationals => Ok(run_instance(&build_named(Rationals, name, opts.seed)?, FieldChoice::Rationals, opts)),
    }
}

pub fn run_instance<F: Field>(inst: &LabInstance<F>, field: FieldChoice, opts: &RunOptions) -> SessionOutcome {
    let script = inst.to_script(field);
    let mut out = run_session(&script, &RunOptions { field: Some(field), ..*opts });
    let samuel = SamuelOptions { exec: opts.exec, ..SamuelOptions::default() };
    let mut entries = Vec::new();
    match inst.verify(samuel) {
        Ok(checks) => {
            for c in checks {
                let e = &c.expectation;
                let computed = c.computed.map(|v| v.to_string()).unwrap_or_else(|| "infinite".into());
                entries.push(
                    ResultEntry::new("expectation")
                        .input("quantity", &e.quantity)
                        .value("expected", e.target)
                        .value("computed", computed)
                        .provenance(e.origin.as_str())
                        .verdict(if c.holds { "holds" } else { "fails" }),
                );
                if !c.holds {
                    out.status = out.status.max(Status::Falsified);
                }
            }
        }
        Err(e) => {
            out.status = out.status.max(Status::of_error(&e));
            entries.push(error_entry("expectations", &e));
        }
    }
    if let Some(note) = &inst.note {
        entries.push(ResultEntry::new("note").value("text", note));
    }
    if let Some(first) = out.bundle.instances.first_mut() {
        first.name = inst.name.clone();
        first.results.extend(entries);
    }
    out
}

fn error_entry(command: &str, e: &AlgebraError) -> ResultEntry {
    ResultEntry::new("error")
        .input("command", command)
        .value("class", Status::of_error(e).label())
        .value("message", e)
        .verdict("error")
}

fn coefficient_values(mut entry: ResultEntry, prefix: &str, c: &HilbertCoefficients) -> ResultEntry {
    for (i, e) in c.e.iter().enumerate() {
        entry = entry.value(&format!("{prefix}{i}"), e);
    }
    entry.value("dim", c.dim).value("stabilization", c.stabilization)
}

fn conjecture_entry(v: &ConjectureVerdict) -> ResultEntry {
    let mut e = ResultEntry::new(&format!("conjecture{}", v.id)).input("instance", &v.instance);
    for (k, val) in &v.evidence {
        e = e.value(k, val);
    }
    e.verdict(v.verdict.as_str())
}

type Outcome<T> = Result<T, AlgebraError>;

struct Session<'a, F: Field> {
    field: F,
    opts: &'a RunOptions,
    rings: HashMap<String, Outcome<PresentedRef<F>>>,
    ideals: HashMap<String, Outcome<RingIdeal<F>>>,
    bundle: ReportBundle,
    tables: Vec<Table>,
    status: Status,
}

impl<'a, F: Field> Session<'a, F> {
    fn new(field: F, opts: &'a RunOptions) -> Self {
        let bundle = ReportBundle::new(opts.seed, &field.descriptor().to_string());
        Session { field, opts, rings: HashMap::new(), ideals: HashMap::new(), bundle, tables: Vec::new(), status: Status::Ok }
    }

    fn samuel(&self) -> SamuelOptions {
        SamuelOptions { exec: self.opts.exec, ..SamuelOptions::default() }
    }

    fn run(mut self, script: &SessionScript) -> SessionOutcome {
        for (idx, s) in script.statements.iter().enumerate() {
            match s {
                Statement::Ring(decl) => self.declare_ring(decl),
                Statement::Ideal(decl) => {
                    let ideal = self.ring(&decl.ring).and_then(|r| {
                        let gens = decl.gens.iter().map(|g| r.parse(g)).collect::<Outcome<Vec<_>>>()?;
                        r.ideal(&gens)
                    });
                    if let Err(e) = &ideal {
                        self.record(&decl.ring, error_entry(&format!("ideal {}", decl.name), e));
                    }
                    self.ideals.insert(decl.name.clone(), ideal);
                }
                Statement::Command(cmd) => {
                    let ring = match cmd {
                        Command::Closure { ideal } => script
                            .statements
                            .iter()
                            .find_map(|s| match s {
                                Statement::Ideal(d) if &d.name == ideal => Some(d.ring.clone()),
                                _ => None,
                            })
                            .unwrap_or_default(),
                        Command::Coeffs { ring, .. }
                        | Command::Hdeg { ring, .. }
                        | Command::Koszul { ring, .. }
                        | Command::Bounds { ring, .. }
                        | Command::Conjecture1 { ring, .. }
                        | Command::Conjecture2 { ring, .. }
                        | Command::Conjecture3 { ring, .. }
                        | Command::Reductions { ring, .. }
                        | Command::Compare { ring, .. }
                        | Command::Cohomology { ring } => ring.clone(),
                    };
                    match self.execute(idx, &ring, cmd) {
                        Ok(entries) => {
                            for e in entries {
                                let e = e.input("command", cmd);
                                self.record(&ring, e);
                            }
                        }
                        Err(e) => self.record(&ring, error_entry(&cmd.to_string(), &e)),
                    }
                }
            }
        }
        SessionOutcome { bundle: self.bundle, tables: self.tables, status: self.status }
    }

    fn record(&mut self, ring: &str, entry: ResultEntry) {
        let status = match entry.verdict.as_deref() {
            Some("fails") | Some("inconsistent") => Status::Falsified,
            Some("error") => match entry.get("class") {
                Some("precondition") => Status::Precondition,
                Some("resource") => Status::Resource,
                Some("parse") => Status::Parse,
                _ => Status::Internal,
            },
            _ => Status::Ok,
        };
        self.status = self.status.max(status);
        if let Some(inst) = self.bundle.instances.iter_mut().find(|i| i.name == ring) {
            inst.results.push(entry);
        }
    }

    fn declare_ring(&mut self, decl: &RingDecl) {
        let built = (|| {
            let mut s = match &decl.weights {
                Some(w) => {
                    PolyRing::with_order(self.field.clone(), &decl.vars, w.clone(), MonomialOrder::WeightedGrevlex(w.clone()))?
                }
                None => PolyRing::new(self.field.clone(), &decl.vars)?,
            };
            if let Some(d) = self.opts.maxdeg {
                s = s.with_max_degree(d);
            }
            let rels = decl.relations.iter().map(|t| s.parse(t)).collect::<Outcome<Vec<_>>>()?;
            PresentedRing::new(&s, &rels)
        })();
        let description = match &built {
            Ok(r) => r.to_string(),
            Err(_) => format!("poly({}) / ({})", decl.vars.join(", "), decl.relations.join(", ")),
        };
        self.bundle.instances.push(InstanceReport { name: decl.name.clone(), ring: description, results: Vec::new() });
        if let Err(e) = &built {
            self.record(&decl.name, error_entry(&format!("ring {}", decl.name), e));
        }
        self.rings.insert(decl.name.clone(), built);
    }

    fn ring(&self, name: &str) -> Outcome<PresentedRef<F>> {
        match self.rings.get(name) {
            Some(Ok(r)) => Ok(r.clone()),
            Some(Err(e)) => Err(AlgebraError::Precondition(format!("ring {name} is unavailable: {e}"))),
            None => Err(AlgebraError::Precondition(format!("unknown ring {name}"))),
        }
    }

    fn ideal(&self, name: &str) -> Outcome<RingIdeal<F>> {
        match self.ideals.get(name) {
            Some(Ok(i)) => Ok(i.clone()),
            Some(Err(e)) => Err(AlgebraError::Precondition(format!("ideal {name} is unavailable: {e}"))),
            None => Err(AlgebraError::Precondition(format!("unknown ideal {name}"))),
        }
    }

    fn table(&mut self, idx: usize, label: &str, contents: String) {
        self.tables.push(Table { file_name: format!("{idx:03}_{label}.tsv"), contents });
    }

    fn filtration(&self, spec: &FiltrationSpec) -> Outcome<GoodFiltration<F>> {
        let i = self.ideal(spec.ideal())?;
        match spec {
            FiltrationSpec::Adic(_) => Ok(GoodFiltration::adic(i.gens())),
            FiltrationSpec::Closure(_) => closure_filtration(&i),
        }
    }

    fn execute(&mut self, idx: usize, ring_name: &str, cmd: &Command) -> Outcome<Vec<ResultEntry>> {
        let samuel = self.samuel();
        match cmd {
            Command::Coeffs { ring, ideal, maxn } => {
                let i = self.ideal(ideal)?;
                let opts = SamuelOptions { max_n: maxn.unwrap_or(DEFAULT_MAX_N), ..samuel };
                let c = ideal_coefficients(&i, opts)?;
                self.table(idx, &format!("{ring}_{ideal}_coeffs"), c.table.to_tsv());
                Ok(vec![coefficient_values(ResultEntry::new("coeffs").input("ideal", &i), "e", &c)])
            }
            Command::Closure { ideal } => {
                let i = self.ideal(ideal)?;
                let r = i.ring().clone();
                let bar = monomial_integral_closure(&i)?;
                let c = hilbert_samuel_module(&ModulePresentation::of_ring(&r), &closure_filtration(&i)?, samuel)?;
                self.table(idx, &format!("{ring_name}_{ideal}_closure"), c.table.to_tsv());
                let e = ResultEntry::new("closure")
                    .input("ideal", &i)
                    .list("generators", bar.to_strings())
                    .value("colength", r.length(&bar)?);
                Ok(vec![coefficient_values(e, "bar_e", &c)])
            }
            Command::Hdeg { ring, rel } => {
                let r = self.ring(ring)?;
                let m = ModulePresentation::of_ring(&r);
                let (entry, rep) = match rel {
                    None => (ResultEntry::new("hdeg"), hdeg(&m, self.opts.exec)?),
                    Some(j) => {
                        let i = self.ideal(j)?;
                        (ResultEntry::new("hdeg_rel").input("ideal", &i), hdeg_rel(&m, &i, samuel)?)
                    }
                };
                Ok(vec![entry
                    .value("value", rep.value())
                    .value("base", rep.base())
                    .value("nodes", rep.root.size())
                    .value("tree", &rep)])
            }
            Command::Koszul { ideal, .. } => {
                let j = self.ideal(ideal)?;
                let h = koszul_homology_lengths(&j, self.opts.exec)?;
                let c = ideal_coefficients(&j, samuel)?;
                let correction: i128 =
                    h.iter().enumerate().skip(1).map(|(i, &hi)| if i % 2 == 1 { hi as i128 } else { -(hi as i128) }).sum();
                let colength = h[0] as i128;
                let serre = ResultEntry::new("koszul")
                    .input("ideal", &j)
                    .list("h", &h)
                    .value("colength", colength)
                    .value("correction", correction)
                    .value("e0", c.e0())
                    .value("e0 from homology", colength - correction)
                    .verdict(if c.e0() == colength - correction { "holds" } else { "fails" });
                let formula: i128 = h.iter().enumerate().skip(1).map(|(i, &hi)| if i % 2 == 0 { 1 } else { -1 } * i as i128 * hi as i128).sum();
                let order = d_sequence_order(&j)?;
                let certified = order.is_some();
                let verdict = match (certified, formula == c.e1()) {
                    (false, _) => "hypotheses-not-met",
                    (true, true) => "holds",
                    (true, false) => "fails",
                };
                let dseq = ResultEntry::new("d-sequence")
                    .input("ideal", &j)
                    .value("certified", certified)
                    .list("order", order.iter().flatten().map(|&a| &j.gens()[a]))
                    .value("e1", c.e1())
                    .value("e1 from homology", formula)
                    .verdict(verdict);
                Ok(vec![serre, dseq])
            }
            Command::Bounds { ideal, flags, .. } => {
                let i = self.ideal(ideal)?;
                let suite = SuiteOptions { seed: self.opts.seed, samuel, ..SuiteOptions::default() };
                let reports = bound_suite(&i, *flags, suite)?;
                Ok(reports
                    .iter()
                    .map(|b| {
                        let mut e = ResultEntry::new("bound")
                            .input("name", &b.name)
                            .input("statement", &b.statement)
                            .value("relation", b.relation.symbol())
                            .list("hypotheses", b.hypotheses.iter().map(|(h, ok)| format!("{h}: {ok}")));
                        if let Some(l) = b.lhs {
                            e = e.value("lhs", l);
                        }
                        if let Some(r) = b.rhs {
                            e = e.value("rhs", r);
                        }
                        for (k, v) in &b.values {
                            e = e.value(k, v);
                        }
                        if let Some(n) = &b.note {
                            e = e.value("note", n);
                        }
                        e.verdict(b.verdict.as_str())
                    })
                    .collect())
            }
            Command::Conjecture1 { ideal, flags, .. } => {
                Ok(vec![conjecture_entry(&conjecture1_check(&self.ideal(ideal)?, *flags, samuel)?)])
            }
            Command::Conjecture2 { ideal, .. } => Ok(vec![conjecture_entry(&conjecture2_check(&self.ideal(ideal)?, samuel)?)]),
            Command::Conjecture3 { ideal, .. } => {
                let suite = SuiteOptions { seed: self.opts.seed, samuel, ..SuiteOptions::default() };
                Ok(vec![conjecture_entry(&conjecture3_check(&self.ideal(ideal)?, suite)?)])
            }
            Command::Reductions { ideal, trials, seed, .. } => {
                let i = self.ideal(ideal)?;
                let trials = trials.unwrap_or(DEFAULT_TRIALS);
                let seed = seed.unwrap_or(self.opts.seed);
                let exp = reduction_e1_experiment(&i, trials, seed, samuel)?;
                let status = if exp.distinct.is_empty() {
                    ConjectureStatus::Inapplicable
                } else if exp.agree() {
                    ConjectureStatus::Consistent
                } else {
                    ConjectureStatus::Inconsistent
                };
                let outcomes = exp.trials.iter().map(|t| match t {
                    Ok((_, e1, _)) => e1.to_string(),
                    Err(msg) => format!("error: {msg}"),
                });
                let retries: u32 = exp.trials.iter().filter_map(|t| t.as_ref().ok().map(|x| x.2)).sum();
                Ok(vec![ResultEntry::new("conjecture4")
                    .input("ideal", &i)
                    .input("trials", trials)
                    .input("seed", seed)
                    .list("e1 per trial", outcomes)
                    .list("distinct e1", &exp.distinct)
                    .value("failures", exp.failures)
                    .value("rejected draws", retries)
                    .verdict(status.as_str())])
            }
            Command::Compare { ring, lower, upper } => {
                let r = self.ring(ring)?;
                let (a, b) = (self.filtration(lower)?, self.filtration(upper)?);
                let t = tracking_compare(&r, &a, &b, samuel)?;
                self.table(idx, &format!("{ring}_lower"), t.lower.table.to_tsv());
                self.table(idx, &format!("{ring}_upper"), t.upper.table.to_tsv());
                Ok(vec![ResultEntry::new("compare")
                    .input("lower", lower)
                    .input("upper", upper)
                    .list("lower e", &t.lower.e)
                    .list("upper e", &t.upper.e)
                    .value("checked up to", t.checked_upto)
                    .value("e0 equal", t.e0_equal)
                    .value("chain bound", t.chain_bound)
                    .verdict(if t.e1_monotone { "holds" } else { "fails" })])
            }
            Command::Cohomology { ring } => {
                let r = self.ring(ring)?;
                let p = CohomologyProfile::of(&ModulePresentation::of_ring(&r), self.opts.exec)?;
                let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_else(|| "none".into());
                Ok(vec![ResultEntry::new("cohomology")
                    .list("lengths", p.lengths.iter().map(|l| l.to_string()))
                    .value("dim", opt(p.dim))
                    .value("depth", opt(p.depth))
                    .value("projective dimension", opt(p.projective_dimension))
                    .value("cohen-macaulay", p.is_cm())
                    .value("generalized cohen-macaulay", p.is_generalized_cm())
                    .value("T", p.t_invariant().map(|t| t.to_string()).unwrap_or_else(|| CohomologyLength::Infinite.to_string()))])
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    #[test]
    fn empty_script_is_clean() {
        let out = run_session(&SessionScript::default(), &RunOptions::default());
        assert_eq!(out.exit_code(), 0);
        assert!(out.bundle.instances.is_empty());
    }

    #[test]
    fn precondition_errors_are_recorded() {
        let script = parse("ring R = poly(x, y)\nideal J in R = (x)\ncoeffs R J").unwrap();
        let out = run_session(&script, &RunOptions::default());
        assert_eq!(out.exit_code(), 3);
        let e = &out.bundle.instances[0].results[0];
        assert_eq!(e.kind, "error");
        assert_eq!(e.get("class"), Some("precondition"));
    }

    #[test]
    fn field_override_reaches_the_parser_of_the_engine() {
        let script = parse("field QQ\nring R = poly(x)\nideal J in R = (1/2*x)\ncoeffs R J").unwrap();
        let out = run_session(&script, &RunOptions { field: Some(FieldChoice::Prime(32003)), ..RunOptions::default() });
        assert_eq!(out.exit_code(), 2);
        let qq = run_session(&script, &RunOptions::default());
        assert_eq!(qq.exit_code(), 0);
        assert_eq!(qq.bundle.field, "QQ");
    }
}
