//! One PASS/FAIL line per acceptance criterion, each against its time budget.
//!
//! Lines go straight to stdout so they show up without `--nocapture`.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use chernlab_core::bounds::is_d_sequence;
use chernlab_core::closure::integral_closure;
use chernlab_core::hilbert::{hilbert_samuel_module, ideal_coefficients};
use chernlab_core::homological::koszul_homology_lengths;
use chernlab_core::oracle::{generic_depth, macaulay_member, monomials_up_to, newton_member};
use chernlab_core::{
    bound_suite, closure_filtration, hdeg, hdeg_rel, monomial_integral_closure, random_superficial_reduction,
    tracking_compare, CohomologyLength, CohomologyProfile, Execution, Field, GoodFiltration, GroebnerBasis,
    InstanceFlags, ModulePresentation, Monomial, MonomialIdeal, PolyRing, Polynomial, PresentedRef, PresentedRing,
    PrimeField, Rationals, RingIdeal, SamuelOptions, SuiteOptions, Verdict,
};
use chernlab_lab::instances::{build_buchsbaum_rc, build_idealization_family, build_z_ring};

type Outcome = Result<String, String>;

const BUDGET: u32 = 12;

fn opts() -> SamuelOptions {
    SamuelOptions::default()
}

fn exec() -> Execution {
    Execution::default()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

struct Run {
    failed: Vec<u32>,
}

impl Run {
    fn criterion(&mut self, id: u32, what: &str, limit: Duration, body: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let result = body();
        let took = start.elapsed();
        let (pass, detail) = match result {
            Ok(d) if took <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over the {} s budget", limit.as_secs())),
            Err(e) => (false, e),
        };
        if !pass {
            self.failed.push(id);
        }
        let line = format!(
            "criterion {id} {} [{:.1} s / {} s] {what}: {detail}\n",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            limit.as_secs()
        );
        let mut out = std::io::stdout().lock();
        out.write_all(line.as_bytes()).unwrap();
        out.flush().unwrap();
    }
}

fn ring(names: &[&str], rels: &[&str]) -> PresentedRef<PrimeField> {
    let s = PolyRing::new(PrimeField::default_field(), names).unwrap();
    let rels: Vec<_> = rels.iter().map(|t| s.parse(t).unwrap()).collect();
    PresentedRing::new(&s, &rels).unwrap()
}

/// The graded rings the random experiments draw from.
fn lab_rings() -> Vec<(&'static str, PresentedRef<PrimeField>)> {
    vec![
        ("k[x,y]", ring(&["x", "y"], &[])),
        ("cone", ring(&["x", "y", "z"], &["x*y - z^2"])),
        ("z-ring", ring(&["x", "y", "z"], &["x*z", "y*z", "z^2"])),
        ("idealization", ring(&["x", "y", "z", "u", "v"], &["u^2", "u*v", "v^2", "y*u - x*v"])),
        ("two-planes", ring(&["x", "y", "z", "w"], &["x*z", "x*w", "y*z", "y*w"])),
    ]
}

fn random_form<F: Field>(r: &PresentedRing<F>, degree: u32, rng: &mut ChaCha8Rng) -> Polynomial<F> {
    let s = r.ambient();
    let field = s.field();
    let mut terms = Vec::new();
    for m in monomials_up_to(s.nvars(), degree) {
        if m.degree() == degree && rng.gen_bool(0.7) {
            terms.push((field.random_nonzero(rng), m));
        }
    }
    s.from_terms(terms)
}

/// `count` random homogeneous forms of degree 1 or `top` generating a primary ideal to the maximal ideal.
fn random_primary<F: Field>(r: &PresentedRef<F>, count: usize, top: u32, rng: &mut ChaCha8Rng) -> RingIdeal<F> {
    loop {
        let forms: Vec<_> = (0..count).map(|_| random_form(r, rng.gen_range(1..=top), rng)).filter(|f| !f.is_zero()).collect();
        if forms.len() < count {
            continue;
        }
        let i = r.ideal(&forms).unwrap();
        if i.is_m_primary() {
            return i;
        }
    }
}

fn finite(l: CohomologyLength) -> Option<u64> {
    l.finite()
}

fn main_line(m: &ModulePresentation<PrimeField>) -> Result<(i128, i128, u64), String> {
    let whole = hdeg(m, exec()).map_err(err)?.value();
    let torsion = m.h0_length().map_err(err)?;
    let rest = hdeg(&m.modulo_h0().map_err(err)?, exec()).map_err(err)?.value();
    Ok((whole, rest, torsion))
}

fn idealization_family() -> Outcome {
    let mut seen = Vec::new();
    for n in 1..=4u32 {
        let inst = build_idealization_family(PrimeField::default_field(), n).map_err(err)?;
        let j = inst.ideal("J").unwrap();
        let c = ideal_coefficients(j, opts()).map_err(err)?;
        let h = hdeg_rel(&ModulePresentation::of_ring(&inst.ring), j, opts()).map_err(err)?.value();
        let n = n as i128;
        ensure(c.e1() == -n, || format!("n = {n}: e1 = {}", c.e1()))?;
        ensure(c.e0() == 2 * n, || format!("n = {n}: e0 = {}", c.e0()))?;
        ensure(c.e1() == c.e0() - h, || format!("n = {n}: e1 = {} but e0 - hdeg_J = {}", c.e1(), c.e0() - h))?;
        seen.push(format!("n={n}: e0={} e1={} hdeg_J={h}", c.e0(), c.e1()));
    }
    Ok(seen.join("; "))
}

fn z_ring() -> Outcome {
    let inst = build_z_ring(PrimeField::default_field()).map_err(err)?;
    let r = &inst.ring;
    let m = ideal_coefficients(inst.ideal("m").unwrap(), opts()).map_err(err)?;
    ensure(m.e1() == 0, || format!("e1(m) = {}", m.e1()))?;
    let module = ModulePresentation::of_ring(r);
    let p = CohomologyProfile::of(&module, exec()).map_err(err)?;
    ensure(finite(p.length(0)) == Some(1), || format!("H0 = {:?}", p.length(0)))?;
    ensure(finite(p.length(1)) == Some(0), || format!("H1 = {:?}", p.length(1)))?;
    let h = hdeg(&module, exec()).map_err(err)?.value();
    ensure(h == 2, || format!("hdeg = {h}"))?;
    let j = ideal_coefficients(inst.ideal("J").unwrap(), opts()).map_err(err)?;
    ensure(j.e1() == 0 && j.e2() == 1, || format!("e(J) = {:?}", (j.e0(), j.e1(), j.e2())))?;
    // dropping the torsion changes only the last coefficient
    let plane = ring(&["x", "y"], &[]);
    let p2 = ideal_coefficients(&plane.maximal_ideal(), opts()).map_err(err)?;
    let ours = (m.e0(), m.e1(), m.e2());
    let theirs = (p2.e0(), p2.e1(), p2.e2());
    ensure(ours == (1, 0, 1) && theirs == (1, 0, 0), || format!("z-ring {ours:?} vs k[x,y] {theirs:?}"))?;
    Ok(format!("e1(m)=0 H0=1 H1=0 hdeg=2 e(J)=(1,0,1); m-adic {ours:?} vs k[x,y] {theirs:?}"))
}

fn buchsbaum() -> Outcome {
    let inst = build_buchsbaum_rc(Rationals).map_err(err)?;
    let j = inst.ideal("J").unwrap();
    let c = ideal_coefficients(j, opts()).map_err(err)?;
    ensure(c.e1() == -1, || format!("e1(J) = {}", c.e1()))?;
    let reps = bound_suite(j, inst.flags, SuiteOptions::default()).map_err(err)?;
    let g = reps.iter().find(|r| r.name == "generalized-cm-lower").ok_or("no generalized-CM report")?;
    ensure(g.verdict == Verdict::Holds && g.relation.symbol() == "==", || format!("{} {:?}", g.relation.symbol(), g.verdict))?;
    ensure(g.rhs == Some(-1), || format!("-T(R) = {:?}", g.rhs))?;
    let p = CohomologyProfile::of(&ModulePresentation::of_ring(&inst.ring), exec()).map_err(err)?;
    ensure(finite(p.length(1)) == Some(1), || format!("H1 = {:?}", p.length(1)))?;
    Ok("e1(J) = -1 = -length(H1); equality certified".into())
}

struct SerreStats {
    ideals: usize,
    rings: usize,
    certified: usize,
}

fn serre_and_d_sequences() -> Result<SerreStats, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut stats = SerreStats { ideals: 0, rings: 0, certified: 0 };
    for (name, r) in lab_rings() {
        let cm = CohomologyProfile::of(&ModulePresentation::of_ring(&r), exec()).map_err(err)?.is_cm();
        let top = if r.dim() >= 3 { 1 } else { 2 };
        for _ in 0..10 {
            let j = random_primary(&r, r.dim(), top, &mut rng);
            let h = koszul_homology_lengths(&j, exec()).map_err(err)?;
            let c = ideal_coefficients(&j, opts()).map_err(err)?;
            let colength = j.colength().map_err(err)? as i128;
            let correction: i128 = h.iter().enumerate().skip(1).map(|(i, &v)| if i % 2 == 1 { v as i128 } else { -(v as i128) }).sum();
            ensure(c.e0() == colength - correction, || format!("{name} {j}: e0 {} vs {colength} - {correction}", c.e0()))?;
            ensure((correction == 0) == cm && correction >= 0, || format!("{name} {j}: correction {correction}, CM {cm}"))?;
            if is_d_sequence(&j).map_err(err)? {
                stats.certified += 1;
                let alt: i128 = h.iter().enumerate().skip(1).map(|(i, &v)| if i % 2 == 0 { 1 } else { -1 } * i as i128 * v as i128).sum();
                ensure(c.e1() == alt, || format!("{name} {j}: e1 {} vs {alt}", c.e1()))?;
            }
            stats.ideals += 1;
        }
        stats.rings += 1;
    }
    // the idealization parameters, a d-sequence in the order (x, z^n, y)
    for n in 1..=4 {
        let inst = build_idealization_family(PrimeField::default_field(), n).map_err(err)?;
        let j = inst.ideal("J").unwrap();
        if is_d_sequence(j).map_err(err)? {
            let h = koszul_homology_lengths(j, exec()).map_err(err)?;
            let alt: i128 = h.iter().enumerate().skip(1).map(|(i, &v)| if i % 2 == 0 { 1 } else { -1 } * i as i128 * v as i128).sum();
            let e1 = ideal_coefficients(j, opts()).map_err(err)?.e1();
            ensure(e1 == alt, || format!("idealization-{n}: e1 {e1} vs {alt}"))?;
            stats.certified += 1;
        }
    }
    Ok(stats)
}

fn hdeg_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut modules: Vec<(String, ModulePresentation<PrimeField>)> = Vec::new();
    for (name, r) in lab_rings().into_iter().chain([("k[x,y,z]", ring(&["x", "y", "z"], &[]))]) {
        modules.push((name.to_string(), ModulePresentation::of_ring(&r)));
        let j = random_primary(&r, r.dim(), 1, &mut rng);
        modules.push((format!("{name}/({j})"), ModulePresentation::of_quotient(&j)));
        let h = r.parse_ideal(&["x"]).unwrap();
        modules.push((format!("{name}/(x)"), ModulePresentation::of_quotient(&h)));
    }
    let mut calibrated = 0;
    for (name, m) in &modules {
        let (whole, rest, torsion) = main_line(m).map_err(|e| format!("{name}: {e}"))?;
        ensure(whole == rest + torsion as i128, || format!("{name}: hdeg {whole} vs {rest} + {torsion}"))?;
        if CohomologyProfile::of(m, exec()).map_err(err)?.is_cm() {
            ensure(whole == m.degree(), || format!("{name}: CM with hdeg {whole}, deg {}", m.degree()))?;
            calibrated += 1;
        }
    }

    // e1 >= e0 - hdeg_I over every lab ideal
    let mut ideals: Vec<(String, RingIdeal<PrimeField>)> = Vec::new();
    for n in 1..=4 {
        let inst = build_idealization_family(PrimeField::default_field(), n).map_err(err)?;
        for ni in &inst.ideals {
            ideals.push((format!("{} {}", inst.name, ni.name), ni.ideal.clone()));
        }
    }
    let z = build_z_ring(PrimeField::default_field()).map_err(err)?;
    for ni in &z.ideals {
        ideals.push((format!("z-ring {}", ni.name), ni.ideal.clone()));
    }
    let mut monomial = 0;
    for (name, r) in lab_rings() {
        let n = r.nvars().min(3);
        for _ in 0..5 {
            let mut gens: Vec<Monomial> = (0..n).map(|v| Monomial::var_power(r.nvars(), v, rng.gen_range(1..=3))).collect();
            for _ in 0..rng.gen_range(0..3) {
                let e: Vec<u32> = (0..r.nvars()).map(|v| if v < n { rng.gen_range(0..3) } else { 0 }).collect();
                gens.push(Monomial::from_exponents(&e).unwrap());
            }
            // the remaining variables are nilpotent in every ring here except the plane
            let extra: Vec<_> = (n..r.nvars()).map(|v| r.ambient().var(v)).collect();
            let mut polys: Vec<_> = gens.into_iter().filter(|m| !m.is_one()).map(|m| r.ambient().from_terms(vec![(1, m)])).collect();
            polys.extend(extra);
            let i = r.ideal(&polys).map_err(err)?;
            if !i.is_m_primary() {
                continue;
            }
            ideals.push((format!("{name} {i}"), i));
            monomial += 1;
        }
    }
    let buchs = build_buchsbaum_rc(Rationals).map_err(err)?;
    for ni in &buchs.ideals {
        let c = ideal_coefficients(&ni.ideal, opts()).map_err(err)?;
        let h = hdeg_rel(&ModulePresentation::of_ring(&buchs.ring), &ni.ideal, opts()).map_err(err)?.value();
        ensure(c.e1() >= c.e0() - h, || format!("buchsbaum-rc {}: e1 {} < {} - {h}", ni.name, c.e1(), c.e0()))?;
    }
    for (name, i) in &ideals {
        let c = ideal_coefficients(i, opts()).map_err(err)?;
        let h = hdeg_rel(&ModulePresentation::of_ring(i.ring()), i, opts()).map_err(|e| format!("{name}: {e}"))?.value();
        ensure(c.e1() >= c.e0() - h, || format!("{name}: e1 {} < {} - {h}", c.e1(), c.e0()))?;
    }
    Ok(format!(
        "{} modules ({calibrated} CM calibrated), {} ideals ({monomial} random monomial) satisfy e1 >= e0 - hdeg_I",
        modules.len(),
        ideals.len() + buchs.ideals.len()
    ))
}

fn closure_checks() -> Outcome {
    let plane = ring(&["x", "y"], &[]);
    let i = plane.parse_ideal(&["x^3", "y^3"]).map_err(err)?;
    let bar = monomial_integral_closure(&i).map_err(err)?;
    let want = plane.parse_ideal(&["x^3", "x^2*y", "x*y^2", "y^3"]).map_err(err)?;
    ensure(bar.same_ideal(&want) && bar.gens().len() == 4, || format!("closure {bar}"))?;
    let module = ModulePresentation::of_ring(&plane);
    let filt = closure_filtration(&i).map_err(err)?;
    let c = hilbert_samuel_module(&module, &filt, opts()).map_err(err)?;
    ensure((c.e0(), c.e1(), c.e2()) == (9, 3, 0), || format!("bar e = {:?}", (c.e0(), c.e1(), c.e2())))?;
    let t = tracking_compare(&plane, &GoodFiltration::adic(i.gens()), &filt, opts()).map_err(err)?;
    ensure(t.lower.e1() == 0 && t.upper.e1() == 3 && t.e1_monotone, || format!("tracking {} <= {}", t.lower.e1(), t.upper.e1()))?;
    let reps = bound_suite(&i, InstanceFlags::default(), SuiteOptions::default()).map_err(err)?;
    let sally = reps.iter().find(|r| r.name == "sally-rhs").ok_or("no sally report")?;
    ensure(sally.lhs == Some(0) && sally.verdict == Verdict::Holds, || format!("sally {:?} {:?}", sally.lhs, sally.verdict))?;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 200 {
        let n = rng.gen_range(2..=3usize);
        let gens: Vec<Monomial> = (0..rng.gen_range(1..5))
            .map(|_| Monomial::from_exponents(&(0..n).map(|_| rng.gen_range(0..6)).collect::<Vec<_>>()).unwrap())
            .filter(|m| !m.is_one())
            .collect();
        if gens.is_empty() {
            continue;
        }
        let a = MonomialIdeal::new(n, &gens).map_err(err)?;
        let bar = integral_closure(&a).map_err(err)?;
        ensure(bar.contains_ideal(&a), || format!("{a:?} not inside its closure"))?;
        ensure(integral_closure(&bar).map_err(err)? == bar, || format!("closure of {a:?} not idempotent"))?;
        let extra = Monomial::from_exponents(&(0..n).map(|_| rng.gen_range(0..6)).collect::<Vec<_>>()).unwrap();
        if !extra.is_one() {
            let b = a.sum(&MonomialIdeal::new(n, &[extra]).map_err(err)?);
            ensure(integral_closure(&b).map_err(err)?.contains_ideal(&bar), || format!("closure not monotone on {a:?}"))?;
        }
        // the closure agrees pointwise with the Newton polyhedron computed from the primal side
        for q in monomials_up_to(n, 12).iter().filter(|q| q.exponents().iter().all(|&e| e <= 6)) {
            let inside = newton_member(&gens, &q.exponents());
            ensure(bar.contains(q) == inside, || format!("{q:?} vs closure of {a:?}: vertex enumeration says {inside}"))?;
        }
        checked += 1;
    }
    Ok(format!("closure (x^3,y^3) has 4 generators, bar e = (9,3,0), tracking 0 <= 3, Sally RHS 0, {checked} random closures"))
}

fn reductions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut draws, mut rejected) = (0u32, 0u32);
    let mut e1_checked = 0;
    let mut torsion_checked = 0;
    let mut gcm_checked = 0;
    let rings = lab_rings().into_iter().chain([("k[x,y,z]", ring(&["x", "y", "z"], &[]))]).collect::<Vec<_>>();
    for (name, r) in &rings {
        let module = ModulePresentation::of_ring(r);
        let profile = CohomologyProfile::of(&module, exec()).map_err(err)?;
        let hdeg_r = hdeg(&module, exec()).map_err(err)?.value();
        let h0_r = module.h0_length().map_err(err)?;
        let d = r.dim();
        for _ in 0..5 {
            let seed: u64 = rng.gen();
            let i = random_primary(r, d + 1, 2, &mut rng);
            let before = ideal_coefficients(&i, opts()).map_err(err)?;
            match random_superficial_reduction(&i, 1, seed, BUDGET, opts()) {
                Ok(red) => {
                    draws += red.retries + 1;
                    rejected += red.retries;
                    ensure(red.ring.dim() == d - 1, || format!("{name}: dimension {} after one cut", red.ring.dim()))?;
                    let after = ideal_coefficients(&red.extended_ideal(&i).map_err(err)?, opts()).map_err(err)?;
                    ensure(after.e0() == before.e0(), || format!("{name} {i}: e0 {} -> {}", before.e0(), after.e0()))?;
                    if d > 2 {
                        ensure(after.e1() == before.e1(), || format!("{name} {i}: e1 {} -> {}", before.e1(), after.e1()))?;
                        e1_checked += 1;
                    }
                }
                Err(_) => {
                    draws += BUDGET;
                    rejected += BUDGET;
                }
            }

            // generic hyperplane sections
            let cut = d - 1;
            match random_superficial_reduction(&r.maximal_ideal(), cut, seed, BUDGET, opts()) {
                Ok(red) => {
                    draws += red.retries + 1;
                    rejected += red.retries;
                    let h0 = ModulePresentation::of_ring(&red.ring).h0_length().map_err(err)?;
                    ensure(h0 as i128 <= hdeg_r, || format!("{name}: H0 of section {h0} > hdeg {hdeg_r}"))?;
                    torsion_checked += 1;
                    if let (true, Some(t)) = (d >= 2, profile.t_invariant()) {
                        ensure(h0 <= h0_r + t, || format!("{name}: H0 of section {h0} > {h0_r} + {t}"))?;
                        gcm_checked += 1;
                    }
                }
                Err(_) => {
                    draws += BUDGET;
                    rejected += BUDGET;
                }
            }
        }
    }
    let rate = rejected as f64 / draws as f64;
    ensure(rate < 0.05, || format!("genericity failure rate {rate:.3}"))?;
    Ok(format!(
        "{} reductions ({e1_checked} with e1), {torsion_checked} sections bounded by hdeg, {gcm_checked} by H0 + T; failure rate {rate:.3}",
        rings.len() * 5
    ))
}

fn engine_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let space = ring(&["x", "y", "z"], &[]);
    let s = space.ambient().clone();
    let (mut members, mut tested) = (0, 0);
    while tested < 100 {
        let gens: Vec<_> = (0..rng.gen_range(1..=3)).map(|_| random_form(&space, rng.gen_range(1..=2), &mut rng)).filter(|f| !f.is_zero()).collect();
        if gens.is_empty() {
            continue;
        }
        let i = space.ideal(&gens).map_err(err)?;
        let f = if rng.gen_bool(0.5) {
            // a combination of degree 3
            gens.iter().fold(s.zero(), |acc, g| {
                let co = random_form(&space, 3 - g.total_degree().unwrap(), &mut rng);
                &acc + &(&co * g)
            })
        } else {
            random_form(&space, 3, &mut rng)
        };
        if f.is_zero() {
            continue;
        }
        let fast = i.contains(&f).map_err(err)?;
        let slow = macaulay_member(&s, &gens, &f, 3).map_err(err)?;
        ensure(fast == slow, || format!("{f} in {i}: basis says {fast}, linear algebra says {slow}"))?;
        members += fast as usize;

        let mut shuffled = gens.clone();
        shuffled.shuffle(&mut rng);
        let scaled: Vec<_> = shuffled.iter().map(|g| g.scale(&7)).collect();
        let a = GroebnerBasis::ideal(&s, &gens).map_err(err)?;
        let b = GroebnerBasis::ideal(&s, &scaled).map_err(err)?;
        ensure(a.polynomials() == b.polynomials(), || format!("reduced basis of {i} depends on generator order"))?;
        tested += 1;
    }

    let mut resolved = 0;
    let mut rings = lab_rings().into_iter().map(|(_, r)| r).collect::<Vec<_>>();
    rings.push(ring(&["x", "y", "z"], &[]));
    rings.push(ring(&["x", "y", "z"], &["x^2", "x*y"]));
    for (k, r) in rings.iter().enumerate() {
        let p = CohomologyProfile::of(&ModulePresentation::of_ring(r), exec()).map_err(err)?;
        let (depth, pd) = (p.depth.ok_or("no depth")?, p.projective_dimension.ok_or("no resolution")?);
        let regular = generic_depth(r, k as u64).map_err(err)?;
        ensure(depth == regular, || format!("ring {k}: depth {depth} but a regular sequence of length {regular}"))?;
        ensure(depth + pd == r.nvars(), || format!("ring {k}: depth {depth} + pd {pd} != {}", r.nvars()))?;
        resolved += 1;
    }
    Ok(format!("{tested} memberships ({members} members) match, bases shuffle-invariant, depth + pd = r on {resolved} rings"))
}

#[test]
fn acceptance_criteria() {
    let mut run = Run { failed: Vec::new() };
    run.criterion(1, "idealization family", Duration::from_secs(60), idealization_family);
    run.criterion(2, "z-ring", Duration::from_secs(10), z_ring);
    run.criterion(3, "Buchsbaum instance over QQ", Duration::from_secs(120), buchsbaum);

    let mut serre = None;
    run.criterion(4, "Koszul multiplicity identity", Duration::from_secs(600), || {
        let s = serre_and_d_sequences()?;
        ensure(s.ideals >= 50 && s.rings >= 5, || format!("only {} ideals over {} rings", s.ideals, s.rings))?;
        let line = format!("{} parameter ideals over {} rings", s.ideals, s.rings);
        serre = Some(s);
        Ok(line)
    });
    run.criterion(5, "d-sequence e1 formula", Duration::from_secs(600), || {
        let s = serre.as_ref().ok_or("the Koszul run did not finish")?;
        ensure(s.certified > 0, || "no certified d-sequence".into())?;
        Ok(format!("{} certified d-sequences agree", s.certified))
    });

    run.criterion(6, "hdeg suite", Duration::from_secs(300), hdeg_suite);
    run.criterion(7, "monomial closure", Duration::from_secs(300), closure_checks);
    run.criterion(8, "superficial reductions", Duration::from_secs(600), reductions);
    run.criterion(9, "engine oracles", Duration::from_secs(300), engine_oracles);

    assert!(run.failed.is_empty(), "failed criteria: {:?}", run.failed);
}
