use std::cmp::Ordering;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use chernlab_core::homological::free_resolution;
use chernlab_core::oracle::{generic_depth, macaulay_member};
use chernlab_core::{
    CohomologyProfile, Execution, GroebnerBasis, ModulePresentation, Monomial, MonomialOrder, PolyRing, Polynomial,
    PresentedRing, PrimeField, Rationals, RingRef,
};

type Raw = Vec<(u32, [u32; 3])>;

fn fp3() -> RingRef<PrimeField> {
    PolyRing::new(PrimeField::default_field(), &["x", "y", "z"]).unwrap()
}

fn build(s: &RingRef<PrimeField>, raw: &Raw) -> Polynomial<PrimeField> {
    s.from_terms(raw.iter().map(|&(c, e)| (c, Monomial::from_exponents(&e).unwrap())).collect())
}

/// A homogeneous polynomial of degree `deg` from `(coef, a, b)` picks.
fn homogeneous(s: &RingRef<PrimeField>, deg: u32, picks: &[(u32, u32, u32)]) -> Polynomial<PrimeField> {
    let terms = picks
        .iter()
        .map(|&(c, a, b)| {
            let a = a % (deg + 1);
            let b = b % (deg + 1 - a);
            (c, Monomial::from_exponents(&[a, b, deg - a - b]).unwrap())
        })
        .collect();
    s.from_terms(terms)
}

fn raw_poly() -> impl Strategy<Value = Raw> {
    prop::collection::vec((1u32..32003, [0u32..4, 0u32..4, 0u32..4]), 0..6)
}

fn picks() -> impl Strategy<Value = Vec<(u32, u32, u32)>> {
    prop::collection::vec((1u32..32003, 0u32..8, 0u32..8), 1..4)
}

fn homogeneous_ideal() -> impl Strategy<Value = Vec<(u32, Vec<(u32, u32, u32)>)>> {
    prop::collection::vec((1u32..4, picks()), 1..4)
}

fn exps() -> impl Strategy<Value = [u32; 3]> {
    [0u32..6, 0u32..6, 0u32..6]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in raw_poly(), b in raw_poly(), c in raw_poly()) {
        let s = fp3();
        let (a, b, c) = (build(&s, &a), build(&s, &b), build(&s, &c));
        let ab = a.checked_add(&b).unwrap();
        prop_assert_eq!(ab.checked_add(&c).unwrap(), a.checked_add(&b.checked_add(&c).unwrap()).unwrap());
        prop_assert_eq!(&ab, &b.checked_add(&a).unwrap());
        prop_assert_eq!(a.checked_mul(&b).unwrap(), b.checked_mul(&a).unwrap());
        prop_assert_eq!(
            a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap(),
            a.checked_mul(&b).unwrap().checked_mul(&c).unwrap()
        );
        prop_assert_eq!(
            a.checked_mul(&b.checked_add(&c).unwrap()).unwrap(),
            a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.checked_sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.checked_mul(&s.one()).unwrap(), a.clone());
        prop_assert_eq!(a.checked_add(&(-&a)).unwrap(), s.zero());
    }

    #[test]
    fn orders_are_multiplicative_total_orders(a in exps(), b in exps(), c in exps()) {
        let (a, b, c) = (
            Monomial::from_exponents(&a).unwrap(),
            Monomial::from_exponents(&b).unwrap(),
            Monomial::from_exponents(&c).unwrap(),
        );
        let one = Monomial::one(3);
        for ord in [
            MonomialOrder::Grevlex,
            MonomialOrder::Lex,
            MonomialOrder::WeightedGrevlex(vec![1, 2, 3]),
            MonomialOrder::Block(vec![1, 2]),
        ] {
            prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&b, &a).reverse());
            prop_assert_eq!(ord.cmp(&a, &b) == Ordering::Equal, a == b);
            prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&a.mul(&c), &b.mul(&c)));
            prop_assert_ne!(ord.cmp(&a, &one), Ordering::Less);
            if ord.cmp(&a, &b) == Ordering::Less && ord.cmp(&b, &c) == Ordering::Less {
                prop_assert_eq!(ord.cmp(&a, &c), Ordering::Less);
            }
        }
    }

    #[test]
    fn printed_polynomials_parse_back(a in raw_poly(), den in prop::collection::vec(1i64..9, 6)) {
        let s = fp3();
        let f = build(&s, &a);
        prop_assert_eq!(s.parse(&f.to_string()).unwrap(), f);
        let q = PolyRing::new(Rationals, &["x", "y", "z"]).unwrap();
        let mut joined = String::from("0");
        for (&(c, e), d) in a.iter().zip(den.iter().cycle()) {
            let c = c as i64 - 16000;
            let sign = if c < 0 { '-' } else { '+' };
            joined.push_str(&format!(" {sign} {}/{d}*x^{}*y^{}*z^{}", c.abs(), e[0], e[1], e[2]));
        }
        let g = q.parse(&joined).unwrap();
        prop_assert_eq!(q.parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn normal_form_is_linear_and_idempotent(
        gens in prop::collection::vec(raw_poly(), 1..4),
        f in raw_poly(),
        g in raw_poly(),
    ) {
        let s = fp3();
        let gens: Vec<_> = gens.iter().map(|r| build(&s, r)).collect();
        let gb = match GroebnerBasis::ideal(&s, &gens) {
            Ok(gb) => gb,
            Err(_) => return Ok(()),
        };
        let (f, g) = (build(&s, &f), build(&s, &g));
        let nf = gb.normal_form(&f).unwrap();
        prop_assert_eq!(
            gb.normal_form(&f.checked_add(&g).unwrap()).unwrap(),
            nf.checked_add(&gb.normal_form(&g).unwrap()).unwrap()
        );
        prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(gb.contains(&f.checked_sub(&nf).unwrap()).unwrap());
        for h in &gens {
            prop_assert!(gb.contains(h).unwrap());
        }
    }

    #[test]
    fn reduced_basis_ignores_generator_order(gens in homogeneous_ideal(), seed in any::<u64>()) {
        let s = fp3();
        let mut polys: Vec<_> = gens.iter().map(|(d, p)| homogeneous(&s, *d, p)).collect();
        let a = GroebnerBasis::ideal(&s, &polys).unwrap();
        polys.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let scaled: Vec<_> = polys.iter().map(|p| p.scale(&7)).collect();
        prop_assert!(a == GroebnerBasis::ideal(&s, &scaled).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn membership_agrees_with_macaulay_matrix(
        gens in homogeneous_ideal(),
        mults in prop::collection::vec(picks(), 3),
        target in picks(),
        member in any::<bool>(),
    ) {
        let s = fp3();
        let polys: Vec<_> = gens.iter().map(|(d, p)| homogeneous(&s, *d, p)).collect();
        let deg = 4u32;
        let f = if member {
            let mut acc = s.zero();
            for (g, m) in polys.iter().zip(&mults) {
                let dg = g.total_degree().unwrap_or(0);
                acc = acc.checked_add(&g.checked_mul(&homogeneous(&s, deg - dg, m)).unwrap()).unwrap();
            }
            acc
        } else {
            homogeneous(&s, deg, &target)
        };
        let gb = GroebnerBasis::ideal(&s, &polys).unwrap();
        let engine = gb.contains(&f).unwrap();
        prop_assert_eq!(engine, macaulay_member(&s, &polys, &f, deg).unwrap());
        if member {
            prop_assert!(engine);
        }
    }

    #[test]
    fn m_primary_iff_dimension_zero(gens in homogeneous_ideal()) {
        let s = fp3();
        let r = PresentedRing::polynomial_ring(&s);
        let polys: Vec<_> = gens.iter().map(|(d, p)| homogeneous(&s, *d, p)).collect();
        let i = r.ideal(&polys).unwrap();
        prop_assert_eq!(i.is_m_primary(), i.quotient_dim() == Some(0));
        // homogeneous, generated in degree ≤ 3: m-primary forces 𝔪^7 ⊆ I
        let powers = (0..3).all(|v| macaulay_member(&s, &polys, &s.var(v).pow(7), 7).unwrap());
        prop_assert_eq!(i.is_m_primary(), powers);
    }
}

fn random_monomial_ring(seed: u64) -> chernlab_core::PresentedRef<PrimeField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = fp3();
    let count = rand::Rng::gen_range(&mut rng, 1..4);
    let gens: Vec<_> = (0..count)
        .map(|_| {
            let e: Vec<u32> = (0..3).map(|_| rand::Rng::gen_range(&mut rng, 0..3)).collect();
            let e = if e.iter().all(|&x| x == 0) { vec![1, 0, 0] } else { e };
            s.from_terms(vec![(1, Monomial::from_exponents(&e).unwrap())])
        })
        .collect();
    PresentedRing::new(&s, &gens).unwrap()
}

#[test]
fn auslander_buchsbaum_against_regular_sequences() {
    let s = fp3();
    let fixed = [
        vec!["x*z", "y*z", "z^2"],
        vec!["x*y - z^2"],
        vec!["x*y", "x*z"],
        vec!["x^2", "x*y"],
        vec![],
    ];
    let mut rings: Vec<_> = fixed
        .iter()
        .map(|rels| {
            let p: Vec<_> = rels.iter().map(|t| s.parse(t).unwrap()).collect();
            PresentedRing::new(&s, &p).unwrap()
        })
        .collect();
    rings.extend((0..20).map(random_monomial_ring));
    let five = PolyRing::new(PrimeField::default_field(), &["x", "y", "z", "u", "v"]).unwrap();
    let ideal: Vec<_> = ["u^2", "u*v", "v^2", "y*u - x*v"].iter().map(|t| five.parse(t).unwrap()).collect();
    let idealization = PresentedRing::new(&five, &ideal).unwrap();
    let mut checked = 0;
    for r in rings.iter().chain(std::iter::once(&idealization)) {
        let m = ModulePresentation::of_ring(r);
        let res = free_resolution(&m).unwrap();
        assert!(res.is_complex());
        let pd = res.length().unwrap();
        let depth = generic_depth(r, 5).unwrap();
        assert_eq!(depth + pd, r.nvars(), "ring {r}");
        let profile = CohomologyProfile::of(&m, Execution::Parallel).unwrap();
        assert_eq!(profile.depth, Some(depth), "ring {r}");
        checked += 1;
    }
    assert_eq!(checked, 26);
}

#[test]
fn cohomology_does_not_depend_on_the_presentation() {
    let s = fp3();
    let five = PolyRing::new(PrimeField::default_field(), &["x", "y", "z", "u", "v"]).unwrap();
    let cases = [
        (s.clone(), vec!["x*z", "y*z", "z^2"]),
        (s.clone(), vec!["x^2", "x*y", "x*z^3"]),
        (five, vec!["u^2", "u*v", "v^2", "y*u - x*v"]),
    ];
    for (seed, (ring, rels)) in cases.iter().enumerate() {
        let mut p: Vec<_> = rels.iter().map(|t| ring.parse(t).unwrap()).collect();
        let a = CohomologyProfile::of(&ModulePresentation::of_ring(&PresentedRing::new(ring, &p).unwrap()), Execution::Sequential)
            .unwrap();
        p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed as u64));
        // a redundant generator changes the first syzygies but not the module
        let extra = p[0].checked_add(&p[p.len() - 1]).unwrap();
        p.push(extra);
        let b = CohomologyProfile::of(&ModulePresentation::of_ring(&PresentedRing::new(ring, &p).unwrap()), Execution::Parallel)
            .unwrap();
        assert_eq!(a, b);
    }
}
