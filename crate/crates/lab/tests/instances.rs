use chernlab_core::{PrimeField, Rationals, SamuelOptions};
use chernlab_lab::instances::{build_buchsbaum_rc, build_idealization_family, build_named, build_rees_cubic, build_z_ring, INSTANCE_NAMES};
use chernlab_lab::{parse, FieldChoice};

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn family_expectations_hold() {
    for n in 1..=4 {
        let inst = build_idealization_family(PrimeField::default_field(), n).unwrap();
        let checks = inst.verify(SamuelOptions::default()).unwrap();
        assert_eq!(checks.len(), inst.expectations.len());
        for c in &checks {
            assert!(c.holds, "{}: {:?}", inst.name, c);
        }
    }
}

#[test]
fn z_ring_lengths_match_the_closed_form() {
    let inst = build_z_ring(PrimeField::default_field()).unwrap();
    assert!(inst.verify(SamuelOptions::default()).unwrap().iter().all(|c| c.holds));
    // R/J^{k+1} is k[x,y]/(x,y)^{k+1} plus the line spanned by z
    let j = inst.ideal("J").unwrap();
    for k in 0..6u64 {
        let power = j.power(k as i64 + 1).unwrap();
        assert_eq!(inst.ring.length(&power).unwrap(), binom(k + 2, 2) + 1, "k = {k}");
    }
}

#[test]
fn buchsbaum_expectations_hold_over_the_rationals() {
    let inst = build_buchsbaum_rc(Rationals).unwrap();
    assert_eq!(inst.ring.dim(), 2);
    for c in inst.verify(SamuelOptions::default()).unwrap() {
        assert!(c.holds, "{c:?}");
    }
}

#[test]
fn scripts_of_instances_parse_back() {
    for name in INSTANCE_NAMES.iter().filter(|n| **n != "rees-cubic") {
        let inst = build_named(PrimeField::default_field(), name, 1).unwrap();
        let script = inst.to_script(FieldChoice::default());
        let text = script.to_string();
        assert_eq!(parse(&text).unwrap(), script, "{name}");
    }
}

#[test]
#[ignore = "Rees algebra of a cubic cone; takes minutes"]
fn rees_cubic_expectations() {
    let inst = build_rees_cubic(Rationals, 42).unwrap();
    for c in inst.verify(SamuelOptions::default()).unwrap() {
        assert!(c.holds, "{c:?}");
    }
}
