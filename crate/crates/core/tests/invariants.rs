use proptest::prelude::*;

use rescomp::classifier::{brute_force_members, classify};
use rescomp::completeness::is_complete;
use rescomp::order::{order_composite, period_length_divides};
use rescomp::report::{to_json, SCHEMA_VERSION};
use rescomp::{find_period, RecurrenceSpec, Variant};

fn spec_strategy() -> impl Strategy<Value = RecurrenceSpec> {
    (-9i64..=9, -5i64..=5, -5i64..=5, prop::bool::ANY)
        .prop_filter("nonzero q and seed", |&(q, a, b, _)| {
            q != 0 && (a, b) != (0, 0)
        })
        .prop_map(|(q, a, b, u)| {
            RecurrenceSpec::new(a, b, q, if u { Variant::U } else { Variant::W }).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn period_divides_order(spec in spec_strategy(), m in 2u64..300) {
        prop_assume!(!spec.is_trivial_mod(m));
        let rel = period_length_divides(&spec, m).unwrap();
        prop_assert!(rel.holds());
        let k = order_composite(spec.q, spec.variant, m).unwrap().order;
        prop_assert_eq!(k % find_period(&spec, m).unwrap().length as u64, 0);
    }

    #[test]
    fn completeness_passes_to_divisors(spec in spec_strategy(), m in 2u64..300) {
        prop_assume!(!spec.is_trivial_mod(m));
        if is_complete(&spec, m).unwrap() {
            for r in (2..m).filter(|r| m % r == 0) {
                prop_assert!(is_complete(&spec, r).unwrap(), "{} mod {}", spec, r);
            }
        }
    }

    #[test]
    fn period_is_canonical_rotation(spec in spec_strategy(), m in 2u64..200) {
        prop_assume!(!spec.is_trivial_mod(m));
        let p = find_period(&spec, m).unwrap();
        let r = &p.residues;
        for shift in 1..r.len() {
            let rotated: Vec<u64> = r[shift..].iter().chain(&r[..shift]).copied().collect();
            prop_assert!(r <= &rotated);
        }
    }
}

#[test]
fn classification_matches_brute_force_for_small_grid() {
    for q in [-4, -1, 1, 2, 4, 6] {
        for (a, b) in [(0, 1), (1, 1), (1, 2)] {
            let spec = RecurrenceSpec::w(a, b, q);
            let r = classify(&spec, 400).unwrap();
            assert_eq!(
                r.members,
                brute_force_members(&spec, 400).unwrap(),
                "{spec}"
            );
            assert!(r.members.iter().all(|&m| r.is_member(m)));
        }
    }
}

#[test]
fn json_envelope_carries_schema() {
    let spec = RecurrenceSpec::w(0, 1, 1);
    let p = find_period(&spec, 10).unwrap();
    let v: serde_json::Value =
        serde_json::from_str(&to_json("period", Variant::W, &p).unwrap()).unwrap();
    assert_eq!(v["schemaVersion"], SCHEMA_VERSION);
    assert_eq!(v["variant"], "w");
    assert_eq!(v["data"]["length"], 60);
}
