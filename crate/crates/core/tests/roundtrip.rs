use std::path::Path;

use proptest::prelude::*;

use nilclean::table::TableJson;
use nilclean::theorems::{run_check, CheckConfig, Context, TheoremReport};
use nilclean::{
    all_ideals, make_product, make_zmod, nil_clean_decompositions, AxiomMode, Decomposition, Error,
    FiniteRing, IdealJson, RingSpec, DEFAULT_ORDER_CAP,
};

#[test]
fn golden_report_deserializes_and_reserializes() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/theorems_default.json");
    let text = std::fs::read_to_string(path).unwrap();
    let reports: Vec<TheoremReport> = serde_json::from_str(&text).unwrap();
    assert_eq!(reports.len(), 27);
    assert_eq!(serde_json::to_string_pretty(&reports).unwrap() + "\n", text);
}

#[test]
fn report_round_trip() {
    let report = run_check("morita_zero_iff", &CheckConfig::default()).unwrap();
    let json = serde_json::to_string(&report).unwrap();
    let back: TheoremReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, report);
    assert_eq!(back.readings.len(), 2);
}

#[test]
fn ideal_json_round_trip() {
    for text in ["Z12", "T2(Z2)", "Id(4,2)", "MZ(2,2,2)"] {
        let ring = RingSpec::parse(text)
            .unwrap()
            .build(DEFAULT_ORDER_CAP)
            .unwrap();
        for ideal in all_ideals(&ring, 512).unwrap() {
            let json = serde_json::to_string(&ideal.to_json()).unwrap();
            let back: IdealJson = serde_json::from_str(&json).unwrap();
            let rebuilt = back.resolve(DEFAULT_ORDER_CAP).unwrap();
            assert_eq!(rebuilt.to_vec(), ideal.to_vec());
        }
    }
    let bogus = IdealJson {
        ring: "Z6".into(),
        members: vec![0, 1],
    };
    assert!(matches!(
        bogus.resolve(DEFAULT_ORDER_CAP),
        Err(Error::NotAnIdeal(_))
    ));
}

#[test]
fn decomposition_round_trip() {
    let ring = make_zmod(12).unwrap();
    for x in ring.elements() {
        for d in nil_clean_decompositions(&ring, x) {
            let back: Decomposition =
                serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
            assert_eq!(back, d);
            assert!(back.verify(&ring));
        }
    }
}

#[test]
fn corrupted_extra_ring_fails_the_axiom_gate() {
    let mut table = TableJson::from_ring(&make_zmod(4).unwrap()).unwrap();
    table.mul[2][3] = 1;
    let add = table.add.concat();
    let mul = table.mul.concat();
    let broken = FiniteRing::from_tables(4, add, mul, 0, 1).unwrap();
    let mut config = CheckConfig::with_family(&["Z2"]);
    config.extra_rings.push(broken);
    assert!(matches!(Context::new(config), Err(Error::AxiomFailure(_))));
}

#[test]
fn repeated_runs_agree() {
    let config = CheckConfig::with_family(&["Z4", "Z6", "T2(Z2)"]);
    let a = serde_json::to_string(&nilclean::theorems::run_all(&config).unwrap()).unwrap();
    let b = serde_json::to_string(&nilclean::theorems::run_all(&config).unwrap()).unwrap();
    assert_eq!(a, b);
}

fn small_spec() -> impl Strategy<Value = RingSpec> {
    let leaf = (2usize..=9).prop_map(RingSpec::Zmod);
    prop_oneof![
        leaf.clone(),
        (leaf.clone(), leaf.clone()).prop_map(|(a, b)| RingSpec::Product(vec![a, b])),
        (2usize..=3).prop_map(|n| RingSpec::Tri(2, Box::new(RingSpec::Zmod(n)))),
        prop::sample::select(vec![(4usize, 2usize), (8, 2), (4, 4), (9, 3)])
            .prop_map(|(n, m)| RingSpec::Idealization(n, m)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spec_display_parses_back(spec in small_spec()) {
        prop_assert_eq!(RingSpec::parse(&spec.to_string()).unwrap(), spec);
    }

    #[test]
    fn constructed_rings_satisfy_axioms(spec in small_spec()) {
        let ring = spec.build(DEFAULT_ORDER_CAP).unwrap();
        prop_assert!(ring.verify_axioms(AxiomMode::Exhaustive).unwrap().passed());
        let table = TableJson::from_ring(&ring).unwrap();
        let again = table.clone().into_ring().unwrap();
        prop_assert_eq!(TableJson::from_ring(&again).unwrap(), table);
    }

    #[test]
    fn product_classification_is_componentwise(a in 2usize..=12, b in 2usize..=12) {
        let (ra, rb) = (make_zmod(a).unwrap(), make_zmod(b).unwrap());
        let p = make_product(&[ra.clone(), rb.clone()], DEFAULT_ORDER_CAP).unwrap();
        prop_assert_eq!(p.idempotents().len(), ra.idempotents().len() * rb.idempotents().len());
        prop_assert_eq!(p.nilpotents().len(), ra.nilpotents().len() * rb.nilpotents().len());
        prop_assert_eq!(p.units().len(), ra.units().len() * rb.units().len());
    }

    #[test]
    fn decompositions_verify(n in 2usize..=40, x in 0usize..40) {
        let ring = make_zmod(n).unwrap();
        let x = x % n;
        for d in nil_clean_decompositions(&ring, x) {
            prop_assert!(d.verify(&ring));
        }
    }
}
