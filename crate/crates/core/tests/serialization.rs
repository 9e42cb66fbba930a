use ncqm_core::rational::rat;
use ncqm_core::*;

fn label() -> SectorLabel {
    SectorLabel::new(rat(1, 1), rat(1, 2), rat(1, 3))
}

fn round_trip<T>(value: &T) -> T
where
    T: serde::Serialize + serde::de::DeserializeOwned,
{
    let text = serde_json::to_string(value).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn library_values_round_trip_through_json() {
    let l = label();
    assert_eq!(round_trip(&l), l);
    assert_eq!(round_trip(&omega_nc(&l)), omega_nc(&l));
    assert_eq!(round_trip(&central_character(&l)), central_character(&l));

    let bopp = bopp_matrix(&l, &BoppParams::new(rat(1, 2), rat(1, 2))).unwrap();
    assert_eq!(round_trip(&bopp), bopp);

    let map = intrinsic_canonicalization(&l).unwrap();
    assert_eq!(round_trip(&map), map);

    let g = GroupElement {
        theta: rat(1, 2),
        phi: rat(-3, 4),
        psi: rat(5, 1),
        q: [rat(1, 3), rat(0, 1)],
        p: [rat(-2, 7), rat(1, 1)],
    };
    assert_eq!(round_trip(&g), g);

    let f = PolySymbol::variable(0).mul(&PolySymbol::variable(3)).add(&PolySymbol::one());
    assert_eq!(round_trip(&f), f);

    let report = shadow_report(&l).unwrap();
    assert_eq!(round_trip(&report), report);
}

#[test]
fn rationals_serialize_in_canonical_form() {
    let json = serde_json::to_value(label()).unwrap();
    assert_eq!(json, serde_json::json!({"hbar": "1", "theta": "1/2", "b_in": "1/3"}));
    for text in ["-5/6", "0", "7", "-1/2"] {
        assert_eq!(format_rational(&parse_rational(text).unwrap()), text);
    }
}

#[test]
fn commutator_matrix_json_is_validated() {
    let ok: std::result::Result<CommutatorMatrix, _> = serde_json::from_str(r#"[["0","1"],["-1","0"]]"#);
    assert!(ok.is_ok());
    let bad: std::result::Result<CommutatorMatrix, _> = serde_json::from_str(r#"[["0","1"],["1","0"]]"#);
    assert!(bad.is_err());
    let odd: std::result::Result<CommutatorMatrix, _> = serde_json::from_str(r#"[["0"]]"#);
    assert!(odd.is_err());
}

#[test]
fn end_to_end_sector_pipeline() {
    let l = label();
    let omega = omega_nc(&l);
    assert_eq!(pfaffian(&omega).unwrap(), rat(-5, 6));
    let map = intrinsic_canonicalization(&l).unwrap();
    assert_eq!(push_commutators(&map.matrix, &omega).unwrap(), omega_ccr(&l.hbar, 2));
    let verdict = reduction_verdict(&l).unwrap();
    assert!(verdict.darboux_exists && !verdict.conjugation_possible && !verdict.sectors_equivalent);
    let report = shadow_report(&l).unwrap();
    assert!(report.pushed_is_canonical && report.intertwining_verified && !report.sectors_equivalent);
}
