//! Presentation and double JSON round trips, plus the scalar text encoding.

use quasihopf::algebra::{parse_presentation, presentation_to_json};
use quasihopf::*;

#[test]
fn presentation_round_trips_through_json() {
    for name in ["group:Z3", "group:S3", "sweedler", "dual-omega:Z3:1"] {
        let GalleryItem::Presentation(h) = by_name(name).unwrap() else {
            panic!("expected a presentation");
        };
        let value = presentation_to_json(&h);
        let parsed = parse_presentation(&value).unwrap();
        assert_eq!(parsed.dim, h.dim);
        assert_eq!(parsed.field, h.field);
        assert_eq!(parsed.mult, h.mult, "{name}");
        assert_eq!(parsed.comult, h.comult);
        assert_eq!(parsed.phi, h.phi);
        assert_eq!(parsed.phi_inv, h.phi_inv, "computed inverse must agree");
        assert_eq!(parsed.antipode, h.antipode);
        assert!(h.elems_equal(&parsed.alpha, &h.alpha));
        assert!(h.elems_equal(&parsed.beta, &h.beta));
        assert!(parsed.validate().is_valid());
        // serialization is canonical: a second pass is byte-identical
        let text1 = serde_json::to_string(&value).unwrap();
        let text2 = serde_json::to_string(&presentation_to_json(&parsed)).unwrap();
        assert_eq!(text1, text2);
    }
}

#[test]
fn double_serialization_embeds_source_and_r_matrix() {
    let GalleryItem::Double(d) = by_name("dpr:Z2:1").unwrap() else {
        panic!("expected a double");
    };
    let value = d.to_json();
    let inner = parse_presentation(&value["double"]).unwrap();
    assert_eq!(inner.dim, 4);
    assert!(inner.validate().is_valid());
    let source = parse_presentation(&value["source"]).unwrap();
    assert_eq!(source.dim, 2);
    let r = value["r_matrix"].as_array().unwrap();
    assert_eq!(r.len(), 4 * 4 * 4 * 4 / 16); // flat n^4 over the base: (n^2)^2
}

#[test]
fn malformed_presentations_are_rejected() {
    let bad = serde_json::json!({ "dim": 2, "field": {"type": "Q"} });
    assert!(matches!(
        parse_presentation(&bad),
        Err(Error::Parse(_))
    ));
    let bad = serde_json::json!({ "dim": 0, "field": {"type": "Q"} });
    assert!(parse_presentation(&bad).is_err());
}

#[test]
fn scalar_text_encoding_round_trips() {
    for s in [
        Scalar::from_fraction(22, 7),
        Scalar::root_of_unity(12, 5),
        Scalar::root_of_unity(3, 1)
            .checked_sub(&Scalar::from_int(2))
            .unwrap(),
    ] {
        assert_eq!(Scalar::parse(&s.render()).unwrap(), s);
    }
}

#[test]
fn cocycles_load_from_json_arrays() {
    let g = GroupTable::cyclic(2);
    let v = serde_json::json!(["1", "1", "1", "1", "1", "1", "1", "-1"]);
    let w = quasihopf::gallery::cocycle_from_json(&g, &v).unwrap();
    assert_eq!(w.value(1, 1, 1), &Scalar::from_int(-1));
    let h = dual_group_algebra_twisted(&g, &w).unwrap();
    assert!(h.validate().is_valid());

    // a non-cocycle array is rejected by the exhaustive check
    let bad = serde_json::json!(["1", "1", "1", "-1", "1", "1", "1", "-1"]);
    assert!(quasihopf::gallery::cocycle_from_json(&g, &bad).is_err());
}

#[test]
fn pack_carries_u_when_attached() {
    let GalleryItem::Double(d) = by_name("dpr:Z2:1").unwrap() else {
        panic!();
    };
    let ue = double_u_eta(&d).unwrap();
    let pack = compute_pack(&d.inner).unwrap().with_u(ue.u.clone());
    assert_eq!(pack.u.as_deref(), Some(ue.u.as_slice()));
}
