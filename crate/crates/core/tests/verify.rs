use mge_core::catalog::collection_bound;
use mge_core::enumerate::Enumerator;
use mge_core::morphism::is_isomorphic;
use mge_core::verify::{
    certify, contains_all_of_order, contains_all_upto, minimal_embedding_search, reproduce_with, shipped_certificate,
    verify_certificate, verify_certificate_data, Certificate, Claim, ClaimSource, Collection, MinimalResult, Status,
};
use mge_core::{construct, Error, Group, GroupExpr};

fn g(text: &str) -> Group {
    construct(&GroupExpr::parse(text).unwrap()).unwrap()
}

fn minimal(c: Collection, max: u64) -> (u64, Vec<Group>) {
    match minimal_embedding_search(c, max, &Enumerator::new(1)).unwrap() {
        MinimalResult::Found { order, groups, .. } => (order, groups),
        MinimalResult::Exhausted { max_order } => panic!("exhausted at {max_order}"),
    }
}

#[test]
fn containment_of_small_orders() {
    let r = contains_all_of_order(&g("named(C2xH1)"), 8, None).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.items.iter().map(|i| i.witnesses.len()).sum::<usize>(), 5);
    assert!(r.replay_witnesses().unwrap());

    assert_eq!(contains_all_of_order(&g("named(S3xS4)"), 12, None).unwrap().status, Status::Pass);
    assert_eq!(contains_all_of_order(&g("named(EX192)"), 12, None).unwrap().status, Status::Pass);

    let r = contains_all_of_order(&g("EA(2,5)"), 8, None).unwrap();
    assert_eq!(r.status, Status::Fail);
    assert!(r.items.iter().any(|i| i.id == "C(8)" && i.status == Status::Fail));
}

#[test]
fn containment_up_to() {
    assert_eq!(contains_all_upto(&g("C(4) x C(5) x D(3)"), 6, None).unwrap().status, Status::Pass);
    assert_eq!(contains_all_upto(&g("C(1)"), 1, None).unwrap().status, Status::Pass);
    assert_eq!(contains_all_upto(&g("C(4) x C(5) x D(3)"), 8, None).unwrap().status, Status::Fail);
}

#[test]
fn twisted_ambients_need_certificates() {
    let big = g("named(BIG15_SOL)");
    assert!(matches!(contains_all_upto(&big, 15, None), Err(Error::IncompleteCertificates { .. })));
    let partial = Certificate { ambient: "named(BIG15_SOL)".into(), anchor: String::new(), claims: Vec::new() };
    assert!(matches!(contains_all_upto(&big, 3, Some(&partial)), Err(Error::IncompleteCertificates { .. })));

    let cert = shipped_certificate("BIG15_SOL").unwrap();
    let r = contains_all_upto(&big, 15, Some(&cert)).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert!(r.replay_witnesses().unwrap());
}

#[test]
fn minimal_searches() {
    let (order, groups) = minimal(Collection::OfOrder(8), 64);
    assert_eq!(order, 32);
    assert_eq!(groups.len(), 2);
    for label in ["named(C2xH1)", "named(H2)"] {
        assert!(groups.iter().any(|h| is_isomorphic(h, &g(label)).unwrap().is_some()), "{label}");
    }

    let (order, groups) = minimal(Collection::OfOrder(4), 16);
    assert_eq!(order, 8);
    for label in ["C(2) x C(4)", "D(4)"] {
        assert!(groups.iter().any(|h| is_isomorphic(h, &g(label)).unwrap().is_some()), "{label}");
    }
    assert_eq!(groups.len(), 2);

    let (order, groups) = minimal(Collection::OfOrder(2), 4);
    assert_eq!((order, groups.len()), (2, 1));

    for n in [3, 5, 6, 9, 10] {
        let (order, _) = minimal(Collection::OfOrder(n), 64);
        assert_eq!(order % collection_bound(n), 0);
    }
    let (order, _) = minimal(Collection::Upto(4), 48);
    assert_eq!(order, 24);

    assert!(matches!(
        minimal_embedding_search(Collection::OfOrder(12), 144, &Enumerator::new(1)),
        Err(Error::TierLimitExceeded { order: 72, .. })
    ));
    assert!(matches!(
        minimal_embedding_search(Collection::OfOrder(8), 31, &Enumerator::new(1)),
        Ok(MinimalResult::Exhausted { max_order: 31 })
    ));
}

fn claim(target: &str, words: &[&str]) -> Claim {
    Claim { target: target.into(), generators: words.iter().map(|w| w.to_string()).collect(), source: ClaimSource::Derived }
}

#[test]
fn certificate_claims() {
    let cert = Certificate {
        ambient: "C(8)[x] x C(2)[y]".into(),
        anchor: "test".into(),
        claims: vec![claim("C(8)", &["x^2"]), claim("C(8)", &["x*y"]), claim("C(4)", &["x"]), claim("C(2) x C(2)", &["x^4", "y"])],
    };
    let r = verify_certificate_data(&cert, "test").unwrap();
    let status: Vec<Status> = r.items.iter().map(|i| i.status).collect();
    assert_eq!(status, [Status::Fail, Status::Pass, Status::Fail, Status::Pass]);
    assert!(r.items[0].detail.contains("order mismatch 4 ≠ 8"), "{}", r.items[0].detail);
    assert!(r.items[2].detail.contains("order mismatch"));

    let bad = Certificate { claims: vec![claim("C(2)", &["z"])], ..cert.clone() };
    assert!(matches!(verify_certificate_data(&bad, "bad"), Err(Error::UnknownGenerator(_))));

    let abelian = Certificate { claims: vec![claim("C(2) x C(4)", &["x^2", "y"])], ..cert };
    let r = verify_certificate_data(&abelian, "x").unwrap();
    assert_eq!(r.status, Status::Pass);
    let r = verify_certificate_data(
        &Certificate { ambient: "D(4)".into(), anchor: String::new(), claims: vec![claim("C(8)", &["a", "b"])] },
        "y",
    )
    .unwrap();
    assert_eq!(r.status, Status::Fail);
}

#[test]
fn shipped_certificates_verify() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/certificates");
    let r = verify_certificate(&dir.join("s3xs4.json")).unwrap();
    assert_eq!((r.status, r.items.len()), (Status::Pass, 5));
    let r = verify_certificate(&dir.join("ambient.json")).unwrap();
    assert_eq!(r.status, Status::Pass);
    let ids: Vec<&str> = r.items.iter().map(|i| i.id.as_str()).collect();
    assert!(ids.iter().any(|i| i.ends_with("D(7) = <e, theta5*theta1*theta2*theta3*theta4*theta6*theta7*(12)>")));
    assert!(ids.iter().any(|i| i.ends_with("Q(3) = <b1*theta2*theta3*theta1, c^3>")));
    assert!(ids.iter().any(|i| i.ends_with("C(15) = <c^3*d>")));
}

#[test]
fn certificates_regenerate_identically() {
    for name in ["ambient", "BIG12_NONSOL", "T5_9_1"] {
        assert_eq!(certify(name).unwrap(), shipped_certificate(name).unwrap(), "{name}");
    }
    assert!(matches!(certify("NOPE"), Err(Error::UnknownLabel(_))));
}

#[test]
fn reports_are_deterministic_and_replayable() {
    let a = reproduce_with("table2", &Enumerator::new(1)).unwrap();
    let b = reproduce_with("table2", &Enumerator::new(1)).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert!(a.replay_witnesses().unwrap());
    let row9 = a.items.iter().find(|i| i.id == "n=9").unwrap();
    assert_eq!(row9.status, Status::Pass);
    assert!(row9.detail.contains("minimal order 27"));
}

#[test]
fn tier_gated_scenarios_skip() {
    let en = Enumerator::new(1);
    for id in ["lemma-p3", "lemma-order96"] {
        let r = reproduce_with(id, &en).unwrap();
        assert_eq!(r.status, Status::Skipped, "{id}");
        assert!(r.passed());
        assert!(r.items.iter().all(|i| i.detail.contains("tier")));
    }
    let r = reproduce_with("table4", &en).unwrap();
    assert_eq!(r.items[0].detail, "1 = nbound(1)");
    assert!(matches!(reproduce_with("nope", &en), Err(Error::UnknownLabel(_))));
}
