use mge_core::catalog::{self, registry};
use mge_core::group::{self, center, derived_subgroup, exponent, generated_subgroup, quotient, sylow_subgroup};
use mge_core::morphism::{count_automorphisms, find_embedding, is_isomorphic, Fingerprint};
use mge_core::{construct, Group, GroupExpr, Limits};

fn g(text: &str) -> Group {
    construct(&GroupExpr::parse(text).unwrap()).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn iso(a: &Group, b: &Group) -> bool {
    is_isomorphic(a, b).unwrap().is_some()
}

#[test]
fn registry_orders_match_expression_orders() {
    let limits = Limits::default();
    for c in &registry().groups {
        let e = GroupExpr::parse(&c.recipe).unwrap();
        assert_eq!(group::expr_order(&e, &limits).unwrap(), c.order as u128, "{}", c.label);
    }
}

#[test]
fn small_named_groups_realize() {
    for label in ["H1", "H2", "C2xH1", "H3", "W(3)", "S3xS4", "EX192", "K1", "K2", "K1T", "K2T", "S5T"] {
        let grp = g(&format!("named({label})"));
        let c = catalog::construction(label).unwrap();
        assert_eq!(grp.order(), c.order, "{label}");
        assert!(group::check_table(&grp), "{label}");
    }
}

#[test]
fn semidihedral_facts() {
    let h1 = g("named(H1)");
    assert_eq!(derived_subgroup(&h1).unwrap().order(), 4);
    let c2h1 = g("named(C2xH1)");
    let y2 = c2h1.eval_word("y^2").unwrap();
    let x2y = c2h1.eval_word("x2*y").unwrap();
    let q = generated_subgroup(&c2h1, &[y2, x2y]).unwrap();
    assert_eq!(q.order(), 8);
    assert!(iso(&Group::Table(q.as_group.clone()), &g("Q(2)")));
}

#[test]
fn order_32_pair_is_distinct() {
    let a = g("named(C2xH1)");
    let b = g("named(H2)");
    assert_ne!(Fingerprint::of(a.table().unwrap()), Fingerprint::of(b.table().unwrap()));
    assert!(!iso(&a, &b));
    assert!(iso(&a, &a));
}

#[test]
fn structure_of_s3_x_s4() {
    let s = g("named(S3xS4)");
    assert_eq!(center(&s).unwrap().order(), 1);
    let p = sylow_subgroup(&s, 3).unwrap();
    assert_eq!(p.order(), 9);
    assert!(iso(&Group::Table(p.as_group.clone()), &g("C(3) x C(3)")));
    let x = s.eval_word("a(1234)").unwrap();
    let c12 = generated_subgroup(&s, &[x]).unwrap();
    assert_eq!(c12.order(), 12);
    assert!(find_embedding(&g("Q(3)"), &s, None).unwrap().is_some());
    let w = generated_subgroup(&s, &[s.eval_word("a(13)(24)").unwrap(), s.eval_word("b(1234)").unwrap()]).unwrap();
    assert!(iso(&Group::Table(w.as_group.clone()), &g("Q(3)")));
}

#[test]
fn quaternion_does_not_embed_in_dihedral_16() {
    assert!(find_embedding(&g("Q(2)"), &g("D(8)"), None).unwrap().is_none());
    assert!(find_embedding(&g("C(8)"), &g("C(4) x C(4)"), None).unwrap().is_none());
}

#[test]
fn automorphism_counts() {
    let l = Limits::default();
    assert_eq!(count_automorphisms(&g("C(1)"), &l).unwrap(), 1);
    assert_eq!(count_automorphisms(&g("C(8)"), &l).unwrap(), 4);
    assert_eq!(count_automorphisms(&g("D(4)"), &l).unwrap(), 8);
    assert_eq!(count_automorphisms(&g("EA(2,3)"), &l).unwrap(), 168);
}

#[test]
fn exponents_and_quotients() {
    assert_eq!(exponent(&g("EA(2,3)")), 2);
    assert_eq!(exponent(&g("C(4) x C(4)")), 4);
    let w = g("named(W(3))");
    assert_eq!(w.order(), 243);
    assert_eq!(exponent(&w), 27);
    let c2h1 = g("named(C2xH1)");
    let (qg, proj) = quotient(&c2h1, &[c2h1.eval_word("x1").unwrap()]).unwrap();
    assert!(proj.verify());
    assert!(iso(&qg, &g("named(H1)")));
    assert_eq!(exponent(&g("named(H3)")), 9);
}

#[test]
fn twisted_ambient_elements() {
    let big = g("named(BIG_AMBIENT)");
    assert!(matches!(big, Group::Twisted(_)));
    let x = big.eval_word("a1*theta1*theta2").unwrap();
    assert_eq!(big.element_order(x), 8);
    let a1 = big.eval_word("a1").unwrap();
    assert_eq!(big.element_order(a1), 4);
    for label in ["BIG12_SOL", "BIG12_NONSOL", "BIG15_SOL", "BIG15_NONSOL"] {
        let grp = g(&format!("named({label})"));
        assert!(matches!(grp, Group::Twisted(_)), "{label}");
        assert_eq!(grp.order(), catalog::construction(label).unwrap().order);
    }
}
