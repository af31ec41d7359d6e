use std::collections::BTreeMap;
use std::sync::Arc;

use mge_core::catalog;
use mge_core::enumerate::{cyclic_extensions_with, regular_oracle, Catalog, CatalogFile, Enumerator};
use mge_core::group::check_table;
use mge_core::morphism::is_isomorphic;
use mge_core::{construct, Error, Group, GroupExpr, Limits};

fn g(text: &str) -> Group {
    construct(&GroupExpr::parse(text).unwrap()).unwrap()
}

/// Same isomorphism classes, matched one-to-one.
fn same_classes(a: &[Group], b: &[Group]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    for x in a {
        let Some(i) = (0..b.len()).find(|&i| !used[i] && is_isomorphic(x, &b[i]).unwrap().is_some()) else { return false };
        used[i] = true;
    }
    true
}

fn groups(c: &Catalog) -> Vec<Group> {
    c.groups().cloned().collect()
}

#[test]
fn small_orders_match_the_reference_list() {
    let en = Enumerator::new(1);
    let counts: Vec<usize> = (1..=15).map(|n| en.catalog(n).unwrap().len()).collect();
    assert_eq!(counts, [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1]);
    for n in 1..=15 {
        let listed: Vec<Group> = catalog::groups_of_order(n).unwrap().iter().map(|e| construct(e).unwrap()).collect();
        assert!(same_classes(&listed, &groups(&en.catalog(n).unwrap())), "order {n}");
    }
}

#[test]
fn enumeration_agrees_with_the_permutation_oracle() {
    let en = Enumerator::new(1);
    for n in 1..=10 {
        let oracle = regular_oracle(n).unwrap();
        assert!(same_classes(&groups(&oracle), &groups(&en.catalog(n).unwrap())), "order {n}");
    }
    assert!(matches!(regular_oracle(11), Err(Error::OutOfRange(11))));
}

// Frozen after cross-checking against the oracle for n <= 10 and the linear and
// generic extension paths below.
const TIER1_COUNTS: [(u64, usize); 10] =
    [(16, 14), (24, 15), (27, 5), (32, 51), (36, 14), (40, 14), (48, 52), (54, 15), (60, 13), (64, 267)];
const TIER2_COUNTS: [(u64, usize); 4] = [(72, 50), (96, 231), (120, 47), (144, 197)];

#[test]
fn frozen_counts_tier1() {
    let en = Enumerator::new(1);
    for (n, count) in TIER1_COUNTS {
        assert_eq!(en.catalog(n).unwrap().len(), count, "order {n}");
    }
}

#[test]
fn frozen_counts_tier2() {
    let en = Enumerator::new(2);
    for (n, count) in TIER2_COUNTS {
        assert_eq!(en.catalog(n).unwrap().len(), count, "order {n}");
    }
    assert_eq!(Enumerator::new(3).catalog(81).unwrap().len(), 15);
}

#[test]
fn catalogs_are_closed_and_irredundant() {
    let en = Enumerator::new(1);
    for n in [8, 12, 16, 18, 24, 32] {
        let cat = en.catalog(n).unwrap();
        for (i, a) in cat.entries.iter().enumerate() {
            assert_eq!(a.group.order(), n);
            assert!(check_table(&a.group));
            for b in &cat.entries[i + 1..] {
                assert!(is_isomorphic(&a.group, &b.group).unwrap().is_none(), "order {n} has a repeated class");
            }
        }
    }
}

#[test]
fn tier_and_seed_limits() {
    let en = Enumerator::new(1);
    assert!(matches!(en.catalog(72), Err(Error::TierLimitExceeded { order: 72, required: 2, tier: 1 })));
    assert!(matches!(Enumerator::new(2).catalog(128), Err(Error::TierLimitExceeded { required: 3, .. })));
    assert!(matches!(Enumerator::new(3).catalog(514), Err(Error::IncompleteSeedSet { order: 514, divisor: 257 })));
}

#[test]
fn enumeration_is_deterministic() {
    let a = Enumerator::new(1).catalog(24).unwrap().to_json();
    let b = Enumerator::new(1).catalog(24).unwrap().to_json();
    assert_eq!(a, b);
}

#[test]
fn disk_cache_round_trips_and_rejects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let first = Enumerator::new(1).with_cache_dir(dir.path()).catalog(16).unwrap().to_json();
    let path = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let second = Enumerator::new(1).with_cache_dir(dir.path()).catalog(16).unwrap().to_json();
    assert_eq!(first, second);

    let mut file: CatalogFile = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    file.entries[0].table_hash = "0".repeat(64);
    assert!(Catalog::from_file(&file, &Limits::default()).is_err());
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let third = Enumerator::new(1).with_cache_dir(dir.path()).catalog(16).unwrap().to_json();
    assert_eq!(first, third);
}

/// Extensions of an elementary abelian base by the matrix route and by streaming
/// all automorphisms must give the same classes.
#[test]
fn linear_and_generic_extensions_agree() {
    let limits = Limits::default();
    for (base, p) in [("EA(2,3)", 2), ("EA(3,2)", 3), ("EA(2,2)", 3), ("EA(2,4)", 2), ("C(2) x C(2) x C(2)", 3)] {
        let t = g(base).table().unwrap().clone();
        let lin = cyclic_extensions_with(&t, p, &limits, true).unwrap();
        let gen = cyclic_extensions_with(&t, p, &limits, false).unwrap();
        let as_groups = |v: Vec<Arc<_>>| v.into_iter().map(Group::Table).collect::<Vec<_>>();
        assert!(same_classes(&as_groups(lin), &as_groups(gen)), "{base} by {p}");
    }
}

#[test]
fn orders_by_prime_signature() {
    // Abelian counts are products of partition counts.
    let en = Enumerator::new(3);
    let mut abelian: BTreeMap<u64, usize> = BTreeMap::new();
    for n in [16, 32, 64, 27, 81] {
        abelian.insert(n, en.catalog(n).unwrap().entries.iter().filter(|e| e.fingerprint.abelian).count());
    }
    assert_eq!(abelian[&16], 5);
    assert_eq!(abelian[&32], 7);
    assert_eq!(abelian[&64], 11);
    assert_eq!(abelian[&27], 3);
    assert_eq!(abelian[&81], 5);
}
