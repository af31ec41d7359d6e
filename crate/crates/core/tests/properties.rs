use std::sync::{Arc, OnceLock};

use mge_core::enumerate::Enumerator;
use mge_core::group::{center, class_sizes, closure_elements, derived_centralizes_check, generated_subgroup, TableGroup};
use mge_core::morphism::{is_isomorphic, Fingerprint};
use mge_core::Group;
use proptest::prelude::*;

fn session() -> &'static Enumerator {
    static S: OnceLock<Enumerator> = OnceLock::new();
    S.get_or_init(|| Enumerator::new(1))
}

fn pick(n: u64, i: usize) -> Arc<TableGroup> {
    let cat = session().catalog(n).unwrap();
    cat.entries[i % cat.len()].group.table().unwrap().clone()
}

/// Same group with its elements renamed by a permutation that fixes the identity.
fn relabel(t: &TableGroup, perm: &[u32]) -> TableGroup {
    let n = t.order();
    let mut mul = vec![0u32; n * n];
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            mul[perm[a as usize] as usize * n + perm[b as usize] as usize] = perm[t.mul(a, b) as usize];
        }
    }
    let gens: Vec<u32> = t.gens().iter().map(|&g| perm[g as usize]).collect();
    TableGroup::from_table(n, mul, t.names().to_vec(), gens)
}

#[test]
fn lagrange_and_class_equation_over_tier1_catalogs() {
    for n in 1..=64u64 {
        for e in &session().catalog(n).unwrap().entries {
            let t = e.group.table().unwrap();
            for x in 0..n as u32 {
                assert_eq!(n % t.element_order(x) as u64, 0, "order {n}");
            }
            let sizes = class_sizes(t);
            assert_eq!(sizes.iter().map(|&s| s as u64).sum::<u64>(), n);
            assert!(sizes.iter().all(|&s| n % s as u64 == 0));
            let central = sizes.iter().filter(|&&s| s == 1).count();
            assert_eq!(central, center(&e.group).unwrap().order());
        }
    }
}

#[test]
fn commutator_hypotheses_are_exercised() {
    // Make sure the sampled property below is not vacuous.
    let mut hits = 0;
    for n in [6u64, 8, 12, 16, 18, 24] {
        for e in &session().catalog(n).unwrap().entries {
            let t = e.group.table().unwrap();
            for x in 1..n as u32 {
                let a = closure_elements(t, &[x]);
                let b: Vec<u32> = (0..n as u32).collect();
                if derived_centralizes_check(t, &a, &b) == Some(true) {
                    hits += 1;
                }
            }
        }
    }
    assert!(hits > 100, "{hits}");
}

const ORDERS: [u64; 12] = [4, 6, 8, 12, 16, 18, 20, 24, 27, 32, 36, 48];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn subgroup_orders_divide_the_group_order(k in 0..ORDERS.len(), i in 0usize..400, x in 0u32..64, y in 0u32..64) {
        let n = ORDERS[k];
        let t = pick(n, i);
        let g = Group::Table(t);
        let s = generated_subgroup(&g, &[(x as u64) % n, (y as u64) % n]).unwrap();
        prop_assert_eq!(n % s.order() as u64, 0);
    }

    #[test]
    fn fingerprints_survive_relabeling(k in 0..ORDERS.len(), i in 0usize..400, perm in Just((1u32..48).collect::<Vec<_>>()).prop_shuffle()) {
        let n = ORDERS[k] as usize;
        let t = pick(n as u64, i);
        let mut p = vec![0u32];
        p.extend(perm.into_iter().filter(|&v| (v as usize) < n));
        let r = relabel(&t, &p);
        prop_assert_eq!(Fingerprint::of(&t), Fingerprint::of(&r));
        let iso = is_isomorphic(&Group::Table(t), &Group::Table(Arc::new(r))).unwrap();
        prop_assert!(iso.is_some_and(|m| m.verify()));
    }

    #[test]
    fn derived_subgroup_centralizes(n in prop::sample::select(vec![6u64, 8, 12, 16, 18, 24]), i in 0usize..64,
                                    a in prop::collection::vec(0u32..24, 1..3), b in prop::collection::vec(0u32..24, 1..3)) {
        let t = pick(n, i);
        let m = n as u32;
        let a = closure_elements(&t, &a.iter().map(|x| x % m).collect::<Vec<_>>());
        let b = closure_elements(&t, &b.iter().map(|x| x % m).collect::<Vec<_>>());
        prop_assert_ne!(derived_centralizes_check(&t, &a, &b), Some(false));
    }
}
