//! Structural operations: closures, center, derived subgroup, Sylow subgroups,
//! quotients, normal subgroups of prime index.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::table::TableGroup;
use crate::group::{Elem, Group, Limits, Subgroup};

/// Extends `gens[i] -> images[i]` to a homomorphism on all of `src`, or returns
/// `None` if the images are inconsistent or the generators do not generate `src`.
pub fn extend_homomorphism(src: &TableGroup, dst: &TableGroup, gens: &[u32], images: &[u32]) -> Option<Vec<u32>> {
    let n = src.order();
    let mut map = vec![u32::MAX; n];
    map[0] = 0;
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let fx = map[x as usize];
        for (&g, &img) in gens.iter().zip(images) {
            let y = src.mul(x, g) as usize;
            let fy = dst.mul(fx, img);
            if map[y] == u32::MAX {
                map[y] = fy;
                queue.push(y as u32);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    if queue.len() != n {
        return None;
    }
    Some(map)
}

/// Closure of `gens` inside `g`, realized as its own table.
pub fn generated_subgroup(g: &Group, gens: &[Elem]) -> Result<Subgroup> {
    generated_subgroup_with(g, gens, &Limits::default())
}

pub fn generated_subgroup_with(g: &Group, gens: &[Elem], limits: &Limits) -> Result<Subgroup> {
    let (table, elements) = TableGroup::from_closure(gens, 0u64, |a, b| g.mul(*a, *b), limits.subgroup)?;
    let names = (1..=gens.len()).map(|i| format!("g{i}")).collect();
    Ok(Subgroup { ambient: g.clone(), elements, generators: gens.to_vec(), as_group: Arc::new(table.with_names(names)) })
}

/// Subgroup on a set already known to be closed, with a greedy generating set.
pub fn subgroup_from_set(g: &Group, set: &[Elem]) -> Result<Subgroup> {
    let mut sorted: Vec<Elem> = set.to_vec();
    sorted.sort_unstable();
    let mut gens = Vec::new();
    let mut have: HashSet<Elem> = HashSet::from([0]);
    for &x in &sorted {
        if !have.contains(&x) {
            gens.push(x);
            let s = generated_subgroup(g, &gens)?;
            have = s.elements.iter().copied().collect();
        }
    }
    let s = generated_subgroup(g, &gens)?;
    if s.order() != sorted.len() {
        return Err(Error::InvalidExpression("element set is not a subgroup".into()));
    }
    Ok(s)
}

fn table_of(g: &Group) -> Result<&Arc<TableGroup>> {
    g.table()
}

pub fn center(g: &Group) -> Result<Subgroup> {
    let t = table_of(g)?;
    let info = t.info();
    let set: Vec<Elem> = (0..t.order() as u32).filter(|&x| info.class_sizes[info.class_of[x as usize] as usize] == 1).map(|x| x as Elem).collect();
    subgroup_from_set(g, &set)
}

/// Smallest normal subgroup containing `set`, as sorted table elements.
pub fn normal_closure(t: &TableGroup, set: &[u32]) -> Vec<u32> {
    let n = t.order();
    let mut member = vec![false; n];
    member[0] = true;
    let mut elems = vec![0u32];
    let conj_gens: Vec<u32> = if t.gens().is_empty() { (0..n as u32).collect() } else { t.gens().to_vec() };
    let mut pending: Vec<u32> = set.to_vec();
    let mut gens: Vec<u32> = Vec::new();
    while let Some(x) = pending.pop() {
        if member[x as usize] {
            continue;
        }
        gens.push(x);
        // Re-close under multiplication by all generators found so far.
        let mut i = 0;
        let mut frontier = elems.clone();
        frontier.push(x);
        member[x as usize] = true;
        elems.push(x);
        while i < frontier.len() {
            let y = frontier[i];
            i += 1;
            for &g in &gens {
                let z = t.mul(y, g);
                if !member[z as usize] {
                    member[z as usize] = true;
                    elems.push(z);
                    frontier.push(z);
                }
            }
        }
        for &g in &conj_gens {
            for &y in &gens {
                let c = t.conj(g, y);
                if !member[c as usize] {
                    pending.push(c);
                }
            }
        }
    }
    let mut out: Vec<u32> = (0..n as u32).filter(|&x| member[x as usize]).collect();
    out.sort_unstable();
    out
}

pub fn derived_elements(t: &TableGroup) -> Vec<u32> {
    let gens: Vec<u32> = if t.gens().is_empty() { (0..t.order() as u32).collect() } else { t.gens().to_vec() };
    let mut comms = Vec::new();
    for &a in &gens {
        for &b in &gens {
            let c = t.commutator(a, b);
            if c != 0 {
                comms.push(c);
            }
        }
    }
    normal_closure(t, &comms)
}

pub fn derived_subgroup(g: &Group) -> Result<Subgroup> {
    let t = table_of(g)?;
    let set: Vec<Elem> = derived_elements(t).into_iter().map(|x| x as Elem).collect();
    subgroup_from_set(g, &set)
}

pub fn exponent(g: &Group) -> u64 {
    match g {
        Group::Table(t) => t.info().orders.iter().fold(1u64, |acc, &o| lcm(acc, o as u64)),
        Group::Twisted(tw) => {
            // (b, d)^2 = (b·d(b), 0), and components can be chosen independently.
            let mut e = tw.components().iter().fold(1u64, |acc, c| lcm(acc, exponent(&Group::Table(c.clone()))));
            for d in 1..(1usize << tw.d_rank()) {
                let mut l = 1u64;
                for (c, comp) in tw.components().iter().enumerate() {
                    for x in 0..comp.order() as u32 {
                        let img = tw.coord(tw.mul(tw.d_element_mask(d), tw.inject(c, x)), c);
                        l = lcm(l, comp.element_order(comp.mul(x, img)) as u64);
                    }
                }
                e = lcm(e, 2 * l);
            }
            e
        }
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd64(a, b) * b
}

pub fn gcd64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd64(b, a % b)
    }
}

pub fn element_order(g: &Group, x: Elem) -> u64 {
    g.element_order(x)
}

/// A Sylow `p`-subgroup, grown one normalizing `p`-element at a time.
pub fn sylow_subgroup(g: &Group, p: u64) -> Result<Subgroup> {
    let t = table_of(g)?;
    let n = t.order() as u64;
    let mut target = 1u64;
    let mut m = n;
    while p > 1 && m.is_multiple_of(p) {
        target *= p;
        m /= p;
    }
    let mut current: Vec<u32> = vec![0];
    let mut gens: Vec<Elem> = Vec::new();
    let is_p_power = |mut k: u64| {
        while k.is_multiple_of(p) {
            k /= p;
        }
        k == 1
    };
    while (current.len() as u64) < target {
        let members: HashSet<u32> = current.iter().copied().collect();
        let next = (0..t.order() as u32).find(|&x| {
            !members.contains(&x)
                && is_p_power(t.element_order(x) as u64)
                && current.iter().all(|&y| members.contains(&t.conj(x, y)))
        });
        let x = next.expect("a proper p-subgroup has a normalizing p-element outside it");
        gens.push(x as Elem);
        let s = generated_subgroup(g, &gens)?;
        current = s.elements.iter().map(|&e| e as u32).collect();
    }
    generated_subgroup(g, &gens)
}

/// Cosets of the normal closure check: returns the quotient table and the projection.
pub fn quotient_table(t: &TableGroup, normal_gens: &[u32]) -> Result<(TableGroup, Vec<u32>)> {
    let (sub, elems) = TableGroup::from_closure(normal_gens, 0u32, |a, b| t.mul(*a, *b), usize::MAX)?;
    drop(sub);
    let members: HashSet<u32> = elems.iter().copied().collect();
    for &g in t.gens().iter().chain(std::iter::once(&0)) {
        for &x in normal_gens {
            if !members.contains(&t.conj(g, x)) {
                return Err(Error::NotNormal);
            }
        }
    }
    if t.gens().is_empty() && t.order() > 1 {
        for g in 0..t.order() as u32 {
            for &x in normal_gens {
                if !members.contains(&t.conj(g, x)) {
                    return Err(Error::NotNormal);
                }
            }
        }
    }
    let n = t.order();
    let mut coset = vec![u32::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n as u32 {
        if coset[x as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &y in &elems {
            coset[t.mul(x, y) as usize] = id;
        }
    }
    let q = reps.len();
    let mut mul = vec![0u32; q * q];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            mul[i * q + j] = coset[t.mul(a, b) as usize];
        }
    }
    let gens = t.gens().iter().map(|&g| coset[g as usize]).collect();
    Ok((TableGroup::from_table(q, mul, t.names().to_vec(), gens), coset))
}

/// Quotient `g / <normal_gens>` with the natural projection.
pub fn quotient(g: &Group, normal_gens: &[Elem]) -> Result<(Group, crate::morphism::Morphism)> {
    let t = table_of(g)?;
    let gens: Vec<u32> = normal_gens.iter().map(|&x| x as u32).collect();
    let (q, proj) = quotient_table(t, &gens)?;
    let qg = Group::Table(Arc::new(q));
    let m = crate::morphism::Morphism::from_map(
        t.clone(),
        qg.clone(),
        proj.iter().map(|&x| x as Elem).collect(),
        crate::morphism::MorphismKind::Homomorphism,
    );
    Ok((qg, m))
}

pub fn check_table(g: &Group) -> bool {
    match g {
        Group::Table(t) => t.check_table(),
        Group::Twisted(_) => false,
    }
}

/// Elements of `t` commuting with every element of `set`.
pub fn centralizer(t: &TableGroup, set: &[u32]) -> Vec<u32> {
    (0..t.order() as u32).filter(|&x| set.iter().all(|&y| t.mul(x, y) == t.mul(y, x))).collect()
}

/// `[A, B]`: the subgroup generated by commutators `[a, b]`.
pub fn commutator_subgroup(t: &TableGroup, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut comms: Vec<u32> = Vec::new();
    let mut seen = HashSet::new();
    for &x in a {
        for &y in b {
            let c = t.commutator(x, y);
            if seen.insert(c) {
                comms.push(c);
            }
        }
    }
    let (_, elems) = TableGroup::from_closure(&comms, 0u32, |p, q| t.mul(*p, *q), usize::MAX).expect("unbounded");
    let mut out = elems;
    out.sort_unstable();
    out
}

/// Elements of the subgroup generated by `gens`, sorted.
pub fn closure_elements(t: &TableGroup, gens: &[u32]) -> Vec<u32> {
    let (_, mut elems) = TableGroup::from_closure(gens, 0u32, |p, q| t.mul(*p, *q), usize::MAX).expect("unbounded");
    elems.sort_unstable();
    elems
}

/// All normal subgroups of index `p`, each as sorted table elements.
pub fn index_p_normal_subgroups(t: &TableGroup, p: u32) -> Vec<Vec<u32>> {
    let n = t.order() as u32;
    if !n.is_multiple_of(p) {
        return Vec::new();
    }
    let mut seed = derived_elements(t);
    seed.extend((0..n).map(|x| t.pow(x, p as i64)));
    seed.sort_unstable();
    seed.dedup();
    let n0 = closure_elements(t, &seed);
    if n0.len() as u32 == n {
        return Vec::new();
    }
    let n0_gens: Vec<u32> = n0.clone();
    let (q, proj) = quotient_table(t, &minimal_gens(t, &n0_gens)).expect("characteristic subgroup is normal");
    // Basis of the elementary abelian quotient, then coordinates of every element.
    let mut basis = Vec::new();
    let mut span: Vec<u32> = vec![0];
    for x in 0..q.order() as u32 {
        if !span.contains(&x) {
            basis.push(x);
            span = closure_elements(&q, &basis);
        }
    }
    let r = basis.len();
    let mut coords: HashMap<u32, Vec<u32>> = HashMap::new();
    let total = (p as usize).pow(r as u32);
    for idx in 0..total {
        let mut c = Vec::with_capacity(r);
        let mut k = idx;
        let mut elem = 0u32;
        for &b in &basis {
            let e = (k % p as usize) as u32;
            k /= p as usize;
            c.push(e);
            elem = q.mul(elem, q.pow(b, e as i64));
        }
        coords.insert(elem, c);
    }
    let mut out = Vec::new();
    for idx in 1..total {
        let mut f = Vec::with_capacity(r);
        let mut k = idx;
        for _ in 0..r {
            f.push((k % p as usize) as u32);
            k /= p as usize;
        }
        // One functional per hyperplane: the first nonzero coefficient is 1.
        if f.iter().find(|&&v| v != 0) != Some(&1) {
            continue;
        }
        let mut members: Vec<u32> = (0..n)
            .filter(|&x| {
                let c = &coords[&proj[x as usize]];
                c.iter().zip(&f).map(|(a, b)| a * b).sum::<u32>() % p == 0
            })
            .collect();
        members.sort_unstable();
        out.push(members);
    }
    out.sort();
    out
}

fn minimal_gens(t: &TableGroup, set: &[u32]) -> Vec<u32> {
    let mut gens = Vec::new();
    let mut span: HashSet<u32> = HashSet::from([0]);
    for &x in set {
        if !span.contains(&x) {
            gens.push(x);
            span = closure_elements(t, &gens).into_iter().collect();
        }
    }
    gens
}

/// Invariants of an abelian group as prime powers in ascending order, e.g. `[2, 4]`.
pub fn abelian_invariants(t: &TableGroup) -> Vec<u64> {
    let n = t.order() as u64;
    let orders = &t.info().orders;
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            // s_i: log_p of the number of elements with x^(p^i) = 1 inside the p-part.
            let mut s = vec![0u32];
            let mut pk = 1u64;
            loop {
                pk *= p;
                let count = orders.iter().filter(|&&o| pk.is_multiple_of(o as u64)).count() as u64;
                let mut c = count;
                let mut e = 0;
                while c > 1 {
                    c /= p;
                    e += 1;
                }
                if e == *s.last().unwrap() {
                    break;
                }
                s.push(e);
            }
            // Number of cyclic factors of order at least p^i is s_i - s_{i-1}.
            let k = s.len() - 1;
            let at_least: Vec<u32> = (1..=k).map(|i| s[i] - s[i - 1]).collect();
            for i in 1..=k {
                let exactly = at_least[i - 1] - if i < k { at_least[i] } else { 0 };
                for _ in 0..exactly {
                    out.push(p.pow(i as u32));
                }
            }
        }
        p += 1;
    }
    out.sort_unstable();
    out
}

/// Conjugacy class sizes in ascending order.
pub fn class_sizes(t: &TableGroup) -> Vec<u32> {
    let mut v = t.info().class_sizes.clone();
    v.sort_unstable();
    v
}

/// Tests the statement: if `B ≤ C_G([A, B])` and `[A, B]` is abelian, then `B'` centralizes `A`.
/// Returns `None` when the hypotheses fail, otherwise whether the conclusion holds.
pub fn derived_centralizes_check(t: &TableGroup, a: &[u32], b: &[u32]) -> Option<bool> {
    let ab = commutator_subgroup(t, a, b);
    let c_ab: HashSet<u32> = centralizer(t, &ab).into_iter().collect();
    if !b.iter().all(|x| c_ab.contains(x)) {
        return None;
    }
    let abelian = ab.iter().all(|&x| ab.iter().all(|&y| t.mul(x, y) == t.mul(y, x)));
    if !abelian {
        return None;
    }
    let b_prime = commutator_subgroup(t, b, b);
    let c_a: HashSet<u32> = centralizer(t, a).into_iter().collect();
    Some(b_prime.iter().all(|x| c_a.contains(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::GroupExpr;
    use crate::group::construct;

    fn g(text: &str) -> Group {
        construct(&GroupExpr::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn abelian_invariants_match_products() {
        let t = g("C(2) x C(4) x C(3)");
        assert_eq!(abelian_invariants(t.table().unwrap()), vec![2, 3, 4]);
        let t = g("C(12)");
        assert_eq!(abelian_invariants(t.table().unwrap()), vec![3, 4]);
        let t = g("EA(2,3)");
        assert_eq!(abelian_invariants(t.table().unwrap()), vec![2, 2, 2]);
    }

    #[test]
    fn index_two_subgroups_of_klein_four() {
        let t = g("C(2) x C(2)");
        assert_eq!(index_p_normal_subgroups(t.table().unwrap(), 2).len(), 3);
        let s = g("S(4)");
        assert_eq!(index_p_normal_subgroups(s.table().unwrap(), 2).len(), 1);
        assert!(index_p_normal_subgroups(s.table().unwrap(), 3).is_empty());
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s = g("S(3)");
        let t = s.eval_word("(12)").unwrap();
        assert!(matches!(quotient(&s, &[t]), Err(Error::NotNormal)));
    }
}
