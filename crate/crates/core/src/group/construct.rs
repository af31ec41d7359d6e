//! Realization of group expressions.

use std::collections::HashMap;
use std::sync::Arc;

use crate::catalog::named_group;
use crate::error::{Error, Result};
use crate::expr::{ActionClause, GroupExpr};
use crate::group::ops::{extend_homomorphism, quotient_table};
use crate::group::table::TableGroup;
use crate::group::twisted::{DGen, TwistedGroup};
use crate::group::{Group, Limits};
use crate::perm::Perm;

pub fn construct(expr: &GroupExpr) -> Result<Group> {
    construct_with(expr, &Limits::default())
}

/// Realizes `expr` as a dense table when its order fits the table limit, otherwise
/// as a twisted product.
pub fn construct_with(expr: &GroupExpr, limits: &Limits) -> Result<Group> {
    let order = expr_order(expr, limits)?;
    if order <= limits.table as u128 {
        return Ok(Group::Table(Arc::new(realize_table(expr, limits)?)));
    }
    let parts = twisted_parts(expr, limits).map_err(|e| match e {
        Error::OrderLimitExceeded { .. } => Error::OrderLimitExceeded { order, limit: limits.table },
        other => other,
    })?;
    let mut group = TwistedGroup::new(parts.comps, parts.names, parts.dgens)?;
    if group.order() as u128 != order {
        return Err(Error::InvalidExpression(format!("twisted form has order {} instead of {order}", group.order())));
    }
    group.expr = Some(expr.clone());
    Ok(Group::Twisted(Arc::new(group)))
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Order of the group an expression denotes. Central products, quotients and
/// permutation groups realize their (small) operands to count.
pub fn expr_order(expr: &GroupExpr, limits: &Limits) -> Result<u128> {
    Ok(match expr {
        GroupExpr::Cyclic(n) | GroupExpr::Dihedral(n) | GroupExpr::Dicyclic(n) if *n == 0 => {
            return Err(Error::InvalidExpression(format!("{expr} has parameter 0")))
        }
        GroupExpr::Cyclic(n) => *n as u128,
        GroupExpr::Dihedral(n) => 2 * *n as u128,
        GroupExpr::Dicyclic(n) => 4 * *n as u128,
        GroupExpr::ElemAbelian(p, k) => {
            if !is_prime(*p) {
                return Err(Error::InvalidExpression(format!("{p} is not prime")));
            }
            (*p as u128).pow(*k)
        }
        GroupExpr::Symmetric(n) => factorial(*n),
        GroupExpr::Alternating(n) => {
            if *n < 2 {
                1
            } else {
                factorial(*n) / 2
            }
        }
        GroupExpr::DirectProduct(factors) => {
            let mut total = 1u128;
            for f in factors {
                total = total.saturating_mul(expr_order(f, limits)?);
            }
            total
        }
        GroupExpr::SemidirectProduct { base, actor, .. } => {
            expr_order(base, limits)?.saturating_mul(expr_order(actor, limits)?)
        }
        GroupExpr::CentralProduct { left, right, identify } => {
            let left = Group::Table(Arc::new(small_table(left, limits)?));
            let ro = expr_order(right, limits)?;
            let u = left.eval_word(&identify.0)?;
            left.order() as u128 * ro / left.element_order(u) as u128
        }
        GroupExpr::Quotient { .. } | GroupExpr::PermGroup { .. } => realize_table(expr, limits)?.order() as u128,
        GroupExpr::Named(label) => expr_order(&named_group(label)?, limits)?,
        GroupExpr::Renamed { inner, .. } => expr_order(inner, limits)?,
    })
}

fn small_table(expr: &GroupExpr, limits: &Limits) -> Result<TableGroup> {
    let order = expr_order(expr, limits)?;
    if order > limits.table as u128 {
        return Err(Error::OrderLimitExceeded { order, limit: limits.table });
    }
    realize_table(expr, limits)
}

impl TableGroup {
    /// Copy of the table and bindings without cached invariants.
    pub(crate) fn clone_shallow(&self) -> TableGroup {
        TableGroup::from_table(self.order(), self.table().to_vec(), self.names().to_vec(), self.gens().to_vec())
            .with_perms(self.perm_lookup().clone())
    }
}

/// Suffixes generator names that occur in more than one operand with `_<operand index>`.
fn merge_names(groups: &[Vec<String>]) -> Vec<Vec<String>> {
    let mut count: HashMap<&str, usize> = HashMap::new();
    for names in groups {
        let mut seen = std::collections::HashSet::new();
        for n in names {
            if !n.starts_with('(') && seen.insert(n.as_str()) {
                *count.entry(n.as_str()).or_default() += 1;
            }
        }
    }
    groups
        .iter()
        .enumerate()
        .map(|(i, names)| {
            names
                .iter()
                .map(|n| if count.get(n.as_str()).copied().unwrap_or(0) > 1 { format!("{n}_{}", i + 1) } else { n.clone() })
                .collect()
        })
        .collect()
}

fn perm_table(degree: u32, gens: &[Perm], limits: &Limits) -> Result<TableGroup> {
    for g in gens {
        if g.support_degree() > degree as usize {
            return Err(Error::InvalidExpression(format!("{g} moves points beyond degree {degree}")));
        }
    }
    let (t, elements) = TableGroup::from_closure(gens, Perm::identity(), |a, b| a.mul(b), limits.table)?;
    let perms = elements.into_iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
    Ok(t.with_names(gens.iter().map(|g| g.to_string()).collect()).with_perms(perms))
}

fn cycle(points: std::ops::RangeInclusive<u16>) -> Perm {
    Perm::cycle(&points.collect::<Vec<_>>())
}

pub(crate) fn direct_product_tables(factors: &[TableGroup]) -> TableGroup {
    let mut acc = TableGroup::from_table(1, vec![0], Vec::new(), Vec::new());
    let merged = merge_names(&factors.iter().map(|f| f.names().to_vec()).collect::<Vec<_>>());
    let mut names = Vec::new();
    for (f, fnames) in factors.iter().zip(merged) {
        acc = product2(&acc, f);
        names.extend(fnames);
    }
    let gens = acc.gens().to_vec();
    let perms = acc.perm_lookup().clone();
    acc.with_bindings(names, gens).with_perms(perms)
}

/// `A x B` with index `a * |B| + b`.
fn product2(a: &TableGroup, b: &TableGroup) -> TableGroup {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut mul = vec![0u32; n * n];
    for a1 in 0..na as u32 {
        for b1 in 0..nb as u32 {
            let x = (a1 as usize * nb + b1 as usize) * n;
            for a2 in 0..na as u32 {
                let a3 = a.mul(a1, a2) as usize * nb;
                let row = &mut mul[x + a2 as usize * nb..x + a2 as usize * nb + nb];
                for (b2, slot) in row.iter_mut().enumerate() {
                    *slot = (a3 + b.mul(b1, b2 as u32) as usize) as u32;
                }
            }
        }
    }
    let mut names = a.names().to_vec();
    names.extend(b.names().iter().cloned());
    let mut gens: Vec<u32> = a.gens().iter().map(|&g| g * nb as u32).collect();
    gens.extend(b.gens().iter().copied());
    let mut perms: HashMap<Perm, Option<u32>> = HashMap::new();
    for (p, &i) in a.perm_lookup() {
        perms.insert(p.clone(), Some(i * nb as u32));
    }
    for (p, &i) in b.perm_lookup() {
        perms.entry(p.clone()).and_modify(|v| *v = None).or_insert(Some(i));
    }
    let perms = perms.into_iter().filter_map(|(p, v)| v.map(|v| (p, v))).collect();
    TableGroup::from_table(n, mul, names, gens).with_perms(perms)
}

/// Resolves the actor generator of each clause: an explicit prefix applies until the
/// next one; clauses before any prefix need a single-generator actor.
fn clauses_by_actor(actor_names: &[String], action: &[ActionClause]) -> Result<Vec<Vec<(String, String)>>> {
    let mut out = vec![Vec::new(); actor_names.len()];
    let mut current: Option<usize> = if actor_names.len() == 1 { Some(0) } else { None };
    for clause in action {
        if let Some(g) = &clause.actor_gen {
            current = Some(
                actor_names
                    .iter()
                    .position(|n| n == g)
                    .ok_or_else(|| Error::UnknownGenerator(g.clone()))?,
            );
        }
        let idx = current.ok_or_else(|| {
            Error::InvalidExpression(format!("clause {}={} needs an actor generator prefix", clause.base_gen, clause.image))
        })?;
        out[idx].push((clause.base_gen.clone(), clause.image.clone()));
    }
    Ok(out)
}

/// Index of the binding a clause's left side names.
fn binding_index(group: &Group, names: &[String], lhs: &str) -> Result<usize> {
    if let Some(i) = names.iter().position(|n| n == lhs) {
        return Ok(i);
    }
    let x = group.eval_word(lhs)?;
    group
        .bindings()
        .iter()
        .position(|(_, e)| *e == x)
        .ok_or_else(|| Error::UnknownGenerator(lhs.to_string()))
}

/// Automorphism of `base` sending each bound generator to its clause image.
fn action_automorphism(base: &TableGroup, clauses: &[(String, String)], actor_name: &str) -> Result<Vec<u32>> {
    let group = Group::Table(Arc::new(base.clone_shallow()));
    let mut images: Vec<u32> = base.gens().to_vec();
    for (lhs, rhs) in clauses {
        let i = binding_index(&group, base.names(), lhs)?;
        images[i] = group.eval_word(rhs)? as u32;
    }
    let map = extend_homomorphism(base, base, base.gens(), &images)
        .ok_or_else(|| Error::InvalidAction(format!("images under {actor_name} do not define a homomorphism")))?;
    let mut hit = vec![false; map.len()];
    for &m in &map {
        if std::mem::replace(&mut hit[m as usize], true) {
            return Err(Error::InvalidAction(format!("{actor_name} does not act bijectively")));
        }
    }
    Ok(map)
}

fn semidirect_table(base: &TableGroup, actor: &TableGroup, action: &[ActionClause]) -> Result<TableGroup> {
    let nb = base.order();
    let na = actor.order();
    let by_actor = clauses_by_actor(actor.names(), action)?;
    let phis: Vec<Vec<u32>> = by_actor
        .iter()
        .zip(actor.names())
        .map(|(clauses, name)| action_automorphism(base, clauses, name))
        .collect::<Result<_>>()?;
    // psi(x h_j) = psi(x) o phi_j, checked on every edge of the actor's Cayley graph.
    let identity: Vec<u32> = (0..nb as u32).collect();
    let mut psi: Vec<Option<Vec<u32>>> = vec![None; na];
    psi[0] = Some(identity);
    let mut queue = std::collections::VecDeque::from([0u32]);
    let mut visited = vec![false; na];
    visited[0] = true;
    while let Some(x) = queue.pop_front() {
        for (j, &h) in actor.gens().iter().enumerate() {
            let y = actor.mul(x, h) as usize;
            let px = psi[x as usize].as_ref().unwrap();
            let composed: Vec<u32> = phis[j].iter().map(|&v| px[v as usize]).collect();
            match &psi[y] {
                Some(existing) if *existing != composed => {
                    return Err(Error::InvalidAction("the action does not respect the actor's relations".into()))
                }
                Some(_) => {}
                None => psi[y] = Some(composed),
            }
            if !visited[y] {
                visited[y] = true;
                queue.push_back(y as u32);
            }
        }
    }
    if visited.iter().any(|v| !v) {
        return Err(Error::InvalidExpression("actor bindings do not generate the actor".into()));
    }
    let psi: Vec<Vec<u32>> = psi.into_iter().map(|p| p.unwrap()).collect();
    let n = nb * na;
    let mut mul = vec![0u32; n * n];
    for h1 in 0..na {
        for n1 in 0..nb as u32 {
            let row = (h1 * nb + n1 as usize) * n;
            for h2 in 0..na {
                let h3 = actor.mul(h1 as u32, h2 as u32) as usize * nb;
                let off = row + h2 * nb;
                for n2 in 0..nb {
                    mul[off + n2] = (h3 + base.mul(n1, psi[h1][n2]) as usize) as u32;
                }
            }
        }
    }
    let merged = merge_names(&[base.names().to_vec(), actor.names().to_vec()]);
    let mut names = merged[0].clone();
    names.extend(merged[1].iter().cloned());
    let mut gens: Vec<u32> = base.gens().to_vec();
    gens.extend(actor.gens().iter().map(|&h| h * nb as u32));
    let mut perms: HashMap<Perm, u32> = base.perm_lookup().clone();
    for (p, &h) in actor.perm_lookup() {
        perms.entry(p.clone()).or_insert(h * nb as u32);
    }
    Ok(TableGroup::from_table(n, mul, names, gens).with_perms(perms))
}

/// Realizes `expr` as a dense table, ignoring the order threshold for operands.
pub fn realize_table(expr: &GroupExpr, limits: &Limits) -> Result<TableGroup> {
    let order = expr_order_shallow(expr);
    if let Some(o) = order {
        if o > limits.table as u128 {
            return Err(Error::OrderLimitExceeded { order: o, limit: limits.table });
        }
    }
    let table = match expr {
        GroupExpr::Cyclic(n) => {
            let n = *n as usize;
            let mul = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
            TableGroup::from_table(n, mul, vec!["a".into()], vec![(1 % n) as u32])
        }
        GroupExpr::ElemAbelian(p, k) => {
            let p = *p as usize;
            let n = p.pow(*k);
            let mut mul = vec![0u32; n * n];
            for x in 0..n {
                for y in 0..n {
                    let (mut a, mut b, mut z, mut place) = (x, y, 0, 1);
                    while a > 0 || b > 0 {
                        z += ((a % p + b % p) % p) * place;
                        a /= p;
                        b /= p;
                        place *= p;
                    }
                    mul[x * n + y] = z as u32;
                }
            }
            let names = (1..=*k).map(|i| format!("e{i}")).collect();
            let gens = (0..*k).map(|i| p.pow(i) as u32).collect();
            TableGroup::from_table(n, mul, names, gens)
        }
        GroupExpr::Dihedral(m) | GroupExpr::Dicyclic(m) => {
            let dicyclic = matches!(expr, GroupExpr::Dicyclic(_));
            let r = if dicyclic { 2 * *m as usize } else { *m as usize };
            let n = 2 * r;
            let mut mul = vec![0u32; n * n];
            for x in 0..n {
                let (i, j) = (x % r, x / r);
                for y in 0..n {
                    let (k, l) = (y % r, y / r);
                    let mut e = if j == 0 { i + k } else { i + r - k };
                    let mut t = j + l;
                    if t == 2 {
                        t = 0;
                        if dicyclic {
                            e += *m as usize;
                        }
                    }
                    mul[x * n + y] = ((e % r) + r * t) as u32;
                }
            }
            TableGroup::from_table(n, mul, vec!["a".into(), "b".into()], vec![(1 % r) as u32, r as u32])
        }
        GroupExpr::Symmetric(n) => {
            let gens: Vec<Perm> = match *n {
                0 | 1 => Vec::new(),
                2 => vec![cycle(0..=1)],
                n => vec![cycle(0..=1), cycle(0..=n as u16 - 1)],
            };
            perm_table((*n).max(1), &gens, limits)?
        }
        GroupExpr::Alternating(n) => {
            let gens: Vec<Perm> = (2..(*n).max(2) as u16).map(|k| Perm::cycle(&[0, 1, k])).collect();
            perm_table((*n).max(1), &gens, limits)?
        }
        GroupExpr::PermGroup { degree, generators } => perm_table(*degree, generators, limits)?,
        GroupExpr::DirectProduct(factors) => {
            let tables: Vec<TableGroup> = factors.iter().map(|f| realize_table(f, limits)).collect::<Result<_>>()?;
            direct_product_tables(&tables)
        }
        GroupExpr::SemidirectProduct { base, actor, action } => {
            let b = realize_table(base, limits)?;
            let a = realize_table(actor, limits)?;
            semidirect_table(&b, &a, action)?
        }
        GroupExpr::CentralProduct { left, right, identify } => {
            let l = realize_table(left, limits)?;
            let r = realize_table(right, limits)?;
            let lg = Group::Table(Arc::new(l.clone_shallow()));
            let rg = Group::Table(Arc::new(r.clone_shallow()));
            let u = lg.eval_word(&identify.0)? as u32;
            let v = rg.eval_word(&identify.1)? as u32;
            let central = |t: &TableGroup, z: u32| t.gens().iter().all(|&g| t.mul(g, z) == t.mul(z, g));
            if !central(&l, u) || !central(&r, v) {
                return Err(Error::CentralIdentification(format!("{} or {} is not central", identify.0, identify.1)));
            }
            if l.element_order(u) != r.element_order(v) {
                return Err(Error::CentralIdentification(format!(
                    "{} has order {} but {} has order {}",
                    identify.0,
                    l.element_order(u),
                    identify.1,
                    r.element_order(v)
                )));
            }
            let nr = r.order() as u32;
            let prod = direct_product_tables(&[l.clone_shallow(), r.clone_shallow()]);
            let kill = l.inv(u) * nr + v;
            let (q, _) = quotient_table(&prod, &[kill])?;
            q
        }
        GroupExpr::Quotient { group, normal } => {
            let g = realize_table(group, limits)?;
            let gg = Group::Table(Arc::new(g.clone_shallow()));
            let gens: Vec<u32> = normal.iter().map(|w| gg.eval_word(w).map(|x| x as u32)).collect::<Result<_>>()?;
            let (q, _) = quotient_table(&g, &gens)?;
            q
        }
        GroupExpr::Named(label) => realize_table(&named_group(label)?, limits)?,
        GroupExpr::Renamed { inner, names } => {
            let t = realize_table(inner, limits)?;
            if names.len() != t.names().len() {
                return Err(Error::InvalidExpression(format!(
                    "{} names given for {} generators",
                    names.len(),
                    t.names().len()
                )));
            }
            let gens = t.gens().to_vec();
            t.with_bindings(names.clone(), gens)
        }
    };
    Ok(table.with_expr(expr.clone()))
}

/// Order computable without realizing anything, when available.
fn expr_order_shallow(expr: &GroupExpr) -> Option<u128> {
    match expr {
        GroupExpr::Cyclic(n) => Some(*n as u128),
        GroupExpr::Dihedral(n) => Some(2 * *n as u128),
        GroupExpr::Dicyclic(n) => Some(4 * *n as u128),
        GroupExpr::ElemAbelian(p, k) => (*p as u128).checked_pow(*k),
        GroupExpr::Symmetric(n) => Some(factorial(*n)),
        GroupExpr::DirectProduct(f) => f.iter().map(expr_order_shallow).try_fold(1u128, |a, o| o.map(|o| a.saturating_mul(o))),
        GroupExpr::SemidirectProduct { base, actor, .. } => {
            Some(expr_order_shallow(base)?.saturating_mul(expr_order_shallow(actor)?))
        }
        _ => None,
    }
}

struct Parts {
    comps: Vec<Arc<TableGroup>>,
    names: Vec<Vec<String>>,
    dgens: Vec<DGen>,
}

fn flat_names(parts: &Parts) -> Vec<String> {
    let mut out: Vec<String> = parts.names.iter().flatten().cloned().collect();
    out.extend(parts.dgens.iter().map(|d| d.name.clone()));
    out
}

fn twisted_parts(expr: &GroupExpr, limits: &Limits) -> Result<Parts> {
    let order = expr_order(expr, limits)?;
    let attempt = match expr {
        GroupExpr::Named(label) => Some(twisted_parts(&named_group(label)?, limits)),
        GroupExpr::Renamed { inner, names } => Some(twisted_parts(inner, limits).and_then(|mut p| {
            if names.len() != flat_names(&p).len() {
                return Err(Error::InvalidExpression("rename list has the wrong length".into()));
            }
            let mut it = names.iter().cloned();
            for comp in p.names.iter_mut() {
                for n in comp.iter_mut() {
                    *n = it.next().unwrap();
                }
            }
            for d in p.dgens.iter_mut() {
                d.name = it.next().unwrap();
            }
            Ok(p)
        })),
        GroupExpr::DirectProduct(factors) => Some((|| {
            let parts: Vec<Parts> = factors.iter().map(|f| twisted_parts(f, limits)).collect::<Result<_>>()?;
            let merged = merge_names(&parts.iter().map(flat_names).collect::<Vec<_>>());
            let total: usize = parts.iter().map(|p| p.comps.len()).sum();
            let mut out = Parts { comps: Vec::new(), names: Vec::new(), dgens: Vec::new() };
            let mut offset = 0;
            for (p, names) in parts.into_iter().zip(merged) {
                let mut it = names.into_iter();
                for (c, n) in p.comps.into_iter().zip(p.names) {
                    out.comps.push(c);
                    out.names.push(n.iter().map(|_| it.next().unwrap()).collect());
                }
                let width = out.comps.len() - offset;
                for d in p.dgens {
                    let mut actions = vec![None; offset];
                    actions.extend(d.actions);
                    actions.resize(offset + width, None);
                    out.dgens.push(DGen { name: it.next().unwrap(), actions });
                }
                offset = out.comps.len();
            }
            for d in out.dgens.iter_mut() {
                d.actions.resize(total, None);
            }
            Ok(out)
        })()),
        GroupExpr::SemidirectProduct { base, actor, action } => Some(twisted_semidirect(base, actor, action, limits)),
        _ => None,
    };
    match attempt {
        Some(Ok(parts)) => Ok(parts),
        Some(Err(e)) if order > limits.table as u128 => Err(e),
        _ if order <= limits.table as u128 => {
            let t = realize_table(expr, limits)?;
            let names = t.names().to_vec();
            Ok(Parts { comps: vec![Arc::new(t)], names: vec![names], dgens: Vec::new() })
        }
        _ => Err(Error::OrderLimitExceeded { order, limit: limits.table }),
    }
}

/// A semidirect product whose actor is an elementary abelian 2-group acting
/// componentwise on a direct product base.
fn twisted_semidirect(base: &GroupExpr, actor: &GroupExpr, action: &[ActionClause], limits: &Limits) -> Result<Parts> {
    let base_parts = twisted_parts(base, limits)?;
    if !base_parts.dgens.is_empty() {
        return Err(Error::InvalidAction("nested twisting is not supported".into()));
    }
    let actor_t = realize_table(actor, limits)?;
    let k = actor_t.gens().len();
    let elementary = actor_t.order() == 1usize << k
        && actor_t.gens().iter().all(|&g| actor_t.element_order(g) == 2)
        && actor_t.is_abelian();
    if !elementary {
        return Err(Error::InvalidAction("actor is not elementary abelian on independent generators".into()));
    }
    let base_group = TwistedGroup::new(base_parts.comps.clone(), base_parts.names.clone(), Vec::new())?;
    let base_g = Group::Twisted(Arc::new(base_group));
    let base_names: Vec<String> = base_parts.names.iter().flatten().cloned().collect();
    let by_actor = clauses_by_actor(actor_t.names(), action)?;
    let tw = match &base_g {
        Group::Twisted(t) => t.clone(),
        _ => unreachable!(),
    };
    // Which component each flat binding belongs to.
    let mut owner = Vec::new();
    for (c, names) in base_parts.names.iter().enumerate() {
        owner.extend(std::iter::repeat_n(c, names.len()));
    }
    let mut dgens = Vec::new();
    let merged = merge_names(&[base_names.clone(), actor_t.names().to_vec()]);
    for (j, clauses) in by_actor.iter().enumerate() {
        let mut images: Vec<Vec<u32>> = base_parts.comps.iter().map(|c| c.gens().to_vec()).collect();
        for (lhs, rhs) in clauses {
            let i = binding_index(&base_g, &base_names, lhs)?;
            let c = owner[i];
            let x = base_g.eval_word(rhs)?;
            let (support, _) = tw.support(x);
            if support.iter().any(|&s| s != c) {
                return Err(Error::InvalidAction(format!("image {rhs} leaves the component of {lhs}")));
            }
            let local = i - owner.iter().position(|&o| o == c).unwrap();
            images[c][local] = tw.coord(x, c);
        }
        let mut actions = Vec::new();
        for (c, comp) in base_parts.comps.iter().enumerate() {
            if images[c] == comp.gens() {
                actions.push(None);
                continue;
            }
            let map = extend_homomorphism(comp, comp, comp.gens(), &images[c])
                .ok_or_else(|| Error::InvalidAction(format!("images under {} do not define a homomorphism", actor_t.names()[j])))?;
            let mut hit = vec![false; map.len()];
            if map.iter().any(|&m| std::mem::replace(&mut hit[m as usize], true)) {
                return Err(Error::InvalidAction(format!("{} does not act bijectively", actor_t.names()[j])));
            }
            actions.push(Some(map));
        }
        dgens.push(DGen { name: merged[1][j].clone(), actions });
    }
    let names = {
        let mut it = merged[0].iter().cloned();
        base_parts.names.iter().map(|n| n.iter().map(|_| it.next().unwrap()).collect()).collect()
    };
    Ok(Parts { comps: base_parts.comps, names, dgens })
}
