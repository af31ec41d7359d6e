//! Fingerprints, isomorphism tests, embedding search and automorphism streams.
//!
//! All searches assign images to a fixed generating sequence of the source and
//! extend each partial assignment by closure, rejecting it at the first
//! multiplication inconsistency.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::{abelian_invariants, derived_elements, lcm, quotient_table, Elem, Group, Limits, TableGroup};
use crate::linear;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MorphismKind {
    Isomorphism,
    Monomorphism,
    Homomorphism,
    Automorphism,
}

/// A homomorphism from a table group, stored with its full element map.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub source: Arc<TableGroup>,
    pub target: Group,
    pub generators: Vec<u32>,
    pub images: Vec<Elem>,
    pub map: Vec<Elem>,
    pub kind: MorphismKind,
}

/// Serialized form of a morphism: expressions plus generator and image words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub source: String,
    pub target: String,
    pub generators: Vec<String>,
    pub images: Vec<String>,
}

impl Morphism {
    pub fn from_map(source: Arc<TableGroup>, target: Group, map: Vec<Elem>, kind: MorphismKind) -> Morphism {
        let generators = source.gens().to_vec();
        let images = generators.iter().map(|&g| map[g as usize]).collect();
        Morphism { source, target, generators, images, map, kind }
    }

    pub fn apply(&self, x: u32) -> Elem {
        self.map[x as usize]
    }

    /// Full homomorphism check plus the injectivity or bijectivity its kind requires.
    pub fn verify(&self) -> bool {
        let n = self.source.order();
        if self.map.len() != n {
            return false;
        }
        for x in 0..n as u32 {
            let fx = self.map[x as usize];
            for y in 0..n as u32 {
                if self.map[self.source.mul(x, y) as usize] != self.target.mul(fx, self.map[y as usize]) {
                    return false;
                }
            }
        }
        let injective = || {
            let mut v = self.map.clone();
            v.sort_unstable();
            v.dedup();
            v.len() == n
        };
        match self.kind {
            MorphismKind::Homomorphism => true,
            MorphismKind::Monomorphism => injective(),
            MorphismKind::Isomorphism | MorphismKind::Automorphism => injective() && self.target.order() == n as u64,
        }
    }

    /// `other ∘ self`: first `self`, then `other`. `self` must land in `other`'s source.
    pub fn then(&self, other: &Morphism) -> Morphism {
        let map = self.map.iter().map(|&x| other.map[x as usize]).collect();
        let kind = match (self.kind, other.kind) {
            (MorphismKind::Homomorphism, _) | (_, MorphismKind::Homomorphism) => MorphismKind::Homomorphism,
            (a, b) if is_iso(a) && is_iso(b) => MorphismKind::Isomorphism,
            _ => MorphismKind::Monomorphism,
        };
        Morphism::from_map(self.source.clone(), other.target.clone(), map, kind)
    }

    /// Inverse of an isomorphism between table groups.
    pub fn inverse(&self) -> Result<Morphism> {
        let target = self.target.table()?.clone();
        let mut map = vec![0 as Elem; target.order()];
        for (x, &y) in self.map.iter().enumerate() {
            map[y as usize] = x as Elem;
        }
        Ok(Morphism::from_map(target, Group::Table(self.source.clone()), map, MorphismKind::Isomorphism))
    }

    pub fn record(&self) -> WitnessRecord {
        let source = Group::Table(self.source.clone());
        WitnessRecord {
            source: source.expr_text(),
            target: self.target.expr_text(),
            generators: self.source.names().to_vec(),
            images: self.images.iter().map(|&x| self.target.word_of(x)).collect(),
        }
    }
}

fn is_iso(k: MorphismKind) -> bool {
    matches!(k, MorphismKind::Isomorphism | MorphismKind::Automorphism)
}

/// Replays a serialized witness: evaluates the image words in `target` and checks
/// that they extend to an injective homomorphism from `source`.
pub fn replay_witness(record: &WitnessRecord, source: &Group, target: &Group) -> Result<bool> {
    let src = source.table()?;
    let mut images = Vec::new();
    for w in &record.images {
        images.push(target.eval_word(w)?);
    }
    let gens: Vec<u32> = record.generators.iter().map(|n| source.binding(n).map(|e| e as u32)).collect::<Result<_>>()?;
    let Some(map) = extend_into(src, target, &gens, &images) else { return Ok(false) };
    let m = Morphism::from_map(src.clone(), target.clone(), map, MorphismKind::Monomorphism);
    Ok(m.verify())
}

/// Like `extend_homomorphism`, but into any group.
fn extend_into(src: &TableGroup, dst: &Group, gens: &[u32], images: &[Elem]) -> Option<Vec<Elem>> {
    let n = src.order();
    let mut map = vec![Elem::MAX; n];
    map[0] = 0;
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&g, &img) in gens.iter().zip(images) {
            let y = src.mul(x, g) as usize;
            let fy = dst.mul(map[x as usize], img);
            if map[y] == Elem::MAX {
                map[y] = fy;
                queue.push(y as u32);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    (queue.len() == n).then_some(map)
}

/// Isomorphism invariants of a table group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: u64,
    pub abelian: bool,
    /// `(element order, count)` in ascending order.
    pub element_orders: Vec<(u32, u32)>,
    pub center_order: u64,
    pub derived_order: u64,
    pub exponent: u64,
    /// `(class size, count)` in ascending order.
    pub class_sizes: Vec<(u32, u32)>,
    pub abelian_invariants: Option<Vec<u64>>,
    /// Invariants of the abelianization.
    pub abelianization: Vec<u64>,
    /// Digest of the multiset of per-element `(order, centralizer size, square-root count)`.
    pub profile: String,
}

fn counts<T: Ord + Copy>(items: impl Iterator<Item = T>) -> Vec<(T, u32)> {
    let mut m: BTreeMap<T, u32> = BTreeMap::new();
    for i in items {
        *m.entry(i).or_default() += 1;
    }
    m.into_iter().collect()
}

impl Fingerprint {
    pub fn of(t: &TableGroup) -> Fingerprint {
        t.fingerprint.get_or_init(|| Fingerprint::compute(t)).clone()
    }

    fn compute(t: &TableGroup) -> Fingerprint {
        let info = t.info();
        let n = t.order();
        let center_order = info.class_sizes.iter().filter(|&&s| s == 1).count() as u64;
        let derived = derived_elements(t);
        let abelian = center_order == n as u64;
        let abelianization = if abelian {
            abelian_invariants(t)
        } else {
            let (q, _) = quotient_table(t, &derived).expect("derived subgroup is normal");
            abelian_invariants(&q)
        };
        let per_element = counts((0..n).map(|x| {
            let c = n as u32 / info.class_sizes[info.class_of[x] as usize];
            (info.orders[x], c, info.sqrt_counts[x])
        }));
        let mut hasher = Sha256::new();
        for ((o, c, s), k) in &per_element {
            hasher.update(format!("{o}:{c}:{s}:{k};").as_bytes());
        }
        let digest = hex::encode(hasher.finalize());
        Fingerprint {
            order: n as u64,
            abelian,
            element_orders: counts(info.orders.iter().copied()),
            center_order,
            derived_order: derived.len() as u64,
            exponent: info.orders.iter().fold(1u64, |a, &o| lcm(a, o as u64)),
            class_sizes: counts(info.class_sizes.iter().copied()),
            abelian_invariants: abelian.then(|| abelianization.clone()),
            abelianization,
            profile: digest[..16].to_string(),
        }
    }

    /// Canonical text form; equal fingerprints give equal strings.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

fn pairs(v: &[(u32, u32)]) -> String {
    v.iter().map(|(a, b)| format!("{a}^{b}")).collect::<Vec<_>>().join(",")
}

fn list(v: &[u64]) -> String {
    if v.is_empty() {
        "1".into()
    } else {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={:05}|ab={}|eo={}|z={}|d={}|e={}|cs={}|ai={}|gab={}|p={}",
            self.order,
            u8::from(self.abelian),
            pairs(&self.element_orders),
            self.center_order,
            self.derived_order,
            self.exponent,
            pairs(&self.class_sizes),
            self.abelian_invariants.as_deref().map(list).unwrap_or_else(|| "-".into()),
            list(&self.abelianization),
            self.profile
        )
    }
}

pub fn fingerprint(g: &Group) -> Result<Fingerprint> {
    Ok(Fingerprint::of(g.table()?))
}

/// Generating sequence used as the backtracking skeleton: largest element order
/// first, then the element that grows the generated subgroup most.
pub fn search_generators(t: &TableGroup) -> Vec<u32> {
    t.search_gens.get_or_init(|| compute_search_generators(t)).clone()
}

fn compute_search_generators(t: &TableGroup) -> Vec<u32> {
    let n = t.order();
    let info = t.info();
    let mut gens: Vec<u32> = Vec::new();
    let mut member = vec![false; n];
    member[0] = true;
    let mut size = 1;
    while size < n {
        let mut best: Option<(usize, u32, u32)> = None;
        // Conjugate elements give the same growth when `gens` is empty, so one per class suffices then.
        let pool: Vec<u32> = if gens.is_empty() {
            info.class_reps.clone()
        } else {
            (0..n as u32).filter(|&x| !member[x as usize]).collect()
        };
        for x in pool {
            if member[x as usize] {
                continue;
            }
            let o = info.orders[x as usize];
            let grown = if gens.is_empty() {
                o as usize
            } else {
                let mut g2 = gens.clone();
                g2.push(x);
                crate::group::closure_elements(t, &g2).len()
            };
            let key = (grown, o, u32::MAX - x);
            if best.is_none_or(|b| (key.0, key.1) > (b.0, b.1)) {
                best = Some((grown, o, x));
            }
        }
        let (_, _, x) = best.expect("a proper subgroup misses some element");
        gens.push(x);
        let elems = crate::group::closure_elements(t, &gens);
        member = vec![false; n];
        for &e in &elems {
            member[e as usize] = true;
        }
        size = elems.len();
    }
    gens
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Iso,
    Embed,
    Auto,
}

/// Explicit-stack backtracking over generator images.
struct Backtrack {
    src: Arc<TableGroup>,
    dst: Arc<TableGroup>,
    injective: bool,
    gens: Vec<u32>,
    cands: Vec<Vec<u32>>,
    images: Vec<u32>,
    map: Vec<u32>,
    used: Vec<bool>,
    domain: Vec<u32>,
    marks: Vec<usize>,
    pos: Vec<usize>,
    level: usize,
    started: bool,
    done: bool,
    nodes: u64,
    budget: u64,
}

const NONE: u32 = u32::MAX;

impl Backtrack {
    fn new(src: Arc<TableGroup>, dst: Arc<TableGroup>, mode: Mode, budget: u64) -> Backtrack {
        let gens = search_generators(&src);
        let si = src.info();
        let di = dst.info();
        let dn = dst.order() as u32;
        let sn = src.order() as u32;
        let cands: Vec<Vec<u32>> = gens
            .iter()
            .enumerate()
            .map(|(i, &g)| {
                let o = si.orders[g as usize];
                let cs = sn / si.class_sizes[si.class_of[g as usize] as usize];
                let sq = si.sqrt_counts[g as usize];
                let pool: Box<dyn Iterator<Item = u32>> =
                    if i == 0 && mode != Mode::Auto { Box::new(di.class_reps.iter().copied()) } else { Box::new(0..dn) };
                pool.filter(|&c| {
                    let co = di.orders[c as usize];
                    let ccs = dn / di.class_sizes[di.class_of[c as usize] as usize];
                    let csq = di.sqrt_counts[c as usize];
                    co == o
                        && match mode {
                            Mode::Embed => ccs.is_multiple_of(cs) && csq >= sq,
                            _ => ccs == cs && csq == sq,
                        }
                })
                .collect()
            })
            .collect();
        let k = gens.len();
        let mut map = vec![NONE; src.order()];
        map[0] = 0;
        let mut used = vec![false; dst.order()];
        used[0] = true;
        Backtrack {
            src,
            dst,
            injective: true,
            gens,
            cands,
            images: vec![0; k],
            map,
            used,
            domain: vec![0],
            marks: vec![0; k],
            pos: vec![0; k],
            level: 0,
            started: false,
            done: false,
            nodes: 0,
            budget,
        }
    }

    fn try_assign(&mut self, level: usize, c: u32) -> bool {
        self.images[level] = c;
        let old_len = self.domain.len();
        self.marks[level] = old_len;
        let mut idx = 0;
        while idx < self.domain.len() {
            let x = self.domain[idx];
            let range = if idx < old_len { level..level + 1 } else { 0..level + 1 };
            idx += 1;
            for j in range {
                let y = self.src.mul(x, self.gens[j]) as usize;
                let fy = self.dst.mul(self.map[x as usize], self.images[j]);
                let cur = self.map[y];
                if cur == NONE {
                    if self.injective && self.used[fy as usize] {
                        self.undo(level);
                        return false;
                    }
                    self.map[y] = fy;
                    self.used[fy as usize] = true;
                    self.domain.push(y as u32);
                } else if cur != fy {
                    self.undo(level);
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, level: usize) {
        let mark = self.marks[level];
        for &y in &self.domain[mark..] {
            let fy = self.map[y as usize];
            self.used[fy as usize] = false;
            self.map[y as usize] = NONE;
        }
        self.domain.truncate(mark);
    }

    /// Advances to the next complete assignment.
    fn next(&mut self) -> Result<bool> {
        let k = self.gens.len();
        if self.done {
            return Ok(false);
        }
        if k == 0 {
            self.done = true;
            return Ok(!std::mem::replace(&mut self.started, true));
        }
        if self.started {
            self.level = k - 1;
            self.undo(self.level);
        }
        self.started = true;
        loop {
            let lvl = self.level;
            if self.pos[lvl] >= self.cands[lvl].len() {
                self.pos[lvl] = 0;
                if lvl == 0 {
                    self.done = true;
                    return Ok(false);
                }
                self.level -= 1;
                self.undo(self.level);
                continue;
            }
            let c = self.cands[lvl][self.pos[lvl]];
            self.pos[lvl] += 1;
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudgetExceeded(self.budget));
            }
            if self.try_assign(lvl, c) {
                if lvl + 1 == k {
                    return Ok(true);
                }
                self.level += 1;
            }
        }
    }
}

pub fn is_isomorphic(a: &Group, b: &Group) -> Result<Option<Morphism>> {
    is_isomorphic_with(a, b, &Limits::default())
}

pub fn is_isomorphic_with(a: &Group, b: &Group, limits: &Limits) -> Result<Option<Morphism>> {
    let (ta, tb) = (a.table()?, b.table()?);
    if ta.order() != tb.order() || Fingerprint::of(ta) != Fingerprint::of(tb) {
        return Ok(None);
    }
    let mut bt = Backtrack::new(ta.clone(), tb.clone(), Mode::Iso, limits.search_nodes);
    if bt.next()? {
        let map = bt.map.iter().map(|&x| x as Elem).collect();
        Ok(Some(Morphism::from_map(ta.clone(), b.clone(), map, MorphismKind::Isomorphism)))
    } else {
        Ok(None)
    }
}

/// Which part of a twisted-product ambient an embedding search may use.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Support {
    pub components: Vec<usize>,
    /// Indices of `D` generators; `None` means all generators acting on the components.
    pub d_bits: Option<Vec<usize>>,
}

pub fn find_embedding(h: &Group, g: &Group, support: Option<&Support>) -> Result<Option<Morphism>> {
    find_embedding_with(h, g, support, &Limits::default())
}

pub fn find_embedding_with(h: &Group, g: &Group, support: Option<&Support>, limits: &Limits) -> Result<Option<Morphism>> {
    let th = h.table()?;
    if !g.order().is_multiple_of(th.order() as u64) {
        return Ok(None);
    }
    match g {
        Group::Table(tg) => {
            let mut bt = Backtrack::new(th.clone(), tg.clone(), Mode::Embed, limits.search_nodes);
            if bt.next()? {
                let map = bt.map.iter().map(|&x| x as Elem).collect();
                Ok(Some(Morphism::from_map(th.clone(), g.clone(), map, MorphismKind::Monomorphism)))
            } else {
                Ok(None)
            }
        }
        Group::Twisted(tw) => match support {
            Some(s) => {
                let bits = match &s.d_bits {
                    Some(b) => b.clone(),
                    None => {
                        let mut b: Vec<usize> = s.components.iter().flat_map(|&c| tw.bits_acting_on(c)).collect();
                        b.sort_unstable();
                        b.dedup();
                        b
                    }
                };
                if tw.support_order(&s.components, &bits) > limits.table as u64 {
                    return Err(Error::OrderLimitExceeded {
                        order: tw.support_order(&s.components, &bits) as u128,
                        limit: limits.table,
                    });
                }
                let sub = crate::group::generated_subgroup_with(g, &tw.support_generators(&s.components, &bits), limits)?;
                let inner = Group::Table(sub.as_group.clone());
                Ok(find_embedding_with(h, &inner, None, limits)?.map(|m| {
                    let map = m.map.iter().map(|&x| sub.elements[x as usize]).collect();
                    Morphism::from_map(th.clone(), g.clone(), map, MorphismKind::Monomorphism)
                }))
            }
            None => find_embedding_auto(h, g, limits),
        },
    }
}

/// Supports of at most two components, in a fixed order, whose realized subgroup
/// fits the table limit.
pub fn candidate_supports(tw: &crate::group::TwistedGroup, target_order: u64, limits: &Limits) -> Vec<Support> {
    let k = tw.components().len();
    let mut comp_sets: Vec<Vec<usize>> = (0..k).map(|c| vec![c]).collect();
    for a in 0..k {
        for b in a + 1..k {
            comp_sets.push(vec![a, b]);
        }
    }
    let mut out = Vec::new();
    for comps in comp_sets {
        let mut acting: Vec<usize> = comps.iter().flat_map(|&c| tw.bits_acting_on(c)).collect();
        acting.sort_unstable();
        acting.dedup();
        let mut bit_sets: Vec<Vec<usize>> = vec![Vec::new()];
        for &b in &acting {
            bit_sets.push(vec![b]);
        }
        for (i, &a) in acting.iter().enumerate() {
            for &b in &acting[i + 1..] {
                bit_sets.push(vec![a, b]);
            }
        }
        // A single D generator acting elsewhere can still contribute an involution.
        for b in 0..tw.d_rank() {
            if !acting.contains(&b) {
                bit_sets.push(vec![b]);
            }
        }
        for bits in bit_sets {
            let order = tw.support_order(&comps, &bits);
            if order.is_multiple_of(target_order) && order <= limits.table as u64 {
                out.push(Support { components: comps.clone(), d_bits: Some(bits) });
            }
        }
    }
    out
}

fn find_embedding_auto(h: &Group, g: &Group, limits: &Limits) -> Result<Option<Morphism>> {
    let Group::Twisted(tw) = g else { return find_embedding_with(h, g, None, limits) };
    for s in candidate_supports(tw, h.order(), limits) {
        if let Some(m) = find_embedding_with(h, g, Some(&s), limits)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Stream of all automorphisms of a table group.
pub struct AutomorphismStream {
    group: Arc<TableGroup>,
    inner: AutInner,
    count: u64,
    budget: u64,
    failed: bool,
}

enum AutInner {
    Generic(Box<Backtrack>),
    Linear(linear::GlIter),
}

impl AutomorphismStream {
    pub fn count_so_far(&self) -> u64 {
        self.count
    }

    /// Next automorphism as a raw element map.
    pub fn next_map(&mut self) -> Option<Result<Vec<u32>>> {
        if self.failed {
            return None;
        }
        let next = match &mut self.inner {
            AutInner::Generic(bt) => match bt.next() {
                Ok(true) => Some(bt.map.clone()),
                Ok(false) => None,
                Err(e) => {
                    self.failed = true;
                    return Some(Err(e));
                }
            },
            AutInner::Linear(it) => it.next(),
        };
        let map = next?;
        self.count += 1;
        if self.count > self.budget {
            self.failed = true;
            return Some(Err(Error::AutBudgetExceeded(self.budget)));
        }
        Some(Ok(map))
    }
}

impl Iterator for AutomorphismStream {
    type Item = Result<Morphism>;

    fn next(&mut self) -> Option<Self::Item> {
        let map = self.next_map()?;
        Some(map.map(|m| {
            Morphism::from_map(
                self.group.clone(),
                Group::Table(self.group.clone()),
                m.into_iter().map(|x| x as Elem).collect(),
                MorphismKind::Automorphism,
            )
        }))
    }
}

pub fn automorphisms(g: &Group) -> Result<AutomorphismStream> {
    automorphisms_with(g, &Limits::default(), true)
}

/// Automorphism stream; `allow_linear` enables the elementary abelian shortcut.
pub fn automorphisms_with(g: &Group, limits: &Limits, allow_linear: bool) -> Result<AutomorphismStream> {
    let t = g.table()?.clone();
    let inner = match linear::elementary_abelian_basis(&t).filter(|_| allow_linear) {
        Some((p, basis)) => AutInner::Linear(linear::GlIter::new(t.clone(), p, basis)),
        None => {
            AutInner::Generic(Box::new(Backtrack::new(t.clone(), t.clone(), Mode::Auto, u64::MAX)))
        }
    };
    Ok(AutomorphismStream { group: t, inner, count: 0, budget: limits.automorphisms, failed: false })
}

pub fn count_automorphisms(g: &Group, limits: &Limits) -> Result<u64> {
    let mut s = automorphisms_with(g, limits, true)?;
    while let Some(r) = s.next_map() {
        r?;
    }
    Ok(s.count_so_far())
}
