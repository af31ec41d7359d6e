//! Enumeration of all groups of a given order up to isomorphism.
//!
//! Every group that is not perfect has a normal subgroup of prime index, so the
//! groups of order `n` are the cyclic extensions of the groups of order `n / p`
//! together with the perfect groups of order `n`, which are supplied as seeds.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::catalog::{self, factorize};
use crate::error::{Error, Result};
use crate::expr::GroupExpr;
use crate::group::{construct_with, Group, Limits, TableGroup};
use crate::linear::{self, Coordinates};
use crate::morphism::{automorphisms_with, is_isomorphic_with, search_generators, Fingerprint};
use crate::perm::Perm;
use crate::ENGINE_VERSION;

/// Largest order whose perfect groups are all among the seeds.
pub const SEED_COVERAGE: u64 = 256;

pub struct CatalogEntry {
    pub recipe: GroupExpr,
    pub group: Group,
    pub fingerprint: Fingerprint,
}

impl std::fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CatalogEntry").field("fingerprint", &self.fingerprint.canonical()).finish()
    }
}

#[derive(Debug)]
pub struct Catalog {
    pub order: u64,
    pub method: String,
    pub entries: Vec<CatalogEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CatalogFile {
    pub order: u64,
    pub engine_version: String,
    pub method: String,
    pub entries: Vec<CatalogFileEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CatalogFileEntry {
    pub recipe: String,
    pub fingerprint: String,
    pub table_hash: String,
}

pub fn table_hash(t: &TableGroup) -> String {
    let mut h = Sha256::new();
    for &x in t.table() {
        h.update(x.to_le_bytes());
    }
    hex::encode(h.finalize())
}

impl Catalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn groups(&self) -> impl Iterator<Item = &Group> {
        self.entries.iter().map(|e| &e.group)
    }

    pub fn to_file(&self) -> CatalogFile {
        CatalogFile {
            order: self.order,
            engine_version: ENGINE_VERSION.to_string(),
            method: self.method.clone(),
            entries: self
                .entries
                .iter()
                .map(|e| CatalogFileEntry {
                    recipe: e.recipe.to_string(),
                    fingerprint: e.fingerprint.canonical(),
                    table_hash: table_hash(e.group.as_table().expect("catalog groups are tables")),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("catalog serializes")
    }

    /// Rebuilds a catalog from its file form, checking every table hash.
    pub fn from_file(file: &CatalogFile, limits: &Limits) -> Result<Catalog> {
        let mut entries = Vec::new();
        for e in &file.entries {
            let recipe = GroupExpr::parse(&e.recipe)?;
            let group = construct_with(&recipe, limits)?;
            let t = group.table()?;
            if table_hash(t) != e.table_hash {
                return Err(Error::Catalog(format!("table hash mismatch for {}", e.recipe)));
            }
            let fingerprint = Fingerprint::of(t);
            if fingerprint.canonical() != e.fingerprint {
                return Err(Error::Catalog(format!("fingerprint mismatch for {}", e.recipe)));
            }
            entries.push(CatalogEntry { recipe, group, fingerprint });
        }
        Ok(Catalog { order: file.order, method: file.method.clone(), entries })
    }

    /// Index of the entry isomorphic to `g`.
    pub fn position(&self, g: &Group) -> Result<Option<usize>> {
        let fp = Fingerprint::of(g.table()?);
        for (i, e) in self.entries.iter().enumerate() {
            if e.fingerprint == fp && is_isomorphic_with(&e.group, g, &Limits::default())?.is_some() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

/// Enumeration tier needed for order `n`, or `None` when no tier covers it.
pub fn required_tier(n: u64) -> Option<u8> {
    match n {
        0 => None,
        1..=64 => Some(1),
        72 | 96 | 120 | 144 => Some(2),
        65..=256 => Some(3),
        _ => None,
    }
}

/// The right regular representation of `t` on its own generating sequence, as a recipe.
pub fn regular_recipe(t: &TableGroup) -> GroupExpr {
    let n = t.order();
    let generators = search_generators(t)
        .into_iter()
        .map(|g| Perm::from_images((0..n as u32).map(|x| t.mul(x, g) as u16).collect()))
        .collect();
    GroupExpr::PermGroup { degree: n as u32, generators }
}

fn entry_from_table(t: &TableGroup, limits: &Limits) -> Result<CatalogEntry> {
    let recipe = regular_recipe(t);
    let group = construct_with(&recipe, limits)?;
    let fingerprint = Fingerprint::of(group.table()?);
    Ok(CatalogEntry { recipe, group, fingerprint })
}

/// Keeps the first group of each isomorphism class, in input order.
pub fn dedupe(groups: Vec<Arc<TableGroup>>, limits: &Limits) -> Result<Vec<Arc<TableGroup>>> {
    let fps: Vec<String> = groups.par_iter().map(|t| Fingerprint::of(t).canonical()).collect();
    let mut buckets: HashMap<String, Vec<usize>> = HashMap::new();
    let mut kept = Vec::new();
    for (i, t) in groups.iter().enumerate() {
        let bucket = buckets.entry(fps[i].clone()).or_default();
        let mut seen = false;
        for &j in bucket.iter() {
            let other: &Arc<TableGroup> = &kept[j];
            if is_isomorphic_with(&Group::Table(other.clone()), &Group::Table(t.clone()), limits)?.is_some() {
                seen = true;
                break;
            }
        }
        if !seen {
            bucket.push(kept.len());
            kept.push(t.clone());
        }
    }
    Ok(kept)
}

/// All groups of order `|base| * p` with a normal subgroup isomorphic to `base`
/// and quotient of order `p`, up to isomorphism.
pub fn cyclic_extensions(base: &Group, p: u32) -> Result<Vec<Group>> {
    let t = base.table()?;
    let limits = Limits::default();
    Ok(cyclic_extensions_with(t, p, &limits, true)?.into_iter().map(Group::Table).collect())
}

/// As `cyclic_extensions`; `allow_linear` selects the matrix path for elementary abelian bases.
pub fn cyclic_extensions_with(base: &Arc<TableGroup>, p: u32, limits: &Limits, allow_linear: bool) -> Result<Vec<Arc<TableGroup>>> {
    if base.order() * p as usize > limits.table {
        return Err(Error::OrderLimitExceeded { order: (base.order() * p as usize) as u128, limit: limits.table });
    }
    let pairs = match linear::elementary_abelian_basis(base).filter(|_| allow_linear) {
        Some((q, basis)) => linear_pairs(base, q, basis, p),
        None => generic_pairs(base, p, limits)?,
    };
    let groups: Vec<Arc<TableGroup>> = pairs.iter().map(|(alpha, a)| Arc::new(extension_table(base, alpha, *a, p))).collect();
    dedupe(groups, limits)
}

/// Multiplication table of `N.C_p` with `t n t^-1 = alpha(n)` and `t^p = a`;
/// element `(x, i)` stands for `x t^i` and has index `i |N| + x`.
pub fn extension_table(base: &TableGroup, alpha: &[u32], a: u32, p: u32) -> TableGroup {
    let m = base.order();
    let p = p as usize;
    let n = m * p;
    let mut powers: Vec<Vec<u32>> = vec![(0..m as u32).collect()];
    for i in 1..p {
        let prev = &powers[i - 1];
        powers.push(prev.iter().map(|&x| alpha[x as usize]).collect());
    }
    let mut mul = vec![0u32; n * n];
    for i in 0..p {
        for x in 0..m {
            let row = (i * m + x) * n;
            for j in 0..p {
                let wrap = i + j >= p;
                let k = (i + j) % p;
                for y in 0..m {
                    let mut z = base.mul(x as u32, powers[i][y]);
                    if wrap {
                        z = base.mul(z, a);
                    }
                    mul[row + j * m + y] = (k * m) as u32 + z;
                }
            }
        }
    }
    let mut gens: Vec<u32> = search_generators(base);
    gens.push(m as u32);
    let names = (1..gens.len()).map(|i| format!("g{i}")).chain(std::iter::once("t".to_string())).collect();
    TableGroup::from_table(n, mul, names, gens)
}

fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    // x -> a(b(x))
    b.iter().map(|&y| a[y as usize]).collect()
}

fn inverse_map(a: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; a.len()];
    for (x, &y) in a.iter().enumerate() {
        out[y as usize] = x as u32;
    }
    out
}

fn power_map(a: &[u32], k: u32) -> Vec<u32> {
    let mut out: Vec<u32> = (0..a.len() as u32).collect();
    for _ in 0..k {
        out = compose(a, &out);
    }
    out
}

fn inner(t: &TableGroup, g: u32) -> Vec<u32> {
    (0..t.order() as u32).map(|x| t.conj(g, x)).collect()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
}

/// Extension data `(alpha, a)` up to the equivalences that preserve the resulting
/// group: conjugation in `Aut(N)`, composition with inner automorphisms and powers.
fn generic_pairs(t: &Arc<TableGroup>, p: u32, limits: &Limits) -> Result<Vec<(Vec<u32>, u32)>> {
    let n = t.order() as u32;
    let gens = search_generators(t);
    let mut inn: HashMap<Vec<u32>, u32> = HashMap::new();
    for g in 0..n {
        inn.entry(inner(t, g)).or_insert(g);
    }
    let mut stream = automorphisms_with(&Group::Table(t.clone()), limits, false)?;
    let mut sgs: BTreeMap<(usize, u32), Vec<u32>> = BTreeMap::new();
    let mut selected: Vec<Vec<u32>> = Vec::new();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut count = 0u64;
    while let Some(map) = stream.next_map() {
        let map = map?;
        count += 1;
        if count > limits.materialize {
            return Err(Error::AutBudgetExceeded(limits.materialize));
        }
        if let Some(level) = gens.iter().position(|&g| map[g as usize] != g) {
            sgs.entry((level, map[gens[level] as usize])).or_insert_with(|| map.clone());
        }
        if inn.contains_key(&power_map(&map, p)) {
            index.insert(map.clone(), selected.len());
            selected.push(map);
        }
    }
    let mut parent: Vec<usize> = (0..selected.len()).collect();
    let conjugators: Vec<(Vec<u32>, Vec<u32>)> = sgs.into_values().map(|b| (inverse_map(&b), b)).collect();
    let inner_gens: Vec<Vec<u32>> = gens.iter().map(|&g| inner(t, g)).collect();
    for i in 0..selected.len() {
        let alpha = selected[i].clone();
        let mut images = Vec::new();
        for (binv, b) in &conjugators {
            images.push(compose(b, &compose(&alpha, binv)));
        }
        for ig in &inner_gens {
            images.push(compose(&alpha, ig));
        }
        for k in 2..p {
            images.push(power_map(&alpha, k));
        }
        for img in images {
            let j = *index.get(&img).expect("the selected set is closed under these moves");
            union(&mut parent, i, j);
        }
    }
    let center: Vec<u32> = {
        let info = t.info();
        (0..n).filter(|&x| info.class_sizes[info.class_of[x as usize] as usize] == 1).collect()
    };
    let mut out = Vec::new();
    for i in 0..selected.len() {
        if find(&mut parent, i) != i {
            continue;
        }
        let alpha = &selected[i];
        let a0 = inn[&power_map(alpha, p)];
        for &z in &center {
            let a = t.mul(a0, z);
            if alpha[a as usize] == a {
                out.push((alpha.clone(), a));
            }
        }
    }
    Ok(out)
}

/// Extension data for an elementary abelian base: `alpha` runs over conjugacy class
/// representatives in `GL(k, q)` with `alpha^p = 1`, and `a` over fixed points of
/// `alpha` modulo the image of the norm map `m -> m alpha(m) ... alpha^(p-1)(m)`.
fn linear_pairs(t: &TableGroup, q: u32, basis: Vec<u32>, p: u32) -> Vec<(Vec<u32>, u32)> {
    let coords = Coordinates::new(t, q, basis);
    let n = t.order() as u32;
    let mut out = Vec::new();
    for m in linear::class_reps_of_order_dividing(q, coords.k, p) {
        let alpha = coords.matrix_map(&m);
        let fixed: Vec<u32> = (0..n).filter(|&x| alpha[x as usize] == x).collect();
        let mut norm_image = vec![false; n as usize];
        for x in 0..n {
            let mut acc = 0u32;
            let mut y = x;
            for _ in 0..p {
                acc = t.mul(acc, y);
                y = alpha[y as usize];
            }
            norm_image[acc as usize] = true;
        }
        let image: Vec<u32> = (0..n).filter(|&x| norm_image[x as usize]).collect();
        let mut covered = vec![false; n as usize];
        for &a in &fixed {
            if covered[a as usize] {
                continue;
            }
            for &s in &image {
                covered[t.mul(a, s) as usize] = true;
            }
            out.push((alpha.clone(), a));
        }
    }
    out
}

/// Enumeration session: tier, limits, optional disk cache and an in-memory memo.
pub struct Enumerator {
    pub tier: u8,
    pub limits: Limits,
    pub cache_dir: Option<PathBuf>,
    memo: Mutex<BTreeMap<u64, Arc<Catalog>>>,
}

impl Enumerator {
    pub fn new(tier: u8) -> Enumerator {
        Enumerator { tier, limits: Limits::default(), cache_dir: None, memo: Mutex::new(BTreeMap::new()) }
    }

    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Enumerator {
        self.cache_dir = Some(dir.into());
        self
    }

    /// Tier from `MGE_TIER` (default 1) and cache directory from `MGE_CACHE_DIR`.
    pub fn from_env() -> Result<Enumerator> {
        let tier = tier_from_env()?;
        let mut e = Enumerator::new(tier);
        if let Ok(dir) = std::env::var("MGE_CACHE_DIR") {
            if !dir.is_empty() {
                e = e.with_cache_dir(dir);
            }
        }
        Ok(e)
    }

    pub fn check_order(&self, n: u64) -> Result<()> {
        if let Some(d) = (SEED_COVERAGE + 1..=n).find(|d| n.is_multiple_of(*d)) {
            return Err(Error::IncompleteSeedSet { order: n, divisor: d });
        }
        match required_tier(n) {
            Some(r) if r <= self.tier => Ok(()),
            Some(r) => Err(Error::TierLimitExceeded { order: n, required: r, tier: self.tier }),
            None => Err(Error::TierLimitExceeded { order: n, required: u8::MAX, tier: self.tier }),
        }
    }

    pub fn catalog(&self, n: u64) -> Result<Arc<Catalog>> {
        self.check_order(n)?;
        if let Some(c) = self.memo.lock().unwrap().get(&n) {
            return Ok(c.clone());
        }
        let cat = match self.load(n) {
            Some(c) => c,
            None => {
                let c = self.compute(n)?;
                self.store(&c)?;
                c
            }
        };
        let cat = Arc::new(cat);
        self.memo.lock().unwrap().insert(n, cat.clone());
        Ok(cat)
    }

    fn cache_path(&self, n: u64) -> Option<PathBuf> {
        self.cache_dir.as_ref().map(|d| d.join(format!("catalog-{n}-v{ENGINE_VERSION}.json")))
    }

    fn load(&self, n: u64) -> Option<Catalog> {
        let path = self.cache_path(n)?;
        let text = fs::read_to_string(path).ok()?;
        let file: CatalogFile = serde_json::from_str(&text).ok()?;
        if file.order != n || file.engine_version != ENGINE_VERSION {
            return None;
        }
        Catalog::from_file(&file, &self.limits).ok()
    }

    fn store(&self, c: &Catalog) -> Result<()> {
        let Some(path) = self.cache_path(c.order) else { return Ok(()) };
        write_atomic(&path, c.to_json().as_bytes())
    }

    fn compute(&self, n: u64) -> Result<Catalog> {
        let mut candidates: Vec<Arc<TableGroup>> = Vec::new();
        for seed in &catalog::registry().seeds {
            if seed.order == n {
                let g = construct_with(&GroupExpr::parse(&seed.recipe)?, &self.limits)?;
                candidates.push(g.table()?.clone());
            }
        }
        if n == 1 {
            candidates.push(Arc::new(TableGroup::from_table(1, vec![0], Vec::new(), Vec::new())));
        }
        let mut jobs = Vec::new();
        for (p, _) in factorize(n) {
            let sub = self.catalog(n / p)?;
            for e in &sub.entries {
                jobs.push((e.group.table()?.clone(), p as u32));
            }
        }
        let results: Vec<Result<Vec<Arc<TableGroup>>>> =
            jobs.par_iter().map(|(base, p)| cyclic_extensions_with(base, *p, &self.limits, true)).collect();
        for r in results {
            candidates.extend(r?);
        }
        let reps = dedupe(candidates, &self.limits)?;
        let mut entries = reps.iter().map(|t| entry_from_table(t, &self.limits)).collect::<Result<Vec<_>>>()?;
        entries.sort_by_cached_key(|e| (e.fingerprint.canonical(), e.recipe.to_string()));
        Ok(Catalog { order: n, method: "cyclic-extension".into(), entries })
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn tier_from_env() -> Result<u8> {
    match std::env::var("MGE_TIER") {
        Err(_) => Ok(1),
        Ok(s) if s.is_empty() => Ok(1),
        Ok(s) => match s.trim().parse::<u8>() {
            Ok(t @ 1..=3) => Ok(t),
            _ => Err(Error::Catalog(format!("MGE_TIER must be 1, 2 or 3, not {s:?}"))),
        },
    }
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

static SESSION: OnceLock<Enumerator> = OnceLock::new();

/// Process-wide session configured from the environment.
pub fn session() -> &'static Enumerator {
    SESSION.get_or_init(|| Enumerator::from_env().unwrap_or_else(|_| Enumerator::new(1)))
}

pub fn enumerate_groups(n: u64) -> Result<Arc<Catalog>> {
    session().catalog(n)
}

/// All groups of order `n <= 10`, found as regular permutation groups of degree `n`
/// generated by at most three elements.
pub fn regular_oracle(n: u64) -> Result<Catalog> {
    if !(1..=10).contains(&n) {
        return Err(Error::OutOfRange(n));
    }
    let n = n as usize;
    let limits = Limits::default();
    if n == 1 {
        let t = TableGroup::from_table(1, vec![0], Vec::new(), Vec::new());
        return Ok(Catalog { order: 1, method: "oracle".into(), entries: vec![entry_from_table(&t, &limits)?] });
    }
    let semiregular = semiregular_perms(n);
    let firsts: Vec<Vec<u8>> = divisors(n as u64)
        .into_iter()
        .filter(|&d| d > 1)
        .map(|d| {
            let d = d as usize;
            (0..n).map(|i| (i / d * d + (i % d + 1) % d) as u8).collect()
        })
        .collect();
    let mut found: Vec<Vec<Vec<u8>>> = Vec::new();
    let mut layer: Vec<Vec<Vec<u8>>> = Vec::new();
    for f in &firsts {
        if let Some(elems) = semiregular_closure(std::slice::from_ref(f), n) {
            layer.push(elems);
        }
    }
    // `layer` holds subgroups generated by one element; two more rounds reach three.
    for _ in 0..2 {
        let mut next: BTreeMap<Vec<Vec<u8>>, ()> = BTreeMap::new();
        for h in &layer {
            if h.len() == n {
                found.push(h.clone());
                continue;
            }
            for s in &semiregular {
                if h.binary_search(s).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(s.clone());
                if let Some(elems) = semiregular_closure(&gens, n) {
                    next.insert(elems, ());
                }
            }
        }
        layer = next.into_keys().collect();
    }
    found.extend(layer.into_iter().filter(|h| h.len() == n));
    let tables: Vec<Arc<TableGroup>> = found
        .iter()
        .map(|elems| {
            let idx: HashMap<&Vec<u8>, u32> = elems.iter().enumerate().map(|(i, e)| (e, i as u32)).collect();
            let mut mul = vec![0u32; n * n];
            for (i, a) in elems.iter().enumerate() {
                for (j, b) in elems.iter().enumerate() {
                    let c: Vec<u8> = a.iter().map(|&x| b[x as usize]).collect();
                    mul[i * n + j] = idx[&c];
                }
            }
            Arc::new(TableGroup::from_table(n, mul, Vec::new(), (1..n as u32).collect()))
        })
        .collect();
    let reps = dedupe(tables, &limits)?;
    let mut entries = reps.iter().map(|t| entry_from_table(t, &limits)).collect::<Result<Vec<_>>>()?;
    entries.sort_by_cached_key(|e| (e.fingerprint.canonical(), e.recipe.to_string()));
    Ok(Catalog { order: n as u64, method: "oracle".into(), entries })
}

/// Permutations of `0..n` all of whose cycles have one common length `d > 1`.
fn semiregular_perms(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = vec![u8::MAX; n];
    fn rec(cur: &mut Vec<u8>, n: usize, d: usize, out: &mut Vec<Vec<u8>>) {
        let Some(start) = cur.iter().position(|&x| x == u8::MAX) else {
            out.push(cur.clone());
            return;
        };
        let free: Vec<usize> = (0..n).filter(|&i| i != start && cur[i] == u8::MAX).collect();
        // Choose the remaining d - 1 points of the cycle through `start`, in order.
        fn pick(cur: &mut Vec<u8>, n: usize, d: usize, out: &mut Vec<Vec<u8>>, cycle: &mut Vec<usize>, free: &[usize]) {
            if cycle.len() == d {
                for i in 0..d {
                    cur[cycle[i]] = cycle[(i + 1) % d] as u8;
                }
                rec(cur, n, d, out);
                for &i in cycle.iter() {
                    cur[i] = u8::MAX;
                }
                return;
            }
            for &x in free {
                if !cycle.contains(&x) {
                    cycle.push(x);
                    pick(cur, n, d, out, cycle, free);
                    cycle.pop();
                }
            }
        }
        let mut cycle = vec![start];
        pick(cur, n, d, out, &mut cycle, &free);
    }
    for d in divisors(n as u64).into_iter().filter(|&d| d > 1) {
        rec(&mut cur, n, d as usize, &mut out);
    }
    out.sort();
    out
}

/// Closure of `gens`, aborted as soon as it exceeds `n` elements or contains a
/// nonidentity element with a fixed point. Returns the sorted elements.
fn semiregular_closure(gens: &[Vec<u8>], n: usize) -> Option<Vec<Vec<u8>>> {
    let id: Vec<u8> = (0..n as u8).collect();
    let mut elems = vec![id.clone()];
    let mut seen: std::collections::HashSet<Vec<u8>> = std::collections::HashSet::from([id]);
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head].clone();
        head += 1;
        for g in gens {
            let y: Vec<u8> = x.iter().map(|&i| g[i as usize]).collect();
            if seen.contains(&y) {
                continue;
            }
            if y.iter().enumerate().any(|(i, &v)| i as u8 == v) || elems.len() == n {
                return None;
            }
            seen.insert(y.clone());
            elems.push(y);
        }
    }
    elems.sort();
    Some(elems)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semiregular_counts() {
        // Fixed-point-free involutions of 4 points: 3; 4-cycles: 6.
        assert_eq!(semiregular_perms(4).len(), 9);
        assert_eq!(semiregular_perms(6).len(), 15 + 40 + 120);
    }

    #[test]
    fn tiers() {
        assert_eq!(required_tier(64), Some(1));
        assert_eq!(required_tier(144), Some(2));
        assert_eq!(required_tier(243), Some(3));
        assert_eq!(required_tier(512), None);
        let e = Enumerator::new(1);
        assert!(matches!(e.check_order(96), Err(Error::TierLimitExceeded { required: 2, .. })));
        assert!(matches!(e.check_order(2 * 263), Err(Error::IncompleteSeedSet { divisor: 263, .. })));
    }
}
