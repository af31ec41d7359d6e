//! Dense multiplication-table groups.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::expr::GroupExpr;
use crate::perm::Perm;

/// A finite group given by its full multiplication table. Element `0` is the identity.
pub struct TableGroup {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    names: Vec<String>,
    gens: Vec<u32>,
    perms: HashMap<Perm, u32>,
    pub(crate) expr: Option<GroupExpr>,
    info: OnceLock<Info>,
    tree: OnceLock<(Vec<u32>, Vec<u32>)>,
    pub(crate) search_gens: OnceLock<Vec<u32>>,
    pub(crate) fingerprint: OnceLock<crate::morphism::Fingerprint>,
}

/// Per-element invariants computed once on demand.
pub struct Info {
    pub orders: Vec<u32>,
    /// Class index of each element; classes are numbered by their least element.
    pub class_of: Vec<u32>,
    pub class_reps: Vec<u32>,
    pub class_sizes: Vec<u32>,
    /// Number of `y` with `y^2 = x`.
    pub sqrt_counts: Vec<u32>,
}

impl std::fmt::Debug for TableGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TableGroup").field("order", &self.n).field("names", &self.names).finish()
    }
}

impl TableGroup {
    /// Wraps a raw table. The caller guarantees it is a group table with identity 0;
    /// `check_table` verifies that claim.
    pub fn from_table(n: usize, mul: Vec<u32>, names: Vec<String>, gens: Vec<u32>) -> TableGroup {
        assert_eq!(mul.len(), n * n);
        let mut inv = vec![0u32; n];
        for x in 0..n {
            if let Some(y) = (0..n).find(|&y| mul[x * n + y] == 0) {
                inv[x] = y as u32;
            }
        }
        TableGroup {
            n,
            mul,
            inv,
            names,
            gens,
            perms: HashMap::new(),
            expr: None,
            info: OnceLock::new(),
            tree: OnceLock::new(),
            search_gens: OnceLock::new(),
            fingerprint: OnceLock::new(),
        }
    }

    /// Builds the group generated by `gens` inside some ambient structure given by `mul`.
    /// Elements are numbered in breadth-first order from the identity; returns the table
    /// and the ambient value of each element.
    pub fn from_closure<T, F>(gens: &[T], identity: T, mul: F, limit: usize) -> Result<(TableGroup, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let k = gens.len();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<T, u32> = HashMap::new();
        index.insert(identity, 0);
        let mut right: Vec<u32> = Vec::new();
        let mut parent = vec![u32::MAX];
        let mut pgen = vec![u32::MAX];
        let mut i = 0;
        while i < elements.len() {
            for (j, g) in gens.iter().enumerate() {
                let y = mul(&elements[i], g);
                let idx = match index.get(&y) {
                    Some(&idx) => idx,
                    None => {
                        let idx = elements.len() as u32;
                        if elements.len() >= limit {
                            return Err(Error::SubgroupLimitExceeded(limit));
                        }
                        index.insert(y.clone(), idx);
                        elements.push(y);
                        parent.push(i as u32);
                        pgen.push(j as u32);
                        idx
                    }
                };
                right.push(idx);
            }
            i += 1;
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        let mut inv = vec![0u32; n];
        for x in 0..n {
            let row = x * n;
            table[row] = x as u32;
            if x == 0 {
                inv[0] = 0;
            }
            for y in 1..n {
                let p = parent[y] as usize;
                let prev = table[row + p] as usize;
                let v = right[prev * k + pgen[y] as usize];
                table[row + y] = v;
                if v == 0 {
                    inv[x] = y as u32;
                }
            }
        }
        let gen_idx: Vec<u32> = gens.iter().map(|g| index[g]).collect();
        let group = TableGroup {
            n,
            mul: table,
            inv,
            names: Vec::new(),
            gens: gen_idx,
            perms: HashMap::new(),
            expr: None,
            info: OnceLock::new(),
            tree: OnceLock::new(),
            search_gens: OnceLock::new(),
            fingerprint: OnceLock::new(),
        };
        Ok((group, elements))
    }

    pub fn with_names(mut self, names: Vec<String>) -> TableGroup {
        assert_eq!(names.len(), self.gens.len());
        self.names = names;
        self
    }

    pub fn with_bindings(mut self, names: Vec<String>, gens: Vec<u32>) -> TableGroup {
        assert_eq!(names.len(), gens.len());
        self.names = names;
        self.gens = gens;
        self.tree = OnceLock::new();
        self
    }

    pub fn with_perms(mut self, perms: HashMap<Perm, u32>) -> TableGroup {
        self.perms = perms;
        self
    }

    pub fn with_expr(mut self, expr: GroupExpr) -> TableGroup {
        self.expr = Some(expr);
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn table(&self) -> &[u32] {
        &self.mul
    }

    pub fn pow(&self, x: u32, k: i64) -> u32 {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut e = k.unsigned_abs();
        let (mut acc, mut sq) = (0u32, base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutator(&self, x: u32, y: u32) -> u32 {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn perm_lookup(&self) -> &HashMap<Perm, u32> {
        &self.perms
    }

    pub fn expr(&self) -> Option<&GroupExpr> {
        self.expr.as_ref()
    }

    pub fn info(&self) -> &Info {
        self.info.get_or_init(|| self.compute_info())
    }

    pub fn element_order(&self, x: u32) -> u32 {
        self.info().orders[x as usize]
    }

    pub fn centralizer_size(&self, x: u32) -> u32 {
        let info = self.info();
        self.n as u32 / info.class_sizes[info.class_of[x as usize] as usize]
    }

    pub fn is_abelian(&self) -> bool {
        self.info().class_sizes.iter().all(|&s| s == 1)
    }

    fn compute_info(&self) -> Info {
        let n = self.n;
        let mut orders = vec![0u32; n];
        orders[0] = 1;
        for x in 1..n {
            if orders[x] != 0 {
                continue;
            }
            let mut powers = vec![x as u32];
            let mut y = x as u32;
            while y != 0 {
                y = self.mul(y, x as u32);
                powers.push(y);
            }
            let m = powers.len() as u32;
            for (i, &p) in powers.iter().enumerate() {
                if orders[p as usize] == 0 {
                    orders[p as usize] = m / gcd(m, i as u32 + 1);
                }
            }
        }
        let gens = self.generating_set_for_conjugation();
        let mut class_of = vec![u32::MAX; n];
        let mut class_reps = Vec::new();
        let mut class_sizes = Vec::new();
        for x in 0..n {
            if class_of[x] != u32::MAX {
                continue;
            }
            let id = class_reps.len() as u32;
            class_of[x] = id;
            let mut stack = vec![x as u32];
            let mut size = 0u32;
            while let Some(y) = stack.pop() {
                size += 1;
                for &g in &gens {
                    let z = self.conj(g, y);
                    if class_of[z as usize] == u32::MAX {
                        class_of[z as usize] = id;
                        stack.push(z);
                    }
                }
            }
            class_reps.push(x as u32);
            class_sizes.push(size);
        }
        let mut sqrt_counts = vec![0u32; n];
        for y in 0..n as u32 {
            sqrt_counts[self.mul(y, y) as usize] += 1;
        }
        Info { orders, class_of, class_reps, class_sizes, sqrt_counts }
    }

    /// Generators of the whole group: the bindings if they generate, else all elements.
    fn generating_set_for_conjugation(&self) -> Vec<u32> {
        if !self.gens.is_empty() && self.tree().0.iter().skip(1).all(|&p| p != u32::MAX) {
            self.gens.clone()
        } else if self.n == 1 {
            Vec::new()
        } else {
            (1..self.n as u32).collect()
        }
    }

    /// Breadth-first spanning tree over right multiplication by the bound generators:
    /// `(parent, generator index)` per element, `u32::MAX` where unreachable.
    pub fn tree(&self) -> &(Vec<u32>, Vec<u32>) {
        self.tree.get_or_init(|| {
            let mut parent = vec![u32::MAX; self.n];
            let mut pgen = vec![u32::MAX; self.n];
            let mut seen = vec![false; self.n];
            seen[0] = true;
            let mut queue = std::collections::VecDeque::from([0u32]);
            while let Some(x) = queue.pop_front() {
                for (j, &g) in self.gens.iter().enumerate() {
                    let y = self.mul(x, g);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        parent[y as usize] = x;
                        pgen[y as usize] = j as u32;
                        queue.push_back(y);
                    }
                }
            }
            (parent, pgen)
        })
    }

    /// Shortest word in the bound generators that evaluates to `x`, as generator indices.
    pub fn word_indices(&self, x: u32) -> Option<Vec<u32>> {
        let (parent, pgen) = self.tree();
        let mut out = Vec::new();
        let mut cur = x;
        while cur != 0 {
            if parent[cur as usize] == u32::MAX {
                return None;
            }
            out.push(pgen[cur as usize]);
            cur = parent[cur as usize];
        }
        out.reverse();
        Some(out)
    }

    /// Verifies identity, inverses, and (for order at most 512) associativity.
    pub fn check_table(&self) -> bool {
        let n = self.n;
        if self.mul.len() != n * n || n == 0 {
            return false;
        }
        for x in 0..n as u32 {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return false;
            }
            let i = self.inv(x);
            if i as usize >= n || self.mul(x, i) != 0 || self.mul(i, x) != 0 {
                return false;
            }
        }
        // Latin square rows guarantee cancellation.
        let mut seen = vec![0u32; n];
        for x in 0..n {
            for y in 0..n {
                let v = self.mul[x * n + y] as usize;
                if v >= n || seen[v] == x as u32 + 1 {
                    return false;
                }
                seen[v] = x as u32 + 1;
            }
        }
        if n <= 512 {
            for a in 0..n as u32 {
                for b in 0..n as u32 {
                    let ab = self.mul(a, b);
                    for c in 0..n as u32 {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Corrupts one entry; used to exercise `check_table`.
    #[doc(hidden)]
    pub fn corrupted(&self, x: u32, y: u32, value: u32) -> TableGroup {
        let mut mul = self.mul.clone();
        mul[x as usize * self.n + y as usize] = value;
        TableGroup::from_table(self.n, mul, self.names.clone(), self.gens.clone())
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: u32) -> TableGroup {
        let (g, _) = TableGroup::from_closure(&[1u32 % n], 0u32, |a, b| (a + b) % n, 1000).unwrap();
        g.with_names(vec!["a".into()])
    }

    #[test]
    fn closure_builds_cyclic_tables() {
        let g = cyclic(6);
        assert_eq!(g.order(), 6);
        assert!(g.check_table());
        assert_eq!(g.element_order(g.gens()[0]), 6);
        assert!(g.is_abelian());
        assert_eq!(g.info().sqrt_counts[0], 2);
    }

    #[test]
    fn closure_respects_limit() {
        let r = TableGroup::from_closure(&[1u32], 0u32, |a, b| (a + b) % 100, 10);
        assert!(matches!(r, Err(Error::SubgroupLimitExceeded(10))));
    }

    #[test]
    fn corruption_is_detected() {
        let g = cyclic(5);
        assert!(!g.corrupted(2, 3, 4).check_table());
    }

    #[test]
    fn words_follow_bindings() {
        let g = cyclic(5);
        let x = g.pow(g.gens()[0], 3);
        assert_eq!(g.word_indices(x).unwrap(), vec![0, 0, 0]);
    }
}
