//! Realized groups and their structural operations.

mod construct;
mod ops;
pub mod table;
pub mod twisted;
mod words;

use std::collections::HashMap;
use std::sync::Arc;

pub use construct::{construct, construct_with, expr_order, realize_table};
pub use ops::*;
pub use table::TableGroup;
pub use twisted::TwistedGroup;

use crate::error::{Error, Result};
use crate::expr::GroupExpr;
use crate::perm::Perm;

/// Universal element handle: a table index, or a packed twisted-product element.
pub type Elem = u64;

/// Size limits applied during construction and search.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Largest order realized as a dense table.
    pub table: usize,
    /// Largest subgroup closure computed.
    pub subgroup: usize,
    /// Backtracking node budget for a single isomorphism or embedding search.
    pub search_nodes: u64,
    /// Largest automorphism count streamed.
    pub automorphisms: u64,
    /// Largest number of automorphisms held in memory at once.
    pub materialize: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            table: 20_000,
            subgroup: 50_000,
            search_nodes: 50_000_000,
            automorphisms: 1 << 25,
            materialize: 1 << 20,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Group {
    Table(Arc<TableGroup>),
    Twisted(Arc<TwistedGroup>),
}

impl Group {
    pub fn order(&self) -> u64 {
        match self {
            Group::Table(t) => t.order() as u64,
            Group::Twisted(t) => t.order(),
        }
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match self {
            Group::Table(t) => t.mul(a as u32, b as u32) as Elem,
            Group::Twisted(t) => t.mul(a, b),
        }
    }

    pub fn inv(&self, a: Elem) -> Elem {
        match self {
            Group::Table(t) => t.inv(a as u32) as Elem,
            Group::Twisted(t) => t.inv(a),
        }
    }

    pub fn pow(&self, x: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut e = k.unsigned_abs();
        let (mut acc, mut sq) = (0, base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn as_table(&self) -> Option<&Arc<TableGroup>> {
        match self {
            Group::Table(t) => Some(t),
            Group::Twisted(_) => None,
        }
    }

    pub fn table(&self) -> Result<&Arc<TableGroup>> {
        self.as_table().ok_or(Error::NeedsTable)
    }

    pub fn expr(&self) -> Option<&GroupExpr> {
        match self {
            Group::Table(t) => t.expr(),
            Group::Twisted(t) => t.expr.as_ref(),
        }
    }

    /// Expression text, or a placeholder for groups built without one.
    pub fn expr_text(&self) -> String {
        self.expr().map(|e| e.to_string()).unwrap_or_else(|| format!("<group of order {}>", self.order()))
    }

    /// Generator bindings as `(name, element)` pairs.
    pub fn bindings(&self) -> Vec<(String, Elem)> {
        match self {
            Group::Table(t) => t.names().iter().cloned().zip(t.gens().iter().map(|&g| g as Elem)).collect(),
            Group::Twisted(t) => t.names().iter().cloned().zip(t.gens().iter().copied()).collect(),
        }
    }

    pub fn binding(&self, name: &str) -> Result<Elem> {
        self.bindings()
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, e)| e)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn element_order(&self, x: Elem) -> u64 {
        match self {
            Group::Table(t) => t.element_order(x as u32) as u64,
            Group::Twisted(_) => {
                let mut m = 1;
                let mut y = x;
                while y != 0 {
                    y = self.mul(y, x);
                    m += 1;
                }
                m
            }
        }
    }

    /// Looks up a permutation directly in permutation components.
    fn direct_perm(&self, p: &Perm) -> Option<Elem> {
        match self {
            Group::Table(t) => t.perm_lookup().get(p).map(|&x| x as Elem),
            Group::Twisted(t) => {
                let mut found = None;
                for (c, comp) in t.components().iter().enumerate() {
                    if let Some(&v) = comp.perm_lookup().get(p) {
                        if found.is_some() {
                            return None;
                        }
                        found = Some(t.inject(c, v));
                    }
                }
                found
            }
        }
    }

    /// Resolves a permutation literal: directly, through a binding spelled as that
    /// cycle, or as `(p · t⁻¹) · t` for a binding `t` spelled as a cycle.
    pub fn resolve_perm(&self, p: &Perm) -> Option<Elem> {
        if p.is_identity() {
            return Some(0);
        }
        if let Some(x) = self.direct_perm(p) {
            return Some(x);
        }
        let cycle_bindings: Vec<(Perm, Elem)> = self
            .bindings()
            .into_iter()
            .filter_map(|(name, e)| {
                if name.starts_with('(') {
                    Perm::parse(&name).ok().map(|q| (q, e))
                } else {
                    None
                }
            })
            .collect();
        if let Some((_, e)) = cycle_bindings.iter().find(|(q, _)| q == p) {
            return Some(*e);
        }
        for (q, e) in &cycle_bindings {
            if let Some(x) = self.direct_perm(&p.mul(&q.inverse())) {
                return Some(self.mul(x, *e));
            }
        }
        None
    }

    pub fn eval_word(&self, word: &str) -> Result<Elem> {
        words::eval(self, word)
    }

    /// A word in the generator bindings evaluating to `x`.
    pub fn word_of(&self, x: Elem) -> String {
        words::format(self, x)
    }

    pub fn all_elements(&self) -> Result<Vec<Elem>> {
        match self {
            Group::Table(t) => Ok((0..t.order() as Elem).collect()),
            Group::Twisted(_) => Err(Error::NeedsTable),
        }
    }
}

/// A subgroup of an ambient group, realized as its own table.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub ambient: Group,
    /// Ambient elements, indexed like `as_group`.
    pub elements: Vec<Elem>,
    pub generators: Vec<Elem>,
    pub as_group: Arc<TableGroup>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.index_map().contains_key(&x)
    }

    pub fn index_map(&self) -> HashMap<Elem, u32> {
        self.elements.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect()
    }

    pub fn sorted_elements(&self) -> Vec<Elem> {
        let mut v = self.elements.clone();
        v.sort_unstable();
        v
    }
}
