//! Registry of named constructions, reference tables and order bounds.
//!
//! The registry is a JSON data file compiled into the crate so that expected
//! answers can be audited without reading code.

use std::sync::OnceLock;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::expr::GroupExpr;

#[derive(Clone, Debug, Deserialize)]
pub struct NamedConstruction {
    pub label: String,
    pub recipe: String,
    pub order: u64,
    pub note: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct OrderList {
    pub n: u64,
    pub recipes: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct MinimalRow {
    pub n: u64,
    pub order: u64,
    pub recipes: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct OrderValue {
    pub n: u64,
    pub order: u64,
}

#[derive(Clone, Debug, Deserialize)]
pub struct UptoRow {
    pub n: u64,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Seed {
    pub label: String,
    pub recipe: String,
    pub order: u64,
    pub center: u64,
}

#[derive(Debug, Deserialize)]
pub struct Registry {
    pub groups: Vec<NamedConstruction>,
    /// All groups of each order up to 15.
    pub table1: Vec<OrderList>,
    /// Least order of a group containing all groups of order `n`, with every such group.
    pub table2: Vec<MinimalRow>,
    /// Least order of a group containing all groups of order at most `n`.
    pub table4: Vec<OrderValue>,
    /// Example groups attaining the values of `table4` for `n <= 11`.
    pub table5: Vec<UptoRow>,
    /// Perfect groups injected into the enumeration.
    pub seeds: Vec<Seed>,
}

static REGISTRY: OnceLock<Registry> = OnceLock::new();

pub fn registry() -> &'static Registry {
    REGISTRY.get_or_init(|| serde_json::from_str(include_str!("../data/registry.json")).expect("registry data file is valid"))
}

pub fn construction(label: &str) -> Result<&'static NamedConstruction> {
    let reg = registry();
    let canonical = family_label(label);
    reg.groups
        .iter()
        .find(|g| g.label == label || g.label == canonical)
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))
}

/// A bare family label names member 0.
fn family_label(label: &str) -> String {
    if FAMILIES.contains(&label) {
        format!("{label}#0")
    } else {
        label.to_string()
    }
}

pub const FAMILIES: [&str; 4] = ["BIG12_SOL", "BIG12_NONSOL", "BIG15_SOL", "BIG15_NONSOL"];

/// Labels of every member of a family, member 0 first.
pub fn family_members(family: &str) -> Vec<String> {
    let prefix = format!("{family}#");
    registry().groups.iter().filter(|g| g.label.starts_with(&prefix)).map(|g| g.label.clone()).collect()
}

pub fn named_group(label: &str) -> Result<GroupExpr> {
    if let Some(seed) = registry().seeds.iter().find(|s| s.label == label) {
        return GroupExpr::parse(&seed.recipe);
    }
    GroupExpr::parse(&construction(label)?.recipe)
}

/// The groups of order `n` for `1 <= n <= 15`, one recipe per isomorphism class.
pub fn groups_of_order(n: u64) -> Result<Vec<GroupExpr>> {
    let row = registry().table1.iter().find(|r| r.n == n).ok_or(Error::OutOfRange(n))?;
    row.recipes.iter().map(|r| GroupExpr::parse(r)).collect()
}

pub fn minimal_row(n: u64) -> Result<&'static MinimalRow> {
    registry().table2.iter().find(|r| r.n == n).ok_or(Error::OutOfRange(n))
}

pub fn upto_minimal_order(n: u64) -> Result<u64> {
    registry().table4.iter().find(|r| r.n == n).map(|r| r.order).ok_or(Error::OutOfRange(n))
}

pub fn upto_examples(n: u64) -> Result<&'static [String]> {
    registry().table5.iter().find(|r| r.n == n).map(|r| r.labels.as_slice()).ok_or(Error::OutOfRange(n))
}

/// Prime factorization as `(p, k)` pairs in ascending order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// `p^(2k-1)`: any group containing both `C_{p^k}` and the elementary abelian
/// group of rank `k` has order divisible by this.
pub fn pbound(p: u64, k: u32) -> u64 {
    p.pow(2 * k - 1)
}

/// Product of `pbound(p, k)` over primes `p <= n`, with `k` maximal such that `p^k <= n`.
pub fn nbound(n: u64) -> u64 {
    (2..=n)
        .filter(|&p| is_prime(p))
        .map(|p| {
            let mut k = 0;
            let mut q = 1;
            while q * p <= n {
                q *= p;
                k += 1;
            }
            pbound(p, k)
        })
        .product()
}

/// Product of `pbound(p, k_p)` over the exact prime powers `p^k_p` dividing `n`.
pub fn collection_bound(n: u64) -> u64 {
    factorize(n).into_iter().map(|(p, k)| pbound(p, k)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_label_parses() {
        for g in &registry().groups {
            GroupExpr::parse(&g.recipe).unwrap_or_else(|e| panic!("{}: {e}", g.label));
        }
        for s in &registry().seeds {
            GroupExpr::parse(&s.recipe).unwrap();
        }
    }

    #[test]
    fn family_labels() {
        assert_eq!(family_members("BIG12_SOL").len(), 4);
        assert_eq!(construction("BIG15_NONSOL").unwrap().label, "BIG15_NONSOL#0");
        assert!(matches!(named_group("NOPE"), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn bounds() {
        assert_eq!(pbound(2, 3), 32);
        assert_eq!(pbound(7, 1), 7);
        assert_eq!(nbound(1), 1);
        assert_eq!(nbound(2), 2);
        assert_eq!(collection_bound(1), 1);
        assert_eq!(collection_bound(13), 13);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
    }

    #[test]
    fn table_shapes() {
        assert!(matches!(groups_of_order(0), Err(Error::OutOfRange(0))));
        assert!(matches!(groups_of_order(16), Err(Error::OutOfRange(16))));
        assert_eq!(groups_of_order(1).unwrap().len(), 1);
    }
}
