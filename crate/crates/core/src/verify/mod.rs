//! Containment checks, minimal-embedding searches, certificates and reproducible
//! scenario reports.

mod certificate;
mod scenarios;

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use certificate::{
    ambient_claims, certificate_dir, certify, load_certificate, shipped_certificate, verify_certificate, verify_certificate_data,
    verify_claim, Certificate, Claim, ClaimOutcome, ClaimSource,
};
pub use scenarios::{reproduce, reproduce_with, SCENARIOS};

use crate::catalog::{self, collection_bound, nbound};
use crate::enumerate::{self, Enumerator};
use crate::error::{Error, Result};
use crate::expr::GroupExpr;
use crate::group::{construct, Group, Limits};
use crate::morphism::{find_embedding_with, is_isomorphic_with, Morphism, WitnessRecord};
use crate::ENGINE_VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item {
    pub id: String,
    pub status: Status,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<WitnessRecord>,
}

impl Item {
    pub fn new(id: impl Into<String>, pass: bool, detail: impl Into<String>) -> Item {
        Item { id: id.into(), status: if pass { Status::Pass } else { Status::Fail }, detail: detail.into(), witnesses: Vec::new() }
    }

    pub fn skipped(id: impl Into<String>, reason: impl Into<String>) -> Item {
        Item { id: id.into(), status: Status::Skipped, detail: reason.into(), witnesses: Vec::new() }
    }

    pub fn with_witnesses(mut self, w: Vec<WitnessRecord>) -> Item {
        self.witnesses = w;
        self
    }
}

/// Outcome of a scenario or check. Timing is kept out of the serialized form so
/// that identical runs produce identical bytes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub engine_version: String,
    pub status: Status,
    pub items: Vec<Item>,
}

impl Report {
    pub fn new(scenario: impl Into<String>, items: Vec<Item>) -> Report {
        let status = if items.iter().any(|i| i.status == Status::Fail) {
            Status::Fail
        } else if !items.is_empty() && items.iter().all(|i| i.status == Status::Skipped) {
            Status::Skipped
        } else {
            Status::Pass
        };
        Report { scenario: scenario.into(), engine_version: ENGINE_VERSION.to_string(), status, items }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Every witness replayed against freshly constructed groups.
    pub fn replay_witnesses(&self) -> Result<bool> {
        for item in &self.items {
            for w in &item.witnesses {
                let source = construct(&GroupExpr::parse(&w.source)?)?;
                let target = construct(&GroupExpr::parse(&w.target)?)?;
                if !crate::morphism::replay_witness(w, &source, &target)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.status, self.scenario)?;
        for i in &self.items {
            writeln!(f, "  {} {}: {}", i.status, i.id, i.detail)?;
        }
        Ok(())
    }
}

/// Target groups of a containment check: the listed groups for orders up to 15,
/// and the enumerated catalog beyond.
pub fn targets_of_order(n: u64) -> Result<Vec<Group>> {
    if n <= 15 {
        catalog::groups_of_order(n)?.iter().map(construct).collect()
    } else {
        Ok(enumerate::enumerate_groups(n)?.groups().cloned().collect())
    }
}

/// Short human-readable name of a target.
pub fn target_name(g: &Group) -> String {
    let text = g.expr_text();
    if text.len() <= 40 {
        return text;
    }
    match g.as_table().map(|t| crate::morphism::Fingerprint::of(t).abelian_invariants) {
        Some(Some(inv)) => inv.iter().map(|q| format!("C({q})")).collect::<Vec<_>>().join(" x "),
        _ => format!("group #{} of order {}", short_hash(&text), g.order()),
    }
}

fn short_hash(s: &str) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(&Sha256::digest(s.as_bytes())[..4])
}

/// One target: an embedding found by search (table ambient) or a certificate claim
/// (twisted ambient). `Ok(None)` means no embedding exists.
fn embed_target(g: &Group, target: &Group, certs: Option<&Certificate>, limits: &Limits) -> Result<Option<WitnessRecord>> {
    if let Group::Table(_) = g {
        return Ok(find_embedding_with(target, g, None, limits)?.map(|m| m.record()));
    }
    let uncovered = || Error::IncompleteCertificates { target: target_name(target) };
    let certs = certs.ok_or_else(uncovered)?;
    let mut isos: HashMap<&str, Option<Morphism>> = HashMap::new();
    for claim in &certs.claims {
        if !isos.contains_key(claim.target.as_str()) {
            let claimed = construct(&GroupExpr::parse(&claim.target)?)?;
            let iso = if claimed.order() == target.order() { is_isomorphic_with(target, &claimed, limits)? } else { None };
            isos.insert(&claim.target, iso);
        }
        let Some(iso) = &isos[claim.target.as_str()] else { continue };
        let outcome = verify_claim(g, claim, limits)?;
        let Some(map) = outcome.map else { continue };
        // Compose the target's isomorphism onto the claimed subgroup.
        let tt = target.table()?;
        return Ok(Some(WitnessRecord {
            source: target.expr_text(),
            target: g.expr_text(),
            generators: tt.names().to_vec(),
            images: tt.gens().iter().map(|&x| g.word_of(map[iso.map[x as usize] as usize])).collect(),
        }));
    }
    Err(uncovered())
}

fn containment_items(g: &Group, targets: &[Group], certs: Option<&Certificate>, limits: &Limits) -> Result<Vec<Item>> {
    let results: Vec<Result<Item>> = targets
        .par_iter()
        .map(|t| {
            let name = target_name(t);
            Ok(match embed_target(g, t, certs, limits)? {
                Some(w) => Item::new(name, true, "embeds").with_witnesses(vec![w]),
                None => Item::new(name.clone(), false, format!("{name} does not embed")),
            })
        })
        .collect();
    results.into_iter().collect()
}

pub fn contains_all_of_order(g: &Group, n: u64, certs: Option<&Certificate>) -> Result<Report> {
    let targets = targets_of_order(n)?;
    let items = containment_items(g, &targets, certs, &Limits::default())?;
    Ok(Report::new(format!("contains-all-of-order-{n}"), items))
}

pub fn contains_all_upto(g: &Group, n: u64, certs: Option<&Certificate>) -> Result<Report> {
    let mut targets = Vec::new();
    for k in 1..=n {
        targets.extend(targets_of_order(k)?);
    }
    let items = containment_items(g, &targets, certs, &Limits::default())?;
    Ok(Report::new(format!("contains-all-upto-{n}"), items))
}

/// Names of the targets that do not embed in a table-form group.
pub fn missing_targets(g: &Group, targets: &[Group]) -> Result<Vec<String>> {
    let limits = Limits::default();
    let mut out = Vec::new();
    for t in targets {
        if find_embedding_with(t, g, None, &limits)?.is_none() {
            out.push(target_name(t));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Collection {
    /// All groups of order `n`.
    OfOrder(u64),
    /// All groups of order at most `n`.
    Upto(u64),
}

impl Collection {
    pub fn bound(&self) -> u64 {
        match *self {
            Collection::OfOrder(n) => collection_bound(n),
            Collection::Upto(n) => nbound(n),
        }
    }

    pub fn targets(&self) -> Result<Vec<Group>> {
        match *self {
            Collection::OfOrder(n) => targets_of_order(n),
            Collection::Upto(n) => {
                let mut v = Vec::new();
                for k in 1..=n {
                    v.extend(targets_of_order(k)?);
                }
                Ok(v)
            }
        }
    }
}

#[derive(Debug)]
pub enum MinimalResult {
    Found { order: u64, groups: Vec<Group>, eliminated: Vec<u64> },
    Exhausted { max_order: u64 },
}

/// Least order `m <= max_order`, among multiples of the collection's bound, with a
/// group containing the whole collection; returns every such group of that order.
pub fn minimal_embedding_search(collection: Collection, max_order: u64, enumerator: &Enumerator) -> Result<MinimalResult> {
    let targets = collection.targets()?;
    let bound = collection.bound();
    let mut eliminated = Vec::new();
    let mut m = bound;
    while m <= max_order {
        let cat = enumerator.catalog(m)?;
        let limits = &enumerator.limits;
        let passing: Vec<Result<bool>> = cat
            .entries
            .par_iter()
            .map(|e| {
                for t in &targets {
                    if find_embedding_with(t, &e.group, None, limits)?.is_none() {
                        return Ok(false);
                    }
                }
                Ok(true)
            })
            .collect();
        let mut groups = Vec::new();
        for (e, ok) in cat.entries.iter().zip(passing) {
            if ok? {
                groups.push(e.group.clone());
            }
        }
        if !groups.is_empty() {
            return Ok(MinimalResult::Found { order: m, groups, eliminated });
        }
        eliminated.push(m);
        m += bound;
    }
    Ok(MinimalResult::Exhausted { max_order })
}
