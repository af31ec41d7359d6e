//! Embedding certificates: generator words in an ambient group claimed to generate
//! a subgroup isomorphic to a target.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{targets_of_order, Item, Report};
use crate::catalog;
use crate::error::{Error, Result};
use crate::expr::GroupExpr;
use crate::group::{construct, generated_subgroup_with, Elem, Group, Limits};
use crate::morphism::{find_embedding_with, is_isomorphic_with, WitnessRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimSource {
    /// Transcribed from a published list. `paper` is accepted on input.
    #[serde(alias = "paper")]
    Listed,
    /// Found by restricted embedding search.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub target: String,
    pub generators: Vec<String>,
    pub source: ClaimSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub ambient: String,
    pub anchor: String,
    pub claims: Vec<Claim>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }
}

#[derive(Clone, Debug)]
pub struct ClaimOutcome {
    pub pass: bool,
    pub detail: String,
    pub witness: Option<WitnessRecord>,
    /// Target elements mapped into the ambient, when the claim holds.
    pub map: Option<Vec<Elem>>,
}

impl ClaimOutcome {
    fn fail(detail: String) -> ClaimOutcome {
        ClaimOutcome { pass: false, detail, witness: None, map: None }
    }
}

/// Checks one claim: the closure of the word images must have the target's order
/// and be isomorphic to it.
pub fn verify_claim(ambient: &Group, claim: &Claim, limits: &Limits) -> Result<ClaimOutcome> {
    let target = construct(&GroupExpr::parse(&claim.target)?)?;
    let images: Vec<Elem> = claim.generators.iter().map(|w| ambient.eval_word(w)).collect::<Result<_>>()?;
    let n = target.order();
    let capped = Limits { subgroup: n as usize, ..limits.clone() };
    let sub = match generated_subgroup_with(ambient, &images, &capped) {
        Ok(s) => s,
        Err(Error::SubgroupLimitExceeded(_)) => {
            return Ok(ClaimOutcome::fail(format!("order mismatch >{n} ≠ {n}")));
        }
        Err(e) => return Err(e),
    };
    if sub.order() as u64 != n {
        return Ok(ClaimOutcome::fail(format!("order mismatch {} ≠ {n}", sub.order())));
    }
    let inner = Group::Table(sub.as_group.clone());
    let Some(iso) = is_isomorphic_with(&target, &inner, limits)? else {
        return Ok(ClaimOutcome::fail(format!("subgroup of order {n} is not isomorphic to {}", claim.target)));
    };
    let map: Vec<Elem> = iso.map.iter().map(|&x| sub.elements[x as usize]).collect();
    let tt = target.table()?;
    let witness = WitnessRecord {
        source: target.expr_text(),
        target: ambient.expr_text(),
        generators: tt.names().to_vec(),
        images: tt.gens().iter().map(|&g| ambient.word_of(map[g as usize])).collect(),
    };
    Ok(ClaimOutcome { pass: true, detail: format!("order {n}, isomorphic"), witness: Some(witness), map: Some(map) })
}

pub fn verify_certificate_data(cert: &Certificate, scenario: &str) -> Result<Report> {
    let ambient = construct(&GroupExpr::parse(&cert.ambient)?)?;
    let limits = Limits::default();
    let outcomes: Vec<Result<Item>> = cert
        .claims
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let o = verify_claim(&ambient, c, &limits)?;
            let tag = match c.source {
                ClaimSource::Listed => "listed",
                ClaimSource::Derived => "derived",
            };
            let id = format!("{i}: {} = <{}>", c.target, c.generators.join(", "));
            Ok(Item::new(id, o.pass, format!("{tag}; {}", o.detail)).with_witnesses(o.witness.into_iter().collect()))
        })
        .collect();
    let items = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(Report::new(scenario, items))
}

pub fn load_certificate(path: &Path) -> Result<Certificate> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn verify_certificate(path: &Path) -> Result<Report> {
    let cert = load_certificate(path)?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    verify_certificate_data(&cert, &format!("verify-{name}"))
}

/// Directory of the shipped certificate files; `MGE_CERT_DIR` overrides it.
pub fn certificate_dir() -> PathBuf {
    match std::env::var_os("MGE_CERT_DIR") {
        Some(d) => PathBuf::from(d),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join("certificates"),
    }
}

/// A shipped certificate by name, e.g. `ambient`, `BIG15_SOL`, `T5_9_1`, `s3xs4`.
pub fn shipped_certificate(name: &str) -> Result<Certificate> {
    load_certificate(&certificate_dir().join(format!("{name}.json")))
}

#[derive(Deserialize)]
struct CompactList {
    ambient: String,
    entries: Vec<CompactEntry>,
}

#[derive(Deserialize)]
struct CompactEntry {
    target: String,
    generators: Vec<String>,
    #[serde(default)]
    span: Vec<String>,
    #[serde(default)]
    nontrivial: bool,
}

fn compact_list() -> CompactList {
    serde_json::from_str(include_str!("../../data/ambient_embeddings.json")).expect("embedding list is valid")
}

/// Substitutes a product of twist generators for the `{t}` placeholder.
fn substitute(word: &str, product: &str) -> String {
    let Some(pos) = word.find("{t}") else { return word.to_string() };
    let (head, tail) = (&word[..pos], &word[pos + 3..]);
    if product.is_empty() {
        format!("{head}{tail}")
    } else if head.is_empty() {
        format!("{product}{tail}")
    } else {
        format!("{head}*{product}{tail}")
    }
}

/// The listed embeddings into the big ambient group, with every product of the
/// allowed twist generators substituted.
pub fn ambient_claims() -> (String, Vec<Claim>) {
    let list = compact_list();
    let mut claims = Vec::new();
    for e in &list.entries {
        let k = e.span.len();
        for mask in 0u32..1 << k {
            if mask == 0 && e.nontrivial {
                continue;
            }
            let product: Vec<&str> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| e.span[i].as_str()).collect();
            let product = product.join("*");
            claims.push(Claim {
                target: e.target.clone(),
                generators: e.generators.iter().map(|w| substitute(w, &product)).collect(),
                source: ClaimSource::Listed,
            });
        }
    }
    (list.ambient, claims)
}

/// Builds a certificate for a shipped name: `ambient` (listed claims completed by
/// search), a family label, or a twisted table row label.
pub fn certify(name: &str) -> Result<Certificate> {
    let (ambient_text, mut claims, upto, anchor) = if name == "ambient" {
        let (a, c) = ambient_claims();
        (a, c, 15, "explicit embeddings of the groups of order at most 15 into the product of the twisted factors".to_string())
    } else if catalog::FAMILIES.contains(&name) {
        let upto = if name.starts_with("BIG12") { 12 } else { 15 };
        (format!("named({name})"), Vec::new(), upto, format!("groups of order at most {upto} in {name}"))
    } else if let Some(n) = name.strip_prefix("T5_").and_then(|r| r.split('_').next()).and_then(|n| n.parse::<u64>().ok()) {
        (format!("named({name})"), Vec::new(), n, format!("groups of order at most {n} in {name}"))
    } else {
        return Err(Error::UnknownLabel(name.to_string()));
    };
    let ambient = construct(&GroupExpr::parse(&ambient_text)?)?;
    let limits = Limits::default();
    let mut covered: Vec<Group> = Vec::new();
    for c in &claims {
        let g = construct(&GroupExpr::parse(&c.target)?)?;
        if !covered.iter().any(|h| same_class(h, &g, &limits)) {
            covered.push(g);
        }
    }
    for k in 1..=upto {
        for t in targets_of_order(k)? {
            if covered.iter().any(|h| same_class(h, &t, &limits)) {
                continue;
            }
            if let Some(m) = find_embedding_with(&t, &ambient, None, &limits)? {
                claims.push(Claim {
                    target: t.expr_text(),
                    generators: m.images.iter().map(|&x| ambient.word_of(x)).collect(),
                    source: ClaimSource::Derived,
                });
                covered.push(t);
            }
        }
    }
    Ok(Certificate { ambient: ambient_text, anchor, claims })
}

fn same_class(a: &Group, b: &Group, limits: &Limits) -> bool {
    a.order() == b.order() && matches!(is_isomorphic_with(a, b, limits), Ok(Some(_)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn placeholder_substitution() {
        assert_eq!(substitute("theta3{t}", ""), "theta3");
        assert_eq!(substitute("theta3{t}", "theta1*theta2"), "theta3*theta1*theta2");
        assert_eq!(substitute("{t}", "theta1"), "theta1");
        assert_eq!(substitute("c^3", "theta1"), "c^3");
    }

    #[test]
    fn listed_claims_expand() {
        let (_, claims) = ambient_claims();
        assert_eq!(claims.len(), 1134);
        assert!(claims.iter().all(|c| c.source == ClaimSource::Listed));
    }
}
