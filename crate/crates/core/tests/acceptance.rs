//! One line per acceptance criterion. Runs at the tier in `MGE_TIER`, or at tier 3
//! when the variable is unset.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use mge_core::catalog::{self, nbound, pbound, upto_minimal_order};
use mge_core::enumerate::{regular_oracle, Enumerator};
use mge_core::group::{center, class_sizes, closure_elements, derived_centralizes_check, TableGroup};
use mge_core::morphism::{is_isomorphic, Fingerprint};
use mge_core::verify::{minimal_embedding_search, reproduce_with, Collection, MinimalResult, Report, Status};
use mge_core::{construct, Group, GroupExpr, Result};

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn parse(text: &str) -> Group {
    construct(&GroupExpr::parse(text).unwrap()).unwrap()
}

fn iso(a: &Group, b: &Group) -> bool {
    is_isomorphic(a, b).unwrap().is_some()
}

fn matches_classes(expected: &[Group], found: &[Group]) -> bool {
    expected.len() == found.len() && expected.iter().all(|e| found.iter().filter(|f| iso(e, f)).count() == 1)
}

fn from_report(r: &Report) -> Outcome {
    let failed: Vec<String> = r.items.iter().filter(|i| i.status == Status::Fail).map(|i| format!("{}: {}", i.id, i.detail)).collect();
    match r.status {
        Status::Pass => {
            let first = r.items.iter().find(|i| i.status == Status::Pass).map(|i| i.detail.as_str()).unwrap_or_default();
            Outcome::Pass(format!("{first} ({} items)", r.items.len()))
        }
        Status::Skipped => Outcome::Skip(r.items.first().map(|i| i.detail.clone()).unwrap_or_default()),
        Status::Fail => Outcome::Fail(failed.join("; ")),
    }
}

struct Harness {
    en: Enumerator,
    reports: Vec<Report>,
    failures: usize,
}

impl Harness {
    fn scenario(&mut self, id: &str) -> Result<Outcome> {
        let r = reproduce_with(id, &self.en)?;
        let o = from_report(&r);
        self.reports.push(r);
        Ok(o)
    }

    fn run(&mut self, id: u32, what: &str, budget: Duration, f: impl FnOnce(&mut Harness) -> Result<Outcome>) {
        let start = Instant::now();
        let outcome = f(self).unwrap_or_else(|e| Outcome::Fail(format!("error: {e}")));
        let elapsed = start.elapsed();
        let (tag, detail) = match outcome {
            Outcome::Pass(_) if elapsed > budget => ("FAIL", format!("over budget {}s", budget.as_secs())),
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => ("FAIL", d),
            Outcome::Skip(d) => ("SKIP", d),
        };
        if tag == "FAIL" {
            self.failures += 1;
        }
        println!("criterion {id:2} {tag} {:>8.1}s  {what}: {detail}", elapsed.as_secs_f64());
    }
}

fn table1(h: &mut Harness) -> Result<Outcome> {
    let mut counts = Vec::new();
    for n in 1..=15 {
        let found: Vec<Group> = h.en.catalog(n)?.groups().cloned().collect();
        let listed: Vec<Group> = catalog::groups_of_order(n)?.iter().map(construct).collect::<Result<_>>()?;
        if !matches_classes(&listed, &found) {
            return Ok(Outcome::Fail(format!("order {n} does not match the listed groups")));
        }
        counts.push(found.len());
    }
    if counts != [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1] {
        return Ok(Outcome::Fail(format!("counts {counts:?}")));
    }
    h.scenario("table1")?;
    Ok(Outcome::Pass(format!("counts {counts:?}")))
}

fn oracle(h: &mut Harness) -> Result<Outcome> {
    for n in 1..=10 {
        let a: Vec<Group> = regular_oracle(n)?.groups().cloned().collect();
        let b: Vec<Group> = h.en.catalog(n)?.groups().cloned().collect();
        if !matches_classes(&a, &b) {
            return Ok(Outcome::Fail(format!("order {n} differs from the oracle")));
        }
    }
    Ok(Outcome::Pass("orders 1..=10 agree".into()))
}

fn bounds() -> Result<Outcome> {
    let mut ok = pbound(2, 3) == 32 && nbound(12) == 332_640;
    ok &= [13, 14, 15].iter().all(|&n| nbound(n) == 4_324_320);
    let expected = [(8, 3360), (9, 30240), (10, 30240), (11, 332_640), (12, 665_280), (13, 8_648_640), (14, 8_648_640), (15, 8_648_640)];
    for (n, v) in expected {
        ok &= upto_minimal_order(n)? == v;
    }
    for n in 1..=11 {
        ok &= upto_minimal_order(n)? == nbound(n);
    }
    Ok(if ok { Outcome::Pass("all values exact".into()) } else { Outcome::Fail("value mismatch".into()) })
}

fn order144(h: &mut Harness) -> Result<Outcome> {
    if h.en.tier < 2 {
        return Ok(Outcome::Skip("requires tier 2".into()));
    }
    match minimal_embedding_search(Collection::OfOrder(12), 144, &h.en)? {
        MinimalResult::Found { order: 144, groups, eliminated } => {
            let ok = eliminated == [24, 48, 72, 96, 120] && groups.len() == 1 && iso(&groups[0], &parse("named(S3xS4)"));
            h.scenario("thm-order144")?;
            Ok(if ok {
                Outcome::Pass(format!("eliminated {eliminated:?}; unique class S3 x S4"))
            } else {
                Outcome::Fail(format!("{} groups, eliminated {eliminated:?}", groups.len()))
            })
        }
        MinimalResult::Found { order, .. } => Ok(Outcome::Fail(format!("minimal order {order}"))),
        MinimalResult::Exhausted { .. } => Ok(Outcome::Fail("exhausted".into())),
    }
}

fn families(h: &mut Harness) -> Result<Outcome> {
    for f in catalog::FAMILIES {
        let expected = if f.starts_with("BIG12") { 665_280 } else { 8_648_640 };
        for m in catalog::family_members(f) {
            if parse(&format!("named({m})")).order() != expected {
                return Ok(Outcome::Fail(format!("{m} has the wrong order")));
            }
        }
    }
    h.scenario("certificates")
}

fn relabeled(t: &TableGroup) -> TableGroup {
    // Reverse every non-identity label.
    let n = t.order() as u32;
    let p = |x: u32| if x == 0 { 0 } else { n - x };
    let mut mul = vec![0u32; (n * n) as usize];
    for a in 0..n {
        for b in 0..n {
            mul[(p(a) * n + p(b)) as usize] = p(t.mul(a, b));
        }
    }
    TableGroup::from_table(n as usize, mul, t.names().to_vec(), t.gens().iter().map(|&g| p(g)).collect())
}

fn properties(h: &mut Harness) -> Result<Outcome> {
    let mut checked = 0;
    for n in 1..=64u64 {
        for e in &h.en.catalog(n)?.entries {
            let t = e.group.table()?;
            let lagrange = (0..n as u32).all(|x| n % t.element_order(x) as u64 == 0);
            let sizes = class_sizes(t);
            let class_eq = sizes.iter().map(|&s| s as u64).sum::<u64>() == n
                && sizes.iter().filter(|&&s| s == 1).count() == center(&e.group)?.order();
            let r = Arc::new(relabeled(t));
            let sound = Fingerprint::of(t) == Fingerprint::of(&r) && iso(&e.group, &Group::Table(r));
            if !(lagrange && class_eq && sound) {
                return Ok(Outcome::Fail(format!("order {n}: {}", e.fingerprint)));
            }
            checked += 1;
        }
    }
    let mut pairs = 0;
    for n in 1..=24u64 {
        for e in &h.en.catalog(n)?.entries {
            let t = e.group.table()?;
            for x in 0..n as u32 {
                for y in (0..n as u32).step_by(3) {
                    let (a, b) = (closure_elements(t, &[x]), closure_elements(t, &[y, x]));
                    if derived_centralizes_check(t, &a, &b) == Some(false) {
                        return Ok(Outcome::Fail(format!("commutator property fails in order {n}")));
                    }
                    pairs += 1;
                }
            }
        }
    }
    let mut witnesses = 0;
    for r in &h.reports {
        if !r.replay_witnesses()? {
            return Ok(Outcome::Fail(format!("a witness in {} does not replay", r.scenario)));
        }
        witnesses += r.items.iter().map(|i| i.witnesses.len()).sum::<usize>();
    }
    Ok(Outcome::Pass(format!("{checked} groups, {pairs} subgroup pairs, {witnesses} witnesses replayed")))
}

fn main() -> ExitCode {
    let tier = match std::env::var("MGE_TIER") {
        Ok(s) if !s.is_empty() => s.parse().expect("MGE_TIER must be 1, 2 or 3"),
        _ => 3,
    };
    let mut h = Harness { en: Enumerator::new(tier), reports: Vec::new(), failures: 0 };
    println!("acceptance run at tier {tier}");
    let s = Duration::from_secs;
    h.run(1, "groups of order at most 15", s(10), table1);
    h.run(2, "permutation oracle for orders at most 10", s(60), oracle);
    h.run(3, "order-32 groups containing all groups of order 8", s(120), |h| h.scenario("thm-order32"));
    h.run(4, "abelian index-2 subgroups of exponent 4 block order 8", s(120), |h| h.scenario("lemma-habex4"));
    h.run(5, "minimal order for all groups of order 12", s(1800), order144);
    h.run(6, "order-96 groups containing A4", s(900), |h| h.scenario("lemma-order96"));
    h.run(7, "order bounds and upper table values", s(1), |_| bounds());
    h.run(8, "example groups for orders up to 11", s(300), |h| h.scenario("table5"));
    h.run(9, "twisted constructions and certificates", s(600), families);
    h.run(10, "order-729 group containing all groups of order 27", s(300), |h| h.scenario("example-p6"));
    h.run(11, "no group of order 243 contains all groups of order 27", s(4 * 3600), |h| h.scenario("lemma-p3"));
    h.run(12, "property suites and witness replay", s(300), properties);
    if h.failures == 0 {
        println!("acceptance: all criteria met");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria failed", h.failures);
        ExitCode::FAILURE
    }
}
