//! Self-verification suites: every structural invariant and identity is
//! checked at a configurable scale and reported as {name, checked,
//! failures}. The CLI `verify` subcommand and the acceptance tests both
//! run these.

use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::{geom_sum, j_kt, OddPrime};
use crate::diagram::{add_children, floor_vertices, remove_children, FloorSlice};
use crate::error::Result;
use crate::fibo::{classify_case, m_brute_with_budget, rr_check, RecurMemo, DEFAULT_BUDGET};
use crate::gfs::gf_matches_sequence;
use crate::paths::{enumerate_paths, path_count, path_count_u64, path_from_digits};
use crate::stats::{
    block_gt, descent_set, predicted_next_to_last, predicted_second_to_last, sign_balance,
    DescentBlock,
};
use crate::vertex::{Block, VertexId};

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: u64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verification scale.
#[derive(Debug, Clone, Copy)]
pub struct Scale {
    pub p: OddPrime,
    pub max_floor: u64,
    pub budget: u64,
}

impl Scale {
    pub fn new(p: OddPrime, max_floor: u64) -> Self {
        Scale {
            p,
            max_floor,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Every class-k (non-top, even-floor) vertex up to the scale's max floor.
fn classk_vertices(scale: &Scale) -> Vec<VertexId> {
    let mut out = Vec::new();
    let mut floor = 2;
    while floor <= scale.max_floor {
        let r = floor / 2;
        for k in 0..r {
            let mut pos = 0;
            while let Ok(v) = VertexId::new(scale.p, floor, k, pos) {
                out.push(v);
                pos += 1;
            }
        }
        floor += 2;
    }
    out
}

fn sweep<F>(name: &'static str, vertices: &[VertexId], check: F) -> SuiteReport
where
    F: Fn(&VertexId) -> (u64, Vec<String>) + Sync + Send,
{
    let (checked, failures) = vertices.par_iter().map(check).reduce(
        || (0, Vec::new()),
        |(c1, mut f1), (c2, f2)| {
            f1.extend(f2);
            (c1 + c2, f1)
        },
    );
    let mut failures = failures;
    failures.sort();
    SuiteReport {
        name,
        checked,
        failures,
    }
}

/// Up/down consistency: on every floor pair the upward and downward edge
/// generators produce identical edge sets with identical blocks, every
/// block equals the hook difference, and block sizes follow the family
/// table.
pub fn suite_updown_edges(scale: &Scale) -> SuiteReport {
    let mut checked = 0;
    let mut failures = Vec::new();
    for floor in 1..scale.max_floor {
        let below = match floor_vertices(scale.p, floor) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("floor {floor}: {e}"));
                continue;
            }
        };
        let above = match floor_vertices(scale.p, floor + 1) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("floor {}: {e}", floor + 1));
                continue;
            }
        };
        let mut ups = Vec::new();
        for v in &below.vertices {
            match add_children(v) {
                Ok(edges) => ups.extend(edges),
                Err(e) => failures.push(format!("add_children({v}): {e}")),
            }
        }
        let mut downs = Vec::new();
        for v in &above.vertices {
            match remove_children(v) {
                Ok(edges) => downs.extend(edges),
                Err(e) => failures.push(format!("remove_children({v}): {e}")),
            }
        }
        for e in ups.iter().chain(downs.iter()) {
            checked += 1;
            let hu = e.upper.to_hook();
            let hl = e.lower.to_hook();
            if hu.size - hl.size != e.block.size()
                || hu.leg < hl.leg
                || hu.leg - hl.leg != e.block.vert
            {
                failures.push(format!("block/hook mismatch on {} -> {}", e.upper, e.lower));
            }
            let p = e.upper.p().get();
            let r = e.upper.r();
            let family_size = if e.upper.is_even_floor() {
                if e.upper.is_top_class() {
                    0
                } else if e.upper.s() == 1 {
                    p.pow((r - 1) as u32) * (p - 2)
                } else {
                    p.pow(e.upper.class_k() as u32) * (p - 1)
                }
            } else if e.upper.is_top_class() {
                p.pow((r - 2) as u32) * (p - 1) * (p - 1)
            } else {
                p.pow(e.upper.class_k() as u32) * (p - 1)
            };
            if e.block.size() != family_size {
                failures.push(format!(
                    "family size {} expected {} on {} -> {}",
                    e.block.size(),
                    family_size,
                    e.upper,
                    e.lower
                ));
            }
        }
        ups.sort_by_key(|e| (e.upper, e.lower));
        downs.sort_by_key(|e| (e.upper, e.lower));
        if ups != downs {
            failures.push(format!(
                "edge sets between floors {floor} and {} disagree",
                floor + 1
            ));
        }
    }
    failures.sort();
    SuiteReport {
        name: "updown_edges",
        checked,
        failures,
    }
}

/// Floor cardinalities, hook round-trips, and size distinctness per floor.
pub fn suite_floor_structure(scale: &Scale) -> SuiteReport {
    let mut checked = 0;
    let mut failures = Vec::new();
    for floor in 1..=scale.max_floor {
        let slice = match floor_vertices(scale.p, floor) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("floor {floor}: {e}"));
                continue;
            }
        };
        checked += slice.len() as u64;
        match FloorSlice::expected_len(scale.p, floor) {
            Ok(n) if n == slice.len() as u64 => {}
            Ok(n) => failures.push(format!(
                "floor {floor}: {} vertices, expected {n}",
                slice.len()
            )),
            Err(e) => failures.push(format!("floor {floor}: {e}")),
        }
        let mut class_sizes = std::collections::BTreeMap::new();
        for v in &slice.vertices {
            let h = v.to_hook();
            if h.leg >= h.size {
                failures.push(format!("{v}: leg {} not below size {}", h.leg, h.size));
            }
            match crate::vertex::hook_to_vertex(scale.p, &h) {
                Ok(back) if back == *v => {}
                Ok(back) => failures.push(format!("{v} round-trips to {back}")),
                Err(e) => failures.push(format!("{v}: {e}")),
            }
            class_sizes.insert(v.class_k(), h.size);
        }
        let mut seen = std::collections::BTreeMap::new();
        for (k, size) in class_sizes {
            if let Some(other) = seen.insert(size, k) {
                failures.push(format!(
                    "floor {floor}: classes {other} and {k} share size {size}"
                ));
            }
        }
    }
    failures.sort();
    SuiteReport {
        name: "floor_structure",
        checked,
        failures,
    }
}

/// Enumerated path counts match the closed form, for the full set and for
/// each single terminal leg.
pub fn suite_path_counts(scale: &Scale) -> SuiteReport {
    let vertices = classk_vertices(scale);
    let budget = scale.budget;
    sweep("path_counts", &vertices, |v| {
        let mut failures = Vec::new();
        match path_count_u64(v) {
            Ok(n) if n <= budget => {
                let enumerated = match enumerate_paths(v, None) {
                    Ok(it) => it.count() as u64,
                    Err(e) => {
                        failures.push(format!("{v}: {e}"));
                        return (1, failures);
                    }
                };
                if path_count(v)
                    .map(|c| c != enumerated.into())
                    .unwrap_or(true)
                {
                    failures.push(format!("{v}: enumerated {enumerated}"));
                }
                let p = v.p().get();
                let per_leg = enumerate_paths(v, Some(0))
                    .map(|it| it.count() as u64)
                    .unwrap_or(u64::MAX);
                if per_leg != n / (p - 1) {
                    failures.push(format!("{v}: filtered count {per_leg}"));
                }
            }
            Ok(_) => {}
            Err(e) => failures.push(format!("{v}: {e}")),
        }
        (1, failures)
    })
}

/// Materialized blocks reconstruct the terminal hook and obey the digit
/// laws for the horizontal parts.
pub fn suite_path_blocks(scale: &Scale) -> SuiteReport {
    let vertices = classk_vertices(scale);
    let budget = scale.budget;
    sweep("path_blocks", &vertices, |v| {
        let mut failures = Vec::new();
        let mut checked = 0;
        if path_count_u64(v).map(|n| n > budget).unwrap_or(true) {
            return (0, failures);
        }
        let p = v.p().get();
        let r = v.r();
        let k = v.class_k();
        let pk = p.pow(k as u32);
        let hook = v.to_hook();
        for path in enumerate_paths(v, None).into_iter().flatten() {
            checked += 1;
            let mut size = hook.size;
            let mut leg = hook.leg;
            let mut bad = false;
            for idx in (1..=2 * r - 1).rev() {
                let b = path.block(idx);
                if b.size() > size || b.vert > leg {
                    bad = true;
                    break;
                }
                size -= b.size();
                leg -= b.vert;
            }
            if bad || size != p - 1 || leg != path.terminal_leg() {
                failures.push(format!(
                    "{v}: digits {:?} fail reconstruction",
                    path.digits()
                ));
                continue;
            }
            for j in k + 1..r {
                let expect = pk * path.digits()[(k + r - j - 1) as usize];
                if path.block(2 * j + 1).horiz != expect {
                    failures.push(format!("{v}: m at {} != {expect}", 2 * j + 1));
                }
            }
            if path.block(2 * k + 1).horiz != pk * path.terminal_leg() {
                failures.push(format!("{v}: top branch block wrong"));
            }
            for j in 1..=k {
                if !path.block(2 * j - 1).is_empty() {
                    failures.push(format!("{v}: block {} not empty", 2 * j - 1));
                }
            }
        }
        (checked, failures)
    })
}

/// Depth-1 law: each path carries 0 or 1 descents, exactly when its
/// terminal leg is below (p-1)/2, and the total is (p-1)/2.
pub fn suite_depth_one(scale: &Scale) -> SuiteReport {
    let vertices: Vec<VertexId> = classk_vertices(scale)
        .into_iter()
        .filter(|v| v.s() == 1)
        .collect();
    sweep("depth_one_descents", &vertices, |v| {
        let mut failures = Vec::new();
        let p = v.p();
        let mut total = 0u64;
        let mut checked = 0;
        for path in enumerate_paths(v, None).into_iter().flatten() {
            checked += 1;
            let des = descent_set(&path).des();
            let expect = u64::from(path.terminal_leg() < p.half());
            if des != expect {
                failures.push(format!("{v}: digits {:?} give des {des}", path.digits()));
            }
            total += des;
        }
        if total != p.half() {
            failures.push(format!("{v}: total {total}"));
        }
        (checked, failures)
    })
}

/// Comparator laws on the two one-parameter block families.
pub fn suite_block_order(scale: &Scale) -> SuiteReport {
    let p = scale.p.get();
    let mut checked = 0;
    let mut failures = Vec::new();
    for k in 0..=2u64 {
        let pk = p.pow(k as u32);
        let d = pk * (p - 1);
        for l1 in 0..=d.min(400) {
            for l2 in 0..=d.min(400) {
                checked += 1;
                let b1 = Block::new(1, d - l1, l1);
                let b2 = Block::new(2, d - l2, l2);
                if block_gt(&b1, &b2) != Ok(l1 < l2) {
                    failures.push(format!("k={k}: legs {l1},{l2}"));
                }
            }
        }
        for t1 in 0..p {
            for t2 in 0..p {
                checked += 1;
                let b1 = Block::new(1, pk * t1, pk * (p - 1 - t1));
                let b2 = Block::new(2, pk * t2, pk * (p - 1 - t2));
                if block_gt(&b2, &b1) != Ok(t1 < t2) {
                    failures.push(format!("k={k}: branches {t1},{t2}"));
                }
            }
        }
    }
    failures.sort();
    SuiteReport {
        name: "block_order",
        checked,
        failures,
    }
}

/// Constant-digit special paths match the three-range descent table.
pub fn suite_special_paths(scale: &Scale) -> SuiteReport {
    let p = scale.p;
    let pu = p.get();
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut floor = 4;
    while floor <= scale.max_floor {
        let r = floor / 2;
        // the table needs at least one constant branch digit: s >= 2
        for k in 1..=r.saturating_sub(2) {
            let s = r - k;
            for t in 0..pu {
                let l = match j_kt(p, k, t) {
                    Ok(l) => l,
                    Err(e) => {
                        failures.push(format!("j({k},{t}): {e}"));
                        continue;
                    }
                };
                let v = match VertexId::new(p, floor, k, l) {
                    Ok(v) => v,
                    Err(e) => {
                        failures.push(format!("vertex({floor},{k},{l}): {e}"));
                        continue;
                    }
                };
                for last in 0..pu - 1 {
                    let mut digits = vec![t; (r - 1) as usize];
                    digits.push(last);
                    let path = match path_from_digits(&v, &digits) {
                        Ok(p) => p,
                        Err(e) => {
                            failures.push(format!("{v}: {e}"));
                            continue;
                        }
                    };
                    checked += 1;
                    let des = descent_set(&path);
                    let at_next = des.indices.contains(&(2 * r - 2));
                    let expect_next = t < p.half();
                    if at_next != expect_next {
                        failures.push(format!("{v}: t={t} block {} descent", 2 * r - 2));
                    }
                    if s >= 3 {
                        let at_second = des.indices.contains(&(2 * r - 3));
                        let expect_second = t > p.half();
                        if at_second != expect_second {
                            failures.push(format!("{v}: t={t} block {} descent", 2 * r - 3));
                        }
                    }
                }
            }
        }
        floor += 2;
    }
    failures.sort();
    SuiteReport {
        name: "special_paths",
        checked,
        failures,
    }
}

/// Per-path descent indicators at the two top comparison blocks match the
/// branch-digit law on every path.
pub fn suite_descent_law(scale: &Scale) -> SuiteReport {
    let vertices: Vec<VertexId> = classk_vertices(scale)
        .into_iter()
        .filter(|v| v.s() >= 2)
        .collect();
    let budget = scale.budget;
    sweep("descent_law", &vertices, |v| {
        let mut failures = Vec::new();
        let mut checked = 0;
        if path_count_u64(v).map(|n| n > budget).unwrap_or(true) {
            return (0, failures);
        }
        let p = v.p();
        let r = v.r();
        let k = v.class_k();
        let s = v.s();
        for path in enumerate_paths(v, None).into_iter().flatten() {
            checked += 1;
            let des = descent_set(&path);
            let t_prime = path.digits()[k as usize];
            let got = des.indices.contains(&(2 * r - 2));
            if got != predicted_next_to_last(p, k, v.pos(), t_prime) {
                failures.push(format!(
                    "{v}: digits {:?} block {}",
                    path.digits(),
                    2 * r - 2
                ));
            }
            if s >= 3 {
                let t_second = path.digits()[(k + 1) as usize];
                let got = des.indices.contains(&(2 * r - 3));
                if got != predicted_second_to_last(p, k, v.pos(), t_prime, t_second) {
                    failures.push(format!(
                        "{v}: digits {:?} block {}",
                        path.digits(),
                        2 * r - 3
                    ));
                }
            }
        }
        (checked, failures)
    })
}

/// Brute descent totals at the two top comparison blocks equal the closed
/// forms.
pub fn suite_descent_totals(scale: &Scale) -> SuiteReport {
    let vertices = classk_vertices(scale);
    let budget = scale.budget;
    sweep("descent_totals", &vertices, |v| {
        let mut failures = Vec::new();
        let mut checked = 0;
        if path_count_u64(v).map(|n| n > budget).unwrap_or(true) {
            return (0, failures);
        }
        let blocks: &[DescentBlock] = if v.s() >= 2 {
            &[DescentBlock::NextToLast, DescentBlock::SecondToLast]
        } else {
            &[DescentBlock::NextToLast]
        };
        for &which in blocks {
            checked += 1;
            match crate::stats::descent_totals_at(v, which, budget) {
                Ok(t) if t.enumerated == t.closed => {}
                Ok(t) => failures.push(format!(
                    "{v}: {:?} enumerated {} closed {}",
                    which, t.enumerated, t.closed
                )),
                Err(e) => failures.push(format!("{v}: {e}")),
            }
        }
        (checked, failures)
    })
}

/// Sign balance vanishes at every class-k vertex.
pub fn suite_sign_balance(scale: &Scale) -> SuiteReport {
    let vertices = classk_vertices(scale);
    let budget = scale.budget;
    sweep("sign_balance", &vertices, |v| {
        let mut failures = Vec::new();
        if path_count_u64(v).map(|n| n > budget).unwrap_or(true) {
            return (0, failures);
        }
        match sign_balance(v) {
            Ok(b) if b.is_zero() => {}
            Ok(b) => failures.push(format!("{v}: balance {b}")),
            Err(e) => failures.push(format!("{v}: {e}")),
        }
        (1, failures)
    })
}

/// Brute force, recurrence, and closed form agree at every class-k vertex.
pub fn suite_triple_agreement(scale: &Scale) -> SuiteReport {
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut memo = RecurMemo::new();
    for v in classk_vertices(scale) {
        checked += 1;
        let rec = match memo.eval(&v) {
            Ok(x) => x,
            Err(e) => {
                failures.push(format!("{v}: recurrence {e}"));
                continue;
            }
        };
        let closed = match crate::fibo::m_closed(&v) {
            Ok(x) => x,
            Err(e) => {
                failures.push(format!("{v}: closed {e}"));
                continue;
            }
        };
        if rec != closed {
            failures.push(format!("{v}: recurrence {rec} closed {closed}"));
        }
        if path_count_u64(&v)
            .map(|n| n <= scale.budget)
            .unwrap_or(false)
        {
            match m_brute_with_budget(&v, scale.budget) {
                Ok(brute) if brute == closed => {}
                Ok(brute) => failures.push(format!("{v}: brute {brute} closed {closed}")),
                Err(e) => failures.push(format!("{v}: brute {e}")),
            }
        }
    }
    failures.sort();
    SuiteReport {
        name: "triple_agreement",
        checked,
        failures,
    }
}

/// Every position on the (k, s) grid receives exactly one case.
pub fn suite_classifier_partition(scale: &Scale) -> SuiteReport {
    let p = scale.p;
    let mut checked = 0;
    let mut failures = Vec::new();
    for k in 0..=4u64 {
        let Ok(pk) = crate::arith::pow_checked(p.get(), k, "partition suite") else {
            continue;
        };
        for s in 1..=8u64 {
            for l in 0..pk {
                checked += 1;
                if let Err(e) = classify_case(p, k, s, l) {
                    failures.push(format!("k={k} s={s} l={l}: {e}"));
                }
            }
        }
    }
    failures.sort();
    SuiteReport {
        name: "classifier_partition",
        checked,
        failures,
    }
}

/// The two-floor recurrence identity holds with closed-form values.
pub fn suite_rr(scale: &Scale) -> SuiteReport {
    let p = scale.p;
    let s_max = (scale.max_floor / 2).clamp(7, 10);
    let mut checked = 0;
    let mut failures = Vec::new();
    for k in 0..=2u64 {
        if s_max < k + 4 {
            continue;
        }
        let pk = p.get().pow(k as u32);
        for l in 0..pk {
            match rr_check(p, k, l, s_max) {
                Ok(report) => {
                    checked += report.checked;
                    for f in report.failures {
                        failures.push(format!("k={k} l={l} s={}: {} vs {}", f.s, f.lhs, f.rhs));
                    }
                }
                Err(e) => failures.push(format!("k={k} l={l}: {e}")),
            }
        }
    }
    failures.sort();
    SuiteReport {
        name: "recurrence_identity",
        checked,
        failures,
    }
}

/// First coefficients of every case generating function equal the closed
/// sequence values.
pub fn suite_gf_match(scale: &Scale) -> SuiteReport {
    let p = scale.p;
    let mut checked = 0;
    let mut failures = Vec::new();
    for k in 0..=3u64 {
        let Ok(pk) = crate::arith::pow_checked(p.get(), k, "gf suite") else {
            continue;
        };
        for l in 0..pk {
            checked += 1;
            match gf_matches_sequence(p, k, l, 10) {
                Ok(true) => {}
                Ok(false) => failures.push(format!("k={k} l={l}: coefficients diverge")),
                Err(e) => failures.push(format!("k={k} l={l}: {e}")),
            }
        }
    }
    failures.sort();
    SuiteReport {
        name: "gf_match",
        checked,
        failures,
    }
}

/// Geometric-series cross-check used by the classifier intervals.
fn suite_index_functions(scale: &Scale) -> SuiteReport {
    let p = scale.p;
    let mut checked = 0;
    let mut failures = Vec::new();
    for k in 0..=6u64 {
        match geom_sum(p, k) {
            Ok(g) => {
                checked += 1;
                let direct: u64 = (0..k).map(|i| p.get().pow(i as u32)).sum();
                if g != direct {
                    failures.push(format!("geom_sum({k}) = {g}, direct {direct}"));
                }
            }
            Err(e) => failures.push(format!("geom_sum({k}): {e}")),
        }
    }
    SuiteReport {
        name: "index_functions",
        checked,
        failures,
    }
}

/// Run every suite at the given scale.
pub fn run_all(scale: &Scale) -> Vec<SuiteReport> {
    vec![
        suite_index_functions(scale),
        suite_floor_structure(scale),
        suite_updown_edges(scale),
        suite_path_counts(scale),
        suite_path_blocks(scale),
        suite_depth_one(scale),
        suite_block_order(scale),
        suite_special_paths(scale),
        suite_descent_law(scale),
        suite_descent_totals(scale),
        suite_sign_balance(scale),
        suite_triple_agreement(scale),
        suite_classifier_partition(scale),
        suite_rr(scale),
        suite_gf_match(scale),
    ]
}

/// Convenience: run everything and return the failing suites.
pub fn failing_suites(scale: &Scale) -> Result<Vec<SuiteReport>> {
    Ok(run_all(scale).into_iter().filter(|s| !s.ok()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_small() {
        let scale = Scale::new(OddPrime::new(3).unwrap(), 8);
        for report in run_all(&scale) {
            assert!(
                report.ok(),
                "{}: {:?}",
                report.name,
                &report.failures[..report.failures.len().min(5)]
            );
            assert!(report.checked > 0, "{} checked nothing", report.name);
        }
    }
}
