//! One function per subcommand. Each returns the JSON result and its text rendering.

use std::f64::consts::TAU;
use std::path::Path;

use anyhow::Result;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use reidtai_core::deviation::{
    deviation_wrt_basis, eigenbasis_deviation, extraspecial_scan, product_bound_check, random_finite_order,
    random_unitary, tensor_perm_trace_check, Basis, UnitaryMatrix,
};
use reidtai_core::galois_search::{
    classify_pairs, enumerate_exceptional_multisets, feasible_orders, min_age_same_order, table1, table2,
    MultisetEvidence, PairEvidence, Witness,
};
use reidtai_core::monomial_groups::{g_group, imprimitive_classification, prop_prod_check};
use reidtai_core::published;
use reidtai_core::torus_quotient::{closure_of, filtration, simple_av_screen, OrderSource, TorusInput};
use reidtai_core::{Mode, Rational, RootOfUnity, Spectrum};

use crate::input::{input_error, read_json};
use crate::render::{join, set, table, yes_no};

/// A finished command: its JSON result, a text rendering and whether it agrees with the
/// published data (always true for commands without a reference).
pub struct Report {
    pub command: &'static str,
    pub result: Value,
    pub text: String,
    pub conformant: bool,
    /// Non-conformance fails the run even without `--strict-conformance`.
    pub hard_failure: bool,
}

impl Report {
    pub(crate) fn new(command: &'static str, result: Value, text: String) -> Self {
        Report { command, result, text, conformant: true, hard_failure: false }
    }

    fn conformant(mut self, ok: bool) -> Self {
        self.conformant = ok;
        self
    }

    fn hard(mut self) -> Self {
        self.hard_failure = true;
        self
    }

    /// The versioned JSON envelope.
    pub fn envelope(&self) -> Value {
        json!({ "schema": 1, "command": self.command, "result": self.result })
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

fn f64_of(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn parse_spectrum(text: &str) -> Result<Spectrum> {
    text.parse().map_err(|e| input_error(format!("spectrum {text:?}: {e}")))
}

fn fracs(values: &[RootOfUnity]) -> String {
    set(values)
}

pub fn age(spectrum: &str) -> Result<Report> {
    let s = parse_spectrum(spectrum)?;
    let age = Rational(s.age());
    let turns = Rational(s.arc_width_turns());
    let deviation = eigenbasis_deviation(&s);
    let result = json!({
        "spectrum": s,
        "dimension": s.dimension(),
        "order": s.order(),
        "age": age,
        "exceptional": s.is_exceptional(),
        "arc_width": s.arc_width(),
        "arc_width_turns": turns,
        "blichfeldt_violation": s.violates_blichfeldt(),
        "trace_magnitude": s.trace_magnitude(),
        "eigenbasis_deviation": deviation,
        "arc_bound": TAU * f64_of(&age),
    });
    let text = table(
        &["quantity", "value"],
        &[
            vec!["spectrum".into(), s.to_string()],
            vec!["dimension".into(), s.dimension().to_string()],
            vec!["order".into(), s.order().to_string()],
            vec!["age".into(), age.to_string()],
            vec!["exceptional".into(), yes_no(s.is_exceptional()).into()],
            vec!["arc width".into(), format!("{:.12} rad ({turns} turn)", s.arc_width())],
            vec!["blichfeldt violation".into(), yes_no(s.violates_blichfeldt()).into()],
            vec!["|trace|".into(), format!("{:.12}", s.trace_magnitude())],
            vec!["eigenbasis deviation".into(), format!("{deviation:.12}")],
            vec!["2π·age".into(), format!("{:.12}", TAU * f64_of(&age))],
        ],
    );
    Ok(Report::new("age", result, text))
}

pub fn rt_check(spectra: &[String], powers: bool) -> Result<Report> {
    let mut elements = Vec::new();
    for (i, text) in spectra.iter().enumerate() {
        let s = parse_spectrum(text)?;
        if s.is_identity() {
            return Err(input_error(format!("spectrum {s} is the identity")));
        }
        elements.push((format!("#{}", i + 1), s.clone()));
        if powers {
            for k in 2..s.order() as i64 {
                let p = s.power(k);
                if !p.is_identity() {
                    elements.push((format!("#{}^{k}", i + 1), p));
                }
            }
        }
    }
    let ok = reidtai_core::spectra::satisfies_rt(elements.iter().map(|(_, s)| s));
    let rows: Vec<Value> = elements
        .iter()
        .map(|(src, s)| json!({ "source": src, "spectrum": s, "age": Rational(s.age()), "exceptional": s.is_exceptional() }))
        .collect();
    let mut text = table(
        &["element", "spectrum", "age", "exceptional"],
        &elements
            .iter()
            .map(|(src, s)| {
                vec![src.clone(), s.to_string(), Rational(s.age()).to_string(), yes_no(s.is_exceptional()).into()]
            })
            .collect::<Vec<_>>(),
    );
    text.push_str(&format!("Reid-Tai condition: {}\n", if ok { "satisfied" } else { "violated" }));
    Ok(Report::new("rt-check", json!({ "satisfies_rt": ok, "elements": rows }), text))
}

pub fn orders_scan(bound: u64) -> Result<Report> {
    let scan = feasible_orders(bound)?;
    let c = &scan.conformance;
    let result = json!({
        "bound": scan.bound,
        "orders": scan.orders,
        "conformance": {
            "expected": c.expected,
            "computed": c.computed,
            "missing": c.missing.iter().map(|a| json!({ "item": a.item, "evidence": a.evidence })).collect::<Vec<_>>(),
            "extra": c.extra.iter().map(|a| json!({ "item": a.item, "witness": Witness::HalfOrbit(a.evidence.clone()) })).collect::<Vec<_>>(),
        },
    });
    let mut text =
        format!("orders d <= {} with minimal half-orbit sum below one:\n{}\n", scan.bound, set(&scan.orders));
    text.push_str(&format!("published: {}\n", set(&c.expected)));
    text.push_str(&format!("missing:   {}\n", set(c.missing_items())));
    let rows: Vec<Vec<String>> = c
        .extra
        .iter()
        .map(|a| vec![a.item.to_string(), a.evidence.sum.to_string(), join(&a.evidence.representatives, ",")])
        .collect();
    text.push_str("extra:\n");
    text.push_str(&table(&["d", "half-orbit sum", "representatives"], &rows));
    Ok(Report::new("orders-scan", result, text).conformant(c.is_conformant()))
}

fn pair_witness(e: &PairEvidence) -> Value {
    match Witness::from_pair_evidence(e) {
        Some(w) => to_value(&w),
        None => to_value(e),
    }
}

fn evidence_summary(e: &PairEvidence) -> String {
    match e {
        PairEvidence::Sigma(w) => {
            format!("Σ = {} mod {}, sum {}", set(&w.witness.chosen_residues), w.witness.modulus, w.sum)
        }
        PairEvidence::Orbit(o) => format!("twist total {}", o.total),
        PairEvidence::OwnAgeAtLeastOne { sum } => format!("values sum to {sum}"),
        PairEvidence::OrderBound { value, halforbit } => {
            format!("order of {value} has half-orbit sum {}", halforbit.sum)
        }
        PairEvidence::NoSigmaBelowOne => "no Σ below one".into(),
    }
}

pub fn pair_search(f_max: u64, mode: Mode) -> Result<Report> {
    let p = classify_pairs(f_max, mode)?;
    let c = &p.conformance;
    let result = json!({
        "f_max": p.f_max,
        "mode": p.mode,
        "classes": p.classes.iter().map(|k| json!({
            "values": k.values,
            "modulus": k.modulus,
            "minimal_sum": k.minimal_sum,
            "witness": pair_witness(&k.evidence),
        })).collect::<Vec<_>>(),
        "conformance": {
            "expected": c.expected,
            "computed": c.computed,
            "missing": c.missing.iter().map(|a| json!({ "item": a.item, "evidence": a.evidence })).collect::<Vec<_>>(),
            "extra": c.extra.iter().map(|a| json!({ "item": a.item, "witness": pair_witness(&a.evidence) })).collect::<Vec<_>>(),
        },
    });
    let published: Vec<&Vec<RootOfUnity>> = c.expected.iter().collect();
    let rows: Vec<Vec<String>> = p
        .classes
        .iter()
        .map(|k| {
            vec![
                fracs(&k.values),
                k.modulus.to_string(),
                k.minimal_sum.to_string(),
                if published.contains(&&k.values) { "published" } else { "extra" }.into(),
                evidence_summary(&k.evidence),
            ]
        })
        .collect();
    let mut text = format!("pairs with lcm of orders <= {f_max}, mode {mode}:\n");
    text.push_str(&table(&["pair", "f", "minimal sum", "status", "witness"], &rows));
    for a in &c.missing {
        text.push_str(&format!("missing {}: {}\n", fracs(&a.item), evidence_summary(&a.evidence)));
    }
    text.push_str(&format!("{} computed, {} missing, {} extra\n", c.computed.len(), c.missing.len(), c.extra.len()));
    Ok(Report::new("pair-search", result, text).conformant(c.is_conformant()))
}

pub fn table1_cmd() -> Result<Report> {
    let rows = table1();
    let mut all_match = true;
    let mut out = Vec::new();
    let mut text_rows = Vec::new();
    for (row, entry) in rows.iter().zip(published::TABLE1.iter()) {
        let values: Vec<RootOfUnity> =
            entry.values.iter().map(|&(a, d)| RootOfUnity::new(a as i64, d).expect("published fraction")).collect();
        let mean = Rational::new(entry.mean.0 as i64, entry.mean.1 as i64);
        let matches = row.n == entry.n && row.half_phi == entry.half_phi && row.values == values && row.mean == mean;
        all_match &= matches;
        let below = *row.mean < *Rational::new(1, 4);
        out.push(json!({
            "n": row.n,
            "half_phi": row.half_phi,
            "values": row.values,
            "mean": row.mean,
            "mean_below_quarter": below,
            "matches_published": matches,
        }));
        text_rows.push(vec![
            row.n.to_string(),
            row.half_phi.to_string(),
            join(&row.values, ", "),
            row.mean.to_string(),
            if below { "< 1/4" } else { ">= 1/4" }.into(),
            yes_no(matches).into(),
        ]);
    }
    let text = table(&["n", "φ(n)/2", "values r_j", "mean of r_j", "mean vs 1/4", "matches"], &text_rows);
    Ok(Report::new("table1", json!({ "rows": out, "all_match": all_match }), text).conformant(all_match))
}

pub fn table2_cmd() -> Result<Report> {
    let cells = table2()?;
    let all = cells.iter().all(|c| c.matches);
    let rows: Vec<Vec<String>> = cells
        .iter()
        .map(|c| {
            vec![
                format!("({})", c.case),
                c.dimension.to_string(),
                c.published_label.clone(),
                format!("{:.12}", c.magnitude),
                format!("{:.6}", c.magnitude * c.magnitude),
                yes_no(c.matches).into(),
                join(c.reproduced_by.iter().map(|l| format!("({l})")), " "),
                join(&c.matches_without_one, " "),
            ]
        })
        .collect();
    let mut text = table(
        &[
            "case",
            "dim",
            "printed",
            "|trace|",
            "|trace|²",
            "matches",
            "printed value reached by",
            "matches with one copy removed",
        ],
        &rows,
    );
    let mismatches = cells.iter().filter(|c| !c.matches).count();
    text.push_str(&format!("{} of {} printed cells reproduced\n", cells.len() - mismatches, cells.len()));
    Ok(Report::new("table2", json!({ "cells": cells, "all_match": all }), text).conformant(all))
}

fn multiset_witness(m: &Spectrum, e: &MultisetEvidence) -> Value {
    match Witness::from_multiset_evidence(m, e) {
        Some(w) => to_value(&w),
        None => to_value(e),
    }
}

pub fn multisets(mode: Mode, f_max: u64) -> Result<Report> {
    let e = enumerate_exceptional_multisets(f_max, mode)?;
    let c = &e.conformance;
    let label_of = |m: &Spectrum| {
        published::EXCEPTIONAL_MULTISETS
            .iter()
            .find(|(_, fr)| {
                Spectrum::from_fractions(&fr.iter().map(|&(a, d)| (a as i64, d)).collect::<Vec<_>>()).ok().as_ref()
                    == Some(m)
            })
            .map(|(l, _)| *l)
    };
    let result = json!({
        "mode": e.mode,
        "f_max": e.f_max,
        "value_sets": e.value_sets.iter().map(|v| &v.values).collect::<Vec<_>>(),
        "multisets": e.multisets.iter().map(|m| json!({
            "label": m.label,
            "multiset": m.multiset,
            "age": m.age,
            "witness": multiset_witness(&m.multiset, &m.evidence),
        })).collect::<Vec<_>>(),
        "refuted": e.refuted.iter().map(|r| json!({
            "multiset": r.item,
            "label": label_of(&r.item),
            "total": r.evidence.total,
            "witness": Witness::OrbitSets(r.evidence.clone()),
        })).collect::<Vec<_>>(),
        "conformance": {
            "expected": c.expected,
            "computed": c.computed,
            "missing": c.missing.iter().map(|a| json!({ "item": a.item, "label": label_of(&a.item), "evidence": a.evidence })).collect::<Vec<_>>(),
            "extra": c.extra.iter().map(|a| json!({ "item": a.item, "witness": multiset_witness(&a.item, &a.evidence) })).collect::<Vec<_>>(),
        },
    });
    let rows: Vec<Vec<String>> = e
        .multisets
        .iter()
        .map(|m| vec![m.label.map_or(String::new(), |l| format!("({l})")), m.multiset.to_string(), m.age.to_string()])
        .collect();
    let mut text = format!("exceptional multisets, mode {mode}:\n");
    text.push_str(&table(&["label", "multiset", "age"], &rows));
    for a in &c.missing {
        let why = match &a.evidence {
            MultisetEvidence::Orbit(o) => format!("twist total {}", o.total),
            MultisetEvidence::AgeAtLeastOne { age } => format!("age {age}"),
            MultisetEvidence::NotCandidate { values } => format!("values {} not a candidate set", fracs(values)),
            MultisetEvidence::ValueUnion { age, .. } => format!("age {age}"),
        };
        let l = label_of(&a.item).map_or(String::new(), |l| format!("({l}) "));
        text.push_str(&format!("missing {l}{}: {why}\n", a.item));
    }
    text.push_str(&format!(
        "{} multisets, {} refuted, {} missing, {} extra\n",
        e.multisets.len(),
        e.refuted.len(),
        c.missing.len(),
        c.extra.len()
    ));
    Ok(Report::new("multisets", result, text).conformant(c.is_conformant()))
}

pub fn same_order_screen(n: u64, dim: u64) -> Result<Report> {
    let a = min_age_same_order(n, dim).map_err(|e| input_error(e.to_string()))?;
    let text = match &a.min_age {
        Some(age) => format!(
            "n = {n}, dim = {dim}: minimal age {age} ({} half-orbit, {} full-orbit blocks), {}\n",
            a.half_blocks,
            a.full_blocks,
            if a.is_exceptional() { "exceptional" } else { "not exceptional" }
        ),
        None => format!("n = {n}, dim = {dim}: no block decomposition\n"),
    };
    let mut result = to_value(&a);
    result["exceptional"] = json!(a.is_exceptional());
    Ok(Report::new("same-order-screen", result, text))
}

fn load_action(path: &Path, cap: usize) -> Result<reidtai_core::TorusAction> {
    let input: TorusInput = read_json(path)?;
    input.validate().map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    Ok(closure_of(&input, cap)?)
}

pub fn av_verdict(path: &Path, cap: usize) -> Result<Report> {
    let a = load_action(path, cap)?;
    let f = filtration(&a, cap)?;
    let ranks: Vec<usize> = f.chain.iter().map(|l| l.rank()).collect();
    let result = json!({
        "verdict": f.verdict,
        "rank": f.rank,
        "group_order": f.group_order,
        "exceptional_count": f.exceptional_elements.len(),
        "chain_ranks": ranks,
    });
    Ok(Report::new("av-verdict", result, format!("{}\n", f.verdict)))
}

pub fn filtration_cmd(path: &Path, cap: usize) -> Result<Report> {
    let a = load_action(path, cap)?;
    let f = filtration(&a, cap)?;
    let mut text = format!("rank {}, group order {}, G^RT order {}\n", f.rank, f.group_order, f.rt_subgroup_order);
    let rows: Vec<Vec<String>> = f
        .exceptional_elements
        .iter()
        .map(|e| vec![e.element.to_string(), e.spectrum.to_string(), e.age.to_string(), set(&e.fixed_point)])
        .collect();
    text.push_str("exceptional elements:\n");
    text.push_str(&table(&["element", "spectrum", "age", "fixed point"], &rows));
    text.push_str("chain:\n");
    for (i, l) in f.chain.iter().enumerate() {
        text.push_str(&format!("  A_{}: rank {} basis {}\n", i + 1, l.rank(), l.basis()));
    }
    for s in &f.stages {
        text.push_str(&format!(
            "  stage {}: quotient rank {}, quotient group order {}, {} exceptional\n",
            s.index,
            s.quotient_rank,
            s.quotient_group_order,
            s.exceptional.len()
        ));
    }
    text.push_str(&format!("verdict: {}\n", f.verdict));
    Ok(Report::new("filtration", to_value(&f), text))
}

pub fn simple_av_screen_cmd(dim: u64, n: Option<u64>, computed_orders: Option<u64>) -> Result<Report> {
    let source = match computed_orders {
        Some(bound) => OrderSource::Computed { bound },
        None => OrderSource::Published,
    };
    let s = simple_av_screen(dim, n, source).map_err(|e| input_error(e.to_string()))?;
    let rows: Vec<Vec<String>> = s
        .entries
        .iter()
        .map(|e| {
            vec![
                e.n.to_string(),
                e.min_age.as_ref().map_or("-".into(), ToString::to_string),
                format!("{}+{}", e.half_blocks, e.full_blocks),
                yes_no(e.is_exceptional()).into(),
            ]
        })
        .collect();
    let mut text = format!("dim {dim}:\n");
    text.push_str(&table(&["n", "minimal age", "half+full blocks", "exceptional"], &rows));
    text.push_str(&format!("survivors: {}\n", set(s.survivors.iter().map(|(n, a)| format!("{n}: {a}")))));
    Ok(Report::new("simple-av-screen", to_value(&s), text))
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn monomial_check(m: u64, p: u64, n: usize, reflection_rep: bool, cap: usize) -> Result<Report> {
    if m == 0 || p == 0 || !m.is_multiple_of(p) || n == 0 {
        return Err(input_error(format!("need p | m and m, p, n >= 1; got m={m}, p={p}, n={n}")));
    }
    let expected = (m as u128).pow(n as u32) * factorial(n) / p as u128;
    let g = g_group(m, p, n, cap)?;
    let r = prop_prod_check(&g, reflection_rep).map_err(|e| input_error(e.to_string()))?;
    let order_ok = g.order() as u128 == expected;
    let ok = order_ok && r.violations.is_empty();
    let result = json!({
        "m": m, "p": p, "n": n,
        "group_order": g.order(),
        "expected_order": expected as u64,
        "order_matches": order_ok,
        "report": r,
    });
    let rows: Vec<Vec<String>> = r
        .exceptional
        .iter()
        .map(|e| {
            vec![
                e.element.to_string(),
                e.spectrum.to_string(),
                e.age.to_string(),
                join(&e.cycle_type, "+"),
                e.closure_index.to_string(),
            ]
        })
        .collect();
    let mut text = format!(
        "G({m},{p},{n}): order {} (expected {expected}){}\n",
        g.order(),
        if reflection_rep { ", reflection representation" } else { "" }
    );
    text.push_str(&table(&["element", "spectrum", "age", "cycle type", "closure index"], &rows));
    text.push_str(&format!("{} exceptional, {} violations\n", r.exceptional.len(), r.violations.len()));
    Ok(Report::new("monomial-check", result, text).conformant(ok).hard())
}

pub fn imprimitive_cases(f_max: u64) -> Result<Report> {
    let c = imprimitive_classification(f_max)?;
    let rows: Vec<Vec<String>> = c
        .candidates
        .iter()
        .map(|k| {
            vec![
                k.r.to_string(),
                fracs(&k.extras),
                k.spectrum.to_string(),
                k.age.to_string(),
                k.square.to_string(),
                k.square_age.to_string(),
                if k.eliminated { "eliminated" } else { "survives" }.into(),
            ]
        })
        .collect();
    let mut text = format!("block offsets r: {}\n", fracs(&c.block_offsets));
    text.push_str(&table(&["r", "extras", "spectrum", "age", "square", "square age", "status"], &rows));
    for s in &c.survivors {
        text.push_str(&format!("survivor: {} ({})\n", s.spectrum, s.element));
    }
    Ok(Report::new("imprimitive-cases", to_value(&c), text))
}

pub fn deviation(spectrum: Option<&str>, matrix: Option<&Path>, trials: Option<usize>, seed: u64) -> Result<Report> {
    if let Some(text) = spectrum {
        let s = parse_spectrum(text)?;
        let diag = deviation_wrt_basis(&UnitaryMatrix::diagonal(&s), &Basis::standard(s.dimension()))?;
        let age = Rational(s.age());
        let arc = TAU * f64_of(&age);
        let result = json!({
            "spectrum": s,
            "eigenbasis_deviation": eigenbasis_deviation(&s),
            "distances": diag.distances,
            "age": age,
            "arc_bound": arc,
            "below_two_pi": eigenbasis_deviation(&s) < TAU,
        });
        let text =
            format!("{s}: eigenbasis deviation {:.12} (arc bound 2π·age = {arc:.12})\n", eigenbasis_deviation(&s));
        return Ok(Report::new("deviation", result, text));
    }
    if let Some(path) = matrix {
        let rows: Vec<Vec<[f64; 2]>> = read_json(path)?;
        let t = UnitaryMatrix::from_pairs(&rows).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
        let r = deviation_wrt_basis(&t, &Basis::standard(t.dimension()))?;
        let text = format!("deviation in the standard basis: {:.12}\n", r.total);
        return Ok(Report::new("deviation", to_value(&r), text));
    }
    let Some(trials) = trials else {
        return Err(input_error("deviation needs --spectrum, --matrix or --random-trials"));
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut product_failures, mut tensor_failures) = (0, 0);
    for _ in 0..trials {
        let dim = rng.random_range(1..=6);
        let k = rng.random_range(2..=4);
        let (ts, bs): (Vec<UnitaryMatrix>, Vec<Basis>) = (0..k).map(|_| random_finite_order(dim, 12, &mut rng)).unzip();
        if !product_bound_check(&ts, &bs)?.holds {
            product_failures += 1;
        }
        let k = rng.random_range(2..=3);
        let ms: Vec<_> = (0..k).map(|_| random_unitary(dim, &mut rng)).collect();
        let r = tensor_perm_trace_check(&ms)?;
        if !(r.identity_holds && r.bound_holds) {
            tensor_failures += 1;
        }
    }
    let ok = product_failures == 0 && tensor_failures == 0;
    let result = json!({
        "trials": trials,
        "seed": seed,
        "product_bound_failures": product_failures,
        "tensor_trace_failures": tensor_failures,
    });
    let text = format!(
        "{trials} trials (seed {seed}): product bound failures {product_failures}, tensor trace failures {tensor_failures}\n"
    );
    Ok(Report::new("deviation", result, text).conformant(ok).hard())
}

pub fn extraspecial(max_dim: u64) -> Result<Report> {
    let reports = extraspecial_scan(max_dim);
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.p.to_string(),
                r.n_exp.to_string(),
                r.m.to_string(),
                r.dimension.to_string(),
                format!("{:.6}", r.eigenbasis_deviation),
                format!("{:.6}", r.lower_bound),
                format!("{:.6}", r.final_bound),
                yes_no(r.survives).into(),
            ]
        })
        .collect();
    let survivors: Vec<(u64, u32, u64)> = reports.iter().filter(|r| r.survives).map(|r| (r.p, r.n_exp, r.m)).collect();
    let text = table(&["p", "n", "m", "dim", "chord deviation", "2π·age", "2π·dim/4", "survives"], &rows);
    Ok(Report::new(
        "extraspecial-scan",
        json!({ "max_dim": max_dim, "reports": reports, "survivors": survivors }),
        text,
    ))
}

/// Collects every value that parses as a witness: the document itself, members of a list, or
/// any field named `witness` nested inside a report.
fn collect_witnesses(v: &Value, out: &mut Vec<Witness>) {
    if let Ok(w) = serde_json::from_value::<Witness>(v.clone()) {
        out.push(w);
        return;
    }
    match v {
        Value::Array(items) => items.iter().for_each(|i| collect_witnesses(i, out)),
        Value::Object(map) => {
            for (k, x) in map {
                if k == "witness" {
                    if let Ok(w) = serde_json::from_value::<Witness>(x.clone()) {
                        out.push(w);
                        continue;
                    }
                }
                collect_witnesses(x, out);
            }
        }
        _ => {}
    }
}

pub fn verify_witness(path: &Path) -> Result<Report> {
    let doc: Value = read_json(path)?;
    let mut witnesses = Vec::new();
    collect_witnesses(&doc, &mut witnesses);
    if witnesses.is_empty() {
        return Err(input_error(format!("{}: no witness found", path.display())));
    }
    let checks: Vec<(String, std::result::Result<String, String>)> = witnesses
        .iter()
        .map(|w| {
            let kind = to_value(w)["kind"].as_str().unwrap_or("?").to_string();
            (kind, w.verify())
        })
        .collect();
    let failed = checks.iter().filter(|(_, r)| r.is_err()).count();
    let results: Vec<Value> = checks
        .iter()
        .map(|(kind, r)| match r {
            Ok(m) => json!({ "kind": kind, "ok": true, "message": m }),
            Err(m) => json!({ "kind": kind, "ok": false, "message": m }),
        })
        .collect();
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|(kind, r)| match r {
            Ok(m) => vec![kind.clone(), "ok".into(), m.clone()],
            Err(m) => vec![kind.clone(), "FAILED".into(), m.clone()],
        })
        .collect();
    let mut text = table(&["kind", "status", "detail"], &rows);
    text.push_str(&format!("{} witnesses, {failed} failed\n", checks.len()));
    let result = json!({ "checked": checks.len(), "failed": failed, "results": results });
    Ok(Report::new("verify-witness", result, text).conformant(failed == 0).hard())
}
