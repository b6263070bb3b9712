//! Suite runner and report records.
//!
//! Every (group, check) task yields JSON-lines records. Runs are
//! deterministic for a fixed config and seed regardless of worker count:
//! tasks are independent, carry their own derived RNG streams, and records
//! are merged and sorted by a single writer.

use crate::corpus::{CorpusConfig, CorpusGroup};
use crate::dense::DenseGroup;
use crate::ds::{checks, gamma, DsContext, DsTuple};
use crate::gallery;
use crate::rng::{stream_id_for, RngStream};
use crate::spec::{BuiltGroup, Caps, GroupSpec, SpecError};
use crate::verdict::{ConjectureVerdict, VerdictStatus, Witness};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

pub const ALL_SUITES: &[&str] = &[
    "baer",
    "two_prime",
    "union",
    "star",
    "conjecture_a",
    "conjecture_b",
    "metanilpotent",
    "odd_order",
    "transport",
    "semidirect",
    "gallery",
];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportRecord {
    pub check: String,
    /// `name#spec-hash`: corpus edits cannot silently re-map results.
    pub group_id: String,
    pub status: VerdictStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub payload: serde_json::Value,
    pub elapsed_ms: u64,
    pub seed: u64,
}

pub fn group_id(group: &CorpusGroup) -> String {
    format!("{}#{}", group.name, group.spec.content_hash())
}

fn to_record(group_id: &str, verdict: ConjectureVerdict, seed: u64) -> ReportRecord {
    ReportRecord {
        check: verdict.check,
        group_id: group_id.to_string(),
        status: verdict.status,
        witness: verdict.witness,
        reason: verdict.reason,
        payload: verdict.payload,
        elapsed_ms: verdict.elapsed_ms,
        seed,
    }
}

fn skipped_record(group_id: &str, check: &str, reason: &str, seed: u64) -> ReportRecord {
    to_record(
        group_id,
        ConjectureVerdict::skipped(check, reason),
        seed,
    )
}

/// Runs one suite on one built group.
fn run_suite_on_group(
    suite: &str,
    group: &CorpusGroup,
    built: &BuiltGroup,
    dense: &Arc<DenseGroup>,
    ctx: &DsContext,
    caps: &Caps,
    master_seed: u64,
) -> Vec<ReportRecord> {
    let id = group_id(group);
    let seed = master_seed;
    let mut records = Vec::new();
    match suite {
        "baer" => {
            records.push(to_record(&id, checks::check_baer(ctx, caps.enum_cap), seed));
        }
        "two_prime" => {
            match checks::check_two_prime_transitivity(ctx, caps.tuple_bound) {
                Ok(v) => records.push(to_record(&id, v, seed)),
                Err(err) => {
                    records.push(skipped_record(&id, "two_prime_transitivity", &err.to_string(), seed))
                }
            }
        }
        "union" => {
            records.push(to_record(
                &id,
                checks::check_union_all_reps(ctx, caps.tuple_bound),
                seed,
            ));
        }
        "star" => {
            records.push(to_record(&id, checks::check_star(ctx), seed));
        }
        "conjecture_a" => {
            let mut rng = RngStream::new(
                master_seed,
                stream_id_for(&format!("{id}:conjecture_a")),
            );
            records.push(to_record(
                &id,
                checks::check_conjecture_a(ctx, caps.tuple_bound, caps.sample_budget, &mut rng),
                seed,
            ));
        }
        "conjecture_b" => {
            records.push(to_record(
                &id,
                checks::check_conjecture_b(ctx, caps.tuple_bound),
                seed,
            ));
        }
        "metanilpotent" => {
            let inv = dense.invariants();
            records.push(to_record(
                &id,
                checks::check_metanilpotent_sync(ctx, &inv, caps.tuple_bound),
                seed,
            ));
        }
        "odd_order" => {
            let inv = dense.invariants();
            for v in checks::check_odd_order_suite(ctx, &inv, caps.enum_cap) {
                records.push(to_record(&id, v, seed));
            }
        }
        "transport" => {
            if ctx.rho.len() < 2 {
                records.push(skipped_record(
                    &id,
                    "sylow_transport_count",
                    "fewer than two non-normal Sylow classes",
                    seed,
                ));
            } else {
                let (pa, pb) = (ctx.rho[0], ctx.rho[1]);
                match checks::check_transport_count(ctx, pa, pb, 0, 0) {
                    Ok(mut v) => {
                        v.payload["primes"] = serde_json::json!([pa, pb]);
                        v.payload["targets"] = serde_json::json!([0, 0]);
                        records.push(to_record(&id, v, seed));
                    }
                    Err(err) => records.push(skipped_record(
                        &id,
                        "sylow_transport_count",
                        &err.to_string(),
                        seed,
                    )),
                }
            }
        }
        "semidirect" => {
            if built.parts.contains_key("normal") && built.parts.contains_key("actor") {
                let outcome = built
                    .part_handle("normal")
                    .and_then(|v| built.part_handle("actor").map(|k| (v, k)));
                match outcome {
                    Ok((v, k)) => match checks::check_semidirect_centralizer(dense, &v, &k) {
                        Ok(verdict) => records.push(to_record(&id, verdict, seed)),
                        Err(err) => records.push(skipped_record(
                            &id,
                            "semidirect_centralizer",
                            &err.to_string(),
                            seed,
                        )),
                    },
                    Err(err) => records.push(skipped_record(
                        &id,
                        "semidirect_centralizer",
                        &err.to_string(),
                        seed,
                    )),
                }
            }
        }
        "gallery" => {
            if let GroupSpec::Gallery(name) = &group.spec {
                let entry = gallery::entry_by_name(name)
                    .expect("corpus gallery members exist in the gallery");
                match gallery::verify_entry(&entry, caps) {
                    Ok(verdicts) => {
                        for v in verdicts {
                            records.push(to_record(&id, v, seed));
                        }
                    }
                    Err(err) => records.push(skipped_record(
                        &id,
                        "gallery_fact",
                        &err.to_string(),
                        seed,
                    )),
                }
            }
        }
        other => {
            records.push(skipped_record(
                &id,
                other,
                "unknown suite name",
                seed,
            ));
        }
    }
    records
}

fn resolve_suites(config: &CorpusConfig) -> Vec<String> {
    if config.suites.iter().any(|s| s == "all") {
        ALL_SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        config.suites.clone()
    }
}

/// Runs all configured suites over the corpus; records come back sorted.
pub fn run_suites(config: &CorpusConfig) -> Vec<ReportRecord> {
    let suites = resolve_suites(config);
    let caps = &config.caps;
    let run_group = |group: &CorpusGroup| -> Vec<ReportRecord> {
        let id = group_id(group);
        let built = match group.spec.build(caps) {
            Ok(b) => b,
            Err(err) => {
                return suites
                    .iter()
                    .map(|s| skipped_record(&id, s, &format!("build failed: {err}"), config.master_seed))
                    .collect()
            }
        };
        let Some(dense) = built.dense.clone() else {
            return suites
                .iter()
                .map(|s| {
                    skipped_record(
                        &id,
                        s,
                        &format!("order {} exceeds the dense cap", built.bsgs.order()),
                        config.master_seed,
                    )
                })
                .collect();
        };
        let ctx = DsContext::build(&dense);
        let mut records = Vec::new();
        for suite in &suites {
            records.extend(run_suite_on_group(
                suite,
                group,
                &built,
                &dense,
                &ctx,
                caps,
                config.master_seed,
            ));
        }
        records
    };
    let mut records: Vec<ReportRecord> = if config.jobs == 1 {
        config.groups.iter().flat_map(run_group).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .expect("thread pool builds");
        pool.install(|| {
            config
                .groups
                .par_iter()
                .map(run_group)
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect()
        })
    };
    sort_records(&mut records);
    records
}

fn sort_records(records: &mut [ReportRecord]) {
    records.sort_by(|a, b| {
        (&a.group_id, &a.check, a.payload.to_string()).cmp(&(
            &b.group_id,
            &b.check,
            b.payload.to_string(),
        ))
    });
}

pub fn to_jsonl(records: &[ReportRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

/// Order-normalized form for byte comparison: sorted records with the
/// timing field zeroed (wall time is the one legitimately varying field).
pub fn normalized_jsonl(records: &[ReportRecord]) -> String {
    let mut copies: Vec<ReportRecord> = records.to_vec();
    for r in &mut copies {
        r.elapsed_ms = 0;
    }
    sort_records(&mut copies);
    to_jsonl(&copies)
}

/// True when any record is a counterexample (the CLI exits 2 on this).
pub fn has_counterexample(records: &[ReportRecord]) -> bool {
    records
        .iter()
        .any(|r| r.status == VerdictStatus::Counterexample)
}

/// Re-verifies a record's witness against a fresh build of its group.
/// Records without witnesses re-verify by re-running their check and
/// comparing status.
pub fn replay_record(record: &ReportRecord, config: &CorpusConfig) -> Result<bool, SpecError> {
    let group = config
        .groups
        .iter()
        .find(|g| group_id(g) == record.group_id)
        .ok_or_else(|| {
            SpecError::Validation(format!("no corpus group with id {}", record.group_id))
        })?;
    let built = group.spec.build(&config.caps)?;
    let dense = built.dense()?.clone();
    let ctx = DsContext::build(&dense);
    if let Some(witness) = &record.witness {
        if !witness_reverifies(record, witness, &ctx)? {
            return Ok(false);
        }
    }
    // status must reproduce
    let suite = suite_of_check(&record.check);
    let fresh = run_suite_on_group(
        suite,
        group,
        &built,
        &dense,
        &ctx,
        &config.caps,
        record.seed,
    );
    Ok(fresh
        .iter()
        .any(|r| r.check == record.check && r.status == record.status))
}

fn suite_of_check(check: &str) -> &'static str {
    match check {
        "baer_hypercenter" => "baer",
        "two_prime_transitivity" => "two_prime",
        "normalizer_union" => "union",
        "star" => "star",
        "conjecture_a" => "conjecture_a",
        "conjecture_b" => "conjecture_b",
        "metanilpotent_sync" => "metanilpotent",
        "sylow_transport_count" => "transport",
        "semidirect_centralizer" => "semidirect",
        "gallery_fact" => "gallery",
        _ => "odd_order",
    }
}

/// Check-specific witness validation: the recorded element/tuple must still
/// exhibit the recorded property.
fn witness_reverifies(
    record: &ReportRecord,
    witness: &Witness,
    ctx: &DsContext,
) -> Result<bool, SpecError> {
    if record.status != VerdictStatus::Verified {
        return Ok(true); // counterexample/skip witnesses are informational
    }
    let d = &ctx.group;
    let element_index = |w: &Witness| -> Result<Option<usize>, SpecError> {
        match &w.element {
            None => Ok(None),
            Some(images) => {
                let p = crate::perm::Permutation::from_images(images.clone())?;
                Ok(Some(d.index_of(&p).ok_or_else(|| {
                    SpecError::Validation("witness element is not in the group".into())
                })?))
            }
        }
    };
    let tuple = witness.tuple.clone().map(DsTuple);
    match record.check.as_str() {
        "conjecture_a" => {
            let (Some(x), Some(tuple)) = (element_index(witness)?, tuple) else {
                return Ok(true); // vacuous form carries no tuple
            };
            let report = gamma(ctx, &tuple);
            Ok(report.joint.contains(x))
        }
        "conjecture_b" | "metanilpotent_sync" => {
            let (Some(x), Some(tuple)) = (element_index(witness)?, tuple) else {
                return Ok(true);
            };
            if record.check == "metanilpotent_sync" && !d.invariants().fitting.contains(x) {
                return Ok(false);
            }
            for (i, &p) in ctx.rho.iter().enumerate() {
                let q = ctx.tuple_subgroup(&tuple, i);
                let mut m = q.mask().clone();
                m.intersect_with(&d.conjugate_mask(q.mask(), x));
                if m != *ctx.systems[&p].p_core.mask() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        "normalizer_union" => {
            let (Some(x), Some(tuple)) = (element_index(witness)?, tuple) else {
                return Ok(true);
            };
            for (i, &p) in ctx.rho.iter().enumerate() {
                let system = &ctx.systems[&p];
                let n = system.normalizer.conjugate(system.conjugating[tuple.0[i]]);
                if n.contains(x) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        "sylow_transport_count" => {
            let Some(x) = element_index(witness)? else {
                return Ok(true);
            };
            let primes = record.payload["primes"]
                .as_array()
                .map(|a| a.iter().filter_map(|v| v.as_u64()).collect::<Vec<_>>())
                .unwrap_or_default();
            let targets = record.payload["targets"]
                .as_array()
                .map(|a| {
                    a.iter()
                        .filter_map(|v| v.as_u64().map(|u| u as usize))
                        .collect::<Vec<_>>()
                })
                .unwrap_or_default();
            if primes.len() != 2 || targets.len() != 2 {
                return Ok(true);
            }
            for (p, t) in primes.iter().zip(&targets) {
                let system = &ctx.systems[p];
                let target = &system.conjugates[*t];
                let ok = system
                    .representative
                    .generators()
                    .iter()
                    .all(|&s| target.contains(d.conj(s, x)));
                if !ok {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => Ok(true),
    }
}
