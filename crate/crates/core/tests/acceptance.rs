//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (visible with `--nocapture`). Tolerances and bounds are pinned here.

use num_bigint::BigUint;
use std::sync::{Arc, OnceLock};
use std::time::Instant;
use sylosync::arith;
use sylosync::corpus::{default_corpus, CorpusConfig};
use sylosync::dense::DenseGroup;
use sylosync::ds::checks;
use sylosync::ds::{ds_orbits, gamma, star_report, DsContext, DsTuple};
use sylosync::gallery;
use sylosync::mc::{
    exact_intersection_prob, mc_intersection_prob, sync_search, trivial_intersection_test,
    Family, DEFAULT_SYLOW_LIMIT,
};
use sylosync::perm::Permutation;
use sylosync::report::{normalized_jsonl, replay_record, run_suites};
use sylosync::spec::Caps;
use sylosync::sylow::sym_sylow;
use sylosync::verdict::VerdictStatus;

const MC_SEED: u64 = 11;
const MC_TRIALS: u64 = 10_000;

struct Fixture {
    name: String,
    dense: Arc<DenseGroup>,
    ctx: DsContext,
}

fn corpus() -> &'static [Fixture] {
    static CORPUS: OnceLock<Vec<Fixture>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let caps = Caps::default();
        default_corpus()
            .groups
            .iter()
            .map(|g| {
                let built = g.spec.build(&caps).expect("corpus groups build");
                let dense = built.dense().expect("corpus groups fit densely").clone();
                let ctx = DsContext::build(&dense);
                Fixture {
                    name: g.name.clone(),
                    dense,
                    ctx,
                }
            })
            .collect()
    })
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

fn criterion(number: u32, name: &str, body: impl FnOnce() -> Result<(), String>) {
    let started = Instant::now();
    let outcome = body();
    println!(
        "criterion {number:02} ({name}): {} [{:.2}s]",
        if outcome.is_ok() { "PASS" } else { "FAIL" },
        started.elapsed().as_secs_f64()
    );
    if let Err(message) = outcome {
        panic!("criterion {number:02} ({name}): {message}");
    }
}

#[test]
fn criterion_01_baer_cross_oracle() {
    criterion(1, "baer cross-oracle", || {
        let caps = Caps::default();
        for f in corpus() {
            let verdict = checks::check_baer(&f.ctx, caps.enum_cap);
            ensure!(
                verdict.is_verified(),
                "{}: hypercenter routes disagree: {}",
                f.name,
                verdict.payload
            );
            let routes = verdict.payload["routes"].as_array().unwrap().len();
            let expected_routes = if f.dense.order() <= caps.enum_cap { 4 } else { 3 };
            ensure!(
                routes == expected_routes,
                "{}: {routes} routes checked, expected {expected_routes}",
                f.name
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_02_two_prime_transitivity() {
    criterion(2, "two-prime transitivity", || {
        let caps = Caps::default();
        let mut two_prime_names = Vec::new();
        for f in corpus() {
            if arith::primes_dividing(f.dense.order() as u64).len() > 2 {
                continue;
            }
            two_prime_names.push(f.name.as_str());
            let verdict = checks::check_two_prime_transitivity(&f.ctx, caps.tuple_bound)
                .map_err(|e| format!("{}: {e}", f.name))?;
            ensure!(
                verdict.is_verified(),
                "{}: tuple action not transitive: {}",
                f.name,
                verdict.payload
            );
        }
        ensure!(
            two_prime_names.contains(&"sym4") && two_prime_names.contains(&"sym4_x_sym3"),
            "named two-prime instances missing from the corpus: {two_prime_names:?}"
        );
        Ok(())
    });
}

#[test]
fn criterion_03_normalizer_union() {
    criterion(3, "normalizer union", || {
        let caps = Caps::default();
        for f in corpus() {
            let orbits = ds_orbits(&f.ctx, caps.tuple_bound)
                .map_err(|e| format!("{}: {e}", f.name))?;
            for rep in &orbits.orbit_reps {
                let verdict = checks::check_union_normalizers(&f.ctx, rep);
                ensure!(
                    verdict.is_verified(),
                    "{}: tuple {rep:?} has no element outside the union: {:?}",
                    f.name,
                    verdict.status
                );
            }
        }
        let sym4 = corpus().iter().find(|f| f.name == "sym4").unwrap();
        let (covers, size) = checks::all_normalizer_union(&sym4.ctx);
        ensure!(
            covers && size == 24,
            "Sym(4) all-normalizer union covers {size} of 24 elements"
        );
        Ok(())
    });
}

#[test]
fn criterion_04_union_corollary_contract() {
    criterion(4, "index-p corollary contract", || {
        let caps = Caps::default();
        let mut applied = 0;
        for f in corpus() {
            let corollary_applies = !f.ctx.rho.is_empty()
                && f.ctx.rho.iter().all(|p| {
                    let s = &f.ctx.systems[p];
                    (s.representative.order() / s.p_core.order()) as u64 <= *p
                });
            if !corollary_applies {
                continue;
            }
            applied += 1;
            // the union checker verifies the synchronization contract on its
            // witness whenever the hypothesis holds, for every orbit tuple
            let orbits = ds_orbits(&f.ctx, caps.tuple_bound)
                .map_err(|e| format!("{}: {e}", f.name))?;
            for rep in &orbits.orbit_reps {
                let verdict = checks::check_union_normalizers(&f.ctx, rep);
                ensure!(
                    verdict.is_verified(),
                    "{}: corollary contract violated on tuple {rep:?}",
                    f.name
                );
                ensure!(
                    verdict.payload["corollary_checked"] == serde_json::json!(true),
                    "{}: corollary hypothesis holds but was not checked",
                    f.name
                );
            }
        }
        ensure!(applied > 0, "no corpus group satisfies the corollary hypothesis");
        Ok(())
    });
}

#[test]
fn criterion_05_conjecture_a_b_suite() {
    criterion(5, "conjecture A/B suite", || {
        let mut config = default_corpus();
        config.suites = vec![
            "conjecture_a".to_string(),
            "conjecture_b".to_string(),
            "star".to_string(),
        ];
        let records = run_suites(&config);
        for r in &records {
            ensure!(
                r.status != VerdictStatus::Counterexample,
                "counterexample record: {}",
                serde_json::to_string(r).unwrap()
            );
        }
        // the canonical group without (*): V ⋊ D8 reports (*)_2 = false
        let v_d8 = records
            .iter()
            .find(|r| r.group_id.starts_with("v_rtimes_d8#") && r.check == "star")
            .ok_or("missing v_rtimes_d8 star record")?;
        let p2 = v_d8.payload["per_prime"]
            .as_array()
            .unwrap()
            .iter()
            .find(|s| s["p"] == 2)
            .ok_or("missing p=2 star entry")?;
        ensure!(
            p2["holds"] == serde_json::json!(false),
            "v_rtimes_d8 should lack (*)_2: {p2}"
        );
        // every odd-order corpus group has (*)
        for f in corpus() {
            if f.dense.order() % 2 == 0 {
                continue;
            }
            let star = star_report(&f.ctx);
            ensure!(star.star, "odd-order group {} lacks (*)", f.name);
        }
        Ok(())
    });
}

#[test]
fn criterion_06_metanilpotent_synchronization() {
    criterion(6, "metanilpotent synchronization", || {
        let caps = Caps::default();
        let names = [
            "metanilpotent_c7_c3",
            "metanilpotent_c7_c3_x_c5",
            "metanilpotent_c13_c3",
            "metanilpotent_c25_c3",
        ];
        for name in names {
            let f = corpus()
                .iter()
                .find(|f| f.name == name)
                .ok_or_else(|| format!("{name} missing from corpus"))?;
            let inv = f.dense.invariants();
            let verdict = checks::check_metanilpotent_sync(&f.ctx, &inv, caps.tuple_bound);
            ensure!(verdict.is_verified(), "{name}: {:?}", verdict.status);
            let witness = verdict.witness.ok_or("missing witness")?;
            let x = Permutation::from_images(witness.element.ok_or("missing element")?)
                .map_err(|e| e.to_string())?;
            let xi = f.dense.index_of(&x).ok_or("witness not in group")?;
            ensure!(
                inv.fitting.contains(xi),
                "{name}: witness lies outside the Fitting subgroup"
            );
            let tuple = DsTuple(witness.tuple.ok_or("missing tuple")?);
            for (i, &p) in f.ctx.rho.iter().enumerate() {
                let q = f.ctx.tuple_subgroup(&tuple, i);
                let mut m = q.mask().clone();
                m.intersect_with(&f.dense.conjugate_mask(q.mask(), xi));
                ensure!(
                    m == *f.ctx.systems[&p].p_core.mask(),
                    "{name}: witness fails to synchronize at p = {p}"
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_07_direct_power_gamma_ratios() {
    criterion(7, "direct-power gamma ratios", || {
        for n in 1..=3u32 {
            let name = format!("sym3_power_{n}");
            let f = corpus()
                .iter()
                .find(|f| f.name == name)
                .ok_or_else(|| format!("{name} missing"))?;
            ensure!(f.ctx.rho == vec![2], "{name}: rho should be {{2}}");
            let report = gamma(&f.ctx, &DsTuple::canonical(1));
            ensure!(
                report.joint_ratio_equals(2u64.pow(n), 3u64.pow(n)),
                "{name}: ratio {}/{} is not (2/3)^{n}",
                report.joint_size,
                report.group_order
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_08_nilpotent_intersection_suite() {
    criterion(8, "nilpotent intersection suite", || {
        let caps = Caps::default();
        let mut odd_enumerated = 0;
        let mut zenkov_checked = 0;
        for f in corpus() {
            let inv = f.dense.invariants();
            let verdicts = checks::check_odd_order_suite(&f.ctx, &inv, caps.enum_cap);
            for v in &verdicts {
                ensure!(
                    v.status != VerdictStatus::Counterexample,
                    "{}: {} found a counterexample",
                    f.name,
                    v.check
                );
            }
            if f.dense.order() <= caps.enum_cap {
                let zenkov = verdicts.iter().find(|v| v.check == "zenkov_abelian").unwrap();
                ensure!(
                    zenkov.is_verified(),
                    "{}: zenkov must verify below the enumeration cap",
                    f.name
                );
                zenkov_checked += 1;
                if inv.odd_order {
                    odd_enumerated += 1;
                    for check in [
                        "bialostocki_hall",
                        "mann_over_fitting",
                        "maximal_nilpotent_core",
                        "coprime_nilpotent_trivial",
                        "conjecture_c_nilpotent",
                    ] {
                        let v = verdicts.iter().find(|v| v.check == check).unwrap();
                        ensure!(v.is_verified(), "{}: {check} did not verify", f.name);
                    }
                }
            }
        }
        ensure!(
            zenkov_checked > 10 && odd_enumerated >= 5,
            "coverage too thin: {zenkov_checked} zenkov, {odd_enumerated} odd"
        );
        // semidirect-built members verify the centralizer identity
        let mut semidirect_checked = 0;
        let config = default_corpus();
        for group in &config.groups {
            let built = group.spec.build(&caps).map_err(|e| e.to_string())?;
            if !built.parts.contains_key("normal") || !built.parts.contains_key("actor") {
                continue;
            }
            let dense = built.dense().map_err(|e| e.to_string())?.clone();
            let v = built.part_handle("normal").map_err(|e| e.to_string())?;
            let k = built.part_handle("actor").map_err(|e| e.to_string())?;
            let verdict = checks::check_semidirect_centralizer(&dense, &v, &k)
                .map_err(|e| format!("{}: {e}", group.name))?;
            ensure!(verdict.is_verified(), "{}: centralizer identity fails", group.name);
            semidirect_checked += 1;
        }
        ensure!(semidirect_checked >= 2, "too few semidirect members checked");
        Ok(())
    });
}

#[test]
fn criterion_09_monte_carlo_validation() {
    criterion(9, "Monte Carlo vs exhaustive", || {
        for family in [Family::Sym, Family::Alt] {
            let min_n = if family == Family::Sym { 2 } else { 3 };
            for n in min_n..=7usize {
                for p in arith::primes_upto(n) {
                    let (hits, total) =
                        exact_intersection_prob(family, n, p, DEFAULT_SYLOW_LIMIT)
                            .map_err(|e| e.to_string())?;
                    let exact = hits as f64 / total as f64;
                    let est =
                        mc_intersection_prob(family, n, p, MC_TRIALS, MC_SEED, DEFAULT_SYLOW_LIMIT)
                            .map_err(|e| e.to_string())?;
                    let tolerance = 3.0 * est.stderr;
                    ensure!(
                        (est.estimate - exact).abs() <= tolerance,
                        "{family} n={n} p={p}: estimate {} vs exact {exact} (3σ = {tolerance})",
                        est.estimate
                    );
                }
            }
        }
        let (hits, total) =
            exact_intersection_prob(Family::Sym, 5, 5, DEFAULT_SYLOW_LIMIT).unwrap();
        ensure!((hits, total) == (20, 120), "Sym(5) p=5 exact is {hits}/{total}, not 1/6");
        let (hits, total) =
            exact_intersection_prob(Family::Sym, 4, 2, DEFAULT_SYLOW_LIMIT).unwrap();
        ensure!((hits, total) == (24, 24), "Sym(4) p=2 exact is {hits}/{total}, not 1");
        Ok(())
    });
}

#[test]
fn criterion_10_intersection_probability_decay() {
    criterion(10, "intersection probability decay", || {
        let est16 = mc_intersection_prob(Family::Sym, 16, 2, MC_TRIALS, MC_SEED, DEFAULT_SYLOW_LIMIT)
            .map_err(|e| e.to_string())?;
        println!(
            "  sym n=16 p=2: estimate {:.4} (context limit {:.4}, not asserted)",
            est16.estimate,
            est16.limit_constant_for_context.unwrap()
        );
        ensure!(
            est16.estimate <= 0.99,
            "Sym(16) p=2 estimate {} exceeds 0.99",
            est16.estimate
        );
        let grid = [9usize, 12, 15, 18, 21];
        let estimates: Vec<_> = grid
            .iter()
            .map(|&n| {
                mc_intersection_prob(Family::Sym, n, 3, MC_TRIALS, MC_SEED, DEFAULT_SYLOW_LIMIT)
                    .map_err(|e| e.to_string())
            })
            .collect::<Result<_, _>>()?;
        for (n, est) in grid.iter().zip(&estimates) {
            println!("  sym n={n} p=3: estimate {:.4} ± {:.4}", est.estimate, est.stderr);
        }
        for w in estimates.windows(2) {
            let slack = 2.0 * (w[0].stderr.powi(2) + w[1].stderr.powi(2)).sqrt();
            ensure!(
                w[1].estimate <= w[0].estimate + slack,
                "estimates increase beyond slack: {} -> {} (slack {slack})",
                w[0].estimate,
                w[1].estimate
            );
        }
        let scaled_baseline = grid[0] as f64 * estimates[0].estimate;
        for (n, est) in grid.iter().zip(&estimates) {
            let scaled = *n as f64 * est.estimate;
            ensure!(
                scaled <= scaled_baseline * 1.5,
                "n·estimate grows: {scaled} at n={n} vs baseline {scaled_baseline}"
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_11_sync_search_desk_scale() {
    criterion(11, "synchronization search at n=16", || {
        let primes = [3u64, 5, 7, 11, 13];
        let result = sync_search(Family::Sym, 16, &primes, 10_000, MC_SEED, DEFAULT_SYLOW_LIMIT)
            .map_err(|e| e.to_string())?;
        let witness = result.witness.ok_or("budget exhausted without a witness")?;
        for p in primes {
            let sylow = sylosync::bsgs::BsgsGroup::from_gens(&sym_sylow(16, p));
            let trivial = trivial_intersection_test(&sylow, &witness, DEFAULT_SYLOW_LIMIT)
                .map_err(|e| e.to_string())?;
            ensure!(trivial, "witness fails to trivialize p = {p}");
        }
        Ok(())
    });
}

#[test]
fn criterion_12_wreath_core_example() {
    criterion(12, "wreath-product core example", || {
        let entry = gallery::entry_by_name("wreath_core").ok_or("missing entry")?;
        let verdicts = gallery::verify_entry(&entry, &Caps::default())
            .map_err(|e| e.to_string())?;
        for v in &verdicts {
            ensure!(v.is_verified(), "wreath_core fact failed: {}", v.payload);
        }
        // belt and braces: recompute the pair/triple bounds directly
        let built = entry.spec.build(&Caps::default()).map_err(|e| e.to_string())?;
        let dense = built.dense().map_err(|e| e.to_string())?.clone();
        let h = dense.subgroup_closure(&[
            dense
                .index_of(&Permutation::from_cycles(9, "(0 1 2)").unwrap())
                .unwrap(),
            dense
                .index_of(&Permutation::from_cycles(9, "(3 4 5)").unwrap())
                .unwrap(),
        ]);
        ensure!(h.order() == 9, "H should be C3², found order {}", h.order());
        let (masks, _) = dense.conjugate_orbit(&h);
        ensure!(masks.len() == 3, "expected 3 conjugates, found {}", masks.len());
        let mut pair_min = usize::MAX;
        for i in 0..masks.len() {
            for j in i + 1..masks.len() {
                let mut m = masks[i].clone();
                m.intersect_with(&masks[j]);
                pair_min = pair_min.min(m.count_ones(..));
            }
        }
        ensure!(pair_min >= 3, "a pair of conjugates has order {pair_min} < 3");
        let mut triple = masks[0].clone();
        triple.intersect_with(&masks[1]);
        triple.intersect_with(&masks[2]);
        ensure!(triple.count_ones(..) == 1, "triple intersection is nontrivial");
        Ok(())
    });
}

#[test]
fn criterion_13_determinism_and_replay() {
    criterion(13, "determinism and witness replay", || {
        let full = default_corpus();
        let keep = [
            "sym3",
            "sym4",
            "sym5",
            "c12",
            "agl17",
            "metanilpotent_c7_c3",
            "metanilpotent_c25_c3",
            "v_rtimes_d8",
            "c11_c5",
        ];
        let config = CorpusConfig {
            groups: full
                .groups
                .iter()
                .filter(|g| keep.contains(&g.name.as_str()))
                .cloned()
                .collect(),
            ..full
        };
        let first = run_suites(&config);
        let second = run_suites(&config);
        ensure!(
            normalized_jsonl(&first) == normalized_jsonl(&second),
            "two runs with the same seed differ"
        );
        let mut parallel = config.clone();
        parallel.jobs = 3;
        let third = run_suites(&parallel);
        ensure!(
            normalized_jsonl(&first) == normalized_jsonl(&third),
            "worker count changed the report"
        );
        ensure!(!first.is_empty(), "empty report");
        for record in &first {
            let ok = replay_record(record, &config).map_err(|e| {
                format!("replay error for {}/{}: {e}", record.group_id, record.check)
            })?;
            ensure!(ok, "record failed replay: {}", serde_json::to_string(record).unwrap());
        }
        Ok(())
    });
}

#[test]
fn corpus_orders_stay_within_advertised_bounds() {
    // supporting check for the per-criterion "corpus of order ≤ 2000" claims
    for f in corpus() {
        assert!(f.dense.order() <= 2000, "{} exceeds 2000", f.name);
    }
    let caps = Caps::default();
    for group in &default_corpus().groups {
        let built = group.spec.build(&caps).unwrap();
        assert!(built.order() <= &BigUint::from(2000u32));
    }
}
