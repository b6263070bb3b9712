//! Named constructions, each packaged with the facts expected of it. The
//! gallery doubles as a test fixture: building an entry and evaluating its
//! facts must reproduce every expected value.

use crate::dense::SubgroupHandle;
use crate::ds::checks;
use crate::ds::{ds_orbits, gamma, star_report, DsContext, DsTuple};
use crate::perm::Permutation;
use crate::spec::{BuiltGroup, Caps, GroupSpec, PermInput, SpecError};
use crate::verdict::{ConjectureVerdict, VerdictStatus, Witness};
use serde_json::json;

/// A fact the corresponding construction is expected to exhibit.
#[derive(Clone, Debug)]
pub enum ExpectedFact {
    Order(u64),
    RhoPrimes(Vec<u64>),
    StarP { p: u64, holds: bool },
    PCoreOrder { p: u64, order: u64 },
    MinIntersectionOrder { p: u64, order: u64 },
    DsTransitive(bool),
    OrbitSizes(Vec<u64>),
    AllNormalizerUnionCovers(bool),
    /// Every orbit-representative tuple's normalizer union is proper.
    TupleUnionsProper,
    ConjectureAVerified,
    /// Exact `|Γ(tuple)|/|G| = num/den` for the canonical tuple.
    GammaRatio { p: u64, num: u64, den: u64 },
    /// Two Sylow subgroups for distinct primes share their normalizer.
    SameNormalizerPairExists { order: u64 },
    OddOrderMetanilpotent,
    FittingOrder(u64),
    MetanilpotentSyncVerified,
    /// The `actor` part acts without fixed points on the `normal` part.
    ComplementActsFixedPointFreely,
    SubgroupOrder { gens: &'static [&'static str], order: u64 },
    SubgroupCoreTrivial { gens: &'static [&'static str] },
    /// Every pair of distinct conjugates intersects in at least `min_order`.
    ConjugatePairIntersectionsAtLeast { gens: &'static [&'static str], min_order: u64 },
    /// Some triple of distinct conjugates intersects trivially.
    TrivialConjugateTripleExists { gens: &'static [&'static str] },
}

#[derive(Clone, Debug)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub spec: GroupSpec,
    pub facts: Vec<ExpectedFact>,
}

/// Affine map `(x, y) ↦ (a·x + b·y + e, c·x + d·y + f)` over `Z/m`, on the
/// `m²` points encoded as `m·x + y`.
fn affine_perm(m: usize, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> PermInput {
    let images: Vec<usize> = (0..m * m)
        .map(|point| {
            let (x, y) = (point / m, point % m);
            let nx = (a * x + b * y + e) % m;
            let ny = (c * x + d * y + f) % m;
            m * nx + ny
        })
        .collect();
    PermInput::Images(images)
}

/// `x ↦ k·x` and `x ↦ x + 1` on `Z/m`.
fn mod_mul(m: usize, k: usize) -> PermInput {
    PermInput::Images((0..m).map(|x| (k * x) % m).collect())
}

fn mod_add_one(m: usize) -> PermInput {
    PermInput::Images((0..m).map(|x| (x + 1) % m).collect())
}

pub fn build_gallery() -> Vec<GalleryEntry> {
    use ExpectedFact::*;
    let mut entries = Vec::new();

    // F3² ⋊ D8: the standard group without (*)_2
    entries.push(GalleryEntry {
        name: "v_rtimes_d8",
        description: "F3^2 semidirect D8 < GL2(3); O_2 = 1 but every pair of \
                      Sylow 2-subgroups meets nontrivially",
        spec: GroupSpec::Generators {
            degree: 9,
            gens: vec![
                affine_perm(3, 1, 0, 0, 1, 1, 0), // translation e1
                affine_perm(3, 1, 0, 0, 1, 0, 1), // translation e2
                affine_perm(3, 0, 1, 2, 0, 0, 0), // rotation [[0,1],[-1,0]]
                affine_perm(3, 1, 0, 0, 2, 0, 0), // reflection [[1,0],[0,-1]]
            ],
        },
        facts: vec![
            Order(72),
            PCoreOrder { p: 2, order: 1 },
            StarP { p: 2, holds: false },
            MinIntersectionOrder { p: 2, order: 2 },
        ],
    });

    // Sym(4): union of all Sylow normalizers covers, per-tuple unions do not
    entries.push(GalleryEntry {
        name: "sym4_cover",
        description: "Sym(4) is the union of all seven of its Sylow \
                      normalizers, yet no tuple's union covers",
        spec: GroupSpec::Symmetric(4),
        facts: vec![
            Order(24),
            AllNormalizerUnionCovers(true),
            TupleUnionsProper,
            DsTransitive(true),
        ],
    });

    // AGL(1,7) = C7 ⋊ C6: intransitive tuple action via a shared normalizer
    entries.push(GalleryEntry {
        name: "agl17",
        description: "C7 ⋊ C6 (Frobenius): Sylow 2- and 3-subgroups inside \
                      the same complement share their normalizer, so the \
                      tuple action has two orbits",
        spec: GroupSpec::Generators {
            degree: 7,
            gens: vec![mod_add_one(7), mod_mul(7, 3)],
        },
        facts: vec![
            Order(42),
            RhoPrimes(vec![2, 3]),
            OrbitSizes(vec![7, 42]),
            DsTransitive(false),
            SameNormalizerPairExists { order: 6 },
            ConjectureAVerified,
        ],
    });

    // Sym(3)^n: good-set ratio decays as (2/3)^n
    for n in 1..=3usize {
        let name: &'static str = match n {
            1 => "sym3_power_1",
            2 => "sym3_power_2",
            _ => "sym3_power_3",
        };
        entries.push(GalleryEntry {
            name,
            description: "direct power of Sym(3); the Sylow 2 good-set ratio \
                          is exactly (2/3)^n",
            spec: GroupSpec::Direct(vec![GroupSpec::Symmetric(3); n]),
            facts: vec![
                Order(6u64.pow(n as u32)),
                GammaRatio {
                    p: 2,
                    num: 2u64.pow(n as u32),
                    den: 3u64.pow(n as u32),
                },
                ConjectureAVerified,
            ],
        });
    }

    // C3 ≀ C3 with the core-free H ≅ C3² in the base
    entries.push(GalleryEntry {
        name: "wreath_core",
        description: "C3 wr C3 with a core-free abelian H: pairs of \
                      conjugates never reach the core, three are needed",
        spec: GroupSpec::Wreath {
            base: Box::new(GroupSpec::Cyclic(3)),
            top_cycle: 3,
        },
        facts: vec![
            Order(81),
            SubgroupOrder { gens: &["(0 1 2)", "(3 4 5)"], order: 9 },
            SubgroupCoreTrivial { gens: &["(0 1 2)", "(3 4 5)"] },
            ConjugatePairIntersectionsAtLeast {
                gens: &["(0 1 2)", "(3 4 5)"],
                min_order: 3,
            },
            TrivialConjugateTripleExists { gens: &["(0 1 2)", "(3 4 5)"] },
        ],
    });

    // odd-order metanilpotent family
    entries.push(GalleryEntry {
        name: "metanilpotent_c7_c3",
        description: "C7 ⋊ C3, Frobenius of order 21",
        spec: GroupSpec::Generators {
            degree: 7,
            gens: vec![mod_add_one(7), mod_mul(7, 2)],
        },
        facts: vec![
            Order(21),
            OddOrderMetanilpotent,
            FittingOrder(7),
            MetanilpotentSyncVerified,
        ],
    });
    entries.push(GalleryEntry {
        name: "metanilpotent_c7_c3_x_c5",
        description: "(C7 ⋊ C3) × C5, order 105, Fitting subgroup C35",
        spec: GroupSpec::Direct(vec![
            GroupSpec::Generators {
                degree: 7,
                gens: vec![mod_add_one(7), mod_mul(7, 2)],
            },
            GroupSpec::Cyclic(5),
        ]),
        facts: vec![
            Order(105),
            OddOrderMetanilpotent,
            FittingOrder(35),
            MetanilpotentSyncVerified,
        ],
    });
    entries.push(GalleryEntry {
        name: "metanilpotent_c13_c3",
        description: "C13 ⋊ C3, Frobenius of order 39",
        spec: GroupSpec::Generators {
            degree: 13,
            gens: vec![mod_add_one(13), mod_mul(13, 3)],
        },
        facts: vec![
            Order(39),
            OddOrderMetanilpotent,
            FittingOrder(13),
            MetanilpotentSyncVerified,
        ],
    });
    entries.push(GalleryEntry {
        name: "metanilpotent_c25_c3",
        description: "(C5 × C5) ⋊ C3 through the companion matrix of \
                      x² + x + 1, a fixed-point-free action of order 3",
        spec: GroupSpec::Semidirect {
            normal: Box::new(GroupSpec::Generators {
                degree: 25,
                gens: vec![
                    affine_perm(5, 1, 0, 0, 1, 1, 0),
                    affine_perm(5, 1, 0, 0, 1, 0, 1),
                ],
            }),
            actor: Box::new(GroupSpec::Cyclic(3)),
            // companion matrix [[0,-1],[1,-1]]: e1 ↦ e2, e2 ↦ -e1-e2
            action: vec![vec![
                affine_perm(5, 1, 0, 0, 1, 0, 1),
                affine_perm(5, 1, 0, 0, 1, 4, 4),
            ]],
        },
        facts: vec![
            Order(75),
            OddOrderMetanilpotent,
            FittingOrder(25),
            ComplementActsFixedPointFreely,
            MetanilpotentSyncVerified,
        ],
    });

    entries
}

pub fn entry_by_name(name: &str) -> Option<GalleryEntry> {
    build_gallery().into_iter().find(|e| e.name == name)
}

pub fn entry_names() -> Vec<&'static str> {
    build_gallery().iter().map(|e| e.name).collect()
}

fn fact_verdict(entry: &GalleryEntry, fact: &ExpectedFact, ok: bool, actual: String) -> ConjectureVerdict {
    let check = "gallery_fact";
    let payload = json!({
        "entry": entry.name,
        "fact": format!("{fact:?}"),
        "actual": actual,
    });
    let verdict = if ok {
        ConjectureVerdict::verified(check)
    } else {
        ConjectureVerdict::counterexample(
            check,
            Witness::default().with_detail(format!("{}: {fact:?} failed", entry.name)),
        )
    };
    verdict.with_payload(payload)
}

fn resolve_subgroup(
    built: &BuiltGroup,
    gens: &[&str],
) -> Result<SubgroupHandle, SpecError> {
    let dense = built.dense()?;
    let seeds: Vec<usize> = gens
        .iter()
        .map(|c| {
            let p = Permutation::from_cycles(dense.degree(), c)?;
            dense
                .index_of(&p)
                .ok_or_else(|| SpecError::Validation(format!("{c} is not a group element")))
        })
        .collect::<Result<_, _>>()?;
    Ok(dense.subgroup_closure(&seeds))
}

/// Builds an entry and evaluates every expected fact, one verdict each.
pub fn verify_entry(entry: &GalleryEntry, caps: &Caps) -> Result<Vec<ConjectureVerdict>, SpecError> {
    let built = entry.spec.build(caps)?;
    let dense = built.dense()?.clone();
    let ctx = DsContext::build(&dense);
    let mut out = Vec::new();
    for fact in &entry.facts {
        let verdict = match fact {
            ExpectedFact::Order(expect) => {
                let actual = dense.order() as u64;
                fact_verdict(entry, fact, actual == *expect, actual.to_string())
            }
            ExpectedFact::RhoPrimes(expect) => {
                fact_verdict(entry, fact, ctx.rho == *expect, format!("{:?}", ctx.rho))
            }
            ExpectedFact::StarP { p, holds } => {
                let report = star_report(&ctx);
                let actual = report
                    .per_prime
                    .iter()
                    .find(|s| s.prime == *p)
                    .map(|s| s.holds);
                fact_verdict(entry, fact, actual == Some(*holds), format!("{actual:?}"))
            }
            ExpectedFact::PCoreOrder { p, order } => {
                let actual = ctx.systems[p].p_core.order() as u64;
                fact_verdict(entry, fact, actual == *order, actual.to_string())
            }
            ExpectedFact::MinIntersectionOrder { p, order } => {
                let actual = ctx.profiles[p].min_order as u64;
                fact_verdict(entry, fact, actual == *order, actual.to_string())
            }
            ExpectedFact::DsTransitive(expect) => {
                let orbits = ds_orbits(&ctx, caps.tuple_bound)
                    .map_err(|e| SpecError::Validation(e.to_string()))?;
                fact_verdict(
                    entry,
                    fact,
                    orbits.is_transitive() == *expect,
                    format!("{} orbits", orbits.orbit_reps.len()),
                )
            }
            ExpectedFact::OrbitSizes(expect) => {
                let orbits = ds_orbits(&ctx, caps.tuple_bound)
                    .map_err(|e| SpecError::Validation(e.to_string()))?;
                let actual = orbits.sorted_sizes();
                fact_verdict(entry, fact, actual == *expect, format!("{actual:?}"))
            }
            ExpectedFact::AllNormalizerUnionCovers(expect) => {
                let (covers, size) = checks::all_normalizer_union(&ctx);
                fact_verdict(entry, fact, covers == *expect, format!("union size {size}"))
            }
            ExpectedFact::TupleUnionsProper => {
                let verdict = checks::check_union_all_reps(&ctx, caps.tuple_bound);
                let ok = verdict.status == VerdictStatus::Verified;
                fact_verdict(entry, fact, ok, format!("{:?}", verdict.status))
            }
            ExpectedFact::ConjectureAVerified => {
                let mut rng = crate::rng::RngStream::new(0, 0);
                let verdict =
                    checks::check_conjecture_a(&ctx, caps.tuple_bound, caps.sample_budget, &mut rng);
                fact_verdict(
                    entry,
                    fact,
                    verdict.is_verified(),
                    format!("{:?}", verdict.status),
                )
            }
            ExpectedFact::GammaRatio { p, num, den } => {
                let report = gamma(&ctx, &DsTuple::canonical(ctx.rank()));
                let ok = ctx.rho == vec![*p] && report.joint_ratio_equals(*num, *den);
                fact_verdict(
                    entry,
                    fact,
                    ok,
                    format!("{}/{}", report.joint_size, report.group_order),
                )
            }
            ExpectedFact::SameNormalizerPairExists { order } => {
                let mut found = None;
                'outer: for (i, &pa) in ctx.rho.iter().enumerate() {
                    for &pb in &ctx.rho[i + 1..] {
                        let sa = &ctx.systems[&pa];
                        let sb = &ctx.systems[&pb];
                        for &ca in &sa.conjugating {
                            let na = sa.normalizer.conjugate(ca);
                            for &cb in &sb.conjugating {
                                let nb = sb.normalizer.conjugate(cb);
                                if na == nb && na.order() as u64 == *order {
                                    found = Some(na.order());
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
                fact_verdict(entry, fact, found.is_some(), format!("{found:?}"))
            }
            ExpectedFact::OddOrderMetanilpotent => {
                let inv = dense.invariants();
                let ok = inv.odd_order && inv.is_metanilpotent;
                fact_verdict(
                    entry,
                    fact,
                    ok,
                    format!(
                        "odd: {}, metanilpotent: {}",
                        inv.odd_order, inv.is_metanilpotent
                    ),
                )
            }
            ExpectedFact::FittingOrder(expect) => {
                let actual = dense.invariants().fitting.order() as u64;
                fact_verdict(entry, fact, actual == *expect, actual.to_string())
            }
            ExpectedFact::MetanilpotentSyncVerified => {
                let inv = dense.invariants();
                let verdict = checks::check_metanilpotent_sync(&ctx, &inv, caps.tuple_bound);
                fact_verdict(
                    entry,
                    fact,
                    verdict.is_verified(),
                    format!("{:?}", verdict.status),
                )
            }
            ExpectedFact::ComplementActsFixedPointFreely => {
                let v = built.part_handle("normal")?;
                let k = built.part_handle("actor")?;
                let mut ok = true;
                for x in k.indices() {
                    if x == 0 {
                        continue;
                    }
                    let fixed = v
                        .indices()
                        .iter()
                        .filter(|&&vi| vi != 0 && dense.conj(vi, x) == vi)
                        .count();
                    if fixed > 0 {
                        ok = false;
                    }
                }
                fact_verdict(entry, fact, ok, format!("fixed-point-free: {ok}"))
            }
            ExpectedFact::SubgroupOrder { gens, order } => {
                let h = resolve_subgroup(&built, gens)?;
                let actual = h.order() as u64;
                fact_verdict(entry, fact, actual == *order, actual.to_string())
            }
            ExpectedFact::SubgroupCoreTrivial { gens } => {
                let h = resolve_subgroup(&built, gens)?;
                let core = dense.core_of(&h);
                fact_verdict(entry, fact, core.is_trivial(), format!("core order {}", core.order()))
            }
            ExpectedFact::ConjugatePairIntersectionsAtLeast { gens, min_order } => {
                let h = resolve_subgroup(&built, gens)?;
                let (masks, _) = dense.conjugate_orbit(&h);
                let mut min_seen = usize::MAX;
                for i in 0..masks.len() {
                    for j in i + 1..masks.len() {
                        let mut m = masks[i].clone();
                        m.intersect_with(&masks[j]);
                        min_seen = min_seen.min(m.count_ones(..));
                    }
                }
                let ok = masks.len() >= 2 && min_seen as u64 >= *min_order;
                fact_verdict(
                    entry,
                    fact,
                    ok,
                    format!("{} conjugates, min pair order {min_seen}", masks.len()),
                )
            }
            ExpectedFact::TrivialConjugateTripleExists { gens } => {
                let h = resolve_subgroup(&built, gens)?;
                let (masks, _) = dense.conjugate_orbit(&h);
                let mut found = false;
                'triple: for i in 0..masks.len() {
                    for j in i + 1..masks.len() {
                        for k in j + 1..masks.len() {
                            let mut m = masks[i].clone();
                            m.intersect_with(&masks[j]);
                            m.intersect_with(&masks[k]);
                            if m.count_ones(..) == 1 {
                                found = true;
                                break 'triple;
                            }
                        }
                    }
                }
                fact_verdict(entry, fact, found, format!("trivial triple: {found}"))
            }
        };
        out.push(verdict);
    }
    Ok(out)
}
