//! Cross-cutting invariants checked over the whole built-in corpus, plus the
//! independent oracles that back the fast implementations.

use num_bigint::BigUint;
use std::collections::HashSet;
use std::sync::{Arc, OnceLock};
use sylosync::arith;
use sylosync::bsgs::BsgsGroup;
use sylosync::corpus::default_corpus;
use sylosync::dense::DenseGroup;
use sylosync::ds::{star_report, DsContext};
use sylosync::mc::{mc_intersection_prob, IntersectionTester, DEFAULT_SYLOW_LIMIT};
use sylosync::perm::{GenSet, Permutation};
use sylosync::rng::RngStream;
use sylosync::spec::Caps;
use sylosync::sylow::{alt_sylow, sym_sylow};

struct Fixture {
    name: String,
    gens: GenSet,
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
                let built = g.spec.build(&caps).expect("corpus builds");
                let dense = built.dense().expect("corpus is dense").clone();
                let ctx = DsContext::build(&dense);
                Fixture {
                    name: g.name.clone(),
                    gens: built.gens.clone(),
                    dense,
                    ctx,
                }
            })
            .collect()
    })
}

// independent oracle for group order: plain product-closure over image
// arrays, no stabilizer chains involved
fn naive_closure_order(gens: &GenSet) -> usize {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(Permutation::identity(gens.degree()).images().to_vec());
    let mut queue: Vec<Permutation> = vec![Permutation::identity(gens.degree())];
    let mut head = 0;
    while head < queue.len() {
        let current = queue[head].clone();
        head += 1;
        for g in gens.gens() {
            let next = current.compose(g);
            if seen.insert(next.images().to_vec()) {
                queue.push(next);
            }
        }
    }
    seen.len()
}

#[test]
fn bsgs_order_matches_naive_closure_on_corpus() {
    for f in corpus() {
        let bsgs = BsgsGroup::from_gens(&f.gens);
        assert_eq!(
            naive_closure_order(&f.gens),
            f.dense.order(),
            "{}: dense table disagrees with the closure oracle",
            f.name
        );
        assert_eq!(
            bsgs.order(),
            &BigUint::from(f.dense.order()),
            "{}: BSGS order disagrees with the dense table",
            f.name
        );
        for g in f.gens.gens() {
            assert!(bsgs.contains(g), "{}: generator not a member", f.name);
        }
    }
}

#[test]
fn group_order_divides_degree_factorial() {
    for f in corpus() {
        let mut factorial = BigUint::from(1u32);
        for k in 1..=f.gens.degree() {
            factorial *= BigUint::from(k);
        }
        assert!(
            (&factorial % BigUint::from(f.dense.order())) == BigUint::from(0u32),
            "{}: order does not divide degree!",
            f.name
        );
    }
}

#[test]
fn uniform_sampling_chi_square_on_sym4() {
    // 24 000 draws from Sym(4): every element lands 1000 ± 5σ under the
    // multinomial model, and the chi-square statistic stays below the
    // df = 23 tail value 49.73
    let sym4 = BsgsGroup::from_gens(&sylosync::families::symmetric_gens(4).unwrap());
    let dense = DenseGroup::materialize(&sylosync::families::symmetric_gens(4).unwrap(), 100)
        .unwrap();
    let mut rng = RngStream::new(2024, 0);
    let mut counts = [0u64; 24];
    for _ in 0..24_000 {
        let g = sym4.random_element(&mut rng);
        counts[dense.index_of(&g).unwrap()] += 1;
    }
    let expected = 1000.0f64;
    let sigma = (24_000.0f64 * (1.0 / 24.0) * (23.0 / 24.0)).sqrt();
    let mut chi_square = 0.0;
    for (i, &c) in counts.iter().enumerate() {
        assert!(
            (c as f64 - expected).abs() <= 5.0 * sigma,
            "element {i} drawn {c} times (expected {expected} ± {:.1})",
            5.0 * sigma
        );
        chi_square += (c as f64 - expected).powi(2) / expected;
    }
    assert!(chi_square < 49.73, "chi-square {chi_square} too large for df 23");
}

#[test]
fn sylow_orders_match_legendre_up_to_40() {
    for n in 2..=40usize {
        for p in arith::primes_upto(n.min(37)) {
            let expect = BigUint::from(p).pow(
                u32::try_from(arith::factorial_valuation(n as u64, p)).unwrap(),
            );
            let sym_order = BsgsGroup::from_gens(&sym_sylow(n, p)).order().clone();
            assert_eq!(sym_order, expect, "Sym({n}) p={p}");
            if n >= 3 {
                let alt_order = BsgsGroup::from_gens(&alt_sylow(n, p)).order().clone();
                let alt_expect = if p == 2 && expect > BigUint::from(1u32) {
                    &expect / 2u32
                } else {
                    expect.clone()
                };
                assert_eq!(alt_order, alt_expect, "Alt({n}) p={p}");
            }
        }
    }
}

#[test]
fn sylow_conjugate_counts_and_cores_on_corpus() {
    for f in corpus() {
        for (&p, system) in &f.ctx.systems {
            let count = system.conjugates.len();
            assert_eq!(
                count,
                f.dense.order() / system.normalizer.order(),
                "{} p={p}: conjugate count is not the normalizer index",
                f.name
            );
            assert_eq!(count as u64 % p, 1, "{} p={p}: count not 1 mod p", f.name);
            for c in &system.conjugates {
                assert_eq!(c.order(), system.representative.order());
                assert!(system.p_core.is_subset_of(c));
            }
            // p-core is the core of the representative
            assert_eq!(
                system.p_core,
                f.dense.core_of(&system.representative),
                "{} p={p}",
                f.name
            );
        }
    }
}

#[test]
fn sylow_intersections_constant_on_normalizer_cosets() {
    // spot checks on every corpus group of order <= 500
    let mut rng = RngStream::new(7, 0);
    for f in corpus() {
        if f.dense.order() > 500 {
            continue;
        }
        for &p in &f.ctx.rho {
            let system = &f.ctx.systems[&p];
            let mask = system.representative.mask();
            for _ in 0..8 {
                let g = rng.index(f.dense.order());
                let h = system.normalizer.indices()[rng.index(system.normalizer.order())];
                let hg = f.dense.mul(h, g);
                let mut a = mask.clone();
                a.intersect_with(&f.dense.conjugate_mask(mask, g));
                let mut b = mask.clone();
                b.intersect_with(&f.dense.conjugate_mask(mask, hg));
                assert_eq!(a, b, "{} p={p}", f.name);
            }
        }
    }
}

#[test]
fn symmetric_group_p_cores_are_trivial_from_degree_5() {
    for n in 5..=8usize {
        let dense = DenseGroup::materialize(
            &sylosync::families::symmetric_gens(n).unwrap(),
            50_000,
        )
        .unwrap();
        for p in arith::primes_upto(n) {
            let system = sylosync::sylow::sylow_dense(&dense, p);
            assert!(
                system.p_core.is_trivial(),
                "O_{p}(Sym({n})) has order {}",
                system.p_core.order()
            );
        }
    }
}

#[test]
fn fitting_of_quotient_by_hypercenter() {
    // F(G/H(G)) = F(G)/H(G) under the projection, for the whole corpus
    for f in corpus() {
        let inv = f.dense.invariants();
        let quotient = f.dense.quotient(&inv.hypercenter).unwrap();
        let projected_fitting = quotient.project_subgroup(&inv.fitting);
        let quotient_fitting = quotient.quotient.invariants().fitting;
        assert_eq!(
            projected_fitting, quotient_fitting,
            "{}: Fitting subgroup does not project onto the quotient's",
            f.name
        );
    }
}

#[test]
fn core_is_the_largest_normal_subgroup_inside() {
    let caps = Caps::default();
    let mut rng = RngStream::new(13, 0);
    for f in corpus() {
        if f.dense.order() > caps.enum_cap {
            continue;
        }
        let all = f.dense.enumerate_subgroups(caps.enum_cap).unwrap();
        let normal: Vec<_> = all.iter().filter(|h| f.dense.is_normal(h)).collect();
        // a few random subgroups per group
        for _ in 0..5 {
            let h = &all[rng.index(all.len())];
            let core = f.dense.core_of(h);
            assert!(f.dense.is_normal(&core), "{}: core not normal", f.name);
            assert!(core.is_subset_of(h), "{}: core escapes H", f.name);
            for n in &normal {
                if n.is_subset_of(h) {
                    assert!(
                        n.is_subset_of(&core),
                        "{}: normal subgroup inside H missed by the core",
                        f.name
                    );
                }
            }
        }
    }
}

#[test]
fn coset_counting_identities() {
    // |HK|/|H| counts the right cosets of H meeting K, and every non-empty
    // H ∩ Kg is a right coset of H ∩ K
    let caps = Caps::default();
    let mut rng = RngStream::new(29, 0);
    for f in corpus() {
        if f.dense.order() > caps.enum_cap || f.dense.order() < 4 {
            continue;
        }
        let all = f.dense.enumerate_subgroups(caps.enum_cap).unwrap();
        for _ in 0..4 {
            let h = &all[rng.index(all.len())];
            let k = &all[rng.index(all.len())];
            let d = &f.dense;
            // product set size by brute force
            let mut product: HashSet<usize> = HashSet::new();
            for a in h.indices() {
                for b in k.indices() {
                    product.insert(d.mul(a, b));
                }
            }
            assert_eq!(product.len(), h.product_size(k), "{}", f.name);
            // count right cosets Hg meeting K
            let mut coset_of = vec![usize::MAX; d.order()];
            let mut reps = Vec::new();
            for g in 0..d.order() {
                if coset_of[g] == usize::MAX {
                    let id = reps.len();
                    reps.push(g);
                    for a in h.indices() {
                        coset_of[d.mul(a, g)] = id;
                    }
                }
            }
            let meeting: HashSet<usize> = k.indices().iter().map(|&x| coset_of[x]).collect();
            assert_eq!(
                product.len() / h.order(),
                meeting.len(),
                "{}: |HK|/|H| does not count cosets meeting K",
                f.name
            );
            // H ∩ Kg is a coset of H ∩ K whenever non-empty
            let hk = h.intersect(k);
            for _ in 0..4 {
                let g = rng.index(d.order());
                let slice: Vec<usize> = h
                    .indices()
                    .into_iter()
                    .filter(|&x| k.contains(d.mul(x, d.inv(g))))
                    .collect();
                if let Some(&first) = slice.first() {
                    let expected: HashSet<usize> =
                        hk.indices().iter().map(|&x| d.mul(x, first)).collect();
                    let actual: HashSet<usize> = slice.into_iter().collect();
                    assert_eq!(actual, expected, "{}: H ∩ Kg not a coset of H ∩ K", f.name);
                }
            }
        }
    }
}

#[test]
fn gamma_sets_are_normalizer_coset_unions_of_constant_size() {
    for f in corpus() {
        for &p in &f.ctx.rho {
            let system = &f.ctx.systems[&p];
            let gamma = f.ctx.rep_gamma(p);
            // union of right cosets of N(P)
            for g in gamma.ones() {
                for k in system.normalizer.mask().ones() {
                    assert!(
                        gamma.contains(f.dense.mul(k, g)),
                        "{} p={p}: good set is not a union of N(P)-cosets",
                        f.name
                    );
                }
            }
            // size independent of the chosen Sylow subgroup
            let size = gamma.count_ones(..);
            for c in 0..system.conjugates.len() {
                assert_eq!(
                    f.ctx.gamma_of_conjugate(p, c).count_ones(..),
                    size,
                    "{} p={p}: good-set size varies across conjugates",
                    f.name
                );
            }
        }
    }
}

#[test]
fn gamma_equivariance_under_random_conjugation() {
    // Γ(P^g) = Γ(P)^g, comparing the bitmap transport against the profile
    // recomputed for the conjugate subgroup
    let mut rng = RngStream::new(97, 0);
    for f in corpus() {
        if f.dense.order() > 600 {
            continue;
        }
        for &p in &f.ctx.rho {
            let system = &f.ctx.systems[&p];
            let g = rng.index(f.dense.order());
            let conj_mask = f.dense.conjugate_mask(system.representative.mask(), g);
            let c = system
                .conjugates
                .iter()
                .position(|h| *h.mask() == conj_mask)
                .expect("conjugate of a Sylow subgroup is a Sylow subgroup");
            let transported = {
                let mut out = fixedbitset::FixedBitSet::with_capacity(f.dense.order());
                for x in f.ctx.rep_gamma(p).ones() {
                    out.insert(f.dense.conj(x, g));
                }
                out
            };
            assert_eq!(
                transported,
                f.ctx.gamma_of_conjugate(p, c),
                "{} p={p}: good sets are not conjugation-equivariant",
                f.name
            );
        }
    }
}

#[test]
fn star_flag_routes_agree() {
    // (*)_p by minimal order equals (*)_p by core membership in the profile
    for f in corpus() {
        let report = star_report(&f.ctx);
        for s in &report.per_prime {
            let profile = &f.ctx.profiles[&s.prime];
            let core_mask = f.ctx.systems[&s.prime].p_core.mask();
            let by_membership = profile
                .distinct_intersections
                .iter()
                .any(|h| h.mask() == core_mask);
            assert_eq!(
                s.holds, by_membership,
                "{} p={}: star routes disagree",
                f.name, s.prime
            );
            if s.holds {
                assert!(s.witness.is_some());
            }
        }
    }
}

#[test]
fn metanilpotent_prime_power_fitting_index() {
    // metanilpotent with F(G) = O_p(G) forces p away from |G : F(G)|
    let mut observed = 0;
    for f in corpus() {
        let inv = f.dense.invariants();
        if !inv.is_metanilpotent || inv.fitting.order() == 1 {
            continue;
        }
        let fitting_order = inv.fitting.order() as u64;
        let primes = arith::primes_dividing(fitting_order);
        if primes.len() != 1 {
            continue;
        }
        observed += 1;
        let p = primes[0];
        let index = (f.dense.order() / inv.fitting.order()) as u64;
        assert_ne!(index % p, 0, "{}: p = {p} divides |G:F| = {index}", f.name);
    }
    assert!(observed >= 5, "only {observed} prime-power Fitting cases seen");
}

#[test]
fn triviality_test_is_normalizer_coset_invariant() {
    let sylow = BsgsGroup::from_gens(&sym_sylow(6, 2));
    let tester = IntersectionTester::new(sylow.clone(), DEFAULT_SYLOW_LIMIT).unwrap();
    let sym6 = BsgsGroup::from_gens(&sylosync::families::symmetric_gens(6).unwrap());
    let mut rng = RngStream::new(31, 0);
    // collect a few normalizer elements by filtering random elements
    let strong: Vec<Permutation> = sylow.strong_gens().gens().to_vec();
    let mut normalizers = Vec::new();
    let mut guard = 0;
    while normalizers.len() < 5 && guard < 20_000 {
        guard += 1;
        let h = sym6.random_element(&mut rng);
        if strong
            .iter()
            .all(|s| sylow.contains(&s.conjugate(&h)))
        {
            normalizers.push(h);
        }
    }
    assert!(normalizers.len() >= 2, "found too few normalizer elements");
    for _ in 0..20 {
        let g = sym6.random_element(&mut rng);
        let base = tester.is_trivial(&g);
        for h in &normalizers {
            assert_eq!(tester.is_trivial(&h.compose(&g)), base);
        }
    }
}

#[test]
fn estimates_are_seed_stable_at_n20() {
    // two independent seeds agree within 3 combined standard errors for all
    // odd primes at n = 20
    for p in [3u64, 5, 7, 11, 13, 17, 19] {
        let a = mc_intersection_prob(sylosync::mc::Family::Sym, 20, p, 4000, 101, DEFAULT_SYLOW_LIMIT)
            .unwrap();
        let b = mc_intersection_prob(sylosync::mc::Family::Sym, 20, p, 4000, 202, DEFAULT_SYLOW_LIMIT)
            .unwrap();
        let combined = (a.stderr.powi(2) + b.stderr.powi(2)).sqrt();
        assert!(
            (a.estimate - b.estimate).abs() <= 3.0 * combined.max(1e-9),
            "p={p}: {} vs {} exceeds 3·{combined}",
            a.estimate,
            b.estimate
        );
    }
}
