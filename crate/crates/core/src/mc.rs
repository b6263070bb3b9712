//! Monte Carlo estimation of `Prob_g(P ∩ P^g ≠ 1)` in symmetric and
//! alternating groups, union-bound reports over all primes, and randomized
//! search for an element that simultaneously trivializes every coordinate.
//!
//! Triviality of `P ∩ P^g` is decided exactly: the elements of `P` are
//! enumerated once (through the transversal tree) and each non-identity
//! element is conjugated and sifted against `P`'s own chain, exiting on the
//! first common element. An enumeration limit keeps that tractable; a Sylow
//! subgroup over the limit is an explicit, reported gap.

use crate::arith;
use crate::bsgs::BsgsGroup;
use crate::families::{alternating_gens, symmetric_gens};
use crate::perm::Permutation;
use crate::rng::{stream_id_for, RngStream};
use crate::sylow::{alt_sylow, sym_sylow};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Default cap on `|P|` for the enumerate-and-sift triviality test.
pub const DEFAULT_SYLOW_LIMIT: u64 = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum McError {
    #[error("Sylow subgroup of order {order} exceeds the enumeration limit {limit}")]
    SylowTooLarge { order: BigUint, limit: u64 },
    #[error("prime {p} exceeds the degree {n}")]
    PrimeExceedsDegree { p: u64, n: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Sym,
    Alt,
}

impl Family {
    pub fn group_gens(self, n: usize) -> crate::perm::GenSet {
        match self {
            Family::Sym => symmetric_gens(n).expect("n >= 1"),
            Family::Alt => alternating_gens(n).expect("n >= 1"),
        }
    }

    pub fn sylow_gens(self, n: usize, p: u64) -> crate::perm::GenSet {
        match self {
            Family::Sym => sym_sylow(n, p),
            Family::Alt => alt_sylow(n, p),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Sym => write!(f, "sym"),
            Family::Alt => write!(f, "alt"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sym" | "symmetric" => Ok(Family::Sym),
            "alt" | "alternating" => Ok(Family::Alt),
            other => Err(format!("unknown family {other:?}; expected sym or alt")),
        }
    }
}

/// For `p = 2` the intersection probability has a known limit, reported next
/// to estimates for context (never asserted: no convergence rate is claimed).
pub fn limit_constant_p2(family: Family) -> f64 {
    match family {
        Family::Sym => 1.0 - (-0.5f64).exp(),
        Family::Alt => 1.0 - 1.5 * (-0.5f64).exp(),
    }
}

/// Exact triviality testing of `P ∩ P^g` for a fixed `P`, reusing the element
/// enumeration across many `g`.
pub struct IntersectionTester {
    p: BsgsGroup,
    degree: usize,
    /// image arrays of the non-identity elements of `P`, flattened
    flat: Vec<u32>,
    sylow_order: u64,
}

impl fmt::Debug for IntersectionTester {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntersectionTester")
            .field("degree", &self.degree)
            .field("sylow_order", &self.sylow_order)
            .finish()
    }
}

impl IntersectionTester {
    pub fn new(p: BsgsGroup, limit: u64) -> Result<IntersectionTester, McError> {
        if p.order() > &BigUint::from(limit) {
            return Err(McError::SylowTooLarge {
                order: p.order().clone(),
                limit,
            });
        }
        let degree = p.degree();
        let sylow_order = p.order_u64().expect("order fits after the limit check");
        let mut flat = Vec::with_capacity((sylow_order as usize - 1) * degree);
        for element in p.elements() {
            if element.is_identity() {
                continue;
            }
            flat.extend(element.images().iter().map(|&x| x as u32));
        }
        Ok(IntersectionTester {
            p,
            degree,
            flat,
            sylow_order,
        })
    }

    pub fn sylow_order(&self) -> u64 {
        self.sylow_order
    }

    /// True when `P ∩ P^g = 1`: no non-identity `h ∈ P` has `g·h·g⁻¹ ∈ P`.
    pub fn is_trivial(&self, g: &Permutation) -> bool {
        assert_eq!(g.degree(), self.degree, "conjugator degree mismatch");
        let g_images = g.images();
        let g_inv = g.inverse();
        let inv_images = g_inv.images();
        let mut buf = vec![0usize; self.degree];
        let mut scratch = vec![0usize; self.degree];
        for h in self.flat.chunks_exact(self.degree) {
            // conjugate h by g⁻¹ on the fly: (g h g⁻¹)[x] = g⁻¹[h[g[x]]]
            for x in 0..self.degree {
                buf[x] = inv_images[h[g_images[x]] as usize];
            }
            if self.p.contains_image_buffer(&mut buf, &mut scratch) {
                return false;
            }
        }
        true
    }
}

/// One-off form of the triviality test.
pub fn trivial_intersection_test(
    p: &BsgsGroup,
    g: &Permutation,
    limit: u64,
) -> Result<bool, McError> {
    Ok(IntersectionTester::new(p.clone(), limit)?.is_trivial(g))
}

/// A seeded Monte Carlo estimate of `Prob_g(P ∩ P^g ≠ 1)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct McEstimate {
    pub family: Family,
    pub n: usize,
    pub p: u64,
    pub trials: u64,
    pub hits: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub seed: u64,
    pub sylow_order: u64,
    /// Known `p = 2` limit for context; absent for odd primes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_constant_for_context: Option<f64>,
}

impl McEstimate {
    fn from_counts(
        family: Family,
        n: usize,
        p: u64,
        trials: u64,
        hits: u64,
        seed: u64,
        sylow_order: u64,
    ) -> McEstimate {
        let estimate = hits as f64 / trials as f64;
        let stderr = (estimate * (1.0 - estimate) / trials as f64).sqrt();
        McEstimate {
            family,
            n,
            p,
            trials,
            hits,
            estimate,
            stderr,
            seed,
            sylow_order,
            limit_constant_for_context: (p == 2).then(|| limit_constant_p2(family)),
        }
    }
}

/// Samples `trials` uniform elements and counts nontrivial intersections.
pub fn mc_intersection_prob(
    family: Family,
    n: usize,
    p: u64,
    trials: u64,
    seed: u64,
    limit: u64,
) -> Result<McEstimate, McError> {
    if p > n as u64 {
        return Err(McError::PrimeExceedsDegree { p, n });
    }
    let group = BsgsGroup::from_gens(&family.group_gens(n));
    let tester = IntersectionTester::new(BsgsGroup::from_gens(&family.sylow_gens(n, p)), limit)?;
    let mut rng = RngStream::new(seed, stream_id_for(&format!("mc:{family}:{n}:{p}")));
    let mut hits = 0u64;
    for _ in 0..trials {
        let g = group.random_element(&mut rng);
        if !tester.is_trivial(&g) {
            hits += 1;
        }
    }
    Ok(McEstimate::from_counts(
        family,
        n,
        p,
        trials,
        hits,
        seed,
        tester.sylow_order(),
    ))
}

/// Walks all of `Sym(n)`/`Alt(n)` instead of sampling; the exact probability
/// as a reduced-free fraction `(hits, order)`. Doubles as the Monte Carlo
/// oracle for small `n`.
pub fn exact_intersection_prob(
    family: Family,
    n: usize,
    p: u64,
    limit: u64,
) -> Result<(u64, u64), McError> {
    if p > n as u64 {
        return Err(McError::PrimeExceedsDegree { p, n });
    }
    let group = BsgsGroup::from_gens(&family.group_gens(n));
    let tester = IntersectionTester::new(BsgsGroup::from_gens(&family.sylow_gens(n, p)), limit)?;
    let total = group
        .order_u64()
        .expect("exact mode is for small degrees");
    let mut hits = 0u64;
    for g in group.elements() {
        if !tester.is_trivial(&g) {
            hits += 1;
        }
    }
    Ok((hits, total))
}

/// A per-prime row of the union-bound report: an estimate, or an explicit
/// gap when the Sylow subgroup exceeds the enumeration limit.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UnionBoundEntry {
    Estimate(McEstimate),
    Gap { p: u64, sylow_order: String, limit: u64 },
}

/// Per-prime estimates for every prime `≤ n`, their sum, and `π(n)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UnionBoundReport {
    pub family: Family,
    pub n: usize,
    pub entries: Vec<UnionBoundEntry>,
    pub sum_of_estimates: f64,
    pub prime_count: usize,
    pub seed: u64,
}

pub fn union_bound_report(
    family: Family,
    n: usize,
    trials: u64,
    seed: u64,
    limit: u64,
) -> UnionBoundReport {
    let primes = arith::primes_upto(n);
    let prime_count = primes.len();
    let mut entries = Vec::new();
    let mut sum = 0.0;
    for &p in &primes {
        match mc_intersection_prob(family, n, p, trials, seed, limit) {
            Ok(estimate) => {
                sum += estimate.estimate;
                entries.push(UnionBoundEntry::Estimate(estimate));
            }
            Err(McError::SylowTooLarge { order, limit }) => {
                entries.push(UnionBoundEntry::Gap {
                    p,
                    sylow_order: order.to_string(),
                    limit,
                });
            }
            Err(other) => unreachable!("p <= n by construction: {other}"),
        }
    }
    UnionBoundReport {
        family,
        n,
        entries,
        sum_of_estimates: sum,
        prime_count,
        seed,
    }
}

/// Result of the randomized synchronization search.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SyncWitness {
    pub family: Family,
    pub n: usize,
    pub primes: Vec<u64>,
    /// An element with `P_i ∩ P_i^x = 1` for every requested prime, verified
    /// exactly; absent when the budget ran out.
    pub witness: Option<Permutation>,
    pub samples: u64,
    pub seed: u64,
}

/// Draws up to `budget` random elements and returns the first that
/// trivializes every prime's Sylow self-intersection. Absence is a result,
/// not an error.
pub fn sync_search(
    family: Family,
    n: usize,
    primes: &[u64],
    budget: u64,
    seed: u64,
    limit: u64,
) -> Result<SyncWitness, McError> {
    for &p in primes {
        if p > n as u64 {
            return Err(McError::PrimeExceedsDegree { p, n });
        }
    }
    if primes.is_empty() {
        return Ok(SyncWitness {
            family,
            n,
            primes: Vec::new(),
            witness: Some(Permutation::identity(n)),
            samples: 0,
            seed,
        });
    }
    let group = BsgsGroup::from_gens(&family.group_gens(n));
    let testers: Vec<IntersectionTester> = primes
        .iter()
        .map(|&p| IntersectionTester::new(BsgsGroup::from_gens(&family.sylow_gens(n, p)), limit))
        .collect::<Result<_, _>>()?;
    let mut rng = RngStream::new(seed, stream_id_for(&format!("sync:{family}:{n}")));
    for sample in 1..=budget {
        let x = group.random_element(&mut rng);
        if testers.iter().all(|t| t.is_trivial(&x)) {
            // replay the witness through the one-off path as a final check
            for t in &testers {
                debug_assert!(t.is_trivial(&x));
            }
            return Ok(SyncWitness {
                family,
                n,
                primes: primes.to_vec(),
                witness: Some(x),
                samples: sample,
                seed,
            });
        }
    }
    Ok(SyncWitness {
        family,
        n,
        primes: primes.to_vec(),
        witness: None,
        samples: budget,
        seed,
    })
}
