//! The conjugation action on tuples of Sylow subgroups.
//!
//! For a group `G`, let `ρ(G)` be the primes with a non-normal Sylow
//! subgroup. `G` acts coordinate-wise by conjugation on the product of the
//! Sylow conjugacy classes over `ρ(G)`. This module builds that action:
//! orbits, the action kernel, and the good-element sets `Γ_G(P)` of elements
//! `x` for which `P ∩ P^x` is inclusion-minimal among all `P ∩ P^g`.

pub mod checks;

use crate::arith;
use crate::dense::{DenseGroup, SubgroupHandle};
use crate::sylow::{self, IntersectionProfile, SylowSystem};
use fixedbitset::FixedBitSet;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("tuple space of size {size} exceeds the bound {bound}")]
    TupleSpaceTooLarge { size: u128, bound: u128 },
    #[error("group order has {count} prime divisors; at most two expected")]
    WrongHypothesis { count: usize },
    #[error("normalizer product does not cover the group: {product} of {order}")]
    HypothesisFails { product: usize, order: usize },
    #[error("subgroups do not cover the group")]
    NotACover,
    #[error("cover is redundant: member {index} can be dropped")]
    Redundant { index: usize },
    #[error("prime {p} is smaller than the cover size {n}")]
    PrimeTooSmall { p: u64, n: usize },
    #[error("not an internal semidirect product: {reason}")]
    NotSemidirect { reason: String },
}

/// Everything the checkers need about one group: Sylow systems and
/// intersection profiles for every prime dividing the order, the good-element
/// bitmap of each representative, and the shape of the tuple space.
pub struct DsContext {
    pub group: Arc<DenseGroup>,
    pub systems: BTreeMap<u64, SylowSystem>,
    pub profiles: BTreeMap<u64, IntersectionProfile>,
    /// Primes with a non-normal Sylow subgroup, increasing.
    pub rho: Vec<u64>,
    /// Product over `ρ` of the Sylow conjugate counts.
    pub tuple_space_size: u128,
    /// `Γ(representative)` per prime; other conjugates reach theirs by
    /// equivariance (`Γ(P^c) = Γ(P)^c`).
    rep_gamma: BTreeMap<u64, FixedBitSet>,
}

/// One point of the tuple space: a conjugate index per prime of `ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DsTuple(pub Vec<usize>);

impl DsTuple {
    /// The representative tuple (all first conjugates).
    pub fn canonical(rho_len: usize) -> DsTuple {
        DsTuple(vec![0; rho_len])
    }
}

impl DsContext {
    pub fn build(group: &Arc<DenseGroup>) -> DsContext {
        let order = group.order() as u64;
        let mut systems = BTreeMap::new();
        let mut profiles = BTreeMap::new();
        let mut rep_gamma = BTreeMap::new();
        let mut rho = Vec::new();
        let mut tuple_space_size: u128 = 1;
        for p in arith::primes_dividing(order) {
            let system = sylow::sylow_dense(group, p);
            let profile = sylow::intersection_profile(group, &system);
            rep_gamma.insert(p, gamma_of(group, &system, &profile));
            if !system.is_normal {
                rho.push(p);
                tuple_space_size *= system.conjugates.len() as u128;
            }
            profiles.insert(p, profile);
            systems.insert(p, system);
        }
        DsContext {
            group: group.clone(),
            systems,
            profiles,
            rho,
            tuple_space_size,
            rep_gamma,
        }
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Number of coordinates of the tuple space.
    pub fn rank(&self) -> usize {
        self.rho.len()
    }

    /// The Sylow subgroup a tuple selects at coordinate `i`.
    pub fn tuple_subgroup(&self, tuple: &DsTuple, i: usize) -> &SubgroupHandle {
        &self.systems[&self.rho[i]].conjugates[tuple.0[i]]
    }

    /// `Γ` of the representative Sylow p-subgroup.
    pub fn rep_gamma(&self, p: u64) -> &FixedBitSet {
        &self.rep_gamma[&p]
    }

    /// `Γ` of conjugate `c` of the Sylow p-subgroup, by equivariance.
    pub fn gamma_of_conjugate(&self, p: u64, c: usize) -> FixedBitSet {
        let conj_by = self.systems[&p].conjugating[c];
        if conj_by == 0 {
            return self.rep_gamma[&p].clone();
        }
        let mut out = FixedBitSet::with_capacity(self.group.order());
        for x in self.rep_gamma[&p].ones() {
            out.insert(self.group.conj(x, conj_by));
        }
        out
    }

    /// The kernel of the action: elements normalizing every Sylow subgroup
    /// for every prime of `ρ`.
    pub fn action_kernel(&self) -> SubgroupHandle {
        let mut mask = FixedBitSet::with_capacity(self.group.order());
        'next: for g in 0..self.group.order() {
            for p in &self.rho {
                for conj in &self.systems[p].conjugates {
                    for &s in conj.generators() {
                        if !conj.contains(self.group.conj(s, g)) {
                            continue 'next;
                        }
                    }
                }
            }
            mask.insert(g);
        }
        SubgroupHandle::from_mask(self.group.clone(), mask)
    }
}

/// Computes `Γ(P)` directly from the intersection profile: the profile walk
/// is repeated over coset representatives of `N(P)` and every coset whose
/// intersection is inclusion-minimal is marked good.
fn gamma_of(d: &Arc<DenseGroup>, system: &SylowSystem, profile: &IntersectionProfile) -> FixedBitSet {
    let p_mask = system.representative.mask();
    let minimal: Vec<&FixedBitSet> = profile.minimal_set.iter().map(|h| h.mask()).collect();
    let mut gamma = FixedBitSet::with_capacity(d.order());
    let mut visited = FixedBitSet::with_capacity(d.order());
    for g in 0..d.order() {
        if visited.contains(g) {
            continue;
        }
        let mut coset = Vec::with_capacity(system.normalizer.order());
        for k in system.normalizer.mask().ones() {
            let kg = d.mul(k, g);
            visited.insert(kg);
            coset.push(kg);
        }
        let mut intersection = p_mask.clone();
        intersection.intersect_with(&d.conjugate_mask(p_mask, g));
        if minimal.iter().any(|m| **m == intersection) {
            for kg in coset {
                gamma.insert(kg);
            }
        }
    }
    gamma
}

/// Per-prime and joint good sets for one tuple.
#[derive(Clone, Debug)]
pub struct GammaReport {
    pub primes: Vec<u64>,
    pub per_prime: Vec<FixedBitSet>,
    pub sizes: Vec<usize>,
    pub joint: FixedBitSet,
    pub joint_size: usize,
    pub group_order: usize,
    /// One good element if the joint set is non-empty.
    pub witness: Option<usize>,
}

impl GammaReport {
    pub fn ratio(&self, i: usize) -> f64 {
        self.sizes[i] as f64 / self.group_order as f64
    }

    pub fn joint_ratio(&self) -> f64 {
        self.joint_size as f64 / self.group_order as f64
    }

    /// Exact check `joint_size / |G| = num / den`.
    pub fn joint_ratio_equals(&self, num: u64, den: u64) -> bool {
        self.joint_size as u128 * den as u128 == num as u128 * self.group_order as u128
    }
}

/// Good sets of the tuple's Sylow subgroups and their intersection. Primes
/// with a normal Sylow subgroup contribute `Γ = G` and are not coordinates.
pub fn gamma(ctx: &DsContext, tuple: &DsTuple) -> GammaReport {
    assert_eq!(tuple.0.len(), ctx.rank(), "tuple length must equal |rho|");
    let order = ctx.group.order();
    let mut joint = FixedBitSet::with_capacity(order);
    joint.insert_range(..);
    let mut per_prime = Vec::new();
    let mut sizes = Vec::new();
    for (i, &p) in ctx.rho.iter().enumerate() {
        let set = ctx.gamma_of_conjugate(p, tuple.0[i]);
        joint.intersect_with(&set);
        sizes.push(set.count_ones(..));
        per_prime.push(set);
    }
    let witness = joint.ones().next();
    GammaReport {
        primes: ctx.rho.clone(),
        per_prime,
        sizes,
        joint_size: joint.count_ones(..),
        joint,
        group_order: order,
        witness,
    }
}

/// Orbits of the tuple-space action.
#[derive(Clone, Debug)]
pub struct DsOrbits {
    pub orbit_reps: Vec<DsTuple>,
    pub orbit_sizes: Vec<u64>,
    pub kernel: SubgroupHandle,
}

impl DsOrbits {
    pub fn is_transitive(&self) -> bool {
        self.orbit_reps.len() == 1
    }

    pub fn sorted_sizes(&self) -> Vec<u64> {
        let mut s = self.orbit_sizes.clone();
        s.sort_unstable();
        s
    }
}

/// Enumerates the orbit partition of the tuple space (coordinate-wise
/// conjugation) by a BFS over the group's generators, plus the action kernel.
pub fn ds_orbits(ctx: &DsContext, bound: u128) -> Result<DsOrbits, CheckError> {
    if ctx.tuple_space_size > bound {
        return Err(CheckError::TupleSpaceTooLarge {
            size: ctx.tuple_space_size,
            bound,
        });
    }
    let dims: Vec<usize> = ctx
        .rho
        .iter()
        .map(|p| ctx.systems[p].conjugates.len())
        .collect();
    let total = ctx.tuple_space_size as usize;
    // per generator, per coordinate: conjugate-index action table
    let gens = ctx.group.gen_indices().to_vec();
    let mut tables: Vec<Vec<Vec<usize>>> = vec![Vec::new(); gens.len()];
    for p in &ctx.rho {
        let system = &ctx.systems[p];
        let index_of: HashMap<&FixedBitSet, usize> = system
            .conjugates
            .iter()
            .enumerate()
            .map(|(i, h)| (h.mask(), i))
            .collect();
        for (gi, &g) in gens.iter().enumerate() {
            let row: Vec<usize> = system
                .conjugates
                .iter()
                .map(|h| {
                    let image = ctx.group.conjugate_mask(h.mask(), g);
                    index_of[&image]
                })
                .collect();
            tables[gi].push(row);
        }
    }
    let encode = |tuple: &[usize]| -> usize {
        let mut idx = 0usize;
        for (i, &c) in tuple.iter().enumerate() {
            idx = idx * dims[i] + c;
        }
        idx
    };
    // the empty product (nilpotent case) still has one tuple, the empty one
    let mut visited = FixedBitSet::with_capacity(total);
    let mut orbit_reps = Vec::new();
    let mut orbit_sizes = Vec::new();
    let mut scratch = vec![0usize; dims.len()];
    let decode = |mut idx: usize, out: &mut [usize]| {
        for i in (0..dims.len()).rev() {
            out[i] = idx % dims[i];
            idx /= dims[i];
        }
    };
    for start in 0..total {
        if visited.contains(start) {
            continue;
        }
        // BFS the orbit of `start`
        let mut queue = vec![start];
        visited.insert(start);
        let mut head = 0;
        while head < queue.len() {
            let current = queue[head];
            head += 1;
            decode(current, &mut scratch);
            for per_coord in &tables {
                let mut image = Vec::with_capacity(dims.len());
                for (coord, &c) in scratch.iter().enumerate() {
                    image.push(per_coord[coord][c]);
                }
                let idx = encode(&image);
                if !visited.contains(idx) {
                    visited.insert(idx);
                    queue.push(idx);
                }
            }
        }
        decode(start, &mut scratch);
        orbit_reps.push(DsTuple(scratch.clone()));
        orbit_sizes.push(queue.len() as u64);
    }
    Ok(DsOrbits {
        orbit_reps,
        orbit_sizes,
        kernel: ctx.action_kernel(),
    })
}

/// Per-prime star flags: `(*)_p` holds when two Sylow p-subgroups intersect
/// exactly in `O_p`, equivalently when the minimal intersection order equals
/// `|O_p|`.
#[derive(Clone, Debug)]
pub struct StarReport {
    pub per_prime: Vec<StarPrime>,
    pub star: bool,
}

#[derive(Clone, Debug)]
pub struct StarPrime {
    pub prime: u64,
    pub holds: bool,
    pub min_order: usize,
    pub p_core_order: usize,
    /// An element `g` with `P ∩ P^g = O_p`, when the flag holds.
    pub witness: Option<usize>,
}

pub fn star_report(ctx: &DsContext) -> StarReport {
    let d = &ctx.group;
    let mut per_prime = Vec::new();
    let mut star = true;
    for (&p, system) in &ctx.systems {
        let profile = &ctx.profiles[&p];
        let p_core_order = system.p_core.order();
        let holds = profile.min_order == p_core_order;
        // independent route: O_p must itself occur among the intersections
        debug_assert_eq!(
            holds,
            profile
                .distinct_intersections
                .iter()
                .any(|h| h.mask() == system.p_core.mask())
        );
        let witness = if holds {
            let p_mask = system.representative.mask();
            (0..d.order()).find(|&g| {
                let mut m = p_mask.clone();
                m.intersect_with(&d.conjugate_mask(p_mask, g));
                m == *system.p_core.mask()
            })
        } else {
            None
        };
        star &= holds;
        per_prime.push(StarPrime {
            prime: p,
            holds,
            min_order: profile.min_order,
            p_core_order,
            witness,
        });
    }
    StarReport { per_prime, star }
}
