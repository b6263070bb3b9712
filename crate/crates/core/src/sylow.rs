//! Sylow subgroups: construction on the dense backend, the iterated-wreath
//! Sylow subgroups of symmetric and alternating groups, conjugate
//! enumeration, p-cores, and intersection profiles.

use crate::arith;
use crate::bsgs::BsgsGroup;
use crate::dense::{DenseGroup, SubgroupHandle};
use crate::perm::{GenSet, Permutation};
use fixedbitset::FixedBitSet;
use std::collections::HashSet;
use std::sync::Arc;

/// A Sylow p-subgroup with its full conjugate list.
#[derive(Clone, Debug)]
pub struct SylowSystem {
    pub prime: u64,
    pub representative: SubgroupHandle,
    /// All Sylow p-subgroups; `conjugates[0]` is the representative.
    pub conjugates: Vec<SubgroupHandle>,
    /// `conjugates[k] = representative ^ conjugating[k]`.
    pub conjugating: Vec<usize>,
    pub normalizer: SubgroupHandle,
    /// `O_p = ⋂ conjugates = Core(representative)`.
    pub p_core: SubgroupHandle,
    pub is_normal: bool,
}

/// Builds the Sylow p-system of a dense group. For `p ∤ |D|` the system is
/// trivial. The representative grows by normalizer ascent: starting from a
/// cyclic p-subgroup, adjoin a p-element of the normalizer lying outside it
/// until the full p-part is reached (such an element always exists below the
/// p-part, since `p` divides `|N_D(P) : P|` then).
pub fn sylow_dense(d: &Arc<DenseGroup>, p: u64) -> SylowSystem {
    let order = d.order() as u64;
    let p_part = arith::p_part(order, p);
    let representative = if p_part == 1 {
        d.trivial_subgroup()
    } else {
        let seed = (0..d.order())
            .find(|&i| d.element_order(i).is_multiple_of(p))
            .expect("Cauchy: an element of order divisible by p exists");
        let seed_order = d.element_order(seed);
        let start = d.pow(seed, seed_order / arith::p_part(seed_order, p));
        let mut current = d.subgroup_closure(&[start]);
        while (current.order() as u64) < p_part {
            let normalizer = d.normalizer(&current);
            let extend = normalizer
                .mask()
                .ones()
                .find(|&i| {
                    !current.contains(i) && is_p_element(d.element_order(i), p)
                })
                .expect("normalizer of a non-Sylow p-subgroup holds a new p-element");
            let mut seeds = current.generators().to_vec();
            seeds.push(extend);
            current = d.subgroup_closure(&seeds);
        }
        current
    };
    let (masks, conjugating) = d.conjugate_orbit(&representative);
    let rep_gens = representative.generators().to_vec();
    let conjugates: Vec<SubgroupHandle> = masks
        .iter()
        .zip(&conjugating)
        .map(|(mask, &by)| {
            let gens = rep_gens.iter().map(|&s| d.conj(s, by)).collect();
            SubgroupHandle::from_mask_with_gens(d.clone(), mask.clone(), gens)
        })
        .collect();
    let mut core_mask = representative.mask().clone();
    for mask in &masks {
        core_mask.intersect_with(mask);
    }
    let p_core = SubgroupHandle::from_mask(d.clone(), core_mask);
    let normalizer = d.normalizer(&representative);
    let is_normal = conjugates.len() == 1;
    SylowSystem {
        prime: p,
        representative,
        conjugates,
        conjugating,
        normalizer,
        p_core,
        is_normal,
    }
}

fn is_p_element(order: u64, p: u64) -> bool {
    order == 1 || arith::p_part(order, p) == order
}

impl DenseGroup {
    /// `elements[i]` raised to the `e`-th power.
    pub fn pow(self: &Arc<Self>, i: usize, mut e: u64) -> usize {
        let mut base = i;
        let mut acc = 0usize;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Generators of a Sylow p-subgroup of `Sym(n)`: write `n` in base `p` and
/// place, for each digit, that many iterated wreath powers of the p-cycle on
/// fresh blocks of points.
pub fn sym_sylow(n: usize, p: u64) -> GenSet {
    assert!(n >= 1, "sym_sylow needs n >= 1");
    let p_us = p as usize;
    let mut gens: Vec<Permutation> = Vec::new();
    // digits of n in base p, most significant first
    let mut digits: Vec<(u32, usize)> = Vec::new(); // (power, digit)
    let mut rest = n;
    let mut power = 0u32;
    while rest > 0 {
        digits.push((power, rest % p_us));
        rest /= p_us;
        power += 1;
    }
    digits.reverse();
    let mut cursor = 0usize;
    for (power, digit) in digits {
        let block = p_us.pow(power);
        for _ in 0..digit {
            wreath_power_gens(n, cursor, p_us, power, &mut gens);
            cursor += block;
        }
    }
    GenSet::new(n, gens).expect("wreath generators share the ambient degree")
}

/// Appends generators of the iterated wreath power `W_k` of the p-cycle,
/// acting on the `p^k` points starting at `offset` inside degree `n`.
/// `W_0` is trivial; `W_k = W_{k-1} ≀ C_p` is generated by `W_{k-1}` on the
/// first sub-block plus the block rotation `x ↦ x + p^{k-1} (mod p^k)`.
fn wreath_power_gens(n: usize, offset: usize, p: usize, k: u32, gens: &mut Vec<Permutation>) {
    if k == 0 {
        return;
    }
    wreath_power_gens(n, offset, p, k - 1, gens);
    let block = p.pow(k);
    let sub = block / p;
    let mut images: Vec<usize> = (0..n).collect();
    for x in 0..block {
        images[offset + x] = offset + (x + sub) % block;
    }
    gens.push(Permutation::from_images(images).expect("rotation is a bijection"));
}

/// Generators of a Sylow p-subgroup of `Alt(n)`. For odd `p` the symmetric
/// Sylow subgroup already consists of even permutations. For `p = 2` the
/// even part has index 2 in the symmetric Sylow 2-subgroup and is extracted
/// either densely (streaming the elements and collecting even generators)
/// or by Schreier generators of the sign kernel, depending on size.
pub fn alt_sylow(n: usize, p: u64) -> GenSet {
    assert!(n >= 3, "alt_sylow needs n >= 3");
    let sym = sym_sylow(n, p);
    if p != 2 {
        debug_assert!(sym.gens().iter().all(|g| g.is_even()));
        return sym;
    }
    if sym.gens().iter().all(|g| g.is_even()) {
        return sym; // already inside Alt(n) (e.g. n = 3)
    }
    let group = BsgsGroup::from_gens(&sym);
    let two = num_bigint::BigUint::from(2u32);
    if group.order() <= &num_bigint::BigUint::from(1u32 << 22) {
        alt_sylow_dense_extraction(&group, &sym)
    } else {
        let _ = two;
        alt_sylow_sign_kernel(&sym)
    }
}

/// Streams the elements of the symmetric Sylow 2-subgroup, adjoining even
/// ones as generators until the kernel order `|P|/2` is reached.
fn alt_sylow_dense_extraction(group: &BsgsGroup, sym: &GenSet) -> GenSet {
    let target = group.order() / 2u32;
    let mut gens: Vec<Permutation> = Vec::new();
    let mut kernel = BsgsGroup::trivial(sym.degree());
    for element in group.elements() {
        if element.is_identity() || !element.is_even() || kernel.contains(&element) {
            continue;
        }
        gens.push(element);
        kernel = BsgsGroup::from_gens(
            &GenSet::new(sym.degree(), gens.clone()).expect("degrees match"),
        );
        if kernel.order() == &target {
            break;
        }
    }
    GenSet::new(sym.degree(), gens).expect("degrees match")
}

/// Schreier generators of the sign kernel: with transversal `{1, t}` for a
/// fixed odd generator `t`, the kernel is generated by `r·s·(rep of r·s)⁻¹`
/// over transversal elements `r` and generators `s`.
fn alt_sylow_sign_kernel(sym: &GenSet) -> GenSet {
    let t = sym
        .gens()
        .iter()
        .find(|g| !g.is_even())
        .expect("caller checked an odd generator exists")
        .clone();
    let t_inv = t.inverse();
    let mut gens: Vec<Permutation> = Vec::new();
    let id = Permutation::identity(sym.degree());
    for r in [id, t.clone()] {
        for s in sym.gens() {
            let u = r.compose(s);
            let candidate = if u.is_even() { u } else { u.compose(&t_inv) };
            if !candidate.is_identity() && !gens.contains(&candidate) {
                gens.push(candidate);
            }
        }
    }
    GenSet::new(sym.degree(), gens).expect("degrees match")
}

/// The multiset `{ P ∩ P^g : g ∈ D }` for a Sylow system, deduplicated, with
/// its inclusion-minimal members. Only one `g` per right coset of `N_D(P)`
/// is inspected, since the intersection is constant on those cosets.
#[derive(Clone, Debug)]
pub struct IntersectionProfile {
    pub prime: u64,
    pub distinct_intersections: Vec<SubgroupHandle>,
    pub minimal_set: Vec<SubgroupHandle>,
    pub min_order: usize,
}

/// Computes the intersection profile of `system.representative` in `d`.
pub fn intersection_profile(d: &Arc<DenseGroup>, system: &SylowSystem) -> IntersectionProfile {
    let p_handle = &system.representative;
    let profile = subgroup_self_intersections(d, p_handle, &system.normalizer);
    let minimal_set = inclusion_minimal(&profile);
    let min_order = minimal_set.iter().map(|h| h.order()).min().unwrap_or(1);
    IntersectionProfile {
        prime: system.prime,
        distinct_intersections: profile,
        minimal_set,
        min_order,
    }
}

/// Distinct subgroups `H ∩ H^g` over coset representatives `g` of `normalizer`.
pub(crate) fn subgroup_self_intersections(
    d: &Arc<DenseGroup>,
    h: &SubgroupHandle,
    normalizer: &SubgroupHandle,
) -> Vec<SubgroupHandle> {
    let mut visited = FixedBitSet::with_capacity(d.order());
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut out: Vec<SubgroupHandle> = Vec::new();
    for g in 0..d.order() {
        if visited.contains(g) {
            continue;
        }
        for k in normalizer.mask().ones() {
            visited.insert(d.mul(k, g));
        }
        let mut mask = h.mask().clone();
        mask.intersect_with(&d.conjugate_mask(h.mask(), g));
        if seen.insert(mask.clone()) {
            out.push(SubgroupHandle::from_mask(d.clone(), mask));
        }
    }
    out
}

/// Members not strictly containing another member.
pub(crate) fn inclusion_minimal(handles: &[SubgroupHandle]) -> Vec<SubgroupHandle> {
    handles
        .iter()
        .filter(|h| {
            !handles
                .iter()
                .any(|k| k.order() < h.order() && k.is_subset_of(h))
        })
        .cloned()
        .collect()
}
