//! Full-element-table groups with subgroup algebra.
//!
//! A [`DenseGroup`] stores every element of a small group (canonically
//! ordered, identity first) with constant-time index lookup. Subgroups are
//! membership bitmaps over the parent's indices, so intersections are bitwise
//! AND and all the classic constructions (normalizers, centralizers, cores,
//! quotients) reduce to scans over element indices.

mod enumerate;
mod invariants;
mod quotient;

pub use enumerate::SubgroupFilter;
pub use invariants::GroupInvariants;
pub use quotient::QuotientMap;

use crate::bsgs::BsgsGroup;
use crate::perm::{GenSet, Permutation};
use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DenseError {
    #[error("group order {order} exceeds the dense cap {cap}")]
    OrderExceedsCap { order: BigUint, cap: u64 },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group order {order} exceeds the subgroup enumeration cap {cap}")]
    EnumerationCapExceeded { order: usize, cap: usize },
}

/// A group given by its complete, canonically ordered element table.
pub struct DenseGroup {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    inverses: Vec<usize>,
    orders: Vec<u64>,
    gens: Vec<usize>,
    content_hash: String,
}

impl fmt::Debug for DenseGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DenseGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("hash", &self.content_hash)
            .finish()
    }
}

impl DenseGroup {
    /// Builds the full element table of `⟨gens⟩`, refusing groups larger than
    /// `cap`. The order is probed with a BSGS build first, so oversized input
    /// fails before any table is allocated.
    pub fn materialize(gens: &GenSet, cap: u64) -> Result<Arc<DenseGroup>, DenseError> {
        let bsgs = BsgsGroup::from_gens(gens);
        if bsgs.order() > &BigUint::from(cap) {
            return Err(DenseError::OrderExceedsCap {
                order: bsgs.order().clone(),
                cap,
            });
        }
        let elements: Vec<Permutation> = bsgs.elements().collect();
        Ok(DenseGroup::from_closed_elements(
            gens.degree(),
            elements,
            gens.gens(),
        ))
    }

    /// Builds a table from an element list already closed under the group
    /// operations. `gen_perms` may be any generating subset of the list.
    pub(crate) fn from_closed_elements(
        degree: usize,
        mut elements: Vec<Permutation>,
        gen_perms: &[Permutation],
    ) -> Arc<DenseGroup> {
        elements.sort_unstable();
        elements.dedup();
        debug_assert!(elements[0].is_identity(), "identity is lex-minimal");
        let index: HashMap<Permutation, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let inverses: Vec<usize> = elements.iter().map(|p| index[&p.inverse()]).collect();
        let orders: Vec<u64> = elements.iter().map(|p| p.order()).collect();
        let mut gens: Vec<usize> = gen_perms
            .iter()
            .filter(|p| !p.is_identity())
            .map(|p| index[p])
            .collect();
        gens.sort_unstable();
        gens.dedup();
        let mut hasher = Sha256::new();
        hasher.update((degree as u64).to_le_bytes());
        for p in &elements {
            for &y in p.images() {
                hasher.update((y as u64).to_le_bytes());
            }
        }
        let content_hash = hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();
        Arc::new(DenseGroup {
            degree,
            elements,
            index,
            inverses,
            orders,
            gens,
            content_hash,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Hash of the canonical element table; identifies the group in reports.
    pub fn content_hash(&self) -> &str {
        &self.content_hash
    }

    pub fn perm(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Indices of the generators the table was built from.
    pub fn gen_indices(&self) -> &[usize] {
        &self.gens
    }

    /// Product `elements[i] · elements[j]` (left-to-right).
    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].compose(&self.elements[j])]
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inverses[i]
    }

    /// Index of the conjugate `elements[i]^elements[g]`.
    #[inline]
    pub fn conj(&self, i: usize, g: usize) -> usize {
        self.index[&self.elements[i].conjugate(&self.elements[g])]
    }

    /// Multiplicative order of `elements[i]`.
    #[inline]
    pub fn element_order(&self, i: usize) -> u64 {
        self.orders[i]
    }

    /// Smallest subgroup containing the seed indices.
    pub fn subgroup_closure(self: &Arc<Self>, seeds: &[usize]) -> SubgroupHandle {
        let mask = self.close_mask_from(None, seeds);
        SubgroupHandle::from_mask_with_gens(self.clone(), mask, seeds.to_vec())
    }

    /// The whole group as a subgroup of itself.
    pub fn full_subgroup(self: &Arc<Self>) -> SubgroupHandle {
        let mut mask = FixedBitSet::with_capacity(self.order());
        mask.insert_range(..);
        SubgroupHandle::from_mask_with_gens(self.clone(), mask, self.gens.clone())
    }

    pub fn trivial_subgroup(self: &Arc<Self>) -> SubgroupHandle {
        self.subgroup_closure(&[])
    }

    /// Closes `base` (or the trivial subgroup) under right-multiplication by
    /// the seeds. The result is `base·⟨seeds⟩` as a set, so callers must pass
    /// a `base` contained in `⟨seeds⟩` for the result to be that subgroup;
    /// `None` (the identity alone) always is.
    fn close_mask_from(&self, base: Option<&FixedBitSet>, seeds: &[usize]) -> FixedBitSet {
        let mut mask = match base {
            Some(b) => b.clone(),
            None => {
                let mut m = FixedBitSet::with_capacity(self.order());
                m.insert(0);
                m
            }
        };
        let mut queue: Vec<usize> = mask.ones().collect();
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &s in seeds {
                let y = self.mul(x, s);
                if !mask.contains(y) {
                    mask.insert(y);
                    queue.push(y);
                }
            }
        }
        mask
    }

    /// `{g ∈ D : H^g = H}`.
    pub fn normalizer(self: &Arc<Self>, h: &SubgroupHandle) -> SubgroupHandle {
        let gens = h.generators().to_vec();
        let mut mask = FixedBitSet::with_capacity(self.order());
        for g in 0..self.order() {
            if gens.iter().all(|&s| h.mask.contains(self.conj(s, g))) {
                mask.insert(g);
            }
        }
        SubgroupHandle::from_mask(self.clone(), mask)
    }

    /// `C_D(H)`: elements commuting with every generator of `H`.
    pub fn centralizer(self: &Arc<Self>, h: &SubgroupHandle) -> SubgroupHandle {
        let gens = h.generators().to_vec();
        let mut mask = FixedBitSet::with_capacity(self.order());
        for g in 0..self.order() {
            if gens.iter().all(|&s| self.mul(g, s) == self.mul(s, g)) {
                mask.insert(g);
            }
        }
        SubgroupHandle::from_mask(self.clone(), mask)
    }

    /// `(C_D(H), Z(D))`.
    pub fn centralizer_and_center(
        self: &Arc<Self>,
        h: &SubgroupHandle,
    ) -> (SubgroupHandle, SubgroupHandle) {
        (self.centralizer(h), self.center())
    }

    pub fn center(self: &Arc<Self>) -> SubgroupHandle {
        self.centralizer(&self.full_subgroup())
    }

    /// The mask of `H^g`.
    pub fn conjugate_mask(&self, mask: &FixedBitSet, g: usize) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.order());
        for i in mask.ones() {
            out.insert(self.conj(i, g));
        }
        out
    }

    /// Orbit of `H` under conjugation: all distinct conjugates, each paired
    /// with one conjugating element (`orbit[k] = H^{by[k]}`), discovered by a
    /// deterministic BFS over the parent's generators.
    pub fn conjugate_orbit(
        self: &Arc<Self>,
        h: &SubgroupHandle,
    ) -> (Vec<FixedBitSet>, Vec<usize>) {
        let mut orbit = vec![h.mask.clone()];
        let mut by = vec![0usize];
        let mut seen: HashMap<FixedBitSet, ()> = HashMap::new();
        seen.insert(h.mask.clone(), ());
        let mut head = 0;
        while head < orbit.len() {
            let current = orbit[head].clone();
            let conjugator = by[head];
            head += 1;
            for &g in &self.gens {
                let image = self.conjugate_mask(&current, g);
                if !seen.contains_key(&image) {
                    seen.insert(image.clone(), ());
                    orbit.push(image);
                    by.push(self.mul(conjugator, g));
                }
            }
        }
        (orbit, by)
    }

    /// `Core_D(H) = ⋂_{g∈D} H^g`: the largest normal subgroup of `D` in `H`.
    pub fn core_of(self: &Arc<Self>, h: &SubgroupHandle) -> SubgroupHandle {
        let (orbit, _) = self.conjugate_orbit(h);
        let mut mask = h.mask.clone();
        for conj in &orbit {
            mask.intersect_with(conj);
        }
        SubgroupHandle::from_mask(self.clone(), mask)
    }

    /// Normal closure `⟨x^D⟩` of a single element.
    pub fn normal_closure(self: &Arc<Self>, x: usize) -> SubgroupHandle {
        let mut conjugates = vec![x];
        let mut seen = FixedBitSet::with_capacity(self.order());
        seen.insert(x);
        let mut head = 0;
        while head < conjugates.len() {
            let current = conjugates[head];
            head += 1;
            for &g in &self.gens {
                let y = self.conj(current, g);
                if !seen.contains(y) {
                    seen.insert(y);
                    conjugates.push(y);
                }
            }
        }
        self.subgroup_closure(&conjugates)
    }

    /// True when `H ⊴ D` (checked on generators of both sides).
    pub fn is_normal(self: &Arc<Self>, h: &SubgroupHandle) -> bool {
        h.generators()
            .iter()
            .all(|&s| self.gens.iter().all(|&g| h.mask.contains(self.conj(s, g))))
    }

    /// `O_π(D)`: the largest normal subgroup whose order is a π-number,
    /// computed as the join of the normal closures `⟨x^D⟩` that are π-groups.
    pub fn pi_core(self: &Arc<Self>, pi: &[u64]) -> SubgroupHandle {
        let mut member = self.trivial_subgroup();
        for x in 1..self.order() {
            if member.contains(x) {
                continue;
            }
            if !crate::arith::is_pi_number(self.orders[x], pi) {
                continue;
            }
            let closure = self.normal_closure(x);
            if crate::arith::is_pi_number(closure.order() as u64, pi) {
                let mut seeds: Vec<usize> = member.generators().to_vec();
                seeds.extend_from_slice(closure.generators());
                member = self.subgroup_closure(&seeds);
            }
        }
        member
    }
}

/// A subgroup of a [`DenseGroup`], stored as a membership bitmap.
#[derive(Clone)]
pub struct SubgroupHandle {
    parent: Arc<DenseGroup>,
    mask: FixedBitSet,
    order: usize,
    gens: OnceLock<Vec<usize>>,
}

impl SubgroupHandle {
    pub(crate) fn from_mask(parent: Arc<DenseGroup>, mask: FixedBitSet) -> SubgroupHandle {
        let order = mask.count_ones(..);
        debug_assert!(mask.contains(0), "subgroup mask must contain the identity");
        SubgroupHandle {
            parent,
            mask,
            order,
            gens: OnceLock::new(),
        }
    }

    pub(crate) fn from_mask_with_gens(
        parent: Arc<DenseGroup>,
        mask: FixedBitSet,
        mut gens: Vec<usize>,
    ) -> SubgroupHandle {
        gens.retain(|&g| g != 0);
        gens.sort_unstable();
        gens.dedup();
        let handle = SubgroupHandle::from_mask(parent, mask);
        let _ = handle.gens.set(gens);
        handle
    }

    pub fn parent(&self) -> &Arc<DenseGroup> {
        &self.parent
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask.contains(i)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_whole_group(&self) -> bool {
        self.order == self.parent.order()
    }

    /// Element indices in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        self.mask.ones().collect()
    }

    pub fn is_subset_of(&self, other: &SubgroupHandle) -> bool {
        self.mask.is_subset(&other.mask)
    }

    /// A generating set of indices (greedy, cached). Not minimal, but small:
    /// each generator strictly grows the chain, so there are at most
    /// `log2(order)` of them.
    pub fn generators(&self) -> &[usize] {
        self.gens.get_or_init(|| {
            let mut gens: Vec<usize> = Vec::new();
            let mut closed = FixedBitSet::with_capacity(self.parent.order());
            closed.insert(0);
            for i in self.mask.ones() {
                if closed.contains(i) {
                    continue;
                }
                gens.push(i);
                closed = self.parent.close_mask_from(Some(&closed), &gens);
                if closed.count_ones(..) == self.order {
                    break;
                }
            }
            gens
        })
    }

    /// Intersection of two subgroups of the same parent (bitmap AND).
    pub fn intersect(&self, other: &SubgroupHandle) -> SubgroupHandle {
        debug_assert!(Arc::ptr_eq(&self.parent, &other.parent));
        let mut mask = self.mask.clone();
        mask.intersect_with(&other.mask);
        SubgroupHandle::from_mask(self.parent.clone(), mask)
    }

    /// `|HK| = |H|·|K| / |H∩K|` (as a set product; a subgroup only when one
    /// side normalizes the other).
    pub fn product_size(&self, other: &SubgroupHandle) -> usize {
        self.order * other.order / self.intersect(other).order
    }

    /// The conjugate subgroup `H^g`.
    pub fn conjugate(&self, g: usize) -> SubgroupHandle {
        let mask = self.parent.conjugate_mask(&self.mask, g);
        match self.gens.get() {
            Some(gens) => {
                let conj_gens = gens.iter().map(|&s| self.parent.conj(s, g)).collect();
                SubgroupHandle::from_mask_with_gens(self.parent.clone(), mask, conj_gens)
            }
            None => SubgroupHandle::from_mask(self.parent.clone(), mask),
        }
    }

    /// Witness form: sorted indices plus the parent table hash.
    pub fn witness_indices(&self) -> (String, Vec<usize>) {
        (self.parent.content_hash().to_string(), self.indices())
    }
}

impl PartialEq for SubgroupHandle {
    fn eq(&self, other: &Self) -> bool {
        self.parent.content_hash == other.parent.content_hash && self.mask == other.mask
    }
}

impl Eq for SubgroupHandle {}

impl fmt::Debug for SubgroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubgroupHandle(order {})", self.order)
    }
}
