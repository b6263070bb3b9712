//! Exhaustive subgroup enumeration for small groups.
//!
//! Layered closure: start from all cyclic subgroups, then repeatedly extend
//! each known subgroup by one outside element and close. Every subgroup is a
//! chain of such one-generator extensions, so the sweep is exhaustive.

use super::{DenseError, DenseGroup, SubgroupHandle};
use crate::arith;
use fixedbitset::FixedBitSet;
use std::collections::HashSet;
use std::sync::Arc;

/// Predicate filters for [`DenseGroup::enumerate_subgroups`] results.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupFilter {
    All,
    Abelian,
    Nilpotent,
    /// Nilpotent and not strictly contained in a larger nilpotent subgroup.
    MaximalNilpotent,
    /// Order is the full π-part of the group order for some π, i.e. order and
    /// index are coprime.
    Hall,
}

impl DenseGroup {
    /// Lists every subgroup exactly once, sorted by (order, indices).
    pub fn enumerate_subgroups(
        self: &Arc<Self>,
        enum_cap: usize,
    ) -> Result<Vec<SubgroupHandle>, DenseError> {
        if self.order() > enum_cap {
            return Err(DenseError::EnumerationCapExceeded {
                order: self.order(),
                cap: enum_cap,
            });
        }
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let mut queue: Vec<SubgroupHandle> = Vec::new();
        let trivial = self.trivial_subgroup();
        seen.insert(trivial.mask().clone());
        queue.push(trivial);
        for x in 1..self.order() {
            let cyclic = self.subgroup_closure(&[x]);
            if seen.insert(cyclic.mask().clone()) {
                queue.push(cyclic);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let current = queue[head].clone();
            head += 1;
            if current.is_whole_group() {
                continue;
            }
            let mut seeds: Vec<usize> = current.generators().to_vec();
            for x in 1..self.order() {
                if current.contains(x) {
                    continue;
                }
                seeds.push(x);
                let extended_mask = self.close_mask_from(Some(current.mask()), &seeds);
                seeds.pop();
                if !seen.contains(&extended_mask) {
                    seen.insert(extended_mask.clone());
                    let mut gens = current.generators().to_vec();
                    gens.push(x);
                    queue.push(SubgroupHandle::from_mask_with_gens(
                        self.clone(),
                        extended_mask,
                        gens,
                    ));
                }
            }
        }
        queue.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.indices().cmp(&b.indices()))
        });
        Ok(queue)
    }

    /// Applies a [`SubgroupFilter`] to an enumerated list.
    pub fn filter_subgroups(
        self: &Arc<Self>,
        all: &[SubgroupHandle],
        filter: SubgroupFilter,
    ) -> Vec<SubgroupHandle> {
        match filter {
            SubgroupFilter::All => all.to_vec(),
            SubgroupFilter::Abelian => all
                .iter()
                .filter(|h| self.is_abelian_subgroup(h))
                .cloned()
                .collect(),
            SubgroupFilter::Nilpotent => all
                .iter()
                .filter(|h| self.is_nilpotent_subgroup(h))
                .cloned()
                .collect(),
            SubgroupFilter::MaximalNilpotent => {
                let nilpotent = self.filter_subgroups(all, SubgroupFilter::Nilpotent);
                nilpotent
                    .iter()
                    .filter(|h| {
                        !nilpotent
                            .iter()
                            .any(|k| k.order() > h.order() && h.is_subset_of(k))
                    })
                    .cloned()
                    .collect()
            }
            SubgroupFilter::Hall => all
                .iter()
                .filter(|h| {
                    let index = (self.order() / h.order()) as u64;
                    arith::gcd(h.order() as u64, index) == 1
                })
                .cloned()
                .collect(),
        }
    }

    /// True when all generators commute pairwise.
    pub fn is_abelian_subgroup(self: &Arc<Self>, h: &SubgroupHandle) -> bool {
        let gens = h.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Nilpotency via element counts: a finite group is nilpotent exactly
    /// when, for every prime `p`, its elements of p-power order number the
    /// full p-part of the group order (they then form the unique Sylow
    /// p-subgroup).
    pub fn is_nilpotent_subgroup(self: &Arc<Self>, h: &SubgroupHandle) -> bool {
        let order = h.order() as u64;
        for p in arith::primes_dividing(order) {
            let p_part = arith::p_part(order, p);
            let count = h
                .mask()
                .ones()
                .filter(|&i| {
                    let o = self.element_order(i);
                    o == 1 || arith::primes_dividing(o) == [p]
                })
                .count() as u64;
            if count != p_part {
                return false;
            }
        }
        true
    }

    /// Maximal subgroups of `D`: proper and not contained in a larger proper
    /// subgroup.
    pub fn maximal_subgroups(
        self: &Arc<Self>,
        all: &[SubgroupHandle],
    ) -> Vec<SubgroupHandle> {
        all.iter()
            .filter(|h| !h.is_whole_group())
            .filter(|h| {
                !all.iter().any(|k| {
                    !k.is_whole_group() && k.order() > h.order() && h.is_subset_of(k)
                })
            })
            .cloned()
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cyclic_gens, symmetric_gens};

    fn dense(gens: &crate::perm::GenSet) -> Arc<DenseGroup> {
        DenseGroup::materialize(gens, 5000).unwrap()
    }

    // oracle: subgroups of Sym(3)/Sym(4) are all generated by at most two
    // elements, so closing every element pair finds all of them
    fn two_generated_subgroup_count(d: &Arc<DenseGroup>) -> usize {
        let mut seen = HashSet::new();
        for a in 0..d.order() {
            for b in a..d.order() {
                seen.insert(d.subgroup_closure(&[a, b]).mask().clone());
            }
        }
        seen.len()
    }

    #[test]
    fn sym3_has_six_subgroups() {
        let d = dense(&symmetric_gens(3).unwrap());
        let subs = d.enumerate_subgroups(300).unwrap();
        assert_eq!(subs.len(), 6); // 1, three C2, C3, Sym(3)
        assert_eq!(subs.len(), two_generated_subgroup_count(&d));
    }

    #[test]
    fn sym4_has_thirty_subgroups() {
        let d = dense(&symmetric_gens(4).unwrap());
        let subs = d.enumerate_subgroups(300).unwrap();
        assert_eq!(subs.len(), 30);
        assert_eq!(subs.len(), two_generated_subgroup_count(&d));
    }

    #[test]
    fn prime_cyclic_has_two_subgroups() {
        let d = dense(&cyclic_gens(7).unwrap());
        assert_eq!(d.enumerate_subgroups(300).unwrap().len(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let d = dense(&symmetric_gens(4).unwrap());
        assert!(matches!(
            d.enumerate_subgroups(10),
            Err(DenseError::EnumerationCapExceeded { order: 24, cap: 10 })
        ));
    }

    #[test]
    fn filters_on_sym4() {
        let d = dense(&symmetric_gens(4).unwrap());
        let all = d.enumerate_subgroups(300).unwrap();
        let abelian = d.filter_subgroups(&all, SubgroupFilter::Abelian);
        // 1 + 9 of order 2 + 4 of order 3 + (3 cyclic + 4 Klein) of order 4 = 21
        assert_eq!(abelian.len(), 21);
        let nilpotent = d.filter_subgroups(&all, SubgroupFilter::Nilpotent);
        // the abelian ones plus the three D8 Sylow subgroups
        assert_eq!(nilpotent.len(), 24);
        let max_nilpotent = d.filter_subgroups(&all, SubgroupFilter::MaximalNilpotent);
        // three D8 and four C3 (each C3 is self-normalizing among nilpotents)
        assert_eq!(max_nilpotent.len(), 7);
        for h in &max_nilpotent {
            assert!(d.is_nilpotent_subgroup(h));
        }
        let hall = d.filter_subgroups(&all, SubgroupFilter::Hall);
        // order ∈ {1, 3, 8, 24}: 1 + 4 + 3 + 1
        assert_eq!(hall.len(), 9);
    }

    #[test]
    fn abelian_and_nilpotent_tests_agree_with_definitions() {
        let d = dense(&symmetric_gens(4).unwrap());
        let all = d.enumerate_subgroups(300).unwrap();
        for h in &all {
            // abelian oracle: all element pairs commute
            let idx = h.indices();
            let abelian_oracle = idx
                .iter()
                .all(|&a| idx.iter().all(|&b| d.mul(a, b) == d.mul(b, a)));
            assert_eq!(d.is_abelian_subgroup(h), abelian_oracle);
            // every abelian subgroup is nilpotent
            if abelian_oracle {
                assert!(d.is_nilpotent_subgroup(h));
            }
        }
    }
}
