//! Structural invariants: center, hypercenter, Fitting subgroup, p-cores,
//! nilpotency and metanilpotency.

use super::{DenseGroup, SubgroupHandle};
use crate::arith;
use crate::sylow;
use fixedbitset::FixedBitSet;
use std::collections::BTreeMap;
use std::sync::Arc;

/// The invariants bundle for one group.
#[derive(Clone, Debug)]
pub struct GroupInvariants {
    pub center: SubgroupHandle,
    pub hypercenter: SubgroupHandle,
    pub fitting: SubgroupHandle,
    pub p_cores: BTreeMap<u64, SubgroupHandle>,
    pub is_nilpotent: bool,
    pub is_metanilpotent: bool,
    pub odd_order: bool,
}

impl DenseGroup {
    /// Ascends the upper central series without forming quotients:
    /// `Z_{i+1} = { g : [g, s] ∈ Z_i for every generator s }`, iterated to a
    /// fixed point. Works because each candidate set is a subgroup and
    /// membership of `[g, x]` in the normal subgroup `Z_i` only needs to be
    /// checked on generators `x`.
    pub fn hypercenter(self: &Arc<Self>) -> SubgroupHandle {
        let order = self.order();
        let mut z = FixedBitSet::with_capacity(order);
        z.insert(0);
        loop {
            let mut next = FixedBitSet::with_capacity(order);
            for g in 0..order {
                let central = self.gen_indices().iter().all(|&s| {
                    let commutator = self
                        .mul(self.mul(self.inv(g), self.inv(s)), self.mul(g, s));
                    z.contains(commutator)
                });
                if central {
                    next.insert(g);
                }
            }
            if next == z {
                return SubgroupHandle::from_mask(self.clone(), z);
            }
            z = next;
        }
    }

    /// Computes the full invariants bundle. The Fitting subgroup is the join
    /// of the p-cores; nilpotency is "every Sylow subgroup is normal";
    /// metanilpotency is checked without building `D/F`: it holds exactly
    /// when `⟨F, P⟩ ⊴ D` for a Sylow p-subgroup `P` of every prime dividing
    /// `|D : F|` (those subgroups are the Sylow preimages in the quotient).
    pub fn invariants(self: &Arc<Self>) -> GroupInvariants {
        let order = self.order() as u64;
        let primes = arith::primes_dividing(order);
        let mut p_cores = BTreeMap::new();
        let mut is_nilpotent = true;
        let mut sylow_reps = BTreeMap::new();
        for &p in &primes {
            let system = sylow::sylow_dense(self, p);
            is_nilpotent &= system.is_normal;
            p_cores.insert(p, system.p_core.clone());
            sylow_reps.insert(p, system.representative.clone());
        }
        let mut fitting_seeds: Vec<usize> = Vec::new();
        for core in p_cores.values() {
            fitting_seeds.extend_from_slice(core.generators());
        }
        let fitting = self.subgroup_closure(&fitting_seeds);
        let fitting_index = order / fitting.order() as u64;
        let mut is_metanilpotent = true;
        for &p in &primes {
            if !fitting_index.is_multiple_of(p) {
                continue;
            }
            let mut seeds: Vec<usize> = fitting.generators().to_vec();
            seeds.extend_from_slice(sylow_reps[&p].generators());
            let preimage = self.subgroup_closure(&seeds);
            if !self.is_normal(&preimage) {
                is_metanilpotent = false;
                break;
            }
        }
        GroupInvariants {
            center: self.center(),
            hypercenter: self.hypercenter(),
            fitting,
            p_cores,
            is_nilpotent,
            is_metanilpotent,
            odd_order: order % 2 == 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cyclic_gens, direct_product_gens, symmetric_gens};

    fn dense(gens: &crate::perm::GenSet) -> Arc<DenseGroup> {
        DenseGroup::materialize(gens, 5000).unwrap()
    }

    #[test]
    fn nilpotent_group_is_its_own_hypercenter_and_fitting() {
        let c12 = dense(&cyclic_gens(12).unwrap());
        let inv = c12.invariants();
        assert!(inv.is_nilpotent);
        assert!(inv.hypercenter.is_whole_group());
        assert!(inv.fitting.is_whole_group());
        assert!(inv.is_metanilpotent);
    }

    #[test]
    fn c2_times_sym3_has_hypercenter_of_order_2() {
        // Z = C2, and the quotient by it is the centerless Sym(3)
        let gens =
            direct_product_gens(&[cyclic_gens(2).unwrap(), symmetric_gens(3).unwrap()]).unwrap();
        let d = dense(&gens);
        let inv = d.invariants();
        assert_eq!(inv.center.order(), 2);
        assert_eq!(inv.hypercenter.order(), 2);
    }

    #[test]
    fn sym3_and_sym4_series() {
        let s3 = dense(&symmetric_gens(3).unwrap());
        let inv3 = s3.invariants();
        assert_eq!(inv3.fitting.order(), 3);
        assert!(inv3.is_metanilpotent);
        assert!(!inv3.is_nilpotent);
        assert_eq!(inv3.hypercenter.order(), 1);

        let s4 = dense(&symmetric_gens(4).unwrap());
        let inv4 = s4.invariants();
        assert_eq!(inv4.fitting.order(), 4);
        assert!(!inv4.is_metanilpotent);
        assert_eq!(inv4.p_cores[&2].order(), 4);
        assert_eq!(inv4.p_cores[&3].order(), 1);
    }

    #[test]
    fn containment_chain_center_hypercenter_fitting() {
        for gens in [
            symmetric_gens(4).unwrap(),
            direct_product_gens(&[cyclic_gens(2).unwrap(), symmetric_gens(3).unwrap()]).unwrap(),
            cyclic_gens(9).unwrap(),
        ] {
            let d = dense(&gens);
            let inv = d.invariants();
            assert!(inv.center.is_subset_of(&inv.hypercenter));
            assert!(inv.hypercenter.is_subset_of(&inv.fitting));
        }
    }
}
