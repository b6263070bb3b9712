//! Quotient groups as fresh dense tables.
//!
//! The quotient `D/N` is realized through the action of `D` on the right
//! cosets of `N`: each element maps to the permutation it induces on cosets,
//! and the image of that homomorphism (degree `|D|/|N|`) is materialized as
//! its own [`DenseGroup`].

use super::{DenseError, DenseGroup, SubgroupHandle};
use crate::perm::Permutation;
use std::collections::HashMap;
use std::sync::Arc;

/// A quotient `D/N` with its projection map.
#[derive(Clone)]
pub struct QuotientMap {
    pub source: Arc<DenseGroup>,
    pub kernel: SubgroupHandle,
    pub quotient: Arc<DenseGroup>,
    /// source element index → quotient element index (a homomorphism).
    pub projection: Vec<usize>,
}

impl QuotientMap {
    /// Projects a subgroup of the source onto its image in the quotient.
    pub fn project_subgroup(&self, h: &SubgroupHandle) -> SubgroupHandle {
        let mut mask = fixedbitset::FixedBitSet::with_capacity(self.quotient.order());
        for i in h.mask().ones() {
            mask.insert(self.projection[i]);
        }
        SubgroupHandle::from_mask(self.quotient.clone(), mask)
    }
}

impl DenseGroup {
    /// Forms `D/N`. Fails with [`DenseError::NotNormal`] unless `N ⊴ D`.
    pub fn quotient(self: &Arc<Self>, n: &SubgroupHandle) -> Result<QuotientMap, DenseError> {
        if !self.is_normal(n) {
            return Err(DenseError::NotNormal);
        }
        if n.is_trivial() {
            return Ok(QuotientMap {
                source: self.clone(),
                kernel: n.clone(),
                quotient: self.clone(),
                projection: (0..self.order()).collect(),
            });
        }
        let order = self.order();
        let q = order / n.order();
        // label right cosets N·g in first-seen order
        let mut coset_of = vec![usize::MAX; order];
        let mut reps: Vec<usize> = Vec::new();
        for g in 0..order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for k in n.mask().ones() {
                coset_of[self.mul(k, g)] = id;
            }
        }
        debug_assert_eq!(reps.len(), q);
        // permutation induced by g on coset labels
        let induced = |g: usize| -> Permutation {
            let images: Vec<usize> = reps.iter().map(|&r| coset_of[self.mul(r, g)]).collect();
            Permutation::from_images(images).expect("coset action is a bijection")
        };
        let mut images_of_coset: Vec<Permutation> = Vec::with_capacity(q);
        for &r in &reps {
            images_of_coset.push(induced(r));
        }
        let gen_perms: Vec<Permutation> = self
            .gen_indices()
            .iter()
            .map(|&g| induced(g))
            .collect();
        let quotient = DenseGroup::from_closed_elements(q, images_of_coset.clone(), &gen_perms);
        // coset label → index in the quotient's canonical order
        let label_to_index: HashMap<usize, usize> = images_of_coset
            .iter()
            .enumerate()
            .map(|(label, p)| (label, quotient.index_of(p).expect("coset image present")))
            .collect();
        let projection: Vec<usize> = coset_of
            .iter()
            .map(|&label| label_to_index[&label])
            .collect();
        Ok(QuotientMap {
            source: self.clone(),
            kernel: n.clone(),
            quotient,
            projection,
        })
    }
}
