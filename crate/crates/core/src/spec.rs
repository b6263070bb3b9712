//! Group specifications: a small constructor AST ingested from JSON, with
//! validated builds onto the BSGS and dense backends.
//!
//! ```text
//! {"symmetric": 4}
//! {"direct": [{"symmetric": 3}, {"cyclic": 5}]}
//! {"generators": {"degree": 7, "gens": ["(0 1 2 3 4 5 6)", [0,2,4,6,1,3,5]]}}
//! {"semidirect": {"normal": {"cyclic": 7}, "actor": {"cyclic": 3}, "action": [["(0 2 4 6 1 3 5)"]]}}
//! {"wreath": {"base": {"cyclic": 3}, "top_cycle": 3}}
//! {"gallery": "v_rtimes_d8"}
//! ```

use crate::bsgs::BsgsGroup;
use crate::dense::{DenseError, DenseGroup, SubgroupHandle};
use crate::families;
use crate::perm::{GenSet, PermError, Permutation};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation error: {0}")]
    Validation(String),
    #[error(transparent)]
    Dense(#[from] DenseError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Resource caps shared by builds and checkers.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    /// Largest order materialized as a full element table.
    pub dense_cap: u64,
    /// Largest order for exhaustive subgroup enumeration.
    pub enum_cap: usize,
    /// Largest tuple space enumerated orbit-by-orbit.
    pub tuple_bound: u128,
    /// Sampled tuples when the tuple space exceeds the bound.
    pub sample_budget: usize,
    /// Largest Sylow subgroup enumerated by the triviality tester.
    pub mc_limit: u64,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            dense_cap: 5000,
            enum_cap: 300,
            tuple_bound: 1_000_000,
            sample_budget: 10_000,
            mc_limit: crate::mc::DEFAULT_SYLOW_LIMIT,
        }
    }
}

/// A permutation literal: image array or cycle-notation string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PermInput {
    Images(Vec<usize>),
    Cycles(String),
}

impl PermInput {
    pub fn resolve(&self, degree: usize) -> Result<Permutation, SpecError> {
        let perm = match self {
            PermInput::Images(images) => {
                if images.len() != degree {
                    return Err(SpecError::Validation(format!(
                        "image array has length {}, expected degree {degree}",
                        images.len()
                    )));
                }
                Permutation::from_images(images.clone())?
            }
            PermInput::Cycles(text) => Permutation::from_cycles(degree, text)?,
        };
        Ok(perm)
    }
}

/// The constructor AST. Every variant yields a permutation group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    Generators {
        degree: usize,
        gens: Vec<PermInput>,
    },
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Direct(Vec<GroupSpec>),
    Semidirect {
        normal: Box<GroupSpec>,
        actor: Box<GroupSpec>,
        /// One row per actor generator: images of the normal factor's
        /// generators under the induced automorphism, as elements of the
        /// normal factor.
        action: Vec<Vec<PermInput>>,
    },
    Wreath {
        base: Box<GroupSpec>,
        top_cycle: usize,
    },
    Gallery(String),
}

/// A built group: generators, exact BSGS, a dense table when the order fits
/// the cap, and named parts for composite constructors (`normal`/`actor` for
/// semidirect products, `base_block`/`top` for wreath products).
pub struct BuiltGroup {
    pub spec: GroupSpec,
    pub gens: GenSet,
    pub bsgs: BsgsGroup,
    pub dense: Option<Arc<DenseGroup>>,
    pub parts: BTreeMap<String, Vec<Permutation>>,
}

impl std::fmt::Debug for BuiltGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BuiltGroup")
            .field("spec", &self.spec)
            .field("order", self.bsgs.order())
            .field("dense", &self.dense.is_some())
            .finish()
    }
}

impl BuiltGroup {
    pub fn order(&self) -> &BigUint {
        self.bsgs.order()
    }

    /// The dense table, or a validation error naming the cap.
    pub fn dense(&self) -> Result<&Arc<DenseGroup>, SpecError> {
        self.dense.as_ref().ok_or_else(|| {
            SpecError::Validation(format!(
                "group of order {} has no dense table under the current cap",
                self.bsgs.order()
            ))
        })
    }

    /// Resolves a named part to a subgroup handle of the dense table.
    pub fn part_handle(&self, name: &str) -> Result<SubgroupHandle, SpecError> {
        let dense = self.dense()?;
        let part = self
            .parts
            .get(name)
            .ok_or_else(|| SpecError::Validation(format!("no part named {name:?}")))?;
        let seeds: Vec<usize> = part
            .iter()
            .map(|p| {
                dense
                    .index_of(p)
                    .ok_or_else(|| SpecError::Validation("part generator outside group".into()))
            })
            .collect::<Result<_, _>>()?;
        Ok(dense.subgroup_closure(&seeds))
    }
}

impl GroupSpec {
    /// Parses a JSON specification, reporting the error location.
    pub fn parse(text: &str) -> Result<GroupSpec, SpecError> {
        serde_json::from_str(text).map_err(|e| SpecError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("specs serialize")
    }

    /// Content hash of the canonical JSON form; stable identity for reports.
    pub fn content_hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.to_json().as_bytes());
        hasher
            .finalize()
            .iter()
            .take(6)
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// Builds the group, validating every constructor contract.
    pub fn build(&self, caps: &Caps) -> Result<BuiltGroup, SpecError> {
        let (gens, parts) = self.generators(caps)?;
        let bsgs = BsgsGroup::from_gens(&gens);
        let dense = if bsgs.order() <= &BigUint::from(caps.dense_cap) {
            Some(DenseGroup::materialize(&gens, caps.dense_cap)?)
        } else {
            None
        };
        Ok(BuiltGroup {
            spec: self.clone(),
            gens,
            bsgs,
            dense,
            parts,
        })
    }

    #[allow(clippy::type_complexity)]
    fn generators(
        &self,
        caps: &Caps,
    ) -> Result<(GenSet, BTreeMap<String, Vec<Permutation>>), SpecError> {
        let mut parts = BTreeMap::new();
        let gens = match self {
            GroupSpec::Generators { degree, gens } => {
                let perms: Vec<Permutation> = gens
                    .iter()
                    .map(|g| g.resolve(*degree))
                    .collect::<Result<_, _>>()?;
                GenSet::new(*degree, perms)?
            }
            GroupSpec::Cyclic(m) => families::cyclic_gens(*m)?,
            GroupSpec::Dihedral(m) => families::dihedral_gens(*m)?,
            GroupSpec::Symmetric(n) => families::symmetric_gens(*n)?,
            GroupSpec::Alternating(n) => {
                if *n < 3 {
                    return Err(SpecError::Validation(
                        "alternating groups need n >= 3".into(),
                    ));
                }
                families::alternating_gens(*n)?
            }
            GroupSpec::Direct(factors) => {
                if factors.is_empty() {
                    return Err(SpecError::Validation(
                        "direct products need at least one factor".into(),
                    ));
                }
                let built: Vec<GenSet> = factors
                    .iter()
                    .map(|f| f.generators(caps).map(|(g, _)| g))
                    .collect::<Result<_, _>>()?;
                families::direct_product_gens(&built)?
            }
            GroupSpec::Semidirect {
                normal,
                actor,
                action,
            } => {
                let (gens, semidirect_parts) = semidirect_gens(normal, actor, action, caps)?;
                parts = semidirect_parts;
                gens
            }
            GroupSpec::Wreath { base, top_cycle } => {
                let (gens, wreath_parts) = wreath_gens(base, *top_cycle, caps)?;
                parts = wreath_parts;
                gens
            }
            GroupSpec::Gallery(name) => {
                let entry = crate::gallery::entry_by_name(name).ok_or_else(|| {
                    SpecError::Validation(format!("unknown gallery entry {name:?}"))
                })?;
                return entry.spec.generators(caps);
            }
        };
        Ok((gens, parts))
    }
}

/// Realizes `N ⋊ K` on `|N| + degree(K)` points: `N` translates its own
/// element table (right regular action), each actor generator acts on that
/// block as its induced automorphism and on the second block as itself.
/// Validation: every action row extends to an automorphism of `N`, and the
/// generated group has order exactly `|N|·|K|`.
#[allow(clippy::type_complexity)]
fn semidirect_gens(
    normal: &GroupSpec,
    actor: &GroupSpec,
    action: &[Vec<PermInput>],
    caps: &Caps,
) -> Result<(GenSet, BTreeMap<String, Vec<Permutation>>), SpecError> {
    let n_built = normal.build(caps)?;
    let nd = n_built
        .dense
        .as_ref()
        .ok_or_else(|| {
            SpecError::Validation("semidirect normal factor exceeds the dense cap".into())
        })?
        .clone();
    let (k_gens, _) = actor.generators(caps)?;
    let k_order = BsgsGroup::from_gens(&k_gens).order().clone();
    if action.len() != k_gens.gens().len() {
        return Err(SpecError::Validation(format!(
            "action has {} rows but the actor has {} generators",
            action.len(),
            k_gens.gens().len()
        )));
    }
    let n_gen_idx: Vec<usize> = n_built
        .gens
        .gens()
        .iter()
        .map(|p| {
            nd.index_of(p)
                .expect("generators are elements of their own group")
        })
        .collect();
    let n_order = nd.order();
    let k_degree = k_gens.degree();
    let total = n_order + k_degree;

    let mut gens: Vec<Permutation> = Vec::new();
    let mut normal_part = Vec::new();
    let mut actor_part = Vec::new();
    // translations of the element table
    for &g in &n_gen_idx {
        let mut images: Vec<usize> = (0..total).collect();
        for (i, img) in images.iter_mut().enumerate().take(n_order) {
            *img = nd.mul(i, g);
        }
        let perm = Permutation::from_images(images)?;
        normal_part.push(perm.clone());
        gens.push(perm);
    }
    // automorphism action paired with the actor's own representation
    for (k_index, row) in action.iter().enumerate() {
        if row.len() != n_gen_idx.len() {
            return Err(SpecError::Validation(format!(
                "action row {k_index} has {} entries but the normal factor has {} generators",
                row.len(),
                n_gen_idx.len()
            )));
        }
        let images_of_gens: Vec<usize> = row
            .iter()
            .map(|input| {
                let p = input.resolve(nd.degree())?;
                nd.index_of(&p).ok_or_else(|| {
                    SpecError::Validation(
                        "action image is not an element of the normal factor".into(),
                    )
                })
            })
            .collect::<Result<_, _>>()?;
        let table = extend_automorphism(&nd, &n_gen_idx, &images_of_gens)?;
        let mut images: Vec<usize> = (0..total).collect();
        for (i, img) in images.iter_mut().enumerate().take(n_order) {
            *img = table[i];
        }
        let k_perm = &k_gens.gens()[k_index];
        for x in 0..k_degree {
            images[n_order + x] = n_order + k_perm.image(x);
        }
        let perm = Permutation::from_images(images)?;
        actor_part.push(perm.clone());
        gens.push(perm);
    }
    let gen_set = GenSet::new(total, gens)?;
    let built_order = BsgsGroup::from_gens(&gen_set).order().clone();
    let expected = BigUint::from(n_order) * &k_order;
    if built_order != expected {
        return Err(SpecError::Validation(format!(
            "action is not a homomorphism into the automorphisms: built order {built_order}, expected {expected}"
        )));
    }
    let mut parts = BTreeMap::new();
    parts.insert("normal".to_string(), normal_part);
    parts.insert("actor".to_string(), actor_part);
    Ok((gen_set, parts))
}

/// Extends a generator assignment to the full automorphism table, walking
/// the element table once and then verifying multiplicativity on every
/// (element, generator) pair and bijectivity.
fn extend_automorphism(
    nd: &Arc<DenseGroup>,
    gen_idx: &[usize],
    images_of_gens: &[usize],
) -> Result<Vec<usize>, SpecError> {
    let order = nd.order();
    let mut table = vec![usize::MAX; order];
    table[0] = 0;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (j, &g) in gen_idx.iter().enumerate() {
            let y = nd.mul(x, g);
            if table[y] == usize::MAX {
                table[y] = nd.mul(table[x], images_of_gens[j]);
                queue.push(y);
            }
        }
    }
    if table.contains(&usize::MAX) {
        return Err(SpecError::Validation(
            "normal factor generators do not generate it".into(),
        ));
    }
    let mut seen = vec![false; order];
    for &y in &table {
        if seen[y] {
            return Err(SpecError::Validation(
                "action map is not injective, hence not an automorphism".into(),
            ));
        }
        seen[y] = true;
    }
    for x in 0..order {
        for (j, &g) in gen_idx.iter().enumerate() {
            if table[nd.mul(x, g)] != nd.mul(table[x], images_of_gens[j]) {
                return Err(SpecError::Validation(
                    "action map is not a homomorphism of the normal factor".into(),
                ));
            }
        }
    }
    Ok(table)
}

/// `B ≀ C_n` on `n` blocks of `B`'s points: `B` embedded on the first block
/// plus the block rotation.
#[allow(clippy::type_complexity)]
fn wreath_gens(
    base: &GroupSpec,
    n: usize,
    caps: &Caps,
) -> Result<(GenSet, BTreeMap<String, Vec<Permutation>>), SpecError> {
    if n == 0 {
        return Err(SpecError::Validation("wreath top cycle must be >= 1".into()));
    }
    let (base_gens, _) = base.generators(caps)?;
    let d = base_gens.degree();
    let total = d * n;
    let block0 = base_gens.shifted(0, total)?;
    let mut gens: Vec<Permutation> = block0.gens().to_vec();
    let mut parts = BTreeMap::new();
    parts.insert("base_block".to_string(), gens.clone());
    if n > 1 {
        let mut images = vec![0usize; total];
        for b in 0..n {
            for j in 0..d {
                images[b * d + j] = ((b + 1) % n) * d + j;
            }
        }
        let top = Permutation::from_images(images)?;
        parts.insert("top".to_string(), vec![top.clone()]);
        gens.push(top);
    }
    Ok((GenSet::new(total, gens)?, parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(text: &str) -> BuiltGroup {
        GroupSpec::parse(text).unwrap().build(&Caps::default()).unwrap()
    }

    #[test]
    fn family_specs_build() {
        assert_eq!(build(r#"{"symmetric": 4}"#).order(), &BigUint::from(24u32));
        assert_eq!(build(r#"{"cyclic": 9}"#).order(), &BigUint::from(9u32));
        assert_eq!(build(r#"{"dihedral": 6}"#).order(), &BigUint::from(12u32));
        assert_eq!(
            build(r#"{"alternating": 5}"#).order(),
            &BigUint::from(60u32)
        );
    }

    #[test]
    fn direct_product_spec() {
        let g = build(r#"{"direct": [{"symmetric": 3}, {"symmetric": 3}]}"#);
        assert_eq!(g.order(), &BigUint::from(36u32));
        assert_eq!(g.gens.degree(), 6);
    }

    #[test]
    fn generator_spec_accepts_both_literal_forms() {
        let g = build(r#"{"generators": {"degree": 3, "gens": ["(0 1)", [0, 2, 1]]}}"#);
        assert_eq!(g.order(), &BigUint::from(6u32));
    }

    #[test]
    fn generator_spec_rejects_bad_images() {
        let err = GroupSpec::parse(r#"{"generators": {"degree": 3, "gens": [[0, 0, 1]]}}"#)
            .unwrap()
            .build(&Caps::default());
        assert!(err.is_err());
    }

    #[test]
    fn parse_error_carries_location() {
        let err = GroupSpec::parse("{\"symmetric\": }").unwrap_err();
        match err {
            SpecError::Parse { line, column, .. } => {
                assert_eq!(line, 1);
                assert!(column > 0);
            }
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn semidirect_c7_by_c3() {
        // x ↦ 2x has order 3 on Z/7, so this is the Frobenius group of order 21
        let g = build(
            r#"{"semidirect": {"normal": {"cyclic": 7}, "actor": {"cyclic": 3},
                 "action": [["(0 2 4 6 1 3 5)"]]}}"#,
        );
        assert_eq!(g.order(), &BigUint::from(21u32));
        assert_eq!(g.gens.degree(), 7 + 3);
        let dense = g.dense().unwrap();
        let v = g.part_handle("normal").unwrap();
        let k = g.part_handle("actor").unwrap();
        assert_eq!((v.order(), k.order()), (7, 3));
        assert!(dense.is_normal(&v));
        assert_eq!(v.intersect(&k).order(), 1);
    }

    #[test]
    fn semidirect_with_trivial_action_is_direct() {
        let g = build(
            r#"{"semidirect": {"normal": {"cyclic": 5}, "actor": {"cyclic": 2},
                 "action": [["(0 1 2 3 4)"]]}}"#,
        );
        assert_eq!(g.order(), &BigUint::from(10u32));
        // abelian: C5 × C2 = C10
        let dense = g.dense().unwrap();
        assert!(dense.center().is_whole_group());
    }

    #[test]
    fn semidirect_rejects_non_automorphism() {
        // x ↦ 0·x collapses the group: not injective
        let err = GroupSpec::parse(
            r#"{"semidirect": {"normal": {"cyclic": 7}, "actor": {"cyclic": 3},
                 "action": [["()"]]}}"#,
        )
        .unwrap()
        .build(&Caps::default());
        assert!(matches!(err, Err(SpecError::Validation(_))), "{err:?}");
    }

    #[test]
    fn semidirect_rejects_order_mismatch() {
        // x ↦ 3x has order 6 on Z/7; C3 cannot act through it
        let err = GroupSpec::parse(
            r#"{"semidirect": {"normal": {"cyclic": 7}, "actor": {"cyclic": 3},
                 "action": [["(0 3 2 6 4 5 1)"]]}}"#,
        )
        .unwrap()
        .build(&Caps::default());
        assert!(matches!(err, Err(SpecError::Validation(_))), "{err:?}");
    }

    #[test]
    fn wreath_c3_by_c3() {
        let g = build(r#"{"wreath": {"base": {"cyclic": 3}, "top_cycle": 3}}"#);
        assert_eq!(g.order(), &BigUint::from(81u32)); // 3^3 · 3
        assert_eq!(g.gens.degree(), 9);
        assert!(g.parts.contains_key("top"));
    }

    #[test]
    fn round_trip_parse_emit() {
        for text in [
            r#"{"symmetric": 4}"#,
            r#"{"direct": [{"symmetric": 3}, {"cyclic": 5}]}"#,
            r#"{"wreath": {"base": {"cyclic": 3}, "top_cycle": 3}}"#,
            r#"{"generators": {"degree": 3, "gens": [[1, 2, 0]]}}"#,
        ] {
            let spec = GroupSpec::parse(text).unwrap();
            let emitted = spec.to_json();
            assert_eq!(GroupSpec::parse(&emitted).unwrap(), spec);
        }
    }

    #[test]
    fn content_hash_distinguishes_specs() {
        let a = GroupSpec::parse(r#"{"symmetric": 4}"#).unwrap();
        let b = GroupSpec::parse(r#"{"symmetric": 5}"#).unwrap();
        assert_ne!(a.content_hash(), b.content_hash());
        assert_eq!(a.content_hash(), a.content_hash());
    }

    #[test]
    fn dense_backend_only_below_cap() {
        let caps = Caps {
            dense_cap: 100,
            ..Caps::default()
        };
        let g = GroupSpec::parse(r#"{"symmetric": 5}"#)
            .unwrap()
            .build(&caps)
            .unwrap();
        assert!(g.dense.is_none());
        assert_eq!(g.order(), &BigUint::from(120u32));
    }
}
