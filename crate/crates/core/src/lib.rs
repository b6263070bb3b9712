//! Finite-group machinery for Sylow intersection synchronization.
//!
//! Given Sylow subgroups `P₁, …, Pᵣ` of a finite group for distinct primes,
//! this crate studies how a single conjugating element can minimize every
//! `Pᵢ ∩ Pᵢ^x` at once: it builds the coordinate-wise conjugation action on
//! tuples of Sylow subgroups, computes the good-element sets `Γ(P)`, decides
//! the star property `(*)_p`, and mechanically checks the associated
//! theorems and conjectures on a corpus of small groups. A seeded Monte
//! Carlo harness estimates the intersection probabilities in symmetric and
//! alternating groups where exhaustive search is out of reach.
//!
//! Two backends share the work:
//!
//! - [`bsgs`]: exact stabilizer-chain arithmetic (order, membership,
//!   uniform sampling, element enumeration) at any degree that fits;
//! - [`dense`]: full element tables for small groups, with subgroups as
//!   bitmaps and the classical constructions (normalizers, cores,
//!   quotients, the subgroup lattice) computed outright.
//!
//! The narrative guide in `book/` walks through every concept with runnable
//! examples; its code blocks compile and run as part of `cargo test`.
//!
//! ```
//! use sylosync::dense::DenseGroup;
//! use sylosync::ds::{gamma, DsContext, DsTuple};
//! use sylosync::families::symmetric_gens;
//!
//! let sym4 = DenseGroup::materialize(&symmetric_gens(4).unwrap(), 5000).unwrap();
//! let ctx = DsContext::build(&sym4);
//! let report = gamma(&ctx, &DsTuple::canonical(ctx.rank()));
//! // half of Sym(4) minimizes both Sylow self-intersections simultaneously
//! assert!(report.joint_ratio_equals(1, 2));
//! ```

pub mod arith;
pub mod bsgs;
pub mod corpus;
pub mod dense;
pub mod ds;
pub mod families;
pub mod gallery;
pub mod mc;
pub mod perm;
pub mod report;
pub mod rng;
pub mod spec;
pub mod sylow;
pub mod verdict;

/// The guide's code blocks run as doctests so the book can never drift from
/// the library.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/permutations.md")]
    mod permutations {}
    #[doc = include_str!("../../../book/src/dense-groups.md")]
    mod dense_groups {}
    #[doc = include_str!("../../../book/src/sylow.md")]
    mod sylow {}
    #[doc = include_str!("../../../book/src/tuple-action.md")]
    mod tuple_action {}
    #[doc = include_str!("../../../book/src/checkers.md")]
    mod checkers {}
    #[doc = include_str!("../../../book/src/monte-carlo.md")]
    mod monte_carlo {}
    #[doc = include_str!("../../../book/src/gallery.md")]
    mod gallery {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
