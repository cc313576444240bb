//! Fusion rings of simple Lie algebras at any positive level.
//!
//! Fusion coefficients are computed two independent ways: by folding tensor
//! product decompositions through the affine Weyl group (Kac–Walton) and
//! from the modular `S`-matrix (Verlinde). On top of that sit exact checks
//! that candidate generators lie in the fusion ideal, and numerical
//! comparison of their zero sets with the fusion points in rank ≤ 2.
//!
//! ```
//! use fusion_forge::{beta_fold, FoldOutcome, RootSystem, Weight};
//!
//! let a1 = RootSystem::new("A1".parse()?)?;
//! assert_eq!(
//!     beta_fold(&a1, &Weight(vec![3]), 1)?,
//!     FoldOutcome::Nonzero { sign: -1, weight: Weight(vec![1]) }
//! );
//! # Ok::<(), fusion_forge::Error>(())
//! ```
//!
//! Conventions: Bourbaki node numbering, weights in fundamental-weight
//! coordinates, long roots of squared length 2.

pub mod affine;
pub mod conjectures;
pub mod error;
pub mod fusion;
pub mod repring;
pub mod rootdata;
pub mod weyl;

pub use affine::{beta_fold, in_fundamental_alcove, wall_witness, AlcovePosition, FoldOutcome, WallWitness};
pub use conjectures::{
    generator_list, paper_wall_root, solve_rank2_system, verify_equality_rank2, verify_inclusion,
    GeneratorSource, GeneratorSpec, VarietyComparison, VerificationReport,
};
pub use error::{Error, Result};
pub use fusion::{
    enumerate_plevel, fusion_kacwalton, fusion_points, fusion_verlinde, s_matrix, sl2_fusion_oracle,
    FusionMethod, FusionPoint, FusionTable, LevelContext, SMatrix,
};
pub use repring::{
    char_poly, dynkin_index, eval_char_numeric, tensor_decompose, weyl_dim, CharPoly, CharacterTable,
    RepElement,
};
pub use rootdata::{Family, LieType, Rational, RootSystem, RootVector, Weight};
pub use weyl::{dual_weight, to_dominant};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/root-data.md")]
    mod root_data {}
    #[doc = include_str!("../../../book/src/folding.md")]
    mod folding {}
    #[doc = include_str!("../../../book/src/representations.md")]
    mod representations {}
    #[doc = include_str!("../../../book/src/fusion.md")]
    mod fusion {}
    #[doc = include_str!("../../../book/src/ideals.md")]
    mod ideals {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
