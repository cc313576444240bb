//! Affine walls, the fundamental alcove and the level-`ℓ` folding map `β`.
//!
//! With `k = ℓ + ȟ`, the affine wall `H_{α,n}` is the hyperplane
//! `(x|α) = n·k`. The closed fundamental alcove is
//! `{x : x(α_i∨) ≥ 0, x(θ∨) ≤ k}` and is a fundamental domain for the
//! level-`ℓ` affine Weyl group. `β(V(λ))` is found by folding `λ + ρ` into
//! that alcove: it vanishes when the endpoint lies on the boundary and is
//! `±V(μ)` otherwise.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::{Rational, RootSystem, RootVector, Weight};
use crate::weyl::reflect_simple;

/// Where a point sits relative to the closed fundamental alcove.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlcovePosition {
    Interior,
    Boundary,
    Outside,
}

/// Image of an irreducible under `β`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum FoldOutcome {
    Zero,
    /// `sign · V(weight)` with `weight ∈ P_ℓ`.
    Nonzero { sign: i8, weight: Weight },
}

impl FoldOutcome {
    pub fn is_zero(&self) -> bool {
        matches!(self, FoldOutcome::Zero)
    }
}

/// A positive root `α` and multiple `n` with `(λ+ρ|α) = n(ℓ+ȟ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallWitness {
    pub root: RootVector,
    pub level_multiple: i64,
}

fn check_level(level: u32) -> Result<i64> {
    if level == 0 {
        Err(Error::ZeroLevel)
    } else {
        Ok(level as i64)
    }
}

pub fn in_fundamental_alcove(rs: &RootSystem, x: &Weight, level: u32) -> Result<AlcovePosition> {
    rs.check_rank(x)?;
    let k = check_level(level)? + rs.dual_coxeter();
    let theta = rs.theta_pairing(x);
    if x.0.iter().any(|&c| c < 0) || theta > k {
        Ok(AlcovePosition::Outside)
    } else if x.0.contains(&0) || theta == k {
        Ok(AlcovePosition::Boundary)
    } else {
        Ok(AlcovePosition::Interior)
    }
}

/// Folding trace: the outcome plus the number of reflections applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldTrace {
    pub outcome: FoldOutcome,
    pub steps: usize,
}

/// `β(V(λ))` by exact affine-Weyl folding.
pub fn beta_fold(rs: &RootSystem, lambda: &Weight, level: u32) -> Result<FoldOutcome> {
    beta_fold_traced(rs, lambda, level).map(|t| t.outcome)
}

pub fn beta_fold_traced(rs: &RootSystem, lambda: &Weight, level: u32) -> Result<FoldTrace> {
    rs.check_dominant(lambda)?;
    let k = check_level(level)? + rs.dual_coxeter();
    Ok(fold_shifted(rs, &(lambda + &rs.rho()), k))
}

/// Folds an arbitrary `x` (already shifted by `ρ`) into the alcove at shifted level `k`.
///
/// Simple walls are tried in index order before the `θ` wall.
pub(crate) fn fold_shifted(rs: &RootSystem, x: &Weight, k: i64) -> FoldTrace {
    let theta = rs.root_to_weight(rs.theta());
    let mut x = x.clone();
    let mut sign = 1i8;
    let mut steps = 0;
    loop {
        if let Some(i) = x.0.iter().position(|&c| c < 0) {
            reflect_simple(rs, &mut x, i);
        } else {
            let excess = rs.theta_pairing(&x) - k;
            if excess <= 0 {
                break;
            }
            // reflection across H_{θ,1}: x - ((x|θ) - k)θ, using (θ|θ) = 2
            for (c, t) in x.0.iter_mut().zip(&theta.0) {
                *c -= excess * t;
            }
        }
        sign = -sign;
        steps += 1;
    }
    let on_boundary = x.0.contains(&0) || rs.theta_pairing(&x) == k;
    let outcome = if on_boundary {
        FoldOutcome::Zero
    } else {
        FoldOutcome::Nonzero {
            sign,
            weight: &x - &rs.rho(),
        }
    };
    FoldTrace { outcome, steps }
}

/// Every `(α, n)` with `(λ+ρ|α) = n(ℓ+ȟ)`, `α` positive, ordered by `n`
/// then by root.
pub fn wall_witnesses(rs: &RootSystem, lambda: &Weight, level: u32) -> Result<Vec<WallWitness>> {
    rs.check_dominant(lambda)?;
    let k = Rational::from(check_level(level)? + rs.dual_coxeter());
    let x = lambda + &rs.rho();
    let mut found = Vec::new();
    for root in rs.positive_roots() {
        let pairing = rs.inner_product(&x, root)?;
        let n = pairing / k;
        if n.is_integer() && n > Rational::from(0) {
            found.push(WallWitness {
                root: root.clone(),
                level_multiple: n.to_integer(),
            });
        }
    }
    found.sort_by(|a, b| (a.level_multiple, &a.root).cmp(&(b.level_multiple, &b.root)));
    Ok(found)
}

/// Some wall through `λ + ρ`, if any; smallest `n` first.
pub fn wall_witness(rs: &RootSystem, lambda: &Weight, level: u32) -> Result<Option<WallWitness>> {
    Ok(wall_witnesses(rs, lambda, level)?.into_iter().next())
}
