//! Finite Weyl group actions by simple reflections.

use std::collections::{HashMap, VecDeque};

use crate::error::Result;
use crate::rootdata::{closure, RootSystem, Weight};

/// Result of folding a weight into the dominant chamber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldedWeight {
    /// `(-1)^k` for the `k` simple reflections applied.
    pub sign: i8,
    pub weight: Weight,
    /// True iff every simple-coroot pairing of the folded weight is positive.
    pub regular: bool,
}

/// `s_i(x) = x - x(α_i∨) α_i`, in place.
pub fn reflect_simple(rs: &RootSystem, x: &mut Weight, i: usize) {
    let c = x.0[i];
    if c == 0 {
        return;
    }
    for (k, row) in rs.cartan().iter().enumerate() {
        x.0[k] -= c * row[i];
    }
}

/// Folds `x` into the closed dominant chamber, lowest violated index first.
pub fn to_dominant(rs: &RootSystem, x: &Weight) -> FoldedWeight {
    let mut w = x.clone();
    let mut sign = 1i8;
    while let Some(i) = w.0.iter().position(|&c| c < 0) {
        reflect_simple(rs, &mut w, i);
        sign = -sign;
    }
    let regular = w.0.iter().all(|&c| c > 0);
    FoldedWeight {
        sign,
        weight: w,
        regular,
    }
}

/// `λ* = -w₀λ`, the highest weight of the dual representation.
pub fn dual_weight(rs: &RootSystem, lambda: &Weight) -> Result<Weight> {
    rs.check_dominant(lambda)?;
    Ok(to_dominant(rs, &-lambda).weight)
}

/// The full `W`-orbit of a dominant weight, sorted lexicographically.
pub fn weyl_orbit(rs: &RootSystem, lambda: &Weight) -> Result<Vec<Weight>> {
    rs.check_dominant(lambda)?;
    let r = rs.rank();
    Ok(closure(lambda.clone(), |w| {
        (0..r)
            .filter(|&i| w.0[i] != 0)
            .map(|i| {
                let mut n = w.clone();
                reflect_simple(rs, &mut n, i);
                n
            })
            .collect()
    }))
}

/// Orbit of a regular dominant weight, each element with `ε(w)` for the
/// unique `w` carrying `λ` onto it. Enumeration order is breadth-first by
/// word length, then by simple-reflection index.
///
/// Returns `None` when `λ` is not regular dominant.
pub fn signed_orbit(rs: &RootSystem, lambda: &Weight) -> Option<Vec<(Weight, i8)>> {
    if !lambda.0.iter().all(|&c| c > 0) || lambda.rank() != rs.rank() {
        return None;
    }
    let r = rs.rank();
    let mut seen: HashMap<Weight, i8> = HashMap::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([(lambda.clone(), 1i8)]);
    seen.insert(lambda.clone(), 1);
    while let Some((w, s)) = queue.pop_front() {
        for i in 0..r {
            let mut n = w.clone();
            reflect_simple(rs, &mut n, i);
            if !seen.contains_key(&n) {
                seen.insert(n.clone(), -s);
                queue.push_back((n, -s));
            }
        }
        out.push((w, s));
    }
    Some(out)
}

/// Order of `W` as the size of the orbit of `ρ`. Only feasible for small ranks.
pub fn weyl_group_order(rs: &RootSystem) -> usize {
    signed_orbit(rs, &rs.rho()).map_or(0, |o| o.len())
}
