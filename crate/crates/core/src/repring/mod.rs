//! The representation ring: dimensions, weight multiplicities, tensor
//! products and Dynkin indices, plus character polynomials in the
//! fundamental characters.

mod charpoly;
mod numeric;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rootdata::{Rational, RootSystem, Weight};
use crate::weyl::{to_dominant, weyl_orbit};

pub use charpoly::{char_poly, CharPoly, CharacterTable, DEFAULT_DIMENSION_CAP};
pub use numeric::{eval_char_numeric, weyl_numerator};

/// A virtual representation: dominant highest weights with integer multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RepElement(BTreeMap<Weight, i64>);

impl RepElement {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn irreducible(w: Weight) -> Self {
        let mut e = Self::new();
        e.add(w, 1);
        e
    }

    pub fn add(&mut self, w: Weight, c: i64) {
        if c == 0 {
            return;
        }
        match self.0.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, w: &Weight) -> i64 {
        self.0.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.0.iter().map(|(w, &c)| (w, c))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_map(self) -> BTreeMap<Weight, i64> {
        self.0
    }

    /// `Σ coefficient · dim`.
    pub fn dimension(&self, rs: &RootSystem) -> Result<i128> {
        let mut total = 0i128;
        for (w, c) in self.iter() {
            total += c as i128 * weyl_dim(rs, w)? as i128;
        }
        Ok(total)
    }
}

impl fmt::Display for RepElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "V{w}")?;
        }
        Ok(())
    }
}

/// Weyl dimension formula `Π_{α>0} (λ+ρ)(α∨) / ρ(α∨)`, exact.
pub fn weyl_dim(rs: &RootSystem, lambda: &Weight) -> Result<u128> {
    rs.check_dominant(lambda)?;
    let x = lambda + &rs.rho();
    let rho = rs.rho();
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for k in 0..rs.positive_roots().len() {
        num *= rs.coroot_pairing(&x, k) as u64;
        den *= rs.coroot_pairing(&rho, k) as u64;
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    q.to_u128().ok_or(Error::Overflow("Weyl dimension"))
}

/// Dominant weights of `V(λ)` with multiplicities, by Freudenthal's recursion
/// `(|λ+ρ|² - |μ+ρ|²) m(μ) = 2 Σ_{α>0} Σ_{k≥1} m(μ+kα)(μ+kα|α)`.
pub fn weight_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<BTreeMap<Weight, u64>> {
    rs.check_dominant(lambda)?;
    let roots = rs.positive_roots_omega();
    let heights: Vec<i64> = rs.positive_roots().iter().map(|a| a.height()).collect();

    // Dominant weights below λ are connected to λ by subtracting positive roots.
    let mut depth: HashMap<Weight, i64> = HashMap::from([(lambda.clone(), 0)]);
    let mut stack = vec![lambda.clone()];
    while let Some(mu) = stack.pop() {
        let d = depth[&mu];
        for (a, h) in roots.iter().zip(&heights) {
            let nu = &mu - a;
            if nu.is_dominant() && !depth.contains_key(&nu) {
                depth.insert(nu.clone(), d + h);
                stack.push(nu);
            }
        }
    }
    let mut order: Vec<(i64, Weight)> = depth.into_iter().map(|(w, d)| (d, w)).collect();
    order.sort();

    let rho = rs.rho();
    let top = lambda + &rho;
    let top_norm = rs.scaled_inner(&top.0, &top.0) as i128;
    let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
    for (d, mu) in order {
        if d == 0 {
            mult.insert(mu, 1);
            continue;
        }
        let mut acc: i128 = 0;
        for a in roots {
            let mut nu = &mu + a;
            loop {
                let dom = to_dominant(rs, &nu).weight;
                let Some(&m) = mult.get(&dom) else { break };
                acc += m as i128 * rs.scaled_inner(&nu.0, &a.0) as i128;
                nu += a;
            }
        }
        let shifted = &mu + &rho;
        let gap = top_norm - rs.scaled_inner(&shifted.0, &shifted.0) as i128;
        debug_assert!(gap > 0);
        let (m, r) = (2 * acc).div_rem(&gap);
        debug_assert_eq!(r, 0, "Freudenthal recursion must divide exactly");
        if m > 0 {
            mult.insert(mu, m as u64);
        }
    }
    Ok(mult)
}

/// Every weight of `V(λ)` with multiplicity, sorted.
pub fn weight_system(rs: &RootSystem, lambda: &Weight) -> Result<Vec<(Weight, u64)>> {
    let mut out = Vec::new();
    for (mu, m) in weight_multiplicities(rs, lambda)? {
        for w in weyl_orbit(rs, &mu)? {
            out.push((w, m));
        }
    }
    out.sort();
    Ok(out)
}

/// `V(λ) ⊗ V(μ)` where `V(μ)` is given by its weight system (Klimyk's rule).
pub fn klimyk(rs: &RootSystem, lambda: &Weight, weights: &[(Weight, u64)]) -> RepElement {
    let shifted = lambda + &rs.rho();
    let rho = rs.rho();
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, m) in weights {
        let f = to_dominant(rs, &(&shifted + nu));
        if f.regular {
            *acc.entry(&f.weight - &rho).or_insert(0) += f.sign as i64 * *m as i64;
        }
    }
    acc.retain(|_, c| *c != 0);
    RepElement(acc)
}

/// Decomposes `V(λ) ⊗ V(μ)` into irreducibles.
pub fn tensor_decompose(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<RepElement> {
    rs.check_dominant(lambda)?;
    rs.check_dominant(mu)?;
    let (big, small) = if weyl_dim(rs, lambda)? >= weyl_dim(rs, mu)? {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    Ok(klimyk(rs, big, &weight_system(rs, small)?))
}

/// Dynkin index `dim V(λ) · (λ|λ+2ρ) / dim 𝔤`.
pub fn dynkin_index(rs: &RootSystem, lambda: &Weight) -> Result<Rational> {
    let dim = weyl_dim(rs, lambda)? as i128;
    let two_rho = 2 * &rs.rho();
    let casimir = rs.scaled_inner(&lambda.0, &(lambda + &two_rho).0) as i128;
    let value = Ratio::new(dim * casimir, rs.form_scale() as i128 * rs.dim_g() as i128);
    let (n, d) = (
        i64::try_from(*value.numer()).map_err(|_| Error::Overflow("Dynkin index"))?,
        i64::try_from(*value.denom()).map_err(|_| Error::Overflow("Dynkin index"))?,
    );
    Ok(Rational::new(n, d))
}

/// The smallest Dynkin index among fundamental representations and the
/// 1-based nodes attaining it.
pub fn minimal_index_fundamentals(rs: &RootSystem) -> Result<(Rational, Vec<usize>)> {
    let r = rs.rank();
    let indices = (1..=r)
        .map(|i| dynkin_index(rs, &Weight::fundamental(r, i)))
        .collect::<Result<Vec<_>>>()?;
    let min = *indices.iter().min().expect("rank >= 1");
    let nodes = (1..=r).filter(|&i| indices[i - 1] == min).collect();
    Ok((min, nodes))
}
