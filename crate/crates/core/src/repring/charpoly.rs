use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;

use super::{klimyk, weight_system, weyl_dim};
use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, Weight};

/// Default cap on `dim V(λ)` for any character polynomial computed.
pub const DEFAULT_DIMENSION_CAP: u128 = 1_000_000;

/// Integer polynomial in the fundamental characters `x_i = χ_{ω_i}`.
///
/// Keys are exponent vectors; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl CharPoly {
    pub fn zero(nvars: usize) -> Self {
        CharPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `x_i`, 1-based.
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, 1);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, i64)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector has wrong length");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[u32], i64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Largest exponent of variable `i` (0-based).
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &CharPoly, c: i64) {
        for (e, &d) in &other.terms {
            self.add_term(e.clone(), c * d);
        }
    }

    /// Multiplies by `x_i` (0-based).
    pub fn mul_var(&self, i: usize) -> CharPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| {
                let mut e = e.clone();
                e[i] += 1;
                (e, c)
            })
            .collect();
        CharPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, &c)| {
                e.iter()
                    .zip(point)
                    .fold(Complex64::new(c as f64, 0.0), |acc, (&k, x)| acc * x.powu(k))
            })
            .sum()
    }

    /// `Σ |c| Π |x_i|^{e_i}`, the natural size scale of [`Self::eval`] at `point`.
    pub fn eval_scale(&self, point: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, &c)| {
                e.iter()
                    .zip(point)
                    .fold((c as f64).abs(), |acc, (&k, x)| acc * x.norm().powi(k as i32))
            })
            .sum()
    }

    pub fn eval_int(&self, point: &[i64]) -> i128 {
        self.terms
            .iter()
            .map(|(e, &c)| {
                e.iter()
                    .zip(point)
                    .fold(c as i128, |acc, (&k, &x)| acc * (x as i128).pow(k))
            })
            .sum()
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, &c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            let constant = e.iter().all(|&k| k == 0);
            if c.abs() != 1 || constant {
                write!(f, "{}", c.abs())?;
            }
            let mut first = c.abs() == 1;
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                write!(f, "x{}", i + 1)?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// Memoized character polynomials for one root system.
///
/// Safe to share across threads; concurrent computations of the same weight
/// insert identical values.
pub struct CharacterTable<'a> {
    rs: &'a RootSystem,
    cap: u128,
    cache: Mutex<HashMap<Weight, CharPoly>>,
    fundamentals: Vec<OnceLock<Vec<(Weight, u64)>>>,
    fundamental_dims: Vec<u128>,
}

impl<'a> CharacterTable<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        Self::with_cap(rs, DEFAULT_DIMENSION_CAP)
    }

    pub fn with_cap(rs: &'a RootSystem, cap: u128) -> Self {
        let r = rs.rank();
        let fundamental_dims = (1..=r)
            .map(|i| weyl_dim(rs, &Weight::fundamental(r, i)).unwrap_or(u128::MAX))
            .collect();
        CharacterTable {
            rs,
            cap,
            cache: Mutex::new(HashMap::new()),
            fundamentals: (0..r).map(|_| OnceLock::new()).collect(),
            fundamental_dims,
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        self.rs
    }

    pub fn cap(&self) -> u128 {
        self.cap
    }

    fn fundamental_weights(&self, i: usize) -> Result<&[(Weight, u64)]> {
        if self.fundamental_dims[i] > self.cap {
            return Err(Error::DimensionCap {
                weight: Weight::fundamental(self.rs.rank(), i + 1),
                dim: self.fundamental_dims[i],
                cap: self.cap,
            });
        }
        if let Some(w) = self.fundamentals[i].get() {
            return Ok(w);
        }
        let ws = weight_system(self.rs, &Weight::fundamental(self.rs.rank(), i + 1))?;
        Ok(self.fundamentals[i].get_or_init(|| ws))
    }

    /// The polynomial `p` with `p(χ_1, …, χ_r) = χ_λ`.
    ///
    /// Peels one fundamental factor: `χ_{ω_j} χ_{λ-ω_j} = χ_λ + (lower terms)`,
    /// where every lower term is strictly below `λ` in dominance order.
    pub fn get(&self, lambda: &Weight) -> Result<CharPoly> {
        if let Some(p) = self.cache.lock().expect("cache poisoned").get(lambda) {
            return Ok(p.clone());
        }
        let rs = self.rs;
        let r = rs.rank();
        let dim = weyl_dim(rs, lambda)?;
        if dim > self.cap {
            return Err(Error::DimensionCap {
                weight: lambda.clone(),
                dim,
                cap: self.cap,
            });
        }
        let poly = if lambda.is_zero() {
            CharPoly::constant(r, 1)
        } else {
            let j = (0..r)
                .filter(|&i| lambda.0[i] > 0)
                .min_by_key(|&i| (self.fundamental_dims[i], i))
                .expect("nonzero weight");
            let mut rest = lambda.clone();
            rest.0[j] -= 1;
            let product = klimyk(rs, &rest, self.fundamental_weights(j)?);
            debug_assert_eq!(product.coefficient(lambda), 1);
            let mut poly = self.get(&rest)?.mul_var(j);
            for (nu, c) in product.iter() {
                if nu != lambda {
                    poly.add_scaled(&self.get(nu)?, -c);
                }
            }
            poly
        };
        self.cache
            .lock()
            .expect("cache poisoned")
            .insert(lambda.clone(), poly.clone());
        Ok(poly)
    }
}

/// Character polynomial of `V(λ)` with the default dimension cap.
pub fn char_poly(rs: &RootSystem, lambda: &Weight) -> Result<CharPoly> {
    CharacterTable::new(rs).get(lambda)
}
