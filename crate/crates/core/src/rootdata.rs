//! Static root data for the simple Lie algebras.
//!
//! Everything is indexed in the Bourbaki convention. The invariant form is
//! normalized so that long roots have squared length 2, hence `(θ|θ) = 2`,
//! and all form values are exact rationals.
//!
//! Weights are integer vectors in the fundamental-weight basis `ω_i`; roots
//! are integer vectors in the simple-root basis `α_i`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational used for form values.
pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A simple Lie type such as `B3` or `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let bound = match family {
            Family::A if rank < 1 => Some("A_r requires r >= 1"),
            Family::B if rank < 3 => Some("B_r requires r >= 3"),
            Family::C if rank < 2 => Some("C_r requires r >= 2"),
            Family::D if rank < 4 => Some("D_r requires r >= 4"),
            Family::E if !(6..=8).contains(&rank) => Some("E_r requires r in {6, 7, 8}"),
            Family::F if rank != 4 => Some("F_r requires r = 4"),
            Family::G if rank != 2 => Some("G_r requires r = 2"),
            _ => None,
        };
        match bound {
            Some(bound) => Err(Error::InvalidType {
                family: family.letter(),
                rank,
                bound,
            }),
            None => Ok(LieType { family, rank }),
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::ParseType(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::ParseType(s.to_string()))?;
        LieType::new(family, rank)
    }
}

impl Serialize for LieType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LieType {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Integer weight in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight `ω_i`, with `i` counted from 1 as in Bourbaki.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        assert!((1..=rank).contains(&i), "fundamental weight index out of range");
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        Weight(v)
    }

    pub fn rho(rank: usize) -> Self {
        Weight(vec![1; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl Index<usize> for Weight {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::ParseWeight(s.to_string()));
        }
        s.split(',')
            .map(|c| c.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Weight)
            .map_err(|_| Error::ParseWeight(s.to_string()))
    }
}

impl Add for &Weight {
    type Output = Weight;

    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;

    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;

    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;

    fn mul(self, rhs: &Weight) -> Weight {
        Weight(rhs.0.iter().map(|a| self * a).collect())
    }
}

/// Integer vector in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    /// The simple root `α_i`, 1-based.
    pub fn simple(rank: usize, i: usize) -> Self {
        assert!((1..=rank).contains(&i), "simple root index out of range");
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        RootVector(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            first = false;
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "a{}", i + 1)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Either kind of vector the invariant form can be evaluated on.
#[derive(Debug, Clone, Copy)]
pub enum FormArg<'a> {
    Weight(&'a Weight),
    Root(&'a RootVector),
}

impl<'a> From<&'a Weight> for FormArg<'a> {
    fn from(w: &'a Weight) -> Self {
        FormArg::Weight(w)
    }
}

impl<'a> From<&'a RootVector> for FormArg<'a> {
    fn from(r: &'a RootVector) -> Self {
        FormArg::Root(r)
    }
}

/// All static data of one simple Lie type. Immutable once built.
#[derive(Debug, Clone)]
pub struct RootSystem {
    lie_type: LieType,
    /// `cartan[i][j] = α_j(α_i∨)`.
    cartan: Vec<Vec<i64>>,
    /// Squared lengths `(α_i|α_i)`.
    simple_lengths: Vec<Rational>,
    /// `(ω_i|ω_j)`.
    form: Vec<Vec<Rational>>,
    /// Common denominator of `form` and the integer matrix `form_scale * form`.
    form_scale: i64,
    scaled_form: Vec<Vec<i64>>,
    positive_roots: Vec<RootVector>,
    positive_roots_omega: Vec<Weight>,
    /// Coefficients of each positive coroot in the simple-coroot basis.
    positive_coroots: Vec<Vec<i64>>,
    theta: RootVector,
    dual_marks: Vec<i64>,
    dual_coxeter: i64,
    long_root_lattice_basis: Vec<RootVector>,
}

/// Builds the root system of `t`. Shorthand for [`RootSystem::new`].
pub fn build_root_system(t: LieType) -> Result<RootSystem> {
    RootSystem::new(t)
}

impl RootSystem {
    pub fn new(lie_type: LieType) -> Result<Self> {
        let (cartan, simple_lengths) = cartan_data(lie_type);
        let r = lie_type.rank();

        let inverse = invert(&cartan);
        // (ω_i|ω_j) = (A^{-1})_{ji} (α_j|α_j) / 2
        let half = Rational::new(1, 2);
        let form: Vec<Vec<Rational>> = (0..r)
            .map(|i| (0..r).map(|j| inverse[j][i] * simple_lengths[j] * half).collect())
            .collect();
        for i in 0..r {
            for j in 0..i {
                assert_eq!(form[i][j], form[j][i], "form must be symmetric");
            }
        }
        let form_scale = form
            .iter()
            .flatten()
            .fold(1i64, |acc, q| acc.lcm(q.denom()));
        let scaled_form = form
            .iter()
            .map(|row| row.iter().map(|q| (q * form_scale).to_integer()).collect())
            .collect();

        let positive_roots = generate_positive_roots(&cartan);
        let positive_roots_omega = positive_roots
            .iter()
            .map(|a| alpha_to_omega(&cartan, a))
            .collect();
        let gram = |a: &RootVector| -> Rational {
            let mut acc = Rational::zero();
            for i in 0..r {
                for j in 0..r {
                    acc += Rational::from(a.0[i] * a.0[j] * cartan[i][j]) * simple_lengths[i] * half;
                }
            }
            acc
        };
        let positive_coroots = positive_roots
            .iter()
            .map(|a| {
                let len = gram(a);
                (0..r)
                    .map(|i| {
                        let c = Rational::from(a.0[i]) * simple_lengths[i] / len;
                        assert!(c.is_integer());
                        c.to_integer()
                    })
                    .collect()
            })
            .collect();

        let theta = positive_roots
            .iter()
            .max_by_key(|a| a.height())
            .cloned()
            .expect("root system has roots");
        let dual_marks: Vec<i64> = (0..r)
            .map(|i| {
                let c = Rational::from(theta.0[i]) * simple_lengths[i] * half;
                assert!(c.is_integer());
                c.to_integer()
            })
            .collect();
        let dual_coxeter = 1 + dual_marks.iter().sum::<i64>();

        let long: Vec<Vec<i64>> = positive_roots
            .iter()
            .filter(|a| gram(a) == Rational::from(2))
            .map(|a| a.0.clone())
            .collect();
        let long_root_lattice_basis = lattice_basis(&long, r)
            .into_iter()
            .map(RootVector)
            .collect();

        let rs = RootSystem {
            lie_type,
            cartan,
            simple_lengths,
            form,
            form_scale,
            scaled_form,
            positive_roots,
            positive_roots_omega,
            positive_coroots,
            theta,
            dual_marks,
            dual_coxeter,
            long_root_lattice_basis,
        };
        debug_assert_eq!(rs.root_length2(&rs.theta), Rational::from(2));
        Ok(rs)
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_lengths(&self) -> &[Rational] {
        &self.simple_lengths
    }

    /// Matrix of `(ω_i|ω_j)`.
    pub fn form(&self) -> &[Vec<Rational>] {
        &self.form
    }

    /// Smallest positive integer `D` such that `D·(ω_i|ω_j)` is integral.
    pub fn form_scale(&self) -> i64 {
        self.form_scale
    }

    /// Positive roots in the simple-root basis, sorted lexicographically.
    pub fn positive_roots(&self) -> &[RootVector] {
        &self.positive_roots
    }

    /// The same positive roots, expressed in the fundamental-weight basis.
    pub fn positive_roots_omega(&self) -> &[Weight] {
        &self.positive_roots_omega
    }

    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    pub fn theta(&self) -> &RootVector {
        &self.theta
    }

    /// `c` with `θ∨ = Σ c_i α_i∨`.
    pub fn dual_marks(&self) -> &[i64] {
        &self.dual_marks
    }

    pub fn dual_coxeter(&self) -> i64 {
        self.dual_coxeter
    }

    pub fn dim_g(&self) -> u64 {
        (self.rank() + 2 * self.positive_roots.len()) as u64
    }

    pub fn long_root_lattice_basis(&self) -> &[RootVector] {
        &self.long_root_lattice_basis
    }

    pub fn rho(&self) -> Weight {
        Weight::rho(self.rank())
    }

    /// Simple root `α_i` (0-based `i`) in ω-coordinates: column `i` of the Cartan matrix.
    pub fn simple_root_omega(&self, i: usize) -> Weight {
        Weight(self.cartan.iter().map(|row| row[i]).collect())
    }

    pub fn root_to_weight(&self, root: &RootVector) -> Weight {
        alpha_to_omega(&self.cartan, root)
    }

    /// Exact α-coordinates of a weight.
    pub fn weight_to_root_coords(&self, w: &Weight) -> Vec<Rational> {
        let inverse = invert(&self.cartan);
        let r = self.rank();
        (0..r)
            .map(|k| (0..r).map(|j| inverse[k][j] * w.0[j]).sum())
            .collect()
    }

    /// `(α|α)` for a vector in the root lattice.
    pub fn root_length2(&self, root: &RootVector) -> Rational {
        let w = self.root_to_weight(root);
        self.form_weight_root(&w, root)
    }

    pub fn is_long(&self, root: &RootVector) -> bool {
        self.root_length2(root) == Rational::from(2)
    }

    /// `(x|α)` for `x` in ω-coordinates and `α` in α-coordinates.
    fn form_weight_root(&self, x: &Weight, root: &RootVector) -> Rational {
        // (ω_i|α_j) = δ_ij (α_j|α_j)/2
        let half = Rational::new(1, 2);
        (0..self.rank())
            .map(|j| Rational::from(x.0[j] * root.0[j]) * self.simple_lengths[j] * half)
            .sum()
    }

    /// The normalized invariant form on weights and roots.
    pub fn inner_product<'a, 'b>(
        &self,
        x: impl Into<FormArg<'a>>,
        y: impl Into<FormArg<'b>>,
    ) -> Result<Rational> {
        let (x, y) = (x.into(), y.into());
        let r = self.rank();
        for len in [arg_len(&x), arg_len(&y)] {
            if len != r {
                return Err(Error::RankMismatch {
                    expected: r,
                    found: len,
                });
            }
        }
        Ok(match (x, y) {
            (FormArg::Weight(a), FormArg::Weight(b)) => {
                Rational::new(self.scaled_inner(&a.0, &b.0), self.form_scale)
            }
            (FormArg::Weight(a), FormArg::Root(b)) | (FormArg::Root(b), FormArg::Weight(a)) => {
                self.form_weight_root(a, b)
            }
            (FormArg::Root(a), FormArg::Root(b)) => {
                self.form_weight_root(&self.root_to_weight(a), b)
            }
        })
    }

    /// `D·(x|y)` for ω-coordinate vectors, where `D` is [`Self::form_scale`].
    pub fn scaled_inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut acc = 0;
        for (i, row) in self.scaled_form.iter().enumerate() {
            if x[i] == 0 {
                continue;
            }
            let dot: i64 = row.iter().zip(y).map(|(g, b)| g * b).sum();
            acc += x[i] * dot;
        }
        acc
    }

    /// `λ(θ∨) = Σ c_i λ_i`.
    pub fn theta_pairing(&self, w: &Weight) -> i64 {
        self.dual_marks.iter().zip(&w.0).map(|(c, x)| c * x).sum()
    }

    /// `x(α∨)` for the positive root with index `k`.
    pub fn coroot_pairing(&self, x: &Weight, k: usize) -> i64 {
        self.positive_coroots[k]
            .iter()
            .zip(&x.0)
            .map(|(c, v)| c * v)
            .sum()
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: self.rank(),
                found: w.rank(),
            })
        }
    }

    pub fn check_dominant(&self, w: &Weight) -> Result<()> {
        self.check_rank(w)?;
        if w.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(w.clone()))
        }
    }

    /// Whether `v` lies in the lattice spanned by the long roots.
    pub fn in_long_root_lattice(&self, v: &RootVector) -> bool {
        let mut rest = v.0.clone();
        for b in &self.long_root_lattice_basis {
            let Some(col) = b.0.iter().position(|&c| c != 0) else {
                continue;
            };
            if rest[col] % b.0[col] != 0 {
                return false;
            }
            let q = rest[col] / b.0[col];
            for (x, y) in rest.iter_mut().zip(&b.0) {
                *x -= q * y;
            }
        }
        rest.iter().all(|&c| c == 0)
    }
}

fn arg_len(x: &FormArg<'_>) -> usize {
    match x {
        FormArg::Weight(w) => w.rank(),
        FormArg::Root(r) => r.0.len(),
    }
}

fn alpha_to_omega(cartan: &[Vec<i64>], root: &RootVector) -> Weight {
    // α_j = Σ_k a_kj ω_k
    Weight(
        cartan
            .iter()
            .map(|row| row.iter().zip(&root.0).map(|(a, b)| a * b).sum())
            .collect(),
    )
}

const E6: [[i64; 6]; 6] = [
    [2, 0, -1, 0, 0, 0],
    [0, 2, 0, -1, 0, 0],
    [-1, 0, 2, -1, 0, 0],
    [0, -1, -1, 2, -1, 0],
    [0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, -1, 2],
];

const E7: [[i64; 7]; 7] = [
    [2, 0, -1, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0],
    [0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, -1, 2],
];

const E8: [[i64; 8]; 8] = [
    [2, 0, -1, 0, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, 0, -1, 2],
];

/// Cartan matrix and squared simple-root lengths (long roots have length 2).
fn cartan_data(t: LieType) -> (Vec<Vec<i64>>, Vec<Rational>) {
    let r = t.rank();
    let two = Rational::from(2);
    let one = Rational::from(1);
    let chain = |n: usize| -> Vec<(usize, usize)> { (1..n).map(|i| (i - 1, i)).collect() };
    let (lengths, edges): (Vec<Rational>, Vec<(usize, usize)>) = match t.family() {
        Family::A => (vec![two; r], chain(r)),
        Family::B => {
            let mut l = vec![two; r];
            l[r - 1] = one;
            (l, chain(r))
        }
        Family::C => {
            let mut l = vec![one; r];
            l[r - 1] = two;
            (l, chain(r))
        }
        Family::D => {
            let mut e = chain(r - 1);
            e.push((r - 3, r - 1));
            (vec![two; r], e)
        }
        Family::F => (vec![two, two, one, one], chain(4)),
        Family::G => (vec![Rational::new(2, 3), two], chain(2)),
        Family::E => {
            let rows: Vec<Vec<i64>> = match r {
                6 => E6.iter().map(|row| row.to_vec()).collect(),
                7 => E7.iter().map(|row| row.to_vec()).collect(),
                _ => E8.iter().map(|row| row.to_vec()).collect(),
            };
            return (rows, vec![two; r]);
        }
    };
    // Adjacent simple roots satisfy (α_i|α_j) = -max(|α_i|², |α_j|²)/2,
    // and a_ij = 2(α_i|α_j)/(α_i|α_i).
    let mut cartan = vec![vec![0i64; r]; r];
    for (i, row) in cartan.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j) in &edges {
        let b = -std::cmp::max(lengths[i], lengths[j]) / two;
        cartan[i][j] = (two * b / lengths[i]).to_integer();
        cartan[j][i] = (two * b / lengths[j]).to_integer();
    }
    (cartan, lengths)
}

/// Exact inverse of a nonsingular integer matrix.
fn invert(m: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| Rational::from(x)).collect();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrix is nonsingular");
        a.swap(col, pivot);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..2 * n {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Positive roots by closure over simple-root strings.
///
/// For a positive root `β ≠ α_i` with α_i-string `β - pα_i, ..., β + qα_i`,
/// `p - q = β(α_i∨)`; since every root of lower height is already known, `p`
/// is available and `β + α_i` is a root iff `q > 0`.
fn generate_positive_roots(cartan: &[Vec<i64>]) -> Vec<RootVector> {
    let r = cartan.len();
    let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut layer: Vec<Vec<i64>> = (1..=r).map(|i| RootVector::simple(r, i).0).collect();
    while !layer.is_empty() {
        all.extend(layer.iter().cloned());
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..r {
                let is_simple_i = beta.iter().enumerate().all(|(j, &c)| c == (j == i) as i64);
                if is_simple_i {
                    continue;
                }
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if down[i] >= 0 && all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..r).map(|j| cartan[i][j] * beta[j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        layer = next.into_iter().collect();
    }
    all.into_iter().map(RootVector).collect()
}

/// Echelon basis of the integer lattice spanned by `vectors`.
fn lattice_basis(vectors: &[Vec<i64>], dim: usize) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = vectors.to_vec();
    let mut basis = Vec::new();
    for col in 0..dim {
        loop {
            let nonzero: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let pivot = *nonzero
                .iter()
                .min_by_key(|&&i| rows[i][col].abs())
                .expect("nonempty");
            let prow = rows[pivot].clone();
            for &i in &nonzero {
                if i != pivot {
                    let q = Integer::div_floor(&rows[i][col], &prow[col]);
                    for (x, y) in rows[i].iter_mut().zip(&prow) {
                        *x -= q * y;
                    }
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| rows[i][col] != 0) {
            let mut row = rows.swap_remove(i);
            if row[col] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
            basis.push(row);
        }
        rows.retain(|r| r.iter().any(|&x| x != 0));
    }
    basis
}

/// Visits every weight reachable from `start` by `step`, once each.
pub(crate) fn closure<F>(start: Weight, mut step: F) -> Vec<Weight>
where
    F: FnMut(&Weight) -> Vec<Weight>,
{
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([start.clone()]);
    seen.insert(start);
    while let Some(w) = queue.pop_front() {
        for n in step(&w) {
            if seen.insert(n.clone()) {
                queue.push_back(n);
            }
        }
    }
    seen.into_iter().collect()
}
