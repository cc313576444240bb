//! The level-`ℓ` fusion ring: the alcove weights `P_ℓ`, fusion coefficients
//! by two independent methods, the modular `S`-matrix and the fusion points.
//!
//! Kac–Walton: decompose `V(λ)⊗V(μ)` and push every summand through `β`.
//! Verlinde: `N_{λμ}^ν = Σ_σ S_{λσ} S_{μσ} conj(S_{νσ}) / S_{0σ}` with
//! `S_{λσ} ∝ Σ_w ε(w) exp(-2πi (w(λ+ρ)|σ+ρ)/(ℓ+ȟ))`.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::TAU;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::affine::{beta_fold, FoldOutcome};
use crate::error::{Error, Result};
use crate::repring::{tensor_decompose, RepElement};
use crate::rootdata::{LieType, RootSystem, Weight};
use crate::weyl::signed_orbit;

/// Largest rank for which `S`-matrices and fusion points are computed.
pub const S_MATRIX_RANK_CAP: usize = 4;

/// Largest allowed distance of a Verlinde sum from its rounded value.
pub const INTEGRALITY_TOLERANCE: f64 = 1e-6;

/// A root system together with a level and the weights `P_ℓ`.
#[derive(Debug, Clone)]
pub struct LevelContext {
    rs: Arc<RootSystem>,
    level: u32,
    plevel: Vec<Weight>,
    index: HashMap<Weight, usize>,
}

impl LevelContext {
    pub fn new(rs: Arc<RootSystem>, level: u32) -> Result<Self> {
        if level == 0 {
            return Err(Error::ZeroLevel);
        }
        let mut plevel = Vec::new();
        let mut current = Weight::zero(rs.rank());
        enumerate_into(rs.dual_marks(), 0, level as i64, &mut current, &mut plevel);
        let index = plevel.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Ok(LevelContext {
            rs,
            level,
            plevel,
            index,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn shared_root_system(&self) -> Arc<RootSystem> {
        Arc::clone(&self.rs)
    }

    pub fn lie_type(&self) -> LieType {
        self.rs.lie_type()
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `ℓ + ȟ`.
    pub fn shifted_level(&self) -> i64 {
        self.level as i64 + self.rs.dual_coxeter()
    }

    /// `P_ℓ` in lexicographic order.
    pub fn plevel(&self) -> &[Weight] {
        &self.plevel
    }

    pub fn len(&self) -> usize {
        self.plevel.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plevel.is_empty()
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Position of `w` in `P_ℓ`, or the reason it is not there.
    pub fn check_member(&self, w: &Weight) -> Result<usize> {
        self.rs.check_dominant(w)?;
        self.index_of(w).ok_or_else(|| Error::OutsideLevel {
            weight: w.clone(),
            level: self.level,
            pairing: self.rs.theta_pairing(w),
        })
    }
}

fn enumerate_into(marks: &[i64], i: usize, budget: i64, current: &mut Weight, out: &mut Vec<Weight>) {
    if i == marks.len() {
        out.push(current.clone());
        return;
    }
    for v in 0..=budget / marks[i] {
        current.0[i] = v;
        enumerate_into(marks, i + 1, budget - v * marks[i], current, out);
    }
    current.0[i] = 0;
}

/// `P_ℓ = {λ dominant : λ(θ∨) ≤ ℓ}`, ordered lexicographically.
pub fn enumerate_plevel(rs: Arc<RootSystem>, level: u32) -> Result<LevelContext> {
    LevelContext::new(rs, level)
}

/// `β` applied term by term to a virtual representation.
pub fn beta_element(ctx: &LevelContext, x: &RepElement) -> Result<RepElement> {
    let mut out = RepElement::new();
    for (w, c) in x.iter() {
        if let FoldOutcome::Nonzero { sign, weight } = beta_fold(ctx.root_system(), w, ctx.level)? {
            out.add(weight, sign as i64 * c);
        }
    }
    Ok(out)
}

fn into_coefficients(x: RepElement, lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, u64>> {
    x.into_map()
        .into_iter()
        .map(|(nu, c)| {
            if c < 0 {
                Err(Error::NegativeFusion {
                    lambda: lambda.clone(),
                    mu: mu.clone(),
                    nu,
                    value: c,
                })
            } else {
                Ok((nu, c as u64))
            }
        })
        .collect()
}

/// `V(λ) ⊗_F V(μ)` by folding the tensor product decomposition.
pub fn fusion_kacwalton(ctx: &LevelContext, lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, u64>> {
    ctx.check_member(lambda)?;
    ctx.check_member(mu)?;
    let product = tensor_decompose(ctx.root_system(), lambda, mu)?;
    into_coefficients(beta_element(ctx, &product)?, lambda, mu)
}

/// `Σ ε e^{-2πi (x|y)/k}` over a signed orbit, phases reduced exactly mod `k`.
fn orbit_sum(rs: &RootSystem, orbit: &[(Weight, i8)], y: &[i64], k: i64) -> Complex64 {
    let modulus = rs.form_scale() * k;
    orbit
        .iter()
        .map(|(x, s)| {
            let p = rs.scaled_inner(&x.0, y).rem_euclid(modulus);
            Complex64::from_polar(*s as f64, -TAU * p as f64 / modulus as f64)
        })
        .sum()
}

fn check_rank_cap(ctx: &LevelContext, what: &'static str) -> Result<()> {
    if ctx.root_system().rank() > S_MATRIX_RANK_CAP {
        return Err(Error::RankCap {
            what,
            lie_type: ctx.lie_type(),
            cap: S_MATRIX_RANK_CAP,
        });
    }
    Ok(())
}

/// The modular `S`-matrix, indexed by `P_ℓ` in context order.
#[derive(Debug, Clone)]
pub struct SMatrix {
    ctx: LevelContext,
    matrix: DMatrix<Complex64>,
}

impl SMatrix {
    pub fn context(&self) -> &LevelContext {
        &self.ctx
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }

    /// `max |(S S†)_{ij} - δ_{ij}|`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.matrix.nrows();
        let p = &self.matrix * self.matrix.adjoint();
        let id = DMatrix::<Complex64>::identity(n, n);
        (p - id).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |S_{ij} - S_{ji}|`.
    pub fn symmetry_defect(&self) -> f64 {
        (&self.matrix - self.matrix.transpose())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// Kac–Peterson `S`-matrix, normalized so it is unitary with positive first row.
pub fn s_matrix(ctx: &LevelContext) -> Result<SMatrix> {
    check_rank_cap(ctx, "S-matrix")?;
    let rs = ctx.root_system();
    let rho = rs.rho();
    let k = ctx.shifted_level();
    let shifted: Vec<Weight> = ctx.plevel().iter().map(|s| s + &rho).collect();
    let rows: Vec<Vec<Complex64>> = shifted
        .par_iter()
        .map(|x| {
            let orbit = signed_orbit(rs, x).expect("λ+ρ is regular dominant");
            shifted.iter().map(|y| orbit_sum(rs, &orbit, &y.0, k)).collect()
        })
        .collect();
    let n = rows.len();
    let norm0 = rows[0].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    // S_{00} > 0 after removing its phase; the rest of row 0 follows
    let factor = (rows[0][0] / rows[0][0].norm()).conj() / norm0;
    let matrix = DMatrix::from_fn(n, n, |i, j| rows[i][j] * factor);
    Ok(SMatrix {
        ctx: ctx.clone(),
        matrix,
    })
}

/// `V(λ) ⊗_F V(μ)` from the Verlinde formula, rounded to integers.
pub fn fusion_verlinde(s: &SMatrix, lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, u64>> {
    let ctx = &s.ctx;
    let i = ctx.check_member(lambda)?;
    let j = ctx.check_member(mu)?;
    let n = ctx.len();
    let weights: Vec<Complex64> = (0..n).map(|t| s.get(i, t) * s.get(j, t) / s.get(0, t)).collect();
    let mut out = BTreeMap::new();
    for (m, nu) in ctx.plevel().iter().enumerate() {
        let v: Complex64 = (0..n).map(|t| weights[t] * s.get(m, t).conj()).sum();
        let r = v.re.round();
        if (v - Complex64::new(r, 0.0)).norm() > INTEGRALITY_TOLERANCE {
            return Err(Error::NonIntegralVerlinde {
                lambda: lambda.clone(),
                mu: mu.clone(),
                nu: nu.clone(),
                re: v.re,
                im: v.im,
                tol: INTEGRALITY_TOLERANCE,
            });
        }
        let r = r as i64;
        if r < 0 {
            return Err(Error::NegativeFusion {
                lambda: lambda.clone(),
                mu: mu.clone(),
                nu: nu.clone(),
                value: r,
            });
        }
        if r > 0 {
            out.insert(nu.clone(), r as u64);
        }
    }
    Ok(out)
}

/// How a [`FusionTable`] was computed. `Both` means the two methods were
/// run and agreed entrywise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FusionMethod {
    KacWalton,
    Verlinde,
    Both,
}

/// All fusion coefficients at one level.
///
/// `coefficients[i][j][n] = N_{λ_i μ_j}^{ν_n}` with indices into `P_ℓ`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(into = "FusionTableWire", try_from = "FusionTableWire")]
pub struct FusionTable {
    ctx: LevelContext,
    method: FusionMethod,
    coefficients: Vec<Vec<Vec<u64>>>,
}

#[derive(Serialize, Deserialize)]
struct FusionTableWire {
    lie_type: LieType,
    level: u32,
    method: FusionMethod,
    plevel: Vec<Weight>,
    coefficients: Vec<Vec<Vec<u64>>>,
}

impl From<FusionTable> for FusionTableWire {
    fn from(t: FusionTable) -> Self {
        FusionTableWire {
            lie_type: t.ctx.lie_type(),
            level: t.ctx.level,
            method: t.method,
            plevel: t.ctx.plevel.clone(),
            coefficients: t.coefficients,
        }
    }
}

impl TryFrom<FusionTableWire> for FusionTable {
    type Error = Error;

    fn try_from(w: FusionTableWire) -> Result<Self> {
        let ctx = LevelContext::new(Arc::new(RootSystem::new(w.lie_type)?), w.level)?;
        if w.plevel != ctx.plevel {
            return Err(Error::MalformedTable("weight list does not match P_ℓ".into()));
        }
        let n = ctx.len();
        let square = w.coefficients.len() == n
            && w.coefficients.iter().all(|row| row.len() == n && row.iter().all(|c| c.len() == n));
        if !square {
            return Err(Error::MalformedTable(format!("expected a {n}x{n}x{n} array")));
        }
        Ok(FusionTable {
            ctx,
            method: w.method,
            coefficients: w.coefficients,
        })
    }
}

impl PartialEq for FusionTable {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.lie_type() == other.ctx.lie_type()
            && self.ctx.level == other.ctx.level
            && self.method == other.method
            && self.coefficients == other.coefficients
    }
}

fn dense_rows(
    ctx: &LevelContext,
    f: impl Fn(&Weight, &Weight) -> Result<BTreeMap<Weight, u64>> + Sync,
) -> Result<Vec<Vec<Vec<u64>>>> {
    let n = ctx.len();
    ctx.plevel()
        .par_iter()
        .map(|a| {
            ctx.plevel()
                .iter()
                .map(|b| {
                    let mut row = vec![0; n];
                    for (nu, c) in f(a, b)? {
                        row[ctx.index_of(&nu).expect("fusion output lies in P_ℓ")] = c;
                    }
                    Ok(row)
                })
                .collect()
        })
        .collect()
}

impl FusionTable {
    pub fn build(ctx: &LevelContext, method: FusionMethod) -> Result<Self> {
        let kac_walton = || dense_rows(ctx, |a, b| fusion_kacwalton(ctx, a, b));
        let verlinde = || -> Result<_> {
            let s = s_matrix(ctx)?;
            dense_rows(ctx, |a, b| fusion_verlinde(&s, a, b))
        };
        let coefficients = match method {
            FusionMethod::KacWalton => kac_walton()?,
            FusionMethod::Verlinde => verlinde()?,
            FusionMethod::Both => {
                let (kw, v) = (kac_walton()?, verlinde()?);
                let p = ctx.plevel();
                for (i, (kw_i, v_i)) in kw.iter().zip(&v).enumerate() {
                    for (j, (kw_ij, v_ij)) in kw_i.iter().zip(v_i).enumerate() {
                        if let Some(n) = (0..p.len()).find(|&n| kw_ij[n] != v_ij[n]) {
                            return Err(Error::MethodMismatch {
                                lambda: p[i].clone(),
                                mu: p[j].clone(),
                                nu: p[n].clone(),
                                kac_walton: kw_ij[n],
                                verlinde: v_ij[n],
                            });
                        }
                    }
                }
                kw
            }
        };
        Ok(FusionTable {
            ctx: ctx.clone(),
            method,
            coefficients,
        })
    }

    pub fn context(&self) -> &LevelContext {
        &self.ctx
    }

    pub fn method(&self) -> FusionMethod {
        self.method
    }

    pub fn coefficients(&self) -> &[Vec<Vec<u64>>] {
        &self.coefficients
    }

    /// `N_{λμ}^ν`, or `None` if a weight is outside `P_ℓ`.
    pub fn coefficient(&self, lambda: &Weight, mu: &Weight, nu: &Weight) -> Option<u64> {
        let c = &self.ctx;
        Some(self.coefficients[c.index_of(lambda)?][c.index_of(mu)?][c.index_of(nu)?])
    }

    pub fn product(&self, lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, u64>> {
        let i = self.ctx.check_member(lambda)?;
        let j = self.ctx.check_member(mu)?;
        Ok(self.coefficients[i][j]
            .iter()
            .zip(self.ctx.plevel())
            .filter(|(&c, _)| c > 0)
            .map(|(&c, nu)| (nu.clone(), c))
            .collect())
    }

    /// Bilinear extension of `⊗_F` to virtual combinations of `P_ℓ` weights.
    pub fn multiply(&self, a: &RepElement, b: &RepElement) -> Result<RepElement> {
        let mut out = RepElement::new();
        for (x, c) in a.iter() {
            for (y, d) in b.iter() {
                for (nu, n) in self.product(x, y)? {
                    out.add(nu, c * d * n as i64);
                }
            }
        }
        Ok(out)
    }

    /// Nonzero entries `(λ, μ, ν, N)` in index order.
    pub fn entries(&self) -> impl Iterator<Item = (&Weight, &Weight, &Weight, u64)> {
        let p = self.ctx.plevel();
        self.coefficients.iter().enumerate().flat_map(move |(i, row)| {
            row.iter().enumerate().flat_map(move |(j, col)| {
                col.iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .map(move |(n, &c)| (&p[i], &p[j], &p[n], c))
            })
        })
    }
}

/// A point of `T_ℓ^reg/W`, labelled by `σ ∈ P_ℓ`.
///
/// `coords[i] = χ_{ω_i}(t_σ)`; `phases` locate `t_σ` for
/// [`crate::repring::eval_char_numeric`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FusionPoint {
    pub label: Weight,
    pub coords: Vec<Complex64>,
    pub phases: Vec<f64>,
}

/// One fusion point per `σ ∈ P_ℓ`, with `χ_i = S_{ω_i σ}/S_{0σ}`.
///
/// The ratio is taken of the unnormalized alternating sums, so it is defined
/// even when `ω_i ∉ P_ℓ`.
pub fn fusion_points(ctx: &LevelContext) -> Result<Vec<FusionPoint>> {
    check_rank_cap(ctx, "fusion points")?;
    let rs = ctx.root_system();
    let r = rs.rank();
    let rho = rs.rho();
    let k = ctx.shifted_level();
    let modulus = (rs.form_scale() * k) as f64;
    let den_orbit = signed_orbit(rs, &rho).expect("ρ is regular");
    let orbits: Vec<_> = (1..=r)
        .map(|i| signed_orbit(rs, &(&Weight::fundamental(r, i) + &rho)).expect("regular"))
        .collect();
    Ok(ctx
        .plevel()
        .par_iter()
        .map(|sigma| {
            let y = sigma + &rho;
            let den = orbit_sum(rs, &den_orbit, &y.0, k);
            let coords = orbits.iter().map(|o| orbit_sum(rs, o, &y.0, k) / den).collect();
            let phases = (1..=r)
                .map(|i| -(rs.scaled_inner(&Weight::fundamental(r, i).0, &y.0) as f64) / modulus)
                .collect();
            FusionPoint {
                label: sigma.clone(),
                coords,
                phases,
            }
        })
        .collect())
}

/// Closed-form `sl₂` fusion rule: `V(a) ⊗_F V(b)` at level `ℓ`, as `c ↦ 1`.
pub fn sl2_fusion_oracle(a: u32, b: u32, level: u32) -> Result<BTreeMap<u32, u64>> {
    if level == 0 {
        return Err(Error::ZeroLevel);
    }
    if a > level || b > level {
        return Err(Error::OutOfRange(format!(
            "sl2 fusion needs 0 <= a, b <= {level}, got a = {a}, b = {b}"
        )));
    }
    let upper = (a + b).min(2 * level - a - b);
    Ok((a.abs_diff(b)..=upper).step_by(2).map(|c| (c, 1)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repring::{char_poly, eval_char_numeric, weyl_dim, CharacterTable};
    use proptest::prelude::*;

    fn ctx(t: &str, level: u32) -> LevelContext {
        let rs = Arc::new(RootSystem::new(t.parse().unwrap()).unwrap());
        enumerate_plevel(rs, level).unwrap()
    }

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    fn map(items: &[(&[i64], u64)]) -> BTreeMap<Weight, u64> {
        items.iter().map(|(v, c)| (w(v), *c)).collect()
    }

    #[test]
    fn plevel_examples() {
        assert_eq!(ctx("A1", 2).plevel(), &[w(&[0]), w(&[1]), w(&[2])]);
        assert_eq!(ctx("G2", 1).plevel(), &[w(&[0, 0]), w(&[1, 0])]);
        assert_eq!(ctx("B3", 1).plevel(), &[w(&[0, 0, 0]), w(&[0, 0, 1]), w(&[1, 0, 0])]);
        assert_eq!(ctx("G2", 2).len(), 4);
        assert_eq!(ctx("G2", 3).len(), 6);
        assert!(matches!(
            enumerate_plevel(ctx("A1", 1).shared_root_system(), 0),
            Err(Error::ZeroLevel)
        ));
    }

    /// Box enumeration filtered by the θ-pairing gives the same sorted set.
    #[test]
    fn plevel_matches_box_filter() {
        for (t, level) in [("A3", 3), ("B4", 2), ("C3", 3), ("D5", 2), ("F4", 3), ("E6", 2)] {
            let c = ctx(t, level);
            let rs = c.root_system();
            let r = rs.rank();
            let mut expect = Vec::new();
            let total = (level as usize + 1).pow(r as u32);
            for code in 0..total {
                let mut x = code;
                let coords: Vec<i64> = (0..r)
                    .map(|_| {
                        let d = (x % (level as usize + 1)) as i64;
                        x /= level as usize + 1;
                        d
                    })
                    .collect();
                let wt = Weight(coords);
                if rs.theta_pairing(&wt) <= level as i64 {
                    expect.push(wt);
                }
            }
            expect.sort();
            assert_eq!(c.plevel(), expect.as_slice(), "{t}");
        }
    }

    #[test]
    fn kac_walton_examples() {
        let c = ctx("A1", 1);
        assert_eq!(fusion_kacwalton(&c, &w(&[1]), &w(&[1])).unwrap(), map(&[(&[0], 1)]));
        assert_eq!(fusion_kacwalton(&c, &w(&[0]), &w(&[1])).unwrap(), map(&[(&[1], 1)]));
        let c = ctx("A1", 2);
        assert_eq!(
            fusion_kacwalton(&c, &w(&[1]), &w(&[1])).unwrap(),
            map(&[(&[0], 1), (&[2], 1)])
        );
        assert!(matches!(
            fusion_kacwalton(&c, &w(&[3]), &w(&[1])),
            Err(Error::OutsideLevel { pairing: 3, .. })
        ));
        let c = ctx("G2", 1);
        assert_eq!(
            fusion_kacwalton(&c, &w(&[1, 0]), &w(&[1, 0])).unwrap(),
            map(&[(&[0, 0], 1), (&[1, 0], 1)])
        );
    }

    #[test]
    fn sl2_s_matrix_closed_form() {
        for level in 1..6u32 {
            let c = ctx("A1", level);
            let s = s_matrix(&c).unwrap();
            let k = (level + 2) as f64;
            let norm = (2.0 / k).sqrt();
            for a in 0..=level as usize {
                for b in 0..=level as usize {
                    let expect = norm * (std::f64::consts::PI * ((a + 1) * (b + 1)) as f64 / k).sin();
                    assert!((s.get(a, b) - Complex64::new(expect, 0.0)).norm() < 1e-12);
                }
            }
        }
        let s = s_matrix(&ctx("A1", 1)).unwrap();
        for b in 0..2 {
            let ratio = s.get(1, b) / s.get(0, b);
            let expect = 2.0 * (std::f64::consts::PI * (b + 1) as f64 / 3.0).cos();
            assert!((ratio.re - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn s_matrix_contract() {
        for (t, levels) in [
            ("A2", 1..=3),
            ("A3", 1..=2),
            ("B3", 1..=2),
            ("C2", 1..=3),
            ("D4", 1..=2),
            ("G2", 1..=3),
            ("F4", 1..=2),
        ] {
            for level in levels {
                let s = s_matrix(&ctx(t, level)).unwrap();
                assert!(s.unitarity_defect() < 1e-9, "{t} {level}");
                assert!(s.symmetry_defect() < 1e-9, "{t} {level}");
                for j in 0..s.context().len() {
                    let z = s.get(0, j);
                    assert!(z.re > 0.0 && z.im.abs() < 1e-12, "{t} {level}: S_0{j} = {z}");
                }
            }
        }
        assert!(matches!(s_matrix(&ctx("E6", 1)), Err(Error::RankCap { .. })));
    }

    #[test]
    fn verlinde_examples() {
        let s = s_matrix(&ctx("G2", 1)).unwrap();
        assert_eq!(
            fusion_verlinde(&s, &w(&[1, 0]), &w(&[1, 0])).unwrap(),
            map(&[(&[0, 0], 1), (&[1, 0], 1)])
        );
        let c = ctx("B3", 2);
        let s = s_matrix(&c).unwrap();
        for mu in c.plevel() {
            let row = fusion_verlinde(&s, &Weight::zero(3), mu).unwrap();
            assert_eq!(row, [(mu.clone(), 1)].into_iter().collect());
        }
    }

    #[test]
    fn methods_agree_on_small_cases() {
        for (t, max_level) in [("A1", 10), ("A2", 3), ("C2", 3), ("G2", 3), ("B3", 2)] {
            for level in 1..=max_level {
                let c = ctx(t, level);
                FusionTable::build(&c, FusionMethod::Both).unwrap();
            }
        }
    }

    #[test]
    fn table_invariants() {
        for (t, level) in [("A2", 3), ("B3", 2), ("G2", 3), ("C3", 2)] {
            let c = ctx(t, level);
            let rs = c.root_system();
            let table = FusionTable::build(&c, FusionMethod::KacWalton).unwrap();
            let p = c.plevel();
            for (i, a) in p.iter().enumerate() {
                assert_eq!(table.product(&p[0], a).unwrap(), [(a.clone(), 1)].into_iter().collect());
                for (j, b) in p.iter().enumerate() {
                    assert_eq!(table.coefficients()[i][j], table.coefficients()[j][i]);
                    // n ≤ m
                    let m = tensor_decompose(rs, a, b).unwrap();
                    for (nu, n) in table.product(a, b).unwrap() {
                        assert!(n as i64 <= m.coefficient(&nu), "{t} {a} {b} {nu}");
                    }
                }
            }
        }
    }

    #[test]
    fn associativity() {
        for t in ["A1", "A2", "G2"] {
            for level in 1..=3 {
                let c = ctx(t, level);
                let table = FusionTable::build(&c, FusionMethod::KacWalton).unwrap();
                let p = c.plevel();
                for a in p {
                    for b in p {
                        for d in p {
                            let ab = table.multiply(&RepElement::irreducible(a.clone()), &RepElement::irreducible(b.clone())).unwrap();
                            let bd = table.multiply(&RepElement::irreducible(b.clone()), &RepElement::irreducible(d.clone())).unwrap();
                            let left = table.multiply(&ab, &RepElement::irreducible(d.clone())).unwrap();
                            let right = table.multiply(&RepElement::irreducible(a.clone()), &bd).unwrap();
                            assert_eq!(left, right, "{t} {level}: {a} {b} {d}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn level_stabilization() {
        let rs = Arc::new(RootSystem::new("B3".parse().unwrap()).unwrap());
        let (a, b) = (w(&[1, 0, 1]), w(&[0, 1, 0]));
        let stable = (rs.theta_pairing(&a) + rs.theta_pairing(&b)) as u32;
        let m = tensor_decompose(&rs, &a, &b).unwrap();
        for level in stable..stable + 2 {
            let c = enumerate_plevel(Arc::clone(&rs), level).unwrap();
            let n = fusion_kacwalton(&c, &a, &b).unwrap();
            let as_element: BTreeMap<Weight, i64> = n.into_iter().map(|(k, v)| (k, v as i64)).collect();
            assert_eq!(as_element, m.clone().into_map());
        }
    }

    /// Direct transcription of the truncation rule: decompose `V(a)⊗V(b)` by
    /// peeling highest weights off the weight multiset, then drop every
    /// isotypic component `V(c)` with `a + b + c > 2ℓ`.
    fn sl2_truncation(a: u32, b: u32, level: u32) -> BTreeMap<u32, u64> {
        let mut weights: BTreeMap<i64, i64> = BTreeMap::new();
        for p in 0..=a as i64 {
            for q in 0..=b as i64 {
                *weights.entry((a as i64 - 2 * p) + (b as i64 - 2 * q)).or_default() += 1;
            }
        }
        let mut out = BTreeMap::new();
        while let Some((&top, _)) = weights.iter().rev().find(|(_, &m)| m > 0) {
            for x in (-top..=top).step_by(2) {
                *weights.get_mut(&x).unwrap() -= 1;
            }
            if a + b + top as u32 <= 2 * level {
                *out.entry(top as u32).or_default() += 1;
            }
        }
        out
    }

    #[test]
    fn sl2_oracle() {
        assert_eq!(sl2_fusion_oracle(0, 3, 5).unwrap(), [(3, 1)].into_iter().collect());
        assert_eq!(sl2_fusion_oracle(1, 1, 1).unwrap(), [(0, 1)].into_iter().collect());
        assert_eq!(sl2_fusion_oracle(4, 4, 4).unwrap(), [(0, 1)].into_iter().collect());
        assert!(sl2_fusion_oracle(2, 0, 1).is_err());
        for level in 1..=10 {
            let c = ctx("A1", level);
            let table = FusionTable::build(&c, FusionMethod::KacWalton).unwrap();
            for a in 0..=level {
                for b in 0..=level {
                    let closed = sl2_fusion_oracle(a, b, level).unwrap();
                    assert_eq!(closed, sl2_truncation(a, b, level), "{a} {b} {level}");
                    let from_table: BTreeMap<u32, u64> = table
                        .product(&w(&[a as i64]), &w(&[b as i64]))
                        .unwrap()
                        .into_iter()
                        .map(|(nu, n)| (nu.0[0] as u32, n))
                        .collect();
                    assert_eq!(from_table, closed);
                }
            }
        }
    }

    #[test]
    fn fusion_point_examples() {
        let c = ctx("A1", 1);
        let pts = fusion_points(&c).unwrap();
        assert_eq!(pts.len(), 2);
        assert!((pts[0].coords[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((pts[1].coords[0] - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        let gen = char_poly(c.root_system(), &w(&[2])).unwrap();
        for p in &pts {
            assert!(gen.eval(&p.coords).norm() < 1e-12);
        }
    }

    /// Characters evaluated at a fusion point agree three ways: polynomial in
    /// the coordinates, direct Weyl formula at the phases, and `S`-ratios.
    #[test]
    fn fusion_points_are_character_values() {
        for (t, level) in [("A2", 2), ("B3", 1), ("C2", 2), ("G2", 2), ("D4", 1), ("F4", 1)] {
            let c = ctx(t, level);
            let rs = c.root_system();
            let r = rs.rank();
            let s = s_matrix(&c).unwrap();
            let pts = fusion_points(&c).unwrap();
            assert_eq!(pts.len(), c.len());
            let table = CharacterTable::new(rs);
            for (j, p) in pts.iter().enumerate() {
                assert_eq!(&p.label, &c.plevel()[j]);
                for i in 1..=r {
                    let direct = eval_char_numeric(rs, &Weight::fundamental(r, i), &p.phases).unwrap();
                    assert!((direct - p.coords[i - 1]).norm() < 1e-9, "{t}: {direct} vs {}", p.coords[i - 1]);
                }
                for (m, lambda) in c.plevel().iter().enumerate() {
                    if weyl_dim(rs, lambda).unwrap() > 100_000 {
                        continue;
                    }
                    let v = table.get(lambda).unwrap().eval(&p.coords);
                    let ratio = s.get(m, j) / s.get(0, j);
                    assert!((v - ratio).norm() < 1e-6, "{t} {lambda} at {}: {v} vs {ratio}", p.label);
                }
            }
        }
    }

    #[test]
    fn serde_round_trip() {
        let c = ctx("G2", 2);
        let table = FusionTable::build(&c, FusionMethod::Both).unwrap();
        let json = serde_json::to_string(&table).unwrap();
        let back: FusionTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, table);
        assert_eq!(back.context().plevel(), c.plevel());
        let broken = json.replace("\"level\":2", "\"level\":3");
        assert!(serde_json::from_str::<FusionTable>(&broken).is_err());
    }

    fn dominant(r: usize, max: i64) -> impl Strategy<Value = Weight> {
        proptest::collection::vec(0..=max, r).prop_map(Weight)
    }

    fn check_homomorphism(c: &LevelContext, table: &FusionTable, a: &Weight, b: &Weight) {
        let rs = c.root_system();
        let left = beta_element(c, &tensor_decompose(rs, a, b).unwrap()).unwrap();
        let fa = beta_element(c, &RepElement::irreducible(a.clone())).unwrap();
        let fb = beta_element(c, &RepElement::irreducible(b.clone())).unwrap();
        let right = table.multiply(&fa, &fb).unwrap();
        assert_eq!(left, right, "{} level {}: {a} {b}", c.lie_type(), c.level());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn beta_is_a_homomorphism_a2(a in dominant(2, 4), b in dominant(2, 4), level in 1u32..=3) {
            let c = ctx("A2", level);
            let table = FusionTable::build(&c, FusionMethod::KacWalton).unwrap();
            check_homomorphism(&c, &table, &a, &b);
        }

        #[test]
        fn beta_is_a_homomorphism_b3(a in dominant(3, 2), b in dominant(3, 2), level in 1u32..=2) {
            let c = ctx("B3", level);
            let table = FusionTable::build(&c, FusionMethod::KacWalton).unwrap();
            check_homomorphism(&c, &table, &a, &b);
        }
    }
}
