//! Candidate generators of the fusion ideal `I_ℓ = ker β`, exact checks that
//! they lie in it, and numerical comparison of zero sets with the fusion
//! points in rank at most two.
//!
//! A generator `χ_λ` lies in `I_ℓ` iff `β(V(λ)) = 0`, i.e. iff `λ + ρ` sits on
//! an affine wall. That test is exact and needs no character polynomial.

mod solver;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::affine::{beta_fold, wall_witness, FoldOutcome, WallWitness};
use crate::error::{Error, Result};
use crate::fusion::{fusion_points, FusionPoint, LevelContext, S_MATRIX_RANK_CAP};
use crate::repring::{char_poly, CharacterTable};
use crate::rootdata::{Family, LieType, Rational, RootSystem, RootVector, Weight};

pub use solver::{solve_rank2_system, solve_univariate_system, DEDUP_DISTANCE, RESIDUAL_TOLERANCE};

/// Tolerance for generator values at fusion points and for point matching.
pub const VANISHING_TOLERANCE: f64 = 1e-6;

/// Where a generator list comes from. Serialized by its short tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorSource {
    /// `A_r`: `(ℓ+m)ω₁`, `m = 1..r`. Generates `I_ℓ`.
    SpecialLinear,
    /// `C_r`: `ℓω₁ + ω_i`, `i = 1..r`. Generates `I_ℓ`.
    Symplectic,
    /// `B_r`, `D_r`, `E₆`, `E₇`: `(ℓ+m)ω_d`, `m = 1..ȟ-1`.
    MinimalIndexPowers,
    /// `G₂`: `(ℓ+1)ω₁`, `(ℓ+2)ω₁` and one parity-dependent weight.
    G2Walls,
    /// `F₄`: `(ℓ+m)ω₄`, `m = 1..6`.
    F4Walls,
    /// `E₈`: `(ℓ+m)ω₈`, `m = 2..29`, plus `((ℓ+1)/2)ω₈` for odd `ℓ`.
    E8Walls,
    /// `B_r`: the minimal-index list plus `ℓω₁ + ω_r`.
    OddOrthogonalExtra,
    /// `D_r`: the minimal-index list plus `ℓω₁ + ω_{r-1}`, `ℓω₁ + ω_r`.
    EvenOrthogonalExtra,
}

impl GeneratorSource {
    pub const ALL: [GeneratorSource; 8] = [
        GeneratorSource::SpecialLinear,
        GeneratorSource::Symplectic,
        GeneratorSource::MinimalIndexPowers,
        GeneratorSource::G2Walls,
        GeneratorSource::F4Walls,
        GeneratorSource::E8Walls,
        GeneratorSource::OddOrthogonalExtra,
        GeneratorSource::EvenOrthogonalExtra,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            GeneratorSource::SpecialLinear => "thm4.1a",
            GeneratorSource::Symplectic => "thm4.1b",
            GeneratorSource::MinimalIndexPowers => "thm4.2a",
            GeneratorSource::G2Walls => "thm4.2b",
            GeneratorSource::F4Walls => "thm4.2c",
            GeneratorSource::E8Walls => "thm4.2d",
            GeneratorSource::OddOrthogonalExtra => "conj4.3a",
            GeneratorSource::EvenOrthogonalExtra => "conj4.3b",
        }
    }

    pub fn applies_to(self, t: LieType) -> bool {
        use Family::*;
        match self {
            GeneratorSource::SpecialLinear => t.family() == A,
            GeneratorSource::Symplectic => t.family() == C,
            GeneratorSource::MinimalIndexPowers => {
                matches!(t.family(), B | D) || (t.family() == E && t.rank() < 8)
            }
            GeneratorSource::G2Walls => t.family() == G,
            GeneratorSource::F4Walls => t.family() == F,
            GeneratorSource::E8Walls => t.family() == E && t.rank() == 8,
            GeneratorSource::OddOrthogonalExtra => t.family() == B,
            GeneratorSource::EvenOrthogonalExtra => t.family() == D,
        }
    }

    /// True for lists known to generate `I_ℓ` exactly.
    pub fn is_presentation(self) -> bool {
        matches!(self, GeneratorSource::SpecialLinear | GeneratorSource::Symplectic)
    }
}

impl fmt::Display for GeneratorSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for GeneratorSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        GeneratorSource::ALL
            .into_iter()
            .find(|g| g.tag() == s)
            .ok_or(Error::UnknownSource(s))
    }
}

impl Serialize for GeneratorSource {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

/// All sources applicable to a type.
pub fn applicable_sources(t: LieType) -> Vec<GeneratorSource> {
    GeneratorSource::ALL.into_iter().filter(|g| g.applies_to(t)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(level: u32) -> Self {
        if level % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

/// A transcribed generator list for one type and level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorSpec {
    pub source: GeneratorSource,
    pub lie_type: LieType,
    pub level: u32,
    pub generators: Vec<Weight>,
    /// Set only where the list depends on the parity of `ℓ`.
    pub parity_case: Option<Parity>,
}

/// Node `d` used for the minimal-index powers: `ω₁` for `B_r`, `D_r`, `E₆`
/// (`B₃` included), `ω₇` for `E₇`.
fn minimal_index_node(t: LieType) -> usize {
    match (t.family(), t.rank()) {
        (Family::E, 7) => 7,
        _ => 1,
    }
}

fn multiple(r: usize, i: usize, c: i64) -> Weight {
    c * &Weight::fundamental(r, i)
}

/// The generator list of `source` for `rs` at level `ℓ`.
pub fn generator_list(rs: &RootSystem, level: u32, source: GeneratorSource) -> Result<GeneratorSpec> {
    let t = rs.lie_type();
    if !source.applies_to(t) {
        return Err(Error::SourceMismatch {
            source_tag: source.tag(),
            lie_type: t,
        });
    }
    if level == 0 {
        return Err(Error::ZeroLevel);
    }
    let r = rs.rank();
    let l = level as i64;
    let h = rs.dual_coxeter();
    let mut parity_case = None;
    let generators = match source {
        GeneratorSource::SpecialLinear => (1..=r as i64).map(|m| multiple(r, 1, l + m)).collect(),
        GeneratorSource::Symplectic => (1..=r)
            .map(|i| &multiple(r, 1, l) + &Weight::fundamental(r, i))
            .collect(),
        GeneratorSource::MinimalIndexPowers => {
            let d = minimal_index_node(t);
            (1..h).map(|m| multiple(r, d, l + m)).collect()
        }
        GeneratorSource::G2Walls => {
            let parity = Parity::of(level);
            parity_case = Some(parity);
            let extra = match parity {
                Parity::Odd => multiple(2, 2, (l + 1) / 2),
                Parity::Even => &Weight::fundamental(2, 1) + &multiple(2, 2, l / 2),
            };
            vec![multiple(2, 1, l + 1), multiple(2, 1, l + 2), extra]
        }
        GeneratorSource::F4Walls => (1..=6).map(|m| multiple(4, 4, l + m)).collect(),
        GeneratorSource::E8Walls => {
            let parity = Parity::of(level);
            parity_case = Some(parity);
            let mut g: Vec<Weight> = (2..=29).map(|m| multiple(8, 8, l + m)).collect();
            if parity == Parity::Odd {
                g.push(multiple(8, 8, (l + 1) / 2));
            }
            g
        }
        GeneratorSource::OddOrthogonalExtra => {
            let mut g: Vec<Weight> = (1..h).map(|m| multiple(r, 1, l + m)).collect();
            g.push(&multiple(r, 1, l) + &Weight::fundamental(r, r));
            g
        }
        GeneratorSource::EvenOrthogonalExtra => {
            let mut g: Vec<Weight> = (1..h).map(|m| multiple(r, 1, l + m)).collect();
            g.push(&multiple(r, 1, l) + &Weight::fundamental(r, r - 1));
            g.push(&multiple(r, 1, l) + &Weight::fundamental(r, r));
            g
        }
    };
    Ok(GeneratorSpec {
        source,
        lie_type: t,
        level,
        generators,
        parity_case,
    })
}

/// An explicitly stated wall: `(λ+ρ|root) = pairing` for its generator `λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrintedWall {
    pub generator: Weight,
    pub root: RootVector,
    pub pairing: i64,
}

fn root_from(r: usize, coeffs: impl IntoIterator<Item = (usize, i64)>) -> RootVector {
    let mut v = vec![0; r];
    for (k, c) in coeffs {
        v[k - 1] += c;
    }
    RootVector(v)
}

/// The explicit wall root for the `m`-th generator of the wall-based lists.
///
/// * `B_r`, `1 ≤ m ≤ 2r-2`: generator `(ℓ+m)ω₁`.
/// * `D_r`, `1 ≤ m ≤ 2r-3`: generator `(ℓ+m)ω₁`.
/// * `G₂`, `m ∈ {1, 2}`: `(ℓ+m)ω₁`; `m = 3`: the parity-dependent generator.
/// * `F₄`, `1 ≤ m ≤ 6`: `(ℓ+m)ω₄`.
///
/// The stated pairing is `ℓ + ȟ` in every case.
pub fn paper_wall_root(rs: &RootSystem, level: u32, m: usize) -> Result<PrintedWall> {
    let t = rs.lie_type();
    let r = rs.rank();
    let l = level as i64;
    let pairing = l + rs.dual_coxeter();
    let out_of_range = |max: usize| {
        Error::OutOfRange(format!("wall index m = {m} outside 1..={max} for {t}"))
    };
    let (generator, root) = match t.family() {
        Family::B => {
            if m == 0 || m > 2 * r - 2 {
                return Err(out_of_range(2 * r - 2));
            }
            let root = if m < r {
                root_from(r, (1..=r).map(|k| (k, if k <= m { 1 } else { 2 })))
            } else {
                root_from(r, (1..2 * r - m).map(|k| (k, 1)))
            };
            (multiple(r, 1, l + m as i64), root)
        }
        Family::D => {
            if m == 0 || m > 2 * r - 3 {
                return Err(out_of_range(2 * r - 3));
            }
            let root = if m <= r - 2 {
                root_from(
                    r,
                    (1..=r).map(|k| (k, if k <= m || k >= r - 1 { 1 } else { 2 })),
                )
            } else {
                root_from(r, (1..2 * r - 1 - m).map(|k| (k, 1)))
            };
            (multiple(r, 1, l + m as i64), root)
        }
        Family::G => {
            let theta = rs.theta().clone();
            match m {
                1 => (multiple(2, 1, l + 1), theta),
                2 => (multiple(2, 1, l + 2), root_from(2, [(1, 3), (2, 1)])),
                3 => {
                    let g = generator_list(rs, level, GeneratorSource::G2Walls)?;
                    (g.generators[2].clone(), theta)
                }
                _ => return Err(out_of_range(3)),
            }
        }
        Family::F => {
            let subtract: [&[(usize, i64)]; 6] = [
                &[],
                &[(1, 1)],
                &[(1, 1), (2, 1)],
                &[(1, 1), (2, 1), (3, 2)],
                &[(1, 1), (2, 2), (3, 2)],
                &[(1, 2), (2, 2), (3, 2)],
            ];
            if m == 0 || m > 6 {
                return Err(out_of_range(6));
            }
            let mut root = rs.theta().clone();
            for &(k, c) in subtract[m - 1] {
                root.0[k - 1] -= c;
            }
            (multiple(4, 4, l + m as i64), root)
        }
        _ => {
            return Err(Error::OutOfRange(format!(
                "no explicit wall roots are stated for {t}"
            )))
        }
    };
    Ok(PrintedWall {
        generator,
        root,
        pairing,
    })
}

/// Explicit walls for each generator of `spec`, where one is stated.
pub fn printed_walls(rs: &RootSystem, spec: &GeneratorSpec) -> Result<Vec<Option<PrintedWall>>> {
    let base: Vec<Option<PrintedWall>> = match (spec.source, rs.lie_type().family()) {
        (
            GeneratorSource::MinimalIndexPowers
            | GeneratorSource::OddOrthogonalExtra
            | GeneratorSource::EvenOrthogonalExtra,
            Family::B | Family::D,
        )
        | (GeneratorSource::G2Walls, _)
        | (GeneratorSource::F4Walls, _) => {
            let n = match spec.source {
                GeneratorSource::G2Walls => 3,
                GeneratorSource::F4Walls => 6,
                _ => (rs.dual_coxeter() - 1) as usize,
            };
            (1..=n)
                .map(|m| paper_wall_root(rs, spec.level, m).map(Some))
                .collect::<Result<_>>()?
        }
        _ => Vec::new(),
    };
    let pairing = spec.level as i64 + rs.dual_coxeter();
    Ok(spec
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| {
            base.get(i).cloned().flatten().or_else(|| {
                // the extra orthogonal generators sit on the θ-wall
                let extra = matches!(
                    spec.source,
                    GeneratorSource::OddOrthogonalExtra | GeneratorSource::EvenOrthogonalExtra
                ) && i >= base.len();
                extra.then(|| PrintedWall {
                    generator: g.clone(),
                    root: rs.theta().clone(),
                    pairing,
                })
            })
        })
        .collect())
}

/// Result of checking one generator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorCheck {
    pub weight: Weight,
    pub beta: FoldOutcome,
    pub witness: Option<WallWitness>,
    pub printed_wall: Option<PrintedWall>,
    /// The stated root is positive, its pairing identity holds, and the
    /// searched witness reaches the same value `n(ℓ+ȟ)`.
    pub printed_wall_ok: Option<bool>,
    /// `max |χ_λ|` over the fusion points, when evaluated.
    pub max_abs_value: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub spec: GeneratorSpec,
    pub generators: Vec<GeneratorCheck>,
    pub evaluated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evaluation_note: Option<String>,
    pub pass: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

fn check_printed(rs: &RootSystem, lambda: &Weight, wall: &PrintedWall, witness: Option<&WallWitness>, k: i64) -> Result<bool> {
    let x = lambda + &rs.rho();
    let is_root = rs.positive_roots().contains(&wall.root);
    let holds = is_root
        && &wall.generator == lambda
        && rs.inner_product(&x, &wall.root)? == Rational::from(wall.pairing);
    let agrees = witness.is_some_and(|w| w.level_multiple * k == wall.pairing);
    Ok(holds && agrees)
}

/// Exact inclusion check: every generator folds to zero under `β`.
///
/// With `with_evaluation`, also evaluates each character polynomial at
/// every fusion point (rank ≤ 4, within the default dimension cap).
pub fn verify_inclusion(
    rs: &RootSystem,
    level: u32,
    source: GeneratorSource,
    with_evaluation: bool,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let spec = generator_list(rs, level, source)?;
    let mut report = verify_spec(rs, spec, with_evaluation)?;
    report.elapsed = start.elapsed();
    Ok(report)
}

/// [`verify_inclusion`] for an explicit, possibly edited, generator list.
pub fn verify_spec(rs: &RootSystem, spec: GeneratorSpec, with_evaluation: bool) -> Result<VerificationReport> {
    let start = Instant::now();
    let level = spec.level;
    let mut walls = printed_walls(rs, &spec)?;
    walls.resize(spec.generators.len(), None);
    let k = level as i64 + rs.dual_coxeter();

    let mut note = None;
    let mut evaluation: Option<(CharacterTable<'_>, Vec<FusionPoint>)> = None;
    if with_evaluation {
        if rs.rank() > S_MATRIX_RANK_CAP {
            note = Some(format!("evaluation skipped: rank above {S_MATRIX_RANK_CAP}"));
        } else {
            let ctx = LevelContext::new(Arc::new(rs.clone()), level)?;
            evaluation = Some((CharacterTable::new(rs), fusion_points(&ctx)?));
        }
    }

    let mut checks = Vec::with_capacity(spec.generators.len());
    for (lambda, wall) in spec.generators.iter().zip(walls) {
        let beta = beta_fold(rs, lambda, level)?;
        let witness = wall_witness(rs, lambda, level)?;
        let printed_wall_ok = match &wall {
            Some(w) => Some(check_printed(rs, lambda, w, witness.as_ref(), k)?),
            None => None,
        };
        let mut max_abs_value = None;
        let mut values_ok = true;
        if let Some((table, points)) = &evaluation {
            match table.get(lambda) {
                Ok(p) => {
                    let mut max = 0.0f64;
                    for pt in points {
                        let v = p.eval(&pt.coords).norm();
                        let scale = pt.coords.iter().map(|z| z.norm()).fold(0.0, f64::max);
                        values_ok &= v < VANISHING_TOLERANCE * (1.0 + scale);
                        max = max.max(v);
                    }
                    max_abs_value = Some(max);
                }
                Err(Error::DimensionCap { .. }) => {
                    note.get_or_insert_with(|| "some generators exceed the dimension cap and were not evaluated".into());
                }
                Err(e) => return Err(e),
            }
        }
        let pass = beta.is_zero() && witness.is_some() && printed_wall_ok != Some(false) && values_ok;
        checks.push(GeneratorCheck {
            weight: lambda.clone(),
            beta,
            witness,
            printed_wall: wall,
            printed_wall_ok,
            max_abs_value,
            pass,
        });
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(VerificationReport {
        spec,
        generators: checks,
        evaluated: evaluation.is_some(),
        evaluation_note: note,
        pass,
        elapsed: start.elapsed(),
    })
}

/// One `(type, level, source)` verification job.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SweepTask {
    pub lie_type: LieType,
    pub level: u32,
    pub source: GeneratorSource,
}

fn tasks_for(types: &[&str], levels: std::ops::RangeInclusive<u32>, only: Option<&[GeneratorSource]>) -> Vec<SweepTask> {
    let mut out = Vec::new();
    for t in types {
        let lie_type: LieType = t.parse().expect("valid type literal");
        for source in applicable_sources(lie_type) {
            if only.is_some_and(|o| !o.contains(&source)) {
                continue;
            }
            for level in levels.clone() {
                out.push(SweepTask {
                    lie_type,
                    level,
                    source,
                });
            }
        }
    }
    out
}

/// The full verification matrix: every wall-based list on `B₃–B₆`,
/// `D₄–D₆`, `G₂`, `F₄`, `E₆–E₈` at `ℓ ≤ 6`, the presentations of types `A`
/// and `C` in low rank at `ℓ ≤ 3`, and the extra orthogonal generators on
/// `B₃`, `B₄`, `D₄` at `ℓ ≤ 3`.
pub fn standard_sweep() -> Vec<SweepTask> {
    use GeneratorSource::*;
    let mut tasks = tasks_for(
        &["B3", "B4", "B5", "B6", "D4", "D5", "D6", "G2", "F4", "E6", "E7", "E8"],
        1..=6,
        Some(&[MinimalIndexPowers, G2Walls, F4Walls, E8Walls]),
    );
    tasks.extend(tasks_for(&["A1", "A2", "A3", "C2", "C3"], 1..=3, None));
    tasks.extend(tasks_for(&["B3", "B4", "D4"], 1..=3, Some(&[OddOrthogonalExtra, EvenOrthogonalExtra])));
    tasks.sort();
    tasks
}

/// Runs tasks in parallel; results come back in task order.
pub fn verify_sweep(tasks: &[SweepTask], with_evaluation: bool) -> Vec<Result<VerificationReport>> {
    tasks
        .par_iter()
        .map(|t| {
            let rs = RootSystem::new(t.lie_type)?;
            verify_inclusion(&rs, t.level, t.source, with_evaluation)
        })
        .collect()
}

/// How computed zeros line up with the fusion points.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Matching {
    /// `(zero index, point index)` pairs covering both sides exactly once.
    Bijection { pairs: Vec<(usize, usize)> },
    Mismatch {
        unmatched_zeros: Vec<usize>,
        unmatched_points: Vec<usize>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct VarietyComparison {
    pub spec: GeneratorSpec,
    pub zeros: Vec<Vec<Complex64>>,
    pub points: Vec<FusionPoint>,
    pub matching: Matching,
    /// Largest distance from a zero to its nearest fusion point.
    pub max_distance: f64,
    pub equal: bool,
}

fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

fn match_points(zeros: &[Vec<Complex64>], points: &[FusionPoint]) -> (Matching, f64) {
    let mut hit = vec![false; points.len()];
    let mut pairs = Vec::new();
    let mut unmatched_zeros = Vec::new();
    let mut max_distance = 0.0f64;
    for (i, z) in zeros.iter().enumerate() {
        let nearest = points
            .iter()
            .enumerate()
            .map(|(j, p)| (j, distance(z, &p.coords)))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match nearest {
            Some((j, d)) => {
                max_distance = max_distance.max(d);
                if d < VANISHING_TOLERANCE && !hit[j] {
                    hit[j] = true;
                    pairs.push((i, j));
                } else {
                    unmatched_zeros.push(i);
                }
            }
            None => unmatched_zeros.push(i),
        }
    }
    let unmatched_points: Vec<usize> = (0..points.len()).filter(|&j| !hit[j]).collect();
    if unmatched_zeros.is_empty() && unmatched_points.is_empty() {
        (Matching::Bijection { pairs }, max_distance)
    } else {
        (
            Matching::Mismatch {
                unmatched_zeros,
                unmatched_points,
            },
            max_distance,
        )
    }
}

/// Solves the generator system numerically (rank 1 or 2) and matches its
/// zero set against the fusion points.
pub fn verify_equality_rank2(rs: &RootSystem, level: u32, source: GeneratorSource) -> Result<VarietyComparison> {
    let spec = generator_list(rs, level, source)?;
    let polys = spec
        .generators
        .iter()
        .map(|g| char_poly(rs, g))
        .collect::<Result<Vec<_>>>()?;
    let zeros: Vec<Vec<Complex64>> = match rs.rank() {
        1 => solve_univariate_system(&polys)?.into_iter().map(|z| vec![z]).collect(),
        2 => solve_rank2_system(&polys)?.into_iter().map(|z| z.to_vec()).collect(),
        _ => {
            return Err(Error::RankCap {
                what: "variety comparison",
                lie_type: rs.lie_type(),
                cap: 2,
            })
        }
    };
    let ctx = LevelContext::new(Arc::new(rs.clone()), level)?;
    let points = fusion_points(&ctx)?;
    let (matching, max_distance) = match_points(&zeros, &points);
    let equal = matches!(matching, Matching::Bijection { .. });
    Ok(VarietyComparison {
        spec,
        zeros,
        points,
        matching,
        max_distance,
        equal,
    })
}
