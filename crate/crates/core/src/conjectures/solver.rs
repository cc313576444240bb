//! Zero sets of small polynomial systems.
//!
//! Two-variable systems are reduced to one variable by exact resultants over
//! `Z`; the gcd of the eliminants is made squarefree over `Q` and its roots
//! are found from companion-matrix eigenvalues, then polished by Newton steps.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::repring::CharPoly;

/// Residual threshold relative to the polynomial's size at the point.
pub const RESIDUAL_TOLERANCE: f64 = 1e-6;

/// Solutions closer than this are merged.
pub const DEDUP_DISTANCE: f64 = 1e-8;

/// Dense polynomial over `Z`, ascending; no trailing zeros.
type ZPoly = Vec<BigInt>;

/// Dense polynomial over `Q`, ascending; no trailing zeros.
type QPoly = Vec<BigRational>;

fn trim<T: Zero>(mut p: Vec<T>) -> Vec<T> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn z_sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

/// `a / b` where the division is known to be exact.
fn z_exact_div(a: &ZPoly, b: &ZPoly) -> ZPoly {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Vec::new();
    }
    let mut rem = a.clone();
    let lead = b.last().expect("nonzero");
    let mut q = vec![BigInt::zero(); a.len() + 1 - b.len()];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().expect("nonzero") / lead;
        for (i, y) in b.iter().enumerate() {
            rem[i + shift] -= &c * y;
        }
        q[shift] = c;
        rem = trim(rem);
    }
    debug_assert!(rem.is_empty(), "inexact polynomial division");
    trim(q)
}

/// Determinant by fraction-free (Bareiss) elimination.
fn bareiss_det(mut m: Vec<Vec<ZPoly>>) -> ZPoly {
    let n = m.len();
    let mut prev: ZPoly = vec![BigInt::one()];
    let mut negate = false;
    for k in 0..n {
        if m[k][k].is_empty() {
            match (k + 1..n).find(|&i| !m[i][k].is_empty()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Vec::new(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = z_sub(&z_mul(&m[i][j], &m[k][k]), &z_mul(&m[i][k], &m[k][j]));
                m[i][j] = z_exact_div(&t, &prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.into_iter().map(|c| -c).collect()
    } else {
        det
    }
}

/// Coefficients of `p` as a polynomial in variable `elim`, each a
/// polynomial in the other variable.
fn split(p: &CharPoly, elim: usize) -> Vec<ZPoly> {
    let keep = 1 - elim;
    let mut out: Vec<ZPoly> = vec![Vec::new(); p.degree_in(elim) as usize + 1];
    for (e, c) in p.terms() {
        let slot = &mut out[e[elim] as usize];
        let k = e[keep] as usize;
        if slot.len() <= k {
            slot.resize(k + 1, BigInt::zero());
        }
        slot[k] += BigInt::from(c);
    }
    out.into_iter().map(trim).collect()
}

/// A polynomial in the kept variable vanishing on the projection of
/// `V(f, g)`: the resultant, or `f` itself when `f` does not involve the
/// eliminated variable.
fn eliminant(f: &CharPoly, g: &CharPoly, elim: usize) -> ZPoly {
    let (a, b) = (split(f, elim), split(g, elim));
    let (m, n) = (a.len() - 1, b.len() - 1);
    if m == 0 {
        return a[0].clone();
    }
    if n == 0 {
        return b[0].clone();
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (coeffs, shifts) in [(&a, n), (&b, m)] {
        for s in 0..shifts {
            let mut row = vec![Vec::new(); size];
            for (d, c) in coeffs.iter().rev().enumerate() {
                row[s + d] = c.clone();
            }
            rows.push(row);
        }
    }
    bareiss_det(rows)
}

fn to_q(p: &ZPoly) -> QPoly {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn q_rem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut rem = a.clone();
    let lead = b.last().expect("nonzero divisor");
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().expect("nonzero") / lead;
        for (i, y) in b.iter().enumerate() {
            rem[i + shift] -= &c * y;
        }
        rem = trim(rem);
    }
    rem
}

fn q_div(a: &QPoly, b: &QPoly) -> QPoly {
    let mut rem = a.clone();
    let lead = b.last().expect("nonzero divisor");
    let mut q = vec![BigRational::zero(); (a.len() + 1).saturating_sub(b.len())];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().expect("nonzero") / lead;
        for (i, y) in b.iter().enumerate() {
            rem[i + shift] -= &c * y;
        }
        q[shift] = c;
        rem = trim(rem);
    }
    trim(q)
}

fn monic(p: QPoly) -> QPoly {
    match p.last().cloned() {
        Some(lead) => p.into_iter().map(|c| c / &lead).collect(),
        None => p,
    }
}

fn q_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = q_rem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

fn derivative(p: &QPoly) -> QPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

fn squarefree(p: &QPoly) -> QPoly {
    let g = q_gcd(p, &derivative(p));
    monic(q_div(p, &g))
}

fn horner(p: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for c in p.iter().rev() {
        d = d * x + v;
        v = v * x + c;
    }
    (v, d)
}

/// Complex roots of a squarefree monic polynomial.
fn roots_of_squarefree(p: &QPoly) -> Vec<Complex64> {
    let n = p.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let coeffs: Vec<Complex64> = p
        .iter()
        .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
        .collect();
    let mut roots: Vec<Complex64> = if n == 1 {
        vec![-coeffs[0]]
    } else {
        let companion = DMatrix::from_fn(n, n, |i, j| {
            if j == n - 1 {
                -coeffs[i].re
            } else if i == j + 1 {
                1.0
            } else {
                0.0
            }
        });
        companion.complex_eigenvalues().iter().copied().collect()
    };
    for z in &mut roots {
        for _ in 0..50 {
            let (v, d) = horner(&coeffs, *z);
            if d.norm() == 0.0 {
                break;
            }
            let step = v / d;
            *z -= step;
            if step.norm() <= 1e-15 * z.norm().max(1.0) {
                break;
            }
        }
    }
    roots
}

/// Roots of the squarefree part of the gcd of integer polynomials.
fn common_roots(polys: &[ZPoly]) -> Vec<Complex64> {
    let mut g: Option<QPoly> = None;
    for p in polys.iter().filter(|p| !p.is_empty()) {
        let q = to_q(p);
        g = Some(match g {
            None => monic(q),
            Some(g) => q_gcd(&g, &q),
        });
    }
    g.map_or_else(Vec::new, |g| roots_of_squarefree(&squarefree(&g)))
}

fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() < tol)
}

fn lex_cmp(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    let key = |v: &[Complex64]| v.iter().flat_map(|z| [z.re, z.im]).collect::<Vec<_>>();
    key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal)
}

fn residual_ok(polys: &[CharPoly], point: &[Complex64]) -> bool {
    polys
        .iter()
        .all(|f| f.eval(point).norm() < RESIDUAL_TOLERANCE * f.eval_scale(point).max(1.0))
}

fn finish(polys: &[CharPoly], candidates: Vec<Vec<Complex64>>) -> Vec<Vec<Complex64>> {
    let mut out: Vec<Vec<Complex64>> = Vec::new();
    for c in candidates.into_iter().filter(|c| residual_ok(polys, c)) {
        if !out.iter().any(|o| close(o, &c, DEDUP_DISTANCE)) {
            out.push(c);
        }
    }
    out.sort_by(|a, b| lex_cmp(a, b));
    out
}

/// Common complex zeros of univariate integer polynomials, given as
/// one-variable [`CharPoly`]s.
pub fn solve_univariate_system(polys: &[CharPoly]) -> Result<Vec<Complex64>> {
    if polys.is_empty() || polys.iter().any(|p| p.nvars() != 1) {
        return Err(Error::Solver("expected one or more polynomials in one variable".into()));
    }
    let dense: Vec<ZPoly> = polys
        .iter()
        .map(|p| {
            let mut d = vec![BigInt::zero(); p.degree_in(0) as usize + 1];
            for (e, c) in p.terms() {
                d[e[0] as usize] += BigInt::from(c);
            }
            trim(d)
        })
        .collect();
    if dense.iter().all(|p| p.is_empty()) {
        return Err(Error::Solver("all polynomials are zero".into()));
    }
    let candidates = common_roots(&dense).into_iter().map(|z| vec![z]).collect();
    Ok(finish(polys, candidates).into_iter().map(|v| v[0]).collect())
}

/// Common complex zeros of a zero-dimensional system in two variables.
pub fn solve_rank2_system(polys: &[CharPoly]) -> Result<Vec<[Complex64; 2]>> {
    if polys.len() < 2 || polys.iter().any(|p| p.nvars() != 2) {
        return Err(Error::Solver("expected at least two polynomials in two variables".into()));
    }
    let mut coordinate_roots = Vec::with_capacity(2);
    for elim in [1, 0] {
        let mut eliminants = Vec::new();
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                let e = eliminant(&polys[i], &polys[j], elim);
                if !e.is_empty() {
                    eliminants.push(e);
                }
            }
        }
        if eliminants.is_empty() {
            return Err(Error::Solver(format!(
                "every resultant eliminating x{} vanishes; the system is not zero-dimensional",
                elim + 1
            )));
        }
        coordinate_roots.push(common_roots(&eliminants));
    }
    let candidates = coordinate_roots[0]
        .iter()
        .flat_map(|&a| coordinate_roots[1].iter().map(move |&b| vec![a, b]))
        .collect();
    Ok(finish(polys, candidates).into_iter().map(|v| [v[0], v[1]]).collect())
}
