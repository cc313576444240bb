//! Weyl character formula over the complex numbers.
//!
//! A torus point is given by phases `φ` with `h = Σ φ_i α_i∨`, so that
//! `e^μ(exp 2πi h) = exp(2πi Σ μ_i φ_i)` for `μ` in ω-coordinates.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, Weight};
use crate::weyl::signed_orbit;

/// Largest rank for which full Weyl-group sums are attempted.
pub const WEYL_SUM_RANK_CAP: usize = 4;

/// Denominators below this magnitude are treated as singular.
const SINGULAR_TOLERANCE: f64 = 1e-12;

/// `Σ_w ε(w) e^{w(λ+ρ)}` at the torus point with phases `φ`.
pub fn weyl_numerator(rs: &RootSystem, lambda: &Weight, phases: &[f64]) -> Result<Complex64> {
    rs.check_dominant(lambda)?;
    if rs.rank() > WEYL_SUM_RANK_CAP {
        return Err(Error::RankCap {
            what: "Weyl-group sums",
            lie_type: rs.lie_type(),
            cap: WEYL_SUM_RANK_CAP,
        });
    }
    if phases.len() != rs.rank() {
        return Err(Error::RankMismatch {
            expected: rs.rank(),
            found: phases.len(),
        });
    }
    let orbit = signed_orbit(rs, &(lambda + &rs.rho())).expect("λ+ρ is regular dominant");
    Ok(orbit
        .iter()
        .map(|(w, s)| {
            let t: f64 = w.0.iter().zip(phases).map(|(&c, p)| c as f64 * p).sum();
            Complex64::from_polar(*s as f64, TAU * t.rem_euclid(1.0))
        })
        .sum())
}

/// `χ_λ` at a regular torus point, as a ratio of alternating sums.
pub fn eval_char_numeric(rs: &RootSystem, lambda: &Weight, phases: &[f64]) -> Result<Complex64> {
    let den = weyl_numerator(rs, &Weight::zero(rs.rank()), phases)?;
    if den.norm() < SINGULAR_TOLERANCE {
        return Err(Error::SingularPoint {
            magnitude: den.norm(),
        });
    }
    Ok(weyl_numerator(rs, lambda, phases)? / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repring::weyl_dim;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn trivial_character_is_one() {
        let b3 = rs("B3");
        for phases in [[0.1, 0.27, 0.33], [0.4, 0.05, 0.71]] {
            let v = eval_char_numeric(&b3, &Weight::zero(3), &phases).unwrap();
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn sl2_fundamental_is_a_cosine() {
        let a1 = rs("A1");
        for phi in [0.05, 0.13, 0.31, 0.42] {
            let v = eval_char_numeric(&a1, &Weight(vec![1]), &[phi]).unwrap();
            assert!((v.re - 2.0 * (TAU * phi).cos()).abs() < 1e-12);
            assert!(v.im.abs() < 1e-12);
        }
    }

    #[test]
    fn near_identity_gives_dimension() {
        for (t, phases) in [("A1", vec![1e-4]), ("A2", vec![1e-4, 0.7e-4])] {
            let rs = rs(t);
            let r = rs.rank();
            for lambda in [Weight::fundamental(r, 1), Weight(vec![2; r]), Weight::rho(r)] {
                let v = eval_char_numeric(&rs, &lambda, &phases).unwrap();
                let dim = weyl_dim(&rs, &lambda).unwrap() as f64;
                assert!((v.re - dim).abs() < 1e-4, "{t} {lambda}: {v} vs {dim}");
            }
        }
    }

    #[test]
    fn errors() {
        let a1 = rs("A1");
        assert!(matches!(
            eval_char_numeric(&a1, &Weight(vec![1]), &[0.0]),
            Err(Error::SingularPoint { .. })
        ));
        assert!(matches!(
            eval_char_numeric(&a1, &Weight(vec![1]), &[0.1, 0.2]),
            Err(Error::RankMismatch { .. })
        ));
        assert!(matches!(
            eval_char_numeric(&rs("E6"), &Weight::zero(6), &[0.1; 6]),
            Err(Error::RankCap { .. })
        ));
    }
}
