//! Closed-form spectral results for the uniform null on [-1, 1].

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use crate::error::{Error, Result};

const POLE_EPS: f64 = 1e-10;

/// Distance from `x` to the nearest point of `offset + kπ`.
fn pole_distance(x: f64, offset: f64) -> f64 {
    let r = (x - offset).rem_euclid(PI);
    r.min(PI - r)
}

fn guard(argument: f64, offset: f64) -> Result<()> {
    let distance = pole_distance(argument, offset);
    if distance < POLE_EPS {
        Err(Error::NearPole { argument, distance })
    } else {
        Ok(())
    }
}

/// Left-hand side of the eigenvalue equation of the `J_n` operator,
/// `tan(1/(2√ν))/(6√ν) - cot(1/(2√(3ν)))/(2√(3ν))`.
pub fn uniform_eigen_equation(nu: f64) -> Result<f64> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::OutOfRange {
            name: "nu",
            value: nu,
            range: "(0, inf)".into(),
        });
    }
    let r = nu.sqrt();
    let a = 1.0 / (2.0 * r);
    let b = 1.0 / (2.0 * (3.0 * nu).sqrt());
    guard(a, FRAC_PI_2)?;
    guard(b, 0.0)?;
    Ok(a.tan() / (6.0 * r) - 1.0 / (b.tan() * 2.0 * (3.0 * nu).sqrt()))
}

/// Partial sum `Σ_{l≤terms} 2/(3π²l²ν - 2 + (-1)^l)`; the full series equals
/// `1 + uniform_eigen_equation(ν)`.
pub fn uniform_eigen_series(nu: f64, terms: usize) -> f64 {
    // summed smallest-first to limit rounding
    (1..=terms)
        .rev()
        .map(|l| {
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            let l = l as f64;
            2.0 / (3.0 * PI * PI * l * l * nu - 2.0 + sign)
        })
        .sum()
}

/// The equation multiplied through by `cos a · sin b` (`a = 1/(2√ν)`,
/// `b = a/√3`): an entire function of `a` with the same zeros.
fn cleared(a: f64) -> f64 {
    let b = a / 3f64.sqrt();
    a / 3.0 * a.sin() * b.sin() - b * a.cos() * b.cos()
}

/// The `k` largest eigenvalues of the `J_n` operator for the uniform null,
/// in decreasing order.
///
/// Roots are bracketed on the pole-free form of the equation in the variable
/// `a = 1/(2√ν)` (so arbitrarily small eigenvalues are reachable), then
/// bisected to machine precision.
pub fn solve_uniform_eigenvalues(k: usize) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    // eigenvalues are bounded by sup|φ| = 2/3, so a starts above 0.6
    let step = 1e-3;
    let mut roots = Vec::with_capacity(k);
    let mut lo = 0.05;
    let mut f_lo = cleared(lo);
    let limit = 1e7;
    while roots.len() < k {
        let hi = lo + step;
        if hi > limit {
            return Err(Error::Bracketing(format!("found only {} roots below a = {limit}", roots.len())));
        }
        let f_hi = cleared(hi);
        if f_lo == 0.0 {
            roots.push(lo);
        } else if f_lo.signum() != f_hi.signum() {
            roots.push(bisect(cleared, lo, hi));
        }
        lo = hi;
        f_lo = f_hi;
    }
    Ok(roots.into_iter().map(|a| 1.0 / (4.0 * a * a)).collect())
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let s_lo = f(lo).signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            return mid;
        }
        if v.signum() == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `κ₀ = (√2/3) / arctan(1/√2)`, the supremum over `t` of the leading
/// eigenvalue of the `K_n` operator family; attained at `t = 2/3`.
pub fn kappa0_uniform_closed_form() -> f64 {
    SQRT_2 / 3.0 / (1.0 / SQRT_2).atan()
}

/// Residual of the `t = 2/3` reduction, `1 - √2 tan(√2/(3ν))`.
pub fn reduced_equation_residual(nu: f64) -> Result<f64> {
    let arg = SQRT_2 / (3.0 * nu);
    guard(arg, FRAC_PI_2)?;
    Ok(1.0 - SQRT_2 * arg.tan())
}

/// `Ψ₁(c) = (cot(π/4 - c/2) - 1)/c`, with `Ψ₁(0) = 1`.
pub fn psi1(c: f64) -> Result<f64> {
    let arg = FRAC_PI_4 - c / 2.0;
    guard(arg, 0.0)?;
    if c.abs() < 1e-8 {
        return Ok(1.0 + c / 2.0);
    }
    Ok((1.0 / arg.tan() - 1.0) / c)
}

/// `1 + cΨ₁(c) = cot(π/4 - c/2)`.
fn one_plus_c_psi1(c: f64) -> Result<f64> {
    let arg = FRAC_PI_4 - c / 2.0;
    guard(arg, 0.0)?;
    Ok(1.0 / arg.tan())
}

/// `Ψ₂(c) = tan(√c)/√c`, continued to `c < 0` as `tanh(√|c|)/√|c|`;
/// `Ψ₂(0) = 1`.
pub fn psi2(c: f64) -> Result<f64> {
    if c.abs() < 1e-12 {
        return Ok(1.0 + c / 3.0);
    }
    if c < 0.0 {
        let r = (-c).sqrt();
        return Ok(r.tanh() / r);
    }
    let r = c.sqrt();
    guard(r, FRAC_PI_2)?;
    Ok(r.tan() / r)
}

/// Eigenvalue `μ_n = 2/((4n+1)π)` of the triangular operator
/// `D₁[f](x) = ∫_{1-x}^1 f`, and the coefficient `a_n = 2√2/((4n+1)π)` of the
/// constant function in its eigenbasis.
pub fn triangular_spectrum(n: i64) -> (f64, f64) {
    let d = (4 * n + 1) as f64 * PI;
    (2.0 / d, 2.0 * SQRT_2 / d)
}

/// `Σ_{|n|≤terms} a_n² / (1 - c μ_n)`.
pub fn psi1_series(c: f64, terms: i64) -> f64 {
    (-terms..=terms)
        .map(|n| {
            let (mu, a) = triangular_spectrum(n);
            a * a / (1.0 - c * mu)
        })
        .sum()
}

/// `Σ_{|n|≤terms} a_n² / (1 - c μ_n²)`.
pub fn psi2_series(c: f64, terms: i64) -> f64 {
    (-terms..=terms)
        .map(|n| {
            let (mu, a) = triangular_spectrum(n);
            a * a / (1.0 - c * mu * mu)
        })
        .sum()
}

/// Residual `1 - √(2c₂)Ψ₂(c₂)(1 + c₁Ψ₁(c₁))` of the equation satisfied by the
/// leading `K_n`-operator eigenvalue for `t` in [2/3, 1), with
/// `c₁ = (3t-2)/ν` and `c₂ = 2(1-t)²/ν²`.
///
/// Eliminating `f` leaves `(E - c₁D₁)u = √(2c₂)⟨g,v⟩v` and
/// `(E - c₂D₁²)g = (c₁⟨u,v⟩ + √(2c₂)⟨g,v⟩)v`; pairing both with `v` gives the
/// equation above.
pub fn fundamental_equation_residual(t: f64, nu: f64) -> Result<f64> {
    if !(2.0 / 3.0 - 1e-12..1.0).contains(&t) {
        return Err(Error::OutOfRange {
            name: "t",
            value: t,
            range: "[2/3, 1)".into(),
        });
    }
    if nu == 0.0 || !nu.is_finite() {
        return Err(Error::InvalidParameter(format!("nu must be finite and nonzero, got {nu}")));
    }
    let c1 = (3.0 * t - 2.0) / nu;
    let c2 = 2.0 * (1.0 - t).powi(2) / (nu * nu);
    Ok(1.0 - (2.0 * c2).sqrt() * psi2(c2)? * one_plus_c_psi1(c1)?)
}

/// Root of [`fundamental_equation_residual`] in `nu` on `[lo, hi]`.
pub fn trace_fundamental_root(t: f64, lo: f64, hi: f64) -> Result<f64> {
    let f = |nu: f64| fundamental_equation_residual(t, nu);
    let (f_lo, f_hi) = (f(lo)?, f(hi)?);
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Bracketing(format!(
            "fundamental equation at t={t} has no sign change on [{lo}, {hi}]"
        )));
    }
    let g = |nu: f64| f(nu).unwrap_or(f64::NAN);
    Ok(bisect(g, lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_root_is_0_1898() {
        let r = solve_uniform_eigenvalues(1).unwrap()[0];
        assert!((r - 0.1898).abs() < 5e-4, "{r}");
        assert!(uniform_eigen_equation(0.1898).unwrap().abs() < 1e-3);
    }

    #[test]
    fn roots_have_tiny_residuals_and_decrease() {
        let roots = solve_uniform_eigenvalues(5).unwrap();
        assert!(roots.windows(2).all(|w| w[0] > w[1]));
        for r in roots {
            assert!(uniform_eigen_equation(r).unwrap().abs() < 1e-9, "root {r}");
        }
    }

    #[test]
    fn exactly_one_root_between_0_15_and_0_25() {
        let mut changes = 0;
        let mut prev = uniform_eigen_equation(0.15).unwrap();
        for i in 1..=10_000 {
            let nu = 0.15 + 0.1 * i as f64 / 10_000.0;
            let v = uniform_eigen_equation(nu).unwrap();
            if v.signum() != prev.signum() {
                changes += 1;
            }
            prev = v;
        }
        assert_eq!(changes, 1);
    }

    #[test]
    fn series_identity() {
        let closed = uniform_eigen_equation(0.5).unwrap();
        let partial = uniform_eigen_series(0.5, 1_000_000);
        assert!((partial - (1.0 + closed)).abs() < 1e-5, "{partial} vs {}", 1.0 + closed);
    }

    #[test]
    fn pole_is_reported() {
        // a = 1/(2√ν) = π/2 → ν = 1/π²
        let nu = 1.0 / (PI * PI);
        assert!(matches!(uniform_eigen_equation(nu), Err(Error::NearPole { .. })));
        assert!(uniform_eigen_equation(-1.0).is_err());
    }

    #[test]
    fn kappa0_value_and_reduction() {
        let k = kappa0_uniform_closed_form();
        assert!((k - 0.7659).abs() < 1e-4);
        assert!(reduced_equation_residual(k).unwrap().abs() < 1e-14);
        assert!(fundamental_equation_residual(2.0 / 3.0, k).unwrap().abs() < 1e-10);
    }

    #[test]
    fn kappa0_is_largest_reduced_root() {
        // residual is positive for every |ν| > κ₀
        let k = kappa0_uniform_closed_form();
        for i in 1..5000 {
            let nu = k + 1e-3 + i as f64 * 0.02;
            assert!(reduced_equation_residual(nu).unwrap() > 0.0);
            assert!(reduced_equation_residual(-nu).unwrap() > 0.0);
        }
        // the other roots are √2 / (3(arctan(1/√2) + jπ))
        for j in [-3i32, -2, -1, 1, 2] {
            let nu = SQRT_2 / (3.0 * ((1.0 / SQRT_2).atan() + j as f64 * PI));
            assert!(reduced_equation_residual(nu).unwrap().abs() < 1e-9);
            assert!(nu.abs() < k);
        }
    }

    #[test]
    fn psi_limits_at_zero() {
        assert!((psi1(1e-9).unwrap() - 1.0).abs() < 1e-8);
        assert!((psi2(1e-13).unwrap() - 1.0).abs() < 1e-12);
        assert!((psi1(1e-6).unwrap() - 1.0).abs() < 1e-5);
        assert!((psi2(-1e-6).unwrap() - 1.0).abs() < 1e-5);
        assert!((psi1_series(0.0, 100_000) - 1.0).abs() < 1e-5);
    }

    #[test]
    fn psi_series_agree() {
        assert!((psi1(0.3).unwrap() - psi1_series(0.3, 100_000)).abs() < 1e-4);
        assert!((psi2(1.0).unwrap() - psi2_series(1.0, 100_000)).abs() < 1e-4);
    }

    #[test]
    fn psi2_negative_continuation_is_smooth() {
        let below = psi2(-1e-6).unwrap();
        let above = psi2(1e-6).unwrap();
        assert!((below - above).abs() < 1e-6);
        assert!((psi2(-4.0).unwrap() - 2f64.tanh() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn fundamental_rejects_bad_t() {
        assert!(fundamental_equation_residual(0.5, 0.7).is_err());
        assert!(fundamental_equation_residual(1.0, 0.7).is_err());
        assert!(fundamental_equation_residual(0.7, 0.0).is_err());
    }
}
