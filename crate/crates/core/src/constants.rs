//! Dimensional constants for gradient and Hölder estimates on `R^n_+`.
//!
//! All functions take the dimension `n` of the ambient space (so the
//! boundary is `R^{n-1}`).

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::quadrature::integrate_scalar;
use crate::special::{ball_volume, beta, gamma, gamma_ratio, sphere_area};

fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        return Err(domain(format!("dimension must be at least 2, got {n}")));
    }
    if n > 200 {
        return Err(domain(format!("dimension {n} exceeds the supported range 2..=200")));
    }
    Ok(())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(domain(format!("alpha must lie in (0,1), got {alpha}")));
    }
    Ok(())
}

/// Which formula produced a [`DimensionalConstant`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaId {
    /// Harmonic Schwarz constant on the unit ball.
    SchwarzK,
    /// Sharp half-space gradient constant.
    HalfSpaceM,
    /// Sharp pointwise ball constant at radius r.
    BallN,
    /// Fixed point of `2γK_n/(1-γ)^2 = 1/2`.
    GammaStar,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimensionalConstant {
    pub n: usize,
    pub value: f64,
    pub formula_id: FormulaId,
}

/// `K_n = 2 m_{n-1}(B^{n-1}) / m_n(B^n)`.
pub fn k_n(n: usize) -> Result<f64> {
    check_dim(n)?;
    Ok(2.0 * ball_volume(n - 1)? / ball_volume(n)?)
}

/// `K_n` tagged with its formula.
pub fn schwarz_constant(n: usize) -> Result<DimensionalConstant> {
    let value = k_n(n)?;
    debug_assert!(value <= ((n + 2) as f64).sqrt());
    Ok(DimensionalConstant { n, value, formula_id: FormulaId::SchwarzK })
}

/// `M_n = 4 (n-1)^{(n-1)/2} / n^{n/2} · m_{n-1}(B^{n-1}) / m_n(B^n)`.
pub fn m_n_khavinson(n: usize) -> Result<f64> {
    check_dim(n)?;
    let nf = n as f64;
    // (n-1)^{(n-1)/2} / n^{n/2} in log form; both factors overflow separately for large n
    let log_ratio = 0.5 * (nf - 1.0) * (nf - 1.0).ln() - 0.5 * nf * nf.ln();
    Ok(4.0 * log_ratio.exp() * ball_volume(n - 1)? / ball_volume(n)?)
}

/// Sharp pointwise ball constant `N_n(x)` at `|x| = r`.
///
/// The defining integral over `t ∈ [-1, 1]` is evaluated after `t = cos θ`,
/// which removes the `(1 - t^2)^{n/2 - 3/2}` endpoint singularity for `n = 2`;
/// the kink of `|t - (n-2)r/n|` is passed to the integrator as a breakpoint.
pub fn liu_constant(n: usize, r: f64) -> Result<f64> {
    check_dim(n)?;
    if !(0.0..1.0).contains(&r) {
        return Err(domain(format!("liu_constant requires 0 <= r < 1, got {r}")));
    }
    let nf = n as f64;
    let shift = (nf - 2.0) / nf * r;
    let kink = shift.acos();
    let sin_pow = nf - 2.0;
    let den_pow = nf / 2.0 - 1.0;
    let integrand = |theta: f64| {
        let (s, c) = theta.sin_cos();
        let den = 1.0 - 2.0 * r * c + r * r;
        (c - shift).abs() * s.powf(sin_pow) / den.powf(den_pow)
    };
    let q = integrate_scalar(integrand, &[0.0, kink, PI], 1e-13, 4000);
    if !q.converged {
        return Err(Error::Accuracy { achieved: q.error[0], target: 1e-13 });
    }
    let pref = ball_volume(n - 1)? / ball_volume(n)? * (nf - 1.0) / (r + 1.0);
    Ok(pref * q.scalar())
}

/// `∫_{R^{n-1}} P((0,1), v) |v|^α dv`, the α-moment of the Poisson kernel at
/// unit height: `Γ((α+n-1)/2) Γ((1-α)/2) / (√π Γ((n-1)/2))`.
///
/// For boundary data with `|f(s) - f(t)| ≤ C|s-t|^α` this gives
/// `|U(x', x_n) - f(x')| ≤ C · holder_moment · x_n^α`.
pub fn holder_moment(n: usize, alpha: f64) -> Result<f64> {
    check_dim(n)?;
    check_alpha(alpha)?;
    let nf = n as f64;
    Ok(gamma_ratio((alpha + nf - 1.0) / 2.0, (nf - 1.0) / 2.0)? * gamma((1.0 - alpha) / 2.0)? / PI.sqrt())
}

/// The dimensionless integral behind the normal-derivative estimate and its
/// two successive upper bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JnBundle {
    pub n: usize,
    pub alpha: f64,
    /// `Γ(n/2)/π^{n/2} ∫ (|v|^2 + n - 1)/(|v|^2 + 1)^{n/2+1} |v|^α dv` from Beta functions
    pub exact: f64,
    /// independent radial quadrature of the same integral
    pub quadrature: f64,
    /// `2 Γ(1/2 - α/2)/Γ(1/2) · Γ(α/2 + (n-1)/2)/Γ((n-1)/2)`
    pub gamma_bound: f64,
    /// `4 (n-1)^{1/2} / (1 - α)`
    pub final_bound: f64,
}

fn jn_exact(n: usize, alpha: f64) -> Result<f64> {
    let nf = n as f64;
    // ∫_0^∞ r^{a-1} (1 + r^2)^{-b} dr = B(a/2, b - a/2) / 2 with a = α + n - 1
    let half_a = (alpha + nf - 1.0) / 2.0;
    let radial = 0.5 * beta(half_a, (1.0 - alpha) / 2.0)? + (nf - 2.0) * 0.5 * beta(half_a, (3.0 - alpha) / 2.0)?;
    let kernel_const = gamma(nf / 2.0)? / PI.powf(nf / 2.0);
    Ok(kernel_const * sphere_area(n - 2)? * radial)
}

/// The same integral by adaptive quadrature after `r = tan θ`.
///
/// The integrand `(sin²θ + (n-1)cos²θ) sin^{α+n-2}θ cos^{-α}θ` has power
/// singularities at both ends; each half of `[0, π/2]` is mapped by
/// `u = w^p` so that the transformed integrand is bounded.
pub fn jn_quadrature(n: usize, alpha: f64) -> Result<f64> {
    check_dim(n)?;
    check_alpha(alpha)?;
    let nf = n as f64;
    let e = alpha + nf - 2.0;
    let integrand = move |sin: f64, cos: f64| (sin * sin + (nf - 1.0) * cos * cos) * sin.powf(e) * cos.powf(-alpha);
    // θ = w^p on [0, π/4], or π/2 - θ = w^p on [π/4, π/2]
    let piece = |p: f64, mirrored: bool| {
        let upper = (PI / 4.0).powf(1.0 / p);
        let f = move |w: f64| {
            if w <= 0.0 {
                return 0.0;
            }
            let (s, c) = w.powf(p).sin_cos();
            let value = if mirrored { integrand(c, s) } else { integrand(s, c) };
            value * p * w.powf(p - 1.0)
        };
        integrate_scalar(f, &[0.0, 0.5 * upper, upper], 1e-12, 20_000)
    };
    let top = piece(1.0 / (1.0 - alpha), true);
    let bottom = piece(if n == 2 { 1.0 / alpha } else { 1.0 }, false);
    if !(top.converged && bottom.converged) {
        return Err(Error::Accuracy { achieved: top.error[0] + bottom.error[0], target: 2e-12 });
    }
    let kernel_const = gamma(nf / 2.0)? / PI.powf(nf / 2.0);
    Ok(kernel_const * sphere_area(n - 2)? * (top.scalar() + bottom.scalar()))
}

/// Computes the [`JnBundle`] and enforces `exact ≤ gamma_bound ≤ final_bound`.
pub fn jn_bundle(n: usize, alpha: f64) -> Result<JnBundle> {
    check_dim(n)?;
    check_alpha(alpha)?;
    let nf = n as f64;
    let exact = jn_exact(n, alpha)?;
    let quadrature = jn_quadrature(n, alpha)?;
    let gamma_bound =
        2.0 * gamma((1.0 - alpha) / 2.0)? / PI.sqrt() * gamma_ratio(alpha / 2.0 + (nf - 1.0) / 2.0, (nf - 1.0) / 2.0)?;
    let final_bound = 4.0 * (nf - 1.0).sqrt() / (1.0 - alpha);
    let slack = 1e-8;
    if !(exact <= gamma_bound + slack && gamma_bound <= final_bound + slack) {
        return Err(domain(format!(
            "J_n ordering violated for n={n}, alpha={alpha}: {exact} <= {gamma_bound} <= {final_bound}"
        )));
    }
    Ok(JnBundle { n, alpha, exact, quadrature, gamma_bound, final_bound })
}

/// The fixed point `γ*` together with the residual of its defining equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaStar {
    pub n: usize,
    pub value: f64,
    /// `|2γK_n/(1-γ)^2 - 1/2|`
    pub residual: f64,
}

/// `γ* = K_n ((1 + 1/K_n)^{1/2} - 1)^2`, the root in `(0,1)` of `2γK_n/(1-γ)^2 = 1/2`.
pub fn gamma_star(n: usize) -> Result<GammaStar> {
    let k = k_n(n)?;
    let inv = 1.0 / k;
    let root_minus_one = inv / ((1.0 + inv).sqrt() + 1.0);
    let value = k * root_minus_one * root_minus_one;
    let residual = (2.0 * value * k / ((1.0 - value) * (1.0 - value)) - 0.5).abs();
    Ok(GammaStar { n, value, residual })
}

/// Both sides of `2 / (x ((1 + 1/x)^{1/2} - 1)^2) ≤ 13 x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ElementaryCheck {
    pub holds: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

pub fn elementary_13x_holds(x: f64) -> Result<ElementaryCheck> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(domain(format!("elementary inequality requires x > 1, got {x}")));
    }
    let inv = 1.0 / x;
    let d = inv / ((1.0 + inv).sqrt() + 1.0);
    let lhs = 2.0 / (x * d * d);
    let rhs = 13.0 * x;
    Ok(ElementaryCheck { holds: lhs <= rhs, lhs, rhs, slack: rhs - lhs })
}
