//! The Poisson kernel of the upper half-space and its derivatives.
//!
//! `P((x', x_n), t) = c_n x_n / (|x' - t|^2 + x_n^2)^{n/2}` with
//! `c_n = Γ(n/2) / π^{n/2}`. The dimension `n` is a runtime parameter and is
//! read off the point (`horizontal.len() + 1`).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::special::gamma;

/// A point `(x', x_n)` of the closed upper half-space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfSpacePoint {
    pub horizontal: Vec<f64>,
    pub height: f64,
}

impl HalfSpacePoint {
    pub fn new(horizontal: Vec<f64>, height: f64) -> Result<Self> {
        if !(height >= 0.0) || !height.is_finite() {
            return Err(domain(format!("height must be finite and non-negative, got {height}")));
        }
        if horizontal.iter().any(|v| !v.is_finite()) {
            return Err(domain("horizontal coordinates must be finite"));
        }
        Ok(Self { horizontal, height })
    }

    /// Splits a full coordinate vector `(x_1, ..., x_n)`.
    pub fn from_coords(coords: &[f64]) -> Result<Self> {
        match coords.split_last() {
            Some((&h, rest)) if !rest.is_empty() => Self::new(rest.to_vec(), h),
            _ => Err(domain("a half-space point needs at least two coordinates")),
        }
    }

    pub fn boundary(horizontal: Vec<f64>) -> Self {
        Self { horizontal, height: 0.0 }
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.horizontal.len() + 1
    }

    pub fn coords(&self) -> Vec<f64> {
        let mut v = self.horizontal.clone();
        v.push(self.height);
        v
    }

    pub fn is_interior(&self) -> bool {
        self.height > 0.0
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { horizontal: self.horizontal.iter().map(|v| v * s).collect(), height: self.height * s }
    }

    pub fn distance(&self, other: &Self) -> f64 {
        let dh: f64 = self.horizontal.iter().zip(&other.horizontal).map(|(a, b)| (a - b) * (a - b)).sum();
        (dh + (self.height - other.height).powi(2)).sqrt()
    }

    pub(crate) fn require_interior(&self) -> Result<()> {
        if self.height > 0.0 {
            Ok(())
        } else {
            Err(domain(format!("operation requires an interior point, got height {}", self.height)))
        }
    }
}

/// A unit vector in `R^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction(Vec<f64>);

impl Direction {
    /// Normalises `v`; fails for the zero vector.
    pub fn new(v: Vec<f64>) -> Result<Self> {
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(domain("direction must be a non-zero finite vector"));
        }
        Ok(Self(v.into_iter().map(|c| c / norm).collect()))
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    /// `<v, self>`
    pub fn project(&self, v: &[f64]) -> f64 {
        self.0.iter().zip(v).map(|(a, b)| a * b).sum()
    }
}

/// `Γ(n/2) / π^{n/2}`.
pub fn kernel_constant(n: usize) -> f64 {
    let h = n as f64 / 2.0;
    gamma(h).expect("n >= 1") / PI.powf(h)
}

fn check_shapes(x: &HalfSpacePoint, t: &[f64]) -> Result<()> {
    x.require_interior()?;
    if x.horizontal.is_empty() || t.len() != x.horizontal.len() {
        return Err(domain(format!(
            "boundary point has {} coordinates, expected {}",
            t.len(),
            x.horizontal.len()
        )));
    }
    Ok(())
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum()
}

/// `P(x, t)`.
pub fn kernel(x: &HalfSpacePoint, t: &[f64]) -> Result<f64> {
    check_shapes(x, t)?;
    let n = x.dim();
    let d2 = sq_dist(&x.horizontal, t) + x.height * x.height;
    Ok(kernel_constant(n) * x.height / d2.powf(n as f64 / 2.0))
}

/// `∂P/∂x_n (x, t) = c_n (|x'-t|^2 - (n-1) x_n^2) / (|x'-t|^2 + x_n^2)^{n/2+1}`.
pub fn kernel_dn(x: &HalfSpacePoint, t: &[f64]) -> Result<f64> {
    check_shapes(x, t)?;
    let n = x.dim();
    let r2 = sq_dist(&x.horizontal, t);
    let h2 = x.height * x.height;
    Ok(kernel_constant(n) * (r2 - (n as f64 - 1.0) * h2) / (r2 + h2).powf(n as f64 / 2.0 + 1.0))
}

/// Full spatial gradient `∇_x P(x, t)`; the last entry equals [`kernel_dn`].
pub fn kernel_grad(x: &HalfSpacePoint, t: &[f64]) -> Result<Vec<f64>> {
    check_shapes(x, t)?;
    let n = x.dim();
    let nf = n as f64;
    let r2 = sq_dist(&x.horizontal, t);
    let h2 = x.height * x.height;
    let c = kernel_constant(n);
    let den = (r2 + h2).powf(nf / 2.0 + 1.0);
    let mut g: Vec<f64> = x.horizontal.iter().zip(t).map(|(xi, ti)| -nf * x.height * (xi - ti) * c / den).collect();
    g.push(c * (r2 - (nf - 1.0) * h2) / den);
    Ok(g)
}

/// `∫_0^φ cos^m(θ) dθ` by the reduction formula.
fn cos_power_integral(m: usize, phi: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    match m {
        0 => phi,
        1 => s,
        _ => c.powi(m as i32 - 1) * s / m as f64 + (m as f64 - 1.0) / m as f64 * cos_power_integral(m - 2, phi),
    }
}

/// Kernel mass outside the ball `|t - x'| ≤ radius`:
/// `|S^{n-2}| c_n ∫_{θ_R}^{π/2} sin^{n-2} θ dθ` with `tan θ_R = radius / x_n`.
pub fn tail_mass(n: usize, height: f64, radius: f64) -> f64 {
    let phi = (height / radius).atan();
    let area = crate::special::sphere_area(n - 2).expect("small dimension");
    area * kernel_constant(n) * cos_power_integral(n - 2, phi)
}

/// `∫_{|t-x'| > radius} ∂_n P dt = |S^{n-2}| c_n R^{n-1} / (R^2 + x_n^2)^{n/2}`.
pub fn normal_tail(n: usize, height: f64, radius: f64) -> f64 {
    let area = crate::special::sphere_area(n - 2).expect("small dimension");
    let nf = n as f64;
    // R^{n-1}/(R^2+h^2)^{n/2} = (1/R) (1 + (h/R)^2)^{-n/2}
    area * kernel_constant(n) / radius * (1.0 + (height / radius).powi(2)).powf(-nf / 2.0)
}

/// Radial weight functions of the polar form of the extension integrals,
/// with their closed-form tails beyond a radius `R`.
///
/// With `u = t - x' = ρ ω`, the kernel, its normal derivative and its
/// tangential gradient become `w(ρ) ρ^{n-2} dρ dω` with:
/// - value: `c_n x_n ρ^{n-2} / (ρ^2 + x_n^2)^{n/2}`
/// - normal: `c_n (ρ^2 - (n-1) x_n^2) ρ^{n-2} / (ρ^2 + x_n^2)^{n/2+1}`
/// - tangential (multiplies `ω`): `n c_n x_n ρ^{n-1} / (ρ^2 + x_n^2)^{n/2+1}`
#[derive(Debug, Clone, Copy)]
pub(crate) struct RadialWeights {
    pub n: usize,
    pub height: f64,
    pub c: f64,
}

/// Value of a monotone weight at `R` and its integral over `[R, ∞)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TailWeight {
    pub at_radius: f64,
    pub mass: f64,
}

impl RadialWeights {
    pub fn new(n: usize, height: f64) -> Self {
        Self { n, height, c: kernel_constant(n) }
    }

    #[inline]
    pub fn all(&self, rho: f64) -> [f64; 3] {
        let nf = self.n as f64;
        let h2 = self.height * self.height;
        let d = rho * rho + h2;
        let rp = rho.powi(self.n as i32 - 2);
        let base = self.c * rp / d.powf(nf / 2.0);
        [
            base * self.height,
            base * (rho * rho - (nf - 1.0) * h2) / d,
            nf * self.height * base * rho / d,
        ]
    }

    /// Radius past which all three weights are positive and decreasing.
    pub fn monotone_from(&self) -> f64 {
        8.0 * self.height
    }

    pub fn tails(&self, radius: f64) -> [TailWeight; 3] {
        let w = self.all(radius);
        let area = crate::special::sphere_area(self.n - 2).expect("small dimension");
        let nf = self.n as f64;
        let ratio = self.height / radius;
        // 1 - sin^n θ_R with sin θ_R = R / sqrt(R^2 + h^2)
        let one_minus_sin_n = -(-0.5 * nf * (ratio * ratio).ln_1p()).exp_m1();
        [
            TailWeight { at_radius: w[0], mass: tail_mass(self.n, self.height, radius) / area },
            TailWeight { at_radius: w[1], mass: normal_tail(self.n, self.height, radius) / area },
            TailWeight { at_radius: w[2], mass: self.c / self.height * one_minus_sin_n },
        ]
    }

    /// `∫_0^∞ |w| dρ` for each weight.
    pub fn l1_norms(&self) -> [f64; 3] {
        let nf = self.n as f64;
        let area = crate::special::sphere_area(self.n - 2).expect("small dimension");
        let normal = 2.0 * self.c * (0.5 * (nf - 1.0) * (nf - 1.0).ln() - 0.5 * nf * nf.ln()).exp() / self.height;
        [1.0 / area, normal, self.c / self.height]
    }
}
