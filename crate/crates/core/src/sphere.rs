//! Quadrature on the unit spheres `S^0`, `S^1`, `S^2`.
//!
//! [`SphereRule`] is a general point/weight rule (two points, trapezoid on the
//! circle, product Gauss on `S^2`). [`zonal_moments`] integrates functions
//! that depend on a single coordinate `s = <ω, e>` and is what the extension
//! quadrature uses: such integrals reduce to one dimension exactly.

use std::f64::consts::PI;

use crate::quadrature::{integrate, GaussLegendre};

/// Nodes and weights on `S^d ⊂ R^{d+1}`; weights sum to the surface area.
#[derive(Debug, Clone)]
pub struct SphereRule {
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl SphereRule {
    /// `{-1, +1}` with unit weights.
    pub fn s0() -> Self {
        Self { points: vec![vec![-1.0], vec![1.0]], weights: vec![1.0, 1.0] }
    }

    /// `m`-point trapezoid rule on the circle; exact for trigonometric degree `< m`.
    pub fn circle(m: usize) -> Self {
        let m = m.max(1);
        let points = (0..m)
            .map(|j| {
                let t = 2.0 * PI * j as f64 / m as f64;
                vec![t.cos(), t.sin()]
            })
            .collect();
        Self { points, weights: vec![2.0 * PI / m as f64; m] }
    }

    /// Gauss–Legendre in `cos θ` (`p` nodes) times a `2p`-point trapezoid in
    /// azimuth; exact for polynomials of degree `≤ 2p - 1`.
    pub fn product_gauss(p: usize) -> Self {
        let g = GaussLegendre::new(p.max(1));
        let m = 2 * g.len();
        let mut points = Vec::with_capacity(g.len() * m);
        let mut weights = Vec::with_capacity(g.len() * m);
        for (z, w) in g.nodes.iter().zip(&g.weights) {
            let r = (1.0 - z * z).max(0.0).sqrt();
            for j in 0..m {
                let phi = 2.0 * PI * j as f64 / m as f64;
                points.push(vec![r * phi.cos(), r * phi.sin(), *z]);
                weights.push(w * 2.0 * PI / m as f64);
            }
        }
        Self { points, weights }
    }

    /// A rule on `S^{dim-1}` with roughly `target` points.
    pub fn for_dimension(dim: usize, target: usize) -> Option<Self> {
        match dim {
            1 => Some(Self::s0()),
            2 => Some(Self::circle(target)),
            3 => Some(Self::product_gauss(((target as f64 / 2.0).sqrt().round() as usize).max(1))),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn integrate<F: FnMut(&[f64]) -> f64>(&self, mut f: F) -> f64 {
        self.points.iter().zip(&self.weights).map(|(p, w)| w * f(p)).sum()
    }
}

/// `[∫ F(<ω,e>) dω, ∫ F(<ω,e>) <ω,e> dω]` over `S^{n-2}`, with an error estimate.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ZonalMoments {
    pub g: [f64; 2],
    pub error: f64,
    pub converged: bool,
}

/// How the one-dimensional zonal integral should be computed.
#[derive(Debug, Clone)]
pub(crate) enum ZonalShape {
    /// Smooth profile; `bandwidth` is the approximate angular frequency.
    Smooth { bandwidth: f64 },
    /// Piecewise smooth with kinks or jumps at these values of `s` in `(-1, 1)`.
    Kinks(Vec<f64>),
}

const MAX_TRAPEZOID_LEVEL: u32 = 22;
const MAX_GAUSS_LEVEL: usize = 11;

fn initial_level(bandwidth: f64, base: f64) -> u32 {
    let need = 0.55 * bandwidth + 4.0 * bandwidth.cbrt() + base;
    (need.max(8.0).log2().ceil() as u32).min(MAX_TRAPEZOID_LEVEL)
}

/// Integrates a zonal profile `F(s)` against `1` and `s` over `S^{n-2}`:
/// - `n = 2`: `F(1) ± F(-1)`
/// - `n = 3`: `2 ∫_0^π F(cos ψ) cos^m ψ dψ`
/// - `n = 4`: `2π ∫_{-1}^{1} F(s) s^m ds`
pub(crate) fn zonal_moments<F: FnMut(f64) -> f64>(n: usize, mut f: F, shape: &ZonalShape, tol: f64) -> ZonalMoments {
    match n {
        2 => {
            let (a, b) = (f(1.0), f(-1.0));
            ZonalMoments { g: [a + b, a - b], error: 0.0, converged: true }
        }
        3 => match shape {
            ZonalShape::Smooth { bandwidth } => circle_trapezoid(&mut f, *bandwidth, tol),
            ZonalShape::Kinks(s) => {
                let mut breaks: Vec<f64> = s.iter().filter(|v| v.abs() < 1.0).map(|v| v.acos()).collect();
                breaks.push(0.0);
                breaks.push(PI);
                adaptive(|psi: f64| psi.cos(), 2.0, &mut f, breaks, tol)
            }
        },
        4 => match shape {
            ZonalShape::Smooth { bandwidth } => legendre(&mut f, *bandwidth, tol),
            ZonalShape::Kinks(s) => {
                let mut breaks: Vec<f64> = s.iter().copied().filter(|v| v.abs() < 1.0).collect();
                breaks.push(-1.0);
                breaks.push(1.0);
                adaptive(|s: f64| s, 2.0 * PI, &mut f, breaks, tol)
            }
        },
        _ => unreachable!("zonal reduction is only used for n in 2..=4"),
    }
}

// Trapezoid on [0, π] for the even periodic function ψ ↦ F(cos ψ); halving
// the step reuses the previous nodes.
fn circle_trapezoid<F: FnMut(f64) -> f64>(f: &mut F, bandwidth: f64, tol: f64) -> ZonalMoments {
    let mut level = initial_level(bandwidth, 8.0);
    let mut m = 1usize << level;
    let mut sum = [0.0; 2];
    let mut add = |sum: &mut [f64; 2], psi: f64, w: f64| {
        let c = psi.cos();
        let v = f(c);
        sum[0] += w * v;
        sum[1] += w * v * c;
    };
    add(&mut sum, 0.0, 0.5);
    add(&mut sum, PI, 0.5);
    for j in 1..m {
        add(&mut sum, PI * j as f64 / m as f64, 1.0);
    }
    let scale = |sum: &[f64; 2], m: usize| [2.0 * PI / m as f64 * sum[0], 2.0 * PI / m as f64 * sum[1]];
    let mut prev = scale(&sum, m);
    loop {
        let m2 = 2 * m;
        for j in (1..m2).step_by(2) {
            add(&mut sum, PI * j as f64 / m2 as f64, 1.0);
        }
        let cur = scale(&sum, m2);
        let error = (cur[0] - prev[0]).abs().max((cur[1] - prev[1]).abs());
        level += 1;
        m = m2;
        if error <= tol || level >= MAX_TRAPEZOID_LEVEL {
            return ZonalMoments { g: cur, error, converged: error <= tol };
        }
        prev = cur;
    }
}

fn legendre<F: FnMut(f64) -> f64>(f: &mut F, bandwidth: f64, tol: f64) -> ZonalMoments {
    let mut level = (initial_level(bandwidth, 12.0).saturating_sub(4)) as usize;
    let mut rule = |level: usize| {
        let g = GaussLegendre::cached(level);
        let mut acc = [0.0; 2];
        for (s, w) in g.nodes.iter().zip(&g.weights) {
            let v = f(*s);
            acc[0] += w * v;
            acc[1] += w * v * s;
        }
        [2.0 * PI * acc[0], 2.0 * PI * acc[1]]
    };
    let mut prev = rule(level.min(MAX_GAUSS_LEVEL));
    loop {
        level += 1;
        let cur = rule(level.min(MAX_GAUSS_LEVEL));
        let error = (cur[0] - prev[0]).abs().max((cur[1] - prev[1]).abs());
        if error <= tol || level >= MAX_GAUSS_LEVEL {
            return ZonalMoments { g: cur, error, converged: error <= tol };
        }
        prev = cur;
    }
}

fn adaptive<F: FnMut(f64) -> f64>(
    to_s: impl Fn(f64) -> f64,
    factor: f64,
    f: &mut F,
    mut breaks: Vec<f64>,
    tol: f64,
) -> ZonalMoments {
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let t = tol / factor;
    let r = integrate(
        |u| {
            let s = to_s(u);
            let v = f(s);
            [v, v * s]
        },
        &breaks,
        [t, t],
        4000,
    );
    ZonalMoments {
        g: [factor * r.value[0], factor * r.value[1]],
        error: factor * r.error[0].max(r.error[1]),
        converged: r.converged,
    }
}
