//! Circular arcs orthogonal to a ball inside the half-space, and the
//! integral of `d(z, ∂R^n_+)^{α-1}` along them.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::poisson::HalfSpacePoint;
use crate::quadrature::integrate_scalar;

/// Margin applied to the smallest admissible ball height.
pub const BALL_MARGIN: f64 = 1.05;
const ARC_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcKind {
    /// `x = y`
    Degenerate,
    /// `x`, `y` and the ball centre are collinear; the arc is the segment
    Segment,
    Circle,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArcIntegral {
    /// `∫_γ z_n^{α-1} |dz|`
    pub value: f64,
    /// `π / (α 2^α) · |x - y|^α`
    pub bound: f64,
    pub kind: ArcKind,
    /// ball `B(z, r)` with `z = ((x'+y')/2, r)`, tangent to the boundary
    pub ball_center: Vec<f64>,
    pub ball_radius: f64,
    pub circle_center: Option<Vec<f64>>,
    pub circle_radius: Option<f64>,
    /// signed opening angle of the arc
    pub sweep: f64,
    pub length: f64,
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(p, q)| p - q).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `π / (α 2^α)`.
pub fn arc_constant(alpha: f64) -> f64 {
    PI / (alpha * 2f64.powf(alpha))
}

/// `∫_0^L (a + (b-a) s/L)^{α-1} ds` for the straight segment between heights `a` and `b`.
fn segment_integral(a: f64, b: f64, length: f64, alpha: f64) -> f64 {
    if (b - a).abs() <= 1e-12 * a.max(b) {
        return length * (0.5 * (a + b)).powf(alpha - 1.0);
    }
    length / (b - a) * (b.powf(alpha) - a.powf(alpha)) / alpha
}

/// Integrates `z_n^{α-1}` along the arc from `x` to `y` of the circle through
/// both points that meets the sphere `∂B(z, r)` orthogonally.
///
/// The ball is centred above the horizontal midpoint and tangent to the
/// boundary; its radius is the smallest one containing both points, times
/// [`BALL_MARGIN`]. A circle through `x` is orthogonal to `∂B` iff it also
/// passes through the inverse point `x* = z + r^2 (x - z)/|x - z|^2`, so the
/// circle is the one through `x`, `y`, `x*`, and the arc is the one between
/// `x` and `y` that avoids `x*` (it stays inside `B`).
pub fn arc_integral(x: &HalfSpacePoint, y: &HalfSpacePoint, alpha: f64) -> Result<ArcIntegral> {
    crate::boundary::check_alpha(alpha)?;
    if x.dim() != y.dim() {
        return Err(domain("points have different dimensions"));
    }
    x.require_interior()?;
    y.require_interior()?;
    let bound = arc_constant(alpha) * x.distance(y).powf(alpha);
    let (px, py) = (x.coords(), y.coords());
    let n = px.len();
    let mid: Vec<f64> = x.horizontal.iter().zip(&y.horizontal).map(|(a, b)| 0.5 * (a + b)).collect();
    // |p - z| < c  <=>  |p' - m|^2 + p_n^2 < 2 c p_n
    let need = |p: &HalfSpacePoint| {
        let d2: f64 = p.horizontal.iter().zip(&mid).map(|(a, b)| (a - b) * (a - b)).sum();
        (d2 + p.height * p.height) / (2.0 * p.height)
    };
    let r = BALL_MARGIN * need(x).max(need(y));
    let mut z = mid.clone();
    z.push(r);

    let length = x.distance(y);
    if length == 0.0 {
        return Ok(ArcIntegral {
            value: 0.0,
            bound,
            kind: ArcKind::Degenerate,
            ball_center: z,
            ball_radius: r,
            circle_center: None,
            circle_radius: None,
            sweep: 0.0,
            length: 0.0,
        });
    }
    let segment = |z: Vec<f64>| ArcIntegral {
        value: segment_integral(x.height, y.height, length, alpha),
        bound,
        kind: ArcKind::Segment,
        ball_center: z,
        ball_radius: r,
        circle_center: None,
        circle_radius: None,
        sweep: 0.0,
        length,
    };

    // invert whichever point is farther from the centre
    let anchor = if norm(&sub(&px, &z)) >= norm(&sub(&py, &z)) { &px } else { &py };
    let az = sub(anchor, &z);
    let inv: Vec<f64> = z.iter().zip(&az).map(|(c, v)| c + r * r * v / dot(&az, &az)).collect();

    // plane frame at `x`: e1 towards y, e2 towards the inverse point
    let e1: Vec<f64> = sub(&py, &px).iter().map(|v| v / length).collect();
    let w = sub(&inv, &px);
    let p = dot(&w, &e1);
    let w_perp: Vec<f64> = w.iter().zip(&e1).map(|(a, b)| a - p * b).collect();
    let q = norm(&w_perp);
    if q <= 1e-12 * norm(&w).max(length) {
        return Ok(segment(z));
    }
    let e2: Vec<f64> = w_perp.iter().map(|v| v / q).collect();
    // frame coordinates: x = (0, 0), y = (L, 0), inverse point = (p, q)
    let (ip, iq) = (p, q);
    let k = (ip * ip + iq * iq - length * ip) / (2.0 * iq);
    let (cx, cy) = (0.5 * length, k);
    let rho = (cx * cx + cy * cy).sqrt();
    let tau = 2.0 * PI;
    let wrap = |t: f64| t.rem_euclid(tau);
    let tx = (-cy).atan2(-cx);
    let ty = (-cy).atan2(length - cx);
    let ts = (iq - cy).atan2(ip - cx);
    let ccw = wrap(ty - tx);
    let sweep = if wrap(ts - tx) < ccw { ccw - tau } else { ccw };

    let height = |t: f64| {
        let th = tx + t * sweep;
        let (u, v) = (cx + rho * th.cos(), cy + rho * th.sin());
        px[n - 1] + u * e1[n - 1] + v * e2[n - 1]
    };
    let scale = rho * sweep.abs();
    let integral = integrate_scalar(
        |t| {
            let h = height(t);
            scale * h.powf(alpha - 1.0)
        },
        &[0.0, 0.25, 0.5, 0.75, 1.0],
        ARC_TOL,
        4000,
    );
    if !integral.converged {
        return Err(Error::Accuracy { achieved: integral.error[0], target: ARC_TOL });
    }
    let center: Vec<f64> = (0..n).map(|i| px[i] + cx * e1[i] + cy * e2[i]).collect();
    Ok(ArcIntegral {
        value: integral.scalar(),
        bound,
        kind: ArcKind::Circle,
        ball_center: z,
        ball_radius: r,
        circle_center: Some(center),
        circle_radius: Some(rho),
        sweep,
        length: scale,
    })
}
