//! Poisson extension `U(x) = ∫ P(x, t) f(t) dt` and its gradient.
//!
//! Closed forms are used where they exist (constants, plane waves,
//! half-space sign data, translated kernels); everything else goes through
//! polar quadrature around `x'`:
//!
//! `U(x) = f_∞ + ∫_0^∞ w(ρ) ∫_{S^{n-2}} (f(x' + ρω) - f_∞) dω dρ`
//!
//! The sphere integral is one-dimensional for every family (the data depend
//! on `ω` through a single inner product), the radial integral is adaptive
//! Gauss–Kronrod on a geometric partition, and the part beyond the
//! truncation radius is bounded by a family-specific certified estimate.

use std::f64::consts::PI;

use serde::Serialize;

use crate::boundary::{BoundaryData, Component, Family};
use crate::error::{domain, Error, Result};
use crate::poisson::{kernel, kernel_dn, normal_tail, tail_mass, HalfSpacePoint, RadialWeights};
use crate::quadrature::integrate;
use crate::special::sphere_area;
use crate::sphere::{zonal_moments, SphereRule};

/// Heights below this are treated as boundary points by quadrature.
pub const CLAMP_HEIGHT: f64 = 1e-8;
/// Truncation radii are never pushed beyond this.
const MAX_RADIUS: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    /// target absolute error of each returned component
    pub abs_tol: f64,
    /// bisections allowed in the radial integral
    pub max_refinements: usize,
    /// share of `abs_tol` allotted to the truncated tail; must be below 1/2
    pub tail_fraction: f64,
    /// integrate data of the form `g(<e, t>)` against the 2-D kernel in the
    /// variable `<e, t>` (the line marginal of the Poisson kernel is the
    /// Cauchy kernel); when false such data goes through the full polar rule,
    /// whose oscillatory tail makes tight tolerances very expensive for n > 2.
    /// Periodic line data is further folded onto one period against the
    /// periodised Cauchy kernel, which leaves no tail at all
    pub reduce_planar: bool,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { abs_tol: 1e-8, max_refinements: 200_000, tail_fraction: 0.25, reduce_planar: true }
    }
}

impl QuadratureSpec {
    pub fn with_tol(abs_tol: f64) -> Self {
        Self { abs_tol, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(domain(format!("abs_tol must be positive, got {}", self.abs_tol)));
        }
        if !(self.tail_fraction > 0.0 && self.tail_fraction < 0.5) {
            return Err(domain(format!("tail_fraction must lie in (0, 1/2), got {}", self.tail_fraction)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm,
    Quadrature,
}

/// One evaluation of `U` (and optionally `∇U`) with its error estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    /// `(∂_1 U, ..., ∂_n U)`; absent on the boundary
    pub gradient: Option<Vec<f64>>,
    /// bound on the absolute error of each component
    pub error: f64,
    /// the point was below [`CLAMP_HEIGHT`] and evaluated on the boundary
    pub clamped: bool,
}

/// A bounded harmonic function on `R^n_+`, continuous up to the boundary
/// where its data are.
pub trait Harmonic: Sync {
    fn dim(&self) -> usize;
    fn sup_bound(&self) -> f64;
    fn boundary_value(&self, t: &[f64]) -> f64;
    fn evaluate(&self, x: &HalfSpacePoint, with_gradient: bool) -> Result<Evaluation>;
    /// Absolute accuracy of [`Harmonic::evaluate`] (0 for closed forms).
    fn tolerance(&self) -> f64;

    fn value(&self, x: &HalfSpacePoint) -> Result<f64> {
        if x.height == 0.0 {
            return Ok(self.boundary_value(&x.horizontal));
        }
        Ok(self.evaluate(x, false)?.value)
    }
}

/// Poisson extension of a [`BoundaryData`].
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicFn {
    pub data: BoundaryData,
    pub provenance: Provenance,
    pub spec: QuadratureSpec,
}

pub fn has_closed_form(data: &BoundaryData) -> bool {
    matches!(
        data.family,
        Family::Constant { .. } | Family::Cosine { clip: None, .. } | Family::Sign { .. } | Family::KernelTranslate { .. }
    )
}

impl HarmonicFn {
    /// Closed form when available, quadrature with the default spec otherwise.
    pub fn new(data: BoundaryData) -> Result<Self> {
        if has_closed_form(&data) {
            Self::closed_form(data)
        } else {
            Self::quadrature(data, QuadratureSpec::default())
        }
    }

    pub fn closed_form(data: BoundaryData) -> Result<Self> {
        if !has_closed_form(&data) {
            return Err(Error::Capability(format!("no closed form for {} data", data.name())));
        }
        Ok(Self { data, provenance: Provenance::ClosedForm, spec: QuadratureSpec::default() })
    }

    pub fn quadrature(data: BoundaryData, spec: QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        if !(2..=4).contains(&data.n) {
            return Err(Error::Capability(format!("quadrature supports n in 2..=4, got {}", data.n)));
        }
        Ok(Self { data, provenance: Provenance::Quadrature, spec })
    }

    pub fn n(&self) -> usize {
        self.data.n
    }
}

impl Harmonic for HarmonicFn {
    fn dim(&self) -> usize {
        self.data.n
    }

    fn sup_bound(&self) -> f64 {
        self.data.sup_bound()
    }

    fn boundary_value(&self, t: &[f64]) -> f64 {
        self.data.value(t)
    }

    fn evaluate(&self, x: &HalfSpacePoint, with_gradient: bool) -> Result<Evaluation> {
        if x.dim() != self.data.n {
            return Err(domain(format!("point has dimension {}, data has {}", x.dim(), self.data.n)));
        }
        if !(x.height >= 0.0) {
            return Err(domain(format!("height must be non-negative, got {}", x.height)));
        }
        if x.height == 0.0 {
            return Ok(Evaluation { value: self.data.value(&x.horizontal), gradient: None, error: 0.0, clamped: false });
        }
        match self.provenance {
            Provenance::ClosedForm => Ok(closed_form(&self.data, x)),
            Provenance::Quadrature => {
                if x.height < CLAMP_HEIGHT {
                    log::debug!("height {} below {CLAMP_HEIGHT:e}; using the boundary value", x.height);
                    return Ok(Evaluation {
                        value: self.data.value(&x.horizontal),
                        gradient: None,
                        error: self.spec.abs_tol,
                        clamped: true,
                    });
                }
                let periodic = matches!(self.data.family, Family::Cosine { .. });
                if self.spec.reduce_planar && (self.data.n > 2 || periodic) {
                    if let Some((line, e)) = planar_reduction(&self.data)? {
                        let s = e.iter().zip(&x.horizontal).map(|(a, b)| a * b).sum::<f64>();
                        let x2 = HalfSpacePoint::new(vec![s], x.height)?;
                        let mut ev = if periodic {
                            periodic_line_rule(&line, &x2, &self.spec, with_gradient)?
                        } else {
                            polar_quadrature(&line, &x2, &self.spec, with_gradient)?
                        };
                        ev.gradient = ev.gradient.map(|g| {
                            let mut full: Vec<f64> = e.iter().map(|a| a * g[0]).collect();
                            full.push(g[1]);
                            full
                        });
                        return Ok(ev);
                    }
                }
                polar_quadrature(&self.data, x, &self.spec, with_gradient)
            }
        }
    }

    fn tolerance(&self) -> f64 {
        match self.provenance {
            Provenance::ClosedForm => 0.0,
            Provenance::Quadrature => self.spec.abs_tol,
        }
    }
}

/// `U(x)`.
pub fn extend<H: Harmonic + ?Sized>(u: &H, x: &HalfSpacePoint) -> Result<f64> {
    u.value(x)
}

/// `∇U(x)`; requires an interior point.
pub fn extend_gradient<H: Harmonic + ?Sized>(u: &H, x: &HalfSpacePoint) -> Result<Vec<f64>> {
    x.require_interior()?;
    u.evaluate(x, true)?
        .gradient
        .ok_or_else(|| domain(format!("no gradient at height {} (boundary-clamped)", x.height)))
}

fn closed_form(data: &BoundaryData, x: &HalfSpacePoint) -> Evaluation {
    let n = data.n;
    let h = x.height;
    let xh = &x.horizontal;
    let (value, gradient) = match &data.family {
        Family::Constant { value } => (*value, vec![0.0; n]),
        Family::Cosine { wave, phase, amplitude, offset, clip: None } => {
            let kappa = wave.iter().map(|k| k * k).sum::<f64>().sqrt();
            let arg: f64 = wave.iter().zip(xh).map(|(k, v)| k * v).sum::<f64>() + phase;
            let decay = amplitude * (-kappa * h).exp();
            let mut g: Vec<f64> = wave.iter().map(|k| -decay * arg.sin() * k).collect();
            g.push(-kappa * decay * arg.cos());
            (offset + decay * arg.cos(), g)
        }
        Family::Sign { axis } => {
            let a: f64 = axis.iter().zip(xh).map(|(e, v)| e * v).sum();
            let d = a * a + h * h;
            let mut g: Vec<f64> = axis.iter().map(|e| 2.0 / PI * h / d * e).collect();
            g.push(-2.0 / PI * a / d);
            (2.0 / PI * (a / h).atan(), g)
        }
        Family::KernelTranslate { pole, depth, scale } => {
            let nf = n as f64;
            let big_h = h + depth;
            let r2: f64 = xh.iter().zip(pole).map(|(a, b)| (a - b) * (a - b)).sum();
            let d = r2 + big_h * big_h;
            let pre = scale * depth.powf(nf - 1.0);
            let mut g: Vec<f64> =
                xh.iter().zip(pole).map(|(a, b)| -nf * pre * big_h * (a - b) / d.powf(nf / 2.0 + 1.0)).collect();
            g.push(pre * (r2 - (nf - 1.0) * big_h * big_h) / d.powf(nf / 2.0 + 1.0));
            (pre * big_h / d.powf(nf / 2.0), g)
        }
        Family::Cosine { .. } | Family::ClippedPower { .. } | Family::GaussianBump { .. } => {
            unreachable!("closed-form provenance is only constructed for families that have one")
        }
    };
    Evaluation { value, gradient: Some(gradient), error: 0.0, clamped: false }
}

/// One-dimensional data `g` and unit `e` with `f(t) = g(<e, t>)`, if `f` has that form.
fn planar_reduction(data: &BoundaryData) -> Result<Option<(BoundaryData, Vec<f64>)>> {
    let norm = |v: &[f64]| v.iter().map(|c| c * c).sum::<f64>().sqrt();
    match &data.family {
        Family::Cosine { wave, phase, amplitude, offset, clip } => {
            let k = norm(wave);
            if k == 0.0 {
                return Ok(None);
            }
            let line = Family::Cosine { wave: vec![k], phase: *phase, amplitude: *amplitude, offset: *offset, clip: *clip };
            Ok(Some((BoundaryData::new(line, 2)?, wave.iter().map(|c| c / k).collect())))
        }
        Family::Sign { axis } => Ok(Some((BoundaryData::sign(2)?, axis.clone()))),
        _ => Ok(None),
    }
}

/// Line data `F(κt + phase)` with `F` 2π-periodic. Summing the Cauchy kernel
/// over translates gives the disc Poisson kernel in `φ = κ(x - t)`:
///
/// `U(x, h) = (1/2π) ∫_{-π}^{π} F(θ0 - φ) (1 - r²) / (1 - 2r cos φ + r²) dφ`,
/// `r = e^{-κh}`, `θ0 = κx + phase`.
fn periodic_line_rule(data: &BoundaryData, x: &HalfSpacePoint, spec: &QuadratureSpec, with_gradient: bool) -> Result<Evaluation> {
    let Family::Cosine { wave, phase, amplitude, offset, clip } = &data.family else {
        unreachable!("periodic rule is only used for cosine data")
    };
    let kappa = wave[0];
    let theta0 = kappa * x.horizontal[0] + phase;
    let profile = |theta: f64| {
        let v = offset + amplitude * theta.cos();
        match clip {
            Some(c) => v.clamp(-c, *c),
            None => v,
        }
    };
    let a = kappa * x.height;
    let r = (-a).exp();
    let f0 = profile(theta0);

    // kernel peak at φ = 0 has width ~a; clamp kinks sit at θ0 - φ = ±θc + 2πj
    let mut breaks = vec![-PI, 0.0, PI];
    let mut w = a;
    while w < PI {
        breaks.extend([-w, w]);
        w *= 2.0;
    }
    if let Some(c) = clip {
        for level in [-c, *c] {
            let q = (level - offset) / amplitude;
            if q.abs() < 1.0 {
                for base in [q.acos(), -q.acos()] {
                    let phi = (theta0 - base + PI).rem_euclid(2.0 * PI) - PI;
                    breaks.push(phi);
                }
            }
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let tol = 0.5 * spec.abs_tol;
    let one_minus_r2 = -(-2.0 * a).exp_m1();
    let integral = integrate(
        |phi: f64| {
            let (sin, cos) = phi.sin_cos();
            // 1 - 2r cos φ + r² = (1 - r)² + 2r(1 - cos φ), kept accurate near r = 1
            let d = (-a).exp_m1().powi(2) + 4.0 * r * (0.5 * phi).sin().powi(2);
            let p = one_minus_r2 / d;
            let fv = profile(theta0 - phi);
            if !with_gradient {
                return [fv * p / (2.0 * PI), 0.0, 0.0];
            }
            let g = fv - f0;
            let dphi = -2.0 * r * sin * one_minus_r2 / (d * d);
            let dr = (2.0 * (1.0 + r * r) * cos - 4.0 * r) / (d * d);
            [fv * p / (2.0 * PI), g * kappa * dphi / (2.0 * PI), -g * kappa * r * dr / (2.0 * PI)]
        },
        &breaks,
        if with_gradient { [tol; 3] } else { [tol, f64::INFINITY, f64::INFINITY] },
        spec.max_refinements + breaks.len(),
    );
    let k = if with_gradient { 3 } else { 1 };
    let error = integral.error[..k].iter().fold(0.0f64, |m, e| m.max(*e));
    if !integral.converged {
        return Err(Error::Accuracy { achieved: error, target: spec.abs_tol });
    }
    Ok(Evaluation {
        value: integral.value[0],
        gradient: with_gradient.then(|| vec![integral.value[1], integral.value[2]]),
        error,
        clamped: false,
    })
}

fn radial_partition(height: f64, radius: f64, family: &[f64], period: Option<f64>) -> Vec<f64> {
    let mut b = vec![0.0];
    let mut r = height / 4.0;
    while r < radius {
        b.push(r);
        r *= 2.0;
    }
    b.extend(family.iter().copied().filter(|v| *v < radius));
    b.push(radius);
    b.sort_by(f64::total_cmp);
    b.dedup();
    let Some(p) = period else { return b };
    let mut out = Vec::with_capacity(b.len() + (radius / p) as usize + 1);
    out.push(b[0]);
    for w in b.windows(2) {
        let pieces = ((w[1] - w[0]) / p).ceil().max(1.0) as usize;
        for k in 1..=pieces {
            out.push(w[0] + (w[1] - w[0]) * k as f64 / pieces as f64);
        }
    }
    out
}

fn polar_quadrature(data: &BoundaryData, x: &HalfSpacePoint, spec: &QuadratureSpec, with_gradient: bool) -> Result<Evaluation> {
    let n = data.n;
    let h = x.height;
    let zv = data.zonal(&x.horizontal);
    if zv.support_end() == Some(0.0) {
        return Ok(Evaluation { value: zv.far, gradient: with_gradient.then(|| vec![0.0; n]), error: 0.0, clamped: false });
    }
    let rw = RadialWeights::new(n, h);
    let area = sphere_area(n - 2)?;
    let l1 = rw.l1_norms();
    let tol = spec.abs_tol;
    let tail_tol = tol * spec.tail_fraction;
    let comps: &[(usize, Component)] = if with_gradient {
        &[(0, Component::Value), (1, Component::Normal), (2, Component::Tangential)]
    } else {
        &[(0, Component::Value)]
    };
    let inner_tol = 0.25 * tol / comps.iter().map(|(k, _)| l1[*k]).fold(0.0, f64::max);
    let g0 = zv.at_center();
    let centered = with_gradient && data.is_continuous();
    let family_breaks = zv.radial_breaks();

    let mut tails = [0.0; 3];
    let radius = match zv.support_end() {
        Some(end) => end,
        None => {
            let mut r = rw.monotone_from().max(family_breaks.iter().copied().fold(0.0, f64::max));
            loop {
                let tw = rw.tails(r);
                for (k, c) in comps {
                    tails[*k] = zv.tail_bound(*c, r, tw[*k]);
                }
                let worst = comps.iter().map(|(k, _)| tails[*k]).fold(0.0, f64::max);
                if worst <= tail_tol {
                    break r;
                }
                r *= 2.0;
                if r > MAX_RADIUS {
                    return Err(Error::Accuracy { achieved: worst + tol, target: tol });
                }
            }
        }
    };
    let breaks = radial_partition(h, radius, &family_breaks, zv.period());

    let mut inner_ok = true;
    let mut inner_error: f64 = 0.0;
    let mut tolerance = [f64::INFINITY; 3];
    for (k, _) in comps {
        tolerance[*k] = 0.25 * tol;
    }
    let integral = integrate(
        |rho: f64| {
            let w = rw.all(rho);
            let g = if n == 2 {
                let (a, b) = (zv.profile(rho, 1.0), zv.profile(rho, -1.0));
                [a + b, a - b]
            } else {
                let m = zonal_moments(n, |s| zv.profile(rho, s), &zv.shape(rho), inner_tol);
                inner_ok &= m.converged;
                inner_error = inner_error.max(m.error);
                m.g
            };
            if !with_gradient {
                return [w[0] * g[0], 0.0, 0.0];
            }
            let g_centred = if centered { g[0] - area * g0 } else { g[0] };
            [w[0] * g[0], w[1] * g_centred, w[2] * g[1]]
        },
        &breaks,
        tolerance,
        spec.max_refinements + breaks.len(),
    );
    let radial_error = comps.iter().map(|(k, _)| integral.error[*k]).fold(0.0, f64::max);
    if !integral.converged || !inner_ok {
        return Err(Error::Accuracy { achieved: radial_error + tails.iter().fold(0.0f64, |a, b| a.max(*b)), target: tol });
    }
    let inner = inner_error * comps.iter().map(|(k, _)| l1[*k]).fold(0.0, f64::max);
    let error = comps.iter().map(|(k, _)| integral.error[*k] + tails[*k]).fold(0.0, f64::max) + inner;
    let value = zv.far + integral.value[0];
    let gradient = with_gradient.then(|| {
        let mut g: Vec<f64> = zv.axis.iter().map(|a| a * integral.value[2]).collect();
        let mut dn = integral.value[1];
        if centered {
            dn -= area * g0 * rw.tails(radius)[1].mass;
        }
        g.push(dn);
        g
    });
    Ok(Evaluation { value, gradient, error, clamped: false })
}

/// `(∫ P(x, t) dt, ∫ ∂_n P(x, t) dt)` by polar quadrature of the kernel
/// itself: a sphere rule on `S^{n-2}`, adaptive radial integration to
/// `R = 100 x_n`, and the closed-form tails beyond.
pub fn kernel_mass(x: &HalfSpacePoint, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    spec.validate()?;
    x.require_interior()?;
    let n = x.dim();
    let rule = SphereRule::for_dimension(n - 1, 16)
        .ok_or_else(|| Error::Capability(format!("kernel_mass supports n in 2..=4, got {n}")))?;
    let h = x.height;
    let radius = 100.0 * h;
    let mut breaks = vec![0.0];
    let mut r = h / 4.0;
    while r < radius {
        breaks.push(r);
        r *= 2.0;
    }
    breaks.push(radius);
    let mut failure = None;
    let q = integrate(
        |rho: f64| {
            let mut acc = [0.0; 2];
            for (omega, w) in rule.points.iter().zip(&rule.weights) {
                let t: Vec<f64> = x.horizontal.iter().zip(omega).map(|(a, o)| a + rho * o).collect();
                match (kernel(x, &t), kernel_dn(x, &t)) {
                    (Ok(p), Ok(d)) => {
                        acc[0] += w * p;
                        acc[1] += w * d;
                    }
                    (Err(e), _) | (_, Err(e)) => failure = Some(e),
                }
            }
            let jac = rho.powi(n as i32 - 2);
            [acc[0] * jac, acc[1] * jac]
        },
        &breaks,
        [0.5 * spec.abs_tol, 0.5 * spec.abs_tol],
        spec.max_refinements,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    if !q.converged {
        return Err(Error::Accuracy { achieved: q.error[0].max(q.error[1]), target: spec.abs_tol });
    }
    Ok((q.value[0] + tail_mass(n, h, radius), q.value[1] + normal_tail(n, h, radius)))
}

/// Second-order central-difference Laplacian with step `step`.
pub fn laplacian_fd<H: Harmonic + ?Sized>(u: &H, x: &HalfSpacePoint, step: f64) -> Result<f64> {
    if !(step > 0.0) || !(x.height > 2.0 * step) {
        return Err(domain(format!("step {step} too large for height {}", x.height)));
    }
    let c = x.coords();
    let centre = u.value(x)?;
    let mut acc = 0.0;
    for i in 0..c.len() {
        let mut p = c.clone();
        let mut m = c.clone();
        p[i] += step;
        m[i] -= step;
        let up = u.value(&HalfSpacePoint::from_coords(&p)?)?;
        let um = u.value(&HalfSpacePoint::from_coords(&m)?)?;
        acc += up - 2.0 * centre + um;
    }
    Ok(acc / (step * step))
}

/// `U_s(x) = U(s x)`: the same harmonic function seen at a different scale.
pub struct Dilated<'a, H: Harmonic + ?Sized> {
    pub inner: &'a H,
    pub scale: f64,
}

impl<H: Harmonic + ?Sized> Harmonic for Dilated<'_, H> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn sup_bound(&self) -> f64 {
        self.inner.sup_bound()
    }

    fn boundary_value(&self, t: &[f64]) -> f64 {
        let st: Vec<f64> = t.iter().map(|v| v * self.scale).collect();
        self.inner.boundary_value(&st)
    }

    fn evaluate(&self, x: &HalfSpacePoint, with_gradient: bool) -> Result<Evaluation> {
        let mut e = self.inner.evaluate(&x.scaled(self.scale), with_gradient)?;
        if let Some(g) = e.gradient.as_mut() {
            g.iter_mut().for_each(|c| *c *= self.scale);
        }
        e.error *= if with_gradient { self.scale.max(1.0) } else { 1.0 };
        Ok(e)
    }

    fn tolerance(&self) -> f64 {
        self.inner.tolerance()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};

    fn pt(h: &[f64], xn: f64) -> HalfSpacePoint {
        HalfSpacePoint::new(h.to_vec(), xn).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let u = HarmonicFn::new(BoundaryData::cosine(2, vec![1.0]).unwrap()).unwrap();
        let e = u.evaluate(&pt(&[0.0], 1.0), true).unwrap();
        assert_relative_eq!(e.value, (-1.0f64).exp(), max_relative = 1e-15);
        let g = e.gradient.unwrap();
        assert_eq!(g[0], 0.0);
        assert_relative_eq!(g[1], -(-1.0f64).exp(), max_relative = 1e-15);
        let s = HarmonicFn::new(BoundaryData::sign(2).unwrap()).unwrap();
        assert_relative_eq!(extend(&s, &pt(&[1.0], 1.0)).unwrap(), 0.5, max_relative = 1e-15);
        let c = HarmonicFn::new(BoundaryData::constant(3, -2.5).unwrap()).unwrap();
        assert_eq!(extend(&c, &pt(&[3.0, 1.0], 0.2)).unwrap(), -2.5);
        assert_eq!(extend_gradient(&c, &pt(&[3.0, 1.0], 0.2)).unwrap(), vec![0.0; 3]);
        // boundary convention
        assert_eq!(extend(&u, &HalfSpacePoint::boundary(vec![PI])).unwrap(), -1.0);
        assert!(extend_gradient(&u, &HalfSpacePoint::boundary(vec![0.0])).is_err());
    }

    #[test]
    fn quadrature_rejects_unsupported_dimension() {
        let d = BoundaryData::gaussian(5, vec![0.0; 4], 1.0, 1.0).unwrap();
        assert!(matches!(HarmonicFn::new(d), Err(Error::Capability(_))));
        assert!(HarmonicFn::closed_form(BoundaryData::clipped_power(2, 1.0, 0.5).unwrap()).is_err());
    }

    #[test]
    fn kernel_mass_examples() {
        let spec = QuadratureSpec::with_tol(1e-10);
        for x in [pt(&[0.0], 1.0), pt(&[2.0, -1.0], 0.1), pt(&[0.0, 0.0, 0.0], 5.0)] {
            let (m, d) = kernel_mass(&x, &spec).unwrap();
            assert!((m - 1.0).abs() < 1e-8, "{m}");
            assert!(d.abs() < 1e-8, "{d}");
        }
    }

    #[test]
    fn quadrature_matches_closed_forms() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let spec = QuadratureSpec::with_tol(1e-7);
        let cases = vec![
            BoundaryData::cosine(2, vec![1.3]).unwrap(),
            BoundaryData::cosine(3, vec![0.6, -0.8]).unwrap(),
            BoundaryData::cosine(4, vec![0.2, 0.5, -0.4]).unwrap(),
            BoundaryData::sign(2).unwrap(),
            BoundaryData::sign(3).unwrap(),
            BoundaryData::kernel_translate(3, vec![0.3, 0.1], 0.8, 1.5).unwrap(),
            BoundaryData::kernel_translate(2, vec![-0.4], 0.5, 1.0).unwrap(),
        ];
        for d in cases {
            let exact = HarmonicFn::closed_form(d.clone()).unwrap();
            let quad = HarmonicFn::quadrature(d.clone(), spec).unwrap();
            for _ in 0..6 {
                let xh: Vec<f64> = (0..d.n - 1).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let x = pt(&xh, 10f64.powf(rng.gen_range(-1.5..0.0)));
                let a = exact.evaluate(&x, true).unwrap();
                let b = quad.evaluate(&x, true).unwrap();
                assert!((a.value - b.value).abs() < 2e-7, "{} at {x:?}: {} vs {}", d.name(), a.value, b.value);
                for (p, q) in a.gradient.unwrap().iter().zip(b.gradient.unwrap()) {
                    assert!((p - q).abs() < 2e-7, "{} gradient at {x:?}: {p} vs {q}", d.name());
                }
            }
        }
    }

    #[test]
    fn full_polar_rule_on_planar_data() {
        let spec = QuadratureSpec { reduce_planar: false, ..QuadratureSpec::with_tol(1e-4) };
        for d in [BoundaryData::cosine(3, vec![0.6, -0.8]).unwrap(), BoundaryData::sign(3).unwrap()] {
            let exact = HarmonicFn::closed_form(d.clone()).unwrap();
            let quad = HarmonicFn::quadrature(d.clone(), spec).unwrap();
            let x = pt(&[0.4, -0.7], 0.5);
            let a = exact.evaluate(&x, true).unwrap();
            let b = quad.evaluate(&x, true).unwrap();
            assert!((a.value - b.value).abs() < 2e-4, "{}: {} vs {}", d.name(), a.value, b.value);
            for (p, q) in a.gradient.unwrap().iter().zip(b.gradient.unwrap()) {
                assert!((p - q).abs() < 2e-4, "{}: {p} vs {q}", d.name());
            }
        }
    }

    #[test]
    fn periodic_rule_matches_polar_rule_on_clipped_waves() {
        let d = BoundaryData::new(
            Family::Cosine { wave: vec![2.0], phase: 0.3, amplitude: 1.5, offset: 0.4, clip: Some(1.0) },
            2,
        )
        .unwrap();
        let line = HarmonicFn::quadrature(d.clone(), QuadratureSpec::with_tol(1e-10)).unwrap();
        let polar = HarmonicFn::quadrature(d, QuadratureSpec { reduce_planar: false, ..QuadratureSpec::with_tol(1e-7) }).unwrap();
        for (xh, h) in [(0.1, 0.05), (-0.4, 0.7), (1.3, 3.0)] {
            let x = pt(&[xh], h);
            let a = line.evaluate(&x, true).unwrap();
            let b = polar.evaluate(&x, true).unwrap();
            assert!((a.value - b.value).abs() < 1e-6, "{h}: {} vs {}", a.value, b.value);
            for (p, q) in a.gradient.unwrap().iter().zip(b.gradient.unwrap()) {
                assert!((p - q).abs() < 1e-6, "{h}: {p} vs {q}");
            }
        }
    }

    #[test]
    fn far_and_near_evaluations() {
        let spec = QuadratureSpec::with_tol(1e-9);
        let d = BoundaryData::gaussian(2, vec![0.0], 1.0, 1.0).unwrap();
        let u = HarmonicFn::quadrature(d, spec).unwrap();
        // 1-D Gaussian extension at the origin axis: ∫ P e^{-t^2} dt = e^{h^2} erfc(h)
        let x = pt(&[0.0], 1.0);
        let v = extend(&u, &x).unwrap();
        assert_relative_eq!(v, 1.0f64.exp() * 0.157_299_207_050_285_13, max_relative = 1e-9);
        let clamped = u.evaluate(&pt(&[0.3], 1e-9), true).unwrap();
        assert!(clamped.clamped && clamped.gradient.is_none());
        assert_relative_eq!(clamped.value, (-0.09f64).exp(), max_relative = 1e-15);
    }

    #[test]
    fn laplacian_budgets() {
        let cos = HarmonicFn::new(BoundaryData::cosine(3, vec![1.0, 0.5]).unwrap()).unwrap();
        assert!(laplacian_fd(&cos, &pt(&[0.3, 0.2], 0.7), 1e-3).unwrap().abs() <= 1e-5);
        let sign = HarmonicFn::new(BoundaryData::sign(2).unwrap()).unwrap();
        assert!(laplacian_fd(&sign, &pt(&[1.0], 1.0), 1e-3).unwrap().abs() <= 1e-5);
        let g = HarmonicFn::quadrature(BoundaryData::gaussian(2, vec![0.0], 1.0, 1.0).unwrap(), QuadratureSpec::with_tol(1e-10))
            .unwrap();
        assert!(laplacian_fd(&g, &pt(&[0.0], 1.0), 1e-2).unwrap().abs() <= 1e-3);
        assert!(laplacian_fd(&g, &pt(&[0.0], 1.0), 0.6).is_err());
    }

    #[test]
    fn dilation_wrapper() {
        let u = HarmonicFn::new(BoundaryData::cosine(2, vec![1.0]).unwrap()).unwrap();
        let d = Dilated { inner: &u, scale: 2.0 };
        let x = pt(&[0.3], 0.4);
        let a = d.evaluate(&x, true).unwrap();
        let b = u.evaluate(&x.scaled(2.0), true).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.gradient.unwrap()[1], 2.0 * b.gradient.unwrap()[1]);
    }
}
