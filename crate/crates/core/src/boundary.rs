//! Boundary data families with certified sup bounds and Hölder constants.
//!
//! Every family is bounded and continuous except [`Family::Sign`], which is
//! only admitted where boundedness is all that matters. JSON form:
//! `{"family": "cosine", "n": 2, "params": {"wave": [1.0]}, "alpha": 0.5}`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::constants::holder_moment;
use crate::error::{domain, Error, Result};
use crate::poisson::TailWeight;
use crate::quadrature::integrate_scalar;
use crate::special::sphere_area;
use crate::sphere::ZonalShape;

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `f ≡ value`
    Constant { value: f64 },
    /// `f(t) = offset + amplitude·cos(<wave, t> + phase)`, optionally clamped to `[-clip, clip]`.
    Cosine { wave: Vec<f64>, phase: f64, amplitude: f64, offset: f64, clip: Option<f64> },
    /// `f(t) = min(|t|^exponent, level)`
    ClippedPower { level: f64, exponent: f64 },
    /// `f(t) = height·exp(-|t - center|^2 / width^2)`
    GaussianBump { center: Vec<f64>, width: f64, height: f64 },
    /// `f(t) = sign(<axis, t>)`
    Sign { axis: Vec<f64> },
    /// Boundary trace of `scale·h^{n-1}·P((pole, h), ·)`-like profile:
    /// `f(t) = scale·(h^2 / (|t - pole|^2 + h^2))^{n/2}` with `h = depth`.
    KernelTranslate { pole: Vec<f64>, depth: f64, scale: f64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Constant { .. } => "constant",
            Family::Cosine { .. } => "cosine",
            Family::ClippedPower { .. } => "clipped_power",
            Family::GaussianBump { .. } => "gaussian_bump",
            Family::Sign { .. } => "sign",
            Family::KernelTranslate { .. } => "kernel_translate",
        }
    }
}

/// A hypothesis constant together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HypothesisConstant {
    pub value: f64,
    /// false when the value is a sampled estimate rather than a proof
    pub certified: bool,
}

/// Boundary data `f` on `R^{n-1}` for the half-space `R^n_+`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryData {
    pub family: Family,
    pub n: usize,
    /// Hölder exponent the data is intended for (optional, informational).
    pub alpha: Option<f64>,
    sup_bound: f64,
    // mean of a clamped cosine over one period
    cosine_mean: f64,
}

#[derive(Deserialize, Serialize)]
struct RawData {
    family: String,
    n: usize,
    #[serde(default)]
    params: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
}

fn check_len(name: &str, v: &[f64], n: usize) -> Result<()> {
    if v.len() != n - 1 {
        return Err(domain(format!("{name} must have {} components, got {}", n - 1, v.len())));
    }
    if v.iter().any(|c| !c.is_finite()) {
        return Err(domain(format!("{name} must be finite")));
    }
    Ok(())
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be positive and finite, got {v}")))
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn clamp_opt(v: f64, clip: Option<f64>) -> f64 {
    match clip {
        Some(c) => v.clamp(-c, c),
        None => v,
    }
}

impl BoundaryData {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(domain(format!("dimension must be at least 2, got {n}")));
        }
        let sup_bound = match &family {
            Family::Constant { value } => {
                if !value.is_finite() {
                    return Err(domain("constant value must be finite"));
                }
                value.abs()
            }
            Family::Cosine { wave, phase, amplitude, offset, clip } => {
                check_len("wave", wave, n)?;
                if !(phase.is_finite() && amplitude.is_finite() && offset.is_finite()) {
                    return Err(domain("cosine parameters must be finite"));
                }
                if let Some(c) = clip {
                    positive("clip", *c)?;
                }
                let s = offset.abs() + amplitude.abs();
                clip.map_or(s, |c| s.min(c))
            }
            Family::ClippedPower { level, exponent } => {
                positive("level", *level)?;
                if !(*exponent > 0.0 && *exponent <= 1.0) {
                    return Err(domain(format!("exponent must lie in (0, 1], got {exponent}")));
                }
                *level
            }
            Family::GaussianBump { center, width, height } => {
                check_len("center", center, n)?;
                positive("width", *width)?;
                if !height.is_finite() {
                    return Err(domain("height must be finite"));
                }
                height.abs()
            }
            Family::Sign { axis } => {
                check_len("axis", axis, n)?;
                if norm(axis) == 0.0 {
                    return Err(domain("axis must be non-zero"));
                }
                1.0
            }
            Family::KernelTranslate { pole, depth, scale } => {
                check_len("pole", pole, n)?;
                positive("depth", *depth)?;
                if !scale.is_finite() {
                    return Err(domain("scale must be finite"));
                }
                scale.abs()
            }
        };
        let family = match family {
            Family::Sign { axis } => {
                let r = norm(&axis);
                Family::Sign { axis: axis.into_iter().map(|c| c / r).collect() }
            }
            f => f,
        };
        let cosine_mean = match &family {
            Family::Cosine { amplitude, offset, clip: Some(c), .. } => clamped_cosine_mean(*offset, *amplitude, *c),
            Family::Cosine { offset, .. } => *offset,
            _ => 0.0,
        };
        Ok(Self { family, n, alpha: None, sup_bound, cosine_mean })
    }

    pub fn with_alpha(mut self, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        self.alpha = Some(alpha);
        Ok(self)
    }

    pub fn constant(n: usize, value: f64) -> Result<Self> {
        Self::new(Family::Constant { value }, n)
    }

    /// Unit-amplitude `cos(<wave, t>)`.
    pub fn cosine(n: usize, wave: Vec<f64>) -> Result<Self> {
        Self::new(Family::Cosine { wave, phase: 0.0, amplitude: 1.0, offset: 0.0, clip: None }, n)
    }

    pub fn clipped_power(n: usize, level: f64, exponent: f64) -> Result<Self> {
        Self::new(Family::ClippedPower { level, exponent }, n)
    }

    pub fn gaussian(n: usize, center: Vec<f64>, width: f64, height: f64) -> Result<Self> {
        Self::new(Family::GaussianBump { center, width, height }, n)
    }

    pub fn sign(n: usize) -> Result<Self> {
        let mut axis = vec![0.0; n - 1];
        axis[0] = 1.0;
        Self::new(Family::Sign { axis }, n)
    }

    pub fn kernel_translate(n: usize, pole: Vec<f64>, depth: f64, scale: f64) -> Result<Self> {
        Self::new(Family::KernelTranslate { pole, depth, scale }, n)
    }

    pub fn name(&self) -> &'static str {
        self.family.name()
    }

    /// Certified `sup |f|`, which also bounds `|U|` on the half-space.
    pub fn sup_bound(&self) -> f64 {
        self.sup_bound
    }

    /// Continuous on `R^{n-1}` (Hölder at some exponent).
    pub fn is_continuous(&self) -> bool {
        !matches!(self.family, Family::Sign { .. })
    }

    /// `f(t)`
    pub fn value(&self, t: &[f64]) -> f64 {
        match &self.family {
            Family::Constant { value } => *value,
            Family::Cosine { wave, phase, amplitude, offset, clip } => {
                clamp_opt(offset + amplitude * (dot(wave, t) + phase).cos(), *clip)
            }
            Family::ClippedPower { level, exponent } => norm(t).powf(*exponent).min(*level),
            Family::GaussianBump { center, width, height } => {
                let r2: f64 = t.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum();
                height * (-r2 / (width * width)).exp()
            }
            Family::Sign { axis } => {
                let v = dot(axis, t);
                if v > 0.0 {
                    1.0
                } else if v < 0.0 {
                    -1.0
                } else {
                    0.0
                }
            }
            Family::KernelTranslate { pole, depth, scale } => {
                let r2: f64 = t.iter().zip(pole).map(|(a, b)| (a - b) * (a - b)).sum();
                scale * (depth * depth / (r2 + depth * depth)).powf(self.n as f64 / 2.0)
            }
        }
    }

    /// `(α, C)` when `alpha` is set and the family has an analytic Hölder constant.
    pub fn lip_alpha(&self) -> Option<(f64, f64)> {
        let a = self.alpha?;
        boundary_lipschitz_constant(self, a).ok().map(|c| (a, c))
    }

    // Oscillation bound and Lipschitz constant of f.
    fn oscillation_and_lipschitz(&self) -> Option<(f64, f64)> {
        match &self.family {
            Family::Constant { .. } => Some((0.0, 0.0)),
            Family::Cosine { wave, amplitude, clip, .. } => {
                let a = amplitude.abs();
                let range = clip.map_or(2.0 * a, |c| (2.0 * a).min(2.0 * c));
                Some((range, a * norm(wave)))
            }
            Family::GaussianBump { width, height, .. } => {
                let h = height.abs();
                Some((h, h * 2f64.sqrt() * (-0.5f64).exp() / width))
            }
            Family::KernelTranslate { depth, scale, .. } => {
                let nf = self.n as f64;
                let s = scale.abs();
                let lip = s * (nf / depth) * (nf + 1.0).powf(-0.5) * ((nf + 1.0) / (nf + 2.0)).powf(nf / 2.0 + 1.0);
                Some((s, lip))
            }
            Family::ClippedPower { .. } | Family::Sign { .. } => None,
        }
    }

    /// Vertical constant `C` with `|U(x', x_n) - U(x', y_n)| ≤ C y_n^α` for `0 < x_n < y_n`.
    ///
    /// Cosine data use the envelope `min(2A, Aκ(y_n - x_n)) ≤ A 2^{1-α} κ^α y_n^α`.
    /// For other Hölder data, `|U(x', y) - f(x')| ≤ C_f y^α E_n(α)` with
    /// `E_n(α) = ∫ P((0, 1), t) |t|^α dt`, so `2 C_f E_n(α)` is certified.
    /// Translated kernels are flagged estimate-only: their constant is sampled
    /// from the closed-form extension.
    pub fn vertical_constant(&self, alpha: f64) -> Result<HypothesisConstant> {
        check_alpha(alpha)?;
        match &self.family {
            Family::Constant { .. } => Ok(HypothesisConstant { value: 0.0, certified: true }),
            Family::Cosine { wave, amplitude, clip: None, .. } => Ok(HypothesisConstant {
                value: amplitude.abs() * 2f64.powf(1.0 - alpha) * norm(wave).powf(alpha),
                certified: true,
            }),
            Family::KernelTranslate { depth, scale, .. } => Ok(HypothesisConstant {
                value: kernel_vertical_estimate(self.n, *depth, *scale, alpha),
                certified: false,
            }),
            Family::Sign { .. } => Err(Error::Capability("sign data has no vertical Hölder constant".into())),
            _ => {
                let c = boundary_lipschitz_constant(self, alpha)?;
                Ok(HypothesisConstant { value: 2.0 * c * holder_moment(self.n, alpha)?, certified: true })
            }
        }
    }

    /// `C` with `|∇U(z)| ≤ C z_n^{α-1}` on the half-space.
    ///
    /// Exact envelope `Aκ^α (1-α)^{1-α} e^{α-1}` for unclipped cosines,
    /// `16(n+1)/(1-α)^2 · C_f` otherwise.
    pub fn gradient_envelope(&self, alpha: f64) -> Result<f64> {
        check_alpha(alpha)?;
        match &self.family {
            Family::Constant { .. } => Ok(0.0),
            Family::Cosine { wave, amplitude, clip: None, .. } => {
                Ok(amplitude.abs() * norm(wave).powf(alpha) * (1.0 - alpha).powf(1.0 - alpha) * (alpha - 1.0).exp())
            }
            _ => {
                let c = boundary_lipschitz_constant(self, alpha)?;
                Ok(16.0 * (self.n as f64 + 1.0) / (1.0 - alpha).powi(2) * c)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let params = match &self.family {
            Family::Constant { value } => json!({ "value": value }),
            Family::Cosine { wave, phase, amplitude, offset, clip } => json!({
                "wave": wave, "phase": phase, "amplitude": amplitude, "offset": offset, "clip": clip
            }),
            Family::ClippedPower { level, exponent } => json!({ "level": level, "exponent": exponent }),
            Family::GaussianBump { center, width, height } => {
                json!({ "center": center, "width": width, "height": height })
            }
            Family::Sign { axis } => json!({ "axis": axis }),
            Family::KernelTranslate { pole, depth, scale } => json!({ "pole": pole, "depth": depth, "scale": scale }),
        };
        serde_json::to_value(RawData { family: self.name().into(), n: self.n, params, alpha: self.alpha })
            .expect("plain data serialises")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let raw: RawData = serde_json::from_value(v.clone()).map_err(|e| Error::Input(format!("boundary data: {e}")))?;
        let n = raw.n;
        if n < 2 {
            return Err(Error::Input(format!("n must be at least 2, got {n}")));
        }
        let p = &raw.params;
        let num = |key: &str, default: Option<f64>| -> Result<f64> {
            match p.get(key) {
                Some(v) => v.as_f64().ok_or_else(|| Error::Input(format!("parameter {key} must be a number"))),
                None => default.ok_or_else(|| Error::Input(format!("missing parameter {key}"))),
            }
        };
        let vec = |key: &str, default: Option<Vec<f64>>| -> Result<Vec<f64>> {
            match p.get(key) {
                Some(Value::Array(a)) => a
                    .iter()
                    .map(|x| x.as_f64().ok_or_else(|| Error::Input(format!("parameter {key} must be numeric"))))
                    .collect(),
                Some(Value::Number(x)) if n == 2 => Ok(vec![x.as_f64().unwrap_or(f64::NAN)]),
                Some(_) => Err(Error::Input(format!("parameter {key} must be an array"))),
                None => default.ok_or_else(|| Error::Input(format!("missing parameter {key}"))),
            }
        };
        let zeros = vec![0.0; n - 1];
        let mut e1 = zeros.clone();
        e1[0] = 1.0;
        let family = match raw.family.as_str() {
            "constant" => Family::Constant { value: num("value", None)? },
            "cosine" => Family::Cosine {
                wave: vec("wave", Some(e1))?,
                phase: num("phase", Some(0.0))?,
                amplitude: num("amplitude", Some(1.0))?,
                offset: num("offset", Some(0.0))?,
                clip: match p.get("clip") {
                    None | Some(Value::Null) => None,
                    Some(_) => Some(num("clip", None)?),
                },
            },
            "clipped_power" => Family::ClippedPower {
                level: num("level", Some(1.0))?,
                exponent: num("exponent", raw.alpha)?,
            },
            "gaussian_bump" => Family::GaussianBump {
                center: vec("center", Some(zeros))?,
                width: num("width", Some(1.0))?,
                height: num("height", Some(1.0))?,
            },
            "sign" => Family::Sign { axis: vec("axis", Some(e1))? },
            "kernel_translate" => Family::KernelTranslate {
                pole: vec("pole", Some(zeros))?,
                depth: num("depth", Some(1.0))?,
                scale: num("scale", Some(1.0))?,
            },
            other => return Err(Error::Input(format!("unknown family {other:?}"))),
        };
        let data = Self::new(family, n).map_err(|e| Error::Input(e.to_string()))?;
        match raw.alpha {
            Some(a) => data.with_alpha(a).map_err(|e| Error::Input(e.to_string())),
            None => Ok(data),
        }
    }
}

impl Serialize for BoundaryData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BoundaryData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        Self::from_json(&v).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(domain(format!("alpha must lie in (0, 1), got {alpha}")))
    }
}

/// Certified α-Hölder constant of the boundary data.
///
/// For data with oscillation `Ω` and Lipschitz constant `L`,
/// `|f(s) - f(t)| ≤ min(Ω, L r) ≤ Ω^{1-α} L^α r^α`. For `min(|t|^β, M)` with
/// `α ≤ β`, subadditivity of `r ↦ r^β` gives `min(M, r^β) ≤ M^{1-α/β} r^α`.
pub fn boundary_lipschitz_constant(data: &BoundaryData, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    match &data.family {
        Family::Sign { .. } => Err(Error::Capability("sign data is discontinuous and not Hölder".into())),
        Family::ClippedPower { level, exponent } => {
            if alpha > *exponent {
                Err(Error::Capability(format!("min(|t|^{exponent}, M) is not {alpha}-Hölder at the origin")))
            } else {
                Ok(level.powf(1.0 - alpha / exponent))
            }
        }
        _ => {
            let (osc, lip) = data.oscillation_and_lipschitz().expect("Hölder family");
            if osc == 0.0 || lip == 0.0 {
                Ok(0.0)
            } else {
                Ok(osc.powf(1.0 - alpha) * lip.powf(alpha))
            }
        }
    }
}

/// Sampled α-Hölder constant of the boundary data (estimate only): the best
/// ratio over a deterministic pair grid with log-spaced separations.
pub fn numeric_holder_estimate(data: &BoundaryData, alpha: f64, radius: f64) -> f64 {
    let m = data.n - 1;
    let mut best: f64 = 0.0;
    let anchors = 41;
    let seps = 60;
    let dirs = if m == 1 { 1 } else { 8 };
    for i in 0..anchors {
        for dj in 0..dirs {
            let ang = PI * dj as f64 / dirs as f64;
            let mut base = vec![0.0; m];
            base[0] = radius * (2.0 * i as f64 / (anchors - 1) as f64 - 1.0);
            if m > 1 {
                base[1] = 0.37 * base[0];
            }
            let mut dir = vec![0.0; m];
            dir[0] = ang.cos();
            if m > 1 {
                dir[1] = ang.sin();
            }
            let f0 = data.value(&base);
            for k in 0..seps {
                let r = 1e-4 * (4.0 * radius / 1e-4).powf(k as f64 / (seps - 1) as f64);
                let y: Vec<f64> = base.iter().zip(&dir).map(|(b, d)| b + r * d).collect();
                best = best.max((data.value(&y) - f0).abs() / r.powf(alpha));
            }
        }
    }
    best
}

fn clamped_cosine_mean(b: f64, a: f64, c: f64) -> f64 {
    // (1/π) ∫_0^π clamp(b + a cos θ, -c, c) dθ with breaks where the clamp switches
    let mut breaks = vec![0.0, PI];
    if a != 0.0 {
        for level in [-c, c] {
            let q = (level - b) / a;
            if q.abs() < 1.0 {
                breaks.push(q.acos());
            }
        }
    }
    breaks.sort_by(f64::total_cmp);
    integrate_scalar(|t| (b + a * t.cos()).clamp(-c, c), &breaks, 1e-15, 200).scalar() / PI
}

// Sampled vertical constant for the translated kernel from its closed form:
// sup over r = |x' - pole| and 0 < x < y of |U(r, x) - U(r, y)| / y^α.
fn kernel_vertical_estimate(n: usize, h: f64, s: f64, alpha: f64) -> f64 {
    let nf = n as f64;
    let u = |r: f64, x: f64| {
        let hh = x + h;
        s * h.powf(nf - 1.0) * hh / (r * r + hh * hh).powf(nf / 2.0)
    };
    let mut best: f64 = 0.0;
    for i in 0..=40 {
        let r = 8.0 * h * i as f64 / 40.0;
        let u0 = u(r, 0.0);
        for j in 0..=120 {
            let y = h * 1e-4 * (1e6f64).powf(j as f64 / 120.0);
            let uy = u(r, y);
            // for fixed y the sup over x ∈ (0, y) is attained at an endpoint or where U(x) is extremal;
            // U(r, ·) is monotone on rays from the boundary away from |r| ≈ h, so check x → 0 and x = y/2
            for x in [0.0, 0.5 * y] {
                best = best.max((u(r, x) - uy).abs() / y.powf(alpha));
            }
            best = best.max((u0 - uy).abs() / y.powf(alpha));
        }
    }
    best
}

/// The boundary data seen from `x'` in polar coordinates `t = x' + ρω`: it
/// depends on `ω` only through `s = <ω, axis>`.
pub(crate) struct ZonalView<'a> {
    data: &'a BoundaryData,
    pub axis: Vec<f64>,
    /// constant subtracted before integration (its extension is exact)
    pub far: f64,
    kind: ZonalKind,
}

enum ZonalKind {
    /// `f = φ(θ0 + κρs)` (plane waves and half-spaces)
    Planar { theta0: f64, kappa: f64 },
    /// `f = ψ(|t - c|)` with `|t - c|^2 = d^2 + ρ^2 + 2ρ d s`
    Radial { d: f64 },
    Zero,
}

/// Which polar weight a tail bound is for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Component {
    Value,
    Normal,
    Tangential,
}

impl BoundaryData {
    pub(crate) fn zonal(&self, xh: &[f64]) -> ZonalView<'_> {
        let m = self.n - 1;
        let mut e1 = vec![0.0; m];
        e1[0] = 1.0;
        let radial = |c: &[f64]| {
            let diff: Vec<f64> = xh.iter().zip(c).map(|(a, b)| a - b).collect();
            let d = norm(&diff);
            let axis = if d > 0.0 { diff.iter().map(|v| v / d).collect() } else { e1.clone() };
            (axis, d)
        };
        let (axis, far, kind) = match &self.family {
            Family::Constant { value } => (e1.clone(), *value, ZonalKind::Zero),
            Family::Cosine { wave, phase, amplitude, .. } => {
                let kappa = norm(wave);
                if kappa == 0.0 || *amplitude == 0.0 {
                    (e1.clone(), self.value(xh), ZonalKind::Zero)
                } else {
                    let axis = wave.iter().map(|k| k / kappa).collect();
                    (axis, self.cosine_mean, ZonalKind::Planar { theta0: dot(wave, xh) + phase, kappa })
                }
            }
            Family::Sign { axis } => (axis.clone(), 0.0, ZonalKind::Planar { theta0: dot(axis, xh), kappa: 1.0 }),
            Family::ClippedPower { level, .. } => {
                let (axis, d) = radial(&vec![0.0; m]);
                (axis, *level, ZonalKind::Radial { d })
            }
            Family::GaussianBump { center, .. } => {
                let (axis, d) = radial(center);
                (axis, 0.0, ZonalKind::Radial { d })
            }
            Family::KernelTranslate { pole, .. } => {
                let (axis, d) = radial(pole);
                (axis, 0.0, ZonalKind::Radial { d })
            }
        };
        ZonalView { data: self, axis, far, kind }
    }
}

impl ZonalView<'_> {
    /// `f(x' + ρω) - far` for `<ω, axis> = s`.
    #[inline]
    pub fn profile(&self, rho: f64, s: f64) -> f64 {
        match (&self.kind, &self.data.family) {
            (ZonalKind::Zero, _) => 0.0,
            (ZonalKind::Planar { theta0, kappa }, Family::Cosine { amplitude, offset, clip, .. }) => {
                clamp_opt(offset + amplitude * (theta0 + kappa * rho * s).cos(), *clip) - self.far
            }
            (ZonalKind::Planar { theta0, .. }, Family::Sign { .. }) => {
                let v = theta0 + rho * s;
                if v > 0.0 {
                    1.0
                } else if v < 0.0 {
                    -1.0
                } else {
                    0.0
                }
            }
            (ZonalKind::Radial { d }, fam) => {
                let r2 = (d * d + rho * rho + 2.0 * rho * d * s).max(0.0);
                match fam {
                    Family::ClippedPower { level, exponent } => r2.powf(0.5 * exponent).min(*level) - level,
                    Family::GaussianBump { width, height, .. } => height * (-r2 / (width * width)).exp(),
                    Family::KernelTranslate { depth, scale, .. } => {
                        scale * (depth * depth / (r2 + depth * depth)).powf(self.data.n as f64 / 2.0)
                    }
                    _ => unreachable!(),
                }
            }
            _ => unreachable!(),
        }
    }

    /// `g(x') = f(x') - far`
    pub fn at_center(&self) -> f64 {
        self.profile(0.0, 1.0)
    }

    /// Angular rule for the sphere of radius `rho`.
    pub fn shape(&self, rho: f64) -> ZonalShape {
        match (&self.kind, &self.data.family) {
            (ZonalKind::Planar { theta0, .. }, Family::Sign { .. }) => ZonalShape::Kinks(vec![-theta0 / rho]),
            (ZonalKind::Planar { theta0, kappa }, Family::Cosine { amplitude, offset, clip: Some(c), .. }) => {
                // θ(s) = θ0 + κρs crosses the clamp levels at ±θc + 2πj
                let mut s = Vec::new();
                let span = kappa * rho;
                for level in [-c, *c] {
                    let q = (level - offset) / amplitude;
                    if q.abs() >= 1.0 {
                        continue;
                    }
                    let tc = q.acos();
                    for base in [tc, -tc] {
                        let lo = ((theta0 - span - base) / (2.0 * PI)).ceil() as i64;
                        let hi = ((theta0 + span - base) / (2.0 * PI)).floor() as i64;
                        for j in lo..=hi {
                            s.push((base + 2.0 * PI * j as f64 - theta0) / span);
                        }
                    }
                }
                ZonalShape::Kinks(s)
            }
            (ZonalKind::Planar { kappa, .. }, _) => ZonalShape::Smooth { bandwidth: kappa * rho },
            (ZonalKind::Radial { d }, Family::ClippedPower { level, exponent }) => {
                let r0 = level.powf(1.0 / exponent);
                let mut s = Vec::new();
                if *d > 0.0 && rho > 0.0 {
                    let q = (r0 * r0 - d * d - rho * rho) / (2.0 * rho * d);
                    if q.abs() < 1.0 {
                        s.push(q);
                    }
                }
                ZonalShape::Kinks(s)
            }
            (ZonalKind::Radial { d }, Family::GaussianBump { width, .. }) => {
                ZonalShape::Smooth { bandwidth: 2.0 * rho * d / (width * width) }
            }
            (ZonalKind::Radial { d }, Family::KernelTranslate { depth, .. }) => {
                ZonalShape::Smooth { bandwidth: self.data.n as f64 * rho * d / (depth * depth) }
            }
            _ => ZonalShape::Smooth { bandwidth: 0.0 },
        }
    }

    /// Breakpoints of the radial integrand in `ρ` (not including the geometric grid).
    pub fn radial_breaks(&self) -> Vec<f64> {
        let mut b = Vec::new();
        match (&self.kind, &self.data.family) {
            (ZonalKind::Planar { theta0, .. }, Family::Sign { .. }) => b.push(theta0.abs()),
            (ZonalKind::Radial { d }, Family::ClippedPower { level, exponent }) => {
                let r0 = level.powf(1.0 / exponent);
                b.extend([*d, (d - r0).abs(), d + r0]);
            }
            (ZonalKind::Radial { d }, Family::GaussianBump { width, .. }) => {
                for k in [-6.0, -3.0, -1.0, 0.0, 1.0, 3.0, 6.0] {
                    b.push(d + k * width);
                }
            }
            (ZonalKind::Radial { d }, Family::KernelTranslate { depth, .. }) => {
                for k in [-2.0, -1.0, 0.0, 1.0, 2.0] {
                    b.push(d + k * depth);
                }
            }
            _ => {}
        }
        b.retain(|v| *v > 0.0);
        b
    }

    /// Radial period for oscillatory data, used to split panels.
    pub fn period(&self) -> Option<f64> {
        match (&self.kind, &self.data.family) {
            (ZonalKind::Planar { kappa, .. }, Family::Cosine { .. }) => Some(2.0 * PI / kappa),
            _ => None,
        }
    }

    /// `g ≡ 0` for `ρ` beyond this radius.
    pub fn support_end(&self) -> Option<f64> {
        match (&self.kind, &self.data.family) {
            (ZonalKind::Zero, _) => Some(0.0),
            (ZonalKind::Radial { d }, Family::ClippedPower { level, exponent }) => Some(d + level.powf(1.0 / exponent)),
            _ => None,
        }
    }

    fn sup_profile(&self) -> f64 {
        match &self.data.family {
            Family::Cosine { amplitude, offset, clip, .. } => {
                let hi = clamp_opt(offset + amplitude.abs(), *clip);
                let lo = clamp_opt(offset - amplitude.abs(), *clip);
                (hi - self.far).abs().max((lo - self.far).abs())
            }
            _ => self.data.sup_bound + self.far.abs(),
        }
    }

    /// Certified bound on `|∫_R^∞ w(ρ) G(ρ) dρ|` where `G` is the zonal moment
    /// of order 0 (`Value`, `Normal`) or 1 (`Tangential`) and `w ≥ 0` is
    /// decreasing on `[R, ∞)` with value `tw.at_radius` at `R` and mass `tw.mass`.
    pub fn tail_bound(&self, component: Component, radius: f64, tw: TailWeight) -> f64 {
        let n = self.data.n;
        let area = sphere_area(n - 2).expect("small dimension");
        let generic = area * self.sup_profile() * tw.mass;
        if let Some(end) = self.support_end() {
            if radius >= end {
                return 0.0;
            }
        }
        match (&self.kind, &self.data.family) {
            (ZonalKind::Planar { kappa, .. }, Family::Cosine { amplitude, clip, .. }) => {
                // second mean value theorem on each direction: |∫_R^b h(θ0 + κρs) dρ| ≤ V/(κ|s|)
                let sup = self.sup_profile();
                let v = if clip.is_none() { 2.0 * amplitude.abs() } else { PI * sup };
                let a1 = tw.at_radius * v / kappa;
                let q = sup * tw.mass;
                let bound = if q == 0.0 {
                    0.0
                } else {
                    let c0 = a1 / q;
                    match n {
                        2 => 2.0 * a1.min(q),
                        3 if c0 < 1.0 => {
                            let psi1 = c0.acos();
                            4.0 * (a1 * (1.0 / psi1.cos() + psi1.tan()).ln() + q * c0.asin())
                        }
                        4 if c0 < 1.0 => 4.0 * PI * (a1 * (1.0 - c0.ln())),
                        _ => area * q,
                    }
                };
                bound.min(generic)
            }
            (ZonalKind::Planar { theta0, .. }, Family::Sign { .. }) if component != Component::Tangential => {
                let a = theta0.abs();
                if radius < a {
                    return generic;
                }
                match n {
                    2 => 0.0,
                    3 => (2.0 * PI * a * tw.mass / radius).min(generic),
                    _ => (4.0 * PI * a * tw.mass / radius).min(generic),
                }
            }
            (ZonalKind::Radial { d }, Family::GaussianBump { width, height, .. }) if radius > *d => {
                (area * tw.mass * height.abs() * (-((radius - d) / width).powi(2)).exp()).min(generic)
            }
            (ZonalKind::Radial { d }, Family::KernelTranslate { depth, scale, .. }) if radius > *d => {
                let ratio = (depth / (radius - d)).powi(n as i32).min(1.0);
                (area * tw.mass * scale.abs() * ratio).min(generic)
            }
            _ => generic,
        }
    }
}
