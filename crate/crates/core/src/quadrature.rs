//! One-dimensional quadrature: adaptive Gauss–Kronrod and Gauss–Legendre rules.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

// 21-point Kronrod extension of the 10-point Gauss rule, non-negative half.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
// Gauss weights for XGK[1], XGK[3], ..., XGK[9]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Result of a (possibly vector-valued) quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<const K: usize> {
    pub value: [f64; K],
    pub error: [f64; K],
    pub evaluations: usize,
    /// false when max_intervals was exhausted before the tolerance was met
    pub converged: bool,
}

impl Integral<1> {
    pub fn scalar(&self) -> f64 {
        self.value[0]
    }
}

fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut e = err.abs();
    if resasc != 0.0 && e != 0.0 {
        let scale = (200.0 * e / resasc).powf(1.5);
        e = if scale < 1.0 { resasc * scale } else { resasc };
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        e = e.max(50.0 * f64::EPSILON * resabs);
    }
    e
}

/// One 21-point Gauss–Kronrod panel on `[a, b]`.
pub fn gk21<const K: usize, F: FnMut(f64) -> [f64; K]>(f: &mut F, a: f64, b: f64) -> ([f64; K], [f64; K]) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut fv = [[0.0; K]; 21];
    fv[20] = f(c);
    for j in 0..10 {
        let dx = h * XGK[j];
        fv[2 * j] = f(c - dx);
        fv[2 * j + 1] = f(c + dx);
    }
    let mut value = [0.0; K];
    let mut error = [0.0; K];
    for k in 0..K {
        let center = fv[20][k];
        let mut rk = WGK[10] * center;
        let mut rg = 0.0;
        let mut resabs = WGK[10] * center.abs();
        for j in 0..10 {
            let s = fv[2 * j][k] + fv[2 * j + 1][k];
            rk += WGK[j] * s;
            resabs += WGK[j] * (fv[2 * j][k].abs() + fv[2 * j + 1][k].abs());
            if j % 2 == 1 {
                rg += WG[j / 2] * s;
            }
        }
        let mean = 0.5 * rk;
        let mut resasc = WGK[10] * (center - mean).abs();
        for j in 0..10 {
            resasc += WGK[j] * ((fv[2 * j][k] - mean).abs() + (fv[2 * j + 1][k] - mean).abs());
        }
        value[k] = rk * h;
        error[k] = rescale_error((rk - rg) * h, resabs * h.abs(), resasc * h.abs());
    }
    (value, error)
}

struct Panel<const K: usize> {
    a: f64,
    b: f64,
    value: [f64; K],
    error: [f64; K],
    priority: f64,
}

impl<const K: usize> PartialEq for Panel<K> {
    fn eq(&self, other: &Self) -> bool {
        self.priority == other.priority
    }
}
impl<const K: usize> Eq for Panel<K> {}
impl<const K: usize> PartialOrd for Panel<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<const K: usize> Ord for Panel<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.priority.total_cmp(&other.priority)
    }
}

/// Global adaptive Gauss–Kronrod integration over the partition `breaks`
/// (sorted, at least two points) with a per-component absolute tolerance.
///
/// The panel with the largest tolerance-normalised error is bisected until
/// every component meets its tolerance or `max_panels` is reached. Panels too
/// narrow to bisect in floating point are frozen.
pub fn integrate<const K: usize, F: FnMut(f64) -> [f64; K]>(
    mut f: F,
    breaks: &[f64],
    tol: [f64; K],
    max_panels: usize,
) -> Integral<K> {
    debug_assert!(breaks.len() >= 2);
    let norm = |e: &[f64; K]| -> f64 {
        let mut p: f64 = 0.0;
        for k in 0..K {
            p = p.max(e[k] / tol[k].max(f64::MIN_POSITIVE));
        }
        p
    };
    let mut heap = BinaryHeap::new();
    let mut frozen_value = [0.0; K];
    let mut frozen_error = [0.0; K];
    let mut evaluations = 0;
    let mut total_value = [0.0; K];
    let mut total_error = [0.0; K];
    for w in breaks.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let (value, error) = gk21(&mut f, w[0], w[1]);
        evaluations += 21;
        for k in 0..K {
            total_value[k] += value[k];
            total_error[k] += error[k];
        }
        heap.push(Panel { a: w[0], b: w[1], value, error, priority: norm(&error) });
    }
    let done = |e: &[f64; K]| (0..K).all(|k| e[k] <= tol[k]);
    let mut panels = heap.len();
    while !done(&total_error) && panels < max_panels {
        let Some(p) = heap.pop() else { break };
        let mid = 0.5 * (p.a + p.b);
        if !(mid > p.a && mid < p.b) || (p.b - p.a) <= 1e3 * f64::EPSILON * p.a.abs().max(p.b.abs()) {
            for k in 0..K {
                frozen_value[k] += p.value[k];
                frozen_error[k] += p.error[k];
            }
            if heap.is_empty() {
                break;
            }
            continue;
        }
        let (v1, e1) = gk21(&mut f, p.a, mid);
        let (v2, e2) = gk21(&mut f, mid, p.b);
        evaluations += 42;
        panels += 1;
        for k in 0..K {
            total_value[k] += v1[k] + v2[k] - p.value[k];
            total_error[k] += e1[k] + e2[k] - p.error[k];
        }
        heap.push(Panel { a: p.a, b: mid, value: v1, error: e1, priority: norm(&e1) });
        heap.push(Panel { a: mid, b: p.b, value: v2, error: e2, priority: norm(&e2) });
    }
    // re-sum to avoid drift from incremental updates
    let mut value = frozen_value;
    let mut error = frozen_error;
    for p in heap.iter() {
        for k in 0..K {
            value[k] += p.value[k];
            error[k] += p.error[k];
        }
    }
    let _ = total_value;
    Integral { value, error, evaluations, converged: done(&error) }
}

/// Scalar convenience wrapper around [`integrate`].
pub fn integrate_scalar<F: FnMut(f64) -> f64>(mut f: F, breaks: &[f64], tol: f64, max_panels: usize) -> Integral<1> {
    integrate(|x| [f(x)], breaks, [tol], max_panels)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on the three-term recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[m - 1] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Cached rule with `16 * 2^level` nodes.
    pub fn cached(level: usize) -> &'static GaussLegendre {
        static RULES: [OnceLock<GaussLegendre>; 12] = [const { OnceLock::new() }; 12];
        let level = level.min(RULES.len() - 1);
        RULES[level].get_or_init(|| GaussLegendre::new(16 << level))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn gk21_is_exact_for_low_degree_polynomials() {
        let mut f = |x: f64| [x.powi(30) + 3.0 * x.powi(7) - 1.0];
        let (v, _) = gk21(&mut f, -1.0, 1.0);
        assert_relative_eq!(v[0], 2.0 / 31.0 - 2.0, max_relative = 1e-14);
    }

    #[test]
    fn adaptive_handles_kinks_and_endpoint_singularities() {
        let r = integrate_scalar(|x| (x - 0.3).abs(), &[0.0, 1.0], 1e-12, 500);
        assert!(r.converged);
        assert_relative_eq!(r.scalar(), 0.5 * (0.09 + 0.49), max_relative = 1e-11);
        let r = integrate_scalar(|x| x.powf(-0.5), &[0.0, 1.0], 1e-10, 2000);
        assert!((r.scalar() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn vector_integrand_shares_nodes() {
        let r = integrate(|x| [x.sin(), x.cos()], &[0.0, PI], [1e-13, 1e-13], 100);
        assert!(r.converged);
        assert_relative_eq!(r.value[0], 2.0, max_relative = 1e-13);
        assert!(r.value[1].abs() < 1e-13);
    }

    #[test]
    fn gauss_legendre_rules() {
        for n in [1, 2, 5, 16, 33, 256] {
            let g = GaussLegendre::new(n);
            let s: f64 = g.weights.iter().sum();
            assert_relative_eq!(s, 2.0, max_relative = 1e-13);
            // exact for degree 2n - 1
            let d = (2 * n - 2) as i32;
            let q: f64 = g.nodes.iter().zip(&g.weights).map(|(x, w)| w * x.powi(d)).sum();
            assert_relative_eq!(q, 2.0 / (d as f64 + 1.0), max_relative = 1e-12);
        }
        assert_eq!(GaussLegendre::cached(2).len(), 64);
    }
}
