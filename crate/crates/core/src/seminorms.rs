//! Lower bounds on the α-Hölder seminorms of a harmonic function.
//!
//! Four index sets are supported:
//!
//! | kind            | pairs                                  | denominator     |
//! |-----------------|----------------------------------------|-----------------|
//! | `Interior`      | `x, y` in the half-space               | `|x - y|^α`     |
//! | `Boundary`      | `(x', 0), (y', 0)`                     | `|x' - y'|^α`   |
//! | `Vertical`      | `(x', a), (x', b)`, `0 ≤ a < b`        | `(b - a)^α`     |
//! | `VerticalTop`   | `(x', a), (x', b)`, `0 ≤ a < b`        | `b^α`           |
//!
//! plus `VerticalToBoundary` (`a = 0`), the index set of the vertical modulus
//! condition. Pairs are drawn from a shifted Halton sequence on a
//! kind-specific parameter cube and the best ten are polished by a
//! coordinate hill climb. Every value is a ratio actually observed, hence a
//! lower bound.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::extension::{Dilated, Harmonic};
use crate::poisson::HalfSpacePoint;

/// Smallest accepted sample budget.
pub const MIN_BUDGET: usize = 1000;
const STARTS: usize = 10;
const STEPS_PER_START: usize = 600;
const MIN_STEP: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    Interior,
    Boundary,
    Vertical,
    VerticalTop,
    VerticalToBoundary,
}

impl PairKind {
    fn tag(self) -> u64 {
        match self {
            PairKind::Interior => 1,
            PairKind::Boundary => 2,
            PairKind::Vertical => 3,
            PairKind::VerticalTop => 4,
            PairKind::VerticalToBoundary => 5,
        }
    }

    /// Dimension of the parameter cube for pairs in `R^n_+`.
    fn params(self, n: usize) -> usize {
        match self {
            // base point, direction, log-distance
            PairKind::Interior => 2 * n + 1,
            PairKind::Boundary => 2 * n - 1,
            // x', top height, lower/top ratio
            PairKind::Vertical | PairKind::VerticalTop => n + 1,
            PairKind::VerticalToBoundary => n,
        }
    }
}

/// Index set and sampling box `|x'_i| ≤ radius`, heights in `[eps, height_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairDomain {
    pub kind: PairKind,
    pub radius: f64,
    pub eps: f64,
    pub height_max: f64,
}

impl PairDomain {
    pub fn new(kind: PairKind, radius: f64, eps: f64, height_max: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(domain(format!("radius must be positive, got {radius}")));
        }
        if !(eps > 0.0 && eps < height_max && height_max.is_finite()) {
            return Err(domain(format!("need 0 < eps < height_max, got eps = {eps}, height_max = {height_max}")));
        }
        Ok(Self { kind, radius, eps, height_max })
    }

    /// `R = 10`, heights in `[1e-3, 10]`.
    pub fn standard(kind: PairKind) -> Self {
        Self { kind, radius: 10.0, eps: 1e-3, height_max: 10.0 }
    }

    pub fn with_kind(&self, kind: PairKind) -> Self {
        Self { kind, ..*self }
    }

    /// The box with every length multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        Self { kind: self.kind, radius: self.radius * s, eps: self.eps * s, height_max: self.height_max * s }
    }

    fn validate(&self) -> Result<()> {
        Self::new(self.kind, self.radius, self.eps, self.height_max).map(|_| ())
    }

    fn horizontal(&self, q: f64) -> f64 {
        self.radius * (2.0 * q - 1.0)
    }

    fn height(&self, q: f64) -> f64 {
        self.eps * (self.height_max / self.eps).powf(q)
    }

    fn distance(&self, q: f64, max: f64) -> f64 {
        self.eps * (max / self.eps).powf(q)
    }

    /// Maps a point of the parameter cube to a pair; `None` when degenerate.
    fn pair(&self, n: usize, q: &[f64]) -> Option<(HalfSpacePoint, HalfSpacePoint)> {
        let m = n - 1;
        let clamp_h = |v: f64| v.clamp(-self.radius, self.radius);
        let pair = match self.kind {
            PairKind::Interior => {
                let xh: Vec<f64> = q[..m].iter().map(|&v| self.horizontal(v)).collect();
                let xn = self.height(q[m]);
                let dir: Vec<f64> = q[n..2 * n].iter().map(|&v| 2.0 * v - 1.0).collect();
                let len = dir.iter().map(|c| c * c).sum::<f64>().sqrt();
                if len < 1e-12 {
                    return None;
                }
                let d = self.distance(q[2 * n], 2.0 * self.radius.max(self.height_max));
                let yh = xh.iter().zip(&dir).map(|(a, u)| clamp_h(a + d * u / len)).collect();
                let yn = (xn + d * dir[m] / len).clamp(self.eps, self.height_max);
                (HalfSpacePoint { horizontal: xh, height: xn }, HalfSpacePoint { horizontal: yh, height: yn })
            }
            PairKind::Boundary => {
                let xh: Vec<f64> = q[..m].iter().map(|&v| self.horizontal(v)).collect();
                let dir: Vec<f64> = q[m..2 * m].iter().map(|&v| 2.0 * v - 1.0).collect();
                let len = dir.iter().map(|c| c * c).sum::<f64>().sqrt();
                if len < 1e-12 {
                    return None;
                }
                let d = self.distance(q[2 * m], 2.0 * self.radius);
                let yh = xh.iter().zip(&dir).map(|(a, u)| clamp_h(a + d * u / len)).collect();
                (HalfSpacePoint::boundary(xh), HalfSpacePoint::boundary(yh))
            }
            PairKind::Vertical | PairKind::VerticalTop | PairKind::VerticalToBoundary => {
                let xh: Vec<f64> = q[..m].iter().map(|&v| self.horizontal(v)).collect();
                let b = self.height(q[m]);
                let a = if self.kind == PairKind::VerticalToBoundary { 0.0 } else { b * q[n] };
                (HalfSpacePoint { horizontal: xh.clone(), height: a }, HalfSpacePoint { horizontal: xh, height: b })
            }
        };
        (pair.0 != pair.1).then_some(pair)
    }
}

/// A lower bound on one seminorm and the pair attaining it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeminormEstimate {
    pub kind: PairKind,
    /// `|U|` in the numerator instead of `U`
    pub modulus: bool,
    pub value: f64,
    /// absent only when every sampled pair was degenerate
    pub witness: Option<(HalfSpacePoint, HalfSpacePoint)>,
    pub evaluations: u64,
    /// refinement improved on the best sampled pair
    pub refined: bool,
}

/// The difference quotient of `u` on one pair, as used for `kind`.
pub fn difference_quotient<H: Harmonic + ?Sized>(
    u: &H,
    kind: PairKind,
    modulus: bool,
    alpha: f64,
    x: &HalfSpacePoint,
    y: &HalfSpacePoint,
) -> Result<f64> {
    let (mut a, mut b) = (u.value(x)?, u.value(y)?);
    if modulus {
        a = a.abs();
        b = b.abs();
    }
    let denom = match kind {
        PairKind::VerticalTop => x.height.max(y.height).powf(alpha),
        _ => x.distance(y).powf(alpha),
    };
    Ok((a - b).abs() / denom)
}

fn lex_cmp(a: &(HalfSpacePoint, HalfSpacePoint), b: &(HalfSpacePoint, HalfSpacePoint)) -> Ordering {
    let ka = a.0.coords().into_iter().chain(a.1.coords());
    let kb = b.0.coords().into_iter().chain(b.1.coords());
    for (p, q) in ka.zip(kb) {
        match p.total_cmp(&q) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Larger ratio first; ties go to the lexicographically smaller witness.
fn better(r: f64, w: &(HalfSpacePoint, HalfSpacePoint), best_r: f64, best_w: &(HalfSpacePoint, HalfSpacePoint)) -> bool {
    match r.total_cmp(&best_r) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => lex_cmp(w, best_w) == Ordering::Less,
    }
}

const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let (mut f, mut r) = (inv, 0.0);
    while i > 0 {
        r += (i % base) as f64 * f;
        i /= base;
        f *= inv;
    }
    r
}

/// The `i`-th point of a Halton sequence after a Cranley–Patterson rotation.
fn halton(i: u64, shift: &[f64]) -> Vec<f64> {
    shift
        .iter()
        .zip(PRIMES)
        .map(|(s, p)| {
            let v = radical_inverse(i + 1, p) + s;
            v - v.floor()
        })
        .collect()
}

struct Search<'a, H: ?Sized> {
    u: &'a H,
    domain: PairDomain,
    modulus: bool,
    alpha: f64,
    n: usize,
}

impl<H: Harmonic + ?Sized> Search<'_, H> {
    fn ratio(&self, q: &[f64]) -> Result<Option<(f64, (HalfSpacePoint, HalfSpacePoint))>> {
        match self.domain.pair(self.n, q) {
            None => Ok(None),
            Some(w) => {
                let r = difference_quotient(self.u, self.domain.kind, self.modulus, self.alpha, &w.0, &w.1)?;
                Ok(Some((r, w)))
            }
        }
    }

    /// Shrinking-step coordinate ascent; returns the final parameters,
    /// ratio, witness and pair evaluations spent.
    fn climb(&self, mut q: Vec<f64>, mut r: f64, mut w: (HalfSpacePoint, HalfSpacePoint)) -> Result<(f64, (HalfSpacePoint, HalfSpacePoint), u64)> {
        let mut step = 1.0 / 16.0;
        let mut spent = 0usize;
        while step > MIN_STEP && spent < STEPS_PER_START {
            let mut improved = false;
            'coords: for i in 0..q.len() {
                for sign in [1.0, -1.0] {
                    let mut trial = q.clone();
                    trial[i] = (q[i] + sign * step).clamp(0.0, 1.0);
                    if trial[i] == q[i] {
                        continue;
                    }
                    spent += 1;
                    if let Some((tr, tw)) = self.ratio(&trial)? {
                        if tr > r {
                            q = trial;
                            r = tr;
                            w = tw;
                            improved = true;
                            continue 'coords;
                        }
                    }
                    if spent >= STEPS_PER_START {
                        break 'coords;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        let _ = q;
        Ok((r, w, 2 * spent as u64))
    }

    fn run(&self, budget: usize, seed: u64) -> Result<SeminormEstimate> {
        let dims = self.domain.kind.params(self.n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (self.domain.kind.tag() << 56) ^ ((self.modulus as u64) << 48));
        let shift: Vec<f64> = (0..dims).map(|_| rng.gen::<f64>()).collect();

        let sampled: Vec<Result<Option<f64>>> = (0..budget as u64)
            .into_par_iter()
            .map(|i| Ok(self.ratio(&halton(i, &shift))?.map(|(r, _)| r)))
            .collect();
        let mut ratios = Vec::with_capacity(budget);
        for r in sampled {
            ratios.push(r?);
        }
        let mut evaluations = 2 * ratios.iter().filter(|r| r.is_some()).count() as u64;

        // top candidates by ratio; index order breaks ties deterministically
        let mut order: Vec<usize> = (0..budget).filter(|&i| ratios[i].is_some()).collect();
        order.sort_by(|&a, &b| ratios[b].unwrap().total_cmp(&ratios[a].unwrap()).then(a.cmp(&b)));
        order.truncate(STARTS);

        let mut best: Option<(f64, (HalfSpacePoint, HalfSpacePoint))> = None;
        let mut sampled_best = f64::NEG_INFINITY;
        for &i in &order {
            let q = halton(i as u64, &shift);
            let (r0, w0) = self.ratio(&q)?.expect("non-degenerate sample");
            sampled_best = sampled_best.max(r0);
            let (r, w, spent) = self.climb(q, r0, w0)?;
            evaluations += spent;
            let replace = match &best {
                None => true,
                Some((br, bw)) => better(r, &w, *br, bw),
            };
            if replace {
                best = Some((r, w));
            }
        }
        Ok(match best {
            None => SeminormEstimate { kind: self.domain.kind, modulus: self.modulus, value: 0.0, witness: None, evaluations, refined: false },
            Some((value, w)) => SeminormEstimate {
                kind: self.domain.kind,
                modulus: self.modulus,
                value,
                witness: Some(w),
                evaluations,
                refined: value > sampled_best,
            },
        })
    }
}

fn check_inputs<H: Harmonic + ?Sized>(u: &H, alpha: f64, domain: &PairDomain, budget: usize) -> Result<()> {
    crate::boundary::check_alpha(alpha)?;
    domain.validate()?;
    if budget < MIN_BUDGET {
        return Err(self::domain(format!("budget must be at least {MIN_BUDGET}, got {budget}")));
    }
    if u.dim() < 2 {
        return Err(self::domain("dimension must be at least 2"));
    }
    Ok(())
}

/// Best difference quotient of `U` found with `budget` samples and ten refined starts.
pub fn estimate_seminorm<H: Harmonic + ?Sized>(u: &H, alpha: f64, domain: &PairDomain, budget: usize, seed: u64) -> Result<SeminormEstimate> {
    check_inputs(u, alpha, domain, budget)?;
    Search { u, domain: *domain, modulus: false, alpha, n: u.dim() }.run(budget, seed)
}

/// As [`estimate_seminorm`] with `|U|` in the numerator.
pub fn modulus_seminorm<H: Harmonic + ?Sized>(u: &H, alpha: f64, domain: &PairDomain, budget: usize, seed: u64) -> Result<SeminormEstimate> {
    check_inputs(u, alpha, domain, budget)?;
    Search { u, domain: *domain, modulus: true, alpha, n: u.dim() }.run(budget, seed)
}

impl SeminormEstimate {
    /// Replaces the estimate by a pair from another search when that pair's
    /// ratio, recomputed for this kind, is larger.
    fn absorb<H: Harmonic + ?Sized>(&mut self, u: &H, alpha: f64, other: &SeminormEstimate) -> Result<()> {
        let Some(w) = &other.witness else { return Ok(()) };
        let r = difference_quotient(u, self.kind, self.modulus, alpha, &w.0, &w.1)?;
        self.evaluations += 2;
        let take = match &self.witness {
            None => true,
            Some(bw) => better(r, w, self.value, bw),
        };
        if take {
            self.value = r;
            self.witness = Some(w.clone());
        }
        Ok(())
    }
}

/// The chain `‖·‖₄ ≤ ‖·‖₃ ≤ ‖·‖₁`, `‖·‖₂ ≤ ‖·‖₁` on a set of estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Ordering4 {
    pub four_le_three: bool,
    pub three_le_one: bool,
    pub two_le_one: bool,
    pub holds: bool,
}

/// Slack allowed in the ordering chain.
pub const ORDER_SLACK: f64 = 1e-9;

/// All four seminorms plus the two modulus quantities on a common box.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeminormSuite {
    pub alpha: f64,
    pub budget: usize,
    pub seed: u64,
    pub one: SeminormEstimate,
    pub two: SeminormEstimate,
    pub three: SeminormEstimate,
    pub four: SeminormEstimate,
    /// `sup ||U|(x',0) - |U|(y',0)| / |x'-y'|^α`
    pub modulus_boundary: SeminormEstimate,
    /// `sup ||U|(x',x_n) - |U|(x',0)| / x_n^α`
    pub modulus_vertical: SeminormEstimate,
    pub ordering: Ordering4,
}

/// Estimates every seminorm on the box of `domain` (its kind is ignored).
///
/// Witnesses are shared along the chain: a pair found for a smaller index
/// set is also a pair for the larger one, so the estimates satisfy the
/// ordering by construction unless a quotient is evaluated inconsistently.
pub fn seminorm_suite<H: Harmonic + ?Sized>(u: &H, alpha: f64, domain: &PairDomain, budget: usize, seed: u64) -> Result<SeminormSuite> {
    let at = |k| domain.with_kind(k);
    let modulus_boundary = modulus_seminorm(u, alpha, &at(PairKind::Boundary), budget, seed)?;
    let modulus_vertical = modulus_seminorm(u, alpha, &at(PairKind::VerticalToBoundary), budget, seed)?;
    let mut two = estimate_seminorm(u, alpha, &at(PairKind::Boundary), budget, seed)?;
    two.absorb(u, alpha, &modulus_boundary)?;
    let four = estimate_seminorm(u, alpha, &at(PairKind::VerticalTop), budget, seed)?;
    let mut three = estimate_seminorm(u, alpha, &at(PairKind::Vertical), budget, seed)?;
    three.absorb(u, alpha, &four)?;
    three.absorb(u, alpha, &modulus_vertical)?;
    let mut one = estimate_seminorm(u, alpha, &at(PairKind::Interior), budget, seed)?;
    one.absorb(u, alpha, &two)?;
    one.absorb(u, alpha, &three)?;
    let four_le_three = four.value <= three.value + ORDER_SLACK;
    let three_le_one = three.value <= one.value + ORDER_SLACK;
    let two_le_one = two.value <= one.value + ORDER_SLACK;
    let ordering = Ordering4 { four_le_three, three_le_one, two_le_one, holds: four_le_three && three_le_one && two_le_one };
    Ok(SeminormSuite { alpha, budget, seed, one, two, three, four, modulus_boundary, modulus_vertical, ordering })
}

/// One seminorm of `U` and of `U_s(x) = U(s x)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DilationCheck {
    pub kind: PairKind,
    pub scale: f64,
    pub original: f64,
    pub dilated: f64,
    /// `s^α · original`
    pub expected: f64,
    pub deviation: f64,
    /// `1e-3 · (1 + original)`
    pub tolerance: f64,
    pub pass: bool,
}

/// Compares the seminorms of `U_s` on the box scaled by `1/s` with
/// `s^α` times those of `U`.
pub fn dilation_check<H: Harmonic + ?Sized>(
    u: &H,
    s: f64,
    alpha: f64,
    domain: &PairDomain,
    budget: usize,
    seed: u64,
) -> Result<Vec<DilationCheck>> {
    if !(0.1..=10.0).contains(&s) {
        return Err(self::domain(format!("scale must lie in [0.1, 10], got {s}")));
    }
    let base = seminorm_suite(u, alpha, domain, budget, seed)?;
    let dilated = Dilated { inner: u, scale: s };
    let scaled = seminorm_suite(&dilated, alpha, &domain.scaled(1.0 / s), budget, seed)?;
    let pairs = [
        (&base.one, &scaled.one),
        (&base.two, &scaled.two),
        (&base.three, &scaled.three),
        (&base.four, &scaled.four),
    ];
    Ok(pairs
        .into_iter()
        .map(|(a, b)| {
            let expected = s.powf(alpha) * a.value;
            let deviation = (b.value - expected).abs();
            let tolerance = 1e-3 * (1.0 + a.value);
            DilationCheck { kind: a.kind, scale: s, original: a.value, dilated: b.value, expected, deviation, tolerance, pass: deviation <= tolerance }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::BoundaryData;
    use crate::extension::HarmonicFn;
    use std::f64::consts::PI;

    fn cosine2() -> HarmonicFn {
        HarmonicFn::new(BoundaryData::cosine(2, vec![1.0]).unwrap()).unwrap()
    }

    #[test]
    fn halton_is_a_shifted_low_discrepancy_sequence() {
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(3, 2), 0.75);
        assert!((radical_inverse(5, 3) - 7.0 / 9.0).abs() < 1e-15);
        let pts: Vec<Vec<f64>> = (0..4096).map(|i| halton(i, &[0.3, 0.9])).collect();
        let mean: f64 = pts.iter().map(|p| p[0]).sum::<f64>() / 4096.0;
        assert!((mean - 0.5).abs() < 1e-3);
        assert!(pts.iter().all(|p| p.iter().all(|v| (0.0..1.0).contains(v))));
    }

    #[test]
    fn domain_validation() {
        assert!(PairDomain::new(PairKind::Interior, 1.0, 1.0, 1.0).is_err());
        assert!(PairDomain::new(PairKind::Interior, 0.0, 0.1, 1.0).is_err());
        let u = cosine2();
        let d = PairDomain::standard(PairKind::Boundary);
        assert!(estimate_seminorm(&u, 0.5, &d, 999, 1).is_err());
        assert!(estimate_seminorm(&u, 1.0, &d, 1000, 1).is_err());
    }

    #[test]
    fn constant_function_has_zero_seminorms() {
        let u = HarmonicFn::new(BoundaryData::constant(3, 2.5).unwrap()).unwrap();
        let s = seminorm_suite(&u, 0.4, &PairDomain::standard(PairKind::Interior), 1000, 3).unwrap();
        for e in [&s.one, &s.two, &s.three, &s.four, &s.modulus_boundary, &s.modulus_vertical] {
            assert_eq!(e.value, 0.0);
        }
        assert!(s.ordering.holds);
    }

    #[test]
    fn cosine_boundary_estimate_beats_the_half_period_pair() {
        let u = cosine2();
        let e = estimate_seminorm(&u, 0.5, &PairDomain::standard(PairKind::Boundary), 4000, 42).unwrap();
        assert!(e.value >= 2.0 / PI.sqrt() - 1e-6, "{}", e.value);
        // sup_d 2 sin(d/2)/d^{1/2}, attained where tan(d/2) = d
        assert!(e.value <= 1.203_8 + 1e-4, "{}", e.value);
        let (x, y) = e.witness.clone().unwrap();
        let again = difference_quotient(&u, PairKind::Boundary, false, 0.5, &x, &y).unwrap();
        assert!((again - e.value).abs() <= 1e-10 * e.value);
    }

    #[test]
    fn ordering_and_modulus_relations() {
        let u = cosine2();
        let s = seminorm_suite(&u, 0.5, &PairDomain::standard(PairKind::Interior), 2000, 7).unwrap();
        assert!(s.ordering.holds, "{:?}", s.ordering);
        assert!(s.modulus_boundary.value <= s.two.value + 1e-12);
        for e in [&s.one, &s.two, &s.three, &s.four] {
            let (x, y) = e.witness.clone().unwrap();
            let r = difference_quotient(&u, e.kind, false, 0.5, &x, &y).unwrap();
            assert!((r - e.value).abs() <= 1e-10 * e.value.max(1e-300));
        }
    }

    #[test]
    fn seed_determinism() {
        let u = cosine2();
        let d = PairDomain::standard(PairKind::Interior);
        let a = serde_json::to_string(&seminorm_suite(&u, 0.3, &d, 1500, 9).unwrap()).unwrap();
        let b = serde_json::to_string(&seminorm_suite(&u, 0.3, &d, 1500, 9).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn larger_budget_never_lowers_the_sampled_maximum() {
        // the first `budget` Halton points are a prefix of the larger sample
        let u = cosine2();
        let d = PairDomain::standard(PairKind::Vertical);
        let search = Search { u: &u, domain: d, modulus: false, alpha: 0.5, n: 2 };
        let shift = [0.1, 0.2, 0.3];
        let best = |m: u64| (0..m).filter_map(|i| search.ratio(&halton(i, &shift)).unwrap()).map(|(r, _)| r).fold(0.0, f64::max);
        assert!(best(2000) >= best(1000));
    }

    #[test]
    fn dilation_scales_by_s_to_the_alpha() {
        let u = cosine2();
        for s in [0.5, 2.0] {
            for c in dilation_check(&u, s, 0.5, &PairDomain::standard(PairKind::Interior), 1000, 5).unwrap() {
                assert!(c.pass, "{c:?}");
            }
        }
        assert!(dilation_check(&u, 20.0, 0.5, &PairDomain::standard(PairKind::Interior), 1000, 5).is_err());
    }
}
