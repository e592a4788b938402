//! Gamma function, unit-ball volumes and the Gautschi bounds.

use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Largest argument for which `Γ(x)` is representable in `f64`.
pub const GAMMA_MAX_ARG: f64 = 171.62;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(z: f64) -> f64 {
    // z = x - 1
    let mut acc = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    acc
}

/// `Γ(x)` for `x > 0`.
///
/// Lanczos approximation on `[0.5, ∞)` and the reflection formula below.
/// Relative error is about `1e-15` on `(0, 170]`.
pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("gamma requires a positive argument, got {x}")));
    }
    if x > GAMMA_MAX_ARG {
        return Err(domain(format!("gamma({x}) overflows f64")));
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma_unchecked(1.0 - x));
    }
    // exact factorials for small integers
    if x == x.floor() && x <= 23.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return f;
    }
    if x >= 10.0 {
        // the exponential factor loses ~x ulps; recur down to [9, 10) instead
        let m = x.floor() - 9.0;
        let x0 = x - m;
        let mut p = lanczos(x0);
        let mut k = x0;
        while k < x {
            p *= k;
            k += 1.0;
        }
        return p;
    }
    lanczos(x)
}

fn lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    let half = t.powf(0.5 * (z + 0.5));
    (2.0 * PI).sqrt() * half * ((-t).exp() * half) * lanczos_sum(z)
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("ln_gamma requires a positive argument, got {x}")));
    }
    if x < 0.5 {
        return Ok((PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x)?);
    }
    if x < 100.0 {
        return Ok(gamma_unchecked(x).ln());
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln())
}

/// `Γ(a) / Γ(b)` without intermediate overflow.
pub fn gamma_ratio(a: f64, b: f64) -> Result<f64> {
    if a.max(b) < 150.0 {
        Ok(gamma(a)? / gamma(b)?)
    } else {
        Ok((ln_gamma(a)? - ln_gamma(b)?).exp())
    }
}

/// Euler Beta function `B(a, b) = Γ(a)Γ(b)/Γ(a+b)`.
pub fn beta(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(domain(format!("beta requires positive arguments, got ({a}, {b})")));
    }
    if a + b < 150.0 {
        Ok(gamma(a)? * gamma(b)? / gamma(a + b)?)
    } else {
        Ok((ln_gamma(a)? + ln_gamma(b)? - ln_gamma(a + b)?).exp())
    }
}

/// Lebesgue measure of the unit ball in `R^n`, `π^{n/2} / Γ(n/2 + 1)`.
pub fn ball_volume(n: usize) -> Result<f64> {
    if n > 300 {
        return Err(domain(format!("ball_volume({n}) is outside the supported range")));
    }
    let h = n as f64 / 2.0;
    Ok(PI.powf(h) / gamma(h + 1.0)?)
}

/// Surface measure of the unit sphere `S^d ⊂ R^{d+1}`, i.e. `2π^{(d+1)/2}/Γ((d+1)/2)`.
///
/// `S^0 = {-1, 1}` has counting measure 2.
pub fn sphere_area(d: usize) -> Result<f64> {
    let h = (d as f64 + 1.0) / 2.0;
    Ok(2.0 * PI.powf(h) / gamma(h)?)
}

/// Outcome of evaluating both sides of the Gautschi inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GautschiCheck {
    pub holds: bool,
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
    /// `middle - lower`
    pub lower_slack: f64,
    /// `upper - middle`
    pub upper_slack: f64,
}

/// Evaluates `x^{1-s} ≤ Γ(x+1)/Γ(x+s) ≤ (x+1)^{1-s}`.
pub fn gautschi_holds(x: f64, s: f64) -> Result<GautschiCheck> {
    if !(x > 0.0) {
        return Err(domain(format!("gautschi requires x > 0, got {x}")));
    }
    if !(s > 0.0 && s < 1.0) {
        return Err(domain(format!("gautschi requires s in (0,1), got {s}")));
    }
    let middle = gamma_ratio(x + 1.0, x + s)?;
    let lower = x.powf(1.0 - s);
    let upper = (x + 1.0).powf(1.0 - s);
    Ok(GautschiCheck {
        holds: lower <= middle && middle <= upper,
        lower,
        middle,
        upper,
        lower_slack: middle - lower,
        upper_slack: upper - middle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn known_values() {
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        assert_relative_eq!(gamma(0.5).unwrap(), 1.772_453_850_905_516, max_relative = 1e-14);
        // 40-digit reference value
        assert_relative_eq!(gamma(0.25).unwrap(), 3.625_609_908_221_908_3, max_relative = 1e-13);
        assert_relative_eq!(gamma(5.0).unwrap(), 24.0, max_relative = 1e-15);
        assert_relative_eq!(gamma(170.0).unwrap(), 4.269_068_009_004_705e304, max_relative = 1e-13);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(gamma(0.0).is_err());
        assert!(gamma(-1.5).is_err());
        assert!(gamma(f64::NAN).is_err());
        assert!(gamma(172.0).is_err());
        assert!(ball_volume(301).is_err());
    }

    #[test]
    fn recurrence_and_reflection() {
        let mut x = 0.1;
        while x <= 80.0 {
            let lhs = gamma(x + 1.0).unwrap();
            let rhs = x * gamma(x).unwrap();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
            x += 0.137;
        }
        for i in 1..200 {
            let x = i as f64 / 200.0;
            let r = gamma(x).unwrap() * gamma(1.0 - x).unwrap() * (PI * x).sin() / PI;
            assert_relative_eq!(r, 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn ln_gamma_matches_gamma() {
        for &x in &[0.3, 1.7, 12.5, 99.0, 140.5] {
            assert_relative_eq!(ln_gamma(x).unwrap(), gamma(x).unwrap().ln(), max_relative = 1e-13);
        }
    }

    #[test]
    fn ball_volumes() {
        assert_relative_eq!(ball_volume(0).unwrap(), 1.0);
        assert_relative_eq!(ball_volume(1).unwrap(), 2.0, max_relative = 1e-15);
        assert_relative_eq!(ball_volume(2).unwrap(), PI, max_relative = 1e-15);
        assert_relative_eq!(ball_volume(3).unwrap(), 4.0 * PI / 3.0, max_relative = 1e-15);
        for n in 2..=300 {
            let r = ball_volume(n).unwrap() / ball_volume(n - 2).unwrap();
            assert_relative_eq!(r, 2.0 * PI / n as f64, max_relative = 1e-12);
        }
        assert_relative_eq!(sphere_area(0).unwrap(), 2.0, max_relative = 1e-15);
        assert_relative_eq!(sphere_area(1).unwrap(), 2.0 * PI, max_relative = 1e-15);
        assert_relative_eq!(sphere_area(2).unwrap(), 4.0 * PI, max_relative = 1e-15);
    }

    #[test]
    fn gautschi_examples() {
        let g = gautschi_holds(1.0, 0.5).unwrap();
        assert!(g.holds);
        assert_relative_eq!(g.middle, std::f64::consts::FRAC_2_SQRT_PI, max_relative = 1e-13);
        assert_relative_eq!(g.lower, 1.0);
        assert_relative_eq!(g.upper, 2f64.sqrt(), max_relative = 1e-15);
        assert!(gautschi_holds(0.5, 0.5).unwrap().holds);
        assert!(gautschi_holds(0.0, 0.5).is_err());
        assert!(gautschi_holds(1.0, 1.0).is_err());
    }

    #[test]
    fn gautschi_grid() {
        for i in 1..=500 {
            let x = i as f64 * 0.1;
            for j in 1..=9 {
                let s = j as f64 / 10.0;
                let g = gautschi_holds(x, s).unwrap();
                assert!(g.holds, "x={x} s={s}: {g:?}");
            }
        }
    }
}
