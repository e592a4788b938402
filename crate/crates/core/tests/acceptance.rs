//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Runs without the libtest harness so the summary lines are always shown.

use std::process::Command;
use std::time::{Duration, Instant};

use harmonics::boundary::{BoundaryData, Family};
use harmonics::constants::{gamma_star, jn_bundle, k_n, liu_constant, m_n_khavinson};
use harmonics::extension::{kernel_mass, laplacian_fd, Harmonic, HarmonicFn, QuadratureSpec};
use harmonics::seminorms::{dilation_check, estimate_seminorm, seminorm_suite, PairDomain, PairKind};
use harmonics::verification::{
    default_roster, log_grid, verify_a_lambda, verify_arc, verify_boundary_theorem, verify_interior_gradient, verify_modulus_lemmas,
    verify_vertical_theorem, CheckOptions, GridValues, InequalityCheck, DEFAULT_ALPHAS,
};
use harmonics::HalfSpacePoint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn random_point(rng: &mut ChaCha8Rng, n: usize, radius: f64, lo: f64, hi: f64) -> HalfSpacePoint {
    let h: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-radius..radius)).collect();
    let t = lo * (hi / lo).powf(rng.gen::<f64>());
    HalfSpacePoint::new(h, t).unwrap()
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let spec = QuadratureSpec::with_tol(1e-10);
    let mut worst: f64 = 0.0;
    for n in 2..=4 {
        for _ in 0..50 {
            let x = random_point(&mut rng, n, 5.0, 1e-3, 10.0);
            let (m, d) = kernel_mass(&x, &spec).map_err(err)?;
            worst = worst.max((m - 1.0).abs()).max(d.abs());
        }
    }
    ensure(worst <= 1e-8, || format!("max deviation {worst:e} > 1e-8"))?;
    Ok(format!("150 points (50 per n), max |mass-1|, |d_n mass| = {worst:.2e}"))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let spec = QuadratureSpec::with_tol(1e-7);
    let cases = [
        BoundaryData::cosine(2, vec![1.0]).unwrap(),
        BoundaryData::cosine(3, vec![0.6, -0.8]).unwrap(),
        BoundaryData::cosine(4, vec![0.5, 0.2, -0.7]).unwrap(),
        BoundaryData::sign(2).unwrap(),
    ];
    let mut worst: f64 = 0.0;
    for d in &cases {
        let exact = HarmonicFn::closed_form(d.clone()).map_err(err)?;
        let quad = HarmonicFn::quadrature(d.clone(), spec).map_err(err)?;
        for _ in 0..200 {
            let x = random_point(&mut rng, d.n, 5.0, 1e-2, 10.0);
            let (a, b) = (exact.evaluate(&x, true).map_err(err)?, quad.evaluate(&x, true).map_err(err)?);
            worst = worst.max((a.value - b.value).abs());
            for (p, q) in a.gradient.unwrap().iter().zip(b.gradient.unwrap()) {
                worst = worst.max((p - q).abs());
            }
        }
    }
    let sign = HarmonicFn::quadrature(BoundaryData::sign(2).unwrap(), spec).map_err(err)?;
    let s11 = sign.value(&HalfSpacePoint::new(vec![1.0], 1.0).unwrap()).map_err(err)?;
    ensure(worst <= 1e-6, || format!("max deviation {worst:e} > 1e-6"))?;
    ensure((s11 - 0.5).abs() <= 1e-6, || format!("sign quadrature at (1,1) = {s11}"))?;
    Ok(format!("4 families x 200 points, max |closed - quadrature| (value and gradient) = {worst:.2e}; sign(1,1) = {s11:.9}"))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let closed = [
        HarmonicFn::closed_form(BoundaryData::cosine(3, vec![1.0, 0.5]).unwrap()).unwrap(),
        HarmonicFn::closed_form(BoundaryData::sign(2).unwrap()).unwrap(),
        HarmonicFn::closed_form(BoundaryData::kernel_translate(3, vec![0.2, -0.1], 0.7, 1.0).unwrap()).unwrap(),
    ];
    let spec = QuadratureSpec::with_tol(1e-10);
    let quad = [
        HarmonicFn::quadrature(BoundaryData::gaussian(2, vec![0.3], 1.0, 1.0).unwrap(), spec).unwrap(),
        HarmonicFn::quadrature(BoundaryData::clipped_power(2, 1.0, 0.75).unwrap(), spec).unwrap(),
        HarmonicFn::quadrature(BoundaryData::gaussian(3, vec![0.3, -0.2], 1.0, 1.0).unwrap(), spec).unwrap(),
    ];
    let (mut lap_closed, mut lap_quad, mut grad): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut count = 0;
    for (set, step, is_closed) in [(&closed, 1e-3, true), (&quad, 1e-2, false)] {
        for u in set.iter() {
            for _ in 0..17 {
                let x = random_point(&mut rng, u.n(), 2.0, 0.2, 2.0);
                let l = laplacian_fd(u, &x, step).map_err(err)?.abs();
                if is_closed {
                    lap_closed = lap_closed.max(l);
                } else {
                    lap_quad = lap_quad.max(l);
                }
                // gradient against central differences of values
                if count < 100 {
                    count += 1;
                    let g = u.evaluate(&x, true).map_err(err)?.gradient.unwrap();
                    let c = x.coords();
                    let h = if is_closed { 1e-5 } else { 1e-4 };
                    for i in 0..c.len() {
                        let (mut p, mut m) = (c.clone(), c.clone());
                        p[i] += h;
                        m[i] -= h;
                        let fp = u.value(&HalfSpacePoint::from_coords(&p).unwrap()).map_err(err)?;
                        let fm = u.value(&HalfSpacePoint::from_coords(&m).unwrap()).map_err(err)?;
                        grad = grad.max(((fp - fm) / (2.0 * h) - g[i]).abs());
                    }
                }
            }
        }
    }
    ensure(lap_closed <= 1e-5, || format!("closed-form Laplacian {lap_closed:e}"))?;
    ensure(lap_quad <= 1e-3, || format!("quadrature Laplacian {lap_quad:e}"))?;
    ensure(grad <= 1e-5, || format!("gradient vs finite differences {grad:e}"))?;
    Ok(format!("|FD Laplacian| closed {lap_closed:.1e}, quadrature {lap_quad:.1e}; gradient vs FD on {count} points {grad:.1e}"))
}

fn criterion_4() -> Outcome {
    use std::f64::consts::PI;
    let close = |a: f64, b: f64, what: &str| ensure((a - b).abs() <= 1e-8, || format!("{what}: {a} vs {b}"));
    close(k_n(2).map_err(err)?, 4.0 / PI, "K_2")?;
    close(k_n(3).map_err(err)?, 1.5, "K_3")?;
    close(m_n_khavinson(2).map_err(err)?, 4.0 / PI, "M_2")?;
    close(m_n_khavinson(3).map_err(err)?, 2.0 / 3f64.sqrt(), "M_3")?;
    for n in 2..=10 {
        close(liu_constant(n, 0.0).map_err(err)?, k_n(n).map_err(err)?, &format!("N_{n}(0)"))?;
    }
    for n in 2..=100 {
        let k = k_n(n).map_err(err)?;
        ensure(k <= ((n + 2) as f64).sqrt(), || format!("K_{n} = {k} > sqrt(n+2)"))?;
    }
    let mut worst_res: f64 = 0.0;
    for n in 2..=100 {
        worst_res = worst_res.max(gamma_star(n).map_err(err)?.residual);
    }
    ensure(worst_res <= 1e-12, || format!("gamma* residual {worst_res:e}"))?;
    let b = jn_bundle(2, 0.5).map_err(err)?;
    close(b.exact, 2f64.sqrt(), "J_2(0.5)")?;
    ensure(b.exact <= b.gamma_bound && (b.gamma_bound - 2.0 * 2f64.sqrt()).abs() < 1e-12 && b.gamma_bound <= b.final_bound && b.final_bound == 8.0, || {
        format!("J_2 chain {} <= {} <= {}", b.exact, b.gamma_bound, b.final_bound)
    })?;
    Ok(format!("K/M closed forms, N_n(0)=K_n (n<=10), K_n<=sqrt(n+2) (n<=100), max gamma* residual {worst_res:.1e}, J_2(0.5) = {:.12}", b.exact))
}

/// Families with analytic Hölder constants in dimension `n`.
fn analytic_families(n: usize) -> Vec<HarmonicFn> {
    let m = n - 1;
    let mut wave = vec![0.0; m];
    wave[0] = 1.0;
    if m > 1 {
        wave[1] = 0.5;
    }
    vec![
        HarmonicFn::new(BoundaryData::constant(n, 1.0).unwrap()).unwrap(),
        HarmonicFn::new(BoundaryData::cosine(n, wave).unwrap()).unwrap(),
        HarmonicFn::new(BoundaryData::clipped_power(n, 1.0, 0.75).unwrap()).unwrap(),
        HarmonicFn::new(BoundaryData::gaussian(n, vec![0.0; m], 1.0, 1.0).unwrap()).unwrap(),
    ]
}

fn summarize(checks: &[InequalityCheck], limit: f64) -> Result<(f64, usize), String> {
    let mut worst: f64 = 0.0;
    for c in checks {
        ensure(c.pass && c.worst_ratio <= limit, || {
            format!("{} ({} n={} alpha={:?}): worst ratio {} (budget {})", c.name, c.family, c.n, c.alpha, c.worst_ratio, c.tol_budget)
        })?;
        worst = worst.max(c.worst_ratio);
    }
    Ok((worst, checks.len()))
}

fn theorem_suite(vertical: bool) -> Outcome {
    let opts = CheckOptions::default();
    let mut checks = Vec::new();
    for n in [2, 3] {
        for u in analytic_families(n) {
            let grid = GridValues::compute(&u, log_grid(n, 40, 25, opts.radius)).map_err(err)?;
            for &alpha in &DEFAULT_ALPHAS {
                let r = if vertical {
                    let mut v = verify_vertical_theorem(&u, alpha, &grid, &opts).map_err(err)?;
                    v.extend(verify_a_lambda(&u, alpha, &opts).map_err(err)?);
                    v
                } else {
                    verify_boundary_theorem(&u, alpha, &grid, &opts).map_err(err)?
                };
                checks.extend(r);
            }
        }
    }
    let (worst, count) = summarize(&checks, 1.0 + 1e-4)?;
    Ok(format!("{count} checks on 1000-point grids, n in {{2,3}}, alpha in {{0.3,0.5,0.7}}; worst ratio {worst:.3e}"))
}

fn criterion_5() -> Outcome {
    theorem_suite(false)
}

fn criterion_6() -> Outcome {
    theorem_suite(true)
}

fn criterion_7() -> Outcome {
    let opts = CheckOptions::default();
    let mut fns = default_roster().map_err(err)?;
    fns.push(HarmonicFn::new(BoundaryData::sign(2).unwrap()).unwrap());
    fns.push(HarmonicFn::new(BoundaryData::sign(3).unwrap()).unwrap());
    let mut checks = Vec::new();
    for u in &fns {
        let grid = GridValues::compute(u, log_grid(u.n(), 40, 25, opts.radius)).map_err(err)?;
        checks.extend(verify_interior_gradient(u, u.data.name(), &grid, &opts).map_err(err)?);
    }
    let (worst, count) = summarize(&checks, 1.0 + 1e-4)?;
    // sign data on the axis: |grad U| = (2/pi)/x_2 = M_2/(2 x_2)
    let sign = HarmonicFn::new(BoundaryData::sign(2).unwrap()).unwrap();
    let axis: Vec<HalfSpacePoint> = [1e-3, 0.1, 1.0, 10.0].iter().map(|&h| HalfSpacePoint::new(vec![0.0], h).unwrap()).collect();
    let grid = GridValues::compute(&sign, axis).map_err(err)?;
    let r = verify_interior_gradient(&sign, "sign", &grid, &opts).map_err(err)?[0].worst_ratio;
    ensure((r - 0.5).abs() <= 1e-12, || format!("sign axis ratio {r}"))?;
    Ok(format!("{count} checks ({} functions incl. sign n=2,3); worst ratio {worst:.4}; sign axis ratio {r:.15}", fns.len()))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_harmonics"))
}

fn temp_json(dir: &std::path::Path, name: &str, body: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn criterion_8() -> Outcome {
    use std::f64::consts::PI;
    let bx = PairDomain::standard(PairKind::Interior);
    let budget = 20_000;
    let mut lines = Vec::new();
    for u in default_roster().map_err(err)? {
        for &alpha in &DEFAULT_ALPHAS {
            let s = seminorm_suite(&u, alpha, &bx, budget, 42).map_err(err)?;
            ensure(s.ordering.holds, || format!("ordering violated for {} n={} alpha={alpha}: {:?}", u.data.name(), u.n(), s.ordering))?;
        }
    }
    lines.push("ordering on 5 roster functions x 3 alphas".to_string());
    let mut worst_dev: f64 = 0.0;
    let cos = HarmonicFn::new(BoundaryData::cosine(2, vec![1.0]).unwrap()).unwrap();
    let gauss = HarmonicFn::new(BoundaryData::gaussian(2, vec![0.0], 1.0, 1.0).unwrap()).unwrap();
    for u in [&cos, &gauss] {
        for s in [0.5, 2.0] {
            for c in dilation_check(u, s, 0.5, &bx, 5000, 42).map_err(err)? {
                ensure(c.pass, || format!("dilation {} s={s} {:?}: {} vs {}", u.data.name(), c.kind, c.dilated, c.expected))?;
                worst_dev = worst_dev.max(c.deviation / c.tolerance);
            }
        }
    }
    lines.push(format!("dilation s in {{0.5,2}} worst deviation/tolerance {worst_dev:.1e}"));
    let e = estimate_seminorm(&cos, 0.5, &PairDomain::standard(PairKind::Boundary), 100_000, 42).map_err(err)?;
    ensure(e.value >= 2.0 / PI.sqrt() - 1e-6, || format!("cosine boundary estimate {}", e.value))?;
    lines.push(format!("cosine |U|_2 estimate {:.6} >= {:.6}", e.value, 2.0 / PI.sqrt()));

    let dir = tempfile::tempdir().map_err(err)?;
    let data = temp_json(dir.path(), "c.json", r#"{"family":"cosine","n":2,"params":{"wave":[1.0]}}"#);
    let mut outputs = Vec::new();
    for _ in 0..2 {
        let o = bin().args(["seminorm", "--data"]).arg(&data).args(["--alpha", "0.5", "--budget", "100000", "--seed", "42"]).output().map_err(err)?;
        ensure(o.status.code() == Some(0), || format!("seminorm exit {:?}", o.status.code()))?;
        outputs.push(o.stdout);
    }
    ensure(outputs[0] == outputs[1], || "seminorm reports differ between runs".into())?;
    // parallelism does not change the bytes
    let o = bin().env("HARMONICS_THREADS", "1").args(["seminorm", "--data"]).arg(&data).args(["--alpha", "0.5", "--budget", "100000", "--seed", "42"]).output().map_err(err)?;
    ensure(o.stdout == outputs[0], || "single-thread report differs".into())?;
    lines.push(format!("byte-identical seminorm reports ({} bytes)", outputs[0].len()));
    let verify = |threads: &str| {
        bin().env("HARMONICS_THREADS", threads).args(["verify", "--data"]).arg(&data).args(["--alpha", "0.5", "--budget", "2000", "--seed", "7"]).output()
    };
    let (a, b) = (verify("0").map_err(err)?, verify("1").map_err(err)?);
    ensure(a.status.code() == Some(0) && a.stdout == b.stdout, || "verify reports differ between runs".into())?;
    lines.push(format!("byte-identical verify reports ({} bytes)", a.stdout.len()));
    Ok(lines.join("; "))
}

fn criterion_9() -> Outcome {
    let opts = CheckOptions { budget: 10_000, ..CheckOptions::default() };
    let fns = [
        HarmonicFn::new(BoundaryData::cosine(2, vec![1.0]).unwrap()).unwrap(),
        HarmonicFn::new(BoundaryData::cosine(3, vec![1.0, 0.5]).unwrap()).unwrap(),
        HarmonicFn::new(
            BoundaryData::new(Family::Cosine { wave: vec![1.0], phase: 0.0, amplitude: 1.0, offset: 0.3, clip: Some(0.8) }, 2).unwrap(),
        )
        .unwrap(),
    ];
    let mut checks = Vec::new();
    for u in &fns {
        for &alpha in &DEFAULT_ALPHAS {
            checks.extend(verify_modulus_lemmas(u, alpha, &opts).map_err(err)?);
        }
    }
    let (worst, count) = summarize(&checks, f64::INFINITY)?;
    Ok(format!("{count} checks, 10^4 validation pairs each; worst ratio {worst:.4}"))
}

fn criterion_10() -> Outcome {
    let opts = CheckOptions::default();
    let mut checks = Vec::new();
    for n in [2, 3] {
        for &alpha in &DEFAULT_ALPHAS {
            checks.extend(verify_arc(n, alpha, 500, 10 + n as u64, &opts).map_err(err)?);
        }
    }
    let integral: Vec<_> = checks.iter().filter(|c| c.name == "arc.integral").cloned().collect();
    let invariance: Vec<_> = checks.iter().filter(|c| c.name == "arc.invariance").cloned().collect();
    let (worst, _) = summarize(&integral, 1.0)?;
    let (inv, _) = summarize(&invariance, 1.0)?;
    Ok(format!("3000 pairs; worst value/bound {worst:.4}; worst invariance deviation {:.1e}", inv * 1e-9))
}

fn criterion_11() -> Outcome {
    let dir = tempfile::tempdir().map_err(err)?;
    let code = |args: &[&str]| -> Result<Option<i32>, String> { Ok(bin().args(args).output().map_err(err)?.status.code()) };
    let corrupted = code(&["verify", "--roster", "default", "--budget", "2000", "--alpha", "0.5", "--bound-scale", "1e-3"])?;
    ensure(corrupted == Some(1), || format!("corrupted bound exit {corrupted:?}"))?;
    let good = temp_json(dir.path(), "c.json", r#"{"family":"cosine","n":2,"params":{"wave":[1.0]}}"#);
    let bad_json = temp_json(dir.path(), "bad.json", r#"{"family":"cosine","n":2,"params":{"wave":"x"}"#);
    let bad_csv = temp_json(dir.path(), "bad.csv", "0,1\n1,abc\n");
    let missing = dir.path().join("missing.json");
    let s = |p: &std::path::Path| p.to_str().unwrap().to_string();
    let cases: Vec<Vec<String>> = vec![
        vec!["verify".into(), "--data".into(), s(&missing)],
        vec!["verify".into(), "--data".into(), s(&bad_json)],
        vec!["extend".into(), "--data".into(), s(&good), "--points".into(), s(&bad_csv)],
        vec!["constants".into(), "--n".into(), "1..3".into()],
        vec!["arc".into(), "--x".into(), "0,1".into(), "--y".into(), "0,2".into(), "--alpha".into(), "1.5".into()],
        vec!["frobnicate".into()],
    ];
    for c in &cases {
        let args: Vec<&str> = c.iter().map(String::as_str).collect();
        let got = code(&args)?;
        ensure(got == Some(2), || format!("`{}` exited {got:?}", c.join(" ")))?;
    }
    Ok(format!("corrupted bound -> exit 1; {} malformed inputs -> exit 2", cases.len()))
}

fn main() {
    // `cargo test -- <filter>` passes arguments; honour a numeric filter
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let criteria = [
        Criterion { id: 1, title: "kernel identities", limit: Duration::from_secs(30), run: criterion_1 },
        Criterion { id: 2, title: "quadrature vs closed forms", limit: Duration::from_secs(120), run: criterion_2 },
        Criterion { id: 3, title: "harmonicity and gradients", limit: Duration::from_secs(600), run: criterion_3 },
        Criterion { id: 4, title: "constants table", limit: Duration::from_secs(10), run: criterion_4 },
        Criterion { id: 5, title: "boundary Hölder theorem", limit: Duration::from_secs(600), run: criterion_5 },
        Criterion { id: 6, title: "vertical Hölder theorem and A_lambda", limit: Duration::from_secs(600), run: criterion_6 },
        Criterion { id: 7, title: "interior gradient bounds", limit: Duration::from_secs(120), run: criterion_7 },
        Criterion { id: 8, title: "seminorm machinery", limit: Duration::from_secs(600), run: criterion_8 },
        Criterion { id: 9, title: "modulus lemmas", limit: Duration::from_secs(600), run: criterion_9 },
        Criterion { id: 10, title: "arc inequality", limit: Duration::from_secs(600), run: criterion_10 },
        Criterion { id: 11, title: "falsification paths", limit: Duration::from_secs(600), run: criterion_11 },
    ];
    let mut failed = 0;
    for c in criteria.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if took <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; exceeded time limit {:?}", c.limit)),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!("criterion {:>2} {} [{}] ({:.1?}): {}", c.id, if ok { "PASS" } else { "FAIL" }, c.title, took, detail);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
