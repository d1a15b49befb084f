//! Acceptance suite: one pass/fail line per criterion, nonzero exit on any
//! failure. Run with `cargo test --test acceptance`.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use rand::Rng;
use serde::Deserialize;

use onebitcs::designs::{
    build_verified, sizing, verify_list_union_free, BinaryDesign, DesignRequest, VerifyOptions,
    DEFAULT_PAIR_BUDGET,
};
use onebitcs::harness::{run_experiment, ExperimentConfig, ExperimentReport, Scheme};
use onebitcs::oracles::{
    cauchy_check, descartes_check, gaussian_separation_estimate, kernel_independence_check, random_polynomial,
    row_polynomial, SparsePolynomial,
};
use onebitcs::recovery::{
    approx_recover, clamp_epsilon, superset_dynrange, superset_rationals, superset_reals, superset_same_sign,
    SupportEstimate,
};
use onebitcs::seed::rng_from_seed;
use onebitcs::sensing::{
    attach_generic_constants, build_dynamic_range, build_gaussian, build_prime_log, build_same_sign, FloatTolerance,
    SensingMatrix, Sign,
};
use onebitcs::signals::{cancellation_signal, random_sparse, SignalClass, SparseSignal};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    ensure(elapsed < Duration::from_secs(limit_secs), || {
        format!("took {elapsed:.1?}, limit {limit_secs} s")
    })
}

/// `(|S|, |S ∩ supp|, |S \ supp|)` computed directly from the index sets.
fn overlap(est: &SupportEstimate, support: &[usize]) -> (usize, usize, usize) {
    let hits = est.indices.iter().filter(|j| support.contains(j)).count();
    (est.len(), hits, est.len() - hits)
}

fn luf_request(n: usize, k: usize, eps: f64) -> DesignRequest {
    DesignRequest::strongly_list_union_free(n, k, eps / 2.0, 0.5)
}

fn verified(request: &DesignRequest, seed: u64) -> Result<BinaryDesign, String> {
    build_verified(request, seed, VerifyOptions::default()).map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (n, k, delta, alpha) = (12, 2, 0.5, 0.5);
    let request = DesignRequest::strongly_list_union_free(n, k, delta, alpha);
    let design = verified(&request, 1)?;
    let attempts = design.params().attempts.unwrap_or(0);
    ensure((1..=50).contains(&attempts), || format!("{attempts} attempts"))?;
    let mut checks = Vec::new();
    for round in 0..2 {
        for t in 1..=k {
            let ell = ((delta * t as f64) - 1e-9).ceil().max(1.0) as usize;
            let report = verify_list_union_free(&design, t, ell, alpha, DEFAULT_PAIR_BUDGET).map_err(|e| e.to_string())?;
            ensure(report.passed, || format!("t = {t}, ell = {ell}: witness {:?}", report.witness))?;
            checks.push((round, t, report));
        }
    }
    ensure(checks[..k] .iter().zip(&checks[k..]).all(|(a, b)| a.2 == b.2), || {
        "re-verification differs".into()
    })?;
    within(start.elapsed(), 30)?;
    Ok(format!(
        "m = {}, d = {:?}, {attempts} attempt(s), every t <= {k} passes twice, {:.1?}",
        design.m(),
        design.d(),
        start.elapsed()
    ))
}

#[derive(Deserialize)]
struct SizingRow {
    kind: String,
    n: usize,
    k: usize,
    delta: f64,
    alpha: Option<f64>,
    q: Option<usize>,
    m_prime: Option<usize>,
    m: usize,
    d: Option<usize>,
}

/// Second, differently arranged evaluation of the sizing formulas.
fn rust_reference(row: &SizingRow) -> (usize, Option<usize>, Option<usize>, Option<usize>) {
    let (n, k) = (row.n as f64, row.k as f64);
    match row.alpha {
        None => {
            let m = (20.0 * k * (n.ln() + 2.0 - k.ln()) / row.delta).ceil() as usize;
            (m, None, None, None)
        }
        Some(alpha) => {
            let ell = (row.delta * k - 1e-9).ceil().max(1.0);
            let q = ((k + ell) * std::f64::consts::E.powi(2) / (alpha * alpha)).ceil() as usize;
            let m_prime = (2.0 * (k + ell) * (n.ln() - (k + ell).ln() + std::f64::consts::E)
                / (alpha * ell * (1.0 - alpha.ln())))
            .ceil() as usize;
            (m_prime * q, Some(m_prime), Some(q), Some(m_prime))
        }
    }
}

fn criterion_2() -> Outcome {
    let rows: Vec<SizingRow> = serde_json::from_str(include_str!("data/sizing_reference.json"))
        .map_err(|e| e.to_string())?;
    ensure(rows.len() == 20, || format!("{} tuples", rows.len()))?;
    for row in &rows {
        let request = match row.alpha {
            None => DesignRequest::strongly_list_disjunct(row.n, row.k, row.delta),
            Some(a) => DesignRequest::strongly_list_union_free(row.n, row.k, row.delta, a),
        };
        let design = request.sample(7).map_err(|e| e.to_string())?;
        let p = design.params();
        let built = (design.m(), p.m_prime, p.q, if row.alpha.is_some() { design.d() } else { None });
        let script = (row.m, row.m_prime, row.q, row.d);
        ensure(built == script, || format!("{} {:?}: built {built:?}, script {script:?}", row.kind, (row.n, row.k)))?;
        ensure(rust_reference(row) == script, || {
            format!("re-evaluation {:?} vs script {script:?}", rust_reference(row))
        })?;
        if row.alpha.is_none() {
            ensure(design.m() == sizing::strongly_list_disjunct_rows(row.n, row.k, row.delta), || "sizing fn".into())?;
        }
    }
    Ok("20/20 tuples match the script and an independent re-evaluation".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let (n, k, eps) = (12, 2, 1.0);
    let design = verified(&luf_request(n, k, eps), 3)?;
    let a = attach_generic_constants(&design, &mut rng_from_seed(30));
    let mut rng = rng_from_seed(31);
    for trial in 0..200 {
        let x = random_sparse(n, k, SignalClass::GeneralReal, &mut rng).map_err(|e| e.to_string())?;
        let y = a.measure(&x, FloatTolerance::default()).map_err(|e| e.to_string())?;
        let est = approx_recover(&design, &y, eps).map_err(|e| e.to_string())?;
        let s = x.sparsity() as f64;
        let (size, hits, extras) = overlap(&est, &x.support());
        ensure(
            size as f64 <= s && hits as f64 >= (1.0 - eps) * s && extras as f64 <= eps * s,
            || format!("trial {trial}: |S| = {size}, hits = {hits}, extras = {extras}"),
        )?;
    }
    within(start.elapsed(), 60)?;
    Ok(format!("200/200 trials meet all three conditions, {:.1?}", start.elapsed()))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let (n, k) = (12, 2);
    let eps = clamp_epsilon(n, k, 1.0);
    let design = verified(&luf_request(n, k, eps), 4)?;
    let a = attach_generic_constants(&design, &mut rng_from_seed(40));
    let mut rng = rng_from_seed(41);
    let mut signals = Vec::new();
    for _ in 0..200 {
        signals.push(random_sparse(n, k, SignalClass::GeneralReal, &mut rng).map_err(|e| e.to_string())?);
    }
    let mut adversarial = 0;
    while adversarial < 100 {
        let row = rng.random_range(0..a.m());
        let support = a.row_support(row);
        if support.len() < 2 {
            continue;
        }
        let i1 = rng.random_range(0..support.len());
        let i2 = (i1 + rng.random_range(1..support.len())) % support.len();
        let x = cancellation_signal(&a, row, support[i1], support[i2]).map_err(|e| e.to_string())?;
        let y = a.measure(&x, FloatTolerance::default()).map_err(|e| e.to_string())?;
        ensure(y.get(row) == Sign::Zero, || format!("row {row} not zeroed"))?;
        signals.push(x);
        adversarial += 1;
    }
    for (trial, x) in signals.iter().enumerate() {
        let y = a.measure(x, FloatTolerance::default()).map_err(|e| e.to_string())?;
        let est = superset_reals(&a, &y, eps, k).map_err(|e| e.to_string())?;
        let support = x.support();
        let (_, hits, extras) = overlap(&est, &support);
        let cap = (eps * support.len() as f64 * (1.0 + 1e-9)).ceil() as usize;
        ensure(hits == support.len(), || format!("trial {trial}: missed truth"))?;
        ensure(extras < cap, || format!("trial {trial}: {extras} extras, cap {cap}"))?;
    }
    within(start.elapsed(), 120)?;
    Ok(format!(
        "eps = {eps:.4}, 300/300 supersets (100 with a zeroed row), {:.1?}",
        start.elapsed()
    ))
}

/// Polynomials collected by criterion 5 for criterion 7.
struct Induced {
    dynamic: Vec<(SparsePolynomial, BigRational)>,
    same_sign: Vec<SparsePolynomial>,
}

fn criterion_5(induced: &mut Induced) -> Outcome {
    let start = Instant::now();
    let (n, k) = (12, 2);
    // Deliberately unverified: never-delete-truth needs only exact arithmetic.
    let design = DesignRequest::strongly_list_disjunct(n, k, 0.5)
        .sample(5)
        .map_err(|e| e.to_string())?;
    let cases: [(&str, SensingMatrix, SignalClass); 3] = [
        ("dynrange", build_dynamic_range(&design, 4.0).map_err(|e| e.to_string())?, SignalClass::BoundedKappa { eta: 4.0 }),
        ("rationals", build_prime_log(&design), SignalClass::Rational { denom_bound: 50 }),
        ("same_sign", build_same_sign(&design, 1), SignalClass::BoundedRho { r: 1 }),
    ];
    let mut rng = rng_from_seed(50);
    for (name, a, class) in &cases {
        for trial in 0..500 {
            let x = random_sparse(n, k, *class, &mut rng).map_err(|e| e.to_string())?;
            let y = a.measure(&x, FloatTolerance::default()).map_err(|e| e.to_string())?;
            let est = match *name {
                "dynrange" => superset_dynrange(a, &y),
                "rationals" => superset_rationals(a, &y),
                _ => superset_same_sign(a, &y),
            }
            .map_err(|e| e.to_string())?;
            let missed = x.support().iter().filter(|j| !est.contains(**j)).count();
            ensure(missed == 0, || format!("{name} trial {trial}: {missed} false negatives"))?;
            for i in 0..a.m() {
                if *name != "rationals" && a.row_support(i).iter().any(|&j| x.exact(j).is_some()) {
                    let p = row_polynomial(a, i, &x).map_err(|e| e.to_string())?;
                    match *name {
                        "dynrange" => induced.dynamic.push((p, a.rational_bases()[i].clone())),
                        _ => induced.same_sign.push(p),
                    }
                }
            }
        }
    }
    within(start.elapsed(), 120)?;
    Ok(format!("3 x 500 trials, 0 false negatives, {:.1?}", start.elapsed()))
}

/// `sign(Σ x_j log q_j)` from literal products: `w = ∏ v_j`,
/// `z_j = w·u_j/v_j`, compare `∏_{z>0} q^z` with `∏_{z<0} q^{|z|}`.
fn prime_oracle(terms: &[(u64, BigRational)]) -> Sign {
    let w = terms.iter().fold(num_bigint::BigInt::one(), |acc, (_, x)| acc * x.denom());
    let (mut pos, mut neg) = (BigUint::one(), BigUint::one());
    for (q, x) in terms {
        let z = &w * x.numer() / x.denom();
        let e: u32 = z.magnitude().try_into().expect("small exponent");
        let power = Pow::pow(BigUint::from(*q), e);
        if z.is_positive() {
            pos *= power;
        } else {
            neg *= power;
        }
    }
    match pos.cmp(&neg) {
        std::cmp::Ordering::Greater => Sign::Positive,
        std::cmp::Ordering::Less => Sign::Negative,
        std::cmp::Ordering::Equal => Sign::Zero,
    }
}

fn criterion_6() -> Outcome {
    let n = 6;
    let rows: Vec<Vec<u8>> = (1u32..1 << n)
        .map(|mask| (0..n).map(|j| (mask >> j & 1) as u8).collect())
        .collect();
    let a = build_prime_log(&BinaryDesign::from_rows(&rows).map_err(|e| e.to_string())?);
    let values = [-2i64, -1, 1, 2];
    let mut signals = vec![SparseSignal::zero(n)];
    for j1 in 0..n {
        for &v1 in &values {
            signals.push(SparseSignal::from_f64(n, [(j1, v1 as f64)], SignalClass::Rational { denom_bound: 2 }).unwrap());
            for j2 in j1 + 1..n {
                for &v2 in &values {
                    signals.push(
                        SparseSignal::from_f64(n, [(j1, v1 as f64), (j2, v2 as f64)], SignalClass::Rational { denom_bound: 2 })
                            .unwrap(),
                    );
                }
            }
        }
    }
    let mut checked = 0;
    for x in &signals {
        let y = a.measure(x, FloatTolerance::default()).map_err(|e| e.to_string())?;
        for i in 0..a.m() {
            let terms: Vec<(u64, BigRational)> = x
                .entries()
                .filter_map(|(j, e)| a.prime(i, j).map(|q| (q, e.exact.clone())))
                .collect();
            let disjoint = terms.is_empty();
            ensure(y.get(i).is_zero() == disjoint, || format!("row {i}, signal {:?}", x.support()))?;
            let expected = if disjoint { Sign::Zero } else { prime_oracle(&terms) };
            ensure(y.get(i) == expected, || format!("row {i}: {:?} vs oracle {expected:?}", y.get(i)))?;
            checked += 1;
        }
    }
    Ok(format!("{} signals x {} rows = {checked} signs agree with the big-integer oracle", signals.len(), a.m()))
}

fn criterion_7(induced: &Induced) -> Outcome {
    let mut rng = rng_from_seed(70);
    for i in 0..200 {
        let p = random_polynomial(12, 6, 4.0, &mut rng);
        ensure(cauchy_check(&p, 4.0).map_err(|e| e.to_string())?, || format!("cauchy polynomial {i}"))?;
    }
    for i in 0..200 {
        let p = random_polynomial(12, 6, 10.0, &mut rng);
        ensure(descartes_check(&p).map_err(|e| e.to_string())?, || format!("descartes polynomial {i}"))?;
    }
    for (p, a_z) in &induced.dynamic {
        ensure(!p.eval_exact(a_z).is_zero(), || format!("a_z = {a_z} is a root"))?;
        ensure(cauchy_check(p, 4.0).map_err(|e| e.to_string())?, || "induced cauchy".into())?;
    }
    for p in &induced.same_sign {
        ensure(descartes_check(p).map_err(|e| e.to_string())?, || "induced descartes".into())?;
    }
    ensure(!induced.dynamic.is_empty() && !induced.same_sign.is_empty(), || "nothing induced".into())?;
    Ok(format!(
        "200 + 200 random polynomials pass; {} induced dynamic-range rows keep a_z off their roots",
        induced.dynamic.len()
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = rng_from_seed(80);
    for (r, s) in [(6, 4), (8, 6)] {
        let mut passed = 0;
        for _ in 0..100 {
            passed += kernel_independence_check(r, s, 1, &mut rng).map_err(|e| e.to_string())? as usize;
        }
        ensure(passed == 100, || format!("(r, s) = ({r}, {s}): {passed}/100"))?;
    }
    Ok("100/100 trials at (6, 4) and (8, 6)".into())
}

fn criterion_9() -> Outcome {
    let trials = 100_000;
    let x = [1.0, 0.0];
    let ortho = gaussian_separation_estimate(&x, &[0.0, 1.0], trials, &mut rng_from_seed(90)).map_err(|e| e.to_string())?;
    let bound = 3.0 * (0.25f64 / trials as f64).sqrt();
    ensure((ortho - 0.5).abs() <= bound, || format!("orthogonal: {ortho}"))?;
    let y = [0.5, 0.75f64.sqrt()];
    let tilted = gaussian_separation_estimate(&x, &y, trials, &mut rng_from_seed(91)).map_err(|e| e.to_string())?;
    ensure((tilted - 1.0 / 3.0).abs() <= 0.005, || format!("<x,y> = 0.5: {tilted}"))?;
    Ok(format!("orthogonal {ortho:.4} (bound {bound:.4}), <x,y> = 0.5 gives {tilted:.4}"))
}

fn criterion_10() -> Outcome {
    let request = luf_request(12, 2, 1.0);
    let d1 = verified(&request, 100)?;
    let d2 = verified(&request, 100)?;
    ensure(d1.to_json() == d2.to_json(), || "design differs".into())?;
    ensure(BinaryDesign::from_json(&d1.to_json()).map_err(|e| e.to_string())? == d1, || "design json".into())?;

    let sld = DesignRequest::strongly_list_disjunct(12, 2, 0.5).sample(101).map_err(|e| e.to_string())?;
    let build = |seed: u64| -> Result<Vec<SensingMatrix>, String> {
        Ok(vec![
            attach_generic_constants(&d1, &mut rng_from_seed(seed)),
            build_dynamic_range(&sld, 4.0).map_err(|e| e.to_string())?,
            build_prime_log(&sld),
            build_same_sign(&sld, 1),
            build_gaussian(5, 12, &mut rng_from_seed(seed)).map_err(|e| e.to_string())?,
        ])
    };
    let (first, second) = (build(102)?, build(102)?);
    for (a, b) in first.iter().zip(&second) {
        ensure(a.to_json() == b.to_json(), || format!("{} differs", a.family().name()))?;
        ensure(SensingMatrix::from_json(&a.to_json()).map_err(|e| e.to_string())? == *a, || {
            format!("{} json", a.family().name())
        })?;
    }

    for class in [
        SignalClass::GeneralReal,
        SignalClass::Rational { denom_bound: 50 },
        SignalClass::BoundedKappa { eta: 4.0 },
        SignalClass::BoundedRho { r: 1 },
        SignalClass::Binary,
    ] {
        let x = random_sparse(12, 2, class, &mut rng_from_seed(103)).map_err(|e| e.to_string())?;
        let again = random_sparse(12, 2, class, &mut rng_from_seed(103)).map_err(|e| e.to_string())?;
        ensure(x == again, || "signal differs".into())?;
        ensure(SparseSignal::from_json(&x.to_json()).map_err(|e| e.to_string())? == x, || "signal json".into())?;
        let y1 = first[0].measure(&x, FloatTolerance::default()).map_err(|e| e.to_string())?;
        let y2 = second[0].measure(&x, FloatTolerance::default()).map_err(|e| e.to_string())?;
        let e1 = approx_recover(&d1, &y1, 1.0).map_err(|e| e.to_string())?.with_truth(&x.support());
        let e2 = approx_recover(&d1, &y2, 1.0).map_err(|e| e.to_string())?.with_truth(&x.support());
        ensure(e1.to_json() == e2.to_json(), || "decode differs".into())?;
        ensure(SupportEstimate::from_json(&e1.to_json()).map_err(|e| e.to_string())? == e1, || "estimate json".into())?;
    }
    let third = onebitcs::rational::parse("1/3").map_err(|e| e.to_string())?;
    ensure(onebitcs::rational::format(&third) == "1/3", || "1/3".into())?;

    let mut cfg = ExperimentConfig::new(Scheme::Rationals, vec![12], vec![2], vec![0.5], SignalClass::Rational { denom_bound: 50 }, 200);
    cfg.seed = 104;
    let r1 = run_experiment(&cfg).map_err(|e| e.to_string())?;
    let r2 = run_experiment(&cfg).map_err(|e| e.to_string())?;
    ensure(r1.to_csv() == r2.to_csv(), || "experiment csv differs".into())?;
    ensure(ExperimentReport::from_json(&r1.to_json()).map_err(|e| e.to_string())? == r1, || "report json".into())?;
    let rate = r1.cells[0].rates.as_ref().map(|r| r.superset_success_rate);
    ensure(rate == Some(1.0), || format!("rationals superset rate {rate:?}"))?;
    Ok("designs, 5 matrix families, signals, estimates and experiment CSV are reproducible; JSON round-trips exact".into())
}

fn run(label: &str, f: impl FnOnce() -> Outcome) -> bool {
    let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        Err(e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into()))
    });
    match outcome {
        Ok(detail) => {
            println!("PASS  {label}: {detail}");
            true
        }
        Err(detail) => {
            println!("FAIL  {label}: {detail}");
            false
        }
    }
}

fn main() {
    let mut induced = Induced {
        dynamic: Vec::new(),
        same_sign: Vec::new(),
    };
    let results = [
        run("1 design certification", criterion_1),
        run("2 sizing exactness", criterion_2),
        run("3 approximate recovery guarantee", criterion_3),
        run("4 real superset recovery guarantee", criterion_4),
        run("5 exact decoders never delete truth", || criterion_5(&mut induced)),
        run("6 prime-log zero iff disjoint", criterion_6),
        run("7 root-bound oracles", || criterion_7(&induced)),
        run("8 kernel independence", criterion_8),
        run("9 gaussian separation", criterion_9),
        run("10 determinism and serialization", criterion_10),
    ];
    let passed = results.iter().filter(|r| **r).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
