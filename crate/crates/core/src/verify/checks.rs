use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use statrs::function::gamma::gamma;

use super::mc::mc_hua;
use super::quadrature::{ball_integral, gauss_legendre};
use super::selberg::{selberg_quadrature, selberg_value, SelbergParams};
use super::Report;
use crate::domains::{sample_uniform, DomainPoint, DomainType};
use crate::error::{Error, Result};
use crate::kernels::{
    ball_harmonic, ball_kernel, bergman_kernel, homogeneous_projection, hua_ratio_real, inflated_kernel,
    norm_sqr, projection_nodes, virtual_decomposition, weighted_kernel_ratio, PoleConvention,
};
use crate::polyalg::{binomial, format_rational, int, to_f64, Rational};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// Monte Carlo Hua integral against `chi(0)/chi(s)`: passes when the estimate
/// is within 4 standard errors and within 2% relative.
pub fn check_hua_mc(d: DomainType, s: f64, samples: u64, seed: u64) -> Result<Report> {
    let expected = hua_ratio_real(d, s)?;
    let est = mc_hua(d, s, samples, seed)?;
    let diff = (est.mean - expected).abs();
    let sigmas = if est.stderr > 0.0 { diff / est.stderr } else if diff == 0.0 { 0.0 } else { f64::INFINITY };
    let relative = diff / expected;
    Ok(Report {
        name: "hua-mc".into(),
        params: json!({ "domain": d.to_string(), "s": s, "samples": samples, "seed": seed }),
        expected: json!(expected),
        observed: json!(est.mean),
        tolerance: 4.0,
        pass: sigmas <= 4.0 && relative <= 0.02,
        details: Some(json!({
            "stderr": est.stderr,
            "sigmas": sigmas,
            "relative_error": relative,
            "relative_tolerance": 0.02,
            "acceptance_rate": est.acceptance_rate,
            "unbounded_integrand": est.unbounded_integrand,
        })),
    })
}

/// `n = 1` Selberg values against `Gamma(x)Gamma(y)/Gamma(x+y)` for `pairs`
/// random `(x, y)` in `[0.5, 5]`, relative tolerance `1e-12`.
pub fn check_selberg_beta(pairs: usize, seed: u64) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut rows = Vec::with_capacity(pairs);
    for _ in 0..pairs {
        let x = rng.random_range(0.5..5.0);
        let y = rng.random_range(0.5..5.0);
        let value = selberg_value(&SelbergParams::new(x, y, 1.0, 1)?);
        let beta = gamma(x) * gamma(y) / gamma(x + y);
        let err = (value - beta).abs() / beta;
        worst = worst.max(err);
        rows.push(json!({ "x": x, "y": y, "selberg": value, "beta": beta }));
    }
    Ok(Report {
        name: "selberg-beta".into(),
        params: json!({ "pairs": pairs, "seed": seed }),
        expected: json!("Gamma(x) Gamma(y) / Gamma(x + y)"),
        observed: json!(worst),
        tolerance: 1e-12,
        pass: worst <= 1e-12,
        details: Some(json!({ "max_relative_error": worst, "cases": rows })),
    })
}

/// `n = 2` Selberg values against the collapsed Gauss-Legendre rule on the
/// unit square, relative tolerance `1e-6`.
pub fn check_selberg_quadrature(triples: &[(f64, f64, f64)], nodes: usize) -> Result<Report> {
    let mut worst = 0.0f64;
    let mut rows = Vec::with_capacity(triples.len());
    for &(x, y, z) in triples {
        let p = SelbergParams::new(x, y, z, 2)?;
        let closed = selberg_value(&p);
        let quad = selberg_quadrature(&p, nodes)?;
        let err = (closed - quad).abs() / closed.abs();
        worst = worst.max(err);
        rows.push(json!({ "x": x, "y": y, "z": z, "closed_form": closed, "quadrature": quad }));
    }
    Ok(Report {
        name: "selberg-quadrature".into(),
        params: json!({ "n": 2, "nodes": nodes, "triples": triples }),
        expected: json!("product of Gamma quotients"),
        observed: json!(worst),
        tolerance: 1e-6,
        pass: worst <= 1e-6,
        details: Some(json!({ "max_relative_error": worst, "cases": rows })),
    })
}

fn reproducing_errors(mu: &Rational, degree_max: u32, radial: usize, angular: usize) -> Result<Vec<Vec<f64>>> {
    let disk = DomainType::I { m: 1, n: 1 };
    let muf = to_f64(mu);
    let rule = gauss_legendre(radial, 0.0, 1.0);
    let centers = [c(0.0, 0.0), c(0.3, 0.0), c(0.5, 0.2)];
    let mut errors = Vec::with_capacity(centers.len());
    for z0 in centers {
        let z = DomainPoint::from_coordinates(disk, &[z0])?;
        let mut acc = vec![c(0.0, 0.0); degree_max as usize + 1];
        for &(x, wx) in &rule {
            let r = (1.0 - x * x).sqrt();
            let radial_weight = wx * x.powf(2.0 * muf + 1.0) * TAU / angular as f64 / PI;
            for l in 0..angular {
                let wv = Complex64::from_polar(r, TAU * l as f64 / angular as f64);
                let w = DomainPoint::from_coordinates(disk, &[wv])?;
                let k = weighted_kernel_ratio(mu, &z, &w)?.value * bergman_kernel(&z, &w, None)?.value;
                let mut power = k * radial_weight;
                for a in acc.iter_mut() {
                    *a += power;
                    power *= wv;
                }
            }
        }
        errors.push(
            acc.iter()
                .enumerate()
                .map(|(d, v)| (v - z0.powu(d as u32)).norm())
                .collect(),
        );
    }
    Ok(errors)
}

/// Reproducing property of the weighted disk kernel `K^(mu)` on `w^d`,
/// `d <= degree_max`, at three centres: absolute tolerance `1e-8`. The radial
/// variable is `x = sqrt(1 - |w|^2)`, which turns `(1 - |w|^2)^mu |w| d|w|`
/// into `x^(2 mu + 1) dx`. Quadrature orders (64 Gauss-Legendre radial,
/// 128 trapezoid angular) are doubled once if the first pass fails.
pub fn check_reproducing_disk(mu: &Rational, degree_max: u32) -> Result<Report> {
    if *mu <= int(-1) {
        return Err(Error::Parameter(format!("weighted space needs mu > -1, got {}", format_rational(mu))));
    }
    let tolerance = 1e-8;
    let mut orders = (64, 128);
    let mut errors = reproducing_errors(mu, degree_max, orders.0, orders.1)?;
    let max_of = |e: &Vec<Vec<f64>>| e.iter().flatten().fold(0.0f64, |a, &b| a.max(b));
    if max_of(&errors) > tolerance {
        orders = (128, 256);
        errors = reproducing_errors(mu, degree_max, orders.0, orders.1)?;
    }
    let worst = max_of(&errors);
    Ok(Report {
        name: "reproducing-disk".into(),
        params: json!({ "mu": format_rational(mu), "degree_max": degree_max }),
        expected: json!("f(z0) = z0^d"),
        observed: json!(worst),
        tolerance,
        pass: worst <= tolerance,
        details: Some(json!({
            "max_abs_error": worst,
            "centers": ["0", "0.3", "0.5+0.2i"],
            "errors_by_center_and_degree": errors,
            "radial_nodes": orders.0,
            "angular_nodes": orders.1,
        })),
    })
}

/// Largest `x = k 2^-26` with `x^2 <= target`; its square is exact in `f64`.
fn dyadic_sqrt_below(target: f64) -> f64 {
    let scale = 2f64.powi(26);
    let mut x = (target.sqrt() * scale).floor() / scale;
    while x * x > target {
        x -= 1.0 / scale;
    }
    x
}

/// Radius of the ball the random points of [`check_inflation_ball`] are drawn
/// from. Relative rounding error in `(1 - |p|^2)^-(n+m+1)` grows like
/// `(n+m+1) eps / (1 - |p|^2)` for any floating-point evaluation, so uniform
/// points of the full ball are ill-conditioned for a `1e-12` comparison.
pub const INTERIOR_RADIUS: f64 = 0.948_683_298_050_513_8;

/// Inflated kernel over the unit ball `B_n` with `mu = 1` against the Bergman
/// kernel of `B_{n+m}` rescaled to `omega_V ^ omega_m`:
/// `binom(n+m, m) (1 - |z|^2 - |Z|^2)^-(n+m+1)`. Uses 100 uniform points of
/// the ball of radius [`INTERIOR_RADIUS`] (`|p|^2 <= 0.9`) and points at
/// distance `2^-j` from the boundary chosen so the defect
/// `1 - |z|^2 - |Z|^2` is exact. Relative tolerance `1e-12`.
pub fn check_inflation_ball(n: u32, m: u32, seed: u64) -> Result<Report> {
    if !(1..=3).contains(&n) || !(1..=3).contains(&m) {
        return Err(Error::Parameter(format!("inflation check needs 1 <= n, m <= 3, got n={n}, m={m}")));
    }
    let base = DomainType::I { m: 1, n };
    let vk = virtual_decomposition(base, &int(1))?;
    let factor = to_f64(&binomial(u64::from(n + m), u64::from(m)));
    let exponent = -((n + m + 1) as i32);
    let (nu, mu) = (n as usize, m as usize);

    let mut cases: Vec<(Vec<Complex64>, Vec<Complex64>)> = sample_uniform(DomainType::I { m: 1, n: n + m }, seed, 100)?
        .points
        .iter()
        .map(|p| {
            let coords: Vec<Complex64> = p.coordinates().iter().map(|v| v * INTERIOR_RADIUS).collect();
            (coords[..nu].to_vec(), coords[nu..].to_vec())
        })
        .collect();
    let interior = cases.len();
    for j in [4, 10, 20, 30, 40] {
        let mut z = vec![c(0.0, 0.0); nu];
        z[0] = c(0.5, 0.5);
        let mut fiber = vec![c(0.0, 0.0); mu];
        fiber[0] = c(dyadic_sqrt_below(0.5 - 2f64.powi(-j)), 0.0);
        cases.push((z, fiber));
    }

    let mut worst_interior = 0.0f64;
    let mut worst_boundary = 0.0f64;
    let mut closest = 1.0f64;
    for (i, (z, fiber)) in cases.iter().enumerate() {
        let point = DomainPoint::from_coordinates(base, z)?;
        let observed = inflated_kernel(&vk, &point, fiber, &point, fiber, None)?.value;
        let defect = 1.0 - norm_sqr(z) - norm_sqr(fiber);
        closest = closest.min(defect);
        let expected = factor * defect.powi(exponent);
        let err = (observed - expected).norm() / expected;
        if i < interior {
            worst_interior = worst_interior.max(err);
        } else {
            worst_boundary = worst_boundary.max(err);
        }
    }
    let origin = DomainPoint::origin(base)?;
    let zero_fiber = vec![c(0.0, 0.0); mu];
    let at_origin = inflated_kernel(&vk, &origin, &zero_fiber, &origin, &zero_fiber, None)?.value;
    let worst = worst_interior.max(worst_boundary).max((at_origin.re - factor).abs() / factor);
    Ok(Report {
        name: "inflation-ball".into(),
        params: json!({
            "n": n,
            "m": m,
            "mu": "1",
            "seed": seed,
            "points": cases.len(),
            "interior_radius": INTERIOR_RADIUS,
        }),
        expected: json!(format!(
            "{} (1 - |z|^2 - |Z|^2)^-{}",
            factor,
            n + m + 1
        )),
        observed: json!(worst),
        tolerance: 1e-12,
        pass: worst <= 1e-12,
        details: Some(json!({
            "max_relative_error_interior": worst_interior,
            "max_relative_error_near_boundary": worst_boundary,
            "smallest_boundary_defect": closest,
            "value_at_origin": complex_json(at_origin),
        })),
    })
}

struct SeriesSum {
    value: Complex64,
    terms: usize,
    tail_bound: f64,
}

/// Sums `sum_k binom(k+m, m) q(k+m) t^k` until a geometric bound on the tail
/// falls below `1e-12` of the partial sum. For `mu >= 0` the term ratio is at
/// most `|t| (1 + 1/k)^(n+m)` because `q` has only non-positive roots.
fn series_with_tail(q: &crate::polyalg::RationalPolynomial, dim: u32, t: Complex64, m: u32, cap: usize) -> SeriesSum {
    let mut value = c(0.0, 0.0);
    let mut power = c(1.0, 0.0);
    let mut binom = 1.0f64;
    let mut tail_bound = f64::INFINITY;
    let mut k = 0usize;
    while k < cap {
        let term = power * (binom * q.eval_real((k as u32 + m) as f64));
        value += term;
        k += 1;
        power *= t;
        binom *= (k as f64 + f64::from(m)) / k as f64;
        let ratio = t.norm() * (1.0 + 1.0 / k as f64).powi((dim + m) as i32);
        if ratio < 1.0 {
            let next = power.norm() * binom * q.eval_real((k as u32 + m) as f64).abs();
            tail_bound = next / (1.0 - ratio);
            if tail_bound < 1e-12 * value.norm() || next == 0.0 {
                break;
            }
        }
    }
    SeriesSum { value, terms: k, tail_bound }
}

/// Term-wise summed series against the closed form `f_eval` with the chosen
/// pole convention, relative tolerance `1e-9`. Only the shifted convention
/// can pass for `mu > 0`.
pub fn check_series_vs_closed(
    d: DomainType,
    mu: &Rational,
    t_list: &[Complex64],
    m_list: &[u32],
    convention: PoleConvention,
) -> Result<Report> {
    let vk = virtual_decomposition(d, mu)?;
    let dim = d.invariants().dim;
    let mut worst = 0.0f64;
    let mut rows = Vec::new();
    for &t in t_list {
        if !(t.norm() < 1.0) {
            return Err(Error::Divergence(t.norm()));
        }
        for &m in m_list {
            let closed = vk.f_eval_with(t, m, convention)?;
            let series = series_with_tail(vk.weight_ratios(), dim, t, m, 200_000);
            let err = (series.value - closed).norm() / closed.norm().max(f64::MIN_POSITIVE);
            let converged = series.tail_bound < 1e-12 * series.value.norm();
            worst = worst.max(if converged { err } else { f64::INFINITY });
            rows.push(json!({
                "t": complex_json(t),
                "m": m,
                "closed": complex_json(closed),
                "series": complex_json(series.value),
                "terms": series.terms,
                "tail_bound": series.tail_bound,
                "relative_error": err,
            }));
        }
    }
    Ok(Report {
        name: "series".into(),
        params: json!({ "domain": d.to_string(), "mu": format_rational(mu), "convention": convention }),
        expected: json!("sum_k binom(k+m, m) chi((k+m) mu)/chi(0) t^k"),
        observed: json!(worst),
        tolerance: 1e-9,
        pass: worst <= 1e-9,
        details: Some(json!({ "max_relative_error": worst, "cases": rows })),
    })
}

fn exponent_vectors(vars: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..vars {
        out = out
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                let used: u32 = e.iter().sum();
                (0..=max_degree - used).map(move |a| {
                    let mut next = e.clone();
                    next.push(a);
                    next
                })
            })
            .collect();
    }
    out
}

fn monomial(exps: &[u32], w: &[Complex64]) -> Complex64 {
    exps.iter().zip(w).map(|(&a, v)| v.powu(a)).product()
}

/// Degree-`k` components on `B_m(rho)`, `m <= 3`, computed two ways: by circle
/// averaging and by the pairing with `rho^(-2m-2k) binom(k+m, m) <Z, W>^k`
/// over the ball. Covers monomials of degree `<= 3` and `k <= 4` (tolerance
/// `1e-10`), the geometric series `(1 - Z_1)^-1` at `k = 4` (tolerance `1e-9`),
/// and the degree-`k` part of the ball kernel against
/// `rho^(-2m-2k) binom(k+m, m) |Z|^2k`.
pub fn check_homogeneous_projection(m: u32, rho: f64) -> Result<Report> {
    if !(1..=3).contains(&m) || !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::Parameter(format!("projection check needs 1 <= m <= 3 and rho > 0, got m={m}, rho={rho}")));
    }
    let mu = m as usize;
    let points: Vec<Vec<Complex64>> = [0.45, 0.7]
        .iter()
        .map(|&radius| {
            (0..mu)
                .map(|j| Complex64::from_polar(rho * radius / (mu as f64).sqrt(), 0.7 + 1.3 * j as f64))
                .collect()
        })
        .collect();

    let mut monomial_err = 0.0f64;
    for exps in exponent_vectors(mu, 3) {
        let degree: u32 = exps.iter().sum();
        let f = |w: &[Complex64]| monomial(&exps, w);
        for z in &points {
            for k in 0..=4u32 {
                let truth = if k == degree { f(z) } else { c(0.0, 0.0) };
                let circle = homogeneous_projection(f, k, z, projection_nodes(k, 3));
                let prefactor = to_f64(&binomial(u64::from(k + m), u64::from(m))) / rho.powi(2 * (m + k) as i32);
                let pairing = ball_integral(
                    mu,
                    rho,
                    |w| {
                        let inner: Complex64 = z.iter().zip(w).map(|(a, b)| a * b.conj()).sum();
                        inner.powu(k) * f(w) * prefactor
                    },
                    8,
                    8,
                );
                monomial_err = monomial_err.max((circle - truth).norm()).max((pairing - circle).norm());
            }
        }
    }

    let unit_point: Vec<Complex64> = (0..mu).map(|j| c(0.5 - 0.1 * j as f64, 0.2)).collect();
    let geometric = |w: &[Complex64]| (c(1.0, 0.0) - w[0]).inv();
    let geometric_err = (homogeneous_projection(geometric, 4, &unit_point, 64) - unit_point[0].powu(4)).norm();

    let mut kernel_err = 0.0f64;
    for z in &points {
        let kernel = |w: &[Complex64]| ball_kernel(w, z, rho).expect("test points lie inside the ball");
        for k in 0..=4u32 {
            let projected = homogeneous_projection(kernel, k, z, 64);
            let expected = ball_harmonic(k, z, rho);
            kernel_err = kernel_err.max((projected - expected).norm() / expected);
        }
    }

    let pass = monomial_err <= 1e-10 && geometric_err <= 1e-9 && kernel_err <= 1e-10;
    Ok(Report {
        name: "projection".into(),
        params: json!({ "m": m, "rho": rho }),
        expected: json!("f_k from circle averaging = f_k from the ball pairing"),
        observed: json!(monomial_err),
        tolerance: 1e-10,
        pass,
        details: Some(json!({
            "max_abs_error_monomials": monomial_err,
            "geometric_series_k4_error": geometric_err,
            "geometric_series_tolerance": 1e-9,
            "max_relative_error_kernel_components": kernel_err,
        })),
    })
}
