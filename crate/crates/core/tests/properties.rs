use num_complex::Complex64;
use proptest::prelude::*;

use kernelforge::domains::{generic_norm, sample_uniform, DomainPoint, DomainType};
use kernelforge::kernels::{bergman_kernel, inflated_kernel, virtual_decomposition, weighted_kernel_ratio};
use kernelforge::polyalg::{int, rat, Rational};
use kernelforge::Error;

fn small_domains() -> Vec<DomainType> {
    ["I:1,1", "I:1,2", "I:2,2", "II:3", "II:4", "III:2", "IV:3", "IV:4"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

fn hermitian_domains() -> Vec<DomainType> {
    ["I:1,2", "I:2,2", "III:2", "IV:3"].iter().map(|s| s.parse().unwrap()).collect()
}

fn series_grid() -> Vec<DomainType> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for m in 1..=n {
            out.push(DomainType::I { m, n });
        }
    }
    out.extend((2..=7).map(|n| DomainType::II { n }));
    out.extend((1..=5).map(|n| DomainType::III { n }));
    out.extend((3..=8).map(|n| DomainType::IV { n }));
    out.into_iter().filter(|d| d.invariants().dim <= 8).collect()
}

fn mus() -> [Rational; 3] {
    [rat(1, 2), int(1), int(2)]
}

#[test]
fn series_matches_closed_form_on_grid() {
    for d in series_grid() {
        for mu in mus() {
            let vk = virtual_decomposition(d, &mu).unwrap();
            for t in [0.1, 0.3, 0.5] {
                let t = Complex64::new(t, 0.0);
                let closed = vk.f_eval(t, 0).unwrap();
                let series = vk.series_partial_sum(t, 0, 201);
                assert!((closed - series).norm() < 1e-9 * closed.norm().max(1.0), "{d} mu={mu} t={t}");
            }
        }
    }
}

#[test]
fn derivatives_match_differentiated_series() {
    for d in series_grid() {
        for mu in mus() {
            let vk = virtual_decomposition(d, &mu).unwrap();
            for m in 0..=3 {
                for t in [Complex64::new(0.3, 0.0), Complex64::new(-0.2, 0.25)] {
                    let closed = vk.f_eval(t, m).unwrap();
                    let series = vk.series_partial_sum(t, m, 400);
                    assert!((closed - series).norm() < 1e-8 * closed.norm(), "{d} mu={mu} m={m} t={t}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn diagonal_kernels_positive(seed in any::<u64>(), idx in 0usize..8, mu_num in 0i64..7) {
        let d = small_domains()[idx];
        let mu = rat(mu_num, 2);
        for p in sample_uniform(d, seed, 4).unwrap().points {
            let n = generic_norm(&p, &p).unwrap();
            prop_assert!(n.re > 0.0 && n.re <= 1.0 + 1e-12 && n.im.abs() < 1e-12);
            let k = bergman_kernel(&p, &p, None).unwrap().value;
            prop_assert!(k.re > 0.0 && k.im.abs() <= 1e-12 * k.re);
            let w = weighted_kernel_ratio(&mu, &p, &p).unwrap().value;
            prop_assert!(w.re > 0.0);
            let vk = virtual_decomposition(d, &mu).unwrap();
            for m in 0..3 {
                for t in [0.0, 0.4, 0.95] {
                    prop_assert!(vk.f_eval(Complex64::new(t, 0.0), m).unwrap().re > 0.0);
                }
            }
        }
    }

    #[test]
    fn inflated_kernel_hermitian(seed in any::<u64>(), idx in 0usize..4, mu_num in 1i64..5, m in 1usize..3) {
        let d = hermitian_domains()[idx];
        let mu = rat(mu_num, 2);
        let vk = virtual_decomposition(d, &mu).unwrap();
        let pts = sample_uniform(d, seed, 2).unwrap().points;
        let fiber = |p: &DomainPoint, phase: f64| -> Vec<Complex64> {
            let radius = 0.6 * p.inside_norm().unwrap().powf(0.5 * mu_num as f64 / 2.0) / (m as f64).sqrt();
            (0..m).map(|j| Complex64::from_polar(radius, phase + j as f64)).collect()
        };
        let (z, w) = (&pts[0], &pts[1]);
        let (zf, wf) = (fiber(z, 0.3), fiber(w, 1.9));
        match (inflated_kernel(&vk, z, &zf, w, &wf, None), inflated_kernel(&vk, w, &wf, z, &zf, None)) {
            (Ok(a), Ok(b)) => prop_assert!((a.value - b.value.conj()).norm() <= 1e-10 * a.value.norm()),
            (Err(Error::Branch { .. }), Err(Error::Branch { .. })) => {}
            (a, b) => prop_assert!(false, "asymmetric outcome {:?} / {:?}", a, b),
        }
    }

    #[test]
    fn generic_norm_hermitian(seed in any::<u64>(), idx in 0usize..4) {
        let d = hermitian_domains()[idx];
        let pts = sample_uniform(d, seed, 2).unwrap().points;
        let a = generic_norm(&pts[0], &pts[1]).unwrap();
        let b = generic_norm(&pts[1], &pts[0]).unwrap();
        prop_assert!((a - b.conj()).norm() < 1e-13);
    }
}
