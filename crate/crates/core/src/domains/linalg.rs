//! Small dense complex kernels used on hot paths, all on row-major slices.

use num_complex::Complex64;

/// `I_m - x x^*` for a row-major `m x n` matrix `x`, written into `out`.
pub(crate) fn identity_minus_gram(x: &[Complex64], m: usize, n: usize, out: &mut Vec<Complex64>) {
    out.clear();
    out.resize(m * m, Complex64::new(0.0, 0.0));
    for i in 0..m {
        for j in 0..=i {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += x[i * n + k] * x[j * n + k].conj();
            }
            let v = if i == j { Complex64::new(1.0 - acc.re, 0.0) } else { -acc };
            out[i * m + j] = v;
            out[j * m + i] = v.conj();
        }
    }
}

/// Determinant of a Hermitian matrix if it is positive definite, via an
/// in-place Cholesky factorization. `None` when a pivot is not positive.
pub(crate) fn hermitian_pd_det(h: &mut [Complex64], n: usize) -> Option<f64> {
    let mut det = 1.0;
    for j in 0..n {
        let mut d = h[j * n + j].re;
        for k in 0..j {
            d -= h[j * n + k].norm_sqr();
        }
        if !(d > 0.0) {
            return None;
        }
        let l = d.sqrt();
        det *= d;
        h[j * n + j] = Complex64::new(l, 0.0);
        for i in j + 1..n {
            let mut s = h[i * n + j];
            for k in 0..j {
                s -= h[i * n + k] * h[j * n + k].conj();
            }
            h[i * n + j] = s / l;
        }
    }
    Some(det)
}

/// Pfaffian of a skew-symmetric `n x n` row-major matrix (destroyed), by
/// skew Gaussian elimination with partial pivoting.
pub(crate) fn pfaffian(a: &mut [Complex64], n: usize) -> Complex64 {
    let zero = Complex64::new(0.0, 0.0);
    if n % 2 == 1 {
        return zero;
    }
    let mut pf = Complex64::new(1.0, 0.0);
    for k in (0..n.saturating_sub(1)).step_by(2) {
        let kp = (k + 1..n)
            .max_by(|&p, &q| a[p * n + k].norm().total_cmp(&a[q * n + k].norm()))
            .unwrap();
        if kp != k + 1 {
            for c in k..n {
                a.swap((k + 1) * n + c, kp * n + c);
            }
            for r in k..n {
                a.swap(r * n + k + 1, r * n + kp);
            }
            pf = -pf;
        }
        let pivot = a[k * n + k + 1];
        if pivot == zero {
            return zero;
        }
        pf *= pivot;
        if k + 2 < n {
            let tau: Vec<Complex64> = (k + 2..n).map(|c| a[k * n + c] / pivot).collect();
            let col: Vec<Complex64> = (k + 2..n).map(|r| a[r * n + k + 1]).collect();
            for (i, r) in (k + 2..n).enumerate() {
                for (j, c) in (k + 2..n).enumerate() {
                    a[r * n + c] += tau[i] * col[j] - col[i] * tau[j];
                }
            }
        }
    }
    pf
}
