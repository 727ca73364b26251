//! Independent reference values by tanh-sinh quadrature. Nothing here
//! calls the library's special functions.

#![allow(dead_code)]

use std::f64::consts::PI;

fn tanh_sinh_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let r = 0.5 * (b - a);
    let half_pi = 0.5 * PI;
    let term = |t: f64| -> f64 {
        let s = half_pi * t.sinh();
        let ch = s.cosh();
        // distance from the nearer endpoint, without cancellation
        let gap = r / (s.abs().exp() * ch);
        let w = r * half_pi * t.cosh() / (ch * ch);
        if w == 0.0 || gap == 0.0 {
            return 0.0;
        }
        let x = if s >= 0.0 { b - gap } else { a + gap };
        if x <= a || x >= b {
            return 0.0;
        }
        w * f(x)
    };
    let t_max = 3.5;
    let mut h = 0.5;
    let mut sum = term(0.0);
    let mut k = 1;
    while k as f64 * h <= t_max {
        let t = k as f64 * h;
        sum += term(t) + term(-t);
        k += 1;
    }
    let mut prev = sum * h;
    for _ in 0..12 {
        // add the odd nodes of the halved step
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= t_max {
            let t = k as f64 * h;
            sum += term(t) + term(-t);
            k += 2;
        }
        let cur = sum * h;
        if (cur - prev).abs() <= rel_tol * cur.abs() {
            return cur;
        }
        prev = cur;
    }
    prev
}

/// Tanh-sinh quadrature on `[a, b]`, pre-split into `panels` pieces, each
/// refined until successive levels agree to `rel_tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|k| tanh_sinh_panel(&f, a + k as f64 * h, a + (k + 1) as f64 * h, rel_tol))
        .sum()
}

/// `erfc(x)` for `x ≥ 0` as `(2/√π) ∫_x^{x+12} e^{−t²} dt`, scaled by
/// `e^{x²}` inside the integral to keep relative accuracy in the tail.
pub fn erfc(x: f64) -> f64 {
    assert!(x >= 0.0);
    let scaled = integrate(|t: f64| (-(t * t - x * x)).exp(), x, x + 12.0, 1e-14, 8);
    2.0 / PI.sqrt() * (-x * x).exp() * scaled
}

/// `Γ(x)` for `1 ≤ x ≤ 40`, Euler integral with the integrand scaled at
/// its peak `t = x − 1`.
pub fn ln_gamma(x: f64) -> f64 {
    assert!((1.0..=40.0).contains(&x));
    let peak = (x - 1.0).max(1e-300);
    let log_peak = if x == 1.0 { 0.0 } else { (x - 1.0) * peak.ln() - peak };
    let f = |t: f64| {
        if t == 0.0 {
            if x == 1.0 { (-log_peak).exp() } else { 0.0 }
        } else {
            ((x - 1.0) * t.ln() - t - log_peak).exp()
        }
    };
    let upper = x + 60.0 + 12.0 * x.sqrt();
    integrate(f, 0.0, upper, 1e-14, 40).ln() + log_peak
}

/// Regularized upper incomplete gamma `Q(s, x)` for `1 ≤ s ≤ 40`.
pub fn reg_gamma_q(s: f64, x: f64) -> f64 {
    let lg = ln_gamma(s);
    let f = |t: f64| ((s - 1.0) * t.ln() - t - lg).exp();
    let upper = x.max(s) + 60.0 + 12.0 * s.sqrt();
    integrate(f, x, upper, 1e-14, 40)
}

/// `K_ν(x)` for `ν ≥ 0`, from
/// `K_ν(x) = √π (x/2)^ν / Γ(ν+½) ∫_1^∞ e^{−xt} (t²−1)^{ν−½} dt`
/// with `t = 1 + u²`.
pub fn bessel_k(nu: f64, x: f64) -> f64 {
    // Γ(ν+½) by recurrence onto [1, 2) then the Euler integral
    let mut a = nu + 0.5;
    let mut log_shift = 0.0;
    while a < 1.0 {
        log_shift -= a.ln();
        a += 1.0;
    }
    let lg = ln_gamma(a) + log_shift;
    let f = |u: f64| {
        let u2 = u * u;
        2.0 * (-x * u2).exp() * u.powf(2.0 * nu) * (2.0 + u2).powf(nu - 0.5)
    };
    let upper = (60.0 / x).sqrt() + 1.0;
    let integral = integrate(f, 0.0, upper, 1e-14, 20);
    (0.5 * PI.ln() + nu * (0.5 * x).ln() - lg - x).exp() * integral
}

/// Standard normal density.
pub fn phi(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// `E|x − 1|` for `x ~ N(0, σ²)`.
pub fn abs_shift_mean(sigma: f64) -> f64 {
    let f = |x: f64| (x - 1.0).abs() * phi(x / sigma) / sigma;
    let r = 12.0 * sigma + 2.0;
    integrate(&f, -r, 1.0, 1e-14, 16) + integrate(&f, 1.0, r, 1e-14, 16)
}

/// `E|v − c|` for standard normal `v`, integrated directly.
fn abs_dev_normal(c: f64) -> f64 {
    if c.abs() > 12.0 {
        // E v = 0 and the tail beyond 12 is below 1e-30
        return c.abs();
    }
    let f = |v: f64| (v - c).abs() * phi(v);
    integrate(&f, -12.0, c, 1e-13, 4) + integrate(&f, c, 12.0, 1e-13, 4)
}

/// `E|uv − 1|` for independent standard normals: inner expectation
/// `|u| E|v − 1/u|` by quadrature, then the outer one.
pub fn abs_product_shift_mean() -> f64 {
    let f = |u: f64| if u == 0.0 { phi(0.0) } else { u.abs() * abs_dev_normal(1.0 / u) * phi(u) };
    2.0 * integrate(f, 0.0, 12.0, 1e-12, 24)
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    if n == 1 {
        return a[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<f64>> = a[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| *v).collect())
                .collect();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * a[0][j] * cofactor_det(&minor)
        })
        .sum()
}

/// Characteristic polynomial `det(λI − A) = λ^n + c_1 λ^{n−1} + ... + c_n`
/// by Faddeev–LeVerrier; returns `[1, c_1, ..., c_n]`.
pub fn char_poly(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let mut coeffs = vec![1.0];
    let mut m = vec![vec![0.0; n]; n];
    for k in 1..=n {
        // M_k = A M_{k−1} + c_{k−1} I
        let prev_c = *coeffs.last().unwrap();
        let mut next = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).map(|l| a[i][l] * m[l][j]).sum::<f64>();
            }
            next[i][i] += prev_c;
        }
        m = next;
        let am_trace: f64 = (0..n).map(|i| (0..n).map(|l| a[i][l] * m[l][i]).sum::<f64>()).sum();
        coeffs.push(-am_trace / k as f64);
    }
    coeffs
}

/// Polynomial with the given real roots and conjugate pairs, highest
/// degree first.
pub fn poly_from_roots(reals: &[f64], pairs: &[(f64, f64)]) -> Vec<f64> {
    let mut p = vec![1.0];
    let mul = |p: &Vec<f64>, q: &[f64]| {
        let mut out = vec![0.0; p.len() + q.len() - 1];
        for (i, a) in p.iter().enumerate() {
            for (j, b) in q.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    };
    for &r in reals {
        p = mul(&p, &[1.0, -r]);
    }
    for &(re, im) in pairs {
        p = mul(&p, &[1.0, -2.0 * re, re * re + im * im]);
    }
    p
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}
