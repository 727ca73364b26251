use super::DenseMatrix;
use crate::{Error, Result};

/// Eigenvalues of a real matrix split by structure: 1×1 blocks of the real
/// Schur form are real eigenvalues, 2×2 blocks with complex discriminant are
/// conjugate pairs (stored once, with positive imaginary part).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSplit {
    /// Real eigenvalues in ascending order.
    pub real_eigs: Vec<f64>,
    /// `(re, im)` with `im > 0`, one entry per conjugate pair.
    pub complex_pairs: Vec<(f64, f64)>,
}

impl EigenSplit {
    pub fn n_real(&self) -> usize {
        self.real_eigs.len()
    }

    pub fn n_pairs(&self) -> usize {
        self.complex_pairs.len()
    }

    pub fn dim(&self) -> usize {
        self.n_real() + 2 * self.n_pairs()
    }

    /// `log ∏|λ_k − x| ∏|z_l − x|²`, i.e. `log|det(X − x·I)|`.
    pub fn log_abs_char_poly(&self, x: f64) -> f64 {
        let reals: f64 = self.real_eigs.iter().map(|l| (l - x).abs().ln()).sum();
        let pairs: f64 = self
            .complex_pairs
            .iter()
            .map(|&(re, im)| ((re - x).powi(2) + im * im).ln())
            .sum();
        reals + pairs
    }
}

const RADIX: f64 = 2.0;

// Diagonal similarity by powers of two so that row and column norms match.
fn balance(a: &mut [f64], n: usize) {
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[j * n + i].abs();
                    r += a[i * n + j].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                while c < g {
                    f *= RADIX;
                    c *= sqrdx;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 0..n {
                        a[i * n + j] *= g;
                    }
                    for j in 0..n {
                        a[j * n + i] *= f;
                    }
                }
            }
        }
    }
}

// Householder reduction to upper Hessenberg form.
fn hessenberg(a: &mut [f64], n: usize) {
    let mut ort = vec![0.0; n];
    for m in 1..n.saturating_sub(1) {
        let scale: f64 = (m..n).map(|i| a[i * n + m - 1].abs()).sum();
        if scale == 0.0 {
            continue;
        }
        let mut h = 0.0;
        for i in (m..n).rev() {
            ort[i] = a[i * n + m - 1] / scale;
            h += ort[i] * ort[i];
        }
        let g = if ort[m] > 0.0 { -h.sqrt() } else { h.sqrt() };
        h -= ort[m] * g;
        ort[m] -= g;
        for j in m..n {
            let f = (m..n).map(|i| ort[i] * a[i * n + j]).sum::<f64>() / h;
            for i in m..n {
                a[i * n + j] -= f * ort[i];
            }
        }
        for i in 0..n {
            let f = (m..n).map(|j| ort[j] * a[i * n + j]).sum::<f64>() / h;
            for j in m..n {
                a[i * n + j] -= f * ort[j];
            }
        }
        a[m * n + m - 1] = scale * g;
        for i in m + 1..n {
            a[i * n + m - 1] = 0.0;
        }
    }
}

/// Eigenvalues of a square real matrix via balancing, Householder
/// reduction and Francis double-shift QR on the Hessenberg form.
///
/// Exceptional shifts are applied every 10 iterations on the same block;
/// more than `60·N` sweeps in total is [`Error::NonConvergence`].
pub fn eigen_split(x: &DenseMatrix) -> Result<EigenSplit> {
    if !x.is_square() {
        return Err(Error::InvalidParameter(format!(
            "eigenvalues need a square matrix, got {}x{}",
            x.rows(),
            x.cols()
        )));
    }
    if !x.is_finite() {
        return Err(Error::Domain("matrix has non-finite entries".into()));
    }
    let n = x.rows();
    let mut a = x.as_slice().to_vec();
    balance(&mut a, n);
    hessenberg(&mut a, n);
    let mut split = hqr(&mut a, n)?;
    split.real_eigs.sort_by(|p, q| p.total_cmp(q));
    split.complex_pairs.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
    Ok(split)
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

fn hqr(a: &mut [f64], n: usize) -> Result<EigenSplit> {
    let cap = 60 * n.max(1);
    let idx = |i: usize, j: usize| i * n + j;
    let mut real_eigs = Vec::with_capacity(n);
    let mut complex_pairs = Vec::with_capacity(n / 2);
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[idx(i, j)].abs();
        }
    }
    let mut total = 0usize;
    let mut t = 0.0;
    let mut nn = n as isize - 1;
    while nn >= 0 {
        let mut its = 0usize;
        loop {
            let un = nn as usize;
            let mut l = un;
            while l > 0 {
                let mut s = a[idx(l - 1, l - 1)].abs() + a[idx(l, l)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[idx(l, l - 1)].abs() <= f64::EPSILON * s {
                    a[idx(l, l - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = a[idx(un, un)];
            if l == un {
                real_eigs.push(x + t);
                nn -= 1;
                break;
            }
            let mut y = a[idx(un - 1, un - 1)];
            let mut w = a[idx(un, un - 1)] * a[idx(un - 1, un)];
            if l == un - 1 {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let mut z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    z = p + sign(z, p);
                    let e1 = x + z;
                    let e2 = if z != 0.0 { x - w / z } else { e1 };
                    real_eigs.push(e1);
                    real_eigs.push(e2);
                } else {
                    complex_pairs.push((x + p, z));
                }
                nn -= 2;
                break;
            }
            if total >= cap {
                return Err(Error::NonConvergence { iterations: total });
            }
            if its > 0 && its % 10 == 0 {
                t += x;
                for i in 0..=un {
                    a[idx(i, i)] -= x;
                }
                let s = a[idx(un, un - 1)].abs() + a[idx(un - 1, un - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            total += 1;
            francis_step(a, n, l, un, x, y, w);
        }
    }
    Ok(EigenSplit { real_eigs, complex_pairs })
}

// One implicit double-shift QR sweep on the active block rows/cols l..=nn.
fn francis_step(a: &mut [f64], n: usize, l: usize, nn: usize, x0: f64, y: f64, w: f64) {
    let idx = |i: usize, j: usize| i * n + j;
    let (mut p, mut q, mut r);
    let mut m = nn - 2;
    loop {
        let z = a[idx(m, m)];
        let rr = x0 - z;
        let s = y - z;
        p = (rr * s - w) / a[idx(m + 1, m)] + a[idx(m, m + 1)];
        q = a[idx(m + 1, m + 1)] - z - rr - s;
        r = a[idx(m + 2, m + 1)];
        let s = p.abs() + q.abs() + r.abs();
        p /= s;
        q /= s;
        r /= s;
        if m == l {
            break;
        }
        let u = a[idx(m, m - 1)].abs() * (q.abs() + r.abs());
        let v = p.abs() * (a[idx(m - 1, m - 1)].abs() + z.abs() + a[idx(m + 1, m + 1)].abs());
        if u <= f64::EPSILON * v {
            break;
        }
        m -= 1;
    }
    for i in m..nn - 1 {
        a[idx(i + 2, i)] = 0.0;
        if i != m {
            a[idx(i + 2, i - 1)] = 0.0;
        }
    }
    let mut x = 0.0;
    for k in m..nn {
        if k != m {
            p = a[idx(k, k - 1)];
            q = a[idx(k + 1, k - 1)];
            r = if k + 1 != nn { a[idx(k + 2, k - 1)] } else { 0.0 };
            x = p.abs() + q.abs() + r.abs();
            if x != 0.0 {
                p /= x;
                q /= x;
                r /= x;
            }
        }
        let s = sign((p * p + q * q + r * r).sqrt(), p);
        if s == 0.0 {
            continue;
        }
        if k == m {
            if l != m {
                a[idx(k, k - 1)] = -a[idx(k, k - 1)];
            }
        } else {
            a[idx(k, k - 1)] = -s * x;
        }
        p += s;
        let hx = p / s;
        let hy = q / s;
        let hz = r / s;
        q /= p;
        r /= p;
        for j in k..=nn {
            let mut pp = a[idx(k, j)] + q * a[idx(k + 1, j)];
            if k + 1 != nn {
                pp += r * a[idx(k + 2, j)];
                a[idx(k + 2, j)] -= pp * hz;
            }
            a[idx(k + 1, j)] -= pp * hy;
            a[idx(k, j)] -= pp * hx;
        }
        let mmin = nn.min(k + 3);
        for i in l..=mmin {
            let mut pp = hx * a[idx(i, k)] + hy * a[idx(i, k + 1)];
            if k + 1 != nn {
                pp += hz * a[idx(i, k + 2)];
                a[idx(i, k + 2)] -= pp * r;
            }
            a[idx(i, k + 1)] -= pp * q;
            a[idx(i, k)] -= pp;
        }
    }
}
