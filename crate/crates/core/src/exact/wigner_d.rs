//! Wigner small-d matrix `d^j_{m m'}(beta) = <m| exp(-i beta J_y) |m'>`.
//!
//! A column is the eigenvector of `cos(beta) J_z + sin(beta) J_x` with
//! eigenvalue `m'`. It is generated by the three-term recurrence run inwards
//! from both ends, where it grows, and the two halves are joined near the
//! classical centre `m = m' cos(beta)`. Signs come from the closed forms at
//! `m = -j`. Convention: `d^{1/2}_{1/2,-1/2}(beta) = -sin(beta/2)`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::spin::Spin;

const RESCALE: f64 = 1e150;

fn check(j: Spin, two_m: i32) -> Result<()> {
    let tj = j.twice() as i32;
    if two_m.abs() > tj || (tj - two_m) % 2 != 0 {
        return Err(Error::DomainError);
    }
    Ok(())
}

fn parity_sign(k: i32) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Recurrence coefficient `sqrt((j - m)(j + m + 1))` in twice-units.
fn ladder(tj: i32, tm: i32) -> f64 {
    (f64::from(tj - tm) * f64::from(tj + tm + 2)).sqrt() / 2.0
}

/// Column `m' = two_mp / 2` for `m = -j ..= j`.
pub fn wigner_d_column(j: Spin, two_mp: i32, beta: f64) -> Result<Vec<f64>> {
    check(j, two_mp)?;
    let tj = j.twice() as i32;
    let n = j.twice() as usize + 1;
    let (sb, cb) = beta.sin_cos();
    let mp = f64::from(two_mp) / 2.0;

    if sb == 0.0 {
        let mut col = vec![0.0; n];
        if cb > 0.0 {
            col[((two_mp + tj) / 2) as usize] = 1.0;
        } else {
            col[((tj - two_mp) / 2) as usize] = parity_sign((tj - two_mp) / 2);
        }
        return Ok(col);
    }
    if n == 1 {
        return Ok(vec![1.0]);
    }

    let tm_of = |i: usize| 2 * i as i32 - tj;
    let coef = |i: usize| 2.0 * (mp - f64::from(tm_of(i)) / 2.0 * cb) / sb;

    let centre = (mp * cb + j.value()).round();
    let k = (centre.max(0.0) as usize).min(n - 2);

    // Upwards from m = -j: x_{m+1} b_m = c_m x_m - a_m x_{m-1},
    // with a_m = sqrt((j+m)(j-m+1)) = b_{m-1}.
    let mut lo = vec![0.0; k + 2];
    let (sh, ch) = (beta / 2.0).sin_cos();
    let sign_lo = ch.signum().powi((tj - two_mp) / 2) * sh.signum().powi((tj + two_mp) / 2);
    lo[0] = sign_lo;
    for i in 0..=k {
        let prev = if i > 0 { ladder(tj, tm_of(i - 1)) * lo[i - 1] } else { 0.0 };
        lo[i + 1] = (coef(i) * lo[i] - prev) / ladder(tj, tm_of(i));
        if lo[i + 1].abs() > RESCALE {
            for v in lo[..=i + 1].iter_mut() {
                *v /= RESCALE;
            }
        }
    }

    // Downwards from m = j: x_{m-1} a_m = c_m x_m - b_m x_{m+1}.
    let mut hi = vec![0.0; n];
    hi[n - 1] = 1.0;
    let mut i = n - 1;
    while i > k {
        let next = if i + 1 < n { ladder(tj, tm_of(i)) * hi[i + 1] } else { 0.0 };
        hi[i - 1] = (coef(i) * hi[i] - next) / ladder(tj, tm_of(i - 1));
        if hi[i - 1].abs() > RESCALE {
            for v in hi[i - 1..].iter_mut() {
                *v /= RESCALE;
            }
        }
        i -= 1;
    }

    let den = hi[k] * hi[k] + hi[k + 1] * hi[k + 1];
    let scale = (lo[k] * hi[k] + lo[k + 1] * hi[k + 1]) / den;
    let mut col: Vec<f64> = lo[..=k].to_vec();
    col.extend(hi[k + 1..].iter().map(|v| v * scale));
    let norm = col.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in col.iter_mut() {
        *v /= norm;
    }
    Ok(col)
}

/// `d^j_{m m'}(beta)` with `m = two_m / 2`, `m' = two_mp / 2`.
pub fn wigner_d(j: Spin, two_m: i32, two_mp: i32, beta: f64) -> Result<f64> {
    check(j, two_m)?;
    let col = wigner_d_column(j, two_mp, beta)?;
    Ok(col[((two_m + j.twice() as i32) / 2) as usize])
}

/// Full matrix, row-major with rows `m` and columns `m'`, both ascending.
pub fn wigner_d_matrix(j: Spin, beta: f64) -> Vec<f64> {
    let n = j.twice() as usize + 1;
    let tj = j.twice() as i32;
    let mut out = vec![0.0; n * n];
    for c in 0..n {
        let col = wigner_d_column(j, 2 * c as i32 - tj, beta).expect("valid projection");
        for (r, v) in col.into_iter().enumerate() {
            out[r * n + c] = v;
        }
    }
    out
}
