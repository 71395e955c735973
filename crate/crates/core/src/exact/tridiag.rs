//! The recoupling operator `J23^2` in the `|j12>` basis and its eigenvectors.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::spin::{intermediate_bounds, Spin};

/// Symmetric tridiagonal matrix on the `j12` ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    /// Label of the first row.
    pub j12_min: Spin,
    pub diag: Vec<f64>,
    /// `offdiag[k]` couples rows `k` and `k + 1`.
    pub offdiag: Vec<f64>,
}

impl TridiagonalOperator {
    pub fn new(j12_min: Spin, diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::EmptySubspace);
        }
        if offdiag.len() + 1 != n {
            return Err(Error::DimensionMismatch {
                expected: n - 1,
                found: offdiag.len(),
            });
        }
        Ok(TridiagonalOperator { j12_min, diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Entry `(i, k)`, zero outside the band.
    pub fn get(&self, i: usize, k: usize) -> f64 {
        match i.abs_diff(k) {
            0 => self.diag[i],
            1 => self.offdiag[i.min(k)],
            _ => 0.0,
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.offdiag[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.offdiag[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    /// Eigenvalues ascending with orthonormal eigenvectors.
    pub fn eigen(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        let n = self.dim();
        let mut d = self.diag.clone();
        let mut e = self.offdiag.clone();
        e.push(0.0);
        let mut z = vec![0.0; n * n];
        for i in 0..n {
            z[i * n + i] = 1.0;
        }
        tql_eigen(&mut d, &mut e, &mut z)?;
        Ok((d, z))
    }
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix.
///
/// `d` holds the diagonal, `e[i]` the entry `(i, i+1)` (last slot unused).
/// `z` is row-major `n x n` and receives the eigenvectors as columns when it
/// starts as the identity. On return `d` is sorted ascending.
pub(crate) fn tql_eigen(d: &mut [f64], e: &mut [f64], z: &mut [f64]) -> Result<()> {
    const MAX_ITER: usize = 60;
    let n = d.len();
    if n > 0 {
        e[n - 1] = 0.0;
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_ITER {
                return Err(Error::ConvergenceFailure { iterations: iter });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    let zk = &mut z[k * n..(k + 1) * n];
                    let f = zk[i + 1];
                    zk[i + 1] = s * zk[i] + c * f;
                    zk[i] = c * zk[i] - s * f;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    // Selection sort keeps the column swaps simple.
    for i in 0..n {
        let mut k = i;
        for j in i + 1..n {
            if d[j] < d[k] {
                k = j;
            }
        }
        if k != i {
            d.swap(i, k);
            for row in 0..n {
                z.swap(row * n + i, row * n + k);
            }
        }
    }
    Ok(())
}

/// `J23^2` in the `|j12>` basis, with the `j12 = 0` diagonal taken as its
/// finite limit.
pub fn j23sq_operator(j1: Spin, j2: Spin, j3: Spin, j4: Spin) -> Result<TridiagonalOperator> {
    let b = intermediate_bounds(j1, j2, j3, j4)?;
    let cas = |j: Spin| {
        let v = j.value();
        v * (v + 1.0)
    };
    let (a, bb, c, d) = (cas(j1), cas(j2), cas(j3), cas(j4));
    let diag = b
        .j12_values()
        .map(|j12| {
            if j12 == Spin::ZERO {
                // j1 = j2 and j3 = j4 here, so the 0/0 term drops out.
                return bb + c;
            }
            let l = cas(j12);
            (-l + a + bb + c + d) / 2.0 + (c - d) * (a - bb) / (2.0 * l)
        })
        .collect();
    let (x1, x2, x3, x4) = (j1.value(), j2.value(), j3.value(), j4.value());
    let offdiag = b
        .j12_values()
        .skip(1)
        .map(|j12| {
            let k = j12.value();
            let k2 = k * k;
            let num = (k2 - (x1 - x2) * (x1 - x2))
                * ((x1 + x2 + 1.0) * (x1 + x2 + 1.0) - k2)
                * (k2 - (x3 - x4) * (x3 - x4))
                * ((x3 + x4 + 1.0) * (x3 + x4 + 1.0) - k2);
            num.sqrt() / (2.0 * k * ((2.0 * k - 1.0) * (2.0 * k + 1.0)).sqrt())
        })
        .collect();
    TridiagonalOperator::new(b.j12_min, diag, offdiag)
}

/// Eigen-decomposition of `J23^2` whose columns are `<j12|j23>`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub j12_min: Spin,
    pub j23_min: Spin,
    pub eigenvalues: Vec<f64>,
    /// Row-major `D x D`; row index follows `j12`, column index follows `j23`.
    pub eigenvectors: Vec<f64>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `<j12|j23>` by ladder indices.
    pub fn component(&self, i12: usize, k23: usize) -> f64 {
        self.eigenvectors[i12 * self.dim() + k23]
    }

    /// The 6j value implied by the overlap.
    pub fn sixj(&self, j12: Spin, j23: Spin) -> Option<f64> {
        let i = j12.twice().checked_sub(self.j12_min.twice())? as usize / 2;
        let k = j23.twice().checked_sub(self.j23_min.twice())? as usize / 2;
        if i >= self.dim() || k >= self.dim() {
            return None;
        }
        let w = (f64::from(j12.twice() + 1) * f64::from(j23.twice() + 1)).sqrt();
        Some(self.component(i, k) / w)
    }
}

/// Eigenvectors of the tridiagonal `J23^2`, with signs matching the Racah sum.
///
/// Sign convention: the component at `j12 = j12_max` has sign
/// `(-1)^(j1+j2+j3+j4)`. It is transported to the component of largest
/// magnitude by the three-term recurrence run down from the top row, which is
/// stable there because the recurrence grows out of the edge.
pub fn eigen_6j_oracle(j1: Spin, j2: Spin, j3: Spin, j4: Spin) -> Result<SpectralDecomposition> {
    let op = j23sq_operator(j1, j2, j3, j4)?;
    let b = intermediate_bounds(j1, j2, j3, j4)?;
    let n = op.dim();
    let (vals, mut vecs) = op.eigen()?;
    let top_sign = if ((j1.twice() + j2.twice() + j3.twice() + j4.twice()) / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    for k in 0..n {
        let col = |i: usize| vecs[i * n + k];
        let big = (0..n)
            .max_by(|&x, &y| col(x).abs().total_cmp(&col(y).abs()))
            .unwrap_or(0);
        let mut x = vec![0.0; n];
        x[n - 1] = top_sign;
        let lam = vals[k];
        let mut i = n - 1;
        while i > big {
            let above = if i + 1 < n { op.offdiag[i] * x[i + 1] } else { 0.0 };
            x[i - 1] = ((lam - op.diag[i]) * x[i] - above) / op.offdiag[i - 1];
            // keep the scale bounded; only signs matter
            let s = x[i - 1].abs().max(x[i].abs());
            if s > 1e100 {
                x[i - 1] /= s;
                x[i] /= s;
            }
            i -= 1;
        }
        if x[big] * col(big) < 0.0 {
            for i in 0..n {
                vecs[i * n + k] = -vecs[i * n + k];
            }
        }
    }
    Ok(SpectralDecomposition {
        j12_min: b.j12_min,
        j23_min: b.j23_min,
        eigenvalues: vals,
        eigenvectors: vecs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::racah::sixj_f64;
    use crate::spin::SixJArguments;

    fn s(x: &str) -> Spin {
        x.parse().unwrap()
    }

    #[test]
    fn diagonal_entry_fixture() {
        let op = j23sq_operator(s("2"), s("3"), s("4"), s("5")).unwrap();
        assert_eq!(op.dim(), 5);
        // j12 = 4: L = 20, a = 6, b = 12, c = 20, d = 30.
        let expected = (-20.0 + 6.0 + 12.0 + 20.0 + 30.0) / 2.0 + (20.0 - 30.0) * (6.0 - 12.0) / 40.0;
        assert!((op.diag[3] - expected).abs() < 1e-14);
        assert_eq!(op.get(2, 3), op.get(3, 2));
    }

    #[test]
    fn zero_j12_uses_expectation_value() {
        let op = j23sq_operator(s("1"), s("1"), s("1"), s("1")).unwrap();
        // <0|J23^2|0> = sum over j23 of j23(j23+1) |<0|j23>|^2
        let mut expect = 0.0;
        for j23 in 0..=2u32 {
            let six = sixj_f64(&SixJArguments::integers([1, 1, 1, 1, 0, j23]).unwrap()).unwrap();
            let w = (2 * j23 + 1) as f64;
            expect += (j23 * (j23 + 1)) as f64 * six * six * w;
        }
        assert!(op.diag[0].is_finite());
        assert!((op.diag[0] - expect).abs() < 1e-12);
    }

    #[test]
    fn spectrum_fixture() {
        let sd = eigen_6j_oracle(s("2"), s("3"), s("4"), s("5")).unwrap();
        for (k, lam) in sd.eigenvalues.iter().enumerate() {
            let j23 = 3.0 + k as f64;
            let want = j23 * (j23 + 1.0);
            assert!((lam - want).abs() <= 1e-9 * want);
        }
    }

    #[test]
    fn components_match_racah() {
        let sd = eigen_6j_oracle(s("2"), s("3"), s("4"), s("5")).unwrap();
        for j12 in 1..=5u32 {
            for j23 in 3..=7u32 {
                let a = SixJArguments::integers([2, 3, 4, 5, j12, j23]).unwrap();
                let exact = sixj_f64(&a).unwrap();
                let got = sd.sixj(a.j12, a.j23).unwrap();
                assert!((exact - got).abs() < 1e-12, "{a}: {exact} vs {got}");
            }
        }
    }

    #[test]
    fn one_dimensional_case() {
        let sd = eigen_6j_oracle(s("0"), s("3"), s("3"), s("0")).unwrap();
        assert_eq!(sd.dim(), 1);
        assert!((sd.component(0, 0).abs() - 1.0).abs() < 1e-15);
        let a = SixJArguments::integers([0, 3, 3, 0, 3, 0]).unwrap();
        let exact = sixj_f64(&a).unwrap();
        assert!((sd.sixj(a.j12, a.j23).unwrap() - exact).abs() < 1e-15);
        assert!((exact.abs() - 1.0 / 7f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn half_integer_case() {
        let h = s("1/2");
        let sd = eigen_6j_oracle(h, s("3/2"), h, s("3/2")).unwrap();
        for k in 0..sd.dim() {
            for i in 0..sd.dim() {
                let j12 = Spin::from_twice(sd.j12_min.twice() + 2 * i as u32);
                let j23 = Spin::from_twice(sd.j23_min.twice() + 2 * k as u32);
                let a = SixJArguments::new(h, s("3/2"), h, s("3/2"), j12, j23).unwrap();
                let exact = sixj_f64(&a).unwrap();
                assert!((sd.sixj(j12, j23).unwrap() - exact).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn ql_on_dense_known_matrix() {
        // 1D Laplacian: eigenvalues 2 - 2 cos(k pi / (n + 1))
        let n = 12;
        let op = TridiagonalOperator::new(Spin::ZERO, vec![2.0; n], vec![-1.0; n - 1]).unwrap();
        let (vals, vecs) = op.eigen().unwrap();
        for (k, v) in vals.iter().enumerate() {
            let want = 2.0 - 2.0 * (((k + 1) as f64) * core::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert!((v - want).abs() < 1e-13);
            let col: Vec<f64> = (0..n).map(|i| vecs[i * n + k]).collect();
            let av = op.apply(&col);
            for i in 0..n {
                assert!((av[i] - v * col[i]).abs() < 1e-12);
            }
        }
    }
}
