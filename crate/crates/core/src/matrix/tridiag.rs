use serde::{Deserialize, Serialize};

use crate::scalar::Real;

/// Real symmetric tridiagonal matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymTridiagonal<T> {
    diagonal: Vec<T>,
    offdiag: Vec<T>,
}

impl<T: Real> SymTridiagonal<T> {
    /// Panics unless `offdiag.len() + 1 == diagonal.len()` and the matrix is non-empty.
    pub fn new(diagonal: Vec<T>, offdiag: Vec<T>) -> Self {
        assert!(!diagonal.is_empty(), "tridiagonal matrix must be non-empty");
        assert_eq!(offdiag.len() + 1, diagonal.len(), "off-diagonal length must be dim - 1");
        SymTridiagonal { diagonal, offdiag }
    }

    pub fn zero_diagonal(offdiag: Vec<T>) -> Self {
        Self::new(vec![T::zero(); offdiag.len() + 1], offdiag)
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[T] {
        &self.diagonal
    }

    pub fn offdiag(&self) -> &[T] {
        &self.offdiag
    }

    /// Largest absolute row sum; bounds the spectral radius.
    pub fn norm_inf(&self) -> T {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diagonal[i].abs();
                if i > 0 {
                    s = s + self.offdiag[i - 1].abs();
                }
                if i + 1 < n {
                    s = s + self.offdiag[i].abs();
                }
                s
            })
            .fold(T::zero(), T::max)
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        tridiag_eigenvalues(self)
    }

    /// Number of eigenvalues strictly below `x` (Sturm count).
    pub fn count_below(&self, x: T) -> usize {
        let tiny = T::min_positive_value();
        let mut count = 0;
        let mut q = T::one();
        for i in 0..self.dim() {
            let b2 = if i == 0 { T::zero() } else { self.offdiag[i - 1] * self.offdiag[i - 1] };
            q = if i == 0 { self.diagonal[0] - x } else { self.diagonal[i] - x - b2 / q };
            if q.abs() < tiny {
                q = -tiny;
            }
            if q < T::zero() {
                count += 1;
            }
        }
        count
    }
}

/// All eigenvalues in ascending order, by implicit-shift QL with a
/// bisection fallback when QL fails to converge.
pub fn tridiag_eigenvalues<T: Real>(t: &SymTridiagonal<T>) -> Vec<T> {
    match implicit_ql(t) {
        Some(mut ev) => {
            ev.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalue"));
            ev
        }
        None => {
            log::warn!("QL did not converge for d = {}, falling back to bisection", t.dim());
            tridiag_eigenvalues_bisection(t)
        }
    }
}

/// Eigenvalues by Sturm-sequence bisection, ascending.
pub fn tridiag_eigenvalues_bisection<T: Real>(t: &SymTridiagonal<T>) -> Vec<T> {
    let n = t.dim();
    let r = t.norm_inf();
    let (lo0, hi0) = (-r - T::one(), r + T::one());
    (0..n)
        .map(|k| {
            // k-th eigenvalue: smallest x with count_below(x) > k.
            let (mut lo, mut hi) = (lo0, hi0);
            for _ in 0..200 {
                let mid = (lo + hi) / T::lit(2.0);
                if mid <= lo || mid >= hi {
                    break;
                }
                if t.count_below(mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            (lo + hi) / T::lit(2.0)
        })
        .collect()
}

// Implicit QL with Wilkinson-type shift; eigenvalues only.
fn implicit_ql<T: Real>(t: &SymTridiagonal<T>) -> Option<Vec<T>> {
    let n = t.dim();
    let mut d = t.diagonal.clone();
    let mut e: Vec<T> = t.offdiag.iter().copied().chain(std::iter::once(T::zero())).collect();
    let two = T::lit(2.0);
    let max_iter = 50 * n.max(1);
    let mut iters = 0;

    for l in 0..n {
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd || e[m] == T::zero() {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iters += 1;
            if iters > max_iter {
                return None;
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + if g >= T::zero() { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    if d.iter().all(|x| x.is_finite()) {
        Some(d)
    } else {
        None
    }
}
