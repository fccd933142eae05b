use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Absolute tolerance for deciding that two roots coincide.
pub const ROOT_TOL: f64 = 1e-9;

/// `p(x) = c0 · Π (x − qᵢ)` with real roots kept in ascending order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructurePolynomial<T> {
    c0: T,
    roots: Vec<T>,
}

impl<T: Real> StructurePolynomial<T> {
    /// Sorts the roots. Rejects a leading coefficient other than ±1 and
    /// non-finite roots.
    pub fn new(c0: T, mut roots: Vec<T>) -> Result<Self> {
        if (c0.abs() - T::one()).abs() > T::tol(1e-12) {
            return Err(Error::InvalidParameter(format!("leading coefficient must be ±1, got {c0}")));
        }
        if roots.iter().any(|q| !q.is_finite()) {
            return Err(Error::InvalidParameter("structure polynomial roots must be finite".into()));
        }
        roots.sort_by(|a, b| a.partial_cmp(b).expect("finite root"));
        Ok(StructurePolynomial { c0: c0.signum(), roots })
    }

    /// Heisenberg–Weyl algebra: `p(x) = x`.
    pub fn heisenberg_weyl() -> Self {
        StructurePolynomial { c0: T::one(), roots: vec![T::zero()] }
    }

    /// su(2) at spin `r`: `p(x) = −(x + r)(x − r − 1) = r(r+1) − x(x − 1)`.
    pub fn spin(r: T) -> Self {
        StructurePolynomial { c0: -T::one(), roots: vec![-r, r + T::one()] }
    }

    pub fn c0(&self) -> T {
        self.c0
    }

    pub fn roots(&self) -> &[T] {
        &self.roots
    }

    pub fn order(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, index: usize) -> Result<T> {
        self.roots
            .get(index)
            .copied()
            .ok_or(Error::PivotOutOfRange { index, order: self.order() })
    }

    pub fn eval(&self, x: T) -> T {
        self.roots.iter().fold(self.c0, |acc, &q| acc * (x - q))
    }

    /// How many roots lie within [`ROOT_TOL`] of `x`.
    pub fn multiplicity(&self, x: T) -> usize {
        let tol = T::tol(ROOT_TOL);
        self.roots.iter().filter(|&&q| (q - x).abs() <= tol).count()
    }

    /// Index of the first root within tolerance of `x`.
    pub fn root_index(&self, x: T) -> Option<usize> {
        let tol = T::tol(ROOT_TOL);
        self.roots.iter().position(|&q| (q - x).abs() <= tol)
    }

    /// Widest pair of roots `(q_left, q_right)` bounding a finite physical
    /// irrep: the gap is a positive integer and `p` is strictly positive on
    /// every interior point `q_left + 1, …, q_right − 1`. Adjacent roots one
    /// unit apart also qualify trivially, hence the preference for width.
    pub fn bounding_pair(&self) -> Option<(T, T)> {
        let tol = T::tol(ROOT_TOL);
        let mut best: Option<(T, T, usize)> = None;
        for (i, &ql) in self.roots.iter().enumerate() {
            for &qr in &self.roots[i + 1..] {
                let gap = qr - ql;
                let d = gap.round();
                if d < T::one() || (gap - d).abs() > tol {
                    continue;
                }
                let d = d.to_usize().expect("small gap");
                let interior_ok = (1..d).all(|k| self.eval(ql + T::from_usize_exact(k)) > tol);
                if interior_ok && best.map_or(true, |(_, _, bd)| d > bd) {
                    best = Some((ql, qr, d));
                }
            }
        }
        best.map(|(l, r, _)| (l, r))
    }
}

impl<T: Real> fmt::Display for StructurePolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.c0 < T::zero() { "-" } else { "" })?;
        for q in &self.roots {
            write!(f, "(x - {q})")?;
        }
        Ok(())
    }
}
