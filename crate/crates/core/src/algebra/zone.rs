use std::fmt;

use serde::{Deserialize, Serialize};

use super::polynomial::StructurePolynomial;
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::scalar::Real;

/// Irrep dimension; truncated infinite irreps carry `Unbounded`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dimension {
    Finite(usize),
    Unbounded,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(d) => write!(f, "{d}"),
            Dimension::Unbounded => write!(f, "inf"),
        }
    }
}

/// `R(k₋, k₊, d)`: multiplicities of the left and right bounding roots plus
/// the dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IrrepClass {
    pub k_minus: usize,
    pub k_plus: usize,
    pub d: Dimension,
}

impl IrrepClass {
    pub fn finite(k_minus: usize, k_plus: usize, d: usize) -> Self {
        IrrepClass { k_minus, k_plus, d: Dimension::Finite(d) }
    }

    /// Same dimension and the same unordered pair of multiplicities.
    pub fn isomorphic(&self, other: &IrrepClass) -> bool {
        let a = (self.k_minus.min(self.k_plus), self.k_minus.max(self.k_plus));
        let b = (other.k_minus.min(other.k_plus), other.k_minus.max(other.k_plus));
        self.d == other.d && a == b
    }
}

impl fmt::Display for IrrepClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({},{},{})", self.k_minus, self.k_plus, self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZoneKind {
    Nearby,
    Intermediate,
    Remote,
}

impl fmt::Display for ZoneKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZoneKind::Nearby => "nearby",
            ZoneKind::Intermediate => "intermediate",
            ZoneKind::Remote => "remote",
        })
    }
}

/// A zone of the Tavis–Cummings model: total excitation `m`, Dicke index `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZoneLabel {
    pub m: u64,
    pub r: HalfInt,
    pub kind: ZoneKind,
    pub d: usize,
}

impl ZoneLabel {
    pub fn irrep(&self) -> IrrepClass {
        match self.kind {
            ZoneKind::Nearby => IrrepClass::finite(1, 1, self.d),
            ZoneKind::Intermediate => IrrepClass::finite(2, 1, self.d),
            ZoneKind::Remote => IrrepClass::finite(1, 1, self.d),
        }
    }

    /// Spin of the equivalent su(2) irrep: `min(M/2, r)`.
    pub fn r_tilde(&self) -> HalfInt {
        HalfInt::from_twice(self.d as i64 - 1)
    }
}

fn validate(m: u64, r: HalfInt) -> Result<()> {
    if r.is_negative() {
        return Err(Error::InvalidZone { m, r, reason: "Dicke index must be nonnegative" });
    }
    if m > (1 << 40) {
        return Err(Error::InvalidZone { m, r, reason: "excitation number too large" });
    }
    Ok(())
}

/// Cubic structure polynomial of the zone algebra: `c0 = −1`, roots
/// `−(M−r)/2`, `(M−r)/2 − r`, `(M−r)/2 + r + 1`.
pub fn tc_structure_polynomial<T: Real>(m: u64, r: HalfInt) -> Result<StructurePolynomial<T>> {
    validate(m, r)?;
    // Roots are quarter-integers; build them from exact integers.
    let a = 2 * m as i64 - r.twice();
    let quarters = [-a, a - 2 * r.twice(), a + 2 * r.twice() + 4];
    let four = T::lit(4.0);
    let roots = quarters.iter().map(|&q| T::from_i64(q).expect("small integer") / four).collect();
    StructurePolynomial::new(-T::one(), roots)
}

pub fn classify_zone(m: u64, r: HalfInt) -> Result<ZoneLabel> {
    validate(m, r)?;
    let two_m = 2 * m as i64;
    let kind = match two_m.cmp(&(2 * r.twice())) {
        std::cmp::Ordering::Less => ZoneKind::Nearby,
        std::cmp::Ordering::Equal => ZoneKind::Intermediate,
        std::cmp::Ordering::Greater => ZoneKind::Remote,
    };
    let d = (m as i64 + 1).min(r.twice() + 1) as usize;
    Ok(ZoneLabel { m, r, kind, d })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn polynomial_examples() {
        let p = tc_structure_polynomial::<f64>(4, h(4)).unwrap();
        assert_eq!(p.roots(), &[-1.0, -1.0, 4.0]);
        assert_eq!(p.c0(), -1.0);
        let p = tc_structure_polynomial::<f64>(1, h(4)).unwrap();
        assert_eq!(p.roots(), &[-2.5, 0.5, 2.5]);
        assert_eq!(p.bounding_pair(), Some((0.5, 2.5)));
        let p = tc_structure_polynomial::<f64>(12, h(4)).unwrap();
        assert_eq!(p.roots(), &[-5.0, 3.0, 8.0]);
        assert_eq!(p.bounding_pair(), Some((3.0, 8.0)));
    }

    #[test]
    fn rejects_negative_index() {
        assert!(tc_structure_polynomial::<f64>(3, h(-1)).is_err());
        assert!(classify_zone(3, h(-2)).is_err());
    }

    #[test]
    fn classification_examples() {
        let z = classify_zone(1, h(4)).unwrap();
        assert_eq!((z.kind, z.d, z.irrep()), (ZoneKind::Nearby, 2, IrrepClass::finite(1, 1, 2)));
        let z = classify_zone(4, h(4)).unwrap();
        assert_eq!((z.kind, z.d, z.irrep()), (ZoneKind::Intermediate, 5, IrrepClass::finite(2, 1, 5)));
        let z = classify_zone(12, h(4)).unwrap();
        assert_eq!((z.kind, z.d, z.irrep()), (ZoneKind::Remote, 5, IrrepClass::finite(1, 1, 5)));
        assert_eq!(z.irrep().to_string(), "R(1,1,5)");
    }

    #[test]
    fn isomorphism_ignores_orientation() {
        let a = IrrepClass::finite(2, 1, 5);
        assert!(a.isomorphic(&IrrepClass::finite(1, 2, 5)));
        assert!(!a.isomorphic(&IrrepClass::finite(1, 1, 5)));
        assert!(!a.isomorphic(&IrrepClass::finite(2, 1, 4)));
    }

    #[test]
    fn dimension_law_matches_root_gaps() {
        for m in 0..=60u64 {
            for r2 in 0..=20 {
                let p = tc_structure_polynomial::<f64>(m, h(r2)).unwrap();
                let (ql, qr) = p.bounding_pair().expect("finite zone irrep");
                let z = classify_zone(m, h(r2)).unwrap();
                assert_eq!((qr - ql) as usize, z.d, "M={m} 2r={r2}");
                assert_eq!(z.d, (m as usize + 1).min(r2 as usize + 1));
            }
        }
    }
}
