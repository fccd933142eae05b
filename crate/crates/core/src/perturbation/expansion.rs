use serde::{Deserialize, Serialize};

use crate::algebra::{classify_zone, ZoneKind, ZoneLabel};
use crate::error::Result;
use crate::half::HalfInt;
use crate::model::zone_matrix;
use crate::scalar::Real;

/// Which closed form of the Rabi frequency and effective spin is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// `Ω_R = 2√((4r − M + 1)/2)`, `r̃ = M/2`.
    Nearby,
    /// `Ω_R = 2√(M − r + ½)`, `r̃ = r`.
    Remote,
}

impl Branch {
    /// The branch native to a zone; intermediate zones use the remote form,
    /// which coincides with the nearby one there.
    pub fn native(kind: ZoneKind) -> Branch {
        match kind {
            ZoneKind::Nearby => Branch::Nearby,
            ZoneKind::Intermediate | ZoneKind::Remote => Branch::Remote,
        }
    }

    /// `Ω_R²` as an exact integer; may be nonpositive off the branch's zone.
    pub fn omega_squared(self, m: u64, r: HalfInt) -> i64 {
        let m = m as i64;
        match self {
            Branch::Remote => 4 * m - 2 * r.twice() + 2,
            Branch::Nearby => 4 * r.twice() - 2 * m + 2,
        }
    }

    pub fn r_tilde(self, m: u64, r: HalfInt) -> HalfInt {
        match self {
            Branch::Remote => r,
            Branch::Nearby => HalfInt::from_twice(m as i64),
        }
    }
}

/// Parameters of the α-expansion in one zone.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZoneExpansion<T> {
    pub label: ZoneLabel,
    pub branch: Branch,
    pub r_tilde: HalfInt,
    pub omega_r: T,
    /// `(Ω_R/2)⁻²`.
    pub alpha: T,
}

impl<T: Real> ZoneExpansion<T> {
    /// Expansion on the zone's native branch.
    pub fn new(m: u64, r: HalfInt) -> Result<Self> {
        let label = classify_zone(m, r)?;
        Ok(Self::for_branch(m, r, Branch::native(label.kind))?.expect("native branch has Ω² > 0"))
    }

    /// Expansion on a chosen branch, or `None` where that branch's `Ω_R²`
    /// is not positive.
    pub fn for_branch(m: u64, r: HalfInt, branch: Branch) -> Result<Option<Self>> {
        let label = classify_zone(m, r)?;
        let omega_sq = branch.omega_squared(m, r);
        if omega_sq <= 0 {
            return Ok(None);
        }
        let omega_sq = T::from_i64(omega_sq).expect("small integer");
        Ok(Some(ZoneExpansion {
            label,
            branch,
            r_tilde: branch.r_tilde(m, r),
            omega_r: omega_sq.sqrt(),
            alpha: T::lit(4.0) / omega_sq,
        }))
    }

    /// `α(r̃ − ½) < 1`: the square-root expansion converges.
    pub fn converges(&self) -> bool {
        self.alpha * (self.r_tilde.to_real::<T>() - T::lit(0.5)) < T::one()
    }

    /// `E(m̃) = Ω_R m̃ {1 + (α/4)²[5m̃² − 3r̃(r̃+1) + 1]}`.
    pub fn level(&self, m_tilde: HalfInt) -> T {
        let m = m_tilde.to_real::<T>();
        let rt = self.r_tilde.to_real::<T>();
        let a = self.alpha / T::lit(4.0);
        let bracket = T::lit(5.0) * m * m - T::lit(3.0) * rt * (rt + T::one()) + T::one();
        self.omega_r * m * (T::one() + a * a * bracket)
    }

    /// `(m̃, E(m̃))` for `m̃ = −r̃, …, r̃`.
    pub fn levels(&self) -> Vec<(HalfInt, T)> {
        self.r_tilde.projections().map(|m| (m, self.level(m))).collect()
    }
}

pub fn rabi_frequency<T: Real>(m: u64, r: HalfInt) -> Result<T> {
    Ok(ZoneExpansion::<T>::new(m, r)?.omega_r)
}

pub fn alpha<T: Real>(m: u64, r: HalfInt) -> Result<T> {
    Ok(ZoneExpansion::<T>::new(m, r)?.alpha)
}

/// Third-order levels of one zone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThirdOrderSpectrum<T> {
    pub expansion: ZoneExpansion<T>,
    pub levels: Vec<(HalfInt, T)>,
    pub converges: bool,
    /// For intermediate zones, the nearby-branch evaluation as well.
    pub alternate: Option<(ZoneExpansion<T>, Vec<(HalfInt, T)>)>,
}

pub fn spectrum_third_order<T: Real>(m: u64, r: HalfInt) -> Result<ThirdOrderSpectrum<T>> {
    let expansion = ZoneExpansion::<T>::new(m, r)?;
    let converges = expansion.converges();
    if !converges {
        log::warn!(
            "expansion parameter α(r̃ − ½) = {} ≥ 1 in zone (M = {m}, r = {r}); the series does not converge",
            expansion.alpha * (expansion.r_tilde.to_real::<T>() - T::lit(0.5))
        );
    }
    let alternate = if expansion.label.kind == ZoneKind::Intermediate {
        ZoneExpansion::for_branch(m, r, Branch::Nearby)?.map(|e| (e, e.levels()))
    } else {
        None
    };
    Ok(ThirdOrderSpectrum { levels: expansion.levels(), expansion, converges, alternate })
}

/// Exact and third-order spectra of one zone, paired in sorted order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult<T> {
    pub label: ZoneLabel,
    pub exact: Vec<T>,
    pub perturbative: Vec<(HalfInt, T)>,
    pub max_abs_dev: T,
    pub max_rel_dev: T,
}

impl<T: Real> SpectrumResult<T> {
    /// Perturbative values in ascending order, aligned with `exact`.
    pub fn perturbative_sorted(&self) -> Vec<T> {
        sorted(self.perturbative.iter().map(|&(_, e)| e).collect())
    }

    pub fn abs_deviations(&self) -> Vec<T> {
        self.exact.iter().zip(self.perturbative_sorted()).map(|(&x, p)| (p - x).abs()).collect()
    }
}

fn sorted<T: Real>(mut v: Vec<T>) -> Vec<T> {
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite level"));
    v
}

pub fn compare_spectra<T: Real>(m: u64, r: HalfInt) -> Result<SpectrumResult<T>> {
    let exact = zone_matrix::<T>(m, r)?.eigenvalues();
    let spectrum = spectrum_third_order::<T>(m, r)?;
    let pert = sorted(spectrum.levels.iter().map(|&(_, e)| e).collect());
    let mut max_abs = T::zero();
    let mut max_rel = T::zero();
    for (&x, &p) in exact.iter().zip(&pert) {
        let dev = (p - x).abs();
        max_abs = max_abs.max(dev);
        if x.abs() > T::tol(1e-12) {
            max_rel = max_rel.max(dev / x.abs());
        }
    }
    Ok(SpectrumResult {
        label: spectrum.expansion.label,
        exact,
        perturbative: spectrum.levels,
        max_abs_dev: max_abs,
        max_rel_dev: max_rel,
    })
}

/// Deviation of a branch formula from the exact zone spectrum.
///
/// The branch may have a different number of levels than the zone, so the
/// `min(d_branch, d_zone)` largest levels of each are paired from the top.
/// Returns `None` when the branch's `Ω_R²` is not positive.
pub fn branch_deviation<T: Real>(m: u64, r: HalfInt, branch: Branch) -> Result<Option<T>> {
    let Some(expansion) = ZoneExpansion::<T>::for_branch(m, r, branch)? else {
        return Ok(None);
    };
    let exact = zone_matrix::<T>(m, r)?.eigenvalues();
    let pert = sorted(expansion.levels().into_iter().map(|(_, e)| e).collect());
    let dev = exact
        .iter()
        .rev()
        .zip(pert.iter().rev())
        .map(|(&x, &p)| (p - x).abs())
        .fold(T::zero(), T::max);
    Ok(Some(dev))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn rabi_examples() {
        let e = ZoneExpansion::<f64>::new(5, h(3)).unwrap();
        assert!((e.omega_r - 4.0).abs() < 1e-15 && (e.alpha - 0.25).abs() < 1e-15);
        assert!((rabi_frequency::<f64>(1, h(2)).unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-14);
        for r2 in 0..12 {
            let m = r2 as u64;
            let a = Branch::Remote.omega_squared(m, h(r2));
            let b = Branch::Nearby.omega_squared(m, h(r2));
            assert_eq!(a, b);
            assert_eq!(a, 2 * (r2 as i64) + 2);
        }
    }

    #[test]
    fn jaynes_cummings_is_exact() {
        for m in 1..50 {
            let s = compare_spectra::<f64>(m, h(1)).unwrap();
            assert!(s.max_abs_dev <= 1e-12, "M = {m}");
            assert!((s.exact[1] - (m as f64).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn spot_values() {
        let s = compare_spectra::<f64>(5, h(3)).unwrap();
        let p = s.perturbative_sorted();
        assert!((p[3] - 6.0 * (1.0 + 1.0 / 256.0)).abs() < 1e-12);
        assert!((p[2] - 2.0 * (1.0 - 9.0 / 256.0)).abs() < 1e-12);
        assert!((s.exact[3] - 6.0232).abs() < 1e-4 && (s.exact[2] - 1.9291).abs() < 1e-4);
        let s = compare_spectra::<f64>(3, h(6)).unwrap();
        let p = s.perturbative_sorted();
        assert!((p[3] - 6.7250).abs() < 1e-4 && (p[2] - 2.1858).abs() < 1e-4);
        assert!((s.exact[3] - 6.7249).abs() < 1e-4 && (s.exact[2] - 2.1855).abs() < 1e-4);
    }

    #[test]
    fn levels_are_odd() {
        let e = ZoneExpansion::<f64>::new(17, h(7)).unwrap();
        for (m, x) in e.levels() {
            assert_eq!(e.level(-m), -x);
        }
    }

    #[test]
    fn intermediate_carries_both_branches() {
        let s = spectrum_third_order::<f64>(4, h(4)).unwrap();
        let (alt, levels) = s.alternate.expect("both branches");
        assert_eq!(alt.branch, Branch::Nearby);
        for ((_, a), (_, b)) in s.levels.iter().zip(levels) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn branch_outside_its_zone() {
        assert_eq!(branch_deviation::<f64>(2, h(6), Branch::Remote).unwrap(), None);
        assert_eq!(branch_deviation::<f64>(13, h(6), Branch::Nearby).unwrap(), None);
        let near = branch_deviation::<f64>(3, h(6), Branch::Nearby).unwrap().unwrap();
        let far = branch_deviation::<f64>(3, h(6), Branch::Remote).unwrap().unwrap();
        assert!(near < far);
    }
}
