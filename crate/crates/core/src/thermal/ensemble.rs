use serde::{Deserialize, Serialize};

use super::dicke::{dicke_indices, multiplicity_g};
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::perturbation::ZoneExpansion;
use crate::scalar::Real;

/// Bound on the neglected tail of the partition sum, relative to the sum.
pub const SLICE_CUTOFF: f64 = 1e-14;

/// Largest acceptable discarded tail when the truncation is pinned by hand.
pub const TAIL_TOLERANCE: f64 = 1e-12;

/// Zero-order thermal ensemble of `N` atoms in a resonant cavity, all
/// quantities in units of the coupling `g`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThermalParams<T> {
    pub n_atoms: u32,
    pub omega_over_g: T,
    pub kt_over_g: T,
    /// Largest excitation number `M` kept; `None` picks it from the tail.
    pub m_max: Option<u64>,
    /// Intensity unit.
    pub i0: T,
}

impl<T: Real> ThermalParams<T> {
    pub fn new(n_atoms: u32, omega_over_g: T, kt_over_g: T) -> Result<Self> {
        let p = ThermalParams { n_atoms, omega_over_g, kt_over_g, m_max: None, i0: T::one() };
        p.validate()?;
        Ok(p)
    }

    pub fn with_kt(&self, kt_over_g: T) -> Result<Self> {
        let p = ThermalParams { kt_over_g, ..*self };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_atoms == 0 {
            return Err(Error::InvalidAtoms(0));
        }
        if !(self.kt_over_g > T::zero()) || !self.kt_over_g.is_finite() {
            return Err(Error::InvalidParameter(format!("kT/g must be positive and finite, got {}", self.kt_over_g)));
        }
        if !(self.omega_over_g > T::zero()) || !self.omega_over_g.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "ω/g must be positive and finite, got {}",
                self.omega_over_g
            )));
        }
        Ok(())
    }
}

/// Ensemble averages of the zero-order thermal state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleAverages<T> {
    /// `ln Z`.
    pub log_z: T,
    /// `⟨S₊S₋⟩`.
    pub dipole: T,
    /// `⟨S₃⟩`.
    pub s3: T,
    /// Largest superzone index summed.
    pub k_last: u64,
    /// Discarded fraction of `Z` when `m_max` is pinned.
    pub tail_ratio: Option<T>,
}

// Running sums scaled by exp(−shift), rescaled whenever a larger log-weight arrives.
struct Accumulator<T> {
    shift: T,
    z: T,
    dipole: T,
    s3: T,
}

impl<T: Real> Accumulator<T> {
    fn new() -> Self {
        Accumulator { shift: T::neg_infinity(), z: T::zero(), dipole: T::zero(), s3: T::zero() }
    }

    fn add(&mut self, log_w: T, z: T, dipole: T, s3: T) {
        if log_w > self.shift {
            let f = if self.shift.is_finite() { (self.shift - log_w).exp() } else { T::zero() };
            self.z = self.z * f;
            self.dipole = self.dipole * f;
            self.s3 = self.s3 * f;
            self.shift = log_w;
        }
        let f = (log_w - self.shift).exp();
        self.z = self.z + f * z;
        self.dipole = self.dipole + f * dipole;
        self.s3 = self.s3 + f * s3;
    }

    fn merge(&mut self, other: &Accumulator<T>) {
        if other.z > T::zero() {
            self.add(other.shift, other.z, other.dipole, other.s3);
        }
    }

    fn log_z(&self) -> T {
        self.shift + self.z.ln()
    }
}

/// `r̃(2r − (3/2)r̃ + ½) + m̃²/2`: diagonal of the dressed `S₊S₋`.
pub fn dressed_dipole_diagonal<T: Real>(r: HalfInt, r_tilde: HalfInt, m_tilde: HalfInt) -> T {
    let (r, rt, m) = (r.to_real::<T>(), r_tilde.to_real::<T>(), m_tilde.to_real::<T>());
    let half = T::lit(0.5);
    rt * (T::lit(2.0) * r - T::lit(1.5) * rt + half) + half * m * m
}

/// Sums every zone of superzone `k` passing `keep` into one accumulator.
fn slice_sum<T: Real>(
    p: &ThermalParams<T>,
    log_g: &[(HalfInt, T)],
    k: u64,
    keep: impl Fn(u64) -> bool,
) -> Result<Accumulator<T>> {
    let beta = T::one() / p.kt_over_g;
    let n = i64::from(p.n_atoms);
    let half = T::lit(0.5);
    let mut acc = Accumulator::new();
    for &(r, ln_g) in log_g {
        let m2 = 2 * k as i64 + r.twice() - n;
        if m2 < 0 {
            continue;
        }
        let m = (m2 / 2) as u64;
        if !keep(m) {
            continue;
        }
        let exp = ZoneExpansion::<T>::new(m, r)?;
        let rt = exp.r_tilde.to_real::<T>();
        let omega_r = exp.omega_r;
        // Leading term is m̃ = −r̃; the rest follow geometrically.
        let log_w = ln_g - beta * (p.omega_over_g * T::from_u64(k).expect("small") - omega_r * rt);
        let q = (-beta * omega_r).exp();
        let (mut z, mut m_sq, mut term, mut mt) = (T::zero(), T::zero(), T::one(), -rt);
        for _ in 0..=exp.r_tilde.twice() {
            z = z + term;
            m_sq = m_sq + term * mt * mt;
            term = term * q;
            mt = mt + T::one();
        }
        let base = dressed_dipole_diagonal::<T>(r, exp.r_tilde, HalfInt::ZERO);
        let s3_shift = rt - r.to_real::<T>();
        acc.add(log_w, z, base * z + half * m_sq, z * s3_shift);
    }
    Ok(acc)
}

fn log_multiplicities<T: Real>(n_atoms: u32) -> Result<Vec<(HalfInt, T)>> {
    dicke_indices(n_atoms)
        .map(|r| {
            let g = T::from_u128(multiplicity_g(n_atoms, r)?).ok_or(Error::Overflow("multiplicity"))?;
            Ok((r, g.ln()))
        })
        .collect()
}

fn sum_auto<T: Real>(p: &ThermalParams<T>, log_g: &[(HalfInt, T)]) -> Result<(Accumulator<T>, u64)> {
    let n = T::from_u32(p.n_atoms).expect("small");
    // Beyond this K the lowest level of each superzone rises monotonically.
    let turning = n * n / (T::lit(4.0) * p.omega_over_g * p.omega_over_g) + n / T::lit(2.0);
    let cutoff = T::lit(SLICE_CUTOFF).ln();
    let mut acc = Accumulator::new();
    let mut previous: Option<T> = None;
    for k in 0..100_000_000u64 {
        let slice = slice_sum(p, log_g, k, |_| true)?;
        let w = slice.log_z();
        acc.merge(&slice);
        // Past the turning point the slice weights fall off faster than
        // geometrically with the current ratio, which bounds the tail.
        if k > u64::from(p.n_atoms) && T::from_u64(k).expect("small") > turning {
            if let Some(prev) = previous {
                let ratio = (w - prev).exp();
                if ratio < T::one() && w + (ratio / (T::one() - ratio)).ln() < acc.log_z() + cutoff {
                    return Ok((acc, k));
                }
            }
        }
        previous = Some(w);
    }
    Err(Error::InvalidParameter("partition sum failed to converge".into()))
}

/// Thermal averages over all zones, iterating superzones in ascending `K`,
/// then ascending `r` and `m̃`, so results are bit-reproducible.
pub fn ensemble_averages<T: Real>(p: &ThermalParams<T>) -> Result<EnsembleAverages<T>> {
    p.validate()?;
    let log_g = log_multiplicities::<T>(p.n_atoms)?;
    let (acc, k_last, tail_ratio) = match p.m_max {
        None => {
            let (acc, k) = sum_auto(p, &log_g)?;
            (acc, k, None)
        }
        Some(m_max) => {
            let mut acc = Accumulator::new();
            let k_last = m_max + u64::from(p.n_atoms) / 2 + 1;
            for k in 0..=k_last {
                acc.merge(&slice_sum(p, &log_g, k, |m| m <= m_max)?);
            }
            let (full, _) = sum_auto(p, &log_g)?;
            let tail = (T::one() - (acc.log_z() - full.log_z()).exp()).max(T::zero());
            if tail > T::lit(TAIL_TOLERANCE) {
                log::warn!("truncation at M = {m_max} discards {} of the partition sum", tail.to_f64().unwrap_or(f64::NAN));
            }
            (acc, k_last, Some(tail))
        }
    };
    Ok(EnsembleAverages {
        log_z: acc.log_z(),
        dipole: acc.dipole / acc.z,
        s3: acc.s3 / acc.z,
        k_last,
        tail_ratio,
    })
}

/// Total emission intensity `⟨S₊S₋⟩·I₀`.
pub fn emission_intensity<T: Real>(p: &ThermalParams<T>) -> Result<T> {
    Ok(ensemble_averages(p)?.dipole * p.i0)
}

/// Independent atoms without a cavity: `I₀ / (1 + e^{2ω/kT})`.
pub fn intensity_classical<T: Real>(p: &ThermalParams<T>) -> Result<T> {
    p.validate()?;
    let x = T::lit(2.0) * p.omega_over_g / p.kt_over_g;
    let e = (-x).exp();
    Ok(p.i0 * e / (T::one() + e))
}

/// One temperature of an intensity scan; intensities are per atom.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThermalScanRow<T> {
    pub kt_over_g: T,
    pub i_per_atom: T,
    pub i_classical: T,
    pub correlation: T,
}

/// Splits the per-atom intensity into the single-atom part `½ + ⟨S₃⟩/N` and
/// the pair correlation.
pub fn scan_row<T: Real>(p: &ThermalParams<T>) -> Result<ThermalScanRow<T>> {
    let avg = ensemble_averages(p)?;
    let n = T::from_u32(p.n_atoms).expect("small");
    let i_per_atom = avg.dipole * p.i0 / n;
    let i_single = p.i0 * (T::lit(0.5) + avg.s3 / n);
    let correlation =
        if p.n_atoms > 1 { (i_per_atom - i_single) / (p.i0 * (n - T::one())) } else { T::zero() };
    Ok(ThermalScanRow { kt_over_g: p.kt_over_g, i_per_atom, i_classical: intensity_classical(p)?, correlation })
}

pub fn temperature_scan<T: Real>(p: &ThermalParams<T>, kt_grid: &[T]) -> Result<Vec<ThermalScanRow<T>>> {
    if kt_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidParameter("temperature grid must be strictly ascending".into()));
    }
    kt_grid.iter().map(|&kt| scan_row(&p.with_kt(kt)?)).collect()
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid<T: Real>(lo: T, hi: T, n: usize) -> Result<Vec<T>> {
    if !(lo > T::zero()) || !(hi > lo) || n < 2 {
        return Err(Error::InvalidParameter("log grid needs 0 < lo < hi and at least two points".into()));
    }
    let (a, b) = (lo.ln(), hi.ln());
    let step = (b - a) / T::from_usize_exact(n - 1);
    Ok((0..n)
        .map(|i| if i + 1 == n { hi } else { (a + step * T::from_usize_exact(i)).exp() })
        .collect())
}

fn check_superzone<T: Real>(p: &ThermalParams<T>, k: u64) -> Result<()> {
    p.validate()?;
    if k <= u64::from(p.n_atoms) {
        return Err(Error::NotRemoteSuperzone { k, n_atoms: p.n_atoms });
    }
    Ok(())
}

/// Closed-form `Z·⟨S₊S₋⟩_K` of a remote superzone:
/// `(N/2) w (2cosh x)^N + N(N−1) w (2cosh x)^{N−2} sinh²x` with
/// `w = e^{−Kω/kT}`, `x = Ω_R/2kT`, `Ω_R = 2√(K − N/2 + ½)`.
pub fn superzone_dipole<T: Real>(p: &ThermalParams<T>, k: u64) -> Result<T> {
    check_superzone(p, k)?;
    let n = T::from_u32(p.n_atoms).expect("small");
    let kt = p.kt_over_g;
    let omega_r = (T::lit(4.0) * T::from_u64(k).expect("small") - T::lit(2.0) * n + T::lit(2.0)).sqrt();
    let w = (-T::from_u64(k).expect("small") * p.omega_over_g / kt).exp();
    let x = omega_r / (T::lit(2.0) * kt);
    let c = T::lit(2.0) * x.cosh();
    let s = x.sinh();
    let na = p.n_atoms as i32;
    Ok(n / T::lit(2.0) * w * c.powi(na) + n * (n - T::one()) * w * c.powi(na - 2) * s * s)
}

/// The same quantity summed zone by zone from the dressed diagonal.
pub fn superzone_zone_sum<T: Real>(p: &ThermalParams<T>, k: u64) -> Result<T> {
    check_superzone(p, k)?;
    let beta = T::one() / p.kt_over_g;
    let n = i64::from(p.n_atoms);
    let mut total = T::zero();
    for r in dicke_indices(p.n_atoms) {
        let m = ((2 * k as i64 + r.twice() - n) / 2) as u64;
        let g = T::from_u128(multiplicity_g(p.n_atoms, r)?).ok_or(Error::Overflow("multiplicity"))?;
        let exp = ZoneExpansion::<T>::new(m, r)?;
        for m_tilde in exp.r_tilde.projections() {
            let energy = p.omega_over_g * T::from_u64(k).expect("small") + exp.omega_r * m_tilde.to_real::<T>();
            total = total + g * (-beta * energy).exp() * dressed_dipole_diagonal::<T>(r, exp.r_tilde, m_tilde);
        }
    }
    Ok(total)
}
