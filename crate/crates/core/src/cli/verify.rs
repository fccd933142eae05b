use std::fmt;
use std::str::FromStr;

use super::table::{Cell, Table};
use super::CliError;
use crate::algebra::{realize_pae_right, StructurePolynomial};
use crate::error::Result;
use crate::half::HalfInt;
use crate::matrix::symmetric_eigen;
use crate::model::{block_decompose, zone_matrix, zone_realization, FullSpaceOps};
use crate::perturbation::{commutator_identities_check, compare_spectra, log_log_slope, transform_chain};
use crate::thermal::{multiplicity_g, superzone_dipole, superzone_zone_sum, ThermalParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Algebra,
    Spectrum,
    Transform,
    FullSpace,
    Thermal,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "all" => Suite::All,
            "algebra" => Suite::Algebra,
            "spectrum" => Suite::Spectrum,
            "transform" => Suite::Transform,
            "full-space" => Suite::FullSpace,
            "thermal" => Suite::Thermal,
            _ => return Err(format!("unknown suite `{s}`")),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Algebra => "algebra",
            Suite::Spectrum => "spectrum",
            Suite::Transform => "transform",
            Suite::FullSpace => "full-space",
            Suite::Thermal => "thermal",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A stated formula that does not hold, reported but not counted.
    Discrepancy,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Discrepancy => "discrepancy",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub value: f64,
    /// Threshold the value is compared against.
    pub bound: f64,
    pub status: Status,
    pub note: String,
}

fn below(suite: Suite, name: &str, value: f64, bound: f64) -> Check {
    let status = if value <= bound { Status::Pass } else { Status::Fail };
    Check { suite, name: name.into(), value, bound, status, note: String::new() }
}

fn algebra() -> Result<Vec<Check>> {
    let mut worst: f64 = 0.0;
    for r2 in 0..=8 {
        for m in 0..=30 {
            let g = zone_realization::<f64>(m, HalfInt::from_twice(r2))?;
            worst = worst.max(g.residuals().max_relative());
        }
        let spin = HalfInt::from_twice(r2);
        let g = realize_pae_right(&StructurePolynomial::<f64>::spin(spin.to_f64()), 0, r2 as usize + 1)?;
        worst = worst.max(g.residuals().max_relative());
    }
    let mut out = vec![below(Suite::Algebra, "pae_residuals", worst, 1e-10)];

    let reports: Vec<_> = (1..=7).map(|t| commutator_identities_check::<f64>(HalfInt::from_twice(t))).collect::<Result<_>>()?;
    for i in 0..reports[0].checks.len() {
        let name = reports[0].checks[i].name.clone();
        let value = reports.iter().map(|r| r.checks[i].residual).fold(0.0, f64::max);
        let mut c = below(Suite::Algebra, &name, value, 1e-10);
        if reports[0].checks[i].stated && c.status == Status::Fail {
            c.status = Status::Discrepancy;
            c.note = "stated form fails; the corrected form is checked separately".into();
        }
        out.push(c);
    }
    Ok(out)
}

fn spectrum() -> Result<Vec<Check>> {
    let half = HalfInt::HALF;
    let mut jc: f64 = 0.0;
    for m in 1..=200 {
        let s = compare_spectra::<f64>(m, half)?;
        let root = (m as f64).sqrt();
        jc = jc.max(s.max_abs_dev).max((s.exact[0] + root).abs()).max((s.exact[1] - root).abs());
    }
    let mut small: f64 = 0.0;
    for r2 in 0..=8 {
        for m in 0..=60 {
            let r = HalfInt::from_twice(r2);
            let s = compare_spectra::<f64>(m, r)?;
            if s.label.d <= 3 {
                let omega = crate::perturbation::rabi_frequency::<f64>(m, r)?;
                small = small.max(s.max_abs_dev / omega);
            }
        }
    }
    let spot_a = compare_spectra::<f64>(5, HalfInt::from_twice(3))?.max_abs_dev;
    let spot_b = compare_spectra::<f64>(3, HalfInt::from_int(3))?.max_abs_dev;
    Ok(vec![
        below(Suite::Spectrum, "single_atom_exact", jc, 1e-12),
        below(Suite::Spectrum, "small_zones_exact", small, 1e-9),
        below(Suite::Spectrum, "spot_M5_r3/2", spot_a, 7e-4),
        below(Suite::Spectrum, "spot_M3_r3", spot_b, 4e-4),
    ])
}

fn transform() -> Result<Vec<Check>> {
    let alphas = [0.2, 0.1, 0.05, 0.025];
    let residuals: Vec<f64> =
        alphas.iter().map(|&a| transform_chain::<f64>(HalfInt::from_int(2), a).map(|c| c.offdiag_residual)).collect::<Result<_>>()?;
    let slope = log_log_slope(&alphas, &residuals);
    let status = if slope >= 2.9 { Status::Pass } else { Status::Fail };
    Ok(vec![Check {
        suite: Suite::Transform,
        name: "residual_slope".into(),
        value: slope,
        bound: 2.9,
        status,
        note: "lower bound".into(),
    }])
}

fn full_space() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in [2u32, 3] {
        let ops = FullSpaceOps::<f64>::build(n, 20, 1.0)?;
        let zones = block_decompose(&ops)?;
        let mut worst: f64 = 0.0;
        for z in zones.iter().filter(|z| z.trusted) {
            let exact = zone_matrix::<f64>(z.label.m, z.label.r)?.eigenvalues();
            for b in &z.blocks {
                let e = symmetric_eigen(b)?;
                for (x, y) in e.values.iter().zip(&exact) {
                    worst = worst.max((x - y).abs());
                }
            }
        }
        out.push(below(Suite::FullSpace, &format!("blocks_match_zones_N{n}"), worst, 1e-10));
        let mut bad = 0usize;
        for k in u64::from(n)..=20 {
            let slice: Vec<_> = zones.iter().filter(|z| z.k == k).collect();
            let count: usize = slice.iter().map(|z| z.multiplicity * z.label.d).sum();
            let g_ok = slice.iter().all(|z| multiplicity_g(n, z.label.r).ok() == Some(z.multiplicity as u128));
            if count != 1 << n || !g_ok {
                bad += 1;
            }
        }
        out.push(below(Suite::FullSpace, &format!("superzone_counts_N{n}"), bad as f64, 0.0));
    }
    Ok(out)
}

fn thermal() -> Result<Vec<Check>> {
    let p = ThermalParams::new(2, 10.0f64, 3.0)?;
    let mut out = Vec::new();
    for k in 3..=5 {
        let closed = superzone_dipole(&p, k)?;
        let direct = superzone_zone_sum(&p, k)?;
        let mut c = below(Suite::Thermal, &format!("superzone_N2_K{k}"), (closed - direct).abs() / direct.abs(), 1e-10);
        c.note = format!("closed {closed:.16e} zone sum {direct:.16e}");
        out.push(c);
    }
    let hot = crate::thermal::scan_row(&ThermalParams::new(1, 10.0f64, 1e4)?)?;
    out.push(below(Suite::Thermal, "high_temperature_N1", (hot.i_per_atom - 0.5).abs(), 0.01));
    let cold = crate::thermal::scan_row(&ThermalParams::new(2, 10.0f64, 0.01)?)?;
    out.push(below(Suite::Thermal, "low_temperature_N2", cold.i_per_atom, 1e-6));
    Ok(out)
}

pub fn run_suite(suite: Suite) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Algebra {
        out.extend(algebra()?);
    }
    if all || suite == Suite::Spectrum {
        out.extend(spectrum()?);
    }
    if all || suite == Suite::Transform {
        out.extend(transform()?);
    }
    if all || suite == Suite::FullSpace {
        out.extend(full_space()?);
    }
    if all || suite == Suite::Thermal {
        out.extend(thermal()?);
    }
    Ok(out)
}

/// Runs the suite; the table is returned together with the failure count.
pub fn verify(suite: &str) -> std::result::Result<(Table, usize), CliError> {
    let suite: Suite = suite.parse().map_err(CliError::Invalid)?;
    let checks = run_suite(suite)?;
    let mut t = Table::new(&["suite", "check", "value", "bound", "status", "note"]);
    for c in &checks {
        t.push(vec![
            c.suite.to_string().into(),
            c.name.clone().into(),
            c.value.into(),
            c.bound.into(),
            c.status.label().into(),
            Cell::from(c.note.clone()),
        ]);
    }
    let failures = checks.iter().filter(|c| c.status == Status::Fail).count();
    Ok((t, failures))
}
