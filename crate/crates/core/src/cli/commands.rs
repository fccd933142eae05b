use super::config::RunConfig;
use super::table::Table;
use super::CliError;
use crate::algebra::classify_zone;
use crate::half::HalfInt;
use crate::perturbation::{branch_deviation, compare_spectra, Branch};
use crate::thermal::{dicke_indices, log_grid, multiplicity_g, temperature_scan, ThermalParams};

/// Largest zone dimension the spectrum and compare commands accept.
pub const MAX_ZONE_DIM: usize = 5000;
pub const MAX_GRID: usize = 100_000;
pub const MAX_ATOMS: u32 = 120;
const MAX_ROWS: u64 = 1_000_000;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

fn dicke_r(r2: i64) -> Result<HalfInt, CliError> {
    if r2 < 0 {
        return Err(invalid(format!("r2 must be nonnegative, got {r2}")));
    }
    Ok(HalfInt::from_twice(r2))
}

fn atoms(cfg: &RunConfig) -> Result<u32, CliError> {
    let n: u32 = cfg.get("atoms")?;
    if n == 0 || n > MAX_ATOMS {
        return Err(invalid(format!("atoms must lie in 1..={MAX_ATOMS}, got {n}")));
    }
    Ok(n)
}

fn range(cfg: &RunConfig, lo: &str, hi: &str) -> Result<(u64, u64), CliError> {
    let (a, b): (u64, u64) = (cfg.get(lo)?, cfg.get(hi)?);
    if a > b {
        return Err(invalid(format!("{lo} = {a} exceeds {hi} = {b}")));
    }
    if b - a >= MAX_ROWS {
        return Err(invalid(format!("range {lo}..={hi} is too long")));
    }
    Ok((a, b))
}

pub fn zones(cfg: &RunConfig) -> Result<Table, CliError> {
    let n = atoms(cfg)?;
    let (k_min, k_max) = range(cfg, "k-min", "k-max")?;
    let mut t = Table::new(&["K", "M", "r", "kind", "d", "G"]);
    let indices: Vec<HalfInt> = dicke_indices(n).collect();
    for k in k_min..=k_max {
        for &r in indices.iter().rev() {
            let m2 = 2 * k as i64 + r.twice() - i64::from(n);
            if m2 < 0 {
                continue;
            }
            let m = (m2 / 2) as u64;
            let label = classify_zone(m, r)?;
            t.push(vec![
                k.into(),
                m.into(),
                r.to_string().into(),
                label.kind.to_string().into(),
                label.d.into(),
                multiplicity_g(n, r)?.into(),
            ]);
        }
    }
    Ok(t)
}

fn checked_zone(m: u64, r: HalfInt) -> Result<(), CliError> {
    let label = classify_zone(m, r)?;
    if label.d > MAX_ZONE_DIM {
        return Err(invalid(format!("zone dimension {} exceeds {MAX_ZONE_DIM}", label.d)));
    }
    Ok(())
}

pub fn spectrum(cfg: &RunConfig) -> Result<Table, CliError> {
    let m: u64 = cfg.get("M")?;
    let r = dicke_r(cfg.get("r2")?)?;
    checked_zone(m, r)?;
    let s = compare_spectra::<f64>(m, r)?;
    let mut t = Table::new(&["index", "exact", "perturbative", "abs_dev"]);
    for (i, (&x, p)) in s.exact.iter().zip(s.perturbative_sorted()).enumerate() {
        t.push(vec![i.into(), x.into(), p.into(), (p - x).abs().into()]);
    }
    Ok(t)
}

pub fn compare(cfg: &RunConfig) -> Result<Table, CliError> {
    let r = dicke_r(cfg.get("r2")?)?;
    let (m_min, m_max) = range(cfg, "m-min", "m-max")?;
    for m in [m_min, m_max] {
        checked_zone(m, r)?;
    }
    let mut t = Table::new(&["M", "max_abs_dev_nearby", "max_abs_dev_remote"]);
    for m in m_min..=m_max {
        let near = branch_deviation::<f64>(m, r, Branch::Nearby)?;
        let far = branch_deviation::<f64>(m, r, Branch::Remote)?;
        t.push(vec![m.into(), near.into(), far.into()]);
    }
    Ok(t)
}

pub fn intensity(cfg: &RunConfig) -> Result<Table, CliError> {
    let n = atoms(cfg)?;
    let omega: f64 = cfg.get("omega")?;
    let (lo, hi): (f64, f64) = (cfg.get("kt-min")?, cfg.get("kt-max")?);
    let points: usize = cfg.get("grid")?;
    if points > MAX_GRID {
        return Err(invalid(format!("grid must not exceed {MAX_GRID} points")));
    }
    let grid = if points == 1 && lo == hi && lo > 0.0 { vec![lo] } else { log_grid(lo, hi, points)? };
    let mut params = ThermalParams::new(n, omega, grid[0])?;
    params.m_max = cfg.get_opt("m-cap")?;
    let mut t = Table::new(&["kt_over_g", "i_per_atom", "i_classical", "correlation"]);
    for row in temperature_scan(&params, &grid)? {
        t.push(vec![row.kt_over_g.into(), row.i_per_atom.into(), row.i_classical.into(), row.correlation.into()]);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::table::Cell;

    fn cfg(command: &'static str, flags: &[(&'static str, &str)]) -> RunConfig {
        let flags: Vec<_> = flags.iter().map(|(k, v)| (*k, Some(v.to_string()))).collect();
        RunConfig::resolve(command, &[], &flags).unwrap()
    }

    #[test]
    fn four_atoms_at_k6() {
        let t = zones(&cfg("zones", &[("k-min", "6"), ("k-max", "6")])).unwrap();
        let g: Vec<Cell> = t.rows.iter().map(|r| r[5].clone()).collect();
        assert_eq!(g, vec![Cell::Int(1), Cell::Int(3), Cell::Int(2)]);
        let r: Vec<Cell> = t.rows.iter().map(|r| r[2].clone()).collect();
        assert_eq!(r, vec![Cell::from("2"), Cell::from("1"), Cell::from("0")]);
    }

    #[test]
    fn single_atom_ground() {
        let t = zones(&cfg("zones", &[("atoms", "1"), ("k-max", "0")])).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0][4], Cell::Int(1));
    }

    #[test]
    fn mixed_kinds_below_atom_number() {
        let t = zones(&cfg("zones", &[("k-min", "3"), ("k-max", "3")])).unwrap();
        let kinds: Vec<String> = t.rows.iter().map(|r| format!("{:?}", r[3])).collect();
        assert!(kinds.iter().any(|k| k.contains("nearby")) && kinds.iter().any(|k| k.contains("remote")));
    }

    #[test]
    fn large_spectrum() {
        let t = spectrum(&cfg("spectrum", &[("M", "2525"), ("r2", "50")])).unwrap();
        assert_eq!(t.rows.len(), 51);
        let exact: Vec<f64> = t.rows.iter().map(|r| if let Cell::Real(x) = r[1] { x } else { panic!() }).collect();
        assert!(exact.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rejects_bad_ranges() {
        assert!(matches!(compare(&cfg("compare", &[("m-min", "5"), ("m-max", "2")])), Err(CliError::Invalid(_))));
        assert!(matches!(spectrum(&cfg("spectrum", &[("r2", "-1")])), Err(CliError::Invalid(_))));
        assert!(matches!(intensity(&cfg("intensity", &[("kt-min", "0")])), Err(CliError::Invalid(_))));
        assert!(matches!(zones(&cfg("zones", &[("atoms", "0")])), Err(CliError::Invalid(_))));
    }
}
