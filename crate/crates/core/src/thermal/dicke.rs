use crate::error::{Error, Result};
use crate::half::HalfInt;

/// Smallest Dicke index for `n_atoms`: 0 for even, ½ for odd.
pub fn epsilon(n_atoms: u32) -> HalfInt {
    HalfInt::from_twice(i64::from(n_atoms % 2))
}

/// Admissible Dicke indices `ε, ε+1, …, N/2`, ascending.
pub fn dicke_indices(n_atoms: u32) -> impl Iterator<Item = HalfInt> {
    (i64::from(n_atoms % 2)..=i64::from(n_atoms)).step_by(2).map(HalfInt::from_twice)
}

fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc·(n−i)/(i+1) stays integral at every step.
        acc = acc
            .checked_mul(u128::from(n - i))
            .ok_or(Error::Overflow("binomial coefficient"))?
            / u128::from(i + 1);
    }
    Ok(acc)
}

/// Number of spin-`r` irreps in the `2^N`-dimensional atomic space:
/// `C(N, N/2 − r) − C(N, N/2 − r − 1)`.
pub fn multiplicity_g(n_atoms: u32, r: HalfInt) -> Result<u128> {
    let n2 = i64::from(n_atoms);
    if n_atoms == 0 {
        return Err(Error::InvalidAtoms(n_atoms));
    }
    if r.is_negative() || r.twice() > n2 || (n2 - r.twice()) % 2 != 0 {
        return Err(Error::InvalidDickeIndex { n_atoms, r });
    }
    let k = ((n2 - r.twice()) / 2) as u64;
    let n = u64::from(n_atoms);
    let lower = if k == 0 { 0 } else { binomial(n, k - 1)? };
    Ok(binomial(n, k)? - lower)
}
