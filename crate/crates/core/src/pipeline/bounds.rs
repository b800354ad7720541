use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::poset::Poset;

/// Leftover bounds and the threshold constant, as exact integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub p_size: usize,
    pub d: usize,
    pub n0: usize,
    /// `(24|P|²)^d`, the leftover of the grid pipeline with `h = 12|P|²`.
    pub grid_leftover: BigUint,
    /// `24^d (2|P|)^(2d²)`, the leftover when tiling by `[2|P|]^d`.
    pub power_leftover: BigUint,
    /// `c(P) = max{2^n0, 24^d (2|P|)^(2d²)}`.
    pub c_p: BigUint,
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bounds p={} d={} n0={}", self.p_size, self.d, self.n0)?;
        writeln!(f, "grid-leftover {}", self.grid_leftover)?;
        writeln!(f, "power-leftover {}", self.power_leftover)?;
        writeln!(f, "c(P) {}", self.c_p)
    }
}

pub fn theoretical_bounds(p: &Poset, d: usize, n0: usize) -> Result<Bounds> {
    if p.is_empty() || d == 0 {
        return Err(Error::invalid("|P| and d must be positive"));
    }
    let size = BigUint::from(p.len());
    let exp = u32::try_from(d).map_err(|_| Error::invalid("d is too large"))?;
    let grid_leftover = (BigUint::from(24u32) * &size * &size).pow(exp);
    let power_leftover = BigUint::from(24u32).pow(exp) * (BigUint::from(2u32) * &size).pow(2 * exp * exp);
    let two_n0 = BigUint::from(1u32) << n0;
    let c_p = two_n0.max(power_leftover.clone());
    Ok(Bounds {
        p_size: p.len(),
        d,
        n0,
        grid_leftover,
        power_leftover,
        c_p,
    })
}

/// `(2h)^d`, the leftover bound for chain size `h`.
pub fn pipeline_leftover_bound(h: usize, d: usize) -> BigUint {
    BigUint::from(2 * h).pow(d as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formulas() {
        let b = theoretical_bounds(&Poset::diamond(), 2, 1).unwrap();
        assert_eq!(b.grid_leftover, BigUint::from(147_456u32));
        let b = theoretical_bounds(&Poset::singleton(), 1, 1).unwrap();
        assert_eq!(b.grid_leftover, BigUint::from(24u32));
        let b = theoretical_bounds(&Poset::chain(2), 1, 10).unwrap();
        assert_eq!((b.power_leftover.clone(), b.c_p.clone()), (BigUint::from(384u32), BigUint::from(1024u32)));
        assert_eq!(pipeline_leftover_bound(16, 2), BigUint::from(1024u32));
    }
}
