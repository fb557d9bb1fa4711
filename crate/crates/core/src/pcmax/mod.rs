//! The unbounded-machine-count reduction: builds an identical-machine
//! scheduling instance from a padded 3SAT' instance so that a perfect
//! schedule (every load exactly the target) exists iff the instance is
//! satisfiable. All processing times are exact integers.

pub mod audit;
pub mod classify;
pub mod partition;
pub mod reduce;
pub mod symbol;

pub use audit::audit_instance;
pub use classify::{classify_job, Classification, SizeDecomposition};
pub use partition::{build_partition, LayerPartition};
pub use reduce::{build_params_for, job_size, reduce_pcmax, PcMaxReduction};
pub use symbol::{DummyClass, HugeKind, JobSymbol, Sign, TaKind, TaPair, Truth};

use num_bigint::BigUint;
use num_traits::One;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PcMaxError {
    #[error("{0}")]
    Input(String),
    #[error("invalid job symbol: {0}")]
    Symbol(String),
    #[error("structural invariant violated: {0}")]
    Invariant(String),
}

/// The accuracy parameter delta, restricted to reciprocals of integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Delta {
    rho: u32,
}

impl Delta {
    pub fn from_rho(rho: u32) -> Result<Self, PcMaxError> {
        if rho < 2 {
            return Err(PcMaxError::Input(format!("1/delta must be an integer >= 2, got {rho}")));
        }
        Ok(Delta { rho })
    }

    /// Parses a fraction literal `1/k`.
    pub fn parse(text: &str) -> Result<Self, PcMaxError> {
        let (num, den) = text
            .split_once('/')
            .ok_or_else(|| PcMaxError::Input(format!("delta must be a fraction literal like 1/2, got `{text}`")))?;
        if num.trim() != "1" {
            return Err(PcMaxError::Input(format!("delta numerator must be 1, got `{text}`")));
        }
        let rho: u32 = den
            .trim()
            .parse()
            .map_err(|_| PcMaxError::Input(format!("bad delta denominator in `{text}`")))?;
        Delta::from_rho(rho)
    }

    /// 1/delta.
    pub fn rho(self) -> u32 {
        self.rho
    }
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}", self.rho)
    }
}

/// All derived quantities of the reduction for a variable count n:
/// t = n^delta, x = 4t, r = 2^(3/delta+9) * n^(1+delta), target K = 10^5 r,
/// machine count (2/delta + 5) n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionParams {
    pub n: u64,
    pub rho: u32,
    /// n^delta (integer by precondition).
    pub t: u64,
    /// x = 4 n^delta.
    pub x: u64,
    pub r: BigUint,
    /// Target load K = 10^5 r.
    pub k_target: BigUint,
    pub machines: u64,
    /// Powers x^0 .. x^rho.
    xpow: Vec<BigUint>,
}

impl ReductionParams {
    /// Plain arithmetic constructor; only requires n^delta to be an integer.
    /// The instance-building path additionally demands 3 | n (see
    /// [`reduce::build_params_for`]).
    pub fn new(n: u64, delta: Delta) -> Result<Self, PcMaxError> {
        let rho = delta.rho();
        let t = integer_root(n, rho)
            .ok_or_else(|| PcMaxError::Input(format!("n^delta is not an integer for n={n}, delta={delta}")))?;
        let x = 4 * t;
        // r = 2^(3 rho + 9) * n * t  (n^(1+1/rho) = n * n^(1/rho)).
        let r = (BigUint::one() << (3 * rho + 9)) * BigUint::from(n) * BigUint::from(t);
        let k_target = BigUint::from(100_000u32) * &r;
        let machines = (2 * rho as u64 + 5) * n;
        let mut xpow = Vec::with_capacity(rho as usize + 1);
        let mut p = BigUint::one();
        for _ in 0..=rho {
            xpow.push(p.clone());
            p *= BigUint::from(x);
        }
        Ok(ReductionParams { n, rho, t, x, r, k_target, machines, xpow })
    }

    pub fn x_pow(&self, k: u32) -> &BigUint {
        &self.xpow[k as usize]
    }

    /// 2^(rho+7), the shift applied to every x-structured term.
    pub fn p_shift(&self) -> BigUint {
        BigUint::one() << (self.rho + 7)
    }

    /// Clause positions R = {1, 4, ..., n-2}.
    pub fn clause_positions(&self) -> impl Iterator<Item = u64> {
        (1..=self.n.saturating_sub(2)).step_by(3)
    }
}

/// Exact integer rho-th root, if n is a perfect rho-th power.
fn integer_root(n: u64, rho: u32) -> Option<u64> {
    if n == 0 {
        return None;
    }
    let mut t = (n as f64).powf(1.0 / rho as f64).round() as u64;
    t = t.max(1);
    for cand in t.saturating_sub(2)..=t + 2 {
        if cand >= 1 && cand.checked_pow(rho) == Some(n) {
            return Some(cand);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn params_n9_half() {
        let p = ReductionParams::new(9, Delta::from_rho(2).unwrap()).unwrap();
        assert_eq!(p.t, 3);
        assert_eq!(p.x, 12);
        assert_eq!(p.r.to_u64().unwrap(), 884_736);
        assert_eq!(p.k_target.to_u64().unwrap(), 88_473_600_000);
        assert_eq!(p.machines, 81);
        assert_eq!(&p.k_target / &p.r, BigUint::from(100_000u32));
    }

    #[test]
    fn params_n64_third() {
        let p = ReductionParams::new(64, Delta::from_rho(3).unwrap()).unwrap();
        assert_eq!(p.x, 16);
        assert_eq!(p.machines, 704);
    }

    #[test]
    fn params_reject_non_power() {
        assert!(ReductionParams::new(10, Delta::from_rho(2).unwrap()).is_err());
        assert!(Delta::from_rho(1).is_err());
        assert!(Delta::parse("2/3").is_err());
        assert_eq!(Delta::parse("1/4").unwrap().rho(), 4);
    }

    #[test]
    fn clause_positions_step() {
        let p = ReductionParams::new(9, Delta::from_rho(2).unwrap()).unwrap();
        assert_eq!(p.clause_positions().collect::<Vec<_>>(), vec![1, 4, 7]);
    }
}
