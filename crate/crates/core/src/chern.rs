//! Chern data of the rank-2 bundle `E_C` and of line-supported sheaves.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::logmod::Classification;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ChernData {
    pub rank: u32,
    pub c1: i64,
    pub c2: i64,
}

impl ChernData {
    pub fn new(rank: u32, c1: i64, c2: i64) -> Self {
        ChernData { rank, c1, c2 }
    }
}

/// `c2` of a plus-one generated curve with exponents `(d2, d3)` and level `d`.
pub fn pog_c2(d2: u32, d3: u32, d: u32) -> i64 {
    let (d2, d3, d) = (i64::from(d2), i64::from(d3), i64::from(d));
    d2 * (d3 - 1) + d - d3 + 1
}

pub fn chern_of_classification(cls: &Classification, n: u32) -> Result<ChernData> {
    let c1 = 1 - i64::from(n);
    match cls {
        Classification::Free { exponents: (a, b), .. } => Ok(ChernData::new(2, c1, i64::from(*a) * i64::from(*b))),
        Classification::PlusOneGenerated {
            exponents: (a, b),
            level,
            ..
        } => Ok(ChernData::new(2, c1, pog_c2(*a, *b, *level))),
        Classification::Other { .. } => Err(Error::Unsupported(
            "Chern data is only available for free and plus-one generated curves".into(),
        )),
    }
}

fn require_rank_two(cd: &ChernData) -> Result<()> {
    if cd.rank != 2 {
        return Err(Error::Unsupported(format!("twisting needs rank 2, got rank {}", cd.rank)));
    }
    Ok(())
}

/// Chern data of `E(-1)`.
pub fn twist_minus_one(cd: &ChernData) -> Result<ChernData> {
    require_rank_two(cd)?;
    Ok(ChernData::new(2, cd.c1 - 2, cd.c2 - cd.c1 + 1))
}

/// Chern data of `E(1)`.
pub fn twist_plus_one(cd: &ChernData) -> Result<ChernData> {
    require_rank_two(cd)?;
    Ok(ChernData::new(2, cd.c1 + 2, cd.c2 + cd.c1 + 1))
}

/// `O_L(k)` for a line `L`, from `0 -> O(k-1) -> O(k) -> O_L(k) -> 0`.
pub fn chern_of_line_quotient(k: i64) -> ChernData {
    // c(O(k)) / c(O(k-1)) = (1 + k t) / (1 + (k-1) t) = 1 + t + (1-k) t^2 mod t^3
    ChernData::new(0, 1, 1 - k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TripleIdentity {
    pub holds: bool,
    /// `c2(E_C)` minus the value predicted from `C'`.
    pub residual: i64,
    pub c1_holds: bool,
}

/// Checks `c(E_C) = c(E_{C'}(-1)) c(O_L(1 - |C''| - eps))` in degrees 1 and 2.
pub fn triple_c2_identity(cd_c: &ChernData, cd_cprime: &ChernData, card_cpp: i64, eps: i64) -> Result<TripleIdentity> {
    require_rank_two(cd_c)?;
    let t = twist_minus_one(cd_cprime)?;
    let q = chern_of_line_quotient(1 - card_cpp - eps);
    let predicted_c2 = t.c2 + t.c1 * q.c1 + q.c2;
    let residual = cd_c.c2 - predicted_c2;
    let c1_holds = cd_c.c1 == t.c1 + q.c1;
    Ok(TripleIdentity {
        holds: residual == 0 && c1_holds,
        residual,
        c1_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twists() {
        assert_eq!(twist_minus_one(&ChernData::new(2, -2, 1)).unwrap(), ChernData::new(2, -4, 4));
        assert_eq!(twist_minus_one(&ChernData::new(2, 0, 0)).unwrap(), ChernData::new(2, -2, 1));
        assert_eq!(twist_minus_one(&ChernData::new(2, -3, 3)).unwrap(), ChernData::new(2, -5, 7));
        assert!(twist_minus_one(&ChernData::new(0, 1, 1)).is_err());
    }

    #[test]
    fn line_quotients() {
        assert_eq!(chern_of_line_quotient(0), ChernData::new(0, 1, 1));
        assert_eq!(chern_of_line_quotient(-2), ChernData::new(0, 1, 3));
        assert_eq!(chern_of_line_quotient(1), ChernData::new(0, 1, 0));
    }

    #[test]
    fn triple_identities() {
        let pog = ChernData::new(2, -3, 3);
        let tri = ChernData::new(2, -2, 1);
        let r = triple_c2_identity(&pog, &tri, 3, 0).unwrap();
        assert!(r.holds);
        assert_eq!(r.residual, 0);
        let r = triple_c2_identity(&tri, &ChernData::new(2, -1, 0), 2, 0).unwrap();
        assert!(r.holds);
        let r = triple_c2_identity(&pog, &tri, 3, 1).unwrap();
        assert!(!r.holds);
        assert_eq!(r.residual, -1);
    }

    #[test]
    fn pog_formula() {
        assert_eq!(pog_c2(2, 2, 2), 3);
        assert_eq!(pog_c2(1, 1, 1), 1);
    }
}
