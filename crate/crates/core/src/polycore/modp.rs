//! Linear algebra modulo the Mersenne prime `2^61 - 1`.
//!
//! Ranks mod `p` never exceed ranks over `Q`, which is what the certified
//! dimension counts rely on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::rat::Rat;

pub const P: u64 = (1 << 61) - 1;

#[inline]
fn reduce(x: u128) -> u64 {
    let lo = (x as u64) & P;
    let hi = (x >> 61) as u64;
    let s = lo + (hi & P) + (hi >> 61);
    let s = (s & P) + (s >> 61);
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    reduce(a as u128 * b as u128)
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64) -> u64 {
    assert!(a != 0, "inverse of zero mod p");
    pow(a, P - 2)
}

fn bigint_mod(n: &BigInt) -> u64 {
    let r = n.mod_floor(&BigInt::from(P));
    r.to_u64().unwrap()
}

/// Image of a rational in `F_p`; `None` if `p` divides the denominator.
pub fn rat_mod(r: &Rat) -> Option<u64> {
    if r.is_zero() {
        return Some(0);
    }
    let num = bigint_mod(r.numer());
    let den = bigint_mod(r.denom());
    if den == 0 {
        return None;
    }
    Some(mul(num, inv(den)))
}

/// Dense matrix over `F_p`.
#[derive(Clone, Debug)]
pub struct ModMatrix {
    cols: usize,
    rows: Vec<Vec<u64>>,
}

impl ModMatrix {
    pub fn new(cols: usize) -> Self {
        ModMatrix { cols, rows: Vec::new() }
    }

    pub fn from_rat_rows<'a>(cols: usize, rows: impl IntoIterator<Item = &'a [Rat]>) -> Option<Self> {
        let mut m = Self::new(cols);
        for r in rows {
            m.push_rat_row(r)?;
        }
        Some(m)
    }

    pub fn push_row(&mut self, row: Vec<u64>) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn push_rat_row(&mut self, row: &[Rat]) -> Option<()> {
        let r = row.iter().map(rat_mod).collect::<Option<Vec<_>>>()?;
        self.push_row(r);
        Some(())
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == rows.len() {
                break;
            }
            let Some(p) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pinv = inv(rows[rank][col]);
            for v in rows[rank][col..].iter_mut() {
                *v = mul(*v, pinv);
            }
            let (head, tail) = rows.split_at_mut(rank + 1);
            let pivot = &head[rank];
            for other in tail.iter_mut() {
                let c = other[col];
                if c == 0 {
                    continue;
                }
                for (o, pv) in other[col..].iter_mut().zip(&pivot[col..]) {
                    if *pv != 0 {
                        *o = sub(*o, mul(c, *pv));
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::rat::{rat, ratio};

    #[test]
    fn field_arithmetic() {
        assert_eq!(mul(P - 1, P - 1), 1);
        assert_eq!(mul(inv(12345), 12345), 1);
        assert_eq!(add(P - 1, 1), 0);
        assert_eq!(sub(0, 1), P - 1);
    }

    #[test]
    fn rationals_map_consistently() {
        let half = rat_mod(&ratio(1, 2)).unwrap();
        assert_eq!(mul(half, 2), 1);
        assert_eq!(rat_mod(&rat(-1)).unwrap(), P - 1);
    }

    #[test]
    fn rank_matches_small_examples() {
        let rows: Vec<Vec<Rat>> = vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
            vec![rat(0), rat(1), ratio(1, 3)],
        ];
        let m = ModMatrix::from_rat_rows(3, rows.iter().map(|r| r.as_slice())).unwrap();
        assert_eq!(m.rank(), 2);
    }
}
