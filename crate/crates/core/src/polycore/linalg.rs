//! Exact linear algebra over the rationals.
//!
//! Row reduction is fraction-free: each row is scaled to a primitive integer
//! vector, eliminated by integer cross-multiplication, and only the final
//! pivot normalization goes back to rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rat::{common_denominator, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rat>>,
}

/// Reduced row-echelon form: nonzero rows only, pivots strictly increasing.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<Vec<Rat>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![vec![Rat::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rat::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Rat>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        RatMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rat>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged columns");
            for (i, v) in col.iter().enumerate() {
                m.data[i][j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn rref(&self) -> Rref {
        let mut rows: Vec<Vec<BigInt>> = self
            .data
            .iter()
            .map(|r| primitive_integer_row(r))
            .filter(|r| r.iter().any(|c| !c.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == rows.len() {
                break;
            }
            let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let (head, tail) = rows.split_at_mut(rank);
            let (pivot_row, rest) = tail.split_first_mut().unwrap();
            for other in head.iter_mut().chain(rest.iter_mut()) {
                if other[col].is_zero() {
                    continue;
                }
                let g = pivot_row[col].gcd(&other[col]);
                let a = &pivot_row[col] / &g;
                let b = &other[col] / &g;
                for (o, pv) in other.iter_mut().zip(pivot_row.iter()).skip(col) {
                    if pv.is_zero() {
                        *o *= &a;
                    } else {
                        *o = &*o * &a - &b * pv;
                    }
                }
                for o in other.iter_mut().take(col) {
                    *o *= &a;
                }
                make_primitive(other);
            }
            pivots.push(col);
            rank += 1;
        }
        rows.truncate(rank);
        let rows = rows
            .into_iter()
            .zip(&pivots)
            .map(|(r, &c)| {
                let p = r[c].clone();
                r.into_iter().map(|v| Rat::new(v, p.clone())).collect()
            })
            .collect();
        Rref {
            rows,
            pivots,
            cols: self.cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Kernel basis read off the RREF: one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        self.rref().kernel()
    }
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Rat::zero(); self.cols];
                v[free] = Rat::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -&row[free];
                }
                v
            })
            .collect()
    }
}

fn primitive_integer_row(row: &[Rat]) -> Vec<BigInt> {
    let den = common_denominator(row.iter());
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|r| (r * Rat::from_integer(den.clone())).to_integer())
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in row.iter_mut() {
            *c /= &g;
        }
    }
}

/// Incrementally built echelon basis of a subspace of `Q^n`.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<(usize, Vec<Rat>)>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (a, b) in v.iter_mut().zip(row).skip(*p) {
                if !b.is_zero() {
                    *a -= &c * b;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` if it is independent of the current basis; reports whether it was.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.dim);
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        let r: Vec<Rat> = r.into_iter().map(|c| c * &inv).collect();
        self.rows.push((p, r));
        true
    }

    pub fn basis(&self) -> impl Iterator<Item = &Vec<Rat>> {
        self.rows.iter().map(|(_, r)| r)
    }

    /// Basis of `{w : <w, s> = 0 for every s in the span}`.
    pub fn annihilator(&self) -> Vec<Vec<Rat>> {
        let rows: Vec<Vec<Rat>> = self.rows.iter().map(|(_, r)| r.clone()).collect();
        if rows.is_empty() {
            return RatMatrix::identity(self.dim).data;
        }
        RatMatrix::from_rows(self.dim, rows).kernel()
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::rat::rat;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        let cols = rows[0].len();
        RatMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
    }

    #[test]
    fn identity_has_full_rank() {
        let i = RatMatrix::identity(3);
        assert_eq!(i.rank(), 3);
        assert!(i.kernel().is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let z = RatMatrix::zeros(2, 4);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel().len(), 4);
    }

    #[test]
    fn proportional_rows() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(a.rank(), 1);
        assert_eq!(a.kernel(), vec![vec![rat(-2), rat(1)]]);
    }

    #[test]
    fn rref_pivots_increase_and_rows_are_reduced() {
        let a = m(&[&[0, 2, 4, 1], &[3, 6, 0, 3], &[3, 8, 4, 5]]);
        let r = a.rref();
        assert_eq!(r.pivots, vec![0, 1, 3]);
        for (row, &p) in r.rows.iter().zip(&r.pivots) {
            assert_eq!(row[p], rat(1));
        }
        for k in a.kernel() {
            assert!(is_zero_vec(&a.mul_vec(&k)));
        }
    }

    #[test]
    fn echelon_insert_and_annihilator() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&[rat(1), rat(1), rat(0)]));
        assert!(!e.insert(&[rat(2), rat(2), rat(0)]));
        assert!(e.insert(&[rat(0), rat(1), rat(1)]));
        let ann = e.annihilator();
        assert_eq!(ann.len(), 1);
        for b in e.basis() {
            assert!(dot(b, &ann[0]).is_zero());
        }
    }
}
