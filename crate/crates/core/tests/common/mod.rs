//! Shared corpus and an independent dense solver for `dim AR(f)_k`.

#![allow(dead_code)]

use std::collections::BTreeMap;

use freecurves::polycore::{parse_poly, HomoPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Named curves with their expected labels.
pub const CORPUS: &[(&str, &str, &str)] = &[
    ("triangle", "x*y*z", "Free(1,1)"),
    ("two lines", "x*y", "Free(0,1)"),
    ("pencil", "x*y*(x+y)", "Free(0,2)"),
    ("near pencil", "x*y*z*(x+y)", "Free(1,2)"),
    ("four generic lines", "x*y*z*(x+y+z)", "POG(2,2;2)"),
    ("five lines", "x*y*z*(x+y+z)*(x+y)", "Free(2,2)"),
    ("smooth conic", "x^2+y^2+z^2", "POG(1,1;1)"),
    ("conic and tangent", "z*(x^2-y*z)", "Free(1,1)"),
];

/// Free line arrangements of the corpus.
pub const FREE_ARRANGEMENTS: &[&str] = &["x*y*z", "x*y", "x*y*(x+y)", "x*y*z*(x+y)", "x*y*z*(x+y+z)*(x+y)"];

/// Triples as `(C, L)` with `L` a component of `C`.
pub const TRIPLES: &[(&str, &str)] = &[
    ("x*y*z", "z"),
    ("x*y", "y"),
    ("x*y*z*(x+y)", "z"),
    ("x*y*z*(x+y)", "x+y"),
    ("x*y*z*(x+y+z)", "x"),
    ("x*y*z*(x+y+z)", "x+y+z"),
    ("x*y*z*(x+y+z)*(x+y)", "x+y"),
    ("x*y*z*(x+y+z)*(x+y)", "z"),
    ("z*(x^2-y*z)", "z"),
    ("(x+2*y+5*z)*x*y*z", "x+2*y+5*z"),
    ("z*(x^2+y^2+z^2)", "z"),
];

pub fn p(s: &str) -> HomoPoly {
    parse_poly(s).unwrap()
}

type Mono = [u32; 3];

fn monos(d: i64) -> Vec<Mono> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let d = d as u32;
    for i in 0..=d {
        for j in 0..=d - i {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

fn q(c: &freecurves::polycore::Rat) -> BigRational {
    BigRational::new(c.numer().clone(), c.denom().clone())
}

fn partial(f: &BTreeMap<Mono, BigRational>, v: usize) -> BTreeMap<Mono, BigRational> {
    let mut out = BTreeMap::new();
    for (e, c) in f {
        if e[v] > 0 {
            let mut e2 = *e;
            e2[v] -= 1;
            out.insert(e2, c * BigRational::from_integer(BigInt::from(e[v])));
        }
    }
    out
}

fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = BigRational::one() / &rows[r][c];
        let pivot: Vec<BigRational> = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

/// `dim {(a, b, c) in S_k^3 : a f_x + b f_y + c f_z = 0}` by one dense solve.
pub fn dense_syzygy_dim(f: &HomoPoly, k: u32) -> usize {
    let n = i64::from(f.degree());
    let poly: BTreeMap<Mono, BigRational> = f.terms().map(|(e, c)| (e, q(c))).collect();
    let grads: Vec<_> = (0..3).map(|v| partial(&poly, v)).collect();
    let unknowns = monos(k.into());
    let targets = monos(i64::from(k) + n - 1);
    let index: BTreeMap<Mono, usize> = targets.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    // one row per target monomial, one column per unknown coefficient
    let cols = 3 * unknowns.len();
    let mut rows = vec![vec![BigRational::zero(); cols]; targets.len()];
    for (g, grad) in grads.iter().enumerate() {
        for (u, m) in unknowns.iter().enumerate() {
            for (e, c) in grad {
                let t = [m[0] + e[0], m[1] + e[1], m[2] + e[2]];
                rows[index[&t]][g * unknowns.len() + u] += c;
            }
        }
    }
    cols - rank(rows)
}

/// `dim S_d`.
pub fn h(d: i64) -> usize {
    if d < 0 {
        0
    } else {
        ((d + 1) * (d + 2) / 2) as usize
    }
}
