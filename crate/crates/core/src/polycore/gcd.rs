//! Greatest common divisors of homogeneous polynomials in three variables.
//!
//! A homogeneous gcd is recovered from the gcd of the dehomogenized
//! polynomials in `Q[x, y]` (setting `z = 1`) plus the common power of `z`.
//! The bivariate gcd runs the primitive pseudo-remainder sequence over
//! `Q[y][x]`.

use num_traits::Zero;

use super::poly::{HomoPoly, Var};
use super::rat::Rat;
use super::univariate::UniPoly;

/// Polynomial in `x` with coefficients in `Q[y]`; index = power of `x`.
#[derive(Clone, Debug, PartialEq)]
struct BiPoly {
    coeffs: Vec<UniPoly>,
}

impl BiPoly {
    fn new(mut coeffs: Vec<UniPoly>) -> Self {
        while coeffs.last().is_some_and(UniPoly::is_zero) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    fn from_homogeneous(f: &HomoPoly) -> Self {
        let d = f.degree() as usize;
        let mut coeffs = vec![vec![Rat::zero(); d + 1]; d + 1];
        for (e, c) in f.terms() {
            coeffs[e[0] as usize][e[1] as usize] += c;
        }
        Self::new(coeffs.into_iter().map(UniPoly::new).collect())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn deg_x(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Total degree in `x, y`.
    fn total_degree(&self) -> usize {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.degree().map(|d| i + d))
            .max()
            .unwrap_or(0)
    }

    fn content(&self) -> UniPoly {
        self.coeffs
            .iter()
            .fold(UniPoly::zero(), |acc, c| acc.gcd(c))
    }

    fn divide_by(&self, c: &UniPoly) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|a| {
                    let (q, r) = a.div_rem(c);
                    debug_assert!(r.is_zero());
                    q
                })
                .collect(),
        )
    }

    fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.divide_by(&self.content())
    }

    /// `lc(b)^k * a mod b` over `Q[y][x]`.
    fn pseudo_rem(&self, b: &BiPoly) -> BiPoly {
        let db = b.deg_x();
        let lb = b.coeffs[db].clone();
        let mut a = self.clone();
        while !a.is_zero() && a.deg_x() >= db {
            let da = a.deg_x();
            let la = a.coeffs[da].clone();
            let shift = da - db;
            let mut next: Vec<UniPoly> = a.coeffs.iter().map(|c| c * &lb).collect();
            for (i, c) in b.coeffs.iter().enumerate() {
                next[i + shift] = &next[i + shift] - &(c * &la);
            }
            a = BiPoly::new(next);
        }
        a
    }

    fn scale_by(&self, c: &UniPoly) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }
}

fn bivariate_gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let content = a.content().gcd(&b.content());
    let (mut p, mut q) = (a.primitive(), b.primitive());
    if p.deg_x() < q.deg_x() {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        let r = p.pseudo_rem(&q);
        p = q;
        q = r.primitive();
    }
    let g = if p.deg_x() == 0 {
        // a unit in Q[y][x] once the content is removed
        BiPoly::new(vec![UniPoly::one()])
    } else {
        p.primitive()
    };
    g.scale_by(&content)
}

/// Degree of `gcd(polys)` as homogeneous polynomials. Zero polynomials are
/// ignored; returns `None` if every input is zero.
pub fn homogeneous_gcd_degree(polys: &[HomoPoly]) -> Option<u32> {
    let nonzero: Vec<&HomoPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return None;
    }
    let z_power = nonzero.iter().map(|p| p.valuation(Var::Z)).min().unwrap();
    let mut g = BiPoly::from_homogeneous(nonzero[0]);
    for p in &nonzero[1..] {
        g = bivariate_gcd(&g, &BiPoly::from_homogeneous(p));
        if g.total_degree() == 0 {
            break;
        }
    }
    Some(g.total_degree() as u32 + z_power)
}

/// Degree of `gcd(f_x, f_y, f_z)`; zero exactly when `f` is squarefree.
/// (In characteristic zero the Euler identity makes `f` itself redundant.)
pub fn square_factor_degree(f: &HomoPoly) -> u32 {
    if f.degree() == 0 {
        return 0;
    }
    homogeneous_gcd_degree(&f.gradient()).unwrap_or(0)
}

pub fn is_reduced(f: &HomoPoly) -> bool {
    !f.is_zero() && square_factor_degree(f) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse::parse_poly;

    fn p(s: &str) -> HomoPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn gcd_degrees() {
        assert_eq!(homogeneous_gcd_degree(&[p("x*y"), p("x*z")]), Some(1));
        assert_eq!(homogeneous_gcd_degree(&[p("x*y"), p("z^2")]), Some(0));
        assert_eq!(homogeneous_gcd_degree(&[p("z^2*x"), p("z*y^2")]), Some(1));
        assert_eq!(
            homogeneous_gcd_degree(&[p("(x+y)*(x-z)*(y+2*z)"), p("(x-z)*(y+2*z)*y")]),
            Some(2)
        );
    }

    #[test]
    fn reducedness() {
        assert!(is_reduced(&p("x*y*z")));
        assert!(is_reduced(&p("x^2+y^2+z^2")));
        assert!(is_reduced(&p("z*(x^2-y*z)")));
        assert!(!is_reduced(&p("x^2*y")));
        assert_eq!(square_factor_degree(&p("(x+y+z)^2*(x-y)")), 1);
        assert_eq!(square_factor_degree(&p("z^3")), 2);
        assert_eq!(square_factor_degree(&p("(x^2+y^2+z^2)^2")), 2);
    }
}
