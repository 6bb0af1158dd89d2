use std::fmt;

use crate::polycore::poly::{monomial_count, HomoPoly, Var};
use crate::polycore::rat::Rat;

/// The derivation `a d/dx + b d/dy + c d/dz` with `a, b, c` of a common degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    degree: u32,
    coeffs: [HomoPoly; 3],
}

impl Derivation {
    pub fn new(coeffs: [HomoPoly; 3]) -> Self {
        let degree = coeffs[0].degree();
        assert!(
            coeffs.iter().all(|c| c.degree() == degree),
            "derivation coefficients of mixed degree"
        );
        Derivation { degree, coeffs }
    }

    pub fn zero(degree: u32) -> Self {
        Self::new(std::array::from_fn(|_| HomoPoly::zero(degree)))
    }

    /// `x d/dx + y d/dy + z d/dz`.
    pub fn euler() -> Self {
        Self::new(Var::ALL.map(HomoPoly::var))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[HomoPoly; 3] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(HomoPoly::is_zero)
    }

    /// `theta(g) = a g_x + b g_y + c g_z`.
    pub fn apply(&self, g: &HomoPoly) -> HomoPoly {
        if g.degree() == 0 {
            return HomoPoly::zero(self.degree);
        }
        let grad = g.gradient();
        let mut out = HomoPoly::zero(self.degree + g.degree() - 1);
        for (a, p) in self.coeffs.iter().zip(&grad) {
            if !a.is_zero() && !p.is_zero() {
                out = &out + &(a * p);
            }
        }
        out
    }

    pub fn mul_poly(&self, h: &HomoPoly) -> Self {
        Derivation::new(std::array::from_fn(|i| &self.coeffs[i] * h))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Derivation::new(std::array::from_fn(|i| self.coeffs[i].scale(c)))
    }

    /// Concatenated dense coefficients of `a, b, c`.
    pub fn to_vec(&self) -> Vec<Rat> {
        self.coeffs.iter().flat_map(|c| c.coeffs().iter().cloned()).collect()
    }

    pub fn from_vec(degree: u32, v: &[Rat]) -> Self {
        let m = monomial_count(i64::from(degree));
        assert_eq!(v.len(), 3 * m, "derivation vector length");
        Self::new(std::array::from_fn(|i| HomoPoly::from_dense(degree, v[i * m..(i + 1) * m].to_vec())))
    }
}

impl std::ops::Add for &Derivation {
    type Output = Derivation;
    fn add(self, rhs: &Derivation) -> Derivation {
        Derivation::new(std::array::from_fn(|i| &self.coeffs[i] + &rhs.coeffs[i]))
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, v) in self.coeffs.iter().zip(Var::ALL) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let is_one = c.degree() == 0 && c.coeffs()[0] == Rat::from_integer(1.into());
            if is_one {
                write!(f, "d{}", v.name())?;
            } else {
                write!(f, "({c})*d{}", v.name())?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation[{}]({})", self.degree, self)
    }
}

/// `det` of the 3x3 matrix whose rows are the coefficient triples.
pub fn coefficient_determinant(rows: [&Derivation; 3]) -> HomoPoly {
    let m = |i: usize, j: usize| &rows[i].coeffs[j];
    let term = |a: &HomoPoly, b: &HomoPoly, c: &HomoPoly| &(a * b) * c;
    let plus = &(&term(m(0, 0), m(1, 1), m(2, 2)) + &term(m(0, 1), m(1, 2), m(2, 0))) + &term(m(0, 2), m(1, 0), m(2, 1));
    let minus = &(&term(m(0, 2), m(1, 1), m(2, 0)) + &term(m(0, 0), m(1, 2), m(2, 1))) + &term(m(0, 1), m(1, 0), m(2, 2));
    &plus - &minus
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse::parse_poly;

    fn p(s: &str) -> HomoPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn euler_identity() {
        let f = p("x^3 - 2*x*y*z + y^2*z");
        assert_eq!(Derivation::euler().apply(&f), f.scale(&Rat::from_integer(3.into())));
    }

    #[test]
    fn triangle_determinant() {
        let t2 = Derivation::new([p("x"), p("-y"), HomoPoly::zero(1)]);
        let t3 = Derivation::new([HomoPoly::zero(1), p("y"), p("-z")]);
        let det = coefficient_determinant([&Derivation::euler(), &t2, &t3]);
        assert_eq!(det, p("3*x*y*z"));
    }

    #[test]
    fn vector_round_trip() {
        let t = Derivation::new([p("x^2"), p("y*z"), p("x*z - y^2")]);
        assert_eq!(Derivation::from_vec(2, &t.to_vec()), t);
    }
}
