//! Binary forms `g(u, v)`: polynomials on a line in its two coordinates.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Signed, Zero};

use super::rat::Rat;
use super::univariate::UniPoly;

/// Coefficient `i` multiplies `u^i v^(degree - i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    degree: u32,
    coeffs: Vec<Rat>,
}

impl BinaryForm {
    pub fn zero(degree: u32) -> Self {
        BinaryForm {
            degree,
            coeffs: vec![Rat::zero(); degree as usize + 1],
        }
    }

    pub fn constant(c: Rat) -> Self {
        BinaryForm {
            degree: 0,
            coeffs: vec![c],
        }
    }

    pub fn from_coeffs(degree: u32, coeffs: Vec<Rat>) -> Self {
        assert_eq!(coeffs.len(), degree as usize + 1, "binary form length");
        BinaryForm { degree, coeffs }
    }

    /// `u^i v^(degree - i)`.
    pub fn monomial(degree: u32, i: u32, c: Rat) -> Self {
        let mut b = Self::zero(degree);
        b.coeffs[i as usize] = c;
        b
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul_u(&self) -> Self {
        let mut coeffs = vec![Rat::zero()];
        coeffs.extend(self.coeffs.iter().cloned());
        BinaryForm {
            degree: self.degree + 1,
            coeffs,
        }
    }

    pub fn mul_v(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.push(Rat::zero());
        BinaryForm {
            degree: self.degree + 1,
            coeffs,
        }
    }

    pub fn partial_u(&self) -> Self {
        if self.degree == 0 {
            return Self::zero(0);
        }
        let coeffs = (1..=self.degree as usize)
            .map(|i| &self.coeffs[i] * Rat::from_integer((i as i64).into()))
            .collect();
        BinaryForm {
            degree: self.degree - 1,
            coeffs,
        }
    }

    pub fn partial_v(&self) -> Self {
        if self.degree == 0 {
            return Self::zero(0);
        }
        let d = self.degree as usize;
        let coeffs = (0..d)
            .map(|i| &self.coeffs[i] * Rat::from_integer(((d - i) as i64).into()))
            .collect();
        BinaryForm {
            degree: self.degree - 1,
            coeffs,
        }
    }

    /// `g(u, 1)`.
    pub fn dehomogenize(&self) -> UniPoly {
        UniPoly::new(self.coeffs.clone())
    }

    pub fn homogenize(p: &UniPoly, degree: u32) -> Self {
        let mut b = Self::zero(degree);
        for (i, c) in p.coeffs().iter().enumerate() {
            assert!(i <= degree as usize, "degree too small to homogenize");
            b.coeffs[i] = c.clone();
        }
        b
    }

    /// Exact division of binary forms; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &BinaryForm) -> Option<BinaryForm> {
        assert!(!divisor.is_zero(), "division by zero form");
        if divisor.degree > self.degree {
            return None;
        }
        let q_deg = self.degree - divisor.degree;
        if self.is_zero() {
            return Some(Self::zero(q_deg));
        }
        // v^k factors are invisible after dehomogenizing; track them separately.
        let va = self.v_valuation();
        let vb = divisor.v_valuation();
        if vb > va {
            return None;
        }
        let (q, r) = self.dehomogenize().div_rem(&divisor.dehomogenize());
        if !r.is_zero() {
            return None;
        }
        Some(Self::homogenize(&q, q_deg))
    }

    /// Power of `v` dividing the form: `degree - deg_u g(u, 1)`.
    pub fn v_valuation(&self) -> u32 {
        match self.dehomogenize().degree() {
            Some(d) => self.degree - d as u32,
            None => self.degree,
        }
    }

    /// Divisibility in the ring; the zero form is divisible by everything.
    pub fn divides(&self, other: &BinaryForm) -> bool {
        other.is_zero() || other.div_exact(self).is_some()
    }

    /// Squarefree part, up to a constant.
    pub fn squarefree_part(&self) -> BinaryForm {
        assert!(!self.is_zero(), "squarefree part of zero form");
        let h = self.dehomogenize();
        let g = h.gcd(&h.derivative());
        let (sq, _) = h.div_rem(&g);
        let at_infinity = self.v_valuation() > 0;
        let deg = sq.degree().unwrap() as u32 + u32::from(at_infinity);
        Self::homogenize(&sq, deg)
    }

    /// Substitutes `(u, v) -> (a u + b v, c u + d v)`.
    pub fn reparametrize(&self, m: &[[Rat; 2]; 2]) -> Self {
        let u_img = BinaryForm::from_coeffs(1, vec![m[0][1].clone(), m[0][0].clone()]);
        let v_img = BinaryForm::from_coeffs(1, vec![m[1][1].clone(), m[1][0].clone()]);
        let mut u_pows = vec![BinaryForm::constant(Rat::one())];
        let mut v_pows = vec![BinaryForm::constant(Rat::one())];
        for k in 1..=self.degree as usize {
            let nu = &u_pows[k - 1] * &u_img;
            let nv = &v_pows[k - 1] * &v_img;
            u_pows.push(nu);
            v_pows.push(nv);
        }
        let d = self.degree as usize;
        let mut out = BinaryForm::zero(self.degree);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = &out + &(&u_pows[i] * &v_pows[d - i]).scale(c);
        }
        out
    }
}

/// Number of distinct points of `{g = 0}` on the projective line over the
/// complex numbers. The zero form is rejected.
pub fn distinct_root_count(g: &BinaryForm) -> Option<u32> {
    if g.is_zero() {
        return None;
    }
    let h = g.dehomogenize();
    let finite_deg = h.degree().unwrap();
    let repeated = h.gcd(&h.derivative()).degree().unwrap_or(0);
    let at_infinity = finite_deg < g.degree() as usize;
    Some((finite_deg - repeated) as u32 + u32::from(at_infinity))
}

impl Add for &BinaryForm {
    type Output = BinaryForm;
    fn add(self, rhs: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree, rhs.degree, "adding binary forms of different degree");
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &BinaryForm {
    type Output = BinaryForm;
    fn sub(self, rhs: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree, rhs.degree, "subtracting binary forms of different degree");
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &BinaryForm {
    type Output = BinaryForm;
    fn mul(self, rhs: &BinaryForm) -> BinaryForm {
        let mut out = BinaryForm::zero(self.degree + rhs.degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree;
        let mut first = true;
        for i in (0..=d).rev() {
            let c = &self.coeffs[i as usize];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let mut parts = Vec::new();
            match i {
                0 => {}
                1 => parts.push("u".to_string()),
                _ => parts.push(format!("u^{i}")),
            }
            match d - i {
                0 => {}
                1 => parts.push("v".to_string()),
                k => parts.push(format!("v^{k}")),
            }
            let mono = parts.join("*");
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm[{}]({})", self.degree, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::rat::rat;

    fn b(coeffs: &[i64]) -> BinaryForm {
        BinaryForm::from_coeffs(coeffs.len() as u32 - 1, coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn root_counts() {
        // u v (u + v) = u^2 v + u v^2
        assert_eq!(distinct_root_count(&b(&[0, 1, 1, 0])), Some(3));
        // u^2 v
        assert_eq!(distinct_root_count(&b(&[0, 0, 1, 0])), Some(2));
        // u^2 + v^2
        assert_eq!(distinct_root_count(&b(&[1, 0, 1])), Some(2));
        assert_eq!(distinct_root_count(&b(&[0, 0, 0])), None);
        // v^3
        assert_eq!(distinct_root_count(&b(&[1, 0, 0, 0])), Some(1));
    }

    #[test]
    fn exact_division_tracks_v_factors() {
        let f = b(&[0, 1, 1, 0]); // u v (u + v)
        let v = b(&[1, 0]);
        let u = b(&[0, 1]);
        assert_eq!(f.div_exact(&v), Some(b(&[0, 1, 1])));
        assert_eq!(f.div_exact(&u), Some(b(&[1, 1, 0])));
        assert_eq!(b(&[0, 1]).div_exact(&v), None);
        assert_eq!(b(&[0, 0, 1]).div_exact(&b(&[1, 0, 0])), None);
        assert!(u.divides(&BinaryForm::zero(0)));
    }

    #[test]
    fn squarefree_part_of_square() {
        let g = b(&[0, 0, 1, 0]); // u^2 v
        assert_eq!(distinct_root_count(&g.squarefree_part()), Some(2));
        assert_eq!(g.squarefree_part().degree(), 2);
    }
}
