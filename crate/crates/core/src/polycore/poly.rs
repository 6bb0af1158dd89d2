//! Homogeneous polynomials in `x, y, z` over the rationals.
//!
//! A polynomial of degree `d` is stored densely: one coefficient per monomial
//! `x^i y^j z^k` with `i + j + k = d`, in the order given by
//! [`monomial_index`] (lexicographic with `x > y > z`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::binary::BinaryForm;
use super::rat::Rat;

/// Exponent triple `(i, j, k)` of `x^i y^j z^k`.
pub type Exp = [u32; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }

    pub fn name(self) -> char {
        ['x', 'y', 'z'][self.index()]
    }
}

/// `dim S_d`, the number of monomials of degree `d` in three variables.
pub fn monomial_count(d: i64) -> usize {
    if d < 0 {
        0
    } else {
        let d = d as usize;
        (d + 1) * (d + 2) / 2
    }
}

#[inline]
pub fn monomial_index(e: Exp) -> usize {
    let d = (e[0] + e[1] + e[2]) as usize;
    let t = d - e[0] as usize;
    t * (t + 1) / 2 + (t - e[1] as usize)
}

/// All exponent triples of degree `d`, in index order.
pub fn monomials(d: u32) -> Vec<Exp> {
    let mut out = Vec::with_capacity(monomial_count(d as i64));
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomoPoly {
    degree: u32,
    coeffs: Vec<Rat>,
}

impl HomoPoly {
    pub fn zero(degree: u32) -> Self {
        HomoPoly {
            degree,
            coeffs: vec![Rat::zero(); monomial_count(degree as i64)],
        }
    }

    pub fn monomial(e: Exp, c: Rat) -> Self {
        let mut p = Self::zero(e[0] + e[1] + e[2]);
        p.coeffs[monomial_index(e)] = c;
        p
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Self::monomial(e, Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    /// Builds a polynomial from terms; every exponent must have total `degree`.
    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Exp, Rat)>) -> Self {
        let mut p = Self::zero(degree);
        for (e, c) in terms {
            assert_eq!(e[0] + e[1] + e[2], degree, "term of wrong degree");
            p.coeffs[monomial_index(e)] += c;
        }
        p
    }

    /// `coeffs` in monomial index order.
    pub fn from_dense(degree: u32, coeffs: Vec<Rat>) -> Self {
        assert_eq!(coeffs.len(), monomial_count(degree as i64));
        HomoPoly { degree, coeffs }
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

    pub fn coeff(&self, e: Exp) -> &Rat {
        &self.coeffs[monomial_index(e)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero terms in index order.
    pub fn terms(&self) -> impl Iterator<Item = (Exp, &Rat)> + '_ {
        monomials(self.degree)
            .into_iter()
            .zip(self.coeffs.iter())
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        HomoPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Formal partial derivative. The result has degree `deg - 1` and may be zero.
    pub fn partial(&self, v: Var) -> Self {
        assert!(self.degree >= 1, "partial derivative of a constant");
        let mut out = Self::zero(self.degree - 1);
        let vi = v.index();
        for (e, c) in self.terms() {
            if e[vi] == 0 {
                continue;
            }
            let mut f = e;
            f[vi] -= 1;
            out.coeffs[monomial_index(f)] += c * Rat::from_integer(e[vi].into());
        }
        out
    }

    pub fn gradient(&self) -> [HomoPoly; 3] {
        [self.partial(Var::X), self.partial(Var::Y), self.partial(Var::Z)]
    }

    /// Multiplies by the monomial `x^i y^j z^k`.
    pub fn shift(&self, m: Exp) -> Self {
        let deg = self.degree + m[0] + m[1] + m[2];
        let mut out = Self::zero(deg);
        for (e, c) in self.terms() {
            out.coeffs[monomial_index([e[0] + m[0], e[1] + m[1], e[2] + m[2]])] = c.clone();
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(Rat::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Largest power of `v` dividing the polynomial (0 for the zero polynomial).
    pub fn valuation(&self, v: Var) -> u32 {
        self.terms().map(|(e, _)| e[v.index()]).min().unwrap_or(0)
    }

    /// Scales so the first nonzero coefficient (in index order) is 1.
    pub fn monic(&self) -> Self {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(lead) => self.scale(&lead.recip()),
            None => self.clone(),
        }
    }

    /// Substitutes binary linear forms for `x, y, z`.
    pub fn substitute(&self, images: &[BinaryForm; 3]) -> BinaryForm {
        let d = self.degree;
        let powers: Vec<Vec<BinaryForm>> = images
            .iter()
            .map(|l| {
                let mut ps = vec![BinaryForm::constant(Rat::one())];
                for k in 1..=d as usize {
                    let next = &ps[k - 1] * l;
                    ps.push(next);
                }
                ps
            })
            .collect();
        assert!(
            images.iter().all(|l| l.degree() == 1),
            "substitution expects linear binary forms"
        );
        let mut out = BinaryForm::zero(d);
        for (e, c) in self.terms() {
            let t = &(&powers[0][e[0] as usize] * &powers[1][e[1] as usize]) * &powers[2][e[2] as usize];
            out = &out + &t.scale(c);
        }
        out
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &HomoPoly) -> Option<HomoPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return (self.degree >= divisor.degree)
                .then(|| HomoPoly::zero(self.degree - divisor.degree));
        }
        if divisor.degree > self.degree {
            return None;
        }
        // Lex long division: the leading term is the first nonzero in index order.
        let (lead_e, lead_c) = divisor.terms().next().map(|(e, c)| (e, c.clone()))?;
        let mut rem = self.clone();
        let mut quot = HomoPoly::zero(self.degree - divisor.degree);
        loop {
            let Some((e, c)) = rem.terms().next().map(|(e, c)| (e, c.clone())) else {
                break;
            };
            if e[0] < lead_e[0] || e[1] < lead_e[1] || e[2] < lead_e[2] {
                return None;
            }
            let m = [e[0] - lead_e[0], e[1] - lead_e[1], e[2] - lead_e[2]];
            let q = c / &lead_c;
            quot.coeffs[monomial_index(m)] += &q;
            rem = &rem - &divisor.shift(m).scale(&q);
        }
        Some(quot)
    }

    /// Divisibility in the ring; the zero form is divisible by everything.
    pub fn divides(&self, other: &HomoPoly) -> bool {
        other.is_zero() || other.div_exact(self).is_some()
    }
}

fn add_assign_coeffs(a: &mut [Rat], b: &[Rat], sign: bool) {
    for (x, y) in a.iter_mut().zip(b) {
        if sign {
            *x += y;
        } else {
            *x -= y;
        }
    }
}

impl Add for &HomoPoly {
    type Output = HomoPoly;
    fn add(self, rhs: &HomoPoly) -> HomoPoly {
        assert_eq!(self.degree, rhs.degree, "adding polynomials of different degree");
        let mut out = self.clone();
        add_assign_coeffs(&mut out.coeffs, &rhs.coeffs, true);
        out
    }
}

impl Sub for &HomoPoly {
    type Output = HomoPoly;
    fn sub(self, rhs: &HomoPoly) -> HomoPoly {
        assert_eq!(self.degree, rhs.degree, "subtracting polynomials of different degree");
        let mut out = self.clone();
        add_assign_coeffs(&mut out.coeffs, &rhs.coeffs, false);
        out
    }
}

impl Neg for &HomoPoly {
    type Output = HomoPoly;
    fn neg(self) -> HomoPoly {
        HomoPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &HomoPoly {
    type Output = HomoPoly;
    fn mul(self, rhs: &HomoPoly) -> HomoPoly {
        let mut out = HomoPoly::zero(self.degree + rhs.degree);
        let rterms: Vec<(Exp, &Rat)> = rhs.terms().collect();
        for (e, c) in self.terms() {
            for (f, d) in &rterms {
                out.coeffs[monomial_index([e[0] + f[0], e[1] + f[1], e[2] + f[2]])] += c * *d;
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for HomoPoly {
            type Output = HomoPoly;
            fn $m(self, rhs: HomoPoly) -> HomoPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for HomoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = monomial_string(e);
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

impl fmt::Debug for HomoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomoPoly[{}]({})", self.degree, self)
    }
}

fn monomial_string(e: Exp) -> String {
    let mut parts = Vec::new();
    for (v, &k) in Var::ALL.iter().zip(e.iter()) {
        match k {
            0 => {}
            1 => parts.push(v.name().to_string()),
            _ => parts.push(format!("{}^{}", v.name(), k)),
        }
    }
    parts.join("*")
}

/// The linear form `a x + b y + c z`, scaled so its first nonzero coefficient is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: [Rat; 3],
}

impl LinearForm {
    /// `None` for the zero triple.
    pub fn new(a: Rat, b: Rat, c: Rat) -> Option<Self> {
        let coeffs = [a, b, c];
        let lead = coeffs.iter().find(|c| !c.is_zero())?.clone();
        Some(LinearForm {
            coeffs: coeffs.map(|c| c / &lead),
        })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Option<Self> {
        use super::rat::rat;
        Self::new(rat(a), rat(b), rat(c))
    }

    pub fn var(v: Var) -> Self {
        let mut c = [Rat::zero(), Rat::zero(), Rat::zero()];
        c[v.index()] = Rat::one();
        LinearForm { coeffs: c }
    }

    pub fn from_poly(p: &HomoPoly) -> Option<Self> {
        if p.degree() != 1 {
            return None;
        }
        Self::new(p.coeffs[0].clone(), p.coeffs[1].clone(), p.coeffs[2].clone())
    }

    pub fn coeffs(&self) -> &[Rat; 3] {
        &self.coeffs
    }

    /// The variable solved for when parametrizing the line.
    pub fn leading_var(&self) -> Var {
        let i = self.coeffs.iter().position(|c| !c.is_zero()).expect("nonzero form");
        Var::ALL[i]
    }

    /// The two line coordinates `(u, v)`: the variables other than the leading one, in order.
    pub fn line_coordinates(&self) -> [Var; 2] {
        let lead = self.leading_var();
        let mut it = Var::ALL.into_iter().filter(|&v| v != lead);
        [it.next().unwrap(), it.next().unwrap()]
    }

    pub fn to_poly(&self) -> HomoPoly {
        HomoPoly::from_dense(1, self.coeffs.to_vec())
    }

    /// Images of `x, y, z` under the parametrization of the line: the leading
    /// variable is solved for and the remaining two become `(u, v)`.
    pub fn parametrization(&self) -> [BinaryForm; 3] {
        let lead = self.leading_var().index();
        let [u, v] = self.line_coordinates().map(Var::index);
        let mut images: [BinaryForm; 3] = std::array::from_fn(|_| BinaryForm::zero(1));
        images[u] = BinaryForm::from_coeffs(1, vec![Rat::zero(), Rat::one()]);
        images[v] = BinaryForm::from_coeffs(1, vec![Rat::one(), Rat::zero()]);
        // lead = -(c_u u + c_v v) since the leading coefficient is 1
        images[lead] = BinaryForm::from_coeffs(1, vec![-&self.coeffs[v], -&self.coeffs[u]]);
        images
    }

    pub fn eval(&self, p: &[Rat; 3]) -> Rat {
        self.coeffs.iter().zip(p).map(|(a, b)| a * b).sum()
    }

    /// `ax+by+cz` with integer coefficients made coprime (sign of the canonical form kept).
    pub fn integer_coeffs(&self) -> [num_bigint::BigInt; 3] {
        use num_integer::Integer;
        let den = super::rat::common_denominator(self.coeffs.iter());
        let ints: Vec<num_bigint::BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(num_bigint::BigInt::zero(), |a, b| a.gcd(b));
        [&ints[0] / &g, &ints[1] / &g, &ints[2] / &g]
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearForm({self})")
    }
}

/// Restriction `f|_L` as a binary form in the line coordinates of `L`.
/// The zero form signals that `L` divides `f`.
pub fn restrict_to_line(f: &HomoPoly, line: &LinearForm) -> BinaryForm {
    f.substitute(&line.parametrization())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::rat::rat;

    fn x() -> HomoPoly {
        HomoPoly::var(Var::X)
    }
    fn y() -> HomoPoly {
        HomoPoly::var(Var::Y)
    }
    fn z() -> HomoPoly {
        HomoPoly::var(Var::Z)
    }

    #[test]
    fn monomial_indexing_is_a_bijection() {
        for d in 0..8 {
            let ms = monomials(d);
            assert_eq!(ms.len(), monomial_count(d as i64));
            for (i, e) in ms.iter().enumerate() {
                assert_eq!(monomial_index(*e), i);
            }
        }
    }

    #[test]
    fn partials_of_small_monomials() {
        let xyz = &(&x() * &y()) * &z();
        assert_eq!(xyz.partial(Var::X), &y() * &z());
        let xy = &x() * &y();
        let dz = xy.partial(Var::Z);
        assert!(dz.is_zero());
        assert_eq!(dz.degree(), 1);
        let x2yz = &x() * &xyz;
        assert_eq!(x2yz.partial(Var::X), xyz.scale(&rat(2)));
    }

    #[test]
    fn restriction_examples() {
        let xyz = &(&x() * &y()) * &z();
        let r = restrict_to_line(&xyz, &LinearForm::var(Var::Z));
        assert!(r.is_zero());
        assert_eq!(r.degree(), 3);

        let pencil = &(&x() * &y()) * &(&x() + &y());
        let r = restrict_to_line(&pencil, &LinearForm::var(Var::Z));
        // u v (u + v) = u^2 v + u v^2
        assert_eq!(r, BinaryForm::from_coeffs(3, vec![rat(0), rat(1), rat(1), rat(0)]));

        let l = LinearForm::from_ints(1, -1, 0).unwrap();
        let r = restrict_to_line(&xyz, &l);
        // x = y = u, z = v: u^2 v
        assert_eq!(r, BinaryForm::from_coeffs(3, vec![rat(0), rat(0), rat(1), rat(0)]));
    }

    #[test]
    fn exact_division() {
        let f = &(&x() * &y()) * &(&x() + &z());
        let l = &x() + &z();
        assert_eq!(f.div_exact(&l), Some(&x() * &y()));
        assert_eq!(f.div_exact(&(&y() + &z())), None);
    }

    #[test]
    fn linear_form_is_canonical() {
        let l = LinearForm::from_ints(0, -2, 4).unwrap();
        assert_eq!(l.coeffs(), &[rat(0), rat(1), rat(-2)]);
        assert_eq!(l.leading_var(), Var::Y);
        assert!(LinearForm::from_ints(0, 0, 0).is_none());
    }

    #[test]
    fn display_round_trips_visually() {
        let f = &(&x() * &x()).scale(&rat(3)) - &(&y() * &z());
        assert_eq!(f.to_string(), "3*x^2 - y*z");
    }
}
