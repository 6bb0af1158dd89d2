//! Lines and points: linear components, rational singular points, arrangements.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::polycore::binary::BinaryForm;
use crate::polycore::linalg::RatMatrix;
use crate::polycore::poly::{restrict_to_line, HomoPoly, LinearForm, Var};
use crate::polycore::rat::{common_denominator, Rat};
use crate::polycore::univariate::UniPoly;

/// A projective point scaled so its first nonzero coordinate is 1.
pub type Point = [Rat; 3];

pub fn normalize_point(p: [Rat; 3]) -> Option<Point> {
    let lead = p.iter().find(|c| !c.is_zero())?.clone();
    Some(p.map(|c| c / &lead))
}

/// Trial division stops here; a larger leftover cofactor is treated as prime.
const TRIAL_LIMIT: u64 = 1_000_000;

/// Positive divisors of `n`, and whether the factorization was complete.
fn divisors(n: &BigInt) -> (Vec<BigInt>, bool) {
    let mut n = n.abs();
    if n.is_zero() {
        return (vec![BigInt::one()], false);
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT && BigInt::from(p) * BigInt::from(p) <= n {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            primes.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let complete = n <= BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT);
    if !n.is_one() {
        primes.push((n, 1));
    }
    let mut out = vec![BigInt::one()];
    for (q, e) in primes {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pow = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pow);
                pow *= &q;
            }
        }
        out = next;
    }
    (out, complete)
}

/// Rational roots of a nonzero univariate polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    pub roots: Vec<Rat>,
    /// False if some coefficient could not be fully factored, so roots may be missing.
    pub complete: bool,
}

pub fn rational_roots(p: &UniPoly) -> RootSet {
    assert!(!p.is_zero(), "roots of the zero polynomial");
    let mut roots = BTreeSet::new();
    let mut coeffs = p.coeffs().to_vec();
    if coeffs.first().is_some_and(Zero::is_zero) {
        roots.insert(Rat::zero());
        let k = coeffs.iter().position(|c| !c.is_zero()).unwrap();
        coeffs.drain(..k);
    }
    let q = UniPoly::new(coeffs);
    if q.degree().unwrap_or(0) == 0 {
        return RootSet {
            roots: roots.into_iter().collect(),
            complete: true,
        };
    }
    let den = common_denominator(q.coeffs().iter());
    let ints: Vec<BigInt> = q
        .coeffs()
        .iter()
        .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
        .collect();
    let (nums, c1) = divisors(&ints[0]);
    let (dens, c2) = divisors(ints.last().unwrap());
    for a in &nums {
        for b in &dens {
            if !a.gcd(b).is_one() {
                continue;
            }
            for s in [a.clone(), -a.clone()] {
                let r = Rat::new(s, b.clone());
                if q.eval(&r).is_zero() {
                    roots.insert(r);
                }
            }
        }
    }
    RootSet {
        roots: roots.into_iter().collect(),
        complete: c1 && c2,
    }
}

/// Rational points of `{g = 0}` on `line`, as points of the plane.
fn points_on_line(g: &BinaryForm, line: &LinearForm) -> (Vec<Point>, bool) {
    let img = line.parametrization();
    let at = |u: &Rat, v: &Rat| -> Option<Point> {
        normalize_point(std::array::from_fn(|i| {
            let c = img[i].coeffs();
            // c[1] multiplies u, c[0] multiplies v
            &c[1] * u + &c[0] * v
        }))
    };
    if g.is_zero() {
        return (Vec::new(), false);
    }
    let mut pts = Vec::new();
    if g.v_valuation() > 0 {
        pts.extend(at(&Rat::one(), &Rat::zero()));
    }
    let h = g.dehomogenize();
    let r = rational_roots(&h);
    for t in &r.roots {
        pts.extend(at(t, &Rat::one()));
    }
    (pts, r.complete)
}

/// Linear components of `f` defined over the rationals.
pub fn linear_factors(f: &HomoPoly) -> (Vec<LinearForm>, bool) {
    let mut found = BTreeSet::new();
    let mut complete = true;
    let mut g = f.clone();
    for v in Var::ALL {
        let l = LinearForm::var(v);
        if restrict_to_line(&g, &l).is_zero() {
            found.insert(l.clone());
            while let Some(q) = g.div_exact(&l.to_poly()) {
                g = q;
            }
        }
    }
    if g.degree() > 0 {
        let slice = |e: [Option<u32>; 3]| -> UniPoly {
            // univariate restriction with one variable free and the others fixed to 0 or 1
            let mut coeffs = vec![Rat::zero(); g.degree() as usize + 1];
            for (m, c) in g.terms() {
                let mut ok = true;
                let mut pow = 0;
                for i in 0..3 {
                    match e[i] {
                        None => pow = m[i],
                        Some(0) => ok &= m[i] == 0,
                        Some(_) => {}
                    }
                }
                if ok {
                    coeffs[pow as usize] += c;
                }
            }
            UniPoly::new(coeffs)
        };
        // x + b y + c z: f(-b, 1, 0) = 0 and f(-c, 0, 1) = 0
        let rb = rational_roots(&slice([None, Some(1), Some(0)]));
        let rc = rational_roots(&slice([None, Some(0), Some(1)]));
        // y + c z: f(0, -c, 1) = 0
        let ry = rational_roots(&slice([Some(0), None, Some(1)]));
        complete &= rb.complete && rc.complete && ry.complete;
        let mut cands = Vec::new();
        for b in &rb.roots {
            for c in &rc.roots {
                cands.extend(LinearForm::new(Rat::one(), -b, -c));
            }
        }
        for c in &ry.roots {
            cands.extend(LinearForm::new(Rat::zero(), Rat::one(), -c));
        }
        for l in cands {
            if restrict_to_line(&g, &l).is_zero() {
                found.insert(l);
            }
        }
    }
    (found.into_iter().collect(), complete)
}

pub fn product_of_lines(lines: &[LinearForm]) -> HomoPoly {
    lines
        .iter()
        .fold(HomoPoly::constant(Rat::one()), |acc, l| &acc * &l.to_poly())
}

pub fn intersection(a: &LinearForm, b: &LinearForm) -> Option<Point> {
    let [a0, a1, a2] = a.coeffs();
    let [b0, b1, b2] = b.coeffs();
    normalize_point([a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0])
}

pub fn line_through(p: &Point, q: &Point) -> Option<LinearForm> {
    LinearForm::new(
        &p[1] * &q[2] - &p[2] * &q[1],
        &p[2] * &q[0] - &p[0] * &q[2],
        &p[0] * &q[1] - &p[1] * &q[0],
    )
}

/// Pairwise intersection points of distinct lines.
pub fn arrangement_singular_points(lines: &[LinearForm]) -> Vec<Point> {
    let mut pts = BTreeSet::new();
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            pts.extend(intersection(a, b));
        }
    }
    pts.into_iter().collect()
}

/// Sylvester-matrix resultant in `y` of two polynomials in `Q[x][y]`,
/// given as `coeffs[j] = coefficient of y^j`, evaluated at `x = t`.
fn resultant_at(a: &[UniPoly], b: &[UniPoly], t: &Rat) -> Rat {
    let da = a.len() - 1;
    let db = b.len() - 1;
    let size = da + db;
    let mut m = RatMatrix::zeros(size, size);
    for i in 0..db {
        for (j, c) in a.iter().rev().enumerate() {
            m.set(i, i + j, c.eval(t));
        }
    }
    for i in 0..da {
        for (j, c) in b.iter().rev().enumerate() {
            m.set(db + i, i + j, c.eval(t));
        }
    }
    determinant(&m)
}

fn determinant(m: &RatMatrix) -> Rat {
    let n = m.rows();
    let mut a: Vec<Vec<Rat>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    det
}

/// Lagrange interpolation through `(t_i, v_i)`.
fn interpolate(ts: &[Rat], vs: &[Rat]) -> UniPoly {
    let mut out = UniPoly::zero();
    for (i, (ti, vi)) in ts.iter().zip(vs).enumerate() {
        if vi.is_zero() {
            continue;
        }
        let mut basis = UniPoly::one();
        let mut den = Rat::one();
        for (j, tj) in ts.iter().enumerate() {
            if i != j {
                basis = &basis * &UniPoly::new(vec![-tj, Rat::one()]);
                den *= ti - tj;
            }
        }
        out = &out + &basis.scale(&(vi / den));
    }
    out
}

/// Dehomogenizes at `z = 1` into `Q[x][y]`, indexed by the power of `y`.
fn affine_in_y(p: &HomoPoly) -> Vec<UniPoly> {
    let d = p.degree() as usize;
    let mut rows = vec![vec![Rat::zero(); d + 1]; d + 1];
    for (e, c) in p.terms() {
        rows[e[1] as usize][e[0] as usize] += c;
    }
    let mut v: Vec<UniPoly> = rows.into_iter().map(UniPoly::new).collect();
    while v.len() > 1 && v.last().is_some_and(UniPoly::is_zero) {
        v.pop();
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoints {
    pub points: Vec<Point>,
    /// False when only rational candidates could be tested, or a root search was incomplete.
    pub complete: bool,
}

/// Rational singular points of a reduced curve.
pub fn singular_points(f: &HomoPoly) -> SingularPoints {
    let grad = f.gradient();
    let is_singular = |p: &Point| grad.iter().all(|g| eval_point(g, p).is_zero());
    let mut pts = BTreeSet::new();
    let mut complete = true;
    // points at infinity: common roots of the partials restricted to z = 0
    let z = LinearForm::var(Var::Z);
    let on_z: Vec<BinaryForm> = grad.iter().map(|g| restrict_to_line(g, &z)).collect();
    let nonzero: Vec<&BinaryForm> = on_z.iter().filter(|b| !b.is_zero()).collect();
    if let Some(first) = nonzero.first() {
        let (cands, c) = points_on_line(first, &z);
        complete &= c;
        pts.extend(cands.into_iter().filter(|p| is_singular(p)));
    } else {
        complete = false;
    }
    // affine chart z = 1: x-coordinates from a resultant of two generic combinations
    let combos: [[i64; 3]; 4] = [[1, 0, 0], [1, 1, 0], [1, 2, 3], [3, 1, 5]];
    let combo = |c: &[i64; 3]| -> HomoPoly {
        let mut acc = HomoPoly::zero(grad[0].degree());
        for (g, &k) in grad.iter().zip(c) {
            acc = &acc + &g.scale(&Rat::from_integer(k.into()));
        }
        acc
    };
    let others: [[i64; 3]; 4] = [[0, 1, 0], [0, 1, 2], [3, 1, 5], [2, 7, 1]];
    let mut solved = false;
    for (ca, cb) in combos.iter().zip(&others) {
        let a = affine_in_y(&combo(ca));
        let b = affine_in_y(&combo(cb));
        let xpoly = if a.len() == 1 && a[0].is_zero() || b.len() == 1 && b[0].is_zero() {
            continue;
        } else if a.len() == 1 {
            a[0].clone()
        } else if b.len() == 1 {
            b[0].clone()
        } else {
            // a resultant of two plane curves of degree m has degree at most m^2
            let m = grad[0].degree() as usize;
            let deg_bound = m * m;
            let ts: Vec<Rat> = (0..=deg_bound as i64).map(|t| Rat::from_integer(t.into())).collect();
            let vs: Vec<Rat> = ts.iter().map(|t| resultant_at(&a, &b, t)).collect();
            interpolate(&ts, &vs)
        };
        if xpoly.is_zero() {
            continue;
        }
        solved = true;
        let xs = rational_roots(&xpoly);
        complete &= xs.complete;
        for x0 in &xs.roots {
            // common roots in y of the partials at x = x0
            let mut g = UniPoly::zero();
            for p in &grad {
                let col: Vec<Rat> = affine_in_y(p).iter().map(|c| c.eval(x0)).collect();
                g = g.gcd(&UniPoly::new(col));
            }
            if g.is_zero() {
                complete = false;
                continue;
            }
            let ys = rational_roots(&g);
            complete &= ys.complete;
            for y0 in ys.roots {
                let p = normalize_point([x0.clone(), y0, Rat::one()]).unwrap();
                if is_singular(&p) {
                    pts.insert(p);
                }
            }
        }
        break;
    }
    complete &= solved;
    SingularPoints {
        points: pts.into_iter().collect(),
        complete,
    }
}

pub fn eval_point(f: &HomoPoly, p: &Point) -> Rat {
    f.terms()
        .map(|(e, c)| {
            let mut t = c.clone();
            for i in 0..3 {
                for _ in 0..e[i] {
                    t *= &p[i];
                }
            }
            t
        })
        .sum()
}

/// Distinct lines through pairs of points, skipping components of `f`.
pub fn lines_through_pairs(points: &[Point], f: &HomoPoly) -> Vec<LinearForm> {
    let mut out = BTreeSet::new();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            if let Some(l) = line_through(p, q) {
                if !restrict_to_line(f, &l).is_zero() {
                    out.insert(l);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// A seeded arrangement of `count` distinct lines with small integer coefficients.
pub fn random_arrangement(count: usize, seed: u64) -> Vec<LinearForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < count {
        let c: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-3..=3));
        if let Some(l) = LinearForm::from_ints(c[0], c[1], c[2]) {
            if seen.insert(l.clone()) {
                out.push(l);
            }
        }
    }
    out
}

/// Integer coefficient triple of a line, for display.
pub fn line_triple(l: &LinearForm) -> [i64; 3] {
    l.integer_coeffs().map(|c| c.to_i64().unwrap_or(i64::MAX))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse::parse_poly;
    use crate::polycore::rat::{rat, ratio};

    #[test]
    fn roots_of_small_polynomials() {
        // (2t - 1)(t + 3) t
        let p = &(&UniPoly::new(vec![rat(-1), rat(2)]) * &UniPoly::new(vec![rat(3), rat(1)])) * &UniPoly::new(vec![rat(0), rat(1)]);
        let r = rational_roots(&p);
        assert_eq!(r.roots, vec![rat(-3), rat(0), ratio(1, 2)]);
        assert!(r.complete);
        assert!(rational_roots(&UniPoly::new(vec![rat(1), rat(0), rat(1)])).roots.is_empty());
    }

    #[test]
    fn linear_factor_scan() {
        let f = parse_poly("x*y*z*(x+y+z)*(x+y)").unwrap();
        let (ls, complete) = linear_factors(&f);
        assert!(complete);
        assert_eq!(ls.len(), 5);
        let g = parse_poly("z*(x^2-y*z)").unwrap();
        assert_eq!(linear_factors(&g).0, vec![LinearForm::var(Var::Z)]);
        let h = parse_poly("(2*x - 3*y + z)*(y - 5*z)*(x^2+y^2+z^2)").unwrap();
        assert_eq!(linear_factors(&h).0.len(), 2);
    }

    #[test]
    fn singular_points_of_curves() {
        let f = parse_poly("x*y*z*(x+y+z)").unwrap();
        assert_eq!(singular_points(&f).points.len(), 6);
        let lines: Vec<LinearForm> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]
            .iter()
            .map(|c| LinearForm::from_ints(c[0], c[1], c[2]).unwrap())
            .collect();
        assert_eq!(arrangement_singular_points(&lines), singular_points(&f).points);
        let conic = parse_poly("x^2+y^2+z^2").unwrap();
        assert!(singular_points(&conic).points.is_empty());
        let tangent = parse_poly("z*(x^2-y*z)").unwrap();
        assert_eq!(singular_points(&tangent).points, vec![[rat(0), rat(1), rat(0)]]);
    }
}
