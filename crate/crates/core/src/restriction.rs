//! Restriction of derivations to a line and splitting types of `E_C`.
//!
//! In the coordinates `(u, v, w)` adapted to a line `L` (the parametrizing
//! variables plus `w = alpha_L`), a derivation `theta` has components
//! `(theta(u), theta(v), theta(alpha_L))`. Restricting them to `L` embeds
//! `E_C|_L` into `O_L^3`, so `pi_L(D_0(C)_k)` is computed inside
//! `(S/alpha_L)_k^3`, and the sections of `E_C|_L(k)` are recovered from
//! the top degree down: a form `s` is a section iff `u s` and `v s` are.

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chern::chern_of_classification;
use crate::error::{ensure, Error, Result};
use crate::logmod::{Classification, Derivation};
use crate::polycore::binary::BinaryForm;
use crate::polycore::linalg::{Echelon, RatMatrix};
use crate::polycore::poly::{restrict_to_line, HomoPoly, LinearForm};
use crate::polycore::rat::Rat;

/// A derivation on `L` in its line coordinates: `du d/du + dv d/dv`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedDerivation {
    pub degree: u32,
    pub du: BinaryForm,
    pub dv: BinaryForm,
}

impl RestrictedDerivation {
    pub fn is_zero(&self) -> bool {
        self.du.is_zero() && self.dv.is_zero()
    }

    /// `du g_u + dv g_v`.
    pub fn apply(&self, g: &BinaryForm) -> BinaryForm {
        if g.degree() == 0 {
            return BinaryForm::zero(self.degree);
        }
        &(&self.du * &g.partial_u()) + &(&self.dv * &g.partial_v())
    }
}

/// `(theta(u), theta(v), theta(alpha_L))` restricted to `L`.
pub fn restrict_derivation(theta: &Derivation, line: &LinearForm) -> [BinaryForm; 3] {
    let [u, v] = line.line_coordinates().map(|c| c.index());
    let c = theta.coeffs();
    let normal = theta.apply(&line.to_poly());
    [
        restrict_to_line(&c[u], line),
        restrict_to_line(&c[v], line),
        restrict_to_line(&normal, line),
    ]
}

/// The restriction map: reduce modulo `alpha_L` and drop the normal component.
pub fn rho(theta: &Derivation, line: &LinearForm) -> RestrictedDerivation {
    let [du, dv, _] = restrict_derivation(theta, line);
    RestrictedDerivation {
        degree: theta.degree(),
        du,
        dv,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SplittingType {
    pub a: i64,
    pub b: i64,
}

impl SplittingType {
    /// Normalizes so that `a <= b`.
    pub fn new(a: i64, b: i64) -> Self {
        SplittingType { a: a.min(b), b: a.max(b) }
    }
}

impl std::fmt::Display for SplittingType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

fn triple_vec(forms: &[BinaryForm; 3]) -> Vec<Rat> {
    forms.iter().flat_map(|b| b.coeffs().iter().cloned()).collect()
}

fn triple_mul(v: &[Rat], k: u32, by_u: bool) -> Vec<Rat> {
    let m = k as usize + 1;
    (0..3)
        .flat_map(|i| {
            let b = BinaryForm::from_coeffs(k, v[i * m..(i + 1) * m].to_vec());
            let s = if by_u { b.mul_u() } else { b.mul_v() };
            s.into_coeffs()
        })
        .collect()
}

/// `pi_L(D_0(C)_k)` for `k <= bound`, computed from generators of `D_0(C)`.
#[derive(Clone, Debug)]
pub struct RestrictedModuleSlices {
    pub line: LinearForm,
    pub bound: u32,
    /// Echelon bases of the image in each degree.
    pub slices: Vec<Echelon>,
}

impl RestrictedModuleSlices {
    pub fn dims(&self) -> Vec<usize> {
        self.slices.iter().map(Echelon::rank).collect()
    }

    pub fn dim(&self, k: u32) -> usize {
        self.slices[k as usize].rank()
    }
}

/// Image slices of `pi_L` on the module generated by `generators`.
pub fn image_slices(generators: &[&Derivation], line: &LinearForm, bound: u32) -> RestrictedModuleSlices {
    let restricted: Vec<(u32, Vec<Rat>)> = generators
        .iter()
        .map(|g| (g.degree(), triple_vec(&restrict_derivation(g, line))))
        .collect();
    let mut slices: Vec<Echelon> = Vec::with_capacity(bound as usize + 1);
    for k in 0..=bound {
        let mut e = Echelon::new(3 * (k as usize + 1));
        for (d, v) in &restricted {
            if *d == k {
                e.insert(v);
            }
        }
        // S-bar_1 times the previous slice
        if k > 0 {
            let prev: Vec<Vec<Rat>> = slices[k as usize - 1].basis().cloned().collect();
            for v in prev {
                e.insert(&triple_mul(&v, k - 1, true));
                e.insert(&triple_mul(&v, k - 1, false));
            }
        }
        slices.push(e);
    }
    RestrictedModuleSlices {
        line: line.clone(),
        bound,
        slices,
    }
}

/// Descending reconstruction of `H^0(E_C|_L(k))` and the splitting type.
#[derive(Clone, Debug, Serialize)]
pub struct SectionSpaces {
    pub section_dims: Vec<usize>,
    pub image_dims: Vec<usize>,
    pub split: SplittingType,
}

fn saturate(image: &RestrictedModuleSlices) -> Vec<Echelon> {
    let top = image.bound as usize;
    let mut sat: Vec<Echelon> = vec![Echelon::new(0); top + 1];
    sat[top] = image.slices[top].clone();
    for k in (0..top).rev() {
        let len = 3 * (k + 1);
        let ann = sat[k + 1].annihilator();
        // <w, u s> = <mul_u^T w, s>; build the transposes by applying to unit vectors
        let mut rows = Vec::with_capacity(2 * ann.len());
        let units: Vec<[Vec<Rat>; 2]> = (0..len)
            .map(|i| {
                let mut e = vec![Rat::zero(); len];
                e[i] = Rat::from_integer(1.into());
                [triple_mul(&e, k as u32, true), triple_mul(&e, k as u32, false)]
            })
            .collect();
        for w in &ann {
            for side in 0..2 {
                rows.push(
                    units
                        .iter()
                        .map(|u| crate::polycore::linalg::dot(w, &u[side]))
                        .collect::<Vec<Rat>>(),
                );
            }
        }
        let basis = if rows.is_empty() {
            (0..len).map(|i| RatMatrix::identity(len).row(i).to_vec()).collect()
        } else {
            RatMatrix::from_rows(len, rows).kernel()
        };
        let mut e = Echelon::new(len);
        for b in &basis {
            e.insert(b);
        }
        sat[k] = e;
    }
    sat
}

/// Section dimensions from the image slices, with their consistency checks.
pub fn section_spaces(image: &RestrictedModuleSlices, curve_degree: u32) -> Result<SectionSpaces> {
    let sat = saturate(image);
    let top = image.bound as i64;
    let n = i64::from(curve_degree);
    let section_dims: Vec<usize> = sat.iter().map(Echelon::rank).collect();
    let image_dims = image.dims();
    for (k, (s, m)) in sat.iter().zip(&image.slices).enumerate() {
        for v in m.basis() {
            ensure!(s.contains(v), "image not inside the sections in degree {k}");
        }
    }
    let Some(a) = section_dims.iter().position(|&d| d > 0) else {
        return Err(Error::Internal("no sections on the line up to the bound".into()));
    };
    let a = a as i64;
    let b = 2 * top + 2 - a - section_dims[top as usize] as i64;
    ensure!(a <= b, "descending reconstruction gave a > b ({a}, {b})");
    ensure!(a + b == n - 1, "splitting type ({a},{b}) does not sum to {}", n - 1);
    for (k, &d) in section_dims.iter().enumerate() {
        let k = k as i64;
        let want = (k - a + 1).max(0) + (k - b + 1).max(0);
        ensure!(d as i64 == want, "section space of degree {k} has dimension {d}, expected {want}");
    }
    Ok(SectionSpaces {
        section_dims,
        image_dims,
        split: SplittingType::new(a, b),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SplittingReport {
    pub split: SplittingType,
    pub coker_dim: i64,
    pub c2: i64,
    pub bound: u32,
    pub section_dims: Vec<usize>,
    pub image_dims: Vec<usize>,
}

/// Window for the section reconstruction.
pub fn section_bound(n: u32, c2: i64) -> u32 {
    let n = i64::from(n);
    (n + c2 + 2).max(2 * n - 2).max(1) as u32
}

/// Splitting type of `E_C` on `line` with the cokernel certificate
/// `c2 - ab = dim coker(pi_L)`.
pub fn splitting_type(f: &HomoPoly, cls: &Classification, line: &LinearForm) -> Result<SplittingReport> {
    let n = f.degree();
    let chern = chern_of_classification(cls, n)?;
    let bound = section_bound(n, chern.c2);
    let gens = cls.generators();
    let image = image_slices(&gens, line, bound);
    let sections = section_spaces(&image, n)?;
    let mut coker = 0i64;
    for (k, (s, m)) in sections.section_dims.iter().zip(&sections.image_dims).enumerate() {
        let r = *s as i64 - *m as i64;
        ensure!(r >= 0, "negative cokernel contribution in degree {k}");
        coker += r;
    }
    let top = bound as usize;
    ensure!(
        top < 1 || sections.section_dims[top - 1] == sections.image_dims[top - 1],
        "cokernel does not vanish below the window top {bound}"
    );
    let SplittingType { a, b } = sections.split;
    ensure!(
        chern.c2 - a * b == coker,
        "c2 - ab = {} but the cokernel has dimension {coker} on {line}",
        chern.c2 - a * b
    );
    Ok(SplittingReport {
        split: sections.split,
        coker_dim: coker,
        c2: chern.c2,
        bound,
        section_dims: sections.section_dims,
        image_dims: sections.image_dims,
    })
}

/// The pairs a plus-one generated curve can split as on a line.
pub fn allowed_pairs(cls: &Classification) -> Result<BTreeSet<SplittingType>> {
    let Classification::PlusOneGenerated {
        exponents: (d2, d3),
        level,
        ..
    } = cls
    else {
        return Err(Error::Unsupported("allowed pairs need a plus-one generated curve".into()));
    };
    let (d2, d3, d) = (i64::from(*d2), i64::from(*d3), i64::from(*level));
    Ok([
        SplittingType::new(d2, d3 - 1),
        SplittingType::new(d2 - 1, d3),
        SplittingType::new(d2 - (d - d3 + 1), d),
    ]
    .into_iter()
    .collect())
}

/// Whether `a` is a possible generic first splitting number for a curve of
/// degree `n` with the given `mdr`.
pub fn generic_a_allowed(n: u32, mdr: u32, a: i64) -> bool {
    let m = i64::from(n / 2);
    a == i64::from(mdr) || (n.is_multiple_of(2) && a == m - 1) || (!n.is_multiple_of(2) && a == m)
}

/// Seeded random lines with coefficients in `[-9, 9]`, never components of `f`.
pub fn sample_lines(f: &HomoPoly, count: usize, seed: u64) -> Vec<LinearForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let c: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-9..=9));
        let Some(l) = LinearForm::from_ints(c[0], c[1], c[2]) else {
            continue;
        };
        if restrict_to_line(f, &l).is_zero() || !seen.insert(l.clone()) {
            continue;
        }
        out.push(l);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct GenericSplitting {
    pub split: SplittingType,
    pub corollary_holds: bool,
    pub even_degree_exception: bool,
}

/// Largest-`a` splitting over `trials` seeded lines.
pub fn generic_splitting(f: &HomoPoly, cls: &Classification, trials: usize, seed: u64) -> Result<GenericSplitting> {
    let mut best: Option<SplittingType> = None;
    for l in sample_lines(f, trials, seed) {
        let s = splitting_type(f, cls, &l)?.split;
        if best.is_none_or(|b| s.a > b.a) {
            best = Some(s);
        }
    }
    let split = best.ok_or_else(|| Error::Unsupported("no lines sampled".into()))?;
    let n = f.degree();
    let corollary_holds = generic_a_allowed(n, cls.mdr(), split.a);
    ensure!(
        corollary_holds,
        "generic splitting {split} is not allowed for mdr {} and degree {n}",
        cls.mdr()
    );
    Ok(GenericSplitting {
        split,
        corollary_holds,
        even_degree_exception: split.a != i64::from(cls.mdr()),
    })
}
