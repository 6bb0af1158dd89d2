//! The graded module `AR(f)` of syzygies among the partials of `f`.

use crate::error::{ensure, Error, Result};
use crate::polycore::gcd::square_factor_degree;
use crate::polycore::linalg::RatMatrix;
use crate::polycore::poly::{monomial_count, monomials, HomoPoly};

use super::derivation::Derivation;
use super::graded::{FreeModule, GradedKernel, GradedMap};

/// Rejects constant and non-reduced curves.
pub fn check_reduced(f: &HomoPoly) -> Result<()> {
    if f.degree() == 0 || f.is_zero() {
        return Err(Error::ConstantCurve);
    }
    match square_factor_degree(f) {
        0 => Ok(()),
        d => Err(Error::NotReduced { square_degree: d }),
    }
}

/// `(a, b, c) -> a f_x + b f_y + c f_z` as a map `S^3 -> S(n - 1)`.
pub fn jacobian_map(f: &HomoPoly) -> GradedMap {
    let n = i64::from(f.degree());
    GradedMap::new(
        FreeModule::new(vec![0, 0, 0]),
        FreeModule::new(vec![1 - n]),
        vec![f.gradient().into_iter().map(Some).collect()],
    )
}

/// The Jacobian partials and the graded pieces of the ideal they generate.
#[derive(Clone, Debug)]
pub struct JacobianData {
    pub f: HomoPoly,
    pub partials: [HomoPoly; 3],
}

impl JacobianData {
    pub fn new(f: &HomoPoly) -> Self {
        JacobianData {
            f: f.clone(),
            partials: f.gradient(),
        }
    }

    /// `dim J_m`, by exact rank of all monomial multiples of the partials.
    pub fn ideal_dim(&self, m: i64) -> usize {
        let shift = m - (i64::from(self.f.degree()) - 1);
        if shift < 0 {
            return 0;
        }
        let rows: Vec<_> = monomials(shift as u32)
            .into_iter()
            .flat_map(|mono| self.partials.iter().map(move |p| p.shift(mono).into_coeffs()))
            .collect();
        RatMatrix::from_rows(monomial_count(m), rows).rank()
    }
}

/// Incrementally computed `AR(f) = D_0(C)`.
#[derive(Clone, Debug)]
pub struct SyzygyModule {
    f: HomoPoly,
    kernel: GradedKernel,
}

impl SyzygyModule {
    pub fn new(f: &HomoPoly) -> Result<Self> {
        check_reduced(f)?;
        Ok(SyzygyModule {
            f: f.clone(),
            kernel: GradedKernel::new(jacobian_map(f), 0),
        })
    }

    pub fn curve(&self) -> &HomoPoly {
        &self.f
    }

    pub fn curve_degree(&self) -> u32 {
        self.f.degree()
    }

    pub fn advance_to(&mut self, k: u32) {
        self.kernel.advance_to(i64::from(k));
    }

    /// `dim AR_k`.
    pub fn dim(&mut self, k: u32) -> usize {
        self.advance_to(k);
        self.kernel.slice(i64::from(k)).unwrap().dim
    }

    /// Minimal generators found in degrees up to the last computed degree.
    pub fn generators(&self) -> Vec<Derivation> {
        self.kernel
            .generators()
            .map(|(d, v)| Derivation::from_vec(d as u32, v))
            .collect()
    }

    pub fn generator_degrees(&self) -> Vec<u32> {
        self.kernel.generators().map(|(d, _)| d as u32).collect()
    }

    pub fn computed_up_to(&self) -> i64 {
        self.kernel.computed_up_to()
    }

    /// Smallest degree with a nonzero syzygy.
    pub fn mdr(&mut self) -> Result<u32> {
        let n = self.curve_degree();
        for k in 0..n {
            if self.dim(k) > 0 {
                return Ok(k);
            }
        }
        Err(Error::Internal(format!(
            "no syzygy in degree <= {} for a curve of degree {n}",
            n - 1
        )))
    }
}

/// Exact basis of `AR(f)_k` from an undetermined-coefficient solve.
pub fn syzygy_space(f: &HomoPoly, k: u32) -> Result<Vec<Derivation>> {
    check_reduced(f)?;
    Ok(jacobian_map(f)
        .kernel_exact(i64::from(k))
        .iter()
        .map(|v| Derivation::from_vec(k, v))
        .collect())
}

pub fn mdr(f: &HomoPoly) -> Result<u32> {
    SyzygyModule::new(f)?.mdr()
}

/// Minimal generators of `AR(f)` in degrees `<= bound`, sorted by degree.
pub fn minimal_generators(f: &HomoPoly, bound: u32) -> Result<Vec<(u32, Derivation)>> {
    let mut m = SyzygyModule::new(f)?;
    m.advance_to(bound);
    Ok(m.generators().into_iter().map(|g| (g.degree(), g)).collect())
}

/// A minimal relation `sum_i c_i g_i = 0` among generators; `None` where the
/// coefficient would have negative degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub degree: u32,
    pub coefficients: Vec<Option<HomoPoly>>,
}

/// `(c_i) -> sum_i c_i g_i` from `\oplus S(-deg g_i)` to `S^3`.
pub fn relation_map(gens: &[Derivation]) -> GradedMap {
    let shifts = gens.iter().map(|g| i64::from(g.degree())).collect();
    let entries = (0..3)
        .map(|i| gens.iter().map(|g| Some(g.coeffs()[i].clone())).collect())
        .collect();
    GradedMap::new(FreeModule::new(shifts), FreeModule::new(vec![0, 0, 0]), entries)
}

/// Minimal relations among `gens` in degrees `<= bound`.
///
/// Fails if `gens` do not span `AR(f)_k` for some `k <= bound`.
pub fn relation_degrees(f: &HomoPoly, gens: &[Derivation], bound: u32) -> Result<Vec<Relation>> {
    let mut module = SyzygyModule::new(f)?;
    for g in gens {
        ensure!(g.apply(f).is_zero(), "generator {g} is not a syzygy");
    }
    let map = relation_map(gens);
    let source = map.source().clone();
    let mut rel = GradedKernel::new(map, 0);
    for k in 0..=bound {
        rel.advance_to(i64::from(k));
        let spanned = source.dim(i64::from(k)) - rel.slice(i64::from(k)).unwrap().dim;
        let want = module.dim(k);
        ensure!(
            spanned == want,
            "generators span {spanned} of {want} dimensions in degree {k}"
        );
    }
    Ok(rel
        .generators()
        .map(|(d, v)| Relation {
            degree: d as u32,
            coefficients: source.components(d, v),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse::parse_poly;

    fn p(s: &str) -> HomoPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn small_syzygy_dimensions() {
        assert_eq!(syzygy_space(&p("x*y*z"), 0).unwrap().len(), 0);
        assert_eq!(syzygy_space(&p("x*y*z"), 1).unwrap().len(), 2);
        let s = syzygy_space(&p("x*y"), 0).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].to_string(), "dz");
    }

    #[test]
    fn mdr_examples() {
        assert_eq!(mdr(&p("x*y")).unwrap(), 0);
        assert_eq!(mdr(&p("x*y*z")).unwrap(), 1);
        assert_eq!(mdr(&p("x^2+y^2+z^2")).unwrap(), 1);
    }

    #[test]
    fn generator_degrees() {
        let degs = |s: &str| -> Vec<u32> {
            let f = p(s);
            minimal_generators(&f, 2 * f.degree()).unwrap().into_iter().map(|(d, _)| d).collect()
        };
        assert_eq!(degs("x*y*z"), vec![1, 1]);
        assert_eq!(degs("x*y*z*(x+y+z)"), vec![2, 2, 2]);
        assert_eq!(degs("x*y*(x+y)"), vec![0, 2]);
    }

    #[test]
    fn relations_of_small_curves() {
        let f = p("x*y*z");
        let gens: Vec<_> = minimal_generators(&f, 6).unwrap().into_iter().map(|(_, g)| g).collect();
        assert!(relation_degrees(&f, &gens, 6).unwrap().is_empty());

        let f = p("x*y*z*(x+y+z)");
        let gens: Vec<_> = minimal_generators(&f, 8).unwrap().into_iter().map(|(_, g)| g).collect();
        let rels = relation_degrees(&f, &gens, 8).unwrap();
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].degree, 3);
        assert!(rels[0].coefficients.iter().all(|c| c.as_ref().unwrap().degree() == 1));

        let f = p("x^2+y^2+z^2");
        let gens = vec![
            Derivation::new([p("y"), p("-x"), HomoPoly::zero(1)]),
            Derivation::new([HomoPoly::zero(1), p("z"), p("-y")]),
            Derivation::new([p("-z"), HomoPoly::zero(1), p("x")]),
        ];
        let rels = relation_degrees(&f, &gens, 4).unwrap();
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].degree, 2);
        // z*t1 + x*t2 + y*t3 = 0, up to scaling
        let c: Vec<String> = rels[0].coefficients.iter().map(|c| c.as_ref().unwrap().to_string()).collect();
        assert_eq!(c, vec!["z", "x", "y"]);
    }

    #[test]
    fn non_reduced_is_rejected() {
        assert_eq!(
            syzygy_space(&p("x^2*y"), 1).unwrap_err(),
            Error::NotReduced { square_degree: 1 }
        );
    }

    #[test]
    fn jacobian_duality_on_a_small_curve() {
        let f = p("x*y*z*(x+y+z)");
        let j = JacobianData::new(&f);
        let mut m = SyzygyModule::new(&f).unwrap();
        for k in 0..6u32 {
            let expect = 3 * monomial_count(i64::from(k)) - j.ideal_dim(i64::from(k) + 3);
            assert_eq!(m.dim(k), expect);
        }
    }
}
