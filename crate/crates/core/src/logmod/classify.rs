//! Free / plus-one generated / other classification of `D_0(C)`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{ensure, Result};
use crate::polycore::poly::{monomial_count, HomoPoly};
use crate::polycore::rat::Rat;

use super::derivation::{coefficient_determinant, Derivation};
use super::graded::GradedKernel;
use super::module::{relation_map, Relation, SyzygyModule};

/// The unique relation `f2 theta2 + f3 theta3 + alpha psi = 0` of a plus-one
/// generated curve, written on the reordered generators `(theta2, theta3, psi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PogRelation {
    pub degree: u32,
    pub coefficients: [HomoPoly; 3],
}

impl PogRelation {
    /// The linear coefficient on `psi`.
    pub fn alpha(&self) -> &HomoPoly {
        &self.coefficients[2]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Free {
        exponents: (u32, u32),
        basis: [Derivation; 2],
        saito_constant: Rat,
    },
    PlusOneGenerated {
        exponents: (u32, u32),
        level: u32,
        defect: u32,
        /// `(theta2, theta3, psi)`.
        generators: [Derivation; 3],
        relation: PogRelation,
    },
    Other {
        mdr: u32,
        generator_degrees: Vec<u32>,
        generators: Vec<Derivation>,
        bound: u32,
        /// Generators were still appearing in the last two degrees of the window.
        pattern_open: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Free,
    PlusOneGenerated,
    Other,
}

impl Classification {
    pub fn kind(&self) -> Kind {
        match self {
            Classification::Free { .. } => Kind::Free,
            Classification::PlusOneGenerated { .. } => Kind::PlusOneGenerated,
            Classification::Other { .. } => Kind::Other,
        }
    }

    pub fn exponents(&self) -> Option<(u32, u32)> {
        match self {
            Classification::Free { exponents, .. } | Classification::PlusOneGenerated { exponents, .. } => {
                Some(*exponents)
            }
            Classification::Other { .. } => None,
        }
    }

    pub fn level(&self) -> Option<u32> {
        match self {
            Classification::PlusOneGenerated { level, .. } => Some(*level),
            _ => None,
        }
    }

    pub fn defect(&self) -> Option<u32> {
        match self {
            Classification::PlusOneGenerated { defect, .. } => Some(*defect),
            _ => None,
        }
    }

    pub fn mdr(&self) -> u32 {
        match self {
            Classification::Free { exponents, .. } | Classification::PlusOneGenerated { exponents, .. } => {
                exponents.0
            }
            Classification::Other { mdr, .. } => *mdr,
        }
    }

    pub fn generators(&self) -> Vec<&Derivation> {
        match self {
            Classification::Free { basis, .. } => basis.iter().collect(),
            Classification::PlusOneGenerated { generators, .. } => generators.iter().collect(),
            Classification::Other { generators, .. } => generators.iter().collect(),
        }
    }

    pub fn generator_degrees(&self) -> Vec<u32> {
        self.generators().iter().map(|g| g.degree()).collect()
    }

    pub fn is_free(&self) -> bool {
        matches!(self, Classification::Free { .. })
    }

    pub fn is_pog(&self) -> bool {
        matches!(self, Classification::PlusOneGenerated { .. })
    }

    /// Short label such as `Free(1,1)` or `POG(2,2;2)`.
    pub fn label(&self) -> String {
        match self {
            Classification::Free { exponents: (a, b), .. } => format!("Free({a},{b})"),
            Classification::PlusOneGenerated {
                exponents: (a, b),
                level,
                ..
            } => format!("POG({a},{b};{level})"),
            Classification::Other { mdr, .. } => format!("Other(mdr {mdr})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaitoOutcome {
    pub pass: bool,
    /// `c` with `det = c f`; zero when the check fails.
    pub constant: Rat,
    pub determinant: HomoPoly,
    pub reason: Option<String>,
}

/// Saito's criterion: `det(theta_E, theta2, theta3) = c f` with `c != 0`.
pub fn saito_check(f: &HomoPoly, theta2: &Derivation, theta3: &Derivation) -> Result<SaitoOutcome> {
    for t in [theta2, theta3] {
        ensure!(t.apply(f).is_zero(), "{t} does not annihilate f");
    }
    let euler = Derivation::euler();
    let det = coefficient_determinant([&euler, theta2, theta3]);
    let fail = |reason: String, det: HomoPoly| SaitoOutcome {
        pass: false,
        constant: Rat::zero(),
        determinant: det,
        reason: Some(reason),
    };
    if theta2.degree() + theta3.degree() + 1 != f.degree() {
        return Ok(fail(
            format!(
                "degrees {} + {} do not sum to {}",
                theta2.degree(),
                theta3.degree(),
                f.degree() - 1
            ),
            det,
        ));
    }
    if det.is_zero() {
        return Ok(fail("determinant vanishes".into(), det));
    }
    let (i, lead) = f.coeffs().iter().enumerate().find(|(_, c)| !c.is_zero()).unwrap();
    let c = &det.coeffs()[i] / lead;
    if c.is_zero() || det != f.scale(&c) {
        return Ok(fail("determinant is not a multiple of f".into(), det));
    }
    Ok(SaitoOutcome {
        pass: true,
        constant: c,
        determinant: det,
        reason: None,
    })
}

/// Predicted `dim AR_k` for a plus-one generated curve.
pub fn pog_hilbert(d2: u32, d3: u32, d: u32, k: u32) -> usize {
    let h = |j: i64| monomial_count(i64::from(k) - j);
    h(d2.into()) + h(d3.into()) + h(d.into()) - h(i64::from(d) + 1)
}

pub fn default_bound(f: &HomoPoly) -> u32 {
    2 * f.degree()
}

pub fn classify(f: &HomoPoly, bound: u32) -> Result<Classification> {
    let mut module = SyzygyModule::new(f)?;
    classify_module(&mut module, bound)
}

/// Classifies using (and extending) an existing syzygy computation.
pub fn classify_module(module: &mut SyzygyModule, bound: u32) -> Result<Classification> {
    let f = module.curve().clone();
    let n = f.degree();
    for k in 0..=bound {
        module.advance_to(k);
        let gens = module.generators();
        if gens.len() == 2 && gens[0].degree() + gens[1].degree() + 1 == n {
            let s = saito_check(&f, &gens[0], &gens[1])?;
            if s.pass {
                let [a, b]: [Derivation; 2] = gens.try_into().unwrap();
                return Ok(Classification::Free {
                    exponents: (a.degree(), b.degree()),
                    basis: [a, b],
                    saito_constant: s.constant,
                });
            }
        }
    }
    let gens = module.generators();
    let degrees: Vec<u32> = gens.iter().map(Derivation::degree).collect();
    if let Some(pog) = try_pog(module, &gens, bound)? {
        return Ok(pog);
    }
    let mdr = module.mdr()?;
    let pattern_open = degrees.iter().any(|&d| d + 2 > bound);
    Ok(Classification::Other {
        mdr,
        generator_degrees: degrees,
        generators: gens,
        bound,
        pattern_open,
    })
}

fn try_pog(module: &mut SyzygyModule, gens: &[Derivation], bound: u32) -> Result<Option<Classification>> {
    let n = module.curve_degree();
    if gens.len() != 3 {
        return Ok(None);
    }
    let (d2, d3, d) = (gens[0].degree(), gens[1].degree(), gens[2].degree());
    if d2 + d3 != n || d >= n {
        return Ok(None);
    }
    for k in 0..=bound {
        if module.dim(k) != pog_hilbert(d2, d3, d, k) {
            return Ok(None);
        }
    }
    let map = relation_map(gens);
    let source = map.source().clone();
    let mut rel = GradedKernel::new(map, 0);
    rel.advance_to(i64::from(bound));
    let relations: Vec<Relation> = rel
        .generators()
        .map(|(deg, v)| Relation {
            degree: deg as u32,
            coefficients: source.components(deg, v),
        })
        .collect();
    if relations.len() != 1 || relations[0].degree != d + 1 {
        return Ok(None);
    }
    let coeffs: Vec<HomoPoly> = relations[0]
        .coefficients
        .iter()
        .map(|c| c.clone().expect("generator degrees are below the relation degree"))
        .collect();
    // psi is a level-d generator with a nonzero (linear) coefficient; prefer the last
    let Some(psi) = (0..3).rev().find(|&i| gens[i].degree() == d && !coeffs[i].is_zero()) else {
        return Ok(None);
    };
    let mut order: Vec<usize> = (0..3).filter(|&i| i != psi).collect();
    order.push(psi);
    let generators: [Derivation; 3] = std::array::from_fn(|i| gens[order[i]].clone());
    let coefficients: [HomoPoly; 3] = std::array::from_fn(|i| coeffs[order[i]].clone());
    ensure!(coefficients[2].degree() == 1, "relation coefficient on psi is not linear");
    let (e2, e3) = (generators[0].degree(), generators[1].degree());
    Ok(Some(Classification::PlusOneGenerated {
        exponents: (e2.min(e3), e2.max(e3)),
        level: d,
        defect: d - d3 + 1,
        generators,
        relation: PogRelation {
            degree: d + 1,
            coefficients,
        },
    }))
}
