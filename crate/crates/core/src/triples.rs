//! Deletion-restriction triples `(C, C', C'')` for a line `L` and mechanical
//! checks of the addition and deletion theorems on them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::chern::{chern_of_classification, triple_c2_identity, TripleIdentity};
use crate::error::{Error, Result};
use crate::lines::{arrangement_singular_points, linear_factors, lines_through_pairs, singular_points};
use crate::logmod::{check_reduced, classify, default_bound, syzygy_space, Classification, Derivation};
use crate::polycore::binary::distinct_root_count;
use crate::polycore::linalg::Echelon;
use crate::polycore::poly::{monomials, restrict_to_line, HomoPoly, LinearForm};
use crate::restriction::{rho, sample_lines};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EpsSource {
    /// Default for line arrangements, whose singularities are quasi-homogeneous.
    AssumedZeroQuasihomogeneous,
    UserSupplied,
    SolvedFromClassifications,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleData {
    pub f_c: HomoPoly,
    pub f_cprime: HomoPoly,
    pub line: LinearForm,
    /// Number of distinct points of `C' ∩ L`.
    pub card_cpp: u32,
    pub eps: i64,
    pub eps_source: EpsSource,
}

impl TripleData {
    /// `|C''| + eps`.
    pub fn count(&self) -> i64 {
        i64::from(self.card_cpp) + self.eps
    }

    pub fn with_eps(&self, eps: i64, source: EpsSource) -> Self {
        TripleData {
            eps,
            eps_source: source,
            ..self.clone()
        }
    }
}

fn eps_or_default(eps: Option<i64>) -> (i64, EpsSource) {
    match eps {
        Some(e) => (e, EpsSource::UserSupplied),
        None => (0, EpsSource::AssumedZeroQuasihomogeneous),
    }
}

/// The triple for `C = C' ∪ L`.
pub fn make_triple(f_cprime: &HomoPoly, line: &LinearForm, eps: Option<i64>) -> Result<TripleData> {
    check_reduced(f_cprime)?;
    let r = restrict_to_line(f_cprime, line);
    let Some(card) = distinct_root_count(&r) else {
        return Err(Error::AlreadyAComponent { line: line.to_string() });
    };
    let (eps, eps_source) = eps_or_default(eps);
    Ok(TripleData {
        f_c: &line.to_poly() * f_cprime,
        f_cprime: f_cprime.clone(),
        line: line.clone(),
        card_cpp: card,
        eps,
        eps_source,
    })
}

/// The triple for `C' = C \ L` with `L` a component of `C`.
pub fn delete_line(f_c: &HomoPoly, line: &LinearForm, eps: Option<i64>) -> Result<TripleData> {
    check_reduced(f_c)?;
    let Some(rest) = f_c.div_exact(&line.to_poly()) else {
        return Err(Error::NotAComponent { line: line.to_string() });
    };
    match rest.degree() {
        0 => Err(Error::Unsupported(format!("deleting {line} leaves a constant curve"))),
        _ => make_triple(&rest, line, eps),
    }
}

/// Exponents and level of a free or plus-one generated module, exponents sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Shape {
    Free(i64, i64),
    Pog(i64, i64, i64),
}

impl Shape {
    pub fn free(a: i64, b: i64) -> Self {
        Shape::Free(a.min(b), a.max(b))
    }

    pub fn pog(a: i64, b: i64, level: i64) -> Self {
        Shape::Pog(a.min(b), a.max(b), level)
    }

    pub fn of(cls: &Classification) -> Option<Self> {
        match cls {
            Classification::Free { exponents: (a, b), .. } => Some(Shape::free((*a).into(), (*b).into())),
            Classification::PlusOneGenerated {
                exponents: (a, b),
                level,
                ..
            } => Some(Shape::pog((*a).into(), (*b).into(), (*level).into())),
            Classification::Other { .. } => None,
        }
    }

    pub fn branch(&self) -> &'static str {
        match self {
            Shape::Free(..) => "free",
            Shape::Pog(..) => "plus_one_generated",
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Free(a, b) => write!(f, "Free({a},{b})"),
            Shape::Pog(a, b, d) => write!(f, "POG({a},{b};{d})"),
        }
    }
}

fn free_exponents(cls: &Classification) -> Option<(i64, i64)> {
    match Shape::of(cls)? {
        Shape::Free(a, b) => Some((a, b)),
        Shape::Pog(..) => None,
    }
}

fn pog_data(cls: &Classification) -> Option<(i64, i64, i64)> {
    match Shape::of(cls)? {
        Shape::Pog(a, b, d) => Some((a, b, d)),
        Shape::Free(..) => None,
    }
}

fn orderings((a, b): (i64, i64)) -> [(i64, i64); 2] {
    [(a, b), (b, a)]
}

fn shape_label(cls: &Classification) -> String {
    Shape::of(cls).map_or_else(|| cls.label(), |s| s.to_string())
}

/// A triple together with the classifications of both curves.
#[derive(Clone, Debug)]
pub struct TripleAnalysis {
    pub triple: TripleData,
    pub c: Classification,
    pub cprime: Classification,
}

impl TripleAnalysis {
    pub fn new(triple: TripleData) -> Result<Self> {
        let c = classify(&triple.f_c, default_bound(&triple.f_c))?;
        let cprime = classify(&triple.f_cprime, default_bound(&triple.f_cprime))?;
        Ok(TripleAnalysis { triple, c, cprime })
    }

    pub fn deg_c(&self) -> i64 {
        self.triple.f_c.degree().into()
    }

    pub fn deg_cprime(&self) -> i64 {
        self.triple.f_cprime.degree().into()
    }

    /// The Chern polynomial identity of the triple, when both curves are free or plus-one generated.
    pub fn chern_identity(&self) -> Result<TripleIdentity> {
        let cd_c = chern_of_classification(&self.c, self.triple.f_c.degree())?;
        let cd_cp = chern_of_classification(&self.cprime, self.triple.f_cprime.degree())?;
        triple_c2_identity(&cd_c, &cd_cp, self.triple.card_cpp.into(), self.triple.eps)
    }

    fn trace(&self) -> BTreeMap<String, String> {
        let t = &self.triple;
        BTreeMap::from([
            ("deg_c".into(), self.deg_c().to_string()),
            ("deg_cprime".into(), self.deg_cprime().to_string()),
            ("card_cpp".into(), t.card_cpp.to_string()),
            ("eps".into(), t.eps.to_string()),
            ("class_c".into(), self.c.label()),
            ("class_cprime".into(), self.cprime.label()),
        ])
    }

    fn report(&self, theorem: TheoremId) -> TheoremReport {
        TheoremReport {
            theorem,
            line: self.triple.line.to_string(),
            eps_source: self.triple.eps_source,
            hypotheses: Vec::new(),
            predicted: String::new(),
            computed: String::new(),
            branch: None,
            verdict: Verdict::Confirmed,
            trace: self.trace(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    Addition,
    Deletion,
    AdditionConverse,
    DeletionInverse,
    Equivalence,
    DeletionCharacterization,
    AdditionCharacterization,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Verdict {
    #[serde(rename = "confirmed")]
    Confirmed,
    #[serde(rename = "hypothesis_not_met")]
    HypothesisNotMet,
    /// Hypotheses met but the conclusion failed. Always an implementation defect.
    #[serde(rename = "REFUTED")]
    Refuted,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Confirmed => "confirmed",
            Verdict::HypothesisNotMet => "hypothesis_not_met",
            Verdict::Refuted => "REFUTED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub line: String,
    pub eps_source: EpsSource,
    pub hypotheses: Vec<Hypothesis>,
    pub predicted: String,
    pub computed: String,
    pub branch: Option<String>,
    pub verdict: Verdict,
    pub trace: BTreeMap<String, String>,
}

impl TheoremReport {
    fn hypothesis(&mut self, name: &str, holds: bool, detail: String) -> bool {
        self.hypotheses.push(Hypothesis {
            name: name.into(),
            holds,
            detail,
        });
        if !holds {
            self.verdict = Verdict::HypothesisNotMet;
        }
        holds
    }

    fn conclude(&mut self, predicted: String, computed: String, ok: bool) {
        self.predicted = predicted;
        self.computed = computed;
        self.verdict = if ok { Verdict::Confirmed } else { Verdict::Refuted };
    }
}

/// `C'` free implies `C` is free or plus-one generated with predicted data.
pub fn verify_addition(a: &TripleAnalysis) -> TheoremReport {
    let mut r = a.report(TheoremId::Addition);
    let e = free_exponents(&a.cprime);
    if !r.hypothesis("cprime_free", e.is_some(), shape_label(&a.cprime)) {
        return r;
    }
    let n = a.triple.count();
    let (d2, d3) = e.unwrap();
    let predicted = orderings((d2, d3))
        .into_iter()
        .find(|&(p, _)| p + 1 == n)
        .map_or(Shape::pog(d2 + 1, d3 + 1, n - 1), |(p, q)| Shape::free(p, q + 1));
    let computed = Shape::of(&a.c);
    r.branch = Some(predicted.branch().into());
    r.conclude(predicted.to_string(), shape_label(&a.c), computed == Some(predicted));
    r
}

/// `C` free implies `C'` is free or plus-one generated with predicted data.
pub fn verify_deletion(a: &TripleAnalysis) -> TheoremReport {
    let mut r = a.report(TheoremId::Deletion);
    let e = free_exponents(&a.c);
    if !r.hypothesis("c_free", e.is_some(), shape_label(&a.c)) {
        return r;
    }
    let n = a.triple.count();
    let (d2, d3) = e.unwrap();
    let predicted = orderings((d2, d3))
        .into_iter()
        .find(|&(p, q)| p + 1 == n && q >= 1)
        .map_or(Shape::pog(d2, d3, a.deg_cprime() - n), |(p, q)| Shape::free(p, q - 1));
    r.branch = Some(predicted.branch().into());
    r.conclude(
        predicted.to_string(),
        shape_label(&a.cprime),
        Shape::of(&a.cprime) == Some(predicted),
    );
    r
}

/// `C` plus-one generated of level `d` with `|C''| + eps = d + 1` forces `C'` free.
pub fn verify_addition_converse(a: &TripleAnalysis) -> TheoremReport {
    let mut r = a.report(TheoremId::AdditionConverse);
    let pog = pog_data(&a.c);
    if !r.hypothesis("c_plus_one_generated", pog.is_some(), shape_label(&a.c)) {
        return r;
    }
    let (d2, d3, d) = pog.unwrap();
    let n = a.triple.count();
    if !r.hypothesis("count_is_level_plus_one", n == d + 1, format!("|C''| + eps = {n}, level + 1 = {}", d + 1)) {
        return r;
    }
    let predicted = Shape::free(d2 - 1, d3 - 1);
    r.branch = Some("free".into());
    r.conclude(
        predicted.to_string(),
        shape_label(&a.cprime),
        Shape::of(&a.cprime) == Some(predicted),
    );
    r
}

/// `C'` plus-one generated of level `deg C' - |C''| - eps` forces `C` free.
pub fn verify_deletion_inverse(a: &TripleAnalysis) -> TheoremReport {
    let mut r = a.report(TheoremId::DeletionInverse);
    let pog = pog_data(&a.cprime);
    if !r.hypothesis("cprime_plus_one_generated", pog.is_some(), shape_label(&a.cprime)) {
        return r;
    }
    let (d2, d3, d) = pog.unwrap();
    let want = a.deg_cprime() - a.triple.count();
    if !r.hypothesis("level_formula", d == want, format!("level {d}, deg C' - |C''| - eps = {want}")) {
        return r;
    }
    let predicted = Shape::free(d2, d3);
    r.branch = Some("free".into());
    r.conclude(predicted.to_string(), shape_label(&a.c), Shape::of(&a.c) == Some(predicted));
    r
}

/// With `|C''| + eps = d2 + 1`: `C'` is free `(d2, d3)` iff `C` is free `(d2, d3 + 1)`.
pub fn verify_equivalence(a: &TripleAnalysis, d2: i64) -> TheoremReport {
    let mut r = a.report(TheoremId::Equivalence);
    let n = a.triple.count();
    if !r.hypothesis("count_is_d2_plus_one", n == d2 + 1, format!("|C''| + eps = {n}, d2 + 1 = {}", d2 + 1)) {
        return r;
    }
    let other = |e: Option<(i64, i64)>| -> Option<i64> {
        let (x, y) = e?;
        match (x == d2, y == d2) {
            (true, _) => Some(y),
            (_, true) => Some(x),
            _ => None,
        }
    };
    // d3 read off from each side
    let left = other(free_exponents(&a.cprime));
    let right = other(free_exponents(&a.c)).map(|e| e - 1);
    let side = |d3: Option<i64>, shift: i64| match d3 {
        Some(d3) => format!("Free({d2},{})", d3 + shift),
        None => "not free with exponent d2".to_string(),
    };
    r.trace.insert("d2".into(), d2.to_string());
    let ok = left == right;
    let computed = format!("C': {}; C: {}", side(left, 0), side(right, 1));
    let predicted = match (left, right) {
        (Some(_), Some(_)) => "both sides true",
        (None, None) => "both sides false",
        _ => "sides disagree",
    };
    r.branch = Some(predicted.replace(' ', "_"));
    let pred = match left.or(right) {
        Some(d3) => format!("C' Free({d2},{d3}) iff C Free({d2},{})", d3 + 1),
        None => "neither side free".into(),
    };
    r.conclude(pred, computed, ok);
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Addition,
    Deletion,
}

#[derive(Clone, Debug, Serialize)]
pub struct Characterization {
    pub mode: Mode,
    pub class: String,
    /// One report per tested line.
    pub rows: Vec<TheoremReport>,
    /// Number of lines whose triple certifies that the curve is free.
    pub certifying: usize,
    /// False when the candidate lines may be incomplete (irrational data or factoring limits).
    pub lines_complete: bool,
    pub verdict: Verdict,
    /// The analysed triple behind each row.
    #[serde(skip)]
    pub analyses: Vec<TripleAnalysis>,
}

/// Per-line `eps` overrides; missing lines use `eps = 0`.
pub type EpsOverrides = BTreeMap<LinearForm, i64>;

/// Compares the freeness implied by one triple against the classification of the curve.
///
/// `implied` carries the freeness certified by the triple and the clause it came from.
fn judge(r: &mut TheoremReport, implied: Option<(Shape, &str)>, actual: &Classification) {
    r.branch = implied.map(|(_, b)| b.to_string());
    let implied = implied.map(|(s, _)| s);
    let actual_free = free_exponents(actual).map(|(a, b)| Shape::free(a, b));
    let predicted = match (implied, actual_free) {
        (Some(s), _) => format!("curve {s}"),
        (None, Some(s)) => format!("triple certifies {s}"),
        (None, None) => "curve not free and no certificate".into(),
    };
    let computed = match implied {
        Some(s) => format!("certifies {s}; curve {}", shape_label(actual)),
        None => format!("no certificate; curve {}", shape_label(actual)),
    };
    r.conclude(predicted, computed, implied == actual_free);
}

/// Checks the deletion characterization of freeness over linear components.
///
/// With `component = None` every rational linear component is tested.
pub fn characterize_deletion(
    f: &HomoPoly,
    component: Option<&LinearForm>,
    eps: &EpsOverrides,
) -> Result<Characterization> {
    let cls = classify(f, default_bound(f))?;
    let (lines, complete) = match component {
        Some(l) => (vec![l.clone()], true),
        None => linear_factors(f),
    };
    if lines.is_empty() {
        return Err(Error::Unsupported("no rational linear component to delete".into()));
    }
    let deg_c = i64::from(f.degree());
    let rows = lines
        .par_iter()
        .map(|l| -> Result<(TheoremReport, TripleAnalysis)> {
            let t = delete_line(f, l, eps.get(l).copied())?;
            let cprime = classify(&t.f_cprime, default_bound(&t.f_cprime))?;
            let a = TripleAnalysis {
                triple: t,
                c: cls.clone(),
                cprime,
            };
            let mut r = a.report(TheoremId::DeletionCharacterization);
            let n = a.triple.count();
            let implied = match Shape::of(&a.cprime) {
                Some(Shape::Free(x, y)) => orderings((x, y))
                    .into_iter()
                    .find(|&(p, _)| n == p + 1)
                    .map(|(p, q)| (Shape::free(p, q + 1), "free")),
                Some(Shape::Pog(x, y, d)) => (d == deg_c - 1 - n).then(|| (Shape::free(x, y), "plus_one_generated")),
                None => None,
            };
            judge(&mut r, implied, &a.c);
            Ok((r, a))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(Mode::Deletion, &cls, rows, complete))
}

/// Candidate lines for the addition scan: seeded random lines and lines
/// through two singular points, components excluded, in line order.
pub fn addition_candidates(f: &HomoPoly, samples: usize, seed: u64) -> (Vec<LinearForm>, bool) {
    let (factors, factors_complete) = linear_factors(f);
    let arrangement = factors.len() as u32 == f.degree();
    let (points, complete) = if arrangement {
        (arrangement_singular_points(&factors), true)
    } else {
        let s = singular_points(f);
        (s.points, s.complete && factors_complete)
    };
    let mut lines: BTreeSet<LinearForm> = sample_lines(f, samples, seed).into_iter().collect();
    lines.extend(lines_through_pairs(&points, f));
    (lines.into_iter().collect(), complete)
}

/// Checks the addition characterization of freeness over candidate lines.
pub fn characterize_addition(f: &HomoPoly, samples: usize, seed: u64, eps: &EpsOverrides) -> Result<Characterization> {
    let (lines, complete) = addition_candidates(f, samples, seed);
    characterize_addition_on(f, &lines, eps, complete)
}

pub fn characterize_addition_on(
    f: &HomoPoly,
    lines: &[LinearForm],
    eps: &EpsOverrides,
    complete: bool,
) -> Result<Characterization> {
    let cls = classify(f, default_bound(f))?;
    let rows = lines
        .par_iter()
        .map(|l| -> Result<(TheoremReport, TripleAnalysis)> {
            let t = make_triple(f, l, eps.get(l).copied())?;
            let c = classify(&t.f_c, default_bound(&t.f_c))?;
            let a = TripleAnalysis {
                triple: t,
                c,
                cprime: cls.clone(),
            };
            let mut r = a.report(TheoremId::AdditionCharacterization);
            let n = a.triple.count();
            let implied = match Shape::of(&a.c) {
                Some(Shape::Free(x, y)) => orderings((x, y))
                    .into_iter()
                    .find(|&(p, q)| n == p + 1 && q >= 1)
                    .map(|(p, q)| (Shape::free(p, q - 1), "free")),
                Some(Shape::Pog(x, y, d)) => (d == n - 1).then(|| (Shape::free(x - 1, y - 1), "plus_one_generated")),
                None => None,
            };
            judge(&mut r, implied, &a.cprime);
            Ok((r, a))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(Mode::Addition, &cls, rows, complete))
}

fn finish(
    mode: Mode,
    cls: &Classification,
    rows: Vec<(TheoremReport, TripleAnalysis)>,
    complete: bool,
) -> Characterization {
    let (rows, analyses): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    let certifying = rows.iter().filter(|r| r.branch.is_some()).count();
    let verdict = rows.iter().map(|r| r.verdict).max().unwrap_or(Verdict::Confirmed);
    Characterization {
        mode,
        class: cls.label(),
        rows,
        certifying,
        lines_complete: complete,
        verdict,
        analyses,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsilonSolution {
    pub eps: i64,
    pub route: String,
}

/// Solves the deletion exponent formulas for `eps`.
pub fn solve_epsilon(a: &TripleAnalysis) -> Result<EpsilonSolution> {
    let Some(e) = free_exponents(&a.c) else {
        return Err(Error::Unsupported(format!("C must be free, got {}", a.c.label())));
    };
    let card = i64::from(a.triple.card_cpp);
    match Shape::of(&a.cprime) {
        Some(Shape::Free(x, y)) => orderings(e)
            .into_iter()
            .find(|&(p, q)| Shape::free(p, q - 1) == Shape::Free(x, y))
            .map(|(p, _)| EpsilonSolution {
                eps: p + 1 - card,
                route: format!("free branch: eps = d2 + 1 - |C''| with d2 = {p}"),
            })
            .ok_or_else(|| {
                Error::Internal(format!(
                    "free C' {} does not fit the exponents of C {}",
                    a.cprime.label(),
                    a.c.label()
                ))
            }),
        Some(Shape::Pog(x, y, d)) => {
            if Shape::free(x, y) != Shape::free(e.0, e.1) {
                return Err(Error::Internal(format!(
                    "plus-one generated C' {} does not share the exponents of C {}",
                    a.cprime.label(),
                    a.c.label()
                )));
            }
            Ok(EpsilonSolution {
                eps: a.deg_cprime() - card - d,
                route: format!("plus-one generated branch: eps = deg C' - |C''| - level with level {d}"),
            })
        }
        None => Err(Error::Unsupported(format!(
            "C' must be free or plus-one generated, got {}",
            a.cprime.label()
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactSequenceRow {
    pub k: u32,
    /// `dim D(C)_k`.
    pub dim_c: usize,
    /// `dim D(C')_{k-1}`.
    pub dim_cprime: usize,
    /// Rank of `alpha_L D(C')_{k-1}` inside `D(C)_k`.
    pub multiplied_rank: usize,
    /// `dim ker(rho)_k`.
    pub kernel_dim: usize,
    pub injective: bool,
    pub kernel_matches: bool,
    pub tangent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactSequenceReport {
    pub rows: Vec<ExactSequenceRow>,
    pub passed: bool,
}

/// A basis of `D(C)_k = AR(f)_k ⊕ S_{k-1} theta_E`.
fn derivation_basis(f: &HomoPoly, k: u32) -> Result<Vec<Derivation>> {
    let mut basis = syzygy_space(f, k)?;
    if k >= 1 {
        let e = Derivation::euler();
        basis.extend(monomials(k - 1).into_iter().map(|m| e.mul_poly(&HomoPoly::monomial(m, crate::polycore::rat::rat(1)))));
    }
    Ok(basis)
}

fn rank_of(vectors: impl Iterator<Item = Vec<crate::polycore::rat::Rat>>, dim: usize) -> usize {
    let mut ech = Echelon::new(dim);
    for v in vectors {
        ech.insert(&v);
    }
    ech.rank()
}

/// Checks `0 -> D(C')(-1) -> D(C) -> D(C'')` degreewise for `k <= bound`.
pub fn check_exact_sequence(t: &TripleData, bound: u32) -> Result<ExactSequenceReport> {
    let alpha = t.line.to_poly();
    let g = restrict_to_line(&t.f_cprime, &t.line).squarefree_part();
    let mut rows = Vec::new();
    for k in 0..=bound {
        let basis = derivation_basis(&t.f_c, k)?;
        let images: Vec<_> = basis.iter().map(|th| rho(th, &t.line)).collect();
        let image_rank = rank_of(
            images.iter().map(|r| {
                let mut v = r.du.coeffs().to_vec();
                v.extend_from_slice(r.dv.coeffs());
                v
            }),
            2 * (k as usize + 1),
        );
        let kernel_dim = basis.len() - image_rank;
        let small = if k >= 1 { derivation_basis(&t.f_cprime, k - 1)? } else { Vec::new() };
        let multiplied: Vec<Derivation> = small.iter().map(|th| th.mul_poly(&alpha)).collect();
        let inside = multiplied
            .iter()
            .all(|th| t.f_c.divides(&th.apply(&t.f_c)) && rho(th, &t.line).is_zero());
        let multiplied_rank = rank_of(multiplied.iter().map(Derivation::to_vec), 3 * crate::polycore::monomial_count(k.into()));
        let tangent = images.iter().all(|r| g.divides(&r.apply(&g)));
        rows.push(ExactSequenceRow {
            k,
            dim_c: basis.len(),
            dim_cprime: small.len(),
            multiplied_rank,
            kernel_dim,
            injective: multiplied_rank == small.len(),
            kernel_matches: inside && kernel_dim == small.len(),
            tangent,
        });
    }
    let passed = rows.iter().all(|r| r.injective && r.kernel_matches && r.tangent);
    Ok(ExactSequenceReport { rows, passed })
}
