//! Degree-by-degree kernels of graded maps between free `S`-modules.
//!
//! A map `phi: \oplus_j S(-s_j) -> \oplus_i S(-t_i)` has entries `phi_ij` of
//! degree `s_j - t_i`. Its degree-`k` piece is a linear map between the spaces
//! of coefficient vectors; an element of the source in degree `k` is stored as
//! the concatenation of the dense coefficient vectors of its components, the
//! `j`-th of degree `k - s_j`.
//!
//! Dimensions are certified with a sandwich argument. With `P_k` the span of
//! the known generators times monomials,
//! `rank_p(P_k) <= rank(P_k) <= dim ker(phi_k) <= dim ker_p(phi_k)`,
//! so equality of the outer terms settles the degree without exact algebra.
//! Otherwise the exact kernel is computed and new generators are read off it.

use num_traits::Zero;

use crate::polycore::linalg::{Echelon, RatMatrix};
use crate::polycore::modp::{self, ModMatrix};
use crate::polycore::poly::{monomial_count, monomial_index, monomials, Exp, HomoPoly};
use crate::polycore::rat::{common_denominator, Rat};

/// Degree shifts of a graded free module `\oplus_j S(-s_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    pub shifts: Vec<i64>,
}

impl FreeModule {
    pub fn new(shifts: Vec<i64>) -> Self {
        FreeModule { shifts }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    /// Degree of component `j` of an element of degree `k` (may be negative).
    pub fn component_degree(&self, k: i64, j: usize) -> i64 {
        k - self.shifts[j]
    }

    /// Start of each component block in degree `k`, plus the total length.
    pub fn offsets(&self, k: i64) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.rank() + 1);
        let mut acc = 0;
        out.push(0);
        for &s in &self.shifts {
            acc += monomial_count(k - s);
            out.push(acc);
        }
        out
    }

    pub fn dim(&self, k: i64) -> usize {
        self.shifts.iter().map(|&s| monomial_count(k - s)).sum()
    }

    /// Splits a dense vector into its components; `None` marks negative degrees.
    pub fn components(&self, k: i64, v: &[Rat]) -> Vec<Option<HomoPoly>> {
        let off = self.offsets(k);
        assert_eq!(v.len(), off[self.rank()]);
        (0..self.rank())
            .map(|j| {
                let d = self.component_degree(k, j);
                (d >= 0).then(|| HomoPoly::from_dense(d as u32, v[off[j]..off[j + 1]].to_vec()))
            })
            .collect()
    }

    pub fn flatten(&self, k: i64, comps: &[Option<HomoPoly>]) -> Vec<Rat> {
        assert_eq!(comps.len(), self.rank());
        let mut out = Vec::with_capacity(self.dim(k));
        for (j, c) in comps.iter().enumerate() {
            let d = self.component_degree(k, j);
            if d < 0 {
                continue;
            }
            match c {
                Some(p) => {
                    assert_eq!(i64::from(p.degree()), d, "component of wrong degree");
                    out.extend(p.coeffs().iter().cloned());
                }
                None => out.extend(std::iter::repeat_n(Rat::zero(), monomial_count(d))),
            }
        }
        out
    }
}

/// Multiplies a degree-`e` element by the monomial `m`, giving a degree-`e + |m|` vector.
pub fn shift_vector(module: &FreeModule, e: i64, v: &[Rat], m: Exp) -> Vec<Rat> {
    let k = e + i64::from(m[0] + m[1] + m[2]);
    let src = module.offsets(e);
    let dst = module.offsets(k);
    let mut out = vec![Rat::zero(); dst[module.rank()]];
    for j in 0..module.rank() {
        let d = module.component_degree(e, j);
        if d < 0 {
            continue;
        }
        for (idx, mono) in monomials(d as u32).into_iter().enumerate() {
            let c = &v[src[j] + idx];
            if c.is_zero() {
                continue;
            }
            let t = monomial_index([mono[0] + m[0], mono[1] + m[1], mono[2] + m[2]]);
            out[dst[j] + t] = c.clone();
        }
    }
    out
}

fn shift_vector_p(module: &FreeModule, e: i64, v: &[u64], m: Exp, out: &mut Vec<u64>) {
    let k = e + i64::from(m[0] + m[1] + m[2]);
    let src = module.offsets(e);
    let dst = module.offsets(k);
    out.clear();
    out.resize(dst[module.rank()], 0);
    for j in 0..module.rank() {
        let d = module.component_degree(e, j);
        if d < 0 {
            continue;
        }
        for (idx, mono) in monomials(d as u32).into_iter().enumerate() {
            let c = v[src[j] + idx];
            if c != 0 {
                out[dst[j] + monomial_index([mono[0] + m[0], mono[1] + m[1], mono[2] + m[2]])] = c;
            }
        }
    }
}

/// A homogeneous map of graded free modules.
#[derive(Clone, Debug)]
pub struct GradedMap {
    source: FreeModule,
    target: FreeModule,
    /// `entries[i][j]`, of degree `s_j - t_i` when present.
    entries: Vec<Vec<Option<HomoPoly>>>,
    terms_p: Vec<Vec<Vec<(Exp, u64)>>>,
}

impl GradedMap {
    pub fn new(source: FreeModule, target: FreeModule, entries: Vec<Vec<Option<HomoPoly>>>) -> Self {
        assert_eq!(entries.len(), target.rank());
        for (i, row) in entries.iter().enumerate() {
            assert_eq!(row.len(), source.rank());
            for (j, e) in row.iter().enumerate() {
                if let Some(p) = e {
                    let want = source.shifts[j] - target.shifts[i];
                    assert!(p.is_zero() || i64::from(p.degree()) == want, "entry degree mismatch");
                }
            }
        }
        let terms_p = entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        Some(p) => p
                            .terms()
                            .map(|(m, c)| (m, modp::rat_mod(c).unwrap_or(0)))
                            .collect(),
                        None => Vec::new(),
                    })
                    .collect()
            })
            .collect();
        GradedMap {
            source,
            target,
            entries,
            terms_p,
        }
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    fn reduces_mod_p(&self) -> bool {
        self.entries.iter().flatten().flatten().all(|p| p.terms().all(|(_, c)| modp::rat_mod(c).is_some()))
    }

    /// Image of the source basis vector `mono * e_j` in degree `k`.
    fn basis_image(&self, k: i64, j: usize, mono: Exp) -> Vec<Rat> {
        let off = self.target.offsets(k);
        let mut out = vec![Rat::zero(); off[self.target.rank()]];
        for i in 0..self.target.rank() {
            if let Some(p) = &self.entries[i][j] {
                for (e, c) in p.terms() {
                    out[off[i] + monomial_index([e[0] + mono[0], e[1] + mono[1], e[2] + mono[2]])] += c;
                }
            }
        }
        out
    }

    fn basis_image_p(&self, j: usize, mono: Exp, off: &[usize]) -> Vec<u64> {
        let mut out = vec![0u64; off[self.target.rank()]];
        for i in 0..self.target.rank() {
            for (e, c) in &self.terms_p[i][j] {
                let t = off[i] + monomial_index([e[0] + mono[0], e[1] + mono[1], e[2] + mono[2]]);
                out[t] = modp::add(out[t], *c);
            }
        }
        out
    }

    /// Images of the source basis in degree `k`, one row per basis vector.
    pub fn image_rows(&self, k: i64) -> Vec<Vec<Rat>> {
        let mut rows = Vec::with_capacity(self.source.dim(k));
        for j in 0..self.source.rank() {
            let d = self.source.component_degree(k, j);
            if d < 0 {
                continue;
            }
            for mono in monomials(d as u32) {
                rows.push(self.basis_image(k, j, mono));
            }
        }
        rows
    }

    pub fn apply(&self, k: i64, v: &[Rat]) -> Vec<Rat> {
        let rows = self.image_rows(k);
        assert_eq!(rows.len(), v.len());
        let mut out = vec![Rat::zero(); self.target.dim(k)];
        for (c, row) in v.iter().zip(&rows) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        out
    }

    /// `dim ker` in degree `k` computed modulo `p`: an upper bound for the exact value.
    pub fn kernel_dim_mod_p(&self, k: i64) -> usize {
        let off = self.target.offsets(k);
        let mut m = ModMatrix::new(off[self.target.rank()]);
        for j in 0..self.source.rank() {
            let d = self.source.component_degree(k, j);
            if d < 0 {
                continue;
            }
            for mono in monomials(d as u32) {
                m.push_row(self.basis_image_p(j, mono, &off));
            }
        }
        self.source.dim(k) - m.rank()
    }

    /// Exact kernel basis in degree `k`, in RREF free-column order.
    pub fn kernel_exact(&self, k: i64) -> Vec<Vec<Rat>> {
        let n = self.source.dim(k);
        if n == 0 {
            return Vec::new();
        }
        let rows = self.image_rows(k);
        let cols = self.target.dim(k);
        if cols == 0 {
            return (0..n).map(|i| RatMatrix::identity(n).row(i).to_vec()).collect();
        }
        // rows are images of basis vectors; the matrix of the map is their transpose
        RatMatrix::from_columns(cols, &rows).kernel()
    }
}


/// Scales a vector to coprime integer entries with a positive first nonzero entry.
pub fn normalize(v: &[Rat]) -> Vec<Rat> {
    use num_integer::Integer;
    use num_traits::Signed;
    let den = common_denominator(v.iter());
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|r| (r * Rat::from_integer(den.clone())).to_integer()).collect();
    let mut g = ints.iter().fold(num_bigint::BigInt::zero(), |a, b| a.gcd(b));
    if g.is_zero() {
        return v.to_vec();
    }
    if ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    ints.into_iter().map(|c| Rat::from_integer(c / &g)).collect()
}

/// Outcome of one degree of a [`GradedKernel`] walk.
#[derive(Clone, Debug)]
pub struct KernelSlice {
    pub degree: i64,
    pub dim: usize,
    /// Dense vectors of the minimal generators first appearing in this degree.
    pub new_generators: Vec<Vec<Rat>>,
    /// True when the dimension was settled by the modular sandwich alone.
    pub certified_mod_p: bool,
}

#[derive(Clone, Debug)]
struct Generator {
    degree: i64,
    exact: Vec<Rat>,
    modp: Option<Vec<u64>>,
}

/// Walks the kernel of a graded map upwards, one degree at a time.
#[derive(Clone, Debug)]
pub struct GradedKernel {
    map: GradedMap,
    start: i64,
    next: i64,
    generators: Vec<Generator>,
    slices: Vec<KernelSlice>,
    map_reduces: bool,
}

impl GradedKernel {
    pub fn new(map: GradedMap, start: i64) -> Self {
        let map_reduces = map.reduces_mod_p();
        GradedKernel {
            map,
            start,
            next: start,
            generators: Vec::new(),
            slices: Vec::new(),
            map_reduces,
        }
    }

    pub fn map(&self) -> &GradedMap {
        &self.map
    }

    pub fn slices(&self) -> &[KernelSlice] {
        &self.slices
    }

    pub fn slice(&self, k: i64) -> Option<&KernelSlice> {
        usize::try_from(k - self.start).ok().and_then(|i| self.slices.get(i))
    }

    /// Minimal generators found so far as `(degree, dense vector)`.
    pub fn generators(&self) -> impl Iterator<Item = (i64, &[Rat])> {
        self.generators.iter().map(|g| (g.degree, g.exact.as_slice()))
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn computed_up_to(&self) -> i64 {
        self.next - 1
    }

    /// Processes degrees until `k` is done.
    pub fn advance_to(&mut self, k: i64) {
        while self.next <= k {
            self.step();
        }
    }

    fn multiples_p(&self, k: i64) -> Option<ModMatrix> {
        let module = self.map.source();
        let mut m = ModMatrix::new(module.dim(k));
        let mut buf = Vec::new();
        for g in &self.generators {
            let v = g.modp.as_ref()?;
            if g.degree > k {
                continue;
            }
            for mono in monomials((k - g.degree) as u32) {
                shift_vector_p(module, g.degree, v, mono, &mut buf);
                m.push_row(buf.clone());
            }
        }
        Some(m)
    }

    fn step(&mut self) {
        let k = self.next;
        self.next += 1;
        let module = self.map.source().clone();
        if module.dim(k) == 0 {
            self.slices.push(KernelSlice {
                degree: k,
                dim: 0,
                new_generators: Vec::new(),
                certified_mod_p: true,
            });
            return;
        }
        if self.map_reduces {
            if let Some(p) = self.multiples_p(k) {
                let lower = p.rank();
                let upper = self.map.kernel_dim_mod_p(k);
                if lower == upper {
                    self.slices.push(KernelSlice {
                        degree: k,
                        dim: upper,
                        new_generators: Vec::new(),
                        certified_mod_p: true,
                    });
                    return;
                }
            }
        }
        let kernel = self.map.kernel_exact(k);
        let mut span = Echelon::new(module.dim(k));
        for g in &self.generators {
            if g.degree > k {
                continue;
            }
            for mono in monomials((k - g.degree) as u32) {
                span.insert(&shift_vector(&module, g.degree, &g.exact, mono));
            }
        }
        let mut fresh = Vec::new();
        for v in &kernel {
            if span.insert(v) {
                fresh.push(normalize(v));
            }
        }
        for v in &fresh {
            let modp = v.iter().map(modp::rat_mod).collect::<Option<Vec<_>>>();
            self.generators.push(Generator {
                degree: k,
                exact: v.clone(),
                modp,
            });
        }
        self.slices.push(KernelSlice {
            degree: k,
            dim: kernel.len(),
            new_generators: fresh,
            certified_mod_p: false,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse::parse_poly;

    fn jacobian_map(f: &HomoPoly) -> GradedMap {
        let n = i64::from(f.degree());
        let grad = f.gradient();
        GradedMap::new(
            FreeModule::new(vec![0, 0, 0]),
            FreeModule::new(vec![1 - n]),
            vec![grad.into_iter().map(Some).collect()],
        )
    }

    #[test]
    fn triangle_kernel_dimensions() {
        let f = parse_poly("x*y*z").unwrap();
        let mut gk = GradedKernel::new(jacobian_map(&f), 0);
        gk.advance_to(4);
        let dims: Vec<usize> = gk.slices().iter().map(|s| s.dim).collect();
        // free with exponents (1,1): 2 * dim S_{k-1}
        assert_eq!(dims, vec![0, 2, 6, 12, 20]);
        assert_eq!(gk.generator_count(), 2);
    }

    #[test]
    fn shift_vector_moves_coefficients() {
        let m = FreeModule::new(vec![0, 1]);
        // degree 1: component 0 has degree 1 (3 coeffs), component 1 degree 0 (1 coeff)
        let v: Vec<Rat> = [1, 0, 0, 5].iter().map(|&c| Rat::from_integer(c.into())).collect();
        let s = shift_vector(&m, 1, &v, [0, 0, 1]);
        let comps = m.components(2, &s);
        assert_eq!(comps[0].as_ref().unwrap().to_string(), "x*z");
        assert_eq!(comps[1].as_ref().unwrap().to_string(), "5*z");
    }
}
