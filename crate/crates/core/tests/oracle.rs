mod common;

use common::{dense_syzygy_dim, h, p, CORPUS};
use freecurves::logmod::{classify, default_bound, SyzygyModule};

/// Expected `dim AR_k` from the exponents of a free curve.
fn free_dim(d2: i64, d3: i64, k: i64) -> usize {
    h(k - d2) + h(k - d3)
}

/// Expected `dim AR_k` for a plus-one generated curve of level `d`.
fn pog_dim(d2: i64, d3: i64, d: i64, k: i64) -> usize {
    h(k - d2) + h(k - d3) + h(k - d) - h(k - d - 1)
}

#[test]
fn dense_solver_frozen_values() {
    let table: &[(&str, &[usize])] = &[
        ("x*y*z", &[0, 2, 6, 12, 20]),
        ("x*y", &[1, 4, 9, 16]),
        ("x*y*(x+y)", &[1, 3, 7, 13, 21]),
        ("x*y*z*(x+y+z)", &[0, 0, 3, 8, 15, 24]),
        ("x^2+y^2+z^2", &[0, 3, 8, 15]),
        ("z*(x^2-y*z)", &[0, 2, 6, 12, 20]),
    ];
    for (f, dims) in table {
        let f = p(f);
        for (k, want) in dims.iter().enumerate() {
            assert_eq!(dense_syzygy_dim(&f, k as u32), *want, "{f} at k = {k}");
        }
    }
}

#[test]
fn dense_solver_matches_hilbert_functions() {
    for k in 0..8 {
        assert_eq!(dense_syzygy_dim(&p("x*y*z*(x+y)"), k), free_dim(1, 2, k.into()));
        assert_eq!(dense_syzygy_dim(&p("x*y*z*(x+y+z)*(x+y)"), k), free_dim(2, 2, k.into()));
        assert_eq!(dense_syzygy_dim(&p("x*y*z*(x+y+z)"), k), pog_dim(2, 2, 2, k.into()));
    }
}

#[test]
fn graded_engine_agrees_with_dense_solver() {
    for (name, f, _) in CORPUS {
        let f = p(f);
        let mut m = SyzygyModule::new(&f).unwrap();
        for k in 0..=2 * f.degree() {
            assert_eq!(m.dim(k), dense_syzygy_dim(&f, k), "{name} at k = {k}");
        }
    }
}

#[test]
fn graded_engine_agrees_off_corpus() {
    for f in ["x*y*z*(x+y+z)*(x+2*y+3*z)", "x^3+y^3+z^3", "y^2*z-x^3-x*z^2", "x*y*(x^2+y^2+z^2)"] {
        let f = p(f);
        let mut m = SyzygyModule::new(&f).unwrap();
        for k in 0..=2 * f.degree() {
            assert_eq!(m.dim(k), dense_syzygy_dim(&f, k), "{f} at k = {k}");
        }
    }
}

#[test]
fn corpus_labels() {
    for (name, f, label) in CORPUS {
        let f = p(f);
        assert_eq!(classify(&f, default_bound(&f)).unwrap().label(), *label, "{name}");
    }
}
