//! End-to-end timings of the three expensive layers: exact sparse rank,
//! Hochschild homology tables, and full Morita verification. The inputs
//! mirror the worst cases the test suite runs, so regressions here predict
//! regressions in wall-clock test time.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::sync::Arc;

use superhh_core::bimod::regular_bimodule;
use superhh_core::builders::{
    clifford1, matrix_superalgebra, self_context, standard_matrix_context,
};
use superhh_core::exactlin::FieldTag;
use superhh_core::hochschild::{hochschild_complex, hochschild_homology};
use superhh_core::{build_double_complex, verify_morita_invariance, RotationSign};

fn q() -> FieldTag {
    FieldTag::Rational
}

/// Rank of the degree-3 boundary of M(2|1): 6561 columns of mostly
/// unit entries, the largest single elimination in the test suite.
fn rank_of_large_boundary(c: &mut Criterion) {
    let algebra = Arc::new(matrix_superalgebra(2, 1, q()).expect("M(2|1)"));
    let complex = hochschild_complex(&algebra, &regular_bimodule(&algebra), 3).expect("complex");
    c.bench_function("rank boundary d_3 of M(2|1)", |b| {
        b.iter_batched(
            || complex.boundary(3).clone(),
            |d| d.rank(),
            BatchSize::SmallInput,
        )
    });
}

fn homology_tables(c: &mut Criterion) {
    let cl1 = Arc::new(clifford1(q()).expect("clifford1"));
    let cl2 = Arc::new(cl1.graded_tensor(&cl1).expect("clifford1 square"));
    c.bench_function("homology of Cl(1)⊗Cl(1) to degree 4", |b| {
        b.iter(|| hochschild_homology(&cl2, &regular_bimodule(&cl2), 4).expect("table"))
    });

    let m21 = Arc::new(matrix_superalgebra(2, 1, q()).expect("M(2|1)"));
    let mut group = c.benchmark_group("heavy");
    group.sample_size(10);
    group.bench_function("homology of M(2|1) to degree 3", |b| {
        b.iter(|| hochschild_homology(&m21, &regular_bimodule(&m21), 3).expect("table"))
    });
    group.finish();
}

fn morita_verification(c: &mut Criterion) {
    c.bench_function("verify standard-matrix(1|1) to total degree 3", |b| {
        b.iter(|| {
            let ctx = standard_matrix_context(1, 1, q()).expect("context");
            let report = verify_morita_invariance(&ctx, 3, RotationSign::BlockProduct)
                .expect("verification");
            assert!(report.verified);
            report
        })
    });

    c.bench_function("double complex of self(Cl(1)) to total degree 4", |b| {
        b.iter(|| {
            let ctx = self_context(Arc::new(clifford1(q()).expect("clifford1")));
            build_double_complex(&ctx, 4, RotationSign::BlockProduct).expect("complex")
        })
    });
}

criterion_group!(
    benches,
    rank_of_large_boundary,
    homology_tables,
    morita_verification
);
criterion_main!(benches);
