use criterion::{criterion_group, criterion_main, Criterion};
use lie4::catalog::grid_instances_dim;
use lie4::classify::identify;
use lie4::product::{paracomplex_search, tables, PcType, SearchBudget};
use lie4::par;

fn search_grid(c: &mut Criterion) {
    let gs: Vec<_> = grid_instances_dim(4).iter().map(|f| f.make().unwrap()).collect();
    let budget = SearchBudget::default();
    let one = |g: &lie4::LieAlgebra| paracomplex_search(g, PcType::AffR2, &budget).map(|s| s.found.len()).unwrap_or(0);
    let mut grp = c.benchmark_group("affr2-search-grid");
    grp.sample_size(10);
    grp.bench_function("par", |b| b.iter(|| par::map(&gs, one)));
    grp.bench_function("seq", |b| b.iter(|| par::with_threads(Some(1), || par::map_seq(&gs, one))));
    grp.finish();
}

fn identify_grid(c: &mut Criterion) {
    let gs: Vec<_> = grid_instances_dim(4).iter().map(|f| f.make().unwrap()).collect();
    let mut grp = c.benchmark_group("identify-grid");
    grp.bench_function("par", |b| b.iter(|| par::map(&gs, |g| identify(g).is_ok())));
    grp.bench_function("seq", |b| b.iter(|| par::map_seq(&gs, |g| identify(g).is_ok())));
    grp.finish();
}

fn pc_table(c: &mut Criterion) {
    let budget = SearchBudget::default();
    let mut grp = c.benchmark_group("pc-table");
    grp.sample_size(10);
    grp.bench_function("par", |b| b.iter(|| tables::verify_table_pc(&budget).checks.len()));
    grp.bench_function("seq", |b| b.iter(|| par::with_threads(Some(1), || tables::verify_table_pc(&budget).checks.len())));
    grp.finish();
}

criterion_group!(benches, search_grid, identify_grid, pc_table);
criterion_main!(benches);
