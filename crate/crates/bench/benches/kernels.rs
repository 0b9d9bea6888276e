use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use paley_core::census::{census_exhaustive, reconstruct_nr};
use paley_core::mds::{construct_self_dual, enumerate_omega, verify_mds};
use paley_core::parity_core::count_coeven;
use paley_core::{FiniteField, PaleyStructure, SimpleGraph};

fn paley(q: u64) -> PaleyStructure {
    PaleyStructure::new(Arc::new(FiniteField::with_order(q).unwrap()))
}

fn census(c: &mut Criterion) {
    let p = paley(29);
    c.bench_function("census_exhaustive q=29 r=5", |b| {
        b.iter(|| census_exhaustive(black_box(&p), 5, u128::MAX).unwrap())
    });
    let f = p.field().clone();
    c.bench_function("reconstruct_nr q=17 r=5", |b| b.iter(|| reconstruct_nr(black_box(&f), 5, u128::MAX).unwrap()));
}

fn gf2(c: &mut Criterion) {
    let big = paley(1009);
    c.bench_function("gf2 rank P_1009", |b| b.iter(|| black_box(big.adjacency_gf2()).rank()));
    let g = SimpleGraph::from_paley(&paley(401)).unwrap();
    c.bench_function("count_coeven P_401", |b| b.iter(|| count_coeven(black_box(&g))));
}

fn mds(c: &mut Criterion) {
    let f = Arc::new(FiniteField::with_order(13).unwrap());
    let sets = enumerate_omega(&f, 6, u128::MAX).unwrap();
    c.bench_function("construct_self_dual q=13 n=6 (all sets)", |b| {
        b.iter(|| sets.iter().map(|s| construct_self_dual(s).unwrap()).collect::<Vec<_>>())
    });
    let code = construct_self_dual(&sets[0]).unwrap();
    c.bench_function("verify_mds q=13 n=6", |b| b.iter(|| verify_mds(black_box(&code)).unwrap()));
}

criterion_group!(benches, census, gf2, mds);
criterion_main!(benches);
