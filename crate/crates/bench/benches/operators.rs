use criterion::{black_box, criterion_group, criterion_main, Criterion};

use crystal_lab::crystal::{bfs, bfs_starred};
use crystal_lab::level_paths::{ground_path, lp_etilde, lp_ftilde, LevelCrystal};
use crystal_lab::path_inf::{hp_ftilde, PathCrystal};
use crystal_lab::peter_weyl::{pw_report, verify_c1, PwBounds};
use crystal_lab::star::{star_binf, star_extremal_closed, star_level};
use crystal_lab::{HalfPath, LevelPath, NodeIndex, Weight};

fn golden() -> LevelPath {
    LevelPath::from_window(2, 0, -5, &[-1, 1, -2, 2, -2, 1, -1, 1, -2, 2])
}

fn deep_left_path(steps: usize) -> HalfPath {
    (0..steps).fold(HalfPath::u_inf(), |b, k| {
        hp_ftilde(NodeIndex::ALL[k % 3 % 2], &b).unwrap()
    })
}

fn operators(c: &mut Criterion) {
    let b = deep_left_path(40);
    c.bench_function("half path f0", |x| {
        x.iter(|| hp_ftilde(NodeIndex::I0, black_box(&b)))
    });
    let p = golden();
    c.bench_function("level path e1", |x| {
        x.iter(|| lp_etilde(NodeIndex::I1, black_box(&p)))
    });
    c.bench_function("level path f0", |x| {
        x.iter(|| lp_ftilde(NodeIndex::I0, black_box(&p)))
    });
}

fn star(c: &mut Criterion) {
    let b = deep_left_path(40);
    c.bench_function("star B(inf) height 40", |x| {
        x.iter(|| star_binf(black_box(&b)))
    });
    let p = golden();
    c.bench_function("star level path (algorithm)", |x| {
        x.iter(|| star_level(black_box(&p)))
    });
    c.bench_function("star level path (closed form)", |x| {
        x.iter(|| star_extremal_closed(black_box(&p)))
    });
}

fn components(c: &mut Criterion) {
    c.bench_function("bfs B(inf) depth 8", |x| {
        x.iter(|| bfs(&PathCrystal, &HalfPath::u_inf(), black_box(8)))
    });
    let u = ground_path(2, 0);
    c.bench_function("starred bfs u_lambda depth 4", |x| {
        x.iter(|| bfs_starred(&LevelCrystal, &u, black_box(4)))
    });
}

fn peter_weyl(c: &mut Criterion) {
    let mut g = c.benchmark_group("peter-weyl");
    g.sample_size(10);
    let lam = Weight::level_zero(2, 0);
    g.bench_function("C1 depth 3", |x| x.iter(|| verify_c1(lam, 3).unwrap()));
    let bounds = PwBounds {
        bmax_size: 1,
        right_depth: 2,
        word_bound: 8,
    };
    g.bench_function("pw_report (1,0)", |x| {
        x.iter(|| pw_report(&[Weight::level_zero(1, 0)], bounds).unwrap())
    });
    g.finish();
}

criterion_group!(benches, operators, star, components, peter_weyl);
criterion_main!(benches);
