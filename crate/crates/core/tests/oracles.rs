use imac::{
    achievable_product_region, ivs_region, mses_region, outer_bound, upper_bound, ImacChannel, MacSpec,
    OptimizerSettings, Orientation, RatePolytope,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ch(p1: f64, p2: f64, h1: f64, h2: f64) -> ImacChannel<f64> {
    ImacChannel::new(p1, p2, h1, h2).unwrap()
}

/// Dense-grid minimum of the genie expression, written out independently.
fn dense_genie_min(p1: f64, p2: f64, h1: f64, h2: f64, n: usize) -> f64 {
    let inr = h1 * h1 * p1 + h2 * h2 * p2;
    let mut best = f64::INFINITY;
    for i in 0..n {
        let rho = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let t = -1.0 + 2.0 * j as f64 / (n - 1) as f64;
            let eta = t * (1.0 - rho * rho).max(0.0).sqrt();
            if eta.abs() < 1e-9 {
                continue;
            }
            let a = p1 * (eta - rho * h1).powi(2) + p2 * (eta - rho * h2).powi(2) + p1 * p2 * (h1 - h2).powi(2);
            let v = (1.0 + (inr + a / (1.0 - rho * rho + inr)) / (eta * eta)).log2();
            best = best.min(v);
        }
    }
    best
}

#[test]
fn genie_bound_matches_dense_grid() {
    for (p1, p2, h1, h2) in [(1.0, 1.0, 0.3, 0.15), (10.0, 10.0, 0.3, 0.15)] {
        let oracle = dense_genie_min(p1, p2, h1, h2, 2001);
        let got = upper_bound(&ch(p1, p2, h1, h2), &OptimizerSettings::default()).unwrap().bits;
        assert!((got - oracle).abs() <= 1e-3, "({p1},{p2},{h1},{h2}): {got} vs {oracle}");
    }
}

fn half_log2_1p(x: f64) -> f64 {
    0.5 * (1.0 + x).log2()
}

/// Max `R_a + R_b` over the intersection of two 2-user polymatroids,
/// `min_T f(T) + g(S \ T)`.
fn pair_intersection_max(f: [f64; 3], g: [f64; 3]) -> f64 {
    // [rank{a}, rank{b}, rank{a,b}]
    [f[2], g[2], f[0] + g[1], g[0] + f[1]]
        .into_iter()
        .fold(f64::INFINITY, f64::min)
}

fn pair_ranks(pa: f64, ga: f64, pb: f64, gb: f64, noise: f64) -> [f64; 3] {
    let (a, b) = (ga * ga * pa / noise, gb * gb * pb / noise);
    [half_log2_1p(a), half_log2_1p(b), half_log2_1p(a + b)]
}

fn random_channel(rng: &mut ChaCha8Rng) -> ImacChannel<f64> {
    let p1 = 10f64.powf(rng.gen_range(-1.5..1.5));
    let p2 = 10f64.powf(rng.gen_range(-1.5..1.5));
    let scale = (1.0 + p1 + p2).sqrt() * 2.0;
    ch(p1, p2, rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

#[test]
fn product_region_sum_rate_matches_intersection_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let c = random_channel(&mut rng);
        let n = 1.0 + c.p1() + c.p2();
        let own = pair_ranks(c.p1(), 1.0, c.p2(), 1.0, 1.0);
        let cross = pair_ranks(c.p1(), c.h1(), c.p2(), c.h2(), n);
        let expected = 2.0 * pair_intersection_max(own, cross);
        let (got, point) = achievable_product_region(&c).max_sum_rate().unwrap();
        assert!((got - expected).abs() <= 1e-9, "{c:?}: {got} vs {expected}");
        assert!(achievable_product_region(&c).member(&point));
    }
}

#[test]
fn single_mac_lp_agrees_with_greedy() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let pairs: Vec<(f64, f64)> = (0..4)
            .map(|_| (rng.gen_range(0.01..20.0), rng.gen_range(-3.0..3.0)))
            .collect();
        let mac = MacSpec::from_pairs(&pairs, rng.gen_range(0.1..5.0)).unwrap();
        let poly = RatePolytope::from_macs([&mac]).unwrap();
        let w: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.0..3.0));
        let (lp, _) = poly.max_weighted_sum(&w).unwrap();
        let greedy = mac.max_weighted_sum(&w).unwrap();
        assert!((lp - greedy).abs() <= 1e-9, "{lp} vs {greedy}");
        let (sum, _) = poly.max_sum_rate().unwrap();
        assert!((sum - mac.sum_capacity()).abs() <= 1e-9);
    }
}

#[test]
fn outer_bound_never_beats_interference_free_sum_capacity() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..300 {
        let c = random_channel(&mut rng);
        let poly = outer_bound(&c);
        let (v, p) = poly.max_sum_rate().unwrap();
        assert!(v <= (1.0 + c.p1() + c.p2()).log2() + 1e-9);
        assert!(poly.member(&p));
        assert!((p.sum() - v).abs() <= 1e-12);
    }
}

#[test]
fn ivs_region_equals_product_region() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let (p1, p2) = (rng.gen_range(0.05..10.0), rng.gen_range(0.05..10.0));
        let n: f64 = 1.0 + p1 + p2;
        let h1 = (n * rng.gen_range(1.0..4.0)).sqrt() * if rng.gen() { 1.0 } else { -1.0 };
        let h2 = (n * rng.gen_range(1.0..4.0)).sqrt();
        let c = ch(p1, p2, h1, h2);
        let ivs = ivs_region(&c).unwrap();
        let prod = achievable_product_region(&c);
        assert!(ivs.is_subset_of(&prod).unwrap() && prod.is_subset_of(&ivs).unwrap(), "{c:?}");
    }
}

#[test]
fn mses_region_vertices_lie_in_outer_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..50 {
        let (p1, p2) = (rng.gen_range(0.05..10.0), rng.gen_range(0.05..10.0));
        let g1 = rng.gen_range(1.0..5.0);
        let g2 = (1.0 + p1 + p2 + g1 * p1) * rng.gen_range(1.0..3.0);
        let c = ch(p1, p2, g1.sqrt(), g2.sqrt());
        let region = mses_region(&c, Orientation::H1Strong).unwrap();
        let outer = outer_bound(&c);
        for v in region.basic_feasible_points() {
            assert!(outer.member(&v), "{c:?} {v:?}");
        }
    }
}
