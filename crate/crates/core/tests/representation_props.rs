mod common;

use common::{c, q013, quiver};
use proptest::prelude::*;
use quiver_reflect::barcode::{decompose, generalized_rank, is_isomorphic, rebuild, Barcode};
use quiver_reflect::linalg::Field;
use quiver_reflect::representation::random::{random_cuts, rng_from_seed, scramble};
use quiver_reflect::representation::{hom_space, random_planted, random_rep, Bar, Budget, Morphism, Rep};

const F: Field = Field::Prime(32003);

fn small() -> Budget {
    Budget {
        max_bars: 4,
        max_cuts: 7,
        max_dim: 3,
    }
}

#[test]
fn interval_endpoints_follow_flags() {
    let q = q013();
    for bar in [
        Bar::closed(c(1, 2), 2.into()),
        Bar::open(c(1, 2), 2.into()),
        Bar::closed_open(c(1, 2), 2.into()),
        Bar::open_closed(c(1, 2), 2.into()),
    ] {
        let v = Rep::interval_module(&q, bar, F);
        assert_eq!(v.dim_at(c(1, 2)) == 1, bar.lo().is_closed());
        assert_eq!(v.dim_at(2.into()) == 1, bar.hi().is_closed());
        assert_eq!(decompose(&v).unwrap().to_vec(), vec![bar]);
    }
}

#[test]
fn generalized_rank_examples() {
    let q = q013();
    let v = Rep::from_bars(&q, &[Bar::closed(0.into(), 1.into()), Bar::point(c(1, 2))], F);
    let p = v.partition();
    let (lo, hi) = (p.cell_of(0.into()), p.cell_of(1.into()));
    assert_eq!(generalized_rank(&v, lo, hi), 1);
    let mid = p.cell_of(c(1, 2));
    assert_eq!(generalized_rank(&v, mid, mid), 2);
    assert!(decompose(&Rep::zero(&q, F)).unwrap().is_empty());
    assert!(rebuild(&q, &Barcode::new(), F).is_zero());
    assert!(!is_isomorphic(
        &v,
        &v.direct_sum(&Rep::interval_module(&q, Bar::point(2.into()), F))
            .unwrap()
    )
    .unwrap());
}

/// Planted recovery, the dimension identity and rank equality after rebuild.
#[test]
fn planted_barcodes_on_many_seeds() {
    let q = q013();
    for seed in 0..300 {
        let (v, bars) = random_planted(&q, Budget::default(), seed, F);
        let bc = decompose(&v).unwrap();
        assert_eq!(bc, bars.iter().copied().collect::<Barcode>(), "seed {seed}");
        let w = rebuild(&q, &bc, F).refine_to(v.partition());
        for i in 0..v.cell_count() {
            for j in i..v.cell_count() {
                assert_eq!(generalized_rank(&v, i, j), generalized_rank(&w, i, j));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn maps_compose_along_the_order(q in quiver(), seed in any::<u64>(), xs in prop::collection::vec(-20i64..=40, 3)) {
        let v = random_rep(&q, small(), seed, F);
        let mut pts: Vec<_> = xs.iter().map(|&n| c(n, 4)).collect();
        pts.sort();
        for perm in [[0, 1, 2], [2, 1, 0]] {
            let (x, y, z) = (pts[perm[0]], pts[perm[1]], pts[perm[2]]);
            if q.precedes(x, y) && q.precedes(y, z) {
                let xz = v.map_along(x, z).unwrap();
                let xyz = v.map_along(y, z).unwrap().mul(&v.map_along(x, y).unwrap());
                prop_assert_eq!(xz, xyz);
            }
        }
    }

    #[test]
    fn refinement_and_sums_keep_invariants(q in quiver(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let v = random_rep(&q, small(), s1, F);
        let w = random_rep(&q, small(), s2, F);
        let mut rng = rng_from_seed(s1 ^ s2);
        let extra = random_cuts(&mut rng, &q, 10);
        let r = v.refine_partition(&extra);
        for n in -20i64..=40 {
            prop_assert_eq!(r.dim_at(c(n, 4)), v.dim_at(c(n, 4)));
        }
        prop_assert_eq!(decompose(&r).unwrap(), decompose(&v).unwrap());
        let sum = v.direct_sum(&w).unwrap();
        prop_assert_eq!(decompose(&sum).unwrap(), decompose(&v).unwrap().union(&decompose(&w).unwrap()));
        for n in -20i64..=40 {
            prop_assert_eq!(sum.dim_at(c(n, 4)), v.dim_at(c(n, 4)) + w.dim_at(c(n, 4)));
        }
        prop_assert!(is_isomorphic(&v, &scramble(&mut rng, &v)).unwrap());
    }

    #[test]
    fn hom_spaces_are_natural_and_additive(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let q = q013();
        let b = Budget { max_bars: 2, max_cuts: 5, max_dim: 2 };
        let (v, w, u) = (random_rep(&q, b, s1, F), random_rep(&q, b, s2, F), random_rep(&q, b, s3, F));
        let vw = v.direct_sum(&w).unwrap();
        let basis = hom_space(&vw, &u).unwrap();
        prop_assert!(basis.iter().all(Morphism::is_natural));
        prop_assert_eq!(basis.len(), hom_space(&v, &u).unwrap().len() + hom_space(&w, &u).unwrap().len());
        if let (Some(f), Some(g)) = (hom_space(&v, &v).unwrap().first(), hom_space(&v, &v).unwrap().last()) {
            prop_assert!(f.then(g).unwrap().is_natural());
        }
    }
}
