mod common;

use common::{c, q013, sink_quiver};
use proptest::prelude::*;
use quiver_reflect::barcode::decompose;
use quiver_reflect::classical::{orientations, LineRep};
use quiver_reflect::linalg::Field;
use quiver_reflect::quiver::Coord;
use quiver_reflect::reflection::*;
use quiver_reflect::representation::{hom_space, random_rep, Bar, Budget, Morphism, Rep};

const F: Field = Field::Prime(32003);

fn small() -> Budget {
    Budget {
        max_bars: 4,
        max_cuts: 7,
        max_dim: 3,
    }
}

/// Kernel dimension of the sink reflection of one bar at `x`, by counting:
/// the two summands minus the rank of a row with entries in {0, 1}.
fn bar_oracle(bar: &Bar, ctx: &ReflectionContext, x: Coord) -> usize {
    let (a, b, cc) = ctx.window();
    if !ctx.inside(x) {
        return bar.contains(x) as usize;
    }
    let xp = ctx.mirror(x);
    let (p, r) = if x == ctx.mirrored_center() {
        (a, cc)
    } else if x < ctx.mirrored_center() {
        (a, xp)
    } else {
        (xp, cc)
    };
    let (u, w, t) = (bar.contains(p) as usize, bar.contains(r) as usize, bar.contains(b));
    let rank = (t && (u + w) > 0) as usize;
    u + w - rank
}

fn sample_points() -> Vec<Coord> {
    (-8..=24).map(|n| c(n, 4)).collect()
}

#[test]
fn worked_interval_table() {
    let q = q013();
    let ctx = ReflectionContext::plus(&q, 1).unwrap();
    let table = [
        (
            Bar::closed(0.into(), c(5, 2)),
            vec![Bar::point(0.into()), Bar::closed_open(c(1, 2), 2.into())],
        ),
        (
            Bar::closed_open(0.into(), 1.into()),
            vec![Bar::closed_open(0.into(), 3.into())],
        ),
        (Bar::closed(1.into(), 3.into()), vec![Bar::point(3.into())]),
        (Bar::closed(0.into(), 3.into()), vec![Bar::closed(0.into(), 3.into())]),
        (Bar::closed(c(1, 2), c(5, 2)), vec![]),
    ];
    for (bar, expected) in table {
        assert_eq!(transform_interval_plus(bar, &ctx, F).unwrap(), expected, "{bar}");
        let profile = reflect_dims_plus(&Rep::interval_module(&q, bar, F), &ctx).unwrap();
        let rebuilt = Rep::from_bars(ctx.reflected_quiver(), &expected, F);
        for x in sample_points() {
            assert_eq!(profile.dim_at(x), bar_oracle(&bar, &ctx, x), "{bar} at {x}");
            assert_eq!(rebuilt.dim_at(x), profile.dim_at(x), "{bar} at {x}");
        }
    }
    let w = reflect_plus(&Rep::zero(&q, F), &ctx).unwrap();
    assert!(w.is_zero());
}

#[test]
fn source_side_table() {
    let q = q013();
    let back = ReflectionContext::minus(&q.reflect_quiver(1).unwrap(), 1).unwrap();
    assert_eq!(
        transform_interval_minus(Bar::closed_open(0.into(), 3.into()), &back, F).unwrap(),
        vec![Bar::closed_open(0.into(), 1.into())]
    );
    assert_eq!(
        transform_interval_minus(Bar::point(3.into()), &back, F).unwrap(),
        vec![Bar::closed(1.into(), 3.into())]
    );
}

#[test]
fn lemma_squares_on_the_full_interval() {
    let q = q013();
    let ctx = ReflectionContext::plus(&q, 1).unwrap();
    let v = Rep::interval_module(&q, Bar::closed(0.into(), 3.into()), F);
    let report = verify_lemma_squares(&v, &ctx).unwrap();
    assert!(report.all_pass());
    assert!(report.checks.iter().any(|s| s.part == "center"));
    assert!(verify_lemma_squares(&Rep::zero(&q, F), &ctx).unwrap().all_pass());
}

#[test]
fn morphism_between_two_bars() {
    let q = q013();
    let ctx = ReflectionContext::plus(&q, 1).unwrap();
    let long = Rep::interval_module(&q, Bar::closed(0.into(), c(5, 2)), F);
    let short = Rep::interval_module(&q, Bar::closed(0.into(), c(3, 2)), F);
    let basis = hom_space(&short, &long).unwrap();
    assert_eq!(basis.len(), 1);
    let f = reflect_morphism_plus(&basis[0], &ctx).unwrap();
    assert_eq!(f.broken_square(), None);
    let z = reflect_morphism_plus(&Morphism::zero(&short, &long).unwrap(), &ctx).unwrap();
    assert!(z.components().iter().all(|m| m.is_zero()));
}

#[test]
fn classical_agreement_on_small_lines() {
    for n in 3..=4 {
        for arrows in orientations(n) {
            for i in 1..n - 1 {
                for seed in 0..5 {
                    let m = LineRep::random(F, arrows.clone(), 2, seed);
                    if !m.is_sink(i) {
                        continue;
                    }
                    let ctx = ReflectionContext::plus(&m.encoded_quiver(), i).unwrap();
                    let ours = reflect_plus(&m.encode(), &ctx).unwrap();
                    let theirs = m.reflect_sink(i).unwrap().encode();
                    assert_eq!(decompose(&ours).unwrap(), decompose(&theirs).unwrap());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reflection_invariants((q, k) in sink_quiver(), seed in any::<u64>(), s2 in any::<u64>()) {
        let ctx = ReflectionContext::plus(&q, k).unwrap();
        let v = random_rep(&q, small(), seed, F);
        let profile = reflect_dims_plus(&v, &ctx).unwrap();
        let w = reflect_plus_unchecked(&v, &ctx).unwrap();
        let (a, b, cc) = ctx.window();
        for x in sample_points() {
            prop_assert_eq!(w.dim_at(x), profile.dim_at(x));
            if !ctx.inside(x) {
                prop_assert_eq!(w.dim_at(x), v.dim_at(x));
            }
        }
        if in_overline_rep(&v, k).unwrap().holds {
            let bp = ctx.mirrored_center();
            prop_assert_eq!(w.dim_at(bp) + v.dim_at(b), v.dim_at(a) + v.dim_at(cc));
            prop_assert!(in_underline_rep(&w, k).unwrap().holds);
        }
        let u = random_rep(&q, small(), s2, F);
        let sum = reflect_plus_unchecked(&v.direct_sum(&u).unwrap(), &ctx).unwrap();
        let parts = decompose(&w).unwrap().union(&decompose(&reflect_plus_unchecked(&u, &ctx).unwrap()).unwrap());
        prop_assert_eq!(decompose(&sum).unwrap(), parts);
        for (bar, _) in decompose(&v).unwrap().iter() {
            let p = reflect_dims_plus(&Rep::interval_module(&q, *bar, F), &ctx).unwrap();
            prop_assert!(p.dims().iter().all(|&d| d <= 1));
        }
        prop_assert!(verify_lemma_squares(&v, &ctx).unwrap().all_pass());
    }

    #[test]
    fn source_side_invariants((q, k) in sink_quiver(), seed in any::<u64>()) {
        let ctx = ReflectionContext::plus(&q, k).unwrap();
        let back = ReflectionContext::minus(ctx.reflected_quiver(), k).unwrap();
        let w = random_rep(ctx.reflected_quiver(), small(), seed, F);
        let profile = reflect_dims_minus(&w, &back).unwrap();
        let v = reflect_minus_unchecked(&w, &back).unwrap();
        for x in sample_points() {
            prop_assert_eq!(v.dim_at(x), profile.dim_at(x));
        }
        if in_underline_rep(&w, k).unwrap().holds {
            prop_assert!(in_overline_rep(&v, k).unwrap().holds);
        }
        prop_assert!(verify_lemma_squares(&w, &back).unwrap().all_pass());
    }

    #[test]
    fn functoriality(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>(), pick in any::<(usize, usize)>()) {
        let q = q013();
        let ctx = ReflectionContext::plus(&q, 1).unwrap();
        let b = Budget { max_bars: 3, max_cuts: 6, max_dim: 2 };
        let (v, w, u) = (random_rep(&q, b, s1, F), random_rep(&q, b, s2, F), random_rep(&q, b, s3, F));
        let part = v.partition().merge(w.partition()).merge(u.partition());
        let (v, w, u) = (v.refine_to(&part), w.refine_to(&part), u.refine_to(&part));
        prop_assert!(reflect_morphism_plus(&Morphism::identity(&v), &ctx).unwrap().is_identity());
        let (fs, gs) = (hom_space(&v, &w).unwrap(), hom_space(&w, &u).unwrap());
        if !fs.is_empty() && !gs.is_empty() {
            let f = &fs[pick.0 % fs.len()];
            let g = &gs[pick.1 % gs.len()];
            let sf = reflect_morphism_plus(f, &ctx).unwrap();
            let sg = reflect_morphism_plus(g, &ctx).unwrap();
            prop_assert_eq!(sf.broken_square(), None);
            let composite = reflect_morphism_plus(&f.then(g).unwrap(), &ctx).unwrap();
            prop_assert_eq!(composite, sf.then(&sg).unwrap());
        }
    }

    #[test]
    fn unit_is_natural(s1 in 0u64..1000, s2 in 0u64..1000, pick in any::<usize>()) {
        let q = q013();
        let ctx = ReflectionContext::plus(&q, 1).unwrap();
        let b = Budget { max_bars: 3, max_cuts: 6, max_dim: 2 };
        let v = sample_overline(&q, 1, b, s1, F).unwrap().unwrap();
        let w = sample_overline(&q, 1, b, s2, F).unwrap().unwrap();
        let part = v.partition().merge(w.partition());
        let (v, w) = (v.refine_to(&part), w.refine_to(&part));
        let fs = hom_space(&v, &w).unwrap();
        if !fs.is_empty() {
            prop_assert!(unit_naturality_check(&fs[pick % fs.len()], &ctx).is_ok());
        }
    }
}
