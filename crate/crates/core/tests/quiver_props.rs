mod common;

use common::{c, coord, q013, quiver, sink_quiver};
use proptest::prelude::*;
use quiver_reflect::quiver::{Coord, Orientation::*, OrientedQuiver, PointKind, QuiverError};

#[test]
fn worked_examples() {
    let q = q013();
    assert_eq!(q.classify_point(1).unwrap(), PointKind::Sink);
    assert_eq!(q.classify_point(0).unwrap(), PointKind::FlowRight);
    let src = OrientedQuiver::new(vec![0.into()], vec![Descending, Ascending]).unwrap();
    assert_eq!(src.classify_point(0).unwrap(), PointKind::Source);
    assert_eq!(q.comparable(c(1, 2), 1.into()), Some((c(1, 2), 1.into())));
    assert_eq!(q.comparable(c(1, 2), 2.into()), None);
    assert_eq!(q.mirror_map(1, 1.into()).unwrap(), 2.into());
    assert_eq!(q.mirror_map(1, 0.into()).unwrap(), 3.into());
    assert_eq!(q.mirror_map(1, c(5, 2)).unwrap(), c(1, 2));
    assert!(matches!(
        q.mirror_map(1, 4.into()),
        Err(QuiverError::OutOfWindow { .. })
    ));
    let r = q.reflect_quiver(1).unwrap();
    assert_eq!(r.breakpoints(), &[0.into(), 2.into(), 3.into()]);
    assert_eq!(r.segments(), &[Ascending, Descending, Ascending, Descending]);
    // 1→2←3←4←5 reflected at 2 is 1←2→3←4←5, with the breakpoint fixed.
    let bps: Vec<_> = (1..=5).map(|n: i64| n.into()).collect();
    let line = OrientedQuiver::new(
        bps.clone(),
        vec![Descending, Ascending, Descending, Descending, Descending, Ascending],
    )
    .unwrap();
    let r = line.reflect_quiver(1).unwrap();
    assert_eq!(r.breakpoints(), &bps[..]);
    assert_eq!(&r.segments()[1..5], &[Descending, Ascending, Descending, Descending]);
    assert!(matches!(q.reflect_quiver(0), Err(QuiverError::NoNeighbor(0))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn precedence_is_a_partial_order(q in quiver(), x in coord(), y in coord(), z in coord()) {
        prop_assert!(q.precedes(x, x));
        if q.precedes(x, y) && q.precedes(y, x) {
            prop_assert_eq!(x, y);
        }
        if q.precedes(x, y) && q.precedes(y, z) {
            prop_assert!(q.precedes(x, z));
        }
        prop_assert_eq!(q.comparable(x, y).is_some(), q.comparable(y, x).is_some());
    }

    #[test]
    fn reflection_is_an_involution((q, k) in sink_quiver()) {
        let r = q.reflect_quiver(k).unwrap();
        prop_assert_eq!(r.classify_point(k).unwrap(), PointKind::Source);
        prop_assert_eq!(&r.reflect_quiver(k).unwrap(), &q);
        let (a, _, cc) = q.window(k).unwrap();
        for (i, (&x, &y)) in q.breakpoints().iter().zip(r.breakpoints()).enumerate() {
            if x <= a || x >= cc {
                prop_assert_eq!(x, y, "breakpoint {} moved", i);
            }
        }
    }

    #[test]
    fn mirror_is_an_involution((q, k) in sink_quiver(), t in 0i64..=16) {
        let (a, b, cc) = q.window(k).unwrap();
        let x: Coord = (a.ratio() + (cc - a).ratio() * c(t, 16).ratio()).into();
        let m = q.mirror_map(k, x).unwrap();
        prop_assert_eq!(q.mirror_map(k, m).unwrap(), x);
        prop_assert_eq!(q.mirror_map(k, b).unwrap(), q.reflect_quiver(k).unwrap().breakpoints()[k]);
    }
}
