#![allow(dead_code)]

use proptest::prelude::*;
use quiver_reflect::quiver::{Coord, Orientation, OrientedQuiver};

pub fn c(n: i64, d: i64) -> Coord {
    Coord::new(n, d).unwrap()
}

/// The sink quiver with breakpoints 0, 1, 3.
pub fn q013() -> OrientedQuiver {
    use Orientation::*;
    OrientedQuiver::new(
        vec![0.into(), 1.into(), 3.into()],
        vec![Ascending, Ascending, Descending, Descending],
    )
    .unwrap()
}

pub fn orientation() -> impl Strategy<Value = Orientation> {
    prop_oneof![Just(Orientation::Ascending), Just(Orientation::Descending)]
}

/// A quiver with 1..=5 integer or half-integer breakpoints in [-4, 8].
pub fn quiver() -> impl Strategy<Value = OrientedQuiver> {
    prop::collection::btree_set(-8i64..=16, 1..=5).prop_flat_map(|set| {
        let bps: Vec<Coord> = set.into_iter().map(|n| c(n, 2)).collect();
        let len = bps.len() + 1;
        prop::collection::vec(orientation(), len).prop_map(move |segs| OrientedQuiver::new(bps.clone(), segs).unwrap())
    })
}

/// A quiver with at least three breakpoints and a sink at the returned index.
pub fn sink_quiver() -> impl Strategy<Value = (OrientedQuiver, usize)> {
    prop::collection::btree_set(-8i64..=16, 3..=5).prop_flat_map(|set| {
        let bps: Vec<Coord> = set.into_iter().map(|n| c(n, 2)).collect();
        let len = bps.len() + 1;
        (prop::collection::vec(orientation(), len), 1..bps.len() - 1).prop_map(move |(mut segs, k)| {
            segs[k] = Orientation::Ascending;
            segs[k + 1] = Orientation::Descending;
            (OrientedQuiver::new(bps.clone(), segs).unwrap(), k)
        })
    })
}

pub fn coord() -> impl Strategy<Value = Coord> {
    (-20i64..=40).prop_map(|n| c(n, 4))
}
