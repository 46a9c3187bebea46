//! Rejection samplers for the two subcategories.

use rand::Rng;

use super::{in_overline_rep, in_underline_rep, ReflectionError};
use crate::linalg::Field;
use crate::quiver::{Coord, OrientedQuiver};
use crate::representation::random::{fill_bars, random_bar, random_cuts, rng_from_seed, scramble};
use crate::representation::{Bar, Budget, CellPartition, Endpoint, Rep};

const ATTEMPTS: usize = 200;

/// Half the time a bar with one closed end at a window endpoint.
fn biased_bar<R: Rng>(rng: &mut R, cuts: &[Coord], ends: (Coord, Coord)) -> Bar {
    if rng.gen_bool(0.5) {
        return random_bar(rng, cuts);
    }
    let anchor = if rng.gen_bool(0.5) { ends.0 } else { ends.1 };
    let other = if rng.gen_ratio(1, 10) {
        None
    } else {
        Some(cuts[rng.gen_range(0..cuts.len())])
    };
    let open = rng.gen_bool(0.5);
    let bar = match other {
        None if rng.gen_bool(0.5) => Bar::new(Endpoint::Infinite, Endpoint::Closed(anchor)),
        None => Bar::new(Endpoint::Closed(anchor), Endpoint::Infinite),
        Some(o) if o == anchor => Ok(Bar::point(anchor)),
        Some(o) if o < anchor => Bar::new(
            if open { Endpoint::Open(o) } else { Endpoint::Closed(o) },
            Endpoint::Closed(anchor),
        ),
        Some(o) => Bar::new(
            Endpoint::Closed(anchor),
            if open { Endpoint::Open(o) } else { Endpoint::Closed(o) },
        ),
    };
    bar.expect("distinct finite ends")
}

fn sample(
    quiver: &OrientedQuiver,
    k: usize,
    budget: Budget,
    seed: u64,
    field: Field,
    accept: impl Fn(&Rep) -> Result<bool, ReflectionError>,
) -> Result<Option<Rep>, ReflectionError> {
    let (a, _, c) = quiver.window(k)?;
    let mut rng = rng_from_seed(seed);
    for _ in 0..ATTEMPTS {
        let cuts = random_cuts(&mut rng, quiver, budget.max_cuts);
        let count = rng.gen_range(0..=budget.max_bars);
        let bars = fill_bars(&mut rng, &cuts, count, budget.max_dim, |r| biased_bar(r, &cuts, (a, c)));
        let v = Rep::from_bars(quiver, &bars, field).refine_to(&CellPartition::new(cuts));
        if accept(&v)? {
            return Ok(Some(scramble(&mut rng, &v)));
        }
    }
    Ok(None)
}

/// A random representation at sink `k` with `(V(S_{k-1},S_k) | -V(S_{k+1},S_k))` onto.
pub fn sample_overline(
    quiver: &OrientedQuiver,
    k: usize,
    budget: Budget,
    seed: u64,
    field: Field,
) -> Result<Option<Rep>, ReflectionError> {
    sample(quiver, k, budget, seed, field, |v| Ok(in_overline_rep(v, k)?.holds))
}

/// A random representation at source `k` with `(W(S'_k,S_{k+1}); -W(S'_k,S_{k-1}))` injective.
pub fn sample_underline(
    quiver: &OrientedQuiver,
    k: usize,
    budget: Budget,
    seed: u64,
    field: Field,
) -> Result<Option<Rep>, ReflectionError> {
    sample(quiver, k, budget, seed, field, |w| Ok(in_underline_rep(w, k)?.holds))
}
