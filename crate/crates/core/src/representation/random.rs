//! Seeded random representations with a known (planted) barcode.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Bar, CellPartition, Endpoint, Rep};
use crate::linalg::{Field, Matrix, Scalar};
use crate::quiver::{Coord, OrientedQuiver};

/// Size bounds for generated representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_bars: usize,
    /// Upper bound on the total number of cuts, breakpoints included.
    pub max_cuts: usize,
    /// Upper bound on every cell dimension.
    pub max_dim: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_bars: 6,
            max_cuts: 8,
            max_dim: 6,
        }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar<R: Rng>(rng: &mut R, field: Field) -> Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
        Field::Rationals => field.from_i64(rng.gen_range(-3..=3)),
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, field: Field, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols).map(|_| random_scalar(rng, field)).collect();
    Matrix::from_scalars(field, rows, cols, data).expect("generated entries belong to the field")
}

pub fn random_invertible<R: Rng>(rng: &mut R, field: Field, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, field, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Cut positions on a half-integer grid around the breakpoints: the
/// breakpoints plus up to `max_cuts - |S|` extra grid points.
pub fn random_cuts<R: Rng>(rng: &mut R, quiver: &OrientedQuiver, max_cuts: usize) -> Vec<Coord> {
    let s = quiver.breakpoints();
    let (lo, hi) = match (s.first(), s.last()) {
        (Some(&a), Some(&b)) => (a - Coord::int(1), b + Coord::int(1)),
        _ => (Coord::int(-2), Coord::int(2)),
    };
    let half = Coord::new(1, 2).expect("nonzero denominator");
    let mut grid = Vec::new();
    let mut x = lo;
    while x <= hi {
        if quiver.index_of(x).is_none() {
            grid.push(x);
        }
        x = x + half;
    }
    let extra = rng.gen_range(0..=max_cuts.saturating_sub(s.len()).min(grid.len()));
    let mut cuts = s.to_vec();
    for _ in 0..extra {
        let i = rng.gen_range(0..grid.len());
        cuts.push(grid.swap_remove(i));
    }
    cuts.sort();
    cuts
}

/// A random bar with finite endpoints among `cuts` (rarely infinite).
pub fn random_bar<R: Rng>(rng: &mut R, cuts: &[Coord]) -> Bar {
    if cuts.is_empty() {
        return Bar::full();
    }
    let i = rng.gen_range(0..cuts.len());
    let j = rng.gen_range(i..cuts.len());
    let lo = if rng.gen_ratio(1, 10) {
        Endpoint::Infinite
    } else if i != j && rng.gen_bool(0.5) {
        Endpoint::Open(cuts[i])
    } else {
        Endpoint::Closed(cuts[i])
    };
    let hi = if rng.gen_ratio(1, 10) {
        Endpoint::Infinite
    } else if i == j && lo.is_closed() {
        Endpoint::Closed(cuts[j])
    } else if i != j && rng.gen_bool(0.5) {
        Endpoint::Open(cuts[j])
    } else {
        Endpoint::Closed(cuts[j])
    };
    Bar::new(lo, hi).expect("i == j forces closed ends")
}

/// Adds bars from `draw` until `count` are accepted, skipping any that would
/// push a cell above `max_dim`. Gives up after a bounded number of attempts.
pub fn fill_bars<R: Rng>(
    rng: &mut R,
    cuts: &[Coord],
    count: usize,
    max_dim: usize,
    mut draw: impl FnMut(&mut R) -> Bar,
) -> Vec<Bar> {
    let part = CellPartition::new(cuts.to_vec());
    let mut load = vec![0usize; part.cell_count()];
    let mut bars = Vec::new();
    let mut attempts = 0;
    while bars.len() < count && attempts < 20 * (count + 1) {
        attempts += 1;
        let b = draw(rng);
        let cells: Vec<usize> = (0..part.cell_count()).filter(|&i| b.contains(part.sample(i))).collect();
        if cells.iter().all(|&i| load[i] < max_dim) {
            for i in cells {
                load[i] += 1;
            }
            bars.push(b);
        }
    }
    bars.sort();
    bars
}

/// Scrambles a representation by a random invertible change of basis per cell.
pub fn scramble<R: Rng>(rng: &mut R, v: &Rep) -> Rep {
    let bases: Vec<Matrix> = v.dims().iter().map(|&d| random_invertible(rng, v.field(), d)).collect();
    v.conjugate(&bases).expect("bases are invertible and sized per cell")
}

/// A random representation together with the bars it was built from.
pub fn random_planted(quiver: &OrientedQuiver, budget: Budget, seed: u64, field: Field) -> (Rep, Vec<Bar>) {
    let mut rng = rng_from_seed(seed);
    let cuts = random_cuts(&mut rng, quiver, budget.max_cuts);
    let count = rng.gen_range(0..=budget.max_bars);
    let bars = fill_bars(&mut rng, &cuts, count, budget.max_dim, |r| random_bar(r, &cuts));
    let v = Rep::from_bars(quiver, &bars, field).refine_to(&CellPartition::new(cuts));
    (scramble(&mut rng, &v), bars)
}

pub fn random_rep(quiver: &OrientedQuiver, budget: Budget, seed: u64, field: Field) -> Rep {
    random_planted(quiver, budget, seed, field).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Orientation::*;

    fn q013() -> OrientedQuiver {
        OrientedQuiver::new(
            vec![0.into(), 1.into(), 3.into()],
            vec![Ascending, Ascending, Descending, Descending],
        )
        .unwrap()
    }

    #[test]
    fn deterministic_and_valid() {
        let q = q013();
        let f = Field::Prime(32003);
        for seed in 0..20 {
            let a = random_rep(&q, Budget::default(), seed, f);
            assert_eq!(a, random_rep(&q, Budget::default(), seed, f));
            assert!(a.validate().is_empty());
            assert!(a.partition().cuts().len() <= 8);
            assert!(a.dims().iter().all(|&d| d <= 6));
        }
    }

    #[test]
    fn empty_budget_gives_zero() {
        let budget = Budget {
            max_bars: 0,
            ..Budget::default()
        };
        let v = random_rep(&q013(), budget, 3, Field::Rationals);
        assert!(v.is_zero());
    }
}
