//! Interval decomposition of cell representations.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::linalg::{cokernel_basis, kernel_of_difference, Field, Matrix};
use crate::quiver::OrientedQuiver;
use crate::representation::{Bar, CellPartition, Endpoint, Rep, RepError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BarcodeError {
    #[error("decomposition does not reproduce the dimension of cell {cell}: expected {expected}, found {found}")]
    DecompositionMismatch { cell: usize, expected: usize, found: usize },
    #[error("negative multiplicity for cells {lo}..={hi}")]
    NegativeMultiplicity { lo: usize, hi: usize },
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// A multiset of bars in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Barcode {
    bars: BTreeMap<Bar, usize>,
}

impl Barcode {
    pub fn new() -> Barcode {
        Barcode::default()
    }

    pub fn insert(&mut self, bar: Bar, mult: usize) {
        if mult > 0 {
            *self.bars.entry(bar).or_insert(0) += mult;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Bar, usize)> {
        self.bars.iter().map(|(b, &m)| (b, m))
    }

    /// Bars with repetition, in canonical order.
    pub fn to_vec(&self) -> Vec<Bar> {
        self.iter().flat_map(|(b, m)| std::iter::repeat(*b).take(m)).collect()
    }

    pub fn multiplicity(&self, bar: &Bar) -> usize {
        self.bars.get(bar).copied().unwrap_or(0)
    }

    /// Number of bars counted with multiplicity.
    pub fn len(&self) -> usize {
        self.bars.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Multiset union.
    pub fn union(&self, other: &Barcode) -> Barcode {
        let mut out = self.clone();
        for (b, m) in other.iter() {
            out.insert(*b, m);
        }
        out
    }

    pub fn without_one(&self, bar: &Bar) -> Barcode {
        let mut out = self.clone();
        if let Some(m) = out.bars.get_mut(bar) {
            *m -= 1;
            if *m == 0 {
                out.bars.remove(bar);
            }
        }
        out
    }
}

impl FromIterator<Bar> for Barcode {
    fn from_iter<I: IntoIterator<Item = Bar>>(iter: I) -> Barcode {
        let mut bc = Barcode::new();
        for b in iter {
            bc.insert(b, 1);
        }
        bc
    }
}

impl fmt::Display for Barcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (b, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if m == 1 {
                write!(f, "{b}")?;
            } else {
                write!(f, "{b}x{m}")?;
            }
        }
        write!(f, "}}")
    }
}

/// Rank of the canonical map from the limit to the colimit of `v` restricted
/// to cells `lo..=hi`, computed from block matrices over the whole range.
pub fn generalized_rank(v: &Rep, lo: usize, hi: usize) -> usize {
    assert!(lo <= hi && hi < v.cell_count(), "cell range out of order");
    let field = v.field();
    let dims = &v.dims()[lo..=hi];
    let mut offset = vec![0usize];
    for d in dims {
        offset.push(offset.last().unwrap() + d);
    }
    let total = *offset.last().unwrap();
    // One block row per link: M x_s - x_t = 0 defines the limit.
    let links: Vec<usize> = (lo..hi).collect();
    let rows: usize = links.iter().map(|&j| v.dims()[v.link_target(j)]).sum();
    let mut d = Matrix::zeros(field, rows, total);
    let mut r = 0;
    for &j in &links {
        let (s, t) = (v.link_source(j) - lo, v.link_target(j) - lo);
        d.paste(r, offset[s], v.map(j));
        d.paste(r, offset[t], &Matrix::identity(field, dims[t]).neg());
        r += dims[t];
    }
    let limit = d.null_space();
    // The colimit quotients the sum by the images of ι_t M - ι_s over links.
    let rel_cols: usize = links.iter().map(|&j| v.dims()[v.link_source(j)]).sum();
    let mut rel = Matrix::zeros(field, total, rel_cols);
    let mut col = 0;
    for &j in &links {
        let (s, t) = (v.link_source(j) - lo, v.link_target(j) - lo);
        rel.paste(offset[t], col, v.map(j));
        rel.paste(offset[s], col, &Matrix::identity(field, dims[s]).neg());
        col += dims[s];
    }
    let colimit = cokernel_basis(&rel);
    // Limit -> V(lo) -> colimit.
    let mut through_lo = Matrix::zeros(field, total, total);
    for i in 0..dims[0] {
        through_lo.set(i, i, field.one());
    }
    colimit.projection().mul(&through_lo).mul(&limit).rank()
}

/// Ranks `r(i, j)` for all `i <= j` (zero elsewhere), by sweeping each right
/// end leftward while tracking the image of the limit and the kernel into the
/// colimit at the current cell.
fn rank_table(v: &Rep) -> Vec<Vec<usize>> {
    let n = v.cell_count();
    let field = v.field();
    let mut table = vec![vec![0usize; n]; n];
    for j in 0..n {
        let mut img = Matrix::identity(field, v.dims()[j]);
        let mut ker = Matrix::zeros(field, v.dims()[j], 0);
        table[j][j] = v.dims()[j];
        for m in (0..j).rev() {
            let link = v.map(m);
            if v.link_forward(m) {
                img = preimage(link, &img);
                ker = preimage(link, &ker);
            } else {
                img = link.mul(&img).column_space();
                ker = link.mul(&ker).column_space();
            }
            let both = Matrix::hstack(field, v.dims()[m], &[&img, &ker]);
            let r = both.rank() - ker.cols();
            table[m][j] = r;
            if r == 0 {
                // Ranks only shrink as the range widens.
                break;
            }
        }
    }
    table
}

/// Basis of `{x : f x ∈ span(s)}`.
fn preimage(f: &Matrix, s: &Matrix) -> Matrix {
    let k = kernel_of_difference(f, s);
    k.first().column_space()
}

/// The bar covering cells `i..=j` of a partition.
pub fn cell_span_bar(part: &CellPartition, i: usize, j: usize) -> Bar {
    let cuts = part.cuts();
    let lo = if i == 0 {
        Endpoint::Infinite
    } else if i % 2 == 1 {
        Endpoint::Closed(cuts[i / 2])
    } else {
        Endpoint::Open(cuts[i / 2 - 1])
    };
    let hi = if j + 1 == part.cell_count() {
        Endpoint::Infinite
    } else if j % 2 == 1 {
        Endpoint::Closed(cuts[j / 2])
    } else {
        Endpoint::Open(cuts[j / 2])
    };
    Bar::new(lo, hi).expect("cell spans are valid bars")
}

/// The barcode of `v`. Multiplicities come from inclusion-exclusion over
/// generalized ranks; the dimension identity is checked before returning.
pub fn decompose(v: &Rep) -> Result<Barcode, BarcodeError> {
    let violations = v.validate();
    if !violations.is_empty() {
        return Err(RepError::Invalid(violations).into());
    }
    let n = v.cell_count();
    let r = rank_table(v);
    let at = |i: isize, j: usize| -> i64 {
        if i < 0 || j >= n {
            0
        } else {
            r[i as usize][j] as i64
        }
    };
    let mut bc = Barcode::new();
    let mut cover = vec![0usize; n];
    for i in 0..n {
        for j in i..n {
            let ii = i as isize;
            let m = at(ii, j) - at(ii - 1, j) - at(ii, j + 1) + at(ii - 1, j + 1);
            if m < 0 {
                return Err(BarcodeError::NegativeMultiplicity { lo: i, hi: j });
            }
            if m > 0 {
                bc.insert(cell_span_bar(v.partition(), i, j), m as usize);
                for c in &mut cover[i..=j] {
                    *c += m as usize;
                }
            }
        }
    }
    for (cell, (&expected, &found)) in v.dims().iter().zip(&cover).enumerate() {
        if expected != found {
            return Err(BarcodeError::DecompositionMismatch { cell, expected, found });
        }
    }
    Ok(bc)
}

pub fn rebuild(quiver: &OrientedQuiver, bc: &Barcode, field: Field) -> Rep {
    Rep::from_bars(quiver, &bc.to_vec(), field)
}

pub fn is_isomorphic(v: &Rep, w: &Rep) -> Result<bool, BarcodeError> {
    if v.quiver() != w.quiver() {
        return Err(RepError::QuiverMismatch.into());
    }
    Ok(decompose(v)? == decompose(w)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{Coord, Orientation::*};
    use crate::representation::{random_planted, Budget};

    const F: Field = Field::Prime(32003);

    fn c(n: i64, d: i64) -> Coord {
        Coord::new(n, d).unwrap()
    }

    fn q013() -> OrientedQuiver {
        OrientedQuiver::new(
            vec![0.into(), 1.into(), 3.into()],
            vec![Ascending, Ascending, Descending, Descending],
        )
        .unwrap()
    }

    #[test]
    fn ranks_of_simple_modules() {
        let q = q013();
        let v = Rep::interval_module(&q, Bar::closed(0.into(), c(5, 2)), F);
        let first = v.partition().cell_of(0.into());
        let last = v.partition().cell_of(c(5, 2));
        assert_eq!(generalized_rank(&v, first, last), 1);
        assert_eq!(generalized_rank(&v, first, first), 1);
        assert_eq!(generalized_rank(&v, 0, last), 0);
    }

    #[test]
    fn rank_of_sum_with_point() {
        // I_[0,1] ⊕ I_{1/2}: only the long bar spans the range.
        let q = q013();
        let v = Rep::interval_module(&q, Bar::closed(0.into(), 1.into()), F)
            .direct_sum(&Rep::interval_module(&q, Bar::point(c(1, 2)), F))
            .unwrap();
        let lo = v.partition().cell_of(0.into());
        let hi = v.partition().cell_of(1.into());
        assert_eq!(generalized_rank(&v, lo, hi), 1);
        let mid = v.partition().cell_of(c(1, 2));
        assert_eq!(generalized_rank(&v, mid, mid), 2);
    }

    #[test]
    fn sweep_matches_block_ranks() {
        let q = q013();
        for seed in 0..30 {
            let (v, _) = random_planted(&q, Budget::default(), seed, F);
            let t = rank_table(&v);
            for i in 0..v.cell_count() {
                for j in i..v.cell_count() {
                    assert_eq!(t[i][j], generalized_rank(&v, i, j), "seed {seed} cells {i}..={j}");
                }
            }
        }
    }

    #[test]
    fn planted_barcodes_are_recovered() {
        let q = q013();
        for seed in 0..50 {
            let (v, bars) = random_planted(&q, Budget::default(), seed, F);
            let bc = decompose(&v).unwrap();
            assert_eq!(bc, bars.into_iter().collect::<Barcode>(), "seed {seed}");
            assert_eq!(decompose(&rebuild(&q, &bc, F)).unwrap(), bc);
        }
    }

    #[test]
    fn zero_and_single_bars() {
        let q = q013();
        assert!(decompose(&Rep::zero(&q, F)).unwrap().is_empty());
        for bar in [Bar::closed_open(0.into(), 1.into()), Bar::point(3.into()), Bar::full()] {
            let bc = decompose(&Rep::interval_module(&q, bar, F)).unwrap();
            assert_eq!(bc.to_vec(), vec![bar]);
        }
    }

    #[test]
    fn isomorphism_checks() {
        let q = q013();
        let v = Rep::interval_module(&q, Bar::closed(0.into(), c(5, 2)), F);
        assert!(is_isomorphic(&v, &v.refine_partition(&[c(1, 3)])).unwrap());
        let w = v
            .direct_sum(&Rep::interval_module(&q, Bar::point(2.into()), F))
            .unwrap();
        assert!(!is_isomorphic(&v, &w).unwrap());
    }
}
