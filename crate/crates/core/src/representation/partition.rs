use crate::quiver::Coord;

/// A decomposition of the line into points and open intervals.
///
/// With cuts `c_0 < … < c_{m-1}` the cells are indexed `0..2m+1`: even index
/// `2i` is the open interval `(c_{i-1}, c_i)` (unbounded at the ends) and odd
/// index `2i + 1` is the point `{c_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CellPartition {
    cuts: Vec<Coord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    Open(Option<Coord>, Option<Coord>),
    Point(Coord),
}

impl CellPartition {
    /// Sorts and deduplicates the cuts.
    pub fn new(mut cuts: Vec<Coord>) -> CellPartition {
        cuts.sort();
        cuts.dedup();
        CellPartition { cuts }
    }

    pub fn cuts(&self) -> &[Coord] {
        &self.cuts
    }

    pub fn cell_count(&self) -> usize {
        2 * self.cuts.len() + 1
    }

    pub fn link_count(&self) -> usize {
        2 * self.cuts.len()
    }

    pub fn cell(&self, idx: usize) -> Cell {
        if idx % 2 == 1 {
            Cell::Point(self.cuts[idx / 2])
        } else {
            let i = idx / 2;
            let lo = i.checked_sub(1).map(|j| self.cuts[j]);
            Cell::Open(lo, self.cuts.get(i).copied())
        }
    }

    pub fn cell_of(&self, x: Coord) -> usize {
        match self.cuts.binary_search(&x) {
            Ok(i) => 2 * i + 1,
            Err(i) => 2 * i,
        }
    }

    pub fn cut_cell(&self, x: Coord) -> Option<usize> {
        self.cuts.binary_search(&x).ok().map(|i| 2 * i + 1)
    }

    /// A representative point of the cell.
    pub fn sample(&self, idx: usize) -> Coord {
        match self.cell(idx) {
            Cell::Point(x) => x,
            Cell::Open(Some(a), Some(b)) => a.midpoint(b),
            Cell::Open(Some(a), None) => a + Coord::int(1),
            Cell::Open(None, Some(b)) => b - Coord::int(1),
            Cell::Open(None, None) => Coord::int(0),
        }
    }

    /// Partition whose cuts are the union of both.
    pub fn merge(&self, other: &CellPartition) -> CellPartition {
        CellPartition::new(self.cuts.iter().chain(&other.cuts).copied().collect())
    }

    pub fn with_cuts(&self, extra: &[Coord]) -> CellPartition {
        CellPartition::new(self.cuts.iter().chain(extra).copied().collect())
    }

    pub fn contains_cut(&self, x: Coord) -> bool {
        self.cuts.binary_search(&x).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_alternate() {
        let p = CellPartition::new(vec![Coord::int(3), Coord::int(0), Coord::int(1)]);
        assert_eq!(p.cell_count(), 7);
        assert_eq!(p.cell(0), Cell::Open(None, Some(Coord::int(0))));
        assert_eq!(p.cell(3), Cell::Point(Coord::int(1)));
        assert_eq!(p.cell_of(Coord::int(1)), 3);
        assert_eq!(p.cell_of(Coord::int(2)), 4);
        assert_eq!(p.cell_of(Coord::int(9)), 6);
        for i in 0..p.cell_count() {
            assert_eq!(p.cell_of(p.sample(i)), i);
        }
        let empty = CellPartition::default();
        assert_eq!(empty.cell_count(), 1);
        assert_eq!(empty.cell_of(empty.sample(0)), 0);
    }
}
