use std::fmt;

use super::{Bar, CellPartition, RepError};
use crate::linalg::{Field, Matrix};
use crate::quiver::{Coord, Orientation, OrientedQuiver};

/// A structural problem found by [`Rep::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    MissingBreakpoint(Coord),
    DimCount {
        expected: usize,
        found: usize,
    },
    MapCount {
        expected: usize,
        found: usize,
    },
    Shape {
        link: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    Field {
        link: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingBreakpoint(x) => write!(f, "breakpoint {x} is not a cut"),
            Violation::DimCount { expected, found } => write!(f, "expected {expected} cell dimensions, found {found}"),
            Violation::MapCount { expected, found } => write!(f, "expected {expected} maps, found {found}"),
            Violation::Shape { link, expected, found } => write!(
                f,
                "map {link} has shape {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            Violation::Field { link } => write!(f, "map {link} is over the wrong field"),
        }
    }
}

/// A representation that is constant on the cells of a partition.
///
/// `maps[j]` joins cells `j` and `j + 1` and points in the direction of the
/// quiver segment containing the open cell of the pair; its shape is
/// `dims(target) × dims(source)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    quiver: OrientedQuiver,
    partition: CellPartition,
    field: Field,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Rep {
    /// Assembles a representation without checking it; see [`Rep::validate`].
    pub fn from_parts(
        quiver: OrientedQuiver,
        partition: CellPartition,
        field: Field,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Rep {
        Rep {
            quiver,
            partition,
            field,
            dims,
            maps,
        }
    }

    pub fn new(
        quiver: OrientedQuiver,
        partition: CellPartition,
        field: Field,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Rep, RepError> {
        let rep = Rep::from_parts(quiver, partition, field, dims, maps);
        let violations = rep.validate();
        if violations.is_empty() {
            Ok(rep)
        } else {
            Err(RepError::Invalid(violations))
        }
    }

    pub fn zero(quiver: &OrientedQuiver, field: Field) -> Rep {
        let partition = CellPartition::new(quiver.breakpoints().to_vec());
        let dims = vec![0; partition.cell_count()];
        let maps = vec![Matrix::zeros(field, 0, 0); partition.link_count()];
        Rep::from_parts(quiver.clone(), partition, field, dims, maps)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for &s in self.quiver.breakpoints() {
            if !self.partition.contains_cut(s) {
                out.push(Violation::MissingBreakpoint(s));
            }
        }
        if self.dims.len() != self.partition.cell_count() {
            out.push(Violation::DimCount {
                expected: self.partition.cell_count(),
                found: self.dims.len(),
            });
            return out;
        }
        if self.maps.len() != self.partition.link_count() {
            out.push(Violation::MapCount {
                expected: self.partition.link_count(),
                found: self.maps.len(),
            });
            return out;
        }
        for (j, m) in self.maps.iter().enumerate() {
            let expected = (self.dims[self.link_target(j)], self.dims[self.link_source(j)]);
            if m.shape() != expected {
                out.push(Violation::Shape {
                    link: j,
                    expected,
                    found: m.shape(),
                });
            }
            if m.field() != self.field {
                out.push(Violation::Field { link: j });
            }
        }
        out
    }

    pub fn quiver(&self) -> &OrientedQuiver {
        &self.quiver
    }

    pub fn partition(&self) -> &CellPartition {
        &self.partition
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, link: usize) -> &Matrix {
        &self.maps[link]
    }

    pub fn cell_count(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// True when link `j` maps cell `j` to cell `j + 1`.
    pub fn link_forward(&self, j: usize) -> bool {
        link_forward(&self.quiver, &self.partition, j)
    }

    pub fn link_source(&self, j: usize) -> usize {
        if self.link_forward(j) {
            j
        } else {
            j + 1
        }
    }

    pub fn link_target(&self, j: usize) -> usize {
        if self.link_forward(j) {
            j + 1
        } else {
            j
        }
    }

    pub fn dim_at(&self, x: Coord) -> usize {
        self.dims[self.partition.cell_of(x)]
    }

    /// `V(x, y)` for `x ⪯ y`: the composite of the stored maps between the cells.
    pub fn map_along(&self, x: Coord, y: Coord) -> Result<Matrix, RepError> {
        if !self.quiver.precedes(x, y) {
            return Err(RepError::Incomparable { x, y });
        }
        Ok(self.cell_path(self.partition.cell_of(x), self.partition.cell_of(y)))
    }

    /// Composite of stored maps from cell `from` to cell `to`; the caller
    /// guarantees that every link in between points from `from` toward `to`.
    pub fn cell_path(&self, from: usize, to: usize) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.dims[from]);
        if from <= to {
            for j in from..to {
                debug_assert!(self.link_forward(j));
                acc = self.maps[j].mul(&acc);
            }
        } else {
            for j in (to..from).rev() {
                debug_assert!(!self.link_forward(j));
                acc = self.maps[j].mul(&acc);
            }
        }
        acc
    }

    /// The same representation on a finer partition; new cuts split cells and
    /// are joined by identities.
    pub fn refine_to(&self, target: &CellPartition) -> Rep {
        assert!(
            self.partition.cuts().iter().all(|&c| target.contains_cut(c)),
            "refine_to needs a refinement"
        );
        if target == &self.partition {
            return self.clone();
        }
        let old: Vec<usize> = (0..target.cell_count())
            .map(|i| self.partition.cell_of(target.sample(i)))
            .collect();
        let dims: Vec<usize> = old.iter().map(|&o| self.dims[o]).collect();
        let maps = (0..target.link_count())
            .map(|j| {
                let (a, b) = (old[j], old[j + 1]);
                if a == b {
                    Matrix::identity(self.field, dims[j])
                } else {
                    debug_assert_eq!(a + 1, b);
                    self.maps[a].clone()
                }
            })
            .collect();
        Rep::from_parts(self.quiver.clone(), target.clone(), self.field, dims, maps)
    }

    pub fn refine_partition(&self, extra: &[Coord]) -> Rep {
        self.refine_to(&self.partition.with_cuts(extra))
    }

    pub fn direct_sum(&self, other: &Rep) -> Result<Rep, RepError> {
        if self.field != other.field {
            return Err(RepError::FieldMismatch);
        }
        if self.quiver != other.quiver {
            return Err(RepError::QuiverMismatch);
        }
        let part = self.partition.merge(&other.partition);
        let a = self.refine_to(&part);
        let b = other.refine_to(&part);
        let dims = a.dims.iter().zip(&b.dims).map(|(x, y)| x + y).collect();
        let maps = a
            .maps
            .iter()
            .zip(&b.maps)
            .map(|(x, y)| Matrix::block_diag(x, y))
            .collect();
        Ok(Rep::from_parts(self.quiver.clone(), part, self.field, dims, maps))
    }

    /// The change of basis `maps[j] ↦ P_t · maps[j] · P_s⁻¹` by per-cell invertibles.
    pub fn conjugate(&self, bases: &[Matrix]) -> Result<Rep, RepError> {
        if bases.len() != self.cell_count() {
            return Err(RepError::Shape(format!("expected {} cell matrices", self.cell_count())));
        }
        let inverses: Vec<Matrix> = bases
            .iter()
            .enumerate()
            .map(|(i, p)| {
                if p.shape() != (self.dims[i], self.dims[i]) {
                    return Err(RepError::Shape(format!(
                        "cell {i} needs a square matrix of size {}",
                        self.dims[i]
                    )));
                }
                p.inverse()
                    .ok_or_else(|| RepError::Shape(format!("cell {i} matrix is singular")))
            })
            .collect::<Result<_, _>>()?;
        let maps = (0..self.maps.len())
            .map(|j| {
                let (s, t) = (self.link_source(j), self.link_target(j));
                bases[t].mul(&self.maps[j]).mul(&inverses[s])
            })
            .collect();
        Ok(Rep { maps, ..self.clone() })
    }

    /// Direct sum of interval modules, one per bar, in the given order. Each
    /// cell's basis lists the bars covering it.
    pub fn from_bars(quiver: &OrientedQuiver, bars: &[Bar], field: Field) -> Rep {
        let mut cuts = quiver.breakpoints().to_vec();
        cuts.extend(bars.iter().flat_map(Bar::endpoints));
        let partition = CellPartition::new(cuts);
        let members: Vec<Vec<usize>> = (0..partition.cell_count())
            .map(|i| {
                let x = partition.sample(i);
                (0..bars.len()).filter(|&b| bars[b].contains(x)).collect()
            })
            .collect();
        let dims: Vec<usize> = members.iter().map(Vec::len).collect();
        let maps = (0..partition.link_count())
            .map(|j| {
                let (s, t) = if link_forward(quiver, &partition, j) {
                    (j, j + 1)
                } else {
                    (j + 1, j)
                };
                let mut m = Matrix::zeros(field, dims[t], dims[s]);
                for (col, b) in members[s].iter().enumerate() {
                    if let Ok(row) = members[t].binary_search(b) {
                        m.set(row, col, field.one());
                    }
                }
                m
            })
            .collect();
        Rep::from_parts(quiver.clone(), partition, field, dims, maps)
    }

    pub fn interval_module(quiver: &OrientedQuiver, bar: Bar, field: Field) -> Rep {
        Rep::from_bars(quiver, &[bar], field)
    }
}

pub(crate) fn link_forward(quiver: &OrientedQuiver, partition: &CellPartition, j: usize) -> bool {
    let open = if j % 2 == 0 { j } else { j + 1 };
    quiver.orientation_at(partition.sample(open)) == Orientation::Ascending
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Orientation::*;

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

    const F: Field = Field::Prime(32003);

    #[test]
    fn interval_module_dims() {
        let q = q013();
        let v = Rep::interval_module(&q, Bar::closed(0.into(), c(5, 2)), F);
        assert!(v.validate().is_empty());
        assert_eq!(v.dim_at(1.into()), 1);
        assert_eq!(v.dim_at(c(27, 10)), 0);
        assert_eq!(v.dim_at(0.into()), 1);
        assert_eq!(v.dim_at((-1).into()), 0);
        let p = Rep::interval_module(&q, Bar::point(1.into()), F);
        assert_eq!(p.total_dim(), 1);
        assert_eq!(p.dim_at(1.into()), 1);
        let h = Rep::interval_module(&q, Bar::closed_open(0.into(), 1.into()), F);
        assert_eq!(h.dim_at(1.into()), 0);
        assert_eq!(h.dim_at(c(1, 2)), 1);
    }

    #[test]
    fn maps_along_the_order() {
        let q = q013();
        let v = Rep::interval_module(&q, Bar::closed(0.into(), c(5, 2)), F);
        assert!(v.map_along(c(1, 5), 1.into()).unwrap().is_identity());
        assert!(v.map_along(c(5, 2), 1.into()).unwrap().is_identity());
        assert!(v.map_along(c(1, 2), c(1, 2)).unwrap().is_identity());
        assert!(matches!(
            v.map_along(c(1, 2), 2.into()),
            Err(RepError::Incomparable { .. })
        ));
        let h = Rep::interval_module(&q, Bar::closed_open(0.into(), 1.into()), F);
        assert_eq!(h.map_along(c(1, 2), 1.into()).unwrap().shape(), (0, 1));
    }

    #[test]
    fn shape_violation_reported() {
        let q = q013();
        let mut v = Rep::interval_module(&q, Bar::closed(0.into(), 3.into()), F);
        v.maps[2] = Matrix::zeros(F, 2, 1);
        let violations = v.validate();
        assert_eq!(violations.len(), 1);
        assert!(matches!(violations[0], Violation::Shape { link: 2, .. }));
    }

    #[test]
    fn direct_sum_adds_dims() {
        let q = q013();
        let a = Rep::interval_module(&q, Bar::closed(0.into(), c(5, 2)), F);
        let b = Rep::interval_module(&q, Bar::closed(0.into(), c(3, 2)), F);
        let s = a.direct_sum(&b).unwrap();
        assert!(s.validate().is_empty());
        assert_eq!(s.dim_at(c(6, 5)), 2);
        assert_eq!(s.dim_at(2.into()), 1);
        let z = Rep::zero(&q, F);
        assert_eq!(a.direct_sum(&z).unwrap(), a);
        assert_eq!(
            a.direct_sum(&Rep::zero(&q, Field::Rationals)),
            Err(RepError::FieldMismatch)
        );
    }

    #[test]
    fn refinement_keeps_values() {
        let q = q013();
        let v = Rep::interval_module(&q, Bar::open_closed(c(1, 2), c(5, 2)), F);
        assert_eq!(v.refine_partition(&[1.into()]), v);
        let r = v.refine_partition(&[c(3, 4), c(2, 1), c(7, 1)]);
        assert!(r.validate().is_empty());
        for n in -10..50 {
            let x = c(n, 8);
            assert_eq!(r.dim_at(x), v.dim_at(x));
        }
    }
}
