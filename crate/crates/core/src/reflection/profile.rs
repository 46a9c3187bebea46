use super::{Inconsistency, ReflectionContext, ReflectionError, Side};
use crate::barcode::cell_span_bar;
use crate::linalg::{CokernelPresentation, KernelPresentation, Matrix};
use crate::quiver::Coord;
use crate::representation::{Bar, CellPartition, Rep};

/// Pointwise value of a reflected cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellValue {
    /// Outside the open window: the input value is kept.
    Unchanged,
    Kernel(KernelPresentation),
    Cokernel(CokernelPresentation),
}

/// A canonically induced map between adjacent reflected cells, in whichever
/// direction it exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalMap {
    pub from: usize,
    pub to: usize,
    pub matrix: Matrix,
}

/// Pointwise values of a reflection on a mirror-closed partition, with the
/// canonical maps between neighboring cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimProfile {
    pub(super) side: Side,
    pub(super) input: Rep,
    pub(super) dims: Vec<usize>,
    pub(super) cells: Vec<CellValue>,
    pub(super) links: Vec<Option<CanonicalMap>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(super) enum Region {
    Outside,
    Left,
    Center,
    Right,
}

pub(super) fn region(ctx: &ReflectionContext, x: Coord) -> Region {
    let m = ctx.mirrored_center();
    if !ctx.inside(x) {
        Region::Outside
    } else if x < m {
        Region::Left
    } else if x == m {
        Region::Center
    } else {
        Region::Right
    }
}

/// The input refined so that its partition is closed under the mirror.
pub(super) fn mirror_closed(v: &Rep, ctx: &ReflectionContext) -> Rep {
    let part = CellPartition::new(ctx.mirror_closed_cuts(v.partition().cuts()));
    v.refine_to(&part)
}

impl DimProfile {
    pub fn side(&self) -> Side {
        self.side
    }

    /// The input representation on the profile's partition.
    pub fn input(&self) -> &Rep {
        &self.input
    }

    pub fn partition(&self) -> &CellPartition {
        self.input.partition()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn cells(&self) -> &[CellValue] {
        &self.cells
    }

    pub fn links(&self) -> &[Option<CanonicalMap>] {
        &self.links
    }

    pub fn dim_at(&self, x: Coord) -> usize {
        self.dims[self.partition().cell_of(x)]
    }

    pub fn kernel(&self, cell: usize) -> Option<&KernelPresentation> {
        match &self.cells[cell] {
            CellValue::Kernel(k) => Some(k),
            _ => None,
        }
    }

    pub fn cokernel(&self, cell: usize) -> Option<&CokernelPresentation> {
        match &self.cells[cell] {
            CellValue::Cokernel(c) => Some(c),
            _ => None,
        }
    }

    /// Reads the profile of a single interval module as bars: maximal runs
    /// of one-dimensional cells whose canonical connecting maps are nonzero.
    pub fn interval_bars(&self) -> Result<Vec<Bar>, ReflectionError> {
        let part = self.partition();
        if let Some(i) = self.dims.iter().position(|&d| d > 1) {
            return Err(ReflectionError::Inconsistent(Inconsistency::BarValue {
                at: part.sample(i),
                dim: self.dims[i],
            }));
        }
        let joined = |j: usize| {
            self.dims[j] == 1 && self.dims[j + 1] == 1 && self.links[j].as_ref().is_some_and(|m| !m.matrix.is_zero())
        };
        let mut bars = Vec::new();
        let mut start = None;
        for i in 0..self.dims.len() {
            if self.dims[i] == 1 && start.is_none() {
                start = Some(i);
            }
            if let Some(s) = start {
                if i + 1 == self.dims.len() || !joined(i) {
                    bars.push(cell_span_bar(part, s, i));
                    start = None;
                }
            }
        }
        Ok(bars)
    }
}
