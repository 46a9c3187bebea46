//! Representations of the finite line quiver `0 — 1 — … — (n-1)` and their
//! reflection at a sink, computed directly. Used to cross-check the
//! continuous construction through an integer encoding.

use rand::Rng;
use thiserror::Error;

use crate::linalg::{kernel_basis, Field, Matrix};
use crate::quiver::{Coord, Orientation, OrientedQuiver};
use crate::representation::random::{random_matrix, rng_from_seed};
use crate::representation::{CellPartition, Rep};

/// Direction of the arrow between vertices `i` and `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Arrow {
    /// `i → i+1`.
    Right,
    /// `i ← i+1`.
    Left,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassicalError {
    #[error("vertex {0} is not an interior sink")]
    NotSink(usize),
    #[error("need {expected} arrows and maps for {vertices} vertices")]
    Shape { vertices: usize, expected: usize },
}

/// A representation of a line quiver: one space per vertex and one matrix
/// per arrow, from its tail to its head.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineRep {
    field: Field,
    arrows: Vec<Arrow>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl LineRep {
    pub fn new(
        field: Field,
        arrows: Vec<Arrow>,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<LineRep, ClassicalError> {
        let n = dims.len();
        let shape_ok = n > 0
            && arrows.len() == n - 1
            && maps.len() == n - 1
            && maps.iter().enumerate().all(|(i, m)| {
                let (t, h) = ends(arrows[i], i);
                m.shape() == (dims[h], dims[t])
            });
        if !shape_ok {
            return Err(ClassicalError::Shape {
                vertices: n,
                expected: n.saturating_sub(1),
            });
        }
        Ok(LineRep {
            field,
            arrows,
            dims,
            maps,
        })
    }

    /// Random matrices with vertex dimensions up to `max_dim`.
    pub fn random(field: Field, arrows: Vec<Arrow>, max_dim: usize, seed: u64) -> LineRep {
        let mut rng = rng_from_seed(seed);
        let dims: Vec<usize> = (0..=arrows.len()).map(|_| rng.gen_range(0..=max_dim)).collect();
        let maps = arrows
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let (t, h) = ends(a, i);
                random_matrix(&mut rng, field, dims[h], dims[t])
            })
            .collect();
        LineRep {
            field,
            arrows,
            dims,
            maps,
        }
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_sink(&self, i: usize) -> bool {
        i > 0 && i + 1 < self.dims.len() && self.arrows[i - 1] == Arrow::Right && self.arrows[i] == Arrow::Left
    }

    /// Reflection at an interior sink `i`: the new space is the kernel of
    /// `M(i-1) ⊕ M(i+1) → M(i)`, mapping to the neighbors by projection.
    pub fn reflect_sink(&self, i: usize) -> Result<LineRep, ClassicalError> {
        if !self.is_sink(i) {
            return Err(ClassicalError::NotSink(i));
        }
        let (l, r) = (&self.maps[i - 1], &self.maps[i]);
        let sum = Matrix::hstack(self.field, self.dims[i], &[l, r]);
        let k = kernel_basis(&sum).inclusion().clone();
        let d = k.cols();
        let (dl, dr) = (self.dims[i - 1], self.dims[i + 1]);
        let mut out = self.clone();
        out.dims[i] = d;
        out.arrows[i - 1] = Arrow::Left;
        out.arrows[i] = Arrow::Right;
        out.maps[i - 1] = k.submatrix(0..dl, 0..d);
        out.maps[i] = k.submatrix(dl..dl + dr, 0..d);
        Ok(out)
    }

    /// The continuous quiver with breakpoints `0, 1, …, n-1`: each segment
    /// follows its arrow; the rays point away from the line.
    pub fn encoded_quiver(&self) -> OrientedQuiver {
        let breakpoints = (0..self.dims.len() as i64).map(Coord::int).collect();
        let mut segments = vec![Orientation::Descending];
        segments.extend(self.arrows.iter().map(|a| match a {
            Arrow::Right => Orientation::Ascending,
            Arrow::Left => Orientation::Descending,
        }));
        segments.push(Orientation::Ascending);
        OrientedQuiver::new(breakpoints, segments).expect("integer breakpoints increase")
    }

    /// The representation constant between consecutive integers: the open
    /// cell of an arrow carries the space at its tail, joined to the tail by
    /// the identity and to the head by the arrow's matrix. Rays are zero.
    pub fn encode(&self) -> Rep {
        let n = self.dims.len();
        let quiver = self.encoded_quiver();
        let partition = CellPartition::new(quiver.breakpoints().to_vec());
        let mut dims = vec![0];
        for i in 0..n {
            dims.push(self.dims[i]);
            if i + 1 < n {
                dims.push(self.dims[ends(self.arrows[i], i).0]);
            }
        }
        dims.push(0);
        let mut maps = vec![Matrix::zeros(self.field, 0, self.dims[0])];
        for i in 0..n - 1 {
            let tail = self.dims[ends(self.arrows[i], i).0];
            let id = Matrix::identity(self.field, tail);
            match self.arrows[i] {
                Arrow::Right => maps.extend([id, self.maps[i].clone()]),
                Arrow::Left => maps.extend([self.maps[i].clone(), id]),
            }
        }
        maps.push(Matrix::zeros(self.field, 0, self.dims[n - 1]));
        Rep::new(quiver, partition, self.field, dims, maps).expect("encoding is well formed")
    }
}

fn ends(a: Arrow, i: usize) -> (usize, usize) {
    match a {
        Arrow::Right => (i, i + 1),
        Arrow::Left => (i + 1, i),
    }
}

/// All orientations of the line with `n` vertices.
pub fn orientations(n: usize) -> Vec<Vec<Arrow>> {
    let m = n.saturating_sub(1);
    (0..1u32 << m)
        .map(|bits| {
            (0..m)
                .map(|i| if bits >> i & 1 == 1 { Arrow::Left } else { Arrow::Right })
                .collect()
        })
        .collect()
}
