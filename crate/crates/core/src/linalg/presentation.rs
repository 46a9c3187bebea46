use super::{LinalgError, Matrix};

/// A kernel inside a two-summand direct sum `K^m ⊕ K^n`, given by a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelPresentation {
    split: (usize, usize),
    inclusion: Matrix,
}

impl KernelPresentation {
    /// Wraps an inclusion matrix whose columns are assumed independent.
    pub fn from_inclusion(split: (usize, usize), inclusion: Matrix) -> KernelPresentation {
        assert_eq!(
            inclusion.rows(),
            split.0 + split.1,
            "inclusion rows must match the split"
        );
        KernelPresentation { split, inclusion }
    }

    pub fn dim(&self) -> usize {
        self.inclusion.cols()
    }

    pub fn split(&self) -> (usize, usize) {
        self.split
    }

    pub fn ambient_dim(&self) -> usize {
        self.split.0 + self.split.1
    }

    pub fn inclusion(&self) -> &Matrix {
        &self.inclusion
    }

    /// Projection of the kernel onto the first summand.
    pub fn first(&self) -> Matrix {
        self.inclusion.submatrix(0..self.split.0, 0..self.dim())
    }

    /// Projection of the kernel onto the second summand.
    pub fn second(&self) -> Matrix {
        self.inclusion
            .submatrix(self.split.0..self.ambient_dim(), 0..self.dim())
    }

    /// Coordinates of ambient vectors that lie in the kernel; `None` otherwise.
    pub fn coordinates(&self, vectors: &Matrix) -> Option<Matrix> {
        self.inclusion.solve(vectors)
    }
}

/// A quotient of `K^m ⊕ K^n`, given by a surjection onto coset coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelPresentation {
    split: (usize, usize),
    projection: Matrix,
}

impl CokernelPresentation {
    pub fn from_projection(split: (usize, usize), projection: Matrix) -> CokernelPresentation {
        assert_eq!(
            projection.cols(),
            split.0 + split.1,
            "projection columns must match the split"
        );
        CokernelPresentation { split, projection }
    }

    pub fn quotient_dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn split(&self) -> (usize, usize) {
        self.split
    }

    pub fn ambient_dim(&self) -> usize {
        self.split.0 + self.split.1
    }

    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    /// Restriction of the projection to the first summand.
    pub fn first(&self) -> Matrix {
        self.projection.submatrix(0..self.quotient_dim(), 0..self.split.0)
    }

    /// Restriction of the projection to the second summand.
    pub fn second(&self) -> Matrix {
        self.projection
            .submatrix(0..self.quotient_dim(), self.split.0..self.ambient_dim())
    }
}

/// Kernel of `d`, viewed as a subspace of a single summand.
pub fn kernel_basis(d: &Matrix) -> KernelPresentation {
    KernelPresentation {
        split: (d.cols(), 0),
        inclusion: d.null_space(),
    }
}

/// Kernel of `[a | -b] : K^m ⊕ K^n → K^r`, i.e. pairs `(u, v)` with `a u = b v`.
pub fn kernel_of_difference(a: &Matrix, b: &Matrix) -> KernelPresentation {
    assert_eq!(a.rows(), b.rows(), "difference map needs a common codomain");
    let d = Matrix::hstack(a.field(), a.rows(), &[a, &b.neg()]);
    KernelPresentation {
        split: (a.cols(), b.cols()),
        inclusion: d.null_space(),
    }
}

/// Cokernel of `d`, as a quotient of a single summand. The projection rows are
/// a basis of the left null space of `d`.
pub fn cokernel_basis(d: &Matrix) -> CokernelPresentation {
    CokernelPresentation {
        split: (d.rows(), 0),
        projection: d.transpose().null_space().transpose(),
    }
}

/// Cokernel of `(a; -b) : K^r → K^m ⊕ K^n`.
pub fn cokernel_of_difference(a: &Matrix, b: &Matrix) -> CokernelPresentation {
    assert_eq!(a.cols(), b.cols(), "difference map needs a common domain");
    let d = Matrix::vstack(a.field(), a.cols(), &[a, &b.neg()]);
    CokernelPresentation {
        split: (a.rows(), b.rows()),
        projection: d.transpose().null_space().transpose(),
    }
}

fn check_block(k: (usize, usize), blocks: (&Matrix, &Matrix), target: (usize, usize)) -> Result<Matrix, LinalgError> {
    let (f, g) = blocks;
    if (f.cols(), g.cols()) != k || (f.rows(), g.rows()) != target {
        return Err(LinalgError::Shape(format!(
            "blocks {:?} and {:?} do not map {:?} to {:?}",
            f.shape(),
            g.shape(),
            k,
            target
        )));
    }
    Ok(Matrix::block_diag(f, g))
}

/// The unique `L` with `k2.inclusion · L = diag(f, g) · k1.inclusion`.
pub fn induced_on_kernels(
    k1: &KernelPresentation,
    k2: &KernelPresentation,
    blocks: (&Matrix, &Matrix),
) -> Result<Matrix, LinalgError> {
    let m = check_block(k1.split, blocks, k2.split)?;
    induced_on_kernels_by(k1, k2, &m)
}

/// Like [`induced_on_kernels`] for an arbitrary ambient map.
pub fn induced_on_kernels_by(
    k1: &KernelPresentation,
    k2: &KernelPresentation,
    m: &Matrix,
) -> Result<Matrix, LinalgError> {
    if m.shape() != (k2.ambient_dim(), k1.ambient_dim()) {
        return Err(LinalgError::Shape(format!(
            "ambient map {:?} does not go from {} to {}",
            m.shape(),
            k1.ambient_dim(),
            k2.ambient_dim()
        )));
    }
    let image = m.mul(&k1.inclusion);
    k2.inclusion.solve(&image).ok_or(LinalgError::NotInvariant)
}

/// The unique `L` with `L · c1.projection = c2.projection · diag(f, g)`.
pub fn induced_on_cokernels(
    c1: &CokernelPresentation,
    c2: &CokernelPresentation,
    blocks: (&Matrix, &Matrix),
) -> Result<Matrix, LinalgError> {
    let m = check_block(c1.split, blocks, c2.split)?;
    induced_on_cokernels_by(c1, c2, &m)
}

/// Like [`induced_on_cokernels`] for an arbitrary ambient map.
pub fn induced_on_cokernels_by(
    c1: &CokernelPresentation,
    c2: &CokernelPresentation,
    m: &Matrix,
) -> Result<Matrix, LinalgError> {
    if m.shape() != (c2.ambient_dim(), c1.ambient_dim()) {
        return Err(LinalgError::Shape(format!(
            "ambient map {:?} does not go from {} to {}",
            m.shape(),
            c1.ambient_dim(),
            c2.ambient_dim()
        )));
    }
    let rhs = c2.projection.mul(m).transpose();
    c1.projection
        .transpose()
        .solve(&rhs)
        .map(|lt| lt.transpose())
        .ok_or(LinalgError::NotInvariant)
}
