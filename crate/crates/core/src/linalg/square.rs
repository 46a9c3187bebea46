//! Pullback and pushout checks for commutative squares of linear maps.

use std::fmt;

use super::{cokernel_of_difference, kernel_of_difference, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareFailure {
    /// The square does not commute.
    NotCommutative,
    /// The comparison map to the pullback (or from the pushout) is not invertible.
    NotIsomorphic {
        corner_dim: usize,
        universal_dim: usize,
        rank: usize,
    },
}

impl fmt::Display for SquareFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SquareFailure::NotCommutative => write!(f, "square does not commute"),
            SquareFailure::NotIsomorphic {
                corner_dim,
                universal_dim,
                rank,
            } => write!(
                f,
                "comparison map between corner (dim {corner_dim}) and universal object (dim {universal_dim}) has rank {rank}"
            ),
        }
    }
}

/// Checks that
///
/// ```text
///   P --q--> Y
///   |        |
///   p        g
///   v        v
///   X --f--> Z
/// ```
///
/// is a pullback: it commutes and `(p, q) : P → ker[f | -g]` is an isomorphism.
pub fn is_pullback(p: &Matrix, q: &Matrix, f: &Matrix, g: &Matrix) -> Result<(), SquareFailure> {
    if f.mul(p) != g.mul(q) {
        return Err(SquareFailure::NotCommutative);
    }
    let k = kernel_of_difference(f, g);
    let pair = Matrix::vstack(p.field(), p.cols(), &[p, q]);
    let u = k.coordinates(&pair).expect("commuting pair lies in the kernel");
    let rank = u.rank();
    if u.is_square() && rank == u.rows() {
        Ok(())
    } else {
        Err(SquareFailure::NotIsomorphic {
            corner_dim: p.cols(),
            universal_dim: k.dim(),
            rank,
        })
    }
}

/// Checks that
///
/// ```text
///   Z --g--> Y
///   |        |
///   f        q
///   v        v
///   X --p--> P
/// ```
///
/// is a pushout: it commutes and `coker(f; -g) → P` induced by `[p | q]` is an
/// isomorphism.
pub fn is_pushout(f: &Matrix, g: &Matrix, p: &Matrix, q: &Matrix) -> Result<(), SquareFailure> {
    if p.mul(f) != q.mul(g) {
        return Err(SquareFailure::NotCommutative);
    }
    let c = cokernel_of_difference(f, g);
    let pair = Matrix::hstack(p.field(), p.rows(), &[p, q]);
    let lt = c
        .projection()
        .transpose()
        .solve(&pair.transpose())
        .expect("commuting cocone factors through the cokernel");
    let rank = lt.rank();
    if lt.is_square() && rank == lt.rows() {
        Ok(())
    } else {
        Err(SquareFailure::NotIsomorphic {
            corner_dim: p.rows(),
            universal_dim: c.quotient_dim(),
            rank,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    #[test]
    fn identity_square_is_both() {
        let id = Matrix::identity(Field::Prime(7), 1);
        assert_eq!(is_pullback(&id, &id, &id, &id), Ok(()));
        assert_eq!(is_pushout(&id, &id, &id, &id), Ok(()));
    }

    #[test]
    fn zero_corner_over_zero_base_is_not_a_pullback() {
        // The pullback of K -> 0 <- K is K², not 0.
        let f = Field::Rationals;
        let to_zero = Matrix::zeros(f, 0, 1);
        let from_zero = Matrix::zeros(f, 1, 0);
        let err = is_pullback(&from_zero, &from_zero, &to_zero, &to_zero).unwrap_err();
        assert_eq!(
            err,
            SquareFailure::NotIsomorphic {
                corner_dim: 0,
                universal_dim: 2,
                rank: 0
            }
        );
        let one = Matrix::identity(f, 1);
        let two = Matrix::identity(f, 1).scale(&f.from_i64(2));
        assert_eq!(is_pullback(&one, &one, &one, &two), Err(SquareFailure::NotCommutative));
    }

    #[test]
    fn pushout_of_zero_span_is_direct_sum() {
        let f = Field::Prime(5);
        let z = Matrix::zeros(f, 1, 0);
        let inc1 = Matrix::from_i64_rows(f, 1, &[vec![1], vec![0]]);
        let inc2 = Matrix::from_i64_rows(f, 1, &[vec![0], vec![1]]);
        assert_eq!(is_pushout(&z, &z, &inc1, &inc2), Ok(()));
        assert!(is_pushout(&z, &z, &inc1, &inc1).is_err());
    }
}
