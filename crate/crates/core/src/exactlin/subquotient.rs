use alloc::vec::Vec;

use super::matrix::Matrix;
use crate::error::Error;

/// A subquotient `V/W` of `k^ambient_dim`, with `W ⊆ V` both given by spanning columns.
///
/// `basis` holds chosen lifts of a basis of `V/W` (they are columns of
/// `generators`), and `project` sends any vector of `V` to its coordinates in
/// that basis. `project` is only meaningful on `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient {
    ambient_dim: usize,
    generators: Matrix,
    relations: Matrix,
    basis: Matrix,
    project: Matrix,
    lift_columns: Vec<usize>,
}

impl Subquotient {
    /// Presents `span(generators) / span(relations)`.
    ///
    /// Lifts are the generator columns, in input order, that are independent
    /// of the relations and of the previously chosen lifts.
    pub fn new(ambient_dim: usize, generators: Matrix, relations: Matrix) -> Result<Self, Error> {
        let field = generators.field();
        if generators.rows() != ambient_dim {
            return Err(Error::Shape { expected: (ambient_dim, generators.cols()), found: generators.shape() });
        }
        if relations.rows() != ambient_dim {
            return Err(Error::Shape { expected: (ambient_dim, relations.cols()), found: relations.shape() });
        }
        if relations.field() != field {
            return Err(Error::FieldMismatch);
        }
        if !generators.spans(&relations) {
            return Err(Error::ContainmentViolation);
        }
        let w_basis = relations.column_basis();
        let w = w_basis.cols();
        let joint = Matrix::hstack(field, ambient_dim, &[&w_basis, &generators]);
        let lift_columns: Vec<usize> =
            joint.pivot_columns().into_iter().filter(|&c| c >= w).map(|c| c - w).collect();
        let basis = generators.select_columns(&lift_columns);
        let frame = Matrix::hstack(field, ambient_dim, &[&w_basis, &basis]);
        let left = frame.left_inverse().expect("relation basis and lifts are independent");
        let project = left.block(w, basis.cols(), 0, ambient_dim);
        Ok(Subquotient { ambient_dim, generators, relations, basis, project, lift_columns })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn generators(&self) -> &Matrix {
        &self.generators
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn project(&self) -> &Matrix {
        &self.project
    }

    /// Positions, among the generator columns, of the chosen lifts.
    pub fn lift_columns(&self) -> &[usize] {
        &self.lift_columns
    }

    /// Coordinates of vectors of `V` (as columns) in the quotient basis.
    pub fn coordinates(&self, vectors: &Matrix) -> Matrix {
        self.project.mul(vectors)
    }
}

/// Presents `span(generators) / span(relations)` inside `k^ambient_dim`.
pub fn quotient_presentation(ambient_dim: usize, generators: Matrix, relations: Matrix) -> Result<Subquotient, Error> {
    Subquotient::new(ambient_dim, generators, relations)
}
