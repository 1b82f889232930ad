use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Error;
use crate::exactlin::{Field, Matrix};

/// A bounded chain complex of finite-dimensional vector spaces, homologically
/// graded: `d_k : C_k -> C_{k-1}`.
///
/// Only nonzero dimensions are stored, and a differential is stored only when
/// both of its endpoints are nonzero, so two equal complexes compare equal
/// structurally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    field: Field,
    dims: BTreeMap<i64, usize>,
    diff: BTreeMap<i64, Matrix>,
}

impl ChainComplex {
    /// Validates shapes, field membership and `d∘d = 0`.
    pub fn new(field: Field, dims: BTreeMap<i64, usize>, diff: BTreeMap<i64, Matrix>) -> Result<Self, Error> {
        let c = Self::assemble(field, dims, diff)?;
        c.check_square_zero()?;
        Ok(c)
    }

    /// Builds without the `d∘d = 0` check; used by constructions that
    /// guarantee it. Debug builds still verify.
    pub(crate) fn from_parts(field: Field, dims: BTreeMap<i64, usize>, diff: BTreeMap<i64, Matrix>) -> Self {
        let c = Self::assemble(field, dims, diff).expect("well-shaped construction");
        debug_assert!(c.check_square_zero().is_ok(), "construction produced d∘d != 0");
        c
    }

    fn assemble(field: Field, mut dims: BTreeMap<i64, usize>, diff: BTreeMap<i64, Matrix>) -> Result<Self, Error> {
        dims.retain(|_, d| *d > 0);
        let mut kept = BTreeMap::new();
        for (k, m) in diff {
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
            let expected = (*dims.get(&(k - 1)).unwrap_or(&0), *dims.get(&k).unwrap_or(&0));
            if m.shape() != expected {
                return Err(Error::Shape { expected, found: m.shape() });
            }
            if expected.0 > 0 && expected.1 > 0 {
                kept.insert(k, m);
            }
        }
        // Missing differentials between nonzero spaces are zero maps.
        let keys: Vec<i64> = dims.keys().copied().collect();
        for k in keys {
            if let Some(&below) = dims.get(&(k - 1)) {
                kept.entry(k).or_insert_with(|| Matrix::zeros(field, below, dims[&k]));
            }
        }
        Ok(ChainComplex { field, dims, diff: kept })
    }

    fn check_square_zero(&self) -> Result<(), Error> {
        for (&k, d) in &self.diff {
            if let Some(below) = self.diff.get(&(k - 1)) {
                if !below.mul(d).is_zero() {
                    return Err(Error::DifferentialSquare { degree: k });
                }
            }
        }
        Ok(())
    }

    pub fn zero(field: Field) -> Self {
        ChainComplex { field, dims: BTreeMap::new(), diff: BTreeMap::new() }
    }

    /// The ground field in degree 0.
    pub fn unit(field: Field) -> Self {
        Self::concentrated(field, 0, 1)
    }

    /// `k^dim` in a single degree.
    pub fn concentrated(field: Field, degree: i64, dim: usize) -> Self {
        let mut dims = BTreeMap::new();
        dims.insert(degree, dim);
        Self::from_parts(field, dims, BTreeMap::new())
    }

    /// Two-term complex `k^dim --d--> k^dim'` with `d` sitting in degree `top`.
    pub fn two_term(top: i64, d: Matrix) -> Self {
        let field = d.field();
        let mut dims = BTreeMap::new();
        dims.insert(top, d.cols());
        dims.insert(top - 1, d.rows());
        let mut diff = BTreeMap::new();
        diff.insert(top, d);
        Self::from_parts(field, dims, diff)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self, k: i64) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    /// Nonzero dimensions by degree.
    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    /// Stored differentials (those with both endpoints nonzero).
    pub fn differentials(&self) -> &BTreeMap<i64, Matrix> {
        &self.diff
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Lowest and highest degree with a nonzero space.
    pub fn support(&self) -> Option<(i64, i64)> {
        Some((*self.dims.keys().next()?, *self.dims.keys().next_back()?))
    }

    /// `d_k : C_k -> C_{k-1}`, a zero matrix of the right shape if not stored.
    pub fn d(&self, k: i64) -> Matrix {
        match self.diff.get(&k) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.field, self.dim(k - 1), self.dim(k)),
        }
    }

    pub(crate) fn d_ref(&self, k: i64) -> Option<&Matrix> {
        self.diff.get(&k)
    }

    fn rank_d(&self, k: i64) -> usize {
        self.diff.get(&k).map_or(0, Matrix::rank)
    }

    pub fn homology_dim(&self, k: i64) -> usize {
        let n = self.dim(k);
        if n == 0 {
            return 0;
        }
        n - self.rank_d(k) - self.rank_d(k + 1)
    }

    /// Nonzero homology dimensions by degree.
    pub fn homology_dims(&self) -> BTreeMap<i64, usize> {
        self.dims
            .keys()
            .map(|&k| (k, self.homology_dim(k)))
            .filter(|(_, h)| *h > 0)
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.keys().all(|&k| self.homology_dim(k) == 0)
    }

    /// Over a field, complexes are quasi-isomorphic exactly when their
    /// homology dimensions agree.
    pub fn quasi_isomorphic(&self, other: &ChainComplex) -> bool {
        self.field == other.field && self.homology_dims() == other.homology_dims()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().map(|(&k, &d)| if k.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) }).sum()
    }

    /// `(C[s])_k = C_{k-s}` with differential `(-1)^s d`.
    pub fn shift(&self, s: i64) -> ChainComplex {
        let dims = self.dims.iter().map(|(&k, &d)| (k + s, d)).collect();
        let diff = self.diff.iter().map(|(&k, m)| (k + s, m.signed(s))).collect();
        Self::from_parts(self.field, dims, diff)
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex, Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut dims = self.dims.clone();
        for (&k, &d) in &other.dims {
            *dims.entry(k).or_insert(0) += d;
        }
        let mut diff = BTreeMap::new();
        for &k in dims.keys() {
            if dims.contains_key(&(k - 1)) {
                diff.insert(k, Matrix::block_diag(self.field, &[&self.d(k), &other.d(k)]));
            }
        }
        Ok(Self::from_parts(self.field, dims, diff))
    }

    /// Direct sum of several complexes, summands in the given order.
    pub fn direct_sum_all(field: Field, parts: &[&ChainComplex]) -> Result<ChainComplex, Error> {
        if parts.iter().any(|c| c.field != field) {
            return Err(Error::FieldMismatch);
        }
        let mut dims = BTreeMap::new();
        for c in parts {
            for (&k, &d) in &c.dims {
                *dims.entry(k).or_insert(0) += d;
            }
        }
        let mut diff = BTreeMap::new();
        for &k in dims.keys() {
            if dims.contains_key(&(k - 1)) {
                let blocks: Vec<Matrix> = parts.iter().map(|c| c.d(k)).collect();
                let refs: Vec<&Matrix> = blocks.iter().collect();
                diff.insert(k, Matrix::block_diag(field, &refs));
            }
        }
        Ok(Self::from_parts(field, dims, diff))
    }

    /// Degrees where either complex is nonzero, padded by one on both ends
    /// so that every differential touching the support is visited.
    pub(crate) fn joint_degrees(a: &ChainComplex, b: &ChainComplex) -> Vec<i64> {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for c in [a, b] {
            if let Some((l, h)) = c.support() {
                lo = lo.min(l);
                hi = hi.max(h);
            }
        }
        if lo > hi {
            return Vec::new();
        }
        (lo - 1..=hi + 1).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn rejects_nonzero_square() {
        let mut dims = BTreeMap::new();
        dims.insert(0, 1);
        dims.insert(1, 1);
        dims.insert(2, 1);
        let mut diff = BTreeMap::new();
        diff.insert(1, Matrix::identity(Q, 1));
        diff.insert(2, Matrix::identity(Q, 1));
        assert_eq!(ChainComplex::new(Q, dims, diff), Err(Error::DifferentialSquare { degree: 2 }));
    }

    #[test]
    fn rejects_bad_shape() {
        let mut dims = BTreeMap::new();
        dims.insert(0, 1);
        dims.insert(1, 2);
        let mut diff = BTreeMap::new();
        diff.insert(1, Matrix::identity(Q, 1));
        assert!(matches!(ChainComplex::new(Q, dims, diff), Err(Error::Shape { .. })));
    }

    #[test]
    fn shift_and_euler() {
        let c = ChainComplex::two_term(1, Matrix::from_i64(Q, 1, 2, &[1, 0]));
        assert_eq!(c.euler_characteristic(), -1);
        let s = c.shift(1);
        assert_eq!(s.dim(2), 2);
        assert_eq!(s.d(2), Matrix::from_i64(Q, 1, 2, &[-1, 0]));
        assert_eq!(s.homology_dims(), [(2, 1)].into_iter().collect());
    }

    #[test]
    fn empty_is_zero_object() {
        let z = ChainComplex::zero(Q);
        assert!(z.is_zero() && z.is_acyclic());
        assert_eq!(z.support(), None);
    }
}
