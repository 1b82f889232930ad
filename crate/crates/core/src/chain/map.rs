use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::complex::ChainComplex;
use crate::error::Error;
use crate::exactlin::{Field, Matrix, Scalar};

/// A degree-preserving chain map `source -> target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    comp: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    /// Validates component shapes and `d ∘ f = f ∘ d` in every degree.
    pub fn new(source: ChainComplex, target: ChainComplex, comp: BTreeMap<i64, Matrix>) -> Result<Self, Error> {
        let m = Self::assemble(source, target, comp)?;
        m.check_commutes()?;
        Ok(m)
    }

    pub(crate) fn from_parts(source: ChainComplex, target: ChainComplex, comp: BTreeMap<i64, Matrix>) -> Self {
        let m = Self::assemble(source, target, comp).expect("well-shaped construction");
        debug_assert!(m.check_commutes().is_ok(), "construction produced a non-chain map");
        m
    }

    fn assemble(source: ChainComplex, target: ChainComplex, comp: BTreeMap<i64, Matrix>) -> Result<Self, Error> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch);
        }
        let mut kept = BTreeMap::new();
        for (k, m) in comp {
            if m.field() != source.field() {
                return Err(Error::FieldMismatch);
            }
            let expected = (target.dim(k), source.dim(k));
            if m.shape() != expected {
                return Err(Error::Shape { expected, found: m.shape() });
            }
            if expected.0 > 0 && expected.1 > 0 && !m.is_zero() {
                kept.insert(k, m);
            }
        }
        Ok(ChainMap { source, target, comp: kept })
    }

    fn check_commutes(&self) -> Result<(), Error> {
        for k in ChainComplex::joint_degrees(&self.source, &self.target) {
            let lhs = self.target.d(k).mul(&self.component(k));
            let rhs = self.component(k - 1).mul(&self.source.d(k));
            if lhs != rhs {
                return Err(Error::NotChainMap { degree: k });
            }
        }
        Ok(())
    }

    pub fn identity(c: &ChainComplex) -> ChainMap {
        let comp = c.dims().iter().map(|(&k, &d)| (k, Matrix::identity(c.field(), d))).collect();
        ChainMap { source: c.clone(), target: c.clone(), comp }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> ChainMap {
        ChainMap { source: source.clone(), target: target.clone(), comp: BTreeMap::new() }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    /// Nonzero components by degree.
    pub fn components(&self) -> &BTreeMap<i64, Matrix> {
        &self.comp
    }

    /// Component in degree `k`; zero matrix of shape `target_k × source_k` if not stored.
    pub fn component(&self, k: i64) -> Matrix {
        match self.comp.get(&k) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.field(), self.target.dim(k), self.source.dim(k)),
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap, Error> {
        if first.target != self.source {
            return Err(Error::EndpointMismatch);
        }
        let comp = first
            .source
            .dims()
            .keys()
            .map(|&k| (k, self.component(k).mul(&first.component(k))))
            .collect();
        Ok(Self::from_parts(first.source.clone(), self.target.clone(), comp))
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap, Error> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::EndpointMismatch);
        }
        let comp = self.source.dims().keys().map(|&k| (k, self.component(k).add(&other.component(k)))).collect();
        Ok(Self::from_parts(self.source.clone(), self.target.clone(), comp))
    }

    pub fn scale(&self, s: &Scalar) -> ChainMap {
        let comp = self.comp.iter().map(|(&k, m)| (k, m.scale(s))).collect();
        Self::from_parts(self.source.clone(), self.target.clone(), comp)
    }

    pub fn neg(&self) -> ChainMap {
        let comp = self.comp.iter().map(|(&k, m)| (k, m.neg())).collect();
        ChainMap { source: self.source.clone(), target: self.target.clone(), comp }
    }

    pub fn is_zero(&self) -> bool {
        self.comp.is_empty()
    }

    /// `f ⊕ g ⊕ ...` between the direct sums of sources and targets.
    pub fn direct_sum(maps: &[&ChainMap]) -> Result<ChainMap, Error> {
        let field = maps.first().map(|m| m.field()).ok_or(Error::EndpointMismatch)?;
        let sources: Vec<&ChainComplex> = maps.iter().map(|m| &m.source).collect();
        let targets: Vec<&ChainComplex> = maps.iter().map(|m| &m.target).collect();
        let source = ChainComplex::direct_sum_all(field, &sources)?;
        let target = ChainComplex::direct_sum_all(field, &targets)?;
        let comp = source
            .dims()
            .keys()
            .map(|&k| {
                let parts: Vec<Matrix> = maps.iter().map(|m| m.component(k)).collect();
                let refs: Vec<&Matrix> = parts.iter().collect();
                (k, Matrix::block_diag(field, &refs))
            })
            .collect();
        Ok(Self::from_parts(source, target, comp))
    }

    /// `x ↦ (f x, g x, ...)` into the direct sum of the targets.
    pub fn stack(source: &ChainComplex, maps: &[&ChainMap]) -> Result<ChainMap, Error> {
        let field = source.field();
        if maps.iter().any(|m| m.source != *source) {
            return Err(Error::EndpointMismatch);
        }
        let targets: Vec<&ChainComplex> = maps.iter().map(|m| &m.target).collect();
        let target = ChainComplex::direct_sum_all(field, &targets)?;
        let comp = source
            .dims()
            .keys()
            .map(|&k| {
                let parts: Vec<Matrix> = maps.iter().map(|m| m.component(k)).collect();
                let refs: Vec<&Matrix> = parts.iter().collect();
                (k, Matrix::vstack(field, source.dim(k), &refs))
            })
            .collect();
        Ok(Self::from_parts(source.clone(), target, comp))
    }

    /// `(x, y, ...) ↦ f x + g y + ...` out of the direct sum of the sources.
    pub fn join(target: &ChainComplex, maps: &[&ChainMap]) -> Result<ChainMap, Error> {
        let field = target.field();
        if maps.iter().any(|m| m.target != *target) {
            return Err(Error::EndpointMismatch);
        }
        let sources: Vec<&ChainComplex> = maps.iter().map(|m| &m.source).collect();
        let source = ChainComplex::direct_sum_all(field, &sources)?;
        let comp = source
            .dims()
            .keys()
            .map(|&k| {
                let parts: Vec<Matrix> = maps.iter().map(|m| m.component(k)).collect();
                let refs: Vec<&Matrix> = parts.iter().collect();
                (k, Matrix::hstack(field, target.dim(k), &refs))
            })
            .collect();
        Ok(Self::from_parts(source, target.clone(), comp))
    }

    /// Injective in every degree.
    pub fn is_injective(&self) -> bool {
        self.source.dims().keys().all(|&k| self.component(k).is_injective())
    }
}
