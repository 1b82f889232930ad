//! Finite-support graded objects `n ↦ x_n` of chain complexes.
//!
//! With finite support, sums and products agree, so the tensor and hom
//! below are finite direct sums of the corresponding complexes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::chain::{hom_complex, is_quasi_iso, tensor, tensor_dual_to_hom, ChainComplex, ChainMap};
use crate::error::Error;
use crate::exactlin::Field;

/// A graded object; degrees whose component is the zero complex are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedObject {
    field: Field,
    comps: BTreeMap<i64, ChainComplex>,
}

impl GradedObject {
    pub fn new(field: Field, comps: BTreeMap<i64, ChainComplex>) -> Result<Self, Error> {
        if comps.values().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::from_parts(field, comps))
    }

    pub(crate) fn from_parts(field: Field, mut comps: BTreeMap<i64, ChainComplex>) -> Self {
        comps.retain(|_, c| !c.is_zero());
        GradedObject { field, comps }
    }

    pub fn zero(field: Field) -> Self {
        GradedObject { field, comps: BTreeMap::new() }
    }

    /// `c` placed in degree `n`.
    pub fn concentrated(n: i64, c: ChainComplex) -> Self {
        let field = c.field();
        Self::from_parts(field, [(n, c)].into_iter().collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn components(&self) -> &BTreeMap<i64, ChainComplex> {
        &self.comps
    }

    pub fn component(&self, n: i64) -> ChainComplex {
        self.comps.get(&n).cloned().unwrap_or_else(|| ChainComplex::zero(self.field))
    }

    pub fn support(&self) -> Vec<i64> {
        self.comps.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Componentwise quasi-isomorphism type agrees in every degree.
    pub fn quasi_isomorphic(&self, other: &GradedObject) -> bool {
        if self.field != other.field {
            return false;
        }
        let degrees: BTreeSet<i64> = self.comps.keys().chain(other.comps.keys()).copied().collect();
        degrees.into_iter().all(|n| self.component(n).quasi_isomorphic(&other.component(n)))
    }

    /// Nonzero homology dimensions, keyed by (graded degree, homological degree).
    pub fn homology_dims(&self) -> BTreeMap<(i64, i64), usize> {
        let mut out = BTreeMap::new();
        for (&n, c) in &self.comps {
            for (k, h) in c.homology_dims() {
                out.insert((n, k), h);
            }
        }
        out
    }
}

/// A degreewise family of chain maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedObject,
    target: GradedObject,
    comps: BTreeMap<i64, ChainMap>,
}

impl GradedMap {
    pub fn new(source: GradedObject, target: GradedObject, comps: BTreeMap<i64, ChainMap>) -> Result<Self, Error> {
        if source.field != target.field {
            return Err(Error::FieldMismatch);
        }
        for (&n, f) in &comps {
            if *f.source() != source.component(n) || *f.target() != target.component(n) {
                return Err(Error::EndpointMismatch);
            }
        }
        Ok(GradedMap { source, target, comps })
    }

    pub fn source(&self) -> &GradedObject {
        &self.source
    }

    pub fn target(&self) -> &GradedObject {
        &self.target
    }

    pub fn component(&self, n: i64) -> ChainMap {
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| ChainMap::zero(&self.source.component(n), &self.target.component(n)))
    }

    fn degrees(&self) -> BTreeSet<i64> {
        self.source.comps.keys().chain(self.target.comps.keys()).copied().collect()
    }

    /// Every component is a quasi-isomorphism.
    pub fn is_quasi_iso(&self) -> bool {
        self.degrees().into_iter().all(|n| is_quasi_iso(&self.component(n)))
    }
}

fn check_fields(x: &GradedObject, y: &GradedObject) -> Result<Field, Error> {
    if x.field != y.field {
        return Err(Error::FieldMismatch);
    }
    Ok(x.field)
}

/// Pairs `(p, q)` with `p + q = n` and both components nonzero, ascending in `p`.
fn tensor_pairs(x: &GradedObject, y: &GradedObject, n: i64) -> Vec<(i64, i64)> {
    x.comps.keys().filter(|&&p| y.comps.contains_key(&(n - p))).map(|&p| (p, n - p)).collect()
}

fn tensor_degrees(x: &GradedObject, y: &GradedObject) -> BTreeSet<i64> {
    x.comps.keys().flat_map(|p| y.comps.keys().map(move |q| p + q)).collect()
}

fn hom_degrees(x: &GradedObject, y: &GradedObject) -> BTreeSet<i64> {
    x.comps.keys().flat_map(|m| y.comps.keys().map(move |l| l - m)).collect()
}

/// `(x ⊗ y)_n = ⊕_{p+q=n} x_p ⊗ y_q`, summands ascending in `p`.
pub fn graded_tensor(x: &GradedObject, y: &GradedObject) -> Result<GradedObject, Error> {
    let field = check_fields(x, y)?;
    let mut comps = BTreeMap::new();
    for n in tensor_degrees(x, y) {
        let parts = tensor_pairs(x, y, n)
            .into_iter()
            .map(|(p, q)| tensor(&x.comps[&p], &y.comps[&q]))
            .collect::<Result<Vec<_>, _>>()?;
        let refs: Vec<&ChainComplex> = parts.iter().collect();
        comps.insert(n, ChainComplex::direct_sum_all(field, &refs)?);
    }
    Ok(GradedObject::from_parts(field, comps))
}

/// `Hom(x, y)_n = ∏_m Hom(x_m, y_{m+n})`, factors ascending in `m`.
pub fn graded_hom(x: &GradedObject, y: &GradedObject) -> Result<GradedObject, Error> {
    let field = check_fields(x, y)?;
    let mut comps = BTreeMap::new();
    for n in hom_degrees(x, y) {
        let parts = x
            .comps
            .iter()
            .filter_map(|(&m, xm)| y.comps.get(&(m + n)).map(|yl| hom_complex(xm, yl)))
            .collect::<Result<Vec<_>, _>>()?;
        let refs: Vec<&ChainComplex> = parts.iter().collect();
        comps.insert(n, ChainComplex::direct_sum_all(field, &refs)?);
    }
    Ok(GradedObject::from_parts(field, comps))
}

/// `n ↦ Hom(x_{-n}, d)`.
pub fn reflector_graded(x: &GradedObject, d: &ChainComplex) -> Result<GradedObject, Error> {
    if x.field != d.field() {
        return Err(Error::FieldMismatch);
    }
    let mut comps = BTreeMap::new();
    for (&m, xm) in &x.comps {
        comps.insert(-m, hom_complex(xm, d)?);
    }
    Ok(GradedObject::from_parts(x.field, comps))
}

/// The canonical map `x ⊗ Hom(x, 1) -> Hom(x, x)`, one summand at a time.
pub fn canonical_dual_map(x: &GradedObject) -> Result<GradedMap, Error> {
    let field = x.field;
    let dual = reflector_graded(x, &ChainComplex::unit(field))?;
    let source = graded_tensor(x, &dual)?;
    let target = graded_hom(x, x)?;
    let mut comps = BTreeMap::new();
    for &n in source.comps.keys() {
        // The summand x_p ⊗ Hom(x_{p-n}, 1) lands in the factor Hom(x_{p-n}, x_p);
        // both sides are ordered by p, so the map is block diagonal.
        let blocks = tensor_pairs(x, &dual, n)
            .into_iter()
            .map(|(p, q)| tensor_dual_to_hom(&x.comps[&p], &x.comps[&(-q)]))
            .collect::<Result<Vec<_>, _>>()?;
        let refs: Vec<&ChainMap> = blocks.iter().collect();
        let f = ChainMap::direct_sum(&refs)?;
        debug_assert_eq!(*f.target(), target.component(n));
        comps.insert(n, f);
    }
    GradedMap::new(source, target, comps)
}

/// Whether the canonical map `x ⊗ Hom(x, 1) -> Hom(x, x)` is a degreewise
/// quasi-isomorphism.
pub fn is_dualizable_graded(x: &GradedObject) -> bool {
    match canonical_dual_map(x) {
        Ok(f) => f.source().components().len() == f.target().components().len() && f.is_quasi_iso(),
        Err(_) => false,
    }
}
