//! Filtered associative algebras: monoids for the Day convolution, given
//! as a monic sequence with products `X(p) ⊗ X(q) -> X(p + q)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::chain::{
    associator_permutation, compose_tensor, compose_tensor_component, quotient, tensor, tensor_swap, ChainComplex,
    ChainMap,
};
use crate::error::Error;
use crate::exactlin::{Field, Matrix, Subquotient};
use crate::generate::{degree_zero, t_adic};
use crate::graded::GradedObject;
use crate::sequence::Sequence;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredAlgebra {
    carrier: Sequence,
    mult: BTreeMap<(i64, i64), ChainMap>,
    unit: ChainMap,
}

impl FilteredAlgebra {
    /// `mult` needs one product for every pair `(p, q)` in the window, landing
    /// in `X(p + q)` clamped to the window; `unit` maps `k` into `X(0)`.
    pub fn new(carrier: Sequence, mult: BTreeMap<(i64, i64), ChainMap>, unit: ChainMap) -> Result<Self, Error> {
        carrier.require_monic()?;
        let (lo, hi) = carrier.window();
        for &(p, q) in mult.keys() {
            if p < lo || p > hi || q < lo || q > hi {
                return Err(Error::InvalidAlgebra(format!("product ({p}, {q}) lies outside the window")));
            }
        }
        for p in lo..=hi {
            for q in lo..=hi {
                let m = mult.get(&(p, q)).ok_or_else(|| Error::InvalidAlgebra(format!("missing product ({p}, {q})")))?;
                if *m.source() != tensor(carrier.level(p), carrier.level(q))? || m.target() != carrier.level(p + q) {
                    return Err(Error::EndpointMismatch);
                }
            }
        }
        if *unit.source() != ChainComplex::unit(carrier.field()) || unit.target() != carrier.level(0) {
            return Err(Error::EndpointMismatch);
        }
        Ok(FilteredAlgebra { carrier, mult, unit })
    }

    pub fn carrier(&self) -> &Sequence {
        &self.carrier
    }

    pub fn field(&self) -> Field {
        self.carrier.field()
    }

    /// The product on `X(p) ⊗ X(q)`, indices clamped to the window.
    pub fn mult(&self, p: i64, q: i64) -> &ChainMap {
        let (p, q) = (self.carrier.clamp(p), self.carrier.clamp(q));
        &self.mult[&(p, q)]
    }

    pub fn products(&self) -> &BTreeMap<(i64, i64), ChainMap> {
        &self.mult
    }

    pub fn unit(&self) -> &ChainMap {
        &self.unit
    }

    fn top_index(&self) -> i64 {
        self.carrier.window().1
    }

    fn embed_in_top(&self, p: i64) -> ChainMap {
        self.carrier.composite(p, self.top_index())
    }

    /// The algebra with one product entry replaced; no checks beyond shape.
    pub fn with_product(&self, p: i64, q: i64, m: ChainMap) -> Result<Self, Error> {
        let mut mult = self.mult.clone();
        mult.insert((p, q), m);
        Self::new(self.carrier.clone(), mult, self.unit.clone())
    }
}

/// Where a filtered algebra fails its axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraDefect {
    /// `mult(p, q)` is not the restriction of the product on `X(∞)`, i.e. it
    /// does not commute with the structure maps.
    Compatibility { p: i64, q: i64 },
    /// The product of `X(-∞)` with `X(q)` (or `X(q)` with `X(-∞)`) leaves `X(-∞)`.
    LowerTail { q: i64 },
    /// `(ab)c ≠ a(bc)` for the basis triple at `column` of `((X ⊗ X) ⊗ X)_degree`, `X = X(∞)`.
    Associativity { degree: i64, column: usize },
    LeftUnit { p: i64 },
    RightUnit { p: i64 },
}

impl fmt::Display for AlgebraDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraDefect::Compatibility { p, q } => {
                write!(f, "product ({p}, {q}) does not commute with the structure maps")
            }
            AlgebraDefect::LowerTail { q } => write!(f, "products of X(-∞) with X({q}) leave X(-∞)"),
            AlgebraDefect::Associativity { degree, column } => {
                write!(f, "associativity fails in degree {degree} at basis triple {column}")
            }
            AlgebraDefect::LeftUnit { p } => write!(f, "left unit law fails on X({p})"),
            AlgebraDefect::RightUnit { p } => write!(f, "right unit law fails on X({p})"),
        }
    }
}

/// Checks compatibility with the structure maps, the lower tail, associativity
/// and both unit laws, exactly; reports the first defect found.
///
/// As the carrier is monic, every product is compared with the product on
/// `X(∞)` after embedding, which makes the associativity check at `X(∞)`
/// cover every triple of levels.
pub fn validate_algebra(a: &FilteredAlgebra) -> Result<(), AlgebraDefect> {
    let x = &a.carrier;
    let (lo, hi) = x.window();
    let top = a.mult(hi, hi);
    let embed: BTreeMap<i64, ChainMap> = (lo..=hi).map(|p| (p, a.embed_in_top(p))).collect();

    for p in lo..=hi {
        for q in lo..=hi {
            let restricted = compose_tensor(top, &embed[&p], &embed[&q]).expect("levels share the field");
            let direct = a.embed_in_top(p + q).compose(a.mult(p, q)).expect("composable");
            if restricted != direct {
                return Err(AlgebraDefect::Compatibility { p, q });
            }
        }
    }

    let bottom = x.bottom();
    if !bottom.is_zero() {
        for q in lo..=hi {
            let base = x.composite(lo, lo + q);
            let stays = |m: &ChainMap| m.target().dims().keys().all(|&k| base.component(k).spans(&m.component(k)));
            if !stays(a.mult(lo, q)) || !stays(a.mult(q, lo)) {
                return Err(AlgebraDefect::LowerTail { q });
            }
        }
    }

    let xm = x.top();
    let id = ChainMap::identity(xm);
    let perm = associator_permutation(xm, xm, xm);
    for (&n, perm) in &perm {
        let left = compose_tensor_component(top, top, &id, n);
        let right = compose_tensor_component(top, &id, top, n);
        for (column, &to) in perm.iter().enumerate() {
            if left.column(column) != right.column(to) {
                return Err(AlgebraDefect::Associativity { degree: n, column });
            }
        }
    }

    let unit = &a.unit;
    let zero = x.clamp(0);
    for p in lo..=hi {
        let id_p = ChainMap::identity(x.level(p));
        let embed_p = &embed[&p];
        let left = a.embed_in_top(zero + p).compose(&compose_tensor(a.mult(zero, p), unit, &id_p).expect("unit")).expect("composable");
        if !same_components(&left, embed_p) {
            return Err(AlgebraDefect::LeftUnit { p });
        }
        let right = a.embed_in_top(p + zero).compose(&compose_tensor(a.mult(p, zero), &id_p, unit).expect("unit")).expect("composable");
        if !same_components(&right, embed_p) {
            return Err(AlgebraDefect::RightUnit { p });
        }
    }
    Ok(())
}

/// Equal matrices in every degree; the sources may differ by the canonical
/// identification `k ⊗ X = X = X ⊗ k`.
fn same_components(f: &ChainMap, g: &ChainMap) -> bool {
    let degrees: BTreeSet<i64> = f.source().dims().keys().chain(g.source().dims().keys()).copied().collect();
    degrees.into_iter().all(|k| f.component(k) == g.component(k))
}

/// A graded algebra: products `x_p ⊗ x_q -> x_{p+q}` on a graded object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    carrier: GradedObject,
    mult: BTreeMap<(i64, i64), ChainMap>,
    unit: ChainMap,
}

impl GradedAlgebra {
    /// Products are given on pairs of support degrees whose sum is in the
    /// support; absent pairs are zero.
    pub fn new(carrier: GradedObject, mult: BTreeMap<(i64, i64), ChainMap>, unit: ChainMap) -> Result<Self, Error> {
        for (&(p, q), m) in &mult {
            let src = tensor(&carrier.component(p), &carrier.component(q))?;
            if *m.source() != src || *m.target() != carrier.component(p + q) {
                return Err(Error::EndpointMismatch);
            }
        }
        if *unit.source() != ChainComplex::unit(carrier.field()) || *unit.target() != carrier.component(0) {
            return Err(Error::EndpointMismatch);
        }
        Ok(GradedAlgebra { carrier, mult, unit })
    }

    pub fn carrier(&self) -> &GradedObject {
        &self.carrier
    }

    pub fn unit(&self) -> &ChainMap {
        &self.unit
    }

    pub fn products(&self) -> &BTreeMap<(i64, i64), ChainMap> {
        &self.mult
    }

    /// The product `x_p ⊗ x_q -> x_{p+q}`.
    pub fn mult(&self, p: i64, q: i64) -> ChainMap {
        match self.mult.get(&(p, q)) {
            Some(m) => m.clone(),
            None => {
                let src = tensor(&self.carrier.component(p), &self.carrier.component(q)).expect("same field");
                ChainMap::zero(&src, &self.carrier.component(p + q))
            }
        }
    }

    /// `(ab)c = a(bc)` in every triple of degrees.
    pub fn is_associative(&self) -> bool {
        let support = self.carrier.support();
        for &p in &support {
            for &q in &support {
                for &r in &support {
                    let (xp, xq, xr) = (self.carrier.component(p), self.carrier.component(q), self.carrier.component(r));
                    let left = compose_tensor(&self.mult(p + q, r), &self.mult(p, q), &ChainMap::identity(&xr));
                    let right = compose_tensor(&self.mult(p, q + r), &ChainMap::identity(&xp), &self.mult(q, r));
                    let (Ok(left), Ok(right)) = (left, right) else { return false };
                    let perm = associator_permutation(&xp, &xq, &xr);
                    for (n, perm) in perm {
                        let (l, rt) = (left.component(n), right.component(n));
                        if perm.iter().enumerate().any(|(c, &to)| l.column(c) != rt.column(to)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn is_unital(&self) -> bool {
        self.carrier.support().into_iter().all(|p| {
            let xp = self.carrier.component(p);
            let id = ChainMap::identity(&xp);
            let left = compose_tensor(&self.mult(0, p), &self.unit, &id);
            let right = compose_tensor(&self.mult(p, 0), &id, &self.unit);
            matches!((left, right), (Ok(l), Ok(r)) if same_components(&l, &id) && same_components(&r, &id))
        })
    }

    /// `mult(p, q) = mult(q, p) ∘ swap` for all degrees, with Koszul signs.
    pub fn is_commutative(&self) -> bool {
        let support = self.carrier.support();
        support.iter().all(|&p| {
            support.iter().all(|&q| {
                let swap = tensor_swap(&self.carrier.component(p), &self.carrier.component(q)).expect("same field");
                self.mult(q, p).compose(&swap).is_ok_and(|m| m == self.mult(p, q))
            })
        })
    }
}

/// The associated graded algebra, with `Gr_p` modelled by the quotient
/// `X(p) / X(p-1)` (quasi-isomorphic to the cone of the step, as the carrier
/// is monic). Products are computed on representatives.
pub fn gr_algebra(a: &FilteredAlgebra) -> Result<GradedAlgebra, Error> {
    validate_algebra(a).map_err(|d| Error::InvalidAlgebra(d.to_string()))?;
    let x = &a.carrier;
    let field = x.field();
    let (lo, hi) = x.window();
    let mut quots: BTreeMap<i64, (ChainComplex, ChainMap, ChainMap)> = BTreeMap::new();
    for p in lo + 1..=hi {
        let step = x.step(p - 1);
        let (q, proj) = quotient(x.level(p), step.components())?;
        if q.is_zero() {
            continue;
        }
        let sections = proj
            .source()
            .dims()
            .keys()
            .map(|&k| {
                let pk = proj.component(k);
                let s = pk.solve(&Matrix::identity(field, pk.rows())).expect("quotient maps are onto");
                (k, s)
            })
            .collect();
        let section = ChainMap::from_parts(q.clone(), x.level(p).clone(), sections);
        quots.insert(p, (q, proj, section));
    }
    let carrier = GradedObject::new(field, quots.iter().map(|(&p, t)| (p, t.0.clone())).collect())?;
    let mut mult = BTreeMap::new();
    for (&p, (qp, _, sp)) in &quots {
        for (&q, (qq, _, sq)) in &quots {
            let Some((_, proj, _)) = quots.get(&(p + q)) else { continue };
            let src = tensor(qp, qq)?;
            let comp = src
                .dims()
                .keys()
                .map(|&n| (n, proj.component(n).mul(&compose_tensor_component(a.mult(p, q), sp, sq, n))))
                .collect();
            let m = ChainMap::new(src, proj.target().clone(), comp)
                .map_err(|_| Error::InvalidAlgebra(format!("product ({p}, {q}) does not descend")))?;
            mult.insert((p, q), m);
        }
    }
    let unit = match quots.get(&0) {
        Some((_, proj, _)) => {
            proj.compose(&a.unit)?
        }
        None => ChainMap::zero(&ChainComplex::unit(field), &ChainComplex::zero(field)),
    };
    GradedAlgebra::new(carrier, mult, unit)
}

/// `k[t]/(t^d)` filtered by the powers of `t`, so that `X(p) X(q) ⊆ X(p + q)`.
pub fn t_adic_algebra(d: usize, field: Field) -> Result<FilteredAlgebra, Error> {
    let x = t_adic(d, field)?;
    let (lo, hi) = x.window();
    let mut mult = BTreeMap::new();
    for p in lo..=hi {
        for q in lo..=hi {
            let (a, b, c) = (x.level(p), x.level(q), x.level(p + q));
            let src = tensor(a, b)?;
            let (da, db, dc) = (a.dim(0), b.dim(0), c.dim(0));
            let mut m = Matrix::zeros(field, dc, da * db);
            // t^{-p+i} t^{-q+j} = t^{-(p+q)+i+j}, basis index i + j of X(p + q).
            let shift = (p + q).max(lo) - (p + q);
            for i in 0..da {
                for j in 0..db {
                    let idx = i as i64 + j as i64 + shift;
                    if idx >= 0 && (idx as usize) < dc {
                        m.set(idx as usize, i * db + j, field.one());
                    }
                }
            }
            mult.insert((p, q), ChainMap::new(src.clone(), c.clone(), degree_zero(m, &src, c))?);
        }
    }
    let k = ChainComplex::unit(field);
    let x0 = x.level(0).clone();
    let mut u = Matrix::zeros(field, x0.dim(0), 1);
    u.set(0, 0, field.one());
    let unit = ChainMap::new(k, x0, [(0, u)].into_iter().collect())?;
    FilteredAlgebra::new(x, mult, unit)
}

/// The stages `D_0 ⊆ D_1 ⊆ ... ⊆ D_s = End(O)` of differential operators on
/// `O = k[x]/(x^d)`, each as a basis of row-major vectorized `d × d` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOpStages {
    d: usize,
    stages: Vec<Matrix>,
}

impl DiffOpStages {
    pub fn d(&self) -> usize {
        self.d
    }

    /// Bases of `D_0, ..., D_s`.
    pub fn stages(&self) -> &[Matrix] {
        &self.stages
    }

    pub fn dims(&self) -> Vec<usize> {
        self.stages.iter().map(Matrix::cols).collect()
    }

    /// The first `s` with `D_s = End(O)`.
    pub fn stabilization(&self) -> usize {
        self.stages.len() - 1
    }
}

/// `x^j` acting on `O` by multiplication, in the monomial basis.
pub fn multiplication_operator(d: usize, j: usize) -> Matrix {
    let field = Field::Rational;
    let mut m = Matrix::zeros(field, d, d);
    for i in 0..d {
        if i + j < d {
            m.set(i + j, i, field.one());
        }
    }
    m
}

fn vectorize(p: &Matrix) -> Vec<crate::exactlin::Scalar> {
    p.entries().to_vec()
}

fn unvectorize(d: usize, v: &[crate::exactlin::Scalar]) -> Matrix {
    Matrix::from_data(Field::Rational, d, d, v.to_vec()).expect("d × d entries")
}

/// `P ↦ [P, f]` on vectorized `d × d` matrices.
pub fn commutator_matrix(f: &Matrix) -> Matrix {
    let field = f.field();
    let d = f.rows();
    let mut cols = Vec::with_capacity(d * d);
    for e in 0..d * d {
        let mut p = Matrix::zeros(field, d, d);
        p.set(e / d, e % d, field.one());
        cols.push(vectorize(&p.mul(f).sub(&f.mul(&p))));
    }
    Matrix::from_columns(field, d * d, &cols)
}

/// `D_{-1} = 0`, `D_n = {P : [P, x^j] ∈ D_{n-1} for j = 1..d-1}`, until `D_n = End(O)`.
pub fn diff_op_stages(d: usize) -> Result<DiffOpStages, Error> {
    if d == 0 {
        return Err(Error::InvalidParameter("d must be at least 1".into()));
    }
    let field = Field::Rational;
    let n = d * d;
    let generators: Vec<Matrix> = (1..d).map(|j| commutator_matrix(&multiplication_operator(d, j))).collect();
    let full: Vec<Matrix> = (0..d).map(|j| commutator_matrix(&multiplication_operator(d, j))).collect();
    let stage = |prev: &Matrix, ops: &[Matrix]| -> Matrix {
        let q = Subquotient::new(n, Matrix::identity(field, n), prev.clone()).expect("subspace of End(O)");
        let blocks: Vec<Matrix> = ops.iter().map(|c| q.project().mul(c)).collect();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        Matrix::vstack(field, n, &refs).kernel_basis()
    };
    let mut stages: Vec<Matrix> = Vec::new();
    let mut prev = Matrix::zeros(field, n, 0);
    loop {
        let next = stage(&prev, &generators);
        assert_eq!(next.cols(), stage(&prev, &full).cols(), "generators of O detect the same stage as the full basis");
        if next.cols() == prev.cols() && !stages.is_empty() {
            return Err(Error::InvalidParameter(format!("filtration stalls below End(O) at dimension {}", next.cols())));
        }
        let done = next.cols() == n;
        prev = next.clone();
        stages.push(next);
        if done {
            return Ok(DiffOpStages { d, stages });
        }
    }
}

/// The filtered algebra of differential operators on `k[x]/(x^d)` over `Q`:
/// carrier `0 = D_{-1} ⊆ D_0 ⊆ ... ⊆ D_s` on the window `(-1, s)`, products by composition.
pub fn diff_ops_example(d: usize) -> Result<FilteredAlgebra, Error> {
    let st = diff_op_stages(d)?;
    let field = Field::Rational;
    let s = st.stabilization() as i64;
    let basis = |n: i64| -> Matrix {
        if n < 0 {
            Matrix::zeros(field, d * d, 0)
        } else {
            st.stages[n.min(s) as usize].clone()
        }
    };
    let level = |n: i64| ChainComplex::concentrated(field, 0, basis(n).cols());
    let levels: Vec<ChainComplex> = (-1..=s).map(level).collect();
    let steps = (-1..s)
        .map(|n| {
            let (a, b) = (level(n), level(n + 1));
            let m = basis(n + 1).solve(&basis(n)).expect("stages are nested");
            ChainMap::new(a.clone(), b.clone(), degree_zero(m, &a, &b))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let carrier = Sequence::new((-1, s), levels, steps)?;
    let mut mult = BTreeMap::new();
    for p in -1..=s {
        for q in -1..=s {
            let (bp, bq, bt) = (basis(p), basis(q), basis((p + q).min(s)));
            let (a, b, c) = (level(p), level(q), level((p + q).clamp(-1, s)));
            let src = tensor(&a, &b)?;
            let mut products = Vec::with_capacity(bp.cols() * bq.cols());
            for i in 0..bp.cols() {
                let pi = unvectorize(d, &bp.column(i));
                for j in 0..bq.cols() {
                    products.push(vectorize(&pi.mul(&unvectorize(d, &bq.column(j)))));
                }
            }
            let v = Matrix::from_columns(field, d * d, &products);
            let m = bt
                .solve(&v)
                .ok_or_else(|| Error::InvalidAlgebra(format!("D_{p} D_{q} is not contained in D_{}", p + q)))?;
            mult.insert((p, q), ChainMap::new(src.clone(), c.clone(), degree_zero(m, &src, &c))?);
        }
    }
    let x0 = level(0);
    let id: Vec<crate::exactlin::Scalar> = vectorize(&Matrix::identity(field, d));
    let u = basis(0).solve(&Matrix::from_columns(field, d * d, &[id])).expect("the identity is a multiplication operator");
    let unit = ChainMap::new(ChainComplex::unit(field), x0, [(0, u)].into_iter().collect())?;
    FilteredAlgebra::new(carrier, mult, unit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::unit_sequence;

    const Q: Field = Field::Rational;

    fn trivial_algebra() -> FilteredAlgebra {
        let x = unit_sequence(Q);
        let k = ChainComplex::unit(Q);
        let mut mult = BTreeMap::new();
        for p in -1..=0 {
            for q in -1..=0 {
                let src = tensor(x.level(p), x.level(q)).unwrap();
                let tgt = x.level(p + q).clone();
                let m = if p == 0 && q == 0 { ChainMap::identity(&k) } else { ChainMap::zero(&src, &tgt) };
                let m = ChainMap::new(src, tgt, m.components().clone()).unwrap();
                mult.insert((p, q), m);
            }
        }
        FilteredAlgebra::new(x, mult, ChainMap::identity(&k)).unwrap()
    }

    #[test]
    fn trivial_algebra_is_valid() {
        let a = trivial_algebra();
        assert_eq!(validate_algebra(&a), Ok(()));
        let g = gr_algebra(&a).unwrap();
        assert_eq!(g.carrier().support(), [0]);
        assert_eq!(g.carrier().component(0), ChainComplex::unit(Q));
        assert!(g.is_associative() && g.is_unital() && g.is_commutative());
    }

    #[test]
    fn perturbed_product_is_located() {
        let a = t_adic_algebra(3, Q).unwrap();
        assert_eq!(validate_algebra(&a), Ok(()));
        let m = a.mult(0, 0);
        let mut c = m.component(0);
        c.set(2, 1 * 3 + 1, Q.from_i64(5));
        let bad = ChainMap::new(m.source().clone(), m.target().clone(), [(0, c)].into_iter().collect()).unwrap();
        let broken = a.with_product(0, 0, bad).unwrap();
        let defect = validate_algebra(&broken).unwrap_err();
        assert!(matches!(defect, AlgebraDefect::Compatibility { .. }), "{defect}");
        assert!(matches!(gr_algebra(&broken), Err(Error::InvalidAlgebra(_))));
    }

    /// `k ⊕ ka ⊕ kb` with unit `1`, products given row by row on the
    /// pairs `(1,1), (1,a), (1,b), (a,1), (a,a), (a,b), (b,1), (b,a), (b,b)`.
    fn three_dim(rows: &[i64]) -> FilteredAlgebra {
        let x = Sequence::constant(ChainComplex::concentrated(Q, 0, 3));
        let src = tensor(x.top(), x.top()).unwrap();
        let m = Matrix::from_i64(Q, 3, 9, rows);
        let mult = ChainMap::new(src, x.top().clone(), [(0, m)].into_iter().collect()).unwrap();
        let u = Matrix::from_i64(Q, 3, 1, &[1, 0, 0]);
        let unit = ChainMap::new(ChainComplex::unit(Q), x.top().clone(), [(0, u)].into_iter().collect()).unwrap();
        FilteredAlgebra::new(x, [((0, 0), mult)].into_iter().collect(), unit).unwrap()
    }

    #[test]
    fn broken_associativity_at_the_top() {
        // k[a]/(a^3) with b = a^2
        let good = three_dim(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0]);
        assert_eq!(validate_algebra(&good), Ok(()));
        // now b a = a: (a a) a = a but a (a a) = 0
        let bad = three_dim(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0]);
        assert_eq!(validate_algebra(&bad), Err(AlgebraDefect::Associativity { degree: 0, column: 13 }));
    }

    #[test]
    fn t_adic_gr_is_monomial() {
        for d in 2..=4 {
            let a = t_adic_algebra(d, Q).unwrap();
            assert_eq!(validate_algebra(&a), Ok(()));
            let g = gr_algebra(&a).unwrap();
            let di = d as i64;
            assert_eq!(g.carrier().support(), (1 - di..=0).collect::<Vec<_>>());
            for p in 1 - di..=0 {
                for q in 1 - di..=0 {
                    let expect = if p + q > -di { Matrix::identity(Q, 1) } else { Matrix::zeros(Q, 0, 1) };
                    assert_eq!(g.mult(p, q).component(0), expect, "({p}, {q})");
                }
            }
            assert!(g.is_associative() && g.is_unital() && g.is_commutative());
        }
    }

    #[test]
    fn t_adic_dims() {
        let x = t_adic(2, Q).unwrap();
        assert_eq!(x.window(), (-3, 0));
        assert_eq!(x.total_dims(), [0, 0, 1, 2]);
        assert!(x.is_monic());
    }

    #[test]
    fn diff_ops_small() {
        let one = diff_op_stages(1).unwrap();
        assert_eq!(one.dims(), [1]);
        let a = diff_ops_example(1).unwrap();
        assert_eq!(a.carrier().window(), (-1, 0));
        assert_eq!(validate_algebra(&a), Ok(()));
        let st = diff_op_stages(3).unwrap();
        assert_eq!(st.dims()[0], 3);
        assert_eq!(*st.dims().last().unwrap(), 9);
        assert_eq!(st.stabilization(), 4);
        let a = diff_ops_example(3).unwrap();
        assert_eq!(validate_algebra(&a), Ok(()));
        let g = gr_algebra(&a).unwrap();
        assert!(g.is_commutative() && g.is_associative() && g.is_unital());
    }
}
