//! Example and random generators: the truncated t-adic tower, Postnikov
//! towers, random complexes, random monic sequences and random maps.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::Rng;

use crate::chain::{factor_through, subcomplex, ChainComplex, ChainMap};
use crate::error::Error;
use crate::exactlin::{Field, Matrix, Scalar};
use crate::monoidal::sequence_map_basis;
use crate::sequence::{truncation_sequence, Sequence, SequenceMap, TruncationKind};

/// `X(n) = (t^{-n}) / (t^d)` inside `k[t]/(t^d)` for `-d <= n <= 0`, on the
/// window `(-d-1, 0)`, in homological degree 0. Basis of `X(n)`: `t^{-n}, ..., t^{d-1}`.
pub fn t_adic(d: usize, field: Field) -> Result<Sequence, Error> {
    if d == 0 {
        return Err(Error::InvalidParameter("d must be at least 1".into()));
    }
    let di = d as i64;
    let levels: Vec<ChainComplex> =
        (-di - 1..=0).map(|n| ChainComplex::concentrated(field, 0, (di + n).max(0) as usize)).collect();
    let steps = levels
        .windows(2)
        .map(|w| {
            let mut m = Matrix::zeros(field, w[1].dim(0), w[0].dim(0));
            for j in 0..w[0].dim(0) {
                m.set(j + 1, j, field.one());
            }
            ChainMap::new(w[0].clone(), w[1].clone(), degree_zero(m, &w[0], &w[1]))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Sequence::new((-di - 1, 0), levels, steps)
}

/// The single component in degree 0, or none between zero complexes.
pub(crate) fn degree_zero(m: Matrix, a: &ChainComplex, b: &ChainComplex) -> BTreeMap<i64, Matrix> {
    if a.dim(0) == 0 && b.dim(0) == 0 {
        BTreeMap::new()
    } else {
        [(0, m)].into_iter().collect()
    }
}

/// Multiplication by `1 + t` on [`t_adic`]`(d)`.
pub fn one_plus_t(d: usize, field: Field) -> Result<SequenceMap, Error> {
    let x = t_adic(d, field)?;
    SequenceMap::from_fn(&x, &x, |n| {
        let c = x.level(n);
        let k = c.dim(0);
        let mut m = Matrix::identity(field, k);
        for j in 0..k.saturating_sub(1) {
            m.set(j + 1, j, field.one());
        }
        ChainMap::new(c.clone(), c.clone(), degree_zero(m, c, c))
    })
}

/// `(1 + t) ⊕ 0` on `t_adic(d) ⊕ cst(k)`: the same graded pieces, but the
/// constant tail makes the sequence incomplete.
pub fn one_plus_t_with_constant_tail(d: usize, field: Field) -> Result<SequenceMap, Error> {
    let f = one_plus_t(d, field)?;
    let k = ChainComplex::unit(field);
    let tail = SequenceMap::identity(&Sequence::constant(k.clone())).scale(&field.zero());
    f.direct_sum(&tail)
}

/// `n ↦ τ_{≥ -n} c` on the window where it runs from `0` to `c`.
pub fn postnikov(c: &ChainComplex) -> Result<Sequence, Error> {
    let (lo, hi) = c.support().unwrap_or((0, 0));
    truncation_sequence(c, (-hi - 1, -lo), TruncationKind::Postnikov)
}

pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R, field: Field) -> Scalar {
    match field {
        Field::Rational => field.from_i64(rng.gen_range(-2..=2)),
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, field: Field, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols).map(|_| random_scalar(rng, field)).collect();
    Matrix::from_data(field, rows, cols, data).expect("sized data")
}

/// Shape bounds for random complexes and sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomShape {
    /// Number of consecutive homological degrees, starting at `lowest_degree`.
    pub degrees: usize,
    pub lowest_degree: i64,
    /// Bound on the total dimension of every level.
    pub max_total_dim: usize,
    /// Bound on the number of levels in the window.
    pub max_levels: usize,
    /// Force `X(N) = 0`.
    pub bounded_below: bool,
}

impl Default for RandomShape {
    fn default() -> Self {
        RandomShape { degrees: 4, lowest_degree: 0, max_total_dim: 4, max_levels: 5, bounded_below: false }
    }
}

/// A complex in degrees `lowest_degree ..` with total dimension at most
/// `max_total_dim`; each `d_k` is a random map into `ker d_{k-1}`.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, field: Field, shape: &RandomShape) -> ChainComplex {
    let mut dims: Vec<usize> = (0..shape.degrees).map(|_| rng.gen_range(0..=shape.max_total_dim)).collect();
    while dims.iter().sum::<usize>() > shape.max_total_dim {
        let i = rng.gen_range(0..dims.len());
        dims[i] = dims[i].saturating_sub(1);
    }
    let degree = |i: usize| shape.lowest_degree + i as i64;
    let mut diff: BTreeMap<i64, Matrix> = BTreeMap::new();
    let mut below = Matrix::zeros(field, 0, dims.first().copied().unwrap_or(0));
    for i in 1..dims.len() {
        let kernel = below.kernel_basis();
        let r = random_matrix(rng, field, kernel.cols(), dims[i]);
        let d = kernel.mul(&r);
        diff.insert(degree(i), d.clone());
        below = d;
    }
    let dims = dims.iter().enumerate().filter(|(_, &n)| n > 0).map(|(i, &n)| (degree(i), n)).collect();
    let diff = diff.into_iter().filter(|(_, m)| m.rows() > 0 && m.cols() > 0).collect();
    ChainComplex::new(field, dims, diff).expect("d∘d = 0 by construction")
}

/// A monic sequence of subcomplexes of a random complex, each level generated
/// by random vectors of the one above it.
pub fn random_monic_sequence<R: Rng + ?Sized>(rng: &mut R, field: Field, shape: &RandomShape) -> Sequence {
    let ambient = random_complex(rng, field, shape);
    let levels = rng.gen_range(1..=shape.max_levels.max(1));
    let lo = rng.gen_range(-2..=1);
    let mut spans: Vec<BTreeMap<i64, Matrix>> = alloc::vec![ambient.dims().keys().map(|&k| (k, Matrix::identity(field, ambient.dim(k)))).collect()];
    for i in 1..levels {
        let above = &spans[i - 1];
        let last = i == levels - 1 && shape.bounded_below;
        let gens: BTreeMap<i64, Matrix> = above
            .iter()
            .map(|(&k, b)| {
                let count = if last { 0 } else { rng.gen_range(0..=b.cols()) };
                (k, b.mul(&random_matrix(rng, field, b.cols(), count)))
            })
            .collect();
        let closed = gens
            .iter()
            .map(|(&k, g)| {
                let hit = match gens.get(&(k + 1)) {
                    Some(h) => ambient.d(k + 1).mul(h),
                    None => Matrix::zeros(field, g.rows(), 0),
                };
                (k, Matrix::hstack(field, g.rows(), &[g, &hit]).column_basis())
            })
            .collect();
        spans.push(closed);
    }
    if shape.bounded_below && levels == 1 {
        spans.push(BTreeMap::new());
    }
    spans.reverse();
    let subs: Vec<(ChainComplex, ChainMap)> =
        spans.iter().map(|s| subcomplex(&ambient, s).expect("spans are closed under d")).collect();
    let steps = subs.windows(2).map(|w| factor_through(&w[0].1, &w[1].1).expect("levels are nested")).collect();
    let n = subs.len() as i64;
    Sequence::new((lo, lo + n - 1), subs.into_iter().map(|s| s.0).collect(), steps).expect("nested subcomplexes")
}

/// A random linear combination of a basis of sequence maps `x -> y`.
pub fn random_sequence_map<R: Rng + ?Sized>(rng: &mut R, x: &Sequence, y: &Sequence) -> Result<SequenceMap, Error> {
    let mut f = SequenceMap::zero(x, y)?;
    for g in sequence_map_basis(x, y)? {
        f = f.add(&g.scale(&random_scalar(rng, x.field())))?;
    }
    Ok(f)
}
