//! The spectral sequence of a sequence.
//!
//! With `C(i, j) = Cone(X(i) -> X(j))`, the cell `E_r^{p,q}` is the image of
//! `H_{p+q} C(p-r, p) -> H_{p+q} C(p-1, p+r-1)`, and `d_r` is induced by the
//! connecting map `C(p-r, p) -> C(p-2r, p-r)[1]`, `(a, b) ↦ (0, a)`, of the
//! triple `X(p-2r) -> X(p-r) -> X(p)`. Differentials have bidegree `(-r, r-1)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::chain::{cone_complex, homology_map, ChainComplex};
use crate::error::Error;
use crate::exactlin::{Field, Matrix, Subquotient};
use crate::graded::GradedObject;
use crate::sequence::Sequence;

/// One page: cells keyed by `(p, q)` and the differential leaving each cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralSequencePage {
    r: usize,
    cells: BTreeMap<(i64, i64), Subquotient>,
    d: BTreeMap<(i64, i64), Matrix>,
}

impl SpectralSequencePage {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn cells(&self) -> &BTreeMap<(i64, i64), Subquotient> {
        &self.cells
    }

    pub fn differentials(&self) -> &BTreeMap<(i64, i64), Matrix> {
        &self.d
    }

    /// `dim E_r^{p,q}`; zero off the grid.
    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.cells.get(&(p, q)).map_or(0, Subquotient::dim)
    }

    /// Rank of `d_r` leaving `(p, q)`.
    pub fn d_rank(&self, p: i64, q: i64) -> usize {
        self.d.get(&(p, q)).map_or(0, Matrix::rank)
    }

    /// The cell `d_r` lands in.
    pub fn target(&self, p: i64, q: i64) -> (i64, i64) {
        let r = self.r as i64;
        (p - r, q + r - 1)
    }

    /// Cells of positive dimension with their dimension and outgoing rank.
    pub fn nonzero_cells(&self) -> Vec<(i64, i64, usize, usize)> {
        self.cells
            .iter()
            .filter(|(_, c)| c.dim() > 0)
            .map(|(&(p, q), c)| (p, q, c.dim(), self.d_rank(p, q)))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.cells.values().all(|c| c.dim() == 0)
    }

    /// Same dimension and outgoing rank in every cell of either page.
    pub fn same_shape(&self, other: &SpectralSequencePage) -> bool {
        self.r == other.r
            && self.cells.keys().chain(other.cells.keys()).all(|&(p, q)| {
                self.dim(p, q) == other.dim(p, q) && self.d_rank(p, q) == other.d_rank(p, q)
            })
    }

    /// Dimensions of the homology of `(E_r, d_r)` in each cell.
    pub fn homology_dims(&self) -> BTreeMap<(i64, i64), usize> {
        let r = self.r as i64;
        self.cells
            .keys()
            .map(|&(p, q)| {
                let incoming = self.d_rank(p + r, q - r + 1);
                ((p, q), self.dim(p, q) - self.d_rank(p, q) - incoming)
            })
            .collect()
    }

    /// `d_r ∘ d_r = 0` wherever both are defined.
    pub fn d_squares_to_zero(&self) -> bool {
        self.d.iter().all(|(&(p, q), m)| {
            let t = self.target(p, q);
            match self.d.get(&t) {
                Some(n) => n.mul(m).is_zero(),
                None => true,
            }
        })
    }
}

/// `(p range, k range)` of the grid: `p ∈ [N - r_max, M + r_max]` and `k`
/// spans the homological support of the levels, raised by one for the cones.
fn grid(x: &Sequence, r_max: usize) -> (Vec<i64>, Vec<i64>) {
    let (lo, hi) = x.window();
    let r = r_max as i64;
    let support = x.levels().iter().filter_map(ChainComplex::support).fold(None, |acc: Option<(i64, i64)>, (a, b)| {
        Some(acc.map_or((a, b), |(c, d)| (c.min(a), d.max(b))))
    });
    let ks = match support {
        Some((a, b)) => (a..=b + 1).collect(),
        None => Vec::new(),
    };
    ((lo - r..=hi + r).collect(), ks)
}

/// Cones `C(i, j)` with clamped indices, built on demand.
struct Cones<'a> {
    x: &'a Sequence,
    cache: BTreeMap<(i64, i64), ChainComplex>,
}

impl<'a> Cones<'a> {
    fn new(x: &'a Sequence) -> Self {
        Cones { x, cache: BTreeMap::new() }
    }

    fn key(&self, i: i64, j: i64) -> (i64, i64) {
        let (i, j) = (self.x.clamp(i), self.x.clamp(j));
        (i.min(j), j)
    }

    fn get(&mut self, i: i64, j: i64) -> &ChainComplex {
        let key = self.key(i, j);
        let x = self.x;
        self.cache.entry(key).or_insert_with(|| cone_complex(&x.composite(key.0, key.1)))
    }

    /// Degree-`k` component of `C(i, j) -> C(i', j')` for `i <= i'`, `j <= j'`.
    fn map(&self, from: (i64, i64), to: (i64, i64), k: i64) -> Matrix {
        let ((i, j), (i2, j2)) = (self.key(from.0, from.1), self.key(to.0, to.1));
        let a = self.x.composite_matrix(i, i2, k - 1);
        let b = self.x.composite_matrix(j, j2, k);
        Matrix::block_diag(self.x.field(), &[&a, &b])
    }

    /// Dimension of the `X(i)` summand of `C(i, j)_k`.
    fn source_part(&self, i: i64, k: i64) -> usize {
        self.x.level(i).dim(k - 1)
    }
}

fn zero_cell(field: Field, ambient: usize) -> Subquotient {
    Subquotient::new(ambient, Matrix::zeros(field, ambient, 0), Matrix::zeros(field, ambient, 0)).expect("empty presentation")
}

struct Cell {
    quotient: Subquotient,
    /// Cycles of `C(p-r, p)_k` whose images are the chosen lifts.
    sources: Matrix,
}

/// `E_r^{p, k-p}` inside `C(p-1, p+r-1)_k`.
fn image_cell(cones: &mut Cones<'_>, r: i64, p: i64, k: i64) -> Cell {
    let field = cones.x.field();
    let src = cones.get(p - r, p).clone();
    let tgt = cones.get(p - 1, p + r - 1).clone();
    let z = src.d(k).kernel_basis();
    let g = cones.map((p - r, p), (p - 1, p + r - 1), k);
    let gz = g.mul(&z);
    let b = tgt.d(k + 1);
    let n = tgt.dim(k);
    if n == 0 {
        return Cell { quotient: zero_cell(field, 0), sources: Matrix::zeros(field, src.dim(k), 0) };
    }
    let gens = Matrix::hstack(field, n, &[&gz, &b]);
    let quotient = Subquotient::new(n, gens, b).expect("boundaries lie in the generated span");
    let sources = z.select_columns(quotient.lift_columns());
    Cell { quotient, sources }
}

fn build_page(cones: &mut Cones<'_>, r: usize, ps: &[i64], ks: &[i64]) -> SpectralSequencePage {
    let field = cones.x.field();
    let ri = r as i64;
    let mut built: BTreeMap<(i64, i64), Cell> = BTreeMap::new();
    for &p in ps {
        for &k in ks {
            built.insert((p, k), image_cell(cones, ri, p, k));
        }
    }
    let mut d = BTreeMap::new();
    for (&(p, k), cell) in &built {
        let dim = cell.quotient.dim();
        let (tp, tk) = (p - ri, k - 1);
        let target = match built.get(&(tp, tk)) {
            Some(t) => t,
            None => {
                d.insert((p, k - p), Matrix::zeros(field, 0, dim));
                continue;
            }
        };
        // (a, b) ↦ (0, a) into C(p-2r, p-r)_{k-1}, then on to C(p-r-1, p-1).
        let a_dim = cones.source_part(p - ri, k);
        let mid = cones.get(p - 2 * ri, p - ri).dim(k - 1);
        let lower = mid - a_dim;
        let mut delta = Matrix::zeros(field, mid, cell.sources.rows());
        delta.set_block(lower, 0, &Matrix::identity(field, a_dim));
        let h = cones.map((p - 2 * ri, p - ri), (p - ri - 1, p - 1), k - 1);
        let m = target.quotient.project().mul(&h.mul(&delta.mul(&cell.sources)));
        d.insert((p, k - p), m);
    }
    let cells = built.into_iter().map(|((p, k), c)| ((p, k - p), c.quotient)).collect();
    SpectralSequencePage { r, cells, d }
}

/// Pages `E_1, ..., E_{r_max}` on the grid `p ∈ [N - r_max, M + r_max]`.
pub fn pages(x: &Sequence, r_max: usize) -> Vec<SpectralSequencePage> {
    let (ps, ks) = grid(x, r_max);
    let mut cones = Cones::new(x);
    (1..=r_max).map(|r| build_page(&mut cones, r, &ps, &ks)).collect()
}

/// The page `E_r` alone, on the grid used by `pages(x, r)`.
pub fn page(x: &Sequence, r: usize) -> SpectralSequencePage {
    let (ps, ks) = grid(x, r);
    build_page(&mut Cones::new(x), r, &ps, &ks)
}

/// Cycle/boundary spaces of the filtration `F_p = X(p) ⊆ X(∞)`.
struct Classical<'a> {
    x: &'a Sequence,
    top: ChainComplex,
    cache: BTreeMap<(i64, i64, i64), Matrix>,
}

impl<'a> Classical<'a> {
    fn filtration(&self, p: i64, k: i64) -> Matrix {
        self.x.composite_matrix(p, self.x.window().1, k)
    }

    /// `Z_r^p` in degree `k`: `F_p C_k ∩ d^{-1} F_{p-r} C_{k-1}`, as a basis.
    fn z(&mut self, r: i64, p: i64, k: i64) -> Matrix {
        if let Some(m) = self.cache.get(&(r, p, k)) {
            return m.clone();
        }
        let f = self.filtration(p, k);
        let out = if r == 0 {
            f
        } else {
            let lower = self.filtration(p - r, k - 1);
            let dp = self.top.d(k).mul(&f);
            let joint = Matrix::hstack(self.x.field(), dp.rows(), &[&dp, &lower.neg()]);
            let ker = joint.kernel_basis();
            f.mul(&ker.block(0, f.cols(), 0, ker.cols())).column_basis()
        };
        self.cache.insert((r, p, k), out.clone());
        out
    }

    /// `E_r^{p, k-p} = Z_r^p / (Z_{r-1}^{p-1} + d Z_{r-1}^{p+r-1})`.
    fn cell(&mut self, r: i64, p: i64, k: i64) -> Subquotient {
        let n = self.top.dim(k);
        let gens = self.z(r, p, k);
        let below = self.z(r - 1, p - 1, k);
        let hit = self.top.d(k + 1).mul(&self.z(r - 1, p + r - 1, k + 1));
        let rels = Matrix::hstack(self.x.field(), n, &[&below, &hit]);
        Subquotient::new(n, gens, rels).expect("relations are cycles of the right filtration")
    }
}

/// The textbook spectral sequence of the filtration `X(p) ⊆ X(∞)`, on the
/// same grid as [`pages`].
pub fn classical_pages(x: &Sequence, r_max: usize) -> Result<Vec<SpectralSequencePage>, Error> {
    x.require_monic()?;
    let (ps, ks) = grid(x, r_max);
    let mut cl = Classical { x, top: x.top().clone(), cache: BTreeMap::new() };
    let field = x.field();
    let mut out = Vec::new();
    for r in 1..=r_max {
        let ri = r as i64;
        let mut cells = BTreeMap::new();
        for &p in &ps {
            for &k in &ks {
                cells.insert((p, k), cl.cell(ri, p, k));
            }
        }
        let mut d = BTreeMap::new();
        for (&(p, k), cell) in &cells {
            let m = match cells.get(&(p - ri, k - 1)) {
                Some(t) => t.project().mul(&cl.top.d(k).mul(cell.basis())),
                None => Matrix::zeros(field, 0, cell.dim()),
            };
            d.insert((p, k - p), m);
        }
        let cells = cells.into_iter().map(|((p, k), c)| ((p, k - p), c)).collect();
        out.push(SpectralSequencePage { r, cells, d });
    }
    Ok(out)
}

/// The associated graded of `F_p H_*(X(∞)) = im(H_*(X(p)) -> H_*(X(∞)))`,
/// each component carrying its homology with zero differential, together
/// with whether the stable page matches it in every cell.
///
/// Requires a monic sequence whose bottom level is acyclic.
pub fn abutment(x: &Sequence) -> Result<(GradedObject, bool), Error> {
    x.require_monic()?;
    if !x.bottom().is_acyclic() {
        return Err(Error::NotBoundedBelow);
    }
    let field = x.field();
    let (lo, hi) = x.window();
    let degrees: Vec<i64> = x.top().dims().keys().copied().collect();
    let image_rank = |p: i64, k: i64| homology_map(&x.composite(p, hi), k).rank();
    let mut comps = BTreeMap::new();
    for p in lo + 1..=hi {
        let dims: BTreeMap<i64, usize> = degrees
            .iter()
            .map(|&k| (k, image_rank(p, k) - image_rank(p - 1, k)))
            .filter(|&(_, n)| n > 0)
            .collect();
        if !dims.is_empty() {
            let c = ChainComplex::new(field, dims, BTreeMap::new())?;
            comps.insert(p, c);
        }
    }
    let graded = GradedObject::new(field, comps)?;
    let stable = page(x, (hi - lo + 1) as usize);
    let expected = graded.homology_dims();
    let agrees = stable.cells.keys().all(|&(p, q)| stable.dim(p, q) == expected.get(&(p, p + q)).copied().unwrap_or(0))
        && expected.iter().all(|(&(p, k), &n)| stable.dim(p, k - p) == n);
    Ok((graded, agrees))
}
