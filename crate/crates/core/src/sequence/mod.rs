//! Sequences `Z -> Ch` with eventually constant tails, maps between them,
//! and the constructions that only need the sequence structure: associated
//! graded, completion, graded equivalences, monic replacement and the
//! truncation towers.
//!
//! A sequence is stored on a window `(N, M)`; below `N` it is constantly
//! `X(N)` and above `M` constantly `X(M)`, with identity structure maps.

mod ops;

use alloc::vec::Vec;

pub use ops::{
    completion, completion_map, cone_sequence, gr, gr_map, is_complete, is_graded_equivalence, is_levelwise_quasi_iso,
    monic_form, truncation_sequence, TruncationKind,
};

use crate::chain::{ChainComplex, ChainMap};
use crate::error::Error;
use crate::exactlin::{Field, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequence {
    field: Field,
    window: (i64, i64),
    levels: Vec<ChainComplex>,
    steps: Vec<ChainMap>,
}

impl Sequence {
    /// `levels[i]` is `X(N + i)`, `steps[i]` is `X(N + i) -> X(N + i + 1)`.
    pub fn new(window: (i64, i64), levels: Vec<ChainComplex>, steps: Vec<ChainMap>) -> Result<Self, Error> {
        let (n, m) = window;
        if n > m {
            return Err(Error::EmptyWindow(n, m));
        }
        let len = (m - n) as usize + 1;
        if levels.len() != len || steps.len() != len - 1 {
            return Err(Error::InvalidParameter(alloc::format!(
                "window ({n}, {m}) needs {len} levels and {} steps, got {} and {}",
                len - 1,
                levels.len(),
                steps.len()
            )));
        }
        let field = levels[0].field();
        if levels.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        for (i, s) in steps.iter().enumerate() {
            if *s.source() != levels[i] || *s.target() != levels[i + 1] {
                return Err(Error::EndpointMismatch);
            }
        }
        Ok(Sequence { field, window, levels, steps })
    }

    pub(crate) fn from_parts(window: (i64, i64), levels: Vec<ChainComplex>, steps: Vec<ChainMap>) -> Self {
        let s = Self::new(window, levels, steps);
        debug_assert!(s.is_ok(), "construction produced an invalid sequence: {:?}", s.as_ref().err());
        s.expect("well-formed construction")
    }

    /// The constant sequence on `c`.
    pub fn constant(c: ChainComplex) -> Self {
        let field = c.field();
        Sequence { field, window: (0, 0), levels: alloc::vec![c], steps: Vec::new() }
    }

    pub fn zero(field: Field) -> Self {
        Self::constant(ChainComplex::zero(field))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    pub fn levels(&self) -> &[ChainComplex] {
        &self.levels
    }

    pub fn steps(&self) -> &[ChainMap] {
        &self.steps
    }

    pub(crate) fn clamp(&self, n: i64) -> i64 {
        n.clamp(self.window.0, self.window.1)
    }

    /// `X(n)` for any integer `n`.
    pub fn level(&self, n: i64) -> &ChainComplex {
        &self.levels[(self.clamp(n) - self.window.0) as usize]
    }

    /// `X(∞)`.
    pub fn top(&self) -> &ChainComplex {
        self.levels.last().expect("nonempty window")
    }

    /// `X(-∞)`.
    pub fn bottom(&self) -> &ChainComplex {
        &self.levels[0]
    }

    /// `x_n : X(n) -> X(n+1)`.
    pub fn step(&self, n: i64) -> ChainMap {
        let (lo, hi) = self.window;
        if n < lo || n >= hi {
            ChainMap::identity(self.level(n))
        } else {
            self.steps[(n - lo) as usize].clone()
        }
    }

    /// The structure map `X(i) -> X(j)`; `i <= j` is only required after
    /// clamping both indices to the window.
    pub fn composite(&self, i: i64, j: i64) -> ChainMap {
        let (i, j) = (self.clamp(i), self.clamp(j));
        assert!(i <= j, "composite needs i <= j");
        let mut f = ChainMap::identity(self.level(i));
        for n in i..j {
            f = self.steps[(n - self.window.0) as usize].compose(&f).expect("consecutive steps");
        }
        f
    }

    /// Structure-map components `X(i)_k -> X(j)_k` as matrices, without
    /// building intermediate chain maps.
    pub(crate) fn composite_matrix(&self, i: i64, j: i64, k: i64) -> Matrix {
        let (i, j) = (self.clamp(i), self.clamp(j));
        let mut m = Matrix::identity(self.field, self.level(i).dim(k));
        for n in i..j {
            m = self.steps[(n - self.window.0) as usize].component(k).mul(&m);
        }
        m
    }

    /// The same sequence on the window `(min(lo, N), max(hi, M))`.
    pub fn rewindow(&self, lo: i64, hi: i64) -> Sequence {
        let (n, m) = self.window;
        let (lo, hi) = (lo.min(n), hi.max(m));
        let levels = (lo..=hi).map(|k| self.level(k).clone()).collect();
        let steps = (lo..hi).map(|k| self.step(k)).collect();
        Sequence { field: self.field, window: (lo, hi), levels, steps }
    }

    /// Every step is injective in every degree.
    pub fn is_monic(&self) -> bool {
        self.first_non_monic().is_none()
    }

    pub(crate) fn first_non_monic(&self) -> Option<i64> {
        self.steps.iter().position(|s| !s.is_injective()).map(|i| self.window.0 + i as i64)
    }

    pub(crate) fn require_monic(&self) -> Result<(), Error> {
        match self.first_non_monic() {
            Some(index) => Err(Error::NotMonic { index }),
            None => Ok(()),
        }
    }

    pub fn direct_sum(&self, other: &Sequence) -> Result<Sequence, Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let (lo, hi) = union_window(self.window, other.window);
        let levels = (lo..=hi)
            .map(|n| self.level(n).direct_sum(other.level(n)))
            .collect::<Result<Vec<_>, _>>()?;
        let steps = (lo..hi)
            .map(|n| ChainMap::direct_sum(&[&self.step(n), &other.step(n)]))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Sequence::from_parts((lo, hi), levels, steps))
    }

    /// Dimensions of `X(n)` summed over degrees, across the window.
    pub fn total_dims(&self) -> Vec<usize> {
        self.levels.iter().map(ChainComplex::total_dim).collect()
    }
}

pub(crate) fn union_window(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
    (a.0.min(b.0), a.1.max(b.1))
}

/// `⟨m, a⟩`: zero below `m`, constantly `a` from `m` on.
pub fn step_sequence(m: i64, a: ChainComplex) -> Sequence {
    let zero = ChainComplex::zero(a.field());
    let step = ChainMap::zero(&zero, &a);
    Sequence::from_parts((m - 1, m), alloc::vec![zero, a], alloc::vec![step])
}

/// The monoidal unit `⟨0, k⟩`.
pub fn unit_sequence(field: Field) -> Sequence {
    step_sequence(0, ChainComplex::unit(field))
}

/// A morphism of sequences, stored on the union of the two windows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceMap {
    source: Sequence,
    target: Sequence,
    comps: Vec<ChainMap>,
}

impl SequenceMap {
    /// Aligns both sequences to the union window; `comps[i]` is the component
    /// at `lo + i` for that window. Every square must commute.
    pub fn new(source: &Sequence, target: &Sequence, comps: Vec<ChainMap>) -> Result<Self, Error> {
        if source.field != target.field {
            return Err(Error::FieldMismatch);
        }
        let (lo, hi) = union_window(source.window, target.window);
        let source = source.rewindow(lo, hi);
        let target = target.rewindow(lo, hi);
        if comps.len() != source.levels.len() {
            return Err(Error::InvalidParameter(alloc::format!(
                "expected {} components, got {}",
                source.levels.len(),
                comps.len()
            )));
        }
        for (i, f) in comps.iter().enumerate() {
            if *f.source() != source.levels[i] || *f.target() != target.levels[i] {
                return Err(Error::EndpointMismatch);
            }
        }
        let map = SequenceMap { source, target, comps };
        map.check_squares()?;
        Ok(map)
    }

    fn check_squares(&self) -> Result<(), Error> {
        let lo = self.source.window.0;
        for i in 0..self.source.steps.len() {
            let left = self.target.steps[i].compose(&self.comps[i])?;
            let right = self.comps[i + 1].compose(&self.source.steps[i])?;
            if left != right {
                return Err(Error::NonCommutingSquare { index: lo + i as i64 });
            }
        }
        Ok(())
    }

    pub fn identity(x: &Sequence) -> SequenceMap {
        let comps = x.levels.iter().map(ChainMap::identity).collect();
        SequenceMap { source: x.clone(), target: x.clone(), comps }
    }

    pub fn zero(source: &Sequence, target: &Sequence) -> Result<SequenceMap, Error> {
        let (lo, hi) = union_window(source.window, target.window);
        let comps = (lo..=hi).map(|n| ChainMap::zero(source.level(n), target.level(n))).collect();
        Self::new(source, target, comps)
    }

    /// Built from a rule `n ↦ f_n` evaluated over the union window.
    pub fn from_fn(
        source: &Sequence,
        target: &Sequence,
        mut f: impl FnMut(i64) -> Result<ChainMap, Error>,
    ) -> Result<SequenceMap, Error> {
        let (lo, hi) = union_window(source.window, target.window);
        let comps = (lo..=hi).map(&mut f).collect::<Result<Vec<_>, _>>()?;
        Self::new(source, target, comps)
    }

    pub fn source(&self) -> &Sequence {
        &self.source
    }

    pub fn target(&self) -> &Sequence {
        &self.target
    }

    pub fn window(&self) -> (i64, i64) {
        self.source.window
    }

    pub fn components(&self) -> &[ChainMap] {
        &self.comps
    }

    /// `f_n` for any integer `n`.
    pub fn component(&self, n: i64) -> &ChainMap {
        &self.comps[(self.source.clamp(n) - self.source.window.0) as usize]
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &SequenceMap) -> Result<SequenceMap, Error> {
        let (lo, hi) = union_window(self.window(), first.window());
        let comps = (lo..=hi)
            .map(|n| self.component(n).compose(first.component(n)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(&first.source, &self.target, comps)
    }

    pub fn add(&self, other: &SequenceMap) -> Result<SequenceMap, Error> {
        Self::from_fn(&self.source, &self.target, |n| self.component(n).add(other.component(n)))
    }

    pub fn scale(&self, s: &Scalar) -> SequenceMap {
        let comps = self.comps.iter().map(|f| f.scale(s)).collect();
        SequenceMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn direct_sum(&self, other: &SequenceMap) -> Result<SequenceMap, Error> {
        let source = self.source.direct_sum(&other.source)?;
        let target = self.target.direct_sum(&other.target)?;
        Self::from_fn(&source, &target, |n| ChainMap::direct_sum(&[self.component(n), other.component(n)]))
    }
}
