use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Sequence, SequenceMap};
use crate::chain::{
    cone, cone_complex, cone_map_unchecked, factor_through, is_quasi_iso, truncate, ChainComplex, ChainMap,
    TruncationMode,
};
use crate::error::Error;
use crate::exactlin::Matrix;
use crate::graded::{GradedMap, GradedObject};

fn is_identity_map(f: &ChainMap) -> bool {
    f.source() == f.target() && f.source().dims().keys().all(|&k| f.component(k).is_identity())
}

/// `Gr(x)_n = Cone(x_{n-1})`. Cones of identity steps, including the implicit
/// ones in the tails, are recorded as zero.
pub fn gr(x: &Sequence) -> GradedObject {
    let (lo, hi) = x.window();
    let mut comps = BTreeMap::new();
    for n in lo + 1..=hi {
        let s = x.step(n - 1);
        if !is_identity_map(&s) {
            comps.insert(n, cone_complex(&s));
        }
    }
    GradedObject::from_parts(x.field(), comps)
}

/// `Gr(f)_n`: the map of cones induced by the square at `n - 1`.
pub fn gr_map(f: &SequenceMap) -> GradedMap {
    let (x, y) = (f.source(), f.target());
    let (gx, gy) = (gr(x), gr(y));
    let (lo, hi) = f.window();
    let mut comps = BTreeMap::new();
    for n in lo + 1..=hi {
        let (sx, sy) = (x.step(n - 1), y.step(n - 1));
        let (fx, fy) = (f.component(n - 1), f.component(n));
        let m = match (is_identity_map(&sx), is_identity_map(&sy)) {
            (false, false) => cone_map_unchecked(&sx, &sy, fx, fy),
            (true, true) => continue,
            (true, false) => ChainMap::zero(&ChainComplex::zero(x.field()), &gy.component(n)),
            (false, true) => ChainMap::zero(&gx.component(n), &ChainComplex::zero(x.field())),
        };
        comps.insert(n, m);
    }
    GradedMap::new(gx, gy, comps).expect("components match the graded objects")
}

/// The levelwise cone `n ↦ Cone(f_n)`.
pub fn cone_sequence(f: &SequenceMap) -> Sequence {
    let (x, y) = (f.source(), f.target());
    let (lo, hi) = f.window();
    let levels = (lo..=hi).map(|n| cone_complex(f.component(n))).collect();
    let steps = (lo..hi)
        .map(|n| cone_map_unchecked(f.component(n), f.component(n + 1), &x.step(n), &y.step(n)))
        .collect();
    Sequence::from_parts((lo, hi), levels, steps)
}

/// `f` induces quasi-isomorphisms on every associated graded piece; checked
/// as: every step of the levelwise cone of `f` is a quasi-isomorphism.
pub fn is_graded_equivalence(f: &SequenceMap) -> bool {
    cone_sequence(f).steps().iter().all(is_quasi_iso)
}

/// Every component is a quasi-isomorphism.
pub fn is_levelwise_quasi_iso(f: &SequenceMap) -> bool {
    f.components().iter().all(is_quasi_iso)
}

/// `X̂(n) = Cone(X(N) -> X(n))` together with `γ : X -> X̂`.
pub fn completion(x: &Sequence) -> (Sequence, SequenceMap) {
    let (lo, hi) = x.window();
    let structure: Vec<ChainMap> = (lo..=hi).map(|n| x.composite(lo, n)).collect();
    let base = ChainMap::identity(x.bottom());
    let cones: Vec<_> = structure.iter().map(cone).collect();
    let levels = cones.iter().map(|c| c.cone.clone()).collect();
    let steps = (0..structure.len() - 1)
        .map(|i| cone_map_unchecked(&structure[i], &structure[i + 1], &base, &x.steps()[i]))
        .collect();
    let hat = Sequence::from_parts((lo, hi), levels, steps);
    let gamma = cones.into_iter().map(|c| c.include).collect();
    let gamma = SequenceMap::new(x, &hat, gamma).expect("cone inclusions commute with the steps");
    (hat, gamma)
}

/// `f̂ : X̂ -> Ŷ`, computed on the window of `f`.
pub fn completion_map(f: &SequenceMap) -> SequenceMap {
    let (x, y) = (f.source(), f.target());
    let (xh, _) = completion(x);
    let (yh, _) = completion(y);
    let lo = f.window().0;
    SequenceMap::from_fn(&xh, &yh, |n| {
        Ok(cone_map_unchecked(&x.composite(lo, n), &y.composite(lo, n), f.component(lo), f.component(n)))
    })
    .expect("completion is functorial")
}

/// `X(-∞)` is acyclic.
pub fn is_complete(x: &Sequence) -> bool {
    x.bottom().is_acyclic()
}

/// A sequence `X'` with injective steps and a levelwise quasi-isomorphism
/// `ρ : X' -> X`.
///
/// `X'(n) = X(n) ⊕ E_n` with `E_n` acyclic. Passing from `n` to `n + 1`
/// adjoins `Cone(id_K)` for `K = ker x_n` (zero differential) and sends
/// `a ∈ X(n)` to `(x_n a, h(d a), h(a))`, where `h` retracts onto `K`.
pub fn monic_form(x: &Sequence) -> (Sequence, SequenceMap) {
    let field = x.field();
    let (lo, hi) = x.window();
    let mut extra = ChainComplex::zero(field);
    let mut levels = alloc::vec![x.bottom().clone()];
    let mut steps = Vec::new();
    let mut rho = alloc::vec![ChainMap::identity(x.bottom())];
    for n in lo..hi {
        let step = x.step(n);
        let (src, tgt) = (step.source(), step.target());
        let mut kernel_dims = BTreeMap::new();
        let mut retract = BTreeMap::new();
        for &k in src.dims().keys() {
            let basis = step.component(k).kernel_basis();
            if basis.cols() > 0 {
                kernel_dims.insert(k, basis.cols());
                retract.insert(k, basis.left_inverse().expect("kernel basis is independent"));
            }
        }
        let kernel = ChainComplex::new(field, kernel_dims, BTreeMap::new()).expect("no differentials");
        let collar = cone_complex(&ChainMap::identity(&kernel));
        let prev = levels.last().cloned().expect("nonempty");
        let next = ChainComplex::direct_sum_all(field, &[tgt, &extra, &collar]).expect("one field");
        let mut comp = BTreeMap::new();
        for (&k, &dk) in prev.dims() {
            let xs = src.dim(k);
            let es = dk - xs;
            let mut m = Matrix::zeros(field, next.dim(k), dk);
            m.set_block(0, 0, &step.component(k));
            m.set_block(tgt.dim(k), xs, &Matrix::identity(field, es));
            let row = tgt.dim(k) + es;
            if let Some(h) = retract.get(&(k - 1)) {
                m.set_block(row, 0, &h.mul(&src.d(k)));
            }
            if let Some(h) = retract.get(&k) {
                m.set_block(row + kernel.dim(k - 1), 0, h);
            }
            comp.insert(k, m);
        }
        steps.push(ChainMap::from_parts(prev, next.clone(), comp));
        extra = extra.direct_sum(&collar).expect("one field");
        let proj = next
            .dims()
            .keys()
            .map(|&k| {
                let mut p = Matrix::zeros(field, tgt.dim(k), next.dim(k));
                p.set_block(0, 0, &Matrix::identity(field, tgt.dim(k)));
                (k, p)
            })
            .collect();
        rho.push(ChainMap::from_parts(next.clone(), tgt.clone(), proj));
        levels.push(next);
    }
    let monic = Sequence::from_parts((lo, hi), levels, steps);
    let rho = SequenceMap::new(&monic, x, rho).expect("projections commute with the steps");
    (monic, rho)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TruncationKind {
    /// `n ↦ τ_{≥ -n} c`.
    Postnikov,
    /// `n ↦ Cone(τ_{≥ -n} c -> c)`.
    Whitehead,
}

pub fn truncation_sequence(c: &ChainComplex, window: (i64, i64), kind: TruncationKind) -> Result<Sequence, Error> {
    let (lo, hi) = window;
    if lo > hi {
        return Err(Error::EmptyWindow(lo, hi));
    }
    let truncs: Vec<(ChainComplex, ChainMap)> = (lo..=hi).map(|n| truncate(c, -n, TruncationMode::AtLeast)).collect();
    let steps: Vec<ChainMap> = truncs
        .windows(2)
        .map(|w| factor_through(&w[0].1, &w[1].1).expect("truncations are nested"))
        .collect();
    let seq = match kind {
        TruncationKind::Postnikov => {
            Sequence::from_parts(window, truncs.iter().map(|t| t.0.clone()).collect(), steps)
        }
        TruncationKind::Whitehead => {
            let id = ChainMap::identity(c);
            let levels = truncs.iter().map(|t| cone_complex(&t.1)).collect();
            let cone_steps = steps
                .iter()
                .enumerate()
                .map(|(i, s)| cone_map_unchecked(&truncs[i].1, &truncs[i + 1].1, s, &id))
                .collect();
            Sequence::from_parts(window, levels, cone_steps)
        }
    };
    Ok(seq)
}
