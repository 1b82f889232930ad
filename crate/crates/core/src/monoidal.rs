//! The symmetric monoidal structure on sequences: Day convolution, its
//! completion, the internal hom computed as an end, the two reflector
//! formulas and the dualizability test.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::chain::{
    cone_complex, cone_map_unchecked, factor_through, hom_blocks, hom_complex, hom_post, hom_pre, subcomplex,
    tensor, tensor_dual_to_hom, tensor_maps, ChainComplex, ChainMap,
};
use crate::error::Error;
use crate::exactlin::{Field, Matrix};
use crate::sequence::{completion, is_graded_equivalence, monic_form, unit_sequence, Sequence, SequenceMap};

fn same_field(x: &Sequence, y: &Sequence) -> Result<Field, Error> {
    if x.field() != y.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(x.field())
}

/// Day convolution with the inclusions of every level into `X(∞) ⊗ Y(∞)`.
fn day_parts(x: &Sequence, y: &Sequence) -> Result<(Sequence, Vec<ChainMap>), Error> {
    same_field(x, y)?;
    x.require_monic()?;
    y.require_monic()?;
    let ambient = tensor(x.top(), y.top())?;
    let (nx, mx) = x.window();
    let (ny, my) = y.window();
    let window = (nx + ny, mx + my);
    let xi: BTreeMap<i64, ChainMap> = (nx..=mx).map(|p| (p, x.composite(p, mx))).collect();
    let yi: BTreeMap<i64, ChainMap> = (ny..=my).map(|q| (q, y.composite(q, my))).collect();
    let mut images: BTreeMap<(i64, i64), ChainMap> = BTreeMap::new();
    let mut levels = Vec::new();
    let mut incls = Vec::new();
    for n in window.0..=window.1 {
        // p runs far enough to pick up both tails X(N)⊗Y(∞) and X(∞)⊗Y(N).
        let pairs: BTreeSet<(i64, i64)> =
            (nx.min(n - my)..=mx.max(n - ny)).map(|p| (x.clamp(p), y.clamp(n - p))).collect();
        let mut spans: BTreeMap<i64, Vec<Matrix>> = BTreeMap::new();
        for pq in pairs {
            if let alloc::collections::btree_map::Entry::Vacant(e) = images.entry(pq) {
                e.insert(tensor_maps(&xi[&pq.0], &yi[&pq.1])?);
            }
            let f = &images[&pq];
            for &k in f.source().dims().keys() {
                spans.entry(k).or_default().push(f.component(k));
            }
        }
        let spans = spans
            .into_iter()
            .map(|(k, parts)| {
                let refs: Vec<&Matrix> = parts.iter().collect();
                (k, Matrix::hstack(x.field(), ambient.dim(k), &refs))
            })
            .collect();
        let (level, incl) = subcomplex(&ambient, &spans)?;
        levels.push(level);
        incls.push(incl);
    }
    let steps = incls
        .windows(2)
        .map(|w| factor_through(&w[0], &w[1]).expect("levels are nested"))
        .collect();
    Ok((Sequence::from_parts(window, levels, steps), incls))
}

/// `(x ⊗ y)(n) = Σ_{p+q=n} X(p) ⊗ Y(q)` inside `X(∞) ⊗ Y(∞)`; both operands
/// must have injective steps.
pub fn day_tensor(x: &Sequence, y: &Sequence) -> Result<Sequence, Error> {
    Ok(day_parts(x, y)?.0)
}

/// `f ⊗ g` between Day convolutions of monic sequences.
pub fn day_tensor_maps(f: &SequenceMap, g: &SequenceMap) -> Result<SequenceMap, Error> {
    let (src, src_incl) = day_parts(f.source(), g.source())?;
    let (tgt, tgt_incl) = day_parts(f.target(), g.target())?;
    let top = tensor_maps(f.component(f.window().1), g.component(g.window().1))?;
    let lo = src.window().0;
    let comps = (0..src_incl.len())
        .map(|i| {
            let pushed = top.compose(&src_incl[i])?;
            factor_through(&pushed, &tgt_incl[i]).ok_or(Error::NonCommutingSquare { index: lo + i as i64 })
        })
        .collect::<Result<Vec<_>, _>>()?;
    SequenceMap::new(&src, &tgt, comps)
}

/// `comp(x' ⊗ y')` with `x'`, `y'` the monic forms of the operands.
pub fn completed_tensor(x: &Sequence, y: &Sequence) -> Result<Sequence, Error> {
    same_field(x, y)?;
    let (xm, _) = monic_form(x);
    let (ym, _) = monic_form(y);
    Ok(completion(&day_tensor(&xm, &ym)?).0)
}

/// One level of the end: the compatible families inside a finite product.
#[derive(Clone, Debug)]
struct EndLevel {
    range: (i64, i64),
    factors: Vec<ChainComplex>,
    product: ChainComplex,
    incl: ChainMap,
}

impl EndLevel {
    fn offset(&self, m: i64) -> usize {
        (m - self.range.0) as usize
    }

    /// Projection of the product onto the factor at `m`.
    fn projection(&self, m: i64) -> ChainMap {
        let field = self.product.field();
        let i = self.offset(m);
        let comp = self
            .product
            .dims()
            .iter()
            .map(|(&k, &dk)| {
                let before: usize = self.factors[..i].iter().map(|f| f.dim(k)).sum();
                let mut p = Matrix::zeros(field, self.factors[i].dim(k), dk);
                p.set_block(0, before, &Matrix::identity(field, self.factors[i].dim(k)));
                (k, p)
            })
            .collect();
        ChainMap::from_parts(self.product.clone(), self.factors[i].clone(), comp)
    }
}

fn end_range(x: &Sequence, y: &Sequence, n: i64, pad: i64) -> (i64, i64) {
    let (nx, mx) = x.window();
    let (ny, my) = y.window();
    (nx.min(ny - n) - pad, mx.max(my - n) + pad)
}

fn end_level(x: &Sequence, y: &Sequence, n: i64, pad: i64) -> Result<EndLevel, Error> {
    let field = x.field();
    let range = end_range(x, y, n, pad);
    let factors =
        (range.0..=range.1).map(|m| hom_complex(x.level(m), y.level(m + n))).collect::<Result<Vec<_>, _>>()?;
    let refs: Vec<&ChainComplex> = factors.iter().collect();
    let product = ChainComplex::direct_sum_all(field, &refs)?;
    let mut level = EndLevel { range, factors, product: product.clone(), incl: ChainMap::identity(&product) };
    // Δ(φ)_m = y ∘ φ_m - φ_{m+1} ∘ x_m for consecutive m.
    let mut defects = Vec::new();
    for m in range.0..range.1 {
        let post = hom_post(x.level(m), &y.step(m + n))?.compose(&level.projection(m))?;
        let pre = hom_pre(&x.step(m), y.level(m + n + 1))?.compose(&level.projection(m + 1))?;
        defects.push(post.add(&pre.neg())?);
    }
    let refs: Vec<&ChainMap> = defects.iter().collect();
    let delta = ChainMap::stack(&product, &refs)?;
    let kernels = product.dims().keys().map(|&k| (k, delta.component(k).kernel_basis())).collect();
    let (_, incl) = subcomplex(&product, &kernels)?;
    level.incl = incl;
    Ok(level)
}

fn end_parts(x: &Sequence, y: &Sequence, pad: i64) -> Result<(Sequence, Vec<EndLevel>), Error> {
    same_field(x, y)?;
    let (nx, mx) = x.window();
    let (ny, my) = y.window();
    let window = (ny - mx - 1, my - nx + 1);
    let parts = (window.0..=window.1).map(|n| end_level(x, y, n, pad)).collect::<Result<Vec<_>, _>>()?;
    let mut steps = Vec::new();
    for (i, w) in parts.windows(2).enumerate() {
        let n = window.0 + i as i64;
        let (from, to) = (&w[0], &w[1]);
        // Postcompose with y; indices outside the old range reuse its end factors.
        let comps = (to.range.0..=to.range.1)
            .map(|m| {
                let c = m.clamp(from.range.0, from.range.1);
                hom_post(x.level(m), &y.step(m + n))?.compose(&from.projection(c))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let refs: Vec<&ChainMap> = comps.iter().collect();
        let along = ChainMap::stack(&from.product, &refs)?;
        debug_assert_eq!(*along.target(), to.product);
        let pushed = along.compose(&from.incl)?;
        steps.push(factor_through(&pushed, &to.incl).expect("postcomposition preserves compatible families"));
    }
    let levels = parts.iter().map(|p| p.incl.source().clone()).collect();
    Ok((Sequence::from_parts(window, levels, steps), parts))
}

/// `Hom_Fil(x, y)(n) = ∫_m Hom(X(m), Y(m+n))`, computed as the compatible
/// families over a finite range of `m` outside which both sides are constant.
pub fn internal_hom_fil(x: &Sequence, y: &Sequence) -> Result<Sequence, Error> {
    Ok(end_parts(x, y, 0)?.0)
}

/// As [`internal_hom_fil`] with the index range widened by `pad` on both
/// sides; the result does not depend on `pad`.
pub fn internal_hom_fil_padded(x: &Sequence, y: &Sequence, pad: i64) -> Result<Sequence, Error> {
    if pad < 0 {
        return Err(Error::InvalidParameter(alloc::format!("negative padding {pad}")));
    }
    Ok(end_parts(x, y, pad)?.0)
}

/// A basis of the strict sequence maps `x -> y` (degree-zero cycles of the
/// end at level 0).
pub fn sequence_map_basis(x: &Sequence, y: &Sequence) -> Result<Vec<SequenceMap>, Error> {
    let field = same_field(x, y)?;
    let level = end_level(x, y, 0, 0)?;
    let sub = level.incl.source();
    let cycles = sub.d(0).kernel_basis();
    let coords = level.incl.component(0).mul(&cycles);
    let mut out = Vec::new();
    for c in 0..coords.cols() {
        let column = coords.column(c);
        let mut offset = 0;
        let mut family = BTreeMap::new();
        for m in level.range.0..=level.range.1 {
            let (a, b) = (x.level(m), y.level(m));
            let mut comp = BTreeMap::new();
            for (k, off, da, db) in hom_blocks(a, b, 0) {
                let entries = column[offset + off..offset + off + da * db].to_vec();
                comp.insert(k, Matrix::from_data(field, db, da, entries)?);
            }
            offset += level.factors[level.offset(m)].dim(0);
            family.insert(m, ChainMap::new(a.clone(), b.clone(), comp)?);
        }
        let (lo, hi) = level.range;
        out.push(SequenceMap::from_fn(x, y, |m| Ok(family[&m.clamp(lo, hi)].clone()))?);
    }
    Ok(out)
}

/// Which reflector formula [`sequence_reflector`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReflectorMode {
    /// `n ↦ Hom(Cone(X(-n-1) -> X(∞)), d)`.
    UnitStep,
    /// `n ↦ Hom(X(-n), d)`.
    LowerConstant,
}

pub fn sequence_reflector(x: &Sequence, d: &ChainComplex, mode: ReflectorMode) -> Result<Sequence, Error> {
    if x.field() != d.field() {
        return Err(Error::FieldMismatch);
    }
    let (nx, mx) = x.window();
    match mode {
        ReflectorMode::UnitStep => {
            let window = (-mx - 1, -nx - 1);
            let quotient = |n: i64| x.composite(-n - 1, mx);
            let levels =
                (window.0..=window.1).map(|n| hom_complex(&cone_complex(&quotient(n)), d)).collect::<Result<_, _>>()?;
            let steps = (window.0..window.1)
                .map(|n| {
                    let top = ChainMap::identity(x.top());
                    let back = cone_map_unchecked(&quotient(n + 1), &quotient(n), &x.step(-n - 2), &top);
                    hom_pre(&back, d)
                })
                .collect::<Result<_, _>>()?;
            Ok(Sequence::from_parts(window, levels, steps))
        }
        ReflectorMode::LowerConstant => {
            let window = (-mx, -nx);
            let levels = (window.0..=window.1).map(|n| hom_complex(x.level(-n), d)).collect::<Result<_, _>>()?;
            let steps = (window.0..window.1).map(|n| hom_pre(&x.step(-n - 1), d)).collect::<Result<_, _>>()?;
            Ok(Sequence::from_parts(window, levels, steps))
        }
    }
}

/// `D_{≤0}`: `d` at every `n ≤ 0`, zero from `1` on.
pub fn lower_constant(d: &ChainComplex) -> Sequence {
    let zero = ChainComplex::zero(d.field());
    Sequence::from_parts((0, 1), alloc::vec![d.clone(), zero.clone()], alloc::vec![ChainMap::zero(d, &zero)])
}

/// The canonical map `x ⊗ Hom_Fil(x, 1) -> Hom_Fil(x, x)` for a monic `x`.
///
/// Everything is evaluated inside `∏_m Hom(X(m), X(∞))`, where the map is
/// `a ⊗ φ ↦ (z ↦ a · φ(z))`, and then factored through the end.
pub fn canonical_dual_map(x: &Sequence) -> Result<SequenceMap, Error> {
    x.require_monic()?;
    let field = x.field();
    let (_, mx) = x.window();
    let unit = unit_sequence(field);
    let (dual, dual_parts) = end_parts(x, &unit, 0)?;
    let (day, day_incl) = day_parts(x, &dual)?;
    let (ends, end_levels) = end_parts(x, x, 0)?;

    let top = x.top();
    let dual_top = dual_parts.last().expect("nonempty window");
    debug_assert_eq!(dual_top.range.1, mx);
    let functional = dual_top.projection(mx).compose(&dual_top.incl)?;
    let pair = tensor_maps(&ChainMap::identity(top), &functional)?;
    let evaluate = tensor_dual_to_hom(top, top)?.compose(&pair)?;

    let (dl, dh) = day.window();
    let (el, eh) = ends.window();
    let lo = dl.min(el);
    let comps = (lo..=dh.max(eh))
        .map(|n| {
            let nt = n.clamp(dl, dh);
            let level = &end_levels[(n.clamp(el, eh) - el) as usize];
            let nh = n.clamp(el, eh);
            let restrict = (level.range.0..=level.range.1)
                .map(|m| hom_pre(&x.composite(m, mx), top))
                .collect::<Result<Vec<_>, _>>()?;
            let refs: Vec<&ChainMap> = restrict.iter().collect();
            let spread = ChainMap::stack(evaluate.target(), &refs)?;
            let phi = spread.compose(&evaluate)?.compose(&day_incl[(nt - dl) as usize])?;
            let widen = (level.range.0..=level.range.1)
                .map(|m| hom_post(x.level(m), &x.composite(m + nh, mx)))
                .collect::<Result<Vec<_>, _>>()?;
            let refs: Vec<&ChainMap> = widen.iter().collect();
            let embed = ChainMap::direct_sum(&refs)?.compose(&level.incl)?;
            factor_through(&phi, &embed).ok_or(Error::NonCommutingSquare { index: n })
        })
        .collect::<Result<Vec<_>, _>>()?;
    SequenceMap::new(&day, &ends, comps)
}

/// Whether the canonical map `x ⊗ Hom_Fil(x, 1) -> Hom_Fil(x, x)` (computed on
/// a monic form of `x`) is a graded equivalence.
pub fn is_dualizable_filtered(x: &Sequence) -> bool {
    let (xm, _) = monic_form(x);
    match canonical_dual_map(&xm) {
        Ok(f) => is_graded_equivalence(&f),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::tensor;
    use crate::graded::{graded_hom, graded_tensor, is_dualizable_graded};
    use crate::sequence::{gr, is_complete, is_levelwise_quasi_iso, step_sequence};

    const Q: Field = Field::Rational;

    fn inclusion_sequence() -> Sequence {
        // k ⊆ k², both in degree 0, window (0, 1).
        let k = ChainComplex::unit(Q);
        let k2 = ChainComplex::concentrated(Q, 0, 2);
        let i = ChainMap::new(k.clone(), k2.clone(), [(0, Matrix::from_i64(Q, 2, 1, &[1, 0]))].into_iter().collect())
            .unwrap();
        Sequence::new((0, 1), alloc::vec![k, k2], alloc::vec![i]).unwrap()
    }

    fn levelwise_qi(a: &Sequence, b: &Sequence) -> bool {
        let (lo, hi) = crate::sequence::union_window(a.window(), b.window());
        (lo..=hi).all(|n| a.level(n).quasi_isomorphic(b.level(n)))
    }

    #[test]
    fn generators_multiply() {
        let a = ChainComplex::two_term(1, Matrix::from_i64(Q, 1, 2, &[1, 1]));
        let b = ChainComplex::concentrated(Q, -1, 2);
        let t = day_tensor(&step_sequence(2, a.clone()), &step_sequence(-3, b.clone())).unwrap();
        let expect = step_sequence(-1, tensor(&a, &b).unwrap());
        assert_eq!(t, expect.rewindow(-3, -1));
    }

    #[test]
    fn unit_law() {
        let x = inclusion_sequence();
        let t = day_tensor(&unit_sequence(Q), &x).unwrap();
        assert!(levelwise_qi(&t, &x));
    }

    #[test]
    fn rejects_non_monic() {
        let k = ChainComplex::unit(Q);
        let x = Sequence::new((0, 1), alloc::vec![k.clone(), k.clone()], alloc::vec![ChainMap::zero(&k, &k)]).unwrap();
        assert_eq!(day_tensor(&x, &x), Err(Error::NotMonic { index: 0 }));
    }

    #[test]
    fn completed_tensor_examples() {
        let s = step_sequence(1, ChainComplex::unit(Q));
        let t = completed_tensor(&s, &s).unwrap();
        assert!(is_complete(&t));
        assert!(levelwise_qi(&t, &step_sequence(2, ChainComplex::unit(Q))));
        let cst = Sequence::constant(ChainComplex::unit(Q));
        let t = completed_tensor(&cst, &inclusion_sequence()).unwrap();
        assert!(t.levels().iter().all(ChainComplex::is_acyclic));
        assert!(gr(&t).components().values().all(ChainComplex::is_acyclic));
    }

    #[test]
    fn end_examples() {
        let a = ChainComplex::two_term(1, Matrix::from_i64(Q, 1, 1, &[0]));
        let y = inclusion_sequence();
        let h = internal_hom_fil(&step_sequence(0, a.clone()), &y).unwrap();
        for n in -3..4 {
            assert!(h.level(n).quasi_isomorphic(&hom_complex(&a, y.level(n)).unwrap()), "level {n}");
        }
        assert!(internal_hom_fil(&y, &Sequence::zero(Q)).unwrap().levels().iter().all(ChainComplex::is_zero));

        // Commuting pairs (φ_0 : k -> k, φ_1 : k² -> k²) with φ_1 i = i φ_0:
        // φ_1 has its first column (φ_0, 0), so 1 + 2 free entries.
        let h = internal_hom_fil(&y, &y).unwrap();
        assert_eq!(h.level(0).dim(0), 3);
        assert_eq!(sequence_map_basis(&y, &y).unwrap().len(), 3);
    }

    #[test]
    fn end_is_insensitive_to_padding() {
        let y = inclusion_sequence();
        let x = step_sequence(1, ChainComplex::two_term(0, Matrix::from_i64(Q, 1, 1, &[0])));
        let plain = internal_hom_fil(&x, &y).unwrap();
        for pad in 1..3 {
            let wide = internal_hom_fil_padded(&x, &y, pad).unwrap();
            assert_eq!(plain.window(), wide.window());
            for n in plain.window().0..=plain.window().1 {
                assert_eq!(plain.level(n).dims(), wide.level(n).dims());
                assert!(plain.level(n).quasi_isomorphic(wide.level(n)));
            }
        }
    }

    #[test]
    fn strong_closed_on_generators() {
        let y = inclusion_sequence();
        for m in -2..=2 {
            let x = step_sequence(m, ChainComplex::two_term(1, Matrix::from_i64(Q, 1, 1, &[0])));
            let lhs = gr(&internal_hom_fil(&x, &y).unwrap());
            let rhs = graded_hom(&gr(&x), &gr(&y)).unwrap();
            assert!(lhs.quasi_isomorphic(&rhs), "m = {m}");
        }
    }

    #[test]
    fn strong_monoidal_on_small_case() {
        let y = inclusion_sequence();
        let lhs = gr(&day_tensor(&y, &y).unwrap());
        let rhs = graded_tensor(&gr(&y), &gr(&y)).unwrap();
        assert!(lhs.quasi_isomorphic(&rhs));
    }

    #[test]
    fn reflector_examples() {
        let unit = ChainComplex::unit(Q);
        let r = sequence_reflector(&unit_sequence(Q), &unit, ReflectorMode::UnitStep).unwrap();
        assert!(levelwise_qi(&r, &unit_sequence(Q)));
        let r = sequence_reflector(&step_sequence(2, unit.clone()), &unit, ReflectorMode::LowerConstant).unwrap();
        for n in -5..5 {
            assert_eq!(r.level(n).total_dim(), usize::from(n <= -2), "n = {n}");
        }
        let x = unit_sequence(Q).direct_sum(&step_sequence(1, unit.clone())).unwrap();
        let r = sequence_reflector(&x, &unit, ReflectorMode::UnitStep).unwrap();
        assert!(r.level(-100).is_acyclic());
        let far = r.level(100);
        assert!(far.quasi_isomorphic(&hom_complex(x.top(), &unit).unwrap()));
    }

    #[test]
    fn reflectors_match_ends() {
        let d = ChainComplex::two_term(1, Matrix::from_i64(Q, 1, 1, &[0]));
        let x = inclusion_sequence();
        let a = sequence_reflector(&x, &d, ReflectorMode::UnitStep).unwrap();
        let b = internal_hom_fil(&x, &step_sequence(0, d.clone())).unwrap();
        assert!(levelwise_qi(&a, &b));
        let a = sequence_reflector(&x, &d, ReflectorMode::LowerConstant).unwrap();
        let b = internal_hom_fil(&x, &lower_constant(&d)).unwrap();
        assert!(levelwise_qi(&a, &b));
    }

    #[test]
    fn dualizable_examples() {
        assert!(is_dualizable_filtered(&unit_sequence(Q)));
        assert!(is_dualizable_filtered(&Sequence::constant(ChainComplex::unit(Q))));
        let x = inclusion_sequence();
        assert!(is_dualizable_filtered(&x));
        assert!(is_dualizable_graded(&gr(&x)));
    }

    #[test]
    fn tensor_of_equivalence() {
        let cst = Sequence::constant(ChainComplex::unit(Q));
        let f = SequenceMap::zero(&Sequence::zero(Q), &cst).unwrap();
        let z = inclusion_sequence();
        let g = day_tensor_maps(&SequenceMap::identity(&z), &f).unwrap();
        assert!(is_graded_equivalence(&g));
        assert!(!is_levelwise_quasi_iso(&g));
    }
}
