use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::complex::ChainComplex;
use super::map::ChainMap;
use crate::error::Error;
use crate::exactlin::{quotient_presentation, Matrix, Subquotient};

/// `H_k(c) = ker d_k / im d_{k+1}`, presented inside `C_k`.
pub fn homology(c: &ChainComplex, k: i64) -> Subquotient {
    let n = c.dim(k);
    let cycles = c.d(k).kernel_basis();
    let boundaries = c.d(k + 1);
    quotient_presentation(n, cycles, boundaries).expect("boundaries are cycles")
}

/// Matrix of `H_k(f)` in the bases chosen by [`homology`].
pub fn homology_map(f: &ChainMap, k: i64) -> Matrix {
    let hs = homology(f.source(), k);
    let ht = homology(f.target(), k);
    ht.project().mul(&f.component(k).mul(hs.basis()))
}

/// The mapping cone with its two structure maps.
#[derive(Clone, Debug)]
pub struct ConeResult {
    pub cone: ChainComplex,
    /// `B -> Cone(f)`, `b ↦ (0, b)`.
    pub include: ChainMap,
    /// `Cone(f) -> A[1]`, `(a, b) ↦ a`.
    pub project: ChainMap,
}

/// `Cone_k = A_{k-1} ⊕ B_k`, `d(a, b) = (-d_A a, f a + d_B b)`.
pub fn cone(f: &ChainMap) -> ConeResult {
    let cone = cone_complex(f);
    let (a, b) = (f.source(), f.target());
    let field = f.field();
    let mut inc = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for (&k, &n) in cone.dims() {
        let (da, db) = (a.dim(k - 1), b.dim(k));
        debug_assert_eq!(n, da + db);
        let mut i = Matrix::zeros(field, n, db);
        i.set_block(da, 0, &Matrix::identity(field, db));
        inc.insert(k, i);
        let mut p = Matrix::zeros(field, da, n);
        p.set_block(0, 0, &Matrix::identity(field, da));
        proj.insert(k, p);
    }
    let include = ChainMap::from_parts(b.clone(), cone.clone(), inc);
    let project = ChainMap::from_parts(cone.clone(), a.shift(1), proj);
    ConeResult { cone, include, project }
}

pub(crate) fn cone_complex(f: &ChainMap) -> ChainComplex {
    let (a, b) = (f.source(), f.target());
    let field = f.field();
    let mut dims = BTreeMap::new();
    for (&k, &d) in a.dims() {
        *dims.entry(k + 1).or_insert(0) += d;
    }
    for (&k, &d) in b.dims() {
        *dims.entry(k).or_insert(0) += d;
    }
    let mut diff = BTreeMap::new();
    for &k in dims.keys() {
        if !dims.contains_key(&(k - 1)) {
            continue;
        }
        let (a1, b0, a2, b1) = (a.dim(k - 1), b.dim(k), a.dim(k - 2), b.dim(k - 1));
        let mut m = Matrix::zeros(field, a2 + b1, a1 + b0);
        m.set_block(0, 0, &a.d(k - 1).neg());
        m.set_block(a2, 0, &f.component(k - 1));
        m.set_block(a2, a1, &b.d(k));
        diff.insert(k, m);
    }
    ChainComplex::from_parts(field, dims, diff)
}

/// True iff the cone of `f` is acyclic.
pub fn is_quasi_iso(f: &ChainMap) -> bool {
    cone_complex(f).is_acyclic()
}

/// Map of cones induced by a commuting square
/// `target_of_f ∘ ... `: given `f: A -> B`, `g: A' -> B'`, `alpha: A -> A'`,
/// `beta: B -> B'` with `beta ∘ f = g ∘ alpha`, returns `(a, b) ↦ (alpha a, beta b)`.
pub fn cone_map(f: &ChainMap, g: &ChainMap, alpha: &ChainMap, beta: &ChainMap) -> Result<ChainMap, Error> {
    if alpha.source() != f.source() || alpha.target() != g.source() || beta.source() != f.target() || beta.target() != g.target() {
        return Err(Error::EndpointMismatch);
    }
    if beta.compose(f)? != g.compose(alpha)? {
        return Err(Error::NonCommutingSquare { index: 0 });
    }
    Ok(cone_map_unchecked(f, g, alpha, beta))
}

pub(crate) fn cone_map_unchecked(f: &ChainMap, g: &ChainMap, alpha: &ChainMap, beta: &ChainMap) -> ChainMap {
    let src = cone_complex(f);
    let tgt = cone_complex(g);
    let field = f.field();
    let comp = src
        .dims()
        .keys()
        .map(|&k| (k, Matrix::block_diag(field, &[&alpha.component(k - 1), &beta.component(k)])))
        .collect();
    ChainMap::from_parts(src, tgt, comp)
}

/// Blocks `(i, j, offset, dim a_i, dim b_j)` of `(a ⊗ b)_n`, ascending in `i`.
pub(crate) fn tensor_blocks(a: &ChainComplex, b: &ChainComplex, n: i64) -> Vec<(i64, i64, usize, usize, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for (&i, &da) in a.dims() {
        let db = b.dim(n - i);
        if db > 0 {
            out.push((i, n - i, off, da, db));
            off += da * db;
        }
    }
    out
}

fn tensor_dims(a: &ChainComplex, b: &ChainComplex) -> BTreeMap<i64, usize> {
    let mut dims = BTreeMap::new();
    for (&i, &da) in a.dims() {
        for (&j, &db) in b.dims() {
            *dims.entry(i + j).or_insert(0) += da * db;
        }
    }
    dims
}

/// `(a ⊗ b)_n = ⊕_{i+j=n} a_i ⊗ b_j` with `d(x ⊗ y) = dx ⊗ y + (-1)^{|x|} x ⊗ dy`.
pub fn tensor(a: &ChainComplex, b: &ChainComplex) -> Result<ChainComplex, Error> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let field = a.field();
    let dims = tensor_dims(a, b);
    let mut diff = BTreeMap::new();
    for (&n, &dn) in &dims {
        let Some(&dm) = dims.get(&(n - 1)) else { continue };
        let src = tensor_blocks(a, b, n);
        let tgt = tensor_blocks(a, b, n - 1);
        let offset_of = |i: i64| tgt.iter().find(|t| t.0 == i).map(|t| t.2);
        let mut m = Matrix::zeros(field, dm, dn);
        for &(i, j, off, da, db) in &src {
            if let (Some(t), Some(d)) = (offset_of(i - 1), a.d_ref(i)) {
                m.set_block(t, off, &d.kron(&Matrix::identity(field, db)));
            }
            if let (Some(t), Some(d)) = (offset_of(i), b.d_ref(j)) {
                m.set_block(t, off, &Matrix::identity(field, da).kron(d).signed(i));
            }
        }
        diff.insert(n, m);
    }
    Ok(ChainComplex::from_parts(field, dims, diff))
}

/// `f ⊗ g : A ⊗ B -> A' ⊗ B'`.
pub fn tensor_maps(f: &ChainMap, g: &ChainMap) -> Result<ChainMap, Error> {
    let src = tensor(f.source(), g.source())?;
    let tgt = tensor(f.target(), g.target())?;
    let field = f.field();
    let mut comp = BTreeMap::new();
    for (&n, &dn) in src.dims() {
        let mut m = Matrix::zeros(field, tgt.dim(n), dn);
        let tblocks = tensor_blocks(f.target(), g.target(), n);
        for (i, j, off, _, _) in tensor_blocks(f.source(), g.source(), n) {
            if let Some(t) = tblocks.iter().find(|t| t.0 == i) {
                m.set_block(t.2, off, &f.component(i).kron(&g.component(j)));
            }
        }
        comp.insert(n, m);
    }
    Ok(ChainMap::from_parts(src, tgt, comp))
}

/// The symmetry `a ⊗ b -> b ⊗ a`, `x ⊗ y ↦ (-1)^{|x||y|} y ⊗ x`.
pub fn tensor_swap(a: &ChainComplex, b: &ChainComplex) -> Result<ChainMap, Error> {
    let src = tensor(a, b)?;
    let tgt = tensor(b, a)?;
    let field = a.field();
    let mut comp = BTreeMap::new();
    for (&n, &dn) in src.dims() {
        let mut m = Matrix::zeros(field, dn, dn);
        let tblocks = tensor_blocks(b, a, n);
        for (i, j, off, da, db) in tensor_blocks(a, b, n) {
            let t = tblocks.iter().find(|t| t.0 == j).expect("swapped block").2;
            let sign = field.from_i64(if (i * j).rem_euclid(2) == 0 { 1 } else { -1 });
            for s in 0..da {
                for u in 0..db {
                    m.set(t + u * da + s, off + s * db + u, sign.clone());
                }
            }
        }
        comp.insert(n, m);
    }
    Ok(ChainMap::from_parts(src, tgt, comp))
}

/// The associator `(a ⊗ b) ⊗ c -> a ⊗ (b ⊗ c)`; a permutation of bases.
pub fn tensor_associator(a: &ChainComplex, b: &ChainComplex, c: &ChainComplex) -> Result<ChainMap, Error> {
    let ab = tensor(a, b)?;
    let bc = tensor(b, c)?;
    let src = tensor(&ab, c)?;
    let tgt = tensor(a, &bc)?;
    let field = a.field();
    let mut comp = BTreeMap::new();
    for (n, perm) in associator_permutation(a, b, c) {
        let mut m = Matrix::zeros(field, perm.len(), perm.len());
        for (from, &to) in perm.iter().enumerate() {
            m.set(to, from, field.one());
        }
        comp.insert(n, m);
    }
    Ok(ChainMap::from_parts(src, tgt, comp))
}

/// For each degree, the position in `a ⊗ (b ⊗ c)` of each basis vector of
/// `(a ⊗ b) ⊗ c`.
pub(crate) fn associator_permutation(a: &ChainComplex, b: &ChainComplex, c: &ChainComplex) -> BTreeMap<i64, Vec<usize>> {
    let ab = tensor_dims(a, b);
    let ab = ChainComplex::from_parts(a.field(), ab, BTreeMap::new());
    let bc = ChainComplex::from_parts(a.field(), tensor_dims(b, c), BTreeMap::new());
    let mut out = BTreeMap::new();
    for (n, dn) in tensor_dims(&ab, c) {
        let mut perm = alloc::vec![0; dn];
        let outer = tensor_blocks(a, &bc, n);
        for (ij, l, off, _, dc) in tensor_blocks(&ab, c, n) {
            for (i, j, off2, da, db) in tensor_blocks(a, b, ij) {
                let &(_, jl, toff, _, dbc) = outer.iter().find(|t| t.0 == i).expect("outer block");
                let inner = tensor_blocks(b, c, jl);
                let &(_, _, boff, _, _) = inner.iter().find(|t| t.0 == j && t.1 == l).expect("inner block");
                for sa in 0..da {
                    for sb in 0..db {
                        for sc in 0..dc {
                            perm[off + (off2 + sa * db + sb) * dc + sc] = toff + sa * dbc + boff + sb * dc + sc;
                        }
                    }
                }
            }
        }
        out.insert(n, perm);
    }
    out
}

/// Degree-`n` matrix of `m ∘ (f ⊗ g)` for `m : A' ⊗ B' -> Z`, `f : A -> A'`,
/// `g : B -> B'`, computed blockwise without forming `f ⊗ g`.
pub(crate) fn compose_tensor_component(m: &ChainMap, f: &ChainMap, g: &ChainMap, n: i64) -> Matrix {
    let field = m.field();
    let rows = m.target().dim(n);
    let mn = m.component(n);
    let src = tensor_blocks(f.source(), g.source(), n);
    let cols = src.last().map_or(0, |b| b.2 + b.3 * b.4);
    let tblocks = tensor_blocks(f.target(), g.target(), n);
    let mut out = Matrix::zeros(field, rows, cols);
    for (i, j, off, da, db) in src {
        let Some(&(_, _, t, da2, db2)) = tblocks.iter().find(|b| b.0 == i) else { continue };
        let (fi, gj) = (f.component(i), g.component(j));
        // w[s][y] = Σ_x f[x, s] m[:, t + x db2 + y]
        let mut w = alloc::vec![alloc::vec![field.zero(); rows]; da * db2];
        for s in 0..da {
            for x in 0..da2 {
                let c = fi.get(x, s);
                if c.is_zero() {
                    continue;
                }
                for y in 0..db2 {
                    let col = t + x * db2 + y;
                    let acc = &mut w[s * db2 + y];
                    for (r, slot) in acc.iter_mut().enumerate() {
                        let v = mn.get(r, col);
                        if !v.is_zero() {
                            *slot = field.add(slot, &field.mul(c, v));
                        }
                    }
                }
            }
        }
        for s in 0..da {
            for u in 0..db {
                for y in 0..db2 {
                    let c = gj.get(y, u);
                    if c.is_zero() {
                        continue;
                    }
                    for r in 0..rows {
                        let v = &w[s * db2 + y][r];
                        if !v.is_zero() {
                            let cur = out.get(r, off + s * db + u).clone();
                            out.set(r, off + s * db + u, field.add(&cur, &field.mul(c, v)));
                        }
                    }
                }
            }
        }
    }
    out
}

/// `m ∘ (f ⊗ g)`.
pub fn compose_tensor(m: &ChainMap, f: &ChainMap, g: &ChainMap) -> Result<ChainMap, Error> {
    if m.field() != f.field() || m.field() != g.field() {
        return Err(Error::FieldMismatch);
    }
    if *m.source() != tensor(f.target(), g.target())? {
        return Err(Error::EndpointMismatch);
    }
    let src = tensor(f.source(), g.source())?;
    let comp = src.dims().keys().map(|&n| (n, compose_tensor_component(m, f, g, n))).collect();
    Ok(ChainMap::from_parts(src, m.target().clone(), comp))
}

/// Blocks `(k, offset, dim a_k, dim b_{k+n})` of `Hom(a, b)_n`, ascending in `k`.
/// Each block is a `b_{k+n} × a_k` matrix flattened row-major.
pub(crate) fn hom_blocks(a: &ChainComplex, b: &ChainComplex, n: i64) -> Vec<(i64, usize, usize, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for (&k, &da) in a.dims() {
        let db = b.dim(k + n);
        if db > 0 {
            out.push((k, off, da, db));
            off += da * db;
        }
    }
    out
}

/// `Hom(a, b)_n = ∏_k Hom(a_k, b_{k+n})` with `d φ = d_b ∘ φ - (-1)^n φ ∘ d_a`.
pub fn hom_complex(a: &ChainComplex, b: &ChainComplex) -> Result<ChainComplex, Error> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let field = a.field();
    let mut dims = BTreeMap::new();
    for (&k, &da) in a.dims() {
        for (&l, &db) in b.dims() {
            *dims.entry(l - k).or_insert(0) += da * db;
        }
    }
    let mut diff = BTreeMap::new();
    for (&n, &dn) in &dims {
        let Some(&dm) = dims.get(&(n - 1)) else { continue };
        let src = hom_blocks(a, b, n);
        let tgt = hom_blocks(a, b, n - 1);
        let mut m = Matrix::zeros(field, dm, dn);
        for &(k, t, da, db1) in &tgt {
            // φ_k contributes d_b ∘ φ_k.
            if let (Some(s), Some(d)) = (src.iter().find(|s| s.0 == k), b.d_ref(k + n)) {
                m.set_block(t, s.1, &d.kron(&Matrix::identity(field, da)));
            }
            // φ_{k-1} contributes -(-1)^n φ_{k-1} ∘ d_a.
            if let (Some(s), Some(d)) = (src.iter().find(|s| s.0 == k - 1), a.d_ref(k)) {
                m.set_block(t, s.1, &Matrix::identity(field, db1).kron(&d.transpose()).signed(n + 1));
            }
        }
        diff.insert(n, m);
    }
    Ok(ChainComplex::from_parts(field, dims, diff))
}

/// `Hom(a, g) : Hom(a, b) -> Hom(a, b')`, `φ ↦ g ∘ φ`.
pub fn hom_post(a: &ChainComplex, g: &ChainMap) -> Result<ChainMap, Error> {
    let src = hom_complex(a, g.source())?;
    let tgt = hom_complex(a, g.target())?;
    let field = a.field();
    let mut comp = BTreeMap::new();
    for (&n, &dn) in src.dims() {
        let mut m = Matrix::zeros(field, tgt.dim(n), dn);
        let tb = hom_blocks(a, g.target(), n);
        for (k, off, da, _) in hom_blocks(a, g.source(), n) {
            if let Some(t) = tb.iter().find(|t| t.0 == k) {
                m.set_block(t.1, off, &g.component(k + n).kron(&Matrix::identity(field, da)));
            }
        }
        comp.insert(n, m);
    }
    Ok(ChainMap::from_parts(src, tgt, comp))
}

/// `Hom(h, b) : Hom(a, b) -> Hom(a', b)`, `φ ↦ φ ∘ h` for `h : a' -> a`.
pub fn hom_pre(h: &ChainMap, b: &ChainComplex) -> Result<ChainMap, Error> {
    let src = hom_complex(h.target(), b)?;
    let tgt = hom_complex(h.source(), b)?;
    let field = b.field();
    let mut comp = BTreeMap::new();
    for (&n, &dn) in src.dims() {
        let mut m = Matrix::zeros(field, tgt.dim(n), dn);
        let sb = hom_blocks(h.target(), b, n);
        for (k, off, _, db) in hom_blocks(h.source(), b, n) {
            if let Some(s) = sb.iter().find(|s| s.0 == k) {
                m.set_block(off, s.1, &Matrix::identity(field, db).kron(&h.component(k).transpose()));
            }
        }
        comp.insert(n, m);
    }
    Ok(ChainMap::from_parts(src, tgt, comp))
}

/// The canonical map `a ⊗ Hom(b, 1) -> Hom(b, a)`, `x ⊗ φ ↦ (y ↦ x·φ(y))`.
pub fn tensor_dual_to_hom(a: &ChainComplex, b: &ChainComplex) -> Result<ChainMap, Error> {
    let unit = ChainComplex::unit(a.field());
    let dual = hom_complex(b, &unit)?;
    let src = tensor(a, &dual)?;
    let tgt = hom_complex(b, a)?;
    let field = a.field();
    let mut comp = BTreeMap::new();
    for (&n, &dn) in src.dims() {
        let mut m = Matrix::zeros(field, tgt.dim(n), dn);
        let tb = hom_blocks(b, a, n);
        for (_, j, off, da, dd) in tensor_blocks(a, &dual, n) {
            // Hom(b, 1)_j is Hom(b_{-j}, k); it lands in the Hom(b_{-j}, a_{n-j}) block,
            // and with row-major flattening the index bookkeeping is the identity.
            let t = tb.iter().find(|t| t.0 == -j).expect("matching hom block").1;
            m.set_block(t, off, &Matrix::identity(field, da * dd));
        }
        comp.insert(n, m);
    }
    ChainMap::new(src, tgt, comp)
}

/// Subcomplex spanned degreewise by the given columns; returns it with its inclusion.
///
/// Fails with `ContainmentViolation` if the spans are not closed under `d`.
pub fn subcomplex(ambient: &ChainComplex, spans: &BTreeMap<i64, Matrix>) -> Result<(ChainComplex, ChainMap), Error> {
    let field = ambient.field();
    let mut bases: BTreeMap<i64, Matrix> = BTreeMap::new();
    for (&k, s) in spans {
        if s.rows() != ambient.dim(k) {
            return Err(Error::Shape { expected: (ambient.dim(k), s.cols()), found: s.shape() });
        }
        let b = s.column_basis();
        if b.cols() > 0 {
            bases.insert(k, b);
        }
    }
    let dims: BTreeMap<i64, usize> = bases.iter().map(|(&k, b)| (k, b.cols())).collect();
    let mut diff = BTreeMap::new();
    for (&k, b) in &bases {
        let image = ambient.d(k).mul(b);
        match bases.get(&(k - 1)) {
            Some(below) => {
                let coords = below.solve(&image).ok_or(Error::ContainmentViolation)?;
                diff.insert(k, coords);
            }
            None if image.is_zero() => {}
            None => return Err(Error::ContainmentViolation),
        }
    }
    let sub = ChainComplex::from_parts(field, dims, diff);
    let incl = ChainMap::from_parts(sub.clone(), ambient.clone(), bases);
    Ok((sub, incl))
}

/// Quotient of `ambient` by the subcomplex spanned degreewise by `spans`;
/// returns it with the projection.
pub fn quotient(ambient: &ChainComplex, spans: &BTreeMap<i64, Matrix>) -> Result<(ChainComplex, ChainMap), Error> {
    let field = ambient.field();
    let mut pres: BTreeMap<i64, Subquotient> = BTreeMap::new();
    for (&k, &n) in ambient.dims() {
        let rel = spans.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(field, n, 0));
        let sq = quotient_presentation(n, Matrix::identity(field, n), rel)?;
        if let Some(below) = spans.get(&(k - 1)) {
            if !below.spans(&ambient.d(k).mul(sq.relations())) {
                return Err(Error::ContainmentViolation);
            }
        } else if !ambient.d(k).mul(sq.relations()).is_zero() {
            return Err(Error::ContainmentViolation);
        }
        pres.insert(k, sq);
    }
    let dims: BTreeMap<i64, usize> = pres.iter().map(|(&k, sq)| (k, sq.dim())).collect();
    let mut diff = BTreeMap::new();
    for (&k, sq) in &pres {
        if let Some(below) = pres.get(&(k - 1)) {
            diff.insert(k, below.project().mul(&ambient.d(k).mul(sq.basis())));
        }
    }
    let q = ChainComplex::from_parts(field, dims, diff);
    let proj = pres.iter().map(|(&k, sq)| (k, sq.project().clone())).collect();
    let p = ChainMap::from_parts(ambient.clone(), q.clone(), proj);
    Ok((q, p))
}

/// `h` with `through ∘ h = f`, if one exists; `through` is usually injective,
/// in which case `h` is unique.
pub fn factor_through(f: &ChainMap, through: &ChainMap) -> Option<ChainMap> {
    if f.target() != through.target() {
        return None;
    }
    let mut comp = BTreeMap::new();
    for &k in f.source().dims().keys() {
        let h = through.component(k).solve(&f.component(k))?;
        comp.insert(k, h);
    }
    ChainMap::new(f.source().clone(), through.source().clone(), comp).ok()
}

/// Which half of the standard t-structure to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TruncationMode {
    /// `τ_{≥k}`: cycles in degree `k`, everything above.
    AtLeast,
    /// `τ_{<k}`: `C_k / Z_k` in degree `k`, everything below.
    Below,
}

/// Smart truncation. `AtLeast` returns `τ_{≥k} c` with its inclusion into
/// `c`; `Below` returns `τ_{<k} c` with the projection from `c`. The two fit
/// into a short exact sequence `τ_{≥k} c → c → τ_{<k} c`.
pub fn truncate(c: &ChainComplex, k: i64, mode: TruncationMode) -> (ChainComplex, ChainMap) {
    let field = c.field();
    let cycles = c.d(k).kernel_basis();
    match mode {
        TruncationMode::AtLeast => {
            let mut dims: BTreeMap<i64, usize> = c.dims().range(k + 1..).map(|(&j, &d)| (j, d)).collect();
            dims.insert(k, cycles.cols());
            let mut diff: BTreeMap<i64, Matrix> = c.differentials().range(k + 2..).map(|(&j, m)| (j, m.clone())).collect();
            let top = cycles.solve(&c.d(k + 1)).expect("boundaries are cycles");
            diff.insert(k + 1, top);
            let t = ChainComplex::from_parts(field, dims, diff);
            let mut comp: BTreeMap<i64, Matrix> =
                c.dims().range(k + 1..).map(|(&j, &d)| (j, Matrix::identity(field, d))).collect();
            comp.insert(k, cycles);
            let incl = ChainMap::from_parts(t.clone(), c.clone(), comp);
            (t, incl)
        }
        TruncationMode::Below => {
            let n = c.dim(k);
            let q = quotient_presentation(n, Matrix::identity(field, n), cycles).expect("cycles lie in C_k");
            let mut dims: BTreeMap<i64, usize> = c.dims().range(..k).map(|(&j, &d)| (j, d)).collect();
            dims.insert(k, q.dim());
            let mut diff: BTreeMap<i64, Matrix> = c.differentials().range(..k).map(|(&j, m)| (j, m.clone())).collect();
            diff.insert(k, c.d(k).mul(q.basis()));
            let t = ChainComplex::from_parts(field, dims, diff);
            let mut comp: BTreeMap<i64, Matrix> =
                c.dims().range(..k).map(|(&j, &d)| (j, Matrix::identity(field, d))).collect();
            comp.insert(k, q.project().clone());
            let proj = ChainMap::from_parts(c.clone(), t.clone(), comp);
            (t, proj)
        }
    }
}
