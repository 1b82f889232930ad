//! Acceptance criteria, one line of output per criterion.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use filtra_core::chain::{cone, homology_map, tensor, truncate, ChainComplex, ChainMap, TruncationMode};
use filtra_core::exactlin::{Field, Matrix};
use filtra_core::filtalg::{diff_op_stages, diff_ops_example, gr_algebra, validate_algebra};
use filtra_core::generate::{
    one_plus_t, one_plus_t_with_constant_tail, postnikov, random_complex, random_monic_sequence, random_scalar,
    random_sequence_map, t_adic, RandomShape,
};
use filtra_core::graded::{graded_hom, graded_tensor, is_dualizable_graded};
use filtra_core::monoidal::{
    day_tensor, internal_hom_fil, is_dualizable_filtered, lower_constant, sequence_reflector, ReflectorMode,
};
use filtra_core::sequence::{
    completion, completion_map, gr, gr_map, is_complete, is_graded_equivalence, is_levelwise_quasi_iso,
    step_sequence, Sequence, SequenceMap,
};
use filtra_core::specseq::{abutment, classical_pages, pages};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q: Field = Field::Rational;
const F5: Field = Field::Prime(5);

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus_shape(rng: &mut ChaCha8Rng, bounded_below: bool) -> RandomShape {
    RandomShape {
        degrees: 4,
        lowest_degree: rng.gen_range(-1..=0),
        max_total_dim: 4,
        max_levels: 5,
        bounded_below,
    }
}

/// 100 monic sequences over each of `Q` and `F_5`, every other one bounded below.
fn corpus() -> Vec<Sequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let mut out = Vec::new();
    for field in [Q, F5] {
        for i in 0..100 {
            let shape = corpus_shape(&mut rng, i % 2 == 0);
            out.push(random_monic_sequence(&mut rng, field, &shape));
        }
    }
    out
}

fn mixed(rng: &mut ChaCha8Rng, field: Field, shape: RandomShape) -> Sequence {
    let bounded_below = rng.gen();
    random_monic_sequence(rng, field, &RandomShape { bounded_below, ..shape })
}

fn nonzero_complex(rng: &mut ChaCha8Rng, field: Field, shape: &RandomShape) -> ChainComplex {
    loop {
        let c = random_complex(rng, field, shape);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Same dimension and same rank of `d` in every degree.
fn isomorphic(a: &ChainComplex, b: &ChainComplex) -> bool {
    a.dims() == b.dims() && a.dims().keys().all(|&k| a.d(k).rank() == b.d(k).rank())
}

fn union_range(a: &Sequence, b: &Sequence, margin: i64) -> std::ops::RangeInclusive<i64> {
    let lo = a.window().0.min(b.window().0) - margin;
    let hi = a.window().1.max(b.window().1) + margin;
    lo..=hi
}

fn levelwise_iso(a: &Sequence, b: &Sequence) -> bool {
    union_range(a, b, 1).all(|n| {
        isomorphic(a.level(n), b.level(n))
            && a.level(n).dims().keys().all(|&k| a.step(n).component(k).rank() == b.step(n).component(k).rank())
    })
}

fn levelwise_qi(a: &Sequence, b: &Sequence) -> bool {
    union_range(a, b, 2).all(|n| a.level(n).quasi_isomorphic(b.level(n)))
}

fn criterion_1(corpus: &[Sequence]) -> Outcome {
    let start = Instant::now();
    let mut cells = 0;
    for (i, x) in corpus.iter().enumerate() {
        let ours = pages(x, 4);
        let theirs = classical_pages(x, 4).map_err(|e| format!("corpus {i}: {e}"))?;
        for (a, b) in ours.iter().zip(&theirs) {
            ensure(a.same_shape(b), || format!("corpus {i}: page {} differs", a.r()))?;
            ensure(a.d_squares_to_zero(), || format!("corpus {i}: d_{} squares to nonzero", a.r()))?;
            cells += a.cells().len();
        }
        for w in ours.windows(2) {
            let h = w[0].homology_dims();
            ensure(h.iter().all(|(&(p, q), &n)| w[1].dim(p, q) == n), || {
                format!("corpus {i}: E_{} is not the homology of E_{}", w[1].r(), w[0].r())
            })?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{} sequences, {cells} cells, r <= 4, {secs:.1}s", corpus.len()))
}

fn criterion_2(corpus: &[Sequence]) -> Outcome {
    for (i, x) in corpus.iter().enumerate() {
        let (hat, _) = completion(x);
        for (a, b) in pages(x, 4).iter().zip(&pages(&hat, 4)) {
            ensure(a.same_shape(b), || format!("corpus {i}: page {} changes under completion", a.r()))?;
        }
    }
    Ok(format!("{} sequences", corpus.len()))
}

fn inclusion_into_sum(x: &Sequence, k: &ChainComplex) -> SequenceMap {
    let cst = Sequence::constant(k.clone());
    let sum = x.direct_sum(&cst).unwrap();
    SequenceMap::from_fn(x, &sum, |n| {
        let id = ChainMap::identity(x.level(n));
        let zero = ChainMap::zero(x.level(n), k);
        ChainMap::stack(x.level(n), &[&id, &zero])
    })
    .unwrap()
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let small = |rng: &mut ChaCha8Rng| RandomShape {
        degrees: 3,
        lowest_degree: 0,
        max_total_dim: 3,
        max_levels: 3,
        bounded_below: rng.gen(),
    };
    let mut maps: Vec<(&str, SequenceMap)> = Vec::new();
    for i in 0..80 {
        let field = if i % 2 == 0 { Q } else { F5 };
        let (sx, sy) = (small(&mut rng), small(&mut rng));
        let x = random_monic_sequence(&mut rng, field, &sx);
        let y = if i % 4 < 2 { random_monic_sequence(&mut rng, field, &sy) } else { x.clone() };
        maps.push(("random", random_sequence_map(&mut rng, &x, &y).map_err(|e| e.to_string())?));
    }
    for i in 0..20 {
        let field = if i % 2 == 0 { Q } else { F5 };
        let shape = small(&mut rng);
        let k = nonzero_complex(&mut rng, field, &shape);
        let zero = Sequence::zero(field);
        maps.push(("0 -> cst(K)", SequenceMap::zero(&zero, &Sequence::constant(k.clone())).unwrap()));
        let x = random_monic_sequence(&mut rng, field, &shape);
        maps.push(("x -> x ⊕ cst(K)", inclusion_into_sum(&x, &k)));
        maps.push(("gamma", completion(&x).1));
        let mut s = random_scalar(&mut rng, field);
        while s == field.zero() {
            s = random_scalar(&mut rng, field);
        }
        maps.push(("unit multiple of id", SequenceMap::identity(&x).scale(&s)));
    }
    for d in 2..=4 {
        maps.push(("(1+t) ⊕ 0", one_plus_t_with_constant_tail(d, Q).unwrap()));
    }
    let mut positives = 0;
    for (i, (kind, f)) in maps.iter().enumerate() {
        let geq = is_graded_equivalence(f);
        let lqi = is_levelwise_quasi_iso(&completion_map(f));
        ensure(geq == lqi, || format!("map {i} ({kind}): graded equivalence {geq}, completed levelwise qi {lqi}"))?;
        ensure(*kind == "random" || geq, || format!("map {i} ({kind}) should be a graded equivalence"))?;
        positives += geq as usize;
    }
    Ok(format!("{} maps, {positives} graded equivalences", maps.len()))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let shape = RandomShape { degrees: 2, lowest_degree: 0, max_total_dim: 2, max_levels: 4, bounded_below: false };
    let mut count = 0;
    for m in -3..=3 {
        for n in -3..=3 {
            let a = nonzero_complex(&mut rng, Q, &shape);
            let b = nonzero_complex(&mut rng, Q, &shape);
            let (x, y) = (step_sequence(m, a), step_sequence(n, b));
            let t = day_tensor(&x, &y).map_err(|e| e.to_string())?;
            let expect = graded_tensor(&gr(&x), &gr(&y)).unwrap();
            ensure(gr(&t).quasi_isomorphic(&expect), || format!("<{m},A> ⊗ <{n},B>"))?;
            count += 1;
        }
    }
    let shape = RandomShape { degrees: 3, lowest_degree: 0, max_total_dim: 3, max_levels: 4, bounded_below: false };
    for i in 0..100 {
        let field = if i % 2 == 0 { Q } else { F5 };
        let x = mixed(&mut rng, field, shape);
        let y = mixed(&mut rng, field, shape);
        let t = day_tensor(&x, &y).map_err(|e| e.to_string())?;
        let expect = graded_tensor(&gr(&x), &gr(&y)).unwrap();
        ensure(gr(&t).quasi_isomorphic(&expect), || format!("random pair {i}"))?;
        count += 1;
    }
    Ok(format!("{count} pairs"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let small = RandomShape { degrees: 2, lowest_degree: 0, max_total_dim: 2, max_levels: 4, bounded_below: false };
    let shape = RandomShape { degrees: 3, lowest_degree: 0, max_total_dim: 3, max_levels: 4, bounded_below: false };
    let mut count = 0;
    for m in -3..=3 {
        for i in 0..10 {
            let field = if i % 2 == 0 { Q } else { F5 };
            let x = step_sequence(m, nonzero_complex(&mut rng, field, &small));
            let y = mixed(&mut rng, field, shape);
            let h = internal_hom_fil(&x, &y).map_err(|e| e.to_string())?;
            let expect = graded_hom(&gr(&x), &gr(&y)).unwrap();
            ensure(gr(&h).quasi_isomorphic(&expect), || format!("<{m},A> against random y {i}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let shape = RandomShape { degrees: 3, lowest_degree: -1, max_total_dim: 3, max_levels: 1, bounded_below: false };
    let mut count = 0;
    for m in -3..=3 {
        for n in -3..=3 {
            let field = if (m + n) % 2 == 0 { Q } else { F5 };
            let a = random_complex(&mut rng, field, &shape);
            let b = random_complex(&mut rng, field, &shape);
            let t = day_tensor(&step_sequence(m, a.clone()), &step_sequence(n, b.clone())).map_err(|e| e.to_string())?;
            let expect = step_sequence(m + n, tensor(&a, &b).unwrap());
            ensure(levelwise_iso(&t, &expect), || format!("<{m},A> ⊗ <{n},B>"))?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs (m, n) in [-3, 3]^2"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let shape = RandomShape { degrees: 3, lowest_degree: 0, max_total_dim: 3, max_levels: 4, bounded_below: false };
    let small = RandomShape { degrees: 2, lowest_degree: 0, max_total_dim: 2, max_levels: 1, bounded_below: false };
    let mut count = 0;
    for i in 0..60 {
        let field = if i % 2 == 0 { Q } else { F5 };
        let x = mixed(&mut rng, field, shape);
        let d = nonzero_complex(&mut rng, field, &small);
        let lower = sequence_reflector(&x, &d, ReflectorMode::LowerConstant).map_err(|e| e.to_string())?;
        let lower_end = internal_hom_fil(&x, &lower_constant(&d)).map_err(|e| e.to_string())?;
        ensure(levelwise_qi(&lower, &lower_end), || format!("lower-constant mode, input {i}"))?;
        let unit = sequence_reflector(&x, &d, ReflectorMode::UnitStep).map_err(|e| e.to_string())?;
        let unit_end = internal_hom_fil(&x, &step_sequence(0, d.clone())).map_err(|e| e.to_string())?;
        ensure(levelwise_qi(&unit, &unit_end), || format!("unit-step mode, input {i}"))?;
        count += 1;
    }
    Ok(format!("{count} inputs, both modes"))
}

fn criterion_8(corpus: &[Sequence]) -> Outcome {
    let bounded: Vec<&Sequence> = corpus.iter().filter(|x| x.bottom().is_zero()).collect();
    for (i, x) in bounded.iter().enumerate() {
        ensure(is_dualizable_graded(&gr(x)), || format!("bounded corpus {i}: gr not dualizable"))?;
        ensure(is_dualizable_filtered(x), || format!("bounded corpus {i}: not dualizable"))?;
    }
    Ok(format!("{} bounded-below sequences", bounded.len()))
}

/// `P ↦ xP - Px` on row-major `d × d` matrices, `x` the shift `e_i ↦ e_{i+1}`.
fn ad_x(d: usize) -> Matrix {
    let n = d * d;
    let mut entries = vec![0i64; n * n];
    for r in 0..d {
        for c in 0..d {
            let col = r * d + c;
            // (xP)[r+1][c] += P[r][c]
            if r + 1 < d {
                entries[((r + 1) * d + c) * n + col] += 1;
            }
            // (Px)[r][c-1] += P[r][c]
            if c >= 1 {
                entries[(r * d + c - 1) * n + col] -= 1;
            }
        }
    }
    Matrix::from_i64(Q, n, n, &entries)
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    for d in 1..=5 {
        let stages = diff_op_stages(d).map_err(|e| e.to_string())?;
        let ad = ad_x(d);
        let mut power = ad.clone();
        let mut oracle = Vec::new();
        loop {
            let k = d * d - power.rank();
            oracle.push(k);
            if k == d * d {
                break;
            }
            power = ad.mul(&power);
        }
        ensure(stages.dims() == oracle, || format!("d = {d}: recursion {:?}, ad-power kernels {oracle:?}", stages.dims()))?;
        ensure(oracle[0] == d, || format!("d = {d}: D_0 has dimension {}", oracle[0]))?;
        let a = diff_ops_example(d).map_err(|e| e.to_string())?;
        ensure(a.carrier().top().dim(0) == d * d, || format!("d = {d}: does not exhaust End(O)"))?;
        validate_algebra(&a).map_err(|e| format!("d = {d}: {e}"))?;
        let g = gr_algebra(&a).map_err(|e| e.to_string())?;
        ensure(g.is_commutative(), || format!("d = {d}: gr not commutative"))?;
        ensure(g.is_associative(), || format!("d = {d}: gr not associative"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.1}s"))?;
    Ok(format!("d = 1..5, {secs:.1}s"))
}

fn criterion_10() -> Outcome {
    for d in 2..=4 {
        let f = one_plus_t(d, Q).map_err(|e| e.to_string())?;
        let g = gr_map(&f);
        for (&n, c) in g.source().components() {
            for &k in c.dims().keys() {
                ensure(homology_map(&g.component(n), k).is_identity(), || format!("d = {d}: Gr_{n} is not the identity"))?;
            }
        }
        ensure(is_complete(&t_adic(d, Q).unwrap()), || format!("d = {d}: not complete"))?;
        ensure(is_levelwise_quasi_iso(&f), || format!("d = {d}: (1+t) is not a levelwise qi"))?;
        let h = one_plus_t_with_constant_tail(d, Q).unwrap();
        ensure(is_graded_equivalence(&h), || format!("d = {d}: variant not a graded equivalence"))?;
        ensure(!is_levelwise_quasi_iso(&h), || format!("d = {d}: variant is a levelwise qi"))?;
        ensure(!is_complete(h.source()), || format!("d = {d}: variant is complete"))?;
    }
    Ok("d = 2, 3, 4".into())
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checks = 0;
    for i in 0..120 {
        let field = if i % 2 == 0 { Q } else { F5 };
        let shape = RandomShape { degrees: 4, lowest_degree: rng.gen_range(-2..=1), ..RandomShape::default() };
        let c = random_complex(&mut rng, field, &shape);
        let (lo, hi) = c.support().unwrap_or((0, 0));
        for k in lo - 1..=hi + 2 {
            let (_, incl) = truncate(&c, k, TruncationMode::AtLeast);
            let (below, _) = truncate(&c, k, TruncationMode::Below);
            ensure(cone(&incl).cone.quasi_isomorphic(&below), || format!("complex {i}, k = {k}"))?;
            checks += 1;
        }
    }
    Ok(format!("120 complexes, {checks} truncation degrees"))
}

fn criterion_12(corpus: &[Sequence]) -> Outcome {
    let mut inputs: Vec<Sequence> = corpus.iter().filter(|x| x.bottom().is_zero()).cloned().collect();
    let from_corpus = inputs.len();
    for d in 2..=4 {
        inputs.push(t_adic(d, Q).unwrap());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..10 {
        inputs.push(postnikov(&random_complex(&mut rng, Q, &RandomShape::default())).unwrap());
    }
    for (i, x) in inputs.iter().enumerate() {
        let (graded, ok) = abutment(x).map_err(|e| format!("input {i}: {e}"))?;
        ensure(ok, || format!("input {i}: stable page differs from {:?}", graded.homology_dims()))?;
        let total: BTreeMap<i64, usize> = graded.homology_dims().iter().fold(BTreeMap::new(), |mut acc, (&(_, k), &n)| {
            *acc.entry(k).or_insert(0) += n;
            acc
        });
        ensure(total == x.top().homology_dims(), || format!("input {i}: abutment does not add up to H(X(∞))"))?;
    }
    Ok(format!("{from_corpus} corpus sequences, 3 t-adic, 10 Postnikov"))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("spectral sequence oracle equivalence", Box::new(|| criterion_1(&corpus))),
        ("completion invariance of pages", Box::new(|| criterion_2(&corpus))),
        ("localization characterization", Box::new(criterion_3)),
        ("Gr strong monoidal", Box::new(criterion_4)),
        ("Gr strong closed", Box::new(criterion_5)),
        ("generator law", Box::new(criterion_6)),
        ("reflector formulas", Box::new(criterion_7)),
        ("dualizability transfer", Box::new(|| criterion_8(&corpus))),
        ("differential operators", Box::new(criterion_9)),
        ("t-adic example", Box::new(criterion_10)),
        ("truncation normality", Box::new(criterion_11)),
        ("abutment", Box::new(|| criterion_12(&corpus))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
