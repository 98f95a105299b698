//! Acceptance gate: one PASS/FAIL line per criterion. All comparisons are
//! exact; the only tolerances are the wall-clock budgets listed with each
//! criterion.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::One;
use rand::Rng;
use zkcoh::equivariant::{hilbert_face_ring, verify_verdict, verify_witness, Certificate, HilbertFunction, WitnessKind};
use zkcoh::linalg::{smith_normal_form, IntMatrix};
use zkcoh::oracle::{exhaustive_complexes, fraction_free_rank, ordinary_cohomology_hochster};
use zkcoh::{
    default_truncation, equivariant_cohomology, Engine, FreenessStatus, Model, SimplicialComplex, VertexSubset,
};

use common::{clique_complex, graph, random_complex, random_decomposable, rng, sub, two_triangles, vertex_pairs};

type Outcome = Result<String, String>;

/// Name, check, wall-clock budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

/// Sphere fixtures: `Z_{∂Δ[m]} = S^{2m-1}`.
fn spheres() -> Outcome {
    for m in 2..=5 {
        let k = SimplicialComplex::simplex_boundary(m).map_err(err)?;
        let d = default_truncation(m);
        let e = equivariant_cohomology(&k, VertexSubset::EMPTY, d).map_err(err)?;
        let expected: Vec<usize> = (0..=d).map(|n| (n == 0 || n == 2 * m - 1) as usize).collect();
        ensure(e.free_ranks() == expected, || format!("m={m}: ranks {:?}", e.free_ranks()))?;
        ensure(!e.has_torsion(), || format!("m={m}: torsion"))?;
    }
    Ok("∂Δ[m], m=2..5: ranks 1 in degrees 0 and 2m-1 only, no torsion".into())
}

/// Decomposable complexes are free for every `I ∈ K`.
fn decomposable_family() -> Outcome {
    let mut r = rng(2);
    let mut faces = 0;
    for case in 0..10 {
        let m = r.gen_range(2..=8);
        let k = random_decomposable(&mut r, m);
        let d = default_truncation(m);
        let engine = Engine::new(k.clone());
        let survey = engine.survey(d).map_err(err)?;
        ensure(survey.decomposable() && survey.complete_intersection, || format!("case {case}: not decomposable"))?;
        for (torus, verdict) in &survey.verdicts {
            ensure(verdict.status == FreenessStatus::Free, || format!("case {case}: I={torus:?} {verdict:?}"))?;
            verify_verdict(&k, *torus, verdict).map_err(err)?;
            let w = engine.witness_search(*torus, d).map_err(err)?;
            ensure(w.is_none(), || format!("case {case}: witness for I={torus:?}: {w:?}"))?;
            let c = engine.collapse(*torus, d).map_err(err)?;
            ensure(c.passed(), || format!("case {case}: collapse for I={torus:?}: {c:?}"))?;
        }
        faces += survey.verdicts.len();
    }
    Ok(format!("10 complexes, {faces} tori: all FREE, no witness, collapse passes (D=4m)"))
}

/// `[u_{i+1} v_{i+3}]` is killed by `v_i` on every m-cycle, `5 <= m <= 8`.
fn cycles() -> Outcome {
    let mut checked = 0;
    for m in 5..=8 {
        let k = SimplicialComplex::cycle(m).map_err(err)?;
        let d = default_truncation(m);
        let engine = Engine::new(k.clone());
        for i in 0..m {
            let torus = VertexSubset::singleton(i);
            let e = engine.cohomology(torus, d).map_err(err)?;
            let alg = e.algebra();
            let x = alg
                .monomial_from_sets(VertexSubset::singleton((i + 1) % m), VertexSubset::singleton((i + 3) % m))
                .map_err(err)?;
            let class = e.class_of(&x).map_err(err)?;
            ensure(class.degree == 3 && !class.is_zero(), || format!("m={m} i={i}: class is zero"))?;
            let mut exps = vec![0; m];
            exps[i] = 1;
            let killed = e.module_action(&exps, &x).map_err(err)?;
            ensure(killed.is_zero(), || format!("m={m} i={i}: v_i·x is not zero"))?;
            ensure(alg.is_coboundary(&killed.representative).map_err(err)?, || format!("m={m} i={i}: not a coboundary"))?;
            let verdict = engine.verdict(torus, d).map_err(err)?;
            ensure(verdict.status == FreenessStatus::NotFree, || format!("m={m} i={i}: {verdict:?}"))?;
            verify_verdict(&k, torus, &verdict).map_err(err)?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (cycle, vertex) pairs: class nonzero in degree 3, killed, NOT_FREE replayed"))
}

/// The wedge `S^5 ∨ S^5 ∨ S^8`.
fn wedge_example() -> Outcome {
    let k = two_triangles();
    let m = 5;
    let d = default_truncation(m);
    let engine = Engine::new(k.clone());
    let e = engine.cohomology(VertexSubset::EMPTY, d).map_err(err)?;
    let expected: Vec<usize> = (0..=d).map(|n| match n { 0 | 8 => 1, 5 => 2, _ => 0 }).collect();
    ensure(e.free_ranks() == expected, || format!("ranks {:?}", e.free_ranks()))?;
    ensure(!e.has_torsion(), || "torsion".into())?;

    let alg = e.algebra();
    let (i1, i2) = (sub(&[1, 2, 3]), sub(&[3, 4, 5]));
    let face_reps = |face: VertexSubset| -> Result<Vec<zkcoh::Cochain>, String> {
        face.iter()
            .map(|k| alg.monomial_from_sets(VertexSubset::singleton(k), face.without(k)).map_err(err))
            .collect()
    };
    let mut groups = vec![face_reps(i1)?, face_reps(i2)?];
    let mut top = Vec::new();
    for a in (i1 - i2).iter() {
        for b in (i2 - i1).iter() {
            let u = VertexSubset::singleton(a).with(b);
            top.push(alg.monomial_from_sets(u, VertexSubset::full(m) - u).map_err(err)?);
        }
    }
    groups.push(top);
    let mut relations = 0;
    for group in &groups {
        for x in group {
            ensure(!e.is_zero(x).map_err(err)?, || format!("{x:?} is zero"))?;
        }
        for pair in group.windows(2) {
            ensure(e.classes_equal_up_to_sign(&pair[0], &pair[1]).map_err(err)?, || {
                format!("{:?} and {:?} differ", pair[0], pair[1])
            })?;
            relations += 1;
        }
    }
    ensure(!e.classes_equal_up_to_sign(&groups[0][0], &groups[1][0]).map_err(err)?, || "H^5 classes coincide".into())?;

    let verdict = engine.verdict(sub(&[1, 2]), d).map_err(err)?;
    let via_pair = matches!(&verdict.certificate, Certificate::Witness(w)
        if matches!(w.kind, WitnessKind::MissingFacePair { first, second, .. } if first == i1 && second == i2));
    ensure(verdict.status == FreenessStatus::NotFree && via_pair, || format!("I={{1,2}}: {verdict:?}"))?;
    verify_verdict(&k, sub(&[1, 2]), &verdict).map_err(err)?;

    for i in 0..m {
        let torus = VertexSubset::singleton(i);
        let w = engine.witness_search(torus, d).map_err(err)?;
        ensure(w.is_none(), || format!("I={{{}}}: witness {w:?}", i + 1))?;
        let c = engine.collapse(torus, d).map_err(err)?;
        ensure(c.passed(), || format!("I={{{}}}: {c:?}", i + 1))?;
    }
    Ok(format!(
        "ranks 1,2,1 in degrees 0,5,8; {relations} class equalities up to sign; I={{1,2}} NOT_FREE via pair; single circles clean"
    ))
}

/// Full and reduced models agree.
fn model_agreement() -> Outcome {
    const D: usize = 12;
    let mut complexes: Vec<SimplicialComplex> = Vec::new();
    for m in 0..=4 {
        complexes.extend(exhaustive_complexes(m).map_err(err)?);
    }
    let exhaustive = complexes.len();
    let mut r = rng(5);
    for _ in 0..50 {
        let m = r.gen_range(5..=6);
        complexes.push(random_complex(&mut r, m));
    }
    let mut pairs = 0;
    for k in &complexes {
        let engine = Engine::new(k.clone());
        for torus in k.vertex_set().subsets() {
            let full = engine.cohomology_in_model(torus, D, Model::Full).map_err(err)?;
            let reduced = engine.cohomology_in_model(torus, D, Model::Reduced).map_err(err)?;
            ensure(full.degrees() == reduced.degrees(), || format!("{k:?}, I={torus:?}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{exhaustive} exhaustive + 50 random complexes, {pairs} (K, I) pairs, degrees <= {D}"))
}

/// `I = V` gives the face ring.
fn face_ring_endpoint() -> Outcome {
    const D: usize = 16;
    let tri = SimplicialComplex::simplex_boundary(3).map_err(err)?;
    let h = hilbert_face_ring(&tri, 8);
    let even: Vec<u128> = h.dims.iter().step_by(2).copied().collect();
    ensure(even == [1, 3, 6, 9, 12], || format!("∂Δ² face ring {even:?}"))?;
    let e = equivariant_cohomology(&tri, tri.vertex_set(), 8).map_err(err)?;
    ensure(e.rational_dims() == h, || format!("∂Δ² ranks {:?}", e.free_ranks()))?;
    let mut count = 0;
    for m in 0..=4 {
        for k in exhaustive_complexes(m).map_err(err)? {
            let e = equivariant_cohomology(&k, k.vertex_set(), D).map_err(err)?;
            let h: HilbertFunction = hilbert_face_ring(&k, D);
            ensure(e.rational_dims() == h && !e.has_torsion(), || format!("{k:?}: {:?} vs {:?}", e.free_ranks(), h.dims))?;
            count += 1;
        }
    }
    Ok(format!("∂Δ² fixture 1,3,6,9,12; {count} exhaustive complexes match to degree {D}"))
}

/// `I = ∅` matches the full-subcomplex decomposition.
fn hochster_agreement() -> Outcome {
    let mut count = 0;
    for m in 0..=5 {
        let d = 3 * m;
        for k in exhaustive_complexes(m).map_err(err)? {
            let e = equivariant_cohomology(&k, VertexSubset::EMPTY, d).map_err(err)?;
            let oracle = ordinary_cohomology_hochster(&k, d).map_err(err)?;
            for (n, (ours, theirs)) in e.degrees().iter().zip(&oracle).enumerate() {
                let torsion = zkcoh::linalg::primary_parts(&ours.torsion);
                ensure(ours.free_rank == theirs.free_rank && torsion == theirs.torsion, || {
                    format!("{k:?} degree {n}: {ours:?} vs {theirs:?}")
                })?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} exhaustive complexes on <= 5 vertices agree in rank and torsion, D=3m"))
}

/// Flag and graph criteria against single-circle evidence.
fn flag_and_graph() -> Outcome {
    let mut flag = 0;
    let mut flag_b = 0;
    for m in 1..=6 {
        let pairs = vertex_pairs(m).len();
        for mask in 0..1u64 << pairs {
            let k = clique_complex(m, mask);
            let report = Engine::new(k.clone()).flag_criterion(default_truncation(m)).map_err(err)?;
            ensure(report.agrees(), || format!("flag {k:?}: {report:?}"))?;
            for c in &report.circles {
                if let Some(w) = &c.witness {
                    verify_witness(&k, VertexSubset::singleton(c.vertex), w).map_err(err)?;
                }
            }
            flag += 1;
            flag_b += report.condition_b as usize;
        }
    }
    let mut graphs = 0;
    let mut listed = 0;
    for m in 1..=5 {
        let pairs = vertex_pairs(m).len();
        for mask in 0..1u64 << pairs {
            let k = graph(m, mask);
            let report = Engine::new(k.clone()).graph_criterion(default_truncation(m)).map_err(err)?;
            ensure(report.agrees(), || format!("graph {k:?}: {report:?}"))?;
            graphs += 1;
            listed += report.condition_b as usize;
        }
    }
    Ok(format!(
        "{flag} labelled flag complexes ({flag_b} with (b)), {graphs} labelled graphs ({listed} listed): all agree"
    ))
}

/// Rational dimensions multiply under joins.
fn kunneth() -> Outcome {
    let mut r = rng(9);
    for case in 0..20 {
        let m1 = r.gen_range(1..=4);
        let m2 = r.gen_range(1..=7 - m1);
        let relabel = |k: SimplicialComplex, prefix: &str| {
            let labels = (1..=k.vertex_count()).map(|i| format!("{prefix}{i}")).collect();
            SimplicialComplex::from_index_facets(labels, k.facets().to_vec()).unwrap()
        };
        let k1 = relabel(random_complex(&mut r, m1), "a");
        let k2 = relabel(random_complex(&mut r, m2), "b");
        let k = k1.join(&k2).map_err(err)?;
        let t1 = VertexSubset::from_indices((0..m1).filter(|_| r.gen_bool(0.5)));
        let t2 = VertexSubset::from_indices((0..m2).filter(|_| r.gen_bool(0.5)));
        let torus = t1 | VertexSubset::from_bits(t2.bits() << m1);
        let d = 2 * (m1 + m2);
        let e = equivariant_cohomology(&k, torus, d).map_err(err)?;
        let e1 = equivariant_cohomology(&k1, t1, d).map_err(err)?;
        let e2 = equivariant_cohomology(&k2, t2, d).map_err(err)?;
        let product = e1.rational_dims().convolve(&e2.rational_dims());
        ensure(e.rational_dims() == product, || {
            format!("case {case}: {:?} vs {:?} for {k:?}, I={torus:?}", e.free_ranks(), product.dims)
        })?;
    }
    Ok("20 random joins, m <= 7: dimensions equal the graded convolution to degree 2m".into())
}

/// SNF reconstruction, divisibility and rank.
fn smith_substrate() -> Outcome {
    let mut r = rng(10);
    for case in 0..1000 {
        let (rows, cols) = (r.gen_range(1..=40), r.gen_range(1..=40));
        let m = IntMatrix::from_fn(rows, cols, |_, _| r.gen_range(-9..=9).into());
        let snf = smith_normal_form(&m);
        ensure(snf.left.mul(&m).mul(&snf.right) == snf.diagonal(rows, cols), || format!("case {case}: U·M·V"))?;
        ensure(snf.left.mul(&snf.left_inverse) == IntMatrix::identity(rows), || format!("case {case}: U not unimodular"))?;
        ensure(snf.right.mul(&snf.right_inverse) == IntMatrix::identity(cols), || format!("case {case}: V not unimodular"))?;
        let chain = snf.invariants.iter().all(|d| d >= &num_bigint::BigInt::one())
            && snf.invariants.windows(2).all(|w| (&w[1] % &w[0]) == num_bigint::BigInt::from(0));
        ensure(chain, || format!("case {case}: divisibility {:?}", snf.invariants))?;
        ensure(snf.rank() == fraction_free_rank(&m), || format!("case {case}: rank"))?;
    }
    Ok("1000 random matrices up to 40x40: U·M·V = diag, unimodular, d_i | d_i+1, rank = Bareiss".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("sphere fixtures", spheres, Some(10)),
        ("decomposable family is free", decomposable_family, Some(120)),
        ("cycle non-formality", cycles, Some(30)),
        ("wedge S^5 v S^5 v S^8", wedge_example, Some(60)),
        ("full and reduced models agree", model_agreement, Some(600)),
        ("face-ring endpoint I=V", face_ring_endpoint, None),
        ("ordinary cohomology vs full-subcomplex oracle", hochster_agreement, None),
        ("flag and graph criteria", flag_and_graph, Some(1200)),
        ("Kunneth under joins", kunneth, None),
        ("Smith normal form substrate", smith_substrate, Some(60)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if elapsed > Duration::from_secs(*b) => Err(format!("over budget of {b} s")),
            (o, _) => o,
        };
        let budget = budget.map_or("none".to_string(), |b| format!("{b} s"));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{:.2} s, budget {budget}]", i + 1, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{:.2} s, budget {budget}]", i + 1, elapsed.as_secs_f64());
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
