//! Report assembly. JSON keys are emitted in a fixed order so output is
//! byte-deterministic.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use zkcoh::equivariant::{hilbert_face_ring, Certificate, WitnessKind};
use zkcoh::format::to_json;
use zkcoh::{Engine, FreenessVerdict, SimplicialComplex, TorsionWitness, VertexSubset};

use crate::{Coefficients, Failure};

pub struct Report {
    pub json: Value,
    pub table: String,
}

fn integer(n: &BigInt) -> Value {
    n.to_i64().map_or_else(|| Value::String(n.to_string()), Value::from)
}

fn wide(n: u128) -> Value {
    u64::try_from(n).map_or_else(|_| Value::String(n.to_string()), Value::from)
}

fn labels(k: &SimplicialComplex, s: VertexSubset) -> Value {
    json!(k.subset_labels(s))
}

fn object(pairs: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (key, value) in pairs {
        map.insert(key.to_string(), value);
    }
    Value::Object(map)
}

fn witness_json(k: &SimplicialComplex, w: &TorsionWitness) -> Value {
    let mut fields = vec![("kind", json!("witness"))];
    match &w.kind {
        WitnessKind::NonFace => fields.push(("via", json!("non-face"))),
        WitnessKind::MissingFacePair { first, second, .. } => {
            fields.push(("via", json!("missing-face pair")));
            fields.push(("first", labels(k, *first)));
            fields.push(("second", labels(k, *second)));
        }
        WitnessKind::Generic { support, vertex } => {
            fields.push(("via", json!("generic scan")));
            fields.push(("support", labels(k, *support)));
            fields.push(("vertex", json!(k.label(*vertex))));
        }
    }
    fields.push(("degree", json!(w.degree())));
    fields.push(("representative", json!(w.representative.format(k.labels()))));
    fields.push(("annihilator", json!(w.annihilator.format(k.labels()))));
    fields.push(("description", json!(w.describe(k))));
    object(fields)
}

fn certificate_json(k: &SimplicialComplex, c: &Certificate) -> Value {
    match c {
        Certificate::Decomposition { decomposition, .. } => object(vec![
            ("kind", json!("decomposition")),
            ("boundary_parts", json!(decomposition.boundary_parts.iter().map(|p| k.subset_labels(*p)).collect::<Vec<_>>())),
            ("simplex_part", labels(k, decomposition.simplex_part)),
            ("description", json!(decomposition.describe(k))),
        ]),
        Certificate::Witness(w) => witness_json(k, w),
        Certificate::HilbertDeficit { degree, expected, actual } => object(vec![
            ("kind", json!("collapse-deficit")),
            ("degree", json!(degree)),
            ("expected", wide(*expected)),
            ("actual", wide(*actual)),
        ]),
        Certificate::IntegralTorsion { degree, order } => object(vec![
            ("kind", json!("integral-torsion")),
            ("degree", json!(degree)),
            ("order", integer(order)),
        ]),
        Certificate::Evidence { truncation } => {
            object(vec![("kind", json!("evidence")), ("truncation", json!(truncation))])
        }
    }
}

fn verdict_json(k: &SimplicialComplex, v: &FreenessVerdict) -> Value {
    object(vec![("status", json!(v.status.to_string())), ("certificate", certificate_json(k, &v.certificate))])
}

fn torus_name(k: &SimplicialComplex, torus: VertexSubset) -> String {
    if torus.is_empty() {
        "none".into()
    } else {
        k.format_subset(torus)
    }
}

fn join_or_dash(items: &[String]) -> String {
    if items.is_empty() {
        "-".into()
    } else {
        items.join(", ")
    }
}

pub fn cohomology(
    engine: &Engine,
    torus: VertexSubset,
    truncation: usize,
    coefficients: Coefficients,
    multidegrees: bool,
    max_representatives: usize,
) -> Result<Report, Failure> {
    let k = engine.complex();
    let e = engine.cohomology(torus, truncation)?;
    let verdict = engine.verdict(torus, truncation)?;
    let integral = coefficients == Coefficients::Integral;

    let mut results = Vec::new();
    let mut rows = Vec::new();
    let mut printed = 0;
    for n in 0..=truncation {
        let group = e.group(n)?;
        let reps: Vec<String> = group
            .generators
            .iter()
            .filter(|g| integral || g.order.is_none())
            .map(|g| g.representative.format(k.labels()))
            .collect();
        printed += reps.len();
        if printed > max_representatives {
            return Err(Failure {
                code: 2,
                message: format!("more than {max_representatives} representatives; raise --max-representatives"),
            });
        }
        let torsion: Vec<Value> = if integral { group.torsion.iter().map(integer).collect() } else { Vec::new() };
        let mut fields = vec![
            ("degree", json!(n)),
            ("rank", json!(group.free_rank)),
            ("torsion", Value::Array(torsion)),
            ("representatives", json!(reps)),
        ];
        if multidegrees {
            let parts: Vec<Value> = e
                .multidegree_parts(n)?
                .iter()
                .map(|p| {
                    let torsion: Vec<Value> = if integral { p.torsion.iter().map(integer).collect() } else { Vec::new() };
                    object(vec![
                        ("multidegree", json!(p.multidegree.0)),
                        ("rank", json!(p.free_rank)),
                        ("torsion", Value::Array(torsion)),
                    ])
                })
                .collect();
            fields.push(("multidegrees", Value::Array(parts)));
        }
        results.push(object(fields));
        if group.free_rank > 0 || (integral && !group.torsion.is_empty()) {
            let torsion: Vec<String> = group.torsion.iter().map(|t| format!("Z/{t}")).collect();
            let mut row = format!(
                "{n:<7} {:<5} {:<12} {}",
                group.free_rank,
                if integral { join_or_dash(&torsion) } else { "-".into() },
                join_or_dash(&reps)
            );
            if multidegrees {
                for p in e.multidegree_parts(n)? {
                    let alpha: Vec<String> = p.multidegree.0.iter().map(u32::to_string).collect();
                    let _ = write!(row, "\n        multidegree ({}): rank {}", alpha.join(","), p.free_rank);
                    if integral && !p.torsion.is_empty() {
                        let t: Vec<String> = p.torsion.iter().map(|t| format!("Z/{t}")).collect();
                        let _ = write!(row, ", torsion {}", t.join(" + "));
                    }
                }
            }
            rows.push(row);
        }
    }

    let json = object(vec![
        ("complex", to_json(k)),
        ("torus_subset", labels(k, torus)),
        ("truncation", json!(truncation)),
        ("coefficients", json!(if integral { "integral" } else { "rational" })),
        ("results", Value::Array(results)),
        ("verdict", verdict_json(k, &verdict)),
    ]);

    let mut table = String::new();
    let _ = writeln!(table, "complex: {} vertices, {} facets", k.vertex_count(), k.facets().len());
    let _ = writeln!(table, "torus: {}   truncation: {truncation}", torus_name(k, torus));
    if torus.is_empty() {
        let _ = writeln!(table, "I = none: ordinary cohomology of Z_K");
    } else if torus == k.vertex_set() {
        let h = hilbert_face_ring(k, truncation);
        let even: Vec<String> = h.dims.iter().step_by(2).map(u128::to_string).collect();
        let _ = writeln!(table, "I = all: face ring Z[K], ranks in even degrees {}", even.join(" "));
    }
    let _ = writeln!(table, "{:<7} {:<5} {:<12} representatives", "degree", "rank", "torsion");
    for row in rows {
        let _ = writeln!(table, "{row}");
    }
    let ring: Vec<String> = torus.iter().map(|i| format!("v{}", k.label(i))).collect();
    let over = if torus.is_empty() { "as an abelian group".to_string() } else { format!("as a module over Z[{}]", ring.join(",")) };
    let _ = writeln!(table, "{over}: {}", verdict.describe(k));
    Ok(Report { json, table })
}

pub fn formality(engine: &Engine, torus: VertexSubset, truncation: usize) -> Result<Report, Failure> {
    let k = engine.complex();
    let verdict = engine.verdict(torus, truncation)?;
    zkcoh::equivariant::verify_verdict(k, torus, &verdict)?;
    let json = object(vec![
        ("complex", to_json(k)),
        ("torus_subset", labels(k, torus)),
        ("truncation", json!(truncation)),
        ("verdict", verdict_json(k, &verdict)),
    ]);
    let table = format!("{}\n", verdict.describe(k));
    Ok(Report { json, table })
}

pub fn survey(engine: &Engine, truncation: usize) -> Result<Report, Failure> {
    let k = engine.complex();
    let s = engine.survey(truncation)?;
    let verdicts: Vec<Value> = s
        .verdicts
        .iter()
        .map(|(torus, v)| {
            object(vec![
                ("torus_subset", labels(k, *torus)),
                ("status", json!(v.status.to_string())),
                ("certificate", certificate_json(k, &v.certificate)),
            ])
        })
        .collect();
    let json = object(vec![
        ("complex", to_json(k)),
        ("truncation", json!(truncation)),
        ("decomposition", s.decomposition.as_ref().map_or(Value::Null, |d| json!(d.describe(k)))),
        ("complete_intersection", json!(s.complete_intersection)),
        ("all_free", json!(s.all_free())),
        ("verdicts", Value::Array(verdicts)),
    ]);
    let mut table = String::new();
    for (torus, v) in &s.verdicts {
        let _ = writeln!(table, "I={:<12} {}", k.format_subset(*torus), v.describe(k));
    }
    let _ = writeln!(
        table,
        "{} faces, {}",
        s.verdicts.len(),
        if s.all_free() { "all FREE" } else { "not all FREE" }
    );
    Ok(Report { json, table })
}

pub fn classify(engine: &Engine, evidence: Option<usize>) -> Result<Report, Failure> {
    let k = engine.complex();
    let flag = k.is_flag();
    let graph_class = k.graph_classify().ok();
    let missing = k.missing_faces();
    let obstruction = missing
        .iter()
        .enumerate()
        .find_map(|(i, a)| missing[i + 1..].iter().find(|b| !a.is_disjoint(**b)).map(|b| (*a, *b)));
    let decomposition = k.join_decomposition();

    let mut fields = vec![
        ("complex", to_json(k)),
        ("flag", json!(flag)),
        ("graph", json!(graph_class.is_some())),
        ("graph_class", graph_class.map_or(Value::Null, |c| json!(c.notation()))),
        ("missing_faces", json!(missing.iter().map(|f| k.subset_labels(*f)).collect::<Vec<_>>())),
        ("decomposition", decomposition.as_ref().map_or(Value::Null, |d| json!(d.describe(k)))),
        ("obstruction", obstruction.map_or(Value::Null, |(a, b)| json!([k.subset_labels(a), k.subset_labels(b)]))),
    ];
    let mut table = String::new();
    let _ = writeln!(table, "flag: {}", if flag { "yes" } else { "no" });
    match graph_class {
        Some(c) => {
            let _ = writeln!(table, "graph: yes, class {}", c.notation());
        }
        None => {
            let _ = writeln!(table, "graph: no");
        }
    }
    let mf: Vec<String> = missing.iter().map(|f| k.format_subset(*f)).collect();
    let _ = writeln!(table, "missing faces: {}", join_or_dash(&mf));
    match &decomposition {
        Some(d) => {
            let _ = writeln!(table, "decomposable: {}", d.describe(k));
        }
        None => {
            let _ = writeln!(table, "decomposable: no");
        }
    }
    if let Some((a, b)) = obstruction {
        let _ = writeln!(table, "obstruction pair: I1={}, I2={}", k.format_subset(a), k.format_subset(b));
    }

    if let Some(truncation) = evidence {
        let report = if graph_class.is_some() {
            Some(engine.graph_criterion(truncation)?)
        } else if flag {
            Some(engine.flag_criterion(truncation)?)
        } else {
            None
        };
        let value = match &report {
            Some(r) => {
                let circles: Vec<Value> = r
                    .circles
                    .iter()
                    .map(|c| {
                        object(vec![
                            ("vertex", json!(k.label(c.vertex))),
                            ("witness", c.witness.as_ref().map_or(Value::Null, |w| witness_json(k, w))),
                            ("collapse_passed", c.collapse.as_ref().map_or(Value::Null, |o| json!(o.passed()))),
                        ])
                    })
                    .collect();
                let _ = writeln!(
                    table,
                    "criterion: {}; single circles {}; {}",
                    if r.condition_b { "satisfied" } else { "not satisfied" },
                    if r.circles_clean { "clean" } else { "obstructed" },
                    if r.agrees() { "agree" } else { "DISAGREE" }
                );
                for c in &r.circles {
                    if let Some(w) = &c.witness {
                        let _ = writeln!(table, "  I={{{}}}: {}", k.label(c.vertex), w.describe(k));
                    }
                }
                object(vec![
                    ("truncation", json!(truncation)),
                    ("condition", json!(r.condition_b)),
                    ("circles_clean", json!(r.circles_clean)),
                    ("agrees", json!(r.agrees())),
                    ("circles", Value::Array(circles)),
                ])
            }
            None => {
                let _ = writeln!(table, "criterion: not applicable (neither flag nor a graph)");
                Value::Null
            }
        };
        fields.push(("evidence", value));
    }
    Ok(Report { json: object(fields), table })
}
