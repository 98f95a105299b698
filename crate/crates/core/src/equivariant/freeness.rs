//! Freeness of `H*_{T_I}(Z_K)` over `Z[v_i : i ∈ I]`: structural
//! certificates, torsion witnesses, verdicts and the surveys over all
//! `I ∈ K`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use super::hilbert::{collapse_check, CollapseOutcome};
use super::{default_truncation, Engine};
use crate::error::{Error, Result};
use crate::koszul::{Cochain, KoszulAlgebra, KoszulMonomial, Model, MultiDegree};
use crate::simplicial::{GraphClass, JoinDecomposition, SimplicialComplex, VertexSubset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// `I ∉ K`: the unit is killed by `v_I`.
    NonFace,
    /// Missing faces `first`, `second` with `first - second = I`; the class
    /// is `u_j v_{second - j}` with `j = exterior`.
    MissingFacePair { first: VertexSubset, second: VertexSubset, exterior: usize },
    /// A class of the block on `support` killed by `v_vertex`.
    Generic { support: VertexSubset, vertex: usize },
}

/// A nonzero class and a monomial in the torus variables that kills it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionWitness {
    pub kind: WitnessKind,
    pub representative: Cochain,
    /// `u`-free monomial supported in `I`.
    pub annihilator: KoszulMonomial,
}

impl TorsionWitness {
    pub fn degree(&self) -> usize {
        self.representative.degree().unwrap_or(0)
    }

    /// e.g. `class [u4*v2], annihilator v5, via missing-face pair (I1={2,5}, I2={2,4})`.
    pub fn describe(&self, k: &SimplicialComplex) -> String {
        let labels = k.labels();
        let provenance = match &self.kind {
            WitnessKind::NonFace => "via the non-face I".to_string(),
            WitnessKind::MissingFacePair { first, second, .. } => format!(
                "via missing-face pair (I1={}, I2={})",
                k.format_subset(*first),
                k.format_subset(*second)
            ),
            WitnessKind::Generic { support, vertex } => format!(
                "via generic scan (support {}, vertex {})",
                k.format_subset(*support),
                k.label(*vertex)
            ),
        };
        format!(
            "class [{}], annihilator {}, {}",
            self.representative.format(labels),
            self.annihilator.format(labels),
            provenance
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FreenessStatus {
    Free,
    NotFree,
    Undetermined,
}

impl fmt::Display for FreenessStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FreenessStatus::Free => "FREE",
            FreenessStatus::NotFree => "NOT_FREE",
            FreenessStatus::Undetermined => "UNDETERMINED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `K = ∂Δ(V_1) * .. * ∂Δ(V_p) * Δ(U)` with `I ∩ V_k ⊊ V_k`.
    Decomposition {
        decomposition: JoinDecomposition,
        torus_parts: Vec<VertexSubset>,
        simplex_torus: VertexSubset,
    },
    Witness(TorsionWitness),
    HilbertDeficit { degree: usize, expected: u128, actual: u128 },
    /// `H^degree_{T_I}` has a cyclic summand of this order; a free module
    /// over a polynomial ring is torsion-free as an abelian group.
    IntegralTorsion { degree: usize, order: BigInt },
    /// No witness and a passing collapse test up to the truncation.
    Evidence { truncation: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessVerdict {
    pub status: FreenessStatus,
    pub certificate: Certificate,
}

impl FreenessVerdict {
    fn new(status: FreenessStatus, certificate: Certificate) -> Self {
        FreenessVerdict { status, certificate }
    }

    pub fn describe(&self, k: &SimplicialComplex) -> String {
        let detail = match &self.certificate {
            Certificate::Decomposition { decomposition, .. } => decomposition.describe(k),
            Certificate::Witness(w) => format!("witness: {}", w.describe(k)),
            Certificate::HilbertDeficit { degree, expected, actual } => {
                format!("collapse deficit in degree {degree}: dimension {actual}, free would need {expected}")
            }
            Certificate::IntegralTorsion { degree, order } => format!("integral torsion Z/{order} in degree {degree}"),
            Certificate::Evidence { truncation } => {
                format!("no witness, collapse test passes through degree {truncation}")
            }
        };
        format!("{}  {}", self.status, detail)
    }
}

fn annihilator_monomial(m: usize, torus: VertexSubset) -> KoszulMonomial {
    KoszulMonomial::from_sets(m, VertexSubset::EMPTY, torus)
}

impl Engine {
    fn reduced(&self, torus: VertexSubset) -> Result<KoszulAlgebra<'_>> {
        KoszulAlgebra::new(&self.complex, torus, Model::Reduced)
    }

    /// Witnesses read off the combinatorics: `I ∉ K`, then missing-face pairs
    /// `(I1, I2)` with `I1 - I2 = I`, by ascending `I1` then `I2`.
    pub fn structural_witness(&self, torus: VertexSubset) -> Result<Option<TorsionWitness>> {
        self.check_torus(torus)?;
        let m = self.complex.vertex_count();
        let algebra = self.reduced(torus)?;
        let witness = if !self.complex.is_face(torus) {
            Some(TorsionWitness {
                kind: WitnessKind::NonFace,
                representative: algebra.one(),
                annihilator: annihilator_monomial(m, torus),
            })
        } else {
            let missing = self.complex.missing_faces();
            let pair = missing.iter().find_map(|&first| {
                missing.iter().find(|&&second| !torus.is_empty() && first - second == torus).map(|&second| (first, second))
            });
            match pair {
                None => None,
                Some((first, second)) => {
                    let j = (second - first).first().expect("I1 - I2 = I ⊊ I1 forces I2 ⊄ I1");
                    Some(TorsionWitness {
                        kind: WitnessKind::MissingFacePair { first, second, exterior: j },
                        representative: algebra.monomial_from_sets(VertexSubset::singleton(j), second.without(j))?,
                        annihilator: annihilator_monomial(m, torus),
                    })
                }
            }
        };
        if let Some(w) = &witness {
            replay(&algebra, w)?;
        }
        Ok(witness)
    }

    /// Scans the blocks by ascending support for a class killed by a single
    /// `v_i`, `i ∈ I` outside the support, in degrees `<= truncation - 2`.
    pub fn generic_witness(&self, torus: VertexSubset, truncation: usize) -> Result<Option<TorsionWitness>> {
        self.check_torus(torus)?;
        self.check_truncation(truncation)?;
        let algebra = self.reduced(torus)?;
        let mut supports: Vec<VertexSubset> = self.complex.vertex_set().subsets().collect();
        supports.sort_by_key(|s| (s.len(), s.bits()));
        let m = self.complex.vertex_count();
        for support in supports {
            let free = (support - torus).len();
            for vertex in (torus - support).iter() {
                for level in 0..=free {
                    let degree = 2 * support.len() - level;
                    if degree + 2 > truncation {
                        continue;
                    }
                    let Some(z) = self.killed_class(torus, support, vertex, level)? else {
                        continue;
                    };
                    let alpha = MultiDegree((0..m).map(|i| support.contains(i) as u32).collect());
                    let basis: Vec<KoszulMonomial> = self
                        .block(algebra.block_key(&alpha))?
                        .complex
                        .level(level)
                        .iter()
                        .map(|j| KoszulAlgebra::block_monomial(&alpha, *j))
                        .collect();
                    let witness = TorsionWitness {
                        kind: WitnessKind::Generic { support, vertex },
                        representative: algebra.from_coefficients(&basis, &z),
                        annihilator: annihilator_monomial(m, VertexSubset::singleton(vertex)),
                    };
                    replay(&algebra, &witness)?;
                    return Ok(Some(witness));
                }
            }
        }
        Ok(None)
    }

    pub fn witness_search(&self, torus: VertexSubset, truncation: usize) -> Result<Option<TorsionWitness>> {
        match self.structural_witness(torus)? {
            Some(w) => Ok(Some(w)),
            None => self.generic_witness(torus, truncation),
        }
    }

    pub fn collapse(&self, torus: VertexSubset, truncation: usize) -> Result<CollapseOutcome> {
        let e = self.cohomology(torus, truncation)?;
        collapse_check(&e, &*self.ordinary(truncation)?)
    }

    pub fn verdict(&self, torus: VertexSubset, truncation: usize) -> Result<FreenessVerdict> {
        use FreenessStatus::*;
        self.check_torus(torus)?;
        if !self.complex.is_face(torus) {
            let w = self.structural_witness(torus)?.expect("a non-face always yields a witness");
            return Ok(FreenessVerdict::new(NotFree, Certificate::Witness(w)));
        }
        if let Some(decomposition) = self.complex.join_decomposition() {
            let torus_parts = decomposition.boundary_parts.iter().map(|p| *p & torus).collect();
            let simplex_torus = decomposition.simplex_part & torus;
            return Ok(FreenessVerdict::new(
                Free,
                Certificate::Decomposition { decomposition, torus_parts, simplex_torus },
            ));
        }
        if let Some(w) = self.witness_search(torus, truncation)? {
            return Ok(FreenessVerdict::new(NotFree, Certificate::Witness(w)));
        }
        let e = self.cohomology(torus, truncation)?;
        if let CollapseOutcome::Deficit { degree, expected, actual } = collapse_check(&e, &*self.ordinary(truncation)?)? {
            return Ok(FreenessVerdict::new(NotFree, Certificate::HilbertDeficit { degree, expected, actual }));
        }
        if let Some((degree, d)) = e.degrees().iter().enumerate().find(|(_, d)| !d.torsion.is_empty()) {
            return Ok(FreenessVerdict::new(
                NotFree,
                Certificate::IntegralTorsion { degree, order: d.torsion[0].clone() },
            ));
        }
        Ok(FreenessVerdict::new(Undetermined, Certificate::Evidence { truncation }))
    }

    pub fn survey(&self, truncation: usize) -> Result<FormalitySurvey> {
        let faces = self.complex.faces();
        if faces.len() > self.limits.max_faces {
            return Err(Error::ResourceLimit(format!(
                "{} faces exceed the survey limit {}",
                faces.len(),
                self.limits.max_faces
            )));
        }
        let verdicts = faces
            .par_iter()
            .map(|&torus| self.verdict(torus, truncation).map(|v| (torus, v)))
            .collect::<Result<Vec<_>>>()?;
        let missing = self.complex.missing_faces();
        let complete_intersection = missing
            .iter()
            .enumerate()
            .all(|(i, a)| missing[i + 1..].iter().all(|b| a.is_disjoint(*b)));
        let decomposition = self.complex.join_decomposition();
        if decomposition.is_some() != complete_intersection {
            return Err(Error::Consistency(
                "join decomposability and disjointness of missing faces disagree".into(),
            ));
        }
        if decomposition.is_some() && verdicts.iter().any(|(_, v)| v.status == FreenessStatus::NotFree) {
            return Err(Error::Consistency("a decomposable complex produced a NOT_FREE verdict".into()));
        }
        Ok(FormalitySurvey { truncation, verdicts, decomposition, complete_intersection })
    }

    /// Single-circle evidence: structural witnesses for every vertex first,
    /// then generic scan and collapse test vertex by vertex. Stops at the
    /// first failure.
    fn circles(&self, truncation: usize) -> Result<(Vec<CircleEvidence>, bool)> {
        let vertices = self.complex.vertex_set();
        for vertex in vertices.iter() {
            if let Some(w) = self.structural_witness(VertexSubset::singleton(vertex))? {
                let evidence = CircleEvidence { vertex, witness: Some(w), collapse: None };
                return Ok((vec![evidence], false));
            }
        }
        let mut evidence = Vec::new();
        for vertex in vertices.iter() {
            let torus = VertexSubset::singleton(vertex);
            if let Some(w) = self.generic_witness(torus, truncation)? {
                evidence.push(CircleEvidence { vertex, witness: Some(w), collapse: None });
                return Ok((evidence, false));
            }
            let collapse = self.collapse(torus, truncation)?;
            let passed = collapse.passed();
            evidence.push(CircleEvidence { vertex, witness: None, collapse: Some(collapse) });
            if !passed {
                return Ok((evidence, false));
            }
        }
        Ok((evidence, true))
    }

    fn criterion(&self, condition_b: bool, graph_class: Option<GraphClass>, truncation: usize) -> Result<CriterionReport> {
        let missing = self.complex.missing_faces();
        let obstruction = missing.iter().enumerate().find_map(|(i, a)| {
            missing[i + 1..].iter().find(|b| !a.is_disjoint(**b)).map(|b| (*a, *b))
        });
        let (circles, circles_clean) = self.circles(truncation)?;
        Ok(CriterionReport {
            condition_b,
            graph_class,
            obstruction,
            decomposition: self.complex.join_decomposition(),
            truncation,
            circles,
            circles_clean,
        })
    }

    pub fn flag_criterion(&self, truncation: usize) -> Result<CriterionReport> {
        if !self.complex.is_flag() {
            return Err(Error::NotFlag);
        }
        let missing = self.complex.missing_faces();
        let disjoint = missing
            .iter()
            .enumerate()
            .all(|(i, a)| missing[i + 1..].iter().all(|b| a.is_disjoint(*b)));
        let condition_b = disjoint && missing.iter().all(|f| f.len() == 2);
        self.criterion(condition_b, None, truncation)
    }

    pub fn graph_criterion(&self, truncation: usize) -> Result<CriterionReport> {
        let class = self.complex.graph_classify()?;
        self.criterion(class.is_listed(), Some(class), truncation)
    }
}

/// Verdicts for every `I ∈ K`, ordered by `I` as a bitmask, plus the global
/// structural report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalitySurvey {
    pub truncation: usize,
    pub verdicts: Vec<(VertexSubset, FreenessVerdict)>,
    pub decomposition: Option<JoinDecomposition>,
    /// Missing faces pairwise disjoint.
    pub complete_intersection: bool,
}

impl FormalitySurvey {
    pub fn decomposable(&self) -> bool {
        self.decomposition.is_some()
    }

    pub fn all_free(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| v.status == FreenessStatus::Free)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleEvidence {
    pub vertex: usize,
    pub witness: Option<TorsionWitness>,
    /// `None` when a witness made the collapse test unnecessary.
    pub collapse: Option<CollapseOutcome>,
}

/// Outcome of a flag or graph criterion: the combinatorial condition and
/// the single-circle evidence it must agree with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub condition_b: bool,
    pub graph_class: Option<GraphClass>,
    /// First pair of intersecting missing faces.
    pub obstruction: Option<(VertexSubset, VertexSubset)>,
    pub decomposition: Option<JoinDecomposition>,
    pub truncation: usize,
    /// Evidence gathered, ending at the first failing vertex if any.
    pub circles: Vec<CircleEvidence>,
    /// No circle has a witness and every circle passes the collapse test.
    pub circles_clean: bool,
}

impl CriterionReport {
    pub fn agrees(&self) -> bool {
        self.condition_b == self.circles_clean
    }
}

/// Checks a witness from scratch with the monomial-level differential:
/// the representative is a cocycle and not a coboundary, and its product
/// with the annihilator is a coboundary.
fn replay(algebra: &KoszulAlgebra<'_>, w: &TorsionWitness) -> Result<()> {
    replay_parts(algebra, &w.representative, &w.annihilator)
}

fn replay_parts(algebra: &KoszulAlgebra<'_>, representative: &Cochain, annihilator: &KoszulMonomial) -> Result<()> {
    let torus = algebra.torus();
    if !annihilator.u_part().is_empty() || annihilator.v_support().is_empty() || !annihilator.v_support().is_subset_of(torus)
    {
        return Err(Error::Consistency("annihilator is not a nonconstant polynomial in the torus variables".into()));
    }
    if !algebra.differential(representative)?.is_zero() {
        return Err(Error::Consistency("witness representative is not a cocycle".into()));
    }
    if representative.is_zero() || algebra.is_coboundary(representative)? {
        return Err(Error::Consistency("witness representative is a coboundary".into()));
    }
    let product = if algebra.is_admissible(annihilator) {
        algebra.multiply(&algebra.monomial(annihilator.clone())?, representative)?
    } else {
        algebra.zero()
    };
    if !product.is_zero() && !algebra.is_coboundary(&product)? {
        return Err(Error::Consistency("annihilator does not kill the witness".into()));
    }
    Ok(())
}

/// Same check for a representative and annihilator given separately, e.g.
/// parsed back from a report.
pub fn verify_annihilation(
    k: &SimplicialComplex,
    torus: VertexSubset,
    representative: &Cochain,
    annihilator: &KoszulMonomial,
) -> Result<()> {
    replay_parts(&KoszulAlgebra::new(k, torus, Model::Reduced)?, representative, annihilator)
}

pub fn verify_witness(k: &SimplicialComplex, torus: VertexSubset, w: &TorsionWitness) -> Result<()> {
    replay(&KoszulAlgebra::new(k, torus, Model::Reduced)?, w)
}

pub fn torsion_witness_search(k: &SimplicialComplex, torus: VertexSubset, truncation: usize) -> Result<Option<TorsionWitness>> {
    Engine::new(k.clone()).witness_search(torus, truncation)
}

pub fn freeness_verdict(k: &SimplicialComplex, torus: VertexSubset, truncation: usize) -> Result<FreenessVerdict> {
    Engine::new(k.clone()).verdict(torus, truncation)
}

pub fn formality_survey(k: &SimplicialComplex, truncation: usize) -> Result<FormalitySurvey> {
    Engine::new(k.clone()).survey(truncation)
}

/// Flag criterion at the default truncation `4m`.
pub fn flag_criterion(k: &SimplicialComplex) -> Result<CriterionReport> {
    Engine::new(k.clone()).flag_criterion(default_truncation(k.vertex_count()))
}

/// Graph criterion at the default truncation `4m`.
pub fn graph_criterion(k: &SimplicialComplex) -> Result<CriterionReport> {
    Engine::new(k.clone()).graph_criterion(default_truncation(k.vertex_count()))
}

/// Replays a verdict's certificate.
pub fn verify_verdict(k: &SimplicialComplex, torus: VertexSubset, verdict: &FreenessVerdict) -> Result<()> {
    use FreenessStatus::*;
    let fail = |why: &str| Err(Error::Consistency(format!("certificate does not replay: {why}")));
    match (&verdict.status, &verdict.certificate) {
        (Free, Certificate::Decomposition { decomposition, torus_parts, simplex_torus }) => {
            if decomposition.rebuild(k.labels()) != *k {
                return fail("decomposition does not rebuild the complex");
            }
            if !k.is_face(torus) || *simplex_torus != decomposition.simplex_part & torus {
                return fail("torus is not split by the decomposition");
            }
            if torus_parts.len() != decomposition.boundary_parts.len() {
                return fail("torus parts do not match the boundary parts");
            }
            for (part, t) in decomposition.boundary_parts.iter().zip(torus_parts) {
                if *t != *part & torus || t == part {
                    return fail("a torus part is not a proper subset of its boundary part");
                }
            }
            Ok(())
        }
        (NotFree, Certificate::Witness(w)) => verify_witness(k, torus, w),
        (NotFree, Certificate::HilbertDeficit { degree, expected, actual }) => {
            let engine = Engine::new(k.clone());
            match engine.collapse(torus, *degree)? {
                CollapseOutcome::Deficit { degree: d, expected: e, actual: a }
                    if d == *degree && e == *expected && a == *actual =>
                {
                    Ok(())
                }
                _ => fail("collapse deficit not reproduced"),
            }
        }
        (NotFree, Certificate::IntegralTorsion { degree, order }) => {
            let e = Engine::new(k.clone()).cohomology(torus, *degree)?;
            if order > &BigInt::one() && e.degrees()[*degree].torsion.contains(order) {
                Ok(())
            } else {
                fail("torsion not reproduced")
            }
        }
        (Undetermined, Certificate::Evidence { .. }) => Ok(()),
        _ => fail("status and certificate kinds do not match"),
    }
}
