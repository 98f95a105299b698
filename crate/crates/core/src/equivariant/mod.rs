//! `H*_{T_I}(Z_K)` as a graded ring and as a module over
//! `H*(BT_I) = Z[v_i : i ∈ I]`, computed from the reduced model one
//! multidegree block at a time.
//!
//! Blocks sharing a [`BlockKey`] are isomorphic, so each key is reduced
//! once and its cohomology reused for every multidegree (and every torus)
//! that maps to it. The number of multidegrees per key in a given degree is
//! a count of weak compositions.

mod freeness;
mod hilbert;

pub use freeness::{
    flag_criterion, formality_survey, freeness_verdict, graph_criterion, torsion_witness_search, verify_annihilation,
    verify_verdict,
    verify_witness, Certificate, CircleEvidence, CriterionReport, FormalitySurvey, FreenessStatus, FreenessVerdict,
    TorsionWitness, WitnessKind,
};
pub use hilbert::{collapse_check, hilbert_face_ring, polynomial_hilbert, CollapseOutcome, HilbertFunction};

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::koszul::{BlockComplex, BlockKey, Cochain, KoszulAlgebra, KoszulMonomial, Model, MultiDegree};
use crate::linalg::StepCohomology;
use crate::simplicial::{SimplicialComplex, VertexSubset};

/// Truncation used when none is given: `4m`.
pub fn default_truncation(vertex_count: usize) -> usize {
    4 * vertex_count
}

/// Caps on the work one computation may do; exceeding one is a clean
/// [`Error::ResourceLimit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResourceLimits {
    /// Largest block, counted as `2^|S - I|` candidate exterior parts.
    pub max_block_size: usize,
    pub max_truncation: usize,
    /// Largest number of faces a survey will visit.
    pub max_faces: usize,
}

impl Default for ResourceLimits {
    fn default() -> Self {
        ResourceLimits { max_block_size: 1 << 12, max_truncation: 256, max_faces: 1 << 14 }
    }
}

/// A reduced block with its cohomology at every level.
#[derive(Debug)]
pub struct BlockData {
    pub complex: BlockComplex,
    pub steps: Vec<StepCohomology>,
}

impl BlockData {
    fn is_acyclic_at(&self, level: usize) -> bool {
        self.steps.get(level).is_none_or(|s| s.free_rank == 0 && s.torsion.is_empty())
    }
}

type KernelKey = (BlockKey, usize, usize);

/// Computations on one complex, sharing block reductions across tori,
/// models and truncations.
pub struct Engine {
    complex: SimplicialComplex,
    limits: ResourceLimits,
    blocks: Mutex<HashMap<BlockKey, Arc<BlockData>>>,
    // (source key, vertex, level) -> a cocycle whose class v_vertex kills
    kernels: Mutex<HashMap<KernelKey, Option<Vec<BigInt>>>>,
    ordinary: Mutex<HashMap<usize, Arc<EquivariantCohomology>>>,
}

impl Engine {
    pub fn new(complex: SimplicialComplex) -> Self {
        Self::with_limits(complex, ResourceLimits::default())
    }

    pub fn with_limits(complex: SimplicialComplex, limits: ResourceLimits) -> Self {
        Engine {
            complex,
            limits,
            blocks: Mutex::new(HashMap::new()),
            kernels: Mutex::new(HashMap::new()),
            ordinary: Mutex::new(HashMap::new()),
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn limits(&self) -> ResourceLimits {
        self.limits
    }

    pub fn block(&self, key: BlockKey) -> Result<Arc<BlockData>> {
        if let Some(b) = self.blocks.lock().expect("block cache poisoned").get(&key) {
            return Ok(b.clone());
        }
        let free = (key.support - key.torus_part).len();
        if free >= usize::BITS as usize || 1usize << free > self.limits.max_block_size {
            return Err(Error::ResourceLimit(format!(
                "a block on {free} exterior generators exceeds the limit of {} basis candidates",
                self.limits.max_block_size
            )));
        }
        let complex = BlockComplex::build(&self.complex, key);
        let steps = (0..=complex.top_level())
            .map(|k| complex.cohomology(k))
            .collect::<Result<Vec<_>>>()?;
        let data = Arc::new(BlockData { complex, steps });
        self.blocks
            .lock()
            .expect("block cache poisoned")
            .entry(key)
            .or_insert(data.clone());
        Ok(data)
    }

    fn check_torus(&self, torus: VertexSubset) -> Result<()> {
        if torus.is_subset_of(self.complex.vertex_set()) {
            Ok(())
        } else {
            Err(Error::NotASubset)
        }
    }

    fn check_truncation(&self, truncation: usize) -> Result<()> {
        if truncation > self.limits.max_truncation {
            return Err(Error::ResourceLimit(format!(
                "truncation {truncation} exceeds the limit {}",
                self.limits.max_truncation
            )));
        }
        Ok(())
    }

    /// Keys of all blocks that can contribute in degrees `<= truncation`.
    fn keys(&self, model: Model, torus: VertexSubset, truncation: usize) -> Vec<BlockKey> {
        let mut keys = Vec::new();
        for support in self.complex.vertex_set().subsets() {
            let free = support - torus;
            let doubled: Vec<VertexSubset> = match model {
                Model::Full => free.subsets().collect(),
                Model::Reduced => vec![VertexSubset::EMPTY],
            };
            for doubled in doubled {
                // the lowest degree in the block is 2|α| - |S - I|
                if 2 * (support.len() + doubled.len()) - free.len() <= truncation {
                    keys.push(BlockKey { model, support, torus_part: support & torus, doubled });
                }
            }
        }
        keys
    }

    pub fn cohomology(&self, torus: VertexSubset, truncation: usize) -> Result<EquivariantCohomology> {
        self.cohomology_in_model(torus, truncation, Model::Reduced)
    }

    pub fn cohomology_in_model(&self, torus: VertexSubset, truncation: usize, model: Model) -> Result<EquivariantCohomology> {
        self.check_torus(torus)?;
        self.check_truncation(truncation)?;
        let keys = self.keys(model, torus, truncation);
        let blocks: Vec<Arc<BlockData>> = keys.par_iter().map(|k| self.block(*k)).collect::<Result<_>>()?;
        let mut degrees = vec![DegreeSummary::default(); truncation + 1];
        for (key, data) in keys.iter().zip(&blocks) {
            for (level, step) in data.steps.iter().enumerate() {
                if data.is_acyclic_at(level) {
                    continue;
                }
                for (n, count) in degree_multiplicities(key, level, truncation) {
                    let entry = &mut degrees[n];
                    entry.free_rank += step.free_rank * count;
                    for _ in 0..count {
                        entry.torsion.extend(step.torsion.iter().cloned());
                    }
                }
            }
        }
        for d in &mut degrees {
            d.torsion.sort();
        }
        Ok(EquivariantCohomology {
            complex: self.complex.clone(),
            torus,
            model,
            truncation,
            degrees,
            blocks: keys.into_iter().zip(blocks).collect(),
        })
    }

    /// `H*(Z_K)` to the given truncation, computed once per truncation.
    pub fn ordinary(&self, truncation: usize) -> Result<Arc<EquivariantCohomology>> {
        if let Some(e) = self.ordinary.lock().expect("cache poisoned").get(&truncation) {
            return Ok(e.clone());
        }
        let e = Arc::new(self.cohomology(VertexSubset::EMPTY, truncation)?);
        self.ordinary.lock().expect("cache poisoned").insert(truncation, e.clone());
        Ok(e)
    }

    /// A cocycle at `level` of the reduced block on `support` whose class is
    /// nonzero but killed by `v_vertex`, for `vertex ∈ I - support`.
    fn killed_class(&self, torus: VertexSubset, support: VertexSubset, vertex: usize, level: usize) -> Result<Option<Vec<BigInt>>> {
        let source_key = BlockKey {
            model: Model::Reduced,
            support,
            torus_part: support & torus,
            doubled: VertexSubset::EMPTY,
        };
        let cache_key = (source_key, vertex, level);
        if let Some(hit) = self.kernels.lock().expect("cache poisoned").get(&cache_key) {
            return Ok(hit.clone());
        }
        let target_support = support.with(vertex);
        let target_key = BlockKey { support: target_support, torus_part: target_support & torus, ..source_key };
        let source = self.block(source_key)?;
        let found = if source.is_acyclic_at(level) {
            None
        } else {
            let target = self.block(target_key)?;
            induced_kernel(&source, &target, level)?
        };
        self.kernels.lock().expect("cache poisoned").insert(cache_key, found.clone());
        Ok(found)
    }
}

/// `(degree, number of multidegrees)` for one level of a block key.
fn degree_multiplicities(key: &BlockKey, level: usize, truncation: usize) -> Vec<(usize, usize)> {
    let base = key.support.len() + key.doubled.len();
    let slots = key.torus_part.len() + key.doubled.len();
    let mut out = Vec::new();
    for extra in 0.. {
        let n = 2 * (base + extra) - level;
        if n > truncation || (slots == 0 && extra > 0) {
            break;
        }
        out.push((n, weak_compositions(extra, slots)));
    }
    out
}

/// Ways to write `total` as an ordered sum of `parts` nonnegative integers.
fn weak_compositions(total: usize, parts: usize) -> usize {
    if parts == 0 {
        return (total == 0) as usize;
    }
    num_integer::binomial((total + parts - 1) as u128, (parts - 1) as u128) as usize
}

/// All multidegrees of `key` at the given total.
fn multidegrees_of(key: &BlockKey, m: usize, total: usize) -> Vec<MultiDegree> {
    let base = key.support.len() + key.doubled.len();
    if total < base {
        return Vec::new();
    }
    let slots: Vec<usize> = (key.torus_part | key.doubled).iter().collect();
    let mut start = vec![0u32; m];
    for i in key.support.iter() {
        start[i] = 1 + key.doubled.contains(i) as u32;
    }
    let mut out = Vec::new();
    distribute(&slots, total - base, &mut start, &mut out);
    out.sort();
    out
}

fn distribute(slots: &[usize], left: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiDegree>) {
    match slots {
        [] => {
            if left == 0 {
                out.push(MultiDegree(cur.clone()));
            }
        }
        [last] => {
            cur[*last] += left as u32;
            out.push(MultiDegree(cur.clone()));
            cur[*last] -= left as u32;
        }
        [first, rest @ ..] => {
            for x in 0..=left {
                cur[*first] += x as u32;
                distribute(rest, left - x, cur, out);
                cur[*first] -= x as u32;
            }
        }
    }
}

/// For the multiplication-by-`v_i` chain map from `source` (support `S`) to
/// `target` (support `S ∪ {i}`), which keeps the exterior part: a cocycle
/// at `level` with nonzero class and null-homologous image.
fn induced_kernel(source: &BlockData, target: &BlockData, level: usize) -> Result<Option<Vec<BigInt>>> {
    use crate::linalg::{integer_kernel, IntMatrix};
    let from = source.complex.level(level);
    let to = target.complex.level(level);
    let cocycles = integer_kernel(&source.complex.differential(level));
    let select = IntMatrix::from_fn(to.len(), from.len(), |r, c| BigInt::from((to[r] == from[c]) as u8));
    let image = select.mul(&cocycles);
    let d_in = if level < target.complex.top_level() {
        target.complex.differential(level + 1)
    } else {
        IntMatrix::zeros(to.len(), 0)
    };
    let combined = IntMatrix::from_fn(to.len(), image.cols() + d_in.cols(), |r, c| {
        if c < image.cols() {
            image[(r, c)].clone()
        } else {
            -d_in[(r, c - image.cols())].clone()
        }
    });
    let kernel = integer_kernel(&combined);
    let step = &source.steps[level];
    for col in 0..kernel.cols() {
        let coeffs: Vec<BigInt> = (0..cocycles.cols()).map(|r| kernel[(r, col)].clone()).collect();
        let z = cocycles.mul_vec(&coeffs);
        if !step.is_zero_class(&z)? {
            return Ok(Some(z));
        }
    }
    Ok(None)
}

/// Rank and torsion of one degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeSummary {
    pub free_rank: usize,
    /// Orders of the cyclic torsion summands, one per block summand, sorted.
    pub torsion: Vec<BigInt>,
}

/// One generator of `H^n` with the multidegree it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupGenerator {
    pub multidegree: MultiDegree,
    /// `None` for a free generator.
    pub order: Option<BigInt>,
    pub representative: Cochain,
}

/// `H^n` with representative cocycles: torsion generators of each
/// multidegree precede its free ones, multidegrees ascend.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub generators: Vec<GroupGenerator>,
}

/// Contribution of one multidegree to one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultidegreePart {
    pub multidegree: MultiDegree,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

/// A cohomology class: a representative and its coordinates in each
/// multidegree where it is nonzero. Torsion coordinates lie in `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub degree: usize,
    pub representative: Cochain,
    pub coordinates: BTreeMap<MultiDegree, Vec<BigInt>>,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coordinates.is_empty()
    }
}

/// `H^n_{T_I}(Z_K)` for `0 <= n <= truncation`.
#[derive(Debug)]
pub struct EquivariantCohomology {
    complex: SimplicialComplex,
    torus: VertexSubset,
    model: Model,
    truncation: usize,
    degrees: Vec<DegreeSummary>,
    blocks: HashMap<BlockKey, Arc<BlockData>>,
}

/// `H*_{T_I}(Z_K)` from the reduced model.
pub fn equivariant_cohomology(k: &SimplicialComplex, torus: VertexSubset, truncation: usize) -> Result<EquivariantCohomology> {
    Engine::new(k.clone()).cohomology(torus, truncation)
}

/// The same computation in either model; the two must agree.
pub fn equivariant_cohomology_in_model(
    k: &SimplicialComplex,
    torus: VertexSubset,
    truncation: usize,
    model: Model,
) -> Result<EquivariantCohomology> {
    Engine::new(k.clone()).cohomology_in_model(torus, truncation, model)
}

impl EquivariantCohomology {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn torus(&self) -> VertexSubset {
        self.torus
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn degrees(&self) -> &[DegreeSummary] {
        &self.degrees
    }

    pub fn free_ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.free_rank).collect()
    }

    pub fn has_torsion(&self) -> bool {
        self.degrees.iter().any(|d| !d.torsion.is_empty())
    }

    /// Dimensions over the rationals.
    pub fn rational_dims(&self) -> HilbertFunction {
        HilbertFunction { dims: self.degrees.iter().map(|d| d.free_rank as u128).collect() }
    }

    pub fn algebra(&self) -> KoszulAlgebra<'_> {
        KoszulAlgebra::new(&self.complex, self.torus, self.model).expect("torus checked on construction")
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.truncation {
            Err(Error::DegreeOverflow { degree: n, truncation: self.truncation })
        } else {
            Ok(())
        }
    }

    /// Blocks with cohomology in degree `n`, with their level and every
    /// multidegree they occur at.
    fn instances(&self, n: usize) -> Result<Vec<(MultiDegree, Arc<BlockData>, usize)>> {
        self.check_degree(n)?;
        let m = self.complex.vertex_count();
        let mut out = Vec::new();
        for (key, data) in &self.blocks {
            for level in 0..data.steps.len() {
                if data.is_acyclic_at(level) || (n + level) % 2 == 1 {
                    continue;
                }
                for alpha in multidegrees_of(key, m, (n + level) / 2) {
                    out.push((alpha, data.clone(), level));
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// Rank and torsion per multidegree in degree `n`.
    pub fn multidegree_parts(&self, n: usize) -> Result<Vec<MultidegreePart>> {
        Ok(self
            .instances(n)?
            .into_iter()
            .map(|(multidegree, data, level)| MultidegreePart {
                multidegree,
                free_rank: data.steps[level].free_rank,
                torsion: data.steps[level].torsion.clone(),
            })
            .collect())
    }

    /// `H^n` with explicit representative cocycles.
    pub fn group(&self, n: usize) -> Result<CohomologyGroup> {
        let algebra = self.algebra();
        let mut generators = Vec::new();
        for (alpha, data, level) in self.instances(n)? {
            let basis = block_basis(&data, &alpha, level);
            for g in &data.steps[level].generators {
                generators.push(GroupGenerator {
                    multidegree: alpha.clone(),
                    order: g.order.clone(),
                    representative: algebra.from_coefficients(&basis, &g.vector),
                });
            }
        }
        let summary = &self.degrees[n];
        Ok(CohomologyGroup { degree: n, free_rank: summary.free_rank, torsion: summary.torsion.clone(), generators })
    }

    /// The class of a cocycle, read as an element of degree `n`.
    pub fn class_in_degree(&self, c: &Cochain, n: usize) -> Result<CohomologyClass> {
        self.check_degree(n)?;
        let algebra = self.algebra();
        let mut coordinates = BTreeMap::new();
        for (alpha, part) in c.components() {
            if part.degree() != Some(n) {
                return Err(Error::NotHomogeneous);
            }
            let key = algebra.block_key(&alpha);
            let data = self
                .blocks
                .get(&key)
                .ok_or_else(|| Error::Consistency(format!("no block for multidegree {:?}", alpha.0)))?;
            let level = 2 * alpha.total() - n;
            let basis = block_basis(data, &alpha, level);
            let vector = algebra.coefficients(&part, &basis)?;
            let coords = data.steps[level].coordinates(&vector)?;
            if coords.iter().any(|x| !x.is_zero()) {
                coordinates.insert(alpha, coords);
            }
        }
        if c.is_zero() {
            // zero is a cocycle in every degree
            algebra.coefficients(c, &[])?;
        }
        Ok(CohomologyClass { degree: n, representative: c.clone(), coordinates })
    }

    /// The class of a nonzero homogeneous cocycle.
    pub fn class_of(&self, c: &Cochain) -> Result<CohomologyClass> {
        let n = c.degree().ok_or(Error::NotHomogeneous)?;
        self.class_in_degree(c, n)
    }

    pub fn is_zero(&self, c: &Cochain) -> Result<bool> {
        Ok(self.class_of(c)?.is_zero())
    }

    pub fn classes_equal(&self, a: &Cochain, b: &Cochain) -> Result<bool> {
        let n = a.degree().or(b.degree()).ok_or(Error::NotHomogeneous)?;
        // both must be cocycles of degree n
        self.class_in_degree(a, n)?;
        self.class_in_degree(b, n)?;
        Ok(self.class_in_degree(&a.sub(b)?, n)?.is_zero())
    }

    pub fn classes_equal_up_to_sign(&self, a: &Cochain, b: &Cochain) -> Result<bool> {
        Ok(self.classes_equal(a, b)? || self.classes_equal(a, &b.neg())?)
    }

    /// `[x]·[y]`, computed on representatives.
    pub fn cup_product(&self, x: &Cochain, y: &Cochain) -> Result<CohomologyClass> {
        let (p, q) = (self.class_of(x)?.degree, self.class_of(y)?.degree);
        self.check_degree(p + q)?;
        let product = self.algebra().multiply(x, y)?;
        self.class_in_degree(&product, p + q)
    }

    /// `v^b · [x]` for an exponent vector `b` supported in `I`.
    pub fn module_action(&self, exponents: &[u32], x: &Cochain) -> Result<CohomologyClass> {
        let m = self.complex.vertex_count();
        let poly = KoszulMonomial::new(VertexSubset::EMPTY, exponents.to_vec());
        if exponents.len() != m || !poly.v_support().is_subset_of(self.torus) {
            return Err(Error::Inadmissible(format!("{} is not a polynomial in the torus variables", poly.format(self.complex.labels()))));
        }
        let p = self.class_of(x)?.degree;
        let n = p + poly.degree();
        self.check_degree(n)?;
        let algebra = self.algebra();
        let product = if algebra.is_admissible(&poly) {
            algebra.multiply(&algebra.monomial(poly)?, x)?
        } else {
            algebra.zero()
        };
        self.class_in_degree(&product, n)
    }
}

fn block_basis(data: &BlockData, alpha: &MultiDegree, level: usize) -> Vec<KoszulMonomial> {
    data.complex
        .level(level)
        .iter()
        .map(|j| KoszulAlgebra::block_monomial(alpha, *j))
        .collect()
}
