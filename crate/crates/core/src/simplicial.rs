//! Finite simplicial complexes with ghost vertices.
//!
//! Vertices carry arbitrary string labels externally and canonical indices
//! `0..m` internally; subsets of the vertex set are bitmasks. A complex is
//! stored by its facets (inclusion-maximal faces). The empty set is always a
//! face, and a vertex that lies in no facet is a ghost vertex.

use std::collections::HashSet;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest supported vertex count. Several operations enumerate all `2^m`
/// subsets of the vertex set.
pub const MAX_VERTICES: usize = 24;

/// A subset of the canonical vertex indices, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSubset(u32);

impl VertexSubset {
    pub const EMPTY: VertexSubset = VertexSubset(0);

    pub const fn from_bits(bits: u32) -> Self {
        VertexSubset(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The subset `{0, .., m-1}`.
    pub fn full(m: usize) -> Self {
        debug_assert!(m <= 32);
        if m >= 32 {
            VertexSubset(u32::MAX)
        } else {
            VertexSubset((1u32 << m) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        VertexSubset(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        VertexSubset(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: VertexSubset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VertexSubset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn with(self, i: usize) -> Self {
        VertexSubset(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Self {
        VertexSubset(self.0 & !(1 << i))
    }

    /// Smallest index in the subset.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Number of elements strictly smaller than `i`.
    pub fn rank_of(self, i: usize) -> usize {
        (self.0 & ((1u32 << i) - 1)).count_ones() as usize
    }

    /// Indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = VertexSubset> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(VertexSubset(cur))
        })
    }
}

impl BitOr for VertexSubset {
    type Output = VertexSubset;
    fn bitor(self, rhs: Self) -> Self {
        VertexSubset(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSubset {
    type Output = VertexSubset;
    fn bitand(self, rhs: Self) -> Self {
        VertexSubset(self.0 & rhs.0)
    }
}

impl Sub for VertexSubset {
    type Output = VertexSubset;
    fn sub(self, rhs: Self) -> Self {
        VertexSubset(self.0 & !rhs.0)
    }
}

impl Not for VertexSubset {
    type Output = VertexSubset;
    fn not(self) -> Self {
        VertexSubset(!self.0)
    }
}

impl fmt::Debug for VertexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// The decomposition `K = ∂Δ(V_1) * .. * ∂Δ(V_p) * Δ(U)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinDecomposition {
    pub boundary_parts: Vec<VertexSubset>,
    pub simplex_part: VertexSubset,
}

/// Isomorphism types of one-dimensional complexes whose moment-angle complex
/// is equivariantly formal for every coordinate circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphClass {
    /// `∂Δ²`, the triangle graph.
    BoundaryTriangle,
    /// `∂Δ¹ * ∂Δ¹`, the 4-cycle.
    FourCycle,
    /// `∂Δ¹`, two isolated vertices.
    TwoPoints,
    /// `Δ¹`, a single edge.
    Edge,
    /// `∂Δ¹ * Δ⁰`, the path on three vertices.
    EdgePlusConePoint,
    /// `Δ⁰`, a single vertex.
    Point,
    Other,
}

impl GraphClass {
    pub fn is_listed(self) -> bool {
        self != GraphClass::Other
    }

    pub fn notation(self) -> &'static str {
        match self {
            GraphClass::BoundaryTriangle => "∂Δ²",
            GraphClass::FourCycle => "∂Δ¹ ∗ ∂Δ¹",
            GraphClass::TwoPoints => "∂Δ¹",
            GraphClass::Edge => "Δ¹",
            GraphClass::EdgePlusConePoint => "∂Δ¹ ∗ Δ⁰",
            GraphClass::Point => "Δ⁰",
            GraphClass::Other => "other",
        }
    }
}

/// A finite simplicial complex on a labelled vertex set.
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<VertexSubset>,
    // bit `s` set iff subset `s` is a face; built on first use
    face_table: OnceLock<Vec<u64>>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        SimplicialComplex {
            labels: self.labels.clone(),
            facets: self.facets.clone(),
            face_table: self.face_table.clone(),
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<String> = self.facets.iter().map(|s| self.format_subset(*s)).collect();
        f.debug_struct("SimplicialComplex")
            .field("vertices", &self.labels)
            .field("facets", &facets)
            .finish()
    }
}

impl SimplicialComplex {
    /// Builds a complex from labelled vertices and facets. Facets are reduced
    /// to the inclusion-maximal ones; vertices in no facet become ghosts.
    pub fn from_facets<S: AsRef<str>, F: AsRef<[S]>>(vertices: &[S], facets: &[F]) -> Result<Self> {
        let labels: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateVertex(l.clone()));
            }
        }
        if labels.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(labels.len()));
        }
        let mut masks = Vec::with_capacity(facets.len());
        for facet in facets {
            let mut mask = VertexSubset::EMPTY;
            for l in facet.as_ref() {
                let l = l.as_ref();
                let i = labels
                    .iter()
                    .position(|x| x == l)
                    .ok_or_else(|| Error::UnknownVertex(l.to_string()))?;
                mask = mask.with(i);
            }
            masks.push(mask);
        }
        Self::from_index_facets(labels, masks)
    }

    /// Builds a complex from canonical-index facets.
    pub fn from_index_facets<I>(labels: Vec<String>, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = VertexSubset>,
    {
        let m = labels.len();
        if m > MAX_VERTICES {
            return Err(Error::TooManyVertices(m));
        }
        let full = VertexSubset::full(m);
        let mut candidates: Vec<VertexSubset> = Vec::new();
        for f in facets {
            if !f.is_subset_of(full) {
                return Err(Error::VertexOutOfRange(31 - f.bits().leading_zeros() as usize));
            }
            if !f.is_empty() {
                candidates.push(f);
            }
        }
        candidates.sort_by_key(|f| (std::cmp::Reverse(f.len()), f.bits()));
        candidates.dedup();
        let mut maximal: Vec<VertexSubset> = Vec::new();
        for f in candidates {
            if !maximal.iter().any(|g| f.is_subset_of(*g)) {
                maximal.push(f);
            }
        }
        maximal.sort();
        Ok(SimplicialComplex {
            labels,
            facets: maximal,
            face_table: OnceLock::new(),
        })
    }

    /// Complex on vertices labelled `1..=m`.
    pub fn with_numbered_vertices<I>(m: usize, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = VertexSubset>,
    {
        Self::from_index_facets(numbered_labels(m), facets)
    }

    /// The full simplex `Δ[m]`.
    pub fn simplex(m: usize) -> Result<Self> {
        Self::with_numbered_vertices(m, [VertexSubset::full(m)])
    }

    /// The boundary `∂Δ[m]`; for `m = 1` this is a single ghost vertex.
    pub fn simplex_boundary(m: usize) -> Result<Self> {
        let full = VertexSubset::full(m);
        Self::with_numbered_vertices(m, (0..m).map(|i| full.without(i)))
    }

    /// `{∅}` on `m` ghost vertices.
    pub fn ghosts(m: usize) -> Result<Self> {
        Self::with_numbered_vertices(m, [])
    }

    /// The boundary of an `m`-gon, vertices numbered around the cycle.
    pub fn cycle(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::Dimension(format!("a cycle needs at least 3 vertices, got {m}")));
        }
        Self::with_numbered_vertices(
            m,
            (0..m).map(|i| VertexSubset::singleton(i).with((i + 1) % m)),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn vertex_set(&self) -> VertexSubset {
        VertexSubset::full(self.labels.len())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Resolves labels to a subset.
    pub fn subset_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<VertexSubset> {
        labels.iter().try_fold(VertexSubset::EMPTY, |acc, l| {
            let l = l.as_ref();
            self.index_of(l)
                .map(|i| acc.with(i))
                .ok_or_else(|| Error::UnknownVertex(l.to_string()))
        })
    }

    pub fn subset_labels(&self, s: VertexSubset) -> Vec<String> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// Formats a subset as `{a,b,c}` using vertex labels.
    pub fn format_subset(&self, s: VertexSubset) -> String {
        format!("{{{}}}", self.subset_labels(s).join(","))
    }

    pub fn facets(&self) -> &[VertexSubset] {
        &self.facets
    }

    /// Dimension; `-1` for the complex `{∅}`.
    pub fn dimension(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    pub fn ghost_vertices(&self) -> VertexSubset {
        let covered = self.facets.iter().fold(VertexSubset::EMPTY, |a, f| a | *f);
        self.vertex_set() - covered
    }

    fn face_table(&self) -> &[u64] {
        self.face_table.get_or_init(|| {
            let m = self.labels.len();
            let size = 1usize << m;
            let mut table = vec![0u64; size.div_ceil(64)];
            let set = |t: &mut [u64], s: usize| t[s >> 6] |= 1 << (s & 63);
            set(&mut table, 0);
            let direct: usize = self.facets.iter().map(|f| 1usize << f.len()).sum();
            if direct <= m.max(1) * size {
                for f in &self.facets {
                    for s in f.subsets() {
                        set(&mut table, s.bits() as usize);
                    }
                }
            } else {
                for f in &self.facets {
                    set(&mut table, f.bits() as usize);
                }
                for s in (0..size).rev() {
                    if table[s >> 6] >> (s & 63) & 1 == 1 {
                        let mut bits = s;
                        while bits != 0 {
                            let low = bits & bits.wrapping_neg();
                            set(&mut table, s ^ low);
                            bits ^= low;
                        }
                    }
                }
            }
            table
        })
    }

    /// Whether `s` is a face. Subsets reaching outside the vertex set are not.
    pub fn is_face(&self, s: VertexSubset) -> bool {
        if !s.is_subset_of(self.vertex_set()) {
            return false;
        }
        let t = self.face_table();
        let s = s.bits() as usize;
        t[s >> 6] >> (s & 63) & 1 == 1
    }

    /// All faces including `∅`, in increasing bitmask order.
    pub fn faces(&self) -> Vec<VertexSubset> {
        self.vertex_set().subsets().filter(|s| self.is_face(*s)).collect()
    }

    pub fn face_count(&self) -> usize {
        self.vertex_set().subsets().filter(|s| self.is_face(*s)).count()
    }

    /// Minimal non-faces, in increasing bitmask order. A ghost vertex `i`
    /// contributes `{i}`.
    pub fn missing_faces(&self) -> Vec<VertexSubset> {
        self.vertex_set()
            .subsets()
            .filter(|s| !self.is_face(*s) && s.iter().all(|i| self.is_face(s.without(i))))
            .collect()
    }

    /// The full subcomplex on `w`. Its vertex set is `w`, relabelled in
    /// ascending index order with the original labels.
    pub fn full_subcomplex(&self, w: VertexSubset) -> Result<Self> {
        if !w.is_subset_of(self.vertex_set()) {
            return Err(Error::NotASubset);
        }
        let kept: Vec<usize> = w.iter().collect();
        let compress = |s: VertexSubset| {
            VertexSubset::from_indices(kept.iter().enumerate().filter(|(_, &i)| s.contains(i)).map(|(k, _)| k))
        };
        let labels = kept.iter().map(|&i| self.labels[i].clone()).collect();
        Self::from_index_facets(labels, self.facets.iter().map(|f| compress(*f & w)))
    }

    /// The full subcomplex on `w` kept on the original vertex set: vertices
    /// outside `w` become ghosts.
    pub fn restrict(&self, w: VertexSubset) -> Self {
        Self::from_index_facets(self.labels.clone(), self.facets.iter().map(|f| *f & w))
            .expect("restriction of a valid complex is valid")
    }

    /// The join `self * other` on the disjoint union of the vertex sets.
    pub fn join(&self, other: &SimplicialComplex) -> Result<Self> {
        for l in &other.labels {
            if self.labels.contains(l) {
                return Err(Error::OverlappingLabels(l.clone()));
            }
        }
        let m1 = self.labels.len();
        if m1 + other.labels.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(m1 + other.labels.len()));
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let left: Vec<VertexSubset> = if self.facets.is_empty() { vec![VertexSubset::EMPTY] } else { self.facets.clone() };
        let right: Vec<VertexSubset> = if other.facets.is_empty() {
            vec![VertexSubset::EMPTY]
        } else {
            other.facets.iter().map(|f| VertexSubset::from_bits(f.bits() << m1)).collect()
        };
        let facets = left.iter().flat_map(|a| right.iter().map(move |b| *a | *b));
        Self::from_index_facets(labels, facets)
    }

    /// Finds `K = ∂Δ(V_1) * .. * ∂Δ(V_p) * Δ(U)` if it exists. The parts
    /// are the missing faces, which must be pairwise disjoint; the candidate
    /// is then rebuilt and compared with `self`.
    pub fn join_decomposition(&self) -> Option<JoinDecomposition> {
        let parts = self.missing_faces();
        let mut union = VertexSubset::EMPTY;
        for p in &parts {
            if !p.is_disjoint(union) {
                return None;
            }
            union = union | *p;
        }
        let decomposition = JoinDecomposition {
            simplex_part: self.vertex_set() - union,
            boundary_parts: parts,
        };
        (decomposition.rebuild(&self.labels) == *self).then_some(decomposition)
    }

    /// Every missing face has exactly two vertices.
    pub fn is_flag(&self) -> bool {
        self.missing_faces().iter().all(|s| s.len() == 2)
    }

    /// Identifies a one-dimensional complex up to relabelling.
    pub fn graph_classify(&self) -> Result<GraphClass> {
        if let Some(f) = self.facets.iter().find(|f| f.len() >= 3) {
            return Err(Error::NotAGraph(f.len()));
        }
        if !self.ghost_vertices().is_empty() {
            return Ok(GraphClass::Other);
        }
        let m = self.vertex_count();
        let edges: Vec<VertexSubset> = self.facets.iter().copied().filter(|f| f.len() == 2).collect();
        let degree = |i: usize| edges.iter().filter(|e| e.contains(i)).count();
        Ok(match (m, edges.len()) {
            (1, 0) => GraphClass::Point,
            (2, 0) => GraphClass::TwoPoints,
            (2, 1) => GraphClass::Edge,
            (3, 2) => GraphClass::EdgePlusConePoint,
            (3, 3) => GraphClass::BoundaryTriangle,
            (4, 4) if (0..4).all(|i| degree(i) == 2) => GraphClass::FourCycle,
            _ => GraphClass::Other,
        })
    }
}

impl JoinDecomposition {
    /// Builds `∂Δ(V_1) * .. * ∂Δ(V_p) * Δ(U)` on the given labels.
    pub fn rebuild(&self, labels: &[String]) -> SimplicialComplex {
        let mut facets = vec![self.simplex_part];
        for part in &self.boundary_parts {
            let choices: Vec<VertexSubset> = part.iter().map(|i| part.without(i)).collect();
            facets = facets
                .iter()
                .flat_map(|f| choices.iter().map(move |c| *f | *c))
                .collect();
        }
        SimplicialComplex::from_index_facets(labels.to_vec(), facets)
            .expect("decomposition parts lie in the vertex set")
    }

    /// Human-readable form, e.g. `∂Δ({1,3}) * ∂Δ({2,4})`.
    pub fn describe(&self, complex: &SimplicialComplex) -> String {
        let mut parts: Vec<String> = self
            .boundary_parts
            .iter()
            .map(|p| format!("∂Δ({})", complex.format_subset(*p)))
            .collect();
        if !self.simplex_part.is_empty() || parts.is_empty() {
            parts.push(format!("Δ({})", complex.format_subset(self.simplex_part)));
        }
        parts.join(" * ")
    }
}

pub(crate) fn numbered_labels(m: usize) -> Vec<String> {
    (1..=m).map(|i| i.to_string()).collect()
}
