//! The two cochain models of `H*_{T_I}(Z_K)`.
//!
//! The full model is `Λ[u_i : i ∉ I] ⊗ Z[K]` with `du_i = v_i`,
//! `dv_i = 0`, `deg u_i = 1`, `deg v_i = 2`. The reduced model `R_I(K)` is
//! its quotient by `u_j v_j` and `v_j²` for `j ∉ I`.
//!
//! Sign conventions: exterior factors are kept in ascending index order,
//! `d(u_J v^a) = Σ_{j∈J} (-1)^{#{i∈J : i<j}} u_{J-j} v^{a+e_j}`, and products
//! carry the shuffle sign of merging the two index lists.
//!
//! Both models split by multidegree `a + 1_J`, which `d` preserves. A block
//! is determined by its support `S`, `S ∩ I`, and (full model only) the set
//! of coordinates outside `I` where the multidegree is at least 2; its basis
//! is indexed by the exterior part `J ⊆ S - I`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{cohomology_step, IntMatrix, StepCohomology};
use crate::simplicial::{SimplicialComplex, VertexSubset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Model {
    /// `Λ[u_i : i ∉ I] ⊗ Z[K]`
    Full,
    /// `R_I(K)`
    Reduced,
}

/// Exponent vector in `Z≥0^V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDegree(pub Vec<u32>);

impl MultiDegree {
    pub fn zero(m: usize) -> Self {
        MultiDegree(vec![0; m])
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    pub fn support(&self) -> VertexSubset {
        VertexSubset::from_indices(self.0.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i))
    }

    /// Coordinates where the entry is at least 2.
    pub fn doubled(&self) -> VertexSubset {
        VertexSubset::from_indices(self.0.iter().enumerate().filter(|(_, &x)| x >= 2).map(|(i, _)| i))
    }
}

/// A basis monomial `u_J v^a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KoszulMonomial {
    u: VertexSubset,
    v: Vec<u32>,
}

impl KoszulMonomial {
    pub fn new(u: VertexSubset, v: Vec<u32>) -> Self {
        KoszulMonomial { u, v }
    }

    pub fn one(m: usize) -> Self {
        KoszulMonomial { u: VertexSubset::EMPTY, v: vec![0; m] }
    }

    /// `u_J v_W` with `W` square-free.
    pub fn from_sets(m: usize, u: VertexSubset, v: VertexSubset) -> Self {
        KoszulMonomial { u, v: (0..m).map(|i| v.contains(i) as u32).collect() }
    }

    pub fn u_part(&self) -> VertexSubset {
        self.u
    }

    pub fn v_exponents(&self) -> &[u32] {
        &self.v
    }

    pub fn v_support(&self) -> VertexSubset {
        VertexSubset::from_indices(self.v.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i))
    }

    pub fn degree(&self) -> usize {
        self.u.len() + 2 * self.v.iter().map(|&x| x as usize).sum::<usize>()
    }

    pub fn multidegree(&self) -> MultiDegree {
        MultiDegree(
            self.v
                .iter()
                .enumerate()
                .map(|(i, &x)| x + self.u.contains(i) as u32)
                .collect(),
        )
    }

    /// The monomial in the grammar `u<i>*..*v<j>^<k>*..`, ascending index,
    /// exponent omitted when 1; `1` for the unit.
    pub fn format(&self, labels: &[String]) -> String {
        let mut factors: Vec<String> = self.u.iter().map(|i| format!("u{}", labels[i])).collect();
        for (i, &e) in self.v.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("v{}", labels[i])),
                _ => factors.push(format!("v{}^{}", labels[i], e)),
            }
        }
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }
}

impl Ord for KoszulMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.multidegree()
            .cmp(&other.multidegree())
            .then(self.u.bits().cmp(&other.u.bits()))
    }
}

impl PartialOrd for KoszulMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sign of `u_a · u_b = ± u_{a ∪ b}` for disjoint `a`, `b`.
fn shuffle_sign(a: VertexSubset, b: VertexSubset) -> bool {
    let inversions: usize = b.iter().map(|j| (a - VertexSubset::full(j + 1)).len()).sum();
    inversions % 2 == 1
}

/// An integer linear combination of admissible monomials.
#[derive(Clone, PartialEq, Eq)]
pub struct Cochain {
    model: Model,
    torus: VertexSubset,
    vertices: usize,
    terms: BTreeMap<KoszulMonomial, BigInt>,
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (1..=self.vertices).map(|i| i.to_string()).collect();
        write!(f, "Cochain({})", self.format(&labels))
    }
}

impl Cochain {
    pub fn terms(&self) -> impl Iterator<Item = (&KoszulMonomial, &BigInt)> {
        self.terms.iter()
    }

    /// Number of terms.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn coefficient(&self, mono: &KoszulMonomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    /// The common degree of all terms, `None` when the cochain is zero or
    /// not homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(KoszulMonomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    fn add_term(&mut self, mono: KoszulMonomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn empty_like(&self) -> Cochain {
        Cochain { model: self.model, torus: self.torus, vertices: self.vertices, terms: BTreeMap::new() }
    }

    fn same_ambient(&self, other: &Cochain) -> bool {
        self.model == other.model && self.torus == other.torus && self.vertices == other.vertices
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        if !self.same_ambient(other) {
            return Err(Error::AmbientMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.scale(&-BigInt::one()))
    }

    pub fn scale(&self, k: &BigInt) -> Cochain {
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&-BigInt::one())
    }

    /// Splits into multidegree components.
    pub fn components(&self) -> BTreeMap<MultiDegree, Cochain> {
        let mut out: BTreeMap<MultiDegree, Cochain> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.multidegree())
                .or_insert_with(|| self.empty_like())
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Renders as e.g. `u1*v2 - 2*u2*v1`.
    pub fn format(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c < &BigInt::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = m.format(labels);
            if magnitude.is_one() {
                out.push_str(&mono);
            } else if mono == "1" {
                out.push_str(&magnitude.to_string());
            } else {
                out.push_str(&format!("{magnitude}*{mono}"));
            }
        }
        out
    }
}

/// Identifies one multidegree block up to isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockKey {
    pub model: Model,
    pub support: VertexSubset,
    pub torus_part: VertexSubset,
    pub doubled: VertexSubset,
}

/// One multidegree block as a cochain complex. Level `k` holds the basis
/// elements with `|J| = k`, in cohomological degree `2|α| - k`.
#[derive(Clone, Debug)]
pub struct BlockComplex {
    pub key: BlockKey,
    levels: Vec<Vec<VertexSubset>>,
    // differentials[k]: level k -> level k-1
    differentials: Vec<IntMatrix>,
}

impl BlockComplex {
    pub fn build(k: &SimplicialComplex, key: BlockKey) -> BlockComplex {
        let free = key.support - key.torus_part;
        let mut levels = vec![Vec::new(); free.len() + 1];
        for j in free.subsets() {
            let support = key.support - (j - key.doubled);
            if k.is_face(support) {
                levels[j.len()].push(j);
            }
        }
        let mut differentials = Vec::with_capacity(levels.len());
        differentials.push(IntMatrix::zeros(0, levels[0].len()));
        for lvl in 1..levels.len() {
            let (lower, upper) = (&levels[lvl - 1], &levels[lvl]);
            let mut d = IntMatrix::zeros(lower.len(), upper.len());
            for (col, j) in upper.iter().enumerate() {
                for i in j.iter() {
                    if let Ok(row) = lower.binary_search(&j.without(i)) {
                        d[(row, col)] = if j.rank_of(i) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    }
                }
            }
            differentials.push(d);
        }
        BlockComplex { key, levels, differentials }
    }

    pub fn top_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &[VertexSubset] {
        self.levels.get(k).map_or(&[], Vec::as_slice)
    }

    /// Matrix from level `k` to level `k - 1`.
    pub fn differential(&self, k: usize) -> IntMatrix {
        match self.differentials.get(k) {
            Some(d) => d.clone(),
            None => IntMatrix::zeros(self.level(k.wrapping_sub(1)).len(), 0),
        }
    }

    /// Cohomology at level `k`: incoming from level `k + 1`, outgoing to
    /// level `k - 1`.
    pub fn cohomology(&self, k: usize) -> Result<StepCohomology> {
        let dim = self.level(k).len();
        let d_in = if k < self.top_level() {
            self.differentials[k + 1].clone()
        } else {
            IntMatrix::zeros(dim, 0)
        };
        let d_out = if k == 0 || k > self.top_level() {
            IntMatrix::zeros(0, dim)
        } else {
            self.differentials[k].clone()
        };
        cohomology_step(&d_in, &d_out)
    }

    /// Rank of each level, the Euler characteristic summand.
    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }
}

/// A cochain model for a fixed `(K, I)`.
#[derive(Clone, Copy, Debug)]
pub struct KoszulAlgebra<'a> {
    complex: &'a SimplicialComplex,
    torus: VertexSubset,
    model: Model,
}

impl<'a> KoszulAlgebra<'a> {
    pub fn new(complex: &'a SimplicialComplex, torus: VertexSubset, model: Model) -> Result<Self> {
        if !torus.is_subset_of(complex.vertex_set()) {
            return Err(Error::NotASubset);
        }
        Ok(KoszulAlgebra { complex, torus, model })
    }

    pub fn complex(&self) -> &'a SimplicialComplex {
        self.complex
    }

    pub fn torus(&self) -> VertexSubset {
        self.torus
    }

    pub fn model(&self) -> Model {
        self.model
    }

    fn m(&self) -> usize {
        self.complex.vertex_count()
    }

    pub fn is_admissible(&self, mono: &KoszulMonomial) -> bool {
        let outside = self.complex.vertex_set() - self.torus;
        if mono.v.len() != self.m() || !mono.u.is_subset_of(outside) {
            return false;
        }
        if !self.complex.is_face(mono.v_support()) {
            return false;
        }
        match self.model {
            Model::Full => true,
            Model::Reduced => outside
                .iter()
                .all(|j| mono.v[j] <= 1 && !(mono.v[j] == 1 && mono.u.contains(j))),
        }
    }

    pub fn zero(&self) -> Cochain {
        Cochain { model: self.model, torus: self.torus, vertices: self.m(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> Cochain {
        let mut c = self.zero();
        c.add_term(KoszulMonomial::one(self.m()), BigInt::one());
        c
    }

    /// A single monomial with coefficient 1, rejecting inadmissible ones.
    pub fn monomial(&self, mono: KoszulMonomial) -> Result<Cochain> {
        if !self.is_admissible(&mono) {
            return Err(Error::Inadmissible(mono.format(self.complex.labels())));
        }
        let mut c = self.zero();
        c.add_term(mono, BigInt::one());
        Ok(c)
    }

    /// Builds a cochain from terms; inadmissible monomials are an error.
    pub fn cochain<I>(&self, terms: I) -> Result<Cochain>
    where
        I: IntoIterator<Item = (KoszulMonomial, BigInt)>,
    {
        let mut c = self.zero();
        for (m, k) in terms {
            if !self.is_admissible(&m) {
                return Err(Error::Inadmissible(m.format(self.complex.labels())));
            }
            c.add_term(m, k);
        }
        Ok(c)
    }

    /// `u_J v_W` with `W` square-free.
    pub fn monomial_from_sets(&self, u: VertexSubset, v: VertexSubset) -> Result<Cochain> {
        self.monomial(KoszulMonomial::from_sets(self.m(), u, v))
    }

    /// Inverse of [`KoszulMonomial::format`]. Admissibility is not checked.
    pub fn parse_monomial(&self, s: &str) -> Result<KoszulMonomial> {
        let bad = |message: String| Error::Parse { line: 1, message };
        let labels = self.complex;
        let mut u = VertexSubset::EMPTY;
        let mut v = vec![0u32; self.m()];
        if s.trim() == "1" {
            return Ok(KoszulMonomial::new(u, v));
        }
        for factor in s.split('*').map(str::trim) {
            let index = |label: &str| labels.index_of(label).ok_or_else(|| Error::UnknownVertex(label.to_string()));
            if let Some(label) = factor.strip_prefix('u') {
                let i = index(label)?;
                if u.contains(i) {
                    return Err(bad(format!("repeated exterior factor `{factor}`")));
                }
                u = u.with(i);
            } else if let Some(rest) = factor.strip_prefix('v') {
                let (i, e) = match (labels.index_of(rest), rest.rsplit_once('^')) {
                    (Some(i), _) => (i, 1),
                    (None, Some((label, e))) => {
                        let e: u32 = e.parse().map_err(|_| bad(format!("bad exponent in `{factor}`")))?;
                        (index(label)?, e)
                    }
                    (None, None) => return Err(Error::UnknownVertex(rest.to_string())),
                };
                v[i] += e;
            } else {
                return Err(bad(format!("expected a `u` or `v` factor, found `{factor}`")));
            }
        }
        Ok(KoszulMonomial::new(u, v))
    }

    /// Inverse of [`Cochain::format`], e.g. `u1*v2 - 2*u2*v1`.
    pub fn parse_cochain(&self, s: &str) -> Result<Cochain> {
        let bad = |message: String| Error::Parse { line: 1, message };
        let s = s.trim();
        if s == "0" {
            return Ok(self.zero());
        }
        let mut terms = Vec::new();
        let mut sign = BigInt::one();
        let mut rest = s;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r;
        }
        loop {
            let cut = [" + ", " - "].iter().filter_map(|sep| rest.find(sep)).min();
            let (term, next) = match cut {
                Some(at) => (&rest[..at], Some((&rest[at + 1..at + 2], &rest[at + 3..]))),
                None => (rest, None),
            };
            let (coeff, mono) = match term.split_once('*') {
                Some((c, m)) if c.chars().all(|ch| ch.is_ascii_digit()) => (c.parse::<BigInt>().unwrap(), m),
                _ if term.chars().all(|ch| ch.is_ascii_digit()) && !term.is_empty() => {
                    (term.parse::<BigInt>().unwrap(), "1")
                }
                _ => (BigInt::one(), term),
            };
            terms.push((self.parse_monomial(mono)?, sign * coeff));
            match next {
                Some((op, r)) => {
                    sign = if op == "-" { -BigInt::one() } else { BigInt::one() };
                    rest = r;
                }
                None => break,
            }
        }
        if terms.is_empty() {
            return Err(bad(format!("empty cochain `{s}`")));
        }
        self.cochain(terms)
    }

    fn check(&self, c: &Cochain) -> Result<()> {
        if c.model != self.model || c.torus != self.torus || c.vertices != self.m() {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn differential(&self, c: &Cochain) -> Result<Cochain> {
        self.check(c)?;
        let mut out = self.zero();
        for (mono, coeff) in &c.terms {
            for j in mono.u.iter() {
                let mut v = mono.v.clone();
                v[j] += 1;
                let target = KoszulMonomial { u: mono.u.without(j), v };
                if self.is_admissible(&target) {
                    let sign = if mono.u.rank_of(j) % 2 == 0 { coeff.clone() } else { -coeff.clone() };
                    out.add_term(target, sign);
                }
            }
        }
        Ok(out)
    }

    pub fn multiply(&self, a: &Cochain, b: &Cochain) -> Result<Cochain> {
        self.check(a)?;
        self.check(b)?;
        let mut out = self.zero();
        for (x, cx) in &a.terms {
            for (y, cy) in &b.terms {
                if !x.u.is_disjoint(y.u) {
                    continue;
                }
                let v: Vec<u32> = x.v.iter().zip(&y.v).map(|(p, q)| p + q).collect();
                let product = KoszulMonomial { u: x.u | y.u, v };
                if !self.is_admissible(&product) {
                    continue;
                }
                let coeff = cx * cy;
                out.add_term(product, if shuffle_sign(x.u, y.u) { -coeff } else { coeff });
            }
        }
        Ok(out)
    }

    pub fn block_key(&self, alpha: &MultiDegree) -> BlockKey {
        let support = alpha.support();
        BlockKey {
            model: self.model,
            support,
            torus_part: support & self.torus,
            doubled: match self.model {
                Model::Full => alpha.doubled() - self.torus,
                Model::Reduced => VertexSubset::EMPTY,
            },
        }
    }

    pub fn block(&self, key: BlockKey) -> BlockComplex {
        BlockComplex::build(self.complex, key)
    }

    /// The monomial `u_J v^{α - 1_J}`.
    pub fn block_monomial(alpha: &MultiDegree, j: VertexSubset) -> KoszulMonomial {
        let v = alpha.0.iter().enumerate().map(|(i, &x)| x - j.contains(i) as u32).collect();
        KoszulMonomial { u: j, v }
    }

    /// Multidegrees with total at most `max_total` that can carry basis
    /// elements: entries outside `I` are at most 1 in the reduced model.
    fn multidegrees(&self, max_total: usize) -> Vec<MultiDegree> {
        let m = self.m();
        let mut out = Vec::new();
        let mut cur = vec![0u32; m];
        self.fill(0, max_total, &mut cur, &mut out);
        out
    }

    fn fill(&self, i: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiDegree>) {
        if i == cur.len() {
            out.push(MultiDegree(cur.clone()));
            return;
        }
        let cap = if self.model == Model::Reduced && !self.torus.contains(i) { left.min(1) } else { left };
        for x in 0..=cap {
            cur[i] = x as u32;
            self.fill(i + 1, left - x, cur, out);
        }
        cur[i] = 0;
    }

    /// Admissible monomials of multidegree `alpha` and degree `n`, ordered
    /// by exterior part. Enumerated directly from admissibility, independent
    /// of the block construction.
    pub fn multidegree_basis(&self, alpha: &MultiDegree, n: usize) -> Vec<KoszulMonomial> {
        let total = 2 * alpha.total();
        if alpha.0.len() != self.m() || n > total {
            return Vec::new();
        }
        let level = total - n;
        alpha
            .support()
            .subsets()
            .filter(|j| j.len() == level)
            .map(|j| Self::block_monomial(alpha, j))
            .filter(|mono| self.is_admissible(mono))
            .collect()
    }

    /// Matrix of `d` from `source` to `target`, computed monomial by monomial.
    pub fn differential_matrix(&self, source: &[KoszulMonomial], target: &[KoszulMonomial]) -> Result<IntMatrix> {
        let mut d = IntMatrix::zeros(target.len(), source.len());
        for (col, mono) in source.iter().enumerate() {
            let image = self.differential(&self.monomial(mono.clone())?)?;
            for (t, c) in image.terms() {
                let row = target
                    .binary_search(t)
                    .map_err(|_| Error::Consistency(format!("{} missing from target basis", t.format(self.complex.labels()))))?;
                d[(row, col)] = c.clone();
            }
        }
        Ok(d)
    }

    /// Coefficients of `c` on `basis`; terms outside the basis are an error.
    pub fn coefficients(&self, c: &Cochain, basis: &[KoszulMonomial]) -> Result<Vec<BigInt>> {
        self.check(c)?;
        let mut out = vec![BigInt::zero(); basis.len()];
        for (mono, k) in c.terms() {
            let pos = basis
                .binary_search(mono)
                .map_err(|_| Error::Dimension(format!("{} is outside the basis", mono.format(self.complex.labels()))))?;
            out[pos] = k.clone();
        }
        Ok(out)
    }

    /// The cochain with the given coefficients on `basis`.
    pub fn from_coefficients(&self, basis: &[KoszulMonomial], coeffs: &[BigInt]) -> Cochain {
        let mut c = self.zero();
        for (mono, k) in basis.iter().zip(coeffs) {
            c.add_term(mono.clone(), k.clone());
        }
        c
    }

    /// Whether `c` is `d` of something, decided one multidegree at a time.
    pub fn is_coboundary(&self, c: &Cochain) -> Result<bool> {
        self.check(c)?;
        for (alpha, part) in c.components() {
            let n = part.degree().ok_or(Error::NotHomogeneous)?;
            let target = self.multidegree_basis(&alpha, n);
            let vector = self.coefficients(&part, &target)?;
            if n == 0 {
                return Ok(false);
            }
            let source = self.multidegree_basis(&alpha, n - 1);
            let d = self.differential_matrix(&source, &target)?;
            if crate::linalg::is_coboundary(&vector, &d)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Admissible monomials of degree `n`, in canonical order (multidegree,
    /// then exterior part as a bitmask).
    pub fn basis(&self, n: usize, truncation: usize) -> Result<Vec<KoszulMonomial>> {
        Ok(self.multidegree_blocks(n, truncation)?.into_values().flatten().collect())
    }

    /// The degree-`n` basis grouped by multidegree.
    pub fn multidegree_blocks(&self, n: usize, truncation: usize) -> Result<BTreeMap<MultiDegree, Vec<KoszulMonomial>>> {
        if n > truncation {
            return Err(Error::DegreeOverflow { degree: n, truncation });
        }
        let mut out = BTreeMap::new();
        // 2|α| - |J| = n and |J| <= |α| force |α| <= n
        for alpha in self.multidegrees(n) {
            let basis = self.multidegree_basis(&alpha, n);
            if !basis.is_empty() {
                out.insert(alpha, basis);
            }
        }
        Ok(out)
    }
}
