//! Exact integer linear algebra: Smith normal form with unimodular
//! transforms, cohomology of `A --d_in--> B --d_out--> C`, and integral
//! solvability of `d_in x = c`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Rows `from..` as a new matrix.
    pub fn rows_from(&self, from: usize) -> IntMatrix {
        IntMatrix {
            rows: self.rows - from,
            cols: self.cols,
            data: self.data[from * self.cols..].to_vec(),
        }
    }

    /// Columns `from..` as a new matrix.
    pub fn cols_from(&self, from: usize) -> IntMatrix {
        Self::from_fn(self.rows, self.cols - from, |i, j| self[(i, j + from)].clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += q * row[src]` on columns `from..`.
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt, from: usize) {
        for j in from..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let t = q * s;
                self.data[dst * self.cols + j] += t;
            }
        }
    }

    /// `col[dst] += q * col[src]` on rows `from..`.
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt, from: usize) {
        for i in from..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let t = q * s;
                self.data[i * self.cols + dst] += t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }
}

/// `U · M · V = diag(invariants, 0, ..)` with `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    /// Positive invariant factors, each dividing the next.
    pub invariants: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub left_inverse: IntMatrix,
    pub right_inverse: IntMatrix,
}

impl SmithNormalForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// The diagonal matrix `U · M · V`.
    pub fn diagonal(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, x) in self.invariants.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }
}

struct Transforms {
    left: IntMatrix,
    left_inverse: IntMatrix,
    right: IntMatrix,
    right_inverse: IntMatrix,
}

struct Reduction {
    a: IntMatrix,
    t: Option<Transforms>,
}

impl Reduction {
    fn swap_rows(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        if let Some(t) = &mut self.t {
            t.left.swap_rows(x, y);
            t.left_inverse.swap_cols(x, y);
        }
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        if let Some(t) = &mut self.t {
            t.right.swap_cols(x, y);
            t.right_inverse.swap_rows(x, y);
        }
    }

    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt, from: usize) {
        self.a.add_row_multiple(dst, src, q, from);
        if let Some(t) = &mut self.t {
            t.left.add_row_multiple(dst, src, q, 0);
            t.left_inverse.add_col_multiple(src, dst, &-q, 0);
        }
    }

    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt, from: usize) {
        self.a.add_col_multiple(dst, src, q, from);
        if let Some(t) = &mut self.t {
            t.right.add_col_multiple(dst, src, q, 0);
            t.right_inverse.add_row_multiple(src, dst, &-q, 0);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(t) = &mut self.t {
            t.left.negate_row(i);
            t.left_inverse.negate_col(i);
        }
    }

    /// Smallest-magnitude nonzero entry in the trailing block; ties go to the
    /// lowest row, then the lowest column.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(b) => x.magnitude() < self.a[b].magnitude(),
                };
                if better {
                    best = Some((i, j));
                    if x.magnitude().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(mut self) -> (Vec<BigInt>, Option<Transforms>) {
        let (rows, cols) = (self.a.rows, self.a.cols);
        let mut invariants = Vec::new();
        for t in 0..rows.min(cols) {
            loop {
                let Some((pi, pj)) = self.pivot(t) else {
                    return (invariants, self.t);
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.a[(t, t)].clone();
                let mut clean = true;
                for i in t + 1..rows {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.a[(i, t)].div_floor(&p);
                    self.add_row_multiple(i, t, &-q, t);
                    clean &= self.a[(i, t)].is_zero();
                }
                for j in t + 1..cols {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.a[(t, j)].div_floor(&p);
                    self.add_col_multiple(j, t, &-q, t);
                    clean &= self.a[(t, j)].is_zero();
                }
                if !clean {
                    continue;
                }
                let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !self.a[(i, j)].is_multiple_of(&p)));
                match offender {
                    Some(i) => self.add_row_multiple(t, i, &BigInt::one(), t),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
            invariants.push(self.a[(t, t)].clone());
        }
        (invariants, self.t)
    }
}

/// Smith normal form with transforms. Output is deterministic for a fixed
/// input.
pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let t = Transforms {
        left: IntMatrix::identity(m.rows),
        left_inverse: IntMatrix::identity(m.rows),
        right: IntMatrix::identity(m.cols),
        right_inverse: IntMatrix::identity(m.cols),
    };
    let (invariants, t) = Reduction { a: m.clone(), t: Some(t) }.run();
    let t = t.expect("transforms were requested");
    SmithNormalForm {
        invariants,
        left: t.left,
        right: t.right,
        left_inverse: t.left_inverse,
        right_inverse: t.right_inverse,
    }
}

/// Invariant factors only.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    Reduction { a: m.clone(), t: None }.run().0
}

pub fn rank(m: &IntMatrix) -> usize {
    smith_invariants(m).len()
}

/// A generator of a cohomology group: `order` is `None` for a free
/// generator, otherwise the torsion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub order: Option<BigInt>,
    pub vector: Vec<BigInt>,
}

/// `H = ker d_out / im d_in` for one step of a cochain complex.
#[derive(Clone, Debug)]
pub struct StepCohomology {
    pub free_rank: usize,
    /// Torsion coefficients, all `>= 2`, each dividing the next.
    pub torsion: Vec<BigInt>,
    /// Torsion generators first (in the order of `torsion`), then free ones.
    pub generators: Vec<Generator>,
    d_out: IntMatrix,
    // rows of V_out^{-1} past the rank: ambient cocycle -> kernel coordinates
    projector: IntMatrix,
    // U of the SNF of d_in in kernel coordinates
    change: IntMatrix,
    // number of unit invariants of that SNF
    skip: usize,
}

impl StepCohomology {
    pub fn dimension(&self) -> usize {
        self.d_out.cols
    }

    pub fn is_cocycle(&self, z: &[BigInt]) -> bool {
        z.len() == self.dimension() && self.d_out.mul_vec(z).iter().all(Zero::is_zero)
    }

    /// Coordinates of the class of `z` with respect to `generators`; torsion
    /// coordinates are reduced into `0..order`.
    pub fn coordinates(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        if z.len() != self.dimension() {
            return Err(Error::Dimension(format!("expected a vector of length {}, got {}", self.dimension(), z.len())));
        }
        if !self.is_cocycle(z) {
            return Err(Error::NotCocycle);
        }
        let coords = self.change.mul_vec(&self.projector.mul_vec(z));
        Ok(coords[self.skip..]
            .iter()
            .zip(&self.generators)
            .map(|(c, g)| match &g.order {
                Some(e) => c.mod_floor(e),
                None => c.clone(),
            })
            .collect())
    }

    pub fn is_zero_class(&self, z: &[BigInt]) -> Result<bool> {
        Ok(self.coordinates(z)?.iter().all(Zero::is_zero))
    }
}

/// Cohomology of `A --d_in--> B --d_out--> C`, with `d_in` of shape
/// `dim B x dim A` and `d_out` of shape `dim C x dim B`.
pub fn cohomology_step(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<StepCohomology> {
    if d_in.rows != d_out.cols {
        return Err(Error::Dimension(format!(
            "d_in has {} rows but d_out has {} columns",
            d_in.rows, d_out.cols
        )));
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(Error::Consistency("d_out · d_in is not zero".into()));
    }
    let out = smith_normal_form(d_out);
    let rank_out = out.rank();
    let kernel = out.right.cols_from(rank_out);
    let projector = out.right_inverse.rows_from(rank_out);
    let image = projector.mul(d_in);
    let snf = smith_normal_form(&image);
    let skip = snf.invariants.iter().take_while(|x| x.is_one()).count();
    let k = kernel.cols;
    let mut generators = Vec::with_capacity(k - skip);
    let mut torsion = Vec::new();
    for i in skip..k {
        let order = snf.invariants.get(i).cloned();
        if let Some(e) = &order {
            torsion.push(e.clone());
        }
        generators.push(Generator { order, vector: kernel.mul_vec(&snf.left_inverse.column(i)) });
    }
    Ok(StepCohomology {
        free_rank: k - snf.rank(),
        torsion,
        generators,
        d_out: d_out.clone(),
        projector,
        change: snf.left,
        skip,
    })
}

/// Solves `d_in · x = c` over the integers. Returns a preimage when `c` is a
/// coboundary.
pub fn is_coboundary(c: &[BigInt], d_in: &IntMatrix) -> Result<Option<Vec<BigInt>>> {
    if c.len() != d_in.rows {
        return Err(Error::Dimension(format!("expected a vector of length {}, got {}", d_in.rows, c.len())));
    }
    let snf = smith_normal_form(d_in);
    let y = snf.left.mul_vec(c);
    let mut x = vec![BigInt::zero(); d_in.cols];
    for (i, yi) in y.iter().enumerate() {
        match snf.invariants.get(i) {
            Some(d) => {
                let (q, r) = yi.div_rem(d);
                if !r.is_zero() {
                    return Ok(None);
                }
                x[i] = q;
            }
            None => {
                if !yi.is_zero() {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(snf.right.mul_vec(&x)))
}

/// Columns spanning the integer kernel of `m`.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    snf.right.cols_from(snf.rank())
}

/// Splits torsion coefficients into prime-power parts, sorted ascending.
/// Two direct sums of cyclic groups are isomorphic iff their primary parts
/// agree.
pub fn primary_parts(torsion: &[BigInt]) -> Vec<BigInt> {
    let mut parts = Vec::new();
    for t in torsion {
        let mut n = t.abs();
        let mut p = BigInt::from(2);
        while &p * &p <= n {
            let mut q = BigInt::one();
            while n.is_multiple_of(&p) {
                n /= &p;
                q *= &p;
            }
            if !q.is_one() {
                parts.push(q);
            }
            p += 1;
        }
        if n > BigInt::one() {
            parts.push(n);
        }
    }
    parts.sort();
    parts
}
