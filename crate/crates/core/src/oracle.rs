//! Independent ground truth for the test suites: simplicial cohomology of
//! full subcomplexes, the Hochster decomposition of `H*(Z_K)`, exhaustive
//! enumeration of small complexes, and fraction-free elimination rank.
//!
//! Nothing here touches the Koszul models; only `linalg` is shared.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{cohomology_step, IntMatrix, StepCohomology};
use crate::simplicial::{numbered_labels, SimplicialComplex, VertexSubset};

/// Rank by Bareiss fraction-free Gaussian elimination.
pub fn fraction_free_rank(m: &IntMatrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = (&a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Coboundary `C^p -> C^{p+1}` of the augmented simplicial cochain complex,
/// where `C^p` has the faces with `p + 1` vertices as basis (`C^{-1} = Z`).
fn coboundary(lower: &[VertexSubset], upper: &[VertexSubset]) -> IntMatrix {
    let mut d = IntMatrix::zeros(upper.len(), lower.len());
    for (r, tau) in upper.iter().enumerate() {
        for (pos, v) in tau.iter().enumerate() {
            if let Ok(c) = lower.binary_search(&tau.without(v)) {
                d[(r, c)] = if pos % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            }
        }
    }
    d
}

fn faces_by_size(k: &SimplicialComplex) -> Vec<Vec<VertexSubset>> {
    let mut by_size = vec![Vec::new(); k.vertex_count() + 2];
    for f in k.faces() {
        by_size[f.len()].push(f);
    }
    by_size
}

/// Reduced integral cohomology `H̃^n(K)` for `n >= -1`.
pub fn reduced_simplicial_cohomology(k: &SimplicialComplex, n: isize) -> Result<StepCohomology> {
    let by_size = faces_by_size(k);
    let layer = |p: isize| -> &[VertexSubset] {
        let size = p + 1;
        if size < 0 || size as usize >= by_size.len() {
            &[]
        } else {
            &by_size[size as usize]
        }
    };
    if n < -1 {
        return Err(Error::Dimension(format!("reduced cohomology starts in degree -1, got {n}")));
    }
    let d_in = coboundary(layer(n - 1), layer(n));
    let d_out = coboundary(layer(n), layer(n + 1));
    cohomology_step(&d_in, &d_out)
}

/// One degree of an oracle table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

/// `H^n(Z_K) = ⊕_S H̃^{n-|S|-1}(K_S)` over all vertex subsets `S`, for
/// `0 <= n <= max_degree`. Torsion lists are in primary form.
pub fn ordinary_cohomology_hochster(k: &SimplicialComplex, max_degree: usize) -> Result<Vec<OracleGroup>> {
    let mut table = vec![OracleGroup::default(); max_degree + 1];
    for s in k.vertex_set().subsets() {
        let sub = k.full_subcomplex(s)?;
        let top = sub.dimension();
        for p in -1..=top {
            let n = p + s.len() as isize + 1;
            if n < 0 || n as usize > max_degree {
                continue;
            }
            let h = reduced_simplicial_cohomology(&sub, p)?;
            let entry = &mut table[n as usize];
            entry.free_rank += h.free_rank;
            entry.torsion.extend(h.torsion);
        }
    }
    for entry in &mut table {
        entry.torsion = crate::linalg::primary_parts(&entry.torsion);
    }
    Ok(table)
}

/// Every simplicial complex on the labelled vertex set `1..=m` (ghost
/// vertices allowed), `m <= 5`.
pub fn exhaustive_complexes(m: usize) -> Result<Vec<SimplicialComplex>> {
    if m > 5 {
        return Err(Error::ResourceLimit(format!("exhaustive enumeration supports m <= 5, got {m}")));
    }
    let candidates: Vec<u32> = (1u32..1 << m).collect();
    let mut included = vec![false; 1 << m];
    included[0] = true;
    let mut out = Vec::new();
    enumerate(&candidates, 0, &mut included, &mut |inc| {
        let faces: Vec<VertexSubset> =
            (0..inc.len()).filter(|&s| inc[s]).map(|s| VertexSubset::from_bits(s as u32)).collect();
        let facets = faces
            .iter()
            .copied()
            .filter(|f| !faces.iter().any(|g| g != f && f.is_subset_of(*g)));
        out.push(SimplicialComplex::from_index_facets(numbered_labels(m), facets).expect("valid facets"));
    });
    Ok(out)
}

fn enumerate(candidates: &[u32], idx: usize, included: &mut Vec<bool>, emit: &mut dyn FnMut(&[bool])) {
    let Some(&s) = candidates.get(idx) else {
        emit(included);
        return;
    };
    enumerate(candidates, idx + 1, included, emit);
    let mut bits = s;
    let mut closed = true;
    while bits != 0 {
        let low = bits & bits.wrapping_neg();
        closed &= included[(s ^ low) as usize];
        bits ^= low;
    }
    if closed {
        included[s as usize] = true;
        enumerate(candidates, idx + 1, included, emit);
        included[s as usize] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_and_points() {
        let tri = SimplicialComplex::simplex_boundary(3).unwrap();
        let h = reduced_simplicial_cohomology(&tri, 1).unwrap();
        assert_eq!((h.free_rank, h.torsion.len()), (1, 0));
        assert_eq!(reduced_simplicial_cohomology(&tri, 0).unwrap().free_rank, 0);

        let two = SimplicialComplex::with_numbered_vertices(2, [VertexSubset::singleton(0), VertexSubset::singleton(1)]).unwrap();
        assert_eq!(reduced_simplicial_cohomology(&two, 0).unwrap().free_rank, 1);

        let pentagon = SimplicialComplex::cycle(5).unwrap();
        let sub = pentagon.full_subcomplex(VertexSubset::from_indices([0, 2])).unwrap();
        assert_eq!(reduced_simplicial_cohomology(&sub, 0).unwrap().free_rank, 1);

        let void = SimplicialComplex::ghosts(0).unwrap();
        assert_eq!(reduced_simplicial_cohomology(&void, -1).unwrap().free_rank, 1);
    }

    #[test]
    fn hochster_spheres_and_tori() {
        let ranks = |t: Vec<OracleGroup>| t.iter().map(|g| g.free_rank).collect::<Vec<_>>();
        let tri = SimplicialComplex::simplex_boundary(3).unwrap();
        assert_eq!(ranks(ordinary_cohomology_hochster(&tri, 6).unwrap()), vec![1, 0, 0, 0, 0, 1, 0]);

        let pentagon = SimplicialComplex::cycle(5).unwrap();
        assert_eq!(ranks(ordinary_cohomology_hochster(&pentagon, 8).unwrap()), vec![1, 0, 0, 5, 5, 0, 0, 1, 0]);

        let ghosts = SimplicialComplex::ghosts(3).unwrap();
        assert_eq!(ranks(ordinary_cohomology_hochster(&ghosts, 4).unwrap()), vec![1, 3, 3, 1, 0]);
    }

    #[test]
    fn complex_counts() {
        assert_eq!(exhaustive_complexes(0).unwrap().len(), 1);
        assert_eq!(exhaustive_complexes(1).unwrap().len(), 2);
        assert_eq!(exhaustive_complexes(2).unwrap().len(), 5);
        // brute force over all families of nonempty subsets of {0,1,2}
        let mut count = 0;
        for family in 0u32..1 << 7 {
            let member = |s: u32| s == 0 || family >> (s - 1) & 1 == 1;
            let closed = (1u32..8).all(|s| !member(s) || (0..3).all(|i| s >> i & 1 == 0 || member(s & !(1 << i))));
            count += closed as usize;
        }
        assert_eq!(exhaustive_complexes(3).unwrap().len(), count);
        assert_eq!(count, 19);
        assert!(exhaustive_complexes(6).is_err());
    }

    #[test]
    fn bareiss_rank() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(fraction_free_rank(&m), 2);
        assert_eq!(fraction_free_rank(&IntMatrix::zeros(2, 2)), 0);
    }
}
