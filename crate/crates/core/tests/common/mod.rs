//! Fixture generators shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zkcoh::{SimplicialComplex, VertexSubset};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// 1-based vertex list to a subset.
pub fn sub(v: &[usize]) -> VertexSubset {
    VertexSubset::from_indices(v.iter().map(|i| i - 1))
}

/// A complex on `m` numbered vertices generated by up to `2m` random
/// facets; ghost vertices occur.
pub fn random_complex(rng: &mut ChaCha8Rng, m: usize) -> SimplicialComplex {
    let count = rng.gen_range(0..=2 * m);
    let facets: Vec<VertexSubset> = (0..count)
        .map(|_| VertexSubset::from_indices((0..m).filter(|_| rng.gen_bool(0.5))))
        .collect();
    SimplicialComplex::with_numbered_vertices(m, facets).unwrap()
}

/// `∂Δ(V_1) * .. * ∂Δ(V_p) * Δ(U)` on `m` vertices, parts assigned at random.
pub fn random_decomposable(rng: &mut ChaCha8Rng, m: usize) -> SimplicialComplex {
    // part p == 0 is U
    let parts = rng.gen_range(1..=m.div_ceil(2) + 1);
    let mut assignment: Vec<usize> = (0..m).map(|_| rng.gen_range(0..=parts)).collect();
    if assignment.iter().all(|&p| p == 0) {
        assignment[0] = 1;
    }
    let mut facets = vec![VertexSubset::from_indices((0..m).filter(|&i| assignment[i] == 0))];
    for p in 1..=parts {
        let part = VertexSubset::from_indices((0..m).filter(|&i| assignment[i] == p));
        if part.is_empty() {
            continue;
        }
        facets = facets.iter().flat_map(|f| part.iter().map(move |i| *f | part.without(i))).collect();
    }
    SimplicialComplex::with_numbered_vertices(m, facets).unwrap()
}

/// Pairs `(a, b)`, `a < b`, in a fixed order; bit `k` of a graph mask
/// selects pair `k`.
pub fn vertex_pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect()
}

/// The graph with the selected edges; every vertex is a face.
pub fn graph(m: usize, mask: u64) -> SimplicialComplex {
    let pairs = vertex_pairs(m);
    let mut facets: Vec<VertexSubset> = (0..m).map(VertexSubset::singleton).collect();
    for (k, (a, b)) in pairs.iter().enumerate() {
        if mask >> k & 1 == 1 {
            facets.push(VertexSubset::singleton(*a).with(*b));
        }
    }
    SimplicialComplex::with_numbered_vertices(m, facets).unwrap()
}

/// The clique complex of the graph with the selected edges.
pub fn clique_complex(m: usize, mask: u64) -> SimplicialComplex {
    let pairs = vertex_pairs(m);
    let adjacent = |a: usize, b: usize| {
        pairs.iter().position(|&p| p == (a.min(b), a.max(b))).is_some_and(|k| mask >> k & 1 == 1)
    };
    let cliques = VertexSubset::full(m).subsets().filter(|s| {
        let v: Vec<usize> = s.iter().collect();
        v.iter().enumerate().all(|(i, &a)| v[i + 1..].iter().all(|&b| adjacent(a, b)))
    });
    SimplicialComplex::with_numbered_vertices(m, cliques).unwrap()
}

/// `K` with missing faces `{1,2,3}` and `{3,4,5}`.
pub fn two_triangles() -> SimplicialComplex {
    let full = VertexSubset::full(5);
    SimplicialComplex::with_numbered_vertices(
        5,
        full.subsets().filter(|s| !sub(&[1, 2, 3]).is_subset_of(*s) && !sub(&[3, 4, 5]).is_subset_of(*s)),
    )
    .unwrap()
}
