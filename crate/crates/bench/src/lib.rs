//! Seeded inputs shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zkcoh::{IntMatrix, SimplicialComplex, VertexSubset};

/// A `rows x cols` matrix with entries in `-9..=9`.
pub fn random_matrix(seed: u64, rows: usize, cols: usize) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    IntMatrix::from_fn(rows, cols, |_, _| rng.gen_range(-9i64..=9).into())
}

/// `∂Δ(V_1) * .. * ∂Δ(V_p)` with parts of the given sizes.
pub fn boundary_join(sizes: &[usize]) -> SimplicialComplex {
    let m: usize = sizes.iter().sum();
    let mut facets = vec![VertexSubset::EMPTY];
    let mut start = 0;
    for &s in sizes {
        let part = VertexSubset::from_indices(start..start + s);
        facets = facets.iter().flat_map(|f| part.iter().map(move |i| *f | part.without(i))).collect();
        start += s;
    }
    SimplicialComplex::with_numbered_vertices(m, facets).unwrap()
}
