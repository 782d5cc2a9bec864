//! Seeded random states: Haar-like pure states, product states and
//! separable mixtures.
//!
//! Pure states are normalized complex Gaussian vectors. Separable states mix
//! one to four random pure product states with uniform Dirichlet weights.
//! Parallel sampling splits the work into fixed-size chunks, each with its own
//! ChaCha stream, so results do not depend on the number of worker threads.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use rayon::prelude::*;

use crate::numeric::{kron, ComplexMatrix};
use crate::Matrix;

/// Samples handled by one RNG stream in the parallel drivers.
pub const CHUNK: usize = 1024;

/// A ChaCha generator for chunk `stream` of a run seeded with `seed`.
pub fn chunk_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_pure_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..d)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// State vector `|a> ⊗ |b>` of a random pure product state.
pub fn random_product_vector<R: Rng + ?Sized>(da: usize, db: usize, rng: &mut R) -> Vec<Complex64> {
    let a = random_pure_state(da, rng);
    let b = random_pure_state(db, rng);
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// Density matrix of a random pure product state.
pub fn random_product_state<R: Rng + ?Sized>(da: usize, db: usize, rng: &mut R) -> Matrix {
    let v = random_product_vector(da, db, rng);
    ComplexMatrix::outer(&v, &v)
}

/// Random mixed single-system state: a Dirichlet mixture of up to `d` pure
/// states.
pub fn random_mixed_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Matrix {
    let k = rng.random_range(1..=d);
    let weights = dirichlet(k, rng);
    let mut rho = ComplexMatrix::zeros(d, d);
    for w in weights {
        let v = random_pure_state(d, rng);
        rho += &ComplexMatrix::outer(&v, &v).scale_real(w);
    }
    rho
}

/// `ρ_A ⊗ ρ_B` with independently drawn mixed factors.
pub fn random_mixed_product_state<R: Rng + ?Sized>(da: usize, db: usize, rng: &mut R) -> Matrix {
    kron(&random_mixed_state(da, rng), &random_mixed_state(db, rng))
}

/// Mixture of one to four pure product states with Dirichlet weights.
pub fn random_separable_state<R: Rng + ?Sized>(da: usize, db: usize, rng: &mut R) -> Matrix {
    let k = rng.random_range(1..=4);
    let weights = dirichlet(k, rng);
    let n = da * db;
    let mut rho = ComplexMatrix::zeros(n, n);
    for w in weights {
        rho += &random_product_state(da, db, rng).scale_real(w);
    }
    rho
}

/// Random Hermitian matrix with standard Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    let g = random_matrix(n, n, rng);
    (&g + &g.adjoint()).scale_real(0.5)
}

/// Random matrix with standard complex Gaussian entries.
pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Matrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Random full-rank density matrix `G G^dagger / Tr(G G^dagger)`.
pub fn random_density<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    let g = random_matrix(n, n, rng);
    let p = &g * &g.adjoint();
    let t = p.trace().re;
    p.scale_real(1.0 / t)
}

fn dirichlet<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

/// Minimum of `f` over `n` samples, computed in parallel over fixed chunks.
///
/// `f` receives the chunk's generator and must draw exactly what it needs;
/// the result depends only on `seed` and `n`.
pub fn par_min<F>(n: usize, seed: u64, f: F) -> f64
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    let chunks = n.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c as u64);
            let len = CHUNK.min(n - c * CHUNK);
            (0..len).map(|_| f(&mut rng)).fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_states_are_normalized() {
        let mut rng = chunk_rng(1, 0);
        for d in 2..6 {
            let v = random_pure_state(d, &mut rng);
            let n: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn separable_states_have_unit_trace() {
        let mut rng = chunk_rng(2, 0);
        for _ in 0..20 {
            let rho = random_separable_state(3, 3, &mut rng);
            assert!((rho.trace().re - 1.0).abs() < 1e-12);
            assert!(rho.is_hermitian(1e-12));
        }
    }

    #[test]
    fn par_min_is_deterministic() {
        let f = |rng: &mut ChaCha8Rng| rng.random::<f64>();
        let a = par_min(5000, 9, f);
        let b = par_min(5000, 9, f);
        assert_eq!(a, b);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let c = pool.install(|| par_min(5000, 9, f));
        assert_eq!(a, c);
    }

    #[test]
    fn par_min_of_constant() {
        assert_eq!(par_min(10, 0, |_| -1.0), -1.0);
    }
}
