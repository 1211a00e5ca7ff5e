// SPDX-License-Identifier: Apache-2.0

//! Seeded random matrices for test families and property checks. Every
//! random quantity in the crate flows from a [`ChaCha8Rng`] seeded by the
//! caller, so runs are reproducible.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix, DensityMatrix, C64};

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Ginibre matrix: independent standard complex Gaussian entries.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// `G G* / tr(G G*)` for a Ginibre `G`: full-rank density matrix.
pub fn random_density(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    let g = random_matrix(rng, d, d);
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    gg.scale_re(1.0 / tr).hermitian_part()
}

pub fn random_density_matrix(rng: &mut impl Rng, d: usize) -> DensityMatrix {
    DensityMatrix::new(random_density(rng, d), 1e-10).expect("construction is a density")
}

/// Matrix with orthonormal columns (`W* W = I`), `rows >= cols`, from
/// Gram-Schmidt on a Ginibre matrix.
pub fn random_isometry(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    assert!(rows >= cols, "an isometry needs rows >= cols");
    let g = random_matrix(rng, rows, cols);
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(cols);
    for c in 0..cols {
        let mut v: Vec<C64> = (0..rows).map(|r| g.get(r, c)).collect();
        // two passes keep the columns orthogonal to machine precision
        for _ in 0..2 {
            for b in &basis {
                let overlap: C64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= overlap * bi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        basis.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(rows, cols, |r, c| basis[c][r])
}

pub fn random_unitary(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    random_isometry(rng, d, d)
}

/// A random element of `PQ_d`: a permuted diagonal with nonzero entries.
pub fn random_pq_matrix(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    let mut m = ComplexMatrix::zeros(d, d);
    for (r, &c) in perm.iter().enumerate() {
        m.set(r, c, gaussian(rng));
    }
    m
}

pub fn random_phase(rng: &mut impl Rng) -> f64 {
    rng.random_range(0.0..std::f64::consts::TAU)
}

/// Local test states used where a statement quantifies over all densities:
/// the computational basis projectors, the maximally mixed state, and
/// `n_random` seeded random densities.
pub fn test_family(d: usize, n_random: usize, seed: u64) -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(d + 1 + n_random);
    for k in 0..d {
        let mut p = ComplexMatrix::zeros(d, d);
        p.set(k, k, C64::new(1.0, 0.0));
        out.push(p);
    }
    out.push(ComplexMatrix::identity(d).scale_re(1.0 / d as f64));
    let mut rng = seeded_rng(seed);
    out.extend((0..n_random).map(|_| random_density(&mut rng, d)));
    out
}
