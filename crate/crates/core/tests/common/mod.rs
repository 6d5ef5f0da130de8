//! Independent reference computations for integration tests.
#![allow(dead_code)]

use nonlocal_core::{ComplexMatrix, QuantumStrategy, C64};

/// `⟨ψ| A ⊗ B |ψ⟩` by explicit index contraction, without forming `A ⊗ B`.
pub fn contract(psi: &[C64], a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let (da, db) = (a.rows(), b.rows());
    assert_eq!(psi.len(), da * db);
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..da {
        for j in 0..db {
            for k in 0..da {
                for l in 0..db {
                    acc += psi[i * db + j].conj() * a[(i, k)] * b[(j, l)] * psi[k * db + l];
                }
            }
        }
    }
    acc.re
}

/// Full joint table `p(i, j | x, y)` of a two-player strategy, by contraction.
pub fn joint_table(s: &QuantumStrategy, x: usize, y: usize) -> Vec<Vec<f64>> {
    let pa = s.alice().povm(x).unwrap();
    let pb = s.bob().povm(y).unwrap();
    pa.elements()
        .iter()
        .map(|a| {
            pb.elements()
                .iter()
                .map(|b| contract(s.state().amplitudes(), a, b))
                .collect()
        })
        .collect()
}

/// `γ |v⟩⟨v|` with `v = (cos θ, e^{iφ} sin θ)`.
pub fn weighted_projector(gamma: f64, theta: f64, phi: f64) -> [[C64; 2]; 2] {
    let v = [
        C64::new(theta.cos(), 0.0),
        C64::from_polar(theta.sin(), phi),
    ];
    let mut m = [[C64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            m[r][c] = v[r] * v[c].conj() * gamma;
        }
    }
    m
}

pub fn sum_is_identity(terms: &[[[C64; 2]; 2]], tol: f64) -> bool {
    let mut s = [[C64::new(0.0, 0.0); 2]; 2];
    for t in terms {
        for r in 0..2 {
            for c in 0..2 {
                s[r][c] += t[r][c];
            }
        }
    }
    (0..2).all(|r| {
        (0..2).all(|c| {
            let target = if r == c { 1.0 } else { 0.0 };
            (s[r][c] - C64::new(target, 0.0)).norm() <= tol
        })
    })
}

/// Hardy state `(|01⟩ + |10⟩ + |11⟩)/√3` as real amplitudes `[a00, a01, a10, a11]`.
pub const HARDY_AMPLITUDES: [f64; 4] = [
    0.0,
    0.577_350_269_189_625_8,
    0.577_350_269_189_625_8,
    0.577_350_269_189_625_8,
];

/// Possible events of the Hardy state measured in the computational (input 0)
/// or Hadamard (input 1) basis, by direct real amplitude evaluation.
pub fn hardy_possible(x: usize, y: usize, a: usize, b: usize) -> bool {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let basis = |input: usize, outcome: usize| -> [f64; 2] {
        match (input, outcome) {
            (0, 0) => [1.0, 0.0],
            (0, 1) => [0.0, 1.0],
            (1, 0) => [h, h],
            _ => [h, -h],
        }
    };
    let u = basis(x, a);
    let v = basis(y, b);
    let amp: f64 = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .map(|(i, j)| u[i] * v[j] * HARDY_AMPLITUDES[i * 2 + j])
        .sum();
    amp * amp > 1e-12
}

/// Schmidt coefficients of the Hardy state: square roots of the eigenvalues
/// `(3 ± √5)/6` of `M M† = [[1, 1], [1, 2]]/3`.
pub fn hardy_schmidt_oracle() -> [f64; 2] {
    let s5 = 5f64.sqrt();
    [((3.0 + s5) / 6.0).sqrt(), ((3.0 - s5) / 6.0).sqrt()]
}
