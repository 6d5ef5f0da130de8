//! Seeded random states, unitaries, POVMs and winning-strategy bundles.
//!
//! Everything is generic over [`rand::Rng`] so callers choose the generator
//! and the seed.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

#[allow(unused_imports)]
use num_traits::Float;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::games::Game;
use crate::index;
use crate::linalg::{c, eig_hermitian, inner, kron, norm_sqr, ComplexMatrix, StateVector, C64};
use crate::povm::{refine_to_rank1, Povm, Rank1Element};
use crate::strategies::{answer_distribution, PlayerStrategy, QuantumStrategy};
use crate::tolerance::Tolerances;

/// Standard normal sample (Box-Muller).
pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
}

pub fn complex_gaussian_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<C64> {
    (0..dim).map(|_| c(gaussian(rng), gaussian(rng))).collect()
}

/// Haar-random pure state.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> StateVector {
    loop {
        if let Ok(s) = StateVector::normalized(complex_gaussian_vector(rng, dim)) {
            return s;
        }
    }
}

/// Haar-random unitary via Gram-Schmidt on complex Gaussian columns.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut w = complex_gaussian_vector(rng, dim);
        for _ in 0..2 {
            for q in &cols {
                let proj = inner(q, &w);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= proj * qi;
                }
            }
        }
        let n = norm_sqr(&w).sqrt();
        if n > 1e-6 {
            cols.push(w.into_iter().map(|z| z / n).collect());
        }
    }
    ComplexMatrix::from_columns(dim, &cols).expect("square")
}

/// Random weights summing to one.
fn simplex<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| 0.05 + rng.gen::<f64>()).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

/// Rank-1 elements `p_m U_m |k⟩⟨k| U_m†` over `mixes` random bases with random
/// weights `p_m`; they sum to the identity.
pub fn weighted_basis_pieces<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    mixes: usize,
) -> Vec<ComplexMatrix> {
    let weights = simplex(rng, mixes);
    let mut out = Vec::with_capacity(mixes * dim);
    for w in weights {
        let u = random_unitary(rng, dim);
        for k in 0..dim {
            let v = u.column(k);
            out.push(ComplexMatrix::outer(&v, &v).scale_real(w));
        }
    }
    out
}

/// Rank-1 elements `S^{-1/2} w_k |v_k⟩⟨v_k| S^{-1/2}` for random vectors `v_k`,
/// where `S = Σ w_k |v_k⟩⟨v_k|`.
pub fn frame_pieces<R: Rng + ?Sized>(rng: &mut R, dim: usize, count: usize) -> Vec<ComplexMatrix> {
    loop {
        let vecs: Vec<Vec<C64>> = (0..count)
            .map(|_| random_state(rng, dim).amplitudes().to_vec())
            .collect();
        let weights = simplex(rng, count);
        let mut s = ComplexMatrix::zeros(dim, dim);
        for (v, &w) in vecs.iter().zip(&weights) {
            s = &s + &ComplexMatrix::outer(v, v).scale_real(w);
        }
        let eig = eig_hermitian(&s.hermitian_part()).expect("hermitian");
        if eig.values.last().copied().unwrap_or(0.0) < 1e-3 {
            continue;
        }
        let inv_sqrt: Vec<f64> = eig.values.iter().map(|l| 1.0 / l.sqrt()).collect();
        let t = &(&eig.vectors * &ComplexMatrix::diag(&inv_sqrt)) * &eig.vectors.adjoint();
        return vecs
            .iter()
            .zip(&weights)
            .map(|(v, &w)| {
                let tv = t.apply(v);
                ComplexMatrix::outer(&tv, &tv)
                    .scale_real(w)
                    .hermitian_part()
            })
            .collect();
    }
}

/// Random rank-1 qubit POVM from one of the two constructions above.
pub fn random_rank1_qubit_povm<R: Rng + ?Sized>(rng: &mut R) -> Vec<Rank1Element> {
    let pieces = if rng.gen_bool(0.5) {
        let mixes = rng.gen_range(1..=3);
        weighted_basis_pieces(rng, 2, mixes)
    } else {
        let count = rng.gen_range(3..=6);
        frame_pieces(rng, 2, count)
    };
    let povm = Povm::new(pieces).expect("2x2");
    refine_to_rank1(&povm)
        .expect("valid by construction")
        .elements
}

/// Random POVM on `dim`: rank-1 pieces grouped at random into at least two
/// outcomes (when there are at least two pieces), so some elements have rank above one.
pub fn random_povm<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Povm {
    let mut pieces = if rng.gen_bool(0.6) {
        let mixes = rng.gen_range(1..=2);
        weighted_basis_pieces(rng, dim, mixes)
    } else {
        let count = rng.gen_range(dim + 1..=dim + 3);
        frame_pieces(rng, dim, count)
    };
    pieces.shuffle(rng);
    let n = pieces.len();
    let outcomes = if n < 2 { 1 } else { rng.gen_range(2..=n) };
    let mut elements = vec![ComplexMatrix::zeros(dim, dim); outcomes];
    for (k, piece) in pieces.iter().enumerate() {
        let slot = if k < outcomes {
            k
        } else {
            rng.gen_range(0..outcomes)
        };
        elements[slot] = &elements[slot] + piece;
    }
    let elements = elements.into_iter().map(|m| m.hermitian_part()).collect();
    Povm::new(elements).expect("square")
}

/// `(U_A ⊗ U_B)(α|00⟩ + β|11⟩)` on `dA × dB` with `α` uniform in `alpha_range`.
pub fn random_schmidt_rank2_state<R: Rng + ?Sized>(
    rng: &mut R,
    dims: (usize, usize),
    alpha_range: (f64, f64),
) -> StateVector {
    let alpha = rng.gen_range(alpha_range.0..=alpha_range.1);
    let beta = (1.0 - alpha * alpha).sqrt();
    let (da, db) = dims;
    let mut amps = vec![c(0.0, 0.0); da * db];
    amps[0] = c(alpha, 0.0);
    amps[db + 1] = c(beta, 0.0);
    let u = kron(&random_unitary(rng, da), &random_unitary(rng, db));
    StateVector::normalized(u.apply(&amps)).expect("nonzero")
}

/// Shape of a random two-player strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StrategyShape {
    pub inputs: (usize, usize),
    pub outputs: (usize, usize),
    pub dims: (usize, usize),
}

impl StrategyShape {
    pub fn qubits(inputs: (usize, usize), outputs: (usize, usize)) -> Self {
        Self {
            inputs,
            outputs,
            dims: (2, 2),
        }
    }

    /// Alphabet sizes drawn from `2..=3`, with the given dimensions.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, dims: (usize, usize)) -> Self {
        Self {
            inputs: (rng.gen_range(2..=3), rng.gen_range(2..=3)),
            outputs: (rng.gen_range(2..=3), rng.gen_range(2..=3)),
            dims,
        }
    }
}

fn random_player<R: Rng + ?Sized>(
    rng: &mut R,
    inputs: usize,
    outputs: usize,
    dim: usize,
) -> PlayerStrategy {
    let povms: Vec<Povm> = (0..inputs).map(|_| random_povm(rng, dim)).collect();
    let answers = povms
        .iter()
        .map(|p| (0..p.len()).map(|_| rng.gen_range(0..outputs)).collect())
        .collect();
    PlayerStrategy::new(povms, answers).expect("valid by construction")
}

/// Random strategy with a Schmidt-rank-2 state, `α ∈ [0.2, 0.95]`.
pub fn random_strategy<R: Rng + ?Sized>(rng: &mut R, shape: StrategyShape) -> QuantumStrategy {
    let state = random_schmidt_rank2_state(rng, shape.dims, (0.2, 0.95));
    let alice = random_player(rng, shape.inputs.0, shape.outputs.0, shape.dims.0);
    let bob = random_player(rng, shape.inputs.1, shape.outputs.1, shape.dims.1);
    QuantumStrategy::new(state, shape.dims, alice, bob).expect("dims")
}

/// Game won exactly on the answer pairs the strategy produces with
/// probability above `threshold`.
pub fn support_game(s: &QuantumStrategy, outputs: (usize, usize), threshold: f64) -> Result<Game> {
    let inputs = [s.alice().inputs(), s.bob().inputs()];
    let outputs = [outputs.0, outputs.1];
    let mut table = Vec::new();
    for i in 0..index::product(&inputs).unwrap_or(0) {
        let x = index::decode(&inputs, i);
        let dist = answer_distribution(s, &outputs, &x)?;
        table.extend(dist.iter().map(|&p| p > threshold));
    }
    Game::from_table(&inputs, &outputs, table)
}

/// True if some answer pair has probability inside `(low, high]`.
pub fn has_ambiguous_probability(
    s: &QuantumStrategy,
    outputs: (usize, usize),
    low: f64,
    high: f64,
) -> Result<bool> {
    let inputs = [s.alice().inputs(), s.bob().inputs()];
    let outputs = [outputs.0, outputs.1];
    for i in 0..index::product(&inputs).unwrap_or(0) {
        let x = index::decode(&inputs, i);
        if answer_distribution(s, &outputs, &x)?
            .iter()
            .any(|&p| p > low && p <= high)
        {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A random strategy and the game it wins by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportBundle {
    pub strategy: QuantumStrategy,
    pub game: Game,
}

/// Draw strategies until none of their answer-pair probabilities falls in the
/// ambiguous band `(1e-12, 1e-8]`, then pair it with its support game.
pub fn random_winning_bundle<R: Rng + ?Sized>(rng: &mut R, shape: StrategyShape) -> SupportBundle {
    let tol = Tolerances::DEFAULT;
    loop {
        let strategy = random_strategy(rng, shape);
        if has_ambiguous_probability(&strategy, shape.outputs, tol.support, tol.ambiguous_upper)
            .expect("shapes agree")
        {
            continue;
        }
        let game = support_game(&strategy, shape.outputs, tol.support).expect("shapes agree");
        return SupportBundle { strategy, game };
    }
}
