//! Classical strategies from winning quantum strategies with a qubit on one side.
//!
//! On `α|00⟩ + β|11⟩` with `α, β > 0`, write `a = α cosθ cosθ'`, `b = β sinθ sinθ'`
//! and `c = cos(φ + φ')`. The joint probability of two rank-1 elements is
//! `γγ'(a² + b² + 2abc)`, and since `a² + b² ≥ 2ab` with equality iff `a = b`, it
//! vanishes only when `a = b = 0` (one element at the south pole) or when
//! `a = b` and `c = −1` (`φ + φ' ∈ {π, 3π}`).
//!
//! Alice answering through an east element and Bob through a west element avoids
//! both: neither is the south pole, and `φ + φ'` lands strictly between `π` and `3π`.
//! The pair therefore has positive probability under the quantum strategy, so
//! if the quantum strategy never loses, neither does the classical one.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::classical::DeterministicStrategy;
use crate::error::{Error, Result};
use crate::games::Game;
use crate::linalg::{schmidt, StateVector};
use crate::povm::{pick_east, pick_west, Rank1Element};
use crate::strategies::{
    check_compatible, closed_form_probability, reduce_dimension, schmidt_normalize, verify_winning,
    PlayerStrategy, QuantumStrategy, SchmidtStrategy2x2,
};
use crate::tolerance::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VanishingKind {
    /// `a = b = 0`: one element at the north pole, the other at the south pole.
    BothPolesZero,
    /// `a = b` and `cos(φ + φ') = −1`.
    EqualAmplitudeAntiphase,
    NonVanishing,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VanishingWitness {
    pub kind: VanishingKind,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl VanishingWitness {
    pub fn vanishes(&self) -> bool {
        self.kind != VanishingKind::NonVanishing
    }
}

/// Classify whether the joint probability of two rank-1 elements on
/// `α|00⟩ + β|11⟩` vanishes, and why.
pub fn vanishing_characterization(
    alpha: f64,
    beta: f64,
    ea: &Rank1Element,
    eb: &Rank1Element,
) -> VanishingWitness {
    let tol = Tolerances::DEFAULT.vanishing;
    let a = alpha * ea.theta.cos() * eb.theta.cos();
    let b = beta * ea.theta.sin() * eb.theta.sin();
    let c = (ea.phi + eb.phi).cos();
    let kind = if a <= tol && b <= tol {
        VanishingKind::BothPolesZero
    } else if (a - b).abs() <= tol && (c + 1.0).abs() <= tol {
        VanishingKind::EqualAmplitudeAntiphase
    } else {
        VanishingKind::NonVanishing
    };
    VanishingWitness { kind, a, b, c }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtractionRoute {
    /// East pick for Alice, west pick for Bob, in Schmidt normal form.
    Hemisphere,
    /// Schmidt rank 1: each player answers with the most likely outcome on their local state.
    ProductState,
}

/// Refined element chosen for one input.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pick {
    /// Index into the refinement of that input's POVM.
    pub refined_index: usize,
    pub element: Rank1Element,
    pub answer: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Extraction {
    pub strategy: DeterministicStrategy,
    pub route: ExtractionRoute,
    /// Whether the quantum strategy was checked to win first; `None` if the check was skipped.
    pub quantum_wins: Option<bool>,
    /// Normal form the picks were made in (hemisphere route only).
    pub normal_form: Option<SchmidtStrategy2x2>,
    pub alice_picks: Vec<Pick>,
    pub bob_picks: Vec<Pick>,
}

impl Extraction {
    /// The winning guarantee applies unless the quantum strategy was found to lose.
    pub fn guaranteed(&self) -> bool {
        self.quantum_wins != Some(false)
    }

    /// Vanishing analysis of every selected `(x, y)` pair (hemisphere route).
    pub fn pair_witnesses(&self) -> Vec<VanishingWitness> {
        let Some(nf) = &self.normal_form else {
            return Vec::new();
        };
        self.alice_picks
            .iter()
            .flat_map(|pa| {
                self.bob_picks.iter().map(move |pb| {
                    vanishing_characterization(nf.alpha, nf.beta, &pa.element, &pb.element)
                })
            })
            .collect()
    }

    /// Smallest closed-form probability over selected pairs (hemisphere route).
    pub fn min_pair_probability(&self) -> Option<f64> {
        let nf = self.normal_form.as_ref()?;
        self.alice_picks
            .iter()
            .flat_map(|pa| {
                self.bob_picks.iter().map(move |pb| {
                    closed_form_probability(nf.alpha, nf.beta, &pa.element, &pb.element)
                })
            })
            .reduce(f64::min)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtractOptions {
    /// Verify the quantum strategy wins before extracting.
    pub verify_first: bool,
    pub win_tol: f64,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        Self {
            verify_first: true,
            win_tol: Tolerances::DEFAULT.win,
        }
    }
}

pub fn extract_classical(s: &QuantumStrategy, g: &Game) -> Result<Extraction> {
    extract_classical_with(s, g, ExtractOptions::default())
}

/// Classical strategy that never produces an answer pair the quantum strategy
/// gives probability zero. Strategies of dimension `2 × n` or `n × 2` are first
/// compressed to `2 × 2`.
pub fn extract_classical_with(
    s: &QuantumStrategy,
    g: &Game,
    opts: ExtractOptions,
) -> Result<Extraction> {
    let (da, db) = s.dims();
    if da >= 3 && db >= 3 {
        return Err(Error::UnsupportedDimension { dims: (da, db) });
    }
    check_compatible(s, g)?;
    let quantum_wins = if opts.verify_first {
        Some(verify_winning(s, g, opts.win_tol)?.wins())
    } else {
        None
    };

    let form = schmidt(s.state(), da, db)?;
    let second = form.coefficients.get(1).copied().unwrap_or(0.0);
    if second < Tolerances::DEFAULT.product_state {
        let local_a = StateVector::new(form.basis_a.column(0))?;
        let local_b = StateVector::new(form.basis_b.column(0))?;
        let alice = most_likely_answers(s.alice(), &local_a);
        let bob = most_likely_answers(s.bob(), &local_b);
        return Ok(Extraction {
            strategy: DeterministicStrategy::new(alloc::vec![alice, bob]),
            route: ExtractionRoute::ProductState,
            quantum_wins,
            normal_form: None,
            alice_picks: Vec::new(),
            bob_picks: Vec::new(),
        });
    }

    let square = reduce_dimension(s)?;
    let nf = schmidt_normalize(&square)?;
    let alice_picks = picks(&nf.alice, &nf.answers_a, pick_east)?;
    let bob_picks = picks(&nf.bob, &nf.answers_b, pick_west)?;
    let strategy = DeterministicStrategy::new(alloc::vec![
        alice_picks.iter().map(|p| p.answer).collect(),
        bob_picks.iter().map(|p| p.answer).collect(),
    ]);
    Ok(Extraction {
        strategy,
        route: ExtractionRoute::Hemisphere,
        quantum_wins,
        normal_form: Some(nf),
        alice_picks,
        bob_picks,
    })
}

fn picks(
    refinements: &[crate::povm::Refinement],
    answers: &[Vec<usize>],
    pick: fn(&[Rank1Element]) -> Result<usize>,
) -> Result<Vec<Pick>> {
    refinements
        .iter()
        .zip(answers)
        .map(|(r, ans)| {
            let k = pick(&r.elements)?;
            let element = r.elements[k];
            Ok(Pick {
                refined_index: k,
                element,
                answer: ans[element.label.outcome],
            })
        })
        .collect()
}

/// Per input, the answer of the most probable outcome on a local pure state;
/// smallest outcome on ties.
fn most_likely_answers(p: &PlayerStrategy, local: &StateVector) -> Vec<usize> {
    p.povms()
        .iter()
        .zip(p.answers())
        .map(|(povm, ans)| {
            let probs = povm.probabilities(local);
            let best = probs
                .iter()
                .enumerate()
                .fold(
                    (0, f64::NEG_INFINITY),
                    |acc, (i, &q)| if q > acc.1 { (i, q) } else { acc },
                )
                .0;
            ans[best]
        })
        .collect()
}
