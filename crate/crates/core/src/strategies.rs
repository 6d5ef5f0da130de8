//! Quantum strategies: a shared pure state, one POVM per (player, input), and a
//! map from each POVM outcome to an answer.
//!
//! Joint probabilities are computed by direct contraction,
//! `Pr[i, j] = ⟨Ψ| M_i ⊗ N_j |Ψ⟩`. For a two-qubit strategy in Schmidt normal
//! form `α|00⟩ + β|11⟩` with rank-1 elements the same quantity has a closed form
//! ([`closed_form_probability`]); the two routes are cross-checked in tests.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::games::Game;
use crate::index;
use crate::linalg::{c, kron, schmidt, ComplexMatrix, StateVector, C64};
use crate::povm::{refine_to_rank1, Povm, Rank1Element, Refinement};
use crate::tolerance::Tolerances;

/// One player's measurements and answer maps, indexed by input.
#[derive(Clone, Debug, PartialEq)]
pub struct PlayerStrategy {
    povms: Vec<Povm>,
    /// `answers[x][outcome]`.
    answers: Vec<Vec<usize>>,
}

impl PlayerStrategy {
    /// Every POVM must be valid, share one dimension, and have an answer per outcome.
    pub fn new(povms: Vec<Povm>, answers: Vec<Vec<usize>>) -> Result<Self> {
        let Some(first) = povms.first() else {
            return Err(Error::Incompatible("player has no inputs"));
        };
        if answers.len() != povms.len() {
            return Err(Error::DimensionMismatch {
                expected: povms.len(),
                found: answers.len(),
            });
        }
        let dim = first.dim();
        for (p, a) in povms.iter().zip(&answers) {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            if a.len() != p.len() {
                return Err(Error::DimensionMismatch {
                    expected: p.len(),
                    found: a.len(),
                });
            }
            p.validate().map_err(Error::InvalidPovm)?;
        }
        Ok(Self { povms, answers })
    }

    pub fn dim(&self) -> usize {
        self.povms[0].dim()
    }

    pub fn inputs(&self) -> usize {
        self.povms.len()
    }

    pub fn povms(&self) -> &[Povm] {
        &self.povms
    }

    pub fn povm(&self, x: usize) -> Option<&Povm> {
        self.povms.get(x)
    }

    pub fn answers(&self) -> &[Vec<usize>] {
        &self.answers
    }

    pub fn answer(&self, x: usize, outcome: usize) -> Option<usize> {
        self.answers.get(x)?.get(outcome).copied()
    }

    /// Largest answer used plus one.
    pub fn answer_span(&self) -> usize {
        self.answers
            .iter()
            .flatten()
            .map(|&a| a + 1)
            .max()
            .unwrap_or(0)
    }

    fn element(&self, player: usize, x: usize, outcome: usize) -> Result<&ComplexMatrix> {
        let p = self
            .povm(x)
            .ok_or(Error::UnknownInput { player, input: x })?;
        p.element(outcome).ok_or(Error::UnknownOutcome {
            player,
            input: x,
            outcome,
        })
    }

    /// Same answers, POVMs replaced element by element.
    fn map_povms(&self, f: impl Fn(&Povm) -> Result<Povm>) -> Result<Self> {
        Ok(Self {
            povms: self.povms.iter().map(f).collect::<Result<_>>()?,
            answers: self.answers.clone(),
        })
    }
}

/// Two-player strategy over a shared state of dimension `dA × dB`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumStrategy {
    state: StateVector,
    dims: (usize, usize),
    alice: PlayerStrategy,
    bob: PlayerStrategy,
}

impl QuantumStrategy {
    pub fn new(
        state: StateVector,
        dims: (usize, usize),
        alice: PlayerStrategy,
        bob: PlayerStrategy,
    ) -> Result<Self> {
        if dims.0 * dims.1 != state.dim() {
            return Err(Error::DimensionMismatch {
                expected: dims.0 * dims.1,
                found: state.dim(),
            });
        }
        if alice.dim() != dims.0 {
            return Err(Error::DimensionMismatch {
                expected: dims.0,
                found: alice.dim(),
            });
        }
        if bob.dim() != dims.1 {
            return Err(Error::DimensionMismatch {
                expected: dims.1,
                found: bob.dim(),
            });
        }
        Ok(Self {
            state,
            dims,
            alice,
            bob,
        })
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn alice(&self) -> &PlayerStrategy {
        &self.alice
    }

    pub fn bob(&self) -> &PlayerStrategy {
        &self.bob
    }

    /// `Pr[i, j]` for inputs `(x, y)`, row-major over Alice's outcomes.
    pub fn probability_table(&self, x: usize, y: usize) -> Result<Vec<f64>> {
        let pa = self.alice.povm(x).ok_or(Error::UnknownInput {
            player: 0,
            input: x,
        })?;
        let pb = self.bob.povm(y).ok_or(Error::UnknownInput {
            player: 1,
            input: y,
        })?;
        let mut out = Vec::with_capacity(pa.len() * pb.len());
        for m in pa.elements() {
            for n in pb.elements() {
                out.push(self.state.expectation(&kron(m, n)));
            }
        }
        Ok(out)
    }
}

/// `⟨Ψ| M_i^x ⊗ N_j^y |Ψ⟩` by direct tensor contraction.
pub fn joint_probability(
    s: &QuantumStrategy,
    x: usize,
    y: usize,
    i: usize,
    j: usize,
) -> Result<f64> {
    let m = s.alice.element(0, x, i)?;
    let n = s.bob.element(1, y, j)?;
    Ok(s.state.expectation(&kron(m, n)))
}

/// Three-player strategy; only what the GHZ/Mermin game needs.
#[derive(Clone, Debug, PartialEq)]
pub struct TripartiteStrategy {
    state: StateVector,
    dims: [usize; 3],
    players: [PlayerStrategy; 3],
}

impl TripartiteStrategy {
    pub fn new(state: StateVector, players: [PlayerStrategy; 3]) -> Result<Self> {
        let dims = [players[0].dim(), players[1].dim(), players[2].dim()];
        if dims.iter().product::<usize>() != state.dim() {
            return Err(Error::DimensionMismatch {
                expected: dims.iter().product(),
                found: state.dim(),
            });
        }
        Ok(Self {
            state,
            dims,
            players,
        })
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn players(&self) -> &[PlayerStrategy; 3] {
        &self.players
    }

    pub fn joint_probability(&self, inputs: [usize; 3], outcomes: [usize; 3]) -> Result<f64> {
        let m0 = self.players[0].element(0, inputs[0], outcomes[0])?;
        let m1 = self.players[1].element(1, inputs[1], outcomes[1])?;
        let m2 = self.players[2].element(2, inputs[2], outcomes[2])?;
        Ok(self.state.expectation(&kron(&kron(m0, m1), m2)))
    }
}

/// Anything that induces a distribution over answer tuples for each question tuple.
pub trait NonlocalStrategy {
    fn player_strategies(&self) -> Vec<&PlayerStrategy>;

    /// Probability of each outcome tuple for the given inputs, flattened with
    /// the first player most significant.
    fn outcome_distribution(&self, inputs: &[usize]) -> Result<Vec<f64>>;
}

impl NonlocalStrategy for QuantumStrategy {
    fn player_strategies(&self) -> Vec<&PlayerStrategy> {
        vec![&self.alice, &self.bob]
    }

    fn outcome_distribution(&self, inputs: &[usize]) -> Result<Vec<f64>> {
        self.probability_table(inputs[0], inputs[1])
    }
}

impl NonlocalStrategy for TripartiteStrategy {
    fn player_strategies(&self) -> Vec<&PlayerStrategy> {
        self.players.iter().collect()
    }

    fn outcome_distribution(&self, inputs: &[usize]) -> Result<Vec<f64>> {
        let counts: Vec<usize> = (0..3)
            .map(|p| {
                self.players[p]
                    .povm(inputs[p])
                    .map(Povm::len)
                    .ok_or(Error::UnknownInput {
                        player: p,
                        input: inputs[p],
                    })
            })
            .collect::<Result<_>>()?;
        let total = counts.iter().product();
        (0..total)
            .map(|k| {
                let o = index::decode(&counts, k);
                self.joint_probability([inputs[0], inputs[1], inputs[2]], [o[0], o[1], o[2]])
            })
            .collect()
    }
}

/// Losing tuple with the most probability, at the input with the most losing mass.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    pub probability: f64,
    pub losing_mass: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WinReport {
    pub tol: f64,
    /// Probability of a losing answer tuple, per joint input (first player most significant).
    pub losing_mass: Vec<f64>,
    pub counterexample: Option<Counterexample>,
}

impl WinReport {
    pub fn wins(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn max_losing_mass(&self) -> f64 {
        self.losing_mass.iter().copied().fold(0.0, f64::max)
    }
}

/// Distribution over the game's answer tuples for one joint input.
pub fn answer_distribution<S: NonlocalStrategy + ?Sized>(
    s: &S,
    output_sizes: &[usize],
    inputs: &[usize],
) -> Result<Vec<f64>> {
    let players = s.player_strategies();
    let raw = s.outcome_distribution(inputs)?;
    let counts: Vec<usize> = players
        .iter()
        .zip(inputs)
        .map(|(p, &x)| p.povms[x].len())
        .collect();
    let mut out = vec![0.0; index::product(output_sizes).unwrap_or(0)];
    let mut outcome = vec![0; counts.len()];
    let mut answer = vec![0; counts.len()];
    for (k, &p) in raw.iter().enumerate() {
        index::decode_into(&counts, k, &mut outcome);
        for (pl, slot) in answer.iter_mut().enumerate() {
            *slot = players[pl].answers[inputs[pl]][outcome[pl]];
        }
        out[index::encode(output_sizes, &answer)?] += p;
    }
    Ok(out)
}

pub(crate) fn check_compatible<S: NonlocalStrategy + ?Sized>(s: &S, g: &Game) -> Result<()> {
    let players = s.player_strategies();
    if players.len() != g.players() {
        return Err(Error::Incompatible("player count differs from the game"));
    }
    for (p, (ps, (&ni, &no))) in players
        .iter()
        .zip(g.input_sizes().iter().zip(g.output_sizes()))
        .enumerate()
    {
        if ps.inputs() != ni {
            return Err(Error::OutOfRange {
                player: p,
                value: ps.inputs(),
                size: ni,
            });
        }
        if ps.answer_span() > no {
            return Err(Error::OutOfRange {
                player: p,
                value: ps.answer_span() - 1,
                size: no,
            });
        }
    }
    Ok(())
}

/// Total probability of losing answers at every question; the strategy wins
/// when each is at most `tol`.
pub fn verify_winning<S: NonlocalStrategy + ?Sized>(
    s: &S,
    g: &Game,
    tol: f64,
) -> Result<WinReport> {
    check_compatible(s, g)?;
    let mut losing_mass = Vec::with_capacity(g.joint_input_count());
    let mut worst: Option<(usize, f64)> = None;
    for i in 0..g.joint_input_count() {
        let inputs = index::decode(g.input_sizes(), i);
        let dist = answer_distribution(s, g.output_sizes(), &inputs)?;
        let row = g.row(i);
        let mass: f64 = dist
            .iter()
            .zip(row)
            .filter(|(_, &w)| !w)
            .fold(0.0, |acc, (p, _)| acc + p.max(0.0));
        losing_mass.push(mass);
        if mass > tol && worst.is_none_or(|(_, m)| mass > m) {
            worst = Some((i, mass));
        }
    }
    let counterexample = match worst {
        None => None,
        Some((i, mass)) => {
            let inputs = index::decode(g.input_sizes(), i);
            let dist = answer_distribution(s, g.output_sizes(), &inputs)?;
            let row = g.row(i);
            let (o, p) = dist.iter().enumerate().filter(|(o, _)| !row[*o]).fold(
                (usize::MAX, f64::NEG_INFINITY),
                |best, (o, &p)| {
                    if p > best.1 {
                        (o, p)
                    } else {
                        best
                    }
                },
            );
            Some(Counterexample {
                inputs,
                outputs: index::decode(g.output_sizes(), o),
                probability: p,
                losing_mass: mass,
            })
        }
    };
    Ok(WinReport {
        tol,
        losing_mass,
        counterexample,
    })
}

/// `γγ'[α²cos²θcos²θ' + β²sin²θsin²θ' + 2αβ cosθcosθ' cos(φ+φ') sinθ sinθ']`,
/// the joint probability of two rank-1 elements on `α|00⟩ + β|11⟩`.
pub fn closed_form_probability(alpha: f64, beta: f64, ea: &Rank1Element, eb: &Rank1Element) -> f64 {
    let (sa, ca) = ea.theta.sin_cos();
    let (sb, cb) = eb.theta.sin_cos();
    ea.gamma
        * eb.gamma
        * (alpha * alpha * ca * ca * cb * cb
            + beta * beta * sa * sa * sb * sb
            + 2.0 * alpha * beta * ca * cb * (ea.phi + eb.phi).cos() * sa * sb)
}

/// `α|00⟩ + β|11⟩`.
pub fn schmidt_state(alpha: f64, beta: f64) -> Result<StateVector> {
    StateVector::new(vec![c(alpha, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(beta, 0.0)])
}

/// Two-qubit strategy in Schmidt normal form with rank-1 POVMs.
#[derive(Clone, Debug, PartialEq)]
pub struct SchmidtStrategy2x2 {
    pub alpha: f64,
    pub beta: f64,
    /// Refined POVM per Alice input.
    pub alice: Vec<Refinement>,
    pub bob: Vec<Refinement>,
    /// Answer maps on original outcomes.
    pub answers_a: Vec<Vec<usize>>,
    pub answers_b: Vec<Vec<usize>>,
}

impl SchmidtStrategy2x2 {
    /// Refined joint probability from the closed form.
    pub fn refined_probability(&self, x: usize, y: usize, k: usize, l: usize) -> f64 {
        closed_form_probability(
            self.alpha,
            self.beta,
            &self.alice[x].elements[k],
            &self.bob[y].elements[l],
        )
    }

    /// Closed-form refined probabilities summed back onto original outcomes,
    /// row-major over Alice's original outcomes.
    pub fn original_table(&self, x: usize, y: usize) -> Vec<f64> {
        let ra = &self.alice[x];
        let rb = &self.bob[y];
        let mut out = vec![0.0; ra.original_outcomes * rb.original_outcomes];
        for (k, ea) in ra.elements.iter().enumerate() {
            for (l, eb) in rb.elements.iter().enumerate() {
                out[ea.label.outcome * rb.original_outcomes + eb.label.outcome] +=
                    self.refined_probability(x, y, k, l);
            }
        }
        out
    }

    /// Matrix-level strategy on `α|00⟩ + β|11⟩` with one outcome per rank-1 element.
    pub fn to_refined_strategy(&self) -> Result<QuantumStrategy> {
        let side = |refs: &[Refinement], answers: &[Vec<usize>]| -> Result<PlayerStrategy> {
            let povms = refs.iter().map(Refinement::to_povm).collect();
            let ans = refs
                .iter()
                .zip(answers)
                .map(|(r, a)| r.elements.iter().map(|e| a[e.label.outcome]).collect())
                .collect();
            PlayerStrategy::new(povms, ans)
        };
        QuantumStrategy::new(
            schmidt_state(self.alpha, self.beta)?,
            (2, 2),
            side(&self.alice, &self.answers_a)?,
            side(&self.bob, &self.answers_b)?,
        )
    }
}

/// Rewrite a two-qubit strategy over `α|00⟩ + β|11⟩`: each POVM is conjugated by
/// the local Schmidt basis change (`M ↦ U† M U`) and refined to rank 1.
pub fn schmidt_normalize(s: &QuantumStrategy) -> Result<SchmidtStrategy2x2> {
    if s.dims != (2, 2) {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: s.dims.0 * s.dims.1,
        });
    }
    let form = schmidt(&s.state, 2, 2)?;
    let beta = form.coefficients[1];
    if beta < Tolerances::DEFAULT.product_state {
        return Err(Error::ProductState(beta));
    }
    let refine_side = |p: &PlayerStrategy, u: &ComplexMatrix| -> Result<Vec<Refinement>> {
        p.povms
            .iter()
            .map(|m| refine_to_rank1(&m.conjugate_by(u)?))
            .collect()
    };
    Ok(SchmidtStrategy2x2 {
        alpha: form.coefficients[0],
        beta,
        alice: refine_side(&s.alice, &form.basis_a)?,
        bob: refine_side(&s.bob, &form.basis_b)?,
        answers_a: s.alice.answers.clone(),
        answers_b: s.bob.answers.clone(),
    })
}

/// Compress the larger side onto the span of its Schmidt vectors, giving a
/// `d × d` strategy with `d = min(dA, dB)` and identical statistics.
pub fn reduce_dimension(s: &QuantumStrategy) -> Result<QuantumStrategy> {
    let (da, db) = s.dims;
    if da == db {
        return Ok(s.clone());
    }
    let form = schmidt(&s.state, da, db)?;
    let d = da.min(db);
    let amps = s.state.amplitudes();
    if da < db {
        let w = &form.basis_b;
        let reduced: Vec<C64> = (0..da)
            .flat_map(|i| {
                (0..d).map(move |k| (0..db).map(|j| amps[i * db + j] * w[(j, k)].conj()).sum())
            })
            .collect();
        QuantumStrategy::new(
            StateVector::new(reduced)?,
            (da, d),
            s.alice.clone(),
            s.bob.map_povms(|p| p.conjugate_by(w))?,
        )
    } else {
        let w = &form.basis_a;
        let reduced: Vec<C64> = (0..d)
            .flat_map(|k| {
                (0..db).map(move |j| (0..da).map(|i| amps[i * db + j] * w[(i, k)].conj()).sum())
            })
            .collect();
        QuantumStrategy::new(
            StateVector::new(reduced)?,
            (d, db),
            s.alice.map_povms(|p| p.conjugate_by(w))?,
            s.bob.clone(),
        )
    }
}

fn pauli_basis_povm(kind: char) -> Povm {
    let s = FRAC_1_SQRT_2;
    let u = match kind {
        'x' => ComplexMatrix::new(2, 2, vec![c(s, 0.), c(s, 0.), c(s, 0.), c(-s, 0.)]),
        'y' => ComplexMatrix::new(2, 2, vec![c(s, 0.), c(s, 0.), c(0., s), c(0., -s)]),
        _ => Ok(ComplexMatrix::identity(2)),
    }
    .expect("2x2");
    Povm::from_basis(&u).expect("2x2")
}

/// Standard GHZ strategy: share `(|000⟩ + |111⟩)/√2`, measure X on input 0 and
/// Y on input 1, answer 0 for eigenvalue +1 and 1 for −1.
pub fn ghz_strategy() -> TripartiteStrategy {
    let mut amps = vec![c(0.0, 0.0); 8];
    amps[0] = c(FRAC_1_SQRT_2, 0.0);
    amps[7] = c(FRAC_1_SQRT_2, 0.0);
    let player = || {
        PlayerStrategy::new(
            vec![pauli_basis_povm('x'), pauli_basis_povm('y')],
            vec![vec![0, 1], vec![0, 1]],
        )
        .expect("valid")
    };
    TripartiteStrategy::new(
        StateVector::new(amps).expect("normalized"),
        [player(), player(), player()],
    )
    .expect("dims")
}

/// Hardy's state `(|01⟩ + |10⟩ + |11⟩)/√3`.
pub fn hardy_state() -> StateVector {
    let a = 1.0 / 3.0f64.sqrt();
    StateVector::new(vec![c(0.0, 0.0), c(a, 0.0), c(a, 0.0), c(a, 0.0)]).expect("normalized")
}

/// Hardy's state measured in the computational basis (input 0) or the Hadamard
/// basis (input 1) by each player; answers are the outcome bits.
pub fn hardy_strategy() -> QuantumStrategy {
    let player = || {
        PlayerStrategy::new(
            vec![pauli_basis_povm('z'), pauli_basis_povm('x')],
            vec![vec![0, 1], vec![0, 1]],
        )
        .expect("valid")
    };
    QuantumStrategy::new(hardy_state(), (2, 2), player(), player()).expect("dims")
}

/// `(|00⟩ + |11⟩)/√2` measured in the computational basis on every input.
pub fn bell_strategy(inputs: usize) -> QuantumStrategy {
    let s = FRAC_1_SQRT_2;
    let state =
        StateVector::new(vec![c(s, 0.), c(0., 0.), c(0., 0.), c(s, 0.)]).expect("normalized");
    let player = || {
        PlayerStrategy::new(
            vec![Povm::computational_basis(2); inputs],
            vec![vec![0, 1]; inputs],
        )
        .expect("valid")
    };
    QuantumStrategy::new(state, (2, 2), player(), player()).expect("dims")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{ghz_mermin_game, Game};
    use crate::povm::RefinedLabel;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn bell_correlations() {
        let s = bell_strategy(1);
        assert!((joint_probability(&s, 0, 0, 0, 0).unwrap() - 0.5).abs() < 1e-15);
        assert!(joint_probability(&s, 0, 0, 0, 1).unwrap().abs() < 1e-15);
        assert!(matches!(
            joint_probability(&s, 1, 0, 0, 0),
            Err(Error::UnknownInput {
                player: 0,
                input: 1
            })
        ));
        assert!(matches!(
            joint_probability(&s, 0, 0, 0, 2),
            Err(Error::UnknownOutcome { player: 1, .. })
        ));
    }

    #[test]
    fn product_state_factorizes() {
        let s = QuantumStrategy::new(
            StateVector::basis(4, 0),
            (2, 2),
            hardy_strategy().alice().clone(),
            hardy_strategy().bob().clone(),
        )
        .unwrap();
        for x in 0..2 {
            for y in 0..2 {
                let t = s.probability_table(x, y).unwrap();
                let pa: Vec<f64> = (0..2).map(|i| t[2 * i] + t[2 * i + 1]).collect();
                let pb: Vec<f64> = (0..2).map(|j| t[j] + t[2 + j]).collect();
                for i in 0..2 {
                    for j in 0..2 {
                        assert!((t[2 * i + j] - pa[i] * pb[j]).abs() <= 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_substitutions() {
        let a = FRAC_1_SQRT_2;
        let north = Rank1Element::new(1.0, 0.0, 0.0, RefinedLabel::new(0, 0)).unwrap();
        assert!((closed_form_probability(a, a, &north, &north) - 0.5).abs() < 1e-15);
        let ea = Rank1Element::new(0.8, FRAC_PI_4, FRAC_PI_2, RefinedLabel::new(0, 0)).unwrap();
        let eb = Rank1Element::new(0.6, FRAC_PI_4, FRAC_PI_2, RefinedLabel::new(0, 0)).unwrap();
        assert!(closed_form_probability(a, a, &ea, &eb).abs() < 1e-15);
        let south = Rank1Element::new(1.0, FRAC_PI_2, PI, RefinedLabel::new(0, 0)).unwrap();
        assert!(closed_form_probability(0.6, 0.8, &north, &south).abs() < 1e-15);
    }

    #[test]
    fn ghz_strategy_wins_ghz_game() {
        let report = verify_winning(&ghz_strategy(), &ghz_mermin_game(), 1e-9).unwrap();
        assert!(report.wins(), "{report:?}");
        assert!(report.max_losing_mass() <= 1e-9);
    }

    #[test]
    fn trivial_games_verdicts() {
        let s = bell_strategy(2);
        let all = Game::all_winning(&[2, 2], &[2, 2]).unwrap();
        assert!(verify_winning(&s, &all, 1e-9).unwrap().wins());
        let none = Game::empty(&[2, 2], &[2, 2]).unwrap();
        let r = verify_winning(&s, &none, 1e-9).unwrap();
        let cx = r.counterexample.unwrap();
        assert!((cx.losing_mass - 1.0).abs() < 1e-12);
        assert_eq!(cx.inputs, vec![0, 0]);
        assert_eq!(cx.outputs, vec![0, 0]);
        assert!((cx.probability - 0.5).abs() < 1e-12);
    }

    #[test]
    fn incompatible_alphabets() {
        let s = bell_strategy(2);
        let g = Game::all_winning(&[3, 2], &[2, 2]).unwrap();
        assert!(matches!(
            verify_winning(&s, &g, 1e-9),
            Err(Error::OutOfRange { player: 0, .. })
        ));
        let g = Game::all_winning(&[2, 2], &[2, 1]).unwrap();
        assert!(matches!(
            verify_winning(&s, &g, 1e-9),
            Err(Error::OutOfRange { player: 1, .. })
        ));
        let g = Game::all_winning(&[2, 2, 2], &[2, 2, 2]).unwrap();
        assert!(matches!(
            verify_winning(&s, &g, 1e-9),
            Err(Error::Incompatible(_))
        ));
    }

    #[test]
    fn already_normal_form_is_unchanged() {
        let (alpha, beta) = (0.8, 0.6);
        let e = |g, t, p, i| Rank1Element::new(g, t, p, RefinedLabel::new(i, 0)).unwrap();
        let elems = [e(1.0, 0.6, 1.1, 0), e(1.0, FRAC_PI_2 - 0.6, 1.1 + PI, 1)];
        let povm = Povm::from_rank1(&elems).unwrap();
        let player = PlayerStrategy::new(vec![povm], vec![vec![0, 1]]).unwrap();
        let s = QuantumStrategy::new(
            schmidt_state(alpha, beta).unwrap(),
            (2, 2),
            player.clone(),
            player,
        )
        .unwrap();
        let n = schmidt_normalize(&s).unwrap();
        assert!((n.alpha - alpha).abs() < 1e-12 && (n.beta - beta).abs() < 1e-12);
        for (got, want) in n.alice[0].elements.iter().zip(&elems) {
            assert!((got.theta - want.theta).abs() < 1e-9);
            assert!((got.phi - want.phi).abs() < 1e-9);
            assert!((got.gamma - want.gamma).abs() < 1e-9);
        }
    }

    #[test]
    fn swapped_bell_state_normalizes() {
        let s = FRAC_1_SQRT_2;
        let state = StateVector::new(vec![c(0., 0.), c(s, 0.), c(s, 0.), c(0., 0.)]).unwrap();
        let base = hardy_strategy();
        let q =
            QuantumStrategy::new(state, (2, 2), base.alice().clone(), base.bob().clone()).unwrap();
        let n = schmidt_normalize(&q).unwrap();
        assert!((n.alpha - s).abs() < 1e-12 && (n.beta - s).abs() < 1e-12);
        for x in 0..2 {
            for y in 0..2 {
                let orig = q.probability_table(x, y).unwrap();
                let norm = n.original_table(x, y);
                for (a, b) in orig.iter().zip(&norm) {
                    assert!((a - b).abs() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn hardy_normal_form_coefficients() {
        let n = schmidt_normalize(&hardy_strategy()).unwrap();
        assert!((n.alpha - 0.93417).abs() < 1e-5);
        assert!((n.beta - 0.35682).abs() < 1e-5);
    }

    #[test]
    fn product_state_rejected_by_normalization() {
        let base = hardy_strategy();
        let q = QuantumStrategy::new(
            StateVector::basis(4, 3),
            (2, 2),
            base.alice().clone(),
            base.bob().clone(),
        )
        .unwrap();
        assert!(matches!(schmidt_normalize(&q), Err(Error::ProductState(_))));
    }

    #[test]
    fn product_state_two_by_five_reduces_then_rejects() {
        let state = StateVector::basis(2, 1).kron(&StateVector::basis(5, 3));
        let a = PlayerStrategy::new(vec![Povm::computational_basis(2)], vec![vec![0, 1]]).unwrap();
        let b = PlayerStrategy::new(
            vec![Povm::computational_basis(5)],
            vec![vec![0, 1, 0, 1, 0]],
        )
        .unwrap();
        let q = QuantumStrategy::new(state, (2, 5), a, b).unwrap();
        let r = reduce_dimension(&q).unwrap();
        assert_eq!(r.dims(), (2, 2));
        assert_eq!(schmidt(r.state(), 2, 2).unwrap().rank(), 1);
        let before = answer_distribution(&q, &[2, 2], &[0, 0]).unwrap();
        let after = answer_distribution(&r, &[2, 2], &[0, 0]).unwrap();
        for (p, q) in before.iter().zip(&after) {
            assert!((p - q).abs() < 1e-10);
        }
        assert!(matches!(schmidt_normalize(&r), Err(Error::ProductState(_))));
    }

    #[test]
    fn equal_dims_reduce_is_identity() {
        let s = hardy_strategy();
        assert_eq!(reduce_dimension(&s).unwrap(), s);
    }
}
