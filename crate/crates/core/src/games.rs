//! Finite nonlocal games.
//!
//! A game is a dense boolean table over `(joint input, joint output)` pairs,
//! with alphabets given as 0-based ranges per player. Promises are folded into
//! the table by marking every answer to an excluded question as winning.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::index;

/// Largest winning table accepted, in entries.
pub const MAX_TABLE_ENTRIES: u128 = 1_000_000;

/// Upper bound on the number of players.
pub const MAX_PLAYERS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    inputs: Vec<usize>,
    outputs: Vec<usize>,
    /// `joint_input * joint_output_count + joint_output`.
    winning: Vec<bool>,
}

impl Game {
    /// Build a game by evaluating `rule(inputs, outputs)` on every tuple.
    pub fn from_fn(
        inputs: &[usize],
        outputs: &[usize],
        mut rule: impl FnMut(&[usize], &[usize]) -> bool,
    ) -> Result<Self> {
        check_shape(inputs, outputs)?;
        let n_in = index::product(inputs).unwrap();
        let n_out = index::product(outputs).unwrap();
        let mut x = vec![0; inputs.len()];
        let mut a = vec![0; outputs.len()];
        let mut winning = Vec::with_capacity(n_in * n_out);
        for i in 0..n_in {
            index::decode_into(inputs, i, &mut x);
            for o in 0..n_out {
                index::decode_into(outputs, o, &mut a);
                winning.push(rule(&x, &a));
            }
        }
        Ok(Self {
            inputs: inputs.to_vec(),
            outputs: outputs.to_vec(),
            winning,
        })
    }

    /// Build from a flat table in joint-input-major order.
    pub fn from_table(inputs: &[usize], outputs: &[usize], winning: Vec<bool>) -> Result<Self> {
        check_shape(inputs, outputs)?;
        let expected = index::product(inputs).unwrap() * index::product(outputs).unwrap();
        if winning.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: winning.len(),
            });
        }
        Ok(Self {
            inputs: inputs.to_vec(),
            outputs: outputs.to_vec(),
            winning,
        })
    }

    pub fn all_winning(inputs: &[usize], outputs: &[usize]) -> Result<Self> {
        Self::from_fn(inputs, outputs, |_, _| true)
    }

    pub fn empty(inputs: &[usize], outputs: &[usize]) -> Result<Self> {
        Self::from_fn(inputs, outputs, |_, _| false)
    }

    pub fn players(&self) -> usize {
        self.inputs.len()
    }

    pub fn input_sizes(&self) -> &[usize] {
        &self.inputs
    }

    pub fn output_sizes(&self) -> &[usize] {
        &self.outputs
    }

    pub fn joint_input_count(&self) -> usize {
        self.winning.len() / self.joint_output_count()
    }

    pub fn joint_output_count(&self) -> usize {
        index::product(&self.outputs).unwrap()
    }

    pub fn table(&self) -> &[bool] {
        &self.winning
    }

    pub fn is_winning(&self, inputs: &[usize], outputs: &[usize]) -> Result<bool> {
        let i = index::encode(&self.inputs, inputs)?;
        let o = index::encode(&self.outputs, outputs)?;
        Ok(self.wins_at(i, o))
    }

    /// Lookup by flat indices; panics when out of range.
    #[inline]
    pub fn wins_at(&self, joint_input: usize, joint_output: usize) -> bool {
        self.winning[joint_input * self.joint_output_count() + joint_output]
    }

    /// Winning row for one joint input.
    pub fn row(&self, joint_input: usize) -> &[bool] {
        let n = self.joint_output_count();
        &self.winning[joint_input * n..(joint_input + 1) * n]
    }

    pub fn winning_count(&self) -> usize {
        self.winning.iter().filter(|&&w| w).count()
    }
}

fn check_shape(inputs: &[usize], outputs: &[usize]) -> Result<()> {
    if inputs.len() < 2 || inputs.len() > MAX_PLAYERS {
        return Err(Error::PlayerCount {
            found: inputs.len(),
            max: MAX_PLAYERS,
        });
    }
    if outputs.len() != inputs.len() {
        return Err(Error::TupleLength {
            expected: inputs.len(),
            found: outputs.len(),
        });
    }
    for (player, (&x, &a)) in inputs.iter().zip(outputs).enumerate() {
        if x == 0 || a == 0 {
            return Err(Error::EmptyAlphabet { player });
        }
    }
    let required = index::product_u128(inputs).saturating_mul(index::product_u128(outputs));
    if required > MAX_TABLE_ENTRIES {
        return Err(Error::TableTooLarge {
            required,
            cap: MAX_TABLE_ENTRIES,
        });
    }
    Ok(())
}

/// A game together with the set of joint inputs that may actually be asked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PromiseGame {
    base: Game,
    /// One flag per joint input.
    promise: Vec<bool>,
}

impl PromiseGame {
    pub fn new(base: Game, promise: Vec<bool>) -> Result<Self> {
        if promise.len() != base.joint_input_count() {
            return Err(Error::DimensionMismatch {
                expected: base.joint_input_count(),
                found: promise.len(),
            });
        }
        if !promise.iter().any(|&p| p) {
            return Err(Error::EmptyPromise);
        }
        Ok(Self { base, promise })
    }

    /// Promise given as a predicate on input tuples.
    pub fn from_predicate(base: Game, mut keep: impl FnMut(&[usize]) -> bool) -> Result<Self> {
        let sizes = base.input_sizes().to_vec();
        let promise = (0..base.joint_input_count())
            .map(|i| keep(&index::decode(&sizes, i)))
            .collect();
        Self::new(base, promise)
    }

    pub fn base(&self) -> &Game {
        &self.base
    }

    pub fn promise(&self) -> &[bool] {
        &self.promise
    }

    pub fn in_promise(&self, joint_input: usize) -> bool {
        self.promise[joint_input]
    }

    pub fn promise_count(&self) -> usize {
        self.promise.iter().filter(|&&p| p).count()
    }
}

/// Mark every answer to an off-promise question as winning.
pub fn fold_promise(pg: &PromiseGame) -> Game {
    let mut g = pg.base.clone();
    let n_out = g.joint_output_count();
    for (i, &inside) in pg.promise.iter().enumerate() {
        if !inside {
            g.winning[i * n_out..(i + 1) * n_out].fill(true);
        }
    }
    g
}

/// Three-player GHZ/Mermin game as a promise game: bits `x, y, z` with
/// `x ⊕ y ⊕ z = 0`, won iff `a ⊕ b ⊕ c = x ∨ y ∨ z`.
pub fn ghz_mermin_promise_game() -> PromiseGame {
    let base = Game::from_fn(&[2, 2, 2], &[2, 2, 2], |q, a| {
        (a[0] ^ a[1] ^ a[2]) == (q[0] | q[1] | q[2])
    })
    .expect("fixed shape");
    PromiseGame::from_predicate(base, |q| q[0] ^ q[1] ^ q[2] == 0).expect("nonempty promise")
}

/// GHZ/Mermin game with the promise folded in.
pub fn ghz_mermin_game() -> Game {
    fold_promise(&ghz_mermin_promise_game())
}
