//! Exhaustive classical analysis.
//!
//! Deterministic strategies are enumerated in lexicographic order of the
//! per-player answer tables, first player most significant. The classical value
//! search enumerates every player but the last and lets the last one play a best
//! response input by input; with ties broken toward smaller answers this finds
//! exactly the first optimal strategy of the full enumeration.
//!
//! Values are exact fractions over a uniform distribution on joint inputs.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::games::{fold_promise, Game, PromiseGame};
use crate::index;
use crate::strategies::{answer_distribution, hardy_strategy, NonlocalStrategy};
use crate::tolerance::Tolerances;

/// Largest number of deterministic strategies a search may cover.
pub const MAX_SEARCH_SPACE: u128 = 100_000_000;

/// One answer table per player, indexed by that player's input.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeterministicStrategy {
    tables: Vec<Vec<usize>>,
}

impl DeterministicStrategy {
    pub fn new(tables: Vec<Vec<usize>>) -> Self {
        Self { tables }
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    pub fn answer(&self, player: usize, input: usize) -> usize {
        self.tables[player][input]
    }

    /// Table shapes match the game and every answer is in range.
    pub fn check_against(&self, g: &Game) -> Result<()> {
        if self.tables.len() != g.players() {
            return Err(Error::TupleLength {
                expected: g.players(),
                found: self.tables.len(),
            });
        }
        for (player, (t, (&ni, &no))) in self
            .tables
            .iter()
            .zip(g.input_sizes().iter().zip(g.output_sizes()))
            .enumerate()
        {
            if t.len() != ni {
                return Err(Error::DimensionMismatch {
                    expected: ni,
                    found: t.len(),
                });
            }
            if let Some(&bad) = t.iter().find(|&&a| a >= no) {
                return Err(Error::OutOfRange {
                    player,
                    value: bad,
                    size: no,
                });
            }
        }
        Ok(())
    }

    /// Joint answer index played on a joint input.
    pub fn joint_output(&self, g: &Game, joint_input: usize) -> usize {
        let x = index::decode(g.input_sizes(), joint_input);
        let mut o = 0;
        for (p, &xp) in x.iter().enumerate() {
            o = o * g.output_sizes()[p] + self.tables[p][xp];
        }
        o
    }

    /// Number of joint inputs won.
    pub fn wins(&self, g: &Game) -> Result<u64> {
        self.check_against(g)?;
        Ok((0..g.joint_input_count())
            .filter(|&i| g.wins_at(i, self.joint_output(g, i)))
            .count() as u64)
    }

    pub fn value(&self, g: &Game) -> Result<Ratio<u64>> {
        Ok(Ratio::new(self.wins(g)?, g.joint_input_count() as u64))
    }

    pub fn wins_every_instance(&self, g: &Game) -> Result<bool> {
        Ok(self.wins(g)? == g.joint_input_count() as u64)
    }

    /// Outcomes this strategy can produce, as a support table.
    pub fn support(&self, g: &Game) -> Result<SupportTable> {
        self.check_against(g)?;
        let n_out = g.joint_output_count();
        let mut possible = vec![false; g.joint_input_count() * n_out];
        for i in 0..g.joint_input_count() {
            possible[i * n_out + self.joint_output(g, i)] = true;
        }
        SupportTable::new(g.input_sizes(), g.output_sizes(), possible)
    }
}

/// Mixed-radix space of deterministic strategies for some players.
#[derive(Clone, Debug)]
struct StrategySpace {
    inputs: Vec<usize>,
    outputs: Vec<usize>,
    /// One digit per (player, input), base = that player's output count.
    digits: Vec<usize>,
}

impl StrategySpace {
    fn new(inputs: &[usize], outputs: &[usize]) -> Self {
        let digits = inputs
            .iter()
            .zip(outputs)
            .flat_map(|(&ni, &no)| core::iter::repeat_n(no, ni))
            .collect();
        Self {
            inputs: inputs.to_vec(),
            outputs: outputs.to_vec(),
            digits,
        }
    }

    fn size(&self) -> u128 {
        index::product_u128(&self.digits)
    }

    fn decode(&self, mut idx: u64, out: &mut [Vec<usize>]) {
        for p in (0..self.inputs.len()).rev() {
            for x in (0..self.inputs[p]).rev() {
                let b = self.outputs[p] as u64;
                out[p][x] = (idx % b) as usize;
                idx /= b;
            }
        }
    }

    fn blank(&self) -> Vec<Vec<usize>> {
        self.inputs.iter().map(|&n| vec![0; n]).collect()
    }
}

/// Number of deterministic strategies for the game.
pub fn search_space_size(g: &Game) -> u128 {
    StrategySpace::new(g.input_sizes(), g.output_sizes()).size()
}

fn check_cap(g: &Game) -> Result<()> {
    let required = search_space_size(g);
    if required > MAX_SEARCH_SPACE {
        return Err(Error::SearchSpaceTooLarge {
            required,
            cap: MAX_SEARCH_SPACE,
        });
    }
    Ok(())
}

/// Size of the enumerated index space: strategies of every player but the last.
pub fn leading_space_size(g: &Game) -> u64 {
    let n = g.players();
    StrategySpace::new(&g.input_sizes()[..n - 1], &g.output_sizes()[..n - 1]).size() as u64
}

/// Best strategy found over a contiguous range of the leading index space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialSearch {
    pub best_wins: u64,
    pub leading_index: u64,
    pub witness: DeterministicStrategy,
    /// Full strategies accounted for, including the last player's tables.
    pub covered: u128,
}

/// Combine two partial results: more wins first, then the smaller index.
pub fn merge(a: PartialSearch, b: PartialSearch) -> PartialSearch {
    let covered = a.covered + b.covered;
    let mut best = if (b.best_wins, core::cmp::Reverse(b.leading_index))
        > (a.best_wins, core::cmp::Reverse(a.leading_index))
    {
        b
    } else {
        a
    };
    best.covered = covered;
    best
}

/// Search the leading indices in `range`. Returns `None` for an empty range.
///
/// Callers are expected to have checked the search-space cap.
pub fn search_range(g: &Game, range: Range<u64>) -> Option<PartialSearch> {
    if range.is_empty() {
        return None;
    }
    let n = g.players();
    let last = n - 1;
    let lead = StrategySpace::new(&g.input_sizes()[..last], &g.output_sizes()[..last]);
    let n_last_in = g.input_sizes()[last];
    let n_last_out = g.output_sizes()[last];
    let n_in = g.joint_input_count();
    let per_lead = index::product_u128(&vec![n_last_out; n_last_in]);

    // Precompute joint inputs as tuples.
    let tuples: Vec<Vec<usize>> = (0..n_in)
        .map(|i| index::decode(g.input_sizes(), i))
        .collect();

    let mut tables = lead.blank();
    let mut score = vec![0u64; n_last_in * n_last_out];
    let mut best: Option<PartialSearch> = None;
    for li in range.clone() {
        lead.decode(li, &mut tables);
        score.fill(0);
        for (i, x) in tuples.iter().enumerate() {
            let mut base = 0;
            for p in 0..last {
                base = base * g.output_sizes()[p] + tables[p][x[p]];
            }
            base *= n_last_out;
            let z = x[last];
            let row = g.row(i);
            for cand in 0..n_last_out {
                if row[base + cand] {
                    score[z * n_last_out + cand] += 1;
                }
            }
        }
        let mut total = 0;
        let mut last_table = vec![0; n_last_in];
        for z in 0..n_last_in {
            let s = &score[z * n_last_out..(z + 1) * n_last_out];
            let (arg, max) =
                s.iter()
                    .enumerate()
                    .fold((0, 0), |acc, (k, &v)| if v > acc.1 { (k, v) } else { acc });
            last_table[z] = arg;
            total += max;
        }
        if best.as_ref().is_none_or(|b| total > b.best_wins) {
            let mut all = tables.clone();
            all.push(last_table);
            best = Some(PartialSearch {
                best_wins: total,
                leading_index: li,
                witness: DeterministicStrategy::new(all),
                covered: 0,
            });
        }
    }
    best.map(|mut b| {
        b.covered = (range.end - range.start) as u128 * per_lead;
        b
    })
}

/// Value restricted to the questions allowed by a promise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PromiseValue {
    pub value: Ratio<u64>,
    pub wins: u64,
    pub instances: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalValueReport {
    /// Best fraction of joint inputs won, uniform over all joint inputs.
    pub best: Ratio<u64>,
    pub best_wins: u64,
    pub instances: u64,
    pub witness: DeterministicStrategy,
    pub strategies_searched: u128,
    pub promise: Option<PromiseValue>,
}

/// Turn a merged search result into a report.
pub fn finish_report(g: &Game, partial: PartialSearch) -> ClassicalValueReport {
    let instances = g.joint_input_count() as u64;
    ClassicalValueReport {
        best: Ratio::new(partial.best_wins, instances),
        best_wins: partial.best_wins,
        instances,
        witness: partial.witness,
        strategies_searched: partial.covered,
        promise: None,
    }
}

/// Checks the search-space cap; returns the leading range to split across workers.
pub fn prepare_search(g: &Game) -> Result<Range<u64>> {
    check_cap(g)?;
    Ok(0..leading_space_size(g))
}

/// Exact classical value by exhaustive search.
pub fn classical_value(g: &Game) -> Result<ClassicalValueReport> {
    let range = prepare_search(g)?;
    let partial = search_range(g, range).expect("nonempty strategy space");
    Ok(finish_report(g, partial))
}

/// Attach the promise-conditioned value to a report on the folded game.
pub fn with_promise(mut report: ClassicalValueReport, pg: &PromiseGame) -> ClassicalValueReport {
    let inside = pg.promise_count() as u64;
    let outside = report.instances - inside;
    let wins = report.best_wins - outside;
    report.promise = Some(PromiseValue {
        value: Ratio::new(wins, inside),
        wins,
        instances: inside,
    });
    report
}

/// Classical value of the folded game, plus the value on promise inputs only.
pub fn classical_value_with_promise(pg: &PromiseGame) -> Result<ClassicalValueReport> {
    let folded = fold_promise(pg);
    Ok(with_promise(classical_value(&folded)?, pg))
}

pub fn has_classical_winning_strategy(g: &Game) -> Result<bool> {
    Ok(classical_value(g)?.best == Ratio::from_integer(1))
}

/// Which answer tuples can occur for each question tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportTable {
    inputs: Vec<usize>,
    outputs: Vec<usize>,
    possible: Vec<bool>,
}

impl SupportTable {
    pub fn new(inputs: &[usize], outputs: &[usize], possible: Vec<bool>) -> Result<Self> {
        // Reuse the game shape checks.
        let g = Game::from_table(inputs, outputs, possible)?;
        for i in 0..g.joint_input_count() {
            if !g.row(i).iter().any(|&p| p) {
                return Err(Error::EmptySupport { input: i });
            }
        }
        Ok(Self {
            inputs: inputs.to_vec(),
            outputs: outputs.to_vec(),
            possible: g.table().to_vec(),
        })
    }

    /// Answer tuples with probability above `threshold` under a quantum strategy.
    pub fn from_strategy<S: NonlocalStrategy + ?Sized>(
        s: &S,
        inputs: &[usize],
        outputs: &[usize],
        threshold: f64,
    ) -> Result<Self> {
        let n_in = index::product(inputs).unwrap_or(0);
        let mut possible = Vec::new();
        for i in 0..n_in {
            let x = index::decode(inputs, i);
            let dist = answer_distribution(s, outputs, &x)?;
            possible.extend(dist.iter().map(|&p| p > threshold));
        }
        Self::new(inputs, outputs, possible)
    }

    pub fn input_sizes(&self) -> &[usize] {
        &self.inputs
    }

    pub fn output_sizes(&self) -> &[usize] {
        &self.outputs
    }

    pub fn table(&self) -> &[bool] {
        &self.possible
    }

    pub fn is_possible(&self, inputs: &[usize], outputs: &[usize]) -> Result<bool> {
        let i = index::encode(&self.inputs, inputs)?;
        let o = index::encode(&self.outputs, outputs)?;
        Ok(self.possible[i * index::product(&self.outputs).unwrap() + o])
    }

    /// Game whose winning relation is the possible set.
    pub fn to_game(&self) -> Game {
        Game::from_table(&self.inputs, &self.outputs, self.possible.clone()).expect("checked shape")
    }
}

/// Support of Hardy's state measured in the computational (input 0) or
/// Hadamard (input 1) basis by each player.
pub fn hardy_support() -> SupportTable {
    SupportTable::from_strategy(
        &hardy_strategy(),
        &[2, 2],
        &[2, 2],
        Tolerances::DEFAULT.support,
    )
    .expect("fixed shape")
}

/// Outcome of the local-support check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// Every possible event is produced by some admissible deterministic strategy;
    /// `cover` is an irredundant set of such strategies.
    Feasible {
        cover: Vec<DeterministicStrategy>,
        admissible: u64,
    },
    /// `(inputs, outputs)` is possible but no admissible strategy produces it.
    Infeasible {
        inputs: Vec<usize>,
        outputs: Vec<usize>,
        admissible: u64,
    },
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible { .. })
    }
}

/// Can a mixture of deterministic strategies reproduce exactly the possible set?
///
/// Admissible strategies never produce an impossible event; the table is
/// locally feasible iff their supports cover every possible event.
pub fn local_support_feasible(t: &SupportTable) -> Result<Feasibility> {
    let g = t.to_game();
    check_cap(&g)?;
    let space = StrategySpace::new(&t.inputs, &t.outputs);
    let total = space.size() as u64;
    let n_in = g.joint_input_count();
    let n_out = g.joint_output_count();
    let mut first_cover: Vec<Option<u64>> = vec![None; n_in * n_out];
    let mut admissible = 0u64;
    let mut tables = space.blank();
    let mut outs = vec![0usize; n_in];
    for idx in 0..total {
        space.decode(idx, &mut tables);
        let strat = DeterministicStrategy::new(core::mem::take(&mut tables));
        let mut ok = true;
        for (i, slot) in outs.iter_mut().enumerate() {
            *slot = strat.joint_output(&g, i);
            if !g.wins_at(i, *slot) {
                ok = false;
                break;
            }
        }
        tables = strat.tables;
        if !ok {
            continue;
        }
        admissible += 1;
        for (i, &o) in outs.iter().enumerate() {
            first_cover[i * n_out + o].get_or_insert(idx);
        }
    }

    for (e, &p) in t.possible.iter().enumerate() {
        if p && first_cover[e].is_none() {
            return Ok(Feasibility::Infeasible {
                inputs: index::decode(&t.inputs, e / n_out),
                outputs: index::decode(&t.outputs, e % n_out),
                admissible,
            });
        }
    }

    // Greedy cover in event order, then drop redundant members.
    let mut chosen: Vec<u64> = Vec::new();
    let covers = |idx: u64, e: usize, tables: &mut Vec<Vec<usize>>| -> bool {
        space.decode(idx, tables);
        let s = DeterministicStrategy::new(tables.clone());
        s.joint_output(&g, e / n_out) == e % n_out
    };
    let mut scratch = space.blank();
    for (e, &p) in t.possible.iter().enumerate() {
        if !p || chosen.iter().any(|&c| covers(c, e, &mut scratch)) {
            continue;
        }
        chosen.push(first_cover[e].expect("checked above"));
    }
    let mut k = 0;
    while k < chosen.len() {
        let others: Vec<u64> = chosen
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &c)| c)
            .collect();
        let redundant = t
            .possible
            .iter()
            .enumerate()
            .all(|(e, &p)| !p || others.iter().any(|&c| covers(c, e, &mut scratch)));
        if redundant {
            chosen.remove(k);
        } else {
            k += 1;
        }
    }
    let cover = chosen
        .into_iter()
        .map(|idx| {
            let mut t = space.blank();
            space.decode(idx, &mut t);
            DeterministicStrategy::new(t)
        })
        .collect();
    Ok(Feasibility::Feasible { cover, admissible })
}
