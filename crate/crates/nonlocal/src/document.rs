//! JSON documents for games, quantum strategies, POVMs and deterministic strategies.
//!
//! Complex numbers are `[re, im]` pairs and matrices are dense row-major lists
//! of rows. Unknown fields are rejected. Writing a parsed document reproduces
//! the original bytes when the original was written by [`to_json`].

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use nonlocal_core::games::MAX_PLAYERS;
use nonlocal_core::strategies::TripartiteStrategy;
use nonlocal_core::{
    ComplexMatrix, DeterministicStrategy, Game, PlayerStrategy, Povm, PromiseGame, QuantumStrategy,
    StateVector, C64,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, CliResult};

pub type Complex = [f64; 2];

/// Pretty JSON with a trailing newline. Arrays holding only scalars stay on
/// one line, so amplitudes and matrix rows read as `[re, im]`.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let value = serde_json::to_value(doc).expect("documents serialize");
    let mut s = String::new();
    write_value(&mut s, &value, 0);
    s.push('\n');
    s
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| out.extend(std::iter::repeat_n("  ", d));
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                out.push_str(&item.to_string());
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                pad(out, depth + 1);
                write_value(out, item, depth + 1);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (k, (key, item)) in map.iter().enumerate() {
                pad(out, depth + 1);
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(out, item, depth + 1);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

/// Parse JSON text; errors carry the source name, line and column.
pub fn from_json<T: DeserializeOwned>(source: &str, text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        file: source.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn read<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    from_json(&path.display().to_string(), &text)
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Invalid {
        path: path.into(),
        message: message.into(),
    }
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|k| k.to_string()).collect()
}

/// Winning answer tuple for one question tuple.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WinningTuple {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDocument {
    pub players: usize,
    /// Input labels per player.
    pub inputs: Vec<Vec<String>>,
    /// Output labels per player.
    pub outputs: Vec<Vec<String>>,
    pub relation: Vec<WinningTuple>,
    /// Allowed question tuples; absent means every tuple is asked.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub promise: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

/// Label lookup for every player's alphabets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabets {
    pub inputs: Vec<Vec<String>>,
    pub outputs: Vec<Vec<String>>,
    input_index: Vec<HashMap<String, usize>>,
    output_index: Vec<HashMap<String, usize>>,
}

impl Alphabets {
    pub fn new(inputs: Vec<Vec<String>>, outputs: Vec<Vec<String>>) -> CliResult<Self> {
        let index =
            |alphabets: &[Vec<String>], field: &str| -> CliResult<Vec<HashMap<String, usize>>> {
                alphabets
                    .iter()
                    .enumerate()
                    .map(|(p, labels)| {
                        if labels.is_empty() {
                            return Err(invalid(format!("{field}[{p}]"), "empty alphabet"));
                        }
                        let mut map = HashMap::new();
                        for (k, l) in labels.iter().enumerate() {
                            if map.insert(l.clone(), k).is_some() {
                                return Err(invalid(
                                    format!("{field}[{p}][{k}]"),
                                    format!("duplicate label {l:?}"),
                                ));
                            }
                        }
                        Ok(map)
                    })
                    .collect()
            };
        let input_index = index(&inputs, "inputs")?;
        let output_index = index(&outputs, "outputs")?;
        Ok(Self {
            inputs,
            outputs,
            input_index,
            output_index,
        })
    }

    /// Labels `"0"`, `"1"`, … for the given alphabet sizes.
    pub fn numbered(inputs: &[usize], outputs: &[usize]) -> Self {
        Self::new(
            inputs.iter().map(|&n| numbered(n)).collect(),
            outputs.iter().map(|&n| numbered(n)).collect(),
        )
        .expect("numbered labels are distinct")
    }

    pub fn players(&self) -> usize {
        self.inputs.len()
    }

    pub fn input_sizes(&self) -> Vec<usize> {
        self.inputs.iter().map(Vec::len).collect()
    }

    pub fn output_sizes(&self) -> Vec<usize> {
        self.outputs.iter().map(Vec::len).collect()
    }

    pub fn input(&self, player: usize, label: &str, path: &str) -> CliResult<usize> {
        self.input_index[player]
            .get(label)
            .copied()
            .ok_or_else(|| invalid(path, format!("unknown input {label:?} for player {player}")))
    }

    pub fn output(&self, player: usize, label: &str, path: &str) -> CliResult<usize> {
        self.output_index[player]
            .get(label)
            .copied()
            .ok_or_else(|| {
                invalid(
                    path,
                    format!("unknown output {label:?} for player {player}"),
                )
            })
    }

    fn tuple(&self, labels: &[String], path: &str, output: bool) -> CliResult<Vec<usize>> {
        if labels.len() != self.players() {
            return Err(invalid(
                path,
                format!("expected {} labels, found {}", self.players(), labels.len()),
            ));
        }
        labels
            .iter()
            .enumerate()
            .map(|(p, l)| {
                let at = format!("{path}[{p}]");
                if output {
                    self.output(p, l, &at)
                } else {
                    self.input(p, l, &at)
                }
            })
            .collect()
    }

    pub fn input_labels(&self, tuple: &[usize]) -> Vec<String> {
        tuple
            .iter()
            .enumerate()
            .map(|(p, &k)| self.inputs[p][k].clone())
            .collect()
    }

    pub fn output_labels(&self, tuple: &[usize]) -> Vec<String> {
        tuple
            .iter()
            .enumerate()
            .map(|(p, &k)| self.outputs[p][k].clone())
            .collect()
    }
}

/// A parsed game: the game as played (promise folded in) and its labels.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedGame {
    pub alphabets: Alphabets,
    /// Game over all question tuples; questions outside a promise are always won.
    pub game: Game,
    pub promise: Option<PromiseGame>,
    pub metadata: BTreeMap<String, String>,
}

impl GameDocument {
    pub fn parse(&self) -> CliResult<ParsedGame> {
        if self.players == 0 || self.players > MAX_PLAYERS {
            return Err(invalid(
                "players",
                format!(
                    "expected 1 to {MAX_PLAYERS} players, found {}",
                    self.players
                ),
            ));
        }
        for (field, list) in [("inputs", &self.inputs), ("outputs", &self.outputs)] {
            if list.len() != self.players {
                return Err(invalid(
                    field,
                    format!("expected {} alphabets, found {}", self.players, list.len()),
                ));
            }
        }
        let alphabets = Alphabets::new(self.inputs.clone(), self.outputs.clone())?;
        let input_sizes = alphabets.input_sizes();
        let output_sizes = alphabets.output_sizes();
        let base = Game::empty(&input_sizes, &output_sizes).map_err(CliError::Core)?;
        let n_out = base.joint_output_count();
        let mut table = vec![false; base.joint_input_count() * n_out];
        for (k, t) in self.relation.iter().enumerate() {
            let x = alphabets.tuple(&t.inputs, &format!("relation[{k}].inputs"), false)?;
            let a = alphabets.tuple(&t.outputs, &format!("relation[{k}].outputs"), true)?;
            let i = nonlocal_core::index::encode(&input_sizes, &x).map_err(CliError::Core)?;
            let o = nonlocal_core::index::encode(&output_sizes, &a).map_err(CliError::Core)?;
            if std::mem::replace(&mut table[i * n_out + o], true) {
                return Err(invalid(format!("relation[{k}]"), "duplicate winning tuple"));
            }
        }
        let base = Game::from_table(&input_sizes, &output_sizes, table).map_err(CliError::Core)?;
        let promise = match &self.promise {
            None => None,
            Some(list) => {
                let mut mask = vec![false; base.joint_input_count()];
                for (k, t) in list.iter().enumerate() {
                    let path = format!("promise[{k}]");
                    let x = alphabets.tuple(t, &path, false)?;
                    let i =
                        nonlocal_core::index::encode(&input_sizes, &x).map_err(CliError::Core)?;
                    if std::mem::replace(&mut mask[i], true) {
                        return Err(invalid(path, "duplicate question tuple"));
                    }
                }
                Some(PromiseGame::new(base.clone(), mask).map_err(CliError::Core)?)
            }
        };
        let game = match &promise {
            Some(pg) => nonlocal_core::fold_promise(pg),
            None => base,
        };
        Ok(ParsedGame {
            alphabets,
            game,
            promise,
            metadata: self.metadata.clone(),
        })
    }

    /// Document for a game with numbered labels. With a promise, only winning
    /// tuples on promise questions are listed.
    pub fn from_game(g: &Game, promise: Option<&[bool]>) -> Self {
        let alphabets = Alphabets::numbered(g.input_sizes(), g.output_sizes());
        let mut relation = Vec::new();
        for i in 0..g.joint_input_count() {
            if promise.is_some_and(|m| !m[i]) {
                continue;
            }
            let x = nonlocal_core::index::decode(g.input_sizes(), i);
            for (o, &w) in g.row(i).iter().enumerate() {
                if w {
                    let a = nonlocal_core::index::decode(g.output_sizes(), o);
                    relation.push(WinningTuple {
                        inputs: alphabets.input_labels(&x),
                        outputs: alphabets.output_labels(&a),
                    });
                }
            }
        }
        let promise = promise.map(|m| {
            m.iter()
                .enumerate()
                .filter(|&(_, &keep)| keep)
                .map(|(i, _)| {
                    alphabets.input_labels(&nonlocal_core::index::decode(g.input_sizes(), i))
                })
                .collect()
        });
        Self {
            players: g.players(),
            inputs: alphabets.inputs,
            outputs: alphabets.outputs,
            relation,
            promise,
            metadata: BTreeMap::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDocument {
    pub label: String,
    pub matrix: Vec<Vec<Complex>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasurementDocument {
    /// Input label this measurement is used for.
    pub input: String,
    pub elements: Vec<ElementDocument>,
    /// Element label to output label.
    pub answers: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlayerDocument {
    pub measurements: Vec<MeasurementDocument>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategyDocument {
    /// Local dimension per player.
    pub dims: Vec<usize>,
    /// Amplitudes of the shared state, first player most significant.
    pub state: Vec<Complex>,
    pub players: Vec<PlayerDocument>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PovmDocument {
    pub elements: Vec<ElementDocument>,
}

/// Answers per player as input label to output label.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassicalStrategyDocument {
    pub answers: Vec<BTreeMap<String, String>>,
}

fn to_c64(z: Complex) -> C64 {
    C64::new(z[0], z[1])
}

fn from_c64(z: C64) -> Complex {
    [z.re, z.im]
}

fn parse_matrix(rows: &[Vec<Complex>], dim: usize, path: &str) -> CliResult<ComplexMatrix> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(invalid(path, format!("expected a {dim}x{dim} matrix")));
    }
    ComplexMatrix::new(
        dim,
        dim,
        rows.iter().flatten().copied().map(to_c64).collect(),
    )
    .map_err(CliError::Core)
}

fn matrix_rows(m: &ComplexMatrix) -> Vec<Vec<Complex>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| from_c64(m[(r, c)])).collect())
        .collect()
}

fn parse_elements(
    elements: &[ElementDocument],
    dim: usize,
    path: &str,
) -> CliResult<(Vec<String>, Povm)> {
    let mut labels = Vec::with_capacity(elements.len());
    let mut mats = Vec::with_capacity(elements.len());
    for (k, e) in elements.iter().enumerate() {
        if labels.contains(&e.label) {
            return Err(invalid(
                format!("{path}[{k}].label"),
                format!("duplicate label {:?}", e.label),
            ));
        }
        labels.push(e.label.clone());
        mats.push(parse_matrix(
            &e.matrix,
            dim,
            &format!("{path}[{k}].matrix"),
        )?);
    }
    let povm = Povm::checked(mats).map_err(|e| invalid(path, e.to_string()))?;
    Ok((labels, povm))
}

impl PovmDocument {
    pub fn to_povm(&self) -> CliResult<(Vec<String>, Povm)> {
        let dim = self.elements.first().map_or(0, |e| e.matrix.len());
        if dim == 0 {
            return Err(invalid("elements", "no elements"));
        }
        parse_elements(&self.elements, dim, "elements")
    }

    pub fn from_povm(p: &Povm) -> Self {
        Self {
            elements: p
                .elements()
                .iter()
                .enumerate()
                .map(|(k, m)| ElementDocument {
                    label: k.to_string(),
                    matrix: matrix_rows(m),
                })
                .collect(),
        }
    }
}

/// A strategy document resolved against a game's labels.
#[derive(Clone, Debug, PartialEq)]
pub enum LoadedStrategy {
    Two(QuantumStrategy),
    Three(TripartiteStrategy),
}

impl StrategyDocument {
    pub fn to_strategy(&self, alphabets: &Alphabets) -> CliResult<LoadedStrategy> {
        let n = self.players.len();
        if n != alphabets.players() {
            return Err(invalid(
                "players",
                format!("game has {} players, strategy has {n}", alphabets.players()),
            ));
        }
        if self.dims.len() != n {
            return Err(invalid(
                "dims",
                format!("expected {n} dimensions, found {}", self.dims.len()),
            ));
        }
        let players = self
            .players
            .iter()
            .enumerate()
            .map(|(p, doc)| player_strategy(doc, p, self.dims[p], alphabets))
            .collect::<CliResult<Vec<_>>>()?;
        let state = StateVector::new(self.state.iter().copied().map(to_c64).collect())
            .map_err(|e| invalid("state", e.to_string()))?;
        match <[PlayerStrategy; 2]>::try_from(players) {
            Ok([a, b]) => QuantumStrategy::new(state, (self.dims[0], self.dims[1]), a, b)
                .map(LoadedStrategy::Two)
                .map_err(|e| invalid("state", e.to_string())),
            Err(players) => {
                let three: [PlayerStrategy; 3] = players
                    .try_into()
                    .map_err(|_| invalid("players", "strategies need two or three players"))?;
                TripartiteStrategy::new(state, three)
                    .map(LoadedStrategy::Three)
                    .map_err(|e| invalid("state", e.to_string()))
            }
        }
    }

    /// Document for a two-player strategy; element labels are outcome numbers.
    pub fn from_two(s: &QuantumStrategy, alphabets: &Alphabets) -> Self {
        let (da, db) = s.dims();
        let player = |p: usize, ps: &PlayerStrategy| PlayerDocument {
            measurements: ps
                .povms()
                .iter()
                .zip(ps.answers())
                .enumerate()
                .map(|(x, (povm, ans))| MeasurementDocument {
                    input: alphabets.inputs[p][x].clone(),
                    elements: PovmDocument::from_povm(povm).elements,
                    answers: ans
                        .iter()
                        .enumerate()
                        .map(|(k, &a)| (k.to_string(), alphabets.outputs[p][a].clone()))
                        .collect(),
                })
                .collect(),
        };
        Self {
            dims: vec![da, db],
            state: s
                .state()
                .amplitudes()
                .iter()
                .copied()
                .map(from_c64)
                .collect(),
            players: vec![player(0, s.alice()), player(1, s.bob())],
        }
    }
}

fn player_strategy(
    doc: &PlayerDocument,
    p: usize,
    dim: usize,
    alphabets: &Alphabets,
) -> CliResult<PlayerStrategy> {
    let n_inputs = alphabets.inputs[p].len();
    let mut slots: Vec<Option<(Povm, Vec<usize>)>> = vec![None; n_inputs];
    for (m, meas) in doc.measurements.iter().enumerate() {
        let path = format!("players[{p}].measurements[{m}]");
        let x = alphabets.input(p, &meas.input, &format!("{path}.input"))?;
        if slots[x].is_some() {
            return Err(invalid(
                format!("{path}.input"),
                format!("input {:?} measured twice", meas.input),
            ));
        }
        let (labels, povm) = parse_elements(&meas.elements, dim, &format!("{path}.elements"))?;
        if let Some(extra) = meas.answers.keys().find(|k| !labels.contains(k)) {
            return Err(invalid(
                format!("{path}.answers"),
                format!("no element labelled {extra:?}"),
            ));
        }
        let answers = labels
            .iter()
            .map(|l| {
                let out = meas.answers.get(l).ok_or_else(|| {
                    invalid(
                        format!("{path}.answers"),
                        format!("no answer for element {l:?}"),
                    )
                })?;
                alphabets.output(p, out, &format!("{path}.answers.{l}"))
            })
            .collect::<CliResult<Vec<_>>>()?;
        slots[x] = Some((povm, answers));
    }
    let mut povms = Vec::with_capacity(n_inputs);
    let mut answers = Vec::with_capacity(n_inputs);
    for (x, slot) in slots.into_iter().enumerate() {
        let (povm, ans) = slot.ok_or_else(|| {
            invalid(
                format!("players[{p}].measurements"),
                format!("no measurement for input {:?}", alphabets.inputs[p][x]),
            )
        })?;
        povms.push(povm);
        answers.push(ans);
    }
    PlayerStrategy::new(povms, answers).map_err(|e| invalid(format!("players[{p}]"), e.to_string()))
}

impl ClassicalStrategyDocument {
    pub fn from_strategy(s: &DeterministicStrategy, alphabets: &Alphabets) -> Self {
        Self {
            answers: s
                .tables()
                .iter()
                .enumerate()
                .map(|(p, t)| {
                    t.iter()
                        .enumerate()
                        .map(|(x, &a)| {
                            (
                                alphabets.inputs[p][x].clone(),
                                alphabets.outputs[p][a].clone(),
                            )
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_strategy(&self, alphabets: &Alphabets) -> CliResult<DeterministicStrategy> {
        if self.answers.len() != alphabets.players() {
            return Err(invalid(
                "answers",
                format!(
                    "expected {} players, found {}",
                    alphabets.players(),
                    self.answers.len()
                ),
            ));
        }
        let tables = self
            .answers
            .iter()
            .enumerate()
            .map(|(p, map)| {
                let mut table = vec![None; alphabets.inputs[p].len()];
                for (x_label, a_label) in map {
                    let path = format!("answers[{p}].{x_label}");
                    let x = alphabets.input(p, x_label, &path)?;
                    table[x] = Some(alphabets.output(p, a_label, &path)?);
                }
                table
                    .into_iter()
                    .enumerate()
                    .map(|(x, a)| {
                        a.ok_or_else(|| {
                            invalid(
                                format!("answers[{p}]"),
                                format!("no answer for input {:?}", alphabets.inputs[p][x]),
                            )
                        })
                    })
                    .collect::<CliResult<Vec<_>>>()
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(DeterministicStrategy::new(tables))
    }
}
