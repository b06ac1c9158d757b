//! Poset pinball.
//!
//! Balls are released one at a time from the initial elements, in the given
//! order, and roll down cover edges until no open edge remains. Every wall in
//! this engine closes all edges into a single vertex, so walls are stored per
//! target vertex together with the reason they were placed.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::{ElementSubset, GradedPoset, PosetError, PosetJson};

/// Default enumeration budget, in explored states.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Basic,
    UpperTriangular,
    Betti,
    UpperTriangularBetti,
}

impl Variant {
    pub fn upper_triangular(self) -> bool {
        matches!(self, Variant::UpperTriangular | Variant::UpperTriangularBetti)
    }

    pub fn betti(self) -> bool {
        matches!(self, Variant::Betti | Variant::UpperTriangularBetti)
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Basic => "basic",
            Variant::UpperTriangular => "upper_triangular",
            Variant::Betti => "betti",
            Variant::UpperTriangularBetti => "upper_triangular_betti",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = PinballError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "basic" => Ok(Variant::Basic),
            "upper_triangular" | "ut" => Ok(Variant::UpperTriangular),
            "betti" => Ok(Variant::Betti),
            "upper_triangular_betti" | "ut_betti" => Ok(Variant::UpperTriangularBetti),
            _ => Err(PinballError::UnknownVariant(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WallReason {
    Occupied,
    UpperTriangular,
    BettiRankFull,
}

impl fmt::Display for WallReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WallReason::Occupied => "occupied",
            WallReason::UpperTriangular => "upper-triangular",
            WallReason::BettiRankFull => "betti-rank-full",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IllegalReason {
    NotASlide,
    Wall(WallReason),
}

impl fmt::Display for IllegalReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IllegalReason::NotASlide => f.write_str("not-a-slide"),
            IllegalReason::Wall(w) => w.fmt(f),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PinballError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("unknown variant `{0}`")]
    UnknownVariant(String),
    #[error("initial order lists `{later}` after `{earlier}` although `{later}` < `{earlier}`")]
    InvalidOrder { earlier: String, later: String },
    #[error("Betti variants need target Betti numbers")]
    MissingTargets,
    #[error("no ball is in play")]
    NoBallInPlay,
    #[error("illegal move {from} -> {to}: {reason}")]
    IllegalMove {
        from: String,
        to: String,
        reason: IllegalReason,
    },
    #[error("the ball at `{0}` can still roll")]
    MovesRemain(String),
    #[error("slot `{0}` is already occupied when its ball is released")]
    SlotOccupiedAtRelease(String),
    #[error("script move {index} is illegal: {source}")]
    ScriptIllegalMove {
        index: usize,
        source: Box<PinballError>,
    },
    #[error("script ran out of moves while the ball at `{0}` can still roll")]
    ScriptExhausted(String),
    #[error("enumeration budget of {budget} states exhausted after {} outcomes", partial.outcomes.len())]
    BudgetExhausted {
        budget: u64,
        partial: Box<Enumeration>,
    },
    #[error("`{0}` is not reachable from the current ball")]
    Unreachable(String),
    #[error("transcript does not replay: {0}")]
    Transcript(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameConfig {
    pub board: Arc<GradedPoset>,
    pub initial: Vec<usize>,
    pub variant: Variant,
    pub targets: Option<Vec<u32>>,
}

/// Wire form of a [`GameConfig`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub board: PosetJson,
    pub initial: Vec<String>,
    pub variant: Variant,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<u32>>,
}

impl GameConfig {
    pub fn new(
        board: Arc<GradedPoset>,
        initial: Vec<usize>,
        variant: Variant,
        targets: Option<Vec<u32>>,
    ) -> Result<Self, PinballError> {
        for (p, &a) in initial.iter().enumerate() {
            if let Some(&b) = initial[..p].iter().find(|&&b| a != b && board.leq(a, b)) {
                return Err(PinballError::InvalidOrder {
                    earlier: board.id(b).to_string(),
                    later: board.id(a).to_string(),
                });
            }
        }
        if variant.betti() && targets.is_none() {
            return Err(PinballError::MissingTargets);
        }
        Ok(Self {
            board,
            initial,
            variant,
            targets,
        })
    }

    /// Initial elements in the default order (rank, then id).
    pub fn with_default_order(
        board: Arc<GradedPoset>,
        initial: &ElementSubset,
        variant: Variant,
        targets: Option<Vec<u32>>,
    ) -> Result<Self, PinballError> {
        let order = board.linear_extension(initial);
        Self::new(board, order, variant, targets)
    }

    pub fn from_ids<S: AsRef<str>>(
        board: Arc<GradedPoset>,
        initial: &[S],
        variant: Variant,
        targets: Option<Vec<u32>>,
    ) -> Result<Self, PinballError> {
        let initial = initial
            .iter()
            .map(|s| board.index_of(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(board, initial, variant, targets)
    }

    pub fn to_json(&self) -> ConfigJson {
        ConfigJson {
            board: self.board.to_json(),
            initial: self.initial.iter().map(|&i| self.board.id(i).to_string()).collect(),
            variant: self.variant,
            targets: self.targets.clone(),
        }
    }

    pub fn from_json(json: &ConfigJson) -> Result<Self, PinballError> {
        let board = Arc::new(GradedPoset::from_json(&json.board)?);
        Self::from_ids(board, &json.initial, json.variant, json.targets.clone())
    }

    /// Whether a rank histogram meets the targets, zero-padded on both sides.
    pub fn histogram_matches(&self, hist: &[u32]) -> Option<bool> {
        let targets = self.targets.as_ref()?;
        let n = hist.len().max(targets.len());
        Some((0..n).all(|j| hist.get(j).copied().unwrap_or(0) == targets.get(j).copied().unwrap_or(0)))
    }
}

/// One slide of one ball, with `ball` the index into the initial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub ball: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Outcome {
    /// Resting slot of each ball, in initial order.
    pub rolldown: Vec<usize>,
    pub success: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Enumeration {
    pub outcomes: Vec<Outcome>,
    pub nodes: u64,
}

impl Enumeration {
    pub fn successful(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| o.success == Some(true))
    }

    pub fn contains(&self, rolldown: &[usize]) -> bool {
        self.outcomes.iter().any(|o| o.rolldown == rolldown)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PinballState {
    config: Arc<GameConfig>,
    current: usize,
    ball: Option<usize>,
    occupied: Vec<bool>,
    walls: Vec<Option<WallReason>>,
    rolldown: Vec<Option<usize>>,
    tally: Vec<u32>,
    moves: Vec<Move>,
}

impl PinballState {
    pub fn new(config: GameConfig) -> Result<Self, PinballError> {
        Self::from_shared(Arc::new(config))
    }

    pub fn from_shared(config: Arc<GameConfig>) -> Result<Self, PinballError> {
        let n = config.board.len();
        let mut state = Self {
            current: 0,
            ball: None,
            occupied: vec![false; n],
            walls: vec![None; n],
            rolldown: vec![None; config.initial.len()],
            tally: vec![0; config.board.max_rank() as usize + 1],
            moves: Vec::new(),
            config,
        };
        state.release()?;
        Ok(state)
    }

    fn release(&mut self) -> Result<(), PinballError> {
        self.ball = None;
        if let Some(&j) = self.config.initial.get(self.current) {
            if self.occupied[j] {
                return Err(PinballError::SlotOccupiedAtRelease(self.board().id(j).to_string()));
            }
            self.ball = Some(j);
        }
        Ok(())
    }

    pub fn config(&self) -> &GameConfig {
        &self.config
    }

    pub fn board(&self) -> &GradedPoset {
        &self.config.board
    }

    /// Position of the ball in play.
    pub fn ball(&self) -> Option<usize> {
        self.ball
    }

    /// Index into the initial order of the ball in play.
    pub fn current_index(&self) -> usize {
        self.current
    }

    pub fn is_finished(&self) -> bool {
        self.current >= self.config.initial.len()
    }

    pub fn occupied(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.occupied.len()).filter(|&i| self.occupied[i])
    }

    pub fn wall_into(&self, v: usize) -> Option<WallReason> {
        self.walls[v]
    }

    /// Every walled edge `(upper, lower)` with its reason.
    pub fn walls(&self) -> Vec<(usize, usize, WallReason)> {
        let mut out = Vec::new();
        for (v, w) in self.walls.iter().enumerate() {
            if let Some(r) = w {
                for &u in self.board().upper_covers(v) {
                    out.push((u, v, *r));
                }
            }
        }
        out
    }

    pub fn rolldown(&self) -> &[Option<usize>] {
        &self.rolldown
    }

    pub fn tally(&self) -> &[u32] {
        &self.tally
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn finalized(&self) -> usize {
        self.rolldown.iter().flatten().count()
    }

    fn open_lower_covers(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.board()
            .lower_covers(v)
            .iter()
            .copied()
            .filter(|&l| self.walls[l].is_none())
    }

    pub fn legal_moves(&self) -> Result<Vec<(usize, usize)>, PinballError> {
        let b = self.ball.ok_or(PinballError::NoBallInPlay)?;
        Ok(self.open_lower_covers(b).map(|l| (b, l)).collect())
    }

    pub fn check_move(&self, edge: (usize, usize)) -> Result<(), PinballError> {
        let b = self.ball.ok_or(PinballError::NoBallInPlay)?;
        let illegal = |reason| PinballError::IllegalMove {
            from: self.board().id(edge.0).to_string(),
            to: self.board().id(edge.1).to_string(),
            reason,
        };
        if edge.0 != b || !self.board().is_cover(edge.0, edge.1) {
            return Err(illegal(IllegalReason::NotASlide));
        }
        if let Some(w) = self.walls[edge.1] {
            return Err(illegal(IllegalReason::Wall(w)));
        }
        Ok(())
    }

    pub fn apply_move(&mut self, edge: (usize, usize)) -> Result<(), PinballError> {
        self.check_move(edge)?;
        self.moves.push(Move {
            ball: self.current,
            from: edge.0,
            to: edge.1,
        });
        self.ball = Some(edge.1);
        Ok(())
    }

    fn wall(&mut self, v: usize, reason: WallReason) {
        if self.walls[v].is_none() {
            self.walls[v] = Some(reason);
        }
    }

    /// Rests the ball in play, places the variant's walls and releases the
    /// next ball. Returns the resting slot.
    pub fn finalize_current(&mut self) -> Result<usize, PinballError> {
        let v = self.ball.ok_or(PinballError::NoBallInPlay)?;
        if self.open_lower_covers(v).next().is_some() {
            return Err(PinballError::MovesRemain(self.board().id(v).to_string()));
        }
        self.settle(v)?;
        Ok(v)
    }

    fn settle(&mut self, v: usize) -> Result<(), PinballError> {
        let j = self.config.initial[self.current];
        let config = Arc::clone(&self.config);
        let board = &config.board;
        self.rolldown[self.current] = Some(v);
        self.occupied[v] = true;
        self.tally[board.rank(v) as usize] += 1;
        self.wall(v, WallReason::Occupied);
        if config.variant.upper_triangular() {
            for l in board.principal_ideal(j).iter() {
                self.wall(l, WallReason::UpperTriangular);
            }
        }
        if config.variant.betti() {
            let targets = config.targets.as_deref().unwrap_or(&[]);
            for (r, &b) in targets.iter().enumerate() {
                if self.tally.get(r).is_some_and(|&c| c >= b) {
                    for x in 0..board.len() {
                        if board.rank(x) as usize == r {
                            self.wall(x, WallReason::BettiRankFull);
                        }
                    }
                }
            }
        }
        self.current += 1;
        self.release()
    }

    /// Slots where the ball in play can come to rest.
    pub fn resting_slots(&self) -> Result<Vec<usize>, PinballError> {
        let b = self.ball.ok_or(PinballError::NoBallInPlay)?;
        let mut seen = BTreeSet::from([b]);
        let mut queue = VecDeque::from([b]);
        let mut out = Vec::new();
        while let Some(x) = queue.pop_front() {
            let mut stuck = true;
            for l in self.open_lower_covers(x) {
                stuck = false;
                if seen.insert(l) {
                    queue.push_back(l);
                }
            }
            if stuck {
                out.push(x);
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Shortest open path from the ball in play down to `target`.
    pub fn path_to(&self, target: usize) -> Result<Vec<(usize, usize)>, PinballError> {
        let b = self.ball.ok_or(PinballError::NoBallInPlay)?;
        let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
        let mut queue = VecDeque::from([b]);
        let mut seen = BTreeSet::from([b]);
        while let Some(x) = queue.pop_front() {
            if x == target {
                let mut path = Vec::new();
                let mut cur = x;
                while let Some(&p) = parent.get(&cur) {
                    path.push((p, cur));
                    cur = p;
                }
                path.reverse();
                return Ok(path);
            }
            for l in self.open_lower_covers(x) {
                if seen.insert(l) {
                    parent.insert(l, x);
                    queue.push_back(l);
                }
            }
        }
        Err(PinballError::Unreachable(self.board().id(target).to_string()))
    }

    pub fn rank_histogram(&self) -> Vec<u32> {
        self.tally.clone()
    }

    /// `Some` once the game is over and targets exist.
    pub fn success(&self) -> Option<bool> {
        if !self.is_finished() {
            return None;
        }
        self.config.histogram_matches(&self.tally)
    }

    pub fn outcome(&self) -> Option<Outcome> {
        if !self.is_finished() {
            return None;
        }
        Some(Outcome {
            rolldown: self.rolldown.iter().map(|r| r.expect("finished game")).collect(),
            success: self.success(),
        })
    }

    pub fn transcript(&self) -> Transcript {
        let board = self.board();
        let id = |i: usize| board.id(i).to_string();
        Transcript {
            config: self.config.to_json(),
            moves: self
                .moves
                .iter()
                .map(|m| MoveJson {
                    ball: id(self.config.initial[m.ball]),
                    edge: (id(m.from), id(m.to)),
                })
                .collect(),
            finalized: self.finalized(),
            rolldown: self
                .config
                .initial
                .iter()
                .zip(&self.rolldown)
                .filter_map(|(&j, r)| r.map(|r| (id(j), id(r))))
                .collect(),
            success: self.success(),
        }
    }

    pub fn snapshot(&self) -> Snapshot {
        let board = self.board();
        let id = |i: usize| board.id(i).to_string();
        let mut layout: Vec<LayoutJson> = Vec::with_capacity(board.len());
        let mut by_rank: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for i in 0..board.len() {
            by_rank.entry(board.rank(i)).or_default().push(i);
        }
        for (row, mut members) in by_rank {
            members.sort_by(|&a, &b| board.id(a).cmp(board.id(b)));
            for (slot, i) in members.into_iter().enumerate() {
                layout.push(LayoutJson { id: id(i), row, slot });
            }
        }
        Snapshot {
            config: self.config.to_json(),
            current: self.config.initial.get(self.current).map(|&j| id(j)),
            ball: self.ball.map(id),
            occupied: self.occupied().map(id).collect(),
            walls: self
                .walls()
                .into_iter()
                .map(|(u, l, reason)| WallJson {
                    edge: (id(u), id(l)),
                    reason,
                })
                .collect(),
            rolldown: self.transcript().rolldown,
            tally: self.tally.clone(),
            legal_moves: self
                .legal_moves()
                .unwrap_or_default()
                .into_iter()
                .map(|(u, l)| (id(u), id(l)))
                .collect(),
            finished: self.is_finished(),
            success: self.success(),
            layout,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveJson {
    pub ball: String,
    pub edge: (String, String),
}

/// A replayable record of a game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub config: ConfigJson,
    pub moves: Vec<MoveJson>,
    pub finalized: usize,
    pub rolldown: BTreeMap<String, String>,
    pub success: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallJson {
    pub edge: (String, String),
    pub reason: WallReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutJson {
    pub id: String,
    pub row: u32,
    pub slot: usize,
}

/// Full observable state of a game, as served to clients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snapshot {
    pub config: ConfigJson,
    pub current: Option<String>,
    pub ball: Option<String>,
    pub occupied: Vec<String>,
    pub walls: Vec<WallJson>,
    pub rolldown: BTreeMap<String, String>,
    pub tally: Vec<u32>,
    pub legal_moves: Vec<(String, String)>,
    pub finished: bool,
    pub success: Option<bool>,
    pub layout: Vec<LayoutJson>,
}

/// Rebuilds a game from a transcript and checks the recorded rolldowns.
pub fn replay(t: &Transcript) -> Result<PinballState, PinballError> {
    let config = GameConfig::from_json(&t.config)?;
    let mut state = PinballState::new(config)?;
    for (k, m) in t.moves.iter().enumerate() {
        let board = Arc::clone(&state.config.board);
        let ball = board.index_of(&m.ball)?;
        let edge = (board.index_of(&m.edge.0)?, board.index_of(&m.edge.1)?);
        while state.ball.is_some() && state.config.initial.get(state.current) != Some(&ball) {
            state.finalize_current()?;
        }
        state.apply_move(edge).map_err(|e| PinballError::ScriptIllegalMove {
            index: k,
            source: Box::new(e),
        })?;
    }
    while state.finalized() < t.finalized {
        state.finalize_current()?;
    }
    let got = state.transcript();
    if got.rolldown != t.rolldown || got.success != t.success {
        return Err(PinballError::Transcript("recorded rolldowns differ from replay".into()));
    }
    Ok(state)
}

/// Chooses a slide whenever the ball in play can still roll.
pub trait Strategy {
    fn choose(&mut self, state: &PinballState, moves: &[(usize, usize)]) -> Option<(usize, usize)>;
}

/// Always takes the first legal slide.
#[derive(Debug, Default, Clone, Copy)]
pub struct FirstMove;

impl Strategy for FirstMove {
    fn choose(&mut self, _: &PinballState, moves: &[(usize, usize)]) -> Option<(usize, usize)> {
        moves.first().copied()
    }
}

/// Plays a fixed list of slides in order.
#[derive(Debug, Clone)]
pub struct Script {
    edges: VecDeque<(usize, usize)>,
}

impl Script {
    pub fn new(edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Self {
            edges: edges.into_iter().collect(),
        }
    }
}

impl Strategy for Script {
    fn choose(&mut self, _: &PinballState, _: &[(usize, usize)]) -> Option<(usize, usize)> {
        self.edges.pop_front()
    }
}

/// Steers each ball along a shortest open path to a prescribed slot.
#[derive(Debug, Clone)]
pub struct Guided {
    targets: Vec<usize>,
}

impl Guided {
    pub fn new(targets: Vec<usize>) -> Self {
        Self { targets }
    }
}

impl Strategy for Guided {
    fn choose(&mut self, state: &PinballState, moves: &[(usize, usize)]) -> Option<(usize, usize)> {
        let target = *self.targets.get(state.current_index())?;
        match state.path_to(target) {
            Ok(path) if !path.is_empty() => Some(path[0]),
            _ => moves.first().copied(),
        }
    }
}

/// Plays a whole game; the ball rests exactly when it has no legal slide.
pub fn play(config: GameConfig, strategy: &mut dyn Strategy) -> Result<PinballState, PinballError> {
    let mut state = PinballState::new(config)?;
    let mut index = 0;
    while !state.is_finished() {
        let moves = state.legal_moves()?;
        if moves.is_empty() {
            state.finalize_current()?;
            continue;
        }
        let ball = state.board().id(state.ball.expect("ball in play")).to_string();
        let edge = strategy
            .choose(&state, &moves)
            .ok_or(PinballError::ScriptExhausted(ball))?;
        state
            .apply_move(edge)
            .map_err(|e| PinballError::ScriptIllegalMove {
                index,
                source: Box::new(e),
            })?;
        index += 1;
    }
    Ok(state)
}

/// Plays towards the given rolldown, failing if some ball cannot rest at its
/// prescribed slot.
pub fn play_to_rolldown(config: GameConfig, rolldown: &[usize]) -> Result<PinballState, PinballError> {
    let state = play(config, &mut Guided::new(rolldown.to_vec()))?;
    let got: Vec<usize> = state.rolldown.iter().map(|r| r.expect("finished")).collect();
    if got != rolldown {
        let k = got.iter().zip(rolldown).position(|(a, b)| a != b).unwrap_or(0);
        return Err(PinballError::Unreachable(state.board().id(rolldown[k]).to_string()));
    }
    Ok(state)
}

struct Search<'a> {
    budget: u64,
    nodes: &'a AtomicU64,
    visited: HashSet<Vec<usize>>,
    outcomes: BTreeSet<Outcome>,
    exhausted: bool,
}

impl Search<'_> {
    fn run(&mut self, state: PinballState) {
        if self.exhausted {
            return;
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.exhausted = true;
            return;
        }
        if let Some(o) = state.outcome() {
            self.outcomes.insert(o);
            return;
        }
        let prefix: Vec<usize> = state.rolldown[..state.current].iter().map(|r| r.expect("settled")).collect();
        if !self.visited.insert(prefix) {
            return;
        }
        for v in state.resting_slots().unwrap_or_default() {
            let mut next = state.clone();
            next.ball = Some(v);
            if next.settle(v).is_ok() {
                self.run(next);
            }
        }
    }
}

fn finish(outcomes: BTreeSet<Outcome>, nodes: u64, budget: u64, exhausted: bool) -> Result<Enumeration, PinballError> {
    let e = Enumeration {
        outcomes: outcomes.into_iter().collect(),
        nodes,
    };
    if exhausted {
        Err(PinballError::BudgetExhausted {
            budget,
            partial: Box::new(e),
        })
    } else {
        Ok(e)
    }
}

/// Every distinct outcome reachable by some play. Paths are not recorded.
pub fn enumerate_outcomes(config: GameConfig, budget: u64) -> Result<Enumeration, PinballError> {
    let nodes = AtomicU64::new(0);
    let mut search = Search {
        budget,
        nodes: &nodes,
        visited: HashSet::new(),
        outcomes: BTreeSet::new(),
        exhausted: false,
    };
    search.run(PinballState::new(config)?);
    let (outcomes, exhausted) = (search.outcomes, search.exhausted);
    finish(outcomes, nodes.into_inner(), budget, exhausted)
}

/// As [`enumerate_outcomes`], splitting the game tree over `threads` workers.
pub fn enumerate_outcomes_parallel(
    config: GameConfig,
    budget: u64,
    threads: usize,
) -> Result<Enumeration, PinballError> {
    let threads = threads.max(1);
    let root = PinballState::new(config)?;
    let nodes = AtomicU64::new(0);
    let mut outcomes = BTreeSet::new();
    // Breadth-first until the frontier is wide enough to share out.
    let mut frontier = vec![root];
    while frontier.len() < 4 * threads && frontier.iter().any(|s| !s.is_finished()) {
        let mut next = Vec::new();
        for s in frontier {
            nodes.fetch_add(1, Ordering::Relaxed);
            if let Some(o) = s.outcome() {
                outcomes.insert(o);
                continue;
            }
            for v in s.resting_slots()? {
                let mut c = s.clone();
                c.ball = Some(v);
                if c.settle(v).is_ok() {
                    next.push(c);
                }
            }
        }
        next.dedup_by(|a, b| a.rolldown == b.rolldown);
        frontier = next;
    }
    let merged = Mutex::new((outcomes, false));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(|| {
        frontier.into_par_iter().for_each(|s| {
            let mut search = Search {
                budget,
                nodes: &nodes,
                visited: HashSet::new(),
                outcomes: BTreeSet::new(),
                exhausted: false,
            };
            search.run(s);
            let mut guard = merged.lock().expect("poisoned");
            guard.0.extend(search.outcomes);
            guard.1 |= search.exhausted;
        });
    });
    let (outcomes, exhausted) = merged.into_inner().expect("poisoned");
    finish(outcomes, nodes.into_inner(), budget, exhausted)
}

/// Budget from `PINBALL_NODE_BUDGET`, or the default.
pub fn node_budget_from_env() -> u64 {
    std::env::var("PINBALL_NODE_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_NODE_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `a < b < d`, `a < c < d`, plus `x` covering only `b`.
    fn diamond() -> Arc<GradedPoset> {
        Arc::new(
            GradedPoset::new(
                [("a", 0), ("b", 1), ("c", 1), ("d", 2), ("x", 2)],
                [("b", "a"), ("c", "a"), ("d", "b"), ("d", "c"), ("x", "b")],
            )
            .unwrap(),
        )
    }

    fn cfg(initial: &[&str], variant: Variant, targets: Option<Vec<u32>>) -> GameConfig {
        GameConfig::from_ids(diamond(), initial, variant, targets).unwrap()
    }

    #[test]
    fn single_minimum() {
        let mut s = PinballState::new(cfg(&["a"], Variant::Basic, None)).unwrap();
        assert!(s.legal_moves().unwrap().is_empty());
        assert_eq!(s.finalize_current().unwrap(), 0);
        assert!(s.is_finished());
        assert_eq!(s.legal_moves(), Err(PinballError::NoBallInPlay));
        assert_eq!(s.outcome().unwrap().rolldown, vec![0]);
    }

    #[test]
    fn order_and_targets_validated() {
        assert!(matches!(
            GameConfig::from_ids(diamond(), &["b", "a"], Variant::Basic, None),
            Err(PinballError::InvalidOrder { .. })
        ));
        assert_eq!(
            GameConfig::from_ids(diamond(), &["a"], Variant::Betti, None),
            Err(PinballError::MissingTargets)
        );
    }

    #[test]
    fn basic_walls_block_occupied_slots() {
        let mut s = PinballState::new(cfg(&["a", "b"], Variant::Basic, None)).unwrap();
        s.finalize_current().unwrap();
        let b = s.ball().unwrap();
        assert!(s.legal_moves().unwrap().is_empty());
        let err = s.apply_move((b, 0)).unwrap_err();
        assert!(matches!(
            err,
            PinballError::IllegalMove {
                reason: IllegalReason::Wall(WallReason::Occupied),
                ..
            }
        ));
        assert!(matches!(
            s.apply_move((0, b)),
            Err(PinballError::IllegalMove {
                reason: IllegalReason::NotASlide,
                ..
            })
        ));
    }

    #[test]
    fn moves_remain_blocks_finalize() {
        let mut s = PinballState::new(cfg(&["d"], Variant::Basic, None)).unwrap();
        assert!(matches!(s.finalize_current(), Err(PinballError::MovesRemain(_))));
        s.apply_move((3, 1)).unwrap();
        s.apply_move((1, 0)).unwrap();
        s.finalize_current().unwrap();
        assert_eq!(s.rolldown(), &[Some(0)]);
    }

    #[test]
    fn upper_triangular_walls_whole_ideal() {
        let mut s = PinballState::new(cfg(&["a", "b", "c"], Variant::UpperTriangular, None)).unwrap();
        s.finalize_current().unwrap();
        s.finalize_current().unwrap();
        // After b rests, b and everything below it is walled.
        assert_eq!(s.wall_into(1), Some(WallReason::Occupied));
        assert_eq!(s.wall_into(0), Some(WallReason::Occupied));
        let e = enumerate_outcomes(cfg(&["a", "b", "d"], Variant::UpperTriangular, None), 1000).unwrap();
        assert_eq!(e.outcomes.len(), 1);
        assert_eq!(e.outcomes[0].rolldown, vec![0, 1, 2]);
    }

    #[test]
    fn betti_rank_full_walls() {
        let mut s = PinballState::new(cfg(&["a", "b", "d"], Variant::Betti, Some(vec![1, 1, 1]))).unwrap();
        s.finalize_current().unwrap();
        s.finalize_current().unwrap();
        assert_eq!(s.wall_into(2), Some(WallReason::BettiRankFull));
        assert!(s.legal_moves().unwrap().is_empty());
        s.finalize_current().unwrap();
        assert_eq!(s.success(), Some(true));
    }

    #[test]
    fn enumeration_and_budget() {
        let e = enumerate_outcomes(cfg(&["a", "d", "x"], Variant::Basic, None), 1000).unwrap();
        let rolls: Vec<Vec<usize>> = e.outcomes.iter().map(|o| o.rolldown.clone()).collect();
        assert_eq!(rolls, vec![vec![0, 1, 4], vec![0, 2, 1]]);
        let p = enumerate_outcomes_parallel(cfg(&["a", "d", "x"], Variant::Basic, None), 1000, 3).unwrap();
        assert_eq!(p.outcomes, e.outcomes);
        match enumerate_outcomes(cfg(&["a", "d", "x"], Variant::Basic, None), 2) {
            Err(PinballError::BudgetExhausted { partial, .. }) => assert!(partial.outcomes.len() < 2),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn transcript_round_trip() {
        let s = play(cfg(&["a", "d", "x"], Variant::Basic, None), &mut FirstMove).unwrap();
        let t = s.transcript();
        let json = serde_json::to_string(&t).unwrap();
        let back: Transcript = serde_json::from_str(&json).unwrap();
        let r = replay(&back).unwrap();
        assert_eq!(r, s);
        assert_eq!(serde_json::to_string(&r.transcript()).unwrap(), json);
    }

    #[test]
    fn guided_play_and_unreachable() {
        let c = cfg(&["a", "d", "x"], Variant::Basic, None);
        let s = play_to_rolldown(c.clone(), &[0, 2, 1]).unwrap();
        assert_eq!(s.outcome().unwrap().rolldown, vec![0, 2, 1]);
        assert!(play_to_rolldown(c, &[0, 3, 1]).is_err());
    }

    #[test]
    fn script_errors() {
        let c = cfg(&["a", "d"], Variant::Basic, None);
        assert!(matches!(play(c.clone(), &mut Script::new([])), Err(PinballError::ScriptExhausted(_))));
        assert!(matches!(
            play(c, &mut Script::new([(3, 0)])),
            Err(PinballError::ScriptIllegalMove { index: 0, .. })
        ));
    }

    #[test]
    fn occupied_at_release() {
        let c = GameConfig::new(diamond(), vec![0, 0], Variant::Basic, None).unwrap();
        let mut s = PinballState::new(c).unwrap();
        assert!(matches!(s.finalize_current(), Err(PinballError::SlotOccupiedAtRelease(_))));
    }

    #[test]
    fn variant_names() {
        for v in [Variant::Basic, Variant::UpperTriangular, Variant::Betti, Variant::UpperTriangularBetti] {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
        }
        assert_eq!("ut-betti".parse::<Variant>().unwrap(), Variant::UpperTriangularBetti);
        assert!("nope".parse::<Variant>().is_err());
    }
}
