//! In-memory pinball sessions behind a transport-agnostic JSON request
//! handler. An HTTP front end only has to forward method, path and body.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Deserialize;
use serde_json::{json, Value};

use crate::coxeter::{LieType, WeylGroup};
use crate::hessenberg::{
    hessenberg_fixed_points, springer_fixed_points, HessenbergSpace, Partition,
};
use crate::pinball::{ConfigJson, GameConfig, IllegalReason, PinballError, PinballState, Transcript, Variant};
use crate::poset::ElementSubset;
use crate::repro::{figure, Board, ReproTarget};

/// A JSON reply with its HTTP status.
#[derive(Debug, Clone, PartialEq)]
pub struct Reply {
    pub status: u16,
    pub body: Value,
}

impl Reply {
    fn ok(body: Value) -> Self {
        Self { status: 200, body }
    }

    fn error(status: u16, code: &str, reason: &str, message: impl Into<String>) -> Self {
        Self {
            status,
            body: json!({"error": {"code": code, "reason": reason, "message": message.into()}}),
        }
    }
}

fn now_millis() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

#[derive(Debug, Clone)]
pub struct GameSession {
    pub id: String,
    pub state: PinballState,
    pub created: u64,
    pub updated: u64,
    pub auto_finalize: bool,
}

impl GameSession {
    fn settle_if_stuck(&mut self) -> Result<(), PinballError> {
        if !self.auto_finalize {
            return Ok(());
        }
        while !self.state.is_finished() && self.state.legal_moves()?.is_empty() {
            self.state.finalize_current()?;
        }
        Ok(())
    }

    fn view(&self) -> Value {
        json!({
            "id": self.id,
            "created": self.created,
            "updated": self.updated,
            "auto_finalize": self.auto_finalize,
            "snapshot": self.state.snapshot(),
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BuiltinRequest {
    builtin: String,
    #[serde(default)]
    variant: Option<Variant>,
    #[serde(default)]
    targets: Option<Vec<u32>>,
    #[serde(default)]
    n: Option<usize>,
    #[serde(default)]
    lambda: Option<Vec<usize>>,
    #[serde(default, rename = "type")]
    lie_type: Option<String>,
    #[serde(default)]
    rank: Option<usize>,
    #[serde(default)]
    h: Option<Vec<usize>>,
    #[serde(default)]
    mh: Option<String>,
    #[serde(default)]
    auto_finalize: bool,
}

#[derive(Debug, Deserialize)]
struct InlineRequest {
    #[serde(flatten)]
    config: ConfigJson,
    #[serde(default)]
    auto_finalize: bool,
}

/// Builds a game from a create request: a builtin name or an inline config.
pub fn config_from_request(body: &Value) -> Result<(GameConfig, bool), String> {
    if body.get("builtin").is_some() {
        let req: BuiltinRequest = serde_json::from_value(body.clone()).map_err(|e| e.to_string())?;
        let config = builtin_config(&req)?;
        return Ok((config, req.auto_finalize));
    }
    let req: InlineRequest = serde_json::from_value(body.clone()).map_err(|e| e.to_string())?;
    let config = GameConfig::from_json(&req.config).map_err(|e| e.to_string())?;
    Ok((config, req.auto_finalize))
}

fn builtin_config(req: &BuiltinRequest) -> Result<GameConfig, String> {
    let err = |e: &dyn std::fmt::Display| e.to_string();
    if let Ok(target) = req.builtin.parse::<ReproTarget>() {
        let board = Board::s4().map_err(|e| err(&e))?;
        let fig = figure(target);
        let variant = req.variant.unwrap_or(fig.variant);
        let targets = req.targets.clone().or(fig.targets.clone());
        let initial = fig.initial_indices(&board).map_err(|e| err(&e))?;
        return GameConfig::new(board.poset, initial, variant, targets).map_err(|e| err(&e));
    }
    let (g, initial) = match req.builtin.as_str() {
        "springer" => {
            let n = req.n.ok_or("springer needs `n`")?;
            if n < 2 {
                return Err("springer needs n >= 2".into());
            }
            let g = WeylGroup::new(LieType::A, n - 1).map_err(|e| err(&e))?;
            let lambda = req.lambda.clone().ok_or("springer needs `lambda`")?;
            let lambda = Partition::new(lambda, n).map_err(|e| err(&e))?;
            let fixed = springer_fixed_points(&g, &lambda).map_err(|e| err(&e))?;
            (g, fixed)
        }
        "peterson" | "hessenberg" => {
            let lie: LieType = req.lie_type.as_deref().unwrap_or("A").parse().map_err(|e| err(&e))?;
            let rank = req.rank.ok_or("missing `rank`")?;
            let g = WeylGroup::new(lie, rank).map_err(|e| err(&e))?;
            let h = if req.builtin == "peterson" {
                HessenbergSpace::peterson(&g)
            } else if let Some(h) = &req.h {
                HessenbergSpace::from_hessenberg_function(&g, h).map_err(|e| err(&e))?
            } else if let Some(mh) = &req.mh {
                HessenbergSpace::parse(&g, mh).map_err(|e| err(&e))?
            } else {
                return Err("hessenberg needs `h` or `mh`".into());
            };
            let fixed = hessenberg_fixed_points(&g, &h);
            (g, fixed)
        }
        other => return Err(format!("unknown builtin `{other}`")),
    };
    let board = Arc::new(g.to_poset(None).map_err(|e| err(&e))?);
    let variant = req.variant.unwrap_or(Variant::Basic);
    GameConfig::with_default_order(board, &ElementSubset::from_indices(initial), variant, req.targets.clone())
        .map_err(|e| err(&e))
}

/// Sessions keyed by id. Each session has its own lock, so requests to one
/// game are serialized while different games proceed independently.
#[derive(Debug, Default)]
pub struct GameStore {
    sessions: Mutex<HashMap<String, Arc<Mutex<GameSession>>>>,
    counter: AtomicU64,
}

impl GameStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.sessions.lock().expect("poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn session(&self, id: &str) -> Option<Arc<Mutex<GameSession>>> {
        self.sessions.lock().expect("poisoned").get(id).cloned()
    }

    /// Transcripts of every session, keyed by id.
    pub fn export(&self) -> HashMap<String, Transcript> {
        let sessions = self.sessions.lock().expect("poisoned");
        sessions
            .iter()
            .map(|(id, s)| (id.clone(), s.lock().expect("poisoned").state.transcript()))
            .collect()
    }

    pub fn create(&self, body: &Value) -> Reply {
        let (config, auto_finalize) = match config_from_request(body) {
            Ok(c) => c,
            Err(e) => return Reply::error(400, "invalid-config", "invalid-config", e),
        };
        let state = match PinballState::new(config) {
            Ok(s) => s,
            Err(e) => return Reply::error(400, "invalid-config", "invalid-config", e.to_string()),
        };
        let n = self.counter.fetch_add(1, Ordering::Relaxed) + 1;
        let id = format!("g{n}-{:x}", now_millis() & 0xffff_ffff);
        let t = now_millis();
        let mut session = GameSession {
            id: id.clone(),
            state,
            created: t,
            updated: t,
            auto_finalize,
        };
        if let Err(e) = session.settle_if_stuck() {
            return Reply::error(400, "invalid-config", "invalid-config", e.to_string());
        }
        let view = session.view();
        self.sessions
            .lock()
            .expect("poisoned")
            .insert(id, Arc::new(Mutex::new(session)));
        Reply { status: 201, body: view }
    }

    /// Dispatches one request. `body` is the raw request text (may be empty).
    pub fn handle(&self, method: &str, path: &str, body: &str) -> Reply {
        let parts: Vec<&str> = path.trim_matches('/').split('/').filter(|s| !s.is_empty()).collect();
        let parse_body = || -> Result<Value, Reply> {
            if body.trim().is_empty() {
                Ok(Value::Object(Default::default()))
            } else {
                serde_json::from_str(body).map_err(|e| Reply::error(400, "bad-request", "invalid-json", e.to_string()))
            }
        };
        match (method, parts.as_slice()) {
            ("POST", ["games"]) => match parse_body() {
                Ok(v) => self.create(&v),
                Err(r) => r,
            },
            (_, ["games", id, rest @ ..]) => {
                let Some(session) = self.session(id) else {
                    return Reply::error(404, "not-found", "unknown-session", format!("no game `{id}`"));
                };
                let mut s = session.lock().expect("poisoned");
                match (method, rest) {
                    ("GET", []) => Reply::ok(s.view()),
                    ("GET", ["moves"]) => {
                        let board = s.state.board();
                        let moves: Vec<(String, String)> = s
                            .state
                            .legal_moves()
                            .unwrap_or_default()
                            .into_iter()
                            .map(|(u, l)| (board.id(u).to_string(), board.id(l).to_string()))
                            .collect();
                        Reply::ok(json!({
                            "ball": s.state.ball().map(|b| board.id(b).to_string()),
                            "moves": moves,
                            "finished": s.state.is_finished(),
                        }))
                    }
                    ("POST", ["moves"]) => match parse_body() {
                        Ok(v) => post_move(&mut s, &v),
                        Err(r) => r,
                    },
                    ("POST", ["finalize"]) => post_finalize(&mut s),
                    ("GET", ["transcript"]) => Reply::ok(serde_json::to_value(s.state.transcript()).expect("serializable")),
                    (_, [] | ["moves"] | ["finalize"] | ["transcript"]) => {
                        Reply::error(405, "method-not-allowed", "method-not-allowed", format!("{method} {path}"))
                    }
                    _ => Reply::error(404, "not-found", "unknown-route", path.to_string()),
                }
            }
            _ => Reply::error(404, "not-found", "unknown-route", path.to_string()),
        }
    }
}

#[derive(Debug, Deserialize)]
struct MoveRequest {
    edge: (String, String),
}

fn post_move(s: &mut GameSession, body: &Value) -> Reply {
    if s.state.is_finished() {
        return Reply::error(410, "game-over", "game-over", "the game is finished");
    }
    let req: MoveRequest = match serde_json::from_value(body.clone()) {
        Ok(r) => r,
        Err(e) => return Reply::error(400, "bad-request", "invalid-move-request", e.to_string()),
    };
    let board = s.state.board();
    let edge = match (board.index_of(&req.edge.0), board.index_of(&req.edge.1)) {
        (Ok(u), Ok(l)) => (u, l),
        (Err(e), _) | (_, Err(e)) => return Reply::error(400, "bad-request", "unknown-vertex", e.to_string()),
    };
    if let Err(e) = s.state.apply_move(edge) {
        return illegal(e);
    }
    if let Err(e) = s.settle_if_stuck() {
        return Reply::error(409, "illegal-move", "internal", e.to_string());
    }
    s.updated = now_millis();
    Reply::ok(s.view())
}

fn post_finalize(s: &mut GameSession) -> Reply {
    if s.state.is_finished() {
        return Reply::error(410, "game-over", "game-over", "the game is finished");
    }
    if let Err(e) = s.state.finalize_current() {
        return match e {
            PinballError::MovesRemain(_) => Reply::error(409, "moves-remain", "moves-remain", e.to_string()),
            other => Reply::error(409, "illegal-finalize", "illegal-finalize", other.to_string()),
        };
    }
    if let Err(e) = s.settle_if_stuck() {
        return Reply::error(409, "illegal-finalize", "illegal-finalize", e.to_string());
    }
    s.updated = now_millis();
    Reply::ok(s.view())
}

fn illegal(e: PinballError) -> Reply {
    let message = e.to_string();
    match e {
        PinballError::IllegalMove { reason, .. } => {
            let (reason, wall) = match reason {
                IllegalReason::NotASlide => ("not-a-slide", None),
                IllegalReason::Wall(w) => ("wall", Some(w.to_string())),
            };
            Reply {
                status: 409,
                body: json!({"error": {"code": "illegal-move", "reason": reason, "wall": wall, "message": message}}),
            }
        }
        PinballError::NoBallInPlay => Reply::error(410, "game-over", "game-over", message),
        _ => Reply::error(409, "illegal-move", "illegal-move", message),
    }
}
