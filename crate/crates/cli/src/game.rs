use std::io::{self, BufRead, Write};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{bail, Context};
use axum::extract::State;
use axum::http::{Method, StatusCode, Uri};
use axum::response::{IntoResponse, Response};
use axum::{Json, Router};
use clap::{Args, Subcommand};
use pinball_core::game_server::config_from_request;
use pinball_core::pinball::{
    enumerate_outcomes, enumerate_outcomes_parallel, node_budget_from_env, play, replay, ConfigJson, FirstMove,
    Guided, MoveJson, Script, Strategy,
};
use pinball_core::repro::reproduce;
use pinball_core::{GameConfig, GameStore, GradedPoset, PinballState, PosetJson, ReproTarget, Transcript, Variant};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::output::{print_json, read_json, read_text, table};
use crate::Outcome;

#[derive(Args)]
pub struct PinballCmd {
    #[command(subcommand)]
    action: PinballAction,
}

#[derive(Subcommand)]
enum PinballAction {
    /// Play one game and print its rolldown.
    Play {
        #[command(flatten)]
        game: GameArgs,
        /// Slides to play: transcript, move list, edge list, or one `from to` per line.
        #[arg(long, conflicts_with_all = ["interactive", "to"])]
        script: Option<PathBuf>,
        /// Read one slide per line from standard input.
        #[arg(long, conflicts_with = "to")]
        interactive: bool,
        /// Steer the balls to these slots, in release order.
        #[arg(long, value_delimiter = ',')]
        to: Option<Vec<String>>,
    },
    /// Every reachable rolldown.
    Enumerate {
        #[command(flatten)]
        game: GameArgs,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        /// Node budget; `PINBALL_NODE_BUDGET` or 10^7 when omitted.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Replay a transcript and check its recorded rolldown.
    Replay {
        file: PathBuf,
        /// Print the final board state instead of the transcript.
        #[arg(long)]
        snapshot: bool,
    },
}

#[derive(Args)]
struct GameArgs {
    /// Board file (poset JSON); needs `--initial`.
    #[arg(long, conflicts_with_all = ["config", "builtin"], requires = "initial")]
    board: Option<PathBuf>,
    /// Initial elements in release order.
    #[arg(long, value_delimiter = ',')]
    initial: Vec<String>,
    /// Game config file (board, initial, variant, targets).
    #[arg(long, conflicts_with = "builtin")]
    config: Option<PathBuf>,
    /// fig1 to fig4, springer, peterson or hessenberg.
    #[arg(long)]
    builtin: Option<String>,
    /// Springer builtin: size of the symmetric group.
    #[arg(long)]
    n: Option<usize>,
    /// Springer builtin: partition of `n`.
    #[arg(long, value_delimiter = ',')]
    lambda: Option<Vec<usize>>,
    /// Peterson and Hessenberg builtins: Lie type.
    #[arg(long = "type")]
    lie: Option<String>,
    /// Peterson and Hessenberg builtins: rank.
    #[arg(long)]
    rank: Option<usize>,
    /// Hessenberg builtin: Hessenberg function.
    #[arg(long = "hessenberg-h", value_delimiter = ',')]
    hessenberg_h: Option<Vec<usize>>,
    /// Hessenberg builtin: negative roots spanning the space.
    #[arg(long, allow_hyphen_values = true)]
    mh: Option<String>,
    #[arg(long)]
    variant: Option<Variant>,
    /// Betti targets by rank, e.g. `1,3,2`.
    #[arg(long, value_delimiter = ',')]
    targets: Option<Vec<u32>>,
}

impl GameArgs {
    fn config(&self) -> anyhow::Result<GameConfig> {
        if let Some(path) = &self.board {
            let json: PosetJson = read_json(path)?;
            let board = Arc::new(GradedPoset::from_json(&json)?);
            let variant = self.variant.unwrap_or(Variant::Basic);
            return Ok(GameConfig::from_ids(board, &self.initial, variant, self.targets.clone())?);
        }
        if let Some(path) = &self.config {
            let mut json: ConfigJson = read_json(path)?;
            if let Some(v) = self.variant {
                json.variant = v;
            }
            if self.targets.is_some() {
                json.targets = self.targets.clone();
            }
            return Ok(GameConfig::from_json(&json)?);
        }
        let Some(builtin) = &self.builtin else {
            bail!("choose --board, --config or --builtin");
        };
        let mut req = Map::new();
        req.insert("builtin".into(), json!(builtin));
        let mut put = |k: &str, v: Option<Value>| {
            if let Some(v) = v {
                req.insert(k.into(), v);
            }
        };
        put("n", self.n.map(|x| json!(x)));
        put("lambda", self.lambda.as_ref().map(|x| json!(x)));
        put("type", self.lie.as_ref().map(|x| json!(x)));
        put("rank", self.rank.map(|x| json!(x)));
        put("h", self.hessenberg_h.as_ref().map(|x| json!(x)));
        put("mh", self.mh.as_ref().map(|x| json!(x)));
        put("variant", self.variant.map(|x| json!(x)));
        put("targets", self.targets.as_ref().map(|x| json!(x)));
        let (config, _) = config_from_request(&Value::Object(req)).map_err(anyhow::Error::msg)?;
        Ok(config)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScriptFile {
    Transcript(Transcript),
    Moves(Vec<MoveJson>),
    Edges(Vec<(String, String)>),
}

fn script_edges(text: &str) -> anyhow::Result<Vec<(String, String)>> {
    if let Ok(file) = serde_json::from_str::<ScriptFile>(text) {
        let moves = match file {
            ScriptFile::Transcript(t) => t.moves,
            ScriptFile::Moves(m) => m,
            ScriptFile::Edges(e) => return Ok(e),
        };
        return Ok(moves.into_iter().map(|m| m.edge).collect());
    }
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_edge_line)
        .collect()
}

/// `from to`, `from -> to` or `from,to`.
fn parse_edge_line(line: &str) -> anyhow::Result<(String, String)> {
    let parts: Vec<&str> = line
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty() && *s != "->")
        .collect();
    match parts.as_slice() {
        [a, b] => Ok((a.to_string(), b.to_string())),
        _ => bail!("cannot read `{line}` as a slide"),
    }
}

/// Prompts on `out` and reads slides from `input`; a lone id slides the ball there.
struct Interactive<R, W> {
    input: R,
    out: W,
}

impl<R: BufRead, W: Write> Strategy for Interactive<R, W> {
    fn choose(&mut self, state: &PinballState, moves: &[(usize, usize)]) -> Option<(usize, usize)> {
        let board = state.board();
        let ball = state.ball()?;
        loop {
            let legal: Vec<String> = moves
                .iter()
                .map(|&(a, b)| format!("{} -> {}", board.id(a), board.id(b)))
                .collect();
            let _ = writeln!(self.out, "ball at {}; legal: {}", board.id(ball), legal.join(", "));
            let _ = self.out.flush();
            let mut line = String::new();
            match self.input.read_line(&mut line) {
                Ok(0) | Err(_) => return None,
                Ok(_) => {}
            }
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let edge = if line.split_whitespace().count() == 1 && !line.contains(',') {
                Ok((board.id(ball).to_string(), line.to_string()))
            } else {
                parse_edge_line(line)
            };
            let found = edge.ok().and_then(|(a, b)| {
                let e = (board.index_of(&a).ok()?, board.index_of(&b).ok()?);
                moves.contains(&e).then_some(e)
            });
            match found {
                Some(e) => return Some(e),
                None => {
                    let _ = writeln!(self.out, "not a legal slide: {line}");
                }
            }
        }
    }
}

fn print_game(state: &PinballState, json: bool) -> anyhow::Result<()> {
    let t = state.transcript();
    if json {
        return print_json(&t);
    }
    let board = state.board();
    let rows: Vec<Vec<String>> = t
        .config
        .initial
        .iter()
        .enumerate()
        .map(|(k, j)| {
            let v = t.rolldown.get(j).cloned().unwrap_or_else(|| "-".into());
            let rank = board.index_of(&v).map(|i| board.rank(i).to_string()).unwrap_or_default();
            vec![(k + 1).to_string(), j.clone(), v, rank]
        })
        .collect();
    print!("{}", table(&["k", "initial", "rolldown", "rank"], &rows));
    println!("{} slides, {} walls", t.moves.len(), state.walls().len());
    if let Some(s) = t.success {
        println!("success: {s}");
    }
    Ok(())
}

impl PinballCmd {
    pub fn run(self, json: bool) -> Outcome {
        match self.action {
            PinballAction::Play {
                game,
                script,
                interactive,
                to,
            } => {
                let config = game.config()?;
                let board = Arc::clone(&config.board);
                let state = if let Some(path) = script {
                    let edges = script_edges(&read_text(&path)?)?
                        .into_iter()
                        .map(|(a, b)| Ok((board.index_of(&a)?, board.index_of(&b)?)))
                        .collect::<anyhow::Result<Vec<_>>>()?;
                    play(config, &mut Script::new(edges))?
                } else if interactive {
                    let stdin = io::stdin();
                    if json {
                        play(config, &mut Interactive { input: stdin.lock(), out: io::stderr() })?
                    } else {
                        play(config, &mut Interactive { input: stdin.lock(), out: io::stdout() })?
                    }
                } else if let Some(targets) = to {
                    let targets = targets
                        .iter()
                        .map(|s| board.index_of(s))
                        .collect::<Result<Vec<_>, _>>()?;
                    play(config, &mut Guided::new(targets))?
                } else {
                    play(config, &mut FirstMove)?
                };
                print_game(&state, json)?;
                Ok(state.success() != Some(false))
            }
            PinballAction::Enumerate { game, parallel, budget } => {
                let config = game.config()?;
                let board = Arc::clone(&config.board);
                let initial = config.initial.clone();
                let budget = budget.unwrap_or_else(node_budget_from_env);
                let e = if parallel > 1 {
                    enumerate_outcomes_parallel(config, budget, parallel)?
                } else {
                    enumerate_outcomes(config, budget)?
                };
                let maps: Vec<Map<String, Value>> = e
                    .outcomes
                    .iter()
                    .map(|o| {
                        initial
                            .iter()
                            .zip(&o.rolldown)
                            .map(|(&j, &v)| (board.id(j).to_string(), json!(board.id(v))))
                            .collect()
                    })
                    .collect();
                let successes = e.successful().count();
                if json {
                    let outcomes: Vec<Value> = maps
                        .iter()
                        .zip(&e.outcomes)
                        .map(|(m, o)| json!({ "rolldown": m, "success": o.success }))
                        .collect();
                    print_json(&json!({ "nodes": e.nodes, "outcomes": outcomes, "successful": successes }))?;
                } else {
                    let mut header: Vec<&str> = vec!["#"];
                    header.extend(initial.iter().map(|&j| board.id(j)));
                    header.push("success");
                    let rows: Vec<Vec<String>> = e
                        .outcomes
                        .iter()
                        .enumerate()
                        .map(|(k, o)| {
                            let mut row = vec![(k + 1).to_string()];
                            row.extend(o.rolldown.iter().map(|&v| board.id(v).to_string()));
                            row.push(o.success.map(|s| s.to_string()).unwrap_or_else(|| "-".into()));
                            row
                        })
                        .collect();
                    print!("{}", table(&header, &rows));
                    println!("{} outcomes, {} successful, {} nodes", e.outcomes.len(), successes, e.nodes);
                }
                Ok(true)
            }
            PinballAction::Replay { file, snapshot } => {
                let t: Transcript = read_json(&file)?;
                let state = replay(&t)?;
                if snapshot {
                    print_json(&state.snapshot())?;
                } else {
                    print_game(&state, json)?;
                }
                Ok(true)
            }
        }
    }
}

#[derive(Args)]
pub struct ReproduceArgs {
    /// fig1, fig2, fig3, fig4 or all.
    target: String,
    /// Node budget for enumeration; `PINBALL_NODE_BUDGET` or 10^7 when omitted.
    #[arg(long)]
    budget: Option<u64>,
}

impl ReproduceArgs {
    pub fn run(self, json: bool) -> Outcome {
        let targets: Vec<ReproTarget> = if self.target == "all" {
            ReproTarget::ALL.to_vec()
        } else {
            vec![self.target.parse()?]
        };
        let budget = self.budget.unwrap_or_else(node_budget_from_env);
        let mut reports = Vec::new();
        for t in targets {
            reports.push(reproduce(t, budget).with_context(|| format!("reproducing {t}"))?);
        }
        let ok = reports.iter().all(|r| r.ok());
        if json {
            if reports.len() == 1 {
                print_json(&json!({ "ok": ok, "report": reports[0] }))?;
            } else {
                print_json(&json!({ "ok": ok, "reports": reports }))?;
            }
        } else {
            for r in &reports {
                print!("{r}");
            }
        }
        Ok(ok)
    }
}

#[derive(Args)]
pub struct ServeArgs {
    /// Address to listen on; port 0 picks a free port.
    #[arg(long, default_value = "127.0.0.1:8080")]
    addr: SocketAddr,
}

async fn route(State(store): State<Arc<GameStore>>, method: Method, uri: Uri, body: String) -> Response {
    let reply = store.handle(method.as_str(), uri.path(), &body);
    let status = StatusCode::from_u16(reply.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
    (status, Json(reply.body)).into_response()
}

impl ServeArgs {
    pub fn run(self) -> Outcome {
        let rt = tokio::runtime::Runtime::new()?;
        rt.block_on(async {
            let store = Arc::new(GameStore::new());
            let app = Router::new().fallback(route).with_state(store);
            let listener = tokio::net::TcpListener::bind(self.addr)
                .await
                .with_context(|| format!("binding {}", self.addr))?;
            println!("listening on http://{}", listener.local_addr()?);
            io::stdout().flush()?;
            axum::serve(listener, app)
                .with_graceful_shutdown(async {
                    let _ = tokio::signal::ctrl_c().await;
                })
                .await?;
            Ok(true)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_lines() {
        assert_eq!(parse_edge_line("s1.s2 -> s1").unwrap(), ("s1.s2".into(), "s1".into()));
        assert_eq!(parse_edge_line("a,b").unwrap(), ("a".into(), "b".into()));
        assert!(parse_edge_line("a").is_err());
    }

    #[test]
    fn script_formats() {
        let text = r#"[["a","b"],["b","c"]]"#;
        assert_eq!(script_edges(text).unwrap().len(), 2);
        let moves = r#"[{"ball":"a","edge":["a","b"]}]"#;
        assert_eq!(script_edges(moves).unwrap(), vec![("a".into(), "b".into())]);
        assert_eq!(script_edges("# c\na b\n\nb c\n").unwrap().len(), 2);
    }
}
