use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, ensure};
use clap::{Args, Subcommand, ValueEnum};
use pinball_core::billey::billey_restrict;
use pinball_core::hessenberg::{
    hessenberg_betti, hessenberg_degree, hessenberg_fixed_points, peterson_degree, peterson_fixed_points,
    springer_fixed_points, subregular_fixed_points,
};
use pinball_core::springer_rep::{character_table, kk_matrix};
use pinball_core::{
    ElementSubset, GameConfig, GradedPoset, HessenbergSpace, LieType, Partition, PosetJson, Variant, WeylGroup,
};
use serde::Serialize;
use serde_json::json;

use crate::output::{print_json, read_json, table};
use crate::Outcome;

#[derive(Args, Clone)]
pub struct GroupArgs {
    /// Lie type: A, B, C or D.
    #[arg(long = "type", default_value = "A", global = true)]
    pub lie: LieType,
    #[arg(long, default_value_t = 3, global = true)]
    pub rank: usize,
}

impl GroupArgs {
    pub fn group(&self) -> anyhow::Result<WeylGroup> {
        Ok(WeylGroup::new(self.lie, self.rank)?)
    }
}

#[derive(Serialize)]
pub struct ElementRow {
    pub word: String,
    pub one_line: String,
    pub length: u32,
}

pub fn element_row(g: &WeylGroup, w: usize) -> ElementRow {
    ElementRow {
        word: g.label(w),
        one_line: g.element(w).to_string(),
        length: g.length(w),
    }
}

fn load_poset(path: &Path) -> anyhow::Result<GradedPoset> {
    let json: PosetJson = read_json(path)?;
    Ok(GradedPoset::from_json(&json)?)
}

fn ids(p: &GradedPoset, xs: impl IntoIterator<Item = usize>) -> Vec<String> {
    xs.into_iter().map(|i| p.id(i).to_string()).collect()
}

#[derive(Args)]
pub struct PosetCmd {
    #[command(subcommand)]
    action: PosetAction,
}

#[derive(Subcommand)]
enum PosetAction {
    /// Validate a board and list its elements by rank.
    Check { file: PathBuf },
    /// Whether `a <= b`.
    Leq { file: PathBuf, a: String, b: String },
    /// Union of the principal ideals of the given elements.
    Ideal {
        file: PathBuf,
        #[arg(required = true)]
        ids: Vec<String>,
    },
    /// Principal filter of an element.
    Filter { file: PathBuf, id: String },
    /// A linear extension of the given elements (all elements if none).
    Extension { file: PathBuf, ids: Vec<String> },
    /// Whether the given elements form an order ideal, with their minimal elements.
    IsIdeal {
        file: PathBuf,
        #[arg(required = true)]
        ids: Vec<String>,
    },
}

impl PosetCmd {
    pub fn run(self, json: bool) -> Outcome {
        match self.action {
            PosetAction::Check { file } => {
                let p = load_poset(&file)?;
                if json {
                    print_json(&p.to_json())?;
                    return Ok(true);
                }
                println!("{} elements, {} covers, max rank {}", p.len(), p.covers().len(), p.max_rank());
                let rows: Vec<Vec<String>> = (0..=p.max_rank())
                    .map(|r| {
                        let members: Vec<String> = ids(&p, (0..p.len()).filter(|&i| p.rank(i) == r));
                        vec![r.to_string(), members.len().to_string(), members.join(" ")]
                    })
                    .collect();
                print!("{}", table(&["rank", "count", "elements"], &rows));
            }
            PosetAction::Leq { file, a, b } => {
                let p = load_poset(&file)?;
                let leq = p.leq_ids(&a, &b)?;
                if json {
                    print_json(&json!({ "a": a, "b": b, "leq": leq }))?;
                } else {
                    println!("{leq}");
                }
            }
            PosetAction::Ideal { file, ids: members } => {
                let p = load_poset(&file)?;
                let mut ideal = ElementSubset::default();
                for i in p.subset_from_ids(&members)?.iter() {
                    for j in p.principal_ideal(i).iter() {
                        ideal.insert(j);
                    }
                }
                print_subset(&p, &ideal, json)?;
            }
            PosetAction::Filter { file, id } => {
                let p = load_poset(&file)?;
                let filter = p.principal_filter(p.index_of(&id)?);
                print_subset(&p, &filter, json)?;
            }
            PosetAction::Extension { file, ids: members } => {
                let p = load_poset(&file)?;
                let subset = if members.is_empty() {
                    ElementSubset::from_indices(0..p.len())
                } else {
                    p.subset_from_ids(&members)?
                };
                let order = ids(&p, p.linear_extension(&subset));
                if json {
                    print_json(&order)?;
                } else {
                    println!("{}", order.join(" "));
                }
            }
            PosetAction::IsIdeal { file, ids: members } => {
                let p = load_poset(&file)?;
                let subset = p.subset_from_ids(&members)?;
                let closed = p.is_union_of_principal_ideals(&subset);
                let minimal = ids(&p, p.minimal_elements(&subset));
                if json {
                    print_json(&json!({ "ideal": closed, "minimal": minimal }))?;
                } else {
                    println!("ideal: {closed}");
                    println!("minimal: {}", minimal.join(" "));
                }
            }
        }
        Ok(true)
    }
}

fn print_subset(p: &GradedPoset, s: &ElementSubset, json: bool) -> anyhow::Result<()> {
    let members = ids(p, p.linear_extension(s));
    if json {
        print_json(&members)
    } else {
        println!("{}", members.join(" "));
        Ok(())
    }
}

#[derive(Args)]
pub struct WeylCmd {
    #[command(flatten)]
    group: GroupArgs,
    #[command(subcommand)]
    action: WeylAction,
}

#[derive(Subcommand)]
enum WeylAction {
    /// Order, root count and longest element.
    Info,
    /// Every element with its canonical word and one-line notation.
    Elements {
        #[arg(long)]
        max_length: Option<u32>,
    },
    /// Normalize a word or one-line element.
    Parse { element: String },
    /// Whether `u <= w` in Bruhat order.
    Bruhat { u: String, w: String },
    /// All reduced words of an element.
    Words { element: String },
    /// The Bruhat order as a board file.
    Poset {
        #[arg(long)]
        max_length: Option<u32>,
    },
}

impl WeylCmd {
    pub fn run(self, json: bool) -> Outcome {
        let g = self.group.group()?;
        match self.action {
            WeylAction::Info => {
                let top = (0..g.order()).max_by_key(|&w| g.length(w)).unwrap_or(0);
                let info = json!({
                    "type": g.roots().lie_type().to_string(),
                    "rank": g.rank(),
                    "order": g.order(),
                    "positive_roots": g.roots().positive_roots().len(),
                    "longest": element_row(&g, top),
                });
                if json {
                    print_json(&info)?;
                } else {
                    println!("type {}{}, order {}", self.group.lie, g.rank(), g.order());
                    println!("positive roots: {}", g.roots().positive_roots().len());
                    println!("longest element: {} = {}", g.label(top), g.element(top));
                }
            }
            WeylAction::Elements { max_length } => {
                let rows: Vec<ElementRow> = (0..g.order())
                    .filter(|&w| max_length.is_none_or(|m| g.length(w) <= m))
                    .map(|w| element_row(&g, w))
                    .collect();
                if json {
                    print_json(&rows)?;
                } else {
                    let cells: Vec<Vec<String>> = rows
                        .iter()
                        .map(|r| vec![r.length.to_string(), r.word.clone(), r.one_line.clone()])
                        .collect();
                    print!("{}", table(&["length", "word", "one-line"], &cells));
                }
            }
            WeylAction::Parse { element } => {
                let row = element_row(&g, g.parse(&element)?);
                if json {
                    print_json(&row)?;
                } else {
                    println!("{}  {}  length {}", row.word, row.one_line, row.length);
                }
            }
            WeylAction::Bruhat { u, w } => {
                let leq = g.bruhat_leq(g.parse(&u)?, g.parse(&w)?);
                if json {
                    print_json(&json!({ "u": u, "w": w, "leq": leq }))?;
                } else {
                    println!("{leq}");
                }
            }
            WeylAction::Words { element } => {
                let words: Vec<String> = g
                    .all_reduced_words(g.parse(&element)?)
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                if json {
                    print_json(&words)?;
                } else {
                    for w in words {
                        println!("{w}");
                    }
                }
            }
            WeylAction::Poset { max_length } => {
                print_json(&g.to_poset(max_length)?.to_json())?;
            }
        }
        Ok(true)
    }
}

#[derive(Args)]
pub struct BilleyArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Schubert class index.
    #[arg(long)]
    v: String,
    /// Fixed point; every `w >= v` when omitted.
    #[arg(long)]
    w: Option<String>,
    /// Set every simple root to `t`.
    #[arg(long)]
    specialize: bool,
}

impl BilleyArgs {
    pub fn run(self, json: bool) -> Outcome {
        let g = self.group.group()?;
        let v = g.parse(&self.v)?;
        let points: Vec<usize> = match &self.w {
            Some(w) => vec![g.parse(w)?],
            None => (0..g.order()).filter(|&w| g.bruhat_leq(v, w)).collect(),
        };
        let mut rows = Vec::new();
        for w in points {
            let p = billey_restrict(&g, v, w)?;
            let value = if self.specialize {
                p.specialize().pretty()
            } else {
                p.to_string()
            };
            rows.push((g.label(w), value));
        }
        if json {
            let out: Vec<_> = rows
                .iter()
                .map(|(w, value)| json!({ "v": g.label(v), "w": w, "value": value }))
                .collect();
            if self.w.is_some() {
                print_json(&out[0])?;
            } else {
                print_json(&out)?;
            }
        } else if self.w.is_some() {
            println!("{}", rows[0].1);
        } else {
            let cells: Vec<Vec<String>> = rows.into_iter().map(|(w, p)| vec![w, p]).collect();
            print!("{}", table(&["w", "value"], &cells));
        }
        Ok(true)
    }
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Family {
    Peterson,
    Springer,
    Hessenberg,
    Subregular,
}

#[derive(Args)]
pub struct FixedPointArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Springer partition of `rank + 1`.
    #[arg(long, value_delimiter = ',')]
    lambda: Vec<usize>,
    /// Type A Hessenberg function, e.g. `3,3,4,4`.
    #[arg(long = "hessenberg-h", value_delimiter = ',')]
    hessenberg_h: Vec<usize>,
    /// Negative roots spanning the Hessenberg space, e.g. `-a1,-a2`.
    #[arg(long, allow_hyphen_values = true)]
    mh: Option<String>,
    /// Print a game config: the full Bruhat board with these points as initial elements.
    #[arg(long)]
    config: bool,
    /// Variant for `--config`.
    #[arg(long, default_value = "basic")]
    variant: Variant,
    /// Betti targets for `--config`; defaults to the computed ones where known.
    #[arg(long, value_delimiter = ',')]
    targets: Option<Vec<u32>>,
}

#[derive(Serialize)]
struct FixedPoint {
    #[serde(flatten)]
    element: ElementRow,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    subset: Option<Vec<usize>>,
}

impl FixedPointArgs {
    fn family(&self) -> anyhow::Result<Family> {
        Ok(match self.family {
            Some(f) => f,
            None if !self.lambda.is_empty() => Family::Springer,
            None if !self.hessenberg_h.is_empty() || self.mh.is_some() => Family::Hessenberg,
            None => bail!("choose --family, --lambda, --hessenberg-h or --mh"),
        })
    }

    pub fn run(self, json: bool) -> Outcome {
        let g = self.group.group()?;
        let family = self.family()?;
        let point = |w: usize, degree: Option<usize>, subset: Option<Vec<usize>>| FixedPoint {
            element: element_row(&g, w),
            degree,
            subset,
        };
        let (points, betti): (Vec<FixedPoint>, Option<Vec<u32>>) = match family {
            Family::Peterson => {
                let space = HessenbergSpace::peterson(&g);
                let pts = peterson_fixed_points(&g)
                    .into_iter()
                    .map(|(j, w)| point(w, Some(peterson_degree(&j)), Some(j)))
                    .collect();
                (pts, Some(hessenberg_betti(&g, &space)))
            }
            Family::Hessenberg => {
                let space = if !self.hessenberg_h.is_empty() {
                    HessenbergSpace::from_hessenberg_function(&g, &self.hessenberg_h)?
                } else if let Some(mh) = &self.mh {
                    HessenbergSpace::parse(&g, mh)?
                } else {
                    bail!("hessenberg needs --hessenberg-h or --mh");
                };
                let pts = hessenberg_fixed_points(&g, &space)
                    .into_iter()
                    .map(|w| point(w, Some(hessenberg_degree(&g, &space, w)), None))
                    .collect();
                (pts, Some(hessenberg_betti(&g, &space)))
            }
            Family::Springer => {
                ensure!(!self.lambda.is_empty(), "springer needs --lambda");
                let lambda = Partition::new(self.lambda.clone(), g.rank() + 1)?;
                let pts = springer_fixed_points(&g, &lambda)?
                    .into_iter()
                    .map(|w| point(w, None, None))
                    .collect();
                (pts, None)
            }
            Family::Subregular => {
                let pts = subregular_fixed_points(&g)?.into_iter().map(|w| point(w, None, None)).collect();
                (pts, Some(vec![1, g.rank() as u32]))
            }
        };
        if self.config {
            let board = Arc::new(g.to_poset(None)?);
            let members = points
                .iter()
                .map(|p| board.index_of(&p.element.word))
                .collect::<Result<Vec<_>, _>>()?;
            let targets = self.targets.clone().or(betti);
            let config = GameConfig::with_default_order(
                board,
                &ElementSubset::from_indices(members),
                self.variant,
                targets,
            )?;
            print_json(&config.to_json())?;
            return Ok(true);
        }
        if json {
            print_json(&json!({ "points": points, "betti": betti }))?;
            return Ok(true);
        }
        let rows: Vec<Vec<String>> = points
            .iter()
            .map(|p| {
                let mut row = vec![p.element.one_line.clone(), p.element.word.clone(), p.element.length.to_string()];
                row.push(p.degree.map(|d| d.to_string()).unwrap_or_else(|| "-".into()));
                row
            })
            .collect();
        print!("{}", table(&["one-line", "word", "length", "degree"], &rows));
        println!("{} fixed points", points.len());
        if let Some(b) = betti {
            let b: Vec<String> = b.iter().map(ToString::to_string).collect();
            println!("betti: {}", b.join(","));
        }
        Ok(true)
    }
}

#[derive(Args)]
pub struct SpringerArgs {
    /// Size of the symmetric group.
    #[arg(long)]
    n: usize,
    /// Compare characters with the tableau model, one row per conjugacy class.
    #[arg(long)]
    characters: bool,
    /// Matrix of this element; the simple reflections when omitted.
    #[arg(long)]
    element: Option<String>,
}

impl SpringerArgs {
    pub fn run(self, json: bool) -> Outcome {
        ensure!(self.n >= 2, "--n must be at least 2");
        let g = WeylGroup::new(LieType::A, self.n - 1)?;
        if self.characters {
            let rows = character_table(&g);
            let ok = rows.iter().all(|r| r.matches());
            if json {
                print_json(&rows)?;
            } else {
                let cells: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| {
                        let ct: Vec<String> = r.cycle_type.iter().map(ToString::to_string).collect();
                        vec![
                            format!("({})", ct.join(",")),
                            r.fixed_points.to_string(),
                            r.psi0.to_string(),
                            r.psi1.to_string(),
                            r.chi0.to_string(),
                            r.chi1.to_string(),
                            if r.matches() { "yes" } else { "NO" }.to_string(),
                        ]
                    })
                    .collect();
                print!("{}", table(&["class", "#fix", "psi0", "psi1", "chi0", "chi1", "match"], &cells));
            }
            return Ok(ok);
        }
        let elements: Vec<usize> = match &self.element {
            Some(e) => vec![g.parse(e)?],
            None => (1..=g.rank()).map(|i| g.simple_reflection(i)).collect(),
        };
        let basis: Vec<String> = std::iter::once("p_e".to_string())
            .chain((1..self.n).map(|i| format!("p_s{i}")))
            .collect();
        let mut out = Vec::new();
        for w in elements {
            let m = kk_matrix(&g, w);
            let entries: Vec<Vec<String>> = (0..m.size())
                .map(|r| (0..m.size()).map(|c| m.get(r, c).pretty()).collect())
                .collect();
            out.push((g.label(w), entries));
        }
        if json {
            let v: Vec<_> = out
                .iter()
                .map(|(w, m)| json!({ "element": w, "basis": basis, "matrix": m }))
                .collect();
            print_json(&v)?;
        } else {
            let mut header = vec![""];
            header.extend(basis.iter().map(String::as_str));
            for (w, m) in out {
                println!("{w}:");
                let rows: Vec<Vec<String>> = m
                    .into_iter()
                    .zip(&basis)
                    .map(|(row, b)| std::iter::once(b.clone()).chain(row).collect())
                    .collect();
                print!("{}", table(&header, &rows));
            }
        }
        Ok(true)
    }
}
