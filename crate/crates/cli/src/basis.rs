use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Subcommand};
use pinball_core::billey::schubert_class;
use pinball_core::flowup::{
    construct_flowup_basis, find_triangular_order, linearly_independent,
    poset_ut_failures, verify_pinball_basis, Candidate, CandidateBasisJson,
};
use pinball_core::{CandidateBasis, IndexPoset, RestrictionVector, Transcript, WeylGroup};
use serde_json::json;

use crate::algebra::GroupArgs;
use crate::output::{print_json, read_json, table};
use crate::Outcome;

#[derive(Args)]
pub struct BasisCmd {
    #[command(subcommand)]
    action: BasisAction,
}

#[derive(Subcommand)]
enum BasisAction {
    /// Schubert classes restricted to a set of points, as a candidate basis file.
    Classes {
        #[command(flatten)]
        group: GroupArgs,
        /// Points to restrict to (the index of the file).
        #[arg(long, value_delimiter = ',')]
        at: Vec<String>,
        /// Schubert classes to restrict.
        #[arg(long, value_delimiter = ',')]
        classes: Vec<String>,
        /// Take points and classes from a finished game: initial elements and their rolldowns.
        #[arg(long, conflicts_with_all = ["at", "classes"])]
        transcript: Option<PathBuf>,
    },
    /// Independence and degree counts of a candidate basis.
    Verify {
        file: PathBuf,
        /// Required number of classes in each degree.
        #[arg(long, value_delimiter = ',', required = true)]
        targets: Vec<u32>,
    },
    /// Triangularity of a candidate basis under Bruhat order on its index.
    Triangular {
        #[command(flatten)]
        group: GroupArgs,
        file: PathBuf,
    },
    /// Reduced triangular generators of the module a candidate basis spans.
    Construct {
        file: PathBuf,
        /// Column order; the file's index order when omitted.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
    },
}

fn load(path: &Path) -> anyhow::Result<CandidateBasis> {
    let json: CandidateBasisJson = read_json(path)?;
    Ok(CandidateBasis::from_json(&json)?)
}

fn parse_all(g: &WeylGroup, xs: &[String]) -> anyhow::Result<Vec<usize>> {
    xs.iter().map(|x| Ok(g.parse(x)?)).collect()
}

impl BasisCmd {
    pub fn run(self, json: bool) -> Outcome {
        match self.action {
            BasisAction::Classes {
                group,
                at,
                classes,
                transcript,
            } => {
                let g = group.group()?;
                let (points, vs) = match transcript {
                    Some(path) => {
                        let t: Transcript = read_json(&path)?;
                        let rolled: Vec<String> = t
                            .config
                            .initial
                            .iter()
                            .map(|j| t.rolldown.get(j).cloned().with_context(|| format!("`{j}` has not rested")))
                            .collect::<anyhow::Result<_>>()?;
                        (parse_all(&g, &t.config.initial)?, parse_all(&g, &rolled)?)
                    }
                    None => {
                        if at.is_empty() || classes.is_empty() {
                            bail!("give --at and --classes, or --transcript");
                        }
                        (parse_all(&g, &at)?, parse_all(&g, &classes)?)
                    }
                };
                let classes = vs
                    .into_iter()
                    .map(|v| {
                        let c = schubert_class(&g, v, &points)?;
                        Ok(Candidate {
                            label: c.label,
                            degree: g.length(v),
                            vector: RestrictionVector(c.values),
                        })
                    })
                    .collect::<anyhow::Result<Vec<_>>>()?;
                let basis = CandidateBasis {
                    index: points.iter().map(|&w| g.label(w)).collect(),
                    classes,
                };
                if json {
                    print_json(&basis.to_json())?;
                } else {
                    print_basis(&basis);
                }
                Ok(true)
            }
            BasisAction::Verify { file, targets } => {
                let basis = load(&file)?;
                let report = verify_pinball_basis(&basis, &targets);
                if json {
                    print_json(&json!({ "ok": report.ok(), "report": report }))?;
                } else {
                    let fmt = |v: &[u32]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
                    println!("independent: {}", report.independent);
                    println!("degrees: {} (targets {})", fmt(&report.histogram), fmt(&report.targets));
                    println!("{}", if report.ok() { "PASS" } else { "FAIL" });
                }
                Ok(report.ok())
            }
            BasisAction::Triangular { group, file } => {
                let g = group.group()?;
                let basis = load(&file)?;
                let members = parse_all(&g, &basis.index)?;
                let ip = IndexPoset::bruhat(&g, &members);
                let vectors = basis.vectors();
                let failures = poset_ut_failures(&ip, &vectors)?;
                let order = find_triangular_order(&ip, &vectors)?;
                let independent = linearly_independent(&vectors);
                let labels = |xs: &[usize], names: &[String]| xs.iter().map(|&k| names[k].clone()).collect::<Vec<_>>();
                let class_names: Vec<String> = basis.classes.iter().map(|c| c.label.clone()).collect();
                let failing = labels(&failures, &class_names);
                let order_labels = order.as_ref().map(|o| labels(o, &basis.index));
                if json {
                    print_json(&json!({
                        "independent": independent,
                        "poset_upper_triangular": failures.is_empty(),
                        "poset_failures": failing,
                        "triangular_order": order_labels,
                    }))?;
                } else {
                    println!("independent: {independent}");
                    println!("poset upper-triangular: {}", failures.is_empty());
                    if !failing.is_empty() {
                        println!("failing classes: {}", failing.join(" "));
                    }
                    match order_labels {
                        Some(o) => println!("triangular order: {}", o.join(" ")),
                        None => println!("triangular order: none"),
                    }
                }
                Ok(true)
            }
            BasisAction::Construct { file, order } => {
                let basis = load(&file)?;
                let order: Vec<usize> = match order {
                    Some(labels) => labels
                        .iter()
                        .map(|l| {
                            basis
                                .index
                                .iter()
                                .position(|x| x == l)
                                .with_context(|| format!("`{l}` is not in the index"))
                        })
                        .collect::<anyhow::Result<_>>()?,
                    None => (0..basis.index.len()).collect(),
                };
                let pivots = construct_flowup_basis(&basis.vectors(), &order)?;
                let out = CandidateBasis {
                    index: basis.index.clone(),
                    classes: pivots
                        .into_iter()
                        .map(|p| Candidate {
                            label: basis.index[p.position].clone(),
                            degree: p.vector.0[p.position].degree().unwrap_or(0) as u32,
                            vector: p.vector,
                        })
                        .collect(),
                };
                if json {
                    print_json(&out.to_json())?;
                } else {
                    print_basis(&out);
                }
                Ok(true)
            }
        }
    }
}

fn print_basis(b: &CandidateBasis) {
    let mut header = vec!["class", "degree"];
    header.extend(b.index.iter().map(String::as_str));
    let rows: Vec<Vec<String>> = b
        .classes
        .iter()
        .map(|c| {
            let mut row = vec![c.label.clone(), c.degree.to_string()];
            row.extend(c.vector.0.iter().map(|x| x.pretty()));
            row
        })
        .collect();
    print!("{}", table(&header, &rows));
}
