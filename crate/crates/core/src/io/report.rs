//! Rendering analysis results as JSON, aligned text tables, or CSV.

use std::fmt::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::deviation::{guarantee_table, GuaranteeVector};
use crate::error::{Error, Result};
use crate::game::{Game, PureProfile};
use crate::mixed::{MixedCheck, MixedVerdict};
use crate::rational::Rational;
use crate::solvers::{Maximin, OptiminMode, SolveReport, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Json,
    Table,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "table" => Ok(ReportFormat::Table),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::validation(format!(
                "unknown report format {other:?}"
            ))),
        }
    }
}

/// Whatever analyses were run on one game; absent sections are omitted.
#[derive(Debug, Clone)]
pub struct Report<'a> {
    pub game: &'a Game,
    pub mode: OptiminMode,
    pub guarantees: Option<Vec<GuaranteeVector>>,
    pub optimin: Option<Vec<GuaranteeVector>>,
    pub nash: Option<Vec<PureProfile>>,
    pub maximin: Option<Vec<Maximin>>,
    pub super_nash: Option<SolveReport>,
    pub mixed: Option<MixedCheck>,
}

impl<'a> Report<'a> {
    pub fn new(game: &'a Game, mode: OptiminMode) -> Self {
        Report {
            game,
            mode,
            guarantees: None,
            optimin: None,
            nash: None,
            maximin: None,
            super_nash: None,
            mixed: None,
        }
    }
}

pub fn serialize_report(report: &Report<'_>, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => render_json(report),
        ReportFormat::Table => render_table(report),
        ReportFormat::Csv => render_csv(report),
    }
}

// ---- json ----

#[derive(Serialize)]
struct ProfileJson {
    index: usize,
    profile: PureProfile,
    labels: Vec<String>,
    payoffs: Vec<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    guarantees: Option<Vec<Rational>>,
}

#[derive(Serialize)]
struct MaximinJson {
    player: String,
    value: Rational,
    strategies: Vec<String>,
}

#[derive(Serialize)]
struct VerdictJson {
    nash: ProfileJson,
    witness_optimin: Option<ProfileJson>,
    componentwise_ok: bool,
    strict_for_all: bool,
}

#[derive(Serialize)]
struct SuperNashJson {
    holds: bool,
    strict: bool,
    vacuous: bool,
    verdicts: Vec<VerdictJson>,
    violations: Vec<Violation>,
}

#[derive(Serialize)]
struct MixedJson<'r> {
    holds: bool,
    degenerate: bool,
    verdicts: &'r [MixedVerdict],
}

#[derive(Serialize)]
struct ReportJson<'r> {
    title: &'r str,
    players: &'r [String],
    mode: OptiminMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    guarantees: Option<Vec<ProfileJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    optimin: Option<Vec<ProfileJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nash: Option<Vec<ProfileJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    maximin: Option<Vec<MaximinJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    super_nash: Option<SuperNashJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mixed: Option<MixedJson<'r>>,
}

fn profile_json(
    game: &Game,
    profile: &PureProfile,
    guarantees: Option<&[Rational]>,
) -> ProfileJson {
    ProfileJson {
        index: game.profile_index(profile),
        profile: profile.clone(),
        labels: profile
            .indices()
            .iter()
            .enumerate()
            .map(|(i, &s)| game.strategy_labels(i)[s].clone())
            .collect(),
        payoffs: game
            .payoff(profile)
            .expect("profile from this game")
            .to_vec(),
        guarantees: guarantees.map(<[Rational]>::to_vec),
    }
}

fn render_json(report: &Report<'_>) -> String {
    let game = report.game;
    let with_g = |list: &Vec<GuaranteeVector>| {
        list.iter()
            .map(|g| profile_json(game, &g.profile, Some(&g.values)))
            .collect()
    };
    let doc = ReportJson {
        title: game.title(),
        players: game.player_names(),
        mode: report.mode,
        guarantees: report.guarantees.as_ref().map(with_g),
        optimin: report.optimin.as_ref().map(with_g),
        nash: report
            .nash
            .as_ref()
            .map(|n| n.iter().map(|p| profile_json(game, p, None)).collect()),
        maximin: report.maximin.as_ref().map(|m| {
            m.iter()
                .map(|m| MaximinJson {
                    player: game.player_names()[m.player].clone(),
                    value: m.value.clone(),
                    strategies: m
                        .strategies
                        .iter()
                        .map(|&s| game.strategy_labels(m.player)[s].clone())
                        .collect(),
                })
                .collect()
        }),
        super_nash: report.super_nash.as_ref().map(|r| SuperNashJson {
            holds: r.holds(),
            strict: r.strict(),
            vacuous: r.vacuous,
            verdicts: r
                .super_nash_verdicts
                .iter()
                .map(|v| VerdictJson {
                    nash: profile_json(game, &v.nash, None),
                    witness_optimin: v
                        .witness_optimin
                        .as_ref()
                        .map(|w| profile_json(game, &w.profile, Some(&w.values))),
                    componentwise_ok: v.componentwise_ok,
                    strict_for_all: v.strict_for_all,
                })
                .collect(),
            violations: r.violations.clone(),
        }),
        mixed: report.mixed.as_ref().map(|m| MixedJson {
            holds: m.holds(),
            degenerate: m.degenerate,
            verdicts: &m.verdicts,
        }),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}

// ---- table ----

fn tuple(values: &[Rational]) -> String {
    let parts: Vec<String> = values.iter().map(Rational::to_string).collect();
    format!("({})", parts.join(","))
}

/// Row labels down the side, column labels across the top, one `(g1,g2)`
/// per cell.
fn guarantee_matrix(game: &Game, table: &[GuaranteeVector]) -> String {
    let rows = game.strategy_labels(0);
    let cols = game.strategy_labels(1);
    let cells: Vec<String> = table.iter().map(|g| tuple(&g.values)).collect();
    let label_w = rows.iter().map(|r| r.chars().count()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols.len())
        .map(|c| {
            (0..rows.len())
                .map(|r| cells[r * cols.len() + c].chars().count())
                .chain(std::iter::once(cols[c].chars().count()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    let _ = write!(out, "{:label_w$}", "");
    for (c, w) in cols.iter().zip(&widths) {
        let _ = write!(out, " | {c:^w$}");
    }
    out.push_str(" |\n");
    for (r, label) in rows.iter().enumerate() {
        let _ = write!(out, "{label:>label_w$}");
        for (c, w) in widths.iter().enumerate() {
            let _ = write!(out, " | {:^w$}", cells[r * cols.len() + c]);
        }
        out.push_str(" |\n");
    }
    out
}

fn render_table(report: &Report<'_>) -> String {
    let game = report.game;
    let mut out = String::new();
    let _ = writeln!(out, "{}", game.title());
    if let Some(table) = &report.guarantees {
        let _ = writeln!(
            out,
            "\nGuarantees (minimal payoffs under profitable deviations):"
        );
        if game.num_players() == 2 {
            out.push_str(&guarantee_matrix(game, table));
        } else {
            for g in table {
                let _ = writeln!(
                    out,
                    "  {}  {}",
                    game.profile_label(&g.profile),
                    tuple(&g.values)
                );
            }
        }
    }
    if let Some(optimin) = &report.optimin {
        let _ = writeln!(out, "\nOptimin ({} mode):", report.mode);
        if optimin.is_empty() {
            let _ = writeln!(out, "  none");
        }
        for g in optimin {
            let _ = writeln!(
                out,
                "  {}  guarantees {}",
                game.profile_label(&g.profile),
                tuple(&g.values)
            );
        }
    }
    if let Some(nash) = &report.nash {
        let _ = writeln!(out, "\nPure Nash equilibria:");
        if nash.is_empty() {
            let _ = writeln!(out, "  none");
        }
        for p in nash {
            let payoff = game.payoff(p).expect("profile from this game");
            let _ = writeln!(
                out,
                "  {}  payoffs {}",
                game.profile_label(p),
                tuple(payoff)
            );
        }
    }
    if let Some(maximin) = &report.maximin {
        let _ = writeln!(out, "\nMaximin:");
        for m in maximin {
            let labels: Vec<&str> = m
                .strategies
                .iter()
                .map(|&s| game.strategy_labels(m.player)[s].as_str())
                .collect();
            let _ = writeln!(
                out,
                "  {}: value {}, strategies {}",
                game.player_names()[m.player],
                m.value,
                labels.join(", ")
            );
        }
    }
    if let Some(r) = &report.super_nash {
        let verdict = if !r.holds() {
            "VIOLATED"
        } else if r.vacuous {
            "holds vacuously (no pure Nash equilibrium)"
        } else if r.strict() {
            "holds strictly"
        } else {
            "holds"
        };
        let _ = writeln!(out, "\nSuper-Nash check ({} mode): {verdict}", r.mode);
        for v in &r.super_nash_verdicts {
            let witness = match &v.witness_optimin {
                Some(w) => format!(
                    "{} guarantees {}",
                    game.profile_label(&w.profile),
                    tuple(&w.values)
                ),
                None => "no optimin witness".to_owned(),
            };
            let _ = writeln!(
                out,
                "  Nash {} payoffs {} -> {witness}{}",
                game.profile_label(&v.nash),
                tuple(&v.nash_payoffs),
                if v.strict_for_all { " (strict)" } else { "" }
            );
        }
        for violation in &r.violations {
            let _ = writeln!(out, "  violation: {}", describe(game, violation));
        }
    }
    if let Some(m) = &report.mixed {
        let _ = writeln!(
            out,
            "\nMixed equilibria: {}{}",
            if m.holds() {
                "guarantee equals payoff at every equilibrium"
            } else {
                "VIOLATED"
            },
            if m.degenerate {
                " (degenerate game; list may be incomplete)"
            } else {
                ""
            }
        );
        for v in &m.verdicts {
            let dists: Vec<String> = v
                .equilibrium
                .distributions()
                .iter()
                .map(|d| tuple(d))
                .collect();
            let _ = writeln!(
                out,
                "  {}  payoffs {}  guarantees {}",
                dists.join(" x "),
                tuple(&v.payoffs),
                tuple(&v.guarantees)
            );
        }
    }
    out
}

fn describe(game: &Game, v: &Violation) -> String {
    match v {
        Violation::NoWitness { nash } => {
            format!(
                "no optimin guarantees the payoffs of Nash {}",
                game.profile_label(nash)
            )
        }
        Violation::ParetoDominated { nash, optimin } => format!(
            "Nash {} Pareto-dominates optimin {}",
            game.profile_label(nash),
            game.profile_label(optimin)
        ),
        Violation::NashGuaranteeMismatch { nash } => format!(
            "guarantee at Nash {} differs from its payoffs",
            game.profile_label(nash)
        ),
    }
}

// ---- csv ----

fn render_csv(report: &Report<'_>) -> String {
    let game = report.game;
    let computed;
    let table = match &report.guarantees {
        Some(t) => t,
        None => {
            computed = guarantee_table(game, 1);
            &computed
        }
    };
    let names = game.player_names();
    let mut header = vec!["index".to_owned()];
    header.extend(names.iter().cloned());
    header.extend(names.iter().map(|n| format!("payoff {n}")));
    header.extend(names.iter().map(|n| format!("guarantee {n}")));
    if report.optimin.is_some() {
        header.push("optimin".to_owned());
    }
    if report.nash.is_some() {
        header.push("nash".to_owned());
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for (index, g) in table.iter().enumerate() {
        let mut row = vec![index.to_string()];
        row.extend(
            g.profile
                .indices()
                .iter()
                .enumerate()
                .map(|(i, &s)| game.strategy_labels(i)[s].clone()),
        );
        row.extend(
            game.payoff(&g.profile)
                .expect("own profile")
                .iter()
                .map(Rational::to_string),
        );
        row.extend(g.values.iter().map(Rational::to_string));
        if let Some(o) = &report.optimin {
            row.push(o.iter().any(|x| x.profile == g.profile).to_string());
        }
        if let Some(n) = &report.nash {
            row.push(n.contains(&g.profile).to_string());
        }
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_figure1;
    use crate::solvers::{optimin_pure, pure_nash};

    fn figure1_report(game: &Game) -> Report<'_> {
        let mut r = Report::new(game, OptiminMode::Pareto);
        r.guarantees = Some(guarantee_table(game, 1));
        r.optimin = Some(optimin_pure(game, OptiminMode::Pareto));
        r.nash = Some(pure_nash(game));
        r
    }

    #[test]
    fn figure1_guarantee_matrix_layout() {
        let g = gen_figure1();
        let text = guarantee_matrix(&g, &guarantee_table(&g, 1));
        let expected = "       |   Left    | Center  | Right |\n\
                        \x20  Top | (100,100) | (100,0) | (0,0) |\n\
                        Middle |  (0,100)  |  (0,0)  | (0,5) |\n\
                        Bottom |   (0,0)   |  (5,0)  | (5,5) |\n";
        assert_eq!(text, expected);
    }

    #[test]
    fn table_lists_sections() {
        let g = gen_figure1();
        let text = serialize_report(&figure1_report(&g), ReportFormat::Table);
        assert!(text.contains("(Top, Left)  guarantees (100,100)"));
        assert!(text.contains("(Bottom, Right)  payoffs (5,5)"));
    }

    #[test]
    fn csv_has_one_row_per_profile() {
        let g = gen_figure1();
        let text = serialize_report(&figure1_report(&g), ReportFormat::Csv);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 10);
        assert_eq!(
            lines[0],
            "index,Player 1,Player 2,payoff Player 1,payoff Player 2,\
             guarantee Player 1,guarantee Player 2,optimin,nash"
        );
        assert_eq!(lines[1], "0,Top,Left,100,100,100,100,true,false");
        assert_eq!(lines[9], "8,Bottom,Right,5,5,5,5,false,true");
    }

    #[test]
    fn json_sections_are_optional() {
        let g = gen_figure1();
        let mut r = Report::new(&g, OptiminMode::Pareto);
        r.optimin = Some(optimin_pure(&g, OptiminMode::Pareto));
        let v: serde_json::Value =
            serde_json::from_str(&serialize_report(&r, ReportFormat::Json)).unwrap();
        assert!(v.get("nash").is_none());
        assert_eq!(
            v["optimin"][0]["labels"],
            serde_json::json!(["Top", "Left"])
        );
        assert_eq!(
            v["optimin"][0]["guarantees"],
            serde_json::json!(["100", "100"])
        );
    }
}
