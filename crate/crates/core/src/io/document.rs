//! JSON game documents.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "index_order": "row-major, player 1 index slowest",
//!   "title": "Prisoner's dilemma",
//!   "players": ["Player 1","Player 2"],
//!   "strategies": [
//!     ["Cooperate","Defect"],
//!     ["Cooperate","Defect"]
//!   ],
//!   "payoffs": [
//!     ["3","3"],
//!     ["0","5"],
//!     ["5","0"],
//!     ["1","1"]
//!   ]
//! }
//! ```
//!
//! `payoffs` lists one cell per pure profile, row-major with player 1's index
//! slowest; each cell holds one canonical rational string per player.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::Game;
use crate::rational::Rational;

pub const SCHEMA_VERSION: u32 = 1;
pub const INDEX_ORDER: &str = "row-major, player 1 index slowest";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDocument {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_order: Option<String>,
    pub title: String,
    pub players: Vec<String>,
    pub strategies: Vec<Vec<String>>,
    pub payoffs: Vec<Vec<String>>,
}

impl GameDocument {
    pub fn from_game(game: &Game) -> Self {
        GameDocument {
            schema_version: SCHEMA_VERSION,
            index_order: Some(INDEX_ORDER.to_owned()),
            title: game.title().to_owned(),
            players: game.player_names().to_vec(),
            strategies: game.all_strategy_labels().to_vec(),
            payoffs: game
                .raw_payoffs()
                .chunks(game.num_players())
                .map(|cell| cell.iter().map(Rational::to_string).collect())
                .collect(),
        }
    }

    pub fn into_game(self) -> Result<Game> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::parse(
                "schema_version",
                format!(
                    "unsupported schema version {} (expected {SCHEMA_VERSION})",
                    self.schema_version
                ),
            ));
        }
        if let Some(order) = &self.index_order {
            if order != INDEX_ORDER {
                return Err(Error::parse(
                    "index_order",
                    format!("unsupported index order {order:?} (expected {INDEX_ORDER:?})"),
                ));
            }
        }
        let n = self.players.len();
        if n == 0 {
            return Err(Error::parse("players", "a game needs at least one player"));
        }
        if self.strategies.len() != n {
            return Err(Error::parse(
                "strategies",
                format!("{} strategy lists for {n} players", self.strategies.len()),
            ));
        }
        if let Some(i) = self.strategies.iter().position(Vec::is_empty) {
            return Err(Error::parse(
                format!("strategies[{i}]"),
                "empty strategy list",
            ));
        }
        let expected = self
            .strategies
            .iter()
            .try_fold(1usize, |acc, s| acc.checked_mul(s.len()))
            .ok_or_else(|| Error::parse("strategies", "profile space too large"))?;
        if self.payoffs.len() != expected {
            return Err(Error::parse(
                "payoffs",
                format!(
                    "dimension mismatch: expected {expected} cells, found {}",
                    self.payoffs.len()
                ),
            ));
        }
        let mut cells = Vec::with_capacity(expected);
        for (c, cell) in self.payoffs.iter().enumerate() {
            if cell.len() != n {
                return Err(Error::parse(
                    format!("payoffs[{c}]"),
                    format!(
                        "dimension mismatch: expected {n} payoffs, found {}",
                        cell.len()
                    ),
                ));
            }
            let parsed = cell
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    Rational::parse_canonical(s)
                        .map_err(|e| Error::parse(format!("payoffs[{c}][{i}]"), e.to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            cells.push(parsed);
        }
        Game::new(self.title, self.players, self.strategies, cells)
            .map_err(|e| Error::parse("$", e.to_string()))
    }
}

pub fn parse_game(text: &str) -> Result<Game> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: GameDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." || path == "?" {
            "$".to_owned()
        } else {
            path
        };
        Error::parse(path, e.into_inner().to_string())
    })?;
    doc.into_game()
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("strings always serialize")
}

fn write_rows(out: &mut String, key: &str, rows: &[Vec<String>], last: bool) {
    let _ = writeln!(out, "  {}: [", json(key));
    for (k, row) in rows.iter().enumerate() {
        let sep = if k + 1 < rows.len() { "," } else { "" };
        let _ = writeln!(out, "    {}{sep}", json(row));
    }
    let _ = writeln!(out, "  ]{}", if last { "" } else { "," });
}

/// Canonical text for a game: one payoff cell per line.
pub fn serialize_game(game: &Game) -> String {
    let doc = GameDocument::from_game(game);
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"schema_version\": {},", doc.schema_version);
    if let Some(order) = &doc.index_order {
        let _ = writeln!(out, "  \"index_order\": {},", json(order));
    }
    let _ = writeln!(out, "  \"title\": {},", json(&doc.title));
    let _ = writeln!(out, "  \"players\": {},", json(&doc.players));
    write_rows(&mut out, "strategies", &doc.strategies, false);
    write_rows(&mut out, "payoffs", &doc.payoffs, true);
    out.push_str("}\n");
    out
}
