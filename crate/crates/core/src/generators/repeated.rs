//! Finitely repeated 2×2 games and their normal-form meta-games.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::game::Game;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    Cooperate,
    Defect,
}

impl Action {
    /// Strategy index in the stage game.
    pub fn index(self) -> usize {
        match self {
            Action::Cooperate => 0,
            Action::Defect => 1,
        }
    }
}

/// `(round, horizon, opponent_history) -> action`, rounds counted from 1.
pub type DecisionRule = dyn Fn(usize, usize, &[Action]) -> Action + Send + Sync;

/// A deterministic strategy for the repeated game.
#[derive(Clone)]
pub struct RepeatedStrategy {
    name: String,
    rule: Arc<DecisionRule>,
}

impl fmt::Debug for RepeatedStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("RepeatedStrategy").field(&self.name).finish()
    }
}

impl RepeatedStrategy {
    pub fn new<F>(name: impl Into<String>, rule: F) -> Self
    where
        F: Fn(usize, usize, &[Action]) -> Action + Send + Sync + 'static,
    {
        RepeatedStrategy {
            name: name.into(),
            rule: Arc::new(rule),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn decide(&self, round: usize, horizon: usize, opponent: &[Action]) -> Action {
        (self.rule)(round, horizon, opponent)
    }

    pub fn all_cooperate() -> Self {
        Self::new("AllC", |_, _, _| Action::Cooperate)
    }

    pub fn all_defect() -> Self {
        Self::new("AllD", |_, _, _| Action::Defect)
    }

    pub fn tit_for_tat() -> Self {
        Self::new("TFT", |_, _, opp| {
            opp.last().copied().unwrap_or(Action::Cooperate)
        })
    }

    pub fn grim_trigger() -> Self {
        Self::new("Grim", |_, _, opp| {
            if opp.contains(&Action::Defect) {
                Action::Defect
            } else {
                Action::Cooperate
            }
        })
    }

    /// Tit-for-Tat through round `T - k`, then defect in the last `k` rounds.
    pub fn end_defector(k: usize) -> Self {
        Self::new(format!("EndDefector({k})"), move |round, horizon, opp| {
            if round + k > horizon {
                Action::Defect
            } else {
                opp.last().copied().unwrap_or(Action::Cooperate)
            }
        })
    }
}

impl FromStr for RepeatedStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "AllC" => Ok(Self::all_cooperate()),
            "AllD" => Ok(Self::all_defect()),
            "TFT" | "TitForTat" => Ok(Self::tit_for_tat()),
            "Grim" | "GrimTrigger" => Ok(Self::grim_trigger()),
            _ => {
                let k = s
                    .strip_prefix("EndDefector(")
                    .and_then(|rest| rest.strip_suffix(')'))
                    .and_then(|k| k.parse::<usize>().ok())
                    .ok_or_else(|| Error::validation(format!("unknown strategy {s:?}")))?;
                Ok(Self::end_defector(k))
            }
        }
    }
}

/// Parses a comma-separated list such as `AllC,AllD,TFT,Grim,EndDefector(1)`.
pub fn parse_strategy_list(list: &str) -> Result<Vec<RepeatedStrategy>> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// AllC, AllD, TFT, Grim and EndDefector(1).
pub fn default_strategies() -> Vec<RepeatedStrategy> {
    vec![
        RepeatedStrategy::all_cooperate(),
        RepeatedStrategy::all_defect(),
        RepeatedStrategy::tit_for_tat(),
        RepeatedStrategy::grim_trigger(),
        RepeatedStrategy::end_defector(1),
    ]
}

fn check_stage(stage: &Game) -> Result<()> {
    if stage.num_players() != 2 || stage.shape() != [2, 2] {
        return Err(Error::validation(format!(
            "repeated play needs a 2x2 stage game, got shape {:?}",
            stage.shape()
        )));
    }
    Ok(())
}

/// Undiscounted payoff totals over `rounds` rounds.
pub fn simulate_repeated(
    stage: &Game,
    first: &RepeatedStrategy,
    second: &RepeatedStrategy,
    rounds: usize,
) -> Result<(Rational, Rational)> {
    check_stage(stage)?;
    if rounds == 0 {
        return Err(Error::validation("repeated game needs at least one round"));
    }
    let mut seen_by_first = Vec::with_capacity(rounds);
    let mut seen_by_second = Vec::with_capacity(rounds);
    let (mut total1, mut total2) = (Rational::zero(), Rational::zero());
    for round in 1..=rounds {
        let a = first.decide(round, rounds, &seen_by_first);
        let b = second.decide(round, rounds, &seen_by_second);
        let cell = stage.cell(a.index() * 2 + b.index());
        total1 += &cell[0];
        total2 += &cell[1];
        seen_by_first.push(b);
        seen_by_second.push(a);
    }
    Ok((total1, total2))
}

/// The normal-form game whose strategies are `strategies` and whose payoffs
/// are repeated-play totals for every ordered pair.
pub fn gen_repeated_meta(
    stage: &Game,
    strategies: &[RepeatedStrategy],
    rounds: usize,
) -> Result<Game> {
    check_stage(stage)?;
    if strategies.len() < 2 {
        return Err(Error::validation(
            "a meta-game needs at least two strategies",
        ));
    }
    let m = strategies.len();
    let mut cells = Vec::with_capacity(m * m);
    for a in strategies {
        for b in strategies {
            let (x, y) = simulate_repeated(stage, a, b, rounds)?;
            cells.push(vec![x, y]);
        }
    }
    let names: Vec<String> = strategies.iter().map(|s| s.name().to_owned()).collect();
    Game::new(
        format!("{} repeated {rounds} times", stage.title()),
        stage.player_names().to_vec(),
        vec![names.clone(), names],
        cells,
    )
}
