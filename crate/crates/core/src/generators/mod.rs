//! Builders for the example games: the illustrative 3×3 game, the prisoner's
//! dilemma stage game, the traveler's dilemma, and repeated-game meta-games.

mod repeated;

pub use repeated::{
    default_strategies, gen_repeated_meta, parse_strategy_list, simulate_repeated, Action,
    RepeatedStrategy,
};

use crate::error::{Error, Result};
use crate::game::Game;
use crate::rational::Rational;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn cells(rows: &[[(i64, i64); 3]]) -> Vec<Vec<Rational>> {
    rows.iter()
        .flat_map(|row| {
            row.iter()
                .map(|&(a, b)| vec![Rational::from(a), Rational::from(b)])
        })
        .collect()
}

pub fn gen_figure1() -> Game {
    Game::new(
        "Illustrative game",
        labels(&["Player 1", "Player 2"]),
        vec![
            labels(&["Top", "Middle", "Bottom"]),
            labels(&["Left", "Center", "Right"]),
        ],
        cells(&[
            [(100, 100), (100, 105), (0, 0)],
            [(105, 100), (95, 95), (0, 210)],
            [(0, 0), (210, 0), (5, 5)],
        ]),
    )
    .expect("fixed 3x3 game")
}

pub fn gen_pd_stage() -> Game {
    Game::new(
        "Prisoner's dilemma",
        labels(&["Player 1", "Player 2"]),
        vec![
            labels(&["Cooperate", "Defect"]),
            labels(&["Cooperate", "Defect"]),
        ],
        [(3, 3), (0, 5), (5, 0), (1, 1)]
            .iter()
            .map(|&(a, b)| vec![Rational::from(a), Rational::from(b)])
            .collect(),
    )
    .expect("fixed 2x2 game")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TravelerConfig {
    pub low: i64,
    pub high: i64,
    pub reward: Rational,
}

impl Default for TravelerConfig {
    fn default() -> Self {
        TravelerConfig {
            low: 2,
            high: 100,
            reward: Rational::from(2),
        }
    }
}

impl TravelerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.low >= self.high {
            return Err(Error::validation(format!(
                "traveler range needs low < high, got {}..{}",
                self.low, self.high
            )));
        }
        if self.reward <= Rational::one() {
            return Err(Error::validation(format!(
                "traveler reward must exceed 1, got {}",
                self.reward
            )));
        }
        Ok(())
    }
}

/// Claims `low..=high`, ascending. The lower claim `n` earns `n + r`, the
/// higher claimant gets `n - r`, equal claims pay `n` each.
pub fn gen_traveler(config: &TravelerConfig) -> Result<Game> {
    config.validate()?;
    let claims: Vec<i64> = (config.low..=config.high).collect();
    let names: Vec<String> = claims.iter().map(i64::to_string).collect();
    let r = &config.reward;
    Game::from_fn(
        format!(
            "Traveler's dilemma ({}..{}, r={})",
            config.low, config.high, config.reward
        ),
        labels(&["Player 1", "Player 2"]),
        vec![names.clone(), names],
        |p| {
            let (a, b) = (claims[p[0]], claims[p[1]]);
            let low = Rational::from(a.min(b));
            match a.cmp(&b) {
                std::cmp::Ordering::Equal => vec![low.clone(), low],
                std::cmp::Ordering::Less => vec![&low + r, &low - r],
                std::cmp::Ordering::Greater => vec![&low - r, &low + r],
            }
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn cell(g: &Game, a: &str, b: &str) -> Vec<Rational> {
        g.payoff(&g.profile_of(&[a, b])).unwrap().to_vec()
    }

    #[test]
    fn figure1_cells() {
        let g = gen_figure1();
        assert_eq!(cell(&g, "Middle", "Right"), [q(0), q(210)]);
        assert_eq!(cell(&g, "Bottom", "Center"), [q(210), q(0)]);
        assert_eq!(cell(&g, "Middle", "Center"), [q(95), q(95)]);
    }

    #[test]
    fn pd_cells() {
        let g = gen_pd_stage();
        assert_eq!(cell(&g, "Cooperate", "Cooperate"), [q(3), q(3)]);
        assert_eq!(cell(&g, "Cooperate", "Defect"), [q(0), q(5)]);
        assert_eq!(cell(&g, "Defect", "Defect"), [q(1), q(1)]);
    }

    #[test]
    fn traveler_corner_cells() {
        let g = gen_traveler(&TravelerConfig::default()).unwrap();
        assert_eq!(cell(&g, "100", "99"), [q(97), q(101)]);
        assert_eq!(cell(&g, "3", "2"), [q(0), q(4)]);
        assert_eq!(cell(&g, "100", "100"), [q(100), q(100)]);
        assert_eq!(cell(&g, "99", "100"), [q(101), q(97)]);
        assert_eq!(cell(&g, "100", "3"), [q(1), q(5)]);
        assert_eq!(cell(&g, "100", "2"), [q(0), q(4)]);
        assert_eq!(cell(&g, "3", "100"), [q(5), q(1)]);
        assert_eq!(cell(&g, "3", "3"), [q(3), q(3)]);
        assert_eq!(cell(&g, "2", "100"), [q(4), q(0)]);
        assert_eq!(cell(&g, "2", "3"), [q(4), q(0)]);
        assert_eq!(cell(&g, "2", "2"), [q(2), q(2)]);
        for n in 2..=100 {
            let s = n.to_string();
            assert_eq!(cell(&g, &s, &s), [q(n), q(n)]);
        }
    }

    #[test]
    fn traveler_config_validation() {
        let bad_range = TravelerConfig {
            low: 5,
            high: 5,
            ..Default::default()
        };
        assert!(matches!(
            gen_traveler(&bad_range),
            Err(Error::Validation(_))
        ));
        let bad_reward = TravelerConfig {
            reward: q(1),
            ..Default::default()
        };
        assert!(matches!(
            gen_traveler(&bad_reward),
            Err(Error::Validation(_))
        ));
        let fractional = TravelerConfig {
            low: 1,
            high: 3,
            reward: q((3, 2)),
        };
        let g = gen_traveler(&fractional).unwrap();
        assert_eq!(cell(&g, "1", "3"), [q((5, 2)), q((-1, 2))]);
    }
}
