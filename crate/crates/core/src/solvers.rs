//! Optimin points, pure Nash equilibria, pure maximin values, and the
//! super-Nash checker built on them.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::deviation::GuaranteeVector;
use crate::engine::{dominates, pareto_front, simultaneous_front, with_view, View};
use crate::error::{Error, Result};
use crate::game::{Game, PureProfile};
use crate::rational::Rational;

/// How "maximise every player's guarantee" is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OptiminMode {
    /// Guarantee vectors not Pareto-dominated by any other profile's.
    #[default]
    Pareto,
    /// Profiles attaining every player's maximal guarantee at once; may be empty.
    Simultaneous,
}

impl fmt::Display for OptiminMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OptiminMode::Pareto => "pareto",
            OptiminMode::Simultaneous => "simultaneous",
        })
    }
}

impl FromStr for OptiminMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pareto" => Ok(OptiminMode::Pareto),
            "simultaneous" => Ok(OptiminMode::Simultaneous),
            other => Err(Error::validation(format!("unknown optimin mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Maximin {
    pub player: usize,
    pub value: Rational,
    pub strategies: Vec<usize>,
}

pub fn optimin_pure(game: &Game, mode: OptiminMode) -> Vec<GuaranteeVector> {
    optimin_pure_with(game, mode, 1)
}

pub fn optimin_pure_with(game: &Game, mode: OptiminMode, jobs: usize) -> Vec<GuaranteeVector> {
    with_view!(game, |view, conv| {
        let table = view.guarantee_table(jobs);
        select(&table, mode)
            .into_iter()
            .map(|cell| GuaranteeVector {
                profile: game.profile_at(cell),
                values: table[cell].iter().map(conv).collect(),
            })
            .collect()
    })
}

fn select<T: Ord, V: AsRef<[T]>>(vectors: &[V], mode: OptiminMode) -> Vec<usize> {
    match mode {
        OptiminMode::Pareto => pareto_front(vectors),
        OptiminMode::Simultaneous => simultaneous_front(vectors),
    }
}

/// Selects optimin profiles from a precomputed guarantee table.
pub fn optimin_from_table(table: &[GuaranteeVector], mode: OptiminMode) -> Vec<GuaranteeVector> {
    let vectors: Vec<&[Rational]> = table.iter().map(|g| g.values.as_slice()).collect();
    select(&vectors, mode)
        .into_iter()
        .map(|k| table[k].clone())
        .collect()
}

pub fn pure_nash(game: &Game) -> Vec<PureProfile> {
    pure_nash_with(game, 1)
}

pub fn pure_nash_with(game: &Game, jobs: usize) -> Vec<PureProfile> {
    let cells = with_view!(game, |view, _conv| view.nash_cells(jobs));
    cells.into_iter().map(|c| game.profile_at(c)).collect()
}

pub fn maximin_pure(game: &Game, player: usize) -> Result<Maximin> {
    game.check_player(player)?;
    let (value, strategies) = with_view!(game, |view, conv| {
        let (v, s) = view.maximin(player);
        (conv(&v), s)
    });
    Ok(Maximin {
        player,
        value,
        strategies,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuperNashVerdict {
    pub nash: PureProfile,
    pub nash_payoffs: Vec<Rational>,
    /// An optimin profile whose guarantees weakly exceed the Nash payoffs;
    /// one with strict excess for every player is preferred.
    pub witness_optimin: Option<GuaranteeVector>,
    pub componentwise_ok: bool,
    pub strict_for_all: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// No optimin profile guarantees at least this equilibrium's payoffs.
    NoWitness { nash: PureProfile },
    /// The equilibrium's payoffs Pareto-dominate the optimin profile's payoffs.
    ParetoDominated {
        nash: PureProfile,
        optimin: PureProfile,
    },
    /// The guarantee at an equilibrium differs from its payoff vector.
    NashGuaranteeMismatch { nash: PureProfile },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub mode: OptiminMode,
    pub optimin_profiles: Vec<GuaranteeVector>,
    pub nash_profiles: Vec<PureProfile>,
    pub maximin_values: Vec<Rational>,
    pub super_nash_verdicts: Vec<SuperNashVerdict>,
    pub violations: Vec<Violation>,
    /// True when the game has no pure equilibrium, so the check holds trivially.
    pub vacuous: bool,
}

impl SolveReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    /// At least one equilibrium exists and every one is strictly beaten by
    /// some optimin guarantee.
    pub fn strict(&self) -> bool {
        !self.vacuous && self.super_nash_verdicts.iter().all(|v| v.strict_for_all)
    }
}

pub fn check_super_nash(game: &Game, mode: OptiminMode) -> SolveReport {
    check_super_nash_with(game, mode, 1)
}

pub fn check_super_nash_with(game: &Game, mode: OptiminMode, jobs: usize) -> SolveReport {
    with_view!(game, |view, conv| check_on_view(
        game, &view, conv, mode, jobs
    ))
}

fn check_on_view<T, F>(
    game: &Game,
    view: &View<'_, T>,
    conv: F,
    mode: OptiminMode,
    jobs: usize,
) -> SolveReport
where
    T: Ord + Clone + Send + Sync,
    F: Fn(&T) -> Rational,
{
    let n = game.num_players();
    let table = view.guarantee_table(jobs);
    let optimin_cells = select(&table, mode);
    let nash_cells = view.nash_cells(jobs);
    let payoff_keys =
        |cell: usize| -> Vec<T> { (0..n).map(|i| view.at(cell, i).clone()).collect() };
    let to_vector = |cell: usize| GuaranteeVector {
        profile: game.profile_at(cell),
        values: table[cell].iter().map(&conv).collect(),
    };

    let mut violations = Vec::new();
    let mut verdicts = Vec::with_capacity(nash_cells.len());
    for &q in &nash_cells {
        let nash = game.profile_at(q);
        let payoffs = payoff_keys(q);
        if table[q] != payoffs {
            violations.push(Violation::NashGuaranteeMismatch { nash: nash.clone() });
        }
        let weak = |c: &usize| table[*c].iter().zip(&payoffs).all(|(a, b)| a >= b);
        let strict = |c: &usize| table[*c].iter().zip(&payoffs).all(|(a, b)| a > b);
        let witness = optimin_cells
            .iter()
            .find(|c| strict(c))
            .or_else(|| optimin_cells.iter().find(|c| weak(c)))
            .copied();
        if witness.is_none() {
            violations.push(Violation::NoWitness { nash: nash.clone() });
        }
        for &o in &optimin_cells {
            if dominates(&payoffs, &payoff_keys(o)) {
                violations.push(Violation::ParetoDominated {
                    nash: nash.clone(),
                    optimin: game.profile_at(o),
                });
            }
        }
        verdicts.push(SuperNashVerdict {
            nash,
            nash_payoffs: game.cell(q).to_vec(),
            componentwise_ok: witness.is_some(),
            strict_for_all: witness.as_ref().is_some_and(strict),
            witness_optimin: witness.map(to_vector),
        });
    }

    SolveReport {
        mode,
        optimin_profiles: optimin_cells.iter().map(|&c| to_vector(c)).collect(),
        vacuous: nash_cells.is_empty(),
        nash_profiles: nash_cells.iter().map(|&c| game.profile_at(c)).collect(),
        maximin_values: (0..n).map(|i| conv(&view.maximin(i).0)).collect(),
        super_nash_verdicts: verdicts,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::game_from_ints;
    use crate::generators::{gen_figure1, gen_pd_stage, gen_traveler, TravelerConfig};
    use crate::rational::q;

    fn matching_pennies() -> Game {
        game_from_ints(
            &[2, 2],
            &[vec![1, -1], vec![-1, 1], vec![-1, 1], vec![1, -1]],
        )
        .unwrap()
    }

    #[test]
    fn figure1_optimin_both_modes() {
        let g = gen_figure1();
        for mode in [OptiminMode::Pareto, OptiminMode::Simultaneous] {
            let o = optimin_pure(&g, mode);
            assert_eq!(o.len(), 1);
            assert_eq!(o[0].profile, g.profile_of(&["Top", "Left"]));
            assert_eq!(o[0].values, vec![q(100), q(100)]);
        }
    }

    #[test]
    fn pd_optimin_is_mutual_defection() {
        let g = gen_pd_stage();
        for mode in [OptiminMode::Pareto, OptiminMode::Simultaneous] {
            let o = optimin_pure(&g, mode);
            assert_eq!(
                o.iter().map(|g| g.profile.clone()).collect::<Vec<_>>(),
                vec![PureProfile::from([1, 1])]
            );
        }
    }

    #[test]
    fn traveler_r2_optimin_is_highest_pair() {
        let g = gen_traveler(&TravelerConfig::default()).unwrap();
        let o = optimin_pure(&g, OptiminMode::Pareto);
        assert_eq!(o.len(), 1);
        assert_eq!(g.profile_label(&o[0].profile), "(100, 100)");
        assert_eq!(o[0].values, vec![q(97), q(97)]);
    }

    #[test]
    fn nash_sets() {
        let g = gen_figure1();
        assert_eq!(pure_nash(&g), vec![g.profile_of(&["Bottom", "Right"])]);
        assert!(pure_nash(&matching_pennies()).is_empty());
        for r in [2, 3, 10, 75] {
            let t = gen_traveler(&TravelerConfig {
                reward: q(r),
                ..Default::default()
            })
            .unwrap();
            assert_eq!(pure_nash(&t), vec![t.profile_of(&["2", "2"])]);
        }
    }

    #[test]
    fn maximin_examples() {
        let g = gen_figure1();
        for i in 0..2 {
            let m = maximin_pure(&g, i).unwrap();
            assert_eq!(m.value, q(0));
            assert_eq!(m.strategies, vec![0, 1, 2]);
        }
        let pd = maximin_pure(&gen_pd_stage(), 0).unwrap();
        assert_eq!((pd.value, pd.strategies), (q(1), vec![1]));
        let one = game_from_ints(&[1, 1], &[vec![7, -2]]).unwrap();
        assert_eq!(maximin_pure(&one, 1).unwrap().value, q(-2));
        assert!(maximin_pure(&one, 2).is_err());
    }

    #[test]
    fn check_figure1_is_strict() {
        let g = gen_figure1();
        let r = check_super_nash(&g, OptiminMode::Pareto);
        assert!(r.holds() && r.strict() && !r.vacuous);
        let v = &r.super_nash_verdicts[0];
        assert_eq!(v.nash_payoffs, vec![q(5), q(5)]);
        let w = v.witness_optimin.as_ref().unwrap();
        assert_eq!(w.profile, g.profile_of(&["Top", "Left"]));
        assert_eq!(w.values, vec![q(100), q(100)]);
    }

    #[test]
    fn check_pd_is_equality_case() {
        let r = check_super_nash(&gen_pd_stage(), OptiminMode::Pareto);
        let v = &r.super_nash_verdicts[0];
        assert_eq!(v.nash_payoffs, vec![q(1), q(1)]);
        assert_eq!(
            v.witness_optimin.as_ref().unwrap().profile,
            PureProfile::from([1, 1])
        );
        assert!(v.componentwise_ok && !v.strict_for_all);
        assert!(r.holds() && !r.strict());
    }

    #[test]
    fn check_traveler_witness() {
        let g = gen_traveler(&TravelerConfig::default()).unwrap();
        let r = check_super_nash(&g, OptiminMode::Pareto);
        let v = &r.super_nash_verdicts[0];
        assert_eq!(v.nash_payoffs, vec![q(2), q(2)]);
        assert_eq!(
            v.witness_optimin.as_ref().unwrap().values,
            vec![q(97), q(97)]
        );
        assert!(v.strict_for_all);
    }

    #[test]
    fn matching_pennies_check_is_vacuous() {
        let r = check_super_nash(&matching_pennies(), OptiminMode::Pareto);
        assert!(r.vacuous && r.holds() && !r.strict());
    }

    #[test]
    fn degenerate_game_is_everything_at_once() {
        let g = game_from_ints(&[1, 1, 1], &[vec![3, -1, 0]]).unwrap();
        let r = check_super_nash(&g, OptiminMode::Simultaneous);
        assert_eq!(r.nash_profiles, vec![PureProfile::from([0, 0, 0])]);
        assert_eq!(r.optimin_profiles.len(), 1);
        assert_eq!(r.maximin_values, vec![q(3), q(-1), q(0)]);
        assert!(r.super_nash_verdicts[0].componentwise_ok);
        assert!(!r.super_nash_verdicts[0].strict_for_all);
    }

    #[test]
    fn simultaneous_mode_can_be_empty() {
        // Battle of the sexes: each player's best guarantee sits on a different equilibrium.
        let g = game_from_ints(&[2, 2], &[vec![2, 1], vec![0, 0], vec![0, 0], vec![1, 2]]).unwrap();
        assert!(optimin_pure(&g, OptiminMode::Simultaneous).is_empty());
        let pareto: Vec<_> = optimin_pure(&g, OptiminMode::Pareto)
            .into_iter()
            .map(|g| g.profile)
            .collect();
        assert_eq!(
            pareto,
            vec![PureProfile::from([0, 0]), PureProfile::from([1, 1])]
        );
    }

    #[test]
    fn mode_parsing() {
        assert_eq!(
            "pareto".parse::<OptiminMode>().unwrap(),
            OptiminMode::Pareto
        );
        assert_eq!(
            "simultaneous".parse::<OptiminMode>().unwrap(),
            OptiminMode::Simultaneous
        );
        assert!("nash".parse::<OptiminMode>().is_err());
    }
}
