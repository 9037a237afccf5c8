//! Mixed strategies in two-player games: support-enumeration equilibria and
//! guarantee values under mixed profitable deviations.

mod linsolve;
pub mod simplex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{Game, MixedProfile};
use crate::rational::Rational;
use linsolve::Solution;
pub use simplex::{simplex_solve, Constraint, LinearProgram, LpOutcome, Sense};

pub const DEFAULT_SUPPORT_CAP: usize = 6;

fn require_two_players(game: &Game) -> Result<()> {
    if game.num_players() != 2 {
        return Err(Error::Unsupported(format!(
            "mixed analysis needs exactly 2 players, the game has {}",
            game.num_players()
        )));
    }
    Ok(())
}

/// `u_k(row, col)` for player `k`.
fn u(game: &Game, row: usize, col: usize, k: usize) -> &Rational {
    &game.cell(row * game.num_strategies(1) + col)[k]
}

/// Expected payoff to `payoff_of` when `player` plays pure `own` and the
/// other player mixes with `dist`.
fn against(
    game: &Game,
    player: usize,
    own: usize,
    dist: &[Rational],
    payoff_of: usize,
) -> Rational {
    dist.iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(t, p)| {
            let (row, col) = if player == 0 { (own, t) } else { (t, own) };
            p * u(game, row, col, payoff_of)
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportEnumeration {
    pub equilibria: Vec<MixedProfile>,
    /// Set when an indifference system had a continuum of solutions or an
    /// equilibrium has more pure best responses than the opposing support
    /// size. Equilibrium components of a degenerate game may be missing.
    pub degenerate: bool,
}

pub fn support_enumeration_nash(game: &Game) -> Result<SupportEnumeration> {
    support_enumeration_nash_capped(game, DEFAULT_SUPPORT_CAP)
}

/// Equal-size support pairs, smallest supports first, rows before columns.
pub fn support_enumeration_nash_capped(game: &Game, cap: usize) -> Result<SupportEnumeration> {
    require_two_players(game)?;
    let (m, n) = (game.num_strategies(0), game.num_strategies(1));
    if m > cap || n > cap {
        return Err(Error::Unsupported(format!(
            "support enumeration is capped at {cap} strategies per player, game is {m}x{n}"
        )));
    }
    let subsets = |size: usize, k: usize| -> Vec<Vec<usize>> {
        (0u32..(1 << size))
            .filter(|mask| mask.count_ones() as usize == k)
            .map(|mask| (0..size).filter(|i| mask & (1 << i) != 0).collect())
            .collect()
    };
    let mut equilibria = Vec::new();
    let mut degenerate = false;
    for k in 1..=m.min(n) {
        for rows in subsets(m, k) {
            for cols in subsets(n, k) {
                // Column player's mix makes the row player indifferent on `rows`.
                let y = indifferent_mix(game, &rows, &cols, 0);
                let x = indifferent_mix(game, &cols, &rows, 1);
                let (y, x) = match (y, x) {
                    (Solution::Unique(y), Solution::Unique(x)) => (y, x),
                    (Solution::Underdetermined, _) | (_, Solution::Underdetermined) => {
                        degenerate = true;
                        continue;
                    }
                    _ => continue,
                };
                let (y, v) = (&y[..k], &y[k]);
                let (x, w) = (&x[..k], &x[k]);
                if !y.iter().chain(x).all(Rational::is_positive) {
                    continue;
                }
                let mut col_dist = vec![Rational::zero(); n];
                for (&c, p) in cols.iter().zip(y) {
                    col_dist[c] = p.clone();
                }
                let mut row_dist = vec![Rational::zero(); m];
                for (&r, p) in rows.iter().zip(x) {
                    row_dist[r] = p.clone();
                }
                let row_values: Vec<Rational> =
                    (0..m).map(|r| against(game, 0, r, &col_dist, 0)).collect();
                let col_values: Vec<Rational> =
                    (0..n).map(|c| against(game, 1, c, &row_dist, 1)).collect();
                if row_values.iter().any(|val| val > v) || col_values.iter().any(|val| val > w) {
                    continue;
                }
                let row_br = row_values.iter().filter(|val| *val == v).count();
                let col_br = col_values.iter().filter(|val| *val == w).count();
                if row_br > k || col_br > k {
                    degenerate = true;
                }
                equilibria.push(MixedProfile::new(vec![row_dist, col_dist])?);
            }
        }
    }
    Ok(SupportEnumeration {
        equilibria,
        degenerate,
    })
}

/// Solves for the opponent's mix on `their` support (plus the common value)
/// that makes `player` indifferent across `own` support.
fn indifferent_mix(game: &Game, own: &[usize], their: &[usize], player: usize) -> Solution {
    let k = their.len();
    let mut a = Vec::with_capacity(own.len() + 1);
    let mut b = Vec::with_capacity(own.len() + 1);
    for &s in own {
        let mut row: Vec<Rational> = their
            .iter()
            .map(|&t| {
                let (r, c) = if player == 0 { (s, t) } else { (t, s) };
                u(game, r, c, player).clone()
            })
            .collect();
        row.push(-Rational::one());
        a.push(row);
        b.push(Rational::zero());
    }
    let mut sum = vec![Rational::one(); k];
    sum.push(Rational::zero());
    a.push(sum);
    b.push(Rational::one());
    linsolve::solve(a, b)
}

/// Infimum of `player`'s payoff, keeping their mixed strategy, over the
/// opponent's mixed strategies that strictly improve on the opponent's
/// current payoff, together with the opponent's current strategy.
///
/// When the opponent already best-responds the set is a singleton and the
/// value is the current payoff. Otherwise the strict region is a nonempty
/// convex slice of the simplex whose closure contains the current strategy,
/// so the infimum equals the minimum over `{p : u_opp(p) >= u_opp(q)}`,
/// which is solved as an LP.
pub fn mixed_guarantee_2p(game: &Game, profile: &MixedProfile, player: usize) -> Result<Rational> {
    require_two_players(game)?;
    game.check_player(player)?;
    game.check_mixed(profile)?;
    let opp = 1 - player;
    let own_dist = profile.distribution(player);
    let current_opp = game.expected_payoff(profile, opp)?;
    let m = game.num_strategies(opp);
    let opp_values: Vec<Rational> = (0..m)
        .map(|s| against(game, opp, s, own_dist, opp))
        .collect();
    let best = opp_values.iter().max().expect("nonempty strategy set");
    if *best <= current_opp {
        return game.expected_payoff(profile, player);
    }
    let own_values: Vec<Rational> = (0..m)
        .map(|s| against(game, opp, s, own_dist, player))
        .collect();
    let lp = LinearProgram::minimize(own_values)
        .subject_to(vec![Rational::one(); m], Sense::Eq, Rational::one())
        .subject_to(opp_values, Sense::Ge, current_opp);
    match simplex_solve(&lp)? {
        LpOutcome::Optimal { value, .. } => Ok(value),
        other => unreachable!("bounded feasible LP returned {other:?}"),
    }
}

pub fn mixed_guarantee_vector_2p(game: &Game, profile: &MixedProfile) -> Result<Vec<Rational>> {
    (0..2)
        .map(|i| mixed_guarantee_2p(game, profile, i))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixedVerdict {
    pub equilibrium: MixedProfile,
    pub payoffs: Vec<Rational>,
    pub guarantees: Vec<Rational>,
    /// Guarantee equals the equilibrium payoff for both players.
    pub guarantee_equals_payoff: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixedCheck {
    pub degenerate: bool,
    pub verdicts: Vec<MixedVerdict>,
}

impl MixedCheck {
    pub fn holds(&self) -> bool {
        self.verdicts.iter().all(|v| v.guarantee_equals_payoff)
    }
}

/// At every support-enumeration equilibrium, checks that no player can be
/// pushed below their equilibrium payoff by profitable opponent deviations.
pub fn check_mixed_equilibria(game: &Game) -> Result<MixedCheck> {
    let found = support_enumeration_nash(game)?;
    let verdicts = found
        .equilibria
        .into_iter()
        .map(|eq| {
            let payoffs = (0..2)
                .map(|i| game.expected_payoff(&eq, i))
                .collect::<Result<Vec<_>>>()?;
            let guarantees = mixed_guarantee_vector_2p(game, &eq)?;
            Ok(MixedVerdict {
                guarantee_equals_payoff: guarantees == payoffs,
                equilibrium: eq,
                payoffs,
                guarantees,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MixedCheck {
        degenerate: found.degenerate,
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deviation::guarantee;
    use crate::game::{game_from_ints, PureProfile};
    use crate::generators::{gen_figure1, gen_pd_stage};
    use crate::rational::q;

    fn mixed(d: &[&[(i64, i64)]]) -> MixedProfile {
        MixedProfile::new(
            d.iter()
                .map(|v| v.iter().map(|&p| q(p)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn matching_pennies() -> Game {
        game_from_ints(
            &[2, 2],
            &[vec![1, -1], vec![-1, 1], vec![-1, 1], vec![1, -1]],
        )
        .unwrap()
    }

    fn battle_of_sexes() -> Game {
        game_from_ints(&[2, 2], &[vec![2, 1], vec![0, 0], vec![0, 0], vec![1, 2]]).unwrap()
    }

    #[test]
    fn matching_pennies_has_one_mixed_equilibrium() {
        let found = support_enumeration_nash(&matching_pennies()).unwrap();
        let half = (1, 2);
        assert_eq!(
            found.equilibria,
            vec![mixed(&[&[half, half], &[half, half]])]
        );
        assert!(!found.degenerate);
    }

    #[test]
    fn pd_has_only_mutual_defection() {
        let found = support_enumeration_nash(&gen_pd_stage()).unwrap();
        assert_eq!(
            found.equilibria,
            vec![mixed(&[&[(0, 1), (1, 1)], &[(0, 1), (1, 1)]])]
        );
    }

    #[test]
    fn battle_of_sexes_has_three() {
        let found = support_enumeration_nash(&battle_of_sexes()).unwrap();
        let (one, zero) = ((1, 1), (0, 1));
        assert_eq!(
            found.equilibria,
            vec![
                mixed(&[&[one, zero], &[one, zero]]),
                mixed(&[&[zero, one], &[zero, one]]),
                mixed(&[&[(2, 3), (1, 3)], &[(1, 3), (2, 3)]]),
            ]
        );
    }

    #[test]
    fn three_players_are_unsupported() {
        let g = game_from_ints(&[1, 1, 1], &[vec![0, 0, 0]]).unwrap();
        assert!(matches!(
            support_enumeration_nash(&g),
            Err(Error::Unsupported(_))
        ));
        let p = mixed(&[&[(1, 1)], &[(1, 1)], &[(1, 1)]]);
        assert!(matches!(
            mixed_guarantee_2p(&g, &p, 0),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let g = game_from_ints(&[7, 1], &vec![vec![0, 0]; 7]).unwrap();
        assert!(matches!(
            support_enumeration_nash(&g),
            Err(Error::Unsupported(_))
        ));
        assert!(support_enumeration_nash_capped(&g, 7).is_ok());
    }

    #[test]
    fn guarantee_at_matching_pennies_equilibrium() {
        let g = matching_pennies();
        let half = (1, 2);
        let eq = mixed(&[&[half, half], &[half, half]]);
        assert_eq!(
            mixed_guarantee_vector_2p(&g, &eq).unwrap(),
            vec![q(0), q(0)]
        );
    }

    #[test]
    fn pd_cooperation_mixed_guarantee() {
        let g = gen_pd_stage();
        let cc = MixedProfile::degenerate(&g, &PureProfile::from([0, 0])).unwrap();
        assert_eq!(mixed_guarantee_2p(&g, &cc, 0).unwrap(), q(0));
    }

    #[test]
    fn mixed_deviations_can_undercut_the_pure_guarantee() {
        // At (Top, Left) the column player profits from mostly-Center mixes
        // with a little Right, which pulls the row player below 100.
        let g = gen_figure1();
        let p = g.profile_of(&["Top", "Left"]);
        let m = MixedProfile::degenerate(&g, &p).unwrap();
        assert_eq!(guarantee(&g, &p, 0).unwrap(), q(100));
        assert_eq!(mixed_guarantee_2p(&g, &m, 0).unwrap(), q((2000, 21)));
    }

    #[test]
    fn mixed_guarantee_never_exceeds_payoff_or_pure_guarantee() {
        for g in [
            gen_figure1(),
            gen_pd_stage(),
            matching_pennies(),
            battle_of_sexes(),
        ] {
            for p in g.enumerate_profiles() {
                let m = MixedProfile::degenerate(&g, &p).unwrap();
                for i in 0..2 {
                    let mg = mixed_guarantee_2p(&g, &m, i).unwrap();
                    assert!(mg <= guarantee(&g, &p, i).unwrap());
                    assert!(mg <= g.expected_payoff(&m, i).unwrap());
                }
            }
        }
    }

    #[test]
    fn mixed_check_on_fixtures() {
        for g in [
            gen_figure1(),
            gen_pd_stage(),
            matching_pennies(),
            battle_of_sexes(),
        ] {
            let check = check_mixed_equilibria(&g).unwrap();
            assert!(check.holds());
            assert!(!check.verdicts.is_empty());
        }
    }
}
