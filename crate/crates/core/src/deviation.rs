//! Profitable-deviation sets and guarantee values over pure profiles.
//!
//! `B_j(p)` is the set of strategies that strictly raise player `j`'s payoff
//! against `p_{-j}`, together with `p_j` itself. A player's guarantee at `p`
//! is their worst payoff, keeping their own strategy, over the product of
//! every other player's `B_j(p)`. Each factor is computed at the original
//! profile, so several opponents may move at once.

use serde::Serialize;

use crate::engine::{map_cells, with_view};
use crate::error::Result;
use crate::game::{Game, PureProfile};
use crate::product::CartesianProduct;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeviationSet {
    pub player: usize,
    /// Ascending strategy indices; always contains the current strategy.
    pub members: Vec<usize>,
}

impl DeviationSet {
    pub fn contains(&self, strategy: usize) -> bool {
        self.members.binary_search(&strategy).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Per-player guarantee values at one profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GuaranteeVector {
    pub profile: PureProfile,
    pub values: Vec<Rational>,
}

pub fn profitable_deviations(
    game: &Game,
    profile: &PureProfile,
    player: usize,
) -> Result<DeviationSet> {
    game.check_profile(profile)?;
    game.check_player(player)?;
    let cell = game.profile_index(profile);
    let members = with_view!(game, |view, _conv| view.deviation_set(
        profile.indices(),
        cell,
        player
    ));
    Ok(DeviationSet { player, members })
}

/// Joint strategies of every player except `excluded`, drawn from their
/// deviation sets at `profile`. Tuples list the other players in order.
pub fn deviation_product(
    game: &Game,
    profile: &PureProfile,
    excluded: usize,
) -> Result<CartesianProduct> {
    game.check_profile(profile)?;
    game.check_player(excluded)?;
    let factors = (0..game.num_players())
        .filter(|&j| j != excluded)
        .map(|j| profitable_deviations(game, profile, j).map(|d| d.members))
        .collect::<Result<Vec<_>>>()?;
    Ok(CartesianProduct::new(factors))
}

pub fn guarantee(game: &Game, profile: &PureProfile, player: usize) -> Result<Rational> {
    guarantee_with_witness(game, profile, player).map(|(v, _)| v)
}

/// The guarantee together with the first profile (in odometer order of the
/// deviation product) at which it is attained.
pub fn guarantee_with_witness(
    game: &Game,
    profile: &PureProfile,
    player: usize,
) -> Result<(Rational, PureProfile)> {
    game.check_profile(profile)?;
    game.check_player(player)?;
    let cell = game.profile_index(profile);
    let (value, witness) = with_view!(game, |view, conv| {
        let sets = view.deviation_sets(profile.indices(), cell);
        let (v, w) = view.guarantee(profile.indices(), player, &sets);
        (conv(&v), w)
    });
    Ok((value, game.profile_at(witness)))
}

pub fn guarantee_vector(game: &Game, profile: &PureProfile) -> Result<GuaranteeVector> {
    game.check_profile(profile)?;
    let cell = game.profile_index(profile);
    let values = with_view!(game, |view, conv| view
        .guarantee_vector(cell)
        .iter()
        .map(conv)
        .collect());
    Ok(GuaranteeVector {
        profile: profile.clone(),
        values,
    })
}

/// Guarantee vectors of every profile, in row-major order. `jobs > 1` splits
/// the scan across worker threads; the result does not depend on `jobs`.
pub fn guarantee_table(game: &Game, jobs: usize) -> Vec<GuaranteeVector> {
    let raw = with_view!(game, |view, conv| {
        let table = view.guarantee_table(jobs);
        map_cells(
            table.len(),
            jobs,
            || (),
            |_, cell| table[cell].iter().map(conv).collect::<Vec<_>>(),
        )
    });
    raw.into_iter()
        .enumerate()
        .map(|(cell, values)| GuaranteeVector {
            profile: game.profile_at(cell),
            values,
        })
        .collect()
}
