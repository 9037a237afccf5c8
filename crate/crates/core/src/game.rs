//! Finite n-person normal-form games with exact payoffs.
//!
//! Payoffs live in a dense tensor, row-major with player 1's index slowest.
//! Cell `c` holds `n` consecutive rationals, one per player.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::product::CartesianProduct;
use crate::rational::Rational;

/// One strategy index per player.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct PureProfile(Vec<usize>);

impl PureProfile {
    pub fn new(indices: Vec<usize>) -> Self {
        PureProfile(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, player: usize) -> usize {
        self.0[player]
    }

    /// The profile with `player` switched to `strategy`.
    pub fn with(&self, player: usize, strategy: usize) -> PureProfile {
        let mut v = self.0.clone();
        v[player] = strategy;
        PureProfile(v)
    }
}

impl From<Vec<usize>> for PureProfile {
    fn from(v: Vec<usize>) -> Self {
        PureProfile(v)
    }
}

impl<const N: usize> From<[usize; N]> for PureProfile {
    fn from(v: [usize; N]) -> Self {
        PureProfile(v.to_vec())
    }
}

impl fmt::Display for PureProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

/// One probability vector per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct MixedProfile(Vec<Vec<Rational>>);

impl MixedProfile {
    /// Checks that every vector is a probability distribution.
    pub fn new(distributions: Vec<Vec<Rational>>) -> Result<Self> {
        for (i, d) in distributions.iter().enumerate() {
            if d.is_empty() {
                return Err(Error::validation(format!("player {i}: empty distribution")));
            }
            if let Some(p) = d.iter().find(|p| p.is_negative()) {
                return Err(Error::validation(format!(
                    "player {i}: negative probability {p}"
                )));
            }
            let total: Rational = d.iter().sum();
            if total != Rational::one() {
                return Err(Error::validation(format!(
                    "player {i}: probabilities sum to {total}, not 1"
                )));
            }
        }
        Ok(MixedProfile(distributions))
    }

    /// All mass on the given pure profile.
    pub fn degenerate(game: &Game, profile: &PureProfile) -> Result<Self> {
        game.check_profile(profile)?;
        Ok(MixedProfile(
            (0..game.num_players())
                .map(|i| {
                    let mut d = vec![Rational::zero(); game.num_strategies(i)];
                    d[profile.get(i)] = Rational::one();
                    d
                })
                .collect(),
        ))
    }

    pub fn distributions(&self) -> &[Vec<Rational>] {
        &self.0
    }

    pub fn distribution(&self, player: usize) -> &[Rational] {
        &self.0[player]
    }

    pub fn support(&self, player: usize) -> Vec<usize> {
        self.0[player]
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_positive())
            .map(|(s, _)| s)
            .collect()
    }

    /// `Some` when every player puts all mass on a single strategy.
    pub fn as_pure(&self) -> Option<PureProfile> {
        self.0
            .iter()
            .map(|d| d.iter().position(|p| *p == Rational::one()))
            .collect::<Option<Vec<_>>>()
            .map(PureProfile)
    }
}

/// Payoffs rescaled by a common denominator so that comparisons can run on
/// machine integers. `values[k] / scale == payoffs[k]` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ScaledPayoffs {
    pub(crate) values: Vec<i64>,
    pub(crate) scale: BigInt,
}

impl ScaledPayoffs {
    fn build(payoffs: &[Rational]) -> Option<Self> {
        let scale = payoffs
            .iter()
            .fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
        let values = payoffs
            .iter()
            .map(|p| (p.numer() * (&scale / p.denom())).to_i64())
            .collect::<Option<Vec<_>>>()?;
        Some(ScaledPayoffs { values, scale })
    }

    pub(crate) fn to_rational(&self, v: i64) -> Rational {
        Rational::new(v, self.scale.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    title: String,
    player_names: Vec<String>,
    strategy_labels: Vec<Vec<String>>,
    shape: Vec<usize>,
    strides: Vec<usize>,
    payoffs: Vec<Rational>,
    scaled: Option<ScaledPayoffs>,
}

impl Game {
    /// Builds a game from per-cell payoff vectors listed in row-major order.
    pub fn new(
        title: impl Into<String>,
        player_names: Vec<String>,
        strategy_labels: Vec<Vec<String>>,
        cells: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let n = player_names.len();
        if n == 0 {
            return Err(Error::validation("a game needs at least one player"));
        }
        if strategy_labels.len() != n {
            return Err(Error::validation(format!(
                "{n} players but {} strategy lists",
                strategy_labels.len()
            )));
        }
        if let Some(i) = strategy_labels.iter().position(Vec::is_empty) {
            return Err(Error::validation(format!("player {i} has no strategies")));
        }
        let shape: Vec<usize> = strategy_labels.iter().map(Vec::len).collect();
        let count = shape
            .iter()
            .try_fold(1usize, |acc, &m| acc.checked_mul(m))
            .ok_or_else(|| Error::validation("profile space too large"))?;
        if cells.len() != count {
            return Err(Error::validation(format!(
                "expected {count} payoff cells, found {}",
                cells.len()
            )));
        }
        if let Some(c) = cells.iter().position(|c| c.len() != n) {
            return Err(Error::validation(format!(
                "cell {c} has {} payoffs, expected {n}",
                cells[c].len()
            )));
        }
        let mut strides = vec![1; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * shape[i + 1];
        }
        let payoffs: Vec<Rational> = cells.into_iter().flatten().collect();
        let scaled = ScaledPayoffs::build(&payoffs);
        Ok(Game {
            title: title.into(),
            player_names,
            strategy_labels,
            shape,
            strides,
            payoffs,
            scaled,
        })
    }

    /// Builds a game by evaluating `f` at every pure profile.
    pub fn from_fn<F>(
        title: impl Into<String>,
        player_names: Vec<String>,
        strategy_labels: Vec<Vec<String>>,
        mut f: F,
    ) -> Result<Self>
    where
        F: FnMut(&[usize]) -> Vec<Rational>,
    {
        let factors = strategy_labels
            .iter()
            .map(|l| (0..l.len()).collect())
            .collect();
        let cells = CartesianProduct::new(factors).map(|p| f(&p)).collect();
        Game::new(title, player_names, strategy_labels, cells)
    }

    /// A copy with every payoff of every player passed through `f(player, value)`.
    pub fn map_payoffs<F>(&self, mut f: F) -> Game
    where
        F: FnMut(usize, &Rational) -> Rational,
    {
        let n = self.num_players();
        let cells = self
            .payoffs
            .chunks(n)
            .map(|c| c.iter().enumerate().map(|(i, v)| f(i, v)).collect())
            .collect();
        Game::new(
            self.title.clone(),
            self.player_names.clone(),
            self.strategy_labels.clone(),
            cells,
        )
        .expect("shape is preserved")
    }

    pub fn title(&self) -> &str {
        &self.title
    }

    pub fn player_names(&self) -> &[String] {
        &self.player_names
    }

    pub fn strategy_labels(&self, player: usize) -> &[String] {
        &self.strategy_labels[player]
    }

    pub fn all_strategy_labels(&self) -> &[Vec<String>] {
        &self.strategy_labels
    }

    pub fn num_players(&self) -> usize {
        self.shape.len()
    }

    pub fn num_strategies(&self, player: usize) -> usize {
        self.shape[player]
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub(crate) fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn num_profiles(&self) -> usize {
        self.shape.iter().product()
    }

    /// Flat payoff storage, `cell * n + player`.
    pub fn raw_payoffs(&self) -> &[Rational] {
        &self.payoffs
    }

    pub(crate) fn scaled(&self) -> Option<&ScaledPayoffs> {
        self.scaled.as_ref()
    }

    pub fn check_player(&self, player: usize) -> Result<()> {
        if player >= self.num_players() {
            return Err(Error::validation(format!(
                "player index {player} out of range for a {}-player game",
                self.num_players()
            )));
        }
        Ok(())
    }

    pub fn check_profile(&self, profile: &PureProfile) -> Result<()> {
        if profile.len() != self.num_players() {
            return Err(Error::validation(format!(
                "profile {profile} has {} entries for a {}-player game",
                profile.len(),
                self.num_players()
            )));
        }
        for (i, (&s, &m)) in profile.indices().iter().zip(&self.shape).enumerate() {
            if s >= m {
                return Err(Error::validation(format!(
                    "strategy index {s} out of range for player {i} ({m} strategies)"
                )));
            }
        }
        Ok(())
    }

    pub fn check_mixed(&self, profile: &MixedProfile) -> Result<()> {
        let d = profile.distributions();
        if d.len() != self.num_players() {
            return Err(Error::validation(format!(
                "mixed profile has {} distributions for a {}-player game",
                d.len(),
                self.num_players()
            )));
        }
        for (i, dist) in d.iter().enumerate() {
            if dist.len() != self.shape[i] {
                return Err(Error::validation(format!(
                    "player {i}: distribution of length {} over {} strategies",
                    dist.len(),
                    self.shape[i]
                )));
            }
        }
        Ok(())
    }

    /// Row-major index of a (valid) profile.
    pub fn profile_index(&self, profile: &PureProfile) -> usize {
        profile
            .indices()
            .iter()
            .zip(&self.strides)
            .map(|(s, st)| s * st)
            .sum()
    }

    pub fn profile_at(&self, mut index: usize) -> PureProfile {
        let mut v = vec![0; self.num_players()];
        for (slot, &st) in v.iter_mut().zip(&self.strides) {
            *slot = index / st;
            index %= st;
        }
        PureProfile(v)
    }

    pub(crate) fn cell(&self, index: usize) -> &[Rational] {
        let n = self.num_players();
        &self.payoffs[index * n..(index + 1) * n]
    }

    /// Payoff vector `u(profile)`.
    pub fn payoff(&self, profile: &PureProfile) -> Result<&[Rational]> {
        self.check_profile(profile)?;
        Ok(self.cell(self.profile_index(profile)))
    }

    /// Multilinear extension `u_player(profile)`.
    pub fn expected_payoff(&self, profile: &MixedProfile, player: usize) -> Result<Rational> {
        self.check_player(player)?;
        self.check_mixed(profile)?;
        let n = self.num_players();
        let supports = (0..n).map(|i| profile.support(i)).collect();
        let mut total = Rational::zero();
        for joint in CartesianProduct::new(supports) {
            let mut weight = Rational::one();
            for (i, &s) in joint.iter().enumerate() {
                weight = weight * &profile.distribution(i)[s];
            }
            let cell = self.profile_index(&PureProfile(joint));
            total += &(weight * &self.payoffs[cell * n + player]);
        }
        Ok(total)
    }

    /// Every pure profile once, in row-major order.
    pub fn enumerate_profiles(&self) -> Profiles<'_> {
        Profiles {
            game: self,
            next: 0,
            end: self.num_profiles(),
        }
    }

    /// `(Top, Left)`-style label for a profile.
    pub fn profile_label(&self, profile: &PureProfile) -> String {
        let parts: Vec<&str> = profile
            .indices()
            .iter()
            .enumerate()
            .map(|(i, &s)| self.strategy_labels[i][s].as_str())
            .collect();
        format!("({})", parts.join(", "))
    }

    /// Looks up a strategy by label.
    pub fn strategy_index(&self, player: usize, label: &str) -> Option<usize> {
        self.strategy_labels[player].iter().position(|l| l == label)
    }

    /// Profile from one label per player; panics on unknown labels.
    pub fn profile_of(&self, labels: &[&str]) -> PureProfile {
        PureProfile(
            labels
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    self.strategy_index(i, l)
                        .unwrap_or_else(|| panic!("player {i} has no strategy {l:?}"))
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone)]
pub struct Profiles<'a> {
    game: &'a Game,
    next: usize,
    end: usize,
}

impl Iterator for Profiles<'_> {
    type Item = PureProfile;

    fn next(&mut self) -> Option<PureProfile> {
        if self.next >= self.end {
            return None;
        }
        let p = self.game.profile_at(self.next);
        self.next += 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.end - self.next;
        (r, Some(r))
    }
}

impl ExactSizeIterator for Profiles<'_> {}

/// Default player names `P1..Pn`.
pub fn default_player_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("P{i}")).collect()
}

/// A game from integer payoffs with default player names and strategy labels
/// `s0, s1, ...`. Mostly useful in tests.
pub fn game_from_ints(shape: &[usize], cells: &[Vec<i64>]) -> Result<Game> {
    let labels = shape
        .iter()
        .map(|&m| (0..m).map(|s| format!("s{s}")).collect())
        .collect();
    Game::new(
        "",
        default_player_names(shape.len()),
        labels,
        cells
            .iter()
            .map(|c| c.iter().map(|&v| Rational::from(v)).collect())
            .collect(),
    )
}
