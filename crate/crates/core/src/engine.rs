//! Index-level kernels shared by the deviation and solver modules.
//!
//! Everything here is generic over the payoff key type so the same code runs
//! on scaled machine integers (the common case) and on exact rationals when
//! the scaled values would overflow. Only comparisons are performed on keys.

use rayon::prelude::*;

use crate::game::Game;

pub(crate) struct View<'a, T> {
    game: &'a Game,
    data: &'a [T],
}

impl<'a, T> View<'a, T>
where
    T: Ord + Clone + Send + Sync,
{
    pub(crate) fn new(game: &'a Game, data: &'a [T]) -> Self {
        debug_assert_eq!(data.len(), game.num_profiles() * game.num_players());
        View { game, data }
    }

    fn n(&self) -> usize {
        self.game.num_players()
    }

    pub(crate) fn at(&self, cell: usize, player: usize) -> &T {
        &self.data[cell * self.n() + player]
    }

    /// Strategies of `player` that strictly improve on `profile`, plus the current one.
    pub(crate) fn deviation_set(
        &self,
        profile: &[usize],
        cell: usize,
        player: usize,
    ) -> Vec<usize> {
        let mut out = Vec::new();
        self.deviation_set_into(profile, cell, player, &mut out);
        out
    }

    fn deviation_set_into(
        &self,
        profile: &[usize],
        cell: usize,
        player: usize,
        out: &mut Vec<usize>,
    ) {
        let stride = self.game.strides()[player];
        let own = profile[player];
        let base = cell - own * stride;
        let current = self.at(cell, player);
        out.clear();
        out.extend(
            (0..self.game.num_strategies(player))
                .filter(|&s| s == own || self.at(base + s * stride, player) > current),
        );
    }

    pub(crate) fn deviation_sets(&self, profile: &[usize], cell: usize) -> Vec<Vec<usize>> {
        (0..self.n())
            .map(|j| self.deviation_set(profile, cell, j))
            .collect()
    }

    /// Minimum of `player`'s payoff over the product of the other players'
    /// deviation sets, with the first minimising cell in odometer order.
    pub(crate) fn guarantee(
        &self,
        profile: &[usize],
        player: usize,
        sets: &[Vec<usize>],
    ) -> (T, usize) {
        let (v, cell) = self.guarantee_ref(profile, player, sets);
        (v.clone(), cell)
    }

    fn guarantee_ref(&self, profile: &[usize], player: usize, sets: &[Vec<usize>]) -> (&T, usize) {
        let strides = self.game.strides();
        let mut best: Option<(&T, usize)> = None;
        self.visit_product(
            0,
            profile[player] * strides[player],
            player,
            sets,
            &mut |cell| {
                let v = self.at(cell, player);
                match best {
                    Some((b, _)) if v >= b => {}
                    _ => best = Some((v, cell)),
                }
            },
        );
        best.expect("deviation product always contains the profile itself")
    }

    /// Calls `f` on every cell whose coordinates come from `sets`, except
    /// that `fixed`'s coordinate is already folded into `base`.
    fn visit_product(
        &self,
        k: usize,
        base: usize,
        fixed: usize,
        sets: &[Vec<usize>],
        f: &mut impl FnMut(usize),
    ) {
        if k == sets.len() {
            f(base);
        } else if k == fixed {
            self.visit_product(k + 1, base, fixed, sets, f);
        } else {
            let stride = self.game.strides()[k];
            for &s in &sets[k] {
                self.visit_product(k + 1, base + s * stride, fixed, sets, f);
            }
        }
    }

    fn scratch(&self) -> Scratch {
        Scratch {
            profile: vec![0; self.n()],
            sets: vec![Vec::new(); self.n()],
        }
    }

    fn load(&self, cell: usize, scratch: &mut Scratch) {
        let mut rest = cell;
        for (slot, &st) in scratch.profile.iter_mut().zip(self.game.strides()) {
            *slot = rest / st;
            rest %= st;
        }
        for j in 0..self.n() {
            self.deviation_set_into(&scratch.profile, cell, j, &mut scratch.sets[j]);
        }
    }

    pub(crate) fn guarantee_vector(&self, cell: usize) -> Vec<T> {
        let mut scratch = self.scratch();
        self.guarantee_vector_with(cell, &mut scratch)
    }

    fn guarantee_vector_with(&self, cell: usize, scratch: &mut Scratch) -> Vec<T> {
        self.load(cell, scratch);
        (0..self.n())
            .map(|i| {
                self.guarantee_ref(&scratch.profile, i, &scratch.sets)
                    .0
                    .clone()
            })
            .collect()
    }

    fn is_nash_with(&self, cell: usize, scratch: &mut Scratch) -> bool {
        self.load(cell, scratch);
        scratch.sets.iter().all(|s| s.len() == 1)
    }

    pub(crate) fn guarantee_table(&self, jobs: usize) -> Vec<Vec<T>> {
        let total = self.game.num_profiles();
        map_cells(
            total,
            jobs,
            || self.scratch(),
            |scratch, cell| self.guarantee_vector_with(cell, scratch),
        )
    }

    pub(crate) fn nash_cells(&self, jobs: usize) -> Vec<usize> {
        let total = self.game.num_profiles();
        map_cells(
            total,
            jobs,
            || self.scratch(),
            |scratch, cell| self.is_nash_with(cell, scratch),
        )
        .into_iter()
        .enumerate()
        .filter_map(|(cell, nash)| nash.then_some(cell))
        .collect()
    }

    /// Best worst case over all opposing joint strategies, with every argmax strategy.
    pub(crate) fn maximin(&self, player: usize) -> (T, Vec<usize>) {
        let strides = self.game.strides();
        let everything: Vec<Vec<usize>> = (0..self.n())
            .map(|j| (0..self.game.num_strategies(j)).collect())
            .collect();
        let worst: Vec<T> = (0..self.game.num_strategies(player))
            .map(|s| {
                let mut low: Option<&T> = None;
                self.visit_product(0, s * strides[player], player, &everything, &mut |cell| {
                    let v = self.at(cell, player);
                    if low.is_none_or(|l| v < l) {
                        low = Some(v);
                    }
                });
                low.expect("nonempty strategy sets").clone()
            })
            .collect();
        let value = worst.iter().max().expect("nonempty strategy set").clone();
        let argmax = worst
            .iter()
            .enumerate()
            .filter(|(_, w)| **w == value)
            .map(|(s, _)| s)
            .collect();
        (value, argmax)
    }
}

struct Scratch {
    profile: Vec<usize>,
    sets: Vec<Vec<usize>>,
}

/// Maps `f` over `0..total`, on `jobs` worker threads when `jobs > 1`.
/// Output order is always by index.
/// `init` builds per-worker scratch state.
pub(crate) fn map_cells<R, S, I, F>(total: usize, jobs: usize, init: I, f: F) -> Vec<R>
where
    R: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize) -> R + Sync + Send,
{
    let sequential = || {
        let mut state = init();
        (0..total).map(|c| f(&mut state, c)).collect()
    };
    if jobs <= 1 || total < 2 {
        return sequential();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| (0..total).into_par_iter().map_init(&init, &f).collect()),
        Err(_) => sequential(),
    }
}

/// Runs `$body` against a [`View`] of the game's payoffs, on scaled integers
/// when available. `$conv` turns a key back into an exact rational.
macro_rules! with_view {
    ($game:expr, |$view:ident, $conv:ident| $body:expr) => {{
        let game: &$crate::game::Game = $game;
        match game.scaled() {
            Some(scaled) => {
                let $view = $crate::engine::View::new(game, &scaled.values);
                let $conv = |v: &i64| scaled.to_rational(*v);
                $body
            }
            None => {
                let $view = $crate::engine::View::new(game, game.raw_payoffs());
                let $conv = |v: &$crate::rational::Rational| v.clone();
                $body
            }
        }
    }};
}
pub(crate) use with_view;

/// Indices of the vectors that no other vector Pareto-dominates (weakly
/// better everywhere, strictly somewhere). Returned in ascending order.
pub(crate) fn pareto_front<T: Ord, V: AsRef<[T]>>(vectors: &[V]) -> Vec<usize> {
    // A dominating vector is lexicographically greater, so scanning in
    // descending lexicographic order only needs the accepted front.
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by(|&a, &b| vectors[b].as_ref().cmp(vectors[a].as_ref()).then(a.cmp(&b)));
    let mut front: Vec<usize> = Vec::new();
    for idx in order {
        let v = vectors[idx].as_ref();
        if !front.iter().any(|&f| dominates(vectors[f].as_ref(), v)) {
            front.push(idx);
        }
    }
    front.sort_unstable();
    front
}

pub(crate) fn dominates<T: Ord>(a: &[T], b: &[T]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y) && a.iter().zip(b).any(|(x, y)| x > y)
}

/// Indices attaining the per-coordinate maximum in every coordinate at once.
pub(crate) fn simultaneous_front<T: Ord, V: AsRef<[T]>>(vectors: &[V]) -> Vec<usize> {
    let Some(first) = vectors.first() else {
        return Vec::new();
    };
    let maxima: Vec<&T> = (0..first.as_ref().len())
        .map(|i| {
            vectors
                .iter()
                .map(|v| &v.as_ref()[i])
                .max()
                .expect("nonempty")
        })
        .collect();
    vectors
        .iter()
        .enumerate()
        .filter(|(_, v)| v.as_ref().iter().zip(&maxima).all(|(x, m)| x == *m))
        .map(|(k, _)| k)
        .collect()
}
