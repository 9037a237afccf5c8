//! Brute-force references shared by the integration tests. Nothing here
//! calls into the library's deviation or solver code; only `Game` payoff
//! lookups are used.

#![allow(dead_code)]

use std::path::PathBuf;

use optimin::game::game_from_ints;
use optimin::{Game, PureProfile, Rational};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture(name: &str) -> Game {
    let text = std::fs::read_to_string(fixture_dir().join(name)).expect("fixture readable");
    optimin::io::parse_game(&text).expect("fixture parses")
}

pub fn all_profiles(shape: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &k in shape {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..k).map(move |s| {
                    let mut next = prefix.clone();
                    next.push(s);
                    next
                })
            })
            .collect();
    }
    out
}

pub fn u(game: &Game, profile: &[usize], player: usize) -> Rational {
    game.payoff(&PureProfile::new(profile.to_vec())).unwrap()[player].clone()
}

fn improves(game: &Game, p: &[usize], j: usize, s: usize) -> bool {
    let mut q = p.to_vec();
    q[j] = s;
    u(game, &q, j) > u(game, p, j)
}

/// Filters every profile of the game down to those that keep `i` fixed and
/// move each other player only to a profitable deviation or nowhere.
pub fn naive_guarantee(game: &Game, p: &[usize], i: usize) -> Rational {
    all_profiles(game.shape())
        .into_iter()
        .filter(|q| q[i] == p[i])
        .filter(|q| (0..q.len()).all(|j| j == i || q[j] == p[j] || improves(game, p, j, q[j])))
        .map(|q| u(game, &q, i))
        .min()
        .unwrap()
}

pub fn naive_guarantee_vector(game: &Game, p: &[usize]) -> Vec<Rational> {
    (0..game.num_players())
        .map(|i| naive_guarantee(game, p, i))
        .collect()
}

pub fn naive_nash(game: &Game) -> Vec<Vec<usize>> {
    all_profiles(game.shape())
        .into_iter()
        .filter(|p| (0..p.len()).all(|j| (0..game.shape()[j]).all(|s| !improves(game, p, j, s))))
        .collect()
}

pub fn pareto_dominates(a: &[Rational], b: &[Rational]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y) && a.iter().zip(b).any(|(x, y)| x > y)
}

pub fn naive_pareto_optimin(game: &Game) -> Vec<Vec<usize>> {
    let profiles = all_profiles(game.shape());
    let table: Vec<Vec<Rational>> = profiles
        .iter()
        .map(|p| naive_guarantee_vector(game, p))
        .collect();
    profiles
        .iter()
        .zip(&table)
        .filter(|(_, g)| !table.iter().any(|h| pareto_dominates(h, g)))
        .map(|(p, _)| p.clone())
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_int_game(rng: &mut ChaCha8Rng, shape: &[usize], lo: i64, hi: i64) -> Game {
    let n = shape.len();
    let cells: Vec<Vec<i64>> = (0..shape.iter().product::<usize>())
        .map(|_| (0..n).map(|_| rng.gen_range(lo..=hi)).collect())
        .collect();
    game_from_ints(shape, &cells).unwrap()
}

/// Payoffs with assorted denominators, and optionally magnitudes far past
/// 64 bits.
pub fn random_rational_game(rng: &mut ChaCha8Rng, shape: &[usize], huge: bool) -> Game {
    let base = random_int_game(rng, shape, -9, 9);
    let denoms = [1i64, 2, 3, 7, 10];
    let big: Rational = format!("1{}", "0".repeat(30)).parse().unwrap();
    base.map_payoffs(|_, v| {
        let d = denoms[rng.gen_range(0..denoms.len())];
        let mut x = v / &Rational::from(d);
        if huge {
            x = x * big.clone();
        }
        x
    })
}

pub fn random_shape(
    rng: &mut ChaCha8Rng,
    players: std::ops::RangeInclusive<usize>,
    max: &[usize],
) -> Vec<usize> {
    let n = rng.gen_range(players);
    (0..n)
        .map(|j| rng.gen_range(1..=max[j.min(max.len() - 1)]))
        .collect()
}

/// Traveler's dilemma payoffs straight from the rule, no `Game` involved.
pub fn traveler_u(a: i64, b: i64, r: i64) -> (i64, i64) {
    match a.cmp(&b) {
        std::cmp::Ordering::Less => (a + r, a - r),
        std::cmp::Ordering::Greater => (b - r, b + r),
        std::cmp::Ordering::Equal => (a, a),
    }
}

/// Guarantees for claims (a, b) by a double loop over the opponent's claims.
pub fn traveler_guarantee(a: i64, b: i64, r: i64, low: i64, high: i64) -> (i64, i64) {
    let (ua, ub) = traveler_u(a, b, r);
    let mut g1 = i64::MAX;
    let mut g2 = i64::MAX;
    for x in low..=high {
        if x == b || traveler_u(a, x, r).1 > ub {
            g1 = g1.min(traveler_u(a, x, r).0);
        }
        if x == a || traveler_u(x, b, r).0 > ua {
            g2 = g2.min(traveler_u(x, b, r).1);
        }
    }
    (g1, g2)
}
