#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use relladder::algebra::{rat, Rational};
use relladder::model::{LadderSpec, TerminalConfig};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational strictly inside (0, 1) with a small prime denominator.
pub fn open_unit(rng: &mut impl Rng) -> Rational {
    let den = [7i64, 11, 13, 97][rng.gen_range(0..4)];
    rat(rng.gen_range(1..den), den)
}

pub fn random_ladder(rng: &mut impl Rng, n: usize, config: TerminalConfig) -> LadderSpec<Rational> {
    let mut draw = |len: usize| (0..len).map(|_| open_unit(rng)).collect::<Vec<_>>();
    let (a, b, c, s, t) = (draw(n), draw(n + 1), draw(n), draw(n + 1), draw(n + 1));
    LadderSpec::new(n, a, b, c, s, t, config).unwrap()
}

pub fn configs_for(n: usize) -> Vec<TerminalConfig> {
    TerminalConfig::ALL
        .into_iter()
        .filter(|c| n > 0 || *c != TerminalConfig::S0ToUn)
        .collect()
}
