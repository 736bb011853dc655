#![allow(dead_code)]

use qstar_core::{
    ratio, ColumnSchedule, DigitSeq, DigitWord, EpsilonSchedule, FunctionSpec, MatrixColumn,
    Rational,
};
use rand::Rng;

pub fn uniform(eps: Rational) -> FunctionSpec {
    FunctionSpec::uniform(eps).unwrap()
}

/// Matrix period [(1/2,1/4,1/4), (1/5,2/5,2/5)], epsilon period [1/4, 3/4].
pub fn alternating() -> FunctionSpec {
    let column = |a, b, c| MatrixColumn::new(a, b, c).unwrap();
    FunctionSpec::new(
        ColumnSchedule::new(
            vec![],
            vec![
                column(ratio(1, 2), ratio(1, 4), ratio(1, 4)),
                column(ratio(1, 5), ratio(2, 5), ratio(2, 5)),
            ],
        )
        .unwrap(),
        EpsilonSchedule::new(vec![], vec![ratio(1, 4), ratio(3, 4)]).unwrap(),
    )
}

/// The four reference parameterizations.
pub fn four_specs() -> Vec<(&'static str, FunctionSpec)> {
    vec![
        ("eps=0", uniform(ratio(0, 1))),
        ("eps=1/2", uniform(ratio(1, 2))),
        ("eps=1", uniform(ratio(1, 1))),
        ("alternating", alternating()),
    ]
}

pub fn random_word(rng: &mut impl Rng, len: usize) -> DigitWord {
    DigitWord::new((0..len).map(|_| rng.random_range(0..3u8)).collect()).unwrap()
}

pub fn random_seq(rng: &mut impl Rng, max_prefix: usize, max_tail: usize) -> DigitSeq {
    let p = rng.random_range(0..=max_prefix);
    let t = rng.random_range(1..=max_tail);
    DigitSeq::new(random_word(rng, p), random_word(rng, t)).unwrap()
}

/// `g` product along `w`, straight from the epsilon formulas.
pub fn g_product(f: &FunctionSpec, w: &DigitWord) -> Rational {
    w.digits()
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let e = f.eps.epsilon_at(i + 1);
            let one = ratio(1, 1);
            if d == 1 {
                (one - ratio(2, 1) * e) / ratio(3, 1)
            } else {
                (one + e) / ratio(3, 1)
            }
        })
        .fold(ratio(1, 1), |a, b| a * b)
}

pub fn words_up_to(rank: usize) -> impl Iterator<Item = DigitWord> {
    (0..=rank).flat_map(DigitWord::all_of_rank)
}
