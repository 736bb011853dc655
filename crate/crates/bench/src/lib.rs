//! Shared fixtures for the criterion benches.

use qstar_core::{ratio, ColumnSchedule, EpsilonSchedule, FunctionSpec, MatrixColumn, Rational};

pub fn uniform(num: i64, den: i64) -> FunctionSpec {
    FunctionSpec::uniform(ratio(num, den)).expect("epsilon in [0,1]")
}

/// Two-column matrix with alternating epsilons 1/4, 3/4.
pub fn alternating() -> FunctionSpec {
    let column = |a: Rational, b: Rational, c: Rational| MatrixColumn::new(a, b, c).unwrap();
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
