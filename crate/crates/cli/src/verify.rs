//! Invariant checks over a loaded specification, run by `qstar verify`.

use num_traits::{One, Signed, Zero};
use qstar_core::classify::uniform_cantor_plateau_measure;
use qstar_core::{
    classify_regime, graph_sample, ifs_maps, plateau_cylinders, plateau_measure, preimage_regions,
    ratio, self_affine_residual, subcylinder_signs, ColumnSchedule, DigitSeq, DigitWord,
    FunctionSpec, Rational, RegimeTag, Sign,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub outcome: Outcome,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        Self {
            name,
            outcome: if ok { Outcome::Pass } else { Outcome::Fail },
            detail: detail.into(),
        }
    }

    fn skipped(name: &'static str, detail: impl Into<String>) -> Self {
        Self {
            name,
            outcome: Outcome::Skipped,
            detail: detail.into(),
        }
    }

    pub fn line(&self) -> String {
        let tag = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skipped => "SKIP",
        };
        format!("[{tag}] {}: {}", self.name, self.detail)
    }
}

fn words_up_to(rank: usize) -> impl Iterator<Item = DigitWord> {
    (0..=rank).flat_map(DigitWord::all_of_rank)
}

/// Runs every check at the given rank.
pub fn run(f: &FunctionSpec, rank: usize) -> Vec<Check> {
    let regime = classify_regime(&f.eps);
    let mut checks = vec![
        partition(&f.x_schedule, rank),
        round_trip(&f.x_schedule, rank),
        endpoints(f),
        increment_identity(f, rank),
        duals(f, rank),
        value_range(f, rank),
        continuity(f, rank),
        extrema(f, rank.min(4)),
        plateau_lengths(f, rank.min(10)),
        zero_factors(f, rank),
        surjectivity(f),
    ];
    checks.push(match regime.tag {
        RegimeTag::NowhereMonotone => nowhere_monotone(f, rank),
        RegimeTag::StrictlyIncreasing => strictly_increasing(f, rank),
        RegimeTag::CantorSingular => cantor_measure(f, rank),
        RegimeTag::Mixed => Check::skipped("regime", "mixed schedule, no regime theorem applies"),
    });
    checks.push(self_affinity(f, rank.min(4)));
    checks
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.outcome != Outcome::Fail)
}

fn partition(s: &ColumnSchedule, rank: usize) -> Check {
    let mut bad = 0;
    for w in words_up_to(rank.saturating_sub(1)) {
        let (left, len) = s.cylinder_interval(&w);
        let mut cursor = left.clone();
        for c in w.children() {
            let (cl, cn) = s.cylinder_interval(&c);
            if cl != cursor || cn.is_negative() {
                bad += 1;
            }
            cursor = cl + cn;
        }
        if cursor != left + len {
            bad += 1;
        }
    }
    Check::new("cylinder partition", bad == 0, format!("{bad} violations"))
}

fn round_trip(s: &ColumnSchedule, rank: usize) -> Check {
    let bad = DigitWord::all_of_rank(rank)
        .filter(|w| {
            let x = w.then_repeat(0).canonicalize();
            let full = s
                .encode(&s.value_of(&x), rank + 8)
                .ok()
                .and_then(|e| e.full);
            full.as_ref() != Some(&x)
        })
        .count();
    Check::new(
        "encode round trip",
        bad == 0,
        format!("{bad} mismatches at rank {rank}"),
    )
}

fn endpoints(f: &FunctionSpec) -> Check {
    let zero = f.eval_exact(&DigitSeq::zero());
    let one = f.eval_exact(&DigitSeq::one());
    Check::new(
        "endpoints",
        zero.is_zero() && one.is_one(),
        format!("f(0) = {zero}, f(1) = {one}"),
    )
}

fn increment_identity(f: &FunctionSpec, rank: usize) -> Check {
    let mut count = 0;
    let bad = words_up_to(rank)
        .inspect(|_| count += 1)
        .filter(|w| {
            f.eval_exact(&w.then_repeat(2)) - f.eval_exact(&w.then_repeat(0)) != f.increment(w)
        })
        .count();
    Check::new(
        "increment formula",
        bad == 0,
        format!("{count} words, {bad} mismatches"),
    )
}

fn duals(f: &FunctionSpec, rank: usize) -> Check {
    let mut count = 0;
    let mut bad = 0;
    for u in words_up_to(rank.saturating_sub(1)) {
        for a in [1, 2] {
            count += 1;
            match f.dual_consistency(&u.child(a).then_repeat(0)) {
                Ok(rho) if rho.is_zero() => {}
                _ => bad += 1,
            }
        }
    }
    Check::new(
        "dual representations",
        bad == 0,
        format!("{count} cut points, {bad} nonzero"),
    )
}

fn value_range(f: &FunctionSpec, rank: usize) -> Check {
    let bad = f
        .cylinders_of_rank(rank)
        .iter()
        .filter(|c| c.base.is_negative() || c.base > Rational::one())
        .count();
    Check::new(
        "values in [0,1]",
        bad == 0,
        format!("{bad} values outside at rank {rank}"),
    )
}

fn continuity(f: &FunctionSpec, rank: usize) -> Check {
    let bad = words_up_to(rank)
        .filter(|w| f.increment(w).abs() > num_traits::pow(ratio(2, 3), w.len()))
        .count();
    Check::new(
        "continuity modulus",
        bad == 0,
        format!("{bad} cylinders exceed (2/3)^m"),
    )
}

fn extrema(f: &FunctionSpec, rank: usize) -> Check {
    let mut bad = 0;
    for w in words_up_to(rank) {
        let range = f.range_on_cylinder(&w);
        let mut values: Vec<Rational> = DigitWord::all_of_rank(3)
            .map(|t| {
                let mut d = w.digits().to_vec();
                d.extend_from_slice(t.digits());
                f.eval_left(&DigitWord::new(d).expect("digits in range"))
            })
            .collect();
        values.push(f.eval_exact(&w.then_repeat(2)));
        let min = values.iter().min().expect("nonempty");
        let max = values.iter().max().expect("nonempty");
        if *min != range.lo || *max != range.hi {
            bad += 1;
        }
    }
    Check::new(
        "extrema at endpoints",
        bad == 0,
        format!("{bad} cylinders disagree"),
    )
}

fn plateau_lengths(f: &FunctionSpec, rank: usize) -> Check {
    let summed = plateau_cylinders(f, rank)
        .iter()
        .map(|w| f.x_schedule.cylinder_interval(w).1)
        .fold(Rational::zero(), |a, b| a + b);
    let measure = plateau_measure(f, rank);
    Check::new(
        "plateau measure",
        summed == measure && measure <= Rational::one(),
        format!("measure {measure} at rank {rank}"),
    )
}

fn zero_factors(f: &FunctionSpec, rank: usize) -> Check {
    let half = ratio(1, 2);
    let bad = words_up_to(rank)
        .filter(|w| {
            let expected = w
                .digits()
                .iter()
                .enumerate()
                .any(|(i, &d)| d == 1 && *f.eps.epsilon_at(i + 1) == half);
            f.increment(w).is_zero() != expected
        })
        .count();
    Check::new("zero increments", bad == 0, format!("{bad} mismatches"))
}

fn surjectivity(f: &FunctionSpec) -> Check {
    let levels = [
        ratio(0, 1),
        ratio(1, 3),
        ratio(1, 2),
        ratio(5, 7),
        ratio(1, 1),
    ];
    let missing: Vec<String> = levels
        .iter()
        .filter(|y| preimage_regions(f, y, 6).map_or(true, |r| r.is_empty()))
        .map(|y| y.to_string())
        .collect();
    let detail = if missing.is_empty() {
        format!("{} levels checked", levels.len())
    } else {
        format!("empty at {}", missing.join(", "))
    };
    Check::new("level sets nonempty", missing.is_empty(), detail)
}

fn nowhere_monotone(f: &FunctionSpec, rank: usize) -> Check {
    let bad = words_up_to(rank)
        .filter(|w| {
            let s = subcylinder_signs(f, w);
            !(s.contains(&Sign::Positive) && s.contains(&Sign::Negative))
        })
        .count();
    Check::new(
        "nowhere monotone",
        bad == 0,
        format!("{bad} cylinders with one-signed children"),
    )
}

fn strictly_increasing(f: &FunctionSpec, rank: usize) -> Check {
    let mut values: Vec<Rational> = f
        .cylinders_of_rank(rank)
        .into_iter()
        .map(|c| c.base)
        .collect();
    values.push(Rational::one());
    let ok = values.windows(2).all(|p| p[0] < p[1]);
    Check::new(
        "strictly increasing",
        ok,
        format!("{} endpoints at rank {rank}", values.len()),
    )
}

fn cantor_measure(f: &FunctionSpec, rank: usize) -> Check {
    let measure = plateau_measure(f, rank);
    if f.x_schedule.is_constant() && f.x_schedule.at(1) == &qstar_core::MatrixColumn::uniform() {
        let expected = uniform_cantor_plateau_measure(rank);
        Check::new(
            "plateau measure 1-(2/3)^m",
            measure == expected,
            format!("{measure} vs {expected}"),
        )
    } else {
        Check::new(
            "plateau measure",
            measure <= Rational::one(),
            format!("{measure}"),
        )
    }
}

fn self_affinity(f: &FunctionSpec, rank: usize) -> Check {
    if let Err(e) = ifs_maps(f) {
        return Check::skipped("self-affinity", e.to_string());
    }
    match graph_sample(f, rank).and_then(|s| self_affine_residual(f, &s)) {
        Ok(r) => Check::new("self-affinity", r.is_zero(), format!("max residual {r}")),
        Err(e) => Check::new("self-affinity", false, e.to_string()),
    }
}
