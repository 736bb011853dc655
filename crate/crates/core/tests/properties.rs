mod common;

use common::{alternating, four_specs, random_seq, uniform, words_up_to};
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use qstar_core::{
    box_dimension, classify_regime, fractal::box_count, graph_sample, ifs_maps, plateau_cylinders,
    plateau_measure, preimage_regions, ratio, root_count_lower_bound, subcylinder_signs,
    ColumnSchedule, DigitSeq, DigitWord, EpsilonSchedule, FunctionSpec, GraphSample, MatrixColumn,
    Rational, RegimeTag, Sign,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn varying_schedule() -> ColumnSchedule {
    let c = |a, b, c, d| MatrixColumn::new(ratio(a, d), ratio(b, d), ratio(c, d)).unwrap();
    ColumnSchedule::new(
        vec![c(1, 1, 2, 4)],
        vec![c(1, 2, 2, 5), c(1, 1, 1, 3), c(3, 1, 1, 5)],
    )
    .unwrap()
}

fn arb_word(max: usize) -> impl Strategy<Value = DigitWord> {
    proptest::collection::vec(0u8..3, 0..max).prop_map(|d| DigitWord::new(d).unwrap())
}

fn arb_seq() -> impl Strategy<Value = DigitSeq> {
    (arb_word(8), proptest::collection::vec(0u8..3, 1..4))
        .prop_map(|(p, t)| DigitSeq::new(p, DigitWord::new(t).unwrap()).unwrap())
}

fn lex_cmp(s: &DigitSeq, t: &DigitSeq) -> std::cmp::Ordering {
    let n = s.prefix().len().max(t.prefix().len()) + s.tail().len() * t.tail().len();
    s.truncate(n).cmp(&t.truncate(n))
}

proptest! {
    #[test]
    fn cylinders_partition(w in arb_word(8)) {
        let s = varying_schedule();
        let (left, len) = s.cylinder_interval(&w);
        let mut cursor = left.clone();
        let mut total = Rational::zero();
        for child in w.children() {
            let (cl, cn) = s.cylinder_interval(&child);
            prop_assert_eq!(&cl, &cursor);
            cursor = &cl + &cn;
            total += cn;
        }
        prop_assert_eq!(&total, &len);
        prop_assert_eq!(cursor, left + len);
    }

    #[test]
    fn encoding_round_trips(x in arb_seq()) {
        let s = varying_schedule();
        let canonical = x.canonicalize();
        let v = s.value_of(&x);
        prop_assert_eq!(&s.value_of(&canonical), &v);
        let enc = s.encode(&v, 400).unwrap();
        prop_assert_eq!(enc.full.as_ref(), Some(&canonical));
        let (left, len) = s.cylinder_interval(&enc.word);
        prop_assert!(left <= v && v <= left + len);
    }

    #[test]
    fn duals_share_value(x in arb_seq()) {
        let s = varying_schedule();
        if let Some(dual) = x.dual_representation() {
            prop_assert_eq!(s.value_of(&x), s.value_of(&dual));
        }
    }

    #[test]
    fn value_is_monotone_in_digits(a in arb_seq(), b in arb_seq()) {
        let s = varying_schedule();
        let (a, b) = (a.canonicalize(), b.canonicalize());
        let (va, vb) = (s.value_of(&a), s.value_of(&b));
        match lex_cmp(&a, &b) {
            std::cmp::Ordering::Less => prop_assert!(va <= vb),
            std::cmp::Ordering::Greater => prop_assert!(va >= vb),
            std::cmp::Ordering::Equal => prop_assert_eq!(va, vb),
        }
    }

    #[test]
    fn surjective_on_rationals(p in 0i64..=1000, q in 1i64..=1000) {
        prop_assume!(p <= q);
        let y0 = ratio(p, q);
        for (_, f) in four_specs() {
            prop_assert!(!preimage_regions(&f, &y0, 5).unwrap().is_empty());
        }
    }
}

#[test]
fn cylinder_nesting() {
    let s = varying_schedule();
    for w in words_up_to(5) {
        let (l, n) = s.cylinder_interval(&w);
        for c in w.children() {
            let (cl, cn) = s.cylinder_interval(&c);
            assert!(l <= cl && &cl + &cn <= &l + &n);
        }
    }
}

#[test]
fn zero_increment_iff_plateau_digit() {
    let f = FunctionSpec::new(
        varying_schedule(),
        EpsilonSchedule::new(
            vec![ratio(1, 2)],
            vec![ratio(0, 1), ratio(1, 2), ratio(3, 4)],
        )
        .unwrap(),
    );
    for w in words_up_to(6) {
        let zero_factor = w
            .digits()
            .iter()
            .enumerate()
            .any(|(i, &d)| d == 1 && *f.eps.epsilon_at(i + 1) == ratio(1, 2));
        assert_eq!(f.increment(&w).is_zero(), zero_factor, "{w}");
    }
}

#[test]
fn nowhere_monotone_children_disagree() {
    for f in [uniform(ratio(1, 1)), uniform(ratio(3, 5))] {
        assert_eq!(classify_regime(&f.eps).tag, RegimeTag::NowhereMonotone);
        for w in words_up_to(6) {
            let signs = subcylinder_signs(&f, &w);
            let minority = if signs.iter().filter(|&&s| s == Sign::Positive).count() == 2 {
                Sign::Negative
            } else {
                Sign::Positive
            };
            assert_eq!(signs.iter().filter(|&&s| s == minority).count(), 1, "{w}");
            assert!(!signs.contains(&Sign::Zero));
        }
    }
}

#[test]
fn plateaus_are_flat() {
    let f = uniform(ratio(1, 2));
    for w in plateau_cylinders(&f, 6) {
        let left = f.eval_exact(&w.then_repeat(0));
        let right = f.eval_exact(&w.then_repeat(2));
        let (l, n) = f.x_schedule.cylinder_interval(&w);
        let mid = f
            .x_schedule
            .encode(&(l + n / ratio(2, 1)), 64)
            .unwrap()
            .full
            .unwrap();
        assert_eq!(left, right);
        assert_eq!(f.eval_exact(&mid), left);
    }
}

#[test]
fn plateau_measure_grows_below_one() {
    for f in [
        uniform(ratio(1, 2)),
        FunctionSpec::new(
            varying_schedule(),
            EpsilonSchedule::new(vec![], vec![ratio(1, 2), ratio(1, 4)]).unwrap(),
        ),
    ] {
        let mut last = Rational::zero();
        for rank in 1..=25 {
            let m = plateau_measure(&f, rank);
            assert!(m >= last && m <= Rational::one());
            last = m;
        }
    }
}

/// Float evaluation of `f` at `x = i / n` from integer digits (ternary matrix only).
fn grid_value(f: &FunctionSpec, i: u64, n: u64) -> f64 {
    if i == n {
        return 1.0;
    }
    let (mut r, mut sum, mut prod) = (i, 0.0, 1.0);
    for k in 1..=70 {
        r *= 3;
        let d = (r / n) as u8;
        r %= n;
        let g = f.g_column_at(k);
        sum += prod * g.delta(d).to_f64().unwrap();
        prod *= g.g(d).to_f64().unwrap();
    }
    sum
}

#[test]
fn level_set_soundness_against_grid() {
    let n = 200_000u64;
    let mut rng = StdRng::seed_from_u64(21);
    for e in [ratio(1, 1), ratio(3, 4), ratio(1, 4), ratio(1, 2)] {
        let f = uniform(e);
        let ys: Vec<f64> = (0..=n).map(|i| grid_value(&f, i, n)).collect();
        for _ in 0..5 {
            let q: i64 = rng.random_range(2..=997);
            let y0 = ratio(rng.random_range(1..q), q);
            let y = y0.to_f64().unwrap();
            let regions = preimage_regions(&f, &y0, 7).unwrap();
            let covers = |x: f64| {
                regions.iter().any(|r| {
                    r.x_interval.0.to_f64().unwrap() - 1e-9 <= x
                        && x <= r.x_interval.1.to_f64().unwrap() + 1e-9
                })
            };
            for i in 0..n as usize {
                let x = i as f64 / n as f64;
                if (ys[i] - y).abs() <= 1e-12 {
                    assert!(covers(x), "near-solution {x} uncovered for y0={y0}");
                }
                if (ys[i] - y) * (ys[i + 1] - y) < 0.0 {
                    let hits = regions.iter().any(|r| {
                        r.x_interval.0.to_f64().unwrap() <= x + 1.0 / n as f64 + 1e-12
                            && x <= r.x_interval.1.to_f64().unwrap() + 1e-12
                    });
                    assert!(hits, "crossing near {x} uncovered for y0={y0}");
                }
            }
        }
    }
}

#[test]
fn level_set_refinement_is_monotone() {
    let union_contains = |outer: &[qstar_core::SolutionRegion], r: &qstar_core::SolutionRegion| {
        outer
            .iter()
            .any(|o| o.x_interval.0 <= r.x_interval.0 && r.x_interval.1 <= o.x_interval.1)
    };
    for (_, f) in four_specs() {
        for y0 in [
            ratio(1, 2),
            ratio(1, 3),
            ratio(5, 7),
            ratio(0, 1),
            ratio(1, 1),
        ] {
            let mut previous = preimage_regions(&f, &y0, 1).unwrap();
            for d in 2..=8 {
                let current = preimage_regions(&f, &y0, d).unwrap();
                for r in &current {
                    assert!(
                        union_contains(&previous, r),
                        "depth {d}, y0 {y0}, {}",
                        r.word
                    );
                    assert!(r.f_range.0 <= y0 && y0 <= r.f_range.1);
                }
                previous = current;
            }
        }
    }
}

#[test]
fn nowhere_monotone_root_counts_grow() {
    let f = uniform(ratio(1, 1));
    for y0 in [ratio(1, 2), ratio(1, 5), ratio(3, 7), ratio(9, 10)] {
        let b: Vec<usize> = [4, 8, 12]
            .iter()
            .map(|&d| root_count_lower_bound(&f, &y0, d).unwrap())
            .collect();
        assert!(b[0] < b[1] && b[1] < b[2], "y0 {y0}: {b:?}");
    }
}

#[test]
fn cantor_level_sets_are_points_or_segments() {
    let f = uniform(ratio(1, 2));
    for (p, q) in [(1, 2), (1, 4), (3, 4), (1, 3), (2, 5), (5, 8)] {
        let y0 = ratio(p, q);
        let regions = preimage_regions(&f, &y0, 10).unwrap();
        let plateaus: Vec<_> = regions.iter().filter(|r| r.is_plateau()).collect();
        if plateaus.is_empty() {
            // nested chain: at most two touching cylinders around one point
            assert!(
                !regions.is_empty() && regions.len() <= 2,
                "{y0}: {}",
                regions.len()
            );
            if regions.len() == 2 {
                assert_eq!(regions[0].x_interval.1, regions[1].x_interval.0);
            }
        } else {
            assert_eq!(regions.len(), 1, "{y0}");
        }
    }
}

#[test]
fn sample_points_satisfy_the_function() {
    for (_, f) in four_specs() {
        let GraphSample::Exact(points) = graph_sample(&f, 3).unwrap() else {
            unreachable!()
        };
        assert!(points.windows(2).all(|p| p[0].0 < p[1].0));
        for (x, y) in &points {
            let full = f.x_schedule.encode(x, 128).unwrap().full.unwrap();
            assert_eq!(&f.eval_exact(&full), y);
        }
    }
}

#[test]
fn map_images_tile_the_interval() {
    let f = FunctionSpec::new(
        ColumnSchedule::constant(
            MatrixColumn::new(ratio(1, 5), ratio(1, 2), ratio(3, 10)).unwrap(),
        ),
        EpsilonSchedule::constant(ratio(2, 3)).unwrap(),
    );
    let maps = ifs_maps(&f).unwrap();
    let mut cursor = Rational::zero();
    for m in &maps {
        assert_eq!(m.bx, cursor);
        cursor = &m.bx + &m.qx;
        assert!(m.gy.abs() < Rational::one() && !m.gy.is_zero());
    }
    assert!(cursor.is_one());
    let sample = graph_sample(&f, 4).unwrap();
    assert!(qstar_core::self_affine_residual(&f, &sample)
        .unwrap()
        .is_zero());
}

#[test]
fn box_counts_respect_coarsening() {
    for (_, f) in four_specs() {
        for n in [9usize, 27, 81] {
            assert!(box_count(&f, n).unwrap() <= box_count(&f, 3 * n).unwrap());
        }
    }
}

/// Independent box count of the Cantor function graph: dense exact samples
/// at `k / 3^r`, filling rows between consecutive (monotone) values.
fn cantor_box_count(n: u64, r: u32) -> usize {
    let m = 3u64.pow(r);
    let cantor = |k: u64| -> f64 {
        if k == m {
            return 1.0;
        }
        let (mut rest, mut value, mut bit) = (k, 0.0, 0.5);
        for i in 1..=r {
            let place = 3u64.pow(r - i);
            let d = rest / place;
            rest %= place;
            match d {
                0 => {}
                1 => return value + bit,
                _ => value += bit,
            }
            bit /= 2.0;
        }
        value
    };
    let mut cells = std::collections::HashSet::new();
    let cell = |v: f64| ((v * n as f64).floor() as u64).min(n - 1);
    let mut prev = cantor(0);
    for k in 1..=m {
        let y = cantor(k);
        let col = ((k - 1) * n / m).min(n - 1);
        for row in cell(prev)..=cell(y).max(cell(prev)) {
            cells.insert((col, row));
        }
        prev = y;
    }
    cells.len()
}

#[test]
fn cantor_graph_dimension_near_one() {
    let scales = [27usize, 81, 243];
    let f = uniform(ratio(1, 2));
    let dim = box_dimension(&f, &scales).unwrap();
    let oracle: Vec<(f64, f64)> = scales
        .iter()
        .map(|&n| {
            (
                (n as f64).ln(),
                (cantor_box_count(n as u64, 10) as f64).ln(),
            )
        })
        .collect();
    let slope = (oracle[2].1 - oracle[0].1) / (oracle[2].0 - oracle[0].0);
    assert!((0.9..=1.1).contains(&dim.estimate), "{}", dim.estimate);
    assert!((0.9..=1.1).contains(&slope), "oracle {slope}");
}

#[test]
fn nowhere_monotone_graph_dimension_exceeds_one() {
    let dim = box_dimension(&uniform(ratio(1, 1)), &[27, 81, 243]).unwrap();
    assert!(dim.estimate > 1.0, "{}", dim.estimate);
}

#[test]
fn mixed_exact_and_float_paths_agree() {
    let mut rng = StdRng::seed_from_u64(9);
    for (_, f) in four_specs().into_iter().chain([("alt", alternating())]) {
        for _ in 0..200 {
            let seq = random_seq(&mut rng, 6, 3);
            let x = f.x_schedule.value_of(&seq);
            let xf = x.to_f64().unwrap();
            let approx = f.eval_approx(xf, 1e-10).unwrap();
            // xf may differ from x by an ulp; bound through the continuity of f
            // on the rank-m cylinder around the float instead.
            let exact_x = Rational::from_float(xf).unwrap();
            let enc = f.x_schedule.encode(&exact_x, 60).unwrap();
            let range = f.range_on_cylinder(&enc.word);
            assert!(approx >= range.lo.to_f64().unwrap() - 1e-10);
            assert!(approx <= range.hi.to_f64().unwrap() + 1e-10);
        }
    }
}
