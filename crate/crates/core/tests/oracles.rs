//! Checks against brute-force references that never touch the closed forms.

use zeno_core::{error_sweep, Error, RaceConfig, Rational};

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn race(x0: &str, sa: &str, st: &str) -> RaceConfig {
    RaceConfig::new(q(x0), q(sa), q(st)).unwrap()
}

/// `sum_{k=0..=n} (x0 / sA) * r^k`, one term at a time.
fn brute_force_time(race: &RaceConfig, n: u32) -> Rational {
    let mut term = race.head_start() / race.achilles_speed();
    let mut total = Rational::zero();
    for _ in 0..=n {
        total = &total + &term;
        term = &term * race.ratio();
    }
    total
}

/// Smallest `n` with `t_inf - (brute-force t_n) < eps`, by linear scan.
fn brute_force_steps(race: &RaceConfig, eps: &Rational) -> u32 {
    let limit = race.catch_up().unwrap().time;
    (0..).find(|&n| &limit - &brute_force_time(race, n) < *eps).unwrap()
}

#[test]
fn frozen_partial_sums() {
    // (1/2) * sum_{k=0..9} (1/2)^k, by hand
    assert_eq!(brute_force_time(&race("1", "2", "1"), 9), q("1023/1024"));
    assert_eq!(race("1", "2", "1").t_n_closed(9).unwrap(), q("1023/1024"));
    assert_eq!(race("1", "2", "1").x_n_closed(9).unwrap(), q("1023/512"));
}

#[test]
fn closed_forms_agree_with_term_sums() {
    for (x0, sa, st) in [("1", "2", "1"), ("3/5", "7/2", "1/3"), ("2", "1", "3"), ("5", "9", "0")] {
        let r = race(x0, sa, st);
        for n in 0..=64 {
            let expected = brute_force_time(&r, n);
            assert_eq!(r.t_n_closed(n).unwrap(), expected, "{x0} {sa} {st} n={n}");
            assert_eq!(r.x_n_closed(n).unwrap(), &expected * r.achilles_speed());
        }
    }
}

#[test]
fn equal_speeds_have_no_closed_form() {
    let r = race("1", "4/3", "4/3");
    assert_eq!(r.t_n_closed(1), Err(Error::DegenerateRatio));
    // the recurrence still runs and grows linearly
    let events = r.step_sequence(4).unwrap();
    let times: Vec<_> = events.iter().map(|e| e.time.clone()).collect();
    assert_eq!(times, vec![q("3/4"), q("3/2"), q("9/4"), q("3")]);
}

#[test]
fn steps_to_within_matches_linear_scan() {
    let cases = [
        (race("1", "2", "1"), q("1/10"), 3),
        (race("1", "2", "1"), q("2"), 0),
        (race("1", "10", "1"), q("1/1000"), 2),
    ];
    for (r, eps, frozen) in &cases {
        assert_eq!(brute_force_steps(r, eps), *frozen);
        assert_eq!(r.steps_to_within(eps).unwrap(), *frozen);
    }
    for (x0, sa, st) in [("7/3", "5", "4"), ("1/9", "11/10", "1"), ("100", "3", "1/7")] {
        let r = race(x0, sa, st);
        for eps in ["1", "1/7", "1/1000", "3/100000"] {
            let eps = q(eps);
            assert_eq!(r.steps_to_within(&eps).unwrap(), brute_force_steps(&r, &eps));
        }
    }
}

#[test]
fn residual_law() {
    let r = race("3/2", "5/2", "2/3");
    let limit = r.catch_up().unwrap().time;
    let one = Rational::one();
    for n in 0..=64 {
        let expected = r.head_start() / r.achilles_speed() * r.ratio().pow(n + 1) / (&one - r.ratio());
        assert_eq!(&limit - &brute_force_time(&r, n), expected);
        assert_eq!(r.residual(n).unwrap(), expected);
    }
}

#[test]
fn power_of_two_sums_are_exact_while_they_fit() {
    // with r = 1/2 the partial sum through term n needs n + 1 significant bits
    for (x0, sa, st) in [("1", "2", "1"), ("1/4", "8", "4"), ("16", "1/2", "1/4")] {
        let r = race(x0, sa, st);
        for n in 0..=50 {
            assert!(r.sum_naive(n).unwrap().abs_error.is_zero());
            assert!(r.sum_compensated(n).unwrap().abs_error.is_zero());
        }
    }
}

#[test]
fn power_of_two_sums_stop_being_exact_past_53_bits() {
    // r = 1/4: the sum through term n spans 2n + 1 bits
    let r = race("1", "4", "1");
    assert!(r.sum_naive(26).unwrap().abs_error.is_zero());
    assert!(r.sum_naive(27).unwrap().abs_error.is_positive());
    assert!(r.sum_compensated(27).unwrap().abs_error.is_positive());
}

#[test]
fn sweep_naive_value_freezes_while_exact_moves_on() {
    let r = race("1", "10", "1");
    let rows = error_sweep(&r, 100).unwrap();
    // once terms drop below half an ulp of the sum the naive value stops moving
    let frozen_from = rows
        .windows(2)
        .position(|w| w[0].0.value == w[1].0.value)
        .unwrap();
    let frozen = rows[frozen_from].0.value;
    assert!(rows[frozen_from..].iter().all(|(n, _)| n.value == frozen));
    for w in rows[frozen_from..].windows(2) {
        assert!(w[0].0.exact < w[1].0.exact);
        assert_ne!(w[0].0.rel_error, w[1].0.rel_error);
    }
    let (naive, comp) = rows.last().unwrap();
    assert!(naive.rel_error >= comp.rel_error);
    // compensated lands on the correctly rounded limit 1/9
    assert_eq!(comp.value, 1.0 / 9.0);
}

#[test]
fn compensated_stays_tight_for_slow_convergence() {
    let bound = zeno_core::float::ulp_multiple(3, 53);
    let r = race("1", "1000", "999");
    for n in [10, 100, 1000, 10_000] {
        let comp = r.sum_compensated(n).unwrap();
        assert!(comp.rel_error <= bound, "n={n} rel={}", comp.rel_error.to_decimal_string(25));
        let naive = r.sum_naive(n).unwrap();
        assert!(naive.rel_error <= zeno_core::float::ulp_multiple(n as u64 + 1, 52));
    }
}
