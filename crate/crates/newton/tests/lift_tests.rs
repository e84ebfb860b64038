use std::sync::Arc;

use dieudonne::{standard_module_over, WittDieudonne};
use exactmath::{FiniteField, WittRing};
use newton::{
    hasse_criteria, lambda_max, lambda_min, MonomialIsocrystal, NewtonError, NewtonPolygon,
};
use num_rational::Ratio;

fn ring(p: u64, s: u32) -> WittRing {
    WittRing::new(p, s).unwrap()
}

fn half() -> Ratio<i64> {
    Ratio::new(1, 2)
}

fn ordinary_polygon(n: usize) -> NewtonPolygon {
    NewtonPolygon::new([
        (Ratio::from_integer(0), 2),
        (half(), 2 * n - 4),
        (Ratio::from_integer(1), 2),
    ])
    .unwrap()
}

#[test]
fn canonical_lift_agrees_with_the_standard_module_lift() {
    for p in [2u64, 3] {
        let r = ring(p, 6);
        for n in 2..=6 {
            for a in 1..=n {
                for b in 1..=n {
                    let iso = MonomialIsocrystal::canonical_lift(n, a, b).unwrap();
                    let conv = iso.to_witt_dieudonne(&r).unwrap();
                    let std = WittDieudonne::standard_lift(&r, n, a, b).unwrap();
                    assert_eq!(conv.f1, std.f1, "f1 at n={n} a={a} b={b}");
                    assert_eq!(conv.f2, std.f2, "f2 at n={n} a={a} b={b}");
                    assert_eq!(conv.v1, std.v1, "v1 at n={n} a={a} b={b}");
                    assert_eq!(conv.v2, std.v2, "v2 at n={n} a={a} b={b}");
                    assert!(conv.validate(), "F V = p fails at n={n} a={a} b={b}");
                }
            }
        }
    }
}

#[test]
fn canonical_lift_reduces_to_the_mod_p_tables() {
    for p in [2u64, 3] {
        let r = ring(p, 4);
        let field = Arc::new(FiniteField::new(p, 2).unwrap());
        for n in 2..=6 {
            for a in 1..=n {
                for b in 1..=n {
                    let iso = MonomialIsocrystal::canonical_lift(n, a, b).unwrap();
                    let red = iso.to_witt_dieudonne(&r).unwrap().reduce().unwrap();
                    let table = standard_module_over(field.clone(), n, a, b).unwrap();
                    for (got, want) in [
                        (&red.f1, &table.f1),
                        (&red.f2, &table.f2),
                        (&red.v1, &table.v1),
                        (&red.v2, &table.v2),
                    ] {
                        assert_eq!(got.mat, want.mat, "n={n} a={a} b={b}");
                        assert_eq!(got.twist, want.twist);
                    }
                }
            }
        }
    }
}

#[test]
fn ordinary_lift_splits_into_rank_two_cycles() {
    for n in 2..=8 {
        let iso = MonomialIsocrystal::canonical_lift(n, n, 1).unwrap();
        let cycles = iso.cycles();
        assert_eq!(cycles.len(), n);
        for c in &cycles {
            assert_eq!(c.len(), 2);
            let i = c[0];
            assert_eq!(c[1], n + i, "cycle pairs the two summands at slot {i}");
            let sum: i64 = c.iter().map(|&j| iso.vals()[j]).sum();
            let want = if i == 0 {
                0
            } else if i == n - 1 {
                2
            } else {
                1
            };
            assert_eq!(sum, want);
        }
    }
}

#[test]
fn exact_slopes_of_the_canonical_lifts() {
    for n in 2..=8 {
        let iso = MonomialIsocrystal::canonical_lift(n, n, 1).unwrap();
        assert_eq!(iso.exact_slopes(), ordinary_polygon(n));
    }
    for n in 2..=6 {
        for a in 1..=n {
            for b in a..=n {
                let iso = MonomialIsocrystal::canonical_lift(n, a, b).unwrap();
                let poly = iso.exact_slopes();
                assert_eq!(poly.is_isoclinic(), Some(half()), "n={n} a={a} b={b}");
                assert_eq!(poly.width(), 2 * n);
            }
        }
    }
    let ss2 = MonomialIsocrystal::canonical_lift(2, 1, 1).unwrap();
    let cycles = ss2.cycles();
    assert_eq!(cycles.len(), 1);
    assert_eq!(cycles[0].len(), 4);
    assert_eq!(cycles[0].iter().map(|&j| ss2.vals()[j]).sum::<i64>(), 2);

    for n in 2..=6 {
        for a in 1..=n {
            for b in 1..=n {
                let poly = MonomialIsocrystal::canonical_lift(n, a, b)
                    .unwrap()
                    .exact_slopes();
                assert!(poly.has_even_multiplicities(), "n={n} a={a} b={b}");
                assert_eq!(poly.total_rise(), Ratio::from_integer(n as i64));
                assert_eq!(poly.width(), 2 * n);
            }
        }
    }
}

#[test]
fn dual_is_an_involution_on_integral_lifts() {
    for n in 2..=5 {
        for a in 1..=n {
            for b in 1..=n {
                let iso = MonomialIsocrystal::canonical_lift(n, a, b).unwrap();
                assert_eq!(iso.dual().unwrap().dual().unwrap(), iso);
            }
        }
    }
}

#[test]
fn estimator_is_exact_on_scaled_twists() {
    let r = ring(2, 12);
    let scaled = MonomialIsocrystal::new(2, vec![0, 1, 2, 3], vec![1, 1, 1, 1], 1).unwrap();
    let plain = MonomialIsocrystal::new(2, vec![0, 1, 2, 3], vec![0, 0, 0, 0], 1).unwrap();
    for m in 1..=8 {
        let lo = scaled.lambda_min_estimate(&r, m).unwrap();
        assert_eq!(lo.value, Ratio::from_integer(1));
        assert_eq!(lo.depth, m);
        let hi = scaled.lambda_max_estimate(&r, m).unwrap();
        assert_eq!(hi.value, Ratio::from_integer(1));
        assert_eq!(plain.lambda_min_estimate(&r, m).unwrap().value, Ratio::from_integer(0));
        assert_eq!(plain.lambda_max_estimate(&r, m).unwrap().value, Ratio::from_integer(0));
    }
}

#[test]
fn estimator_reads_the_extreme_ordinary_slopes_at_depth_two() {
    let r = ring(2, 12);
    for n in 2..=5 {
        let iso = MonomialIsocrystal::canonical_lift(n, n, 1).unwrap();
        assert_eq!(
            iso.lambda_min_estimate(&r, 2).unwrap().value,
            Ratio::from_integer(0)
        );
        assert_eq!(
            iso.lambda_max_estimate(&r, 2).unwrap().value,
            Ratio::from_integer(1)
        );
    }
}

#[test]
fn estimator_brackets_the_true_slopes_on_all_lifts() {
    let r = ring(2, 26);
    for n in 2..=4 {
        for a in 1..=n {
            for b in 1..=n {
                let iso = MonomialIsocrystal::canonical_lift(n, a, b).unwrap();
                let poly = iso.exact_slopes();
                let (lo, hi) = (poly.min_slope(), poly.max_slope());
                for m in 1..=24 {
                    let est = iso.lambda_min_estimate(&r, m).unwrap();
                    assert_eq!(est.error_bound, Ratio::new(2 * n as i64, m as i64));
                    assert!(est.value <= lo, "lower estimate overshoots at n={n} a={a} b={b} m={m}");
                    assert!(lo - est.value <= est.error_bound);
                    let est = iso.lambda_max_estimate(&r, m).unwrap();
                    assert!(est.value >= hi, "upper estimate undershoots at n={n} a={a} b={b} m={m}");
                    assert!(est.value - hi <= est.error_bound);
                }
            }
        }
    }
}

#[test]
fn estimator_brackets_one_half_on_supersingular_lifts() {
    let r = ring(3, 10);
    for n in 2..=4 {
        for a in 1..=n {
            for b in a..=n {
                let iso = MonomialIsocrystal::canonical_lift(n, a, b).unwrap();
                for m in 1..=6 {
                    assert!(iso.lambda_min_estimate(&r, m).unwrap().value <= half());
                    assert!(iso.lambda_max_estimate(&r, m).unwrap().value >= half());
                }
            }
        }
    }
}

#[test]
fn estimator_reports_precision_exhaustion() {
    let r = ring(2, 3);
    let scaled = MonomialIsocrystal::new(2, vec![0, 1, 2, 3], vec![1, 1, 1, 1], 1).unwrap();
    assert!(scaled.lambda_min_estimate(&r, 2).is_ok());
    assert!(matches!(
        scaled.lambda_min_estimate(&r, 3),
        Err(NewtonError::Precision)
    ));
    assert!(matches!(
        scaled.lambda_min_estimate(&r, 0),
        Err(NewtonError::ParamRange)
    ));
    let mat = scaled.f_matrix(&r).unwrap();
    assert!(matches!(
        lambda_min(&r, &mat[..1], 1, 1),
        Err(NewtonError::Shape)
    ));
    assert!(lambda_max(&r, &mat, 1, 2).is_ok());
}

#[test]
fn hasse_criteria_match_the_slope_thresholds() {
    let quarter = Ratio::new(1, 4);
    let three_quarters = Ratio::new(3, 4);
    for p in [2u64, 3] {
        let r = ring(p, 4);
        for n in 2..=5 {
            let ordinary = ordinary_polygon(n);
            for a in 1..=n {
                for b in 1..=n {
                    let iso = MonomialIsocrystal::canonical_lift(n, a, b).unwrap();
                    let poly = iso.exact_slopes();
                    let h = hasse_criteria(&iso.to_witt_dieudonne(&r).unwrap()).unwrap();
                    assert_eq!(
                        h.minge_quarter,
                        poly.min_slope() >= quarter,
                        "p={p} n={n} a={a} b={b}"
                    );
                    assert_eq!(
                        h.maxle_threequarters,
                        poly.max_slope() <= three_quarters,
                        "p={p} n={n} a={a} b={b}"
                    );
                    assert_eq!(h.is_mu_ordinary(), poly == ordinary);
                }
            }
        }
    }
}

#[test]
fn hasse_examples() {
    let r = ring(2, 4);
    for n in 2..=6 {
        let ordinary = MonomialIsocrystal::canonical_lift(n, n, 1).unwrap();
        let h = hasse_criteria(&ordinary.to_witt_dieudonne(&r).unwrap()).unwrap();
        assert!(!h.minge_quarter);
        assert!(!h.maxle_threequarters);
        assert!(h.is_mu_ordinary());
    }
    let ss = MonomialIsocrystal::canonical_lift(2, 1, 1).unwrap();
    let h = hasse_criteria(&ss.to_witt_dieudonne(&r).unwrap()).unwrap();
    assert!(h.minge_quarter);
    assert!(h.maxle_threequarters);
    assert!(!h.is_mu_ordinary());

    // a slope-zero two-cycle forces the first inclusion to fail
    let split = MonomialIsocrystal::new(2, vec![2, 3, 0, 1], vec![0, 1, 0, 1], 1).unwrap();
    let h = hasse_criteria(&split.to_witt_dieudonne(&r).unwrap()).unwrap();
    assert!(!h.minge_quarter);

    let shallow = ring(2, 2);
    assert!(matches!(
        hasse_criteria(&ss.to_witt_dieudonne(&shallow).unwrap()),
        Err(NewtonError::Precision)
    ));
}
