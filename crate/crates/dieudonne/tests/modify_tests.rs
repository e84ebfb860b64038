use std::sync::Arc;

use dieudonne::{
    eo_classify, modify, standard_module_over, DieudonneError, EOSignature, WittDieudonne,
};
use exactmath::{WittLattice, WittRing};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ring(p: u64) -> WittRing {
    WittRing::new(p, 6).unwrap()
}

#[test]
fn standard_lift_validates_and_reduces_to_the_table() {
    for p in [2u64, 3] {
        let w = ring(p);
        for n in 2..=4 {
            for a in 1..=n {
                for b in 1..=n {
                    let lift = WittDieudonne::standard_lift(&w, n, a, b).unwrap();
                    assert!(lift.validate(), "p={p} n={n} a={a} b={b}");
                    let red = lift.reduce().unwrap();
                    assert!(red.validate());
                    let table = standard_module_over(red.field.clone(), n, a, b).unwrap();
                    assert_eq!(red.f1.mat, table.f1.mat);
                    assert_eq!(red.f2.mat, table.f2.mat);
                    assert_eq!(red.v1.mat, table.v1.mat);
                    assert_eq!(red.v2.mat, table.v2.mat);
                }
            }
        }
    }
}

#[test]
fn identity_modification_changes_nothing() {
    let w = ring(3);
    let n = 3;
    let std = WittLattice::standard(&w, n, 1).unwrap();
    for (a, b) in [(1, 1), (2, 3), (3, 1)] {
        let lift = WittDieudonne::standard_lift(&w, n, a, b).unwrap();
        let (m, sig) = modify(&lift, &std, &std).unwrap();
        assert_eq!(sig, EOSignature { a1: 1, a2: n - 1 });
        assert!(m.validate());
        let red = lift.reduce().unwrap();
        assert_eq!(m.f1.mat, red.f1.mat);
        assert_eq!(m.v2.mat, red.v2.mat);
        assert_eq!(eo_classify(&m).unwrap(), (a, b));
    }
}

#[test]
fn image_of_v_with_scaled_partner_kills_the_first_hodge_rank() {
    for p in [2u64, 3] {
        let w = ring(p);
        for n in 2..=4 {
            for b in 1..=n {
                let lift = WittDieudonne::standard_lift(&w, n, 1, b).unwrap();
                // V D2 = W e_{1,1} + p D1 when a = 1
                let mut exps = vec![1; n];
                exps[0] = 0;
                let e1 = WittLattice::from_diag_powers(&w, 1, &exps).unwrap();
                let e2 = WittLattice::from_diag_powers(&w, 1, &vec![1; n]).unwrap();

                // same lattice generated directly by the V-table columns
                let std = WittLattice::standard(&w, n, 1).unwrap();
                let mut gens = Vec::new();
                for row in std.shifted_rows() {
                    let img: Vec<_> = (0..n)
                        .map(|i| {
                            (0..n).fold(w.zero(), |acc, j| {
                                w.add(acc, w.mul(lift.v2[i][j], w.sigma(row[j])))
                            })
                        })
                        .collect();
                    gens.push(img);
                }
                let v_image = WittLattice::from_shifted_rows(&w, n, 1, gens).unwrap();
                assert_eq!(v_image, e1);

                let (m, sig) = modify(&lift, &e1, &e2).unwrap();
                assert_eq!(sig, EOSignature { a1: 0, a2: n });
                assert!(m.validate());
                assert_eq!(m.signature(), sig);
                assert!(matches!(
                    eo_classify(&m),
                    Err(DieudonneError::Unclassifiable)
                ));
            }
        }
    }
}

fn chain_lattices(w: &WittRing, n: usize, i: usize) -> (WittLattice, WittLattice) {
    let mut e1 = vec![1; n];
    for x in e1.iter_mut().take(i) {
        *x = 0;
    }
    let mut e2 = vec![1; n];
    for x in e2.iter_mut().take(i - 1) {
        *x = 0;
    }
    (
        WittLattice::from_diag_powers(w, 1, &e1).unwrap(),
        WittLattice::from_diag_powers(w, 1, &e2).unwrap(),
    )
}

#[test]
fn formula_signature_agrees_with_direct_ranks_on_chains() {
    for p in [2u64, 3] {
        let w = ring(p);
        for n in 2..=3 {
            for a in 1..=n {
                for b in a..=n {
                    let lift = WittDieudonne::standard_lift(&w, n, a, b).unwrap();
                    for i in a..=b {
                        let (e1, e2) = chain_lattices(&w, n, i);
                        let (m, sig) = modify(&lift, &e1, &e2).unwrap();
                        assert!(m.validate());
                        assert_eq!(m.signature(), sig, "p={p} n={n} a={a} b={b} i={i}");
                        assert_eq!(sig.a1 + sig.a2, n);
                        assert_eq!(sig, EOSignature { a1: 0, a2: n });
                    }
                }
            }
        }
    }
}

#[test]
fn formula_signature_agrees_on_random_stable_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    for p in [2u64, 3] {
        let w = ring(p);
        let field = Arc::new(exactmath::FiniteField::new(p, 2).unwrap());
        let n = 3;
        let std = WittLattice::standard(&w, n, 1).unwrap();
        for (a, b) in [(1, 2), (2, 2), (1, 3), (3, 2)] {
            let lift = WittDieudonne::standard_lift(&w, n, a, b).unwrap();
            let mut e1 = std.clone();
            let mut e2 = std.clone();
            let mut hits = 0;
            for step in 0..40 {
                let shrink_first = rng.gen_bool(0.5);
                let cands = if shrink_first {
                    e1.maximal_sublattices(&field)
                } else {
                    e2.maximal_sublattices(&field)
                };
                let mut stable: Vec<_> = cands
                    .into_iter()
                    .filter(|c| {
                        let (x, y) = if shrink_first {
                            (c, &e2)
                        } else {
                            (&e1, c)
                        };
                        modify(&lift, x, y).is_ok()
                    })
                    .collect();
                if stable.is_empty() {
                    continue;
                }
                let pick = rng.gen_range(0..stable.len());
                if shrink_first {
                    e1 = stable.swap_remove(pick);
                } else {
                    e2 = stable.swap_remove(pick);
                }
                let (m, sig) = modify(&lift, &e1, &e2).unwrap();
                assert!(m.validate(), "p={p} a={a} b={b} step={step}");
                assert_eq!(m.signature(), sig);
                assert_eq!(sig.a1 + sig.a2, n);
                hits += 1;
            }
            assert!(hits > 0, "walk never moved for p={p} ({a},{b})");
        }
    }
}

#[test]
fn unstable_and_misshapen_pairs_are_rejected() {
    let w = ring(2);
    let n = 3;
    let lift = WittDieudonne::standard_lift(&w, n, 2, 2).unwrap();
    let std = WittLattice::standard(&w, n, 1).unwrap();
    let p_std = std.scale(1).unwrap();
    assert!(matches!(
        modify(&lift, &p_std, &std),
        Err(DieudonneError::Unstable)
    ));
    let above = std.scale(-1).unwrap();
    assert!(matches!(
        modify(&lift, &above, &std),
        Err(DieudonneError::Unstable)
    ));
    let small = WittLattice::standard(&w, 2, 1).unwrap();
    assert!(matches!(
        modify(&lift, &small, &small),
        Err(DieudonneError::Shape)
    ));
}
