use exactmath::{howell_rows, kernel_mod, smith_vals, MathError, WittElem, WittLattice, WittRing};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ring2() -> WittRing {
    WittRing::new(2, 8).unwrap()
}

fn rand_rows(ring: &WittRing, rng: &mut ChaCha8Rng, nrows: usize, ncols: usize) -> Vec<Vec<WittElem>> {
    let m = ring.modulus_int();
    (0..nrows)
        .map(|_| {
            (0..ncols)
                .map(|_| WittElem {
                    a0: rng.gen::<u64>() as u128 % m,
                    a1: rng.gen::<u64>() as u128 % m,
                })
                .collect()
        })
        .collect()
}

/// every R-combination of the rows, for brute-force span comparisons at tiny
/// precision; elements of R/p^s are pairs below p^s
fn span_set(ring: &WittRing, rows: &[Vec<WittElem>]) -> std::collections::HashSet<Vec<(u128, u128)>> {
    let m = ring.modulus_int() as usize;
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut set = std::collections::HashSet::new();
    let k = rows.len();
    let total = (m * m).pow(k as u32);
    for mut idx in 0..total {
        let mut acc = vec![ring.zero(); ncols];
        for row in rows {
            let a0 = (idx % m) as u128;
            idx /= m;
            let a1 = (idx % m) as u128;
            idx /= m;
            let c = WittElem { a0, a1 };
            for (a, &b) in acc.iter_mut().zip(row) {
                *a = ring.add(*a, ring.mul(c, b));
            }
        }
        set.insert(acc.iter().map(|e| (e.a0, e.a1)).collect());
    }
    set
}

#[test]
fn howell_preserves_the_span_small_brute_force() {
    let ring = WittRing::new(2, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..25 {
        let rows = rand_rows(&ring, &mut rng, 2, 2);
        let h = howell_rows(&ring, 2, rows.clone());
        assert_eq!(span_set(&ring, &rows), span_set(&ring, &h));
    }
}

#[test]
fn howell_form_is_canonical_under_generator_shuffles_and_mixes() {
    let ring = ring2();
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..50 {
        let rows = rand_rows(&ring, &mut rng, 3, 3);
        let h1 = howell_rows(&ring, 3, rows.clone());
        // shuffle and mix: add random multiples of other generators
        let mut mixed = rows.clone();
        mixed.reverse();
        let cs: Vec<WittElem> = (0..rows.len())
            .map(|_| WittElem {
                a0: rng.gen::<u64>() as u128 % ring.modulus_int(),
                a1: rng.gen::<u64>() as u128 % ring.modulus_int(),
            })
            .collect();
        let extra: Vec<WittElem> = (0..3)
            .map(|j| {
                let mut acc = ring.zero();
                for (i, row) in rows.iter().enumerate() {
                    acc = ring.add(acc, ring.mul(cs[i], row[j]));
                }
                acc
            })
            .collect();
        mixed.push(extra);
        let h2 = howell_rows(&ring, 3, mixed);
        assert_eq!(h1, h2);
    }
}

#[test]
fn kernel_mod_is_sound_and_complete_small_brute_force() {
    let ring = WittRing::new(2, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..20 {
        let rows = rand_rows(&ring, &mut rng, 2, 3);
        let ker = kernel_mod(&ring, 3, &rows);
        // soundness
        for z in &ker {
            for j in 0..3 {
                let mut acc = ring.zero();
                for (i, row) in rows.iter().enumerate() {
                    acc = ring.add(acc, ring.mul(z[i], row[j]));
                }
                assert!(ring.is_zero(acc));
            }
        }
        // completeness by cardinality: enumerate all x in R^2 with x A = 0
        let m = ring.modulus_int() as usize;
        let mut count = 0usize;
        for idx in 0..(m * m).pow(2) {
            let mut t = idx;
            let mut x = Vec::new();
            for _ in 0..2 {
                let a0 = (t % m) as u128;
                t /= m;
                let a1 = (t % m) as u128;
                t /= m;
                x.push(WittElem { a0, a1 });
            }
            let ok = (0..3).all(|j| {
                let mut acc = ring.zero();
                for (i, row) in rows.iter().enumerate() {
                    acc = ring.add(acc, ring.mul(x[i], row[j]));
                }
                ring.is_zero(acc)
            });
            if ok {
                count += 1;
            }
        }
        assert_eq!(span_set(&ring, &ker).len(), count);
    }
}

#[test]
fn colength_and_divisors_basic_examples() {
    let ring = ring2();
    let n = 3;
    let std = WittLattice::standard(&ring, n, 1).unwrap();
    assert_eq!(std.colength_in(&std).unwrap(), 0);
    assert_eq!(std.elementary_divisors_in(&std).unwrap(), vec![0, 0, 0]);

    let l = WittLattice::from_diag_powers(&ring, 1, &[1, 0, 0]).unwrap();
    assert_eq!(l.colength_in(&std).unwrap(), 1);
    assert_eq!(l.elementary_divisors_in(&std).unwrap(), vec![0, 0, 1]);

    let deep = WittLattice::from_diag_powers(&ring, 1, &[1, 1, -1]).unwrap();
    assert!(std.contains(&deep).is_ok());
    assert_eq!(deep.elementary_divisors_in(&deep).unwrap(), vec![0, 0, 0]);
}

#[test]
fn containment_and_colength_errors() {
    let ring = ring2();
    let std = WittLattice::standard(&ring, 2, 1).unwrap();
    let big = WittLattice::from_diag_powers(&ring, 1, &[-1, 0]).unwrap();
    assert!(big.contains(&std).unwrap());
    assert!(!std.contains(&big).unwrap());
    assert!(matches!(
        big.colength_in(&std),
        Err(MathError::NotContained)
    ));
}

fn random_window_lattice(
    ring: &WittRing,
    rng: &mut ChaCha8Rng,
    n: usize,
    r: u32,
) -> WittLattice {
    let std = WittLattice::standard(ring, n, r).unwrap();
    let field = ring.residue_field().unwrap();
    // random walk: a few up/down colength-1 steps staying in the window
    let mut cur = std;
    for _ in 0..4 {
        let up = rng.gen_bool(0.5);
        let nexts = if up {
            cur.colength_one_superlattices(&field)
        } else {
            cur.maximal_sublattices(&field)
        };
        if !nexts.is_empty() {
            cur = nexts[rng.gen_range(0..nexts.len())].clone();
        }
    }
    cur
}

#[test]
fn modular_law_for_colengths() {
    // colength(L/\M <= M) + colength(L/\M <= L) =
    // colength(L <= L+M) + colength(M <= L+M)
    let ring = ring2();
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..40 {
        let l = random_window_lattice(&ring, &mut rng, 3, 1);
        let m = random_window_lattice(&ring, &mut rng, 3, 1);
        let cap = l.intersection(&m).unwrap();
        let cup = l.sum(&m).unwrap();
        let lhs = cap.colength_in(&m).unwrap() + cap.colength_in(&l).unwrap();
        let rhs = l.colength_in(&cup).unwrap() + m.colength_in(&cup).unwrap();
        assert_eq!(lhs, rhs);
        assert!(l.contains(&cap).unwrap());
        assert!(cup.contains(&l).unwrap());
        assert!(cup.contains(&m).unwrap());
    }
}

#[test]
fn scale_window_overflow_is_explicit() {
    let ring = ring2();
    let std = WittLattice::standard(&ring, 2, 1).unwrap();
    let up = std.scale(1).unwrap();
    assert_eq!(up.colength_in(&std).unwrap(), 2);
    assert!(matches!(
        std.scale(2),
        Err(MathError::WindowOverflow { .. })
    ));
    assert!(matches!(
        std.scale(-2),
        Err(MathError::WindowOverflow { .. })
    ));
    let back = up.scale(-1).unwrap();
    assert_eq!(back, std);
}

#[test]
fn neighbor_counts_match_projective_line_counts() {
    // q = p^2; the standard lattice in the r=1 window sees all
    // (q^n - 1)/(q - 1) colength-1 neighbors in both directions
    for (p, n, expect) in [(2u64, 2usize, 5usize), (3, 2, 10), (2, 3, 21)] {
        let ring = WittRing::new(p, 8).unwrap();
        let field = ring.residue_field().unwrap();
        let std = WittLattice::standard(&ring, n, 1).unwrap();
        assert_eq!(std.colength_one_superlattices(&field).len(), expect);
        assert_eq!(std.maximal_sublattices(&field).len(), expect);
    }
}

#[test]
fn window_boundary_prunes_neighbors() {
    let ring = ring2();
    let field = ring.residue_field().unwrap();
    // bottom of the window: p * std at r=1 has no in-window sublattices
    let bottom = WittLattice::from_diag_powers(&ring, 1, &[1, 1]).unwrap();
    assert!(bottom.maximal_sublattices(&field).is_empty());
    assert_eq!(bottom.colength_one_superlattices(&field).len(), 5);
    let top = WittLattice::from_diag_powers(&ring, 1, &[-1, -1]).unwrap();
    assert!(top.colength_one_superlattices(&field).is_empty());
    assert_eq!(top.maximal_sublattices(&field).len(), 5);
}

#[test]
fn smith_vals_examples_and_invariance() {
    let ring = ring2();
    let rows = vec![
        vec![ring.from_pair(2, 0), ring.zero()],
        vec![ring.zero(), ring.from_pair(4, 0)],
    ];
    assert_eq!(smith_vals(&ring, &rows), vec![1, 2]);
    // row/column operations preserve the multiset
    let mixed = vec![
        vec![ring.from_pair(2, 0), ring.from_pair(4, 0)],
        vec![ring.from_pair(2, 0), ring.from_pair(8, 0)],
    ];
    // det = 2*8 - 4*2 = 8 -> vals sum to 3, min val 1
    assert_eq!(smith_vals(&ring, &mixed), vec![1, 2]);
}

#[test]
fn intersection_is_the_largest_common_sublattice_brute() {
    let ring = ring2();
    let field = ring.residue_field().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for _ in 0..20 {
        let l = random_window_lattice(&ring, &mut rng, 2, 1);
        let m = random_window_lattice(&ring, &mut rng, 2, 1);
        let cap = l.intersection(&m).unwrap();
        assert!(l.contains(&cap).unwrap() && m.contains(&cap).unwrap());
        // no strictly larger common sublattice: every superlattice of cap
        // inside the window fails one of the containments unless it is cap
        for up in cap.colength_one_superlattices(&field) {
            assert!(!(l.contains(&up).unwrap() && m.contains(&up).unwrap()));
        }
    }
}
