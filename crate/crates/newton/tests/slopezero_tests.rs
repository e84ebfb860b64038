use exactmath::{FiniteField, WittLattice, WittRing};
use newton::{MonomialIsocrystal, NewtonError, SlopeZeroLattice};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

// margins: random walks move pivots by at most 3, the chains by at most
// rank - 1, scaling by one and iterated images by the largest in-cycle
// valuation drift, which the samplers keep at 3 or less
const PREC: u32 = 25;
const RADIUS: u32 = 12;

fn ring() -> WittRing {
    WittRing::new(2, PREC).unwrap()
}

/// random permutation with each cycle given as many +1 as -1 valuations
fn random_pure_ambient(rng: &mut ChaCha8Rng, n: usize) -> MonomialIsocrystal {
    let size = 2 * n;
    let mut perm: Vec<usize> = (0..size).collect();
    perm.shuffle(rng);
    let mut vals = vec![0i64; size];
    let mut seen = vec![false; size];
    for start in 0..size {
        if seen[start] {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut j = perm[start];
        while j != start {
            seen[j] = true;
            cyc.push(j);
            j = perm[j];
        }
        let k = rng.gen_range(0..=cyc.len() / 2);
        cyc.shuffle(rng);
        for (idx, &pos) in cyc.iter().enumerate() {
            vals[pos] = if idx < k {
                1
            } else if idx < 2 * k {
                -1
            } else {
                0
            };
        }
    }
    MonomialIsocrystal::new(n, perm, vals, 1).unwrap()
}

/// diagonal exponents fixed by the ambient map, read off cycle by cycle
fn invariant_exps(amb: &MonomialIsocrystal) -> Vec<i32> {
    let size = amb.size();
    let mut exps = vec![i32::MIN; size];
    for start in 0..size {
        if exps[start] != i32::MIN {
            continue;
        }
        exps[start] = 0;
        let mut j = start;
        loop {
            let next = amb.perm()[j];
            if next == start {
                break;
            }
            exps[next] = exps[j] + amb.vals()[j] as i32;
            j = next;
        }
    }
    exps
}

fn in_class(amb: &MonomialIsocrystal, lat: &WittLattice) -> bool {
    SlopeZeroLattice::new(amb.clone(), lat.clone())
        .unwrap()
        .in_lat1()
        .unwrap_or(false)
}

/// short random walk through colength-one neighbors, rejecting steps that
/// leave the class
fn random_walk(
    rng: &mut ChaCha8Rng,
    amb: &MonomialIsocrystal,
    ring: &WittRing,
    field: &FiniteField,
    steps: usize,
) -> WittLattice {
    let mut cur = WittLattice::from_diag_powers(ring, RADIUS, &invariant_exps(amb)).unwrap();
    for _ in 0..steps {
        let candidates = if rng.gen_bool(0.5) {
            cur.maximal_sublattices(field)
        } else {
            cur.colength_one_superlattices(field)
        };
        let mut accepted = None;
        for _ in 0..20 {
            let cand = candidates.choose(rng).unwrap();
            if in_class(amb, cand) {
                accepted = Some(cand.clone());
                break;
            }
        }
        match accepted {
            Some(l) => cur = l,
            None => break,
        }
    }
    cur
}

fn f_pow(amb: &MonomialIsocrystal, lat: &WittLattice, k: usize) -> WittLattice {
    let mut out = lat.clone();
    for _ in 0..k {
        out = amb.apply_to_lattice(&out).unwrap();
    }
    out
}

/// intersection of the first j + 1 iterated images, computed directly
fn brute_meet(amb: &MonomialIsocrystal, lat: &WittLattice, j: usize) -> WittLattice {
    let mut acc = lat.clone();
    let mut fp = lat.clone();
    for _ in 0..j {
        fp = amb.apply_to_lattice(&fp).unwrap();
        acc = acc.intersection(&fp).unwrap();
    }
    acc
}

#[test]
fn chain_laws_on_random_lattices() {
    let r = ring();
    let field = r.residue_field().unwrap();
    let mut total = 0usize;
    for (n, count) in [(1usize, 300usize), (2, 400), (3, 300)] {
        let rank = 2 * n;
        let mut rng = ChaCha8Rng::seed_from_u64(0xBEE5 + n as u64);
        for inst in 0..count {
            let amb = random_pure_ambient(&mut rng, n);
            let steps = rng.gen_range(0..=2);
            let h = random_walk(&mut rng, &amb, &r, &field, steps);
            let calc = SlopeZeroLattice::new(amb.clone(), h.clone())
                .unwrap()
                .calculus()
                .unwrap();

            assert!(calc.s <= rank - 1, "n={n} inst={inst} s={}", calc.s);
            assert!(calc.t <= rank - 1, "n={n} inst={inst} t={}", calc.t);
            assert!(calc.in_lat1);
            for lat in calc.s_chain.iter().chain(calc.t_chain.iter()) {
                assert!(in_class(&amb, lat), "chain leaves the class at n={n} inst={inst}");
            }
            let f_stable = h == amb.apply_to_lattice(&h).unwrap();
            assert_eq!(calc.s == 0, f_stable, "n={n} inst={inst}");
            assert_eq!(calc.t == 0, f_stable, "n={n} inst={inst}");
            total += 1;
            if inst % 5 != 0 {
                continue;
            }

            // the chains commute with the ambient map and with scaling
            let fh = amb.apply_to_lattice(&h).unwrap();
            let fcalc = SlopeZeroLattice::new(amb.clone(), fh)
                .unwrap()
                .calculus()
                .unwrap();
            assert_eq!(fcalc.s, calc.s);
            assert_eq!(fcalc.t, calc.t);
            for i in 0..=calc.s {
                assert_eq!(
                    fcalc.s_chain[i],
                    amb.apply_to_lattice(&calc.s_chain[i]).unwrap()
                );
            }
            for i in 0..=calc.t {
                assert_eq!(
                    fcalc.t_chain[i],
                    amb.apply_to_lattice(&calc.t_chain[i]).unwrap()
                );
            }
            let pcalc = SlopeZeroLattice::new(amb.clone(), h.scale(1).unwrap())
                .unwrap()
                .calculus()
                .unwrap();
            assert_eq!(pcalc.s, calc.s);
            assert_eq!(pcalc.t, calc.t);
            for i in 0..=calc.s {
                assert_eq!(pcalc.s_chain[i], calc.s_chain[i].scale(1).unwrap());
            }
            for i in 0..=calc.t {
                assert_eq!(pcalc.t_chain[i], calc.t_chain[i].scale(1).unwrap());
            }

            // composing the operators adds indices
            for j in 0..=calc.s + 1 {
                let sub = SlopeZeroLattice::new(amb.clone(), calc.s_i(j).clone())
                    .unwrap()
                    .calculus()
                    .unwrap();
                assert_eq!(sub.s, calc.s.saturating_sub(j));
                for i in 0..=sub.s + 1 {
                    assert_eq!(sub.s_i(i), calc.s_i(i + j));
                }
            }
            for j in 0..=calc.t + 1 {
                let sub = SlopeZeroLattice::new(amb.clone(), calc.t_i(j).clone())
                    .unwrap()
                    .calculus()
                    .unwrap();
                assert_eq!(sub.t, calc.t.saturating_sub(j));
                for i in 0..=sub.t + 1 {
                    assert_eq!(sub.t_i(i), calc.t_i(i + j));
                }
            }

            // meets of partial sums land on one of four known lattices
            for i in 0..=calc.s + 1 {
                for j in 0..=i + calc.t + 1 {
                    let lhs = brute_meet(&amb, calc.s_i(i), j);
                    let rhs = if i >= calc.s {
                        calc.s_infty().clone()
                    } else if j <= i {
                        f_pow(&amb, &calc.s_chain[i - j], j)
                    } else if j < i + calc.t {
                        f_pow(&amb, &calc.t_chain[j - i], i)
                    } else {
                        calc.t_infty().clone()
                    };
                    assert_eq!(lhs, rhs, "n={n} inst={inst} i={i} j={j}");
                }
            }
            // shifting by a partial sum delays the meet stabilization
            for i in 0..calc.s {
                let sub = SlopeZeroLattice::new(amb.clone(), calc.s_chain[i].clone())
                    .unwrap()
                    .calculus()
                    .unwrap();
                assert_eq!(sub.t, calc.t + i, "n={n} inst={inst} i={i}");
            }
        }
    }
    assert!(total >= 1000);
}

#[test]
fn fixed_lattices_have_trivial_chains() {
    let r = ring();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=3 {
        let size = 2 * n;
        for _ in 0..20 {
            let mut perm: Vec<usize> = (0..size).collect();
            perm.shuffle(&mut rng);
            let amb = MonomialIsocrystal::new(n, perm, vec![0; size], 1).unwrap();
            for k in [0i32, 2] {
                let lat = WittLattice::standard(&r, size, RADIUS)
                    .unwrap()
                    .scale(k)
                    .unwrap();
                let calc = SlopeZeroLattice::new(amb.clone(), lat)
                    .unwrap()
                    .calculus()
                    .unwrap();
                assert_eq!(calc.s, 0);
                assert_eq!(calc.t, 0);
                assert_eq!(calc.s_chain.len(), 1);
                assert_eq!(calc.t_chain.len(), 1);
                assert!(calc.in_lat1);
            }
        }
    }
}

#[test]
fn class_membership_examples() {
    let r = ring();
    let four_cycle = MonomialIsocrystal::new(2, vec![2, 3, 1, 0], vec![0, 0, 0, 0], 1).unwrap();
    let std = WittLattice::standard(&r, 4, RADIUS).unwrap();
    assert!(in_class(&four_cycle, &std));

    // moving two pivots at once breaks the colength bound
    let deep = WittLattice::from_diag_powers(&r, RADIUS, &[2, 0, 0, 0]).unwrap();
    let sz = SlopeZeroLattice::new(four_cycle.clone(), deep).unwrap();
    assert!(!sz.in_lat1().unwrap());

    // a volume-shifting map fails the two-sided comparison
    let shifted = MonomialIsocrystal::new(2, vec![2, 3, 1, 0], vec![1, 0, 0, 0], 1).unwrap();
    let sz = SlopeZeroLattice::new(shifted, std.clone()).unwrap();
    assert!(!sz.in_lat1().unwrap());

    assert!(matches!(
        SlopeZeroLattice::new(
            four_cycle,
            WittLattice::standard(&r, 2, RADIUS).unwrap()
        ),
        Err(NewtonError::Shape)
    ));
}

#[test]
fn mixed_slopes_overflow_the_window() {
    let r = ring();
    // one cycle of slope +1/2, one of slope -1/2: the sums grow without bound
    let amb = MonomialIsocrystal::new(2, vec![2, 3, 0, 1], vec![1, -1, 0, 0], 1).unwrap();
    let lat = WittLattice::standard(&r, 4, RADIUS).unwrap();
    let sz = SlopeZeroLattice::new(amb, lat).unwrap();
    assert!(sz.in_lat1().unwrap());
    assert!(matches!(sz.calculus(), Err(NewtonError::NonStabilizing)));
}
