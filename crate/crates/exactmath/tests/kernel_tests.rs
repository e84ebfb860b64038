use exactmath::fq::FQ_ZERO;
use exactmath::{kernel, FiniteField, Fq, FqMat, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rank by an elimination order independent of the library's: columns are
/// processed right to left, pivot rows chosen bottom-up, no normalization.
fn rank_oracle(f: &FiniteField, m: &FqMat) -> usize {
    let mut rows: Vec<Vec<Fq>> = (0..m.nrows).map(|i| m.row(i).to_vec()).collect();
    let mut rank = 0;
    let mut used = vec![false; rows.len()];
    for c in (0..m.ncols).rev() {
        let Some(pr) = (0..rows.len())
            .rev()
            .find(|&i| !used[i] && rows[i][c] != FQ_ZERO)
        else {
            continue;
        };
        used[pr] = true;
        rank += 1;
        let pinv = f.inv(rows[pr][c]).unwrap();
        for i in 0..rows.len() {
            if i == pr || rows[i][c] == FQ_ZERO {
                continue;
            }
            let factor = f.mul(rows[i][c], pinv);
            for j in 0..m.ncols {
                let v = f.sub(rows[i][j], f.mul(factor, rows[pr][j]));
                rows[i][j] = v;
            }
        }
    }
    rank
}

fn random_matrix(f: &FiniteField, rng: &mut ChaCha8Rng, nrows: usize, ncols: usize) -> FqMat {
    let q = f.order();
    let mut m = FqMat::zero(nrows, ncols);
    for i in 0..nrows {
        for j in 0..ncols {
            m.set(i, j, Fq(rng.gen_range(0..q) as u16));
        }
    }
    m
}

#[test]
fn kernel_of_identity_is_zero() {
    let f = FiniteField::new(3, 2).unwrap();
    let k = kernel(&f, &FqMat::identity(4));
    assert_eq!(k.dim(), 0);
}

#[test]
fn kernel_of_all_ones_over_f2_subfield_case() {
    // [[1,1],[1,1]] over the prime subfield sitting inside F_4
    let f = FiniteField::new(2, 2).unwrap();
    let m = FqMat::from_rows(vec![
        vec![f.one(), f.one()],
        vec![f.one(), f.one()],
    ]);
    let k = kernel(&f, &m);
    assert_eq!(k.dim(), 1);
    assert!(k.contains_vec(&f, &[f.one(), f.one()]));
}

#[test]
fn rank_nullity_against_independent_elimination() {
    let f = FiniteField::new(3, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..60 {
        let m = random_matrix(&f, &mut rng, 5, 7);
        let k = kernel(&f, &m);
        let r = rank_oracle(&f, &m);
        assert_eq!(k.dim(), 7 - r);
        assert_eq!(m.rank(&f), r);
        for i in 0..k.basis.nrows {
            let v = k.basis.row(i);
            assert!(m.apply(&f, v).iter().all(|&x| x == FQ_ZERO));
        }
    }
}

#[test]
fn canonical_form_survives_change_of_basis() {
    let f = FiniteField::new(2, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..40 {
        let m = random_matrix(&f, &mut rng, 3, 5);
        let gens: Vec<Vec<Fq>> = (0..3).map(|i| m.row(i).to_vec()).collect();
        let s1 = Subspace::from_generators(&f, 5, &gens);
        // random invertible 3x3 change of generating set
        let t = loop {
            let c = random_matrix(&f, &mut rng, 3, 3);
            if c.rank(&f) == 3 {
                break c;
            }
        };
        let tm = t.mul(&f, &m);
        let gens2: Vec<Vec<Fq>> = (0..3).map(|i| tm.row(i).to_vec()).collect();
        let s2 = Subspace::from_generators(&f, 5, &gens2);
        assert_eq!(s1, s2);
    }
}

#[test]
fn sum_intersect_dimension_formula() {
    let f = FiniteField::new(2, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..40 {
        let a = random_matrix(&f, &mut rng, 2, 4);
        let b = random_matrix(&f, &mut rng, 2, 4);
        let u = Subspace::from_generators(&f, 4, &(0..2).map(|i| a.row(i).to_vec()).collect::<Vec<_>>());
        let w = Subspace::from_generators(&f, 4, &(0..2).map(|i| b.row(i).to_vec()).collect::<Vec<_>>());
        let s = u.sum(&f, &w);
        let i = u.intersect(&f, &w);
        assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        assert!(u.contains(&f, &i) && w.contains(&f, &i));
        assert!(s.contains(&f, &u) && s.contains(&f, &w));
    }
}

#[test]
fn perp_is_an_involution_with_complementary_dimension() {
    let f = FiniteField::new(3, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..40 {
        let a = random_matrix(&f, &mut rng, 3, 5);
        let u = Subspace::from_generators(&f, 5, &(0..3).map(|i| a.row(i).to_vec()).collect::<Vec<_>>());
        let p = u.perp(&f);
        assert_eq!(u.dim() + p.dim(), 5);
        assert_eq!(p.perp(&f), u);
    }
}

#[test]
fn solve_finds_consistent_solutions() {
    let f = FiniteField::new(3, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..40 {
        let m = random_matrix(&f, &mut rng, 4, 3);
        let x0: Vec<Fq> = (0..3).map(|_| Fq(rng.gen_range(0..9) as u16)).collect();
        let b = m.apply(&f, &x0);
        let x = exactmath::solve(&f, &m, &b).unwrap();
        assert_eq!(m.apply(&f, &x), b);
    }
}
