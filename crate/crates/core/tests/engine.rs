//! End-to-end checks of the multiplicity engine against frozen values.
//!
//! Every number asserted here is independently validated by the denominator
//! identity in the oracle suite, which ties entire tables to a signed
//! Weyl-group walk that never consults a multiplicity.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use kmroots::cartan::{symmetrize, CartanMatrix, Symmetrizer};
use kmroots::lattice::{GramTable, RootVector};
use kmroots::multiplicity::MultiplicityTable;
use kmroots::weyl::{classify_root, RootClass};

fn setup(rows: Vec<Vec<i64>>, h: i64) -> (CartanMatrix, Symmetrizer, MultiplicityTable) {
    let a = CartanMatrix::new(rows).unwrap();
    let sym = symmetrize(&a).unwrap();
    let table = MultiplicityTable::build(&a, &sym, h).unwrap();
    (a, sym, table)
}

#[test]
fn rank_two_finite_root_system_has_exactly_three_positive_roots() {
    let (_, _, table) = setup(vec![vec![2, -1], vec![-1, 2]], 3);
    let roots = table.positive_roots();
    let want = [(vec![0, 1], 1), (vec![1, 0], 1), (vec![1, 1], 1)];
    assert_eq!(roots.len(), want.len());
    for ((v, m), (wv, wm)) in roots.iter().zip(&want) {
        assert_eq!(v.coeffs(), &wv[..]);
        assert_eq!(*m, BigInt::from(*wm));
    }
}

#[test]
fn rank_two_affine_roots_up_to_height_four() {
    let (_, _, table) = setup(vec![vec![2, -2], vec![-2, 2]], 4);
    let roots = table.positive_roots();
    let want = [
        (vec![0, 1], 1),
        (vec![1, 0], 1),
        (vec![1, 1], 1), // null root: multiplicity = rank of the finite part
        (vec![1, 2], 1),
        (vec![2, 1], 1),
        (vec![2, 2], 1),
    ];
    assert_eq!(roots.len(), want.len());
    for ((v, m), (wv, wm)) in roots.iter().zip(&want) {
        assert_eq!(v.coeffs(), &wv[..], "unexpected root order");
        assert_eq!(*m, BigInt::from(*wm), "mult of {:?}", v);
    }
}

#[test]
fn hyperbolic_table_matches_frozen_values_to_height_seven() {
    let (_, _, table) = setup(vec![vec![2, -3], vec![-3, 2]], 7);
    let want: Vec<(Vec<i64>, i64)> = vec![
        (vec![0, 1], 1),
        (vec![1, 0], 1),
        (vec![1, 1], 1),
        (vec![1, 2], 1),
        (vec![2, 1], 1),
        (vec![1, 3], 1),
        (vec![2, 2], 1),
        (vec![3, 1], 1),
        (vec![2, 3], 2),
        (vec![3, 2], 2),
        (vec![2, 4], 1),
        (vec![3, 3], 3),
        (vec![4, 2], 1),
        (vec![2, 5], 1),
        (vec![3, 4], 4),
        (vec![4, 3], 4),
        (vec![5, 2], 1),
    ];
    let roots = table.positive_roots();
    assert_eq!(roots.len(), want.len());
    for ((v, m), (wv, wm)) in roots.iter().zip(&want) {
        assert_eq!(v.coeffs(), &wv[..], "unexpected root order");
        assert_eq!(*m, BigInt::from(*wm), "mult of {:?}", v);
    }
}

#[test]
fn hyperbolic_isotropic_free_diagonal_multiplicity_chain() {
    let (_, _, table) = setup(vec![vec![2, -3], vec![-3, 2]], 12);
    let want = [1i64, 1, 3, 6, 16, 39];
    for (k, wm) in (1..=6).zip(&want) {
        let v = RootVector::new(vec![k, k]);
        assert_eq!(table.mult(&v).unwrap(), BigInt::from(*wm), "mult({k},{k})");
    }
}

#[test]
fn twisted_affine_null_ray_alternates_between_two_values() {
    let (_, _, table) = setup(
        vec![vec![2, -2, 0], vec![-1, 2, -1], vec![0, -2, 2]],
        12,
    );
    let want = [1i64, 2, 1, 2];
    for (k, wm) in (1..=4).zip(&want) {
        let v = RootVector::new(vec![k, k, k]);
        assert_eq!(table.mult(&v).unwrap(), BigInt::from(*wm), "mult({k}δ)");
    }
}

#[test]
fn indefinite_rank_three_root_count_is_stable() {
    let (_, _, table) = setup(
        vec![vec![2, -2, 0], vec![-2, 2, -1], vec![0, -1, 2]],
        10,
    );
    assert_eq!(table.positive_roots().len(), 46);
}

/// Orbit classification and the recurrence agree on what is a root, on every
/// corpus matrix, for every positive lattice vector up to height 8; and real
/// roots always carry multiplicity one.
#[test]
fn orbit_classification_agrees_with_the_recurrence() {
    let corpus = [
        vec![vec![2, -1], vec![-1, 2]],
        vec![vec![2, -2], vec![-2, 2]],
        vec![vec![2, -3], vec![-3, 2]],
        vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]],
        vec![vec![2, -2, 0], vec![-1, 2, -1], vec![0, -2, 2]],
        vec![vec![2, -2, 0], vec![-2, 2, -1], vec![0, -1, 2]],
    ];
    for rows in corpus {
        let (a, sym, table) = setup(rows.clone(), 8);
        let gram = GramTable::new(&a, &sym);
        let mut checked = 0;
        for h in 1..=8 {
            for v in kmroots::multiplicity::vectors_of_height(a.n(), h) {
                let class = classify_root(&a, &gram, &v).unwrap();
                let mult = table.mult(&v).unwrap();
                match class {
                    RootClass::Real => {
                        assert_eq!(mult, BigInt::one(), "{rows:?}: real root {v:?}")
                    }
                    RootClass::Imaginary => {
                        assert!(!mult.is_zero(), "{rows:?}: imaginary root {v:?} has mult 0")
                    }
                    RootClass::NotARoot => {
                        assert!(mult.is_zero(), "{rows:?}: non-root {v:?} has mult {mult}")
                    }
                }
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}

/// A root supported on a subdiagram has the same multiplicity as in the
/// standalone algebra of that subdiagram: the rank-two finite system inside
/// the rank-three affine one.
#[test]
fn multiplicities_restrict_to_subdiagrams_finite_in_affine() {
    let (_, _, big) = setup(
        vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]],
        10,
    );
    let (_, _, small) = setup(vec![vec![2, -1], vec![-1, 2]], 10);
    let mut compared = 0;
    for (v, m) in small.positive_roots() {
        let embedded = RootVector::new(vec![v.coeffs()[0], v.coeffs()[1], 0]);
        assert_eq!(big.mult(&embedded).unwrap(), m, "root {v:?}");
        compared += 1;
    }
    assert_eq!(compared, 3);
    // and no extra roots appear on that support in the big algebra
    for (v, _) in big.positive_roots() {
        if v.coeffs()[2] == 0 {
            let restricted = RootVector::new(v.coeffs()[..2].to_vec());
            assert!(!small.mult(&restricted).unwrap().is_zero(), "extra root {v:?}");
        }
    }
}

/// The same restriction principle for an affine subdiagram inside an
/// indefinite algebra, where multiplicities above one are involved.
#[test]
fn multiplicities_restrict_to_subdiagrams_affine_in_indefinite() {
    let (_, _, big) = setup(
        vec![vec![2, -2, 0], vec![-2, 2, -1], vec![0, -1, 2]],
        12,
    );
    let (_, _, small) = setup(vec![vec![2, -2], vec![-2, 2]], 12);
    let mut compared = 0;
    for (v, m) in small.positive_roots() {
        let embedded = RootVector::new(vec![v.coeffs()[0], v.coeffs()[1], 0]);
        assert_eq!(big.mult(&embedded).unwrap(), m, "root {v:?}");
        compared += 1;
    }
    assert!(compared >= 10);
}

/// Vectors with disconnected support are never roots.
#[test]
fn disconnected_support_vectors_are_not_roots() {
    let (_, _, table) = setup(
        vec![vec![2, -2, 0], vec![-1, 2, -1], vec![0, -2, 2]],
        8,
    );
    for (k, l) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 4)] {
        let v = RootVector::new(vec![k, 0, l]);
        if v.height() <= 8 {
            assert!(
                table.mult(&v).unwrap().is_zero(),
                "({k},0,{l}) has disconnected support but positive mult"
            );
        }
    }
}

/// Extending a table in place gives the same entries as building at the
/// larger height from scratch.
#[test]
fn incremental_extension_matches_a_fresh_build() {
    let a = CartanMatrix::new(vec![vec![2, -3], vec![-3, 2]]).unwrap();
    let sym = symmetrize(&a).unwrap();
    let mut grown = MultiplicityTable::build(&a, &sym, 4).unwrap();
    grown.ensure_height(9).unwrap();
    let fresh = MultiplicityTable::build(&a, &sym, 9).unwrap();
    assert_eq!(grown.max_height(), 9);
    let g: Vec<_> = grown.positive_roots();
    let f: Vec<_> = fresh.positive_roots();
    assert_eq!(g, f);
}
