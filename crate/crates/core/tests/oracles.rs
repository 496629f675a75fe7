//! Independent oracles for every derived quantity the engine produces.
//!
//! Each test recomputes a value by a method that shares no code with the
//! engine: Lyndon-word enumeration for the Witt dimension formula, exhaustive
//! partition enumeration for the partition function, principal-minor sums for
//! the matrix classification, and the Weyl-group denominator identity for the
//! multiplicity tables themselves.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use kmroots::cartan::{symmetrize, CartanMatrix, MatrixType};
use kmroots::combinatorics::{
    lyndon_count, partition, partition_bruteforce, witt_dim_u64, LYNDON_MAX_ALPHABET,
    LYNDON_MAX_LENGTH, PARTITION_BRUTEFORCE_MAX,
};
use kmroots::lattice::{GramTable, RootVector};
use kmroots::multiplicity::MultiplicityTable;
use kmroots::verify::default_corpus;

/// The Witt dimension formula must agree with a literal count of Lyndon
/// words: dim of the degree-n component of the free Lie algebra on m
/// generators equals the number of aperiodic necklaces of length n.
#[test]
fn witt_dimensions_match_lyndon_word_counts() {
    let mut cases = 0;
    for m in 1..=LYNDON_MAX_ALPHABET {
        for n in 1..=LYNDON_MAX_LENGTH {
            let formula = witt_dim_u64(m, n).unwrap();
            let counted = lyndon_count(m, n).unwrap();
            assert_eq!(formula, counted, "witt({m},{n})");
            cases += 1;
        }
    }
    assert_eq!(cases, 48);
}

/// The Euler-recurrence partition function must agree with exhaustive
/// enumeration of partitions.
#[test]
fn partition_function_matches_bruteforce_enumeration() {
    for n in 0..=PARTITION_BRUTEFORCE_MAX {
        assert_eq!(partition(n), partition_bruteforce(n).unwrap(), "p({n})");
    }
    // spot-check two classical values against the literature
    assert_eq!(partition(50), BigInt::from(204226u64));
    assert_eq!(partition(60), BigInt::from(966467u64));
}

// ---------------------------------------------------------------------------
// Classification oracle: principal-minor sums.
//
// For a symmetric integer matrix B, the coefficient of x^(n-k) in det(xI + B)
// is E_k = the sum of all k×k principal minors, i.e. the k-th elementary
// symmetric function of the eigenvalues. Since B is symmetric its eigenvalues
// are real, so (by Descartes' rule applied to a real-rooted polynomial):
//   * all eigenvalues > 0  ⟺  E_k > 0 for every k   (positive definite)
//   * all eigenvalues ≥ 0  ⟺  E_k ≥ 0 for every k   (positive semidefinite)
// and the multiplicity of the eigenvalue 0 is the number of trailing zero
// E_k. This reading of B is disjoint from the engine's leading-minor and
// kernel computation.
// ---------------------------------------------------------------------------

fn det_bigint(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = BigInt::zero();
    for (j, pivot) in m[0].iter().enumerate() {
        if pivot.is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = pivot * det_bigint(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if k > n {
        return vec![];
    }
    let mut out = Vec::new();
    for first in 0..=(n - k) {
        for mut rest in k_subsets(n - first - 1, k - 1) {
            for r in rest.iter_mut() {
                *r += first + 1;
            }
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[derive(Debug, PartialEq)]
enum OracleKind {
    PositiveDefinite,
    SemidefiniteCorankOne,
    Indefinite,
}

/// Classify the symmetric Gram matrix of one indecomposable component via
/// principal-minor sums.
fn principal_minor_kind(b: &[Vec<BigInt>]) -> OracleKind {
    let n = b.len();
    let e: Vec<BigInt> = (1..=n)
        .map(|k| {
            k_subsets(n, k)
                .into_iter()
                .map(|s| {
                    let sub: Vec<Vec<BigInt>> = s
                        .iter()
                        .map(|&i| s.iter().map(|&j| b[i][j].clone()).collect())
                        .collect();
                    det_bigint(&sub)
                })
                .sum()
        })
        .collect();
    if e.iter().all(|v| v.is_positive()) {
        return OracleKind::PositiveDefinite;
    }
    if e.iter().all(|v| !v.is_negative()) && e[n - 1].is_zero() && (n == 1 || e[n - 2].is_positive())
    {
        return OracleKind::SemidefiniteCorankOne;
    }
    OracleKind::Indefinite
}

fn check_against_oracle(a: &CartanMatrix, label: &str) {
    let sym = symmetrize(a).unwrap();
    let gram = GramTable::new(a, &sym);
    for comp in a.classify(&sym) {
        let idx = &comp.support;
        let b: Vec<Vec<BigInt>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| BigInt::from(gram.entry(i, j))).collect())
            .collect();
        let oracle = principal_minor_kind(&b);
        match &comp.kind {
            MatrixType::Finite => {
                assert_eq!(oracle, OracleKind::PositiveDefinite, "{label} {idx:?}")
            }
            MatrixType::Affine { null_root } => {
                assert_eq!(oracle, OracleKind::SemidefiniteCorankOne, "{label} {idx:?}");
                // The reported null root lives in full-matrix coordinates,
                // zero off the component; on the component it must be a
                // positive primitive kernel vector of the Gram matrix.
                for (i, &c) in null_root.iter().enumerate() {
                    if idx.contains(&i) {
                        assert!(c > 0, "{label}: {null_root:?}");
                    } else {
                        assert_eq!(c, 0, "{label}: {null_root:?}");
                    }
                }
                let local: Vec<i64> = idx.iter().map(|&i| null_root[i]).collect();
                let g = local.iter().fold(0i64, |acc, &c| num_integer::gcd(acc, c));
                assert_eq!(g, 1, "{label}: null root not primitive");
                for (r, row) in b.iter().enumerate() {
                    let dot: BigInt = row
                        .iter()
                        .zip(&local)
                        .map(|(bij, &c)| bij * BigInt::from(c))
                        .sum();
                    assert!(dot.is_zero(), "{label}: B·δ ≠ 0 in row {r}");
                }
            }
            MatrixType::Indefinite => {
                assert_eq!(oracle, OracleKind::Indefinite, "{label} {idx:?}")
            }
        }
    }
}

#[test]
fn corpus_classification_matches_principal_minor_oracle() {
    for nm in default_corpus() {
        check_against_oracle(&nm.matrix().unwrap(), &nm.name);
    }
}

/// Deterministic xorshift generator for reproducible random matrices.
struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

/// Random symmetrizable generalized Cartan matrices: choose diagonal weights
/// d_i and edge strengths m_ij, then set a_ij = −m_ij·lcm(d_i,d_j)/d_i so
/// that diag(d)·A is symmetric by construction.
#[test]
fn random_symmetrizable_matrices_match_principal_minor_oracle() {
    let mut rng = XorShift(0x9e3779b97f4a7c15);
    for trial in 0..200 {
        let n = 2 + (rng.below(3) as usize); // 2, 3, or 4
        let d: Vec<i64> = (0..n).map(|_| 1 + rng.below(3) as i64).collect();
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            rows[i][i] = 2;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.below(2) == 0 {
                    continue; // no edge
                }
                let m = 1 + rng.below(3) as i64;
                let l = num_integer::lcm(d[i], d[j]);
                rows[i][j] = -m * (l / d[i]);
                rows[j][i] = -m * (l / d[j]);
            }
        }
        let a = CartanMatrix::new(rows.clone()).unwrap();
        check_against_oracle(&a, &format!("trial {trial}: {rows:?}"));
    }
}

// ---------------------------------------------------------------------------
// Denominator identity: the deepest oracle. The multiplicity table is
// correct up to height h iff, as truncated formal series on the positive
// cone,
//     Π_{α ∈ Δ₊} (1 − e^{−α})^{mult α}  =  Σ_{w ∈ W} sign(w) · e^{−(ρ−wρ)}.
// The left side uses every table entry; the right side is a signed walk
// over the Weyl group that never consults a multiplicity. Any wrong entry
// anywhere in the table breaks coefficient equality somewhere below h.
// ---------------------------------------------------------------------------

type Series = HashMap<Vec<i64>, BigInt>;

fn series_mul_factor(series: &Series, alpha: &RootVector, mult: &BigInt, h: i64) -> Series {
    // Binomial expansion of (1 − x^α)^mult, truncated at height h:
    // coefficient of x^(kα) is (−1)^k · C(mult, k).
    let step = alpha.height();
    let mut binom = BigInt::one();
    let mut terms: Vec<(i64, BigInt)> = Vec::new();
    let mut k = 0i64;
    while k * step <= h {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        terms.push((k, &binom * BigInt::from(sign)));
        k += 1;
        // C(m, k) = C(m, k−1)·(m − k + 1)/k, exact at every step
        binom = binom * (mult - BigInt::from(k - 1)) / BigInt::from(k);
        if binom.is_zero() {
            break;
        }
    }
    let mut out: Series = HashMap::new();
    for (key, coeff) in series {
        let base_h: i64 = key.iter().sum();
        for (k, c) in &terms {
            if base_h + k * step > h {
                break;
            }
            let mut new_key = key.clone();
            for (slot, a) in new_key.iter_mut().zip(alpha.coeffs()) {
                *slot += k * a;
            }
            let entry = out.entry(new_key).or_insert_with(BigInt::zero);
            *entry += coeff * c;
            if entry.is_zero() {
                // keep the map canonical so the final comparison is exact
                // (the key is re-inserted if a later term contributes)
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn product_side(table: &MultiplicityTable, h: i64) -> Series {
    let n = table.matrix().n();
    let mut series: Series = HashMap::new();
    series.insert(vec![0; n], BigInt::one());
    for (alpha, mult) in table.positive_roots() {
        if alpha.height() <= h {
            series = series_mul_factor(&series, &alpha, &mult, h);
        }
    }
    series
}

fn sum_side(a: &CartanMatrix, h: i64) -> Series {
    // Breadth-first walk over Weyl-group elements w, keyed by the images of
    // the simple roots (the action on the root lattice is faithful). For a
    // length-increasing extension w·sᵢ:  ρ − w·sᵢ·ρ = (ρ − wρ) + w(αᵢ),
    // and ht(ρ − wρ) grows strictly, so pruning at height h is exhaustive.
    let n = a.n();
    let identity: Vec<RootVector> = (0..n).map(|i| RootVector::simple(n, i)).collect();
    let mut acc: Series = HashMap::new();
    let mut seen: HashMap<Vec<Vec<i64>>, ()> = HashMap::new();
    let key_of = |imgs: &[RootVector]| -> Vec<Vec<i64>> {
        imgs.iter().map(|v| v.coeffs().to_vec()).collect()
    };
    let mut frontier: Vec<(Vec<RootVector>, RootVector, i64)> =
        vec![(identity.clone(), RootVector::zero(n), 1)];
    seen.insert(key_of(&identity), ());
    acc.insert(vec![0; n], BigInt::one());
    while let Some((imgs, rho_drop, sign)) = frontier.pop() {
        for i in 0..n {
            // length increases precisely when w(αᵢ) is a positive vector
            if imgs[i].coeffs().iter().any(|&c| c < 0) {
                continue;
            }
            let new_drop = rho_drop.checked_add(&imgs[i]).unwrap();
            if new_drop.height() > h {
                continue;
            }
            // (w·sᵢ)(αⱼ) = w(αⱼ) − a[i][j]·w(αᵢ)
            let new_imgs: Vec<RootVector> = (0..n)
                .map(|j| {
                    imgs[j]
                        .checked_add(&imgs[i].scaled(-a.entry(i, j)))
                        .unwrap()
                })
                .collect();
            let key = key_of(&new_imgs);
            if seen.contains_key(&key) {
                continue;
            }
            seen.insert(key, ());
            let new_sign = -sign;
            let entry = acc
                .entry(new_drop.coeffs().to_vec())
                .or_insert_with(BigInt::zero);
            *entry += BigInt::from(new_sign);
            frontier.push((new_imgs, new_drop, new_sign));
        }
    }
    acc.retain(|_, v| !v.is_zero());
    acc
}

fn assert_denominator_identity(rows: Vec<Vec<i64>>, h: i64, label: &str) {
    let a = CartanMatrix::new(rows).unwrap();
    let sym = symmetrize(&a).unwrap();
    let table = MultiplicityTable::build(&a, &sym, h).unwrap();
    let product = product_side(&table, h);
    let sum = sum_side(&a, h);
    for (key, coeff) in &product {
        let rhs = sum.get(key).cloned().unwrap_or_else(BigInt::zero);
        assert_eq!(
            *coeff, rhs,
            "{label}: coefficient of e^-{key:?} differs (product {coeff}, Weyl sum {rhs})"
        );
    }
    for (key, coeff) in &sum {
        assert!(
            product.contains_key(key),
            "{label}: Weyl sum has e^-{key:?} = {coeff} but the product side is 0"
        );
    }
}

#[test]
fn finite_type_table_satisfies_the_denominator_identity() {
    assert_denominator_identity(vec![vec![2, -1], vec![-1, 2]], 8, "A2");
    assert_denominator_identity(
        vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]],
        8,
        "B3",
    );
}

#[test]
fn affine_tables_satisfy_the_denominator_identity() {
    assert_denominator_identity(vec![vec![2, -2], vec![-2, 2]], 12, "A1-affine");
    assert_denominator_identity(
        vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]],
        9,
        "A2-affine",
    );
    assert_denominator_identity(
        vec![vec![2, -2, 0], vec![-1, 2, -1], vec![0, -2, 2]],
        9,
        "A3-twisted",
    );
}

#[test]
fn indefinite_tables_satisfy_the_denominator_identity() {
    assert_denominator_identity(vec![vec![2, -3], vec![-3, 2]], 14, "rank2-hyperbolic");
    assert_denominator_identity(
        vec![vec![2, -2, 0], vec![-2, 2, -1], vec![0, -1, 2]],
        9,
        "affine-plus-node",
    );
}
