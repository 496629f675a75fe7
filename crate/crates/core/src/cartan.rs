//! Generalized Cartan matrices: validation, symmetrization, and exact type
//! classification (finite / affine / indefinite, per connected component).
//!
//! All classification arithmetic is exact: leading principal minors and
//! kernels are computed over arbitrary-precision rationals, never floats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on the index-set size. Desk-scale engine: the enumeration space
/// grows combinatorially with rank, and symmetrizer ratios are only
/// guaranteed to stay in machine range below this bound.
pub const MAX_RANK: usize = 16;

/// A validated generalized Cartan matrix over a finite index set.
///
/// Invariants established at construction and relied on everywhere else:
/// diagonal entries are 2, off-diagonal entries are <= 0, and
/// `a[i][j] == 0` exactly when `a[j][i] == 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
    n: usize,
    adjacency: Vec<Vec<usize>>,
}

/// On-disk matrix description: `{"name": "...", "rows": [[2,-1],[-1,2]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NamedMatrix {
    pub name: String,
    pub rows: Vec<Vec<i64>>,
}

impl NamedMatrix {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn matrix(&self) -> Result<CartanMatrix> {
        CartanMatrix::new(self.rows.clone())
    }
}

impl CartanMatrix {
    /// Validates `entries` as a generalized Cartan matrix.
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::NotGcm("matrix is empty".into()));
        }
        if n > MAX_RANK {
            return Err(Error::RankTooLarge(n, MAX_RANK));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotGcm(format!(
                    "row {} has length {}, expected {}",
                    i,
                    row.len(),
                    n
                )));
            }
            if row[i] != 2 {
                return Err(Error::NotGcm(format!(
                    "diagonal entry a[{i}][{i}] = {}, must be 2",
                    row[i]
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    if entries[i][j] > 0 {
                        return Err(Error::NotGcm(format!(
                            "off-diagonal entry a[{i}][{j}] = {} is positive",
                            entries[i][j]
                        )));
                    }
                    if (entries[i][j] == 0) != (entries[j][i] == 0) {
                        return Err(Error::NotGcm(format!(
                            "a[{i}][{j}] = {} but a[{j}][{i}] = {}: zeros must be symmetric",
                            entries[i][j], entries[j][i]
                        )));
                    }
                }
            }
        }
        let adjacency = (0..n)
            .map(|i| (0..n).filter(|&j| j != i && entries[i][j] != 0).collect())
            .collect();
        Ok(CartanMatrix {
            entries,
            n,
            adjacency,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Indices j != i with a nonzero bond to i.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    /// Connected components of the Dynkin graph, each sorted ascending,
    /// ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(i) = stack.pop() {
                comp.push(i);
                for &j in &self.adjacency[i] {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Whether a nonempty index subset induces a connected subgraph.
    pub fn subset_connected(&self, subset: &[usize]) -> bool {
        if subset.is_empty() {
            return false;
        }
        let member: Vec<bool> = {
            let mut m = vec![false; self.n];
            for &i in subset {
                m[i] = true;
            }
            m
        };
        let mut seen = vec![false; self.n];
        let mut stack = vec![subset[0]];
        seen[subset[0]] = true;
        let mut visited = 0usize;
        while let Some(i) = stack.pop() {
            visited += 1;
            for &j in &self.adjacency[i] {
                if member[j] && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        visited == subset.len()
    }

    /// Principal submatrix on a nonempty, strictly increasing index subset.
    /// The result is a valid generalized Cartan matrix in its own right.
    pub fn submatrix(&self, subset: &[usize]) -> Result<CartanMatrix> {
        if subset.is_empty() {
            return Err(Error::BadSubset("empty subset".into()));
        }
        if subset.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadSubset(format!(
                "indices must be strictly increasing: {subset:?}"
            )));
        }
        if *subset.last().unwrap() >= self.n {
            return Err(Error::BadSubset(format!(
                "index {} out of range for rank {}",
                subset.last().unwrap(),
                self.n
            )));
        }
        let entries = subset
            .iter()
            .map(|&i| subset.iter().map(|&j| self.entries[i][j]).collect())
            .collect();
        CartanMatrix::new(entries)
    }

    /// Exact rank of the matrix over the rationals.
    pub fn rank(&self) -> usize {
        let rat: Vec<Vec<BigRational>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        rational_rank(rat)
    }

    /// Classifies every connected component as finite, affine (with its null
    /// root, embedded in the full index set), or indefinite.
    pub fn classify(&self, sym: &Symmetrizer) -> Vec<ComponentClass> {
        self.components()
            .into_iter()
            .map(|support| {
                let kind = self.classify_component(sym, &support);
                ComponentClass { support, kind }
            })
            .collect()
    }

    /// Classification of a single connected component.
    fn classify_component(&self, sym: &Symmetrizer, support: &[usize]) -> MatrixType {
        let k = support.len();
        // Symmetrized component B = diag(q) * A, exact rationals.
        let b: Vec<Vec<BigRational>> = support
            .iter()
            .map(|&i| {
                support
                    .iter()
                    .map(|&j| {
                        BigRational::from_integer(BigInt::from(sym.q[i] * self.entries[i][j]))
                    })
                    .collect()
            })
            .collect();
        // Sylvester: positive definite iff all leading principal minors > 0.
        if leading_minors(&b).iter().all(|d| d.is_positive()) {
            return MatrixType::Finite;
        }
        // Indecomposable-GCM trichotomy: affine iff Av = 0 for some v > 0
        // (then the kernel is one-dimensional and v is unique up to scale).
        let a_comp: Vec<Vec<BigRational>> = support
            .iter()
            .map(|&i| {
                support
                    .iter()
                    .map(|&j| BigRational::from_integer(self.entries[i][j].into()))
                    .collect()
            })
            .collect();
        let kernel = kernel_basis(a_comp);
        if kernel.len() == 1 {
            if let Some(delta) = positive_integer_generator(&kernel[0]) {
                // Embed into the full index set.
                let mut null_root = vec![0i64; self.n];
                for (pos, &i) in support.iter().enumerate() {
                    null_root[i] = delta[pos];
                }
                return MatrixType::Affine { null_root };
            }
        }
        let _ = k;
        MatrixType::Indefinite
    }
}

/// The positive diagonal that symmetrizes a Cartan matrix, normalized to
/// coprime positive integers on every connected component (this makes
/// B = diag(q)·A an integer matrix).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetrizer {
    q: Vec<i64>,
}

impl Symmetrizer {
    pub fn q(&self) -> &[i64] {
        &self.q
    }
}

/// Computes the symmetrizer, or reports a witness cycle when none exists.
///
/// q is propagated along a spanning tree of each component via
/// q_j = q_i·a_ij/a_ji; every non-tree bond is then checked for consistency.
/// A failing bond closes a cycle through the tree, which is returned as the
/// witness.
pub fn symmetrize(a: &CartanMatrix) -> Result<Symmetrizer> {
    let n = a.n();
    let mut q: Vec<Option<BigRational>> = vec![None; n];
    // parent links let us reconstruct the witness cycle for a bad bond
    let mut parent: Vec<Option<usize>> = vec![None; n];
    for start in 0..n {
        if q[start].is_some() {
            continue;
        }
        q[start] = Some(BigRational::one());
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let qi = q[i].clone().unwrap();
            for &j in a.neighbors(i) {
                let ratio = BigRational::new(a.entry(i, j).into(), a.entry(j, i).into());
                let implied = &qi * &ratio;
                match &q[j] {
                    None => {
                        q[j] = Some(implied);
                        parent[j] = Some(i);
                        queue.push_back(j);
                    }
                    Some(existing) => {
                        if *existing != implied {
                            return Err(Error::NotSymmetrizable(witness_cycle(&parent, i, j)));
                        }
                    }
                }
            }
        }
    }
    // Normalize each component to coprime positive integers.
    let mut out = vec![0i64; n];
    for comp in a.components() {
        let vals: Vec<BigRational> = comp.iter().map(|&i| q[i].clone().unwrap()).collect();
        let ints = coprime_positive_integers(&vals);
        for (pos, &i) in comp.iter().enumerate() {
            out[i] = int_to_i64(&ints[pos])?;
        }
    }
    Ok(Symmetrizer { q: out })
}

/// Walks parent links from both endpoints of a failing bond up to their
/// lowest common ancestor, producing the inconsistent cycle
/// i → … → ancestor → … → j (the bond j–i closes it).
fn witness_cycle(parent: &[Option<usize>], i: usize, j: usize) -> Vec<usize> {
    let chain = |mut v: usize| {
        let mut path = vec![v];
        while let Some(p) = parent[v] {
            path.push(p);
            v = p;
        }
        path
    };
    let pi = chain(i);
    let pj = chain(j);
    // Both chains end at the same spanning-tree root; drop the shared suffix.
    let mut k = 0;
    while k < pi.len() && k < pj.len() && pi[pi.len() - 1 - k] == pj[pj.len() - 1 - k] {
        k += 1;
    }
    let mut cycle: Vec<usize> = pi[..pi.len() - k + 1].to_vec();
    cycle.extend(pj[..pj.len() - k].iter().rev());
    cycle
}

/// Scales positive rationals to the unique coprime positive integer tuple
/// with the same ratios.
fn coprime_positive_integers(vals: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for v in vals {
        lcm = num_integer::lcm(lcm, v.denom().clone());
    }
    let ints: Vec<BigInt> = vals.iter().map(|v| (v * &lcm).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = num_integer::gcd(g, x.clone());
    }
    ints.into_iter().map(|x| x / &g).collect()
}

fn int_to_i64(x: &BigInt) -> Result<i64> {
    i64::try_from(x.clone()).map_err(|_| {
        Error::NotGcm(format!("symmetrizer entry {x} exceeds machine integer range"))
    })
}

/// Type of one connected component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type")]
pub enum MatrixType {
    Finite,
    /// Affine: carries the null root δ (positive coprime integer generator of
    /// the kernel), embedded in the full index set with zeros elsewhere.
    Affine { null_root: Vec<i64> },
    Indefinite,
}

/// One connected component together with its classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentClass {
    pub support: Vec<usize>,
    pub kind: MatrixType,
}

// ---- exact rational linear algebra (private helpers) ----

/// Determinants of all leading principal submatrices, each computed by
/// pivoted Gaussian elimination over exact rationals.
fn leading_minors(b: &[Vec<BigRational>]) -> Vec<BigRational> {
    (1..=b.len())
        .map(|k| {
            let sub: Vec<Vec<BigRational>> =
                b[..k].iter().map(|row| row[..k].to_vec()).collect();
            determinant(sub)
        })
        .collect()
}

fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => return BigRational::zero(),
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col].clone();
        let inv = m[col][col].clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &inv;
            for c in col..n {
                let sub = &factor * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}

/// Row-reduces in place; returns the rank.
fn rational_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    reduce_to_rref(&mut m).len()
}

/// Reduced row echelon form; returns the pivot column of each nonzero row.
fn reduce_to_rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for cc in 0..cols {
                    let sub = &f * &m[r][cc];
                    m[i][cc] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Basis of the right kernel {v : Mv = 0}, via RREF back-substitution.
fn kernel_basis(mut m: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let pivots = reduce_to_rref(&mut m);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// If every entry of `v` is nonzero and of one sign, returns the coprime
/// positive integer multiple of ±v; otherwise None.
fn positive_integer_generator(v: &[BigRational]) -> Option<Vec<i64>> {
    if v.iter().any(|x| x.is_zero()) {
        return None;
    }
    let all_pos = v.iter().all(|x| x.is_positive());
    let all_neg = v.iter().all(|x| x.is_negative());
    if !all_pos && !all_neg {
        return None;
    }
    let signed: Vec<BigRational> = if all_neg { v.iter().map(|x| -x).collect() } else { v.to_vec() };
    let ints = coprime_positive_integers(&signed);
    ints.iter()
        .map(|x| i64::try_from(x.clone()).ok())
        .collect::<Option<Vec<i64>>>()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcm(rows: &[&[i64]]) -> CartanMatrix {
        CartanMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn rejects_non_gcm_shapes() {
        assert!(matches!(
            CartanMatrix::new(vec![vec![2, -1]]),
            Err(Error::NotGcm(_))
        ));
        assert!(matches!(
            CartanMatrix::new(vec![vec![1, 0], vec![0, 2]]),
            Err(Error::NotGcm(_))
        ));
        assert!(matches!(
            CartanMatrix::new(vec![vec![2, 1], vec![-1, 2]]),
            Err(Error::NotGcm(_))
        ));
        // zero must pair with zero
        assert!(matches!(
            CartanMatrix::new(vec![vec![2, 0], vec![-1, 2]]),
            Err(Error::NotGcm(_))
        ));
        assert!(CartanMatrix::new(vec![]).is_err());
    }

    #[test]
    fn symmetrizer_matches_hand_computation() {
        // q1·(-2) = q2·(-1) forces q = (1,2)
        let a = gcm(&[&[2, -2], &[-1, 2]]);
        assert_eq!(symmetrize(&a).unwrap().q(), &[1, 2]);
        // already symmetric: q = 1
        let a2 = gcm(&[&[2, -1], &[-1, 2]]);
        assert_eq!(symmetrize(&a2).unwrap().q(), &[1, 1]);
        // twisted-affine rank 3
        let tw = gcm(&[&[2, -2, 0], &[-1, 2, -1], &[0, -2, 2]]);
        assert_eq!(symmetrize(&tw).unwrap().q(), &[1, 2, 1]);
    }

    #[test]
    fn non_symmetrizable_triangle_reports_a_cycle() {
        let a = gcm(&[&[2, -1, -1], &[-2, 2, -1], &[-2, -2, 2]]);
        match symmetrize(&a) {
            Err(Error::NotSymmetrizable(cycle)) => {
                assert!(cycle.len() >= 3, "cycle {cycle:?} too short");
                let mut sorted = cycle.clone();
                sorted.sort_unstable();
                sorted.dedup();
                assert_eq!(sorted, vec![0, 1, 2]);
            }
            other => panic!("expected NotSymmetrizable, got {other:?}"),
        }
    }

    #[test]
    fn symmetrized_matrix_is_symmetric() {
        for rows in [
            vec![vec![2, -2], vec![-1, 2]],
            vec![vec![2, -4], vec![-1, 2]],
            vec![vec![2, -2, 0], vec![-1, 2, -1], vec![0, -2, 2]],
            vec![vec![2, -1, 0], vec![-2, 2, -2], vec![0, -1, 2]],
        ] {
            let a = CartanMatrix::new(rows).unwrap();
            let q = symmetrize(&a).unwrap();
            for i in 0..a.n() {
                for j in 0..a.n() {
                    assert_eq!(
                        q.q()[i] * a.entry(i, j),
                        q.q()[j] * a.entry(j, i),
                        "q·A not symmetric at ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn classification_finite_affine_indefinite() {
        let a2 = gcm(&[&[2, -1], &[-1, 2]]);
        let q = symmetrize(&a2).unwrap();
        assert_eq!(a2.classify(&q)[0].kind, MatrixType::Finite);

        // G2 has determinant 1 and is finite
        let g2 = gcm(&[&[2, -1], &[-3, 2]]);
        let q = symmetrize(&g2).unwrap();
        assert_eq!(g2.classify(&q)[0].kind, MatrixType::Finite);

        let a1aff = gcm(&[&[2, -2], &[-2, 2]]);
        let q = symmetrize(&a1aff).unwrap();
        assert_eq!(
            a1aff.classify(&q)[0].kind,
            MatrixType::Affine {
                null_root: vec![1, 1]
            }
        );

        let hyp = gcm(&[&[2, -3], &[-3, 2]]);
        let q = symmetrize(&hyp).unwrap();
        assert_eq!(hyp.classify(&q)[0].kind, MatrixType::Indefinite);
    }

    #[test]
    fn affine_null_roots() {
        let a2aff = gcm(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        let q = symmetrize(&a2aff).unwrap();
        assert_eq!(
            a2aff.classify(&q)[0].kind,
            MatrixType::Affine {
                null_root: vec![1, 1, 1]
            }
        );
        // twisted: kernel of A, not of Aᵀ
        let a2tw = gcm(&[&[2, -4], &[-1, 2]]);
        let q = symmetrize(&a2tw).unwrap();
        assert_eq!(
            a2tw.classify(&q)[0].kind,
            MatrixType::Affine {
                null_root: vec![2, 1]
            }
        );
    }

    #[test]
    fn deleting_any_affine_node_leaves_finite_type() {
        for rows in [
            vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]],
            vec![vec![2, -2, 0], vec![-1, 2, -1], vec![0, -2, 2]],
        ] {
            let a = CartanMatrix::new(rows).unwrap();
            for drop in 0..a.n() {
                let keep: Vec<usize> = (0..a.n()).filter(|&i| i != drop).collect();
                let sub = a.submatrix(&keep).unwrap();
                let q = symmetrize(&sub).unwrap();
                for comp in sub.classify(&q) {
                    assert_eq!(comp.kind, MatrixType::Finite);
                }
            }
        }
    }

    #[test]
    fn disconnected_matrices_classify_per_component() {
        let a = gcm(&[
            &[2, -1, 0, 0],
            &[-1, 2, 0, 0],
            &[0, 0, 2, -2],
            &[0, 0, -2, 2],
        ]);
        let q = symmetrize(&a).unwrap();
        let classes = a.classify(&q);
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].support, vec![0, 1]);
        assert_eq!(classes[0].kind, MatrixType::Finite);
        assert_eq!(classes[1].support, vec![2, 3]);
        assert_eq!(
            classes[1].kind,
            MatrixType::Affine {
                null_root: vec![0, 0, 1, 1]
            }
        );
    }

    #[test]
    fn submatrix_checks_subset() {
        let a = gcm(&[&[2, -1], &[-1, 2]]);
        assert!(matches!(a.submatrix(&[]), Err(Error::BadSubset(_))));
        assert!(matches!(a.submatrix(&[1, 0]), Err(Error::BadSubset(_))));
        assert!(matches!(a.submatrix(&[0, 5]), Err(Error::BadSubset(_))));
        assert_eq!(a.submatrix(&[1]).unwrap().rows(), &[vec![2]]);
    }

    #[test]
    fn rank_of_affine_drops_by_one() {
        let a1aff = gcm(&[&[2, -2], &[-2, 2]]);
        assert_eq!(a1aff.rank(), 1);
        let a2 = gcm(&[&[2, -1], &[-1, 2]]);
        assert_eq!(a2.rank(), 2);
    }
}
