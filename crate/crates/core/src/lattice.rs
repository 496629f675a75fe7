//! The root lattice Q = ⨁ᵢ Zαᵢ: integer coefficient vectors, their sign
//! classes, and the invariant bilinear form induced by the symmetrizer.
//!
//! With the symmetrizer normalized to coprime positive integers, the Gram
//! matrix B = diag(q)·A is integral, so every form value here is an exact
//! integer (a rational with denominator 1).

use std::fmt;

use serde::Serialize;

use crate::cartan::{CartanMatrix, Symmetrizer};
use crate::error::{Error, Result};

/// Position of a lattice vector relative to the positive cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SignClass {
    Zero,
    Positive,
    Negative,
    Mixed,
}

/// An element of the root lattice, with its sign class computed eagerly.
///
/// Ordering is lexicographic on coefficients (the sign field is a function of
/// the coefficients, so derived equality and ordering stay consistent).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector {
    coeffs: Vec<i64>,
    sign: SignClass,
}

impl RootVector {
    pub fn new(coeffs: Vec<i64>) -> Self {
        let sign = sign_of(&coeffs);
        RootVector { coeffs, sign }
    }

    /// The i-th simple root αᵢ in an index set of size n.
    pub fn simple(n: usize, i: usize) -> Self {
        let mut coeffs = vec![0; n];
        coeffs[i] = 1;
        RootVector::new(coeffs)
    }

    pub fn zero(n: usize) -> Self {
        RootVector::new(vec![0; n])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn sign(&self) -> SignClass {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == SignClass::Zero
    }

    /// Sum of coefficients (negative for negative vectors).
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Indices with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&i| self.coeffs[i] != 0)
            .collect()
    }

    /// If this vector is a simple root, its index.
    pub fn as_simple(&self) -> Option<usize> {
        let mut idx = None;
        for (i, &c) in self.coeffs.iter().enumerate() {
            match (c, idx) {
                (0, _) => {}
                (1, None) => idx = Some(i),
                _ => return None,
            }
        }
        idx
    }

    pub fn checked_add(&self, other: &RootVector) -> Result<RootVector> {
        self.zip(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &RootVector) -> Result<RootVector> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &RootVector, f: impl Fn(i64, i64) -> i64) -> Result<RootVector> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(RootVector::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        ))
    }

    pub fn negated(&self) -> RootVector {
        RootVector::new(self.coeffs.iter().map(|&c| -c).collect())
    }

    pub fn scaled(&self, k: i64) -> RootVector {
        RootVector::new(self.coeffs.iter().map(|&c| c * k).collect())
    }

    /// |x|: the vector or its negation, whichever is not negative.
    pub fn abs(&self) -> RootVector {
        if self.sign == SignClass::Negative {
            self.negated()
        } else {
            self.clone()
        }
    }

    /// x/k when every coefficient is divisible by k ≥ 1.
    pub fn divided(&self, k: i64) -> Option<RootVector> {
        if k < 1 || self.coeffs.iter().any(|&c| c % k != 0) {
            return None;
        }
        Some(RootVector::new(self.coeffs.iter().map(|&c| c / k).collect()))
    }

    /// gcd of the coefficients (0 for the zero vector).
    pub fn content(&self) -> i64 {
        self.coeffs
            .iter()
            .fold(0i64, |g, &c| num_integer::gcd(g, c.abs()))
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for RootVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

fn sign_of(coeffs: &[i64]) -> SignClass {
    let any_pos = coeffs.iter().any(|&c| c > 0);
    let any_neg = coeffs.iter().any(|&c| c < 0);
    match (any_pos, any_neg) {
        (false, false) => SignClass::Zero,
        (true, false) => SignClass::Positive,
        (false, true) => SignClass::Negative,
        (true, true) => SignClass::Mixed,
    }
}

/// ⟨x, αᵢ^∨⟩ = Σⱼ a[i][j]·xⱼ — the integer pairing against the i-th coroot.
pub fn pairing(a: &CartanMatrix, x: &RootVector, i: usize) -> i64 {
    (0..a.n()).map(|j| a.entry(i, j) * x.coeffs()[j]).sum()
}

/// Whether the support of x induces a connected Dynkin subgraph
/// (false for the zero vector).
pub fn is_connected(a: &CartanMatrix, x: &RootVector) -> bool {
    a.subset_connected(&x.support())
}

/// Whether x lies in the fundamental imaginary cone K: positive, every
/// coroot pairing ≤ 0, and connected support.
pub fn in_fundamental_cone(a: &CartanMatrix, x: &RootVector) -> bool {
    x.sign() == SignClass::Positive
        && (0..a.n()).all(|i| pairing(a, x, i) <= 0)
        && is_connected(a, x)
}

/// The symmetrized Gram matrix bᵢⱼ = qᵢ·aᵢⱼ together with the data of the
/// Weyl vector: (ρ, αᵢ) = qᵢ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramTable {
    b: Vec<Vec<i64>>,
    q: Vec<i64>,
}

impl GramTable {
    pub fn new(a: &CartanMatrix, sym: &Symmetrizer) -> GramTable {
        let q = sym.q().to_vec();
        let b = (0..a.n())
            .map(|i| (0..a.n()).map(|j| q[i] * a.entry(i, j)).collect())
            .collect();
        GramTable { b, q }
    }

    pub fn n(&self) -> usize {
        self.q.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    /// The symmetrizing weights q used to build this Gram matrix.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.q
    }

    /// The invariant form (x, y) = xᵀ·B·y, exact.
    pub fn form(&self, x: &RootVector, y: &RootVector) -> Result<i64> {
        let n = self.n();
        if x.dim() != n {
            return Err(Error::DimensionMismatch(x.dim(), n));
        }
        if y.dim() != n {
            return Err(Error::DimensionMismatch(y.dim(), n));
        }
        let mut acc: i128 = 0;
        for i in 0..n {
            if x.coeffs()[i] == 0 {
                continue;
            }
            let mut row: i128 = 0;
            for j in 0..n {
                row += self.b[i][j] as i128 * y.coeffs()[j] as i128;
            }
            acc += x.coeffs()[i] as i128 * row;
        }
        i64::try_from(acc).map_err(|_| {
            Error::PreconditionViolated(format!("form value {acc} exceeds machine range"))
        })
    }

    /// The squared length (x, x).
    pub fn norm(&self, x: &RootVector) -> Result<i64> {
        self.form(x, x)
    }

    /// (ρ, x) = Σᵢ qᵢ·xᵢ for the Weyl vector ρ with ⟨ρ, αᵢ^∨⟩ = 1.
    pub fn rho_form(&self, x: &RootVector) -> i64 {
        self.q
            .iter()
            .zip(x.coeffs())
            .map(|(&qi, &xi)| qi * xi)
            .sum()
    }
}
