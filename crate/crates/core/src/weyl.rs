//! Weyl group action on the root lattice: simple reflections, reduction of
//! positive vectors to canonical representatives, and root classification.
//!
//! A positive vector reduces by repeatedly reflecting at the smallest index
//! with positive coroot pairing. Each such step strictly lowers the height,
//! so the loop terminates at one of three outcomes: a simple root (the vector
//! is a real root), a vector with all pairings ≤ 0 (imaginary candidate), or
//! an exit from the positive cone (not a root).

use serde::Serialize;

use crate::cartan::CartanMatrix;
use crate::error::{Error, Result};
use crate::lattice::{is_connected, pairing, GramTable, RootVector, SignClass};

/// A sequence of simple-reflection indices, in application order:
/// `word = [i, j]` sends x to s_j(s_i(x)).
pub type WeylWord = Vec<usize>;

/// The simple reflection sᵢ(x) = x − ⟨x, αᵢ^∨⟩·αᵢ.
pub fn reflect(a: &CartanMatrix, i: usize, x: &RootVector) -> RootVector {
    let p = pairing(a, x, i);
    let mut coeffs = x.coeffs().to_vec();
    coeffs[i] -= p;
    RootVector::new(coeffs)
}

/// Applies a word letter by letter.
pub fn apply_word(a: &CartanMatrix, word: &[usize], x: &RootVector) -> RootVector {
    let mut v = x.clone();
    for &i in word {
        v = reflect(a, i, &v);
    }
    v
}

/// Terminal state of [`reduce`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    /// Ended exactly at a simple root: the input is a real root.
    Simple { index: usize },
    /// All coroot pairings ≤ 0: the input is Weyl-conjugate to a vector in
    /// the closed negative chamber.
    DominantNegative,
    /// A reflection produced a non-positive, non-simple vector: the input is
    /// not a root.
    ExitedPositive,
}

/// Result of reducing a positive vector.
#[derive(Debug, Clone)]
pub struct Reduced {
    pub vector: RootVector,
    pub word: WeylWord,
    pub outcome: Reduction,
}

/// Reduces a positive vector by height-decreasing simple reflections,
/// always choosing the smallest index with positive pairing (deterministic).
pub fn reduce(a: &CartanMatrix, x: &RootVector) -> Result<Reduced> {
    if x.sign() != SignClass::Positive {
        return Err(Error::NotPositive(x.coeffs().to_vec()));
    }
    let mut v = x.clone();
    let mut word = WeylWord::new();
    loop {
        if let Some(index) = v.as_simple() {
            return Ok(Reduced {
                vector: v,
                word,
                outcome: Reduction::Simple { index },
            });
        }
        let Some(i) = (0..a.n()).find(|&i| pairing(a, &v, i) > 0) else {
            return Ok(Reduced {
                vector: v,
                word,
                outcome: Reduction::DominantNegative,
            });
        };
        v = reflect(a, i, &v);
        word.push(i);
        if v.sign() != SignClass::Positive {
            return Ok(Reduced {
                vector: v,
                word,
                outcome: Reduction::ExitedPositive,
            });
        }
    }
}

/// What a lattice vector is, as decided by Weyl reduction alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootClass {
    Real,
    Imaginary,
    NotARoot,
}

/// Classifies a nonzero lattice vector: real root, imaginary-root candidate,
/// or not a root.
///
/// Real means ±x is Weyl-conjugate to a simple root. Imaginary means ±x
/// reduces into the closed negative chamber with connected support (the
/// fundamental imaginary cone). Everything else is not a root. The form sign
/// is checked in debug builds: real ⇒ (x,x) > 0, imaginary ⇒ (x,x) ≤ 0.
pub fn classify_root(a: &CartanMatrix, g: &GramTable, x: &RootVector) -> Result<RootClass> {
    match x.sign() {
        SignClass::Zero => return Err(Error::ZeroVector),
        SignClass::Mixed => return Ok(RootClass::NotARoot),
        _ => {}
    }
    let pos = x.abs();
    let reduced = reduce(a, &pos)?;
    let class = match reduced.outcome {
        Reduction::Simple { .. } => RootClass::Real,
        Reduction::DominantNegative => {
            if is_connected(a, &reduced.vector) {
                RootClass::Imaginary
            } else {
                RootClass::NotARoot
            }
        }
        Reduction::ExitedPositive => RootClass::NotARoot,
    };
    #[cfg(debug_assertions)]
    {
        let norm = g.norm(x)?;
        match class {
            RootClass::Real => debug_assert!(norm > 0, "real root {x} with norm {norm}"),
            RootClass::Imaginary => {
                debug_assert!(norm <= 0, "imaginary root {x} with norm {norm}")
            }
            RootClass::NotARoot => {}
        }
    }
    let _ = g;
    Ok(class)
}

/// Applies one Weyl word to a pair so that the second member lands on its
/// canonical orbit representative: a simple root when β is real, a
/// fundamental-cone vector when β is positive imaginary (the negative of one
/// when β is negative imaginary). The same word is applied to α, preserving
/// all form values between the two.
pub fn orbit_reduce_pair(
    a: &CartanMatrix,
    g: &GramTable,
    alpha: &RootVector,
    beta: &RootVector,
) -> Result<(RootVector, RootVector, WeylWord)> {
    if classify_root(a, g, beta)? == RootClass::NotARoot {
        return Err(Error::NotARoot(beta.coeffs().to_vec()));
    }
    let reduced = reduce(a, &beta.abs())?;
    let alpha_out = apply_word(a, &reduced.word, alpha);
    let beta_out = apply_word(a, &reduced.word, beta);
    Ok((alpha_out, beta_out, reduced.word))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::symmetrize;

    fn setup(rows: Vec<Vec<i64>>) -> (CartanMatrix, GramTable) {
        let a = CartanMatrix::new(rows).unwrap();
        let q = symmetrize(&a).unwrap();
        let g = GramTable::new(&a, &q);
        (a, g)
    }

    #[test]
    fn reflection_negates_own_simple_root() {
        let (a, _) = setup(vec![vec![2, -1], vec![-1, 2]]);
        let alpha1 = RootVector::simple(2, 0);
        assert_eq!(reflect(&a, 0, &alpha1), alpha1.negated());
    }

    #[test]
    fn reflections_are_involutions() {
        let (a, _) = setup(vec![vec![2, -3], vec![-3, 2]]);
        for coeffs in [[3, 1], [5, 2], [1, 4]] {
            let x = RootVector::new(coeffs.to_vec());
            for i in 0..2 {
                assert_eq!(reflect(&a, i, &reflect(&a, i, &x)), x);
            }
        }
    }

    #[test]
    fn reduce_simple_sum_lands_on_simple_root() {
        let (a, _) = setup(vec![vec![2, -1], vec![-1, 2]]);
        let r = reduce(&a, &RootVector::new(vec![1, 1])).unwrap();
        assert_eq!(r.outcome, Reduction::Simple { index: 1 });
        assert_eq!(r.vector, RootVector::simple(2, 1));
        assert_eq!(r.word, vec![0]);
    }

    #[test]
    fn reduce_rejects_non_positive_input() {
        let (a, _) = setup(vec![vec![2, -1], vec![-1, 2]]);
        assert!(reduce(&a, &RootVector::new(vec![-1, 0])).is_err());
        assert!(reduce(&a, &RootVector::new(vec![1, -1])).is_err());
    }

    #[test]
    fn doubled_simple_root_exits_positivity() {
        let (a, g) = setup(vec![vec![2, -1], vec![-1, 2]]);
        let x = RootVector::new(vec![2, 0]);
        let r = reduce(&a, &x).unwrap();
        assert_eq!(r.outcome, Reduction::ExitedPositive);
        assert_eq!(classify_root(&a, &g, &x).unwrap(), RootClass::NotARoot);
    }

    #[test]
    fn classification_in_finite_type() {
        let (a, g) = setup(vec![vec![2, -1], vec![-1, 2]]);
        for (coeffs, want) in [
            (vec![1, 0], RootClass::Real),
            (vec![1, 1], RootClass::Real),
            (vec![2, 1], RootClass::NotARoot),
            (vec![-1, -1], RootClass::Real),
            (vec![1, -1], RootClass::NotARoot),
        ] {
            assert_eq!(
                classify_root(&a, &g, &RootVector::new(coeffs.clone())).unwrap(),
                want,
                "at {coeffs:?}"
            );
        }
        assert!(classify_root(&a, &g, &RootVector::zero(2)).is_err());
    }

    #[test]
    fn classification_in_hyperbolic_type() {
        let (a, g) = setup(vec![vec![2, -3], vec![-3, 2]]);
        assert_eq!(
            classify_root(&a, &g, &RootVector::new(vec![1, 1])).unwrap(),
            RootClass::Imaginary
        );
        assert_eq!(
            classify_root(&a, &g, &RootVector::new(vec![2, 1])).unwrap(),
            RootClass::Imaginary
        );
        assert_eq!(
            classify_root(&a, &g, &RootVector::new(vec![3, 1])).unwrap(),
            RootClass::Real
        );
    }

    #[test]
    fn affine_null_root_multiples_are_imaginary() {
        let (a, g) = setup(vec![vec![2, -2], vec![-2, 2]]);
        for k in 1..6 {
            let x = RootVector::new(vec![k, k]);
            assert_eq!(classify_root(&a, &g, &x).unwrap(), RootClass::Imaginary);
        }
    }

    #[test]
    fn orbit_reduction_reaches_fundamental_cone_and_preserves_form() {
        let (a, g) = setup(vec![vec![2, -3], vec![-3, 2]]);
        let alpha = RootVector::simple(2, 0);
        let beta = RootVector::new(vec![2, 1]);
        let (a_out, b_out, word) = orbit_reduce_pair(&a, &g, &alpha, &beta).unwrap();
        assert_eq!(b_out, RootVector::new(vec![1, 1]));
        assert!(crate::lattice::in_fundamental_cone(&a, &b_out));
        assert_eq!(
            g.form(&alpha, &beta).unwrap(),
            g.form(&a_out, &b_out).unwrap()
        );
        assert_eq!(apply_word(&a, &word, &beta), b_out);
    }

    #[test]
    fn orbit_reduction_rejects_non_roots() {
        let (a, g) = setup(vec![vec![2, -1], vec![-1, 2]]);
        let alpha = RootVector::simple(2, 0);
        let beta = RootVector::new(vec![2, 1]);
        assert!(orbit_reduce_pair(&a, &g, &alpha, &beta).is_err());
    }
}
