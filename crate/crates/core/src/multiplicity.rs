//! Exact root multiplicities via the Peterson recurrence.
//!
//! For each positive lattice vector β the table stores the auxiliary value
//!
//! ```text
//! c_β = Σ_{k ≥ 1, β/k integral} mult(β/k) / k
//! ```
//!
//! computed level by height level from
//!
//! ```text
//! ((β,β) − 2(ρ,β)) · c_β = Σ_{β′+β″=β, β′,β″>0} (β′,β″) · c_β′ · c_β″
//! ```
//!
//! with base case c_αᵢ = 1, and extracts mult(β) by Möbius-style removal of
//! the divisor terms. Every value is an exact arbitrary-precision rational;
//! multiplicities are checked to be nonnegative integers (anything else is
//! reported as an engine error, never skipped).
//!
//! The denominator (β,β) − 2(ρ,β) is negative whenever β is a positive
//! imaginary root (the norm is ≤ 0 while (ρ,β) > 0), so it can vanish only at
//! vectors of positive norm. When it does and the decomposition sum is zero,
//! the recurrence is vacuous (0 = 0) and the engine falls back to Weyl
//! reduction: such a β is a real root (mult 1) or not a root (mult 0). A
//! vanishing denominator with a nonzero decomposition sum cannot happen for a
//! correct table and is reported.
//!
//! Evaluation is single-threaded and deterministic: levels in height order,
//! vectors in lexicographic order within a level. The table is immutable
//! once built except for monotone extension to larger heights.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use sha2::{Digest, Sha256};

use crate::cartan::{CartanMatrix, Symmetrizer};
use crate::error::{Error, Result};
use crate::lattice::{GramTable, RootVector, SignClass};
use crate::weyl::{classify_root, RootClass};

/// One table slot: the extracted multiplicity and the recurrence auxiliary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub mult: BigInt,
    pub c: BigRational,
}

/// Multiplicity table for one symmetrizable Cartan matrix, complete for all
/// positive lattice vectors of height ≤ `max_height`.
#[derive(Debug, Clone)]
pub struct MultiplicityTable {
    matrix_id: String,
    a: CartanMatrix,
    gram: GramTable,
    max_height: i64,
    entries: HashMap<RootVector, Entry>,
    /// support[h] lists the height-h vectors with c ≠ 0, lex order.
    support: Vec<Vec<RootVector>>,
}

/// Content hash identifying (matrix, symmetrizer) for caching: SHA-256 over
/// a canonical textual encoding, rendered as lowercase hex.
pub fn matrix_id(a: &CartanMatrix, sym: &Symmetrizer) -> String {
    let mut hasher = Sha256::new();
    let mut text = format!("kmroots-matrix-v1;n={};a=", a.n());
    for i in 0..a.n() {
        for j in 0..a.n() {
            text.push_str(&a.entry(i, j).to_string());
            text.push(',');
        }
    }
    text.push_str(";q=");
    for qi in sym.q() {
        text.push_str(&qi.to_string());
        text.push(',');
    }
    hasher.update(text.as_bytes());
    let digest = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for byte in digest {
        hex.push_str(&format!("{byte:02x}"));
    }
    hex
}

impl MultiplicityTable {
    /// Empty table (height 0); extend with [`ensure_height`].
    pub fn new(a: &CartanMatrix, sym: &Symmetrizer) -> MultiplicityTable {
        MultiplicityTable {
            matrix_id: matrix_id(a, sym),
            a: a.clone(),
            gram: GramTable::new(a, sym),
            max_height: 0,
            entries: HashMap::new(),
            support: vec![Vec::new()],
        }
    }

    /// Builds a table complete up to `height`.
    pub fn build(a: &CartanMatrix, sym: &Symmetrizer, height: i64) -> Result<MultiplicityTable> {
        let mut t = MultiplicityTable::new(a, sym);
        t.ensure_height(height)?;
        Ok(t)
    }

    pub fn matrix_id(&self) -> &str {
        &self.matrix_id
    }

    pub fn max_height(&self) -> i64 {
        self.max_height
    }

    pub fn matrix(&self) -> &CartanMatrix {
        &self.a
    }

    pub fn gram(&self) -> &GramTable {
        &self.gram
    }

    /// Number of stored entries (all positive vectors of height ≤ bound).
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Extends the table so every positive vector of height ≤ `height` has an
    /// entry. No-op when already covered.
    pub fn ensure_height(&mut self, height: i64) -> Result<()> {
        while self.max_height < height {
            let h = self.max_height + 1;
            self.support.push(Vec::new());
            let mut level_support = Vec::new();
            for beta in vectors_of_height(self.a.n(), h) {
                let entry = self.evaluate(&beta, h)?;
                if !entry.c.is_zero() {
                    level_support.push(beta.clone());
                }
                self.entries.insert(beta, entry);
            }
            self.support[h as usize] = level_support;
            self.max_height = h;
        }
        Ok(())
    }

    /// Evaluates one height-h vector against the already-complete lower
    /// levels.
    fn evaluate(&self, beta: &RootVector, h: i64) -> Result<Entry> {
        if h == 1 {
            // simple root: mult 1, and 1 is its only divisor term
            return Ok(Entry {
                mult: BigInt::one(),
                c: BigRational::one(),
            });
        }
        let denom = self.gram.norm(beta)? - 2 * self.gram.rho_form(beta);
        let rhs = self.decomposition_sum(beta, h)?;
        let divisors = self.divisor_tail(beta);
        let c: BigRational;
        let mult: BigInt;
        if denom != 0 {
            c = rhs / BigRational::from_integer(denom.into());
            let mult_rat = &c - &divisors;
            if !mult_rat.is_integer() || mult_rat.is_negative() {
                return Err(Error::NonIntegerMultiplicity {
                    vector: beta.coeffs().to_vec(),
                    value: mult_rat.to_string(),
                });
            }
            mult = mult_rat.to_integer();
        } else {
            if !rhs.is_zero() {
                return Err(Error::ZeroDenominator {
                    vector: beta.coeffs().to_vec(),
                    rhs: rhs.to_string(),
                });
            }
            // Vacuous recurrence: the vanishing denominator forces
            // (β,β) > 0, so β is real or not a root; Weyl reduction decides.
            mult = match classify_root(&self.a, &self.gram, beta)? {
                RootClass::Real => BigInt::one(),
                _ => BigInt::zero(),
            };
            c = BigRational::from_integer(mult.clone()) + divisors;
        }
        Ok(Entry { mult, c })
    }

    /// Σ (β′,β″)·c_β′·c_β″ over unordered decompositions β = β′ + β″ into
    /// positive vectors, each unordered pair counted with weight 2 (weight 1
    /// when β′ = β″). Iterates only vectors with c ≠ 0.
    fn decomposition_sum(&self, beta: &RootVector, h: i64) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for h1 in 1..=h / 2 {
            let paired_level = h1 * 2 == h;
            for b1 in &self.support[h1 as usize] {
                if !componentwise_le(b1, beta) {
                    continue;
                }
                let b2 = beta.checked_sub(b1)?;
                if paired_level && b1 > &b2 {
                    continue; // the pair was (or will be) seen with roles swapped
                }
                let Some(e2) = self.entries.get(&b2) else {
                    continue;
                };
                if e2.c.is_zero() {
                    continue;
                }
                let c1 = &self.entries.get(b1).expect("support entry exists").c;
                let pair_form = self.gram.form(b1, &b2)?;
                if pair_form == 0 {
                    continue;
                }
                let weight = if b1 == &b2 { 1 } else { 2 };
                acc += BigRational::from_integer((weight * pair_form).into()) * c1 * &e2.c;
            }
        }
        Ok(acc)
    }

    /// Σ_{k ≥ 2, β/k integral} mult(β/k)/k, from lower levels.
    fn divisor_tail(&self, beta: &RootVector) -> BigRational {
        let content = beta.content();
        let mut acc = BigRational::zero();
        for k in 2..=content {
            if content % k != 0 {
                continue;
            }
            let inner = beta.divided(k).expect("k divides content");
            let m = &self.entries.get(&inner).expect("lower level complete").mult;
            if !m.is_zero() {
                acc += BigRational::new(m.clone(), k.into());
            }
        }
        acc
    }

    /// Multiplicity of an arbitrary nonzero lattice vector within the height
    /// bound: mult(x) = mult(−x), and 0 for vectors of mixed sign.
    pub fn mult(&self, x: &RootVector) -> Result<BigInt> {
        match x.sign() {
            SignClass::Zero => Err(Error::ZeroVector),
            SignClass::Mixed => Ok(BigInt::zero()),
            _ => {
                let pos = x.abs();
                let h = pos.height();
                if h > self.max_height {
                    return Err(Error::HeightBoundExceeded {
                        needed: h,
                        bound: self.max_height,
                    });
                }
                Ok(self
                    .entries
                    .get(&pos)
                    .expect("table complete below bound")
                    .mult
                    .clone())
            }
        }
    }

    /// Whether ±x is a root according to the table.
    pub fn is_root(&self, x: &RootVector) -> Result<bool> {
        Ok(!self.mult(x)?.is_zero())
    }

    /// The recurrence auxiliary c for a positive vector within range.
    pub fn c_value(&self, x: &RootVector) -> Result<&BigRational> {
        if x.sign() != SignClass::Positive {
            return Err(Error::NotPositive(x.coeffs().to_vec()));
        }
        if x.height() > self.max_height {
            return Err(Error::HeightBoundExceeded {
                needed: x.height(),
                bound: self.max_height,
            });
        }
        Ok(&self.entries.get(x).expect("table complete below bound").c)
    }

    /// All positive roots (mult > 0) up to the height bound, sorted by
    /// (height, lex).
    pub fn positive_roots(&self) -> Vec<(RootVector, BigInt)> {
        let mut out: Vec<(RootVector, BigInt)> = self
            .entries
            .iter()
            .filter(|(_, e)| !e.mult.is_zero())
            .map(|(v, e)| (v.clone(), e.mult.clone()))
            .collect();
        out.sort_by(|(x, _), (y, _)| x.height().cmp(&y.height()).then_with(|| x.cmp(y)));
        out
    }

    /// Every stored entry, sorted by (height, lex) — the cache file order.
    pub fn entries_sorted(&self) -> Vec<(&RootVector, &Entry)> {
        let mut out: Vec<(&RootVector, &Entry)> = self.entries.iter().collect();
        out.sort_by(|(x, _), (y, _)| x.height().cmp(&y.height()).then_with(|| x.cmp(y)));
        out
    }

    /// Rebuilds a table from parsed cache data. Validates internal
    /// consistency (simple roots, divisor identities, level completeness);
    /// the caller has already matched the matrix hash.
    pub(crate) fn from_parts(
        a: &CartanMatrix,
        sym: &Symmetrizer,
        max_height: i64,
        entries: HashMap<RootVector, Entry>,
    ) -> Result<MultiplicityTable> {
        let mut support = vec![Vec::new(); (max_height + 1) as usize];
        let mut per_level_count = vec![0usize; (max_height + 1) as usize];
        for (v, e) in &entries {
            if v.sign() != SignClass::Positive {
                return Err(corrupt(format!("non-positive vector {v} in table")));
            }
            let h = v.height();
            if h > max_height {
                return Err(corrupt(format!("vector {v} above declared height")));
            }
            per_level_count[h as usize] += 1;
            if e.mult.is_negative() {
                return Err(corrupt(format!("negative multiplicity at {v}")));
            }
            if !e.c.is_zero() {
                support[h as usize].push(v.clone());
            }
        }
        for h in 1..=max_height {
            let expected = count_vectors_of_height(a.n(), h);
            if per_level_count[h as usize] != expected {
                return Err(corrupt(format!(
                    "level {h} has {} entries, expected {expected}",
                    per_level_count[h as usize]
                )));
            }
            support[h as usize].sort();
        }
        // Divisor identity ties c to the mult values below it.
        for (v, e) in &entries {
            let mut acc = BigRational::zero();
            let content = v.content();
            for k in 1..=content {
                if content % k != 0 {
                    continue;
                }
                let inner = v.divided(k).expect("k divides content");
                let m = &entries
                    .get(&inner)
                    .ok_or_else(|| corrupt(format!("missing divisor entry {inner}")))?
                    .mult;
                if !m.is_zero() {
                    acc += BigRational::new(m.clone(), k.into());
                }
            }
            if acc != e.c {
                return Err(corrupt(format!(
                    "divisor identity fails at {v}: c = {}, divisor sum = {acc}",
                    e.c
                )));
            }
        }
        Ok(MultiplicityTable {
            matrix_id: matrix_id(a, sym),
            a: a.clone(),
            gram: GramTable::new(a, sym),
            max_height,
            entries,
            support,
        })
    }
}

fn corrupt(reason: String) -> Error {
    Error::CorruptCache {
        path: String::new(),
        reason,
    }
}

fn componentwise_le(x: &RootVector, y: &RootVector) -> bool {
    x.coeffs().iter().zip(y.coeffs()).all(|(&a, &b)| a <= b)
}

/// All nonnegative integer vectors of the given height, lexicographic order.
pub fn vectors_of_height(n: usize, h: i64) -> Vec<RootVector> {
    let mut out = Vec::new();
    let mut current = vec![0i64; n];
    fill(&mut out, &mut current, 0, h, n);
    return out;

    fn fill(out: &mut Vec<RootVector>, current: &mut Vec<i64>, pos: usize, remaining: i64, n: usize) {
        if pos == n - 1 {
            current[pos] = remaining;
            out.push(RootVector::new(current.clone()));
            return;
        }
        for c in 0..=remaining {
            current[pos] = c;
            fill(out, current, pos + 1, remaining - c, n);
        }
    }
}

/// Number of nonnegative integer vectors of length n with coefficient sum h:
/// the binomial C(h+n−1, n−1).
fn count_vectors_of_height(n: usize, h: i64) -> usize {
    let mut acc: u128 = 1;
    for i in 1..=(n - 1) as u128 {
        acc = acc * (h as u128 + i) / i;
    }
    acc as usize
}

/// Convenience: every root of height ≤ `height`, sorted by (height, lex).
pub fn enumerate_roots(
    a: &CartanMatrix,
    sym: &Symmetrizer,
    height: i64,
) -> Result<Vec<(RootVector, BigInt)>> {
    Ok(MultiplicityTable::build(a, sym, height)?.positive_roots())
}
