//! Plain-text persistence for multiplicity tables.
//!
//! One file per matrix, named by the matrix content hash:
//!
//! ```text
//! kmroots-table v1
//! matrix <64 hex chars>
//! rank <n>
//! q <q_1> ... <q_n>
//! max_height <H>
//! entries <count>
//! <x_1> ... <x_n> <mult> <c_numer> <c_denom>
//! ...
//! ```
//!
//! Entry lines appear in (height, lexicographic) order, so the file bytes are
//! a deterministic function of the table. Writes go through a temp file and
//! an atomic rename. Loading re-verifies the header against the requesting
//! matrix and re-checks the table's internal identities (simple roots,
//! per-level completeness, the divisor identity linking c to mult), so a
//! damaged or foreign file is rejected rather than trusted.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cartan::{CartanMatrix, Symmetrizer};
use crate::error::{Error, Result};
use crate::lattice::RootVector;
use crate::multiplicity::{matrix_id, Entry, MultiplicityTable};

const MAGIC: &str = "kmroots-table v1";

/// File that holds the table for this matrix under `dir`.
pub fn table_path(dir: &Path, a: &CartanMatrix, sym: &Symmetrizer) -> PathBuf {
    dir.join(format!("{}.kmtable", matrix_id(a, sym)))
}

/// Serializes the table to its canonical text form.
pub fn render(table: &MultiplicityTable) -> String {
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    out.push_str(&format!("matrix {}\n", table.matrix_id()));
    out.push_str(&format!("rank {}\n", table.matrix().n()));
    out.push_str("q");
    for qi in table.gram().symmetrizer() {
        out.push_str(&format!(" {qi}"));
    }
    out.push('\n');
    out.push_str(&format!("max_height {}\n", table.max_height()));
    let entries = table.entries_sorted();
    out.push_str(&format!("entries {}\n", entries.len()));
    for (v, e) in entries {
        for x in v.coeffs() {
            out.push_str(&format!("{x} "));
        }
        out.push_str(&format!("{} {} {}\n", e.mult, e.c.numer(), e.c.denom()));
    }
    out
}

/// Writes the table under `dir` (created if missing), atomically replacing
/// any previous file for the same matrix. Returns the file path.
pub fn store(table: &MultiplicityTable, dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(format!("{}.kmtable", table.matrix_id()));
    let tmp = dir.join(format!("{}.kmtable.tmp", table.matrix_id()));
    fs::write(&tmp, render(table))?;
    fs::rename(&tmp, &path)?;
    Ok(path)
}

/// Loads the table for `a` from `dir`. `Ok(None)` when no file exists;
/// `Err(CorruptCache)` when a file exists but fails any integrity check.
pub fn load(
    a: &CartanMatrix,
    sym: &Symmetrizer,
    dir: &Path,
) -> Result<Option<MultiplicityTable>> {
    let path = table_path(dir, a, sym);
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(&path)?;
    parse(a, sym, &text).map(Some).map_err(|e| match e {
        Error::CorruptCache { reason, .. } => Error::CorruptCache {
            path: path.display().to_string(),
            reason,
        },
        other => other,
    })
}

/// Loads the cached table if present and valid, extends it to `height`
/// (building from scratch when absent), and stores the result back when it
/// grew. A corrupt file is an error, not silently rebuilt.
pub fn load_or_build(
    a: &CartanMatrix,
    sym: &Symmetrizer,
    dir: &Path,
    height: i64,
) -> Result<MultiplicityTable> {
    let mut table = match load(a, sym, dir)? {
        Some(t) => t,
        None => MultiplicityTable::new(a, sym),
    };
    if table.max_height() < height {
        table.ensure_height(height)?;
        store(&table, dir)?;
    }
    Ok(table)
}

fn corrupt(reason: impl Into<String>) -> Error {
    Error::CorruptCache {
        path: String::new(),
        reason: reason.into(),
    }
}

fn parse(a: &CartanMatrix, sym: &Symmetrizer, text: &str) -> Result<MultiplicityTable> {
    let mut lines = text.lines();
    let magic = lines
        .next()
        .ok_or_else(|| corrupt("empty cache file"))?;
    if magic != MAGIC {
        return Err(corrupt(format!("unrecognized format line `{magic}`")));
    }
    let mut header = |prefix: &str| -> Result<String> {
        let line = lines
            .next()
            .ok_or_else(|| corrupt(format!("missing `{prefix}` header line")))?;
        line.strip_prefix(prefix)
            .map(|rest| rest.trim().to_string())
            .ok_or_else(|| corrupt(format!("expected `{prefix}` line, found `{line}`")))
    };
    let id = header("matrix ")?;
    if id != matrix_id(a, sym) {
        return Err(corrupt("file is for a different matrix"));
    }
    let rank: usize = header("rank ")?
        .parse()
        .map_err(|_| corrupt("bad rank line"))?;
    if rank != a.n() {
        return Err(corrupt(format!("rank {rank} does not match matrix")));
    }
    let q_line = header("q")?;
    let q: Vec<i64> = q_line
        .split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|_| corrupt("bad q line")))
        .collect::<Result<_>>()?;
    if q != sym.q() {
        return Err(corrupt("symmetrizer does not match matrix"));
    }
    let max_height: i64 = header("max_height ")?
        .parse()
        .map_err(|_| corrupt("bad max_height line"))?;
    if max_height < 0 {
        return Err(corrupt("negative max_height"));
    }
    let count: usize = header("entries ")?
        .parse()
        .map_err(|_| corrupt("bad entries line"))?;

    let mut entries: HashMap<RootVector, Entry> = HashMap::with_capacity(count);
    for _ in 0..count {
        let line = lines
            .next()
            .ok_or_else(|| corrupt("fewer entry lines than declared"))?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != rank + 3 {
            return Err(corrupt(format!("malformed entry line `{line}`")));
        }
        let mut coeffs = Vec::with_capacity(rank);
        for t in &tokens[..rank] {
            coeffs.push(
                t.parse::<i64>()
                    .map_err(|_| corrupt(format!("bad coefficient in `{line}`")))?,
            );
        }
        let mult = BigInt::from_str(tokens[rank])
            .map_err(|_| corrupt(format!("bad multiplicity in `{line}`")))?;
        let numer = BigInt::from_str(tokens[rank + 1])
            .map_err(|_| corrupt(format!("bad numerator in `{line}`")))?;
        let denom = BigInt::from_str(tokens[rank + 2])
            .map_err(|_| corrupt(format!("bad denominator in `{line}`")))?;
        if denom <= BigInt::zero() {
            return Err(corrupt(format!("non-positive denominator in `{line}`")));
        }
        let vector = RootVector::new(coeffs);
        let c = BigRational::new(numer, denom.clone());
        if c.denom() != &denom {
            return Err(corrupt(format!("unreduced rational in `{line}`")));
        }
        if entries
            .insert(vector.clone(), Entry { mult, c })
            .is_some()
        {
            return Err(corrupt(format!("duplicate entry for {vector}")));
        }
    }
    if let Some(extra) = lines.find(|l| !l.trim().is_empty()) {
        return Err(corrupt(format!("trailing content `{extra}`")));
    }

    // Spot-check the simple roots before the full structural validation.
    for i in 0..rank {
        if max_height >= 1 {
            let e = entries
                .get(&RootVector::simple(rank, i))
                .ok_or_else(|| corrupt(format!("missing simple root {i}")))?;
            if !e.mult.is_one() || !e.c.is_one() {
                return Err(corrupt(format!("simple root {i} has wrong values")));
            }
        }
    }

    MultiplicityTable::from_parts(a, sym, max_height, entries)
}
