//! Subcommand implementations. Each returns the full stdout payload as a
//! string so that output is written once, atomically, and is byte-identical
//! across runs for fixed inputs in the json and csv formats.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use kmroots::cartan::{symmetrize, CartanMatrix, MatrixType, NamedMatrix, Symmetrizer};
use kmroots::lattice::RootVector;
use kmroots::multiplicity::MultiplicityTable;
use kmroots::strings::{
    self, Certificate, DirectionStatus, GrowthClass, RootString, StringClass,
};
use kmroots::verify;

use crate::config::{default_table_height, parse_window, Format, Settings};
use crate::CliError;

fn load_matrix(path: &Path) -> Result<NamedMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read matrix file {}: {e}", path.display())))?;
    Ok(NamedMatrix::from_json(&text)?)
}

fn parse_vector(text: &str, n: usize, what: &str) -> Result<RootVector, CliError> {
    let coeffs: Vec<i64> = text
        .split(',')
        .map(|t| t.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            CliError::Input(format!(
                "{what} must be comma-separated integers, got `{text}`"
            ))
        })?;
    if coeffs.len() != n {
        return Err(CliError::Input(format!(
            "{what} has {} coefficients but the matrix has rank {n}",
            coeffs.len()
        )));
    }
    Ok(RootVector::new(coeffs))
}

fn build_table(
    a: &CartanMatrix,
    sym: &Symmetrizer,
    height: i64,
    settings: &Settings,
) -> Result<MultiplicityTable, CliError> {
    let table = match &settings.cache_dir {
        Some(dir) => kmroots::cache::load_or_build(a, sym, dir, height)?,
        None => MultiplicityTable::build(a, sym, height)?,
    };
    Ok(table)
}

fn resolve_height(flag: Option<i64>, settings: &Settings, rank: usize) -> Result<i64, CliError> {
    let h = flag
        .or(settings.default_height)
        .unwrap_or_else(|| default_table_height(rank));
    if h < 1 {
        return Err(CliError::Input(format!("max-height must be ≥ 1, got {h}")));
    }
    Ok(h)
}

fn coeffs_spaced(coeffs: &[i64]) -> String {
    coeffs
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

// ---- validate ----

#[derive(Serialize)]
struct ValidateOut<'a> {
    matrix: &'a str,
    rank: usize,
    symmetrizer: &'a [i64],
    components: Vec<kmroots::cartan::ComponentClass>,
}

fn type_text(kind: &MatrixType) -> String {
    match kind {
        MatrixType::Finite => "finite".to_string(),
        MatrixType::Affine { null_root } => {
            format!("affine, null root {}", RootVector::new(null_root.clone()))
        }
        MatrixType::Indefinite => "indefinite".to_string(),
    }
}

pub fn cmd_validate(path: &Path, settings: &Settings) -> Result<String, CliError> {
    let nm = load_matrix(path)?;
    let a = nm.matrix()?;
    let sym = symmetrize(&a)?;
    let components = a.classify(&sym);
    match settings.format {
        Format::Json => {
            let out = ValidateOut {
                matrix: &nm.name,
                rank: a.n(),
                symmetrizer: sym.q(),
                components,
            };
            let mut s = serde_json::to_string_pretty(&out).expect("serializes");
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut s = String::from("matrix,component,type,null_root,symmetrizer\n");
            for c in &components {
                let null_root = match &c.kind {
                    MatrixType::Affine { null_root } => coeffs_spaced(null_root),
                    _ => String::new(),
                };
                let kind = match &c.kind {
                    MatrixType::Finite => "finite",
                    MatrixType::Affine { .. } => "affine",
                    MatrixType::Indefinite => "indefinite",
                };
                writeln!(
                    s,
                    "{},{},{kind},{null_root},{}",
                    nm.name,
                    c.support.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
                    coeffs_spaced(sym.q()),
                )
                .unwrap();
            }
            Ok(s)
        }
        Format::Table => {
            let mut s = format!(
                "matrix {}: valid generalized Cartan matrix of rank {}\n",
                nm.name,
                a.n()
            );
            writeln!(
                s,
                "symmetrizer: diag({})",
                sym.q()
                    .iter()
                    .map(i64::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            )
            .unwrap();
            for c in &components {
                writeln!(s, "component {:?}: {}", c.support, type_text(&c.kind)).unwrap();
            }
            Ok(s)
        }
    }
}

// ---- roots ----

#[derive(Serialize)]
struct RootRow {
    coeffs: Vec<i64>,
    height: i64,
    class: &'static str,
    norm: i64,
    mult: String,
}

#[derive(Serialize)]
struct RootsOut<'a> {
    matrix: &'a str,
    matrix_id: &'a str,
    max_height: i64,
    roots: Vec<RootRow>,
}

pub fn cmd_roots(
    path: &Path,
    max_height: Option<i64>,
    settings: &Settings,
) -> Result<String, CliError> {
    let nm = load_matrix(path)?;
    let a = nm.matrix()?;
    let sym = symmetrize(&a)?;
    let h = resolve_height(max_height, settings, a.n())?;
    let table = build_table(&a, &sym, h, settings)?;
    let gram = table.gram();
    let mut rows = Vec::new();
    for (v, mult) in table.positive_roots() {
        let norm = gram.norm(&v)?;
        rows.push(RootRow {
            coeffs: v.coeffs().to_vec(),
            height: v.height(),
            class: if norm > 0 { "real" } else { "imaginary" },
            norm,
            mult: mult.to_string(),
        });
    }
    match settings.format {
        Format::Json => {
            let out = RootsOut {
                matrix: &nm.name,
                matrix_id: table.matrix_id(),
                max_height: h,
                roots: rows,
            };
            let mut s = serde_json::to_string_pretty(&out).expect("serializes");
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut s = String::from("coeffs,height,class,norm,mult\n");
            for r in &rows {
                writeln!(
                    s,
                    "{},{},{},{},{}",
                    coeffs_spaced(&r.coeffs),
                    r.height,
                    r.class,
                    r.norm,
                    r.mult
                )
                .unwrap();
            }
            Ok(s)
        }
        Format::Table => {
            let mut s = format!(
                "matrix {} (rank {}): {} positive roots up to height {h}\n",
                nm.name,
                a.n(),
                rows.len()
            );
            let width = rows
                .iter()
                .map(|r| format!("{:?}", r.coeffs).len())
                .max()
                .unwrap_or(6);
            writeln!(
                s,
                "{:<width$}  {:>6}  {:<9}  {:>6}  mult",
                "coeffs", "height", "class", "norm"
            )
            .unwrap();
            for r in &rows {
                writeln!(
                    s,
                    "{:<width$}  {:>6}  {:<9}  {:>6}  {}",
                    format!("{:?}", r.coeffs),
                    r.height,
                    r.class,
                    r.norm,
                    r.mult
                )
                .unwrap();
            }
            Ok(s)
        }
    }
}

// ---- string ----

fn direction_text(d: &DirectionStatus) -> String {
    match d {
        DirectionStatus::Certified => "certified infinite".to_string(),
        DirectionStatus::Endpoint { at } => format!("endpoint at n = {at}"),
        DirectionStatus::UnknownAtBound => "undecided at the table bound".to_string(),
    }
}

fn tag_text(tag: &StringClass) -> String {
    match tag {
        StringClass::Trivial => "trivial (single member)".to_string(),
        StringClass::Finite => "finite".to_string(),
        StringClass::SemiInfinitePlus => "semi-infinite toward +direction".to_string(),
        StringClass::SemiInfiniteMinus => "semi-infinite toward -direction".to_string(),
        StringClass::BiInfinite => "bi-infinite".to_string(),
        StringClass::InfiniteAtLeastOneDirection { plus, minus } => format!(
            "infinite in at least one direction (+: {}, -: {})",
            direction_text(plus),
            direction_text(minus)
        ),
    }
}

fn growth_text(g: GrowthClass) -> &'static str {
    match g {
        GrowthClass::MultiplicityOne => "multiplicity one",
        GrowthClass::Bounded => "bounded",
        GrowthClass::SuperPolynomialLB => "super-polynomial lower bound",
        GrowthClass::ExponentialLB => "exponential lower bound",
    }
}

fn certificate_text(c: &Certificate) -> String {
    match c {
        Certificate::WittExponential { s, generators, samples } => format!(
            "witt-exponential: first thick multiple s = {s}, generators = {generators}, {} sample(s) checked",
            samples.len()
        ),
        Certificate::PartitionLB { shift, samples } => format!(
            "partition-lb: bottom shift {shift}, {} sample(s) checked",
            samples.len()
        ),
        Certificate::AffinePeriodicity { values, period, samples } => format!(
            "affine-periodicity: values {{{}}}, period {period}, {} sample(s) checked",
            values
                .iter()
                .map(BigInt::to_string)
                .collect::<Vec<_>>()
                .join(", "),
            samples.len()
        ),
        Certificate::LinearIncrement { base, direction, beta_mult, samples } => format!(
            "linear-increment: base {base}, direction {}, mult(direction root) = {beta_mult}, {} sample(s) checked",
            if *direction > 0 { "+1" } else { "-1" },
            samples.len()
        ),
    }
}

fn render_string_table(nm: &NamedMatrix, s: &RootString, table_height: i64) -> String {
    let mut out = format!(
        "string through {} along {} in matrix {} (window {}..{})\n",
        s.alpha, s.beta, nm.name, s.requested_window.0, s.requested_window.1
    );
    if s.clipped {
        writeln!(
            out,
            "  window clipped to {}..{} by the table height {table_height}",
            s.window.0, s.window.1
        )
        .unwrap();
    }
    let c = s.classification.as_ref().expect("classified");
    writeln!(out, "classification: {}", tag_text(&c.tag)).unwrap();
    writeln!(out, "evidence: {}", c.evidence).unwrap();
    writeln!(out, "growth: {}", growth_text(s.growth.expect("classified"))).unwrap();
    writeln!(out, "members:").unwrap();
    writeln!(out, "  {:>4}  {:<12}  mult", "n", "vector").unwrap();
    for e in &s.dims {
        let v = s
            .alpha
            .checked_add(&s.beta.scaled(e.n))
            .expect("window vector");
        if e.mult.is_zero() && !e.origin {
            continue;
        }
        writeln!(
            out,
            "  {:>4}  {:<12}  {}{}",
            e.n,
            v.to_string(),
            e.mult,
            if e.origin { "  (origin)" } else { "" }
        )
        .unwrap();
    }
    if s.certificates.is_empty() {
        writeln!(out, "certificates: none (finite or trivial string)").unwrap();
    } else {
        writeln!(out, "certificates:").unwrap();
        for c in &s.certificates {
            writeln!(out, "  {}", certificate_text(c)).unwrap();
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_string(
    path: &Path,
    alpha: &str,
    beta: &str,
    window: Option<&str>,
    max_height: Option<i64>,
    settings: &Settings,
) -> Result<String, CliError> {
    let nm = load_matrix(path)?;
    let a = nm.matrix()?;
    let sym = symmetrize(&a)?;
    let alpha = parse_vector(alpha, a.n(), "--alpha")?;
    let beta = parse_vector(beta, a.n(), "--beta")?;
    let window = match window {
        Some(w) => parse_window(w)?,
        None => settings.window,
    };
    let h = resolve_height(max_height, settings, a.n())?;
    let table = build_table(&a, &sym, h, settings)?;
    let mut s = strings::extract(&table, &alpha, &beta, window)?;
    strings::classify(&table, &mut s)?;
    strings::growth_certificates(&table, &mut s)?;
    match settings.format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&s).expect("serializes");
            text.push('\n');
            Ok(text)
        }
        Format::Csv => {
            let mut text = String::from("n,coeffs,height,mult,origin\n");
            for e in &s.dims {
                let v = s.alpha.checked_add(&s.beta.scaled(e.n))?;
                writeln!(
                    text,
                    "{},{},{},{},{}",
                    e.n,
                    coeffs_spaced(v.coeffs()),
                    v.height(),
                    e.mult,
                    e.origin
                )
                .unwrap();
            }
            Ok(text)
        }
        Format::Table => Ok(render_string_table(&nm, &s, h)),
    }
}

// ---- verify ----

pub fn cmd_verify(
    matrix: Option<&Path>,
    corpus: bool,
    max_height: Option<i64>,
    settings: &Settings,
) -> Result<(String, bool), CliError> {
    let targets = match (matrix, corpus) {
        (Some(path), false) => vec![load_matrix(path)?],
        (None, true) => verify::default_corpus(),
        (None, false) => {
            return Err(CliError::Input(
                "pass a matrix file or --corpus to select what to verify".to_string(),
            ))
        }
        (Some(_), true) => unreachable!("clap conflicts_with prevents this"),
    };
    if let Some(h) = max_height {
        if h < 2 {
            return Err(CliError::Input(format!("max-height must be ≥ 2, got {h}")));
        }
    }
    let report = verify::verify_corpus(&targets, max_height, settings.cache_dir.as_deref())?;
    let text = match settings.format {
        Format::Json => report.to_json(),
        Format::Table => report.to_table(),
        Format::Csv => {
            let mut s = String::from("matrix,check,status,instances,failures\n");
            for m in &report.matrices {
                for c in &m.checks {
                    let status = if !c.failures.is_empty() {
                        "fail"
                    } else if !c.warnings.is_empty() {
                        "warn"
                    } else {
                        "pass"
                    };
                    writeln!(
                        s,
                        "{},{},{status},{},{}",
                        m.name,
                        c.name,
                        c.instances,
                        c.failures.len()
                    )
                    .unwrap();
                }
            }
            s
        }
    };
    Ok((text, report.passed))
}
