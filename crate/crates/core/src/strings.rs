//! Root strings: extraction, classification, growth certificates, and
//! monotonicity analysis.
//!
//! The string through a base point α in the direction of a root β is the set
//! {α + nβ} over the maximal consecutive integer set containing 0 whose
//! members are roots (the lattice origin counts as a member). Classification
//! is theorem-driven, not enumeration-driven: window data can only establish
//! finite facts (a second member, an endpoint), while the infinite tags come
//! from exact criteria on the invariant form:
//!
//! * direction real (norm > 0) — the string is finite;
//! * direction imaginary non-isotropic (norm < 0) — a nontrivial string is
//!   infinite in at least one direction, with exponentially growing
//!   multiplicities along the ray through the direction vector;
//! * direction isotropic (norm = 0), base pairs to zero — bi-infinite with
//!   bounded multiplicities (≤ 2 values away from the origin, periodic);
//! * direction isotropic, base pairs nonzero — semi-infinite toward the side
//!   on which the pairing is negative, with multiplicities eventually
//!   dominating every polynomial (partition-function lower bound).
//!
//! Each classification is accompanied by machine-checked certificates whose
//! lower bounds are compared against the exact table; a certificate that
//! fails is an engine bug and surfaces as an error, never a warning.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::cartan::CartanMatrix;
use crate::combinatorics::{partition, witt_dim};
use crate::error::{Error, Result};
use crate::lattice::{GramTable, RootVector, SignClass};
use crate::multiplicity::MultiplicityTable;

/// Window used by classification when the caller does not supply one.
pub const DEFAULT_WINDOW: (i64, i64) = (-12, 12);

fn ser_bigint<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_bigints<S: Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

/// Status of one direction of a string along a non-isotropic imaginary root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DirectionStatus {
    /// Provably infinite: some member pairs negatively with the direction
    /// (walking that way can then never leave the root system).
    Certified,
    /// A non-root was found: the last member on this side sits at index `at`.
    Endpoint { at: i64 },
    /// Undecided within the table's height bound.
    UnknownAtBound,
}

/// Shape of the member set S of a string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum StringClass {
    /// The base point is the only member.
    Trivial,
    /// Finite with two endpoints (direction is a real root).
    Finite,
    /// Infinite exactly toward +direction, finite toward −direction.
    SemiInfinitePlus,
    /// Infinite exactly toward −direction, finite toward +direction.
    SemiInfiniteMinus,
    /// Every integer translate is a member.
    BiInfinite,
    /// Infinite in at least one direction (non-isotropic imaginary
    /// direction); per-direction evidence is recorded, and the undecided
    /// direction — when the other has an endpoint — is forced infinite.
    InfiniteAtLeastOneDirection {
        plus: DirectionStatus,
        minus: DirectionStatus,
    },
}

/// Growth of the member multiplicities along the string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthClass {
    /// Every member is a real root (multiplicity exactly 1).
    MultiplicityOne,
    /// Bounded; for bi-infinite isotropic strings, ≤ 2 values off-origin.
    Bounded,
    /// Eventually exceeds every polynomial (partition-function lower bound).
    SuperPolynomialLB,
    /// Exponential lower bound via free-Lie-algebra dimensions.
    ExponentialLB,
}

/// Classification plus the human-readable reason it fired.
#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub tag: StringClass,
    pub evidence: String,
}

/// One checked sample point of a certificate: lower ≤ actual always holds
/// (enforced at construction).
#[derive(Debug, Clone, Serialize)]
pub struct CertSample {
    pub n: i64,
    #[serde(serialize_with = "ser_bigint")]
    pub lower: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub actual: BigInt,
}

/// A finite, machine-checked witness for a growth claim.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Along the ray through s·β the multiplicities dominate the graded
    /// dimensions of a free Lie algebra on `generators` generators.
    WittExponential {
        s: i64,
        #[serde(serialize_with = "ser_bigint")]
        generators: BigInt,
        samples: Vec<CertSample>,
    },
    /// After shifting to the bottom member, multiplicities dominate the
    /// partition function.
    PartitionLB { shift: i64, samples: Vec<CertSample> },
    /// The off-origin member multiplicities take `values` (≤ 2 of them) and
    /// repeat with the given period (≤ 3) across the window.
    AffinePeriodicity {
        #[serde(serialize_with = "ser_bigints")]
        values: Vec<BigInt>,
        period: i64,
        samples: Vec<CertSample>,
    },
    /// From `base`, each step of `direction`·β raises the multiplicity by at
    /// least mult(β) − 1.
    LinearIncrement {
        base: RootVector,
        direction: i64,
        #[serde(serialize_with = "ser_bigint")]
        beta_mult: BigInt,
        samples: Vec<CertSample>,
    },
}

/// Multiplicity of one window position.
#[derive(Debug, Clone, Serialize)]
pub struct DimEntry {
    pub n: i64,
    /// mult(α+nβ); 0 marks a non-root; the lattice origin reports the
    /// sentinel 2·rank(indices) − rank(matrix) and sets `origin`.
    #[serde(serialize_with = "ser_bigint")]
    pub mult: BigInt,
    pub origin: bool,
}

/// How far the member run through 0 extends, probed against the whole table
/// (not just the reporting window).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RunFacts {
    /// Largest n ≥ 0 confirmed to be a member.
    pub last_plus: i64,
    /// Whether α+(last_plus+1)β was decided to be a non-root (vs. the table
    /// bound cutting the probe short).
    pub closed_plus: bool,
    /// Smallest n ≤ 0 confirmed to be a member.
    pub last_minus: i64,
    pub closed_minus: bool,
}

impl RunFacts {
    /// Member count when both sides are closed.
    pub fn size(&self) -> Option<i64> {
        (self.closed_plus && self.closed_minus).then(|| self.last_plus - self.last_minus + 1)
    }

    pub fn is_trivial(&self) -> Option<bool> {
        self.size().map(|s| s == 1)
    }
}

/// A root string report: window data, member-run facts, and (once filled by
/// [`classify`] / [`growth_certificates`]) the classification, growth class,
/// and certificates.
#[derive(Debug, Clone, Serialize)]
pub struct RootString {
    pub alpha: RootVector,
    pub beta: RootVector,
    /// Window actually enumerated (after clipping to the table's height).
    pub window: (i64, i64),
    pub requested_window: (i64, i64),
    /// True when the requested window exceeded the table's height bound.
    pub clipped: bool,
    pub dims: Vec<DimEntry>,
    pub run: RunFacts,
    pub classification: Option<Classification>,
    pub growth: Option<GrowthClass>,
    pub certificates: Vec<Certificate>,
}

/// The multiplicity reported for the lattice origin inside a string: the
/// dimension of the degree-zero (diagonal) subalgebra, 2n − rank(A).
pub fn origin_sentinel(a: &CartanMatrix) -> BigInt {
    BigInt::from(2 * a.n() as i64 - a.rank() as i64)
}

/// Membership test against the table: `Some(mult)` for roots and the origin
/// (with its sentinel), `None` for decided non-roots, error above the bound.
fn member_mult(table: &MultiplicityTable, v: &RootVector, sentinel: &BigInt) -> Result<Option<BigInt>> {
    if v.is_zero() {
        return Ok(Some(sentinel.clone()));
    }
    let m = table.mult(v)?;
    Ok((!m.is_zero()).then_some(m))
}

fn in_table(table: &MultiplicityTable, v: &RootVector) -> bool {
    v.height().abs() <= table.max_height()
}

/// Walks n = 0, ±1, ±2, … from α along β while members persist, stopping at
/// a decided non-root (closed) or the table's height bound (open).
fn probe_run(
    table: &MultiplicityTable,
    alpha: &RootVector,
    beta: &RootVector,
    sentinel: &BigInt,
) -> Result<RunFacts> {
    let mut facts = RunFacts {
        last_plus: 0,
        closed_plus: false,
        last_minus: 0,
        closed_minus: false,
    };
    for dir in [1i64, -1] {
        let mut n = 0i64;
        loop {
            let next = alpha.checked_add(&beta.scaled(dir * (n + 1)))?;
            if !in_table(table, &next) {
                break;
            }
            match member_mult(table, &next, sentinel)? {
                Some(_) => n += 1,
                None => {
                    if dir == 1 {
                        facts.closed_plus = true;
                    } else {
                        facts.closed_minus = true;
                    }
                    break;
                }
            }
        }
        if dir == 1 {
            facts.last_plus = n;
        } else {
            facts.last_minus = -n;
        }
    }
    Ok(facts)
}

/// Enumerates the string's window data (multiplicities only; classification
/// is a separate step). The base must be a root or the origin, the
/// direction a root whose height the table covers; the window must contain
/// 0 and is clipped (and flagged) where α+nβ leaves the table's range.
pub fn extract(
    table: &MultiplicityTable,
    alpha: &RootVector,
    beta: &RootVector,
    window: (i64, i64),
) -> Result<RootString> {
    let n = table.matrix().n();
    if alpha.dim() != n || beta.dim() != n {
        return Err(Error::DimensionMismatch(alpha.dim(), beta.dim()));
    }
    if window.0 > 0 || window.1 < 0 {
        return Err(Error::PreconditionViolated(format!(
            "window [{}, {}] must contain 0",
            window.0, window.1
        )));
    }
    if beta.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !table.is_root(beta)? {
        return Err(Error::NotARoot(beta.coeffs().to_vec()));
    }
    if !alpha.is_zero() && !table.is_root(alpha)? {
        return Err(Error::NotARoot(alpha.coeffs().to_vec()));
    }
    let sentinel = origin_sentinel(table.matrix());

    let mut dims = Vec::new();
    let (mut w_lo, mut w_hi) = (None, None);
    for i in window.0..=window.1 {
        let v = alpha.checked_add(&beta.scaled(i))?;
        if !in_table(table, &v) {
            continue;
        }
        w_lo.get_or_insert(i);
        w_hi = Some(i);
        let (mult, origin) = match member_mult(table, &v, &sentinel)? {
            Some(m) => (m, v.is_zero()),
            None => (BigInt::zero(), false),
        };
        dims.push(DimEntry { n: i, mult, origin });
    }
    // 0 is always enumerable: |height(α)| is within the bound (checked via
    // the root lookups above).
    let enumerated = (w_lo.expect("window contains 0"), w_hi.expect("window contains 0"));
    let run = probe_run(table, alpha, beta, &sentinel)?;
    Ok(RootString {
        alpha: alpha.clone(),
        beta: beta.clone(),
        window: enumerated,
        requested_window: window,
        clipped: enumerated != window,
        dims,
        run,
        classification: None,
        growth: None,
        certificates: Vec::new(),
    })
}

fn engine_contradiction(point: &RootVector, claim: &str, saw: String) -> Error {
    Error::CertificateViolated {
        point: point.to_string(),
        bound: claim.to_string(),
        actual: saw,
    }
}

/// True when α and β span a line (all 2×2 minors vanish); the origin is
/// collinear with everything.
fn collinear(alpha: &RootVector, beta: &RootVector) -> bool {
    let (a, b) = (alpha.coeffs(), beta.coeffs());
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            if a[i] * b[j] != a[j] * b[i] {
                return false;
            }
        }
    }
    true
}

/// Requires the ±1 neighbors to be decided so that |R| = 1 vs. > 1 is a
/// fact, not a guess.
fn require_second_member_decided(s: &RootString, table: &MultiplicityTable) -> Result<()> {
    let undecided = s.run.last_plus == 0
        && s.run.last_minus == 0
        && (!s.run.closed_plus || !s.run.closed_minus);
    if undecided {
        let needed = s.alpha.height().abs() + s.beta.height().abs();
        return Err(Error::HeightBoundExceeded {
            needed,
            bound: table.max_height(),
        });
    }
    Ok(())
}

/// Fills `classification` and `growth` on an extracted string. The decision
/// is driven by the direction's norm and the base's pairing, with window
/// and probe data used only for the finite facts they can actually decide.
pub fn classify(table: &MultiplicityTable, s: &mut RootString) -> Result<()> {
    let gram = table.gram();
    let beta_norm = gram.norm(&s.beta)?;
    let pairing = gram.form(&s.alpha, &s.beta)?;
    let run = s.run;

    // Trivial (iff |R| = 1) takes precedence over everything.
    if run.is_trivial() == Some(true) {
        let base_mult = if s.alpha.is_zero() {
            // cannot happen: 0±β = ∓β are always roots
            return Err(engine_contradiction(
                &s.beta,
                "the string through the origin contains ±direction",
                "probe found neither".into(),
            ));
        } else {
            table.mult(&s.alpha)?
        };
        s.growth = Some(if base_mult.is_one() {
            GrowthClass::MultiplicityOne
        } else {
            GrowthClass::Bounded
        });
        s.classification = Some(Classification {
            tag: StringClass::Trivial,
            evidence: format!(
                "neither {}±{} is a root: the base point is the only member",
                s.alpha, s.beta
            ),
        });
        return Ok(());
    }

    if beta_norm > 0 {
        // Real direction: the adjoint action of the direction's sl2 is
        // integrable, so the string is finite and unbroken with endpoints
        // −p ≤ 0 ≤ q satisfying p − q = ⟨α, β∨⟩ (weight symmetry). One
        // probed endpoint therefore determines the other exactly, even when
        // the far endpoint lies beyond the table.
        if 2 * pairing % beta_norm != 0 {
            return Err(engine_contradiction(
                &s.alpha,
                "the coroot pairing 2(α,β)/(β,β) of a real direction is an integer",
                format!("2·{pairing}/{beta_norm}"),
            ));
        }
        let coroot_pairing = 2 * pairing / beta_norm;
        let (p, q, derived) = match (run.closed_minus, run.closed_plus) {
            (true, true) => (-run.last_minus, run.last_plus, None),
            (true, false) => {
                let p = -run.last_minus;
                (p, p - coroot_pairing, Some('+'))
            }
            (false, true) => {
                let q = run.last_plus;
                (q + coroot_pairing, q, Some('-'))
            }
            (false, false) => {
                return Err(Error::HeightBoundExceeded {
                    needed: s.alpha.height().abs()
                        + s.beta.height().abs()
                            * (run.last_plus.abs().max(run.last_minus.abs()) + 2),
                    bound: table.max_height(),
                });
            }
        };
        if p - q != coroot_pairing || q < run.last_plus || -p > run.last_minus {
            return Err(engine_contradiction(
                &s.alpha,
                &format!(
                    "real-direction endpoints −p ≤ 0 ≤ q with p − q = ⟨α,β∨⟩ = {coroot_pairing} consistent with probed members [{}, {}]",
                    run.last_minus, run.last_plus
                ),
                format!("p = {p}, q = {q}"),
            ));
        }
        let size = p + q + 1;
        let mut evidence = format!(
            "direction has norm {beta_norm} > 0 (real root): the string is finite, members n ∈ [{}, {q}] ({size} of them)",
            -p
        );
        match derived {
            Some(side) => evidence.push_str(&format!(
                "; the {side} endpoint lies beyond the table and is derived from the probed one by the weight symmetry p − q = ⟨α,β∨⟩ = {coroot_pairing}"
            )),
            None => {
                if !collinear(&s.alpha, &s.beta) {
                    // Independent cross-check: |R| = |2(γ,β)/(β,β)| + 1 at
                    // either endpoint γ.
                    let endpoint = s.alpha.checked_add(&s.beta.scaled(q))?;
                    let num = 2 * gram.form(&endpoint, &s.beta)?;
                    let expected = (num / beta_norm).abs() + 1;
                    if expected != size {
                        return Err(engine_contradiction(
                            &endpoint,
                            &format!("endpoint length formula predicts {expected} members"),
                            format!("enumeration found {size}"),
                        ));
                    }
                    evidence.push_str(&format!(
                        "; endpoint formula |2(γ,β)/(β,β)|+1 = {expected} matches"
                    ));
                }
            }
        }
        // Growth: multiplicity one needs every member seen; with a derived
        // far endpoint some members are beyond the table, so only the
        // always-true bounded claim is made.
        let mut all_one = derived.is_none();
        for i in run.last_minus..=run.last_plus {
            let v = s.alpha.checked_add(&s.beta.scaled(i))?;
            if !v.is_zero() && !table.mult(&v)?.is_one() {
                all_one = false;
            }
        }
        s.growth = Some(if all_one {
            GrowthClass::MultiplicityOne
        } else {
            GrowthClass::Bounded
        });
        s.classification = Some(Classification {
            tag: StringClass::Finite,
            evidence,
        });
        return Ok(());
    }

    require_second_member_decided(s, table)?;

    if beta_norm < 0 {
        // Non-isotropic imaginary direction: infinite in ≥ 1 direction.
        if run.closed_plus && run.closed_minus {
            return Err(engine_contradiction(
                &s.alpha,
                "a nontrivial string along a negative-norm root cannot have two endpoints",
                format!("members only in [{}, {}]", run.last_minus, run.last_plus),
            ));
        }
        let sentinel = origin_sentinel(table.matrix());
        let mut plus = if run.closed_plus {
            DirectionStatus::Endpoint { at: run.last_plus }
        } else {
            // The topmost probed member carries the minimal pairing; a
            // negative value locks the +direction open forever.
            let top = s.alpha.checked_add(&s.beta.scaled(run.last_plus))?;
            let f = gram.form(&top, &s.beta)?;
            if f < 0 {
                DirectionStatus::Certified
            } else if f == 0 {
                // One more member (if the table can see it) has pairing
                // f + norm < 0.
                let next = s.alpha.checked_add(&s.beta.scaled(run.last_plus + 1))?;
                if in_table(table, &next) && member_mult(table, &next, &sentinel)?.is_some() {
                    DirectionStatus::Certified
                } else {
                    DirectionStatus::UnknownAtBound
                }
            } else {
                DirectionStatus::UnknownAtBound
            }
        };
        let mut minus = if run.closed_minus {
            DirectionStatus::Endpoint { at: run.last_minus }
        } else {
            let bottom = s.alpha.checked_add(&s.beta.scaled(run.last_minus))?;
            let f = gram.form(&bottom, &s.beta)?;
            if f > 0 {
                DirectionStatus::Certified
            } else if f == 0 {
                let next = s.alpha.checked_add(&s.beta.scaled(run.last_minus - 1))?;
                if in_table(table, &next) && member_mult(table, &next, &sentinel)?.is_some() {
                    DirectionStatus::Certified
                } else {
                    DirectionStatus::UnknownAtBound
                }
            } else {
                DirectionStatus::UnknownAtBound
            }
        };
        // At least one direction is infinite; an endpoint on one side forces
        // the other side open.
        if matches!(plus, DirectionStatus::Endpoint { .. })
            && minus == DirectionStatus::UnknownAtBound
        {
            minus = DirectionStatus::Certified;
        }
        if matches!(minus, DirectionStatus::Endpoint { .. })
            && plus == DirectionStatus::UnknownAtBound
        {
            plus = DirectionStatus::Certified;
        }
        let evidence = format!(
            "direction has norm {beta_norm} < 0: a nontrivial string is infinite in at least one direction (+: {plus:?}, −: {minus:?})"
        );
        s.classification = Some(Classification {
            tag: StringClass::InfiniteAtLeastOneDirection { plus, minus },
            evidence,
        });
        s.growth = Some(GrowthClass::ExponentialLB);
        return Ok(());
    }

    // Isotropic direction.
    if pairing == 0 {
        if run.closed_plus || run.closed_minus {
            return Err(engine_contradiction(
                &s.alpha,
                "a nontrivial string along an isotropic root with zero pairing is bi-infinite",
                format!(
                    "probe closed at [{}, {}]",
                    run.last_minus, run.last_plus
                ),
            ));
        }
        let alpha_real = !s.alpha.is_zero() && gram.norm(&s.alpha)? > 0;
        s.growth = Some(if alpha_real {
            GrowthClass::MultiplicityOne
        } else {
            GrowthClass::Bounded
        });
        s.classification = Some(Classification {
            tag: StringClass::BiInfinite,
            evidence: format!(
                "direction is isotropic and (base, direction) = 0: bi-infinite with bounded multiplicities{}",
                if alpha_real { "; base is real, so every member is real with multiplicity 1" } else { "" }
            ),
        });
        return Ok(());
    }

    // Isotropic, nonzero pairing: semi-infinite toward the negative-pairing
    // side.
    let toward_plus = pairing < 0;
    let (open_ok, finite_closed) = if toward_plus {
        (!run.closed_plus, run.closed_minus)
    } else {
        (!run.closed_minus, run.closed_plus)
    };
    if !open_ok {
        return Err(engine_contradiction(
            &s.alpha,
            "the negative-pairing side of an isotropic-direction string is infinite",
            format!("probe closed at [{}, {}]", run.last_minus, run.last_plus),
        ));
    }
    let side = if toward_plus { "+" } else { "−" };
    s.classification = Some(Classification {
        tag: if toward_plus {
            StringClass::SemiInfinitePlus
        } else {
            StringClass::SemiInfiniteMinus
        },
        evidence: format!(
            "direction is isotropic and (base, direction) = {pairing} ≠ 0: semi-infinite toward {side}direction{}",
            if finite_closed {
                format!(
                    "; opposite side ends at n = {}",
                    if toward_plus { run.last_minus } else { run.last_plus }
                )
            } else {
                "; opposite side undecided within the table bound".to_string()
            }
        ),
    });
    s.growth = Some(GrowthClass::SuperPolynomialLB);
    Ok(())
}

/// Extracts and classifies in one call with the default window.
pub fn analyze(
    table: &MultiplicityTable,
    alpha: &RootVector,
    beta: &RootVector,
) -> Result<RootString> {
    let mut s = extract(table, alpha, beta, DEFAULT_WINDOW)?;
    classify(table, &mut s)?;
    Ok(s)
}

/// Decides whether the base pairs to zero with an isotropic direction in the
/// fundamental cone — equivalently (and this equivalence is re-checked
/// exactly), whether supp(base) ⊆ supp(direction).
pub fn support_criterion(
    a: &CartanMatrix,
    gram: &GramTable,
    table: &MultiplicityTable,
    alpha: &RootVector,
    beta: &RootVector,
) -> Result<bool> {
    use crate::lattice::in_fundamental_cone;
    if !in_fundamental_cone(a, beta) || gram.norm(beta)? != 0 {
        return Err(Error::PreconditionViolated(format!(
            "direction {beta} must be an isotropic vector of the fundamental cone"
        )));
    }
    if alpha.sign() != SignClass::Positive || !table.is_root(alpha)? {
        return Err(Error::PreconditionViolated(format!(
            "base {alpha} must be a positive root"
        )));
    }
    let plus = alpha.checked_add(beta)?;
    let minus = alpha.checked_sub(beta)?;
    let nontrivial = (in_table(table, &plus) && !table.mult(&plus)?.is_zero())
        || (in_table(table, &minus) && !minus.is_zero() && !table.mult(&minus)?.is_zero());
    if !nontrivial {
        return Err(Error::PreconditionViolated(format!(
            "the string through {alpha} along {beta} is trivial"
        )));
    }
    let zero_pairing = gram.form(alpha, beta)? == 0;
    let supp_contained = alpha
        .support()
        .iter()
        .all(|i| beta.support().contains(i));
    if zero_pairing != supp_contained {
        return Err(engine_contradiction(
            alpha,
            "zero pairing must coincide with support containment",
            format!("pairing-zero = {zero_pairing}, supp ⊆ supp = {supp_contained}"),
        ));
    }
    Ok(zero_pairing)
}

/// Checked lookup that treats a theorem-guaranteed member as a hard error
/// when absent.
fn expect_member(
    table: &MultiplicityTable,
    v: &RootVector,
    claim: &str,
) -> Result<BigInt> {
    let m = table.mult(v)?;
    if m.is_zero() {
        return Err(engine_contradiction(
            v,
            claim,
            "table reports multiplicity 0".into(),
        ));
    }
    Ok(m)
}

fn push_checked_sample(
    samples: &mut Vec<CertSample>,
    point: &RootVector,
    n: i64,
    lower: BigInt,
    actual: BigInt,
) -> Result<()> {
    if lower > actual {
        return Err(Error::CertificateViolated {
            point: point.to_string(),
            bound: lower.to_string(),
            actual: actual.to_string(),
        });
    }
    samples.push(CertSample { n, lower, actual });
    Ok(())
}

fn witt_certificate(
    table: &MultiplicityTable,
    beta: &RootVector,
) -> Result<Option<Certificate>> {
    let h = table.max_height();
    let step = beta.height().abs();
    // Scan only the multiples the table actually holds; a generator multiple
    // is guaranteed among the first five, but a short table may not reach it.
    let s_max = 5.min(h / step.max(1));
    let mut chosen = None;
    for s in 1..=s_max {
        let m = table.mult(&beta.scaled(s))?;
        if m >= BigInt::from(2) {
            chosen = Some((s, m));
            break;
        }
    }
    let Some((s, m)) = chosen else {
        if s_max >= 5 {
            return Err(engine_contradiction(
                beta,
                "some multiple s·direction with s ≤ 5 has multiplicity ≥ 2",
                "all five multiples have multiplicity ≤ 1".into(),
            ));
        }
        return Ok(None); // table too short to locate a generator multiple
    };
    let mut samples = Vec::new();
    let mut n = 1i64;
    while n * s * step <= h {
        let v = beta.scaled(n * s);
        let actual = expect_member(table, &v, "every multiple of an imaginary ray is a root")?;
        let lower = witt_dim(&m, n as u64)?;
        push_checked_sample(&mut samples, &v, n, lower, actual)?;
        n += 1;
    }
    Ok(Some(Certificate::WittExponential {
        s,
        generators: m,
        samples,
    }))
}

fn linear_increment_certificate(
    table: &MultiplicityTable,
    s: &RootString,
) -> Result<Option<Certificate>> {
    let gram = table.gram();
    let beta_mult = table.mult(&s.beta)?;
    // Pick a member pairing negatively with ±β so that every +step stays in
    // the root system; prefer the earliest such member to maximize samples.
    let mut base: Option<(RootVector, i64)> = None;
    for i in s.run.last_minus..=s.run.last_plus {
        let v = s.alpha.checked_add(&s.beta.scaled(i))?;
        if v.is_zero() || v == s.beta {
            continue;
        }
        if gram.form(&v, &s.beta)? < 0 {
            base = Some((v, 1));
            break;
        }
    }
    if base.is_none() {
        for i in (s.run.last_minus..=s.run.last_plus).rev() {
            let v = s.alpha.checked_add(&s.beta.scaled(i))?;
            if v.is_zero() || v == s.beta {
                continue;
            }
            if gram.form(&v, &s.beta)? > 0 {
                base = Some((v, -1));
                break;
            }
        }
    }
    let Some((base, direction)) = base else {
        return Ok(None);
    };
    let base_mult = expect_member(table, &base, "certificate base is a member")?;
    let increment = &beta_mult - BigInt::one();
    let mut samples = Vec::new();
    let mut k = 0i64;
    loop {
        let v = base.checked_add(&s.beta.scaled(direction * k))?;
        if !in_table(table, &v) {
            break;
        }
        if v == s.beta {
            // the pair (β, β) is outside the bound's hypotheses; stop here
            break;
        }
        let actual = expect_member(
            table,
            &v,
            "walking the negative-pairing way from a member stays in the root system",
        )?;
        let lower = &base_mult + &increment * BigInt::from(k);
        push_checked_sample(&mut samples, &v, k, lower, actual)?;
        k += 1;
    }
    Ok(Some(Certificate::LinearIncrement {
        base,
        direction,
        beta_mult,
        samples,
    }))
}

fn partition_certificate(
    table: &MultiplicityTable,
    s: &RootString,
) -> Result<Option<Certificate>> {
    let toward_plus = matches!(
        s.classification.as_ref().map(|c| &c.tag),
        Some(StringClass::SemiInfinitePlus)
    );
    let (closed, bottom_idx) = if toward_plus {
        (s.run.closed_minus, s.run.last_minus)
    } else {
        (s.run.closed_plus, s.run.last_plus)
    };
    if !closed {
        // The finite side is guaranteed to terminate, but the table is too
        // short to have located its endpoint, so no bottom to anchor to.
        return Ok(None);
    }
    let step = if toward_plus { 1 } else { -1 };
    let bottom = s.alpha.checked_add(&s.beta.scaled(bottom_idx))?;
    let shift = bottom_idx.abs();
    let mut samples = Vec::new();
    let mut k = 0i64;
    loop {
        let v = bottom.checked_add(&s.beta.scaled(step * k))?;
        if !in_table(table, &v) {
            break;
        }
        let actual = if v.is_zero() {
            origin_sentinel(table.matrix())
        } else {
            expect_member(
                table,
                &v,
                "the infinite side of a semi-infinite string has no gaps",
            )?
        };
        let lower = partition(k as u64);
        push_checked_sample(&mut samples, &v, k, lower, actual)?;
        k += 1;
    }
    Ok(Some(Certificate::PartitionLB { shift, samples }))
}

fn periodicity_certificate(table: &MultiplicityTable, s: &RootString) -> Result<Certificate> {
    // Observed member multiplicities across the reporting window, origin
    // excluded (its sentinel is not a root multiplicity).
    let lo = s.run.last_minus.max(s.window.0);
    let hi = s.run.last_plus.min(s.window.1);
    let mut seq: Vec<(i64, Option<BigInt>)> = Vec::new();
    for n in lo..=hi {
        let v = s.alpha.checked_add(&s.beta.scaled(n))?;
        if v.is_zero() {
            seq.push((n, None));
        } else {
            seq.push((n, Some(expect_member(table, &v, "member of a bi-infinite string")?)));
        }
    }
    let mut values: Vec<BigInt> = Vec::new();
    for (_, m) in &seq {
        if let Some(m) = m {
            if !values.contains(m) {
                values.push(m.clone());
            }
        }
    }
    values.sort();
    if values.len() > 2 {
        return Err(engine_contradiction(
            &s.alpha,
            "off-origin multiplicities along a zero-pairing isotropic string take ≤ 2 values",
            format!("saw {} distinct values", values.len()),
        ));
    }
    let mut period = None;
    'outer: for p in 1..=3i64 {
        for ((n1, m1), (_, m2)) in seq.iter().zip(seq.iter().skip(p as usize)) {
            debug_assert_eq!(n1 + p, seq[(n1 - lo) as usize + p as usize].0);
            if let (Some(a), Some(b)) = (m1, m2) {
                if a != b {
                    continue 'outer;
                }
            }
        }
        period = Some(p);
        break;
    }
    let Some(period) = period else {
        return Err(engine_contradiction(
            &s.alpha,
            "multiplicities along a zero-pairing isotropic string repeat with period ≤ 3",
            "no period ≤ 3 fits the window".into(),
        ));
    };
    let samples = seq
        .iter()
        .filter_map(|(n, m)| {
            m.as_ref().map(|m| CertSample {
                n: *n,
                lower: m.clone(),
                actual: m.clone(),
            })
        })
        .collect();
    Ok(Certificate::AffinePeriodicity {
        values,
        period,
        samples,
    })
}

/// Attaches the growth certificates appropriate to the string's class,
/// checking every emitted lower bound against the exact table.
pub fn growth_certificates(table: &MultiplicityTable, s: &mut RootString) -> Result<()> {
    let Some(growth) = s.growth else {
        return Err(Error::PreconditionViolated(
            "string must be classified before certificates are attached".into(),
        ));
    };
    let certs = match growth {
        GrowthClass::ExponentialLB => {
            let mut certs = Vec::new();
            if let Some(w) = witt_certificate(table, &s.beta)? {
                certs.push(w);
            }
            if let Some(li) = linear_increment_certificate(table, s)? {
                certs.push(li);
            }
            certs
        }
        GrowthClass::SuperPolynomialLB => partition_certificate(table, s)?.into_iter().collect(),
        GrowthClass::MultiplicityOne | GrowthClass::Bounded => {
            match s.classification.as_ref().map(|c| &c.tag) {
                Some(StringClass::BiInfinite) => vec![periodicity_certificate(table, s)?],
                _ => Vec::new(), // finite and trivial strings carry no growth claim
            }
        }
    };
    s.certificates = certs;
    Ok(())
}

/// Monotonicity and increment analysis along a string in the direction of a
/// non-isotropic imaginary root.
#[derive(Debug, Clone, Serialize)]
pub struct MonotonicityReport {
    pub base: RootVector,
    /// +1: multiplicities increase with +direction steps from the base;
    /// −1: with −direction steps.
    pub direction: i64,
    #[serde(serialize_with = "ser_bigint")]
    pub beta_mult: BigInt,
    /// Strict increase is a theorem only when mult(direction) > 1.
    pub strict_expected: bool,
    /// (k, mult(base + k·direction·β)) for k = 0, 1, … within the table.
    pub samples: Vec<CertSample>,
    pub violations: Vec<String>,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs the monotonicity/increment checks from a base member of the string
/// through γ along β (β non-isotropic imaginary, string nontrivial). The
/// report's violation list is empty exactly when every sampled step obeys
/// both the increment bound (≥ mult(β) − 1 per step) and, when mult(β) > 1,
/// strict increase.
pub fn monotonicity_report(
    table: &MultiplicityTable,
    gamma: &RootVector,
    beta: &RootVector,
) -> Result<MonotonicityReport> {
    let gram = table.gram();
    if beta.is_zero() || !table.is_root(beta)? {
        return Err(Error::NotARoot(beta.coeffs().to_vec()));
    }
    if gram.norm(beta)? >= 0 {
        return Err(Error::PreconditionViolated(format!(
            "direction {beta} must be a non-isotropic imaginary root"
        )));
    }
    if !gamma.is_zero() && !table.is_root(gamma)? {
        return Err(Error::NotARoot(gamma.coeffs().to_vec()));
    }
    // Find a base member with nonzero pairing; γ itself, else a neighbor
    // (at most one member can pair to zero).
    let mut base = None;
    for cand_idx in [0i64, 1, -1, 2, -2] {
        let v = gamma.checked_add(&beta.scaled(cand_idx))?;
        if v.is_zero() || v == *beta || !in_table(table, &v) {
            continue;
        }
        if table.mult(&v)?.is_zero() {
            continue;
        }
        if gram.form(&v, beta)? != 0 {
            base = Some(v);
            break;
        }
    }
    let Some(base) = base else {
        return Err(Error::PreconditionViolated(format!(
            "no member near {gamma} pairs nonzero with {beta}: the string is trivial or out of range"
        )));
    };
    let direction = if gram.form(&base, beta)? < 0 { 1 } else { -1 };
    let beta_mult = table.mult(beta)?;
    let strict_expected = beta_mult > BigInt::one();
    let increment = &beta_mult - BigInt::one();
    let base_mult = table.mult(&base)?;

    let mut samples = Vec::new();
    let mut violations = Vec::new();
    let mut prev: Option<BigInt> = None;
    let mut k = 0i64;
    loop {
        let v = base.checked_add(&beta.scaled(direction * k))?;
        if !in_table(table, &v) || v == *beta {
            break;
        }
        let actual = table.mult(&v)?;
        if actual.is_zero() {
            violations.push(format!(
                "{v} (step {k}) is not a root although the chain from {base} must stay in the root system"
            ));
            break;
        }
        let lower = &base_mult + &increment * BigInt::from(k);
        if actual < lower {
            violations.push(format!(
                "mult({v}) = {actual} is below the increment bound {lower} at step {k}"
            ));
        }
        if let Some(p) = &prev {
            if strict_expected && &actual <= p {
                violations.push(format!(
                    "mult({v}) = {actual} does not strictly exceed the previous member's {p} at step {k}"
                ));
            }
            if actual < *p {
                violations.push(format!(
                    "mult({v}) = {actual} decreased from {p} at step {k}"
                ));
            }
        }
        samples.push(CertSample {
            n: k,
            lower,
            actual: actual.clone(),
        });
        prev = Some(actual);
        k += 1;
    }
    Ok(MonotonicityReport {
        base,
        direction,
        beta_mult,
        strict_expected,
        samples,
        violations,
    })
}
