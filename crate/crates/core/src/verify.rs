//! Exhaustive checks of the determinant identities and XOR-count bounds.
//!
//! Each claim has its own entry point returning a [`VerifyReport`]. Cases are
//! enumerated in a fixed canonical order and violations are reported in that
//! order, so reports are identical across runs and worker counts (apart from
//! `elapsed_ms`).
//!
//! Every violation carries enough data (polynomials, indices, the full
//! product) to be replayed from its JSON form alone.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{check_cap, check_min, Result};
use crate::exec::{self, Exec};
use crate::gf2mat::{Gf2Mat, PolyMat};
use crate::gf2poly::Gf2Poly;
use crate::xorform::{self, classify_invertible, ProductSpace, XorProduct};

/// Largest `n` for the symbolic identity checks.
pub const IDENTITY_DIM_CAP: usize = 12;
/// Largest `n` for the product-space checks.
pub const SEARCH_DIM_CAP: usize = 8;
/// Largest degree for the power-weight checks.
pub const POWER_DEGREE_CAP: usize = 10;
/// Largest exponent for the power-weight checks.
pub const POWER_EXPONENT_CAP: usize = 7;

const KEYED_ON_MIN_POLY: &str = "XOR-counts are keyed on the minimal polynomial; elements sharing a \
     minimal polynomial (Galois conjugates) are covered by a single entry";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub exec: Exec,
    /// Stop at the first violation in canonical order.
    pub fail_fast: bool,
}

/// A counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `det((C_{x^n+1} + λI)^{(i,j)})` differs from its closed form.
    MinorDeterminant { n: usize, i: usize, j: usize, expected: Gf2Poly, actual: Gf2Poly },
    /// A second minor of `C_{x^n+1} + λI` that is neither zero nor a monomial.
    SecondMinor { n: usize, i: usize, j: usize, k: usize, l: usize, det: Gf2Poly },
    /// `χ(C_{x^n+1}(I+E_{i,j}))` differs from its closed form.
    CharPoly { n: usize, i: usize, j: usize, expected: Gf2Poly, actual: Gf2Poly },
    /// A one-factor product classifying to an element whose minimal
    /// polynomial is not a trinomial of degree `n`.
    NotTrinomial { product: XorProduct, f: Gf2Poly, d: usize, char_poly: Gf2Poly },
    /// An irreducible trinomial of degree `n` reached by no one-factor product.
    MissingTrinomial { n: usize, f: Gf2Poly },
    /// A two-factor product classifying to an element whose minimal
    /// polynomial has weight above 5.
    WeightBound { product: XorProduct, f: Gf2Poly, d: usize, char_poly: Gf2Poly },
    /// A two-factor product with at least three blocks classifying to a
    /// non-trivial element.
    BlockCount { product: XorProduct, f: Gf2Poly, d: usize },
    /// `weight(f^d) < 5` for an irreducible `f` of weight at least 5.
    PowerWeight { f: Gf2Poly, d: usize, power: Gf2Poly },
    /// `weight(f^2) ≠ weight(f)`.
    SquareWeight { f: Gf2Poly, square: Gf2Poly },
    /// An irreducible of weight at most 5 whose XOR-count exceeds `t_max`.
    ConverseCounterexample { f: Gf2Poly, weight: usize, t_max: usize },
}

/// A cheapest product found for a minimal polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub f: Gf2Poly,
    pub t: usize,
    pub product: XorProduct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub claim_id: String,
    pub n_range: Vec<usize>,
    pub cases_checked: u64,
    pub pass: bool,
    pub violations: Vec<Violation>,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerifyReport {
    fn new(claim_id: &str, n_range: Vec<usize>) -> Self {
        Self {
            claim_id: claim_id.to_string(),
            n_range,
            cases_checked: 0,
            pass: true,
            violations: Vec::new(),
            elapsed_ms: 0,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn finish(mut self, start: Instant) -> Self {
        self.pass = self.violations.is_empty();
        self.elapsed_ms = start.elapsed().as_millis() as u64;
        self
    }

    /// Concatenate reports for the same claim over disjoint ranges.
    pub fn merge(mut self, other: VerifyReport) -> VerifyReport {
        self.n_range.extend(other.n_range);
        self.cases_checked += other.cases_checked;
        self.pass &= other.pass;
        self.violations.extend(other.violations);
        self.elapsed_ms += other.elapsed_ms;
        self.witnesses.extend(other.witnesses);
        for note in other.notes {
            if !self.notes.contains(&note) {
                self.notes.push(note);
            }
        }
        self
    }

    fn should_stop(&self, opts: Options) -> bool {
        opts.fail_fast && !self.violations.is_empty()
    }
}

/// Run `check` over `0..len` and return (cases checked, violations).
fn run_cases<F>(len: usize, opts: Options, check: F) -> (u64, Vec<Violation>)
where
    F: Fn(usize) -> Option<Violation> + Sync + Send,
{
    if opts.fail_fast {
        match exec::find_first(opts.exec, len, check) {
            Some((idx, v)) => (idx as u64 + 1, vec![v]),
            None => (len as u64, Vec::new()),
        }
    } else {
        (len as u64, exec::filter_map(opts.exec, len, check))
    }
}

fn shift_plus_lambda(n: usize) -> PolyMat {
    Gf2Mat::companion(&Gf2Poly::x_n_plus_one(n))
        .expect("n >= 1")
        .plus_lambda()
}

/// Closed form of `det((C_{x^n+1} + λI)^{(i,j)})`.
pub fn shift_minor_closed_form(n: usize, i: usize, j: usize) -> Gf2Poly {
    if i > j {
        Gf2Poly::monomial(i - j - 1)
    } else {
        Gf2Poly::monomial(n + i - j - 1)
    }
}

/// Closed form of `χ(C_{x^n+1}(I+E_{i,j}))` for `i ≠ j`.
pub fn transvection_char_poly_closed_form(n: usize, i: usize, j: usize) -> Gf2Poly {
    let middle = if i > j { i - j } else { n + i - j };
    Gf2Poly::from_exponents(&[n, middle, 0])
}

fn check_identity_range(n_max: usize) -> Result<()> {
    check_min("n_max", n_max, 2)?;
    check_cap("n_max", n_max, IDENTITY_DIM_CAP)
}

fn check_search_range(n_max: usize) -> Result<()> {
    check_min("n_max", n_max, 2)?;
    check_cap("n_max", n_max, SEARCH_DIM_CAP)
}

/// First minors of `C_{x^n+1} + λI` against their closed form, all
/// `2 ≤ n ≤ n_max` and all `(i, j)`.
pub fn verify_shift_minors(n_max: usize, opts: Options) -> Result<VerifyReport> {
    check_identity_range(n_max)?;
    let start = Instant::now();
    let mut report = VerifyReport::new("eq1", (2..=n_max).collect());
    for n in 2..=n_max {
        let base = shift_plus_lambda(n);
        let (cases, violations) = run_cases(n * n, opts, |k| {
            let (i, j) = (k / n + 1, k % n + 1);
            let actual = base.minor_delete(i, j).expect("valid index").sym_det();
            let expected = shift_minor_closed_form(n, i, j);
            (actual != expected).then_some(Violation::MinorDeterminant { n, i, j, expected, actual })
        });
        report.cases_checked += cases;
        report.violations.extend(violations);
        if report.should_stop(opts) {
            break;
        }
    }
    Ok(report.finish(start))
}

/// Second minors `(C_{x^n+1} + λI)^{(i,j)(k,l)}` are zero or a monomial, for
/// all `3 ≤ n ≤ n_max` and all index quadruples.
pub fn verify_second_minors(n_max: usize, opts: Options) -> Result<VerifyReport> {
    check_identity_range(n_max)?;
    let start = Instant::now();
    let mut report = VerifyReport::new("minors", (3..=n_max).collect());
    for n in 3..=n_max {
        let base = shift_plus_lambda(n);
        let m = n - 1;
        let (cases, violations) = run_cases(n * n * m * m, opts, |idx| {
            let (i, j) = (idx / (n * m * m) + 1, idx / (m * m) % n + 1);
            let (k, l) = (idx / m % m + 1, idx % m + 1);
            let det = base
                .minor_delete(i, j)
                .and_then(|a| a.minor_delete(k, l))
                .expect("valid index")
                .sym_det();
            (det.weight() > 1).then_some(Violation::SecondMinor { n, i, j, k, l, det })
        });
        report.cases_checked += cases;
        report.violations.extend(violations);
        if report.should_stop(opts) {
            break;
        }
    }
    Ok(report.finish(start))
}

/// `χ(C_{x^n+1}(I+E_{i,j}))` against [`transvection_char_poly_closed_form`].
pub fn verify_transvection_char_polys(n_max: usize, opts: Options) -> Result<VerifyReport> {
    verify_transvection_char_polys_against(n_max, opts, transvection_char_poly_closed_form)
}

/// [`verify_transvection_char_polys`] with a caller-supplied closed form, so the harness itself
/// can be tested against a deliberately wrong comparator.
pub fn verify_transvection_char_polys_against<F>(n_max: usize, opts: Options, closed_form: F) -> Result<VerifyReport>
where
    F: Fn(usize, usize, usize) -> Gf2Poly + Sync + Send,
{
    check_identity_range(n_max)?;
    let start = Instant::now();
    let mut report = VerifyReport::new("eq2", (2..=n_max).collect());
    for n in 2..=n_max {
        let shift = Gf2Mat::companion(&Gf2Poly::x_n_plus_one(n))?;
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let (cases, violations) = run_cases(pairs.len(), opts, |k| {
            let (i, j) = pairs[k];
            let actual = shift.mul_transvection(i, j).expect("valid pair").char_poly();
            let expected = closed_form(n, i, j);
            (actual != expected).then_some(Violation::CharPoly { n, i, j, expected, actual })
        });
        report.cases_checked += cases;
        report.violations.extend(violations);
        if report.should_stop(opts) {
            break;
        }
    }
    Ok(report.finish(start))
}

/// One-factor products: the non-trivial minimal polynomials they reach are
/// exactly the irreducible trinomials of degree `n`, each with `d = 1`.
pub fn verify_one_factor(n_max: usize, opts: Options) -> Result<VerifyReport> {
    check_search_range(n_max)?;
    let start = Instant::now();
    let mut report = VerifyReport::new("thm1", (2..=n_max).collect());
    report.notes.push(KEYED_ON_MIN_POLY.to_string());
    for n in 2..=n_max {
        let space = ProductSpace::new(n, 1)?;
        let classes = xorform::classify_space(&space, opts.exec);
        report.cases_checked += space.len() as u64;
        for (f, (idx, class)) in &classes {
            if class.is_trivial() {
                continue;
            }
            let product = space.product(*idx);
            if class.d != 1 || f.weight() != 3 {
                report.violations.push(Violation::NotTrinomial {
                    char_poly: product.realize().char_poly(),
                    product,
                    f: f.clone(),
                    d: class.d,
                });
            } else {
                report.witnesses.push(Witness { f: f.clone(), t: 1, product });
            }
        }
        let trinomials: Vec<Gf2Poly> = Gf2Poly::enumerate_irreducibles(n, Some(3))?
            .into_iter()
            .filter(|f| f.weight() == 3)
            .collect();
        report.cases_checked += trinomials.len() as u64;
        for f in trinomials {
            if !classes.get(&f).is_some_and(|(_, c)| c.d == 1) {
                report.violations.push(Violation::MissingTrinomial { n, f });
            }
        }
        if report.should_stop(opts) {
            report.violations.truncate(1);
            break;
        }
    }
    Ok(report.finish(start))
}

/// Two-factor products: every non-trivial element they represent has a
/// minimal polynomial of weight at most 5.
///
/// Each offending minimal polynomial is reported once, with its smallest
/// product.
pub fn verify_two_factor_weight(n_max: usize, opts: Options) -> Result<VerifyReport> {
    check_search_range(n_max)?;
    let start = Instant::now();
    let mut report = VerifyReport::new("conjecture", (2..=n_max).collect());
    report.notes.push(KEYED_ON_MIN_POLY.to_string());
    for n in 2..=n_max {
        let space = ProductSpace::new(n, 2)?;
        let classes = xorform::classify_space(&space, opts.exec);
        report.cases_checked += space.len() as u64;
        for (f, (idx, class)) in classes {
            if class.is_trivial() {
                continue;
            }
            let product = space.product(idx);
            if f.weight() > 5 {
                report.violations.push(Violation::WeightBound {
                    char_poly: product.realize().char_poly(),
                    product,
                    f,
                    d: class.d,
                });
            } else {
                report.witnesses.push(Witness { f, t: 2, product });
            }
        }
        if report.should_stop(opts) {
            report.violations.truncate(1);
            break;
        }
    }
    Ok(report.finish(start))
}

/// Two-factor products over cycle types with three or more blocks never
/// represent a non-trivial element.
pub fn verify_two_factor_blocks(n_max: usize, opts: Options) -> Result<VerifyReport> {
    check_search_range(n_max)?;
    let start = Instant::now();
    let mut report = VerifyReport::new("lemma14", (2..=n_max).collect());
    for n in 2..=n_max {
        let space = ProductSpace::new(n, 2)?;
        let (cases, violations) = run_cases(space.len(), opts, |idx| {
            if space.partition_of(idx).num_blocks() < 3 {
                return None;
            }
            let class = classify_invertible(&space.matrix(idx))?;
            (!class.is_trivial()).then(|| Violation::BlockCount {
                product: space.product(idx),
                f: class.f,
                d: class.d,
            })
        });
        report.cases_checked += cases;
        report.violations.extend(violations);
        if report.should_stop(opts) {
            break;
        }
    }
    Ok(report.finish(start))
}

/// `weight(f^d) ≥ 5` for every irreducible `f` of weight at least 5 and
/// degree at most `deg_max`, and every `1 ≤ d ≤ d_max`.
pub fn verify_power_weight(deg_max: usize, d_max: usize, opts: Options) -> Result<VerifyReport> {
    check_min("deg_max", deg_max, 1)?;
    check_cap("deg_max", deg_max, POWER_DEGREE_CAP)?;
    check_min("d_max", d_max, 1)?;
    check_cap("d_max", d_max, POWER_EXPONENT_CAP)?;
    let start = Instant::now();
    let mut report = VerifyReport::new("prop11", (1..=deg_max).collect());
    let mut polys = Vec::new();
    for deg in 1..=deg_max {
        polys.extend(
            Gf2Poly::enumerate_irreducibles(deg, None)?
                .into_iter()
                .filter(|f| f.weight() >= 5),
        );
    }
    let (cases, violations) = run_cases(polys.len() * d_max, opts, |k| {
        let (f, d) = (&polys[k / d_max], k % d_max + 1);
        let power = f.pow(d);
        (power.weight() < 5).then(|| Violation::PowerWeight { f: f.clone(), d, power })
    });
    report.cases_checked = cases;
    report.violations = violations;
    Ok(report.finish(start))
}

/// `weight(f^2) = weight(f)` for every polynomial of degree at most `deg_max`.
pub fn verify_square_weight(deg_max: usize, opts: Options) -> Result<VerifyReport> {
    check_cap("deg_max", deg_max, crate::gf2poly::ENUMERATION_DEGREE_CAP)?;
    let start = Instant::now();
    let mut report = VerifyReport::new("square_weight", (0..=deg_max).collect());
    let (cases, violations) = run_cases(1 << (deg_max + 1), opts, |k| {
        let f = Gf2Poly::from_bits(k as u64);
        let square = f.pow(2);
        (square.weight() != f.weight()).then_some(Violation::SquareWeight { f, square })
    });
    report.cases_checked = cases;
    report.violations = violations;
    Ok(report.finish(start))
}

/// Irreducibles of degree `n` and weight at most 5 whose XOR-count exceeds
/// 2. Every entry is a counterexample to the converse of the weight bound;
/// the report's `pass` flag is set when at least one is found.
pub fn converse_scan(n: usize, opts: Options) -> Result<VerifyReport> {
    const T_MAX: usize = 2;
    check_min("n", n, 2)?;
    check_cap("n", n, SEARCH_DIM_CAP)?;
    let start = Instant::now();
    let mut report = VerifyReport::new("converse", vec![n]);
    report.notes.push(KEYED_ON_MIN_POLY.to_string());
    let table = xorform::scan_min_counts(n, T_MAX, opts.exec)?;
    let candidates = Gf2Poly::enumerate_irreducibles(n, Some(5))?;
    report.cases_checked = candidates.len() as u64;
    for f in candidates {
        match table.get(&f) {
            Some(entry) => report.witnesses.push(Witness {
                f,
                t: entry.t,
                product: entry.witness.clone(),
            }),
            None => report.violations.push(Violation::ConverseCounterexample {
                weight: f.weight(),
                f,
                t_max: T_MAX,
            }),
        }
    }
    let mut report = report.finish(start);
    report.pass = !report.violations.is_empty();
    Ok(report)
}

/// [`converse_scan`] merged over `2 ≤ n ≤ n_max`.
pub fn converse_scan_range(n_max: usize, opts: Options) -> Result<VerifyReport> {
    check_search_range(n_max)?;
    let mut merged = converse_scan(2, opts)?;
    for n in 3..=n_max {
        merged = merged.merge(converse_scan(n, opts)?);
    }
    merged.pass = !merged.violations.is_empty();
    Ok(merged)
}

/// A named claim, as selected on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    ShiftMinors,
    TransvectionCharPolys,
    SecondMinors,
    OneFactor,
    TwoFactorWeight,
    TwoFactorBlocks,
    PowerWeight,
    Converse,
}

impl Claim {
    pub const ALL: [Claim; 8] = [
        Claim::ShiftMinors,
        Claim::TransvectionCharPolys,
        Claim::SecondMinors,
        Claim::OneFactor,
        Claim::TwoFactorWeight,
        Claim::TwoFactorBlocks,
        Claim::PowerWeight,
        Claim::Converse,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::ShiftMinors => "eq1",
            Claim::TransvectionCharPolys => "eq2",
            Claim::SecondMinors => "minors",
            Claim::OneFactor => "thm1",
            Claim::TwoFactorWeight => "conjecture",
            Claim::TwoFactorBlocks => "lemma14",
            Claim::PowerWeight => "prop11",
            Claim::Converse => "converse",
        }
    }

    /// Largest accepted `n_max` (degree bound for `prop11`).
    pub fn cap(self) -> usize {
        match self {
            Claim::ShiftMinors | Claim::TransvectionCharPolys | Claim::SecondMinors => IDENTITY_DIM_CAP,
            Claim::PowerWeight => POWER_DEGREE_CAP,
            _ => SEARCH_DIM_CAP,
        }
    }

    /// `n_max` used when none is given.
    pub fn default_n_max(self) -> usize {
        match self {
            Claim::SecondMinors => 8,
            other => other.cap(),
        }
    }

    /// Run the claim. For `prop11`, `n_max` bounds the degree and both the
    /// odd-power and the square checks run.
    pub fn run(self, n_max: usize, opts: Options) -> Result<VerifyReport> {
        match self {
            Claim::ShiftMinors => verify_shift_minors(n_max, opts),
            Claim::TransvectionCharPolys => verify_transvection_char_polys(n_max, opts),
            Claim::SecondMinors => verify_second_minors(n_max, opts),
            Claim::OneFactor => verify_one_factor(n_max, opts),
            Claim::TwoFactorWeight => verify_two_factor_weight(n_max, opts),
            Claim::TwoFactorBlocks => verify_two_factor_blocks(n_max, opts),
            Claim::PowerWeight => {
                let powers = verify_power_weight(n_max, POWER_EXPONENT_CAP, opts)?;
                let squares = verify_square_weight(n_max, opts)?;
                let mut merged = powers.merge(squares);
                merged.n_range = (1..=n_max).collect();
                Ok(merged)
            }
            Claim::Converse => converse_scan_range(n_max, opts),
        }
    }
}

impl std::str::FromStr for Claim {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| format!("unknown claim {s:?}"))
    }
}
