//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use xorcount::synth::{emit_program, Equivalence};
use xorcount::verify::{self, Options, VerifyReport, Witness};
use xorcount::xorform::{element_check, xor_count_exact, ProductSpace};
use xorcount::{Exec, Gf2Mat, Gf2Poly};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn clean(report: &VerifyReport) -> Result<(), String> {
    ensure(report.violations.is_empty(), || {
        format!(
            "{} violations in {}, first: {}",
            report.violations.len(),
            report.claim_id,
            serde_json::to_string(&report.violations[0]).unwrap()
        )
    })
}

fn within(start: Instant, budget: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < budget, || format!("took {took:?}, budget {budget:?}"))?;
    Ok(took)
}

const PAR: Options = Options { exec: Exec::Parallel, fail_fast: false };
const SEQ: Options = Options { exec: Exec::Sequential, fail_fast: false };

fn identities() -> Outcome {
    let start = Instant::now();
    let minors = verify::verify_shift_minors(12, PAR).map_err(|e| e.to_string())?;
    let char_polys = verify::verify_transvection_char_polys(12, PAR).map_err(|e| e.to_string())?;
    let took = within(start, Duration::from_secs(10))?;
    clean(&minors)?;
    clean(&char_polys)?;
    let pairs: u64 = (2..=12u64).map(|n| n * n).sum();
    ensure(minors.cases_checked == pairs, || format!("minors checked {}", minors.cases_checked))?;
    let off_diagonal: u64 = (2..=12u64).map(|n| n * (n - 1)).sum();
    ensure(char_polys.cases_checked == off_diagonal, || format!("char polys checked {}", char_polys.cases_checked))?;
    Ok(format!("{} + {} cases in {took:?}", minors.cases_checked, char_polys.cases_checked))
}

fn one_factor_trinomials() -> Outcome {
    let start = Instant::now();
    let report = verify::verify_one_factor(8, PAR).map_err(|e| e.to_string())?;
    let took = within(start, Duration::from_secs(30))?;
    clean(&report)?;
    for n in 2..=8 {
        let achieved: BTreeSet<Gf2Poly> = report
            .witnesses
            .iter()
            .filter(|w| w.f.degree() == Some(n))
            .map(|w| w.f.clone())
            .collect();
        // independent oracle: trinomials x^n + x^k + 1 that no degree-1..n/2
        // polynomial divides
        let trinomials: BTreeSet<Gf2Poly> = (1..n)
            .map(|k| Gf2Poly::from_exponents(&[n, k, 0]))
            .filter(|f| !has_small_factor(f))
            .collect();
        ensure(achieved == trinomials, || format!("n={n}: achieved {achieved:?}, trinomials {trinomials:?}"))?;
        if n == 8 {
            ensure(achieved.is_empty(), || "degree-8 trinomial reached".into())?;
        }
    }
    Ok(format!("{} witnesses in {took:?}", report.witnesses.len()))
}

fn has_small_factor(f: &Gf2Poly) -> bool {
    let deg = f.degree().unwrap();
    (2u64..1 << (deg / 2 + 1)).any(|g| f.rem(&Gf2Poly::from_bits(g)).unwrap().is_zero())
}

fn two_factor_weight_bound() -> Outcome {
    let start = Instant::now();
    let report = verify::verify_two_factor_weight(8, SEQ).map_err(|e| e.to_string())?;
    let took = within(start, Duration::from_secs(60))?;
    clean(&report)?;
    let expected: u64 = [(2, 2), (3, 3), (4, 5), (5, 7), (6, 11), (7, 15), (8, 22)]
        .iter()
        .map(|&(n, p): &(u64, u64)| p * (n * (n - 1)).pow(2))
        .sum();
    ensure(report.cases_checked == expected, || format!("checked {} of {expected}", report.cases_checked))?;
    ensure(report.witnesses.iter().all(|w| w.f.weight() <= 5), || "witness above weight 5".into())?;
    Ok(format!("{} products, {} element classes, single-threaded in {took:?}", expected, report.witnesses.len()))
}

fn few_blocks() -> Outcome {
    let report = verify::verify_two_factor_blocks(8, PAR).map_err(|e| e.to_string())?;
    clean(&report)?;
    Ok(format!("{} products", report.cases_checked))
}

fn power_weights() -> Outcome {
    let start = Instant::now();
    let powers = verify::verify_power_weight(8, 7, PAR).map_err(|e| e.to_string())?;
    let squares = verify::verify_square_weight(10, PAR).map_err(|e| e.to_string())?;
    let took = within(start, Duration::from_secs(5))?;
    clean(&powers)?;
    clean(&squares)?;
    ensure(squares.cases_checked == 1 << 11, || format!("squares checked {}", squares.cases_checked))?;
    Ok(format!("{} + {} cases in {took:?}", powers.cases_checked, squares.cases_checked))
}

fn converse_fails() -> Outcome {
    let report = verify::converse_scan_range(8, PAR).map_err(|e| e.to_string())?;
    ensure(report.pass && !report.violations.is_empty(), || "no irreducible of weight <= 5 needs more than 2 XORs".into())?;
    let first = serde_json::to_string(&report.violations[0]).unwrap();
    Ok(format!("{} counterexamples, first {first}", report.violations.len()))
}

fn synthesis() -> Outcome {
    let mut witnesses: Vec<Witness> = verify::verify_one_factor(8, PAR).map_err(|e| e.to_string())?.witnesses;
    witnesses.extend(verify::verify_two_factor_weight(8, PAR).map_err(|e| e.to_string())?.witnesses);
    for w in &witnesses {
        let prog = emit_program(&w.product);
        ensure(prog.cost() == w.t && w.product.t() == w.t, || format!("{w:?}: cost {}", prog.cost()))?;
        let a = w.product.realize();
        ensure(prog.check_equivalence(&a, Equivalence::Exhaustive) == Ok(true), || format!("{w:?} mismatch"))?;
        let class = element_check(&a).map_err(|e| e.to_string())?;
        ensure(class.is_some_and(|c| c.f == w.f), || format!("{w:?} does not classify to its f"))?;
    }
    Ok(format!("{} programs", witnesses.len()))
}

fn det_laplace(a: &Gf2Mat) -> bool {
    let n = a.dim();
    if n == 1 {
        return a.get(1, 1);
    }
    (1..=n)
        .filter(|&j| a.get(1, j))
        .fold(false, |acc, j| acc ^ det_laplace(&a.minor_delete(1, j).unwrap()))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n);
            out.push(q);
        }
    }
    out
}

fn algebra() -> Outcome {
    let mut count = 0u64;
    for bits in 2u64..1 << 11 {
        let q = Gf2Poly::from_bits(bits);
        let c = Gf2Mat::companion(&q).map_err(|e| e.to_string())?;
        ensure(c.char_poly() == q && c.min_poly() == q, || format!("companion of {q}"))?;
        count += 1;
    }

    for n in 2..=3usize {
        for bits in 0u64..1 << (n * n) {
            let rows: Vec<u32> = (0..n).map(|i| ((bits >> (i * n)) as u32) & ((1 << n) - 1)).collect();
            let a = Gf2Mat::from_rows(n, &rows).unwrap();
            row_expansion(&a)?;
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let n = rng.random_range(2..=6usize);
        let rows: Vec<u32> = (0..n).map(|_| rng.random::<u32>() & ((1 << n) - 1)).collect();
        let a = Gf2Mat::from_rows(n, &rows).unwrap();
        row_expansion(&a)?;
        ensure(a.min_poly().divides(&a.char_poly()), || format!("min poly of {a:?}"))?;
        count += 1;
    }

    for n in 2..=4usize {
        let perms: Vec<Gf2Mat> = permutations(n).iter().map(|p| Gf2Mat::from_permutation(p).unwrap()).collect();
        for t in 0..=2 {
            let space = ProductSpace::new(n, t).unwrap();
            for idx in 0..space.len() {
                let a = space.matrix(idx);
                ensure(a.min_poly().divides(&a.char_poly()), || format!("min poly of {a:?}"))?;
                if element_check(&a).unwrap().is_none() {
                    continue;
                }
                let wt = xor_count_exact(&a, 3).unwrap().t;
                ensure(wt.is_some_and(|w| w <= t), || format!("{a:?}: count {wt:?} above {t}"))?;
                let inv = a.inverse().unwrap();
                ensure(xor_count_exact(&inv, 3).unwrap().t == wt, || format!("inverse of {a:?}"))?;
                for q in &perms {
                    let b = a.conjugate_by(q).unwrap();
                    ensure(xor_count_exact(&b, 3).unwrap().t == wt, || format!("{a:?} conjugated by {q:?}"))?;
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} cases"))
}

fn row_expansion(a: &Gf2Mat) -> Result<(), String> {
    let n = a.dim();
    ensure(a.det() == det_laplace(a), || format!("det of {a:?}"))?;
    for i in 1..=n {
        for j in 1..=n {
            let lhs = det_laplace(&(*a ^ Gf2Mat::unit(n, i, j).unwrap()));
            let rhs = det_laplace(a) ^ det_laplace(&a.minor_delete(i, j).unwrap());
            ensure(lhs == rhs, || format!("expansion of {a:?} at ({i},{j})"))?;
        }
    }
    Ok(())
}

fn mutation() -> Outcome {
    // exponent for the i < j case taken from the i > j branch
    let perturbed = |n: usize, i: usize, j: usize| {
        let middle = i.abs_diff(j);
        Gf2Poly::from_exponents(&[n, middle, 0])
    };
    let report = verify::verify_transvection_char_polys_against(12, PAR, perturbed).map_err(|e| e.to_string())?;
    ensure(!report.violations.is_empty() && !report.pass, || "perturbed comparator produced no violations".into())?;
    Ok(format!("{} violations detected", report.violations.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("shift-matrix minors and transvection characteristic polynomials", identities),
        ("one-factor elements are exactly the irreducible trinomials", one_factor_trinomials),
        ("two-factor elements have weight at most 5", two_factor_weight_bound),
        ("two-factor elements use at most two cycle blocks", few_blocks),
        ("odd powers and squares keep weight", power_weights),
        ("weight at most 5 does not imply two XORs", converse_fails),
        ("emitted programs match their matrices", synthesis),
        ("algebra properties", algebra),
        ("perturbed comparator is caught", mutation),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({why})", k + 1);
            }
        }
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
