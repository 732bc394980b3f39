use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{check_cap, Error, Result};
use crate::exec::{self, Exec};
use crate::gf2mat::Gf2Mat;
use crate::gf2poly::Gf2Poly;

use super::{classify_invertible, confirm_class, cycle_normal_form, ElementClass, ProductSpace, XorProduct};

/// Largest dimension for exact XOR-count and per-polynomial searches.
pub const SEARCH_DIM_CAP: usize = 8;
/// Largest `t_max` for exact XOR-count and per-polynomial searches.
pub const SEARCH_T_CAP: usize = 3;

/// `A = P · (I+E_{i_1,j_1}) ⋯ (I+E_{i_t,j_t})` with an arbitrary permutation
/// matrix `P`, given by its images (`P e_j = e_{permutation[j-1]}`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub permutation: Vec<usize>,
    pub factors: Vec<(usize, usize)>,
}

impl Decomposition {
    pub fn realize(&self) -> Result<Gf2Mat> {
        let mut m = Gf2Mat::from_permutation(&self.permutation)?;
        for &(i, j) in &self.factors {
            m = m.mul_transvection(i, j)?;
        }
        Ok(m)
    }

    /// Move the permutation part to cycle normal form: returns the product
    /// `x` and the permutation matrix `Q` with `Q A Q⁻¹ = realize(x)`.
    ///
    /// Conjugation by `Q` (with `Q e_k = e_{π(k)}`) sends `I + E_{i,j}` to
    /// `I + E_{π(i),π(j)}`.
    pub fn to_cycle_form(&self) -> Result<(XorProduct, Gf2Mat)> {
        let p = Gf2Mat::from_permutation(&self.permutation)?;
        let (cycle_type, q) = cycle_normal_form(&p)?;
        let relabel = q.permutation_images().expect("conjugator is a permutation");
        let factors = self
            .factors
            .iter()
            .map(|&(i, j)| (relabel[i - 1], relabel[j - 1]))
            .collect();
        Ok((XorProduct::new(cycle_type, factors)?, q))
    }
}

/// Result of [`xor_count_exact`]: `t` is `None` when the count exceeds `t_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XorCount {
    pub t: Option<usize>,
    pub t_max: usize,
    pub witness: Option<Decomposition>,
}

/// Exact XOR-count of an invertible matrix, up to `t_max`.
///
/// Transvections are involutions, so `A` has a decomposition with `t`
/// factors iff `A · F_t ⋯ F_1` is a permutation matrix for some choice of
/// factors. This is a depth-`t` search with a permutation test at each leaf.
pub fn xor_count_exact(a: &Gf2Mat, t_max: usize) -> Result<XorCount> {
    let n = a.dim();
    check_cap("n", n, SEARCH_DIM_CAP)?;
    check_cap("t_max", t_max, SEARCH_T_CAP)?;
    if !a.is_invertible() {
        return Err(Error::Singular);
    }
    let mut stack = Vec::with_capacity(t_max);
    for t in 0..=t_max {
        if let Some(perm) = strip(*a, t, &mut stack) {
            // the last factor was stripped first
            let factors = stack.iter().rev().map(|&(i, j)| (i + 1, j + 1)).collect();
            let permutation = perm.permutation_images().expect("leaf is a permutation");
            return Ok(XorCount {
                t: Some(t),
                t_max,
                witness: Some(Decomposition { permutation, factors }),
            });
        }
    }
    Ok(XorCount { t: None, t_max, witness: None })
}

fn strip(m: Gf2Mat, depth: usize, stack: &mut Vec<(usize, usize)>) -> Option<Gf2Mat> {
    if depth == 0 {
        return m.is_permutation().then_some(m);
    }
    let n = m.dim();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            // a repeated factor cancels; that case belongs to a smaller t
            if stack.last() == Some(&(i, j)) {
                continue;
            }
            let mut next = m;
            next.add_col_into(i, j);
            stack.push((i, j));
            if let Some(p) = strip(next, depth - 1, stack) {
                return Some(p);
            }
            stack.pop();
        }
    }
    None
}

/// Smallest XOR-count found for one element class, with the
/// lexicographically smallest product achieving it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinCount {
    pub class: ElementClass,
    pub t: usize,
    pub witness: XorProduct,
}

/// Classify every product of dimension `n` with up to `t_max` factors and
/// record, per minimal polynomial, the smallest `t` and its witness.
pub fn scan_min_counts(n: usize, t_max: usize, exec: Exec) -> Result<BTreeMap<Gf2Poly, MinCount>> {
    let mut table: BTreeMap<Gf2Poly, MinCount> = BTreeMap::new();
    for t in 0..=t_max {
        let space = ProductSpace::new(n, t)?;
        for (f, (idx, class)) in classify_space(&space, exec) {
            table.entry(f).or_insert_with(|| MinCount {
                class,
                t,
                witness: space.product(idx),
            });
        }
    }
    Ok(table)
}

/// Per minimal polynomial, the lowest index in `space` whose matrix
/// classifies to it.
pub(crate) fn classify_space(space: &ProductSpace, exec: Exec) -> BTreeMap<Gf2Poly, (usize, ElementClass)> {
    type Acc = BTreeMap<Gf2Poly, (usize, ElementClass)>;
    fn keep_min(acc: &mut Acc, idx: usize, class: ElementClass) {
        match acc.get(&class.f) {
            Some(&(seen, _)) if seen <= idx => {}
            _ => {
                acc.insert(class.f.clone(), (idx, class));
            }
        }
    }
    exec::fold_reduce(
        exec,
        space.len(),
        Acc::new,
        |mut acc, idx| {
            if let Some(class) = classify_invertible(&space.matrix(idx)) {
                keep_min(&mut acc, idx, class);
            }
            acc
        },
        |mut left, right| {
            for (_, (idx, class)) in right {
                keep_min(&mut left, idx, class);
            }
            left
        },
    )
}

/// Outcome of a per-polynomial minimum XOR-count search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub poly: Gf2Poly,
    pub n: usize,
    /// `None` means the count exceeds `t_max`.
    pub t: Option<usize>,
    pub t_max: usize,
    pub witness: Option<XorProduct>,
    pub elapsed_ms: u64,
}

/// Smallest `t ≤ t_max` such that some product of dimension `n` with `t`
/// factors represents multiplication by an element with minimal polynomial
/// `f` (multiplicity `n / deg f`).
///
/// Elements sharing a minimal polynomial share their XOR-count, so the
/// search is keyed on `f` alone.
pub fn min_xor_count_for_poly(f: &Gf2Poly, n: usize, t_max: usize, exec: Exec) -> Result<SearchReport> {
    let start = Instant::now();
    check_cap("n", n, SEARCH_DIM_CAP)?;
    check_cap("t_max", t_max, SEARCH_T_CAP)?;
    if let Some(factor) = f.nontrivial_factor()? {
        return Err(Error::Reducible { poly: f.clone(), factor });
    }
    let m = f.degree().expect("nonconstant");
    if !n.is_multiple_of(m) {
        return Err(Error::DegreeNotDivisor { degree: m, n });
    }
    let target = ElementClass { f: f.clone(), m, d: n / m, n };
    let mut found = None;
    for t in 0..=t_max {
        let space = ProductSpace::new(n, t)?;
        let hit = exec::find_first(exec, space.len(), |idx| {
            let a = space.matrix(idx);
            let mp = a.min_poly();
            (mp == target.f && confirm_class(&a, mp).as_ref() == Some(&target)).then_some(())
        });
        if let Some((idx, ())) = hit {
            found = Some((t, space.product(idx)));
            break;
        }
    }
    let (t, witness) = found.unzip();
    Ok(SearchReport {
        poly: f.clone(),
        n,
        t,
        t_max,
        witness,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
