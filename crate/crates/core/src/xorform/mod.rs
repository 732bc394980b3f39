//! Products `C(P) · ∏ (I + E_{i_k,j_k})` and their classification.
//!
//! A matrix of XOR-count `t` is a permutation matrix times `t` transvections
//! `I + E_{i,j}` (`i ≠ j`). Up to permutation-similarity the permutation part
//! can be taken in cycle normal form `⊕ C_{x^{m_k}+1}`, so the search space
//! for a given dimension `n` is indexed by a partition of `n` and an ordered
//! list of `t` index pairs. See [`ProductSpace`].

mod search;
mod space;

pub use search::{
    min_xor_count_for_poly, scan_min_counts, xor_count_exact, Decomposition, MinCount, SearchReport,
    XorCount, SEARCH_DIM_CAP, SEARCH_T_CAP,
};
pub use space::{enumerate_products, partitions, ProductSpace, ENUM_DIM_CAP, ENUM_T_CAP};
pub(crate) use search::classify_space;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2mat::Gf2Mat;
use crate::gf2poly::Gf2Poly;

/// A partition `m_1 ≥ m_2 ≥ … ≥ m_s ≥ 1` of the dimension: the cycle type of
/// the permutation part.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let ok = !parts.is_empty() && parts.iter().all(|&m| m >= 1) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Self(parts))
        } else {
            Err(Error::InvalidCycleType(parts))
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of blocks `s`.
    pub fn num_blocks(&self) -> usize {
        self.0.len()
    }

    pub fn dim(&self) -> usize {
        self.0.iter().sum()
    }

    /// Cycle normal form `⊕ C_{x^{m_k}+1}`.
    pub fn normal_form(&self) -> Result<Gf2Mat> {
        let blocks = self
            .0
            .iter()
            .map(|&m| Gf2Mat::companion(&Gf2Poly::x_n_plus_one(m)))
            .collect::<Result<Vec<_>>>()?;
        Gf2Mat::block_diag(&blocks)
    }
}

impl TryFrom<Vec<usize>> for CycleType {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        CycleType::new(parts)
    }
}

impl From<CycleType> for Vec<usize> {
    fn from(c: CycleType) -> Self {
        c.0
    }
}

/// `C(P) · (I+E_{i_1,j_1}) ⋯ (I+E_{i_t,j_t})` in symbolic form. Factor
/// indices are 1-based and listed left to right.
///
/// The derived order (cycle type, then factor tuples, both lexicographic) is
/// the enumeration order and the witness tie-break.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawProduct")]
pub struct XorProduct {
    cycle_type: CycleType,
    factors: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct RawProduct {
    cycle_type: CycleType,
    factors: Vec<(usize, usize)>,
}

impl TryFrom<RawProduct> for XorProduct {
    type Error = Error;

    fn try_from(raw: RawProduct) -> Result<Self> {
        XorProduct::new(raw.cycle_type, raw.factors)
    }
}

impl XorProduct {
    pub fn new(cycle_type: CycleType, factors: Vec<(usize, usize)>) -> Result<Self> {
        let n = cycle_type.dim();
        for &(i, j) in &factors {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::IndexOutOfRange { i, j, n });
            }
            if i == j {
                return Err(Error::DiagonalFactor(i));
            }
        }
        Ok(Self { cycle_type, factors })
    }

    pub fn cycle_type(&self) -> &CycleType {
        &self.cycle_type
    }

    pub fn factors(&self) -> &[(usize, usize)] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.cycle_type.dim()
    }

    /// Number of transvection factors.
    pub fn t(&self) -> usize {
        self.factors.len()
    }

    /// The matrix: cycle normal form right-multiplied by each factor in order.
    pub fn realize(&self) -> Gf2Mat {
        let mut m = self.cycle_type.normal_form().expect("validated cycle type");
        for &(i, j) in &self.factors {
            m.add_col_into(i - 1, j - 1);
        }
        m
    }
}

/// Verdict that a matrix represents multiplication by a field element whose
/// minimal polynomial is `f`: `χ = f^d`, `m_A = f`, `n = m·d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElementClass {
    pub f: Gf2Poly,
    pub m: usize,
    pub d: usize,
    pub n: usize,
}

impl ElementClass {
    /// The class of the identity element, `f = x + 1`.
    pub fn is_trivial(&self) -> bool {
        self.f.to_u64() == Some(0b11)
    }
}

/// Classify an invertible matrix as a field-element multiplication matrix.
///
/// Returns a class when the minimal polynomial `f` is irreducible and the
/// characteristic polynomial equals `f^{n/deg f}`; `None` otherwise.
pub fn element_check(a: &Gf2Mat) -> Result<Option<ElementClass>> {
    if !a.is_invertible() {
        return Err(Error::Singular);
    }
    Ok(classify_invertible(a))
}

pub(crate) fn classify_invertible(a: &Gf2Mat) -> Option<ElementClass> {
    let f = a.min_poly();
    confirm_class(a, f)
}

/// Given the minimal polynomial `f` of `a`, finish the classification.
pub(crate) fn confirm_class(a: &Gf2Mat, f: Gf2Poly) -> Option<ElementClass> {
    if !f.is_irreducible().ok()? {
        return None;
    }
    let n = a.dim();
    let m = f.degree()?;
    if !n.is_multiple_of(m) {
        return None;
    }
    let d = n / m;
    (a.char_poly() == f.pow(d)).then_some(ElementClass { f, m, d, n })
}

/// Decompose a permutation matrix `P` as `Q P Q⁻¹ = ⊕ C_{x^{m_k}+1}` with
/// parts sorted descending. Returns the cycle type and the conjugator `Q`.
pub fn cycle_normal_form(p: &Gf2Mat) -> Result<(CycleType, Gf2Mat)> {
    let sigma = p.permutation_images().ok_or(Error::NotPermutation)?;
    let n = sigma.len();
    let mut visited = vec![false; n];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut k = start;
        while !visited[k] {
            visited[k] = true;
            cycle.push(k);
            k = sigma[k] - 1;
        }
        cycles.push(cycle);
    }
    // stable: equal lengths keep the order of their smallest element
    cycles.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut relabel = vec![0; n];
    let mut offset = 0;
    for cycle in &cycles {
        for (k, &j) in cycle.iter().enumerate() {
            relabel[j] = offset + k + 1;
        }
        offset += cycle.len();
    }
    let cycle_type = CycleType::new(cycles.iter().map(Vec::len).collect())?;
    Ok((cycle_type, Gf2Mat::from_permutation(&relabel)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    fn ct(parts: &[usize]) -> CycleType {
        CycleType::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn cycle_type_validation() {
        assert!(CycleType::new(vec![]).is_err());
        assert!(CycleType::new(vec![1, 2]).is_err());
        assert!(CycleType::new(vec![2, 0]).is_err());
        assert_eq!(ct(&[3, 2, 2]).dim(), 7);
        assert!(serde_json::from_str::<CycleType>("[1,3]").is_err());
    }

    #[test]
    fn product_validation() {
        assert_eq!(XorProduct::new(ct(&[3]), vec![(2, 2)]), Err(Error::DiagonalFactor(2)));
        assert!(XorProduct::new(ct(&[3]), vec![(1, 4)]).is_err());
        let json = r#"{"cycle_type":[2],"factors":[[1,1]]}"#;
        assert!(serde_json::from_str::<XorProduct>(json).is_err());
    }

    #[test]
    fn realize_examples() {
        for n in 1..=6 {
            let x = XorProduct::new(ct(&[n]), vec![]).unwrap();
            assert_eq!(x.realize(), Gf2Mat::companion(&Gf2Poly::x_n_plus_one(n)).unwrap());
        }
        let x = XorProduct::new(ct(&[4]), vec![(1, 4)]).unwrap();
        assert_eq!(x.realize().char_poly(), p("x^4+x+1"));
        let x = XorProduct::new(ct(&[3]), vec![(3, 1)]).unwrap();
        assert_eq!(x.realize().char_poly(), p("x^3+x^2+1"));
    }

    #[test]
    fn realize_matches_explicit_product() {
        let x = XorProduct::new(ct(&[3, 2]), vec![(1, 5), (4, 2), (2, 3)]).unwrap();
        let mut expected = ct(&[3, 2]).normal_form().unwrap();
        for &(i, j) in x.factors() {
            expected = expected.mul(&Gf2Mat::transvection(5, i, j).unwrap()).unwrap();
        }
        assert_eq!(x.realize(), expected);
        assert!(x.realize().det());
    }

    #[test]
    fn normal_forms() {
        let (c, q) = cycle_normal_form(&Gf2Mat::identity(3).unwrap()).unwrap();
        assert_eq!(c, ct(&[1, 1, 1]));
        assert_eq!(q, Gf2Mat::identity(3).unwrap());

        let shift = Gf2Mat::companion(&Gf2Poly::x_n_plus_one(5)).unwrap();
        assert_eq!(cycle_normal_form(&shift).unwrap().0, ct(&[5]));

        // (1 2)(3)
        let swap = Gf2Mat::from_permutation(&[2, 1, 3]).unwrap();
        let (c, q) = cycle_normal_form(&swap).unwrap();
        assert_eq!(c, ct(&[2, 1]));
        assert_eq!(swap.conjugate_by(&q).unwrap(), c.normal_form().unwrap());

        // (1 5)(2 4 3) -> (3, 2)
        let perm = Gf2Mat::from_permutation(&[5, 4, 2, 3, 1]).unwrap();
        let (c, q) = cycle_normal_form(&perm).unwrap();
        assert_eq!(c, ct(&[3, 2]));
        assert_eq!(perm.conjugate_by(&q).unwrap(), c.normal_form().unwrap());

        assert_eq!(cycle_normal_form(&Gf2Mat::zero(2).unwrap()), Err(Error::NotPermutation));
    }

    #[test]
    fn element_checks() {
        let c = Gf2Mat::companion(&p("x^4+x+1")).unwrap();
        assert_eq!(
            element_check(&c).unwrap(),
            Some(ElementClass { f: p("x^4+x+1"), m: 4, d: 1, n: 4 })
        );
        let f = p("x^2+x+1");
        let cf = Gf2Mat::companion(&f).unwrap();
        let twice = Gf2Mat::block_diag(&[cf, cf]).unwrap();
        assert_eq!(element_check(&twice).unwrap(), Some(ElementClass { f, m: 2, d: 2, n: 4 }));

        let id = element_check(&Gf2Mat::identity(3).unwrap()).unwrap().unwrap();
        assert!(id.is_trivial());
        assert_eq!(element_check(&Gf2Mat::zero(2).unwrap()), Err(Error::Singular));

        // reducible char poly: (x^2+x+1)(x+1)
        let mixed = Gf2Mat::block_diag(&[cf, Gf2Mat::identity(1).unwrap()]).unwrap();
        assert_eq!(element_check(&mixed).unwrap(), None);
        // derogatory but not a power of one irreducible: min poly x^2+1
        let derog = Gf2Mat::block_diag(&[Gf2Mat::companion(&p("x^2+1")).unwrap(), Gf2Mat::identity(1).unwrap()]).unwrap();
        assert_eq!(element_check(&derog).unwrap(), None);
    }

    #[test]
    fn no_cubic_element_from_split_cycle() {
        let x = XorProduct::new(ct(&[2, 1]), vec![(1, 3)]).unwrap();
        match element_check(&x.realize()).unwrap() {
            None => {}
            Some(c) => assert!(c.is_trivial()),
        }
    }
}
