use crate::error::{check_cap, check_min, Result};
use crate::gf2mat::Gf2Mat;

use super::{CycleType, XorProduct};

/// Largest dimension [`enumerate_products`] accepts.
pub const ENUM_DIM_CAP: usize = 12;
/// Largest factor count [`enumerate_products`] accepts.
pub const ENUM_T_CAP: usize = 3;

/// All partitions of `n` as descending tuples, in lexicographic order.
pub fn partitions(n: usize) -> Vec<CycleType> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for m in 1..=max.min(rest) {
            prefix.push(m);
            go(rest - m, m, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out.into_iter().map(|p| CycleType::new(p).expect("descending by construction")).collect()
}

/// The dense, ordered space of all products for a given `(n, t)`.
///
/// Index `idx` decodes in mixed radix: the most significant digit selects the
/// partition, the remaining `t` digits select the factor pairs left to right.
/// Index order therefore equals the lexicographic order of [`XorProduct`].
#[derive(Clone, Debug)]
pub struct ProductSpace {
    n: usize,
    t: usize,
    partitions: Vec<CycleType>,
    bases: Vec<Gf2Mat>,
    pairs: Vec<(usize, usize)>,
    per_partition: usize,
}

impl ProductSpace {
    /// Enforces `1 ≤ n ≤ ENUM_DIM_CAP` and `t ≤ ENUM_T_CAP`.
    pub fn new(n: usize, t: usize) -> Result<Self> {
        check_min("n", n, 1)?;
        check_cap("n", n, ENUM_DIM_CAP)?;
        check_cap("t", t, ENUM_T_CAP)?;
        let partitions = partitions(n);
        let bases = partitions
            .iter()
            .map(CycleType::normal_form)
            .collect::<Result<Vec<_>>>()?;
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let per_partition = pairs.len().pow(t as u32);
        Ok(Self { n, t, partitions, bases, pairs, per_partition })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn partitions(&self) -> &[CycleType] {
        &self.partitions
    }

    /// `p(n) · (n(n-1))^t`.
    pub fn len(&self) -> usize {
        self.partitions.len() * self.per_partition
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index range `[start, end)` of the products over `partitions()[k]`.
    pub fn partition_range(&self, k: usize) -> std::ops::Range<usize> {
        k * self.per_partition..(k + 1) * self.per_partition
    }

    pub fn partition_of(&self, idx: usize) -> &CycleType {
        &self.partitions[idx / self.per_partition]
    }

    fn decode(&self, idx: usize) -> (usize, [usize; ENUM_T_CAP]) {
        let mut digits = [0; ENUM_T_CAP];
        let mut rest = idx % self.per_partition;
        for d in digits[..self.t].iter_mut().rev() {
            *d = rest % self.pairs.len();
            rest /= self.pairs.len();
        }
        (idx / self.per_partition, digits)
    }

    pub fn product(&self, idx: usize) -> XorProduct {
        let (pk, digits) = self.decode(idx);
        let factors = digits[..self.t].iter().map(|&d| self.pairs[d]).collect();
        XorProduct {
            cycle_type: self.partitions[pk].clone(),
            factors,
        }
    }

    /// `realize(product(idx))` without building the symbolic product.
    pub fn matrix(&self, idx: usize) -> Gf2Mat {
        let (pk, digits) = self.decode(idx);
        let mut m = self.bases[pk];
        for &d in &digits[..self.t] {
            let (i, j) = self.pairs[d];
            m.add_col_into(i - 1, j - 1);
        }
        m
    }

    pub fn iter(&self) -> impl Iterator<Item = XorProduct> + '_ {
        (0..self.len()).map(|idx| self.product(idx))
    }
}

/// Every product over a partition of `n` with exactly `t` factors, in
/// lexicographic order (partition, then factor tuples).
pub fn enumerate_products(n: usize, t: usize) -> Result<impl Iterator<Item = XorProduct>> {
    let space = ProductSpace::new(n, t)?;
    Ok((0..space.len()).map(move |idx| space.product(idx)))
}
