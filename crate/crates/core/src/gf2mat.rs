//! Square matrices over F_2 and over F_2[λ].
//!
//! [`Gf2Mat`] packs row `i` into one `u32` word, bit `j` holding entry
//! `(i+1, j+1)`. All public indices are 1-based; storage is 0-based.
//!
//! [`PolyMat`] holds polynomial entries and exists for the symbolic
//! determinants `det(A + λI)` and their minors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_cap, check_min, Error, Result};
use crate::gf2poly::Gf2Poly;

/// Largest supported dimension: one machine word per row.
pub const MAX_DIM: usize = 24;

/// An `n × n` matrix over F_2.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf2Mat {
    n: usize,
    rows: [u32; MAX_DIM],
}

fn check_dim(n: usize) -> Result<()> {
    check_min("dimension", n, 1)?;
    check_cap("dimension", n, MAX_DIM)
}

fn check_index(n: usize, i: usize, j: usize) -> Result<()> {
    if i == 0 || j == 0 || i > n || j > n {
        Err(Error::IndexOutOfRange { i, j, n })
    } else {
        Ok(())
    }
}

impl Gf2Mat {
    pub fn zero(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self { n, rows: [0; MAX_DIM] })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zero(n)?;
        for i in 0..n {
            m.rows[i] = 1 << i;
        }
        Ok(m)
    }

    /// `E_{i,j}`: a single one at row `i`, column `j`.
    pub fn unit(n: usize, i: usize, j: usize) -> Result<Self> {
        check_index(n, i, j)?;
        let mut m = Self::zero(n)?;
        m.rows[i - 1] = 1 << (j - 1);
        Ok(m)
    }

    /// `I + E_{i,j}` with `i ≠ j`.
    pub fn transvection(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::DiagonalFactor(i));
        }
        Ok(Self::identity(n)? ^ Self::unit(n, i, j)?)
    }

    /// Build from packed rows; bit `j` of `rows[i]` is entry `(i+1, j+1)`.
    pub fn from_rows(n: usize, rows: &[u32]) -> Result<Self> {
        let mut m = Self::zero(n)?;
        if rows.len() != n {
            return Err(Error::DimensionMismatch { left: n, right: rows.len() });
        }
        let mask = m.col_mask();
        for (dst, &r) in m.rows.iter_mut().zip(rows) {
            if r & !mask != 0 {
                return Err(Error::Parse(format!("row {r:#x} has bits beyond column {n}")));
            }
            *dst = r;
        }
        Ok(m)
    }

    /// The permutation matrix sending `e_j` to `e_{images[j-1]}`, i.e. with
    /// ones at `(images[j-1], j)`. Images are 1-based.
    pub fn from_permutation(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut m = Self::zero(n)?;
        let mut seen = 0u32;
        for (j, &img) in images.iter().enumerate() {
            check_index(n, img, j + 1)?;
            if seen & (1 << (img - 1)) != 0 {
                return Err(Error::NotPermutation);
            }
            seen |= 1 << (img - 1);
            m.rows[img - 1] |= 1 << j;
        }
        Ok(m)
    }

    /// Companion matrix of a monic `q` of degree `n ≥ 1`: ones on the
    /// subdiagonal, last column `(q_0, …, q_{n-1})ᵀ`.
    pub fn companion(q: &Gf2Poly) -> Result<Self> {
        let n = match q.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        let mut m = Self::zero(n)?;
        for i in 1..n {
            m.rows[i] |= 1 << (i - 1);
        }
        for k in 0..n {
            if q.coeff(k) {
                m.rows[k] |= 1 << (n - 1);
            }
        }
        Ok(m)
    }

    /// `⊕ blocks` along the diagonal.
    pub fn block_diag(blocks: &[Gf2Mat]) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::EmptyBlocks);
        }
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = Self::zero(n)?;
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                m.rows[off + i] = b.rows[i] << off;
            }
            off += b.n;
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Packed rows, `dim()` entries.
    pub fn rows(&self) -> &[u32] {
        &self.rows[..self.n]
    }

    fn col_mask(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    /// Entry `(i, j)`, 1-based. Panics when out of range.
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i >= 1 && j >= 1 && i <= self.n && j <= self.n, "index out of range");
        (self.rows[i - 1] >> (j - 1)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i >= 1 && j >= 1 && i <= self.n && j <= self.n, "index out of range");
        let bit = 1 << (j - 1);
        if value {
            self.rows[i - 1] |= bit;
        } else {
            self.rows[i - 1] &= !bit;
        }
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Right-multiply by `I + E_{i,j}` in place: column `i` is added into
    /// column `j`. Indices are 0-based and assumed valid.
    #[inline]
    pub(crate) fn add_col_into(&mut self, src: usize, dst: usize) {
        for r in &mut self.rows[..self.n] {
            *r ^= ((*r >> src) & 1) << dst;
        }
    }

    /// `self · (I + E_{i,j})`, 1-based.
    pub fn mul_transvection(&self, i: usize, j: usize) -> Result<Self> {
        check_index(self.n, i, j)?;
        if i == j {
            return Err(Error::DiagonalFactor(i));
        }
        let mut m = *self;
        m.add_col_into(i - 1, j - 1);
        Ok(m)
    }

    fn check_same_dim(&self, other: &Gf2Mat) -> Result<()> {
        if self.n != other.n {
            Err(Error::DimensionMismatch { left: self.n, right: other.n })
        } else {
            Ok(())
        }
    }

    pub fn mul(&self, other: &Gf2Mat) -> Result<Gf2Mat> {
        self.check_same_dim(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Gf2Mat) -> Gf2Mat {
        let mut out = Gf2Mat { n: self.n, rows: [0; MAX_DIM] };
        for (dst, &row) in out.rows.iter_mut().zip(self.rows()) {
            let mut rest = row;
            while rest != 0 {
                *dst ^= other.rows[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
        }
        out
    }

    /// `A·v` for a column vector packed LSB-first (bit `k` = component `k+1`).
    #[inline]
    pub fn mul_vec(&self, v: u32) -> u32 {
        self.rows()
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &r)| acc | (((r & v).count_ones() & 1) << i))
    }

    pub fn transpose(&self) -> Gf2Mat {
        let mut out = Gf2Mat { n: self.n, rows: [0; MAX_DIM] };
        for (i, &r) in self.rows().iter().enumerate() {
            for j in 0..self.n {
                out.rows[j] |= ((r >> j) & 1) << i;
            }
        }
        out
    }

    pub fn det(&self) -> bool {
        let mut rows = self.rows;
        let n = self.n;
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| (rows[r] >> col) & 1 == 1) else {
                return false;
            };
            rows.swap(col, p);
            let pivot = rows[col];
            for r in rows.iter_mut().take(n).skip(col + 1) {
                if (*r >> col) & 1 == 1 {
                    *r ^= pivot;
                }
            }
        }
        true
    }

    pub fn is_invertible(&self) -> bool {
        self.det()
    }

    /// Gauss-Jordan inverse; `None` for singular input.
    pub fn inverse(&self) -> Option<Gf2Mat> {
        let n = self.n;
        let mut a = self.rows;
        let mut inv = Gf2Mat::identity(n).expect("valid dimension").rows;
        for col in 0..n {
            let p = (col..n).find(|&r| (a[r] >> col) & 1 == 1)?;
            a.swap(col, p);
            inv.swap(col, p);
            for r in 0..n {
                if r != col && (a[r] >> col) & 1 == 1 {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Some(Gf2Mat { n, rows: inv })
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = 0u32;
        for &r in self.rows() {
            if r.count_ones() != 1 || seen & r != 0 {
                return false;
            }
            seen |= r;
        }
        true
    }

    /// For a permutation matrix `P`, the images `σ(j)` with `P e_j = e_{σ(j)}`
    /// (1-based).
    pub fn permutation_images(&self) -> Option<Vec<usize>> {
        if !self.is_permutation() {
            return None;
        }
        let mut images = vec![0; self.n];
        for (i, &r) in self.rows().iter().enumerate() {
            images[r.trailing_zeros() as usize] = i + 1;
        }
        Some(images)
    }

    /// `Q · self · Q⁻¹`.
    pub fn conjugate_by(&self, q: &Gf2Mat) -> Result<Gf2Mat> {
        self.check_same_dim(q)?;
        let q_inv = q.inverse().ok_or(Error::Singular)?;
        Ok(q.mul_unchecked(self).mul_unchecked(&q_inv))
    }

    /// `A^{(i,j)}`: delete row `i` and column `j` (1-based).
    pub fn minor_delete(&self, i: usize, j: usize) -> Result<Gf2Mat> {
        check_index(self.n, i, j)?;
        check_min("dimension", self.n, 2)?;
        let mut out = Gf2Mat { n: self.n - 1, rows: [0; MAX_DIM] };
        let low = (1u32 << (j - 1)) - 1;
        for (k, &r) in self.rows().iter().enumerate().filter(|&(k, _)| k != i - 1) {
            let dst = if k < i - 1 { k } else { k - 1 };
            out.rows[dst] = (r & low) | ((r >> 1) & !low);
        }
        Ok(out)
    }

    /// `A^{(i1,j1),(i2,j2)}`: delete rows `i1, i2` and columns `j1, j2`, all
    /// indices referring to `self` (requires `i1 ≠ i2`, `j1 ≠ j2`).
    pub fn minor_delete_original(&self, i1: usize, j1: usize, i2: usize, j2: usize) -> Result<Gf2Mat> {
        let (a, b) = remap_second_deletion(self.n, i1, j1, i2, j2)?;
        self.minor_delete(i1, j1)?.minor_delete(a, b)
    }

    /// Embed into a polynomial matrix with constant entries.
    pub fn to_poly_mat(&self) -> PolyMat {
        let n = self.n;
        let entries = (0..n * n)
            .map(|k| Gf2Poly::from_bits(((self.rows[k / n] >> (k % n)) & 1) as u64))
            .collect();
        PolyMat { n, entries }
    }

    /// `self + λI` over F_2[λ].
    pub fn plus_lambda(&self) -> PolyMat {
        let mut m = self.to_poly_mat();
        for i in 1..=self.n {
            let e = m.get(i, i) + &Gf2Poly::x();
            m.set(i, i, e);
        }
        m
    }

    /// `χ_A = det(A + λI)` by fraction-free elimination over F_2[λ].
    pub fn char_poly(&self) -> Gf2Poly {
        self.plus_lambda().sym_det()
    }

    /// Minimal polynomial as the lcm of the local minimal polynomials of
    /// the standard basis vectors (first dependence in each Krylov sequence).
    pub fn min_poly(&self) -> Gf2Poly {
        let n = self.n;
        let mut acc = Gf2Poly::one();
        // (vector, combination of powers as packed poly bits, pivot bit)
        let mut basis: Vec<(u32, u64, u32)> = Vec::with_capacity(n + 1);
        for k in 0..n {
            basis.clear();
            let mut w = 1u32 << k;
            let mut power = 0;
            let local = loop {
                let (mut v, mut combo) = (w, 1u64 << power);
                for &(bv, bc, piv) in &basis {
                    if v & piv != 0 {
                        v ^= bv;
                        combo ^= bc;
                    }
                }
                if v == 0 {
                    break combo;
                }
                basis.push((v, combo, 1 << (31 - v.leading_zeros())));
                w = self.mul_vec(w);
                power += 1;
            };
            if !Gf2Poly::from_bits(local).divides(&acc) {
                acc = acc.lcm(&Gf2Poly::from_bits(local));
            }
            if acc.degree() == Some(n) {
                break;
            }
        }
        acc
    }

    /// `p(A)` by Horner's rule.
    pub fn poly_eval(&self, p: &Gf2Poly) -> Gf2Mat {
        let id = Gf2Mat::identity(self.n).expect("valid dimension");
        let mut acc = Gf2Mat { n: self.n, rows: [0; MAX_DIM] };
        let Some(deg) = p.degree() else {
            return acc;
        };
        for k in (0..=deg).rev() {
            acc = acc.mul_unchecked(self);
            if p.coeff(k) {
                acc = acc ^ id;
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.rows().iter().all(|&r| r == 0)
    }
}

/// Translate the second deletion of `A^{(i1,j1),(i2,j2)}` (indices into the
/// original matrix) to indices into `A^{(i1,j1)}`.
fn remap_second_deletion(n: usize, i1: usize, j1: usize, i2: usize, j2: usize) -> Result<(usize, usize)> {
    check_index(n, i1, j1)?;
    check_index(n, i2, j2)?;
    if i1 == i2 || j1 == j2 {
        return Err(Error::IndexOutOfRange { i: i2, j: j2, n });
    }
    let a = if i2 > i1 { i2 - 1 } else { i2 };
    let b = if j2 > j1 { j2 - 1 } else { j2 };
    Ok((a, b))
}

impl std::ops::BitXor for Gf2Mat {
    type Output = Gf2Mat;

    /// Entrywise sum. Panics on dimension mismatch.
    fn bitxor(mut self, rhs: Gf2Mat) -> Gf2Mat {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        for (a, b) in self.rows.iter_mut().zip(rhs.rows) {
            *a ^= b;
        }
        self
    }
}

impl fmt::Display for Gf2Mat {
    /// `n` lines of `n` characters from `{0,1}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, line) in self.row_strings().iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            f.write_str(line)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Mat({:?})", self.row_strings())
    }
}

impl Gf2Mat {
    fn row_strings(&self) -> Vec<String> {
        self.rows()
            .iter()
            .map(|&r| (0..self.n).map(|j| if (r >> j) & 1 == 1 { '1' } else { '0' }).collect())
            .collect()
    }

    fn from_row_strings<S: AsRef<str>>(lines: &[S]) -> Result<Gf2Mat> {
        let n = lines.len();
        let mut rows = Vec::with_capacity(n);
        for line in lines {
            let line = line.as_ref();
            if line.chars().count() != n {
                return Err(Error::Parse(format!("row {line:?} does not have {n} entries")));
            }
            let mut r = 0u32;
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => r |= 1 << j,
                    _ => return Err(Error::Parse(format!("invalid matrix entry {ch:?}"))),
                }
            }
            rows.push(r);
        }
        Gf2Mat::from_rows(n, &rows)
    }
}

impl FromStr for Gf2Mat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lines: Vec<&str> = s.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        Gf2Mat::from_row_strings(&lines)
    }
}

#[derive(Serialize, Deserialize)]
struct MatJson {
    n: usize,
    rows: Vec<String>,
}

impl Serialize for Gf2Mat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatJson { n: self.n, rows: self.row_strings() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Gf2Mat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MatJson::deserialize(deserializer)?;
        if raw.rows.len() != raw.n {
            return Err(serde::de::Error::custom(format!(
                "expected {} rows, found {}",
                raw.n,
                raw.rows.len()
            )));
        }
        Gf2Mat::from_row_strings(&raw.rows).map_err(serde::de::Error::custom)
    }
}

/// An `n × n` matrix over F_2[λ].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMat {
    n: usize,
    entries: Vec<Gf2Poly>,
}

impl PolyMat {
    pub fn from_entries(n: usize, entries: Vec<Gf2Poly>) -> Result<Self> {
        check_min("dimension", n, 1)?;
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch { left: n * n, right: entries.len() });
        }
        Ok(Self { n, entries })
    }

    /// `λ I_n`.
    pub fn lambda_identity(n: usize) -> Result<Self> {
        check_min("dimension", n, 1)?;
        let mut entries = vec![Gf2Poly::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Gf2Poly::x();
        }
        Ok(Self { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Gf2Poly {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Gf2Poly) {
        self.entries[(i - 1) * self.n + (j - 1)] = value;
    }

    pub fn minor_delete(&self, i: usize, j: usize) -> Result<PolyMat> {
        check_index(self.n, i, j)?;
        check_min("dimension", self.n, 2)?;
        let n = self.n;
        let entries = (0..n)
            .filter(|&r| r != i - 1)
            .flat_map(|r| (0..n).filter(move |&c| c != j - 1).map(move |c| (r, c)))
            .map(|(r, c)| self.entries[r * n + c].clone())
            .collect();
        Ok(PolyMat { n: n - 1, entries })
    }

    /// Deletion with both index pairs referring to `self`; see
    /// [`Gf2Mat::minor_delete_original`].
    pub fn minor_delete_original(&self, i1: usize, j1: usize, i2: usize, j2: usize) -> Result<PolyMat> {
        let (a, b) = remap_second_deletion(self.n, i1, j1, i2, j2)?;
        self.minor_delete(i1, j1)?.minor_delete(a, b)
    }

    /// Exact determinant in F_2[λ] by Bareiss elimination: every division
    /// by the previous pivot is exact.
    pub fn sym_det(&self) -> Gf2Poly {
        let n = self.n;
        let mut m: Vec<Vec<Gf2Poly>> = self.entries.chunks(n).map(<[Gf2Poly]>::to_vec).collect();
        let mut prev = Gf2Poly::one();
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return Gf2Poly::zero();
                };
                // Row swaps flip the sign, which is invisible in characteristic 2.
                m.swap(k, p);
            }
            let (top, bottom) = m.split_at_mut(k + 1);
            let pivot_row = &top[k];
            for row in bottom.iter_mut() {
                let lead = row[k].clone();
                for j in k + 1..n {
                    let num = &(&pivot_row[k] * &row[j]) + &(&lead * &pivot_row[j]);
                    let (q, r) = num.divmod(&prev).expect("pivot is nonzero");
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    row[j] = q;
                }
                row[k] = Gf2Poly::zero();
            }
            prev = m[k][k].clone();
        }
        m[n - 1][n - 1].clone()
    }
}

impl std::ops::Add for &PolyMat {
    type Output = PolyMat;

    /// Entrywise sum. Panics on dimension mismatch.
    fn add(self, rhs: &PolyMat) -> PolyMat {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect();
        PolyMat { n: self.n, entries }
    }
}
