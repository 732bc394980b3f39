//! Polynomials over F_2 with bit-packed coefficients.
//!
//! Bit `k` of the packed representation is the coefficient of `x^k`
//! (LSB-first). Storage is a vector of 64-bit limbs kept trimmed, so the
//! derived equality is structural equality of polynomials.
//!
//! ```text
//! 0x7   -> x^2+x+1
//! 0x13  -> x^4+x+1
//! 0x11b -> x^8+x^4+x^3+x+1
//! ```

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, BitXor, Mul};
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_cap, Error, Result};

/// Highest degree accepted by [`Gf2Poly::enumerate_irreducibles`].
pub const ENUMERATION_DEGREE_CAP: usize = 16;

/// Highest degree accepted by [`Gf2Poly::is_irreducible`] and by the
/// trial-division step of [`Gf2Poly::factor_as_power`]. Matches the matrix
/// dimension cap so every characteristic polynomial can be classified.
pub const IRREDUCIBILITY_DEGREE_CAP: usize = 24;

/// A polynomial in F_2[x].
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Gf2Poly {
    limbs: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Self { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_bits(1)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_bits(2)
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut p = Self::zero();
        p.flip(k);
        p
    }

    pub fn from_bits(bits: u64) -> Self {
        Self::from_limbs(vec![bits])
    }

    pub fn from_limbs(limbs: Vec<u64>) -> Self {
        let mut p = Self { limbs };
        p.trim();
        p
    }

    /// Sum of `x^e` over the given exponents (repeated exponents cancel).
    pub fn from_exponents(exponents: &[usize]) -> Self {
        let mut p = Self::zero();
        for &e in exponents {
            p.flip(e);
        }
        p
    }

    /// `x^n + 1`.
    pub fn x_n_plus_one(n: usize) -> Self {
        Self::from_exponents(&[n, 0])
    }

    fn trim(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    /// The packed coefficients when they fit a single word.
    pub fn to_u64(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0]),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, k: usize) -> bool {
        self.limbs
            .get(k / 64)
            .is_some_and(|limb| (limb >> (k % 64)) & 1 == 1)
    }

    /// Toggle the coefficient of `x^k`.
    pub fn flip(&mut self, k: usize) {
        let idx = k / 64;
        if idx >= self.limbs.len() {
            self.limbs.resize(idx + 1, 0);
        }
        self.limbs[idx] ^= 1 << (k % 64);
        self.trim();
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    /// Exponents of the nonzero terms, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.limbs.iter().enumerate().flat_map(|(li, &limb)| {
            let mut rest = limb;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(li * 64 + b)
            })
        })
    }

    /// `self ^= other << shift`.
    fn xor_shifted(&mut self, other: &Gf2Poly, shift: usize) {
        if other.is_zero() {
            return;
        }
        let (ls, bs) = (shift / 64, shift % 64);
        let needed = other.limbs.len() + ls + 1;
        if self.limbs.len() < needed {
            self.limbs.resize(needed, 0);
        }
        for (k, &limb) in other.limbs.iter().enumerate() {
            self.limbs[k + ls] ^= limb << bs;
            if bs != 0 {
                self.limbs[k + ls + 1] ^= limb >> (64 - bs);
            }
        }
        self.trim();
    }

    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        if let (Some(a), Some(b)) = (self.to_u64(), other.to_u64()) {
            if a.leading_zeros() + b.leading_zeros() >= 63 {
                return Gf2Poly::from_bits(clmul_u64(a, b));
            }
        }
        let (short, long) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Gf2Poly::zero();
        for e in short.exponents() {
            acc.xor_shifted(long, e);
        }
        acc
    }

    /// Quotient and remainder with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Gf2Poly) -> Result<(Gf2Poly, Gf2Poly)> {
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        if let (Some(a), Some(b)) = (self.to_u64(), divisor.to_u64()) {
            let (q, r) = divmod_u64(a, b);
            return Ok((Gf2Poly::from_bits(q), Gf2Poly::from_bits(r)));
        }
        let mut rem = self.clone();
        let mut quot = Gf2Poly::zero();
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            rem.xor_shifted(divisor, dr - db);
            quot.flip(dr - db);
        }
        Ok((quot, rem))
    }

    pub fn rem(&self, divisor: &Gf2Poly) -> Result<Gf2Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    pub fn divides(&self, other: &Gf2Poly) -> bool {
        !self.is_zero() && other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    pub fn gcd(&self, other: &Gf2Poly) -> Gf2Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a
    }

    pub fn lcm(&self, other: &Gf2Poly) -> Gf2Poly {
        if self.is_zero() || other.is_zero() {
            return Gf2Poly::zero();
        }
        let g = self.gcd(other);
        let (q, _) = self.divmod(&g).expect("gcd is nonzero");
        Gf2Poly::mul(&q, other)
    }

    /// Frobenius square: coefficient `k` moves to `2k`.
    pub fn square(&self) -> Gf2Poly {
        Gf2Poly::from_exponents(&self.exponents().map(|e| 2 * e).collect::<Vec<_>>())
    }

    /// `g` with `g^2 = self`, when every exponent of `self` is even.
    pub fn sqrt_if_square(&self) -> Option<Gf2Poly> {
        let exps: Vec<usize> = self.exponents().collect();
        exps.iter()
            .all(|e| e % 2 == 0)
            .then(|| Gf2Poly::from_exponents(&exps.iter().map(|e| e / 2).collect::<Vec<_>>()))
    }

    /// `self^d` by square-and-multiply.
    pub fn pow(&self, mut d: usize) -> Gf2Poly {
        let mut base = self.clone();
        let mut acc = Gf2Poly::one();
        while d > 0 {
            if d & 1 == 1 {
                acc = Gf2Poly::mul(&acc, &base);
            }
            d >>= 1;
            if d > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Smallest-degree irreducible factor of degree at most `deg/2`, found by
    /// trial division against the irreducible table.
    fn smallest_proper_factor(&self) -> Option<Gf2Poly> {
        let deg = self.degree()?;
        let table = small_irreducibles();
        table
            .iter()
            .take_while(|f| f.degree().is_some_and(|df| 2 * df <= deg))
            .find(|f| f.divides(self))
            .cloned()
    }

    /// Irreducibility over F_2 by trial division against every irreducible of
    /// degree at most `deg/2`.
    pub fn is_irreducible(&self) -> Result<bool> {
        Ok(self.nontrivial_factor()?.is_none())
    }

    /// A nontrivial factor, if `self` is reducible.
    pub fn nontrivial_factor(&self) -> Result<Option<Gf2Poly>> {
        let deg = self.degree().ok_or(Error::ConstantPolynomial)?;
        if deg == 0 {
            return Err(Error::ConstantPolynomial);
        }
        check_cap("degree", deg, IRREDUCIBILITY_DEGREE_CAP)?;
        Ok(self.smallest_proper_factor())
    }

    /// All irreducibles of exactly `degree`, optionally restricted to weight
    /// at most `max_weight`, in ascending bit order.
    pub fn enumerate_irreducibles(degree: usize, max_weight: Option<usize>) -> Result<Vec<Gf2Poly>> {
        crate::error::check_min("degree", degree, 1)?;
        check_cap("degree", degree, ENUMERATION_DEGREE_CAP)?;
        let lo = 1u64 << degree;
        let out = (lo..lo << 1)
            .filter(|bits| max_weight.is_none_or(|w| bits.count_ones() as usize <= w))
            .map(Gf2Poly::from_bits)
            .filter(|p| p.smallest_proper_factor().is_none())
            .collect();
        Ok(out)
    }

    /// Decompose `self = f^d` with `f` irreducible, if possible.
    ///
    /// Squares are stripped first (all exponents even means `self = g^2`),
    /// then the square-free remainder is trial-divided.
    pub fn factor_as_power(&self) -> Result<Option<(Gf2Poly, usize)>> {
        match self.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(_) => {}
        }
        let mut base = self.clone();
        let mut mult = 1;
        while let Some(root) = base.sqrt_if_square() {
            base = root;
            mult *= 2;
        }
        let Some(factor) = base.nontrivial_factor()? else {
            return Ok(Some((base, mult)));
        };
        let mut rest = base;
        let mut e = 0;
        loop {
            let (q, r) = rest.divmod(&factor)?;
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        Ok(rest.is_one().then_some((factor, e * mult)))
    }

    /// Lowercase hex of the packed coefficients, with `0x` prefix.
    pub fn to_hex(&self) -> String {
        format!("{self:#x}")
    }

    fn parse_hex(digits: &str) -> Result<Gf2Poly> {
        if digits.is_empty() {
            return Err(Error::Parse("empty hex literal".into()));
        }
        let mut limbs = vec![0u64; digits.len().div_ceil(16)];
        for (pos, ch) in digits.chars().rev().enumerate() {
            let v = ch
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("invalid hex digit {ch:?}")))?
                as u64;
            limbs[pos / 16] |= v << (4 * (pos % 16));
        }
        Ok(Gf2Poly::from_limbs(limbs))
    }
}

fn clmul_u64(a: u64, b: u64) -> u64 {
    let mut acc = 0;
    let mut rest = b;
    while rest != 0 {
        acc ^= a << rest.trailing_zeros();
        rest &= rest - 1;
    }
    acc
}

fn divmod_u64(mut a: u64, b: u64) -> (u64, u64) {
    let db = 63 - b.leading_zeros();
    let mut q = 0;
    while a != 0 {
        let da = 63 - a.leading_zeros();
        if da < db {
            break;
        }
        a ^= b << (da - db);
        q |= 1 << (da - db);
    }
    (q, a)
}

/// Irreducibles of degree at most `IRREDUCIBILITY_DEGREE_CAP / 2`, ascending.
fn small_irreducibles() -> &'static [Gf2Poly] {
    static TABLE: OnceLock<Vec<Gf2Poly>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let max_deg = IRREDUCIBILITY_DEGREE_CAP / 2;
        let mut found: Vec<u64> = Vec::new();
        for bits in 2u64..(1 << (max_deg + 1)) {
            let deg = 63 - bits.leading_zeros();
            let reducible = found
                .iter()
                .take_while(|&&f| 2 * (63 - f.leading_zeros()) <= deg)
                .any(|&f| divmod_u64(bits, f).1 == 0);
            if !reducible {
                found.push(bits);
            }
        }
        found.into_iter().map(Gf2Poly::from_bits).collect()
    })
}

impl Ord for Gf2Poly {
    /// Numeric order of the packed coefficient bit strings.
    fn cmp(&self, other: &Self) -> Ordering {
        self.limbs
            .len()
            .cmp(&other.limbs.len())
            .then_with(|| self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
    }
}

impl PartialOrd for Gf2Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitXor for &Gf2Poly {
    type Output = Gf2Poly;

    fn bitxor(self, rhs: &Gf2Poly) -> Gf2Poly {
        let (long, short) = if self.limbs.len() >= rhs.limbs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut limbs = long.limbs.clone();
        for (l, s) in limbs.iter_mut().zip(&short.limbs) {
            *l ^= s;
        }
        Gf2Poly::from_limbs(limbs)
    }
}

impl Add for &Gf2Poly {
    type Output = Gf2Poly;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: &Gf2Poly) -> Gf2Poly {
        self ^ rhs
    }
}

impl Add for Gf2Poly {
    type Output = Gf2Poly;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf2Poly) -> Gf2Poly {
        &self ^ &rhs
    }
}

impl Mul for &Gf2Poly {
    type Output = Gf2Poly;

    fn mul(self, rhs: &Gf2Poly) -> Gf2Poly {
        Gf2Poly::mul(self, rhs)
    }
}

impl Mul for Gf2Poly {
    type Output = Gf2Poly;

    fn mul(self, rhs: Gf2Poly) -> Gf2Poly {
        Gf2Poly::mul(&self, &rhs)
    }
}

impl fmt::Display for Gf2Poly {
    /// Human-readable form, highest term first: `x^8+x^4+x^3+x+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let exps: Vec<usize> = self.exponents().collect();
        for (k, &e) in exps.iter().rev().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

impl fmt::LowerHex for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if f.alternate() {
            f.write_str("0x")?;
        }
        let Some((top, rest)) = self.limbs.split_last() else {
            return f.write_str("0");
        };
        write!(f, "{top:x}")?;
        for limb in rest.iter().rev() {
            write!(f, "{limb:016x}")?;
        }
        Ok(())
    }
}

impl FromStr for Gf2Poly {
    type Err = Error;

    /// Accepts `x^k` terms joined by `+` (`1` for the constant, `x` for
    /// `x^1`), or a hex literal `0x...` whose bit `k` is the coefficient of
    /// `x^k`. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            return Gf2Poly::parse_hex(hex);
        }
        if s == "0" {
            return Ok(Gf2Poly::zero());
        }
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut p = Gf2Poly::zero();
        for term in s.split('+') {
            let e = match term {
                "1" => 0,
                "x" => 1,
                _ => term
                    .strip_prefix("x^")
                    .and_then(|e| e.parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse(format!("invalid term {term:?}")))?,
            };
            p.flip(e);
        }
        Ok(p)
    }
}

impl Serialize for Gf2Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Gf2Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    #[test]
    fn addition() {
        assert_eq!(p("x^2+1") + p("x^2+x"), p("x+1"));
        let q = p("x^5+x^2+1");
        assert!((&q + &q).is_zero());
        assert_eq!(p("x^4+x+1") + Gf2Poly::zero(), p("x^4+x+1"));
    }

    #[test]
    fn multiplication() {
        assert_eq!(p("x+1") * p("x+1"), p("x^2+1"));
        assert_eq!(p("x^2+x+1") * p("x+1"), p("x^3+1"));
        let q = p("x^7+x^3+1");
        assert_eq!(&q * &Gf2Poly::one(), q);
        // multi-limb path
        let big = Gf2Poly::monomial(70) + Gf2Poly::one();
        assert_eq!(big.square(), Gf2Poly::monomial(140) + Gf2Poly::one());
        assert_eq!(&big * &big, big.square());
    }

    #[test]
    fn division() {
        assert_eq!(p("x^3+1").divmod(&p("x+1")).unwrap(), (p("x^2+x+1"), Gf2Poly::zero()));
        let q = p("x^6+x+1");
        assert_eq!(q.divmod(&q).unwrap(), (Gf2Poly::one(), Gf2Poly::zero()));
        assert_eq!(p("x^2").divmod(&p("x^3+1")).unwrap(), (Gf2Poly::zero(), p("x^2")));
        assert_eq!(q.divmod(&Gf2Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn weights() {
        assert_eq!(p("x^4+x+1").weight(), 3);
        assert_eq!(p("x^8+x^4+x^3+x+1").weight(), 5);
        assert_eq!(Gf2Poly::zero().weight(), 0);
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(Gf2Poly::zero().degree(), None);
        assert_eq!(Gf2Poly::one().degree(), Some(0));
        assert_eq!(Gf2Poly::monomial(130).degree(), Some(130));
    }

    #[test]
    fn irreducibility() {
        assert!(p("x^4+x+1").is_irreducible().unwrap());
        assert!(p("x^4+x^3+x^2+x+1").is_irreducible().unwrap());
        assert!(!p("x^2+1").is_irreducible().unwrap());
        assert!(p("x").is_irreducible().unwrap());
        assert_eq!(Gf2Poly::one().is_irreducible(), Err(Error::ConstantPolynomial));
        assert_eq!(Gf2Poly::zero().is_irreducible(), Err(Error::ConstantPolynomial));
        assert!(matches!(
            Gf2Poly::monomial(25).is_irreducible(),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn enumeration() {
        assert_eq!(Gf2Poly::enumerate_irreducibles(2, None).unwrap(), vec![p("x^2+x+1")]);
        assert_eq!(
            Gf2Poly::enumerate_irreducibles(3, None).unwrap(),
            vec![p("x^3+x+1"), p("x^3+x^2+1")]
        );
        assert!(Gf2Poly::enumerate_irreducibles(8, Some(3)).unwrap().is_empty());
        assert!(Gf2Poly::enumerate_irreducibles(17, None).is_err());
        assert!(Gf2Poly::enumerate_irreducibles(0, None).is_err());
        // Necklace counts: 2, 1, 2, 3, 6, 9, 18, 30
        let counts: Vec<usize> = (1..=8)
            .map(|d| Gf2Poly::enumerate_irreducibles(d, None).unwrap().len())
            .collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6, 9, 18, 30]);
    }

    #[test]
    fn perfect_powers() {
        let f = p("x^2+x+1");
        assert_eq!(p("x^4+x^2+1").factor_as_power().unwrap(), Some((f, 2)));
        assert_eq!(p("x^4+x+1").factor_as_power().unwrap(), Some((p("x^4+x+1"), 1)));
        assert_eq!(p("x^3+x^2").factor_as_power().unwrap(), None);
        assert_eq!(p("x^6+x^5+x^3+x^2+x+1").factor_as_power().unwrap(), None); // (x^2+x+1)(x^4+x+1)
        assert_eq!(p("x^3+x^2+x+1").factor_as_power().unwrap(), Some((p("x+1"), 3)));
    }

    #[test]
    fn powers() {
        assert_eq!(p("x+1").pow(2), p("x^2+1"));
        assert_eq!(p("x^3+x").pow(0), Gf2Poly::one());
        let cube = p("x^4+x^3+x^2+x+1").pow(3);
        assert_eq!(cube.degree(), Some(12));
        assert!(cube.weight() >= 5);
    }

    #[test]
    fn text_forms() {
        let aes = p("x^8+x^4+x^3+x+1");
        assert_eq!(aes.to_string(), "x^8+x^4+x^3+x+1");
        assert_eq!(aes.to_hex(), "0x11b");
        assert_eq!(p("0x11b"), aes);
        assert_eq!(p(" x^8 + x^4+x^3 +x+1 "), aes);
        assert_eq!(p("0x0"), Gf2Poly::zero());
        let wide = Gf2Poly::monomial(64) + Gf2Poly::one();
        assert_eq!(wide.to_hex(), "0x10000000000000001");
        assert_eq!(p(&wide.to_hex()), wide);
        assert!("x^".parse::<Gf2Poly>().is_err());
        assert!("y+1".parse::<Gf2Poly>().is_err());
        assert!("0xg".parse::<Gf2Poly>().is_err());
        assert!("".parse::<Gf2Poly>().is_err());
        let json = serde_json::to_string(&aes).unwrap();
        assert_eq!(json, "\"x^8+x^4+x^3+x+1\"");
        assert_eq!(serde_json::from_str::<Gf2Poly>(&json).unwrap(), aes);
    }

    #[test]
    fn ordering_is_numeric() {
        let mut v = vec![p("x^3+1"), p("x"), Gf2Poly::monomial(64), p("x^2+x+1")];
        v.sort();
        assert_eq!(v, vec![p("x"), p("x^2+x+1"), p("x^3+1"), Gf2Poly::monomial(64)]);
    }

    /// Independent oracle: trial division by every polynomial of degree
    /// 1..=deg/2 on raw words.
    fn naive_irreducible(bits: u64) -> bool {
        let deg = 63 - bits.leading_zeros();
        (2u64..1 << (deg / 2 + 1)).all(|d| {
            let mut a = bits;
            let dd = 63 - d.leading_zeros();
            while a != 0 && 63 - a.leading_zeros() >= dd {
                a ^= d << (63 - a.leading_zeros() - dd);
            }
            a != 0
        })
    }

    #[test]
    fn irreducibility_matches_trial_division_oracle() {
        for bits in 2u64..(1 << 11) {
            assert_eq!(
                Gf2Poly::from_bits(bits).is_irreducible().unwrap(),
                naive_irreducible(bits),
                "{bits:#x}"
            );
        }
    }

    #[test]
    fn power_round_trip() {
        for deg in 1..=5 {
            for f in Gf2Poly::enumerate_irreducibles(deg, None).unwrap() {
                for d in 1..=3 {
                    assert_eq!(f.pow(d).factor_as_power().unwrap(), Some((f.clone(), d)));
                }
            }
        }
    }

    fn arb_poly() -> impl Strategy<Value = Gf2Poly> {
        prop::collection::vec(any::<u64>(), 0..3).prop_map(Gf2Poly::from_limbs)
    }

    proptest! {
        #[test]
        fn divmod_reconstructs(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divmod(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn square_keeps_weight(a in arb_poly()) {
            prop_assert_eq!(a.pow(2).weight(), a.weight());
            prop_assert_eq!(a.pow(2), &a * &a);
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<Gf2Poly>().unwrap(), a.clone());
            prop_assert_eq!(a.to_hex().parse::<Gf2Poly>().unwrap(), a);
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let g = a.gcd(&b);
            prop_assert!(g.divides(&a) && g.divides(&b));
            let l = a.lcm(&b);
            prop_assert!(a.divides(&l) && b.divides(&l));
        }
    }
}
