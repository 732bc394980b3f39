//! Straight-line XOR programs.
//!
//! A product `P · F_1 ⋯ F_t` with `F_k = I + E_{i_k,j_k}` acts on a column
//! vector as `t` in-place assignments `w_{i_k} ^= w_{j_k}`, applied for
//! `k = t, t-1, …, 1`, followed by the wire relabeling of `P`. The XOR count
//! of the program is exactly `t`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_cap, Error, Result};
use crate::gf2mat::Gf2Mat;
use crate::xorform::XorProduct;

/// Largest wire count accepted by [`Equivalence::Exhaustive`].
pub const EXHAUSTIVE_WIRE_CAP: usize = 12;

/// Default number of random inputs for [`Equivalence::Sample`].
pub const DEFAULT_SAMPLES: usize = 10_000;

/// In-place XOR assignments on `n` wires followed by a relabeling.
///
/// Wires are 1-based. `steps[k] = (a, b)` means `w_a ^= w_b`. After the
/// steps, output `r` is read from wire `output_perm[r-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XorProgram {
    pub n: usize,
    pub steps: Vec<(usize, usize)>,
    pub output_perm: Vec<usize>,
}

/// Translate a product into the program that computes `realize(x) · v`.
pub fn emit_program(x: &XorProduct) -> XorProgram {
    let n = x.dim();
    let steps = x.factors().iter().rev().copied().collect();
    // Row r of the permutation part has its single one in the column
    // holding wire output_perm[r-1].
    let p = x.cycle_type().normal_form().expect("validated cycle type");
    let output_perm = p
        .rows()
        .iter()
        .map(|r| r.trailing_zeros() as usize + 1)
        .collect();
    XorProgram { n, steps, output_perm }
}

impl XorProgram {
    /// Number of XOR gates.
    pub fn cost(&self) -> usize {
        self.steps.len()
    }

    /// Run on packed wires (bit `k` = wire `k+1`).
    pub fn simulate_word(&self, v: u32) -> u32 {
        let mut w = v;
        for &(a, b) in &self.steps {
            w ^= ((w >> (b - 1)) & 1) << (a - 1);
        }
        self.output_perm
            .iter()
            .enumerate()
            .fold(0, |acc, (r, &src)| acc | (((w >> (src - 1)) & 1) << r))
    }

    pub fn simulate(&self, v: &[bool]) -> Result<Vec<bool>> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: v.len() });
        }
        let word = v.iter().enumerate().fold(0u32, |acc, (k, &b)| acc | ((b as u32) << k));
        let out = self.simulate_word(word);
        Ok((0..self.n).map(|k| (out >> k) & 1 == 1).collect())
    }

    /// Compare against `A · v`.
    pub fn check_equivalence(&self, a: &Gf2Mat, mode: Equivalence) -> Result<bool> {
        if a.dim() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: a.dim() });
        }
        let agrees = |v: u32| self.simulate_word(v) == a.mul_vec(v);
        match mode {
            Equivalence::Exhaustive => {
                check_cap("wires", self.n, EXHAUSTIVE_WIRE_CAP)?;
                Ok((0u32..1 << self.n).all(agrees))
            }
            Equivalence::Sample { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mask = if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 };
                Ok((0..count).all(|_| agrees(rng.random::<u32>() & mask)))
            }
        }
    }

    /// Netlist text: one `x[a] ^= x[b]` line per step, then
    /// `out = x[π(1)], …, x[π(n)]`.
    pub fn to_netlist(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for XorProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(a, b) in &self.steps {
            writeln!(f, "x[{a}] ^= x[{b}]")?;
        }
        let outs: Vec<String> = self.output_perm.iter().map(|k| format!("x[{k}]")).collect();
        writeln!(f, "out = {}", outs.join(", "))
    }
}

/// How [`XorProgram::check_equivalence`] chooses inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// All `2^n` inputs.
    Exhaustive,
    /// `count` uniformly random inputs from a seeded generator.
    Sample { count: usize, seed: u64 },
}
