//! Concrete set-function families.
//!
//! [`FacilityMatrix`] is the workhorse: each of `m` customers is served by
//! the best open location among the chosen columns, and the objective sums
//! that service level over customers. It is monotone and submodular for any
//! non-negative matrix. [`ModularWeights`] is the additive special case
//! (marginal gains never change), useful as the equality boundary of the
//! diminishing-returns inequality. [`CardinalityProfile`] evaluates to
//! `g(|A|)` and is the simplest way to craft functions that violate the
//! properties: a convex profile such as `|A|²` fails every submodularity
//! check.

use crate::error::Error;
use crate::function::SetFunction;
use crate::set::Subset;
use crate::Result;

/// Non-negative `m×n` matrix; column `j` is a candidate location, row `i` a
/// customer. `f(A) = Σ_i max_{j∈A} M[i][j]`, and `f(∅) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FacilityMatrix {
    m: usize,
    n: usize,
    /// Row-major, length `m * n`.
    entries: Vec<f64>,
}

impl FacilityMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyGroundSet);
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        let m = rows.len();
        let mut entries = Vec::with_capacity(m * n);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::RaggedMatrix {
                    row,
                    expected: n,
                    got: r.len(),
                });
            }
            for (col, &value) in r.iter().enumerate() {
                if !value.is_finite() {
                    return Err(Error::NonFiniteEntry { row, col });
                }
                if value < 0.0 {
                    return Err(Error::NegativeEntry { row, col, value });
                }
                entries.push(value);
            }
        }
        Ok(FacilityMatrix { m, n, entries })
    }

    pub fn customers(&self) -> usize {
        self.m
    }

    pub fn locations(&self) -> usize {
        self.n
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.n + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks_exact(self.n)
    }
}

impl SetFunction for FacilityMatrix {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn eval_raw(&self, a: &Subset) -> f64 {
        // Row maxima are recomputed from scratch on purpose: one call, one
        // honest unit of work, so evaluation counts mean what they say.
        let mut total = 0.0;
        for row in self.rows() {
            let mut best = f64::NEG_INFINITY;
            for j in a.members() {
                if row[j] > best {
                    best = row[j];
                }
            }
            total += best;
        }
        total
    }
}

/// Additive weights: `f(A) = Σ_{j∈A} w_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularWeights {
    w: Vec<f64>,
}

impl ModularWeights {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::EmptyGroundSet);
        }
        for (index, &value) in w.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteWeight { index });
            }
            if value < 0.0 {
                return Err(Error::NegativeWeight { index, value });
            }
        }
        Ok(ModularWeights { w })
    }

    pub fn weights(&self) -> &[f64] {
        &self.w
    }
}

impl SetFunction for ModularWeights {
    fn ground_size(&self) -> usize {
        self.w.len()
    }

    fn eval_raw(&self, a: &Subset) -> f64 {
        a.members().map(|j| self.w[j]).sum()
    }
}

/// Size-only function: `f(A) = g(|A|)` with `g(0) = 0` implicit.
///
/// `values[i]` holds `g(i + 1)`. No sign or shape constraint is imposed;
/// the point of this family is to build functions that are NOT monotone or
/// NOT submodular on demand (`f(A) = |A|²` via `[1, 4, 9, ..]`).
#[derive(Debug, Clone, PartialEq)]
pub struct CardinalityProfile {
    values: Vec<f64>,
}

impl CardinalityProfile {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyGroundSet);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteWeight { index });
            }
        }
        Ok(CardinalityProfile { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl SetFunction for CardinalityProfile {
    fn ground_size(&self) -> usize {
        self.values.len()
    }

    fn eval_raw(&self, a: &Subset) -> f64 {
        self.values[a.len() - 1]
    }
}

/// Any of the instance kinds the toolkit works with, behind one type so the
/// CLI and test drivers can stay generic-free where it helps.
#[derive(Debug, Clone, PartialEq)]
pub enum Objective {
    Facility(FacilityMatrix),
    Modular(ModularWeights),
    Profile(CardinalityProfile),
}

impl SetFunction for Objective {
    fn ground_size(&self) -> usize {
        match self {
            Objective::Facility(f) => f.ground_size(),
            Objective::Modular(f) => f.ground_size(),
            Objective::Profile(f) => f.ground_size(),
        }
    }

    fn eval_raw(&self, a: &Subset) -> f64 {
        match self {
            Objective::Facility(f) => f.eval_raw(a),
            Objective::Modular(f) => f.eval_raw(a),
            Objective::Profile(f) => f.eval_raw(a),
        }
    }
}
