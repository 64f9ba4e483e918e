//! XOR-linear systems over GF(2) and a Gaussian-elimination solver.

use crate::error::{Error, Result};

/// `x[vars[0]] ⊕ x[vars[1]] ⊕ … = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub vars: Vec<usize>,
    pub rhs: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2System {
    unknowns: usize,
    equations: Vec<Equation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// One solution, every free variable pinned to 0.
    pub values: Vec<bool>,
    pub rank: usize,
    pub free_vars: Vec<usize>,
}

impl Solution {
    pub fn value(&self, var: usize) -> bool {
        self.values[var]
    }
}

impl Gf2System {
    pub fn new(unknowns: usize) -> Self {
        Gf2System {
            unknowns,
            equations: Vec::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// Adds an equation. Repeated variables cancel in pairs.
    pub fn push(&mut self, vars: &[usize], rhs: bool) -> Result<()> {
        if let Some(&bad) = vars.iter().find(|&&v| v >= self.unknowns) {
            return Err(Error::Domain(format!(
                "variable {bad} out of range for {} unknowns",
                self.unknowns
            )));
        }
        self.equations.push(Equation {
            vars: vars.to_vec(),
            rhs,
        });
        Ok(())
    }

    /// True when `values` satisfies every equation.
    pub fn is_satisfied_by(&self, values: &[bool]) -> bool {
        self.equations
            .iter()
            .all(|eq| eq.vars.iter().fold(false, |acc, &v| acc ^ values[v]) == eq.rhs)
    }

    pub fn solve(&self) -> Result<Solution> {
        solve_gf2(self)
    }
}

/// Dense bit row: coefficient words followed by the right-hand side.
#[derive(Clone)]
struct Row {
    bits: Vec<u64>,
    rhs: bool,
    origin: usize,
}

impl Row {
    #[inline]
    fn get(&self, col: usize) -> bool {
        self.bits[col / 64] >> (col % 64) & 1 == 1
    }

    fn xor_with(&mut self, other: &Row) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
        self.rhs ^= other.rhs;
    }

    fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }
}

/// Reduced row echelon elimination.
///
/// Returns the canonical solution (free variables = 0), the rank and the
/// free-variable list, or [`Error::Inconsistent`] naming an input equation
/// that reduced to `0 = 1`.
pub fn solve_gf2(system: &Gf2System) -> Result<Solution> {
    let n = system.unknowns;
    let words = n.div_ceil(64).max(1);
    let mut rows: Vec<Row> = system
        .equations
        .iter()
        .enumerate()
        .map(|(origin, eq)| {
            let mut bits = vec![0u64; words];
            for &v in &eq.vars {
                bits[v / 64] ^= 1 << (v % 64);
            }
            Row {
                bits,
                rhs: eq.rhs,
                origin,
            }
        })
        .collect();

    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut next = 0;
    for col in 0..n {
        let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(next, found);
        let pivot = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row.get(col) {
                row.xor_with(&pivot);
            }
        }
        pivots.push((next, col));
        next += 1;
    }

    if let Some(bad) = rows[next..].iter().find(|r| r.rhs && r.is_zero()) {
        return Err(Error::Inconsistent { equation: bad.origin });
    }

    let mut values = vec![false; n];
    let mut is_pivot = vec![false; n];
    for &(r, col) in &pivots {
        // Fully reduced, and free variables are zero, so the pivot equals rhs.
        values[col] = rows[r].rhs;
        is_pivot[col] = true;
    }
    let free_vars = (0..n).filter(|&c| !is_pivot[c]).collect();
    Ok(Solution {
        values,
        rank: pivots.len(),
        free_vars,
    })
}
