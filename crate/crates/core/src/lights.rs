//! Unbalancing lights: maximise `sum_ij a_ij x_i y_j` over sign vectors.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;

use crate::rng;
use crate::tangle::DecompositionMatrix;
use crate::tree::VertexId;
use crate::{Error, Result};

pub const EXACT_LIMIT: usize = 22;

/// Square matrix of `+1`/`-1` entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignMatrix {
    n: usize,
    entries: Vec<i8>,
}

impl SignMatrix {
    pub fn new(n: usize, entries: Vec<i8>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Invalid(format!("{} entries for a {n}x{n} matrix", entries.len())));
        }
        if entries.iter().any(|&a| a != 1 && a != -1) {
            return Err(Error::Invalid("matrix entries must be +1 or -1".into()));
        }
        Ok(SignMatrix { n, entries })
    }

    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("matrix must be square".into()));
        }
        SignMatrix::new(n, rows.concat())
    }

    pub fn ones(n: usize) -> Self {
        SignMatrix { n, entries: vec![1; n * n] }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let entries = (0..n * n).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect();
        SignMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// `sum_ij a_ij x_i y_j`.
    pub fn value(&self, x: &[i8], y: &[i8]) -> i64 {
        (0..self.n)
            .map(|i| x[i] as i64 * self.row(i).iter().zip(y).map(|(&a, &b)| (a * b) as i64).sum::<i64>())
            .sum()
    }

    /// Entrywise `a_ij * y_j`.
    pub fn negate_columns(&self, y: &[i8]) -> SignMatrix {
        let entries = self.entries.iter().enumerate().map(|(k, &a)| a * y[k % self.n]).collect();
        SignMatrix { n: self.n, entries }
    }

    pub fn negate_row(&self, i: usize) -> SignMatrix {
        let mut m = self.clone();
        for a in &mut m.entries[i * self.n..(i + 1) * self.n] {
            *a = -*a;
        }
        m
    }

    /// Majority row signs for a column vector: `x_i = sign(row_i . y)`, zero to `+1`.
    pub fn majority(&self, y: &[i8]) -> Vec<i8> {
        (0..self.n)
            .map(|i| {
                let s: i64 = self.row(i).iter().zip(y).map(|(&a, &b)| (a * b) as i64).sum();
                if s >= 0 {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }
}

impl fmt::Display for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<&str> = self.row(i).iter().map(|&a| if a > 0 { "+1" } else { "-1" }).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for SignMatrix {
    type Err = Error;

    /// Whitespace-separated rows of `+1`/`1`/`-1` (or `+`/`-`), one row per line.
    fn from_str(s: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (no, line) in s.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| match tok {
                    "+1" | "1" | "+" => Ok(1),
                    "-1" | "-" => Ok(-1),
                    _ => Err(Error::Format { line: no + 1, msg: format!("bad entry '{tok}'") }),
                })
                .collect::<Result<Vec<i8>>>()?;
            rows.push(row);
        }
        SignMatrix::from_rows(&rows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GbSolution {
    pub value: i64,
    pub x: Vec<i8>,
    pub y: Vec<i8>,
}

/// Maximum over all sign vectors. Enumerates `y` in Gray-code order starting
/// from all `+1`, keeping the row sums up to date, and sets `x` by majority.
/// Returns the first maximiser met.
pub fn gb_exact(m: &SignMatrix) -> Result<GbSolution> {
    let n = m.n;
    if n > EXACT_LIMIT {
        return Err(Error::SizeLimit { what: "matrix size", got: n, limit: EXACT_LIMIT });
    }
    let mut y = vec![1i8; n];
    let mut sums: Vec<i64> = (0..n).map(|i| m.row(i).iter().map(|&a| a as i64).sum()).collect();
    let score = |sums: &[i64]| sums.iter().map(|s| s.abs()).sum::<i64>();
    let mut best = (score(&sums), y.clone());
    for step in 1u64..(1u64 << n) {
        let j = step.trailing_zeros() as usize;
        for (i, s) in sums.iter_mut().enumerate() {
            *s -= 2 * (m.get(i, j) * y[j]) as i64;
        }
        y[j] = -y[j];
        let v = score(&sums);
        if v > best.0 {
            best = (v, y.clone());
        }
    }
    let (value, y) = best;
    let x = m.majority(&y);
    debug_assert_eq!(m.value(&x, &y), value);
    Ok(GbSolution { value, x, y })
}

/// One random column vector with majority rows; the value is never negative.
pub fn gb_greedy(m: &SignMatrix, seed: u64) -> GbSolution {
    let mut rng = rng::from_seed(seed);
    let y: Vec<i8> = (0..m.n).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect();
    let x = m.majority(&y);
    GbSolution { value: m.value(&x, &y), x, y }
}

/// `sqrt(2 / pi) * n^(3/2)`.
pub fn asymptotic_scale(n: usize) -> f64 {
    (2.0 / std::f64::consts::PI).sqrt() * (n as f64).powf(1.5)
}

/// Mean greedy value over `trials` independent random `n x n` matrices, each
/// with one random column vector. Trial `k` uses seeds derived from `(seed, k)`,
/// so the result does not depend on the thread count.
pub fn greedy_mean(n: usize, trials: usize, seed: u64) -> f64 {
    let total: i64 = (0..trials as u64)
        .into_par_iter()
        .map(|k| {
            let s = rng::derive_seed(seed, k);
            let m = SignMatrix::random(n, &mut rng::from_seed(s));
            gb_greedy(&m, rng::derive_seed(s, 1)).value
        })
        .sum();
    total as f64 / trials as f64
}

/// The decomposition matrix exported as a plain integer matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegerMatrixReport {
    /// Right-tree internal vertex of each row.
    pub rows: Vec<VertexId>,
    /// Left-tree internal vertex of each column.
    pub cols: Vec<VertexId>,
    pub entries: Vec<Vec<i64>>,
    pub zero_fraction: f64,
    /// Row sums at the special vertices of the right tree.
    pub special_row_sums: Vec<(VertexId, i64)>,
    pub total: i64,
}

/// Exports `a[x][u]`. Unlike the `+1`/`-1` game most cells are typically zero,
/// so the random-sign argument for sign matrices does not carry over directly.
pub fn from_decomposition(m: &DecompositionMatrix) -> IntegerMatrixReport {
    let dim = m.dim();
    let entries: Vec<Vec<i64>> = (0..dim).map(|x| m.row(x).to_vec()).collect();
    let zeros = entries.iter().flatten().filter(|&&a| a == 0).count();
    let special = m.base().tanglegram().right().special_report().special;
    IntegerMatrixReport {
        rows: (0..dim).collect(),
        cols: (0..dim).collect(),
        zero_fraction: if dim == 0 { 0.0 } else { zeros as f64 / (dim * dim) as f64 },
        special_row_sums: special.iter().map(|&x| (x, m.row_sum(x))).collect(),
        total: m.total(),
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_examples() {
        assert_eq!(gb_exact(&SignMatrix::ones(3)).unwrap().value, 9);
        let m = SignMatrix::from_rows(&[vec![1, -1], vec![-1, 1]]).unwrap();
        let s = gb_exact(&m).unwrap();
        assert_eq!(s.value, 4);
        assert_eq!(m.value(&s.x, &s.y), 4);
        assert_eq!(gb_exact(&SignMatrix::new(1, vec![-1]).unwrap()).unwrap().value, 1);
        assert!(gb_exact(&SignMatrix::ones(23)).is_err());
    }

    #[test]
    fn two_by_two_maximisers() {
        // all 16 sign pairs: value 4 exactly when x = +-(1,-1) and y = +-(1,-1) with matching sign product
        let m = SignMatrix::from_rows(&[vec![1, -1], vec![-1, 1]]).unwrap();
        let signs = [[1i8, 1], [1, -1], [-1, 1], [-1, -1]];
        let mut best = i64::MIN;
        for x in &signs {
            for y in &signs {
                best = best.max(m.value(x, y));
            }
        }
        assert_eq!(best, 4);
        assert_eq!(m.value(&[1, -1], &[1, -1]), 4);
    }

    #[test]
    fn greedy_on_ones() {
        let m = SignMatrix::ones(5);
        for seed in 0..20 {
            let s = gb_greedy(&m, seed);
            let col: i64 = s.y.iter().map(|&v| v as i64).sum();
            assert_eq!(s.value, 5 * col.abs());
        }
    }

    #[test]
    fn parse_and_print() {
        let m: SignMatrix = "+1 -1\n-1 +1\n".parse().unwrap();
        assert_eq!(m.to_string(), "+1 -1\n-1 +1\n");
        assert!("+1 0\n1 1".parse::<SignMatrix>().is_err());
        assert!("+1 1\n1".parse::<SignMatrix>().is_err());
    }

    #[test]
    fn column_negation() {
        let m = SignMatrix::from_rows(&[vec![1, -1], vec![1, 1]]).unwrap();
        assert_eq!(m.negate_columns(&[1, 1]), m);
        let n = m.negate_columns(&[1, -1]);
        assert_eq!(n.row(0), &[1, 1]);
        assert_eq!(gb_exact(&n).unwrap().value, gb_exact(&m).unwrap().value);
    }
}
