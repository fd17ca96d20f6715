//! Exact linear algebra on sparse Fock vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fock::{add_into, State, Vector};
use crate::rational::Rational;

/// Incremental echelon form of a list of vectors, remembering how each pivot row
/// combines the vectors that were added.
// pivot state, reduced row, combination of the pushed vectors giving that row
type Pivot = (State, Vector, Vec<(usize, Rational)>);

#[derive(Debug, Default)]
pub struct SpanSolver {
    pivots: Vec<Pivot>,
    added: usize,
}

impl SpanSolver {
    pub fn new() -> Self {
        SpanSolver::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, v: &Vector) -> (Vector, Vec<(usize, Rational)>) {
        let mut rem = v.clone();
        let mut coords: Vec<(usize, Rational)> = Vec::new();
        for (key, row, combo) in &self.pivots {
            let Some(c) = rem.get(key).cloned() else {
                continue;
            };
            add_into(&mut rem, row, &-c.clone());
            for (i, x) in combo {
                coords.push((*i, x * &c));
            }
        }
        (rem, coords)
    }

    /// Adds `v`; returns whether it was independent of the vectors already present.
    /// Dependent vectors are still counted, so indices refer to every call.
    pub fn push(&mut self, v: &Vector) -> bool {
        let idx = self.added;
        self.added += 1;
        let (rem, coords) = self.reduce(v);
        let Some((key, lead)) = rem.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = Rational::one() / &lead;
        let mut row = Vector::new();
        add_into(&mut row, &rem, &inv);
        // row = (v - Σ coords) / lead
        let mut combo = vec![(idx, inv.clone())];
        for (i, x) in coords {
            combo.push((i, -x * &inv));
        }
        self.pivots.push((key, row, compact(combo)));
        true
    }

    /// Coordinates of `v` with respect to the pushed vectors, or `None` if outside their span.
    pub fn express(&self, v: &Vector) -> Option<Vec<Rational>> {
        let (rem, coords) = self.reduce(v);
        if !rem.is_empty() {
            return None;
        }
        let mut out = vec![Rational::zero(); self.added];
        for (i, x) in coords {
            out[i] += x;
        }
        Some(out)
    }
}

fn compact(mut combo: Vec<(usize, Rational)>) -> Vec<(usize, Rational)> {
    combo.sort_by_key(|(i, _)| *i);
    let mut out: Vec<(usize, Rational)> = Vec::new();
    for (i, x) in combo {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// Rank of a rational matrix via fraction-free (Bareiss) elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    bareiss_rank(&mut m)
}

fn integer_row(r: &[Rational]) -> Vec<BigInt> {
    let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    r.iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
        .collect()
}

pub fn bareiss_rank(m: &mut [Vec<BigInt>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[i][j] * &m[r][c] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].abs();
        if prev.is_zero() {
            prev = BigInt::one();
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
