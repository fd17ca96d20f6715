//! Good gradings `g = ⊕ g_j` determined by a grading element `x0`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liecore::{Kind, RootSystem, Weight};
use crate::rational::{self, int, q, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum GradingSource {
    Principal,
    Partition(Vec<usize>),
    ExplicitX0,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodGrading {
    pub x0: Weight,
    /// Degrees of the positive roots (simple-root coordinates); `deg(-a) = -deg(a)`.
    pub degrees: Vec<(Vec<i64>, Rational)>,
    pub dims: BTreeMap<Rational, usize>,
    pub even: bool,
    pub source: GradingSource,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradeStats {
    pub dim_g0: usize,
    pub dim_g_half: usize,
    pub norm_x0: Rational,
}

impl GoodGrading {
    /// Degree of an arbitrary root given in simple-root coordinates.
    pub fn degree(&self, root: &[i64]) -> Rational {
        root.iter()
            .zip(&self.x0.coeffs)
            .map(|(&a, x)| int(a) * x)
            .sum()
    }

    pub fn dim(&self, j: &Rational) -> usize {
        self.dims.get(j).copied().unwrap_or(0)
    }
}

/// Grading by `ad x0` for an arbitrary `x0` in the Cartan subalgebra.
pub fn explicit_grading(sys: &RootSystem, x0: Weight) -> Result<GoodGrading> {
    if x0.system != sys.id {
        return Err(Error::MismatchedSystems);
    }
    build(sys, x0, GradingSource::ExplicitX0)
}

fn build(sys: &RootSystem, x0: Weight, source: GradingSource) -> Result<GoodGrading> {
    let mut dims: BTreeMap<Rational, usize> = BTreeMap::new();
    *dims.entry(Rational::zero()).or_insert(0) += sys.rank();
    let mut degrees = Vec::with_capacity(sys.positive_roots.len());
    for root in &sys.positive_roots {
        let d = sys.root_pairing(root, &x0.coeffs);
        *dims.entry(d.clone()).or_insert(0) += 1;
        *dims.entry(-d.clone()).or_insert(0) += 1;
        degrees.push((root.clone(), d));
    }
    let even = dims.keys().all(rational::is_integer);
    Ok(GoodGrading {
        x0,
        degrees,
        dims,
        even,
        source,
    })
}

/// `x0 = rho^vee`: every simple root has degree 1.
pub fn principal_grading(sys: &RootSystem) -> GoodGrading {
    build(sys, sys.rho(), GradingSource::Principal).expect("rho belongs to the system")
}

/// Dynkin grading of `sl_n` attached to the nilpotent orbit with Jordan type `partition`.
pub fn partition_grading(sys: &RootSystem, partition: &[usize]) -> Result<GoodGrading> {
    if sys.id.kind != Kind::A {
        return Err(Error::InvalidPartition(format!(
            "partition gradings need type A, got {}",
            sys.id
        )));
    }
    let n = sys.rank() + 1;
    if partition.iter().sum::<usize>() != n || partition.contains(&0) {
        return Err(Error::InvalidPartition(format!(
            "{partition:?} is not a partition of {n}"
        )));
    }
    let mut eigen: Vec<Rational> = Vec::with_capacity(n);
    for &p in partition {
        for i in 0..p {
            eigen.push(q(p as i64 - 1 - 2 * i as i64, 2));
        }
    }
    eigen.sort_by(|a, b| b.cmp(a));
    let coeffs = eigen.windows(2).map(|w| &w[0] - &w[1]).collect();
    let mut sorted = partition.to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    let x0 = Weight::new(sys.id, coeffs);
    build(sys, x0, GradingSource::Partition(sorted))
}

pub fn grade_stats(sys: &RootSystem, g: &GoodGrading) -> GradeStats {
    GradeStats {
        dim_g0: g.dim(&Rational::zero()),
        dim_g_half: g.dim(&q(1, 2)),
        norm_x0: sys.norm(&g.x0).expect("grading belongs to the system"),
    }
}

/// Sum of `j * dim g_j`, zero for every grading.
pub fn weighted_degree_sum(g: &GoodGrading) -> Rational {
    g.dims.iter().map(|(j, &d)| j * int(d as i64)).sum()
}

/// `dim g_j >= dim g_{j+1}` for all `j >= 1/2`.
pub fn dims_nonincreasing(g: &GoodGrading) -> bool {
    g.dims
        .keys()
        .filter(|j| j.is_positive() && *j >= &q(1, 2))
        .all(|j| g.dim(j) >= g.dim(&(j + int(1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dims(pairs: &[(Rational, usize)]) -> BTreeMap<Rational, usize> {
        pairs.iter().cloned().collect()
    }

    #[test]
    fn principal_examples() {
        let a1 = RootSystem::new(Kind::A, 1).unwrap();
        let g = principal_grading(&a1);
        assert_eq!(g.dims, dims(&[(int(-1), 1), (int(0), 1), (int(1), 1)]));
        assert!(g.even);
        let a2 = RootSystem::new(Kind::A, 2).unwrap();
        let g = principal_grading(&a2);
        assert_eq!(
            g.dims,
            dims(&[
                (int(-2), 1),
                (int(-1), 2),
                (int(0), 2),
                (int(1), 2),
                (int(2), 1)
            ])
        );
        let d4 = RootSystem::new(Kind::D, 4).unwrap();
        let g = principal_grading(&d4);
        assert_eq!(g.dim(&int(0)), 4);
        assert_eq!(g.dims.keys().max().unwrap(), &int(5));
        assert!(g.even);
    }

    #[test]
    fn partition_examples() {
        let a1 = RootSystem::new(Kind::A, 1).unwrap();
        assert_eq!(
            partition_grading(&a1, &[2]).unwrap().dims,
            principal_grading(&a1).dims
        );
        let a2 = RootSystem::new(Kind::A, 2).unwrap();
        let g = partition_grading(&a2, &[2, 1]).unwrap();
        assert_eq!((g.dim(&q(1, 2)), g.dim(&int(1)), g.dim(&int(0))), (2, 1, 2));
        assert!(!g.even);
        let z = partition_grading(&a2, &[1, 1, 1]).unwrap();
        assert_eq!(z.dims, dims(&[(int(0), 8)]));
        assert_eq!(z.x0, a2.zero());
        assert!(partition_grading(&a2, &[2, 2]).is_err());
        let d4 = RootSystem::new(Kind::D, 4).unwrap();
        assert!(partition_grading(&d4, &[8]).is_err());
    }

    #[test]
    fn stats_examples() {
        let a1 = RootSystem::new(Kind::A, 1).unwrap();
        let s = grade_stats(&a1, &principal_grading(&a1));
        assert_eq!(
            s,
            GradeStats {
                dim_g0: 1,
                dim_g_half: 0,
                norm_x0: q(1, 2)
            }
        );
        let a2 = RootSystem::new(Kind::A, 2).unwrap();
        let s = grade_stats(&a2, &partition_grading(&a2, &[2, 1]).unwrap());
        assert_eq!(
            s,
            GradeStats {
                dim_g0: 2,
                dim_g_half: 2,
                norm_x0: q(1, 2)
            }
        );
        let s = grade_stats(&a2, &principal_grading(&a2));
        assert_eq!(
            s,
            GradeStats {
                dim_g0: 2,
                dim_g_half: 0,
                norm_x0: int(2)
            }
        );
    }

    // Brute-force oracle: grade the matrix units E_ij of gl_n by eigenvalue differences.
    fn brute_dims(partition: &[usize]) -> BTreeMap<Rational, usize> {
        let mut eig = vec![];
        for &p in partition {
            for i in 0..p {
                eig.push(q(p as i64 - 1 - 2 * i as i64, 2));
            }
        }
        let mut d = BTreeMap::new();
        for a in &eig {
            for b in &eig {
                *d.entry(a - b).or_insert(0usize) += 1;
            }
        }
        *d.get_mut(&int(0)).unwrap() -= 1;
        d
    }

    fn partitions_of(n: usize, max: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = vec![];
        for first in (1..=max.min(n)).rev() {
            for mut rest in partitions_of(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn all_partitions_match_brute_force() {
        for n in 2..=6 {
            let sys = RootSystem::new(Kind::A, n - 1).unwrap();
            for p in partitions_of(n, n) {
                let g = partition_grading(&sys, &p).unwrap();
                assert_eq!(g.dims, brute_dims(&p), "{p:?}");
                assert!(dims_nonincreasing(&g));
            }
            assert_eq!(
                partition_grading(&sys, &[n]).unwrap().x0,
                principal_grading(&sys).x0
            );
        }
    }

    proptest! {
        #[test]
        fn grading_invariants(parts in proptest::collection::vec(1usize..4, 1..5)) {
            let n: usize = parts.iter().sum();
            prop_assume!(n >= 2);
            let sys = RootSystem::new(Kind::A, n - 1).unwrap();
            let g = partition_grading(&sys, &parts).unwrap();
            prop_assert_eq!(g.dims.values().sum::<usize>() as i64, sys.dim_g);
            prop_assert!(weighted_degree_sum(&g).is_zero());
            for (j, d) in &g.dims {
                prop_assert_eq!(*d, g.dim(&-j.clone()));
            }
            let zero_roots = g.degrees.iter().filter(|(_, d)| d.is_zero()).count();
            prop_assert_eq!(g.dim(&int(0)), sys.rank() + 2 * zero_roots);
            for (r, d) in &g.degrees {
                let neg: Vec<i64> = r.iter().map(|x| -x).collect();
                prop_assert_eq!(g.degree(&neg), -d.clone());
            }
        }
    }
}
