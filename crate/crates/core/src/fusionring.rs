//! Fusion rings of `L_m(g)` at positive integer level via the Kac–Walton algorithm, the
//! ring transported to admissible level, and the integrality scan for lattice extensions.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::ccalc::extension_conformal_dim;
use crate::error::{Error, Result};
use crate::liecore::{Kind, LevelParam, RootSystem, SystemId, Weight};
use crate::rational::{self, int, Rational};

/// Fusion ring on `P_+^level`. Structure constants are keyed by basis indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing {
    pub system: SystemId,
    pub level: i64,
    pub basis: Vec<Weight>,
    pub constants: BTreeMap<(usize, usize), BTreeMap<usize, i64>>,
    /// Admissible `t` when the ring was obtained by transport.
    pub transported_from: Option<Rational>,
}

fn check_supported(sys: &RootSystem) -> Result<()> {
    if sys.id.kind == Kind::A && sys.rank() <= 2 {
        Ok(())
    } else {
        Err(Error::UnsupportedSystem {
            kind: sys.id.kind.letter(),
            rank: sys.rank(),
        })
    }
}

/// Brings `x = lambda + rho` into the open fundamental alcove of level `big_k = m + h^vee`
/// under the shifted affine Weyl group; `None` when `x` lies on a wall.
fn alcove_reflect(
    sys: &RootSystem,
    theta: &[i64],
    x: &[i64],
    big_k: i64,
) -> Option<(Vec<i64>, i64)> {
    let mut x = x.to_vec();
    let mut sign = 1;
    loop {
        if let Some(i) = x.iter().position(|&c| c <= 0) {
            if x[i] == 0 {
                return None;
            }
            x = sys.reflect(&x, i);
            sign = -sign;
            continue;
        }
        let level: i64 = x.iter().zip(&sys.marks).map(|(c, m)| c * m).sum();
        if level == big_k {
            return None;
        }
        if level < big_k {
            return Some((x, sign));
        }
        let shift = level - big_k;
        for (c, th) in x.iter_mut().zip(theta) {
            *c -= shift * th;
        }
        sign = -sign;
    }
}

/// Kac–Walton fusion product `lambda × mu` at level `m`, as multiplicities.
pub fn kac_walton(sys: &RootSystem, m: i64, lambda: &[i64], mu: &[i64]) -> BTreeMap<Vec<i64>, i64> {
    let theta = sys.root_to_weight_int(
        sys.positive_roots
            .iter()
            .max_by_key(|r| r.iter().sum::<i64>())
            .unwrap(),
    );
    let big_k = m + sys.h_dual;
    let mut out: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (nu, mult) in sys.finite_character(lambda) {
        let x: Vec<i64> = mu.iter().zip(&nu).map(|(a, b)| a + b + 1).collect();
        if let Some((y, sign)) = alcove_reflect(sys, &theta, &x, big_k) {
            let hw: Vec<i64> = y.iter().map(|c| c - 1).collect();
            *out.entry(hw).or_insert(0) += sign * mult;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// WZW fusion ring at non-negative integer level `m`, for `A1` and `A2`.
pub fn wzw_fusion(sys: &RootSystem, m: i64) -> Result<FusionRing> {
    check_supported(sys)?;
    let basis = sys.dominant_weights(m)?;
    let ints: Vec<Vec<i64>> = basis
        .iter()
        .map(|w| w.to_ints().expect("integral"))
        .collect();
    let index: BTreeMap<&Vec<i64>, usize> = ints.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let pairs: Vec<(usize, usize)> = (0..ints.len())
        .flat_map(|a| (0..ints.len()).map(move |b| (a, b)))
        .collect();
    let products: Vec<((usize, usize), BTreeMap<usize, i64>)> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let prod = kac_walton(sys, m, &ints[a], &ints[b]);
            (
                (a, b),
                prod.into_iter().map(|(w, c)| (index[&w], c)).collect(),
            )
        })
        .collect();
    Ok(FusionRing {
        system: sys.id,
        level: m,
        basis,
        constants: products.into_iter().collect(),
        transported_from: None,
    })
}

/// The ring on `Adm_Z^k = P_+^{p - h^vee}` with the level-`(p - h^vee)` fusion constants.
pub fn transport(sys: &RootSystem, t: &Rational) -> Result<FusionRing> {
    let lp = LevelParam::admissible(sys, t.clone())?;
    let (p, _) = lp.admissible_pq.expect("admissible");
    let mut ring = wzw_fusion(sys, p - sys.h_dual)?;
    ring.transported_from = Some(t.clone());
    Ok(ring)
}

impl FusionRing {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.basis.iter().position(|b| b == w)
    }

    pub fn coefficient(&self, a: usize, b: usize, c: usize) -> i64 {
        self.constants
            .get(&(a, b))
            .and_then(|m| m.get(&c))
            .copied()
            .unwrap_or(0)
    }

    /// Product of two basis elements.
    pub fn product(&self, a: usize, b: usize) -> BTreeMap<usize, i64> {
        self.constants.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// Product of two ring elements given as coefficient maps.
    pub fn mul(&self, x: &BTreeMap<usize, i64>, y: &BTreeMap<usize, i64>) -> BTreeMap<usize, i64> {
        let mut out: BTreeMap<usize, i64> = BTreeMap::new();
        for (&a, &ca) in x {
            for (&b, &cb) in y {
                for (c, n) in self.product(a, b) {
                    *out.entry(c).or_insert(0) += ca * cb * n;
                }
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    fn single(i: usize) -> BTreeMap<usize, i64> {
        BTreeMap::from([(i, 1)])
    }

    pub fn unit(&self) -> Option<usize> {
        self.basis
            .iter()
            .position(|w| w.coeffs.iter().all(|c| c.is_zero()))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.constants.values().all(|m| m.values().all(|c| *c >= 0))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.len()).all(|a| (0..self.len()).all(|b| self.product(a, b) == self.product(b, a)))
    }

    pub fn is_unital(&self) -> bool {
        let Some(u) = self.unit() else { return false };
        (0..self.len())
            .all(|a| self.product(u, a) == Self::single(a) && self.product(a, u) == Self::single(a))
    }

    /// Exhaustive check of `(a b) c = a (b c)` over all basis triples.
    pub fn is_associative(&self) -> bool {
        let n = self.len();
        (0..n).into_par_iter().all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let left = self.mul(&self.product(a, b), &Self::single(c));
                    let right = self.mul(&Self::single(a), &self.product(b, c));
                    left == right
                })
            })
        })
    }

    /// `N_{ab}^c = 0` unless `a + b - c` lies in the root lattice.
    pub fn respects_grading(&self, sys: &RootSystem) -> Result<bool> {
        for (&(a, b), prod) in &self.constants {
            for &c in prod.keys() {
                let diff = self.basis[a].add(&self.basis[b])?.sub(&self.basis[c])?;
                if !sys.in_root_lattice(&diff) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `{level, basis, triples: [{a, b, c, N}]}` with nonzero constants only.
    pub fn to_json(&self) -> Value {
        let mut triples = Vec::new();
        for (&(a, b), prod) in &self.constants {
            for (&c, &n) in prod {
                triples.push(json!({
                    "a": self.basis[a].to_string(),
                    "b": self.basis[b].to_string(),
                    "c": self.basis[c].to_string(),
                    "N": n,
                }));
            }
        }
        let mut v = json!({
            "system": self.system.to_string(),
            "level": self.level,
            "basis": self.basis.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "triples": triples,
        });
        if let Some(t) = &self.transported_from {
            v["t"] = json!(t.to_string());
        }
        v
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("a\tb\tc\tN\n");
        for (&(a, b), prod) in &self.constants {
            for (&c, &n) in prod {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{n}\n",
                    self.basis[a], self.basis[b], self.basis[c]
                ));
            }
        }
        out
    }
}

/// `A1` fusion at level `m` by repeated truncated tensoring with the generator `[1]`:
/// `[1] x [a] = [a-1] + [a+1]` with `[m+1]` dropped, and `[a]` expanded as the Chebyshev
/// polynomial `U_a` in `[1]`. Returns `N[a][b][c]`.
pub fn a1_truncated_tensoring(m: i64) -> Vec<Vec<Vec<i64>>> {
    let n = (m + 1) as usize;
    let gen = |x: &[i64]| -> Vec<i64> {
        let mut y = vec![0; n];
        for (a, &c) in x.iter().enumerate() {
            if a >= 1 {
                y[a - 1] += c;
            }
            if a + 1 < n {
                y[a + 1] += c;
            }
        }
        y
    };
    // polys[a][j] = coefficient of x^j in U_a
    let mut polys: Vec<Vec<i64>> = vec![vec![1], vec![0, 1]];
    while polys.len() < n {
        let a = polys.len();
        let mut p = vec![0; a + 1];
        for (j, c) in polys[a - 1].iter().enumerate() {
            p[j + 1] += c;
        }
        for (j, c) in polys[a - 2].iter().enumerate() {
            p[j] -= c;
        }
        polys.push(p);
    }
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let mut power = vec![0; n];
                    power[b] = 1;
                    let mut acc = vec![0; n];
                    for &c in &polys[a] {
                        for (s, p) in acc.iter_mut().zip(&power) {
                            *s += c * p;
                        }
                        power = gen(&power);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralityReport {
    pub system: SystemId,
    pub n: i64,
    pub radius: Rational,
    pub points: usize,
    pub all_integral: bool,
    pub all_nonnegative: bool,
    pub zeros: Vec<Weight>,
    pub pass: bool,
}

impl IntegralityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "system": self.system.to_string(),
            "n": self.n,
            "radius": self.radius.to_string(),
            "points": self.points,
            "all_integral": self.all_integral,
            "all_nonnegative": self.all_nonnegative,
            "zeros": self.zeros.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "pass": self.pass,
        })
    }
}

/// Dominant elements of the root lattice with `(lambda, lambda) <= radius`.
pub fn dominant_root_lattice_ball(sys: &RootSystem, radius: &Rational) -> Result<Vec<Weight>> {
    // (lambda, lambda) >= lambda_i^2 (C^{-1})_{ii} for dominant lambda, all entries of C^{-1} being positive
    let bounds: Vec<i64> = (0..sys.rank())
        .map(|i| {
            let b = radius / &sys.cartan_inv()[i][i];
            let mut m = 0i64;
            while int((m + 1) * (m + 1)) <= b {
                m += 1;
            }
            m
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = vec![0i64; sys.rank()];
    loop {
        let w = Weight::from_ints(sys.id, &cur);
        if sys.in_root_lattice(&w) && &sys.norm(&w)? <= radius {
            out.push(w);
        }
        let mut i = 0;
        loop {
            if i == cur.len() {
                return Ok(out);
            }
            if cur[i] < bounds[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Scans `n(lambda,lambda)/2 + (n-2)(lambda,rho)` over the root-lattice ball.
pub fn integrality_scan(sys: &RootSystem, n: i64, radius: &Rational) -> Result<IntegralityReport> {
    let points = dominant_root_lattice_ball(sys, radius)?;
    let values: Vec<Rational> = points
        .iter()
        .map(|w| extension_conformal_dim(sys, w, n))
        .collect::<Result<_>>()?;
    let all_integral = values.iter().all(rational::is_integer);
    let all_nonnegative = values.iter().all(|v| !v.is_negative());
    let zeros: Vec<Weight> = points
        .iter()
        .zip(&values)
        .filter(|(_, v)| v.is_zero())
        .map(|(w, _)| w.clone())
        .collect();
    let zero_only_origin = zeros.len() == 1 && zeros[0] == sys.zero();
    let pass = all_integral && (n < 2 || (all_nonnegative && zero_only_origin));
    Ok(IntegralityReport {
        system: sys.id,
        n,
        radius: radius.clone(),
        points: points.len(),
        all_integral,
        all_nonnegative,
        zeros,
        pass,
    })
}
