//! Root data, weight lattices and level arithmetic for simply-laced simple Lie algebras.
//!
//! Weights are stored in the fundamental-weight basis, roots in the simple-root basis.
//! The invariant form is normalized so that every root has square length 2, hence for
//! simply-laced types the Cartan matrix is the Gram matrix of the simple roots and its
//! inverse is the Gram matrix of the fundamental weights.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kind {
    A,
    D,
    E,
}

impl Kind {
    pub fn letter(self) -> char {
        match self {
            Kind::A => 'A',
            Kind::D => 'D',
            Kind::E => 'E',
        }
    }
}

/// Identifies a root system; carried by every [`Weight`] so that mixing systems is caught.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SystemId {
    pub kind: Kind,
    pub rank: usize,
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.rank)
    }
}

impl std::str::FromStr for SystemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Kind::A,
            Some('D') => Kind::D,
            Some('E') => Kind::E,
            _ => return Err(Error::Parse(format!("unknown root system {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        Ok(SystemId { kind, rank })
    }
}

/// A weight in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub system: SystemId,
    pub coeffs: Vec<Rational>,
}

impl Weight {
    pub fn new(system: SystemId, coeffs: Vec<Rational>) -> Self {
        Weight { system, coeffs }
    }

    pub fn from_ints(system: SystemId, coeffs: &[i64]) -> Self {
        Weight {
            system,
            coeffs: coeffs.iter().map(|&c| int(c)).collect(),
        }
    }

    pub fn zero(system: SystemId) -> Self {
        Weight {
            system,
            coeffs: vec![Rational::zero(); system.rank],
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(rational::is_integer)
    }

    pub fn is_dominant(&self) -> bool {
        self.is_integral() && self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Integer coordinates, if the weight lies in P.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(rational::to_i64).collect()
    }

    fn check(&self, other: &Weight) -> Result<()> {
        if self.system != other.system || self.coeffs.len() != other.coeffs.len() {
            Err(Error::MismatchedSystems)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Weight) -> Result<Weight> {
        self.check(other)?;
        Ok(Weight {
            system: self.system,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Weight) -> Result<Weight> {
        self.check(other)?;
        Ok(Weight {
            system: self.system,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, s: &Rational) -> Weight {
        Weight {
            system: self.system,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub id: SystemId,
    pub cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Rational>>,
    /// Positive roots in the simple-root basis, sorted by height then lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    /// Coefficients of the highest root (the marks, equal to the comarks here).
    pub marks: Vec<i64>,
    pub h: i64,
    pub h_dual: i64,
    pub dim_g: i64,
}

fn cartan_matrix(kind: Kind, rank: usize) -> Result<Vec<Vec<i64>>> {
    let unsupported = Err(Error::UnsupportedSystem {
        kind: kind.letter(),
        rank,
    });
    let mut c = vec![vec![0i64; rank]; rank];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match kind {
        Kind::A => {
            if rank < 1 {
                return unsupported;
            }
            for i in 0..rank.saturating_sub(1) {
                link(&mut c, i, i + 1);
            }
        }
        Kind::D => {
            if rank < 4 {
                return unsupported;
            }
            for i in 0..rank - 2 {
                link(&mut c, i, i + 1);
            }
            link(&mut c, rank - 3, rank - 1);
        }
        Kind::E => {
            if !(6..=8).contains(&rank) {
                return unsupported;
            }
            // Bourbaki labelling: 1-3-4-5-6-7-8 with 2 attached to 4.
            link(&mut c, 0, 2);
            link(&mut c, 1, 3);
            for i in 2..rank - 1 {
                link(&mut c, i, i + 1);
            }
        }
    }
    Ok(c)
}

/// Exact inverse of a nonsingular integer matrix.
fn invert(m: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| int(x)).collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("singular Cartan matrix");
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

impl RootSystem {
    pub fn new(kind: Kind, rank: usize) -> Result<Self> {
        let cartan = cartan_matrix(kind, rank)?;
        let cartan_inv = invert(&cartan);
        let positive_roots = Self::generate_roots(&cartan);
        let marks = positive_roots
            .iter()
            .max_by_key(|r| r.iter().sum::<i64>())
            .cloned()
            .expect("nonempty root system");
        let dim_g = rank as i64 + 2 * positive_roots.len() as i64;
        let h = dim_g / rank as i64 - 1;
        Ok(RootSystem {
            id: SystemId { kind, rank },
            cartan,
            cartan_inv,
            positive_roots,
            marks,
            h,
            h_dual: h,
            dim_g,
        })
    }

    pub fn from_id(id: SystemId) -> Result<Self> {
        Self::new(id.kind, id.rank)
    }

    // Simply-laced: beta + alpha_i is a root iff (beta, alpha_i) = -1 for beta != alpha_i.
    fn generate_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = cartan.len();
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut r = vec![0; n];
            r[i] = 1;
            seen.insert(r.clone());
            queue.push_back(r);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                if pairing == -1 {
                    let mut next = beta.clone();
                    next[i] += 1;
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
        roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        roots
    }

    pub fn rank(&self) -> usize {
        self.id.rank
    }

    pub fn rho(&self) -> Weight {
        Weight::from_ints(self.id, &vec![1; self.rank()])
    }

    pub fn zero(&self) -> Weight {
        Weight::zero(self.id)
    }

    pub fn fundamental(&self, i: usize) -> Weight {
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        Weight::from_ints(self.id, &c)
    }

    /// Gram matrix of the fundamental weights.
    pub fn cartan_inv(&self) -> &[Vec<Rational>] {
        &self.cartan_inv
    }

    pub fn cartan_det(&self) -> i64 {
        let inv_entry_den = self
            .cartan_inv
            .iter()
            .flatten()
            .map(|x| x.denom().to_i64().unwrap())
            .fold(1, |a: i64, b| a.lcm(&b));
        // det of the Cartan matrix via exact elimination
        let n = self.rank();
        let mut a: Vec<Vec<Rational>> = self
            .cartan
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        let mut det = Rational::one();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero()).unwrap();
            if piv != col {
                a.swap(col, piv);
                det = -det;
            }
            det *= &a[col][col];
            for r in col + 1..n {
                let f = &a[r][col] / &a[col][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x = &*x - &f * y;
                }
            }
        }
        let det = rational::to_i64(&det).unwrap();
        debug_assert_eq!(det % inv_entry_den, 0);
        det
    }

    fn check(&self, w: &Weight) -> Result<()> {
        if w.system != self.id || w.coeffs.len() != self.rank() {
            Err(Error::MismatchedSystems)
        } else {
            Ok(())
        }
    }

    /// The normalized invariant form `(lambda | mu)`.
    pub fn inner_product(&self, a: &Weight, b: &Weight) -> Result<Rational> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.form(&a.coeffs, &b.coeffs))
    }

    pub(crate) fn form(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                s += ai * &self.cartan_inv[i][j] * bj;
            }
        }
        s
    }

    pub fn norm(&self, w: &Weight) -> Result<Rational> {
        self.inner_product(w, w)
    }

    /// Simple-root coordinates (rational) of a weight.
    pub fn to_root_coords(&self, w: &Weight) -> Vec<Rational> {
        (0..self.rank())
            .map(|i| {
                (0..self.rank())
                    .map(|j| &self.cartan_inv[i][j] * &w.coeffs[j])
                    .sum()
            })
            .collect()
    }

    /// Weight (fundamental coordinates) of an element given in simple-root coordinates.
    pub fn root_to_weight(&self, root: &[Rational]) -> Weight {
        let n = self.rank();
        let coeffs = (0..n)
            .map(|i| (0..n).map(|j| &root[j] * int(self.cartan[j][i])).sum())
            .collect();
        Weight::new(self.id, coeffs)
    }

    pub fn root_to_weight_int(&self, root: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| root[j] * self.cartan[j][i]).sum())
            .collect()
    }

    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        w.is_integral() && self.to_root_coords(w).iter().all(rational::is_integer)
    }

    /// `<lambda, theta^vee>`, the level of a weight.
    pub fn level_of(&self, w: &Weight) -> Rational {
        w.coeffs
            .iter()
            .zip(&self.marks)
            .map(|(c, &m)| c * int(m))
            .sum()
    }

    /// Exact enumeration of `P_+^level`.
    pub fn dominant_weights(&self, level: i64) -> Result<Vec<Weight>> {
        if level < 0 {
            return Err(Error::NegativeLevel(level));
        }
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.rank()];
        self.enumerate_dominant(0, level, &mut cur, &mut out);
        Ok(out
            .into_iter()
            .map(|c| Weight::from_ints(self.id, &c))
            .collect())
    }

    fn enumerate_dominant(&self, i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == self.rank() {
            out.push(cur.clone());
            return;
        }
        let m = self.marks[i];
        for v in 0..=left / m {
            cur[i] = v;
            self.enumerate_dominant(i + 1, left - v * m, cur, out);
        }
        cur[i] = 0;
    }

    /// Canonical representative of `lambda + Q` in `P/Q`, chosen in `P_+^1`.
    pub fn coset_class(&self, w: &Weight) -> Result<Weight> {
        self.check(w)?;
        if !w.is_integral() {
            return Err(Error::NotInWeightLattice);
        }
        for nu in self.dominant_weights(1)? {
            if self.in_root_lattice(&w.sub(&nu)?) {
                return Ok(nu);
            }
        }
        unreachable!("P_+^1 meets every class of P/Q for simply-laced types")
    }

    /// `(alpha | lambda)` for a positive root given in simple-root coordinates.
    pub fn root_pairing(&self, root: &[i64], w: &[Rational]) -> Rational {
        root.iter().zip(w).map(|(&r, c)| int(r) * c).sum()
    }

    /// Weyl dimension polynomial `prod (lambda+rho, alpha)/(rho, alpha)`, valid for any weight.
    pub fn weyl_dimension(&self, lambda_plus_rho: &[Rational]) -> Rational {
        let mut num = Rational::one();
        let mut den = Rational::one();
        for alpha in &self.positive_roots {
            num *= self.root_pairing(alpha, lambda_plus_rho);
            den *= int(alpha.iter().sum::<i64>());
        }
        num / den
    }

    /// Orbit of a regular integral weight under the Weyl group, paired with `det(w)`.
    pub fn signed_orbit(&self, regular: &[i64]) -> Vec<(Vec<i64>, i64)> {
        let mut seen: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        let mut queue = VecDeque::new();
        seen.insert(regular.to_vec(), 1);
        queue.push_back(regular.to_vec());
        while let Some(v) = queue.pop_front() {
            let sign = seen[&v];
            for i in 0..self.rank() {
                let r = self.reflect(&v, i);
                if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(r.clone()) {
                    e.insert(-sign);
                    queue.push_back(r);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Simple reflection `s_i` in fundamental coordinates.
    pub fn reflect(&self, v: &[i64], i: usize) -> Vec<i64> {
        let vi = v[i];
        v.iter()
            .zip(&self.cartan[i])
            .map(|(&x, &c)| x - vi * c)
            .collect()
    }

    /// Dominant conjugate of an integral weight together with the sign of the
    /// conjugating element, or `None` if the weight is singular (fixed by a reflection).
    pub fn dominant_conjugate(&self, v: &[i64]) -> Option<(Vec<i64>, i64)> {
        let mut v = v.to_vec();
        let mut sign = 1;
        loop {
            match v.iter().position(|&x| x <= 0) {
                None => return Some((v, sign)),
                Some(i) if v[i] == 0 => return None,
                Some(i) => {
                    v = self.reflect(&v, i);
                    sign = -sign;
                }
            }
        }
    }

    /// Formal character of the finite-dimensional irreducible module of highest weight
    /// `lambda`, as weight multiplicities.
    pub fn finite_character(&self, lambda: &[i64]) -> BTreeMap<Vec<i64>, i64> {
        let n = self.rank();
        let lr: Vec<i64> = lambda.iter().map(|x| x + 1).collect();
        let mut f: BTreeMap<Vec<i64>, i64> = self.signed_orbit(&lr).into_iter().collect();
        for alpha in &self.positive_roots {
            f = self.divide_by_one_minus(&f, &self.root_to_weight_int(alpha));
        }
        f.into_iter()
            .map(|(mut k, m)| {
                for x in k.iter_mut().take(n) {
                    *x -= 1;
                }
                (k, m)
            })
            .filter(|(_, m)| *m != 0)
            .collect()
    }

    // Exact division by (1 - e^{-alpha}): g(mu) = sum_{j >= 0} f(mu + j alpha).
    fn divide_by_one_minus(
        &self,
        f: &BTreeMap<Vec<i64>, i64>,
        alpha: &[i64],
    ) -> BTreeMap<Vec<i64>, i64> {
        let height = |v: &[i64]| -> Rational {
            self.to_root_coords(&Weight::from_ints(self.id, v))
                .iter()
                .sum()
        };
        let hs: Vec<Rational> = f.keys().map(|k| height(k)).collect();
        let (lo, hi) = match (hs.iter().min(), hs.iter().max()) {
            (Some(a), Some(b)) => (a.clone(), b.clone()),
            _ => return BTreeMap::new(),
        };
        let ha = height(alpha);
        let span = rational::ceil_i64(&((hi - &lo) / ha)) + 1;
        let mut g: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (k, &m) in f {
            let mut mu = k.clone();
            for _ in 0..=span {
                if height(&mu) < lo {
                    break;
                }
                *g.entry(mu.clone()).or_insert(0) += m;
                for (x, a) in mu.iter_mut().zip(alpha) {
                    *x -= a;
                }
            }
        }
        g.retain(|_, m| *m != 0);
        g
    }
}

/// `t = k + h^vee`, with the admissible numerator/denominator when applicable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelParam {
    pub t: Rational,
    pub admissible_pq: Option<(i64, i64)>,
}

impl LevelParam {
    pub fn new(t: Rational) -> Self {
        LevelParam {
            t,
            admissible_pq: None,
        }
    }

    /// Checks `t = p/q` with `gcd(p,q) = 1`, `p, q >= 1`, `p >= h^vee`.
    pub fn admissible(sys: &RootSystem, t: Rational) -> Result<Self> {
        let not_adm = || Error::NotAdmissible {
            t: t.clone(),
            h_dual: sys.h_dual,
        };
        if !t.is_positive() {
            return Err(not_adm());
        }
        let p = t.numer().to_i64().ok_or_else(not_adm)?;
        let q = t.denom().to_i64().ok_or_else(not_adm)?;
        if p < sys.h_dual {
            return Err(not_adm());
        }
        Ok(LevelParam {
            t,
            admissible_pq: Some((p, q)),
        })
    }
}

/// `Adm_Z^k = P_+^{p - h^vee}` for admissible `k`.
pub fn admissible_set(sys: &RootSystem, level: &LevelParam) -> Result<Vec<Weight>> {
    let (p, _) = match level.admissible_pq {
        Some(pq) => pq,
        None => LevelParam::admissible(sys, level.t.clone())?
            .admissible_pq
            .unwrap(),
    };
    sys.dominant_weights(p - sys.h_dual)
}

/// Feigin-Frenkel dual of `t = k + h^vee` for simply-laced `g`: returns `1/t`.
pub fn dual_level(t: &Rational) -> Result<Rational> {
    if t.is_zero() {
        return Err(Error::Pole("dual level at t = 0 (critical level)".into()));
    }
    Ok(t.recip())
}

/// `l + h^vee` from `1/(k+h^vee) + 1/(l+h^vee) = 1`: returns `t/(t-1)`.
pub fn companion_level(t: &Rational) -> Result<Rational> {
    if t.is_one() {
        return Err(Error::Pole("companion level at t = 1".into()));
    }
    if t.is_zero() {
        return Err(Error::Pole("companion level at t = 0".into()));
    }
    Ok(t / (t - Rational::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn a(n: usize) -> RootSystem {
        RootSystem::new(Kind::A, n).unwrap()
    }

    #[test]
    fn basic_data() {
        let a1 = a(1);
        assert_eq!((a1.h_dual, a1.dim_g), (2, 3));
        let a2 = a(2);
        assert_eq!((a2.h, a2.h_dual, a2.dim_g), (3, 3, 8));
        assert_eq!(a2.norm(&a2.rho()).unwrap(), int(2));
        let d4 = RootSystem::new(Kind::D, 4).unwrap();
        assert_eq!((d4.h_dual, d4.dim_g), (6, 28));
        let e8 = RootSystem::new(Kind::E, 8).unwrap();
        assert_eq!((e8.h, e8.dim_g), (30, 248));
        assert_eq!(RootSystem::new(Kind::E, 6).unwrap().dim_g, 78);
        assert_eq!(RootSystem::new(Kind::E, 7).unwrap().dim_g, 133);
    }

    #[test]
    fn unsupported() {
        assert!(RootSystem::new(Kind::D, 3).is_err());
        assert!(RootSystem::new(Kind::E, 9).is_err());
        assert!(RootSystem::new(Kind::A, 0).is_err());
    }

    #[test]
    fn strange_formula_everywhere() {
        let ids = [
            (Kind::A, 1),
            (Kind::A, 2),
            (Kind::A, 5),
            (Kind::D, 4),
            (Kind::D, 6),
            (Kind::E, 6),
            (Kind::E, 7),
            (Kind::E, 8),
        ];
        for (k, n) in ids {
            let s = RootSystem::new(k, n).unwrap();
            let lhs = s.norm(&s.rho()).unwrap() / int(2 * s.h_dual);
            assert_eq!(lhs, q(s.dim_g, 24), "{k:?}{n}");
            for r in &s.positive_roots {
                let w = s.root_to_weight(&r.iter().map(|&x| int(x)).collect::<Vec<_>>());
                assert_eq!(s.norm(&w).unwrap(), int(2));
            }
        }
    }

    #[test]
    fn inner_products() {
        let a1 = a(1);
        assert_eq!(a1.norm(&a1.fundamental(0)).unwrap(), q(1, 2));
        assert_eq!(a1.norm(&a1.rho()).unwrap(), q(1, 2));
        let a2 = a(2);
        assert_eq!(
            a1.inner_product(&a1.rho(), &a2.rho()),
            Err(Error::MismatchedSystems)
        );
    }

    #[test]
    fn dominant_weight_counts() {
        assert_eq!(a(1).dominant_weights(3).unwrap().len(), 4);
        assert_eq!(a(2).dominant_weights(1).unwrap().len(), 3);
        assert_eq!(a(1).dominant_weights(0).unwrap(), vec![a(1).zero()]);
        assert_eq!(a(1).dominant_weights(-1), Err(Error::NegativeLevel(-1)));
    }

    #[test]
    fn coset_classes() {
        let a1 = a(1);
        let w = |m| Weight::from_ints(a1.id, &[m]);
        assert_eq!(a1.coset_class(&w(2)).unwrap(), w(0));
        assert_eq!(a1.coset_class(&w(3)).unwrap(), w(1));
        let a2 = a(2);
        assert_eq!(
            a2.coset_class(&Weight::from_ints(a2.id, &[1, 1])).unwrap(),
            a2.zero()
        );
        assert_eq!(
            a1.coset_class(&Weight::new(a1.id, vec![q(1, 2)])),
            Err(Error::NotInWeightLattice)
        );
        for (k, n) in [
            (Kind::A, 3),
            (Kind::D, 4),
            (Kind::D, 5),
            (Kind::E, 6),
            (Kind::E, 7),
            (Kind::E, 8),
        ] {
            let s = RootSystem::new(k, n).unwrap();
            assert_eq!(s.dominant_weights(1).unwrap().len() as i64, s.cartan_det());
        }
    }

    #[test]
    fn admissible_sets() {
        let a1 = a(1);
        let l = LevelParam::admissible(&a1, q(5, 2)).unwrap();
        assert_eq!(admissible_set(&a1, &l).unwrap().len(), 4);
        let l = LevelParam::admissible(&a1, q(3, 2)).unwrap();
        assert_eq!(admissible_set(&a1, &l).unwrap().len(), 2);
        assert!(matches!(
            LevelParam::admissible(&a1, q(1, 2)),
            Err(Error::NotAdmissible { .. })
        ));
        assert!(admissible_set(&a1, &LevelParam::new(q(1, 2))).is_err());
    }

    #[test]
    fn dual_and_companion() {
        assert_eq!(dual_level(&q(5, 2)).unwrap(), q(2, 5));
        assert_eq!(dual_level(&int(1)).unwrap(), int(1));
        assert!(dual_level(&int(0)).is_err());
        assert_eq!(companion_level(&q(5, 2)).unwrap(), q(5, 3));
        assert_eq!(companion_level(&int(2)).unwrap(), int(2));
        assert!(companion_level(&int(1)).is_err());
    }

    #[test]
    fn finite_characters() {
        let a2 = a(2);
        // adjoint of sl3: 6 roots + zero weight with multiplicity 2
        let ch = a2.finite_character(&[1, 1]);
        assert_eq!(ch.values().sum::<i64>(), 8);
        assert_eq!(ch[&vec![0, 0]], 2);
        let d4 = RootSystem::new(Kind::D, 4).unwrap();
        assert_eq!(d4.finite_character(&[0, 1, 0, 0]).values().sum::<i64>(), 28);
        let a1 = a(1);
        assert_eq!(a1.finite_character(&[3]).len(), 4);
    }
}
