//! Fock-space model of `V^k(sl2) ⊗ V_{√2 Z} ⊗ Λ(ψ, ψ*)` with exact mode actions.
//!
//! Mode indices are the vertex-algebra products: `a_(n)` is the coefficient of `z^{-n-1}`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::{int, Rational};

/// Strong generators of the complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    E1,
    H1,
    F1,
    E2,
    H2,
    F2,
    Psi,
    PsiStar,
}

impl Gen {
    /// Weight for the grading operator `H` of the complex.
    pub fn weight(self) -> i64 {
        match self {
            Gen::E1 | Gen::E2 | Gen::Psi => 0,
            Gen::H1 | Gen::H2 | Gen::PsiStar => 1,
            Gen::F1 | Gen::F2 => 2,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Gen::Psi | Gen::PsiStar)
    }

    pub fn ghost_number(self) -> i64 {
        match self {
            Gen::Psi => -1,
            Gen::PsiStar => 1,
            _ => 0,
        }
    }

    /// `sl2` index (e, h, f) = (0, 1, 2) for the affine generators.
    fn affine_index(self) -> Option<u8> {
        match self {
            Gen::E1 => Some(0),
            Gen::H1 => Some(1),
            Gen::F1 => Some(2),
            _ => None,
        }
    }
}

/// A basis monomial of the Fock model.
///
/// `vk` holds affine creation modes `(index, n)` with `n < 0`, sorted; the state is
/// `vk[0] vk[1] ... |0>`. The lattice part is `osc ⊗ e^{charge α}` with `osc` the
/// Heisenberg creation modes `α_{-k}` (sorted descending). Ghosts are
/// `ψ_(psi[0]) ... ψ*_(psis[0]) ... |0>` with both lists strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct State {
    pub vk: Vec<(u8, i32)>,
    pub charge: i32,
    pub osc: Vec<u32>,
    pub psi: Vec<i32>,
    pub psis: Vec<i32>,
}

pub type Vector = BTreeMap<State, Rational>;

impl State {
    pub fn vacuum() -> Self {
        State::default()
    }

    /// Eigenvalue of the grading operator `H`.
    pub fn weight(&self) -> i64 {
        let vk: i64 = self.vk.iter().map(|&(g, n)| g as i64 - n as i64 - 1).sum();
        let c = self.charge as i64;
        let lat = c * c - c + self.osc.iter().map(|&k| k as i64).sum::<i64>();
        let gh: i64 = self.psi.iter().map(|&n| -(n as i64) - 1).sum::<i64>()
            + self.psis.iter().map(|&n| -(n as i64)).sum::<i64>();
        vk + lat + gh
    }

    pub fn ghost_number(&self) -> i64 {
        self.psis.len() as i64 - self.psi.len() as i64
    }
}

pub fn unit(s: State) -> Vector {
    let mut v = Vector::new();
    v.insert(s, Rational::one());
    v
}

pub fn add_into(acc: &mut Vector, v: &Vector, c: &Rational) {
    if c.is_zero() {
        return;
    }
    for (s, x) in v {
        let e = acc.entry(s.clone()).or_insert_with(Rational::zero);
        *e += x * c;
        if e.is_zero() {
            acc.remove(s);
        }
    }
}

fn add_term(acc: &mut Vector, s: State, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(s.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&s);
    }
}

/// The level of the affine factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fock {
    pub k: Rational,
}

// sl2 structure constants: [x, y] as (coefficient, index)
fn bracket(x: u8, y: u8) -> Option<(i64, u8)> {
    match (x, y) {
        (0, 2) => Some((1, 1)),
        (2, 0) => Some((-1, 1)),
        (1, 0) => Some((2, 0)),
        (0, 1) => Some((-2, 0)),
        (1, 2) => Some((-2, 2)),
        (2, 1) => Some((2, 2)),
        _ => None,
    }
}

fn form(x: u8, y: u8) -> i64 {
    match (x, y) {
        (0, 2) | (2, 0) => 1,
        (1, 1) => 2,
        _ => 0,
    }
}

impl Fock {
    pub fn new(k: Rational) -> Self {
        Fock { k }
    }

    /// `g_(n)` applied to a vector.
    pub fn apply(&self, g: Gen, n: i32, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (s, c) in v {
            for (t, x) in self.apply_state(g, n, s) {
                add_term(&mut out, t, x * c);
            }
        }
        out
    }

    pub fn apply_state(&self, g: Gen, n: i32, s: &State) -> Vec<(State, Rational)> {
        if let Some(x) = g.affine_index() {
            let mut out = Vector::new();
            self.affine(x, n, &s.vk, &mut |vk, c| {
                let mut t = s.clone();
                t.vk = vk;
                add_term(&mut out, t, c);
            });
            return out.into_iter().collect();
        }
        match g {
            Gen::H2 => heisenberg(n, s),
            Gen::E2 => vertex_operator(1, n, s),
            Gen::F2 => vertex_operator(-1, n, s),
            Gen::Psi => ghost_psi(n, s),
            Gen::PsiStar => ghost_psi_star(n, s),
            _ => unreachable!(),
        }
    }

    // x_(n) applied to the PBW monomial `mono`, each output monomial reported to `sink`
    fn affine(
        &self,
        x: u8,
        n: i32,
        mono: &[(u8, i32)],
        sink: &mut dyn FnMut(Vec<(u8, i32)>, Rational),
    ) {
        if mono.is_empty() {
            if n < 0 {
                sink(vec![(x, n)], Rational::one());
            }
            return;
        }
        let head = mono[0];
        if n < 0 && (n, x) <= (head.1, head.0) {
            let mut m = Vec::with_capacity(mono.len() + 1);
            m.push((x, n));
            m.extend_from_slice(mono);
            sink(m, Rational::one());
            return;
        }
        let rest = &mono[1..];
        // x_n y R = y (x_n R) + [x_n, y] R
        let mut inner = Vector::new();
        self.affine(x, n, rest, &mut |m, c| {
            let s = State {
                vk: m,
                ..State::default()
            };
            add_term(&mut inner, s, c);
        });
        for (s, c) in inner {
            self.affine(head.0, head.1, &s.vk, &mut |m, d| sink(m, &c * d));
        }
        let (y, ny) = head;
        if let Some((coef, z)) = bracket(x, y) {
            let mut tmp = Vec::new();
            self.affine(z, n + ny, rest, &mut |m, c| tmp.push((m, c)));
            for (m, c) in tmp {
                sink(m, c * int(coef));
            }
        }
        if n + ny == 0 && form(x, y) != 0 {
            sink(rest.to_vec(), &self.k * int(n as i64 * form(x, y)));
        }
    }
}

fn heisenberg(n: i32, s: &State) -> Vec<(State, Rational)> {
    match n.cmp(&0) {
        std::cmp::Ordering::Less => {
            let mut t = s.clone();
            let k = (-n) as u32;
            let pos = t.osc.iter().position(|&x| x < k).unwrap_or(t.osc.len());
            t.osc.insert(pos, k);
            vec![(t, Rational::one())]
        }
        std::cmp::Ordering::Equal => {
            if s.charge == 0 {
                vec![]
            } else {
                vec![(s.clone(), int(2 * s.charge as i64))]
            }
        }
        std::cmp::Ordering::Greater => {
            let k = n as u32;
            let mult = s.osc.iter().filter(|&&x| x == k).count();
            if mult == 0 {
                return vec![];
            }
            let mut t = s.clone();
            let pos = t.osc.iter().position(|&x| x == k).unwrap();
            t.osc.remove(pos);
            vec![(t, int(2 * n as i64 * mult as i64))]
        }
    }
}

/// Partitions of `a` as multiplicity maps `k -> c_k`.
fn partitions(a: u32, max: u32) -> Vec<Vec<(u32, u32)>> {
    if a == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in (1..=max.min(a)).rev() {
        for c in 1..=a / k {
            for mut rest in partitions(a - c * k, k - 1) {
                rest.insert(0, (k, c));
                out.push(rest);
            }
        }
    }
    out
}

fn factorial(n: u32) -> Rational {
    (1..=n as i64).map(int).fold(Rational::one(), |a, b| a * b)
}

/// `Y(e^{σα}, z) = e^{σα} z^{σ α_0} exp(σ Σ α_{-k} z^k / k) exp(-σ Σ α_k z^{-k} / k)`, mode `n`.
fn vertex_operator(sigma: i32, n: i32, s: &State) -> Vec<(State, Rational)> {
    let sg = int(sigma as i64);
    // annihilation part, grouped by the level it removes
    let mut cur: Vec<(Vec<u32>, Rational)> = vec![(s.osc.clone(), Rational::one())];
    let maxk = s.osc.first().copied().unwrap_or(0);
    for k in 1..=maxk {
        let mut next: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (osc, c) in &cur {
            // exp(-σ α_k / k) = Σ_j (-σ/k)^j / j! α_k^j
            let mut term = osc.clone();
            let mut coef = c.clone();
            let mut j = 0u32;
            loop {
                let e = next.entry(term.clone()).or_insert_with(Rational::zero);
                *e += &coef / factorial(j);
                let mult = term.iter().filter(|&&x| x == k).count() as i64;
                if mult == 0 {
                    break;
                }
                let pos = term.iter().position(|&x| x == k).unwrap();
                term.remove(pos);
                coef = coef * (-&sg / int(k as i64)) * int(2 * k as i64 * mult);
                j += 1;
            }
        }
        cur = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }
    let level: i64 = s.osc.iter().map(|&k| k as i64).sum();
    let mut out: Vector = Vector::new();
    for (osc, c) in cur {
        let b = level - osc.iter().map(|&k| k as i64).sum::<i64>();
        let a = b - n as i64 - 1 - 2 * sigma as i64 * s.charge as i64;
        if a < 0 {
            continue;
        }
        for part in partitions(a as u32, a as u32) {
            let mut coef = c.clone();
            let mut t = osc.clone();
            for &(k, cnt) in &part {
                coef = coef * (&sg / int(k as i64)).pow(cnt as i32) / factorial(cnt);
                for _ in 0..cnt {
                    t.push(k);
                }
            }
            t.sort_by(|x, y| y.cmp(x));
            let st = State {
                osc: t,
                charge: s.charge + sigma,
                ..s.clone()
            };
            add_term(&mut out, st, coef);
        }
    }
    out.into_iter().collect()
}

fn ghost_psi(n: i32, s: &State) -> Vec<(State, Rational)> {
    if n < 0 {
        match s.psi.binary_search(&n) {
            Ok(_) => vec![],
            Err(pos) => {
                let mut t = s.clone();
                t.psi.insert(pos, n);
                vec![(t, sign(pos))]
            }
        }
    } else {
        // anticommute past all ψ's, contract with ψ*_(-1-n)
        match s.psis.binary_search(&(-1 - n)) {
            Ok(j) => {
                let mut t = s.clone();
                t.psis.remove(j);
                vec![(t, sign(s.psi.len() + j))]
            }
            Err(_) => vec![],
        }
    }
}

fn ghost_psi_star(n: i32, s: &State) -> Vec<(State, Rational)> {
    if n < 0 {
        match s.psis.binary_search(&n) {
            Ok(_) => vec![],
            Err(pos) => {
                let mut t = s.clone();
                t.psis.insert(pos, n);
                vec![(t, sign(s.psi.len() + pos))]
            }
        }
    } else {
        match s.psi.binary_search(&(-1 - n)) {
            Ok(i) => {
                let mut t = s.clone();
                t.psi.remove(i);
                vec![(t, sign(i))]
            }
            Err(_) => vec![],
        }
    }
}

fn sign(passes: usize) -> Rational {
    if passes.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}
