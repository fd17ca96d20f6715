//! BRST complex of the principal reduction of `V^k(sl2) ⊗ L_1(sl2)`, its deformation
//! `Q_t`, the explicit automorphism `φ_t`, and the Urod Virasoro field.

pub mod field;
pub mod fock;
pub mod linalg;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::liecore::{Kind, RootSystem};
use crate::qchar::level1_urod_character;
use crate::rational::{self, int, Rational};

use field::Field;
use fock::{add_into, unit, Fock, Gen, State, Vector};
use linalg::SpanSolver;

/// Letters used to write basis states of `C_{<=0}`: `J = h1 + 2:ψψ*:`, `f1`, `ψ*`, `e2`, `h2`, `f2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    J,
    F1,
    PsiStar,
    E2,
    H2,
    F2,
}

impl Letter {
    fn field(self) -> Field {
        match self {
            Letter::J => j_field(),
            Letter::F1 => Field::gen(Gen::F1),
            Letter::PsiStar => Field::gen(Gen::PsiStar),
            Letter::E2 => Field::gen(Gen::E2),
            Letter::H2 => Field::gen(Gen::H2),
            Letter::F2 => Field::gen(Gen::F2),
        }
    }

    fn weight(self) -> i64 {
        self.field().weight()
    }

    /// Lattice charge `A_(0)` carried by the letter.
    fn charge(self) -> i64 {
        match self {
            Letter::E2 => 1,
            Letter::F2 => -1,
            _ => 0,
        }
    }
}

/// `J^{h1} = h1 + 2 :ψ ψ*:`
pub fn j_field() -> Field {
    Field::lin(vec![
        (int(1), Field::gen(Gen::H1)),
        (
            int(2),
            Field::nop(Field::gen(Gen::Psi), Field::gen(Gen::PsiStar)),
        ),
    ])
}

/// A basis state: letters applied right to left to the vacuum, `(letter, n)` meaning `letter_(n)`.
pub type Word = Vec<(Letter, i64)>;

/// `Q_t = :(e1 + t^2 e2) ψ*: + ψ*`; the differential is its zeroth mode.
pub fn q_field(t: &Rational) -> Field {
    let psis = Field::gen(Gen::PsiStar);
    Field::lin(vec![
        (int(1), Field::nop(Field::gen(Gen::E1), psis.clone())),
        (t * t, Field::nop(Field::gen(Gen::E2), psis.clone())),
        (int(1), psis),
    ])
}

/// Coefficient of `∂J` in the image of `f2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DjCoefficient {
    /// `-t^2/2`, the value forced by the operator product expansions.
    Consistent,
    /// `1`, independent of `t`.
    Displayed,
    Custom(Rational),
}

/// Choice of the automorphism images; the default is the consistent one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiSpec {
    pub dj: DjCoefficient,
    pub quartic_term: bool,
}

impl Default for PhiSpec {
    fn default() -> Self {
        PhiSpec {
            dj: DjCoefficient::Consistent,
            quartic_term: true,
        }
    }
}

/// Images of the generators under `φ_t`.
#[derive(Debug, Clone)]
pub struct PhiImages {
    pub images: BTreeMap<Letter, Field>,
}

pub fn phi_images(k: &Rational, t: &Rational, spec: &PhiSpec) -> PhiImages {
    let t2 = t * t;
    let g = Field::gen;
    let e2 = g(Gen::E2);
    let j = j_field();
    let psi = Field::lin(vec![
        (int(1), g(Gen::Psi)),
        (-t2.clone(), Field::nop(g(Gen::Psi), e2.clone())),
    ]);
    let psis = Field::lin(vec![
        (int(1), g(Gen::PsiStar)),
        (t2.clone(), Field::nop(g(Gen::PsiStar), e2.clone())),
    ]);
    let h1 = Field::lin(vec![
        (int(1), g(Gen::H1)),
        (-&t2 * k, Field::deriv(e2.clone(), 1)),
    ]);
    let phi_j = Field::lin(vec![(int(1), h1), (int(2), Field::nop(psi, psis.clone()))]);
    let f1 = Field::lin(vec![
        (int(1), g(Gen::F1)),
        (t2.clone(), Field::nop(g(Gen::F1), e2.clone())),
    ]);
    let h2 = Field::lin(vec![
        (int(1), g(Gen::H2)),
        (t2.clone(), Field::nop(j.clone(), e2.clone())),
    ]);
    let dj = match &spec.dj {
        DjCoefficient::Consistent => -&t2 / int(2),
        DjCoefficient::Displayed => int(1),
        DjCoefficient::Custom(c) => c.clone(),
    };
    let mut f2_terms = vec![
        (int(1), g(Gen::F2)),
        (-&t2 / int(2), Field::nop(j.clone(), g(Gen::H2))),
        (dj, Field::deriv(j.clone(), 1)),
    ];
    if spec.quartic_term {
        let t4 = &t2 * &t2;
        f2_terms.push((
            -t4 / int(4),
            Field::nop(e2.clone(), Field::nop(j.clone(), j)),
        ));
    }
    let images = BTreeMap::from([
        (Letter::J, phi_j),
        (Letter::F1, f1),
        (Letter::PsiStar, psis),
        (Letter::E2, e2),
        (Letter::H2, h2),
        (Letter::F2, Field::lin(f2_terms)),
    ]);
    PhiImages { images }
}

fn evaluate(fock: &Fock, word: &Word, fields: &dyn Fn(Letter) -> Field) -> Vector {
    let mut v = unit(State::vacuum());
    for &(l, n) in word.iter().rev() {
        v = fock.mode(&fields(l), n, &v);
    }
    v
}

/// One `(w, i)` block of `C_{<=0}` with its chosen basis.
#[derive(Debug)]
pub struct Block {
    pub w: i64,
    pub ghost: i64,
    pub words: Vec<Word>,
    pub vectors: Vec<Vector>,
    /// `A_(0)` eigenvalue of each basis vector.
    pub charges: Vec<i64>,
    solver: SpanSolver,
}

impl Block {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// Coordinates of a vector of this block.
    pub fn express(&self, v: &Vector) -> Result<Vec<Rational>> {
        self.solver.express(v).ok_or_else(|| {
            Error::Brst(format!(
                "vector outside block (w={}, i={})",
                self.w, self.ghost
            ))
        })
    }
}

/// The weight-truncated complex `C_{<=0}` at level `k`, blocks `w < cutoff`, ghost number `0..=2`.
#[derive(Debug)]
pub struct BrstSpace {
    pub k: Rational,
    pub cutoff: i64,
    pub fock: Fock,
    /// Basis words of the level-one lattice factor by weight.
    pub l1: BTreeMap<i64, Vec<Word>>,
    pub blocks: BTreeMap<(i64, i64), Block>,
}

pub const MAX_CUTOFF: i64 = 6;

/// Multisets of modes `(letter, -n)` with total weight `w`, letters of weight `base + n - 1`.
fn bosonic_words(letter: Letter, w: i64, min_n: i64) -> Vec<Word> {
    let shift = |n: i64| letter.weight() + n - 1;
    let mut out = Vec::new();
    if w == 0 {
        out.push(vec![]);
    }
    let mut n = min_n;
    while shift(n) <= w {
        if shift(n) > 0 {
            for mut rest in bosonic_words(letter, w - shift(n), n) {
                rest.insert(0, (letter, -n));
                out.push(rest);
            }
        }
        n += 1;
    }
    out
}

/// Sets of distinct `ψ*` creation modes with `count` elements and total weight `w`.
fn fermionic_words(count: i64, w: i64, min_n: i64) -> Vec<Word> {
    if count == 0 {
        return if w == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut n = min_n;
    while n <= w {
        for mut rest in fermionic_words(count - 1, w - n, n + 1) {
            rest.insert(0, (Letter::PsiStar, -n));
            out.push(rest);
        }
        n += 1;
    }
    out
}

/// PBW words in `e2, h2, f2` creation modes with standard weight `std` and charge `m`.
fn lattice_words(std: i64, m: i64) -> Vec<Word> {
    fn rec(std: i64, m: i64, min: (i64, usize), out: &mut Vec<Word>, cur: &mut Word) {
        if std == 0 {
            if m == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let letters = [Letter::E2, Letter::H2, Letter::F2];
        for n in min.0..=std {
            let start = if n == min.0 { min.1 } else { 0 };
            for (li, &l) in letters.iter().enumerate().skip(start) {
                cur.push((l, -n));
                rec(std - n, m - l.charge(), (n, li), out, cur);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(std, m, (1, 0), &mut out, &mut Vec::new());
    out
}

fn lattice_dims(cutoff: i64) -> Result<Vec<i64>> {
    let a1 = RootSystem::new(Kind::A, 1)?;
    let ch = level1_urod_character(&a1, &a1.zero(), &a1.rho(), &int(cutoff))?;
    Ok((0..cutoff)
        .map(|w| rational::to_i64(&ch.coeff(&int(w))).unwrap_or(-1))
        .collect())
}

fn word_charge(word: &Word) -> i64 {
    word.iter().map(|(l, _)| l.charge()).sum()
}

impl BrstSpace {
    pub fn build(k: Rational, cutoff: i64) -> Result<Self> {
        if cutoff > MAX_CUTOFF {
            return Err(Error::CutoffTooLarge(cutoff as usize));
        }
        if cutoff < 1 {
            return Err(Error::Brst("cutoff must be at least 1".into()));
        }
        let fock = Fock::new(k.clone());
        let dims = lattice_dims(cutoff)?;
        let plain = |l: Letter| l.field();
        let l1: BTreeMap<i64, Vec<Word>> = (0..cutoff)
            .into_par_iter()
            .map(|w| {
                let mut solver = SpanSolver::new();
                let mut chosen = Vec::new();
                for charge in -w..=w + 1 {
                    if charge * charge - charge > w {
                        continue;
                    }
                    for word in lattice_words(w + charge, charge) {
                        if solver.push(&evaluate(&fock, &word, &plain)) {
                            chosen.push(word);
                        }
                    }
                }
                (w, chosen)
            })
            .collect();
        for (w, words) in &l1 {
            if words.len() as i64 != dims[*w as usize] {
                return Err(Error::Brst(format!(
                    "lattice factor at weight {w}: {} independent PBW states, character predicts {}",
                    words.len(),
                    dims[*w as usize]
                )));
            }
        }
        // ghost number i needs weight at least 1 + 2 + ... + i; one extra (empty) level closes the complex
        let top = (0..)
            .take_while(|i: &i64| i * (i + 1) / 2 < cutoff)
            .last()
            .unwrap_or(0)
            + 1;
        let keys: Vec<(i64, i64)> = (0..cutoff)
            .flat_map(|w| (0..=top).map(move |i| (w, i)))
            .collect();
        let blocks: Result<BTreeMap<(i64, i64), Block>> = keys
            .into_par_iter()
            .map(|(w, i)| Self::build_block(&fock, &l1, w, i).map(|b| ((w, i), b)))
            .collect();
        Ok(BrstSpace {
            k,
            cutoff,
            fock,
            l1,
            blocks: blocks?,
        })
    }

    fn build_block(fock: &Fock, l1: &BTreeMap<i64, Vec<Word>>, w: i64, i: i64) -> Result<Block> {
        let plain = |l: Letter| l.field();
        let mut words = Vec::new();
        for wl in 0..=w {
            for wg in 0..=(w - wl) {
                let ghosts = fermionic_words(i, wg, 1);
                if ghosts.is_empty() {
                    continue;
                }
                for wf in 0..=(w - wl - wg) {
                    let wj = w - wl - wg - wf;
                    for jw in bosonic_words(Letter::J, wj, 1) {
                        for fw in bosonic_words(Letter::F1, wf, 1) {
                            for gw in &ghosts {
                                for lw in &l1[&wl] {
                                    let mut word = jw.clone();
                                    word.extend(fw.iter().cloned());
                                    word.extend(gw.iter().cloned());
                                    word.extend(lw.iter().cloned());
                                    words.push(word);
                                }
                            }
                        }
                    }
                }
            }
        }
        words.sort();
        let mut solver = SpanSolver::new();
        let mut vectors = Vec::with_capacity(words.len());
        for word in &words {
            let v = evaluate(fock, word, &plain);
            if !solver.push(&v) {
                return Err(Error::Brst(format!(
                    "dependent basis word {word:?} in block (w={w}, i={i})"
                )));
            }
            vectors.push(v);
        }
        let charges = words.iter().map(word_charge).collect();
        Ok(Block {
            w,
            ghost: i,
            words,
            vectors,
            charges,
            solver,
        })
    }

    pub fn block(&self, w: i64, i: i64) -> Option<&Block> {
        self.blocks.get(&(w, i))
    }

    pub fn dim(&self, w: i64, i: i64) -> usize {
        self.block(w, i).map(Block::dim).unwrap_or(0)
    }

    fn max_ghost(&self) -> i64 {
        self.blocks.keys().map(|&(_, i)| i).max().unwrap_or(0)
    }

    /// `Q_(0) u` for a Fock vector.
    pub fn apply_q(&self, t: &Rational, v: &Vector) -> Vector {
        self.fock.mode(&q_field(t), 0, v)
    }

    /// Matrix of `(Q_t)_(0)` from block `(w, i)` to `(w, i+1)`, one row per source basis vector.
    pub fn q_matrix(&self, t: &Rational, w: i64, i: i64) -> Result<Vec<Vec<Rational>>> {
        let Some(src) = self.block(w, i) else {
            return Ok(vec![]);
        };
        let target = self.block(w, i + 1);
        src.vectors
            .par_iter()
            .map(|u| {
                let image = self.apply_q(t, u);
                match target {
                    Some(b) => b.express(&image),
                    None if image.is_empty() => Ok(vec![]),
                    None => Err(Error::Brst(format!(
                        "Q maps (w={w}, i={i}) outside the truncated complex"
                    ))),
                }
            })
            .collect()
    }

    pub fn q_rank(&self, t: &Rational, w: i64, i: i64) -> Result<usize> {
        if i < 0 {
            return Ok(0);
        }
        Ok(linalg::rank(&self.q_matrix(t, w, i)?))
    }

    /// `dim H^i` at weight `w` for the differential `(Q_t)_(0)`.
    pub fn cohomology(&self, t: &Rational, w: i64, i: i64) -> Result<usize> {
        if w < 0 || w >= self.cutoff {
            return Err(Error::Brst(format!(
                "weight {w} outside 0..{}",
                self.cutoff
            )));
        }
        let c = self.dim(w, i);
        let r_out = self.q_rank(t, w, i)?;
        let r_in = self.q_rank(t, w, i - 1)?;
        Ok(c - r_out - r_in)
    }

    /// `Q_t^2 = 0` on every block.
    pub fn check_nilpotent(&self, t: &Rational) -> bool {
        self.blocks.par_iter().all(|(_, b)| {
            b.vectors
                .iter()
                .all(|u| self.apply_q(t, &self.apply_q(t, u)).is_empty())
        })
    }

    /// `Q_t` preserves `H` and raises the ghost number by one.
    pub fn check_homogeneous(&self, t: &Rational) -> bool {
        self.blocks.par_iter().all(|(&(w, i), b)| {
            b.vectors.iter().all(|u| {
                self.apply_q(t, u)
                    .keys()
                    .all(|s| s.weight() == w && s.ghost_number() == i + 1)
            })
        })
    }

    /// `(Q_t - Q_0) u` only has components of strictly larger lattice charge.
    pub fn check_charge_filtration(&self, t: &Rational) -> bool {
        self.blocks.par_iter().all(|(_, b)| {
            b.vectors.iter().zip(&b.charges).all(|(u, &c)| {
                let mut d = self.apply_q(t, u);
                add_into(
                    &mut d,
                    &self.apply_q(&Rational::zero(), u),
                    &-Rational::one(),
                );
                d.keys().all(|s| s.charge as i64 > c)
            })
        })
    }

    /// Euler characteristic of the complex at weight `w`.
    pub fn euler_chain(&self, w: i64) -> i64 {
        (0..=self.max_ghost())
            .map(|i| if i % 2 == 0 { 1 } else { -1 } * self.dim(w, i) as i64)
            .sum()
    }

    pub fn euler_cohomology(&self, t: &Rational, w: i64) -> Result<i64> {
        let mut s = 0;
        for i in 0..=self.max_ghost() {
            let h = self.cohomology(t, w, i)? as i64;
            s += if i % 2 == 0 { h } else { -h };
        }
        Ok(s)
    }
}

/// Coefficients of `prod_{n>=2} (1-q^n)^{-1}` times the Urod-graded level-one character:
/// the expected `dim H^0` by weight.
pub fn expected_h0_dims(cutoff: i64) -> Result<Vec<i64>> {
    let order = int(cutoff);
    let a1 = RootSystem::new(Kind::A, 1)?;
    let lat = level1_urod_character(&a1, &a1.zero(), &a1.rho(), &order)?;
    // Virasoro vacuum: 1/φ(q) times (1 - q)
    let eta = crate::qchar::eta_inverse_power(1, &order);
    let one_minus_q =
        crate::qchar::QSeries::from_terms([(int(0), int(1)), (int(1), int(-1))], order.clone());
    let ch = eta.mul(&one_minus_q).mul(&lat);
    Ok((0..cutoff)
        .map(|w| rational::to_i64(&ch.coeff(&int(w))).unwrap_or(-1))
        .collect())
}

/// Outcome of comparing `φ_t ∘ (Q_0)_(0)` with `(Q_t)_(0) ∘ φ_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntertwineReport {
    pub pass: bool,
    pub blocks_checked: usize,
    /// Blocks `(w, i)` where the identity fails.
    pub failures: Vec<(i64, i64)>,
}

impl BrstSpace {
    /// `φ_t` applied to the basis vector written by `word`.
    pub fn phi_vector(&self, images: &PhiImages, word: &Word) -> Vector {
        evaluate(&self.fock, word, &|l| images.images[&l].clone())
    }

    fn phi_block(&self, images: &PhiImages, w: i64, i: i64) -> Vec<Vector> {
        match self.block(w, i) {
            Some(b) => b
                .words
                .par_iter()
                .map(|word| self.phi_vector(images, word))
                .collect(),
            None => vec![],
        }
    }

    /// Matrix of `φ_t` on block `(w, i)`; fails if an image leaves the block.
    pub fn phi_matrix(
        &self,
        t: &Rational,
        spec: &PhiSpec,
        w: i64,
        i: i64,
    ) -> Result<Vec<Vec<Rational>>> {
        let images = phi_images(&self.k, t, spec);
        let Some(b) = self.block(w, i) else {
            return Ok(vec![]);
        };
        self.phi_block(&images, w, i)
            .iter()
            .map(|v| b.express(v))
            .collect()
    }

    pub fn check_intertwining(&self, t: &Rational, spec: &PhiSpec) -> Result<IntertwineReport> {
        let images = phi_images(&self.k, t, spec);
        let zero = Rational::zero();
        let keys: Vec<(i64, i64)> = self
            .blocks
            .keys()
            .cloned()
            .filter(|&(w, i)| self.dim(w, i) > 0)
            .collect();
        let results: Result<Vec<((i64, i64), bool)>> = keys
            .par_iter()
            .map(|&(w, i)| {
                let src = self.block(w, i).unwrap();
                let phi_src = self.phi_block(&images, w, i);
                let phi_tgt = self.phi_block(&images, w, i + 1);
                let tgt = self.block(w, i + 1);
                let mut ok = true;
                for (u, pu) in src.vectors.iter().zip(&phi_src) {
                    let q0u = self.apply_q(&zero, u);
                    let mut lhs = Vector::new();
                    if !q0u.is_empty() {
                        let Some(tb) = tgt else {
                            return Err(Error::Brst(format!(
                                "Q_0 leaves the complex at (w={w}, i={i})"
                            )));
                        };
                        for (c, pv) in tb.express(&q0u)?.iter().zip(&phi_tgt) {
                            add_into(&mut lhs, pv, c);
                        }
                    }
                    if lhs != self.apply_q(t, pu) {
                        ok = false;
                        break;
                    }
                }
                Ok(((w, i), ok))
            })
            .collect();
        let results = results?;
        let failures: Vec<(i64, i64)> = results
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(k, _)| *k)
            .collect();
        Ok(IntertwineReport {
            pass: failures.is_empty(),
            blocks_checked: results.len(),
            failures,
        })
    }

    /// `φ_t(u) - u` only involves strictly larger `A_(0)` eigenvalues, block by block.
    pub fn check_phi_triangular(&self, t: &Rational, spec: &PhiSpec) -> bool {
        let images = phi_images(&self.k, t, spec);
        self.blocks.par_iter().all(|(_, b)| {
            b.words
                .iter()
                .zip(&b.vectors)
                .zip(&b.charges)
                .all(|((word, u), &c)| {
                    let mut d = self.phi_vector(&images, word);
                    add_into(&mut d, u, &-Rational::one());
                    d.keys().all(|s| s.charge as i64 > c)
                })
        })
    }

    /// `φ_t` is invertible on every block.
    pub fn check_phi_invertible(&self, t: &Rational, spec: &PhiSpec) -> Result<bool> {
        for (&(w, i), b) in &self.blocks {
            if b.dim() > 0 && linalg::rank(&self.phi_matrix(t, spec, w, i)?) != b.dim() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `φ_t` is the identity on every block.
    pub fn check_phi_identity(&self, t: &Rational, spec: &PhiSpec) -> bool {
        let images = phi_images(&self.k, t, spec);
        self.blocks.par_iter().all(|(_, b)| {
            b.words
                .iter()
                .zip(&b.vectors)
                .all(|(w, u)| &self.phi_vector(&images, w) == u)
        })
    }
}

/// Urod conformal vector `ω = ¼:h2 h2: + ½∂h2 - ((k+1)/2)∂²e2` on the level-one factor.
pub fn urod_omega(k: &Rational) -> Field {
    Field::lin(vec![
        (
            Rational::new(1.into(), 4.into()),
            Field::nop(Field::gen(Gen::H2), Field::gen(Gen::H2)),
        ),
        (
            Rational::new(1.into(), 2.into()),
            Field::deriv(Field::gen(Gen::H2), 1),
        ),
        (-(k + int(1)) / int(2), Field::deriv(Field::gen(Gen::E2), 2)),
    ])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirasoroReport {
    pub k: Rational,
    pub central_charge: Rational,
    pub bracket_ok: bool,
    pub l0_matches_grading: bool,
    pub states_checked: usize,
}

/// Checks the Virasoro relations of the Urod field for `|m|, |n| <= 2` on all level-one
/// basis states of weight `< cutoff`, and that `L_0` is the grading operator there.
pub fn urod_virasoro_check(k: &Rational, cutoff: i64) -> Result<VirasoroReport> {
    let space = BrstSpace::build(k.clone(), cutoff)?;
    let fock = &space.fock;
    let omega = urod_omega(k);
    let l = |m: i64, v: &Vector| fock.mode(&omega, m + 1, v);
    let vac = unit(State::vacuum());
    let c = l(2, &l(-2, &vac))
        .get(&State::vacuum())
        .cloned()
        .unwrap_or_else(Rational::zero)
        * int(2);
    let states = space.l1_states();
    let l0_ok = states.par_iter().all(|(w, v)| {
        let mut d = l(0, v);
        add_into(&mut d, v, &-int(*w));
        d.is_empty()
    });
    let bracket_ok = states.par_iter().all(|(_, v)| {
        (-2..=2i64).all(|m| {
            (-2..=2i64).all(|n| {
                let mut lhs = l(m, &l(n, v));
                add_into(&mut lhs, &l(n, &l(m, v)), &-Rational::one());
                let mut rhs = Vector::new();
                add_into(&mut rhs, &l(m + n, v), &int(m - n));
                if m + n == 0 {
                    add_into(&mut rhs, v, &(&c * int(m * m * m - m) / int(12)));
                }
                lhs == rhs
            })
        })
    });
    Ok(VirasoroReport {
        k: k.clone(),
        central_charge: c,
        bracket_ok,
        l0_matches_grading: l0_ok,
        states_checked: states.len(),
    })
}

/// Block-by-block summary for one value of `t`.
pub fn summary_json(space: &BrstSpace, t: &Rational, spec: &PhiSpec) -> Result<Value> {
    let mut blocks = Vec::new();
    for w in 0..space.cutoff {
        for i in -1..=1 {
            blocks.push(json!({
                "w": w, "i": i, "dimC": if i < 0 { 0 } else { space.dim(w, i) },
                "dimH": space.cohomology(t, w, i)?,
            }));
        }
    }
    let inter = space.check_intertwining(t, spec)?;
    let vir = urod_virasoro_check(&space.k, space.cutoff)?;
    Ok(json!({
        "k": space.k.to_string(),
        "t": t.to_string(),
        "N": space.cutoff,
        "blocks": blocks,
        "checks": {
            "nilpotent": space.check_nilpotent(t),
            "intertwining": inter.pass,
            "virasoro_c": vir.central_charge.to_string(),
        },
    }))
}

impl BrstSpace {
    fn l1_states(&self) -> Vec<(i64, Vector)> {
        self.l1
            .iter()
            .flat_map(|(&w, words)| words.iter().map(move |word| (w, word.clone())))
            .map(|(w, word)| (w, evaluate(&self.fock, &word, &|x| x.field())))
            .collect()
    }

    /// All modes of `:e2 e2:` vanish on the level-one factor, hence
    /// `(1 - t² e2)(1 + t² e2) = 1 - t⁴ :e2 e2:` acts as the identity there.
    pub fn check_e2_square_zero(&self) -> bool {
        let ee = Field::nop(Field::gen(Gen::E2), Field::gen(Gen::E2));
        self.l1_states()
            .par_iter()
            .all(|(w, v)| (-self.cutoff - 1..=*w).all(|n| self.fock.mode(&ee, n, v).is_empty()))
    }

    /// Per-block CSV: `w,i,dimC,dimH`.
    pub fn blocks_csv(&self, t: &Rational) -> Result<String> {
        let mut out = String::from("w,i,dimC,dimH\n");
        for w in 0..self.cutoff {
            for i in 0..=1 {
                out.push_str(&format!(
                    "{w},{i},{},{}\n",
                    self.dim(w, i),
                    self.cohomology(t, w, i)?
                ));
            }
        }
        Ok(out)
    }
}
