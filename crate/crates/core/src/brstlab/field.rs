//! Field expressions built from the generators, with exact mode evaluation.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::fock::{add_into, Fock, Gen, State, Vector};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Gen(Gen),
    /// `∂^r a`
    Deriv(Box<Field>, u32),
    /// Normally ordered product `:a b:`
    Nop(Box<Field>, Box<Field>),
    Lin(Vec<(Rational, Field)>),
}

impl Field {
    pub fn gen(g: Gen) -> Field {
        Field::Gen(g)
    }

    pub fn deriv(a: Field, r: u32) -> Field {
        Field::Deriv(Box::new(a), r)
    }

    pub fn nop(a: Field, b: Field) -> Field {
        Field::Nop(Box::new(a), Box::new(b))
    }

    pub fn lin(terms: Vec<(Rational, Field)>) -> Field {
        Field::Lin(terms.into_iter().filter(|(c, _)| !c.is_zero()).collect())
    }

    /// `H`-weight of a homogeneous expression.
    pub fn weight(&self) -> i64 {
        match self {
            Field::Gen(g) => g.weight(),
            Field::Deriv(a, r) => a.weight() + *r as i64,
            Field::Nop(a, b) => a.weight() + b.weight(),
            Field::Lin(t) => t.first().map(|(_, f)| f.weight()).unwrap_or(0),
        }
    }

    pub fn is_odd(&self) -> bool {
        match self {
            Field::Gen(g) => g.is_odd(),
            Field::Deriv(a, _) => a.is_odd(),
            Field::Nop(a, b) => a.is_odd() ^ b.is_odd(),
            Field::Lin(t) => t.first().map(|(_, f)| f.is_odd()).unwrap_or(false),
        }
    }
}

fn by_weight(v: &Vector) -> BTreeMap<i64, Vector> {
    let mut groups: BTreeMap<i64, Vector> = BTreeMap::new();
    for (s, c) in v {
        groups
            .entry(s.weight())
            .or_default()
            .insert(s.clone(), c.clone());
    }
    groups
}

impl Fock {
    /// `a_(n) v` for a field expression `a`.
    pub fn mode(&self, a: &Field, n: i64, v: &Vector) -> Vector {
        if v.is_empty() {
            return Vector::new();
        }
        match a {
            Field::Gen(g) => self.apply(*g, n as i32, v),
            Field::Deriv(b, r) => {
                // (∂^r b)_(n) = (-1)^r n (n-1) ... (n-r+1) b_(n-r)
                let mut c = Rational::one();
                for i in 0..*r as i64 {
                    c *= int(-(n - i));
                }
                if c.is_zero() {
                    return Vector::new();
                }
                let mut out = Vector::new();
                add_into(&mut out, &self.mode(b, n - *r as i64, v), &c);
                out
            }
            Field::Lin(terms) => {
                let mut out = Vector::new();
                for (c, f) in terms {
                    add_into(&mut out, &self.mode(f, n, v), c);
                }
                out
            }
            Field::Nop(x, y) => {
                let (dx, dy) = (x.weight(), y.weight());
                let sgn = if x.is_odd() && y.is_odd() {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                let mut out = Vector::new();
                for (w, part) in by_weight(v) {
                    // :xy:_(n) = Σ_{j<0} x_(j) y_(n-j-1) + (-1)^{|x||y|} Σ_{j>=0} y_(n-j-1) x_(j)
                    for j in (n - w - dy)..0 {
                        let inner = self.mode(y, n - j - 1, &part);
                        add_into(&mut out, &self.mode(x, j, &inner), &Rational::one());
                    }
                    for j in 0..=(w + dx - 1) {
                        let inner = self.mode(x, j, &part);
                        add_into(&mut out, &self.mode(y, n - j - 1, &inner), &sgn);
                    }
                }
                out
            }
        }
    }

    /// The state `a_(-1)|0>` of a field applied to an arbitrary vector: `a_(-1) v`.
    pub fn state_of(&self, a: &Field) -> Vector {
        let mut vac = Vector::new();
        vac.insert(State::vacuum(), Rational::one());
        self.mode(a, -1, &vac)
    }
}
