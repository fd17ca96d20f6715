//! Exact central charges and conformal weights.

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::grading::{grade_stats, GoodGrading};
use crate::liecore::{Kind, RootSystem, Weight};
use crate::rational::{int, Rational};

#[derive(Debug, Clone)]
pub struct CcContext<'a> {
    pub sys: &'a RootSystem,
    pub grading: &'a GoodGrading,
    pub t: Rational,
}

impl<'a> CcContext<'a> {
    pub fn new(sys: &'a RootSystem, grading: &'a GoodGrading, t: Rational) -> Result<Self> {
        if t.is_zero() {
            return Err(Error::Pole("t = 0 (critical level)".into()));
        }
        if grading.x0.system != sys.id {
            return Err(Error::MismatchedSystems);
        }
        Ok(CcContext { sys, grading, t })
    }

    fn at(&self, t: Rational) -> Result<CcContext<'a>> {
        CcContext::new(self.sys, self.grading, t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalModelData {
    pub p: i64,
    pub q: i64,
    pub c: Rational,
    /// Kac table, `1 <= r <= q-1`, `1 <= s <= p-1`.
    pub weights: BTreeMap<(i64, i64), Rational>,
}

impl MinimalModelData {
    /// Distinct conformal weights of the table.
    pub fn distinct_weights(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.weights.values().cloned().collect();
        v.sort();
        v.dedup();
        v
    }
}

fn nonzero(t: &Rational, what: &str) -> Result<()> {
    if t.is_zero() {
        Err(Error::Pole(format!("{what} = 0")))
    } else {
        Ok(())
    }
}

pub fn sugawara_cc(sys: &RootSystem, t: &Rational) -> Result<Rational> {
    nonzero(t, "t")?;
    Ok((t - int(sys.h_dual)) * int(sys.dim_g) / t)
}

/// `|rho/sqrt(t) - sqrt(t) x0|^2`, expanded.
fn shifted_norm(sys: &RootSystem, x0: &Weight, t: &Rational) -> Rational {
    let rho = sys.rho();
    let rr = sys.norm(&rho).unwrap();
    let rx = sys.inner_product(&rho, x0).unwrap();
    let xx = sys.norm(x0).unwrap();
    rr / t - int(2) * rx + t * xx
}

pub fn w_cc(ctx: &CcContext) -> Result<Rational> {
    nonzero(&ctx.t, "t")?;
    let st = grade_stats(ctx.sys, ctx.grading);
    Ok(int(st.dim_g0 as i64)
        - int(st.dim_g_half as i64) / int(2)
        - int(12) * shifted_norm(ctx.sys, &ctx.grading.x0, &ctx.t))
}

fn shifted_total(ctx: &CcContext, ell_t: &Rational) -> Result<Rational> {
    nonzero(ell_t, "l + h")?;
    let big = &ctx.t + ell_t - int(ctx.sys.h_dual);
    nonzero(&big, "k + l + h")?;
    Ok(big)
}

pub fn total_cc(ctx: &CcContext, ell_t: &Rational) -> Result<Rational> {
    let big = shifted_total(ctx, ell_t)?;
    Ok(
        sugawara_cc(ctx.sys, &ctx.t)? + sugawara_cc(ctx.sys, ell_t)? - sugawara_cc(ctx.sys, &big)?
            + w_cc(&ctx.at(big)?)?,
    )
}

pub fn urod_cc(ctx: &CcContext, ell_t: &Rational) -> Result<Rational> {
    let big = shifted_total(ctx, ell_t)?;
    let x0 = &ctx.grading.x0;
    Ok(
        sugawara_cc(ctx.sys, &ctx.t)? + sugawara_cc(ctx.sys, ell_t)? - sugawara_cc(ctx.sys, &big)?
            + int(12) * (shifted_norm(ctx.sys, x0, &ctx.t) - shifted_norm(ctx.sys, x0, &big)),
    )
}

pub fn urod_cc_principal(sys: &RootSystem, ell: i64) -> Result<Rational> {
    if ell < 0 {
        return Err(Error::NegativeLevel(ell));
    }
    let h = sys.h;
    Ok(Rational::new(
        (-ell * (ell * h + h * h - 1) * sys.dim_g).into(),
        (ell + h).into(),
    ))
}

fn lowest_terms(t: &Rational) -> Option<(i64, i64)> {
    Some((t.numer().to_i64()?, t.denom().to_i64()?))
}

pub fn minimal_model(t: &Rational) -> Result<MinimalModelData> {
    let (p, q) = lowest_terms(t)
        .filter(|&(p, q)| p >= 2 && q >= 2)
        .ok_or_else(|| {
            Error::InvalidLabel(format!(
                "t = {t} does not define a minimal model (need p, q >= 2)"
            ))
        })?;
    let pq4 = 4 * p * q;
    let c = int(1) - Rational::new((6 * (p - q) * (p - q)).into(), (p * q).into());
    let mut weights = BTreeMap::new();
    for r in 1..q {
        for s in 1..p {
            let a = r * p - s * q;
            weights.insert(
                (r, s),
                Rational::new((a * a - (p - q) * (p - q)).into(), pq4.into()),
            );
        }
    }
    Ok(MinimalModelData { p, q, c, weights })
}

/// Conformal weight `(l, l + 2 rho)/(2t) - (l, x0)` of the Fock/Verma module with highest
/// weight `l`, principal grading of `sl2`.
pub fn fock_highest_weight(lambda: &Weight, t: &Rational) -> Result<Rational> {
    nonzero(t, "t")?;
    if lambda.system.kind != Kind::A || lambda.system.rank != 1 {
        return Err(Error::UnsupportedSystem {
            kind: lambda.system.kind.letter(),
            rank: lambda.system.rank,
        });
    }
    let m = &lambda.coeffs[0];
    Ok(m * (m + int(2)) / (int(4) * t) - m / int(2))
}

pub fn extension_cc(sys: &RootSystem, n: i64, psi: &Rational) -> Result<Rational> {
    if n < 0 {
        return Err(Error::NegativeLevel(n));
    }
    let rk = int(sys.rank() as i64);
    let hd = int(sys.h * sys.dim_g);
    let base = int(2) * rk + int(4) * &hd;
    if n == 0 {
        return Ok(base);
    }
    let den = int(n) * psi - Rational::one();
    nonzero(&den, "n psi - 1")?;
    Ok(base - int(n) * hd * (Rational::one() + psi * psi / den))
}

pub fn extension_conformal_dim(sys: &RootSystem, lambda: &Weight, n: i64) -> Result<Rational> {
    let ll = sys.norm(lambda)?;
    let lr = sys.inner_product(lambda, &sys.rho())?;
    Ok(int(n) * ll / int(2) + int(n - 2) * lr)
}

/// Does `t` have a pole of the central-charge calculus among `t`, `t+1`, or the companion?
pub fn cc_identity_poles(t: &Rational) -> bool {
    t.is_zero() || (t + int(1)).is_zero()
}

/// Both sides of the conformal-embedding identity
/// `w(t+1) + w_prin(companion(t+1)) = w(t) + U(t, l=1)`.
pub fn embedding_identity_sides(
    ctx: &CcContext,
    principal: &GoodGrading,
) -> Result<(Rational, Rational)> {
    if cc_identity_poles(&ctx.t) {
        return Err(Error::Pole(format!(
            "t = {} is a pole of the identity",
            ctx.t
        )));
    }
    let t1 = &ctx.t + int(1);
    let comp = &t1 / (&t1 - int(1));
    let lhs = w_cc(&ctx.at(t1)?)? + w_cc(&CcContext::new(ctx.sys, principal, comp)?)?;
    let rhs = w_cc(ctx)? + urod_cc(ctx, &int(ctx.sys.h_dual + 1))?;
    Ok((lhs, rhs))
}
