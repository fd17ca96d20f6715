//! The full acceptance suite as a list of independent checks, run concurrently and merged
//! by check id into one deterministic JSON document.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::brstlab::{self, BrstSpace, PhiSpec};
use crate::ccalc::{self, CcContext};
use crate::decomp;
use crate::error::Result;
use crate::fusionring;
use crate::grading::{partition_grading, principal_grading};
use crate::liecore::{Kind, RootSystem, Weight};
use crate::rational::{int, q, Rational};

/// One named check: `(pass, detail)`.
pub type CheckFn = fn() -> Result<(bool, Value)>;

fn sys(kind: Kind, rank: usize) -> RootSystem {
    RootSystem::new(kind, rank).expect("supported system")
}

fn a1_weight(m: i64) -> Weight {
    Weight::from_ints(sys(Kind::A, 1).id, &[m])
}

pub fn w_cc_samples() -> Vec<Rational> {
    vec![
        q(5, 2),
        q(5, 3),
        q(3, 2),
        q(4, 3),
        q(7, 2),
        q(7, 3),
        q(7, 4),
        q(7, 5),
        q(10, 3),
        q(11, 7),
    ]
}

pub fn level_samples() -> Vec<Rational> {
    vec![q(7, 5), q(-1, 2), q(10, 3), q(5, 7), q(13, 4)]
}

fn cc_w_minimal() -> Result<(bool, Value)> {
    let a1 = sys(Kind::A, 1);
    let g = principal_grading(&a1);
    let mut rows = Vec::new();
    let mut pass = true;
    for t in w_cc_samples() {
        let c = ccalc::w_cc(&CcContext::new(&a1, &g, t.clone())?)?;
        let closed = int(13) - int(6) * (&t + Rational::from_integer(1.into()) / &t);
        let minimal = ccalc::minimal_model(&t)?.c;
        pass &= c == closed && c == minimal;
        rows.push(json!({"t": t.to_string(), "c": c.to_string(), "minimal": minimal.to_string()}));
    }
    Ok((pass, json!({ "rows": rows })))
}

fn cc_urod_principal() -> Result<(bool, Value)> {
    let a = ccalc::urod_cc_principal(&sys(Kind::A, 1), 1)?;
    let b = ccalc::urod_cc_principal(&sys(Kind::A, 2), 1)?;
    Ok((
        a == int(-5) && b == int(-22),
        json!({"A1": a.to_string(), "A2": b.to_string()}),
    ))
}

fn cc_k_independence() -> Result<(bool, Value)> {
    let mut out = BTreeMap::new();
    let mut pass = true;
    for s in [sys(Kind::A, 1), sys(Kind::A, 2), sys(Kind::D, 4)] {
        let g = principal_grading(&s);
        let expected = ccalc::urod_cc_principal(&s, 1)?;
        let ell_t = int(1 + s.h_dual);
        let values: Vec<Rational> = level_samples()
            .into_iter()
            .map(|k| ccalc::urod_cc(&CcContext::new(&s, &g, k + int(s.h_dual))?, &ell_t))
            .collect::<Result<_>>()?;
        pass &= values.iter().all(|v| v == &expected);
        out.insert(
            s.id.to_string(),
            values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        );
    }
    Ok((pass, json!(out)))
}

fn cc_embedding_identity() -> Result<(bool, Value)> {
    let samples = level_samples();
    let a1 = sys(Kind::A, 1);
    let a2 = sys(Kind::A, 2);
    let r1 = decomp::cc_identity_suite(
        &a1,
        &[("principal".into(), principal_grading(&a1))],
        &samples,
    )?;
    let r2 = decomp::cc_identity_suite(
        &a2,
        &[
            ("principal".into(), principal_grading(&a2)),
            ("partition=2,1".into(), partition_grading(&a2, &[2, 1])?),
        ],
        &samples,
    )?;
    let pass = r1.iter().chain(&r2).all(decomp::CcRow::pass);
    Ok((
        pass,
        json!({"A1": decomp::cc_rows_json(&a1, &r1), "A2": decomp::cc_rows_json(&a2, &r2)}),
    ))
}

fn cc_extension() -> Result<(bool, Value)> {
    let a1 = sys(Kind::A, 1);
    let (h, dim, rk) = (int(a1.h), int(a1.dim_g), int(a1.rank() as i64));
    let mut pass = ccalc::extension_cc(&a1, 0, &int(3))? == int(26);
    for psi in [int(3), q(5, 2), q(-2, 7)] {
        for n in 0..4i64 {
            let diff = ccalc::extension_cc(&a1, n + 1, &psi)? - ccalc::extension_cc(&a1, n, &psi)?;
            let one = Rational::from_integer(1.into());
            let step = -((&h * &h + &h - &one) / (&h + &one)) * &dim - &rk
                + &h * &dim * &psi * &psi / ((int(n) * &psi - &one) * (int(n + 1) * &psi - &one));
            pass &= diff == step;
        }
    }
    let direct = ccalc::extension_cc(&a1, 1, &int(3))?;
    let g = principal_grading(&a1);
    let route = ccalc::extension_cc(&a1, 0, &int(3))? + ccalc::urod_cc_principal(&a1, 1)?
        - ccalc::w_cc(&CcContext::new(&a1, &g, int(1) - int(3))?)?;
    pass &= direct == int(-7) && route == direct;
    Ok((
        pass,
        json!({"extension_cc(1,3)": direct.to_string(), "via_urod": route.to_string()}),
    ))
}

fn report_check(rep: decomp::DecompReport) -> (bool, Value) {
    (rep.equal, rep.to_json())
}

fn urod_nu0() -> Result<(bool, Value)> {
    let rep = decomp::verify_urod_decomposition(&a1_weight(0), &int(30), false)?;
    let lowest = rep.lhs.head(1).first().map(|(e, c)| (e.clone(), c.clone()));
    let forced = lowest == Some((int(0), int(2)));
    let (ok, mut v) = report_check(rep);
    v["lowest_coefficient_is_2"] = json!(forced);
    Ok((ok && forced, v))
}

fn urod_nu1() -> Result<(bool, Value)> {
    Ok(report_check(decomp::verify_urod_decomposition(
        &a1_weight(1),
        &int(30),
        false,
    )?))
}

fn verma_00() -> Result<(bool, Value)> {
    Ok(report_check(decomp::verify_verma_decomposition(
        &q(10, 3),
        &int(0),
        &a1_weight(0),
        &int(20),
        None,
    )?))
}

fn verma_mu() -> Result<(bool, Value)> {
    Ok(report_check(decomp::verify_verma_decomposition(
        &q(10, 3),
        &q(1, 7),
        &a1_weight(0),
        &int(20),
        None,
    )?))
}

fn verma_nu() -> Result<(bool, Value)> {
    Ok(report_check(decomp::verify_verma_decomposition(
        &q(10, 3),
        &int(0),
        &a1_weight(1),
        &int(20),
        None,
    )?))
}

fn freefield() -> Result<(bool, Value)> {
    let mut pass = true;
    let mut out = BTreeMap::new();
    for nu in [0, 1] {
        let (rep, _, _) =
            decomp::verify_freefield_decomposition(&q(10, 3), &int(0), &a1_weight(nu), &int(10))?;
        pass &= rep.equal;
        out.insert(format!("nu={nu}"), rep.to_json());
    }
    Ok((pass, json!(out)))
}

fn admissible() -> Result<(bool, Value)> {
    Ok(report_check(decomp::verify_admissible_decomposition(
        &a1_weight(0),
        &int(12),
    )?))
}

fn brst_at(k: Rational) -> Result<(bool, Value)> {
    let n = 4;
    let space = BrstSpace::build(k.clone(), n)?;
    let spec = PhiSpec::default();
    let expected = brstlab::expected_h0_dims(n)?;
    let (zero, one) = (int(0), int(1));
    let nilpotent = space.check_nilpotent(&zero) && space.check_nilpotent(&one);
    let mut vanishing = true;
    let mut h0_match = true;
    let mut blocks = Vec::new();
    for w in 0..n {
        for i in [-1, 1] {
            vanishing &= space.cohomology(&zero, w, i)? == 0 && space.cohomology(&one, w, i)? == 0;
        }
        let (h0, h1) = (
            space.cohomology(&zero, w, 0)?,
            space.cohomology(&one, w, 0)?,
        );
        h0_match &= h0 == h1 && h1 as i64 == expected[w as usize];
        blocks.push(json!({"w": w, "dimC0": space.dim(w, 0), "dimC1": space.dim(w, 1), "dimH0_t0": h0, "dimH0_t1": h1}));
    }
    let inter = space.check_intertwining(&one, &spec)?;
    let vir = brstlab::urod_virasoro_check(&k, n)?;
    let vir_ok = vir.central_charge == int(-5) && vir.bracket_ok && vir.l0_matches_grading;
    let pass = nilpotent && vanishing && h0_match && inter.pass && vir_ok;
    Ok((
        pass,
        json!({
            "k": k.to_string(),
            "N": n,
            "blocks": blocks,
            "expected_h0": expected,
            "nilpotent": nilpotent,
            "h_pm1_vanish": vanishing,
            "h0_match": h0_match,
            "intertwining": inter.pass,
            "virasoro_c": vir.central_charge.to_string(),
            "virasoro_ok": vir_ok,
        }),
    ))
}

fn brst_k1() -> Result<(bool, Value)> {
    brst_at(q(7, 5))
}

fn brst_k2() -> Result<(bool, Value)> {
    brst_at(q(-1, 2))
}

fn fusion_kac_walton() -> Result<(bool, Value)> {
    let a1 = sys(Kind::A, 1);
    let mut pass = true;
    let mut sizes = BTreeMap::new();
    for m in 1..=4 {
        let ring = fusionring::wzw_fusion(&a1, m)?;
        let tt = fusionring::a1_truncated_tensoring(m);
        for (x, row) in tt.iter().enumerate() {
            for (y, col) in row.iter().enumerate() {
                for (z, &n) in col.iter().enumerate() {
                    pass &= ring.coefficient(x, y, z) == n;
                }
            }
        }
        sizes.insert(format!("level {m}"), ring.len());
    }
    Ok((pass, json!(sizes)))
}

fn fusion_transport() -> Result<(bool, Value)> {
    let a1 = sys(Kind::A, 1);
    let ring = fusionring::transport(&a1, &q(5, 2))?;
    let pass = ring.len() == 4
        && ring.is_associative()
        && ring.is_commutative()
        && ring.is_unital()
        && ring.respects_grading(&a1)?;
    Ok((pass, ring.to_json()))
}

fn fusion_integrality() -> Result<(bool, Value)> {
    let mut pass = true;
    let mut out = BTreeMap::new();
    for s in [sys(Kind::A, 1), sys(Kind::A, 2)] {
        let rep = fusionring::integrality_scan(&s, 2, &int(50))?;
        pass &= rep.pass;
        out.insert(s.id.to_string(), rep.to_json());
    }
    Ok((pass, json!(out)))
}

/// Every acceptance check, keyed by a stable id.
pub fn checks() -> Vec<(&'static str, CheckFn)> {
    vec![
        ("1.cc.w_cc_minimal", cc_w_minimal as CheckFn),
        ("1.cc.urod_principal", cc_urod_principal),
        ("1.cc.k_independence", cc_k_independence),
        ("1.cc.embedding_identity", cc_embedding_identity),
        ("1.cc.extension", cc_extension),
        ("2.urod.nu=0", urod_nu0),
        ("2.urod.nu=1", urod_nu1),
        ("3.verma.mu=0,nu=0", verma_00),
        ("3.verma.mu=1/7,nu=0", verma_mu),
        ("3.verma.mu=0,nu=1", verma_nu),
        ("4.freefield", freefield),
        ("4.admissible", admissible),
        ("5.brst.k=7/5", brst_k1),
        ("5.brst.k=-1/2", brst_k2),
        ("6.fusion.kac_walton", fusion_kac_walton),
        ("6.fusion.transport", fusion_transport),
        ("6.fusion.integrality", fusion_integrality),
    ]
}

/// Runs the checks concurrently and merges by id. Errors count as failures.
pub fn run_checks(list: &[(&'static str, CheckFn)]) -> Value {
    let results: Vec<(&str, Value)> = list
        .par_iter()
        .map(|(id, f)| {
            let v = match f() {
                Ok((pass, detail)) => json!({"pass": pass, "detail": detail}),
                Err(e) => json!({"pass": false, "error": e.to_string()}),
            };
            (*id, v)
        })
        .collect();
    let pass = results.iter().all(|(_, v)| v["pass"] == json!(true));
    let merged: BTreeMap<&str, Value> = results.into_iter().collect();
    json!({"pass": pass, "checks": merged})
}

pub fn run_manifest() -> Value {
    run_checks(&checks())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_checks_pass_and_merge_sorted() {
        let cheap: Vec<_> = checks()
            .into_iter()
            .filter(|(id, _)| id.starts_with("1.") || id.starts_with("6."))
            .collect();
        let v = run_checks(&cheap);
        assert_eq!(v["pass"], json!(true), "{v:#}");
        let keys: Vec<&String> = v["checks"].as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn failures_are_reported() {
        fn bad() -> Result<(bool, Value)> {
            Err(crate::error::Error::Brst("boom".into()))
        }
        let v = run_checks(&[("x", bad as CheckFn)]);
        assert_eq!(v["pass"], json!(false));
        assert_eq!(v["checks"]["x"]["error"], "BRST complex: boom");
    }
}
