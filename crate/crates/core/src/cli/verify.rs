use std::time::Instant;

use rayon::prelude::*;

use crate::constructions;
use crate::kernel::Term;
use crate::matrix::{evaluate, float_model, name_matrix, Matrix, Model, ModelKind, ModelScalar};
use crate::protocols::{
    beta_matrices, build_cnot_teleportation, build_entanglement_swapping, build_logic_gate_teleportation,
    build_teleportation, cnot_relations, swap_projector, unitary_corrections, validate_teleportation_base,
    verify_terms, Setting, VerificationReport,
};
use crate::scalars::{BoolScalar, QiSqrt2, Semiring};
use crate::Error;

pub const SUITES: [&str; 6] = ["teleportation", "lgt", "cnot", "swap", "constructions", "rel-nobase"];

const GATES: [&str; 5] = ["beta1", "beta2", "beta3", "beta4", "H"];

type Case = Box<dyn Fn() -> Result<Vec<VerificationReport>, Error> + Send + Sync>;

fn supports(suite: &str, model: ModelKind) -> bool {
    match suite {
        "rel-nobase" => true,
        "constructions" => model == ModelKind::FdHilbExact,
        _ => model != ModelKind::Rel,
    }
}

/// Evaluate both sides in the requested model.
fn compare(case: &str, lhs: &Term, rhs: &Term, st: &Setting, model: ModelKind) -> Result<VerificationReport, Error> {
    Ok(match model {
        ModelKind::FdHilbExact => verify_terms(case, lhs, rhs, &st.sig, &st.model)?,
        ModelKind::FdHilbFloat => verify_terms(case, lhs, rhs, &st.sig, &float_model(&st.model))?,
        ModelKind::Rel => return Err(Error::Model(format!("`{case}` needs a model with the scalar s = √2/2"))),
    })
}

fn evaluate_in(t: &Term, st: &Setting, model: ModelKind) -> Result<Matrix<QiSqrt2>, Error> {
    evaluate(t, &st.sig, &st.model).map_err(|e| Error::Model(format!("{model}: {e}")))
}

/// `expected` equals the evaluated lhs in the active model.
fn lhs_is<S: ModelScalar>(t: &Term, st: &Setting, model: &Model<S>, expected: &Matrix<QiSqrt2>) -> Result<bool, Error> {
    let l = evaluate(t, &st.sig, model)?;
    Ok(expected.try_map(S::from_literal).is_ok_and(|e| e == l))
}

fn check_lhs(t: &Term, st: &Setting, model: ModelKind, expected: &Matrix<QiSqrt2>) -> Result<bool, Error> {
    match model {
        ModelKind::FdHilbFloat => lhs_is(t, st, &float_model(&st.model), expected),
        _ => lhs_is(t, st, &st.model, expected),
    }
}

fn stack(m: &Matrix<QiSqrt2>, n: usize, w: &QiSqrt2) -> Matrix<QiSqrt2> {
    Matrix::vstack(&vec![m.scale(w); n]).expect("equal widths")
}

fn teleportation(model: ModelKind) -> Result<Vec<VerificationReport>, Error> {
    let st = Setting::standard();
    let (lhs, rhs) = build_teleportation();
    let mut r = compare("teleportation", &lhs, &rhs, &st, model)?;
    let half = QiSqrt2::ratio(1, 2);
    r.require("lhs = 1/2 [1;1;1;1]", check_lhs(&lhs, &st, model, &stack(&Matrix::identity(2), 4, &half))?);
    let p = &half.conj() * &half;
    let total = (0..4).fold(QiSqrt2::zero(), |a, _| &a + &p);
    r.require("branch probabilities 1/4 sum to 1", p == QiSqrt2::ratio(1, 4) && total.is_one());
    Ok(vec![r])
}

fn logic_gate(gate: &'static str, model: ModelKind) -> Result<Vec<VerificationReport>, Error> {
    let mut st = Setting::standard();
    let (lhs, rhs) = build_logic_gate_teleportation(&mut st, gate)?;
    let mut r = compare(&format!("lgt-{gate}"), &lhs, &rhs, &st, model)?;
    let f = st.model.generator(gate).expect("standard gate").clone();
    for (i, (phi, b)) in unitary_corrections(&f)?.iter().zip(beta_matrices()).enumerate() {
        let holds = f.mul(&b).ok() == phi.mul(&f).ok();
        r.require(format!("f beta{} = phi{}(f) f", i + 1, i + 1), holds);
    }
    r.require("lhs = 1/2 [f;f;f;f]", check_lhs(&lhs, &st, model, &stack(&f, 4, &QiSqrt2::ratio(1, 2)))?);
    Ok(vec![r])
}

fn cnot(model: ModelKind) -> Result<Vec<VerificationReport>, Error> {
    let st = Setting::standard();
    let relations = cnot_relations(st.model.generator("CNOT").expect("standard gate"));
    if relations.iter().any(|(_, ok)| !ok) {
        let mut r = VerificationReport::new("cnot", model);
        for (what, ok) in relations {
            r.require(what, ok);
        }
        return Ok(vec![r]);
    }
    let (lhs, rhs) = build_cnot_teleportation(&st)?;
    Ok(vec![compare("cnot", &lhs, &rhs, &st, model)?])
}

fn swap(model: ModelKind) -> Result<Vec<VerificationReport>, Error> {
    let st = Setting::standard();
    let (lhs, rhs) = build_entanglement_swapping();
    let mut r = compare("swap", &lhs, &rhs, &st, model)?;
    let vec_i = name_matrix(&Matrix::<QiSqrt2>::identity(2));
    let branch = vec_i.kron(&vec_i);
    r.require(
        "branches = 1/4 (vec 1 x vec 1)",
        check_lhs(&lhs, &st, model, &stack(&branch, 4, &QiSqrt2::ratio(1, 4)))?,
    );
    for i in 1..=4 {
        let p = evaluate_in(&swap_projector(i), &st, model)?;
        r.require(format!("P{i} idempotent"), p.mul(&p).is_ok_and(|q| q == p));
        r.require(format!("P{i} self-adjoint"), p.adjoint() == p);
    }
    Ok(vec![r])
}

/// Every 4×4 permutation prebase with either Boolean scalar fails to be
/// a teleportation base.
pub fn rel_nobase() -> Result<VerificationReport, Error> {
    let mut r = VerificationReport::new("rel-nobase", ModelKind::Rel);
    r.lhs_shape = (4, 4);
    r.rhs_shape = (4, 4);
    let mut perms = Vec::new();
    permutations(&mut vec![0, 1, 2, 3], 0, &mut perms);
    for p in &perms {
        let m = Matrix::<BoolScalar>::permutation(4, |k| p[k]);
        for s in [false, true] {
            let report = validate_teleportation_base(&m, &BoolScalar(s))?;
            r.require(format!("{p:?} with s = {} accepted", u8::from(s)), !report.equal);
        }
    }
    r.require("24 permutations", perms.len() == 24);
    Ok(r)
}

fn permutations(xs: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == xs.len() {
        out.push(xs.clone());
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permutations(xs, k + 1, out);
        xs.swap(k, i);
    }
}

fn cases(suite: &str, model: ModelKind) -> Vec<Case> {
    match suite {
        "teleportation" => vec![Box::new(move || teleportation(model))],
        "lgt" => GATES.iter().map(|&g| -> Case { Box::new(move || logic_gate(g, model)) }).collect(),
        "cnot" => vec![Box::new(move || cnot(model))],
        "swap" => vec![Box::new(move || swap(model))],
        "constructions" => vec![Box::new(|| Ok(constructions::suite()))],
        "rel-nobase" => vec![Box::new(|| Ok(vec![rel_nobase()?]))],
        _ => Vec::new(),
    }
}

/// Run a suite (or `all`) and return its reports sorted by case name.
///
/// `all` runs the suites the model supports; naming an unsupported one
/// is a model error. `jobs` caps the worker threads.
pub fn run_suite(
    suite: &str,
    model: ModelKind,
    jobs: Option<usize>,
    timing: bool,
) -> Result<Vec<VerificationReport>, Error> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.iter().copied().filter(|s| supports(s, model)).collect()
    } else if SUITES.contains(&suite) {
        if !supports(suite, model) {
            return Err(Error::Model(format!("suite `{suite}` does not run in {model}")));
        }
        vec![suite]
    } else {
        return Err(Error::Usage(format!("unknown suite `{suite}`; expected one of {}, all", SUITES.join(", "))));
    };
    let all: Vec<Case> = names.into_iter().flat_map(|s| cases(s, model)).collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder.build().map_err(|e| Error::Usage(e.to_string()))?;
    let results: Vec<Result<Vec<VerificationReport>, Error>> = pool.install(|| {
        all.par_iter()
            .map(|case| {
                let start = Instant::now();
                let mut reports = case()?;
                let ms = start.elapsed().as_millis();
                for r in &mut reports {
                    r.ms = if timing { r.ms.max(ms) } else { 0 };
                }
                Ok(reports)
            })
            .collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    out.sort_by(|a, b| a.case.cmp(&b.case));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rel_has_no_teleportation_base() {
        let r = rel_nobase().unwrap();
        assert!(r.equal, "{:?}", r.failures);
    }

    #[test]
    fn suites_respect_models() {
        assert!(matches!(run_suite("constructions", ModelKind::Rel, Some(1), false), Err(Error::Model(_))));
        assert!(matches!(run_suite("teleport", ModelKind::Rel, Some(1), false), Err(Error::Usage(_))));
        let rel = run_suite("all", ModelKind::Rel, Some(1), false).unwrap();
        assert_eq!(rel.len(), 1);
        let float = run_suite("teleportation", ModelKind::FdHilbFloat, Some(2), false).unwrap();
        assert!(float[0].equal, "{:?}", float[0].failures);
        assert_eq!(float[0].model, ModelKind::FdHilbFloat);
    }

    #[test]
    fn lgt_reports_are_sorted() {
        let rs = run_suite("lgt", ModelKind::FdHilbExact, Some(3), false).unwrap();
        let names: Vec<_> = rs.iter().map(|r| r.case.as_str()).collect();
        assert_eq!(names, ["lgt-H", "lgt-beta1", "lgt-beta2", "lgt-beta3", "lgt-beta4"]);
        assert!(rs.iter().all(|r| r.equal && r.ms == 0));
    }
}
