use crate::kernel::Term;
use crate::matrix::{name_matrix, Matrix, ModelScalar};
use crate::scalars::{QiSqrt2, Semiring};

use super::{ProtocolError, VerificationReport};

fn int_matrix(rows: &[&[i64]]) -> Matrix<QiSqrt2> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| QiSqrt2::integer(x)).collect()).collect())
        .expect("literal matrices are rectangular")
}

/// `β₁ = 1`, `β₂` the bit flip, `β₃` the phase flip and `β₄ = β₂ ∘ β₃`.
pub fn beta_matrices() -> [Matrix<QiSqrt2>; 4] {
    [
        int_matrix(&[&[1, 0], &[0, 1]]),
        int_matrix(&[&[0, 1], &[1, 0]]),
        int_matrix(&[&[1, 0], &[0, -1]]),
        int_matrix(&[&[0, -1], &[1, 0]]),
    ]
}

pub fn hadamard_matrix() -> Matrix<QiSqrt2> {
    int_matrix(&[&[1, 1], &[1, -1]]).scale(&QiSqrt2::half_sqrt2())
}

/// Control on the first factor, target on the second.
pub fn cnot_matrix() -> Matrix<QiSqrt2> {
    int_matrix(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]])
}

/// Inverse of `beta{i}` as a term over the standard generators
/// (`i` is 1-based).
pub fn beta_inverse(i: usize) -> Term {
    match i {
        4 => Term::compose(Term::gen("beta3"), Term::gen("beta2")),
        _ => Term::gen(format!("beta{i}")),
    }
}

/// A scalar and a prebase `4·I → Q*⊗Q` with the derived maps `β_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct TeleportationBase {
    pub s: QiSqrt2,
    pub prebase: Matrix<QiSqrt2>,
    pub betas: [Matrix<QiSqrt2>; 4],
}

impl TeleportationBase {
    /// `base_T = s • prebase`.
    pub fn base(&self) -> Matrix<QiSqrt2> {
        self.prebase.scale(&self.s)
    }

    /// The Bell equations `β₁ = 1`, `β₂ = σ⊕`, `β₃ = β₃†`, `β₄ = σ⊕ ∘ β₃`,
    /// with `σ⊕` the swap of the two basis vectors.
    pub fn bell_equations(&self) -> Vec<(&'static str, bool)> {
        let flip = Matrix::<QiSqrt2>::permutation(2, |k| 1 - k);
        let b = &self.betas;
        vec![
            ("beta1 = 1", b[0].is_identity()),
            ("beta2 = flip", b[1] == flip),
            ("beta3 self-adjoint", b[2] == b[2].adjoint()),
            ("beta4 = flip . beta3", flip.mul(&b[2]).is_ok_and(|m| m == b[3])),
        ]
    }
}

/// The Bell base: `s = √2/2` and prebase columns `⌜β_j⌝`.
pub fn make_bell_base() -> TeleportationBase {
    let betas = beta_matrices();
    let columns: Vec<Matrix<QiSqrt2>> = betas.iter().map(name_matrix).collect();
    let prebase = Matrix::hstack(&columns).expect("names share a shape");
    TeleportationBase { s: QiSqrt2::half_sqrt2(), prebase, betas }
}

/// Read `β_j` back from column `j` of a `4×4` prebase: `⌜β⌝[i*2 + j] = β[j][i]`.
pub fn maps_from_prebase<S: Semiring>(prebase: &Matrix<S>) -> Vec<Matrix<S>> {
    (0..prebase.cols()).map(|col| Matrix::from_fn(2, 2, |r, c| prebase.get(c * 2 + r, col).clone())).collect()
}

/// Check the three teleportation-base conditions; the report's failures
/// name the ones that do not hold.
pub fn validate_teleportation_base<S: ModelScalar>(
    prebase: &Matrix<S>,
    s: &S,
) -> Result<VerificationReport, ProtocolError> {
    if prebase.shape() != (4, 4) {
        return Err(ProtocolError::Shape { what: "prebase".into(), expected: (4, 4), found: prebase.shape() });
    }
    let mut report = VerificationReport::new("teleportation-base", S::KIND);
    let base = prebase.scale(s);
    report.lhs_shape = base.shape();
    report.rhs_shape = base.shape();
    report.require("s . prebase unitary", base.is_unitary());
    let maps = maps_from_prebase(prebase);
    for (j, b) in maps.iter().enumerate() {
        report.require(format!("beta{} unitary", j + 1), b.is_unitary());
    }
    let ss = s.involution().mul(s);
    report.require("2 s^dagger s = 1", ss.add(&ss).is_one());
    Ok(report)
}

/// `φ_i(f) = f β_i f†` for `i = 1..4`; each satisfies `f ∘ β_i = φ_i(f) ∘ f`.
pub fn unitary_corrections(f: &Matrix<QiSqrt2>) -> Result<[Matrix<QiSqrt2>; 4], ProtocolError> {
    if f.shape() != (2, 2) {
        return Err(ProtocolError::Shape { what: "gate".into(), expected: (2, 2), found: f.shape() });
    }
    if !f.is_unitary() {
        return Err(ProtocolError::NotUnitary("gate".into()));
    }
    let fd = f.adjoint();
    let mut out = beta_matrices();
    for b in out.iter_mut() {
        *b = f.mul(b)?.mul(&fd)?;
    }
    Ok(out)
}

/// The six CNOT relations as `(description, holds)`.
pub fn cnot_relations(cnot: &Matrix<QiSqrt2>) -> Vec<(String, bool)> {
    let [one, b2, b3, b4] = beta_matrices();
    let cases = [
        ("CNOT(b2 x 1) = (b2 x b2)CNOT", b2.kron(&one), b2.kron(&b2)),
        ("CNOT(1 x b2) = (1 x b2)CNOT", one.kron(&b2), one.kron(&b2)),
        ("CNOT(b3 x 1) = (b3 x 1)CNOT", b3.kron(&one), b3.kron(&one)),
        ("CNOT(1 x b3) = (b3 x b3)CNOT", one.kron(&b3), b3.kron(&b3)),
        ("CNOT(b4 x 1) = (b4 x b2)CNOT", b4.kron(&one), b4.kron(&b2)),
        ("CNOT(1 x b4) = (b3 x b4)CNOT", one.kron(&b4), b3.kron(&b4)),
    ];
    cases
        .into_iter()
        .map(|(what, inner, outer)| {
            let holds = match (cnot.mul(&inner), outer.mul(cnot)) {
                (Ok(l), Ok(r)) => l == r,
                _ => false,
            };
            (what.to_string(), holds)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::BoolScalar;

    #[test]
    fn bell_prebase_matches_the_integer_matrix() {
        let b = make_bell_base();
        let m = int_matrix(&[&[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 1, 0, -1], &[1, 0, -1, 0]]);
        assert_eq!(b.prebase, m);
        assert!(b.base().mul(&b.base().adjoint()).unwrap().is_identity());
        assert!(b.bell_equations().iter().all(|(_, ok)| *ok));
        assert_eq!(maps_from_prebase(&b.prebase), b.betas.to_vec());
    }

    #[test]
    fn beta4_inverse() {
        let [_, b2, b3, b4] = beta_matrices();
        let inv = b3.mul(&b2).unwrap();
        assert!(inv.mul(&b4).unwrap().is_identity());
    }

    #[test]
    fn validation_reports_failing_conditions() {
        let b = make_bell_base();
        assert!(validate_teleportation_base(&b.prebase, &b.s).unwrap().equal);
        let r = validate_teleportation_base(&b.prebase, &QiSqrt2::one()).unwrap();
        assert!(!r.equal);
        assert_eq!(r.failures, vec!["s . prebase unitary".to_string(), "2 s^dagger s = 1".to_string()]);
        let perm = Matrix::<BoolScalar>::identity(4);
        assert!(!validate_teleportation_base(&perm, &BoolScalar(true)).unwrap().equal);
        assert!(validate_teleportation_base(&Matrix::<BoolScalar>::identity(3), &BoolScalar(true)).is_err());
    }

    #[test]
    fn corrections() {
        let [_, b2, b3, _] = beta_matrices();
        let id = Matrix::identity(2);
        assert_eq!(unitary_corrections(&id).unwrap(), beta_matrices());
        let phi = unitary_corrections(&b3).unwrap();
        assert_eq!(phi[1], int_matrix(&[&[0, -1], &[-1, 0]]));
        let h = hadamard_matrix();
        let phi = unitary_corrections(&h).unwrap();
        assert_eq!(phi[1], b3);
        for (i, p) in phi.iter().enumerate() {
            assert!(p.is_unitary());
            assert_eq!(h.mul(&beta_matrices()[i]).unwrap(), p.mul(&h).unwrap());
        }
        assert!(unitary_corrections(&b2.scale(&QiSqrt2::integer(2))).is_err());
    }

    #[test]
    fn standard_cnot_satisfies_relations() {
        assert!(cnot_relations(&cnot_matrix()).iter().all(|(_, ok)| *ok));
        assert!(!cnot_relations(&Matrix::identity(4)).iter().all(|(_, ok)| *ok));
    }
}
