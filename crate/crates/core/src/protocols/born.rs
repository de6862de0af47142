use crate::matrix::{inner_product, Matrix};
use crate::scalars::{QiSqrt2, Semiring};

use super::ProtocolError;

fn check(u: &Matrix<QiSqrt2>, psi: &Matrix<QiSqrt2>, parts: &[usize]) -> Result<(), ProtocolError> {
    if !u.is_unitary() {
        return Err(ProtocolError::NotUnitary("spectral decomposition".into()));
    }
    let total: usize = parts.iter().sum();
    if total != u.rows() {
        return Err(ProtocolError::Shape {
            what: "spectral parts".into(),
            expected: u.shape(),
            found: (total, u.cols()),
        });
    }
    if psi.shape() != (u.cols(), 1) {
        return Err(ProtocolError::Shape { what: "state".into(), expected: (u.cols(), 1), found: psi.shape() });
    }
    let norm = inner_product(psi, psi)?;
    if !norm.is_one() {
        return Err(ProtocolError::NotNormalized(norm.to_string()));
    }
    Ok(())
}

/// Amplitudes `s_j = π_j ∘ ψ` for the parts of `u : A → ⊕ A_j`.
pub fn amplitudes(
    u: &Matrix<QiSqrt2>,
    psi: &Matrix<QiSqrt2>,
    parts: &[usize],
) -> Result<Vec<Matrix<QiSqrt2>>, ProtocolError> {
    check(u, psi, parts)?;
    let image = u.mul(psi)?;
    let mut offset = 0;
    Ok(parts
        .iter()
        .map(|&n| {
            let block = Matrix::from_fn(n, 1, |r, _| image.get(offset + r, 0).clone());
            offset += n;
            block
        })
        .collect())
}

/// `Prob(P_j, ψ) = ⟨ψ | P_j | ψ⟩ = s_j† s_j` for each part.
pub fn born_probabilities(
    u: &Matrix<QiSqrt2>,
    psi: &Matrix<QiSqrt2>,
    parts: &[usize],
) -> Result<Vec<QiSqrt2>, ProtocolError> {
    amplitudes(u, psi, parts)?.iter().map(|a| Ok(inner_product(a, a)?)).collect()
}
