//! Teleportation-style protocols as pairs of terms, the Bell base they
//! rely on, and exact checks that both sides denote the same matrix.

mod bell;
mod born;
mod builders;

use std::time::Instant;

use serde_json::{json, Value};
use thiserror::Error;

use crate::kernel::{Object, Signature, Term, TypeError};
use crate::matrix::{evaluate, Matrix, MatrixError, Model, ModelKind, ModelScalar};
use crate::rewrite::RewriteError;
use crate::scalars::QiSqrt2;

pub use bell::{
    beta_inverse, beta_matrices, cnot_matrix, cnot_relations, hadamard_matrix, make_bell_base, maps_from_prebase,
    unitary_corrections, validate_teleportation_base, TeleportationBase,
};
pub use born::{amplitudes, born_probabilities};
pub use builders::{
    build_cnot_teleportation, build_entanglement_swapping, build_logic_gate_teleportation, build_teleportation,
    cnot_corrections, copies, direct_sum, permutation_term, swap_projector, weighted_diagonal,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProtocolError {
    #[error("{0} is not unitary")]
    NotUnitary(String),
    #[error("state is not normalized: ⟨ψ|ψ⟩ = {0}")]
    NotNormalized(String),
    #[error("{what} should be {expected:?}, found {found:?}")]
    Shape { what: String, expected: (usize, usize), found: (usize, usize) },
    #[error("CNOT relation fails: {0}")]
    Relation(String),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// A signature together with its exact qubit model.
#[derive(Clone, Debug)]
pub struct Setting {
    pub sig: Signature,
    pub model: Model<QiSqrt2>,
}

impl Setting {
    /// `Q` of dimension 2 with `base_Q`, the Bell maps `beta1..beta4`,
    /// `H` and `CNOT`.
    pub fn standard() -> Self {
        let q = Object::gen("Q");
        let mut sig = Signature::new();
        let mut model = Model::new();
        sig.declare_object("Q").expect("fresh signature");
        model.set_dim("Q", 2);
        let mut s = Setting { sig, model };
        s.declare("base_Q", &Object::copies(2, &Object::Unit), &q, Matrix::identity(2));
        for (k, b) in beta_matrices().into_iter().enumerate() {
            s.declare(&format!("beta{}", k + 1), &q, &q, b);
        }
        s.declare("H", &q, &q, hadamard_matrix());
        let qq = Object::tensor(q.clone(), q);
        s.declare("CNOT", &qq, &qq, cnot_matrix());
        s
    }

    /// Declare a generator with its exact matrix.
    ///
    /// Panics if the name is taken; builders only add fresh names.
    pub fn declare(&mut self, name: &str, dom: &Object, cod: &Object, m: Matrix<QiSqrt2>) {
        self.sig.declare_morphism(name, dom, cod).expect("generator names are unique");
        self.model.set_generator(name, m);
    }

    /// Declare unless already present with the same matrix.
    pub fn ensure(&mut self, name: &str, dom: &Object, cod: &Object, m: Matrix<QiSqrt2>) -> Result<(), TypeError> {
        self.sig.ensure_morphism(name, dom, cod)?;
        self.model.set_generator(name, m);
        Ok(())
    }
}

/// Result of one verification case.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub case: String,
    pub model: ModelKind,
    pub equal: bool,
    pub lhs_shape: (usize, usize),
    pub rhs_shape: (usize, usize),
    /// First differing entry when unequal.
    pub witness: Option<(usize, usize)>,
    /// Names of failed side conditions.
    pub failures: Vec<String>,
    pub ms: u128,
}

impl VerificationReport {
    pub fn new(case: impl Into<String>, model: ModelKind) -> Self {
        Self {
            case: case.into(),
            model,
            equal: true,
            lhs_shape: (0, 0),
            rhs_shape: (0, 0),
            witness: None,
            failures: Vec::new(),
            ms: 0,
        }
    }

    /// Record a named side condition.
    pub fn require(&mut self, what: impl Into<String>, ok: bool) {
        if !ok {
            self.equal = false;
            self.failures.push(what.into());
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "case": self.case,
            "model": self.model.as_str(),
            "equal": self.equal,
            "lhs_shape": [self.lhs_shape.0, self.lhs_shape.1],
            "rhs_shape": [self.rhs_shape.0, self.rhs_shape.1],
        });
        if let Some((i, j)) = self.witness {
            v["witness"] = json!([i, j]);
        }
        if !self.failures.is_empty() {
            v["failures"] = json!(self.failures);
        }
        v["ms"] = json!(self.ms);
        v
    }
}

/// Evaluate both sides and compare them entry by entry.
pub fn verify_terms<S: ModelScalar>(
    case: &str,
    lhs: &Term,
    rhs: &Term,
    sig: &Signature,
    model: &Model<S>,
) -> Result<VerificationReport, ProtocolError> {
    let start = Instant::now();
    let l = evaluate(lhs, sig, model)?;
    let r = evaluate(rhs, sig, model)?;
    let mut report = VerificationReport::new(case, S::KIND);
    report.lhs_shape = l.shape();
    report.rhs_shape = r.shape();
    report.witness = l.first_difference(&r);
    report.equal = report.witness.is_none();
    report.ms = start.elapsed().as_millis();
    Ok(report)
}
