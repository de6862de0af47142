//! Object and morphism syntax, generator signatures and type inference.
//!
//! Objects are compared by their strict normal form, so unit,
//! associativity and duality coherence hold on the nose.

mod object;
mod signature;
mod term;
mod typecheck;

use thiserror::Error;

pub use object::Object;
pub use signature::Signature;
pub use term::{Path, Term};
pub use typecheck::{typecheck, TypeJudgment};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TypeError {
    #[error("undeclared object generator `{0}`")]
    UndeclaredObject(String),
    #[error("undeclared morphism generator `{0}`")]
    UndeclaredMorphism(String),
    #[error("generator `{0}` declared twice")]
    Duplicate(String),
    #[error("composition mismatch: inner codomain {inner_cod} does not match outer domain {outer_dom}")]
    CompositionMismatch { inner_cod: Object, outer_dom: Object },
    #[error("{context}: expected {expected}, found {found}")]
    Mismatch { context: String, expected: Object, found: Object },
    #[error("{context}: judgments differ ({left} vs {right})")]
    JudgmentMismatch { context: String, left: String, right: String },
    #[error("{constructor} needs at least one component, found {found}")]
    Arity { constructor: &'static str, found: usize },
    #[error("index {index} out of range for {len} summands")]
    IndexOutOfRange { index: usize, len: usize },
}

/// Lookup of generator dimensions, implemented by models.
pub trait ObjectDims {
    fn generator_dim(&self, name: &str) -> Option<usize>;
}

impl ObjectDims for std::collections::BTreeMap<String, usize> {
    fn generator_dim(&self, name: &str) -> Option<usize> {
        self.get(name).copied()
    }
}

/// Dimension of an object: multiplicative over ⊗, additive over ⊕,
/// invariant under duals.
pub fn object_dim(dims: &impl ObjectDims, a: &Object) -> Result<usize, TypeError> {
    Ok(match a {
        Object::Unit => 1,
        Object::Zero => 0,
        Object::Gen(n) => dims.generator_dim(n).ok_or_else(|| TypeError::UndeclaredObject(n.clone()))?,
        Object::Dual(x) => object_dim(dims, x)?,
        Object::Tensor(x, y) => object_dim(dims, x)? * object_dim(dims, y)?,
        Object::Biprod(x, y) => object_dim(dims, x)? + object_dim(dims, y)?,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;

    fn q() -> Object {
        Object::gen("Q")
    }

    fn sig() -> Signature {
        let mut s = Signature::new();
        s.declare_object("Q").unwrap();
        s.declare_morphism("f", &q(), &q()).unwrap();
        s
    }

    fn dims() -> BTreeMap<String, usize> {
        BTreeMap::from([("Q".to_string(), 2)])
    }

    #[test]
    fn unit_judgments() {
        let s = sig();
        let j = typecheck(&Term::Eta(q()), &s).unwrap();
        assert_eq!(j.dom, Object::Unit);
        assert_eq!(j.cod, Object::tensor(Object::dual(q()), q()));
        let jd = typecheck(&Term::dagger(Term::Eta(q())), &s).unwrap();
        assert_eq!((jd.dom, jd.cod), (j.cod, j.dom));
    }

    #[test]
    fn counit_after_swap() {
        let t = Term::compose(Term::Epsilon(q()), Term::Sigma(Object::dual(q()), q()));
        let j = typecheck(&t, &sig()).unwrap();
        assert_eq!(j.dom, Object::tensor(Object::dual(q()), q()));
        assert_eq!(j.cod, Object::Unit);
    }

    #[test]
    fn composition_mismatch_reports_both_sides() {
        let t = Term::compose(Term::Eta(q()), Term::Id(q()));
        match typecheck(&t, &sig()) {
            Err(TypeError::CompositionMismatch { inner_cod, outer_dom }) => {
                assert_eq!(inner_cod, q());
                assert_eq!(outer_dom, Object::Unit);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn pair_and_projection_errors() {
        let s = sig();
        assert!(matches!(typecheck(&Term::Pair(vec![]), &s), Err(TypeError::Arity { .. })));
        assert!(matches!(
            typecheck(&Term::Inj(2, vec![q(), q()]), &s),
            Err(TypeError::IndexOutOfRange { index: 2, len: 2 })
        ));
        let bad = Term::Pair(vec![Term::Id(q()), Term::Id(Object::Unit)]);
        assert!(matches!(typecheck(&bad, &s), Err(TypeError::Mismatch { .. })));
    }

    #[test]
    fn undeclared_generators() {
        let s = sig();
        assert!(matches!(typecheck(&Term::Id(Object::gen("R")), &s), Err(TypeError::UndeclaredObject(_))));
        assert!(matches!(typecheck(&Term::gen("g"), &s), Err(TypeError::UndeclaredMorphism(_))));
    }

    #[test]
    fn names_and_structural_maps() {
        let s = sig();
        let j = typecheck(&Term::name(Term::gen("f")), &s).unwrap();
        assert_eq!(j.dom, Object::Unit);
        let j = typecheck(&Term::coname(Term::gen("f")), &s).unwrap();
        assert_eq!(j.cod, Object::Unit);
        assert_eq!(j.dom, Object::tensor(q(), Object::dual(q())));
        let j = typecheck(&Term::DistR(q(), Object::Unit, q()), &s).unwrap();
        assert_eq!(j.dom, Object::tensor(q(), Object::biprod(Object::Unit, q())));
        assert_eq!(j.cod, Object::biprod(q(), Object::tensor(q(), q())));
        let j = typecheck(&Term::dual(Term::Eta(q())), &s).unwrap();
        assert_eq!(j.dom, Object::tensor(q(), Object::dual(q())));
        assert_eq!(j.cod, Object::Unit);
    }

    #[test]
    fn dimensions() {
        let d = dims();
        assert_eq!(object_dim(&d, &Object::tensor(q(), q())).unwrap(), 4);
        assert_eq!(object_dim(&d, &Object::copies(4, &Object::Unit)).unwrap(), 4);
        let dq = Object::tensor(Object::dual(q()), q());
        assert_eq!(object_dim(&d, &Object::biprod(dq.clone(), dq)).unwrap(), 8);
        assert_eq!(object_dim(&d, &Object::Zero).unwrap(), 0);
        assert!(object_dim(&d, &Object::gen("R")).is_err());
    }
}
