use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::kernel::{object_dim, ObjectDims, Signature};
use crate::scalars::{BoolScalar, ComplexApprox, QiSqrt2, Semiring};

use super::{Matrix, MatrixError};

/// The three interpretation targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    FdHilbExact,
    Rel,
    FdHilbFloat,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [ModelKind::FdHilbExact, ModelKind::Rel, ModelKind::FdHilbFloat];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::FdHilbExact => "fdhilb-exact",
            ModelKind::Rel => "rel",
            ModelKind::FdHilbFloat => "fdhilb-float",
        }
    }

    pub fn semiring_name(self) -> &'static str {
        match self {
            ModelKind::FdHilbExact => QiSqrt2::NAME,
            ModelKind::Rel => BoolScalar::NAME,
            ModelKind::FdHilbFloat => ComplexApprox::NAME,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = MatrixError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ModelKind::ALL.into_iter().find(|k| k.as_str() == s).ok_or_else(|| MatrixError::UnknownModel(s.to_string()))
    }
}

/// Ties each scalar type to the model kind that uses it.
pub trait ModelScalar: Semiring {
    const KIND: ModelKind;
}

impl ModelScalar for QiSqrt2 {
    const KIND: ModelKind = ModelKind::FdHilbExact;
}

impl ModelScalar for BoolScalar {
    const KIND: ModelKind = ModelKind::Rel;
}

impl ModelScalar for ComplexApprox {
    const KIND: ModelKind = ModelKind::FdHilbFloat;
}

/// Generator dimensions plus generator matrices over one semiring.
#[derive(Clone, Debug, PartialEq)]
pub struct Model<S> {
    dims: BTreeMap<String, usize>,
    gens: BTreeMap<String, Matrix<S>>,
}

impl<S> Default for Model<S> {
    fn default() -> Self {
        Self { dims: BTreeMap::new(), gens: BTreeMap::new() }
    }
}

impl<S: ModelScalar> Model<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn kind(&self) -> ModelKind {
        S::KIND
    }

    pub fn set_dim(&mut self, name: impl Into<String>, dim: usize) {
        self.dims.insert(name.into(), dim);
    }

    pub fn set_generator(&mut self, name: impl Into<String>, m: Matrix<S>) {
        self.gens.insert(name.into(), m);
    }

    pub fn generator(&self, name: &str) -> Option<&Matrix<S>> {
        self.gens.get(name)
    }

    pub fn dims(&self) -> &BTreeMap<String, usize> {
        &self.dims
    }

    pub fn generators(&self) -> impl Iterator<Item = (&String, &Matrix<S>)> {
        self.gens.iter()
    }

    /// Every generator matrix has shape `(dim cod, dim dom)`.
    pub fn validate(&self, sig: &Signature) -> Result<(), MatrixError> {
        for (name, m) in &self.gens {
            let Some((dom, cod)) = sig.morphism(name) else {
                return Err(MatrixError::UnknownGenerator(name.clone()));
            };
            let expected = (object_dim(self, cod)?, object_dim(self, dom)?);
            if m.shape() != expected {
                return Err(MatrixError::GeneratorShape { name: name.clone(), expected, found: m.shape() });
            }
        }
        Ok(())
    }

    /// Reinterpret in another semiring entry by entry.
    pub fn convert<T: ModelScalar, E>(&self, f: impl Fn(&S) -> Result<T, E>) -> Result<Model<T>, E> {
        let mut out = Model::<T>::new();
        out.dims = self.dims.clone();
        for (n, m) in &self.gens {
            out.gens.insert(n.clone(), m.try_map(&f)?);
        }
        Ok(out)
    }
}

impl<S> ObjectDims for Model<S> {
    fn generator_dim(&self, name: &str) -> Option<usize> {
        self.dims.get(name).copied()
    }
}

/// Float copy of an exact model.
pub fn float_model(exact: &Model<QiSqrt2>) -> Model<ComplexApprox> {
    exact.convert(ComplexApprox::from_literal).expect("every exact scalar has a float approximation")
}
