use crate::kernel::{object_dim, typecheck, Object, Signature, Term};
use crate::scalars::Semiring;

use super::{Matrix, MatrixError, Model, ModelScalar};

/// Denotation of a well-typed term as a `dim(cod) × dim(dom)` matrix.
pub fn evaluate<S: ModelScalar>(t: &Term, sig: &Signature, model: &Model<S>) -> Result<Matrix<S>, MatrixError> {
    typecheck(t, sig)?;
    Evaluator { sig, model }.eval(t)
}

/// `dim_s(A) = Tr(1_A)`.
pub fn scalar_dimension<S: ModelScalar>(model: &Model<S>, a: &Object) -> Result<S, MatrixError> {
    let n = object_dim(model, a)?;
    Matrix::<S>::identity(n).trace()
}

/// `η_A` as the column with ones at positions `k*n + k`.
pub fn unit_vector<S: Semiring>(n: usize) -> Matrix<S> {
    Matrix::from_fn(n * n, 1, |r, _| if r / n == r % n { S::one() } else { S::zero() })
}

/// `ε_A` as the row selecting matched indices.
pub fn counit_vector<S: Semiring>(n: usize) -> Matrix<S> {
    Matrix::from_fn(1, n * n, |_, c| if c / n == c % n { S::one() } else { S::zero() })
}

/// `⌜f⌝ = (1_{A*} ⊗ f) ∘ η_A`; entry `i*m + j` is `f[j][i]`.
pub fn name_matrix<S: Semiring>(f: &Matrix<S>) -> Matrix<S> {
    let n = f.cols();
    Matrix::identity(n).kron(f).mul(&unit_vector(n)).expect("shapes agree by construction")
}

/// `⌞f⌟ = ε_B ∘ (f ⊗ 1_{B*})`.
pub fn coname_matrix<S: Semiring>(f: &Matrix<S>) -> Matrix<S> {
    let n = f.rows();
    counit_vector(n).mul(&f.kron(&Matrix::identity(n))).expect("shapes agree by construction")
}

/// `σ_{A,B}` for `dim A = m`, `dim B = n`.
pub fn swap_matrix<S: Semiring>(m: usize, n: usize) -> Matrix<S> {
    Matrix::permutation(m * n, |k| (k % n) * m + k / n)
}

/// `A ⊗ (B ⊕ C) → (A ⊗ B) ⊕ (A ⊗ C)` under row-major flattening.
pub fn dist_right_matrix<S: Semiring>(a: usize, b: usize, c: usize) -> Matrix<S> {
    Matrix::permutation(a * (b + c), |k| {
        let (x, y) = (k / (b + c), k % (b + c));
        if y < b {
            x * b + y
        } else {
            a * b + x * c + (y - b)
        }
    })
}

/// Injection of summand `i` into the biproduct of blocks of the given sizes.
pub fn injection_matrix<S: Semiring>(i: usize, sizes: &[usize]) -> Matrix<S> {
    let offset: usize = sizes[..i].iter().sum();
    let total: usize = sizes.iter().sum();
    Matrix::from_fn(total, sizes[i], |r, c| if r == offset + c { S::one() } else { S::zero() })
}

struct Evaluator<'a, S> {
    sig: &'a Signature,
    model: &'a Model<S>,
}

impl<S: ModelScalar> Evaluator<'_, S> {
    fn dim(&self, a: &Object) -> Result<usize, MatrixError> {
        Ok(object_dim(self.model, a)?)
    }

    fn ident(&self, a: &Object) -> Result<Matrix<S>, MatrixError> {
        Ok(Matrix::identity(self.dim(a)?))
    }

    fn part_dims(&self, parts: &[Object]) -> Result<Vec<usize>, MatrixError> {
        parts.iter().map(|p| self.dim(p)).collect()
    }

    fn eval(&self, t: &Term) -> Result<Matrix<S>, MatrixError> {
        Ok(match t {
            Term::Id(a) => self.ident(a)?,
            Term::Gen(n) => {
                let m = self.model.generator(n).ok_or_else(|| MatrixError::MissingGenerator(n.clone()))?;
                let (dom, cod) = self.sig.morphism(n).ok_or_else(|| MatrixError::MissingGenerator(n.clone()))?;
                let expected = (self.dim(cod)?, self.dim(dom)?);
                if m.shape() != expected {
                    return Err(MatrixError::GeneratorShape { name: n.clone(), expected, found: m.shape() });
                }
                m.clone()
            }
            Term::Compose(g, f) => self.eval(g)?.mul(&self.eval(f)?)?,
            Term::Tensor(f, g) => self.eval(f)?.kron(&self.eval(g)?),
            Term::Dagger(f) => self.eval(f)?.adjoint(),
            Term::DualM(f) => self.eval(f)?.transpose(),
            Term::Conj(f) => self.eval(f)?.conjugate(),
            Term::Eta(a) => unit_vector(self.dim(a)?),
            Term::Epsilon(a) => counit_vector(self.dim(a)?),
            Term::Sigma(a, b) => swap_matrix(self.dim(a)?, self.dim(b)?),
            Term::Lambda(a) | Term::LambdaInv(a) | Term::Rho(a) | Term::RhoInv(a) => self.ident(a)?,
            Term::Alpha(a, b, c) | Term::AlphaInv(a, b, c) => {
                Matrix::identity(self.dim(a)? * self.dim(b)? * self.dim(c)?)
            }
            Term::UnitIso => Matrix::identity(1),
            Term::Nu(a, b) => Matrix::identity(self.dim(a)? + self.dim(b)?),
            Term::DoubleDual(a) => self.ident(a)?,
            Term::Inj(i, parts) => injection_matrix(*i, &self.part_dims(parts)?),
            Term::Proj(i, parts) => injection_matrix(*i, &self.part_dims(parts)?).transpose(),
            Term::Pair(fs) => {
                let blocks = fs.iter().map(|f| self.eval(f)).collect::<Result<Vec<_>, _>>()?;
                Matrix::vstack(&blocks)?
            }
            Term::Copair(fs) => {
                let blocks = fs.iter().map(|f| self.eval(f)).collect::<Result<Vec<_>, _>>()?;
                Matrix::hstack(&blocks)?
            }
            Term::ZeroM(a, b) => Matrix::zeros(self.dim(b)?, self.dim(a)?),
            Term::Plus(f, g) => self.eval(f)?.add(&self.eval(g)?)?,
            Term::Scale(s, f) => {
                let s = S::from_literal(s)?;
                self.eval(f)?.scale(&s)
            }
            Term::Name(f) => name_matrix(&self.eval(f)?),
            Term::Coname(f) => coname_matrix(&self.eval(f)?),
            Term::DistR(a, b, c) => dist_right_matrix(self.dim(a)?, self.dim(b)?, self.dim(c)?),
            Term::DistRInv(a, b, c) => dist_right_matrix(self.dim(a)?, self.dim(b)?, self.dim(c)?).transpose(),
            Term::DistL(a, b, c) | Term::DistLInv(a, b, c) => {
                Matrix::identity((self.dim(a)? + self.dim(b)?) * self.dim(c)?)
            }
        })
    }
}
