//! Directed rewriting of morphism terms along the information-flow laws
//! of compact closure, plus the matrix oracle that certifies each step.

mod rules;
mod sample;

use thiserror::Error;

use crate::kernel::{typecheck, Path, Signature, Term, TypeError, TypeJudgment};
use crate::matrix::{evaluate, Matrix, MatrixError, Model, ModelScalar};

pub use rules::{catalog, rule, RewriteRule};
pub use sample::Sampler;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RewriteError {
    #[error("rule `{rule}` does not match at {path:?}")]
    NoMatch { rule: &'static str, path: Vec<usize> },
    #[error("path {0:?} does not address a subterm")]
    InvalidPath(Vec<usize>),
    #[error("rule `{rule}` changed the judgment from {before} to {after}")]
    JudgmentChanged { rule: &'static str, before: TypeJudgment, after: TypeJudgment },
    #[error("terms have different judgments: {left} vs {right}")]
    JudgmentMismatch { left: TypeJudgment, right: TypeJudgment },
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Rewrite the subterm at `path` with `rule`.
///
/// When the subterm does not match as written, structural isomorphisms
/// and identities inside it are erased first and the match is retried.
pub fn apply_rule(t: &Term, rule: &RewriteRule, path: &Path, sig: &Signature) -> Result<Term, RewriteError> {
    let target = path.get(t).ok_or_else(|| RewriteError::InvalidPath(path.0.clone()))?;
    let before = typecheck(target, sig)?;
    let replaced = match rule.fire(target, sig) {
        Some(r) => r,
        None => {
            let stripped = normalize_with(target, sig, rules::is_structural).0;
            rule.fire(&stripped, sig).ok_or(RewriteError::NoMatch { rule: rule.name, path: path.0.clone() })?
        }
    };
    let after = typecheck(&replaced, sig)?;
    if after != before {
        return Err(RewriteError::JudgmentChanged { rule: rule.name, before, after });
    }
    let mut out = t.clone();
    *path.get_mut(&mut out).expect("path checked above") = replaced;
    Ok(out)
}

/// One leftmost-innermost rewrite step, if any rule applies.
pub fn step(t: &Term, sig: &Signature) -> Option<(Path, &'static RewriteRule, Term)> {
    step_with(t, sig, &|_| true)
}

fn step_with(
    t: &Term,
    sig: &Signature,
    allow: &dyn Fn(&RewriteRule) -> bool,
) -> Option<(Path, &'static RewriteRule, Term)> {
    fn go(
        t: &Term,
        sig: &Signature,
        allow: &dyn Fn(&RewriteRule) -> bool,
        here: Path,
    ) -> Option<(Path, &'static RewriteRule, Term)> {
        for (k, c) in t.children().into_iter().enumerate() {
            if let Some(hit) = go(c, sig, allow, here.child(k)) {
                return Some(hit);
            }
        }
        catalog().iter().filter(|r| allow(r)).find_map(|r| r.fire(t, sig).map(|out| (here.clone(), r, out)))
    }
    go(t, sig, allow, Path::root())
}

/// Rewrite to a fixpoint, innermost redexes first.
pub fn normalize(t: &Term, sig: &Signature) -> Term {
    normalize_with(t, sig, |_| true).0
}

/// As [`normalize`], also returning the names of the rules fired in order.
pub fn normalize_traced(t: &Term, sig: &Signature) -> (Term, Vec<&'static str>) {
    normalize_with(t, sig, |_| true)
}

fn normalize_with(t: &Term, sig: &Signature, allow: impl Fn(&RewriteRule) -> bool) -> (Term, Vec<&'static str>) {
    let mut cur = t.clone();
    let mut fired = Vec::new();
    while let Some((path, r, out)) = step_with(&cur, sig, &allow) {
        *path.get_mut(&mut cur).expect("step returns a valid path") = out;
        fired.push(r.name);
    }
    (cur, fired)
}

/// Lexicographic termination measure; every rewrite step strictly
/// decreases it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Measure {
    /// Names, conames, units and counits.
    pub names: usize,
    /// Sum over dagger nodes of the non-dagger nodes beneath them.
    pub dagger_load: usize,
    pub compositions: usize,
    /// Node count with structural isomorphisms weighing two.
    pub weighted_size: usize,
    /// Sum over binary composition and tensor nodes of the size of the left operand.
    pub left_load: usize,
}

pub fn measure(t: &Term) -> Measure {
    fn non_dagger(t: &Term) -> usize {
        usize::from(!matches!(t, Term::Dagger(_))) + t.children().iter().map(|c| non_dagger(c)).sum::<usize>()
    }
    fn go(t: &Term, m: &mut Measure) {
        match t {
            Term::Name(_) | Term::Coname(_) | Term::Eta(_) | Term::Epsilon(_) => m.names += 1,
            Term::Dagger(f) => m.dagger_load += non_dagger(f),
            Term::Compose(g, _) => {
                m.compositions += 1;
                m.left_load += g.size();
            }
            Term::Tensor(f, _) => m.left_load += f.size(),
            _ => {}
        }
        m.weighted_size += if t.is_structural_identity() { 2 } else { 1 };
        for c in t.children() {
            go(c, m);
        }
    }
    let mut m = Measure { names: 0, dagger_load: 0, compositions: 0, weighted_size: 0, left_load: 0 };
    go(t, &mut m);
    m
}

/// Outcome of comparing two terms in a model.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison<S> {
    pub judgment: TypeJudgment,
    pub lhs: Matrix<S>,
    pub rhs: Matrix<S>,
    /// First differing entry, row-major.
    pub witness: Option<(usize, usize)>,
}

impl<S> Comparison<S> {
    pub fn equal(&self) -> bool {
        self.witness.is_none()
    }
}

/// Evaluate both terms and locate the first difference.
pub fn compare<S: ModelScalar>(
    t1: &Term,
    t2: &Term,
    sig: &Signature,
    model: &Model<S>,
) -> Result<Comparison<S>, RewriteError> {
    let (j1, j2) = (typecheck(t1, sig)?, typecheck(t2, sig)?);
    if j1 != j2 {
        return Err(RewriteError::JudgmentMismatch { left: j1, right: j2 });
    }
    let lhs = evaluate(t1, sig, model)?;
    let rhs = evaluate(t2, sig, model)?;
    let witness = lhs.first_difference(&rhs);
    Ok(Comparison { judgment: j1, lhs, rhs, witness })
}

/// Equality of denotations under the model's scalar equality.
pub fn semantic_equal<S: ModelScalar>(
    t1: &Term,
    t2: &Term,
    sig: &Signature,
    model: &Model<S>,
) -> Result<bool, RewriteError> {
    Ok(compare(t1, t2, sig, model)?.equal())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Object;
    use crate::scalars::QiSqrt2;

    fn q() -> Object {
        Object::gen("Q")
    }

    fn setup() -> (Signature, Model<QiSqrt2>) {
        let mut sig = Signature::new();
        sig.declare_object("Q").unwrap();
        let mut m = Model::new();
        m.set_dim("Q", 2);
        let mut s = Sampler::new(7);
        for name in ["f", "g", "h"] {
            sig.declare_morphism(name, &q(), &q()).unwrap();
            m.set_generator(name, s.exact_matrix(2, 2));
        }
        (sig, m)
    }

    fn gen(n: &str) -> Term {
        Term::gen(n)
    }

    #[test]
    fn absorption_at_root() {
        let (sig, m) = setup();
        let lhs = Term::compose(Term::tensor(Term::Id(Object::dual(q())), gen("g")), Term::name(gen("f")));
        let out = apply_rule(&lhs, rule("absorption").unwrap(), &Path::root(), &sig).unwrap();
        assert_eq!(out, Term::name(Term::compose(gen("g"), gen("f"))));
        assert!(semantic_equal(&lhs, &out, &sig, &m).unwrap());
    }

    #[test]
    fn absorption_rejects_wrong_identity() {
        let (sig, _) = setup();
        let lhs = Term::compose(Term::tensor(Term::Id(Object::dual(q())), gen("g")), Term::name(gen("f")));
        let err = apply_rule(&lhs, rule("compositionality").unwrap(), &Path::root(), &sig).unwrap_err();
        assert!(matches!(err, RewriteError::NoMatch { .. }));
        assert!(matches!(
            apply_rule(&lhs, rule("absorption").unwrap(), &Path(vec![5]), &sig),
            Err(RewriteError::InvalidPath(_))
        ));
    }

    #[test]
    fn compositionality_of_identities() {
        let (sig, _) = setup();
        let t = Term::compose_all([
            Term::LambdaInv(q()),
            Term::tensor(Term::coname(Term::Id(q())), Term::Id(q())),
            Term::tensor(Term::Id(q()), Term::name(Term::Id(q()))),
            Term::Rho(q()),
        ]);
        assert_eq!(normalize(&t, &sig), Term::Id(q()));
        let direct = apply_rule(&t, rule("compositionality").unwrap(), &Path::root(), &sig).unwrap();
        assert_eq!(direct, Term::Id(q()));
    }

    #[test]
    fn teleportation_core_normalizes_to_composite() {
        let (sig, m) = setup();
        let t = Term::compose_all([
            Term::LambdaInv(q()),
            Term::tensor(Term::coname(gen("f")), Term::Id(q())),
            Term::tensor(Term::Id(q()), Term::name(gen("g"))),
            Term::Rho(q()),
        ]);
        let n = normalize(&t, &sig);
        assert_eq!(n, Term::compose(gen("g"), gen("f")));
        assert!(semantic_equal(&t, &n, &sig, &m).unwrap());
    }

    #[test]
    fn cut_network_collapses_to_one_name() {
        let (sig, m) = setup();
        let qs = Object::dual(q());
        let t = Term::compose_all([
            Term::tensor(Term::RhoInv(qs.clone()), Term::Id(q())),
            Term::tensor_all([Term::Id(qs), Term::coname(gen("g")), Term::Id(q())]),
            Term::tensor(Term::name(gen("f")), Term::name(gen("h"))),
            Term::Rho(Object::Unit),
        ]);
        let n = normalize(&t, &sig);
        assert_eq!(n, Term::name(Term::compose(gen("h"), Term::compose(gen("g"), gen("f")))));
        assert!(semantic_equal(&t, &n, &sig, &m).unwrap());
        assert!(n.size() < t.size());
    }

    #[test]
    fn identities_collapse() {
        let (sig, _) = setup();
        let t = Term::compose_all([Term::Id(q()), Term::Id(q()), Term::Id(q())]);
        assert_eq!(normalize(&t, &sig), Term::Id(q()));
    }

    #[test]
    fn semantic_equality_examples() {
        let (mut sig, mut m) = setup();
        sig.declare_morphism("b2", &q(), &q()).unwrap();
        let swap = crate::matrix::swap_matrix::<QiSqrt2>(2, 2);
        m.set_generator("b2", crate::matrix::Matrix::permutation(2, |k| 1 - k));
        assert!(!semantic_equal(&Term::Id(q()), &gen("b2"), &sig, &m).unwrap());
        let eps_dag = Term::compose(Term::Sigma(q(), Object::dual(q())), Term::dagger(Term::Epsilon(q())));
        assert!(semantic_equal(&Term::Eta(q()), &eps_dag, &sig, &m).unwrap());
        assert!(swap.is_unitary());
        let err = semantic_equal(&Term::Id(q()), &Term::Eta(q()), &sig, &m).unwrap_err();
        assert!(matches!(err, RewriteError::JudgmentMismatch { .. }));
    }

    #[test]
    fn measure_orders_dagger_rules() {
        let f = || gen("f");
        let lhs = Term::dagger(Term::compose(f(), f()));
        let rhs = Term::compose(Term::dagger(f()), Term::dagger(f()));
        assert!(measure(&rhs) < measure(&lhs));
    }
}
