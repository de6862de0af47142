use std::fmt;

use super::object::Object;
use super::signature::Signature;
use super::term::Term;
use super::TypeError;

/// Domain and codomain of a well-typed term, both in strict normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeJudgment {
    pub dom: Object,
    pub cod: Object,
}

impl TypeJudgment {
    fn new(dom: Object, cod: Object) -> Self {
        Self { dom: dom.strictify(), cod: cod.strictify() }
    }
}

impl fmt::Display for TypeJudgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} → {}", self.dom, self.cod)
    }
}

fn dual(a: &Object) -> Object {
    Object::dual(a.clone())
}

fn ten(a: &Object, b: &Object) -> Object {
    Object::tensor(a.clone(), b.clone())
}

fn sum(a: &Object, b: &Object) -> Object {
    Object::biprod(a.clone(), b.clone())
}

/// Infer the judgment of `t` over `sig`.
pub fn typecheck(t: &Term, sig: &Signature) -> Result<TypeJudgment, TypeError> {
    for a in t.objects() {
        sig.check_object(a)?;
    }
    let same = |a: &Object| TypeJudgment::new(a.clone(), a.clone());
    Ok(match t {
        Term::Id(a) => same(a),
        Term::Gen(n) => {
            let (d, c) = sig.morphism(n).ok_or_else(|| TypeError::UndeclaredMorphism(n.clone()))?;
            TypeJudgment::new(d.clone(), c.clone())
        }
        Term::Compose(g, f) => {
            let jf = typecheck(f, sig)?;
            let jg = typecheck(g, sig)?;
            if jf.cod != jg.dom {
                return Err(TypeError::CompositionMismatch { inner_cod: jf.cod, outer_dom: jg.dom });
            }
            TypeJudgment::new(jf.dom, jg.cod)
        }
        Term::Tensor(f, g) => {
            let jf = typecheck(f, sig)?;
            let jg = typecheck(g, sig)?;
            TypeJudgment::new(ten(&jf.dom, &jg.dom), ten(&jf.cod, &jg.cod))
        }
        Term::Dagger(f) => {
            let j = typecheck(f, sig)?;
            TypeJudgment::new(j.cod, j.dom)
        }
        Term::DualM(f) => {
            let j = typecheck(f, sig)?;
            TypeJudgment::new(dual(&j.cod), dual(&j.dom))
        }
        Term::Conj(f) => {
            let j = typecheck(f, sig)?;
            TypeJudgment::new(dual(&j.dom), dual(&j.cod))
        }
        Term::Eta(a) => TypeJudgment::new(Object::Unit, ten(&dual(a), a)),
        Term::Epsilon(a) => TypeJudgment::new(ten(a, &dual(a)), Object::Unit),
        Term::Sigma(a, b) => TypeJudgment::new(ten(a, b), ten(b, a)),
        Term::Lambda(a) => TypeJudgment::new(a.clone(), ten(&Object::Unit, a)),
        Term::LambdaInv(a) => TypeJudgment::new(ten(&Object::Unit, a), a.clone()),
        Term::Rho(a) => TypeJudgment::new(a.clone(), ten(a, &Object::Unit)),
        Term::RhoInv(a) => TypeJudgment::new(ten(a, &Object::Unit), a.clone()),
        Term::Alpha(a, b, c) => TypeJudgment::new(ten(a, &ten(b, c)), ten(&ten(a, b), c)),
        Term::AlphaInv(a, b, c) => TypeJudgment::new(ten(&ten(a, b), c), ten(a, &ten(b, c))),
        Term::UnitIso => TypeJudgment::new(Object::Unit, dual(&Object::Unit)),
        Term::Nu(a, b) => TypeJudgment::new(dual(&sum(a, b)), sum(&dual(a), &dual(b))),
        Term::DoubleDual(a) => TypeJudgment::new(dual(&dual(a)), a.clone()),
        Term::Inj(i, parts) | Term::Proj(i, parts) => {
            let part = parts.get(*i).ok_or(TypeError::IndexOutOfRange { index: *i, len: parts.len() })?;
            let total = Object::biprod_all(parts.iter().cloned());
            if matches!(t, Term::Inj(..)) {
                TypeJudgment::new(part.clone(), total)
            } else {
                TypeJudgment::new(total, part.clone())
            }
        }
        Term::Pair(fs) => {
            let js = check_all(fs, sig, "pair")?;
            let dom = js[0].dom.clone();
            if let Some((k, j)) = js.iter().enumerate().find(|(_, j)| j.dom != dom) {
                return Err(TypeError::Mismatch {
                    context: format!("pair component {k} domain"),
                    expected: dom,
                    found: j.dom.clone(),
                });
            }
            TypeJudgment::new(dom, Object::biprod_all(js.into_iter().map(|j| j.cod)))
        }
        Term::Copair(fs) => {
            let js = check_all(fs, sig, "copair")?;
            let cod = js[0].cod.clone();
            if let Some((k, j)) = js.iter().enumerate().find(|(_, j)| j.cod != cod) {
                return Err(TypeError::Mismatch {
                    context: format!("copair component {k} codomain"),
                    expected: cod,
                    found: j.cod.clone(),
                });
            }
            TypeJudgment::new(Object::biprod_all(js.into_iter().map(|j| j.dom)), cod)
        }
        Term::ZeroM(a, b) => TypeJudgment::new(a.clone(), b.clone()),
        Term::Plus(f, g) => {
            let jf = typecheck(f, sig)?;
            let jg = typecheck(g, sig)?;
            if jf != jg {
                return Err(TypeError::JudgmentMismatch {
                    context: "plus".into(),
                    left: jf.to_string(),
                    right: jg.to_string(),
                });
            }
            jf
        }
        Term::Scale(_, f) => typecheck(f, sig)?,
        Term::Name(f) => {
            let j = typecheck(f, sig)?;
            TypeJudgment::new(Object::Unit, ten(&dual(&j.dom), &j.cod))
        }
        Term::Coname(f) => {
            let j = typecheck(f, sig)?;
            TypeJudgment::new(ten(&j.dom, &dual(&j.cod)), Object::Unit)
        }
        Term::DistR(a, b, c) => TypeJudgment::new(ten(a, &sum(b, c)), sum(&ten(a, b), &ten(a, c))),
        Term::DistRInv(a, b, c) => TypeJudgment::new(sum(&ten(a, b), &ten(a, c)), ten(a, &sum(b, c))),
        Term::DistL(a, b, c) => TypeJudgment::new(ten(&sum(a, b), c), sum(&ten(a, c), &ten(b, c))),
        Term::DistLInv(a, b, c) => TypeJudgment::new(sum(&ten(a, c), &ten(b, c)), ten(&sum(a, b), c)),
    })
}

fn check_all(fs: &[Term], sig: &Signature, what: &'static str) -> Result<Vec<TypeJudgment>, TypeError> {
    if fs.is_empty() {
        return Err(TypeError::Arity { constructor: what, found: 0 });
    }
    fs.iter().map(|f| typecheck(f, sig)).collect()
}
