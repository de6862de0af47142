use crate::kernel::{typecheck, Object, Signature, Term, TypeJudgment};

use super::sample::Sampler;

/// One directed rewrite law.
pub struct RewriteRule {
    pub name: &'static str,
    /// The law in diagram notation.
    pub law: &'static str,
    /// Rewrites a redex at the root of the given term.
    pub rewrite: fn(&Term, &Signature) -> Option<Term>,
    /// Also match `x ∘ (y ∘ rest)` by rewriting the `x ∘ y` prefix.
    pub chain: bool,
    /// Draws a random well-typed left-hand side.
    pub sample: fn(&mut Sampler) -> Term,
}

impl std::fmt::Debug for RewriteRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RewriteRule").field("name", &self.name).field("law", &self.law).finish()
    }
}

impl RewriteRule {
    /// Try the rule at the root of `t`.
    pub fn fire(&self, t: &Term, sig: &Signature) -> Option<Term> {
        if let Some(r) = (self.rewrite)(t, sig) {
            return Some(r);
        }
        if !self.chain {
            return None;
        }
        let Term::Compose(x, inner) = t else { return None };
        let Term::Compose(y, rest) = &**inner else { return None };
        let head = (self.rewrite)(&Term::Compose(x.clone(), y.clone()), sig)?;
        Some(Term::compose(head, (**rest).clone()))
    }
}

static CATALOG: [RewriteRule; 19] = [
    RewriteRule {
        name: "absorption",
        law: "(1 ⊗ g) ∘ ⌜f⌝ = ⌜g ∘ f⌝",
        rewrite: absorption,
        chain: true,
        sample: sample_absorption,
    },
    RewriteRule {
        name: "backward-absorption",
        law: "(g* ⊗ 1) ∘ ⌜f⌝ = ⌜f ∘ g⌝",
        rewrite: backward_absorption,
        chain: true,
        sample: sample_backward_absorption,
    },
    RewriteRule {
        name: "coname-absorption",
        law: "⌞f⌟ ∘ (g ⊗ 1) = ⌞f ∘ g⌟",
        rewrite: coname_absorption,
        chain: true,
        sample: sample_coname_absorption,
    },
    RewriteRule {
        name: "coname-backward-absorption",
        law: "⌞f⌟ ∘ (1 ⊗ h*) = ⌞h ∘ f⌟",
        rewrite: coname_backward_absorption,
        chain: true,
        sample: sample_coname_backward_absorption,
    },
    RewriteRule {
        name: "compositionality",
        law: "λ⁻¹ ∘ (⌞f⌟ ⊗ 1) ∘ (1 ⊗ ⌜g⌝) ∘ ρ = g ∘ f",
        rewrite: compositionality,
        chain: true,
        sample: sample_compositionality,
    },
    RewriteRule {
        name: "compositional-cut",
        law: "(1 ⊗ ⌞g⌟ ⊗ 1) ∘ (⌜f⌝ ⊗ ⌜h⌝) = ⌜h ∘ g ∘ f⌝",
        rewrite: compositional_cut,
        chain: true,
        sample: sample_compositional_cut,
    },
    RewriteRule {
        name: "dagger-involution",
        law: "f†† = f",
        rewrite: dagger_involution,
        chain: false,
        sample: sample_dagger_involution,
    },
    RewriteRule {
        name: "dagger-antihomomorphism",
        law: "(g ∘ f)† = f† ∘ g†",
        rewrite: dagger_antihomomorphism,
        chain: false,
        sample: sample_dagger_antihomomorphism,
    },
    RewriteRule {
        name: "ket-bra",
        law: "ψ ∘ ψ† ∘ ψ ∘ ψ† = ⟨ψ|ψ⟩ • ψ ∘ ψ†",
        rewrite: ket_bra,
        chain: false,
        sample: sample_ket_bra,
    },
    RewriteRule {
        name: "name-of-identity",
        law: "⌜1_A⌝ = η_A",
        rewrite: name_of_identity,
        chain: false,
        sample: sample_name_of_identity,
    },
    RewriteRule {
        name: "coname-of-identity",
        law: "⌞1_A⌟ = ε_A",
        rewrite: coname_of_identity,
        chain: false,
        sample: sample_coname_of_identity,
    },
    RewriteRule {
        name: "iso-erasure",
        law: "λ, ρ, α, u_I, ν, d = 1",
        rewrite: iso_erasure,
        chain: false,
        sample: sample_iso_erasure,
    },
    RewriteRule {
        name: "identity-left",
        law: "1 ∘ f = f",
        rewrite: identity_left,
        chain: false,
        sample: sample_identity_left,
    },
    RewriteRule {
        name: "identity-right",
        law: "f ∘ 1 = f",
        rewrite: identity_right,
        chain: false,
        sample: sample_identity_right,
    },
    RewriteRule {
        name: "unit-tensor-left",
        law: "1_I ⊗ f = f",
        rewrite: unit_tensor_left,
        chain: false,
        sample: sample_unit_tensor_left,
    },
    RewriteRule {
        name: "unit-tensor-right",
        law: "f ⊗ 1_I = f",
        rewrite: unit_tensor_right,
        chain: false,
        sample: sample_unit_tensor_right,
    },
    RewriteRule {
        name: "identity-tensor",
        law: "1_A ⊗ 1_B = 1_{A⊗B}",
        rewrite: identity_tensor,
        chain: false,
        sample: sample_identity_tensor,
    },
    RewriteRule {
        name: "compose-assoc",
        law: "(h ∘ g) ∘ f = h ∘ (g ∘ f)",
        rewrite: compose_assoc,
        chain: false,
        sample: sample_compose_assoc,
    },
    RewriteRule {
        name: "tensor-assoc",
        law: "(f ⊗ g) ⊗ h = f ⊗ (g ⊗ h)",
        rewrite: tensor_assoc,
        chain: false,
        sample: sample_tensor_assoc,
    },
];

/// Every rule, in the priority order used by normalization.
pub fn catalog() -> &'static [RewriteRule] {
    &CATALOG
}

/// Look a rule up by name.
pub fn rule(name: &str) -> Option<&'static RewriteRule> {
    CATALOG.iter().find(|r| r.name == name)
}

/// Rules that only move structure around, run before retrying a match.
/// Unit tensors are kept so patterns such as `⌞f⌟ ⊗ 1_I` survive.
pub(super) fn is_structural(r: &RewriteRule) -> bool {
    matches!(
        r.name,
        "iso-erasure" | "identity-left" | "identity-right" | "identity-tensor" | "compose-assoc" | "tensor-assoc"
    )
}

fn judge(t: &Term, sig: &Signature) -> Option<TypeJudgment> {
    typecheck(t, sig).ok()
}

fn same(a: &Object, b: &Object) -> bool {
    a.strictify() == b.strictify()
}

fn dual(a: &Object) -> Object {
    Object::dual(a.clone())
}

/// `f` for `⌜f⌝`, and `1_A` for `η_A`.
fn name_body(t: &Term) -> Option<Term> {
    match t {
        Term::Name(f) => Some((**f).clone()),
        Term::Eta(a) => Some(Term::Id(a.clone())),
        _ => None,
    }
}

/// `f` for `⌞f⌟`, and `1_A` for `ε_A`.
fn coname_body(t: &Term) -> Option<Term> {
    match t {
        Term::Coname(f) => Some((**f).clone()),
        Term::Epsilon(a) => Some(Term::Id(a.clone())),
        _ => None,
    }
}

fn id_object(t: &Term) -> Option<&Object> {
    match t {
        Term::Id(a) => Some(a),
        _ => None,
    }
}

/// `g ∘ f` with identity factors dropped.
fn then(g: Term, f: Term) -> Term {
    match (&g, &f) {
        (Term::Id(_), _) => f,
        (_, Term::Id(_)) => g,
        _ => Term::compose(g, f),
    }
}

fn absorption(t: &Term, sig: &Signature) -> Option<Term> {
    let Term::Compose(outer, inner) = t else { return None };
    let Term::Tensor(l, g) = &**outer else { return None };
    let x = id_object(l)?;
    let f = name_body(inner)?;
    let jf = judge(&f, sig)?;
    same(x, &dual(&jf.dom)).then(|| Term::name(then((**g).clone(), f)))
}

fn backward_absorption(t: &Term, sig: &Signature) -> Option<Term> {
    let Term::Compose(outer, inner) = t else { return None };
    let Term::Tensor(l, r) = &**outer else { return None };
    let Term::DualM(g) = &**l else { return None };
    let x = id_object(r)?;
    let f = name_body(inner)?;
    let jf = judge(&f, sig)?;
    same(x, &jf.cod).then(|| Term::name(then(f, (**g).clone())))
}

fn coname_absorption(t: &Term, sig: &Signature) -> Option<Term> {
    let Term::Compose(outer, inner) = t else { return None };
    let f = coname_body(outer)?;
    let Term::Tensor(g, r) = &**inner else { return None };
    let x = id_object(r)?;
    let jf = judge(&f, sig)?;
    same(x, &dual(&jf.cod)).then(|| Term::coname(then(f, (**g).clone())))
}

fn coname_backward_absorption(t: &Term, sig: &Signature) -> Option<Term> {
    let Term::Compose(outer, inner) = t else { return None };
    let f = coname_body(outer)?;
    let Term::Tensor(l, r) = &**inner else { return None };
    let x = id_object(l)?;
    let Term::DualM(h) = &**r else { return None };
    let jf = judge(&f, sig)?;
    same(x, &jf.dom).then(|| Term::coname(then((**h).clone(), f)))
}

/// `1_x ⊗ r` as `(x, r)`; any other term has an implicit `1_I` on the left.
fn split_left(t: &Term) -> (Object, &Term) {
    if let Term::Tensor(l, r) = t {
        if let Term::Id(x) = &**l {
            return (x.clone(), r);
        }
    }
    (Object::Unit, t)
}

/// `l ⊗ 1_z` as `(l, z)`; any other term has an implicit `1_I` on the right.
fn split_right(t: &Term) -> (&Term, Object) {
    if let Term::Tensor(l, r) = t {
        if let Term::Id(z) = &**r {
            return (l, z.clone());
        }
    }
    (t, Object::Unit)
}

fn compositionality(t: &Term, sig: &Signature) -> Option<Term> {
    let Term::Compose(outer, inner) = t else { return None };
    let (c, z) = split_right(outer);
    let (x, n) = split_left(inner);
    let f = coname_body(c)?;
    let g = name_body(n)?;
    let (jf, jg) = (judge(&f, sig)?, judge(&g, sig)?);
    (same(&x, &jf.dom) && same(&z, &jg.cod) && jf.cod == jg.dom).then(|| then(g, f))
}

fn compositional_cut(t: &Term, sig: &Signature) -> Option<Term> {
    let Term::Compose(outer, inner) = t else { return None };
    let (x, rest) = split_left(outer);
    let (c, z) = split_right(rest);
    let Term::Tensor(n1, n2) = &**inner else { return None };
    let (f, g, h) = (name_body(n1)?, coname_body(c)?, name_body(n2)?);
    let (jf, jg, jh) = (judge(&f, sig)?, judge(&g, sig)?, judge(&h, sig)?);
    let ok = same(&x, &dual(&jf.dom)) && same(&z, &jh.cod) && jf.cod == jg.dom && jg.cod == jh.dom;
    ok.then(|| Term::name(then(h, then(g, f))))
}

fn dagger_involution(t: &Term, _: &Signature) -> Option<Term> {
    match t {
        Term::Dagger(inner) => match &**inner {
            Term::Dagger(f) => Some((**f).clone()),
            _ => None,
        },
        _ => None,
    }
}

fn dagger_antihomomorphism(t: &Term, _: &Signature) -> Option<Term> {
    let Term::Dagger(inner) = t else { return None };
    let Term::Compose(g, f) = &**inner else { return None };
    Some(Term::compose(Term::dagger((**f).clone()), Term::dagger((**g).clone())))
}

/// The first `n` factors of a composition spine, plus the remainder.
fn spine(t: &Term, n: usize) -> Option<(Vec<&Term>, Option<&Term>)> {
    let mut out = Vec::with_capacity(n);
    let mut cur = t;
    while out.len() + 1 < n {
        let Term::Compose(a, b) = cur else { return None };
        out.push(&**a);
        cur = b;
    }
    match cur {
        Term::Compose(a, b) => {
            out.push(&**a);
            Some((out, Some(&**b)))
        }
        last => {
            out.push(last);
            Some((out, None))
        }
    }
}

fn ket_bra(t: &Term, sig: &Signature) -> Option<Term> {
    let (fs, rest) = spine(t, 4)?;
    let psi = fs[0];
    let bra = Term::dagger(psi.clone());
    if fs.len() != 4 || fs[2] != psi || *fs[1] != bra || *fs[3] != bra {
        return None;
    }
    if judge(psi, sig)?.dom != Object::Unit {
        return None;
    }
    let amplitude = Term::compose(bra.clone(), psi.clone());
    let r = Term::tensor(amplitude, Term::compose(psi.clone(), bra));
    Some(match rest {
        Some(rest) => Term::compose(r, rest.clone()),
        None => r,
    })
}

fn name_of_identity(t: &Term, _: &Signature) -> Option<Term> {
    let Term::Name(f) = t else { return None };
    id_object(f).map(|a| Term::Eta(a.clone()))
}

fn coname_of_identity(t: &Term, _: &Signature) -> Option<Term> {
    let Term::Coname(f) = t else { return None };
    id_object(f).map(|a| Term::Epsilon(a.clone()))
}

fn iso_erasure(t: &Term, _: &Signature) -> Option<Term> {
    let ten = |a: &Object, b: &Object| Object::tensor(a.clone(), b.clone());
    let obj = match t {
        Term::Lambda(a) | Term::LambdaInv(a) | Term::Rho(a) | Term::RhoInv(a) | Term::DoubleDual(a) => a.clone(),
        Term::Alpha(a, b, c) | Term::AlphaInv(a, b, c) => ten(a, &ten(b, c)),
        Term::UnitIso => Object::Unit,
        Term::Nu(a, b) => Object::dual(Object::biprod(a.clone(), b.clone())),
        _ => return None,
    };
    Some(Term::Id(obj.strictify()))
}

fn identity_left(t: &Term, _: &Signature) -> Option<Term> {
    match t {
        Term::Compose(g, f) if matches!(**g, Term::Id(_)) => Some((**f).clone()),
        _ => None,
    }
}

fn identity_right(t: &Term, _: &Signature) -> Option<Term> {
    match t {
        Term::Compose(g, f) if matches!(**f, Term::Id(_)) => Some((**g).clone()),
        _ => None,
    }
}

fn is_unit_id(t: &Term) -> bool {
    id_object(t).is_some_and(|a| a.strictify() == Object::Unit)
}

fn unit_tensor_left(t: &Term, _: &Signature) -> Option<Term> {
    match t {
        Term::Tensor(u, f) if is_unit_id(u) => Some((**f).clone()),
        _ => None,
    }
}

fn unit_tensor_right(t: &Term, _: &Signature) -> Option<Term> {
    match t {
        Term::Tensor(f, u) if is_unit_id(u) => Some((**f).clone()),
        _ => None,
    }
}

fn identity_tensor(t: &Term, _: &Signature) -> Option<Term> {
    let Term::Tensor(l, r) = t else { return None };
    let (a, b) = (id_object(l)?, id_object(r)?);
    Some(Term::Id(Object::tensor(a.clone(), b.clone()).strictify()))
}

fn compose_assoc(t: &Term, _: &Signature) -> Option<Term> {
    let Term::Compose(hg, f) = t else { return None };
    let Term::Compose(h, g) = &**hg else { return None };
    Some(Term::compose((**h).clone(), Term::compose((**g).clone(), (**f).clone())))
}

fn tensor_assoc(t: &Term, _: &Signature) -> Option<Term> {
    let Term::Tensor(fg, h) = t else { return None };
    let Term::Tensor(f, g) = &**fg else { return None };
    Some(Term::tensor((**f).clone(), Term::tensor((**g).clone(), (**h).clone())))
}

fn sample_absorption(s: &mut Sampler) -> Term {
    let (a, b, c) = (s.object(), s.object(), s.object());
    if s.coin(0.2) {
        let g = s.morphism(&a, &c);
        return Term::compose(Term::tensor(Term::Id(dual(&a)), g), Term::Eta(a));
    }
    let f = s.morphism(&a, &b);
    let g = s.morphism(&b, &c);
    Term::compose(Term::tensor(Term::Id(dual(&a)), g), Term::name(f))
}

fn sample_backward_absorption(s: &mut Sampler) -> Term {
    let (a, b, c) = (s.object(), s.object(), s.object());
    let g = s.morphism(&c, &a);
    let f = s.morphism(&a, &b);
    Term::compose(Term::tensor(Term::dual(g), Term::Id(b)), Term::name(f))
}

fn sample_coname_absorption(s: &mut Sampler) -> Term {
    let (a, b, c) = (s.object(), s.object(), s.object());
    let f = s.morphism(&a, &b);
    let g = s.morphism(&c, &a);
    Term::compose(Term::coname(f), Term::tensor(g, Term::Id(dual(&b))))
}

fn sample_coname_backward_absorption(s: &mut Sampler) -> Term {
    let (a, b, d) = (s.object(), s.object(), s.object());
    let f = s.morphism(&a, &b);
    let h = s.morphism(&b, &d);
    Term::compose(Term::coname(f), Term::tensor(Term::Id(a), Term::dual(h)))
}

fn sample_compositionality(s: &mut Sampler) -> Term {
    let (a, b, c) = (s.object(), s.object(), s.object());
    let f = s.morphism(&a, &b);
    let g = s.morphism(&b, &c);
    Term::compose_all([
        Term::LambdaInv(c.clone()),
        Term::tensor(Term::coname(f), Term::Id(c)),
        Term::tensor(Term::Id(a.clone()), Term::name(g)),
        Term::Rho(a),
    ])
}

fn sample_compositional_cut(s: &mut Sampler) -> Term {
    let (a, b, c, d) = (s.object(), s.object(), s.object(), s.object());
    let f = s.morphism(&a, &b);
    let g = s.morphism(&b, &c);
    let h = s.morphism(&c, &d);
    Term::compose_all([
        Term::tensor(Term::RhoInv(dual(&a)), Term::Id(d.clone())),
        Term::tensor_all([Term::Id(dual(&a)), Term::coname(g), Term::Id(d)]),
        Term::tensor(Term::name(f), Term::name(h)),
        Term::Rho(Object::Unit),
    ])
}

fn sample_dagger_involution(s: &mut Sampler) -> Term {
    let (a, b) = (s.object(), s.object());
    Term::dagger(Term::dagger(s.morphism(&a, &b)))
}

fn sample_dagger_antihomomorphism(s: &mut Sampler) -> Term {
    let (a, b, c) = (s.object(), s.object(), s.object());
    let f = s.morphism(&a, &b);
    let g = s.morphism(&b, &c);
    Term::dagger(Term::compose(g, f))
}

fn sample_ket_bra(s: &mut Sampler) -> Term {
    let a = s.object();
    let psi = s.morphism(&Object::Unit, &a);
    let bra = Term::dagger(psi.clone());
    Term::compose_all([psi.clone(), bra.clone(), psi, bra])
}

fn sample_name_of_identity(s: &mut Sampler) -> Term {
    Term::name(Term::Id(s.object()))
}

fn sample_coname_of_identity(s: &mut Sampler) -> Term {
    Term::coname(Term::Id(s.object()))
}

fn sample_iso_erasure(s: &mut Sampler) -> Term {
    let (a, b, c) = (s.object(), s.object(), s.object());
    match s.below(9) {
        0 => Term::Lambda(a),
        1 => Term::LambdaInv(a),
        2 => Term::Rho(a),
        3 => Term::RhoInv(a),
        4 => Term::Alpha(a, b, c),
        5 => Term::AlphaInv(a, b, c),
        6 => Term::UnitIso,
        7 => Term::Nu(a, b),
        _ => Term::DoubleDual(a),
    }
}

fn sample_identity_left(s: &mut Sampler) -> Term {
    let (a, b) = (s.object(), s.object());
    Term::compose(Term::Id(b.clone()), s.morphism(&a, &b))
}

fn sample_identity_right(s: &mut Sampler) -> Term {
    let (a, b) = (s.object(), s.object());
    Term::compose(s.morphism(&a, &b), Term::Id(a))
}

fn sample_unit_tensor_left(s: &mut Sampler) -> Term {
    let (a, b) = (s.object(), s.object());
    Term::tensor(Term::Id(Object::Unit), s.morphism(&a, &b))
}

fn sample_unit_tensor_right(s: &mut Sampler) -> Term {
    let (a, b) = (s.object(), s.object());
    let unit = if s.coin(0.5) { Object::Unit } else { dual(&Object::Unit) };
    Term::tensor(s.morphism(&a, &b), Term::Id(unit))
}

fn sample_identity_tensor(s: &mut Sampler) -> Term {
    Term::tensor(Term::Id(s.object()), Term::Id(s.object()))
}

fn sample_compose_assoc(s: &mut Sampler) -> Term {
    let (a, b, c, d) = (s.object(), s.object(), s.object(), s.object());
    let f = s.morphism(&a, &b);
    let g = s.morphism(&b, &c);
    let h = s.morphism(&c, &d);
    Term::compose(Term::compose(h, g), f)
}

fn sample_tensor_assoc(s: &mut Sampler) -> Term {
    let mut m = || {
        let (a, b) = (s.object(), s.object());
        s.morphism(&a, &b)
    };
    let (f, g, h) = (m(), m(), m());
    Term::tensor(Term::tensor(f, g), h)
}
