use crate::scalars::QiSqrt2;

use super::object::Object;

/// Abstract syntax of morphisms.
///
/// `Compose(g, f)` is `g ∘ f` (apply `f` first). `Inj`/`Proj` indices
/// are zero-based positions in `parts`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Id(Object),
    Gen(String),
    Compose(Box<Term>, Box<Term>),
    Tensor(Box<Term>, Box<Term>),
    Dagger(Box<Term>),
    /// `f*`: the dual (transpose) of `f`.
    DualM(Box<Term>),
    /// `f_*`: the conjugate of `f`.
    Conj(Box<Term>),
    Eta(Object),
    Epsilon(Object),
    Sigma(Object, Object),
    Lambda(Object),
    LambdaInv(Object),
    Rho(Object),
    RhoInv(Object),
    Alpha(Object, Object, Object),
    AlphaInv(Object, Object, Object),
    /// `u_I : I → I*`.
    UnitIso,
    /// `ν : (A ⊕ B)* → A* ⊕ B*`.
    Nu(Object, Object),
    /// `d_A : A** → A`.
    DoubleDual(Object),
    Inj(usize, Vec<Object>),
    Proj(usize, Vec<Object>),
    Pair(Vec<Term>),
    Copair(Vec<Term>),
    ZeroM(Object, Object),
    Plus(Box<Term>, Box<Term>),
    Scale(QiSqrt2, Box<Term>),
    Name(Box<Term>),
    Coname(Box<Term>),
    /// `A ⊗ (B ⊕ C) → (A ⊗ B) ⊕ (A ⊗ C)`.
    DistR(Object, Object, Object),
    DistRInv(Object, Object, Object),
    /// `(A ⊕ B) ⊗ C → (A ⊗ C) ⊕ (B ⊗ C)`.
    DistL(Object, Object, Object),
    DistLInv(Object, Object, Object),
}

impl Term {
    pub fn id(a: Object) -> Self {
        Term::Id(a)
    }

    pub fn gen(name: impl Into<String>) -> Self {
        Term::Gen(name.into())
    }

    pub fn compose(g: Term, f: Term) -> Self {
        Term::Compose(Box::new(g), Box::new(f))
    }

    /// `fs[0] ∘ fs[1] ∘ … ∘ fs[n-1]`, right-nested.
    ///
    /// Panics on an empty list.
    pub fn compose_all(fs: impl IntoIterator<Item = Term>) -> Self {
        let mut fs: Vec<Term> = fs.into_iter().collect();
        let mut acc = fs.pop().expect("compose_all of an empty list");
        while let Some(g) = fs.pop() {
            acc = Term::compose(g, acc);
        }
        acc
    }

    pub fn tensor(f: Term, g: Term) -> Self {
        Term::Tensor(Box::new(f), Box::new(g))
    }

    /// Right-nested tensor. Panics on an empty list.
    pub fn tensor_all(fs: impl IntoIterator<Item = Term>) -> Self {
        let mut fs: Vec<Term> = fs.into_iter().collect();
        let mut acc = fs.pop().expect("tensor_all of an empty list");
        while let Some(g) = fs.pop() {
            acc = Term::tensor(g, acc);
        }
        acc
    }

    pub fn dagger(f: Term) -> Self {
        Term::Dagger(Box::new(f))
    }

    pub fn dual(f: Term) -> Self {
        Term::DualM(Box::new(f))
    }

    pub fn conj(f: Term) -> Self {
        Term::Conj(Box::new(f))
    }

    pub fn name(f: Term) -> Self {
        Term::Name(Box::new(f))
    }

    pub fn coname(f: Term) -> Self {
        Term::Coname(Box::new(f))
    }

    pub fn scale(s: QiSqrt2, f: Term) -> Self {
        Term::Scale(s, Box::new(f))
    }

    pub fn plus(f: Term, g: Term) -> Self {
        Term::Plus(Box::new(f), Box::new(g))
    }

    /// `Tr^C_{A,B}(f)` for `f : A ⊗ C → B ⊗ C`, as the composite
    /// `ρ⁻¹ ∘ (1_B ⊗ ε_C) ∘ α⁻¹ ∘ (f ⊗ 1_{C*}) ∘ α ∘ (1_A ⊗ ε_C†) ∘ ρ`.
    pub fn partial_trace(f: Term, a: Object, b: Object, c: Object) -> Self {
        let cd = Object::dual(c.clone());
        Term::compose_all([
            Term::RhoInv(b.clone()),
            Term::tensor(Term::id(b.clone()), Term::Epsilon(c.clone())),
            Term::AlphaInv(b, c.clone(), cd.clone()),
            Term::tensor(f, Term::id(cd.clone())),
            Term::Alpha(a.clone(), c.clone(), cd),
            Term::tensor(Term::id(a.clone()), Term::dagger(Term::Epsilon(c))),
            Term::Rho(a),
        ])
    }

    /// Immediate subterms, in constructor order.
    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Compose(a, b) | Term::Tensor(a, b) | Term::Plus(a, b) => vec![a, b],
            Term::Dagger(a) | Term::DualM(a) | Term::Conj(a) | Term::Scale(_, a) | Term::Name(a) | Term::Coname(a) => {
                vec![a]
            }
            Term::Pair(fs) | Term::Copair(fs) => fs.iter().collect(),
            _ => Vec::new(),
        }
    }

    pub fn children_mut(&mut self) -> Vec<&mut Term> {
        match self {
            Term::Compose(a, b) | Term::Tensor(a, b) | Term::Plus(a, b) => vec![a, b],
            Term::Dagger(a) | Term::DualM(a) | Term::Conj(a) | Term::Scale(_, a) | Term::Name(a) | Term::Coname(a) => {
                vec![a]
            }
            Term::Pair(fs) | Term::Copair(fs) => fs.iter_mut().collect(),
            _ => Vec::new(),
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    /// Short constructor name used by printers and diagnostics.
    pub fn constructor(&self) -> &'static str {
        match self {
            Term::Id(_) => "id",
            Term::Gen(_) => "gen",
            Term::Compose(..) => "o",
            Term::Tensor(..) => "x",
            Term::Dagger(_) => "dg",
            Term::DualM(_) => "star",
            Term::Conj(_) => "conj",
            Term::Eta(_) => "eta",
            Term::Epsilon(_) => "eps",
            Term::Sigma(..) => "sg",
            Term::Lambda(_) => "lam",
            Term::LambdaInv(_) => "laminv",
            Term::Rho(_) => "rho",
            Term::RhoInv(_) => "rhoinv",
            Term::Alpha(..) => "alpha",
            Term::AlphaInv(..) => "alphainv",
            Term::UnitIso => "unit",
            Term::Nu(..) => "nu",
            Term::DoubleDual(_) => "dd",
            Term::Inj(..) => "inj",
            Term::Proj(..) => "proj",
            Term::Pair(_) => "pair",
            Term::Copair(_) => "copair",
            Term::ZeroM(..) => "zero",
            Term::Plus(..) => "plus",
            Term::Scale(..) => "sc",
            Term::Name(_) => "name",
            Term::Coname(_) => "coname",
            Term::DistR(..) => "distR",
            Term::DistRInv(..) => "distRinv",
            Term::DistL(..) => "distL",
            Term::DistLInv(..) => "distLinv",
        }
    }

    /// True for the coherence isomorphisms that denote identities under
    /// strictness (λ, ρ, α, u_I, ν, d_A and their inverses).
    pub fn is_structural_identity(&self) -> bool {
        matches!(
            self,
            Term::Lambda(_)
                | Term::LambdaInv(_)
                | Term::Rho(_)
                | Term::RhoInv(_)
                | Term::Alpha(..)
                | Term::AlphaInv(..)
                | Term::UnitIso
                | Term::Nu(..)
                | Term::DoubleDual(_)
        )
    }

    /// Objects mentioned directly by this node (not by its children).
    pub fn objects(&self) -> Vec<&Object> {
        match self {
            Term::Id(a)
            | Term::Eta(a)
            | Term::Epsilon(a)
            | Term::Lambda(a)
            | Term::LambdaInv(a)
            | Term::Rho(a)
            | Term::RhoInv(a)
            | Term::DoubleDual(a) => vec![a],
            Term::Sigma(a, b) | Term::Nu(a, b) | Term::ZeroM(a, b) => vec![a, b],
            Term::Alpha(a, b, c)
            | Term::AlphaInv(a, b, c)
            | Term::DistR(a, b, c)
            | Term::DistRInv(a, b, c)
            | Term::DistL(a, b, c)
            | Term::DistLInv(a, b, c) => vec![a, b, c],
            Term::Inj(_, parts) | Term::Proj(_, parts) => parts.iter().collect(),
            _ => Vec::new(),
        }
    }

    pub fn count_names(&self) -> usize {
        let own = usize::from(matches!(self, Term::Name(_) | Term::Coname(_)));
        own + self.children().iter().map(|c| c.count_names()).sum::<usize>()
    }
}

/// Address of a subterm: child indices from the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Path(pub Vec<usize>);

impl Path {
    pub fn root() -> Self {
        Path(Vec::new())
    }

    pub fn child(&self, k: usize) -> Path {
        let mut v = self.0.clone();
        v.push(k);
        Path(v)
    }

    pub fn get<'a>(&self, t: &'a Term) -> Option<&'a Term> {
        let mut cur = t;
        for &k in &self.0 {
            cur = *cur.children().get(k)?;
        }
        Some(cur)
    }

    pub fn get_mut<'a>(&self, t: &'a mut Term) -> Option<&'a mut Term> {
        let mut cur = t;
        for &k in &self.0 {
            cur = cur.children_mut().into_iter().nth(k)?;
        }
        Some(cur)
    }
}
