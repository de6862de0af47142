use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kernel::{object_dim, Object, Signature, Term};
use crate::matrix::{Matrix, Model};
use crate::scalars::{BoolScalar, QiSqrt2};

/// Largest object dimension the random term generator will build.
const MAX_DIM: usize = 16;

/// Random well-typed terms over fresh generators, with matching random
/// matrices in the exact and relational models.
///
/// Objects are drawn from `I`, `Q` (dim 2), `R` (dim 3) and their duals.
/// Exact entries come from `{0, ±1, ±i, ±√2/2}`, relational ones from `{0, 1}`.
pub struct Sampler {
    rng: ChaCha8Rng,
    sig: Signature,
    exact: Model<QiSqrt2>,
    rel: Model<BoolScalar>,
    fresh: usize,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        let mut sig = Signature::new();
        let mut exact = Model::new();
        let mut rel = Model::new();
        for (name, dim) in [("Q", 2), ("R", 3)] {
            sig.declare_object(name).expect("fresh signature");
            exact.set_dim(name, dim);
            rel.set_dim(name, dim);
        }
        Self { rng: ChaCha8Rng::seed_from_u64(seed), sig, exact, rel, fresh: 0 }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn exact(&self) -> &Model<QiSqrt2> {
        &self.exact
    }

    pub fn rel(&self) -> &Model<BoolScalar> {
        &self.rel
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn dim(&self, a: &Object) -> usize {
        object_dim(&self.exact, a).expect("sampler objects are declared")
    }

    pub fn object(&mut self) -> Object {
        match self.below(7) {
            0 => Object::Unit,
            1 | 2 => Object::gen("Q"),
            3 => Object::gen("R"),
            4 => Object::dual(Object::gen("Q")),
            5 => Object::dual(Object::gen("R")),
            _ => Object::gen("Q"),
        }
    }

    pub fn exact_entry(&mut self) -> QiSqrt2 {
        let s = QiSqrt2::half_sqrt2();
        match self.below(7) {
            0 => QiSqrt2::zero(),
            1 => QiSqrt2::one(),
            2 => QiSqrt2::integer(-1),
            3 => QiSqrt2::i(),
            4 => -QiSqrt2::i(),
            5 => s,
            _ => -s,
        }
    }

    pub fn exact_matrix(&mut self, rows: usize, cols: usize) -> Matrix<QiSqrt2> {
        let entries = (0..rows * cols).map(|_| self.exact_entry()).collect();
        Matrix::new(rows, cols, entries).expect("length matches")
    }

    pub fn exact_vector(&mut self, n: usize) -> Matrix<QiSqrt2> {
        self.exact_matrix(n, 1)
    }

    fn rel_matrix(&mut self, rows: usize, cols: usize) -> Matrix<BoolScalar> {
        let entries = (0..rows * cols).map(|_| BoolScalar(self.rng.gen_bool(0.5))).collect();
        Matrix::new(rows, cols, entries).expect("length matches")
    }

    /// A fresh generator `dom → cod` with random matrices in both models.
    pub fn generator(&mut self, dom: &Object, cod: &Object) -> Term {
        let name = format!("g{}", self.fresh);
        self.fresh += 1;
        self.sig.declare_morphism(name.clone(), dom, cod).expect("fresh name");
        let (r, c) = (self.dim(cod), self.dim(dom));
        let m = self.exact_matrix(r, c);
        self.exact.set_generator(name.clone(), m);
        let m = self.rel_matrix(r, c);
        self.rel.set_generator(name.clone(), m);
        Term::Gen(name)
    }

    /// A random morphism `dom → cod`: a generator, the dagger of one, or a
    /// composite through a random middle object.
    pub fn morphism(&mut self, dom: &Object, cod: &Object) -> Term {
        match self.below(5) {
            0 => Term::dagger(self.generator(cod, dom)),
            1 => {
                let mid = self.object();
                let f = self.generator(dom, &mid);
                let g = self.generator(&mid, cod);
                Term::compose(g, f)
            }
            _ => self.generator(dom, cod),
        }
    }

    /// A random well-typed term of roughly the given depth, biased toward
    /// redexes of the rewrite catalog.
    pub fn term(&mut self, depth: usize) -> Term {
        self.typed(depth).0
    }

    fn typed(&mut self, depth: usize) -> (Term, Object, Object) {
        if depth <= 1 {
            return self.leaf();
        }
        let d = depth - 1;
        match self.below(13) {
            0 | 1 => {
                let (f, fd, fc) = self.typed(d);
                let (g, gd, gc) = self.typed(d);
                let f = if fc == gd { f } else { Term::compose(self.generator(&fc, &gd), f) };
                (Term::compose(g, f), fd, gc)
            }
            2 => {
                let (f, fd, fc) = self.typed(d);
                let (g, gd, gc) = self.typed(d);
                let (dom, cod) = (Object::tensor(fd.clone(), gd.clone()), Object::tensor(fc.clone(), gc.clone()));
                if self.dim(&dom) > MAX_DIM || self.dim(&cod) > MAX_DIM {
                    return (f, fd, fc);
                }
                (Term::tensor(f, g), dom.strictify(), cod.strictify())
            }
            3 => {
                let (f, fd, fc) = self.typed(d);
                (Term::dagger(f), fc, fd)
            }
            4 => {
                let (f, fd, fc) = self.typed(d);
                let cod = Object::tensor(Object::dual(fd.clone()), fc.clone()).strictify();
                if self.dim(&cod) > MAX_DIM {
                    return (f, fd, fc);
                }
                (Term::name(f), Object::Unit, cod)
            }
            5 => {
                let (f, fd, fc) = self.typed(d);
                let dom = Object::tensor(fd.clone(), Object::dual(fc.clone())).strictify();
                if self.dim(&dom) > MAX_DIM {
                    return (f, fd, fc);
                }
                (Term::coname(f), dom, Object::Unit)
            }
            6 => {
                let (f, fd, fc) = self.typed(d);
                (Term::dual(f), Object::dual(fc).strictify(), Object::dual(fd).strictify())
            }
            7 => {
                // (1 ⊗ g) ∘ ⌜f⌝
                let (f, fd, fc) = self.typed(d);
                let c = self.object();
                let outer = Object::tensor(Object::dual(fd.clone()), fc.clone());
                let cod = Object::tensor(Object::dual(fd.clone()), c.clone()).strictify();
                if self.dim(&outer) > MAX_DIM || self.dim(&cod) > MAX_DIM {
                    return (f, fd, fc);
                }
                let g = self.generator(&fc, &c);
                let t = Term::compose(Term::tensor(Term::Id(Object::dual(fd)), g), Term::name(f));
                (t, Object::Unit, cod)
            }
            8 => {
                // λ⁻¹ ∘ (⌞f⌟ ⊗ 1) ∘ (1 ⊗ ⌜g⌝) ∘ ρ with g a subterm
                let (g, gd, gc) = self.typed(d);
                let a = self.object();
                let mid = Object::tensor_all([a.clone(), Object::dual(gd.clone()), gc.clone()]);
                if self.dim(&mid) > MAX_DIM {
                    return (g, gd, gc);
                }
                let f = self.generator(&a, &gd);
                let t = Term::compose_all([
                    Term::LambdaInv(gc.clone()),
                    Term::tensor(Term::coname(f), Term::Id(gc.clone())),
                    Term::tensor(Term::Id(a.clone()), Term::name(g)),
                    Term::Rho(a.clone()),
                ]);
                (t, a, gc)
            }
            9 => {
                let (f, fd, fc) = self.typed(d);
                if self.coin(0.5) {
                    (Term::compose(Term::Id(fc.clone()), f), fd, fc)
                } else {
                    (Term::compose(f, Term::Id(fd.clone())), fd, fc)
                }
            }
            10 => {
                let (f, fd, fc) = self.typed(d);
                (Term::tensor(Term::Id(Object::Unit), f), fd, fc)
            }
            11 => {
                let a = self.object();
                let psi = self.morphism(&Object::Unit, &a);
                let bra = Term::dagger(psi.clone());
                (Term::compose_all([psi.clone(), bra.clone(), psi, bra]), a.clone(), a)
            }
            _ => {
                let (f, fd, fc) = self.typed(d);
                (Term::dagger(Term::dagger(f)), fd, fc)
            }
        }
    }

    fn leaf(&mut self) -> (Term, Object, Object) {
        let a = self.object();
        let b = self.object();
        let sa = a.strictify();
        let ten = |x: &Object, y: &Object| Object::tensor(x.clone(), y.clone()).strictify();
        match self.below(9) {
            0 | 1 => {
                let g = self.generator(&a, &b);
                (g, sa, b.strictify())
            }
            2 => (Term::Id(a), sa.clone(), sa),
            3 => (Term::Eta(a.clone()), Object::Unit, ten(&Object::dual(a), &sa)),
            4 => (Term::Epsilon(a.clone()), ten(&a, &Object::dual(a.clone())), Object::Unit),
            5 => (Term::Sigma(a.clone(), b.clone()), ten(&a, &b), ten(&b, &a)),
            6 => (Term::Rho(a), sa.clone(), sa),
            7 => (Term::LambdaInv(a), sa.clone(), sa),
            _ => (Term::name(Term::Id(a.clone())), Object::Unit, ten(&Object::dual(a), &sa)),
        }
    }
}
