use std::fmt;

/// Object expressions: the types of morphisms.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Object {
    Unit,
    Gen(String),
    Dual(Box<Object>),
    Tensor(Box<Object>, Box<Object>),
    Biprod(Box<Object>, Box<Object>),
    Zero,
}

impl Object {
    pub fn gen(name: impl Into<String>) -> Self {
        Object::Gen(name.into())
    }

    pub fn dual(a: Object) -> Self {
        Object::Dual(Box::new(a))
    }

    pub fn tensor(a: Object, b: Object) -> Self {
        Object::Tensor(Box::new(a), Box::new(b))
    }

    pub fn biprod(a: Object, b: Object) -> Self {
        Object::Biprod(Box::new(a), Box::new(b))
    }

    /// `A ⊸ B`, housed as `A* ⊗ B`.
    pub fn lolli(a: Object, b: Object) -> Self {
        Object::tensor(Object::dual(a), b)
    }

    /// Right-nested tensor of a list; the empty list is `I`.
    pub fn tensor_all(parts: impl IntoIterator<Item = Object>) -> Self {
        let mut parts: Vec<Object> = parts.into_iter().collect();
        let Some(mut acc) = parts.pop() else {
            return Object::Unit;
        };
        while let Some(p) = parts.pop() {
            acc = Object::tensor(p, acc);
        }
        acc
    }

    /// Left-nested biproduct of a list; the empty list is the zero object.
    pub fn biprod_all(parts: impl IntoIterator<Item = Object>) -> Self {
        let mut it = parts.into_iter();
        let Some(mut acc) = it.next() else {
            return Object::Zero;
        };
        for p in it {
            acc = Object::biprod(acc, p);
        }
        acc
    }

    /// `n . A`, the n-fold biproduct of `A` with itself.
    pub fn copies(n: usize, a: &Object) -> Self {
        Object::biprod_all(std::iter::repeat_n(a.clone(), n))
    }

    /// Strict normal form: units dropped from tensors, tensors
    /// right-associated, duals pushed to generators, zero objects dropped
    /// from biproducts and biproducts left-associated.
    pub fn strictify(&self) -> Object {
        match self {
            Object::Unit => Object::Unit,
            Object::Zero => Object::Zero,
            Object::Gen(n) => Object::Gen(n.clone()),
            Object::Dual(inner) => dualize(&inner.strictify()),
            Object::Tensor(a, b) => {
                let mut factors = Vec::new();
                tensor_factors(&a.strictify(), &mut factors);
                tensor_factors(&b.strictify(), &mut factors);
                Object::tensor_all(factors)
            }
            Object::Biprod(a, b) => {
                let mut parts = Vec::new();
                biprod_parts(&a.strictify(), &mut parts);
                biprod_parts(&b.strictify(), &mut parts);
                Object::biprod_all(parts)
            }
        }
    }

    /// Tensor factors of a strict object (`I` has none).
    pub fn factors(&self) -> Vec<Object> {
        let mut out = Vec::new();
        tensor_factors(&self.strictify(), &mut out);
        out
    }

    /// Biproduct summands of a strict object (`0` has none).
    pub fn summands(&self) -> Vec<Object> {
        let mut out = Vec::new();
        biprod_parts(&self.strictify(), &mut out);
        out
    }

    pub fn generators(&self, out: &mut Vec<String>) {
        match self {
            Object::Unit | Object::Zero => {}
            Object::Gen(n) => out.push(n.clone()),
            Object::Dual(a) => a.generators(out),
            Object::Tensor(a, b) | Object::Biprod(a, b) => {
                a.generators(out);
                b.generators(out);
            }
        }
    }
}

/// Dual of an object already in strict normal form.
fn dualize(a: &Object) -> Object {
    match a {
        Object::Unit => Object::Unit,
        Object::Zero => Object::Zero,
        Object::Gen(n) => Object::dual(Object::Gen(n.clone())),
        Object::Dual(inner) => (**inner).clone(),
        Object::Tensor(x, y) => Object::tensor(dualize(x), dualize(y)),
        Object::Biprod(x, y) => Object::biprod(dualize(x), dualize(y)),
    }
}

fn tensor_factors(a: &Object, out: &mut Vec<Object>) {
    match a {
        Object::Unit => {}
        Object::Tensor(x, y) => {
            tensor_factors(x, out);
            tensor_factors(y, out);
        }
        other => out.push(other.clone()),
    }
}

fn biprod_parts(a: &Object, out: &mut Vec<Object>) {
    match a {
        Object::Zero => {}
        Object::Biprod(x, y) => {
            biprod_parts(x, out);
            biprod_parts(y, out);
        }
        other => out.push(other.clone()),
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Unit => write!(f, "I"),
            Object::Zero => write!(f, "0"),
            Object::Gen(n) => write!(f, "{n}"),
            Object::Dual(a) => match **a {
                Object::Gen(_) | Object::Unit | Object::Zero => write!(f, "{a}*"),
                _ => write!(f, "({a})*"),
            },
            Object::Tensor(a, b) => {
                let wrap = |o: &Object| matches!(o, Object::Biprod(..));
                if wrap(a) {
                    write!(f, "({a})")?
                } else {
                    write!(f, "{a}")?
                }
                write!(f, " ⊗ ")?;
                if wrap(b) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            Object::Biprod(a, b) => {
                let wrap = |o: &Object| matches!(o, Object::Tensor(..));
                if wrap(a) {
                    write!(f, "({a})")?
                } else {
                    write!(f, "{a}")?
                }
                write!(f, " ⊕ ")?;
                if wrap(b) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}
