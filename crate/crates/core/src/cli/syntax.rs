//! The s-expression forms of objects, terms and scalar literals, in both
//! directions.

use crate::kernel::{Object, Term};
use crate::scalars::QiSqrt2;

use super::sexpr::{ParseError, Sexp};

const OBJECT_FORMS: &[&str] =
    &["symbol", "(I)", "(zero)", "(dual A)", "(ten A B ...)", "(sum A B ...)", "(copies n A)"];

fn arity(e: &Sexp, head: &str, args: &[Sexp], want: usize) -> Result<(), ParseError> {
    if args.len() == want {
        Ok(())
    } else {
        Err(ParseError::new(e.pos(), format!("`{head}` takes {want} argument(s), found {}", args.len())))
    }
}

fn at_least(e: &Sexp, head: &str, args: &[Sexp], want: usize) -> Result<(), ParseError> {
    if args.len() >= want {
        Ok(())
    } else {
        Err(ParseError::new(e.pos(), format!("`{head}` takes at least {want} argument(s), found {}", args.len())))
    }
}

pub fn parse_natural(e: &Sexp) -> Result<usize, ParseError> {
    e.symbol()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| ParseError::expecting(e.pos(), "bad number", &["natural number"]))
}

pub fn parse_object(e: &Sexp) -> Result<Object, ParseError> {
    if let Some(sym) = e.symbol() {
        return Ok(if sym == "I" { Object::Unit } else { Object::gen(sym) });
    }
    let Some((head, args)) = e.form() else {
        return Err(ParseError::expecting(e.pos(), "malformed object", OBJECT_FORMS));
    };
    let objs = |args: &[Sexp]| args.iter().map(parse_object).collect::<Result<Vec<_>, _>>();
    match head {
        "I" => arity(e, head, args, 0).map(|_| Object::Unit),
        "zero" => arity(e, head, args, 0).map(|_| Object::Zero),
        "dual" => {
            arity(e, head, args, 1)?;
            Ok(Object::dual(parse_object(&args[0])?))
        }
        "ten" => {
            at_least(e, head, args, 1)?;
            Ok(Object::tensor_all(objs(args)?))
        }
        "sum" => {
            at_least(e, head, args, 1)?;
            Ok(Object::biprod_all(objs(args)?))
        }
        "copies" => {
            arity(e, head, args, 2)?;
            Ok(Object::copies(parse_natural(&args[0])?, &parse_object(&args[1])?))
        }
        other => Err(ParseError::expecting(e.pos(), format!("unknown object form `{other}`"), OBJECT_FORMS)),
    }
}

/// Summands as written: the arguments of a `(sum ...)` or `(copies n A)` form.
fn parse_parts(e: &Sexp) -> Result<Vec<Object>, ParseError> {
    match e.form() {
        Some(("sum", args)) => {
            at_least(e, "sum", args, 1)?;
            args.iter().map(parse_object).collect()
        }
        Some(("copies", args)) => {
            arity(e, "copies", args, 2)?;
            Ok(vec![parse_object(&args[1])?; parse_natural(&args[0])?])
        }
        _ => Err(ParseError::expecting(e.pos(), "expected summands", &["(sum A B ...)", "(copies n A)"])),
    }
}

pub fn parse_scalar(e: &Sexp) -> Result<QiSqrt2, ParseError> {
    let Sexp::Atom { text, .. } = e else {
        return Err(ParseError::expecting(e.pos(), "expected scalar literal", &["scalar literal"]));
    };
    text.parse().map_err(|err| ParseError::expecting(e.pos(), format!("{err}"), &["scalar literal"]))
}

/// Parse a morphism; bare symbols are looked up with `resolve`.
pub fn parse_term(e: &Sexp, resolve: &dyn Fn(&str) -> Option<Term>) -> Result<Term, ParseError> {
    if let Some(sym) = e.symbol() {
        return resolve(sym).ok_or_else(|| ParseError::new(e.pos(), format!("unresolved name `{sym}`")));
    }
    let Some((head, args)) = e.form() else {
        return Err(ParseError::expecting(e.pos(), "malformed term", &["(constructor args ...)", "name"]));
    };
    let term = |k: usize| parse_term(&args[k], resolve);
    let terms = || args.iter().map(|a| parse_term(a, resolve)).collect::<Result<Vec<_>, _>>();
    let obj = |k: usize| parse_object(&args[k]);
    let unary_obj = |f: fn(Object) -> Term| -> Result<Term, ParseError> {
        arity(e, head, args, 1)?;
        Ok(f(obj(0)?))
    };
    let binary_obj = |f: fn(Object, Object) -> Term| -> Result<Term, ParseError> {
        arity(e, head, args, 2)?;
        Ok(f(obj(0)?, obj(1)?))
    };
    let ternary_obj = |f: fn(Object, Object, Object) -> Term| -> Result<Term, ParseError> {
        arity(e, head, args, 3)?;
        Ok(f(obj(0)?, obj(1)?, obj(2)?))
    };
    let unary = |f: fn(Term) -> Term| -> Result<Term, ParseError> {
        arity(e, head, args, 1)?;
        Ok(f(term(0)?))
    };
    match head {
        "id" => unary_obj(Term::Id),
        "gen" => {
            arity(e, head, args, 1)?;
            let name = args[0].symbol().ok_or_else(|| ParseError::expecting(args[0].pos(), "bad name", &["symbol"]))?;
            Ok(Term::gen(name))
        }
        "o" => {
            at_least(e, head, args, 2)?;
            Ok(Term::compose_all(terms()?))
        }
        "x" => {
            at_least(e, head, args, 2)?;
            Ok(Term::tensor_all(terms()?))
        }
        "dg" => unary(Term::dagger),
        "star" => unary(Term::dual),
        "conj" => unary(Term::conj),
        "name" => unary(Term::name),
        "coname" => unary(Term::coname),
        "eta" => unary_obj(Term::Eta),
        "eps" => unary_obj(Term::Epsilon),
        "sg" => binary_obj(Term::Sigma),
        "lam" => unary_obj(Term::Lambda),
        "laminv" => unary_obj(Term::LambdaInv),
        "rho" => unary_obj(Term::Rho),
        "rhoinv" => unary_obj(Term::RhoInv),
        "assoc" => ternary_obj(Term::Alpha),
        "associnv" => ternary_obj(Term::AlphaInv),
        "unitiso" => arity(e, head, args, 0).map(|_| Term::UnitIso),
        "nu" => binary_obj(Term::Nu),
        "dd" => unary_obj(Term::DoubleDual),
        "inj" | "proj" => {
            arity(e, head, args, 2)?;
            let k = parse_natural(&args[0])?;
            let parts = parse_parts(&args[1])?;
            Ok(if head == "inj" { Term::Inj(k, parts) } else { Term::Proj(k, parts) })
        }
        "pair" => {
            at_least(e, head, args, 1)?;
            Ok(Term::Pair(terms()?))
        }
        "copair" => {
            at_least(e, head, args, 1)?;
            Ok(Term::Copair(terms()?))
        }
        "zero" => binary_obj(Term::ZeroM),
        "plus" => {
            arity(e, head, args, 2)?;
            Ok(Term::plus(term(0)?, term(1)?))
        }
        "sc" => {
            arity(e, head, args, 2)?;
            Ok(Term::scale(parse_scalar(&args[0])?, term(1)?))
        }
        "distR" => ternary_obj(Term::DistR),
        "distRinv" => ternary_obj(Term::DistRInv),
        "distL" => ternary_obj(Term::DistL),
        "distLinv" => ternary_obj(Term::DistLInv),
        other => Err(ParseError::new(e.pos(), format!("unknown term constructor `{other}`"))),
    }
}

/// Bare when the canonical text has no spaces, quoted otherwise.
pub fn print_scalar(s: &QiSqrt2) -> String {
    let text = s.to_string();
    if text.contains(' ') {
        format!("\"{text}\"")
    } else {
        text
    }
}

pub fn print_object(a: &Object) -> String {
    match a {
        Object::Unit => "(I)".into(),
        Object::Zero => "(zero)".into(),
        Object::Gen(n) => n.clone(),
        Object::Dual(x) => format!("(dual {})", print_object(x)),
        Object::Tensor(..) => {
            let mut parts = Vec::new();
            let mut cur = a;
            while let Object::Tensor(l, r) = cur {
                parts.push(print_object(l));
                cur = r;
            }
            parts.push(print_object(cur));
            format!("(ten {})", parts.join(" "))
        }
        Object::Biprod(..) => {
            let mut parts = Vec::new();
            let mut cur = a;
            while let Object::Biprod(l, r) = cur {
                parts.push(print_object(r));
                cur = l;
            }
            parts.push(print_object(cur));
            parts.reverse();
            format!("(sum {})", parts.join(" "))
        }
    }
}

fn print_parts(parts: &[Object]) -> String {
    let ps: Vec<String> = parts.iter().map(print_object).collect();
    format!("(sum {})", ps.join(" "))
}

pub fn print_term(t: &Term) -> String {
    let o = print_object;
    let list = |head: &str, items: Vec<String>| {
        if items.is_empty() {
            format!("({head})")
        } else {
            format!("({head} {})", items.join(" "))
        }
    };
    match t {
        Term::Id(a) => list("id", vec![o(a)]),
        Term::Gen(n) => list("gen", vec![n.clone()]),
        Term::Compose(..) | Term::Tensor(..) => {
            let compose = matches!(t, Term::Compose(..));
            let mut items = Vec::new();
            let mut cur = t;
            while let (true, Term::Compose(g, f)) | (false, Term::Tensor(g, f)) = (compose, cur) {
                items.push(print_term(g));
                cur = f;
            }
            items.push(print_term(cur));
            list(if compose { "o" } else { "x" }, items)
        }
        Term::Dagger(f) => list("dg", vec![print_term(f)]),
        Term::DualM(f) => list("star", vec![print_term(f)]),
        Term::Conj(f) => list("conj", vec![print_term(f)]),
        Term::Name(f) => list("name", vec![print_term(f)]),
        Term::Coname(f) => list("coname", vec![print_term(f)]),
        Term::Eta(a) => list("eta", vec![o(a)]),
        Term::Epsilon(a) => list("eps", vec![o(a)]),
        Term::Sigma(a, b) => list("sg", vec![o(a), o(b)]),
        Term::Lambda(a) => list("lam", vec![o(a)]),
        Term::LambdaInv(a) => list("laminv", vec![o(a)]),
        Term::Rho(a) => list("rho", vec![o(a)]),
        Term::RhoInv(a) => list("rhoinv", vec![o(a)]),
        Term::Alpha(a, b, c) => list("assoc", vec![o(a), o(b), o(c)]),
        Term::AlphaInv(a, b, c) => list("associnv", vec![o(a), o(b), o(c)]),
        Term::UnitIso => list("unitiso", vec![]),
        Term::Nu(a, b) => list("nu", vec![o(a), o(b)]),
        Term::DoubleDual(a) => list("dd", vec![o(a)]),
        Term::Inj(k, parts) => list("inj", vec![k.to_string(), print_parts(parts)]),
        Term::Proj(k, parts) => list("proj", vec![k.to_string(), print_parts(parts)]),
        Term::Pair(fs) => list("pair", fs.iter().map(print_term).collect()),
        Term::Copair(fs) => list("copair", fs.iter().map(print_term).collect()),
        Term::ZeroM(a, b) => list("zero", vec![o(a), o(b)]),
        Term::Plus(f, g) => list("plus", vec![print_term(f), print_term(g)]),
        Term::Scale(s, f) => list("sc", vec![print_scalar(s), print_term(f)]),
        Term::DistR(a, b, c) => list("distR", vec![o(a), o(b), o(c)]),
        Term::DistRInv(a, b, c) => list("distRinv", vec![o(a), o(b), o(c)]),
        Term::DistL(a, b, c) => list("distL", vec![o(a), o(b), o(c)]),
        Term::DistLInv(a, b, c) => list("distLinv", vec![o(a), o(b), o(c)]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::sexpr::read_one;
    use crate::rewrite::Sampler;

    fn no_names(_: &str) -> Option<Term> {
        None
    }

    fn term(src: &str) -> Result<Term, ParseError> {
        parse_term(&read_one(src).unwrap(), &no_names)
    }

    #[test]
    fn parses_core_forms() {
        let t = term("(o (eps Q) (sg (dual Q) Q))").unwrap();
        let q = Object::gen("Q");
        assert_eq!(t, Term::compose(Term::Epsilon(q.clone()), Term::Sigma(Object::dual(q.clone()), q.clone())));
        let t = term("(proj 1 (sum (I) Q (ten Q Q)))").unwrap();
        assert_eq!(t, Term::Proj(1, vec![Object::Unit, q.clone(), Object::tensor(q.clone(), q)]));
        let t = term("(sc \"1 + i\" (id I))").unwrap();
        assert_eq!(t, Term::scale(QiSqrt2::from_ints(1, 0, 1, 0), Term::Id(Object::Unit)));
    }

    #[test]
    fn rejects_bad_arity_and_names() {
        assert!(term("(dg)").is_err());
        assert!(term("(o (id Q))").is_err());
        assert!(term("f").unwrap_err().message.contains("unresolved"));
        assert!(term("(frob Q)").is_err());
        assert!(term("(sc x (id Q))").is_err());
    }

    #[test]
    fn printing_round_trips_random_terms() {
        for seed in 0..200 {
            let mut s = Sampler::new(seed);
            let t = s.term(2 + (seed as usize % 8));
            let text = print_term(&t);
            assert_eq!(term(&text).unwrap(), t, "{text}");
        }
        let a = Object::biprod(Object::gen("Q"), Object::biprod(Object::Unit, Object::Zero));
        let t = Term::Inj(0, vec![a.clone(), Object::dual(a)]);
        assert_eq!(term(&print_term(&t)).unwrap(), t);
        let scaled = Term::scale(QiSqrt2::from_ints(-1, 3, 0, 1), Term::UnitIso);
        assert_eq!(term(&print_term(&scaled)).unwrap(), scaled);
    }
}
