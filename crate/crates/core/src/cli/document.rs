use std::collections::BTreeMap;

use crate::kernel::{typecheck, Object, Signature, Term, TypeError, TypeJudgment};
use crate::matrix::{float_model, Matrix, Model};
use crate::protocols::Setting;
use crate::scalars::{BoolScalar, ComplexApprox, QiSqrt2, Semiring};
use crate::Error;

use super::sexpr::{read_all, ParseError, Pos, Sexp};
use super::syntax::{parse_natural, parse_object, parse_scalar, parse_term, print_object, print_scalar, print_term};

/// The standard qubit signature available to every document.
pub const PRELUDE: &str = include_str!("prelude.catqm");

#[derive(Clone, Debug, PartialEq)]
pub struct MorphismDecl {
    pub name: String,
    pub dom: Object,
    pub cod: Object,
    pub matrix: Matrix<QiSqrt2>,
    /// Explicit relational matrix; otherwise `matrix` is read as Boolean
    /// when all its entries are 0 or 1.
    pub rel: Option<Matrix<BoolScalar>>,
}

/// A parsed document: declarations, named definitions and an optional
/// entry term. Definitions are stored expanded.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TermDocument {
    pub objects: Vec<(String, usize)>,
    pub morphisms: Vec<MorphismDecl>,
    pub defs: Vec<(String, Term)>,
    pub entry: Option<Term>,
}

const TOP_FORMS: &[&str] = &["(object NAME DIM)", "(morphism NAME DOM COD MATRIX)", "(let NAME TERM)", "(term TERM)"];

fn parse_matrix<S: Semiring>(
    e: &Sexp,
    entry: impl Fn(&Sexp) -> Result<S, ParseError>,
) -> Result<Matrix<S>, ParseError> {
    let bad = |pos: Pos| ParseError::expecting(pos, "malformed matrix", &["((a b ...) (c d ...) ...)"]);
    let Sexp::List { items: rows, pos } = e else {
        return Err(bad(e.pos()));
    };
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let Sexp::List { items, .. } = row else {
            return Err(bad(row.pos()));
        };
        out.push(items.iter().map(&entry).collect::<Result<Vec<_>, _>>()?);
    }
    Matrix::from_rows(out).map_err(|err| ParseError::new(*pos, err.to_string()))
}

fn parse_bool(e: &Sexp) -> Result<BoolScalar, ParseError> {
    match e.symbol() {
        Some("0") => Ok(BoolScalar(false)),
        Some("1") => Ok(BoolScalar(true)),
        _ => Err(ParseError::expecting(e.pos(), "relational entries are 0 or 1", &["0", "1"])),
    }
}

fn print_matrix<S: Semiring>(m: &Matrix<S>, entry: impl Fn(&S) -> String) -> String {
    let rows: Vec<String> =
        (0..m.rows()).map(|i| format!("({})", m.row_vec(i).iter().map(&entry).collect::<Vec<_>>().join(" "))).collect();
    format!("({})", rows.join(" "))
}

fn symbol_arg<'a>(e: &'a Sexp, what: &str) -> Result<&'a str, ParseError> {
    e.symbol().ok_or_else(|| ParseError::expecting(e.pos(), format!("bad {what}"), &["symbol"]))
}

impl TermDocument {
    /// Parse document text. Bare symbols in term position refer to earlier
    /// `let` definitions, then to generators of the document or prelude.
    pub fn parse(src: &str) -> Result<Self, ParseError> {
        Self::parse_with(src, &prelude_names())
    }

    fn parse_with(src: &str, known: &[String]) -> Result<Self, ParseError> {
        let mut doc = TermDocument::default();
        for e in read_all(src)? {
            let Some((head, args)) = e.form() else {
                return Err(ParseError::expecting(e.pos(), "expected a declaration", TOP_FORMS));
            };
            let want = |n: &[usize]| {
                if n.contains(&args.len()) {
                    Ok(())
                } else {
                    Err(ParseError::new(e.pos(), format!("`{head}` takes {n:?} arguments, found {}", args.len())))
                }
            };
            match head {
                "object" => {
                    want(&[2])?;
                    let name = symbol_arg(&args[0], "object name")?;
                    if name == "I" {
                        return Err(ParseError::new(args[0].pos(), "`I` is reserved for the unit"));
                    }
                    doc.objects.push((name.to_string(), parse_natural(&args[1])?));
                }
                "morphism" => {
                    want(&[4, 5])?;
                    let name = symbol_arg(&args[0], "morphism name")?.to_string();
                    let matrix = parse_matrix(&args[3], parse_scalar)?;
                    let rel = match args.get(4) {
                        None => None,
                        Some(r) => match r.form() {
                            Some(("rel", [m])) => Some(parse_matrix(m, parse_bool)?),
                            _ => {
                                return Err(ParseError::expecting(r.pos(), "bad relational matrix", &["(rel MATRIX)"]))
                            }
                        },
                    };
                    doc.morphisms.push(MorphismDecl {
                        name,
                        dom: parse_object(&args[1])?,
                        cod: parse_object(&args[2])?,
                        matrix,
                        rel,
                    });
                }
                "let" => {
                    want(&[2])?;
                    let name = symbol_arg(&args[0], "definition name")?.to_string();
                    let t = parse_term(&args[1], &|s| doc.resolve(s, known))?;
                    doc.defs.push((name, t));
                }
                "term" => {
                    want(&[1])?;
                    if doc.entry.is_some() {
                        return Err(ParseError::new(e.pos(), "a document has one entry term"));
                    }
                    doc.entry = Some(parse_term(&args[0], &|s| doc.resolve(s, known))?);
                }
                other => {
                    return Err(ParseError::expecting(e.pos(), format!("unknown declaration `{other}`"), TOP_FORMS))
                }
            }
        }
        Ok(doc)
    }

    fn resolve(&self, sym: &str, known: &[String]) -> Option<Term> {
        if let Some((_, t)) = self.defs.iter().rev().find(|(n, _)| n == sym) {
            return Some(t.clone());
        }
        let declared = self.morphisms.iter().any(|m| m.name == sym) || known.iter().any(|k| k == sym);
        declared.then(|| Term::gen(sym))
    }

    /// Canonical text; reparses to an identical document.
    pub fn print(&self) -> String {
        let mut out = String::new();
        for (name, dim) in &self.objects {
            out.push_str(&format!("(object {name} {dim})\n"));
        }
        for m in &self.morphisms {
            let mut line = format!(
                "(morphism {} {} {} {}",
                m.name,
                print_object(&m.dom),
                print_object(&m.cod),
                print_matrix(&m.matrix, print_scalar)
            );
            if let Some(r) = &m.rel {
                line.push_str(&format!(" (rel {})", print_matrix(r, |b| if b.0 { "1" } else { "0" }.to_string())));
            }
            out.push_str(&line);
            out.push_str(")\n");
        }
        for (name, t) in &self.defs {
            out.push_str(&format!("(let {name} {})\n", print_term(t)));
        }
        if let Some(t) = &self.entry {
            out.push_str(&format!("(term {})\n", print_term(t)));
        }
        out
    }

    pub fn entry(&self) -> Result<&Term, Error> {
        self.entry.as_ref().ok_or_else(|| {
            ParseError::expecting(Pos { line: 1, col: 1 }, "document has no entry term", &["(term TERM)"]).into()
        })
    }

    /// The prelude extended with this document's declarations.
    pub fn setting(&self) -> Result<Environment, Error> {
        let mut env = Environment::prelude();
        env.extend(self)?;
        Ok(env)
    }

    pub fn check(&self) -> Result<TypeJudgment, Error> {
        let env = self.setting()?;
        Ok(typecheck(self.entry()?, &env.sig)?)
    }
}

fn prelude_names() -> Vec<String> {
    Setting::standard().sig.morphisms().map(|(n, _)| n.clone()).collect()
}

/// A signature with its three models.
#[derive(Clone, Debug)]
pub struct Environment {
    pub sig: Signature,
    pub exact: Model<QiSqrt2>,
    pub rel: Model<BoolScalar>,
    /// Explicit relational matrices, keyed by generator.
    rel_overrides: BTreeMap<String, Matrix<BoolScalar>>,
}

impl Environment {
    fn empty() -> Self {
        Self { sig: Signature::new(), exact: Model::new(), rel: Model::new(), rel_overrides: BTreeMap::new() }
    }

    /// The embedded prelude document.
    pub fn prelude() -> Self {
        let doc = TermDocument::parse_with(PRELUDE, &[]).expect("prelude parses");
        let mut env = Self::empty();
        env.extend(&doc).expect("prelude is well formed");
        env
    }

    /// Add declarations; a name declared again is an error unless the
    /// declaration is identical.
    pub fn extend(&mut self, doc: &TermDocument) -> Result<(), Error> {
        for (name, dim) in &doc.objects {
            if self.sig.has_object(name) {
                if self.exact.dims().get(name) == Some(dim) {
                    continue;
                }
                return Err(TypeError::Duplicate(name.clone()).into());
            }
            self.sig.declare_object(name.clone())?;
            self.exact.set_dim(name.clone(), *dim);
            self.rel.set_dim(name.clone(), *dim);
        }
        for m in &doc.morphisms {
            if let Some(old) = self.exact.generator(&m.name) {
                if old != &m.matrix || self.rel_overrides.get(&m.name) != m.rel.as_ref() {
                    return Err(TypeError::Duplicate(m.name.clone()).into());
                }
            }
            self.sig.ensure_morphism(&m.name, &m.dom, &m.cod)?;
            self.exact.set_generator(m.name.clone(), m.matrix.clone());
            let rel = match &m.rel {
                Some(r) => {
                    self.rel_overrides.insert(m.name.clone(), r.clone());
                    Some(r.clone())
                }
                None => m.matrix.try_map(BoolScalar::from_literal).ok(),
            };
            if let Some(r) = rel {
                self.rel.set_generator(m.name.clone(), r);
            }
        }
        self.exact.validate(&self.sig)?;
        self.rel.validate(&self.sig)?;
        Ok(())
    }

    pub fn float(&self) -> Model<ComplexApprox> {
        float_model(&self.exact)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::evaluate;

    #[test]
    fn prelude_matches_the_standard_setting() {
        let env = Environment::prelude();
        let st = Setting::standard();
        let a: Vec<_> = env.sig.morphisms().collect();
        let b: Vec<_> = st.sig.morphisms().collect();
        assert_eq!(a, b);
        assert_eq!(env.exact.dims(), st.model.dims());
        for (name, m) in st.model.generators() {
            assert_eq!(env.exact.generator(name), Some(m), "{name}");
        }
        assert!(env.rel.generator("beta2").is_some());
        assert!(env.rel.generator("H").is_none());
    }

    #[test]
    fn documents_round_trip() {
        let src = "; a test\n(object R 3)\n(morphism f Q R ((1 0) (0 \"1 + i\") (r2 -1)) )\n\
                   (morphism g Q Q ((1 1) (0 1)) (rel ((1 1) (0 1))))\n\
                   (let tw (o f (gen H)))\n(term (x tw (dg (gen g))))";
        let doc = TermDocument::parse(src).unwrap();
        assert_eq!(doc.defs.len(), 1);
        let printed = doc.print();
        assert_eq!(TermDocument::parse(&printed).unwrap(), doc);
        assert_eq!(TermDocument::parse(&printed).unwrap().print(), printed);
        let env = doc.setting().unwrap();
        let j = doc.check().unwrap();
        assert_eq!(j.to_string(), TypeJudgment::to_string(&typecheck(doc.entry().unwrap(), &env.sig).unwrap()));
        assert_eq!(evaluate(doc.entry().unwrap(), &env.sig, &env.exact).unwrap().shape(), (6, 4));
    }

    #[test]
    fn name_of_identity_is_eta() {
        let a = TermDocument::parse("(term (name (id Q)))").unwrap();
        let b = TermDocument::parse("(term (eta Q))").unwrap();
        let env = a.setting().unwrap();
        let ea = evaluate(a.entry().unwrap(), &env.sig, &env.exact).unwrap();
        assert_eq!(ea, evaluate(b.entry().unwrap(), &env.sig, &env.exact).unwrap());
    }

    #[test]
    fn declaration_errors() {
        assert!(TermDocument::parse("(object I 1)").is_err());
        assert!(TermDocument::parse("(term tw)").is_err());
        assert!(TermDocument::parse("(morphism g Q Q ((1 2)) (rel ((1 2))))").is_err());
        assert!(TermDocument::parse("(term (id Q)) (term (id Q))").is_err());
        let dup = TermDocument::parse("(morphism H Q Q ((1 0) (0 1)))").unwrap();
        assert!(matches!(dup.setting(), Err(Error::Type(TypeError::Duplicate(_)))));
        let same = TermDocument::parse("(object Q 2)").unwrap();
        assert!(same.setting().is_ok());
        let bad_shape = TermDocument::parse("(morphism k Q Q ((1 0 0)))").unwrap();
        assert!(matches!(bad_shape.setting(), Err(Error::Matrix(_))));
        assert!(TermDocument::parse("").unwrap().entry().is_err());
    }
}
