//! Exact arithmetic in the field Q(i, sqrt 2).
//!
//! An element is `a + b*r2 + c*i + d*i*r2` with `a, b, c, d` arbitrary
//! precision rationals. Internally the element is split into a real part
//! `a + b*r2` and an imaginary part `c + d*r2`, both in Q(sqrt 2).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ScalarError;

/// Element of Q(i, sqrt 2).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QiSqrt2 {
    a: BigRational,
    b: BigRational,
    c: BigRational,
    d: BigRational,
}

/// `x + y*sqrt 2` helpers on pairs of rationals.
fn rmul(x: (&BigRational, &BigRational), y: (&BigRational, &BigRational)) -> (BigRational, BigRational) {
    let two = BigRational::from_integer(BigInt::from(2));
    (x.0 * y.0 + two * x.1 * y.1, x.0 * y.1 + x.1 * y.0)
}

/// Sign of `a + b*sqrt 2` under the embedding with the positive root.
pub(crate) fn real_sign(a: &BigRational, b: &BigRational) -> Ordering {
    let sa = a.cmp(&BigRational::zero());
    let sb = b.cmp(&BigRational::zero());
    match (sa, sb) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (x, y) if x == y => x,
        _ => {
            // opposite signs: compare a^2 against 2 b^2
            let two = BigRational::from_integer(BigInt::from(2));
            let lhs = a * a;
            let rhs = two * b * b;
            match lhs.cmp(&rhs) {
                Ordering::Greater => sa,
                Ordering::Less => sb,
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

impl QiSqrt2 {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        Self { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        let r = |x: i64| BigRational::from_integer(BigInt::from(x));
        Self::new(r(a), r(b), r(c), r(d))
    }

    /// `p/q` as a rational element.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(p), BigInt::from(q)),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        )
    }

    pub fn integer(n: i64) -> Self {
        Self::from_ints(n, 0, 0, 0)
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 0, 1, 0)
    }

    pub fn sqrt2() -> Self {
        Self::from_ints(0, 1, 0, 0)
    }

    /// `sqrt 2 / 2`, the scalar with `2 s^2 = 1`.
    pub fn half_sqrt2() -> Self {
        Self::new(
            BigRational::zero(),
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::zero(),
            BigRational::zero(),
        )
    }

    pub fn components(&self) -> [&BigRational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.is_real() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a.clone(), self.b.clone(), -&self.c, -&self.d)
    }

    /// Sign of the real part under the standard embedding into the reals.
    pub fn real_part_sign(&self) -> Ordering {
        real_sign(&self.a, &self.b)
    }

    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::NotInvertible(self.to_string()));
        }
        // 1/z = conj(z) / (x^2 + y^2) where z = x + i y
        let (xx0, xx1) = rmul((&self.a, &self.b), (&self.a, &self.b));
        let (yy0, yy1) = rmul((&self.c, &self.d), (&self.c, &self.d));
        let p = xx0 + yy0;
        let q = xx1 + yy1;
        // 1/(p + q r2) = (p - q r2) / (p^2 - 2 q^2)
        let two = BigRational::from_integer(BigInt::from(2));
        let norm = &p * &p - two * &q * &q;
        if norm.is_zero() {
            return Err(ScalarError::NotInvertible(self.to_string()));
        }
        let inv = (&p / &norm, -&q / &norm);
        let (re0, re1) = rmul((&inv.0, &inv.1), (&self.a, &self.b));
        let negc = -&self.c;
        let negd = -&self.d;
        let (im0, im1) = rmul((&inv.0, &inv.1), (&negc, &negd));
        Ok(Self::new(re0, re1, im0, im1))
    }

    /// Approximate complex value `(re, im)`.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        let f = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
        let r2 = std::f64::consts::SQRT_2;
        (f(&self.a) + f(&self.b) * r2, f(&self.c) + f(&self.d) * r2)
    }

    /// Components as `p/q` strings (integers print without a denominator).
    pub fn to_component_strings(&self) -> [String; 4] {
        [self.a.to_string(), self.b.to_string(), self.c.to_string(), self.d.to_string()]
    }

    pub fn from_component_strs(parts: &[&str]) -> Result<Self, ScalarError> {
        if parts.len() != 4 {
            return Err(ScalarError::Literal(format!("expected 4 components, found {}", parts.len())));
        }
        let mut out = Vec::with_capacity(4);
        for p in parts {
            out.push(parse_rational(p.trim())?);
        }
        let d = out.pop().unwrap();
        let c = out.pop().unwrap();
        let b = out.pop().unwrap();
        let a = out.pop().unwrap();
        Ok(Self::new(a, b, c, d))
    }
}

fn parse_rational(text: &str) -> Result<BigRational, ScalarError> {
    let bad = || ScalarError::Literal(format!("bad rational `{text}`"));
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    if num.is_empty() || den.is_empty() {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ScalarError::Literal(format!("zero denominator in `{text}`")));
    }
    let r = BigRational::new(num, den);
    Ok(if neg { -r } else { r })
}

impl Add for &QiSqrt2 {
    type Output = QiSqrt2;
    fn add(self, rhs: &QiSqrt2) -> QiSqrt2 {
        QiSqrt2::new(&self.a + &rhs.a, &self.b + &rhs.b, &self.c + &rhs.c, &self.d + &rhs.d)
    }
}

impl Sub for &QiSqrt2 {
    type Output = QiSqrt2;
    fn sub(self, rhs: &QiSqrt2) -> QiSqrt2 {
        QiSqrt2::new(&self.a - &rhs.a, &self.b - &rhs.b, &self.c - &rhs.c, &self.d - &rhs.d)
    }
}

impl Mul for &QiSqrt2 {
    type Output = QiSqrt2;
    fn mul(self, rhs: &QiSqrt2) -> QiSqrt2 {
        if self.is_zero() || rhs.is_zero() {
            return QiSqrt2::zero();
        }
        let x = (&self.a, &self.b);
        let y = (&self.c, &self.d);
        let u = (&rhs.a, &rhs.b);
        let v = (&rhs.c, &rhs.d);
        let xu = rmul(x, u);
        let yv = rmul(y, v);
        let xv = rmul(x, v);
        let yu = rmul(y, u);
        QiSqrt2::new(xu.0 - yv.0, xu.1 - yv.1, xv.0 + yu.0, xv.1 + yu.1)
    }
}

impl Neg for &QiSqrt2 {
    type Output = QiSqrt2;
    fn neg(self) -> QiSqrt2 {
        QiSqrt2::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QiSqrt2 {
            type Output = QiSqrt2;
            fn $m(self, rhs: QiSqrt2) -> QiSqrt2 {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QiSqrt2 {
    type Output = QiSqrt2;
    fn neg(self) -> QiSqrt2 {
        -&self
    }
}

impl fmt::Display for QiSqrt2 {
    /// Canonical text form: `a + b*r2 + c*i + d*i*r2`, zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = ["", "r2", "i", "i*r2"];
        let mut terms: Vec<(bool, String)> = Vec::new();
        for (q, label) in self.components().into_iter().zip(labels) {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let mag = q.abs();
            let body = if label.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                label.to_string()
            } else {
                format!("{mag}*{label}")
            };
            terms.push((neg, body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (neg, body)) in terms.iter().enumerate() {
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// Parser for the literal grammar
/// `expr := [+|-] term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
/// `factor := p[/q] | r2 | i`.
struct LiteralParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> LiteralParser<'a> {
    fn skip_ws(&mut self) {
        while let Some(ch) = self.src[self.pos..].chars().next() {
            if ch.is_whitespace() {
                self.pos += ch.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Literal(format!("{msg} at offset {} in `{}`", self.pos, self.src))
    }

    fn factor(&mut self) -> Result<QiSqrt2, ScalarError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        if let Some(tail) = rest.strip_prefix("r2") {
            let _ = tail;
            self.pos += 2;
            return Ok(QiSqrt2::sqrt2());
        }
        if rest.starts_with('i') {
            self.pos += 1;
            return Ok(QiSqrt2::i());
        }
        let len = rest
            .char_indices()
            .find(|(_, ch)| !(ch.is_ascii_digit() || *ch == '/'))
            .map(|(k, _)| k)
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err("expected number, `r2` or `i`"));
        }
        let q = parse_rational(&rest[..len])?;
        self.pos += len;
        Ok(QiSqrt2::new(q, BigRational::zero(), BigRational::zero(), BigRational::zero()))
    }

    fn term(&mut self) -> Result<QiSqrt2, ScalarError> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let next = self.factor()?;
            acc = &acc * &next;
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<QiSqrt2, ScalarError> {
        let mut neg = false;
        match self.peek() {
            Some('-') => {
                neg = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            None => return Err(self.err("empty literal")),
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if neg { -first } else { first };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                None => return Ok(acc),
                Some(_) => return Err(self.err("unexpected character")),
            }
        }
    }
}

impl FromStr for QiSqrt2 {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LiteralParser { src: s, pos: 0 }.expr()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QiSqrt2 {
        s.parse().unwrap()
    }

    #[test]
    fn half_sqrt2_squared_is_half() {
        let s = QiSqrt2::half_sqrt2();
        assert_eq!(&s * &s, QiSqrt2::ratio(1, 2));
        assert_eq!(q("1/2*r2"), s);
    }

    #[test]
    fn gaussian_product() {
        assert_eq!(q("1 + i") * q("1 - i"), QiSqrt2::integer(2));
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(QiSqrt2::i().conj(), q("-i"));
        assert_eq!(QiSqrt2::half_sqrt2().conj(), QiSqrt2::half_sqrt2());
        assert_eq!(q("1 + i*r2").conj(), q("1 - i*r2"));
    }

    #[test]
    fn inverses() {
        assert_eq!(QiSqrt2::integer(2).inverse().unwrap(), QiSqrt2::ratio(1, 2));
        assert_eq!(QiSqrt2::sqrt2().inverse().unwrap(), QiSqrt2::half_sqrt2());
        assert!(QiSqrt2::zero().inverse().is_err());
        let z = q("3/7 - 2*r2 + 5*i + 1/3*i*r2");
        assert_eq!(&z * &z.inverse().unwrap(), QiSqrt2::one());
    }

    #[test]
    fn text_form_is_canonical() {
        assert_eq!(q("1/2*r2").to_string(), "1/2*r2");
        assert_eq!(q("1 - i").to_string(), "1 - i");
        assert_eq!(q("-i*r2 + 2").to_string(), "2 - i*r2");
        assert_eq!(QiSqrt2::zero().to_string(), "0");
        assert_eq!(q("2/4").to_string(), "1/2");
        assert_eq!(q("-3/2*i").to_string(), "-3/2*i");
    }

    #[test]
    fn malformed_literals() {
        for bad in ["", "1 +", "x", "1/0", "2*", "r3"] {
            assert!(bad.parse::<QiSqrt2>().is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn sign_of_real_part() {
        assert_eq!(q("1 - r2").real_part_sign(), Ordering::Less);
        assert_eq!(q("3/2 - r2").real_part_sign(), Ordering::Greater);
        assert_eq!(q("-7/5 + r2").real_part_sign(), Ordering::Greater);
        assert_eq!(QiSqrt2::zero().real_part_sign(), Ordering::Equal);
    }
}
