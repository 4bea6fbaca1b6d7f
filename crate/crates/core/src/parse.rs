//! Parser for bundle and form expressions.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := int | 'U' int | 'H' | 'h' | 'Sym3(' factor ')'
//!         | '<' int (',' int)* '>' | '(' expr ')'
//! ```
//!
//! An expression mentioning U, H or Sym3 is a virtual bundle; anything else is
//! a Grothendieck–Witt element, where `h` is the hyperbolic form. In a bundle,
//! `<a,b>*X` is `<a>*X + <b>*X`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::bundles::VirtualBundle;
use crate::error::{Error, Result};
use crate::gw::{Backend, GWElement};

#[derive(Clone, Debug, PartialEq)]
enum Node {
    Int(BigInt),
    U(usize),
    H,
    Hyperbolic,
    Sym3(Box<Node>, usize),
    Angle(Vec<BigInt>),
    Sum(Vec<(bool, Node)>),
    Product(Vec<Node>),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn syntax(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(self.syntax(format!("expected `{c}`, found `{d}`"))),
            None => Err(self.syntax(format!("expected `{c}`, found end of input"))),
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        let len = self.src[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        self.pos += len;
        (len > 0).then(|| &self.src[start..start + len])
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let neg = self.src[self.pos..].starts_with('-');
        if neg {
            self.pos += 1;
            self.skip_ws();
        }
        let d = self
            .digits()
            .ok_or_else(|| self.syntax("expected an integer"))?;
        let n: BigInt = d.parse().expect("ASCII digits");
        Ok(if neg { -n } else { n })
    }

    fn expr(&mut self) -> Result<Node> {
        let mut terms = Vec::new();
        let mut neg = false;
        if self.peek() == Some('-') {
            self.pos += 1;
            neg = true;
        }
        loop {
            terms.push((neg, self.term()?));
            match self.peek() {
                Some('+') => neg = false,
                Some('-') => neg = true,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(Node::Sum(terms))
    }

    fn term(&mut self) -> Result<Node> {
        let mut factors = vec![self.factor()?];
        while self.peek() == Some('*') {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok(Node::Product(factors))
    }

    fn factor(&mut self) -> Result<Node> {
        let start = match self.peek() {
            None => return Err(self.syntax("expected a factor, found end of input")),
            Some(_) => self.pos,
        };
        let rest = &self.src[start..];
        if rest.starts_with("Sym3") {
            self.pos += 4;
            self.expect('(')?;
            let inner = self.factor()?;
            self.expect(')')?;
            return Ok(Node::Sym3(Box::new(inner), start));
        }
        let c = rest.chars().next().expect("peeked");
        match c {
            '0'..='9' => Ok(Node::Int(self.int()?)),
            'U' => {
                self.pos += 1;
                let d = self
                    .digits()
                    .ok_or_else(|| self.syntax("expected an index after `U`"))?;
                match d.parse::<usize>() {
                    Ok(i) if i >= 1 => Ok(Node::U(i)),
                    _ => Err(Error::Syntax {
                        offset: start + 1,
                        message: format!("bad factor index {d}"),
                    }),
                }
            }
            'H' => {
                self.pos += 1;
                Ok(Node::H)
            }
            'h' => {
                self.pos += 1;
                Ok(Node::Hyperbolic)
            }
            '<' => {
                self.pos += 1;
                let mut units = vec![self.int()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    units.push(self.int()?);
                }
                self.expect('>')?;
                Ok(Node::Angle(units))
            }
            '(' => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => {
                let symbol: String = rest.chars().take_while(|c| c.is_alphanumeric()).collect();
                let symbol = if symbol.is_empty() {
                    c.to_string()
                } else {
                    symbol
                };
                Err(Error::UnknownSymbol {
                    offset: start,
                    symbol,
                })
            }
        }
    }
}

fn parse_node(text: &str) -> Result<Node> {
    let mut p = Parser { src: text, pos: 0 };
    let node = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(p.syntax(format!("unexpected `{c}`")));
    }
    Ok(node)
}

fn is_bundle(node: &Node) -> bool {
    match node {
        Node::U(_) | Node::H | Node::Sym3(..) => true,
        Node::Sum(ts) => ts.iter().any(|(_, n)| is_bundle(n)),
        Node::Product(fs) => fs.iter().any(is_bundle),
        _ => false,
    }
}

fn bundle(node: &Node) -> Result<VirtualBundle> {
    Ok(match node {
        Node::Int(n) => VirtualBundle::one().scale(n),
        Node::U(i) => VirtualBundle::taut(*i)?,
        Node::H => VirtualBundle::hyperbolic(),
        Node::Hyperbolic => {
            return Err(Error::UnknownSymbol {
                offset: 0,
                symbol: "h (the hyperbolic form; the bundle is H)".into(),
            })
        }
        Node::Sym3(inner, offset) => match inner.as_ref() {
            Node::U(i) => VirtualBundle::sym3(*i)?,
            Node::Product(fs) if fs.len() == 1 => {
                bundle(&Node::Sym3(Box::new(fs[0].clone()), *offset))?
            }
            _ => {
                return Err(Error::Syntax {
                    offset: *offset,
                    message: "Sym3 takes a single factor U<i>".into(),
                })
            }
        },
        Node::Angle(units) => {
            let mut acc = VirtualBundle::zero();
            for a in units {
                acc = acc.add(&VirtualBundle::one().twist(a)?);
            }
            acc
        }
        Node::Sum(ts) => {
            let mut acc = VirtualBundle::zero();
            for (neg, t) in ts {
                let b = bundle(t)?;
                acc = if *neg { acc.sub(&b) } else { acc.add(&b) };
            }
            acc
        }
        Node::Product(fs) => {
            let mut acc = VirtualBundle::one();
            for f in fs {
                acc = acc.tensor(&bundle(f)?);
            }
            acc
        }
    })
}

fn form(node: &Node, backend: Backend) -> Result<GWElement> {
    Ok(match node {
        Node::Int(n) => GWElement::from_int(backend, n.clone()),
        Node::Hyperbolic => GWElement::hyperbolic(backend, BigInt::one()),
        Node::Angle(units) => {
            let units: Vec<BigRational> = units
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect();
            GWElement::from_diagonal(backend, &units)?
        }
        Node::Sum(ts) => {
            let mut acc = GWElement::zero(backend);
            for (neg, t) in ts {
                let x = form(t, backend)?;
                acc = if *neg {
                    acc.checked_sub(&x)?
                } else {
                    acc.checked_add(&x)?
                };
            }
            acc
        }
        Node::Product(fs) => {
            let mut acc = GWElement::one(backend);
            for f in fs {
                acc = acc.checked_mul(&form(f, backend)?)?;
            }
            acc
        }
        Node::U(_) | Node::H | Node::Sym3(..) => {
            unreachable!("bundle expressions are routed elsewhere")
        }
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Parsed {
    Bundle(VirtualBundle),
    Form(GWElement),
}

/// Parses either kind, deciding by whether bundle symbols occur.
pub fn parse_expression(text: &str, backend: Backend) -> Result<Parsed> {
    let node = parse_node(text)?;
    if is_bundle(&node) {
        Ok(Parsed::Bundle(bundle(&node)?))
    } else {
        Ok(Parsed::Form(form(&node, backend)?))
    }
}

pub fn parse_bundle(text: &str) -> Result<VirtualBundle> {
    bundle(&parse_node(text)?)
}

pub fn parse_form(text: &str, backend: Backend) -> Result<GWElement> {
    let node = parse_node(text)?;
    if is_bundle(&node) {
        return Err(Error::UnknownSymbol {
            offset: 0,
            symbol: format!("bundle symbol in form `{text}`"),
        });
    }
    form(&node, backend)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::tensor_expand;
    use crate::gw::gw_equal;

    #[test]
    fn four_monomials() {
        let v = parse_bundle("(U1-H)*(U2-H)*U3").unwrap();
        assert_eq!(v.terms().count(), 4);
        let h = VirtualBundle::hyperbolic();
        let u = |i| VirtualBundle::taut(i).unwrap();
        let expect = tensor_expand(&[u(1).sub(&h), u(2).sub(&h), u(3)]);
        assert_eq!(v, expect);
        assert_eq!(parse_bundle(&v.to_string()).unwrap(), v);
    }

    #[test]
    fn forms() {
        let b = Backend::Q;
        let h = parse_form("<1,-1>", b).unwrap();
        assert!(gw_equal(&h, &GWElement::hyperbolic(b, 1)).unwrap());
        assert!(gw_equal(&parse_form("h", b).unwrap(), &h).unwrap());
        let p = parse_form("24*<-1> + 168*h", b).unwrap();
        assert_eq!(p.rank(), BigInt::from(360));
        assert_eq!(parse_form(&p.to_string(), b).unwrap(), p);
        assert!(gw_equal(
            &parse_form("-3 + <3>", b).unwrap(),
            &parse_form("<3> - 3", b).unwrap()
        )
        .unwrap());
        assert!(matches!(
            parse_expression(" 2 * < 5 > ", b).unwrap(),
            Parsed::Form(_)
        ));
    }

    #[test]
    fn twisted_bundles() {
        let v = parse_bundle("<2,3>*U1").unwrap();
        let u = VirtualBundle::taut(1).unwrap();
        assert_eq!(
            v,
            u.twist(&BigInt::from(2))
                .unwrap()
                .add(&u.twist(&BigInt::from(3)).unwrap())
        );
        assert_eq!(parse_bundle(&v.to_string()).unwrap(), v);
        let s = parse_bundle("2*Sym3(U1) - <-1>").unwrap();
        assert_eq!(parse_bundle(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn errors_carry_offsets() {
        assert!(matches!(
            parse_bundle("U1*"),
            Err(Error::Syntax { offset: 3, .. })
        ));
        assert!(matches!(
            parse_bundle("U1 + V2"),
            Err(Error::UnknownSymbol { offset: 5, .. })
        ));
        assert!(matches!(
            parse_bundle("(U1"),
            Err(Error::Syntax { offset: 3, .. })
        ));
        assert!(matches!(
            parse_bundle("U0"),
            Err(Error::Syntax { offset: 1, .. })
        ));
        assert!(matches!(
            parse_bundle("U1 U2"),
            Err(Error::Syntax { offset: 3, .. })
        ));
        assert!(parse_form("<0>", Backend::Q).is_err());
        assert!(matches!(
            parse_bundle("Sym3(H)"),
            Err(Error::Syntax { offset: 0, .. })
        ));
    }
}
