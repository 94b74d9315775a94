//! Recursive-descent parser for the line-oriented TBox syntax:
//!
//! ```text
//! tbox     := header axiom+ ;
//! header   := "domain" ("rcc8" | "cyct") "." ;
//! axiom    := DEFNAME ":=" concept "." ;
//! concept  := conj ("or" conj)* ;
//! conj     := unit ("and" unit)* ;
//! unit     := "top" | "bottom" | PRIMNAME | "not" PRIMNAME
//!           | "some" "(" FEAT ("," FEAT)+ ")" "." pred
//!           | "exists" role "." DEFNAME
//!           | "(" concept ")" ;
//! role     := "<" ival "," ival "," ival "," ival ">" | ALLEN ;
//! ival     := ("["|"(") bound "," bound (")"|"]") | "{0}" ;
//! pred     := ATOM | "{" ATOM ("," ATOM)* "}" ;
//! ```
//!
//! `#` starts a comment running to the end of the line.

use std::collections::HashSet;

use crate::allen::{translate_atom, AllenAtom, EndpointRole};
use crate::bounds::{parse_ext_rational, Bound, ConvexSet, ExtRational};
use crate::domain::{AtomSet, ConcreteDomain};
use crate::error::SyntaxError;

use super::{Axiom, Concept, TBox};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    /// A rational literal or `+inf` / `-inf`.
    Number(ExtRational),
    Define,
    Dot,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Lt,
    Gt,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(n) => format!("`{n}`"),
            Tok::Define => "`:=`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Gt => "`>`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let bump = |i: &mut usize, col: &mut usize, k: usize| {
        *i += k;
        *col += k;
    };
    while i < chars.len() {
        let c = chars[i];
        let (l, cl) = (line, col);
        let push = |out: &mut Vec<Spanned>, tok: Tok| {
            out.push(Spanned {
                tok,
                line: l,
                column: cl,
            })
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => bump(&mut i, &mut col, 1),
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            ':' if chars.get(i + 1) == Some(&'=') => {
                push(&mut out, Tok::Define);
                bump(&mut i, &mut col, 2);
            }
            '.' | ',' | '(' | ')' | '[' | ']' | '{' | '}' | '<' | '>' => {
                let tok = match c {
                    '.' => Tok::Dot,
                    ',' => Tok::Comma,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '<' => Tok::Lt,
                    _ => Tok::Gt,
                };
                push(&mut out, tok);
                bump(&mut i, &mut col, 1);
            }
            c if c.is_ascii_digit() || c == '+' || c == '-' => {
                let start = i;
                let mut j = i + 1;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '/') {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                let value = parse_ext_rational(&word).ok_or_else(|| {
                    SyntaxError::new(l, cl, format!("malformed number `{word}`"))
                })?;
                push(&mut out, Tok::Number(value));
                bump(&mut i, &mut col, j - start);
            }
            c if c.is_alphabetic() => {
                let start = i;
                let mut j = i + 1;
                while j < chars.len() {
                    let d = chars[j];
                    let hyphen_word = d == '-' && chars.get(j + 1).is_some_and(|n| n.is_alphabetic());
                    if d.is_alphanumeric() || d == '_' || hyphen_word {
                        j += 1;
                    } else {
                        break;
                    }
                }
                let word: String = chars[start..j].iter().collect();
                push(&mut out, Tok::Ident(word));
                bump(&mut i, &mut col, j - start);
            }
            other => {
                return Err(SyntaxError::new(l, cl, format!("unexpected character `{other}`")));
            }
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

const KEYWORDS: &[&str] = &["domain", "top", "bottom", "not", "some", "exists", "and", "or"];

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    domain: ConcreteDomain,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let idx = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[idx].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.column)
    }

    fn error(&self, message: impl Into<String>) -> SyntaxError {
        let (l, c) = self.here();
        SyntaxError::new(l, c, message)
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), SyntaxError> {
        if *self.peek() == want {
            self.next();
            Ok(())
        } else {
            Err(self.error(format!(
                "expected {}, found {}",
                want.describe(),
                self.peek().describe()
            )))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn ident(&mut self, what: &str) -> Result<String, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            other => Err(self.error(format!("expected {what}, found {}", other.describe()))),
        }
    }

    fn def_name(&mut self) -> Result<String, SyntaxError> {
        let at = self.here();
        let name = self.ident("a defined concept name")?;
        if !name.starts_with(|c: char| c.is_uppercase()) {
            return Err(SyntaxError::new(
                at.0,
                at.1,
                format!("defined concept names start with an uppercase letter: `{name}`"),
            ));
        }
        Ok(name)
    }

    fn axiom(&mut self) -> Result<Axiom, SyntaxError> {
        let lhs = self.def_name()?;
        self.expect(Tok::Define)?;
        let rhs = self.concept()?;
        self.expect(Tok::Dot)?;
        Ok(Axiom { lhs, rhs })
    }

    fn concept(&mut self) -> Result<Concept, SyntaxError> {
        let mut parts = vec![self.conj()?];
        while self.is_keyword("or") {
            self.next();
            parts.push(self.conj()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Concept::Or(parts)
        })
    }

    fn conj(&mut self) -> Result<Concept, SyntaxError> {
        let mut parts = vec![self.unit()?];
        while self.is_keyword("and") {
            self.next();
            parts.push(self.unit()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Concept::And(parts)
        })
    }

    fn unit(&mut self) -> Result<Concept, SyntaxError> {
        let at = self.here();
        match self.peek().clone() {
            Tok::LParen => {
                self.next();
                let c = self.concept()?;
                self.expect(Tok::RParen)?;
                Ok(c)
            }
            Tok::Ident(word) => match word.as_str() {
                "top" => {
                    self.next();
                    Ok(Concept::Top)
                }
                "bottom" => {
                    self.next();
                    Ok(Concept::Bottom)
                }
                "not" => {
                    self.next();
                    Ok(Concept::NegPrimitive(self.prim_name()?))
                }
                "some" => {
                    self.next();
                    self.predicate_concept(at)
                }
                "exists" => {
                    self.next();
                    let role = self.role()?;
                    self.expect(Tok::Dot)?;
                    let target = self.def_name()?;
                    Ok(Concept::Exists { role, target })
                }
                _ => Ok(Concept::Primitive(self.prim_name()?)),
            },
            other => Err(self.error(format!("expected a concept, found {}", other.describe()))),
        }
    }

    fn prim_name(&mut self) -> Result<String, SyntaxError> {
        let at = self.here();
        let name = self.ident("a primitive concept name")?;
        if KEYWORDS.contains(&name.as_str()) {
            return Err(SyntaxError::new(at.0, at.1, format!("unexpected keyword `{name}`")));
        }
        if !name.starts_with(|c: char| c.is_lowercase()) {
            return Err(SyntaxError::new(
                at.0,
                at.1,
                format!("primitive concept names start with a lowercase letter: `{name}`"),
            ));
        }
        Ok(name)
    }

    fn predicate_concept(&mut self, at: (usize, usize)) -> Result<Concept, SyntaxError> {
        self.expect(Tok::LParen)?;
        let mut features = Vec::new();
        loop {
            let fat = self.here();
            let g = self.ident("a concrete feature")?;
            if !g.starts_with('g') {
                return Err(SyntaxError::new(
                    fat.0,
                    fat.1,
                    format!("concrete feature names start with `g`: `{g}`"),
                ));
            }
            features.push(g);
            if *self.peek() == Tok::Comma {
                self.next();
            } else {
                break;
            }
        }
        self.expect(Tok::RParen)?;
        if features.len() != self.domain.arity() {
            return Err(SyntaxError::new(
                at.0,
                at.1,
                format!(
                    "arity mismatch: domain {} takes {} features, found {}",
                    self.domain,
                    self.domain.arity(),
                    features.len()
                ),
            ));
        }
        self.expect(Tok::Dot)?;
        let predicate = self.predicate()?;
        Ok(Concept::Predicate {
            features,
            predicate,
        })
    }

    fn atom(&mut self) -> Result<AtomSet, SyntaxError> {
        let at = self.here();
        let name = self.ident("a predicate atom")?;
        self.domain
            .atom_index(&name)
            .map(AtomSet::singleton)
            .map_err(|e| SyntaxError::new(at.0, at.1, e.to_string()))
    }

    fn predicate(&mut self) -> Result<AtomSet, SyntaxError> {
        if *self.peek() != Tok::LBrace {
            return self.atom();
        }
        self.next();
        let mut set = self.atom()?;
        while *self.peek() == Tok::Comma {
            self.next();
            set = set.union(self.atom()?);
        }
        self.expect(Tok::RBrace)?;
        Ok(set)
    }

    fn role(&mut self) -> Result<EndpointRole, SyntaxError> {
        let tuple_follows = *self.peek() == Tok::Lt
            && matches!(self.peek_at(1), Tok::LBracket | Tok::LParen | Tok::LBrace);
        if tuple_follows {
            self.next();
            let rbb = self.ival()?;
            self.expect(Tok::Comma)?;
            let rbe = self.ival()?;
            self.expect(Tok::Comma)?;
            let reb = self.ival()?;
            self.expect(Tok::Comma)?;
            let ree = self.ival()?;
            self.expect(Tok::Gt)?;
            return Ok(EndpointRole::new(rbb, rbe, reb, ree));
        }
        let at = self.here();
        let name = match self.next() {
            Tok::Lt => "<".to_string(),
            Tok::Gt => ">".to_string(),
            Tok::Ident(s) => s,
            other => {
                return Err(SyntaxError::new(
                    at.0,
                    at.1,
                    format!("expected a role, found {}", other.describe()),
                ))
            }
        };
        name.parse::<AllenAtom>()
            .map(translate_atom)
            .map_err(|e| SyntaxError::new(at.0, at.1, e))
    }

    fn ival(&mut self) -> Result<ConvexSet, SyntaxError> {
        let lo_strict = match self.peek().clone() {
            Tok::LBracket => false,
            Tok::LParen => true,
            Tok::LBrace => {
                self.next();
                let at = self.here();
                match self.next() {
                    Tok::Number(v) if v == ExtRational::zero() => {}
                    _ => return Err(SyntaxError::new(at.0, at.1, "only `{0}` is accepted as a point set")),
                }
                self.expect(Tok::RBrace)?;
                return Ok(ConvexSet::zero());
            }
            other => {
                return Err(self.error(format!(
                    "expected `[` or `(`, found {}",
                    other.describe()
                )));
            }
        };
        self.next();
        let lo = self.bound()?;
        self.expect(Tok::Comma)?;
        let hi = self.bound()?;
        let hi_strict = match self.peek().clone() {
            Tok::RBracket => false,
            Tok::RParen => true,
            other => {
                return Err(self.error(format!(
                    "expected `]` or `)`, found {}",
                    other.describe()
                )));
            }
        };
        self.next();
        Ok(ConvexSet::new(
            Bound::new(lo, lo_strict),
            Bound::new(hi, hi_strict),
        ))
    }

    fn bound(&mut self) -> Result<ExtRational, SyntaxError> {
        match self.peek().clone() {
            Tok::Number(v) => {
                self.next();
                Ok(v)
            }
            other => Err(self.error(format!("expected a bound, found {}", other.describe()))),
        }
    }
}

/// Parses TBox text. Besides syntax, rejects feature lists whose length does
/// not match the domain, unknown atom names, and repeated left-hand sides.
pub fn parse_tbox(text: &str) -> Result<TBox, SyntaxError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        domain: ConcreteDomain::Rcc8,
    };
    if !p.is_keyword("domain") {
        return Err(p.error("expected header `domain rcc8.` or `domain cyct.`"));
    }
    p.next();
    let at = p.here();
    let name = p.ident("a domain name")?;
    p.domain = ConcreteDomain::lookup(&name).map_err(|e| SyntaxError::new(at.0, at.1, e.to_string()))?;
    p.expect(Tok::Dot)?;

    let mut tbox = TBox::new(p.domain);
    let mut seen = HashSet::new();
    loop {
        if *p.peek() == Tok::Eof {
            break;
        }
        let at = p.here();
        let axiom = p.axiom()?;
        if !seen.insert(axiom.lhs.clone()) {
            return Err(SyntaxError::new(
                at.0,
                at.1,
                format!("duplicate definition {}", axiom.lhs),
            ));
        }
        tbox.axioms.push(axiom);
    }
    if tbox.axioms.is_empty() {
        return Err(p.error("a TBox needs at least one axiom"));
    }
    Ok(tbox)
}
