//! Recursive-descent parser for universal sentences.
//!
//! ```text
//! sentence := "forall" IDENT+ "." formula
//! formula  := implies
//! implies  := or ("->" implies)?
//! or       := and ("|" and)*
//! and      := unary ("&" unary)*
//! unary    := "~" unary | atom | "(" formula ")"
//! atom     := term ("<=" | "=" | "C") term
//! term     := factor ("+" factor)*
//! factor   := IDENT | "0" | "(" term ")"
//! ```
//!
//! A `(` opening a unary may start either a parenthesized term or a
//! parenthesized formula; the parser tries the atom reading first and
//! backtracks. Errors report the furthest position reached together with
//! every token that would have been accepted there.

use std::collections::BTreeSet;
use std::fmt;

use super::ast::{Formula, Relation, Sentence, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub found: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: ", self.position)?;
        match self.expected.as_slice() {
            [] => {}
            [one] => write!(f, "expected {one}, ")?,
            many => write!(f, "expected one of {}, ", many.join(", "))?,
        }
        write!(f, "found {}", self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Forall,
    Ident(String),
    Zero,
    Dot,
    LParen,
    RParen,
    Plus,
    Leq,
    Eq,
    Contact,
    Not,
    And,
    Or,
    Arrow,
    End,
}

impl Tok {
    fn label(&self) -> &'static str {
        match self {
            Tok::Forall => "\"forall\"",
            Tok::Ident(_) => "identifier",
            Tok::Zero => "\"0\"",
            Tok::Dot => "\".\"",
            Tok::LParen => "\"(\"",
            Tok::RParen => "\")\"",
            Tok::Plus => "\"+\"",
            Tok::Leq => "\"<=\"",
            Tok::Eq => "\"=\"",
            Tok::Contact => "\"C\"",
            Tok::Not => "\"~\"",
            Tok::And => "\"&\"",
            Tok::Or => "\"|\"",
            Tok::Arrow => "\"->\"",
            Tok::End => "end of input",
        }
    }

    fn found(&self) -> String {
        match self {
            Tok::Ident(name) => format!("identifier \"{name}\""),
            other => other.label().to_string(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let two = bytes.get(i..i + 2);
        let tok = if two == Some(b"<=") {
            i += 2;
            Tok::Leq
        } else if two == Some(b"->") {
            i += 2;
            Tok::Arrow
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            match &text[start..i] {
                "forall" => Tok::Forall,
                "C" => Tok::Contact,
                word => Tok::Ident(word.to_string()),
            }
        } else {
            i += 1;
            match c {
                b'0' if !bytes.get(i).is_some_and(u8::is_ascii_alphanumeric) => Tok::Zero,
                b'.' => Tok::Dot,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'+' => Tok::Plus,
                b'=' => Tok::Eq,
                b'~' => Tok::Not,
                b'&' => Tok::And,
                b'|' => Tok::Or,
                _ => {
                    let ch = text[start..].chars().next().unwrap_or('?');
                    return Err(ParseError {
                        position: start,
                        found: format!("character '{ch}'"),
                        expected: vec![],
                    });
                }
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

enum Fail {
    /// Recoverable mismatch; the details are in the furthest-failure record.
    Soft,
    Hard(ParseError),
}

type PResult<T> = Result<T, Fail>;

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: Vec<String>,
    furthest: usize,
    expected: BTreeSet<&'static str>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn note(&mut self, label: &'static str) {
        if self.pos > self.furthest {
            self.furthest = self.pos;
            self.expected.clear();
        }
        if self.pos == self.furthest {
            self.expected.insert(label);
        }
    }

    /// Consumes `tok` if it is next; otherwise records it as expected.
    fn eat(&mut self, tok: Tok) -> bool {
        if *self.peek() == tok {
            self.pos += 1;
            true
        } else {
            self.note(tok.label());
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(Fail::Soft)
        }
    }

    fn error(&self) -> ParseError {
        let (tok, position) = &self.toks[self.furthest];
        ParseError {
            position: *position,
            found: tok.found(),
            expected: self.expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn sentence(&mut self) -> PResult<Formula> {
        self.expect(Tok::Forall)?;
        loop {
            match self.peek().clone() {
                Tok::Ident(name) => {
                    if self.vars.contains(&name) {
                        return Err(Fail::Hard(ParseError {
                            position: self.toks[self.pos].1,
                            found: format!("repeated variable \"{name}\""),
                            expected: vec!["a fresh variable".to_string()],
                        }));
                    }
                    self.vars.push(name);
                    self.pos += 1;
                }
                _ => {
                    self.note(Tok::Ident(String::new()).label());
                    if self.vars.is_empty() {
                        return Err(Fail::Soft);
                    }
                    break;
                }
            }
        }
        self.expect(Tok::Dot)?;
        let f = self.implies()?;
        self.expect(Tok::End)?;
        Ok(f)
    }

    fn implies(&mut self) -> PResult<Formula> {
        let l = self.or()?;
        if self.eat(Tok::Arrow) {
            let r = self.implies()?;
            return Ok(Formula::Implies(Box::new(l), Box::new(r)));
        }
        Ok(l)
    }

    fn or(&mut self) -> PResult<Formula> {
        let mut l = self.and()?;
        while self.eat(Tok::Or) {
            let r = self.and()?;
            l = Formula::Or(Box::new(l), Box::new(r));
        }
        Ok(l)
    }

    fn and(&mut self) -> PResult<Formula> {
        let mut l = self.unary()?;
        while self.eat(Tok::And) {
            let r = self.unary()?;
            l = Formula::And(Box::new(l), Box::new(r));
        }
        Ok(l)
    }

    fn unary(&mut self) -> PResult<Formula> {
        if self.eat(Tok::Not) {
            return Ok(Formula::Not(Box::new(self.unary()?)));
        }
        if *self.peek() == Tok::LParen {
            let save = self.pos;
            match self.atom() {
                Ok(f) => return Ok(f),
                Err(Fail::Hard(e)) => return Err(Fail::Hard(e)),
                Err(Fail::Soft) => self.pos = save,
            }
            self.expect(Tok::LParen)?;
            let f = self.implies()?;
            self.expect(Tok::RParen)?;
            return Ok(f);
        }
        self.atom()
    }

    fn atom(&mut self) -> PResult<Formula> {
        let l = self.term()?;
        let rel = if self.eat(Tok::Leq) {
            Relation::Leq
        } else if self.eat(Tok::Eq) {
            Relation::Eq
        } else if self.eat(Tok::Contact) {
            Relation::Contact
        } else {
            return Err(Fail::Soft);
        };
        let r = self.term()?;
        Ok(Formula::Atom(rel, l, r))
    }

    fn term(&mut self) -> PResult<Term> {
        let mut l = self.factor()?;
        while self.eat(Tok::Plus) {
            let r = self.factor()?;
            l = Term::Join(Box::new(l), Box::new(r));
        }
        Ok(l)
    }

    fn factor(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let Some(i) = self.vars.iter().position(|v| *v == name) else {
                    return Err(Fail::Hard(ParseError {
                        position: self.toks[self.pos].1,
                        found: format!("unbound variable \"{name}\""),
                        expected: self.vars.clone(),
                    }));
                };
                self.pos += 1;
                Ok(Term::Var(i))
            }
            Tok::Zero => {
                self.pos += 1;
                Ok(Term::Zero)
            }
            Tok::LParen => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => {
                self.note(Tok::Ident(String::new()).label());
                self.note(Tok::Zero.label());
                self.note(Tok::LParen.label());
                Err(Fail::Soft)
            }
        }
    }
}

pub fn parse_sentence(text: &str) -> Result<Sentence, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        vars: Vec::new(),
        furthest: 0,
        expected: BTreeSet::new(),
    };
    match p.sentence() {
        Ok(matrix) => Ok(Sentence {
            variables: p.vars,
            matrix,
        }),
        Err(Fail::Hard(e)) => Err(e),
        Err(Fail::Soft) => Err(p.error()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(i: usize) -> Term {
        Term::Var(i)
    }

    fn join(l: Term, r: Term) -> Term {
        Term::Join(Box::new(l), Box::new(r))
    }

    fn atom(rel: Relation, l: Term, r: Term) -> Formula {
        Formula::Atom(rel, l, r)
    }

    #[test]
    fn additivity_sentence() {
        let s = parse_sentence("forall a b c. a C (b+c) -> (a C b | a C c)").unwrap();
        assert_eq!(s.variables, ["a", "b", "c"]);
        let expected = Formula::Implies(
            Box::new(atom(Relation::Contact, var(0), join(var(1), var(2)))),
            Box::new(Formula::Or(
                Box::new(atom(Relation::Contact, var(0), var(1))),
                Box::new(atom(Relation::Contact, var(0), var(2))),
            )),
        );
        assert_eq!(s.matrix, expected);
    }

    #[test]
    fn d1_sentence() {
        let s = parse_sentence(
            "forall a b c0 c1. (b <= a+c0 & b <= a+c1 & ~(c0 C c1)) -> b <= a",
        )
        .unwrap();
        let hyp = Formula::And(
            Box::new(Formula::And(
                Box::new(atom(Relation::Leq, var(1), join(var(0), var(2)))),
                Box::new(atom(Relation::Leq, var(1), join(var(0), var(3)))),
            )),
            Box::new(Formula::Not(Box::new(atom(Relation::Contact, var(2), var(3))))),
        );
        let expected = Formula::Implies(Box::new(hyp), Box::new(atom(Relation::Leq, var(1), var(0))));
        assert_eq!(s.matrix, expected);
    }

    #[test]
    fn dangling_plus_reports_end_of_input() {
        let text = "forall a. a +";
        let e = parse_sentence(text).unwrap_err();
        assert_eq!(e.position, text.len());
        assert_eq!(e.found, "end of input");
        assert_eq!(e.expected, ["\"(\"", "\"0\"", "identifier"]);
    }

    #[test]
    fn precedence_and_associativity() {
        let s = parse_sentence("forall a b. ~a <= b & a = b | a C b -> a <= b -> b <= a").unwrap();
        let Formula::Implies(l, r) = &s.matrix else {
            panic!("top level should be an implication")
        };
        assert!(matches!(**l, Formula::Or(..)));
        assert!(matches!(**r, Formula::Implies(..)));
        let s = parse_sentence("forall a b c. a + b + c = a").unwrap();
        let Formula::Atom(_, t, _) = &s.matrix else { panic!() };
        assert_eq!(*t, join(join(var(0), var(1)), var(2)));
    }

    #[test]
    fn parenthesized_terms_and_formulas() {
        assert!(parse_sentence("forall a b. (a + b) C a").is_ok());
        assert!(parse_sentence("forall a b. ((a C b))").is_ok());
        assert!(parse_sentence("forall a b. ((a) + (b)) <= 0").is_ok());
    }

    #[test]
    fn errors() {
        let e = parse_sentence("forall a. a C x").unwrap_err();
        assert_eq!(e.position, 14);
        assert!(e.found.contains("unbound"));
        let e = parse_sentence("forall a a. a C a").unwrap_err();
        assert_eq!(e.position, 9);
        let e = parse_sentence("forall C. a").unwrap_err();
        assert_eq!(e.position, 7);
        assert_eq!(e.expected, ["identifier"]);
        let e = parse_sentence("forall a. a ? a").unwrap_err();
        assert_eq!(e.position, 12);
        let e = parse_sentence("forall a. (a C a").unwrap_err();
        assert_eq!(e.position, 16);
        assert!(e.expected.contains(&"\")\"".to_string()));
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "forall a b c. a C (b+c) -> (a C b | a C c)",
            "forall a b c0 c1. (b <= a+c0 & b <= a+c1 & ~(c0 C c1)) -> b <= a",
            "forall a b c. a + (b + c) = (a + b) + c",
            "forall a. ~~(a <= 0) -> (a C a -> a = a)",
        ] {
            let s = parse_sentence(text).unwrap();
            assert_eq!(parse_sentence(&s.to_string()).unwrap(), s, "{s}");
        }
    }
}
