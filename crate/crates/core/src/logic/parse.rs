use super::{Formula, LogicError};
use crate::structure::Vocabulary;

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Word(&'a str),
}

fn tokenize(text: &str) -> Vec<(usize, Tok<'_>)> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => {
                out.push((i, Tok::Open));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::Close));
                i += 1;
            }
            c if c.is_ascii_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < bytes.len()
                    && !bytes[i].is_ascii_whitespace()
                    && bytes[i] != b'('
                    && bytes[i] != b')'
                {
                    i += 1;
                }
                out.push((start, Tok::Word(&text[start..i])));
            }
        }
    }
    out
}

struct Parser<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    at: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, pos: usize, message: impl Into<String>) -> Result<T, LogicError> {
        Err(LogicError::Syntax {
            pos,
            message: message.into(),
        })
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn next(&mut self) -> Result<(usize, Tok<'a>), LogicError> {
        match self.toks.get(self.at) {
            Some(t) => {
                self.at += 1;
                Ok(t.clone())
            }
            None => self.err(self.end, "unexpected end of input"),
        }
    }

    fn peek_close(&self) -> bool {
        matches!(self.toks.get(self.at), Some((_, Tok::Close)))
    }

    fn word(&mut self, what: &str) -> Result<&'a str, LogicError> {
        match self.next()? {
            (_, Tok::Word(w)) => Ok(w),
            (p, _) => self.err(p, format!("expected {what}")),
        }
    }

    fn var(&mut self) -> Result<String, LogicError> {
        let p = self.pos();
        let w = self.word("a variable")?;
        if !is_identifier(w) {
            return self.err(p, format!("`{w}` is not a valid variable name"));
        }
        Ok(w.to_string())
    }

    fn close(&mut self) -> Result<(), LogicError> {
        match self.next()? {
            (_, Tok::Close) => Ok(()),
            (p, _) => self.err(p, "expected `)`"),
        }
    }

    fn formula(&mut self) -> Result<Formula, LogicError> {
        match self.next()? {
            (_, Tok::Word("true")) => Ok(Formula::True),
            (_, Tok::Word("false")) => Ok(Formula::False),
            (p, Tok::Word(w)) => self.err(p, format!("unexpected `{w}`")),
            (p, Tok::Close) => self.err(p, "unexpected `)`"),
            (_, Tok::Open) => {
                let p = self.pos();
                let head = self.word("an operator")?;
                let f = match head {
                    "exists" | "forall" => {
                        let v = self.var()?;
                        let body = Box::new(self.formula()?);
                        if head == "exists" {
                            Formula::Exists(v, body)
                        } else {
                            Formula::Forall(v, body)
                        }
                    }
                    "and" | "or" => {
                        let mut parts = vec![self.formula()?];
                        while !self.peek_close() {
                            parts.push(self.formula()?);
                        }
                        if head == "and" {
                            Formula::And(parts)
                        } else {
                            Formula::Or(parts)
                        }
                    }
                    "not" => Formula::Not(Box::new(self.formula()?)),
                    "rel" => {
                        let np = self.pos();
                        let name = self.word("a relation name")?;
                        if !is_identifier(name) {
                            return self.err(np, format!("`{name}` is not a valid relation name"));
                        }
                        let mut vars = vec![self.var()?];
                        while !self.peek_close() {
                            vars.push(self.var()?);
                        }
                        Formula::Atom(name.to_string(), vars)
                    }
                    "=" => Formula::Equal(self.var()?, self.var()?),
                    "dist<=" => {
                        let rp = self.pos();
                        let r = self.word("a radius")?;
                        let r = match r.parse::<usize>() {
                            Ok(r) => r,
                            Err(_) => return self.err(rp, format!("`{r}` is not a nonnegative integer")),
                        };
                        Formula::DistLe(r, self.var()?, self.var()?)
                    }
                    other => return self.err(p, format!("unknown operator `{other}`")),
                };
                self.close()?;
                Ok(f)
            }
        }
    }
}

fn is_identifier(w: &str) -> bool {
    let mut chars = w.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '.')
}

/// Parses one formula in s-expression syntax.
pub fn parse(text: &str) -> Result<Formula, LogicError> {
    let mut p = Parser {
        toks: tokenize(text),
        at: 0,
        end: text.len(),
    };
    let f = p.formula()?;
    if p.at < p.toks.len() {
        return p.err(p.pos(), "trailing input after formula");
    }
    Ok(f)
}

/// Parses and checks every atom against `vocab`.
pub fn parse_with_vocab(text: &str, vocab: &Vocabulary) -> Result<Formula, LogicError> {
    let f = parse(text)?;
    check_vocab(&f, vocab)?;
    Ok(f)
}

pub(crate) fn check_vocab(f: &Formula, vocab: &Vocabulary) -> Result<(), LogicError> {
    for (name, used) in f.symbols() {
        match vocab.arity(&name) {
            None => return Err(LogicError::UnknownSymbol(name)),
            Some(a) if a != used => {
                return Err(LogicError::ArityMismatch {
                    symbol: name,
                    expected: a,
                    got: used,
                })
            }
            _ => {}
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple() {
        let f = parse("(exists x (rel E x y))").unwrap();
        assert_eq!(f, Formula::exists("x", Formula::edge("x", "y")));
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), ["y"]);
    }

    #[test]
    fn every_form_round_trips() {
        let text = "(forall x (or (not (= x y)) (and (dist<= 3 x y) true false (rel R x y z))))";
        let f = parse(text).unwrap();
        assert_eq!(f.to_string(), text);
        assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn whitespace_is_flexible() {
        let f = parse("  ( and\n(rel P x)\t(rel Q x) ) ").unwrap();
        assert_eq!(f.to_string(), "(and (rel P x) (rel Q x))");
    }

    #[test]
    fn syntax_errors_have_positions() {
        let cases = [
            ("(exists x)", 9),
            ("(and)", 4),
            ("(rel E x", 8),
            ("(foo x)", 1),
            ("(dist<= -1 x y)", 8),
            ("(= x y) z", 8),
            (")", 0),
            ("", 0),
        ];
        for (text, pos) in cases {
            match parse(text) {
                Err(LogicError::Syntax { pos: p, .. }) => assert_eq!(p, pos, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn vocabulary_checks() {
        let v = Vocabulary::graph();
        assert!(parse_with_vocab("(rel E x y)", &v).is_ok());
        assert_eq!(
            parse_with_vocab("(rel F x y)", &v),
            Err(LogicError::UnknownSymbol("F".into()))
        );
        assert!(matches!(
            parse_with_vocab("(rel E x)", &v),
            Err(LogicError::ArityMismatch { expected: 2, got: 1, .. })
        ));
    }
}
