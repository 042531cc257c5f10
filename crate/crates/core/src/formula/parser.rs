use std::fmt;

use thiserror::Error;

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnbalancedParen,
    DanglingOperator(&'static str),
    UnexpectedToken(String),
    UnexpectedEnd,
    Empty,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnbalancedParen => f.write_str("unbalanced parenthesis"),
            ParseErrorKind::DanglingOperator(op) => {
                write!(f, "operator `{op}` is missing an operand")
            }
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected `{t}`"),
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of formula"),
            ParseErrorKind::Empty => f.write_str("empty formula"),
        }
    }
}

/// A formula syntax error at a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at offset {offset}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Bot,
    Top,
    Not,
    Tilde,
    And,
    Or,
    Arrow,
    Iff,
    Box,
    Diamond,
    NegBox,
    NegDiamond,
    Circle,
    LParen,
    RParen,
}

impl Tok {
    fn text(&self) -> &str {
        match self {
            Tok::Ident(s) => s,
            Tok::Bot => "bot",
            Tok::Top => "top",
            Tok::Not => "!",
            Tok::Tilde => "~",
            Tok::And => "&",
            Tok::Or => "|",
            Tok::Arrow => "->",
            Tok::Iff => "<->",
            Tok::Box => "[]",
            Tok::Diamond => "<>",
            Tok::NegBox => "[~]",
            Tok::NegDiamond => "<~>",
            Tok::Circle => "@",
            Tok::LParen => "(",
            Tok::RParen => ")",
        }
    }

    fn binary_op(&self) -> Option<&'static str> {
        match self {
            Tok::And => Some("&"),
            Tok::Or => Some("|"),
            Tok::Arrow => Some("->"),
            Tok::Iff => Some("<->"),
            _ => None,
        }
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    const SYMBOLS: [(&str, Tok); 13] = [
        ("<->", Tok::Iff),
        ("<~>", Tok::NegDiamond),
        ("<>", Tok::Diamond),
        ("[~]", Tok::NegBox),
        ("[]", Tok::Box),
        ("->", Tok::Arrow),
        ("!", Tok::Not),
        ("~", Tok::Tilde),
        ("&", Tok::And),
        ("|", Tok::Or),
        ("@", Tok::Circle),
        ("(", Tok::LParen),
        (")", Tok::RParen),
    ];
    let mut out = Vec::new();
    let mut pos = 0;
    'outer: while pos < input.len() {
        let rest = &input[pos..];
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() {
            pos += c.len_utf8();
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let len = rest
                .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                .unwrap_or(rest.len());
            let word = &rest[..len];
            let tok = match word {
                "bot" => Tok::Bot,
                "top" => Tok::Top,
                _ => Tok::Ident(word.to_string()),
            };
            out.push((tok, pos));
            pos += len;
            continue;
        }
        for (sym, tok) in &SYMBOLS {
            if rest.starts_with(sym) {
                out.push((tok.clone(), pos));
                pos += sym.len();
                continue 'outer;
            }
        }
        return Err(ParseError {
            kind: ParseErrorKind::UnexpectedChar(c),
            offset: pos,
        });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            kind,
            offset: self.offset(),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Parses the operand of the binary operator just consumed at `op_offset`.
    fn operand(
        &mut self,
        op: &'static str,
        op_offset: usize,
        next: fn(&mut Self) -> Result<Formula, ParseError>,
    ) -> Result<Formula, ParseError> {
        match self.peek() {
            None | Some(Tok::RParen) => Err(ParseError {
                kind: ParseErrorKind::DanglingOperator(op),
                offset: op_offset,
            }),
            Some(t) if t.binary_op().is_some() => Err(ParseError {
                kind: ParseErrorKind::DanglingOperator(op),
                offset: op_offset,
            }),
            _ => next(self),
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.implication()?;
        while self.peek() == Some(&Tok::Iff) {
            let at = self.offset();
            self.pos += 1;
            let rhs = self.operand("<->", at, Self::implication)?;
            lhs = lhs.iff(rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            let at = self.offset();
            self.pos += 1;
            let rhs = self.operand("->", at, Self::implication)?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Tok::Or) {
            let at = self.offset();
            self.pos += 1;
            lhs = lhs.or(self.operand("|", at, Self::conjunction)?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            let at = self.offset();
            self.pos += 1;
            lhs = lhs.and(self.operand("&", at, Self::unary)?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.err(ParseErrorKind::UnexpectedEnd));
        };
        let wrap: fn(Formula) -> Formula = match tok {
            Tok::Not => Formula::neg,
            Tok::Tilde => Formula::strong_neg,
            Tok::Box => Formula::boxed,
            Tok::Diamond => Formula::diamond,
            Tok::NegBox => Formula::neg_box,
            Tok::NegDiamond => Formula::neg_diamond,
            Tok::Circle => Formula::consistency,
            _ => return self.atom(),
        };
        self.pos += 1;
        Ok(wrap(self.unary()?))
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let at = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(self.err(ParseErrorKind::UnexpectedEnd));
        };
        self.pos += 1;
        match tok {
            Tok::Ident(name) => Ok(Formula::Prop(name)),
            Tok::Bot => Ok(Formula::Bottom),
            Tok::Top => Ok(Formula::top()),
            Tok::LParen => {
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(match self.peek() {
                        None => ParseError {
                            kind: ParseErrorKind::UnbalancedParen,
                            offset: at,
                        },
                        Some(t) => self.err(ParseErrorKind::UnexpectedToken(t.text().to_string())),
                    });
                }
                Ok(inner)
            }
            Tok::RParen => Err(ParseError {
                kind: ParseErrorKind::UnbalancedParen,
                offset: at,
            }),
            other => match other.binary_op() {
                Some(op) => Err(ParseError {
                    kind: ParseErrorKind::DanglingOperator(op),
                    offset: at,
                }),
                None => Err(ParseError {
                    kind: ParseErrorKind::UnexpectedToken(other.text().into()),
                    offset: at,
                }),
            },
        }
    }
}

/// Parses the ASCII formula syntax, expanding `top`, `~` and `<->`.
pub fn parse_formula(input: &str) -> Result<Formula, ParseError> {
    let toks = lex(input)?;
    if toks.is_empty() {
        return Err(ParseError {
            kind: ParseErrorKind::Empty,
            offset: 0,
        });
    }
    let mut parser = Parser {
        toks,
        pos: 0,
        end: input.len(),
    };
    let f = parser.iff()?;
    match parser.peek() {
        None => Ok(f),
        Some(Tok::RParen) => Err(parser.err(ParseErrorKind::UnbalancedParen)),
        Some(t) => Err(parser.err(ParseErrorKind::UnexpectedToken(t.text().to_string()))),
    }
}
