//! Tokenizer shared by the class-table and type-term parsers.

use crate::error::{Found, ParseError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Lt,
    Gt,
    Comma,
    Question,
    Bang,
    LBracket,
    RBracket,
    DotDot,
}

impl Tok {
    fn text(&self) -> &str {
        match self {
            Tok::Ident(s) => s,
            Tok::Lt => "<",
            Tok::Gt => ">",
            Tok::Comma => ",",
            Tok::Question => "?",
            Tok::Bang => "!",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::DotDot => "..",
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn tokenize(source: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = source.chars().peekable();

    while let Some(&ch) = chars.peek() {
        let (start_line, start_col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };

        if ch.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if ch == '/' {
            bump(&mut chars);
            if chars.peek() == Some(&'/') {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump(&mut chars);
                }
                continue;
            }
            return Err(ParseError {
                line: start_line,
                column: start_col,
                expected: "`//` comment".into(),
                found: "`/`".into(),
            });
        }
        if ch.is_ascii_alphabetic() {
            let mut ident = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    ident.push(c);
                    bump(&mut chars);
                } else {
                    break;
                }
            }
            out.push(Spanned {
                tok: Tok::Ident(ident),
                line: start_line,
                column: start_col,
            });
            continue;
        }
        let tok = match ch {
            '<' => Tok::Lt,
            '>' => Tok::Gt,
            ',' => Tok::Comma,
            '?' => Tok::Question,
            '!' => Tok::Bang,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '.' => {
                bump(&mut chars);
                if chars.peek() != Some(&'.') {
                    return Err(ParseError {
                        line: start_line,
                        column: start_col,
                        expected: "`..`".into(),
                        found: "`.`".into(),
                    });
                }
                Tok::DotDot
            }
            other => {
                return Err(ParseError {
                    line: start_line,
                    column: start_col,
                    expected: "a token".into(),
                    found: format!("`{other}`"),
                })
            }
        };
        bump(&mut chars);
        out.push(Spanned {
            tok,
            line: start_line,
            column: start_col,
        });
    }
    Ok(out)
}

/// Cursor over a token stream with position-carrying errors.
pub(crate) struct Cursor {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Cursor {
    pub fn new(source: &str) -> Result<Self, ParseError> {
        let toks = tokenize(source)?;
        let end = end_position(source);
        Ok(Cursor { toks, pos: 0, end })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    pub fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset).map(|s| &s.tok)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&format!("`{}`", tok.text())))
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            Err(self.error(&format!("`{kw}`")))
        }
    }

    pub fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error("identifier")),
        }
    }

    pub fn error(&self, expected: &str) -> ParseError {
        let (line, column, found) = match self.toks.get(self.pos) {
            Some(s) => (s.line, s.column, Found(Some(s.tok.text())).to_string()),
            None => (self.end.0, self.end.1, Found(None).to_string()),
        };
        ParseError {
            line,
            column,
            expected: expected.to_string(),
            found,
        }
    }
}

fn end_position(source: &str) -> (usize, usize) {
    let mut line = 1;
    let mut column = 1;
    for c in source.chars() {
        if c == '\n' {
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
    }
    (line, column)
}
